//! Arithmetic in 𝔽₂ and the rings `R_k = 𝔽₂[u_1..u_k] / (u_i^2, u_i u_j - u_j u_i)`.
//!
//! An element of `R_k` is stored as a `2^k`-bit word: bit `S` (read as a subset
//! mask of `{u_1..u_k}`, bit `i-1` standing for `u_i`) is the coefficient of the
//! monomial `u_S = ∏_{i∈S} u_i`. `k = 0` is 𝔽₂ itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `k`; an `R_4` element fits in a `u16`.
pub const MAX_K: u8 = 4;

/// Which ring of the family: `k = 0` is 𝔽₂, `k ≥ 1` is `R_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    k: u8,
}

impl RingSpec {
    pub const F2: RingSpec = RingSpec { k: 0 };

    pub fn new(k: u8) -> Result<Self> {
        if k > MAX_K {
            return Err(Error::Ring(format!("R_{k} is not supported (k must be at most {MAX_K})")));
        }
        Ok(RingSpec { k })
    }

    pub fn k(self) -> u8 {
        self.k
    }

    /// Number of monomials, which is also the Gray image width of one symbol.
    pub fn width(self) -> usize {
        1 << self.k
    }

    /// log₂ of the ring cardinality.
    pub fn log2_size(self) -> usize {
        self.width()
    }

    /// `|R_k| = 2^(2^k)`.
    pub fn size(self) -> u64 {
        1u64 << self.width()
    }

    pub fn is_field(self) -> bool {
        self.k == 0
    }

    pub fn zero(self) -> RingValue {
        RingValue { spec: self, bits: 0 }
    }

    pub fn one(self) -> RingValue {
        RingValue { spec: self, bits: 1 }
    }

    /// The generator `u_i` (1-based).
    pub fn generator(self, i: u8) -> Result<RingValue> {
        if i == 0 || i > self.k {
            return Err(Error::Ring(format!("u{i} is not a generator of {self}")));
        }
        Ok(RingValue { spec: self, bits: 1 << (1u16 << (i - 1)) })
    }

    /// The monomial `u_S` for a subset mask `S`.
    pub fn monomial(self, subset: usize) -> RingValue {
        debug_assert!(subset < self.width());
        RingValue { spec: self, bits: 1 << subset }
    }

    pub fn value(self, bits: u16) -> Result<RingValue> {
        if self.width() < 16 && bits >> self.width() != 0 {
            return Err(Error::Ring(format!("{bits:#x} has bits outside {self}")));
        }
        Ok(RingValue { spec: self, bits })
    }

    /// Every element of the ring, in order of its bit pattern.
    pub fn elements(self) -> impl Iterator<Item = RingValue> {
        (0..self.size()).map(move |b| RingValue { spec: self, bits: b as u16 })
    }

    /// Parses a ring descriptor: `f2`, `r0`, `r1`, ..., `r4`.
    pub fn parse(desc: &str) -> Result<Self> {
        let d = desc.trim().to_ascii_lowercase();
        if d == "f2" {
            return Ok(RingSpec::F2);
        }
        match d.strip_prefix('r').and_then(|s| s.parse::<u8>().ok()) {
            Some(k) => RingSpec::new(k),
            None => Err(Error::Ring(format!("unknown ring `{desc}` (expected f2 or r<k>)"))),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            f.write_str("F2")
        } else {
            write!(f, "R{}", self.k)
        }
    }
}

/// An element of `R_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingValue {
    spec: RingSpec,
    bits: u16,
}

impl RingValue {
    pub fn spec(self) -> RingSpec {
        self.spec
    }

    /// Monomial coefficients, bit `S` for `u_S`.
    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// The ring is local with maximal ideal `(u_1..u_k)`, so units are exactly
    /// the elements with a nonzero constant term.
    pub fn is_unit(self) -> bool {
        self.bits & 1 == 1
    }

    pub fn coefficient(self, subset: usize) -> bool {
        self.bits >> subset & 1 == 1
    }

    pub fn add(self, other: RingValue) -> Result<RingValue> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn mul(self, other: RingValue) -> Result<RingValue> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn add_unchecked(self, other: RingValue) -> RingValue {
        RingValue { spec: self.spec, bits: self.bits ^ other.bits }
    }

    /// Subset convolution: `u_S · u_T = u_{S∪T}` when `S ∩ T = ∅`, else 0.
    #[inline]
    pub(crate) fn mul_unchecked(self, other: RingValue) -> RingValue {
        if self.spec.k == 0 {
            return RingValue { spec: self.spec, bits: self.bits & other.bits };
        }
        let mut out = 0u16;
        let mut a = self.bits;
        while a != 0 {
            let s = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = other.bits;
            while b != 0 {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                if s & t == 0 {
                    out ^= 1 << (s | t);
                }
            }
        }
        RingValue { spec: self.spec, bits: out }
    }

    /// Inverse of a unit. Writing `a = 1 + m` with `m` nilpotent of index at most
    /// `k + 1`, `a⁻¹ = 1 + m + m² + … + m^k`.
    pub fn inverse(self) -> Option<RingValue> {
        if !self.is_unit() {
            return None;
        }
        let one = self.spec.one();
        let m = self.add_unchecked(one);
        let mut acc = one;
        let mut power = one;
        for _ in 0..self.spec.k {
            power = power.mul_unchecked(m);
            acc = acc.add_unchecked(power);
        }
        Some(acc)
    }

    /// The Gray map `φ_k`, returned as `2^k` bits (bit `t` is output position `t`).
    pub fn gray(self) -> u16 {
        gray_bits(self.bits, self.spec.k)
    }

    /// Number of ones in the Gray image.
    pub fn lee_weight(self) -> u32 {
        self.gray().count_ones()
    }

    /// Inverse of [`RingValue::gray`].
    pub fn from_gray(spec: RingSpec, image: u16) -> RingValue {
        RingValue { spec, bits: gray_inverse_bits(image, spec.k) }
    }

    fn check(self, other: RingValue) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Ring(format!("ring mismatch: {} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }
}

// a = x + y·u_k  ↦  (φ(y), φ(x + y))
fn gray_bits(bits: u16, k: u8) -> u16 {
    if k == 0 {
        return bits & 1;
    }
    let half = 1u32 << (k - 1);
    let mask = ((1u32 << half) - 1) as u16;
    let x = bits & mask;
    let y = (bits >> half) & mask;
    let lo = gray_bits(y, k - 1);
    let hi = gray_bits(x ^ y, k - 1);
    lo | (hi << half)
}

fn gray_inverse_bits(image: u16, k: u8) -> u16 {
    if k == 0 {
        return image & 1;
    }
    let half = 1u32 << (k - 1);
    let mask = ((1u32 << half) - 1) as u16;
    let y = gray_inverse_bits(image & mask, k - 1);
    let x_plus_y = gray_inverse_bits((image >> half) & mask, k - 1);
    (x_plus_y ^ y) | (y << half)
}

impl fmt::Display for RingValue {
    /// Prints as a ring literal, e.g. `0`, `1`, `u1u2`, `1+u1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for s in 0..self.spec.width() {
            if !self.coefficient(s) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            f.write_str(&monomial_name(s))?;
        }
        Ok(())
    }
}

pub(crate) fn monomial_name(subset: usize) -> String {
    if subset == 0 {
        return "1".to_string();
    }
    let mut s = String::new();
    for i in 0..MAX_K as usize {
        if subset >> i & 1 == 1 {
            s.push('u');
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

/// Parses a ring literal: `0`, `1`, `u<i>`, juxtaposed monomials like `u1u2`,
/// sums with `+`, and parenthesized sums used as factors, e.g. `(1+u1)u2`.
/// A bare `u` is accepted for `u1` in `R_1`.
pub fn parse_ring_literal(text: &str, spec: RingSpec) -> Result<RingValue> {
    let mut p = LiteralParser { src: text.as_bytes(), pos: 0, spec };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse { pos: p.pos, msg: "unexpected trailing input in ring literal".into() });
    }
    Ok(v)
}

struct LiteralParser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: RingSpec,
}

impl LiteralParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<RingValue> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add_unchecked(self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RingValue> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul_unchecked(self.factor()?);
                }
                Some(b'u') | Some(b'(') | Some(b'0') | Some(b'1') => {
                    acc = acc.mul_unchecked(self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RingValue> {
        let start = self.pos;
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(self.spec.zero())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(self.spec.one())
            }
            Some(b'u') => {
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let i = if self.pos == digits_start {
                    if self.spec.k() == 1 {
                        1
                    } else {
                        return Err(Error::Parse { pos: start, msg: "bare `u` is only allowed in R1".into() });
                    }
                } else {
                    std::str::from_utf8(&self.src[digits_start..self.pos])
                        .ok()
                        .and_then(|s| s.parse::<u8>().ok())
                        .ok_or(Error::Parse { pos: digits_start, msg: "bad generator index".into() })?
                };
                self.spec
                    .generator(i)
                    .map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse { pos: self.pos, msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(Error::Parse { pos: self.pos, msg: "expected a ring literal".into() }),
        }
    }
}
