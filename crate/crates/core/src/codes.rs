//! Linear codes over `R_k`, stored as the reduced binary basis of their Gray image.
//!
//! Coordinate `i` of a length-`n` code over `R_k` occupies binary positions
//! `i·2^k .. (i+1)·2^k` of the image. Since the Gray map is an additive
//! bijection and the `R_k`-span of a set of rows is the `F2`-span of all their
//! monomial multiples, the image basis determines the code exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmat::{dot, get_bit, popcount, set_bit, xor_into, BitMatrix};
use crate::error::{Error, Result};
use crate::groupring::{GroupRingElement, SigmaMatrix};
use crate::groups::{FiniteGroup, Ordering};
use crate::rings::{RingSpec, RingValue};

/// Largest binary rank whose codewords are enumerated.
pub const MAX_ENUM_RANK: usize = 26;

/// Codes at or above this rank are enumerated in parallel.
const PARALLEL_RANK: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Number of nonzero ring coordinates.
    Hamming,
    /// Hamming weight of the Gray image.
    Lee,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Hamming => "hamming",
            Metric::Lee => "lee",
        })
    }
}

/// Outcome of a minimum-distance scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    /// The zero code has no nonzero codeword.
    Undefined,
    Exact(u32),
    /// A nonzero codeword of weight below the threshold exists.
    Below(u32),
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Undefined => f.write_str("undefined"),
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::Below(t) => write!(f, "< {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub metric: Metric,
    pub counts: BTreeMap<u32, u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn pairs(&self) -> Vec<(u32, u64)> {
        self.counts.iter().map(|(w, c)| (*w, *c)).collect()
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Complete weight enumerator: for each codeword, how often each ring element
/// occurs; keys are indexed by the element's coefficient word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteEnumerator {
    pub ring: RingSpec,
    pub counts: BTreeMap<Vec<u32>, u64>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    ring: RingSpec,
    length: usize,
    basis: BitMatrix,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode(length {} over {}, rank {}) {:?}", self.length, self.ring, self.rank(), self.basis)
    }
}

impl LinearCode {
    pub fn zero(ring: RingSpec, length: usize) -> Self {
        LinearCode { ring, length, basis: BitMatrix::empty(length * ring.width()) }
    }

    pub fn full(ring: RingSpec, length: usize) -> Self {
        Self::from_gray_basis(ring, length, BitMatrix::identity(length * ring.width()))
            .expect("identity has the right width")
    }

    /// Binary code spanned by the rows of `m`.
    pub fn from_binary(m: &BitMatrix) -> Self {
        let mut basis = m.clone();
        basis.reduce();
        LinearCode { ring: RingSpec::F2, length: m.cols(), basis }
    }

    /// Code whose Gray image is spanned by `image`. The span must be
    /// `R_k`-linear; this is not checked.
    pub fn from_gray_basis(ring: RingSpec, length: usize, image: BitMatrix) -> Result<Self> {
        if image.cols() != length * ring.width() {
            return Err(Error::Mismatch(format!(
                "image width {} does not match length {length} over {ring}",
                image.cols()
            )));
        }
        let mut basis = image;
        basis.reduce();
        Ok(LinearCode { ring, length, basis })
    }

    /// The `R_k`-span of the given rows.
    pub fn from_ring_rows<R: AsRef<[RingValue]>>(ring: RingSpec, length: usize, rows: &[R]) -> Result<Self> {
        let w = ring.width();
        let mut m = BitMatrix::empty(length * w);
        for r in rows {
            let r = r.as_ref();
            if r.len() != length {
                return Err(Error::Mismatch(format!("row of length {} in a length-{length} code", r.len())));
            }
            if let Some(c) = r.iter().find(|c| c.spec() != ring) {
                return Err(Error::Ring(format!("ring mismatch: {} vs {ring}", c.spec())));
            }
            for s in 0..w {
                let mono = ring.monomial(s);
                let row = m.push_zero_row();
                for (i, c) in r.iter().enumerate() {
                    write_block(row, i, w, c.mul_unchecked(mono).gray());
                }
            }
        }
        m.reduce();
        Ok(LinearCode { ring, length, basis: m })
    }

    /// `C(v)`: the row space of `σ(v)` over the ring.
    pub fn from_sigma(m: &SigmaMatrix) -> Self {
        let rows: Vec<&[RingValue]> = m.rows().collect();
        Self::from_ring_rows(m.ring(), m.n(), &rows).expect("sigma rows are consistent")
    }

    pub fn from_element(v: &GroupRingElement) -> Self {
        Self::from_sigma(&v.sigma())
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn binary_length(&self) -> usize {
        self.length * self.ring.width()
    }

    /// Reduced echelon basis of the Gray image.
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    /// Binary rank `r` of the image, so `|C| = 2^r`.
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn log2_size(&self) -> usize {
        self.rank()
    }

    /// The Gray image as a binary code.
    pub fn gray_image(&self) -> LinearCode {
        LinearCode { ring: RingSpec::F2, length: self.binary_length(), basis: self.basis.clone() }
    }

    /// Decodes a binary image row back to ring coordinates.
    pub fn ring_vector(&self, image_row: &[u64]) -> Vec<RingValue> {
        let w = self.ring.width();
        (0..self.length).map(|i| RingValue::from_gray(self.ring, read_block(image_row, i, w))).collect()
    }

    pub fn ring_basis(&self) -> Vec<Vec<RingValue>> {
        self.basis.row_iter().map(|r| self.ring_vector(r)).collect()
    }

    pub fn contains(&self, image_row: &[u64]) -> bool {
        let mut m = self.basis.clone();
        m.push_row(image_row);
        m.reduce().len() == self.rank()
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        let mut m = other.basis.clone();
        m.append(&self.basis);
        m.reduce().len() == other.rank()
    }

    /// The dual under `[v, w] = Σ v_i w_i` in `R_k`.
    pub fn dual(&self) -> LinearCode {
        let w = self.ring.width();
        let n = self.length;
        // Constraints in coefficient coordinates: position i·w + T is the
        // coefficient of u_T in w_i.
        let mut constraints = BitMatrix::empty(n * w);
        for c in self.ring_basis() {
            for target in 0..w {
                let row = constraints.push_zero_row();
                for (i, ci) in c.iter().enumerate() {
                    for t in 0..w {
                        // u_S u_T contributes to u_target iff S ⊔ T = target.
                        if t & !target == 0 && ci.coefficient(target & !t) {
                            set_bit(row, i * w + t, true);
                        }
                    }
                }
            }
        }
        let null = constraints.nullspace();
        let mut image = BitMatrix::empty(n * w);
        for r in null.row_iter() {
            let row = image.push_zero_row();
            for i in 0..n {
                let bits = read_block(r, i, w) as u16;
                let v = self.ring.value(bits).expect("block fits the ring");
                write_block(row, i, w, v.gray());
            }
        }
        image.reduce();
        LinearCode { ring: self.ring, length: n, basis: image }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        if self.ring.is_field() {
            let rows: Vec<&[u64]> = self.basis.row_iter().collect();
            return rows.iter().enumerate().all(|(i, a)| rows[i..].iter().all(|b| !dot(a, b)));
        }
        let vs = self.ring_basis();
        vs.iter().enumerate().all(|(i, a)| vs[i..].iter().all(|b| inner(a, b).is_zero()))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.rank() == self.binary_length() && self.is_self_orthogonal()
    }

    /// Type II: the Gray image is a binary self-dual code with every weight
    /// divisible by 4.
    pub fn is_type_ii(&self) -> bool {
        let image = self.gray_image();
        if !image.is_self_dual() {
            return false;
        }
        // In a self-orthogonal binary code the doubly-even words form a subcode,
        // so checking the basis is enough.
        let doubly_even = image.basis.row_iter().all(|r| popcount(r) % 4 == 0);
        doubly_even
    }

    /// Compares the weight enumerators of the code and its dual.
    pub fn is_formally_self_dual(&self, metric: Metric) -> Result<bool> {
        if 2 * self.rank() != self.binary_length() {
            return Ok(false);
        }
        let d = self.dual();
        if d == *self {
            return Ok(true);
        }
        Ok(self.weight_enumerator(metric)? == d.weight_enumerator(metric)?)
    }

    /// Applies a coordinate permutation: coordinate `j` moves to `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<LinearCode> {
        if perm.len() != self.length {
            return Err(Error::Mismatch(format!(
                "permutation of length {} for a code of length {}",
                perm.len(),
                self.length
            )));
        }
        let bin = expand_perm(perm, self.ring.width());
        let mut basis = self.basis.permute_columns(&bin);
        basis.reduce();
        Ok(LinearCode { ring: self.ring, length: self.length, basis })
    }

    /// True iff permuting by `perm` gives exactly the dual.
    pub fn isodual_witness_check(&self, perm: &[usize]) -> Result<bool> {
        Ok(self.permute(perm)? == self.dual())
    }

    /// Every left multiplication `g_j ↦ h g_j` maps the code onto itself.
    pub fn check_group_invariance(&self, group: &FiniteGroup) -> Result<bool> {
        if group.order() != self.length {
            return Err(Error::Mismatch(format!(
                "group of order {} for a code of length {}",
                group.order(),
                self.length
            )));
        }
        for h in 0..group.order() {
            if self.permute(&group.left_mul_perm(h))? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn min_distance(&self, metric: Metric) -> Result<Distance> {
        self.min_distance_with(metric, None, self.rank() >= PARALLEL_RANK)
    }

    /// Minimum nonzero weight. With `threshold = Some(t)` the scan stops at
    /// the first nonzero word of weight below `t` and reports `Below(t)`.
    pub fn min_distance_with(&self, metric: Metric, threshold: Option<u32>, parallel: bool) -> Result<Distance> {
        self.check_enumerable()?;
        if self.rank() == 0 {
            return Ok(Distance::Undefined);
        }
        let weigh = self.weigher(metric);
        let t = threshold.unwrap_or(0);
        let stop = AtomicBool::new(false);
        let mins = scan(&self.basis, parallel, || u32::MAX, |best: &mut u32, word: &[u64]| {
            let wt = weigh.weight(word);
            if wt == 0 {
                return true;
            }
            if wt < *best {
                *best = wt;
            }
            if wt < t || wt == 1 {
                stop.store(true, AtomicOrdering::Relaxed);
            }
            !stop.load(AtomicOrdering::Relaxed)
        });
        let best = mins.into_iter().min().unwrap_or(u32::MAX);
        Ok(if best < t { Distance::Below(t) } else { Distance::Exact(best) })
    }

    pub fn weight_enumerator(&self, metric: Metric) -> Result<WeightEnumerator> {
        self.weight_enumerator_with(metric, self.rank() >= PARALLEL_RANK)
    }

    pub fn weight_enumerator_with(&self, metric: Metric, parallel: bool) -> Result<WeightEnumerator> {
        self.check_enumerable()?;
        let weigh = self.weigher(metric);
        let max = match metric {
            Metric::Hamming => self.length,
            Metric::Lee => self.binary_length(),
        };
        let parts = scan(&self.basis, parallel, || vec![0u64; max + 1], |acc: &mut Vec<u64>, word: &[u64]| {
            acc[weigh.weight(word) as usize] += 1;
            true
        });
        let mut total = vec![0u64; max + 1];
        for p in parts {
            for (t, c) in total.iter_mut().zip(p) {
                *t += c;
            }
        }
        let counts = total.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(w, c)| (w as u32, c)).collect();
        Ok(WeightEnumerator { metric, counts })
    }

    pub fn complete_enumerator(&self) -> Result<CompleteEnumerator> {
        self.check_enumerable()?;
        let w = self.ring.width();
        let symbols = 1usize << w;
        let parts = scan(&self.basis, self.rank() >= PARALLEL_RANK, BTreeMap::new, |acc: &mut BTreeMap<Vec<u32>, u64>, word: &[u64]| {
            let mut comp = vec![0u32; symbols];
            for i in 0..self.length {
                comp[RingValue::from_gray(self.ring, read_block(word, i, w)).bits() as usize] += 1;
            }
            *acc.entry(comp).or_insert(0) += 1;
            true
        });
        let mut counts = BTreeMap::new();
        for p in parts {
            for (k, c) in p {
                *counts.entry(k).or_insert(0) += c;
            }
        }
        Ok(CompleteEnumerator { ring: self.ring, counts })
    }

    /// Binary MacWilliams cross-check: the Hamming enumerator of the dual
    /// equals the transform `W_C(x + y, x - y) / |C|`.
    pub fn macwilliams_check(&self) -> Result<bool> {
        if !self.ring.is_field() {
            return Err(Error::Code("the binary MacWilliams check needs a code over F2".into()));
        }
        let a = self.weight_enumerator(Metric::Hamming)?;
        let b = self.dual().weight_enumerator(Metric::Hamming)?;
        Ok(macwilliams_transform(&a, self.length, self.rank()) == b.counts)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.rank() > MAX_ENUM_RANK {
            return Err(Error::TooLarge { rank: self.rank(), limit: MAX_ENUM_RANK });
        }
        Ok(())
    }

    fn weigher(&self, metric: Metric) -> Weigher {
        let w = self.ring.width();
        match metric {
            Metric::Lee => Weigher::Bits,
            Metric::Hamming if w == 1 => Weigher::Bits,
            Metric::Hamming => Weigher::Blocks { width: w, mask: block_mask(w) },
        }
    }
}

/// Standard inner product over the ring.
pub fn inner(a: &[RingValue], b: &[RingValue]) -> RingValue {
    a.iter().zip(b).fold(a.first().map_or(RingSpec::F2.zero(), |x| x.spec().zero()), |acc, (x, y)| {
        acc.add_unchecked(x.mul_unchecked(*y))
    })
}

/// Transform of a binary Hamming enumerator of an `[n, k]` code.
pub fn macwilliams_transform(a: &WeightEnumerator, n: usize, k: usize) -> BTreeMap<u32, u64> {
    let binom = |m: usize, r: usize| -> i128 {
        if r > m {
            return 0;
        }
        (0..r).fold(1i128, |acc, t| acc * (m - t) as i128 / (t + 1) as i128)
    };
    let mut out = BTreeMap::new();
    for j in 0..=n {
        let mut sum = 0i128;
        for (&i, &ai) in &a.counts {
            let i = i as usize;
            let mut kraw = 0i128;
            for s in 0..=j.min(i) {
                let term = binom(i, s) * binom(n - i, j - s);
                kraw += if s % 2 == 0 { term } else { -term };
            }
            sum += ai as i128 * kraw;
        }
        let b = sum >> k;
        if b != 0 {
            out.insert(j as u32, b as u64);
        }
    }
    out
}

enum Weigher {
    Bits,
    Blocks { width: usize, mask: u64 },
}

impl Weigher {
    #[inline]
    fn weight(&self, word: &[u64]) -> u32 {
        match *self {
            Weigher::Bits => popcount(word),
            Weigher::Blocks { width, mask } => word
                .iter()
                .map(|&x| {
                    let mut y = x;
                    let mut s = 1;
                    while s < width {
                        y |= y >> s;
                        s <<= 1;
                    }
                    (y & mask).count_ones()
                })
                .sum(),
        }
    }
}

fn block_mask(w: usize) -> u64 {
    (0..64).step_by(w).fold(0u64, |m, b| m | 1 << b)
}

#[inline]
fn read_block(row: &[u64], i: usize, w: usize) -> u16 {
    let start = i * w;
    ((row[start / 64] >> (start % 64)) & ((1u64 << w) - 1)) as u16
}

#[inline]
fn write_block(row: &mut [u64], i: usize, w: usize, bits: u16) {
    let start = i * w;
    row[start / 64] |= (bits as u64) << (start % 64);
}

/// Spreads a coordinate permutation over `w`-bit blocks.
pub fn expand_perm(perm: &[usize], w: usize) -> Vec<usize> {
    perm.iter().flat_map(|&p| (0..w).map(move |t| p * w + t)).collect()
}

/// Visits every codeword (including zero) in Gray-code order. The message
/// space is split on the top basis rows into fixed chunks, so the set of
/// visited words per chunk does not depend on the thread pool. `visit`
/// returns `false` to abandon its chunk.
fn scan<A, I, F>(basis: &BitMatrix, parallel: bool, init: I, visit: F) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[u64]) -> bool + Sync,
{
    let r = basis.rows();
    let words = basis.words();
    let high = if parallel && r >= PARALLEL_RANK { (r - 10).min(8) } else { 0 };
    let low = r - high;
    let run_chunk = |c: usize| -> A {
        let mut acc = init();
        let mut cur = vec![0u64; words];
        for b in 0..high {
            if c >> b & 1 == 1 {
                xor_into(&mut cur, basis.row(low + b));
            }
        }
        if !visit(&mut acc, &cur) {
            return acc;
        }
        for t in 1u64..(1u64 << low) {
            xor_into(&mut cur, basis.row(t.trailing_zeros() as usize));
            if !visit(&mut acc, &cur) {
                break;
            }
        }
        acc
    };
    if high == 0 {
        vec![run_chunk(0)]
    } else {
        (0..1usize << high).into_par_iter().map(run_chunk).collect()
    }
}

/// Coordinate permutation `g_j ↦ g_j h`, which carries `C(v)` onto `C(v h)`.
pub fn shift_equivalence_witness(v: &GroupRingElement, h: usize) -> Vec<usize> {
    v.group().right_mul_perm(h)
}

/// Structural permutation relating a code and its dual for the block orders
/// that carry one: in the even/odd cyclic order the halves are swapped and
/// each half is reversed; in the `C_s × D_2k` order `(h^i, r^j)` is exchanged
/// with `(h^{-i}, f r^j)`.
pub fn structural_isodual_perm(group: &FiniteGroup) -> Option<Vec<usize>> {
    match *group.ordering() {
        Ordering::CyclicEvenOdd { n } => {
            let k = n / 2;
            Some((0..n).map(|i| if i < k { k + (k - 1 - i) } else { k - 1 - (i - k) }).collect())
        }
        Ordering::CyclicDihedral { s, k } => {
            let half = s * k;
            let mut perm = vec![0; 2 * half];
            for i in 0..s {
                for j in 0..k {
                    let here = i * k + j;
                    let there = half + ((s - i) % s) * k + j;
                    perm[here] = there;
                    perm[there] = here;
                }
            }
            Some(perm)
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// Circulant and reverse circulant at once (e.g. constant blocks).
    Both,
    Circulant,
    ReverseCirculant,
    General,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Both => "circulant and reverse circulant",
            BlockKind::Circulant => "circulant",
            BlockKind::ReverseCirculant => "reverse circulant",
            BlockKind::General => "general",
        })
    }
}

impl BlockKind {
    pub fn is_circulant(self) -> bool {
        matches!(self, BlockKind::Both | BlockKind::Circulant)
    }

    pub fn is_reverse_circulant(self) -> bool {
        matches!(self, BlockKind::Both | BlockKind::ReverseCirculant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockForm {
    /// `[[A, B], [B, A]]`.
    Abba { a: BlockKind, b: BlockKind },
    /// `[[A, B], [D, A]]`.
    Abda { a: BlockKind, b: BlockKind, d: BlockKind },
    General { blocks: [BlockKind; 4] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixShape {
    pub whole: BlockKind,
    /// Two-by-two block decomposition, when the size is even.
    pub blocks: Option<BlockForm>,
}

impl fmt::Display for MatrixShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.whole)?;
        match &self.blocks {
            Some(BlockForm::Abba { a, b }) => write!(f, "; blocks [[A,B],[B,A]] with A {a}, B {b}"),
            Some(BlockForm::Abda { a, b, d }) => write!(f, "; blocks [[A,B],[D,A]] with A {a}, B {b}, D {d}"),
            Some(BlockForm::General { blocks }) => {
                write!(f, "; blocks {}, {}, {}, {}", blocks[0], blocks[1], blocks[2], blocks[3])
            }
            None => Ok(()),
        }
    }
}

pub fn classify_block(m: &[Vec<RingValue>]) -> BlockKind {
    let n = m.len();
    if n == 0 {
        return BlockKind::Both;
    }
    let circ = (0..n).all(|i| (0..n).all(|j| m[i][j] == m[0][(j + n - i) % n]));
    let rev = (0..n).all(|i| (0..n).all(|j| m[i][j] == m[0][(j + i) % n]));
    match (circ, rev) {
        (true, true) => BlockKind::Both,
        (true, false) => BlockKind::Circulant,
        (false, true) => BlockKind::ReverseCirculant,
        (false, false) => BlockKind::General,
    }
}

pub fn matrix_shape(m: &SigmaMatrix) -> MatrixShape {
    let n = m.n();
    let whole = classify_block(&m.block(0, 0, n, n));
    let blocks = (n % 2 == 0 && n > 0).then(|| {
        let h = n / 2;
        let a = m.block(0, 0, h, h);
        let b = m.block(0, h, h, h);
        let d = m.block(h, 0, h, h);
        let a2 = m.block(h, h, h, h);
        let (ka, kb, kd) = (classify_block(&a), classify_block(&b), classify_block(&d));
        if a == a2 && b == d {
            BlockForm::Abba { a: ka, b: kb }
        } else if a == a2 {
            BlockForm::Abda { a: ka, b: kb, d: kd }
        } else {
            BlockForm::General { blocks: [ka, kb, kd, classify_block(&a2)] }
        }
    });
    MatrixShape { whole, blocks }
}

/// Summary of a code as printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub ring: String,
    pub group: Option<String>,
    pub element: Option<String>,
    pub length: usize,
    pub binary_length: usize,
    pub log2_size: usize,
    pub min_distance_hamming: Option<Distance>,
    pub min_distance_lee: Option<Distance>,
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub formally_self_dual: Option<bool>,
    pub type_ii: bool,
    pub gray_image_self_dual: bool,
    pub weight_enumerator: Option<Vec<(u32, u64)>>,
    pub lee_enumerator: Option<Vec<(u32, u64)>>,
    pub shape: Option<String>,
    pub generator_matrix: Option<Vec<String>>,
    pub notes: Vec<String>,
}

impl CodeReport {
    /// Builds a report; enumeration-based fields are left empty (with a note)
    /// when the code or its dual is too large.
    pub fn new(code: &LinearCode, include_matrix: bool) -> CodeReport {
        let mut notes = Vec::new();
        let ham = keep(&mut notes, code.min_distance(Metric::Hamming));
        let lee = if code.ring.is_field() { ham } else { keep(&mut notes, code.min_distance(Metric::Lee)) };
        let fsd = keep(&mut notes, code.is_formally_self_dual(Metric::Hamming));
        let we = keep(&mut notes, code.weight_enumerator(Metric::Hamming)).map(|e| e.pairs());
        let lee_we = if code.ring.is_field() {
            None
        } else {
            keep(&mut notes, code.weight_enumerator(Metric::Lee)).map(|e| e.pairs())
        };
        CodeReport {
            ring: code.ring.to_string(),
            group: None,
            element: None,
            length: code.length,
            binary_length: code.binary_length(),
            log2_size: code.rank(),
            min_distance_hamming: ham,
            min_distance_lee: lee,
            self_orthogonal: code.is_self_orthogonal(),
            self_dual: code.is_self_dual(),
            formally_self_dual: fsd,
            type_ii: code.is_type_ii(),
            gray_image_self_dual: code.gray_image().is_self_dual(),
            weight_enumerator: we,
            lee_enumerator: lee_we,
            shape: None,
            generator_matrix: include_matrix.then(|| code.basis.to_strings()),
            notes,
        }
    }

    pub fn for_element(v: &GroupRingElement, include_matrix: bool) -> CodeReport {
        let code = LinearCode::from_element(v);
        let mut r = CodeReport::new(&code, include_matrix);
        r.group = Some(v.group().name().to_string());
        r.element = Some(v.to_string());
        r.shape = Some(matrix_shape(&v.sigma()).to_string());
        r
    }

    /// `[N, K, d]` of the binary image, or `[n, log2|C|, d_H]` over the ring.
    pub fn parameters(&self) -> String {
        let d = |x: Option<Distance>| x.map_or("?".to_string(), |d| d.to_string());
        if self.ring == RingSpec::F2.to_string() {
            format!("[{}, {}, {}]", self.length, self.log2_size, d(self.min_distance_hamming))
        } else {
            format!("[{}, {}, {}]", self.binary_length, self.log2_size, d(self.min_distance_lee))
        }
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = &self.group {
            writeln!(f, "group:               {g}")?;
        }
        writeln!(f, "ring:                {}", self.ring)?;
        if let Some(e) = &self.element {
            writeln!(f, "element:             {e}")?;
        }
        if let Some(s) = &self.shape {
            writeln!(f, "sigma shape:         {s}")?;
        }
        writeln!(f, "length:              {}", self.length)?;
        writeln!(f, "log2 |C|:            {}", self.log2_size)?;
        let d = |x: Option<Distance>| x.map_or("not computed".to_string(), |d| d.to_string());
        writeln!(f, "min distance:        {}", d(self.min_distance_hamming))?;
        if self.ring != RingSpec::F2.to_string() {
            writeln!(f, "min Lee distance:    {}", d(self.min_distance_lee))?;
            writeln!(f, "binary image:        {}", self.parameters())?;
        } else {
            writeln!(f, "parameters:          {}", self.parameters())?;
        }
        writeln!(f, "self-orthogonal:     {}", self.self_orthogonal)?;
        writeln!(f, "self-dual:           {}", self.self_dual)?;
        let b = |x: Option<bool>| x.map_or("not computed".to_string(), |v| v.to_string());
        writeln!(f, "formally self-dual:  {}", b(self.formally_self_dual))?;
        writeln!(f, "type II:             {}", self.type_ii)?;
        if self.ring != RingSpec::F2.to_string() {
            writeln!(f, "image self-dual:     {}", self.gray_image_self_dual)?;
        }
        let fmt_we = |w: &Vec<(u32, u64)>| w.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(" ");
        if let Some(w) = &self.weight_enumerator {
            writeln!(f, "weight enumerator:   {}", fmt_we(w))?;
        }
        if let Some(w) = &self.lee_enumerator {
            writeln!(f, "Lee enumerator:      {}", fmt_we(w))?;
        }
        if let Some(m) = &self.generator_matrix {
            writeln!(f, "generator matrix:")?;
            for r in m {
                writeln!(f, "  {r}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note:                {n}")?;
        }
        Ok(())
    }
}

fn keep<T>(notes: &mut Vec<String>, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            let msg = e.to_string();
            if !notes.contains(&msg) {
                notes.push(msg);
            }
            None
        }
    }
}

/// Reads back the image bit at binary position `j` of basis row `i`.
pub fn basis_bit(code: &LinearCode, i: usize, j: usize) -> bool {
    get_bit(code.basis.row(i), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groupring::parse_element;
    use crate::groups::{make_dihedral_named, make_m16, parse_group_descriptor, DihedralNames};
    use std::sync::Arc;

    fn hamming() -> LinearCode {
        LinearCode::from_binary(&BitMatrix::from_strings(&fixtures::D8_REDUCED))
    }

    #[test]
    fn hamming_code_parameters() {
        let c = hamming();
        assert_eq!(c.rank(), 4);
        assert_eq!(c.min_distance(Metric::Hamming).unwrap(), Distance::Exact(4));
        assert!(c.is_self_dual());
        assert!(c.is_type_ii());
        assert_eq!(c.dual(), c);
        assert!(c.macwilliams_check().unwrap());
        assert_eq!(c.weight_enumerator(Metric::Hamming).unwrap().pairs(), [(0, 1), (4, 14), (8, 1)]);
        assert_eq!(c.min_distance_with(Metric::Hamming, Some(5), false).unwrap(), Distance::Below(5));
        assert_eq!(c.min_distance_with(Metric::Hamming, Some(4), false).unwrap(), Distance::Exact(4));
    }

    #[test]
    fn d8_element_code() {
        let g = Arc::new(make_dihedral_named(8, DihedralNames::RotationA).unwrap());
        let v = parse_element("1+ba+ba^2+ba^3", RingSpec::F2, &g).unwrap();
        let c = LinearCode::from_element(&v);
        assert_eq!(c, hamming());
        assert!(c.check_group_invariance(&g).unwrap());
        // A transposition of two coordinates that is not a group translation.
        let mut swap: Vec<usize> = (0..8).collect();
        swap.swap(0, 1);
        assert_ne!(c.permute(&swap).unwrap(), c);
    }

    #[test]
    fn m16_left_and_right_ideals() {
        let g = Arc::new(make_m16().unwrap());
        let v = parse_element("(1+s+s^2+s^3)(1+t)", RingSpec::F2, &g).unwrap();
        let c = LinearCode::from_element(&v);
        assert_eq!(c.rank(), 5);
        assert!(!c.is_self_dual());
        assert!(!c.is_formally_self_dual(Metric::Hamming).unwrap());
        // The left ideal generated by v has a weight-4 word; the right ideal
        // (the displayed matrix) is the Reed-Muller code.
        assert_eq!(c.min_distance(Metric::Hamming).unwrap(), Distance::Exact(4));
        let shown = LinearCode::from_binary(&BitMatrix::from_strings(&fixtures::M16_SIGMA));
        assert_eq!(shown.rank(), 5);
        assert_eq!(shown.min_distance(Metric::Hamming).unwrap(), Distance::Exact(8));
        let w = parse_element("(1+t)(1+s+s^2+s^3)", RingSpec::F2, &g).unwrap();
        assert_eq!(LinearCode::from_element(&w).min_distance(Metric::Hamming).unwrap(), Distance::Exact(8));
    }

    #[test]
    fn zero_and_full() {
        let r2 = RingSpec::new(2).unwrap();
        let z = LinearCode::zero(r2, 3);
        assert_eq!(z.min_distance(Metric::Hamming).unwrap(), Distance::Undefined);
        assert_eq!(z.weight_enumerator(Metric::Lee).unwrap().pairs(), [(0, 1)]);
        assert!(z.is_self_orthogonal());
        assert_eq!(z.dual(), LinearCode::full(r2, 3));
        let f = LinearCode::full(RingSpec::F2, 4);
        assert!(!f.is_self_orthogonal());
        assert_eq!(f.rank(), 4);
    }

    #[test]
    fn length_one_self_dual_over_r1() {
        let r1 = RingSpec::new(1).unwrap();
        let c = LinearCode::from_ring_rows(r1, 1, &[vec![r1.generator(1).unwrap()]]).unwrap();
        assert_eq!(c.rank(), 1);
        assert!(c.is_self_dual());
    }

    #[test]
    fn ring_hamming_weight_counts_blocks() {
        let r2 = RingSpec::new(2).unwrap();
        let rows = [vec![r2.one(), r2.zero(), r2.value(0b1000).unwrap()]];
        let c = LinearCode::from_ring_rows(r2, 3, &rows).unwrap();
        let we = c.weight_enumerator(Metric::Hamming).unwrap();
        assert_eq!(we.total(), 1 << c.rank());
        // Brute force over the ring multiples of the generator.
        let mut expect = BTreeMap::new();
        for r in r2.elements() {
            let wt = rows[0].iter().filter(|x| !x.mul_unchecked(r).is_zero()).count() as u32;
            *expect.entry(wt).or_insert(0u64) += 1;
        }
        assert_eq!(we.counts, expect);
        let complete = c.complete_enumerator().unwrap();
        assert_eq!(complete.counts.values().sum::<u64>(), 16);
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let r1 = RingSpec::new(1).unwrap();
        let rows: Vec<Vec<RingValue>> =
            (0..9).map(|_| (0..20).map(|_| r1.value(rng.gen_range(0..4)).unwrap()).collect()).collect();
        let c = LinearCode::from_ring_rows(r1, 20, &rows).unwrap();
        assert!((PARALLEL_RANK..=MAX_ENUM_RANK).contains(&c.rank()), "rank {}", c.rank());
        for m in [Metric::Hamming, Metric::Lee] {
            assert_eq!(c.weight_enumerator_with(m, true).unwrap(), c.weight_enumerator_with(m, false).unwrap());
            assert_eq!(
                c.min_distance_with(m, None, true).unwrap(),
                c.min_distance_with(m, None, false).unwrap()
            );
        }
    }

    #[test]
    fn macwilliams_transform_of_zero_code() {
        let z = LinearCode::zero(RingSpec::F2, 5);
        assert!(z.macwilliams_check().unwrap());
    }

    #[test]
    fn shapes() {
        let id = SigmaMatrix::zeros(RingSpec::F2, 4);
        assert_eq!(matrix_shape(&id).whole, BlockKind::Both);
        let g = Arc::new(parse_group_descriptor("d8").unwrap());
        let v = parse_element("1 + b + ab^2 + ab^3", RingSpec::F2, &g).unwrap();
        let s = matrix_shape(&v.sigma());
        match s.blocks {
            Some(BlockForm::Abba { a, b }) => {
                assert!(a.is_circulant());
                assert!(b.is_reverse_circulant());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
