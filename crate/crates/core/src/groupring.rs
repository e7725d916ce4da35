//! Group-ring elements `Σ α_i g_i` over `R_k G` and the matrix `σ(v)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{longest_atom, parse_exponent, FiniteGroup};
use crate::rings::{RingSpec, RingValue};

#[derive(Clone)]
pub struct GroupRingElement {
    ring: RingSpec,
    group: Arc<FiniteGroup>,
    coeffs: Vec<RingValue>,
}

impl GroupRingElement {
    pub fn zero(ring: RingSpec, group: Arc<FiniteGroup>) -> Self {
        let coeffs = vec![ring.zero(); group.order()];
        GroupRingElement { ring, group, coeffs }
    }

    /// `r · g` for a single group element.
    pub fn monomial(ring: RingSpec, group: Arc<FiniteGroup>, g: usize, r: RingValue) -> Self {
        let mut v = Self::zero(ring, group);
        v.coeffs[g] = r;
        v
    }

    pub fn one(ring: RingSpec, group: Arc<FiniteGroup>) -> Self {
        let e = group.identity();
        Self::monomial(ring, group, e, ring.one())
    }

    pub fn from_coeffs(ring: RingSpec, group: Arc<FiniteGroup>, coeffs: Vec<RingValue>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Mismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.spec() != ring) {
            return Err(Error::Ring(format!("ring mismatch: {} vs {ring}", c.spec())));
        }
        Ok(GroupRingElement { ring, group, coeffs })
    }

    /// Builds an element from raw coefficient words (`bits` of each `α_i`).
    pub fn from_bits(ring: RingSpec, group: Arc<FiniteGroup>, bits: &[u16]) -> Result<Self> {
        let coeffs = bits.iter().map(|&b| ring.value(b)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(ring, group, coeffs)
    }

    /// Binary element with support given by a bitmask over group indices.
    pub fn from_support(group: Arc<FiniteGroup>, support: &[usize]) -> Self {
        let mut v = Self::zero(RingSpec::F2, group);
        for &i in support {
            v.coeffs[i] = v.coeffs[i].add_unchecked(RingSpec::F2.one());
        }
        v
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[RingValue] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> RingValue {
        self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Ring(format!("ring mismatch: {} vs {}", self.ring, other.ring)));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::Mismatch(format!(
                "group mismatch: {} vs {}",
                self.group.name(),
                other.group.name()
            )));
        }
        Ok(())
    }

    pub fn gr_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn gr_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_unchecked(*b)).collect();
        GroupRingElement { ring: self.ring, group: self.group.clone(), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let g = &self.group;
        let mut out = Self::zero(self.ring, g.clone());
        for (j, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (l, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let i = g.mul(j, l);
                out.coeffs[i] = out.coeffs[i].add_unchecked(a.mul_unchecked(*b));
            }
        }
        out
    }

    pub fn scale(&self, r: RingValue) -> Result<Self> {
        if r.spec() != self.ring {
            return Err(Error::Ring(format!("ring mismatch: {} vs {}", r.spec(), self.ring)));
        }
        let coeffs = self.coeffs.iter().map(|c| c.mul_unchecked(r)).collect();
        Ok(GroupRingElement { ring: self.ring, group: self.group.clone(), coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring, self.group.clone());
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// The canonical involution `Σ α_i g_i ↦ Σ α_i g_i^{-1}`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(self.ring, self.group.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(i)] = *c;
        }
        out
    }

    /// `σ(v)` with entry `(i, j) = α_{g_i^{-1} g_j}`; row `i` is the coefficient
    /// vector of `g_i · v`.
    pub fn sigma(&self) -> SigmaMatrix {
        let g = &self.group;
        let n = g.order();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            let gi = g.inv(i);
            for j in 0..n {
                entries.push(self.coeffs[g.mul(gi, j)]);
            }
        }
        SigmaMatrix { ring: self.ring, n, entries }
    }

    /// Whether `σ(v)` is symmetric, computed from the matrix.
    pub fn sigma_is_symmetric(&self) -> bool {
        self.sigma().is_symmetric()
    }

    /// `v = v^T`, the element-level form of symmetry of `σ(v)`.
    pub fn is_self_adjoint(&self) -> bool {
        (0..self.coeffs.len()).all(|i| self.coeffs[i] == self.coeffs[self.group.inv(i)])
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupRingElement {}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({}[{}]: {})", self.ring, self.group.name(), self)
    }
}

impl fmt::Display for GroupRingElement {
    /// Prints terms in index order, in a form `parse_element` reads back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let label = self.group.label(i);
            let coeff = c.to_string();
            if i == self.group.identity() {
                if c.bits().count_ones() > 1 {
                    write!(f, "({coeff})")?;
                } else {
                    f.write_str(&coeff)?;
                }
            } else if coeff == "1" {
                f.write_str(label)?;
            } else if c.bits().count_ones() == 1 {
                write!(f, "{coeff}*{label}")?;
            } else {
                write!(f, "({coeff})*{label}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Dense `n × n` matrix over `R_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMatrix {
    ring: RingSpec,
    n: usize,
    entries: Vec<RingValue>,
}

impl SigmaMatrix {
    pub fn zeros(ring: RingSpec, n: usize) -> Self {
        SigmaMatrix { ring, n, entries: vec![ring.zero(); n * n] }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> RingValue {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingValue) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RingValue] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RingValue]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> SigmaMatrix {
        let mut t = SigmaMatrix::zeros(self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn add(&self, other: &SigmaMatrix) -> SigmaMatrix {
        assert_eq!(self.n, other.n);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add_unchecked(*b)).collect();
        SigmaMatrix { ring: self.ring, n: self.n, entries }
    }

    pub fn mul(&self, other: &SigmaMatrix) -> SigmaMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SigmaMatrix::zeros(self.ring, n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut out.entries[i * n + j];
                    *cell = cell.add_unchecked(a.mul_unchecked(other.get(l, j)));
                }
            }
        }
        out
    }

    /// Sub-block of size `h × w` starting at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, h: usize, w: usize) -> Vec<Vec<RingValue>> {
        (r..r + h).map(|i| (c..c + w).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Rows rendered as space-separated ring literals.
    pub fn to_strings(&self) -> Vec<String> {
        self.rows()
            .map(|r| {
                if self.ring.is_field() {
                    r.iter().map(|v| if v.is_zero() { '0' } else { '1' }).collect()
                } else {
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                }
            })
            .collect()
    }
}

/// Parses an element expression such as `1 + b*a + b*a^2 + b*a^3`,
/// `u1*e + (1+u1)*h` or `1+a(b+b(1+b)(bh+h^2))`.
///
/// Grammar: sums of products; a product is a sequence of factors joined by
/// `*` or juxtaposition; a factor is a ring literal (`0`, `1`, `u<i>`), a
/// group generator or element name, `e`, or a parenthesized expression, each
/// optionally raised to an integer power. Products respect the group's
/// multiplication order; ring scalars are central.
pub fn parse_element(text: &str, ring: RingSpec, group: &Arc<FiniteGroup>) -> Result<GroupRingElement> {
    let atoms = group.atoms();
    let names: Vec<&str> = atoms.iter().map(|(n, _)| n.as_str()).collect();
    let mut p = ElementParser { src: text, bytes: text.as_bytes(), pos: 0, ring, group, atoms: &atoms, names: &names };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Parse { pos: p.pos, msg: format!("unexpected `{}`", &text[p.pos..]) });
    }
    Ok(v)
}

struct ElementParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: RingSpec,
    group: &'a Arc<FiniteGroup>,
    atoms: &'a [(String, usize)],
    names: &'a [&'a str],
}

impl ElementParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<GroupRingElement> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add_unchecked(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<GroupRingElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul_unchecked(&self.factor()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc.mul_unchecked(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GroupRingElement> {
        let Some(c) = self.peek() else {
            return Err(Error::Parse { pos: self.pos, msg: "unexpected end of expression".into() });
        };
        let start = self.pos;
        let base: Base = if c == b'(' {
            self.pos += 1;
            let inner = self.sum()?;
            if self.peek() != Some(b')') {
                return Err(Error::Parse { pos: self.pos, msg: "expected `)`".into() });
            }
            self.pos += 1;
            Base::Element(inner)
        } else if c == b'0' || c == b'1' {
            self.pos += 1;
            let r = if c == b'0' { self.ring.zero() } else { self.ring.one() };
            Base::Element(GroupRingElement::monomial(self.ring, self.group.clone(), self.group.identity(), r))
        } else if c.is_ascii_digit() {
            return Err(Error::Parse { pos: self.pos, msg: "only 0 and 1 are scalars in characteristic 2".into() });
        } else if let Some(r) = self.ring_generator()? {
            Base::Element(GroupRingElement::monomial(self.ring, self.group.clone(), self.group.identity(), r))
        } else if let Some(a) = longest_atom(&self.src[self.pos..], self.names) {
            self.pos += self.names[a].len();
            Base::Group(self.atoms[a].1)
        } else {
            let end = self.src[self.pos..]
                .find(|ch: char| !ch.is_ascii_alphanumeric() && ch != '_')
                .map_or(self.src.len(), |e| self.pos + e);
            return Err(Error::Parse {
                pos: start,
                msg: format!("`{}` is not a generator or element of {}", &self.src[self.pos..end], self.group.name()),
            });
        };
        let (e, next) = parse_exponent(self.bytes, self.pos)?;
        self.pos = next;
        match base {
            Base::Group(g) => {
                let x = self.group.pow(g, e);
                Ok(GroupRingElement::monomial(self.ring, self.group.clone(), x, self.ring.one()))
            }
            Base::Element(v) => {
                if e < 0 {
                    return Err(Error::Parse { pos: start, msg: "negative powers apply to group elements only".into() });
                }
                Ok(if e == 1 { v } else { v.pow(e as u32) })
            }
        }
    }

    /// Reads `u<i>` (or a bare `u` in `R_1`) when the input is not a longer group name.
    fn ring_generator(&mut self) -> Result<Option<RingValue>> {
        let rest = &self.bytes[self.pos..];
        if rest.first() != Some(&b'u') {
            return Ok(None);
        }
        let group_len = longest_atom(&self.src[self.pos..], self.names).map_or(0, |a| self.names[a].len());
        match rest.get(1) {
            Some(d) if d.is_ascii_digit() => {
                let i = d - b'0';
                if i == 0 || i > self.ring.k() {
                    return Err(Error::Parse { pos: self.pos, msg: format!("u{i} is not a generator of {}", self.ring) });
                }
                self.pos += 2;
                Ok(Some(self.ring.generator(i)?))
            }
            _ if group_len == 0 && self.ring.k() == 1 => {
                self.pos += 1;
                Ok(Some(self.ring.generator(1)?))
            }
            _ => Ok(None),
        }
    }
}

enum Base {
    Group(usize),
    Element(GroupRingElement),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitmat::BitMatrix;
    use crate::fixtures;
    use crate::groups::{make_cyclic, make_dihedral_named, make_m16, parse_group_descriptor, DihedralNames};

    fn binary_rows(m: &SigmaMatrix) -> BitMatrix {
        BitMatrix::from_strings(&m.to_strings())
    }

    #[test]
    fn d8_hamming_sigma_matches_display() {
        let g = Arc::new(make_dihedral_named(8, DihedralNames::RotationA).unwrap());
        let v = parse_element("1 + b*a + b*a^2 + b*a^3", RingSpec::F2, &g).unwrap();
        assert_eq!(v.support(), vec![0, 5, 6, 7]);
        assert_eq!(v.sigma().to_strings(), fixtures::D8_SIGMA);
        let mut m = binary_rows(&v.sigma());
        m.reduce();
        assert_eq!(m.to_strings(), fixtures::D8_REDUCED);
    }

    #[test]
    fn m16_first_row_and_reduced_form() {
        let g = Arc::new(make_m16().unwrap());
        let v = parse_element("(1+s+s^2+s^3)(1+t)", RingSpec::F2, &g).unwrap();
        let sigma = v.sigma();
        assert_eq!(sigma.to_strings()[0], fixtures::M16_SIGMA[0]);
        assert_eq!(binary_rows(&sigma).rank(), 5);
        // The display lists the right translates v·g_i.
        let right: Vec<String> = (0..16)
            .map(|i| {
                let gi = GroupRingElement::monomial(RingSpec::F2, g.clone(), i, RingSpec::F2.one());
                let w = v.gr_mul(&gi).unwrap();
                w.coeffs().iter().map(|c| if c.is_zero() { '0' } else { '1' }).collect()
            })
            .collect();
        assert_eq!(right, fixtures::M16_SIGMA);
        let mut shown = BitMatrix::from_strings(&right);
        shown.reduce();
        assert_eq!(shown.to_strings(), fixtures::M16_REDUCED);
    }

    #[test]
    fn parse_examples() {
        let c2 = Arc::new(make_cyclic(2).unwrap());
        let r1 = RingSpec::new(1).unwrap();
        let v = parse_element("u1*e + (1+u1)*h", r1, &c2).unwrap();
        assert_eq!(v.coeffs(), [r1.generator(1).unwrap(), r1.value(0b11).unwrap()]);
        assert!(parse_element("0", r1, &c2).unwrap().is_zero());
        assert_eq!(parse_element("u*e + (1+u)h", r1, &c2).unwrap(), v);

        let err = parse_element("1 + q", RingSpec::F2, &c2).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }), "{err:?}");
        assert!(parse_element("u2*h", r1, &c2).is_err());
        assert!(parse_element("(1+h", r1, &c2).is_err());
        assert!(parse_element("1 +", r1, &c2).is_err());
    }

    #[test]
    fn parse_noncommutative_words() {
        let g = Arc::new(parse_group_descriptor("d8").unwrap());
        let f2 = RingSpec::F2;
        let ab = parse_element("ab", f2, &g).unwrap();
        let ba = parse_element("ba", f2, &g).unwrap();
        assert_ne!(ab, ba);
        assert_eq!(ba, parse_element("ab^3", f2, &g).unwrap());
        assert_eq!(parse_element("b^-1", f2, &g).unwrap(), parse_element("b^3", f2, &g).unwrap());
        // (1 + ab)^2 = 0 in characteristic 2 since ab is an involution.
        assert!(parse_element("(1+ab)^2", f2, &g).unwrap().is_zero());
        assert_eq!(parse_element("a(b+b^2)", f2, &g).unwrap(), parse_element("ab+ab^2", f2, &g).unwrap());
    }

    #[test]
    fn display_round_trips() {
        for desc in ["d8", "c3 x d8@csd", "m16", "g24_8", "c2 x a4", "sl23"] {
            let g = Arc::new(parse_group_descriptor(desc).unwrap());
            let r2 = RingSpec::new(2).unwrap();
            let bits: Vec<u16> = (0..g.order()).map(|i| ((i * 7 + 3) % 4) as u16).collect();
            let v = GroupRingElement::from_bits(r2, g.clone(), &bits).unwrap();
            let back = parse_element(&v.to_string(), r2, &g).unwrap();
            assert_eq!(back, v, "{desc}: {v}");
        }
    }

    #[test]
    fn involution_examples() {
        let g = Arc::new(parse_group_descriptor("d8").unwrap());
        let f2 = RingSpec::F2;
        let b = parse_element("b", f2, &g).unwrap();
        assert_eq!(b.involution(), parse_element("b^3", f2, &g).unwrap());
        for j in 0..4 {
            let r = parse_element(&format!("ab^{j}"), f2, &g).unwrap();
            assert_eq!(r.involution(), r);
        }
    }

    #[test]
    fn sigma_of_zero_and_unit_monomial() {
        let g = Arc::new(make_cyclic(5).unwrap());
        let r2 = RingSpec::new(2).unwrap();
        let z = GroupRingElement::zero(r2, g.clone()).sigma();
        assert!(z.rows().all(|r| r.iter().all(|c| c.is_zero())));
        let v = GroupRingElement::monomial(r2, g.clone(), 2, r2.value(0b0101).unwrap());
        let s = v.sigma();
        for i in 0..5 {
            assert_eq!(s.row(i).iter().filter(|c| c.is_unit()).count(), 1);
            assert_eq!((0..5).filter(|&r| s.get(r, i).is_unit()).count(), 1);
        }
    }
}
