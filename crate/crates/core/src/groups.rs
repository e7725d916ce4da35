//! Finite groups as validated Cayley tables with an explicit coordinate order.
//!
//! The index order of a group is the coordinate order of every code built over
//! it, so each constructor documents the order it produces. Built-in groups are
//! generated from a concrete faithful model (permutations, matrices, normal
//! forms), closed under multiplication, and then re-indexed by evaluating a
//! list of label words.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;

/// Coordinate-order metadata that downstream block-structure checks rely on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ordering {
    /// `h^0, h^1, ..., h^{n-1}`.
    Cyclic { n: usize },
    /// `h^0, h^2, ..., h^{n-2}, h^1, h^3, ..., h^{n-1}`.
    CyclicEvenOdd { n: usize },
    /// `r^0..r^{k-1}, f r^0..f r^{k-1}` for rotation `r` and reflection `f`.
    Dihedral { k: usize },
    /// `C_s × D_2k`: all `(h^i, r^j)` blocks first, then all `(h^i, f r^j)`.
    CyclicDihedral { s: usize, k: usize },
    /// Left factor major, right factor minor.
    Product,
    /// Order fixed by a published parameterization or a loaded table.
    Fixed(String),
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordering::Cyclic { .. } => f.write_str("cyclic powers"),
            Ordering::CyclicEvenOdd { .. } => f.write_str("cyclic even powers then odd powers"),
            Ordering::Dihedral { .. } => f.write_str("rotations then reflections"),
            Ordering::CyclicDihedral { .. } => f.write_str("C_s x D_2k: rotation blocks then reflection blocks"),
            Ordering::Product => f.write_str("direct product, left factor major"),
            Ordering::Fixed(s) => f.write_str(s),
        }
    }
}

/// Generator names for a dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralNames {
    /// `a` is the reflection and `b` the rotation: `a^2 = b^k = 1`.
    ReflectionA,
    /// `a` is the rotation and `b` the reflection: `a^k = b^2 = 1`.
    RotationA,
}

impl DihedralNames {
    fn rotation(self) -> &'static str {
        match self {
            DihedralNames::ReflectionA => "b",
            DihedralNames::RotationA => "a",
        }
    }

    fn reflection(self) -> &'static str {
        match self {
            DihedralNames::ReflectionA => "a",
            DihedralNames::RotationA => "b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<(String, usize)>,
    ordering: Ordering,
}

/// Cayley-table document: `{"order": n, "names": [...], "identity": i, "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDocument {
    pub order: usize,
    pub names: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group. `table[i][j]` is the
    /// index of `g_i g_j`.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        generators: Vec<(String, usize)>,
        ordering: Ordering,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Group("a group needs at least one element".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::Group(format!("order {n} is too large")));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Group(format!("table must be {n}x{n}")));
        }
        if identity >= n {
            return Err(Error::Group(format!("identity index {identity} out of range")));
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let v = table[i][j];
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Group(format!("not cancellative: row {i} repeats or overflows")));
                }
            }
        }
        for j in 0..n {
            seen.fill(false);
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::Group(format!("not cancellative: column {j} repeats")));
                }
            }
        }
        for i in 0..n {
            if table[identity][i] != i || table[i][identity] != i {
                return Err(Error::Group(format!("element {identity} is not an identity (fails at {i})")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i][j];
                for l in 0..n {
                    if table[ij][l] != table[i][table[j][l]] {
                        return Err(Error::Group(format!("not associative: ({i}, {j}, {l})")));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            let inv = (0..n).find(|&j| table[i][j] == identity).expect("latin square has an identity in each row");
            if table[inv][i] != identity {
                return Err(Error::Group(format!("left and right inverses of {i} differ")));
            }
            inverse[i] = inv;
        }
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || label_index.insert(l.clone(), i).is_some() {
                return Err(Error::Group(format!("element names must be unique and non-empty (`{l}`)")));
            }
        }
        let flat = table.iter().flatten().map(|&v| v as u16).collect();
        Ok(FiniteGroup { name: name.into(), labels, label_index, table: flat, identity, inverse, generators, ordering })
    }

    /// Loads and validates a Cayley-table document. Every name becomes an atom
    /// usable in element expressions.
    pub fn from_document(doc: &CayleyDocument) -> Result<Self> {
        if doc.names.len() != doc.order {
            return Err(Error::Group(format!("{} names for order {}", doc.names.len(), doc.order)));
        }
        for name in &doc.names {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !is_ring_token(name);
            if !ok {
                return Err(Error::Group(format!("element name `{name}` must be an identifier not starting with u<digit>")));
            }
        }
        if doc.names.iter().enumerate().any(|(i, n)| n == "e" && i != doc.identity) {
            return Err(Error::Group("the name `e` is reserved for the identity".into()));
        }
        Self::from_table(
            "table",
            doc.names.clone(),
            doc.table.clone(),
            doc.identity,
            Vec::new(),
            Ordering::Fixed("as listed in the table document".into()),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CayleyDocument =
            serde_json::from_str(text).map_err(|e| Error::Group(format!("bad table document: {e}")))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> CayleyDocument {
        let n = self.order();
        CayleyDocument {
            order: n,
            names: self.labels.clone(),
            identity: self.identity,
            table: (0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(g) } else { g };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// `j ↦ index(g · g_j)`.
    pub fn left_mul_perm(&self, g: usize) -> Vec<usize> {
        (0..self.order()).map(|j| self.mul(g, j)).collect()
    }

    /// `j ↦ index(g_j · g)`.
    pub fn right_mul_perm(&self, g: usize) -> Vec<usize> {
        (0..self.order()).map(|j| self.mul(j, g)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Names usable as atoms in words: the generators and `e`, or every element
    /// name for groups loaded from a table. Longest first, for greedy matching.
    pub fn atoms(&self) -> Vec<(String, usize)> {
        let mut atoms: Vec<(String, usize)> = self.generators.clone();
        atoms.push(("e".to_string(), self.identity));
        if self.generators.is_empty() {
            for (i, l) in self.labels.iter().enumerate() {
                if l != "e" {
                    atoms.push((l.clone(), i));
                }
            }
        }
        atoms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        atoms
    }

    /// Evaluates a word such as `ab^2c` or `x^-1 y` to an element index.
    pub fn eval_word(&self, word: &str) -> Result<usize> {
        let atoms = self.atoms();
        let names: Vec<&str> = atoms.iter().map(|(n, _)| n.as_str()).collect();
        let parsed = parse_word(word, &names)?;
        Ok(parsed.iter().fold(self.identity, |acc, &(a, e)| self.mul(acc, self.pow(atoms[a].1, e))))
    }

    /// Re-indexes the group: new index `t` is old index `order[t]`.
    pub fn reorder(&self, order: &[usize], ordering: Ordering) -> Result<FiniteGroup> {
        let n = self.order();
        let mut new_of_old = vec![usize::MAX; n];
        for (t, &old) in order.iter().enumerate() {
            if old >= n || new_of_old[old] != usize::MAX {
                return Err(Error::Group("reorder needs a permutation of the indices".into()));
            }
            new_of_old[old] = t;
        }
        if order.len() != n {
            return Err(Error::Group("reorder needs a permutation of the indices".into()));
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| new_of_old[self.mul(order[i], order[j])]).collect())
            .collect();
        let gens = self.generators.iter().map(|(g, i)| (g.clone(), new_of_old[*i])).collect();
        FiniteGroup::from_table(self.name.clone(), labels, table, new_of_old[self.identity], gens, ordering)
    }

    /// True if relabelling by `map` (old index ↦ other index) is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        let n = self.order();
        n == other.order()
            && (0..n).all(|i| (0..n).all(|j| map[self.mul(i, j)] == other.mul(map[i], map[j])))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {}, {})", self.name, self.order(), self.ordering)
    }
}

pub(crate) fn is_ring_token(s: &str) -> bool {
    let b = s.as_bytes();
    b.first() == Some(&b'u') && (b.len() == 1 || b[1].is_ascii_digit())
}

/// Splits a word into `(atom index, exponent)` pairs using greedy longest match
/// over `atoms`. Accepts optional `*` separators, whitespace, and `^int`
/// (possibly negative) exponents.
pub(crate) fn parse_word(word: &str, atoms: &[&str]) -> Result<Vec<(usize, i64)>> {
    let bytes = word.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() || c == b'*' {
            pos += 1;
            continue;
        }
        let Some(a) = longest_atom(&word[pos..], atoms) else {
            return Err(Error::Parse { pos, msg: format!("unknown group element in `{word}`") });
        };
        pos += atoms[a].len();
        let (e, next) = parse_exponent(bytes, pos)?;
        pos = next;
        out.push((a, e));
    }
    Ok(out)
}

pub(crate) fn longest_atom(rest: &str, atoms: &[&str]) -> Option<usize> {
    atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_empty() && rest.starts_with(**a))
        .max_by_key(|(_, a)| a.len())
        .map(|(i, _)| i)
}

/// Reads an optional `^int` at `pos`; returns `(exponent, new position)`.
pub(crate) fn parse_exponent(bytes: &[u8], mut pos: usize) -> Result<(i64, usize)> {
    while pos < bytes.len() && bytes[pos] == b' ' {
        pos += 1;
    }
    if pos >= bytes.len() || bytes[pos] != b'^' {
        return Ok((1, pos));
    }
    pos += 1;
    while pos < bytes.len() && bytes[pos] == b' ' {
        pos += 1;
    }
    let start = pos;
    if pos < bytes.len() && bytes[pos] == b'-' {
        pos += 1;
    }
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    std::str::from_utf8(&bytes[start..pos])
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .map(|e| (e, pos))
        .ok_or(Error::Parse { pos: start, msg: "expected an integer exponent".into() })
}

fn power_label(name: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    }
}

fn join_labels(parts: &[&str]) -> String {
    let s: String = parts.iter().filter(|p| **p != "e").copied().collect();
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// Closes `gens` under `mul` starting from `identity`, then indexes elements by
/// evaluating `labels` (or shortlex words when `labels` is `None`).
fn build_concrete<T, F>(
    name: &str,
    gens: &[(&str, T)],
    identity: T,
    mul: F,
    labels: Option<Vec<String>>,
    ordering: Ordering,
) -> Result<FiniteGroup>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut words = vec![Vec::<usize>::new()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, (_, gv)) in gens.iter().enumerate() {
            let p = mul(&elems[i], gv);
            if !index.contains_key(&p) {
                index.insert(p.clone(), elems.len());
                let mut w = words[i].clone();
                w.push(g);
                words.push(w);
                elems.push(p);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let n = elems.len();
    let gen_names: Vec<&str> = gens.iter().map(|(g, _)| *g).collect();
    let labels = match labels {
        Some(l) => l,
        None => words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "e".to_string();
                }
                let mut s = String::new();
                let mut run = 1;
                for (t, &g) in w.iter().enumerate() {
                    if t + 1 < w.len() && w[t + 1] == g {
                        run += 1;
                    } else {
                        s.push_str(&power_label(gen_names[g], run));
                        run = 1;
                    }
                }
                s
            })
            .collect(),
    };
    if labels.len() != n {
        return Err(Error::Group(format!("{name}: {} labels for {n} elements", labels.len())));
    }
    // Evaluate each label in the concrete model.
    let pow = |x: &T, e: i64| -> T {
        let mut base = x.clone();
        if e < 0 {
            let mut y = x.clone();
            while mul(&y, x) != identity {
                y = mul(&y, x);
            }
            base = y;
        }
        (0..e.unsigned_abs()).fold(identity.clone(), |acc, _| mul(&acc, &base))
    };
    let mut atom_names: Vec<&str> = gen_names.clone();
    atom_names.push("e");
    let mut order = Vec::with_capacity(n);
    for l in &labels {
        let parsed = parse_word(l, &atom_names)?;
        let v = parsed.iter().fold(identity.clone(), |acc, &(a, e)| {
            if a == gens.len() {
                acc
            } else {
                mul(&acc, &pow(&gens[a].1, e))
            }
        });
        order.push(index[&v]);
    }
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| index[&mul(&elems[order[i]], &elems[order[j]])]).collect())
        .collect();
    // `table` is in old indices; translate through `order`.
    let mut new_of_old = vec![usize::MAX; n];
    for (t, &o) in order.iter().enumerate() {
        if new_of_old[o] != usize::MAX {
            return Err(Error::Group(format!("{name}: labels `{}` name the same element", labels[t])));
        }
        new_of_old[o] = t;
    }
    let table = table.into_iter().map(|r| r.into_iter().map(|o| new_of_old[o]).collect()).collect();
    let generators = gens.iter().map(|(g, v)| (g.to_string(), new_of_old[index[v]])).collect();
    FiniteGroup::from_table(name, labels, table, new_of_old[0], generators, ordering)
}

/// The cyclic group `⟨h⟩` of order `n`, ordered `h^0, ..., h^{n-1}`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    make_cyclic_named(n, "h")
}

pub fn make_cyclic_named(n: usize, generator: &str) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::Group("cyclic group order must be at least 1".into()));
    }
    let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { power_label(generator, i) }).collect();
    build_concrete(
        &format!("C{n}"),
        &[(generator, 1 % n)],
        0usize,
        |a, b| (a + b) % n,
        Some(labels),
        Ordering::Cyclic { n },
    )
}

/// Reorders a cyclic group of even order `2k` as `h^0, h^2, ..., h^{2k-2}, h^1, h^3, ..., h^{2k-1}`.
pub fn reorder_cyclic_even_odd(g: &FiniteGroup) -> Result<FiniteGroup> {
    let Ordering::Cyclic { n } = *g.ordering() else {
        return Err(Error::Group("even/odd ordering needs a cyclic group in power order".into()));
    };
    if n % 2 != 0 {
        return Err(Error::Group(format!("even/odd ordering needs even order, got {n}")));
    }
    let order: Vec<usize> = (0..n).step_by(2).chain((1..n).step_by(2)).collect();
    g.reorder(&order, Ordering::CyclicEvenOdd { n })
}

/// `D_{2k}` with `a` the reflection and `b` the rotation, ordered
/// `1, b, ..., b^{k-1}, a, ab, ..., ab^{k-1}`.
pub fn make_dihedral(order: usize) -> Result<FiniteGroup> {
    make_dihedral_named(order, DihedralNames::ReflectionA)
}

/// `D_{2k}` ordered as rotations `r^j` followed by reflections `f r^j`.
pub fn make_dihedral_named(order: usize, names: DihedralNames) -> Result<FiniteGroup> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::Group(format!("dihedral group order must be even and at least 4, got {order}")));
    }
    let k = order / 2;
    let (r, f) = (names.rotation(), names.reflection());
    let labels = (0..k)
        .map(|j| if j == 0 { "e".to_string() } else { power_label(r, j) })
        .chain((0..k).map(|j| format!("{f}{}", power_label(r, j))))
        .collect();
    // (flip, rot) stands for f^flip r^rot; r f = f r^{-1}.
    let mul = |x: &(u8, usize), y: &(u8, usize)| -> (u8, usize) {
        let rot = if y.0 == 1 { (k - x.1 + y.1) % k } else { (x.1 + y.1) % k };
        ((x.0 + y.0) % 2, rot)
    };
    let mut gens = vec![(f, (1u8, 0usize)), (r, (0u8, 1 % k))];
    if names == DihedralNames::RotationA {
        gens.swap(0, 1);
    }
    build_concrete(&format!("D{order}"), &gens, (0u8, 0usize), mul, Some(labels), Ordering::Dihedral { k })
}

const RENAME_POOL: &[&str] = &["z", "w", "y", "x", "v", "q", "p", "r", "g", "f", "d"];

/// Direct product `G × H`, index `i·|H| + j` for `(g_i, h_j)`. Generator names
/// of `H` that clash with names of `G` are renamed.
pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (ng, nh) = (g.order(), h.order());
    let order: Vec<(usize, usize)> = (0..ng).flat_map(|i| (0..nh).map(move |j| (i, j))).collect();
    product_with_order(g, h, &order, Ordering::Product)
}

/// `C_s × D_{2k}` in the block order `(h^i, b^j)` for all `i, j`, then
/// `(h^i, a b^j)`. Labels put the dihedral part first.
pub fn make_direct_product_csd(c: &FiniteGroup, d: &FiniteGroup) -> Result<FiniteGroup> {
    let Ordering::Cyclic { n: s } = *c.ordering() else {
        return Err(Error::Group("C_s x D_2k ordering needs a cyclic left factor in power order".into()));
    };
    let Ordering::Dihedral { k } = *d.ordering() else {
        return Err(Error::Group("C_s x D_2k ordering needs a dihedral right factor".into()));
    };
    let mut order = Vec::with_capacity(2 * s * k);
    for half in 0..2 {
        for i in 0..s {
            for j in 0..k {
                order.push((i, half * k + j));
            }
        }
    }
    product_with_order(c, d, &order, Ordering::CyclicDihedral { s, k })
}

fn product_with_order(
    g: &FiniteGroup,
    h: &FiniteGroup,
    order: &[(usize, usize)],
    ordering: Ordering,
) -> Result<FiniteGroup> {
    let nh = h.order();
    let mut used: Vec<String> = g.generators.iter().map(|(n, _)| n.clone()).collect();
    let mut h_gens = Vec::new();
    let mut renames: Vec<(String, String)> = Vec::new();
    for (name, idx) in &h.generators {
        let mut new = name.clone();
        if used.contains(&new) {
            new = RENAME_POOL
                .iter()
                .find(|c| !used.iter().any(|u| u == *c) && !h.generators.iter().any(|(n, _)| n == *c))
                .ok_or_else(|| Error::Group("ran out of generator names for the product".into()))?
                .to_string();
            renames.push((name.clone(), new.clone()));
        }
        used.push(new.clone());
        h_gens.push((new, *idx));
    }
    let rename = |label: &str| -> String {
        if renames.is_empty() {
            return label.to_string();
        }
        let names: Vec<&str> = h.generators.iter().map(|(n, _)| n.as_str()).chain(["e"]).collect();
        match parse_word(label, &names) {
            Ok(parts) => {
                let mut s = String::new();
                for (a, e) in parts {
                    let base = if a == h.generators.len() {
                        "e".to_string()
                    } else {
                        h_gens[a].0.clone()
                    };
                    if base == "e" {
                        continue;
                    }
                    s.push_str(&if e == 1 { base } else { format!("{base}^{e}") });
                }
                if s.is_empty() {
                    "e".to_string()
                } else {
                    s
                }
            }
            Err(_) => label.to_string(),
        }
    };
    let dihedral_first = matches!(ordering, Ordering::CyclicDihedral { .. });
    let labels: Vec<String> = order
        .iter()
        .map(|&(i, j)| {
            let hl = rename(h.label(j));
            if dihedral_first {
                join_labels(&[&hl, g.label(i)])
            } else {
                join_labels(&[g.label(i), &hl])
            }
        })
        .collect();
    let mut pos = vec![usize::MAX; g.order() * nh];
    for (t, &(i, j)) in order.iter().enumerate() {
        pos[i * nh + j] = t;
    }
    let n = order.len();
    let table = (0..n)
        .map(|a| {
            let (i1, j1) = order[a];
            (0..n)
                .map(|b| {
                    let (i2, j2) = order[b];
                    pos[g.mul(i1, i2) * nh + h.mul(j1, j2)]
                })
                .collect()
        })
        .collect();
    let mut gens: Vec<(String, usize)> =
        g.generators.iter().map(|(n, i)| (n.clone(), pos[i * nh + h.identity()])).collect();
    gens.extend(h_gens.into_iter().map(|(n, j)| (n, pos[g.identity() * nh + j])));
    let name = format!("{} x {}", g.name(), h.name());
    FiniteGroup::from_table(name, labels, table, pos[g.identity() * nh + h.identity()], gens, ordering)
}

type Perm4 = [u8; 4];

/// Product of permutations acting on the right: `p·q` applies `p` first.
fn perm_mul(p: &Perm4, q: &Perm4) -> Perm4 {
    let mut r = [0u8; 4];
    for i in 0..4 {
        r[i] = q[p[i] as usize];
    }
    r
}

/// Permutation of {1,2,3,4} from disjoint cycles (1-based).
fn perm_from_cycles(cycles: &[&[u8]]) -> Perm4 {
    let mut p = [0, 1, 2, 3];
    for c in cycles {
        for (t, &x) in c.iter().enumerate() {
            p[(x - 1) as usize] = c[(t + 1) % c.len()] - 1;
        }
    }
    p
}

/// `A_4` with `a = (1,2)(3,4)`, `b = (1,3)(2,4)`, `c = (1,2,3)`, ordered
/// `1, a, b, ab, c, ac, bc, abc, c^2, ac^2, bc^2, abc^2`.
pub fn make_a4() -> Result<FiniteGroup> {
    let a = perm_from_cycles(&[&[1, 2], &[3, 4]]);
    let b = perm_from_cycles(&[&[1, 3], &[2, 4]]);
    let c = perm_from_cycles(&[&[1, 2, 3]]);
    let labels = ["", "c", "c^2"]
        .iter()
        .flat_map(|cp| ["", "a", "b", "ab"].iter().map(move |v| join_labels(&[v, cp])))
        .collect();
    build_concrete(
        "A4",
        &[("a", a), ("b", b), ("c", c)],
        [0, 1, 2, 3],
        perm_mul,
        Some(labels),
        Ordering::Fixed("v c^i with v in 1, a, b, ab and i = 0, 1, 2".into()),
    )
}

/// `S_4` generated by `a = (1,2)` and `b = (1,2,3,4)`, in shortlex order.
pub fn make_s4() -> Result<FiniteGroup> {
    let a = perm_from_cycles(&[&[1, 2]]);
    let b = perm_from_cycles(&[&[1, 2, 3, 4]]);
    build_concrete("S4", &[("a", a), ("b", b)], [0, 1, 2, 3], perm_mul, None, Ordering::Fixed("shortlex words in a, b".into()))
}

/// `SL(2,3) = ⟨x, y | x^3 = y^3 = (xy)^2⟩`, ordered `x^i, x^i y, x^i y^2, x^i y^2 x`
/// for `i = 0..5` in each block.
pub fn make_sl23() -> Result<FiniteGroup> {
    // Row-major 2x2 matrices over F3.
    let mul = |p: &[u8; 4], q: &[u8; 4]| -> [u8; 4] {
        [
            (p[0] * q[0] + p[1] * q[2]) % 3,
            (p[0] * q[1] + p[1] * q[3]) % 3,
            (p[2] * q[0] + p[3] * q[2]) % 3,
            (p[2] * q[1] + p[3] * q[3]) % 3,
        ]
    };
    let x = [0, 1, 2, 1];
    let y = [0, 2, 1, 1];
    let mut labels = Vec::new();
    for tail in ["", "y", "y^2", "y^2x"] {
        for i in 0..6 {
            labels.push(join_labels(&[&power_label("x", i), tail]));
        }
    }
    build_concrete(
        "SL(2,3)",
        &[("x", x), ("y", y)],
        [1, 0, 0, 1],
        mul,
        Some(labels),
        Ordering::Fixed("x^i, x^i y, x^i y^2, x^i y^2 x".into()),
    )
}

/// The modular group `M_16 = ⟨s, t | s^8 = t^2 = 1, st = ts^5⟩`, ordered
/// `s^0..s^7, t, st, ..., s^7 t`.
pub fn make_m16() -> Result<FiniteGroup> {
    // (i, j) stands for s^i t^j; t s t = s^5.
    let mul = |p: &(u8, u8), q: &(u8, u8)| -> (u8, u8) {
        let twist = if p.1 == 1 { 5 } else { 1 };
        ((p.0 + twist * q.0) % 8, (p.1 + q.1) % 2)
    };
    let labels = (0..2)
        .flat_map(|j| (0..8).map(move |i| join_labels(&[&power_label("s", i), if j == 1 { "t" } else { "" }])))
        .collect();
    build_concrete(
        "M16",
        &[("s", (1, 0)), ("t", (0, 1))],
        (0, 0),
        mul,
        Some(labels),
        Ordering::Fixed("s^i then s^i t".into()),
    )
}

/// SmallGroup(24,8), `(C6 × C2) ⋊ C2`, built from its published 24×24 group
/// matrix. Elements are named `g1..g24` in the order of that matrix, whose
/// first row lists `g_1^{-1} g_j = g_j`.
pub fn make_g24_8() -> Result<FiniteGroup> {
    let m = &fixtures::G24_8_DISPLAY;
    let n = m.len();
    let at = |i: usize, j: usize| m[i][j] as usize - 1;
    // m[i][j] = g_i^{-1} g_j, and m[i][0] = g_i^{-1}.
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[at(i, 0)][j] = at(i, j);
        }
    }
    let labels = (1..=n).map(|i| format!("g{i}")).collect();
    FiniteGroup::from_table("(C6 x C2) : C2", labels, table, 0, Vec::new(), Ordering::Fixed("published group matrix".into()))
}

/// `C_2 × C_2 × C_2 = ⟨x, y, z⟩`, index `x + 2y + 4z`.
pub fn make_c2c2c2() -> Result<FiniteGroup> {
    let mut labels = Vec::new();
    for z in 0..2 {
        for y in 0..2 {
            for x in 0..2 {
                let parts = [if x == 1 { "x" } else { "" }, if y == 1 { "y" } else { "" }, if z == 1 { "z" } else { "" }];
                labels.push(join_labels(&parts));
            }
        }
    }
    build_concrete(
        "C2 x C2 x C2",
        &[("x", 1u8), ("y", 2u8), ("z", 4u8)],
        0u8,
        |a, b| a ^ b,
        Some(labels),
        Ordering::Fixed("x + 2y + 4z".into()),
    )
}

/// Named built-in groups: `a4`, `s4`, `sl23`, `m16`, `g24_8`, `c2c2c2`.
pub fn make_named(name: &str) -> Result<FiniteGroup> {
    match name.trim().to_ascii_lowercase().as_str() {
        "a4" => make_a4(),
        "s4" => make_s4(),
        "sl23" => make_sl23(),
        "m16" => make_m16(),
        "g24_8" => make_g24_8(),
        "c2c2c2" => make_c2c2c2(),
        other => Err(Error::Group(format!("unknown group `{other}`"))),
    }
}

/// Parses a group descriptor such as `d8`, `c10@evenodd`, `c3 x d8@csd`,
/// `c3:z x d8@swap@csd` or `c2 x a4`.
///
/// Factors: `c<n>` (optionally `c<n>:<gen>`), `d<2k>`, and the named groups.
/// Modifiers apply to the whole descriptor: `@evenodd` (cyclic even/odd
/// order), `@csd` (`C_s × D_2k` block order), `@swap` (dihedral factors name
/// the rotation `a` and the reflection `b`).
pub fn parse_group_descriptor(desc: &str) -> Result<FiniteGroup> {
    let mut parts = desc.split('@');
    let body = parts.next().unwrap_or("").trim().to_ascii_lowercase();
    let mut evenodd = false;
    let mut csd = false;
    let mut swap = false;
    for m in parts {
        match m.trim() {
            "evenodd" => evenodd = true,
            "csd" => csd = true,
            "swap" => swap = true,
            other => return Err(Error::Group(format!("unknown ordering modifier `@{other}`"))),
        }
    }
    let names = if swap { DihedralNames::RotationA } else { DihedralNames::ReflectionA };
    let factors: Vec<FiniteGroup> = body
        .split(" x ")
        .map(|f| f.trim())
        .filter(|f| !f.is_empty())
        .map(|f| parse_factor(f, names))
        .collect::<Result<_>>()?;
    if factors.is_empty() {
        return Err(Error::Group(format!("empty group descriptor `{desc}`")));
    }
    if csd {
        if factors.len() != 2 {
            return Err(Error::Group("@csd needs exactly two factors: c<s> x d<2k>".into()));
        }
        return make_direct_product_csd(&factors[0], &factors[1]);
    }
    let mut g = factors[0].clone();
    for f in &factors[1..] {
        g = make_direct_product(&g, f)?;
    }
    if evenodd {
        g = reorder_cyclic_even_odd(&g)?;
    }
    Ok(g)
}

fn parse_factor(f: &str, names: DihedralNames) -> Result<FiniteGroup> {
    let (head, gen) = match f.split_once(':') {
        Some((h, g)) => (h, Some(g)),
        None => (f, None),
    };
    if let Some(n) = head.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        return make_cyclic_named(n, gen.unwrap_or("h"));
    }
    if let Some(n) = head.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
        return make_dihedral_named(n, names);
    }
    make_named(head)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &FiniteGroup, s: &str) -> usize {
        g.eval_word(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn check_group_axioms(g: &FiniteGroup) {
        for i in 0..g.order() {
            assert_eq!(g.inv(g.inv(i)), i);
            assert_eq!(g.mul(i, g.inv(i)), g.identity());
            let mut p = g.left_mul_perm(i);
            p.sort_unstable();
            assert_eq!(p, (0..g.order()).collect::<Vec<_>>());
        }
        // Labels evaluate to themselves.
        for (i, l) in g.labels().iter().enumerate() {
            assert_eq!(g.eval_word(l).unwrap(), i, "label {l} in {}", g.name());
        }
    }

    #[test]
    fn cyclic() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let c6 = make_cyclic(6).unwrap();
        assert_eq!(c6.mul(w(&c6, "h^2"), w(&c6, "h^5")), w(&c6, "h"));
        assert_eq!(c6.label(3), "h^3");
        assert!(make_cyclic(0).is_err());
        check_group_axioms(&c6);
        assert_eq!(make_cyclic(10).unwrap().order(), 10);
    }

    #[test]
    fn even_odd_order() {
        let c4 = reorder_cyclic_even_odd(&make_cyclic(4).unwrap()).unwrap();
        assert_eq!(c4.labels(), ["e", "h^2", "h", "h^3"]);
        let c2 = reorder_cyclic_even_odd(&make_cyclic(2).unwrap()).unwrap();
        assert_eq!(c2.labels(), ["e", "h"]);
        let c6 = reorder_cyclic_even_odd(&make_cyclic(6).unwrap()).unwrap();
        assert_eq!(c6.labels(), ["e", "h^2", "h^4", "h", "h^3", "h^5"]);
        check_group_axioms(&c6);
        assert!(reorder_cyclic_even_odd(&make_cyclic(5).unwrap()).is_err());
    }

    #[test]
    fn dihedral() {
        let d8 = make_dihedral(8).unwrap();
        assert_eq!(d8.labels(), ["e", "b", "b^2", "b^3", "a", "ab", "ab^2", "ab^3"]);
        let ab = w(&d8, "ab");
        assert_eq!(d8.mul(ab, ab), d8.identity());
        assert_eq!(d8.mul(w(&d8, "a"), w(&d8, "b")), 5);
        assert_eq!(w(&d8, "a^2"), d8.identity());
        assert_eq!(w(&d8, "b^4"), d8.identity());
        assert_eq!(w(&d8, "ab"), w(&d8, "b^-1a"));
        check_group_axioms(&d8);
        let swapped = make_dihedral_named(8, DihedralNames::RotationA).unwrap();
        assert_eq!(swapped.labels(), ["e", "a", "a^2", "a^3", "b", "ba", "ba^2", "ba^3"]);
        assert_eq!(w(&swapped, "ab"), w(&swapped, "ba^3"));
        assert!(make_dihedral(7).is_err());
        assert!(make_dihedral(2).is_err());
    }

    #[test]
    fn products() {
        let c2 = make_cyclic(2).unwrap();
        let k = make_direct_product(&make_direct_product(&c2, &c2).unwrap(), &c2).unwrap();
        assert_eq!(k.order(), 8);
        for i in 0..8 {
            assert_eq!(k.mul(i, i), k.identity());
        }
        check_group_axioms(&k);
        let c3d8 = make_direct_product(&make_cyclic(3).unwrap(), &make_dihedral(8).unwrap()).unwrap();
        assert_eq!(c3d8.order(), 24);
        check_group_axioms(&c3d8);
    }

    #[test]
    fn csd_order() {
        let g = parse_group_descriptor("c3 x d8@csd").unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(&g.labels()[..5], ["e", "b", "b^2", "b^3", "h"]);
        assert_eq!(g.label(12), "a");
        assert_eq!(g.label(17), "abh");
        check_group_axioms(&g);
        let z = parse_group_descriptor("c3:z x d8@swap@csd").unwrap();
        assert_eq!(&z.labels()[..6], ["e", "a", "a^2", "a^3", "z", "az"]);
        assert_eq!(z.label(12), "b");
    }

    #[test]
    fn named_groups_satisfy_relations() {
        let m16 = make_m16().unwrap();
        assert_eq!(m16.order(), 16);
        assert_eq!(w(&m16, "st"), w(&m16, "ts^5"));
        assert_eq!(w(&m16, "s^8"), m16.identity());
        assert_eq!(w(&m16, "t^2"), m16.identity());
        check_group_axioms(&m16);

        let a4 = make_a4().unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(w(&a4, "c^3"), a4.identity());
        assert_eq!(w(&a4, "ab"), w(&a4, "ba"));
        check_group_axioms(&a4);

        let sl = make_sl23().unwrap();
        assert_eq!(sl.order(), 24);
        assert_eq!(w(&sl, "x^3"), w(&sl, "y^3"));
        assert_eq!(w(&sl, "x^3"), w(&sl, "xyxy"));
        assert_ne!(w(&sl, "x^3"), sl.identity());
        check_group_axioms(&sl);

        let s4 = make_s4().unwrap();
        assert_eq!(s4.order(), 24);
        check_group_axioms(&s4);

        let g = make_g24_8().unwrap();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        check_group_axioms(&g);

        let c222 = make_c2c2c2().unwrap();
        assert_eq!(c222.labels(), ["e", "x", "y", "xy", "z", "xz", "yz", "xyz"]);
        check_group_axioms(&c222);
        assert!(make_named("q8").is_err());
    }

    #[test]
    fn g24_8_inverse_pairs() {
        let g = make_g24_8().unwrap();
        let pairs: Vec<(usize, usize)> =
            (0..24).filter(|&i| g.inv(i) > i).map(|i| (i + 1, g.inv(i) + 1)).collect();
        assert_eq!(pairs, [(4, 14), (6, 24), (7, 17), (8, 23), (11, 12), (16, 19), (21, 22)]);
    }

    #[test]
    fn cayley_documents() {
        let ok = r#"{"order": 2, "names": ["e", "t"], "identity": 0, "table": [[0, 1], [1, 0]]}"#;
        assert_eq!(FiniteGroup::from_json(ok).unwrap().order(), 2);

        let repeated = r#"{"order": 2, "names": ["e", "t"], "identity": 0, "table": [[0, 0], [1, 0]]}"#;
        assert!(FiniteGroup::from_json(repeated).unwrap_err().to_string().contains("not cancellative"));

        // A Latin square that is not associative (a loop of order 5).
        let loop5 = r#"{"order": 5, "names": ["e","p","q","r","s"], "identity": 0, "table":
            [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;
        assert!(FiniteGroup::from_json(loop5).unwrap_err().to_string().contains("not associative"));

        let bad_identity = r#"{"order": 2, "names": ["e", "t"], "identity": 1, "table": [[0, 1], [1, 0]]}"#;
        assert!(FiniteGroup::from_json(bad_identity).is_err());

        // Klein four loaded from a table is C2 x C2 up to relabeling.
        let klein = r#"{"order": 4, "names": ["e","p","q","r"], "identity": 0, "table":
            [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#;
        let k = FiniteGroup::from_json(klein).unwrap();
        let c2 = make_cyclic(2).unwrap();
        let p = make_direct_product(&c2, &c2).unwrap();
        assert!(k.is_isomorphism(&p, &[0, 1, 2, 3]));
        assert_eq!(k.eval_word("pq").unwrap(), 3);

        let mut doc = make_dihedral(6).unwrap().to_document();
        doc.names = (0..6).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        let round = FiniteGroup::from_document(&doc).unwrap();
        assert!(round.is_isomorphism(&make_dihedral(6).unwrap(), &[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn product_renames_clashing_generators() {
        let g = parse_group_descriptor("c2 x c2 x c2").unwrap();
        let names: Vec<&str> = g.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names.len(), 3);
        assert!(names.windows(2).all(|w| w[0] != w[1]));
        check_group_axioms(&g);
    }
}
