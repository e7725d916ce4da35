//! Exhaustive scans over parameterized sets of group-ring elements.
//!
//! A candidate set is `base + Σ b_i f_i` where each `f_i` is a fixed element
//! and the `b_i` range over 𝔽₂. Ties between coefficients are expressed by
//! letting one free element touch several group elements.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmat::{xor_into, BitMatrix};
use crate::codes::{Distance, LinearCode, Metric};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::groupring::{parse_element, GroupRingElement};
use crate::groups::{parse_group_descriptor, CayleyDocument, FiniteGroup};
use crate::rings::RingSpec;
use crate::CodeReport;

/// Hard cap on the number of free bits.
pub const MAX_FREE_BITS: usize = 24;

/// Candidates per chunk: `2^CHUNK_BITS`.
const CHUNK_BITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// `σ(v)` is symmetric.
    Symmetric,
    /// Binary rank of the Gray image.
    Rank(usize),
    /// Hamming (or Lee) distance at least the given value.
    MinDistance {
        at_least: u32,
        #[serde(default = "default_metric")]
        metric: Metric,
    },
    SelfDual,
    NotSelfDual,
    FormallySelfDual,
    TypeIi,
}

fn default_metric() -> Metric {
    Metric::Hamming
}

impl std::fmt::Display for Filter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Filter::Symmetric => write!(f, "symmetric"),
            Filter::Rank(r) => write!(f, "rank = {r}"),
            Filter::MinDistance { at_least, metric: Metric::Hamming } => write!(f, "d >= {at_least}"),
            Filter::MinDistance { at_least, metric: Metric::Lee } => write!(f, "d_L >= {at_least}"),
            Filter::SelfDual => write!(f, "self-dual"),
            Filter::NotSelfDual => write!(f, "not self-dual"),
            Filter::FormallySelfDual => write!(f, "formally self-dual"),
            Filter::TypeIi => write!(f, "type II"),
        }
    }
}

/// A candidate set plus the filters applied to it. Serializes to the JSON
/// pattern-file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub name: String,
    /// `f2` or `r<k>`.
    pub ring: String,
    /// Group descriptor; ignored when `table` is present.
    #[serde(default)]
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<CayleyDocument>,
    /// Fixed part of every candidate.
    #[serde(default = "zero_text")]
    pub base: String,
    /// One element per free bit.
    pub free: Vec<String>,
    #[serde(default)]
    pub filters: Vec<Filter>,
    /// Split survivors into self-dual / FSD-not-self-dual / neither with a
    /// Hamming distance histogram per class.
    #[serde(default)]
    pub classify: bool,
    #[serde(default = "default_witnesses")]
    pub report_witnesses: usize,
    /// Expected values keyed by `final`, `class:<name>` or `class:<name>:d=<d>`.
    #[serde(default)]
    pub expected: BTreeMap<String, u64>,
}

fn zero_text() -> String {
    "0".into()
}

fn default_witnesses() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCount {
    pub filter: String,
    pub survivors: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub count: u64,
    pub distances: BTreeMap<u32, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub key: String,
    pub expected: u64,
    pub actual: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub name: String,
    pub ring: String,
    pub group: String,
    pub free_bits: usize,
    pub total_candidates: u64,
    pub stages: Vec<StageCount>,
    pub final_count: u64,
    /// Minimum distances of survivors, when known exactly.
    pub distance_histogram: BTreeMap<u32, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<BTreeMap<String, ClassSummary>>,
    pub witnesses: Vec<Witness>,
    pub checks: Vec<Check>,
    pub workers: usize,
    pub wall_time_ms: u128,
}

impl SearchReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// Equality of everything but timing and worker count.
    pub fn same_results(&self, other: &SearchReport) -> bool {
        self.total_candidates == other.total_candidates
            && self.stages == other.stages
            && self.final_count == other.final_count
            && self.distance_histogram == other.distance_histogram
            && self.classes == other.classes
            && self.witnesses == other.witnesses
            && self.checks == other.checks
    }

    fn value(&self, key: &str) -> Option<u64> {
        if key == "final" {
            return Some(self.final_count);
        }
        if key == "total" {
            return Some(self.total_candidates);
        }
        if let Some(d) = key.strip_prefix("final:d=") {
            let d: u32 = d.parse().ok()?;
            return Some(self.distance_histogram.get(&d).copied().unwrap_or(0));
        }
        let rest = key.strip_prefix("class:")?;
        let classes = self.classes.as_ref()?;
        let (name, d) = match rest.split_once(":d=") {
            Some((n, d)) => (n, Some(d.parse::<u32>().ok()?)),
            None => (rest, None),
        };
        let c = classes.get(name).cloned().unwrap_or_default();
        Some(match d {
            Some(d) => c.distances.get(&d).copied().unwrap_or(0),
            None => c.count,
        })
    }
}

impl std::fmt::Display for SearchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "search {} over {}[{}]", self.name, self.ring, self.group)?;
        writeln!(f, "  candidates: {} ({} free bits)", self.total_candidates, self.free_bits)?;
        for s in &self.stages {
            writeln!(f, "  {:<20} {}", s.filter, s.survivors)?;
        }
        writeln!(f, "  final: {}", self.final_count)?;
        if !self.distance_histogram.is_empty() {
            let h: Vec<String> = self.distance_histogram.iter().map(|(d, c)| format!("d={d}: {c}")).collect();
            writeln!(f, "  distances: {}", h.join(", "))?;
        }
        if let Some(classes) = &self.classes {
            for (name, c) in classes {
                let h: Vec<String> = c.distances.iter().map(|(d, c)| format!("d={d}: {c}")).collect();
                writeln!(f, "  {name}: {} ({})", c.count, h.join(", "))?;
            }
        }
        for w in &self.witnesses {
            write!(f, "  witness #{}: {}", w.index, w.element)?;
            if let Some(d) = w.distance {
                write!(f, " (d={d})")?;
            }
            writeln!(f)?;
        }
        for c in &self.checks {
            let tag = if c.ok { "ok" } else { "MISMATCH" };
            writeln!(f, "  check {}: expected {}, got {} [{tag}]", c.key, c.expected, c.actual)?;
        }
        write!(f, "  workers: {}, time: {} ms", self.workers, self.wall_time_ms)
    }
}

/// A spec with its ring, group and elements resolved.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub spec: SearchSpec,
    pub ring: RingSpec,
    pub group: Arc<FiniteGroup>,
    pub base: GroupRingElement,
    pub free: Vec<GroupRingElement>,
}

impl Prepared {
    pub fn free_bits(&self) -> usize {
        self.free.len()
    }

    pub fn total_candidates(&self) -> u64 {
        1u64 << self.free.len()
    }

    /// Candidate number `mask`: base plus the free elements selected by its bits.
    pub fn candidate(&self, mask: u64) -> GroupRingElement {
        let mut v = self.base.clone();
        for (b, f) in self.free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                v = v.gr_add(f).expect("same ring and group");
            }
        }
        v
    }
}

pub fn prepare(spec: &SearchSpec) -> Result<Prepared> {
    let ring = RingSpec::parse(&spec.ring)?;
    let group = match &spec.table {
        Some(doc) => FiniteGroup::from_document(doc)?,
        None => parse_group_descriptor(&spec.group)?,
    };
    let group = Arc::new(group);
    if spec.free.len() > MAX_FREE_BITS {
        return Err(Error::Search(format!(
            "candidate space too large: {} free bits exceeds {MAX_FREE_BITS}",
            spec.free.len()
        )));
    }
    let base = parse_element(&spec.base, ring, &group)?;
    let free = spec.free.iter().map(|t| parse_element(t, ring, &group)).collect::<Result<Vec<_>>>()?;
    // Free bits must be independent, or two masks would name the same element.
    let n = group.order();
    let w = ring.width();
    let mut m = BitMatrix::zeros(0, n * w);
    for (b, f) in free.iter().enumerate() {
        if f.is_zero() {
            return Err(Error::Search(format!("free bit {b} ({}) is zero", spec.free[b])));
        }
        let row = m.push_zero_row();
        for (g, c) in f.coeffs().iter().enumerate() {
            for t in 0..w {
                if c.bits() >> t & 1 == 1 {
                    crate::bitmat::set_bit(row, g * w + t, true);
                }
            }
        }
    }
    if m.rank() != free.len() {
        return Err(Error::Search("free bits are linearly dependent (inconsistent ties)".into()));
    }
    Ok(Prepared { spec: spec.clone(), ring, group, base, free })
}

/// Gray-image rows of `σ(v)` expanded by ring monomials, packed.
fn generator_rows(v: &GroupRingElement) -> Vec<u64> {
    let ring = v.ring();
    let w = ring.width();
    let n = v.group().order();
    let words = crate::bitmat::words_for(n * w);
    let sigma = v.sigma();
    let mut out = vec![0u64; n * w * words];
    for i in 0..n {
        for s in 0..w {
            let mono = ring.monomial(s);
            let row = &mut out[(i * w + s) * words..(i * w + s + 1) * words];
            for (j, c) in sigma.row(i).iter().enumerate() {
                let bits = c.mul(mono).expect("same ring").gray() as u64;
                let start = j * w;
                row[start / 64] |= bits << (start % 64);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    SelfDual,
    FsdNotSd,
    Neither,
}

impl Class {
    fn name(self) -> &'static str {
        match self {
            Class::SelfDual => "self_dual",
            Class::FsdNotSd => "fsd_not_sd",
            Class::Neither => "neither",
        }
    }
}

/// Outcome for one candidate: how many filters it passed, plus what was
/// learned about it along the way.
struct Verdict {
    passed: usize,
    distance: Option<u32>,
    class: Option<(Class, u32)>,
}

fn evaluate(code: &LinearCode, coeffs: &[u16], group: &FiniteGroup, filters: &[Filter], classify: bool) -> Result<Verdict> {
    let mut distance = None;
    let mut passed = 0;
    for f in filters {
        let ok = match *f {
            Filter::Symmetric => (0..coeffs.len()).all(|g| coeffs[g] == coeffs[group.inv(g)]),
            Filter::Rank(r) => code.rank() == r,
            Filter::MinDistance { at_least, metric } => match code.min_distance_with(metric, Some(at_least), false)? {
                Distance::Exact(d) => {
                    if metric == Metric::Hamming {
                        distance = Some(d);
                    }
                    true
                }
                Distance::Below(_) | Distance::Undefined => false,
            },
            Filter::SelfDual => code.is_self_dual(),
            Filter::NotSelfDual => !code.is_self_dual(),
            Filter::FormallySelfDual => code.is_formally_self_dual(Metric::Hamming)?,
            Filter::TypeIi => code.is_type_ii(),
        };
        if !ok {
            return Ok(Verdict { passed, distance, class: None });
        }
        passed += 1;
    }
    let class = if classify {
        let we = code.weight_enumerator_with(Metric::Hamming, false)?;
        let d = we.counts.keys().copied().find(|&w| w > 0).unwrap_or(0);
        let class = if code.is_self_dual() {
            Class::SelfDual
        } else if 2 * code.rank() == code.binary_length()
            && code.dual().weight_enumerator_with(Metric::Hamming, false)? == we
        {
            Class::FsdNotSd
        } else {
            Class::Neither
        };
        distance = Some(d);
        Some((class, d))
    } else {
        None
    };
    Ok(Verdict { passed, distance, class })
}

/// Runs the filters on a single element through the ordinary code path.
pub fn check_element(v: &GroupRingElement, filters: &[Filter]) -> Result<bool> {
    let code = LinearCode::from_element(v);
    let coeffs: Vec<u16> = v.coeffs().iter().map(|c| c.bits()).collect();
    Ok(evaluate(&code, &coeffs, v.group(), filters, false)?.passed == filters.len())
}

#[derive(Default)]
struct Tally {
    stages: Vec<u64>,
    histogram: BTreeMap<u32, u64>,
    classes: BTreeMap<&'static str, (u64, BTreeMap<u32, u64>)>,
    /// Smallest surviving masks with their distance and class.
    witnesses: Vec<(u64, Option<u32>, Option<Class>)>,
}

impl Tally {
    fn new(stages: usize) -> Self {
        Tally { stages: vec![0; stages], ..Default::default() }
    }

    fn merge(mut self, other: Tally, keep: usize) -> Tally {
        for (a, b) in self.stages.iter_mut().zip(other.stages) {
            *a += b;
        }
        for (d, c) in other.histogram {
            *self.histogram.entry(d).or_default() += c;
        }
        for (k, (c, h)) in other.classes {
            let e = self.classes.entry(k).or_default();
            e.0 += c;
            for (d, x) in h {
                *e.1.entry(d).or_default() += x;
            }
        }
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_by_key(|w| w.0);
        self.witnesses.truncate(keep);
        self
    }
}

/// Number of worker threads used when none is given.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn run_search(spec: &SearchSpec, workers: Option<usize>) -> Result<SearchReport> {
    let prepared = prepare(spec)?;
    run_prepared(&prepared, workers)
}

pub fn run_prepared(p: &Prepared, workers: Option<usize>) -> Result<SearchReport> {
    let started = Instant::now();
    let spec = &p.spec;
    let n = p.group.order();
    let w = p.ring.width();
    let cols = n * w;
    let rows = n * w;
    let nfree = p.free.len();
    let base_rows = generator_rows(&p.base);
    let free_rows: Vec<Vec<u64>> = p.free.iter().map(generator_rows).collect();
    let base_coeffs: Vec<u16> = p.base.coeffs().iter().map(|c| c.bits()).collect();
    let free_coeffs: Vec<Vec<u16>> = p.free.iter().map(|f| f.coeffs().iter().map(|c| c.bits()).collect()).collect();
    let low = nfree.min(CHUNK_BITS);
    let chunks = 1u64 << (nfree - low);
    let keep = spec.report_witnesses;
    let nstages = spec.filters.len();

    let run_chunk = |c: u64| -> Result<Tally> {
        let mut tally = Tally::new(nstages);
        let mut state = base_rows.clone();
        let mut coeffs = base_coeffs.clone();
        let high_mask = c << low;
        for b in low..nfree {
            if high_mask >> b & 1 == 1 {
                xor_into(&mut state, &free_rows[b]);
                xor_coeffs(&mut coeffs, &free_coeffs[b]);
            }
        }
        for t in 0u64..(1u64 << low) {
            if t > 0 {
                let b = t.trailing_zeros() as usize;
                xor_into(&mut state, &free_rows[b]);
                xor_coeffs(&mut coeffs, &free_coeffs[b]);
            }
            let mask = high_mask | (t ^ (t >> 1));
            let code = LinearCode::from_gray_basis(p.ring, n, BitMatrix::from_raw(rows, cols, state.clone()))?;
            let v = evaluate(&code, &coeffs, &p.group, &spec.filters, spec.classify)?;
            for s in tally.stages.iter_mut().take(v.passed) {
                *s += 1;
            }
            if v.passed < nstages {
                continue;
            }
            if let Some(d) = v.distance {
                *tally.histogram.entry(d).or_default() += 1;
            }
            if let Some((class, d)) = v.class {
                let e = tally.classes.entry(class.name()).or_default();
                e.0 += 1;
                *e.1.entry(d).or_default() += 1;
            }
            if keep > 0 {
                tally.witnesses.push((mask, v.distance, v.class.map(|x| x.0)));
                if tally.witnesses.len() > 2 * keep {
                    tally.witnesses.sort_by_key(|w| w.0);
                    tally.witnesses.truncate(keep);
                }
            }
        }
        tally.witnesses.sort_by_key(|w| w.0);
        tally.witnesses.truncate(keep);
        Ok(tally)
    };

    let workers = workers.unwrap_or_else(default_workers).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Search(format!("cannot start worker pool: {e}")))?;
    let tallies: Vec<Tally> = pool.install(|| (0..chunks).into_par_iter().map(run_chunk).collect::<Result<Vec<_>>>())?;
    let tally = tallies.into_iter().fold(Tally::new(nstages), |a, b| a.merge(b, keep));

    let total = p.total_candidates();
    let stages = spec
        .filters
        .iter()
        .zip(&tally.stages)
        .map(|(f, &s)| StageCount { filter: f.to_string(), survivors: s })
        .collect();
    let final_count = if nstages == 0 { total } else { tally.stages[nstages - 1] };
    let classes = spec.classify.then(|| {
        let mut out = BTreeMap::new();
        for class in [Class::SelfDual, Class::FsdNotSd, Class::Neither] {
            let (count, distances) = tally.classes.get(class.name()).cloned().unwrap_or_default();
            out.insert(class.name().to_string(), ClassSummary { count, distances });
        }
        out
    });
    let witnesses = tally
        .witnesses
        .iter()
        .map(|&(mask, distance, class)| Witness {
            index: mask,
            element: p.candidate(mask).to_string(),
            distance,
            class: class.map(|c| c.name().to_string()),
        })
        .collect();
    let mut report = SearchReport {
        name: spec.name.clone(),
        ring: p.ring.to_string(),
        group: p.group.name().to_string(),
        free_bits: nfree,
        total_candidates: total,
        stages,
        final_count,
        distance_histogram: tally.histogram,
        classes,
        witnesses,
        checks: Vec::new(),
        workers,
        wall_time_ms: 0,
    };
    report.checks = spec
        .expected
        .iter()
        .map(|(key, &expected)| {
            let actual = report.value(key);
            Check { key: key.clone(), expected, actual: actual.unwrap_or(0), ok: actual == Some(expected) }
        })
        .collect();
    report.wall_time_ms = started.elapsed().as_millis();
    Ok(report)
}

fn xor_coeffs(dst: &mut [u16], src: &[u16]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub const BUILTIN_SEARCHES: [&str; 7] =
    ["golay_c3d8", "golay_c2a4", "golay_g24_8", "golay_sl23", "golay_c22d6", "census_c3d8", "census_c4d8"];

fn golay_filters() -> Vec<Filter> {
    vec![Filter::Rank(12), Filter::MinDistance { at_least: 8, metric: Metric::Hamming }]
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn builtin_search(name: &str) -> Result<SearchSpec> {
    let golay = |group: &str, free: Vec<String>, expected: u64| SearchSpec {
        name: name.to_string(),
        ring: "f2".into(),
        group: group.into(),
        table: None,
        base: "0".into(),
        free,
        filters: golay_filters(),
        classify: false,
        report_witnesses: 8,
        expected: BTreeMap::from([("final".to_string(), expected)]),
    };
    let census = |group: &str, s: usize, k: usize, expected: &[(&str, u64)]| SearchSpec {
        name: name.to_string(),
        ring: "f2".into(),
        group: group.into(),
        table: None,
        base: "1".into(),
        free: (0..s).flat_map(|i| (0..k).map(move |j| format!("a*b^{j}*h^{i}"))).collect(),
        filters: vec![Filter::Rank(s * k)],
        classify: true,
        report_witnesses: 8,
        expected: expected.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    };
    Ok(match name {
        // z generates C3; a is the rotation and b the reflection of D8.
        "golay_c3d8" => {
            let mut free = strings(&["1", "a+a^3", "a^2", "z+z^2", "a*z*(1+a^2*z)", "a^2*z*(1+z)", "a*z*(a^2+z)"]);
            free.extend((0..4).map(|i| format!("b*a^{i}")));
            free.extend((0..4).map(|i| format!("b*(z+z^2)*a^{i}")));
            golay("c3:z x d8@swap", free, 128)
        }
        // x generates C2. Coefficients are tied in inverse pairs, which is
        // the set containing the displayed witness.
        "golay_c2a4" => {
            let mut free = Vec::new();
            for x in ["1", "x"] {
                for t in ["1", "a", "b", "a*b", "c+c^2", "a*c+a*b*c^2", "b*c+a*c^2", "a*b*c+b*c^2"] {
                    free.push(format!("{x}*({t})"));
                }
            }
            golay("c2:x x a4", free, 384)
        }
        // Elements are indexed as in the group's displayed table: g1..g4 are
        // y^j, then x y^j, x^2 y^j, y^j z, x y^j z, x^2 y^j z.
        "golay_g24_8" => golay(
            "g24_8",
            strings(&[
                "g1",
                "g2",
                "g3",
                "g4+g14",
                "g5",
                "g6+g24",
                "g7+g17",
                "g8+g23",
                "g9",
                "g10",
                "g11+g12",
                "g13",
                "g15",
                "g16+g19",
                "g18",
                "g20",
                "g21+g22",
            ]),
            576,
        ),
        "golay_sl23" => golay(
            "sl23",
            strings(&[
                "1",
                "x+x^5",
                "x^2+x^4",
                "x^3",
                "y+x^3*y^2",
                "x*y+x^4*y",
                "x^2*y+y^2*x",
                "x^3*y+y^2",
                "x^5*y+x^3*y^2*x",
                "x*y^2+x^5*y^2*x",
                "x^2*y^2+x^5*y^2",
                "x^4*y^2+x^2*y^2*x",
                "x*y^2*x+x^4*y^2*x",
            ]),
            0,
        ),
        // z, w generate C2^2; a is the rotation and b the reflection of D6.
        "golay_c22d6" => {
            let mut free = strings(&["1", "z", "w", "z*w"]);
            free.extend(["1", "z", "w", "z*w"].iter().map(|t| format!("(a+a^2)*{t}")));
            for i in 0..3 {
                free.extend(["1", "z", "w", "z*w"].iter().map(|t| format!("b*a^{i}*{t}")));
            }
            golay("c2:z x c2:w x d6@swap", free, 0)
        }
        "census_c3d8" => census(
            "c3 x d8@csd",
            3,
            4,
            &[
                ("final", 256),
                ("class:self_dual", 64),
                ("class:fsd_not_sd", 192),
                ("class:fsd_not_sd:d=6", 80),
                ("class:fsd_not_sd:d=4", 112),
            ],
        ),
        "census_c4d8" => census(
            "c4 x d8@csd",
            4,
            4,
            &[
                ("final", 2048),
                ("class:self_dual", 512),
                ("class:fsd_not_sd", 1536),
                ("class:fsd_not_sd:d=4", 896),
                ("class:fsd_not_sd:d=6", 192),
                ("class:fsd_not_sd:d=8", 448),
            ],
        ),
        _ => {
            return Err(Error::Search(format!(
                "unknown search '{name}' (known: {})",
                BUILTIN_SEARCHES.join(", ")
            )))
        }
    })
}

pub const DISPLAYED_MATRICES: [&str; 3] = ["c3d8", "c2a4", "g24_8"];

/// The binary code generated by `(I_12 | A)` for one of the stored matrices.
pub fn displayed_matrix_code(name: &str) -> Result<LinearCode> {
    let a = match name {
        "c3d8" => &fixtures::C3D8_GOLAY_A,
        "c2a4" => &fixtures::C2A4_GOLAY_A,
        "g24_8" => &fixtures::G24_8_GOLAY_A,
        _ => {
            return Err(Error::Search(format!(
                "unknown displayed matrix '{name}' (known: {})",
                DISPLAYED_MATRICES.join(", ")
            )))
        }
    };
    let m = BitMatrix::identity(12).hstack(&BitMatrix::from_strings(a));
    Ok(LinearCode::from_binary(&m))
}

pub fn verify_displayed_matrix(name: &str) -> Result<CodeReport> {
    Ok(CodeReport::new(&displayed_matrix_code(name)?, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sizes() {
        let sizes = [
            ("golay_c3d8", 15),
            ("golay_c2a4", 16),
            ("golay_g24_8", 17),
            ("golay_sl23", 13),
            ("golay_c22d6", 20),
            ("census_c3d8", 12),
            ("census_c4d8", 16),
        ];
        for (name, bits) in sizes {
            let p = prepare(&builtin_search(name).unwrap()).unwrap();
            assert_eq!(p.free_bits(), bits, "{name}");
        }
        assert!(builtin_search("golay_s4").is_err());
    }

    #[test]
    fn golay_sets_are_symmetric() {
        for name in ["golay_c3d8", "golay_c2a4", "golay_g24_8", "golay_sl23", "golay_c22d6"] {
            let p = prepare(&builtin_search(name).unwrap()).unwrap();
            for f in &p.free {
                assert!(f.is_self_adjoint(), "{name}: {f}");
            }
        }
    }

    #[test]
    fn empty_pattern_has_one_candidate() {
        let spec = SearchSpec {
            name: "empty".into(),
            ring: "f2".into(),
            group: "d8".into(),
            table: None,
            base: "0".into(),
            free: vec![],
            filters: vec![Filter::Rank(4)],
            classify: false,
            report_witnesses: 4,
            expected: BTreeMap::new(),
        };
        let r = run_search(&spec, Some(1)).unwrap();
        assert_eq!(r.total_candidates, 1);
        assert_eq!(r.final_count, 0);
    }

    #[test]
    fn dependent_bits_rejected() {
        let mut spec = builtin_search("census_c3d8").unwrap();
        spec.free.push("a+a*h".into());
        spec.free.push("a*h".into());
        spec.free.push("a".into());
        assert!(prepare(&spec).is_err());
    }

    #[test]
    fn displayed_matrices_are_golay() {
        for name in DISPLAYED_MATRICES {
            let c = displayed_matrix_code(name).unwrap();
            assert_eq!(c.rank(), 12);
            assert_eq!(c.min_distance(Metric::Hamming).unwrap(), Distance::Exact(8), "{name}");
            assert!(c.is_self_dual() && c.is_type_ii(), "{name}");
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = builtin_search("golay_c3d8").unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: SearchSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
    }
}
