use std::collections::BTreeMap;

use grcodes::codes::shift_equivalence_witness;
use grcodes::search::{builtin_search, check_element, prepare, run_search, Filter, SearchSpec};
use grcodes::{parse_element, GroupRingElement, LinearCode, Metric};

fn small_spec() -> SearchSpec {
    SearchSpec {
        name: "d8_small".into(),
        ring: "f2".into(),
        group: "d8@swap".into(),
        table: None,
        base: "1".into(),
        free: ["b", "b*a", "b*a^2", "b*a^3", "a+a^3", "a^2"].iter().map(|s| s.to_string()).collect(),
        filters: vec![
            Filter::Rank(4),
            Filter::MinDistance { at_least: 4, metric: Metric::Hamming },
            Filter::SelfDual,
        ],
        classify: false,
        report_witnesses: 100,
        expected: BTreeMap::new(),
    }
}

#[test]
fn small_search_matches_brute_force() {
    let spec = small_spec();
    let report = run_search(&spec, Some(2)).unwrap();
    let p = prepare(&spec).unwrap();
    let mut stages = [0u64; 3];
    for m in 0..p.total_candidates() {
        let c = LinearCode::from_element(&p.candidate(m));
        if c.rank() != 4 {
            continue;
        }
        stages[0] += 1;
        let d = c.weight_enumerator(Metric::Hamming).unwrap().counts.keys().copied().find(|&w| w > 0);
        if d.unwrap_or(0) < 4 {
            continue;
        }
        stages[1] += 1;
        if c.is_self_dual() {
            stages[2] += 1;
        }
    }
    let got: Vec<u64> = report.stages.iter().map(|s| s.survivors).collect();
    assert_eq!(got, stages.to_vec());
    assert_eq!(report.total_candidates, 64);
    assert!(report.final_count > 0);
}

#[test]
fn stage_counts_never_increase() {
    for name in ["golay_c3d8", "census_c3d8", "golay_sl23"] {
        let r = run_search(&builtin_search(name).unwrap(), Some(2)).unwrap();
        let mut prev = r.total_candidates;
        for s in &r.stages {
            assert!(s.survivors <= prev, "{name}: {}", s.filter);
            prev = s.survivors;
        }
    }
}

#[test]
fn worker_count_does_not_change_results() {
    for name in ["golay_c3d8", "census_c3d8"] {
        let spec = builtin_search(name).unwrap();
        let one = run_search(&spec, Some(1)).unwrap();
        let four = run_search(&spec, Some(4)).unwrap();
        assert!(one.same_results(&four), "{name}");
        assert_eq!(one.workers, 1);
        assert_eq!(four.workers, 4);
    }
}

#[test]
fn witnesses_pass_filters_standalone() {
    let spec = builtin_search("golay_c3d8").unwrap();
    let p = prepare(&spec).unwrap();
    let r = run_search(&spec, None).unwrap();
    assert!(!r.witnesses.is_empty());
    for w in &r.witnesses {
        let v = parse_element(&w.element, p.ring, &p.group).unwrap();
        assert_eq!(v, p.candidate(w.index));
        assert!(check_element(&v, &spec.filters).unwrap(), "{}", w.element);
    }
}

#[test]
fn golay_shifts_are_equivalent() {
    let spec = builtin_search("golay_c3d8").unwrap();
    let p = prepare(&spec).unwrap();
    let r = run_search(&spec, None).unwrap();
    let v = p.candidate(r.witnesses[0].index);
    let c = LinearCode::from_element(&v);
    let we = c.weight_enumerator(Metric::Hamming).unwrap();
    for h in 0..p.group.order() {
        let vh = v.gr_mul(&GroupRingElement::monomial(p.ring, p.group.clone(), h, p.ring.one())).unwrap();
        let ch = LinearCode::from_element(&vh);
        assert_eq!(c.permute(&shift_equivalence_witness(&v, h)).unwrap(), ch);
        assert_eq!(ch.weight_enumerator(Metric::Hamming).unwrap(), we);
    }
}

#[test]
fn named_counts() {
    for name in ["golay_c3d8", "golay_c2a4", "golay_sl23", "census_c3d8"] {
        let r = run_search(&builtin_search(name).unwrap(), None).unwrap();
        assert!(r.all_checks_pass(), "{r}");
    }
}

#[test]
fn oversized_pattern_is_rejected() {
    let mut spec = builtin_search("golay_c22d6").unwrap();
    spec.free.extend(["z*b", "w*b", "z*w*b", "z*a", "w*a"].iter().map(|s| s.to_string()));
    assert!(run_search(&spec, None).is_err());
}

#[test]
fn report_serializes() {
    let r = run_search(&small_spec(), None).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["total_candidates"], 64);
    assert!(v["stages"].is_array());
}
