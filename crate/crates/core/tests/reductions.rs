use mfkit_core::catalog::{raw_case, raw_params, RawCase};
use mfkit_core::equiv::{decide_equiv, reduction_maps};

#[test]
fn every_reduction_map_lands_in_the_same_class() {
    for map in reduction_maps() {
        let sources = map.sources();
        assert!(!sources.is_empty(), "{}", map.name);
        for s in &sources {
            let image = map.image(s).unwrap();
            let verdict = decide_equiv(&raw_case(s), &image).unwrap();
            assert!(verdict.is_equivalent(), "{} fails on {s:?}", map.name);
        }
    }
}

#[test]
fn map_domains() {
    let count = |name: &str| reduction_maps().into_iter().find(|m| m.name == name).unwrap().sources().len();
    assert_eq!(count("B->At"), 54);
    assert_eq!(count("C->At"), 54);
    assert_eq!(count("D-cycle"), 36);
    for name in ["E->D", "E->theta", "F->D", "F->theta"] {
        assert_eq!(count(name), 6, "{name}");
    }
}

#[test]
fn e_and_f_branches_partition_the_normalized_tuples() {
    let maps = reduction_maps();
    for case in [RawCase::E, RawCase::F] {
        let normalized: Vec<_> = raw_params()
            .into_iter()
            .filter(|p| p.case == case && p.a == mfkit_core::CycNum::from(-1))
            .collect();
        assert_eq!(normalized.len(), 12);
        for p in &normalized {
            let hits = maps.iter().filter(|m| m.applies(p)).count();
            assert_eq!(hits, 1, "{p:?}");
        }
    }
}

#[test]
fn maps_reject_foreign_tuples() {
    let maps = reduction_maps();
    let b_map = maps.iter().find(|m| m.name == "B->At").unwrap();
    let d = raw_params().into_iter().find(|p| p.case == RawCase::D).unwrap();
    assert!(b_map.image(&d).is_err());
}
