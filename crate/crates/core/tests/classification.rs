use mfkit_core::catalog::{enumerate_m3, enumerate_n3, enumerate_two_gen};
use mfkit_core::equiv::{classify, twist_edges, ClassifyConfig};

fn exhaustive() -> ClassifyConfig {
    ClassifyConfig { fast_rules: false, ..Default::default() }
}

#[test]
fn two_generated_classes() {
    let report = classify(&enumerate_two_gen(), &exhaustive()).unwrap();
    assert_eq!(report.len(), 54);
    assert_eq!(report.decisions, 54 * 53 / 2);
    assert!(report.classes.iter().all(|c| c.members.len() == 1));
}

#[test]
fn n3_classes() {
    let report = classify(&enumerate_n3(), &exhaustive()).unwrap();
    assert_eq!(report.len(), 18);
    let fast = classify(&enumerate_n3(), &ClassifyConfig::default()).unwrap();
    assert_eq!(fast.len(), 18);
    assert!(fast.audits_passed());
}

#[test]
fn m3_fast_rules() {
    let entries = enumerate_m3();
    assert_eq!(twist_edges(&entries).len(), 54);
    let config = ClassifyConfig { audit_sample: 8, seed: 7, jobs: Some(2), ..Default::default() };
    let report = classify(&entries, &config).unwrap();
    assert_eq!(report.len(), 54);
    assert_eq!(report.audits.len(), 2);
    assert!(report.audits_passed(), "{:?}", report.audits);
    assert!(report.classes.iter().all(|c| c.members.len() == 2));
    let ids: Vec<usize> = report.classes.iter().map(|c| c.id).collect();
    assert_eq!(ids, (0..54).collect::<Vec<_>>());
}

#[test]
fn report_is_deterministic_across_job_counts() {
    let entries = enumerate_n3();
    let one = classify(&entries, &ClassifyConfig { jobs: Some(1), ..exhaustive() }).unwrap();
    let four = classify(&entries, &ClassifyConfig { jobs: Some(4), ..exhaustive() }).unwrap();
    assert_eq!(one.classes, four.classes);
    assert_eq!(one.classes_json(), four.classes_json());
}
