use ambiskew::gallery::{self, run_all, run_case};
use ambiskew::session::ExecOptions;

#[test]
fn every_case_passes() {
    let s = run_all(&gallery::registry(), &ExecOptions::default());
    let lines = s.lines();
    assert!(s.passed(), "{}", lines.join("\n"));
    assert_eq!(s.skipped(), 0);
    assert_eq!(lines.last().unwrap(), &format!("{} cases, 0 failed, 0 skipped", s.runs.len()));
}

#[test]
fn quantum_torus_at_q_one_is_skipped() {
    let cases = gallery::registry();
    let opts = ExecOptions { specialize: vec![("q".into(), "1".into())], ..Default::default() };
    for name in ["qtorus-case1", "qtorus-case2"] {
        let r = run_case(gallery::find(&cases, name).unwrap(), &opts).unwrap();
        assert!(r.skipped.as_deref().unwrap_or("").contains("q - 1"), "{name}: {:?}", r.skipped);
    }
}

#[test]
fn seeds_change_samples_not_outcomes() {
    let cases = gallery::registry();
    let case = gallery::find(&cases, "kT-usl2").unwrap();
    for seed in [1, 7] {
        let r = run_case(case, &ExecOptions { seed, triples: 50, ..Default::default() }).unwrap();
        assert!(r.passed(), "seed {seed}");
    }
}
