use halfspace_lab::suites::{self, SuiteConfig};

fn run(name: &str, trials: usize, seed: u64) {
    let cfg = SuiteConfig { seed, trials, u: None };
    let report = suites::run_suite(name, &cfg).unwrap();
    assert!(report.passed(), "{}", serde_json::to_string_pretty(&report).unwrap());
    assert!(report.checks > 0);
}

#[test]
fn thm1_2_small() {
    run("thm1_2", 12, 1);
}

#[test]
fn thm1_3_small() {
    run("thm1_3", 12, 2);
}

#[test]
fn thm1_4_small() {
    run("thm1_4", 12, 3);
}

#[test]
fn thm3_6_small() {
    run("thm3_6", 12, 4);
}

#[test]
fn thm4_8_small() {
    run("thm4_8", 12, 5);
}

#[test]
fn thm6_2_small() {
    run("thm6_2", 5, 6);
}

#[test]
fn axioms_small() {
    run("axioms", 8, 7);
}

#[test]
fn reports_are_reproducible_and_round_trip() {
    let cfg = SuiteConfig { seed: 42, trials: 6, u: None };
    let first = suites::thm1_4(&cfg).unwrap();
    let second = suites::thm1_4(&cfg).unwrap();
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    let back: suites::SuiteReport = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
    assert_eq!(back, first);
}
