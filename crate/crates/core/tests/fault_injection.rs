use simpson_betti::catalog::Catalog;
use simpson_betti::identities::Suite;

fn failing_checks(fixture: &str) -> Vec<String> {
    let catalog = Catalog::parse(fixture).unwrap();
    Suite::new(&catalog)
        .run_all()
        .into_iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect()
}

fn corrupt(line_prefix: &str, from: &str, to: &str) -> String {
    let text = Catalog::builtin_fixture_text();
    let line = text.lines().find(|l| l.starts_with(line_prefix)).unwrap();
    assert!(line.contains(from));
    text.replace(line, &line.replacen(from, to, 1))
}

#[test]
fn untouched_fixture_passes_everything() {
    assert!(failing_checks(Catalog::builtin_fixture_text()).is_empty());
}

#[test]
fn corrupted_quotient_is_caught_by_its_own_check() {
    let failed = failing_checks(&corrupt("V 5 ", "19*t^14", "18*t^14"));
    assert_eq!(failed, ["quotient_d5"]);
}

#[test]
fn corrupted_auxiliary_fails_only_its_identity() {
    let failed = failing_checks(&corrupt("A f_obs6 ", "33*t^14", "34*t^14"));
    assert_eq!(failed, ["pv6_kron"]);
    let failed = failing_checks(&corrupt("A rem5 ", "7*t^6", "8*t^6"));
    assert_eq!(failed, ["eq2"]);
}

#[test]
fn reports_are_deterministic() {
    let suite = Suite::new(Catalog::builtin());
    let a: Vec<String> = suite.run_all().iter().map(|r| r.report()).collect();
    let b: Vec<String> = Suite::new(Catalog::builtin())
        .run_all()
        .iter()
        .map(|r| r.report())
        .collect();
    assert_eq!(a, b);
    assert_eq!(
        a,
        suite
            .run_all()
            .iter()
            .map(|r| r.report())
            .collect::<Vec<_>>()
    );
}
