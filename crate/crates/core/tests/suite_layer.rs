use std::collections::{BTreeMap, HashSet};
use std::time::Duration;

use gpin_core::io::{parse_element, parse_space, space_to_json};
use gpin_core::quadspace::QuadSpace;
use gpin_core::scalars::Field;
use gpin_core::suite::{
    emit_report, parse_report, run_suite, spaces_for, suite, ConfigEcho, Failure, Format, Status, SuiteConfig,
    SuiteReport, RESULTS, SUITES,
};
use gpin_core::{Error, NonMemberReason};

fn config(field: Field, dim: usize) -> SuiteConfig {
    SuiteConfig { field: Some(field), dim: Some(dim), ..SuiteConfig::default() }
}

#[test]
fn registry_lists_the_twelve_suites() {
    let ids: Vec<&str> = SUITES.iter().map(|s| s.id).collect();
    assert_eq!(
        ids,
        [
            "clifford-axioms",
            "zeta",
            "centers",
            "inclusions",
            "commuting",
            "semidirect",
            "pin-spin",
            "mvw",
            "centralizer-orders",
            "conjugacy",
            "gspin-conjugacy",
            "tilde-actions"
        ]
    );
}

#[test]
fn every_result_is_covered_by_exactly_one_suite() {
    let mut owners: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for s in SUITES {
        let covers = s.covers();
        assert!(!covers.is_empty(), "suite {} covers nothing", s.id);
        for id in covers {
            owners.entry(id).or_default().push(s.id);
        }
    }
    let registered: HashSet<&str> = RESULTS.iter().copied().collect();
    assert_eq!(registered.len(), RESULTS.len(), "duplicate result identifiers");
    for id in RESULTS {
        assert_eq!(owners.get(id).map(Vec::len), Some(1), "{id} covered by {:?}", owners.get(id));
    }
    for id in owners.keys() {
        assert!(registered.contains(id), "suite documentation names unknown result {id}");
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert_eq!(run_suite("nope", &SuiteConfig::default()).unwrap_err(), Error::UnknownSuite("nope".into()));
    assert!(suite("zeta").is_ok());
}

#[test]
fn dimension_zero_is_rejected() {
    let err = run_suite("zeta", &config(Field::Prime(3), 0)).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }));
}

#[test]
fn zeta_on_three_dimensional_f3_spaces() {
    let report = run_suite("zeta", &config(Field::Prime(3), 3)).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert_eq!(report.checks.len(), 4);
    assert!(report.checks.iter().all(|c| c.failures == 0 && c.cases > 0));
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn clifford_axioms_on_rational_four_space_with_seed_7() {
    let cfg = SuiteConfig { seed: 7, ..config(Field::Rational, 4) };
    let report = run_suite("clifford-axioms", &cfg).unwrap();
    assert_eq!(report.status, Status::Pass, "{}", emit_report(&report, Format::Text));
    assert_eq!(report.check("associativity").unwrap().cases, 2 * 200);
}

#[test]
fn mvw_on_a_plane_has_one_case_per_isometry() {
    // <1, 1> over F_3 is anisotropic: O_2 is dihedral of order 8.
    let space = std::sync::Arc::new(QuadSpace::diagonal(Field::Prime(3), &[1, 1]).unwrap());
    let cfg = SuiteConfig { space: Some(space), ..SuiteConfig::default() };
    let report = run_suite("mvw", &cfg).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert_eq!(report.cases_run, 8);
    let all = run_suite("mvw", &config(Field::Prime(3), 2)).unwrap();
    assert_eq!(all.status, Status::Pass);
}

#[test]
fn reports_are_deterministic() {
    for id in ["clifford-axioms", "tilde-actions", "conjugacy"] {
        let cfg = SuiteConfig { seed: 11, ..config(Field::Prime(3), 3) };
        let a = emit_report(&run_suite(id, &cfg).unwrap(), Format::Json);
        let b = emit_report(&run_suite(id, &cfg).unwrap(), Format::Json);
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn seed_changes_sampled_suites() {
    let a = run_suite("clifford-axioms", &SuiteConfig { seed: 1, ..config(Field::Rational, 2) }).unwrap();
    let b = run_suite("clifford-axioms", &SuiteConfig { seed: 2, ..config(Field::Rational, 2) }).unwrap();
    assert_eq!(a.config.seed, 1);
    assert_ne!(emit_report(&a, Format::Json), emit_report(&b, Format::Json));
}

fn sample_report() -> SuiteReport {
    SuiteReport {
        suite_id: "zeta".into(),
        status: Status::Fail,
        config: ConfigEcho { spaces: vec!["<1, 2> over Fp:3".into()], seed: 3, slow: false },
        cases_run: 2,
        checks: Vec::new(),
        failures: vec![Failure {
            case: "zeta on <1, 2>".into(),
            check: "P(zeta) = -1".into(),
            expected: "-1".into(),
            got: "1/2".into(),
        }],
        findings: Vec::new(),
        wall_time: Duration::from_millis(5),
    }
}

#[test]
fn json_report_round_trips() {
    let r = sample_report();
    let text = emit_report(&r, Format::Json);
    assert_eq!(parse_report(&text).unwrap(), r);
    assert!(text.contains("\"expected\": \"-1\"") && text.contains("\"got\": \"1/2\""));
    assert!(!text.contains("wall_time"));
}

#[test]
fn empty_report_fields() {
    let r = SuiteReport { status: Status::Pass, failures: Vec::new(), cases_run: 0, ..sample_report() };
    let v: serde_json::Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(v["suite_id"], "zeta");
    assert_eq!(v["cases_run"], 0);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert!(r.passed());
}

#[test]
fn text_report_has_one_line_per_check() {
    let report = run_suite("zeta", &config(Field::Prime(5), 2)).unwrap();
    let text = emit_report(&report, Format::Text);
    assert_eq!(text.lines().count(), 1 + report.checks.len());
    assert!(text.starts_with("suite zeta: pass"));
    assert_eq!("text".parse::<Format>().unwrap(), Format::Text);
    assert!("xml".parse::<Format>().is_err());
}

#[test]
fn status_and_exit_codes() {
    let fail = sample_report();
    assert_eq!(fail.exit_code(), 1);
    let mut findings = SuiteReport { status: Status::Findings, failures: Vec::new(), ..sample_report() };
    findings.findings.push(gpin_core::suite::Finding {
        case: "c".into(),
        kind: "repair-failed".into(),
        detail: "d".into(),
    });
    assert_eq!(findings.exit_code(), 2);
    assert!(!findings.passed());
}

#[test]
fn default_spaces_follow_the_registry() {
    let spec = suite("mvw").unwrap();
    let spaces = spaces_for(spec, &config(Field::Prime(3), 2)).unwrap();
    // Every diagonal form with entries 1 or 2.
    assert_eq!(spaces.len(), 4);
    let rep = spaces_for(suite("zeta").unwrap(), &config(Field::Rational, 3)).unwrap();
    assert_eq!(rep.len(), 2);
    assert_ne!(rep[0].discriminant(), rep[1].discriminant());
}

#[test]
fn parse_space_examples() {
    let q = parse_space(r#"{"field":"Q","gram":[[1,0],[0,1]]}"#).unwrap();
    assert_eq!((q.field(), q.dim()), (Field::Rational, 2));
    let h = parse_space(r#"{"field":"Fp:3","gram":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(h.dim(), 2);
    // Signed discriminant -det of the hyperbolic plane is a square.
    assert!(h.discriminant().is_one());
    assert_eq!(parse_space(r#"{"field":"Fp:2","gram":[[1]]}"#).unwrap_err(), Error::CharacteristicTwo);
    assert!(matches!(parse_space(r#"{"field":"Q"}"#).unwrap_err(), Error::Parse(_)));
    assert_eq!(parse_space(r#"{"field":"Q","gram":[[1,0],[0,0]]}"#).unwrap_err(), Error::DegenerateForm);
    let round = parse_space(&space_to_json(&h).to_string()).unwrap();
    assert_eq!(round.gram(), h.gram());
}

#[test]
fn parse_element_forms() {
    let s = parse_space(r#"{"field":"Q","gram":[[1,0],[0,2]]}"#).unwrap();
    let g = parse_element(&s, r#"{"vectors":[[1,0],[0,1]],"scale":"1/2"}"#).unwrap();
    assert!(g.is_even());
    assert_eq!(g.norm(), &Field::Rational.parse("1/2").unwrap());
    let blades = parse_element(&s, r#"{"terms":{"3":"1/2"}}"#).unwrap();
    assert_eq!(blades, g);
    let mixed = parse_element(&s, r#"{"0":"1","1":"1"}"#).unwrap_err();
    assert_eq!(mixed, Error::NotMember(NonMemberReason::MixedParity));
}
