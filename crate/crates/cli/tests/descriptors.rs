use hopf_cli::descriptor::catalog;
use hopf_cli::scenario::{parse_scenario, run_scenario, BUNDLED};
use hopf_cli::CliError;
use hopf_core::group::GroupSignature;

fn q8() -> hopf_cli::descriptor::NamedGroup {
    catalog("Q8", "test").unwrap().expect("Q8 is in the catalog")
}

#[test]
fn word_syntax_variants_agree() {
    let q = q8();
    let g = &q.group;
    let i = g.generators()[0].clone();
    let j = g.generators()[1].clone();
    let ij = g.mul(&i, &j);
    for text in ["i j", "ij", "i*j", "i.j", "  i  j "] {
        assert_eq!(q.word(text, "t").unwrap(), ij, "{text}");
    }
    assert_eq!(q.word("i'", "t").unwrap(), g.inv(&i));
    assert_eq!(q.word("i^-1", "t").unwrap(), g.inv(&i));
    assert_eq!(q.word("i^3", "t").unwrap(), g.inv(&i));
    assert_eq!(q.word("i^4", "t").unwrap(), g.identity());
    assert_eq!(q.word("1", "t").unwrap(), g.identity());
    assert_eq!(q.word("", "t").unwrap(), g.identity());
    // i^2 = j^2 in the quaternions.
    assert_eq!(q.word("i^2", "t").unwrap(), q.word("jj", "t").unwrap());
}

#[test]
fn longest_generator_name_wins() {
    let fnil = catalog("FN(12,1,2)", "t").unwrap().unwrap();
    let g = &fnil.group;
    assert_eq!(fnil.word("x12", "t").unwrap(), g.generators()[11]);
    assert_eq!(fnil.word("x1 x2", "t").unwrap(), g.mul(&g.generators()[0], &g.generators()[1]));
}

#[test]
fn bad_words_report_an_offset() {
    let q = q8();
    let err = q.word("i k", "here").unwrap_err();
    match &err {
        CliError::Parse { location, .. } => assert!(location.contains("offset 2"), "{location}"),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(err.exit_code(), 2);
    assert!(q.word("i^x", "here").is_err());
}

#[test]
fn catalog_orders() {
    let cases = [
        ("1", 1),
        ("trivial", 1),
        ("Z6", 6),
        ("C5", 5),
        ("Z2xZ2xZ3", 12),
        ("V4", 4),
        ("Q8", 8),
        ("S4", 24),
        ("D5", 10),
        ("FN(2,2,3)", 27),
    ];
    for (name, order) in cases {
        let g = catalog(name, "t").unwrap().unwrap_or_else(|| panic!("{name} missing"));
        assert_eq!(g.group.order().unwrap(), order, "{name}");
    }
    assert!(catalog("nonsense", "t").unwrap().is_none());
    assert!(catalog("FN(2,3)", "t").is_err());
}

#[test]
fn catalog_abelian_invariants() {
    let v4 = catalog("Z2xZ2", "t").unwrap().unwrap();
    let sig = GroupSignature::of(&v4.group).unwrap();
    assert_eq!(sig.invariants.unwrap().factors(), &[2, 2]);
    let z6 = catalog("Z2xZ3", "t").unwrap().unwrap();
    assert_eq!(GroupSignature::of(&z6.group).unwrap().invariants.unwrap().factors(), &[6]);
}

#[test]
fn bundled_scenarios_pass() {
    for (name, text) in BUNDLED {
        let scenario = parse_scenario(text, name).unwrap();
        let report = run_scenario(&scenario, false).unwrap();
        assert!(report.sections.iter().all(|s| s.passed()), "{name}:\n{}", report.to_text());
    }
}

#[test]
fn empty_scenario_gives_empty_report() {
    let scenario = parse_scenario(r#"{"schema": 1, "name": "empty", "tasks": []}"#, "inline").unwrap();
    let report = run_scenario(&scenario, false).unwrap();
    assert!(report.sections.is_empty());
    assert_eq!(report.status.exit_code(), 0);
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let text = "{\n  \"schema\": 1,\n  \"name\": oops\n}";
    match parse_scenario(text, "bad.json").unwrap_err() {
        CliError::Parse { location, .. } => assert!(location.starts_with("bad.json:3:"), "{location}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_schema_is_rejected() {
    let err = parse_scenario(r#"{"schema": 7, "name": "x"}"#, "s").unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn inline_constructions() {
    let text = r#"{
      "schema": 1,
      "name": "constructions",
      "constructions": [
        {"name": "A", "kind": "cyclic", "n": 4},
        {"name": "B", "kind": "direct", "factors": ["A", "Z2"]},
        {"name": "S", "kind": "permutation", "degree": 3, "generators": [[2, 3, 1], [2, 1, 3]]},
        {"name": "N", "kind": "normal_closure", "of": "S", "words": ["x1"]}
      ],
      "tasks": [
        {"task": "signature", "group": "B", "expect": {"order": 8, "invariants": [2, 4]}},
        {"task": "signature", "group": "S", "expect": {"order": 6}},
        {"task": "hopf_h2", "group": "S", "normal": "N", "expect": {"order": 1}},
        {"task": "bar_h1", "group": "S", "expect": {"invariants": [2]}}
      ]
    }"#;
    let scenario = parse_scenario(text, "inline").unwrap();
    let report = run_scenario(&scenario, false).unwrap();
    assert_eq!(report.sections.len(), 4);
    assert!(report.sections.iter().all(|s| s.passed()), "{}", report.to_text());
}

#[test]
fn wrong_expectation_fails_the_section() {
    let text = r#"{"schema": 1, "name": "wrong",
      "tasks": [{"task": "bar_h2", "group": "V4", "expect": {"invariants": [4]}}]}"#;
    let report = run_scenario(&parse_scenario(text, "inline").unwrap(), false).unwrap();
    assert!(!report.sections[0].passed());
    assert_eq!(report.status.exit_code(), 1);
}
