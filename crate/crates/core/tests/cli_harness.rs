use std::path::PathBuf;

use centralizer::cli::config::{parse_config_file, resolve_spec};
use centralizer::cli::{
    default_config, emit_report, parse_expr, parse_expr_for, report_json, run, run_suite, CMode, ConfigError, Expr,
    OutputFormat, ParseErrorKind, Suite, EXIT_FAIL, EXIT_PASS, EXIT_USAGE,
};
use centralizer::coeff::rat;
use centralizer::lie::AlgebraSpec;
use proptest::prelude::*;
use serde_json::Value;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["centralizer"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

#[test]
fn parser_examples() {
    let cases = [
        ("E[1,2]", "E[1,2]"),
        ("E[1,2]*E[2,1] - E[2,1]*E[1,2]", "E[1,2]*E[2,1] - E[2,1]*E[1,2]"),
        ("(E[1,1] - c)^2", "(E[1,1] - c)^2"),
        ("-E[1,1]^2", "-E[1,1]^2"),
        ("1/2*F[-1,1]", "1/2*F[-1,1]"),
        ("a - (b_ - c)", ""),
        ("2 * (c + 1)", "2*(c + 1)"),
        ("E[1,2]\n  + E[2,1]", "E[1,2] + E[2,1]"),
        ("F[1,-1]^2 - 4*c", "F[1,-1]^2 - 4*c"),
    ];
    for (src, printed) in cases {
        match parse_expr(src) {
            Ok(e) => assert_eq!(e.to_string(), printed, "{src}"),
            Err(e) => assert!(printed.is_empty(), "{src}: {e}"),
        }
    }
}

#[test]
fn parse_error_positions() {
    assert!(matches!(parse_expr("E[1,2]*E[2,1]").unwrap(), Expr::Mul(..)));
    assert!(matches!(parse_expr("F[1,-1]^2 - 4*c").unwrap(), Expr::Sub(ref a, _) if matches!(**a, Expr::Pow(_, 2))));
    let e = parse_expr("E[1,2]*").unwrap_err();
    assert_eq!((e.line, e.column), (1, 8));
    assert!(e.to_string().starts_with("line 1, column 8:"));

    let e = parse_expr("E[1,2]\n  + ?").unwrap_err();
    assert_eq!((e.line, e.column), (2, 5));

    let e = parse_expr("E[1,2] E[2,1]").unwrap_err();
    assert_eq!(e.column, 8);

    let e = parse_expr("q").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::UnknownSymbol(_)));

    let e = parse_expr_for("E[1,3]", AlgebraSpec::gl(2)).unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange(1, 3, _)));
    assert_eq!(e.column, 1);

    let e = parse_expr_for("E[1,1]", AlgebraSpec::sp(2)).unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::UnknownSymbol(_)));
    assert!(parse_expr_for("F[-1,1] + F[1,1]", AlgebraSpec::sp(2)).is_ok());
    assert!(parse_expr_for("F[0,1]", AlgebraSpec::o(3)).is_ok());
    assert!(parse_expr_for("F[0,1]", AlgebraSpec::o(4)).is_err());
}

#[test]
fn deep_nesting_is_rejected_not_overflowing() {
    let src = format!("{}E[1,1]{}", "(".repeat(5000), ")".repeat(5000));
    assert!(parse_expr(&src).is_err());
    assert!(parse_expr("E[1,1]^100000").is_err());
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| Expr::Num(rat(n, 1))),
        (1i64..9, 2i64..9).prop_map(|(p, q)| Expr::Num(rat(p, q))),
        Just(Expr::C),
        (1i32..4, 1i32..4).prop_map(|(i, j)| Expr::Gen { letter: 'E', i, j }),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_print_is_fixed(e in expr_strategy()) {
        let printed = e.to_string();
        let reparsed = parse_expr(&printed);
        prop_assert!(reparsed.is_ok(), "{}", printed);
        prop_assert_eq!(reparsed.unwrap().to_string(), printed);
    }

    #[test]
    fn parser_is_total(s in "[ E\\[\\],0-9c+*^()/\\-\n]{0,40}") {
        match parse_expr(&s) {
            Ok(e) => {
                let again = parse_expr(&e.to_string());
                prop_assert!(again.is_ok());
            }
            Err(err) => {
                prop_assert!(err.line >= 1 && err.column >= 1);
            }
        }
    }
}

#[test]
fn empty_report_serializes_to_empty_checks() {
    let v = report_json(None, &[]);
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"checks":[]}"#);
    let text = String::from_utf8(emit_report(None, &[], OutputFormat::Text)).unwrap();
    assert_eq!(text, "0 checks, 0 failed\n");
}

#[test]
fn reports_do_not_depend_on_the_pool_size() {
    let mut config = default_config(AlgebraSpec::gl(2), Suite::Reference);
    config.jobs = 1;
    let one = run_suite(&config).unwrap();
    config.jobs = 4;
    let four = run_suite(&config).unwrap();
    assert_eq!(one, four);
    let a = emit_report(None, &one, OutputFormat::Json);
    let b = emit_report(None, &four, OutputFormat::Json);
    assert_eq!(a, b);
}

#[test]
fn reference_suite_matches_golden() {
    let (code, out, err) = run_cli(&["check-relations", "--spec", "gl:2", "--suite", "reference", "--jobs", "3"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let expected = std::fs::read_to_string(golden_path("reference.json")).unwrap();
    assert_eq!(out, expected);
    let v: Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let relations: std::collections::BTreeSet<&str> =
        checks.iter().map(|c| c["instance"]["relation"].as_str().unwrap()).collect();
    for r in ["ternary", "reflection", "symmetry", "commutator", "centralizer", "coherence", "qdet"] {
        assert!(relations.iter().any(|x| x.starts_with(r)), "{r} missing from {relations:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run_cli(&["check-relations", "--spec", "gl:2", "--order", "2"]).0, EXIT_PASS);
    assert_eq!(run_cli(&["check-relations", "--spec", "sp:2", "--order", "2", "--perturb"]).0, EXIT_FAIL);
    assert_eq!(run_cli(&["check-relations", "--spec", "gl:2", "--m", "2"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["check-relations", "--spec", "gl:2", "--order", "1"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["check-relations", "--spec", "gl:9"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["check-relations", "--spec", "xx:2"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["check-relations", "--spec", "gl:2", "--suite", "twisted"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["--help"]).0, EXIT_PASS);
    assert_eq!(run_cli(&["--version"]).0, EXIT_PASS);
    let (code, _, err) = run_cli(&["normal-form", "--spec", "gl:2", "--expr", "E[1,2]*"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 8"), "{err}");
}

#[test]
fn perturbed_runs_fail_with_witness() {
    for args in [
        vec!["check-relations", "--spec", "gl:2", "--order", "2", "--perturb"],
        vec!["check-relations", "--spec", "o:3", "--order", "2", "--perturb"],
        vec!["check-projection", "--spec", "gl:3", "--order", "2", "--perturb"],
        vec!["check-projection", "--spec", "sp:4", "--order", "2", "--perturb"],
        vec!["check-relations", "--spec", "sp:4", "--m", "1", "--order", "2", "--suite", "centralizer", "--perturb"],
    ] {
        let (code, out, err) = run_cli(&args);
        assert_eq!(code, EXIT_FAIL, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let failing: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
        assert!(!failing.is_empty(), "{args:?}");
        for c in failing {
            assert!(c["witness"]["residual"].as_str().is_some_and(|r| !r.is_empty() && r != "0"), "{args:?}");
        }
    }
}

#[test]
fn envelope_fields() {
    let (code, out, _) = run_cli(&["qdet", "--spec", "gl:2", "--order", "2", "--c", "3"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spec"], "gl:2");
    assert_eq!(v["params"]["c"], "3/1");
    assert_eq!(v["params"]["K"], 2);
    assert!(v["version"].is_string());
    let (_, out, _) = run_cli(&["qdet", "--spec", "gl:2", "--order", "2", "--c", "-1/2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["c"], "-1/2");
}

#[test]
fn config_files_and_precedence() {
    let map = parse_config_file("# run\nspec = sp\nn = 2\norder=2 # inline\n\nformat = text\n").unwrap();
    assert_eq!(map["spec"], "sp");
    assert_eq!(map["order"], "2");
    assert!(matches!(parse_config_file("spec gl:2"), Err(ConfigError::BadLine { line: 1, .. })));
    assert!(matches!(parse_config_file("colour = red"), Err(ConfigError::BadLine { .. })));

    assert_eq!(resolve_spec("o-odd", Some(2)).unwrap(), AlgebraSpec::o(5));
    assert_eq!(resolve_spec("o-even", Some(2)).unwrap(), AlgebraSpec::o(4));
    assert_eq!(resolve_spec("sp:4", None).unwrap(), AlgebraSpec::sp(4));
    assert!(matches!(resolve_spec("gl:3", Some(2)), Err(ConfigError::RankConflict { .. })));
    assert!(resolve_spec("sp", None).is_err());
    assert_eq!("sym".parse::<CMode>().unwrap(), CMode::Symbolic);
    assert_eq!("5/3".parse::<CMode>().unwrap(), CMode::Value(rat(5, 3)));

    let dir = std::env::temp_dir().join(format!("centralizer-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "spec = sp\nn = 1\norder = 2\nformat = text\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, err) = run_cli(&["check-relations", "--config", p]);
    assert_eq!(code, EXIT_PASS, "{err}");
    assert!(out.contains("sp:2 K=2"), "{out}");
    let (code, out, _) = run_cli(&["check-relations", "--config", p, "--format", "json", "--order", "3"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["K"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn symbolic_subcommands() {
    let (code, out, _) = run_cli(&["normal-form", "--spec", "gl:2", "--expr", "E[1,2]*E[2,1] - E[2,1]*E[1,2]", "--format", "text"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), "E[1,1] + (-1)*E[2,2]");

    let (code, out, _) = run_cli(&["hc-image", "--spec", "gl:2", "--expr", "E[1,1] + E[2,2]"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["shifted_symmetric"], true);

    let (code, _, err) = run_cli(&["hc-image", "--spec", "gl:2", "--expr", "E[1,2]"]);
    assert_eq!(code, EXIT_USAGE, "{err}");

    let (code, out, _) = run_cli(&[
        "eigenvalue", "--spec", "gl:2", "--expr", "E[1,2]*E[2,1]", "--weight", "c=sym; dev=[1:2]", "--format", "text",
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("2 - c"), "{out}");

    let (code, out, _) = run_cli(&["symfun", "--spec", "gl:3", "--kind", "e", "--degree", "2", "--c", "0", "--weight", "c=0", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["coherent"], true);
    assert_eq!(v["result"]["at_weight"], "0");
}

#[test]
fn invariants_subcommand() {
    let (code, out, err) = run_cli(&["invariants", "--spec", "gl:4", "--m", "1", "--order", "2"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["jacobian_rank"], v["result"]["expected_rank"]);
    assert_eq!(v["result"]["triangular"], true);

    let (code, _, err) = run_cli(&["invariants", "--spec", "o:4", "--m", "1", "--order", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("n >= 6"), "{err}");

    let (code, out, err) = run_cli(&["invariants", "--spec", "sp:12", "--m", "1", "--order", "2"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["antisymmetric"], true);
}
