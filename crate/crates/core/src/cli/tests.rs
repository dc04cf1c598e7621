use proptest::prelude::*;
use serde_json::{json, Value};

use super::*;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full = std::iter::once("morava-calc").chain(args.iter().copied());
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run_args(args);
    let doc = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, doc)
}

#[test]
fn encode_examples() {
    let a = PadicInt::new(5, 2, 17).unwrap();
    assert_eq!(encode::padic(&a), json!([2, 3]));
    let z = Fq::new(5, 1).unwrap().zero();
    let s = TruncSeries::from_ints(&z, &[1, 3], 2);
    assert_eq!(encode::series(&s), json!([1, 3, 0]));
    let f25 = Fq::new(5, 2).unwrap();
    assert_eq!(encode::fq(&f25.one()), json!([1, 0]));
    assert_eq!(
        serde_json::to_value(imj_table(5, &[], None).unwrap()).unwrap(),
        json!([])
    );
}

#[test]
fn parse_padic_inputs() {
    assert_eq!(parse::padic("17", 5, 2).unwrap().value(), 17);
    assert_eq!(parse::padic("[2,3]", 5, 2).unwrap().value(), 17);
    assert_eq!(parse::padic("[2, 3, 0, 0]", 5, 2).unwrap().value(), 17);
    assert_eq!(parse::padic("-1", 3, 2).unwrap().value(), 8);
    assert!(parse::padic("[5]", 5, 2).is_err());
    assert!(parse::padic("[1,1,1]", 5, 2).is_err());
    assert!(parse::padic("x", 5, 2).is_err());
}

#[test]
fn parse_named_units() {
    assert_eq!(parse::unit("g", "--gamma", 5, 2).unwrap().value(), 17);
    assert_eq!(parse::unit("q", "--gamma", 5, 2).unwrap().value(), 21);
    assert_eq!(parse::unit("zeta", "--gamma", 5, 1).unwrap().value(), 2);
    assert!(matches!(
        parse::unit("10", "--gamma", 5, 2),
        Err(CliError::NotUnit { .. })
    ));
}

#[test]
fn parse_k_ranges() {
    assert_eq!(parse::k_values("10").unwrap(), (vec![10], false));
    assert_eq!(parse::k_values("1..3").unwrap(), (vec![1, 2, 3], true));
    assert_eq!(parse::k_values("-2..=-1").unwrap(), (vec![-2, -1], true));
    assert!(parse::k_values("3..1").is_err());
    assert!(parse::k_values("a").is_err());
}

#[test]
fn parse_laws() {
    let proto = PadicInt::zero(5, 2).unwrap();
    let law = parse::law("x + y + 2xy - x^2y", &proto, 8).unwrap();
    assert_eq!(law.coeff(&[1, 1]).value(), 2);
    assert_eq!(law.coeff(&[2, 1]).value(), 24);
    assert_eq!(law.coeff(&[1, 0]).value(), 1);
    assert_eq!(parse::law("x y^2 x", &proto, 8).unwrap().coeff(&[2, 2]).value(), 1);
    for bad in ["", "x+", "x+z", "2x^", "x**y"] {
        assert!(parse::law(bad, &proto, 8).is_err(), "{bad}");
    }
}

#[test]
fn imj_single_k() {
    let (code, doc) = run_json(&["imj", "--p", "5", "--k", "10"]);
    assert_eq!(code, 0);
    assert_eq!(doc["order_exponent"], json!(2));
    let (code, doc) = run_json(&["imj", "--p", "3", "--k", "1..9"]);
    assert_eq!(code, 0);
    let exps: Vec<u64> = doc
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["order_exponent"].as_u64().unwrap())
        .collect();
    assert_eq!(exps, vec![1, 1, 2, 1, 1, 2, 1, 1, 3]);
}

#[test]
fn pseries_text() {
    let (code, out, _) = run_args(&["pseries", "--p", "3", "--n", "1", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "y^3\n");
}

#[test]
fn kernel_of_gamma_one_is_constant() {
    let (code, doc) = run_json(&["kernel", "--p", "5", "--gamma", "1", "--level", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["generator"], json!([1, 1, 1, 1]));
    assert_eq!(doc["constant"], json!(true));
    let (_, doc) = run_json(&["kernel", "--p", "5", "--gamma", "g", "--level", "1"]);
    assert_eq!(doc["generator"], json!([1, 2, 3, 4]));
}

#[test]
fn transfer_outcomes() {
    let (code, doc) = run_json(&["transfer", "--p", "5", "--level", "1", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["solvable"], json!(true));
    let (code, doc) = run_json(&["transfer", "--p", "5", "--level", "1", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["solvable"], json!(false));
    assert_eq!(doc["orbit_product"], json!(4));
}

#[test]
fn exit_codes() {
    assert_eq!(run_args(&["imj", "--p", "4"]).0, 2);
    assert_eq!(run_args(&["imj", "--k", "0"]).0, 2);
    assert_eq!(run_args(&["nonsense"]).0, 2);
    assert_eq!(run_args(&["kernel", "--gamma", "3"]).0, 2);
    assert_eq!(run_args(&["theta", "--k", "3"]).0, 2);
    assert_eq!(run_args(&["--help"]).0, 0);
    let (code, doc) = run_json(&["fgl-check", "--law", "x+y+x^2"]);
    assert_eq!(code, 1);
    assert_eq!(doc["axiom"], json!("commutativity"));
    let (code, doc) = run_json(&["fgl-check", "--law", "x+y+xy+x^2y^2", "--deg", "8"]);
    assert_eq!(code, 1);
    assert_eq!(doc["axiom"], json!("associativity"));
    let (_, _, err) = run_args(&["--precision", "0", "imj"]);
    assert!(err.contains("--precision"));
}

#[test]
fn every_subcommand_succeeds_at_defaults() {
    for cmd in [
        "aseries",
        "pseries",
        "fgl-check",
        "pairing",
        "phi",
        "kernel",
        "split",
        "theta",
        "transfer",
        "imj",
    ] {
        for format in ["json", "text"] {
            let (code, out, err) = run_args(&[cmd, "--format", format]);
            assert_eq!(code, 0, "{cmd}: {err}");
            assert!(!out.is_empty());
        }
    }
}

#[test]
fn json_round_trip_and_determinism() {
    for cmd in ["aseries", "phi", "split", "theta", "imj"] {
        let (_, first, _) = run_args(&[cmd, "--p", "5", "--n", "2"]);
        let (_, second, _) = run_args(&[cmd, "--p", "5", "--n", "2"]);
        assert_eq!(first, second);
        let doc: Value = serde_json::from_str(&first).unwrap();
        let mut again = serde_json::to_string_pretty(&doc).unwrap();
        again.push('\n');
        assert_eq!(again, first);
    }
}

#[test]
fn golden_bless_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run_args(&["phi", "--golden-dir", d]).0, 2);
    assert_eq!(run_args(&["phi", "--golden-dir", d, "--bless"]).0, 0);
    assert!(dir.path().join("phi_p3_n1.json").exists());
    assert_eq!(run_args(&["phi", "--golden-dir", d]).0, 0);
    assert_eq!(run_args(&["phi", "--m", "2", "--golden-dir", d]).0, 1);
    assert_eq!(run_args(&["--bless", "phi"]).0, 2);
}

proptest! {
    #[test]
    fn digit_list_matches_integer(value in 0i128..3i128.pow(10)) {
        let a = parse::padic(&value.to_string(), 3, 10).unwrap();
        let listed = format!("{:?}", a.digits());
        prop_assert_eq!(parse::padic(&listed, 3, 10).unwrap(), a);
    }

    #[test]
    fn mult_law_text_always_validates(t in 1u64..25) {
        let proto = PadicInt::zero(5, 2).unwrap();
        let law = parse::law(&format!("x+y+{t}xy"), &proto, 10).unwrap();
        prop_assert!(fgl_validate(law).is_ok());
    }
}
