//! Parser entry points: the checked-in fuzz corpus replayed on stable, plus
//! malformed inputs that must be rejected cleanly.

use std::fs;
use std::path::PathBuf;

use schurfin::complex::{ChainComplex, ShortExactSequence};
use schurfin::dsl;
use schurfin::error::Limits;
use schurfin::partition::Partition;
use schurfin::poly::Poly;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn dsl_seeds_round_trip() {
    for (name, text) in seeds("dsl_parse") {
        let e = dsl::parse(&text).unwrap_or_else(|err| panic!("{name}: {err}"));
        assert_eq!(dsl::parse(&e.to_string()).unwrap(), e, "{name}");
    }
}

#[test]
fn partition_seeds_round_trip() {
    for (name, text) in seeds("partition_parse") {
        if let Ok(p) = text.parse::<Partition>() {
            assert_eq!(p.to_string().parse::<Partition>().unwrap(), p, "{name}");
        }
    }
}

#[test]
fn poly_seeds_round_trip() {
    for (name, text) in seeds("poly_parse") {
        let p: Poly = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(p.to_string().parse::<Poly>().unwrap(), p, "{name}");
    }
}

#[test]
fn complex_seeds_reload() {
    let limits = Limits::default();
    for (name, text) in seeds("complex_json") {
        let c = ChainComplex::from_json(&text, &limits).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(
            ChainComplex::from_json(&c.to_json(), &limits).unwrap(),
            c,
            "{name}"
        );
    }
}

#[test]
fn extension_seeds_load() {
    for (name, text) in seeds("extension_json") {
        ShortExactSequence::from_json(&text, &Limits::default())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn malformed_dsl_is_rejected() {
    let deep = format!("{}1{}", "(".repeat(500), ")".repeat(500));
    let long_shift = format!("{}1{}", "shift^1(".repeat(400), ")".repeat(400));
    for bad in [
        "",
        "(+)",
        "1 (+)",
        "X (x) (x) Y",
        "S[](X)",
        "S[2,3](X)",
        "S[0](X)",
        "Sym^0(X)",
        "wedge^(X)",
        "X{odd; []}",
        "X{maybe}",
        "x",
        "Sym",
        "2",
        "ev(99999999999999999999999)",
        "shift^-99999999999999999999(1)",
        "X Y",
        "((1)",
        deep.as_str(),
        long_shift.as_str(),
    ] {
        assert!(dsl::parse(bad).is_err(), "{bad:?} parsed");
    }
}

#[test]
fn malformed_partitions_are_rejected() {
    for bad in [
        "1,2",
        "[3,,1]",
        "(3,0,1)",
        "abc",
        "[-1]",
        "[99999999999999999999999]",
    ] {
        assert!(bad.parse::<Partition>().is_err(), "{bad:?} parsed");
    }
    assert_eq!(
        "3,2,1,0".parse::<Partition>().unwrap().to_string(),
        "(3,2,1)"
    );
}

#[test]
fn malformed_complexes_are_rejected() {
    let limits = Limits::default();
    for bad in [
        "",
        "[]",
        r#"{"base": "Z", "degrees": {}}"#,
        r#"{"base": "Q", "degrees": {"0": -1}}"#,
        r#"{"base": "Q", "degrees": {"a": 1}}"#,
        r#"{"base": "Q", "degrees": {"0": 1, "1": 1}, "differentials": {"1": [["x"]]}}"#,
        r#"{"base": "Q", "degrees": {"0": 1, "1": 1}, "differentials": {"1": [[1, 2]]}}"#,
        r#"{"base": "Q", "degrees": {"0": 1, "1": 1, "2": 1}, "differentials": {"1": [[1]], "2": [[1]]}}"#,
        r#"{"base": "Q", "degrees": {"0": 100000}}"#,
        r#"{"base": "Q", "degrees": {"99999999999": 1}}"#,
        r#"{"base": "Q", "degrees": {}, "extra": 1}"#,
    ] {
        assert!(
            ChainComplex::from_json(bad, &limits).is_err(),
            "{bad:?} parsed"
        );
    }
}
