use std::process::Command;

use num_bigint::BigUint;
use serde_json::Value;

fn constacode(args: &[&str], cap_env: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_constacode"));
    cmd.args(args).env_remove("CONSTACODE_CAP");
    if let Some(cap) = cap_env {
        cmd.env("CONSTACODE_CAP", cap);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    constacode(args, None)
}

#[test]
fn factor_text_matches_product_notation() {
    let (code, out, _) = run(&[
        "factor",
        "--q",
        "163",
        "--ell",
        "3",
        "--n",
        "5",
        "--k",
        "2",
        "--mu-lift",
        "-18",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with(
        "x^243 - 38 = (x^27 + 32)(x^27 + 75)(x^27 + 79)(x^27 + 68)(x^27 - 24)(x^27 + 66)(x^27 + 63)(x^27 - 51)(x^27 + 18)\n"
    ), "{out}");
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "factor", "--q", "97", "--ell", "2", "--n", "8", "--k", "2", "--format", "json",
        ],
        vec![
            "cyclic", "--q", "163", "--ell", "3", "--n", "5", "--format", "json",
        ],
        vec![
            "code", "--q", "19", "--ell", "3", "--n", "2", "--k", "1", "--format", "json",
        ],
        vec![
            "weights", "--q", "163", "--ell", "3", "--n", "5", "--k", "1", "--format", "json",
        ],
        vec![
            "encode",
            "--q",
            "19",
            "--ell",
            "3",
            "--n",
            "2",
            "--k",
            "1",
            "--message",
            "1,0,0",
            "--format",
            "json",
        ],
        vec![
            "verify", "--q", "19", "--ell", "3", "--n", "2", "--k", "1", "--format", "json",
        ],
        vec![
            "factor", "--q", "25", "--ell", "2", "--n", "3", "--k", "2", "--format", "json",
        ],
    ];
    for args in cases {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out, "{args:?}");
        assert!(
            !out.contains(": 1") && !out.contains(": 0"),
            "bare JSON numbers in {args:?}"
        );
    }
}

#[test]
fn weights_csv_for_256_32_code() {
    let (code, out, _) = run(&[
        "weights", "--q", "97", "--ell", "2", "--n", "8", "--k", "2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight,count"));
    let rows: Vec<(usize, BigUint)> = lines
        .map(|l| {
            let (w, c) = l.split_once(',').unwrap();
            (w.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 33);
    let mut binom = BigUint::from(1u32);
    for (j, (w, c)) in rows.iter().enumerate() {
        assert_eq!(*w, 8 * j);
        assert_eq!(*c, &binom * BigUint::from(96u32).pow(j as u32));
        binom = binom * BigUint::from(32 - j) / BigUint::from(j + 1);
    }
}

#[test]
fn code_json_fields() {
    let (code, out, _) = run(&[
        "code",
        "--q",
        "97",
        "--ell",
        "2",
        "--n",
        "8",
        "--k",
        "2",
        "--mu-lift",
        "42",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let c = &v["code"];
    assert_eq!(c["length"], "256");
    assert_eq!(c["dimension"], "32");
    assert_eq!(c["q"], "97");
    assert_eq!(c["mu_k"], "22");
    assert_eq!(c["check_constant"], "42");
    let gen = c["generator"].as_array().unwrap();
    assert_eq!(gen.len(), 225);
    assert_eq!(gen[0], "19");
    assert_eq!(gen[32], "12");
    assert_eq!(gen[224], "1");
    let (_, text, _) = run(&[
        "code",
        "--q",
        "97",
        "--ell",
        "2",
        "--n",
        "8",
        "--k",
        "2",
        "--mu-lift",
        "42",
    ]);
    assert!(text.contains(
        "generator: x^224 + 42x^192 + 18x^160 + 77x^128 + 33x^96 + 28x^64 + 12x^32 + 19"
    ));
}

#[test]
fn encode_blocks() {
    let (code, out, _) = run(&[
        "encode",
        "--q",
        "19",
        "--ell",
        "3",
        "--n",
        "2",
        "--k",
        "1",
        "--message",
        "1,0,0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "1,0,0,4,0,0,16,0,0\n");
    let (code, out, _) = run(&[
        "encode",
        "--q",
        "19",
        "--ell",
        "3",
        "--n",
        "2",
        "--k",
        "1",
        "--i",
        "1",
        "--message",
        "0,0,-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "0,0,18,0,0,10,0,0,14\n");
}

#[test]
fn verify_exits_zero() {
    let (code, out, _) = run(&[
        "verify", "--q", "19", "--ell", "3", "--n", "2", "--k", "1", "--cap", "10000",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("OK\n"));
    assert!(!out.contains("FAIL"));
    let (code, _, _) = run(&[
        "verify", "--q", "97", "--ell", "2", "--n", "4", "--k", "3", "--cap", "100000",
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["verify", "--q", "25", "--ell", "2", "--n", "3", "--k", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn weights_check_and_cap() {
    let args = [
        "weights", "--q", "13", "--ell", "2", "--n", "3", "--k", "1", "--check",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.contains("# enumeration: match"));
    let mut capped = args.to_vec();
    capped.extend(["--cap", "1000"]);
    let (code, _, err) = run(&capped);
    assert_eq!(code, 5, "{err}");
    let (code, _, _) = constacode(&args, Some("1000"));
    assert_eq!(code, 5);
    // the flag wins over the environment
    let mut raised = args.to_vec();
    raised.extend(["--cap", "30000"]);
    let (code, _, _) = constacode(&raised, Some("1000"));
    assert_eq!(code, 0);
}

#[test]
fn usage_and_parameter_errors() {
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["factor", "--q", "19"]).0, 1);
    assert_eq!(
        run(&["factor", "--q", "18", "--ell", "3", "--n", "2", "--k", "1"]).0,
        2
    );
    assert_eq!(
        run(&["factor", "--q", "163", "--ell", "3", "--n", "5", "--k", "2", "--mu", "104"]).0,
        2
    );
    assert_eq!(
        run(&["factor", "--q", "163", "--ell", "3", "--n", "5", "--k", "2", "--mu", "x"]).0,
        1
    );
    assert_eq!(
        run(&[
            "factor",
            "--q",
            "19",
            "--ell",
            "3",
            "--n",
            "2",
            "--k",
            "1",
            "--mu",
            "7",
            "--mu-lift",
            "4"
        ])
        .0,
        1
    );
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("constacode"));
}
