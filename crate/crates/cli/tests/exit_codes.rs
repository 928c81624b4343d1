use std::process::Command;

fn eqlf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eqlf"))
        .args(args)
        .env_remove("EQLF_FUEL")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_bundled_signature() {
    let (code, out, _) = eqlf(&["check", "godel_t.eqlf"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ok 13 declarations"));
}

#[test]
fn every_bundled_signature_checks() {
    for id in ["godel_t", "dependent_t", "eq_type", "id_type", "universes", "sigma_neg", "sigma_pos"] {
        assert_eq!(eqlf(&["check", id]).0, 0, "{id}");
    }
}

#[test]
fn arithmetic_equality() {
    let (code, out, _) = eqlf(&["eq", "-s", "godel_t.eqlf", "-e", "plus 2 2", "-e", "4", "-c", "el nat"]);
    assert_eq!((code, out.as_str()), (0, "ProvenEqual\n"));
}

#[test]
fn type_inference() {
    let (code, out, _) = eqlf(&["type", "-s", "godel_t.eqlf", "-e", "succ zero"]);
    assert_eq!((code, out.as_str()), (0, "el nat\n"));
}

#[test]
fn unequal_numerals() {
    let (code, out, _) = eqlf(&["eq", "-s", "godel_t.eqlf", "-e", "zero", "-e", "succ zero", "-c", "el nat"]);
    assert_eq!((code, out.as_str()), (1, "NotProven\n"));
}

#[test]
fn fuel_exhaustion_and_env_override() {
    let (code, out, _) = eqlf(&["eq", "-s", "godel_t", "--fuel", "3", "-e", "plus 2 2", "-e", "4", "-c", "el nat"]);
    assert_eq!((code, out.as_str()), (3, "FuelExhausted(3)\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_eqlf"))
        .args(["norm", "-s", "godel_t", "-e", "times 3 3"])
        .env("EQLF_FUEL", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fuel_is_monotone_end_to_end() {
    let query = ["eq", "-s", "godel_t", "-e", "times 2 3", "-e", "6", "-c", "el nat", "--fuel"];
    let mut first_ok = None;
    for f in [1u64, 5, 20, 60, 200, 1000] {
        let fs = f.to_string();
        let mut args = query.to_vec();
        args.push(&fs);
        let code = eqlf(&args).0;
        assert!(code == 0 || code == 3, "fuel {f}: {code}");
        if code == 0 {
            first_ok.get_or_insert(f);
        } else {
            assert!(first_ok.is_none(), "regressed at fuel {f}");
        }
    }
    assert!(first_ok.is_some());
}

#[test]
fn parse_errors_exit_two_with_location() {
    let (code, _, err) = eqlf(&["type", "-s", "godel_t", "-e", "succ ("]);
    assert_eq!(code, 2);
    assert!(err.contains("1:7"), "{err}");
    let dir = std::env::temp_dir().join(format!("eqlf-bad-{}.eqlf", std::process::id()));
    std::fs::write(&dir, "tp : Sort.\nx : .\n").unwrap();
    let (code, _, err) = eqlf(&["check", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(code, 2);
    assert!(err.contains(":2:5"), "{err}");
}

#[test]
fn ill_formed_input_exits_one() {
    assert_eq!(eqlf(&["type", "-s", "godel_t", "-e", "succ nat"]).0, 1);
    assert_eq!(eqlf(&["check", "-s", "godel_t", "--ctx", "x : el missing."]).0, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(eqlf(&["eq", "-s", "godel_t", "-e", "zero", "-c", "el nat"]).0, 2);
    assert_eq!(eqlf(&["check", "no_such_signature"]).0, 2);
    assert_eq!(eqlf(&["frobnicate"]).0, 2);
    assert_eq!(eqlf(&["eq", "-s", "godel_t", "--fuel", "0", "-e", "zero", "-e", "zero", "-c", "el nat"]).0, 2);
}

#[test]
fn trace_lists_rules() {
    let (code, out, _) = eqlf(&[
        "eq", "-s", "godel_t", "--trace",
        "--ctx", "A : tp. b : el A. s : el nat -> el A -> el A. n : el nat.",
        "-e", "rec A b s (succ n)", "-e", "s n (rec A b s n)", "-c", "el A",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines, ["ProvenEqual", "nat_beta_s @ root"]);
    let (_, out, _) = eqlf(&["eq", "-s", "godel_t", "--trace", "-e", "zero", "-e", "zero", "-c", "el nat"]);
    assert_eq!(out, "ProvenEqual\n");
    let (_, _, err) = eqlf(&["norm", "-s", "godel_t", "--trace", "-e", "([x : el nat] x) zero"]);
    assert_eq!(err, "app-lam @ root\n");
}

#[test]
fn no_eta_flag_is_live() {
    let args = |extra: Option<&'static str>| {
        let mut v = vec![
            "eq", "-s", "godel_t", "--ctx", "g : el nat -> el nat.",
            "-e", "g", "-e", "[y : el nat] g y", "-c", "el nat -> el nat",
        ];
        v.extend(extra);
        v
    };
    assert_eq!(eqlf(&args(None)).0, 0);
    assert_eq!(eqlf(&args(Some("--no-eta"))).0, 1);
}

#[test]
fn expressions_from_files() {
    let p = std::env::temp_dir().join(format!("eqlf-prog-{}.eqlf", std::process::id()));
    std::fs::write(&p, "-- two times three\ntimes 2 3\n").unwrap();
    let arg = format!("@{}", p.display());
    let (code, out, _) = eqlf(&["norm", "-s", "godel_t", "-e", &arg]);
    std::fs::remove_file(&p).ok();
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "succ (succ (succ (succ (succ (succ zero)))))");
}

#[test]
fn corpus_listing() {
    let (code, out, _) = eqlf(&["corpus"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    let (_, src, _) = eqlf(&["corpus", "eq_type"]);
    assert!(src.contains("eqref") && src.contains("nat_beta_z"));
}

#[test]
fn meta_small_run() {
    let (code, out, err) = eqlf(&["meta", "godel_t", "--seeds", "1", "--samples", "30"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("godel_t substitution pass"));
    assert!(out.contains("controls caught 4/4"));
}
