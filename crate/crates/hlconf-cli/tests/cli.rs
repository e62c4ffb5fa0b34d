use std::path::Path;

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("defs");
    let argv: Vec<String> = std::iter::once("hlconf".to_string())
        .chain(args.iter().map(|a| {
            if a.ends_with(".def") {
                dir.join(a).display().to_string()
            } else {
                a.to_string()
            }
        }))
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = hlconf_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn documented_examples() {
    assert_eq!(run(&["check", "algebra", "virasoro.def"]).0, 0);
    assert_eq!(run(&["check", "nijenhuis", "virasoro.def", "--op", "scale_c"]).0, 0);
    let (code, out, _) = run(&[
        "cohomology",
        "d2-zero",
        "virasoro.def",
        "--arity",
        "1",
        "--random",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!((code, out.as_str()), (0, "PASS d2_zero(arity=1)\n"));
}

#[test]
fn failing_report_exits_one_and_shows_residual() {
    let (code, out, _) = run(&["check", "nijenhuis", "virasoro.def", "--op", "derivation"]);
    assert_eq!(code, 1);
    assert_eq!(out, "FAIL nijenhuis\n  (L, L): L: -D^2*l1 - 3*D*l1^2 - 2*l1^3\n");
    let (_, rec, _) = run(&[
        "check",
        "nijenhuis",
        "virasoro.def",
        "--op",
        "derivation",
        "--format",
        "records",
    ]);
    assert_eq!(
        rec,
        "{\"check_name\":\"nijenhuis\",\"status\":\"fail\",\"violations\":[{\"context\":\"(L, L)\",\"residual\":\"L: -D^2*l1 - 3*D*l1^2 - 2*l1^3\"}]}\n"
    );
}

#[test]
fn weights_and_flags() {
    assert_eq!(
        run(&["check", "rb", "virasoro.def", "--op", "identity", "--weight", "-1"]).0,
        0
    );
    assert_eq!(
        run(&["check", "rb", "virasoro.def", "--op", "identity", "--weight", "1/2"]).0,
        1
    );
    assert_eq!(
        run(&["check", "mrb", "virasoro.def", "--op", "identity", "--weight", "-1"]).0,
        0
    );
    assert_eq!(
        run(&["check", "ns", "virasoro_ns.def", "--vee-skew"]).1,
        "PASS ns_axioms\nPASS vee_skew\n"
    );
    let (_, out, _) = run(&["check", "lie", "virasoro.def", "--timing", "--format", "records"]);
    assert!(out.contains("\"timing_ms\":"));
    let (_, out, _) = run(&["check", "lie", "virasoro.def", "--format", "records"]);
    assert!(!out.contains("timing_ms"));
}

#[test]
fn phi_flag_selects_formula() {
    // The two forms agree only at arity 2; with N = id the truncated form
    // breaks the commuting square at arity 1.
    let args = [
        "cohomology",
        "square-lemma",
        "virasoro.def",
        "--op",
        "identity",
        "--random",
        "3",
    ];
    assert_eq!(run(&args).0, 0);
    let mut truncated = args.to_vec();
    truncated.extend(["--phi", "truncated"]);
    assert_eq!(run(&truncated).0, 1);
}

#[test]
fn constructions_print_parseable_definitions() {
    for args in [
        vec!["construct", "deformed", "virasoro.def", "--op", "scale_c"],
        vec!["construct", "ns-from-n", "cur_leibniz2.def", "--op", "unipotent"],
        vec![
            "construct",
            "ns-from-rb",
            "virasoro.def",
            "--op",
            "identity",
            "--weight",
            "-1",
        ],
        vec!["construct", "ns-from-trb", "virasoro_trb.def"],
        vec!["construct", "induced-rep", "cur_leibniz2.def", "--op", "nilpotent"],
        vec!["construct", "cur", "cur_leibniz2.def"],
        vec!["construct", "adjacent", "virasoro_ns.def"],
        vec!["cohomology", "delta", "virasoro.def", "--cochain", "unit"],
        vec![
            "cohomology",
            "delta-hn",
            "virasoro.def",
            "--cochain",
            "unit",
            "--op",
            "scale_c",
        ],
        vec![
            "cohomology",
            "phi",
            "virasoro.def",
            "--cochain",
            "sample2",
            "--op",
            "scale_c",
        ],
        vec![
            "cohomology",
            "d-hnla",
            "virasoro.def",
            "--cochain",
            "unit",
            "--op",
            "scale_c",
        ],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        hlconf::io::parse_definition(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}

#[test]
fn delta_of_unit_cochain_is_the_bracket() {
    let (_, out, _) = run(&["cohomology", "delta", "virasoro.def", "--cochain", "unit"]);
    assert!(
        out.ends_with("[cochain:unit_delta]\narity = \"2\"\nvalue.L.L = [\"D + 2*l1\"]\n"),
        "{out}"
    );
}

#[test]
fn strict_preconditions_reject_bad_operators() {
    let args = ["construct", "deformed", "virasoro.def", "--op", "derivation"];
    assert_eq!(run(&args).0, 0);
    let mut strict = args.to_vec();
    strict.push("--strict-preconditions");
    let (code, _, err) = run(&strict);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: precondition failed"), "{err}");
}

#[test]
fn usage_and_file_errors() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check", "algebra", "missing.def"]).0, 2);
    let (code, _, err) = run(&["check", "nijenhuis", "virasoro.def"]);
    assert_eq!(code, 2);
    assert!(err.contains("--op"), "{err}");
    let (code, _, err) = run(&["check", "ns", "virasoro.def"]);
    assert_eq!((code, err.as_str()), (2, "error: the file has no [ns] section\n"));
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("cohomology"));
}

#[test]
fn deformation_commands() {
    let (code, out, _) = run(&["deform", "check-order", "virasoro.def", "--deformation", "shifted"]);
    assert_eq!(
        (code, out.as_str()),
        (0, "PASS deformation_order(0)\nPASS deformation_order(1)\n")
    );
    assert_eq!(
        run(&[
            "deform",
            "check-order",
            "virasoro.def",
            "--deformation",
            "shifted",
            "--order",
            "3"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&["deform", "cocycle", "cur_leibniz2.def", "--deformation", "shifted"]).0,
        0
    );
    let (code, _, err) = run(&["deform", "equiv1", "cur_leibniz2.def", "--deformation", "trivial"]);
    assert_eq!(code, 2, "{err}");
}
