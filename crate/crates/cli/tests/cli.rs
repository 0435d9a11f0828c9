use std::process::Command;

use cocert_cli::{run, Report, EXIT_INCONCLUSIVE, EXIT_REFUTED, EXIT_USAGE, EXIT_VERIFIED};

fn cocert(args: &[&str]) -> cocert_cli::Outcome {
    run(std::iter::once("cocert").chain(args.iter().copied()))
}

#[test]
fn binary_matches_library_output() {
    let args = ["build", "gl3-x3px1"];
    let out = Command::new(env!("CARGO_BIN_EXE_cocert")).args(args).output().unwrap();
    let lib = cocert(&args);
    assert_eq!(out.status.code(), Some(lib.exit));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("build: COMPUTED"));
}

#[test]
fn reports_are_byte_reproducible() {
    for args in [
        &["cocycle2", "check", "--alpha", "1/3", "--dim", "4", "--samples", "50"][..],
        &["cohomology", "h1", "sl2z-std"],
        &["dynamics", "weak-mixing", "zn-gln", "--set-a", "0,1", "--set-b", "2"],
    ] {
        assert_eq!(cocert(args).stdout, cocert(args).stdout, "{args:?}");
    }
    let a = cocert(&["cocycle2", "check", "--alpha", "1/3", "--seed", "1"]).report.unwrap();
    let b = cocert(&["cocycle2", "check", "--alpha", "1/3", "--seed", "2"]).report.unwrap();
    assert_eq!(a.claim.status, b.claim.status);
    assert_ne!(a.runtime.seed, b.runtime.seed);
}

#[test]
fn exit_codes_follow_the_claim() {
    assert_eq!(cocert(&["build", "gl4-x4px1"]).exit, EXIT_VERIFIED);
    assert_eq!(cocert(&["out", "relation", "zn-translations", "--weights", "1"]).exit, EXIT_REFUTED);
    assert_eq!(cocert(&["dynamics", "finite-rigidity", "--n", "3"]).exit, EXIT_VERIFIED);
    assert_eq!(cocert(&["--strict", "dynamics", "finite-rigidity", "--n", "3"]).exit, EXIT_VERIFIED);
    let scan = ["verify", "malnormal", "gl3-x3px1", "--radius", "1"];
    assert_eq!(cocert(&scan).exit, EXIT_VERIFIED);
    assert_eq!(cocert(&[&["--strict"][..], &scan].concat()).exit, EXIT_INCONCLUSIVE);
    assert_eq!(cocert(&["build", "no-such-pair"]).exit, EXIT_USAGE);
    assert_eq!(cocert(&["verify", "malnormal"]).exit, EXIT_USAGE);
    assert_eq!(cocert(&["--jobs", "0", "build", "gl3-x3px1"]).exit, EXIT_USAGE);
    let help = cocert(&["--help"]);
    assert_eq!(help.exit, EXIT_VERIFIED);
    assert!(help.stdout.contains("EXIT CODES"));
}

#[test]
fn json_reports_round_trip() {
    let out = cocert(&["out", "factor", "z4-sl4", "--weights", "1/2,1/2"]);
    let parsed: Report = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(Some(parsed), out.report);
}

#[test]
fn text_reports_inline_citations() {
    let out = cocert(&["--format", "text", "cohomology", "h1", "sl3z-steinberg"]);
    assert!(out.stdout.starts_with("command: --format text cohomology h1 sl3z-steinberg\n"));
    let axioms: Vec<&str> = out.stdout.lines().filter(|l| l.contains("[AXIOM]")).collect();
    assert!(!axioms.is_empty());
    for line in axioms {
        assert!(line.contains("(cite: "), "{line}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = cocert(&["build", "gl2-golden"]).report.unwrap();
    assert!(plain.runtime.elapsed_ms.is_none());
    let timed = cocert(&["--timing", "build", "gl2-golden"]).report.unwrap();
    assert!(timed.runtime.elapsed_ms.is_some());
}
