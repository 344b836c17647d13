use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hda_core::format::{parse_hda, parse_ipomset};
use hda_core::MnAutomaton;
use tempfile::TempDir;

const FILLED_SQUARE: &str = "hda filled_square {
    cell v : []; cell w : []; cell x : []; cell y : [];
    cell e : [a] d0(1)=v d1(1)=w;
    cell f : [a] d0(1)=x d1(1)=y;
    cell g : [b] d0(1)=v d1(1)=x;
    cell h : [b] d0(1)=w d1(1)=y;
    cell q : [a b] d0(1)=g d1(1)=h d0(2)=e d1(2)=f;
    start: v;
    accept: h, y;
}";

const NSHAPE: &str = "ipomset nshape {
    events: a:a, b:b, c:c, d:d;
    source: b; target: d;
    prec: a<c, a<d, b<d;
    evord: a<b, c<b, c<d;
}";

const AB_ABC: &str = "alphabet: a b c\nmembers:\n[a∥b]\nabc\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hdatool"));
    cmd.current_dir(dir).args(args).env_remove("HDA_MAX_STEPS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    Run {
        code: status.code().expect("exited normally"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn workdir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("filled_square.hda"), FILLED_SQUARE).unwrap();
    fs::write(dir.path().join("nshape.ipo"), NSHAPE).unwrap();
    fs::write(dir.path().join("ab_abc.lang"), AB_ABC).unwrap();
    fs::write(dir.path().join("empty.hda"), "hda empty { }").unwrap();
    dir
}

fn run(dir: &TempDir, args: &[&str]) -> Run {
    run_in(dir.path(), args, &[])
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn subsume_prints_the_bijection() {
    let d = workdir();
    fs::write(path(&d, "P.ipo"), "ab•").unwrap();
    fs::write(path(&d, "Q.ipo"), "[a∥b•]").unwrap();
    let r = run(&d, &["ipo", "subsume", "P.ipo", "Q.ipo"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("a0 -> a0") && r.stdout.contains("b1 -> b1"), "{}", r.stdout);
    let r = run(&d, &["ipo", "subsume", "Q.ipo", "P.ipo"]);
    assert_eq!(r.code, 1);
    let r = run(&d, &["--json", "ipo", "subsume", "P.ipo", "Q.ipo"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["result"], true);
    assert_eq!(v["bijection"], serde_json::json!([0, 1]));
}

#[test]
fn glue_mismatch_is_an_error() {
    let d = workdir();
    let r = run(&d, &["ipo", "glue", "a•", "b"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("interface mismatch"), "{}", r.stderr);
    let r = run(&d, &["ipo", "glue", "a•", "•ab"]);
    assert_eq!(r.code, 0);
    assert_eq!(parse_ipomset(&r.stdout).unwrap(), parse_ipomset("ab").unwrap());
}

#[test]
fn decompose_prints_six_steps() {
    let d = workdir();
    let r = run(&d, &["ipo", "decompose", "nshape.ipo"]);
    assert_eq!(r.code, 0);
    let steps: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(steps, ["(ab)↑a", "(ab)↓a", "(cb)↑c", "(cb)↓b", "(cd)↑d", "(cd)↓c"]);
}

#[test]
fn canon_refine_and_divisions() {
    let d = workdir();
    let r = run(&d, &["ipo", "canon", "nshape.ipo"]);
    assert_eq!(parse_ipomset(&r.stdout).unwrap(), parse_ipomset(NSHAPE).unwrap());
    let r = run(&d, &["ipo", "refine", "[a∥b]"]);
    let mut got: Vec<&str> = r.stdout.lines().collect();
    got.sort();
    assert_eq!(got, ["[a∥b]", "ab", "ba"]);
    let r = run(&d, &["ipo", "divisions", "ab"]);
    assert!(r.stdout.lines().any(|l| l == "a * b"), "{}", r.stdout);
    let r = run(&d, &["ipo", "canon", "a<"]);
    assert_eq!(r.code, 2);
}

#[test]
fn hda_language_of_filled_square() {
    let d = workdir();
    let r = run(&d, &["hda", "lang", "filled_square.hda", "--max-steps", "8"]);
    assert_eq!(r.code, 0);
    let got: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(got.len(), 5);
    for s in ["[a∥b]", "[a∥b•]", "ab", "ab•", "ba"] {
        assert!(got.contains(&s), "{s} missing from {got:?}");
    }
    // the default comes from the environment
    let r = run_in(d.path(), &["hda", "lang", "filled_square.hda"], &[("HDA_MAX_STEPS", "1")]);
    assert_eq!(r.stdout.lines().count(), 0);
    let r = run(&d, &["--json", "hda", "lang", "filled_square.hda"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn membership() {
    let d = workdir();
    let r = run(&d, &["hda", "member", "empty.hda", "--expr", "a"]);
    assert_eq!(r.code, 1);
    let r = run(&d, &["hda", "member", "filled_square.hda", "--expr", "[a∥b]"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "accepted: v ↗ab q ↘ab y");
    let r = run(&d, &["--json", "hda", "member", "filled_square.hda", "ba•"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!((r.code, v["result"].clone()), (1, serde_json::json!(false)));
    let r = run(&d, &["hda", "member", "filled_square.hda"]);
    assert_eq!(r.code, 2);
}

#[test]
fn validate_ess_and_dot() {
    let d = workdir();
    assert_eq!(run(&d, &["hda", "validate", "filled_square.hda"]).code, 0);
    fs::write(path(&d, "bad.hda"), FILLED_SQUARE.replace("cell h : [b] d0(1)=w", "cell h : [b] d0(1)=x")).unwrap();
    let r = run(&d, &["hda", "validate", "bad.hda"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("precubical identity"), "{}", r.stdout);
    let r = run(&d, &["hda", "ess", "filled_square.hda", "-o", "ess.hda"]);
    assert!(r.stdout.contains("essential: v w x y e f g h q"), "{}", r.stdout);
    let (_, e) = parse_hda(&fs::read_to_string(path(&d, "ess.hda")).unwrap()).unwrap();
    assert_eq!(e.len(), 9);
    let r = run(&d, &["hda", "dot", "filled_square.hda"]);
    assert!(r.stdout.starts_with("digraph \"filled_square\" {"));
    assert!(r.stdout.contains("subgraph \"cluster_q\""));
    assert_eq!(run(&d, &["hda", "dot", "missing.hda"]).code, 2);
}

#[test]
fn language_commands_on_ab_abc() {
    let d = workdir();
    let r = run(&d, &["lang", "quotient", "ab_abc.lang", "--prefix", "a"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "{b, bc}"));
    let r = run(&d, &["lang", "quotient", "ab_abc.lang", "--suffix", "c"]);
    assert_eq!(r.stdout.trim(), "{ab}");
    let r = run(&d, &["lang", "swapinv", "ab_abc.lang"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("(ab•, [a∥b•])"), "{}", r.stdout);
    let r = run(&d, &["--json", "lang", "swapinv", "ab_abc.lang"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let witnesses = v["violations"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["finer"] == "ab•" && w["coarser"] == "[a∥b•]"));
    let r = run(&d, &["lang", "swapinv", "[a∥b]"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&d, &["lang", "prefixes", "ab_abc.lang"]);
    assert_eq!(r.stdout.lines().count(), 15);
    let r = run(&d, &["lang", "suff", "ab_abc.lang"]);
    assert_eq!(r.stdout.lines().count(), 13);
}

#[test]
fn alphabet_override() {
    let d = workdir();
    let r = run(&d, &["--alphabet", "a", "lang", "members", "ab_abc.lang"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("label `b`"), "{}", r.stderr);
    let r = run(&d, &["--alphabet", "a,b,c,d", "lang", "members", "ab_abc.lang"]);
    assert!(r.stdout.starts_with("alphabet: a b c d\n"), "{}", r.stdout);
}

#[test]
fn mn_build_writes_artifacts_and_is_nondeterministic() {
    let d = workdir();
    let r = run(&d, &["mn", "build", "ab_abc.lang", "-o", "mn_ab_abc.hda", "--classes", "classes.json", "--dot", "mn.dot"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("essential [5, 6, 1]"), "{}", r.stdout);
    let (_, x) = parse_hda(&fs::read_to_string(path(&d, "mn_ab_abc.hda")).unwrap()).unwrap();
    let l = hda_core::format::parse_lang(AB_ABC).unwrap();
    assert_eq!(x, MnAutomaton::build(&l).unwrap().hda);
    let table: serde_json::Value = serde_json::from_str(&fs::read_to_string(path(&d, "classes.json")).unwrap()).unwrap();
    let classes = table["classes"].as_array().unwrap();
    assert_eq!(classes.len(), x.len());
    let a = classes.iter().find(|c| c["representative_text"] == "a").unwrap();
    assert_eq!(a["quotient"], serde_json::json!(["b", "bc"]));
    assert!(fs::read_to_string(path(&d, "mn.dot")).unwrap().starts_with("digraph \"mn_ab_abc\""));

    let r = run(&d, &["hda", "det", "mn_ab_abc.hda"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("not deterministic: "), "{}", r.stdout);
    assert_eq!(run(&d, &["hda", "det", "filled_square.hda"]).code, 0);

    // without -o the automaton goes to stdout
    let r = run(&d, &["mn", "build", "[a∥b]"]);
    assert!(parse_hda(&r.stdout).is_ok(), "{}", r.stdout);
}

#[test]
fn mn_verify() {
    let d = workdir();
    let r = run(&d, &["mn", "verify", "ab_abc.lang"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "ok: 4 members, 12 cells"));
    for l in ["aa", "[a∥b]\naa", "[•a∥b•]\nab•", "ab\nba\nab•"] {
        fs::write(path(&d, "l.lang"), format!("members:\n{l}\n")).unwrap();
        let r = run(&d, &["--json", "mn", "verify", "l.lang"]);
        assert_eq!(r.code, 0, "{l}: {}", r.stdout);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["missing"], serde_json::json!([]));
    }
}

// rows listed top to bottom as drawn: a, c share a lane above b, d
const NSHAPE_LOG: &str = "event_id,label,begin,end,open_left,open_right
a,a,1,2,false,false
c,c,3,6,false,false
b,b,0,4,true,false
d,d,5,10,false,true
";

#[test]
fn ingest_logs() {
    let d = workdir();
    fs::write(path(&d, "nshape.csv"), NSHAPE_LOG).unwrap();
    let nshape = parse_ipomset(NSHAPE).unwrap();
    let r = run(&d, &["ipo", "ingest", "nshape.csv", "--evord", "input"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(parse_ipomset(&r.stdout).unwrap(), nshape);
    // by begin time b comes before a
    let r = run(&d, &["ipo", "ingest", "nshape.csv"]);
    let by_begin = parse_ipomset(&r.stdout).unwrap();
    assert_ne!(by_begin, nshape);
    assert!(by_begin.subsumes(&by_begin) && by_begin.len() == 4);

    fs::write(path(&d, "one.csv"), "event_id,label,begin,end,open_left,open_right\nx,a,0.5,1.25,false,false\n").unwrap();
    assert_eq!(parse_ipomset(&run(&d, &["ipo", "ingest", "one.csv"]).stdout).unwrap(), parse_ipomset("a").unwrap());
    fs::write(path(&d, "two.csv"), "event_id,label,begin,end,open_left,open_right\nx,a,1,2,0,0\ny,b,2.000001,3,0,0\n").unwrap();
    assert_eq!(parse_ipomset(&run(&d, &["ipo", "ingest", "two.csv"]).stdout).unwrap(), parse_ipomset("ab").unwrap());
    // equal endpoints overlap
    fs::write(path(&d, "touch.csv"), "event_id,label,begin,end,open_left,open_right\nx,a,1,2,0,0\ny,b,2,3,0,0\n").unwrap();
    assert_eq!(parse_ipomset(&run(&d, &["ipo", "ingest", "touch.csv"]).stdout).unwrap(), parse_ipomset("[a∥b]").unwrap());

    fs::write(path(&d, "bad.csv"), "event_id,label,begin,end,open_left,open_right\nx,a,3,2,0,0\n").unwrap();
    let r = run(&d, &["ipo", "ingest", "bad.csv"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("malformed interval for event x"), "{}", r.stderr);
}

#[test]
fn intervals_round_trip_through_ingest() {
    let d = workdir();
    for s in ["nshape.ipo", "[•a∥b•]c", "a[b∥c]d•"] {
        let r = run(&d, &["ipo", "intervals", s]);
        fs::write(path(&d, "log.csv"), &r.stdout).unwrap();
        let back = run(&d, &["ipo", "ingest", "log.csv", "--evord", "input"]);
        let want = run(&d, &["ipo", "canon", s]);
        assert_eq!(parse_ipomset(&back.stdout).unwrap(), parse_ipomset(&want.stdout).unwrap(), "{s}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let d = workdir();
    assert_eq!(run(&d, &["frobnicate"]).code, 2);
    assert_eq!(run(&d, &["lang", "quotient", "ab_abc.lang"]).code, 2);
    assert_eq!(run(&d, &["lang", "swapinv", "nope.lang"]).code, 2);
}
