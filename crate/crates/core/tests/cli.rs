use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn sftkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sftkit")).args(args).output().expect("run sftkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verdict_exit_codes() {
    let full = data("full2.sft");
    let checker = data("checkerboard.sft");
    let yes = sftkit(&["periods", "strong", path(&full), "-p", "2"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("verdict=yes nodes="));
    // the checkerboard is also fixed by (1,1)
    let no = sftkit(&["periods", "strong", path(&checker), "-p", "2"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("verdict=no"));
    let unknown = sftkit(&["--max-nodes", "2", "periods", "strong", path(&full), "-p", "3"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stdout(&unknown).starts_with("verdict=unknown"));
}

#[test]
fn error_exit_codes() {
    assert_eq!(sftkit(&["periods", "strong"]).status.code(), Some(64));
    assert_eq!(sftkit(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(sftkit(&["--help"]).status.code(), Some(0));
    assert_eq!(sftkit(&["construct", "nothing"]).status.code(), Some(64));
    assert_eq!(sftkit(&["periods", "strong", path(&data("full2.sft")), "-p", "0"]).status.code(), Some(64));
    assert_eq!(sftkit(&["count", "/no/such/file.sft", "-p", "1"]).status.code(), Some(74));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sft");
    fs::write(&bad, "%sft\ndim: 2\nalphabet: a\nforbid:\n(0,0) = z\n").unwrap();
    let o = sftkit(&["count", path(&bad), "-p", "1"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sftkit"))
        .env("SFTKIT_MAX_NODES", "1")
        .args(["count", path(&data("full2.sft")), "-p", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn counts() {
    let full = data("full2.sft");
    for (p, want) in [("1", "2"), ("2", "2"), ("3", "54")] {
        for mode in ["stabilizer", "lex-min"] {
            let o = sftkit(&["count", path(&full), "-p", p, "--mode", mode]);
            assert_eq!(stdout(&o).trim(), want, "p={p} {mode}");
        }
    }
}

#[test]
fn witnesses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let full = data("full2.sft");
    let checker = data("checkerboard.sft");
    let t = dir.path().join("t.torus");
    assert!(sftkit(&["periods", "strong", path(&full), "-p", "3", "--witness", path(&t)]).status.success());
    let v = sftkit(&["periods", "strong", path(&full), "-p", "3", "--verify", path(&t)]);
    assert_eq!((v.status.code(), stdout(&v).as_str()), (Some(0), "valid\n"));
    // the constant torus is not a witness for period 3
    fs::write(&t, "%torus\ndims: 3 3\ncells: 0 0 0\ncells: 0 0 0\ncells: 0 0 0\n").unwrap();
    let v = sftkit(&["periods", "strong", path(&full), "-p", "3", "--verify", path(&t)]);
    assert_eq!(v.status.code(), Some(1));

    let h = dir.path().join("h.torus");
    assert!(sftkit(&["periods", "horizontal", path(&checker), "-n", "2", "--witness", path(&h)]).status.success());
    assert!(sftkit(&["periods", "horizontal", path(&checker), "-n", "2", "--verify", path(&h)]).status.success());

    let w = dir.path().join("w.walk");
    assert!(sftkit(&["periods", "one", path(&full), "-m", "2", "-n", "1", "--witness", path(&w)]).status.success());
    assert!(fs::read_to_string(&w).unwrap().starts_with("%walk\n"));
    let v = sftkit(&["periods", "one", path(&full), "-m", "2", "-n", "1", "--verify", path(&w)]);
    assert_eq!(stdout(&v), "valid\n");
}

#[test]
fn strip_graph_of_the_full_shift() {
    let o = sftkit(&["stripgraph", path(&data("full2.sft")), "-m", "1", "-n", "0"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 16);
    // every strip may sit on every strip
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 256);
}

#[test]
fn determinism_checks() {
    let dir = tempfile::tempdir().unwrap();
    let kari = dir.path().join("kari.wang");
    assert!(sftkit(&["construct", "kari-nw", "-o", path(&kari)]).status.success());
    assert_eq!(sftkit(&["check-det", path(&kari), "nw"]).status.code(), Some(0));
    // two colours on the north and west edges leave both symbols open
    let o = sftkit(&["check-det", path(&data("full2.sft")), "nw"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not deterministic"));
}

#[test]
fn machine_counts() {
    let tm = data("accept_one.tm");
    let o = sftkit(&["compile-tm", path(&tm), "--count", "3", "4", "--input", "1"]);
    assert_eq!(stdout(&o), "tilings=1 accepted_runs=1\n");
    let o = sftkit(&["compile-tm", path(&tm), "--count", "3", "4", "--input", "11"]);
    assert_eq!(stdout(&o), "tilings=0 accepted_runs=0\n");
    let wang = stdout(&sftkit(&["compile-tm", path(&tm)]));
    assert!(wang.starts_with("%wang\n"));
}

#[test]
fn lattice_refutation() {
    let checker = data("checkerboard.sft");
    assert_eq!(sftkit(&["refute-lattice", path(&checker), "--basis", "1,1;0,2"]).status.code(), Some(0));
    assert_eq!(sftkit(&["refute-lattice", path(&checker), "--basis", "1,0;0,2"]).status.code(), Some(1));
    assert_eq!(sftkit(&["refute-lattice", path(&checker), "--basis", "1,0,0"]).status.code(), Some(64));
}

/// Counter layer for base 2 on a 2-wide torus, from a strip-graph cycle
/// (the scan would return a breaker-free row); regenerate with
/// `SFTKIT_UPDATE_GOLDEN=1`.
#[test]
fn golden_counter_svg() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("counter.sft");
    let torus = dir.path().join("c.torus");
    assert!(sftkit(&["construct", "counter:2", "-o", path(&spec)]).status.success());
    assert!(sftkit(&["periods", "horizontal", path(&spec), "-n", "2", "--strategy", "strip", "--witness", path(&torus)]).status.success());
    let svg = stdout(&sftkit(&["render", path(&spec), path(&torus), "--scale", "4"]));
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/counter2.svg");
    if std::env::var_os("SFTKIT_UPDATE_GOLDEN").is_some() {
        fs::write(&golden, &svg).unwrap();
    }
    assert_eq!(svg, fs::read_to_string(&golden).unwrap());
    assert_eq!(svg.matches("<rect").count(), 8);

    let ppm = sftkit(&["render", path(&spec), path(&torus), "--format", "ppm", "--scale", "1"]).stdout;
    assert_eq!(&ppm[..11], b"P6\n2 4\n255\n");
    assert_eq!(ppm.len(), 11 + 2 * 4 * 3);
}

#[test]
fn thread_count_does_not_change_output() {
    let full = data("full2.sft");
    let args = ["periods", "one", path(&full), "-m", "3", "-n", "1"];
    let one = sftkit(&[&["--threads", "1"][..], &args].concat());
    let four = sftkit(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(sftkit(&["--threads", "0", "count", path(&full), "-p", "1"]).status.code(), Some(64));
}
