use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn ppad(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ppad"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ppad");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = ppad(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ppad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn rps_support_enumeration() {
    let game = ok(&["fixture", "rps"], "");
    let out = ok(&["solve", "supenum"], &game);
    assert_eq!(out, "PROFILE\n1/3 1/3 1/3\n1/3 1/3 1/3\n");
}

#[test]
fn generated_line_end_verifies() {
    let inst = ok(&["gen", "eol", "--n", "6", "--lines", "2", "--seed", "9"], "");
    let sol = ok(&["solve", "eol"], &inst);
    let (kind, bits) = sol.trim().split_once(' ').unwrap();
    assert_eq!(kind, "SINK");
    let all = ok(&["solve", "eol", "--all"], &inst);
    assert!(all.lines().any(|l| l == sol.trim()));
    let verdict = ok(&["verify", "eol", "--x", bits], &inst);
    assert_eq!(verdict.trim(), format!("ACCEPT SINK {bits}"));
    let rejected = ppad(&["verify", "eol", "--x", "000001"], &inst);
    if !all.contains("000001") {
        assert_eq!(rejected.status.code(), Some(1));
    }
}

#[test]
fn stag_hare_is_rejected() {
    let game = ok(&["fixture", "stag-hunt"], "");
    let profile = scratch("stag-hare.txt", b"PROFILE\n1 0\n0 1\n");
    let out = ppad(&["verify", "nash", "--eps", "0", "--profile", profile.to_str().unwrap()], &game);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("REJECT"));
    let mixed = scratch("stag-mixed.txt", b"PROFILE\n1/8 7/8\n1/8 7/8\n");
    ok(&["verify", "nash", "--profile", mixed.to_str().unwrap()], &game);
}

#[test]
fn approximation_output_passes_regret_check() {
    let game = ok(&["gen", "game", "--actions", "3,2,2", "--seed", "4"], "");
    let prof = ok(&["solve", "approx"], &game);
    assert!(prof.starts_with("# guarantee 2/3\nPROFILE\n"));
    let path = scratch("approx.txt", prof.as_bytes());
    let game_path = scratch("game.txt", game.as_bytes());
    let (p, g) = (path.to_str().unwrap(), game_path.to_str().unwrap());
    ok(&["verify", "nash", "--rescale", "--regret", "--eps", "2/3", "--profile", p, g], "");
}

#[test]
fn lemke_howson_every_label_on_stag_hunt() {
    let game = ok(&["fixture", "stag-hunt"], "");
    let oracle = ok(&["solve", "supenum"], &game);
    for label in 0..4 {
        let out = ok(&["solve", "lh", "--drop", &label.to_string()], &game);
        let profile = out.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n";
        assert!(oracle.contains(&profile), "label {label}: {out}");
    }
}

#[test]
fn reductions_round_trip_through_readers() {
    let sperner = ok(&["gen", "sperner", "--m", "2", "--seed", "5"], "");
    let tri = ok(&["solve", "sperner"], &sperner);
    let all = ok(&["solve", "sperner", "--all", "--threads", "3"], &sperner);
    assert!(all.lines().any(|l| l == tri.trim()));
    assert_eq!(all.lines().count() % 2, 1);
    let eol = ok(&["reduce", "sperner-to-eol"], &sperner);
    let ends = ok(&["solve", "eol", "--all"], &eol);
    assert_eq!(ends.lines().count(), all.lines().count());

    let line = ok(&["gen", "eol", "--n", "3", "--seed", "2"], "");
    let dbf = ok(&["reduce", "eol-to-dbf"], &line);
    let points = ok(&["solve", "dbf"], &dbf);
    let solutions = ok(&["solve", "eol", "--all"], &line);
    assert!(!points.is_empty());
    for p in points.lines() {
        let bits = p.split_whitespace().nth(2).unwrap();
        assert!(solutions.lines().any(|s| s.ends_with(bits)), "{p}");
    }

    let game = ok(&["fixture", "gmp3"], "");
    let sym = ok(&["reduce", "symmetrize"], &game);
    assert!(sym.contains("ACTIONS 6 6"));
    ok(&["solve", "supenum"], &sym);
}

#[test]
fn render_writes_ppm() {
    let sperner = ok(&["gen", "sperner", "--m", "2", "--seed", "1"], "");
    let src = scratch("s.txt", sperner.as_bytes());
    let dst = src.with_file_name("s.ppm");
    ok(&["render", src.to_str().unwrap(), "--ppm", dst.to_str().unwrap()], "");
    let bytes = std::fs::read(&dst).unwrap();
    assert!(bytes.starts_with(b"P6\n5 5\n255\n"));
    assert_eq!(bytes.len(), b"P6\n5 5\n255\n".len() + 5 * 5 * 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["gen", "dbf", "--n", "3", "--lines", "2", "--seed", "7"],
        vec!["gen", "game", "--actions", "2,3", "--seed", "1"],
    ] {
        assert_eq!(ok(&args, ""), ok(&args, ""));
    }
    let inst = ok(&["gen", "eol", "--n", "8", "--lines", "3", "--seed", "1"], "");
    assert_eq!(ok(&["solve", "eol", "--all"], &inst), ok(&["--threads", "4", "solve", "eol", "--all"], &inst));
}

#[test]
fn error_classes_exit_with_two() {
    for (args, stdin, needle) in [
        (vec!["fixture", "nope"], "", "unknown fixture"),
        (vec!["solve", "eol"], "GARBAGE\n", "format error"),
        (vec!["solve", "supenum", "/nonexistent/game.txt"], "", "cannot read"),
        (vec!["frobnicate"], "", "unrecognized subcommand"),
    ] {
        let out = ppad(&args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(needle), "{args:?}");
    }
    let game = ok(&["fixture", "rps"], "");
    let p = scratch("u.txt", b"PROFILE\n1/3 1/3 1/3\n1/3 1/3 1/3\n");
    let out = ppad(&["verify", "nash", "--eps", "-1/2", "--profile", p.to_str().unwrap()], &game);
    assert_eq!(out.status.code(), Some(2));
}
