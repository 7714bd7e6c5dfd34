use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersat"))
        .args(args)
        .env_remove("SUPERSAT_PERM_CAP")
        .output()
        .expect("binary runs")
}

fn first_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).lines().next().unwrap_or("").to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn formula_example() {
    let o = run(&["formula", "--sets", "-n", "6", "-k", "2", "-s", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "12");
}

#[test]
fn three_set_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fam.txt");
    std::fs::write(&f, "# three sets\n4 2\n1,2\n3,4\n\n1,3\n").unwrap();
    let o = run(&["disj-sets", "--file", p(&f)]);
    assert_eq!(first_line(&o), "1");
    let o = run(&["disj-sets", "--file", p(&f), "--zeta"]);
    assert_eq!(first_line(&o), "1");
}

#[test]
fn lex_and_ball_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (n, k, s) in [(7, 3, 20u32), (9, 2, 17), (8, 4, 41)] {
        let f = dir.path().join(format!("lex{n}{k}{s}.txt"));
        let (n, k, s) = (n.to_string(), k.to_string(), s.to_string());
        assert!(run(&["lex", "-n", &n, "-k", &k, "-s", &s, "--out", p(&f)]).status.success());
        let counted = first_line(&run(&["disj-sets", "--file", p(&f)]));
        let formula = first_line(&run(&["formula", "--sets", "-n", &n, "-k", &k, "-s", &s]));
        assert_eq!(counted, formula);
        // plain output without --out is the file itself
        let piped = run(&["lex", "-n", &n, "-k", &k, "-s", &s]);
        assert_eq!(String::from_utf8(piped.stdout).unwrap(), std::fs::read_to_string(&f).unwrap());
    }
    let b = dir.path().join("ball.txt");
    assert!(run(&["ball", "-n", "8", "-k", "3", "--ell", "2", "-s", "30", "--out", p(&b)]).status.success());
    let a = first_line(&run(&["disj-sets", "--file", p(&b)]));
    let z = first_line(&run(&["disj-sets", "--file", p(&b), "--zeta"]));
    assert_eq!(a, z);
}

#[test]
fn perm_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("perms.txt");
    for s in ["1", "7", "13", "24"] {
        assert!(run(&["perm-lex", "-n", "4", "-s", s, "--out", p(&f)]).status.success());
        let counted = first_line(&run(&["disj-perms", "--file", p(&f)]));
        assert_eq!(counted, first_line(&run(&["formula", "--perms", "-n", "4", "-s", s])));
    }
}

#[test]
fn counterexample_table() {
    let o = run(&["counterexample", "-k", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["disj_f"], "8694");
    assert_eq!(v["disj_l"], "8750");
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn sweep_csv_has_row_per_class() {
    let o = run(&["intgraph", "--sweep", "--k1-max", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    // header plus 1 + 2 + 4 + 10 classes
    assert_eq!(text.lines().count(), 1 + 17);
    assert!(text.starts_with("points,k1,k2,k3,k4,p3bar,canonical,"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["disj-sets", "--file", "/nonexistent/fam.txt"]).status.code(), Some(2));
    assert_eq!(run(&["formula", "--sets", "-n", "4", "-k", "2", "-s", "7"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "4 2\n1,2,3\n").unwrap();
    assert_eq!(run(&["disj-sets", "--file", p(&f)]).status.code(), Some(2));
    // an intersecting family that is not maximal is an input error for --pq
    std::fs::write(&f, "5 2\n1,2\n1,3\n").unwrap();
    assert_eq!(run(&["shadow", "--file", p(&f), "--level", "1", "--pq"]).status.code(), Some(2));
    // n = 5, s = 6 sits outside the range where lex must win, so the discrepancy passes
    assert_eq!(run(&["oracle-sets", "-n", "5", "-k", "2", "-s", "6"]).status.code(), Some(0));
}

#[test]
fn violation_exits_one() {
    // far below the range where the inequality is claimed, the margin is positive
    let o = run(&["typicality", "-n", "10", "-k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_line(&o), "395");
    assert!(String::from_utf8_lossy(&o.stdout).contains("certifies: false"));
    let o = run(&["typicality", "-n", "620", "-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.toml");
    std::fs::write(&c, "perm_cap = 3\nformat = \"json\"\n").unwrap();
    let cfg = p(&c);
    assert_eq!(run(&["--config", cfg, "perm-lex", "-n", "4", "-s", "2"]).status.code(), Some(2));
    let o = run(&["--config", cfg, "--perm-cap", "4", "formula", "--perms", "-n", "4", "-s", "12"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "18");
    let o = Command::new(env!("CARGO_BIN_EXE_supersat"))
        .args(["--config", cfg, "perm-lex", "-n", "4", "-s", "2"])
        .env("SUPERSAT_PERM_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&c, "no_such_field = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg, "formula", "--perms", "-n", "4", "-s", "1"]).status.code(), Some(2));
}

#[test]
fn verify_all_subset() {
    let o = run(&["verify-all", "--only", "1,5,11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["verify-all", "--only", "14"]).status.code(), Some(2));
}
