use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rspin")).args(args).output().expect("run rspin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn compute_values() {
    let o = rspin(&["compute", "r=7;m=3,4,5,6,6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2/49\nnormalized 1\nmethod closed-formula\n");

    let o = rspin(&["compute", "r=10;m=3,4,5,10"]);
    assert_eq!(stdout(&o).lines().next(), Some("0"));

    for method in ["closed", "oracle", "auto"] {
        let o = rspin(&["compute", "r=8;m=4,5,5,6,7", "--method", method]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("1/16\nnormalized 2\n"), "{method}");
    }
}

#[test]
fn compute_rejects_bad_input() {
    assert_eq!(rspin(&["compute", "r=10;m=5,5,6,6,?"]).status.code(), Some(2));
    // Valid but not numerical.
    assert_eq!(rspin(&["compute", "r=10;m=3,4,5,5,6"]).status.code(), Some(2));
    assert_eq!(rspin(&["compute", "r=5;m=2,3,3,3"]).status.code(), Some(2));
    assert_eq!(rspin(&["compute", "r=7;m=3,4,5,6,6", "--method", "magic"]).status.code(), Some(2));
}

#[test]
fn tables() {
    let o = rspin(&["table", "--n", "3", "--r", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.is_empty());
    assert!(text.lines().all(|l| l.ends_with("→ 1")));

    let text = stdout(&rspin(&["table", "--n", "5", "--r", "7"]));
    assert!(text.lines().any(|l| l == "(6,6,5,4,3) → 2/49"));

    let text = stdout(&rspin(&["table", "--n", "4", "--r", "10", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,m1,m2,m3,m4,value"));
    for line in lines {
        let f: Vec<i64> = line.split(',').take(5).map(|x| x.parse().unwrap()).collect();
        let min = f[1..].iter().map(|&m| (m - 1).min(10 - m)).min().unwrap();
        let expected = rspin::rational::format(&rspin::rational::ratio(min, 10));
        assert!(line.ends_with(&format!(",{expected}")), "{line}");
    }

    let text = stdout(&rspin(&["table", "--n", "4", "--r", "10", "--format", "json-lines"]));
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["r"], 10);
    assert!(first["marks"].is_array());
    assert!(first["value"].is_string());
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--n", "5", "--r", "8"];
    let a = stdout(&rspin(&args));
    let b = stdout(&rspin(&["--jobs", "1", "table", "--n", "5", "--r", "8"]));
    assert_eq!(a, b);
}

#[test]
fn tropicalize_with_scale() {
    let o = rspin(&["tropicalize", "r=10;m=3,4,5,5,6", "--scale", "r", "--anchor", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let scaled: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("# scaled ")).collect();
    let expected = [
        "{1,2} 4", "{1,2,3} 0", "{1,2,4} 0", "{1,3} 3", "{1,3,4} 1", "{1,4} 3", "{2,3} 2", "{2,3,4} 2", "{2,4} 2",
        "{3,4} 1",
    ];
    assert_eq!(scaled, expected);
    let boomerangs: Vec<&str> = text.lines().filter(|l| l.starts_with("# boomerang")).collect();
    assert_eq!(boomerangs.len(), 6);
    assert!(boomerangs.iter().all(|l| l.ends_with(" 2/5")));

    let o = rspin(&["tropicalize", "r=10;m=5,5,6,6"]);
    assert!(stdout(&o).ends_with("tree . 2/5\n"));
    assert_eq!(rspin(&["tropicalize", "r=10;m=5,5,6,6,?"]).status.code(), Some(2));
}

fn balance_stdin(doc: &str, extra: &[&str]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rspin"))
        .args(["balance", "-"])
        .args(extra)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn rspin");
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn balance_documents() {
    let divisor = "rspin-cycle 1\nn 5\ndim 1\ntree {1,2} -1\ntree {3,4} 1\ntree {1,2,3} 1\ntree {1,2,4} 1\n";
    let o = balance_stdin(divisor, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("boomerang 1"));

    let lopsided = "rspin-cycle 1\nn 5\ndim 1\ntree {1,2} 1\n";
    assert_eq!(balance_stdin(lopsided, &[]).status.code(), Some(1));

    let crossing = "rspin-cycle 1\nn 6\ndim 2\ntree {1,2}{2,3} 1\n";
    let o = balance_stdin(crossing, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let doc = stdout(&rspin(&["tropicalize", "r=10;m=2,3,4,4,5,6"]));
    let o = balance_stdin(&doc, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("face ")).count() == 25);

    // Tampering with one weight breaks the per-vertex factorization.
    let tampered = doc.replacen(" 0\n", " 1\n", 1);
    assert_ne!(tampered, doc);
    assert_eq!(balance_stdin(&tampered, &[]).status.code(), Some(1));
}

#[test]
fn chambers_and_verify() {
    let o = rspin(&["chambers", "--n", "4", "--r-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("strip failures 0"));

    let o = rspin(&["verify", "formula-vs-oracle", "--n-max", "5", "--r-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok formula-vs-oracle"));

    let o = rspin(&["verify", "all", "--n-max", "5", "--r-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok ")).count(), 11);

    assert_eq!(rspin(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(rspin(&["frobnicate"]).status.code(), Some(2));
}
