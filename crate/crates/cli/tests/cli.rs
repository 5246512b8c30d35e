use std::io::Write;
use std::process::{Command, Output, Stdio};

use endotype_cli::parse_report;
use endotype_core::bw_monoid::Endotype;

fn endotype(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_endotype"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gl11_split_report() {
    let o = endotype(&["algebra=gl(1|1)", "form=split", "weight=5,7"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let keys: Vec<&str> = text.lines().map(|l| l.split_once(": ").unwrap().0).collect();
    assert_eq!(keys, ["endotype", "divalg", "splits", "lambdaB", "r", "c_lambda"]);
    let rep = parse_report(&text).unwrap();
    assert_eq!(rep.endotype, Endotype::Real(0));
    assert_eq!(rep.emit(), text);
}

#[test]
fn gl12_unitary_with_negative_weights() {
    let o = endotype(&["algebra=gl(1|2)", "borel=edd", "form=unitary(1,i,i)", "weight=1+1i,", "3/2,", "-5/2", "--verify"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = parse_report(&stdout(&o)).unwrap();
    assert_eq!(rep.endotype, Endotype::Real(4));
    assert_eq!(rep.r, Some(2));
}

#[test]
fn verbose_trace_goes_to_stderr() {
    let o = endotype(&["--verbose", "algebra=gl(1|1)", "form=u(1,0|1,0)", "weight=1/2+1i,-1/2+2i"], None);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(err.contains("odd reflection 1 at e1-d1"), "{err}");
    assert_eq!(parse_report(&stdout(&o)).unwrap().endotype, Endotype::Real(6));
}

#[test]
fn exit_codes() {
    assert_eq!(endotype(&["algebra=gl(0|0)", "form=split", "weight=1"], None).status.code(), Some(1));
    assert_eq!(endotype(&["--no-such-flag"], None).status.code(), Some(1));
    assert_eq!(endotype(&[], None).status.code(), Some(1));
    // the diagonal su(1,1) Borel is not tau-compatible
    let o = endotype(&["algebra=gl(2)", "form=u(1,1|0,0)", "weight=1,0", "route=cascade"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition failed"));
}

#[test]
fn batch_keeps_input_order() {
    // su(4) with Dynkin labels (a, b, c) written as sl(4) weights
    let mut input = String::new();
    let mut expect = Vec::new();
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 2, 0), (0, 3, 0), (2, 0, 0), (1, 1, 1), (0, 1, 1)] {
        input.push_str(&format!("algebra=sl(4) form=compact weight={},{},{},0\n", a + b + c, b + c, c));
        // n = 2m with m = 2: quaternionic iff m * b is odd, which never happens
        expect.push(if a != c { Endotype::Complex(0) } else { Endotype::Real(0) });
    }
    let o = endotype(&["--batch", "-"], Some(&input));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), expect.len());
    for ((block, line), want) in blocks.iter().zip(input.lines()).zip(&expect) {
        assert!(block.starts_with(&format!("# {line}")));
        assert_eq!(parse_report(block).unwrap().endotype, *want, "{line}");
    }
}

#[test]
fn batch_reports_errors_inline() {
    let o = endotype(&["--batch", "-"], Some("algebra=gl(1|1) form=split weight=1\nalgebra=q(1) form=split weight=1\n"));
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert!(blocks[0].contains("error: parse error"));
    assert_eq!(parse_report(blocks[1]).unwrap().endotype, Endotype::Real(7));
}

#[test]
fn sl22_default_borel() {
    let o = endotype(&["algebra=psl(2|2)", "form=split", "weight=1,2,-1,-2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(parse_report(&stdout(&o)).unwrap().endotype, Endotype::Real(0));
    let o = endotype(&["algebra=sl(2|2)", "borel=eedd", "form=split", "weight=1,2,3,4"], None);
    assert_eq!(o.status.code(), Some(1));
}
