use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fieldcas(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fieldcas"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write_script(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("input.fc");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn script_with_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(&dir, "{m,n,p,q#}::Indices(vector).\nC:= A A;\n@substitute!(%)( A = B_{m n} B_{m n} );\n");
    let transcript = dir.path().join("out.txt");
    let out = fieldcas(&[&script, "--transcript", transcript.to_str().unwrap()], "");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "C:= A A;\nC:= B_{m n} B_{m n} B_{p q1} B_{p q1};\n");
    assert_eq!(std::fs::read_to_string(transcript).unwrap(), stdout);
}

#[test]
fn empty_script_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(&dir, "");
    let transcript = dir.path().join("out.txt");
    let out = fieldcas(&[&script, "--transcript", transcript.to_str().unwrap()], "");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(transcript).unwrap(), "");
}

#[test]
fn errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(&dir, "x:= a;\n\nC:= A + ;\ny:= b;\n");
    let out = fieldcas(&[&script], "");
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("x:= a;"));

    let out = fieldcas(&[&script, "--keep-going"], "");
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("y:= b;"));
}

#[test]
fn default_rules_run_after_commands() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(&dir, "x:= b a + a b;\n@distribute!(%);\n");
    let plain = fieldcas(&[&script], "");
    assert!(String::from_utf8(plain.stdout).unwrap().ends_with("x:= b a + a b;\n"));
    let sorted = fieldcas(&[&script, "--default-rules"], "");
    assert!(String::from_utf8(sorted.stdout).unwrap().ends_with("x:= 2 a b;\n"));
}

#[test]
fn interactive_after_script() {
    let dir = tempfile::tempdir().unwrap();
    let script = write_script(&dir, "x:= a;\n");
    let out = fieldcas(&[&script, "--interactive"], "y:= @(x) @(x);\n");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("x:= a;\n"));
    assert!(stdout.contains("y:= a a;"), "{stdout}");
}
