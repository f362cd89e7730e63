use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/cli-examples")
}

struct Case {
    args: Vec<String>,
    stdout: String,
    exit: i32,
}

fn parse_case(text: &str) -> Case {
    let mut lines: Vec<&str> = text.lines().collect();
    let cmd = lines.remove(0).strip_prefix("$ fssp ").expect("command line");
    let last = lines.pop().expect("exit line");
    let exit = last.strip_prefix("# exit ").expect("exit line").parse().unwrap();
    let mut stdout = lines.join("\n");
    if !lines.is_empty() {
        stdout.push('\n');
    }
    Case { args: cmd.split_whitespace().map(str::to_owned).collect(), stdout, exit }
}

#[test]
fn documented_examples() {
    let dir = examples_dir();
    let mut names: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    names.sort();
    assert!(names.len() >= 10, "missing golden files in {}", dir.display());
    for name in names {
        let case = parse_case(&fs::read_to_string(&name).unwrap());
        let out = Command::new(env!("CARGO_BIN_EXE_fssp")).args(&case.args).current_dir(&dir).output().unwrap();
        let shown = name.file_name().unwrap().to_string_lossy();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), case.stdout, "{shown}");
        assert_eq!(out.status.code(), Some(case.exit), "{shown}");
    }
}
