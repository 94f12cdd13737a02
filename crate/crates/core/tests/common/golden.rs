//! Golden cases for the command-line tool, listed in `golden/cases.txt`.
//!
//! Each line is `name exit command input [flags...]`; the expected stdout is
//! stored in `golden/<name>.out`. Setting `LINFORM_BLESS=1` rewrites the
//! stored outputs instead of comparing against them.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub struct GoldenCase {
    pub name: String,
    pub exit: i32,
    pub command: String,
    pub input: String,
    pub flags: Vec<String>,
}

pub struct CliRun {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn load_cases() -> Vec<GoldenCase> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut w = l.split_whitespace().map(String::from);
            let name = w.next().unwrap();
            let exit = w.next().unwrap().parse().unwrap();
            let command = w.next().unwrap();
            let input = w.next().unwrap();
            GoldenCase {
                name,
                exit,
                command,
                input,
                flags: w.collect(),
            }
        })
        .collect()
}

pub fn run_cli<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_linform"))
        .args(args)
        .output()
        .expect("failed to launch linform");
    CliRun {
        exit: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

impl GoldenCase {
    pub fn args(&self, extra: &[&str]) -> Vec<String> {
        let input = golden_dir().join(&self.input);
        let mut args = vec![
            self.command.clone(),
            "--input".into(),
            input.to_string_lossy().into_owned(),
        ];
        args.extend(self.flags.iter().cloned());
        args.extend(extra.iter().map(|s| s.to_string()));
        args
    }

    /// Runs the case in both output formats and returns every mismatch found.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let run = run_cli(&self.args(&[]));
        if run.exit != self.exit {
            problems.push(format!(
                "{}: exit {} expected {} (stderr: {})",
                self.name,
                run.exit,
                self.exit,
                run.stderr.trim()
            ));
        }
        let path = golden_dir().join(format!("{}.out", self.name));
        if std::env::var_os("LINFORM_BLESS").is_some() {
            std::fs::write(&path, &run.stdout).unwrap();
        } else {
            let want = std::fs::read_to_string(&path).unwrap_or_default();
            if run.stdout != want {
                problems.push(format!("{}: stdout {:?} expected {:?}", self.name, run.stdout, want));
            }
        }
        // Input errors print nothing on stdout; a search cut short still reports.
        if run.stdout.is_empty() {
            if self.exit != 2 || run.stderr.is_empty() {
                problems.push(format!("{}: no report and no error message", self.name));
            }
        } else {
            match serde_json::from_str::<Value>(&run.stdout) {
                Ok(v) => {
                    let again = serde_json::to_string(&v).unwrap();
                    if again != run.stdout.trim_end() {
                        problems.push(format!("{}: JSON output is not stable", self.name));
                    }
                }
                Err(e) => problems.push(format!("{}: stdout is not JSON: {e}", self.name)),
            }
        }
        let tsv = run_cli(&self.args(&["--format", "tsv"]));
        if tsv.exit != run.exit {
            problems.push(format!(
                "{}: tsv exit {} differs from json exit {}",
                self.name, tsv.exit, run.exit
            ));
        }
        problems
    }
}
