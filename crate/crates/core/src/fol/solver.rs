//! Running an external SMT solver on emitted text.

use std::io::{Read, Write};
use std::path::Path;
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// What the solver said about a sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverVerdict {
    Valid,
    /// Falsifiable; the solver output (model included in refutation form).
    Invalid(String),
    Unknown(String),
    Timeout,
}

impl SolverVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SolverVerdict::Valid => "valid",
            SolverVerdict::Invalid(_) => "invalid",
            SolverVerdict::Unknown(_) => "unknown",
            SolverVerdict::Timeout => "timeout",
        }
    }
}

/// Command line of an SMT-LIB solver reading a script on stdin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solver {
    pub program: String,
    pub args: Vec<String>,
}

impl Solver {
    pub fn z3() -> Self {
        Solver::for_program("z3")
    }

    /// Reads SMT-LIB from stdin; z3 and cvc5 get their stdin flags.
    pub fn for_program(program: &str) -> Self {
        let base = Path::new(program)
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or(program);
        let args: &[&str] = if base.starts_with("z3") {
            &["-smt2", "-in"]
        } else if base.starts_with("cvc5") {
            &["--lang=smt2"]
        } else {
            &[]
        };
        Solver {
            program: program.to_string(),
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }

    /// True when the program starts and answers `--version`.
    pub fn available(&self) -> bool {
        Command::new(&self.program)
            .arg("--version")
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .status()
            .map(|s| s.success())
            .unwrap_or(false)
    }

    /// Feeds `script` to the solver and reads its first answer. Both forms
    /// assert the negation, so `unsat` means valid and `sat` invalid.
    pub fn run(&self, script: &str, timeout: Duration) -> Result<SolverVerdict> {
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Solver(format!("cannot start `{}`: {e}", self.program)))?;
        let mut stdin = child.stdin.take().expect("piped stdin");
        let mut stdout = child.stdout.take().expect("piped stdout");
        let text = script.to_string();
        let writer = thread::spawn(move || {
            let _ = stdin.write_all(text.as_bytes());
        });
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let mut out = String::new();
            let _ = stdout.read_to_string(&mut out);
            let _ = tx.send(out);
        });
        let start = Instant::now();
        let out = loop {
            if let Ok(out) = rx.recv_timeout(Duration::from_millis(20)) {
                break Some(out);
            }
            if start.elapsed() >= timeout {
                break None;
            }
        };
        let _ = child.kill();
        let _ = child.wait();
        let _ = writer.join();
        let Some(out) = out else {
            return Ok(SolverVerdict::Timeout);
        };
        let first = out.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        Ok(match first {
            "unsat" => SolverVerdict::Valid,
            "sat" => SolverVerdict::Invalid(out.trim().to_string()),
            "unknown" => SolverVerdict::Unknown(out.trim().to_string()),
            "timeout" => SolverVerdict::Timeout,
            _ => return Err(Error::Solver(format!("unexpected output: {}", out.trim()))),
        })
    }
}
