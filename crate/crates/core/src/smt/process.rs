use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::model::Theory;

/// Environment variable overriding the default solver command line.
pub const SOLVER_ENV: &str = "BOOLABS_SOLVER";

/// Default per-query timeout.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

/// An SMT-LIB2 solver command line reading a script from stdin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverCommand {
    pub program: String,
    pub args: Vec<String>,
}

impl SolverCommand {
    /// Splits a command line on whitespace.
    pub fn parse(line: &str) -> Result<SolverCommand> {
        let mut parts = line.split_whitespace().map(str::to_string);
        let program = parts
            .next()
            .ok_or_else(|| Error::Solver("empty solver command".into()))?;
        Ok(SolverCommand {
            program,
            args: parts.collect(),
        })
    }

    /// `$BOOLABS_SOLVER` if set, else `z3 -in`.
    pub fn from_env() -> SolverCommand {
        std::env::var(SOLVER_ENV)
            .ok()
            .and_then(|s| SolverCommand::parse(&s).ok())
            .unwrap_or_default()
    }
}

impl Default for SolverCommand {
    fn default() -> Self {
        SolverCommand {
            program: "z3".into(),
            args: vec!["-in".into()],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatResult {
    Sat,
    Unsat,
    Unknown,
}

/// A long-lived solver subprocess. Each query is followed by `(reset)`
/// rather than run in a `push`/`pop` scope: in incremental mode some solvers
/// (z3) switch to engines that answer `unknown` on quantified arithmetic.
pub struct SolverProcess {
    child: Child,
    stdin: ChildStdin,
    replies: Receiver<String>,
    timeout: Duration,
    header: String,
    dead: bool,
}

impl SolverProcess {
    pub fn spawn(cmd: &SolverCommand, theory: Theory, timeout: Duration) -> Result<SolverProcess> {
        let mut child = Command::new(&cmd.program)
            .args(&cmd.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Solver(format!("cannot start `{}`: {e}", cmd.program)))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        let header = format!("(set-option :print-success false)\n(set-logic {})\n", theory.tag());
        let mut p = SolverProcess {
            child,
            stdin,
            replies: rx,
            timeout,
            header: header.clone(),
            dead: false,
        };
        p.send(&header)?;
        Ok(p)
    }

    fn send(&mut self, text: &str) -> Result<()> {
        if self.dead {
            return Err(Error::Solver("solver process is no longer running".into()));
        }
        self.stdin
            .write_all(text.as_bytes())
            .and_then(|_| self.stdin.flush())
            .map_err(|e| {
                self.dead = true;
                Error::Solver(format!("writing to solver: {e}"))
            })
    }

    fn read_verdict(&mut self) -> Result<SatResult> {
        loop {
            let line = match self.replies.recv_timeout(self.timeout) {
                Ok(l) => l,
                Err(RecvTimeoutError::Timeout) => {
                    self.dead = true;
                    let _ = self.child.kill();
                    return Err(Error::Solver(format!(
                        "query timed out after {} ms",
                        self.timeout.as_millis()
                    )));
                }
                Err(RecvTimeoutError::Disconnected) => {
                    self.dead = true;
                    return Err(Error::Solver("solver exited unexpectedly".into()));
                }
            };
            match line.trim() {
                "" | "success" => continue,
                "sat" => return Ok(SatResult::Sat),
                "unsat" => return Ok(SatResult::Unsat),
                "unknown" => return Ok(SatResult::Unknown),
                other => return Err(Error::Solver(format!("unexpected solver reply: {other}"))),
            }
        }
    }

    /// Runs `body` (declarations and assertions) on a clean solver state and
    /// returns the `check-sat` answer.
    pub fn check_sat(&mut self, body: &str) -> Result<SatResult> {
        let text = format!("{body}\n(check-sat)\n(reset)\n{}", self.header);
        self.send(&text)?;
        self.read_verdict()
    }
}

impl Drop for SolverProcess {
    fn drop(&mut self) {
        if !self.dead {
            let _ = self.stdin.write_all(b"(exit)\n");
            let _ = self.stdin.flush();
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
