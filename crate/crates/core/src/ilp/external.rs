//! Running an external MILP solver through a command template.

use std::io::Read;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::{parse_solution, IlpError, LinearProgram, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Shell command with `{input}` (LP file) and `{output}` (solution file)
    /// placeholders.
    pub command: String,
    pub timeout: Option<Duration>,
}

impl SolverConfig {
    pub fn new(command: impl Into<String>) -> Self {
        SolverConfig {
            command: command.into(),
            timeout: None,
        }
    }
}

const POLL: Duration = Duration::from_millis(10);

fn quote(path: &std::path::Path) -> String {
    format!("'{}'", path.display().to_string().replace('\'', r"'\''"))
}

/// Writes `lp_text` to a temporary file, runs the configured command through
/// `sh -c`, and parses the solution file it leaves behind against `lp`.
pub fn run_solver(lp_text: &str, lp: &LinearProgram, config: &SolverConfig) -> Result<Solution, IlpError> {
    for placeholder in ["{input}", "{output}"] {
        if !config.command.contains(placeholder) {
            return Err(IlpError::ConfigError(format!(
                "solver command lacks the {placeholder} placeholder"
            )));
        }
    }
    let io = |e: std::io::Error| IlpError::SolverFailed(e.to_string());
    let dir = tempfile::tempdir().map_err(io)?;
    let input = dir.path().join("model.lp");
    let output = dir.path().join("model.sol");
    std::fs::write(&input, lp_text).map_err(io)?;
    let command = config
        .command
        .replace("{input}", &quote(&input))
        .replace("{output}", &quote(&output));

    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&command)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(io)?;
    // drain stderr on a thread so a chatty solver cannot block on the pipe
    let mut stderr = child.stderr.take().expect("piped stderr");
    let reader = thread::spawn(move || {
        let mut buf = String::new();
        let _ = stderr.read_to_string(&mut buf);
        buf
    });
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait().map_err(io)? {
            break status;
        }
        if config.timeout.is_some_and(|t| start.elapsed() >= t) {
            let _ = child.kill();
            let _ = child.wait();
            return Err(IlpError::SolverFailed(format!(
                "timed out after {:.1}s",
                config.timeout.unwrap().as_secs_f64()
            )));
        }
        thread::sleep(POLL);
    };
    let err_text = reader.join().unwrap_or_default();
    if !status.success() {
        return Err(IlpError::SolverFailed(format!(
            "`{}` exited with {}: {}",
            config.command,
            status,
            err_text.trim()
        )));
    }
    let text = std::fs::read_to_string(&output)
        .map_err(|e| IlpError::SolverFailed(format!("no solution file: {e}")))?;
    parse_solution(&text, lp)
}
