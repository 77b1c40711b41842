//! Run manifests: a key=value record written alongside every output so a
//! run can be reproduced from its recorded flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub struct RunManifest {
    command: String,
    params: Vec<(String, String)>,
    outputs: Vec<PathBuf>,
    anchor: Option<PathBuf>,
    extras: Vec<(String, String)>,
    started: Instant,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
            outputs: Vec::new(),
            anchor: None,
            extras: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Base path the manifest name derives from, even when the run ends
    /// up writing no output file (e.g. a diverged solve).
    pub fn anchor(&mut self, path: &Path) {
        self.anchor = Some(path.to_path_buf());
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    /// Outcome summary lines (status, iterations, slope, ...).
    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.extras.push((key.to_string(), value.to_string()));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command={}", self.command);
        let _ = writeln!(out, "version={}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.params {
            let _ = writeln!(out, "param.{k}={v}");
        }
        for p in &self.outputs {
            let _ = writeln!(out, "out={}", p.display());
        }
        for (k, v) in &self.extras {
            let _ = writeln!(out, "{k}={v}");
        }
        let _ = writeln!(
            out,
            "wall_time_s={:.6}",
            self.started.elapsed().as_secs_f64()
        );
        out
    }

    /// Writes `<primary output>.manifest` (or the explicit override path).
    pub fn write(&self, explicit: Option<&Path>) -> std::io::Result<()> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => match self.anchor.as_ref().or_else(|| self.outputs.first()) {
                Some(primary) => {
                    let mut os = primary.as_os_str().to_os_string();
                    os.push(".manifest");
                    PathBuf::from(os)
                }
                // Purely stdout runs have nothing to sit alongside.
                None => return Ok(()),
            },
        };
        std::fs::write(path, self.render())
    }
}
