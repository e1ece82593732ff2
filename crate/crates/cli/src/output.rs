//! Output routing and the manifest lifecycle.
//!
//! With `--out` the target directory gets a manifest first (marked
//! incomplete), then the data files, then the manifest again with content
//! hashes and the complete flag, so an interrupted run is detectable.
//! Without `--out`, the primary data file goes to stdout and secondary
//! files are skipped with a note on stderr, keeping stdout pipeable.

use crate::config::{CliError, CliResult};
use biphoton::io::{write_manifest, RunManifest};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

pub enum Output {
    Dir { dir: PathBuf, manifest: RunManifest },
    Stdout,
}

impl Output {
    pub fn new(
        out: Option<PathBuf>,
        scenario: &str,
        parameters: BTreeMap<String, String>,
    ) -> CliResult<Self> {
        match out {
            Some(dir) => {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| CliError::Run(format!("cannot create {}: {e}", dir.display())))?;
                let manifest = RunManifest::new(scenario, env!("CARGO_PKG_VERSION"), parameters);
                write_manifest(&dir.join("manifest.json"), &manifest)?;
                Ok(Output::Dir { dir, manifest })
            }
            None => Ok(Output::Stdout),
        }
    }

    /// Emits the file every run must produce; printed to stdout when no
    /// output directory was given.
    pub fn emit_primary(&mut self, name: &str, content: &str) -> CliResult<()> {
        match self {
            Output::Dir { .. } => self.emit(name, content),
            Output::Stdout => {
                std::io::stdout()
                    .write_all(content.as_bytes())
                    .map_err(|e| CliError::Run(e.to_string()))?;
                Ok(())
            }
        }
    }

    /// Emits an additional file; skipped (with a stderr note) in stdout
    /// mode.
    pub fn emit(&mut self, name: &str, content: &str) -> CliResult<()> {
        match self {
            Output::Dir { dir, manifest } => {
                std::fs::write(dir.join(name), content)
                    .map_err(|e| CliError::Run(format!("cannot write {name}: {e}")))?;
                manifest.record_output(name, content.as_bytes());
                Ok(())
            }
            Output::Stdout => {
                eprintln!("({name} not written; pass --out <dir> to keep it)");
                Ok(())
            }
        }
    }

    /// Marks the manifest complete once all data files are on disk.
    pub fn finalize(self) -> CliResult<()> {
        if let Output::Dir { dir, mut manifest } = self {
            manifest.complete = true;
            write_manifest(&dir.join("manifest.json"), &manifest)?;
        }
        Ok(())
    }
}
