use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: String,
    pub timings: Vec<StageTiming>,
    pub outputs: Vec<OutputFile>,
    pub quality_flags: Vec<String>,
    pub exit_status: i32,
}

/// Writes files into one directory and keeps the record the manifest needs.
pub struct Artifacts {
    dir: PathBuf,
    files: Vec<String>,
    timings: Vec<StageTiming>,
    pub flags: Vec<String>,
}

impl Artifacts {
    pub fn create(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Artifacts { dir: dir.to_path_buf(), files: Vec::new(), timings: Vec::new(), flags: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// `name` is a bare file name; it is always placed in the output directory.
    pub fn write(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<()> {
        debug_assert!(!name.contains('/'));
        fs::write(self.dir.join(name), bytes)?;
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        Ok(())
    }

    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push(StageTiming { stage: name.to_string(), seconds: t.elapsed().as_secs_f64() });
        out
    }

    /// Digests every emitted file and writes `manifest.json` last.
    pub fn finish(self, config: String, exit_status: i32) -> std::io::Result<RunManifest> {
        let mut outputs = Vec::new();
        for f in &self.files {
            let data = fs::read(self.dir.join(f))?;
            outputs.push(OutputFile { file: f.clone(), bytes: data.len() as u64, sha256: hex(&Sha256::digest(&data)) });
        }
        let manifest = RunManifest {
            tool: "wspectra",
            version: env!("CARGO_PKG_VERSION"),
            config,
            timings: self.timings,
            outputs,
            quality_flags: self.flags,
            exit_status,
        };
        let json = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
        fs::write(self.dir.join("manifest.json"), json)?;
        Ok(manifest)
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
