//! Run manifests: the deterministic part is embedded in outputs, timings and
//! digests go to a sidecar file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use movoid::gf::{Constants, FieldSpec};
use movoid::Result;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    /// Normalized command line; output paths and thread counts are left out
    /// because they do not change the result.
    pub command: Vec<String>,
    pub parameters: Value,
    pub fields: Vec<FieldSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<Constants>,
}

impl Manifest {
    pub fn new(command: Vec<String>, parameters: Value, fields: Vec<FieldSpec>) -> Self {
        Manifest {
            tool: "movoid",
            version: env!("CARGO_PKG_VERSION"),
            command,
            parameters,
            fields,
            constants: None,
        }
    }

    pub fn with_constants(mut self, constants: Constants) -> Self {
        self.constants = Some(constants);
        self
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }
}

/// Named wall-clock phases in milliseconds.
#[derive(Debug, Default)]
pub struct Timings {
    phases: BTreeMap<String, f64>,
}

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases
            .insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

#[derive(Serialize)]
struct RunRecord<'a> {
    manifest: &'a Manifest,
    timings_ms: &'a BTreeMap<String, f64>,
    sha256: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    path.with_file_name(name)
}

/// Writes the record for `outputs` to `record_path`.
pub fn write_record(
    record_path: &Path,
    manifest: &Manifest,
    timings: &Timings,
    outputs: &[&Path],
) -> Result<()> {
    let mut sha256 = BTreeMap::new();
    for p in outputs {
        let name = p
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        sha256.insert(name, sha256_hex(&fs::read(p)?));
    }
    let record = RunRecord {
        manifest,
        timings_ms: &timings.phases,
        sha256,
    };
    let mut text = serde_json::to_string_pretty(&record)?;
    text.push('\n');
    fs::write(record_path, text)?;
    Ok(())
}

/// Writes `contents` to `path` and its record to `<path>.manifest.json`.
pub fn write_stamped(
    path: &Path,
    contents: &str,
    manifest: &Manifest,
    timings: &Timings,
) -> Result<()> {
    fs::write(path, contents)?;
    write_record(&sidecar_path(path), manifest, timings, &[path])
}
