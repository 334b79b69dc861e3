//! Command layer of the `tricat` binary: every command returns an [`Outcome`]
//! holding a JSON report, DOT graphs and a pass flag. The binary and the
//! scenario runner only decide where these go.

pub mod commands;
pub mod dot;
pub mod figures;
pub mod scenario;

use serde_json::Value;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use tricat::cover::{CoverVertex, OrbitQuiver};
use tricat::presets::{self, Preset};
use tricat::stable::StableModel;
use tricat::tricat::{StObject, TriCat};
use tricat::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "TRICAT_OUT";

/// Result of one command.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub report: Value,
    /// Artifact name (without extension) to DOT source.
    pub dots: BTreeMap<String, String>,
    pub passed: bool,
    /// Names of the checks that failed, with their witnesses.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn new(report: Value) -> Self {
        Outcome { report, dots: BTreeMap::new(), passed: true, failures: Vec::new() }
    }

    /// Records a named check; a failing check is kept as a witness.
    pub fn check(&mut self, name: &str, ok: bool) {
        if !ok {
            self.passed = false;
            self.failures.push(name.to_string());
        }
    }

    /// JSON payload: the report with the verdict and failures attached.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "passed": self.passed,
            "failures": self.failures,
            "report": self.report,
        })
    }

    /// One Markdown section for the summary file.
    pub fn markdown(&self, title: &str) -> String {
        let mut s = format!("## {title}\n\n- verdict: {}\n", if self.passed { "pass" } else { "FAIL" });
        for f in &self.failures {
            s.push_str(&format!("- failed: {f}\n"));
        }
        for name in self.dots.keys() {
            s.push_str(&format!("- graph: `{title}_{name}.dot`\n"));
        }
        s.push('\n');
        s
    }

    /// Writes `{stem}.json` and one `{stem}_{name}.dot` per graph.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        fs::create_dir_all(dir).map_err(io_err)?;
        let json = serde_json::to_string_pretty(&self.to_json()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        fs::write(dir.join(format!("{stem}.json")), json + "\n").map_err(io_err)?;
        for (name, src) in &self.dots {
            fs::write(dir.join(format!("{stem}_{name}.dot")), src).map_err(io_err)?;
        }
        Ok(())
    }
}

pub fn io_err(e: std::io::Error) -> Error {
    Error::InvalidInput(e.to_string())
}

/// Category under study: a validated preset or a stable category built from an algebra file.
pub struct Context {
    pub cat: TriCat,
    pub preset: Option<Preset>,
    orbit: Option<OrbitQuiver>,
}

impl Context {
    pub fn preset(name: &str) -> Result<Self> {
        let p = presets::load(name)?;
        let orbit = Some(OrbitQuiver::new(p.info.spec())?);
        Ok(Context { cat: p.cat.clone(), preset: Some(p), orbit })
    }

    /// Stable category of the self-injective algebra described by a JSON file.
    pub fn algebra_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(io_err)?;
        let spec = tricat::algebra::AlgebraSpec::from_json(&text)?;
        let alg = tricat::algebra::QuiverAlgebra::from_spec(&spec)?;
        let name = path.file_stem().map_or("algebra".into(), |s| s.to_string_lossy().into_owned());
        let model = StableModel::build(alg, &name)?;
        Ok(Context { cat: model.cat, preset: None, orbit: None })
    }

    /// Resolves one token: a label, or a cover coordinate written `p:i`.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some((p, i)) = token.split_once(':') {
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::UnknownLabel(token.to_string()));
            return self.resolve_coord((parse(p)?, parse(i)?));
        }
        self.cat.id_of(token.trim())
    }

    pub fn resolve_coord(&self, v: CoverVertex) -> Result<usize> {
        let unknown = || Error::UnknownLabel(format!("{}:{}", v.0, v.1));
        let oq = self.orbit.as_ref().ok_or_else(unknown)?;
        if !oq.spec.in_range(v) {
            return Err(unknown());
        }
        let target = oq.orbit_of(v);
        self.cat.cover.iter().position(|c| c.is_some_and(|c| oq.orbit_of(c) == target)).ok_or_else(unknown)
    }

    /// Parses a comma-separated list of labels or coordinates.
    pub fn object(&self, list: &str) -> Result<StObject> {
        list.split(',').filter(|s| !s.trim().is_empty()).map(|s| self.resolve(s)).collect()
    }

    pub fn labels(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&x| self.cat.labels[x].clone()).collect()
    }
}
