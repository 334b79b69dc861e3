//! Scenario files: a category, named objects and a list of commands, run in
//! order with all artifacts written to one directory.
//!
//! ```json
//! {
//!   "preset": "A9_t3s1",
//!   "objects": { "T": "a,b,c", "R": ["c"], "X": [[2, 5]] },
//!   "commands": [
//!     { "command": "mutate", "T": "T", "R": "R" },
//!     { "command": "verify", "T": "T", "R": "R", "theorem": "fbar" }
//!   ],
//!   "output": "out"
//! }
//! ```

use crate::commands::{self, Theorem};
use crate::figures::{self, Figure};
use crate::{io_err, Context, Outcome};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use tricat::tricat::StObject;
use tricat::{Error, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub preset: Option<String>,
    /// Path of an algebra JSON file, relative to the scenario file.
    pub algebra: Option<PathBuf>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub commands: Vec<Command>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ObjectSpec {
    List(String),
    Items(Vec<Item>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Item {
    Label(String),
    Coord([i64; 2]),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Validate,
    Mutate {
        #[serde(rename = "T")]
        t: String,
        #[serde(rename = "R")]
        r: String,
        #[serde(default)]
        indecomposable_only: bool,
    },
    Subcat {
        #[serde(rename = "T")]
        t: String,
        #[serde(rename = "R")]
        r: Option<String>,
        #[serde(default)]
        cbart: bool,
    },
    Verify {
        #[serde(rename = "T")]
        t: String,
        #[serde(rename = "R")]
        r: String,
        theorem: String,
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        two_of_three: bool,
    },
    Reproduce {
        figure: String,
        #[serde(default)]
        seed: u64,
    },
    EnumerateRigid,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Mutate { .. } => "mutate",
            Command::Subcat { .. } => "subcat",
            Command::Verify { .. } => "verify",
            Command::Reproduce { .. } => "reproduce",
            Command::EnumerateRigid => "enumerate-rigid",
        }
    }

    fn needs_category(&self) -> bool {
        !matches!(self, Command::Reproduce { .. })
    }
}

/// Line and column (1-based) of the first occurrence of `"needle"` in `text`.
fn position_of(text: &str, needle: &str) -> (usize, usize) {
    let quoted = format!("\"{needle}\"");
    match text.find(&quoted) {
        None => (0, 0),
        Some(off) => {
            let before = &text[..off];
            let line = before.matches('\n').count() + 1;
            let col = before.rfind('\n').map_or(off, |nl| off - nl - 1) + 1;
            (line, col)
        }
    }
}

fn located(text: &str, e: Error) -> Error {
    match e {
        Error::UnknownLabel(l) => {
            let (line, col) = position_of(text, &l);
            Error::UnknownLabel(format!("{l} at line {line}, column {col}"))
        }
        Error::UnknownPreset(p) => {
            let (line, col) = position_of(text, &p);
            Error::UnknownPreset(format!("{p} at line {line}, column {col}"))
        }
        e => e,
    }
}

pub fn parse(text: &str) -> Result<Scenario> {
    if text.trim().is_empty() {
        return Ok(Scenario::default());
    }
    serde_json::from_str(text).map_err(|e| Error::ParseError { msg: e.to_string(), line: e.line(), column: e.column() })
}

/// Outcome of a whole scenario.
#[derive(Debug, Default)]
pub struct Run {
    pub outcomes: Vec<(String, Outcome)>,
    pub output: Option<PathBuf>,
}

impl Run {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| o.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

/// Runs a scenario file. `out_override` replaces the file's output directory.
pub fn run_file(path: &Path, out_override: Option<&Path>) -> Result<Run> {
    let text = fs::read_to_string(path).map_err(io_err)?;
    let base = path.parent().unwrap_or(Path::new("."));
    run_text(&text, base, out_override)
}

pub fn run_text(text: &str, base: &Path, out_override: Option<&Path>) -> Result<Run> {
    let sc = parse(text)?;
    run(&sc, base, out_override).map_err(|e| located(text, e))
}

fn run(sc: &Scenario, base: &Path, out_override: Option<&Path>) -> Result<Run> {
    if sc.commands.is_empty() {
        return Ok(Run::default());
    }
    let ctx = if sc.commands.iter().any(Command::needs_category) {
        Some(match (&sc.preset, &sc.algebra) {
            (Some(p), None) => Context::preset(p)?,
            (None, Some(a)) => Context::algebra_file(&base.join(a))?,
            _ => return Err(Error::InvalidInput("exactly one of preset and algebra is required".into())),
        })
    } else {
        None
    };
    let mut objects: BTreeMap<&str, StObject> = BTreeMap::new();
    if let Some(ctx) = &ctx {
        for (name, spec) in &sc.objects {
            let ids = match spec {
                ObjectSpec::List(s) => ctx.object(s)?,
                ObjectSpec::Items(items) => items
                    .iter()
                    .map(|i| match i {
                        Item::Label(l) => ctx.resolve(l),
                        Item::Coord([p, i]) => ctx.resolve_coord((*p, *i)),
                    })
                    .collect::<Result<_>>()?,
            };
            objects.insert(name, ids);
        }
    }
    let get = |name: &str| objects.get(name).cloned().ok_or_else(|| Error::UnknownLabel(name.to_string()));
    let mut run = Run::default();
    for (k, cmd) in sc.commands.iter().enumerate() {
        let ctx_ref = || ctx.as_ref().expect("category loaded");
        let out = match cmd {
            Command::Validate => {
                let name = sc.preset.as_deref().ok_or_else(|| Error::InvalidInput("validate needs a preset".into()))?;
                commands::preset_validate(name)?
            }
            Command::Mutate { t, r, indecomposable_only } => commands::mutate(ctx_ref(), &get(t)?, &get(r)?, *indecomposable_only)?,
            Command::Subcat { t, r, cbart } => {
                let r = r.as_deref().map(get).transpose()?;
                commands::subcat(ctx_ref(), &get(t)?, r.as_deref(), *cbart)?
            }
            Command::Verify { t, r, theorem, seed, two_of_three } => {
                let th: Theorem = theorem.parse()?;
                commands::verify(ctx_ref(), &get(t)?, &get(r)?, th, *seed, *two_of_three)?
            }
            Command::Reproduce { figure, seed } => {
                let f: Figure = figure.parse()?;
                figures::reproduce(f, *seed)?
            }
            Command::EnumerateRigid => commands::enumerate_rigid(ctx_ref())?,
        };
        run.outcomes.push((format!("{:02}_{}", k + 1, cmd.name()), out));
    }
    let out_dir = out_override.map(Path::to_path_buf).or_else(|| sc.output.as_ref().map(|o| base.join(o)));
    if let Some(dir) = &out_dir {
        write_run(&run, dir)?;
    }
    run.output = out_dir;
    Ok(run)
}

/// Writes each command's artifacts and a Markdown summary.
pub fn write_run(run: &Run, dir: &Path) -> Result<()> {
    let mut md = String::from("# Scenario report\n\n");
    for (stem, out) in &run.outcomes {
        out.write(dir, stem)?;
        md.push_str(&out.markdown(stem));
    }
    md.push_str(&format!("Overall: {}\n", if run.passed() { "pass" } else { "FAIL" }));
    fs::write(dir.join("report.md"), md).map_err(io_err)
}
