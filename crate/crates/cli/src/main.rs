use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tricat::Result;
use tricat_cli::commands::{self, Theorem};
use tricat_cli::figures::{self, Figure};
use tricat_cli::{scenario, Context, Outcome, OUT_ENV};

#[derive(Parser)]
#[command(name = "tricat", version, about = "Rigid objects, mutation and quotient categories in type A")]
struct Cli {
    /// Directory for JSON, DOT and Markdown artifacts (defaults to $TRICAT_OUT).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled morphisms; only changes which maps are sampled.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List or validate the shipped presets.
    Preset {
        #[command(subcommand)]
        action: PresetCmd,
    },
    /// Mutate the basic rigid T at the summand R.
    Mutate {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long = "T")]
        t: String,
        #[arg(long = "R")]
        r: String,
        /// Reject decomposable R.
        #[arg(long)]
        indecomposable_only: bool,
    },
    /// Membership lists for C(T), or for C̄(T) when R is given.
    Subcat {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long = "T")]
        t: String,
        #[arg(long = "R")]
        r: Option<String>,
        /// Compute C̄(T) = T∗ΣT̄ (requires --R).
        #[arg(long)]
        cbart: bool,
    },
    /// Verify the equivalence and localisation statements for (T, R).
    Verify {
        #[command(flatten)]
        cat: CatArgs,
        #[arg(long = "T")]
        t: String,
        #[arg(long = "R")]
        r: String,
        #[arg(long, default_value = "all", value_parser = ["main", "fbar", "localisations", "all"])]
        theorem: String,
        /// Also scan basis maps for failures of 2-out-of-3.
        #[arg(long)]
        two_of_three: bool,
    },
    /// Regenerate one of the worked examples.
    Reproduce {
        #[arg(long, value_parser = ["1", "2", "3", "4", "5", "intro_A3", "intro_A4"])]
        figure: String,
    },
    /// List all basic rigid objects and count the cluster-tilting ones.
    EnumerateRigid {
        #[command(flatten)]
        cat: CatArgs,
    },
    /// Run a scenario file.
    Run { file: PathBuf },
}

#[derive(Subcommand)]
enum PresetCmd {
    List,
    Validate { name: String },
}

#[derive(Args)]
struct CatArgs {
    /// Preset name, e.g. A9_t3s1.
    #[arg(long, conflicts_with = "algebra")]
    preset: Option<String>,
    /// Algebra JSON file of a self-injective algebra.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

impl CatArgs {
    fn context(&self) -> Result<Context> {
        match (&self.preset, &self.algebra) {
            (Some(p), _) => Context::preset(p),
            (None, Some(a)) => Context::algebra_file(a),
            (None, None) => Err(tricat::Error::InvalidInput("one of --preset and --algebra is required".into())),
        }
    }
}

fn out_dir(cli: &Cli) -> Option<PathBuf> {
    cli.out.clone().or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
}

fn run_command(cli: &Cli) -> Result<(String, Outcome)> {
    let out = match &cli.command {
        Cmd::Preset { action: PresetCmd::List } => ("preset_list".into(), commands::preset_list()?),
        Cmd::Preset { action: PresetCmd::Validate { name } } => (format!("validate_{name}"), commands::preset_validate(name)?),
        Cmd::Mutate { cat, t, r, indecomposable_only } => {
            let ctx = cat.context()?;
            ("mutate".into(), commands::mutate(&ctx, &ctx.object(t)?, &ctx.object(r)?, *indecomposable_only)?)
        }
        Cmd::Subcat { cat, t, r, cbart } => {
            let ctx = cat.context()?;
            let r = r.as_deref().map(|r| ctx.object(r)).transpose()?;
            ("subcat".into(), commands::subcat(&ctx, &ctx.object(t)?, r.as_deref(), *cbart)?)
        }
        Cmd::Verify { cat, t, r, theorem, two_of_three } => {
            let ctx = cat.context()?;
            let th: Theorem = theorem.parse()?;
            ("verify".into(), commands::verify(&ctx, &ctx.object(t)?, &ctx.object(r)?, th, cli.seed, *two_of_three)?)
        }
        Cmd::Reproduce { figure } => {
            let f: Figure = figure.parse()?;
            (f.name().to_string(), figures::reproduce(f, cli.seed)?)
        }
        Cmd::EnumerateRigid { cat } => ("enumerate_rigid".into(), commands::enumerate_rigid(&cat.context()?)?),
        Cmd::Run { .. } => unreachable!("scenarios are dispatched separately"),
    };
    Ok(out)
}

fn emit(stem: &str, out: &Outcome, dir: Option<&Path>) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&out.to_json()).expect("JSON values serialize"));
    if let Some(dir) = dir {
        out.write(dir, stem)?;
        std::fs::write(dir.join(format!("{stem}.md")), out.markdown(stem)).map_err(tricat_cli::io_err)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = out_dir(&cli);
    let result = match &cli.command {
        Cmd::Run { file } => scenario::run_file(file, dir.as_deref()).map(|run| {
            for (stem, out) in &run.outcomes {
                println!("{stem}: {}", if out.passed { "pass" } else { "FAIL" });
            }
            run.exit_code()
        }),
        _ => run_command(&cli).and_then(|(stem, out)| {
            emit(&stem, &out, dir.as_deref())?;
            Ok(if out.passed { 0 } else { 1 })
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
