use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli::{commands, run_verify, CliError, Format, Output, Overrides, RunConfig, CONFIG_ENV};
use grouprep::GroupId;

/// Floer homology of spherical space forms S³/Γ from the labeled graphs S_Γ.
#[derive(Parser)]
#[command(name = "sfloer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// bar, std or both.
    #[arg(long, global = true)]
    orientation: Option<String>,
    /// Comma-separated flavors: +, -, inf (or all).
    #[arg(long, global = true)]
    flavor: Option<String>,
    /// q or fp:<odd prime>.
    #[arg(long, global = true)]
    coeff: Option<String>,
    /// Filtration levels q:p.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Degree range lo:hi.
    #[arg(long, global = true, allow_hyphen_values = true)]
    degrees: Option<String>,
    /// text, json or dot.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Worker threads for verify.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Config file (TOML); defaults to $SFLOER_CONFIG.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Highest U power compared.
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Record wall times in verify reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List groups with orders, abelianizations and McKay types.
    Groups {
        #[arg(default_value = "all")]
        select: String,
    },
    /// Character table and quaternionic representations.
    Repr { group: String },
    /// McKay graph.
    Mckay { group: String },
    /// Labeled graph S_Γ; --check compares a DOT fixture.
    Sgraph {
        group: String,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Donaldson model: bidegree figure, arrows, optional window.
    Dci { group: String },
    /// Assembled equivariant instanton homology with window checks.
    Floer { group: String },
    /// Spectral sequence pages and differentials.
    FloerRaw { group: String },
    /// Chern–Simons invariants, c₂ classes and group cohomology.
    Cs { group: String },
    /// Run every check on a group set.
    Verify {
        /// Group selector, e.g. "T*,O*,C2..C8" or "all".
        #[arg(long)]
        groups: Option<String>,
        /// Extra S_Γ fixtures (DOT) to compare.
        #[arg(long)]
        fixture: Vec<String>,
    },
}

fn config(common: &Common, extra: Overrides) -> Result<RunConfig, CliError> {
    let flags = Overrides {
        orientation: common.orientation.clone(),
        flavors: common.flavor.clone(),
        coeff: common.coeff.clone(),
        window: common.window.clone(),
        degrees: common.degrees.clone(),
        format: common.format.clone(),
        jobs: common.jobs,
        kmax: common.kmax,
        timings: common.timings.then_some(true),
        ..extra
    };
    let file = match &common.config {
        Some(p) => Overrides::load(p)?,
        None => Overrides::default(),
    };
    RunConfig::resolve(flags.over(file))
}

fn group(s: &str) -> Result<GroupId, CliError> {
    s.parse().map_err(|e: grouprep::GroupError| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let c = &cli.common;
    let out: Output = match &cli.command {
        Command::Groups { select } => {
            let cfg = config(c, Overrides { groups: Some(select.clone()), ..Default::default() })?;
            return render(commands::groups(&cfg)?, cfg.format);
        }
        Command::Verify { groups, fixture } => {
            let extra = Overrides { groups: groups.clone(), fixtures: (!fixture.is_empty()).then(|| fixture.clone()), ..Default::default() };
            let cfg = config(c, extra)?;
            let report = run_verify(&cfg)?;
            let text = match cfg.format {
                Format::Text => report.text(),
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Dot => return Err(CliError::Usage("verify has no DOT output".into())),
            };
            return Ok((text, report.exit_code()));
        }
        Command::Repr { group: g } => commands::repr(group(g)?)?,
        Command::Mckay { group: g } => commands::mckay(group(g)?)?,
        Command::Sgraph { group: g, check } => {
            let fixture = check.as_ref().map(std::fs::read_to_string).transpose()?;
            commands::sgraph(group(g)?, fixture.as_deref())?
        }
        Command::Dci { group: g } => commands::dci(group(g)?, &config(c, Overrides::default())?)?,
        Command::Floer { group: g } => commands::floer(group(g)?, &config(c, Overrides::default())?)?,
        Command::FloerRaw { group: g } => commands::floer_raw(group(g)?, &config(c, Overrides::default())?)?,
        Command::Cs { group: g } => commands::cs(group(g)?, &config(c, Overrides::default())?)?,
    };
    let cfg = config(c, Overrides::default())?;
    render(out, cfg.format)
}

fn render(out: Output, format: Format) -> Result<(String, i32), CliError> {
    Ok((out.render(format)?, if out.pass { 0 } else { 1 }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
