use std::path::PathBuf;
use std::process::ExitCode;

use carleman_cli::commands::{self, Output};
use carleman_cli::report::write_output;
use carleman_cli::seqspec::parse_rational;
use carleman_cli::{CliError, Format, RunConfig, SeqSpec, Status};
use clap::{Args, Parser, Subcommand};

/// Certified checks for Denjoy-Carleman weight sequences.
#[derive(Parser)]
#[command(name = "carleman", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    emit: Option<PathBuf>,
    #[arg(long, global = true, value_name = "json|csv")]
    format: Option<Format>,
    /// Mantissa bits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Index window, `a..b`.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Sequence, e.g. `iterlog:2` or `powersub:3:gevrey:1/2`.
    #[arg(long, global = true, value_name = "SPEC")]
    sequence: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Any config key, repeatable: `--set bang_n_max=6`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect or test the configured sequence.
    Seq {
        #[command(subcommand)]
        action: SeqAction,
    },
    /// Power substitution and log-convex regularization.
    Transform {
        #[command(subcommand)]
        action: TransformAction,
    },
    /// Quasianalyticity, derivation closure and inclusion.
    Criteria {
        #[command(subcommand)]
        action: CriteriaAction,
    },
    /// Composition coefficients and the estimates built on them.
    Comb {
        #[command(subcommand)]
        action: CombAction,
    },
    /// Bang-type extremal functions.
    Bang {
        #[command(subcommand)]
        action: BangAction,
    },
    /// Run the full verification suite.
    Verify,
}

#[derive(Subcommand)]
enum SeqAction {
    /// Table of M_n, M'_n and m_n enclosures.
    Show {
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Monotonicity, log-convexity and quasianalyticity verdicts.
    Test,
}

#[derive(Subcommand)]
enum TransformAction {
    /// n -> M_(pn).
    Powersub {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Greatest log-convex minorant on [0, end].
    Regularize {
        #[arg(long)]
        end: usize,
    },
}

#[derive(Subcommand)]
enum CriteriaAction {
    /// Partial-sum curve of the Denjoy-Carleman series, for plotting.
    Dc {
        #[arg(long, default_value_t = 64)]
        big_n: usize,
    },
    /// Quasianalyticity verdict.
    Qa,
    /// Derivation-closure estimate over the window.
    Closure,
    /// Inclusion of the configured sequence's class in that of `--other`.
    Inclusion {
        #[arg(long, value_name = "SPEC")]
        other: SeqSpec,
    },
}

#[derive(Subcommand)]
enum CombAction {
    /// Exact c_(k,n) for n <= order.
    Coefficients {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
    /// Composition-coefficient, alpha_k and Stirling-type sweeps and the remainder identity.
    Lemmas,
}

#[derive(Subcommand)]
enum BangAction {
    /// Certify the construction gate for each variant in bang_p_set.
    Build,
    /// Derivative enclosures at a point.
    Eval {
        /// 2 for the cosine series, otherwise the C_p variant.
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        order: Vec<usize>,
        #[arg(long, default_value = "0", value_parser = parse_rational)]
        xi: carleman::Rational,
    },
    /// Lower bounds, envelope, induced germ and C_p properties.
    Bounds,
    /// Sampled class norm on [-1, 1].
    Norm {
        #[arg(long, default_value = "2", value_parser = parse_rational)]
        r: carleman::Rational,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Grid points.
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
}

fn load_config(c: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let mut set = |k: &str, v: &str| cfg.set(k, v, None);
    if let Some(v) = c.precision {
        set("precision", &v.to_string())?;
    }
    if let Some(v) = &c.window {
        set("window", v)?;
    }
    if let Some(v) = &c.sequence {
        set("sequence", v)?;
    }
    if let Some(v) = c.seed {
        set("seed", &v.to_string())?;
    }
    if let Some(v) = c.format {
        set("format", &v.to_string())?;
    }
    for kv in &c.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        set(k.trim(), v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let cfg = load_config(&cli.common)?;
    let out = match cli.command {
        Command::Seq { action } => match action {
            SeqAction::Show { n_max } => commands::seq_show(&cfg, n_max)?,
            SeqAction::Test => commands::seq_test(&cfg)?,
        },
        Command::Transform { action } => match action {
            TransformAction::Powersub { p, n_max } => commands::transform_powersub(&cfg, p, n_max)?,
            TransformAction::Regularize { end } => commands::transform_regularize(&cfg, end)?,
        },
        Command::Criteria { action } => match action {
            CriteriaAction::Dc { big_n } => commands::criteria_dc(&cfg, big_n)?,
            CriteriaAction::Qa => commands::criteria_qa(&cfg)?,
            CriteriaAction::Closure => commands::criteria_closure(&cfg)?,
            CriteriaAction::Inclusion { other } => commands::criteria_inclusion(&cfg, &other)?,
        },
        Command::Comb { action } => match action {
            CombAction::Coefficients { k, order } => commands::comb_coefficients(k, order)?,
            CombAction::Lemmas => commands::comb_lemmas(&cfg),
        },
        Command::Bang { action } => match action {
            BangAction::Build => commands::bang_build(&cfg),
            BangAction::Eval { p, order, xi } => commands::bang_eval(&cfg, p, &order, &xi)?,
            BangAction::Bounds => commands::bang_bounds(&cfg),
            BangAction::Norm { r, n_max, grid } => commands::bang_norm(&cfg, &r, n_max, grid)?,
        },
        Command::Verify => commands::verify(&cfg),
    };
    write_output(&out.render(cfg.format), cli.common.emit.as_deref())?;
    if let Output::Report(r) = &out {
        eprintln!(
            "{} records: {} Holds, {} Fails, {} Inconclusive, {} Error ({:.2} s)",
            r.records.len(),
            r.count(Status::Holds),
            r.count(Status::Fails),
            r.count(Status::Inconclusive),
            r.count(Status::Error),
            r.metadata.wall_seconds
        );
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => ExitCode::from(out.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
