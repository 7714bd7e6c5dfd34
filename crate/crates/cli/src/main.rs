//! `supersat`: exact disjoint-pair counts, constructions and checks from the command line.
//!
//! Exit codes: 0 when every assertion holds, 1 on a violation (witness printed),
//! 2 on usage, configuration or input errors.

mod commands;
mod emit;

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use supersat::config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "supersat", version, about = "Disjoint pairs in set and permutation families")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalOpts {
    /// TOML file with RunConfig fields; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true)]
    pub budget_secs: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub perm_cap: Option<u32>,
    #[arg(long, global = true)]
    pub zeta_cap: Option<u32>,
    #[arg(long, global = true)]
    pub family_cap: Option<u128>,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
pub enum FormatArg {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count disjoint pairs in a set-family file.
    DisjSets {
        #[arg(long)]
        file: PathBuf,
        /// Use the subset-sum transform instead of the pairwise scan.
        #[arg(long)]
        zeta: bool,
    },
    /// Count disjoint pairs in a permutation file.
    DisjPerms {
        #[arg(long)]
        file: PathBuf,
    },
    /// First s k-subsets of [n] in lex order.
    Lex {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        s: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First s permutations of [n] in lex order.
    PermLex {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        s: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ℓ-ball of size s.
    Ball {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        ell: u32,
        #[arg(short)]
        s: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The family beating lex at n = 3k - 1, against lex and ℓ-balls.
    Counterexample {
        #[arg(short)]
        k: u32,
    },
    /// Closed forms: lex set segments (--sets) or lex permutation segments (--perms).
    Formula {
        #[arg(long, conflicts_with = "perms")]
        sets: bool,
        #[arg(long)]
        perms: bool,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: Option<u32>,
        #[arg(short)]
        s: String,
    },
    /// Intersection-graph statistics for a spec file, or a sweep over grid classes.
    Intgraph {
        #[arg(long, conflicts_with = "sweep")]
        file: Option<PathBuf>,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 6)]
        k1_max: u32,
        /// Also check the interval estimates at this n during a sweep.
        #[arg(short)]
        n: Option<u32>,
    },
    /// Interval estimates against exact values for a spec file or all grid classes.
    Prop25 {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(short)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        k1_max: u32,
    },
    /// Exhaustive minimum of disj over s-subsets of C([n],k).
    OracleSets {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        s: Option<u64>,
    },
    /// Exhaustive minimum of disj over s-subsets of S_n.
    OraclePerms {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        s: Option<u64>,
    },
    /// Spectrum of the derangement graph (-n) or a Kneser graph (-m, -a).
    Spectrum {
        #[arg(short)]
        n: Option<u32>,
        #[arg(short)]
        m: Option<u32>,
        #[arg(short)]
        a: Option<u32>,
    },
    /// Families in C([n],k) without s pairwise disjoint members.
    CountFamilies {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short, default_value_t = 2)]
        s: u32,
        /// Also enumerate the maximal ones.
        #[arg(long)]
        maximal: bool,
    },
    /// Exact margin of the counting inequality at (n, k, s).
    Typicality {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        k: u64,
        #[arg(short, default_value_t = 2)]
        s: u64,
    },
    /// Shadow of a family file at a lower level, with the Lovász bound.
    Shadow {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        level: u32,
        /// Also compare the shadow of P with Q for a maximal intersecting family.
        #[arg(long)]
        pq: bool,
    },
    /// The full property suite.
    VerifyAll {
        /// Comma-separated check ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

pub fn load_config(g: &GlobalOpts) -> anyhow::Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?;
            toml::from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?
        }
        None => RunConfig::default(),
    };
    cfg.apply_env().map_err(anyhow::Error::msg)?;
    if let Some(f) = g.format {
        cfg.format = match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    if g.budget_secs.is_some() {
        cfg.budget_secs = g.budget_secs;
    }
    if g.workers.is_some() {
        cfg.workers = g.workers;
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = g.perm_cap {
        cfg.perm_cap = v;
    }
    if let Some(v) = g.zeta_cap {
        cfg.zeta_cap = v;
    }
    if let Some(v) = g.family_cap {
        cfg.family_cap = v;
    }
    cfg.validate().map_err(anyhow::Error::msg)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match load_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(w) = cfg.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let commands::Outcome { report, raw } = match commands::dispatch(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout().lock();
    let written = match (&raw, cfg.format) {
        (Some(text), Format::Plain) => out.write_all(text.as_bytes()),
        _ => emit::emit_report(&report, cfg.format, &mut out),
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        // a closed pipe downstream is not our failure
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return if report.pass == Some(false) { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
