use clap::{Args, Parser, Subcommand};
use eqlf::cli::{run, Command, Invocation};
use eqlf::metatheory::EnumBudget;
use std::io::Write;
use std::process::ExitCode;

/// Checker for signatures of an equational logical framework.
#[derive(Parser)]
#[command(name = "eqlf", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Signature file or bundled signature name; repeatable, concatenated in order.
    #[arg(short = 's', long = "sig")]
    sigs: Vec<String>,
    /// Expression, or `@path` to read one from a file. Repeatable.
    #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
    exprs: Vec<String>,
    /// Class to check against (`eq` compares at this class).
    #[arg(short = 'c', long = "class")]
    class: Option<String>,
    /// Local context, as declarations (`x : el nat. h : Eq(...).`) or `@path`.
    #[arg(long)]
    ctx: Option<String>,
    /// Rewrite steps per query.
    #[arg(long, env = "EQLF_FUEL", default_value_t = eqlf::kernel::DEFAULT_FUEL,
          value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Print the rewrite steps used.
    #[arg(long)]
    trace: bool,
    /// Disable η for framework functions and signature expansion rules.
    #[arg(long)]
    no_eta: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check signatures, and optionally expressions against them.
    Check {
        /// Signature files, same as -s.
        files: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Infer the class of each expression.
    Type {
        #[command(flatten)]
        common: Common,
    },
    /// Decide equality of two expressions at a class.
    Eq {
        #[command(flatten)]
        common: Common,
    },
    /// Normalize each expression.
    Norm {
        #[command(flatten)]
        common: Common,
    },
    /// List bundled signatures, or print the named ones.
    Corpus { ids: Vec<String> },
    /// Run the metatheory suites.
    Meta {
        /// Bundled signatures to test (default: all).
        ids: Vec<String>,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = EnumBudget::default().sample_count)]
        samples: usize,
        #[arg(long, default_value_t = EnumBudget::default().max_term_size)]
        size: usize,
        #[arg(long, default_value_t = EnumBudget::default().max_ctx_depth)]
        depth: usize,
        #[arg(long, env = "EQLF_FUEL", default_value_t = eqlf::kernel::DEFAULT_FUEL,
              value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
    },
}

fn with_common(command: Command, c: Common) -> Invocation {
    let mut inv = Invocation::new(command);
    inv.files = c.sigs;
    inv.exprs = c.exprs;
    inv.class_expr = c.class;
    inv.ctx = c.ctx;
    inv.fuel = c.fuel;
    inv.trace = c.trace;
    inv.eta = !c.no_eta;
    inv
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let inv = match cli.command {
        Cmd::Check { files, common } => {
            let mut inv = with_common(Command::Check, common);
            inv.files.splice(0..0, files);
            inv
        }
        Cmd::Type { common } => with_common(Command::Type, common),
        Cmd::Eq { common } => with_common(Command::Eq, common),
        Cmd::Norm { common } => with_common(Command::Norm, common),
        Cmd::Corpus { ids } => {
            let mut inv = Invocation::new(Command::Corpus);
            inv.files = ids;
            inv
        }
        Cmd::Meta {
            ids,
            seed,
            seeds,
            samples,
            size,
            depth,
            fuel,
        } => {
            let mut inv = Invocation::new(Command::Meta);
            inv.files = ids;
            inv.seeds = (seed..seed + seeds).collect();
            inv.budget = EnumBudget {
                max_term_size: size,
                max_ctx_depth: depth,
                sample_count: samples,
            };
            inv.fuel = fuel;
            inv
        }
    };
    let out = run(&inv);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
