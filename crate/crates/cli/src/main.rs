use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ratcurve::fiber::DEFAULT_SAMPLES;
use ratcurve::Error;
use ratcurve_cli::commands::{self, Command, Options};
use ratcurve_cli::instance::Instance;
use ratcurve_cli::selftest::{self, Fault};
use ratcurve_cli::{exit, exit_code};

/// Syzygies, fibers, degree, reparameterization and core of a rational map
/// from the projective line given by binary forms.
#[derive(Parser, Debug)]
#[command(name = "ratcurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Instance file: `field:` line, `seed:` line, then one generator per line.
    instance: PathBuf,
    /// Override the seed given in the instance file.
    #[arg(long)]
    seed: Option<u64>,
    /// Random image points sampled for the map degree.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Omit the timestamp so that reruns are byte-identical.
    #[arg(long)]
    deterministic: bool,
    /// Human-readable text instead of JSON.
    #[arg(long)]
    plain: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Full report: map degree, e(A), j-multiplicity and the birationality table.
    Analyze(Common),
    /// Fiber over a point of the target space.
    Fiber {
        #[command(flatten)]
        common: Common,
        /// Point as colon-separated coordinates, e.g. `1:1:1`.
        #[arg(long)]
        point: String,
    },
    /// Rewrite the map as a birational one composed with a degree-r cover.
    Reparam(Common),
    /// Core of the ideal of the generators.
    Core(Common),
    /// Run the invariant suite over monomial, dense and composed corpora.
    Selftest {
        /// Largest degree of the exhaustive monomial sweep.
        #[arg(long, default_value_t = 10)]
        d_max: usize,
        /// Number of random cases in each randomized corpus.
        #[arg(long, default_value_t = 100)]
        corpus_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print a table instead of JSON.
        #[arg(long)]
        plain: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

fn run_instance(common: &Common, command: Command) -> i32 {
    let text = match std::fs::read_to_string(&common.instance) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.instance.display());
            return exit::INPUT;
        }
    };
    let options = Options {
        seed: common.seed,
        samples: common.samples,
        deterministic: common.deterministic,
        plain: common.plain,
    };
    let result = Instance::parse(&text).and_then(|inst| commands::run(&inst, &command, &options));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.certified {
                exit::OK
            } else {
                eprintln!("error: {}", Error::CertificationFailed("a consistency check in the report failed".into()));
                exit::CERTIFICATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Cmd::Analyze(c) => run_instance(&c, Command::Analyze),
        Cmd::Fiber { common, point } => run_instance(&common, Command::Fiber { point }),
        Cmd::Reparam(c) => run_instance(&c, Command::Reparam),
        Cmd::Core(c) => run_instance(&c, Command::Core),
        Cmd::Selftest { d_max, corpus_size, seed, plain, inject_fault } => {
            let summary = selftest::run(&selftest::Config { d_max, corpus_size, seed, fault: inject_fault });
            if plain {
                print!("{}", summary.render_plain());
            } else {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            }
            if summary.all_passed() {
                exit::OK
            } else {
                exit::SELFTEST
            }
        }
    };
    ExitCode::from(code as u8)
}
