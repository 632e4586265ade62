use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plancherel_lab::rng::DEFAULT_SEED;
use plancherel_lab::Limits;

mod commands;
mod output;

use output::CliError;

/// Exact Plancherel measures, growth sampling, jeu de taquin and total
/// positivity experiments.
#[derive(Parser, Debug)]
#[command(name = "plancherel-lab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// RNG seed; 0 draws one from system entropy.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("caps must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Default)]
struct Caps {
    #[arg(long = "cap-enumeration", global = true, value_parser = positive)]
    enumeration: Option<usize>,
    #[arg(long = "cap-oracle", global = true, value_parser = positive)]
    oracle: Option<usize>,
    #[arg(long = "cap-graph-levels", global = true, value_parser = positive)]
    graph_levels: Option<usize>,
    #[arg(long = "cap-tableau-sweep", global = true, value_parser = positive)]
    tableau_sweep: Option<usize>,
    #[arg(long = "cap-prefix", global = true, value_parser = positive)]
    prefix: Option<usize>,
    #[arg(long = "cap-prefix-shape", global = true, value_parser = positive)]
    prefix_shape: Option<usize>,
    #[arg(long = "cap-sampling", global = true, value_parser = positive)]
    sampling: Option<usize>,
    #[arg(long = "cap-exact-threshold", global = true, value_parser = positive)]
    exact_threshold: Option<usize>,
    #[arg(long = "cap-numberings", global = true, value_parser = positive)]
    numberings: Option<usize>,
    #[arg(long = "cap-minor-order", global = true, value_parser = positive)]
    minor_order: Option<usize>,
    #[arg(long = "cap-minor-window", global = true, value_parser = positive)]
    minor_window: Option<usize>,
    #[arg(long = "cap-series-order", global = true, value_parser = positive)]
    series_order: Option<usize>,
}

impl Caps {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        let pairs = [
            (self.enumeration, &mut l.enumeration),
            (self.oracle, &mut l.oracle),
            (self.graph_levels, &mut l.graph_levels),
            (self.tableau_sweep, &mut l.tableau_sweep),
            (self.prefix, &mut l.prefix),
            (self.prefix_shape, &mut l.prefix_shape),
            (self.sampling, &mut l.sampling),
            (self.exact_threshold, &mut l.exact_threshold),
            (self.numberings, &mut l.numberings),
            (self.minor_order, &mut l.minor_order),
            (self.minor_window, &mut l.minor_window),
            (self.series_order, &mut l.series_order),
        ];
        for (v, slot) in pairs {
            if let Some(v) = v {
                *slot = v;
            }
        }
        l
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact Plancherel measure of level n.
    Measure {
        #[arg(long)]
        n: usize,
    },
    /// One growth tableau with n cells.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Exact coherence sweep over all n-cell tableaux.
    Coherence {
        #[arg(long)]
        n: usize,
    },
    /// Induced k-prefix law of a shape and its distance to Pl_k.
    PrefixDist {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: usize,
    },
    /// Plancherel-graph check.
    Plgraph {
        /// young, pascal, or a JSON graph file.
        #[arg(long, default_value = "young")]
        graph: String,
        #[arg(long, default_value_t = 10)]
        levels: usize,
        /// Remove the edge FROM->TO before checking.
        #[arg(long)]
        delete_edge: Option<String>,
    },
    /// All monotone numberings of length n.
    Numberings {
        /// z2, z3, z4 or nonrigid.
        #[arg(long, default_value = "z2")]
        poset: String,
        #[arg(long)]
        n: usize,
    },
    /// Ideal density along sampled Plancherel numberings.
    Density {
        /// `whole`, or e.g. `rows=0;cols=0,1`.
        #[arg(long, default_value = "rows=0")]
        ideal: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// One transfer step on a tableau given as JSON rows.
    Transfer {
        #[arg(long)]
        tableau_json: String,
    },
    /// Quasi-stationarity of the growth measure under the transfer.
    QsTest {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0.01)]
        significance: f64,
    },
    /// Sweep of Toeplitz minors for negative values.
    TpCheck {
        /// `exp` or a JSON file holding an array of "p/q" strings.
        #[arg(long, default_value = "exp")]
        coeffs: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// Taylor coefficients of a Thoma function.
    Thoma {
        /// Comma-separated rationals.
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Truncation order N.
        #[arg(long = "order", default_value_t = 10)]
        order: usize,
    },
    /// Coefficients of exp(Σ χ(k) z^k / k).
    Chargf {
        /// JSON file with χ(1), χ(2), ... as "p/q" strings.
        #[arg(long, conflicts_with = "chi_values")]
        chi: Option<PathBuf>,
        /// Comma-separated χ(1), χ(2), ...
        #[arg(long)]
        chi_values: Option<String>,
        #[arg(long = "order", default_value_t = 10)]
        order: usize,
    },
    /// First row and column statistics of growth shapes.
    FirstRow {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Also write the per-trial CSV here.
        #[arg(long)]
        emit_csv: Option<PathBuf>,
    },
    /// Mean λ₁/n along an increasing list of sizes.
    Sublinearity {
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Exact identity suite.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PLANCHEREL_LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("PLANCHEREL_LAB_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let seed = if cli.global.seed == 0 {
        loop {
            let s: u64 = rand::random();
            if s != 0 {
                break s;
            }
        }
    } else {
        cli.global.seed
    };
    let ctx = commands::Context {
        seed,
        format: cli.global.format,
        out: cli.global.out,
        limits: cli.global.caps.limits(),
    };
    let result = configure_threads().and_then(|()| commands::run(&cli.command, &ctx));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
