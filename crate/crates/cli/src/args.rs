use clap::{Args, Parser, Subcommand, ValueEnum};
use iepoly::DEFAULT_DEGREE_CAP;

#[derive(Debug, Parser)]
#[command(name = "iepoly", version, about = "Inclusion-exclusion polynomials: coefficients, ternary summaries, scans and verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Largest coefficient vector any full-vector construction may hold.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_cap: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// stream for three parameters, division otherwise
    Auto,
    Division,
    Series,
    Product,
    /// ternary only
    Stream,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanMode {
    Residue,
    Flat,
    Bounds,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of Q for a pairwise-coprime parameter set.
    ///
    /// plain: one "m a_m" line per coefficient (default).
    /// csv: columns m,a_m.
    /// json: {"schema_version":1,"rho":[..],"degree":..,"coeffs":[..]}.
    ///
    /// With the stream method, plain and csv output is written as it is
    /// produced and the degree cap does not apply.
    #[command(verbatim_doc_comment)]
    Compute {
        /// Parameters, each at least 2.
        #[arg(required = true, num_args = 1..)]
        params: Vec<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Summarize a ternary triple (all parameters at least 3).
    ///
    /// json (default): schema_version, p, q, r (ascending), a_plus, a_minus,
    /// height, coeff_set, flat, degree.
    /// csv: the same fields as one row; coeff_set is space-separated.
    #[command(verbatim_doc_comment)]
    Analyze { p: u64, q: u64, r: u64 },
    /// Scan third parameters r for a fixed pair p, q.
    ///
    /// Rows come in a fixed order. Defaults to csv.
    ///
    /// residue: one row per residue class c coprime to pq.
    ///   columns: p,q,residue,members,r_values,coeff_set,verdict,mirror_residue,mirror_verdict
    /// flat: one row per admissible r <= r-max with height 1.
    ///   columns: p,q,r,residue,pm1
    /// bounds: one row per s >= 1 coprime to pq with pq + s <= r-max.
    ///   columns: p,q,s,a_s,r_up,a_up,r_down,a_down,within_bounds,recursive_regime
    ///
    /// Lists inside a cell are space-separated. Exit status 4 if a residue
    /// class or a ±1 class fails; bound violations are reported on stderr
    /// and do not change the exit status.
    #[command(verbatim_doc_comment)]
    Scan {
        p: u64,
        q: u64,
        /// Largest r scanned (default: 3pq + max(p, q)).
        #[arg(long)]
        r_max: Option<u64>,
        #[arg(long, value_enum, default_value_t = ScanMode::Residue)]
        mode: ScanMode,
    },
    /// Run the full verification suite. Exit status 4 if any check fails.
    ///
    /// json (default): the full report including failure records.
    /// plain or csv: one row per check, findings on stderr.
    #[command(verbatim_doc_comment)]
    Verify {
        /// Bound on n0 for the exhaustive cross-method mesh.
        #[arg(long, default_value_t = 5000, value_parser = clap::value_parser!(u64).range(30..))]
        max_n0: u64,
        /// Sampled four-parameter sets.
        #[arg(long, default_value_t = 200)]
        order4_samples: usize,
        /// Random large triples checked by streaming.
        #[arg(long, default_value_t = 20)]
        random_triples: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time the constructions on (3, 5, r) for r in 1001, 10001, 100001.
    ///
    /// plain (default), csv or json; columns:
    /// r,method,degree,seconds,coeffs_per_sec,peak_len,memory,spot_check
    #[command(verbatim_doc_comment)]
    Bench {
        /// Number of ladder rungs to run (1 to 3).
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=3))]
        rungs: u64,
    },
}
