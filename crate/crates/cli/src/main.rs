mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use combinorm::Error;

/// Exact family norms, graph duality checks, Sierpiński spaces and
/// emulations.
#[derive(Parser)]
#[command(name = "combinorm", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct NormInput {
    /// JSON file with "family", "ground" and "vector" fields.
    #[arg(long)]
    input: Option<String>,
    /// Family JSON file (overrides the input's family).
    #[arg(long)]
    family: Option<String>,
    /// Vector JSON file, {"id": "p/q", ...}.
    #[arg(long)]
    vector: Option<String>,
    /// Ground set, comma separated (defaults to the vector's support).
    #[arg(long)]
    ground: Option<String>,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dimacs,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum Construct {
    Hole,
    Antihole,
    Rational,
}

#[derive(Copy, Clone, ValueEnum)]
pub enum EmulateOp {
    Base,
    Schreier,
    Dstar,
    Union,
    Farah,
}

#[derive(Subcommand)]
enum Command {
    /// Family norm of a vector.
    Norm(NormInput),
    /// Dual norm of a functional over the unit ball.
    DualNorm(NormInput),
    /// Maximal members of the orthogonal family on a finite ground set.
    Perp {
        #[arg(long)]
        family: String,
        #[arg(long)]
        ground: Option<String>,
    },
    /// Whether the family equals the cliques of its pair graph.
    GraphgenCheck {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 16)]
        truncation: usize,
    },
    /// Maximal members on a finite ground set, in colex order.
    MaxElements {
        #[arg(long)]
        family: String,
        #[arg(long)]
        ground: Option<String>,
    },
    /// Perfection verdict with an obstruction witness.
    PerfectCheck {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "spgt")]
        method: String,
        #[arg(long, default_value_t = combinorm::graphs::DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
    /// The five duality booleans of a graph.
    DualityReport {
        #[arg(long)]
        graph: String,
    },
    /// Verify an extreme point, or construct one.
    Extreme {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, value_enum)]
        construct: Option<Construct>,
        /// Odd hole in cycle order (found automatically if omitted).
        #[arg(long)]
        hole: Option<String>,
        /// Antihole parameter: the graph has 2n+1 vertices.
        #[arg(long)]
        n: Option<u32>,
        /// Signs for the antihole point, comma separated.
        #[arg(long)]
        signs: Option<String>,
        /// Target value for the rational gadget.
        #[arg(long)]
        q: Option<String>,
    },
    /// Build an emulation.
    Emulate {
        #[arg(long, value_enum)]
        op: EmulateOp,
        /// Input emulation files (parts for dstar, union and farah).
        #[arg(long)]
        emulation: Vec<String>,
        #[arg(long, default_value_t = 1)]
        times: u32,
        /// Labels of the base emulation.
        #[arg(long, default_value_t = 6)]
        labels: u32,
        /// Increasing base instead of decreasing.
        #[arg(long)]
        increasing: bool,
        /// Verify the result against this family.
        #[arg(long)]
        family: Option<String>,
    },
    /// Check an emulation against a family.
    VerifyEmulation {
        #[arg(long)]
        emulation: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Exhaustive search for an emulation of a small family.
    SearchEmulation {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 2)]
        max_block: u32,
    },
    /// Chain norms, graphs and embeddings of Sierpiński spaces.
    #[command(subcommand)]
    Sierpinski(SierpinskiCommand),
    /// Schreier family membership and enumeration.
    #[command(subcommand)]
    Schreier(SchreierCommand),
    /// The small-graph corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum SierpinskiCommand {
    /// Heaviest chain of a vector.
    Norm {
        #[arg(long)]
        injection: String,
        #[arg(long)]
        vector: String,
    },
    /// The Sierpiński graph on 1..=n.
    Graph {
        #[arg(long)]
        injection: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Increasing induced embedding of the guest's first n points.
    Embed {
        #[arg(long)]
        host: String,
        #[arg(long)]
        guest: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum SchreierCommand {
    /// Membership of a finite set.
    Member {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "standard")]
        variant: String,
        #[arg(long)]
        set: String,
    },
    /// Members (or maximal members) on 1..=bound.
    Enumerate {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "standard")]
        variant: String,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        maximal: bool,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Duality report over the shipped graphs, summarized per order.
    Sweep {
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        /// Graph6 file to sweep instead of the shipped corpus.
        #[arg(long)]
        file: Option<String>,
    },
    /// All graphs up to isomorphism in graph6, one per line.
    Generate {
        #[arg(long, default_value_t = 7)]
        max_n: u32,
    },
}

/// Exit status of a command that ran to completion.
pub enum Outcome {
    Ok,
    CheckFailed,
}

pub enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EquivalenceViolation(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("COMBINORM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("COMBINORM_THREADS={v:?} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    let json = cli.json;
    use commands::*;
    match cli.command {
        Command::Norm(i) => norm(&i, json),
        Command::DualNorm(i) => dual_norm(&i, json),
        Command::Perp { family, ground } => perp(&family, ground.as_deref(), json),
        Command::GraphgenCheck { family, truncation } => graphgen_check(&family, truncation, json),
        Command::MaxElements { family, ground } => max_elements(&family, ground.as_deref(), json),
        Command::PerfectCheck { graph, method, limit } => perfect_check(&graph, &method, limit, json),
        Command::DualityReport { graph } => duality_report(&graph, json),
        Command::Extreme {
            graph,
            vector,
            construct,
            hole,
            n,
            signs,
            q,
        } => match construct {
            None => extreme_check(graph.as_deref(), vector.as_deref(), json),
            Some(c) => extreme_construct(c, graph.as_deref(), hole.as_deref(), n, signs.as_deref(), q.as_deref(), json),
        },
        Command::Emulate {
            op,
            emulation,
            times,
            labels,
            increasing,
            family,
        } => emulate(op, &emulation, times, labels, increasing, family.as_deref(), json),
        Command::VerifyEmulation {
            emulation,
            family,
            max_size,
        } => verify_emulation(&emulation, &family, max_size, json),
        Command::SearchEmulation { family, max_block } => search_emulation(&family, max_block, json),
        Command::Sierpinski(c) => match c {
            SierpinskiCommand::Norm { injection, vector } => sierpinski_norm(&injection, &vector, json),
            SierpinskiCommand::Graph { injection, n, format } => sierpinski_graph(&injection, n, format),
            SierpinskiCommand::Embed { host, guest, n } => sierpinski_embed(&host, &guest, n, json),
        },
        Command::Schreier(c) => match c {
            SchreierCommand::Member { alpha, variant, set } => schreier_member(&alpha, &variant, &set, json),
            SchreierCommand::Enumerate {
                alpha,
                variant,
                bound,
                maximal,
            } => schreier_enumerate(&alpha, &variant, bound, maximal, json),
        },
        Command::Corpus(c) => match c {
            CorpusCommand::Sweep { max_n, file } => corpus_sweep(max_n, file.as_deref(), json),
            CorpusCommand::Generate { max_n } => corpus_generate(max_n),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
