use std::process::ExitCode;

use cdes::tableaux::{PartitionShape, DEFAULT_FILLING_CAP};
use cdes::{parse_list, BruteCap, ValueSet};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

mod commands;
mod output;

use commands::{CountMethod, TableMethod, TableauxMethod, TreeMethod};
use output::Format;

const EXIT_VALIDATION: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

/// Count permutations by circular descent set.
#[derive(Debug, Parser)]
#[command(name = "cdes", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Largest n the exhaustive enumerator accepts (at most 20).
    #[arg(long, global = true, default_value_t = cdes::perm::DEFAULT_BRUTE_CAP)]
    brute_cap: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of permutations of [n] with a given circular descent set.
    Count {
        #[arg(long)]
        n: u32,
        /// Comma-separated ascending values, e.g. 3,5. Empty for the empty set.
        #[arg(long, default_value = "", value_parser = parse_set)]
        set: ValueSet,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
        /// Run every applicable method and exit 2 if any disagree.
        #[arg(long)]
        all_methods: bool,
    },
    /// Counts for every S ⊆ [2, n].
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = TableMethod::Formula)]
        method: TableMethod,
    },
    /// The descent polynomial g_n.
    Poly {
        #[arg(long)]
        n: u32,
    },
    /// Generating-tree weight of a sequence of exponents.
    Tree {
        /// Comma-separated nonnegative exponents.
        #[arg(long, value_parser = parse_gaps, conflicts_with = "set")]
        gaps: Option<GapList>,
        /// Use the gap vector of this set.
        #[arg(long, value_parser = parse_set, required_unless_present = "gaps")]
        set: Option<ValueSet>,
        /// Also print the tree, one node per line as "height label sign".
        #[arg(long)]
        show: bool,
        #[arg(long, value_enum, default_value_t = TreeMethod::Sum)]
        method: TreeMethod,
    },
    /// Number of permutation tableaux of a shape.
    Tableaux {
        /// Row lengths, weakly decreasing, e.g. 3,3,1.
        #[arg(long, value_parser = parse_shape)]
        shape: PartitionShape,
        #[arg(long, value_enum, default_value_t = TableauxMethod::Formula)]
        method: TableauxMethod,
        /// Largest number of boxes the brute-force filler accepts.
        #[arg(long, default_value_t = DEFAULT_FILLING_CAP)]
        filling_cap: usize,
    },
    /// Generalized Genocchi number G_{2n}^{(k)}.
    Genocchi {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// Also count the matching permutations and exit 2 on disagreement.
        #[arg(long)]
        brute: bool,
    },
    /// Run the cross-method verification suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        /// Seed for the sampled sets.
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        /// Number of random subsets of [2, 20] to check.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
}

fn parse_set(s: &str) -> Result<ValueSet, cdes::Error> {
    s.parse()
}

/// Wrapper so clap treats the whole list as one value.
#[derive(Debug, Clone)]
struct GapList(Vec<u32>);

fn parse_gaps(s: &str) -> Result<GapList, cdes::Error> {
    parse_list(s).map(GapList)
}

fn parse_shape(s: &str) -> Result<PartitionShape, cdes::Error> {
    s.parse()
}

fn run(cli: Cli) -> cdes::Result<commands::Outcome> {
    let cap = BruteCap::new(cli.brute_cap)?;
    match cli.command {
        Command::Count {
            n,
            set,
            method,
            all_methods,
        } => commands::count(n, &set, method, all_methods, cap),
        Command::Table { n, method } => commands::table(n, method, cap),
        Command::Poly { n } => commands::poly(n),
        Command::Tree {
            gaps,
            set,
            show,
            method,
        } => commands::tree(gaps.map(|g| g.0), set, show, method),
        Command::Tableaux {
            shape,
            method,
            filling_cap,
        } => commands::tableaux(&shape, method, filling_cap),
        Command::Genocchi { k, n, brute } => commands::genocchi(k, n, brute, cap),
        Command::Verify {
            max_n,
            seed,
            samples,
        } => commands::verify(max_n, seed, samples, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_VALIDATION),
            };
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    }
    let format = cli.format;
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.record.render(format));
            if outcome.mismatch {
                eprintln!("error: methods disagree");
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
