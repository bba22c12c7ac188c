use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_braids::report::{
    cmd_betti, cmd_cells, cmd_euler, cmd_layout, cmd_poly, cmd_probe, cmd_verify, CellClass,
    Format, Payload, Report,
};
use graph_braids::Result;

/// Exact homology of graph braid groups from a graph file.
///
/// The graph format is line-based: an optional `root <v>` line, then one
/// `adj <v>: <u1> <u2> ...` line per vertex listing its neighbors in rotation
/// order. `#` starts a comment. Every edge appears in the lists of both of
/// its endpoints.
#[derive(Parser)]
#[command(name = "graph-braids", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table, global = false)]
    format: FormatArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Critical,
    Redundant,
    Collapsible,
}

impl From<ClassArg> for CellClass {
    fn from(c: ClassArg) -> CellClass {
        match c {
            ClassArg::Critical => CellClass::Critical,
            ClassArg::Redundant => CellClass::Redundant,
            ClassArg::Collapsible => CellClass::Collapsible,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Homology groups of the n-strand configuration space
    Betti {
        /// Graph file
        graph: PathBuf,
        /// Number of strands
        #[arg(long)]
        n: usize,
        /// Report only this homological degree
        #[arg(long)]
        i: Option<usize>,
        /// Cross-check against the unreduced cubical complex
        #[arg(long)]
        brute: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form critical cell counts for trees, by homological degree
    Poly {
        graph: PathBuf,
        /// Largest homological degree to report
        #[arg(long, default_value_t = 2)]
        i_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Euler characteristic generating function and values
    Euler {
        graph: PathBuf,
        /// Evaluate the series for 0..=n-max strands
        #[arg(long, required_unless_present = "poly")]
        n_max: Option<usize>,
        /// Also report the closed-form polynomial in n
        #[arg(long)]
        poly: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the i-cells of the n-strand complex with their classification
    Cells {
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Keep only cells of this class
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Spanning tree, vertex labels, and essential structure of the graph
    Layout {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the internal consistency battery; exits nonzero on failure
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        i_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Probe whether the strand-adding action commutes with the differential
    Probe {
        graph: PathBuf,
        /// Homological degree of the cells acted on
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<(Report, Common)> {
    Ok(match cli.command {
        Command::Betti { graph, n, i, brute, common } => {
            (cmd_betti(&load(&graph)?, n, i, brute)?, common)
        }
        Command::Poly { graph, i_max, common } => (cmd_poly(&load(&graph)?, i_max)?, common),
        Command::Euler { graph, n_max, poly, common } => {
            (cmd_euler(&load(&graph)?, n_max, poly)?, common)
        }
        Command::Cells { graph, n, i, class, common } => {
            (cmd_cells(&load(&graph)?, n, i, class.map(CellClass::from))?, common)
        }
        Command::Layout { graph, common } => (cmd_layout(&load(&graph)?)?, common),
        Command::Verify { graph, n_max, i_max, common } => {
            (cmd_verify(&load(&graph)?, n_max, i_max)?, common)
        }
        Command::Probe { graph, i, n_max, common } => {
            (cmd_probe(&load(&graph)?, i, n_max)?, common)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, common)) => {
            let rendered = report.render(common.format.into());
            if let Some(path) = common.out {
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{rendered}");
            }
            let failed = matches!(&report.payload, Payload::Verify(v) if !v.passed);
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
