use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use suptree_core::oracle::{
    brute_force_top_k, check_admissible, ArcGraph, OracleError, DEFAULT_CAP,
};
use suptree_core::{
    build_local_ranking, decompose, generate_non_tree_based, generate_random, ArcId, PhyloNetwork,
    RankError, RankingModel,
};

use crate::format::{parse_network, parse_raw, serialize_network, ParseError};
use crate::output::{
    write_decomposition, write_local_ranking, Format, TreeColumns, TreeRecord, TreeWriter,
};
use crate::profile;

/// Support trees of rooted binary phylogenetic networks.
#[derive(Parser, Debug)]
#[command(name = "suptree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Network file; standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TreeOutput {
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    /// Omit arc lists.
    #[arg(long)]
    ranks_only: bool,
    /// Significant digits of the decimal likelihood.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..=1000))]
    decimal_digits: u16,
    /// Print exact fractions only.
    #[arg(long, conflicts_with = "decimal_digits")]
    exact: bool,
}

impl TreeOutput {
    fn columns(&self) -> TreeColumns {
        TreeColumns {
            ranks_only: self.ranks_only,
            decimal_digits: (!self.exact).then_some(self.decimal_digits as usize),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a network document and list every structural violation.
    Validate(Input),
    /// Print the maximal zig-zag trails.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
    },
    /// Print the number of support trees.
    Count(Input),
    /// Print whether the network is tree-based, and its W-fences if not.
    IsTreeBased(Input),
    /// Stream the k most likely support trees.
    Rank {
        #[arg(short)]
        k: u64,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: TreeOutput,
    },
    /// Stream every support tree in ranking order.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: TreeOutput,
    },
    /// Print the ranked admissible vectors of one trail.
    LocalRank {
        trail: usize,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
        #[arg(long, default_value_t = 12)]
        decimal_digits: u16,
        #[arg(long, conflicts_with = "decimal_digits")]
        exact: bool,
    },
    /// Brute-force reference computations for small networks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Print a random tree-based network.
    Generate {
        #[arg(long)]
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graft a W-fence with this many reticulations, making the network
        /// not tree-based.
        #[arg(long)]
        w_fence: Option<usize>,
    },
    /// Time each emission of a top-k ranking over networks of several sizes.
    ProfileDelay {
        /// Arc counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "200,400,800,1600")]
        sizes: Vec<usize>,
        #[arg(short, default_value_t = 1000)]
        k: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print only the summary lines.
        #[arg(long)]
        summary_only: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Top-k by exhaustive enumeration; same output as `rank`.
    Rank {
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: TreeOutput,
    },
    /// Check whether an arc set is admissible.
    Check {
        /// Arc indices, comma or space separated.
        arcs: String,
        #[command(flatten)]
        input: Input,
    },
}

enum Failure {
    /// Exit status 1.
    Domain(String),
    /// Exit status 2.
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        if e.is_syntax() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<RankError> for Failure {
    fn from(e: RankError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Runs one command line and returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(code) => code,
        // a closed pipe downstream (`| head`) ends the stream normally
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &input.file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<PhyloNetwork, Failure> {
    Ok(parse_network(&read_input(input, stdin)?)?)
}

fn parse_arc_list(text: &str, arc_count: usize) -> Result<BTreeSet<usize>, Failure> {
    let mut set = BTreeSet::new();
    for tok in text.split([',', ' ', '\t', '\n']).filter(|t| !t.is_empty()) {
        let i: usize = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("'{tok}' is not an arc index")))?;
        if i >= arc_count {
            return Err(Failure::Domain(format!(
                "arc {i} does not exist; the network has {arc_count} arcs"
            )));
        }
        set.insert(i);
    }
    Ok(set)
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate(input) => {
            let raw = parse_raw(&read_input(&input, stdin)?)?;
            let report = raw.validate();
            if report.is_empty() {
                let n = PhyloNetwork::try_from(raw).expect("empty report");
                writeln!(
                    out,
                    "valid: {} vertices, {} arcs, {} leaves, {} reticulations",
                    n.vertex_count(),
                    n.arc_count(),
                    n.leaves().len(),
                    n.reticulations().count()
                )?;
                Ok(0)
            } else {
                for v in &report {
                    writeln!(out, "{v}")?;
                }
                out.flush()?;
                Err(Failure::Domain(format!(
                    "invalid network: {} violation(s)",
                    report.len()
                )))
            }
        }
        Command::Decompose { input, format } => {
            let n = load(&input, stdin)?;
            write_decomposition(out, &decompose(&n), format.into())?;
            Ok(0)
        }
        Command::Count(input) => {
            let n = load(&input, stdin)?;
            writeln!(out, "{}", suptree_core::count_support_trees(&n))?;
            Ok(0)
        }
        Command::IsTreeBased(input) => {
            let n = load(&input, stdin)?;
            let d = decompose(&n);
            writeln!(out, "{}", d.is_tree_based())?;
            for w in d.w_fences() {
                writeln!(
                    out,
                    "w-fence\t{}\t{}",
                    w.index,
                    crate::output::join_arcs(&w.arcs)
                )?;
            }
            Ok(0)
        }
        Command::Rank { k, input, output } => {
            let n = load(&input, stdin)?;
            stream(suptree_core::top_k(&n, k)?, out, &output)
        }
        Command::Enumerate { input, output } => {
            let n = load(&input, stdin)?;
            stream(suptree_core::enumerate_all(&n)?, out, &output)
        }
        Command::LocalRank {
            trail,
            input,
            format,
            decimal_digits,
            exact,
        } => {
            let n = load(&input, stdin)?;
            let d = decompose(&n);
            if trail >= d.len() {
                return Err(Failure::Domain(format!(
                    "trail {trail} does not exist; there are {} trails",
                    d.len()
                )));
            }
            let local = build_local_ranking(d.trail(trail), &n.weights())
                .map_err(|e| Failure::Domain(e.to_string()))?;
            let digits = (!exact).then_some(decimal_digits as usize);
            write_local_ranking(out, &local, format.into(), digits)?;
            Ok(0)
        }
        Command::Oracle(OracleCommand::Rank {
            k,
            cap,
            input,
            output,
        }) => {
            let n = load(&input, stdin)?;
            if !suptree_core::is_tree_based(&n) {
                // same diagnostic as the engine
                RankingModel::new(&n)?;
            }
            let trees = brute_force_top_k(&n, k, cap)?;
            let mut w = TreeWriter::new(out, output.format.into(), output.columns())?;
            for (j, t) in trees.iter().enumerate() {
                w.write(&TreeRecord {
                    rank: j as u64 + 1,
                    likelihood: &t.likelihood,
                    rank_vector: &t.rank_vector,
                    arcs: &t.arcs,
                })?;
            }
            w.finish()?;
            Ok(0)
        }
        Command::Oracle(OracleCommand::Check { arcs, input }) => {
            let n = load(&input, stdin)?;
            let subset = parse_arc_list(&arcs, n.arc_count())?;
            let report = check_admissible(&ArcGraph::from_network(&n), &subset);
            writeln!(out, "admissible\t{}", report.is_admissible())?;
            let names: Vec<&str> = report
                .violated_conditions()
                .iter()
                .map(|c| c.name())
                .collect();
            writeln!(out, "violated\t{}", names.join(","))?;
            for f in &report.failures {
                let involved: Vec<ArcId> = f.arcs.iter().map(|&a| ArcId(a)).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    f.condition,
                    n.label(suptree_core::VertexId(f.vertex)),
                    crate::output::join_arcs(&involved)
                )?;
            }
            Ok(0)
        }
        Command::Generate {
            leaves,
            extra,
            seed,
            w_fence,
        } => {
            if leaves < 2 {
                return Err(Failure::Usage("--leaves must be at least 2".into()));
            }
            let n = match w_fence {
                Some(0) => return Err(Failure::Usage("--w-fence must be at least 1".into())),
                Some(h) => generate_non_tree_based(leaves, extra, h, seed),
                None => generate_random(leaves, extra, seed),
            };
            out.write_all(serialize_network(&n).as_bytes())?;
            Ok(0)
        }
        Command::ProfileDelay {
            sizes,
            k,
            reps,
            seed,
            summary_only,
        } => {
            if k == 0 || reps == 0 || sizes.is_empty() {
                return Err(Failure::Usage(
                    "need -k >= 1, --reps >= 1 and at least one size".into(),
                ));
            }
            if let Some(&s) = sizes.iter().find(|&&s| s < 4) {
                return Err(Failure::Usage(format!(
                    "size {s} is too small; use at least 4 arcs"
                )));
            }
            let profiles = profile::profile_delay(&sizes, k, reps, seed)
                .map_err(|e| Failure::Domain(e.to_string()))?;
            if !summary_only {
                profile::write_csv(out, &profiles)?;
            }
            profile::write_summary(out, &profile::summarize(&profiles))?;
            Ok(0)
        }
    }
}

fn stream(
    ranking: suptree_core::RankedEnumerator,
    out: &mut dyn Write,
    output: &TreeOutput,
) -> Result<i32, Failure> {
    let mut w = TreeWriter::new(out, output.format.into(), output.columns())?;
    for (j, t) in ranking.enumerate() {
        w.write(&TreeRecord {
            rank: j as u64 + 1,
            likelihood: &t.likelihood,
            rank_vector: &t.rank_vector,
            arcs: &t.arcs,
        })?;
    }
    w.finish()?;
    Ok(0)
}
