//! `svbr`: diagram algebra, homology of matching complexes, verification
//! suites and SVG rendering.
//!
//! Exit codes: 0 success or true, 1 false or failed check, 2 usage or input
//! error, 3 undecided within the search budget.

mod verify;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use svbr::homology::{connectivity_report, matching_complex, reduced_homology, Multigraph, SimplicialComplex};
use svbr::morse::{self, inequalities};
use svbr::spraige::{multiply, svbr_equal, Budget, Spraige, Verdict};

pub const TRUE: u8 = 0;
pub const FALSE: u8 = 1;
pub const USAGE: u8 = 2;
pub const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "svbr", version, about = "Braided diagram groups and matching-complex homology")]
struct Cli {
    /// Maximum states visited by a search (equality, legality of splits)
    #[arg(long, global = true, env = "SVBR_BUDGET")]
    budget: Option<usize>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of colors for enumerations and random diagrams
    #[arg(long, global = true, default_value_t = 2)]
    colors: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of two diagrams, reduced
    Mul { a: PathBuf, b: PathBuf },
    /// Inverse of a diagram
    Inv { a: PathBuf },
    /// Reduce a diagram fully
    Reduce {
        a: PathBuf,
        /// Print the reductions as comments above the result
        #[arg(long)]
        log: bool,
    },
    /// Decide equality of two diagrams by bounded search
    Eq {
        a: PathBuf,
        b: PathBuf,
        /// Print the move script of an equality
        #[arg(long)]
        script: bool,
    },
    /// Split leaf LEAF of the top forest with a caret of COLOR
    Expand {
        a: PathBuf,
        #[arg(long)]
        leaf: usize,
        #[arg(long)]
        color: u32,
    },
    /// Insert (or remove) a cross-relation gadget at a leaf
    Cross {
        a: PathBuf,
        #[arg(long)]
        leaf: usize,
        #[arg(long, required_unless_present = "remove")]
        outer: Option<u32>,
        #[arg(long, required_unless_present = "remove")]
        inner: Option<u32>,
        #[arg(long, conflicts_with_all = ["outer", "inner"])]
        remove: bool,
    },
    /// Reduced integral homology of a matching complex or of a facet list
    Homology {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Size counts and connectivity of the matching complex of a graph
    Matching {
        /// Graph: K7, L6, 2L6 or "v=5; e=1-2:1,1-2:2"
        #[arg(long)]
        graph: String,
        /// Check k-acyclic + connected; defaults to nu(n) - 1 for n vertices
        #[arg(long, allow_hyphen_values = true)]
        k: Option<isize>,
    },
    /// Run named verification suites
    Verify {
        #[arg(long, value_enum, required_unless_present = "all")]
        suite: Vec<verify::Suite>,
        #[arg(long, conflicts_with = "suite")]
        all: bool,
    },
    /// Height data of braiges
    #[command(subcommand)]
    Morse(MorseCmd),
    /// Draw a diagram as SVG
    Render {
        a: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ComplexSource {
    /// Matching complex of this graph
    #[arg(long)]
    graph: Option<String>,
    /// File with one facet per line, vertices 0-based and space separated
    #[arg(long)]
    facets: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MorseCmd {
    /// mu, f, counting data, legal splits and classification of a braige
    Stats { a: PathBuf },
    /// Check the height comparison over all splittings of small braiges
    Trichotomy {
        #[arg(long, default_value_t = 4)]
        heads: usize,
    },
    /// Check the arithmetic chains behind the link connectivity bounds
    Inequalities {
        #[arg(long, default_value_t = 1000)]
        n_max: i64,
    },
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(USAGE, e.to_string())
    }
}

type Run = Result<u8, Failure>;

fn load(path: &Path) -> Result<Spraige, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?
    };
    Spraige::parse_file(&text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn parse_facets(text: &str) -> Result<SimplicialComplex, Failure> {
    let mut facets = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let facet = line.split_whitespace().map(str::parse::<u32>).collect::<Result<Vec<_>, _>>()?;
        facets.push(facet);
    }
    let n = facets.iter().flatten().max().map_or(0, |&v| v as usize + 1);
    Ok(SimplicialComplex::from_facets(n, facets)?)
}

fn equality_budget(cli: &Cli) -> Budget {
    cli.budget.map_or_else(Budget::default, Budget::with_states)
}

fn legality_budget(cli: &Cli) -> Budget {
    let b = morse::legality_budget();
    Budget { states: cli.budget.unwrap_or(b.states), ..b }
}

fn run(cli: &Cli) -> Run {
    match &cli.cmd {
        Cmd::Mul { a, b } => {
            print!("{}", multiply(&load(a)?, &load(b)?)?.to_file_string());
        }
        Cmd::Inv { a } => print!("{}", load(a)?.inverse().to_file_string()),
        Cmd::Reduce { a, log } => {
            let (x, moves) = load(a)?.reduce_fully_logged();
            if *log {
                for m in moves {
                    println!("# {m}");
                }
            }
            print!("{}", x.to_file_string());
        }
        Cmd::Eq { a, b, script } => {
            return Ok(match svbr_equal(&load(a)?, &load(b)?, equality_budget(cli)) {
                Verdict::Equal(cert) => {
                    println!("Equal (script: {})", cert.summary());
                    if *script {
                        for m in cert.moves() {
                            println!("  {m}");
                        }
                    }
                    TRUE
                }
                Verdict::NotEqual => {
                    println!("NotEqual (the unbraided brick maps differ)");
                    FALSE
                }
                Verdict::Unknown => {
                    println!("Unknown (no script found within the budget)");
                    UNKNOWN
                }
            })
        }
        Cmd::Expand { a, leaf, color } => print!("{}", load(a)?.expand(*leaf, *color)?.to_file_string()),
        Cmd::Cross { a, leaf, outer, inner, remove } => {
            let x = load(a)?;
            let y = match (outer, inner) {
                _ if *remove => x.cross_remove(*leaf)?,
                (Some(o), Some(i)) => x.cross_insert(*leaf, *o, *i)?,
                _ => unreachable!("clap requires both colors without --remove"),
            };
            print!("{}", y.to_file_string());
        }
        Cmd::Homology { source, max_dim } => {
            let x = match (&source.graph, &source.facets) {
                (Some(g), _) => matching_complex(&g.parse::<Multigraph>()?),
                (_, Some(path)) => parse_facets(&fs::read_to_string(path)?)?,
                _ => unreachable!("clap requires one source"),
            };
            println!("f-vector: {:?}", x.f_vector());
            print!("{}", reduced_homology(&x, *max_dim));
        }
        Cmd::Matching { graph, k } => {
            let g: Multigraph = graph.parse()?;
            let x = matching_complex(&g);
            let k = k.unwrap_or(morse::nu(g.vertices() as i64) as isize - 1);
            println!("graph: {g}");
            println!("f-vector: {:?}", x.f_vector());
            print!("{}", reduced_homology(&x, (k.max(0) as usize).max(x.dim().max(0) as usize)));
            let r = connectivity_report(&x, k);
            println!("{r}");
            return Ok(if r.passed() { TRUE } else { FALSE });
        }
        Cmd::Verify { suite, all } => {
            let suites = if *all { verify::Suite::ALL.to_vec() } else { suite.clone() };
            let ctx = verify::Context { budget: cli.budget, seed: cli.seed, colors: cli.colors };
            return Ok(verify::run_all(&suites, &ctx));
        }
        Cmd::Morse(m) => return morse_cmd(cli, m),
        Cmd::Render { a, out } => {
            let svg = svbr::render::svg(&load(a)?);
            match out {
                Some(path) => fs::write(path, svg).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?,
                None => print!("{svg}"),
            }
        }
    }
    Ok(TRUE)
}

fn morse_cmd(cli: &Cli, m: &MorseCmd) -> Run {
    match m {
        MorseCmd::Stats { a } => {
            let z = load(a)?;
            let b = legality_budget(cli);
            let h = morse::height(&z)?;
            println!("mu = {}", h.mu);
            println!("f = {}", h.f);
            println!("height = {h}");
            match morse::counting_stats(&z) {
                Ok(s) => println!(
                    "n = {}, k_u = {}, k_e = {}, 3k_e + k_u <= n <= 2^s k_e + k_u: {}",
                    s.n,
                    s.k_u,
                    s.k_e,
                    s.bound_holds()
                ),
                Err(e) => println!("counting data: {e}"),
            }
            let mut undecided = false;
            for p in morse::probe_splits(&z, b)? {
                undecided |= p.legality == morse::Legality::Unknown;
                println!("split foot {} color {}: {}", p.foot + 1, p.color, p.legality.label());
            }
            let c = morse::classify(&z, b)?;
            println!("classification: {c}");
            Ok(if undecided || c == morse::Classification::Undetermined { UNKNOWN } else { TRUE })
        }
        MorseCmd::Trichotomy { heads } => {
            let r = morse::height_trichotomy(*heads, cli.colors, legality_budget(cli));
            println!(
                "{} braiges, {} legal splittings compared, {} left the elementary braiges, {} undecided",
                r.braiges, r.pairs, r.non_elementary, r.unknown
            );
            for v in &r.violations {
                println!("violation: {v}");
            }
            Ok(if !r.violations.is_empty() {
                FALSE
            } else if r.unknown > 0 {
                UNKNOWN
            } else {
                TRUE
            })
        }
        MorseCmd::Inequalities { n_max } => {
            let suite = inequalities::inequality_suite(*n_max);
            for c in &suite {
                println!("{c}");
            }
            Ok(if suite.iter().all(|c| c.passed()) { TRUE } else { FALSE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("svbr: {msg}");
            ExitCode::from(code)
        }
    }
}
