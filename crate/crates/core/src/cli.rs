//! The `finefill` command line.
//!
//! Results go to stdout as TSV or in the file formats; diagnostics go to
//! stderr. Exit codes: 0 success (infinite values included), 1 bad input,
//! 2 budget or cap exhausted, 3 internal invariant violated.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chain::{Chain, Ring};
use crate::complex::TwoComplex;
use crate::constructions::{
    coned_off_cayley_complex, coned_off_cayley_graph, omega_n, parse_group, DEFAULT_GROUP_CAP,
};
use crate::corpus::run_corpus;
use crate::cycles::{decompose_into_circuits, enumerate_circuits, Circuit};
use crate::error::{Error, Result};
use crate::filling::{
    filling_norm, fv, linearity_report, linearity_tsv, parse_values_tsv, superadditive_closure,
    verify_filling, weak_area,
};
use crate::fineness::{enumerate_special_chains, fineness_certificate, Method, DEFAULT_BUDGET};
use crate::homology::homology_h1;
use crate::hyperbolicity::hyperbolicity_delta;
use crate::io::{parse_chain, parse_complex, write_complex};
use crate::number::format_rational;
use crate::subdivide::{subdivide, SubdivisionMode};

#[derive(Parser, Debug)]
#[command(
    name = "finefill",
    version,
    about = "Exact filling norms and fineness certificates for finite 2-complexes"
)]
pub struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// State budget for special-chain searches; FINEFILL_BUDGET is read when absent.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RingArg {
    #[value(alias = "int")]
    Z,
    #[value(alias = "rat")]
    Q,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Int,
            RingArg::Q => Ring::Rat,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Graph,
    Special,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Mid,
    Bary,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a complex file and print its cell counts.
    Validate { complex: PathBuf },
    /// First integral homology.
    H1 { complex: PathBuf },
    /// Filling norm of a 1-cycle.
    Fill {
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long)]
        cycle: PathBuf,
        complex: PathBuf,
    },
    /// Homological Dehn function FV(0..=K).
    Fv {
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long)]
        kmax: usize,
        /// Add a column with the attaining cycle.
        #[arg(long)]
        witness: bool,
        complex: PathBuf,
    },
    /// FV over Z and Q side by side.
    Linearity {
        #[arg(long)]
        kmax: usize,
        complex: PathBuf,
    },
    /// Split a cycle into circuits with additive norms.
    Decompose {
        #[arg(long)]
        cycle: PathBuf,
        complex: PathBuf,
    },
    /// Circuits of bounded length, optionally through an edge.
    Circuits {
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        length: usize,
        complex: PathBuf,
    },
    /// Per-edge circuit census at scale L.
    Fine {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        complex: PathBuf,
    },
    /// Special 2-chains based at an edge.
    Special {
        #[arg(long)]
        edge: String,
        #[arg(long)]
        norm: usize,
        complex: PathBuf,
    },
    /// Midpoint or barycentric subdivision.
    Subdivide {
        #[arg(long, value_enum)]
        mode: ModeArg,
        complex: PathBuf,
    },
    /// Glue a face onto every circuit of length at most N (default: vertex count).
    Omega {
        #[arg(long)]
        n: Option<usize>,
        graph: PathBuf,
    },
    /// Fewest circuits of length at most N summing to a circuit.
    Weakarea {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        cycle: PathBuf,
        graph: PathBuf,
    },
    /// Coned-off Cayley complex of a finite permutation group.
    Coneoff {
        group: PathBuf,
        #[arg(long)]
        graph_only: bool,
    },
    /// Four-point hyperbolicity constant.
    Delta { graph: PathBuf },
    /// Superadditive closure of a `k<TAB>value` table.
    Sadd { values: PathBuf },
    /// Run the property checks over a corpus directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_complex(path: &Path) -> Result<TwoComplex> {
    parse_complex(&read(path)?)
}

fn load_cycle(path: &Path, complex: &TwoComplex) -> Result<Chain> {
    let chain = parse_chain(&read(path)?)?.resolve(complex)?;
    if !chain.is_integral() {
        return Err(Error::NotACycle);
    }
    Ok(chain.with_ring(Ring::Int))
}

fn edge_id(complex: &TwoComplex, name: &str) -> Result<usize> {
    complex
        .edge_by_name(name)
        .ok_or_else(|| Error::UnknownEdge(name.to_string()))
}

fn chain_text(complex: &TwoComplex, chain: &Chain) -> String {
    if chain.is_zero() {
        return "0".into();
    }
    chain
        .terms()
        .iter()
        .map(|(&i, c)| {
            format!(
                "{}*{}",
                format_rational(c),
                complex.cell_name(chain.dim(), i)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn resolve_budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("FINEFILL_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("FINEFILL_BUDGET=`{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Executes one command, writing its result to `out`. Returns the exit code.
fn execute(command: &Command, budget: usize, out: &mut String) -> Result<i32> {
    use std::fmt::Write as _;
    match command {
        Command::Validate { complex } => {
            let x = load_complex(complex)?;
            let _ = writeln!(out, "vertices\t{}", x.num_vertices());
            let _ = writeln!(out, "edges\t{}", x.num_edges());
            let _ = writeln!(out, "faces\t{}", x.num_faces());
        }
        Command::H1 { complex } => {
            let _ = writeln!(out, "{}", homology_h1(&load_complex(complex)?));
        }
        Command::Fill {
            ring,
            cycle,
            complex,
        } => {
            let x = load_complex(complex)?;
            let gamma = load_cycle(cycle, &x)?;
            let r = filling_norm(&x, &gamma, (*ring).into())?;
            if !verify_filling(&x, &gamma, &r) {
                return Err(Error::Invariant("filling witness does not re-check".into()));
            }
            let _ = writeln!(out, "value\t{}", r.value);
            let _ = writeln!(out, "certificate\t{}", r.certificate);
            if let Some(w) = &r.witness {
                for (&f, c) in w.terms() {
                    let _ = writeln!(out, "witness\t{}\t{}", format_rational(c), x.face(f).id);
                }
            }
        }
        Command::Fv {
            ring,
            kmax,
            witness,
            complex,
        } => {
            let x = load_complex(complex)?;
            let t = fv(&x, *kmax, (*ring).into());
            if t.entries.windows(2).any(|w| w[0].value > w[1].value) {
                return Err(Error::Invariant("FV table is not monotone".into()));
            }
            if *witness {
                out.push_str("k\tvalue\twitness\n");
                for e in &t.entries {
                    let _ = writeln!(out, "{}\t{}\t{}", e.k, e.value, chain_text(&x, &e.witness));
                }
            } else {
                out.push_str(&t.to_tsv());
            }
        }
        Command::Linearity { kmax, complex } => {
            let x = load_complex(complex)?;
            out.push_str(&linearity_tsv(&linearity_report(&x, *kmax)));
        }
        Command::Decompose { cycle, complex } => {
            let x = load_complex(complex)?;
            let gamma = load_cycle(cycle, &x)?;
            let parts = decompose_into_circuits(&x, &gamma)?;
            let _ = writeln!(out, "parts\t{}", parts.len());
            for p in &parts {
                let c = Circuit::from_cycle(&x, p).ok_or_else(|| {
                    Error::Invariant("decomposition part is not a circuit".into())
                })?;
                let _ = writeln!(out, "circuit\t{}\t{}", c.len(), c.display(&x));
            }
        }
        Command::Circuits {
            edge,
            length,
            complex,
        } => {
            let x = load_complex(complex)?;
            let anchor = edge.as_deref().map(|e| edge_id(&x, e)).transpose()?;
            let list = enumerate_circuits(&x, anchor, *length)?;
            out.push_str("length\tcircuit\n");
            for c in &list {
                let _ = writeln!(out, "{}\t{}", c.len(), c.display(&x));
            }
        }
        Command::Fine {
            length,
            method,
            complex,
        } => {
            let x = load_complex(complex)?;
            let method = match method {
                MethodArg::Graph => Method::GraphSearch,
                MethodArg::Special => Method::SpecialChain,
            };
            let cert = fineness_certificate(&x, *length, method, budget)?;
            out.push_str(&cert.to_tsv(&x));
            if !cert.exact {
                return Ok(2);
            }
        }
        Command::Special {
            edge,
            norm,
            complex,
        } => {
            let x = load_complex(complex)?;
            let e = edge_id(&x, edge)?;
            let states = enumerate_special_chains(&x, e, *norm, budget)?;
            out.push_str("norm\tchain\tordering\n");
            for s in &states {
                let ordering: Vec<String> = s
                    .ordering
                    .iter()
                    .map(|&(f, sign)| format!("{}{}", sign.symbol(), x.face(f).id))
                    .collect();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    s.norm(),
                    chain_text(&x, &s.chain),
                    ordering.join(" ")
                );
            }
        }
        Command::Subdivide { mode, complex } => {
            let x = load_complex(complex)?;
            let mode = match mode {
                ModeArg::Mid => SubdivisionMode::Midpoint,
                ModeArg::Bary => SubdivisionMode::Barycentric,
            };
            out.push_str(&write_complex(&subdivide(&x, mode)?.complex));
        }
        Command::Omega { n, graph } => {
            let g = load_complex(graph)?;
            let n = n.unwrap_or(g.num_vertices());
            out.push_str(&write_complex(&omega_n(&g, n)?));
        }
        Command::Weakarea {
            big_n,
            cycle,
            graph,
        } => {
            let g = load_complex(graph)?;
            let gamma = load_cycle(cycle, &g)?;
            let r = weak_area(&g, &gamma, *big_n)?;
            let _ = writeln!(out, "N\t{}", r.n);
            let _ = writeln!(out, "value\t{}", r.value);
            for (s, c) in &r.expression {
                let _ = writeln!(out, "term\t{}\t{}", s.symbol(), c.display(&g));
            }
        }
        Command::Coneoff { group, graph_only } => {
            let p = parse_group(&read(group)?)?;
            let c = if *graph_only {
                coned_off_cayley_graph(&p, DEFAULT_GROUP_CAP)?
            } else {
                coned_off_cayley_complex(&p, DEFAULT_GROUP_CAP)?
            };
            out.push_str(&write_complex(&c.complex));
        }
        Command::Delta { graph } => {
            let g = load_complex(graph)?;
            out.push_str(&hyperbolicity_delta(&g)?.to_tsv(&g));
        }
        Command::Sadd { values } => {
            let f = parse_values_tsv(&read(values)?)?;
            out.push_str("k\tvalue\n");
            for (i, v) in superadditive_closure(&f).iter().enumerate() {
                let _ = writeln!(out, "{}\t{v}", i + 1);
            }
        }
        Command::Corpus { dir, seed } => {
            let report = run_corpus(dir, *seed)?;
            out.push_str(&report.to_tsv());
            if report.failures() > 0 {
                return Ok(3);
            }
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() {
                1
            } else {
                let _ = stdout.flush();
                0
            };
        }
    };
    let budget = match resolve_budget(cli.budget) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let mut out = String::new();
    let result = pool.install(|| execute(&cli.command, budget, &mut out));
    match result {
        Ok(code) => {
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            if code == 2 {
                let _ = writeln!(
                    stderr,
                    "INCOMPLETE: search budget of {budget} states exhausted"
                );
            } else if code == 3 {
                let _ = writeln!(stderr, "corpus checks failed");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
