//! Subcommands and their execution. Output goes to a caller-supplied writer
//! so runs are testable and byte-for-byte reproducible.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use staged_core::analyze::{
    incidence_matrix, root_splits, saturation_test, screen, simplicial_complex,
};
use staged_core::ideal::{minimal_primes, minimal_primes_brute_force, IdealBasis};
use staged_core::poly::{parse_polynomial, parse_polynomial_general, Polynomial};
use staged_core::tree::random::{random_staged_tree, TreeShape};
use staged_core::tree::LeafWeighting;
use staged_core::{Enumerator, EventTree, Nesting, SupportSet};

use crate::dot::{complex_to_dot, tree_to_dot};
use crate::error::CliError;
use crate::json::{
    complex_value, parse_tree, parse_weights, primes_value, screen_value, tree_value,
};
use crate::parallel::equivalence_class;
use crate::table::incidence_to_csv;

#[derive(Debug, Parser)]
#[command(
    name = "staged-trees",
    version,
    about = "Staged trees and their interpolating polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolating (or network) polynomial of a tree.
    Interpolate(InterpolateArgs),
    /// Minimal primes of the monomial ideal generated by the support.
    Decompose {
        #[command(flatten)]
        input: PolyInput,
        /// Use the exhaustive subset search instead of the transversal engine.
        #[arg(long)]
        oracle: bool,
    },
    /// All staged trees with the given interpolating polynomial.
    Class(ClassArgs),
    /// Necessary conditions for being an interpolating polynomial.
    Check {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Variable-by-monomial incidence matrix as CSV.
    Incidence {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Simplicial complex components and the saturation test.
    Complex {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum, default_value_t = ComplexFormat::Json)]
        format: ComplexFormat,
    },
    /// A reproducible random staged tree.
    RandomTree {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_leaves: usize,
        #[arg(long, default_value_t = 3)]
        max_floret: usize,
        /// Give every edge its own label.
        #[arg(long)]
        saturated: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    /// Polynomial text, e.g. "t1*f1 + t1*f2 + t2".
    pub polynomial: Option<String>,
    /// Read the polynomial from a file ("-" for stdin).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "tree_source")]
pub struct TreeInput {
    /// Tree JSON file ("-" for stdin).
    pub tree: Option<PathBuf>,
    /// Tree given as a nested representation, e.g. "t1*(f1 + f2) + t2".
    #[arg(long)]
    pub nested: Option<String>,
}

#[derive(Debug, Args)]
pub struct InterpolateArgs {
    #[command(flatten)]
    pub input: TreeInput,
    /// JSON array of leaf weights in depth-first leaf order.
    #[arg(long)]
    pub network: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub input: PolyInput,
    /// Print only the number of trees.
    #[arg(long)]
    pub count_only: bool,
    /// Write one DOT file per tree into this directory.
    #[arg(long)]
    pub dot_dir: Option<PathBuf>,
    /// Also keep assembled trees that are not staged.
    #[arg(long)]
    pub include_unstaged: bool,
    /// Threads used across candidate root florets.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = ClassFormat::Json)]
    pub format: ClassFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassFormat {
    /// JSON array of tree documents.
    Json,
    /// One canonical nested representation per line.
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexFormat {
    Json,
    Dot,
}

fn read_source(path: &Path) -> Result<String, CliError> {
    let shown = path.display().to_string();
    if shown == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io("<stdin>", e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::io(shown, e))
}

impl PolyInput {
    fn text(&self) -> Result<String, CliError> {
        match (&self.polynomial, &self.input) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(path)) => Ok(read_source(path)?.trim().to_string()),
            (None, None) => Err(CliError::Syntax("no polynomial given".into())),
        }
    }

    /// Square-free terms required.
    fn strict(&self) -> Result<Polynomial, CliError> {
        Ok(parse_polynomial(&self.text()?)?)
    }

    fn general(&self) -> Result<Polynomial, CliError> {
        Ok(parse_polynomial_general(&self.text()?)?)
    }
}

impl TreeInput {
    fn tree(&self) -> Result<EventTree, CliError> {
        match (&self.tree, &self.nested) {
            (_, Some(text)) => {
                let n = Nesting::parse(text)?;
                Ok(EventTree::from_nested(&n)?)
            }
            (Some(path), None) => parse_tree(&read_source(path)?),
            (None, None) => Err(CliError::Syntax("no tree given".into())),
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Interpolate(args) => {
            let t = args.input.tree()?;
            let text = match &args.network {
                None => t.interpolating_polynomial().to_string(),
                Some(path) => {
                    let weights = parse_weights(&read_source(path)?)?;
                    let g = LeafWeighting::from_leaf_order(&t, &weights)?;
                    t.network_polynomial(&g)?.to_string()
                }
            };
            write_out(out, &format!("{text}\n"))
        }
        Command::Decompose { input, oracle } => {
            let p = input.strict()?;
            let basis = IdealBasis::interreduce(p.support());
            let primes = if *oracle {
                minimal_primes_brute_force(&basis)?
            } else {
                minimal_primes(&basis)?
            };
            write_out(out, &pretty(&primes_value(&primes)))
        }
        Command::Class(args) => class(args, out),
        Command::Check { input } => {
            write_out(out, &pretty(&screen_value(&screen(&input.general()?))))
        }
        Command::Incidence { input } => write_out(
            out,
            &incidence_to_csv(&incidence_matrix(&input.general()?))?,
        ),
        Command::Complex { input, format } => {
            let sc = simplicial_complex(&input.strict()?);
            match format {
                ComplexFormat::Json => write_out(
                    out,
                    &pretty(&complex_value(&saturation_test(&sc), &root_splits(&sc))),
                ),
                ComplexFormat::Dot => write_out(out, &complex_to_dot(&sc)),
            }
        }
        Command::RandomTree {
            seed,
            max_leaves,
            max_floret,
            saturated,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let shape = TreeShape {
                max_leaves: *max_leaves,
                max_floret: *max_floret,
                saturated: *saturated,
                ..TreeShape::default()
            };
            write_out(
                out,
                &pretty(&tree_value(&random_staged_tree(&mut rng, &shape))),
            )
        }
    }
}

fn class(args: &ClassArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let support = SupportSet::from_polynomial(&args.input.strict()?)?;
    if args.count_only && args.dot_dir.is_none() {
        let n = Enumerator::new(&support)?
            .include_unstaged(args.include_unstaged)
            .count();
        return write_out(out, &format!("{n}\n"));
    }
    let class = equivalence_class(&support, args.include_unstaged, args.jobs.max(1))?;
    if let Some(dir) = &args.dot_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
        for (k, t) in class.trees().enumerate() {
            let name = format!("tree_{:04}", k + 1);
            let path = dir.join(format!("{name}.dot"));
            fs::write(&path, tree_to_dot(t, &name))
                .map_err(|e| CliError::io(path.display().to_string(), e))?;
        }
    }
    if args.count_only {
        return write_out(out, &format!("{}\n", class.len()));
    }
    match args.format {
        ClassFormat::Json => {
            let docs: Vec<serde_json::Value> = class.trees().map(tree_value).collect();
            write_out(out, &pretty(&serde_json::Value::Array(docs)))
        }
        ClassFormat::Text => {
            let mut text = String::new();
            for (form, t) in class.canonical_forms().zip(class.trees()) {
                text.push_str(form);
                if !t.is_staged() {
                    text.push_str("    # not staged");
                }
                text.push('\n');
            }
            write_out(out, &text)
        }
    }
}
