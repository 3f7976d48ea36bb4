//! `posetcoh`: (co)homology of functors on finite posets from the command line.

mod commands;
mod inputs;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posetcoh::linalg::Field;

#[derive(Parser, Debug)]
#[command(name = "posetcoh", version, about = "Functor cohomology on finite posets")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Coefficient field: `Q` or `Fp:p`.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    /// Degree for stability checks, or a single degree to report.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// JSON file with a recursive coatom ordering.
    #[arg(long, global = true)]
    pub ordering: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Validate a poset or functor file.
    Check { input: String },
    /// Verify an ordering (with --ordering) or search for one.
    Shell { poset: String },
    /// Derived limits of a contravariant functor.
    Cohomology(Derived),
    /// Derived colimits of a covariant functor.
    Homology(Derived),
    /// The same groups from the nerve complex.
    Oracle(Derived),
    /// Check the stability condition at --degree (all degrees when omitted).
    Stability { functor: String },
    /// Check the co-stability condition at --degree (all degrees when omitted).
    Costability { functor: String },
    /// Weak Mackey functors: verification and quasi-units.
    #[command(subcommand)]
    Mackey(MackeyVerb),
    /// The Möbius function μ(p, q).
    Mobius { poset: String, p: String, q: String },
    /// Cohomology of the atomic functor at an element.
    Atomic {
        poset: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// The four-term atom sequence.
    Atomseq {
        functor: String,
        /// Atoms as a list (see `--subset`); all atoms when omitted.
        #[arg(long)]
        atoms: Option<String>,
    },
    /// Hyperplane arrangements: intersection lattices and homology tables.
    #[command(subcommand)]
    Arrangement(ArrangementVerb),
    /// Built-in example posets.
    #[command(subcommand)]
    Fixture(FixtureVerb),
}

#[derive(Args, Debug)]
pub struct Derived {
    pub functor: String,
    /// Element list: `a,b,{1,2}` (commas inside braces are kept) or a JSON
    /// array such as `["a,m","s,v"]`. Defaults to `P ∖ {1̂}`.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum MackeyVerb {
    /// Check the weak Mackey conditions.
    Verify { input: String },
    /// Check for a quasi-unit on a subposet.
    QuasiUnit {
        input: String,
        /// Element list, as for `--subset`.
        #[arg(long)]
        subposet: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArrangementVerb {
    /// Homology dimensions of the exterior-power functors.
    Table {
        input: String,
        #[arg(long)]
        max_i: Option<usize>,
        #[arg(long)]
        max_j: Option<usize>,
    },
    /// Closed-form value of one table entry next to the computed one.
    Formula { input: String, i: usize, j: usize },
    /// Flats of the arrangement, or the lattice as a poset file.
    Lattice {
        input: String,
        #[arg(long)]
        emit_poset: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixtureVerb {
    /// Names of the built-in fixtures.
    List,
    /// A fixture as a poset file with its ordering and expected data.
    Show { name: String },
    /// Recompute a fixture's ordering, C-sets and Möbius values and compare.
    Assert { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.global, &cli.verb) {
        Ok(outcome) => {
            print!("{}", render::render(&outcome.value, cli.global.output));
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let posetcoh::Error::NotFunctorial(violations) = &e {
                for v in violations {
                    eprintln!("  {v}");
                }
            }
            ExitCode::from(2)
        }
    }
}
