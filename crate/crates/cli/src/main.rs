use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

#[derive(Parser, Debug)]
#[command(name = "halfspace-lab", version, about = "Exact classification of deformed hyperplane arrangements")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON file with `U` and optional named `offsets` and `tetrads`
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Offset vector such as "0,1,0,1" or a name from the config file
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Second offset vector or name
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `verify`; HALFSPACE_LAB_SEED takes precedence when set
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Circuits of U with canonical vectors
    Circuits,
    /// The derived arrangement: its circuits, and with --faces its open faces
    Derived {
        #[arg(long)]
        faces: bool,
    },
    /// Open face of the derived arrangement containing --a
    Locate,
    /// Faces of the arrangement A_a with dimensions and witnesses
    Faces,
    /// Sign vectors of the arrangement A_a
    Signs,
    /// Tetrad polyhedra P(a, I, J, K)
    Poly {
        #[command(subcommand)]
        op: PolyOp,
        #[command(flatten)]
        roles: RoleArgs,
    },
    /// Compare two translations of U
    Equiv {
        #[arg(value_enum)]
        relation: EquivRelation,
        /// Compare conings or lifts instead of translations
        #[arg(long, value_enum, default_value_t = Kind::Translate)]
        kind: Kind,
    },
    /// Translate, cone or lift A_o by --a
    Deform {
        #[command(subcommand)]
        op: DeformOp,
    },
    /// Oriented-matroid checks on covector sets
    Om {
        #[command(subcommand)]
        op: OmOp,
    },
    /// Sign and Face operators over the open faces of the derived arrangement
    Operators {
        #[command(subcommand)]
        op: OperatorsOp,
    },
    /// Run a seeded property suite, or all of them
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(
            ["thm1_2", "thm1_3", "thm1_4", "thm3_6", "thm4_8", "thm6_2", "axioms", "all"]
        ))]
        suite: String,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct RoleArgs {
    /// Name of a tetrad in the config file; overrides --a and the role lists
    #[arg(long, global = true)]
    pub tetrad: Option<String>,
    /// Second tetrad name, for normalfan
    #[arg(long, global = true)]
    pub tetrad_b: Option<String>,
    /// 1-based rows held with equality
    #[arg(long, global = true, value_delimiter = ',')]
    pub eq: Vec<usize>,
    /// 1-based rows flipped to `>=`
    #[arg(long, global = true, value_delimiter = ',')]
    pub ge: Vec<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum PolyOp {
    /// Nonemptiness with a witness point or an infeasibility certificate
    Feas,
    Bounded,
    /// Nonempty faces with active triples
    Faces,
    /// Whether the tetrads for --a and --b have the same normal fan
    Normalfan,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EquivRelation {
    Sign,
    Comb,
    Semilattice,
    Normal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Translate,
    Cone,
    Lift,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum DeformOp {
    Translate {
        #[arg(long, value_enum)]
        report: Option<Report>,
    },
    Cone {
        #[arg(long, value_enum)]
        report: Option<Report>,
    },
    Lift {
        #[arg(long, value_enum)]
        report: Option<Report>,
    },
    /// Face counts of A_a, its coning and its lift
    Counts,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Report {
    Counts,
}

#[derive(Args, Debug, Clone)]
pub struct CovectorSource {
    /// Arrangement whose sign set is used when no covector file is given
    #[arg(long, value_enum, default_value_t = Source::Translate)]
    pub of: Source,
    /// JSON list of sign strings
    #[arg(long)]
    pub covectors: Option<PathBuf>,
    /// Second JSON list of sign strings, for equiv
    #[arg(long)]
    pub covectors_b: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Translate,
    Cone,
    Lift,
    Derived,
}

#[derive(Subcommand, Debug, Clone)]
pub enum OmOp {
    /// Check the four covector axioms
    Check {
        #[command(flatten)]
        source: CovectorSource,
    },
    /// Affine covectors {X \ g : X_g = +}
    Affine {
        /// 1-based element
        #[arg(long)]
        g: usize,
        #[command(flatten)]
        source: CovectorSource,
    },
    /// Compare two covector sets, optionally up to relabeling and reorientation
    Equiv {
        #[arg(long)]
        up_to_symmetry: bool,
        /// Allow only relabelings
        #[arg(long)]
        relabel_only: bool,
        #[command(flatten)]
        source: CovectorSource,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum OperatorsOp {
    /// Whether a union of derived faces is fixed by Face o Sign
    Fixpoint {
        /// Derived sign vectors separated by ';' or given as repeated flags
        #[arg(long, value_delimiter = ';', required = true, allow_hyphen_values = true)]
        faces: Vec<String>,
        #[arg(long, value_enum, default_value_t = Kind::Translate)]
        kind: Kind,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            match cli.global.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json value")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
