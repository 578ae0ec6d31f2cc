//! `liecoh`: exact cochain calculus, extensions and crossed modules from
//! the command line. Every command prints one JSON report on stdout and
//! exits 0 on success, 2 on a mathematical negative result (with its
//! certificate) and 1 on input errors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "liecoh",
    version,
    about = "Exact Lie algebra cohomology, extensions and crossed modules over ℚ"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

/// An extension given either as a bundle or by its parts.
///
/// Algebra arguments accept a catalog name or a JSON file; `--ext` accepts a
/// catalog factor-system name or a bundle file.
#[derive(Args, Clone, Debug, Default)]
pub struct ExtArgs {
    /// Extension bundle `{"n", "g", "S", "omega"}`.
    #[arg(long)]
    pub ext: Option<String>,
    /// The kernel algebra `n`.
    #[arg(long)]
    pub n: Option<String>,
    /// The quotient algebra `g`.
    #[arg(long)]
    pub g: Option<String>,
    /// Outer action `{"dim", "matrices"}`.
    #[arg(long = "S")]
    pub s: Option<String>,
    /// `n`-valued 2-cochain on `g`.
    #[arg(long)]
    pub omega: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Load an object and re-check every structural invariant.
    Validate {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        rep: Option<String>,
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        cm: Option<String>,
    },
    /// Cocycles, coboundaries and cohomology in one degree.
    Cohomology {
        #[arg(long)]
        algebra: Option<String>,
        /// `trivial` (default), `adjoint`, `coadjoint`, or a representation file.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Factor systems and the extensions they define.
    Extension {
        #[command(subcommand)]
        action: ExtensionAction,
    },
    /// The obstruction class `[d_S ω]` of an outer action.
    Obstruction(ExtArgs),
    /// Crossed modules and their characteristic classes.
    CrossedModule {
        #[command(subcommand)]
        action: CrossedModuleAction,
    },
    /// The exact sequence of derivations of an extension.
    Derivations(ExtArgs),
    /// Whether a pair of derivations lifts, or the lifting cocycle of a family.
    Lift {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        pair: String,
    },
    /// Whether a pair of automorphisms lifts to the extension.
    Automorphism {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        pair: String,
    },
    /// List the catalog, or emit one entry as canonical JSON.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        emit: Option<std::path::PathBuf>,
    },
    /// Randomized check of the current-algebra cocycle identity.
    V2Check {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute a worked example and compare with its expected values.
    Reproduce { name: String },
}

#[derive(Subcommand)]
enum ExtensionAction {
    /// Build `n ×_{(S,ω)} g`.
    Build(ExtArgs),
    /// Report which factor-system condition fails, if any.
    Check(ExtArgs),
    /// All extensions realizing `[S]`, up to equivalence.
    Classify(ExtArgs),
    /// Rewrite the extension as an abelian extension of `g^S`.
    Reduce(ExtArgs),
}

#[derive(Subcommand)]
enum CrossedModuleAction {
    Validate {
        #[arg(long)]
        cm: String,
    },
    Class {
        #[arg(long)]
        cm: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let outcome = match cli.command {
        Command::Validate { algebra, rep, ext, cm } => commands::validate(algebra, rep, &ext, cm),
        Command::Cohomology { algebra, rep, degree } => commands::cohomology(algebra, rep, degree),
        Command::Extension { action } => match action {
            ExtensionAction::Build(a) => commands::extension_build(&a),
            ExtensionAction::Check(a) => commands::extension_check(&a),
            ExtensionAction::Classify(a) => commands::extension_classify(&a),
            ExtensionAction::Reduce(a) => commands::extension_reduce(&a),
        },
        Command::Obstruction(a) => commands::obstruction(&a),
        Command::CrossedModule { action } => match action {
            CrossedModuleAction::Validate { cm } => commands::crossed_module_validate(&cm),
            CrossedModuleAction::Class { cm } => commands::crossed_module_class(&cm),
        },
        Command::Derivations(a) => commands::derivations(&a),
        Command::Lift { ext, pair } => commands::lift(&ext, &pair),
        Command::Automorphism { ext, pair } => commands::automorphism(&ext, &pair),
        Command::Catalog { name, emit } => commands::catalog(name, emit),
        Command::V2Check { algebra, samples, seed } => commands::v2_check(&algebra, samples, seed),
        Command::Reproduce { name } => commands::reproduce(&name),
    };
    let (value, code) = match outcome {
        Ok(out) => (out.report, out.code),
        Err(e) => {
            eprintln!("liecoh: {e}");
            report::error_report(&e)
        }
    };
    print!("{}", liecoh_core::io::to_canonical_string(&value));
    ExitCode::from(code)
}
