//! CLI surface: commands, flags, and the run configuration they produce.

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hopf",
    about = "Higher Hopf formula computations on finite groups, Lie algebras, and precrossed modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute H_{n+1} of an object by building an n-presentation.
    Compute {
        /// Path to the object JSON (group or Lie, per the variety).
        #[arg(long)]
        input: String,
        /// Homology degree parameter n (reports H_{n+1}).
        #[arg(long)]
        degree: usize,
        /// Reflector: ab | nil:k | sol:k | peiffer.
        #[arg(long)]
        reflector: String,
        /// Variety: group:c2:p3 | group:abelian:p5 | lie:c3:p5 | ...
        #[arg(long)]
        variety: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Carrier size cap (elements); HOPF_SIZE_CAP overrides the default.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Evaluate the Hopf formula on a user-supplied n-presentation cube.
    EvaluateCube {
        #[arg(long)]
        input: String,
        #[arg(long)]
        reflector: String,
        /// Required for group/lie cubes when deduction is unwanted;
        /// ignored for pxmod cubes.
        #[arg(long)]
        variety: Option<String>,
        /// Accept pxmod cubes whose projectivity cannot be checked.
        #[arg(long, default_value_t = false)]
        trust_projective: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Validate a cube as an n-fold extension (and presentation when a
    /// variety is supplied).
    ValidateCube {
        #[arg(long)]
        input: String,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Centralize an extension cube: quotient the initial vertex by L_n.
    Centralize {
        #[arg(long)]
        input: String,
        #[arg(long)]
        reflector: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Build an n-presentation of an object and emit it as a cube.
    Present {
        #[arg(long)]
        input: String,
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the closed-form vs categorical denominator oracle over a
    /// generated corpus; exits nonzero on any disagreement.
    Oracle {
        #[arg(long, default_value_t = 27)]
        max_order: u32,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Extension dimension for the corpus (1 or 2).
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Recompute homology across perturbed presentations and compare.
    BaerCheck {
        #[arg(long)]
        input: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        reflector: String,
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 2)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<u64>,
    },
}

/// Resolve the effective size cap: flag, then HOPF_SIZE_CAP, then default.
pub fn effective_cap(flag: Option<u64>) -> u64 {
    if let Some(c) = flag {
        return c;
    }
    if let Ok(s) = std::env::var("HOPF_SIZE_CAP") {
        if let Ok(c) = s.parse() {
            return c;
        }
    }
    hopf_core::DEFAULT_SIZE_CAP
}
