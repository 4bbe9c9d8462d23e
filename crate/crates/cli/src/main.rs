//! `sepnoether` — zero-sum atoms, Davenport constants, and separating
//! Noether numbers of finite abelian groups, computed exactly.
//!
//! Exit codes: 0 success (and every theorem MATCH or SKIPPED for
//! `verify`), 2 unparsable group/element/vector or trivial group, 3 a
//! configured cap was exceeded, 4 invalid input or failed precondition,
//! 5 a theorem check came back MISMATCH, 1 internal error.

mod cache;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sepnoether_core::abelian::DEFAULT_ELEMENT_CAP;
use sepnoether_core::blockmonoid::{self, Context, MultVector, DEFAULT_NODE_CAP};
use sepnoether_core::constructions::{self, TheoremStatus};
use sepnoether_core::sepnoether::{self, SweepOptions, DEFAULT_SWEEP_CAP};
use sepnoether_core::{lattice, Error, GroupElement, GroupSpec, Result};

use output::Format;

#[derive(Parser)]
#[command(
    name = "sepnoether",
    version,
    about = "Zero-sum atoms, Davenport constants, and separating Noether numbers of finite abelian groups"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value_t = Format::Plain,
        env = "SEPNOETHER_OUTPUT"
    )]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SweepArgs {
    /// Worker threads; the result is identical for any count.
    #[arg(long, default_value_t = 1, env = "SEPNOETHER_WORKERS")]
    workers: usize,

    /// Sweep only one context per automorphism orbit.
    #[arg(long)]
    symmetry: bool,

    /// Disable search pruning and cross-check every candidate (slow).
    #[arg(long)]
    audit: bool,

    /// Allow the identity element to appear in contexts.
    #[arg(long)]
    include_identity: bool,

    /// Cap on search-tree nodes per atom enumeration.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP, env = "SEPNOETHER_NODE_CAP")]
    node_cap: u64,

    /// Cap on the number of group elements enumerated.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, env = "SEPNOETHER_ELEMENT_CAP")]
    element_cap: u64,

    /// Largest group order the full sweep will attempt.
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP, env = "SEPNOETHER_SWEEP_CAP")]
    sweep_cap: u64,
}

impl SweepArgs {
    fn to_options(&self) -> SweepOptions {
        SweepOptions {
            workers: self.workers,
            symmetry: self.symmetry,
            audit: self.audit,
            include_identity: self.include_identity,
            node_cap: self.node_cap,
            element_cap: self.element_cap,
            sweep_cap: self.sweep_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Canonical invariants of a group.
    GroupInfo {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long)]
        group: String,

        /// Also compute the Davenport constant (full-group atom search).
        #[arg(long)]
        davenport: bool,

        /// Cap on search-tree nodes per atom enumeration.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, env = "SEPNOETHER_NODE_CAP")]
        node_cap: u64,

        /// Cap on the number of group elements enumerated.
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, env = "SEPNOETHER_ELEMENT_CAP")]
        element_cap: u64,
    },

    /// Atoms of the block monoid over the chosen elements.
    Atoms {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long)]
        group: String,

        /// Semicolon-separated elements, e.g. "(1,0);(1,1);(0,1)".
        #[arg(long)]
        elements: String,

        /// Report only atoms of length at most this.
        #[arg(long)]
        max_len: Option<u64>,

        /// Cap on search-tree nodes per atom enumeration.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, env = "SEPNOETHER_NODE_CAP")]
        node_cap: u64,
    },

    /// Decide whether a vector is a group atom, with a decomposition
    /// witness when it is not.
    GroupAtom {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long)]
        group: String,

        /// Semicolon-separated elements, e.g. "(1,0);(1,1);(0,1)".
        #[arg(long)]
        elements: String,

        /// Multiplicity vector, e.g. "[11,1,3]".
        #[arg(long)]
        vector: String,

        /// Refute by unit scaling instead of lattice membership.
        #[arg(long)]
        refute_scaling: bool,

        /// Cap on search-tree nodes per atom enumeration.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, env = "SEPNOETHER_NODE_CAP")]
        node_cap: u64,
    },

    /// Separating Noether number by exhaustive context sweep.
    BetaSep {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long)]
        group: String,

        #[command(flatten)]
        sweep: SweepArgs,

        /// Directory of cached results, reused when the key matches.
        #[arg(long, env = "SEPNOETHER_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },

    /// Check the closed-form theorems against the computed value.
    Verify {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
        group: Option<String>,

        /// File of groups, one per line; blank lines and '#' comments are
        /// skipped.
        #[arg(long)]
        batch: Option<PathBuf>,

        /// Prime for the even-rank construction (default: smallest prime
        /// divisor of the last invariant factor).
        #[arg(long)]
        prime: Option<u64>,

        #[command(flatten)]
        sweep: SweepArgs,
    },

    /// Explicit witness construction together with its certificate.
    Witness {
        /// Group as invariant factors "12,4" or an alias like "C12xC4".
        #[arg(long)]
        group: String,

        /// Prime for the even-rank construction (default: smallest prime
        /// divisor of the last invariant factor).
        #[arg(long)]
        prime: Option<u64>,

        /// Cap on search-tree nodes per atom enumeration.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, env = "SEPNOETHER_NODE_CAP")]
        node_cap: u64,
    },
}

fn parse_elements(group: &GroupSpec, text: &str) -> Result<Vec<GroupElement>> {
    text.split(';')
        .map(|part| group.parse_element(part.trim()))
        .collect()
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GroupParse(_) | Error::TrivialGroup | Error::Parse(_) => 2,
        Error::CapExceeded(_) => 3,
        Error::InvalidInput(_) | Error::Precondition(_) | Error::DimensionMismatch { .. } => 4,
        Error::Overflow(_) | Error::Internal(_) => 1,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let fmt = cli.output;
    match cli.command {
        Command::GroupInfo {
            group,
            davenport,
            node_cap,
            element_cap,
        } => {
            let g = GroupSpec::parse(&group)?;
            let d = if davenport {
                Some(blockmonoid::davenport(&g, element_cap, node_cap)?)
            } else {
                None
            };
            println!(
                "{}",
                output::group_info(fmt, &g, d, sepnoether::identity_exclusion_note())?
            );
            Ok(0)
        }
        Command::Atoms {
            group,
            elements,
            max_len,
            node_cap,
        } => {
            let g = GroupSpec::parse(&group)?;
            let ctx = Context::new(g.clone(), parse_elements(&g, &elements)?)?;
            let atoms = ctx.enumerate_atoms(max_len, node_cap)?;
            println!("{}", output::atoms(fmt, &g, &ctx, &atoms, max_len)?);
            Ok(0)
        }
        Command::GroupAtom {
            group,
            elements,
            vector,
            refute_scaling,
            node_cap,
        } => {
            let g = GroupSpec::parse(&group)?;
            let ctx = Context::new(g.clone(), parse_elements(&g, &elements)?)?;
            let m: MultVector = vector.parse()?;
            if refute_scaling {
                let r = lattice::refute_by_scaling(&ctx, &m)?;
                println!("{}", output::refutation(fmt, &g, &ctx, &m, &r)?);
            } else {
                let is_atom = ctx.is_atom(&m)?;
                let verdict = lattice::is_group_atom(&ctx, &m, node_cap)?;
                println!(
                    "{}",
                    output::group_atom(fmt, &g, &ctx, &m, is_atom, &verdict)?
                );
            }
            Ok(0)
        }
        Command::BetaSep {
            group,
            sweep,
            cache_dir,
        } => {
            let g = GroupSpec::parse(&group)?;
            let opts = sweep.to_options();
            let cached = cache::beta_sep_cached(&g, &opts, cache_dir.as_deref())?;
            let r = &cached.result;
            let data = output::BetaSepData {
                group: g.to_string(),
                beta_sep: r.value,
                upper_bound: sepnoether::upper_bound(&g),
                witness_elements: r.witness_context.iter().map(|e| e.to_string()).collect(),
                witness_vector: r.witness_vector.to_string(),
                subsets_examined: r.subsets_examined,
                subsets_pruned: r.subsets_pruned,
                elapsed_ms: r.elapsed.as_millis(),
                cache: cached.cache,
            };
            println!("{}", output::beta_sep(fmt, &data)?);
            Ok(0)
        }
        Command::Verify {
            group,
            batch,
            prime,
            sweep,
        } => {
            let opts = sweep.to_options();
            let groups = match (&group, &batch) {
                (Some(text), None) => vec![GroupSpec::parse(text)?],
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|e| {
                        Error::InvalidInput(format!("batch file {}: {e}", path.display()))
                    })?;
                    text.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(GroupSpec::parse)
                        .collect::<Result<Vec<_>>>()?
                }
                _ => unreachable!("clap enforces exactly one of --group/--batch"),
            };
            let reports = groups
                .iter()
                .map(|g| constructions::verify_theorems(g, &opts, prime))
                .collect::<Result<Vec<_>>>()?;
            println!("{}", output::verify(fmt, &reports)?);
            let mismatch = reports
                .iter()
                .flat_map(|r| &r.entries)
                .any(|e| e.status == TheoremStatus::Mismatch);
            Ok(if mismatch { 5 } else { 0 })
        }
        Command::Witness {
            group,
            prime,
            node_cap,
        } => {
            let g = GroupSpec::parse(&group)?;
            let pkg = constructions::construction_for(&g, prime)?;
            let cert = constructions::check_support_divisibility(&pkg, node_cap)?;
            let verdict = lattice::is_group_atom(&pkg.context, &pkg.vector, node_cap)?;
            println!(
                "{}",
                output::witness(fmt, &pkg, &cert, verdict.is_group_atom)?
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
