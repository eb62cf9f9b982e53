mod commands;
mod io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use lagdegen::json::parse_field;

use crate::io::{parse_terms, read_json, OutFormat, Output, VirtualInput};

/// Exact Pfaffian ideals, Lagrangian degeneracy loci and symmetric resolutions.
///
/// Inputs are JSON files (`-` for standard input) in the format written by `generate`.
/// Exit status: 0 when every check passes, 1 when a verification fails, 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "lagdegen", version)]
struct Cli {
    /// Coefficient field for generated instances: `Q` or `Fp:<p>`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Number of variables for generated instances.
    #[arg(long, global = true, default_value_t = 3)]
    vars: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    out: OutFormat,
    /// Rerun the case stored in a failure dump written by `verify --dump-dir`.
    #[arg(long, global = true, value_name = "DUMP")]
    replay: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Pfaffians of alternating matrices.
    #[command(subcommand)]
    Pfaffian(PfaffianCmd),
    /// Intersections, complements and local alternation of Lagrangian pairs.
    #[command(subcommand)]
    Pair(PairCmd),
    /// Degeneracy ideals of Lagrangian and symplectic pairs.
    #[command(subcommand)]
    Degeneracy(DegeneracyCmd),
    /// Resolutions, symmetric diagrams and Euler characteristics.
    #[command(subcommand)]
    Resolve(ResolveCmd),
    /// Ideal membership, equality, colon and codimension.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Write a seeded random instance.
    Generate {
        /// alternating, lagrangian-pair, split-pair or symmetric.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Run a lemma over seeded random cases.
    Verify {
        lemma: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Write one JSON dump per failing case into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum PfaffianCmd {
    Compute { input: PathBuf },
    /// Principal sub-Pfaffians of a given order.
    Subs {
        input: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Submaximal Pfaffian vector of an odd matrix and the check `A v = 0`.
    Kernel { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum PairCmd {
    /// `E ∩ F` at the origin or at `--point`.
    Intersect {
        input: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// A common Lagrangian complement at the origin.
    Complement { input: PathBuf },
    /// The local alternating map `ζ` of an even pair.
    Alternate { input: PathBuf },
    /// Change of complement `(ζ, h) -> (ζ u, -u⁻¹ h u⁻ᵀ)`; `h` is random unless given.
    Transform {
        input: PathBuf,
        #[arg(long)]
        h: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DegeneracyCmd {
    Ideal {
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Random points at which the ideal is compared with `dim(E ∩ F) >= m`.
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Compare the ideals obtained from two different complements.
    CheckIndependence {
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Minors of the symmetric map of a symplectic pair.
    Symmetric {
        input: PathBuf,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ResolveCmd {
    /// Buchsbaum-Eisenbud complex of an odd alternating matrix.
    Be { input: PathBuf },
    /// The symmetric diagram of a split pair or a symmetric instance.
    Dual { input: PathBuf },
    /// The alternating matrix `μ` built from a common complement.
    Symmetrize { input: PathBuf },
    StandardForm { input: PathBuf },
    /// Local equations `(Pf(φ^T ψ) : f)`.
    Colon { input: PathBuf },
    /// `χ(F(m))` of a virtual sum of line bundles.
    Euler {
        /// JSON with `n` and `sheaf`; alternatively give `--n` and `--terms`.
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        /// `coeff:twist` pairs, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        terms: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i64,
    },
    /// Parity obstruction for a codimension one (skew-)symmetric sheaf.
    Parity { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    Member { input: PathBuf },
    Equal { input: PathBuf },
    Colon { input: PathBuf },
    Codim { input: PathBuf },
}

fn virtual_input(input: Option<PathBuf>, n: Option<u32>, terms: Option<String>) -> Result<VirtualInput> {
    match (input, n, terms) {
        (Some(path), None, None) => read_json(&path),
        (None, Some(n), Some(t)) => Ok(VirtualInput {
            n,
            l: 0,
            kind: lagdegen::resolution::Symmetry::Symmetric,
            sheaf: parse_terms(&t)?,
        }),
        _ => anyhow::bail!("give either an input file or both --n and --terms"),
    }
}

fn run(cli: Cli) -> Result<Output> {
    use commands::*;
    if let Some(dump) = &cli.replay {
        return replay_dump(dump);
    }
    let Some(cmd) = cli.cmd else {
        anyhow::bail!("no subcommand given; see --help");
    };
    let seed = cli.seed;
    match cmd {
        Cmd::Pfaffian(c) => match c {
            PfaffianCmd::Compute { input } => pf_compute(&input),
            PfaffianCmd::Subs { input, order } => pf_subs(&input, order),
            PfaffianCmd::Kernel { input } => pf_kernel(&input),
        },
        Cmd::Pair(c) => match c {
            PairCmd::Intersect { input, point } => pair_intersect(&input, point.as_deref()),
            PairCmd::Complement { input } => pair_complement(&input),
            PairCmd::Alternate { input } => pair_alternate(&input),
            PairCmd::Transform { input, h } => pair_transform(&input, h.as_deref(), seed),
        },
        Cmd::Degeneracy(c) => match c {
            DegeneracyCmd::Ideal { input, m, samples } => degen_ideal(&input, m, samples, seed),
            DegeneracyCmd::CheckIndependence { input, m } => degen_independence(&input, m, seed),
            DegeneracyCmd::Symmetric { input, m } => degen_symmetric(&input, m),
        },
        Cmd::Resolve(c) => match c {
            ResolveCmd::Be { input } => resolve_be(&input),
            ResolveCmd::Dual { input } => resolve_dual(&input),
            ResolveCmd::Symmetrize { input } => resolve_symmetrize(&input),
            ResolveCmd::StandardForm { input } => resolve_standard_form(&input),
            ResolveCmd::Colon { input } => resolve_colon(&input),
            ResolveCmd::Euler { input, n, terms, m } => resolve_euler(&virtual_input(input, n, terms)?, m),
            ResolveCmd::Parity { input } => resolve_parity(&read_json(&input)?),
        },
        Cmd::Ideal(c) => match c {
            IdealCmd::Member { input } => ideal_member(&input),
            IdealCmd::Equal { input } => ideal_equal(&input),
            IdealCmd::Colon { input } => ideal_colon(&input),
            IdealCmd::Codim { input } => ideal_codim(&input),
        },
        Cmd::Generate { kind, size, degree } => {
            generate(&kind, size, degree, parse_field(&cli.field)?, cli.vars, seed)
        }
        Cmd::Verify { lemma, count, dump_dir } => verify(&lemma, count, seed, dump_dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out;
    match run(cli) {
        Ok(o) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", o.render(out));
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
