//! Command-line front end.
//!
//! Subcommands:
//!
//! * `gen` writes a seeded random base coloring to a `.kcol` file.
//! * `step` composes a construction recipe and validates it by building it.
//! * `verify` checks a negative relation claim for a recipe and can emit or
//!   replay a certificate.
//! * `demo` runs one full pipeline: measure a random base, derive stepped
//!   thresholds from the matching bound transformation, build the stepped
//!   coloring, and verify it.
//! * `bounds` prints threshold arithmetic without touching any coloring.
//!
//! Exit codes: 0 when the checked relation holds (or the command has no
//! relation to check), 1 when a relation fails or a replay diverges, 2 for
//! usage, input, parse, or refusal errors, 3 when a node budget is exhausted.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bounds::{iterate_relation, iterate_relation_trace, sk_chain, Ground, StepTag,
    SymbolicRelation, Threshold};
use crate::certificate::Certificate;
use crate::coloring::{save_coloring, ColoringOracle, KUniformColoring};
use crate::error::{Error, Result};
use crate::recipe::{BaseSpec, Recipe, StepDirective};
use crate::search::{
    search_all_colors, verify_negative_relation, RelationStatement, SearchOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "stepup",
    version,
    about = "Step-up colorings and exact verification of negative partition relations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded random k-uniform coloring file
    Gen {
        /// Subset size the coloring is defined on
        #[arg(long)]
        k: u32,
        /// Number of ground elements
        #[arg(long)]
        n: u64,
        /// Number of colors
        #[arg(long)]
        colors: u32,
        /// Seed for the deterministic generator
        #[arg(long)]
        seed: u64,
        /// Output .kcol file
        #[arg(long)]
        out: PathBuf,
    },
    /// Compose a construction recipe and validate it
    Step {
        /// Output .recipe file
        #[arg(long)]
        out: PathBuf,
        /// Base coloring file, stored as written and resolved relative to
        /// the recipe file
        #[arg(long, conflicts_with = "base_random")]
        base_file: Option<String>,
        /// Seeded random base as k,N,colors,seed
        #[arg(long, value_name = "k,N,colors,seed")]
        base_random: Option<String>,
        /// Step directive, repeatable: `alpha <file>`, `alpha-eh`,
        /// `alpha-one`, `alpha-chi parity`, `alpha-chi three`, `two-to-three`
        #[arg(long = "apply", value_name = "DIRECTIVE")]
        apply: Vec<String>,
    },
    /// Verify a negative relation claim for a recipe, or replay a certificate
    Verify {
        /// Recipe file describing the coloring
        #[arg(long, required_unless_present = "replay", conflicts_with = "replay")]
        recipe: Option<PathBuf>,
        /// Per-color thresholds, comma separated
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "replay",
            conflicts_with = "replay"
        )]
        thresholds: Vec<u32>,
        /// Write a certificate here
        #[arg(long, conflicts_with = "replay")]
        out: Option<PathBuf>,
        /// Replay this certificate instead: rebuild, rerun, compare
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Worker threads for the search
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Abort after this many search nodes
        #[arg(long)]
        node_budget: Option<u64>,
        /// Print one status line per completed first-level branch to stderr
        #[arg(long)]
        progress: bool,
    },
    /// Measure a random base, step it up, and verify the stepped thresholds
    Demo {
        /// Which transformation: eh, p1, p2, or p3
        part: String,
        /// Base subset size
        #[arg(long)]
        k: u32,
        /// Base ground elements
        #[arg(long)]
        n: u64,
        /// Base colors
        #[arg(long, default_value_t = 2)]
        colors: u32,
        /// Base seed
        #[arg(long)]
        seed: u64,
        /// Worker threads for the search
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Write the certificate here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print bound-iteration arithmetic
    Bounds {
        #[command(subcommand)]
        what: BoundsCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Ground tower heights along the alternating chain from k = 4
    Sk {
        /// Last uniformity to print
        #[arg(long)]
        to: u32,
    },
    /// Iterate threshold transformations symbolically
    Chain {
        /// Starting point, e.g. `k=3` or `k=2,colors=2`
        #[arg(long)]
        start: String,
        /// Transformations to apply in order, comma separated:
        /// eh, p1, p2, p3, two-to-three
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<String>,
        /// Start from this finite ground size instead of the symbol N
        #[arg(long)]
        ground: Option<u128>,
        /// Start from these constant thresholds instead of the symbol n
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<i128>>,
    },
}

/// Parses arguments from the process environment and runs the command.
/// Returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => 3,
                _ => 2,
            }
        }
    }
}

pub fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Gen { k, n, colors, seed, out } => cmd_gen(*k, *n, *colors, *seed, out),
        Command::Step { out, base_file, base_random, apply } => {
            cmd_step(out, base_file.as_deref(), base_random.as_deref(), apply)
        }
        Command::Verify { recipe, thresholds, out, replay, jobs, node_budget, progress } => {
            let opts = build_options(*jobs, *node_budget, *progress);
            match replay {
                Some(cert) => cmd_replay(cert, &opts),
                None => cmd_verify(
                    recipe.as_ref().expect("clap enforces --recipe"),
                    thresholds,
                    out.as_deref(),
                    &opts,
                ),
            }
        }
        Command::Demo { part, k, n, colors, seed, jobs, out } => {
            let opts = build_options(*jobs, None, false);
            cmd_demo(part, *k, *n, *colors, *seed, &opts, out.as_deref())
        }
        Command::Bounds { what } => match what {
            BoundsCommand::Sk { to } => cmd_bounds_sk(*to),
            BoundsCommand::Chain { start, steps, ground, thresholds } => {
                cmd_bounds_chain(start, steps, *ground, thresholds.as_deref())
            }
        },
    }
}

fn build_options(jobs: u64, node_budget: Option<u64>, progress: bool) -> SearchOptions {
    let mut opts = SearchOptions::with_jobs(jobs as usize);
    opts.node_budget = node_budget;
    if progress {
        opts.progress =
            Some(Box::new(|element, nodes, best| {
                eprintln!("branch {element} nodes {nodes} best {best}");
            }));
    }
    opts
}

fn cmd_gen(k: u32, n: u64, colors: u32, seed: u64, out: &Path) -> Result<i32> {
    let coloring = KUniformColoring::random(k, n, colors, seed)?;
    save_coloring(&coloring, out)?;
    println!(
        "wrote {}: {} entries, k={k}, N={n}, colors={colors}, seed={seed}",
        out.display(),
        coloring.table().len()
    );
    Ok(0)
}

fn cmd_step(
    out: &Path,
    base_file: Option<&str>,
    base_random: Option<&str>,
    apply: &[String],
) -> Result<i32> {
    let base = match (base_file, base_random) {
        (Some(f), None) => BaseSpec::File(f.to_string()),
        (None, Some(spec)) => parse_base_random(spec)?,
        _ => return Err(Error::input("give exactly one of --base-file and --base-random")),
    };
    let steps = apply
        .iter()
        .map(|d| StepDirective::parse(d))
        .collect::<Result<Vec<StepDirective>>>()?;
    let recipe = Recipe { base, steps };
    let dir = parent_dir(out);
    let oracle = recipe.build(dir)?;
    recipe.save(out)?;
    println!(
        "wrote {}: {}-uniform coloring on {} elements with {} colors",
        out.display(),
        oracle.uniformity(),
        oracle.ground_size(),
        oracle.num_colors()
    );
    Ok(0)
}

fn cmd_verify(
    recipe_path: &Path,
    thresholds: &[u32],
    out: Option<&Path>,
    opts: &SearchOptions,
) -> Result<i32> {
    let recipe = Recipe::load(recipe_path)?;
    let oracle = recipe.build(parent_dir(recipe_path))?;
    let statement = RelationStatement::for_oracle(oracle.as_ref(), thresholds.to_vec())?;
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, opts)?;
    let cert = Certificate::from_outcome(&recipe, &outcome, None);
    print!("{}", cert.to_text());
    if let Some(path) = out {
        cert.save(path)?;
    }
    Ok(if outcome.pass { 0 } else { 1 })
}

fn cmd_replay(cert_path: &Path, opts: &SearchOptions) -> Result<i32> {
    let cert = Certificate::load(cert_path)?;
    let report = cert.replay(parent_dir(cert_path), opts)?;
    if report.matches {
        println!(
            "replay ok: {} against {} colors, result {}",
            cert_path.display(),
            cert.statement.num_colors,
            if cert.pass { "pass" } else { "fail" }
        );
        Ok(0)
    } else {
        println!("replay mismatch: {}", cert_path.display());
        for d in &report.differences {
            println!("  {d}");
        }
        Ok(1)
    }
}

fn cmd_demo(
    part: &str,
    k: u32,
    n: u64,
    colors: u32,
    seed: u64,
    opts: &SearchOptions,
    out: Option<&Path>,
) -> Result<i32> {
    let (tag, directive) = match part {
        "eh" => (StepTag::Eh, StepDirective::AlphaEh),
        "p1" => (StepTag::P1, StepDirective::AlphaOne),
        "p2" => (StepTag::P2, StepDirective::AlphaOne),
        "p3" => (StepTag::P3, StepDirective::AlphaChiThree),
        other => {
            return Err(Error::input(format!(
                "unknown demo part `{other}`; expected eh, p1, p2, or p3"
            )))
        }
    };

    // Check the transformation's side conditions before doing any search.
    let probe = SymbolicRelation::new(
        k,
        colors,
        Ground::Finite(n as u128),
        vec![Threshold::constant(1); colors as usize],
    )?;
    iterate_relation(&probe, &[tag])?;

    let base = KUniformColoring::random(k, n, colors, seed)?;
    let measured = search_all_colors(&base, opts)?;
    let maxima: Vec<u32> = measured.outcomes.iter().map(|o| o.size).collect();
    println!("base maxima: {}", join(&maxima));

    let start = SymbolicRelation::new(
        k,
        colors,
        Ground::Finite(n as u128),
        maxima.iter().map(|&m| Threshold::constant(m as i128 + 1)).collect(),
    )?;
    let stepped = iterate_relation(&start, &[tag])?;
    println!("claim: {stepped}");
    let thresholds: Vec<u32> = stepped
        .thresholds
        .iter()
        .map(|t| {
            t.eval(0)
                .map(|v| v as u32)
                .ok_or_else(|| Error::invariant("stepped threshold is not a constant"))
        })
        .collect::<Result<Vec<u32>>>()?;

    if thresholds.iter().any(|&t| t <= k + 1) {
        eprintln!(
            "vacuous instance: a stepped threshold is at most the stepped uniformity {}; \
             try a different seed or a larger base",
            k + 1
        );
        return Ok(2);
    }

    let recipe = Recipe {
        base: BaseSpec::Random { k, n, ell: colors, seed },
        steps: vec![directive],
    };
    let oracle = recipe.build(Path::new("."))?;
    let statement = RelationStatement::for_oracle(oracle.as_ref(), thresholds)?;
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, opts)?;
    let cert = Certificate::from_outcome(&recipe, &outcome, Some(maxima));
    print!("{}", cert.to_text());
    if let Some(path) = out {
        cert.save(path)?;
    }
    Ok(if outcome.pass { 0 } else { 1 })
}

fn cmd_bounds_sk(to: u32) -> Result<i32> {
    let rows = sk_chain(to)?;
    println!(" k  s(k)");
    for (k, s) in rows {
        println!("{k:>2}  {s}");
    }
    Ok(0)
}

fn cmd_bounds_chain(
    start: &str,
    steps: &[String],
    ground: Option<u128>,
    thresholds: Option<&[i128]>,
) -> Result<i32> {
    let (k, colors) = parse_chain_start(start)?;
    let mut relation = SymbolicRelation::diagonal(k, colors)?;
    if let Some(g) = ground {
        relation = SymbolicRelation::new(
            k,
            colors,
            Ground::Finite(g),
            relation.thresholds.clone(),
        )?;
    }
    if let Some(ts) = thresholds {
        if ts.len() != colors as usize {
            return Err(Error::input(format!(
                "{} thresholds for {colors} colors",
                ts.len()
            )));
        }
        relation = SymbolicRelation::new(
            k,
            colors,
            relation.ground.clone(),
            ts.iter().map(|&t| Threshold::constant(t)).collect(),
        )?;
    }
    let tags = steps
        .iter()
        .map(|s| StepTag::parse(s))
        .collect::<Result<Vec<StepTag>>>()?;
    let trace = iterate_relation_trace(&relation, &tags)?;
    println!("start: {}", trace[0]);
    for (tag, rel) in tags.iter().zip(&trace[1..]) {
        println!("after {}: {}", tag.name(), rel);
    }
    Ok(0)
}

fn parse_base_random(spec: &str) -> Result<BaseSpec> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::input(format!(
            "--base-random wants k,N,colors,seed, got `{spec}`"
        )));
    }
    let num = |what: &str, text: &str| -> Result<u64> {
        text.parse().map_err(|_| Error::input(format!("cannot parse {what} from `{text}`")))
    };
    Ok(BaseSpec::Random {
        k: num("k", parts[0])? as u32,
        n: num("N", parts[1])?,
        ell: num("colors", parts[2])? as u32,
        seed: num("seed", parts[3])?,
    })
}

fn parse_chain_start(start: &str) -> Result<(u32, u32)> {
    let mut k = None;
    let mut colors = 2u32;
    for part in start.split(',') {
        let part = part.trim();
        let Some((key, value)) = part.split_once('=') else {
            return Err(Error::input(format!(
                "--start wants `k=<uniformity>[,colors=<count>]`, got `{start}`"
            )));
        };
        let value: u32 = value
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("cannot parse `{}` in --start", part)))?;
        match key.trim() {
            "k" => k = Some(value),
            "colors" | "l" => colors = value,
            other => return Err(Error::input(format!("unknown --start key `{other}`"))),
        }
    }
    let k = k.ok_or_else(|| Error::input("--start needs k=<uniformity>"))?;
    Ok((k, colors))
}

fn parent_dir(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_random_parsing() {
        assert_eq!(
            parse_base_random("4,5,2,42").unwrap(),
            BaseSpec::Random { k: 4, n: 5, ell: 2, seed: 42 }
        );
        assert!(parse_base_random("4,5,2").is_err());
        assert!(parse_base_random("4,5,two,42").is_err());
    }

    #[test]
    fn chain_start_parsing() {
        assert_eq!(parse_chain_start("k=3").unwrap(), (3, 2));
        assert_eq!(parse_chain_start("k=2,colors=4").unwrap(), (2, 4));
        assert_eq!(parse_chain_start("k=2, l=3").unwrap(), (2, 3));
        assert!(parse_chain_start("colors=4").is_err());
        assert!(parse_chain_start("k=x").is_err());
    }

    #[test]
    fn cli_parses_representative_lines() {
        use clap::Parser as _;
        Cli::try_parse_from([
            "stepup", "gen", "--k", "4", "--n", "5", "--colors", "2", "--seed", "1", "--out",
            "b.kcol",
        ])
        .unwrap();
        Cli::try_parse_from([
            "stepup",
            "step",
            "--out",
            "r.recipe",
            "--base-random",
            "4,5,2,42",
            "--apply",
            "alpha-one",
        ])
        .unwrap();
        Cli::try_parse_from([
            "stepup", "verify", "--recipe", "r.recipe", "--thresholds", "8,8", "--jobs", "2",
        ])
        .unwrap();
        Cli::try_parse_from(["stepup", "verify", "--replay", "c.cert"]).unwrap();
        Cli::try_parse_from(["stepup", "demo", "p1", "--k", "4", "--n", "5", "--seed", "1"])
            .unwrap();
        Cli::try_parse_from(["stepup", "bounds", "sk", "--to", "10"]).unwrap();
        Cli::try_parse_from([
            "stepup", "bounds", "chain", "--start", "k=3", "--steps", "eh,eh",
        ])
        .unwrap();
        // Missing thresholds without --replay is a usage error.
        assert!(Cli::try_parse_from(["stepup", "verify", "--recipe", "r.recipe"]).is_err());
        assert!(Cli::try_parse_from(["stepup", "verify"]).is_err());
        // jobs must be positive.
        assert!(Cli::try_parse_from([
            "stepup", "verify", "--replay", "c.cert", "--jobs", "0"
        ])
        .is_err());
    }

    #[test]
    fn demo_rejects_unknown_part() {
        let err = cmd_demo(
            "p9",
            4,
            5,
            2,
            1,
            &SearchOptions::single_threaded(),
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("p9"), "{err}");
    }
}
