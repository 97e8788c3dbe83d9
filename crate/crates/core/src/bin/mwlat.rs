//! Command-line front end.
//!
//! Subcommands: `selftest` (lattice, group, and covers fingerprints),
//! `solve` (exhaustive minimal-solution enumeration with class partitions
//! and pairings), `pairings` (class-level Gram report), `covers`
//! (involution-tuple census).  JSON goes to stdout; human-readable
//! summaries go to stderr.  Exit codes: 0 success, 1 bad input, 2 internal
//! invariant failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use mwlat::covers::{cover_count_formula, s3_census};
use mwlat::curve::Curve;
use mwlat::error::Error;
use mwlat::field::FieldSpec;
use mwlat::lattice;
use mwlat::pairings::{class_gram_report, clebsch_partition};
use mwlat::perm::{PermGroup, Permutation};
use mwlat::poly::Poly;
use mwlat::report::{
    extensions_to_json, gram_to_json, CoversJson, SelftestFingerprint, SolveBase, SolveReport,
};
use mwlat::solver::{
    enumerate_solutions_bounded, extension_counts, solution_set_from_parts, SolutionSet,
};

#[derive(Parser)]
#[command(name = "mwlat", version, about = "Mordell-Weil lattice toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the lattice / group / covers self-test against pinned values.
    Selftest {
        /// Also write the fingerprint JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Testing hook: perturb the root at this index before the census.
        #[arg(long, hide = true)]
        corrupt_root: Option<usize>,
    },
    /// Enumerate minimal solutions of y^2 = x^3 + S(t) over a finite field.
    Solve {
        /// Field spec: `p`, `p^k`, or `Q(rho)`.
        #[arg(long)]
        field: String,
        /// Comma-separated integer coefficients c0,...,c6 (ascending).
        #[arg(long)]
        sextic: String,
        /// Also count solutions over F_{p^m} for m = 1..=EXT.
        #[arg(long)]
        ext: Option<u32>,
        /// Work cap: fields with q^3 > budget are skipped/rejected.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        /// Also write the report JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Cache directory (content-addressed by field and sextic).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Class-level Gram/multiset report with the orthogonality partition.
    Pairings {
        #[arg(long)]
        field: String,
        #[arg(long)]
        sextic: String,
        /// Base class index for the partition.
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Involution-tuple census for triple covers of the line.
    Covers {
        /// Number of branch points (even, 4..=8).
        #[arg(long)]
        branch_points: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version exit cleanly; usage errors exit 1
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvariantViolation(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Selftest { json, corrupt_root } => cmd_selftest(json, corrupt_root),
        Command::Solve { field, sextic, ext, budget, json, cache } => {
            cmd_solve(&field, &sextic, ext, budget, json, cache)
        }
        Command::Pairings { field, sextic, base, budget, json, cache } => {
            cmd_pairings(&field, &sextic, base, budget, json, cache)
        }
        Command::Covers { branch_points, json } => cmd_covers(branch_points, json),
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Error> {
    println!("{text}");
    if let Some(p) = path {
        std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn cmd_selftest(json: Option<PathBuf>, corrupt_root: Option<usize>) -> Result<ExitCode, Error> {
    let mut roots = lattice::enumerate_roots();
    if let Some(idx) = corrupt_root {
        if idx >= roots.len() {
            return Err(Error::PointOutOfRange(idx, roots.len()));
        }
        let bumped = &roots[idx].0[0] + &mwlat::eisenstein::EisensteinInt::one();
        roots[idx].0[0] = bumped;
    }
    // Everything below runs on internally generated data, so any failure is
    // an internal invariant failure (exit 2), whatever its concrete kind.
    let census = lattice::census_of(&roots)
        .map_err(|e| Error::InvariantViolation(e.to_string()))?;

    let perms = lattice::triflection_permutations(&roots)
        .map_err(|e| Error::InvariantViolation(e.to_string()))?;
    let gens: Result<Vec<Permutation>, Error> =
        perms.iter().map(|p| Permutation::from_images(p.clone())).collect();
    let group = PermGroup::new(roots.len(), gens?)?;
    let aut_order = group.order();
    let transitive = group.orbits().len() == 1;

    let classes = lattice::mu6_classes(&roots);
    let induced = lattice::induced_class_permutations(&roots, &classes, &perms);
    let igens: Result<Vec<Permutation>, Error> =
        induced.iter().map(|p| Permutation::from_images(p.clone())).collect();
    let igroup = PermGroup::new(classes.len(), igens?)?;
    let induced_order = igroup.order();
    let induced_transitive = igroup.orbits().len() == 1;
    let stab_sizes = igroup.stabilizer_orbit_sizes(0)?;

    let covers = s3_census(6)?;

    let to_u64 = |b: &num::BigUint| -> u64 { u64::try_from(b).unwrap_or(u64::MAX) };
    let fingerprint = SelftestFingerprint {
        roots: census.roots,
        split: [census.split.0, census.split.1],
        classes_mod2: census.classes_mod2,
        theta_census: [census.upsilon_census.0, census.upsilon_census.1],
        classes_mod_sqrt3: census.classes_mod_sqrt3,
        aut_order: to_u64(&aut_order),
        induced_order: to_u64(&induced_order),
        stab_orbits: match stab_sizes.as_slice() {
            [a, b, c] => [*a, *b, *c],
            _ => [0, 0, 0],
        },
        covers: [covers.total, covers.transitive, covers.orbits],
    };
    let text = serde_json::to_string_pretty(&fingerprint).expect("serializable");
    emit(&text, json.as_deref())?;

    let ok = fingerprint == SelftestFingerprint::expected() && transitive && induced_transitive;
    if ok {
        eprintln!("selftest: all fingerprints match");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("selftest: FINGERPRINT MISMATCH");
        Ok(ExitCode::from(2))
    }
}

fn parse_sextic(spec: &FieldSpec, csv: &str) -> Result<Poly, Error> {
    let coeffs: Result<Vec<i64>, _> =
        csv.split(',').map(|c| c.trim().parse::<i64>()).collect();
    let coeffs = coeffs.map_err(|_| {
        Error::InvalidInput(format!("cannot parse sextic coefficients `{csv}`"))
    })?;
    Ok(Poly::from_i64_coeffs(spec, &coeffs))
}

fn cache_path(dir: &Path, field: &str, s: &Poly) -> PathBuf {
    let mut hasher = Sha256::new();
    hasher.update(field.as_bytes());
    hasher.update(b";");
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    hasher.update(coeffs.join(",").as_bytes());
    dir.join(format!("{}.json", hex::encode(hasher.finalize())))
}

/// Enumerate with cache reuse; returns the set and whether it was a hit.
fn solve_with_cache(
    curve: &Curve,
    budget: u128,
    cache: Option<&Path>,
) -> Result<(SolutionSet, bool), Error> {
    let field = curve.spec().to_string();
    let path = cache.map(|dir| cache_path(dir, &field, curve.s()));
    if let Some(p) = &path {
        if p.exists() {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidInput(format!("cannot read cache: {e}")))?;
            let base: SolveBase = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("corrupt cache file: {e}")))?;
            let solutions = base.to_solutions(curve.spec())?;
            let set = solution_set_from_parts(curve.clone(), solutions)?;
            return Ok((set, true));
        }
    }
    let set = enumerate_solutions_bounded(curve, budget)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)
                .map_err(|e| Error::InvalidInput(format!("cannot create cache dir: {e}")))?;
        }
        let base = SolveBase::from_set(&set);
        let text = serde_json::to_string_pretty(&base).expect("serializable");
        std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::InvalidInput(format!("cannot write cache: {e}")))?;
    }
    Ok((set, false))
}

fn cmd_solve(
    field: &str,
    sextic: &str,
    ext: Option<u32>,
    budget: u128,
    json: Option<PathBuf>,
    cache: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let spec = FieldSpec::parse(field)?;
    let s = parse_sextic(&spec, sextic)?;
    let curve = Curve::new(s)?;
    let (set, hit) = solve_with_cache(&curve, budget, cache.as_deref())?;
    if hit {
        eprintln!("cache hit for ({field}, sextic)");
    }

    let (gram, split_note) = if set.solutions.is_empty() {
        (None, "no solutions over this field".to_string())
    } else {
        let (gram_report, _classes) = class_gram_report(&set)?;
        let partition = clebsch_partition(&gram_report, 0)?;
        let note = format!(
            "base class sees {} orthogonal / {} non-orthogonal classes",
            partition.orthogonal.len(),
            partition.nonorthogonal.len()
        );
        (Some(gram_to_json(&gram_report, &partition)), note)
    };

    let extensions = match ext {
        None => None,
        Some(max_m) => Some(extensions_to_json(&extension_counts(&curve, max_m, budget)?)),
    };

    let report = SolveReport { base: SolveBase::from_set(&set), gram, extensions };
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    emit(&text, json.as_deref())?;

    eprintln!(
        "N = {} solutions over {} ({} same-y classes, {} same-x classes); {}",
        set.solutions.len(),
        set.curve.spec(),
        set.y_classes.len(),
        set.x_classes.len(),
        split_note,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_pairings(
    field: &str,
    sextic: &str,
    base: usize,
    budget: u128,
    json: Option<PathBuf>,
    cache: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let spec = FieldSpec::parse(field)?;
    let s = parse_sextic(&spec, sextic)?;
    let curve = Curve::new(s)?;
    let (set, _) = solve_with_cache(&curve, budget, cache.as_deref())?;
    let (gram_report, classes) = class_gram_report(&set)?;
    let partition = clebsch_partition(&gram_report, base)?;
    let gram = gram_to_json(&gram_report, &partition);
    let text = serde_json::to_string_pretty(&gram).expect("serializable");
    emit(&text, json.as_deref())?;
    eprintln!(
        "{} mu_6-classes; base {} sees {} orthogonal / {} non-orthogonal",
        classes.len(),
        base,
        partition.orthogonal.len(),
        partition.nonorthogonal.len(),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_covers(branch_points: u32, json: Option<PathBuf>) -> Result<ExitCode, Error> {
    let census = s3_census(branch_points)?;
    let formula = cover_count_formula(branch_points)?;
    let out = CoversJson {
        n: census.n,
        tuples: census.total,
        transitive: census.transitive,
        orbits: census.orbits,
        formula,
    };
    let text = serde_json::to_string_pretty(&out).expect("serializable");
    emit(&text, json.as_deref())?;
    if census.orbits != formula {
        return Err(Error::InvariantViolation(format!(
            "census orbits {} != closed form {}",
            census.orbits, formula
        )));
    }
    Ok(ExitCode::SUCCESS)
}
