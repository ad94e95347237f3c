//! `prv`: exact computations around Weyl groups, tensor multiplicities, and
//! loop-group lattices, with exhaustive verification sweeps.
//!
//! Exit codes: 0 when the computation succeeds and every verified property
//! holds; 1 when a verified property fails; 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use prv_core::looplattice::{
    self, chevalley_distance, convolution_membership, parse_matrix, LatticePoint,
    LaurentMatrix,
};
use prv_core::prvcore::{dominant_box, PrvContext, SweepRecord, SweepSummary};
use prv_core::repcalc::Reps;
use prv_core::rootdata::{CoweightVec, LatticeForm, RootDatum, WeightVec};
use prv_core::transfer::TransferMap;
use prv_core::weylgrp::WeylElement;

#[derive(Parser)]
#[command(
    name = "prv",
    about = "Exact Weyl-group, tensor-multiplicity, and loop-lattice computations",
    version
)]
struct Cli {
    /// Emit machine-readable JSON (JSON lines for sweeps and searches).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Sc,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    /// Coordinates in the datum's own lattice basis.
    Lattice,
    /// Coefficients in the simple roots (weights) or simple coroots (coweights).
    Coroot,
}

#[derive(Args)]
struct DatumArgs {
    /// Type label, e.g. A2, B3xT1.
    #[arg(long = "type")]
    type_label: String,

    /// Lattice form of the datum.
    #[arg(long, value_enum, default_value = "sc")]
    form: Form,

    /// Interpretation of entered weight coordinates.
    #[arg(long, value_enum, default_value = "lattice")]
    basis: Basis,
}

impl DatumArgs {
    fn datum(&self) -> Result<RootDatum, String> {
        let form = match self.form {
            Form::Sc => LatticeForm::SimplyConnected,
            Form::Adjoint => LatticeForm::Adjoint,
        };
        RootDatum::from_label(&self.type_label, form).map_err(|e| e.to_string())
    }

    fn dominant_weight(&self, datum: &RootDatum, text: &str) -> Result<WeightVec, String> {
        let w = self.weight(datum, text)?;
        if !datum.is_dominant(&w) {
            return Err(format!("weight {w} is not dominant for {}", self.type_label));
        }
        Ok(w)
    }

    fn weight(&self, datum: &RootDatum, text: &str) -> Result<WeightVec, String> {
        let coords = parse_coords(text)?;
        match self.basis {
            Basis::Lattice => {
                if coords.len() != datum.rank() {
                    return Err(format!(
                        "weight {text:?} has {} coordinates, datum rank is {}",
                        coords.len(),
                        datum.rank()
                    ));
                }
                Ok(WeightVec::new(coords))
            }
            Basis::Coroot => {
                if coords.len() != datum.num_simple() {
                    return Err(format!(
                        "root-basis weight {text:?} needs {} coefficients",
                        datum.num_simple()
                    ));
                }
                let mut v = vec![0i64; datum.rank()];
                for (j, c) in coords.iter().enumerate() {
                    for (k, x) in v.iter_mut().enumerate() {
                        *x += c * datum.simple_roots()[j][k];
                    }
                }
                Ok(WeightVec::new(v))
            }
        }
    }
}

fn parse_coords(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}

/// An argument that is either inline matrix text or `@path` to a file.
fn load_matrix(arg: &str) -> Result<LaurentMatrix, String> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?
    } else {
        arg.to_string()
    };
    parse_matrix(text.trim()).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Lower-bound, identity, and multiplicity-one checks over a full box.
    Refined,
    /// Orbit-dimension identity only.
    Identity,
    /// Multiplicity-one check only.
    Kostant,
    /// Tensor multiplicities against the character-product oracle.
    Oracle,
    /// Loop-lattice orbit dimensions against the valuation sums.
    Cross,
    /// Torus-in-G implication on sum-zero triples.
    TorusImp,
    /// The SL2-in-SO5 failure search with saturation and lattice checks.
    Appendix,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ν = v(−λ−wμ) and check the triple invariant is nonzero.
    Prv {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Weyl word, e.g. "s1 s2" or "e".
        #[arg(long)]
        w: String,
    },
    /// As `prv`, plus the double-coset lower bound m.
    Refined {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        w: String,
    },
    /// Multiplicity of V(ν) inside V(λ)⊗V(μ).
    Tensor {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Dimension of the invariant subspace of V(λ₁)⊗…⊗V(λ_s).
    Invariants {
        #[command(flatten)]
        datum: DatumArgs,
        /// Repeatable: one dominant weight per factor.
        #[arg(long = "weight", required = true)]
        weights: Vec<String>,
    },
    /// Check ⟨λ+μ+ν, ρ∨⟩ against the valuation sum over all coroots.
    DimIdentity {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        w: String,
    },
    /// All (w, v) with ν = v(−λ−wμ); empty output certifies none exist.
    Pairs {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Stabilizer/orbit dimensions for a list of loop-group elements.
    OrbitDim {
        /// Run the built-in SL₂ example end to end.
        #[arg(long, conflicts_with_all = ["elements", "trunc"])]
        sl2_example: bool,
        /// Repeatable: group element as matrix text or @file.
        #[arg(long = "element")]
        elements: Vec<String>,
        /// Truncation order N.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Chevalley distance d(L₁, L₂) between two lattice points.
    Distance {
        /// Matrix text or @file for the first point.
        #[arg(long)]
        l1: String,
        #[arg(long)]
        l2: String,
    },
    /// Membership of a point tuple in the cyclic convolution cycle.
    Membership {
        /// Repeatable: lattice point as matrix text or @file.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        /// Targets as semicolon-separated coroot-coordinate vectors,
        /// e.g. "1;1;1" for SL₂.
        #[arg(long)]
        targets: String,
    },
    /// Transfer a dominant coweight along a preset map.
    Transfer {
        /// `torus:<label>`, `sl2-root:<label>:<i>`, or `custom:<json>`.
        #[arg(long)]
        preset: String,
        #[arg(long)]
        weight: String,
    },
    /// Exhaustive search for implication failures in a coordinate box.
    Search {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// Smallest scaling N′ ≤ nmax giving nonzero dual-side invariants.
    Saturate {
        #[arg(long)]
        preset: String,
        /// Semicolon-separated source coweights, e.g. "1;1;1".
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = 10)]
        nmax: i64,
    },
    /// Exhaustive verification sweeps.
    Sweep {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Comma-separated type labels (defaults per suite).
        #[arg(long)]
        types: Option<String>,
        /// Coordinate bound of the box.
        #[arg(long)]
        bound: Option<i64>,
        /// Worker threads; output is deterministic regardless.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(json_mode: bool, value: serde_json::Value, plain: impl FnOnce()) {
    if json_mode {
        println!("{value}");
    } else {
        plain();
    }
}

fn big_json(b: &num_bigint::BigUint) -> serde_json::Value {
    b.to_string()
        .parse::<u64>()
        .map(serde_json::Value::from)
        .unwrap_or_else(|_| serde_json::Value::from(b.to_string()))
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Prv { datum, lambda, mu, w } => {
            let d = datum.datum()?;
            let lam = datum.dominant_weight(&d, lambda)?;
            let mu = datum.dominant_weight(&d, mu)?;
            let w = WeylElement::parse(&d, w).map_err(|e| e.to_string())?;
            let ctx = PrvContext::new(&d).map_err(|e| e.to_string())?;
            let verdict = ctx.prv_verify(&lam, &mu, &w);
            emit(
                cli.json,
                serde_json::json!({
                    "nu": verdict.nu.coords,
                    "v": verdict.v.word_string(),
                    "dim": big_json(&verdict.invariant_dim),
                    "holds": verdict.holds,
                }),
                || {
                    println!("nu = {}", verdict.nu);
                    println!("v = {}", verdict.v.word_string());
                    println!("invariant dim = {}", verdict.invariant_dim);
                    println!("holds: {}", verdict.holds);
                },
            );
            Ok(verdict.holds)
        }
        Command::Refined { datum, lambda, mu, w } => {
            let d = datum.datum()?;
            let lam = datum.dominant_weight(&d, lambda)?;
            let mu = datum.dominant_weight(&d, mu)?;
            let w = WeylElement::parse(&d, w).map_err(|e| e.to_string())?;
            let ctx = PrvContext::new(&d).map_err(|e| e.to_string())?;
            let verdict = ctx.refined_verify(&lam, &mu, &w);
            emit(
                cli.json,
                serde_json::json!({
                    "nu": verdict.nu.coords,
                    "m": verdict.m,
                    "dim": big_json(&verdict.dim),
                    "holds": verdict.holds,
                }),
                || {
                    println!("nu = {}", verdict.nu);
                    println!("m = {}", verdict.m);
                    println!("invariant dim = {}", verdict.dim);
                    println!("holds (dim >= m >= 1): {}", verdict.holds);
                },
            );
            Ok(verdict.holds)
        }
        Command::Tensor { datum, lambda, mu, nu } => {
            let d = datum.datum()?;
            let lam = datum.dominant_weight(&d, lambda)?;
            let mu = datum.dominant_weight(&d, mu)?;
            let nu = datum.dominant_weight(&d, nu)?;
            let reps = Reps::new(&d);
            let mult = reps.tensor_multiplicity(&lam, &mu, &nu);
            emit(cli.json, serde_json::json!({ "multiplicity": big_json(&mult) }), || {
                println!("multiplicity = {mult}");
            });
            Ok(true)
        }
        Command::Invariants { datum, weights } => {
            let d = datum.datum()?;
            let ws: Vec<WeightVec> =
                weights.iter().map(|t| datum.dominant_weight(&d, t)).collect::<Result<_, _>>()?;
            let reps = Reps::new(&d);
            let dim = reps.invariant_dim(&ws);
            emit(cli.json, serde_json::json!({ "dim": big_json(&dim) }), || {
                println!("invariant dim = {dim}");
            });
            Ok(true)
        }
        Command::DimIdentity { datum, lambda, mu, w } => {
            let d = datum.datum()?;
            let lam = datum.dominant_weight(&d, lambda)?;
            let mu = datum.dominant_weight(&d, mu)?;
            let w = WeylElement::parse(&d, w).map_err(|e| e.to_string())?;
            let ctx = PrvContext::new(&d).map_err(|e| e.to_string())?;
            let id = ctx.dimension_identity(&lam, &mu, &w);
            emit(
                cli.json,
                serde_json::json!({ "lhs": id.lhs, "rhs": id.rhs, "equal": id.equal }),
                || println!("lhs = {}, rhs = {}, equal: {}", id.lhs, id.rhs, id.equal),
            );
            Ok(id.equal)
        }
        Command::Pairs { datum, lambda, mu, nu } => {
            let d = datum.datum()?;
            let lam = datum.dominant_weight(&d, lambda)?;
            let mu = datum.dominant_weight(&d, mu)?;
            let nu = datum.dominant_weight(&d, nu)?;
            let ctx = PrvContext::new(&d).map_err(|e| e.to_string())?;
            let pairs = ctx.prv_pairs(&lam, &mu, &nu);
            emit(
                cli.json,
                serde_json::json!({
                    "pairs": pairs
                        .iter()
                        .map(|(w, v)| serde_json::json!({
                            "w": w.word_string(),
                            "v": v.word_string(),
                        }))
                        .collect::<Vec<_>>(),
                }),
                || {
                    if pairs.is_empty() {
                        println!("no (w, v) pairs: the triple is not of the corrected form");
                    } else {
                        for (w, v) in &pairs {
                            println!("w = {}, v = {}", w.word_string(), v.word_string());
                        }
                    }
                },
            );
            Ok(true)
        }
        Command::OrbitDim { sl2_example, elements, trunc } => {
            if *sl2_example {
                let ex = looplattice::sl2_example().map_err(|e| e.to_string())?;
                let ok = ex.identities_hold
                    && ex.membership
                    && ex.stab_dims.orbit_dim == 3
                    && ex.basis_valuations == vec![2, 1, 0]
                    && ex.valuations_certified;
                emit(
                    cli.json,
                    serde_json::json!({
                        "identities_hold": ex.identities_hold,
                        "membership": ex.membership,
                        "distances": ex.distances.iter().map(|d| d.coords.clone()).collect::<Vec<_>>(),
                        "orbit_dim": ex.stab_dims.orbit_dim,
                        "stab_dim": ex.stab_dims.stab_dim_mod_tn,
                        "stable": ex.stab_dims.stable,
                        "basis_valuations": ex.basis_valuations,
                        "certified": ex.valuations_certified,
                        "ok": ok,
                    }),
                    || {
                        println!("matrix identities hold: {}", ex.identities_hold);
                        println!("membership of ([a^], y, [0]): {}", ex.membership);
                        println!("orbit_dim = {}", ex.stab_dims.orbit_dim);
                        println!(
                            "stabilizer valuations (e, h, f) = ({}, {}, {})",
                            ex.basis_valuations[0], ex.basis_valuations[1], ex.basis_valuations[2]
                        );
                        println!("certified: {}", ex.valuations_certified);
                    },
                );
                return Ok(ok);
            }
            if elements.is_empty() {
                return Err("need --sl2-example or at least one --element".into());
            }
            let elts: Vec<LaurentMatrix> =
                elements.iter().map(|e| load_matrix(e)).collect::<Result<_, _>>()?;
            let n = trunc.unwrap_or(4);
            let dims = looplattice::stabilizer_intersection_dim(&elts, n)
                .map_err(|e| e.to_string())?;
            emit(
                cli.json,
                serde_json::json!({
                    "stab_dim_mod_tn": dims.stab_dim_mod_tn,
                    "orbit_dim": dims.orbit_dim,
                    "stable": dims.stable,
                    "n": n,
                }),
                || {
                    println!("stab dim mod t^{n} = {}", dims.stab_dim_mod_tn);
                    println!("orbit dim = {}", dims.orbit_dim);
                    println!("stable: {}", dims.stable);
                },
            );
            Ok(dims.stable)
        }
        Command::Distance { l1, l2 } => {
            let p1 = LatticePoint::new(load_matrix(l1)?).map_err(|e| e.to_string())?;
            let p2 = LatticePoint::new(load_matrix(l2)?).map_err(|e| e.to_string())?;
            let dist = chevalley_distance(&p1, &p2).map_err(|e| e.to_string())?;
            emit(cli.json, serde_json::json!({ "distance": dist.coords }), || {
                println!("d(L1, L2) = {dist} (coroot coordinates)");
            });
            Ok(true)
        }
        Command::Membership { points, targets } => {
            let pts: Vec<LatticePoint> = points
                .iter()
                .map(|p| LatticePoint::new(load_matrix(p)?).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let tgt: Vec<CoweightVec> = targets
                .split(';')
                .map(|t| parse_coords(t).map(CoweightVec::new))
                .collect::<Result<_, _>>()?;
            let member = convolution_membership(&pts, &tgt).map_err(|e| e.to_string())?;
            emit(cli.json, serde_json::json!({ "member": member }), || {
                println!("member: {member}");
            });
            Ok(member)
        }
        Command::Transfer { preset, weight } => {
            let tm = TransferMap::from_preset(preset).map_err(|e| e.to_string())?;
            let coords = parse_coords(weight)?;
            let lam = CoweightVec::new(coords);
            let out = tm.transfer(&lam).map_err(|e| e.to_string())?;
            emit(cli.json, serde_json::json!({ "transferred": out.coords }), || {
                println!("transfer({lam}) = {out}");
            });
            Ok(true)
        }
        Command::Search { preset, bound, s } => {
            let tm = TransferMap::from_preset(preset).map_err(|e| e.to_string())?;
            let failures = tm.search_failures(*bound, *s).map_err(|e| e.to_string())?;
            if cli.json {
                for f in &failures {
                    println!("{}", f.to_json());
                }
            } else {
                println!("{} implication failures within bound {bound}", failures.len());
                for f in &failures {
                    let coords: Vec<String> =
                        f.tuple.iter().map(|c| c.to_string()).collect();
                    println!("  ({}) h_dim = {}", coords.join(", "), f.h_dim);
                }
            }
            Ok(true)
        }
        Command::Saturate { preset, triple, nmax } => {
            let tm = TransferMap::from_preset(preset).map_err(|e| e.to_string())?;
            let tuple: Vec<CoweightVec> = triple
                .split(';')
                .map(|t| parse_coords(t).map(CoweightVec::new))
                .collect::<Result<_, _>>()?;
            let n = tm.saturation_check(&tuple, *nmax).map_err(|e| e.to_string())?;
            emit(cli.json, serde_json::json!({ "n_prime": n }), || match n {
                Some(n) => println!("smallest N' = {n}"),
                None => println!("no N' <= {nmax}"),
            });
            Ok(n.is_some())
        }
        Command::Sweep { suite, types, bound, jobs } => run_sweep(cli, *suite, types, *bound, *jobs),
    }
}

// ---------------------------------------------------------------------------
// Sweeps

fn split_types(types: &Option<String>, default: &[&str]) -> Vec<String> {
    match types {
        Some(t) => t.split(',').map(|s| s.trim().to_string()).collect(),
        None => default.iter().map(|s| s.to_string()).collect(),
    }
}

fn run_sweep(
    cli: &Cli,
    suite: Suite,
    types: &Option<String>,
    bound: Option<i64>,
    jobs: usize,
) -> Result<bool, String> {
    match suite {
        Suite::Refined | Suite::Identity | Suite::Kostant => {
            let labels = split_types(types, &["A1", "A2", "B2"]);
            let bound = bound.unwrap_or(2);
            let mut all_ok = true;
            for label in &labels {
                let summary = refined_sweep_parallel(cli, label, bound, jobs)?;
                let ok = match suite {
                    Suite::Refined => summary.clean(),
                    Suite::Identity => summary.identity_violations == 0,
                    Suite::Kostant => summary.kostant_violations == 0,
                    _ => unreachable!(),
                };
                if !cli.json {
                    println!(
                        "{label}: {} instances, violations: prv {} refined {} identity {} kostant {}",
                        summary.instances,
                        summary.prv_violations,
                        summary.refined_violations,
                        summary.identity_violations,
                        summary.kostant_violations
                    );
                }
                all_ok &= ok;
            }
            Ok(all_ok)
        }
        Suite::Oracle => {
            let labels = split_types(types, &["A1", "A2", "B2"]);
            let bound = bound.unwrap_or(3);
            let mut ok = true;
            for label in &labels {
                let d = RootDatum::simply_connected(label).map_err(|e| e.to_string())?;
                let reps = Reps::new(&d);
                let weights = dominant_box(&d, bound);
                let mut mismatches = 0u64;
                let mut count = 0u64;
                for lam in &weights {
                    for mu in &weights {
                        let klimyk = reps.tensor_decompose(lam, mu);
                        let oracle =
                            reps.character_product_oracle(lam, mu).map_err(|e| e.to_string())?;
                        count += 1;
                        if *klimyk != oracle {
                            mismatches += 1;
                        }
                        if cli.json {
                            println!(
                                "{}",
                                serde_json::json!({
                                    "type": label,
                                    "lambda": lam.coords,
                                    "mu": mu.coords,
                                    "agree": *klimyk == oracle,
                                })
                            );
                        }
                    }
                }
                if !cli.json {
                    println!("{label}: {count} pairs, {mismatches} oracle mismatches");
                }
                ok &= mismatches == 0;
            }
            Ok(ok)
        }
        Suite::Cross => {
            let labels = split_types(types, &["A1", "A2"]);
            let bound = bound.unwrap_or(2);
            let mut ok = true;
            for label in &labels {
                let (count, mismatches) = cross_orbit_sweep(cli, label, bound)?;
                if !cli.json {
                    println!("{label}: {count} instances, {mismatches} orbit-dimension mismatches");
                }
                ok &= mismatches == 0;
            }
            Ok(ok)
        }
        Suite::TorusImp => {
            let labels = split_types(types, &["A2", "B2"]);
            let bound = bound.unwrap_or(3);
            let mut ok = true;
            for label in &labels {
                let tm = TransferMap::torus_in_g(label).map_err(|e| e.to_string())?;
                let session = tm.session();
                let triples =
                    prv_core::transfer::sum_zero_triples(tm.source().rank(), bound);
                let mut failures = 0u64;
                for triple in &triples {
                    let imp = session
                        .check_implication(&triple[..])
                        .map_err(|e| e.to_string())?;
                    if !imp.imp_ok {
                        failures += 1;
                    }
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "type": label,
                                "triple": triple.iter().map(|c| c.coords.clone()).collect::<Vec<_>>(),
                                "imp_ok": imp.imp_ok,
                            })
                        );
                    }
                }
                if !cli.json {
                    println!("torus:{label}: {} sum-zero triples, {failures} implication failures", triples.len());
                }
                ok &= failures == 0;
            }
            Ok(ok)
        }
        Suite::Appendix => {
            let bound = bound.unwrap_or(10);
            let mut any_failures = false;
            let mut all_saturate = true;
            for orientation in [1usize, 2] {
                let tm = TransferMap::sl2_via_root("B2", orientation).map_err(|e| e.to_string())?;
                let session = tm.session();
                let failures = session.search_failures(bound, 3).map_err(|e| e.to_string())?;
                let mut saturated = 0u64;
                for f in &failures {
                    let n = session
                        .saturation_check(&f.tuple, 10)
                        .map_err(|e| e.to_string())?;
                    if n.is_some() {
                        saturated += 1;
                    } else {
                        all_saturate = false;
                    }
                    if cli.json {
                        let mut j = f.to_json();
                        j["orientation"] = orientation.into();
                        j["n_prime"] = n.into();
                        println!("{j}");
                    }
                }
                if !cli.json {
                    println!(
                        "sl2-root:B2:{orientation}: {} failures in bound {bound}, {} saturate within 10",
                        failures.len(),
                        saturated
                    );
                }
                any_failures |= !failures.is_empty();
            }
            Ok(any_failures && all_saturate)
        }
    }
}

/// Deterministic parallel refined sweep: the (λ, μ) pair list is split into
/// contiguous chunks, each worker runs its own context, and records are
/// emitted in the original order.
fn refined_sweep_parallel(
    cli: &Cli,
    label: &str,
    bound: i64,
    jobs: usize,
) -> Result<SweepSummary, String> {
    let datum = RootDatum::simply_connected(label).map_err(|e| e.to_string())?;
    let weights = dominant_box(&datum, bound);
    let pairs: Vec<(WeightVec, WeightVec)> = weights
        .iter()
        .flat_map(|l| weights.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    let jobs = jobs.max(1).min(pairs.len().max(1));
    let chunk_size = pairs.len().div_ceil(jobs);
    let chunks: Vec<&[(WeightVec, WeightVec)]> = pairs.chunks(chunk_size.max(1)).collect();

    let results: Vec<Vec<SweepRecord>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let datum = &datum;
                scope.spawn(move || {
                    let ctx = PrvContext::new(datum).expect("datum within caps");
                    let mut records = Vec::new();
                    for (lam, mu) in *chunk {
                        records.extend(ctx.sweep_pair(lam, mu));
                    }
                    records
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut summary = SweepSummary::default();
    for records in &results {
        for rec in records {
            summary.absorb(rec);
            if cli.json {
                println!("{}", rec.to_json());
            } else if !rec.ok() {
                println!("VIOLATION {}", rec.to_json());
            }
        }
    }
    Ok(summary)
}

/// Orbit dimensions of torus-translate pairs against the valuation sums,
/// over the adjoint datum (whose weights are SL_m cocharacters).
fn cross_orbit_sweep(cli: &Cli, label: &str, bound: i64) -> Result<(u64, u64), String> {
    let m = match label {
        "A1" => 2usize,
        "A2" => 3,
        "A3" => 4,
        _ => return Err(format!("cross sweep supports A1, A2, A3; got {label}")),
    };
    let datum = RootDatum::adjoint(label).map_err(|e| e.to_string())?;
    let ctx = PrvContext::new(&datum).map_err(|e| e.to_string())?;
    let weights = dominant_box(&datum, bound);
    let mut count = 0u64;
    let mut mismatches = 0u64;
    for lam in &weights {
        for mu in &weights {
            for w in ctx.group.elements() {
                let id = ctx.dimension_identity(lam, mu, w);
                let wmu = w.apply(mu);
                let shifted: Vec<i64> =
                    lam.coords.iter().zip(&wmu.coords).map(|(a, b)| a + b).collect();
                let t_lam = looplattice::torus_point(m, &CoweightVec::new(lam.coords.clone()))
                    .map_err(|e| e.to_string())?;
                let t_shift = looplattice::torus_point(m, &CoweightVec::new(shifted))
                    .map_err(|e| e.to_string())?;
                let profile = ctx.stabilizer_valuations(lam, mu, w);
                let max_val = profile.entries.iter().map(|(_, v)| *v).max().unwrap_or(0);
                let n = (max_val + 2) as usize;
                let dims = looplattice::stabilizer_intersection_dim(
                    &[t_lam.rep().clone(), t_shift.rep().clone()],
                    n,
                )
                .map_err(|e| e.to_string())?;
                count += 1;
                let agree = dims.orbit_dim == id.rhs && dims.stable;
                if !agree {
                    mismatches += 1;
                }
                if cli.json {
                    println!(
                        "{}",
                        serde_json::json!({
                            "type": label,
                            "lambda": lam.coords,
                            "mu": mu.coords,
                            "w": w.word_string(),
                            "orbit_dim": dims.orbit_dim,
                            "valuation_sum": id.rhs,
                            "agree": agree,
                        })
                    );
                }
            }
        }
    }
    Ok((count, mismatches))
}
