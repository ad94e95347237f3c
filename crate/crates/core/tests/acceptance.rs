//! Acceptance suite: each test runs one criterion end to end, prints a
//! single PASS/FAIL line (visible with `--nocapture`), and asserts it.
//! Every comparison is exact integer equality; the stated runtime budgets
//! are asserted where given.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use prv_core::looplattice::{self, torus_point};
use prv_core::prvcore::{dominant_box, PrvContext, SweepSummary};
use prv_core::repcalc::Reps;
use prv_core::rootdata::{CoweightVec, RootDatum, WeightVec};
use prv_core::transfer::{sum_zero_triples, TransferMap};
use prv_core::weylgrp::{WeylElement, WeylGroup};

fn report(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

const SWEEP_TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

fn full_sweep() -> (SweepSummary, u64) {
    let mut total = SweepSummary::default();
    let mut instances = 0;
    for label in SWEEP_TYPES {
        let datum = RootDatum::simply_connected(label).unwrap();
        let ctx = PrvContext::new(&datum).unwrap();
        let summary = ctx.sweep(2, |_| {});
        instances += summary.instances;
        total.merge(&summary);
    }
    (total, instances)
}

#[test]
fn criterion_1_refined_prv_sweep() {
    let start = Instant::now();
    let (summary, instances) = full_sweep();
    let elapsed = start.elapsed();
    let ok = summary.prv_violations == 0
        && summary.refined_violations == 0
        && elapsed.as_secs() < 600;
    report(
        1,
        ok,
        &format!(
            "dim >= m >= 1 on {instances} instances over {SWEEP_TYPES:?}, bound 2, \
             {} violations, {:.2?}",
            summary.prv_violations + summary.refined_violations,
            elapsed
        ),
    );
}

#[test]
fn criterion_2_dimension_identity_sweep() {
    let (summary, instances) = full_sweep();
    report(
        2,
        summary.identity_violations == 0,
        &format!(
            "valuation-sum identity exact on {instances} instances, {} violations",
            summary.identity_violations
        ),
    );
}

#[test]
fn criterion_3_kostant_multiplicity_one() {
    let (summary, instances) = full_sweep();
    report(
        3,
        summary.kostant_violations == 0,
        &format!(
            "multiplicity exactly 1 whenever applicable on {instances} instances, \
             {} violations",
            summary.kostant_violations
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 4: oracle equivalences

/// Number of ways to write `target` (coefficients in the simple roots) as a
/// nonnegative integer combination of the positive roots. Brute force,
/// independent of every production code path.
fn kostant_partition(pos_root_exprs: &[Vec<i64>], idx: usize, target: &[i64]) -> u64 {
    if target.iter().all(|&c| c == 0) {
        return 1;
    }
    if idx == pos_root_exprs.len() {
        return 0;
    }
    let root = &pos_root_exprs[idx];
    let mut count = 0;
    let mut k = 0i64;
    loop {
        let residual: Vec<i64> = target.iter().zip(root).map(|(t, r)| t - k * r).collect();
        if residual.iter().any(|&c| c < 0) {
            break;
        }
        count += kostant_partition(pos_root_exprs, idx + 1, &residual);
        k += 1;
    }
    count
}

/// Weight multiplicity by the alternating sum of partition counts over the
/// Weyl group.
fn kostant_multiplicity(
    datum: &RootDatum,
    group: &WeylGroup,
    lambda: &WeightVec,
    mu: &WeightVec,
) -> BigInt {
    let exprs: Vec<Vec<i64>> =
        datum.positive_roots().iter().map(|r| r.expr.clone()).collect();
    let two_rho = &datum.two_rho().coords;
    let shifted: Vec<i64> = lambda
        .coords
        .iter()
        .zip(two_rho)
        .map(|(l, r)| 2 * l + r)
        .collect();
    let mut total = BigInt::zero();
    for w in group.elements() {
        let img = w.apply(&WeightVec::new(shifted.clone()));
        let doubled: Vec<i64> = img
            .coords
            .iter()
            .zip(two_rho)
            .zip(&mu.coords)
            .map(|((x, r), m)| x - r - 2 * m)
            .collect();
        if doubled.iter().any(|c| c % 2 != 0) {
            continue;
        }
        let x: Vec<i64> = doubled.iter().map(|c| c / 2).collect();
        let Some(expr) = datum.root_lattice_expr(&x) else { continue };
        if expr.iter().any(|&c| c < 0) {
            continue;
        }
        let p = BigInt::from(kostant_partition(&exprs, 0, &expr));
        if w.length() % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    total
}

#[test]
fn criterion_4_oracle_equivalence() {
    // (a) Klimyk tensor multiplicities equal the character-product oracle
    let mut pairs_checked = 0u64;
    let mut pair_mismatches = 0u64;
    for label in ["A1", "A2", "B2"] {
        let datum = RootDatum::simply_connected(label).unwrap();
        let reps = Reps::new(&datum);
        let weights = dominant_box(&datum, 3);
        for lam in &weights {
            for mu in &weights {
                let klimyk = reps.tensor_decompose(lam, mu);
                let oracle = reps.character_product_oracle(lam, mu).unwrap();
                pairs_checked += 1;
                if *klimyk != oracle {
                    pair_mismatches += 1;
                }
            }
        }
    }
    // (b) Freudenthal multiplicities equal the Kostant-partition brute force
    let mut weights_checked = 0u64;
    let mut weight_mismatches = 0u64;
    for label in ["A1", "A2"] {
        let datum = RootDatum::simply_connected(label).unwrap();
        let group = WeylGroup::enumerate(&datum).unwrap();
        let reps = Reps::new(&datum);
        for lam in dominant_box(&datum, 3) {
            let character = reps.character(&lam);
            for (wt, mult) in character.entries.iter() {
                let mu = WeightVec::new(wt.clone());
                let brute = kostant_multiplicity(&datum, &group, &lam, &mu);
                weights_checked += 1;
                if BigInt::from(mult.clone()) != brute {
                    weight_mismatches += 1;
                }
            }
            // a probe outside the weight system must vanish on both routes
            let outside = WeightVec::new(
                lam.coords.iter().zip(datum.simple_roots()[0].iter()).map(|(l, a)| l + a).collect(),
            );
            assert!(reps.weight_multiplicity(&lam, &outside).is_zero());
            assert!(kostant_multiplicity(&datum, &group, &lam, &outside).is_zero());
        }
    }
    report(
        4,
        pair_mismatches == 0 && weight_mismatches == 0,
        &format!(
            "Klimyk = character product on {pairs_checked} pairs (A1, A2, B2, bound 3); \
             Freudenthal = Kostant brute force on {weights_checked} weights (A1, A2, bound 3)"
        ),
    );
}

#[test]
fn criterion_5_sl2_reproduction() {
    let start = Instant::now();
    let ex = looplattice::sl2_example().unwrap();
    let a1 = RootDatum::simply_connected("A1").unwrap();
    let ctx = PrvContext::new(&a1).unwrap();
    let two = WeightVec::new(vec![2]);
    let pairs = ctx.prv_pairs(&two, &two, &two);
    let inv = ctx.reps.invariant_dim(&[two.clone(), two.clone(), two]);
    let elapsed = start.elapsed();
    let ok = ex.identities_hold
        && ex.membership
        && ex.distances == vec![
            CoweightVec::new(vec![1]),
            CoweightVec::new(vec![1]),
            CoweightVec::new(vec![1]),
        ]
        && ex.basis_valuations == vec![2, 1, 0]
        && ex.valuations_certified
        && ex.stab_dims.orbit_dim == 3
        && ex.stab_dims.stable
        && pairs.is_empty()
        && inv == BigUint::one()
        && elapsed.as_millis() <= 1000;
    report(
        5,
        ok,
        &format!(
            "identities, membership, valuations (e,h,f) = {:?}, orbit_dim = {}, \
             no (v,w) pairs, invariant dim = {inv}, {:.2?}",
            ex.basis_valuations, ex.stab_dims.orbit_dim, elapsed
        ),
    );
}

#[test]
fn criterion_6_cross_module_orbit_dimensions() {
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for (label, m) in [("A1", 2usize), ("A2", 3)] {
        let datum = RootDatum::adjoint(label).unwrap();
        let ctx = PrvContext::new(&datum).unwrap();
        let weights = dominant_box(&datum, 2);
        for lam in &weights {
            for mu in &weights {
                for w in ctx.group.elements() {
                    let identity = ctx.dimension_identity(lam, mu, w);
                    assert!(identity.equal);
                    let wmu = w.apply(mu);
                    let shifted: Vec<i64> =
                        lam.coords.iter().zip(&wmu.coords).map(|(a, b)| a + b).collect();
                    let t_lam =
                        torus_point(m, &CoweightVec::new(lam.coords.clone())).unwrap();
                    let t_shift = torus_point(m, &CoweightVec::new(shifted)).unwrap();
                    let max_val = ctx
                        .stabilizer_valuations(lam, mu, w)
                        .entries
                        .iter()
                        .map(|(_, v)| *v)
                        .max()
                        .unwrap_or(0);
                    let dims = looplattice::stabilizer_intersection_dim(
                        &[t_lam.rep().clone(), t_shift.rep().clone()],
                        (max_val + 2) as usize,
                    )
                    .unwrap();
                    checked += 1;
                    if !(dims.stable && dims.orbit_dim == identity.rhs) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    report(
        6,
        mismatches == 0,
        &format!("loop-lattice orbit dims equal valuation sums on {checked} instances"),
    );
}

#[test]
fn criterion_7_a2_refinement_witness() {
    let datum = RootDatum::simply_connected("A2").unwrap();
    let ctx = PrvContext::new(&datum).unwrap();
    let rho = WeightVec::new(vec![1, 1]);
    let w = WeylElement::parse(&datum, "s1 s2").unwrap();
    let verdict = ctx.refined_verify(&rho, &rho, &w);
    let ok = verdict.m == 2 && verdict.dim == BigUint::from(2u32);
    report(
        7,
        ok,
        &format!("lambda = mu = (1,1), w = s1 s2 gives m = {} and dim = {}", verdict.m, verdict.dim),
    );
}

#[test]
fn criterion_8_torus_transfer_case() {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for label in ["A2", "B2"] {
        let tm = TransferMap::torus_in_g(label).unwrap();
        let session = tm.session();
        for triple in sum_zero_triples(tm.source().rank(), 3) {
            let imp = session.check_implication(&triple[..]).unwrap();
            checked += 1;
            if !imp.imp_ok {
                failures += 1;
            }
        }
    }
    report(
        8,
        failures == 0,
        &format!("implication holds on all {checked} sum-zero triples (A2, B2, bound 3)"),
    );
}

#[test]
fn criterion_9_appendix_counterexample() {
    let start = Instant::now();
    let mut per_orientation = Vec::new();
    let mut all_saturate = true;
    for orientation in [1usize, 2] {
        let tm = TransferMap::sl2_via_root("B2", orientation).unwrap();
        let session = tm.session();
        // search_failures asserts g_dim >= 1 => root lattice membership on
        // every triple in the box as it scans
        let failures = session.search_failures(10, 3).unwrap();
        for f in &failures {
            let n = session.saturation_check(&f.tuple, 10).unwrap();
            if n.is_none() {
                all_saturate = false;
            }
        }
        per_orientation.push(failures.len());
    }
    let elapsed = start.elapsed();
    let ok = per_orientation.iter().any(|&n| n > 0)
        && all_saturate
        && elapsed.as_secs() < 300;
    report(
        9,
        ok,
        &format!(
            "failures per orientation {per_orientation:?} within bound 10, \
             all saturate with N' <= 10, lattice check enforced, {:.2?}",
            elapsed
        ),
    );
}
