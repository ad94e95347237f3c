//! Triple-invariant computations within one root datum: the dominant
//! correction `ν = v(−λ−wμ)`, the double-coset count `m` bounding the
//! invariant dimension from below, the multiplicity-one check when `λ+wμ`
//! is dominant, the orbit-dimension identity, and the stabilizer valuation
//! profile over the coroots.
//!
//! Convention: everything lives in the datum where the representations are
//! formed. Pairings that the loop-group picture takes against roots of the
//! dual side are realized here as pairings with coroots, and the dual `ρ`
//! as `ρ∨`; the two bookkeepings are equivalent.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::repcalc::Reps;
use crate::rootdata::{CoweightVec, RootDatum, WeightVec};
use crate::weylgrp::{
    double_cosets, dominant_representative, Subgroup, WeylElement, WeylGroup,
};
use crate::Result;

/// Double-coset representative ids keyed by the two parabolic generator sets.
type CosetRepCache = HashMap<(Vec<usize>, Vec<usize>), Rc<Vec<usize>>>;

/// Context for one datum: the enumerated Weyl group, a representation
/// calculator, and a cache of double-coset representatives keyed by the
/// parabolic generator sets.
pub struct PrvContext<'d> {
    datum: &'d RootDatum,
    pub group: WeylGroup,
    pub reps: Reps<'d>,
    coset_reps: RefCell<CosetRepCache>,
}

/// A verified instance: `ν` and `v` are always recomputed from `(λ, μ, w)`.
#[derive(Clone, Debug)]
pub struct PrvInstance {
    pub lambda: WeightVec,
    pub mu: WeightVec,
    pub w: WeylElement,
    nu: WeightVec,
    v: WeylElement,
}

impl PrvInstance {
    pub fn nu(&self) -> &WeightVec {
        &self.nu
    }

    pub fn v(&self) -> &WeylElement {
        &self.v
    }
}

/// Outcome of the basic nonvanishing check.
#[derive(Clone, Debug)]
pub struct PrvVerdict {
    pub nu: WeightVec,
    pub v: WeylElement,
    pub invariant_dim: BigUint,
    pub holds: bool,
}

/// Outcome of the refined lower-bound check.
#[derive(Clone, Debug)]
pub struct RefinedVerdict {
    pub nu: WeightVec,
    pub m: u64,
    pub dim: BigUint,
    pub holds: bool,
}

/// Outcome of the multiplicity-one check for dominant `λ + wμ`.
#[derive(Clone, Debug)]
pub struct KostantCheck {
    pub applicable: bool,
    pub multiplicity: Option<BigUint>,
}

/// Both sides of the orbit-dimension identity.
#[derive(Clone, Debug)]
pub struct DimensionIdentity {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

/// Valuation `max(0, ⟨λ,α∨⟩, ⟨λ+wμ,α∨⟩)` for every coroot `α∨ ∈ Φ∨`
/// (positive coroots first, then their negatives).
#[derive(Clone, Debug)]
pub struct ValuationProfile {
    pub entries: Vec<(CoweightVec, i64)>,
}

impl ValuationProfile {
    pub fn total(&self) -> i64 {
        self.entries.iter().map(|(_, v)| v).sum()
    }

    pub fn get(&self, coroot: &CoweightVec) -> Option<i64> {
        self.entries.iter().find(|(c, _)| c == coroot).map(|(_, v)| *v)
    }
}

impl<'d> PrvContext<'d> {
    pub fn new(datum: &'d RootDatum) -> Result<Self> {
        Ok(PrvContext {
            datum,
            group: WeylGroup::enumerate(datum)?,
            reps: Reps::new(datum),
            coset_reps: RefCell::new(HashMap::new()),
        })
    }

    pub fn datum(&self) -> &'d RootDatum {
        self.datum
    }

    fn assert_dominant(&self, x: &WeightVec) {
        assert!(self.datum.is_dominant(x), "weight {x} is not dominant");
    }

    /// `ν = v(−λ−wμ)` dominant, with the canonical minimal-length `v`.
    pub fn prv_nu(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> (WeightVec, WeylElement) {
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        let wmu = w.apply(mu);
        let x = WeightVec::new(
            lambda.coords.iter().zip(&wmu.coords).map(|(a, b)| -a - b).collect(),
        );
        dominant_representative(self.datum, &x)
    }

    /// A full instance with `ν` and `v` derived.
    pub fn instance(&self, lambda: WeightVec, mu: WeightVec, w: WeylElement) -> PrvInstance {
        let (nu, v) = self.prv_nu(&lambda, &mu, &w);
        PrvInstance { lambda, mu, w, nu, v }
    }

    /// Check that the triple invariant space is nonzero.
    pub fn prv_verify(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> PrvVerdict {
        let (nu, v) = self.prv_nu(lambda, mu, w);
        let dim = self.reps.invariant_dim(&[lambda.clone(), mu.clone(), nu.clone()]);
        let holds = dim >= BigUint::one();
        PrvVerdict { nu, v, invariant_dim: dim, holds }
    }

    /// Representative ids for `W_λ \ W / W_μ`, cached by the zero patterns
    /// of the two dominant weights.
    fn coset_representatives(&self, lambda: &WeightVec, mu: &WeightVec) -> Rc<Vec<usize>> {
        let gens_l: Vec<usize> = (0..self.datum.num_simple())
            .filter(|&i| self.datum.pair_simple_coroot(&lambda.coords, i) == 0)
            .collect();
        let gens_r: Vec<usize> = (0..self.datum.num_simple())
            .filter(|&i| self.datum.pair_simple_coroot(&mu.coords, i) == 0)
            .collect();
        let key = (gens_l.clone(), gens_r.clone());
        if let Some(r) = self.coset_reps.borrow().get(&key) {
            return r.clone();
        }
        let left = Subgroup::parabolic(&self.group, self.datum, &gens_l);
        let right = Subgroup::parabolic(&self.group, self.datum, &gens_r);
        let reps: Vec<usize> =
            double_cosets(&self.group, &left, &right).iter().map(|c| c.representative).collect();
        let rc = Rc::new(reps);
        self.coset_reps.borrow_mut().insert(key, rc.clone());
        rc
    }

    fn neg_lambda_minus_umu(&self, lambda: &WeightVec, mu: &WeightVec, u: &WeylElement) -> Vec<i64> {
        let umu = u.apply(mu);
        lambda.coords.iter().zip(&umu.coords).map(|(a, b)| -a - b).collect()
    }

    /// `m`: the number of double cosets `ū ∈ W_λ\W/W_μ` whose `−λ−uμ` is
    /// conjugate to `−λ−wμ` (decided by equality of dominant representatives).
    pub fn refined_count(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> u64 {
        let (nu, _) = self.prv_nu(lambda, mu, w);
        let reps = self.coset_representatives(lambda, mu);
        let mut m = 0;
        for &u in reps.iter() {
            let x = self.neg_lambda_minus_umu(lambda, mu, self.group.element(u));
            let (dom, _, _) = self.datum.dominant_weight_coords(&x);
            if dom == nu.coords {
                m += 1;
            }
        }
        debug_assert!(m >= 1, "the coset of w itself always qualifies");
        m
    }

    /// Check `dim ≥ m ≥ 1`.
    pub fn refined_verify(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> RefinedVerdict {
        let (nu, _) = self.prv_nu(lambda, mu, w);
        let m = self.refined_count(lambda, mu, w);
        let dim = self.reps.invariant_dim(&[lambda.clone(), mu.clone(), nu.clone()]);
        let holds = m >= 1 && dim >= BigUint::from(m);
        RefinedVerdict { nu, m, dim, holds }
    }

    /// When `λ + wμ` is dominant, the multiplicity of `V(λ+wμ)` inside
    /// `V(λ) ⊗ V(μ)`, expected to be exactly 1.
    pub fn kostant_check(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> KostantCheck {
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        let wmu = w.apply(mu);
        let nu = WeightVec::new(vec_add(&lambda.coords, &wmu.coords));
        if !self.datum.is_dominant(&nu) {
            return KostantCheck { applicable: false, multiplicity: None };
        }
        let mult = self.reps.tensor_multiplicity(lambda, mu, &nu);
        KostantCheck { applicable: true, multiplicity: Some(mult) }
    }

    /// `⟨λ+μ+ν, ρ∨⟩ = Σ_{α∨∈Φ∨} max(0, ⟨λ,α∨⟩, ⟨λ+wμ,α∨⟩)`, both sides
    /// exact integers.
    pub fn dimension_identity(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> DimensionIdentity {
        let (nu, _) = self.prv_nu(lambda, mu, w);
        let total = vec_add(&vec_add(&lambda.coords, &mu.coords), &nu.coords);
        let doubled = crate::mat::dot(&total, &self.datum.two_rho_check().coords);
        assert!(doubled % 2 == 0, "⟨λ+μ+ν, ρ∨⟩ must be integral");
        let lhs = doubled / 2;
        let rhs = self.valuation_sum(lambda, mu, w);
        DimensionIdentity { lhs, rhs, equal: lhs == rhs }
    }

    fn valuation_sum(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> i64 {
        let wmu = w.apply(mu);
        let shifted = vec_add(&lambda.coords, &wmu.coords);
        let mut rhs = 0;
        for coroot in self.datum.positive_coroots() {
            let a = crate::mat::dot(&lambda.coords, &coroot.vec);
            let b = crate::mat::dot(&shifted, &coroot.vec);
            rhs += 0i64.max(a).max(b);
            rhs += 0i64.max(-a).max(-b);
        }
        rhs
    }

    /// The full valuation profile `α∨ ↦ max(0, ⟨λ,α∨⟩, ⟨λ+wμ,α∨⟩)` over all
    /// coroots, positive first, then their negatives.
    pub fn stabilizer_valuations(&self, lambda: &WeightVec, mu: &WeightVec, w: &WeylElement) -> ValuationProfile {
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        let wmu = w.apply(mu);
        let shifted = vec_add(&lambda.coords, &wmu.coords);
        let mut entries = Vec::new();
        for sign in [1i64, -1] {
            for coroot in self.datum.positive_coroots() {
                let cv: Vec<i64> = coroot.vec.iter().map(|x| sign * x).collect();
                let a = crate::mat::dot(&lambda.coords, &cv);
                let b = crate::mat::dot(&shifted, &cv);
                entries.push((CoweightVec::new(cv), 0i64.max(a).max(b)));
            }
        }
        ValuationProfile { entries }
    }

    /// All `w ∈ W` with `dominant_representative(−λ−wμ) = ν`, each with its
    /// canonical `v`. An empty list certifies that no `(v, w)` solves
    /// `ν = v(−λ−wμ)`.
    pub fn prv_pairs(&self, lambda: &WeightVec, mu: &WeightVec, nu: &WeightVec) -> Vec<(WeylElement, WeylElement)> {
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        self.assert_dominant(nu);
        let mut out = Vec::new();
        for w in self.group.elements() {
            let x = self.neg_lambda_minus_umu(lambda, mu, w);
            let (dom, _, _) = self.datum.dominant_weight_coords(&x);
            if dom == nu.coords {
                let (_, v) = dominant_representative(self.datum, &WeightVec::new(x));
                out.push((w.clone(), v));
            }
        }
        out
    }

    // -- sweeps ----------------------------------------------------------------

    /// All records for one `(λ, μ)` pair, one per Weyl element, sharing the
    /// tensor decomposition and the double-coset representatives.
    pub fn sweep_pair(&self, lambda: &WeightVec, mu: &WeightVec) -> Vec<SweepRecord> {
        let dec = self.reps.tensor_decompose(lambda, mu);
        let reps_u = self.coset_representatives(lambda, mu);
        // histogram of dominant representatives over the coset representatives
        let mut hist: HashMap<Vec<i64>, u64> = HashMap::new();
        for &u in reps_u.iter() {
            let x = self.neg_lambda_minus_umu(lambda, mu, self.group.element(u));
            let (dom, _, _) = self.datum.dominant_weight_coords(&x);
            *hist.entry(dom).or_insert(0) += 1;
        }
        let w0 = self.reps.w0();
        let type_label = self.datum.label().to_string();
        let mut out = Vec::with_capacity(self.group.len());
        for w in self.group.elements() {
            let x = self.neg_lambda_minus_umu(lambda, mu, w);
            let (nu, v) = dominant_representative(self.datum, &WeightVec::new(x));
            let m = *hist.get(&nu.coords).expect("w's own coset is always counted");
            // invariant dim = multiplicity of the dual of ν in the product
            let nu_dual: Vec<i64> = w0.apply(&nu).coords.iter().map(|c| -c).collect();
            let dim = dec.get(&nu_dual).cloned().unwrap_or_else(BigUint::zero);
            // identity
            let total = vec_add(&vec_add(&lambda.coords, &mu.coords), &nu.coords);
            let doubled = crate::mat::dot(&total, &self.datum.two_rho_check().coords);
            assert!(doubled % 2 == 0);
            let lhs = doubled / 2;
            let rhs = self.valuation_sum(lambda, mu, w);
            // multiplicity-one check when λ + wμ is dominant
            let wmu = w.apply(mu);
            let plus = WeightVec::new(vec_add(&lambda.coords, &wmu.coords));
            let (applicable, kostant_mult) = if self.datum.is_dominant(&plus) {
                let mult = dec.get(&plus.coords).cloned().unwrap_or_else(BigUint::zero);
                (true, Some(mult))
            } else {
                (false, None)
            };
            let prv_holds = dim >= BigUint::one();
            let refined_holds = m >= 1 && dim >= BigUint::from(m);
            let kostant_holds =
                !applicable || kostant_mult.as_ref() == Some(&BigUint::one());
            out.push(SweepRecord {
                type_label: type_label.clone(),
                lambda: lambda.coords.clone(),
                mu: mu.coords.clone(),
                w: w.word_string(),
                nu: nu.coords,
                v: v.word_string(),
                m,
                dim,
                identity_lhs: lhs,
                identity_rhs: rhs,
                prv_holds,
                refined_holds,
                identity_holds: lhs == rhs,
                kostant_applicable: applicable,
                kostant_mult,
                kostant_holds,
            });
        }
        out
    }

    /// Exhaustive sweep over all dominant `λ, μ` with coordinates in
    /// `[0, bound]` and all `w ∈ W`. The callback sees every record.
    pub fn sweep(&self, bound: i64, mut on_record: impl FnMut(&SweepRecord)) -> SweepSummary {
        let weights = dominant_box(self.datum, bound);
        let mut summary = SweepSummary::default();
        for lambda in &weights {
            for mu in &weights {
                for rec in self.sweep_pair(lambda, mu) {
                    summary.absorb(&rec);
                    on_record(&rec);
                }
            }
        }
        summary
    }
}

fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All dominant lattice vectors with coordinates in `[0, bound]`.
pub fn dominant_box(datum: &RootDatum, bound: i64) -> Vec<WeightVec> {
    let rank = datum.rank();
    let mut out = Vec::new();
    let mut coords = vec![0i64; rank];
    loop {
        let w = WeightVec::new(coords.clone());
        if datum.is_dominant(&w) {
            out.push(w);
        }
        // odometer increment
        let mut pos = rank;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if coords[pos] < bound {
                coords[pos] += 1;
                for c in coords.iter_mut().skip(pos + 1) {
                    *c = 0;
                }
                break;
            }
        }
        if rank == 0 {
            return out;
        }
    }
}

/// One sweep instance, machine-readable.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub type_label: String,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub w: String,
    pub nu: Vec<i64>,
    pub v: String,
    pub m: u64,
    pub dim: BigUint,
    pub identity_lhs: i64,
    pub identity_rhs: i64,
    pub prv_holds: bool,
    pub refined_holds: bool,
    pub identity_holds: bool,
    pub kostant_applicable: bool,
    pub kostant_mult: Option<BigUint>,
    pub kostant_holds: bool,
}

impl SweepRecord {
    /// True when every verified property holds on this instance.
    pub fn ok(&self) -> bool {
        self.prv_holds && self.refined_holds && self.identity_holds && self.kostant_holds
    }

    pub fn to_json(&self) -> serde_json::Value {
        let big = |b: &BigUint| {
            b.to_string()
                .parse::<u64>()
                .map(serde_json::Value::from)
                .unwrap_or_else(|_| serde_json::Value::from(b.to_string()))
        };
        serde_json::json!({
            "type": self.type_label,
            "lambda": self.lambda,
            "mu": self.mu,
            "w": self.w,
            "nu": self.nu,
            "v": self.v,
            "m": self.m,
            "dim": big(&self.dim),
            "identity_lhs": self.identity_lhs,
            "identity_rhs": self.identity_rhs,
            "prv_holds": self.prv_holds,
            "refined_holds": self.refined_holds,
            "identity_holds": self.identity_holds,
            "kostant_applicable": self.kostant_applicable,
            "kostant_mult": self.kostant_mult.as_ref().map(big),
            "kostant_holds": self.kostant_holds,
        })
    }
}

/// Aggregate counts over a sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub instances: u64,
    pub prv_violations: u64,
    pub refined_violations: u64,
    pub identity_violations: u64,
    pub kostant_violations: u64,
}

impl SweepSummary {
    pub fn absorb(&mut self, rec: &SweepRecord) {
        self.instances += 1;
        if !rec.prv_holds {
            self.prv_violations += 1;
        }
        if !rec.refined_holds {
            self.refined_violations += 1;
        }
        if !rec.identity_holds {
            self.identity_violations += 1;
        }
        if !rec.kostant_holds {
            self.kostant_violations += 1;
        }
    }

    pub fn merge(&mut self, other: &SweepSummary) {
        self.instances += other.instances;
        self.prv_violations += other.prv_violations;
        self.refined_violations += other.refined_violations;
        self.identity_violations += other.identity_violations;
        self.kostant_violations += other.kostant_violations;
    }

    pub fn clean(&self) -> bool {
        self.prv_violations == 0
            && self.refined_violations == 0
            && self.identity_violations == 0
            && self.kostant_violations == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use crate::weylgrp::WeylElement;

    fn wv(c: &[i64]) -> WeightVec {
        WeightVec::new(c.to_vec())
    }

    #[test]
    fn nu_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let s = WeylElement::simple_reflection(&a1, 0);
        let e = WeylElement::identity(1);
        let (nu, v) = ctx.prv_nu(&wv(&[2]), &wv(&[2]), &s);
        assert_eq!(nu.coords, vec![0]);
        assert!(v.is_identity());
        let (nu, v) = ctx.prv_nu(&wv(&[2]), &wv(&[2]), &e);
        assert_eq!(nu.coords, vec![4]);
        assert_eq!(v.word_string(), "s1");

        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx2 = PrvContext::new(&a2).unwrap();
        let w = WeylElement::parse(&a2, "s1 s2").unwrap();
        let (nu, _) = ctx2.prv_nu(&wv(&[1, 1]), &wv(&[1, 1]), &w);
        assert_eq!(nu.coords, vec![1, 1]);
    }

    #[test]
    fn verify_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let e = WeylElement::identity(1);
        let verdict = ctx.prv_verify(&wv(&[1]), &wv(&[1]), &e);
        assert!(verdict.holds);
        assert_eq!(verdict.nu.coords, vec![2]);
        assert_eq!(verdict.invariant_dim, BigUint::one());

        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx2 = PrvContext::new(&a2).unwrap();
        let w = WeylElement::parse(&a2, "s1 s2").unwrap();
        let verdict = ctx2.prv_verify(&wv(&[1, 1]), &wv(&[1, 1]), &w);
        assert!(verdict.holds);
        assert_eq!(verdict.invariant_dim, BigUint::from(2u32));

        // λ = μ = 0: trivially holds with dim 1
        let verdict = ctx2.prv_verify(&wv(&[0, 0]), &wv(&[0, 0]), &w);
        assert!(verdict.holds);
        assert_eq!(verdict.invariant_dim, BigUint::one());
    }

    #[test]
    fn refined_count_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let e = WeylElement::identity(1);
        assert_eq!(ctx.refined_count(&wv(&[1]), &wv(&[1]), &e), 1);

        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx2 = PrvContext::new(&a2).unwrap();
        let w = WeylElement::parse(&a2, "s1 s2").unwrap();
        assert_eq!(ctx2.refined_count(&wv(&[1, 1]), &wv(&[1, 1]), &w), 2);
        let verdict = ctx2.refined_verify(&wv(&[1, 1]), &wv(&[1, 1]), &w);
        assert!(verdict.holds);
        assert_eq!(verdict.m, 2);
        assert_eq!(verdict.dim, BigUint::from(2u32));
    }

    #[test]
    fn kostant_examples() {
        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx = PrvContext::new(&a2).unwrap();
        let e = WeylElement::identity(2);
        let k = ctx.kostant_check(&wv(&[1, 0]), &wv(&[0, 1]), &e);
        assert!(k.applicable);
        assert_eq!(k.multiplicity, Some(BigUint::one()));

        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx1 = PrvContext::new(&a1).unwrap();
        let s = WeylElement::simple_reflection(&a1, 0);
        let k = ctx1.kostant_check(&wv(&[2]), &wv(&[2]), &s);
        assert!(k.applicable); // ν = 0
        assert_eq!(k.multiplicity, Some(BigUint::one()));
        let k = ctx1.kostant_check(&wv(&[1]), &wv(&[2]), &s);
        assert!(!k.applicable); // λ + sμ = -1 not dominant
    }

    #[test]
    fn identity_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let e = WeylElement::identity(1);
        let s = WeylElement::simple_reflection(&a1, 0);
        let id = ctx.dimension_identity(&wv(&[2]), &wv(&[2]), &e);
        assert_eq!((id.lhs, id.rhs), (4, 4));
        assert!(id.equal);
        let id = ctx.dimension_identity(&wv(&[2]), &wv(&[2]), &s);
        assert_eq!((id.lhs, id.rhs), (2, 2));
        let id = ctx.dimension_identity(&wv(&[0]), &wv(&[0]), &s);
        assert_eq!((id.lhs, id.rhs), (0, 0));
    }

    #[test]
    fn valuation_profiles() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let e = WeylElement::identity(1);
        let s = WeylElement::simple_reflection(&a1, 0);
        let prof = ctx.stabilizer_valuations(&wv(&[2]), &wv(&[2]), &e);
        assert_eq!(prof.entries.len(), 2);
        assert_eq!(prof.entries[0].1, 4); // at α∨
        assert_eq!(prof.entries[1].1, 0); // at −α∨
        let prof = ctx.stabilizer_valuations(&wv(&[2]), &wv(&[2]), &s);
        assert_eq!(prof.entries[0].1, 2);
        assert_eq!(prof.entries[1].1, 0);
        assert_eq!(prof.total(), ctx.dimension_identity(&wv(&[2]), &wv(&[2]), &s).rhs);
    }

    #[test]
    fn negative_coroot_entries_depend_only_on_shifted_weight() {
        let b2 = RootDatum::simply_connected("B2").unwrap();
        let ctx = PrvContext::new(&b2).unwrap();
        for lam in [[1, 0], [2, 1], [0, 2]] {
            for mu in [[1, 1], [2, 0]] {
                for w in ctx.group.elements() {
                    let lam = wv(&lam);
                    let mu = wv(&mu);
                    let prof = ctx.stabilizer_valuations(&lam, &mu, w);
                    let wmu = w.apply(&mu);
                    let shifted = vec_add(&lam.coords, &wmu.coords);
                    let n = b2.positive_coroots().len();
                    for (k, coroot) in b2.positive_coroots().iter().enumerate() {
                        let b = -crate::mat::dot(&shifted, &coroot.vec);
                        assert_eq!(prof.entries[n + k].1, 0i64.max(b));
                    }
                }
            }
        }
    }

    #[test]
    fn pairs_examples() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        // the non-triple from the counterexample: no (v, w) works
        assert!(ctx.prv_pairs(&wv(&[2]), &wv(&[2]), &wv(&[2])).is_empty());
        let pairs = ctx.prv_pairs(&wv(&[1]), &wv(&[1]), &wv(&[2]));
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].0.is_identity());
        assert_eq!(pairs[0].1.word_string(), "s1");

        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx2 = PrvContext::new(&a2).unwrap();
        let pairs = ctx2.prv_pairs(&wv(&[1, 1]), &wv(&[1, 1]), &wv(&[1, 1]));
        let words: Vec<String> = pairs.iter().map(|(w, _)| w.word_string()).collect();
        assert!(words.contains(&"s1 s2".to_string()));
        assert!(words.contains(&"s2 s1".to_string()));
    }

    #[test]
    fn pairs_imply_prv_holds() {
        let a2 = RootDatum::simply_connected("A2").unwrap();
        let ctx = PrvContext::new(&a2).unwrap();
        let (lam, mu, nu) = (wv(&[2, 0]), wv(&[1, 1]), wv(&[1, 0]));
        for (w, _) in ctx.prv_pairs(&lam, &mu, &nu) {
            let verdict = ctx.prv_verify(&lam, &mu, &w);
            assert_eq!(verdict.nu, nu);
            assert!(verdict.holds);
        }
    }

    #[test]
    fn refined_count_rep_independent() {
        // recompute m from every member of each coset, not just the
        // canonical representative: results agree
        let b2 = RootDatum::simply_connected("B2").unwrap();
        let ctx = PrvContext::new(&b2).unwrap();
        let lam = wv(&[1, 0]);
        let mu = wv(&[0, 1]);
        for w in ctx.group.elements() {
            let (nu, _) = ctx.prv_nu(&lam, &mu, w);
            let m = ctx.refined_count(&lam, &mu, w);
            let left = crate::weylgrp::stabilizer(&ctx.group, &b2, &lam);
            let right = crate::weylgrp::stabilizer(&ctx.group, &b2, &mu);
            let cosets = crate::weylgrp::double_cosets(&ctx.group, &left, &right);
            let mut m2 = 0;
            for coset in &cosets {
                // pick the largest member instead of the canonical one
                let u = *coset.members.iter().max().unwrap();
                let x = ctx.neg_lambda_minus_umu(&lam, &mu, ctx.group.element(u));
                let (dom, _, _) = b2.dominant_weight_coords(&x);
                if dom == nu.coords {
                    m2 += 1;
                }
            }
            assert_eq!(m, m2);
        }
    }

    #[test]
    fn small_sweep_clean() {
        for label in ["A1", "A2"] {
            let d = RootDatum::simply_connected(label).unwrap();
            let ctx = PrvContext::new(&d).unwrap();
            let summary = ctx.sweep(1, |_| {});
            assert!(summary.clean(), "{label}: {summary:?}");
            let expected =
                (dominant_box(&d, 1).len() as u64).pow(2) * d.weyl_order();
            assert_eq!(summary.instances, expected);
        }
    }

    #[test]
    fn dominant_box_counts() {
        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(dominant_box(&a2, 2).len(), 9);
        let a2_adj = RootDatum::adjoint("A2").unwrap();
        // root-basis coordinates: (0,0),(1,1),(1,2),(2,1),(2,2) are dominant
        assert_eq!(dominant_box(&a2_adj, 2).len(), 5);
        let t1 = RootDatum::torus(1).unwrap();
        assert_eq!(dominant_box(&t1, 3).len(), 4);
    }

    #[test]
    fn sweep_record_json() {
        let a1 = RootDatum::simply_connected("A1").unwrap();
        let ctx = PrvContext::new(&a1).unwrap();
        let recs = ctx.sweep_pair(&wv(&[1]), &wv(&[1]));
        assert_eq!(recs.len(), 2);
        let j = recs[0].to_json();
        assert_eq!(j["type"], "A1");
        assert!(j["prv_holds"].as_bool().unwrap());
    }
}
