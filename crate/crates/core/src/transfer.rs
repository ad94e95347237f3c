//! Transfer of invariants between dual groups: an embedding of cocharacter
//! lattices `ι: X_*(T_H) → X_*(T_G)` transfers a dominant coweight of `H` to
//! the unique dominant Weyl translate of its image. The question is whether
//! nonvanishing of `H∨`-invariants forces nonvanishing of `G∨`-invariants
//! for the transferred tuple.
//!
//! Invariant dimensions on either side are computed over the dual root data
//! (dominant coweights are dominant weights of the dual group), so isogeny
//! type is honored: an `SL₂` source only accepts coweights in `ℤ·α∨`.
//!
//! Presets: `torus:<label>` (the maximal torus of the adjoint group of the
//! label) and `sl2-root:<label>:<i>` (the `SL₂` along the i-th simple
//! coroot). Custom maps take explicit data via JSON.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::repcalc::Reps;
use crate::rootdata::{CoweightVec, RootDatum, WeightVec};
use crate::weylgrp::dominant_representative_co;
use crate::{Error, Result};

/// An embedding of cocharacter lattices between two root data.
pub struct TransferMap {
    source: RootDatum,
    target: RootDatum,
    source_dual: RootDatum,
    target_dual: RootDatum,
    /// Column `j` is the image of the j-th basis vector of `X_*(T_H)`.
    iota: Vec<Vec<i64>>,
    label: String,
}

impl TransferMap {
    /// Build a transfer map; `iota` maps source coweight coordinates to
    /// target coweight coordinates and must be injective.
    pub fn new(source: RootDatum, target: RootDatum, iota: Vec<Vec<i64>>, label: String) -> Result<TransferMap> {
        if iota.len() != source.rank() {
            return Err(Error::LengthMismatch(format!(
                "iota has {} columns, source rank is {}",
                iota.len(),
                source.rank()
            )));
        }
        for col in &iota {
            if col.len() != target.rank() {
                return Err(Error::RankMismatch { expected: target.rank(), got: col.len() });
            }
        }
        let rows: Vec<Vec<num_bigint::BigInt>> = iota
            .iter()
            .map(|c| c.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
            .collect();
        if crate::linalg::bigint_rank(&rows) != source.rank() {
            return Err(Error::InvalidDatum("iota is not injective".into()));
        }
        let source_dual = source.dual();
        let target_dual = target.dual();
        Ok(TransferMap { source, target, source_dual, target_dual, iota, label })
    }

    /// `torus:<label>`: the maximal torus inside the adjoint group of the
    /// label; `iota` is the identity on cocharacters.
    pub fn torus_in_g(label: &str) -> Result<TransferMap> {
        let target = RootDatum::adjoint(label)?;
        let source = RootDatum::torus(target.rank())?;
        let n = target.rank();
        let iota: Vec<Vec<i64>> =
            (0..n).map(|j| (0..n).map(|k| i64::from(k == j)).collect()).collect();
        TransferMap::new(source, target, iota, format!("torus:{label}"))
    }

    /// `sl2-root:<label>:<i>`: the `SL₂` whose coroot lattice maps onto
    /// `ℤ·α_i∨` of the adjoint group of the label (`i` is 1-based).
    pub fn sl2_via_root(label: &str, i: usize) -> Result<TransferMap> {
        let target = RootDatum::adjoint(label)?;
        if i == 0 || i > target.num_simple() {
            return Err(Error::UnsupportedLabel(format!(
                "simple root index {i} out of range for {label}"
            )));
        }
        let source = RootDatum::simply_connected("A1")?;
        let iota = vec![target.simple_coroots()[i - 1].clone()];
        TransferMap::new(source, target, iota, format!("sl2-root:{label}:{i}"))
    }

    /// Parse a preset name: `torus:A2`, `sl2-root:B2:1`, or `custom:<json>`
    /// with fields `source`, `target` (each a label-with-form object or
    /// explicit lattice data) and `iota` (integer matrix, one row per source
    /// basis vector).
    pub fn from_preset(preset: &str) -> Result<TransferMap> {
        if let Some(rest) = preset.strip_prefix("torus:") {
            return TransferMap::torus_in_g(rest);
        }
        if let Some(rest) = preset.strip_prefix("sl2-root:") {
            let (label, idx) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("bad sl2-root preset {preset:?}")))?;
            let i: usize =
                idx.parse().map_err(|_| Error::Parse(format!("bad root index {idx:?}")))?;
            return TransferMap::sl2_via_root(label, i);
        }
        if let Some(json) = preset.strip_prefix("custom:") {
            return TransferMap::from_json(json);
        }
        Err(Error::Parse(format!("unknown preset {preset:?}")))
    }

    fn datum_from_json(v: &serde_json::Value) -> Result<RootDatum> {
        if let Some(label) = v.get("label").and_then(|x| x.as_str()) {
            let form = v.get("form").and_then(|x| x.as_str()).unwrap_or("simply_connected");
            return match form {
                "simply_connected" | "sc" => RootDatum::simply_connected(label),
                "adjoint" => RootDatum::adjoint(label),
                other => Err(Error::Parse(format!("unknown form {other:?}"))),
            };
        }
        RootDatum::from_json(&v.to_string())
    }

    pub fn from_json(json: &str) -> Result<TransferMap> {
        let v: serde_json::Value =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let source = Self::datum_from_json(
            v.get("source").ok_or_else(|| Error::Parse("missing 'source'".into()))?,
        )?;
        let target = Self::datum_from_json(
            v.get("target").ok_or_else(|| Error::Parse("missing 'target'".into()))?,
        )?;
        let iota: Vec<Vec<i64>> = v
            .get("iota")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing matrix 'iota'".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("'iota' must be a matrix".into()))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Parse("non-integer in iota".into())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        TransferMap::new(source, target, iota, "custom".into())
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn target(&self) -> &RootDatum {
        &self.target
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn apply_iota(&self, lambda: &CoweightVec) -> Result<CoweightVec> {
        if lambda.coords.len() != self.source.rank() {
            return Err(Error::RankMismatch {
                expected: self.source.rank(),
                got: lambda.coords.len(),
            });
        }
        let mut out = vec![0i64; self.target.rank()];
        for (j, c) in lambda.coords.iter().enumerate() {
            for k in 0..self.target.rank() {
                out[k] += c * self.iota[j][k];
            }
        }
        Ok(CoweightVec::new(out))
    }

    /// The transfer `λ ↦ λ′`: the unique dominant Weyl translate of `ι(λ)`.
    pub fn transfer(&self, lambda: &CoweightVec) -> Result<CoweightVec> {
        if !self.source.is_dominant_co(lambda) {
            return Err(Error::NotInLattice(format!("{lambda} is not dominant for the source")));
        }
        let image = self.apply_iota(lambda)?;
        let (dom, _) = dominant_representative_co(&self.target, &image);
        Ok(dom)
    }

    /// True iff the transferred tuple sums into the coroot lattice of the
    /// target (the root lattice of `G∨`) — a necessary condition for
    /// `g_dim ≥ 1`.
    pub fn root_lattice_check(&self, tuple: &[CoweightVec]) -> Result<bool> {
        let mut total = vec![0i64; self.target.rank()];
        for l in tuple {
            let t = self.transfer(l)?;
            for k in 0..self.target.rank() {
                total[k] += t.coords[k];
            }
        }
        Ok(self.target.coroot_lattice_expr(&total).is_some())
    }

    /// A compute session with memoized character tables on both dual sides.
    pub fn session(&self) -> TransferSession<'_> {
        TransferSession {
            map: self,
            h_reps: Reps::new(&self.source_dual),
            g_reps: Reps::new(&self.target_dual),
        }
    }

    /// `dim (V(λ₁)⊗⋯⊗V(λ_s))^{H∨}`: source coweights as weights of the dual.
    pub fn h_invariants(&self, tuple: &[CoweightVec]) -> Result<BigUint> {
        self.session().h_invariants(tuple)
    }

    /// `dim (V(λ₁′)⊗⋯⊗V(λ_s′))^{G∨}` for the transferred tuple.
    pub fn g_invariants(&self, tuple: &[CoweightVec]) -> Result<BigUint> {
        self.session().g_invariants(tuple)
    }

    /// Both sides plus the implication verdict: `h_dim ≥ 1 ⟹ g_dim ≥ 1`.
    pub fn check_implication(&self, tuple: &[CoweightVec]) -> Result<Implication> {
        self.session().check_implication(tuple)
    }

    /// Exhaustive lexicographic search for implication failures over
    /// dominant tuples with coordinates in `[0, bound]`.
    pub fn search_failures(&self, bound: i64, s: usize) -> Result<Vec<Failure>> {
        self.session().search_failures(bound, s)
    }

    /// Smallest `N′ ≤ n_max` with nonzero `G∨`-invariants for the scaled
    /// transferred tuple `(N′λ₁′, …)`, if any.
    pub fn saturation_check(&self, tuple: &[CoweightVec], n_max: i64) -> Result<Option<i64>> {
        self.session().saturation_check(tuple, n_max)
    }
}

/// Memoized compute session for one transfer map; reuse it across a sweep.
pub struct TransferSession<'t> {
    map: &'t TransferMap,
    h_reps: Reps<'t>,
    g_reps: Reps<'t>,
}

impl<'t> TransferSession<'t> {
    pub fn map(&self) -> &'t TransferMap {
        self.map
    }

    pub fn h_invariants(&self, tuple: &[CoweightVec]) -> Result<BigUint> {
        let weights: Vec<WeightVec> = tuple
            .iter()
            .map(|l| {
                if !self.map.source.is_dominant_co(l) {
                    return Err(Error::NotInLattice(format!(
                        "{l} is not dominant for the source"
                    )));
                }
                Ok(WeightVec::new(l.coords.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(self.h_reps.invariant_dim(&weights))
    }

    pub fn g_invariants(&self, tuple: &[CoweightVec]) -> Result<BigUint> {
        let weights: Vec<WeightVec> = tuple
            .iter()
            .map(|l| Ok(WeightVec::new(self.map.transfer(l)?.coords)))
            .collect::<Result<_>>()?;
        Ok(self.g_reps.invariant_dim(&weights))
    }

    pub fn check_implication(&self, tuple: &[CoweightVec]) -> Result<Implication> {
        let h_dim = self.h_invariants(tuple)?;
        let g_dim = self.g_invariants(tuple)?;
        let imp_ok = h_dim.is_zero() || g_dim >= BigUint::one();
        Ok(Implication { h_dim, g_dim, imp_ok })
    }

    pub fn search_failures(&self, bound: i64, s: usize) -> Result<Vec<Failure>> {
        let box_weights = crate::prvcore::dominant_box(&self.map.source, bound);
        let coweights: Vec<CoweightVec> =
            box_weights.iter().map(|w| CoweightVec::new(w.coords.clone())).collect();
        let mut failures = Vec::new();
        let mut tuple_idx = vec![0usize; s];
        loop {
            let tuple: Vec<CoweightVec> =
                tuple_idx.iter().map(|&i| coweights[i].clone()).collect();
            let imp = self.check_implication(&tuple)?;
            let lattice_ok = self.map.root_lattice_check(&tuple)?;
            if imp.g_dim >= BigUint::one() {
                assert!(lattice_ok, "nonzero invariants outside the coroot lattice");
            }
            if !imp.imp_ok {
                failures.push(Failure { tuple, h_dim: imp.h_dim, root_lattice_ok: lattice_ok });
            }
            // lexicographic odometer over indices
            let mut pos = s;
            loop {
                if pos == 0 {
                    return Ok(failures);
                }
                pos -= 1;
                if tuple_idx[pos] + 1 < coweights.len() {
                    tuple_idx[pos] += 1;
                    for t in tuple_idx.iter_mut().skip(pos + 1) {
                        *t = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn saturation_check(&self, tuple: &[CoweightVec], n_max: i64) -> Result<Option<i64>> {
        for n in 1..=n_max {
            let scaled: Vec<CoweightVec> = tuple
                .iter()
                .map(|l| CoweightVec::new(l.coords.iter().map(|c| c * n).collect()))
                .collect();
            if self.g_invariants(&scaled)? >= BigUint::one() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// Result of one implication check.
#[derive(Clone, Debug)]
pub struct Implication {
    pub h_dim: BigUint,
    pub g_dim: BigUint,
    pub imp_ok: bool,
}

/// One implication failure found by the search.
#[derive(Clone, Debug)]
pub struct Failure {
    pub tuple: Vec<CoweightVec>,
    pub h_dim: BigUint,
    pub root_lattice_ok: bool,
}

impl Failure {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tuple": self.tuple.iter().map(|c| c.coords.clone()).collect::<Vec<_>>(),
            "h_dim": self.h_dim.to_string().parse::<u64>().ok(),
            "root_lattice_ok": self.root_lattice_ok,
        })
    }
}

/// Sum-zero torus tuples with coordinates bounded by `bound` in absolute
/// value, for the torus-in-G sweeps.
pub fn sum_zero_triples(rank: usize, bound: i64) -> Vec<[CoweightVec; 3]> {
    let mut vectors = Vec::new();
    let mut coords = vec![-bound; rank];
    loop {
        vectors.push(coords.clone());
        let mut pos = rank;
        loop {
            if pos == 0 {
                let mut out = Vec::new();
                for a in &vectors {
                    for b in &vectors {
                        let c: Vec<i64> = a.iter().zip(b).map(|(x, y)| -x - y).collect();
                        if c.iter().all(|v| v.abs() <= bound) {
                            out.push([
                                CoweightVec::new(a.clone()),
                                CoweightVec::new(b.clone()),
                                CoweightVec::new(c),
                            ]);
                        }
                    }
                }
                return out;
            }
            pos -= 1;
            if coords[pos] < bound {
                coords[pos] += 1;
                for c in coords.iter_mut().skip(pos + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(c: &[i64]) -> CoweightVec {
        CoweightVec::new(c.to_vec())
    }

    #[test]
    fn torus_preset_transfer() {
        let tm = TransferMap::torus_in_g("A2").unwrap();
        // α1∨ in fundamental-coweight coordinates of the adjoint datum
        assert_eq!(tm.transfer(&cw(&[2, -1])).unwrap(), cw(&[1, 1]));
        assert_eq!(tm.transfer(&cw(&[-2, 1])).unwrap(), cw(&[1, 1]));
        assert_eq!(tm.transfer(&cw(&[0, 0])).unwrap(), cw(&[0, 0]));
    }

    #[test]
    fn sl2_preset_transfer() {
        let tm = TransferMap::sl2_via_root("B2", 1).unwrap();
        // α1∨ of B2 is W-conjugate to the dominant coweight (0, 1)
        assert_eq!(tm.transfer(&cw(&[1])).unwrap(), cw(&[0, 1]));
        assert_eq!(tm.transfer(&cw(&[3])).unwrap(), cw(&[0, 3]));
        // non-dominant source coweight is rejected
        assert!(tm.transfer(&cw(&[-1])).is_err());
    }

    #[test]
    fn h_invariants_torus_and_sl2() {
        let tm = TransferMap::torus_in_g("A2").unwrap();
        assert_eq!(
            tm.h_invariants(&[cw(&[2, -1]), cw(&[-2, 1]), cw(&[0, 0])]).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            tm.h_invariants(&[cw(&[1, 0]), cw(&[1, 0]), cw(&[1, 0])]).unwrap(),
            BigUint::zero()
        );
        let sl2 = TransferMap::sl2_via_root("B2", 1).unwrap();
        assert_eq!(
            sl2.h_invariants(&[cw(&[1]), cw(&[1]), cw(&[2])]).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            sl2.h_invariants(&[cw(&[1]), cw(&[1]), cw(&[5])]).unwrap(),
            BigUint::zero()
        );
    }

    #[test]
    fn sl2_h_invariants_match_triangle_inequality() {
        let tm = TransferMap::sl2_via_root("B2", 1).unwrap();
        for a in 0..=4i64 {
            for b in 0..=4i64 {
                for c in 0..=4i64 {
                    let h = tm.h_invariants(&[cw(&[a]), cw(&[b]), cw(&[c])]).unwrap();
                    let triangle = (a - b).abs() <= c && c <= a + b;
                    assert_eq!(h >= BigUint::one(), triangle, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn torus_implication_examples() {
        let tm = TransferMap::torus_in_g("A2").unwrap();
        let imp =
            tm.check_implication(&[cw(&[2, -1]), cw(&[-2, 1]), cw(&[0, 0])]).unwrap();
        assert_eq!(imp.h_dim, BigUint::one());
        assert_eq!(imp.g_dim, BigUint::one());
        assert!(imp.imp_ok);
        // all-zero triple
        let imp = tm.check_implication(&[cw(&[0, 0]), cw(&[0, 0]), cw(&[0, 0])]).unwrap();
        assert!(imp.imp_ok);
    }

    #[test]
    fn sl2_so5_counterexample_exists() {
        let tm = TransferMap::sl2_via_root("B2", 1).unwrap();
        // (α∨, α∨, α∨) transfers to three copies of the 5-dimensional
        // fundamental and has no invariants on the G side
        let triple = [cw(&[1]), cw(&[1]), cw(&[1])];
        let imp = tm.check_implication(&triple).unwrap();
        assert_eq!(imp.h_dim, BigUint::one());
        assert_eq!(imp.g_dim, BigUint::zero());
        assert!(!imp.imp_ok);
        // scaling by 2 restores invariants
        assert_eq!(tm.saturation_check(&triple, 10).unwrap(), Some(2));
        // and the failure search at small bound finds it, deterministically
        let failures = tm.search_failures(2, 3).unwrap();
        assert!(!failures.is_empty());
        assert!(failures
            .iter()
            .any(|f| f.tuple.iter().map(|c| c.coords[0]).collect::<Vec<_>>() == vec![1, 1, 1]));
        let again = tm.search_failures(2, 3).unwrap();
        assert_eq!(failures.len(), again.len());
    }

    #[test]
    fn root_lattice_check_examples() {
        let tm = TransferMap::torus_in_g("A2").unwrap();
        assert!(tm.root_lattice_check(&[cw(&[2, -1]), cw(&[-2, 1]), cw(&[0, 0])]).unwrap());
        // a single fundamental coweight of PGL3 is not in the coroot lattice
        assert!(!tm.root_lattice_check(&[cw(&[1, 0]), cw(&[0, 0]), cw(&[0, 0])]).unwrap());
        let zero = [cw(&[0, 0]), cw(&[0, 0]), cw(&[0, 0])];
        assert!(tm.root_lattice_check(&zero).unwrap());
    }

    #[test]
    fn saturation_trivial_when_g_invariants_exist() {
        let tm = TransferMap::torus_in_g("A2").unwrap();
        assert_eq!(
            tm.saturation_check(&[cw(&[2, -1]), cw(&[-2, 1]), cw(&[0, 0])], 10).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn torus_search_is_empty() {
        // the torus-in-G implication never fails on the search box
        let tm = TransferMap::torus_in_g("A1").unwrap();
        assert!(tm.search_failures(1, 3).unwrap().is_empty());
        let tm = TransferMap::torus_in_g("A2").unwrap();
        assert!(tm.search_failures(3, 3).unwrap().is_empty());
    }

    #[test]
    fn transfer_is_idempotent_under_the_identity_map() {
        // source = target with the identity embedding: a transferred
        // coweight transfers to itself
        let json = r#"{
            "source": {"label": "A2", "form": "adjoint"},
            "target": {"label": "A2", "form": "adjoint"},
            "iota": [[1, 0], [0, 1]]
        }"#;
        let tm = TransferMap::from_json(json).unwrap();
        for coords in [[1, 1], [2, 0], [0, 3]] {
            let lam = cw(&coords);
            if !tm.source().is_dominant_co(&lam) {
                continue;
            }
            let once = tm.transfer(&lam).unwrap();
            assert_eq!(tm.transfer(&once).unwrap(), once);
        }
    }

    #[test]
    fn custom_json_map() {
        let json = r#"{
            "source": {"label": "A1", "form": "sc"},
            "target": {"label": "A2", "form": "adjoint"},
            "iota": [[1, 1]]
        }"#;
        let tm = TransferMap::from_json(json).unwrap();
        assert_eq!(tm.transfer(&cw(&[1])).unwrap(), cw(&[1, 1]));
        assert!(TransferMap::from_preset("torus:B2").is_ok());
        assert!(TransferMap::from_preset("sl2-root:B2:2").is_ok());
        assert!(TransferMap::from_preset("sl2-root:B2:7").is_err());
        assert!(TransferMap::from_preset("bogus").is_err());
    }

    #[test]
    fn iota_must_be_injective() {
        let source = RootDatum::torus(2).unwrap();
        let target = RootDatum::adjoint("A2").unwrap();
        let iota = vec![vec![1, 0], vec![1, 0]];
        assert!(TransferMap::new(source, target, iota, "x".into()).is_err());
    }

    #[test]
    fn sum_zero_triples_enumeration() {
        let triples = sum_zero_triples(1, 1);
        // pairs (a, b) with |a|,|b|,|a+b| ≤ 1: 7 of 9
        assert_eq!(triples.len(), 7);
        for [a, b, c] in &triples {
            assert_eq!(a.coords[0] + b.coords[0] + c.coords[0], 0);
        }
    }
}
