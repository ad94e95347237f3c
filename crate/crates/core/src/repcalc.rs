//! Representation calculations: weight multiplicities via the Freudenthal
//! recursion, irreducible dimensions via the Weyl product formula, tensor
//! multiplicities via the Klimyk alternating sum, invariant dimensions, and
//! an independent character-product oracle.
//!
//! All multiplicities and dimensions are arbitrary-precision integers; all
//! lattice arithmetic is exact `i64`. Torus factors ride along: weights of
//! an irreducible carry the highest weight's torus coordinates unchanged.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::rootdata::{RootDatum, WeightVec};
use crate::weylgrp::{longest_element, WeylElement};
use crate::{Error, Result};

/// Default cap on `dim V(λ) · dim V(μ)` for the character-product oracle.
pub const ORACLE_CAP: u64 = 1_000_000;

/// A finite character: weight → multiplicity, W-invariant by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMap {
    pub entries: BTreeMap<Vec<i64>, BigUint>,
}

impl CharacterMap {
    pub fn dim(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Serialize as a JSON list of `{weight, mult}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(w, m)| {
                    serde_json::json!({
                        "weight": w,
                        "mult": m.to_string().parse::<u64>().map(serde_json::Value::from)
                            .unwrap_or_else(|_| serde_json::Value::from(m.to_string())),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<CharacterMap> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("character JSON must be a list".into()))?;
        let mut entries = BTreeMap::new();
        for item in arr {
            let w: Vec<i64> = item
                .get("weight")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse("missing weight".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse("non-integer weight".into())))
                .collect::<Result<_>>()?;
            let m = item.get("mult").ok_or_else(|| Error::Parse("missing mult".into()))?;
            let mult: BigUint = if let Some(u) = m.as_u64() {
                BigUint::from(u)
            } else if let Some(s) = m.as_str() {
                s.parse().map_err(|_| Error::Parse(format!("bad multiplicity {s:?}")))?
            } else {
                return Err(Error::Parse("bad multiplicity".into()));
            };
            entries.insert(w, mult);
        }
        Ok(CharacterMap { entries })
    }
}

fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn vec_scale(a: &[i64], c: i64) -> Vec<i64> {
    a.iter().map(|x| c * x).collect()
}

/// A finite decomposition: highest weight → multiplicity.
pub type Decomposition = BTreeMap<Vec<i64>, BigUint>;

type DominantTable = HashMap<Vec<i64>, BigUint>;

type TensorCache = HashMap<(Vec<i64>, Vec<i64>), Rc<Decomposition>>;

/// Calculator for one root datum, with memoized characters and tensor
/// decompositions. Results are pure functions of the inputs; for parallel
/// sweeps use one calculator per worker.
pub struct Reps<'d> {
    datum: &'d RootDatum,
    dom_chars: RefCell<HashMap<Vec<i64>, Rc<DominantTable>>>,
    full_chars: RefCell<HashMap<Vec<i64>, Rc<CharacterMap>>>,
    tensor_cache: RefCell<TensorCache>,
    dim_cache: RefCell<HashMap<Vec<i64>, BigUint>>,
    w0: RefCell<Option<Rc<WeylElement>>>,
}

impl<'d> Reps<'d> {
    pub fn new(datum: &'d RootDatum) -> Self {
        Reps {
            datum,
            dom_chars: RefCell::new(HashMap::new()),
            full_chars: RefCell::new(HashMap::new()),
            tensor_cache: RefCell::new(HashMap::new()),
            dim_cache: RefCell::new(HashMap::new()),
            w0: RefCell::new(None),
        }
    }

    pub fn datum(&self) -> &'d RootDatum {
        self.datum
    }

    fn assert_dominant(&self, x: &WeightVec) {
        assert!(self.datum.is_dominant(x), "weight {x} is not dominant");
    }

    /// The longest Weyl element, cached.
    pub fn w0(&self) -> Rc<WeylElement> {
        let mut slot = self.w0.borrow_mut();
        if slot.is_none() {
            *slot = Some(Rc::new(longest_element(self.datum)));
        }
        slot.as_ref().unwrap().clone()
    }

    /// `−w₀ λ`: the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &WeightVec) -> WeightVec {
        let w0 = self.w0();
        let res = WeightVec::new(vec_neg(&w0.apply(lambda).coords));
        debug_assert!(self.datum.is_dominant(&res));
        res
    }

    // -- weight multiplicities (Freudenthal) ---------------------------------

    /// Dominant weights of `V(λ)` with multiplicities, by the Freudenthal
    /// recursion processed in decreasing weight order.
    fn dominant_character(&self, lambda: &WeightVec) -> Rc<DominantTable> {
        if let Some(t) = self.dom_chars.borrow().get(&lambda.coords) {
            return t.clone();
        }
        self.assert_dominant(lambda);
        let d = self.datum;
        let n = d.num_simple();
        let two_rho = &d.two_rho().coords;
        // height cap: Σ e_j ≤ ⟨λ, 2ρ∨⟩ / 2
        let cap = d.pairing(lambda, d.two_rho_check()) / 2;
        // enumerate candidate lowering expressions e (coefficients in the
        // simple roots) and keep dominant λ − Σ e_j α_j
        let mut dominant: Vec<(Vec<i64>, Vec<i64>)> = Vec::new(); // (expr, coords)
        let mut expr = vec![0i64; n];
        enumerate_exprs(d, lambda, &mut expr, 0, cap, &mut dominant);
        dominant.sort_by_key(|(e, _)| (e.iter().sum::<i64>(), e.clone()));

        let mut table: HashMap<Vec<i64>, BigUint> = HashMap::new();
        for (e, mu) in &dominant {
            let height: i64 = e.iter().sum();
            if height == 0 {
                table.insert(mu.clone(), BigUint::one());
                continue;
            }
            let mut num = BigInt::zero();
            for root in d.positive_roots() {
                let mut k = 1i64;
                loop {
                    let xi = vec_add(mu, &vec_scale(&root.vec, k));
                    let (dom, _, _) = d.dominant_weight_coords(&xi);
                    match table.get(&dom) {
                        Some(m) => {
                            let coeff = 2 * d.form_with_root(&xi, &root.expr);
                            num += BigInt::from(coeff) * BigInt::from(m.clone());
                        }
                        None => break,
                    }
                    k += 1;
                }
            }
            // denominator (λ+μ+2ρ, λ−μ), exact integer
            let sum = vec_add(&vec_add(&lambda.coords, mu), two_rho);
            let den = d.form_with_root(&sum, e);
            assert!(den > 0, "Freudenthal denominator must be positive");
            let (q, r) = num_integer_div_rem(&num, den);
            assert!(r.is_zero(), "Freudenthal numerator not divisible");
            assert!(!q.is_negative(), "negative weight multiplicity");
            table.insert(mu.clone(), q.magnitude().clone());
        }
        let rc = Rc::new(table);
        self.dom_chars.borrow_mut().insert(lambda.coords.clone(), rc.clone());
        rc
    }

    /// Multiplicity of the weight `μ` in `V(λ)`.
    pub fn weight_multiplicity(&self, lambda: &WeightVec, mu: &WeightVec) -> BigUint {
        let table = self.dominant_character(lambda);
        let (dom, _, _) = self.datum.dominant_weight_coords(&mu.coords);
        table.get(&dom).cloned().unwrap_or_else(BigUint::zero)
    }

    /// The full character of `V(λ)`: every weight with its multiplicity.
    pub fn character(&self, lambda: &WeightVec) -> Rc<CharacterMap> {
        if let Some(c) = self.full_chars.borrow().get(&lambda.coords) {
            return c.clone();
        }
        let table = self.dominant_character(lambda);
        let d = self.datum;
        let mut entries = BTreeMap::new();
        for (mu, m) in table.iter() {
            // expand the W-orbit of the dominant weight
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let mut stack = vec![mu.clone()];
            seen.insert(mu.clone());
            while let Some(v) = stack.pop() {
                for i in 0..d.num_simple() {
                    let p = d.pair_simple_coroot(&v, i);
                    if p != 0 {
                        let img = vec_sub(&v, &vec_scale(&d.simple_roots()[i], p));
                        if seen.insert(img.clone()) {
                            stack.push(img);
                        }
                    }
                }
            }
            for v in seen {
                entries.insert(v, m.clone());
            }
        }
        let rc = Rc::new(CharacterMap { entries });
        self.full_chars.borrow_mut().insert(lambda.coords.clone(), rc.clone());
        rc
    }

    // -- dimensions (Weyl product formula) -----------------------------------

    /// `dim V(λ)` by the Weyl product formula, exact.
    pub fn dim_irrep(&self, lambda: &WeightVec) -> BigUint {
        if let Some(v) = self.dim_cache.borrow().get(&lambda.coords) {
            return v.clone();
        }
        self.assert_dominant(lambda);
        let d = self.datum;
        let shifted = vec_add(&vec_scale(&lambda.coords, 2), &d.two_rho().coords);
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for coroot in d.positive_coroots() {
            let a = crate::mat::dot(&shifted, &coroot.vec);
            let b = crate::mat::dot(&d.two_rho().coords, &coroot.vec);
            debug_assert!(a > 0 && b > 0);
            num *= BigUint::from(a as u64);
            den *= BigUint::from(b as u64);
        }
        debug_assert!((&num % &den).is_zero());
        let q = num / den;
        self.dim_cache.borrow_mut().insert(lambda.coords.clone(), q.clone());
        q
    }

    // -- tensor products (Klimyk) ---------------------------------------------

    /// Full decomposition of `V(λ) ⊗ V(μ)` as a map ν → multiplicity via the
    /// Klimyk alternating sum over the weight system of the smaller factor.
    /// Negative intermediate contributions must cancel; the final map is
    /// asserted non-negative.
    pub fn tensor_decompose(&self, lambda: &WeightVec, mu: &WeightVec) -> Rc<Decomposition> {
        let key = if lambda.coords <= mu.coords {
            (lambda.coords.clone(), mu.coords.clone())
        } else {
            (mu.coords.clone(), lambda.coords.clone())
        };
        if let Some(t) = self.tensor_cache.borrow().get(&key) {
            return t.clone();
        }
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        let d = self.datum;
        // sum over the weight system of the smaller-dimensional factor
        let (big, small) = if self.dim_irrep(lambda) >= self.dim_irrep(mu) {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let small_char = self.character(small);
        let two_rho = &d.two_rho().coords;
        let big2 = vec_scale(&big.coords, 2);
        let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (wt, m) in small_char.entries.iter() {
            let x2 = vec_add(&vec_add(&big2, &vec_scale(wt, 2)), two_rho);
            let (dom, odd, regular) = d.dominant_weight_coords(&x2);
            if !regular {
                continue;
            }
            let nu2 = vec_sub(&dom, two_rho);
            debug_assert!(nu2.iter().all(|c| c % 2 == 0));
            let nu: Vec<i64> = nu2.iter().map(|c| c / 2).collect();
            let term = BigInt::from(m.clone());
            let entry = acc.entry(nu).or_insert_with(BigInt::zero);
            if odd {
                *entry -= term;
            } else {
                *entry += term;
            }
        }
        let mut out = BTreeMap::new();
        for (nu, c) in acc {
            assert!(!c.is_negative(), "negative tensor multiplicity at {nu:?}");
            if !c.is_zero() {
                out.insert(nu, c.magnitude().clone());
            }
        }
        let rc = Rc::new(out);
        self.tensor_cache.borrow_mut().insert(key, rc.clone());
        rc
    }

    /// Multiplicity of `V(ν)` inside `V(λ) ⊗ V(μ)`.
    pub fn tensor_multiplicity(&self, lambda: &WeightVec, mu: &WeightVec, nu: &WeightVec) -> BigUint {
        self.assert_dominant(nu);
        self.tensor_decompose(lambda, mu)
            .get(&nu.coords)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// `dim (V(λ₁) ⊗ ⋯ ⊗ V(λ_s))^G` for `s ≥ 1` dominant weights.
    pub fn invariant_dim(&self, weights: &[WeightVec]) -> BigUint {
        assert!(!weights.is_empty(), "invariant_dim needs at least one factor");
        for w in weights {
            self.assert_dominant(w);
        }
        match weights {
            [] => unreachable!("guarded by the emptiness assertion"),
            [l] => {
                if l.is_zero() {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            [l, m] => {
                let zero = WeightVec::zero(self.datum.rank());
                self.tensor_multiplicity(l, m, &zero)
            }
            [l, m, n] => self.tensor_multiplicity(l, m, &self.dual_weight(n)),
            [l, m, rest @ ..] => {
                let dec = self.tensor_decompose(l, m);
                let mut total = BigUint::zero();
                for (nu, c) in dec.iter() {
                    let mut args = vec![WeightVec::new(nu.clone())];
                    args.extend_from_slice(rest);
                    total += c * self.invariant_dim(&args);
                }
                total
            }
        }
    }

    // -- independent oracle ----------------------------------------------------

    /// Decompose `V(λ) ⊗ V(μ)` by multiplying characters as weight maps and
    /// stripping highest weights greedily. Independent of the Klimyk sum.
    pub fn character_product_oracle(
        &self,
        lambda: &WeightVec,
        mu: &WeightVec,
    ) -> Result<Decomposition> {
        self.assert_dominant(lambda);
        self.assert_dominant(mu);
        let size = self.dim_irrep(lambda) * self.dim_irrep(mu);
        if size > BigUint::from(ORACLE_CAP) {
            return Err(Error::OracleCap {
                size: u64::try_from(&size).unwrap_or(u64::MAX),
                cap: ORACLE_CAP,
            });
        }
        let d = self.datum;
        let ca = self.character(lambda);
        let cb = self.character(mu);
        let mut prod: BTreeMap<Vec<i64>, BigUint> = BTreeMap::new();
        for (wa, ma) in ca.entries.iter() {
            for (wb, mb) in cb.entries.iter() {
                let w = vec_add(wa, wb);
                *prod.entry(w).or_insert_with(BigUint::zero) += ma * mb;
            }
        }
        let two_rho_check = &d.two_rho_check().coords;
        let mut decomp = BTreeMap::new();
        while !prod.is_empty() {
            // highest weight: maximal height, ties broken by lex order;
            // in a genuine character this weight is dominant
            let top = prod
                .keys()
                .max_by_key(|w| (crate::mat::dot(w, two_rho_check), (*w).clone()))
                .unwrap()
                .clone();
            assert!(
                d.is_dominant(&WeightVec::new(top.clone())),
                "residual character has a non-dominant highest weight"
            );
            let c = prod.get(&top).unwrap().clone();
            let char_top = self.character(&WeightVec::new(top.clone()));
            for (w, m) in char_top.entries.iter() {
                let cur = prod
                    .get_mut(w)
                    .unwrap_or_else(|| panic!("residual character missing weight {w:?}"));
                let sub = &c * m;
                assert!(*cur >= sub, "residual character went negative at {w:?}");
                *cur -= sub;
                if cur.is_zero() {
                    prod.remove(w);
                }
            }
            decomp.insert(top, c);
        }
        Ok(decomp)
    }
}

/// Enumerate all `e ≥ 0` with `Σ e_j ≤ cap`, collecting dominant
/// `λ − Σ e_j α_j`.
fn enumerate_exprs(
    d: &RootDatum,
    lambda: &WeightVec,
    expr: &mut Vec<i64>,
    pos: usize,
    budget: i64,
    out: &mut Vec<(Vec<i64>, Vec<i64>)>,
) {
    if pos == expr.len() {
        let mut mu = lambda.coords.clone();
        for (j, &e) in expr.iter().enumerate() {
            if e != 0 {
                for k in 0..d.rank() {
                    mu[k] -= e * d.simple_roots()[j][k];
                }
            }
        }
        if d.is_dominant(&WeightVec::new(mu.clone())) {
            out.push((expr.clone(), mu));
        }
        return;
    }
    for e in 0..=budget {
        expr[pos] = e;
        enumerate_exprs(d, lambda, expr, pos + 1, budget - e, out);
    }
    expr[pos] = 0;
}

fn num_integer_div_rem(num: &BigInt, den: i64) -> (BigInt, BigInt) {
    let d = BigInt::from(den);
    (num / &d, num % &d)
}
