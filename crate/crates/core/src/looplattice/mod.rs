//! Loop-group lattice computations for `SL_m` (`m ≤ 4`): Chevalley distance
//! between lattices via elementary-divisor valuations, membership in cyclic
//! convolution cycles, and stabilizer Lie-algebra dimensions modulo `t^N`.
//!
//! Lattice points are cosets of `SL_m(𝒦)/SL_m(𝒪)` represented by matrices
//! over exact rational Laurent polynomials. Elementary divisors are computed
//! by valuation-greedy pivoting over the Laurent field; every truncated run
//! is certified by recomputation at a window widened by 4.

mod laurent;

pub use laurent::{parse_matrix, parse_poly, LaurentMatrix, LaurentPoly, MAX_WINDOW_WIDTH};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rootdata::CoweightVec;
use crate::{Error, Result};

/// Extra degrees of precision for the certification rerun.
const CERTIFY_SLACK: i64 = 4;

/// A point of `SL_m(𝒦)/SL_m(𝒪)`: a coset representative, invertible over
/// the Laurent field.
#[derive(Clone, Debug)]
pub struct LatticePoint {
    rep: LaurentMatrix,
}

impl LatticePoint {
    pub fn new(rep: LaurentMatrix) -> Result<LatticePoint> {
        if rep.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LatticePoint { rep })
    }

    /// The base point `[0]`.
    pub fn base(m: usize) -> LatticePoint {
        LatticePoint { rep: LaurentMatrix::identity(m) }
    }

    pub fn rep(&self) -> &LaurentMatrix {
        &self.rep
    }

    pub fn size(&self) -> usize {
        self.rep.size()
    }

    /// True when the representative lies in `GL_m(𝒪)`, i.e. the point is the
    /// base point.
    pub fn is_base(&self) -> bool {
        self.rep.is_integral_unimodular()
    }
}

/// `t^λ` for an integral coweight of `SL_m` given in simple-coroot
/// coordinates (length `m−1`): the diagonal exponents are the consecutive
/// differences and always sum to zero.
pub fn torus_point(m: usize, coweight: &CoweightVec) -> Result<LatticePoint> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidDatum(format!("SL_{m} is outside the supported range 2..=4")));
    }
    if coweight.coords.len() != m - 1 {
        return Err(Error::RankMismatch { expected: m - 1, got: coweight.coords.len() });
    }
    let exponents = coroot_coords_to_exponents(&coweight.coords);
    LatticePoint::new(LaurentMatrix::diag_t_powers(&exponents))
}

fn coroot_coords_to_exponents(coords: &[i64]) -> Vec<i64> {
    let m = coords.len() + 1;
    let mut a = Vec::with_capacity(m);
    let mut prev = 0;
    for &c in coords {
        a.push(c - prev);
        prev = c;
    }
    a.push(-prev);
    a
}

fn exponents_to_coroot_coords(exponents: &[i64]) -> Option<Vec<i64>> {
    let mut coords = Vec::with_capacity(exponents.len() - 1);
    let mut acc = 0;
    for &a in &exponents[..exponents.len() - 1] {
        acc += a;
        coords.push(acc);
    }
    if acc + exponents[exponents.len() - 1] == 0 {
        Some(coords)
    } else {
        None
    }
}

/// The unique dominant coweight `d(L₁, L₂)` classifying the pair up to
/// simultaneous translation, as elementary-divisor valuations of
/// `rep(L₁)⁻¹ · rep(L₂)` sorted decreasingly, in simple-coroot coordinates.
pub fn chevalley_distance(l1: &LatticePoint, l2: &LatticePoint) -> Result<CoweightVec> {
    let hint = default_horizon(l1, l2);
    chevalley_distance_with_precision(l1, l2, hint)
}

/// As [`chevalley_distance`], with an explicit truncation horizon; a
/// window-insufficient error is a retry signal for a larger horizon.
pub fn chevalley_distance_with_precision(
    l1: &LatticePoint,
    l2: &LatticePoint,
    horizon: i64,
) -> Result<CoweightVec> {
    if l1.size() != l2.size() {
        return Err(Error::LengthMismatch(format!(
            "lattice points of sizes {} and {}",
            l1.size(),
            l2.size()
        )));
    }
    let m = l1.size();
    let first = relative_valuations(l1, l2, horizon)?;
    let second = relative_valuations(l1, l2, horizon + CERTIFY_SLACK)?;
    if first != second {
        return Err(Error::WindowInsufficient(format!(
            "elementary divisors unstable between horizons {horizon} and {}",
            horizon + CERTIFY_SLACK
        )));
    }
    if first.iter().sum::<i64>() != 0 {
        return Err(Error::InvalidDatum(
            "relative position is not in SL_m: divisor valuations do not sum to 0".into(),
        ));
    }
    let mut vals = first;
    vals.sort_unstable_by(|a, b| b.cmp(a));
    let coords = exponents_to_coroot_coords(&vals).expect("checked zero sum");
    debug_assert_eq!(coords.len(), m - 1);
    Ok(CoweightVec::new(coords))
}

fn default_horizon(l1: &LatticePoint, l2: &LatticePoint) -> i64 {
    let (a_lo, a_hi) = l1.rep.window();
    let (b_lo, b_hi) = l2.rep.window();
    let spread = (a_hi - a_lo) + (b_hi - b_lo);
    let m = l1.size() as i64;
    m * spread + 8
}

/// Elementary-divisor valuations (unsorted, pivot order) of `l1⁻¹ l2`,
/// working modulo `t^horizon`.
fn relative_valuations(l1: &LatticePoint, l2: &LatticePoint, horizon: i64) -> Result<Vec<i64>> {
    let m = l1.size();
    let adj = l1.rep.adjugate()?;
    let num = adj.mul(&l2.rep)?;
    let det = l1.rep.det();
    debug_assert!(!det.is_zero());
    // g = adj(L1)·L2 / det(L1), entry-wise truncated division
    let g: Vec<LaurentPoly> =
        num.entries().iter().map(|e| e.div_truncated(&det, horizon)).collect();
    let mut a: Vec<Vec<LaurentPoly>> =
        (0..m).map(|i| (0..m).map(|j| g[i * m + j].clone()).collect()).collect();
    let mut vals = Vec::with_capacity(m);
    for k in 0..m {
        // valuation-greedy pivot selection
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..m {
            for j in k..m {
                if let Some(v) = a[i][j].valuation() {
                    if best.is_none_or(|(bv, bi, bj)| v < bv || (v == bv && (i, j) < (bi, bj))) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            return Err(Error::WindowInsufficient(format!(
                "pivot block vanished within horizon {horizon}"
            )));
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = a[k][k].clone();
        for i in k + 1..m {
            if a[i][k].is_zero() {
                continue;
            }
            let q = a[i][k].div_truncated(&pivot, horizon);
            for j in k..m {
                let s = q.mul(&a[k][j]).truncate_above(horizon);
                a[i][j] = a[i][j].sub(&s).truncate_above(horizon);
            }
        }
        for j in k + 1..m {
            if a[k][j].is_zero() {
                continue;
            }
            let q = a[k][j].div_truncated(&pivot, horizon);
            for i in k..m {
                let s = q.mul(&a[i][k]).truncate_above(horizon);
                a[i][j] = a[i][j].sub(&s).truncate_above(horizon);
            }
        }
        vals.push(v);
    }
    Ok(vals)
}

/// Membership in the cyclic convolution cycle: the last point is the base
/// point and every cyclic Chevalley distance matches its target.
pub fn convolution_membership(
    points: &[LatticePoint],
    targets: &[CoweightVec],
) -> Result<bool> {
    if points.len() != targets.len() {
        return Err(Error::LengthMismatch(format!(
            "{} points but {} targets",
            points.len(),
            targets.len()
        )));
    }
    if points.is_empty() {
        return Err(Error::LengthMismatch("empty point tuple".into()));
    }
    let s = points.len();
    if !points[s - 1].is_base() {
        return Ok(false);
    }
    for i in 0..s {
        let prev = &points[(i + s - 1) % s];
        let d = chevalley_distance(prev, &points[i])?;
        if d != targets[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stabilizer and orbit dimensions modulo `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerDims {
    pub stab_dim_mod_tn: i64,
    pub orbit_dim: i64,
    /// `orbit_dim` agrees at `N` and `N+1`.
    pub stable: bool,
}

/// The traceless basis of `sl_m`: upper `E_ij` (i<j), then the Cartan
/// `E_kk − E_{k+1,k+1}`, then lower `E_ij` (i>j). For `m = 2` this is
/// `[e, h, f]`.
pub fn sl_basis(m: usize) -> Vec<Vec<Vec<i64>>> {
    let mut basis = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut b = vec![vec![0i64; m]; m];
            b[i][j] = 1;
            basis.push(b);
        }
    }
    for k in 0..m - 1 {
        let mut b = vec![vec![0i64; m]; m];
        b[k][k] = 1;
        b[k + 1][k + 1] = -1;
        basis.push(b);
    }
    for j in 0..m {
        for i in j + 1..m {
            let mut b = vec![vec![0i64; m]; m];
            b[i][j] = 1;
            basis.push(b);
        }
    }
    basis
}

/// Dimension of `{X ∈ sl_m(𝒪/t^N) : Ad_{g⁻¹} X ∈ sl_m(𝒪) for all g}` and of
/// the corresponding orbit, by exact linear algebra on the coefficients that
/// must vanish in negative degrees.
pub fn stabilizer_intersection_dim(
    group_elts: &[LaurentMatrix],
    n_trunc: usize,
) -> Result<StabilizerDims> {
    if n_trunc == 0 {
        return Err(Error::InvalidDatum("truncation order must be ≥ 1".into()));
    }
    let m = validate_elements(group_elts)?;
    let dim_sl = (m * m - 1) as i64;
    let rank_n = constraint_rank(group_elts, m, n_trunc as i64)?;
    let rank_next = constraint_rank(group_elts, m, n_trunc as i64 + 1)?;
    let stab = n_trunc as i64 * dim_sl - rank_n;
    Ok(StabilizerDims { stab_dim_mod_tn: stab, orbit_dim: rank_n, stable: rank_n == rank_next })
}

fn validate_elements(group_elts: &[LaurentMatrix]) -> Result<usize> {
    let m = group_elts
        .first()
        .map(|g| g.size())
        .ok_or_else(|| Error::LengthMismatch("no group elements".into()))?;
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidDatum(format!("SL_{m} is outside the supported range 2..=4")));
    }
    for g in group_elts {
        if g.size() != m {
            return Err(Error::LengthMismatch("group elements of mixed sizes".into()));
        }
    }
    Ok(m)
}

/// Conjugates `g⁻¹ B_b g` of the `sl_m` basis by every group element.
fn basis_conjugates(
    group_elts: &[LaurentMatrix],
    m: usize,
) -> Result<Vec<Vec<LaurentMatrix>>> {
    let basis = sl_basis(m);
    let mut out = Vec::with_capacity(group_elts.len());
    for g in group_elts {
        let gi = g.inverse()?;
        let mut per_basis = Vec::with_capacity(basis.len());
        for b in &basis {
            let bm = LaurentMatrix::from_int_rows(b)?;
            per_basis.push(gi.mul(&bm)?.mul(g)?);
        }
        out.push(per_basis);
    }
    Ok(out)
}

fn constraint_rank(group_elts: &[LaurentMatrix], m: usize, n: i64) -> Result<i64> {
    let conj = basis_conjugates(group_elts, m)?;
    let nb = conj[0].len();
    let nvars = (nb as i64 * n) as usize;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for per_basis in &conj {
        // negative degrees that can appear for this group element
        let min_deg = per_basis
            .iter()
            .flat_map(|c| c.entries().iter().filter_map(|e| e.valuation()))
            .min()
            .unwrap_or(0);
        for i in 0..m {
            for j in 0..m {
                for deg in min_deg..0 {
                    let mut row = vec![BigRational::zero(); nvars];
                    let mut any = false;
                    for (b, c) in per_basis.iter().enumerate() {
                        for k in 0..n {
                            let coeff = c.entry(i, j).coeff(deg - k);
                            if !coeff.is_zero() {
                                row[b * n as usize + k as usize] = coeff;
                                any = true;
                            }
                        }
                    }
                    if any {
                        rows.push(clear_denominators(&row));
                    }
                }
            }
        }
    }
    Ok(crate::linalg::bigint_rank(&rows) as i64)
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        if !r.is_zero() {
            lcm = lcm.lcm(r.denom());
        }
    }
    row.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Per-basis valuations of the stabilizer Lie algebra when it splits as
/// `⊕_b t^{k_b}·B_b(𝒪)`; `certified` records that the split module has the
/// same dimension as the stabilizer kernel (so the two agree exactly).
#[derive(Clone, Debug)]
pub struct BasisValuations {
    pub valuations: Vec<i64>,
    pub certified: bool,
}

pub fn stabilizer_basis_valuations(group_elts: &[LaurentMatrix]) -> Result<BasisValuations> {
    let m = validate_elements(group_elts)?;
    let conj = basis_conjugates(group_elts, m)?;
    let nb = conj[0].len();
    let mut valuations = vec![0i64; nb];
    for per_basis in &conj {
        for (b, c) in per_basis.iter().enumerate() {
            let min_val = c.entries().iter().filter_map(|e| e.valuation()).min().unwrap_or(0);
            valuations[b] = valuations[b].max(-min_val);
        }
    }
    // certify against the kernel dimension at a stable truncation
    let max_k = valuations.iter().copied().max().unwrap_or(0);
    let n = (max_k + 2) as usize;
    let dims = stabilizer_intersection_dim(group_elts, n)?;
    let split_dim: i64 = valuations.iter().map(|&k| n as i64 - k).sum();
    Ok(BasisValuations { valuations, certified: dims.stable && split_dim == dims.stab_dim_mod_tn })
}

// ---------------------------------------------------------------------------
// The SL₂ example

fn mat(s: &str) -> LaurentMatrix {
    parse_matrix(s).expect("static matrix literal parses")
}

/// Check the two displayed `SL₂` matrix factorizations exactly over Laurent
/// polynomials. A `false` return is a build-breaking event.
pub fn verify_matrix_identities() -> bool {
    let z = mat("[[1, t], [0, 1]]");
    let t_alpha = mat("[[t, 0], [0, t^-1]]");
    let y = mat("[[t, 1], [0, t^-1]]");
    let b = mat("[[0, 1], [-1, t]]");
    let d = mat("[[1, 0], [t, 1]]");

    let chain = |factors: &[&LaurentMatrix]| -> LaurentMatrix {
        let mut acc = LaurentMatrix::identity(2);
        for f in factors {
            acc = acc.mul(f).expect("window is ample");
        }
        acc
    };

    let first = z.mul(&t_alpha).expect("window is ample") == y
        && chain(&[&t_alpha, &b, &t_alpha, &d]) == y;
    let second = chain(&[&t_alpha, &b, &t_alpha, &b, &t_alpha]) == mat("[[-t, 1], [-1, 0]]");
    let trivial = LaurentMatrix::identity(2)
        .mul(&LaurentMatrix::identity(2))
        .expect("window is ample")
        == LaurentMatrix::identity(2);
    first && second && trivial
}

/// Everything the SL₂ example asserts, computed exactly.
#[derive(Clone, Debug)]
pub struct Sl2Example {
    pub y: LaurentMatrix,
    pub identities_hold: bool,
    /// Cyclic distances of `([α∨], ȳ, [0])`.
    pub distances: Vec<CoweightVec>,
    pub membership: bool,
    pub stab_dims: StabilizerDims,
    /// Valuations of the stabilizer on the `(e, h, f)` basis.
    pub basis_valuations: Vec<i64>,
    pub valuations_certified: bool,
}

/// Reproduce the `SL₂` computation: the point `([α∨], ȳ, [0])` of the cyclic
/// cycle for `(α∨, α∨, α∨)`, its stabilizer `t²e(𝒪) ⊕ th(𝒪) ⊕ f(𝒪)`, and
/// the orbit dimension 3.
pub fn sl2_example() -> Result<Sl2Example> {
    let y = parse_matrix("[[t, 1], [0, t^-1]]")?.with_declared_det(LaurentPoly::one())?;
    let alpha_check = CoweightVec::new(vec![1]);
    let p1 = torus_point(2, &alpha_check)?;
    let p2 = LatticePoint::new(y.clone())?;
    let p3 = LatticePoint::base(2);

    let distances = vec![
        chevalley_distance(&p3, &p1)?,
        chevalley_distance(&p1, &p2)?,
        chevalley_distance(&p2, &p3)?,
    ];
    let targets = vec![alpha_check.clone(), alpha_check.clone(), alpha_check.clone()];
    let membership =
        convolution_membership(&[p1.clone(), p2.clone(), p3.clone()], &targets)?;

    let t_alpha = p1.rep().clone();
    let elts = vec![t_alpha, y.clone()];
    let stab_dims = stabilizer_intersection_dim(&elts, 4)?;
    let vals = stabilizer_basis_valuations(&elts)?;

    Ok(Sl2Example {
        y,
        identities_hold: verify_matrix_identities(),
        distances,
        membership,
        stab_dims,
        basis_valuations: vals.valuations,
        valuations_certified: vals.certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(c: &[i64]) -> CoweightVec {
        CoweightVec::new(c.to_vec())
    }

    #[test]
    fn torus_points() {
        let p = torus_point(2, &cw(&[1])).unwrap();
        assert_eq!(p.rep().entry(0, 0).valuation(), Some(1));
        assert_eq!(p.rep().entry(1, 1).valuation(), Some(-1));
        let p = torus_point(3, &cw(&[1, 0])).unwrap();
        let diag: Vec<i64> =
            (0..3).map(|i| p.rep().entry(i, i).valuation().unwrap()).collect();
        assert_eq!(diag, vec![1, -1, 0]);
        let zero = torus_point(2, &cw(&[0])).unwrap();
        assert!(zero.is_base());
        assert!(torus_point(2, &cw(&[1, 2])).is_err());
        assert!(torus_point(5, &cw(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn distance_to_torus_point_is_the_coweight() {
        let base = LatticePoint::base(2);
        for c in [0i64, 1, 3] {
            let p = torus_point(2, &cw(&[c])).unwrap();
            assert_eq!(chevalley_distance(&base, &p).unwrap(), cw(&[c]));
        }
        let base3 = LatticePoint::base(3);
        for coords in [[1, 0], [2, 1], [0, 0], [3, 1]] {
            let p = torus_point(3, &cw(&coords)).unwrap();
            let d = chevalley_distance(&base3, &p).unwrap();
            // distance of a torus point is the dominant sort of its exponents
            let mut exp = coroot_coords_to_exponents(&coords);
            exp.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(d, cw(&exponents_to_coroot_coords(&exp).unwrap()));
        }
    }

    #[test]
    fn distance_is_zero_on_equal_points() {
        let y = parse_matrix("[[t, 1], [0, t^-1]]").unwrap();
        let p = LatticePoint::new(y).unwrap();
        assert_eq!(chevalley_distance(&p, &p).unwrap(), cw(&[0]));
    }

    #[test]
    fn sl2_example_distances() {
        let ex = sl2_example().unwrap();
        assert!(ex.identities_hold);
        assert_eq!(ex.distances, vec![cw(&[1]), cw(&[1]), cw(&[1])]);
        assert!(ex.membership);
        assert_eq!(ex.stab_dims.orbit_dim, 3);
        assert!(ex.stab_dims.stable);
        assert_eq!(ex.basis_valuations, vec![2, 1, 0]);
        assert!(ex.valuations_certified);
    }

    #[test]
    fn membership_errors_and_negatives() {
        let p = torus_point(2, &cw(&[1])).unwrap();
        let base = LatticePoint::base(2);
        // wrong lengths
        assert!(convolution_membership(std::slice::from_ref(&p), &[cw(&[1]), cw(&[1])]).is_err());
        // last point not the base point: not a member
        assert!(!convolution_membership(&[base.clone(), p.clone()], &[cw(&[1]), cw(&[1])])
            .unwrap());
        // trivial tuple
        assert!(convolution_membership(&[base], &[cw(&[0])]).unwrap());
    }

    #[test]
    fn torus_translate_point_membership() {
        // ([λ], [λ+wμ], [0]) for λ = μ = α∨ and w the reflection: the shifted
        // point is the base point and the targets are (α∨, α∨, 0)
        let lam = cw(&[1]);
        let p1 = torus_point(2, &lam).unwrap();
        let p2 = torus_point(2, &cw(&[0])).unwrap();
        let p3 = LatticePoint::base(2);
        let member = convolution_membership(
            &[p1, p2, p3],
            &[lam.clone(), lam, cw(&[0])],
        )
        .unwrap();
        assert!(member);
    }

    #[test]
    fn trivial_stabilizer_is_everything() {
        let id = LaurentMatrix::identity(2);
        let dims = stabilizer_intersection_dim(&[id], 3).unwrap();
        assert_eq!(dims.orbit_dim, 0);
        assert_eq!(dims.stab_dim_mod_tn, 9);
        assert!(dims.stable);
    }

    #[test]
    fn torus_translate_orbit_dims() {
        // single torus element diag(t^c, t^-c): orbit dim = 2·|⟨α, cα∨⟩| = 4c/2…
        // constraints: e needs val ≥ 2c, f none, h none on one side; plus the
        // opposite root from negative degrees: Σ max(0, ±2c) = 2c.
        for c in 1..=3i64 {
            let p = torus_point(2, &cw(&[c])).unwrap();
            let n = (2 * c + 2) as usize;
            let dims = stabilizer_intersection_dim(&[p.rep().clone()], n).unwrap();
            assert!(dims.stable);
            assert_eq!(dims.orbit_dim, 2 * c);
        }
    }

    #[test]
    fn stability_flag_detects_small_truncation() {
        // diag(t^3, t^-3) needs N ≥ 6; N = 2 is unstable
        let p = torus_point(2, &cw(&[3])).unwrap();
        let dims = stabilizer_intersection_dim(&[p.rep().clone()], 2).unwrap();
        assert!(!dims.stable);
    }

    #[test]
    fn distance_bi_invariance_under_integral_translation() {
        // multiply both points on the left by a fixed O-valued unimodular
        // matrix: the distance is unchanged
        let u = parse_matrix("[[1, 2 + t], [0, 1]]").unwrap();
        let v = parse_matrix("[[1, 0], [3*t^2, 1]]").unwrap();
        let g = u.mul(&v).unwrap();
        assert!(g.is_integral_unimodular());
        let p1 = torus_point(2, &cw(&[2])).unwrap();
        let p2 = LatticePoint::new(parse_matrix("[[t, 1], [0, t^-1]]").unwrap()).unwrap();
        let d0 = chevalley_distance(&p1, &p2).unwrap();
        let q1 = LatticePoint::new(g.mul(p1.rep()).unwrap()).unwrap();
        let q2 = LatticePoint::new(g.mul(p2.rep()).unwrap()).unwrap();
        assert_eq!(chevalley_distance(&q1, &q2).unwrap(), d0);
    }

    #[test]
    fn non_monomial_determinant_goes_through_truncated_division() {
        // det = 1 + t is a unit of the power series ring, so this matrix
        // represents the base point; the distance computation must take the
        // series-inverse route and still certify
        let u = parse_matrix("[[1 + t, 0], [0, 1]]").unwrap();
        let p = LatticePoint::new(u.clone()).unwrap();
        assert!(p.is_base());
        let q = LatticePoint::new(u.mul(torus_point(2, &cw(&[2])).unwrap().rep()).unwrap())
            .unwrap();
        let base = LatticePoint::base(2);
        assert_eq!(chevalley_distance(&p, &q).unwrap(), cw(&[2]));
        assert_eq!(chevalley_distance(&base, &q).unwrap(), cw(&[2]));
    }

    #[test]
    fn non_sl_relative_position_is_rejected() {
        // diag(t, 1) has determinant valuation 1: not an SL_2 pair
        let g = parse_matrix("[[t, 0], [0, 1]]").unwrap();
        let p = LatticePoint::new(g).unwrap();
        let base = LatticePoint::base(2);
        assert!(matches!(
            chevalley_distance(&base, &p),
            Err(Error::InvalidDatum(_))
        ));
    }

    #[test]
    fn singular_lattice_point_is_rejected() {
        let z = parse_matrix("[[t, t], [1, 1]]").unwrap(); // det = 0
        assert!(matches!(LatticePoint::new(z), Err(Error::SingularMatrix)));
    }

    #[test]
    fn sl4_torus_stabilizers() {
        // SL_4: a single torus translate diag(t^{a_1},…,t^{a_4}) has orbit
        // dimension Σ_{i≠j} max(0, a_i − a_j)
        for coords in [[1, 0, 0], [1, 1, 1], [2, 1, 1]] {
            let p = torus_point(4, &cw(&coords)).unwrap();
            let exps = coroot_coords_to_exponents(&coords);
            let expected: i64 = exps
                .iter()
                .flat_map(|a| exps.iter().map(move |b| 0i64.max(a - b)))
                .sum();
            let n = (exps.iter().max().unwrap() - exps.iter().min().unwrap() + 2) as usize;
            let dims = stabilizer_intersection_dim(&[p.rep().clone()], n).unwrap();
            assert!(dims.stable, "{coords:?}");
            assert_eq!(dims.orbit_dim, expected, "{coords:?}");
        }
    }

    #[test]
    fn sl3_distance_example() {
        // d([0], shear · t^λ) for a 3×3 case with a non-diagonal representative:
        // rep = [[t², 0, t^-2], [0, t^-1, 0], [0, 0, t^-1]] has elementary
        // divisor valuations (−2, −1, 3)
        let shear = parse_matrix("[[1, 0, t^-1], [0, 1, 0], [0, 0, 1]]").unwrap();
        let t_lam = torus_point(3, &cw(&[2, 1])).unwrap();
        let rep = shear.mul(t_lam.rep()).unwrap();
        let p = LatticePoint::new(rep).unwrap();
        let base = LatticePoint::base(3);
        let d = chevalley_distance(&base, &p).unwrap();
        assert_eq!(d, cw(&[3, 2]));
    }
}
