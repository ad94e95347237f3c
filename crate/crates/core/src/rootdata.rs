//! Root data: root systems plus weight/coweight lattices with their pairing.
//!
//! A [`RootDatum`] fixes a based root datum `(X*, Φ, X_*, Φ∨)` in coordinates:
//! the character lattice `X*` is `ℤ^rank` and the cocharacter lattice `X_*`
//! is its dual, so the pairing of coordinate vectors is the dot product.
//! Simply connected form: `X*` has the fundamental weights as basis (simple
//! coroots are unit vectors). Adjoint form: `X*` has the simple roots as
//! basis. Reducible data are direct sums, optionally with torus factors that
//! carry no roots.
//!
//! Conventions: Bourbaki numbering of simple roots throughout; the Cartan
//! matrix entry is `a[i][j] = ⟨α_i, α_j∨⟩`; for `B2` the first simple root
//! is long. `ρ` and `ρ∨` are stored doubled (`2ρ`, `2ρ∨`) so that all
//! arithmetic stays in integers; halved pairings are exposed as exact
//! rationals.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;

use crate::linalg::{self, Rat};
use crate::{Error, Result};

/// Cap on the Weyl group order of a constructible datum (the order of `W(E6)`).
pub const WEYL_ORDER_CAP: u64 = 51_840;
/// Cap on the rank of a single simple factor.
pub const SIMPLE_RANK_CAP: usize = 6;

/// Simple Lie type families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    /// The family of the dual root system (roles of B and C swap).
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

/// The isomorphism type of a datum: simple factors plus a torus rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanLabel {
    pub simple: Vec<(Family, usize)>,
    pub torus_rank: usize,
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .simple
            .iter()
            .map(|(fam, r)| format!("{}{}", fam.letter(), r))
            .collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        if parts.is_empty() {
            parts.push("T0".to_string());
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// Lattice form for a labelled construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeForm {
    /// Character lattice spanned by fundamental weights (plus torus part).
    SimplyConnected,
    /// Character lattice spanned by the simple roots (plus torus part).
    Adjoint,
}

/// Integer vector in the character lattice `X*`, in the datum's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec {
    pub coords: Vec<i64>,
}

impl WeightVec {
    pub fn new(coords: Vec<i64>) -> Self {
        WeightVec { coords }
    }

    pub fn zero(rank: usize) -> Self {
        WeightVec { coords: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Integer vector in the cocharacter lattice `X_*`, in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoweightVec {
    pub coords: Vec<i64>,
}

impl CoweightVec {
    pub fn new(coords: Vec<i64>) -> Self {
        CoweightVec { coords }
    }

    pub fn zero(rank: usize) -> Self {
        CoweightVec { coords: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CoweightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// A positive root (or coroot): its coordinates in the ambient lattice and
/// its expression in the simple roots (respectively simple coroots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosRoot {
    pub vec: Vec<i64>,
    pub expr: Vec<i64>,
}

impl PosRoot {
    /// Height: the sum of the simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.expr.iter().sum()
    }
}

/// A based root datum with all derived constants.
#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    label: CartanLabel,
    form_desc: String,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    /// Symmetrizers `d_j = (α_j, α_j)/2`, normalized so short roots in each
    /// factor have squared length 2.
    d: Vec<i64>,
    positive_roots: Vec<PosRoot>,
    positive_coroots: Vec<PosRoot>,
    two_rho: WeightVec,
    two_rho_check: CoweightVec,
    weyl_order: u64,
    symmetric_form: Vec<Vec<Rat>>,
    root_left_inv: Vec<Vec<Rat>>,
    coroot_left_inv: Vec<Vec<Rat>>,
}

// ---------------------------------------------------------------------------
// Family tables

/// Cartan matrix (convention `a[i][j] = ⟨α_i, α_j∨⟩`) and symmetrizers for
/// one simple factor in Bourbaki numbering.
fn family_cartan(family: Family, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let bad = || {
        Err(Error::UnsupportedLabel(format!(
            "{}{} is not a supported simple type",
            family.letter(),
            rank
        )))
    };
    if rank == 0 || rank > SIMPLE_RANK_CAP {
        return bad();
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    let d = match (family, rank) {
        (Family::A, _) => {
            chain(&mut a, rank - 1);
            vec![1; rank]
        }
        (Family::B, r) if r >= 2 => {
            chain(&mut a, rank - 1);
            // α_rank is short: ⟨α_{r-1}, α_r∨⟩ = -2
            a[rank - 2][rank - 1] = -2;
            let mut d = vec![2; rank];
            d[rank - 1] = 1;
            d
        }
        (Family::C, r) if r >= 2 => {
            chain(&mut a, rank - 1);
            // α_rank is long: ⟨α_r, α_{r-1}∨⟩ = -2
            a[rank - 1][rank - 2] = -2;
            let mut d = vec![1; rank];
            d[rank - 1] = 2;
            d
        }
        (Family::D, r) if r >= 3 => {
            chain(&mut a, rank - 2);
            a[rank - 3][rank - 1] = -1;
            a[rank - 1][rank - 3] = -1;
            vec![1; rank]
        }
        (Family::E, 6) => {
            // Bourbaki E6: chain 1-3-4-5-6 with 2 attached to 4.
            for &(i, j) in &[(0usize, 2usize), (2, 3), (3, 4), (4, 5), (1, 3)] {
                a[i][j] = -1;
                a[j][i] = -1;
            }
            vec![1; rank]
        }
        (Family::F, 4) => {
            chain(&mut a, 3);
            a[1][2] = -2;
            vec![2, 2, 1, 1]
        }
        (Family::G, 2) => {
            a[0][1] = -1;
            a[1][0] = -3;
            vec![1, 3]
        }
        _ => return bad(),
    };
    Ok((a, d))
}

fn family_weyl_order(family: Family, rank: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match family {
        Family::A => fact(rank + 1),
        Family::B | Family::C => (1u64 << rank) * fact(rank),
        Family::D => (1u64 << (rank - 1)) * fact(rank),
        Family::E => 51_840, // rank 6 only within the cap
        Family::F => 1_152,
        Family::G => 12,
    }
}

fn parse_label(label: &str) -> Result<CartanLabel> {
    let mut simple = Vec::new();
    let mut torus_rank = 0usize;
    if label.trim().is_empty() {
        return Err(Error::UnsupportedLabel("empty label".into()));
    }
    for tok in label.trim().split('x') {
        let tok = tok.trim();
        let mut it = tok.chars();
        let head = it
            .next()
            .ok_or_else(|| Error::UnsupportedLabel(format!("empty token in {label:?}")))?;
        let num: String = it.collect();
        let r: usize = num
            .parse()
            .map_err(|_| Error::UnsupportedLabel(format!("bad rank in token {tok:?}")))?;
        if head == 'T' {
            if r > SIMPLE_RANK_CAP {
                return Err(Error::UnsupportedLabel(format!("torus rank {r} exceeds cap")));
            }
            torus_rank += r;
        } else if let Some(fam) = Family::from_letter(head) {
            if r == 0 {
                return Err(Error::UnsupportedLabel(format!(
                    "rank 0 with non-torus label {tok:?}"
                )));
            }
            family_cartan(fam, r)?; // validate early
            simple.push((fam, r));
        } else {
            return Err(Error::UnsupportedLabel(format!("unknown token {tok:?}")));
        }
    }
    Ok(CartanLabel { simple, torus_rank })
}

// ---------------------------------------------------------------------------
// Construction

struct ClosureOutput {
    roots: Vec<PosRoot>,   // expr only; vec filled later
    coroots: Vec<PosRoot>, // coexpr only
}

/// Enumerate the positive roots (with coroots) by closing the simple roots
/// under simple reflections, tracking expressions in the simple (co)roots.
fn closure(cartan: &[Vec<i64>], cap: usize) -> Result<ClosureOutput> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push((e.clone(), e.clone()));
        out.push((e.clone(), e));
    }
    let mut head = 0;
    while head < queue.len() {
        let (expr, coexpr) = queue[head].clone();
        head += 1;
        for i in 0..n {
            // ⟨β, α_i∨⟩ = Σ_j expr_j a[j][i] ; ⟨α_i, β∨⟩ = Σ_j coexpr_j a[i][j]
            let p: i64 = (0..n).map(|j| expr[j] * cartan[j][i]).sum();
            let q: i64 = (0..n).map(|j| coexpr[j] * cartan[i][j]).sum();
            let mut ne = expr.clone();
            ne[i] -= p;
            if ne.iter().any(|&c| c < 0) {
                continue;
            }
            if seen.insert(ne.clone()) {
                let mut nc = coexpr.clone();
                nc[i] -= q;
                debug_assert!(nc.iter().all(|&c| c >= 0));
                out.push((ne.clone(), nc.clone()));
                queue.push((ne, nc));
                if out.len() > cap {
                    return Err(Error::InvalidDatum(format!(
                        "root closure exceeded cap {cap}; not a finite root system"
                    )));
                }
            }
        }
    }
    // sort by (height, expr) for deterministic, height-compatible order
    out.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        (ha, &a.0).cmp(&(hb, &b.0))
    });
    Ok(ClosureOutput {
        roots: out
            .iter()
            .map(|(e, _)| PosRoot { vec: Vec::new(), expr: e.clone() })
            .collect(),
        coroots: out
            .into_iter()
            .map(|(_, c)| PosRoot { vec: Vec::new(), expr: c })
            .collect(),
    })
}

fn combine(vectors: &[Vec<i64>], expr: &[i64], rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for (j, c) in expr.iter().enumerate() {
        if *c != 0 {
            for k in 0..rank {
                v[k] += c * vectors[j][k];
            }
        }
    }
    v
}

impl RootDatum {
    /// Build a datum from a type label in the given lattice form.
    ///
    /// Labels are `<Letter><rank>` tokens joined by `x`, with torus factors
    /// written `T<r>`: `"A2"`, `"B3xT1"`, `"A1xA1xT2"`.
    pub fn from_label(label: &str, form: LatticeForm) -> Result<RootDatum> {
        let parsed = parse_label(label)?;
        Self::build_labelled(parsed, form)
    }

    /// Simply connected form of a labelled type.
    pub fn simply_connected(label: &str) -> Result<RootDatum> {
        Self::from_label(label, LatticeForm::SimplyConnected)
    }

    /// Adjoint form of a labelled type.
    pub fn adjoint(label: &str) -> Result<RootDatum> {
        Self::from_label(label, LatticeForm::Adjoint)
    }

    /// A pure torus of the given rank.
    pub fn torus(rank: usize) -> Result<RootDatum> {
        if rank > SIMPLE_RANK_CAP {
            return Err(Error::UnsupportedLabel(format!("torus rank {rank} exceeds cap")));
        }
        Self::build_labelled(
            CartanLabel { simple: Vec::new(), torus_rank: rank },
            LatticeForm::SimplyConnected,
        )
    }

    fn build_labelled(label: CartanLabel, form: LatticeForm) -> Result<RootDatum> {
        let n: usize = label.simple.iter().map(|&(_, r)| r).sum();
        let rank = n + label.torus_rank;
        // assemble block Cartan matrix and symmetrizers
        let mut cartan = vec![vec![0i64; n]; n];
        let mut d = Vec::with_capacity(n);
        let mut offset = 0usize;
        let mut weyl_order: u64 = 1;
        for &(fam, r) in &label.simple {
            let (a, df) = family_cartan(fam, r)?;
            for i in 0..r {
                for j in 0..r {
                    cartan[offset + i][offset + j] = a[i][j];
                }
            }
            d.extend(df);
            weyl_order = weyl_order.saturating_mul(family_weyl_order(fam, r));
            offset += r;
        }
        if weyl_order > WEYL_ORDER_CAP {
            return Err(Error::WeylOrderCap { order: weyl_order, cap: WEYL_ORDER_CAP });
        }
        // lattice coordinates of simple roots and coroots
        let mut simple_roots = Vec::with_capacity(n);
        let mut simple_coroots = Vec::with_capacity(n);
        for i in 0..n {
            let mut root = vec![0i64; rank];
            let mut coroot = vec![0i64; rank];
            match form {
                LatticeForm::SimplyConnected => {
                    // basis of X*: fundamental weights; α_i = Σ_j a[i][j] ω_j
                    root[..n].copy_from_slice(&cartan[i]);
                    coroot[i] = 1;
                }
                LatticeForm::Adjoint => {
                    // basis of X*: simple roots; α_i∨ = Σ_j a[j][i] ω_j∨
                    root[i] = 1;
                    for j in 0..n {
                        coroot[j] = cartan[j][i];
                    }
                }
            }
            simple_roots.push(root);
            simple_coroots.push(coroot);
        }
        let form_desc = match form {
            LatticeForm::SimplyConnected => "simply_connected",
            LatticeForm::Adjoint => "adjoint",
        };
        Self::assemble(rank, label, form_desc.into(), simple_roots, simple_coroots, cartan, d, weyl_order)
    }

    /// Build a datum from explicit lattice data. The pairing of the given
    /// root and coroot coordinate vectors must be a finite-type Cartan
    /// matrix; the isomorphism type is detected and recorded.
    pub fn explicit(
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<RootDatum> {
        let n = simple_roots.len();
        if simple_coroots.len() != n {
            return Err(Error::InvalidDatum(format!(
                "{} simple roots but {} simple coroots",
                n,
                simple_coroots.len()
            )));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: v.len() });
            }
        }
        // Cartan matrix from the pairing
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                cartan[i][j] = crate::mat::dot(&simple_roots[i], &simple_coroots[j]);
            }
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidDatum(format!(
                    "⟨α_{}, α_{}∨⟩ = {} ≠ 2",
                    i + 1,
                    i + 1,
                    cartan[i][i]
                )));
            }
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::InvalidDatum(format!(
                            "positive off-diagonal Cartan entry at ({},{})",
                            i + 1,
                            j + 1
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidDatum(
                            "asymmetric zero pattern in Cartan matrix".into(),
                        ));
                    }
                }
            }
        }
        // linear independence of the roots and of the coroots
        let as_big = |vs: &[Vec<i64>]| {
            vs.iter()
                .map(|v| v.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
                .collect::<Vec<Vec<num_bigint::BigInt>>>()
        };
        if linalg::bigint_rank(&as_big(&simple_roots)) != n {
            return Err(Error::InvalidDatum("simple roots are linearly dependent".into()));
        }
        if linalg::bigint_rank(&as_big(&simple_coroots)) != n {
            return Err(Error::InvalidDatum("simple coroots are linearly dependent".into()));
        }
        let (label, d) = identify_type(&cartan)?;
        let mut weyl_order: u64 = 1;
        for &(fam, r) in &label.simple {
            weyl_order = weyl_order.saturating_mul(family_weyl_order(fam, r));
        }
        if weyl_order > WEYL_ORDER_CAP {
            return Err(Error::WeylOrderCap { order: weyl_order, cap: WEYL_ORDER_CAP });
        }
        let label = CartanLabel { torus_rank: rank - n, ..label };
        Self::assemble(rank, label, "explicit".into(), simple_roots, simple_coroots, cartan, d, weyl_order)
    }

    /// Parse explicit lattice data from a JSON document with fields `rank`,
    /// `simple_roots`, `simple_coroots` (integer matrices).
    pub fn from_json(doc: &str) -> Result<RootDatum> {
        let v: serde_json::Value =
            serde_json::from_str(doc).map_err(|e| Error::Parse(e.to_string()))?;
        let rank = v
            .get("rank")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("missing integer field 'rank'".into()))?
            as usize;
        let get_mat = |key: &str| -> Result<Vec<Vec<i64>>> {
            let arr = v
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("missing matrix field '{key}'")))?;
            arr.iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse(format!("'{key}' must be a matrix")))?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| Error::Parse(format!("non-integer in '{key}'")))
                        })
                        .collect()
                })
                .collect()
        };
        Self::explicit(rank, get_mat("simple_roots")?, get_mat("simple_coroots")?)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        rank: usize,
        label: CartanLabel,
        form_desc: String,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        cartan: Vec<Vec<i64>>,
        d: Vec<i64>,
        weyl_order: u64,
    ) -> Result<RootDatum> {
        let n = simple_roots.len();
        let mut cl = closure(&cartan, 64 * (n.max(1)))?;
        for (r, c) in cl.roots.iter_mut().zip(cl.coroots.iter_mut()) {
            r.vec = combine(&simple_roots, &r.expr, rank);
            c.vec = combine(&simple_coroots, &c.expr, rank);
        }
        let mut two_rho = vec![0i64; rank];
        for r in &cl.roots {
            for k in 0..rank {
                two_rho[k] += r.vec[k];
            }
        }
        let mut two_rho_check = vec![0i64; rank];
        for c in &cl.coroots {
            for k in 0..rank {
                two_rho_check[k] += c.vec[k];
            }
        }
        let symmetric_form = build_symmetric_form(rank, &simple_roots, &simple_coroots, &cartan, &d)?;
        let root_left_inv = linalg::left_inverse(&simple_roots, rank)
            .ok_or_else(|| Error::InvalidDatum("simple roots are linearly dependent".into()))?;
        let coroot_left_inv = linalg::left_inverse(&simple_coroots, rank)
            .ok_or_else(|| Error::InvalidDatum("simple coroots are linearly dependent".into()))?;
        Ok(RootDatum {
            rank,
            label,
            form_desc,
            simple_roots,
            simple_coroots,
            cartan,
            d,
            positive_roots: cl.roots,
            positive_coroots: cl.coroots,
            two_rho: WeightVec::new(two_rho),
            two_rho_check: CoweightVec::new(two_rho_check),
            weyl_order,
            symmetric_form,
            root_left_inv,
            coroot_left_inv,
        })
    }

    /// The Langlands dual datum: roots and coroots swap (the Cartan matrix
    /// transposes). Applying this twice returns identical coordinates.
    pub fn dual(&self) -> RootDatum {
        let n = self.num_simple();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                cartan[i][j] = self.cartan[j][i];
            }
        }
        let label = CartanLabel {
            simple: self.label.simple.iter().map(|&(f, r)| (f.dual(), r)).collect(),
            torus_rank: self.label.torus_rank,
        };
        // Dual symmetrizers: d∨_i = K/d_i with K the largest d in the
        // connected component of vertex i, so short coroots get d∨ = 1.
        let comp = components(&self.cartan);
        let mut comp_max = vec![1i64; n];
        for i in 0..n {
            for j in 0..n {
                if comp[j] == comp[i] {
                    comp_max[i] = comp_max[i].max(self.d[j]);
                }
            }
        }
        let d: Vec<i64> = (0..n).map(|i| comp_max[i] / self.d[i]).collect();
        // duality swaps the simply connected and adjoint lattices
        let form_desc = match self.form_desc.as_str() {
            "simply_connected" => "adjoint".to_string(),
            "adjoint" => "simply_connected".to_string(),
            other => other.to_string(),
        };
        RootDatum::assemble(
            self.rank,
            label,
            form_desc,
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
            cartan,
            d,
            self.weyl_order,
        )
        .expect("dual of a valid datum is valid")
    }

    // -- accessors ----------------------------------------------------------

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &CartanLabel {
        &self.label
    }

    /// Number of simple roots (semisimple rank).
    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// Cartan matrix entry `⟨α_i, α_j∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrizers `d_j = (α_j, α_j)/2` (short roots have `d = 1`).
    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn positive_roots(&self) -> &[PosRoot] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[PosRoot] {
        &self.positive_coroots
    }

    /// `2ρ`: the sum of the positive roots.
    pub fn two_rho(&self) -> &WeightVec {
        &self.two_rho
    }

    /// `2ρ∨`: the sum of the positive coroots.
    pub fn two_rho_check(&self) -> &CoweightVec {
        &self.two_rho_check
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// W-invariant symmetric bilinear form on `X* ⊗ ℚ`, normalized so short
    /// roots have squared length 2 in each simple factor; the W-fixed part
    /// of the lattice is orthogonal to the root span.
    pub fn symmetric_form(&self) -> &[Vec<Rat>] {
        &self.symmetric_form
    }

    /// Human-readable lattice form ("simply_connected", "adjoint", "explicit").
    pub fn form_desc(&self) -> &str {
        &self.form_desc
    }

    // -- pairings and dominance ----------------------------------------------

    /// The canonical pairing `⟨x, y⟩` of a weight with a coweight. In the
    /// chosen coordinates this is the dot product.
    ///
    /// Panics if either vector has the wrong length (datum mismatch).
    pub fn pairing(&self, x: &WeightVec, y: &CoweightVec) -> i64 {
        assert_eq!(x.coords.len(), self.rank, "weight has wrong rank for this datum");
        assert_eq!(y.coords.len(), self.rank, "coweight has wrong rank for this datum");
        crate::mat::dot(&x.coords, &y.coords)
    }

    /// `⟨x, α_i∨⟩` for the i-th simple coroot.
    #[inline]
    pub fn pair_simple_coroot(&self, coords: &[i64], i: usize) -> i64 {
        crate::mat::dot(coords, &self.simple_coroots[i])
    }

    /// `⟨α_i, y⟩` for the i-th simple root.
    #[inline]
    pub fn pair_simple_root(&self, i: usize, coords: &[i64]) -> i64 {
        crate::mat::dot(&self.simple_roots[i], coords)
    }

    /// `⟨x, ρ∨⟩` as an exact rational (half of the doubled pairing).
    pub fn rho_check_pairing(&self, x: &WeightVec) -> Rat {
        Rat::new(self.pairing(x, &self.two_rho_check), 2)
    }

    /// `⟨ρ, y⟩` as an exact rational.
    pub fn rho_pairing(&self, y: &CoweightVec) -> Rat {
        Rat::new(self.pairing(&self.two_rho, y), 2)
    }

    pub fn is_dominant(&self, x: &WeightVec) -> bool {
        (0..self.num_simple()).all(|i| self.pair_simple_coroot(&x.coords, i) >= 0)
    }

    pub fn is_dominant_co(&self, y: &CoweightVec) -> bool {
        (0..self.num_simple()).all(|i| self.pair_simple_root(i, &y.coords) >= 0)
    }

    // -- dominant representatives (coordinate-level) -------------------------

    /// Dominant representative of a weight orbit, together with the parity of
    /// the number of reflections used and whether the result is regular
    /// (trivial stabilizer). Coordinate-level fast path.
    pub fn dominant_weight_coords(&self, coords: &[i64]) -> (Vec<i64>, bool, bool) {
        let mut v = coords.to_vec();
        let mut odd = false;
        'outer: loop {
            for i in 0..self.num_simple() {
                let p = self.pair_simple_coroot(&v, i);
                if p < 0 {
                    for k in 0..self.rank {
                        v[k] -= p * self.simple_roots[i][k];
                    }
                    odd = !odd;
                    continue 'outer;
                }
            }
            break;
        }
        let regular = (0..self.num_simple()).all(|i| self.pair_simple_coroot(&v, i) > 0);
        (v, odd, regular)
    }

    /// Dominant representative of a coweight orbit (coordinate-level).
    pub fn dominant_coweight_coords(&self, coords: &[i64]) -> (Vec<i64>, bool, bool) {
        let mut v = coords.to_vec();
        let mut odd = false;
        'outer: loop {
            for i in 0..self.num_simple() {
                let p = self.pair_simple_root(i, &v);
                if p < 0 {
                    for k in 0..self.rank {
                        v[k] -= p * self.simple_coroots[i][k];
                    }
                    odd = !odd;
                    continue 'outer;
                }
            }
            break;
        }
        let regular = (0..self.num_simple()).all(|i| self.pair_simple_root(i, &v) > 0);
        (v, odd, regular)
    }

    // -- root-lattice membership ----------------------------------------------

    /// Coefficients of `v` in the simple roots, if `v` lies in their span.
    pub fn root_span_coefficients(&self, v: &[i64]) -> Option<Vec<Rat>> {
        linalg::solve_in_span(&self.root_left_inv, &self.simple_roots, v)
    }

    /// Coefficients of `v` in the simple coroots, if `v` lies in their span.
    pub fn coroot_span_coefficients(&self, v: &[i64]) -> Option<Vec<Rat>> {
        linalg::solve_in_span(&self.coroot_left_inv, &self.simple_coroots, v)
    }

    /// Integer coefficients of `v` in the simple roots, if `v` lies in the
    /// root lattice.
    pub fn root_lattice_expr(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.root_span_coefficients(v)?;
        c.iter()
            .map(|r| if r.is_integer() { Some(r.to_integer()) } else { None })
            .collect()
    }

    /// Integer coefficients of `v` in the simple coroots, if `v` lies in the
    /// coroot lattice.
    pub fn coroot_lattice_expr(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = self.coroot_span_coefficients(v)?;
        c.iter()
            .map(|r| if r.is_integer() { Some(r.to_integer()) } else { None })
            .collect()
    }

    /// `(x, β)` for `x ∈ X*` and a root `β` given by its expression in the
    /// simple roots. Integer-valued on lattice weights:
    /// `(x, α_j) = ⟨x, α_j∨⟩ d_j`.
    pub fn form_with_root(&self, coords: &[i64], root_expr: &[i64]) -> i64 {
        root_expr
            .iter()
            .enumerate()
            .map(|(j, &c)| c * self.pair_simple_coroot(coords, j) * self.d[j])
            .sum()
    }
}

/// Symmetric W-invariant Gram matrix on the basis of `X*`, exact rational.
fn build_symmetric_form(
    rank: usize,
    simple_roots: &[Vec<i64>],
    simple_coroots: &[Vec<i64>],
    cartan: &[Vec<i64>],
    d: &[i64],
) -> Result<Vec<Vec<Rat>>> {
    let n = simple_roots.len();
    // S[j][m] = (α_j, α_m) = a[j][m] d_m
    let s: Vec<Vec<Rat>> = (0..n)
        .map(|j| (0..n).map(|m| Rat::from_integer(cartan[j][m] * d[m])).collect())
        .collect();
    // decompose each basis vector b_k = Σ_j c_{kj} α_j + f_k with f_k in the
    // W-fixed part: solve Σ_j c_{kj} ⟨α_j, α_i∨⟩ = ⟨b_k, α_i∨⟩.
    let m_sys: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer(cartan[j][i])).collect())
        .collect();
    let m_inv = if n > 0 {
        linalg::invert_rat(&m_sys)
            .ok_or_else(|| Error::InvalidDatum("singular Cartan matrix".into()))?
    } else {
        Vec::new()
    };
    let mut coeffs: Vec<Vec<Rat>> = Vec::with_capacity(rank);
    let mut fixed: Vec<Vec<Rat>> = Vec::with_capacity(rank);
    for k in 0..rank {
        let p: Vec<Rat> =
            (0..n).map(|i| Rat::from_integer(simple_coroots[i][k])).collect();
        let c: Vec<Rat> = (0..n)
            .map(|i| (0..n).map(|j| m_inv[i][j] * p[j]).sum())
            .collect();
        let mut f: Vec<Rat> = (0..rank)
            .map(|t| if t == k { Rat::from_integer(1) } else { Rat::zero() })
            .collect();
        for (j, cj) in c.iter().enumerate() {
            for t in 0..rank {
                f[t] -= *cj * Rat::from_integer(simple_roots[j][t]);
            }
        }
        coeffs.push(c);
        fixed.push(f);
    }
    let mut gram = vec![vec![Rat::zero(); rank]; rank];
    for k in 0..rank {
        for l in k..rank {
            let mut val = Rat::zero();
            for j in 0..n {
                for m in 0..n {
                    val += coeffs[k][j] * s[j][m] * coeffs[l][m];
                }
            }
            // Euclidean form on the W-fixed complement
            for t in 0..rank {
                val += fixed[k][t] * fixed[l][t];
            }
            gram[k][l] = val;
            gram[l][k] = val;
        }
    }
    Ok(gram)
}

// ---------------------------------------------------------------------------
// Type identification for explicit data

/// Connected components of the Cartan graph; returns a component id per vertex.
fn components(cartan: &[Vec<i64>]) -> Vec<usize> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = ncomp;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if u != v && cartan[v][u] != 0 && comp[u] == usize::MAX {
                    comp[u] = ncomp;
                    stack.push(u);
                }
            }
        }
        ncomp += 1;
    }
    comp
}

/// Identify the isomorphism type of a valid finite-type Cartan matrix,
/// returning the label (torus rank 0) and per-vertex symmetrizers in the
/// input vertex order.
fn identify_type(cartan: &[Vec<i64>]) -> Result<(CartanLabel, Vec<i64>)> {
    let n = cartan.len();
    let comp = components(cartan);
    let ncomp = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut simple = Vec::new();
    let mut d = vec![0i64; n];
    for c in 0..ncomp {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        let r = verts.len();
        let sub: Vec<Vec<i64>> = verts
            .iter()
            .map(|&i| verts.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let mut found = None;
        'families: for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G]
        {
            let Ok((target, dt)) = family_cartan(fam, r) else { continue };
            if let Some(perm) = cartan_permutation(&sub, &target) {
                // perm[v] = position of verts[v] in Bourbaki numbering
                for (v, &orig) in verts.iter().enumerate() {
                    d[orig] = dt[perm[v]];
                }
                found = Some((fam, r));
                break 'families;
            }
        }
        match found {
            Some(t) => simple.push(t),
            None => {
                return Err(Error::InvalidDatum(format!(
                    "component of rank {r} is not a supported finite type"
                )))
            }
        }
    }
    simple.sort_by_key(|&(f, r)| (f.letter(), r));
    Ok((CartanLabel { simple, torus_rank: 0 }, d))
}

/// Find a permutation `p` with `sub[i][j] = target[p[i]][p[j]]`, if any.
fn cartan_permutation(sub: &[Vec<i64>], target: &[Vec<i64>]) -> Option<Vec<usize>> {
    let r = sub.len();
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn rec(
        i: usize,
        r: usize,
        sub: &[Vec<i64>],
        target: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == r {
            return true;
        }
        for cand in 0..r {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                sub[i][j] == target[cand][perm[j]] && sub[j][i] == target[perm[j]][cand]
            });
            if ok {
                perm[i] = cand;
                used[cand] = true;
                if rec(i + 1, r, sub, target, perm, used) {
                    return true;
                }
                used[cand] = false;
                perm[i] = usize::MAX;
            }
        }
        false
    }
    if rec(0, r, sub, target, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}
