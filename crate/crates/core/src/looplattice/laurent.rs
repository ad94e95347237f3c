//! Laurent polynomials and square Laurent matrices over exact rationals,
//! with valuation windows. Matrices carry a shared window `[lo, hi]`
//! bounding the support of every entry; products add windows and fail
//! loudly rather than clip when the configured maximum width is exceeded.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Hard cap on a matrix window width; products beyond this fail loudly.
pub const MAX_WINDOW_WIDTH: i64 = 256;

/// A Laurent polynomial with exact rational coefficients, normalized so the
/// coefficient vector starts and ends with a nonzero entry (empty = zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// `c · t^deg`.
    pub fn monomial(c: BigRational, deg: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { lo: deg, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `t`-adic valuation; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Highest degree with nonzero coefficient.
    pub fn top_degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, deg: i64) -> BigRational {
        if deg < self.lo {
            return BigRational::zero();
        }
        let idx = (deg - self.lo) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.top_degree().unwrap().max(rhs.top_degree().unwrap());
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.lo - lo) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = self.lo + rhs.lo;
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }

    /// Multiply by `t^deg`.
    pub fn shift(&self, deg: i64) -> LaurentPoly {
        if self.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { lo: self.lo + deg, coeffs: self.coeffs.clone() }
        }
    }

    /// Drop all terms of degree `≥ cutoff` (truncated-series arithmetic).
    pub fn truncate_above(&self, cutoff: i64) -> LaurentPoly {
        if self.is_zero() || self.lo >= cutoff {
            return LaurentPoly::zero();
        }
        let keep = ((cutoff - self.lo) as usize).min(self.coeffs.len());
        LaurentPoly::from_coeffs(self.lo, self.coeffs[..keep].to_vec())
    }

    /// Quotient `self / rhs` as a truncated series: exact on all degrees
    /// below `prec_hi`. `rhs` must be nonzero.
    pub fn div_truncated(&self, rhs: &LaurentPoly, prec_hi: i64) -> LaurentPoly {
        assert!(!rhs.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let v = rhs.lo;
        // rhs = c₀ t^v (1 + x) with val(x) ≥ 1: invert the unit part as a
        // geometric series to the needed length
        let out_lo = self.lo - v;
        if out_lo >= prec_hi {
            return LaurentPoly::zero();
        }
        let len = (prec_hi - out_lo) as usize;
        let c0 = rhs.coeffs[0].clone();
        // unit⁻¹ coefficients u with (Σ rhs_k t^k)(Σ u_k t^k) = c₀,
        // computed by back-substitution
        let mut inv = vec![BigRational::zero(); len];
        inv[0] = c0.recip();
        for k in 1..len {
            let mut s = BigRational::zero();
            for j in 1..=k {
                let r = if j < rhs.coeffs.len() {
                    rhs.coeffs[j].clone()
                } else {
                    BigRational::zero()
                };
                if !r.is_zero() {
                    s += r * &inv[k - j];
                }
            }
            inv[k] = -s / &c0;
        }
        let inv_poly = LaurentPoly::from_coeffs(-v, inv);
        self.mul(&inv_poly).truncate_above(prec_hi)
    }

    /// Exact division, requiring zero remainder up to the product degree.
    pub fn div_exact(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let prec = self.top_degree().unwrap() - rhs.valuation()? + 1;
        let q = self.div_truncated(rhs, prec);
        if q.mul(rhs) == *self {
            Some(q)
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// All coefficients lie in `ℤ[[t]]`-side: valuation ≥ 0.
    pub fn is_regular(&self) -> bool {
        self.is_zero() || self.lo >= 0
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = self.lo + i as i64;
            let mag = c.abs();
            let body = if deg == 0 {
                format!("{mag}")
            } else {
                let t = if deg == 1 { "t".to_string() } else { format!("t^{deg}") };
                if mag.is_one() {
                    t
                } else {
                    format!("{mag}*{t}")
                }
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Parse a Laurent polynomial in the textual form `3*t^-1 + 1/2 + 2*t^2`.
pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new(); // (negative, body)
    let mut cur = String::new();
    let mut neg = false;
    let mut prev_was_caret = false;
    for ch in s.chars() {
        if ch.is_whitespace() {
            continue;
        }
        if (ch == '+' || ch == '-') && !prev_was_caret {
            if cur.is_empty() {
                // sign prefix of the upcoming term
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            continue;
        }
        cur.push(ch);
        prev_was_caret = ch == '^';
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((neg, cur));

    let mut acc = LaurentPoly::zero();
    for (is_neg, body) in terms {
        let (coeff_str, deg) = if let Some(idx) = body.find('t') {
            let coeff_part = body[..idx].trim_end_matches('*').trim();
            let exp_part = body[idx + 1..].trim();
            let deg: i64 = if exp_part.is_empty() {
                1
            } else if let Some(e) = exp_part.strip_prefix('^') {
                e.parse().map_err(|_| Error::Parse(format!("bad exponent in {body:?}")))?
            } else {
                return Err(Error::Parse(format!("bad term {body:?}")));
            };
            (coeff_part.to_string(), deg)
        } else {
            (body.clone(), 0)
        };
        let coeff: BigRational = if coeff_str.is_empty() {
            BigRational::one()
        } else {
            parse_rational(&coeff_str)?
        };
        let signed = if is_neg { -coeff } else { coeff };
        acc = acc.add(&LaurentPoly::monomial(signed, deg));
    }
    Ok(acc)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt =
            n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
        let den: BigInt =
            d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt =
            s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
        Ok(BigRational::from_integer(num))
    }
}

/// Square matrix of Laurent polynomials with a shared valuation window.
#[derive(Clone, Debug)]
pub struct LaurentMatrix {
    m: usize,
    entries: Vec<LaurentPoly>,
    window: (i64, i64),
    declared_det: Option<LaurentPoly>,
}

/// Equality is mathematical: same size and entries. Windows and declared
/// determinants are bookkeeping, not values.
impl PartialEq for LaurentMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.entries == other.entries
    }
}
impl Eq for LaurentMatrix {}

impl LaurentMatrix {
    /// Build a matrix; the window defaults to the support hull.
    pub fn new(m: usize, entries: Vec<LaurentPoly>, window: Option<(i64, i64)>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::LengthMismatch(format!(
                "{}×{} matrix needs {} entries, got {}",
                m,
                m,
                m * m,
                entries.len()
            )));
        }
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for e in &entries {
            if let (Some(v), Some(t)) = (e.valuation(), e.top_degree()) {
                lo = lo.min(v);
                hi = hi.max(t);
            }
        }
        if lo > hi {
            lo = 0;
            hi = 0;
        }
        let window = match window {
            Some((wl, wh)) => {
                if wl > lo || wh < hi {
                    return Err(Error::WindowInsufficient(format!(
                        "entries have support [{lo}, {hi}] outside window [{wl}, {wh}]"
                    )));
                }
                (wl, wh)
            }
            None => (lo, hi),
        };
        if window.1 - window.0 > MAX_WINDOW_WIDTH {
            return Err(Error::WindowInsufficient(format!(
                "window [{}, {}] exceeds max width {MAX_WINDOW_WIDTH}",
                window.0, window.1
            )));
        }
        Ok(LaurentMatrix { m, entries, window, declared_det: None })
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); m * m];
        for i in 0..m {
            entries[i * m + i] = LaurentPoly::one();
        }
        LaurentMatrix { m, entries, window: (0, 0), declared_det: Some(LaurentPoly::one()) }
    }

    /// `diag(t^{a_1}, …, t^{a_m})`.
    pub fn diag_t_powers(exponents: &[i64]) -> Self {
        let m = exponents.len();
        let mut entries = vec![LaurentPoly::zero(); m * m];
        for (i, &a) in exponents.iter().enumerate() {
            entries[i * m + i] = LaurentPoly::monomial(BigRational::one(), a);
        }
        let lo = exponents.iter().copied().min().unwrap_or(0);
        let hi = exponents.iter().copied().max().unwrap_or(0);
        let det = LaurentPoly::monomial(BigRational::one(), exponents.iter().sum());
        LaurentMatrix { m, entries, window: (lo.min(0), hi.max(0)), declared_det: Some(det) }
    }

    /// Integer constant matrix.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::LengthMismatch("non-square integer matrix".into()));
            }
            for &x in row {
                entries.push(LaurentPoly::monomial(
                    BigRational::from_integer(BigInt::from(x)),
                    0,
                ));
            }
        }
        LaurentMatrix::new(m, entries, None)
    }

    /// Declare the determinant (a monomial) after verifying it exactly.
    pub fn with_declared_det(mut self, det: LaurentPoly) -> Result<Self> {
        if !det.is_monomial() {
            return Err(Error::InvalidDatum("declared determinant must be a monomial".into()));
        }
        let actual = self.det();
        if actual != det {
            return Err(Error::InvalidDatum(format!(
                "declared determinant {det} but computed {actual}"
            )));
        }
        self.declared_det = Some(det);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn declared_det(&self) -> Option<&LaurentPoly> {
        self.declared_det.as_ref()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.m + j]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    /// Exact matrix product; the result window is the sum of the windows and
    /// the operation fails loudly if it would exceed the configured width.
    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.m != rhs.m {
            return Err(Error::LengthMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.m, self.m, rhs.m, rhs.m
            )));
        }
        let window = (self.window.0 + rhs.window.0, self.window.1 + rhs.window.1);
        if window.1 - window.0 > MAX_WINDOW_WIDTH {
            return Err(Error::WindowInsufficient(format!(
                "product window [{}, {}] exceeds max width {MAX_WINDOW_WIDTH}",
                window.0, window.1
            )));
        }
        let m = self.m;
        let mut entries = vec![LaurentPoly::zero(); m * m];
        for i in 0..m {
            for k in 0..m {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = rhs.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * m + j] = entries[i * m + j].add(&a.mul(b));
                }
            }
        }
        let det = match (&self.declared_det, &rhs.declared_det) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        };
        Ok(LaurentMatrix { m, entries, window, declared_det: det })
    }

    /// Exact determinant by cofactor expansion (the matrix sizes here are
    /// at most 4).
    pub fn det(&self) -> LaurentPoly {
        fn det_rec(rows: &[Vec<LaurentPoly>]) -> LaurentPoly {
            let k = rows.len();
            if k == 0 {
                return LaurentPoly::one();
            }
            if k == 1 {
                return rows[0][0].clone();
            }
            let mut acc = LaurentPoly::zero();
            for j in 0..k {
                let a = &rows[0][j];
                if a.is_zero() {
                    continue;
                }
                let sub: Vec<Vec<LaurentPoly>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = a.mul(&det_rec(&sub));
                if j % 2 == 0 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            acc
        }
        let rows: Vec<Vec<LaurentPoly>> = (0..self.m)
            .map(|i| (0..self.m).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        det_rec(&rows)
    }

    /// Adjugate (transposed cofactor matrix), exact.
    pub fn adjugate(&self) -> Result<LaurentMatrix> {
        let m = self.m;
        if m == 1 {
            return LaurentMatrix::new(1, vec![LaurentPoly::one()], None);
        }
        let mut entries = vec![LaurentPoly::zero(); m * m];
        for i in 0..m {
            for j in 0..m {
                let mut sub = Vec::with_capacity((m - 1) * (m - 1));
                for r in 0..m {
                    if r == i {
                        continue;
                    }
                    for c in 0..m {
                        if c == j {
                            continue;
                        }
                        sub.push(self.entry(r, c).clone());
                    }
                }
                let minor = LaurentMatrix { m: m - 1, entries: sub, window: self.window, declared_det: None }.det();
                let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                entries[j * m + i] = cof; // transpose
            }
        }
        LaurentMatrix::new(m, entries, None)
    }

    /// Exact inverse for matrices whose determinant is a (nonzero) monomial
    /// — in particular anything with declared determinant `t^k`.
    pub fn inverse(&self) -> Result<LaurentMatrix> {
        let det = self.declared_det.clone().unwrap_or_else(|| self.det());
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if !det.is_monomial() {
            return Err(Error::WindowInsufficient(format!(
                "inverse of a matrix with non-monomial determinant {det} requires truncated division"
            )));
        }
        let adj = self.adjugate()?;
        let c = det.coeff(det.valuation().unwrap()).recip();
        let shift = -det.valuation().unwrap();
        let entries: Vec<LaurentPoly> = adj
            .entries
            .iter()
            .map(|e| {
                e.shift(shift)
                    .mul(&LaurentPoly::monomial(c.clone(), 0))
            })
            .collect();
        let mut out = LaurentMatrix::new(self.m, entries, None)?;
        if self.declared_det.is_some() {
            let inv_det = LaurentPoly::monomial(
                det.coeff(det.valuation().unwrap()).recip(),
                -det.valuation().unwrap(),
            );
            out.declared_det = Some(inv_det);
        }
        Ok(out)
    }

    /// Every entry has valuation ≥ 0 and the determinant is a unit of the
    /// power series ring: membership test for the base-point coset.
    pub fn is_integral_unimodular(&self) -> bool {
        self.entries.iter().all(|e| e.is_regular())
            && self.det().valuation() == Some(0)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.m {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Parse a row-major bracketed matrix of Laurent polynomials:
/// `[[t, 1], [0, t^-1]]`.
pub fn parse_matrix(s: &str) -> Result<LaurentMatrix> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("matrix must be wrapped in [...]".into()))?;
    // split top-level rows on brackets
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 1 {
                    cur.clear();
                    continue;
                }
            }
            ']' => {
                depth -= 1;
                if depth == 0 {
                    let row: Vec<LaurentPoly> =
                        cur.split(',').map(parse_poly).collect::<Result<_>>()?;
                    rows.push(row);
                    continue;
                }
            }
            _ => {}
        }
        if depth >= 1 {
            cur.push(ch);
        } else if !ch.is_whitespace() && ch != ',' {
            return Err(Error::Parse(format!("unexpected character {ch:?} between rows")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    let m = rows.len();
    if m == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    let mut entries = Vec::with_capacity(m * m);
    for row in &rows {
        if row.len() != m {
            return Err(Error::LengthMismatch(format!(
                "matrix has {m} rows but a row of length {}",
                row.len()
            )));
        }
        entries.extend(row.iter().cloned());
    }
    LaurentMatrix::new(m, entries, None)
}
