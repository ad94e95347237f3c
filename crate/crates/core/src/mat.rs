//! Small square integer matrices used for lattice actions.

/// Dense row-major `n × n` integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SquareMat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl SquareMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        SquareMat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &SquareMat) -> SquareMat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let s = self.a[i * n + k];
                if s == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += s * rhs.a[k * n + j];
                }
            }
        }
        SquareMat { n, a: out }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        debug_assert_eq!(self.n, v.len());
        let n = self.n;
        let mut out = vec![0i64; n];
        for i in 0..n {
            let mut s = 0;
            for j in 0..n {
                s += self.a[i * n + j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn transpose(&self) -> SquareMat {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.a[i * n + j];
            }
        }
        SquareMat { n, a: out }
    }
}

#[inline]
pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
