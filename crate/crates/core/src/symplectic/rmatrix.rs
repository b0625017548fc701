//! R-matrices of `SL_q(2)` and `Sp_q(2)` at the cube root of unity, and the
//! dense scalar matrices they act through.

use std::ops::{Add, Mul, Sub};

use crate::field::Scalar;

/// Dense square matrix over `Q(q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl SqMatrix {
    pub fn zero(n: usize) -> Self {
        SqMatrix { n, data: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SqMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.n + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.n + c] += v;
    }

    pub fn scale(&self, s: &Scalar) -> SqMatrix {
        SqMatrix { n: self.n, data: self.data.iter().map(|v| s * v).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn scalar_shift(&self, s: &Scalar) -> SqMatrix {
        self + &SqMatrix::identity(self.n).scale(s)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push((r, c, v.clone()));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<crate::ncpoly::linalg::SparseVec<usize>> = (0..self.n)
            .map(|r| (0..self.n).filter(|&c| !self.get(r, c).is_zero()).map(|c| (c, self.get(r, c).clone())).collect())
            .collect();
        crate::ncpoly::linalg::rank(&rows)
    }
}

impl Mul for &SqMatrix {
    type Output = SqMatrix;
    fn mul(self, rhs: &SqMatrix) -> SqMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = SqMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &SqMatrix {
    type Output = SqMatrix;
    fn add(self, rhs: &SqMatrix) -> SqMatrix {
        SqMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &SqMatrix {
    type Output = SqMatrix;
    fn sub(self, rhs: &SqMatrix) -> SqMatrix {
        SqMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// Entries `R_{ik}^{jl}` of an R-matrix on `V ⊗ V`, `dim V = n`, stored as
/// an `n^2 × n^2` matrix with row `(i, k)` and column `(j, l)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    n: usize,
    m: SqMatrix,
}

/// Choices left open by the `C_2` formula. The calibration pass picks one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize)]
pub struct SpConvention {
    /// Overall factor `q^scale_pow`.
    pub scale_pow: i64,
    /// Replace `q` by `q^{-1}` in the formula.
    pub invert_q: bool,
    /// Relabel the basis `i -> n + 1 - i`.
    pub reverse_indices: bool,
}

impl SpConvention {
    pub fn all() -> Vec<SpConvention> {
        let mut v = Vec::new();
        for scale_pow in 0..3 {
            for invert_q in [false, true] {
                for reverse_indices in [false, true] {
                    v.push(SpConvention { scale_pow, invert_q, reverse_indices });
                }
            }
        }
        v
    }
}

impl RMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    /// `R_{ik}^{jl}`
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> &Scalar {
        self.m.get(self.idx(i, k), self.idx(j, l))
    }

    pub fn matrix(&self) -> &SqMatrix {
        &self.m
    }

    /// `R̂_{ij}^{kl} = R_{ji}^{kl}`.
    pub fn hat(&self) -> SqMatrix {
        let n = self.n;
        let mut h = SqMatrix::zero(n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        h.set(self.idx(i, j), self.idx(k, l), self.entry(j, i, k, l).clone());
                    }
                }
            }
        }
        h
    }

    /// Standard `SL_q(2)` matrix: `q` on `E_ii ⊗ E_ii`, `1` on `E_ii ⊗ E_jj`
    /// for `i ≠ j`, and `q - q^{-1}` on `E_21 ⊗ E_12`.
    pub fn sl2() -> RMatrix {
        let n = 2;
        let q = Scalar::q();
        let lambda = &q - &Scalar::q_pow(-1);
        let mut r = RMatrix { n, m: SqMatrix::zero(4) };
        for i in 0..n {
            for k in 0..n {
                let v = if i == k { q.clone() } else { Scalar::one() };
                let (row, col) = (r.idx(i, k), r.idx(i, k));
                r.m.set(row, col, v);
            }
        }
        let (row, col) = (r.idx(1, 0), r.idx(0, 1));
        r.m.set(row, col, lambda);
        r
    }

    /// `C_2` (symplectic, `N = 4`) matrix with conjugate indices `i' = 5 - i`,
    /// signs `ε = (1, 1, -1, -1)` and `ρ = (2, 1, -1, -2)`.
    pub fn sp4(conv: SpConvention) -> RMatrix {
        let n = 4;
        let qp = |e: i64| if conv.invert_q { Scalar::q_pow(-e) } else { Scalar::q_pow(e) };
        let lambda = &qp(1) - &qp(-1);
        let rho = [2i64, 1, -1, -2];
        let eps = [1i64, 1, -1, -1];
        let conj = |i: usize| n - 1 - i;
        let mut m = SqMatrix::zero(16);
        let at = |i: usize, k: usize| i * n + k;
        let mut put = |i: usize, j: usize, k: usize, l: usize, v: Scalar| {
            // E_ij ⊗ E_kl sits at row (i, k), column (j, l)
            m.add_at(at(i, k), at(j, l), &v);
        };
        for i in 0..n {
            put(i, i, i, i, qp(1));
            for j in 0..n {
                if j != i && j != conj(i) {
                    put(i, i, j, j, Scalar::one());
                }
            }
            put(conj(i), conj(i), i, i, qp(-1));
        }
        for i in 0..n {
            for j in 0..i {
                put(i, j, j, i, lambda.clone());
                let s = Scalar::from_int(eps[i] * eps[j]) * qp(rho[i] - rho[j]);
                put(i, j, conj(i), conj(j), -(&lambda * &s));
            }
        }
        let mut r = RMatrix { n, m };
        if conv.reverse_indices {
            r = r.relabel(|i| n - 1 - i);
        }
        r.m = r.m.scale(&Scalar::q_pow(conv.scale_pow));
        r
    }

    fn relabel(&self, p: impl Fn(usize) -> usize) -> RMatrix {
        let n = self.n;
        let mut m = SqMatrix::zero(n * n);
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        m.set(self.idx(p(i), p(k)), self.idx(p(j), p(l)), self.entry(i, k, j, l).clone());
                    }
                }
            }
        }
        RMatrix { n, m }
    }

    /// `R12 R13 R23 - R23 R13 R12` on `V ⊗ V ⊗ V`.
    pub fn yang_baxter_residual(&self) -> SqMatrix {
        let n = self.n;
        let dim = n * n * n;
        let t = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut r12 = SqMatrix::zero(dim);
        let mut r13 = SqMatrix::zero(dim);
        let mut r23 = SqMatrix::zero(dim);
        for (row, col, v) in self.m.nonzero() {
            let (i, k) = (row / n, row % n);
            let (j, l) = (col / n, col % n);
            for x in 0..n {
                r12.set(t(i, k, x), t(j, l, x), v.clone());
                r13.set(t(i, x, k), t(j, x, l), v.clone());
                r23.set(t(x, i, k), t(x, j, l), v.clone());
            }
        }
        let lhs = &(&r12 * &r13) * &r23;
        let rhs = &(&r23 * &r13) * &r12;
        &lhs - &rhs
    }
}

/// `Π (R̂ - λ)` over the given eigenvalues.
pub fn characteristic_residual(hat: &SqMatrix, eigenvalues: &[Scalar]) -> SqMatrix {
    let mut acc = SqMatrix::identity(hat.size());
    for lam in eigenvalues {
        acc = &acc * &hat.scalar_shift(&-lam.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_entries() {
        let r = RMatrix::sl2();
        assert_eq!(r.entry(0, 0, 0, 0), &Scalar::q());
        assert_eq!(r.entry(0, 1, 0, 1), &Scalar::one());
        assert_eq!(r.entry(1, 0, 0, 1), &(Scalar::q() - Scalar::q_pow(-1)));
        assert!(r.entry(0, 1, 1, 0).is_zero());
    }

    #[test]
    fn sl2_yang_baxter_and_hecke() {
        let r = RMatrix::sl2();
        assert!(r.yang_baxter_residual().is_zero());
        let hecke = characteristic_residual(&r.hat(), &[Scalar::q(), -Scalar::q_pow(-1)]);
        assert!(hecke.is_zero());
    }

    #[test]
    fn sp4_yang_baxter_for_every_convention() {
        for conv in SpConvention::all() {
            let r = RMatrix::sp4(conv);
            assert!(r.yang_baxter_residual().is_zero(), "{conv:?}");
        }
    }
}
