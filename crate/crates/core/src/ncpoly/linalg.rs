//! Exact sparse linear algebra over `Q(q)`.
//!
//! Vectors are sparse maps from an ordered key (a monomial, a pair of
//! monomials, an index) to scalars. [`Echelon`] keeps a row echelon form of
//! the inserted vectors together with each row's expression in terms of the
//! inserted vectors, which gives spans, kernels and coordinates.

use std::collections::BTreeMap;

use crate::field::Scalar;
use crate::ncpoly::{Element, TensorElement};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Scalar, x: &SparseVec<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_default();
        *e += &(a * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

#[derive(Debug, Clone)]
struct Pivot<K> {
    row: SparseVec<K>,
    combo: SparseVec<usize>,
}

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    pivots: BTreeMap<K, Pivot<K>>,
    kernel: Vec<SparseVec<usize>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new(), kernel: Vec::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Eliminate leading terms. Returns the residual and the combination of
    /// inserted vectors that was subtracted.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut v = v.clone();
        let mut taken: SparseVec<usize> = BTreeMap::new();
        while let Some((lead, c)) = v.first_key_value() {
            let Some(p) = self.pivots.get(lead) else { break };
            let f = c.clone();
            axpy(&mut v, &-f.clone(), &p.row);
            axpy(&mut taken, &f, &p.combo);
        }
        (v, taken)
    }

    /// Insert the next vector; returns a kernel relation among the inserted
    /// vectors when it is dependent on the previous ones.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (residual, taken) = self.reduce(v);
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(idx, Scalar::one());
        axpy(&mut combo, &-Scalar::one(), &taken);
        match residual.first_key_value() {
            None => {
                self.kernel.push(combo.clone());
                Some(combo)
            }
            Some((lead, c)) => {
                let inv = c.inv().expect("nonzero lead");
                let lead = lead.clone();
                let row = residual.iter().map(|(k, v)| (k.clone(), &inv * v)).collect();
                let combo = combo.iter().map(|(k, v)| (*k, &inv * v)).collect();
                self.pivots.insert(lead, Pivot { row, combo });
                None
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `target` with respect to the inserted vectors, if it
    /// lies in their span.
    pub fn coordinates(&self, target: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let (residual, taken) = self.reduce(target);
        if !residual.is_empty() {
            return None;
        }
        let mut out = vec![Scalar::zero(); self.inserted];
        for (i, c) in taken {
            out[i] = c;
        }
        Some(out)
    }

    /// Basis of the relations among the inserted vectors.
    pub fn kernel(&self) -> &[SparseVec<usize>] {
        &self.kernel
    }

    /// Echelon rows spanning the same space.
    pub fn span_basis(&self) -> Vec<SparseVec<K>> {
        self.pivots.values().map(|p| p.row.clone()).collect()
    }
}

/// Kernel of the linear map whose columns are `columns`.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new();
    for c in columns {
        ech.insert(c);
    }
    ech.kernel
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Coordinates of `target` in the span of `vectors`, or `None`.
pub fn solve<K: Ord + Clone>(vectors: &[SparseVec<K>], target: &SparseVec<K>) -> Option<Vec<Scalar>> {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.coordinates(target)
}

/// Anything that can be viewed as a sparse coordinate vector.
pub trait Coordinates {
    type Key: Ord + Clone;
    fn coords(&self) -> SparseVec<Self::Key>;
}

impl Coordinates for Element {
    type Key = crate::ncpoly::Monomial;
    fn coords(&self) -> SparseVec<Self::Key> {
        self.as_map().clone()
    }
}

impl Coordinates for TensorElement {
    type Key = (crate::ncpoly::Monomial, crate::ncpoly::Monomial);
    fn coords(&self) -> SparseVec<Self::Key> {
        self.as_map().clone()
    }
}

/// Exact coordinates of `target` in the span of `vectors`, or `None` when it
/// is not in the span.
pub fn solve_linear<T: Coordinates>(vectors: &[T], target: &T) -> Option<Vec<Scalar>> {
    let cols: Vec<_> = vectors.iter().map(|v| v.coords()).collect();
    solve(&cols, &target.coords())
}

/// Inverse of a dense square scalar matrix, `None` when singular.
pub fn invert_matrix(a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv().ok()?;
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *v -= &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Monomial;

    fn v(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect()
    }

    #[test]
    fn zero_target_has_zero_coordinates() {
        let cols = vec![v(&[(0, 1)]), v(&[(1, 2)])];
        let x = solve(&cols, &BTreeMap::new()).unwrap();
        assert!(x.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn single_vector_coordinate() {
        let xp = Monomial::from_exps(&[1, 0, 1]);
        let base = Element::monomial(xp);
        let target = Element::term(Scalar::q_pow(2), xp);
        assert_eq!(solve_linear(&[base], &target), Some(vec![Scalar::q_pow(2)]));
        let other = Element::monomial(Monomial::gen(1));
        assert_eq!(solve_linear(&[other], &target), None);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)]), v(&[(1, 1)])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        // 2*c0 - c1 = 0
        let rel = &k[0];
        let mut acc: SparseVec<usize> = BTreeMap::new();
        for (i, c) in rel {
            axpy(&mut acc, c, &cols[*i]);
        }
        assert!(acc.is_empty());
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn inverse_matrix() {
        let q = Scalar::q();
        let a = vec![vec![Scalar::zero(), q.clone()], vec![Scalar::one(), Scalar::one()]];
        let inv = invert_matrix(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s: Scalar = (0..2).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { Scalar::one() } else { Scalar::zero() });
            }
        }
        assert!(invert_matrix(&[vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::one()]]).is_none());
    }
}
