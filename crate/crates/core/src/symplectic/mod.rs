//! R-matrices, the `Sp_q(2)` projectors and covariance identities, the
//! symplectic form, Hamiltonian vector fields and Poisson brackets.

mod form;
mod rmatrix;

pub use form::{Contraction, Symplectic, SymplecticError, SymplecticForm};
pub use rmatrix::{characteristic_residual, RMatrix, SpConvention, SqMatrix};

use crate::field::Scalar;
use crate::ncpoly::linalg::rank;
use crate::ncpoly::{Element, Presentation};
use crate::report::SuiteReport;
use crate::spaces::SpaceCatalog;

/// Index of the coordinate (`x y px py`) that `ξ_k` differentiates, and its
/// sign: `ξ = (dpx, dpy, dx, -dy)`.
pub const XI_COORD: [usize; 4] = [2, 3, 0, 1];
pub const XI_SIGN: [i64; 4] = [1, 1, 1, -1];

/// `x_i = (x, y, px, -py)` in `Q`.
pub fn x_vector(q: &Presentation) -> [Element; 4] {
    let g = |n: &str| q.gen_by_name(n).expect("phase-space coordinate");
    [g("x"), g("y"), g("px"), g("py").scale(&-Scalar::one())]
}

/// `ξ_i = (dpx, dpy, dx, -dy)` in `OmegaQ`.
pub fn xi_vector(omega: &Presentation) -> [Element; 4] {
    let g = |n: &str| omega.gen_by_name(n).expect("differential");
    [g("dpx"), g("dpy"), g("dx"), g("dy").scale(&-Scalar::one())]
}

/// Components `Σ_{kl} M_{ij,kl} v_k v_l` of a 16×16 matrix applied to
/// `v ⊗ v`, in the algebra `p`.
pub fn apply_to_square(p: &Presentation, mat: &SqMatrix, v: &[Element; 4]) -> Vec<Element> {
    (0..16)
        .map(|row| {
            let mut out = Element::zero();
            for col in 0..16 {
                let c = mat.get(row, col);
                if !c.is_zero() {
                    out.add_scaled(c, &p.mul(&v[col / 4], &v[col % 4]));
                }
            }
            out
        })
        .collect()
}

/// `(R̂ - q)(x ⊗ x)` component by component.
pub fn level0_residuals(spaces: &SpaceCatalog, hat: &SqMatrix) -> Vec<Element> {
    let op = hat.scalar_shift(&-Scalar::q());
    apply_to_square(&spaces.q, &op, &x_vector(&spaces.q))
}

/// `(R̂² - R̂ + 1)(ξ ⊗ ξ)` component by component.
pub fn level2_residuals(spaces: &SpaceCatalog, hat: &SqMatrix) -> Vec<Element> {
    let op = level2_operator(hat);
    apply_to_square(&spaces.omega_q, &op, &xi_vector(&spaces.omega_q))
}

pub fn level2_operator(hat: &SqMatrix) -> SqMatrix {
    &(&(hat * hat) - hat) + &SqMatrix::identity(hat.size())
}

/// Conventions whose `R̂` satisfies both the grade-0 and the grade-2
/// identity; conventions giving the same matrix are reported once. The
/// grade-0 identity alone admits a second, rescaled matrix.
pub fn passing_conventions(spaces: &SpaceCatalog) -> Vec<(SpConvention, SqMatrix)> {
    let mut out: Vec<(SpConvention, SqMatrix)> = Vec::new();
    for conv in SpConvention::all() {
        let hat = RMatrix::sp4(conv).hat();
        if out.iter().any(|(_, h)| *h == hat) {
            continue;
        }
        if level0_residuals(spaces, &hat).iter().all(Element::is_zero)
            && level2_residuals(spaces, &hat).iter().all(Element::is_zero)
        {
            out.push((conv, hat));
        }
    }
    out
}

/// Number of independent relations among the 16 components: the rank of the
/// operator's rows as vectors in the 16-dimensional space of quadratic words.
pub fn relation_rank(mat: &SqMatrix) -> usize {
    let rows: Vec<_> = (0..16)
        .map(|r| (0..16).filter(|&c| !mat.get(r, c).is_zero()).map(|c| (c, mat.get(r, c).clone())).collect())
        .collect();
    rank(&rows)
}

/// Yang-Baxter, characteristic and calibration facts, plus the two
/// covariance identities.
pub fn covariance_report(spaces: &SpaceCatalog) -> SuiteReport {
    let mut r = SuiteReport::new("covariance");
    let passing = passing_conventions(spaces);
    r.assert("exactly one Sp convention satisfies both identities", passing.len() == 1, || {
        format!("{} conventions pass: {:?}", passing.len(), passing.iter().map(|p| p.0).collect::<Vec<_>>())
    });
    let Some((conv, hat)) = passing.first().cloned() else {
        return r;
    };
    let res0 = level0_residuals(spaces, &hat);
    let fails: Vec<String> =
        res0.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| format!("({}, {}): {e:?}", i / 4 + 1, i % 4 + 1)).collect();
    r.push("(R̂ - q)(x ⊗ x) = 0", 16, fails);
    let res2 = level2_residuals(spaces, &hat);
    let fails: Vec<String> =
        res2.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| format!("({}, {}): {e:?}", i / 4 + 1, i % 4 + 1)).collect();
    r.push("(R̂² - R̂ + 1)(ξ ⊗ ξ) = 0", 16, fails);
    let rk0 = relation_rank(&hat.scalar_shift(&-Scalar::q()));
    r.assert("grade-0 identity carries 6 independent relations", rk0 == 6, || format!("rank {rk0}"));
    let rk2 = relation_rank(&level2_operator(&hat));
    r.assert("grade-2 identity carries 10 independent relations", rk2 == 10, || format!("rank {rk2}"));
    let rsp = RMatrix::sp4(conv);
    r.assert("Yang-Baxter for the calibrated Sp matrix", rsp.yang_baxter_residual().is_zero(), || "nonzero residual".into());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_is_unique() {
        let spaces = SpaceCatalog::build().unwrap();
        let passing = passing_conventions(&spaces);
        assert_eq!(passing.len(), 1, "{:?}", passing.iter().map(|p| p.0).collect::<Vec<_>>());
    }

    #[test]
    fn covariance_suite_passes() {
        let spaces = SpaceCatalog::build().unwrap();
        let r = covariance_report(&spaces);
        assert!(r.passed(), "{r}");
    }
}
