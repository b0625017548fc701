//! The symplectic form `ω = q(dx dpx + dy dpy)`, its evaluation through the
//! `Sp_q(2)` antisymmetrizer, Hamiltonian vector fields and Poisson brackets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{
    characteristic_residual, level2_operator, passing_conventions, xi_vector, RMatrix, SpConvention, SqMatrix,
    XI_COORD, XI_SIGN,
};
use crate::calculus::{Calculus, VectorField};
use crate::field::Scalar;
use crate::ncpoly::linalg::invert_matrix;
use crate::ncpoly::{Element, Monomial, Presentation};
use crate::report::{random_element, SuiteReport};
use crate::spaces::SpaceCatalog;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("Sp calibration: {passing} conventions satisfy both covariance identities (expected exactly 1)")]
    Calibration { passing: usize },
    #[error("the symplectic form is degenerate")]
    Degenerate,
    #[error("no contraction order reproduces the Hamiltonian fields of the coordinates")]
    Contraction,
}

/// Order of the indices of `A_Sp` in `w_ij A_{ij,kl} ⟨ξ_k, X⟩⟨ξ_l, Y⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contraction {
    /// `A_{ij,kl}` as printed.
    Literal,
    /// `A_{kl,ij}`.
    Transposed,
}

/// A constant-coefficient 2-form `Σ w_ij ξ_i ξ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    pub w: [[Scalar; 4]; 4],
}

impl SymplecticForm {
    /// `ω = q(dx dpx + dy dpy) = q ξ3 ξ1 - q ξ4 ξ2`.
    pub fn standard() -> Self {
        let mut w: [[Scalar; 4]; 4] = Default::default();
        w[2][0] = Scalar::q();
        w[3][1] = -Scalar::q();
        SymplecticForm { w }
    }

    /// The 2-form from a list of `(coefficient, i, j)` for `c ξ_i ξ_j`,
    /// without reordering.
    pub fn from_terms(terms: &[(Scalar, usize, usize)]) -> Self {
        let mut w: [[Scalar; 4]; 4] = Default::default();
        for (c, i, j) in terms {
            w[*i][*j] += c;
        }
        SymplecticForm { w }
    }

    /// `Σ w_ij ξ_i ξ_j` in `OmegaQ`.
    pub fn element(&self, omega: &Presentation) -> Element {
        let xi = xi_vector(omega);
        let mut out = Element::zero();
        for i in 0..4 {
            for j in 0..4 {
                if !self.w[i][j].is_zero() {
                    out.add_scaled(&self.w[i][j], &omega.mul(&xi[i], &xi[j]));
                }
            }
        }
        out
    }
}

/// Calibrated `Sp_q(2)` data, the projectors and the form, bound to the
/// phase-space calculus.
#[derive(Debug, Clone)]
pub struct Symplectic {
    pub convention: SpConvention,
    pub r: RMatrix,
    pub hat: SqMatrix,
    pub a_sp: SqMatrix,
    pub s_sp: SqMatrix,
    pub form: SymplecticForm,
    pub contraction: Contraction,
    pub calculus: Calculus,
    /// `c = K⁻¹ ∇f` gives the coefficients of `X_df`.
    k_inv: Vec<Vec<Scalar>>,
}

/// `A_Sp = (R̂² - q²)/(q - q⁻¹)`.
pub fn antisymmetrizer(hat: &SqMatrix) -> SqMatrix {
    let q = Scalar::q();
    let den = (&q - &Scalar::q_pow(-1)).inv().expect("q - 1/q is nonzero");
    (hat * hat).scalar_shift(&-Scalar::q_pow(2)).scale(&den)
}

/// `S_Sp = -(q²/2)(R̂² - R̂ + 1)`.
pub fn symmetrizer(hat: &SqMatrix) -> SqMatrix {
    level2_operator(hat).scale(&(-Scalar::q_pow(2) * Scalar::from_ratio(1, 2)))
}

/// `Σ_ij w_ij A_{ij,kl}` (or the transposed contraction) as a 4×4 matrix.
fn contracted(form: &SymplecticForm, a: &SqMatrix, c: Contraction) -> [[Scalar; 4]; 4] {
    std::array::from_fn(|k| {
        std::array::from_fn(|l| {
            let mut s = Scalar::zero();
            for i in 0..4 {
                for j in 0..4 {
                    if form.w[i][j].is_zero() {
                        continue;
                    }
                    let entry = match c {
                        Contraction::Literal => a.get(i * 4 + j, k * 4 + l),
                        Contraction::Transposed => a.get(k * 4 + l, i * 4 + j),
                    };
                    s += &(&form.w[i][j] * entry);
                }
            }
            s
        })
    })
}

/// `K[m][n]`: value of `ω(∂_n, ∂_m)`.
fn field_matrix(m: &[[Scalar; 4]; 4]) -> Vec<Vec<Scalar>> {
    let inv_coord = |z: usize| XI_COORD.iter().position(|&c| c == z).expect("bijection");
    (0..4)
        .map(|row| {
            (0..4)
                .map(|col| {
                    let (k, l) = (inv_coord(col), inv_coord(row));
                    &m[k][l] * &Scalar::from_int(XI_SIGN[k] * XI_SIGN[l])
                })
                .collect()
        })
        .collect()
}

/// The printed Hamiltonian fields of the coordinates, used to fix the
/// contraction order: `X_dx = q²∂px`, `X_dy = q²∂py`, `X_dpx = -q∂x`,
/// `X_dpy = -q∂y`.
pub fn expected_coordinate_fields() -> [VectorField; 4] {
    [
        VectorField::basis(2, Scalar::q_pow(2)),
        VectorField::basis(3, Scalar::q_pow(2)),
        VectorField::basis(0, -Scalar::q()),
        VectorField::basis(1, -Scalar::q()),
    ]
}

impl Symplectic {
    /// Calibrate the `Sp` convention, build the projectors and pick the
    /// contraction order that reproduces the Hamiltonian fields of the
    /// coordinates.
    pub fn build(spaces: &SpaceCatalog) -> Result<Self, SymplecticError> {
        let mut degenerate = true;
        for c in [Contraction::Literal, Contraction::Transposed] {
            match Symplectic::with_contraction(spaces, c) {
                Ok(s) if s.coordinate_fields() == expected_coordinate_fields() => return Ok(s),
                Ok(_) => degenerate = false,
                Err(SymplecticError::Degenerate) => {}
                Err(e) => return Err(e),
            }
        }
        Err(if degenerate { SymplecticError::Degenerate } else { SymplecticError::Contraction })
    }

    /// The calibrated structure with a fixed contraction order.
    pub fn with_contraction(spaces: &SpaceCatalog, contraction: Contraction) -> Result<Self, SymplecticError> {
        let passing = passing_conventions(spaces);
        if passing.len() != 1 {
            return Err(SymplecticError::Calibration { passing: passing.len() });
        }
        let (convention, hat) = passing.into_iter().next().expect("one");
        let a_sp = antisymmetrizer(&hat);
        let form = SymplecticForm::standard();
        let k_inv = invert_matrix(&field_matrix(&contracted(&form, &a_sp, contraction)))
            .ok_or(SymplecticError::Degenerate)?;
        Ok(Symplectic {
            convention,
            r: RMatrix::sp4(convention),
            s_sp: symmetrizer(&hat),
            hat,
            a_sp,
            form,
            contraction,
            calculus: Calculus::new(spaces),
            k_inv,
        })
    }

    fn q(&self) -> &Presentation {
        &self.calculus.q
    }

    /// `X_dz` for the four coordinates.
    pub fn coordinate_fields(&self) -> [VectorField; 4] {
        std::array::from_fn(|i| {
            let z = self.q().gen_by_name(crate::calculus::COORDINATES[i]).expect("coordinate");
            self.hamiltonian_vf(&z)
        })
    }

    /// `⟨ξ_k, X⟩`
    fn xi_pairing(&self, k: usize, x: &VectorField) -> Element {
        x.coeffs[XI_COORD[k]].scale(&Scalar::from_int(XI_SIGN[k]))
    }

    /// `ω(X, Y) = Σ w_ij A_{ij,kl} ⟨ξ_l, Y⟩ ⟨ξ_k, X⟩`, with the `Y` factor
    /// written first so that `ω(X, gY) = g ω(X, Y)`.
    pub fn eval_with(&self, form: &SymplecticForm, x: &VectorField, y: &VectorField) -> Element {
        let m = contracted(form, &self.a_sp, self.contraction);
        let mut out = Element::zero();
        for k in 0..4 {
            let xk = self.xi_pairing(k, x);
            if xk.is_zero() {
                continue;
            }
            for l in 0..4 {
                if m[k][l].is_zero() {
                    continue;
                }
                let yl = self.xi_pairing(l, y);
                if yl.is_zero() {
                    continue;
                }
                out.add_scaled(&m[k][l], &self.q().mul(&yl, &xk));
            }
        }
        out
    }

    pub fn eval_omega(&self, x: &VectorField, y: &VectorField) -> Element {
        self.eval_with(&self.form, x, y)
    }

    /// The unique `X_df` with `ω(X_df, Y) = ⟨df, Y⟩` for every `Y`.
    pub fn hamiltonian_vf(&self, f: &Element) -> VectorField {
        let grad = self.calculus.gradient(f);
        let mut out = VectorField::zero();
        for n in 0..4 {
            let mut c = Element::zero();
            for m in 0..4 {
                c.add_scaled(&self.k_inv[n][m], &grad[m]);
            }
            out.coeffs[n] = c;
        }
        out
    }

    /// `{f, g} = X_dg(f)`.
    pub fn poisson(&self, f: &Element, g: &Element) -> Element {
        self.calculus.apply_vf(&self.hamiltonian_vf(g), f)
    }

    /// The three printed expressions of the bracket:
    /// `ω(X_df, X_dg)`, `⟨df, X_dg⟩` and `X_dg(f)`.
    pub fn poisson_forms(&self, f: &Element, g: &Element) -> [Element; 3] {
        let xf = self.hamiltonian_vf(f);
        let xg = self.hamiltonian_vf(g);
        let df = crate::calculus::OneForm { coeffs: self.calculus.gradient(f) };
        [self.eval_omega(&xf, &xg), self.calculus.pair(&df, &xg), self.calculus.apply_vf(&xg, f)]
    }

    /// `∂_t f = {f, h}`.
    pub fn time_derivative(&self, f: &Element, h: &Element) -> Element {
        self.poisson(f, h)
    }

    /// The symplectic suite.
    pub fn report(&self, seed: u64, full: bool) -> SuiteReport {
        let mut r = SuiteReport::new("symplectic").with_seed(seed);
        let q = Scalar::q;
        let sl2 = RMatrix::sl2();
        r.assert("Yang-Baxter for SL_q(2)", sl2.yang_baxter_residual().is_zero(), || "nonzero residual".into());
        let hecke = characteristic_residual(&sl2.hat(), &[q(), -Scalar::q_pow(-1)]);
        r.assert("(R̂ - q)(R̂ + q⁻¹) = 0 for SL_q(2)", hecke.is_zero(), || "nonzero residual".into());
        r.assert("Yang-Baxter for Sp_q(2)", self.r.yang_baxter_residual().is_zero(), || "nonzero residual".into());
        let cubic = characteristic_residual(&self.hat, &[q(), -Scalar::q_pow(-1), -Scalar::q_pow(-5)]);
        r.assert("(R̂ - q)(R̂ + q⁻¹)(R̂ + q⁻⁵) = 0 for Sp_q(2)", cubic.is_zero(), || "nonzero residual".into());
        let id = SqMatrix::identity(16);
        let a = &self.a_sp;
        let s = &self.s_sp;
        r.assert("A_Sp² = A_Sp", &(a * a) == a, || "not idempotent".into());
        r.assert("S_Sp² = S_Sp", &(s * s) == s, || "not idempotent".into());
        r.assert("A_Sp S_Sp = S_Sp A_Sp = 0", (a * s).is_zero() && (s * a).is_zero(), || "nonzero".into());
        r.assert("A_Sp + S_Sp ≠ 1", (a + s) != id, || "the projectors are complementary".into());
        let third = &(&id - a) - s;
        let p_q = eigen_projector(&self.hat, &q());
        r.assert("A_Sp kills the q-eigenspace of R̂", (a * &p_q).is_zero(), || "nonzero".into());
        r.assert("third sector is the -q eigenspace", (&self.hat * &third) == third.scale(&-q()) && !third.is_zero(), || "unexpected".into());

        let omega = &self.calculus.omega;
        let w_el = self.form.element(omega);
        let expected = {
            let g = |n: &str| omega.gen_by_name(n).expect("differential");
            (&omega.mul(&g("dx"), &g("dpx")) + &omega.mul(&g("dy"), &g("dpy"))).scale(&q())
        };
        r.assert("ω = q(dx dpx + dy dpy)", w_el == expected, || format!("{w_el:?}"));
        r.assert("D ω = 0", self.calculus.differential(&w_el).is_zero(), || "not closed".into());
        let k = field_matrix(&contracted(&self.form, &self.a_sp, self.contraction));
        r.assert("ω is nondegenerate", invert_matrix(&k).is_some(), || "singular".into());
        let fields = self.coordinate_fields();
        let names = ["X_dx = q²∂px", "X_dy = q²∂py", "X_dpx = -q∂x", "X_dpy = -q∂y"];
        let fails: Vec<String> = fields
            .iter()
            .zip(expected_coordinate_fields())
            .zip(names)
            .filter(|((got, want), _)| *got != want)
            .map(|(_, n)| n.to_string())
            .collect();
        r.push("Hamiltonian fields of the coordinates", 4, fails);
        r.push("bracket table of the generators", 16, self.bracket_table_failures());

        let (n, fails) = self.bracket_consistency_failures(seed, 500, full);
        r.push("ω(X_df, X_dg) = ⟨df, X_dg⟩ = X_dg(f)", n, fails);
        let (n, fails) = self.vanishing_failures(seed, 50);
        r.push("{f(x,y), g(x,y)} = 0", n, fails);
        let (n, fails) = self.reordering_failures();
        r.push("evaluation is insensitive to grade-2 reordering of ω", n, fails);
        let (n, fails) = self.twisted_derivation_failures(seed);
        r.push("{f f', g} = X_dg(f f')", n, fails);

        let qp = self.q();
        let x = qp.gen_by_name("x").expect("x");
        let px = qp.gen_by_name("px").expect("px");
        let x2 = qp.mul(&x, &x);
        let t1 = self.time_derivative(&x2, &px);
        let t2 = self.time_derivative(&x, &px);
        let ok = t1 == x.scale(&Scalar::q_pow(2))
            && t1 != qp.mul(&x, &t2).scale(&Scalar::from_int(2))
            && self.time_derivative(&Element::one(), &px).is_zero()
            && self.poisson(&x2, &px) == x.scale(&Scalar::q_pow(2));
        r.assert("time evolution is not a derivation", ok, || format!("∂_t x² = {t1:?}"));
        r
    }

    fn bracket_table_failures(&self) -> Vec<String> {
        let qp = self.q();
        let names = crate::calculus::COORDINATES;
        let mut fails = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 2) | (1, 3) => Element::constant(-Scalar::q()),
                    (2, 0) | (3, 1) => Element::constant(Scalar::q_pow(2)),
                    _ => Element::zero(),
                };
                let f = qp.gen_by_name(a).expect("coordinate");
                let g = qp.gen_by_name(b).expect("coordinate");
                let [w, p, x] = self.poisson_forms(&f, &g);
                if w != expected || p != expected || x != expected {
                    fails.push(format!("{{{a}, {b}}}"));
                }
            }
        }
        fails
    }

    /// Generator pairs, seeded random pairs, and with `full` every basis pair
    /// of total degree at most 4.
    pub fn bracket_consistency_failures(&self, seed: u64, random: usize, full: bool) -> (usize, Vec<String>) {
        let qp = self.q();
        let basis = qp.basis(None).expect("finite");
        let mut pairs: Vec<(Element, Element)> = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                pairs.push((Element::monomial(Monomial::gen(a)), Element::monomial(Monomial::gen(b))));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random {
            pairs.push((random_element(&basis, &mut rng, 3), random_element(&basis, &mut rng, 3)));
        }
        if full {
            for u in &basis {
                for v in &basis {
                    if u.degree() + v.degree() <= 4 {
                        pairs.push((Element::monomial(*u), Element::monomial(*v)));
                    }
                }
            }
        }
        let fails = pairs
            .par_iter()
            .filter(|(f, g)| {
                let [w, p, x] = self.poisson_forms(f, g);
                w != p || p != x
            })
            .map(|(f, g)| format!("f = {f:?}, g = {g:?}"))
            .collect();
        (pairs.len(), fails)
    }

    /// `{f, g} = 0` for random `f`, `g` in the plane `x`, `y`.
    pub fn vanishing_failures(&self, seed: u64, count: usize) -> (usize, Vec<String>) {
        let plane: Vec<Monomial> =
            self.q().basis(None).expect("finite").into_iter().filter(|m| m.exp(2) == 0 && m.exp(3) == 0).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let pairs: Vec<(Element, Element)> =
            (0..count).map(|_| (random_element(&plane, &mut rng, 4), random_element(&plane, &mut rng, 4))).collect();
        let fails = pairs
            .iter()
            .filter(|(f, g)| !self.poisson(f, g).is_zero())
            .map(|(f, g)| format!("f = {f:?}, g = {g:?}"))
            .collect();
        (count, fails)
    }

    /// Rewriting `ω` by the grade-2 relations (adding any relation row, or
    /// writing `dx dpx` as `-q dpx dx`) does not change its values.
    pub fn reordering_failures(&self) -> (usize, Vec<String>) {
        let mut variants = Vec::new();
        let rel = level2_operator(&self.hat);
        for row in 0..16 {
            let mut f = self.form.clone();
            for col in 0..16 {
                f.w[col / 4][col % 4] += rel.get(row, col);
            }
            variants.push((format!("ω + relation {row}"), f));
        }
        // dx dpx = -q dpx dx and dy dpy = -q dpy dy: ξ3ξ1 = -q ξ1ξ3, ξ4ξ2 = -q ξ2ξ4
        let q = Scalar::q();
        variants.push((
            "ω with differentials reordered".into(),
            SymplecticForm::from_terms(&[(&q * &-q.clone(), 0, 2), (-(&q * &-q.clone()), 1, 3)]),
        ));
        let fields: Vec<VectorField> = (0..4).map(|i| VectorField::basis(i, Scalar::one())).collect();
        let omega = &self.calculus.omega;
        let mut fails = Vec::new();
        for (name, f) in &variants {
            if f.element(omega) != self.form.element(omega) {
                fails.push(format!("{name} is a different 2-form"));
                continue;
            }
            for x in &fields {
                for y in &fields {
                    if self.eval_with(f, x, y) != self.eval_omega(x, y) {
                        fails.push(name.clone());
                    }
                }
            }
        }
        (variants.len() * 16, fails)
    }

    /// `{f f', g} = X_dg(f f')` for generator `g` and seeded `f`, `f'`.
    pub fn twisted_derivation_failures(&self, seed: u64) -> (usize, Vec<String>) {
        let qp = self.q();
        let basis = qp.basis(None).expect("finite");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ed);
        let mut fails = Vec::new();
        let mut n = 0;
        for g in 0..4 {
            let ge = Element::monomial(Monomial::gen(g));
            let xg = self.hamiltonian_vf(&ge);
            for _ in 0..10 {
                let f = random_element(&basis, &mut rng, 2);
                let f2 = random_element(&basis, &mut rng, 2);
                let prod = qp.mul(&f, &f2);
                n += 1;
                if self.poisson(&prod, &ge) != self.calculus.apply_vf(&xg, &prod) {
                    fails.push(format!("f = {f:?}, f' = {f2:?}, g = {}", crate::calculus::COORDINATES[g]));
                }
            }
        }
        (n, fails)
    }
}

/// Projector onto the `λ`-eigenspace of `R̂` along the other two sectors.
fn eigen_projector(hat: &SqMatrix, lambda: &Scalar) -> SqMatrix {
    let others: Vec<Scalar> =
        [Scalar::q(), -Scalar::q_pow(2), -Scalar::q()].into_iter().filter(|e| e != lambda).collect();
    let mut num = SqMatrix::identity(16);
    let mut den = Scalar::one();
    for e in &others {
        num = &num * &hat.scalar_shift(&-e.clone());
        den = &den * &(lambda - e);
    }
    num.scale(&den.inv().expect("distinct eigenvalues"))
}
