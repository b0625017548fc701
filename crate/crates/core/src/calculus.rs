//! Exterior derivative on the differential algebra of the phase space,
//! partial derivatives, vector fields and the pairing of 1-forms with vector
//! fields.
//!
//! In `OmegaQ` the differentials `dx dy dpx dpy` precede the functions, so a
//! canonical 1-form is already `Σ dz_i g_i` with `g_i` in `Q`, and the partial
//! derivative `∂_i f` is the coefficient of `dz_i` in `D f`.

use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::field::Scalar;
use crate::hopf::{Bundle, Comodule};
use crate::ncpoly::{Element, Monomial, Presentation, TensorElement};
use crate::report::SuiteReport;
use crate::spaces::{omega_to_q, q_into_omega, SpaceCatalog, OMEGA_Q_FN_OFFSET};

/// Coordinate names in the order of the derivatives.
pub const COORDINATES: [&str; 4] = ["x", "y", "px", "py"];
pub const DERIVATIVES: [&str; 4] = ["Dx", "Dy", "Dpx", "Dpy"];

/// `Σ dz_i g_i` with coefficients in `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OneForm {
    pub coeffs: [Element; 4],
}

/// `X = Σ f_i ∂_i` with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VectorField {
    pub coeffs: [Element; 4],
}

impl VectorField {
    pub fn zero() -> Self {
        VectorField::default()
    }

    /// `c ∂_i`
    pub fn basis(i: usize, c: Scalar) -> Self {
        let mut v = VectorField::zero();
        v.coeffs[i] = Element::constant(c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Element::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField { coeffs: std::array::from_fn(|i| &self.coeffs[i] + &other.coeffs[i]) }
    }

    pub fn scale(&self, s: &Scalar) -> VectorField {
        VectorField { coeffs: std::array::from_fn(|i| self.coeffs[i].scale(s)) }
    }
}

/// The calculus on the phase space.
#[derive(Debug, Clone)]
pub struct Calculus {
    pub q: Arc<Presentation>,
    pub omega: Arc<Presentation>,
    d_cache: Arc<DashMap<Monomial, Arc<Element>>>,
}

impl Calculus {
    pub fn new(spaces: &SpaceCatalog) -> Self {
        Calculus { q: spaces.q.clone(), omega: spaces.omega_q.clone(), d_cache: Arc::default() }
    }

    /// `Q` element viewed inside `OmegaQ`.
    pub fn lift(&self, f: &Element) -> Element {
        f.map_monomials(q_into_omega)
    }

    /// Grade-0 part of an `OmegaQ` element, as an element of `Q`.
    pub fn lower(&self, e: &Element) -> Element {
        self.omega.component(e, 0).map_monomials(omega_to_q)
    }

    /// `D` on a canonical monomial: graded Leibniz along its word, with
    /// `D(z) = dz` and `D(dz) = 0`.
    pub fn differential_mono(&self, m: &Monomial) -> Element {
        if let Some(hit) = self.d_cache.get(m) {
            return hit.as_ref().clone();
        }
        let out = self.differential_word(m);
        self.d_cache.insert(*m, Arc::new(out.clone()));
        out
    }

    fn differential_word(&self, m: &Monomial) -> Element {
        let word = m.word();
        let mut out = Element::zero();
        let mut sign = Scalar::one();
        for (pos, &g) in word.iter().enumerate() {
            if g >= OMEGA_Q_FN_OFFSET {
                let mut w = word.clone();
                w[pos] = g - OMEGA_Q_FN_OFFSET;
                out.add_scaled(&sign, &self.omega.normalize_word(&w));
            } else {
                sign = -sign;
            }
        }
        out
    }

    pub fn differential(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            if let Some(hit) = self.d_cache.get(m) {
                out.add_scaled(c, &hit);
            } else {
                out.add_scaled(c, &self.differential_mono(m));
            }
        }
        out
    }

    /// Expansion of a grade-1 element as `Σ dz_i g_i`. Components of other
    /// grades are ignored.
    pub fn left_expand(&self, w: &Element) -> OneForm {
        let mut form = OneForm::default();
        for (m, c) in w.terms() {
            if self.omega.grade(m) != 1 {
                continue;
            }
            let i = (0..OMEGA_Q_FN_OFFSET).find(|&g| m.exp(g) == 1).expect("one differential");
            form.coeffs[i].add_term(omega_to_q(&m.with_exp(i, 0)), c.clone());
        }
        form
    }

    /// `Σ dz_i g_i` as an element of `OmegaQ`.
    pub fn assemble(&self, form: &OneForm) -> Element {
        let mut out = Element::zero();
        for (i, g) in form.coeffs.iter().enumerate() {
            let dz = Element::monomial(Monomial::gen(i));
            out = &out + &self.omega.mul(&dz, &self.lift(g));
        }
        out
    }

    /// `∂_i f` for `f` in `Q`.
    pub fn partial(&self, i: usize, f: &Element) -> Element {
        let df = self.differential(&self.lift(f));
        std::mem::take(&mut self.left_expand(&df).coeffs[i])
    }

    /// All four partial derivatives of `f`.
    pub fn gradient(&self, f: &Element) -> [Element; 4] {
        self.left_expand(&self.differential(&self.lift(f))).coeffs
    }

    /// `X(f) = Σ f_i ∂_i(f)`.
    pub fn apply_vf(&self, x: &VectorField, f: &Element) -> Element {
        let grad = self.gradient(f);
        let mut out = Element::zero();
        for i in 0..4 {
            if !x.coeffs[i].is_zero() && !grad[i].is_zero() {
                out = &out + &self.q.mul(&x.coeffs[i], &grad[i]);
            }
        }
        out
    }

    /// `⟨Σ dz_i g_i, X⟩ = Σ X(z_i) g_i = Σ f_i g_i`.
    pub fn pair(&self, form: &OneForm, x: &VectorField) -> Element {
        let mut out = Element::zero();
        for i in 0..4 {
            out = &out + &self.q.mul(&x.coeffs[i], &form.coeffs[i]);
        }
        out
    }

    /// `D² = 0` on every basis monomial of `OmegaQ`.
    pub fn d_squared_failures(&self) -> (usize, Vec<String>) {
        let basis = self.omega.basis(None).expect("finite");
        let fails = basis
            .par_iter()
            .filter(|m| !self.differential(&self.differential_mono(m)).is_zero())
            .map(|m| format!("{m:?}"))
            .collect();
        (basis.len(), fails)
    }

    /// `D(uv) = D(u) v + (-1)^{|u|} u D(v)` on basis pairs of the given grades.
    pub fn leibniz_failures(&self, gu: u32, gv: u32) -> (usize, Vec<String>) {
        let us = self.omega.basis(Some(gu)).expect("finite");
        let vs = self.omega.basis(Some(gv)).expect("finite");
        self.leibniz_on(&us, &vs)
    }

    /// Leibniz on every basis monomial times every generator. Since every
    /// monomial is a word in the generators, this implies the rule on all
    /// pairs by induction on the length of the right factor.
    pub fn leibniz_generator_failures(&self) -> (usize, Vec<String>) {
        let us = self.omega.basis(None).expect("finite");
        let gens: Vec<Monomial> = (0..self.omega.num_generators()).map(Monomial::gen).collect();
        self.leibniz_on(&us, &gens)
    }

    fn leibniz_on(&self, us: &[Monomial], vs: &[Monomial]) -> (usize, Vec<String>) {
        let fails = us
            .par_iter()
            .flat_map_iter(|u| {
                let du = self.differential_mono(u);
                let eu = Element::monomial(*u);
                let sign = if self.omega.grade(u).is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
                vs.iter().filter_map(move |v| {
                    let lhs = self.differential(&self.omega.mul_mono(u, v));
                    let mut rhs = self.omega.mul(&du, &Element::monomial(*v));
                    rhs.add_scaled(&sign, &self.omega.mul(&eu, &self.differential_mono(v)));
                    (lhs != rhs).then(|| format!("{u:?} · {v:?}"))
                })
            })
            .collect();
        (us.len() * vs.len(), fails)
    }

    /// `Σ dz_i ∂_i f = D f` on the basis of `Q`.
    pub fn reconstruction_failures(&self) -> (usize, Vec<String>) {
        let basis = self.q.basis(None).expect("finite");
        let fails = basis
            .iter()
            .filter(|m| {
                let f = Element::monomial(**m);
                let form = OneForm { coeffs: self.gradient(&f) };
                self.assemble(&form) != self.differential(&self.lift(&f))
            })
            .map(|m| format!("{m:?}"))
            .collect();
        (basis.len(), fails)
    }

    /// `δ_L(D u) = (id ⊗ D) δ_L(u)` on the basis of `OmegaQ`.
    pub fn covariance_failures(&self, bundle: &Bundle, grades: &[u32]) -> (usize, Vec<String>) {
        let mut basis = Vec::new();
        for &g in grades {
            basis.extend(self.omega.basis(Some(g)).expect("finite"));
        }
        let fails = basis
            .par_iter()
            .filter(|m| {
                let lhs = bundle.coact(Comodule::OmegaQ, &self.differential_mono(m));
                let mut rhs = TensorElement::zero();
                for ((h, w), c) in bundle.coact_mono(Comodule::OmegaQ, m).terms() {
                    rhs.add_scaled(c, &TensorElement::pure(&Element::monomial(*h), &self.differential_mono(w)));
                }
                lhs != rhs
            })
            .map(|m| format!("{m:?}"))
            .collect();
        (basis.len(), fails)
    }

    /// The calculus suite. `full` adds the pairwise Leibniz sweeps over
    /// grades (0,0), (0,1), (1,0), (1,1) and the covariance check on every
    /// grade.
    pub fn report(&self, bundle: &Bundle, full: bool) -> SuiteReport {
        let mut r = SuiteReport::new("calculus");
        let (n, f) = self.d_squared_failures();
        r.push("D² = 0 on the basis of OmegaQ", n, f);
        let (n, f) = self.leibniz_generator_failures();
        r.push("graded Leibniz on basis × generators", n, f);
        if full {
            for (gu, gv) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let (n, f) = self.leibniz_failures(gu, gv);
                r.push(&format!("graded Leibniz on grades ({gu}, {gv})"), n, f);
            }
        }
        let (n, f) = self.reconstruction_failures();
        r.push("Σ dz_i ∂_i f = D f on the basis of Q", n, f);
        let mut fails = Vec::new();
        for (i, zi) in COORDINATES.iter().enumerate() {
            for (j, zj) in COORDINATES.iter().enumerate() {
                let z = self.q.gen_by_name(zj).expect("coordinate");
                let expected = if i == j { Element::one() } else { Element::zero() };
                if self.partial(i, &z) != expected {
                    fails.push(format!("∂_{zi} {zj}"));
                }
            }
        }
        r.push("∂_i z_j = δ_ij", 16, fails);
        let x = self.q.gen_by_name("x").expect("x");
        let twisted = self.partial(0, &self.q.mul(&x, &x));
        let naive = &self.q.mul(&self.partial(0, &x), &x) + &self.q.mul(&x, &self.partial(0, &x));
        r.assert("∂_x is twisted: ∂_x(x²) = -q x ≠ 2x", twisted == x.scale(&-Scalar::q()) && twisted != naive, || {
            format!("∂_x(x²) = {twisted:?}")
        });
        let grades: Vec<u32> = if full { (0..=4).collect() } else { vec![0, 1] };
        let (n, f) = self.covariance_failures(bundle, &grades);
        r.push("δ_L commutes with D", n, f);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn calc() -> Calculus {
        Calculus::new(&SpaceCatalog::build().unwrap())
    }

    fn q_el(c: &Calculus, w: &str) -> Element {
        c.q.normalize_word(&c.q.word_from_names(&w.split_whitespace().collect::<Vec<_>>()).unwrap())
    }

    fn o_el(c: &Calculus, w: &str) -> Element {
        c.omega.normalize_word(&c.omega.word_from_names(&w.split_whitespace().collect::<Vec<_>>()).unwrap())
    }

    #[test]
    fn differential_examples() {
        let c = calc();
        assert_eq!(c.differential(&o_el(&c, "x")), o_el(&c, "dx"));
        let expected = &o_el(&c, "dx px") + &o_el(&c, "dpx x").scale(&Scalar::q());
        assert_eq!(c.differential(&o_el(&c, "x px")), expected);
        assert_eq!(c.differential(&o_el(&c, "dx y")), o_el(&c, "dx dy").scale(&-Scalar::one()));
    }

    #[test]
    fn partial_examples() {
        let c = calc();
        let x = q_el(&c, "x");
        assert_eq!(c.partial(0, &x), Element::one());
        assert_eq!(c.partial(0, &q_el(&c, "x x")), x.scale(&-Scalar::q()));
        assert_eq!(c.partial(2, &q_el(&c, "x px")), x.scale(&Scalar::q()));
    }

    #[test]
    fn left_expansion() {
        let c = calc();
        let form = c.left_expand(&o_el(&c, "x dx"));
        assert_eq!(form.coeffs[0], q_el(&c, "x").scale(&Scalar::q_pow(2)));
        let form = c.left_expand(&o_el(&c, "px dy"));
        assert_eq!(form.coeffs[1], q_el(&c, "px").scale(&Scalar::q()));
        assert_eq!(form.coeffs[0], q_el(&c, "py").scale(&(Scalar::q_pow(2) - Scalar::one())));
        assert_eq!(c.assemble(&form), o_el(&c, "px dy"));
    }

    #[test]
    fn vector_fields_and_pairing() {
        let c = calc();
        let dx = VectorField::basis(0, Scalar::one());
        assert!(c.apply_vf(&dx, &q_el(&c, "y")).is_zero());
        let x_dx = VectorField { coeffs: [q_el(&c, "x"), Element::zero(), Element::zero(), Element::zero()] };
        assert_eq!(c.apply_vf(&x_dx, &q_el(&c, "x")), q_el(&c, "x"));
        assert_eq!(c.apply_vf(&VectorField::basis(2, Scalar::q_pow(2)), &q_el(&c, "px")), Element::constant(Scalar::q_pow(2)));
        assert_eq!(c.pair(&c.left_expand(&o_el(&c, "dx y")), &dx), q_el(&c, "y"));
        assert_eq!(c.pair(&c.left_expand(&o_el(&c, "x dx")), &dx), q_el(&c, "x").scale(&Scalar::q_pow(2)));
        assert!(c.apply_vf(&dx, &Element::one()).is_zero());
    }
}
