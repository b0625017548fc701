//! The action of `F` on the plane, the coactions on the plane, the phase
//! space and their differential algebras, and the box product.

use std::sync::Arc;

use serde::Serialize;

use super::{t_index, Bundle};
use crate::field::Scalar;
use crate::ncpoly::{Element, Monomial, Presentation, TensorElement};
use crate::spaces::{m_into_q_base, m_into_q_fibre, split_q};

type Mat2 = [[Scalar; 2]; 2];

fn mat_identity() -> Mat2 {
    [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..2).map(|k| &a[i][k] * &b[k][j]).sum()))
}

/// The left action of the generators of `F` on the generators of the plane.
///
/// `matrix(h)[n][m]` is the coefficient of `z_n` in `h ▷ z_m` with
/// `(z_0, z_1) = (x, y)`, so that `matrix(gh) = matrix(g) matrix(h)`.
#[derive(Debug, Clone)]
pub struct ActionTable {
    gens: [Mat2; 4],
}

impl ActionTable {
    /// `a▷x = q²x`, `a▷y = qy`, `b▷x = 0`, `b▷y = (q²-1)x`, `c▷x = c▷y = 0`,
    /// `d▷x = qx`, `d▷y = q²y`.
    pub fn standard() -> Self {
        let q = Scalar::q_pow;
        let z = Scalar::zero;
        ActionTable {
            gens: [
                [[q(2), z()], [z(), q(1)]],
                [[z(), q(2) - Scalar::one()], [z(), z()]],
                [[z(), z()], [z(), z()]],
                [[q(1), z()], [z(), q(2)]],
            ],
        }
    }

    pub fn generator_matrix(&self, h: usize) -> &Mat2 {
        &self.gens[h]
    }

    /// Matrix of a monomial of `F` (a word in `a`, `b`, `c`).
    pub fn mono_matrix(&self, f: &Monomial) -> Mat2 {
        f.word().iter().fold(mat_identity(), |acc, &g| mat_mul(&acc, &self.gens[g]))
    }

    /// `h ▷ z_m` for a monomial `h` of `F`, as an element of `M`.
    pub fn act_mono_on_gen(&self, h: &Monomial, m: usize) -> Element {
        let mat = self.mono_matrix(h);
        let mut out = Element::zero();
        for (n, row) in mat.iter().enumerate() {
            out.add_term(Monomial::gen(n), row[m].clone());
        }
        out
    }

    /// Table entry for a generator `h` of `F` (including `d`).
    pub fn entry(&self, h: usize, m: usize) -> Element {
        let mut out = Element::zero();
        for n in 0..2 {
            out.add_term(Monomial::gen(n), self.gens[h][n][m].clone());
        }
        out
    }
}

/// The left `F`-comodule algebras of the bundle, all built from doublets
/// `(x, y)`, `(px, py)`, `(dx, dy)`, `(dpx, dpy)` transforming like the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Comodule {
    M,
    Q,
    OmegaM,
    OmegaQ,
}

const DOUBLETS: [[&str; 2]; 4] = [["x", "y"], ["px", "py"], ["dx", "dy"], ["dpx", "dpy"]];

impl Comodule {
    pub const ALL: [Comodule; 4] = [Comodule::M, Comodule::Q, Comodule::OmegaM, Comodule::OmegaQ];

    pub fn name(self) -> &'static str {
        match self {
            Comodule::M => "M",
            Comodule::Q => "Q",
            Comodule::OmegaM => "OmegaM",
            Comodule::OmegaQ => "OmegaQ",
        }
    }

    pub fn from_name(name: &str) -> Option<Comodule> {
        Comodule::ALL.into_iter().find(|c| c.name() == name)
    }

    fn tag(self) -> u8 {
        self as u8
    }
}

/// Position of a generator in its doublet and the indices of both members.
fn doublet(p: &Presentation, g: usize) -> (usize, [usize; 2]) {
    let name = p.generator_name(g);
    for pair in DOUBLETS {
        if let Some(pos) = pair.iter().position(|n| *n == name) {
            let idx = pair.map(|n| p.index_of(n).expect("doublet members present together"));
            return (pos, idx);
        }
    }
    unreachable!("generator {name} is not in a doublet")
}

impl Bundle {
    pub fn presentation(&self, c: Comodule) -> &Arc<Presentation> {
        match c {
            Comodule::M => &self.spaces.m,
            Comodule::Q => &self.spaces.q,
            Comodule::OmegaM => &self.spaces.omega_m,
            Comodule::OmegaQ => &self.spaces.omega_q,
        }
    }

    /// `h ▷ g` for a monomial `h` of `F` and a generator `g`; differentials
    /// transform like the functions they come from.
    fn act_mono_gen(&self, c: Comodule, h: &Monomial, g: usize) -> Element {
        let p = self.presentation(c);
        let (pos, idx) = doublet(p, g);
        let mat = self.table.mono_matrix(h);
        let mut out = Element::zero();
        for n in 0..2 {
            out.add_term(Monomial::gen(idx[n]), mat[n][pos].clone());
        }
        out
    }

    /// `h ▷ m` on monomials, extended by `h ▷ (u z) = (h1 ▷ u)(h2 ▷ z)`.
    pub fn act_mono(&self, c: Comodule, h: &Monomial, m: &Monomial) -> Arc<Element> {
        let key = (c.tag(), *h, *m);
        if let Some(hit) = self.act_cache.get(&key) {
            return hit.clone();
        }
        let p = self.presentation(c);
        let out = match m.last_gen() {
            None => Element::constant(self.hopf.counit_mono(h)),
            Some(g) => {
                let head = m.with_exp(g, m.exp(g) - 1);
                let mut acc = Element::zero();
                for ((h1, h2), coef) in self.hopf.coproduct_mono(h).terms() {
                    let left = self.act_mono(c, h1, &head);
                    if left.is_zero() {
                        continue;
                    }
                    let right = self.act_mono_gen(c, h2, g);
                    acc.add_scaled(coef, &p.mul(&left, &right));
                }
                acc
            }
        };
        let out = Arc::new(out);
        self.act_cache.insert(key, out.clone());
        out
    }

    /// `h ▷ e` with `h` in `F` and `e` in one of the comodule algebras.
    pub fn act(&self, c: Comodule, h: &Element, e: &Element) -> Element {
        let mut out = Element::zero();
        for (mh, ch) in h.terms() {
            for (me, ce) in e.terms() {
                out.add_scaled(&(ch * ce), &self.act_mono(c, mh, me));
            }
        }
        out
    }

    /// `δ_L` on a generator: `z_m ↦ Σ_n T_m^n ⊗ z_n`.
    fn coact_gen(&self, c: Comodule, g: usize) -> TensorElement {
        let p = self.presentation(c);
        let (pos, idx) = doublet(p, g);
        let f = self.f();
        let mut out = TensorElement::zero();
        for n in 0..2 {
            out.add_scaled(
                &Scalar::one(),
                &TensorElement::pure(&f.gen_element(t_index(pos, n)), &Element::monomial(Monomial::gen(idx[n]))),
            );
        }
        out
    }

    /// `δ_L` on a monomial, extended multiplicatively in `F ⊗ A`.
    pub fn coact_mono(&self, c: Comodule, m: &Monomial) -> Arc<TensorElement> {
        let key = (c.tag(), *m);
        if let Some(hit) = self.coact_cache.get(&key) {
            return hit.clone();
        }
        let out = match m.last_gen() {
            None => TensorElement::one(),
            Some(g) => {
                let head = m.with_exp(g, m.exp(g) - 1);
                self.coact_mono(c, &head).mul(&self.coact_gen(c, g), self.f(), self.presentation(c))
            }
        };
        let out = Arc::new(out);
        self.coact_cache.insert(key, out.clone());
        out
    }

    /// Left coaction `δ_L : A → F ⊗ A`.
    pub fn coact(&self, c: Comodule, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, coef) in e.terms() {
            out.add_scaled(coef, &self.coact_mono(c, m));
        }
        out
    }

    /// `h ▷ e = r(e₋₁ ⊗ h) e₀`.
    pub fn act_from_rform(&self, c: Comodule, h: &Element, e: &Element) -> Element {
        let mut out = Element::zero();
        for ((left, right), coef) in self.coact(c, e).terms() {
            let r = self.hopf.rform(&Element::monomial(*left), h);
            out.add_term(*right, coef * &r);
        }
        out
    }

    /// `(a□v)(b□w) = a(v₋₁ ▷ b) □ v₀ w` on `M ⊗ M`.
    pub fn box_mul(&self, t1: &TensorElement, t2: &TensorElement) -> TensorElement {
        let m = self.m();
        let mut out = TensorElement::zero();
        for ((a, v), c1) in t1.terms() {
            let dv = self.coact_mono(Comodule::M, v);
            for ((b, w), c2) in t2.terms() {
                let c = c1 * c2;
                for ((vm, v0), cv) in dv.terms() {
                    let acted = self.act_mono(Comodule::M, vm, b);
                    if acted.is_zero() {
                        continue;
                    }
                    let left = m.mul(&Element::monomial(*a), &acted);
                    let right = m.mul_mono(v0, w);
                    out.add_scaled(&(&c * cv), &TensorElement::pure(&left, &right));
                }
            }
        }
        out
    }

    /// `Q` element as a box tensor: `x^i y^j px^k py^l ↦ x^i y^j □ x^k y^l`.
    pub fn q_to_box(&self, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in e.terms() {
            let (a, w) = split_q(m);
            out.add_term(a, w, c.clone());
        }
        out
    }

    pub fn box_to_q(&self, t: &TensorElement) -> Element {
        let mut out = Element::zero();
        for ((a, w), c) in t.terms() {
            let joined = m_into_q_base(a).concat(&m_into_q_fibre(w)).expect("base before fibre");
            out.add_term(joined, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Bundle;

    fn el(b: &Bundle, c: Comodule, names: &str) -> Element {
        let p = b.presentation(c);
        let w = p.word_from_names(&names.split_whitespace().collect::<Vec<_>>()).unwrap();
        p.normalize_word(&w)
    }

    #[test]
    fn table_entries() {
        let b = Bundle::build().unwrap();
        let bgen = b.f().gen_by_name("b").unwrap();
        let y = el(&b, Comodule::M, "y");
        let x = el(&b, Comodule::M, "x");
        assert_eq!(b.act(Comodule::M, &bgen, &y), x.scale(&(Scalar::q_pow(2) - Scalar::one())));
        let a = b.f().gen_by_name("a").unwrap();
        let xy = el(&b, Comodule::M, "x y");
        assert_eq!(b.act(Comodule::M, &a, &xy), xy);
        let h = el(&b, Comodule::M, "");
        assert_eq!(b.act(Comodule::M, &Element::one(), &h), h);
    }

    #[test]
    fn coaction_on_generators() {
        let b = Bundle::build().unwrap();
        let px = el(&b, Comodule::Q, "px");
        let expected = &TensorElement::pure(&b.f().gen_by_name("a").unwrap(), &px)
            + &TensorElement::pure(&b.f().gen_by_name("b").unwrap(), &el(&b, Comodule::Q, "py"));
        assert_eq!(b.coact(Comodule::Q, &px), expected);
        assert_eq!(b.coact(Comodule::Q, &Element::one()), TensorElement::one());
    }

    #[test]
    fn box_product_reproduces_phase_space() {
        let b = Bundle::build().unwrap();
        let px = b.q_to_box(&el(&b, Comodule::Q, "px"));
        let y = b.q_to_box(&el(&b, Comodule::Q, "y"));
        assert_eq!(b.box_to_q(&b.box_mul(&px, &y)), el(&b, Comodule::Q, "px y"));
    }
}
