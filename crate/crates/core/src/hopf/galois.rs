//! The trivial quantum principal bundle `M # F` over `M`: its right
//! coaction, coinvariants, the canonical map `β`, and the associated bundle
//! `(M # F) □_F M`, which recovers the phase space.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::action::Comodule;
use super::Bundle;
use crate::field::Scalar;
use crate::ncpoly::linalg::{Echelon, SparseVec};
use crate::ncpoly::{Element, Monomial, TensorElement};
use crate::spaces::{f_into_mf, m_into_mf, split_mf, split_q};

/// Key of `MF ⊗ F ⊗ M`.
type TripleKey = (Monomial, Monomial, Monomial);

/// Kernel of the cotensor condition and the image of `Q` inside it.
#[derive(Debug, Clone)]
pub struct CotensorData {
    /// A basis of `(M # F) □_F M` as vectors in `MF ⊗ M`.
    pub basis: Vec<TensorElement>,
}

impl CotensorData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl Bundle {
    /// `m # h` as an element of `MF`.
    pub fn smash(&self, m: &Element, h: &Element) -> Element {
        let mut out = Element::zero();
        for (mm, cm) in m.terms() {
            for (mh, ch) in h.terms() {
                let joined = m_into_mf(mm).concat(&f_into_mf(mh)).expect("M before F");
                out.add_term(joined, cm * ch);
            }
        }
        out
    }

    /// `δ_R(m # h) = (m # h1) ⊗ h2`.
    pub fn smash_coaction(&self, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (mono, c) in e.terms() {
            let (m, h) = split_mf(mono);
            for ((h1, h2), ch) in self.hopf.coproduct_mono(&h).terms() {
                let joined = m_into_mf(&m).concat(&f_into_mf(h1)).expect("M before F");
                out.add_term(joined, *h2, c * ch);
            }
        }
        out
    }

    /// Basis of the coinvariants `{p : δ_R(p) = p ⊗ 1}` of `M # F`.
    pub fn coinvariants(&self) -> Vec<Element> {
        let basis = self.spaces.mf.basis(None).expect("finite");
        let mut ech = Echelon::new();
        for p in &basis {
            let col = &self.smash_coaction(&Element::monomial(*p)) - &TensorElement::pure_mono(*p, Monomial::one());
            ech.insert(col.as_map());
        }
        ech.kernel()
            .iter()
            .map(|combo| {
                let mut e = Element::zero();
                for (i, c) in combo {
                    e.add_term(basis[*i], c.clone());
                }
                e
            })
            .collect()
    }

    /// `β(p ⊗ p') = p p'₀ ⊗ p'₁`.
    pub fn galois_beta(&self, t: &TensorElement) -> TensorElement {
        let mf = &self.spaces.mf;
        let mut out = TensorElement::zero();
        for ((p, pp), c) in t.terms() {
            let coact = self.smash_coaction(&Element::monomial(*pp));
            for ((p0, p1), c1) in coact.terms() {
                let prod = mf.mul_mono(p, p0);
                for (m, cm) in prod.terms() {
                    out.add_term(*m, *p1, &(c * c1) * cm);
                }
            }
        }
        out
    }

    /// `Σ (1 # S(h1)) ⊗ (1 # h2)`, the translation map applied to `1 ⊗ h`.
    pub fn translation(&self, h: &Monomial) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((h1, h2), c) in self.hopf.coproduct_mono(h).terms() {
            let left = self.smash(&Element::one(), &self.hopf.antipode_mono(h1));
            let right = self.smash(&Element::one(), &Element::monomial(*h2));
            out.add_scaled(c, &TensorElement::pure(&left, &right));
        }
        out
    }

    /// Basis monomials `h` of `F` for which `β(translation(h)) ≠ 1 ⊗ h`.
    pub fn translation_failures(&self) -> Vec<Monomial> {
        let basis = self.f().basis(None).expect("finite");
        basis
            .into_iter()
            .filter(|h| self.galois_beta(&self.translation(h)) != TensorElement::pure_mono(Monomial::one(), *h))
            .collect()
    }

    fn cotensor_column(&self, p: &Monomial, w: &Monomial) -> SparseVec<TripleKey> {
        let mut col: SparseVec<TripleKey> = BTreeMap::new();
        let mut add = |k: TripleKey, v: Scalar| {
            let e = col.entry(k).or_default();
            *e += &v;
            if e.is_zero() {
                col.remove(&k);
            }
        };
        for ((p0, p1), c) in self.smash_coaction(&Element::monomial(*p)).terms() {
            add((*p0, *p1, *w), c.clone());
        }
        for ((wm, w0), c) in self.coact_mono(Comodule::M, w).terms() {
            add((*p, *wm, *w0), -c.clone());
        }
        col
    }

    /// `(M # F) □_F M = {Σ p ⊗ w : δ_R(p) ⊗ w = p ⊗ δ_L(w)}`.
    pub fn cotensor_basis(&self) -> CotensorData {
        let ps = self.spaces.mf.basis(None).expect("finite");
        let ws = self.m().basis(None).expect("finite");
        let pairs: Vec<(Monomial, Monomial)> = ps.iter().flat_map(|p| ws.iter().map(move |w| (*p, *w))).collect();
        let columns: Vec<SparseVec<TripleKey>> =
            pairs.par_iter().map(|(p, w)| self.cotensor_column(p, w)).collect();
        let mut ech = Echelon::new();
        for c in &columns {
            ech.insert(c);
        }
        let basis = ech
            .kernel()
            .iter()
            .map(|combo| {
                let mut t = TensorElement::zero();
                for (i, c) in combo {
                    let (p, w) = pairs[*i];
                    t.add_term(p, w, c.clone());
                }
                t
            })
            .collect();
        CotensorData { basis }
    }

    /// Whether an element of `MF ⊗ M` satisfies the cotensor condition.
    pub fn in_cotensor(&self, t: &TensorElement) -> bool {
        let mut acc: SparseVec<TripleKey> = BTreeMap::new();
        for ((p, w), c) in t.terms() {
            for (k, v) in self.cotensor_column(p, w) {
                let e = acc.entry(k).or_default();
                *e += &(c * &v);
                if e.is_zero() {
                    acc.remove(&k);
                }
            }
        }
        acc.is_empty()
    }

    /// `φ(a □ w) = Σ (a # w₋₁) ⊗ w₀`, identifying `Q` with the cotensor.
    pub fn q_to_cotensor(&self, e: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for (m, c) in e.terms() {
            let (a, w) = split_q(m);
            for ((wm, w0), cw) in self.coact_mono(Comodule::M, &w).terms() {
                let joined = m_into_mf(&a).concat(&f_into_mf(wm)).expect("M before F");
                out.add_term(joined, *w0, c * cw);
            }
        }
        out
    }

    /// Product in the tensor algebra `MF ⊗ M`.
    pub fn cotensor_mul(&self, s: &TensorElement, t: &TensorElement) -> TensorElement {
        s.mul(t, &self.spaces.mf, self.m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coaction_of_a() {
        let b = Bundle::build().unwrap();
        let a = b.smash(&Element::one(), &b.f().gen_by_name("a").unwrap());
        let bb = b.smash(&Element::one(), &b.f().gen_by_name("b").unwrap());
        let expected = &TensorElement::pure(&a, &b.f().gen_by_name("a").unwrap())
            + &TensorElement::pure(&bb, &b.f().gen_by_name("c").unwrap());
        assert_eq!(b.smash_coaction(&a), expected);
    }

    #[test]
    fn beta_of_plane_elements() {
        let b = Bundle::build().unwrap();
        let mf = &b.spaces.mf;
        let x = mf.gen_by_name("x").unwrap();
        let y = mf.gen_by_name("y").unwrap();
        let beta = b.galois_beta(&TensorElement::pure(&x, &y));
        assert_eq!(beta, TensorElement::pure(&mf.mul(&x, &y), &Element::one()));
        assert_eq!(b.galois_beta(&TensorElement::one()), TensorElement::one());
    }

    #[test]
    fn plane_element_lies_in_cotensor() {
        let b = Bundle::build().unwrap();
        let x = b.spaces.mf.gen_by_name("x").unwrap();
        assert!(b.in_cotensor(&TensorElement::pure(&x, &Element::one())));
    }
}
