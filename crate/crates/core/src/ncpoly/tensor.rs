use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::field::Scalar;
use crate::ncpoly::{Element, Monomial, Presentation};

/// Element of `A ⊗ B` for two presented algebras, as a combination of pairs
/// of canonical monomials.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn one() -> Self {
        TensorElement::pure_mono(Monomial::one(), Monomial::one())
    }

    pub fn pure_mono(a: Monomial, b: Monomial) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(a, b, Scalar::one());
        t
    }

    /// `a ⊗ b`
    pub fn pure(a: &Element, b: &Element) -> Self {
        let mut t = TensorElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(*ma, *mb, ca * cb);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<(Monomial, Monomial), Scalar> {
        &self.terms
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial) -> Scalar {
        self.terms.get(&(*a, *b)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(s);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &TensorElement) {
        for ((a, b), c) in other.terms() {
            self.add_term(*a, *b, s * c);
        }
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero();
        out.add_scaled(s, self);
        out
    }

    /// Product in the tensor product algebra: `(a⊗b)(a'⊗b') = aa' ⊗ bb'`.
    pub fn mul(&self, other: &TensorElement, left: &Presentation, right: &Presentation) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in other.terms() {
                let c = c1 * c2;
                let la = left.mul_mono(a1, a2);
                let rb = right.mul_mono(b1, b2);
                for (ma, ca) in la.terms() {
                    for (mb, cb) in rb.terms() {
                        out.add_term(*ma, *mb, &(&c * ca) * cb);
                    }
                }
            }
        }
        out
    }

    /// `(f ⊗ g)` applied leg-wise, with `f`, `g` given on monomials.
    pub fn map_legs(
        &self,
        mut f: impl FnMut(&Monomial) -> Element,
        mut g: impl FnMut(&Monomial) -> Element,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c) in self.terms() {
            out.add_scaled(c, &TensorElement::pure(&f(a), &g(b)));
        }
        out
    }

    /// Apply a linear map to the left leg only.
    pub fn map_left(&self, f: impl FnMut(&Monomial) -> Element) -> TensorElement {
        self.map_legs(f, |b| Element::monomial(*b))
    }

    /// Apply a linear map to the right leg only.
    pub fn map_right(&self, g: impl FnMut(&Monomial) -> Element) -> TensorElement {
        self.map_legs(|a| Element::monomial(*a), g)
    }

    /// Collapse both legs into one algebra: `Σ c·m(a, b)`.
    pub fn contract(&self, mut m: impl FnMut(&Monomial, &Monomial) -> Element) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in self.terms() {
            out.add_scaled(c, &m(a, b));
        }
        out
    }

    /// Pairs `(left leg, right element)` grouped by left monomial.
    pub fn by_left(&self) -> BTreeMap<Monomial, Element> {
        let mut out: BTreeMap<Monomial, Element> = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            out.entry(*a).or_default().add_term(*b, c.clone());
        }
        out
    }
}

impl Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}
