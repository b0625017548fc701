use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::field::Scalar;
use crate::ncpoly::Monomial;

/// Finite linear combination of canonical monomials. Zero coefficients are
/// never stored, so structural equality is equality in the algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        Element::term(s, Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::term(Scalar::one(), m)
    }

    pub fn term(s: Scalar, m: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(m, s);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut e = Element::zero();
        for (m, s) in it {
            e.add_term(m, s);
        }
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn as_map(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Constant term, if the element is a scalar multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Element) {
        if s.is_zero() {
            return;
        }
        for (m, c) in other.terms() {
            self.add_term(*m, if s.is_one() { c.clone() } else { s * c });
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (*m, s * c)).collect() }
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Apply a monomial map term by term.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Element {
        Element::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::zero(), |acc, e| acc + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let x = Monomial::gen(0);
        let mut e = Element::term(Scalar::q(), x);
        e.add_term(x, -Scalar::q());
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
    }

    #[test]
    fn scalar_view() {
        assert_eq!(Element::constant(Scalar::q()).as_scalar(), Some(Scalar::q()));
        assert_eq!(Element::zero().as_scalar(), Some(Scalar::zero()));
        assert_eq!(Element::monomial(Monomial::gen(1)).as_scalar(), None);
    }
}
