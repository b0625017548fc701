use std::cmp::Ordering;
use std::fmt;

/// Largest number of generators a presentation may carry.
pub const MAX_GENS: usize = 8;

/// A canonically ordered word `g_0^e_0 g_1^e_1 ...`, stored as an exponent
/// vector over the presentation's generator order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_GENS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn gen(g: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[g] = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_GENS, "too many generators");
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn exp(&self, g: usize) -> u8 {
        self.exps[g]
    }

    pub fn exps(&self) -> &[u8; MAX_GENS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Highest-index generator present.
    pub fn last_gen(&self) -> Option<usize> {
        (0..MAX_GENS).rev().find(|&g| self.exps[g] > 0)
    }

    pub fn with_exp(mut self, g: usize, e: u8) -> Self {
        self.exps[g] = e;
        self
    }

    pub(crate) fn bump(mut self, g: usize) -> Self {
        self.exps[g] += 1;
        self
    }

    pub(crate) fn dec(mut self, g: usize) -> Self {
        debug_assert!(self.exps[g] > 0);
        self.exps[g] -= 1;
        self
    }

    /// Letters of the word in canonical order.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }

    /// Product of two monomials whose supports are ordered, i.e. every
    /// generator of `self` precedes every generator of `other`. The result is
    /// already canonical.
    pub fn concat(&self, other: &Monomial) -> Option<Monomial> {
        let last = self.last_gen();
        let first = (0..MAX_GENS).find(|&g| other.exps[g] > 0);
        if let (Some(l), Some(f)) = (last, first) {
            if l > f {
                return None;
            }
        }
        let mut m = *self;
        for g in 0..MAX_GENS {
            m.exps[g] += other.exps[g];
        }
        Some(m)
    }

    /// Restriction to the generators with index in `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Monomial {
        let mut m = Monomial::one();
        for g in range {
            m.exps[g] = self.exps[g];
        }
        m
    }

    /// Shift exponents by `offset` generator slots (used to embed one
    /// presentation's monomials into a larger one).
    pub fn shifted(&self, from: usize, to: usize, len: usize) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..len {
            m.exps[to + i] = self.exps[from + i];
        }
        m
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: lower degree first, then larger exponent on the
    /// earlier generator first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_graded() {
        let one = Monomial::one();
        let x = Monomial::gen(0);
        let y = Monomial::gen(1);
        let xy = Monomial::from_exps(&[1, 1]);
        let y2 = Monomial::from_exps(&[0, 2]);
        let mut v = vec![y2, xy, y, one, x];
        v.sort();
        assert_eq!(v, vec![one, x, y, xy, y2]);
    }

    #[test]
    fn word_and_last() {
        let m = Monomial::from_exps(&[2, 0, 1]);
        assert_eq!(m.word(), vec![0, 0, 2]);
        assert_eq!(m.last_gen(), Some(2));
        assert_eq!(Monomial::one().last_gen(), None);
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn concat_requires_order() {
        let x = Monomial::gen(0);
        let y = Monomial::gen(1);
        assert_eq!(x.concat(&y), Some(Monomial::from_exps(&[1, 1])));
        assert_eq!(y.concat(&x), None);
        assert_eq!(x.concat(&x), Some(Monomial::from_exps(&[2])));
    }
}
