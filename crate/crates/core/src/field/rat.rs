//! Rationals stored in machine words while they fit, promoted to big
//! integers on overflow. The representation is canonical: a value that fits
//! is always `Small`, so derived equality and hashing are sound.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub(crate) enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

fn fits(r: &Ratio<i64>) -> bool {
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(Ratio::zero())
    }

    pub fn one() -> Self {
        Rat::Small(Ratio::one())
    }

    pub fn int(n: i64) -> Self {
        if n == i64::MIN {
            Rat::Big(BigRational::from_integer(n.into()))
        } else {
            Rat::Small(Ratio::from_integer(n))
        }
    }

    pub fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(b),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(r) if r.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(b) => b.is_negative(),
        }
    }

    fn op(
        &self,
        other: &Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, other) {
            if let Some(r) = small(a, b).filter(fits) {
                return Rat::Small(r);
            }
        }
        Rat::from_big(big(self.to_big(), other.to_big()))
    }

    pub fn add(&self, other: &Rat) -> Rat {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.op(other, |a, b| a.checked_add(b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        self.op(other, |a, b| a.checked_sub(b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.op(other, |a, b| a.checked_mul(b), |a, b| a * b)
    }

    /// Panics on a zero divisor; callers check first.
    pub fn div(&self, other: &Rat) -> Rat {
        assert!(!other.is_zero(), "rational division by zero");
        self.op(other, |a, b| a.checked_div(b), |a, b| a / b)
    }

    pub fn neg(&self) -> Rat {
        match self {
            // `fits` excludes i64::MIN, so negation cannot overflow
            Rat::Small(r) => Rat::Small(-*r),
            Rat::Big(b) => Rat::from_big(-b),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a == b,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes() {
        let m = Rat::int(i64::MAX);
        let s = m.add(&Rat::one());
        assert!(matches!(s, Rat::Big(_)));
        assert_eq!(s.to_big(), BigRational::from_integer(BigInt::from(i64::MAX) + 1));
        // and comes back down when it fits again
        assert!(matches!(s.sub(&Rat::int(2)), Rat::Small(_)));
        assert!(matches!(Rat::int(i64::MIN), Rat::Big(_)));
    }

    proptest! {
        #[test]
        fn agrees_with_big(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let (x, y) = (big(a, b), big(c, d));
            let (rx, ry) = (Rat::from_big(x.clone()), Rat::from_big(y.clone()));
            prop_assert_eq!(rx.add(&ry).to_big(), &x + &y);
            prop_assert_eq!(rx.sub(&ry).to_big(), &x - &y);
            prop_assert_eq!(rx.mul(&ry).to_big(), &x * &y);
            prop_assert_eq!(rx.neg().to_big(), -&x);
            prop_assert_eq!(rx.cmp(&ry), x.cmp(&y));
            if !y.is_zero() {
                prop_assert_eq!(rx.div(&ry).to_big(), &x / &y);
            }
            prop_assert_eq!(Rat::from_big(rx.add(&ry).to_big()), rx.add(&ry));
        }
    }
}
