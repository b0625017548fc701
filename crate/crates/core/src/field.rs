//! The cyclotomic field `Q(q)` with `q` a primitive cube root of unity.
//!
//! Elements are stored as `r0 + r1*q` with exact rational coordinates.
//! Products are reduced with `q^2 = -1 - q`, so the pair `(r0, r1)` is a
//! unique normal form.

mod rat;

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    r0: Rat,
    r1: Rat,
}

impl Scalar {
    pub fn new(r0: BigRational, r1: BigRational) -> Self {
        Scalar { r0: Rat::from_big(r0), r1: Rat::from_big(r1) }
    }

    pub fn zero() -> Self {
        Scalar { r0: Rat::zero(), r1: Rat::zero() }
    }

    pub fn one() -> Self {
        Scalar { r0: Rat::one(), r1: Rat::zero() }
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Scalar { r0: Rat::zero(), r1: Rat::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { r0: Rat::int(n), r1: Rat::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { r0: Rat::from_big(r), r1: Rat::zero() }
    }

    /// `a + b q` from small integers.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Scalar { r0: Rat::int(a), r1: Rat::int(b) }
    }

    /// `q^n` for any integer `n`; the powers cycle with period 3.
    pub fn q_pow(n: i64) -> Self {
        match n.rem_euclid(3) {
            0 => Scalar::one(),
            1 => Scalar::q(),
            _ => Scalar::from_ints(-1, -1),
        }
    }

    pub fn r0(&self) -> BigRational {
        self.r0.to_big()
    }

    pub fn r1(&self) -> BigRational {
        self.r1.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.r0.is_one() && self.r1.is_zero()
    }

    /// True when the element lies in the rational subfield.
    pub fn is_rational(&self) -> bool {
        self.r1.is_zero()
    }

    /// Image under the Galois automorphism `q -> q^2`.
    pub fn conj(&self) -> Self {
        Scalar { r0: self.r0.sub(&self.r1), r1: self.r1.neg() }
    }

    fn norm_rat(&self) -> Rat {
        let (a, b) = (&self.r0, &self.r1);
        a.mul(a).sub(&a.mul(b)).add(&b.mul(b))
    }

    /// Field norm `r0^2 - r0 r1 + r1^2`, zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        self.norm_rat().to_big()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm_rat();
        let c = self.conj();
        Ok(Scalar { r0: c.r0.div(&n), r1: c.r1.div(&n) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.r1.is_zero() && other.r1.is_zero() {
            return Scalar { r0: self.r0.mul(&other.r0), r1: Rat::zero() };
        }
        // (a + bq)(c + dq) = (ac - bd) + (ad + bc - bd) q
        let bd = self.r1.mul(&other.r1);
        let r0 = self.r0.mul(&other.r0).sub(&bd);
        let r1 = self.r0.mul(&other.r1).add(&self.r1.mul(&other.r0)).sub(&bd);
        Scalar { r0, r1 }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar { r0: a.r0.add(&b.r0), r1: a.r1.add(&b.r1) });
forward_binop!(Sub, sub, |a, b| Scalar { r0: a.r0.sub(&b.r0), r1: a.r1.sub(&b.r1) });
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero in Q(q)"));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.r0 = self.r0.add(&rhs.r0);
        self.r1 = self.r1.add(&rhs.r1);
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.r0 = self.r0.sub(&rhs.r0);
        self.r1 = self.r1.sub(&rhs.r1);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { r0: self.r0.neg(), r1: self.r1.neg() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { r0: self.r0.neg(), r1: self.r1.neg() }
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| acc + s)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, s| acc * s)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// True when the printed form consists of a single signed term.
    pub fn is_single_term(&self) -> bool {
        self.r0.is_zero() || self.r1.is_zero()
    }

    /// True when the printed form starts with a minus sign.
    pub fn prints_negative(&self) -> bool {
        if !self.r0.is_zero() {
            self.r0.is_negative()
        } else {
            self.r1.is_negative()
        }
    }
}

impl fmt::Display for Scalar {
    /// Rational part first, then the `q` part; zero parts are omitted and a
    /// unit `q` coefficient prints as `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.r0.is_zero() {
            out.push_str(&fmt_rational(&self.r0.to_big()));
        }
        if !self.r1.is_zero() {
            let neg = self.r1.is_negative();
            let mag = self.r1.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push('q');
            } else {
                out.push_str(&fmt_rational(&mag.to_big()));
                out.push_str("*q");
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

/// Exact JSON form: both coordinates as rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub r0: String,
    pub r1: String,
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson { r0: fmt_rational(&s.r0.to_big()), r1: fmt_rational(&s.r1.to_big()) }
    }
}

impl TryFrom<&ScalarJson> for Scalar {
    type Error = String;
    fn try_from(j: &ScalarJson) -> Result<Self, String> {
        let parse = |t: &str| -> Result<BigRational, String> {
            let t = t.trim();
            match t.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
                    let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
                    if d.is_zero() {
                        return Err(format!("zero denominator in `{t}`"));
                    }
                    Ok(BigRational::new(n, d))
                }
                None => {
                    let n: BigInt = t.parse().map_err(|_| format!("bad rational `{t}`"))?;
                    Ok(BigRational::from_integer(n))
                }
            }
        };
        Ok(Scalar::new(parse(&j.r0)?, parse(&j.r1)?))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        Scalar::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn add_examples() {
        assert_eq!(Scalar::from_ints(1, 1) + q(), Scalar::from_ints(1, 2));
        assert_eq!(q() + q() * q(), Scalar::from_int(-1));
        let s = Scalar::from_ints(3, -7);
        assert_eq!(Scalar::zero() + &s, s);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(q() * q() * q(), Scalar::one());
        assert_eq!(q() * q(), Scalar::from_ints(-1, -1));
        let one_plus_q = Scalar::one() + q();
        let one_plus_q2 = Scalar::one() + q() * q();
        assert_eq!(one_plus_q * one_plus_q2, Scalar::one());
    }

    #[test]
    fn inv_examples() {
        assert_eq!(q().inv().unwrap(), Scalar::from_ints(-1, -1));
        assert_eq!(Scalar::from_int(2).inv().unwrap(), Scalar::from_ratio(1, 2));
        // (q - q^2) s = 1: q - q^2 = 1 + 2q, norm 1 - 2 + 4 = 3, s = conj/3 = (-1 - 2q)/3
        let a = q() - q() * q();
        let s = a.inv().unwrap();
        assert_eq!(s, Scalar::new(BigRational::new((-1).into(), 3.into()), BigRational::new((-2).into(), 3.into())));
        assert_eq!(a * s, Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn cube_root_identities() {
        assert_eq!(Scalar::one() + q() + q() * q(), Scalar::zero());
        for n in -9..9 {
            assert_eq!(Scalar::q_pow(n), Scalar::q_pow(n + 3));
            assert_eq!(Scalar::q_pow(n) * q(), Scalar::q_pow(n + 1));
        }
        let qi = q().inv().unwrap();
        let ratio = (q() - &qi) * (q() * q() - q()).inv().unwrap();
        assert_eq!(ratio, Scalar::from_int(-1));
    }

    #[test]
    fn printing() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(q().to_string(), "q");
        assert_eq!((-q()).to_string(), "-q");
        assert_eq!(Scalar::from_ints(-1, -1).to_string(), "-1 - q");
        assert_eq!(Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())).to_string(), "1/2 + 3/4*q");
        assert_eq!(Scalar::from_ints(0, -2).to_string(), "-2*q");
    }

    #[test]
    fn json_is_exact() {
        let s = Scalar::new(BigRational::new(1.into(), 3.into()), BigRational::new((-5).into(), 7.into()));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"r0":"1/3","r1":"-5/7"}"#);
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            Scalar::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn inverse_law(a in arb_scalar()) {
            prop_assume!(!a.is_zero());
            prop_assert!(a.norm() > BigRational::zero());
            prop_assert_eq!(a.inv().unwrap() * &a, Scalar::one());
        }
    }
}
