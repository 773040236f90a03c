//! Exact arithmetic in the field Q(sqrt 5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b * sqrt(5)` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn int(n: i64) -> Self {
        Scalar { a: rat(n), b: BigRational::zero() }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Scalar { a: BigRational::new(p.into(), q.into()), b: BigRational::zero() }
    }

    /// `p/q + (r/s) sqrt 5`
    pub fn quad(p: i64, q: i64, r: i64, s: i64) -> Self {
        Scalar {
            a: BigRational::new(p.into(), q.into()),
            b: BigRational::new(r.into(), s.into()),
        }
    }

    pub fn zero() -> Self {
        Scalar::int(0)
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    /// The golden ratio (1 + sqrt 5) / 2.
    pub fn phi() -> Self {
        Scalar::quad(1, 2, 1, 2)
    }

    pub fn sqrt5() -> Self {
        Scalar::quad(0, 1, 1, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Conjugate `a - b sqrt 5`.
    pub fn conj(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 5 b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat(5) * &self.b * &self.b
    }

    /// Sign under the real embedding sqrt 5 > 0.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = rat(5) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar { a: &self.a / &n, b: -&self.b / &n })
    }

    /// Approximate real value, for display and heuristics only.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * 5f64.sqrt()
    }

    /// Integer value if this is a rational integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.b.is_zero() || !self.a.is_integer() {
            return None;
        }
        self.a.numer().to_string().parse().ok()
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar { a: &self.a * &o.a, b: BigRational::zero() };
        }
        Scalar {
            a: &self.a * &o.a + rat(5) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero in Q(sqrt 5)")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*r5", self.b)
        } else {
            write!(f, "{}{}{}*r5", self.a, if self.b.is_negative() { "-" } else { "+" }, self.b.abs())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identity() {
        let p = Scalar::phi();
        assert_eq!(&p * &p, &p + &Scalar::one());
    }

    #[test]
    fn signs() {
        assert!(Scalar::quad(-2, 1, 1, 1).is_positive());
        assert!(Scalar::quad(-3, 1, 1, 1).is_negative());
        assert!(Scalar::quad(3, 1, -1, 1).is_positive());
        assert_eq!(Scalar::zero().signum(), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Scalar::quad(3, 7, -2, 5);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(Scalar::zero().inv().is_none());
    }
}
