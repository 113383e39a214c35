//! Exact numbers of the form `(a + b·√3) / d`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithError;

const SQRT3_F64: f64 = 1.732_050_807_568_877_2;

/// An element of the quadratic field Q(√3), always stored in canonical form:
/// `d > 0` and `gcd(|a|, |b|, d) = 1`. Small values stay in machine words; the
/// big representation is used only when a component does not fit in `i64`, so
/// structural equality and hashing coincide with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { a: i64, b: i64, d: i64 },
    Big(Box<BigParts>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BigParts {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

fn gcd_u128(mut x: u128, mut y: u128) -> u128 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small { a: 0, b: 0, d: 1 });
    pub const ONE: Scalar = Scalar(Repr::Small { a: 1, b: 0, d: 1 });

    pub const fn int(n: i64) -> Scalar {
        Scalar(Repr::Small { a: n, b: 0, d: 1 })
    }

    /// `√3`
    pub const fn sqrt3() -> Scalar {
        Scalar(Repr::Small { a: 0, b: 1, d: 1 })
    }

    /// `(a + b√3) / d`; panics if `d == 0`.
    pub fn new(a: i64, b: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Self::from_i128(a as i128, b as i128, d as i128).expect("i64 inputs always fit")
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Self::new(n, 0, d)
    }

    pub fn from_parts(a: BigInt, b: BigInt, d: BigInt) -> Result<Scalar, ArithError> {
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalize_big(a, b, d))
    }

    /// Canonical components `(a, b, d)`.
    pub fn parts(&self) -> (BigInt, BigInt, BigInt) {
        match &self.0 {
            Repr::Small { a, b, d } => (BigInt::from(*a), BigInt::from(*b), BigInt::from(*d)),
            Repr::Big(p) => (p.a.clone(), p.b.clone(), p.d.clone()),
        }
    }

    /// Canonical components when they fit in machine words.
    pub fn small_parts(&self) -> Option<(i64, i64, i64)> {
        match self.0 {
            Repr::Small { a, b, d } => Some((a, b, d)),
            Repr::Big(_) => None,
        }
    }

    fn from_i128(mut a: i128, mut b: i128, mut d: i128) -> Option<Scalar> {
        if d < 0 {
            a = a.checked_neg()?;
            b = b.checked_neg()?;
            d = d.checked_neg()?;
        }
        if a == 0 && b == 0 {
            return Some(Scalar::ZERO);
        }
        let g = gcd_u128(gcd_u128(a.unsigned_abs(), b.unsigned_abs()), d as u128) as i128;
        if g > 1 {
            a /= g;
            b /= g;
            d /= g;
        }
        match (i64::try_from(a), i64::try_from(b), i64::try_from(d)) {
            (Ok(a), Ok(b), Ok(d)) => Some(Scalar(Repr::Small { a, b, d })),
            _ => Some(Self::normalize_big(a.into(), b.into(), d.into())),
        }
    }

    fn normalize_big(mut a: BigInt, mut b: BigInt, mut d: BigInt) -> Scalar {
        if d.is_negative() {
            a = -a;
            b = -b;
            d = -d;
        }
        if a.is_zero() && b.is_zero() {
            return Scalar::ZERO;
        }
        let g = a.gcd(&b).gcd(&d);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            d /= &g;
        }
        match (a.to_i64(), b.to_i64(), d.to_i64()) {
            (Some(a), Some(b), Some(d)) => Scalar(Repr::Small { a, b, d }),
            _ => Scalar(Repr::Big(Box::new(BigParts { a, b, d }))),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { a: 0, b: 0, .. })
    }

    /// Is this value rational (no √3 part)?
    pub fn is_rational(&self) -> bool {
        match &self.0 {
            Repr::Small { b, .. } => *b == 0,
            Repr::Big(p) => p.b.is_zero(),
        }
    }

    /// Exact sign: compares `a²` with `3b²` when the two terms disagree in sign.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small { a, b, .. } => {
                let (a, b) = (*a as i128, *b as i128);
                let sa = a.signum() as i8;
                let sb = b.signum() as i8;
                if sb == 0 || sa == sb {
                    return if sa != 0 { sa } else { sb };
                }
                if sa == 0 {
                    return sb;
                }
                let aa = (a * a) as u128;
                let bb = 3 * (b * b) as u128;
                match aa.cmp(&bb) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
            Repr::Big(p) => {
                let sa = sign_of(&p.a);
                let sb = sign_of(&p.b);
                if sb == 0 || sa == sb {
                    return if sa != 0 { sa } else { sb };
                }
                if sa == 0 {
                    return sb;
                }
                let aa = &p.a * &p.a;
                let bb = BigInt::from(3) * &p.b * &p.b;
                match aa.cmp(&bb) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Approximate value, for display, bounding-box culling and rendering only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { a, b, d } => (*a as f64 + *b as f64 * SQRT3_F64) / *d as f64,
            Repr::Big(p) => {
                let a = p.a.to_f64().unwrap_or(f64::NAN);
                let b = p.b.to_f64().unwrap_or(f64::NAN);
                let d = p.d.to_f64().unwrap_or(f64::NAN);
                (a + b * SQRT3_F64) / d
            }
        }
    }

    /// Conjugate `(a − b√3)/d`.
    pub fn conjugate(&self) -> Scalar {
        match &self.0 {
            Repr::Small { a, b, d } => Scalar(Repr::Small { a: *a, b: -*b, d: *d }),
            Repr::Big(p) => Self::normalize_big(p.a.clone(), -p.b.clone(), p.d.clone()),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self * &rhs.recip_unchecked())
    }

    pub fn recip(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    // 1/((a+b√3)/d) = d(a − b√3)/(a² − 3b²)
    fn recip_unchecked(&self) -> Scalar {
        if let Repr::Small { a, b, d } = self.0 {
            let (a, b, d) = (a as i128, b as i128, d as i128);
            let norm = a
                .checked_mul(a)
                .and_then(|aa| b.checked_mul(b).and_then(|bb| bb.checked_mul(3)).and_then(|bb| aa.checked_sub(bb)));
            if let (Some(n), Some(na), Some(nb)) = (norm, d.checked_mul(a), d.checked_mul(-b)) {
                if let Some(s) = Self::from_i128(na, nb, n) {
                    return s;
                }
            }
        }
        let (a, b, d) = self.parts();
        let norm = &a * &a - BigInt::from(3) * &b * &b;
        Self::normalize_big(&d * &a, -(&d * &b), norm)
    }

    /// Largest integer `n` with `n ≤ self`.
    pub fn floor(&self) -> i64 {
        let approx = self.to_f64();
        let mut n = if approx.is_finite() { approx as i64 } else { 0 };
        while Scalar::int(n) > *self {
            n -= 1;
        }
        while Scalar::int(n + 1) <= *self {
            n += 1;
        }
        n
    }

    pub fn half(&self) -> Scalar {
        self * &Scalar::ratio(1, 2)
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    fn add_impl(&self, rhs: &Scalar, negate: bool) -> Scalar {
        if let (Repr::Small { a: a1, b: b1, d: d1 }, Repr::Small { a: a2, b: b2, d: d2 }) = (&self.0, &rhs.0) {
            let (a1, b1, d1) = (*a1 as i128, *b1 as i128, *d1 as i128);
            let (mut a2, mut b2, d2) = (*a2 as i128, *b2 as i128, *d2 as i128);
            if negate {
                a2 = -a2;
                b2 = -b2;
            }
            if d1 == d2 {
                if let Some(s) = Self::from_i128(a1 + a2, b1 + b2, d1) {
                    return s;
                }
            } else {
                let r = (|| {
                    let a = a1.checked_mul(d2)?.checked_add(a2.checked_mul(d1)?)?;
                    let b = b1.checked_mul(d2)?.checked_add(b2.checked_mul(d1)?)?;
                    let d = d1.checked_mul(d2)?;
                    Self::from_i128(a, b, d)
                })();
                if let Some(s) = r {
                    return s;
                }
            }
        }
        let (a1, b1, d1) = self.parts();
        let (mut a2, mut b2, d2) = rhs.parts();
        if negate {
            a2 = -a2;
            b2 = -b2;
        }
        Self::normalize_big(&a1 * &d2 + &a2 * &d1, &b1 * &d2 + &b2 * &d1, d1 * d2)
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        if let (Repr::Small { a: a1, b: b1, d: d1 }, Repr::Small { a: a2, b: b2, d: d2 }) = (&self.0, &rhs.0) {
            let (a1, b1, d1) = (*a1 as i128, *b1 as i128, *d1 as i128);
            let (a2, b2, d2) = (*a2 as i128, *b2 as i128, *d2 as i128);
            let r = (|| {
                let a = a1.checked_mul(a2)?.checked_add(b1.checked_mul(b2)?.checked_mul(3)?)?;
                let b = a1.checked_mul(b2)?.checked_add(a2.checked_mul(b1)?)?;
                let d = d1.checked_mul(d2)?;
                Self::from_i128(a, b, d)
            })();
            if let Some(s) = r {
                return s;
            }
        }
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = rhs.parts();
        Self::normalize_big(
            &a1 * &a2 + BigInt::from(3) * &b1 * &b2,
            &a1 * &b2 + &a2 * &b1,
            d1 * d2,
        )
    }

    /// Compact human form such as `(1+2√3)/4`.
    pub fn pretty(&self) -> String {
        let (a, b, d) = self.parts();
        let num = if b.is_zero() {
            format!("{a}")
        } else if a.is_zero() {
            match b.to_i64() {
                Some(1) => String::from("√3"),
                Some(-1) => String::from("-√3"),
                _ => format!("{b}√3"),
            }
        } else {
            let bs = match b.to_i64() {
                Some(1) => String::from("+√3"),
                Some(-1) => String::from("-√3"),
                _ if b.is_positive() => format!("+{b}√3"),
                _ => format!("{b}√3"),
            };
            format!("({a}{bs})")
        };
        if d.is_one() {
            num
        } else {
            format!("{num}/{d}")
        }
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
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
        if self == other {
            return Ordering::Equal;
        }
        // same-denominator rationals are common enough to short-circuit
        if let (Repr::Small { a: a1, b: 0, d: d1 }, Repr::Small { a: a2, b: 0, d: d2 }) = (&self.0, &other.0) {
            return (*a1 as i128 * *d2 as i128).cmp(&(*a2 as i128 * *d1 as i128));
        }
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { a, b, d } => match (a.checked_neg(), b.checked_neg()) {
                (Some(a), Some(b)) => Scalar(Repr::Small { a, b, d: *d }),
                _ => Scalar::normalize_big(-BigInt::from(*a), -BigInt::from(*b), BigInt::from(*d)),
            },
            Repr::Big(p) => Scalar::normalize_big(-p.a.clone(), -p.b.clone(), p.d.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x: &Scalar, y: &Scalar| x.add_impl(y, false));
forward_binop!(Sub, sub, |x: &Scalar, y: &Scalar| x.add_impl(y, true));
forward_binop!(Mul, mul, |x: &Scalar, y: &Scalar| x.mul_impl(y));

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals_cancel() {
        let x = Scalar::new(1, 1, 1) + Scalar::new(2, -1, 1);
        assert_eq!(x, Scalar::int(3));
        assert!(x.is_rational());
    }

    #[test]
    fn sqrt3_squared() {
        assert_eq!(Scalar::sqrt3() * Scalar::sqrt3(), Scalar::int(3));
    }

    #[test]
    fn signs() {
        assert_eq!(Scalar::new(-1, 1, 1).signum(), 1);
        assert_eq!(Scalar::ZERO.signum(), 0);
        assert_eq!(Scalar::new(7, -4, 1).signum(), 1);
        assert_eq!(Scalar::new(-7, 4, 1).signum(), -1);
        assert_eq!(Scalar::new(5, -3, 1).signum(), -1);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::new(2, 4, 6), Scalar::new(1, 2, 3));
        assert_eq!(Scalar::new(1, 0, -2), Scalar::new(-1, 0, 2));
        assert_eq!(Scalar::new(0, 0, 7), Scalar::ZERO);
    }

    #[test]
    fn division() {
        let x = Scalar::new(1, 1, 1);
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, Scalar::ONE);
        assert_eq!(Scalar::ONE.checked_div(&Scalar::ZERO), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let big = Scalar::int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.small_parts().is_none());
        let back = sq.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(back.small_parts().is_some());
    }

    #[test]
    fn floor_values() {
        assert_eq!(Scalar::sqrt3().floor(), 1);
        assert_eq!((-Scalar::sqrt3()).floor(), -2);
        assert_eq!(Scalar::int(-3).floor(), -3);
        assert_eq!(Scalar::ratio(7, 2).floor(), 3);
    }

    #[test]
    fn ordering_is_numeric() {
        let mut v = alloc::vec![Scalar::sqrt3(), Scalar::ratio(7, 4), Scalar::int(-1), Scalar::new(0, -1, 2)];
        v.sort();
        assert_eq!(v, alloc::vec![Scalar::int(-1), Scalar::new(0, -1, 2), Scalar::sqrt3(), Scalar::ratio(7, 4)]);
    }
}
