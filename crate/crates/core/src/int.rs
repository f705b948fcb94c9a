//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Elimination over bar-complex differentials touches hundreds of millions of
//! small entries; only rarely does one outgrow a machine word. `Int` keeps the
//! common case allocation-free and promotes to [`BigInt`] on overflow.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact integer. `Big` is used only for values outside the `i64` range.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Floor division; panics on a zero divisor.
    pub fn div_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) => {
                if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                    if r != 0 && ((r < 0) != (*b < 0)) {
                        return Int::Small(q - 1);
                    }
                    return Int::Small(q);
                }
                Int::from_big(BigInt::from(*a).div_floor(&BigInt::from(*b)))
            }
            _ => Int::from_big(self.to_bigint().div_floor(&d.to_bigint())),
        }
    }

    /// Remainder in `[0, |m|)`; panics on a zero modulus.
    pub fn rem_euclid(&self, m: &Int) -> Int {
        match (self, m) {
            (Int::Small(a), Int::Small(b)) => match a.checked_rem_euclid(*b) {
                Some(r) => Int::Small(r),
                None => Int::Small(0),
            },
            _ => {
                let r = self.to_bigint().mod_floor(&m.to_bigint().abs());
                Int::from_big(r)
            }
        }
    }

    /// Exact division; the caller guarantees `d | self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        debug_assert!(self.rem_euclid(d).is_zero());
        self.div_floor(d)
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem_euclid(self).is_zero()
    }

    /// Non-negative gcd.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::from_big(BigInt::from(x)),
                }
            }
            _ => Int::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        let g = self.gcd(other);
        (&self.div_exact(&g) * other).abs()
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `x·a + y·b = g`.
    pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        if let (Int::Small(a0), Int::Small(b0)) = (a, b) {
            let (mut r0, mut r1) = (*a0 as i128, *b0 as i128);
            let (mut s0, mut s1) = (1i128, 0i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let q = r0.div_euclid(r1);
                let r2 = r0 - q * r1;
                r0 = r1;
                r1 = r2;
                let s2 = s0 - q * s1;
                s0 = s1;
                s1 = s2;
                let t2 = t0 - q * t1;
                t0 = t1;
                t1 = t2;
            }
            if r0 < 0 {
                r0 = -r0;
                s0 = -s0;
                t0 = -t0;
            }
            if let (Ok(g), Ok(x), Ok(y)) = (i64::try_from(r0), i64::try_from(s0), i64::try_from(t0)) {
                return (Int::Small(g), Int::Small(x), Int::Small(y));
            }
        }
        let e = a.to_bigint().extended_gcd(&b.to_bigint());
        let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            x = -x;
            y = -y;
        }
        (Int::from_big(g), Int::from_big(x), Int::from_big(y))
    }

    /// `self + a·b`, the inner step of every elimination.
    #[inline]
    pub fn add_mul(&self, a: &Int, b: &Int) -> Int {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    return Int::Small(r);
                }
            }
        }
        Int::from_big(self.to_bigint() + a.to_bigint() * b.to_bigint())
    }

    pub fn to_decimal(&self) -> String {
        use alloc::string::ToString;
        match self {
            Int::Small(v) => v.to_string(),
            Int::Big(b) => b.to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Int> {
        if let Ok(v) = s.parse::<i64>() {
            return Some(Int::Small(v));
        }
        BigInt::parse_bytes(s.as_bytes(), 10).map(Int::from_big)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{}", v),
            Int::Big(b) => write!(f, "{}", b),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::ONE;
        assert_eq!(c, a);
        assert!(matches!(c, Int::Small(_)));
        let sq = &a * &a;
        assert_eq!(sq.div_exact(&a), a);
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(-7).rem_euclid(&Int::from(2)), Int::from(1));
        assert_eq!(Int::from(7).rem_euclid(&Int::from(-3)), Int::from(1));
        assert_eq!(Int::from(i64::MIN).abs().to_decimal(), "9223372036854775808");
    }

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(12i64, 18i64), (-4, 6), (0, 5), (7, 0), (0, 0), (i64::MAX, 3)] {
            let (g, x, y) = Int::ext_gcd(&Int::from(a), &Int::from(b));
            let lhs = &(&x * &Int::from(a)) + &(&y * &Int::from(b));
            assert_eq!(lhs, g);
            assert!(!g.is_negative());
        }
    }
}
