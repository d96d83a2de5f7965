use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::Z4;

/// An exact Gaussian integer `re + im·ξ` with `ξ² = −1`.
///
/// Serialized as the two-element array `[re, im]`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const XI: GaussianInt = GaussianInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub const fn real(re: i64) -> Self {
        GaussianInt { re, im: 0 }
    }

    /// The fourth root of unity `ξ^k`.
    pub fn unit(k: Z4) -> Self {
        match k.value() {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    /// Inverse of [`GaussianInt::unit`]: `Some(k)` when `self == ξ^k`.
    pub fn unit_exponent(self) -> Option<Z4> {
        match (self.re, self.im) {
            (1, 0) => Some(Z4::ZERO),
            (0, 1) => Some(Z4::ONE),
            (-1, 0) => Some(Z4::TWO),
            (0, -1) => Some(Z4::THREE),
            _ => None,
        }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    /// Squared magnitude `re² + im²`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: i64) -> Self {
        GaussianInt::new(self.re * k, self.im * k)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl From<[i64; 2]> for GaussianInt {
    fn from(v: [i64; 2]) -> Self {
        GaussianInt::new(v[0], v[1])
    }
}

impl From<GaussianInt> for [i64; 2] {
    fn from(g: GaussianInt) -> Self {
        [g.re, g.im]
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, i) => write!(f, "{i}ξ"),
            (r, i) if i < 0 => write!(f, "{r}-{}ξ", -i),
            (r, i) => write!(f, "{r}+{i}ξ"),
        }
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianInt::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl AddAssign for GaussianInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for GaussianInt {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for GaussianInt {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Sum for GaussianInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussianInt::ZERO, Add::add)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gauss() -> impl Strategy<Value = GaussianInt> {
        (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(r, i)| GaussianInt::new(r, i))
    }

    proptest! {
        #[test]
        fn conj_is_multiplicative(a in gauss(), b in gauss()) {
            prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        }

        #[test]
        fn norm_is_multiplicative(a in gauss(), b in gauss()) {
            prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
            prop_assert!(a.norm() >= 0);
        }
    }

    #[test]
    fn units() {
        for k in Z4::all() {
            let u = GaussianInt::unit(k);
            assert_eq!(u.unit_exponent(), Some(k));
            assert_eq!(u.norm(), 1);
        }
        assert_eq!(GaussianInt::XI * GaussianInt::XI, GaussianInt::real(-1));
        assert_eq!(GaussianInt::new(3, 4).unit_exponent(), None);
    }

    #[test]
    fn json_is_pair() {
        let g = GaussianInt::new(4, -3);
        assert_eq!(serde_json::to_string(&g).unwrap(), "[4,-3]");
        assert_eq!(serde_json::from_str::<GaussianInt>("[4,-3]").unwrap(), g);
        assert_eq!(g.to_string(), "4-3ξ");
    }
}
