//! Cup products on the blow-up `Y = Bl_C(V)`.
//!
//! `H^2(Y, Z)` has rank two, spanned by the pullback `H` of the ample
//! generator and the exceptional divisor `E`. Every degree-6 number is a
//! multilinear combination of the four triple products stored in
//! [`TripleTensor`]; nothing is ever multiplied through degree 4.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Exact rational with a positive, reduced denominator.
pub type Rational = BigRational;

/// The triple products `(H^3, H^2 E, H E^2, E^3)` in units of the point class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleTensor {
    pub t30: BigInt,
    pub t21: BigInt,
    pub t12: BigInt,
    pub t03: BigInt,
}

impl TripleTensor {
    pub fn new(t30: impl Into<BigInt>, t21: impl Into<BigInt>, t12: impl Into<BigInt>, t03: impl Into<BigInt>) -> Self {
        Self { t30: t30.into(), t21: t21.into(), t12: t12.into(), t03: t03.into() }
    }

    /// Entry indexed by how many of the three factors are `E`.
    pub fn by_e_count(&self, e_count: usize) -> &BigInt {
        match e_count {
            0 => &self.t30,
            1 => &self.t21,
            2 => &self.t12,
            3 => &self.t03,
            _ => unreachable!("a triple product has at most three E factors"),
        }
    }

    pub fn to_array(&self) -> [BigInt; 4] {
        [self.t30.clone(), self.t21.clone(), self.t12.clone(), self.t03.clone()]
    }
}

/// A divisor class `a H + b E` on the blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Deg2Class {
    pub a: BigInt,
    pub b: BigInt,
}

impl Deg2Class {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn h() -> Self {
        Self::new(1, 0)
    }

    pub fn e() -> Self {
        Self::new(0, 1)
    }

    /// Proper transform `k H - E` of the anticanonical-type divisor `D`.
    pub fn proper_transform(k: u32) -> Self {
        Self::new(k, -1)
    }

    fn coeff(&self, i: usize) -> &BigInt {
        if i == 0 {
            &self.a
        } else {
            &self.b
        }
    }
}

impl std::ops::Add for &Deg2Class {
    type Output = Deg2Class;
    fn add(self, rhs: &Deg2Class) -> Deg2Class {
        Deg2Class { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

/// Full multilinear expansion of `x · y · z` against the tensor.
pub fn triple_product(x: &Deg2Class, y: &Deg2Class, z: &Deg2Class, t: &TripleTensor) -> BigInt {
    let mut sum = BigInt::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let coeff = x.coeff(i) * y.coeff(j) * z.coeff(k);
                if !coeff.is_zero() {
                    sum += coeff * t.by_e_count(i + j + k);
                }
            }
        }
    }
    sum
}

/// `x · c2(Y)` with `c2(Y) = p H^2 - q H E`.
pub fn pair_c2(x: &Deg2Class, p: &Rational, q: &BigInt, t: &TripleTensor) -> Rational {
    let with_hh = &x.a * &t.t30 + &x.b * &t.t21;
    let with_he = &x.a * &t.t21 + &x.b * &t.t12;
    p * Rational::from_integer(with_hh) - Rational::from_integer(q * with_he)
}
