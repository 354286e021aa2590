//! The Jupp/Wall invariant pair of a doubling Calabi-Yau threefold `M`.
//!
//! `M` is glued from two copies of the blow-up `Y`. Up to torsion,
//! `H^2(M, Z)` is generated by `e1 = (H, H)` and `e2 = (kH - E, 0)`, and a
//! cup product of pairs is the sum of the componentwise cup products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::catalog::{hodge_numbers, FanoFamily};
use crate::error::{Error, Result};
use crate::intersection::{pair_c2, triple_product, Deg2Class, TripleTensor};

/// `mu(e1,e1,e1), mu(e1,e1,e2), mu(e1,e2,e2), mu(e2,e2,e2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicForm {
    pub c30: BigInt,
    pub c21: BigInt,
    pub c12: BigInt,
    pub c03: BigInt,
}

impl CubicForm {
    pub fn new(c30: impl Into<BigInt>, c21: impl Into<BigInt>, c12: impl Into<BigInt>, c03: impl Into<BigInt>) -> Self {
        Self { c30: c30.into(), c21: c21.into(), c12: c12.into(), c03: c03.into() }
    }

    fn by_e2_count(&self, n: usize) -> &BigInt {
        match n {
            0 => &self.c30,
            1 => &self.c21,
            2 => &self.c12,
            3 => &self.c03,
            _ => unreachable!(),
        }
    }

    /// Trilinear evaluation on coordinate vectors in the basis `(e1, e2)`.
    pub fn eval(&self, u: [&BigInt; 2], v: [&BigInt; 2], w: [&BigInt; 2]) -> BigInt {
        let mut sum = BigInt::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                for (k, wk) in w.iter().enumerate() {
                    let coeff = *ui * *vj * *wk;
                    if !coeff.is_zero() {
                        sum += coeff * self.by_e2_count(i + j + k);
                    }
                }
            }
        }
        sum
    }

    /// `(a e1 + b e2)^3`.
    pub fn cube(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let three = BigInt::from(3);
        a * a * a * &self.c30 + &three * a * a * b * &self.c21 + &three * a * b * b * &self.c12 + b * b * b * &self.c03
    }

    pub fn to_array(&self) -> [BigInt; 4] {
        [self.c30.clone(), self.c21.clone(), self.c12.clone(), self.c03.clone()]
    }
}

/// `c2(M)` as a linear form: `(c2 · e1, c2 · e2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernPairing {
    pub l1: BigInt,
    pub l2: BigInt,
}

impl ChernPairing {
    pub fn new(l1: impl Into<BigInt>, l2: impl Into<BigInt>) -> Self {
        Self { l1: l1.into(), l2: l2.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.l1.is_zero() && self.l2.is_zero()
    }

    pub fn apply(&self, a: &BigInt, b: &BigInt) -> BigInt {
        &self.l1 * a + &self.l2 * b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub id: String,
    pub hodge: (u64, u64),
    pub cubic: CubicForm,
    pub chern: ChernPairing,
    pub kernel: (BigInt, BigInt),
    pub lambda: BigInt,
}

/// A class on `M`, given by its restrictions to the two copies of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedClass(pub Deg2Class, pub Deg2Class);

impl GluedClass {
    /// Cup product rule: `(l1,l2)(m1,m2)(n1,n2) = l1 m1 n1 + l2 m2 n2`.
    pub fn triple(x: &Self, y: &Self, z: &Self, t: &TripleTensor) -> BigInt {
        triple_product(&x.0, &y.0, &z.0, t) + triple_product(&x.1, &y.1, &z.1, t)
    }
}

pub fn generators(family: &FanoFamily) -> (GluedClass, GluedClass) {
    let e1 = GluedClass(Deg2Class::h(), Deg2Class::h());
    let e2 = GluedClass(Deg2Class::proper_transform(family.k), Deg2Class::zero());
    (e1, e2)
}

pub fn cubic_form(family: &FanoFamily) -> CubicForm {
    let (e1, e2) = generators(family);
    let t = &family.tensor;
    CubicForm {
        c30: GluedClass::triple(&e1, &e1, &e1, t),
        c21: GluedClass::triple(&e1, &e1, &e2, t),
        c12: GluedClass::triple(&e1, &e2, &e2, t),
        c03: GluedClass::triple(&e2, &e2, &e2, t),
    }
}

/// Solves the triangular system of [`cubic_form`] for the tensor.
pub fn invert_tensor(cubic: &CubicForm, k: u32) -> Result<TripleTensor> {
    let two = BigInt::from(2);
    let (t30, rem) = cubic.c30.div_rem(&two);
    if !rem.is_zero() {
        return Err(Error::OddLeadingCoefficient(cubic.c30.to_string()));
    }
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let k3 = &k2 * &k;
    let t21 = &k * &t30 - &cubic.c21;
    let t12 = &cubic.c12 - &k2 * &t30 + &two * &k * &t21;
    let t03 = &k3 * &t30 - 3 * &k2 * &t21 + 3 * &k * &t12 - &cubic.c03;
    Ok(TripleTensor { t30, t21, t12, t03 })
}

pub fn chern_pairing(family: &FanoFamily) -> Result<ChernPairing> {
    let (e1, e2) = generators(family);
    let integral = |class: &GluedClass| -> Result<BigInt> {
        let p = &family.c2_p;
        let q = BigInt::from(family.c2_q);
        let value = pair_c2(&class.0, p, &q, &family.tensor) + pair_c2(&class.1, p, &q, &family.tensor);
        if value.is_integer() {
            Ok(value.to_integer())
        } else {
            Err(Error::NonIntegralPairing { id: family.id.clone(), value: value.to_string() })
        }
    };
    Ok(ChernPairing { l1: integral(&e1)?, l2: integral(&e2)? })
}

/// Primitive generator of `{ x : c2 · x = 0 }`, first nonzero coordinate positive.
pub fn kernel_generator(chern: &ChernPairing) -> Result<(BigInt, BigInt)> {
    if chern.is_zero() {
        return Err(Error::ZeroChernClass);
    }
    let g = chern.l1.gcd(&chern.l2);
    let mut a = &chern.l2 / &g;
    let mut b = -(&chern.l1 / &g);
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        a = -a;
        b = -b;
    }
    Ok((a, b))
}

pub fn lambda_invariant(cubic: &CubicForm, chern: &ChernPairing) -> Result<BigInt> {
    let (a, b) = kernel_generator(chern)?;
    Ok(cubic.cube(&a, &b).abs())
}

pub fn invariant_record(family: &FanoFamily) -> Result<InvariantRecord> {
    let cubic = cubic_form(family);
    let chern = chern_pairing(family)?;
    let kernel = kernel_generator(&chern)?;
    let lambda = cubic.cube(&kernel.0, &kernel.1).abs();
    Ok(InvariantRecord { id: family.id.clone(), hodge: hodge_numbers(family), cubic, chern, kernel, lambda })
}

/// Tensor from the standard blow-up rules `pi^*a · E^2 = -(a · C)` and
/// `E^3 = -deg N_{C/V}`, keeping the family's `H^3`.
///
/// Diagnostic only: the pipeline always uses the catalog tensor.
pub fn geometric_tensor(family: &FanoFamily) -> Result<TripleTensor> {
    let (Some(d), Some(g)) = (family.deg_center, family.genus_center) else {
        return Err(Error::MissingGeometry(family.id.clone()));
    };
    let d = BigInt::from(d);
    let normal_degree = BigInt::from(2 * i64::from(g) - 2) + BigInt::from(family.index_r) * &d;
    Ok(TripleTensor { t30: family.tensor.t30.clone(), t21: BigInt::zero(), t12: -d, t03: -normal_degree })
}
