//! Unimodular basis change on rank-2 invariant pairs and bounded search for
//! an isomorphism between two pairs.
//!
//! Convention: a matrix `P = [[m11, m12], [m21, m22]]` acts by the new basis
//! `f1 = m11 e1 + m12 e2`, `f2 = m21 e1 + m22 e2`. [`transform`] returns the
//! cubic and linear forms written in `(f1, f2)`, so applying `P` and then `Q`
//! equals applying the product `Q·P`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::invariants::{lambda_invariant, ChernPairing, CubicForm, InvariantRecord};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl UnimodularMatrix {
    pub fn new(m11: impl Into<BigInt>, m12: impl Into<BigInt>, m21: impl Into<BigInt>, m22: impl Into<BigInt>) -> Result<Self> {
        let m = Self { m11: m11.into(), m12: m12.into(), m21: m21.into(), m22: m22.into() };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).expect("identity is unimodular")
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            m11: &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            m12: &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            m21: &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            m22: &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        }
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self { m11: &self.m22 * &d, m12: -&self.m12 * &d, m21: -&self.m21 * &d, m22: &self.m11 * &d }
    }

    fn rows(&self) -> ([&BigInt; 2], [&BigInt; 2]) {
        ([&self.m11, &self.m12], [&self.m21, &self.m22])
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    DistinctByLambda(BigInt, BigInt),
    EquivalentWitness(UnimodularMatrix),
    InconclusiveAtBound(u32),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DistinctByLambda(a, b) => write!(f, "DistinctByLambda({a}, {b})"),
            Verdict::EquivalentWitness(p) => write!(f, "EquivalentWitness({p})"),
            Verdict::InconclusiveAtBound(b) => write!(f, "InconclusiveAtBound({b})"),
        }
    }
}

fn transform_unchecked(cubic: &CubicForm, chern: &ChernPairing, p: &UnimodularMatrix) -> (CubicForm, ChernPairing) {
    let (r1, r2) = p.rows();
    let cubic = CubicForm {
        c30: cubic.eval(r1, r1, r1),
        c21: cubic.eval(r1, r1, r2),
        c12: cubic.eval(r1, r2, r2),
        c03: cubic.eval(r2, r2, r2),
    };
    let chern = ChernPairing { l1: chern.apply(r1[0], r1[1]), l2: chern.apply(r2[0], r2[1]) };
    (cubic, chern)
}

/// Rewrites the pair in the basis given by the rows of `p`.
pub fn transform(cubic: &CubicForm, chern: &ChernPairing, p: &UnimodularMatrix) -> Result<(CubicForm, ChernPairing)> {
    if !p.det().abs().is_one() {
        return Err(Error::NotUnimodular(p.det().to_string()));
    }
    Ok(transform_unchecked(cubic, chern, p))
}

pub const DEFAULT_BOUND: u32 = 10;

/// Searches for `P` with `transform(b, P) = a`, entries in `[-bound, bound]`,
/// in lexicographic order of `(m11, m12, m21, m22)`.
///
/// Unequal lambda values settle the question without a search. The result
/// is the same for every `jobs` value; `0` means one worker per core.
pub fn equivalence_search(a: &InvariantRecord, b: &InvariantRecord, bound: u32, jobs: usize) -> Result<Verdict> {
    let lambda_a = lambda_invariant(&a.cubic, &a.chern)?;
    let lambda_b = lambda_invariant(&b.cubic, &b.chern)?;
    if lambda_a != lambda_b {
        return Ok(Verdict::DistinctByLambda(lambda_a, lambda_b));
    }
    let bound = bound.max(1);
    let b_i = i64::from(bound);
    let leading: Vec<i64> = (-b_i..=b_i).collect();
    let jobs = match jobs {
        0 => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        n => n,
    }
    .min(leading.len());

    let witness = if jobs <= 1 {
        leading.iter().find_map(|&m11| scan_slice(m11, b_i, a, b))
    } else {
        // Each worker owns a contiguous run of m11 values and reports its
        // first hit; the earliest run with a hit holds the global first.
        let chunk = leading.len().div_ceil(jobs);
        let hits: Vec<Option<UnimodularMatrix>> = std::thread::scope(|s| {
            let handles: Vec<_> = leading
                .chunks(chunk)
                .map(|run| s.spawn(move || run.iter().find_map(|&m11| scan_slice(m11, b_i, a, b))))
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });
        hits.into_iter().flatten().next()
    };
    Ok(match witness {
        Some(p) => Verdict::EquivalentWitness(p),
        None => Verdict::InconclusiveAtBound(bound),
    })
}

fn scan_slice(m11: i64, bound: i64, a: &InvariantRecord, b: &InvariantRecord) -> Option<UnimodularMatrix> {
    let m11_big = BigInt::from(m11);
    for m12 in -bound..=bound {
        let m12_big = BigInt::from(m12);
        // first row must carry l_b to l_a(e1)
        if b.chern.apply(&m11_big, &m12_big) != a.chern.l1 {
            continue;
        }
        for m21 in -bound..=bound {
            for m22 in -bound..=bound {
                let det = m11 * m22 - m12 * m21;
                if det != 1 && det != -1 {
                    continue;
                }
                let p = UnimodularMatrix {
                    m11: m11_big.clone(),
                    m12: m12_big.clone(),
                    m21: BigInt::from(m21),
                    m22: BigInt::from(m22),
                };
                if b.chern.apply(&p.m21, &p.m22) != a.chern.l2 {
                    continue;
                }
                let (cubic, _) = transform_unchecked(&b.cubic, &b.chern, &p);
                if cubic == a.cubic {
                    return Some(p);
                }
            }
        }
    }
    None
}
