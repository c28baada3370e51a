//! Quotient algebras `K[x]/(p_a)`, the separable-irreducible locus U, the
//! isomorphism relation on U and class counting.

mod algebra;
mod roots;

pub use algebra::{AlgElem, QuotientAlgebra};
pub use roots::{has_root, padic_sqrt, roots_exhaustive, roots_in_field, split_part, EXHAUSTIVE_LIMIT};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{enumerate_field, FieldDescriptor, FieldElement, FieldKind};
use crate::poly::{is_irreducible, is_separable, Poly};

/// `a = (a_0, ..., a_{n-1})` standing for `x^n + a_{n-1} x^{n-1} + ... + a_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicVector {
    field: FieldDescriptor,
    a: Vec<FieldElement>,
}

impl MonicVector {
    pub fn new(field: &FieldDescriptor, a: Vec<FieldElement>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::DegreeTooSmall(0));
        }
        if a.iter().any(|c| c.field() != field) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(MonicVector { field: field.clone(), a })
    }

    pub fn from_ints(field: &FieldDescriptor, a: &[i64]) -> Result<Self> {
        Self::new(field, a.iter().map(|&c| FieldElement::from_i64(field, c)).collect())
    }

    /// Coefficients below the leading one of a monic polynomial.
    pub fn from_poly(f: &Poly<FieldElement>) -> Result<Self> {
        let n = f.degree().filter(|&n| n >= 1).ok_or(Error::ConstantInput)?;
        if !f.is_monic() {
            return Err(Error::InvalidDescriptor("polynomial is not monic".into()));
        }
        Self::new(f.field(), (0..n).map(|i| f.coeff(i)).collect())
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn to_poly(&self) -> Poly<FieldElement> {
        let mut c = self.a.clone();
        c.push(FieldElement::from_i64(&self.field, 1));
        Poly::from_coeffs(c)
    }
}

/// Whether `p_a` is separable and irreducible.
pub fn in_u(a: &MonicVector) -> Result<bool> {
    let f = a.to_poly();
    Ok(is_separable(&f)? && is_irreducible(&f)?)
}

pub fn quotient_algebra(a: &MonicVector) -> QuotientAlgebra<FieldElement> {
    QuotientAlgebra::new(a.to_poly()).expect("monic of degree >= 1")
}

fn check_pair(a: &MonicVector, b: &MonicVector) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::DescriptorMismatch);
    }
    if a.n() != b.n() {
        return Err(Error::DegreeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// The relation on U: `p_b` has a root in `K[x]/(p_a)`.
pub fn equiv(a: &MonicVector, b: &MonicVector) -> Result<bool> {
    Ok(equiv_with_precision(a, b)?.0)
}

/// `equiv` together with the p-adic precision at which it was decided.
pub fn equiv_with_precision(a: &MonicVector, b: &MonicVector) -> Result<(bool, Option<u32>)> {
    check_pair(a, b)?;
    if !in_u(a)? || !in_u(b)? {
        return Err(Error::NotInU);
    }
    let prec = a.field().padic_precision();
    if a.n() == 1 {
        return Ok((true, prec));
    }
    if matches!(a.field().kind(), FieldKind::Rationals) {
        return Err(Error::UnsupportedField("isomorphism of extensions of Q".into()));
    }
    Ok((has_root(&b.to_poly(), &quotient_algebra(a))?.is_some(), prec))
}

/// K-algebra isomorphism of `K[x]/(p_a)` and `K[x]/(p_b)` for separable
/// `p_a`, `p_b` of degree at most 2; agrees with `equiv` on U.
pub fn algebra_equiv(a: &MonicVector, b: &MonicVector) -> Result<bool> {
    check_pair(a, b)?;
    if a.n() > 2 {
        return Err(Error::UnsupportedDegree(a.n()));
    }
    if !is_separable(&a.to_poly())? || !is_separable(&b.to_poly())? {
        return Err(Error::InvalidDescriptor("algebra_equiv needs separable polynomials".into()));
    }
    if a.n() == 1 {
        return Ok(true);
    }
    if matches!(a.field().kind(), FieldKind::Rationals) {
        return Err(Error::UnsupportedField("isomorphism of extensions of Q".into()));
    }
    if is_irreducible(&a.to_poly())? != is_irreducible(&b.to_poly())? {
        return Ok(false);
    }
    Ok(has_root(&b.to_poly(), &quotient_algebra(a))?.is_some())
}

/// How `count_classes` chooses the vectors it examines.
#[derive(Clone, Debug)]
pub enum Sampler {
    /// Every `a` in `K^n`; refused when `q^n` exceeds `budget`.
    Exhaustive { budget: u128 },
    /// Random integer coefficients in `[-bound, bound]` until `accepted`
    /// members of U are found (at most `max_draws` draws).
    Random { accepted: usize, seed: u64, bound: i64, max_draws: usize },
}

#[derive(Clone, Debug)]
pub struct ClassCount {
    pub count: usize,
    pub representatives: Vec<MonicVector>,
    pub examined: usize,
    pub accepted: usize,
    pub method: &'static str,
    pub precision_notes: Vec<String>,
}

/// Partitions the examined members of U into classes of `equiv`.
pub fn count_classes(d: &FieldDescriptor, n: usize, sampler: &Sampler) -> Result<ClassCount> {
    if n == 0 {
        return Err(Error::DegreeTooSmall(0));
    }
    let mut notes = Vec::new();
    let (candidates, examined, method) = match sampler {
        Sampler::Exhaustive { budget } => {
            let q = d.order().ok_or(Error::InfiniteField)?;
            let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
            if total > *budget {
                return Err(Error::BudgetExceeded { needed: total, budget: *budget });
            }
            let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
            let all: Vec<MonicVector> = (0..total)
                .map(|mut i| {
                    let a = (0..n)
                        .map(|_| {
                            let c = elems[(i % q) as usize].clone();
                            i /= q;
                            c
                        })
                        .collect();
                    MonicVector { field: d.clone(), a }
                })
                .collect();
            let flags: Vec<bool> = all.par_iter().map(in_u).collect::<Result<_>>()?;
            let cands: Vec<MonicVector> = all.into_iter().zip(flags).filter(|(_, f)| *f).map(|(a, _)| a).collect();
            (cands, total as usize, "exhaustive")
        }
        Sampler::Random { accepted, seed, bound, max_draws } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut cands = Vec::new();
            let mut draws = 0;
            while cands.len() < *accepted {
                if draws >= *max_draws {
                    return Err(Error::BudgetExceeded { needed: *accepted as u128, budget: cands.len() as u128 });
                }
                draws += 1;
                let ints: Vec<i64> = (0..n).map(|_| rng.random_range(-*bound..=*bound)).collect();
                let a = MonicVector::from_ints(d, &ints)?;
                match in_u(&a) {
                    Ok(true) => cands.push(a),
                    Ok(false) => {}
                    Err(Error::PrecisionExhausted(m)) => notes.push(format!("{ints:?}: {m}")),
                    Err(e) => return Err(e),
                }
            }
            (cands, draws, "random")
        }
    };
    let accepted = candidates.len();
    let mut reps: Vec<MonicVector> = Vec::new();
    let mut rest = candidates;
    while let Some(rep) = rest.first().cloned() {
        let verdicts: Vec<Result<bool>> = rest[1..].par_iter().map(|b| equiv(&rep, b)).collect();
        let mut next = Vec::new();
        for (b, v) in rest[1..].iter().zip(verdicts) {
            match v {
                Ok(true) => {}
                Ok(false) => next.push(b.clone()),
                Err(Error::PrecisionExhausted(m)) => notes.push(format!("{:?}: {m}", b.coeffs())),
                Err(e) => return Err(e),
            }
        }
        reps.push(rep);
        rest = next;
    }
    if let Some(p) = d.padic_precision() {
        notes.push(format!("p-adic verdicts decided at {p} significant digits"));
    }
    Ok(ClassCount { count: reps.len(), representatives: reps, examined, accepted, method, precision_notes: notes })
}
