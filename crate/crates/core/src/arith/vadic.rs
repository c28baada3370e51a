use num_bigint::BigInt;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extensions::{algebra_equiv, in_u, MonicVector};
use crate::poly::is_separable;
use crate::field::{padic_val, FieldElement, FieldKind};
use crate::poly::irreducible::quadratic_disc;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleVerdict {
    pub b: Vec<FieldElement>,
    pub b_in_u: bool,
    /// `None` when the verdict was refused for lack of precision.
    pub equiv: Option<bool>,
}


#[derive(Clone, Debug)]
pub struct KrasnerVadicReport {
    pub a: MonicVector,
    /// A sample passes when `in_U(b)` agrees with this and `b` is equivalent to `a`.
    pub a_in_u: bool,
    pub radius: i64,
    pub disc_valuation: i64,
    pub samples: Vec<SampleVerdict>,
    /// Smallest radius among `1, 2, 4, ...` at which every sample passed.
    pub minimal_radius: Option<i64>,
}

impl KrasnerVadicReport {
    pub fn passed(&self, s: &SampleVerdict) -> bool {
        s.b_in_u == self.a_in_u && s.equiv == Some(true)
    }

    pub fn passes(&self) -> usize {
        self.samples.iter().filter(|s| self.passed(s)).count()
    }

    pub fn fails(&self) -> usize {
        self.samples.len() - self.passes()
    }

    pub fn refused(&self) -> usize {
        self.samples.iter().filter(|s| s.equiv.is_none()).count()
    }
}

fn draw(a: &MonicVector, radius: i64, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let d = a.field();
    let p = d.prime_number().expect("p-adic field") as i64;
    let scale = FieldElement::from_bigint(d, &BigInt::from(p).pow(radius as u32));
    a.coeffs()
        .iter()
        .map(|c| {
            let u = rng.random_range(-p * p..=p * p);
            c.clone() + scale.clone() * FieldElement::from_i64(d, u)
        })
        .collect()
}

fn judge(a: &MonicVector, b: Vec<FieldElement>) -> Result<SampleVerdict> {
    let bv = MonicVector::new(a.field(), b.clone())?;
    let refused = |e: &Error| matches!(e, Error::PrecisionExhausted(_));
    let b_in_u = match in_u(&bv) {
        Ok(v) => v,
        Err(e) if refused(&e) => return Ok(SampleVerdict { b, b_in_u: false, equiv: None }),
        Err(e) => return Err(e),
    };
    let equiv = match algebra_equiv(a, &bv) {
        Ok(v) => Some(v),
        Err(e) if refused(&e) => None,
        Err(e) => return Err(e),
    };
    Ok(SampleVerdict { b, b_in_u, equiv })
}

fn run(a: &MonicVector, radius: i64, samples: usize, seed: u64) -> Result<Vec<SampleVerdict>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| judge(a, draw(a, radius, &mut rng))).collect()
}

/// Seeded perturbations `b` with `v(b_i - a_i) >= radius`, each checked
/// for membership in U and equivalence with `a`. Equivalence is K-algebra
/// isomorphism, which coincides with `equiv` on U and stays defined for
/// separable split `p_a`.
pub fn krasner_vadic_check(a: &MonicVector, radius: i64, samples: usize, seed: u64) -> Result<KrasnerVadicReport> {
    let FieldKind::PadicField { p, precision } = a.field().kind() else {
        return Err(Error::UnsupportedField("v-adic neighbourhoods need Q_p".into()));
    };
    if *p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    if a.n() != 2 {
        return Err(Error::UnsupportedDegree(a.n()));
    }
    let max_radius = *precision as i64 - 2;
    if radius < 0 || radius > max_radius {
        return Err(Error::PrecisionExhausted(format!("radius {radius} outside 0..={max_radius}")));
    }
    if !is_separable(&a.to_poly())? {
        return Err(Error::InvalidDescriptor("p_a must be separable".into()));
    }
    let a_in_u = in_u(a)?;
    let disc = quadratic_disc(&a.to_poly());
    let disc_valuation = padic_val(&disc, None)?.ok_or(Error::NotInU)?;
    let verdicts = run(a, radius, samples, seed)?;
    let mut minimal_radius = None;
    let mut r = 1;
    while r <= max_radius {
        if run(a, r, samples, seed)?.iter().all(|s| s.b_in_u == a_in_u && s.equiv == Some(true)) {
            minimal_radius = Some(r);
            break;
        }
        r *= 2;
    }
    Ok(KrasnerVadicReport { a: a.clone(), a_in_u, radius, disc_valuation, samples: verdicts, minimal_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    #[test]
    fn perturbations_of_root_two() {
        let q5 = FieldDescriptor::padic(5, 12).unwrap();
        let a = MonicVector::from_ints(&q5, &[-2, 0]).unwrap();
        let rep = krasner_vadic_check(&a, 1, 40, 7).unwrap();
        assert_eq!(rep.disc_valuation, 0);
        assert!(rep.samples.iter().any(|s| s.b != a.coeffs()));
        assert_eq!(rep.passes(), 40);
        assert_eq!(rep.minimal_radius, Some(1));
        assert!(rep.a_in_u);
        for b in [[123, 0], [3, 0], [-2, 0]] {
            let bv = MonicVector::from_ints(&q5, &b).unwrap();
            assert!(rep.passed(&judge(&a, bv.coeffs().to_vec()).unwrap()));
        }
        assert!(!rep.passed(&judge(&a, vec![FieldElement::from_i64(&q5, -1), FieldElement::from_i64(&q5, 0)]).unwrap()));
    }

    #[test]
    fn split_centre_keeps_split_neighbours() {
        let q7 = FieldDescriptor::padic(7, 12).unwrap();
        let a = MonicVector::from_ints(&q7, &[-2, 0]).unwrap();
        let rep = krasner_vadic_check(&a, 1, 30, 3).unwrap();
        assert!(!rep.a_in_u);
        assert_eq!(rep.passes(), 30);
    }

    #[test]
    fn radius_zero_leaves_the_class() {
        let q5 = FieldDescriptor::padic(5, 12).unwrap();
        let a = MonicVector::from_ints(&q5, &[-2, 0]).unwrap();
        let rep = krasner_vadic_check(&a, 0, 40, 7).unwrap();
        assert!(rep.fails() > 0);
        assert_eq!(rep.minimal_radius, Some(1));
    }

    #[test]
    fn radius_beyond_precision() {
        let q7 = FieldDescriptor::padic(7, 8).unwrap();
        let a = MonicVector::from_ints(&q7, &[-3, 0]).unwrap();
        assert!(matches!(krasner_vadic_check(&a, 7, 5, 0), Err(Error::PrecisionExhausted(_))));
    }
}
