use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `p q` decomposed directly.
const DECOMPOSE_LIMIT: u128 = 1 << 100;

/// Lexicographically largest `z1 >= z2 >= z3 >= z4 >= 0` with `sum z_i^2 = n`.
fn integer_four_squares(n: u128) -> [u128; 4] {
    fn rest(n: u128, cap: u128, k: usize, out: &mut [u128; 4]) -> bool {
        if k == 3 {
            let z = n.sqrt();
            if z * z == n && z <= cap {
                out[3] = z;
                return true;
            }
            return false;
        }
        let left = (4 - k) as u128;
        let mut z = n.sqrt().min(cap);
        loop {
            // the remaining squares cannot exceed left * z^2
            if z * z * left < n {
                return false;
            }
            out[k] = z;
            if rest(n - z * z, z, k + 1, out) {
                return true;
            }
            if z == 0 {
                return false;
            }
            z -= 1;
        }
    }
    let mut out = [0; 4];
    assert!(rest(n, u128::MAX, 0, &mut out), "every nonnegative integer is a sum of four squares");
    out
}

/// Four rationals whose squares sum to `n`, via `p / q = p q / q^2`.
pub fn four_squares(n: &BigRational) -> Result<[BigRational; 4]> {
    if n.is_negative() {
        return Err(Error::NegativeInput);
    }
    let num = n.numer() * n.denom();
    let m = num.to_u128().filter(|&m| m <= DECOMPOSE_LIMIT).ok_or(Error::BudgetExceeded {
        needed: num.to_u128().unwrap_or(u128::MAX),
        budget: DECOMPOSE_LIMIT,
    })?;
    let z = integer_four_squares(m);
    Ok(z.map(|zi| BigRational::new(BigInt::from(zi), n.denom().clone())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkVerdict {
    pub x: BigRational,
    pub y: BigRational,
    /// `x - y - 1`.
    pub value: BigRational,
    /// Four-square witness when `value >= 0`, else `None` (sign refutation).
    pub witness: Option<[BigRational; 4]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SopnVerdict {
    pub links: Vec<LinkVerdict>,
    /// Sum of all link values; `-length` for a cycle.
    pub telescoped: Option<BigRational>,
}

impl SopnVerdict {
    pub fn all_hold(&self) -> bool {
        self.links.iter().all(|l| l.witness.is_some())
    }

    pub fn cycle_refuted(&self) -> bool {
        self.telescoped.as_ref().is_some_and(|s| s.is_negative())
    }
}

/// Evaluates `x - y - 1 = z1^2 + z2^2 + z3^2 + z4^2` on consecutive pairs.
pub fn sopn_check(chain: &[BigRational], cyclic: bool) -> Result<SopnVerdict> {
    if chain.len() < 2 {
        return Err(Error::DimensionMismatch("chain needs at least two entries".into()));
    }
    let one = BigRational::from_integer(1.into());
    let n = chain.len();
    let pairs = if cyclic { n } else { n - 1 };
    let mut links = Vec::with_capacity(pairs);
    for i in 0..pairs {
        let (x, y) = (&chain[i], &chain[(i + 1) % n]);
        let value = x - y - &one;
        let witness = if value.is_negative() { None } else { Some(four_squares(&value)?) };
        links.push(LinkVerdict { x: x.clone(), y: y.clone(), value, witness });
    }
    let telescoped = cyclic.then(|| links.iter().fold(BigRational::zero(), |acc, l| acc + &l.value));
    Ok(SopnVerdict { links, telescoped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_squares(&r(7, 1)).unwrap(), [r(2, 1), r(1, 1), r(1, 1), r(1, 1)]);
        assert_eq!(four_squares(&r(0, 1)).unwrap(), [r(0, 1), r(0, 1), r(0, 1), r(0, 1)]);
        assert_eq!(four_squares(&r(3, 2)).unwrap(), [r(1, 1), r(1, 2), r(1, 2), r(0, 1)]);
        assert_eq!(four_squares(&r(-1, 3)), Err(Error::NegativeInput));
    }

    #[test]
    fn sopn_examples() {
        let v = sopn_check(&[r(5, 1), r(1, 1)], false).unwrap();
        assert_eq!(v.links[0].witness, Some([r(1, 1), r(1, 1), r(1, 1), r(0, 1)]));
        let v = sopn_check(&[r(1, 1), r(5, 1)], false).unwrap();
        assert_eq!(v.links[0].value, r(-5, 1));
        assert!(!v.all_hold());
        let v = sopn_check(&[r(0, 1), r(3, 1), r(7, 1)], true).unwrap();
        assert_eq!(v.telescoped, Some(r(-3, 1)));
        assert!(v.cycle_refuted());
    }
}
