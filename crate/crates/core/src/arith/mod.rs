//! Finite-field index computations, coset sums, conic and power-sum
//! solvers, four-square witnesses and v-adic neighbourhood checks.

mod squares;
mod vadic;

pub use squares::{four_squares, sopn_check, LinkVerdict, SopnVerdict};
pub use vadic::{krasner_vadic_check, KrasnerVadicReport, SampleVerdict};

use num_integer::Integer;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::extensions::roots_in_field;
use crate::field::modular::sqrt_mod;
use crate::field::{enumerate_field, is_square, ElementValue, FieldDescriptor, FieldElement};
use crate::poly::Poly;
use crate::scalar::{Field, FiniteField, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// `{x^m : x in K^*}` inside `(K^*, *)`.
    Powers(u64),
    /// `{x^p - x : x in K}` inside `(K, +)`.
    ArtinSchreierImage,
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    pub field: FieldDescriptor,
    pub subgroup: Subgroup,
    pub subgroup_order: u128,
    pub index: u128,
    /// First element of each coset in enumeration order.
    pub representatives: Vec<FieldElement>,
    /// `gcd(m, q - 1)` for powers, `p` for the Artin-Schreier image.
    pub expected_index: u128,
}

impl CosetTable {
    pub fn matches_expected(&self) -> bool {
        self.index == self.expected_index
    }
}

fn finite_order(d: &FieldDescriptor, budget: Budget) -> Result<u128> {
    let q = d.order().ok_or(Error::InfiniteField)?;
    budget.check(q)?;
    Ok(q)
}

/// Coset id of every element index under a subgroup given as a membership mask.
fn cosets(
    elems: &[FieldElement],
    member: &[bool],
    multiplicative: bool,
) -> (Vec<Option<usize>>, Vec<FieldElement>) {
    let mut id = vec![None; elems.len()];
    let mut reps = Vec::new();
    let subgroup: Vec<&FieldElement> = elems.iter().zip(member).filter(|(_, &m)| m).map(|(e, _)| e).collect();
    let start = usize::from(multiplicative);
    for i in start..elems.len() {
        if id[i].is_some() {
            continue;
        }
        let k = reps.len();
        reps.push(elems[i].clone());
        for h in &subgroup {
            let x = if multiplicative { elems[i].clone() * (*h).clone() } else { elems[i].clone() + (*h).clone() };
            id[x.index() as usize] = Some(k);
        }
    }
    (id, reps)
}

fn power_mask(elems: &[FieldElement], m: u64) -> Vec<bool> {
    let mut mask = vec![false; elems.len()];
    for x in &elems[1..] {
        mask[x.pow_u(m as u128).index() as usize] = true;
    }
    mask
}

/// Index of the m-th powers in `K^*`, by brute-force image enumeration.
pub fn power_subgroup_index(d: &FieldDescriptor, m: u64, budget: Budget) -> Result<CosetTable> {
    if m == 0 {
        return Err(Error::IndexOutOfRange("m must be at least 1".into()));
    }
    let q = finite_order(d, budget)?;
    let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
    let mask = power_mask(&elems, m);
    let order = mask.iter().filter(|&&b| b).count() as u128;
    let (_, representatives) = cosets(&elems, &mask, true);
    Ok(CosetTable {
        field: d.clone(),
        subgroup: Subgroup::Powers(m),
        subgroup_order: order,
        index: (q - 1) / order,
        representatives,
        expected_index: (m as u128).gcd(&(q - 1)),
    })
}

/// Index of `{x^p - x}` in `(K, +)`, by brute-force image enumeration.
pub fn artin_schreier_index(d: &FieldDescriptor, budget: Budget) -> Result<CosetTable> {
    let q = finite_order(d, budget)?;
    let p = d.characteristic();
    let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
    let mut mask = vec![false; elems.len()];
    for x in &elems {
        mask[(x.pow_u(p as u128) - x.clone()).index() as usize] = true;
    }
    let order = mask.iter().filter(|&&b| b).count() as u128;
    let (_, representatives) = cosets(&elems, &mask, false);
    Ok(CosetTable {
        field: d.clone(),
        subgroup: Subgroup::ArtinSchreierImage,
        subgroup_order: order,
        index: q / order,
        representatives,
        expected_index: p as u128,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPair {
    pub first: usize,
    pub second: usize,
    /// Whether `H_first + H_second` contains every nonzero element.
    pub covers: bool,
}

#[derive(Clone, Debug)]
pub struct CosetSumReport {
    pub field: FieldDescriptor,
    pub m: u64,
    pub representatives: Vec<FieldElement>,
    pub pairs: Vec<CosetPair>,
}

impl CosetSumReport {
    pub fn all_cover(&self) -> bool {
        self.pairs.iter().all(|p| p.covers)
    }
}

/// For every ordered pair of cosets of `P_m`, whether their sumset covers `K^*`.
pub fn coset_sum_covers(d: &FieldDescriptor, m: u64, budget: Budget) -> Result<CosetSumReport> {
    if m == 0 {
        return Err(Error::IndexOutOfRange("m must be at least 1".into()));
    }
    let q = finite_order(d, budget)?;
    budget.check(q * q)?;
    let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
    let mask = power_mask(&elems, m);
    let (id, representatives) = cosets(&elems, &mask, true);
    let k = representatives.len();
    let members: Vec<Vec<usize>> =
        (0..k).map(|c| (1..elems.len()).filter(|&i| id[i] == Some(c)).collect()).collect();
    let mut pairs = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let mut hit = vec![false; elems.len()];
            for &i in &members[a] {
                for &j in &members[b] {
                    hit[(elems[i].clone() + elems[j].clone()).index() as usize] = true;
                }
            }
            pairs.push(CosetPair { first: a, second: b, covers: hit[1..].iter().all(|&h| h) });
        }
    }
    Ok(CosetSumReport { field: d.clone(), m, representatives, pairs })
}

/// Square root of smallest index, if any.
fn min_sqrt(t: &FieldElement) -> Result<Option<FieldElement>> {
    if t.is_zero() {
        return Ok(Some(t.clone()));
    }
    if !is_square(t)? {
        return Ok(None);
    }
    if let ElementValue::Residue(r) = t.value() {
        let p = t.field().characteristic();
        let s = sqrt_mod(*r, p).expect("square residue");
        return Ok(Some(FieldElement::from_i64(t.field(), s.min(p - s) as i64)));
    }
    let f = Poly::from_coeffs(vec![-t.clone(), t.zero_like(), t.one_like()]);
    Ok(roots_in_field(&f)?.into_iter().next())
}

fn require_nonzero(xs: &[&FieldElement]) -> Result<()> {
    if xs.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroInput);
    }
    Ok(())
}

/// `(c, d)` with `a c^2 + b d^2 = 1`: ascending scan over `c`, smallest root `d`.
pub fn conic_solve(a: &FieldElement, b: &FieldElement, budget: Budget) -> Result<(FieldElement, FieldElement)> {
    let d = a.field();
    if b.field() != d {
        return Err(Error::DescriptorMismatch);
    }
    let q = finite_order(d, budget)?;
    if d.characteristic() == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    require_nonzero(&[a, b])?;
    let b_inv = b.try_inv()?;
    for i in 0..q {
        let c = a.nth_element(i);
        let t = (a.one_like() - a.clone() * c.clone() * c.clone()) * b_inv.clone();
        if let Some(s) = min_sqrt(&t)? {
            return Ok((c, s));
        }
    }
    unreachable!("every nondegenerate conic over a finite field of odd order has a point")
}

/// First `(c, e)` in ascending scan with `c^m + a e^m = b`. With
/// `nonzero_only`, `c` and `e` range over `K^*`, otherwise over `K`.
pub fn power_sum_solve(
    m: u64,
    a: &FieldElement,
    b: &FieldElement,
    nonzero_only: bool,
    budget: Budget,
) -> Result<Option<(FieldElement, FieldElement)>> {
    let d = a.field();
    if b.field() != d {
        return Err(Error::DescriptorMismatch);
    }
    let q = finite_order(d, budget)?;
    budget.check(q * q)?;
    let elems: Vec<FieldElement> = enumerate_field(d)?.collect();
    let pows: Vec<FieldElement> = elems.iter().map(|x| x.pow_u(m as u128)).collect();
    let start = usize::from(nonzero_only);
    for i in start..elems.len() {
        for j in start..elems.len() {
            if pows[i].clone() + a.clone() * pows[j].clone() == *b {
                return Ok(Some((elems[i].clone(), elems[j].clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(d: &FieldDescriptor, n: i64) -> FieldElement {
        FieldElement::from_i64(d, n)
    }

    #[test]
    fn power_index_examples() {
        let b = Budget::default();
        let f13 = FieldDescriptor::prime(13).unwrap();
        assert_eq!(power_subgroup_index(&f13, 3, b).unwrap().index, 3);
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(power_subgroup_index(&f7, 5, b).unwrap().index, 1);
        let t = power_subgroup_index(&f7, 2, b).unwrap();
        assert_eq!(t.index, 2);
        assert_eq!(t.representatives, vec![fe(&f7, 1), fe(&f7, 3)]);
        assert!(t.matches_expected());
    }

    #[test]
    fn artin_schreier_examples() {
        let b = Budget::default();
        assert_eq!(artin_schreier_index(&FieldDescriptor::galois(3, 2).unwrap(), b).unwrap().index, 3);
        assert_eq!(artin_schreier_index(&FieldDescriptor::galois(2, 2).unwrap(), b).unwrap().index, 2);
        let t = artin_schreier_index(&FieldDescriptor::prime(5).unwrap(), b).unwrap();
        assert_eq!((t.index, t.subgroup_order), (5, 1));
    }

    #[test]
    fn coset_sum_examples() {
        let b = Budget::default();
        assert!(!coset_sum_covers(&FieldDescriptor::prime(3).unwrap(), 2, b).unwrap().all_cover());
        let r = coset_sum_covers(&FieldDescriptor::prime(13).unwrap(), 2, b).unwrap();
        assert_eq!(r.pairs.len(), 4);
        assert!(r.all_cover());
        assert!(coset_sum_covers(&FieldDescriptor::prime(11).unwrap(), 1, b).unwrap().all_cover());
    }

    #[test]
    fn conic_examples() {
        let b = Budget::default();
        let f7 = FieldDescriptor::prime(7).unwrap();
        let (c, d) = conic_solve(&fe(&f7, 3), &fe(&f7, 5), b).unwrap();
        assert_eq!((c, d), (fe(&f7, 1), fe(&f7, 1)));
        for (a, bb) in [(1, 1), (1, 4), (2, 6)] {
            let (c, d) = conic_solve(&fe(&f7, a), &fe(&f7, bb), b).unwrap();
            assert_eq!(fe(&f7, a) * c.clone() * c + fe(&f7, bb) * d.clone() * d, fe(&f7, 1));
        }
        assert_eq!(conic_solve(&fe(&f7, 0), &fe(&f7, 1), b).err(), Some(Error::ZeroInput));
    }

    #[test]
    fn power_sum_examples() {
        let b = Budget::default();
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(power_sum_solve(3, &fe(&f7, 1), &fe(&f7, 3), false, b).unwrap(), None);
        assert_eq!(power_sum_solve(3, &fe(&f7, 2), &fe(&f7, 4), false, b).unwrap(), Some((fe(&f7, 3), fe(&f7, 3))));
        let f13 = FieldDescriptor::prime(13).unwrap();
        for t in 0..13 {
            assert!(power_sum_solve(3, &fe(&f13, 1), &fe(&f13, t), false, b).unwrap().is_some());
        }
        // 0 = c^3 + e^3 needs e = -c: impossible only when both must be nonzero and -1 is not a cube
        assert!(power_sum_solve(3, &fe(&f7, 1), &fe(&f7, 0), true, b).unwrap().is_some());
    }
}
