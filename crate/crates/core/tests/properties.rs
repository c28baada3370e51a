use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use krasner_core::arith::{conic_solve, four_squares, power_subgroup_index, sopn_check};
use krasner_core::ee::split_cover;
use krasner_core::extensions::{in_u, MonicVector};
use krasner_core::field::hensel::hensel_lift_from_int;
use krasner_core::field::json::{element_from_json, element_to_json};
use krasner_core::field::FieldDescriptor;
use krasner_core::krasner::{build, verify_base_point};
use krasner_core::poly::{elementary_symmetric, vandermonde_det};
use krasner_core::{Budget, Field, FieldElement, FiniteField, PadicNumber, Poly, Ring, RingMatrix};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn finite_field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        prop::sample::select(PRIMES.to_vec()).prop_map(|p| FieldDescriptor::prime(p).unwrap()),
        prop::sample::select(vec![(2u64, 3usize), (3, 2), (5, 2), (2, 4)])
            .prop_map(|(p, k)| FieldDescriptor::galois(p, k).unwrap()),
    ]
}

fn field_with_elements(n: usize) -> impl Strategy<Value = (FieldDescriptor, Vec<FieldElement>)> {
    finite_field().prop_flat_map(move |d| {
        let q = d.order().unwrap();
        let proto = FieldElement::from_i64(&d, 0);
        prop::collection::vec(0..q, n).prop_map(move |idx| (d.clone(), idx.iter().map(|&i| proto.nth_element(i)).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn finite_field_axioms((_, v) in field_with_elements(3)) {
        let (a, b, c) = (v[0].clone(), v[1].clone(), v[2].clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.try_inv().unwrap()).is_one());
            prop_assert!(a.pow_u(a.order() - 1).is_one());
        }
    }

    #[test]
    fn index_round_trips((_, v) in field_with_elements(1)) {
        prop_assert_eq!(v[0].nth_element(v[0].index()), v[0].clone());
    }

    #[test]
    fn element_json_round_trips((d, v) in field_with_elements(1)) {
        prop_assert_eq!(element_from_json(&d, &element_to_json(&v[0])).unwrap(), v[0].clone());
    }

    #[test]
    fn companion_charpoly_recovers_f((d, mut v) in field_with_elements(4)) {
        v.push(FieldElement::from_i64(&d, 1));
        let f = Poly::from_coeffs(v);
        prop_assert_eq!(RingMatrix::companion(&f).unwrap().charpoly().unwrap(), f);
    }

    #[test]
    fn determinant_routes_agree((d, v) in field_with_elements(16)) {
        let _ = d;
        let m = RingMatrix::new(v.chunks(4).map(|r| r.to_vec()).collect()).unwrap();
        let g = m.det().unwrap();
        prop_assert_eq!(m.det_cofactor().unwrap(), g.clone());
        prop_assert_eq!(m.det_ring().unwrap(), g);
    }

    #[test]
    fn vandermonde_is_product_of_differences(vals in prop::collection::vec(-20i64..20, 1..6)) {
        let q = FieldDescriptor::rationals();
        let xs: Vec<FieldElement> = vals.iter().map(|&v| FieldElement::from_i64(&q, v)).collect();
        let mut prod = FieldElement::from_i64(&q, 1);
        for j in 0..xs.len() {
            for i in 0..j {
                prod = prod * (xs[j].clone() - xs[i].clone());
            }
        }
        prop_assert_eq!(vandermonde_det(&xs).unwrap(), prod);
    }

    #[test]
    fn split_cover_expands_products((d, v) in field_with_elements(3)) {
        let c = split_cover(&d, 3).unwrap();
        let coeffs = c.apply(&v).unwrap();
        let mut f = Poly::from_coeffs(vec![FieldElement::from_i64(&d, 1)]);
        for b in &v {
            f = f * Poly::from_coeffs(vec![-b.clone(), FieldElement::from_i64(&d, 1)]);
        }
        prop_assert_eq!(&coeffs[..], &f.coeffs()[..3]);
        let e1 = elementary_symmetric(1, &v).unwrap();
        prop_assert_eq!(coeffs[2].clone(), -e1);
    }

    #[test]
    fn base_point_and_jacobian_identity((d, v) in field_with_elements(2)) {
        let a = MonicVector::new(&d, v).unwrap();
        prop_assume!(in_u(&a).unwrap());
        let r = verify_base_point(&build(&a).unwrap()).unwrap();
        prop_assert!(r.base_point_ok);
        prop_assert!(r.jac_equals_pm_disc);
        prop_assert!(r.jac_invertible);
    }

    #[test]
    fn padic_ring_ops_match_rationals(
        p in prop::sample::select(vec![3u64, 5, 7]),
        (an, ad, bn, bd) in (-400i64..400, 1i64..50, -400i64..400, 1i64..50),
    ) {
        let (x, y) = (rat(an, ad), rat(bn, bd));
        let px = PadicNumber::from_rational(p, 16, &x);
        let py = PadicNumber::from_rational(p, 16, &y);
        prop_assert!(px.add(&py).approx_eq(&PadicNumber::from_rational(p, 16, &(&x + &y))));
        prop_assert!(px.mul(&py).approx_eq(&PadicNumber::from_rational(p, 16, &(&x * &y))));
        if !Zero::is_zero(&x) {
            prop_assert!(px.inv().unwrap().approx_eq(&PadicNumber::from_rational(p, 16, &(BigRational::from_integer(1.into()) / &x))));
        }
    }

    #[test]
    fn hensel_residuals_double(p in prop::sample::select(vec![3u64, 5, 7, 11]), r in 1i64..10) {
        prop_assume!(r % p as i64 != 0);
        let d = FieldDescriptor::padic(p, 24).unwrap();
        let c = r * r + p as i64 * 3;
        let f = Poly::from_ints(&d, &[-c, 0, 1]);
        let (_, trace) = hensel_lift_from_int(&f, r, 24).unwrap();
        prop_assert!(trace.doubles());
    }

    #[test]
    fn conic_pairs_validate(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101]), a in 1i64..1000, b in 1i64..1000) {
        let d = FieldDescriptor::prime(p).unwrap();
        let (fa, fb) = (FieldElement::from_i64(&d, a), FieldElement::from_i64(&d, b));
        prop_assume!(!fa.is_zero() && !fb.is_zero());
        let (c, e) = conic_solve(&fa, &fb, Budget::default()).unwrap();
        prop_assert!((fa * c.clone() * c + fb * e.clone() * e).is_one());
    }

    #[test]
    fn power_index_is_gcd(d in finite_field(), m in 1u64..13) {
        let q = d.order().unwrap();
        let t = power_subgroup_index(&d, m, Budget::default()).unwrap();
        prop_assert!(t.matches_expected());
        prop_assert_eq!(t.representatives.len() as u128, t.index);
        prop_assert_eq!(t.index * t.subgroup_order, q - 1);
    }

    #[test]
    fn four_squares_resum(n in 0i64..1_000_000, d in 1i64..200) {
        let x = rat(n, d);
        let z = four_squares(&x).unwrap();
        prop_assert_eq!(z.iter().fold(BigRational::zero(), |acc, v| acc + v * v), x);
    }

    #[test]
    fn cycles_always_refuted(chain in prop::collection::vec((-100i64..100, 1i64..20), 2..7)) {
        let xs: Vec<BigRational> = chain.iter().map(|&(n, d)| rat(n, d)).collect();
        let v = sopn_check(&xs, true).unwrap();
        prop_assert!(v.cycle_refuted());
        prop_assert_eq!(v.telescoped, Some(rat(-(xs.len() as i64), 1)));
    }
}
