//! Newton–Hensel root lifting over Q_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{int_valuation, mod_inverse, ppow, FieldDescriptor, FieldElement, PadicNumber};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Residual valuations `v(f(x_i))` for each Newton iterate, plus `v(f'(x0))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselTrace {
    pub residual_valuations: Vec<i64>,
    pub derivative_valuation: i64,
    /// Absolute precision at which residuals were computed.
    pub working_precision: i64,
}

impl HenselTrace {
    /// Every step strictly increases the residual and reaches at least
    /// `2 e - 2 k` (or the working precision).
    pub fn doubles(&self) -> bool {
        let k = self.derivative_valuation;
        self.residual_valuations.windows(2).all(|w| {
            let bound = (2 * w[0] - 2 * k).min(self.working_precision);
            w[1] > w[0] && w[1] >= bound
        })
    }
}

pub(crate) fn integer_coeffs(f: &Poly<FieldElement>, p: u64) -> Result<(Vec<BigInt>, i64)> {
    // scale to a primitive integral polynomial
    let pads: Vec<&PadicNumber> = f
        .coeffs()
        .iter()
        .map(|c| c.as_padic().ok_or_else(|| Error::UnsupportedField("Hensel lifting needs Q_p".into())))
        .collect::<Result<_>>()?;
    let shift = pads
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.valuation().unwrap().unwrap())
        .min()
        .ok_or(Error::ZeroInput)?;
    let cap = pads
        .iter()
        .filter_map(|c| c.absolute_precision())
        .map(|a| a - shift)
        .min()
        .unwrap_or(i64::MAX / 4);
    if cap < 1 {
        return Err(Error::PrecisionExhausted("coefficients carry no integral digits".into()));
    }
    let m = BigInt::from(ppow(p, cap as u32));
    let out = pads
        .iter()
        .map(|c| match c.valuation_bound() {
            Some(v) if !c.is_zero() => {
                let shifted = BigInt::from(ppow(p, (v - shift) as u32)) * BigInt::from(c.unit().clone());
                shifted.mod_floor(&m)
            }
            _ => BigInt::zero(),
        })
        .collect();
    Ok((out, cap))
}

fn eval_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn deriv(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect()
}

/// Lifts `x0` to a root of `f` correct to `target_precision` absolute digits.
///
/// Requires `v(f(x0)) > 2 v(f'(x0))` after scaling `f` to a primitive
/// integral polynomial; `x0` must be integral.
pub fn hensel_lift_root(
    f: &Poly<FieldElement>,
    x0: &PadicNumber,
    target_precision: u32,
) -> Result<(PadicNumber, HenselTrace)> {
    let field = f.field().clone();
    let p = field.prime_number().filter(|_| field.is_padic()).ok_or_else(|| {
        Error::UnsupportedField("Hensel lifting needs Q_p".into())
    })?;
    let (coeffs, cap) = integer_coeffs(f, p)?;
    if target_precision as i64 > cap {
        return Err(Error::PrecisionExhausted(format!(
            "target {target_precision} exceeds coefficient precision {cap}"
        )));
    }
    let m = BigInt::from(ppow(p, cap as u32));
    let mut x = if x0.is_zero() {
        BigInt::zero()
    } else {
        match x0.valuation()? {
            Some(v) if v < 0 => {
                return Err(Error::HenselHypothesisFailed {
                    residual: "x0 not integral".into(),
                    twice_derivative: "-".into(),
                })
            }
            _ => {
                let digits = x0.absolute_precision().unwrap().min(cap) as u32;
                x0.to_integer_mod(digits)?
            }
        }
    };
    let df = deriv(&coeffs);
    let val = |n: &BigInt| int_valuation(p, n).unwrap_or(cap).min(cap);
    let fx = eval_mod(&coeffs, &x, &m);
    let dfx = eval_mod(&df, &x, &m);
    let k = val(&dfx);
    let mut e = val(&fx);
    if k >= cap || e <= 2 * k {
        return Err(Error::HenselHypothesisFailed { residual: e.to_string(), twice_derivative: (2 * k).to_string() });
    }
    let mut trace = HenselTrace { residual_valuations: vec![e], derivative_valuation: k, working_precision: cap };
    let pk = BigInt::from(p).pow(k as u32);
    while e < target_precision as i64 && e < cap {
        let fx = eval_mod(&coeffs, &x, &m);
        let dfx = eval_mod(&df, &x, &m);
        // h = f(x) / f'(x) = (f(x) / p^k) * (f'(x) / p^k)^-1
        let unit = mod_inverse(&(dfx / &pk), &m).expect("unit part of f'");
        let h = ((fx / &pk) * unit).mod_floor(&m);
        x = (x - h).mod_floor(&m);
        let next = val(&eval_mod(&coeffs, &x, &m));
        trace.residual_valuations.push(next);
        if next <= e {
            return Err(Error::PrecisionExhausted("Newton step failed to improve residual".into()));
        }
        e = next;
    }
    // the true root agrees with x to e - k digits
    let abs = e.min(cap) - k;
    let root = if x.is_zero() {
        PadicNumber::inexact_zero(p, abs)
    } else {
        let v = int_valuation(p, &x).unwrap();
        if v >= abs {
            PadicNumber::inexact_zero(p, abs)
        } else {
            PadicNumber::from_unit(p, 0, &x, (abs - v) as u32)?
        }
    };
    Ok((root, trace))
}

/// Convenience wrapper taking an integer seed.
pub fn hensel_lift_from_int(
    f: &Poly<FieldElement>,
    x0: i64,
    target_precision: u32,
) -> Result<(PadicNumber, HenselTrace)> {
    let field: &FieldDescriptor = f.field();
    let prec = field.padic_precision().ok_or_else(|| Error::UnsupportedField("Hensel lifting needs Q_p".into()))?;
    let seed = PadicNumber::from_i64(field.prime_number().unwrap(), prec, x0);
    hensel_lift_root(f, &seed, target_precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    #[test]
    fn sqrt_two_in_q7() {
        let q7 = FieldDescriptor::padic(7, 12).unwrap();
        let f = Poly::from_ints(&q7, &[-2, 0, 1]);
        let (r, trace) = hensel_lift_from_int(&f, 3, 6).unwrap();
        assert_eq!(r.digits()[0], 3);
        let re = FieldElement::from_padic(&q7, r).unwrap();
        let two = FieldElement::from_i64(&q7, 2);
        let diff = (re.clone() * re - two).as_padic().unwrap().clone();
        assert!(diff.is_zero() || diff.valuation().unwrap().unwrap() >= 6);
        assert!(trace.doubles(), "{trace:?}");
        assert!(*trace.residual_valuations.last().unwrap() >= 6);
    }

    #[test]
    fn linear_is_immediate() {
        let q7 = FieldDescriptor::padic(7, 12).unwrap();
        let f = Poly::from_ints(&q7, &[-5, 1]);
        let (r, _) = hensel_lift_from_int(&f, 5, 10).unwrap();
        let five = FieldElement::from_i64(&q7, 5);
        assert_eq!(FieldElement::from_padic(&q7, r).unwrap(), five);
    }

    #[test]
    fn hypothesis_failure() {
        let q5 = FieldDescriptor::padic(5, 12).unwrap();
        let f = Poly::from_ints(&q5, &[-5, 0, 1]);
        assert!(matches!(hensel_lift_from_int(&f, 0, 6), Err(Error::HenselHypothesisFailed { .. })));
    }

    #[test]
    fn target_beyond_precision() {
        let q5 = FieldDescriptor::padic(5, 4).unwrap();
        let f = Poly::from_ints(&q5, &[-6, 0, 1]);
        assert!(matches!(hensel_lift_from_int(&f, 1, 9), Err(Error::PrecisionExhausted(_))));
        let _ = f.zero_elem().is_zero();
    }
}
