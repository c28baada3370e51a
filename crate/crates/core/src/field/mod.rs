//! Exact arithmetic over Q, F_p, F_q and truncated Q_p, plus p-adic
//! valuation, square testing and Hensel root lifting.

mod descriptor;
mod element;
pub mod hensel;
pub mod json;
pub mod modular;
mod padic;

use num_bigint::BigInt;
use num_traits::Zero;

pub use descriptor::{FieldDescriptor, FieldKind};
pub use element::{ElementValue, FieldElement};
pub use hensel::{hensel_lift_root, HenselTrace};
pub use padic::PadicNumber;

pub(crate) use element::nth_element;
pub(crate) use padic::{mod_inverse, ppow, split_valuation};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Checked field arithmetic. Binary operations need `y`.
pub fn arith(op: ArithOp, x: &FieldElement, y: Option<&FieldElement>) -> Result<FieldElement> {
    let binary = |y: Option<&FieldElement>| -> Result<FieldElement> {
        let y = y.ok_or_else(|| Error::Parse("binary operation needs two operands".into()))?;
        if x.field() != y.field() {
            return Err(Error::DescriptorMismatch);
        }
        Ok(y.clone())
    };
    let out = match op {
        ArithOp::Add => x.clone() + binary(y)?,
        ArithOp::Sub => x.clone() - binary(y)?,
        ArithOp::Mul => x.clone() * binary(y)?,
        ArithOp::Div => x.try_div(&binary(y)?)?,
        ArithOp::Neg => -x.clone(),
        ArithOp::Inv => x.try_inv()?,
    };
    if let Some(pd) = out.as_padic() {
        if pd.is_inexact_zero() && !matches!(op, ArithOp::Neg) {
            // every known digit cancelled
            return Err(Error::PrecisionExhausted(format!("result is {pd}")));
        }
    }
    Ok(out)
}

/// p-adic valuation; `None` stands for +inf.
pub type Valuation = Option<i64>;

/// Valuation of a p-adic element, or of a rational at the explicit prime.
pub fn padic_val(x: &FieldElement, prime: Option<u64>) -> Result<Valuation> {
    match x.value() {
        ElementValue::Padic(pd) => pd.valuation(),
        ElementValue::Rational(r) => {
            let p = prime.ok_or_else(|| Error::UnsupportedField("valuation on Q needs a prime".into()))?;
            if !modular::is_prime(p) {
                return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
            }
            Ok(rational_valuation(p, r))
        }
        _ => Err(Error::UnsupportedField(format!("no nontrivial valuation on {}", x.field()))),
    }
}

pub fn rational_valuation(p: u64, r: &num_rational::BigRational) -> Valuation {
    if Zero::is_zero(r) {
        return None;
    }
    Some(split_valuation(p, r.numer()).0 - split_valuation(p, r.denom()).0)
}

pub fn int_valuation(p: u64, n: &BigInt) -> Valuation {
    if Zero::is_zero(n) {
        None
    } else {
        Some(split_valuation(p, n).0)
    }
}

/// Whether `x` is a square in its field (finite fields and odd-p Q_p).
pub fn is_square(x: &FieldElement) -> Result<bool> {
    match x.value() {
        ElementValue::Padic(pd) => pd.is_square(),
        ElementValue::Rational(_) => Err(Error::UnsupportedField("square test over Q".into())),
        _ => {
            if x.is_zero() {
                return Err(Error::ZeroInput);
            }
            let q = x.field().order().unwrap();
            if x.field().characteristic() == 2 {
                return Ok(true);
            }
            Ok(x.pow_u((q - 1) / 2).is_one())
        }
    }
}

/// Every element of a finite field, each exactly once, in index order.
pub fn enumerate_field(d: &FieldDescriptor) -> Result<impl Iterator<Item = FieldElement> + '_> {
    let q = d.order().ok_or(Error::InfiniteField)?;
    Ok((0..q).map(move |i| nth_element(d, i)))
}
