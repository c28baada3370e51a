pub mod arith;
pub mod classify;
pub mod ee;
pub mod krasner;
pub mod padic;

use serde_json::Value;

use krasner_core::ee::point_to_json;
use krasner_core::extensions::MonicVector;
use krasner_core::field::json::element_to_json;
use krasner_core::FieldElement;

pub fn el(x: &FieldElement) -> Value {
    element_to_json(x)
}

pub fn pt(v: &[FieldElement]) -> Value {
    point_to_json(v)
}

pub fn mv(a: &MonicVector) -> Value {
    pt(a.coeffs())
}
