use crate::error::{Error, Result};
use crate::poly::{MultiPoly, RingMatrix};
use crate::scalar::{Field, Ring};

fn check_square<R: Ring>(map: &[MultiPoly<R>]) -> Result<usize> {
    let n = map.len();
    if n == 0 || map.iter().any(|f| f.nvars() != n) {
        return Err(Error::DimensionMismatch(format!(
            "{} component(s) in {:?} variables",
            n,
            map.iter().map(|f| f.nvars()).collect::<Vec<_>>()
        )));
    }
    Ok(n)
}

/// Matrix of formal partials, row i = component i, column j = variable j.
pub fn jacobian<R: Ring>(map: &[MultiPoly<R>]) -> Result<RingMatrix<MultiPoly<R>>> {
    let n = check_square(map)?;
    RingMatrix::new(map.iter().map(|f| (0..n).map(|j| f.partial(j)).collect()).collect())
}

/// Jacobian determinant evaluated exactly at a point.
pub fn jacobian_det_at<F: Field>(map: &[MultiPoly<F>], point: &[F]) -> Result<F> {
    let n = check_square(map)?;
    if point.len() != n {
        return Err(Error::DimensionMismatch(format!("point of length {} for {n} variables", point.len())));
    }
    jacobian(map)?.eval(point)?.det()
}

/// Jacobian determinant as a polynomial (cofactor expansion).
pub fn jacobian_det<R: Ring>(map: &[MultiPoly<R>]) -> Result<MultiPoly<R>> {
    jacobian(map)?.det_cofactor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldDescriptor, FieldElement};
    use crate::poly::elementary_symmetric_poly;

    fn qe(v: i64) -> FieldElement {
        FieldElement::from_i64(&FieldDescriptor::rationals(), v)
    }

    #[test]
    fn jacobian_examples() {
        let z = qe(0);
        let x = |i| MultiPoly::var(2, i, &z);
        let id = vec![x(0), x(1)];
        assert_eq!(jacobian_det_at(&id, &[qe(4), qe(-9)]).unwrap(), qe(1));
        let sq = vec![x(0) * x(0), x(1)];
        assert_eq!(jacobian_det_at(&sq, &[qe(3), qe(7)]).unwrap(), qe(6));
        let e = vec![
            elementary_symmetric_poly(1, 2, &z).unwrap(),
            elementary_symmetric_poly(2, 2, &z).unwrap(),
        ];
        assert_eq!(jacobian_det_at(&e, &[qe(3), qe(1)]).unwrap(), qe(2));
        assert!(matches!(jacobian_det_at(&e, &[qe(3)]), Err(Error::DimensionMismatch(_))));
        let bad = vec![MultiPoly::var(3, 0, &z), MultiPoly::var(3, 1, &z)];
        assert!(matches!(jacobian(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn symbolic_and_pointwise_agree() {
        let z = qe(0);
        let x = |i| MultiPoly::var(3, i, &z);
        let map = vec![x(0) * x(1) + x(2), x(1) * x(1) * x(2), x(0) - x(2) * x(2)];
        let sym = jacobian_det(&map).unwrap();
        let pt = [qe(2), qe(-1), qe(5)];
        assert_eq!(sym.eval(&pt).unwrap(), jacobian_det_at(&map, &pt).unwrap());
    }
}
