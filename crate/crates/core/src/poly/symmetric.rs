use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, RingMatrix};
use crate::scalar::{Field, Ring};

fn check_index(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange(format!("e_{k} in {n} variables")));
    }
    Ok(())
}

/// `e_k(vals)`, via the coefficients of `prod (1 + v t)`.
pub fn elementary_symmetric<R: Ring>(k: usize, vals: &[R]) -> Result<R> {
    check_index(k, vals.len())?;
    let proto = &vals[0];
    let mut e = vec![proto.one_like()];
    for v in vals {
        e.push(proto.zero_like());
        for j in (1..e.len()).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * v.clone();
        }
    }
    Ok(e[k].clone())
}

/// `e_k` in `n` variables as a sparse polynomial with `C(n, k)` terms.
pub fn elementary_symmetric_poly<R: Ring>(k: usize, n: usize, proto: &R) -> Result<MultiPoly<R>> {
    check_index(k, n)?;
    let mut out = MultiPoly::zero(n, proto);
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u32; n];
        for &i in &subset {
            e[i] = 1;
        }
        out = out + MultiPoly::term(Monomial(e), proto.one_like());
        // next k-subset in lexicographic order
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < n - k + i) else { break };
        subset[pos] += 1;
        for i in pos + 1..k {
            subset[i] = subset[i - 1] + 1;
        }
    }
    Ok(out)
}

/// Determinant of the matrix with rows `(1, v_i, v_i^2, ...)`.
pub fn vandermonde_det<F: Field>(vals: &[F]) -> Result<F> {
    if vals.is_empty() {
        return Err(Error::DimensionMismatch("empty Vandermonde".into()));
    }
    let n = vals.len();
    let rows = vals
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(n);
            let mut acc = v.one_like();
            for _ in 0..n {
                row.push(acc.clone());
                acc = acc * v.clone();
            }
            row
        })
        .collect();
    RingMatrix::new(rows)?.det()
}
