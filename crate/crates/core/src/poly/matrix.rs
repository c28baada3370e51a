use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Poly};
use crate::scalar::{Field, Ring};

/// Square matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    rows: Vec<Vec<R>>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(RingMatrix { rows })
    }

    pub fn identity(n: usize, proto: &R) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect())
            .collect();
        RingMatrix { rows }
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-f_i` in the last column, so its characteristic polynomial is `f`.
    pub fn companion(f: &Poly<R>) -> Result<Self> {
        let n = f.degree().filter(|&n| n >= 1).ok_or(Error::ConstantInput)?;
        if !f.is_monic() {
            return Err(Error::InvalidDescriptor("companion matrix needs a monic polynomial".into()));
        }
        let z = f.zero_elem();
        let mut rows = vec![vec![z.clone(); n]; n];
        for i in 1..n {
            rows[i][i - 1] = z.one_like();
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[n - 1] = -f.coeff(i);
        }
        Ok(RingMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.rows[i][j]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<RingMatrix<S>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect::<Result<Vec<S>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix { rows })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim();
        let z = self.rows[0][0].zero_like();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(z.clone(), |acc, k| acc + self.rows[i][k].clone() * o.rows[k][j].clone())
                    })
                    .collect()
            })
            .collect();
        RingMatrix { rows }
    }

    fn check_limit(&self) -> Result<()> {
        if self.dim() > R::MATRIX_LIMIT {
            return Err(Error::DimensionTooLarge(self.dim()));
        }
        Ok(())
    }

    /// Laplace expansion, memoized over column subsets so each minor is
    /// formed once (`n 2^n` ring products). Division-free.
    pub fn det_cofactor(&self) -> Result<R> {
        self.check_limit()?;
        let n = self.dim();
        let z = self.rows[0][0].zero_like();
        // minors[mask]: determinant of rows 0..|mask| against the columns in mask
        let mut minors = vec![z.clone(); 1 << n];
        minors[0] = z.one_like();
        for mask in 1usize..1 << n {
            let k = mask.count_ones() as usize;
            let row = &self.rows[k - 1];
            let mut acc = z.clone();
            for c in 0..n {
                if mask & (1 << c) == 0 || row[c].is_zero() {
                    continue;
                }
                let sub = &minors[mask & !(1 << c)];
                if sub.is_zero() {
                    continue;
                }
                let term = row[c].clone() * sub.clone();
                let above = (mask >> (c + 1)).count_ones();
                acc = if above % 2 == 0 { acc + term } else { acc - term };
            }
            minors[mask] = acc;
        }
        Ok(minors[(1 << n) - 1].clone())
    }

    /// Characteristic polynomial `det(xI - M)` by the Samuelson–Berkowitz
    /// recurrence, which never divides and so is valid in any characteristic.
    pub fn charpoly(&self) -> Result<Poly<R>> {
        self.check_limit()?;
        let n = self.dim();
        let a = &self.rows;
        let z = a[0][0].zero_like();
        // p holds coefficients from the leading one downwards
        let mut p = vec![z.one_like()];
        for k in 0..n {
            // leading k x k block, row R = a[k][0..k], column C = a[0..k][k]
            let mut col = vec![z.one_like(), -a[k][k].clone()];
            let mut v: Vec<R> = (0..k).map(|i| a[i][k].clone()).collect();
            for _ in 0..k {
                let rc = (0..k).fold(z.clone(), |acc, j| acc + a[k][j].clone() * v[j].clone());
                col.push(-rc);
                v = (0..k)
                    .map(|i| (0..k).fold(z.clone(), |acc, j| acc + a[i][j].clone() * v[j].clone()))
                    .collect();
            }
            // lower-triangular Toeplitz (k+2) x (k+1) times p
            let next: Vec<R> = (0..k + 2)
                .map(|i| {
                    (0..=k.min(i)).fold(z.clone(), |acc, j| {
                        if i - j < col.len() && j < p.len() {
                            acc + col[i - j].clone() * p[j].clone()
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            p = next;
        }
        p.reverse();
        Ok(Poly::new(p, z))
    }

    /// Determinant through the characteristic polynomial (division-free).
    pub fn det_ring(&self) -> Result<R> {
        let cp = self.charpoly()?;
        let c0 = cp.coeff(0);
        Ok(if self.dim() % 2 == 1 { -c0 } else { c0 })
    }
}

impl<F: Field> RingMatrix<F> {
    /// Gaussian elimination determinant.
    pub fn det(&self) -> Result<F> {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut det = m[0][0].one_like();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Ok(m[0][0].zero_like());
            };
            if piv != c {
                m.swap(piv, c);
                det = -det;
            }
            let inv = m[c][c].try_inv()?;
            det = det * m[c][c].clone();
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].clone() * inv.clone();
                for k in c..n {
                    m[r][k] = m[r][k].clone() - f.clone() * m[c][k].clone();
                }
            }
        }
        Ok(det)
    }
}

impl<R: Ring> RingMatrix<MultiPoly<R>> {
    pub fn eval(&self, point: &[R]) -> Result<RingMatrix<R>> {
        self.try_map(|e| e.eval(point))
    }
}
