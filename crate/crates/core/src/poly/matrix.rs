use std::sync::Arc;

use super::{same_ring, Polynomial, Ring};
use crate::error::{Error, Result};

/// Dense matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Shape("ragged matrix rows".into()));
            }
            for e in row {
                if !same_ring(e.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { Polynomial::one(ring) } else { Polynomial::zero(ring) })
            .collect();
        PolyMatrix { ring: ring.clone(), rows: n, cols: n, entries }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        PolyMatrix::from_rows(&self.ring, rows)
    }

    /// Exact determinant: cofactor expansion up to 3x3, fraction-free
    /// Bareiss elimination above that.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let e = |i: usize, j: usize| self.get(i, j);
        Ok(match n {
            0 => Polynomial::one(&self.ring),
            1 => e(0, 0).clone(),
            2 => &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0)),
            3 => {
                let minor = |a: usize, b: usize| &(e(1, a) * e(2, b)) - &(e(1, b) * e(2, a));
                let t0 = e(0, 0) * &minor(1, 2);
                let t1 = e(0, 1) * &minor(0, 2);
                let t2 = e(0, 2) * &minor(0, 1);
                &(&t0 - &t1) + &t2
            }
            _ => self.det_bareiss(),
        })
    }

    pub(crate) fn det_bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = self.to_rows();
        let mut prev = Polynomial::one(&self.ring);
        let mut negate = false;
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Polynomial::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .div_exact(&prev)
                        .expect("same ring")
                        .expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

/// Determinant of the Hessian matrix `(d_i d_j gamma)`.
pub fn hessian_det(gamma: &Polynomial) -> Polynomial {
    let grad = gamma.jacobian();
    let rows = grad.iter().map(|g| g.jacobian()).collect();
    PolyMatrix::from_rows(gamma.ring(), rows)
        .and_then(|m| m.det())
        .expect("hessian is square")
}

impl Polynomial {
    pub fn hessian_det(&self) -> Polynomial {
        hessian_det(self)
    }
}
