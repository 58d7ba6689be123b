//! Dense matrices over F_{q^m}.
//!
//! Entries are [`Elt`]s, so the same type holds matrices over the subfield
//! F_q; rank over F_q equals rank over F_{q^m} for such matrices.

use crate::error::{Error, Result};
use crate::gfield::{Elt, FieldCtx};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elt) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elt] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Elt::ZERO, |acc, k| {
                ctx.add(acc, ctx.mul(self.get(i, k), other.get(k, j)))
            })
        })
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elt::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(Elt) -> Elt) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rank by Gaussian elimination over F_{q^m}.
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut a = self.clone();
        a.eliminate(ctx, self.cols).len()
    }

    /// Row-reduces in place over the first `ncols` columns, returning pivot
    /// columns.
    fn eliminate(&mut self, ctx: &FieldCtx, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if sel != r {
                for k in 0..self.cols {
                    self.data.swap(r * self.cols + k, sel * self.cols + k);
                }
            }
            let inv = ctx.inv(self.get(r, c)).unwrap();
            for k in 0..self.cols {
                let v = ctx.mul(self.get(r, k), inv);
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i == r || f.is_zero() {
                    continue;
                }
                for k in 0..self.cols {
                    let v = ctx.sub(self.get(i, k), ctx.mul(f, self.get(r, k)));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                Elt::ONE
            } else {
                Elt::ZERO
            }
        });
        if aug.eliminate(ctx, n).len() < n {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j)))
    }

    /// Basis of {x : A x = 0} over F_{q^m}.
    pub fn nullspace(&self, ctx: &FieldCtx) -> Vec<Vec<Elt>> {
        let mut a = self.clone();
        let pivots = a.eliminate(ctx, self.cols);
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut x = vec![Elt::ZERO; self.cols];
                x[f] = Elt::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = ctx.neg(a.get(r, f));
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let ctx = FieldCtx::new(3, 1, 3, None).unwrap();
        let g = ctx.generator();
        let a = Matrix::from_fn(3, 3, |i, j| ctx.pow(g, (i * 3 + j * j + 1) as u64));
        if a.rank(&ctx) == 3 {
            let inv = a.inverse(&ctx).unwrap();
            assert_eq!(a.mul(&ctx, &inv), Matrix::identity(3));
        }
        let s = Matrix::from_fn(2, 2, |_, _| g);
        assert_eq!(s.rank(&ctx), 1);
        assert!(s.inverse(&ctx).is_err());
        let ns = s.nullspace(&ctx);
        assert_eq!(ns.len(), 1);
        assert!(s.mul_vec(&ctx, &ns[0]).iter().all(|x| x.is_zero()));
    }
}
