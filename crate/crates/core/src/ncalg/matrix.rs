use num_traits::{One, Zero};

use super::NCSeries;
use crate::rational::RationalMatrix;
use crate::{Error, Result, Q};

/// Square matrix with [`NCSeries`] entries sharing one variable count and
/// truncation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCMatrix {
    dim: usize,
    nvars: usize,
    trunc: usize,
    entries: Vec<NCSeries>,
}

impl NCMatrix {
    pub fn zero(dim: usize, nvars: usize, trunc: usize) -> Self {
        NCMatrix { dim, nvars, trunc, entries: vec![NCSeries::zero(nvars, trunc); dim * dim] }
    }

    pub fn identity(dim: usize, nvars: usize, trunc: usize) -> Self {
        let mut m = Self::zero(dim, nvars, trunc);
        for i in 0..dim {
            m.entries[i * dim + i] = NCSeries::one(nvars, trunc);
        }
        m
    }

    /// Constant matrix with the given rational entries.
    pub fn from_rational(w: &RationalMatrix, nvars: usize, trunc: usize) -> Self {
        assert!(w.is_square());
        let dim = w.rows();
        let mut m = Self::zero(dim, nvars, trunc);
        for r in 0..dim {
            for (c, v) in w.row_nonzeros(r) {
                m.entries[r * dim + c] = NCSeries::constant(nvars, trunc, v.clone());
            }
        }
        m
    }

    /// The diagonal matrix whose `r`-th entry is `x_{vars[r]}`.
    pub fn block_scalar(vars: &[usize], nvars: usize, trunc: usize) -> Self {
        let dim = vars.len();
        let mut m = Self::zero(dim, nvars, trunc);
        for (r, &v) in vars.iter().enumerate() {
            m.entries[r * dim + r] = NCSeries::var(nvars, trunc, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, r: usize, c: usize) -> &NCSeries {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: NCSeries) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[r * self.dim + c] = v.truncate(self.trunc);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCSeries::is_zero)
    }

    pub fn add(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.dim, other.dim);
        NCMatrix {
            dim: self.dim,
            nvars: self.nvars,
            trunc: self.trunc.min(other.trunc),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.dim, other.dim);
        NCMatrix {
            dim: self.dim,
            nvars: self.nvars,
            trunc: self.trunc.min(other.trunc),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &NCMatrix) -> NCMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n, self.nvars, self.trunc.min(other.trunc));
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let p = a * b;
                        out.entries[r * n + c].add_scaled_assign(&p, &Q::one());
                    }
                }
            }
        }
        out
    }

    /// `self * diag(x_{vars[0]}, ..)`: column `c` is multiplied on the right by
    /// `x_{vars[c]}`.
    pub fn mul_block_scalar_right(&self, vars: &[usize]) -> NCMatrix {
        assert_eq!(vars.len(), self.dim);
        let mut out = self.clone();
        for r in 0..self.dim {
            for (c, &v) in vars.iter().enumerate() {
                let e = &mut out.entries[r * self.dim + c];
                if !e.is_zero() {
                    *e = e.mul_var_right(v);
                }
            }
        }
        out
    }

    /// `diag(x_{vars[0]}, ..) * self`.
    pub fn mul_block_scalar_left(&self, vars: &[usize]) -> NCMatrix {
        assert_eq!(vars.len(), self.dim);
        let mut out = self.clone();
        for (r, &v) in vars.iter().enumerate() {
            for c in 0..self.dim {
                let e = &mut out.entries[r * self.dim + c];
                if !e.is_zero() {
                    *e = e.mul_var_left(v);
                }
            }
        }
        out
    }

    /// `self * w` for a constant rational matrix `w`.
    pub fn mul_rational_right(&self, w: &RationalMatrix) -> NCMatrix {
        assert_eq!((w.rows(), w.cols()), (self.dim, self.dim));
        let n = self.dim;
        let mut out = Self::zero(n, self.nvars, self.trunc);
        for r in 0..n {
            for l in 0..n {
                let a = self.get(r, l);
                if a.is_zero() {
                    continue;
                }
                for (c, v) in w.row_nonzeros(l) {
                    out.entries[r * n + c].add_scaled_assign(a, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> NCSeries {
        let mut t = NCSeries::zero(self.nvars, self.trunc);
        for i in 0..self.dim {
            t.add_scaled_assign(self.get(i, i), &Q::one());
        }
        t
    }

    /// `tr(self * w)` without forming the product.
    pub fn trace_mul_rational(&self, w: &RationalMatrix) -> NCSeries {
        let mut t = NCSeries::zero(self.nvars, self.trunc);
        for r in 0..self.dim {
            for l in 0..self.dim {
                let v = w.get(l, r);
                if !v.is_zero() {
                    t.add_scaled_assign(self.get(r, l), v);
                }
            }
        }
        t
    }

    /// `tr(self * diag(x_{vars[..]}))` without forming the product.
    pub fn trace_mul_block_scalar(&self, vars: &[usize]) -> NCSeries {
        let mut t = NCSeries::zero(self.nvars, self.trunc);
        for (i, &v) in vars.iter().enumerate() {
            let e = self.get(i, i);
            if !e.is_zero() {
                t.add_scaled_assign(&e.mul_var_right(v), &Q::one());
            }
        }
        t
    }

    /// Inverse of a matrix congruent to the identity modulo positive degree,
    /// as `sum_k (I - M)^k`.
    pub fn inv_unit(&self) -> Result<NCMatrix> {
        let id = Self::identity(self.dim, self.nvars, self.trunc);
        let u = id.sub(self);
        if u.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return Err(Error::NotUnitMatrix);
        }
        let mut out = id.clone();
        let mut power = id;
        for _ in 0..self.trunc {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// True when every entry is a constant equal to the identity's.
    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    e.len() == 1 && e.constant_term().is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Word;

    #[test]
    fn block_scalar_products_agree_with_general_product() {
        let w = RationalMatrix::from_ints(2, 2, &[1, 1, -1, 0]);
        let vars = [0, 1];
        let x = NCMatrix::block_scalar(&vars, 2, 3);
        let m = NCMatrix::from_rational(&w, 2, 3);
        assert_eq!(m.mul_block_scalar_right(&vars), m.mul(&x));
        assert_eq!(m.mul_block_scalar_left(&vars), x.mul(&m));
        let xm = x.mul(&m);
        assert_eq!(xm.mul_rational_right(&w), xm.mul(&m));
        assert_eq!(xm.trace_mul_rational(&w), xm.mul(&m).trace());
        assert_eq!(xm.trace_mul_block_scalar(&vars), xm.mul(&x).trace());
    }

    #[test]
    fn unit_inverse() {
        let w = RationalMatrix::from_ints(2, 2, &[1, 1, -1, 0]);
        let x = NCMatrix::block_scalar(&[0, 0], 1, 4);
        let m = NCMatrix::identity(2, 1, 4).add(&x.mul_rational_right(&w));
        let inv = m.inv_unit().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let bad = NCMatrix::from_rational(&w, 1, 4);
        assert_eq!(bad.inv_unit(), Err(Error::NotUnitMatrix));
        assert_eq!(m.get(0, 1).coeff(&Word::letter(0)), Q::one());
    }
}
