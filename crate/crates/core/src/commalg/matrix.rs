use num_traits::{One, Zero};

use super::CommSeries;
use crate::{Error, Result, Q};

/// Square matrix over [`CommSeries`] with shared variable count and truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommMatrix {
    dim: usize,
    nvars: usize,
    trunc: usize,
    entries: Vec<CommSeries>,
}

impl CommMatrix {
    pub fn zero(dim: usize, nvars: usize, trunc: usize) -> Self {
        CommMatrix { dim, nvars, trunc, entries: vec![CommSeries::zero(nvars, trunc); dim * dim] }
    }

    pub fn identity(dim: usize, nvars: usize, trunc: usize) -> Self {
        let mut m = Self::zero(dim, nvars, trunc);
        for i in 0..dim {
            m.entries[i * dim + i] = CommSeries::one(nvars, trunc);
        }
        m
    }

    /// Row-major construction; every entry must share `nvars`.
    pub fn from_rows(rows: Vec<Vec<CommSeries>>) -> Result<Self> {
        let dim = rows.len();
        let first = rows.first().and_then(|r| r.first());
        let nvars = first.map_or(0, CommSeries::nvars);
        let mut trunc = usize::MAX;
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension(format!("row of length {} in a {dim}x{dim} matrix", row.len())));
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(Error::VariableCountMismatch(nvars, e.nvars()));
                }
                trunc = trunc.min(e.trunc());
                entries.push(e);
            }
        }
        let trunc = if dim == 0 { 0 } else { trunc };
        let entries = entries.into_iter().map(|e| e.truncate(trunc)).collect();
        Ok(CommMatrix { dim, nvars, trunc, entries })
    }

    pub fn diagonal(diag: Vec<CommSeries>) -> Result<Self> {
        let n = diag.len();
        let nvars = diag.first().map_or(0, CommSeries::nvars);
        let trunc = diag.iter().map(CommSeries::trunc).min().unwrap_or(0);
        let mut rows = vec![vec![CommSeries::zero(nvars, trunc); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            rows[i][i] = d;
        }
        Self::from_rows(rows)
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

    pub fn get(&self, r: usize, c: usize) -> &CommSeries {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CommSeries) {
        self.entries[r * self.dim + c] = v.truncate(self.trunc);
    }

    pub fn add(&self, other: &CommMatrix) -> CommMatrix {
        assert_eq!(self.dim, other.dim);
        CommMatrix {
            dim: self.dim,
            nvars: self.nvars,
            trunc: self.trunc.min(other.trunc),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CommMatrix) -> CommMatrix {
        assert_eq!(self.dim, other.dim);
        CommMatrix {
            dim: self.dim,
            nvars: self.nvars,
            trunc: self.trunc.min(other.trunc),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &CommMatrix) -> CommMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n, self.nvars, self.trunc.min(other.trunc));
        for r in 0..n {
            for c in 0..n {
                let mut acc = CommSeries::zero(self.nvars, out.trunc);
                for k in 0..n {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_scaled_assign(&(a * b), &Q::one());
                    }
                }
                out.entries[r * n + c] = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> CommSeries {
        let mut t = CommSeries::zero(self.nvars, self.trunc);
        for i in 0..self.dim {
            t.add_scaled_assign(self.get(i, i), &Q::one());
        }
        t
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|r| (r + 1..self.dim).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|r| (0..r).all(|c| self.get(r, c).is_zero()))
    }

    /// `M - I`, provided every entry of it lies in the augmentation ideal.
    fn nilpotent_part(&self) -> Result<CommMatrix> {
        let n = self.sub(&Self::identity(self.dim, self.nvars, self.trunc));
        if n.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return Err(Error::NotUnitMatrix);
        }
        Ok(n)
    }

    /// Determinant of a matrix congruent to `I` modulo positive degree.
    ///
    /// Plain Gaussian elimination: every pivot has constant term 1 and is
    /// therefore invertible in the local ring.
    pub fn det_unit(&self) -> Result<CommSeries> {
        self.nilpotent_part()?;
        let n = self.dim;
        let mut m = self.clone();
        let mut det = CommSeries::one(self.nvars, self.trunc);
        for k in 0..n {
            let pivot = m.get(k, k).clone();
            if !pivot.constant_term().is_one() {
                return Err(Error::NotUnitMatrix);
            }
            let inv = pivot.inv_unit()?;
            det = &det * &pivot;
            for r in k + 1..n {
                if m.get(r, k).is_zero() {
                    continue;
                }
                let factor = m.get(r, k) * &inv;
                for c in k..n {
                    let v = m.get(r, c) - &(&factor * m.get(k, c));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// `tr log M = tr sum_k (-1)^{k+1} (M - I)^k / k`.
    pub fn trlog(&self) -> Result<CommSeries> {
        let nil = self.nilpotent_part()?;
        let mut out = CommSeries::zero(self.nvars, self.trunc);
        let mut power = nil.clone();
        for k in 1..=self.trunc {
            let c = Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), k.into());
            out.add_scaled_assign(&power.trace(), &c);
            power = power.mul(&nil);
        }
        Ok(out)
    }

    /// `M = L U` by peeling off the top-left pivot `u`:
    ///
    /// ```text
    /// M = [u β; α M~],  L = [u 0; α L~],  U = [1 u⁻¹β; 0 U~],
    /// ```
    ///
    /// where `M~ - u⁻¹ α β = L~ U~`. A 1x1 matrix factors as `(1)(m)`.
    pub fn lu_decompose(&self) -> Result<(CommMatrix, CommMatrix)> {
        self.nilpotent_part()?;
        let n = self.dim;
        let mut l = Self::zero(n, self.nvars, self.trunc);
        let mut u = Self::zero(n, self.nvars, self.trunc);
        let mut rest = self.clone();
        for k in 0..n {
            let pivot = rest.get(k, k).clone();
            if !pivot.constant_term().is_one() {
                return Err(Error::NotUnitMatrix);
            }
            if k + 1 == n {
                l.set(k, k, CommSeries::one(self.nvars, self.trunc));
                u.set(k, k, pivot);
                break;
            }
            let inv = pivot.inv_unit()?;
            l.set(k, k, pivot.clone());
            u.set(k, k, CommSeries::one(self.nvars, self.trunc));
            for r in k + 1..n {
                l.set(r, k, rest.get(r, k).clone());
            }
            for c in k + 1..n {
                u.set(k, c, rest.get(k, c) * &inv);
            }
            for r in k + 1..n {
                let alpha = rest.get(r, k).clone();
                if alpha.is_zero() {
                    continue;
                }
                for c in k + 1..n {
                    let v = rest.get(r, c) - &(&alpha * u.get(k, c));
                    rest.set(r, c, v);
                }
            }
        }
        Ok((l, u))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, self.nvars, self.trunc)
    }

    pub fn diagonal_entries(&self) -> impl Iterator<Item = &CommSeries> {
        (0..self.dim).map(move |i| self.get(i, i))
    }
}
