//! Seifert matrices of boundary links.
//!
//! A matrix in `Sei(n)` is an integer matrix partitioned into `n x n` blocks
//! with `A_ij' = A_ji` for `i != j` and `det(A_ii - A_ii') = 1`. From it we
//! derive `S = A - A'` (block diagonal, unimodular) and `Z = A S^{-1}`.

mod io;
mod moves;

use std::fmt;
use std::ops::Range;

use num_traits::One;

use crate::ncalg::NCMatrix;
use crate::rational::RationalMatrix;
use crate::{Error, Result, Q};

pub use io::{parse_seifert, serialize_seifert};
pub use moves::{move_s1, move_s2, StabilizationVariant};

/// Block sizes `2g_1, .., 2g_n`, one block per link component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    sizes: Vec<usize>,
}

impl BlockStructure {
    /// Sizes are not checked for evenness here; [`SeifertMatrix::validate`]
    /// reports odd blocks.
    pub fn new(sizes: Vec<usize>) -> Self {
        BlockStructure { sizes }
    }

    pub fn from_genera(genera: &[usize]) -> Self {
        BlockStructure { sizes: genera.iter().map(|g| 2 * g).collect() }
    }

    pub fn components(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn genera(&self) -> Vec<usize> {
        self.sizes.iter().map(|s| s / 2).collect()
    }

    pub fn range(&self, block: usize) -> Range<usize> {
        let start: usize = self.sizes[..block].iter().sum();
        start..start + self.sizes[block]
    }

    /// Component index of every row, i.e. the variable carried by `X` there.
    pub fn row_components(&self) -> Vec<usize> {
        self.sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
    }

    pub fn concat(&self, other: &BlockStructure) -> BlockStructure {
        BlockStructure { sizes: self.sizes.iter().chain(&other.sizes).copied().collect() }
    }

    pub(crate) fn with_grown_block(&self, block: usize, by: usize) -> BlockStructure {
        let mut sizes = self.sizes.clone();
        sizes[block] += by;
        BlockStructure { sizes }
    }
}

/// Dense square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, data: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(format!("row {} has {} entries, expected {dim}", r + 1, row.len())));
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..self.dim {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_ints(self.dim, self.dim, &self.data)
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> RationalMatrix {
        let (r0, c0) = (rows.start, cols.start);
        RationalMatrix::from_fn(rows.len(), cols.len(), |r, c| Q::from_integer(self.get(r0 + r, c0 + c).into()))
    }
}

/// One failed `Sei(n)` condition. Block indices are zero-based in the data and
/// printed one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OddBlockSize { block: usize, size: usize },
    Asymmetric { row_block: usize, col_block: usize, row: usize, col: usize },
    DiagonalDeterminant { block: usize, det: Q },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddBlockSize { block, size } => write!(f, "block {} has odd size {size}", block + 1),
            Violation::Asymmetric { row_block, col_block, row, col } => write!(
                f,
                "A_{i}{j}' != A_{j}{i}: entry ({}, {}) differs from its transpose",
                row + 1,
                col + 1,
                i = row_block + 1,
                j = col_block + 1
            ),
            Violation::DiagonalDeterminant { block, det } => write!(
                f,
                "det(A_{b}{b} - A_{b}{b}') = {}, expected 1",
                crate::rational::fmt_rational(det),
                b = block + 1
            ),
        }
    }
}

/// Block-partitioned integer matrix; may or may not satisfy the `Sei(n)`
/// axioms, see [`SeifertMatrix::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    structure: BlockStructure,
    entries: IntMatrix,
}

/// An exact-rational matrix sharing a block structure (`Z`, `S`, `I_half`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBlockMatrix {
    pub structure: BlockStructure,
    pub matrix: RationalMatrix,
}

impl RationalBlockMatrix {
    pub fn block(&self, i: usize, j: usize) -> RationalMatrix {
        self.matrix.submatrix(self.structure.range(i), self.structure.range(j))
    }
}

impl SeifertMatrix {
    /// Shape check only: `entries` must be square of size `structure.total()`.
    pub fn new(structure: BlockStructure, entries: IntMatrix) -> Result<Self> {
        if entries.dim() != structure.total() {
            return Err(Error::Dimension(format!(
                "matrix is {0}x{0} but block sizes sum to {1}",
                entries.dim(),
                structure.total()
            )));
        }
        Ok(SeifertMatrix { structure, entries })
    }

    pub fn from_rows(block_sizes: Vec<usize>, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(BlockStructure::new(block_sizes), IntMatrix::from_rows(rows)?)
    }

    /// The 0x0 matrix on `components` genus-0 components.
    pub fn empty(components: usize) -> Self {
        SeifertMatrix { structure: BlockStructure::new(vec![0; components]), entries: IntMatrix::zeros(0) }
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.dim()
    }

    pub fn components(&self) -> usize {
        self.structure.components()
    }

    /// Every violated `Sei(n)` condition; empty iff the matrix is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.components();
        for (b, &size) in self.structure.sizes().iter().enumerate() {
            if size % 2 == 1 {
                out.push(Violation::OddBlockSize { block: b, size });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for r in self.structure.range(i) {
                    for c in self.structure.range(j) {
                        if self.entries.get(r, c) != self.entries.get(c, r) {
                            out.push(Violation::Asymmetric { row_block: i, col_block: j, row: r, col: c });
                        }
                    }
                }
            }
        }
        for b in 0..n {
            if self.structure.sizes()[b] % 2 == 1 {
                continue;
            }
            let det = self.diagonal_s_block(b).det();
            if !det.is_one() {
                out.push(Violation::DiagonalDeterminant { block: b, det });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSeifert(v))
        }
    }

    fn diagonal_s_block(&self, b: usize) -> RationalMatrix {
        let r = self.structure.range(b);
        let a = self.entries.submatrix(r.clone(), r);
        a.sub(&a.transpose())
    }

    /// `S = A - A'`.
    pub fn s_matrix(&self) -> RationalBlockMatrix {
        let a = self.entries.to_rational();
        RationalBlockMatrix { structure: self.structure.clone(), matrix: a.sub(&a.transpose()) }
    }

    /// `(Z, S)` with `S = A - A'` and `Z = A S^{-1}`.
    pub fn z_and_s(&self) -> Result<(RationalBlockMatrix, RationalBlockMatrix)> {
        self.ensure_valid()?;
        let s = self.s_matrix();
        // S is block diagonal, so invert block by block
        let mut s_inv = RationalMatrix::zeros(self.size(), self.size());
        for b in 0..self.components() {
            let r = self.structure.range(b);
            let inv = self.diagonal_s_block(b).inverse().expect("validated blocks have determinant 1");
            for (i, ri) in r.clone().enumerate() {
                for (j, rj) in r.clone().enumerate() {
                    s_inv.set(ri, rj, inv.get(i, j).clone());
                }
            }
        }
        let z = self.entries.to_rational().mul(&s_inv);
        Ok((RationalBlockMatrix { structure: self.structure.clone(), matrix: z }, s))
    }

    pub fn z_matrix(&self) -> Result<RationalBlockMatrix> {
        Ok(self.z_and_s()?.0)
    }

    /// The transpose `A'`, a Seifert matrix of the mirror image.
    pub fn reflect(&self) -> SeifertMatrix {
        SeifertMatrix { structure: self.structure.clone(), entries: self.entries.transpose() }
    }

    /// Block-diagonal sum on the concatenated component list.
    pub fn direct_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (p, q) = (self.size(), other.size());
        let mut m = IntMatrix::zeros(p + q);
        for r in 0..p {
            for c in 0..p {
                m.set(r, c, self.entries.get(r, c));
            }
        }
        for r in 0..q {
            for c in 0..q {
                m.set(p + r, p + c, other.entries.get(r, c));
            }
        }
        SeifertMatrix { structure: self.structure.concat(&other.structure), entries: m }
    }

    /// `X Z_A + I` over the noncommutative series ring, `X = diag(x_i)` by block.
    pub fn presentation_matrix(&self, trunc: usize) -> Result<NCMatrix> {
        let z = self.z_matrix()?;
        let n = self.components();
        let vars = self.structure.row_components();
        let xz = NCMatrix::from_rational(&z.matrix, n, trunc).mul_block_scalar_left(&vars);
        Ok(xz.add(&NCMatrix::identity(self.size(), n, trunc)))
    }
}

/// Diagonal 0/1 pattern with exactly half ones inside every block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPattern(pub Vec<bool>);

impl HalfPattern {
    /// First `g_i` zeros then `g_i` ones in every block.
    pub fn default_for(structure: &BlockStructure) -> Self {
        HalfPattern(
            structure
                .sizes()
                .iter()
                .flat_map(|&s| std::iter::repeat_n(false, s / 2).chain(std::iter::repeat_n(true, s - s / 2)))
                .collect(),
        )
    }

    pub fn check(&self, structure: &BlockStructure) -> Result<()> {
        if self.0.len() != structure.total() {
            return Err(Error::Dimension(format!(
                "half pattern of length {} for matrix size {}",
                self.0.len(),
                structure.total()
            )));
        }
        for b in 0..structure.components() {
            let ones = self.0[structure.range(b)].iter().filter(|&&v| v).count();
            if 2 * ones != structure.sizes()[b] {
                return Err(Error::UnbalancedPattern(b + 1));
            }
        }
        Ok(())
    }

    /// Every balanced pattern, in a fixed order.
    pub fn all_balanced(structure: &BlockStructure) -> Vec<HalfPattern> {
        let mut out = vec![Vec::new()];
        for &size in structure.sizes() {
            let block_patterns: Vec<Vec<bool>> = (0u32..1 << size)
                .filter(|m| 2 * m.count_ones() as usize == size)
                .map(|m| (0..size).map(|i| m >> i & 1 == 1).collect())
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    block_patterns.iter().map(move |bp| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(bp);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(HalfPattern).collect()
    }
}

/// The diagonal matrix `I_half` for a balanced pattern.
pub fn i_half(structure: &BlockStructure, pattern: &HalfPattern) -> Result<RationalBlockMatrix> {
    pattern.check(structure)?;
    let n = structure.total();
    let mut m = RationalMatrix::zeros(n, n);
    for (i, &on) in pattern.0.iter().enumerate() {
        if on {
            m.set(i, i, Q::one());
        }
    }
    Ok(RationalBlockMatrix { structure: structure.clone(), matrix: m })
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_seifert(self))
    }
}

#[cfg(test)]
mod tests;
