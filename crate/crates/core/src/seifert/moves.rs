use num_traits::{One, Signed};

use super::{IntMatrix, SeifertMatrix};
use crate::{Error, Result};

/// Which bordered shape an S2 stabilization uses: the trailing 2x2 corner is
/// `[[0, 1], [0, 0]]` for `A` and `[[0, 0], [1, 0]]` for `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilizationVariant {
    A,
    B,
}

/// S1: congruence `A -> P A P'` by a block-diagonal unimodular `P`.
pub fn move_s1(a: &SeifertMatrix, p: &IntMatrix) -> Result<SeifertMatrix> {
    let s = &a.structure;
    if p.dim() != a.size() {
        return Err(Error::InvalidMove(format!("P is {0}x{0}, A is {1}x{1}", p.dim(), a.size())));
    }
    let comps = s.row_components();
    for r in 0..p.dim() {
        for c in 0..p.dim() {
            if comps[r] != comps[c] && p.get(r, c) != 0 {
                return Err(Error::InvalidMove(format!("P is not block diagonal at ({}, {})", r + 1, c + 1)));
            }
        }
    }
    for b in 0..s.components() {
        let range = s.range(b);
        if range.is_empty() {
            continue;
        }
        let det = p.submatrix(range.clone(), range).det();
        if !det.abs().is_one() {
            return Err(Error::InvalidMove(format!("block {} of P has determinant {det}, not ±1", b + 1)));
        }
    }
    let entries = p.mul(&a.entries).mul(&p.transpose());
    Ok(SeifertMatrix { structure: s.clone(), entries })
}

/// S2: borders `A` by two rows and columns placed at the end of component
/// `component`'s block (zero-based):
///
/// ```text
/// [ A   rho 0 ]        [ A   rho 0 ]
/// [ rho' 0  1 ]   or   [ rho' 0  0 ]
/// [ 0    0  0 ]        [ 0    1  0 ]
/// ```
pub fn move_s2(
    a: &SeifertMatrix,
    component: usize,
    variant: StabilizationVariant,
    rho: &[i64],
) -> Result<SeifertMatrix> {
    if component >= a.components() {
        return Err(Error::InvalidMove(format!("component {} out of range 1..={}", component + 1, a.components())));
    }
    if rho.len() != a.size() {
        return Err(Error::InvalidMove(format!("rho has length {}, expected {}", rho.len(), a.size())));
    }
    let insert_at = a.structure.range(component).end;
    let (p, q) = (insert_at, insert_at + 1);
    let old_to_new = |i: usize| if i < insert_at { i } else { i + 2 };
    let mut m = IntMatrix::zeros(a.size() + 2);
    for r in 0..a.size() {
        for c in 0..a.size() {
            m.set(old_to_new(r), old_to_new(c), a.entries.get(r, c));
        }
        m.set(old_to_new(r), p, rho[r]);
        m.set(p, old_to_new(r), rho[r]);
    }
    match variant {
        StabilizationVariant::A => m.set(p, q, 1),
        StabilizationVariant::B => m.set(q, p, 1),
    }
    Ok(SeifertMatrix { structure: a.structure.with_grown_block(component, 2), entries: m })
}
