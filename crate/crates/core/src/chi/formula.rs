//! Block-sum evaluation of traces of monomials, independent of the matrix
//! product engine in `eval`.
//!
//! For `f = x^{f_0} z^{e_1} x^{f_1} .. z^{e_k} x^{f_k}`,
//!
//! ```text
//! tr f(X, Z) = sum_{i_1..i_k} tr((Z^{e_1})_{i_1 i_2} .. (Z^{e_k})_{i_k i_1})
//!              x_{i_1}^{f_0} x_{i_2}^{f_1} .. x_{i_k}^{f_{k-1}} x_{i_1}^{f_k}
//! ```
//!
//! with `(Z^e)_{ij}` the `(i, j)` block of `Z^e`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::genfun::{BiWord, TriLetter, TriWord};
use crate::ncalg::{NCSeries, Word};
use crate::rational::RationalMatrix;
use crate::seifert::RationalBlockMatrix;
use crate::Q;

pub(crate) fn trace_monomial_by_blocks(mono: &BiWord, z: &RationalBlockMatrix, trunc: usize) -> NCSeries {
    let structure = &z.structure;
    let n = structure.components();
    let mut out = NCSeries::zero(n, trunc);
    if mono.x_degree() > trunc {
        return out;
    }
    let shape = mono.shape();
    let k = shape.z_runs.len();
    if k == 0 {
        let f0 = shape.x_runs[0];
        for (i, &size) in structure.sizes().iter().enumerate() {
            out.add_term(Word::from_vars(std::iter::repeat_n(i, f0)), Q::from_integer(size.into()));
        }
        return out;
    }
    let mut powers: HashMap<usize, RationalBlockMatrix> = HashMap::new();
    for &e in &shape.z_runs {
        powers
            .entry(e)
            .or_insert_with(|| RationalBlockMatrix { structure: structure.clone(), matrix: z.matrix.pow(e) });
    }
    let mut blocks: HashMap<(usize, usize, usize), RationalMatrix> = HashMap::new();
    let mut block = |e: usize, i: usize, j: usize| -> RationalMatrix {
        blocks.entry((e, i, j)).or_insert_with(|| powers[&e].block(i, j)).clone()
    };
    let mut idx = vec![0usize; k];
    loop {
        if idx.iter().all(|&i| structure.sizes()[i] > 0) {
            let mut prod = block(shape.z_runs[0], idx[0], idx[(1) % k]);
            for j in 1..k {
                prod = prod.mul(&block(shape.z_runs[j], idx[j], idx[(j + 1) % k]));
            }
            let t = prod.trace();
            if !t.is_zero() {
                let mut w = Word::empty();
                for (p, &f) in shape.x_runs.iter().enumerate() {
                    let var = if p < k { idx[p] } else { idx[0] };
                    for _ in 0..f {
                        w.push(var);
                    }
                }
                out.add_term(w, t);
            }
        }
        // odometer over [n]^k
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `tr f'(X, Y, Z)` by enumerating block paths one `z` step at a time. `X`
/// carries `x_1..x_n` (variables `0..n`), `Y` carries `y_1..y_n` (variables
/// `n..2n`). The result is untruncated: its truncation is the number of `x`
/// and `y` letters in `word`.
pub(crate) fn trace_triword_by_paths(word: &TriWord, z: &RationalBlockMatrix) -> NCSeries {
    let structure = &z.structure;
    let n = structure.components();
    let scalar_letters = word.0.iter().filter(|l| **l != TriLetter::Z).count();
    let mut out = NCSeries::zero(2 * n, scalar_letters);
    let mut blocks: HashMap<(usize, usize), RationalMatrix> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            blocks.insert((i, j), z.block(i, j));
        }
    }
    for start in 0..n {
        let size = structure.sizes()[start];
        if size == 0 {
            continue;
        }
        let mut path = PathState { word: Word::empty(), block: start, prod: RationalMatrix::identity(size) };
        extend(&word.0, n, start, &blocks, structure.sizes(), &mut path, &mut out);
    }
    out
}

struct PathState {
    word: Word,
    block: usize,
    prod: RationalMatrix,
}

fn extend(
    rest: &[TriLetter],
    n: usize,
    start: usize,
    blocks: &HashMap<(usize, usize), RationalMatrix>,
    sizes: &[usize],
    state: &mut PathState,
    out: &mut NCSeries,
) {
    let Some((&head, tail)) = rest.split_first() else {
        if state.block == start {
            let t = state.prod.trace();
            out.add_term(state.word.clone(), t);
        }
        return;
    };
    match head {
        TriLetter::X | TriLetter::Y => {
            let var = if head == TriLetter::X { state.block } else { n + state.block };
            state.word.push(var);
            extend(tail, n, start, blocks, sizes, state, out);
            state.word.pop();
        }
        TriLetter::Z => {
            for next in 0..n {
                if sizes[next] == 0 {
                    continue;
                }
                let prod = state.prod.mul(&blocks[&(state.block, next)]);
                if prod.is_zero() {
                    continue;
                }
                let saved_prod = std::mem::replace(&mut state.prod, prod);
                let saved_block = std::mem::replace(&mut state.block, next);
                extend(tail, n, start, blocks, sizes, state, out);
                state.prod = saved_prod;
                state.block = saved_block;
            }
        }
    }
}
