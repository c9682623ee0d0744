//! `chi_f(A) = tr f(X, Z_A) - tr f(X, I_half)` and related evaluations.
//!
//! `X = diag(x_1, .., x_n)` acts by block: every row of block `i` carries the
//! variable `x_i`.

mod eval;
mod formula;
mod torsion;

use num_bigint::BigInt;

use crate::genfun::{prime_monomial, BiSeries, BiWord, Builtin, TriLetter};
use crate::ncalg::{bar_variable, NCMatrix, NCSeries, Word};
use crate::seifert::{i_half, BlockStructure, HalfPattern, SeifertMatrix};
use crate::{Error, Result};

pub use torsion::torsion_polynomial;

#[derive(Clone, Debug)]
pub struct ChiRequest {
    pub f: BiSeries,
    pub a: SeifertMatrix,
    pub n: usize,
    /// Defaults to [`HalfPattern::default_for`].
    pub pattern: Option<HalfPattern>,
}

impl ChiRequest {
    pub fn new(f: BiSeries, a: SeifertMatrix, n: usize) -> Self {
        ChiRequest { f, a, n, pattern: None }
    }

    pub fn with_pattern(mut self, pattern: HalfPattern) -> Self {
        self.pattern = Some(pattern);
        self
    }
}

fn check_xtrunc(f: &BiSeries, n: usize) -> Result<()> {
    if f.xtrunc() < n {
        return Err(Error::InsufficientTruncation { have: f.xtrunc(), need: n });
    }
    Ok(())
}

/// `tr f(X, Z_A)` truncated at degree `n`.
pub fn eval_tr_symbolic(f: &BiSeries, a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    check_xtrunc(f, n)?;
    let z = a.z_matrix()?;
    let vars = a.structure().row_components();
    Ok(eval::trace_eval(f, &vars, a.components(), &z.matrix, n))
}

/// `tr m(X, Z_A)` for a single monomial by summing over block tuples.
pub fn eval_tr_formula(mono: &BiWord, a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    let z = a.z_matrix()?;
    Ok(formula::trace_monomial_by_blocks(mono, &z, n))
}

pub fn chi_f(req: &ChiRequest) -> Result<NCSeries> {
    check_xtrunc(&req.f, req.n)?;
    let structure = req.a.structure();
    let pattern = match &req.pattern {
        Some(p) => p.clone(),
        None => HalfPattern::default_for(structure),
    };
    let half = i_half(structure, &pattern)?;
    let first = eval_tr_symbolic(&req.f, &req.a, req.n)?;
    let vars = structure.row_components();
    let second = eval::trace_eval(&req.f, &vars, req.a.components(), &half.matrix, req.n);
    Ok(&first - &second)
}

pub fn chi(f: &BiSeries, a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    chi_f(&ChiRequest::new(f.clone(), a.clone(), n))
}

pub fn chi_builtin(which: Builtin, a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    chi(&BiSeries::builtin(which, n), a, n)
}

pub fn chi_delta(a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    chi_builtin(Builtin::Delta, a, n)
}

pub fn chi_phi(a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    chi_builtin(Builtin::Phi, a, n)
}

/// `sum_i g_i (x_i - xbar_i)`.
pub fn half_rank_correction(structure: &BlockStructure, n: usize) -> NCSeries {
    let nvars = structure.components();
    let mut out = NCSeries::zero(nvars, n);
    for (i, g) in structure.genera().into_iter().enumerate() {
        let term = &NCSeries::var(nvars, n, i) - &bar_variable(nvars, n, i);
        out.add_scaled_assign(&term, &crate::Q::from_integer(g.into()));
    }
    out
}

/// `tr((I + X I_half)^{-1} X)`, evaluated directly by matrix inversion.
pub fn half_rank_correction_direct(structure: &BlockStructure, n: usize) -> Result<NCSeries> {
    let nvars = structure.components();
    let half = i_half(structure, &HalfPattern::default_for(structure))?;
    let vars = structure.row_components();
    let dim = structure.total();
    let m = NCMatrix::block_scalar(&vars, nvars, n)
        .mul_rational_right(&half.matrix)
        .add(&NCMatrix::identity(dim, nvars, n));
    Ok(m.inv_unit()?.trace_mul_block_scalar(&vars))
}

/// Rebuilds `tr m(X, Z_A)` from `tr m'(X, Y, Z_A)`: the `p`-th `x` of each
/// word becomes `x^{f_p}` and every `y` becomes 1.
pub fn thchi_reconstruct(mono: &BiWord, a: &SeifertMatrix, n: usize) -> Result<NCSeries> {
    let z = a.z_matrix()?;
    let ncomp = a.components();
    let shape = mono.shape();
    let prime = prime_monomial(mono);
    debug_assert_eq!(prime.0.iter().filter(|l| **l == TriLetter::X).count(), shape.x_runs.len());
    let tri = formula::trace_triword_by_paths(&prime, &z);
    let mut out = NCSeries::zero(ncomp, n);
    for (word, c) in tri.terms() {
        let mut rebuilt = Word::empty();
        let mut p = 0;
        for var in word.letters() {
            if var < ncomp {
                for _ in 0..shape.x_runs[p] {
                    rebuilt.push(var);
                }
                p += 1;
            }
        }
        if rebuilt.degree() <= n {
            out.add_term(rebuilt, c.clone());
        }
    }
    Ok(out)
}

/// `(numerator, denominator, one-based letters)` in canonical term order.
pub type Triple = (BigInt, BigInt, Vec<usize>);

pub fn structured_terms(s: &NCSeries) -> Vec<Triple> {
    s.terms().map(|(w, c)| (c.numer().clone(), c.denom().clone(), w.letters().map(|v| v + 1).collect())).collect()
}
