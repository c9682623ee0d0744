//! Seeded generators for test inputs: Seifert matrices, S-equivalence moves,
//! monomials and unit matrices. All randomness comes from an explicit seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commalg::{CommMatrix, CommSeries, Monomial};
use crate::genfun::{BiWord, Letter};
use crate::ncalg::{NCSeries, Word};
use crate::seifert::{move_s1, move_s2, BlockStructure, IntMatrix, SeifertMatrix, StabilizationVariant};
use crate::Q;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `A_ii = Q + Q' + J_{g_i}` with `J_g` the block sum of `[[0, 1], [0, 0]]`,
/// uniform off-diagonal blocks `A_ij` for `i < j`, and `A_ji = A_ij'`.
pub fn random_seifert(seed: u64, genera: &[usize], bound: i64) -> SeifertMatrix {
    random_seifert_with(&mut rng_from_seed(seed), genera, bound)
}

pub fn random_seifert_with<R: Rng>(rng: &mut R, genera: &[usize], bound: i64) -> SeifertMatrix {
    assert!(bound >= 0);
    let structure = BlockStructure::from_genera(genera);
    let size = structure.total();
    let comps = structure.row_components();
    let mut m = IntMatrix::zeros(size);
    for r in 0..size {
        for c in r..size {
            let v = rng.gen_range(-bound..=bound);
            if comps[r] == comps[c] {
                // symmetric part Q + Q'
                let w = if r == c { 2 * v } else { v + rng.gen_range(-bound..=bound) };
                m.set(r, c, w);
                m.set(c, r, w);
            } else {
                m.set(r, c, v);
                m.set(c, r, v);
            }
        }
    }
    for b in 0..structure.components() {
        let start = structure.range(b).start;
        for h in 0..genera[b] {
            let i = start + 2 * h;
            m.set(i, i + 1, m.get(i, i + 1) + 1);
        }
    }
    SeifertMatrix::new(structure, m).expect("shape matches by construction")
}

/// Genera for `1..=max_components` components, each in `0..=max_genus`.
pub fn random_genera<R: Rng>(rng: &mut R, max_components: usize, max_genus: usize) -> Vec<usize> {
    let n = rng.gen_range(1..=max_components);
    (0..n).map(|_| rng.gen_range(0..=max_genus)).collect()
}

/// Product of elementary unimodular operations on a `dim x dim` identity.
pub fn random_unimodular<R: Rng>(rng: &mut R, dim: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(dim);
    if dim == 0 {
        return m;
    }
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if dim > 1 => {
                let i = rng.gen_range(0..dim);
                let mut j = rng.gen_range(0..dim - 1);
                if j >= i {
                    j += 1;
                }
                let k = *[-1i64, 1, 2, -2].choose(rng).unwrap();
                for c in 0..dim {
                    m.set(i, c, m.get(i, c) + k * m.get(j, c));
                }
            }
            1 if dim > 1 => {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                for c in 0..dim {
                    let t = m.get(i, c);
                    m.set(i, c, m.get(j, c));
                    m.set(j, c, t);
                }
            }
            _ => {
                let i = rng.gen_range(0..dim);
                for c in 0..dim {
                    m.set(i, c, -m.get(i, c));
                }
            }
        }
    }
    m
}

/// Block-diagonal unimodular matrix adapted to `structure`.
pub fn random_block_unimodular<R: Rng>(rng: &mut R, structure: &BlockStructure) -> IntMatrix {
    let mut p = IntMatrix::zeros(structure.total());
    for b in 0..structure.components() {
        let r = structure.range(b);
        let block = random_unimodular(rng, r.len(), 3);
        for (i, ri) in r.clone().enumerate() {
            for (j, rj) in r.clone().enumerate() {
                p.set(ri, rj, block.get(i, j));
            }
        }
    }
    p
}

/// Applies one random S1 or S2 move.
pub fn random_move<R: Rng>(rng: &mut R, a: &SeifertMatrix, rho_bound: i64) -> SeifertMatrix {
    if rng.gen_bool(0.5) && a.size() > 0 {
        let p = random_block_unimodular(rng, a.structure());
        move_s1(a, &p).expect("generated P is block-diagonal unimodular")
    } else {
        let comp = rng.gen_range(0..a.components());
        let variant = if rng.gen_bool(0.5) { StabilizationVariant::A } else { StabilizationVariant::B };
        let rho: Vec<i64> = (0..a.size()).map(|_| rng.gen_range(-rho_bound..=rho_bound)).collect();
        move_s2(a, comp, variant, &rho).expect("component and rho length are in range")
    }
}

pub fn random_moves<R: Rng>(rng: &mut R, a: &SeifertMatrix, count: usize, rho_bound: i64) -> SeifertMatrix {
    (0..count).fold(a.clone(), |m, _| random_move(rng, &m, rho_bound))
}

/// Random word in `x`, `z` of length `min_len..=max_len`.
pub fn random_biword<R: Rng>(rng: &mut R, min_len: usize, max_len: usize) -> BiWord {
    let len = rng.gen_range(min_len..=max_len);
    BiWord::new((0..len).map(|_| if rng.gen_bool(0.5) { Letter::X } else { Letter::Z }).collect())
}

/// Random word with x-degree in `1..=max_x` and at most `max_z` letters `z`.
pub fn random_monomial<R: Rng>(rng: &mut R, max_x: usize, max_z: usize) -> BiWord {
    let nx = rng.gen_range(1..=max_x.max(1));
    let nz = rng.gen_range(0..=max_z);
    let mut letters: Vec<Letter> =
        std::iter::repeat_n(Letter::X, nx).chain(std::iter::repeat_n(Letter::Z, nz)).collect();
    letters.shuffle(rng);
    BiWord::new(letters)
}

/// Random polynomial with zero constant term and small integer coefficients.
pub fn random_augmentation_element<R: Rng>(rng: &mut R, nvars: usize, trunc: usize, max_deg: usize) -> CommSeries {
    let mut s = CommSeries::zero(nvars, trunc);
    for _ in 0..rng.gen_range(0..=3) {
        let deg = rng.gen_range(1..=max_deg.max(1));
        let mut e = vec![0u32; nvars];
        for _ in 0..deg {
            e[rng.gen_range(0..nvars)] += 1;
        }
        s.add_term(Monomial::new(e), Q::from_integer(rng.gen_range(-2i64..=2).into()));
    }
    s
}

/// Random noncommutative polynomial with small integer coefficients; the
/// constant term is included only when `with_constant` is set.
pub fn random_nc_series<R: Rng>(
    rng: &mut R,
    nvars: usize,
    trunc: usize,
    max_deg: usize,
    with_constant: bool,
) -> NCSeries {
    let mut s = NCSeries::zero(nvars, trunc);
    if with_constant {
        s.add_term(Word::empty(), Q::from_integer(rng.gen_range(-2i64..=2).into()));
    }
    for _ in 0..rng.gen_range(0..=4) {
        let deg = rng.gen_range(1..=max_deg.max(1));
        let w = Word::from_vars((0..deg).map(|_| rng.gen_range(0..nvars)));
        s.add_term(w, Q::from_integer(rng.gen_range(-2i64..=2).into()));
    }
    s
}

/// `I + N` with every entry of `N` in the augmentation ideal.
pub fn random_unit_comm_matrix<R: Rng>(rng: &mut R, dim: usize, nvars: usize, trunc: usize) -> CommMatrix {
    let mut m = CommMatrix::identity(dim, nvars, trunc);
    for r in 0..dim {
        for c in 0..dim {
            let v = m.get(r, c) + &random_augmentation_element(rng, nvars, trunc, 2);
            m.set(r, c, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_zero_gives_standard_form() {
        let a = random_seifert(17, &[1], 0);
        assert_eq!(a.entries().rows(), vec![vec![0, 1], vec![0, 0]]);
        let b = random_seifert(3, &[1, 1], 0);
        assert_eq!(b.entries().rows(), vec![vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
        assert_eq!(b.structure().sizes(), &[2, 2]);
    }

    #[test]
    fn generated_matrices_validate() {
        let mut rng = rng_from_seed(99);
        for i in 0..1000 {
            let genera = random_genera(&mut rng, 3, 2);
            let a = random_seifert(i, &genera, 3);
            assert!(a.is_valid(), "{:?}", a.validate());
        }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_seifert(5, &[2, 1], 3), random_seifert(5, &[2, 1], 3));
        let mut r1 = rng_from_seed(1);
        let mut r2 = rng_from_seed(1);
        let a = random_seifert(1, &[1, 1], 2);
        assert_eq!(random_moves(&mut r1, &a, 4, 2), random_moves(&mut r2, &a, 4, 2));
    }

    #[test]
    fn moves_preserve_validity() {
        let mut rng = rng_from_seed(7);
        for i in 0..100 {
            let genera = random_genera(&mut rng, 3, 2);
            let a = random_seifert(i, &genera, 3);
            let b = random_moves(&mut rng, &a, 5, 3);
            assert!(b.is_valid(), "{:?}", b.validate());
        }
    }
}
