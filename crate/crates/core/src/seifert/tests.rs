use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::commalg::{CommMatrix, CommSeries};
use crate::ncalg::{NCSeries, Word};
use crate::random::{random_genera, random_move, random_moves, random_seifert, random_seifert_with, rng_from_seed};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn rat(rows: &[&[i64]]) -> RationalMatrix {
    let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    RationalMatrix::from_ints(rows.len(), rows[0].len(), &flat)
}

fn trefoil() -> SeifertMatrix {
    SeifertMatrix::from_rows(vec![2], &[vec![-1, 1], vec![0, -1]]).unwrap()
}

fn unknot() -> SeifertMatrix {
    SeifertMatrix::from_rows(vec![2], &[vec![0, 1], vec![0, 0]]).unwrap()
}

fn random_valid(seed: u64) -> SeifertMatrix {
    let mut rng = rng_from_seed(seed);
    let genera = random_genera(&mut rng, 3, 2);
    let a = random_seifert_with(&mut rng, &genera, 3);
    random_moves(&mut rng, &a, 2, 3)
}

#[test]
fn validation_examples() {
    assert!(trefoil().is_valid());
    let zero = SeifertMatrix::from_rows(vec![2], &[vec![0, 0], vec![0, 0]]).unwrap();
    assert_eq!(zero.validate(), vec![Violation::DiagonalDeterminant { block: 0, det: Q::zero() }]);
    let mut rows = random_seifert(5, &[1, 1], 2).entries().rows();
    rows[0][2] += 1;
    let asym = SeifertMatrix::from_rows(vec![2, 2], &rows).unwrap();
    let v = asym.validate();
    assert!(matches!(v.as_slice(), [Violation::Asymmetric { row_block: 0, col_block: 1, row: 0, col: 2 }]), "{v:?}");
    assert!(matches!(asym.z_matrix(), Err(Error::InvalidSeifert(_))));
}

#[test]
fn odd_blocks_get_their_own_diagnostic() {
    let a = SeifertMatrix::from_rows(vec![3], &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
    let v = a.validate();
    assert_eq!(v, vec![Violation::OddBlockSize { block: 0, size: 3 }]);
    assert_eq!(v[0].to_string(), "block 1 has odd size 3");
}

#[test]
fn shape_mismatch_is_rejected() {
    assert!(SeifertMatrix::from_rows(vec![2, 2], &[vec![0, 1], vec![0, 0]]).is_err());
    assert!(SeifertMatrix::from_rows(vec![2], &[vec![0, 1], vec![0]]).is_err());
}

#[test]
fn z_examples() {
    assert_eq!(trefoil().z_matrix().unwrap().matrix, rat(&[&[1, 1], &[-1, 0]]));
    assert_eq!(unknot().z_matrix().unwrap().matrix, rat(&[&[1, 0], &[0, 0]]));
    let (z, s) = trefoil().z_and_s().unwrap();
    assert_eq!(s.matrix, rat(&[&[0, 1], &[-1, 0]]));
    assert_eq!(z.matrix.mul(&s.matrix), trefoil().entries().to_rational());
}

#[test]
fn i_half_examples() {
    let s = BlockStructure::new(vec![2]);
    let h = i_half(&s, &HalfPattern::default_for(&s)).unwrap();
    assert_eq!(h.matrix, rat(&[&[0, 0], &[0, 1]]));
    let s = BlockStructure::new(vec![2, 4]);
    let h = i_half(&s, &HalfPattern::default_for(&s)).unwrap();
    let diag: Vec<Q> = (0..6).map(|i| h.matrix.get(i, i).clone()).collect();
    assert_eq!(diag, [0, 1, 0, 0, 1, 1].map(q));
    assert_eq!(i_half(&s, &HalfPattern(vec![true, true, false, false, true, true])), Err(Error::UnbalancedPattern(1)));
    assert!(i_half(&s, &HalfPattern(vec![true])).is_err());
    assert_eq!(HalfPattern::all_balanced(&s).len(), 2 * 6);
}

#[test]
fn trace_of_x_times_i_half() {
    let s = BlockStructure::new(vec![2, 0, 4]);
    let h = i_half(&s, &HalfPattern::default_for(&s)).unwrap();
    let vars = s.row_components();
    let t = NCMatrix::block_scalar(&vars, 3, 3).mul_rational_right(&h.matrix).trace();
    let expect = NCSeries::from_terms(3, 3, [(Word::letter(0), q(1)), (Word::letter(2), q(2))]);
    assert_eq!(t, expect);
}

#[test]
fn s1_examples() {
    let t = trefoil();
    assert_eq!(move_s1(&t, &IntMatrix::identity(2)).unwrap(), t);
    let p = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    let b = move_s1(&t, &p).unwrap();
    assert_eq!(b.entries().rows(), vec![vec![-1, 0], vec![1, -1]]);
    let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
    assert!(matches!(move_s1(&t, &bad), Err(Error::InvalidMove(_))));
    let two = trefoil().direct_sum(&trefoil());
    let mixing =
        IntMatrix::from_rows(&[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
    assert!(move_s1(&two, &mixing).is_err());
}

#[test]
fn s2_examples() {
    let e = SeifertMatrix::empty(1);
    let b = move_s2(&e, 0, StabilizationVariant::A, &[]).unwrap();
    assert_eq!(b.entries().rows(), vec![vec![0, 1], vec![0, 0]]);
    assert_eq!(b.structure().sizes(), &[2]);
    let b = move_s2(&trefoil(), 0, StabilizationVariant::A, &[0, 0]).unwrap();
    assert_eq!(b.entries().rows(), vec![vec![-1, 1, 0, 0], vec![0, -1, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
    let b = move_s2(&trefoil(), 0, StabilizationVariant::B, &[0, 0]).unwrap();
    assert_eq!(b.entries().get(3, 2), 1);
    assert_eq!(b.entries().get(2, 3), 0);
    assert!(move_s2(&trefoil(), 1, StabilizationVariant::A, &[0, 0]).is_err());
    assert!(move_s2(&trefoil(), 0, StabilizationVariant::A, &[0]).is_err());
}

#[test]
fn s2_inserts_at_end_of_block() {
    let a = random_seifert(9, &[1, 1, 1], 2);
    let rho = [1, -2, 0, 3, 1, 1];
    let b = move_s2(&a, 1, StabilizationVariant::A, &rho).unwrap();
    assert!(b.is_valid());
    assert_eq!(b.structure().sizes(), &[2, 4, 2]);
    // new rows sit at positions 4 and 5
    assert_eq!(b.entries().get(4, 5), 1);
    assert_eq!(b.entries().get(5, 5), 0);
    let old: Vec<usize> = vec![0, 1, 2, 3, 6, 7];
    for (r, &rr) in old.iter().enumerate() {
        assert_eq!(b.entries().get(rr, 4), rho[r]);
        assert_eq!(b.entries().get(4, rr), rho[r]);
        assert_eq!(b.entries().get(rr, 5), 0);
        for (c, &cc) in old.iter().enumerate() {
            assert_eq!(b.entries().get(rr, cc), a.entries().get(r, c));
        }
    }
}

#[test]
fn reflect_examples() {
    let r = trefoil().reflect();
    assert_eq!(r.entries().rows(), vec![vec![-1, 0], vec![1, -1]]);
    assert_eq!(r.z_matrix().unwrap().matrix, rat(&[&[0, -1], &[1, 1]]));
    assert_eq!(r.reflect(), trefoil());
}

#[test]
fn direct_sum_examples() {
    let t = trefoil();
    assert_eq!(SeifertMatrix::empty(0).direct_sum(&t), t);
    let tt = t.direct_sum(&t);
    assert_eq!(tt.structure().sizes(), &[2, 2]);
    assert!(tt.is_valid());
    assert_eq!(tt.entries().get(0, 2), 0);
    assert_eq!(tt.entries().get(3, 3), -1);
}

#[test]
fn presentation_matrix_examples() {
    let p = trefoil().presentation_matrix(3).unwrap();
    let x = NCSeries::var(1, 3, 0);
    let one = NCSeries::one(1, 3);
    assert_eq!(p.get(0, 0), &(&one + &x));
    assert_eq!(p.get(0, 1), &x);
    assert_eq!(p.get(1, 0), &-&x);
    assert_eq!(p.get(1, 1), &one);
    let p = unknot().presentation_matrix(3).unwrap();
    assert_eq!(p.get(0, 0), &(&one + &x));
    assert!(p.get(0, 1).is_zero() && p.get(1, 0).is_zero());
    assert_eq!(p.get(1, 1), &one);
}

#[test]
fn file_format() {
    let text = serialize_seifert(&trefoil());
    assert_eq!(
        text,
        "{\n  \"components\": 1,\n  \"block_sizes\": [2],\n  \"entries\": [\n    [-1, 1],\n    [0, -1]\n  ]\n}\n"
    );
    assert_eq!(parse_seifert(&text).unwrap(), trefoil());
    let e = serialize_seifert(&SeifertMatrix::empty(2));
    assert_eq!(parse_seifert(&e).unwrap(), SeifertMatrix::empty(2));
    let err = parse_seifert("{\"components\": 1, \"block_sizes\": [2], \"entries\": [[1, 2], [3]]}").unwrap_err();
    assert!(matches!(err, Error::Parse(_)), "{err:?}");
    assert!(matches!(parse_seifert("{\"components\": 2, \"block_sizes\": [0]"), Err(Error::Parse(_))));
    assert!(matches!(
        parse_seifert("{\"components\": 2, \"block_sizes\": [0], \"entries\": []}"),
        Err(Error::Parse(_) | Error::Dimension(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn z_duality(seed in any::<u64>()) {
        let a = random_valid(seed);
        let (z, s) = a.z_and_s().unwrap();
        let s_inv = s.matrix.inverse().unwrap();
        prop_assert!(s.matrix.is_integral() && s_inv.is_integral() && z.matrix.is_integral());
        prop_assert_eq!(s.matrix.det(), Q::one());
        // Z = S (I - Z') S^{-1}
        let id = RationalMatrix::identity(a.size());
        prop_assert_eq!(&z.matrix, &s.matrix.mul(&id.sub(&z.matrix.transpose())).mul(&s_inv));
        let zr = a.reflect().z_matrix().unwrap().matrix;
        prop_assert_eq!(&zr, &id.sub(&z.matrix));
        prop_assert_eq!(zr, s.matrix.mul(&z.matrix.transpose()).mul(&s_inv));
    }

    #[test]
    fn s1_conjugates_z(seed in any::<u64>()) {
        let a = random_valid(seed);
        let mut rng = rng_from_seed(seed ^ 1);
        let p = crate::random::random_block_unimodular(&mut rng, a.structure());
        let b = move_s1(&a, &p).unwrap();
        prop_assert!(b.is_valid());
        let pr = p.to_rational();
        let lhs = b.z_matrix().unwrap().matrix;
        let rhs = pr.mul(&a.z_matrix().unwrap().matrix).mul(&pr.inverse().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s2_bordered_shape(seed in any::<u64>(), variant_a in any::<bool>()) {
        let a = random_valid(seed);
        let mut rng = rng_from_seed(seed ^ 2);
        let comp = rand::Rng::gen_range(&mut rng, 0..a.components());
        let rho: Vec<i64> = (0..a.size()).map(|_| rand::Rng::gen_range(&mut rng, -3..=3)).collect();
        let variant = if variant_a { StabilizationVariant::A } else { StabilizationVariant::B };
        let b = move_s2(&a, comp, variant, &rho).unwrap();
        prop_assert!(b.is_valid());
        let cut = a.structure().range(comp).end;
        let old: Vec<usize> = (0..b.size()).filter(|&i| i != cut && i != cut + 1).collect();
        let zb = b.z_matrix().unwrap().matrix;
        let za = a.z_matrix().unwrap().matrix;
        for (r, &rr) in old.iter().enumerate() {
            for (c, &cc) in old.iter().enumerate() {
                prop_assert_eq!(zb.get(rr, cc), za.get(r, c));
            }
        }
    }

    #[test]
    fn random_moves_stay_valid(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let mut a = random_seifert(seed, &[1, 0, 2], 3);
        for _ in 0..6 {
            a = random_move(&mut rng, &a, 3);
            prop_assert!(a.is_valid(), "{}", a);
        }
    }

    #[test]
    fn file_round_trip(seed in any::<u64>()) {
        let a = random_valid(seed);
        let text = serialize_seifert(&a);
        let b = parse_seifert(&text).unwrap();
        prop_assert_eq!(serialize_seifert(&b), text);
        prop_assert_eq!(b, a);
    }

    #[test]
    fn presentation_determinant(seed in any::<u64>()) {
        // det(XZ + I) = prod (1 + x_i)^{g_i} times the normalized torsion
        let a = random_valid(seed);
        let n = 4;
        let p = a.presentation_matrix(n).unwrap();
        let nvars = a.components();
        let mut m = CommMatrix::zero(a.size(), nvars, n);
        for r in 0..a.size() {
            for c in 0..a.size() {
                m.set(r, c, p.get(r, c).abelianize());
            }
        }
        let mut expect = crate::chi::torsion_polynomial(&a, n).unwrap();
        for (i, g) in a.structure().genera().into_iter().enumerate() {
            let f = &CommSeries::one(nvars, n) + &CommSeries::var(nvars, n, i);
            expect = &expect * &f.pow(g);
        }
        prop_assert_eq!(m.det_unit().unwrap(), expect);
    }
}
