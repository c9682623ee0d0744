//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chiseries::chi::{
    chi, chi_delta, chi_f, chi_phi, eval_tr_formula, eval_tr_symbolic, thchi_reconstruct, torsion_polynomial,
    ChiRequest,
};
use chiseries::commalg::CommSeries;
use chiseries::genfun::{BiSeries, BiWord, Builtin, Letter, Transform};
use chiseries::ncalg::{NCSeries, Word};
use chiseries::random::{
    random_genera, random_monomial, random_moves, random_seifert_with, random_unit_comm_matrix, rng_from_seed,
    SeededRng,
};
use chiseries::seifert::{HalfPattern, SeifertMatrix};
use chiseries::Q;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn trefoil() -> SeifertMatrix {
    SeifertMatrix::from_rows(vec![2], &[vec![-1, 1], vec![0, -1]]).unwrap()
}

fn figure_eight() -> SeifertMatrix {
    SeifertMatrix::from_rows(vec![2], &[vec![1, 1], vec![0, -1]]).unwrap()
}

fn unknot() -> SeifertMatrix {
    SeifertMatrix::from_rows(vec![2], &[vec![0, 1], vec![0, 0]]).unwrap()
}

/// `[[M, -S, -S], [S, M, -S], [S, S, M]]` with `M = [[0,1],[0,0]]` and
/// `S = [[0,1],[-1,0]]`.
fn mirror_example() -> SeifertMatrix {
    let m = [[0, 1], [0, 0]];
    let s = [[0, 1], [-1, 0]];
    let sign = [[0, -1, -1], [1, 0, -1], [1, 1, 0]];
    let rows: Vec<Vec<i64>> = (0..6)
        .map(|r| {
            (0..6)
                .map(|c| if r / 2 == c / 2 { m[r % 2][c % 2] } else { sign[r / 2][c / 2] * s[r % 2][c % 2] })
                .collect()
        })
        .collect();
    SeifertMatrix::from_rows(vec![2, 2, 2], &rows).unwrap()
}

/// Random matrix with at most 3 components, genera at most 2, entries in [-3, 3].
fn random_matrix(rng: &mut SeededRng) -> SeifertMatrix {
    let genera = random_genera(rng, 3, 2);
    random_seifert_with(rng, &genera, 3)
}

fn word(vars: &[usize]) -> Word {
    Word::from_vars(vars.iter().map(|v| v - 1))
}

fn err(e: chiseries::Error) -> String {
    e.to_string()
}

fn golden_values() -> Outcome {
    let start = Instant::now();
    let a = mirror_example();
    ensure!(a.is_valid(), "matrix does not validate: {:?}", a.validate());
    let n = 4;
    // the unsigned trace sum_k tr (XZ)^k X over block cycles
    let mut tr_sum = NCSeries::zero(3, n);
    for k in 0..n {
        let t = eval_tr_formula(&BiWord::xz_power(k).concat(&"x".parse().unwrap()), &a, n).map_err(err)?;
        tr_sum = &tr_sum + &t;
    }
    let (m123, m132) = (word(&[1, 2, 3, 1]), word(&[1, 3, 2, 1]));
    ensure!(tr_sum.coeff(&m123) == q(2, 1), "coefficient of x1x2x3x1 is {}", tr_sum.coeff(&m123));
    ensure!(tr_sum.coeff(&m132) == q(-2, 1), "coefficient of x1x3x2x1 is {}", tr_sum.coeff(&m132));
    // the signed series Phi = sum (-1)^k (xz)^k x carries the extra (-1)^3
    let phi = chi_phi(&a, n).map_err(err)?;
    ensure!(phi.coeff(&m123) == q(-2, 1) && phi.coeff(&m132) == q(2, 1), "signed chi_phi coefficients");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("a(x1x2x3x1) = 2, a(x1x3x2x1) = -2 in {:.0?}", elapsed))
}

fn s_equivalence() -> Outcome {
    let start = Instant::now();
    let n = 5;
    let mut rng = rng_from_seed(0x5e1f);
    let mut max_size = 0;
    for case in 0..50 {
        let a = random_matrix(&mut rng);
        let b = random_moves(&mut rng, &a, 5, 3);
        ensure!(b.is_valid(), "case {case}: moved matrix invalid");
        max_size = max_size.max(b.size());
        for which in [Builtin::Delta, Builtin::Phi] {
            let f = BiSeries::builtin(which, n);
            let before = chi(&f, &a, n).map_err(err)?;
            let after = chi(&f, &b, n).map_err(err)?;
            ensure!(before == after, "case {case}: chi_{which:?} changed\n{a}\n->\n{b}");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("50 matrices x 5 moves, sizes up to {max_size}, in {:.1?}", elapsed))
}

fn abelianization() -> Outcome {
    let n = 6;
    // one-variable oracle log((1 + x + x^2) / (1 + x))
    let num = CommSeries::univariate(n, &[q(1, 1), q(1, 1), q(1, 1)]);
    let den = CommSeries::univariate(n, &[q(1, 1), q(1, 1)]);
    let oracle = (num * den.inv_unit().unwrap()).log().unwrap();
    let ab = chi_delta(&trefoil(), n).map_err(err)?.abelianize();
    ensure!(ab == oracle, "trefoil abelianization {ab} differs from oracle {oracle}");
    let head = CommSeries::univariate(4, &[q(0, 1), q(0, 1), q(1, 1), q(-1, 1), q(1, 2)]);
    ensure!(ab.truncate(4) == head, "trefoil head");
    let mut rng = rng_from_seed(0xab);
    let mut mats = vec![trefoil(), figure_eight()];
    mats.extend((0..20).map(|_| random_matrix(&mut rng)));
    for (i, a) in mats.iter().enumerate() {
        let lhs = chi_delta(a, n).map_err(err)?.abelianize();
        let rhs = torsion_polynomial(a, n).map_err(err)?.log().map_err(err)?;
        ensure!(lhs == rhs, "matrix {i}: abelianized chi_delta != log torsion\n{a}");
    }
    Ok(format!("{} matrices at degree {n}", mats.len()))
}

fn duality() -> Outcome {
    let n = 5;
    let mut rng = rng_from_seed(0xd0a1);
    let mut checks = 0;
    for m in 0..20 {
        let a = random_matrix(&mut rng);
        let phi = chi_phi(&a, n).map_err(err)?;
        ensure!(phi == -phi.bar(), "matrix {m}: chi_phi != -bar chi_phi");
        let delta = chi_delta(&a, n).map_err(err)?;
        ensure!(delta.cyclic_reduce() == delta.bar().cyclic_reduce(), "matrix {m}: cyclic chi_delta");
        for _ in 0..20 {
            let f = BiSeries::monomial(random_monomial(&mut rng, n, 3), n);
            let dual = f.transform(Transform::Tilde).transform(Transform::ZToOneMinusZ);
            let lhs = chi(&f, &a, n).map_err(err)?.tilde();
            let rhs = chi(&dual, &a, n).map_err(err)?;
            ensure!(lhs == rhs, "matrix {m}: tilde duality fails for {f}");
            checks += 1;
        }
    }
    Ok(format!("20 matrices, {checks} monomial dualities"))
}

fn oracle_equivalence() -> Outcome {
    let n = 5;
    let mut rng = rng_from_seed(0x0ac1e);
    let mut nonzero = 0;
    for m in 0..10 {
        let a = random_matrix(&mut rng);
        for _ in 0..30 {
            let mono = random_monomial(&mut rng, n, 3);
            let sym = eval_tr_symbolic(&BiSeries::monomial(mono.clone(), n), &a, n).map_err(err)?;
            let formula = eval_tr_formula(&mono, &a, n).map_err(err)?;
            let rebuilt = thchi_reconstruct(&mono, &a, n).map_err(err)?;
            ensure!(sym == formula, "matrix {m}, {mono}: block formula disagrees");
            ensure!(sym == rebuilt, "matrix {m}, {mono}: reconstruction disagrees");
            nonzero += usize::from(!sym.is_zero());
        }
    }
    Ok(format!("300 monomial traces agree ({nonzero} nonzero)"))
}

fn commutative_lemma() -> Outcome {
    let n = 5;
    let mut rng = rng_from_seed(0x1e4a);
    for case in 0..50 {
        let dim = rng.gen_range(1..=4);
        let nvars = rng.gen_range(1..=3);
        let m1 = random_unit_comm_matrix(&mut rng, dim, nvars, n);
        let m2 = random_unit_comm_matrix(&mut rng, dim, nvars, n);
        let lhs = m1.mul(&m2).trlog().map_err(err)?;
        let rhs = &m1.trlog().map_err(err)? + &m2.trlog().map_err(err)?;
        ensure!(lhs == rhs, "case {case}: tr log not multiplicative");
        let det = m1.det_unit().map_err(err)?;
        ensure!(det.log().map_err(err)? == m1.trlog().map_err(err)?, "case {case}: log det != tr log");
        let (l, u) = m1.lu_decompose().map_err(err)?;
        ensure!(l.is_lower_triangular() && u.is_upper_triangular(), "case {case}: LU shape");
        ensure!(l.mul(&u) == m1, "case {case}: LU does not recombine");
    }
    Ok("50 unit matrices".into())
}

fn edge_cases() -> Outcome {
    let n = 5;
    let mut rng = rng_from_seed(0xed9e);
    let u = unknot();
    let mut fs = vec![BiSeries::builtin(Builtin::Delta, n), BiSeries::builtin(Builtin::Phi, n)];
    fs.extend((0..10).map(|_| BiSeries::monomial(random_monomial(&mut rng, n, 3), n)));
    for f in &fs {
        ensure!(chi(f, &u, n).map_err(err)?.is_zero(), "unknot: chi of {f} nonzero");
    }
    for _ in 0..10 {
        let a = random_matrix(&mut rng);
        for k in 1..=n {
            let f = BiSeries::monomial(BiWord::new(vec![Letter::X; k]), n);
            ensure!(chi(&f, &a, n).map_err(err)?.is_zero(), "pure x^{k} gives nonzero chi");
        }
    }
    let mut patterns = 0;
    for _ in 0..6 {
        let a = random_matrix(&mut rng);
        let mut fs = vec![BiSeries::builtin(Builtin::Delta, 4), BiSeries::builtin(Builtin::Phi, 4)];
        fs.push(BiSeries::monomial(random_monomial(&mut rng, 4, 3), 4));
        for f in &fs {
            let base = chi(f, &a, 4).map_err(err)?;
            for p in HalfPattern::all_balanced(a.structure()) {
                let req = ChiRequest::new(f.clone(), a.clone(), 4).with_pattern(p);
                ensure!(chi_f(&req).map_err(err)? == base, "pattern dependence for {f}");
                patterns += 1;
            }
        }
    }
    let a = mirror_example();
    let mut fs = vec![BiSeries::builtin(Builtin::Delta, n), BiSeries::builtin(Builtin::Phi, n)];
    fs.extend((0..10).map(|_| BiSeries::monomial(random_monomial(&mut rng, n, 3), n)));
    for f in &fs {
        let lhs = chi(f, &a.reflect(), n).map_err(err)?;
        let rhs = chi(&f.transform(Transform::Tilde), &a, n).map_err(err)?.tilde();
        ensure!(lhs == rhs, "reflection identity fails for {f}");
    }
    let (phi, phi_mirror) = (chi_phi(&a, n).map_err(err)?, chi_phi(&a.reflect(), n).map_err(err)?);
    ensure!(phi != phi_mirror, "chi_phi does not distinguish the mirror");
    Ok(format!("unknot, pure-x, {patterns} pattern evaluations, reflection"))
}

fn direct_sum() -> Outcome {
    let n = 5;
    let mut rng = rng_from_seed(0xd5);
    for case in 0..10 {
        let a = random_matrix(&mut rng);
        let b = random_matrix(&mut rng);
        let total = a.components() + b.components();
        let lhs = chi_delta(&a.direct_sum(&b), n).map_err(err)?;
        let rhs = &chi_delta(&a, n).map_err(err)?.shift_vars(0, total)
            + &chi_delta(&b, n).map_err(err)?.shift_vars(a.components(), total);
        ensure!(lhs == rhs, "case {case}: chi_delta not additive");
    }
    Ok("10 pairs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden values on the mirror example", golden_values),
        ("S-equivalence invariance", s_equivalence),
        ("abelianization identity", abelianization),
        ("duality suite", duality),
        ("oracle equivalence", oracle_equivalence),
        ("commutative lemma suite", commutative_lemma),
        ("trivial and edge cases", edge_cases),
        ("direct-sum additivity", direct_sum),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
