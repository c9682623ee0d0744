//! Randomized property suites behind the `selfcheck` command.

use std::fmt;

use rand::Rng;

use crate::chi::{
    chi, chi_delta, chi_f, chi_phi, eval_tr_formula, eval_tr_symbolic, half_rank_correction,
    half_rank_correction_direct, thchi_reconstruct, torsion_polynomial, ChiRequest,
};
use crate::commalg::CommMatrix;
use crate::genfun::{BiSeries, BiWord, Builtin, Transform};
use crate::ncalg::{NCSeries, Word};
use crate::random::{
    random_genera, random_monomial, random_moves, random_nc_series, random_seifert_with, random_unit_comm_matrix,
    rng_from_seed, SeededRng,
};
use crate::seifert::{parse_seifert, serialize_seifert, BlockStructure, HalfPattern, SeifertMatrix};
use crate::Result;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub degree: usize,
    /// Corrupts one side of the S-equivalence comparison, so a correct build
    /// must report a failure.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, degree: 5, inject_fault: false }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{:<22} {:>5} cases  {:>3} failures  {status}", self.name, self.cases, self.failures)?;
        if let Some(msg) = &self.first_failure {
            write!(f, "  ({msg})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { report: SuiteReport { name, cases: 0, failures: 0, first_failure: None } }
    }

    fn check(&mut self, label: impl FnOnce() -> String, outcome: Result<bool>) {
        self.report.cases += 1;
        let failure = match outcome {
            Ok(true) => return,
            Ok(false) => label(),
            Err(e) => format!("{}: {e}", label()),
        };
        self.report.failures += 1;
        self.report.first_failure.get_or_insert(failure);
    }
}

pub fn run(opts: &Options) -> Report {
    type SuiteFn = fn(&mut SeededRng, &Options) -> Suite;
    let suites: [SuiteFn; 13] = [
        ring_axioms,
        involutions,
        commutative_lemma,
        s_equivalence,
        duality,
        abelianization,
        oracle_equivalence,
        reflection,
        pattern_independence,
        vanishing,
        direct_sum,
        half_rank,
        round_trip,
    ];
    // each suite gets its own stream so suites are reproducible in isolation
    let suites = suites
        .iter()
        .enumerate()
        .map(|(i, suite)| {
            let mut rng = rng_from_seed(opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
            suite(&mut rng, opts).report
        })
        .collect();
    Report { suites }
}

fn random_matrix(rng: &mut SeededRng, max_components: usize, max_genus: usize) -> SeifertMatrix {
    let genera = random_genera(rng, max_components, max_genus);
    random_seifert_with(rng, &genera, 3)
}

fn monomial_f(rng: &mut SeededRng, n: usize) -> BiSeries {
    BiSeries::monomial(random_monomial(rng, n.max(1), 3), n)
}

fn ring_axioms(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("ring-axioms");
    let n = opts.degree;
    for _ in 0..40 {
        let nvars = rng.gen_range(1..=3);
        let a = random_nc_series(rng, nvars, n, n, true);
        let b = random_nc_series(rng, nvars, n, n, true);
        let c = random_nc_series(rng, nvars, n, n, true);
        s.check(|| "associativity".into(), Ok(&(&a * &b) * &c == &a * &(&b * &c)));
        s.check(|| "distributivity".into(), Ok(&a * &(&b + &c) == &(&a * &b) + &(&a * &c)));
        let u = &NCSeries::one(nvars, n) + &random_nc_series(rng, nvars, n, n, false);
        s.check(|| "special inverse".into(), u.inv_special().map(|v| &u * &v == NCSeries::one(nvars, n)));
    }
    s
}

fn involutions(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("involutions");
    let n = opts.degree;
    for _ in 0..40 {
        let nvars = rng.gen_range(1..=3);
        let a = random_nc_series(rng, nvars, n, n, true);
        let b = random_nc_series(rng, nvars, n, n, true);
        s.check(|| "tilde anti-automorphism".into(), Ok((&a * &b).tilde() == &b.tilde() * &a.tilde()));
        s.check(|| "hat automorphism".into(), Ok((&a * &b).hat() == &a.hat() * &b.hat()));
        s.check(|| "bar = tilde o hat".into(), Ok(a.bar() == a.hat().tilde() && a.bar() == a.tilde().hat()));
        s.check(|| "bar involution".into(), Ok(a.bar().bar() == a && a.hat().hat() == a));
    }
    s
}

fn commutative_lemma(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("commutative-lemma");
    let n = opts.degree;
    for _ in 0..25 {
        let dim = rng.gen_range(1..=4);
        let nvars = rng.gen_range(1..=2);
        let m1 = random_unit_comm_matrix(rng, dim, nvars, n);
        let m2 = random_unit_comm_matrix(rng, dim, nvars, n);
        s.check(|| "trlog multiplicative".into(), (|| Ok(m1.mul(&m2).trlog()? == &m1.trlog()? + &m2.trlog()?))());
        s.check(|| "log det = trlog".into(), (|| Ok(m1.det_unit()?.log()? == m1.trlog()?))());
        s.check(|| "LU recombination".into(), lu_ok(&m1));
    }
    s
}

fn lu_ok(m: &CommMatrix) -> Result<bool> {
    let (l, u) = m.lu_decompose()?;
    Ok(l.mul(&u) == *m && l.is_lower_triangular() && u.is_upper_triangular())
}

fn s_equivalence(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("s-equivalence");
    let n = opts.degree;
    for _ in 0..8 {
        let a = random_matrix(rng, 3, 2);
        let b = random_moves(rng, &a, 3, 3);
        let mut fs = vec![BiSeries::builtin(Builtin::Delta, n), BiSeries::builtin(Builtin::Phi, n)];
        fs.extend((0..3).map(|_| monomial_f(rng, n)));
        for f in &fs {
            let outcome = (|| {
                let mut moved = chi(f, &b, n)?;
                if opts.inject_fault {
                    moved.add_term(Word::letter(0), crate::Q::from_integer(1.into()));
                }
                Ok(chi(f, &a, n)? == moved)
            })();
            s.check(|| format!("chi of {f} changed under moves"), outcome);
        }
    }
    s
}

fn duality(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("duality");
    let n = opts.degree;
    for _ in 0..6 {
        let a = random_matrix(rng, 3, 2);
        s.check(|| "chi_phi = -bar chi_phi".into(), chi_phi(&a, n).map(|p| p == -p.bar()));
        s.check(
            || "cyclic chi_delta = cyclic bar chi_delta".into(),
            chi_delta(&a, n).map(|d| d.cyclic_reduce() == d.bar().cyclic_reduce()),
        );
        for _ in 0..4 {
            let f = monomial_f(rng, n);
            let dual = f.transform(Transform::Tilde).transform(Transform::ZToOneMinusZ);
            s.check(|| format!("tilde duality for {f}"), (|| Ok(chi(&f, &a, n)?.tilde() == chi(&dual, &a, n)?))());
            s.check(
                || format!("hat duality for {f}"),
                (|| Ok(chi(&f, &a, n)?.hat() == chi(&f.transform(Transform::Hat), &a, n)?))(),
            );
        }
    }
    s
}

fn abelianization(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("abelianization");
    let n = opts.degree;
    let mut mats = vec![
        SeifertMatrix::from_rows(vec![2], &[vec![-1, 1], vec![0, -1]]).expect("trefoil"),
        SeifertMatrix::from_rows(vec![2], &[vec![1, 1], vec![0, -1]]).expect("figure-eight"),
    ];
    mats.extend((0..6).map(|_| random_matrix(rng, 3, 2)));
    for a in &mats {
        s.check(
            || format!("abelianized chi_delta != log torsion for\n{a}"),
            (|| Ok(chi_delta(a, n)?.abelianize() == torsion_polynomial(a, n)?.log()?))(),
        );
    }
    s
}

fn oracle_equivalence(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("oracle-equivalence");
    let n = opts.degree;
    for _ in 0..5 {
        let a = random_matrix(rng, 3, 2);
        for _ in 0..6 {
            let mono = random_monomial(rng, n.max(1), 3);
            let outcome = (|| {
                let sym = eval_tr_symbolic(&BiSeries::monomial(mono.clone(), n), &a, n)?;
                Ok(sym == eval_tr_formula(&mono, &a, n)? && sym == thchi_reconstruct(&mono, &a, n)?)
            })();
            s.check(|| format!("evaluators disagree on {mono}"), outcome);
        }
    }
    s
}

fn reflection(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("reflection");
    let n = opts.degree;
    for _ in 0..5 {
        let a = random_matrix(rng, 3, 2);
        for _ in 0..3 {
            let f = monomial_f(rng, n);
            let outcome = (|| Ok(chi(&f, &a.reflect(), n)? == chi(&f.transform(Transform::Tilde), &a, n)?.tilde()))();
            s.check(|| format!("reflection identity for {f}"), outcome);
        }
    }
    let mirror = mirror_example();
    s.check(
        || "mirror not detected".into(),
        (|| Ok(chi_phi(&mirror, n.max(4))? != chi_phi(&mirror.reflect(), n.max(4))?))(),
    );
    s
}

/// The 6x6 three-component matrix whose `chi_phi` tells it from its mirror.
pub fn mirror_example() -> SeifertMatrix {
    let rows = [
        [0, 1, 0, -1, 0, -1],
        [0, 0, 1, 0, 1, 0],
        [0, 1, 0, 1, 0, -1],
        [-1, 0, 0, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [-1, 0, -1, 0, 0, 0],
    ];
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    SeifertMatrix::from_rows(vec![2, 2, 2], &rows).expect("valid by construction")
}

fn pattern_independence(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("pattern-independence");
    let n = opts.degree.min(4);
    for _ in 0..4 {
        let a = random_matrix(rng, 2, 2);
        let f = if rng.gen_bool(0.5) { BiSeries::builtin(Builtin::Phi, n) } else { monomial_f(rng, n) };
        let base = chi(&f, &a, n);
        for p in HalfPattern::all_balanced(a.structure()) {
            let req = ChiRequest::new(f.clone(), a.clone(), n).with_pattern(p);
            let outcome = match (&base, chi_f(&req)) {
                (Ok(b), Ok(c)) => Ok(*b == c),
                (Err(e), _) => Err(e.clone()),
                (_, Err(e)) => Err(e),
            };
            s.check(|| format!("pattern dependence for {f}"), outcome);
        }
    }
    s
}

fn vanishing(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("vanishing");
    let n = opts.degree;
    let unknot = SeifertMatrix::from_rows(vec![2], &[vec![0, 1], vec![0, 0]]).expect("unknot");
    for which in [Builtin::Delta, Builtin::Phi] {
        s.check(
            || format!("{which:?} of the unknot"),
            chi(&BiSeries::builtin(which, n), &unknot, n).map(|c| c.is_zero()),
        );
    }
    for _ in 0..6 {
        let a = random_matrix(rng, 3, 2);
        let k = rng.gen_range(1..=n.max(1));
        let f = BiSeries::monomial(BiWord::new(vec![crate::genfun::Letter::X; k]), n);
        s.check(|| format!("pure x^{k}"), chi(&f, &a, n).map(|c| c.is_zero()));
    }
    s
}

fn direct_sum(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("direct-sum");
    let n = opts.degree;
    for _ in 0..4 {
        let a = random_matrix(rng, 2, 2);
        let b = random_matrix(rng, 2, 1);
        let outcome = (|| {
            let total = a.components() + b.components();
            let sum = a.direct_sum(&b);
            let expect = &chi_delta(&a, n)?.shift_vars(0, total) + &chi_delta(&b, n)?.shift_vars(a.components(), total);
            Ok(chi_delta(&sum, n)? == expect)
        })();
        s.check(|| "chi_delta not additive".into(), outcome);
    }
    s
}

fn half_rank(rng: &mut SeededRng, opts: &Options) -> Suite {
    let mut s = Suite::new("half-rank");
    for _ in 0..6 {
        let structure = BlockStructure::from_genera(&random_genera(rng, 3, 3));
        let direct = half_rank_correction_direct(&structure, opts.degree);
        s.check(
            || format!("correction mismatch for sizes {:?}", structure.sizes()),
            direct.map(|d| d == half_rank_correction(&structure, opts.degree)),
        );
    }
    s
}

fn round_trip(rng: &mut SeededRng, _opts: &Options) -> Suite {
    let mut s = Suite::new("file-round-trip");
    for _ in 0..20 {
        let start = random_matrix(rng, 3, 2);
        let a = random_moves(rng, &start, 2, 3);
        let text = serialize_seifert(&a);
        s.check(|| "round trip".into(), parse_seifert(&text).map(|b| b == a && serialize_seifert(&b) == text));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_example_matches_block_description() {
        let m = [[0, 1], [0, 0]];
        let sm = [[0, 1], [-1, 0]];
        let sign = [[0, -1, -1], [1, 0, -1], [1, 1, 0]];
        let a = mirror_example();
        for r in 0..6 {
            for c in 0..6 {
                let (bi, bj) = (r / 2, c / 2);
                let expect = if bi == bj { m[r % 2][c % 2] } else { sign[bi][bj] * sm[r % 2][c % 2] };
                assert_eq!(a.entries().get(r, c), expect);
            }
        }
    }

    #[test]
    fn default_run_passes() {
        let report = run(&Options { degree: 4, ..Options::default() });
        assert!(report.suites.len() >= 8);
        for suite in &report.suites {
            assert!(suite.passed(), "{suite}");
            assert!(suite.cases > 0, "{suite}");
        }
    }

    #[test]
    fn fault_is_detected() {
        let report = run(&Options { degree: 3, inject_fault: true, ..Options::default() });
        assert!(!report.passed());
    }
}
