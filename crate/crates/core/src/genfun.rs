//! Admissible generating series `f(x, z)` in two noncommuting letters.
//!
//! A [`BiSeries`] is a finite object: it stores every term of x-degree up to
//! `xtrunc`, and the caller vouches that nothing of x-degree `<= xtrunc` is
//! missing. Admissibility (finitely many terms per x-degree) is therefore
//! structural. Only x-degree matters for truncation, because substituting
//! `X = diag(x_i)` turns each `x` into one variable letter and each `z` into
//! a constant matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Z,
}

/// A monomial in `x` and `z`.
///
/// Ordered by x-degree, then length, then lexicographically with `x < z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiWord(Vec<Letter>);

/// Factorization `x^{f_0} z^{e_1} x^{f_1} .. z^{e_k} x^{f_k}` into maximal
/// runs: every `e_i > 0`, and `f_i > 0` for `0 < i < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunShape {
    pub x_runs: Vec<usize>,
    pub z_runs: Vec<usize>,
}

impl BiWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BiWord(letters)
    }

    pub fn empty() -> Self {
        BiWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn x_degree(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::X).count()
    }

    pub fn z_degree(&self) -> usize {
        self.0.len() - self.x_degree()
    }

    pub fn reversed(&self) -> BiWord {
        BiWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &BiWord) -> BiWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BiWord(v)
    }

    pub fn shape(&self) -> RunShape {
        let mut x_runs = vec![0];
        let mut z_runs = Vec::new();
        let mut prev = None;
        for &l in &self.0 {
            match l {
                Letter::X => *x_runs.last_mut().unwrap() += 1,
                Letter::Z => {
                    if prev == Some(Letter::Z) {
                        *z_runs.last_mut().unwrap() += 1;
                    } else {
                        z_runs.push(1);
                        x_runs.push(0);
                    }
                }
            }
            prev = Some(l);
        }
        RunShape { x_runs, z_runs }
    }

    /// `(xz)^k`
    pub fn xz_power(k: usize) -> BiWord {
        BiWord([Letter::X, Letter::Z].repeat(k))
    }
}

impl Ord for BiWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x_degree().cmp(&other.x_degree()).then(self.0.len().cmp(&other.0.len())).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BiWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `x.z.z.x`, or `1` for the empty word.
impl fmt::Display for BiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let tokens: Vec<&str> = self.0.iter().map(|l| if *l == Letter::X { "x" } else { "z" }).collect();
        write!(f, "{}", tokens.join("."))
    }
}

impl FromStr for BiWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(BiWord::empty());
        }
        s.split('.')
            .map(|t| match t.trim() {
                "x" | "X" => Ok(Letter::X),
                "z" | "Z" => Ok(Letter::Z),
                other => Err(Error::Parse(format!("unknown letter `{other}` in monomial `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BiWord)
    }
}

/// Where a [`BiSeries`] came from; informational only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    BuiltinDelta,
    BuiltinPhi,
    FromG,
    UserList,
    Transformed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `log(1 + xz)`
    Delta,
    /// `(1 + xz)^{-1} x`
    Phi,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Builtin::Delta),
            "phi" => Ok(Builtin::Phi),
            other => Err(Error::Parse(format!("unknown built-in series `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Tilde,
    Hat,
    Bar,
    ZToOneMinusZ,
}

#[derive(Clone, Debug)]
pub struct BiSeries {
    xtrunc: usize,
    terms: BTreeMap<BiWord, Q>,
    provenance: Provenance,
}

impl BiSeries {
    pub fn zero(xtrunc: usize) -> Self {
        BiSeries { xtrunc, terms: BTreeMap::new(), provenance: Provenance::UserList }
    }

    /// User-supplied terms; words above `xtrunc` are dropped, repeats add up.
    pub fn from_terms<I: IntoIterator<Item = (BiWord, Q)>>(xtrunc: usize, terms: I) -> Self {
        let mut s = Self::zero(xtrunc);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn monomial(word: BiWord, xtrunc: usize) -> Self {
        Self::from_terms(xtrunc, [(word, Q::one())])
    }

    pub fn builtin(which: Builtin, xtrunc: usize) -> Self {
        let mut s = Self::zero(xtrunc);
        match which {
            Builtin::Delta => {
                s.provenance = Provenance::BuiltinDelta;
                for k in 1..=xtrunc {
                    let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
                    s.add_term(BiWord::xz_power(k), Q::new(sign.into(), k.into()));
                }
            }
            Builtin::Phi => {
                s.provenance = Provenance::BuiltinPhi;
                for k in 0..xtrunc {
                    let mut w = BiWord::xz_power(k);
                    w.0.push(Letter::X);
                    let sign: i64 = if k % 2 == 0 { 1 } else { -1 };
                    s.add_term(w, Q::from_integer(sign.into()));
                }
            }
        }
        s
    }

    /// `G(xz) = sum_k g[k] (xz)^k` for `k <= xtrunc`.
    pub fn from_g(g: &[Q], xtrunc: usize) -> Self {
        let mut s = Self::zero(xtrunc);
        s.provenance = Provenance::FromG;
        for (k, c) in g.iter().enumerate().take(xtrunc + 1) {
            s.add_term(BiWord::xz_power(k), c.clone());
        }
        s
    }

    pub fn xtrunc(&self) -> usize {
        self.xtrunc
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiWord, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &BiWord) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: BiWord, c: Q) {
        if w.x_degree() > self.xtrunc || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn truncate(&self, xtrunc: usize) -> Self {
        let xtrunc = xtrunc.min(self.xtrunc);
        BiSeries {
            xtrunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.x_degree() <= xtrunc)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            provenance: self.provenance,
        }
    }

    fn derived(xtrunc: usize) -> Self {
        BiSeries { xtrunc, terms: BTreeMap::new(), provenance: Provenance::Transformed }
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let mut out = Self::derived(self.xtrunc.min(other.xtrunc));
        for (w, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> BiSeries {
        let mut out = Self::derived(self.xtrunc);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let mut out = Self::derived(self.xtrunc.min(other.xtrunc));
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.x_degree() + wb.x_degree() <= out.xtrunc {
                    out.add_term(wa.concat(wb), ca * cb);
                }
            }
        }
        out
    }

    pub fn transform(&self, kind: Transform) -> BiSeries {
        match kind {
            Transform::Tilde => {
                let mut out = Self::derived(self.xtrunc);
                for (w, c) in &self.terms {
                    out.add_term(w.reversed(), c.clone());
                }
                out
            }
            Transform::Hat => self.hat(),
            Transform::Bar => self.hat().transform(Transform::Tilde),
            Transform::ZToOneMinusZ => self.z_to_one_minus_z(),
        }
    }

    /// `x -> -x (1 + x)^{-1} = sum_{m >= 1} (-1)^m x^m`, `z -> z`.
    fn hat(&self) -> BiSeries {
        let mut out = Self::derived(self.xtrunc);
        for (w, c) in &self.terms {
            let mut partial: Vec<(Vec<Letter>, usize, Q)> = vec![(Vec::new(), 0, c.clone())];
            for &l in w.letters() {
                let mut next = Vec::new();
                for (word, xdeg, coef) in partial {
                    match l {
                        Letter::Z => {
                            let mut v = word;
                            v.push(Letter::Z);
                            next.push((v, xdeg, coef));
                        }
                        Letter::X => {
                            for m in 1..=self.xtrunc.saturating_sub(xdeg) {
                                let mut v = word.clone();
                                v.extend(std::iter::repeat_n(Letter::X, m));
                                let sign = if m % 2 == 0 { coef.clone() } else { -coef.clone() };
                                next.push((v, xdeg + m, sign));
                            }
                        }
                    }
                }
                partial = next;
            }
            for (word, _, coef) in partial {
                out.add_term(BiWord(word), coef);
            }
        }
        out
    }

    /// Replaces every maximal run `z^e` by `(1 - z)^e`.
    fn z_to_one_minus_z(&self) -> BiSeries {
        let mut out = Self::derived(self.xtrunc);
        for (w, c) in &self.terms {
            let shape = w.shape();
            let mut partial: Vec<(Vec<Letter>, Q)> = vec![(vec![Letter::X; shape.x_runs[0]], c.clone())];
            for (i, &e) in shape.z_runs.iter().enumerate() {
                let mut next = Vec::new();
                for (word, coef) in &partial {
                    for j in 0..=e {
                        let mut v = word.clone();
                        v.extend(std::iter::repeat_n(Letter::Z, j));
                        v.extend(std::iter::repeat_n(Letter::X, shape.x_runs[i + 1]));
                        let b = Q::from_integer(binomial(e, j));
                        let sign = if j % 2 == 0 { b } else { -b };
                        next.push((v, coef * sign));
                    }
                }
                partial = next;
            }
            for (word, coef) in partial {
                out.add_term(BiWord(word), coef);
            }
        }
        out
    }

    /// Inverse of an extra-special polynomial (x-degree-0 part exactly 1) as
    /// `sum_k (1 - f)^k`; the result is again admissible.
    pub fn inv_extra_special(&self) -> Result<BiSeries> {
        let degree_zero: Vec<_> = self.terms.iter().filter(|(w, _)| w.x_degree() == 0).collect();
        let is_one = degree_zero.len() == 1 && degree_zero[0].0.is_empty() && degree_zero[0].1.is_one();
        if !is_one {
            return Err(Error::NotExtraSpecial);
        }
        let one = Self::monomial(BiWord::empty(), self.xtrunc);
        let u = one.sub(self);
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.xtrunc {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Equality of the stored terms up to the common `xtrunc`.
impl PartialEq for BiSeries {
    fn eq(&self, other: &Self) -> bool {
        let t = self.xtrunc.min(other.xtrunc);
        let a = self.terms.iter().filter(|(w, _)| w.x_degree() <= t);
        let b = other.terms.iter().filter(|(w, _)| w.x_degree() <= t);
        a.eq(b)
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::ncalg::write_terms(f, self.terms.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriLetter {
    X,
    Y,
    Z,
}

/// A monomial in `x`, `y`, `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriWord(pub Vec<TriLetter>);

impl fmt::Display for TriWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                TriLetter::X => "x",
                TriLetter::Y => "y",
                TriLetter::Z => "z",
            })
            .collect();
        write!(f, "{}", tokens.join("."))
    }
}

/// The monomial `f'` attached to `f = x^{f_0} z^{e_1} .. z^{e_k} x^{f_k}`:
/// each `z^{e}` becomes `(zy)^{e-1} z` and each `x^{f_i}` (including empty
/// ones at the ends) becomes a single `x`.
pub fn prime_monomial(mono: &BiWord) -> TriWord {
    let shape = mono.shape();
    let mut out = vec![TriLetter::X];
    for &e in &shape.z_runs {
        for _ in 1..e {
            out.push(TriLetter::Z);
            out.push(TriLetter::Y);
        }
        out.push(TriLetter::Z);
        out.push(TriLetter::X);
    }
    TriWord(out)
}
