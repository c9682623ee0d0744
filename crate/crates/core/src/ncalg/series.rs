use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Word;
use crate::commalg::{CommSeries, Monomial};
use crate::rational::fmt_rational;
use crate::{Error, Result, Q};

/// Truncated power series in `nvars` noncommuting variables over the rationals.
///
/// Only words of degree `<= trunc` are stored, zero coefficients never are.
/// Binary operations truncate to the smaller of the two truncation degrees,
/// and equality compares term maps up to the common truncation.
#[derive(Clone, Debug)]
pub struct NCSeries {
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Word, Q>,
}

/// The three (anti-)involutions of the completed group ring.
///
/// `Tilde` reverses words, `Hat` substitutes `x_i -> -x_i (1 + x_i)^{-1}`,
/// and `Bar` does both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Tilde,
    Bar,
    Hat,
}

impl NCSeries {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        NCSeries { nvars, trunc, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, trunc: usize) -> Self {
        Self::constant(nvars, trunc, Q::one())
    }

    pub fn constant(nvars: usize, trunc: usize, c: Q) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(Word::empty(), c);
        s
    }

    /// The variable `x_{var+1}` (indices are zero-based).
    pub fn var(nvars: usize, trunc: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        let mut s = Self::zero(nvars, trunc);
        s.add_term(Word::letter(var), Q::one());
        s
    }

    pub fn monomial(nvars: usize, trunc: usize, word: Word, c: Q) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(word, c);
        s
    }

    /// Builds a series from terms; repeated words accumulate, words above
    /// `trunc` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(nvars: usize, trunc: usize, terms: I) -> Self {
        let mut s = Self::zero(nvars, trunc);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Word::empty())
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: Q) {
        if w.degree() > self.trunc || c.is_zero() {
            return;
        }
        if let Some(m) = w.max_var() {
            assert!(m < self.nvars, "word {w} uses a variable outside 1..={}", self.nvars);
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, w: &Word, c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(w) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.clone(), c);
        }
    }

    /// `self += c * other`, keeping `self`'s truncation.
    pub fn add_scaled_assign(&mut self, other: &NCSeries, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (w, v) in other.terms.range(..) {
            if w.degree() > self.trunc {
                break;
            }
            self.add_term_ref(w, v * c);
        }
    }

    /// Lowers the truncation degree, dropping higher terms.
    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        NCSeries {
            nvars: self.nvars,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= trunc)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &NCSeries) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableCountMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_vars(other)?;
        let mut out = self.truncate(self.trunc.min(other.trunc));
        out.add_scaled_assign(other, &Q::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_vars(other)?;
        let mut out = self.truncate(self.trunc.min(other.trunc));
        out.add_scaled_assign(other, &-Q::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(self.nvars, trunc);
        for (wa, ca) in &self.terms {
            let room = match trunc.checked_sub(wa.degree()) {
                Some(r) => r,
                None => break,
            };
            for (wb, cb) in &other.terms {
                if wb.degree() > room {
                    break;
                }
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> NCSeries {
        if c.is_zero() {
            return Self::zero(self.nvars, self.trunc);
        }
        NCSeries {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> NCSeries {
        let mut acc = Self::one(self.nvars, self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Right multiplication by a single variable.
    pub fn mul_var_right(&self, var: usize) -> NCSeries {
        NCSeries {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() < self.trunc)
                .map(|(w, c)| (w.with_suffix(var), c.clone()))
                .collect(),
        }
    }

    /// Left multiplication by a single variable.
    pub fn mul_var_left(&self, var: usize) -> NCSeries {
        NCSeries {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() < self.trunc)
                .map(|(w, c)| (w.with_prefix(var), c.clone()))
                .collect(),
        }
    }

    /// `log(1 + u)` for `u` without constant term.
    pub fn log1p(&self) -> Result<NCSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::zero(self.nvars, self.trunc);
        let mut power = self.clone();
        for k in 1..=self.trunc {
            if power.is_zero() {
                break;
            }
            let c = Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), k.into());
            out.add_scaled_assign(&power, &c);
            power = &power * self;
        }
        Ok(out)
    }

    /// Inverse of a special series (constant term 1) as `sum (1 - f)^k`.
    pub fn inv_special(&self) -> Result<NCSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NotSpecial);
        }
        let one = Self::one(self.nvars, self.trunc);
        let u = &one - self;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.trunc {
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// The ring homomorphism `x_i -> images[i]`, truncated at
    /// `min(self.trunc, images' truncation)`.
    ///
    /// Images must have zero constant term so that degrees never decrease.
    pub fn substitute(&self, images: &[NCSeries]) -> Result<NCSeries> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!("{} substitution images for {} variables", images.len(), self.nvars)));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target_n = first.nvars;
        let mut trunc = self.trunc;
        for im in images {
            if im.nvars != target_n {
                return Err(Error::VariableCountMismatch(target_n, im.nvars));
            }
            if !im.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
            trunc = trunc.min(im.trunc);
        }
        let mut memo: HashMap<Word, NCSeries> = HashMap::new();
        memo.insert(Word::empty(), Self::one(target_n, trunc));
        let mut out = Self::zero(target_n, trunc);
        for (w, c) in &self.terms {
            if w.degree() > trunc {
                break;
            }
            let img = image_of(w, images, &mut memo);
            out.add_scaled_assign(&img, c);
        }
        Ok(out)
    }

    pub fn tilde(&self) -> NCSeries {
        self.map_words(|w| w.reversed())
    }

    pub fn hat(&self) -> NCSeries {
        let images: Vec<NCSeries> = (0..self.nvars).map(|i| bar_variable(self.nvars, self.trunc, i)).collect();
        self.substitute(&images).expect("bar images have zero constant term")
    }

    pub fn bar(&self) -> NCSeries {
        self.hat().tilde()
    }

    pub fn involution(&self, kind: Involution) -> NCSeries {
        match kind {
            Involution::Tilde => self.tilde(),
            Involution::Bar => self.bar(),
            Involution::Hat => self.hat(),
        }
    }

    /// Applies a degree-preserving word map, summing coefficients that collide.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> NCSeries {
        let mut out = Self::zero(self.nvars, self.trunc);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Reinterprets the series in `new_nvars` variables with every index shifted
    /// by `offset`.
    pub fn shift_vars(&self, offset: usize, new_nvars: usize) -> NCSeries {
        let mut out = Self::zero(new_nvars, self.trunc);
        for (w, c) in &self.terms {
            out.add_term(Word::from_vars(w.letters().map(|l| l + offset)), c.clone());
        }
        out
    }

    /// Image in the quotient by the span of commutators `ab - ba`.
    pub fn cyclic_reduce(&self) -> CyclicSeries {
        CyclicSeries(self.map_words(Word::min_rotation))
    }

    pub fn abelianize(&self) -> CommSeries {
        CommSeries::from_terms(
            self.nvars,
            self.trunc,
            self.terms.iter().map(|(w, c)| (Monomial::new(w.exponents(self.nvars)), c.clone())),
        )
    }
}

fn image_of(w: &Word, images: &[NCSeries], memo: &mut HashMap<Word, NCSeries>) -> NCSeries {
    if let Some(s) = memo.get(w) {
        return s.clone();
    }
    let raw = w.raw();
    let prefix = Word::from_vars(raw[..raw.len() - 1].iter().map(|&l| l as usize));
    let head = image_of(&prefix, images, memo);
    let img = &head * &images[raw[raw.len() - 1] as usize];
    memo.insert(w.clone(), img.clone());
    img
}

/// `-x_i (1 + x_i)^{-1} = sum_{m >= 1} (-1)^m x_i^m`.
pub fn bar_variable(nvars: usize, trunc: usize, var: usize) -> NCSeries {
    NCSeries::from_terms(
        nvars,
        trunc,
        (1..=trunc).map(|m| {
            let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
            (Word::from_vars(std::iter::repeat_n(var, m)), sign)
        }),
    )
}

impl PartialEq for NCSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let t = self.trunc.min(other.trunc);
        let a = self.terms.iter().take_while(|(w, _)| w.degree() <= t);
        let b = other.terms.iter().take_while(|(w, _)| w.degree() <= t);
        a.eq(b)
    }
}

impl Eq for NCSeries {}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&NCSeries> for &NCSeries {
            type Output = NCSeries;
            fn $method(self, rhs: &NCSeries) -> NCSeries {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<NCSeries> for NCSeries {
            type Output = NCSeries;
            fn $method(self, rhs: NCSeries) -> NCSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &NCSeries {
    type Output = NCSeries;
    fn neg(self) -> NCSeries {
        self.scale(&-Q::one())
    }
}

impl Neg for NCSeries {
    type Output = NCSeries;
    fn neg(self) -> NCSeries {
        -&self
    }
}

/// Writes one term per line as `p/q * x1.x2`; the zero series prints nothing.
pub(crate) fn write_terms<'a, W: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a W, &'a Q)>,
) -> fmt::Result {
    for (i, (w, c)) in terms.enumerate() {
        if i > 0 {
            writeln!(f)?;
        }
        write!(f, "{} * {}", fmt_rational(c), w)?;
    }
    Ok(())
}

impl fmt::Display for NCSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}

/// A series whose words are all in cyclic-minimal normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSeries(NCSeries);

impl CyclicSeries {
    pub fn as_series(&self) -> &NCSeries {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CyclicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
