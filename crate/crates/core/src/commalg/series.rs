use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::ncalg::write_terms;
use crate::{Error, Result, Q};

/// Exponent vector of a commutative monomial.
///
/// Ordered by degree, then so that `x1^2 < x1.x2 < x2^2` (lexicographic order
/// of the sorted letter sequence).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new<I: IntoIterator<Item = u32>>(exponents: I) -> Self {
        Monomial(exponents.into_iter().collect())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = 1;
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1^2.x3`, or `1` for the unit monomial.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, ".")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Truncated commutative power series in `nvars` variables.
#[derive(Clone, Debug)]
pub struct CommSeries {
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl CommSeries {
    pub fn zero(nvars: usize, trunc: usize) -> Self {
        CommSeries { nvars, trunc, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, trunc: usize, c: Q) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(Monomial::one(nvars), c);
        s
    }

    pub fn one(nvars: usize, trunc: usize) -> Self {
        Self::constant(nvars, trunc, Q::one())
    }

    pub fn var(nvars: usize, trunc: usize, var: usize) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(Monomial::var(nvars, var), Q::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(nvars: usize, trunc: usize, terms: I) -> Self {
        let mut s = Self::zero(nvars, trunc);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Univariate convenience: `sum coeffs[k] x1^k` in one variable.
    pub fn univariate(trunc: usize, coeffs: &[Q]) -> Self {
        Self::from_terms(1, trunc, coeffs.iter().enumerate().map(|(k, c)| (Monomial::new([k as u32]), c.clone())))
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity mismatch");
        if m.degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled_assign(&mut self, other: &CommSeries, c: &Q) {
        for (m, v) in &other.terms {
            if m.degree() > self.trunc {
                break;
            }
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        CommSeries {
            nvars: self.nvars,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &CommSeries) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableCountMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &CommSeries) -> Result<CommSeries> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.trunc);
        out.add_scaled_assign(other, &Q::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &CommSeries) -> Result<CommSeries> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.trunc);
        out.add_scaled_assign(other, &-Q::one());
        Ok(out)
    }

    pub fn try_mul(&self, other: &CommSeries) -> Result<CommSeries> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let Some(room) = trunc.checked_sub(ma.degree()) else { break };
            for (mb, cb) in &other.terms {
                if mb.degree() > room {
                    break;
                }
                *acc.entry(ma.mul(mb)).or_insert_with(Q::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(CommSeries { nvars: self.nvars, trunc, terms: acc })
    }

    pub fn scale(&self, c: &Q) -> CommSeries {
        let mut out = Self::zero(self.nvars, self.trunc);
        out.add_scaled_assign(self, c);
        out
    }

    pub fn pow(&self, e: usize) -> CommSeries {
        let mut acc = Self::one(self.nvars, self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `log(1 + u)` for `u` without constant term.
    pub fn log1p(&self) -> Result<CommSeries> {
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

    /// `log f` for a unit `f` with constant term 1.
    pub fn log(&self) -> Result<CommSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NotSpecial);
        }
        (self - &Self::one(self.nvars, self.trunc)).log1p()
    }

    /// `exp u` for `u` without constant term.
    pub fn exp(&self) -> Result<CommSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.nvars, self.trunc);
        let mut term = Self::one(self.nvars, self.trunc);
        for k in 1..=self.trunc {
            term = (&term * self).scale(&Q::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `f^e = exp(e log f)` for a unit `f` with constant term 1.
    pub fn unit_power(&self, e: &Q) -> Result<CommSeries> {
        self.log()?.scale(e).exp()
    }

    pub fn inv_unit(&self) -> Result<CommSeries> {
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
}

impl PartialEq for CommSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let t = self.trunc.min(other.trunc);
        let a = self.terms.iter().take_while(|(m, _)| m.degree() <= t);
        let b = other.terms.iter().take_while(|(m, _)| m.degree() <= t);
        a.eq(b)
    }
}

impl Eq for CommSeries {}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&CommSeries> for &CommSeries {
            type Output = CommSeries;
            fn $method(self, rhs: &CommSeries) -> CommSeries {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CommSeries> for CommSeries {
            type Output = CommSeries;
            fn $method(self, rhs: CommSeries) -> CommSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CommSeries {
    type Output = CommSeries;
    fn neg(self) -> CommSeries {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for CommSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter())
    }
}
