use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial in noncommuting variables, stored as zero-based variable indices.
///
/// Ordered by degree first, then lexicographically on the letters; this is the
/// canonical term order for printing and comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(var: usize) -> Self {
        Word(SmallVec::from_slice(&[to_letter(var)]))
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        Word(vars.into_iter().map(to_letter).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.0
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().max().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, var: usize) {
        self.0.push(to_letter(var));
    }

    pub fn pop(&mut self) -> Option<usize> {
        self.0.pop().map(usize::from)
    }

    pub fn with_suffix(&self, var: usize) -> Word {
        let mut w = self.clone();
        w.push(var);
        w
    }

    pub fn with_prefix(&self, var: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(to_letter(var));
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Lexicographically least cyclic rotation.
    pub fn min_rotation(&self) -> Word {
        let k = least_rotation(&self.0);
        let mut v: SmallVec<[u8; 16]> = SmallVec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Exponent vector over `nvars` variables.
    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        let mut e = vec![0u32; nvars];
        for l in self.letters() {
            e[l] += 1;
        }
        e
    }
}

fn to_letter(var: usize) -> u8 {
    u8::try_from(var).expect("at most 256 variables are supported")
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders `x1.x2.x1` (one-based), or `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "x{}", *l as usize + 1)?;
        }
        Ok(())
    }
}

/// Booth's algorithm: start index of the least rotation of `s`.
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        // here i == -1 means "compare against s[k]"
        let next = &s[(k as isize + i + 1) as usize % n];
        if i == -1 && sj != next {
            if sj < next {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}
