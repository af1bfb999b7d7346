use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::word::{Letter, Word};
use crate::exactring::laurent::forward_owned;
use crate::exactring::{LaurentPoly, RingElement};

/// Element of the free algebra on `A`, `A*` over [`RingElement`].
///
/// Terms are stored in graded lexicographic word order; no coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, RingElement>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::EMPTY)
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, RingElement::one())
    }

    pub fn monomial(w: Word, c: RingElement) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    /// The single letter `A`.
    pub fn a() -> Self {
        Self::from_word(Word::power(Letter::A, 1))
    }

    /// The single letter `A*`.
    pub fn astar() -> Self {
        Self::from_word(Word::power(Letter::AStar, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RingElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> RingElement {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &RingElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &NcPoly) {
        for (w, c) in &other.terms {
            self.add_term(*w, c);
        }
    }

    pub(crate) fn remove(&mut self, w: &Word) -> Option<RingElement> {
        self.terms.remove(w)
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, &(x * c));
        }
        out
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&RingElement) -> RingElement) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, &f(x));
        }
        out
    }

    /// `x^n`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum word length among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        out
    }
}

/// Exact noncommutative product.
pub fn ncpoly_mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a * b
}

/// The automorphism `A <-> A*`, `rho0 <-> rho1`.
pub fn dagger(x: &NcPoly) -> NcPoly {
    NcPoly {
        terms: x.terms.iter().map(|(w, c)| (w.dagger(), c.swap_rho())).collect(),
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, &-c);
        }
        out
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect(),
        }
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

forward_owned!(NcPoly, Add, add);
forward_owned!(NcPoly, Sub, sub);
forward_owned!(NcPoly, Mul, mul);

impl From<Word> for NcPoly {
    fn from(w: Word) -> Self {
        NcPoly::from_word(w)
    }
}

/// Writes a coefficient so that it re-parses under the expression grammar,
/// returning whether a leading minus was pulled out.
fn write_coeff(f: &mut fmt::Formatter<'_>, c: &RingElement, first: bool) -> Result<bool, fmt::Error> {
    let neg = c.looks_negative();
    let c = if neg { -c } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    if c.is_one() {
        return Ok(false);
    }
    match c.as_laurent() {
        Some(l) => match l.as_constant() {
            Some(k) if k.is_positive() => write!(f, "{k}")?,
            _ => write!(f, "({l})")?,
        },
        None if c.len() == 1 => write!(f, "{c}")?,
        None => write!(f, "({c})")?,
    }
    Ok(true)
}

impl fmt::Display for NcPoly {
    /// Canonical form: terms in graded lexicographic order, each written as
    /// an optional coefficient followed by the word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let wrote = write_coeff(f, c, n == 0)?;
            if w.is_empty() {
                if !wrote {
                    write!(f, "1")?;
                }
            } else {
                if wrote {
                    write!(f, " ")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

impl NcPoly {
    /// Keeps only the `(rho0, rho1)`-degree-zero part of every coefficient.
    pub fn specialize_rho_zero(&self) -> NcPoly {
        self.map_coeffs(|c| RingElement::from(c.component(0, 0)))
    }

    /// Multiplies every coefficient by a Laurent polynomial.
    pub fn scale_laurent(&self, c: &LaurentPoly) -> NcPoly {
        self.map_coeffs(|x| x.scale_laurent(c))
    }
}
