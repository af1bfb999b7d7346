use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::forward_owned;
use super::{LaurentPoly, Rational};
use crate::error::Result;

/// Polynomial in the commuting parameters `rho0`, `rho1` with Laurent
/// polynomial coefficients. Keys are `(deg rho0, deg rho1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<(u32, u32), LaurentPoly>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(c: LaurentPoly) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `c * rho0^i * rho1^j`.
    pub fn monomial(i: u32, j: u32, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        RingElement { terms }
    }

    pub fn rho0() -> Self {
        Self::monomial(1, 0, LaurentPoly::one())
    }

    pub fn rho1() -> Self {
        Self::monomial(0, 1, LaurentPoly::one())
    }

    pub fn rho0_pow(k: u32) -> Self {
        Self::monomial(k, 0, LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Components in ascending `(deg rho0, deg rho1)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentPoly)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn component(&self, i: u32, j: u32) -> LaurentPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// The Laurent coefficient if the element has no rho dependence.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add_component(&mut self, i: u32, j: u32, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(cur) => {
                *cur += c;
                if cur.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    pub fn scale_laurent(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `rho0^i rho1^j`.
    pub fn shift_rho(&self, i: u32, j: u32) -> Self {
        RingElement {
            terms: self
                .terms
                .iter()
                .map(|((a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    /// Exchanges `rho0` and `rho1`.
    pub fn swap_rho(&self) -> Self {
        RingElement {
            terms: self.terms.iter().map(|((a, b), v)| ((*b, *a), v.clone())).collect(),
        }
    }

    /// Whether the first stored component has a negative leading coefficient.
    /// Used to choose a sign when printing.
    pub(crate) fn looks_negative(&self) -> bool {
        self.terms
            .values()
            .next()
            .and_then(|c| c.leading_coeff())
            .is_some_and(|c| c.is_negative())
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            if negate {
                out.add_component(*i, *j, &-c);
            } else {
                out.add_component(*i, *j, c);
            }
        }
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_component(a + c, b + d, &(x * y));
            }
        }
        out
    }
}

/// Exact substitution of rational values for `q`, `rho0` and `rho1`.
pub fn ring_eval(x: &RingElement, q: &Rational, rho0: &Rational, rho1: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    if q.is_zero() {
        // Surface the domain error even for elements without terms.
        LaurentPoly::one().eval(q)?;
    }
    for ((i, j), c) in &x.terms {
        acc += c.eval(q)? * rho0.pow(*i as i32) * rho1.pow(*j as i32);
    }
    Ok(acc)
}

/// The `(rho0, rho1)`-degree-zero component.
pub fn specialize_rho_zero(x: &RingElement) -> LaurentPoly {
    x.component(0, 0)
}

impl Zero for RingElement {
    fn zero() -> Self {
        RingElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RingElement {
    fn one() -> Self {
        RingElement::one()
    }
}

impl From<LaurentPoly> for RingElement {
    fn from(c: LaurentPoly) -> Self {
        RingElement::from_laurent(c)
    }
}

impl From<i64> for RingElement {
    fn from(c: i64) -> Self {
        RingElement::constant(c)
    }
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.add_impl(rhs, false)
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.add_impl(rhs, true)
    }
}

impl Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.mul_impl(rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

forward_owned!(RingElement, Add, add);
forward_owned!(RingElement, Sub, sub);
forward_owned!(RingElement, Mul, mul);

impl AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        for ((i, j), c) in &rhs.terms {
            self.add_component(*i, *j, c);
        }
    }
}

impl SubAssign<&RingElement> for RingElement {
    fn sub_assign(&mut self, rhs: &RingElement) {
        for ((i, j), c) in &rhs.terms {
            self.add_component(*i, *j, &-c);
        }
    }
}

fn write_rho(f: &mut fmt::Formatter<'_>, name: &str, k: u32) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "*{name}"),
        _ => write!(f, "*{name}^{k}"),
    }
}

impl fmt::Display for RingElement {
    /// Sum of `(laurent)*rho0^i*rho1^j` components, in a form accepted by
    /// the coefficient grammar of the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *i == 0 && *j == 0 {
                write!(f, "({c})")?;
                continue;
            }
            match c.as_constant() {
                Some(k) if k.is_one() => {
                    let mut s = String::new();
                    if *i > 0 {
                        s.push_str(&format!("rho0{}", if *i > 1 { format!("^{i}") } else { String::new() }));
                    }
                    if *j > 0 {
                        if !s.is_empty() {
                            s.push('*');
                        }
                        s.push_str(&format!("rho1{}", if *j > 1 { format!("^{j}") } else { String::new() }));
                    }
                    write!(f, "{s}")?;
                }
                _ => {
                    write!(f, "({c})")?;
                    write_rho(f, "rho0", *i)?;
                    write_rho(f, "rho1", *j)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}
