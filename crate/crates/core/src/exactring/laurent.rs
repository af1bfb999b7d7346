use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Laurent polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

fn exp_add(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("q-exponent overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// summing repeated exponents and dropping zeros.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, T)>,
        T: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentPoly { terms: out }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    /// The integer value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (exp_add(*x, e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `q -> q^k`. With `k = 2` this turns `[n]_q` into `[n]_{q^2}`.
    pub fn subs_q_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitution q -> q^0 is not invertible");
        let mut terms: Vec<(i32, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.checked_mul(k).expect("q-exponent overflow"), c.clone()))
            .collect();
        if k < 0 {
            terms.reverse();
        }
        LaurentPoly { terms }
    }

    /// The image under `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        self.subs_q_power(-1)
    }

    /// True if invariant under `q <-> q^{-1}`.
    pub fn is_bar_invariant(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|i| {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &self.terms[n - 1 - i];
            *a == -*b && ca == cb
        })
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.iter().all(|t| !t.1.is_negative())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division. Fails unless `divisor` divides `self` with zero
    /// remainder in `Z[q, q^{-1}]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (amin, amax) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (dmin, dmax) = (divisor.min_exp().unwrap(), divisor.max_exp().unwrap());
        let lead = divisor.leading_coeff().unwrap();
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); (amax - amin + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - amin) as usize] = c.clone();
        }
        let mut quot: Vec<(i32, BigInt)> = Vec::new();
        for e in (amin..=amax).rev() {
            let idx = (e - amin) as usize;
            if rem[idx].is_zero() {
                continue;
            }
            let qe = e - dmax;
            if qe + dmin < amin {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")));
            }
            let (qc, r) = rem[idx].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} is not divisible by {divisor}")));
            }
            for (de, dc) in &divisor.terms {
                let k = (qe + de - amin) as usize;
                rem[k] -= &qc * dc;
            }
            quot.push((qe, qc));
        }
        quot.reverse();
        Ok(LaurentPoly { terms: quot })
    }

    /// Exact evaluation at a nonzero rational `q`.
    pub fn eval(&self, q: &Rational) -> Result<Rational> {
        if q.is_zero() {
            return Err(Error::Domain("cannot evaluate a Laurent polynomial at q = 0".into()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += q.pow(*e) * Rational::from_integer(c.clone());
        }
        Ok(acc)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(x, y)| (exp_add(*x, *e), y * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.mul_impl(self);
        }
        let lo = exp_add(self.min_exp().unwrap(), other.min_exp().unwrap());
        let hi = exp_add(self.max_exp().unwrap(), other.max_exp().unwrap());
        let mut buf = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                buf[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        let terms = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i32, c))
            .collect();
        LaurentPoly { terms }
    }
}

/// Exact product of two Laurent polynomials.
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, true);
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: decreasing exponent, `c*q^e`, unit coefficients
    /// elided, `q^0` elided and `q^1` written `q`. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Character cursor shared by the Laurent and expression parsers.
pub(crate) struct Cursor<'a> {
    pub src: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    pub fn unsigned(&mut self) -> Result<BigInt> {
        let at = self.pos;
        match self.digits() {
            Some(d) => Ok(d.parse().unwrap()),
            None => Err(Error::parse(at, "expected an integer")),
        }
    }

    /// A possibly signed exponent that must fit in `i32`.
    pub fn signed_exponent(&mut self) -> Result<i32> {
        self.skip_ws();
        let at = self.pos;
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self
            .digits()
            .ok_or_else(|| Error::parse(self.pos, "expected an exponent"))?;
        let v: i64 = d.parse().map_err(|_| Error::ExponentOverflow { position: at })?;
        let v = if neg { -v } else { v };
        i32::try_from(v).map_err(|_| Error::ExponentOverflow { position: at })
    }
}

impl LaurentPoly {
    /// Parses a single term `integer ['*' 'q' ['^' e]] | 'q' ['^' e]`.
    pub(crate) fn parse_term(cur: &mut Cursor<'_>) -> Result<LaurentPoly> {
        match cur.peek() {
            Some(b'q') => {
                cur.pos += 1;
                let e = if cur.eat(b'^') { cur.signed_exponent()? } else { 1 };
                Ok(LaurentPoly::q_pow(e))
            }
            Some(b) if b.is_ascii_digit() => {
                let c = cur.unsigned()?;
                let save = cur.pos;
                if cur.eat(b'*') {
                    if cur.eat(b'q') {
                        let e = if cur.eat(b'^') { cur.signed_exponent()? } else { 1 };
                        return Ok(LaurentPoly::monomial(c, e));
                    }
                    cur.pos = save;
                }
                Ok(LaurentPoly::constant(c))
            }
            _ => Err(Error::parse(cur.pos, "expected a Laurent term")),
        }
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        loop {
            let neg = if cur.eat(b'-') {
                true
            } else if cur.eat(b'+') || first {
                false
            } else {
                return Err(Error::parse(cur.pos, "expected '+' or '-'"));
            };
            let t = LaurentPoly::parse_term(&mut cur)?;
            acc = if neg { acc - t } else { acc + t };
            first = false;
            if cur.at_end() {
                return Ok(acc);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = lp("q+q^-1");
        let b = lp("q-q^-1");
        assert_eq!(laurent_mul(&a, &b), lp("q^2-q^-2"));
    }

    #[test]
    fn square_of_three() {
        let a = LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]);
        let expected = LaurentPoly::from_terms([(4, 1), (2, 2), (0, 3), (-2, 2), (-4, 1)]);
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("q^-4+3+q^4").to_string(), "q^4+3+q^-4");
        assert_eq!(
            LaurentPoly::from_terms([(1, -2), (0, 5), (-1, -1)]).to_string(),
            "-2*q+5-q^-1"
        );
        assert_eq!(lp("1*q^0").to_string(), "1");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "q^2 + x".parse::<LaurentPoly>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            "q^99999999999".parse::<LaurentPoly>(),
            Err(Error::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let num = lp("q^3-q^-3");
        let den = lp("q-q^-1");
        assert_eq!(num.div_exact(&den).unwrap(), lp("q^2+1+q^-2"));
        assert!(lp("q^2+2").div_exact(&lp("q+1")).is_err());
        assert!(lp("3*q").div_exact(&lp("2")).is_err());
    }

    #[test]
    fn evaluation() {
        let q2 = Rational::from_integer(2.into());
        let three = lp("q^2+1+q^-2");
        assert_eq!(three.eval(&q2).unwrap(), Rational::new(21.into(), 4.into()));
        assert!(three.eval(&Rational::zero()).is_err());
    }

    pub(crate) fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..7, -20i64..21), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert!(a.terms().iter().all(|t| !t.1.is_zero()));
        }

        #[test]
        fn string_round_trip(a in arb_laurent()) {
            let back: LaurentPoly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_laurent(), b in arb_laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}
