use num_bigint::BigInt;

use super::ncpoly::NcPoly;
use super::word::{Letter, Word, MAX_WORD_LEN};
use crate::error::{Error, Result};
use crate::exactring::{Cursor, LaurentPoly, RingElement};
use crate::qnumbers::qint;

/// Parses an expression such as `"[3]_q A^2 A* A - rho0 A A*"`.
///
/// Grammar, with whitespace allowed between tokens:
///
/// ```text
/// expr    := ['+'|'-'] term (('+'|'-') term)*
/// term    := coeff ['*'] factor* | factor+
/// coeff   := atom (['*'] atom)*
/// atom    := integer ['*' 'q' ['^' int]] | 'q' ['^' int] | ('rho0'|'rho1') ['^' uint]
///          | '[' uint ']_q' | '(' ['-'] coeff (('+'|'-') coeff)* ')'
/// factor  := ('A' | 'A*') ['^' uint]
/// ```
///
/// A term without factors is a multiple of the unit word.
pub fn parse_expression(text: &str) -> Result<NcPoly> {
    let mut p = Parser { cur: Cursor::new(text) };
    let out = p.expr()?;
    if !p.cur.at_end() {
        return Err(Error::parse(p.cur.pos, "unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    cur: Cursor<'a>,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut first = true;
        loop {
            let neg = if self.cur.eat(b'-') {
                true
            } else if self.cur.eat(b'+') || first {
                false
            } else {
                return Err(Error::parse(self.cur.pos, "expected '+' or '-' between terms"));
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            match self.cur.peek() {
                None => return Ok(acc),
                Some(b')') => return Ok(acc),
                _ => {}
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        match self.cur.peek() {
            Some(b) if b.is_ascii_digit() => true,
            Some(b'q') | Some(b'[') | Some(b'(') => true,
            Some(b'r') => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<NcPoly> {
        let start = self.cur.pos;
        let mut coeff = None;
        if self.starts_atom() {
            coeff = Some(self.coeff_product()?);
            self.cur.eat(b'*');
        }
        let mut word = Word::EMPTY;
        let mut any_factor = false;
        while self.cur.peek() == Some(b'A') {
            let at = self.cur.pos;
            let f = self.factor()?;
            word = word
                .checked_concat(&f)
                .ok_or(Error::ExponentOverflow { position: at })?;
            any_factor = true;
        }
        if coeff.is_none() && !any_factor {
            self.cur.skip_ws();
            return Err(Error::parse(
                self.cur.pos.max(start),
                "expected a coefficient or a factor",
            ));
        }
        Ok(NcPoly::monomial(word, coeff.unwrap_or_else(RingElement::one)))
    }

    fn factor(&mut self) -> Result<Word> {
        self.cur.skip_ws();
        self.cur.pos += 1; // 'A'
                           // The star must follow the letter directly.
        let star = self.cur.src.get(self.cur.pos) == Some(&b'*');
        if star {
            self.cur.pos += 1;
        }
        let n = if self.cur.eat(b'^') {
            self.small_uint(MAX_WORD_LEN as u64)?
        } else {
            1
        };
        let l = if star { Letter::AStar } else { Letter::A };
        Ok(Word::power(l, n as usize))
    }

    fn small_uint(&mut self, max: u64) -> Result<u64> {
        self.cur.skip_ws();
        let at = self.cur.pos;
        let d = self
            .cur
            .digits()
            .ok_or_else(|| Error::parse(at, "expected an unsigned integer"))?;
        match d.parse::<u64>() {
            Ok(v) if v <= max => Ok(v),
            _ => Err(Error::ExponentOverflow { position: at }),
        }
    }

    fn coeff_product(&mut self) -> Result<RingElement> {
        let mut acc = self.atom()?;
        loop {
            let save = self.cur.pos;
            let star = self.cur.eat(b'*');
            if self.starts_atom() {
                acc = &acc * &self.atom()?;
            } else {
                if star {
                    self.cur.pos = save;
                }
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<RingElement> {
        self.cur.skip_ws();
        let at = self.cur.pos;
        match self.cur.peek() {
            Some(b'(') => {
                self.cur.pos += 1;
                let v = self.coeff_sum()?;
                if !self.cur.eat(b')') {
                    return Err(Error::parse(self.cur.pos, "expected ')'"));
                }
                Ok(v)
            }
            Some(b'[') => {
                self.cur.pos += 1;
                let n = self.small_uint(i32::MAX as u64)?;
                if !self.cur.eat(b']') || !self.cur.eat_str("_q") {
                    return Err(Error::parse(self.cur.pos, "expected ']_q'"));
                }
                Ok(RingElement::from(qint(n as i64)?))
            }
            Some(b'r') => {
                let (i, j) = if self.cur.eat_str("rho0") {
                    (1, 0)
                } else if self.cur.eat_str("rho1") {
                    (0, 1)
                } else {
                    return Err(Error::parse(at, "expected 'rho0' or 'rho1'"));
                };
                let k = if self.cur.eat(b'^') {
                    self.small_uint(u32::MAX as u64)? as u32
                } else {
                    1
                };
                Ok(RingElement::monomial(i * k, j * k, LaurentPoly::one()))
            }
            Some(b) if b == b'q' || b.is_ascii_digit() => {
                Ok(RingElement::from(LaurentPoly::parse_term(&mut self.cur)?))
            }
            _ => Err(Error::parse(at, "expected a coefficient")),
        }
    }

    fn coeff_sum(&mut self) -> Result<RingElement> {
        let mut acc = RingElement::zero();
        let mut first = true;
        loop {
            let neg = if self.cur.eat(b'-') {
                true
            } else if self.cur.eat(b'+') || first {
                false
            } else {
                return Ok(acc);
            };
            let t = self.coeff_product()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
    }
}

/// Integer constant as an expression coefficient.
pub fn constant_poly(c: impl Into<BigInt>) -> NcPoly {
    NcPoly::monomial(Word::EMPTY, RingElement::constant(c))
}
