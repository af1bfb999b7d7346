//! Exact scalars: Laurent polynomials in `q`, their extension by the
//! commuting parameters `rho0`, `rho1`, and rationals for evaluation.

pub(crate) mod laurent;
mod ring;

pub(crate) use laurent::Cursor;
pub use laurent::{laurent_mul, LaurentPoly};
pub use ring::{ring_eval, specialize_rho_zero, RingElement};

use crate::error::{Error, Result};

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|e| Error::parse(0, format!("invalid rational '{s}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let x = parse_rational("6/-4").unwrap();
        assert_eq!(x, rat(-3, 2));
        assert_eq!(*x.denom(), 2.into());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
