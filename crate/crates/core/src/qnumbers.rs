//! Symmetric q-integers, q-binomials and the tridiagonal parameter sequences.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{LaurentPoly, Rational};

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`, with `[0]_q = 1`.
pub fn qint(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("q-integer of negative argument {n}")));
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let n = i32::try_from(n).map_err(|_| Error::Domain(format!("q-integer argument {n} too large")))?;
    Ok(LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1))))
}

/// `[n]_{q^k}`; `k = 2` gives the base-`q^2` integers.
pub fn qint_base(n: i64, k: i32) -> Result<LaurentPoly> {
    Ok(qint(n)?.subs_q_power(k))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, empty product 1.
pub fn qfactorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative argument {n}")));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=n {
        acc = &acc * &qint(k)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n choose k]_q`, computed by exact division of q-factorials.
pub fn qbinomial(n: i64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::Domain(format!("q-binomial ({n} choose {k}) out of range")));
    }
    let den = &qfactorial(k)? * &qfactorial(n - k)?;
    qfactorial(n)?.div_exact(&den)
}

/// `beta_s = q^{2s} + q^{-2s}`.
pub fn beta_s(s: i64) -> Result<LaurentPoly> {
    if s < 1 {
        return Err(Error::Domain(format!("beta_s needs s >= 1, got {s}")));
    }
    let e = i32::try_from(2 * s).map_err(|_| Error::Domain(format!("beta_s index {s} too large")))?;
    Ok(LaurentPoly::from_terms([(e, 1), (-e, 1)]))
}

/// `[2s]_{q^2} / [s]_{q^2}` by exact division; equals [`beta_s`].
pub fn beta_s_by_division(s: i64) -> Result<LaurentPoly> {
    if s < 1 {
        return Err(Error::Domain(format!("beta_s needs s >= 1, got {s}")));
    }
    qint_base(2 * s, 2)?.div_exact(&qint_base(s, 2)?)
}

/// Eigenvalue data of q-Racah type: `theta_i = alpha + b q^{2i-d} + c q^{d-2i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueData {
    pub alpha: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: u32,
    pub q_val: Rational,
}

impl EigenvalueData {
    pub fn validate(&self) -> Result<()> {
        if self.b.is_zero() || self.c.is_zero() {
            return Err(Error::Domain("eigenvalue data needs b != 0 and c != 0".into()));
        }
        let q = &self.q_val;
        if q.is_zero() || q.is_one() || *q == -Rational::one() {
            return Err(Error::Domain(format!("q = {q} is not allowed")));
        }
        Ok(())
    }

    pub fn theta(&self, i: u32) -> Rational {
        let e = 2 * i as i32 - self.d as i32;
        &self.alpha + &self.b * self.q_val.pow(e) + &self.c * self.q_val.pow(-e)
    }
}

/// `(beta_s, gamma_s, delta_s)` evaluated at the data's `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagonalParams {
    pub s: u32,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl TridiagonalParams {
    /// `theta_i^2 - beta theta_i theta_j + theta_j^2 - gamma (theta_i + theta_j) - delta`.
    pub fn quadratic(&self, ti: &Rational, tj: &Rational) -> Rational {
        ti * ti - &self.beta * ti * tj + tj * tj - &self.gamma * (ti + tj) - &self.delta
    }
}

/// Determines `gamma_s`, `delta_s` from two eigenvalue pairs at distance `s`
/// and checks that the quadratic vanishes on every such pair.
pub fn tridiagonal_parameters(s: u32, data: &EigenvalueData) -> Result<TridiagonalParams> {
    data.validate()?;
    if s == 0 {
        return Err(Error::Domain("step s must be positive".into()));
    }
    if data.d < s {
        return Err(Error::Domain(format!(
            "diameter {} has no eigenvalue pair at distance {s}",
            data.d
        )));
    }
    let q2s = data.q_val.pow(2 * s as i32);
    let beta = &q2s + q2s.recip();
    let rhs = |i: u32| {
        let (ti, tj) = (data.theta(i), data.theta(i + s));
        let r = &ti * &ti - &beta * &ti * &tj + &tj * &tj;
        (ti + tj, r)
    };
    let (u1, r1) = rhs(0);
    let gamma = if data.d > s {
        let (u2, r2) = rhs(1);
        if u1 != u2 {
            (&r1 - &r2) / (&u1 - &u2)
        } else {
            &data.alpha * (Rational::from_integer(2.into()) - &beta)
        }
    } else {
        // A single pair leaves one degree of freedom; pin gamma to the value
        // the two-pair solution takes whenever it is determined.
        &data.alpha * (Rational::from_integer(2.into()) - &beta)
    };
    let delta = &r1 - &gamma * &u1;
    let params = TridiagonalParams { s, beta, gamma, delta };
    for i in 0..=(data.d - s) {
        let v = params.quadratic(&data.theta(i), &data.theta(i + s));
        if !v.is_zero() {
            return Err(Error::Integrity(format!(
                "tridiagonal quadratic does not vanish on pair ({i}, {}): {v}",
                i + s
            )));
        }
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, ring_eval, RingElement};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Gaussian binomial coefficients via the Pascal rule
    /// `[n,k] = q^{-k}[n-1,k-1] + q^{n-k}[n-1,k]` in the symmetric normalization.
    fn pascal(n: i64, k: i64) -> LaurentPoly {
        if k == 0 || k == n {
            return LaurentPoly::one();
        }
        &pascal(n - 1, k - 1).shift(-(n - k) as i32) + &pascal(n - 1, k).shift(k as i32)
    }

    #[test]
    fn q_integers() {
        assert_eq!(qint(3).unwrap(), lp("q^2+1+q^-2"));
        assert_eq!(qint(1).unwrap(), LaurentPoly::one());
        assert_eq!(qint(0).unwrap(), LaurentPoly::one());
        assert!(qint(-1).is_err());
        assert_eq!(qint_base(4, 2).unwrap(), lp("q^6+q^2+q^-2+q^-6"));
        let by_division = lp("q^8-q^-8").div_exact(&lp("q^2-q^-2")).unwrap();
        assert_eq!(qint_base(4, 2).unwrap(), by_division);
    }

    #[test]
    fn q_binomials() {
        assert_eq!(qbinomial(5, 1).unwrap(), lp("q^4+q^2+1+q^-2+q^-4"));
        assert_eq!(qbinomial(9, 0).unwrap(), LaurentPoly::one());
        let seq = [1, 1, 2, 3, 4, 4, 5, 4, 4, 3, 2, 1, 1];
        let expected = LaurentPoly::from_terms(seq.iter().enumerate().map(|(i, c)| (-12 + 2 * i as i32, *c)));
        assert_eq!(qbinomial(7, 3).unwrap(), expected);
        assert!(qbinomial(3, 4).is_err());
        assert!(qbinomial(3, -1).is_err());
    }

    #[test]
    fn q_binomial_matches_pascal_rule() {
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(qbinomial(n, k).unwrap(), pascal(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn q_binomial_symmetries_and_classical_limit() {
        let one = Rational::one();
        for n in 0..=12i64 {
            for k in 0..=n {
                let b = qbinomial(n, k).unwrap();
                assert_eq!(b, qbinomial(n, n - k).unwrap());
                assert!(b.is_bar_invariant());
                let at_one = ring_eval(&RingElement::from(b), &one, &one, &one).unwrap();
                let classical = num_integer::binomial(BigInt::from(n), BigInt::from(k));
                assert_eq!(at_one, Rational::from_integer(classical));
            }
        }
    }

    #[test]
    fn beta_routes_agree() {
        assert_eq!(beta_s(1).unwrap(), lp("q^2+q^-2"));
        assert_eq!(beta_s(2).unwrap(), lp("q^4+q^-4"));
        for s in 1..=10 {
            let b = beta_s(s).unwrap();
            assert_eq!(b, beta_s_by_division(s).unwrap());
            assert_eq!(qint_base(2 * s, 2).unwrap(), &qint_base(s, 2).unwrap() * &b);
        }
        assert!(beta_s(0).is_err());
    }

    fn data(alpha: Rational, b: Rational, c: Rational, d: u32, q: Rational) -> EigenvalueData {
        EigenvalueData {
            alpha,
            b,
            c,
            d,
            q_val: q,
        }
    }

    #[test]
    fn reduced_case_closed_form() {
        let q = rat(5, 2);
        let (b, c) = (rat(2, 1), rat(-3, 7));
        for s in 1..=3u32 {
            let p = tridiagonal_parameters(s, &data(rat(0, 1), b.clone(), c.clone(), 5, q.clone())).unwrap();
            let q2s = q.pow(2 * s as i32);
            assert_eq!(p.beta, &q2s + q2s.recip());
            assert!(p.gamma.is_zero());
            let diff = &q2s - q2s.recip();
            assert_eq!(p.delta, -(&b * &c) * &diff * &diff);
        }
    }

    #[test]
    fn generic_alpha_data_point() {
        let d = data(rat(1, 1), rat(2, 1), rat(3, 1), 4, rat(5, 2));
        let p = tridiagonal_parameters(2, &d).unwrap();
        for i in 0..=2 {
            assert!(p.quadratic(&d.theta(i), &d.theta(i + 2)).is_zero());
        }
        // Independent closed forms obtained by eliminating the pair sum.
        let two = rat(2, 1);
        let q4 = d.q_val.pow(4);
        let expected_gamma = &d.alpha * (&two - &p.beta);
        let diff = &q4 - q4.recip();
        let expected_delta = -(&d.b * &d.c) * &diff * &diff - &d.alpha * &d.alpha * (&two - &p.beta);
        assert_eq!(p.gamma, expected_gamma);
        assert_eq!(p.delta, expected_delta);
    }

    #[test]
    fn tridiagonal_domain_errors() {
        let d = data(rat(1, 1), rat(2, 1), rat(3, 1), 1, rat(5, 2));
        assert!(matches!(tridiagonal_parameters(2, &d), Err(Error::Domain(_))));
        let bad_q = data(rat(1, 1), rat(2, 1), rat(3, 1), 4, rat(1, 1));
        assert!(tridiagonal_parameters(1, &bad_q).is_err());
        let bad_b = data(rat(1, 1), rat(0, 1), rat(3, 1), 4, rat(3, 1));
        assert!(tridiagonal_parameters(1, &bad_b).is_err());
        // d == s: only one pair exists.
        let edge = data(rat(1, 3), rat(2, 1), rat(3, 1), 2, rat(3, 2));
        assert!(tridiagonal_parameters(2, &edge).is_ok());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..4).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn quadratic_vanishes_on_grid(
            alpha in small_rational(),
            b in small_rational(),
            c in small_rational(),
            q in prop::sample::select(vec![rat(2, 1), rat(3, 2), rat(-5, 3), rat(1, 3)]),
            d in 1u32..6,
            s in 1u32..4,
        ) {
            prop_assume!(!b.is_zero() && !c.is_zero() && s <= d);
            let data = EigenvalueData { alpha, b, c, d, q_val: q };
            let p = tridiagonal_parameters(s, &data).unwrap();
            for i in 0..=(d - s) {
                prop_assert!(p.quadratic(&data.theta(i), &data.theta(i + s)).is_zero());
            }
        }
    }
}
