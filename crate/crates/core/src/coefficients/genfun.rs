use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{row_len, CoeffTable, Route};
use crate::error::{Error, Result};
use crate::exactring::{Rational, RingElement};
use crate::qnumbers::{beta_s, qint_base, TridiagonalParams};

/// Expansion coefficients `a_{ij}` of
/// `p_r(x, y) = (x - y) prod_{s=1..r} (x^2 - beta_s x y + y^2 - gamma_s (x + y) - delta_s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralCoeffTable<S> {
    pub r: usize,
    /// `(i, j) -> a_{ij}`, the coefficient of `x^i y^j`; zero entries omitted.
    pub entries: BTreeMap<(usize, usize), S>,
    /// `(beta_s, gamma_s, delta_s)` for `s = 1..=r`.
    pub params: Vec<(S, S, S)>,
}

impl<S: Clone + Zero> GeneralCoeffTable<S> {
    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }
}

type BiPoly<S> = BTreeMap<(usize, usize), S>;

fn bipoly_mul<S>(a: &BiPoly<S>, b: &BiPoly<S>) -> BiPoly<S>
where
    S: Clone + Zero + Add<Output = S> + Mul<Output = S>,
{
    let mut out: BiPoly<S> = BTreeMap::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            let key = (i + k, j + l);
            let v = x.clone() * y.clone();
            let slot = out.entry(key).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Expands the generating polynomial for arbitrary scalars.
pub fn genfun_coeffs<S>(r: usize, params: &[(S, S, S)]) -> Result<GeneralCoeffTable<S>>
where
    S: Clone + Zero + One + Add<Output = S> + Sub<Output = S> + Mul<Output = S> + Neg<Output = S>,
{
    if params.len() != r {
        return Err(Error::Domain(format!(
            "expected {r} parameter triples, got {}",
            params.len()
        )));
    }
    let mut acc: BiPoly<S> = BTreeMap::new();
    acc.insert((1, 0), S::one());
    acc.insert((0, 1), -S::one());
    for (beta, gamma, delta) in params {
        let mut f: BiPoly<S> = BTreeMap::new();
        f.insert((2, 0), S::one());
        f.insert((1, 1), -beta.clone());
        f.insert((0, 2), S::one());
        f.insert((1, 0), -gamma.clone());
        f.insert((0, 1), -gamma.clone());
        f.insert((0, 0), -delta.clone());
        f.retain(|_, v| !v.is_zero());
        acc = bipoly_mul(&acc, &f);
    }
    Ok(GeneralCoeffTable {
        r,
        entries: acc,
        params: params.to_vec(),
    })
}

/// [`genfun_coeffs`] with numeric parameters from eigenvalue data.
pub fn genfun_coeffs_rational(r: usize, params: &[TridiagonalParams]) -> Result<GeneralCoeffTable<Rational>> {
    let triples: Vec<(Rational, Rational, Rational)> = params
        .iter()
        .map(|p| (p.beta.clone(), p.gamma.clone(), p.delta.clone()))
        .collect();
    genfun_coeffs(r, &triples)
}

/// Coefficient table from the reduced parameters
/// `beta_s = [2s]_{q^2}/[s]_{q^2}`, `gamma_s = 0`, `delta_s = [s]_{q^2}^2 rho0`,
/// reading `a_{2r+1-2p-j, j} = (-1)^{j+p} rho0^p c_j^{[r,p]}`.
pub fn reduced_genfun_coeffs(r: usize) -> Result<CoeffTable> {
    if r == 0 {
        return Err(Error::Domain("relation order r must be at least 1".into()));
    }
    let mut params = Vec::with_capacity(r);
    for s in 1..=r as i64 {
        let qs = qint_base(s, 2)?;
        params.push((
            RingElement::from(beta_s(s)?),
            RingElement::zero(),
            RingElement::monomial(1, 0, &qs * &qs),
        ));
    }
    let g = genfun_coeffs(r, &params)?;
    // Every surviving monomial must sit at total degree 2r+1-2p with rho0^p only.
    for (&(i, j), v) in &g.entries {
        let deg = i + j;
        let ok = deg % 2 == 1 && deg <= 2 * r + 1 && {
            let p = (2 * r + 1 - deg) / 2;
            v.terms().all(|(&(a, b), _)| a as usize == p && b == 0)
        };
        if !ok {
            return Err(Error::Integrity(format!(
                "unexpected generating-polynomial term x^{i} y^{j} with coefficient {v}"
            )));
        }
    }
    let table = CoeffTable::from_fn(r, Route::Genfun, |p, j| {
        let i = row_len(r, p) - 1 - j;
        let c = g.get(i, j).component(p as u32, 0);
        Ok(if (j + p) % 2 == 0 { c } else { -c })
    })?;
    table.check_symmetry()?;
    Ok(table)
}
