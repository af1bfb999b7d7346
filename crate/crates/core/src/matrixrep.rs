//! Exact rational matrix realizations of `A`, `A*` through the coideal embedding
//! into `U_q(sl2-hat)`, on tensor products of two-dimensional evaluation modules.
//!
//! Conventions: `q = t^2`, `k_i` stands for `q^{h_i/2}` and `K_i = k_i^2`.
//! On one site `e1 = E12`, `f1 = E21`, `k1 = diag(t, 1/t)`, `e0 = v f1`,
//! `f0 = e1 / v`, `k0 = diag(1/t, t)`. The coproduct is
//! `De = e(x)1 + K(x)e`, `Df = f(x)K^-1 + 1(x)f`, `Dk = k(x)k`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{ring_eval, Rational};
use crate::freealg::{Letter, NcPoly};

/// Dense square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> Self {
        ExactMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diag(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for (i, x) in entries.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Matrix from rows; every row must have the same length as the number of rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        Ok(ExactMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.data[i * n + j] = Rational::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.n + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        let n = self.n * other.n;
        let mut m = Self::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        m.data[(i * other.n + k) * n + j * other.n + l] = a * other.get(k, l);
                    }
                }
            }
        }
        m
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Domain("matrix is singular".into()))?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] /= &p;
                inv.data[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let (x, y) = (a.get(col, j) * &f, inv.get(col, j) * &f);
                    a.data[r * n + j] -= x;
                    inv.data[r * n + j] -= y;
                }
            }
        }
        Ok(inv)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    fn check_same(&self, other: &ExactMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(())
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        ExactMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        ExactMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions differ");
        let n = self.n;
        let mut m = ExactMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        m.data[i * n + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Images of the Chevalley generators; `k0`, `k1` stand for `q^{h_i/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub e0: ExactMatrix,
    pub f0: ExactMatrix,
    pub k0: ExactMatrix,
    pub e1: ExactMatrix,
    pub f1: ExactMatrix,
    pub k1: ExactMatrix,
}

impl Generators {
    pub fn dim(&self) -> usize {
        self.k0.dim()
    }
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_zero() || t.is_one() || *t == -Rational::one() {
        return Err(Error::Domain(format!("t = {t} must avoid 0, 1 and -1")));
    }
    Ok(())
}

/// The two-dimensional evaluation module at spectral parameter `v`, with `q = t^2`.
pub fn evaluation_rep(v: &Rational, t: &Rational) -> Result<Generators> {
    check_t(t)?;
    if v.is_zero() {
        return Err(Error::Domain("spectral parameter must be nonzero".into()));
    }
    let e1 = ExactMatrix::unit(2, 0, 1);
    let f1 = ExactMatrix::unit(2, 1, 0);
    let ti = t.recip();
    Ok(Generators {
        e0: f1.scale(v),
        f0: e1.scale(&v.recip()),
        k0: ExactMatrix::diag(vec![ti.clone(), t.clone()]),
        e1,
        f1,
        k1: ExactMatrix::diag(vec![t.clone(), ti]),
    })
}

/// Parameters of the coideal realization on `L` sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoidealParams {
    pub t: Rational,
    pub sites: Vec<Rational>,
    pub c0: Rational,
    pub c1: Rational,
    pub cbar0: Rational,
    pub cbar1: Rational,
    pub eps0: Rational,
    pub eps1: Rational,
}

impl CoidealParams {
    pub fn validate(&self) -> Result<()> {
        check_t(&self.t)?;
        if self.sites.is_empty() {
            return Err(Error::Domain("at least one site is required".into()));
        }
        for (i, v) in self.sites.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::Domain(format!("spectral parameter v_{} is zero", i + 1)));
            }
            if self.sites[..i].contains(v) {
                return Err(Error::Domain(format!("spectral parameter {v} repeated")));
            }
        }
        Ok(())
    }

    pub fn q(&self) -> Rational {
        &self.t * &self.t
    }

    fn rho(&self, c: &Rational, cbar: &Rational) -> Rational {
        let q = self.q();
        let s = &q + q.recip();
        c * cbar * &s * &s
    }

    /// `rho0 = c0 cbar0 (q + 1/q)^2`.
    pub fn rho0(&self) -> Rational {
        self.rho(&self.c0, &self.cbar0)
    }

    /// `rho1 = c1 cbar1 (q + 1/q)^2`.
    pub fn rho1(&self) -> Rational {
        self.rho(&self.c1, &self.cbar1)
    }
}

/// Generators on the `L`-fold tensor product of evaluation modules.
pub fn tensor_rep(params: &CoidealParams) -> Result<Generators> {
    params.validate()?;
    let sites: Vec<Generators> = params
        .sites
        .iter()
        .map(|v| evaluation_rep(v, &params.t))
        .collect::<Result<_>>()?;
    let kron_all = |f: &dyn Fn(usize) -> ExactMatrix| (1..sites.len()).fold(f(0), |acc, i| acc.kron(&f(i)));
    let raising = |pick: fn(&Generators) -> (&ExactMatrix, &ExactMatrix)| -> ExactMatrix {
        let mut total = ExactMatrix::zero(1 << sites.len());
        for pos in 0..sites.len() {
            total = &total
                + &kron_all(&|i| {
                    let (x, k) = pick(&sites[i]);
                    match i.cmp(&pos) {
                        std::cmp::Ordering::Less => k * k,
                        std::cmp::Ordering::Equal => x.clone(),
                        std::cmp::Ordering::Greater => ExactMatrix::identity(2),
                    }
                });
        }
        total
    };
    let lowering = |pick: fn(&Generators) -> (&ExactMatrix, &ExactMatrix)| -> Result<ExactMatrix> {
        let mut total = ExactMatrix::zero(1 << sites.len());
        for pos in 0..sites.len() {
            let mut factors = Vec::with_capacity(sites.len());
            for (i, g) in sites.iter().enumerate() {
                let (x, k) = pick(g);
                factors.push(match i.cmp(&pos) {
                    std::cmp::Ordering::Less => ExactMatrix::identity(2),
                    std::cmp::Ordering::Equal => x.clone(),
                    std::cmp::Ordering::Greater => (k * k).inverse()?,
                });
            }
            total = &total + &kron_all(&|i| factors[i].clone());
        }
        Ok(total)
    };
    Ok(Generators {
        e0: raising(|g| (&g.e0, &g.k0)),
        f0: lowering(|g| (&g.f0, &g.k0))?,
        k0: kron_all(&|i| sites[i].k0.clone()),
        e1: raising(|g| (&g.e1, &g.k1)),
        f1: lowering(|g| (&g.f1, &g.k1))?,
        k1: kron_all(&|i| sites[i].k1.clone()),
    })
}

/// The pair `(A, A*)` together with the parameters that produced it.
#[derive(Clone, Debug)]
pub struct CoidealPair {
    pub a: ExactMatrix,
    pub astar: ExactMatrix,
    pub q: Rational,
    pub rho0: Rational,
    pub rho1: Rational,
}

impl CoidealPair {
    /// [`eval_ncpoly`] at the pair's own `q` and `rho` values; `q_val` must match.
    pub fn eval(&self, x: &NcPoly, q_val: &Rational) -> Result<ExactMatrix> {
        if *q_val != self.q {
            return Err(Error::Domain(format!(
                "q = {q_val} does not match the realization's q = {}",
                self.q
            )));
        }
        eval_ncpoly(x, &self.a, &self.astar, &self.q, &self.rho0, &self.rho1)
    }

    /// [`check_qdg`] with the identified `rho` values.
    pub fn gate(&self) -> Result<bool> {
        check_qdg(&self.a, &self.astar, &self.q, &self.rho0, &self.rho1)
    }
}

/// `A = c0 e0 k0 + cbar0 f0 k0 + eps0 K0`, `A* = c1 e1 k1 + cbar1 f1 k1 + eps1 K1`.
pub fn coideal_generators(params: &CoidealParams) -> Result<CoidealPair> {
    let g = tensor_rep(params)?;
    let build = |e: &ExactMatrix, f: &ExactMatrix, k: &ExactMatrix, c: &Rational, cbar: &Rational, eps: &Rational| {
        &(&(e * k).scale(c) + &(f * k).scale(cbar)) + &(k * k).scale(eps)
    };
    Ok(CoidealPair {
        a: build(&g.e0, &g.f0, &g.k0, &params.c0, &params.cbar0, &params.eps0),
        astar: build(&g.e1, &g.f1, &g.k1, &params.c1, &params.cbar1, &params.eps1),
        q: params.q(),
        rho0: params.rho0(),
        rho1: params.rho1(),
    })
}

/// `X^3 Y - [3]_q X^2 Y X + [3]_q X Y X^2 - Y X^3 - rho (X Y - Y X)`.
fn qdg_residual(x: &ExactMatrix, y: &ExactMatrix, q: &Rational, rho: &Rational) -> ExactMatrix {
    let q3 = q * q + Rational::one() + (q * q).recip();
    let x2 = x * x;
    let x3 = &x2 * x;
    let xy = x * y;
    let yx = y * x;
    let cubic = &(&(&(&x3 * y) - &(&(&x2 * y) * x).scale(&q3)) + &(&xy * &x2).scale(&q3)) - &(y * &x3);
    &cubic - &(&xy - &yx).scale(rho)
}

/// Evaluates both defining relations; true iff both vanish.
pub fn check_qdg(a: &ExactMatrix, astar: &ExactMatrix, q: &Rational, rho0: &Rational, rho1: &Rational) -> Result<bool> {
    a.check_same(astar)?;
    if q.is_zero() {
        return Err(Error::Domain("q must be nonzero".into()));
    }
    Ok(qdg_residual(a, astar, q, rho0).is_zero() && qdg_residual(astar, a, q, rho1).is_zero())
}

/// Substitutes `A`, `A*` for the letters and evaluates coefficients at `(q, rho0, rho1)`.
pub fn eval_ncpoly(
    x: &NcPoly,
    a: &ExactMatrix,
    astar: &ExactMatrix,
    q: &Rational,
    rho0: &Rational,
    rho1: &Rational,
) -> Result<ExactMatrix> {
    a.check_same(astar)?;
    let n = a.dim();
    let mut total = ExactMatrix::zero(n);
    for (w, c) in x.terms() {
        let coeff = ring_eval(c, q, rho0, rho1)?;
        if coeff.is_zero() {
            continue;
        }
        let mut m = ExactMatrix::identity(n);
        for l in w.letters() {
            m = &m
                * match l {
                    Letter::A => a,
                    Letter::AStar => astar,
                };
        }
        total = &total + &m.scale(&coeff);
    }
    Ok(total)
}

/// Checks the defining relations of `U_q(sl2-hat)` on the given images:
/// `k`'s commute and are invertible, `k_i e_j k_i^-1 = q^{a_ij/2} e_j`,
/// `k_i f_j k_i^-1 = q^{-a_ij/2} f_j`, `[e_i, f_j] = delta_ij (K_i - K_i^-1)/(q - q^-1)`,
/// and the cubic q-Serre relations.
pub fn uq_relations_hold(g: &Generators, t: &Rational) -> Result<bool> {
    check_t(t)?;
    let q = t * t;
    let qi = q.recip();
    let es = [&g.e0, &g.e1];
    let fs = [&g.f0, &g.f1];
    let ks = [&g.k0, &g.k1];
    let kinv = [g.k0.inverse()?, g.k1.inverse()?];
    if &g.k0 * &g.k1 != &g.k1 * &g.k0 {
        return Ok(false);
    }
    let q3 = &q * &q + Rational::one() + &qi * &qi;
    for i in 0..2 {
        for j in 0..2 {
            let (up, down) = if i == j {
                (q.clone(), qi.clone())
            } else {
                (qi.clone(), q.clone())
            };
            if &(ks[i] * es[j]) * &kinv[i] != es[j].scale(&up) {
                return Ok(false);
            }
            if &(ks[i] * fs[j]) * &kinv[i] != fs[j].scale(&down) {
                return Ok(false);
            }
            let comm = &(es[i] * fs[j]) - &(fs[j] * es[i]);
            let expected = if i == j {
                let big_k = ks[i] * ks[i];
                let big_ki = &kinv[i] * &kinv[i];
                (&big_k - &big_ki).scale(&(&q - &qi).recip())
            } else {
                ExactMatrix::zero(g.dim())
            };
            if comm != expected {
                return Ok(false);
            }
            if i != j {
                for xs in [es, fs] {
                    let (x, y) = (xs[i], xs[j]);
                    let x2 = x * x;
                    let serre = &(&(&(&(&x2 * x) * y) - &(&(&x2 * y) * x).scale(&q3)) + &(&(x * y) * &x2).scale(&q3))
                        - &(&(y * x) * &x2);
                    if !serre.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{coeffs_by_route, Route};
    use crate::exactring::rat;
    use crate::freealg::parse_expression;
    use crate::rewrite::normal_form;
    use crate::testutil::arb_word;
    use crate::verify::{build_relation_lhs, Family};
    use proptest::prelude::*;

    fn params(sites: &[(i64, i64)]) -> CoidealParams {
        CoidealParams {
            t: rat(3, 2),
            sites: sites.iter().map(|&(n, d)| rat(n, d)).collect(),
            c0: rat(2, 1),
            c1: rat(-1, 3),
            cbar0: rat(5, 7),
            cbar1: rat(3, 1),
            eps0: rat(1, 2),
            eps1: rat(-4, 5),
        }
    }

    #[test]
    fn evaluation_module_basics() {
        let t = rat(3, 2);
        let g = evaluation_rep(&rat(5, 1), &t).unwrap();
        assert_eq!(g.dim(), 2);
        let q = &t * &t;
        let k1sq = &g.k1 * &g.k1;
        assert_eq!(&k1sq * &(&g.k0 * &g.k0), ExactMatrix::identity(2));
        let comm = &(&g.e1 * &g.f1) - &(&g.f1 * &g.e1);
        let rhs = (&k1sq - &k1sq.inverse().unwrap()).scale(&(&q - q.recip()).recip());
        assert_eq!(comm, rhs);
        assert!(uq_relations_hold(&g, &t).unwrap());
        assert!(evaluation_rep(&rat(0, 1), &t).is_err());
        assert!(evaluation_rep(&rat(1, 1), &rat(-1, 1)).is_err());
    }

    #[test]
    fn tensor_product_is_a_representation() {
        let p = params(&[(1, 1), (2, 1)]);
        let g = tensor_rep(&p).unwrap();
        assert_eq!(g.dim(), 4);
        assert!(g.k0.is_diagonal() && g.k1.is_diagonal());
        let single = evaluation_rep(&rat(1, 1), &p.t).unwrap();
        let s2 = evaluation_rep(&rat(2, 1), &p.t).unwrap();
        assert_eq!(g.k1, single.k1.kron(&s2.k1));
        assert!(uq_relations_hold(&g, &p.t).unwrap());
        let one = tensor_rep(&params(&[(1, 1)])).unwrap();
        assert_eq!(one, single);
        let three = tensor_rep(&params(&[(1, 1), (2, 1), (-1, 3)])).unwrap();
        assert!(uq_relations_hold(&three, &p.t).unwrap());
    }

    #[test]
    fn broken_coproduct_fails_the_relations() {
        let p = params(&[(1, 1), (2, 1)]);
        let mut g = tensor_rep(&p).unwrap();
        let a = evaluation_rep(&rat(1, 1), &p.t).unwrap();
        let b = evaluation_rep(&rat(2, 1), &p.t).unwrap();
        // a naive sum e(x)1 + 1(x)e is not a homomorphism
        g.e1 = &a.e1.kron(&ExactMatrix::identity(2)) + &ExactMatrix::identity(2).kron(&b.e1);
        assert!(!uq_relations_hold(&g, &p.t).unwrap());
    }

    #[test]
    fn coideal_pairs_pass_the_gate() {
        for sites in [&[(1, 1)][..], &[(1, 1), (2, 1)], &[(1, 1), (2, 1), (-3, 4)]] {
            let pair = coideal_generators(&params(sites)).unwrap();
            assert!(pair.gate().unwrap(), "L = {}", sites.len());
        }
    }

    #[test]
    fn gate_negative_controls() {
        let pair = coideal_generators(&params(&[(1, 1), (2, 1)])).unwrap();
        let mut bad = pair.a.clone();
        let x = bad.get(0, 1) + Rational::one();
        bad.set(0, 1, x);
        assert!(!check_qdg(&bad, &pair.astar, &pair.q, &pair.rho0, &pair.rho1).unwrap());
        let wrong_rho = &pair.rho0 + Rational::one();
        assert!(!check_qdg(&pair.a, &pair.astar, &pair.q, &wrong_rho, &pair.rho1).unwrap());
        assert!(matches!(
            check_qdg(&pair.a, &ExactMatrix::identity(2), &pair.q, &pair.rho0, &pair.rho1),
            Err(Error::DimensionMismatch(_))
        ));
        let id = ExactMatrix::identity(3);
        assert!(check_qdg(&id, &id, &rat(2, 1), &rat(7, 1), &rat(-1, 1)).unwrap());
    }

    #[test]
    fn undeformed_pair_satisfies_q_serre() {
        let mut p = params(&[(1, 1), (2, 1)]);
        p.cbar0 = rat(0, 1);
        p.cbar1 = rat(0, 1);
        p.eps0 = rat(0, 1);
        p.eps1 = rat(0, 1);
        let pair = coideal_generators(&p).unwrap();
        assert!(pair.rho0.is_zero() && pair.rho1.is_zero());
        assert!(pair.gate().unwrap());
    }

    #[test]
    fn eval_is_linear_and_multiplicative() {
        let pair = coideal_generators(&params(&[(1, 1), (2, 1)])).unwrap();
        let q = pair.q.clone();
        let x = parse_expression("[2]_q A A* - rho1 A*^2 + 3").unwrap();
        let y = parse_expression("A - q^-1 rho0 A* A").unwrap();
        let ex = pair.eval(&x, &q).unwrap();
        let ey = pair.eval(&y, &q).unwrap();
        assert_eq!(pair.eval(&(&x * &y), &q).unwrap(), &ex * &ey);
        assert_eq!(pair.eval(&(&x + &y), &q).unwrap(), &ex + &ey);
        assert_eq!(pair.eval(&NcPoly::one(), &q).unwrap(), ExactMatrix::identity(4));
        assert!(pair.eval(&x, &rat(2, 1)).is_err());
    }

    #[test]
    fn relations_vanish_on_coideal_pairs() {
        for sites in [&[(1, 1)][..], &[(1, 1), (2, 1)], &[(1, 1), (2, 1), (-3, 4)]] {
            let pair = coideal_generators(&params(sites)).unwrap();
            assert!(pair.gate().unwrap());
            for r in 1..=3 {
                let t = coeffs_by_route(r, Route::Genfun).unwrap();
                for fam in [Family::One, Family::Two] {
                    let lhs = build_relation_lhs(&t, fam).unwrap();
                    assert!(pair.eval(&lhs, &pair.q).unwrap().is_zero(), "r={r} L={}", sites.len());
                }
            }
        }
    }

    #[test]
    fn perturbed_relation_does_not_vanish() {
        let pair = coideal_generators(&params(&[(1, 1), (2, 1)])).unwrap();
        let t = coeffs_by_route(2, Route::Genfun)
            .unwrap()
            .perturbed(0, 1, &crate::exactring::LaurentPoly::one())
            .unwrap();
        let lhs = build_relation_lhs(&t, Family::One).unwrap();
        assert!(!pair.eval(&lhs, &pair.q).unwrap().is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 3)],
            vec![rat(1, 1), rat(5, 1), rat(1, 1)],
        ])
        .unwrap();
        assert_eq!(&m * &m.inverse().unwrap(), ExactMatrix::identity(3));
        assert!(ExactMatrix::zero(2).inverse().is_err());
        assert!(ExactMatrix::from_rows(vec![vec![rat(1, 1)], vec![]]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn reduction_is_sound_under_evaluation(w in arb_word(10)) {
            let pair = coideal_generators(&params(&[(1, 1), (2, 1)])).unwrap();
            let x = NcPoly::from_word(w);
            let nf = normal_form(&x);
            prop_assert_eq!(pair.eval(&x, &pair.q).unwrap(), pair.eval(&nf, &pair.q).unwrap());
        }
    }
}
