use num_bigint::BigInt;

use super::{row_len, CoeffTable, Route};
use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;
use crate::qnumbers::{beta_s, qint_base};

/// `e[a][b]`: sum over disjoint `P1, P2 ⊂ {1..r}` with `|P1| = a`, `|P2| = b`
/// of `prod_{P1} [s]_{q^2}^2 * prod_{P2} beta_s`, for `a <= p_max`, `b <= k_max`.
fn subset_sums(r: usize, p_max: usize, k_max: usize) -> Result<Vec<Vec<LaurentPoly>>> {
    let mut e = vec![vec![LaurentPoly::zero(); k_max + 1]; p_max + 1];
    e[0][0] = LaurentPoly::one();
    for s in 1..=r as i64 {
        let qs = qint_base(s, 2)?;
        let sq = &qs * &qs;
        let b = beta_s(s)?;
        for a in (0..=p_max).rev() {
            for k in (0..=k_max).rev() {
                let mut v = e[a][k].clone();
                if a > 0 {
                    v += &(&e[a - 1][k] * &sq);
                }
                if k > 0 {
                    v += &(&e[a][k - 1] * &b);
                }
                e[a][k] = v;
            }
        }
    }
    Ok(e)
}

fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::from(0)
    } else {
        num_integer::binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn closed_entry(r: usize, p: usize, j: usize, literal: bool, e: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (k, ek) in e[p].iter().enumerate().take(j + 1) {
        let top = if literal {
            (r - p) as i64
        } else {
            (r - p) as i64 - k as i64
        };
        let c = binom(top, ((j - k) / 2) as i64);
        if c != BigInt::from(0) {
            acc += &ek.scale(&c);
        }
    }
    acc
}

/// Closed-form value of `c_j^{[r,p]}`.
///
/// The binomial weight is `C(r-p-k, floor((j-k)/2))`; with `literal` set it is
/// `C(r-p, floor((j-k)/2))`, which disagrees with the generating polynomial
/// from `(r, p, j) = (3, 0, 3)` on. Indices `j > r-p` are mapped by the
/// mirror symmetry `j -> 2(r-p)+1-j`.
pub fn closedform_coeff(r: usize, p: usize, j: usize, literal: bool) -> Result<LaurentPoly> {
    if r == 0 || p > r || j >= row_len(r, p) {
        return Err(Error::IndexOutOfRange(format!("closed form c^[{r},{p}]_{j}")));
    }
    let j = if j > r - p { row_len(r, p) - 1 - j } else { j };
    let e = subset_sums(r, p, j)?;
    Ok(closed_entry(r, p, j, literal, &e))
}

/// Full table from the closed form.
pub fn closed_coeffs(r: usize, literal: bool) -> Result<CoeffTable> {
    if r == 0 {
        return Err(Error::Domain("relation order r must be at least 1".into()));
    }
    let e = subset_sums(r, r, r)?;
    let route = if literal { Route::ClosedLiteral } else { Route::Closed };
    CoeffTable::from_fn(r, route, |p, j| {
        let jj = if j > r - p { row_len(r, p) - 1 - j } else { j };
        Ok(closed_entry(r, p, jj, literal, &e))
    })
}
