use super::{CoeffTable, Route};
use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;
use crate::qnumbers::qbinomial;

/// The undeformed limit: row `p = 0` is `[2r+1 choose j]_q`, all other rows vanish.
pub fn lusztig_coeffs(r: usize) -> Result<CoeffTable> {
    if r == 0 {
        return Err(Error::Domain("relation order r must be at least 1".into()));
    }
    CoeffTable::from_fn(r, Route::Lusztig, |p, j| {
        if p == 0 {
            qbinomial(2 * r as i64 + 1, j as i64)
        } else {
            Ok(LaurentPoly::zero())
        }
    })
}

/// Checks `prod_{m=0}^{2r} (1 - q^{2m} u) = sum_j [2r+1 choose j]_q (-1)^j q^{2jr} u^j`
/// as polynomials in `u` over Laurent polynomials in `q`.
pub fn qbinomial_theorem_check(r: usize) -> Result<bool> {
    qbinomial_theorem_check_perturbed(r, None)
}

/// [`qbinomial_theorem_check`] with an optional `(j, delta)` added to the
/// right-hand coefficient of `u^j`; a nonzero delta must make the check fail.
pub fn qbinomial_theorem_check_perturbed(r: usize, perturb: Option<(usize, LaurentPoly)>) -> Result<bool> {
    if r == 0 {
        return Err(Error::Domain("relation order r must be at least 1".into()));
    }
    let n = 2 * r + 1;
    let mut lhs = vec![LaurentPoly::one()];
    for m in 0..n {
        let factor = -LaurentPoly::q_pow(2 * m as i32);
        let mut next = vec![LaurentPoly::zero(); lhs.len() + 1];
        for (d, c) in lhs.iter().enumerate() {
            next[d] += c;
            next[d + 1] += &(c * &factor);
        }
        lhs = next;
    }
    let mut rhs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut c = qbinomial(n as i64, j as i64)?.shift(2 * (j * r) as i32);
        if j % 2 == 1 {
            c = -c;
        }
        if let Some((pj, delta)) = &perturb {
            if *pj == j {
                c += delta;
            }
        }
        rhs.push(c);
    }
    Ok(lhs == rhs)
}
