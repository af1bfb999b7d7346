//! Assembly of the order-`r` relation and its certification by reduction.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coefficients::{
    closed_coeffs, recursion_coeffs, reduced_genfun_coeffs, row_len, CoeffTable, Mismatch, Route,
};
use crate::error::{Error, Result};
use crate::exactring::RingElement;
use crate::freealg::{dagger, Letter, NcPoly, Word};
use crate::rewrite::normal_form_with_peak;

/// Which of the two relation families: `1` has `A*^r` in the middle, `2` is its dagger image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    One,
    Two,
}

impl Family {
    pub fn from_index(i: u8) -> Result<Family> {
        match i {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            _ => Err(Error::Domain(format!("relation family must be 1 or 2, got {i}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

/// `sum_{p,j} (-1)^{j+p} rho0^p c_j^{[r,p]} A^{2r+1-2p-j} A*^r A^j` for family 1,
/// and its dagger image for family 2.
pub fn build_relation_lhs(table: &CoeffTable, family: Family) -> Result<NcPoly> {
    if let Some((p, j)) = table.first_missing() {
        return Err(Error::IncompleteTable { p, j });
    }
    let r = table.r();
    let middle = Word::power(Letter::AStar, r);
    let mut out = NcPoly::zero();
    for p in 0..=r {
        let len = row_len(r, p);
        for j in 0..len {
            let mut c = table.entry(p, j)?.clone();
            if (j + p) % 2 == 1 {
                c = -c;
            }
            let w = Word::power(Letter::A, len - 1 - j)
                .concat(&middle)
                .concat(&Word::power(Letter::A, j));
            out.add_term(w, &RingElement::monomial(p as u32, 0, c));
        }
    }
    Ok(match family {
        Family::One => out,
        Family::Two => dagger(&out),
    })
}

/// Outcome of reducing one relation.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub r: usize,
    pub family: Family,
    pub residual_term_count: usize,
    pub peak_term_count: usize,
    pub elapsed: Duration,
    pub route: Route,
    /// `true` when the family-2 result was transported from family 1 by the dagger automorphism.
    pub via_dagger: bool,
    pub residual: NcPoly,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    r: usize,
    family: u8,
    result: &'a str,
    residual_term_count: usize,
    peak_term_count: usize,
    elapsed_ms: u128,
    route: &'a str,
}

impl VerificationReport {
    pub fn is_zero(&self) -> bool {
        self.residual_term_count == 0
    }

    pub fn result_str(&self) -> &'static str {
        if self.is_zero() {
            "zero"
        } else {
            "nonzero"
        }
    }

    pub fn to_json(&self) -> String {
        let j = ReportJson {
            r: self.r,
            family: self.family.index(),
            result: self.result_str(),
            residual_term_count: self.residual_term_count,
            peak_term_count: self.peak_term_count,
            elapsed_ms: self.elapsed.as_millis(),
            route: self.route.as_str(),
        };
        serde_json::to_string(&j).expect("report serializes")
    }

    /// The family-2 report obtained by applying the dagger automorphism.
    pub fn transported(&self) -> VerificationReport {
        VerificationReport {
            family: match self.family {
                Family::One => Family::Two,
                Family::Two => Family::One,
            },
            via_dagger: true,
            residual: dagger(&self.residual),
            ..self.clone()
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} family={} route={} result={} residual_terms={} peak_terms={} elapsed_ms={}{}",
            self.r,
            self.family.index(),
            self.route,
            self.result_str(),
            self.residual_term_count,
            self.peak_term_count,
            self.elapsed.as_millis(),
            if self.via_dagger { " (via dagger)" } else { "" }
        )
    }
}

/// Reduces the family-1 relation built from `table`.
pub fn verify_table(table: &CoeffTable) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = build_relation_lhs(table, Family::One)?;
    let (residual, peak) = normal_form_with_peak(&lhs);
    Ok(VerificationReport {
        r: table.r(),
        family: Family::One,
        residual_term_count: residual.len(),
        peak_term_count: peak,
        elapsed: start.elapsed(),
        route: table.route(),
        via_dagger: false,
        residual,
    })
}

/// Builds the order-`r` relation from `route` and reduces it to normal form.
pub fn verify_relation(r: usize, route: Route) -> Result<VerificationReport> {
    let table = crate::coefficients::coeffs_by_route(r, route)?;
    verify_table(&table)
}

/// [`verify_relation`] for `r = 1..=r_max`, one thread per order.
pub fn verify_range(r_max: usize, route: Route) -> Result<Vec<VerificationReport>> {
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=r_max)
            .map(|r| s.spawn(move || verify_relation(r, route)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

/// Result of comparing the coefficient routes.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub r_max: usize,
    pub routes: Vec<Route>,
    /// First disagreement with the generating-polynomial route, if any.
    pub mismatch: Option<(Route, Mismatch)>,
}

impl CrossCheckReport {
    pub fn agree(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.routes.iter().map(|r| r.as_str()).collect();
        match &self.mismatch {
            None => write!(f, "routes {} agree for r = 1..{}", names.join(", "), self.r_max),
            Some((route, m)) => write!(f, "genfun vs {route} first mismatch at {m}"),
        }
    }
}

/// Compares genfun, recursion and closed form (optionally also the literal closed form)
/// for `r = 1..=r_max`, stopping at the first disagreement.
pub fn cross_check_routes(r_max: usize, include_literal: bool) -> Result<CrossCheckReport> {
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let mut routes = vec![Route::Genfun, Route::Recursion, Route::Closed];
    if include_literal {
        routes.push(Route::ClosedLiteral);
    }
    let rec = recursion_coeffs(r_max)?;
    for r in 1..=r_max {
        let reference = reduced_genfun_coeffs(r)?;
        let mut others = vec![rec[r - 1].clone(), closed_coeffs(r, false)?];
        if include_literal {
            others.push(closed_coeffs(r, true)?);
        }
        for other in others {
            if let Some(m) = reference.first_mismatch(&other) {
                return Ok(CrossCheckReport {
                    r_max,
                    routes,
                    mismatch: Some((other.route(), m)),
                });
            }
        }
    }
    Ok(CrossCheckReport {
        r_max,
        routes,
        mismatch: None,
    })
}
