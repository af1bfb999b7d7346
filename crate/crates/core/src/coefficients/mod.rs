//! The coefficients `c_j^{[r,p]}` of the higher-order relations, produced by
//! independent routes: generating-polynomial expansion, closed-form sum,
//! inductive recursion, and the undeformed (q-Serre) specialization.

mod closed;
mod genfun;
mod lusztig;
mod recursion;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use closed::{closed_coeffs, closedform_coeff};
pub use genfun::{genfun_coeffs, genfun_coeffs_rational, reduced_genfun_coeffs, GeneralCoeffTable};
pub use lusztig::{lusztig_coeffs, qbinomial_theorem_check, qbinomial_theorem_check_perturbed};
pub use recursion::{recursion_coeffs, recursion_step, RecursionTables};

use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;

/// How a [`CoeffTable`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Genfun,
    Closed,
    ClosedLiteral,
    Recursion,
    Lusztig,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::Genfun,
        Route::Closed,
        Route::ClosedLiteral,
        Route::Recursion,
        Route::Lusztig,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Genfun => "genfun",
            Route::Closed => "closed",
            Route::ClosedLiteral => "closed-literal",
            Route::Recursion => "recursion",
            Route::Lusztig => "lusztig",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown route '{s}'")))
    }
}

/// Number of entries in row `p` of the order-`r` table: `2(r-p)+2`.
pub fn row_len(r: usize, p: usize) -> usize {
    2 * (r - p) + 2
}

/// The triangular array `c_j^{[r,p]}`, `0 <= p <= r`, `0 <= j <= 2(r-p)+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    r: usize,
    route: Route,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl CoeffTable {
    /// An empty table; fill it with [`CoeffTable::set`].
    pub fn new(r: usize, route: Route) -> Self {
        CoeffTable {
            r,
            route,
            entries: BTreeMap::new(),
        }
    }

    /// Fills every admissible `(p, j)` from `f`.
    pub fn from_fn(r: usize, route: Route, mut f: impl FnMut(usize, usize) -> Result<LaurentPoly>) -> Result<Self> {
        let mut t = Self::new(r, route);
        for p in 0..=r {
            for j in 0..row_len(r, p) {
                t.entries.insert((p, j), f(p, j)?);
            }
        }
        Ok(t)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn in_range(&self, p: usize, j: usize) -> bool {
        p <= self.r && j < row_len(self.r, p)
    }

    pub fn get(&self, p: usize, j: usize) -> Option<&LaurentPoly> {
        self.entries.get(&(p, j))
    }

    /// Like [`CoeffTable::get`] but reports missing or out-of-range entries.
    pub fn entry(&self, p: usize, j: usize) -> Result<&LaurentPoly> {
        if !self.in_range(p, j) {
            return Err(Error::IndexOutOfRange(format!("c^[{},{p}]_{j}", self.r)));
        }
        self.get(p, j).ok_or(Error::IncompleteTable { p, j })
    }

    pub fn set(&mut self, p: usize, j: usize, value: LaurentPoly) -> Result<()> {
        if !self.in_range(p, j) {
            return Err(Error::IndexOutOfRange(format!("c^[{},{p}]_{j}", self.r)));
        }
        self.entries.insert((p, j), value);
        Ok(())
    }

    /// Entries in `(p, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries.iter().map(|((p, j), v)| (*p, *j, v))
    }

    /// First admissible index without a value.
    pub fn first_missing(&self) -> Option<(usize, usize)> {
        (0..=self.r)
            .flat_map(|p| (0..row_len(self.r, p)).map(move |j| (p, j)))
            .find(|k| !self.entries.contains_key(k))
    }

    pub fn is_complete(&self) -> bool {
        self.first_missing().is_none()
    }

    /// Checks `c_j = c_{2(r-p)+1-j}` on every stored pair.
    pub fn check_symmetry(&self) -> Result<()> {
        for (&(p, j), v) in &self.entries {
            let partner = row_len(self.r, p) - 1 - j;
            if let Some(w) = self.entries.get(&(p, partner)) {
                if v != w {
                    return Err(Error::Integrity(format!(
                        "c^[{},{p}]_{j} = {v} differs from its mirror c^[{},{p}]_{partner} = {w}",
                        self.r, self.r
                    )));
                }
            }
        }
        Ok(())
    }

    /// A copy carrying a different route tag.
    pub fn with_route(&self, route: Route) -> Self {
        CoeffTable { route, ..self.clone() }
    }

    /// A copy with `delta` added to entry `(p, j)`. Used for negative controls.
    pub fn perturbed(&self, p: usize, j: usize, delta: &LaurentPoly) -> Result<Self> {
        let mut t = self.clone();
        let v = t.entry(p, j)? + delta;
        t.set(p, j, v)?;
        Ok(t)
    }

    /// First `(p, j)` at which the two tables differ, with both values.
    pub fn first_mismatch(&self, other: &CoeffTable) -> Option<Mismatch> {
        let r = self.r.max(other.r);
        for p in 0..=r {
            let len = row_len(r, p).max(if p <= self.r { row_len(self.r, p) } else { 0 });
            for j in 0..len {
                let (a, b) = (self.get(p, j), other.get(p, j));
                if a != b {
                    return Some(Mismatch {
                        r,
                        p,
                        j,
                        left: a.cloned(),
                        right: b.cloned(),
                    });
                }
            }
        }
        None
    }
}

/// A differing entry between two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub r: usize,
    pub p: usize,
    pub j: usize,
    pub left: Option<LaurentPoly>,
    pub right: Option<LaurentPoly>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<LaurentPoly>| v.as_ref().map_or("<missing>".to_string(), |x| x.to_string());
        write!(
            f,
            "(r={}, p={}, j={}): {} vs {}",
            self.r,
            self.p,
            self.j,
            show(&self.left),
            show(&self.right)
        )
    }
}

/// Table for order `r` by the given route.
pub fn coeffs_by_route(r: usize, route: Route) -> Result<CoeffTable> {
    if r == 0 {
        return Err(Error::Domain("relation order r must be at least 1".into()));
    }
    match route {
        Route::Genfun => reduced_genfun_coeffs(r),
        Route::Closed => closed_coeffs(r, false),
        Route::ClosedLiteral => closed_coeffs(r, true),
        Route::Recursion => Ok(recursion_coeffs(r)?.pop().expect("r >= 1")),
        Route::Lusztig => lusztig_coeffs(r),
    }
}
