use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use super::{row_len, CoeffTable, Route};
use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;
use crate::qnumbers::{qbinomial, qint};
use crate::rewrite::EtaTable;

/// Auxiliary arrays `M^{(r,p)}_j`, `N^{(r,p)}_j` appearing in the ordered
/// expansions of `A^{2r+2} A*^r` and `A^{2r+3} A*^r`.
#[derive(Clone, Debug)]
pub struct RecursionTables {
    r: usize,
    m: BTreeMap<(usize, usize), LaurentPoly>,
    n: BTreeMap<(usize, usize), LaurentPoly>,
}

fn signed(e: usize, v: LaurentPoly) -> LaurentPoly {
    if e.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

fn sum(items: impl IntoIterator<Item = Result<LaurentPoly>>) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for x in items {
        acc += &x?;
    }
    Ok(acc)
}

fn c_of(t: &CoeffTable, p: usize, j: usize) -> Result<&LaurentPoly> {
    t.entry(p, j)
}

impl RecursionTables {
    /// Admissible `j` for `M^{(r,p)}_j`.
    pub fn m_range(r: usize, p: usize) -> Option<RangeInclusive<usize>> {
        match p {
            0 => Some(2..=2 * r + 2),
            _ if p <= r => Some(0..=2 * (r - p) + 2),
            _ => None,
        }
    }

    /// Admissible `j` for `N^{(r,p)}_j`.
    pub fn n_range(r: usize, p: usize) -> Option<RangeInclusive<usize>> {
        match p {
            0 => Some(3..=2 * r + 3),
            _ if p <= r => Some(0..=2 * (r - p) + 3),
            _ if p == r + 1 => Some(0..=1),
            _ => None,
        }
    }

    /// Builds both arrays from a complete order-`r` table.
    pub fn build(t: &CoeffTable) -> Result<Self> {
        let r = t.r();
        let c = |p: usize, j: usize| c_of(t, p, j);
        let c1 = c(0, 1)?;
        let k = &(c1 * c1) - c(0, 2)?;

        let mut m = BTreeMap::new();
        for j in Self::m_range(r, 0).unwrap() {
            let v = if j <= 2 * r + 1 {
                c(0, j)? - &(c1 * c(0, j - 1)?)
            } else {
                -(c1 * c(0, 2 * r + 1)?)
            };
            m.insert((0, j), v);
        }
        for p in 1..=r {
            let top = 2 * (r - p) + 1;
            for j in Self::m_range(r, p).unwrap() {
                let v = if j == 0 {
                    c(p, 0)?.clone()
                } else if j <= top {
                    c(p, j)? - &(c1 * c(p, j - 1)?)
                } else {
                    -(c1 * c(p, top)?)
                };
                m.insert((p, j), v);
            }
        }

        let mut n = BTreeMap::new();
        for j in Self::n_range(r, 0).unwrap() {
            let v = if j <= 2 * r + 1 {
                &(c(0, j)? - &(c1 * c(0, j - 1)?)) + &(&k * c(0, j - 2)?)
            } else if j == 2 * r + 2 {
                &(-(c1 * c(0, 2 * r + 1)?)) + &(&k * c(0, 2 * r)?)
            } else {
                &k * c(0, 2 * r + 1)?
            };
            n.insert((0, j), v);
        }
        let c10 = c(1, 0)?;
        for j in Self::n_range(r, 1).unwrap() {
            let v = if j == 0 {
                LaurentPoly::zero()
            } else if j == 1 {
                &(&(-(c1 * c10)) + c(1, 1)?) - &(c10 * c1)
            } else if j < 2 * r {
                &(&(&(&k * c(1, j - 2)?) - &(c1 * c(1, j - 1)?)) + c(1, j)?) - &(c10 * c(0, j)?)
            } else if j == 2 * r {
                &(&(&k * c(1, 2 * r - 2)?) - &(c1 * c(1, 2 * r - 1)?)) - &(c10 * c(0, 2 * r)?)
            } else {
                &(&k * c(1, 2 * r - 1)?) - &(c10 * c(0, 2 * r + 1)?)
            };
            n.insert((1, j), v);
        }
        for p in 2..=r {
            let top = 2 * (r - p) + 1;
            for j in Self::n_range(r, p).unwrap() {
                let v = if j == 0 {
                    c(p, 0)? - &(c10 * c(p - 1, 0)?)
                } else if j == 1 {
                    &(&(-(c1 * c(p, 0)?)) + c(p, 1)?) - &(c10 * c(p - 1, 1)?)
                } else if j <= top {
                    &(&(&(&k * c(p, j - 2)?) - &(c1 * c(p, j - 1)?)) + c(p, j)?) - &(c10 * c(p - 1, j)?)
                } else if j == top + 1 {
                    &(&(&k * c(p, top - 1)?) - &(c1 * c(p, top)?)) - &(c10 * c(p - 1, top + 1)?)
                } else {
                    &(&k * c(p, top)?) - &(c10 * c(p - 1, top + 2)?)
                };
                n.insert((p, j), v);
            }
        }
        for j in Self::n_range(r, r + 1).unwrap() {
            n.insert((r + 1, j), -(c10 * c(r, j)?));
        }
        Ok(RecursionTables { r, m, n })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self, p: usize, j: usize) -> Result<&LaurentPoly> {
        self.m
            .get(&(p, j))
            .ok_or_else(|| Error::IndexOutOfRange(format!("M^({},{p})_{j}", self.r)))
    }

    pub fn n(&self, p: usize, j: usize) -> Result<&LaurentPoly> {
        self.n
            .get(&(p, j))
            .ok_or_else(|| Error::IndexOutOfRange(format!("N^({},{p})_{j}", self.r)))
    }

    /// All stored `M` entries as `((p, j), value)`.
    pub fn m_entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.m.iter()
    }

    /// All stored `N` entries as `((p, j), value)`.
    pub fn n_entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.n.iter()
    }
}

/// Order-1 table read off the defining relation.
fn seed() -> Result<CoeffTable> {
    let a3 = qint(3)?;
    let mut t = CoeffTable::new(1, Route::Recursion);
    for (j, v) in [LaurentPoly::one(), a3.clone(), a3, LaurentPoly::one()]
        .into_iter()
        .enumerate()
    {
        t.set(0, j, v)?;
    }
    t.set(1, 0, LaurentPoly::one())?;
    t.set(1, 1, LaurentPoly::one())?;
    Ok(t)
}

struct Builder {
    table: CoeffTable,
}

impl Builder {
    fn put(&mut self, p: usize, j: usize, v: LaurentPoly) -> Result<()> {
        if let Some(old) = self.table.get(p, j) {
            if *old != v {
                return Err(Error::Integrity(format!(
                    "two recursion formulas disagree on c^[{},{p}]_{j}: {old} vs {v}",
                    self.table.r()
                )));
            }
            return Ok(());
        }
        self.table.set(p, j, v)
    }
}

/// Computes the order-`r+1` table from the order-`r` one.
pub fn recursion_step(prev: &CoeffTable, eta: &EtaTable) -> Result<CoeffTable> {
    let r = prev.r();
    let big_r = r + 1;
    let tabs = RecursionTables::build(prev)?;
    let c = |p: usize, j: usize| c_of(prev, p, j);
    let mm = |p: usize, j: usize| tabs.m(p, j);
    let nn = |p: usize, j: usize| tabs.n(p, j);
    let et = |m: usize, k: usize, i: usize| {
        eta.get(m, k, i)
            .ok_or_else(|| Error::IndexOutOfRange(format!("eta^({m})_({k},{i})")))
    };

    let mut b = Builder {
        table: CoeffTable::new(big_r, Route::Recursion),
    };
    let n_new = 2 * big_r as i64 + 1;
    for j in 0..row_len(big_r, 0) {
        b.put(0, j, qbinomial(n_new, j as i64)?)?;
    }
    let c1n = qbinomial(n_new, 1)?;
    let c2n = qbinomial(n_new, 2)?;

    // c^{[r+1,1]}_0, with the quotient taken as one exact division.
    let quotient = (c(0, 3)? - c(1, 1)?).div_exact(c(0, 1)?)?;
    let c10 = &(&(&(c(0, 1)? * c(0, 1)?) - &c(0, 2)?.scale(&2.into())) + &quotient) + &c(1, 0)?.scale(&2.into());
    b.put(1, 0, c10.clone())?;
    b.put(big_r, 0, &(&c10 * c(r, 0)?) + nn(r + 1, 0)?)?;
    for p in 2..=r {
        b.put(p, 0, nn(p, 0)? + &(&c10 * c(p - 1, 0)?))?;
    }

    // j = 1
    b.put(1, 1, nn(0, 3)? + &(&c1n * mm(1, 0)?))?;
    if r >= 2 {
        let v = &(&(&(-nn(0, 5)?) + nn(1, 3)?) + &(&c10 * c(0, 3)?)) + &(&c1n * mm(2, 0)?);
        b.put(2, 1, v)?;
    }
    {
        let s1 = sum((0..=r).map(|p| Ok(signed(r + p, nn(p, 2 * (r - p) + 3)?.clone()))))?;
        let s2 = sum((0..r).map(|p| Ok(signed(r + p + 1, c(p, 2 * (r - p) + 1)?.clone()))))?;
        b.put(big_r, 1, &s1 + &(&c10 * &s2))?;
    }
    for p in 3..=r {
        let s1 = sum((0..p).map(|j| Ok(signed(j + p + 1, nn(j, 2 * (p - j) + 1)?.clone()))))?;
        let s2 = sum((0..p - 1).map(|j| Ok(signed(j + p, c(j, 2 * (p - j) - 1)?.clone()))))?;
        b.put(p, 1, &(&s1 + &(&c1n * mm(p, 0)?)) + &(&c10 * &s2))?;
    }

    // j = 2
    b.put(
        1,
        2,
        &(&(-(nn(0, 4)? * et(4, 0, 2)?)) + &(&c1n * mm(0, 3)?)) + &(&c2n * c(1, 0)?),
    )?;
    if r >= 2 {
        let v = &(&(&(&(nn(0, 6)? * et(6, 0, 2)?) - &(nn(1, 4)? * et(4, 0, 2)?)) - &(&c1n * &(mm(0, 5)? - mm(1, 3)?)))
            + &(&c2n * c(2, 0)?))
            - &(&(&c10 * c(0, 4)?) * et(4, 0, 2)?);
        b.put(2, 2, v)?;
    }
    for p in 3..=r {
        let s1 = sum((0..p).map(|j| {
            let m = 2 * (p - j) + 2;
            Ok(signed(j + p, nn(j, m)? * et(m, 0, 2)?))
        }))?;
        let s2 = sum((0..p).map(|j| Ok(signed(j + p + 1, mm(j, 2 * (p - j) + 1)?.clone()))))?;
        let s3 = sum((0..p - 1).map(|j| {
            let m = 2 * (p - j);
            Ok(signed(j + p + 1, c(j, m)? * et(m, 0, 2)?))
        }))?;
        b.put(p, 2, &(&(&s1 + &(&c1n * &s2)) + &(&c2n * c(p, 0)?)) + &(&c10 * &s3))?;
    }

    // j = 3
    if r >= 2 {
        let t1 = &(nn(0, 5)? * et(5, 1, 2)?) - &(nn(1, 3)? * et(3, 1, 2)?);
        let t2 = &(&c1n * mm(0, 4)?) * et(4, 0, 2)?;
        let t3 = &(&c10 * c(0, 3)?) * et(3, 1, 2)?;
        let t4 = &c2n * c(0, 3)?;
        let v = &(&(&(-t1) - &t2) + &t3) + &t4;
        b.put(1, 3, v)?;
    }
    for p in 2..=r {
        let s1 = sum((0..=p).map(|j| {
            let m = 2 * (p - j) + 3;
            Ok(signed(j + p, nn(j, m)? * et(m, 1, 2)?))
        }))?;
        let s2 = sum((0..p).map(|j| {
            let m = 2 * (p - j) + 2;
            Ok(signed(j + p, mm(j, m)? * et(m, 0, 2)?))
        }))?;
        let s3 = sum((0..p).map(|j| Ok(signed(j + p + 1, c(j, 2 * (p - j) + 1)?.clone()))))?;
        let s4 = sum((0..p).map(|j| {
            let m = 2 * (p - j) + 1;
            Ok(signed(j + p + 1, c(j, m)? * et(m, 1, 2)?))
        }))?;
        b.put(p, 3, &(&(&s1 + &(&c1n * &s2)) + &(&c2n * &s3)) + &(&c10 * &s4))?;
    }

    // j = 4
    if r >= 3 {
        let t1 = &(nn(0, 6)? * et(6, 1, 2)?) - &(nn(1, 4)? * et(4, 1, 2)?);
        let t2 = &(mm(0, 5)? * et(5, 1, 2)?) - &(mm(1, 3)? * et(3, 1, 2)?);
        let t3 = &(&c2n * c(0, 4)?) * et(4, 0, 2)?;
        let t4 = &(&c10 * c(0, 4)?) * et(4, 1, 2)?;
        let v = &(&(&(-t1) - &(&c1n * &t2)) - &t3) + &t4;
        b.put(1, 4, v)?;
    }
    for p in 2..r {
        let s1 = sum((0..=p).map(|j| {
            let m = 2 * (p - j) + 4;
            Ok(signed(j + p, nn(j, m)? * et(m, 1, 2)?))
        }))?;
        let s2 = sum((0..=p).map(|j| {
            let m = 2 * (p - j) + 3;
            Ok(signed(j + p, mm(j, m)? * et(m, 1, 2)?))
        }))?;
        let s3 = sum((0..p).map(|j| {
            let m = 2 * (p - j) + 2;
            Ok(signed(j + p, c(j, m)? * et(m, 0, 2)?))
        }))?;
        let s4 = sum((0..p).map(|j| {
            let m = 2 * (p - j) + 2;
            Ok(signed(j + p + 1, c(j, m)? * et(m, 1, 2)?))
        }))?;
        b.put(p, 4, &(&(&s1 + &(&c1n * &s2)) + &(&c2n * &s3)) + &(&c10 * &s4))?;
    }

    // c^{[r+1, jj-k]}_{2k+3}
    for jj in 3..=r {
        for k in 1..jj - 1 {
            let big_p = jj - k;
            let s1 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p) + 3;
                Ok(signed(p + jj + k, nn(p, m)? * et(m, k + 1, 2)?))
            }))?;
            let s2 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p) + 2;
                Ok(signed(p + jj + k, mm(p, m)? * et(m, k, 2)?))
            }))?;
            let s3 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p) + 1;
                Ok(signed(p + jj + k, c(p, m)? * et(m, k, 2)?))
            }))?;
            let s4 = sum((0..big_p).map(|p| {
                let m = 2 * (jj - p) + 1;
                Ok(signed(p + jj + k + 1, c(p, m)? * et(m, k + 1, 2)?))
            }))?;
            b.put(
                big_p,
                2 * k + 3,
                &(&(&s1 + &(&c1n * &s2)) + &(&c2n * &s3)) + &(&c10 * &s4),
            )?;
        }
    }

    // c^{[r+1,1]}_{2jj+1}
    for jj in 2..=r {
        let t1 = -(&(nn(0, 2 * jj + 3)? * et(2 * jj + 3, jj, 2)?) - &(nn(1, 2 * jj + 1)? * et(2 * jj + 1, jj, 2)?));
        let t2 = &(et(2 * jj + 2, jj - 1, 2)? * mm(0, 2 * jj + 2)?) - &(mm(1, 2 * jj)? * et(2 * jj, jj - 1, 2)?);
        let t3 = &(c(0, 2 * jj + 1)? * et(2 * jj + 1, jj - 1, 2)?) - &(c(1, 2 * jj - 1)? * et(2 * jj - 1, jj - 1, 2)?);
        let t4 = &(&c10 * c(0, 2 * jj + 1)?) * et(2 * jj + 1, jj, 2)?;
        b.put(1, 2 * jj + 1, &(&(&t1 - &(&c1n * &t2)) - &(&c2n * &t3)) + &t4)?;
    }

    // c^{[r+1, jj-k]}_{2k+2}
    for jj in 4..=r {
        for k in 2..jj - 1 {
            let big_p = jj - k;
            let s1 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p) + 2;
                Ok(signed(p + jj + k, nn(p, m)? * et(m, k, 2)?))
            }))?;
            let s2 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p) + 1;
                Ok(signed(p + jj + k, mm(p, m)? * et(m, k, 2)?))
            }))?;
            let s3 = sum((0..=big_p).map(|p| {
                let m = 2 * (jj - p);
                Ok(signed(p + jj + k, c(p, m)? * et(m, k - 1, 2)?))
            }))?;
            let s4 = sum((0..big_p).map(|p| {
                let m = 2 * (jj - p);
                Ok(signed(p + jj + k + 1, c(p, m)? * et(m, k, 2)?))
            }))?;
            b.put(
                big_p,
                2 * k + 2,
                &(&(&s1 + &(&c1n * &s2)) + &(&c2n * &s3)) + &(&c10 * &s4),
            )?;
        }
    }

    // c^{[r+1,1]}_{2jj}
    for jj in 3..=r {
        let t1 = &(&c10 * c(0, 2 * jj)?) * et(2 * jj, jj - 1, 2)?;
        let t2 = &(nn(0, 2 * jj + 2)? * et(2 * jj + 2, jj - 1, 2)?) - &(nn(1, 2 * jj)? * et(2 * jj, jj - 1, 2)?);
        let t3 =
            &(mm(0, 2 * jj + 1)? * et(2 * jj + 1, jj - 1, 2)?) - &(mm(1, 2 * jj - 1)? * et(2 * jj - 1, jj - 1, 2)?);
        let t4 = &(c(0, 2 * jj)? * et(2 * jj, jj - 2, 2)?) - &(c(1, 2 * jj - 2)? * et(2 * jj - 2, jj - 2, 2)?);
        b.put(1, 2 * jj, &(&(&t1 - &t2) - &(&c1n * &t3)) - &(&c2n * &t4))?;
    }

    // Remaining entries follow from the mirror symmetry.
    let mut table = b.table;
    for p in 0..=big_r {
        let len = row_len(big_r, p);
        for j in 0..len {
            let partner = len - 1 - j;
            match (table.get(p, j).cloned(), table.get(p, partner).cloned()) {
                (None, Some(v)) => table.set(p, j, v)?,
                (None, None) => return Err(Error::IncompleteTable { p, j }),
                _ => {}
            }
        }
    }
    table.check_symmetry()?;
    if !table.entry(0, 0)?.is_one() {
        return Err(Error::Integrity("normalization c^[r,0]_0 = 1 violated".into()));
    }
    Ok(table)
}

/// Tables for `r = 1..=r_max`, each derived from its predecessor.
pub fn recursion_coeffs(r_max: usize) -> Result<Vec<CoeffTable>> {
    if r_max == 0 {
        return Err(Error::Domain("r_max must be at least 1".into()));
    }
    let eta = EtaTable::new(2 * r_max + 3);
    let mut out = vec![seed()?];
    while out.len() < r_max {
        let next = recursion_step(out.last().unwrap(), &eta)?;
        out.push(next);
    }
    Ok(out)
}
