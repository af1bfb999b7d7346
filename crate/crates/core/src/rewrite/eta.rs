use crate::exactring::LaurentPoly;
use crate::qnumbers::qint;

/// Coefficients `eta^{(m)}_{k,i}` of the ordered expansion of `A^m A*`.
///
/// For even `m = 2n+2` the index `k` runs over `0..=n`; for odd `m = 2n+3`
/// it runs over `1..=n+1`. `i` is always `0..=2`. Levels start at `m = 3`.
#[derive(Clone, Debug)]
pub struct EtaTable {
    /// `levels[m]` holds the rows for `k` in `k_range(m)`, in order.
    levels: Vec<Vec<[LaurentPoly; 3]>>,
}

impl EtaTable {
    /// Builds every level `3..=m_max`.
    pub fn new(m_max: usize) -> Self {
        let mut t = EtaTable {
            levels: vec![Vec::new(); 3],
        };
        t.extend_to(m_max);
        t
    }

    /// Largest level available.
    pub fn m_max(&self) -> usize {
        self.levels.len() - 1
    }

    /// Admissible `k` for level `m`, or `None` if `m < 3`.
    pub fn k_range(m: usize) -> Option<std::ops::RangeInclusive<usize>> {
        if m < 3 {
            None
        } else if m.is_multiple_of(2) {
            Some(0..=(m - 2) / 2)
        } else {
            Some(1..=(m - 3) / 2 + 1)
        }
    }

    /// `eta^{(m)}_{k,i}`, or `None` outside the admissible ranges.
    pub fn get(&self, m: usize, k: usize, i: usize) -> Option<&LaurentPoly> {
        let range = Self::k_range(m)?;
        if i > 2 || !range.contains(&k) || m > self.m_max() {
            return None;
        }
        Some(&self.levels[m][k - range.start()][i])
    }

    /// Rows `(k, [eta_{k,0}, eta_{k,1}, eta_{k,2}])` of level `m`.
    pub fn rows(&self, m: usize) -> impl Iterator<Item = (usize, &[LaurentPoly; 3])> {
        let start = Self::k_range(m).map(|r| *r.start()).unwrap_or(0);
        let level: &[[LaurentPoly; 3]] = if m <= self.m_max() { &self.levels[m] } else { &[] };
        level.iter().enumerate().map(move |(n, row)| (start + n, row))
    }

    pub fn extend_to(&mut self, m_max: usize) {
        let a3 = qint(3).unwrap();
        while self.m_max() < m_max {
            let m = self.levels.len();
            let level = if m == 3 {
                vec![[a3.clone(), -&a3, LaurentPoly::one()]]
            } else if m.is_multiple_of(2) {
                self.even_level(m, &a3)
            } else {
                self.odd_level(m, &a3)
            };
            self.levels.push(level);
        }
    }

    fn prev(&self, m: usize, k: usize, i: usize) -> &LaurentPoly {
        self.get(m - 1, k, i)
            .unwrap_or_else(|| panic!("eta recursion read outside level {} at (k={k}, i={i})", m - 1))
    }

    /// Level `m = 2n+2` from level `2n+1`.
    fn even_level(&self, m: usize, a3: &LaurentPoly) -> Vec<[LaurentPoly; 3]> {
        let n = (m - 2) / 2;
        let p = |k: usize, i: usize| self.prev(m, k, i);
        let mut rows = Vec::with_capacity(n + 1);
        rows.push([LaurentPoly::one(), p(1, 0) - &LaurentPoly::one(), -p(1, 0)]);
        for k in 1..=n {
            let e0 = &(a3 * p(k, 0)) + p(k, 1);
            let (e1, e2) = if k < n {
                (&(&(-a3) * p(k, 0)) + &(p(k + 1, 0) + p(k, 2)), p(k, 0) - p(k + 1, 0))
            } else {
                (&(&(-a3) * p(n, 0)) + p(n, 2), p(n, 0).clone())
            };
            rows.push([e0, e1, e2]);
        }
        rows
    }

    /// Level `m = 2n+3` from level `2n+2`.
    fn odd_level(&self, m: usize, a3: &LaurentPoly) -> Vec<[LaurentPoly; 3]> {
        let n = (m - 3) / 2;
        let p = |k: usize, i: usize| self.prev(m, k, i);
        let mut rows = Vec::with_capacity(n + 1);
        for k in 1..=n + 1 {
            let e0 = &(a3 * p(k - 1, 0)) + p(k - 1, 1);
            let (e1, e2) = if k <= n {
                (
                    &(&(-a3) * p(k - 1, 0)) + &(p(k, 0) + p(k - 1, 2)),
                    p(k - 1, 0) - p(k, 0),
                )
            } else {
                (&(&(-a3) * p(n, 0)) + p(n, 2), p(n, 0).clone())
            };
            rows.push([e0, e1, e2]);
        }
        rows
    }
}
