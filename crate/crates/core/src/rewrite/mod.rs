//! Reduction modulo the defining relation
//! `A^3 A* = [3] A^2 A* A - [3] A A* A^2 + A* A^3 + rho0 (A A* - A* A)`.

mod eta;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use eta::EtaTable;

use crate::exactring::{LaurentPoly, RingElement};
use crate::freealg::{Letter, NcPoly, Word};
use crate::qnumbers::qint;

fn a_pow(n: usize) -> Word {
    Word::power(Letter::A, n)
}

/// `A^a A* A^t`.
fn head_tail(a: usize, t: usize) -> Word {
    a_pow(a).concat(&Word::power(Letter::AStar, 1)).concat(&a_pow(t))
}

/// Right-hand side of the rule for `A^3 A*` as `(word, coefficient)` pairs.
pub fn rule_rhs() -> Vec<(Word, RingElement)> {
    let a3 = RingElement::from(qint(3).unwrap());
    vec![
        (head_tail(2, 1), a3.clone()),
        (head_tail(1, 2), -&a3),
        (head_tail(0, 3), RingElement::one()),
        (head_tail(1, 0), RingElement::rho0()),
        (head_tail(0, 1), -RingElement::rho0()),
    ]
}

/// One rewrite: which word was rewritten, where, and into how many terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub position: usize,
    pub word: Word,
    pub terms: usize,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} terms @pos {}", self.word, self.terms, self.position)
    }
}

/// Record of a stepwise reduction.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub final_form: NcPoly,
    pub step_count: usize,
}

impl ReductionTrace {
    /// Re-applies the recorded steps to `input`.
    pub fn replay(&self, input: &NcPoly) -> NcPoly {
        let mut x = input.clone();
        for s in &self.steps {
            x = apply_at(&x, &s.word, s.position);
        }
        x
    }

    /// One line per step, `<word> -> <k> terms @pos <i>`.
    pub fn lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.to_string()).collect()
    }
}

/// Replaces the occurrence of `A^3 A*` at `pos` in `word` (a term of `x`).
fn apply_at(x: &NcPoly, word: &Word, pos: usize) -> NcPoly {
    let mut out = x.clone();
    let c = out.remove(word).expect("trace step refers to a missing word");
    let (u, v) = (word.slice(0, pos), word.slice(pos + 4, word.len()));
    for (w, k) in rule_rhs() {
        out.add_term(u.concat(&w).concat(&v), &(&c * &k));
    }
    out
}

/// Rewrites the leftmost occurrence of `A^3 A*` in the first reducible word
/// (canonical term order). Returns the new polynomial and the step, or
/// `None` if `x` is already in normal form.
pub fn reduce_once_step(x: &NcPoly) -> Option<(NcPoly, TraceStep)> {
    let (word, pos) = x.terms().find_map(|(w, _)| w.find_reducible().map(|p| (*w, p)))?;
    let next = apply_at(x, &word, pos);
    let step = TraceStep {
        position: pos,
        word,
        terms: rule_rhs().len(),
    };
    Some((next, step))
}

/// One reduction step; returns the input unchanged if nothing is reducible.
pub fn reduce_once(x: &NcPoly) -> NcPoly {
    match reduce_once_step(x) {
        Some((next, _)) => next,
        None => x.clone(),
    }
}

/// Stepwise normal form with a full trace. Every step is checked to strictly
/// decrease the termination measure of the rewritten word.
pub fn normal_form_traced(x: &NcPoly) -> ReductionTrace {
    let mut cur = x.clone();
    let mut steps = Vec::new();
    while let Some((next, step)) = reduce_once_step(&cur) {
        let before = step.word.measure();
        let (u, v) = (
            step.word.slice(0, step.position),
            step.word.slice(step.position + 4, step.word.len()),
        );
        for (w, _) in rule_rhs() {
            let after = u.concat(&w).concat(&v).measure();
            assert!(
                after < before,
                "termination measure did not decrease: {before:?} -> {after:?}"
            );
        }
        steps.push(step);
        cur = next;
    }
    ReductionTrace {
        step_count: steps.len(),
        steps,
        final_form: cur,
    }
}

/// Whether no word of `x` contains `A^3 A*`.
pub fn is_normal(x: &NcPoly) -> bool {
    x.terms().all(|(w, _)| w.find_reducible().is_none())
}

/// Memoized normal forms of `A^n A*`, stored as `(a, t, coeff)` for the
/// words `A^a A* A^t` (`a <= 2`).
#[derive(Debug)]
pub struct Expansions {
    eta: EtaTable,
    by_n: Vec<Vec<(usize, usize, RingElement)>>,
}

impl Expansions {
    pub fn new(n_max: usize) -> Self {
        let mut e = Expansions {
            eta: EtaTable::new(n_max.max(3)),
            by_n: Vec::new(),
        };
        e.extend_to(n_max);
        e
    }

    pub fn n_max(&self) -> usize {
        self.by_n.len().saturating_sub(1)
    }

    pub fn eta(&self) -> &EtaTable {
        &self.eta
    }

    pub fn extend_to(&mut self, n_max: usize) {
        self.eta.extend_to(n_max.max(3));
        while self.by_n.len() <= n_max {
            let n = self.by_n.len();
            let e = self.assemble(n);
            self.by_n.push(e);
        }
    }

    pub fn get(&self, n: usize) -> &[(usize, usize, RingElement)] {
        &self.by_n[n]
    }

    fn assemble(&self, m: usize) -> Vec<(usize, usize, RingElement)> {
        if m <= 2 {
            return vec![(m, 0, RingElement::one())];
        }
        let mut acc: BTreeMap<(usize, usize), RingElement> = BTreeMap::new();
        let mut put = |a: usize, t: usize, rho: u32, c: &LaurentPoly| {
            let v = RingElement::monomial(rho, 0, c.clone());
            let e = acc.entry((a, t)).or_default();
            *e += &v;
        };
        if m.is_multiple_of(2) {
            let n = (m - 2) / 2;
            for (k, row) in self.eta.rows(m) {
                for (i, c) in row.iter().enumerate() {
                    put(2 - i, 2 * k + i, (n - k) as u32, c);
                }
            }
        } else {
            let n = (m - 3) / 2;
            for (k, row) in self.eta.rows(m) {
                for (i, c) in row.iter().enumerate() {
                    put(2 - i, 2 * k - 1 + i, (n + 1 - k) as u32, c);
                }
            }
            put(1, 0, (n + 1) as u32, &LaurentPoly::one());
            put(0, 1, (n + 1) as u32, &-LaurentPoly::one());
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((a, t), c)| (a, t, c))
            .collect()
    }
}

/// Process-wide expansion memo, grown on demand and shared read-only.
pub fn shared_expansions(n_max: usize) -> Arc<Expansions> {
    static MEMO: OnceLock<Mutex<Arc<Expansions>>> = OnceLock::new();
    let cell = MEMO.get_or_init(|| Mutex::new(Arc::new(Expansions::new(16))));
    let mut guard = cell.lock().unwrap_or_else(|e| e.into_inner());
    if guard.n_max() < n_max {
        *guard = Arc::new(Expansions::new(
            n_max.max((2 * guard.n_max()).min(crate::freealg::MAX_WORD_LEN)),
        ));
    }
    guard.clone()
}

/// Normal form of `A^n A*`, assembled from the eta table.
pub fn power_astar_expansion(n: usize) -> NcPoly {
    let ex = shared_expansions(n);
    let mut out = NcPoly::zero();
    for (a, t, c) in ex.get(n) {
        out.add_term(head_tail(*a, *t), c);
    }
    out
}

/// Normal form of `x` modulo the defining relation.
///
/// Words are consumed left to right. A maximal prefix ending in `A*` is
/// already normal, so each `A^e A*` met next is replaced wholesale by its
/// memoized expansion and suffixes sharing a prefix are merged before
/// descending. The result equals the fixed point of [`reduce_once`].
pub fn normal_form(x: &NcPoly) -> NcPoly {
    normal_form_with_peak(x).0
}

/// [`normal_form`] together with the largest number of terms held in any
/// intermediate suffix set or the output.
pub fn normal_form_with_peak(x: &NcPoly) -> (NcPoly, usize) {
    let ex = shared_expansions(x.degree().max(3));
    let mut state: BTreeMap<Word, RingElement> = BTreeMap::new();
    for (w, c) in x.terms() {
        state.insert(*w, c.clone());
    }
    let mut out = NcPoly::zero();
    let mut peak = 0;
    descend(&ex, Word::EMPTY, state, &mut out, &mut peak);
    peak = peak.max(out.len());
    (out, peak)
}

fn descend(ex: &Expansions, prefix: Word, state: BTreeMap<Word, RingElement>, out: &mut NcPoly, peak: &mut usize) {
    *peak = (*peak).max(state.len());
    let mut children: [BTreeMap<Word, RingElement>; 3] = Default::default();
    for (s, w) in state {
        let Some(e) = s.first_astar() else {
            out.add_term(prefix.concat(&s), &w);
            continue;
        };
        let rest = s.slice(e + 1, s.len());
        for (a, t, c) in ex.get(e) {
            let key = a_pow(*t).concat(&rest);
            let v = &w * c;
            let slot = children[*a].entry(key).or_default();
            *slot += &v;
            if slot.is_zero() {
                children[*a].remove(&key);
            }
        }
    }
    for (a, child) in children.into_iter().enumerate() {
        if !child.is_empty() {
            let p = prefix.concat(&head_tail(a, 0));
            descend(ex, p, child, out, peak);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_expression;
    use crate::testutil::arb_ncpoly;
    use proptest::prelude::*;

    fn expr(s: &str) -> NcPoly {
        parse_expression(s).unwrap()
    }

    #[test]
    fn single_rule_application() {
        let out = reduce_once(&expr("A^3 A*"));
        let expected = expr("[3]_q A^2 A* A - [3]_q A A* A^2 + A* A^3 + rho0 A A* - rho0 A* A");
        assert_eq!(out, expected);
        assert_eq!(reduce_once(&expr("A^2 A* A")), expr("A^2 A* A"));
        assert_eq!(power_astar_expansion(3), expected);
    }

    #[test]
    fn fourth_power_matches_worked_display() {
        // alpha = [3]_q
        let x = expr("A A^3 A*");
        let once = reduce_once(&x);
        let twice = reduce_once(&once);
        assert!(is_normal(&twice));
        let expected = expr(
            "([3]_q [3]_q - [3]_q) A^2 A* A^2 + (1 - [3]_q [3]_q) A A* A^3 + [3]_q A* A^4 \
             + rho0 A^2 A* - [3]_q rho0 A* A^2 + ([3]_q - 1) rho0 A A* A",
        );
        assert_eq!(twice, expected);
        assert_eq!(power_astar_expansion(4), expected);
    }

    #[test]
    fn fifth_power_matches_worked_display() {
        let a = "[3]_q";
        let expected = expr(&format!(
            "({a}{a}{a} - 2{a}{a} + 1) A^2 A* A^3 + {a}(-{a}{a} + {a} + 1) A A* A^4 + {a}({a} - 1) A* A^5 \
             + (2{a} - 1) rho0 A^2 A* A + {a}({a} - 3) rho0 A A* A^2 - ({a}{a} - {a} - 1) rho0 A* A^3 \
             + rho0^2 A A* - rho0^2 A* A"
        ));
        let x = expr("A^5 A*");
        assert_eq!(normal_form_traced(&x).final_form, expected);
        assert_eq!(normal_form(&x), expected);
        assert_eq!(power_astar_expansion(5), expected);
    }

    /// Applies the rule at pseudo-randomly chosen (word, position) pairs.
    fn brute_force(x: &NcPoly, mut seed: u64) -> NcPoly {
        let mut cur = x.clone();
        loop {
            let sites: Vec<(Word, usize)> = cur
                .terms()
                .flat_map(|(w, _)| {
                    (0..w.len().saturating_sub(3))
                        .filter(move |&p| w.slice(p, p + 4) == head_tail(3, 0))
                        .map(move |p| (*w, p))
                })
                .collect();
            if sites.is_empty() {
                return cur;
            }
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let (w, p) = sites[(seed % sites.len() as u64) as usize];
            cur = apply_at(&cur, &w, p);
        }
    }

    #[test]
    fn sixth_power_is_strategy_independent() {
        let x = expr("A^6 A*");
        let nf = normal_form(&x);
        for seed in [1u64, 7, 12345, 0xdead_beef] {
            assert_eq!(brute_force(&x, seed), nf);
        }
        let y = expr("A^4 A* A^3 A* + rho1 A^5 A*^2");
        assert_eq!(brute_force(&y, 99), normal_form(&y));
    }

    #[test]
    fn expansions_match_stepwise_rewriting() {
        for n in 1..=12 {
            let x = NcPoly::from_word(head_tail(n, 0));
            let stepwise = normal_form_traced(&x).final_form;
            assert_eq!(power_astar_expansion(n), stepwise, "n = {n}");
            assert_eq!(normal_form(&x), stepwise, "n = {n}");
        }
        assert_eq!(power_astar_expansion(1), expr("A A*"));
        assert_eq!(power_astar_expansion(2), expr("A^2 A*"));
    }

    #[test]
    fn trace_replays_and_formats() {
        let x = expr("A^4 A* + A* A^3 A*");
        let tr = normal_form_traced(&x);
        assert_eq!(tr.replay(&x), tr.final_form);
        assert_eq!(tr.step_count, tr.steps.len());
        assert_eq!(tr.lines()[0], "A^4 A* -> 5 terms @pos 1");
    }

    #[test]
    fn normal_words_are_fixed() {
        let x = expr("A^2 A* A^7 + A* A^2 A* A + 1");
        assert_eq!(normal_form(&x), x);
        assert_eq!(normal_form_traced(&x).step_count, 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fast_and_stepwise_agree(x in arb_ncpoly(3, 9)) {
            let tr = normal_form_traced(&x);
            let fast = normal_form(&x);
            prop_assert!(is_normal(&fast));
            prop_assert_eq!(&fast, &tr.final_form);
            prop_assert_eq!(tr.replay(&x), fast.clone());
            prop_assert_eq!(normal_form(&fast), fast);
        }
    }
}
