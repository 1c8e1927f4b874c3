//! Enumeration of all sequential products on a finite effect algebra.
//!
//! The search fills the `n × n` product table by backtracking. Every cell
//! holds a candidate set (a bitmask over the carrier). Propagation only ever
//! removes values that (S1)–(S5) rule out; each complete table is then
//! re-verified with [`check_sea_axioms`], so the solution set does not depend
//! on the propagators being complete.
//!
//! Propagators:
//! - S1: for every row `a` and every defined `b ⊕ c = d`, generalized arc
//!   consistency on `a∘b ⊕ a∘c = a∘d`.
//! - S2: row `1` is the identity. Together with S1, S3 and S4 this also fixes
//!   `a∘0 = 0∘a = 0` and `a∘1 = a` before the search starts.
//! - S3: `a∘b = 0` forces `b∘a = 0`, and `b∘a ≠ 0` forbids `a∘b = 0`.
//! - S4, S5: applied lazily to pairs whose commutation is already decided.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::axioms::check_sea_axioms;
use crate::finite::{ElemId, FiniteEffectAlgebra, SeqProductTable, TableSea};

pub const DEFAULT_MAX_SIZE: usize = 16;
/// Candidate sets are `u32` bitmasks.
pub const HARD_MAX_SIZE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Verdict {
    None,
    Unique,
    Multiple { count: usize, limit_hit: bool },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::None => "none",
            Verdict::Unique => "unique",
            Verdict::Multiple { .. } => "multiple",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub dead_ends: u64,
    /// Domain reductions made by each of S1..S5.
    pub firings: [u64; 5],
    pub leaves: u64,
    /// Complete tables that propagation let through but the independent
    /// check rejected.
    pub leaves_rejected: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    /// Verified tables in canonical (lexicographic) order, at most `limit`.
    pub tables: Vec<SeqProductTable>,
    /// More than `limit` products exist.
    pub truncated: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("carrier has {size} elements; the solver is limited to {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("more than one sequential product exists")]
    Multiple {
        first: Box<SeqProductTable>,
        second: Box<SeqProductTable>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_size: usize,
    pub limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_size: DEFAULT_MAX_SIZE,
            limit: 64,
        }
    }
}

/// All sequential products on `alg`, keeping at most `limit` tables.
pub fn enumerate_products(alg: &FiniteEffectAlgebra, limit: usize) -> Result<SolveOutcome, SolveError> {
    enumerate_with(
        alg,
        &SolverConfig {
            limit,
            ..SolverConfig::default()
        },
    )
}

pub fn enumerate_with(alg: &FiniteEffectAlgebra, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    let n = alg.len();
    let bound = config.max_size.min(HARD_MAX_SIZE);
    if n > bound {
        return Err(SolveError::TooLarge { size: n, bound });
    }
    let start = Instant::now();
    let mut search = Search::new(alg, config.limit.saturating_add(1));
    let mut domains = vec![search.full; n * n];
    if search.initialize(&mut domains).is_ok() && search.propagate(&mut domains, None).is_ok() {
        search.dfs(domains);
    } else {
        // the root itself is refuted
        search.stats.nodes += 1;
        search.stats.dead_ends += 1;
    }
    let Search { mut solutions, mut stats, .. } = search;
    stats.wall_time = start.elapsed();

    let found = solutions.len();
    let truncated = found > config.limit;
    solutions.sort();
    solutions.truncate(config.limit);
    let verdict = match found {
        0 => Verdict::None,
        1 => Verdict::Unique,
        count => Verdict::Multiple {
            count: count.min(config.limit),
            limit_hit: truncated,
        },
    };
    Ok(SolveOutcome {
        verdict,
        tables: solutions,
        truncated,
        stats,
    })
}

/// The sequential product, if exactly one exists.
pub fn unique_product(alg: &FiniteEffectAlgebra) -> Result<Option<SeqProductTable>, SolveError> {
    let out = enumerate_products(alg, 2)?;
    match out.verdict {
        Verdict::None => Ok(None),
        Verdict::Unique => Ok(out.tables.into_iter().next()),
        Verdict::Multiple { .. } => {
            let mut it = out.tables.into_iter();
            let first = it.next().expect("two tables");
            let second = it.next().expect("two tables");
            Err(SolveError::Multiple {
                first: Box::new(first),
                second: Box::new(second),
            })
        }
    }
}

/// Human-facing summary of a finished search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub verdict: String,
    pub solutions: usize,
    pub truncated: bool,
    pub nodes: u64,
    pub dead_ends: u64,
    pub firings_s1: u64,
    pub firings_s2: u64,
    pub firings_s3: u64,
    pub firings_s4: u64,
    pub firings_s5: u64,
    pub leaves_rejected: u64,
    pub wall_time_ms: f64,
}

pub fn search_statistics(outcome: &SolveOutcome) -> SearchReport {
    let s = &outcome.stats;
    SearchReport {
        verdict: outcome.verdict.label().to_string(),
        solutions: outcome.tables.len(),
        truncated: outcome.truncated,
        nodes: s.nodes,
        dead_ends: s.dead_ends,
        firings_s1: s.firings[0],
        firings_s2: s.firings[1],
        firings_s3: s.firings[2],
        firings_s4: s.firings[3],
        firings_s5: s.firings[4],
        leaves_rejected: s.leaves_rejected,
        wall_time_ms: s.wall_time.as_secs_f64() * 1e3,
    }
}

struct Conflict;

#[derive(Clone, Copy)]
enum Rule {
    S1 = 0,
    S2 = 1,
    S3 = 2,
    S4 = 3,
    S5 = 4,
}

struct Search<'a> {
    alg: &'a FiniteEffectAlgebra,
    n: usize,
    full: u32,
    zero: usize,
    one: usize,
    sum: Vec<Option<usize>>,
    comp: Vec<usize>,
    /// `(x, y, z)` cells with `x ⊕ y = z` required.
    additivity: Vec<[usize; 3]>,
    watchers: Vec<Vec<usize>>,
    /// Static branching priority per cell, lower first.
    priority: Vec<(u8, usize, u8, usize)>,
    want: usize,
    solutions: Vec<SeqProductTable>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(alg: &'a FiniteEffectAlgebra, want: usize) -> Self {
        let n = alg.len();
        let zero = alg.zero_id().0;
        let one = alg.one_id().0;
        let sum: Vec<Option<usize>> = (0..n * n)
            .map(|k| alg.sum_id(ElemId(k / n), ElemId(k % n)).map(|e| e.0))
            .collect();
        let comp = (0..n).map(|a| alg.complement_id(ElemId(a)).0).collect();

        let mut additivity = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    if b == zero || c == zero {
                        continue;
                    }
                    if let Some(d) = sum[b * n + c] {
                        additivity.push([a * n + b, a * n + c, a * n + d]);
                    }
                }
            }
        }
        let mut watchers = vec![Vec::new(); n * n];
        for (i, cells) in additivity.iter().enumerate() {
            for &c in cells {
                if !watchers[c].contains(&i) {
                    watchers[c].push(i);
                }
            }
        }
        let atoms: Vec<usize> = alg.atoms().into_iter().map(|a| a.0).collect();
        let rank = |x: usize| if atoms.contains(&x) { 0u8 } else { 1u8 };
        let priority = (0..n * n).map(|k| (rank(k / n), k / n, rank(k % n), k % n)).collect();

        Self {
            alg,
            n,
            full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
            zero,
            one,
            sum,
            comp,
            additivity,
            watchers,
            priority,
            want,
            solutions: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn cell(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    fn singleton(d: u32) -> Option<usize> {
        (d.count_ones() == 1).then(|| d.trailing_zeros() as usize)
    }

    fn initialize(&mut self, d: &mut [u32]) -> Result<(), Conflict> {
        let (z, o) = (self.zero, self.one);
        for a in 0..self.n {
            self.restrict(d, self.cell(o, a), 1 << a, Rule::S2, &mut Vec::new())?;
            self.restrict(d, self.cell(a, z), 1 << z, Rule::S1, &mut Vec::new())?;
            self.restrict(d, self.cell(z, a), 1 << z, Rule::S3, &mut Vec::new())?;
            self.restrict(d, self.cell(a, o), 1 << a, Rule::S4, &mut Vec::new())?;
        }
        Ok(())
    }

    /// Intersects a cell with `mask`; queues its additivity constraints when
    /// the domain shrinks.
    fn restrict(&mut self, d: &mut [u32], cell: usize, mask: u32, rule: Rule, queue: &mut Vec<usize>) -> Result<bool, Conflict> {
        let new = d[cell] & mask;
        if new == d[cell] {
            return Ok(false);
        }
        if new == 0 {
            return Err(Conflict);
        }
        d[cell] = new;
        self.stats.firings[rule as usize] += 1;
        queue.extend_from_slice(&self.watchers[cell]);
        Ok(true)
    }

    fn equate(&mut self, d: &mut [u32], x: usize, y: usize, rule: Rule, queue: &mut Vec<usize>) -> Result<bool, Conflict> {
        let m = d[x] & d[y];
        let a = self.restrict(d, x, m, rule, queue)?;
        let b = self.restrict(d, y, m, rule, queue)?;
        Ok(a || b)
    }

    fn revise(&mut self, d: &mut [u32], k: usize, queue: &mut Vec<usize>) -> Result<(), Conflict> {
        let [x, y, z] = self.additivity[k];
        let n = self.n;
        let (dx, dy, dz) = (d[x], d[y], d[z]);
        let (mut nx, mut ny, mut nz) = (0u32, 0u32, 0u32);
        if x == y {
            for v in bits(dx) {
                if let Some(s) = self.sum[v * n + v] {
                    if dz >> s & 1 == 1 {
                        nx |= 1 << v;
                        nz |= 1 << s;
                    }
                }
            }
            ny = nx;
        } else {
            for v in bits(dx) {
                for w in bits(dy) {
                    if let Some(s) = self.sum[v * n + w] {
                        if dz >> s & 1 == 1 {
                            nx |= 1 << v;
                            ny |= 1 << w;
                            nz |= 1 << s;
                        }
                    }
                }
            }
        }
        self.restrict(d, x, nx, Rule::S1, queue)?;
        self.restrict(d, y, ny, Rule::S1, queue)?;
        self.restrict(d, z, nz, Rule::S1, queue)?;
        Ok(())
    }

    fn propagate(&mut self, d: &mut [u32], changed: Option<usize>) -> Result<(), Conflict> {
        let mut queue: Vec<usize> = match changed {
            Some(cell) => self.watchers[cell].clone(),
            None => (0..self.additivity.len()).collect(),
        };
        loop {
            while let Some(k) = queue.pop() {
                self.revise(d, k, &mut queue)?;
            }
            if !self.closure(d, &mut queue)? {
                return Ok(());
            }
        }
    }

    /// One pass of the S3/S4/S5 rules. Returns whether anything changed.
    fn closure(&mut self, d: &mut [u32], queue: &mut Vec<usize>) -> Result<bool, Conflict> {
        let n = self.n;
        let z = self.zero;
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                let (ab, ba) = (self.cell(a, b), self.cell(b, a));
                if d[ab] == 1 << z {
                    changed |= self.restrict(d, ba, 1 << z, Rule::S3, queue)?;
                }
                if d[ba] >> z & 1 == 0 {
                    changed |= self.restrict(d, ab, !(1 << z), Rule::S3, queue)?;
                }
            }
        }

        let commutes = |d: &[u32], a: usize, b: usize| {
            let (x, y) = (d[a * n + b], d[b * n + a]);
            x == y && x.count_ones() == 1
        };
        for a in 0..n {
            for b in 0..n {
                if !commutes(d, a, b) {
                    continue;
                }
                let bc = self.comp[b];
                changed |= self.equate(d, self.cell(a, bc), self.cell(bc, a), Rule::S4, queue)?;
                let Some(y) = Self::singleton(d[self.cell(a, b)]) else { continue };
                for c in 0..n {
                    if let Some(x) = Self::singleton(d[self.cell(b, c)]) {
                        changed |= self.equate(d, self.cell(a, x), self.cell(y, c), Rule::S4, queue)?;
                    }
                }
            }
        }

        for c in 0..n {
            let partners: Vec<usize> = (0..n).filter(|&a| commutes(d, c, a)).collect();
            for &a in &partners {
                for &b in &partners {
                    if let Some(p) = Self::singleton(d[self.cell(a, b)]) {
                        changed |= self.equate(d, self.cell(c, p), self.cell(p, c), Rule::S5, queue)?;
                    }
                    if let Some(s) = self.sum[a * n + b] {
                        changed |= self.equate(d, self.cell(c, s), self.cell(s, c), Rule::S5, queue)?;
                    }
                }
            }
        }
        Ok(changed)
    }

    fn choose(&self, d: &[u32]) -> Option<usize> {
        (0..d.len())
            .filter(|&k| d[k].count_ones() > 1)
            .min_by_key(|&k| (d[k].count_ones(), self.priority[k]))
    }

    fn dfs(&mut self, d: Vec<u32>) {
        if self.solutions.len() >= self.want {
            return;
        }
        self.stats.nodes += 1;
        let Some(cell) = self.choose(&d) else {
            self.leaf(&d);
            return;
        };
        for v in bits(d[cell]) {
            if self.solutions.len() >= self.want {
                return;
            }
            let mut child = d.clone();
            child[cell] = 1 << v;
            match self.propagate(&mut child, Some(cell)) {
                Ok(()) => self.dfs(child),
                Err(Conflict) => self.stats.dead_ends += 1,
            }
        }
    }

    fn leaf(&mut self, d: &[u32]) {
        self.stats.leaves += 1;
        let cells = d.iter().map(|&m| ElemId(m.trailing_zeros() as usize)).collect();
        let table = SeqProductTable::from_cells(self.n, cells);
        let report = check_sea_axioms(&TableSea::new(self.alg, &table), &self.alg.element_list());
        if report.passed() {
            self.solutions.push(table);
        } else {
            self.stats.leaves_rejected += 1;
        }
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chains_and_diamond_have_none() {
        for alg in [catalog::chain(2).unwrap(), catalog::diamond(), catalog::chain(3).unwrap()] {
            let out = enumerate_products(&alg, 8).unwrap();
            assert_eq!(out.verdict, Verdict::None, "{}", alg.name());
            assert!(out.tables.is_empty());
            assert!(out.stats.nodes >= 1);
        }
    }

    #[test]
    fn boolean_four_is_unique_meet() {
        let b4 = catalog::boolean(2).unwrap();
        let out = enumerate_products(&b4, 8).unwrap();
        assert_eq!(out.verdict, Verdict::Unique);
        assert_eq!(out.tables, vec![catalog::boolean_meet(&b4)]);
    }

    #[test]
    fn two_element_algebra_forced() {
        let c2 = catalog::chain(1).unwrap();
        let t = unique_product(&c2).unwrap().unwrap();
        let (z, o) = (c2.zero_id(), c2.one_id());
        assert_eq!((t.get(z, z), t.get(z, o), t.get(o, z), t.get(o, o)), (z, z, z, o));
    }

    #[test]
    fn boolean_eight_unique_without_truncation() {
        let b8 = catalog::boolean(3).unwrap();
        let out = enumerate_products(&b8, 1).unwrap();
        assert_eq!(out.verdict, Verdict::Unique);
        assert!(!out.truncated);
        assert_eq!(unique_product(&b8).unwrap(), Some(catalog::boolean_meet(&b8)));
    }

    #[test]
    fn oversized_carrier_refused() {
        let b32 = catalog::boolean(5).unwrap();
        let err = enumerate_products(&b32, 1).unwrap_err();
        assert_eq!(err, SolveError::TooLarge { size: 32, bound: 16 });
    }

    #[test]
    fn statistics_are_reported() {
        let out = enumerate_products(&catalog::chain(2).unwrap(), 4).unwrap();
        let r = search_statistics(&out);
        assert_eq!(r.verdict, "none");
        assert!(r.nodes >= 1);
        assert!(r.firings_s2 > 0);
    }
}
