//! Exhaustive search for k-angulations of small point sets.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::generate::random_points;
use crate::geom::PointSet;
use crate::partition::{kangulate_with, required_j, KangulateError, KangulateOptions, KangulateOutcome};
use crate::plane_graph::{segments_conflict, PlaneGraph};
use crate::verify::verify_edges;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_points: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_points: 8,
            max_nodes: 200_000_000,
            time_limit: Some(Duration::from_secs(120)),
        }
    }
}

#[derive(Debug, Clone)]
pub enum OracleResult {
    Found(PlaneGraph),
    NotFound,
    /// A budget ran out before the search finished.
    Exhausted { nodes: u64 },
}

impl OracleResult {
    pub fn label(&self) -> &'static str {
        match self {
            OracleResult::Found(_) => "found",
            OracleResult::NotFound => "not_found",
            OracleResult::Exhausted { .. } => "exhausted",
        }
    }
}

/// Edge counts a k-angulation of `ps` can have: `(k-2) e = k(n-1) - r` for an
/// outer cycle of length `r` covering the hull and leaving at most the
/// interior points inside.
pub fn admissible_edge_counts(ps: &PointSet, k: usize) -> Vec<usize> {
    let n = ps.len();
    let h = ps.hull().len();
    let mut out: Vec<usize> = (h..=n)
        .filter(|&r| (k * (n - 1)).checked_sub(r).is_some_and(|x| x % (k - 2) == 0))
        .map(|r| (k * (n - 1) - r) / (k - 2))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

struct Search<'a> {
    ps: &'a PointSet,
    k: usize,
    cands: Vec<(usize, usize)>,
    conflicts: Vec<u64>,
    incident: Vec<u64>,
    counts: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    out_of_budget: bool,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.out_of_budget = true;
        } else if self.nodes & 0xFFF == 0 {
            if let Some(t) = self.budget.time_limit {
                if self.start.elapsed() > t {
                    self.out_of_budget = true;
                }
            }
        }
        !self.out_of_budget
    }

    /// `chosen` edges taken so far, `blocked` edges that cross one of them,
    /// deciding edge `i` next.
    fn dfs(&mut self, i: usize, chosen: u64, blocked: u64) -> Option<u64> {
        if !self.tick() {
            return None;
        }
        let taken = chosen.count_ones() as usize;
        let max = *self.counts.last()?;
        let min = self.counts[0];
        let m = self.cands.len();
        let open: u64 = if i >= 64 { 0 } else { !0u64 << i } & !blocked & mask(m);
        if taken + (open.count_ones() as usize) < min || taken > max {
            return None;
        }
        for v in 0..self.ps.len() {
            let have = (chosen & self.incident[v]).count_ones();
            if have < 2 && have + (open & self.incident[v]).count_ones() < 2 {
                return None;
            }
        }
        if i == m || taken == max {
            let ok = self.counts.binary_search(&taken).is_ok() && self.accept(chosen);
            return ok.then_some(chosen);
        }
        let bit = 1u64 << i;
        if blocked & bit == 0 {
            if let Some(f) = self.dfs(i + 1, chosen | bit, blocked | self.conflicts[i]) {
                return Some(f);
            }
        }
        if self.out_of_budget {
            return None;
        }
        self.dfs(i + 1, chosen, blocked)
    }

    fn accept(&self, chosen: u64) -> bool {
        let edges = self.edges(chosen);
        verify_edges(self.ps, &edges, self.ps.points(), self.k).overall
    }

    fn edges(&self, chosen: u64) -> Vec<(usize, usize)> {
        (0..self.cands.len()).filter(|&i| chosen >> i & 1 == 1).map(|i| self.cands[i]).collect()
    }
}

fn mask(m: usize) -> u64 {
    if m >= 64 {
        !0
    } else {
        (1u64 << m) - 1
    }
}

/// Complete backtracking over crossing-free edge sets in lexicographic
/// order. Sets larger than `budget.max_points` are not searched.
pub fn brute_force_kangulation(ps: &PointSet, k: usize, budget: SearchBudget) -> OracleResult {
    let n = ps.len();
    if k < 3 || n < k {
        return OracleResult::NotFound;
    }
    if n > budget.max_points || n * (n - 1) / 2 > 64 {
        return OracleResult::Exhausted { nodes: 0 };
    }
    let counts = admissible_edge_counts(ps, k);
    if counts.is_empty() {
        return OracleResult::NotFound;
    }
    let pts = ps.points();
    let cands: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = cands.len();
    let mut conflicts = vec![0u64; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (cands[i], cands[j]);
            if segments_conflict((pts[a.0], pts[a.1]), (pts[b.0], pts[b.1])) {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    let mut incident = vec![0u64; n];
    for (i, &(a, b)) in cands.iter().enumerate() {
        incident[a] |= 1 << i;
        incident[b] |= 1 << i;
    }
    let mut s = Search {
        ps,
        k,
        cands,
        conflicts,
        incident,
        counts,
        nodes: 0,
        budget,
        start: Instant::now(),
        out_of_budget: false,
    };
    match s.dfs(0, 0, 0) {
        Some(chosen) => {
            let edges = s.edges(chosen);
            OracleResult::Found(PlaneGraph::new_unchecked(ps.shared_points(), &edges).expect("verified edges"))
        }
        None if s.out_of_budget => OracleResult::Exhausted { nodes: s.nodes },
        None => OracleResult::NotFound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    pub seed: u64,
    pub j: usize,
    pub interior: usize,
    /// `interior >= j` and `n >= k`.
    pub predicted: bool,
    /// found / infeasible / honest_failure / error
    pub construction: String,
    /// found / not_found / exhausted, or absent above the oracle's size limit.
    pub oracle: Option<String>,
    /// The prediction and a complete search disagree, or the construction
    /// contradicts the search.
    pub discrepancy: bool,
}

/// Seeded random sets for each `n` in range, checked against the interior
/// point condition, the construction and (for small sets) the oracle.
/// Results are ordered by `n`, then seed.
pub fn conjecture_scan(
    k: usize,
    n_range: std::ops::RangeInclusive<usize>,
    seeds: u64,
    budget: SearchBudget,
) -> Vec<ScanRecord> {
    let jobs: Vec<(usize, u64)> = n_range.flat_map(|n| (0..seeds).map(move |s| (n, s))).collect();
    jobs.par_iter()
        .map(|&(n, seed)| scan_one(k, n, seed, budget))
        .collect()
}

fn scan_one(k: usize, n: usize, seed: u64, budget: SearchBudget) -> ScanRecord {
    // small coordinates make sets with few interior points common
    let range = (2 * n as i64).max(8);
    let ps = random_points(n, range, seed.wrapping_mul(1_000_003).wrapping_add(n as u64)).expect("generated set");
    let j = required_j(n, k);
    let interior = ps.interior().len();
    let predicted = n >= k && interior >= j;
    let construction = match kangulate_with(&ps, k, KangulateOptions::default()) {
        Ok(KangulateOutcome::Found(_)) => "found",
        Ok(KangulateOutcome::Infeasible { .. }) => "infeasible",
        Err(KangulateError::HonestFailure { .. }) => "honest_failure",
        Err(_) => "error",
    };
    let oracle = (n <= budget.max_points).then(|| brute_force_kangulation(&ps, k, budget));
    let discrepancy = match &oracle {
        Some(OracleResult::Found(_)) => !predicted || construction == "infeasible",
        Some(OracleResult::NotFound) => predicted || construction == "found",
        _ => false,
    } || construction == "error";
    ScanRecord {
        n,
        seed,
        j,
        interior,
        predicted,
        construction: construction.into(),
        oracle: oracle.map(|o| o.label().into()),
        discrepancy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    #[test]
    fn convex_pentagon_has_no_quadrangulation() {
        let s = ps(&[(0, 0), (4, -2), (8, 0), (8, 5), (4, 7)]);
        assert!(matches!(brute_force_kangulation(&s, 4, SearchBudget::default()), OracleResult::NotFound));
    }

    #[test]
    fn square_center_found() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        match brute_force_kangulation(&s, 4, SearchBudget::default()) {
            OracleResult::Found(g) => {
                assert_eq!(g.internal_faces().len(), 2);
                assert!(g.internal_faces().iter().all(|f| f.len() == 4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn too_few_points() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        assert!(matches!(brute_force_kangulation(&s, 5, SearchBudget::default()), OracleResult::NotFound));
    }

    #[test]
    fn triangulations_always_exist() {
        for seed in 0..10 {
            let s = random_points(7, 20, seed).unwrap();
            assert!(matches!(brute_force_kangulation(&s, 3, SearchBudget::default()), OracleResult::Found(_)));
        }
    }

    #[test]
    fn node_budget_reports_exhausted() {
        let s = random_points(8, 30, 4).unwrap();
        let b = SearchBudget {
            max_nodes: 10,
            ..SearchBudget::default()
        };
        assert!(matches!(brute_force_kangulation(&s, 4, b), OracleResult::Exhausted { .. }));
    }

    #[test]
    fn edge_counts_for_square_center() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        // r = 4 gives e = (4*4 - 4)/2 = 6; r = 5 is not integral
        assert_eq!(admissible_edge_counts(&s, 4), vec![6]);
    }
}
