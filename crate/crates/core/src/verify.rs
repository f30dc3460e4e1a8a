//! Checks that a straight-line graph on a point set is a k-angulation,
//! without using any of the construction's bookkeeping.

use serde::{Deserialize, Serialize};

use crate::geom::{cmp_direction_ccw, signed_area2, Point, PointSet};
use crate::partition::required_j;
use crate::plane_graph::{validate_segments, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const CHECK_NAMES: [&str; 6] = [
    "spanning",
    "planar_drawing",
    "two_connected",
    "internal_faces",
    "outer_face",
    "euler_residue",
];

/// Faces of a plane straight-line graph, recomputed from coordinates.
struct Faces {
    /// Vertex walks; bounded faces run counterclockwise.
    walks: Vec<Vec<usize>>,
    areas: Vec<i128>,
}

fn faces_of(points: &[Point], edges: &[(usize, usize)]) -> Faces {
    let n = points.len();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        rot[a].push(b);
        rot[b].push(a);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        let p = points[v];
        r.sort_by(|&a, &b| {
            cmp_direction_ccw((points[a].x - p.x, points[a].y - p.y), (points[b].x - p.x, points[b].y - p.y))
        });
    }
    // half-edge id: position of `to` in rot[from]
    let mut base = vec![0usize; n + 1];
    for v in 0..n {
        base[v + 1] = base[v] + rot[v].len();
    }
    let dir = |from: usize, to: usize| (points[to].x - points[from].x, points[to].y - points[from].y);
    let slot = |from: usize, to: usize| {
        rot[from]
            .binary_search_by(|&x| cmp_direction_ccw(dir(from, x), dir(from, to)))
            .expect("edge")
    };
    let mut used = vec![false; base[n]];
    let mut walks = Vec::new();
    let mut areas = Vec::new();
    for u in 0..n {
        for i in 0..rot[u].len() {
            if used[base[u] + i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, rot[u][i]);
            while !used[base[a] + slot(a, b)] {
                used[base[a] + slot(a, b)] = true;
                walk.push(a);
                // clockwise neighbour after `a` around `b`
                let j = slot(b, a);
                let d = rot[b].len();
                let c = rot[b][(j + d - 1) % d];
                (a, b) = (b, c);
            }
            areas.push(signed_area2(walk.iter().map(|&v| points[v])));
            walks.push(walk);
        }
    }
    Faces { walks, areas }
}

/// No vertex whose removal disconnects the graph, and the graph connected.
fn biconnected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n < 3 {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut root_children = 0;
    // frames: (vertex, parent, next neighbour index)
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(frame) = stack.last_mut() {
        let (v, parent, i) = *frame;
        if i < adj[v].len() {
            frame.2 += 1;
            let w = adj[v][i];
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    return false;
                }
            }
        }
    }
    time == n && root_children == 1
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Runs every check on `g` against `ps` and `k`.
pub fn verify_kangulation(ps: &PointSet, g: &PlaneGraph, k: usize) -> VerificationReport {
    verify_edges(ps, &g.edges(), g.points(), k)
}

/// As [`verify_kangulation`] for a bare edge list drawn on `drawn`.
pub fn verify_edges(ps: &PointSet, edges: &[(usize, usize)], drawn: &[Point], k: usize) -> VerificationReport {
    let n = ps.len();
    let mut checks = Vec::with_capacity(6);

    let in_range = edges.iter().all(|&(a, b)| a < drawn.len() && b < drawn.len());
    let mut degree = vec![0usize; drawn.len()];
    if in_range {
        for &(a, b) in edges {
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let isolated = degree.iter().filter(|&&d| d == 0).count();
    let spanning = in_range && drawn == ps.points() && isolated == 0;
    checks.push(check(
        "spanning",
        spanning,
        if !in_range {
            "edge endpoint out of range".to_string()
        } else if drawn != ps.points() {
            "drawn points differ from the input set".to_string()
        } else {
            format!("{isolated} isolated vertices")
        },
    ));
    if !in_range || drawn.len() != n {
        for name in &CHECK_NAMES[1..] {
            checks.push(check(name, false, "not evaluated"));
        }
        return VerificationReport { checks, overall: false };
    }

    let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    let loops = sorted.iter().any(|&(a, b)| a == b);
    let drawing = validate_segments(drawn, sorted.iter().copied());
    let plane = distinct && !loops && drawing.ok();
    checks.push(check(
        "planar_drawing",
        plane,
        if loops {
            "self-loop".to_string()
        } else if !distinct {
            "repeated edge".to_string()
        } else {
            match drawing.into_error() {
                Some(e) => e.to_string(),
                None => String::new(),
            }
        },
    ));

    let two = biconnected(n, &sorted);
    checks.push(check("two_connected", two, if two { "" } else { "has a cut vertex or is disconnected" }));

    if !plane {
        for name in &CHECK_NAMES[3..] {
            checks.push(check(name, false, "not evaluated on a non-plane drawing"));
        }
        return VerificationReport { checks, overall: false };
    }

    let faces = faces_of(drawn, &sorted);
    let outer: Vec<usize> = (0..faces.walks.len()).filter(|&f| faces.areas[f] < 0).collect();
    let internal: Vec<usize> = (0..faces.walks.len()).filter(|&f| faces.areas[f] > 0).collect();
    let degenerate = faces.walks.len() - outer.len() - internal.len();
    let simple = |w: &Vec<usize>| {
        let mut s = w.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == w.len()
    };
    let bad_faces: Vec<usize> = internal
        .iter()
        .copied()
        .filter(|&f| faces.walks[f].len() != k || !simple(&faces.walks[f]))
        .collect();
    checks.push(check(
        "internal_faces",
        bad_faces.is_empty() && degenerate == 0 && !internal.is_empty(),
        if let Some(&f) = bad_faces.first() {
            format!(
                "{} of {} faces are not simple {k}-gons, e.g. {:?}",
                bad_faces.len(),
                internal.len(),
                faces.walks[f]
            )
        } else {
            format!("{} faces", internal.len())
        },
    ));

    let outer_ok = outer.len() == 1 && simple(&faces.walks[outer[0]]);
    checks.push(check(
        "outer_face",
        outer_ok,
        format!("{} unbounded face walk(s)", outer.len()),
    ));

    let e = sorted.len();
    let f = faces.walks.len();
    let r = if outer.len() == 1 { faces.walks[outer[0]].len() } else { 0 };
    let euler = n + f == e + 2;
    let handshake = f >= 1 && 2 * e == k * (f - 1) + r;
    let residue = if k > 3 {
        let m = (k - 2) as i64;
        (n as i64 - r as i64 - k as i64 + n as i64).rem_euclid(m) == 0
    } else {
        true
    };
    let mut on_outer = vec![false; n];
    if outer.len() == 1 {
        for &v in &faces.walks[outer[0]] {
            on_outer[v] = true;
        }
    }
    let inner_vertices = on_outer.iter().filter(|&&b| !b).count();
    let count_ok = inner_vertices + r == n;
    checks.push(check(
        "euler_residue",
        euler && handshake && residue && count_ok,
        format!("n={n} e={e} f={f} r={r} internal={inner_vertices}"),
    ));

    let overall = checks.iter().all(|c| c.passed);
    VerificationReport { checks, overall }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n >= 2k^2`: the condition is also sufficient.
    Exact,
    /// Below that, the condition is only known to be necessary.
    NecessaryOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub k: usize,
    pub n: usize,
    pub j: usize,
    pub interior: usize,
    /// At least `k` points and at least `j` interior points.
    pub feasible: bool,
    pub regime: Regime,
}

pub fn feasibility(ps: &PointSet, k: usize) -> Feasibility {
    let n = ps.len();
    let j = required_j(n, k);
    let interior = ps.interior().len();
    Feasibility {
        k,
        n,
        j,
        interior,
        feasible: n >= k && interior >= j,
        regime: if n >= 2 * k * k { Regime::Exact } else { Regime::NecessaryOnly },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    fn graph(s: &PointSet, e: &[(usize, usize)]) -> PlaneGraph {
        PlaneGraph::new_unchecked(s.shared_points(), e).unwrap()
    }

    #[test]
    fn square_cycle_is_a_quadrangulation() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let rep = verify_kangulation(&s, &graph(&s, &[(0, 1), (1, 2), (2, 3), (3, 0)]), 4);
        assert!(rep.overall, "{rep:?}");
        assert_eq!(rep.checks.len(), 6);
    }

    #[test]
    fn square_with_diagonal_is_not() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let rep = verify_kangulation(&s, &graph(&s, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), 4);
        assert!(!rep.overall);
        assert!(!rep.check("internal_faces").unwrap().passed);
        assert!(rep.check("two_connected").unwrap().passed);
        let rep = verify_kangulation(&s, &graph(&s, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), 3);
        assert!(rep.overall, "{rep:?}");
    }

    #[test]
    fn crossing_diagonals_fail_planarity() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let rep = verify_edges(&s, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)], s.points(), 3);
        assert!(!rep.check("planar_drawing").unwrap().passed);
        assert!(!rep.overall);
    }

    #[test]
    fn missing_vertex_fails_spanning() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (4, 7)]);
        let rep = verify_edges(&s, &[(0, 1), (1, 2), (2, 3), (3, 0)], s.points(), 4);
        assert!(!rep.check("spanning").unwrap().passed);
    }

    #[test]
    fn path_is_not_two_connected() {
        let s = ps(&[(0, 0), (10, 0), (10, 10)]);
        let rep = verify_edges(&s, &[(0, 1), (1, 2)], s.points(), 3);
        assert!(!rep.check("two_connected").unwrap().passed);
        assert!(!rep.overall);
    }

    #[test]
    fn bowtie_has_cut_vertex() {
        let s = ps(&[(0, 0), (10, 1), (10, 8), (-10, 1), (-10, 9)]);
        let rep = verify_edges(&s, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], s.points(), 3);
        assert!(!rep.check("two_connected").unwrap().passed);
        assert!(rep.check("internal_faces").unwrap().passed);
        assert!(!rep.check("outer_face").unwrap().passed);
    }

    #[test]
    fn feasibility_regimes() {
        let s = ps(&[(0, 0), (4, -2), (8, 0), (8, 5), (4, 7)]);
        let f = feasibility(&s, 4);
        assert_eq!((f.j, f.interior, f.feasible, f.regime), (1, 0, false, Regime::NecessaryOnly));
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        assert!(feasibility(&s, 4).feasible);
    }
}
