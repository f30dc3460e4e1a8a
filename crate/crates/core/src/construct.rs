//! Triangulation building blocks for the interior-point cases.
//!
//! Everything here starts from the wheel triangulation around a central
//! interior point `z`: spokes from `z` to every other point plus the cycle `C`
//! through those points in clockwise radial order. Triangles are then added
//! outside `C` at reflex vertices, and selected wheel regions are
//! retriangulated as pontoons.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{in_convex_hull, is_clockwise, orientation, GeomError, Orientation, Point, PointSet};
use crate::plane_graph::{GraphError, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is not on the boundary cycle")]
    VertexNotOnCycle(usize),
    #[error("only {added} of {needed} triangles could be added")]
    CannotAddTriangles { added: usize, needed: usize },
    #[error("no path satisfies the selection properties")]
    NoValidA,
    #[error("pontoon over a bad or non-convex path starting at cycle index {0}")]
    BadPath(usize),
    #[error("pontoon region at cycle index {0} was already retriangulated")]
    Overlap(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Which branch of the construction produced a k-angulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    J0,
    J1,
    C1A,
    C1B,
    C2A,
    C2B,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 6] = [
        CaseLabel::J0,
        CaseLabel::J1,
        CaseLabel::C1A,
        CaseLabel::C1B,
        CaseLabel::C2A,
        CaseLabel::C2B,
    ];
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Clockwise cycle of point indices with a reflex flag per position.
#[derive(Debug, Clone)]
pub struct BoundaryCycle {
    verts: Vec<usize>,
    reflex: Vec<bool>,
    index: Vec<u32>,
}

impl BoundaryCycle {
    pub fn new(ps: &PointSet, verts: Vec<usize>) -> Self {
        let len = verts.len();
        let reflex = (0..len)
            .map(|i| {
                let p = ps.point(verts[(i + len - 1) % len]);
                let v = ps.point(verts[i]);
                let s = ps.point(verts[(i + 1) % len]);
                orientation(p, v, s) == Orientation::CounterClockwise
            })
            .collect();
        let mut index = vec![u32::MAX; ps.len()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i as u32;
        }
        BoundaryCycle { verts, reflex, index }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Vertex at cycle position `i` (taken modulo the length).
    pub fn at(&self, i: usize) -> usize {
        self.verts[i % self.verts.len()]
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.index.get(v).copied().filter(|&i| i != u32::MAX).map(|i| i as usize)
    }

    pub fn is_reflex(&self, v: usize) -> Result<bool, ConstructError> {
        self.position(v)
            .map(|i| self.reflex[i])
            .ok_or(ConstructError::VertexNotOnCycle(v))
    }

    pub fn reflex_at(&self, i: usize) -> bool {
        self.reflex[i % self.verts.len()]
    }

    fn succ(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    fn pred(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// Clockwise distance from position `from` to position `to`.
    pub fn offset(&self, from: usize, to: usize) -> usize {
        (to + self.len() - from) % self.len()
    }
}

/// A path on a boundary cycle: `len` consecutive positions starting at
/// `start`, in clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclePath {
    pub start: usize,
    pub len: usize,
}

impl CyclePath {
    pub fn new(start: usize, len: usize) -> Self {
        CyclePath { start, len }
    }

    pub fn positions(&self, cycle_len: usize) -> impl Iterator<Item = usize> {
        let start = self.start;
        (0..self.len).map(move |i| (start + i) % cycle_len)
    }

    pub fn end(&self, cycle_len: usize) -> usize {
        (self.start + self.len + cycle_len - 1) % cycle_len
    }

    pub fn contains(&self, pos: usize, cycle_len: usize) -> bool {
        (pos + cycle_len - self.start) % cycle_len < self.len
    }

    pub fn vertices(&self, c: &BoundaryCycle) -> Vec<usize> {
        self.positions(c.len()).map(|i| c.at(i)).collect()
    }

    /// Vertices of the closure: the path plus its predecessor and successor.
    pub fn closure(&self, c: &BoundaryCycle) -> Vec<usize> {
        let n = c.len();
        let mut out = Vec::with_capacity(self.len + 2);
        out.push(c.at(self.start + n - 1));
        out.extend(self.positions(n).map(|i| c.at(i)));
        out.push(c.at(self.start + self.len));
        out
    }
}

/// Cycle of points in radial order around an interior point, forming the
/// wheel triangulation with `z`.
pub fn wheel_cycle(ps: &PointSet, z: usize) -> Result<BoundaryCycle, GeomError> {
    Ok(BoundaryCycle::new(ps, ps.radial_order(z)?))
}

/// Spokes from `z` to every other point plus the radial cycle.
pub fn wheel_triangulation(ps: &PointSet, z: usize) -> Result<PlaneGraph, ConstructError> {
    Ok(TriangulationBuilder::wheel(ps, z)?.to_plane_graph()?)
}

/// The unique maximal convex path whose closure contains `z` in its convex
/// hull, if any.
pub fn maximal_bad_path(c: &BoundaryCycle, z: usize, ps: &PointSet) -> Option<CyclePath> {
    bad_convex_runs(c, z, ps).into_iter().next()
}

/// All maximal convex runs that are bad; there is never more than one.
pub fn bad_convex_runs(c: &BoundaryCycle, z: usize, ps: &PointSet) -> Vec<CyclePath> {
    let zp = ps.point(z);
    maximal_convex_runs(c)
        .into_iter()
        .filter(|run| {
            let pts: Vec<Point> = run.closure(c).into_iter().map(|v| ps.point(v)).collect();
            in_convex_hull(zp, &pts)
        })
        .collect()
}

/// Maximal runs of non-reflex vertices. A cycle without reflex vertices is a
/// single run covering it.
pub fn maximal_convex_runs(c: &BoundaryCycle) -> Vec<CyclePath> {
    let n = c.len();
    let Some(r0) = (0..n).find(|&i| c.reflex_at(i)) else {
        return vec![CyclePath::new(0, n)];
    };
    let mut runs = Vec::new();
    let mut i = 1;
    while i <= n {
        let pos = (r0 + i) % n;
        if c.reflex_at(pos) {
            i += 1;
            continue;
        }
        let start = pos;
        let mut len = 0;
        while i <= n && !c.reflex_at((r0 + i) % n) {
            len += 1;
            i += 1;
        }
        runs.push(CyclePath::new(start, len));
    }
    runs
}

/// A triangle glued outside the current boundary at a reflex vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedTriangle {
    /// The reflex vertex that leaves the boundary.
    pub site: usize,
    /// Its counterclockwise and clockwise boundary neighbours at that time.
    pub ccw: usize,
    pub cw: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PontoonRole {
    /// Joins added triangles across a component of `A \ S`.
    Joint,
    /// Adjustable pontoon at the clockwise extreme of `U`.
    R,
    /// Adjustable pontoon at the counterclockwise extreme of `U`.
    L,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pontoon {
    pub role: PontoonRole,
    pub path: CyclePath,
}

/// Identity of a triangle in the final triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriLabel {
    /// Wheel triangle `(z, c_i, c_{i+1})`.
    Wheel(usize),
    /// Triangle added by the boundary walk, by insertion order.
    Added(usize),
    /// Pontoon triangle `i` of pontoon `p`; `i = 0` is the one touching `z`.
    Pontoon(usize, usize),
}

/// Result of the boundary walk that adds triangles.
#[derive(Debug, Clone)]
pub struct WalkOutcome {
    /// Start position on `C`.
    pub start: usize,
    /// Sites in insertion order.
    pub sites: Vec<usize>,
    /// Positions of `C` examined by the walk.
    pub visited: Vec<bool>,
    /// Number of loop iterations performed.
    pub steps: usize,
}

/// Mutable triangulation over a wheel, owned by one construction.
#[derive(Debug, Clone)]
pub struct TriangulationBuilder {
    ps: PointSet,
    z: usize,
    cycle: BoundaryCycle,
    wheel_alive: Vec<bool>,
    added: Vec<AddedTriangle>,
    pontoons: Vec<Pontoon>,
    debug_checks: bool,
}

impl TriangulationBuilder {
    pub fn wheel(ps: &PointSet, z: usize) -> Result<Self, ConstructError> {
        let cycle = wheel_cycle(ps, z)?;
        Ok(TriangulationBuilder {
            ps: ps.clone(),
            z,
            wheel_alive: vec![true; cycle.len()],
            cycle,
            added: Vec::new(),
            pontoons: Vec::new(),
            debug_checks: false,
        })
    }

    pub fn with_debug_checks(mut self, on: bool) -> Self {
        self.debug_checks = on;
        self
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn cycle(&self) -> &BoundaryCycle {
        &self.cycle
    }

    pub fn point_set(&self) -> &PointSet {
        &self.ps
    }

    pub fn added(&self) -> &[AddedTriangle] {
        &self.added
    }

    pub fn pontoons(&self) -> &[Pontoon] {
        &self.pontoons
    }

    /// Walks clockwise around the current boundary starting at `start`,
    /// gluing a triangle at every reflex vertex met, until `m` triangles have
    /// been added.
    pub fn add_triangles(&mut self, start: usize, m: usize) -> Result<WalkOutcome, ConstructError> {
        let n = self.cycle.len();
        let pts = self.ps.points();
        let at = |i: usize| self.cycle.verts[i];
        let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
        let mut visited = vec![false; n];
        let mut sites = Vec::with_capacity(m);
        let mut remaining = n;
        let mut v = start;
        let mut idle = 0usize;
        let mut steps = 0usize;
        while sites.len() < m {
            if idle > remaining || remaining <= 3 {
                return Err(ConstructError::CannotAddTriangles {
                    added: sites.len(),
                    needed: m,
                });
            }
            visited[v] = true;
            steps += 1;
            let (u, w) = (prev[v], next[v]);
            if orientation(pts[at(u)], pts[at(v)], pts[at(w)]) == Orientation::CounterClockwise {
                self.added.push(AddedTriangle {
                    site: at(v),
                    ccw: at(u),
                    cw: at(w),
                });
                sites.push(at(v));
                next[u] = w;
                prev[w] = u;
                remaining -= 1;
                idle = 0;
                if self.debug_checks {
                    self.check_star_shaped(u, &next)?;
                    self.check_binary_forest()?;
                }
            } else {
                idle += 1;
            }
            v = w;
        }
        Ok(WalkOutcome {
            start,
            sites,
            visited,
            steps,
        })
    }

    /// Every consecutive pair on the current boundary turns clockwise around
    /// `z`, so `z` sees the whole boundary.
    fn check_star_shaped(&self, from: usize, next: &[usize]) -> Result<(), ConstructError> {
        let pts = self.ps.points();
        let zp = pts[self.z];
        let mut i = from;
        loop {
            let j = next[i];
            if !is_clockwise(zp, pts[self.cycle.verts[i]], pts[self.cycle.verts[j]]) {
                return Err(ConstructError::Invariant(format!(
                    "boundary edge ({}, {}) not visible from z",
                    self.cycle.verts[i], self.cycle.verts[j]
                )));
            }
            i = j;
            if i == from {
                return Ok(());
            }
        }
    }

    /// The dual of the current triangulation minus the wheel cycle's edges is
    /// a complete binary forest whose leaves and isolated vertices are wheel
    /// triangles, with the leaves of every tree consecutive around the wheel.
    pub fn check_binary_forest(&self) -> Result<(), ConstructError> {
        let n = self.cycle.len();
        let total = n + self.added.len();
        let fail = |m: String| Err(ConstructError::Invariant(m));
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        for i in 0..n {
            owner.insert(key(self.cycle.at(i), self.cycle.at(i + 1)), i);
        }
        for (t, tri) in self.added.iter().enumerate() {
            let node = n + t;
            for e in [key(tri.ccw, tri.site), key(tri.site, tri.cw)] {
                match owner.remove(&e) {
                    Some(other) => {
                        adj[node].push(other);
                        adj[other].push(node);
                    }
                    None => return fail(format!("added triangle {t} glued along a non-boundary edge")),
                }
            }
            owner.insert(key(tri.ccw, tri.cw), node);
        }
        let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let mut comp = vec![usize::MAX; total];
        let mut comps = 0;
        for s in 0..total {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = comps;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = comps;
                        stack.push(w);
                    }
                }
            }
            comps += 1;
        }
        if edges + comps != total {
            return fail("dual minus the wheel cycle contains a cycle".into());
        }
        for (v, a) in adj.iter().enumerate() {
            let d = a.len();
            let ok = if v < n { d <= 1 } else { d == 2 || d == 3 };
            if !ok {
                return fail(format!("dual node {v} has degree {d}"));
            }
        }
        // one root (degree 2) per non-trivial tree
        let mut roots = vec![0usize; comps];
        let mut nontrivial = vec![false; comps];
        for v in n..total {
            nontrivial[comp[v]] = true;
            if adj[v].len() == 2 {
                roots[comp[v]] += 1;
            }
        }
        if (0..comps).any(|c| nontrivial[c] && roots[c] != 1) {
            return fail("tree without a unique root".into());
        }
        // leaves consecutive: each tree's leaves form one cyclic interval
        let mut boundaries = vec![0usize; comps];
        for i in 0..n {
            let (a, b) = (i, (i + 1) % n);
            let ca = if adj[a].is_empty() { usize::MAX } else { comp[a] };
            let cb = if adj[b].is_empty() { usize::MAX } else { comp[b] };
            if ca != cb && ca != usize::MAX {
                boundaries[ca] += 1;
            }
        }
        if (0..comps).any(|c| nontrivial[c] && boundaries[c] > 1) {
            return fail("leaves of a tree are not consecutive".into());
        }
        Ok(())
    }

    /// Retriangulates the wheel region under `path` by a fan from the
    /// path's clockwise successor.
    pub fn build_pontoon(&mut self, path: CyclePath, role: PontoonRole) -> Result<(), ConstructError> {
        let n = self.cycle.len();
        if path.len == 0 || path.len + 2 > n {
            return Err(ConstructError::BadPath(path.start));
        }
        let closure = path.closure(&self.cycle);
        let pts = self.ps.points();
        let p = pts[closure[0]];
        let s = pts[*closure.last().unwrap()];
        let zp = pts[self.z];
        if !is_clockwise(zp, p, s) {
            return Err(ConstructError::BadPath(path.start));
        }
        if path.positions(n).any(|i| self.cycle.reflex_at(i)) {
            return Err(ConstructError::BadPath(path.start));
        }
        let first_edge = (path.start + n - 1) % n;
        for i in 0..=path.len {
            let e = (first_edge + i) % n;
            if !self.wheel_alive[e] {
                return Err(ConstructError::Overlap(path.start));
            }
        }
        for i in 0..=path.len {
            self.wheel_alive[(first_edge + i) % n] = false;
        }
        self.pontoons.push(Pontoon { role, path });
        Ok(())
    }

    /// Removes the most recently built pontoon.
    pub fn pop_pontoon(&mut self) -> Option<Pontoon> {
        let p = self.pontoons.pop()?;
        let n = self.cycle.len();
        let first_edge = (p.path.start + n - 1) % n;
        for i in 0..=p.path.len {
            self.wheel_alive[(first_edge + i) % n] = true;
        }
        Some(p)
    }

    /// Vertices of pontoon triangle `i` of `p`, clockwise.
    pub fn pontoon_triangle(&self, p: &Pontoon, i: usize) -> [usize; 3] {
        let closure = p.path.closure(&self.cycle);
        let s = *closure.last().unwrap();
        if i == 0 {
            [s, self.z, closure[0]]
        } else {
            [s, closure[i - 1], closure[i]]
        }
    }

    pub fn triangles(&self) -> Vec<([usize; 3], TriLabel)> {
        let n = self.cycle.len();
        let mut out = Vec::with_capacity(n + self.added.len());
        for i in 0..n {
            if self.wheel_alive[i] {
                out.push(([self.z, self.cycle.at(i), self.cycle.at(i + 1)], TriLabel::Wheel(i)));
            }
        }
        for (t, a) in self.added.iter().enumerate() {
            out.push(([a.ccw, a.cw, a.site], TriLabel::Added(t)));
        }
        for (pi, p) in self.pontoons.iter().enumerate() {
            for i in 0..=p.path.len {
                out.push((self.pontoon_triangle(p, i), TriLabel::Pontoon(pi, i)));
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .triangles()
            .iter()
            .flat_map(|(t, _)| [key(t[0], t[1]), key(t[1], t[2]), key(t[2], t[0])])
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn to_plane_graph(&self) -> Result<PlaneGraph, GraphError> {
        PlaneGraph::new_unchecked(self.ps.shared_points(), &self.edges())
    }
}

pub(crate) fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Whether the triangle added at `t.site` keeps an edge of the original cycle.
pub fn shares_cycle_edge(c: &BoundaryCycle, t: &AddedTriangle) -> bool {
    let i = c.position(t.site).expect("site on cycle");
    t.ccw == c.at(c.pred(i)) || t.cw == c.at(c.succ(i))
}

/// Output of path selection after the boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSelection {
    /// Shortest path containing all sites and satisfying the selection rules.
    pub a: CyclePath,
    /// Longest component of `C \ S`.
    pub u: CyclePath,
    /// The component of `C \ S` left out of `A`.
    pub excluded: CyclePath,
    /// All components of `C \ S`, in clockwise order from position 0.
    pub components: Vec<CyclePath>,
}

impl PathSelection {
    pub fn u_inside_a(&self) -> bool {
        self.u != self.excluded
    }
}

/// Maximal runs of positions not in `in_s`.
pub fn components_outside(c: &BoundaryCycle, in_s: &[bool]) -> Vec<CyclePath> {
    let n = c.len();
    let Some(s0) = (0..n).find(|&i| in_s[i]) else {
        return vec![CyclePath::new(0, n)];
    };
    let mut out = Vec::new();
    let mut i = 1;
    while i <= n {
        let pos = (s0 + i) % n;
        if in_s[pos] {
            i += 1;
            continue;
        }
        let mut len = 0;
        while i <= n && !in_s[(s0 + i) % n] {
            len += 1;
            i += 1;
        }
        out.push(CyclePath::new(pos, len));
    }
    out.sort_by_key(|p| p.start);
    out
}

/// Chooses `A` as the complement of the longest component `W` of `C \ S`
/// holding every reflex vertex outside `S` and every vertex of `B \ S`, and
/// `U` as the longest component (preferring `W` on ties).
pub fn select_paths(
    c: &BoundaryCycle,
    sites: &[usize],
    bad: Option<CyclePath>,
) -> Result<PathSelection, ConstructError> {
    let n = c.len();
    let mut in_s = vec![false; n];
    for &s in sites {
        in_s[c.position(s).ok_or(ConstructError::VertexNotOnCycle(s))?] = true;
    }
    if !in_s.iter().any(|&b| b) {
        return Err(ConstructError::NoValidA);
    }
    let components = components_outside(c, &in_s);
    let must_cover: Vec<usize> = (0..n)
        .filter(|&i| !in_s[i])
        .filter(|&i| c.reflex_at(i) || bad.is_some_and(|b| b.contains(i, n)))
        .collect();
    let mut order: Vec<&CyclePath> = components.iter().collect();
    order.sort_by(|a, b| b.len.cmp(&a.len).then(a.start.cmp(&b.start)));
    let excluded = *order
        .iter()
        .find(|w| must_cover.iter().all(|&i| w.contains(i, n)))
        .ok_or(ConstructError::NoValidA)?;
    let longest = order[0].len;
    let u = if excluded.len == longest { *excluded } else { *order[0] };
    let a = CyclePath::new((excluded.start + excluded.len) % n, n - excluded.len);
    Ok(PathSelection {
        a,
        u,
        excluded: *excluded,
        components,
    })
}

/// Connected groups of added triangles (the trees hanging off the wheel
/// cycle), each listed by insertion index in clockwise site order starting
/// from cycle position `origin`.
pub fn dual_forest(c: &BoundaryCycle, added: &[AddedTriangle], origin: usize) -> Vec<Vec<usize>> {
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    let mut parent: Vec<usize> = (0..added.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (t, tri) in added.iter().enumerate() {
        for e in [key(tri.ccw, tri.site), key(tri.site, tri.cw)] {
            if let Some(o) = owner.remove(&e) {
                let (a, b) = (find(&mut parent, o), find(&mut parent, t));
                parent[a] = b;
            }
        }
        owner.insert(key(tri.ccw, tri.cw), t);
    }
    let pos = |t: usize| c.offset(origin, c.position(added[t].site).unwrap());
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for t in 0..added.len() {
        let r = find(&mut parent, t);
        groups.entry(r).or_default().push(t);
    }
    let mut trees: Vec<Vec<usize>> = groups.into_values().collect();
    for tree in &mut trees {
        tree.sort_by_key(|&t| pos(t));
    }
    trees.sort_by_key(|tree| pos(tree[0]));
    trees
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    #[test]
    fn wheel_on_square() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        let g = wheel_triangulation(&s, 4).unwrap();
        assert_eq!(g.internal_faces().len(), 4);
        assert!(g.validate_drawing().ok());
        let wd = g.weak_dual().unwrap();
        assert_eq!(wd.node_count(), 4);
        assert!((0..4).all(|v| wd.degree(v) == 2));
    }

    #[test]
    fn wheel_on_seven_points() {
        let s = ps(&[(100, 0), (62, 78), (-22, 97), (-90, 43), (-90, -43), (-22, -97), (62, -78), (1, 2)]);
        let g = wheel_triangulation(&s, 7).unwrap();
        assert_eq!(g.internal_faces().len(), 7);
        assert_eq!(wheel_triangulation(&s, 0).unwrap_err(), ConstructError::Geom(GeomError::NotInterior(0)));
    }

    #[test]
    fn notch_vertex_is_reflex() {
        let s = ps(&[(0, 0), (10, 1), (9, 9), (1, 10), (4, 5)]);
        // z = (4,5) is the only interior point; use a second notch point
        let c = wheel_cycle(&s, 4).unwrap();
        assert!(c.vertices().iter().all(|&v| !c.is_reflex(v).unwrap()));
        assert_eq!(c.is_reflex(4), Err(ConstructError::VertexNotOnCycle(4)));

        // (5,4) dents the cycle around z = (4,5)
        let s = ps(&[(0, 0), (10, 1), (9, 9), (1, 10), (4, 5), (5, 4)]);
        let c = wheel_cycle(&s, 4).unwrap();
        assert!(c.is_reflex(5).unwrap());
        assert_eq!(c.vertices().iter().filter(|&&v| c.is_reflex(v).unwrap()).count(), 1);
    }

    #[test]
    fn single_addition_at_notch() {
        let s = ps(&[(0, 0), (10, 1), (9, 9), (1, 10), (4, 5), (5, 4)]);
        let mut b = TriangulationBuilder::wheel(&s, 4).unwrap().with_debug_checks(true);
        let out = b.add_triangles(0, 1).unwrap();
        assert_eq!(out.sites, vec![5]);
        let t = b.added()[0];
        let g = b.to_plane_graph().unwrap();
        assert!(g.has_edge(t.ccw, t.cw));
        assert!(g.validate_drawing().ok());
        assert_eq!(g.internal_faces().len(), 6);
    }

    #[test]
    fn convex_boundary_cannot_take_triangles() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        let mut b = TriangulationBuilder::wheel(&s, 4).unwrap();
        assert_eq!(
            b.add_triangles(0, 1).unwrap_err(),
            ConstructError::CannotAddTriangles { added: 0, needed: 1 }
        );
    }

    #[test]
    fn order_one_pontoon() {
        // convex hexagon around z; build a pontoon over one vertex
        let s = ps(&[(0, 0), (40, -20), (80, 0), (90, 50), (40, 80), (-10, 50), (41, 31)]);
        let mut b = TriangulationBuilder::wheel(&s, 6).unwrap();
        let c = b.cycle().clone();
        let before = b.triangles().len();
        let a_pos = 2;
        b.build_pontoon(CyclePath::new(a_pos, 1), PontoonRole::Joint).unwrap();
        assert_eq!(b.triangles().len(), before);
        let g = b.to_plane_graph().unwrap();
        let (p, a, sv) = (c.at(a_pos - 1), c.at(a_pos), c.at(a_pos + 1));
        assert!(!g.has_edge(6, a));
        assert!(g.has_edge(p, sv));
        assert!(g.validate_drawing().ok());
        let faces: Vec<Vec<usize>> = g
            .internal_faces()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        let mut t1 = vec![sv, p, a];
        t1.sort();
        let mut t2 = vec![sv, 6, p];
        t2.sort();
        assert!(faces.contains(&t1) && faces.contains(&t2));
    }

    #[test]
    fn pontoon_over_bad_path_rejected() {
        let s = ps(&[(0, 0), (40, -20), (80, 0), (90, 50), (40, 80), (-10, 50), (41, 31)]);
        let mut b = TriangulationBuilder::wheel(&s, 6).unwrap();
        // four of six vertices around z span more than a half turn
        assert_eq!(
            b.build_pontoon(CyclePath::new(1, 4), PontoonRole::Joint),
            Err(ConstructError::BadPath(1))
        );
    }

    #[test]
    fn bad_path_detection() {
        // a long convex arc around z broken by a single dent
        let s = ps(&[(0, 0), (40, -20), (80, 0), (90, 50), (40, 80), (-10, 50), (41, 31), (8, 30)]);
        let c = wheel_cycle(&s, 6).unwrap();
        let bad = bad_convex_runs(&c, 6, &s);
        assert!(bad.len() <= 1);
        if let Some(b) = maximal_bad_path(&c, 6, &s) {
            let pts: Vec<Point> = b.closure(&c).into_iter().map(|v| s.point(v)).collect();
            assert!(in_convex_hull(s.point(6), &pts));
        }
    }

    #[test]
    fn selection_excludes_longest_valid_component() {
        let s = ps(&[(0, 0), (10, 1), (9, 9), (1, 10), (4, 5), (5, 4)]);
        let c = wheel_cycle(&s, 4).unwrap();
        let sel = select_paths(&c, &[5], None).unwrap();
        assert_eq!(sel.a.len, 1);
        assert_eq!(sel.a.vertices(&c), vec![5]);
        assert_eq!(sel.u, sel.excluded);
        assert!(!sel.u_inside_a());
    }
}
