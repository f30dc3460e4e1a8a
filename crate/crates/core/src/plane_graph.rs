//! Straight-line plane graphs on a point set.
//!
//! The rotation system is always derived from coordinates: around each vertex
//! the outgoing half-edges are sorted clockwise, and a face walk continues
//! from `u -> v` along the edge that follows `v -> u` counterclockwise. This
//! traverses internal faces clockwise and the outer face counterclockwise.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::Bound;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{cmp_direction_ccw, cross, orientation, Orientation, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edges {0:?} and {1:?} cross")]
    CrossingEdges((usize, usize), (usize, usize)),
    #[error("vertex {0} lies in the interior of edge {1:?}")]
    VertexOnEdge(usize, (usize, usize)),
    #[error("edge ({0}, {1}) references a vertex outside the point set")]
    InvalidVertex(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("invalid block partition: {0}")]
    InvalidPartition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FaceInfo {
    first: u32,
    len: u32,
}

/// Half-edge representation of a straight-line plane graph.
///
/// Half-edge `2e` runs from `edges[e].0` to `edges[e].1`, and its twin is
/// `2e + 1`.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    points: Arc<[Point]>,
    edges: Vec<(u32, u32)>,
    next: Vec<u32>,
    face_of: Vec<u32>,
    faces: Vec<FaceInfo>,
    outer_face: Option<usize>,
    rot_offsets: Vec<u32>,
    rot: Vec<u32>,
}

impl PlaneGraph {
    /// Builds the graph and rejects crossing edges.
    pub fn new(ps: &PointSet, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::new_unchecked(ps.shared_points(), edges)?;
        let report = validate_segments(ps.points(), g.edges_iter());
        if let Some(err) = report.into_error() {
            return Err(err);
        }
        Ok(g)
    }

    /// Builds the graph trusting the caller that no two edges cross.
    pub fn new_unchecked(points: Arc<[Point]>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = points.len();
        let mut list: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::InvalidVertex(a, b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b) as u32, a.max(b) as u32));
        }
        list.sort_unstable();
        list.dedup();

        let mut rot_offsets = vec![0u32; n + 1];
        for &(a, b) in &list {
            rot_offsets[a as usize + 1] += 1;
            rot_offsets[b as usize + 1] += 1;
        }
        for i in 0..n {
            rot_offsets[i + 1] += rot_offsets[i];
        }
        let mut fill = rot_offsets.clone();
        let mut rot = vec![0u32; 2 * list.len()];
        for (e, &(a, b)) in list.iter().enumerate() {
            rot[fill[a as usize] as usize] = 2 * e as u32;
            fill[a as usize] += 1;
            rot[fill[b as usize] as usize] = 2 * e as u32 + 1;
            fill[b as usize] += 1;
        }
        let origin = |h: u32| -> u32 {
            let (a, b) = list[(h >> 1) as usize];
            if h & 1 == 0 {
                a
            } else {
                b
            }
        };
        let target = |h: u32| origin(h ^ 1);

        // position of each half-edge within its origin's rotation
        let mut rot_pos = vec![0u32; rot.len()];
        for v in 0..n {
            let (lo, hi) = (rot_offsets[v] as usize, rot_offsets[v + 1] as usize);
            let p = points[v];
            rot[lo..hi].sort_by(|&h1, &h2| {
                let q1 = points[target(h1) as usize];
                let q2 = points[target(h2) as usize];
                // clockwise = reversed counterclockwise
                cmp_direction_ccw((q2.x - p.x, q2.y - p.y), (q1.x - p.x, q1.y - p.y))
            });
            for (i, &h) in rot[lo..hi].iter().enumerate() {
                rot_pos[h as usize] = i as u32;
            }
        }

        let mut next = vec![0u32; rot.len()];
        for h in 0..rot.len() as u32 {
            let v = target(h) as usize;
            let (lo, hi) = (rot_offsets[v], rot_offsets[v + 1]);
            let deg = hi - lo;
            let i = rot_pos[(h ^ 1) as usize];
            // counterclockwise successor of v->u is the clockwise predecessor
            let j = (i + deg - 1) % deg;
            next[h as usize] = rot[(lo + j) as usize];
        }

        let mut face_of = vec![u32::MAX; rot.len()];
        let mut faces = Vec::new();
        let mut outer_face = None;
        let mut best_area = i128::MIN;
        for h0 in 0..rot.len() as u32 {
            if face_of[h0 as usize] != u32::MAX {
                continue;
            }
            let f = faces.len() as u32;
            let mut h = h0;
            let mut len = 0u32;
            let mut area = 0i128;
            loop {
                face_of[h as usize] = f;
                len += 1;
                let a = points[origin(h) as usize];
                let b = points[target(h) as usize];
                area += a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128;
                h = next[h as usize];
                if h == h0 {
                    break;
                }
            }
            faces.push(FaceInfo { first: h0, len });
            if area > best_area {
                best_area = area;
                outer_face = Some(f as usize);
            }
        }

        Ok(PlaneGraph {
            points,
            edges: list,
            next,
            face_of,
            faces,
            outer_face,
            rot_offsets,
            rot,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn shared_points(&self) -> Arc<[Point]> {
        Arc::clone(&self.points)
    }

    /// Edges as sorted `(min, max)` index pairs, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges_iter().collect()
    }

    pub fn edges_iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b) as u32, a.max(b) as u32);
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.rot_offsets[v + 1] - self.rot_offsets[v]) as usize
    }

    /// Neighbours of `v` in clockwise order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (lo, hi) = (self.rot_offsets[v] as usize, self.rot_offsets[v + 1] as usize);
        self.rot[lo..hi].iter().map(move |&h| self.origin(h ^ 1))
    }

    /// Vertices with degree below two.
    pub fn dangling_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) < 2).collect()
    }

    fn origin(&self, h: u32) -> usize {
        let (a, b) = self.edges[(h >> 1) as usize];
        if h & 1 == 0 {
            a as usize
        } else {
            b as usize
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer_face
    }

    /// Vertex sequence of face `f` in walk order.
    pub fn face_cycle(&self, f: usize) -> Vec<usize> {
        let info = self.faces[f];
        let mut out = Vec::with_capacity(info.len as usize);
        let mut h = info.first;
        for _ in 0..info.len {
            out.push(self.origin(h));
            h = self.next[h as usize];
        }
        out
    }

    pub fn outer_cycle(&self) -> Vec<usize> {
        self.outer_face.map(|f| self.face_cycle(f)).unwrap_or_default()
    }

    pub fn internal_face_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| Some(f) != self.outer_face)
    }

    /// Every internal face as its clockwise vertex cycle.
    pub fn internal_faces(&self) -> Vec<Vec<usize>> {
        self.internal_face_ids().map(|f| self.face_cycle(f)).collect()
    }

    /// True iff the graph has at least three vertices, is connected and has
    /// no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        let n = self.vertex_count();
        if n < 3 || (0..n).any(|v| self.degree(v) < 2) {
            return false;
        }
        articulation_free(n, |v| self.neighbors(v).collect())
    }

    /// Dual graph restricted to internal faces.
    pub fn weak_dual(&self) -> Result<WeakDual, GraphError> {
        if !self.is_two_connected() {
            return Err(GraphError::NotTwoConnected);
        }
        let mut node_of_face = vec![usize::MAX; self.faces.len()];
        let mut faces = Vec::new();
        for f in self.internal_face_ids() {
            node_of_face[f] = faces.len();
            faces.push(f);
        }
        let mut adjacency = vec![Vec::new(); faces.len()];
        for e in 0..self.edges.len() {
            let f1 = self.face_of[2 * e] as usize;
            let f2 = self.face_of[2 * e + 1] as usize;
            if f1 == f2 {
                continue;
            }
            let (a, b) = (node_of_face[f1], node_of_face[f2]);
            if a == usize::MAX || b == usize::MAX {
                continue;
            }
            adjacency[a].push(DualEdge { to: b, primal: e });
            adjacency[b].push(DualEdge { to: a, primal: e });
        }
        Ok(WeakDual {
            faces,
            node_of_face,
            adjacency,
            inner_cycle: None,
        })
    }

    /// Removes the primal edges dual to every intra-block dual edge.
    pub fn corresponding_subgraph(&self, wd: &WeakDual, bp: &BlockPartition) -> Result<PlaneGraph, GraphError> {
        let block_of = bp.block_lookup(wd.node_count());
        let mut removed = vec![false; self.edges.len()];
        for (a, adj) in wd.adjacency.iter().enumerate() {
            for de in adj {
                if block_of[a] == block_of[de.to] {
                    removed[de.primal] = true;
                }
            }
        }
        let kept: Vec<(usize, usize)> = self
            .edges_iter()
            .enumerate()
            .filter(|(e, _)| !removed[*e])
            .map(|(_, ab)| ab)
            .collect();
        PlaneGraph::new_unchecked(self.shared_points(), &kept)
    }

    /// Checks that the edges form a straight-line plane drawing.
    pub fn validate_drawing(&self) -> DrawingReport {
        validate_segments(&self.points, self.edges_iter())
    }
}

/// Iterative low-point search; true iff the graph is connected and has no
/// articulation point.
pub(crate) fn articulation_free(n: usize, neighbors: impl Fn(usize) -> Vec<usize>) -> bool {
    if n == 0 {
        return false;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(&neighbors).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut root_children = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    while let Some(top) = stack.len().checked_sub(1) {
        let (v, parent, idx) = stack[top];
        if idx < adj[v].len() {
            stack[top].2 += 1;
            let w = adj[v][idx];
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
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
    timer == n && root_children <= 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualEdge {
    pub to: usize,
    /// Index of the shared primal edge in [`PlaneGraph::edges`].
    pub primal: usize,
}

/// Weak dual of a 2-connected plane graph: one node per internal face.
#[derive(Debug, Clone)]
pub struct WeakDual {
    faces: Vec<usize>,
    node_of_face: Vec<usize>,
    adjacency: Vec<Vec<DualEdge>>,
    inner_cycle: Option<Vec<usize>>,
}

impl WeakDual {
    pub fn node_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Primal face id of dual node `v`.
    pub fn face(&self, v: usize) -> usize {
        self.faces[v]
    }

    pub fn node_of_face(&self, f: usize) -> Option<usize> {
        self.node_of_face.get(f).copied().filter(|&v| v != usize::MAX)
    }

    pub fn neighbors(&self, v: usize) -> &[DualEdge] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.adjacency.iter().any(|adj| {
            let mut t: Vec<usize> = adj.iter().map(|d| d.to).collect();
            t.sort_unstable();
            t.windows(2).any(|w| w[0] == w[1])
        })
    }

    pub fn inner_cycle(&self) -> Option<&[usize]> {
        self.inner_cycle.as_deref()
    }

    pub fn set_inner_cycle(&mut self, cycle: Vec<usize>) {
        self.inner_cycle = Some(cycle);
    }

    /// Returns whether the node set induces a tree (connected and acyclic).
    pub fn induces_tree(&self, nodes: &[usize], scratch: &mut Vec<u32>) -> bool {
        if nodes.is_empty() {
            return false;
        }
        if scratch.len() < self.node_count() {
            scratch.resize(self.node_count(), u32::MAX);
        }
        for (i, &v) in nodes.iter().enumerate() {
            scratch[v] = i as u32;
        }
        let mut inner_edges = 0usize;
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        for &v in nodes {
            inner_edges += self.adjacency[v].iter().filter(|d| scratch[d.to] != u32::MAX).count();
        }
        while let Some(i) = stack.pop() {
            for d in &self.adjacency[nodes[i]] {
                let j = scratch[d.to];
                if j != u32::MAX && !seen[j as usize] {
                    seen[j as usize] = true;
                    reached += 1;
                    stack.push(j as usize);
                }
            }
        }
        for &v in nodes {
            scratch[v] = u32::MAX;
        }
        reached == nodes.len() && inner_edges / 2 == nodes.len() - 1
    }
}

/// Partition of the weak dual's nodes into blocks of equal order that each
/// induce a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    block_size: usize,
}

impl BlockPartition {
    pub fn new(wd: &WeakDual, blocks: Vec<Vec<usize>>, block_size: usize) -> Result<Self, GraphError> {
        let invalid = |m: String| Err(GraphError::InvalidPartition(m));
        let mut owner = vec![usize::MAX; wd.node_count()];
        for (b, block) in blocks.iter().enumerate() {
            if block.len() != block_size {
                return invalid(format!("block {b} has {} nodes, expected {block_size}", block.len()));
            }
            for &v in block {
                if v >= owner.len() {
                    return invalid(format!("node {v} out of range"));
                }
                if owner[v] != usize::MAX {
                    return invalid(format!("node {v} in blocks {} and {b}", owner[v]));
                }
                owner[v] = b;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return invalid(format!("node {v} is not covered"));
        }
        let mut scratch = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            if !wd.induces_tree(block, &mut scratch) {
                return invalid(format!("block {b} does not induce a tree"));
            }
        }
        Ok(BlockPartition { blocks, block_size })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block_lookup(&self, nodes: usize) -> Vec<usize> {
        let mut block_of = vec![usize::MAX; nodes];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = b;
            }
        }
        block_of
    }
}

/// Outcome of a straight-line planarity check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DrawingReport {
    pub crossing: Option<((usize, usize), (usize, usize))>,
    pub vertex_on_edge: Option<(usize, (usize, usize))>,
}

impl DrawingReport {
    pub fn ok(&self) -> bool {
        self.crossing.is_none() && self.vertex_on_edge.is_none()
    }

    pub fn into_error(self) -> Option<GraphError> {
        if let Some((a, b)) = self.crossing {
            return Some(GraphError::CrossingEdges(a, b));
        }
        self.vertex_on_edge.map(|(v, e)| GraphError::VertexOnEdge(v, e))
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    l: Point,
    r: Point,
    id: usize,
}

impl Segment {
    /// Vertical order of two segments that are both cut by the sweep line.
    fn cmp_at_sweep(&self, other: &Segment) -> Ordering {
        if self.id == other.id {
            return Ordering::Equal;
        }
        let ord = if self.l == other.l {
            match orientation(self.l, self.r, other.r) {
                Orientation::CounterClockwise => Ordering::Less,
                Orientation::Clockwise => Ordering::Greater,
                Orientation::Collinear => Ordering::Equal,
            }
        } else if self.l < other.l {
            match orientation(self.l, self.r, other.l) {
                Orientation::CounterClockwise => Ordering::Less,
                Orientation::Clockwise => Ordering::Greater,
                Orientation::Collinear => Ordering::Equal,
            }
        } else {
            match orientation(other.l, other.r, self.l) {
                Orientation::CounterClockwise => Ordering::Greater,
                Orientation::Clockwise => Ordering::Less,
                Orientation::Collinear => Ordering::Equal,
            }
        };
        ord.then(self.id.cmp(&other.id))
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_at_sweep(other)
    }
}

/// Whether two segments meet anywhere other than a shared endpoint.
pub fn segments_conflict(a: (Point, Point), b: (Point, Point)) -> bool {
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    let d1 = cross(a.0, a.1, b.0).signum();
    let d2 = cross(a.0, a.1, b.1).signum();
    let d3 = cross(b.0, b.1, a.0).signum();
    let d4 = cross(b.0, b.1, a.1).signum();
    if shared {
        // only overlapping collinear segments conflict
        if d1 == 0 && d2 == 0 {
            let other = if a.0 == b.0 || a.1 == b.0 { b.1 } else { b.0 };
            let common = if a.0 == b.0 || a.0 == b.1 { a.0 } else { a.1 };
            let far = if common == a.0 { a.1 } else { a.0 };
            let dot = (other.x - common.x) as i128 * (far.x - common.x) as i128
                + (other.y - common.y) as i128 * (far.y - common.y) as i128;
            return dot > 0;
        }
        return false;
    }
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    let on = |p: Point, s: (Point, Point), d: i128| {
        d == 0
            && p.x >= s.0.x.min(s.1.x)
            && p.x <= s.0.x.max(s.1.x)
            && p.y >= s.0.y.min(s.1.y)
            && p.y <= s.0.y.max(s.1.y)
    };
    on(b.0, a, d1) || on(b.1, a, d2) || on(a.0, b, d3) || on(a.1, b, d4)
}

/// Sweep-line check (Shamos–Hoey) that no two segments cross, in
/// O((V + E) log V). A vertex strictly inside a non-incident segment needs a
/// collinear triple, which a [`PointSet`] excludes; it is still reported when
/// it happens to be met by the sweep.
pub fn validate_segments(points: &[Point], edges: impl Iterator<Item = (usize, usize)>) -> DrawingReport {
    let mut segs: Vec<Segment> = Vec::new();
    let mut raw: Vec<(usize, usize)> = Vec::new();
    for (a, b) in edges {
        let (pa, pb) = (points[a], points[b]);
        let (l, r) = if pa < pb { (pa, pb) } else { (pb, pa) };
        segs.push(Segment { l, r, id: segs.len() });
        raw.push((a.min(b), a.max(b)));
    }
    // (point, kind, segment) where kind 0 = remove, 1 = insert
    let mut events: Vec<(Point, u8, usize)> = Vec::with_capacity(2 * segs.len());
    for s in &segs {
        events.push((s.l, 1, s.id));
        events.push((s.r, 0, s.id));
    }
    events.sort_unstable();

    let report = |a: usize, b: usize| -> DrawingReport {
        let (sa, sb) = (segs[a], segs[b]);
        let mut rep = DrawingReport::default();
        // distinguish a touching vertex from a proper crossing
        for (p, s) in [(sb.l, sa), (sb.r, sa), (sa.l, sb), (sa.r, sb)] {
            if p != s.l && p != s.r && cross(s.l, s.r, p) == 0 {
                let v = points.iter().position(|q| *q == p).unwrap_or(usize::MAX);
                rep.vertex_on_edge = Some((v, raw[s.id]));
                return rep;
            }
        }
        rep.crossing = Some((raw[a].min(raw[b]), raw[a].max(raw[b])));
        rep
    };
    let conflict = |a: usize, b: usize| segments_conflict((segs[a].l, segs[a].r), (segs[b].l, segs[b].r));

    let mut status: BTreeSet<Segment> = BTreeSet::new();
    for &(_, kind, id) in &events {
        let s = segs[id];
        if kind == 0 {
            let below = status.range(..s).next_back().copied();
            let above = status.range((Bound::Excluded(s), Bound::Unbounded)).next().copied();
            if !status.remove(&s) {
                // order became inconsistent, which only a missed conflict can cause
                if let Some(t) = status.iter().find(|t| conflict(t.id, id)) {
                    return report(t.id, id);
                }
            }
            if let (Some(a), Some(b)) = (below, above) {
                if conflict(a.id, b.id) {
                    return report(a.id, b.id);
                }
            }
        } else {
            status.insert(s);
            let below = status.range(..s).next_back().copied();
            let above = status.range((Bound::Excluded(s), Bound::Unbounded)).next().copied();
            for t in [below, above].into_iter().flatten() {
                if conflict(t.id, id) {
                    return report(t.id, id);
                }
            }
        }
    }
    DrawingReport::default()
}

/// Quadratic reference check used to cross-validate the sweep.
pub fn validate_segments_brute(points: &[Point], edges: &[(usize, usize)]) -> bool {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let a = (points[edges[i].0], points[edges[i].1]);
            let b = (points[edges[j].0], points[edges[j].1]);
            if segments_conflict(a, b) {
                return false;
            }
        }
        for (v, &p) in points.iter().enumerate() {
            let (a, b) = edges[i];
            if v != a && v != b {
                let (pa, pb) = (points[a], points[b]);
                if cross(pa, pb, p) == 0
                    && p.x >= pa.x.min(pb.x)
                    && p.x <= pa.x.max(pb.x)
                    && p.y >= pa.y.min(pb.y)
                    && p.y <= pa.y.max(pb.y)
                {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_center() -> PointSet {
        PointSet::new(vec![
            Point::new(0, 0),
            Point::new(10, 0),
            Point::new(10, 10),
            Point::new(0, 10),
            Point::new(6, 5),
        ])
        .unwrap()
    }

    const SQUARE: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
    const SPOKES: [(usize, usize); 4] = [(4, 0), (4, 1), (4, 2), (4, 3)];

    fn wheel_edges() -> Vec<(usize, usize)> {
        SQUARE.iter().chain(SPOKES.iter()).copied().collect()
    }

    #[test]
    fn square_cycle_has_two_faces() {
        let g = PlaneGraph::new(&square_center(), &SQUARE).unwrap();
        assert_eq!(g.face_count(), 2);
        let faces = g.internal_faces();
        assert_eq!(faces.len(), 1);
        let mut f = faces[0].clone();
        let start = f.iter().position(|&v| v == 0).unwrap();
        f.rotate_left(start);
        assert_eq!(f, vec![0, 3, 2, 1]);
        assert_eq!(g.outer_cycle().len(), 4);
        assert_eq!(g.dangling_vertices(), vec![4]);
    }

    #[test]
    fn diagonals_cross() {
        let mut e = SQUARE.to_vec();
        e.extend([(0, 2), (1, 3)]);
        assert!(matches!(
            PlaneGraph::new(&square_center(), &e),
            Err(GraphError::CrossingEdges(..))
        ));
        let g = PlaneGraph::new_unchecked(square_center().shared_points(), &e).unwrap();
        assert!(!g.validate_drawing().ok());
    }

    #[test]
    fn wheel_faces_and_dual() {
        let g = PlaneGraph::new(&square_center(), &wheel_edges()).unwrap();
        assert_eq!(g.internal_faces().len(), 4);
        assert!(g.internal_faces().iter().all(|f| f.len() == 3));
        assert!(g.is_two_connected());
        let wd = g.weak_dual().unwrap();
        assert_eq!(wd.node_count(), 4);
        assert_eq!(wd.edge_count(), 4);
        assert!((0..4).all(|v| wd.degree(v) == 2));
        assert!(!wd.has_parallel_edges());
        assert!(g.validate_drawing().ok());
    }

    #[test]
    fn euler_and_half_edge_partition() {
        let g = PlaneGraph::new(&square_center(), &wheel_edges()).unwrap();
        let walk_total: usize = (0..g.face_count()).map(|f| g.face_cycle(f).len()).sum();
        assert_eq!(walk_total, 2 * g.edge_count());
        assert_eq!(
            g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64,
            2
        );
    }

    #[test]
    fn wheel_split_into_theta_graph() {
        let g = PlaneGraph::new(&square_center(), &wheel_edges()).unwrap();
        let wd = g.weak_dual().unwrap();
        // pair faces across the spokes to 1 and 3
        let mut blocks = Vec::new();
        let mut used = vec![false; wd.node_count()];
        for v in 0..wd.node_count() {
            if used[v] {
                continue;
            }
            let d = wd
                .neighbors(v)
                .iter()
                .find(|d| {
                    let (a, b) = g.edges()[d.primal];
                    !used[d.to] && (a, b) != (1, 4) && (a, b) != (3, 4)
                })
                .copied()
                .unwrap();
            used[v] = true;
            used[d.to] = true;
            blocks.push(vec![v, d.to]);
        }
        let bp = BlockPartition::new(&wd, blocks, 2).unwrap();
        let sub = g.corresponding_subgraph(&wd, &bp).unwrap();
        assert_eq!(sub.edge_count(), 6);
        assert!(sub.is_two_connected());
        assert!(sub.internal_faces().iter().all(|f| f.len() == 4));
        assert_eq!(sub.internal_faces().len(), 2);
    }

    #[test]
    fn singleton_blocks_leave_graph_unchanged() {
        let g = PlaneGraph::new(&square_center(), &wheel_edges()).unwrap();
        let wd = g.weak_dual().unwrap();
        let bp = BlockPartition::new(&wd, (0..4).map(|v| vec![v]).collect(), 1).unwrap();
        let sub = g.corresponding_subgraph(&wd, &bp).unwrap();
        assert_eq!(sub.edges(), g.edges());
    }

    #[test]
    fn invalid_partitions_rejected() {
        let g = PlaneGraph::new(&square_center(), &wheel_edges()).unwrap();
        let wd = g.weak_dual().unwrap();
        assert!(BlockPartition::new(&wd, vec![vec![0, 1, 2, 3]], 4).is_err());
        assert!(BlockPartition::new(&wd, vec![vec![0, 1]], 2).is_err());
    }

    #[test]
    fn two_connectivity() {
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, 1),
            Point::new(1, 4),
            Point::new(9, 2),
            Point::new(7, 8),
        ])
        .unwrap();
        let bowtie = [(0, 1), (1, 2), (2, 0), (1, 3), (3, 4), (4, 1)];
        let g = PlaneGraph::new(&ps, &bowtie).unwrap();
        assert!(!g.is_two_connected());
        assert_eq!(g.weak_dual().unwrap_err(), GraphError::NotTwoConnected);
        let cycle = [(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)];
        assert!(PlaneGraph::new(&ps, &cycle).unwrap().is_two_connected());
        let theta = [(0, 1), (1, 3), (3, 4), (4, 2), (2, 0), (1, 2)];
        assert!(PlaneGraph::new(&ps, &theta).unwrap().is_two_connected());
    }

    #[test]
    fn fan_dual_is_path() {
        // convex hexagon fanned from vertex 0
        let ps = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(4, -2),
            Point::new(8, 0),
            Point::new(9, 5),
            Point::new(4, 8),
            Point::new(-1, 5),
        ])
        .unwrap();
        let mut e: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.extend([(0, 2), (0, 3), (0, 4)]);
        let g = PlaneGraph::new(&ps, &e).unwrap();
        let wd = g.weak_dual().unwrap();
        assert_eq!(wd.node_count(), 4);
        assert_eq!(wd.edge_count(), 3);
        let mut degs: Vec<usize> = (0..4).map(|v| wd.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]);
    }
}
