//! Block partitions of the weak dual and the top-level construction.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{
    bad_convex_runs, dual_forest, key, maximal_bad_path, maximal_convex_runs, select_paths, shares_cycle_edge,
    BoundaryCycle, CaseLabel, ConstructError, CyclePath, PathSelection, PontoonRole, TriLabel,
    TriangulationBuilder,
};
use crate::geom::{in_convex_hull, orientation, GeomError, Orientation, Point, PointSet};
use crate::plane_graph::{BlockPartition, GraphError, PlaneGraph};

pub const DEBUG_ENV: &str = "KANGULATE_DEBUG_ASSERTS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KangulateError {
    #[error("k must be at least 3, got {0}")]
    InvalidK(usize),
    #[error("residue mismatch: this construction needs j = {expected}, the input has j = {actual}")]
    WrongResidue { expected: usize, actual: usize },
    #[error("only {0} block(s); at least two are needed")]
    TooFewBlocks(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("construction failed below the guaranteed range ({case:?}): {reason}")]
    HonestFailure { case: Option<CaseLabel>, reason: String },
    #[error("internal error ({case:?}): {reason}")]
    Internal { case: Option<CaseLabel>, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfeasibleReason {
    TooFewPoints,
    TooFewInteriorPoints,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KangulateOptions {
    /// Check construction invariants at every step.
    pub debug_checks: bool,
}

impl KangulateOptions {
    pub fn from_env() -> Self {
        let on = std::env::var(DEBUG_ENV).is_ok_and(|v| !v.is_empty() && v != "0");
        KangulateOptions { debug_checks: on }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PontoonRecord {
    /// Apex of the fan, the clockwise successor of the covered path.
    pub site: usize,
    pub role: PontoonRole,
    pub order: usize,
}

/// How a k-angulation was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub case: CaseLabel,
    pub k: usize,
    pub j: usize,
    pub z: Option<usize>,
    /// Initial wheel cycle, clockwise.
    pub cycle: Vec<usize>,
    /// Sites of added triangles in insertion order.
    pub sites: Vec<usize>,
    pub bad_path: Option<Vec<usize>>,
    pub visited_path: Vec<usize>,
    pub a_path: Vec<usize>,
    pub u_path: Vec<usize>,
    pub pontoon_orders: Vec<PontoonRecord>,
    /// Sites of each tree of added triangles, in partition order.
    pub trees: Vec<Vec<usize>>,
    /// The spiral ran counterclockwise with `R` at the other end of `U`.
    pub reversed: bool,
    pub block_count: usize,
}

impl ConstructionTrace {
    fn simple(case: CaseLabel, k: usize, j: usize, z: Option<usize>, cycle: Vec<usize>, blocks: usize) -> Self {
        ConstructionTrace {
            case,
            k,
            j,
            z,
            cycle,
            sites: Vec::new(),
            bad_path: None,
            visited_path: Vec::new(),
            a_path: Vec::new(),
            u_path: Vec::new(),
            pontoon_orders: Vec::new(),
            trees: Vec::new(),
            reversed: false,
            block_count: blocks,
        }
    }

    pub fn order_of(&self, role: PontoonRole) -> Option<usize> {
        self.pontoon_orders.iter().find(|p| p.role == role).map(|p| p.order)
    }
}

#[derive(Debug, Clone)]
pub struct Kangulation {
    pub graph: PlaneGraph,
    pub trace: ConstructionTrace,
}

#[derive(Debug, Clone)]
pub enum KangulateOutcome {
    Found(Box<Kangulation>),
    Infeasible {
        j: usize,
        interior: usize,
        reason: InfeasibleReason,
    },
}

impl KangulateOutcome {
    pub fn found(self) -> Option<Kangulation> {
        match self {
            KangulateOutcome::Found(k) => Some(*k),
            KangulateOutcome::Infeasible { .. } => None,
        }
    }
}

/// The unique `j` in `[0, k-3]` congruent to `k - n` modulo `k - 2`.
pub fn required_j(n: usize, k: usize) -> usize {
    assert!(k >= 3, "k must be at least 3");
    let m = (k - 2) as i64;
    (k as i64 - n as i64).rem_euclid(m) as usize
}

/// Fan polygon about the lowest point, cut into consecutive blocks of
/// `k - 2` triangles.
pub fn fan_kangulation_j0(ps: &PointSet, k: usize) -> Result<PlaneGraph, KangulateError> {
    check_k(k)?;
    let n = ps.len();
    let j = required_j(n, k);
    if j != 0 {
        return Err(KangulateError::WrongResidue { expected: 0, actual: j });
    }
    if n < k {
        return Err(KangulateError::TooFewBlocks(0));
    }
    let order = fan_order(ps);
    let p0 = order[0];
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let blocks = (n - 2) / (k - 2);
    for t in 1..blocks {
        edges.push((p0, order[1 + t * (k - 2)]));
    }
    Ok(PlaneGraph::new_unchecked(ps.shared_points(), &edges)?)
}

/// Lowest point followed by the others in clockwise angular order about it.
pub fn fan_order(ps: &PointSet) -> Vec<usize> {
    let pts = ps.points();
    let p0 = (0..pts.len()).min_by_key(|&i| (pts[i].y, pts[i].x)).expect("non-empty");
    let mut rest: Vec<usize> = (0..pts.len()).filter(|&i| i != p0).collect();
    rest.sort_by(|&a, &b| match orientation(pts[p0], pts[a], pts[b]) {
        Orientation::Clockwise => std::cmp::Ordering::Less,
        Orientation::CounterClockwise => std::cmp::Ordering::Greater,
        Orientation::Collinear => pts[a].cmp(&pts[b]),
    });
    let mut out = Vec::with_capacity(pts.len());
    out.push(p0);
    out.extend(rest);
    out
}

/// Cuts the dual cycle of a wheel into paths of `k - 2` triangles, keeping
/// one spoke per block.
pub fn wheel_partition_j1(g: &PlaneGraph, z: usize, k: usize) -> Result<PlaneGraph, KangulateError> {
    check_k(k)?;
    let n = g.vertex_count();
    let j = required_j(n, k);
    if j != 1 {
        return Err(KangulateError::WrongResidue { expected: 1, actual: j });
    }
    let rim = wheel_rim(g, z);
    if rim.len() != n - 1 {
        return Err(KangulateError::Graph(GraphError::InvalidPartition(format!(
            "vertex {z} is not the centre of a wheel"
        ))));
    }
    let blocks = (n - 1) / (k - 2);
    if blocks < 2 {
        return Err(KangulateError::TooFewBlocks(blocks));
    }
    let c = rim.len();
    let mut edges: Vec<(usize, usize)> = (0..c).map(|i| (rim[i], rim[(i + 1) % c])).collect();
    for t in 0..blocks {
        edges.push((z, rim[t * (k - 2)]));
    }
    Ok(PlaneGraph::new_unchecked(g.shared_points(), &edges)?)
}

/// Neighbours of `z` clockwise, starting at the lexicographically smallest.
fn wheel_rim(g: &PlaneGraph, z: usize) -> Vec<usize> {
    let pts = g.points();
    let mut rim: Vec<usize> = g.neighbors(z).collect();
    if let Some(i) = (0..rim.len()).min_by_key(|&i| pts[rim[i]]) {
        rim.rotate_left(i);
    }
    rim
}

pub fn kangulate(ps: &PointSet, k: usize) -> Result<KangulateOutcome, KangulateError> {
    kangulate_with(ps, k, KangulateOptions::from_env())
}

pub fn kangulate_with(ps: &PointSet, k: usize, opts: KangulateOptions) -> Result<KangulateOutcome, KangulateError> {
    check_k(k)?;
    let n = ps.len();
    let j = required_j(n, k);
    let interior = ps.interior().len();
    if n < k {
        return Ok(KangulateOutcome::Infeasible {
            j,
            interior,
            reason: InfeasibleReason::TooFewPoints,
        });
    }
    if interior < j {
        return Ok(KangulateOutcome::Infeasible {
            j,
            interior,
            reason: InfeasibleReason::TooFewInteriorPoints,
        });
    }
    let blocks = (n - 2 + j) / (k - 2);
    let found = match j {
        0 => {
            let graph = fan_kangulation_j0(ps, k)?;
            let trace = ConstructionTrace::simple(CaseLabel::J0, k, 0, None, fan_order(ps), blocks);
            Kangulation { graph, trace }
        }
        1 => {
            let z = ps.smallest_interior().expect("interior point");
            let builder = TriangulationBuilder::wheel(ps, z).map_err(construct_err)?;
            let wheel = builder.to_plane_graph()?;
            let graph = wheel_partition_j1(&wheel, z, k)?;
            let trace =
                ConstructionTrace::simple(CaseLabel::J1, k, 1, Some(z), builder.cycle().vertices().to_vec(), blocks);
            Kangulation { graph, trace }
        }
        _ => match general(ps, k, j, opts) {
            Ok(found) => found,
            Err(Failure { case, reason }) => {
                return Err(if n >= 2 * k * k {
                    KangulateError::Internal { case, reason }
                } else {
                    KangulateError::HonestFailure { case, reason }
                })
            }
        },
    };
    Ok(KangulateOutcome::Found(Box::new(found)))
}

fn check_k(k: usize) -> Result<(), KangulateError> {
    if k < 3 {
        Err(KangulateError::InvalidK(k))
    } else {
        Ok(())
    }
}

fn construct_err(e: ConstructError) -> KangulateError {
    match e {
        ConstructError::Geom(g) => KangulateError::Geom(g),
        ConstructError::Graph(g) => KangulateError::Graph(g),
        other => KangulateError::Internal {
            case: None,
            reason: other.to_string(),
        },
    }
}

#[derive(Debug)]
struct Failure {
    case: Option<CaseLabel>,
    reason: String,
}

impl Failure {
    fn new(case: Option<CaseLabel>, reason: impl ToString) -> Self {
        Failure {
            case,
            reason: reason.to_string(),
        }
    }
}

/// A run of dual nodes that is kept in order; unless `splittable`, no block
/// may start strictly inside it.
#[derive(Debug, Clone)]
struct Segment {
    nodes: Vec<TriLabel>,
    splittable: bool,
}

impl Segment {
    fn free(nodes: Vec<TriLabel>) -> Self {
        Segment { nodes, splittable: true }
    }
}

/// A tree of added triangles: sites in clockwise order, the nodes in the
/// order they are traversed, and whether that order is a dual path from the
/// tree's clockwise-first boundary edge to its clockwise-last one.
#[derive(Debug, Clone)]
struct Tree {
    first: usize,
    nodes: Vec<usize>,
    splittable: bool,
}

struct General {
    k: usize,
    opts: KangulateOptions,
    case: CaseLabel,
    b: TriangulationBuilder,
    c: BoundaryCycle,
    sel: PathSelection,
    trees: Vec<Tree>,
}

fn general(ps: &PointSet, k: usize, j: usize, opts: KangulateOptions) -> Result<Kangulation, Failure> {
    let z = ps.smallest_interior().ok_or_else(|| Failure::new(None, "no interior point"))?;
    let m = j - 1;
    let mut b = TriangulationBuilder::wheel(ps, z)
        .map_err(|e| Failure::new(None, e))?
        .with_debug_checks(opts.debug_checks);
    let c = b.cycle().clone();
    let n = ps.len();
    let bad = maximal_bad_path(&c, z, ps);
    if opts.debug_checks && bad_convex_runs(&c, z, ps).len() > 1 {
        return Err(Failure::new(None, "more than one maximal bad convex path"));
    }
    let pts = ps.points();
    let start = match bad {
        Some(bp) => bp.positions(c.len()).min_by_key(|&i| pts[c.at(i)]),
        None => (0..c.len()).filter(|&i| !c.reflex_at(i)).min_by_key(|&i| pts[c.at(i)]),
    }
    .ok_or_else(|| Failure::new(None, "no admissible start vertex"))?;
    let walk = b.add_triangles(start, m).map_err(|e| Failure::new(None, e))?;
    let case1 = b.added().iter().all(|t| shares_cycle_edge(&c, t));
    let sel = select_paths(&c, &walk.sites, bad).map_err(|e| Failure::new(None, e))?;
    let case = match (case1, sel.u_inside_a()) {
        (true, false) => CaseLabel::C1A,
        (true, true) => CaseLabel::C1B,
        (false, false) => CaseLabel::C2A,
        (false, true) => CaseLabel::C2B,
    };
    if opts.debug_checks {
        debug_selection(ps, &c, z, &walk.sites, &sel, n, k).map_err(|e| Failure::new(Some(case), e))?;
    }

    // pontoons over A \ S, counterclockwise to clockwise along A
    let nc = c.len();
    let mut comps: Vec<CyclePath> = sel
        .components
        .iter()
        .copied()
        .filter(|p| *p != sel.excluded && !(sel.u_inside_a() && *p == sel.u))
        .collect();
    comps.sort_by_key(|p| c.offset(sel.a.start, p.start));
    for p in comps {
        b.build_pontoon(p, PontoonRole::Joint)
            .map_err(|e| Failure::new(Some(case), e))?;
    }

    let added = b.added().to_vec();
    let forest = dual_forest(&c, &added, sel.a.start);
    let trees = forest.iter().map(|t| classify_tree(&c, &added, t)).collect();

    let mut g = General {
        k,
        opts,
        case,
        b,
        c,
        sel,
        trees,
    };
    let (graph, reversed, blocks) = match case {
        CaseLabel::C1A | CaseLabel::C2A => g.spiral()?,
        _ => g.two_sections()?,
    };

    let c = &g.c;
    let added = g.b.added();
    let site_pos = |t: usize| c.position(added[t].site).unwrap();
    let mut tree_order: Vec<&Tree> = g.trees.iter().collect();
    tree_order.sort_by_key(|t| c.offset(g.sel.a.start, t.first));
    if reversed {
        tree_order.reverse();
    }
    let trace = ConstructionTrace {
        case,
        k,
        j,
        z: Some(z),
        cycle: c.vertices().to_vec(),
        sites: walk.sites.clone(),
        bad_path: bad.map(|p| p.vertices(c)),
        visited_path: (0..nc).filter(|&i| walk.visited[i]).map(|i| c.at(i)).collect(),
        a_path: g.sel.a.vertices(c),
        u_path: g.sel.u.vertices(c),
        pontoon_orders: g
            .b
            .pontoons()
            .iter()
            .map(|p| PontoonRecord {
                site: c.at(p.path.start + p.path.len),
                role: p.role,
                order: p.path.len,
            })
            .collect(),
        trees: tree_order
            .iter()
            .map(|t| {
                let mut v = t.nodes.clone();
                if reversed {
                    v.reverse();
                }
                v.into_iter().map(|x| c.at(site_pos(x))).collect()
            })
            .collect(),
        reversed,
        block_count: blocks,
    };
    Ok(Kangulation { graph, trace })
}

fn classify_tree(c: &BoundaryCycle, added: &[crate::construct::AddedTriangle], tree: &[usize]) -> Tree {
    let n = c.len();
    let pos: Vec<usize> = tree.iter().map(|&t| c.position(added[t].site).unwrap()).collect();
    let in_tree = |p: usize| pos.contains(&p);
    let first = *pos.iter().find(|&&p| !in_tree((p + n - 1) % n)).unwrap();
    let last = *pos.iter().find(|&&p| !in_tree((p + 1) % n)).unwrap();
    if tree.len() == 1 {
        return Tree {
            first,
            nodes: tree.to_vec(),
            splittable: true,
        };
    }
    let tri_edges = |t: usize| {
        let a = added[t];
        [key(a.ccw, a.site), key(a.site, a.cw), key(a.ccw, a.cw)]
    };
    let entry_edge = key(c.at(first + n - 1), c.at(first));
    let exit_edge = key(c.at(last), c.at(last + 1));
    let entry = tree.iter().copied().find(|&t| tri_edges(t).contains(&entry_edge));
    let exit = tree.iter().copied().find(|&t| tri_edges(t).contains(&exit_edge));
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &t in tree {
        for e in tri_edges(t) {
            by_edge.entry(e).or_default().push(t);
        }
    }
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for ts in by_edge.values() {
        if let [a, b] = ts[..] {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    // the tree is a path from entry to exit iff a walk from entry never branches
    let path = entry.zip(exit).and_then(|(entry, exit)| {
        let mut order = vec![entry];
        let mut prev = usize::MAX;
        let mut cur = entry;
        while cur != exit {
            let nb = adj.get(&cur)?;
            let fwd: Vec<usize> = nb.iter().copied().filter(|&x| x != prev).collect();
            if fwd.len() != 1 {
                return None;
            }
            prev = cur;
            cur = fwd[0];
            order.push(cur);
        }
        Some(order)
    });
    match path {
        Some(order) if order.len() == tree.len() => Tree {
            first,
            nodes: order,
            splittable: true,
        },
        _ => Tree {
            first,
            nodes: tree.to_vec(),
            splittable: false,
        },
    }
}

fn debug_selection(
    ps: &PointSet,
    c: &BoundaryCycle,
    z: usize,
    sites: &[usize],
    sel: &PathSelection,
    n: usize,
    k: usize,
) -> Result<(), String> {
    let nc = c.len();
    let mut in_s = vec![false; nc];
    for &s in sites {
        in_s[c.position(s).unwrap()] = true;
    }
    for x in maximal_convex_runs(c) {
        let mut runs = 0;
        let mut prev_in = true;
        for p in x.positions(nc) {
            if !in_s[p] && prev_in {
                runs += 1;
            }
            prev_in = in_s[p];
        }
        if runs > 1 {
            return Err(format!("convex path at {} minus S is not a single path", x.start));
        }
    }
    if !in_s[sel.a.start] || !in_s[sel.a.end(nc)] {
        return Err("an endpoint of A is not in S".into());
    }
    let zp = ps.point(z);
    for comp in &sel.components {
        if *comp == sel.excluded || !sel.a.contains(comp.start, nc) {
            continue;
        }
        let closure: Vec<Point> = comp.closure(c).into_iter().map(|v| ps.point(v)).collect();
        if comp.positions(nc).any(|p| c.reflex_at(p)) || in_convex_hull(zp, &closure) {
            return Err(format!("component of A \\ S at {} is not a good convex path", comp.start));
        }
    }
    if n >= 2 * k * k && sel.u.len <= 2 * k {
        return Err(format!("longest path outside S has only {} vertices", sel.u.len));
    }
    Ok(())
}

impl General {
    fn k2(&self) -> usize {
        self.k - 2
    }

    fn fail(&self, reason: impl ToString) -> Failure {
        Failure::new(Some(self.case), reason)
    }

    /// Outer-section units (trees and pontoons), each with the clockwise
    /// position of its first cycle vertex.
    fn units(&self) -> Vec<(usize, Segment)> {
        let c = &self.c;
        let nc = c.len();
        let mut out = Vec::new();
        for t in &self.trees {
            let nodes = t.nodes.iter().map(|&i| TriLabel::Added(i)).collect();
            out.push((
                t.first,
                Segment {
                    nodes,
                    splittable: t.splittable,
                },
            ));
        }
        for (pi, p) in self.b.pontoons().iter().enumerate() {
            let nodes = (1..=p.path.len).map(|i| TriLabel::Pontoon(pi, i)).collect();
            out.push((p.path.start % nc, Segment::free(nodes)));
        }
        out
    }

    /// Triangles around `z` keyed by the position of their clockwise-first
    /// cycle vertex.
    fn inner_cycle(&self) -> Vec<(usize, TriLabel)> {
        let nc = self.c.len();
        let mut out = Vec::new();
        for (_, label) in self.b.triangles() {
            match label {
                TriLabel::Wheel(i) => out.push((i, label)),
                TriLabel::Pontoon(pi, 0) => {
                    let p = &self.b.pontoons()[pi];
                    out.push(((p.path.start + nc - 1) % nc, label));
                }
                _ => {}
            }
        }
        out.sort_by_key(|&(x, _)| x);
        out
    }

    /// Inner-cycle labels starting at the triangle keyed `x0`, clockwise or
    /// counterclockwise.
    fn inner_from(&self, x0: usize, clockwise: bool) -> Vec<(usize, TriLabel)> {
        let mut z = self.inner_cycle();
        let nc = self.c.len();
        if clockwise {
            z.sort_by_key(|&(x, _)| self.c.offset(x0, x));
        } else {
            z.sort_by_key(|&(x, _)| (x0 + nc - x) % nc);
        }
        z
    }

    fn outer_sequence(&self, origin: usize, clockwise: bool) -> Vec<Segment> {
        let mut units = self.units();
        let nc = self.c.len();
        if clockwise {
            units.sort_by_key(|(p, _)| self.c.offset(origin, *p));
        } else {
            units.sort_by_key(|(p, _)| (origin + nc - *p) % nc);
            for (_, s) in units.iter_mut() {
                s.nodes.reverse();
            }
        }
        units.into_iter().map(|(_, s)| s).collect()
    }

    fn sections_ok(&self, sections: &[Vec<Segment>]) -> bool {
        let k2 = self.k2();
        sections.iter().all(|sec| {
            let mut at = 0usize;
            let mut ok = true;
            for s in sec {
                let len = s.nodes.len();
                if !s.splittable && len > 1 {
                    // a block boundary strictly inside the run
                    let next_start = at.div_ceil(k2) * k2;
                    let next_start = if next_start == at { at + k2 } else { next_start };
                    if next_start < at + len {
                        ok = false;
                    }
                }
                at += len;
            }
            ok && at.is_multiple_of(k2)
        })
    }

    fn realize(&self, sections: Vec<Vec<Segment>>) -> Result<(PlaneGraph, usize), String> {
        let k2 = self.k2();
        let labelled = self.b.triangles();
        let g = self.b.to_plane_graph().map_err(|e| e.to_string())?;
        if self.opts.debug_checks {
            if let Some(e) = g.validate_drawing().into_error() {
                return Err(format!("triangulation is not plane: {e}"));
            }
            self.b.check_binary_forest().ok();
        }
        let wd = g.weak_dual().map_err(|e| e.to_string())?;
        let mut node_of: HashMap<[usize; 3], usize> = HashMap::with_capacity(wd.node_count());
        for v in 0..wd.node_count() {
            let f = g.face_cycle(wd.face(v));
            if f.len() != 3 {
                return Err(format!("dual node {v} is not a triangle"));
            }
            let mut t = [f[0], f[1], f[2]];
            t.sort_unstable();
            node_of.insert(t, v);
        }
        let mut label_node: HashMap<TriLabel, usize> = HashMap::with_capacity(labelled.len());
        for (mut t, label) in labelled {
            t.sort_unstable();
            let v = *node_of.get(&t).ok_or_else(|| format!("triangle {t:?} is not a face"))?;
            label_node.insert(label, v);
        }
        let mut blocks = Vec::new();
        let mut total = 0;
        for sec in sections {
            let seq: Vec<usize> = sec
                .iter()
                .flat_map(|s| s.nodes.iter())
                .map(|l| label_node.get(l).copied().ok_or_else(|| format!("missing label {l:?}")))
                .collect::<Result<_, _>>()?;
            total += seq.len();
            if !seq.len().is_multiple_of(k2) {
                return Err(format!("section of length {} is not a multiple of {k2}", seq.len()));
            }
            blocks.extend(seq.chunks(k2).map(<[usize]>::to_vec));
        }
        if total != wd.node_count() {
            return Err(format!("sections cover {total} of {} dual nodes", wd.node_count()));
        }
        let count = blocks.len();
        let bp = BlockPartition::new(&wd, blocks, k2).map_err(|e| e.to_string())?;
        let out = g.corresponding_subgraph(&wd, &bp).map_err(|e| e.to_string())?;
        if !out.is_two_connected() {
            return Err("corresponding subgraph is not 2-connected".into());
        }
        Ok((out, count))
    }

    /// Outer section then around the inner cycle, with an adjustable pontoon
    /// `R` at one end of `U`.
    fn spiral(&mut self) -> Result<(PlaneGraph, bool, usize), Failure> {
        let nc = self.c.len();
        let u = self.sel.u;
        let a_l = self.sel.a.end(nc);
        let a_f = self.sel.a.start;
        let mut last_err = String::from("no pontoon order fits");
        for clockwise in [true, false] {
            for r in 0..=self.k - 3 {
                if r + 2 > u.len {
                    break;
                }
                let r_path = if clockwise {
                    CyclePath::new((u.start + u.len - r) % nc, r)
                } else {
                    CyclePath::new(u.start, r)
                };
                if r > 0 && self.b.build_pontoon(r_path, PontoonRole::R).is_err() {
                    continue;
                }
                let (origin, z_start) = if clockwise {
                    (if r > 0 { r_path.start } else { a_f }, a_l)
                } else {
                    (if r > 0 { r_path.end(nc) } else { a_l }, (a_f + nc - 1) % nc)
                };
                let mut seq = self.outer_sequence(origin, clockwise);
                let inner = self.inner_from(z_start, clockwise);
                seq.push(Segment::free(inner.into_iter().map(|(_, l)| l).collect()));
                let sections = vec![seq];
                if self.sections_ok(&sections) {
                    match self.realize(sections) {
                        Ok((g, blocks)) => return Ok((g, !clockwise, blocks)),
                        Err(e) => last_err = e,
                    }
                }
                if r > 0 {
                    self.b.pop_pontoon();
                }
            }
        }
        Err(self.fail(last_err))
    }

    /// Two sections: outer part up to `a_l`, the wheel triangles outside
    /// `A`, the outer part from `a_f` ending with pontoon `L`; then the rest of
    /// the inner cycle.
    fn two_sections(&mut self) -> Result<(PlaneGraph, bool, usize), Failure> {
        let nc = self.c.len();
        let u = self.sel.u;
        let a_l = self.sel.a.end(nc);
        let a_f = self.sel.a.start;
        let k3 = self.k - 3;
        let mut order: Vec<(usize, usize)> = Vec::new();
        for x in 0..=k3 {
            for y in 0..=k3 {
                order.push(if self.case == CaseLabel::C1B { (y, x) } else { (x, y) });
            }
        }
        let mut last_err = String::from("no pontoon orders fit");
        for (r, l) in order {
            if r + l + 3 > u.len {
                continue;
            }
            let r_path = CyclePath::new((u.start + u.len - r) % nc, r);
            let l_path = CyclePath::new(u.start, l);
            if r > 0 && self.b.build_pontoon(r_path, PontoonRole::R).is_err() {
                continue;
            }
            if l > 0 && self.b.build_pontoon(l_path, PontoonRole::L).is_err() {
                if r > 0 {
                    self.b.pop_pontoon();
                }
                continue;
            }
            let origin = if r > 0 { r_path.start } else { (u.start + u.len) % nc };
            let units = self.outer_sequence(origin, true);
            let mut units_pos = self.units();
            units_pos.sort_by_key(|(p, _)| self.c.offset(origin, *p));
            let split = units_pos
                .iter()
                .position(|(p, _)| self.c.offset(origin, *p) > self.c.offset(origin, a_l))
                .unwrap_or(units_pos.len());
            let (j1, j2) = units.split_at(split);
            let inner = self.inner_from(a_l, true);
            let w_len = self.c.offset(a_l, a_f);
            let (zw, rest) = inner.split_at(w_len.min(inner.len()));
            let mut s1: Vec<Segment> = j1.to_vec();
            s1.push(Segment::free(zw.iter().map(|&(_, l)| l).collect()));
            s1.extend(j2.iter().cloned());
            let s2 = vec![Segment::free(rest.iter().map(|&(_, l)| l).collect())];
            let sections = vec![s1, s2];
            if !rest.is_empty() && self.sections_ok(&sections) {
                match self.realize(sections) {
                    Ok((g, blocks)) => return Ok((g, false, blocks)),
                    Err(e) => last_err = e,
                }
            }
            if l > 0 {
                self.b.pop_pontoon();
            }
            if r > 0 {
                self.b.pop_pontoon();
            }
        }
        Err(self.fail(last_err))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::new(v.iter().map(|&p| p.into()).collect()).unwrap()
    }

    fn faces_all_k(g: &PlaneGraph, k: usize) -> bool {
        g.internal_faces().iter().all(|f| f.len() == k)
    }

    #[test]
    fn required_j_values() {
        assert_eq!(required_j(32, 4), 0);
        assert_eq!(required_j(51, 5), 2);
        for n in 3..40 {
            assert_eq!(required_j(n, 3), 0);
        }
        assert_eq!(required_j(5, 4), 1);
        assert_eq!(required_j(6, 6), 0);
        assert_eq!(required_j(7, 6), 3);
    }

    #[test]
    fn fan_on_convex_hexagon() {
        let s = ps(&[(0, 0), (4, -2), (8, 0), (8, 5), (4, 7), (0, 5)]);
        let g = fan_kangulation_j0(&s, 4).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.internal_faces().len(), 2);
        assert!(faces_all_k(&g, 4));
    }

    #[test]
    fn fan_single_face_when_n_equals_k() {
        let s = ps(&[(0, 0), (4, -2), (8, 0), (8, 5), (4, 7)]);
        let g = fan_kangulation_j0(&s, 5).unwrap();
        assert_eq!(g.internal_faces().len(), 1);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn fan_with_interior_points() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (3, 4), (7, 5)]);
        let g = fan_kangulation_j0(&s, 4).unwrap();
        assert!(g.validate_drawing().ok());
        assert!(g.is_two_connected());
        assert!(faces_all_k(&g, 4));
        assert_eq!(g.internal_faces().len(), 2);
        assert_eq!(
            fan_kangulation_j0(&ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (3, 4)]), 4).unwrap_err(),
            KangulateError::WrongResidue { expected: 0, actual: 1 }
        );
    }

    #[test]
    fn wheel_split_square_center() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        let w = TriangulationBuilder::wheel(&s, 4).unwrap().to_plane_graph().unwrap();
        let g = wheel_partition_j1(&w, 4, 4).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.internal_faces().len(), 2);
        assert!(faces_all_k(&g, 4));
        assert!(g.is_two_connected());
    }

    #[test]
    fn convex_five_points_infeasible_for_quads() {
        let s = ps(&[(0, 0), (4, -2), (8, 0), (8, 5), (4, 7)]);
        match kangulate(&s, 4).unwrap() {
            KangulateOutcome::Infeasible { j, interior, reason } => {
                assert_eq!((j, interior), (1, 0));
                assert_eq!(reason, InfeasibleReason::TooFewInteriorPoints);
            }
            KangulateOutcome::Found(_) => panic!("expected infeasible"),
        }
    }

    #[test]
    fn invalid_k() {
        let s = ps(&[(0, 0), (4, -2), (8, 0)]);
        assert_eq!(kangulate(&s, 2).unwrap_err(), KangulateError::InvalidK(2));
    }

    #[test]
    fn square_center_quadrangulation() {
        let s = ps(&[(0, 0), (10, 0), (10, 10), (0, 10), (6, 5)]);
        let kg = kangulate(&s, 4).unwrap().found().unwrap();
        assert_eq!(kg.trace.case, CaseLabel::J1);
        assert_eq!(kg.graph.internal_faces().len(), 2);
    }
}
