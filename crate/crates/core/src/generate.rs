//! Seeded point-set generators for tests, scans and benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::CaseLabel;
use crate::geom::{GeomError, Point, PointSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Direction from `p` to `q` reduced to lowest terms, identified with its
/// opposite.
fn line_direction(p: Point, q: Point) -> (i64, i64) {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let g = gcd(dx, dy);
    let (dx, dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// Adds `p` unless it repeats a point or is collinear with two accepted ones.
fn try_push(pts: &mut Vec<Point>, seen: &mut HashSet<Point>, p: Point) -> bool {
    if seen.contains(&p) {
        return false;
    }
    let mut dirs = HashSet::with_capacity(pts.len());
    for &q in pts.iter() {
        if !dirs.insert(line_direction(p, q)) {
            return false;
        }
    }
    seen.insert(p);
    pts.push(p);
    true
}

/// Extends `pts` by rejection sampling from `sample` until it has `n` points.
fn fill(pts: &mut Vec<Point>, n: usize, mut sample: impl FnMut() -> Point) {
    let mut seen: HashSet<Point> = pts.iter().copied().collect();
    while pts.len() < n {
        let p = sample();
        try_push(pts, &mut seen, p);
    }
}

/// `n` uniform points in `[-range, range]^2` in general position.
pub fn random_points(n: usize, range: i64, seed: u64) -> Result<PointSet, GeomError> {
    let mut r = rng(seed);
    let mut pts = Vec::with_capacity(n);
    fill(&mut pts, n, || Point::new(r.gen_range(-range..=range), r.gen_range(-range..=range)));
    PointSet::new_trusted(pts)
}

/// `n` points in convex position near a circle of radius `radius`.
pub fn convex_points(n: usize, radius: i64, seed: u64) -> Result<PointSet, GeomError> {
    let mut r = rng(seed);
    let step = std::f64::consts::TAU / n as f64;
    let angles: Vec<f64> = (0..n).map(|i| (i as f64 + r.gen_range(0.0..0.5)) * step).collect();
    let mut pts = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    for a in angles {
        let p = Point::new((radius as f64 * a.cos()).round() as i64, (radius as f64 * a.sin()).round() as i64);
        try_push(&mut pts, &mut seen, p);
    }
    let ps = PointSet::new_trusted(pts)?;
    let hull: Vec<usize> = ps.hull().to_vec();
    PointSet::new_trusted(hull.into_iter().map(|i| ps.point(i)).collect())
}

/// Smallest prime that is at least `n`.
pub fn prime_at_least(n: usize) -> usize {
    let is_prime = |p: usize| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (n.max(2)..).find(|&p| is_prime(p)).unwrap()
}

/// The points `(x, x^2 mod p)` for `x < n`, with `p` the smallest prime at
/// least `n`; no three are collinear.
pub fn no_three_in_line(n: usize) -> Result<PointSet, GeomError> {
    let p = prime_at_least(n) as i64;
    let pts = (0..n as i64).map(|x| Point::new(x, x * x % p)).collect();
    PointSet::new_trusted(pts)
}

/// Points on arcs of a circle around a centre point, some of them pushed
/// inward. Angles are in radians, measured counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct RingSpec {
    pub radius: i64,
    /// `(from, to, count)`: `count` points spread over the arc.
    pub arcs: Vec<(f64, f64, usize)>,
    /// `(angle, depth)`: a point pulled toward the origin by `depth * radius`.
    pub dents: Vec<(f64, f64)>,
    /// Position of the centre point relative to the radius.
    pub centre: (f64, f64),
    /// Angular jitter of arc points, as a fraction of their spacing.
    pub jitter: f64,
}

impl RingSpec {
    pub fn len(&self) -> usize {
        1 + self.dents.len() + self.arcs.iter().map(|a| a.2).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Builds a [`RingSpec`]; the centre point comes first. Points that would
/// break general position are nudged along the circle.
pub fn ring(spec: &RingSpec, seed: u64) -> Result<PointSet, GeomError> {
    let mut r = rng(seed);
    let rad = spec.radius as f64;
    let at = |a: f64, rr: f64| Point::new((rr * a.cos()).round() as i64, (rr * a.sin()).round() as i64);
    let mut pts = vec![at(0.0, 0.0)];
    pts[0] = Point::new((spec.centre.0 * rad).round() as i64, (spec.centre.1 * rad).round() as i64);
    let mut seen: HashSet<Point> = pts.iter().copied().collect();
    for &(a, d) in &spec.dents {
        let mut a = a;
        while !try_push(&mut pts, &mut seen, at(a, rad * (1.0 - d))) {
            a += 1e-4;
        }
    }
    for &(from, to, count) in &spec.arcs {
        let step = (to - from) / count as f64;
        for i in 0..count {
            let mut a = from + (i as f64 + 0.5 + spec.jitter * r.gen_range(-0.5..0.5)) * step;
            while !try_push(&mut pts, &mut seen, at(a, rad)) {
                a += step * 0.01;
            }
        }
    }
    PointSet::new_trusted(pts)
}

/// Ring layouts that steer the general construction into one case; `n`
/// must be one of the sizes listed in [`case_layout`].
fn case_ring(case: CaseLabel, n: usize) -> RingSpec {
    let tau = std::f64::consts::TAU;
    let d = 0.02;
    let (arcs, dents) = match case {
        CaseLabel::C2A => (
            vec![(0.1, tau - 0.1, n - 4)],
            vec![(0.065, 0.2), (0.0, 0.03), (-0.065, 0.2)],
        ),
        CaseLabel::C2B => {
            let a = -1.0;
            let dense = (n - 5) * 2 / 3;
            (
                vec![(a + 2.0 * d, 1.0 - 2.0 * d, dense), (1.0 + 2.0 * d, tau + a - 2.0 * d, n - 5 - dense)],
                vec![(1.0, 0.2), (a + d, 0.2), (a, 0.03), (a - d, 0.2)],
            )
        }
        _ => {
            let dense = (n - 3) * 2 / 3;
            (
                vec![(-1.0 + 2.0 * d, 1.0 - 2.0 * d, dense), (1.0 + 2.0 * d, tau - 1.0 - 2.0 * d, n - 3 - dense)],
                vec![(1.0, 0.2), (-1.0, 0.2)],
            )
        }
    };
    RingSpec {
        radius: 1 << 24,
        arcs,
        dents,
        centre: (-0.02, 0.01),
        jitter: 0.5,
    }
}

/// A point set and `k` meant to exercise `case`. `variant` picks the size
/// and seed. Random sets are used for the fan, the wheel split and case
/// 1(a); ring layouts for the others:
///
/// | case | k | n      |
/// |------|---|--------|
/// | 1(b) | 6 | 75, 79 |
/// | 2(a) | 7 | 98, 103 |
/// | 2(b) | 8 | 129, 135 |
pub fn case_layout(case: CaseLabel, variant: u64) -> Result<(PointSet, usize), GeomError> {
    let step = (variant % 6) as usize;
    let seed = variant.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ case as u64;
    let sized = |pair: [usize; 2]| pair[(variant % 2) as usize];
    match case {
        CaseLabel::J0 => Ok((random_points(32 + 2 * step, 1 << 20, seed)?, 4)),
        CaseLabel::J1 => Ok((random_points(33 + 2 * step, 1 << 20, seed)?, 4)),
        CaseLabel::C1A => Ok((random_points(51 + 3 * step, 1 << 20, seed)?, 5)),
        CaseLabel::C1B => Ok((ring(&case_ring(case, sized([75, 79])), variant / 2)?, 6)),
        CaseLabel::C2A => Ok((ring(&case_ring(case, sized([98, 103])), variant / 2)?, 7)),
        CaseLabel::C2B => Ok((ring(&case_ring(case, sized([129, 135])), variant / 2)?, 8)),
    }
}

/// Random points with at least `interior` of them strictly inside the hull.
pub fn random_with_interior(n: usize, interior: usize, range: i64, seed: u64) -> Result<PointSet, GeomError> {
    let mut s = seed;
    loop {
        let ps = random_points(n, range, s)?;
        if ps.interior().len() >= interior {
            return Ok(ps);
        }
        s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
    }
}

/// A convex polygon of `n - interior` points plus `interior` points well
/// inside it.
pub fn few_interior(n: usize, interior: usize, radius: i64, seed: u64) -> Result<PointSet, GeomError> {
    let mut r = rng(seed ^ 0x5151);
    let outer = convex_points(n - interior, radius, seed)?;
    let mut pts: Vec<Point> = outer.points().to_vec();
    let target = pts.len() + interior;
    let half = radius / 3;
    fill(&mut pts, target, || Point::new(r.gen_range(-half..=half), r.gen_range(-half..=half)));
    PointSet::new_trusted(pts)
}
