//! Exact integer geometry: orientation, convex hulls, radial order.
//!
//! Every predicate evaluates an integer determinant in `i128`, so results are
//! exact for all coordinates accepted by [`PointSet`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted absolute coordinate value.
pub const MAX_COORD: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn in_range(&self) -> bool {
        self.x.abs() <= MAX_COORD && self.y.abs() <= MAX_COORD
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of triangle `abc`; positive for a left turn.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (bx, by) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (cx, cy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    bx * cy - by * cx
}

#[inline]
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    match cross(a, b, c).cmp(&0) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

#[inline]
pub fn is_clockwise(a: Point, b: Point, c: Point) -> bool {
    cross(a, b, c) < 0
}

/// Orders direction vectors counterclockwise starting at the positive x-axis.
pub fn cmp_direction_ccw(d1: (i64, i64), d2: (i64, i64)) -> Ordering {
    fn half(d: (i64, i64)) -> u8 {
        if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
            0
        } else {
            1
        }
    }
    half(d1).cmp(&half(d2)).then_with(|| {
        let c = d1.0 as i128 * d2.1 as i128 - d1.1 as i128 * d2.0 as i128;
        0.cmp(&c)
    })
}

/// Twice the signed area of a closed polygon; positive when counterclockwise.
pub fn signed_area2(pts: impl IntoIterator<Item = Point>) -> i128 {
    let pts: Vec<Point> = pts.into_iter().collect();
    let mut sum = 0i128;
    for i in 0..pts.len() {
        let a = pts[i];
        let b = pts[(i + 1) % pts.len()];
        sum += a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128;
    }
    sum
}

/// Indices of the convex hull vertices of `pts` in clockwise order, starting
/// at the lexicographically smallest point. Duplicate points are tolerated.
pub fn convex_hull_indices(pts: &[Point]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| pts[i]);
    order.dedup_by_key(|i| pts[*i]);
    if order.len() < 3 {
        return order;
    }
    // Monotone chain; lower hull is built left to right with right turns
    // removed, giving a counterclockwise hull that is reversed at the end.
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && cross(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    // hull is counterclockwise from the smallest point
    hull[1..].reverse();
    hull
}

/// True iff `q` lies strictly inside the convex hull of `pts`.
pub fn in_convex_hull(q: Point, pts: &[Point]) -> bool {
    let hull = convex_hull_indices(pts);
    if hull.len() < 3 {
        return false;
    }
    (0..hull.len()).all(|i| {
        let a = pts[hull[i]];
        let b = pts[hull[(i + 1) % hull.len()]];
        is_clockwise(a, b, q)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("at least 3 points are required, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("point {0} has a coordinate outside [-2^30, 2^30]")]
    CoordinateOutOfRange(usize),
    #[error("point {0} is not an interior point")]
    NotInterior(usize),
}

/// A point set in general position with its hull classification.
///
/// Cloning is cheap; the coordinate storage is shared.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Arc<[Point]>,
    hull: Vec<usize>,
    interior: Vec<usize>,
    is_hull: Vec<bool>,
}

impl PointSet {
    /// Validates general position and classifies hull and interior points.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        check_points(&points)?;
        check_general_position(&points)?;
        Ok(Self::classify(points))
    }

    /// Builds a point set whose general position is guaranteed by the caller,
    /// skipping the quadratic collinearity scan. Range, size and duplicates are
    /// still checked.
    pub fn new_trusted(points: Vec<Point>) -> Result<Self, GeomError> {
        check_points(&points)?;
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| points[i]);
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(GeomError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        Ok(Self::classify(points))
    }

    fn classify(points: Vec<Point>) -> Self {
        let hull = convex_hull_indices(&points);
        let mut is_hull = vec![false; points.len()];
        for &h in &hull {
            is_hull[h] = true;
        }
        let interior = (0..points.len()).filter(|&i| !is_hull[i]).collect();
        PointSet {
            points: points.into(),
            hull,
            interior,
            is_hull,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn shared_points(&self) -> Arc<[Point]> {
        Arc::clone(&self.points)
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Hull indices in clockwise order.
    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    /// Interior indices in increasing order.
    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn is_interior(&self, i: usize) -> bool {
        i < self.len() && !self.is_hull[i]
    }

    /// Interior point with the lexicographically smallest coordinates.
    pub fn smallest_interior(&self) -> Option<usize> {
        self.interior.iter().copied().min_by_key(|&i| self.points[i])
    }

    /// All indices except `z`, clockwise around interior point `z`, starting
    /// at the lexicographically smallest point.
    pub fn radial_order(&self, z: usize) -> Result<Vec<usize>, GeomError> {
        if !self.is_interior(z) {
            return Err(GeomError::NotInterior(z));
        }
        let c = self.points[z];
        let mut order: Vec<usize> = (0..self.len()).filter(|&i| i != z).collect();
        order.sort_by(|&a, &b| {
            let da = (self.points[a].x - c.x, self.points[a].y - c.y);
            let db = (self.points[b].x - c.x, self.points[b].y - c.y);
            let ord = cmp_direction_ccw(db, da);
            debug_assert!(ord != Ordering::Equal || a == b, "radial tie at {a}, {b}");
            ord
        });
        let first = (0..order.len())
            .min_by_key(|&i| self.points[order[i]])
            .unwrap_or(0);
        order.rotate_left(first);
        Ok(order)
    }
}

fn check_points(points: &[Point]) -> Result<(), GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints(points.len()));
    }
    if let Some(i) = points.iter().position(|p| !p.in_range()) {
        return Err(GeomError::CoordinateOutOfRange(i));
    }
    Ok(())
}

/// Rejects duplicates and collinear triples in O(n^2 log n): around each
/// point, the others are sorted by direction modulo a half turn, and two
/// equal neighbours in that order are collinear with the pivot.
fn check_general_position(points: &[Point]) -> Result<(), GeomError> {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| points[i]);
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(GeomError::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let mut dirs: Vec<((i64, i64), usize)> = Vec::with_capacity(n);
    for (i, &p) in points.iter().enumerate() {
        dirs.clear();
        for (j, &q) in points.iter().enumerate().skip(i + 1) {
            let (mut dx, mut dy) = (q.x - p.x, q.y - p.y);
            if dy < 0 || (dy == 0 && dx < 0) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push(((dx, dy), j));
        }
        dirs.sort_by(|a, b| cmp_direction_ccw(a.0, b.0));
        for w in dirs.windows(2) {
            if cmp_direction_ccw(w[0].0, w[1].0) == Ordering::Equal {
                let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(GeomError::CollinearTriple(i, a, b));
            }
        }
    }
    Ok(())
}
