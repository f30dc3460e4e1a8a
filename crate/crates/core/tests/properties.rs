use proptest::prelude::*;

use kangulate::construct::{bad_convex_runs, wheel_cycle};
use kangulate::generate::random_points;
use kangulate::geom::{convex_hull_indices, cross, orientation};
use kangulate::io::ResultDocument;
use kangulate::plane_graph::validate_segments;
use kangulate::{kangulate, required_j, verify_kangulation, KangulateOutcome, Orientation, Point, PointSet};

fn side(a: Point, b: Point, c: Point) -> i128 {
    let v = (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128;
    v.signum()
}

fn in_triangle(q: Point, a: Point, b: Point, c: Point) -> bool {
    let s = [side(a, b, q), side(b, c, q), side(c, a, q)];
    s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
}

/// A point of a set in general position is interior iff some triangle on
/// three other points contains it.
fn interior_brute(pts: &[Point], i: usize) -> bool {
    let n = pts.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| (b + 1..n).any(|c| ![a, b, c].contains(&i) && in_triangle(pts[i], pts[a], pts[b], pts[c])))
    })
}

fn crosses(p: Point, q: Point, r: Point, s: Point) -> bool {
    side(p, q, r) * side(p, q, s) < 0 && side(r, s, p) * side(r, s, q) < 0
}

fn small_set() -> impl Strategy<Value = PointSet> {
    (4usize..14, 3i64..40, any::<u64>()).prop_map(|(n, range, seed)| random_points(n, range.max(n as i64), seed).unwrap())
}

proptest! {
    #[test]
    fn orientation_signs(ax in -1000i64..1000, ay in -1000i64..1000, bx in -1000i64..1000,
                         by in -1000i64..1000, cx in -1000i64..1000, cy in -1000i64..1000) {
        let (a, b, c) = (Point::new(ax, ay), Point::new(bx, by), Point::new(cx, cy));
        prop_assert_eq!(orientation(a, b, c), orientation(b, c, a));
        prop_assert_eq!(orientation(a, b, c), orientation(b, a, c).reversed());
        let expect = match side(a, b, c) {
            1 => Orientation::CounterClockwise,
            -1 => Orientation::Clockwise,
            _ => Orientation::Collinear,
        };
        prop_assert_eq!(orientation(a, b, c), expect);
        prop_assert_eq!(cross(a, b, c), -cross(a, c, b));
    }

    #[test]
    fn extreme_coordinates_are_exact(s in any::<u8>()) {
        let m = (1i64 << 62) - 1 - s as i64;
        let (a, b, c) = (Point::new(-m, -m), Point::new(m, m - 1), Point::new(m - 1, m));
        prop_assert_eq!(orientation(a, b, c), Orientation::CounterClockwise);
    }

    #[test]
    fn hull_and_interior_match_brute_force(ps in small_set()) {
        let pts = ps.points();
        let hull = convex_hull_indices(pts);
        for i in 0..pts.len() {
            let inside = interior_brute(pts, i);
            prop_assert_eq!(ps.is_interior(i), inside);
            prop_assert_eq!(hull.contains(&i), !inside);
        }
        for w in 0..hull.len() {
            let (a, b, c) = (hull[w], hull[(w + 1) % hull.len()], hull[(w + 2) % hull.len()]);
            prop_assert_eq!(orientation(pts[a], pts[b], pts[c]), Orientation::Clockwise);
        }
    }

    #[test]
    fn radial_order_matches_angles(n in 5usize..40, seed in any::<u64>()) {
        let ps = random_points(n, 1000, seed).unwrap();
        prop_assume!(!ps.interior().is_empty());
        let z = ps.interior()[0];
        let c = ps.point(z);
        let angle = |i: usize| {
            let p = ps.point(i);
            ((p.y - c.y) as f64).atan2((p.x - c.x) as f64)
        };
        let mut expect: Vec<usize> = (0..n).filter(|&i| i != z).collect();
        expect.sort_by(|&a, &b| angle(b).partial_cmp(&angle(a)).unwrap());
        let first = (0..expect.len()).min_by_key(|&i| ps.point(expect[i])).unwrap();
        expect.rotate_left(first);
        prop_assert_eq!(ps.radial_order(z).unwrap(), expect);
    }

    #[test]
    fn sweep_agrees_with_pairwise_crossings(ps in small_set(), mask in any::<u64>()) {
        let n = ps.len();
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let edges: Vec<(usize, usize)> = all.iter().enumerate()
            .filter(|(i, _)| mask.rotate_left(*i as u32 % 64) & 1 == 1 && (i * 7 + mask as usize) % 5 < 2)
            .map(|(_, &e)| e)
            .collect();
        let p = ps.points();
        let brute = edges.iter().enumerate().all(|(i, &(a, b))| {
            edges[i + 1..].iter().all(|&(c, d)| !crosses(p[a], p[b], p[c], p[d]))
        });
        prop_assert_eq!(validate_segments(p, edges.iter().copied()).ok(), brute);
    }

    #[test]
    fn wheel_has_at_most_one_bad_path(n in 5usize..80, seed in any::<u64>()) {
        let ps = random_points(n, 1 << 16, seed).unwrap();
        prop_assume!(!ps.interior().is_empty());
        let z = ps.smallest_interior().unwrap();
        let c = wheel_cycle(&ps, z).unwrap();
        prop_assert!(bad_convex_runs(&c, z, &ps).len() <= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructions_verify(k in 3usize..8, extra in 0usize..40, seed in any::<u64>()) {
        let n = k + extra + (seed % 60) as usize;
        let ps = random_points(n, 1 << 20, seed).unwrap();
        let j = required_j(n, k);
        match kangulate(&ps, k) {
            Ok(KangulateOutcome::Found(kg)) => {
                prop_assert!(ps.interior().len() >= j);
                let g = &kg.graph;
                prop_assert!(verify_kangulation(&ps, g, k).overall);
                // every edge borders two face sides; the outer cycle closes the count
                let faces = g.internal_faces();
                prop_assert_eq!(k * faces.len() + g.outer_cycle().len(), 2 * g.edge_count());
                prop_assert_eq!(g.edge_count() + 1, n + faces.len());
                let doc = ResultDocument::found(&ps, &kg);
                prop_assert_eq!(ResultDocument::from_json(&doc.to_json()).unwrap(), doc);
            }
            Ok(KangulateOutcome::Infeasible { .. }) => prop_assert!(ps.interior().len() < j),
            Err(e) => prop_assert!(n < 2 * k * k, "{} at n = {}", e, n),
        }
    }
}
