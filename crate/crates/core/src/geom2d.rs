//! Exact planar polygon arithmetic: areas by the shoelace rule, half-plane
//! clipping, and convex intersection. All coordinates are rationals, so
//! areas of intersections come out exact.

use crate::numerics::Rat;
use num_traits::{Signed, Zero};

pub type Point = (Rat, Rat);

/// Twice the signed area of the polygon (positive for counterclockwise).
pub fn signed_area2(poly: &[Point]) -> Rat {
    let n = poly.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        let (x1, y1) = &poly[i];
        let (x2, y2) = &poly[(i + 1) % n];
        acc += x1 * y2 - x2 * y1;
    }
    acc
}

/// Absolute polygon area.
pub fn shoelace_area(poly: &[Point]) -> Rat {
    signed_area2(poly).abs() / crate::numerics::rat_int(2)
}

/// Cross product `(a - o) x (b - o)`.
pub fn cross(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Closed membership test for a convex polygon given in either orientation.
pub fn convex_contains(poly: &[Point], p: &Point) -> bool {
    if poly.len() < 3 {
        return false;
    }
    let ccw = !signed_area2(poly).is_negative();
    let n = poly.len();
    for i in 0..n {
        let c = cross(&poly[i], &poly[(i + 1) % n], p);
        if (ccw && c.is_negative()) || (!ccw && c.is_positive()) {
            return false;
        }
    }
    true
}

/// Clips `poly` to the half-plane `a*x + b*y <= c`.
pub fn clip_halfplane(poly: &[Point], a: &Rat, b: &Rat, c: &Rat) -> Vec<Point> {
    let value = |p: &Point| -> Rat { a * &p.0 + b * &p.1 - c };
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let cur = &poly[i];
        let next = &poly[(i + 1) % n];
        let vc = value(cur);
        let vn = value(next);
        let cur_in = !vc.is_positive();
        let next_in = !vn.is_positive();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != next_in {
            // The edge crosses the boundary line; vc != vn here.
            let t = &vc / (&vc - &vn);
            let x = &cur.0 + &t * (&next.0 - &cur.0);
            let y = &cur.1 + &t * (&next.1 - &cur.1);
            out.push((x, y));
        }
    }
    out
}

/// Intersection of two convex polygons, as a polygon (possibly empty or
/// degenerate). Vertex order of the inputs may be either orientation.
pub fn convex_intersection(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    if subject.is_empty() || clip.is_empty() {
        return Vec::new();
    }
    let mut clip_ccw: Vec<Point> = clip.to_vec();
    if signed_area2(&clip_ccw).is_negative() {
        clip_ccw.reverse();
    }
    let mut poly = subject.to_vec();
    let n = clip_ccw.len();
    for i in 0..n {
        if poly.is_empty() {
            break;
        }
        let p1 = clip_ccw[i].clone();
        let p2 = clip_ccw[(i + 1) % n].clone();
        // Keep the left side of p1 -> p2: cross(p1, p2, x) >= 0, i.e.
        // (y2-y1) x + (x1-x2) y <= x1 y2 - x2 y1.
        let a = &p2.1 - &p1.1;
        let b = &p1.0 - &p2.0;
        let c = &p1.0 * &p2.1 - &p2.0 * &p1.1;
        poly = clip_halfplane(&poly, &a, &b, &c);
    }
    poly
}

/// Area of the intersection of two convex polygons.
pub fn intersection_area(subject: &[Point], clip: &[Point]) -> Rat {
    shoelace_area(&convex_intersection(subject, clip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, rat_int};

    fn pt(x: i64, y: i64) -> Point {
        (rat_int(x), rat_int(y))
    }

    fn unit_square() -> Vec<Point> {
        vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
    }

    #[test]
    fn shoelace_of_simple_shapes() {
        assert_eq!(shoelace_area(&unit_square()), rat_int(1));
        let tri = vec![pt(0, 0), pt(4, 0), pt(0, 3)];
        assert_eq!(shoelace_area(&tri), rat_int(6));
        // Orientation does not matter for the absolute area.
        let tri_cw: Vec<Point> = tri.iter().rev().cloned().collect();
        assert_eq!(shoelace_area(&tri_cw), rat_int(6));
    }

    #[test]
    fn halfplane_clip_cuts_the_square() {
        // x + y <= 1 cuts the unit square to a triangle of area 1/2.
        let clipped = clip_halfplane(&unit_square(), &rat_int(1), &rat_int(1), &rat_int(1));
        assert_eq!(shoelace_area(&clipped), rat(1, 2));
        // x <= 2 keeps everything.
        let kept = clip_halfplane(&unit_square(), &rat_int(1), &rat_int(0), &rat_int(2));
        assert_eq!(shoelace_area(&kept), rat_int(1));
        // x <= -1 removes everything.
        let gone = clip_halfplane(&unit_square(), &rat_int(1), &rat_int(0), &rat_int(-1));
        assert!(gone.is_empty());
    }

    #[test]
    fn convex_intersection_of_offset_squares() {
        let shifted: Vec<Point> = unit_square()
            .iter()
            .map(|(x, y)| (x + rat(1, 2), y + rat(1, 2)))
            .collect();
        assert_eq!(intersection_area(&unit_square(), &shifted), rat(1, 4));
        // Same result with a clockwise clip polygon.
        let shifted_cw: Vec<Point> = shifted.iter().rev().cloned().collect();
        assert_eq!(intersection_area(&unit_square(), &shifted_cw), rat(1, 4));
    }

    #[test]
    fn disjoint_polygons_have_empty_intersection() {
        let far: Vec<Point> = unit_square()
            .iter()
            .map(|(x, y)| (x + rat_int(5), y.clone()))
            .collect();
        assert_eq!(intersection_area(&unit_square(), &far), rat_int(0));
    }

    #[test]
    fn membership_is_closed_and_orientation_free() {
        let sq = unit_square();
        let cw: Vec<Point> = sq.iter().rev().cloned().collect();
        for poly in [&sq, &cw] {
            assert!(convex_contains(poly, &(rat(1, 2), rat(1, 3))));
            assert!(convex_contains(poly, &(rat_int(1), rat(1, 2)))); // edge
            assert!(convex_contains(poly, &pt(0, 0))); // vertex
            assert!(!convex_contains(poly, &(rat(3, 2), rat(1, 2))));
            assert!(!convex_contains(poly, &(rat(1, 2), rat(-1, 5))));
        }
    }

    #[test]
    fn triangle_square_overlap_is_exact() {
        // Triangle with legs 3/2: the line x + y = 3/2 cuts off a corner
        // triangle of area 1/8 from the unit square.
        let tri = vec![
            (rat_int(0), rat_int(0)),
            (rat(3, 2), rat_int(0)),
            (rat_int(0), rat(3, 2)),
        ];
        assert_eq!(intersection_area(&tri, &unit_square()), rat(7, 8));
        // Triangle with legs 2 covers the square entirely.
        let big = vec![pt(0, 0), pt(2, 0), pt(0, 2)];
        assert_eq!(intersection_area(&big, &unit_square()), rat_int(1));
    }
}
