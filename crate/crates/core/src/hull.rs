//! Exact 2D convex hull with per-point classification.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) type Point2 = (BigRational, BigRational);

/// Where an input point sits relative to the hull of the whole set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullPosition {
    Vertex,
    /// Relative interior of a hull edge.
    OnEdge,
    Interior,
}

fn orient(p: &Point2, q: &Point2, r: &Point2) -> BigRational {
    (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0)
}

/// `x` lies strictly between `a` and `b` on their segment.
fn strictly_between(a: &Point2, b: &Point2, x: &Point2) -> bool {
    if x == a || x == b || !orient(a, b, x).is_zero() {
        return false;
    }
    let in_range = |lo: &BigRational, hi: &BigRational, v: &BigRational| {
        if lo <= hi { v >= lo && v <= hi } else { v >= hi && v <= lo }
    };
    in_range(&a.0, &b.0, &x.0) && in_range(&a.1, &b.1, &x.1)
}

/// Extreme points of the set in counterclockwise order (collinear points on
/// hull edges are not vertices). Degenerate inputs yield one point or the two
/// endpoints of the common segment.
fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut unique: Vec<Point2> = points.to_vec();
    unique.sort();
    unique.dedup();
    if unique.len() <= 2 {
        return unique;
    }
    // Monotone chain; popping on <= 0 drops collinear edge points, and a
    // fully collinear set collapses to its two extremes.
    let chain = |pts: &mut dyn Iterator<Item = &Point2>| {
        let mut half: Vec<Point2> = Vec::new();
        for p in pts {
            while half.len() >= 2
                && orient(&half[half.len() - 2], &half[half.len() - 1], p) <= BigRational::zero()
            {
                half.pop();
            }
            half.push(p.clone());
        }
        half.pop();
        half
    };
    let mut hull = chain(&mut unique.iter());
    hull.extend(chain(&mut unique.iter().rev()));
    hull
}

/// Classifies every input point (with multiplicity) against the hull of the set.
pub(crate) fn classify_points(points: &[Point2]) -> Vec<HullPosition> {
    let hull = convex_hull(points);
    points
        .iter()
        .map(|p| {
            if hull.contains(p) {
                return HullPosition::Vertex;
            }
            if hull.len() == 2 {
                return if strictly_between(&hull[0], &hull[1], p) {
                    HullPosition::OnEdge
                } else {
                    HullPosition::Interior
                };
            }
            for i in 0..hull.len() {
                let a = &hull[i];
                let b = &hull[(i + 1) % hull.len()];
                if strictly_between(a, b, p) {
                    return HullPosition::OnEdge;
                }
            }
            HullPosition::Interior
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(x: i64, y: i64) -> Point2 {
        (rat(x, 1), rat(y, 1))
    }

    #[test]
    fn square_with_center_and_edge_point() {
        let pts = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1), p(1, 0)];
        let classes = classify_points(&pts);
        assert_eq!(
            classes,
            vec![
                HullPosition::Vertex,
                HullPosition::Vertex,
                HullPosition::Vertex,
                HullPosition::Vertex,
                HullPosition::Interior,
                HullPosition::OnEdge,
            ]
        );
    }

    #[test]
    fn duplicates_count_individually() {
        let pts = vec![p(0, 0), p(1, 0), p(0, 1), p(1, 1), p(1, 1)];
        let classes = classify_points(&pts);
        assert_eq!(classes[3], HullPosition::Vertex);
        assert_eq!(classes[4], HullPosition::Vertex);
    }

    #[test]
    fn collinear_set() {
        let pts = vec![p(0, 0), p(1, 1), p(2, 2), p(1, 1)];
        let classes = classify_points(&pts);
        assert_eq!(
            classes,
            vec![
                HullPosition::Vertex,
                HullPosition::OnEdge,
                HullPosition::Vertex,
                HullPosition::OnEdge,
            ]
        );
    }

    #[test]
    fn single_point() {
        let pts = vec![p(3, 4), p(3, 4)];
        assert_eq!(classify_points(&pts), vec![HullPosition::Vertex, HullPosition::Vertex]);
    }

    #[test]
    fn collinear_points_on_polygon_edges_are_not_vertices() {
        let pts = vec![p(0, 0), p(4, 0), p(2, 0), p(0, 4), p(1, 1)];
        let classes = classify_points(&pts);
        assert_eq!(classes[0], HullPosition::Vertex);
        assert_eq!(classes[1], HullPosition::Vertex);
        assert_eq!(classes[2], HullPosition::OnEdge);
        assert_eq!(classes[3], HullPosition::Vertex);
        assert_eq!(classes[4], HullPosition::Interior);
    }
}
