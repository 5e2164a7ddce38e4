//! Planar primitives and the polygon data model.

mod kernel;
mod polygon;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use kernel::{cmp_coord, dot_sites, orient_points, orient_sites, same_site, Site, SiteKind};
pub use polygon::{
    is_simple, point_in_polygon, polygon_area, reflex_vertices, signed_area, Containment, Polygon,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn lerp(&self, o: Point, t: f64) -> Point {
        Point::new(self.x + t * (o.x - self.x), self.y + t * (o.y - self.y))
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "ccw")]
    CounterClockwise,
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "collinear")]
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

impl From<Ordering> for Orientation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

/// Exact orientation of the triangle `a b c`.
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    orient_points(a, b, c).into()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

/// True iff the segments cross at a single point interior to both.
pub fn segments_properly_intersect(s1: Segment, s2: Segment) -> bool {
    let o1 = orient_points(s1.a, s1.b, s2.a);
    let o2 = orient_points(s1.a, s1.b, s2.b);
    let o3 = orient_points(s2.a, s2.b, s1.a);
    let o4 = orient_points(s2.a, s2.b, s1.b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

/// True iff `p` lies on the closed segment `ab`.
pub fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient_points(a, b, p) == Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: Segment, s2: Segment) -> bool {
    if segments_properly_intersect(s1, s2) {
        return true;
    }
    on_segment(s2.a, s1.a, s1.b)
        || on_segment(s2.b, s1.a, s1.b)
        || on_segment(s1.a, s2.a, s2.b)
        || on_segment(s1.b, s2.a, s2.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(p(0., 0.), p(1., 0.), p(0., 1.)), Orientation::CounterClockwise);
        assert_eq!(orient(p(0., 0.), p(1., 1.), p(2., 2.)), Orientation::Collinear);
        assert_eq!(orient(p(0., 0.), p(0., 1.), p(1., 0.)), Orientation::Clockwise);
    }

    #[test]
    fn orient_is_exact_near_degeneracy() {
        // Classic failure case for naive evaluation: points nearly on y = x.
        let a = p(0.5, 0.5);
        let b = p(12.0, 12.0);
        let c = p(24.0, 24.0);
        assert_eq!(orient(a, b, c), Orientation::Collinear);
        let c2 = p(24.0, 24.000000000000004);
        assert_eq!(orient(a, b, c2), Orientation::CounterClockwise);
        let c3 = p(24.000000000000004, 24.0);
        assert_eq!(orient(a, b, c3), Orientation::Clockwise);
        // Non-representable tiny offsets still resolve consistently.
        let x = 0.1 + 0.2;
        assert_eq!(orient(p(0.1, 0.1), p(0.2, 0.2), p(x, x)), Orientation::Collinear);
    }

    #[test]
    fn proper_intersection_examples() {
        let s = |a: (f64, f64), b: (f64, f64)| Segment::new(a.into(), b.into());
        assert!(segments_properly_intersect(s((0., 0.), (2., 2.)), s((0., 2.), (2., 0.))));
        assert!(!segments_properly_intersect(s((0., 0.), (1., 0.)), s((1., 0.), (2., 0.))));
        assert!(!segments_properly_intersect(s((0., 0.), (1., 0.)), s((0., 1.), (1., 1.))));
        assert!(segments_intersect(s((0., 0.), (1., 0.)), s((1., 0.), (2., 0.))));
    }

    #[test]
    fn derived_point_predicates() {
        // Diagonals of the unit square meet at (0.5, 0.5).
        let c = Site::cross(p(0., 0.), p(1., 1.), p(1., 0.), p(0., 1.));
        let mid = Site::free(p(0.5, 0.5));
        assert!(same_site(&c, &mid));
        let a = Site::free(p(0., 0.5));
        let b = Site::free(p(1., 0.5));
        assert_eq!(orient_sites(&a, &b, &c), Ordering::Equal);
        let along = Site::along(p(0., 0.), p(1., 1.), 0.5);
        assert!(same_site(&along, &c));
        // 1/3 is not representable; the crossing of y = x with x + 2y = 1
        // is (1/3, 1/3) and must still be exactly on y = x.
        let third = Site::cross(p(0., 0.), p(1., 1.), p(1., 0.), p(-1., 1.));
        let diag_a = Site::free(p(-3., -3.));
        let diag_b = Site::free(p(7., 7.));
        assert_eq!(orient_sites(&diag_a, &diag_b, &third), Ordering::Equal);
        let off = Site::free(p(1.0 / 3.0, 1.0 / 3.0));
        assert!(!same_site(&third, &off));
    }
}
