use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{on_segment, orient_points, segments_intersect, Orientation, Point, Segment};
use crate::error::{Error, Result};

/// A simple polygon stored as a counter-clockwise vertex ring.
///
/// Construction validates the ring and, when it is given clockwise, reverses
/// it in place while keeping the first vertex at index 0. The orientation of
/// the input is kept for reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point>,
    input_orientation: Orientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Exterior,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point>) -> Result<Polygon> {
        if let Some(reason) = ring_defect(&vertices) {
            return Err(Error::InvalidPolygon(reason));
        }
        // The lowest-leftmost vertex is always convex, so the exact turn
        // there gives the orientation even when the area underflows.
        let k = (0..vertices.len())
            .min_by(|&a, &b| {
                let (p, q) = (vertices[a], vertices[b]);
                p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
            })
            .expect("at least three vertices");
        let n = vertices.len();
        let turn = orient_points(vertices[(k + n - 1) % n], vertices[k], vertices[(k + 1) % n]);
        let input_orientation = if turn == Ordering::Greater {
            Orientation::CounterClockwise
        } else {
            vertices[1..].reverse();
            Orientation::Clockwise
        };
        Ok(Polygon {
            vertices,
            input_orientation,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.vertices.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.vertices.len() - 1) % self.vertices.len()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[self.next(i)])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Orientation of the ring as it was supplied; the stored ring is always
    /// counter-clockwise.
    pub fn input_orientation(&self) -> Orientation {
        self.input_orientation
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        orient_points(
            self.vertices[self.prev(i)],
            self.vertices[i],
            self.vertices[self.next(i)],
        ) == Ordering::Less
    }

    pub fn area(&self) -> f64 {
        polygon_area(self)
    }

    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub fn contains(&self, p: Point) -> Containment {
        point_in_polygon(p, self)
    }
}

/// Twice-halved shoelace sum; positive for counter-clockwise rings.
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let o = ring[0];
    let mut sum = 0.0;
    for i in 1..n.saturating_sub(1) {
        let a = ring[i];
        let b = ring[i + 1];
        sum += (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
    }
    sum * 0.5
}

pub fn polygon_area(poly: &Polygon) -> f64 {
    signed_area(poly.vertices()).abs()
}

/// Indices of vertices whose interior angle exceeds pi.
pub fn reflex_vertices(poly: &Polygon) -> Vec<usize> {
    (0..poly.len()).filter(|&i| poly.is_reflex(i)).collect()
}

/// True iff the ring is a valid simple polygon: at least three finite,
/// pairwise distinct vertices, no three consecutive vertices collinear and
/// no two edges meeting except adjacent edges at their shared vertex.
pub fn is_simple(ring: &[Point]) -> bool {
    ring_defect(ring).is_none()
}

fn ring_defect(ring: &[Point]) -> Option<String> {
    let n = ring.len();
    if n < 3 {
        return Some(format!("need at least 3 vertices, got {n}"));
    }
    if let Some(i) = ring.iter().position(|p| !p.is_finite()) {
        return Some(format!("vertex {i} is not finite"));
    }
    let mut sorted: Vec<(usize, Point)> = ring.iter().copied().enumerate().collect();
    sorted.sort_by(|a, b| a.1.x.total_cmp(&b.1.x).then(a.1.y.total_cmp(&b.1.y)));
    for w in sorted.windows(2) {
        if w[0].1 == w[1].1 {
            return Some(format!("vertices {} and {} coincide", w[0].0, w[1].0));
        }
    }
    for i in 0..n {
        let (a, b, c) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
        if orient_points(a, b, c) == Ordering::Equal {
            return Some(format!("vertex {i} is collinear with its neighbours"));
        }
    }
    let edge = |i: usize| Segment::new(ring[i], ring[(i + 1) % n]);
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(edge(i), edge(j)) {
                return Some(format!("edges {i} and {j} intersect"));
            }
        }
    }
    None
}

/// Exact classification of `p` against the closed polygon.
pub fn point_in_polygon(p: Point, poly: &Polygon) -> Containment {
    let vs = poly.vertices();
    let n = vs.len();
    let mut inside = false;
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        if on_segment(p, a, b) {
            return Containment::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let o = orient_points(a, b, p);
            let crosses_right = if b.y > a.y {
                o == Ordering::Greater
            } else {
                o == Ordering::Less
            };
            if crosses_right {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Interior
    } else {
        Containment::Exterior
    }
}
