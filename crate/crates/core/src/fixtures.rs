//! Hand-built polygons used throughout tests, examples and the CLI.

use crate::geom::{Point, Polygon};

fn build(coords: &[(f64, f64)]) -> Polygon {
    Polygon::new(coords.iter().map(|&c| c.into()).collect()).expect("fixture is simple")
}

pub fn unit_square() -> Polygon {
    build(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
}

/// 2x2 square with the top-right unit square removed; reflex vertex (1, 1)
/// has index 3.
pub fn l_shape() -> Polygon {
    build(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])
}

/// Regular `n`-gon centred at the origin.
pub fn regular(n: usize, radius: f64) -> Polygon {
    let pts = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new(radius * a.cos(), radius * a.sin())
        })
        .collect();
    Polygon::new(pts).expect("regular polygon is simple")
}

/// Orthogonal comb with `k` unit-wide prongs of height 3 on a base of height
/// 1; `4k` vertices and `2(k - 1)` reflex vertices. Prong tips are pairwise
/// invisible, so exactly `k` vertex guards are needed.
pub fn comb(k: usize) -> Polygon {
    assert!(k >= 1);
    let w = (2 * k - 1) as f64;
    let mut pts = vec![Point::new(0., 0.), Point::new(w, 0.)];
    for i in (0..k).rev() {
        let left = (2 * i) as f64;
        pts.push(Point::new(left + 1., 4.));
        pts.push(Point::new(left, 4.));
        if i > 0 {
            pts.push(Point::new(left, 1.));
            pts.push(Point::new(left - 1., 1.));
        }
    }
    Polygon::new(pts).expect("comb is simple")
}
