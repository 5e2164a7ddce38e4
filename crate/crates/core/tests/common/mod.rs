//! Property checks shared by the acceptance binary and the property tests.

#![allow(dead_code)]

use vguard::decomp::decompose;
use vguard::fixtures;
use vguard::geodesic::shortest_path_tree;
use vguard::guards::solve_ghosh;
use vguard::io::{emit_polygon, parse_polygon, PolygonFile};
use vguard::polygen::interior_samples;
use vguard::visibility::{sees, vertex_visibility_matrix};
use vguard::Polygon;

pub fn fixture_polygons() -> Vec<Polygon> {
    let mut v = vec![fixtures::unit_square(), fixtures::l_shape()];
    v.extend((3..=8).map(|n| fixtures::regular(n, 3.0)));
    v.extend((1..=4).map(fixtures::comb));
    v
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Cell areas add up to the polygon area.
pub fn area_conserved(poly: &Polygon) -> bool {
    let d = decompose(poly).expect("decomposition");
    let cells: f64 = d.components().iter().map(|c| c.area()).sum();
    (cells - poly.area()).abs() <= 1e-6 * poly.area()
}

/// Cells are convex, and random interior points fall in exactly one cell.
pub fn partition_holds(poly: &Polygon, seed: u64) -> bool {
    let d = decompose(poly).expect("decomposition");
    d.components().iter().all(|c| c.is_convex())
        && interior_samples(poly, 200, seed)
            .into_iter()
            .all(|p| d.components().iter().filter(|c| c.contains(p)).count() == 1)
}

/// Tree distances equal Floyd-Warshall distances over the visibility graph
/// built from point queries, and every parent is a valid predecessor.
pub fn spt_matches_dijkstra(poly: &Polygon) -> bool {
    let n = poly.len();
    let pts = poly.vertices();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    let mut visible = vec![vec![false; n]; n];
    for i in 0..n {
        dist[i][i] = 0.0;
        for j in 0..n {
            if i != j && sees(poly, pts[i], pts[j]).expect("query") {
                visible[i][j] = true;
                dist[i][j] = pts[i].dist(pts[j]);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    (0..n).all(|root| {
        let t = shortest_path_tree(poly, root);
        (0..n).all(|z| {
            let p = t.parent(z);
            close(t.distance(z), dist[root][z], 1e-9)
                && (z == root
                    || (visible[p][z] && close(dist[root][p] + pts[p].dist(pts[z]), dist[root][z], 1e-9)))
        })
    })
}

pub fn visibility_symmetric(poly: &Polygon) -> bool {
    let vis = vertex_visibility_matrix(poly);
    let n = poly.len();
    (0..n).all(|i| (0..n).all(|j| vis.sees(i, j) == vis.sees(j, i)))
}

pub fn greedy_deterministic(poly: &Polygon) -> bool {
    let a = solve_ghosh(poly).expect("ghosh");
    let b = solve_ghosh(poly).expect("ghosh");
    a.guards == b.guards && a.covered_components == b.covered_components && a.trace == b.trace
}

pub fn round_trips(poly: &Polygon) -> bool {
    let mut file = PolygonFile::new(poly.clone());
    file.edge = Some((0, 1));
    file.seed = Some(7);
    let text = emit_polygon(&file);
    parse_polygon(&text).is_ok_and(|f| f == file && emit_polygon(&f) == text)
}
