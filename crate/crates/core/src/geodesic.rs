//! Triangulation and geodesic shortest-path trees.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{is_simple, orient_points, Point, Polygon};
use crate::visibility::{vertex_visibility_matrix, VisibilityMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    triangles: Vec<[usize; 3]>,
    diagonals: Vec<(usize, usize)>,
}

impl Triangulation {
    /// Counter-clockwise vertex-index triples.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn area(&self, poly: &Polygon) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                let (a, b, c) = (poly.vertex(a), poly.vertex(b), poly.vertex(c));
                0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y))
            })
            .sum()
    }
}

fn in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    orient_points(a, b, p) != Ordering::Less
        && orient_points(b, c, p) != Ordering::Less
        && orient_points(c, a, p) != Ordering::Less
}

/// Ear clipping; at every step the ear whose tip has the lowest vertex index
/// is removed.
pub fn triangulate(poly: &Polygon) -> Result<Triangulation> {
    if !is_simple(poly.vertices()) {
        return Err(Error::InvalidPolygon("triangulation needs a simple polygon".into()));
    }
    let v = |i: usize| poly.vertex(i);
    let mut ring: Vec<usize> = (0..poly.len()).collect();
    let mut triangles = Vec::with_capacity(poly.len() - 2);
    let mut diagonals = Vec::with_capacity(poly.len().saturating_sub(3));
    while ring.len() > 3 {
        let k = ring.len();
        let ear = (0..k).find(|&i| {
            let (a, b, c) = (ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]);
            orient_points(v(a), v(b), v(c)) == Ordering::Greater
                && ring
                    .iter()
                    .all(|&w| w == a || w == b || w == c || !in_closed_triangle(v(w), v(a), v(b), v(c)))
        });
        let Some(i) = ear else {
            return Err(Error::RobustnessFailure("ear clipping found no ear".into()));
        };
        let (a, b, c) = (ring[(i + k - 1) % k], ring[i], ring[(i + 1) % k]);
        triangles.push([a, b, c]);
        diagonals.push((a.min(c), a.max(c)));
        ring.remove(i);
    }
    triangles.push([ring[0], ring[1], ring[2]]);
    Ok(Triangulation {
        triangles,
        diagonals,
    })
}

/// Geodesic shortest-path tree rooted at a polygon vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortestPathTree {
    root: usize,
    parent: Vec<usize>,
    distance: Vec<f64>,
}

impl ShortestPathTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, z: usize) -> usize {
        self.parent[z]
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn distance(&self, z: usize) -> f64 {
        self.distance[z]
    }

    /// Vertices on the tree path from `z` up to the root, `z` first.
    pub fn path_to_root(&self, z: usize) -> Vec<usize> {
        let mut path = vec![z];
        let mut cur = z;
        while cur != self.root {
            cur = self.parent[cur];
            path.push(cur);
        }
        path
    }
}

pub fn parent_on_tree(tree: &ShortestPathTree, z: usize) -> usize {
    tree.parent(z)
}

pub fn shortest_path_tree(poly: &Polygon, root: usize) -> ShortestPathTree {
    let vis = vertex_visibility_matrix(poly);
    shortest_path_tree_in(poly, &vis, root)
}

/// Dijkstra over the visibility graph with Euclidean weights. Path lengths
/// within a relative `1e-12` are ties, resolved towards the lower parent
/// index.
pub fn shortest_path_tree_in(poly: &Polygon, vis: &VisibilityMap, root: usize) -> ShortestPathTree {
    let n = poly.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[root] = 0.0;
    parent[root] = root;
    for _ in 0..n {
        let Some(u) = (0..n)
            .filter(|&i| !done[i] && dist[i].is_finite())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)))
        else {
            break;
        };
        done[u] = true;
        for w in vis.neighbours(u) {
            if done[w] {
                continue;
            }
            let nd = dist[u] + poly.vertex(u).dist(poly.vertex(w));
            let tol = 1e-12 * nd.max(dist[w].min(f64::MAX));
            if nd < dist[w] - tol || ((nd - dist[w]).abs() <= tol && u < parent[w]) {
                dist[w] = nd;
                parent[w] = u;
            }
        }
    }
    ShortestPathTree {
        root,
        parent,
        distance: dist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangulation_counts() {
        let tri = Polygon::new(vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)]).unwrap();
        let t = triangulate(&tri).unwrap();
        assert_eq!((t.triangles().len(), t.diagonals().len()), (1, 0));
        let t = triangulate(&fixtures::unit_square()).unwrap();
        assert_eq!((t.triangles().len(), t.diagonals().len()), (2, 1));
        let l = fixtures::l_shape();
        let t = triangulate(&l).unwrap();
        assert_eq!((t.triangles().len(), t.diagonals().len()), (4, 3));
        assert_eq!(t.area(&l), 3.0);
    }

    #[test]
    fn spt_convex_is_a_star() {
        let hex = fixtures::regular(6, 1.0);
        for root in 0..6 {
            let t = shortest_path_tree(&hex, root);
            assert!((0..6).all(|z| parent_on_tree(&t, z) == root));
        }
    }

    #[test]
    fn spt_l_shape() {
        let l = fixtures::l_shape();
        // Root (2,1) = 2, target (0,2) = 5: sight is blocked, path bends at (1,1).
        let t = shortest_path_tree(&l, 2);
        assert_eq!(t.parent(5), 3);
        let expected = 1.0 + 2f64.sqrt();
        assert!((t.distance(5) - expected).abs() < 1e-12);
        // Root (2,0) = 1, target (0,2) = 5: the direct segment grazes (1,1) and
        // ties with the path bent there; the root has the lower index.
        let t = shortest_path_tree(&l, 1);
        assert_eq!(t.parent(5), 1);
        assert_eq!(t.parent(1), 1);
    }
}
