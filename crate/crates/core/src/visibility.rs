//! Visibility inside a simple polygon.
//!
//! Visibility is closed: a segment that runs along an edge or grazes a
//! reflex vertex still counts, it only fails when it enters the exterior.
//! The test is exact for every kind of [`Site`], so it can be applied to
//! corners of decomposition cells, which are line intersections.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::decomp::{ConvexComponent, ConvexDecomposition};
use crate::error::{Error, Result};
use crate::geom::{dot_sites, orient_sites, same_site, Containment, Point, Polygon, Site};
use crate::util::BitSet;

/// Where a point sits relative to the polygon boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Vertex(usize),
    /// Strictly inside edge `i` (from vertex `i` to vertex `i + 1`).
    Edge(usize),
    Interior,
}

/// A polygon prepared for repeated exact visibility queries.
#[derive(Clone, Debug)]
pub struct Scene<'a> {
    poly: &'a Polygon,
    sites: Vec<Site>,
    reflex: Vec<bool>,
}

impl<'a> Scene<'a> {
    pub fn new(poly: &'a Polygon) -> Self {
        let sites = poly.vertices().iter().map(|&p| Site::free(p)).collect();
        let reflex = (0..poly.len()).map(|i| poly.is_reflex(i)).collect();
        Scene {
            poly,
            sites,
            reflex,
        }
    }

    pub fn polygon(&self) -> &'a Polygon {
        self.poly
    }

    pub fn site(&self, i: usize) -> &Site {
        &self.sites[i]
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i]
    }

    /// Boundary position of a point already known to be in the closed polygon.
    pub fn locus(&self, s: &Site) -> Locus {
        if let Some(p) = s.as_free() {
            if let Some(i) = self.poly.vertices().iter().position(|&v| v == p) {
                return Locus::Vertex(i);
            }
        } else if let Some(i) = self.sites.iter().position(|v| same_site(v, s)) {
            return Locus::Vertex(i);
        }
        let n = self.sites.len();
        for i in 0..n {
            let (a, b) = (&self.sites[i], &self.sites[(i + 1) % n]);
            if orient_sites(a, b, s) == Ordering::Equal && dot_sites(s, a, b) == Ordering::Less {
                return Locus::Edge(i);
            }
        }
        Locus::Interior
    }

    /// Closed cone test: does the ray from vertex `w` towards `t` start
    /// inside the polygon (or along its boundary)?
    pub fn in_cone(&self, w: usize, t: &Site) -> bool {
        let n = self.sites.len();
        let prev = &self.sites[(w + n - 1) % n];
        let next = &self.sites[(w + 1) % n];
        let at = &self.sites[w];
        let left_of_out = orient_sites(at, next, t);
        let left_of_in = orient_sites(prev, at, t);
        if self.reflex[w] {
            !(left_of_out == Ordering::Less && left_of_in == Ordering::Less)
        } else {
            left_of_out != Ordering::Less && left_of_in != Ordering::Less
        }
    }

    fn endpoint_ok(&self, from: Locus, towards: &Site) -> bool {
        match from {
            Locus::Vertex(i) => self.in_cone(i, towards),
            Locus::Edge(i) => {
                let n = self.sites.len();
                orient_sites(&self.sites[i], &self.sites[(i + 1) % n], towards)
                    != Ordering::Less
            }
            Locus::Interior => true,
        }
    }

    /// Exact closed visibility between two points of the closed polygon.
    pub fn sees_located(&self, a: &Site, la: Locus, b: &Site, lb: Locus) -> bool {
        if la == lb && la != Locus::Interior {
            if let Locus::Vertex(_) = la {
                return true;
            }
        }
        if same_site(a, b) {
            return true;
        }
        if !self.endpoint_ok(la, b) || !self.endpoint_ok(lb, a) {
            return false;
        }
        let n = self.sites.len();
        // Nothing outside a box around the segment can block it.
        let bbox = match (a.enclosure(), b.enclosure()) {
            (Some((alo, ahi)), Some((blo, bhi))) => Some((
                Point::new(alo.x.min(blo.x), alo.y.min(blo.y)),
                Point::new(ahi.x.max(bhi.x), ahi.y.max(bhi.y)),
            )),
            _ => None,
        };
        let inside = |p: Point| match bbox {
            Some((lo, hi)) => p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y,
            None => true,
        };
        let edge_near = |p: Point, q: Point| match bbox {
            Some((lo, hi)) => {
                p.x.max(q.x) >= lo.x && p.x.min(q.x) <= hi.x && p.y.max(q.y) >= lo.y && p.y.min(q.y) <= hi.y
            }
            None => true,
        };
        let verts = self.poly.vertices();
        let mut side: Vec<Option<Ordering>> = vec![None; n];
        let mut side_of = |w: usize| *side[w].get_or_insert_with(|| orient_sites(a, b, &self.sites[w]));
        for i in 0..n {
            let j = if i + 1 == n { 0 } else { i + 1 };
            if !edge_near(verts[i], verts[j]) {
                continue;
            }
            let (si, sj) = (side_of(i), side_of(j));
            if si != Ordering::Equal && sj != Ordering::Equal && si != sj {
                let o3 = orient_sites(&self.sites[i], &self.sites[j], a);
                let o4 = orient_sites(&self.sites[i], &self.sites[j], b);
                if o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4 {
                    return false;
                }
            }
        }
        for w in 0..n {
            if !inside(verts[w]) || la == Locus::Vertex(w) || lb == Locus::Vertex(w) {
                continue;
            }
            if side_of(w) != Ordering::Equal {
                continue;
            }
            let v = &self.sites[w];
            if dot_sites(v, a, b) == Ordering::Less && !(self.in_cone(w, a) && self.in_cone(w, b))
            {
                return false;
            }
        }
        true
    }

    pub fn sees_sites(&self, a: &Site, b: &Site) -> bool {
        self.sees_located(a, self.locus(a), b, self.locus(b))
    }

    /// Does vertex `i` see the point `t` (located at `lt`)?
    pub fn vertex_sees(&self, i: usize, t: &Site, lt: Locus) -> bool {
        self.sees_located(&self.sites[i], Locus::Vertex(i), t, lt)
    }

    pub fn vertices_see(&self, i: usize, j: usize) -> bool {
        i == j
            || j == self.poly.next(i)
            || i == self.poly.next(j)
            || self.sees_located(&self.sites[i], Locus::Vertex(i), &self.sites[j], Locus::Vertex(j))
    }
}

/// Visibility between two points of the closed polygon.
pub fn sees(poly: &Polygon, a: Point, b: Point) -> Result<bool> {
    for p in [a, b] {
        if poly.contains(p) == Containment::Exterior {
            return Err(Error::ExteriorPoint(p));
        }
    }
    let scene = Scene::new(poly);
    Ok(scene.sees_sites(&Site::free(a), &Site::free(b)))
}

/// Vertex-to-vertex visibility graph as a dense symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct VisibilityMap {
    n: usize,
    adjacency: Vec<bool>,
    edge_count: usize,
}

impl VisibilityMap {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sees(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.adjacency[i * self.n..(i + 1) * self.n]
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(move |&(j, &v)| v && j != i)
            .map(|(j, _)| j)
    }
}

/// Naive cubic construction; rows are computed in parallel.
pub fn vertex_visibility_matrix(poly: &Polygon) -> VisibilityMap {
    let scene = Scene::new(poly);
    let n = poly.len();
    let upper: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).map(|j| scene.vertices_see(i, j)).collect())
        .collect();
    let mut adjacency = vec![false; n * n];
    let mut edge_count = 0;
    for i in 0..n {
        adjacency[i * n + i] = true;
        for (k, &v) in upper[i].iter().enumerate() {
            let j = i + 1 + k;
            if v {
                adjacency[i * n + j] = true;
                adjacency[j * n + i] = true;
                edge_count += 1;
            }
        }
    }
    VisibilityMap {
        n,
        adjacency,
        edge_count,
    }
}

/// Is every corner of `component` visible from polygon vertex `vertex`?
pub fn component_totally_visible(
    poly: &Polygon,
    vertex: usize,
    component: &ConvexComponent,
) -> bool {
    let scene = Scene::new(poly);
    component
        .corners()
        .iter()
        .all(|c| scene.vertex_sees(vertex, c, scene.locus(c)))
}

/// The per-vertex sets of totally visible components.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentVisibility {
    sets: Vec<BitSet>,
    components: usize,
}

impl ComponentVisibility {
    pub fn from_sets(sets: Vec<BitSet>, components: usize) -> Self {
        ComponentVisibility { sets, components }
    }

    pub fn set(&self, vertex: usize) -> &BitSet {
        &self.sets[vertex]
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn ids(&self, vertex: usize) -> Vec<usize> {
        self.sets[vertex].iter().collect()
    }
}

/// F-sets for every vertex.
///
/// A cell's interior is either wholly visible or wholly hidden from a vertex,
/// so one strictly interior point decides it; cells whose representative
/// point could not be certified interior fall back to testing every corner.
pub fn build_component_visibility(
    poly: &Polygon,
    decomp: &ConvexDecomposition,
) -> Result<ComponentVisibility> {
    let scene = Scene::new(poly);
    let m = decomp.len();
    let corners = decomp.corner_sites();
    let loci = decomp.corner_loci();
    let reps: Vec<Option<Site>> = decomp
        .components()
        .iter()
        .map(|c| c.representative_inside().then(|| Site::free(c.representative_point())))
        .collect();
    let sets: Vec<BitSet> = (0..poly.len())
        .into_par_iter()
        .map(|j| {
            // 0 = unknown, 1 = visible, 2 = hidden
            let mut memo = vec![0u8; corners.len()];
            let mut set = BitSet::new(m);
            for c in decomp.components() {
                let visible = match &reps[c.id()] {
                    Some(rep) => scene.vertex_sees(j, rep, Locus::Interior),
                    None => c.corner_ids().iter().all(|&k| {
                        let k = k as usize;
                        if memo[k] == 0 {
                            memo[k] = if scene.vertex_sees(j, &corners[k], loci[k]) {
                                1
                            } else {
                                2
                            };
                        }
                        memo[k] == 1
                    }),
                };
                if visible {
                    set.insert(c.id());
                }
            }
            set
        })
        .collect();
    let mut seen = BitSet::new(m);
    for s in &sets {
        seen.union_with(s);
    }
    if let Some(orphan) = (0..m).find(|&c| !seen.contains(c)) {
        return Err(Error::RobustnessFailure(format!(
            "component {orphan} is not totally visible from any vertex"
        )));
    }
    Ok(ComponentVisibility::from_sets(sets, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn sees_examples() {
        let sq = fixtures::unit_square();
        assert!(sees(&sq, p(0., 0.), p(1., 1.)).unwrap());
        let l = fixtures::l_shape();
        assert!(!sees(&l, p(2., 1.), p(0., 2.)).unwrap());
        assert!(sees(&l, p(2., 0.), p(0., 2.)).unwrap());
        assert!(sees(&l, p(1.5, 0.5), p(0.5, 1.5)).unwrap());
        assert!(!sees(&l, p(1.9, 0.9), p(0.5, 1.9)).unwrap());
        assert_eq!(sees(&l, p(1.5, 1.5), p(0., 0.)), Err(Error::ExteriorPoint(p(1.5, 1.5))));
    }

    #[test]
    fn sees_along_boundary() {
        let l = fixtures::l_shape();
        // Along edge (2,1)-(1,1), then continuing along the same line into the
        // upper arm's interior.
        assert!(sees(&l, p(2., 1.), p(1., 1.)).unwrap());
        assert!(sees(&l, p(2., 1.), p(0., 1.)).unwrap());
        // Along the bottom edge and beyond the convex corner is outside.
        assert!(sees(&l, p(0., 0.), p(2., 0.)).unwrap());
        // Edge-interior endpoints.
        assert!(sees(&l, p(0.5, 0.), p(0.5, 2.)).unwrap());
        assert!(sees(&l, p(1.5, 0.), p(1.5, 1.)).unwrap());
    }

    #[test]
    fn comb_prongs_are_mutually_hidden() {
        let comb = fixtures::comb(3);
        let tips: Vec<usize> = (0..comb.len()).filter(|&i| comb.vertex(i).y == 4.0).collect();
        assert_eq!(tips.len(), 6);
        let scene = Scene::new(&comb);
        for &a in &tips {
            for &b in &tips {
                let prong = |i: usize| (comb.vertex(i).x / 2.0).floor();
                let same_prong = prong(a) == prong(b);
                assert_eq!(scene.vertices_see(a, b), same_prong, "{a} {b}");
            }
        }
    }

    #[test]
    fn matrix_on_convex_is_complete() {
        let hex = fixtures::regular(6, 2.0);
        let vm = vertex_visibility_matrix(&hex);
        assert_eq!(vm.edge_count(), 15);
        assert!((0..6).all(|i| (0..6).all(|j| vm.sees(i, j))));
    }
}
