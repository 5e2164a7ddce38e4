//! Convex decomposition induced by the lines through all vertex pairs.
//!
//! The polygon is triangulated and every triangle is then cut, cell by cell,
//! by each cutting line that crosses its interior. Cells carry the list of
//! lines still crossing them, so a line is only ever tested against cells it
//! might split. Cell corners are exact line intersections ([`Site`]), which
//! keeps the result a true partition with no slivers created by rounding.
//!
//! Every cell is either entirely visible or entirely hidden from each
//! polygon vertex, which is what makes the cells usable as a set-cover
//! universe for guarding the whole polygon.
//!
//! [`CutRule::Windows`] keeps that property with far fewer cells: inside the
//! polygon, the boundary of a vertex's visibility region only runs along rays
//! that start at a visible reflex vertex and point away from the viewer, so a
//! cell only needs cutting where such a ray can pass through it.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::triangulate;
use crate::geom::{dot_sites, orient_sites, signed_area, Point, Polygon, Site};
use crate::visibility::{Locus, Scene};

pub const DEFAULT_CELL_CAP: usize = 2_000_000;

/// Largest polygon for which [`auto_cut_rule`] still picks all-pairs lines.
pub const ALL_PAIRS_MAX_N: usize = 40;

/// All-pairs lines up to [`ALL_PAIRS_MAX_N`] vertices, windows beyond.
pub fn auto_cut_rule(n: usize) -> CutRule {
    if n <= ALL_PAIRS_MAX_N {
        CutRule::AllPairs
    } else {
        CutRule::Windows
    }
}

/// The line through polygon vertices `p` and `q` (`p < q`, both the lowest
/// indices among vertices on the line).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    pub p: usize,
    pub q: usize,
}

impl Line {
    /// Normalised `(a, b, c)` with `a x + b y + c = 0`, `a^2 + b^2 = 1` and
    /// the first non-zero of `a, b` positive.
    pub fn coefficients(&self, poly: &Polygon) -> (f64, f64, f64) {
        let (s, t) = (poly.vertex(self.p), poly.vertex(self.q));
        let (mut a, mut b) = (t.y - s.y, s.x - t.x);
        let len = a.hypot(b);
        a /= len;
        b /= len;
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
        }
        (a, b, -(a * s.x + b * s.y))
    }
}

/// Distinct lines through pairs of vertices, sorted by normalised
/// coefficients. Collinear vertex triples contribute a single line.
pub fn cutting_lines(poly: &Polygon) -> Vec<Line> {
    let n = poly.len();
    let mut covered = vec![false; n * n];
    let mut lines = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if covered[p * n + q] {
                continue;
            }
            let on: Vec<usize> = (0..n)
                .filter(|&k| {
                    k == p
                        || k == q
                        || crate::geom::orient_points(poly.vertex(p), poly.vertex(q), poly.vertex(k))
                            == Ordering::Equal
                })
                .collect();
            for &a in &on {
                for &b in &on {
                    covered[a * n + b] = true;
                }
            }
            lines.push(Line { p, q });
        }
    }
    lines.sort_by(|l, m| {
        let (a, b, c) = l.coefficients(poly);
        let (d, e, f) = m.coefficients(poly);
        a.total_cmp(&d)
            .then(b.total_cmp(&e))
            .then(c.total_cmp(&f))
            .then((l.p, l.q).cmp(&(m.p, m.q)))
    });
    lines
}

/// One cell of the decomposition.
#[derive(Clone, Debug)]
pub struct ConvexComponent {
    id: usize,
    corner_ids: Vec<u32>,
    corners: Vec<Site>,
    representative: Point,
    representative_inside: bool,
    area: f64,
}

impl ConvexComponent {
    pub fn id(&self) -> usize {
        self.id
    }

    /// Exact corners, counter-clockwise.
    pub fn corners(&self) -> &[Site] {
        &self.corners
    }

    pub fn corner_ids(&self) -> &[u32] {
        &self.corner_ids
    }

    /// Floating-point image of the boundary.
    pub fn outline(&self) -> Vec<Point> {
        self.corners.iter().map(Site::approx).collect()
    }

    /// Average of the corners; interior for any non-degenerate cell.
    pub fn representative_point(&self) -> Point {
        self.representative
    }

    /// Whether the representative point was checked to lie strictly inside
    /// (rounding can push it out of very thin cells).
    pub fn representative_inside(&self) -> bool {
        self.representative_inside
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Closed containment test for a plain point.
    pub fn contains(&self, p: Point) -> bool {
        let s = Site::free(p);
        let k = self.corners.len();
        (0..k).all(|i| {
            orient_sites(&self.corners[i], &self.corners[(i + 1) % k], &s) != Ordering::Less
        })
    }

    pub fn is_convex(&self) -> bool {
        let k = self.corners.len();
        k >= 3
            && (0..k).all(|i| {
                orient_sites(
                    &self.corners[i],
                    &self.corners[(i + 1) % k],
                    &self.corners[(i + 2) % k],
                ) == Ordering::Greater
            })
    }
}

/// Partition of a polygon into convex cells.
#[derive(Clone, Debug)]
pub struct ConvexDecomposition {
    components: Vec<ConvexComponent>,
    corners: Vec<Site>,
    loci: Vec<Locus>,
    area: f64,
    lines: usize,
    cuts: usize,
    cut_rule: CutRule,
}

impl ConvexDecomposition {
    pub fn components(&self) -> &[ConvexComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, id: usize) -> &ConvexComponent {
        &self.components[id]
    }

    /// All distinct cell corners; cells refer to them by index.
    pub fn corner_sites(&self) -> &[Site] {
        &self.corners
    }

    pub fn corner_loci(&self) -> &[Locus] {
        &self.loci
    }

    pub fn line_count(&self) -> usize {
        self.lines
    }

    pub fn cut_count(&self) -> usize {
        self.cuts
    }

    pub fn cut_rule(&self) -> CutRule {
        self.cut_rule
    }

    /// Area of the source polygon.
    pub fn source_area(&self) -> f64 {
        self.area
    }

    pub fn total_area(&self) -> f64 {
        self.components.iter().map(|c| c.area).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub cell_cap: usize,
    pub cut_rule: CutRule,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            cell_cap: DEFAULT_CELL_CAP,
            cut_rule: CutRule::AllPairs,
        }
    }
}

impl DecomposeOptions {
    pub fn with_cap(cell_cap: usize) -> Self {
        DecomposeOptions {
            cell_cap,
            ..Self::default()
        }
    }
}

/// Which cuts split the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutRule {
    /// Whole lines through every pair of vertices.
    AllPairs,
    /// Only where a ray from a vertex through a visible reflex vertex
    /// continues past it into the polygon.
    Windows,
}

pub fn decompose(poly: &Polygon) -> Result<ConvexDecomposition> {
    decompose_with(poly, DecomposeOptions::default())
}

struct Cell {
    corners: Vec<u32>,
    // edge k runs from corners[k] to corners[k + 1] and lies on this line
    edge_lines: Vec<u32>,
}

// A line cut, optionally limited to the cells reaching past `ray.1` on the
// side away from `ray.0`.
#[derive(Clone, Copy)]
struct Cut {
    line: u32,
    ray: Option<(u32, u32)>,
}

struct Builder<'a> {
    poly: &'a Polygon,
    sites: Vec<Site>,
    cuts: Vec<Cut>,
    lines: Vec<Line>,
    corners: Vec<Site>,
    crossings: HashMap<(u32, u32), u32>,
}

impl Builder<'_> {
    fn side(&self, line: u32, corner: u32) -> Ordering {
        let l = self.lines[line as usize];
        orient_sites(&self.sites[l.p], &self.sites[l.q], &self.corners[corner as usize])
    }

    fn cut_hits(&self, cut: u32, cell: &Cell) -> bool {
        let c = self.cuts[cut as usize];
        if let Some((from, at)) = c.ray {
            let (from, at) = (&self.sites[from as usize], &self.sites[at as usize]);
            let beyond = cell
                .corners
                .iter()
                .any(|&k| dot_sites(at, from, &self.corners[k as usize]) == Ordering::Less);
            if !beyond {
                return false;
            }
        }
        self.crosses(c.line, cell)
    }

    fn crosses(&self, line: u32, cell: &Cell) -> bool {
        let mut pos = false;
        let mut neg = false;
        for &c in &cell.corners {
            match self.side(line, c) {
                Ordering::Greater => pos = true,
                Ordering::Less => neg = true,
                Ordering::Equal => {}
            }
            if pos && neg {
                return true;
            }
        }
        false
    }

    fn crossing(&mut self, a: u32, b: u32) -> u32 {
        let key = (a.min(b), a.max(b));
        if let Some(&id) = self.crossings.get(&key) {
            return id;
        }
        let (l, m) = (self.lines[a as usize], self.lines[b as usize]);
        let v = |i| self.poly.vertex(i);
        let site = Site::cross(v(l.p), v(l.q), v(m.p), v(m.q));
        let id = self.corners.len() as u32;
        self.corners.push(site);
        self.crossings.insert(key, id);
        id
    }

    fn split(&mut self, cell: &Cell, line: u32) -> (Cell, Cell) {
        let k = cell.corners.len();
        let sides: Vec<Ordering> = cell.corners.iter().map(|&c| self.side(line, c)).collect();
        // (corner, on the cut line, original edge index it starts or lies on)
        let mut left: Vec<(u32, bool, usize)> = Vec::with_capacity(k + 1);
        let mut right: Vec<(u32, bool, usize)> = Vec::with_capacity(k + 1);
        for i in 0..k {
            let j = (i + 1) % k;
            let c = cell.corners[i];
            let on = sides[i] == Ordering::Equal;
            if sides[i] != Ordering::Less {
                left.push((c, on, i));
            }
            if sides[i] != Ordering::Greater {
                right.push((c, on, i));
            }
            if sides[i] != Ordering::Equal
                && sides[j] != Ordering::Equal
                && sides[i] != sides[j]
            {
                let x = self.crossing(line, cell.edge_lines[i]);
                left.push((x, true, i));
                right.push((x, true, i));
            }
        }
        let finish = |ring: Vec<(u32, bool, usize)>| {
            let m = ring.len();
            let edge_lines = (0..m)
                .map(|a| {
                    let b = (a + 1) % m;
                    if ring[a].1 && ring[b].1 {
                        line
                    } else {
                        cell.edge_lines[ring[a].2]
                    }
                })
                .collect();
            Cell {
                corners: ring.iter().map(|r| r.0).collect(),
                edge_lines,
            }
        };
        (finish(left), finish(right))
    }
}

pub fn decompose_with(poly: &Polygon, opts: DecomposeOptions) -> Result<ConvexDecomposition> {
    let n = poly.len();
    let lines = cutting_lines(poly);
    let mut line_of_pair = HashMap::new();
    for (id, l) in lines.iter().enumerate() {
        let on: Vec<usize> = (0..n)
            .filter(|&k| {
                k == l.p
                    || k == l.q
                    || crate::geom::orient_points(poly.vertex(l.p), poly.vertex(l.q), poly.vertex(k))
                        == Ordering::Equal
            })
            .collect();
        for &a in &on {
            for &b in &on {
                if a < b {
                    line_of_pair.insert((a, b), id as u32);
                }
            }
        }
    }
    let pair = |a: usize, b: usize| line_of_pair[&(a.min(b), a.max(b))];

    let sites: Vec<Site> = poly.vertices().iter().map(|&p| Site::free(p)).collect();
    let cuts: Vec<Cut> = match opts.cut_rule {
        CutRule::AllPairs => (0..lines.len() as u32).map(|line| Cut { line, ray: None }).collect(),
        CutRule::Windows => {
            let scene = Scene::new(poly);
            let mut cuts = Vec::new();
            for r in (0..n).filter(|&r| scene.is_reflex(r)) {
                for j in (0..n).filter(|&j| j != r && scene.vertices_see(j, r)) {
                    let beyond = Site::along(poly.vertex(j), poly.vertex(r), 2.0);
                    if scene.in_cone(r, &beyond) {
                        cuts.push(Cut {
                            line: pair(j, r),
                            ray: Some((j as u32, r as u32)),
                        });
                    }
                }
            }
            cuts.sort_by_key(|c| (c.line, c.ray));
            cuts
        }
    };
    let mut builder = Builder {
        poly,
        sites,
        cuts,
        lines,
        corners: poly.vertices().iter().map(|&p| Site::free(p)).collect(),
        crossings: HashMap::new(),
    };
    let tri = triangulate(poly)?;
    let all_cuts: Vec<u32> = (0..builder.cuts.len() as u32).collect();
    let mut done: Vec<Cell> = Vec::new();
    let mut stack: Vec<(Cell, Vec<u32>)> = Vec::new();
    for t in tri.triangles().iter().rev() {
        let [a, b, c] = *t;
        let cell = Cell {
            corners: vec![a as u32, b as u32, c as u32],
            edge_lines: vec![pair(a, b), pair(b, c), pair(c, a)],
        };
        let conflicts: Vec<u32> = all_cuts
            .iter()
            .copied()
            .filter(|&c| builder.cut_hits(c, &cell))
            .collect();
        stack.push((cell, conflicts));
    }
    while let Some((cell, conflicts)) = stack.pop() {
        if done.len() + stack.len() + 1 > opts.cell_cap {
            return Err(Error::DecompositionOverflow {
                cells: done.len() + stack.len() + 1,
                cap: opts.cell_cap,
            });
        }
        let Some((&cut, rest)) = conflicts.split_first() else {
            done.push(cell);
            continue;
        };
        let (left, right) = builder.split(&cell, builder.cuts[cut as usize].line);
        let left_conf: Vec<u32> = rest.iter().copied().filter(|&c| builder.cut_hits(c, &left)).collect();
        let right_conf: Vec<u32> =
            rest.iter().copied().filter(|&c| builder.cut_hits(c, &right)).collect();
        stack.push((right, right_conf));
        stack.push((left, left_conf));
    }

    let scene = Scene::new(poly);
    let loci: Vec<Locus> = builder
        .corners
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if i < n {
                Locus::Vertex(i)
            } else {
                scene.locus(s)
            }
        })
        .collect();

    let mut components: Vec<ConvexComponent> = done
        .into_iter()
        .map(|cell| {
            let corners: Vec<Site> = cell
                .corners
                .iter()
                .map(|&c| builder.corners[c as usize])
                .collect();
            let outline: Vec<Point> = corners.iter().map(Site::approx).collect();
            let k = outline.len() as f64;
            let representative = Point::new(
                outline.iter().map(|p| p.x).sum::<f64>() / k,
                outline.iter().map(|p| p.y).sum::<f64>() / k,
            );
            let rep = Site::free(representative);
            let k = corners.len();
            let representative_inside = (0..k)
                .all(|i| orient_sites(&corners[i], &corners[(i + 1) % k], &rep) == Ordering::Greater);
            ConvexComponent {
                id: 0,
                corner_ids: cell.corners,
                corners,
                representative,
                representative_inside,
                area: signed_area(&outline).abs(),
            }
        })
        .collect();
    components.sort_by(|a, b| {
        a.representative
            .x
            .total_cmp(&b.representative.x)
            .then(a.representative.y.total_cmp(&b.representative.y))
            .then_with(|| a.corner_ids.cmp(&b.corner_ids))
    });
    for (id, c) in components.iter_mut().enumerate() {
        c.id = id;
    }

    let decomp = ConvexDecomposition {
        components,
        corners: builder.corners,
        loci,
        area: poly.area(),
        lines: builder.lines.len(),
        cuts: builder.cuts.len(),
        cut_rule: opts.cut_rule,
    };
    if let Some(bad) = decomp.components.iter().find(|c| !c.is_convex()) {
        return Err(Error::RobustnessFailure(format!(
            "component {} is not strictly convex",
            bad.id
        )));
    }
    let rel = (decomp.total_area() - decomp.area).abs() / decomp.area;
    if rel > 1e-6 {
        return Err(Error::RobustnessFailure(format!(
            "cell areas sum to {} but polygon area is {}",
            decomp.total_area(),
            decomp.area
        )));
    }
    Ok(decomp)
}

/// Component whose closure contains `p`, lowest id on shared boundaries.
pub fn locate(decomp: &ConvexDecomposition, p: Point) -> Option<usize> {
    decomp
        .components
        .iter()
        .find(|c| c.contains(p))
        .map(|c| c.id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn line_counts() {
        let tri = Polygon::new(vec![
            Point::new(0., 0.),
            Point::new(3., 0.),
            Point::new(1., 2.),
        ])
        .unwrap();
        assert_eq!(cutting_lines(&tri).len(), 3);
        assert_eq!(cutting_lines(&fixtures::unit_square()).len(), 6);
        assert_eq!(cutting_lines(&fixtures::regular(5, 1.0)).len(), 10);
        // L-shape: 15 pairs, collinear triples (0,1,2)? no; (0,5,4)? no;
        // (2,3,?) y = 1 holds only 2 and 3; the diagonal y = x holds 0 and 3.
        let l = fixtures::l_shape();
        let lines = cutting_lines(&l);
        assert!(lines.len() <= 15);
    }

    #[test]
    fn small_decompositions() {
        let tri = Polygon::new(vec![
            Point::new(0., 0.),
            Point::new(3., 0.),
            Point::new(1., 2.),
        ])
        .unwrap();
        assert_eq!(decompose(&tri).unwrap().len(), 1);
        let sq = decompose(&fixtures::unit_square()).unwrap();
        assert_eq!(sq.len(), 4);
        assert!((sq.total_area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn locate_in_square() {
        let sq = decompose(&fixtures::unit_square()).unwrap();
        let bottom = locate(&sq, Point::new(0.5, 0.25)).unwrap();
        let c = sq.component(bottom);
        assert!(c.contains(Point::new(0.5, 0.1)));
        assert!(!c.contains(Point::new(0.5, 0.9)));
        assert_eq!(locate(&sq, Point::new(0.5, 0.5)), Some(0));
        assert_eq!(locate(&sq, Point::new(5., 5.)), None);
    }

    #[test]
    fn cell_cap_is_enforced() {
        let poly = fixtures::regular(12, 1.0);
        let err = decompose_with(&poly, DecomposeOptions::with_cap(10)).unwrap_err();
        assert!(matches!(err, Error::DecompositionOverflow { cap: 10, .. }));
    }
}
