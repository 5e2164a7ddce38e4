//! Seeded random polygon generators and their validators.
//!
//! `gen_weakvis` hangs a zig-zag chain below the segment `qp`: spokes are
//! dropped from sorted points of `qp` at sorted angles, and consecutive spoke
//! ends are joined through a point inside the quadrilateral they span.
//! `gen_simple` dents a random convex polygon: each dent point inside a fan
//! triangle replaces that triangle's hull edge with a concave chain, adding
//! exactly one reflex vertex per point.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{auto_cut_rule, decompose_with, DecomposeOptions};
use crate::error::{Error, Result};
use crate::geom::{
    orient_points, point_in_polygon, reflex_vertices, segments_intersect, Containment, Point,
    Polygon, Segment, Site,
};
use crate::guards::WeakVisInstance;
use crate::visibility::{Locus, Scene};

pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Spoke count for weak-visibility polygons, vertex count of the convex
    /// hull for simple polygons.
    pub n: usize,
    /// Half-length of the base segment `qp`.
    pub k: f64,
    /// Requested reflex count (simple polygons only).
    pub r_target: usize,
    pub radius_range: (f64, f64),
    pub weight_range: (f64, f64),
    /// Spoke angles are drawn from `(margin, pi - margin)`.
    pub angle_margin: f64,
    /// Maximum dent points chained inside one fan triangle.
    pub dents_per_triangle: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            n: 10,
            k: 100.0,
            r_target: 0,
            radius_range: (20.0, 120.0),
            weight_range: (0.5, 2.0),
            angle_margin: 0.05,
            dents_per_triangle: 3,
        }
    }
}

impl GenConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_reflex(mut self, r: usize) -> Self {
        self.r_target = r;
        self
    }

    fn check(&self, min_n: usize) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n < min_n {
            return bad(&format!("n must be at least {min_n}"));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return bad("k must be positive");
        }
        let (r0, r1) = self.radius_range;
        if !(r0 > 0.0 && r1 >= r0 && r1.is_finite()) {
            return bad("radius range must be positive and ordered");
        }
        let (w0, w1) = self.weight_range;
        if !(w0 > 0.0 && w1 >= w0 && w1.is_finite()) {
            return bad("weight range must be positive and ordered");
        }
        if !(self.angle_margin > 0.0 && self.angle_margin < PI / 2.0) {
            return bad("angle margin must lie in (0, pi/2)");
        }
        Ok(())
    }
}

fn attempt_rng(seed: u64, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn sample(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.gen_range(lo..hi)
    } else {
        lo
    }
}

fn strictly_convex_ccw(ring: &[Point]) -> bool {
    let k = ring.len();
    (0..k).all(|i| orient_points(ring[i], ring[(i + 1) % k], ring[(i + 2) % k]) == Ordering::Greater)
}

/// Polygon weakly visible from its closing edge, with `2n + 1` vertices
/// `q y1 z1 ... y(n-1) z(n-1) yn p`. The instance edge is `(p, q)`.
pub fn gen_weakvis(cfg: &GenConfig) -> Result<WeakVisInstance> {
    cfg.check(1)?;
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(cfg.seed, attempt);
        match weakvis_draw(cfg, &mut rng) {
            Ok(ring) => {
                let poly = match Polygon::new(ring) {
                    Ok(p) => p,
                    Err(e) => {
                        last = e.to_string();
                        continue;
                    }
                };
                let (u, v) = (poly.len() - 1, 0);
                let report = validate_weakvis(&poly, (u, v));
                if report.pass {
                    return WeakVisInstance::new_unchecked(poly, u, v);
                }
                last = report.describe();
            }
            Err(reason) => last = reason,
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: last,
    })
}

fn weakvis_draw(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> std::result::Result<Vec<Point>, String> {
    let n = cfg.n;
    let k = cfg.k;
    let p = Point::new(k, 0.0);
    let q = Point::new(-k, 0.0);
    // |p x_i| decreasing means x coordinates increasing.
    let mut xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-k..k)).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) || xs[0] == -k {
        return Err("repeated base point".into());
    }
    let eps = cfg.angle_margin;
    let mut alphas: Vec<f64> = (0..n).map(|_| rng.gen_range(eps..PI - eps)).collect();
    alphas.sort_by(|a, b| b.total_cmp(a));
    let mut radii: Vec<f64> = (0..n).map(|_| sample(rng, cfg.radius_range)).collect();
    let weights: Vec<[f64; 4]> = (0..n.saturating_sub(1))
        .map(|_| std::array::from_fn(|_| sample(rng, cfg.weight_range)))
        .collect();

    let base: Vec<Point> = xs.iter().map(|&x| Point::new(x, 0.0)).collect();
    let spoke = |i: usize, r: f64| Point::new(base[i].x - r * alphas[i].cos(), -r * alphas[i].sin());
    let ring_of = |ys: &[Point]| {
        let mut ring = Vec::with_capacity(2 * n + 1);
        ring.push(q);
        for i in 0..n {
            ring.push(ys[i]);
            if i + 1 < n {
                let w = weights[i];
                let total: f64 = w.iter().sum();
                let pts = [base[i], ys[i], ys[i + 1], base[i + 1]];
                ring.push(Point::new(
                    pts.iter().zip(&w).map(|(p, w)| p.x * w).sum::<f64>() / total,
                    pts.iter().zip(&w).map(|(p, w)| p.y * w).sum::<f64>() / total,
                ));
            }
        }
        ring.push(p);
        ring
    };
    let mut ys: Vec<Point> = (0..n).map(|i| spoke(i, radii[i])).collect();

    // Couple the radii: shrink the longer spoke of every non-convex
    // quadrilateral x_i y_i y_(i+1) x_(i+1), then the longest spoke next to
    // any pair of crossing ring edges, until neither happens. Short enough
    // spokes always satisfy both.
    let mut settled = false;
    for _ in 0..2000 {
        let mut shrink: Option<usize> = None;
        for i in 0..n.saturating_sub(1) {
            if !strictly_convex_ccw(&[base[i], ys[i], ys[i + 1], base[i + 1]]) {
                shrink = Some(if radii[i] >= radii[i + 1] { i } else { i + 1 });
                break;
            }
        }
        if shrink.is_none() {
            if let Some((e, f)) = first_crossing(&ring_of(&ys)) {
                // Ring vertex 2i + 1 is y_i and 2i + 2 is z_i (between
                // spokes i and i + 1).
                let spokes_at = |t: usize| -> Vec<usize> {
                    if t == 0 || t == 2 * n {
                        vec![]
                    } else if t % 2 == 1 {
                        vec![(t - 1) / 2]
                    } else {
                        vec![t / 2 - 1, t / 2]
                    }
                };
                let len = 2 * n + 1;
                shrink = [e, (e + 1) % len, f, (f + 1) % len]
                    .into_iter()
                    .flat_map(spokes_at)
                    .max_by(|&a, &b| radii[a].total_cmp(&radii[b]).then(b.cmp(&a)));
                if shrink.is_none() {
                    return Err("base edges cross".into());
                }
            }
        }
        match shrink {
            Some(j) => {
                radii[j] *= 0.8;
                ys[j] = spoke(j, radii[j]);
            }
            None => {
                settled = true;
                break;
            }
        }
    }
    if !settled {
        return Err("spoke radii did not settle".into());
    }
    for i in 0..n.saturating_sub(1) {
        assert!(strictly_convex_ccw(&[base[i], ys[i], ys[i + 1], base[i + 1]]));
    }
    Ok(ring_of(&ys))
}

// First pair of non-adjacent ring edges that touch, as edge start indices.
fn first_crossing(ring: &[Point]) -> Option<(usize, usize)> {
    let k = ring.len();
    let edge = |i: usize| Segment::new(ring[i], ring[(i + 1) % k]);
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            if segments_intersect(edge(i), edge(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Convex polygon from points near a circle of radius `100` at sorted
/// random angles. Radii are jittered when that keeps every vertex strictly
/// convex, otherwise the points stay on the circle.
pub fn gen_convex(n: usize, seed: u64) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::InvalidConfig("a convex polygon needs n >= 3".into()));
    }
    const RADIUS: f64 = 100.0;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = attempt_rng(seed, attempt);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let jitter: Vec<f64> = (0..n).map(|_| rng.gen_range(0.85..1.0)).collect();
        for scale in [true, false] {
            let ring: Vec<Point> = angles
                .iter()
                .zip(&jitter)
                .map(|(a, j)| {
                    let r = if scale { RADIUS * j } else { RADIUS };
                    Point::new(r * a.cos(), r * a.sin())
                })
                .collect();
            if strictly_convex_ccw(&ring) {
                if let Ok(poly) = Polygon::new(ring) {
                    return Ok(poly);
                }
            }
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "could not place strictly convex vertices".into(),
    })
}

/// Convex polygon with `n` vertices dented to exactly `r_target` reflex
/// vertices (`n + r_target` vertices in total).
pub fn gen_simple(cfg: &GenConfig) -> Result<Polygon> {
    cfg.check(3)?;
    let n = cfg.n;
    let triangles = n - 2;
    let capacity = triangles * cfg.dents_per_triangle;
    if cfg.r_target > capacity {
        return Err(Error::InvalidConfig(format!(
            "{} reflex vertices requested but a {n}-gon holds at most {capacity}",
            cfg.r_target
        )));
    }
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let hull = gen_convex(n, cfg.seed.wrapping_add(attempt as u64))?;
        let mut rng = attempt_rng(cfg.seed, attempt);
        let mut counts = vec![0usize; triangles];
        for _ in 0..cfg.r_target {
            let open: Vec<usize> = (0..triangles)
                .filter(|&t| counts[t] < cfg.dents_per_triangle)
                .collect();
            counts[open[rng.gen_range(0..open.len())]] += 1;
        }
        let mut chains: Vec<Vec<Point>> = Vec::with_capacity(triangles);
        let mut failed = false;
        for (t, &count) in counts.iter().enumerate() {
            // Fan triangle (v0, v(t+1), v(t+2)) with hull edge v(t+1) v(t+2).
            match dent_chain(&hull, t + 1, count, &mut rng) {
                Some(c) => chains.push(c),
                None => {
                    failed = true;
                    last = format!("no concave chain for triangle {t}");
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        let mut ring = Vec::with_capacity(n + cfg.r_target);
        ring.push(hull.vertex(0));
        for i in 1..n {
            ring.push(hull.vertex(i));
            if i < n - 1 {
                ring.extend(chains[i - 1].iter().copied());
            }
        }
        match Polygon::new(ring) {
            Ok(poly) => {
                let r = reflex_vertices(&poly).len();
                if r == cfg.r_target {
                    return Ok(poly);
                }
                last = format!("got {r} reflex vertices, wanted {}", cfg.r_target);
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: last,
    })
}

// Points strictly inside triangle (v0, b, c), ordered so that b, X1..Xk, c
// turns clockwise at every X (each X reflex in the final polygon).
fn dent_chain(hull: &Polygon, i: usize, count: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    if count == 0 {
        return Some(Vec::new());
    }
    let (a, b, c) = (hull.vertex(0), hull.vertex(i), hull.vertex(i + 1));
    let mid = b.lerp(c, 0.5);
    let (ex, ey) = (c.x - b.x, c.y - b.y);
    for _ in 0..MAX_ATTEMPTS {
        let mut pts: Vec<(f64, Point)> = (0..count)
            .map(|_| {
                // Barycentric weights bounded away from the triangle's sides.
                let mut w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.05..1.0));
                let s: f64 = w.iter().sum();
                w.iter_mut().for_each(|x| *x /= s);
                let p = Point::new(
                    w[0] * a.x + w[1] * b.x + w[2] * c.x,
                    w[0] * a.y + w[1] * b.y + w[2] * c.y,
                );
                let (dx, dy) = (p.x - mid.x, p.y - mid.y);
                // angle from the b-c direction, in (0, pi) on the interior side
                let phi = (ex * dy - ey * dx).atan2(ex * dx + ey * dy);
                (phi, p)
            })
            .collect();
        pts.sort_by(|x, y| y.0.total_cmp(&x.0));
        let chain: Vec<Point> = pts.into_iter().map(|x| x.1).collect();
        let mut full = Vec::with_capacity(count + 2);
        full.push(b);
        full.extend(chain.iter().copied());
        full.push(c);
        let concave = (1..full.len() - 1)
            .all(|j| orient_points(full[j - 1], full[j], full[j + 1]) == Ordering::Less);
        if concave {
            return Some(chain);
        }
    }
    None
}

/// Outcome of a weak-visibility check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakVisReport {
    pub pass: bool,
    /// A point that sees no point of the edge.
    pub witness: Option<Point>,
    pub components_checked: usize,
    pub samples_checked: usize,
}

impl WeakVisReport {
    pub fn describe(&self) -> String {
        match self.witness {
            None => "weakly visible".into(),
            Some(w) => format!("point ({}, {}) sees no point of the edge", w.x, w.y),
        }
    }
}

pub const EDGE_SAMPLES: usize = 64;
pub const MONTE_CARLO_SAMPLES: usize = 10_000;

/// Cell cap used when validating; beyond it only the Monte Carlo part runs.
pub const VALIDATION_CELL_CAP: usize = 200_000;

/// Does the point `x` see some point of edge `(u, v)`?
///
/// Candidates are the edge endpoints, evenly spaced samples, and every
/// parameter where a line from `x` through a polygon vertex meets the edge,
/// plus midpoints between consecutive such parameters. The visible part of
/// an edge from a point is a single interval bounded by those parameters.
pub fn sees_edge(scene: &Scene, x: &Site, lx: Locus, u: usize, v: usize) -> bool {
    let poly = scene.polygon();
    let (pu, pv) = (poly.vertex(u), poly.vertex(v));
    let edge_index = if poly.next(u) == v { u } else { v };
    let probe = |t: f64| {
        let (s, l) = if t == 0.0 {
            (Site::free(pu), Locus::Vertex(u))
        } else if t == 1.0 {
            (Site::free(pv), Locus::Vertex(v))
        } else {
            (Site::along(pu, pv, t), Locus::Edge(edge_index))
        };
        scene.sees_located(x, lx, &s, l)
    };
    // Coarse to fine: midpoint first, then quarter points, and so on.
    let mut order: Vec<usize> = (1..=EDGE_SAMPLES).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(i.trailing_zeros()), i));
    let mut ts: Vec<f64> = order
        .into_iter()
        .map(|i| i as f64 / (EDGE_SAMPLES + 1) as f64)
        .chain([0.0, 1.0])
        .collect();
    if ts.iter().any(|&t| probe(t)) {
        return true;
    }
    let xa = x.approx();
    let (dx, dy) = (pv.x - pu.x, pv.y - pu.y);
    let mut crit = Vec::with_capacity(poly.len());
    for w in poly.vertices() {
        // Solve xa + s (w - xa) = pu + t (pv - pu) for t.
        let (wx, wy) = (w.x - xa.x, w.y - xa.y);
        let den = wx * dy - wy * dx;
        if den.abs() < 1e-300 {
            continue;
        }
        let t = (wx * (pu.y - xa.y) - wy * (pu.x - xa.x)) / den;
        if t > 0.0 && t < 1.0 {
            crit.push(t);
        }
    }
    crit.push(0.0);
    crit.push(1.0);
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    ts.clear();
    for w in crit.windows(2) {
        ts.push(0.5 * (w[0] + w[1]));
        ts.push(w[1]);
    }
    ts.into_iter().any(|t| t > 0.0 && t < 1.0 && probe(t))
}

/// Uniform random points of the closed polygon's interior by rejection.
pub fn interior_samples(poly: &Polygon, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = poly.bounds();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if point_in_polygon(p, poly) == Containment::Interior {
            out.push(p);
        }
    }
    out
}

/// Checks weak visibility from `edge`: every corner of every decomposition
/// cell must see a point of the edge, and so must every one of
/// `MONTE_CARLO_SAMPLES` random interior points.
pub fn validate_weakvis(poly: &Polygon, edge: (usize, usize)) -> WeakVisReport {
    let (u, v) = edge;
    let scene = Scene::new(poly);
    let mut report = WeakVisReport {
        pass: true,
        witness: None,
        components_checked: 0,
        samples_checked: 0,
    };
    if poly.next(u) != v && poly.next(v) != u {
        report.pass = false;
        return report;
    }
    let opts = DecomposeOptions {
        cell_cap: VALIDATION_CELL_CAP,
        cut_rule: auto_cut_rule(poly.len()),
    };
    if let Ok(decomp) = decompose_with(poly, opts) {
        let corners = decomp.corner_sites();
        let loci = decomp.corner_loci();
        let mut memo = vec![0u8; corners.len()];
        for c in decomp.components() {
            report.components_checked += 1;
            for &k in c.corner_ids() {
                let k = k as usize;
                if memo[k] == 0 {
                    memo[k] = if sees_edge(&scene, &corners[k], loci[k], u, v) { 1 } else { 2 };
                }
                if memo[k] == 2 {
                    report.pass = false;
                    report.witness = Some(corners[k].approx());
                    return report;
                }
            }
        }
    }
    let seed = poly
        .vertices()
        .iter()
        .fold(0u64, |h, p| h.rotate_left(7) ^ p.x.to_bits() ^ p.y.to_bits().rotate_left(29));
    for p in interior_samples(poly, MONTE_CARLO_SAMPLES, seed) {
        report.samples_checked += 1;
        if !sees_edge(&scene, &Site::free(p), Locus::Interior, u, v) {
            report.pass = false;
            report.witness = Some(p);
            return report;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn weakvis_vertex_counts() {
        for n in [1, 2, 3, 6] {
            let inst = gen_weakvis(&GenConfig::default().with_seed(42).with_n(n)).unwrap();
            assert_eq!(inst.polygon().len(), 2 * n + 1);
        }
        let tri = gen_weakvis(&GenConfig::default().with_seed(1).with_n(1)).unwrap();
        assert_eq!(tri.polygon().len(), 3);
    }

    #[test]
    fn weakvis_is_deterministic() {
        let cfg = GenConfig::default().with_seed(7).with_n(5);
        assert_eq!(
            gen_weakvis(&cfg).unwrap().polygon(),
            gen_weakvis(&cfg).unwrap().polygon()
        );
    }

    #[test]
    fn convex_generator() {
        let tri = gen_convex(3, 5).unwrap();
        assert_eq!(tri.len(), 3);
        let p = gen_convex(25, 9).unwrap();
        assert!(reflex_vertices(&p).is_empty());
        assert_eq!(p.len(), 25);
    }

    #[test]
    fn simple_generator_counts() {
        let p = gen_simple(&GenConfig::default().with_seed(3).with_n(10).with_reflex(3)).unwrap();
        assert_eq!(p.len(), 13);
        assert_eq!(reflex_vertices(&p).len(), 3);
        let c = gen_simple(&GenConfig::default().with_seed(3).with_n(8)).unwrap();
        assert!(reflex_vertices(&c).is_empty());
        let over = gen_simple(&GenConfig::default().with_n(4).with_reflex(7));
        assert!(matches!(over, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn validator_examples() {
        let hex = fixtures::regular(6, 1.0);
        assert!(validate_weakvis(&hex, (0, 1)).pass);
        // The L-shape seen from the tip of its upper arm: the far end of the
        // lower arm is hidden.
        let l = fixtures::l_shape();
        let r = validate_weakvis(&l, (4, 5));
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert!(w.x > 1.0 && w.y < 1.0, "witness {w:?}");
    }
}
