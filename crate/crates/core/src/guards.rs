//! Vertex guard placement.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomp::{auto_cut_rule, decompose_with, ConvexDecomposition, CutRule, DecomposeOptions};
use crate::error::{Error, Result};
use crate::geodesic::{shortest_path_tree_in, ShortestPathTree};
use crate::geom::{reflex_vertices, Point, Polygon, Site};
use crate::polygen::{interior_samples, validate_weakvis};
use crate::util::BitSet;
use crate::visibility::{
    build_component_visibility, vertex_visibility_matrix, ComponentVisibility, Locus, Scene,
    VisibilityMap,
};

/// Largest polygon the exhaustive oracle accepts.
pub const OPTIMAL_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ghosh,
    WeakVis6,
    Hybrid,
    Optimal,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ghosh => "ghosh",
            Algorithm::WeakVis6 => "weakvis6",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Optimal => "optimal",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a guard set has to see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverageMode {
    /// Every convex component totally visible from some guard.
    Components,
    /// Every polygon vertex visible from some guard.
    Vertices,
}

/// Which rule the hybrid solver applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HybridBranch {
    Convex,
    Reflex,
    Ghosh,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuardSolution {
    pub algorithm: Algorithm,
    /// Guard vertex indices, ascending.
    pub guards: Vec<usize>,
    pub guard_points: Vec<Point>,
    /// Coverage notion the guards were chosen for.
    pub mode: CoverageMode,
    pub covered_components: Option<Vec<usize>>,
    pub covered_vertices: Vec<usize>,
    /// Wall-clock seconds spent in the solver.
    pub elapsed: f64,
    pub iterations: usize,
    pub branch: Option<HybridBranch>,
    /// Human-readable record of the decisions taken.
    pub trace: Vec<String>,
}

impl GuardSolution {
    pub fn len(&self) -> usize {
        self.guards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }
}

struct Draft {
    guards: Vec<usize>,
    mode: CoverageMode,
    covered_components: Option<Vec<usize>>,
    iterations: usize,
    branch: Option<HybridBranch>,
    trace: Vec<String>,
}

fn finish(
    poly: &Polygon,
    vis: &VisibilityMap,
    algorithm: Algorithm,
    start: Instant,
    mut d: Draft,
) -> GuardSolution {
    let elapsed = start.elapsed().as_secs_f64();
    d.guards.sort_unstable();
    d.guards.dedup();
    let covered_vertices = (0..poly.len())
        .filter(|&w| d.guards.iter().any(|&g| vis.sees(g, w)))
        .collect();
    GuardSolution {
        algorithm,
        guard_points: d.guards.iter().map(|&g| poly.vertex(g)).collect(),
        guards: d.guards,
        mode: d.mode,
        covered_components: d.covered_components,
        covered_vertices,
        elapsed,
        iterations: d.iterations,
        branch: d.branch,
        trace: d.trace,
    }
}

/// A polygon together with an edge `(u, v)` it is weakly visible from.
///
/// `v` always follows `u` on the counter-clockwise ring, so the clockwise
/// chain from `u` to `v` runs through every other vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakVisInstance {
    polygon: Polygon,
    u: usize,
    v: usize,
}

impl WeakVisInstance {
    /// Validates weak visibility from the edge joining `a` and `b`.
    pub fn new(polygon: Polygon, a: usize, b: usize) -> Result<Self> {
        let inst = Self::new_unchecked(polygon, a, b)?;
        let report = validate_weakvis(&inst.polygon, (inst.u, inst.v));
        if !report.pass {
            return Err(Error::NonWeakVisible {
                u: inst.u,
                v: inst.v,
                reason: report.describe(),
            });
        }
        Ok(inst)
    }

    /// Only checks that `a` and `b` span an edge.
    pub fn new_unchecked(polygon: Polygon, a: usize, b: usize) -> Result<Self> {
        let n = polygon.len();
        let bad = |reason: &str| Error::NonWeakVisible {
            u: a,
            v: b,
            reason: reason.into(),
        };
        if a >= n || b >= n {
            return Err(bad("edge endpoint out of range"));
        }
        let (u, v) = if polygon.next(a) == b {
            (a, b)
        } else if polygon.next(b) == a {
            (b, a)
        } else {
            return Err(bad("the endpoints are not adjacent"));
        };
        Ok(WeakVisInstance { polygon, u, v })
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn edge(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// Vertices of the clockwise chain from `u` to `v`.
    pub fn clockwise_chain(&self) -> Vec<usize> {
        let mut chain = Vec::with_capacity(self.polygon.len());
        let mut w = self.u;
        loop {
            chain.push(w);
            if w == self.v {
                return chain;
            }
            w = self.polygon.prev(w);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GhoshOptions {
    pub cell_cap: usize,
    /// `None` picks by polygon size, see [`auto_cut_rule`].
    pub cut_rule: Option<CutRule>,
    /// Stop once every vertex is seen instead of every component.
    pub stop_at_vertex_cover: bool,
}

impl Default for GhoshOptions {
    fn default() -> Self {
        GhoshOptions {
            cell_cap: crate::decomp::DEFAULT_CELL_CAP,
            cut_rule: None,
            stop_at_vertex_cover: false,
        }
    }
}

/// Greedy maximum coverage over convex components.
pub fn solve_ghosh(poly: &Polygon) -> Result<GuardSolution> {
    solve_ghosh_with(poly, &GhoshOptions::default())
}

pub fn solve_ghosh_with(poly: &Polygon, opts: &GhoshOptions) -> Result<GuardSolution> {
    let start = Instant::now();
    let vis = vertex_visibility_matrix(poly);
    let cut_rule = opts.cut_rule.unwrap_or_else(|| auto_cut_rule(poly.len()));
    let decomp = decompose_with(
        poly,
        DecomposeOptions {
            cell_cap: opts.cell_cap,
            cut_rule,
        },
    )?;
    let fsets = build_component_visibility(poly, &decomp)?;
    let mut draft = greedy(poly, &vis, &decomp, &fsets, opts.stop_at_vertex_cover)?;
    draft.trace.insert(0, format!("cut rule {cut_rule:?}, {} cuts", decomp.cut_count()));
    Ok(finish(poly, &vis, Algorithm::Ghosh, start, draft))
}

fn greedy(
    poly: &Polygon,
    vis: &VisibilityMap,
    decomp: &ConvexDecomposition,
    fsets: &ComponentVisibility,
    vertex_stop: bool,
) -> Result<Draft> {
    let n = poly.len();
    let m = decomp.len();
    let mut remaining = BitSet::full(m);
    let mut covered = BitSet::new(m);
    let mut seen = vec![false; n];
    let mut guards = Vec::new();
    let mut trace = vec![format!("{m} components")];
    let mut rounds = 0;
    loop {
        if remaining.is_empty() || (vertex_stop && seen.iter().all(|&s| s)) {
            break;
        }
        rounds += 1;
        if rounds > n {
            return Err(Error::IterationOverflow(n));
        }
        // max_by_key keeps the last maximum, so scan from the top index down.
        let (best, gain) = (0..n)
            .rev()
            .map(|j| (j, fsets.set(j).intersection_count(&remaining)))
            .max_by_key(|&(_, g)| g)
            .expect("polygon has vertices");
        if gain == 0 {
            return Err(Error::RobustnessFailure(
                "no vertex covers a remaining component".into(),
            ));
        }
        guards.push(best);
        remaining.difference_with(fsets.set(best));
        covered.union_with(fsets.set(best));
        for (w, s) in seen.iter_mut().enumerate() {
            *s |= vis.sees(best, w);
        }
        trace.push(format!("pick {best} covering {gain}, {} left", remaining.count()));
    }
    Ok(Draft {
        guards,
        mode: if vertex_stop {
            CoverageMode::Vertices
        } else {
            CoverageMode::Components
        },
        covered_components: Some(covered.iter().collect()),
        iterations: rounds,
        branch: None,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakVisOptions {
    /// Marking only guarantees that every vertex is seen. When set, guards
    /// are added greedily until every convex component is totally visible
    /// too, and the solution is reported in Components mode.
    pub complete_interior: bool,
    pub cell_cap: usize,
}

impl Default for WeakVisOptions {
    fn default() -> Self {
        WeakVisOptions {
            complete_interior: false,
            cell_cap: crate::decomp::DEFAULT_CELL_CAP,
        }
    }
}

/// Shortest-path-tree algorithm for a polygon weakly visible from an edge.
pub fn solve_weakvis6(inst: &WeakVisInstance) -> Result<GuardSolution> {
    solve_weakvis6_with(inst, &WeakVisOptions::default())
}

pub fn solve_weakvis6_with(inst: &WeakVisInstance, opts: &WeakVisOptions) -> Result<GuardSolution> {
    let start = Instant::now();
    let poly = inst.polygon();
    let vis = vertex_visibility_matrix(poly);
    let (u, v) = inst.edge();
    let spt_u = shortest_path_tree_in(poly, &vis, u);
    let spt_v = shortest_path_tree_in(poly, &vis, v);
    let mut draft = weakvis_marking(inst, &vis, &spt_u, &spt_v)?;
    if opts.complete_interior {
        complete_interior(poly, &mut draft, opts.cell_cap)?;
    }
    Ok(finish(poly, &vis, Algorithm::WeakVis6, start, draft))
}

/// Greedy top-up: while some cell is not totally visible from a guard, add
/// the vertex that totally sees the most such cells (lowest index on ties).
fn complete_interior(poly: &Polygon, draft: &mut Draft, cell_cap: usize) -> Result<()> {
    let n = poly.len();
    let decomp = decompose_with(
        poly,
        DecomposeOptions {
            cell_cap,
            cut_rule: auto_cut_rule(n),
        },
    )?;
    let scene = Scene::new(poly);
    let corners = decomp.corner_sites();
    let loci = decomp.corner_loci();
    // Open cells are uniformly visible, so a certified interior point decides.
    let sees_cell = |g: usize, c: &crate::decomp::ConvexComponent| {
        if c.representative_inside() {
            scene.vertex_sees(g, &Site::free(c.representative_point()), Locus::Interior)
        } else {
            c.corner_ids()
                .iter()
                .all(|&k| scene.vertex_sees(g, &corners[k as usize], loci[k as usize]))
        }
    };
    let mut open: Vec<usize> = decomp
        .components()
        .iter()
        .filter(|c| !draft.guards.iter().any(|&g| sees_cell(g, c)))
        .map(|c| c.id())
        .collect();
    let before = draft.guards.len();
    while !open.is_empty() {
        let (best, count) = (0..n)
            .rev()
            .map(|j| {
                let k = open.iter().filter(|&&c| sees_cell(j, decomp.component(c))).count();
                (j, k)
            })
            .max_by_key(|&(_, k)| k)
            .expect("polygon has vertices");
        if count == 0 {
            return Err(Error::RobustnessFailure(format!(
                "cell {} is not totally visible from any vertex",
                open[0]
            )));
        }
        open.retain(|&c| !sees_cell(best, decomp.component(c)));
        draft.guards.push(best);
        draft
            .trace
            .push(format!("interior completion: guard {best} covers {count} cells"));
    }
    draft.trace.push(format!(
        "interior completion over {} cells added {} guards",
        decomp.len(),
        draft.guards.len() - before
    ));
    draft.mode = CoverageMode::Components;
    Ok(())
}

fn weakvis_marking(
    inst: &WeakVisInstance,
    vis: &VisibilityMap,
    spt_u: &ShortestPathTree,
    spt_v: &ShortestPathTree,
) -> Result<Draft> {
    let n = inst.polygon().len();
    let chain = inst.clockwise_chain();
    let mut pos = vec![0; n];
    for (i, &w) in chain.iter().enumerate() {
        pos[w] = i;
    }
    let pu = |z: usize| spt_u.parent(z);
    let pv = |z: usize| spt_v.parent(z);
    let mut marked = vec![false; n];
    let mark_from = |marked: &mut Vec<bool>, g: usize| {
        for (w, m) in marked.iter_mut().enumerate() {
            *m |= vis.sees(g, w);
        }
    };
    // The second guard of a pair is kept only when it marks a new vertex,
    // the same test the pruning pass applies to B'.
    let add_pair = |marked: &mut Vec<bool>, s_b: &mut Vec<usize>, trace: &mut Vec<String>, z: usize| {
        s_b.push(pu(z));
        mark_from(marked, pu(z));
        if (0..n).any(|w| !marked[w] && vis.sees(pv(z), w)) {
            s_b.push(pv(z));
            mark_from(marked, pv(z));
        } else {
            trace.push(format!("skip guard {}: marks nothing new", pv(z)));
        }
    };
    // Chain positions between two vertices, inclusive, in either order.
    let span = |a: usize, b: usize| {
        let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        lo..=hi
    };
    let covered_by = |marked: &Vec<bool>, a: usize, b: usize, z: usize| {
        let (g1, g2) = (pu(z), pv(z));
        span(a, b)
            .map(|i| chain[i])
            .all(|w| marked[w] || vis.sees(g1, w) || vis.sees(g2, w))
    };
    let first_unmarked_from = |marked: &Vec<bool>, from: usize| {
        (from..n).map(|i| chain[i]).find(|&w| !marked[w])
    };

    let mut trace = vec![
        "gap fill: B' and S'_B start empty".to_string(),
        "gap fill: a pair's second guard is skipped when it marks nothing new".to_string(),
        "gap fill: vertices seen from else-branch guards are marked".to_string(),
    ];
    let mut b_set: Vec<usize> = Vec::new();
    let mut s_b: Vec<usize> = Vec::new();
    let mut b_prime: Vec<usize> = Vec::new();
    let mut z = inst.edge().0;
    let cap = n * n;
    let mut iterations = 0;
    while marked.iter().any(|&m| !m) {
        iterations += 1;
        if iterations > cap {
            return Err(Error::IterationOverflow(cap));
        }
        z = match first_unmarked_from(&marked, pos[z]) {
            Some(w) => w,
            None => {
                trace.push("gap fill: unmarked vertices behind z, restarting from u".into());
                first_unmarked_from(&marked, 0).expect("an unmarked vertex exists")
            }
        };
        if covered_by(&marked, z, pv(z), z) {
            b_set.push(z);
            add_pair(&mut marked, &mut s_b, &mut trace, z);
            trace.push(format!("B += {z} (direct), guards {} {}", pu(z), pv(z)));
            z = pv(z);
        } else {
            let mut zp = first_unmarked_from(&marked, pos[z] + 1);
            while let Some(w) = zp {
                if !covered_by(&marked, pu(w), w, w) {
                    break;
                }
                z = w;
                zp = first_unmarked_from(&marked, pos[w] + 1);
            }
            b_set.push(z);
            add_pair(&mut marked, &mut s_b, &mut trace, z);
            trace.push(format!("B += {z} (advanced), guards {} {}", pu(z), pv(z)));
            while let Some(w) = (0..=pos[z]).rev().map(|i| chain[i]).find(|&w| !marked[w]) {
                b_prime.push(w);
                mark_from(&mut marked, pu(w));
                mark_from(&mut marked, pv(w));
                trace.push(format!("B' += {w}, guards {} {}", pu(w), pv(w)));
            }
        }
    }

    trace.push("gap fill: pruning starts from the vertices seen by S_B".into());
    let mut marked = vec![false; n];
    for &g in &s_b {
        mark_from(&mut marked, g);
    }
    let mut kept = Vec::new();
    for &w in b_prime.iter().rev() {
        let before = marked.iter().filter(|&&m| m).count();
        mark_from(&mut marked, pu(w));
        mark_from(&mut marked, pv(w));
        if marked.iter().filter(|&&m| m).count() > before {
            kept.push(w);
        } else {
            trace.push(format!("prune B' vertex {w}"));
        }
    }
    trace.push("gap fill: returned set is S_B plus pruned S'_B".into());
    let mut guards = s_b;
    for &w in kept.iter().rev() {
        guards.extend([pu(w), pv(w)]);
    }
    trace.push(format!("|B| = {}, |B'| = {}", b_set.len(), kept.len()));
    Ok(Draft {
        guards,
        mode: CoverageMode::Vertices,
        covered_components: None,
        iterations,
        branch: None,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HybridOptions {
    pub c: f64,
    pub ghosh: GhoshOptions,
}

impl Default for HybridOptions {
    fn default() -> Self {
        HybridOptions {
            c: 1.0,
            ghosh: GhoshOptions::default(),
        }
    }
}

/// True when the hybrid rule guards the reflex vertices directly.
pub fn hybrid_uses_reflex(n: usize, r: usize, c: f64) -> bool {
    r as f64 - c <= (n as f64).log2().log2()
}

pub fn solve_hybrid(poly: &Polygon, c: f64) -> Result<GuardSolution> {
    solve_hybrid_with(
        poly,
        &HybridOptions {
            c,
            ..HybridOptions::default()
        },
    )
}

pub fn solve_hybrid_with(poly: &Polygon, opts: &HybridOptions) -> Result<GuardSolution> {
    let start = Instant::now();
    let n = poly.len();
    let reflex = reflex_vertices(poly);
    let r = reflex.len();
    let bound = (n as f64).log2().log2();
    let (branch, guards) = if r == 0 {
        (HybridBranch::Convex, vec![0])
    } else if hybrid_uses_reflex(n, r, opts.c) {
        (HybridBranch::Reflex, reflex)
    } else {
        let mut sol = solve_ghosh_with(poly, &opts.ghosh)?;
        sol.algorithm = Algorithm::Hybrid;
        sol.branch = Some(HybridBranch::Ghosh);
        sol.trace.insert(
            0,
            format!("r - c = {} > log2 log2 n = {bound:.4}", r as f64 - opts.c),
        );
        sol.elapsed = start.elapsed().as_secs_f64();
        return Ok(sol);
    };
    let vis = vertex_visibility_matrix(poly);
    let trace = vec![format!(
        "r = {r}, r - c = {} <= log2 log2 n = {bound:.4}",
        r as f64 - opts.c
    )];
    Ok(finish(
        poly,
        &vis,
        Algorithm::Hybrid,
        start,
        Draft {
            guards,
            mode: CoverageMode::Components,
            covered_components: None,
            iterations: 1,
            branch: Some(branch),
            trace,
        },
    ))
}

/// Minimum vertex guard set by exhaustive search of increasing size. The
/// first cover found in lexicographic order is returned.
pub fn solve_optimal(poly: &Polygon, mode: CoverageMode) -> Result<GuardSolution> {
    let start = Instant::now();
    let n = poly.len();
    if n > OPTIMAL_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: OPTIMAL_MAX_N,
        });
    }
    let vis = vertex_visibility_matrix(poly);
    let sets: Vec<BitSet> = match mode {
        CoverageMode::Components => {
            let decomp = decompose_with(
                poly,
                DecomposeOptions {
                    cut_rule: auto_cut_rule(n),
                    ..DecomposeOptions::default()
                },
            )?;
            build_component_visibility(poly, &decomp)?.sets().to_vec()
        }
        CoverageMode::Vertices => (0..n)
            .map(|i| {
                let mut s = BitSet::new(n);
                for j in vis.neighbours(i) {
                    s.insert(j);
                }
                s.insert(i);
                s
            })
            .collect(),
    };
    let universe = sets[0].capacity();
    let mut tried = 0usize;
    for k in 1..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            tried += 1;
            let mut acc = BitSet::new(universe);
            for &i in &combo {
                acc.union_with(&sets[i]);
            }
            if acc.count() == universe {
                let covered_components = match mode {
                    CoverageMode::Components => Some((0..universe).collect()),
                    CoverageMode::Vertices => None,
                };
                return Ok(finish(
                    poly,
                    &vis,
                    Algorithm::Optimal,
                    start,
                    Draft {
                        guards: combo,
                        mode,
                        covered_components,
                        iterations: tried,
                        branch: None,
                        trace: vec![format!("searched {tried} subsets")],
                    },
                ));
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    Err(Error::RobustnessFailure("no vertex set covers the polygon".into()))
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Result of re-checking a guard set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub mode: CoverageMode,
    pub pass: bool,
    pub uncovered_component: Option<usize>,
    pub uncovered_vertex: Option<usize>,
    pub uncovered_point: Option<Point>,
    pub samples: usize,
}

impl CoverageReport {
    pub fn describe(&self) -> String {
        if let Some(c) = self.uncovered_component {
            format!("component {c} is not totally visible from any guard")
        } else if let Some(v) = self.uncovered_vertex {
            format!("vertex {v} is not seen by any guard")
        } else if let Some(p) = self.uncovered_point {
            format!("interior point ({}, {}) is not seen by any guard", p.x, p.y)
        } else {
            "covered".into()
        }
    }
}

pub const VERIFY_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub cell_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: VERIFY_SAMPLES,
            seed: 0x5EED,
            cell_cap: crate::decomp::DEFAULT_CELL_CAP,
        }
    }
}

/// Independent re-check of a solution in `mode`, followed by a Monte Carlo
/// interior sample.
pub fn verify_coverage(
    poly: &Polygon,
    solution: &GuardSolution,
    mode: CoverageMode,
) -> Result<CoverageReport> {
    verify_guards(poly, &solution.guards, mode, &VerifyOptions::default())
}

pub fn verify_guards(
    poly: &Polygon,
    guards: &[usize],
    mode: CoverageMode,
    opts: &VerifyOptions,
) -> Result<CoverageReport> {
    let n = poly.len();
    if let Some(&g) = guards.iter().find(|&&g| g >= n) {
        return Err(Error::InvalidConfig(format!("guard index {g} out of range")));
    }
    let scene = Scene::new(poly);
    let mut report = CoverageReport {
        mode,
        pass: true,
        uncovered_component: None,
        uncovered_vertex: None,
        uncovered_point: None,
        samples: 0,
    };
    match mode {
        CoverageMode::Components => {
            let decomp = decompose_with(
                poly,
                DecomposeOptions {
                    cell_cap: opts.cell_cap,
                    cut_rule: auto_cut_rule(n),
                },
            )?;
            let corners = decomp.corner_sites();
            let loci = decomp.corner_loci();
            // memo[g][k]: 0 = unknown, 1 = visible, 2 = hidden
            let mut memo = vec![vec![0u8; corners.len()]; guards.len()];
            let hidden = decomp.components().iter().find(|c| {
                !(0..guards.len()).any(|gi| {
                    c.corner_ids().iter().all(|&k| {
                        let k = k as usize;
                        if memo[gi][k] == 0 {
                            let seen = scene.vertex_sees(guards[gi], &corners[k], loci[k]);
                            memo[gi][k] = if seen { 1 } else { 2 };
                        }
                        memo[gi][k] == 1
                    })
                })
            });
            if let Some(c) = hidden {
                report.pass = false;
                report.uncovered_component = Some(c.id());
                return Ok(report);
            }
        }
        CoverageMode::Vertices => {
            if let Some(w) = (0..n).find(|&w| !guards.iter().any(|&g| scene.vertices_see(g, w))) {
                report.pass = false;
                report.uncovered_vertex = Some(w);
                return Ok(report);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for p in interior_samples(poly, opts.samples, rng.gen()) {
        report.samples += 1;
        let s = Site::free(p);
        if !guards.iter().any(|&g| scene.vertex_sees(g, &s, Locus::Interior)) {
            report.pass = false;
            report.uncovered_point = Some(p);
            return Ok(report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex_needs_one_guard() {
        let hex = fixtures::regular(7, 2.0);
        assert_eq!(solve_ghosh(&hex).unwrap().guards, vec![0]);
        assert_eq!(solve_hybrid(&hex, 1.0).unwrap().guards, vec![0]);
        assert_eq!(solve_optimal(&hex, CoverageMode::Components).unwrap().len(), 1);
        let inst = WeakVisInstance::new(hex, 0, 1).unwrap();
        let sol = solve_weakvis6(&inst).unwrap();
        // u sees everything, so the pair's second guard is dropped.
        assert_eq!(sol.guards, vec![0], "{:?}", sol.trace);
    }

    #[test]
    fn l_shape_from_reflex_vertex() {
        let l = fixtures::l_shape();
        // (0,0) and the reflex vertex (1,1) both see everything; ties go low.
        assert_eq!(solve_ghosh(&l).unwrap().guards, vec![0]);
        let decomp = crate::decomp::decompose(&l).unwrap();
        let f = build_component_visibility(&l, &decomp).unwrap();
        assert_eq!(f.set(3).count(), decomp.len());
        let opt = solve_optimal(&l, CoverageMode::Components).unwrap();
        assert_eq!(opt.len(), 1);
    }

    #[test]
    fn comb_three() {
        let comb = fixtures::comb(3);
        let opt = solve_optimal(&comb, CoverageMode::Components).unwrap();
        assert_eq!(opt.len(), 3);
        assert_eq!(solve_ghosh(&comb).unwrap().len(), 3);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[5], vec![2, 3]);
    }

    #[test]
    fn hybrid_rule() {
        assert!(hybrid_uses_reflex(300, 2, 1.0));
        assert!(!hybrid_uses_reflex(300, 65, 1.0));
        assert!(hybrid_uses_reflex(300, 4, 1.0));
        assert!(!hybrid_uses_reflex(300, 5, 1.0));
    }

    #[test]
    fn dropping_a_guard_is_caught() {
        let comb = fixtures::comb(3);
        let opt = solve_optimal(&comb, CoverageMode::Components).unwrap();
        let fewer = &opt.guards[1..];
        let r = verify_guards(&comb, fewer, CoverageMode::Components, &VerifyOptions::default())
            .unwrap();
        assert!(!r.pass);
        assert!(r.uncovered_component.is_some());
    }
}
