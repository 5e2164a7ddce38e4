//! Seeded experiment suites and their result tables.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::DEFAULT_CELL_CAP;
use crate::error::{Error, Result};
use crate::geom::{reflex_vertices, Polygon};
use crate::guards::{
    solve_ghosh_with, solve_hybrid_with, solve_optimal, solve_weakvis6, Algorithm, CoverageMode,
    GhoshOptions, GuardSolution, HybridOptions, WeakVisInstance,
};
use crate::polygen::{gen_simple, gen_weakvis, sees_edge, GenConfig, MAX_ATTEMPTS};
use crate::visibility::{Locus, Scene};

pub const CSV_HEADER: &str = "instance,n,r,algo,guards,opt,ratio,seconds,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// 10 to 15 vertices, 2 or 3 of them reflex, weakly visible from an edge.
    SmallLowR,
    /// Weak-visibility polygons of 11 to 31 vertices, about half reflex.
    BalancedR,
    /// Weak-visibility polygons of 101 and 401 vertices.
    Large,
    /// Simple polygons with a swept reflex count, for the hybrid rule.
    Hybrid,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::SmallLowR, Suite::BalancedR, Suite::Large, Suite::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SmallLowR => "small-low-r",
            Suite::BalancedR => "balanced-r",
            Suite::Large => "large",
            Suite::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite `{s}`")))
    }
}

/// A generated polygon, with its weak-visibility edge when it has one.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: String,
    pub seed: u64,
    pub polygon: Polygon,
    pub edge: Option<(usize, usize)>,
}

impl Instance {
    pub fn weakvis(&self) -> Option<WeakVisInstance> {
        let (u, v) = self.edge?;
        WeakVisInstance::new_unchecked(self.polygon.clone(), u, v).ok()
    }
}

fn suite_rng(suite: Suite, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_F491_4F6C_DD1D) ^ suite as u64)
}

/// First edge, in vertex order, that the polygon is weakly visible from.
pub fn find_weakvis_edge(poly: &Polygon) -> Option<(usize, usize)> {
    let scene = Scene::new(poly);
    let n = poly.len();
    (0..n).find_map(|u| {
        let v = poly.next(u);
        // Cheap necessary condition before the full validation.
        let vertices_ok = (0..n).all(|w| sees_edge(&scene, scene.site(w), Locus::Vertex(w), u, v));
        (vertices_ok && WeakVisInstance::new(poly.clone(), u, v).is_ok()).then_some((u, v))
    })
}

/// Dented convex polygon with 10 to 15 vertices, 2 or 3 reflex, that is
/// weakly visible from one of its edges.
pub fn small_low_r(seed: u64) -> Result<Instance> {
    let mut rng = suite_rng(Suite::SmallLowR, seed);
    let total = rng.gen_range(10..=15usize);
    let r = rng.gen_range(2..=3usize);
    for attempt in 0..MAX_ATTEMPTS as u64 {
        let cfg = GenConfig::default()
            .with_seed(seed.wrapping_mul(1000).wrapping_add(attempt))
            .with_n(total - r)
            .with_reflex(r);
        let poly = gen_simple(&cfg)?;
        if let Some(edge) = find_weakvis_edge(&poly) {
            return Ok(Instance {
                id: format!("{}-{seed}", Suite::SmallLowR),
                seed,
                polygon: poly,
                edge: Some(edge),
            });
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "no weakly visible dented polygon".into(),
    })
}

/// Weak-visibility polygon with `spokes` in `[5, 15]`, so 11 to 31 vertices.
pub fn balanced_r(seed: u64) -> Result<Instance> {
    let mut rng = suite_rng(Suite::BalancedR, seed);
    let spokes = rng.gen_range(5..=15usize);
    weakvis_instance(Suite::BalancedR, seed, spokes)
}

/// Weak-visibility polygon with `2 * spokes + 1` vertices.
pub fn weakvis_instance(suite: Suite, seed: u64, spokes: usize) -> Result<Instance> {
    let inst = gen_weakvis(&GenConfig::default().with_seed(seed).with_n(spokes))?;
    Ok(Instance {
        id: format!("{suite}-{seed}"),
        seed,
        edge: Some(inst.edge()),
        polygon: inst.polygon().clone(),
    })
}

/// Even seeds give 101 vertices, odd seeds 401.
pub fn large(seed: u64) -> Result<Instance> {
    weakvis_instance(Suite::Large, seed, if seed % 2 == 0 { 50 } else { 200 })
}

/// Simple polygon for the hybrid suite. Even seeds are small (12 to 20
/// vertices, reflex count swept 1 to 8) so the oracle can run; odd seeds
/// have 50 to 300 vertices with the reflex count swept 1 to 70.
pub fn hybrid(seed: u64) -> Result<Instance> {
    let mut rng = suite_rng(Suite::Hybrid, seed);
    let step = (seed / 2) as usize;
    let (total, r) = if seed % 2 == 0 {
        (rng.gen_range(12..=20usize), 1 + step % 8)
    } else {
        (rng.gen_range(50..=300usize), 1 + (step * 3) % 70)
    };
    let hull = total - r;
    let r = r.min(3 * (hull - 2));
    let poly = gen_simple(&GenConfig::default().with_seed(seed).with_n(hull).with_reflex(r))?;
    Ok(Instance {
        id: format!("{}-{seed}", Suite::Hybrid),
        seed,
        polygon: poly,
        edge: None,
    })
}

pub fn suite_instance(suite: Suite, seed: u64) -> Result<Instance> {
    match suite {
        Suite::SmallLowR => small_low_r(seed),
        Suite::BalancedR => balanced_r(seed),
        Suite::Large => large(seed),
        Suite::Hybrid => hybrid(seed),
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance: String,
    pub n: usize,
    pub r: usize,
    pub algo: Algorithm,
    pub guards: Option<usize>,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub seconds: Option<f64>,
    pub seed: u64,
    /// Why the row has no result.
    pub error: Option<String>,
}

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let flt = |x: Option<f64>, p: usize| x.map(|v| format!("{v:.p$}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.instance,
            self.n,
            self.r,
            self.algo,
            opt(self.guards),
            opt(self.opt),
            flt(self.ratio, 4),
            flt(self.seconds, 6),
            self.seed
        )
    }
}

pub fn to_csv(records: &[ExperimentRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub suite: Suite,
    pub seeds: Vec<u64>,
    pub hybrid_c: f64,
    pub cell_cap: usize,
    /// Run the exact oracle on instances with at most this many vertices.
    pub oracle_max_n: usize,
}

impl BenchConfig {
    pub fn new(suite: Suite, seeds: impl IntoIterator<Item = u64>) -> Self {
        BenchConfig {
            suite,
            seeds: seeds.into_iter().collect(),
            hybrid_c: 1.0,
            cell_cap: DEFAULT_CELL_CAP,
            oracle_max_n: 15,
        }
    }
}

fn record(
    inst: &Instance,
    algo: Algorithm,
    sol: Result<GuardSolution>,
    opt: Option<usize>,
) -> ExperimentRecord {
    let n = inst.polygon.len();
    let r = reflex_vertices(&inst.polygon).len();
    let base = ExperimentRecord {
        instance: inst.id.clone(),
        n,
        r,
        algo,
        guards: None,
        opt,
        ratio: None,
        seconds: None,
        seed: inst.seed,
        error: None,
    };
    match sol {
        Ok(s) => ExperimentRecord {
            guards: Some(s.len()),
            ratio: opt.map(|o| s.len() as f64 / o as f64),
            seconds: Some(s.elapsed),
            ..base
        },
        Err(e) => ExperimentRecord {
            error: Some(e.to_string()),
            ..base
        },
    }
}

fn oracle(poly: &Polygon, mode: CoverageMode, max_n: usize) -> Option<usize> {
    (poly.len() <= max_n)
        .then(|| solve_optimal(poly, mode).ok().map(|s| s.len()))
        .flatten()
}

/// Rows for one seed: Ghosh and the weak-visibility algorithm on weak
/// visibility suites, the hybrid rule on the hybrid suite.
pub fn run_instance(cfg: &BenchConfig, seed: u64) -> Vec<ExperimentRecord> {
    let inst = match suite_instance(cfg.suite, seed) {
        Ok(i) => i,
        Err(e) => {
            let algos: &[Algorithm] = match cfg.suite {
                Suite::Hybrid => &[Algorithm::Hybrid],
                _ => &[Algorithm::Ghosh, Algorithm::WeakVis6],
            };
            return algos
                .iter()
                .map(|&algo| ExperimentRecord {
                    instance: format!("{}-{seed}", cfg.suite),
                    n: 0,
                    r: 0,
                    algo,
                    guards: None,
                    opt: None,
                    ratio: None,
                    seconds: None,
                    seed,
                    error: Some(e.to_string()),
                })
                .collect();
        }
    };
    let ghosh = GhoshOptions {
        cell_cap: cfg.cell_cap,
        ..GhoshOptions::default()
    };
    let p = &inst.polygon;
    match cfg.suite {
        Suite::Hybrid => {
            let opts = HybridOptions {
                c: cfg.hybrid_c,
                ghosh,
            };
            let opt = oracle(p, CoverageMode::Components, cfg.oracle_max_n);
            vec![record(&inst, Algorithm::Hybrid, solve_hybrid_with(p, &opts), opt)]
        }
        _ => {
            let g_opt = oracle(p, CoverageMode::Components, cfg.oracle_max_n);
            let w_opt = oracle(p, CoverageMode::Vertices, cfg.oracle_max_n);
            let wv = inst
                .weakvis()
                .ok_or_else(|| Error::InvalidConfig("instance has no weak-visibility edge".into()));
            vec![
                record(&inst, Algorithm::Ghosh, solve_ghosh_with(p, &ghosh), g_opt),
                record(&inst, Algorithm::WeakVis6, wv.and_then(|w| solve_weakvis6(&w)), w_opt),
            ]
        }
    }
}

/// All rows of a suite, in seed order. Seeds run in parallel.
pub fn run_suite(cfg: &BenchConfig) -> Vec<ExperimentRecord> {
    let rows: Vec<Vec<ExperimentRecord>> =
        cfg.seeds.par_iter().map(|&s| run_instance(cfg, s)).collect();
    rows.into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgoSummary {
    pub algo: Algorithm,
    pub rows: usize,
    pub failures: usize,
    pub mean_guards: f64,
    pub mean_ratio: Option<f64>,
    pub mean_seconds: f64,
    pub median_seconds: f64,
}

pub fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn summarize(records: &[ExperimentRecord]) -> Vec<AlgoSummary> {
    let mut algos: Vec<Algorithm> = records.iter().map(|r| r.algo).collect();
    algos.dedup();
    algos.sort_by_key(|a| *a as u8);
    algos.dedup();
    algos
        .into_iter()
        .map(|algo| {
            let rows: Vec<&ExperimentRecord> = records.iter().filter(|r| r.algo == algo).collect();
            let ok: Vec<&&ExperimentRecord> = rows.iter().filter(|r| r.guards.is_some()).collect();
            let guards: Vec<f64> = ok.iter().map(|r| r.guards.unwrap() as f64).collect();
            let ratios: Vec<f64> = ok.iter().filter_map(|r| r.ratio).collect();
            let mut secs: Vec<f64> = ok.iter().filter_map(|r| r.seconds).collect();
            AlgoSummary {
                algo,
                rows: rows.len(),
                failures: rows.len() - ok.len(),
                mean_guards: mean(&guards),
                mean_ratio: (!ratios.is_empty()).then(|| mean(&ratios)),
                mean_seconds: mean(&secs),
                median_seconds: median(&mut secs),
            }
        })
        .collect()
}

impl fmt::Display for AlgoSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<9} rows {:>4}  failed {:>3}  mean guards {:>7.3}  mean ratio {:>6}  mean s {:>9.4}  median s {:>9.4}",
            self.algo.name(),
            self.rows,
            self.failures,
            self.mean_guards,
            self.mean_ratio.map(|r| format!("{r:.3}")).unwrap_or_else(|| "-".into()),
            self.mean_seconds,
            self.median_seconds
        )
    }
}

/// Every vertex sees some point of the instance edge.
pub fn weakvis_edge_ok(inst: &Instance) -> bool {
    let Some((u, v)) = inst.edge else {
        return false;
    };
    let scene = Scene::new(&inst.polygon);
    (0..inst.polygon.len()).all(|w| {
        sees_edge(&scene, scene.site(w), Locus::Vertex(w), u, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_low_r_shape() {
        for seed in 0..3 {
            let inst = small_low_r(seed).unwrap();
            let n = inst.polygon.len();
            let r = reflex_vertices(&inst.polygon).len();
            assert!((10..=15).contains(&n) && (2..=3).contains(&r), "n {n} r {r}");
            assert!(weakvis_edge_ok(&inst));
        }
    }

    #[test]
    fn csv_rows() {
        let cfg = BenchConfig::new(Suite::SmallLowR, [1]);
        let rows = run_suite(&cfg);
        assert_eq!(rows.len(), 2);
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        for line in lines {
            assert_eq!(line.split(',').count(), 9);
        }
        assert!(rows.iter().all(|r| r.ratio.unwrap() >= 1.0));
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
