//! Exhaustive and randomized search over small lattice sets: equivalence
//! checks between separation conditions on grid families, and a hunt for
//! integrally convex sets in `Z^3` where the `d`-parallelogram condition
//! holds but flag separation fails.
//!
//! Subsets of a grid are enumerated by bitmask in increasing order, which
//! makes runs deterministic and resumable from a cursor. Bipartitions always
//! put the lexicographically smallest point of `S` into `A`; every condition
//! here is symmetric under exchanging `A` and `B`, so this halves the work
//! without losing cases (reported partition counts are halved as well).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::conditions::{self, Partition};
use crate::convexity;
use crate::geometry::{self, box_points, IntPoint, PointSet};

/// Largest grid (number of cells) whose subsets are enumerated.
pub const MAX_GRID_CELLS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExplorerError {
    #[error("grid has {cells} cells; at most {max} can be enumerated")]
    GridTooLarge { cells: usize, max: usize },
    #[error("grid needs at least one axis of positive length")]
    EmptyGrid,
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("checkpoint was written for a different configuration")]
    CheckpointMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    IntegrallyConvex,
    HoleFree,
    OneConvex,
    Any,
}

impl Filter {
    pub fn parse(name: &str) -> Result<Self, ExplorerError> {
        match name {
            "integrally-convex" => Ok(Filter::IntegrallyConvex),
            "hole-free" => Ok(Filter::HoleFree),
            "1-convex" | "one-convex" => Ok(Filter::OneConvex),
            "any" => Ok(Filter::Any),
            _ => Err(ExplorerError::Unknown {
                kind: "filter",
                name: name.to_string(),
            }),
        }
    }

    pub fn accepts(self, s: &PointSet) -> bool {
        let ok = match self {
            Filter::Any => return true,
            Filter::IntegrallyConvex => convexity::is_integrally_convex(s).map(|v| v.holds()),
            Filter::HoleFree => convexity::is_hole_free(s).map(|v| v.holds()),
            Filter::OneConvex => convexity::is_k_convex(s, 1).map(|v| v.holds()),
        };
        ok.expect("grid subsets are nonempty and at most three-dimensional")
    }
}

/// A separation condition compared by [`test_equivalence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Parallelogram(usize),
    Ray,
    Flag,
}

impl Condition {
    /// `P<k>` (k-parallelogram), `R` (ray) or `H` (flag separation).
    pub fn parse(name: &str) -> Result<Self, ExplorerError> {
        let unknown = || ExplorerError::Unknown {
            kind: "condition",
            name: name.to_string(),
        };
        match name {
            "R" => Ok(Condition::Ray),
            "H" => Ok(Condition::Flag),
            _ => {
                let k: usize = name.strip_prefix('P').ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(unknown());
                }
                Ok(Condition::Parallelogram(k))
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            Condition::Parallelogram(k) => format!("P{k}"),
            Condition::Ray => "R".into(),
            Condition::Flag => "H".into(),
        }
    }

    /// Verdict plus its witness as JSON.
    pub fn evaluate(self, p: &Partition) -> (bool, Value) {
        let to_json = |v: serde_json::Result<Value>| v.expect("verdicts serialize");
        match self {
            Condition::Parallelogram(k) => {
                let v = conditions::check_parallelogram(p, k);
                (v.holds(), to_json(serde_json::to_value(&v)))
            }
            Condition::Ray => {
                let v = conditions::check_ray(p);
                (v.holds(), to_json(serde_json::to_value(&v)))
            }
            Condition::Flag => {
                let v = conditions::search_flag(p);
                (v.holds(), to_json(serde_json::to_value(&v)))
            }
        }
    }
}

/// Points of the grid `{0..n_1-1} × … × {0..n_d-1}` in lexicographic order.
pub fn grid_points(grid: &[usize]) -> Result<Vec<IntPoint>, ExplorerError> {
    if grid.is_empty() || grid.contains(&0) {
        return Err(ExplorerError::EmptyGrid);
    }
    let cells: usize = grid.iter().product();
    if cells > MAX_GRID_CELLS {
        return Err(ExplorerError::GridTooLarge {
            cells,
            max: MAX_GRID_CELLS,
        });
    }
    let hi: Vec<i64> = grid.iter().map(|&n| n as i64 - 1).collect();
    Ok(box_points(&vec![0; grid.len()], &hi))
}

/// The subset of `points` selected by the bits of `mask`.
pub fn subset(points: &[IntPoint], mask: u64) -> PointSet {
    let dim = points[0].dim();
    PointSet::new(dim, points.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()))
        .expect("grid points share a dimension")
}

/// Every nonempty subset of the grid passing the filter, with its mask, in
/// increasing mask order.
pub fn enumerate_family(grid: &[usize], filter: Filter) -> Result<Vec<(u64, PointSet)>, ExplorerError> {
    let points = grid_points(grid)?;
    let total = 1u64 << points.len();
    Ok((1..total)
        .into_par_iter()
        .filter_map(|mask| {
            let s = subset(&points, mask);
            filter.accepts(&s).then_some((mask, s))
        })
        .collect())
}

/// All bipartitions of `s` with the smallest point in `A`.
pub fn bipartitions(s: &PointSet) -> impl Iterator<Item = Partition> + '_ {
    let n = s.len();
    let rest = if n == 0 { 0 } else { (1u64 << (n - 1)) - 1 };
    (0..=rest).filter(move |_| n >= 2).filter(move |&m| m != rest).map(move |m| {
        let pts = s.points();
        let mut a = vec![pts[0].clone()];
        let mut b = Vec::new();
        for (i, p) in pts[1..].iter().enumerate() {
            if m >> i & 1 == 1 {
                a.push(p.clone());
            } else {
                b.push(p.clone());
            }
        }
        Partition::new(PointSet::new(s.dim(), a).unwrap(), PointSet::new(s.dim(), b).unwrap())
            .expect("disjoint nonempty sides")
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceConfig {
    pub grid: Vec<usize>,
    pub filter: Filter,
    pub left: Condition,
    pub right: Condition,
    /// Only sets with at most this many points.
    pub max_size: Option<usize>,
    /// Stop once this many violations are found.
    pub stop_after: Option<usize>,
}

impl EquivalenceConfig {
    /// Identifies the enumeration; `stop_after` is left out so a stopped run
    /// can be resumed with a larger limit.
    pub fn fingerprint(&self) -> String {
        let key = Self { stop_after: None, ..self.clone() };
        serde_json::to_string(&key).expect("config serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub mask: u64,
    #[serde(rename = "A")]
    pub a: Vec<IntPoint>,
    #[serde(rename = "B")]
    pub b: Vec<IntPoint>,
    pub left: bool,
    pub right: bool,
    pub left_witness: Value,
    pub right_witness: Value,
}

impl Violation {
    pub fn partition(&self) -> Partition {
        let dim = self.a[0].dim();
        Partition::new(
            PointSet::new(dim, self.a.iter().cloned()).expect("dimension"),
            PointSet::new(dim, self.b.iter().cloned()).expect("dimension"),
        )
        .expect("violations store valid partitions")
    }
}

/// Resumable position of an equivalence run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub fingerprint: String,
    /// Next subset mask to examine.
    pub cursor: u64,
    pub sets: u64,
    pub partitions: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
pub enum Record {
    Progress(Checkpoint),
    Violation(Violation),
    Summary(EquivalenceSummary),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceSummary {
    pub left: String,
    pub right: String,
    pub sets: u64,
    pub partitions: u64,
    pub violations: u64,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub summary: EquivalenceSummary,
    pub violations: Vec<Violation>,
}

struct ChunkResult {
    sets: u64,
    partitions: u64,
    violations: Vec<Violation>,
}

fn examine_set(cfg: &EquivalenceConfig, points: &[IntPoint], mask: u64) -> Option<ChunkResult> {
    if cfg.max_size.is_some_and(|m| mask.count_ones() as usize > m) {
        return None;
    }
    let s = subset(points, mask);
    if !cfg.filter.accepts(&s) {
        return None;
    }
    let mut out = ChunkResult {
        sets: 1,
        partitions: 0,
        violations: Vec::new(),
    };
    for p in bipartitions(&s) {
        out.partitions += 1;
        let (l, lw) = cfg.left.evaluate(&p);
        let (r, rw) = cfg.right.evaluate(&p);
        if l != r {
            out.violations.push(Violation {
                mask,
                a: p.a().points().to_vec(),
                b: p.b().points().to_vec(),
                left: l,
                right: r,
                left_witness: lw,
                right_witness: rw,
            });
        }
    }
    Some(out)
}

/// Checks `left ⟺ right` on every bipartition of every filtered subset of
/// the grid. Subsets are processed in chunks of consecutive masks (in
/// parallel within a chunk); after each chunk a progress record with a
/// checkpoint is emitted, so `resume` can continue an interrupted run.
/// With `stop_after`, the run ends inside the set that produced the last
/// wanted violation and `complete` is false.
pub fn test_equivalence(
    cfg: &EquivalenceConfig,
    resume: Option<&Checkpoint>,
    mut sink: impl FnMut(&Record),
) -> Result<EquivalenceReport, ExplorerError> {
    const CHUNK: u64 = 64;
    let points = grid_points(&cfg.grid)?;
    let total = 1u64 << points.len();
    let fingerprint = cfg.fingerprint();
    let mut state = match resume {
        Some(c) if c.fingerprint != fingerprint => return Err(ExplorerError::CheckpointMismatch),
        Some(c) => c.clone(),
        None => Checkpoint {
            fingerprint,
            cursor: 1,
            sets: 0,
            partitions: 0,
            violations: 0,
        },
    };
    let mut violations = Vec::new();
    let limit_reached = |found: u64| cfg.stop_after.is_some_and(|n| found >= n as u64);
    'chunks: while state.cursor < total && !limit_reached(state.violations) {
        let end = (state.cursor + CHUNK).min(total);
        let results: Vec<(u64, ChunkResult)> = (state.cursor..end)
            .into_par_iter()
            .filter_map(|mask| examine_set(cfg, &points, mask).map(|r| (mask, r)))
            .collect();
        for (mask, r) in results {
            state.sets += r.sets;
            state.partitions += r.partitions;
            for v in r.violations {
                state.violations += 1;
                sink(&Record::Violation(v.clone()));
                violations.push(v);
                if limit_reached(state.violations) {
                    // resume after this set; its remaining violations are dropped
                    state.cursor = mask + 1;
                    sink(&Record::Progress(state.clone()));
                    break 'chunks;
                }
            }
        }
        state.cursor = end;
        sink(&Record::Progress(state.clone()));
    }
    let summary = EquivalenceSummary {
        left: cfg.left.label(),
        right: cfg.right.label(),
        sets: state.sets,
        partitions: state.partitions,
        violations: state.violations,
        complete: state.cursor >= total && !limit_reached(state.violations),
    };
    sink(&Record::Summary(summary.clone()));
    Ok(EquivalenceReport { summary, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureConfig {
    pub seed: u64,
    /// Number of random polytopes to sample.
    pub budget: u64,
    /// Vertices are drawn uniformly from `[box_lo, box_hi]^3`.
    pub box_lo: i64,
    pub box_hi: i64,
    pub vertices: usize,
    /// Samples with more lattice points are skipped.
    pub max_points: usize,
    /// The parallelogram order tested (the ambient dimension by default).
    pub k: usize,
}

impl Default for ConjectureConfig {
    fn default() -> Self {
        ConjectureConfig {
            seed: 0,
            budget: 100,
            box_lo: 0,
            box_hi: 6,
            vertices: 4,
            max_points: 12,
            k: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(rename = "A")]
    pub a: Vec<IntPoint>,
    #[serde(rename = "B")]
    pub b: Vec<IntPoint>,
    pub blocking_flat: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub index: u64,
    pub vertices: Vec<IntPoint>,
    pub points: usize,
    pub integrally_convex: bool,
    pub partitions: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub config: ConjectureConfig,
    pub samples: u64,
    pub skipped_large: u64,
    pub integrally_convex_sets: u64,
    pub partitions: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Bipartitions of `s` with the k-parallelogram condition but no separating
/// flag.
pub fn hunt_in_set(s: &PointSet, k: usize) -> (u64, Vec<Counterexample>) {
    let mut count = 0;
    let mut found = Vec::new();
    for p in bipartitions(s) {
        count += 1;
        if !conditions::check_parallelogram(&p, k).holds() {
            continue;
        }
        if let Some(flat) = conditions::search_flag(&p).counterexample() {
            found.push(Counterexample {
                a: p.a().points().to_vec(),
                b: p.b().points().to_vec(),
                blocking_flat: serde_json::to_value(flat).expect("serializes"),
            });
        }
    }
    (count, found)
}

/// Random vertices for sample `index`; independent of every other sample.
pub fn sample_vertices(cfg: &ConjectureConfig, index: u64) -> Vec<IntPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    (0..cfg.vertices)
        .map(|_| IntPoint::new((0..3).map(|_| rng.gen_range(cfg.box_lo..=cfg.box_hi)).collect()))
        .collect()
}

fn run_sample(cfg: &ConjectureConfig, index: u64) -> Option<SampleOutcome> {
    let vertices = sample_vertices(cfg, index);
    let vs = PointSet::new(3, vertices.iter().cloned()).expect("dimension 3");
    let s = geometry::lattice_points_in_conv(&vs).expect("nonempty");
    if s.len() > cfg.max_points {
        return None;
    }
    let ic = s.len() >= 2 && convexity::is_integrally_convex(&s).expect("dimension 3").holds();
    let (partitions, counterexamples) = if ic { hunt_in_set(&s, cfg.k) } else { (0, Vec::new()) };
    Some(SampleOutcome {
        index,
        vertices,
        points: s.len(),
        integrally_convex: ic,
        partitions,
        counterexamples,
    })
}

/// Samples `budget` random polytopes, keeps the integrally convex lattice
/// point sets of at most `max_points` points, and tests every bipartition.
pub fn conjecture_hunt(cfg: &ConjectureConfig, mut sink: impl FnMut(&SampleOutcome)) -> ConjectureReport {
    let outcomes: Vec<Option<SampleOutcome>> = (0..cfg.budget).into_par_iter().map(|i| run_sample(cfg, i)).collect();
    let mut report = ConjectureReport {
        config: cfg.clone(),
        samples: cfg.budget,
        skipped_large: 0,
        integrally_convex_sets: 0,
        partitions: 0,
        counterexamples: Vec::new(),
    };
    for o in outcomes {
        let Some(o) = o else {
            report.skipped_large += 1;
            continue;
        };
        sink(&o);
        if o.integrally_convex {
            report.integrally_convex_sets += 1;
        }
        report.partitions += o.partitions;
        report.counterexamples.extend(o.counterexamples);
    }
    report
}

/// JSON line for a record.
pub fn record_line<T: Serialize>(r: &T) -> String {
    serde_json::to_string(r).expect("records serialize")
}

pub fn summary_json(report: &EquivalenceReport) -> Value {
    json!({ "summary": report.summary, "violations": report.violations.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_counts() {
        assert_eq!(enumerate_family(&[2, 2], Filter::Any).unwrap().len(), 15);
        assert_eq!(enumerate_family(&[2, 2], Filter::HoleFree).unwrap().len(), 15);
    }

    #[test]
    fn grid_guard() {
        assert_eq!(
            grid_points(&[5, 5]).unwrap_err(),
            ExplorerError::GridTooLarge { cells: 25, max: 24 }
        );
        assert_eq!(grid_points(&[0, 3]).unwrap_err(), ExplorerError::EmptyGrid);
    }

    #[test]
    fn condition_names() {
        assert_eq!(Condition::parse("P3").unwrap(), Condition::Parallelogram(3));
        assert_eq!(Condition::parse("H").unwrap(), Condition::Flag);
        assert!(Condition::parse("P0").is_err());
        assert!(Condition::parse("Q").is_err());
        assert_eq!(Filter::parse("hole-free").unwrap(), Filter::HoleFree);
    }

    #[test]
    fn bipartitions_fix_first_point() {
        let s = subset(&grid_points(&[2, 2]).unwrap(), 0b1111);
        let parts: Vec<Partition> = bipartitions(&s).collect();
        assert_eq!(parts.len(), 7);
        assert!(parts.iter().all(|p| p.a().contains(&IntPoint::from([0, 0]))));
    }

    #[test]
    fn zero_budget_is_empty() {
        let cfg = ConjectureConfig {
            budget: 0,
            ..Default::default()
        };
        let r = conjecture_hunt(&cfg, |_| {});
        assert_eq!(r.samples, 0);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn sampling_is_reproducible() {
        let cfg = ConjectureConfig::default();
        assert_eq!(sample_vertices(&cfg, 7), sample_vertices(&cfg, 7));
        assert_ne!(sample_vertices(&cfg, 7), sample_vertices(&cfg, 8));
    }

    #[test]
    fn resume_matches_a_single_run() {
        let cfg = EquivalenceConfig {
            grid: vec![2, 3],
            filter: Filter::Any,
            left: Condition::Parallelogram(2),
            right: Condition::Ray,
            max_size: None,
            stop_after: None,
        };
        let full = test_equivalence(&cfg, None, |_| {}).unwrap();
        let start = Checkpoint {
            fingerprint: cfg.fingerprint(),
            cursor: 1,
            sets: 0,
            partitions: 0,
            violations: 0,
        };
        let resumed = test_equivalence(&cfg, Some(&start), |_| {}).unwrap();
        assert_eq!(full.summary, resumed.summary);
        let other = EquivalenceConfig {
            filter: Filter::HoleFree,
            ..cfg.clone()
        };
        assert_eq!(
            test_equivalence(&other, Some(&start), |_| {}).unwrap_err(),
            ExplorerError::CheckpointMismatch
        );
    }
}
