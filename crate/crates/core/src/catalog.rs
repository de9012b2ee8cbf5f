//! Fixture catalog of worked instances with expected verdicts, and a runner
//! that re-derives every verdict.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::conditions::{self, SeparatingFlag};
use crate::convexity;
use crate::geometry::{self, IntPoint, PointSet};
use crate::instance::{self, Instance, InstanceError};

const BUILTIN: &str = include_str!("../fixtures/catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("no catalog entry matches `{0}`")]
    UnknownId(String),
    #[error("malformed catalog: {0}")]
    Malformed(String),
    #[error("entry `{id}`: {source}")]
    Instance {
        id: String,
        #[source]
        source: InstanceError,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    /// Where the instance comes from, in words.
    pub origin: String,
    pub instance: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<SeparatingFlag>,
    pub claims: Vec<Claim>,
}

/// Which set of the instance a claim talks about.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
pub enum SetRef {
    #[default]
    S,
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct ExpectedHole {
    pub hole: IntPoint,
    pub first_k: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Claim {
    /// k-parallelogram condition; on failure optionally the size of the
    /// witness multisets.
    Parallelogram {
        k: usize,
        expect: bool,
        #[serde(default)]
        witness_size: Option<usize>,
    },
    Ray { expect: bool },
    FlagSearch { expect: bool },
    /// Verifies the entry's stored flag.
    VerifyFlag { expect: bool },
    HoleFree {
        #[serde(default)]
        set: SetRef,
        expect: bool,
    },
    KConvex {
        #[serde(default)]
        set: SetRef,
        k: usize,
        expect: bool,
    },
    IntegrallyConvex {
        #[serde(default)]
        set: SetRef,
        expect: bool,
    },
    /// `conv(set) ∩ Z^d` equals the listed points.
    LatticePoints {
        #[serde(default)]
        set: SetRef,
        points: Vec<IntPoint>,
    },
    /// `k_convex_hull(S, outer) \ k_convex_hull(S, inner)` equals `points`.
    HullDifference { outer: usize, inner: usize, points: Vec<IntPoint> },
    HullMember { k: usize, point: IntPoint, expect: bool },
    /// First-k classification of the listed holes of `S`.
    Holes { holes: Vec<ExpectedHole> },
    /// `A ∩ conv(B) = ∅` and `B ∩ conv(A) = ∅`.
    DisjointHulls { expect: bool },
    /// The multisets lie in `A` and `B` respectively and have equal sums.
    EqualSum { a: Vec<IntPoint>, b: Vec<IntPoint> },
}

impl Claim {
    pub fn describe(&self) -> String {
        match self {
            Claim::Parallelogram { k, expect, .. } => format!("{k}-parallelogram = {expect}"),
            Claim::Ray { expect } => format!("ray = {expect}"),
            Claim::FlagSearch { expect } => format!("flag separation = {expect}"),
            Claim::VerifyFlag { expect } => format!("stored flag separates = {expect}"),
            Claim::HoleFree { set, expect } => format!("{set:?} hole-free = {expect}"),
            Claim::KConvex { set, k, expect } => format!("{set:?} {k}-convex = {expect}"),
            Claim::IntegrallyConvex { set, expect } => format!("{set:?} integrally convex = {expect}"),
            Claim::LatticePoints { set, points } => format!("conv({set:?}) has {} lattice points", points.len()),
            Claim::HullDifference { outer, inner, points } => {
                format!("{outer}-hull minus {inner}-hull = {}", fmt_points(points))
            }
            Claim::HullMember { k, point, expect } => format!("{point} in {k}-hull = {expect}"),
            Claim::Holes { holes } => format!(
                "holes {}",
                holes.iter().map(|h| format!("{}:k={}", h.hole, h.first_k)).collect::<Vec<_>>().join(" ")
            ),
            Claim::DisjointHulls { expect } => format!("A, B avoid each other's hulls = {expect}"),
            Claim::EqualSum { a, b } => format!("sum {} = sum {}", fmt_points(a), fmt_points(b)),
        }
    }
}

fn fmt_points(points: &[IntPoint]) -> String {
    format!("{{{}}}", points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub origin: String,
    pub outcomes: Vec<ClaimOutcome>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }
}

pub fn builtin() -> Catalog {
    serde_json::from_str(BUILTIN).expect("built-in catalog is well formed")
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    serde_json::from_str(text).map_err(|e| CatalogError::Malformed(e.to_string()))
}

impl Catalog {
    pub fn entry(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Runs every entry whose id contains `filter` (all when `None`).
    pub fn run(&self, filter: Option<&str>) -> Result<CatalogReport, CatalogError> {
        let selected: Vec<&CatalogEntry> = self
            .entries
            .iter()
            .filter(|e| filter.is_none_or(|f| e.id.contains(f)))
            .collect();
        if selected.is_empty() {
            return Err(CatalogError::UnknownId(filter.unwrap_or("").to_string()));
        }
        let entries = selected.into_iter().map(run_entry).collect::<Result<Vec<_>, _>>()?;
        Ok(CatalogReport { entries })
    }
}

pub fn run_catalog(filter: Option<&str>) -> Result<CatalogReport, CatalogError> {
    builtin().run(filter)
}

impl CatalogEntry {
    pub fn instance(&self) -> Result<Instance, CatalogError> {
        instance::instance_from_value(&self.instance).map_err(|source| CatalogError::Instance {
            id: self.id.clone(),
            source,
        })
    }
}

fn select(inst: &Instance, set: SetRef) -> Option<PointSet> {
    match (inst, set) {
        (_, SetRef::S) => Some(inst.support()),
        (Instance::Partition(p), SetRef::A) => Some(p.a().clone()),
        (Instance::Partition(p), SetRef::B) => Some(p.b().clone()),
        (Instance::Set(_), _) => None,
    }
}

fn outcome(claim: &Claim, passed: bool, detail: Value) -> ClaimOutcome {
    ClaimOutcome {
        claim: claim.describe(),
        passed,
        detail,
    }
}

fn failure(claim: &Claim, message: impl std::fmt::Display) -> ClaimOutcome {
    outcome(claim, false, json!({ "error": message.to_string() }))
}

fn run_entry(entry: &CatalogEntry) -> Result<EntryReport, CatalogError> {
    let inst = entry.instance()?;
    let outcomes = entry.claims.iter().map(|c| run_claim(entry, &inst, c)).collect();
    Ok(EntryReport {
        id: entry.id.clone(),
        origin: entry.origin.clone(),
        outcomes,
    })
}

fn run_claim(entry: &CatalogEntry, inst: &Instance, claim: &Claim) -> ClaimOutcome {
    let needs_partition = || inst.partition();
    match claim {
        Claim::Parallelogram { k, expect, witness_size } => match needs_partition() {
            Ok(p) => {
                let v = conditions::check_parallelogram(p, *k);
                let size_ok = match (v.counterexample(), witness_size) {
                    (Some(w), Some(n)) => w.a_points.len() == *n,
                    _ => true,
                };
                outcome(claim, v.holds() == *expect && size_ok, to_json(&v))
            }
            Err(e) => failure(claim, e),
        },
        Claim::Ray { expect } => match needs_partition() {
            Ok(p) => {
                let v = conditions::check_ray(p);
                outcome(claim, v.holds() == *expect, to_json(&v))
            }
            Err(e) => failure(claim, e),
        },
        Claim::FlagSearch { expect } => match needs_partition() {
            Ok(p) => {
                let v = conditions::search_flag(p);
                outcome(claim, v.holds() == *expect, to_json(&v))
            }
            Err(e) => failure(claim, e),
        },
        Claim::VerifyFlag { expect } => {
            let (Ok(p), Some(flag)) = (needs_partition(), entry.flag.as_ref()) else {
                return failure(claim, "needs a partition and a stored flag");
            };
            match conditions::flag_violation(p, flag) {
                Ok(violation) => outcome(
                    claim,
                    violation.is_none() == *expect,
                    json!({ "flag": flag, "violation": violation }),
                ),
                Err(e) => failure(claim, e),
            }
        }
        Claim::HoleFree { set, expect } => with_set(claim, inst, *set, |s| {
            convexity::is_hole_free(s).map(|v| outcome(claim, v.holds() == *expect, to_json(&v)))
        }),
        Claim::KConvex { set, k, expect } => with_set(claim, inst, *set, |s| {
            convexity::is_k_convex(s, *k).map(|v| outcome(claim, v.holds() == *expect, to_json(&v)))
        }),
        Claim::IntegrallyConvex { set, expect } => with_set(claim, inst, *set, |s| {
            convexity::is_integrally_convex(s).map(|v| outcome(claim, v.holds() == *expect, to_json(&v)))
        }),
        Claim::LatticePoints { set, points } => with_set(claim, inst, *set, |s| {
            let got = geometry::lattice_points_in_conv(s)?;
            let want = PointSet::new(s.dim(), points.iter().cloned())?;
            Ok(outcome(claim, got == want, json!({ "lattice_points": got })))
        }),
        Claim::HullDifference { outer, inner, points } => with_set(claim, inst, SetRef::S, |s| {
            let big = convexity::k_convex_hull(s, *outer)?;
            let small = convexity::k_convex_hull(s, *inner)?;
            let diff = big.difference(&small);
            let want = PointSet::new(s.dim(), points.iter().cloned())?;
            Ok(outcome(claim, diff == want, json!({ "difference": diff })))
        }),
        Claim::HullMember { k, point, expect } => with_set(claim, inst, SetRef::S, |s| {
            let hull = convexity::k_convex_hull(s, *k)?;
            let inside = hull.contains(point);
            Ok(outcome(claim, inside == *expect, json!({ "member": inside, "hull_size": hull.len() })))
        }),
        Claim::Holes { holes } => with_set(claim, inst, SetRef::S, |s| {
            let reports = convexity::classify_holes(s)?;
            let passed = holes.iter().all(|h| {
                reports.iter().any(|r| r.hole == h.hole && r.first_k == h.first_k)
            });
            let listed: Vec<&convexity::HoleReport> =
                reports.iter().filter(|r| holes.iter().any(|h| h.hole == r.hole)).collect();
            Ok(outcome(claim, passed, json!({ "classified": listed, "total_holes": reports.len() })))
        }),
        Claim::DisjointHulls { expect } => match needs_partition() {
            Ok(p) => {
                let crossing = |x: &PointSet, y: &PointSet| -> Result<Option<IntPoint>, crate::error::GeometryError> {
                    for q in x {
                        if geometry::lattice_point_in_conv(q, y)? {
                            return Ok(Some(q.clone()));
                        }
                    }
                    Ok(None)
                };
                match (crossing(p.a(), p.b()), crossing(p.b(), p.a())) {
                    (Ok(x), Ok(y)) => outcome(
                        claim,
                        (x.is_none() && y.is_none()) == *expect,
                        json!({ "a_in_conv_b": x, "b_in_conv_a": y }),
                    ),
                    (Err(e), _) | (_, Err(e)) => failure(claim, e),
                }
            }
            Err(e) => failure(claim, e),
        },
        Claim::EqualSum { a, b } => match needs_partition() {
            Ok(p) => {
                let members = a.iter().all(|x| p.a().contains(x)) && b.iter().all(|x| p.b().contains(x));
                let sa = conditions::point_sum(a);
                let sb = conditions::point_sum(b);
                let equal = a.len() == b.len() && sa == sb;
                outcome(
                    claim,
                    members && equal,
                    json!({ "members": members, "sum_a": sa.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            "sum_b": sb.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
                )
            }
            Err(e) => failure(claim, e),
        },
    }
}

fn with_set(
    claim: &Claim,
    inst: &Instance,
    set: SetRef,
    f: impl FnOnce(&PointSet) -> Result<ClaimOutcome, crate::error::GeometryError>,
) -> ClaimOutcome {
    match select(inst, set) {
        Some(s) => f(&s).unwrap_or_else(|e| failure(claim, e)),
        None => failure(claim, format!("instance has no set {set:?}")),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_parses_and_ids_are_unique() {
        let cat = builtin();
        let mut ids: Vec<&str> = cat.entries.iter().map(|e| e.id.as_str()).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
        for e in &cat.entries {
            e.instance().unwrap();
            assert!(!e.claims.is_empty());
        }
    }

    #[test]
    fn unknown_filter_is_an_error() {
        assert!(matches!(run_catalog(Some("no-such-entry")), Err(CatalogError::UnknownId(_))));
    }

    #[test]
    fn small_entries_pass() {
        let report = run_catalog(Some("unit-square-diagonals")).unwrap();
        assert!(report.passed(), "{report:#?}");
    }
}
