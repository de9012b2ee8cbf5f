//! Decision procedures for the three separation conditions on a partition
//! `S = A ∪ B` of a finite lattice point set:
//!
//! * flag separation (a nested chain of hyperplanes, each separating `A` and
//!   `B` inside the previous one, ending in a flat whose points all lie on
//!   one side),
//! * the ray condition (on each line the `A`-points form a ray of `S`),
//! * the k-parallelogram condition (no `k' <= k` points of `A` share their
//!   sum with `k'` points of `B`).
//!
//! # Flags in lexicographic form
//!
//! A [`SeparatingFlag`] is a list of affine functionals `g_1, …, g_m` plus a
//! residual owner. A point goes to `A` if the first nonzero `g_i(x)` is
//! positive, to `B` if it is negative, and to the residual owner if all
//! vanish. Each `g_i` must be nonconstant on `H_{d-i+1} = {g_1 = … = g_{i-1} = 0}`
//! (its normal is independent of the earlier normals), so
//! `H_{d-i} = H_{d-i+1} ∩ {g_i = 0}` is a hyperplane in `H_{d-i+1}` whose two
//! open sides are `{g_i > 0}` and `{g_i < 0}`. Points of `S` in the first side
//! are classified `A`, in the second `B`, which is exactly the statement that
//! `H_{d-i}` separates `A` and `B` in `H_{d-i+1}`; the residual rule is the
//! requirement on the innermost flat. Conversely, a hyperplane `P` of an
//! affine subspace `L` is the zero set inside `L` of some affine functional on
//! `R^d`, and its sign can be chosen so that the `A` side is positive, so
//! every chain of subspaces gives a lexicographic flag.
//!
//! # Completeness of the flag search
//!
//! [`search_flag`] works on a live set `S' = A' ∪ B'` (initially `S`). It
//! solves one exact linear program for a weak separator `g` (`g >= 0` on `A'`,
//! `g <= 0` on `B'`) that is nonzero on as many live points as possible: with
//! slacks `0 <= t_x <= 1` and `±g(x) >= t_x`, maximize `Σ t_x`. Weak
//! separators form a convex cone and the sum of separators that are strict
//! at different points is strict at all of them, so the optimum is strict on
//! the set `M` of all points at which *some* weak separator is nonzero. The
//! search then recurses on `S' \ M`.
//!
//! Suppose some flag `f` separates `A` and `B`. Let `g_j` be the first
//! functional of `f` that does not vanish on all of `S'` (one exists while
//! both `A'` and `B'` are nonempty, otherwise all of `S'` would belong to
//! the residual owner). The earlier functionals vanish on `S'`, so `g_j` is a
//! weak separator of `(A', B')` and every point where it is nonzero lies in
//! `M`. Hence `M` is nonempty, the search makes progress, and the remaining
//! set `S' \ M` is still separated by `f`. By induction on `|S'|` the search
//! succeeds whenever any flag exists, and when `M` is empty it reports the
//! affine hull of `S'` as a flat in which no flag can start.
//!
//! The functionals found are rational; this loses nothing for finite inputs
//! because the linear program has rational data, so whenever a real weak
//! separator strict at a point exists a rational one does too.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{FlagError, PartitionError};
use crate::exact::{self, Rational, RationalText};
use crate::geometry::{self, AffineFunctional, IntPoint, PointSet};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Owner of the points on which every functional of a flag vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Residual {
    A,
    B,
    #[serde(rename = "none")]
    Empty,
}

impl Residual {
    pub fn admits(self, side: Side) -> bool {
        matches!((self, side), (Residual::A, Side::A) | (Residual::B, Side::B))
    }
}

/// Two disjoint nonempty point sets of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    #[serde(rename = "A")]
    a: PointSet,
    #[serde(rename = "B")]
    b: PointSet,
}

impl Partition {
    pub fn new(a: PointSet, b: PointSet) -> Result<Self, PartitionError> {
        if a.dim() != b.dim() {
            return Err(crate::error::GeometryError::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            }
            .into());
        }
        if a.is_empty() {
            return Err(PartitionError::EmptySide('A'));
        }
        if b.is_empty() {
            return Err(PartitionError::EmptySide('B'));
        }
        if let Some(p) = a.iter().find(|p| b.contains(p)) {
            return Err(PartitionError::Overlap(p.clone()));
        }
        Ok(Partition { a, b })
    }

    /// `A` given, `B = S \ A`.
    pub fn from_subset(s: &PointSet, a: PointSet) -> Result<Self, PartitionError> {
        let b = s.difference(&a);
        Partition::new(a, b)
    }

    pub fn a(&self) -> &PointSet {
        &self.a
    }

    pub fn b(&self) -> &PointSet {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn support(&self) -> PointSet {
        self.a.union(&self.b)
    }

    pub fn side_of(&self, p: &IntPoint) -> Option<Side> {
        if self.a.contains(p) {
            Some(Side::A)
        } else if self.b.contains(p) {
            Some(Side::B)
        } else {
            None
        }
    }

    /// The same partition with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Partition {
        Partition {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Where a flag places a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    Strict(Side),
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingFlag {
    pub functionals: Vec<AffineFunctional>,
    pub residual: Residual,
}

impl SeparatingFlag {
    pub fn new(functionals: Vec<AffineFunctional>, residual: Residual) -> Self {
        SeparatingFlag {
            functionals,
            residual,
        }
    }

    /// Checks dimensions, `m <= d`, and that each functional is nonconstant
    /// on the flat cut out by the earlier ones.
    pub fn validate(&self, dim: usize) -> Result<(), FlagError> {
        if let Some(g) = self.functionals.iter().find(|g| g.dim() != dim) {
            return Err(FlagError::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        if self.functionals.len() > dim {
            return Err(FlagError::TooManyLevels {
                levels: self.functionals.len(),
                dim,
            });
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (level, g) in self.functionals.iter().enumerate() {
            rows.push(g.normal.clone());
            if exact::rank(&rows) != level + 1 {
                return Err(FlagError::ConstantAtLevel { level: level + 1 });
            }
        }
        Ok(())
    }

    pub fn classify(&self, x: &IntPoint) -> Placement {
        for g in &self.functionals {
            let v = g.eval(x);
            if v.is_positive() {
                return Placement::Strict(Side::A);
            }
            if v.is_negative() {
                return Placement::Strict(Side::B);
            }
        }
        Placement::Residual
    }

    fn accepts(&self, x: &IntPoint, side: Side) -> bool {
        match self.classify(x) {
            Placement::Strict(s) => s == side,
            Placement::Residual => self.residual.admits(side),
        }
    }
}

impl fmt::Display for SeparatingFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.functionals.iter().enumerate() {
            writeln!(f, "g{} = {}", i + 1, g)?;
        }
        let owner = match self.residual {
            Residual::A => "A",
            Residual::B => "B",
            Residual::Empty => "none",
        };
        write!(f, "residual: {owner}")
    }
}

/// The first point of `A` then `B` (in lexicographic order) that the flag
/// misplaces, or `None` when it separates.
pub fn flag_violation(p: &Partition, f: &SeparatingFlag) -> Result<Option<(IntPoint, Side)>, FlagError> {
    f.validate(p.dim())?;
    for (set, side) in [(p.a(), Side::A), (p.b(), Side::B)] {
        if let Some(x) = set.iter().find(|x| !f.accepts(x, side)) {
            return Ok(Some((x.clone(), side)));
        }
    }
    Ok(None)
}

pub fn verify_flag(p: &Partition, f: &SeparatingFlag) -> Result<bool, FlagError> {
    Ok(flag_violation(p, f)?.is_none())
}

/// Affine subspace `anchor + span(basis)` with rational data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSubspace {
    #[serde(serialize_with = "ser_vec")]
    pub anchor: Vec<Rational>,
    #[serde(serialize_with = "ser_mat")]
    pub basis: Vec<Vec<Rational>>,
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| RationalText(r.clone())))
}

fn ser_mat<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|v| v.iter().map(|r| RationalText(r.clone())).collect::<Vec<_>>()))
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let diff: Vec<Rational> = x.iter().zip(&self.anchor).map(|(a, b)| a - b).collect();
        let mut rows = self.basis.clone();
        let r = exact::rank(&rows);
        rows.push(diff);
        exact::rank(&rows) == r
    }
}

impl fmt::Display for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple = |v: &[Rational]| format!("({})", v.iter().map(exact::format_rational).collect::<Vec<_>>().join(","));
        if self.basis.is_empty() {
            return write!(f, "{{{}}}", tuple(&self.anchor));
        }
        let span: Vec<String> = self.basis.iter().map(|v| tuple(v)).collect();
        write!(f, "{} + span{{{}}}", tuple(&self.anchor), span.join(", "))
    }
}

/// The nested subspaces `H_{d-m} ⊂ … ⊂ H_d = R^d` of a flag, innermost first.
pub fn lex_flag_to_subspace_chain(f: &SeparatingFlag, dim: usize) -> Result<Vec<AffineSubspace>, FlagError> {
    f.validate(dim)?;
    let mut chain = Vec::with_capacity(f.functionals.len() + 1);
    for level in 0..=f.functionals.len() {
        let gs = &f.functionals[..level];
        let rows: Vec<Vec<Rational>> = gs.iter().map(|g| g.normal.clone()).collect();
        let rhs: Vec<Rational> = gs.iter().map(|g| g.offset.clone()).collect();
        let anchor = exact::solve_any(&rows, &rhs, dim).expect("independent normals are consistent");
        let basis = exact::nullspace(&rows, dim);
        chain.push(AffineSubspace { anchor, basis });
    }
    chain.reverse();
    Ok(chain)
}

/// `k'` points of `A` and `k'` points of `B` (multisets, sorted) with the
/// same coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelogramWitness {
    pub a_points: Vec<IntPoint>,
    pub b_points: Vec<IntPoint>,
    pub sum: Vec<i128>,
}

/// Distinct `k'`-fold sums with one representative multiset each, in a
/// deterministic order.
struct SumLevel {
    entries: Vec<(Vec<i128>, Vec<u32>)>,
    index: HashMap<Vec<i128>, usize>,
}

impl SumLevel {
    fn first(points: &[IntPoint]) -> Self {
        let mut level = SumLevel {
            entries: Vec::with_capacity(points.len()),
            index: HashMap::with_capacity(points.len()),
        };
        for (i, p) in points.iter().enumerate() {
            let sum: Vec<i128> = p.coords().iter().map(|&c| c as i128).collect();
            level.index.insert(sum.clone(), level.entries.len());
            level.entries.push((sum, vec![i as u32]));
        }
        level
    }

    fn extend(&self, points: &[IntPoint]) -> Self {
        let mut next = SumLevel {
            entries: Vec::new(),
            index: HashMap::new(),
        };
        let mut buf: Vec<i128> = Vec::new();
        for (sum, rep) in &self.entries {
            for (j, p) in points.iter().enumerate() {
                buf.clear();
                buf.extend(sum.iter().zip(p.coords()).map(|(s, &c)| s + c as i128));
                if next.index.contains_key(buf.as_slice()) {
                    continue;
                }
                let mut multiset = rep.clone();
                let at = multiset.partition_point(|&i| i <= j as u32);
                multiset.insert(at, j as u32);
                next.index.insert(buf.clone(), next.entries.len());
                next.entries.push((buf.clone(), multiset));
            }
        }
        next
    }
}

/// Decides the k-parallelogram condition by comparing the tables of `k'`-fold
/// sums of `A` and `B` for `k' = 1, …, k`. The witness has the smallest `k'`
/// and, among those, the lexicographically smallest common sum.
pub fn check_parallelogram(p: &Partition, k: usize) -> Verdict<(), ParallelogramWitness> {
    assert!(k >= 1, "the parallelogram condition needs k >= 1");
    let a_pts = p.a().points();
    let b_pts = p.b().points();
    let mut la = SumLevel::first(a_pts);
    let mut lb = SumLevel::first(b_pts);
    for level in 1..=k {
        if level > 1 {
            la = la.extend(a_pts);
            lb = lb.extend(b_pts);
        }
        let (small, large, small_is_a) = if la.entries.len() <= lb.entries.len() {
            (&la, &lb, true)
        } else {
            (&lb, &la, false)
        };
        let best = small
            .entries
            .iter()
            .filter_map(|(sum, rep)| large.index.get(sum).map(|&j| (sum, rep, &large.entries[j].1)))
            .min_by(|x, y| x.0.cmp(y.0));
        if let Some((sum, rep_small, rep_large)) = best {
            let (ra, rb) = if small_is_a {
                (rep_small, rep_large)
            } else {
                (rep_large, rep_small)
            };
            return Verdict::Fails(ParallelogramWitness {
                a_points: ra.iter().map(|&i| a_pts[i as usize].clone()).collect(),
                b_points: rb.iter().map(|&i| b_pts[i as usize].clone()).collect(),
                sum: sum.clone(),
            });
        }
    }
    Verdict::Holds(())
}

/// A line on which the `A`-points are not a ray of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayWitness {
    pub direction: Vec<i64>,
    pub trace: Vec<(IntPoint, Side)>,
}

/// Condition R: on every line the colours of the ordered trace change at
/// most once. Equivalently no segment between two points of one side
/// contains a point of the other side, which is what is scanned.
pub fn check_ray(p: &Partition) -> Verdict<(), RayWitness> {
    let s = p.support();
    let pts = s.points();
    let mut buf = vec![0i64; p.dim()];
    for (i, x) in pts.iter().enumerate() {
        let side = p.side_of(x).expect("point of S");
        let other = match side {
            Side::A => p.b(),
            Side::B => p.a(),
        };
        for z in &pts[i + 1..] {
            if p.side_of(z) != Some(side) {
                continue;
            }
            let diff = z.sub(x);
            let g = exact::gcd_all(diff.coords());
            if g < 2 {
                continue;
            }
            let step: Vec<i64> = diff.coords().iter().map(|c| c / g).collect();
            for t in 1..g {
                for (slot, (xc, sc)) in buf.iter_mut().zip(x.coords().iter().zip(&step)) {
                    *slot = xc + t * sc;
                }
                if other.points().binary_search_by(|q| q.coords().cmp(&buf)).is_ok() {
                    return Verdict::Fails(line_witness(p, &s, x, &step));
                }
            }
        }
    }
    Verdict::Holds(())
}

fn line_witness(p: &Partition, s: &PointSet, x: &IntPoint, step: &[i64]) -> RayWitness {
    let direction = exact::canonical_direction(step).expect("nonzero step");
    let j = direction.iter().position(|&c| c != 0).expect("nonzero");
    let mut trace: Vec<(IntPoint, Side)> = s
        .iter()
        .filter(|q| {
            let d = q.sub(x);
            d.coords().iter().all(|&c| c == 0)
                || exact::canonical_direction(d.coords()).as_deref() == Some(direction.as_slice())
        })
        .map(|q| (q.clone(), p.side_of(q).expect("point of S")))
        .collect();
    trace.sort_by_key(|(q, _)| q[j]);
    RayWitness { direction, trace }
}

/// The flat `aff(A' ∪ B')` of a live set in which every weak separator
/// vanishes identically, so no flag can continue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingFlat {
    /// Functionals found before getting stuck.
    pub prefix: Vec<AffineFunctional>,
    pub anchor: IntPoint,
    pub basis: Vec<Vec<i64>>,
    pub a_points: Vec<IntPoint>,
    pub b_points: Vec<IntPoint>,
}

/// A weak separator of `(A', B')` (nonnegative on `A'`, nonpositive on
/// `B'`) that is nonzero on every live point where some weak separator is,
/// scaled to coprime integers. `None` when every weak separator vanishes on
/// all live points.
pub fn relative_interior_separator(a: &[IntPoint], b: &[IntPoint]) -> Option<AffineFunctional> {
    let base = a.first().or_else(|| b.first())?;
    let d = base.dim();
    let m = a.len() + b.len();
    // variables: normal+ (d), normal- (d), offset+, offset-, t (m)
    let nv = 2 * d + 2 + m;
    let mut lp = LinearProgram::<i128>::new(nv);
    let mut objective = vec![0i128; nv];
    for (row, (x, sign)) in a
        .iter()
        .map(|x| (x, 1i128))
        .chain(b.iter().map(|x| (x, -1i128)))
        .enumerate()
    {
        // sign * (n . (x - base) - c) >= t   written as  -sign*(...) + t <= 0
        let mut coeffs = vec![0i128; nv];
        for i in 0..d {
            let v = (x[i] as i128 - base[i] as i128) * sign;
            coeffs[i] = -v;
            coeffs[d + i] = v;
        }
        coeffs[2 * d] = sign;
        coeffs[2 * d + 1] = -sign;
        coeffs[2 * d + 2 + row] = 1;
        lp.add_constraint(coeffs, Relation::Le, 0);
        let mut cap = vec![0i128; nv];
        cap[2 * d + 2 + row] = 1;
        lp.add_constraint(cap, Relation::Le, 1);
        objective[2 * d + 2 + row] = 1;
    }
    lp.maximize(objective);
    let LpOutcome::Optimal(sol) = lp.solve_exact() else {
        unreachable!("zero is feasible and the objective is at most the number of points");
    };
    if sol.objective_numerator.is_zero() {
        return None;
    }
    let normal: Vec<Rational> = (0..d).map(|i| sol.value(i) - sol.value(d + i)).collect();
    let shift = sol.value(2 * d) - sol.value(2 * d + 1);
    let offset = shift + exact::dot(&normal, &base.to_rational());
    Some(AffineFunctional::new(normal, offset).primitive())
}

/// Complete decision procedure for flag separation; see the module docs.
pub fn search_flag(p: &Partition) -> Verdict<SeparatingFlag, BlockingFlat> {
    let mut a_live: Vec<IntPoint> = p.a().points().to_vec();
    let mut b_live: Vec<IntPoint> = p.b().points().to_vec();
    let mut functionals = Vec::new();
    loop {
        let residual = match (a_live.is_empty(), b_live.is_empty()) {
            (true, true) => Some(Residual::Empty),
            (false, true) => Some(Residual::A),
            (true, false) => Some(Residual::B),
            (false, false) => None,
        };
        if let Some(residual) = residual {
            let flag = SeparatingFlag::new(functionals, residual);
            debug_assert_eq!(verify_flag(p, &flag), Ok(true));
            return Verdict::Holds(flag);
        }
        match relative_interior_separator(&a_live, &b_live) {
            Some(g) => {
                a_live.retain(|x| g.eval(x).is_zero());
                b_live.retain(|x| g.eval(x).is_zero());
                functionals.push(g);
            }
            None => {
                let live = PointSet::new(p.dim(), a_live.iter().chain(&b_live).cloned()).expect("same dimension");
                let hull = geometry::affine_hull_basis(&live).expect("nonempty live set");
                return Verdict::Fails(BlockingFlat {
                    prefix: functionals,
                    anchor: hull.anchor,
                    basis: hull.basis,
                    a_points: a_live,
                    b_points: b_live,
                });
            }
        }
    }
}

/// Sum of a multiset of points, exact.
pub fn point_sum(points: &[IntPoint]) -> Vec<BigInt> {
    let d = points.first().map_or(0, IntPoint::dim);
    (0..d).map(|i| points.iter().map(|p| BigInt::from(p[i])).sum()).collect()
}
