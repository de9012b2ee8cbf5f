//! Lattice points, finite point sets and the exact convex-geometry
//! primitives every decision procedure is built on: affine hulls, convex-hull
//! membership, lattice points of a hull, facet descriptions and the lines
//! spanned by a point set.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::exact::{self, Rational, RationalText};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// Largest dimension for which facet descriptions are computed.
pub const MAX_FACET_DIM: usize = 3;

/// A point of the integer lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoint(Vec<i64>);

impl IntPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice points need at least one coordinate");
        IntPoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn origin(dim: usize) -> Self {
        IntPoint(vec![0; dim])
    }

    pub fn add(&self, other: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| exact::rational_from_i64(c)).collect()
    }
}

impl From<&[i64]> for IntPoint {
    fn from(c: &[i64]) -> Self {
        IntPoint::new(c.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IntPoint {
    fn from(c: [i64; N]) -> Self {
        IntPoint::new(c.to_vec())
    }
}

impl std::ops::Index<usize> for IntPoint {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A finite set of lattice points of a fixed dimension, kept sorted
/// lexicographically and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<IntPoint>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = IntPoint>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        let mut points: Vec<IntPoint> = points.into_iter().collect();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    /// Builds a nonempty set, taking the dimension from the first point.
    pub fn from_points(points: impl IntoIterator<Item = IntPoint>) -> Result<Self, GeometryError> {
        let points: Vec<IntPoint> = points.into_iter().collect();
        let dim = points.first().ok_or(GeometryError::Empty)?.dim();
        PointSet::new(dim, points)
    }

    pub fn empty(dim: usize) -> Self {
        PointSet { dim, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IntPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntPoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &IntPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn insert(&mut self, p: IntPoint) -> bool {
        debug_assert_eq!(p.dim(), self.dim);
        match self.points.binary_search(&p) {
            Ok(_) => false,
            Err(i) => {
                self.points.insert(i, p);
                true
            }
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        points.sort_unstable();
        points.dedup();
        PointSet { dim: self.dim, points }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().filter(|p| !other.contains(p)).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn translate(&self, shift: &IntPoint) -> PointSet {
        PointSet::new(self.dim, self.points.iter().map(|p| p.add(shift))).expect("same dimension")
    }

    /// Componentwise minimum and maximum; `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.points.first()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for i in 0..self.dim {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Some((lo, hi))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.points.iter().join(", "))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a IntPoint;
    type IntoIter = std::slice::Iter<'a, IntPoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// All integer points of the box `lo..=hi`, in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<IntPoint> {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    lo.iter()
        .zip(hi)
        .map(|(&l, &h)| l..=h)
        .multi_cartesian_product()
        .map(IntPoint::new)
        .collect()
}

/// `g(x) = <normal, x> - offset`. Serialized with rationals as `"p/q"`
/// strings.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "FunctionalRepr", from = "FunctionalRepr")]
pub struct AffineFunctional {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl AffineFunctional {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        AffineFunctional { normal, offset }
    }

    pub fn from_integers(normal: &[i64], offset: i64) -> Self {
        AffineFunctional {
            normal: normal.iter().map(|&c| exact::rational_from_i64(c)).collect(),
            offset: exact::rational_from_i64(offset),
        }
    }

    pub fn from_big(normal: &[BigInt], offset: &BigInt) -> Self {
        AffineFunctional {
            normal: normal.iter().map(|c| Rational::from_integer(c.clone())).collect(),
            offset: Rational::from_integer(offset.clone()),
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_constant(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &IntPoint) -> Rational {
        let mut acc = -self.offset.clone();
        for (n, &c) in self.normal.iter().zip(x.coords()) {
            if c != 0 && !n.is_zero() {
                acc += n * exact::rational_from_i64(c);
            }
        }
        acc
    }

    pub fn eval_rational(&self, x: &[Rational]) -> Rational {
        exact::dot(&self.normal, x) - &self.offset
    }

    pub fn negate(&self) -> Self {
        AffineFunctional {
            normal: self.normal.iter().map(|c| -c.clone()).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Positive rescaling with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        let mut all = self.normal.clone();
        all.push(self.offset.clone());
        let ints = exact::primitive_integer_vector(&all);
        let (offset, normal) = ints.split_last().expect("nonempty");
        AffineFunctional::from_big(normal, offset)
    }
}

#[derive(Serialize, Deserialize)]
struct FunctionalRepr {
    normal: Vec<RationalText>,
    offset: RationalText,
}

impl From<AffineFunctional> for FunctionalRepr {
    fn from(g: AffineFunctional) -> Self {
        FunctionalRepr {
            normal: g.normal.into_iter().map(RationalText).collect(),
            offset: RationalText(g.offset),
        }
    }
}

impl From<FunctionalRepr> for AffineFunctional {
    fn from(r: FunctionalRepr) -> Self {
        AffineFunctional {
            normal: r.normal.into_iter().map(|t| t.0).collect(),
            offset: r.offset.0,
        }
    }
}

impl fmt::Display for AffineFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() {
                String::new()
            } else if *c == -Rational::one() {
                "-".to_string()
            } else {
                format!("{}*", exact::format_rational(c))
            };
            terms.push(format!("{coeff}x{}", i + 1));
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.offset.is_zero() {
            write!(f, "{body}")
        } else if self.offset.is_negative() {
            write!(f, "{body} + {}", exact::format_rational(&-self.offset.clone()))
        } else {
            write!(f, "{body} - {}", exact::format_rational(&self.offset))
        }
    }
}

/// Anchor point plus a maximal linearly independent family of difference
/// vectors spanning the affine hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineHull {
    pub anchor: IntPoint,
    pub basis: Vec<Vec<i64>>,
}

impl AffineHull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn affine_hull_basis(s: &PointSet) -> Result<AffineHull, GeometryError> {
    let anchor = s.points().first().ok_or(GeometryError::Empty)?.clone();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut reduced: Vec<Vec<Rational>> = Vec::new();
    for p in &s.points()[1..] {
        if basis.len() == s.dim() {
            break;
        }
        let diff = p.sub(&anchor);
        let mut rows = reduced.clone();
        rows.push(diff.to_rational());
        let pivots = exact::rref(&mut rows);
        if pivots.len() > basis.len() {
            basis.push(diff.coords().to_vec());
            reduced = rows;
        }
    }
    Ok(AffineHull { anchor, basis })
}

fn check_dim(s: &PointSet, dim: usize) -> Result<(), GeometryError> {
    if s.dim() != dim {
        return Err(GeometryError::DimensionMismatch {
            expected: s.dim(),
            found: dim,
        });
    }
    Ok(())
}

fn membership_program(x: &[Rational], points: &[IntPoint]) -> LinearProgram<BigInt> {
    let n = points.len();
    let mut lp = LinearProgram::<BigInt>::new(n);
    lp.add_constraint(vec![BigInt::one(); n], Relation::Eq, BigInt::one());
    for (i, xi) in x.iter().enumerate() {
        let den = xi.denom();
        let coeffs = points.iter().map(|p| BigInt::from(p[i]) * den).collect();
        lp.add_constraint(coeffs, Relation::Eq, xi.numer().clone());
    }
    lp
}

fn outside_box(x: &[Rational], s: &PointSet) -> bool {
    let Some((lo, hi)) = s.bounding_box() else {
        return true;
    };
    x.iter().enumerate().any(|(i, xi)| {
        *xi < exact::rational_from_i64(lo[i]) || *xi > exact::rational_from_i64(hi[i])
    })
}

/// Weights of a convex combination of points of `s` equal to `x`, if one
/// exists. The combination is a basic solution, so at most `dim + 1` weights
/// are nonzero.
pub fn convex_combination(
    x: &[Rational],
    s: &PointSet,
) -> Result<Option<Vec<(IntPoint, Rational)>>, GeometryError> {
    check_dim(s, x.len())?;
    if s.is_empty() {
        return Err(GeometryError::Empty);
    }
    if outside_box(x, s) {
        return Ok(None);
    }
    match membership_program(x, s.points()).solve_exact() {
        LpOutcome::Optimal(sol) => Ok(Some(
            s.points()
                .iter()
                .enumerate()
                .filter(|(j, _)| !sol.numerators[*j].is_zero())
                .map(|(j, p)| (p.clone(), sol.value(j)))
                .collect(),
        )),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("feasibility problem has a zero objective"),
    }
}

/// Exact convex-hull membership via linear feasibility.
pub fn point_in_conv(x: &[Rational], s: &PointSet) -> Result<bool, GeometryError> {
    Ok(convex_combination(x, s)?.is_some())
}

pub fn lattice_point_in_conv(x: &IntPoint, s: &PointSet) -> Result<bool, GeometryError> {
    check_dim(s, x.dim())?;
    if s.contains(x) {
        return Ok(true);
    }
    point_in_conv(&x.to_rational(), s)
}

/// `conv(S) ∩ Z^d`, by scanning the bounding box of `S`.
pub fn lattice_points_in_conv(s: &PointSet) -> Result<PointSet, GeometryError> {
    let (lo, hi) = s.bounding_box().ok_or(GeometryError::Empty)?;
    let mut out = Vec::new();
    for p in box_points(&lo, &hi) {
        if s.contains(&p) || point_in_conv(&p.to_rational(), s)? {
            out.push(p);
        }
    }
    PointSet::new(s.dim(), out)
}

/// Whether `z ∈ conv(t)` for an affinely independent `t`. Returns `None`
/// when `t` is affinely dependent (then its hull is covered by smaller
/// subsets).
pub fn simplex_contains(z: &IntPoint, t: &[&IntPoint]) -> Option<bool> {
    let d = z.dim();
    let m = t.len().checked_sub(1)?;
    if m > d {
        return None;
    }
    for i in 0..d {
        let (lo, hi) = t.iter().map(|p| p[i]).minmax().into_option()?;
        if z[i] < lo || z[i] > hi {
            return Some(false);
        }
    }
    if m == 0 {
        return Some(z == t[0]);
    }
    match simplex_contains_i128(z, t, m) {
        Ok(answer) => answer,
        Err(()) => {
            // Overflow: decide with the exact LP route instead.
            let pts: Vec<IntPoint> = t.iter().map(|p| (*p).clone()).collect();
            let hull = affine_hull_basis(&PointSet::new(d, pts.clone()).ok()?).ok()?;
            if hull.dim() < m {
                return None;
            }
            Some(point_in_conv(&z.to_rational(), &PointSet::new(d, pts).ok()?).ok()?)
        }
    }
}

fn simplex_contains_i128(z: &IntPoint, t: &[&IntPoint], m: usize) -> Result<Option<bool>, ()> {
    let d = z.dim();
    let base = t[0];
    let cols: Vec<Vec<i128>> = t[1..]
        .iter()
        .map(|p| (0..d).map(|i| p[i] as i128 - base[i] as i128).collect())
        .collect();
    let rhs: Vec<i128> = (0..d).map(|i| z[i] as i128 - base[i] as i128).collect();
    for rows in (0..d).combinations(m) {
        let minor = |replace: Option<usize>| -> Vec<Vec<i128>> {
            rows.iter()
                .map(|&r| {
                    (0..m)
                        .map(|c| if Some(c) == replace { rhs[r] } else { cols[c][r] })
                        .collect()
                })
                .collect()
        };
        let mut den = exact::det_i128(minor(None)).ok_or(())?;
        if den == 0 {
            continue;
        }
        let mut nums = (0..m)
            .map(|c| exact::det_i128(minor(Some(c))).ok_or(()))
            .collect::<Result<Vec<_>, _>>()?;
        if den < 0 {
            den = -den;
            for n in nums.iter_mut() {
                *n = n.checked_neg().ok_or(())?;
            }
        }
        for r in (0..d).filter(|r| !rows.contains(r)) {
            let mut lhs = 0i128;
            for c in 0..m {
                lhs = lhs.checked_add(cols[c][r].checked_mul(nums[c]).ok_or(())?).ok_or(())?;
            }
            if lhs != rhs[r].checked_mul(den).ok_or(())? {
                return Ok(Some(false));
            }
        }
        let mut total = 0i128;
        for &n in &nums {
            if n < 0 {
                return Ok(Some(false));
            }
            total = total.checked_add(n).ok_or(())?;
        }
        return Ok(Some(total <= den));
    }
    Ok(None)
}

/// Vertices of `conv(S)`: points not in the hull of the others.
pub fn hull_vertices(s: &PointSet) -> Result<Vec<IntPoint>, GeometryError> {
    if s.is_empty() {
        return Err(GeometryError::Empty);
    }
    let mut out = Vec::new();
    for p in s.points() {
        let rest = PointSet::new(s.dim(), s.points().iter().filter(|q| *q != p).cloned())?;
        if rest.is_empty() || !point_in_conv(&p.to_rational(), &rest)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// H-description of `conv(S)`: `equations` vanish on the affine hull,
/// `facets` are nonnegative on `conv(S)` and vanish on a facet each. All
/// functionals have coprime integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullDescription {
    pub equations: Vec<AffineFunctional>,
    pub facets: Vec<AffineFunctional>,
}

impl HullDescription {
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|g| g.eval_rational(x).is_zero())
            && self.facets.iter().all(|g| !g.eval_rational(x).is_negative())
    }
}

pub fn hull_description(s: &PointSet) -> Result<HullDescription, GeometryError> {
    if s.dim() > MAX_FACET_DIM {
        return Err(GeometryError::UnsupportedDimension {
            dim: s.dim(),
            max: MAX_FACET_DIM,
        });
    }
    let hull = affine_hull_basis(s)?;
    let d = s.dim();
    let r = hull.dim();
    let basis: Vec<Vec<Rational>> = hull
        .basis
        .iter()
        .map(|v| v.iter().map(|&c| exact::rational_from_i64(c)).collect())
        .collect();
    let anchor = hull.anchor.to_rational();

    let functional_through = |normal: Vec<Rational>, at: &[Rational]| {
        let offset = exact::dot(&normal, at);
        AffineFunctional::new(normal, offset).primitive()
    };

    let equations = if r == 0 {
        (0..d)
            .map(|i| {
                let mut e = vec![Rational::zero(); d];
                e[i] = Rational::one();
                functional_through(e, &anchor)
            })
            .collect()
    } else {
        exact::nullspace(&basis, d)
            .into_iter()
            .map(|n| functional_through(n, &anchor))
            .collect()
    };

    let mut facets = BTreeSet::new();
    if r > 0 {
        let vertices = hull_vertices(s)?;
        for combo in vertices.iter().combinations(r) {
            let p0 = combo[0].to_rational();
            // normal = basis^T alpha, orthogonal to the other vertices' offsets
            let constraints: Vec<Vec<Rational>> = combo[1..]
                .iter()
                .map(|p| {
                    let w: Vec<Rational> = p.to_rational().iter().zip(&p0).map(|(a, b)| a - b).collect();
                    basis.iter().map(|v| exact::dot(&w, v)).collect()
                })
                .collect();
            let ns = exact::nullspace(&constraints, r);
            if ns.len() != 1 {
                continue;
            }
            let alpha = &ns[0];
            let normal: Vec<Rational> = (0..d)
                .map(|i| (0..r).map(|j| &alpha[j] * &basis[j][i]).sum())
                .collect();
            let mut g = functional_through(normal, &p0);
            let signs: Vec<i32> = vertices.iter().map(|v| exact::sign_of(&g.eval(v))).collect();
            if signs.contains(&1) && signs.contains(&-1) {
                continue;
            }
            if signs.contains(&-1) {
                g = g.negate();
            }
            facets.insert(FunctionalKey::from(&g));
        }
    }
    Ok(HullDescription {
        equations,
        facets: facets.into_iter().map(|k| k.0).collect(),
    })
}

#[derive(PartialEq, Eq)]
struct FunctionalKey(AffineFunctional);

impl From<&AffineFunctional> for FunctionalKey {
    fn from(g: &AffineFunctional) -> Self {
        FunctionalKey(g.clone())
    }
}

impl Ord for FunctionalKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .normal
            .cmp(&other.0.normal)
            .then_with(|| self.0.offset.cmp(&other.0.offset))
    }
}

impl PartialOrd for FunctionalKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Functionals `g` with `conv(S) = {x | g(x) >= 0 for all g}`. When `S` is
/// not full-dimensional each affine-hull equation appears with both signs.
pub fn hull_facets(s: &PointSet) -> Result<Vec<AffineFunctional>, GeometryError> {
    let desc = hull_description(s)?;
    let mut out = desc.facets;
    for e in desc.equations {
        out.push(e.negate());
        out.push(e);
    }
    Ok(out)
}

/// A line through at least two points of a set, with the points on it in
/// increasing order along `direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line {
    pub base: IntPoint,
    pub direction: Vec<i64>,
    pub trace: Vec<IntPoint>,
}

/// Calls `f` on every line containing at least two points of `s`, grouped by
/// direction (directions in increasing order). Stops early on `Break`.
pub fn for_each_line<B>(s: &PointSet, mut f: impl FnMut(Line) -> ControlFlow<B>) -> Option<B> {
    let pts = s.points();
    let mut directions: HashSet<Vec<i64>> = HashSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let diff = q.sub(p);
            directions.insert(exact::canonical_direction(diff.coords()).expect("distinct points"));
        }
    }
    let mut directions: Vec<Vec<i64>> = directions.into_iter().collect();
    directions.sort_unstable();
    for dir in directions {
        let j = dir.iter().position(|&c| c != 0).expect("nonzero direction");
        let step = dir[j];
        let mut groups: HashMap<Vec<i64>, Vec<IntPoint>> = HashMap::new();
        for p in pts {
            let t = p[j].div_euclid(step);
            let key: Vec<i64> = p.coords().iter().zip(&dir).map(|(c, v)| c - t * v).collect();
            groups.entry(key).or_default().push(p.clone());
        }
        let mut lines: Vec<Vec<IntPoint>> = groups.into_values().filter(|g| g.len() >= 2).collect();
        for g in lines.iter_mut() {
            g.sort_by_key(|p| p[j]);
        }
        lines.sort_unstable();
        for trace in lines {
            let line = Line {
                base: trace[0].clone(),
                direction: dir.clone(),
                trace,
            };
            if let ControlFlow::Break(b) = f(line) {
                return Some(b);
            }
        }
    }
    None
}

pub fn lines_through(s: &PointSet) -> Vec<Line> {
    let mut out = Vec::new();
    for_each_line::<()>(s, |line| {
        out.push(line);
        ControlFlow::Continue(())
    });
    out
}

/// Integer value of a functional at a lattice point, if it has integer
/// coefficients (always true for search output and facets).
pub fn eval_integral(g: &AffineFunctional, x: &IntPoint) -> Option<BigInt> {
    let v = g.eval(x);
    v.is_integer().then(|| v.to_integer())
}

/// Converts a rational vector to lattice coordinates when it is integral.
pub fn to_lattice_point(x: &[Rational]) -> Option<IntPoint> {
    x.iter()
        .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
        .collect::<Option<Vec<_>>>()
        .map(IntPoint::new)
}
