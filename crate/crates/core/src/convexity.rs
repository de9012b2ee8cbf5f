//! k-convexity, k-convex hulls, hole-freeness, integral convexity and the
//! classification of holes by the first k that fills them.
//!
//! # Integral convexity via unit cells
//!
//! `S` is integrally convex when every `x ∈ conv(S)` is a convex combination
//! of points of `S ∩ N(x)`, where `N(x)` is the set of lattice points at
//! distance `< 1` from `x` in every coordinate. Let `C = z + [0,1]^d` be a unit
//! cell containing `x` and `F` the smallest face of `C` containing `x`; then
//! `N(x) = vert(F)`. A convex combination of vertices of `C` that lands in `F`
//! only uses vertices of `F` (the face is cut out by a supporting
//! hyperplane of the cube), so `x ∈ conv(S ∩ vert(C))` iff
//! `x ∈ conv(S ∩ N(x))`. Hence `S` is integrally convex iff for every cell `C`
//! the polytope `conv(S) ∩ C` lies in `conv(S ∩ vert(C))`, and it suffices to
//! test the finitely many vertices of `conv(S) ∩ C`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::GeometryError;
use crate::exact::{self, Rational};
use crate::geometry::{
    self, affine_hull_basis, box_points, lattice_points_in_conv, AffineFunctional, IntPoint,
    PointSet,
};
use crate::verdict::Verdict;

/// A set `T` of at most `k + 1` points whose hull contains a lattice point
/// missing from the set under test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KConvexWitness {
    pub subset: Vec<IntPoint>,
    pub missing: IntPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellWitness {
    /// Lower corner of the offending unit cell.
    pub cell: IntPoint,
    /// A vertex of `conv(S) ∩ cell` outside `conv(S ∩ vert(cell))`.
    #[serde(serialize_with = "serialize_rationals")]
    pub vertex: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(exact::format_rational))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleReport {
    pub hole: IntPoint,
    pub first_k: usize,
}

/// Some `T ⊆ points` with `|T| <= max_size` and `z ∈ conv(T)`. Smaller
/// subsets are tried first; among equal sizes the lexicographically first
/// one wins, except when `max_size` exceeds the affine dimension, where
/// Carathéodory lets a single feasibility problem decide.
fn find_cover(
    z: &IntPoint,
    points: &PointSet,
    max_size: usize,
    aff_dim: usize,
) -> Result<Option<Vec<IntPoint>>, GeometryError> {
    if max_size > aff_dim {
        return Ok(geometry::convex_combination(&z.to_rational(), points)?
            .map(|support| support.into_iter().map(|(p, _)| p).collect()));
    }
    let pts = points.points();
    for size in 2..=max_size.min(pts.len()) {
        for t in pts.iter().combinations(size) {
            if geometry::simplex_contains(z, &t) == Some(true) {
                return Ok(Some(t.into_iter().cloned().collect()));
            }
        }
    }
    Ok(None)
}

fn check_k(k: usize) {
    assert!(k >= 1, "k-convexity needs k >= 1");
}

/// Whether every lattice point in the hull of at most `k + 1` points of `S`
/// belongs to `S`. The witness is the lexicographically first missing point.
pub fn is_k_convex(s: &PointSet, k: usize) -> Result<Verdict<(), KConvexWitness>, GeometryError> {
    check_k(k);
    let full = lattice_points_in_conv(s)?;
    let aff_dim = affine_hull_basis(s)?.dim();
    for z in full.iter().filter(|z| !s.contains(z)) {
        if let Some(subset) = find_cover(z, s, k + 1, aff_dim)? {
            return Ok(Verdict::Fails(KConvexWitness {
                subset,
                missing: z.clone(),
            }));
        }
    }
    Ok(Verdict::Holds(()))
}

/// Smallest k-convex superset of `S`, as the fixed point of adding every
/// lattice point covered by at most `k + 1` current points.
pub fn k_convex_hull(s: &PointSet, k: usize) -> Result<PointSet, GeometryError> {
    check_k(k);
    let full = lattice_points_in_conv(s)?;
    let aff_dim = affine_hull_basis(s)?.dim();
    if k >= aff_dim {
        return Ok(full);
    }
    let mut current = s.clone();
    loop {
        let mut added = false;
        for z in full.iter() {
            if !current.contains(z) && find_cover(z, &current, k + 1, aff_dim)?.is_some() {
                current.insert(z.clone());
                added = true;
            }
        }
        if !added {
            return Ok(current);
        }
    }
}

/// `S = conv(S) ∩ Z^d`; the witness is the first missing lattice point.
pub fn is_hole_free(s: &PointSet) -> Result<Verdict<(), IntPoint>, GeometryError> {
    let full = lattice_points_in_conv(s)?;
    Ok(match full.iter().find(|p| !s.contains(p)) {
        Some(p) => Verdict::Fails(p.clone()),
        None => Verdict::Holds(()),
    })
}

/// Every hole of `A` with the least k placing it in the k-convex hull.
pub fn classify_holes(a: &PointSet) -> Result<Vec<HoleReport>, GeometryError> {
    let full = lattice_points_in_conv(a)?;
    let mut pending: Vec<IntPoint> = full.iter().filter(|p| !a.contains(p)).cloned().collect();
    let mut reports = Vec::new();
    let mut k = 1;
    while !pending.is_empty() {
        assert!(k <= a.dim(), "hole outside the d-convex hull contradicts Carathéodory");
        let hull = k_convex_hull(a, k)?;
        pending.retain(|z| {
            if hull.contains(z) {
                reports.push(HoleReport {
                    hole: z.clone(),
                    first_k: k,
                });
                false
            } else {
                true
            }
        });
        k += 1;
    }
    reports.sort_by(|x, y| x.hole.cmp(&y.hole));
    Ok(reports)
}

/// Integer constraint `<n, x> >= c` (or `= c`).
struct Halfspace {
    normal: Vec<i128>,
    bound: i128,
}

fn integer_halfspace(g: &AffineFunctional) -> Option<Halfspace> {
    let normal = g
        .normal
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer().to_i128()).flatten())
        .collect::<Option<Vec<_>>>()?;
    let bound = g.offset.is_integer().then(|| g.offset.to_integer().to_i128()).flatten()?;
    Some(Halfspace { normal, bound })
}

/// Vertices of `{x | eqs(x) = 0, ineqs(x) >= 0}` by solving every square
/// subsystem; vertices are returned in sorted order.
fn polytope_vertices(eqs: &[Halfspace], ineqs: &[Halfspace], d: usize) -> BTreeSet<Vec<Rational>> {
    let mut out = BTreeSet::new();
    debug_assert!(eqs.len() <= d);
    for chosen in (0..ineqs.len()).combinations(d - eqs.len()) {
        let tight: Vec<&Halfspace> = eqs.iter().chain(chosen.iter().map(|&i| &ineqs[i])).collect();
        if let Some(v) = solve_tight(&tight, d) {
            if satisfies(&v, eqs, ineqs) {
                out.insert(v);
            }
        }
    }
    out
}

fn solve_tight(tight: &[&Halfspace], d: usize) -> Option<Vec<Rational>> {
    let a: Vec<Vec<i128>> = tight.iter().map(|h| h.normal.clone()).collect();
    let den = exact::det_int(&a);
    if den.is_zero() {
        return None;
    }
    let coords = (0..d)
        .map(|j| {
            let replaced: Vec<Vec<i128>> = tight
                .iter()
                .map(|h| {
                    let mut row = h.normal.clone();
                    row[j] = h.bound;
                    row
                })
                .collect();
            Rational::new(exact::det_int(&replaced), den.clone())
        })
        .collect();
    Some(coords)
}

fn value(h: &Halfspace, x: &[Rational]) -> Rational {
    let mut acc = Rational::from_integer(BigInt::from(-h.bound));
    for (n, xi) in h.normal.iter().zip(x) {
        if *n != 0 {
            acc += xi * Rational::from_integer(BigInt::from(*n));
        }
    }
    acc
}

fn satisfies(x: &[Rational], eqs: &[Halfspace], ineqs: &[Halfspace]) -> bool {
    eqs.iter().all(|h| value(h, x).is_zero()) && ineqs.iter().all(|h| !value(h, x).is_negative())
}

/// Unit-cell test for integral convexity (see the module docs).
pub fn is_integrally_convex(s: &PointSet) -> Result<Verdict<(), CellWitness>, GeometryError> {
    let desc = geometry::hull_description(s)?;
    let d = s.dim();
    let to_int = |g: &AffineFunctional| integer_halfspace(g).expect("hull functionals are integral");
    let eqs: Vec<Halfspace> = desc.equations.iter().map(to_int).collect();
    let facets: Vec<Halfspace> = desc.facets.iter().map(to_int).collect();
    let (lo, hi) = s.bounding_box().ok_or(GeometryError::Empty)?;
    let top: Vec<i64> = lo.iter().zip(&hi).map(|(&l, &h)| (h - 1).max(l)).collect();

    for cell in box_points(&lo, &top) {
        let mut ineqs: Vec<Halfspace> = Vec::with_capacity(facets.len() + 2 * d);
        for h in &facets {
            ineqs.push(Halfspace {
                normal: h.normal.clone(),
                bound: h.bound,
            });
        }
        for i in 0..d {
            let mut e = vec![0i128; d];
            e[i] = 1;
            ineqs.push(Halfspace {
                normal: e.clone(),
                bound: cell[i] as i128,
            });
            e[i] = -1;
            ineqs.push(Halfspace {
                normal: e,
                bound: -(cell[i] as i128) - 1,
            });
        }
        let vertices = polytope_vertices(&eqs, &ineqs, d);
        if vertices.is_empty() {
            continue;
        }
        let upper: Vec<i64> = cell.coords().iter().map(|c| c + 1).collect();
        let corners = PointSet::new(
            d,
            box_points(cell.coords(), &upper).into_iter().filter(|p| s.contains(p)),
        )?;
        for v in vertices {
            let inside = match geometry::to_lattice_point(&v) {
                Some(p) if corners.contains(&p) => true,
                _ => !corners.is_empty() && geometry::point_in_conv(&v, &corners)?,
            };
            if !inside {
                return Ok(Verdict::Fails(CellWitness { cell, vertex: v }));
            }
        }
    }
    Ok(Verdict::Holds(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::from_points(pts.iter().map(|p| IntPoint::from(*p))).unwrap()
    }

    fn simplex(v: &[&[i64]]) -> PointSet {
        lattice_points_in_conv(&set(v)).unwrap()
    }

    #[test]
    fn singleton_is_k_convex_for_all_k() {
        let s = set(&[&[3, -1]]);
        for k in 1..4 {
            assert!(is_k_convex(&s, k).unwrap().holds());
        }
    }

    #[test]
    fn box_543_minus_centroid_is_one_but_not_two_convex() {
        let full = simplex(&[&[0, 0, 0], &[5, 0, 0], &[0, 4, 0], &[0, 0, 3]]);
        let mut a = full.clone();
        a = a.difference(&PointSet::new(3, vec![IntPoint::from([2, 1, 1])]).unwrap());
        assert!(is_k_convex(&a, 1).unwrap().holds());
        let verdict = is_k_convex(&a, 2).unwrap();
        let w = verdict.counterexample().unwrap();
        assert_eq!(w.missing, IntPoint::from([2, 1, 1]));
        assert_eq!(w.subset.len(), 3);
        // the full simplex itself is hole free, hence k-convex for every k
        assert!(is_k_convex(&full, 2).unwrap().holds());
    }

    #[test]
    fn two_point_gap() {
        let s = set(&[&[0, 0], &[2, 0]]);
        assert_eq!(is_hole_free(&s).unwrap(), Verdict::Fails(IntPoint::from([1, 0])));
        let w = is_k_convex(&s, 1).unwrap();
        assert_eq!(w.counterexample().unwrap().subset, vec![IntPoint::from([0, 0]), IntPoint::from([2, 0])]);
        assert_eq!(k_convex_hull(&s, 1).unwrap().len(), 3);
    }

    #[test]
    fn hull_tower_of_13_7_4_simplex() {
        let s = set(&[&[0, 0, 0], &[13, 0, 0], &[0, 7, 0], &[0, 0, 4]]);
        let h1 = k_convex_hull(&s, 1).unwrap();
        let h2 = k_convex_hull(&s, 2).unwrap();
        let h3 = k_convex_hull(&s, 3).unwrap();
        assert_eq!(h2.difference(&h1).points(), &[IntPoint::from([4, 3, 1])]);
        assert!(h3.contains(&IntPoint::from([6, 2, 1])));
        assert!(!h2.contains(&IntPoint::from([6, 2, 1])));
        assert!(h1.is_subset(&h2) && h2.is_subset(&h3));
        assert!(!is_k_convex(&h2, 3).unwrap().holds());
        assert!(is_k_convex(&h2, 2).unwrap().holds());

        let reports = classify_holes(&s).unwrap();
        let first = |p: [i64; 3]| reports.iter().find(|r| r.hole == IntPoint::from(p)).unwrap().first_k;
        assert_eq!(first([4, 3, 1]), 2);
        assert_eq!(first([6, 2, 1]), 3);
    }

    #[test]
    fn hole_free_has_empty_report() {
        let s = simplex(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert!(classify_holes(&s).unwrap().is_empty());
    }

    #[test]
    fn integral_convexity_small_cases() {
        assert!(is_integrally_convex(&set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap().holds());
        assert!(is_integrally_convex(&set(&[&[0, 0], &[1, 1]])).unwrap().holds());
        let v = is_integrally_convex(&set(&[&[0, 0], &[2, 1]])).unwrap();
        assert!(!v.holds());
        let grid = PointSet::new(2, box_points(&[0, 0], &[2, 2])).unwrap();
        assert!(is_integrally_convex(&grid).unwrap().holds());
        assert!(is_integrally_convex(&set(&[&[4]])).unwrap().holds());
        assert!(!is_integrally_convex(&set(&[&[0], &[2]])).unwrap().holds());
    }

    #[test]
    fn fano_simplex_is_hole_free_but_not_integrally_convex() {
        let s = simplex(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[-1, -1, -1]]);
        assert_eq!(s.len(), 5);
        assert!(is_hole_free(&s).unwrap().holds());
        assert!(!is_integrally_convex(&s).unwrap().holds());
    }

    #[test]
    fn integral_convexity_rejects_dimension_four() {
        let s = set(&[&[0, 0, 0, 0], &[1, 0, 0, 0]]);
        assert!(matches!(
            is_integrally_convex(&s),
            Err(GeometryError::UnsupportedDimension { dim: 4, max: 3 })
        ));
    }
}
