//! Lattice triangles with primitive edges and the equal-sum triple of
//! interior points that every such triangle with an interior lattice point
//! carries.
//!
//! After translating `a3` to the origin fix perpendiculars with
//! `<a1, a1⊥> = 0 < <a2, a1⊥>` and `<a2, a2⊥> = 0 < <a1, a2⊥>`. With `B` the
//! interior lattice points, take `b1` maximizing `<b - a1, a2⊥>` and `b2`
//! maximizing `<b - a2, a1⊥>` over `B`; then `b3 = a1 + a2 - b1 - b2` lies in
//! `B` as well, so `a1 + a2 + a3 = b1 + b2 + b3`.

use itertools::Itertools;
use serde::Serialize;

use crate::error::ConstructionError;
use crate::exact;
use crate::geometry::{IntPoint, PointSet};

/// A nondegenerate planar lattice triangle whose edges contain no lattice
/// points besides their endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalTriangle {
    pub a1: IntPoint,
    pub a2: IntPoint,
    pub a3: IntPoint,
}

fn cross(o: &IntPoint, p: &IntPoint, q: &IntPoint) -> i128 {
    let (px, py) = (p[0] as i128 - o[0] as i128, p[1] as i128 - o[1] as i128);
    let (qx, qy) = (q[0] as i128 - o[0] as i128, q[1] as i128 - o[1] as i128);
    px * qy - py * qx
}

fn primitive_edge(p: &IntPoint, q: &IntPoint) -> bool {
    exact::gcd_all(q.sub(p).coords()) == 1
}

impl MinimalTriangle {
    pub fn new(a1: IntPoint, a2: IntPoint, a3: IntPoint) -> Result<Self, ConstructionError> {
        if [&a1, &a2, &a3].iter().any(|p| p.dim() != 2) {
            return Err(ConstructionError::NotPlanar);
        }
        if cross(&a1, &a2, &a3) == 0 {
            return Err(ConstructionError::Collinear);
        }
        for (p, q) in [(&a1, &a2), (&a2, &a3), (&a1, &a3)] {
            if !primitive_edge(p, q) {
                return Err(ConstructionError::EdgeNotPrimitive(p.clone(), q.clone()));
            }
        }
        Ok(MinimalTriangle { a1, a2, a3 })
    }

    pub fn vertices(&self) -> [&IntPoint; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    /// Twice the area.
    pub fn double_area(&self) -> i128 {
        cross(&self.a1, &self.a2, &self.a3).abs()
    }

    /// Lattice points of the triangle other than its vertices; with
    /// primitive edges these are exactly the interior lattice points.
    pub fn interior_points(&self) -> Vec<IntPoint> {
        let orient = cross(&self.a1, &self.a2, &self.a3).signum();
        let lo: Vec<i64> = (0..2).map(|i| self.vertices().iter().map(|p| p[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..2).map(|i| self.vertices().iter().map(|p| p[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let z = IntPoint::from([x, y]);
                let inside = [(&self.a1, &self.a2), (&self.a2, &self.a3), (&self.a3, &self.a1)]
                    .iter()
                    .all(|(p, q)| cross(p, q, &z) * orient > 0);
                if inside {
                    out.push(z);
                }
            }
        }
        out
    }

    fn perpendiculars(&self) -> ([i128; 2], [i128; 2]) {
        let a1 = [self.a1[0] as i128 - self.a3[0] as i128, self.a1[1] as i128 - self.a3[1] as i128];
        let a2 = [self.a2[0] as i128 - self.a3[0] as i128, self.a2[1] as i128 - self.a3[1] as i128];
        let dot = |u: [i128; 2], v: [i128; 2]| u[0] * v[0] + u[1] * v[1];
        let mut p1 = [-a1[1], a1[0]];
        if dot(a2, p1) < 0 {
            p1 = [-p1[0], -p1[1]];
        }
        let mut p2 = [-a2[1], a2[0]];
        if dot(a1, p2) < 0 {
            p2 = [-p2[0], -p2[1]];
        }
        (p1, p2)
    }

    /// All maximizers for the choice of `b1` and of `b2`, each sorted
    /// lexicographically.
    pub fn maximizers(&self) -> Result<(Vec<IntPoint>, Vec<IntPoint>), ConstructionError> {
        let interior = self.interior_points();
        if interior.is_empty() {
            return Err(ConstructionError::NoInteriorPoints);
        }
        let (p1, p2) = self.perpendiculars();
        let score = |b: &IntPoint, a: &IntPoint, perp: [i128; 2]| {
            (b[0] as i128 - a[0] as i128) * perp[0] + (b[1] as i128 - a[1] as i128) * perp[1]
        };
        let argmax = |a: &IntPoint, perp: [i128; 2]| -> Vec<IntPoint> {
            let best = interior.iter().map(|b| score(b, a, perp)).max().expect("nonempty");
            interior.iter().filter(|b| score(b, a, perp) == best).cloned().collect()
        };
        Ok((argmax(&self.a1, p2), argmax(&self.a2, p1)))
    }

    /// `b3 = a1 + a2 + a3 - b1 - b2`.
    pub fn complete_triple(&self, b1: &IntPoint, b2: &IntPoint) -> IntPoint {
        self.a1.add(&self.a2).add(&self.a3).sub(b1).sub(b2)
    }
}

/// Interior points `(b1, b2, b3)` with `a1 + a2 + a3 = b1 + b2 + b3`; argmax
/// ties go to the lexicographically smallest point.
pub fn equal_sum_triple(t: &MinimalTriangle) -> Result<(IntPoint, IntPoint, IntPoint), ConstructionError> {
    let (m1, m2) = t.maximizers()?;
    let b1 = m1[0].clone();
    let b2 = m2[0].clone();
    let b3 = t.complete_triple(&b1, &b2);
    Ok((b1, b2, b3))
}

/// Triangles with vertices in `A`, primitive edges and no further point of
/// `A` in their closure.
pub fn find_minimal_triangles(a: &PointSet) -> Vec<MinimalTriangle> {
    if a.dim() != 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for tri in a.points().iter().combinations(3) {
        let Ok(t) = MinimalTriangle::new(tri[0].clone(), tri[1].clone(), tri[2].clone()) else {
            continue;
        };
        let orient = cross(&t.a1, &t.a2, &t.a3).signum();
        let covers_other = a.iter().any(|z| {
            !tri.contains(&z)
                && [(&t.a1, &t.a2), (&t.a2, &t.a3), (&t.a3, &t.a1)]
                    .iter()
                    .all(|(p, q)| cross(p, q, z) * orient >= 0)
        });
        if !covers_other {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> MinimalTriangle {
        MinimalTriangle::new(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn rejects_degenerate_input() {
        let e = MinimalTriangle::new([0, 0].into(), [1, 1].into(), [2, 2].into());
        assert_eq!(e, Err(ConstructionError::Collinear));
        let e = MinimalTriangle::new([0, 0].into(), [2, 0].into(), [0, 1].into());
        assert!(matches!(e, Err(ConstructionError::EdgeNotPrimitive(..))));
        let e = MinimalTriangle::new([0, 0, 0].into(), [1, 0, 0].into(), [0, 1, 0].into());
        assert_eq!(e, Err(ConstructionError::NotPlanar));
    }

    #[test]
    fn unimodular_triangle_has_no_triple() {
        let t = tri([0, 0], [1, 0], [0, 1]);
        assert_eq!(equal_sum_triple(&t), Err(ConstructionError::NoInteriorPoints));
    }

    #[test]
    fn single_interior_point_forces_the_triple() {
        let t = tri([0, 0], [2, 1], [1, 2]);
        assert_eq!(t.interior_points(), vec![IntPoint::from([1, 1])]);
        let (b1, b2, b3) = equal_sum_triple(&t).unwrap();
        assert_eq!([b1, b2, b3], [IntPoint::from([1, 1]), IntPoint::from([1, 1]), IntPoint::from([1, 1])]);
    }

    #[test]
    fn every_maximizer_pair_completes() {
        // (0,0),(5,1),(1,5) is not minimal: its third edge has step (-1,1)
        let bad = MinimalTriangle::new([0, 0].into(), [5, 1].into(), [1, 5].into());
        assert!(matches!(bad, Err(ConstructionError::EdgeNotPrimitive(..))));
        let t = tri([0, 0], [5, 1], [2, 5]);
        let interior = t.interior_points();
        let (m1, m2) = t.maximizers().unwrap();
        for b1 in &m1 {
            for b2 in &m2 {
                let b3 = t.complete_triple(b1, b2);
                assert!(interior.contains(&b3));
                assert_eq!(b1.add(b2).add(&b3), IntPoint::from([7, 6]));
            }
        }
    }

    #[test]
    fn minimal_triangles_of_small_sets() {
        let a = PointSet::from_points([[0, 0].into(), [2, 1].into(), [1, 2].into()]).unwrap();
        assert_eq!(find_minimal_triangles(&a).len(), 1);
        let square = PointSet::from_points([[0, 0].into(), [1, 0].into(), [0, 1].into(), [1, 1].into()]).unwrap();
        let found = find_minimal_triangles(&square);
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|t| t.interior_points().is_empty()));
    }
}
