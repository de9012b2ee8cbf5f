//! Independent reference implementations used to cross-check the library.
//! They use plain integer arithmetic and brute force, never the LP or hull
//! code under test.

#![allow(dead_code)]

use latsep::explorer::{grid_points, subset};
use latsep::{IntPoint, Partition, PointSet};

pub fn ps(points: &[[i64; 2]]) -> PointSet {
    PointSet::new(2, points.iter().map(|&p| IntPoint::from(p))).unwrap()
}

pub fn part(a: &[[i64; 2]], b: &[[i64; 2]]) -> Partition {
    Partition::new(ps(a), ps(b)).unwrap()
}

/// Every nonempty subset of a grid, with its mask.
pub fn grid_subsets(grid: &[usize]) -> Vec<(u64, PointSet)> {
    let points = grid_points(grid).unwrap();
    (1..1u64 << points.len()).map(|m| (m, subset(&points, m))).collect()
}

/// Every bipartition of `s` with both sides nonempty, both orientations.
pub fn all_bipartitions(s: &PointSet) -> Vec<Partition> {
    let pts = s.points();
    let n = pts.len();
    let mut out = Vec::new();
    for m in 1..(1u64 << n) - 1 {
        let a = pts.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, p)| p.clone());
        let b = pts.iter().enumerate().filter(|(i, _)| m >> i & 1 == 0).map(|(_, p)| p.clone());
        out.push(Partition::new(PointSet::new(s.dim(), a).unwrap(), PointSet::new(s.dim(), b).unwrap()).unwrap());
    }
    out
}

fn dot2(n: [i64; 2], x: &IntPoint) -> i64 {
    n[0] * x[0] + n[1] * x[1]
}

/// Flag separability of a planar partition by brute force over small
/// integer normals.
///
/// The first functional of a flag weakly separates the hulls. If the hulls
/// are strictly separable, the open cone of separating normals is bounded by
/// normals orthogonal to differences `a - b`, so the sum of the two boundary
/// normals is strictly separating. If they touch, the weak separator is
/// unique up to scale and orthogonal to a hull edge. In both cases a normal
/// with entries bounded by twice the coordinate spread of `S` suffices. The
/// points on the resulting line must then not interleave.
pub fn flag_oracle_2d(p: &Partition) -> bool {
    let s = p.support();
    let spread = (0..2)
        .map(|i| {
            let lo = s.iter().map(|x| x[i]).min().unwrap();
            let hi = s.iter().map(|x| x[i]).max().unwrap();
            hi - lo
        })
        .max()
        .unwrap();
    let r = 2 * spread.max(1);
    for n0 in -r..=r {
        for n1 in -r..=r {
            if (n0, n1) == (0, 0) {
                continue;
            }
            let n = [n0, n1];
            let min_a = p.a().iter().map(|x| dot2(n, x)).min().unwrap();
            let max_b = p.b().iter().map(|x| dot2(n, x)).max().unwrap();
            if min_a > max_b {
                return true;
            }
            if min_a < max_b {
                continue;
            }
            // order along the line direction
            let u = [-n1, n0];
            let mut on_line: Vec<(i64, bool)> = s
                .iter()
                .filter(|x| dot2(n, x) == min_a)
                .map(|x| (dot2(u, x), p.a().contains(x)))
                .collect();
            on_line.sort();
            let switches = on_line.windows(2).filter(|w| w[0].1 != w[1].1).count();
            if switches <= 1 {
                return true;
            }
        }
    }
    false
}

fn cross(o: &[i64; 2], p: &[i64; 2], q: &[i64; 2]) -> i64 {
    (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])
}

/// `x ∈ conv(t)` for a (possibly degenerate) triangle, all coordinates
/// already scaled to integers.
fn in_triangle(x: &[i64; 2], t: [&[i64; 2]; 3]) -> bool {
    let c = [cross(t[0], t[1], x), cross(t[1], t[2], x), cross(t[2], t[0], x)];
    let area = cross(t[0], t[1], t[2]);
    if area != 0 {
        return c.iter().all(|&v| v * area.signum() >= 0);
    }
    // degenerate: x must lie on one of the segments
    let on_segment = |p: &[i64; 2], q: &[i64; 2]| {
        cross(p, q, x) == 0
            && x[0] >= p[0].min(q[0])
            && x[0] <= p[0].max(q[0])
            && x[1] >= p[1].min(q[1])
            && x[1] <= p[1].max(q[1])
    };
    on_segment(t[0], t[1]) || on_segment(t[1], t[2]) || on_segment(t[0], t[2])
}

/// `x / den ∈ conv(points)` in the plane, by Carathéodory over triangles.
pub fn in_hull_scaled(x: [i64; 2], den: i64, points: &[IntPoint]) -> bool {
    let scaled: Vec<[i64; 2]> = points.iter().map(|p| [p[0] * den, p[1] * den]).collect();
    match scaled.len() {
        0 => false,
        1 => scaled[0] == x,
        _ => {
            for i in 0..scaled.len() {
                for j in i..scaled.len() {
                    for k in j..scaled.len() {
                        if in_triangle(&x, [&scaled[i], &scaled[j], &scaled[k]]) {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}

/// Integral convexity of a planar set, sampled on the grid `(1/den) Z^2`:
/// every sample `x ∈ conv(S)` must lie in `conv(S ∩ N(x))`.
pub fn integrally_convex_sampled(s: &PointSet, den: i64) -> bool {
    let (lo, hi) = s.bounding_box().unwrap();
    for x0 in lo[0] * den..=hi[0] * den {
        for x1 in lo[1] * den..=hi[1] * den {
            let x = [x0, x1];
            if !in_hull_scaled(x, den, s.points()) {
                continue;
            }
            // N(x): integer y with |x_i / den - y_i| < 1
            let near: Vec<IntPoint> = s
                .iter()
                .filter(|y| (0..2).all(|i| (x[i] - y[i] * den).abs() < den))
                .cloned()
                .collect();
            if !in_hull_scaled(x, den, &near) {
                return false;
            }
        }
    }
    true
}

/// Number of distinct lines through at least two points of `s`, by pair
/// enumeration with a canonical (direction, offset) key.
pub fn count_lines(s: &PointSet) -> usize {
    let pts = s.points();
    let mut keys = std::collections::BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d: Vec<i64> = pts[j].sub(&pts[i]).coords().to_vec();
            let g = d.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
            let mut d: Vec<i64> = d.iter().map(|v| v / g).collect();
            if d.iter().find(|&&v| v != 0).unwrap() < &0 {
                d.iter_mut().for_each(|v| *v = -*v);
            }
            // canonical base: the lattice point on the line with the
            // smallest parameter along the first nonzero direction entry
            let k = d.iter().position(|&v| v != 0).unwrap();
            let t = pts[i][k].div_euclid(d[k]);
            let base: Vec<i64> = (0..d.len()).map(|c| pts[i][c] - t * d[c]).collect();
            keys.insert((d, base));
        }
    }
    keys.len()
}

/// Convergents of `sqrt(2)`: 1/1, 3/2, 7/5, 17/12, …
pub fn sqrt2_convergents() -> impl Iterator<Item = (i64, i64)> {
    std::iter::successors(Some((1i64, 1i64)), |&(p, q)| Some((p + 2 * q, p + q)))
}

/// The first convergent whose denominator exceeds `n`; no lattice point with
/// `|x1| <= n` lies between its line and the line of slope `sqrt(2)`.
pub fn sqrt2_slope_for_window(n: i64) -> (i64, i64) {
    sqrt2_convergents().find(|&(_, q)| q > n).unwrap()
}

/// Lattice points strictly inside a triangle, by cross products.
pub fn interior_oracle(t: [[i64; 2]; 3]) -> Vec<IntPoint> {
    let mut out = Vec::new();
    let area = cross(&t[0], &t[1], &t[2]).signum();
    let (x0, x1) = (t.iter().map(|v| v[0]).min().unwrap(), t.iter().map(|v| v[0]).max().unwrap());
    let (y0, y1) = (t.iter().map(|v| v[1]).min().unwrap(), t.iter().map(|v| v[1]).max().unwrap());
    for x in x0..=x1 {
        for y in y0..=y1 {
            let z = [x, y];
            if [(0, 1), (1, 2), (2, 0)].iter().all(|&(i, j)| cross(&t[i], &t[j], &z) * area > 0) {
                out.push(IntPoint::from(z));
            }
        }
    }
    out
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// `x ∈ conv(t)` for affinely independent integer points `t`, by Cramer's
/// rule on the Gram system; `None` if `t` is affinely dependent.
fn in_simplex(x: &[i128], t: &[Vec<i128>]) -> Option<bool> {
    let k = t.len() - 1;
    let v: Vec<Vec<i128>> = t[1..].iter().map(|p| p.iter().zip(&t[0]).map(|(a, b)| a - b).collect()).collect();
    let r: Vec<i128> = x.iter().zip(&t[0]).map(|(a, b)| a - b).collect();
    let dot = |a: &[i128], b: &[i128]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i128>();
    let gram: Vec<Vec<i128>> = v.iter().map(|a| v.iter().map(|b| dot(a, b)).collect()).collect();
    let g = det(&gram);
    if g == 0 {
        return None;
    }
    let rhs: Vec<i128> = v.iter().map(|a| dot(a, &r)).collect();
    // lambda_i = num_i / g
    let num: Vec<i128> = (0..k)
        .map(|i| {
            let m: Vec<Vec<i128>> = gram
                .iter()
                .enumerate()
                .map(|(row, gr)| gr.iter().enumerate().map(|(c, &val)| if c == i { rhs[row] } else { val }).collect())
                .collect();
            det(&m)
        })
        .collect();
    let on_span = (0..x.len()).all(|c| (0..k).map(|i| num[i] * v[i][c]).sum::<i128>() == g * r[c]);
    let s = g.signum();
    let sum: i128 = num.iter().sum();
    Some(on_span && num.iter().all(|&n| n * s >= 0) && sum * s <= g * s)
}

/// `x / den ∈ conv(points)` in any dimension, by Carathéodory over simplices.
pub fn in_hull_scaled_nd(x: &[i64], den: i64, points: &[IntPoint]) -> bool {
    let x: Vec<i128> = x.iter().map(|&c| c as i128).collect();
    let pts: Vec<Vec<i128>> = points.iter().map(|p| p.coords().iter().map(|&c| (c * den) as i128).collect()).collect();
    let d = x.len();
    let n = pts.len();
    (1..=(d + 1).min(n)).any(|size| {
        itertools::Itertools::combinations(0..n, size).any(|idx| {
            let t: Vec<Vec<i128>> = idx.iter().map(|&i| pts[i].clone()).collect();
            in_simplex(&x, &t) == Some(true)
        })
    })
}

/// Integral convexity sampled on `(1/den) Z^d`.
pub fn integrally_convex_sampled_nd(s: &PointSet, den: i64) -> bool {
    let (lo, hi) = s.bounding_box().unwrap();
    let lo: Vec<i64> = lo.iter().map(|c| c * den).collect();
    let hi: Vec<i64> = hi.iter().map(|c| c * den).collect();
    latsep::geometry::box_points(&lo, &hi).iter().all(|x| {
        if !in_hull_scaled_nd(x.coords(), den, s.points()) {
            return true;
        }
        let near: Vec<IntPoint> =
            s.iter().filter(|y| (0..s.dim()).all(|i| (x[i] - y[i] * den).abs() < den)).cloned().collect();
        in_hull_scaled_nd(x.coords(), den, &near)
    })
}
