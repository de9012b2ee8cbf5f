//! Exact arithmetic helpers: rational formatting and parsing, integer
//! determinants with an overflow-checked `i128` fast path, and small dense
//! linear algebra over the rationals.
//!
//! Nothing in here touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Serde adapter: writes `"p/q"` strings, reads strings or JSON integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalText(pub Rational);

impl serde::Serialize for RationalText {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> serde::Deserialize<'de> for RationalText {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(RationalText(rational_from_i64(v))),
            Raw::Text(t) => parse_rational(&t)
                .map(RationalText)
                .ok_or_else(|| serde::de::Error::custom(format!("not a rational number: {t:?}"))),
        }
    }
}

pub fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Greatest common divisor of the absolute values; zero for an all-zero slice.
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Divides by the gcd and flips the sign so that the first nonzero entry is
/// positive. Returns `None` for the zero vector.
pub fn canonical_direction(v: &[i64]) -> Option<Vec<i64>> {
    let g = gcd_all(v);
    if g == 0 {
        return None;
    }
    let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(0);
    let sign = if first < 0 { -1 } else { 1 };
    Some(v.iter().map(|&x| sign * x / g).collect())
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Determinant by Bareiss fraction-free elimination; `None` if an
/// intermediate value leaves the `i128` range.
pub fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[i][j].checked_mul(m[k][k])?;
                let rhs = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// Exact determinant over big integers.
#[allow(clippy::needless_range_loop)]
pub fn det_big(m: Vec<Vec<BigInt>>) -> BigInt {
    let rows: Vec<Vec<Rational>> = m
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect();
    let n = rows.len();
    let mut a = rows;
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det.to_integer()
}

/// Integer determinant, exact for any input size.
pub fn det_int(m: &[Vec<i128>]) -> BigInt {
    match det_i128(m.to_vec()) {
        Some(d) => BigInt::from(d),
        None => det_big(
            m.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

/// Reduced row echelon form; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x | rows · x = 0}` where every row has length `n`.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a · x = b`, or `None` if the system is inconsistent.
pub fn solve_any(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// The unique solution of a square system, or `None` when singular.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if rank(a) < n {
        return None;
    }
    solve_any(a, b, n)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_text_round_trip() {
        for r in [q(3, 4), q(-7, 2), q(5, 1), q(0, 1), q(6, -4)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r.clone()));
        }
        assert_eq!(format_rational(&q(6, -4)), "-3/2");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn canonical_direction_is_primitive_and_positive() {
        assert_eq!(canonical_direction(&[-4, 2, 0]), Some(vec![2, -1, 0]));
        assert_eq!(canonical_direction(&[0, -3]), Some(vec![0, 1]));
        assert_eq!(canonical_direction(&[0, 0]), None);
    }

    #[test]
    fn bareiss_matches_big_route() {
        let m = vec![vec![2, -1, 3], vec![4, 0, 1], vec![-2, 5, 7]];
        let big = det_big(
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        assert_eq!(det_int(&m), big);
        assert_eq!(big, BigInt::from(80));
        assert_eq!(det_int(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_int(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        assert_eq!(det_int(&[vec![0, 0], vec![1, 4]]), BigInt::zero());
    }

    #[test]
    fn huge_entries_fall_back_to_big_integers() {
        let big = i128::MAX / 3;
        let m = vec![vec![big, 1], vec![1, big]];
        let expected = BigInt::from(big) * BigInt::from(big) - BigInt::one();
        assert_eq!(det_int(&m), expected);
    }

    #[test]
    fn nullspace_of_plane() {
        let rows = vec![vec![q(1, 1), q(1, 1), q(1, 1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![q(1, 2), q(-3, 4), q(0, 1)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]
        );
    }
}
