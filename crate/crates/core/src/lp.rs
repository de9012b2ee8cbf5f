//! Exact two-phase simplex with integer (fraction-free) pivoting.
//!
//! The tableau is kept as integers `M` over a single shared positive
//! denominator `D`; the value of entry `(i, j)` is `M[i][j] / D`. A pivot on
//! `(r, s)` replaces every other row by `(M[i][k] * M[r][s] - M[i][s] * M[r][k]) / D`
//! (the division is exact) and sets `D = M[r][s]`. No gcds are taken, so the
//! inner loop is a handful of integer multiplies.
//!
//! Problems are first attempted in `i128` with checked arithmetic and re-run in
//! `BigInt` if anything overflows, so results are exact for any input.
//! Bland's rule is used for both entering and leaving variables.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

/// Integer ring the tableau is computed in.
pub trait Scalar: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        // 64-bit division is far cheaper than the 128-bit library routine
        if let (Ok(a), Ok(b)) = (i64::try_from(*self), i64::try_from(*o)) {
            debug_assert_eq!(a % b, 0);
            return a.checked_div(b).map(i128::from);
        }
        debug_assert_eq!(self % o, 0);
        self.checked_div(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `maximize objective · x` subject to the rows, with every variable `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    objective: Vec<T>,
    rows: Vec<(Vec<T>, Relation, T)>,
}

/// Marker for an `i128` overflow; the caller retries in `BigInt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

/// Basic solution with a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
    pub objective_numerator: BigInt,
}

impl Solution {
    pub fn value(&self, j: usize) -> Rational {
        Rational::new(self.numerators[j].clone(), self.denominator.clone())
    }

    pub fn objective(&self) -> Rational {
        Rational::new(self.objective_numerator.clone(), self.denominator.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![T::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn maximize(&mut self, objective: Vec<T>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn solve(&self) -> Result<LpOutcome, Overflow> {
        Tableau::build(self)?.run(&self.objective)
    }
}

impl LinearProgram<i128> {
    pub fn widen(&self) -> LinearProgram<BigInt> {
        let big = |v: &[i128]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        LinearProgram {
            num_vars: self.num_vars,
            objective: big(&self.objective),
            rows: self
                .rows
                .iter()
                .map(|(c, r, b)| (big(c), *r, BigInt::from(*b)))
                .collect(),
        }
    }

    /// Solves exactly, retrying in big integers if `i128` overflows.
    pub fn solve_exact(&self) -> LpOutcome {
        match self.solve() {
            Ok(outcome) => outcome,
            Err(Overflow) => self.widen().solve().expect("big integers do not overflow"),
        }
    }
}

impl LinearProgram<BigInt> {
    /// Narrows to `i128` when every coefficient fits.
    pub fn narrow(&self) -> Option<LinearProgram<i128>> {
        use num_traits::ToPrimitive;
        let small = |v: &[BigInt]| v.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>();
        Some(LinearProgram {
            num_vars: self.num_vars,
            objective: small(&self.objective)?,
            rows: self
                .rows
                .iter()
                .map(|(c, r, b)| Some((small(c)?, *r, b.to_i128()?)))
                .collect::<Option<Vec<_>>>()?,
        })
    }

    pub fn solve_exact(&self) -> LpOutcome {
        if let Some(small) = self.narrow() {
            if let Ok(outcome) = small.solve() {
                return outcome;
            }
        }
        self.solve().expect("big integers do not overflow")
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    // Objective row: entries are minus the reduced costs, last entry is the
    // current objective value (all over `denom`).
    obj: Vec<T>,
    basis: Vec<usize>,
    denom: T,
    num_vars: usize,
    first_artificial: usize,
    width: usize,
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Result<Self, Overflow> {
        let n = lp.num_vars;
        let mut normalized = Vec::with_capacity(lp.rows.len());
        for (coeffs, rel, rhs) in &lp.rows {
            if rhs.is_negative() {
                let flipped: Vec<T> = coeffs
                    .iter()
                    .map(|c| c.neg())
                    .collect::<Option<_>>()
                    .ok_or(Overflow)?;
                let rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                normalized.push((flipped, rel, rhs.neg().ok_or(Overflow)?));
            } else {
                normalized.push((coeffs.clone(), *rel, rhs.clone()));
            }
        }
        let num_slack = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let num_art = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let first_artificial = n + num_slack;
        let width = first_artificial + num_art + 1;
        let rhs_col = width - 1;

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut s, mut a) = (n, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![T::zero(); width];
            row[..n].clone_from_slice(&coeffs);
            row[rhs_col] = rhs;
            match rel {
                Relation::Le => {
                    row[s] = T::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = T::one().neg().ok_or(Overflow)?;
                    row[a] = T::one();
                    basis.push(a);
                    s += 1;
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = T::one();
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
        }

        // Phase one maximizes minus the sum of artificials.
        let mut obj = vec![T::zero(); width];
        for (row, &b) in rows.iter().zip(&basis) {
            if b >= first_artificial {
                for k in 0..width {
                    if k < first_artificial || k == rhs_col {
                        obj[k] = obj[k].sub(&row[k]).ok_or(Overflow)?;
                    }
                }
            }
        }

        Ok(Self {
            rows,
            obj,
            basis,
            denom: T::one(),
            num_vars: n,
            first_artificial,
            width,
        })
    }

    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn pivot(&mut self, r: usize, s: usize) -> Result<(), Overflow> {
        let p = self.rows[r][s].clone();
        let prev = self.denom.clone();
        let pivot_row = self.rows[r].clone();
        let update = |row: &mut Vec<T>| -> Result<(), Overflow> {
            let factor = row[s].clone();
            if factor.is_zero() {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x = x.mul(&p).ok_or(Overflow)?.div_exact(&prev).ok_or(Overflow)?;
                }
            } else {
                for (x, pr) in row.iter_mut().zip(&pivot_row) {
                    if pr.is_zero() {
                        if !x.is_zero() {
                            *x = x.mul(&p).ok_or(Overflow)?.div_exact(&prev).ok_or(Overflow)?;
                        }
                        continue;
                    }
                    let lhs = x.mul(&p).ok_or(Overflow)?;
                    let rhs = factor.mul(pr).ok_or(Overflow)?;
                    *x = lhs.sub(&rhs).ok_or(Overflow)?.div_exact(&prev).ok_or(Overflow)?;
                }
            }
            Ok(())
        };
        for i in 0..self.rows.len() {
            if i != r {
                update(&mut self.rows[i])?;
            }
        }
        update(&mut self.obj)?;
        self.basis[r] = s;
        self.denom = p;
        if self.denom.is_negative() {
            for row in self.rows.iter_mut().chain(std::iter::once(&mut self.obj)) {
                for x in row.iter_mut() {
                    *x = x.neg().ok_or(Overflow)?;
                }
            }
            self.denom = self.denom.neg().ok_or(Overflow)?;
        }
        Ok(())
    }

    /// Runs simplex iterations over columns `< limit`. Returns `false` if
    /// the objective is unbounded.
    fn iterate(&mut self, limit: usize) -> Result<bool, Overflow> {
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..limit).find(|&k| self.obj[k].is_negative()) else {
                return Ok(true);
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                leave = Some(match leave {
                    None => i,
                    Some(j) => {
                        // compare rhs_i / a_i against rhs_j / a_j
                        let lhs = self.rows[i][rhs].mul(&self.rows[j][enter]).ok_or(Overflow)?;
                        let rhs_v = self.rows[j][rhs].mul(a).ok_or(Overflow)?;
                        match lhs.cmp(&rhs_v) {
                            std::cmp::Ordering::Less => i,
                            std::cmp::Ordering::Greater => j,
                            std::cmp::Ordering::Equal => {
                                if self.basis[i] < self.basis[j] {
                                    i
                                } else {
                                    j
                                }
                            }
                        }
                    }
                });
            }
            let Some(r) = leave else {
                return Ok(false);
            };
            self.pivot(r, enter)?;
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn run(mut self, objective: &[T]) -> Result<LpOutcome, Overflow> {
        let rhs = self.rhs();
        let art = self.first_artificial;
        if self.basis.iter().any(|&b| b >= art) {
            self.iterate(art)?;
            if self.obj[rhs].is_negative() {
                return Ok(LpOutcome::Infeasible);
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut redundant = Vec::new();
            for i in 0..self.rows.len() {
                if self.basis[i] < art {
                    continue;
                }
                match (0..art).find(|&k| !self.rows[i][k].is_zero()) {
                    Some(k) => self.pivot(i, k)?,
                    None => redundant.push(i),
                }
            }
            for &i in redundant.iter().rev() {
                self.rows.remove(i);
                self.basis.remove(i);
            }
        }

        // Phase two objective row: -c_k * D + sum_i c_{B(i)} * M[i][k].
        let mut obj = vec![T::zero(); self.width];
        for k in 0..art {
            let c = objective.get(k).cloned().unwrap_or_else(T::zero);
            obj[k] = c.mul(&self.denom).ok_or(Overflow)?.neg().ok_or(Overflow)?;
        }
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let Some(c) = objective.get(b) else { continue };
            if c.is_zero() {
                continue;
            }
            for k in 0..self.width {
                let t = c.mul(&row[k]).ok_or(Overflow)?;
                obj[k] = obj[k].add(&t).ok_or(Overflow)?;
            }
        }
        self.obj = obj;
        if !self.iterate(art)? {
            return Ok(LpOutcome::Unbounded);
        }

        let mut numerators = vec![<BigInt as Zero>::zero(); self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                numerators[b] = row[rhs].to_big();
            }
        }
        Ok(LpOutcome::Optimal(Solution {
            numerators,
            denominator: self.denom.to_big(),
            objective_numerator: self.obj[rhs].to_big(),
        }))
    }
}
