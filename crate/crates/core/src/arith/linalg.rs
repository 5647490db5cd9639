//! Exact Gauss-Jordan elimination over a field.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::ratfun::RationalFunction;
use super::rational::Rational;

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on a zero divisor; elimination only divides by pivots.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("division by a zero pivot")
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<F> {
    /// `None` when the system is inconsistent.
    pub particular: Option<Vec<F>>,
    pub nullspace: Vec<Vec<F>>,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl<F: Field> LinearSolution<F> {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `m · x = b`, returning a particular solution (if any) and a basis
/// of the nullspace of `m`. `m` is given row-major; all rows must have
/// `ncols` entries.
pub fn solve_linear<F: Field>(m: &[Vec<F>], b: &[F], ncols: usize) -> LinearSolution<F> {
    assert_eq!(m.len(), b.len(), "right-hand side length mismatch");
    let mut rows: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = F::one().div(&rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[ncols].is_zero());
    let particular = consistent.then(|| {
        let mut x = vec![F::zero(); ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][ncols].clone();
        }
        x
    });
    let nullspace = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = rows[r][free].neg();
            }
            v
        })
        .collect();
    LinearSolution { particular, nullspace, rank, pivot_columns: pivots }
}

pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let zeros = vec![F::zero(); m.len()];
    solve_linear(m, &zeros, ncols).nullspace
}

pub fn mat_vec<F: Field>(m: &[Vec<F>], x: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_one_nullspace() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let s = solve_linear(&a, &[rat(0), rat(0)], 2);
        assert_eq!(s.nullspace, vec![vec![rat(-1), rat(1)]]);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn identity_unique() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let s = solve_linear(&a, &[rat(1), rat(2), rat(3)], 3);
        assert_eq!(s.particular, Some(vec![rat(1), rat(2), rat(3)]));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn inconsistent() {
        let a = m(&[&[1], &[1]]);
        let s = solve_linear(&a, &[rat(1), rat(2)], 1);
        assert!(!s.is_consistent());
    }

    #[test]
    fn over_rational_functions() {
        use crate::arith::poly::Polynomial;
        let a = Polynomial::v("a");
        let rf = |p: Polynomial| RationalFunction::from_poly(p);
        // [[a, 1], [1, 1/a]] has rank 1
        let inv = RationalFunction::new(Polynomial::one(), a.clone()).unwrap();
        let mat = vec![vec![rf(a.clone()), rf(Polynomial::one())], vec![rf(Polynomial::one()), inv]];
        let ns = nullspace(&mat, 2);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&mat, &ns[0]).iter().all(|x| x.is_zero()));
    }
}
