//! Generalized Cartan matrices: validation, symmetrizer, invariant form and
//! finite-type tests for principal submatrices.
//!
//! Only nonsingular symmetrizable matrices are accepted. The symmetrizer is
//! normalized to the minimal positive integers on each indecomposable block,
//! so the invariant form `(alpha_i | alpha_j) = d_i a_ij` is integral and
//! reproducible.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{determinant, invert, rat};
use crate::{Error, Result};

/// A validated symmetrizable nonsingular generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    determinant: BigInt,
    inverse: Vec<Vec<BigRational>>,
}

impl CartanMatrix {
    /// Validates `rows` as a generalized Cartan matrix and computes its
    /// symmetrizer, determinant and exact inverse.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidGcm("matrix must have at least one row".into()));
        }
        if let Some(i) = rows.iter().position(|row| row.len() != r) {
            return Err(Error::InvalidGcm(format!("row {} has length {}, expected {r}", i + 1, rows[i].len())));
        }
        for i in 0..r {
            if rows[i][i] != 2 {
                return Err(Error::InvalidGcm(format!("diagonal entry a_{0}{0} = {1} is not 2", i + 1, rows[i][i])));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if rows[i][j] > 0 {
                    return Err(Error::InvalidGcm(format!("off-diagonal entry a_{}{} = {} is positive", i + 1, j + 1, rows[i][j])));
                }
                if (rows[i][j] == 0) != (rows[j][i] == 0) {
                    return Err(Error::InvalidGcm(format!(
                        "zero pattern is not symmetric: a_{}{} = {} but a_{}{} = {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        j + 1,
                        i + 1,
                        rows[j][i]
                    )));
                }
            }
        }
        let symmetrizer = compute_symmetrizer(&rows)?;
        let as_rat: Vec<Vec<BigRational>> = rows.iter().map(|row| row.iter().map(|&a| rat(a)).collect()).collect();
        let det = determinant(&as_rat);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inverse = invert(&as_rat).ok_or(Error::SingularMatrix)?;
        Ok(CartanMatrix { entries: rows, symmetrizer, determinant: det.to_integer(), inverse })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Entry `a_ij = <alpha_j, alpha_i^vee>` (0-based indices).
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Minimal positive integers `d_i` with `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    /// Exact `A^{-1}`; maps coroot pairings of a weight to its root coordinates.
    pub fn inverse(&self) -> &[Vec<BigRational>] {
        &self.inverse
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Gram matrix of the invariant form on simple roots, `G_ij = d_i a_ij`.
    pub fn bilinear_gram(&self) -> Vec<Vec<BigRational>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| rat(self.symmetrizer[i] * self.entries[i][j])).collect())
            .collect()
    }

    /// `(alpha_i | alpha_j)` as an integer.
    #[inline]
    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[i] * self.entries[i][j]
    }

    /// True iff the symmetrized principal submatrix on `subset` is positive
    /// definite, i.e. the subset spans a finite-type subdiagram.
    pub fn is_finite_type(&self, subset: &[usize]) -> bool {
        let mut g: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| rat(self.gram(i, j))).collect())
            .collect();
        // Positive definite iff every pivot of the unpivoted elimination is
        // positive (equivalently all leading principal minors are positive).
        let n = g.len();
        for k in 0..n {
            if !g[k][k].is_positive() {
                return false;
            }
            let p = g[k][k].clone();
            for r in k + 1..n {
                if g[r][k].is_zero() {
                    continue;
                }
                let f = &g[r][k] / &p;
                for c in k..n {
                    let t = &f * &g[k][c];
                    g[r][c] -= t;
                }
            }
        }
        true
    }

    /// True iff `support` is connected in the Dynkin graph (edges `a_ij != 0`).
    /// The empty set is not connected.
    pub fn is_connected(&self, support: &[usize]) -> bool {
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = vec![false; self.rank()];
        let inside: Vec<bool> = (0..self.rank()).map(|i| support.contains(&i)).collect();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for j in 0..self.rank() {
                if inside[j] && !seen[j] && self.entries[i][j] != 0 {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        reached == support.len()
    }
}

/// Spanning-tree propagation of `d_j / d_i = a_ij / a_ji` per block, with a
/// consistency check on every edge, then scaling to minimal integers.
fn compute_symmetrizer(rows: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = rows.len();
    let mut d: Vec<Option<BigRational>> = vec![None; r];
    let mut result = vec![0i64; r];
    for root in 0..r {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        let mut block = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..r {
                if j == i || rows[i][j] == 0 {
                    continue;
                }
                let dj = &di * rat(rows[i][j]) / rat(rows[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        block.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "ratio d_{}/d_{} is inconsistent around a cycle",
                            j + 1,
                            i + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm_denom = block
            .iter()
            .fold(BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().expect("visited").denom()));
        let scaled: Vec<BigInt> = block
            .iter()
            .map(|&i| (d[i].as_ref().expect("visited") * BigRational::from_integer(lcm_denom.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in block.iter().zip(&scaled) {
            result[i] = i64::try_from(v / &g)
                .map_err(|_| Error::NotSymmetrizable("symmetrizer entry does not fit in 64 bits".into()))?;
        }
    }
    Ok(result)
}
