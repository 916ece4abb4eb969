//! Root lattice, weight space and Cartan points with exact arithmetic.
//!
//! Three coordinate systems are used:
//!
//! * [`RootVector`]: integer coordinates `m_i` in the simple-root basis.
//! * [`WeightVector`]: rational coroot pairings `c_i = <lambda, alpha_i^vee>`.
//! * [`PointH`]: rational simple-root values `x_i = <alpha_i, H>` of a point
//!   `H` of the Cartan subalgebra.
//!
//! Conversion between weights and root coordinates goes through the cached
//! exact inverse of the Cartan matrix. Floating point never appears here.
//!
//! The imaginary-root test reduces into the fundamental imaginary cone
//! (all pairings `<= 0`, connected support). That characterization is the one
//! for symmetrizable matrices, which is all this crate accepts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cartan::CartanMatrix;
use crate::{Error, Result};

/// An element of the root lattice in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<BigInt>);

/// A weight, stored by its coroot pairings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<BigRational>);

/// A point of the Cartan subalgebra, stored by its simple-root values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointH(pub Vec<BigRational>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![BigInt::zero(); rank])
    }

    /// The simple root `alpha_i` (0-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        RootVector(coords.iter().map(|&m| BigInt::from(m)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn height(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// All coordinates `>= 0` and not all zero.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|m| !m.is_negative())
    }

    /// All coordinates `<= 0` and not all zero.
    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|m| !m.is_positive())
    }

    /// Index of the simple root this vector equals, if any.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, m) in self.0.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if !m.is_one() || found.is_some() {
                return None;
            }
            found = Some(i);
        }
        found
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(i, _)| i).collect()
    }

    /// `<v, alpha_i^vee> = sum_j a_ij m_j`.
    pub fn pair_simple_coroot(&self, cm: &CartanMatrix, i: usize) -> BigInt {
        self.0.iter().enumerate().map(|(j, m)| m * cm.a(i, j)).sum()
    }

    /// Simple reflection `w_i`: only `m_i` changes, `m_i' = m_i - sum_j a_ij m_j`.
    pub fn reflect(&self, cm: &CartanMatrix, i: usize) -> Self {
        let mut out = self.clone();
        out.0[i] -= self.pair_simple_coroot(cm, i);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RootVector(self.0.iter().map(|m| m * k).collect())
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|m| -m).collect())
    }

    /// Dot product `sum m_i x_i` with the simple-root values of a point.
    pub fn eval_at(&self, x: &PointH) -> BigRational {
        self.0
            .iter()
            .zip(&x.0)
            .map(|(m, xi)| xi * BigRational::from_integer(m.clone()))
            .sum()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|m| i64::try_from(m).ok()).collect()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl WeightVector {
    pub fn from_i64s(pairings: &[i64]) -> Self {
        WeightVector(pairings.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// The Weyl vector: all pairings equal to 1.
    pub fn rho(rank: usize) -> Self {
        WeightVector(vec![BigRational::one(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn pairings(&self) -> &[BigRational] {
        &self.0
    }

    /// Simple reflection: `c_k' = c_k - c_i a_ki`.
    pub fn reflect(&self, cm: &CartanMatrix, i: usize) -> Self {
        let ci = self.0[i].clone();
        WeightVector(
            self.0
                .iter()
                .enumerate()
                .map(|(k, ck)| ck - &ci * BigRational::from_integer(cm.a(k, i).into()))
                .collect(),
        )
    }

    /// Exact root coordinates `m = A^{-1} c`.
    pub fn to_root_coords(&self, cm: &CartanMatrix) -> Vec<BigRational> {
        cm.inverse()
            .iter()
            .map(|row| row.iter().zip(&self.0).map(|(a, c)| a * c).sum())
            .collect()
    }

    /// Weight with the given root coordinates: `c = A m`.
    pub fn from_root_coords(cm: &CartanMatrix, m: &[BigRational]) -> Self {
        let r = cm.rank();
        WeightVector(
            (0..r)
                .map(|i| (0..r).map(|j| &m[j] * BigRational::from_integer(cm.a(i, j).into())).sum())
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `<mu, H>` via root coordinates.
    pub fn eval_at(&self, cm: &CartanMatrix, x: &PointH) -> BigRational {
        self.to_root_coords(cm).iter().zip(&x.0).map(|(m, xi)| m * xi).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// All pairings strictly positive (membership in the open dual chamber).
    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }
}

impl PointH {
    pub fn from_i64s(values: &[i64]) -> Self {
        PointH(values.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    /// Simple reflection: `x_j' = x_j - x_i a_ij`.
    pub fn reflect(&self, cm: &CartanMatrix, i: usize) -> Self {
        let xi = self.0[i].clone();
        PointH(
            self.0
                .iter()
                .enumerate()
                .map(|(j, xj)| xj - &xi * BigRational::from_integer(cm.a(i, j).into()))
                .collect(),
        )
    }
}

/// `(v | v) = sum_ij m_i m_j d_i a_ij`.
pub fn norm(cm: &CartanMatrix, v: &RootVector) -> BigInt {
    let r = cm.rank();
    let mut total = BigInt::zero();
    for i in 0..r {
        if v.0[i].is_zero() {
            continue;
        }
        let row: BigInt = (0..r).map(|j| &v.0[j] * cm.gram(i, j)).sum();
        total += &v.0[i] * row;
    }
    total
}

/// `(lambda | alpha) = sum_i m_i d_i c_i`.
pub fn form_weight_root(cm: &CartanMatrix, lambda: &WeightVector, alpha: &RootVector) -> BigRational {
    alpha
        .0
        .iter()
        .enumerate()
        .map(|(i, m)| &lambda.0[i] * BigRational::from_integer(m * cm.symmetrizer()[i]))
        .sum()
}

/// `<lambda, alpha^vee> = 2 (lambda|alpha) / (alpha|alpha)` for a vector of
/// positive norm.
pub fn pair_coroot(cm: &CartanMatrix, lambda: &WeightVector, alpha: &RootVector) -> Result<BigRational> {
    let n = norm(cm, alpha);
    if !n.is_positive() {
        return Err(Error::NotRealRoot(format!("{alpha} has norm {n}")));
    }
    Ok(form_weight_root(cm, lambda, alpha) * BigRational::from_integer(2.into()) / BigRational::from_integer(n))
}

/// Outcome of the height-reduction loop on a positive vector.
enum Reduction {
    /// Reached a simple root.
    Simple,
    /// Stalled at a positive vector with all simple-coroot pairings `<= 0`.
    Stalled(RootVector),
    /// Left the positive cone or hit a non-root multiple of a simple root.
    NotRoot,
}

fn reduce(cm: &CartanMatrix, v: &RootVector) -> Reduction {
    if v.is_zero() {
        return Reduction::NotRoot;
    }
    let mut cur = if v.is_positive() {
        v.clone()
    } else if v.is_negative() {
        v.neg()
    } else {
        return Reduction::NotRoot;
    };
    // Height strictly drops on every step; the cap only guards against bugs.
    let cap = height_cap(&cur);
    for _ in 0..cap {
        if cur.simple_index().is_some() {
            return Reduction::Simple;
        }
        let descent = (0..cm.rank()).find(|&i| cur.pair_simple_coroot(cm, i).is_positive());
        let Some(i) = descent else {
            return Reduction::Stalled(cur);
        };
        cur = cur.reflect(cm, i);
        if !cur.is_positive() {
            return Reduction::NotRoot;
        }
    }
    unreachable!("height reduction did not terminate within its cap")
}

fn height_cap(v: &RootVector) -> usize {
    let h = v.height();
    usize::try_from(&h).unwrap_or(usize::MAX / 16).saturating_mul(10).saturating_add(10)
}

/// True iff `v` is a real root (a Weyl translate of a simple root).
pub fn is_real_root(cm: &CartanMatrix, v: &RootVector) -> bool {
    matches!(reduce(cm, v), Reduction::Simple)
}

/// True iff `v` is a root, real or imaginary.
pub fn is_root(cm: &CartanMatrix, v: &RootVector) -> bool {
    match reduce(cm, v) {
        Reduction::Simple => true,
        Reduction::NotRoot => false,
        Reduction::Stalled(u) => cm.is_connected(&u.support()),
    }
}

/// True iff `v` is an imaginary root.
pub fn is_imaginary_root(cm: &CartanMatrix, v: &RootVector) -> bool {
    match reduce(cm, v) {
        Reduction::Stalled(u) => cm.is_connected(&u.support()),
        _ => false,
    }
}

/// Largest `m >= 0` with `alpha + m beta` a root.
pub fn root_string_max(cm: &CartanMatrix, alpha: &RootVector, beta: &RootVector, cap: usize) -> Result<usize> {
    if !is_real_root(cm, alpha) {
        return Err(Error::NotRealRoot(alpha.to_string()));
    }
    if !is_real_root(cm, beta) {
        return Err(Error::NotRealRoot(beta.to_string()));
    }
    let mut cur = alpha.clone();
    for m in 0..=cap {
        let next = cur.add(beta);
        if !is_root(cm, &next) {
            return Ok(m);
        }
        cur = next;
    }
    Err(Error::CapExceeded { cap, what: format!("root string {alpha} + m {beta}") })
}

/// Every positive root of height at most `max_height`, in order of height
/// then lexicographic coordinates.
pub fn positive_roots_up_to_height(cm: &CartanMatrix, max_height: u64) -> Vec<RootVector> {
    let mut out = Vec::new();
    for h in 1..=max_height {
        for coords in compositions(h, cm.rank()) {
            let v = RootVector::from_i64s(&coords);
            if is_root(cm, &v) {
                out.push(v);
            }
        }
    }
    out
}

/// All nonnegative integer vectors of length `parts` summing to `total`,
/// in lexicographic order.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(remaining: u64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            prefix.push(remaining as i64);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first as i64);
            rec(remaining - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}
