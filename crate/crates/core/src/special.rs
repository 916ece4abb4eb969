//! Gamma-factor and zeta evaluations on the real axis.
//!
//! `ln Gamma` uses the Stirling series after shifting the argument up to a
//! precision-dependent threshold; the series is truncated at the first term
//! below the target, which bounds the remainder for real positive arguments.
//! The Hurwitz zeta function uses Euler-Maclaurin summation with the standard
//! remainder bound
//! `4 |(s)_{2M}| / (2 pi)^{2M} * (q + N)^{-s-2M+1} / (s + 2M - 1)`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::real::{PrecisionContext, Real};
use crate::{Error, Result};

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    let mut table = BERNOULLI.lock().expect("bernoulli cache");
    if table.is_empty() {
        table.push(BigRational::one());
    }
    while table.len() <= n {
        let m = table.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let next = -acc / BigRational::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[n].clone()
}

fn tiny(bits: usize) -> i32 {
    -(bits as i32) - 8
}

fn below(x: &Real, exponent: i32) -> bool {
    x.binary_exponent().map_or(true, |e| e < exponent)
}

/// `ln Gamma(z)` for real `z > 0` at `bits` precision.
pub(crate) fn ln_gamma(z: &Real, bits: usize) -> Real {
    let work = bits + 16;
    let z = z.with_precision(work);
    let threshold = bits as f64;
    let shift = (threshold - z.to_f64()).max(0.0).ceil() as usize;
    let one = Real::one(work);
    let mut w = z.clone();
    let mut product = Real::one(work);
    for _ in 0..shift {
        product = product * &w;
        w = w + &one;
    }
    let half = Real::from_rational(&BigRational::new(1.into(), 2.into()), work);
    let two_pi = Real::pi(work) * Real::from_i64(2, work);
    let mut sum = (&w - &half) * w.ln() - &w + &half * two_pi.ln();
    let w_sq = &w * &w;
    let mut w_pow = w.clone();
    let eps = tiny(work);
    for k in 1.. {
        let coeff = bernoulli(2 * k) / BigRational::from_integer(BigInt::from(2 * k * (2 * k - 1)));
        let term = Real::from_rational(&coeff, work) / &w_pow;
        if below(&term, eps) {
            break;
        }
        sum = sum + term;
        w_pow = w_pow * &w_sq;
    }
    if shift > 0 {
        sum = sum - product.ln();
    }
    sum.with_precision(bits)
}

/// Hurwitz zeta `zeta(s, q) = sum_{n>=0} (q + n)^{-s}` for real `s > 1`, `q > 0`.
pub fn hurwitz_zeta(s: &Real, q: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_hurwitz_domain(s, q, ctx.bits())?;
    Ok(hurwitz_unchecked(s, q, ctx.bits()))
}

fn check_hurwitz_domain(s: &Real, q: &Real, bits: usize) -> Result<()> {
    if !(s > &Real::one(bits)) {
        return Err(Error::DomainError(format!("zeta requires s > 1, got {}", s.to_plain(12))));
    }
    if !q.is_positive() {
        return Err(Error::DomainError(format!("Hurwitz zeta requires q > 0, got {}", q.to_plain(12))));
    }
    Ok(())
}

/// Truncation point and number of correction terms such that the
/// Euler-Maclaurin remainder is below `2^target_log2`.
fn euler_maclaurin_plan(s: f64, q: f64, target_log2: f64) -> (usize, usize) {
    let log2_two_pi = (2.0 * std::f64::consts::PI).log2();
    let mut n = 8usize.max((-target_log2 * 0.25) as usize);
    loop {
        let base = (q + n as f64).log2();
        let mut log_poch = 0.0;
        let mut best = f64::INFINITY;
        for m in 1..=4 * n + 64 {
            let j = 2 * m - 2;
            log_poch += (s + j as f64).log2() + (s + j as f64 + 1.0).log2();
            let e = (s + 2.0 * m as f64 - 1.0).max(1e-300);
            let bound = 2.0 + log_poch - 2.0 * m as f64 * log2_two_pi - (s + 2.0 * m as f64 - 1.0) * base - e.log2();
            if bound < target_log2 {
                return (n, m);
            }
            if bound > best + 1.0 {
                break;
            }
            best = best.min(bound);
        }
        n *= 2;
    }
}

fn hurwitz_unchecked(s: &Real, q: &Real, bits: usize) -> Real {
    hurwitz_ladder_unchecked(s, q, 1, bits).pop().expect("one value")
}

/// `zeta(s + 2j, q)` for `j = 0..count`, sharing one truncation point so the
/// powers `(q + k)^{-s}` are computed once.
pub fn hurwitz_zeta_ladder(s: &Real, q: &Real, count: usize, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    check_hurwitz_domain(s, q, ctx.bits())?;
    Ok(hurwitz_ladder_unchecked(s, q, count, ctx.bits()))
}

fn hurwitz_ladder_unchecked(s: &Real, q: &Real, count: usize, bits: usize) -> Vec<Real> {
    let work = bits + 16;
    let s = s.with_precision(work);
    let q = q.with_precision(work);
    let (s_f, q_f) = (s.to_f64(), q.to_f64());
    // Scale each absolute target by the size of the leading term q^{-s-2j}.
    let plans: Vec<(usize, usize)> = (0..count)
        .map(|j| {
            let sj = s_f + 2.0 * j as f64;
            euler_maclaurin_plan(sj, q_f, -sj * q_f.log2() - work as f64)
        })
        .collect();
    let n = plans.iter().map(|p| p.0).max().unwrap_or(8);
    let one = Real::one(work);
    let two = Real::from_i64(2, work);
    let mut sums = vec![Real::zero(work); count];
    let mut base = q.clone();
    for _ in 0..n {
        let mut term = (-(&s) * base.ln()).exp();
        let inv_sq = &one / (&base * &base);
        for sum in sums.iter_mut() {
            *sum = &*sum + &term;
            term = term * &inv_sq;
        }
        base = base + &one;
    }
    // base = q + N
    let ln_base = base.ln();
    let inv_base = &one / &base;
    let inv_base_sq = &inv_base * &inv_base;
    let half = Real::from_rational(&BigRational::new(1.into(), 2.into()), work);
    let mut t = (-(&s) * &ln_base).exp();
    let mut sj = s.clone();
    let mut out = Vec::with_capacity(count);
    for (sum, &(_, m)) in sums.into_iter().zip(&plans) {
        let mut total = sum + &t * &base / (&sj - &one) + &half * &t;
        // (s)_{2k-1} (q+N)^{-(2k-1)} built incrementally.
        let mut poch_pow = &sj * &inv_base;
        let mut factorial = BigInt::from(2);
        for k in 1..=m {
            let coeff = bernoulli(2 * k) / BigRational::from_integer(factorial.clone());
            total = total + Real::from_rational(&coeff, work) * &poch_pow * &t;
            let j = 2 * k - 1;
            let next = (&sj + Real::from_i64(j as i64, work)) * (&sj + Real::from_i64(j as i64 + 1, work));
            poch_pow = poch_pow * next * &inv_base_sq;
            factorial *= BigInt::from((2 * k + 1) * (2 * k + 2));
        }
        out.push(total.with_precision(bits));
        t = t * &inv_base_sq;
        sj = sj + &two;
    }
    out
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits();
    if !(s > &Real::one(bits)) {
        return Err(Error::DomainError(format!("zeta requires s > 1, got {}", s.to_plain(12))));
    }
    Ok(hurwitz_unchecked(s, &Real::one(bits), bits))
}

fn ln_gamma_r(s: &Real, bits: usize) -> Real {
    let half = Real::from_rational(&BigRational::new(1.into(), 2.into()), bits + 16);
    let half_s = s.with_precision(bits + 16) * &half;
    ln_gamma(&half_s, bits + 16) - half_s * Real::pi(bits + 16).ln()
}

fn require_positive(s: &Real, what: &str) -> Result<()> {
    if s.is_positive() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("{what} requires s > 0, got {}", s.to_plain(12))))
    }
}

/// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)` for real `s > 0`.
pub fn gamma_r(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    require_positive(s, "gamma_r")?;
    let bits = ctx.bits();
    Ok(ln_gamma_r(s, bits).exp().with_precision(bits))
}

/// `c_inf(s) = Gamma_R(s) / Gamma_R(s + 1)` for real `s > 0`.
pub fn c_infinity(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    require_positive(s, "c_infinity")?;
    let bits = ctx.bits();
    let s1 = s.with_precision(bits + 16) + Real::one(bits + 16);
    Ok((ln_gamma_r(s, bits) - ln_gamma_r(&s1, bits)).exp().with_precision(bits))
}

/// `xi(s) / xi(s + 1)` with `xi(s) = Gamma_R(s) zeta(s)`, for real `s > 1`.
pub fn xi_ratio(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits();
    if !(s > &Real::one(bits)) {
        return Err(Error::DomainError(format!("xi_ratio requires s > 1, got {}", s.to_plain(12))));
    }
    let s1 = s.with_precision(bits) + Real::one(bits);
    let c = c_infinity(s, ctx)?;
    Ok(c * zeta(s, ctx)? / zeta(&s1, ctx)?)
}

/// Smallest integer `s0 >= 2` with `xi_ratio(s) < 1` for every integer
/// `s0 <= s <= s_max`, or `None` if `xi_ratio(s_max) >= 1`.
///
/// This is a real-axis, integer-grid diagnostic, not a proof of a bound for
/// all real `s > s0`.
pub fn empirical_xi_threshold(s_max: u32, ctx: &PrecisionContext) -> Result<Option<u32>> {
    let bits = ctx.bits();
    let one = Real::one(bits);
    let mut threshold = None;
    for s in (2..=s_max).rev() {
        if xi_ratio(&Real::from_i64(s as i64, bits), ctx)? < one {
            threshold = Some(s);
        } else {
            break;
        }
    }
    Ok(threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn r(n: i64, c: &PrecisionContext) -> Real {
        Real::from_i64(n, c.bits())
    }

    fn close(a: &Real, b: &Real, digits: i32) -> bool {
        let bits = a.precision().max(b.precision());
        let scale = b.abs().max(Real::one(bits));
        let tol = Real::from_rational(&BigRational::new(1.into(), num_traits::pow(BigInt::from(10), digits as usize)), bits);
        (a - b).abs() <= tol * scale
    }

    /// zeta(3) = 5/2 sum_{n>=1} (-1)^{n+1} / (n^3 C(2n, n)), summed exactly.
    fn zeta3_oracle(bits: usize) -> Real {
        let mut acc = BigRational::zero();
        let mut central = BigInt::one();
        for n in 1..=200u64 {
            central = central * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n);
            let term = BigRational::new(BigInt::one(), BigInt::from(n * n * n) * &central);
            if n % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Real::from_rational(&(acc * BigRational::new(5.into(), 2.into())), bits)
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), rat_frac(1, 1));
        assert_eq!(bernoulli(1), rat_frac(-1, 2));
        assert_eq!(bernoulli(2), rat_frac(1, 6));
        assert_eq!(bernoulli(3), rat_frac(0, 1));
        assert_eq!(bernoulli(12), rat_frac(-691, 2730));
    }

    #[test]
    fn zeta_fixtures() {
        let c = ctx(30);
        let pi = Real::pi(c.bits());
        let z2 = zeta(&r(2, &c), &c).unwrap();
        assert!(close(&z2, &(&pi * &pi / r(6, &c)), 29));
        let z4 = zeta(&r(4, &c), &c).unwrap();
        assert!(close(&z4, &(pi.powi(4) / r(90, &c)), 29));
        assert!(close(&zeta(&r(3, &c), &c).unwrap(), &zeta3_oracle(c.bits()), 29));
        let big = ctx(60);
        assert!(close(&zeta(&Real::from_i64(3, big.bits()), &big).unwrap(), &zeta3_oracle(big.bits()), 59));
    }

    #[test]
    fn hurwitz_at_one_half() {
        let c = ctx(30);
        let half = Real::from_rational(&rat_frac(1, 2), c.bits());
        let pi = Real::pi(c.bits());
        let v = hurwitz_zeta(&r(2, &c), &half, &c).unwrap();
        assert!(close(&v, &(&pi * &pi / r(2, &c)), 29));
        let s = Real::from_rational(&rat_frac(7, 2), c.bits());
        let lhs = hurwitz_zeta(&s, &half, &c).unwrap();
        let factor = Real::from_i64(2, c.bits()).pow(&s) - r(1, &c);
        assert!(close(&lhs, &(factor * zeta(&s, &c).unwrap()), 28));
    }

    #[test]
    fn zeta_domain() {
        let c = ctx(20);
        assert!(matches!(zeta(&r(1, &c), &c), Err(Error::DomainError(_))));
        assert!(matches!(hurwitz_zeta(&r(2, &c), &r(0, &c), &c), Err(Error::DomainError(_))));
        assert!(matches!(gamma_r(&r(0, &c), &c), Err(Error::DomainError(_))));
        assert!(matches!(c_infinity(&r(-1, &c), &c), Err(Error::DomainError(_))));
        assert!(matches!(xi_ratio(&r(1, &c), &c), Err(Error::DomainError(_))));
    }

    #[test]
    fn gamma_r_values() {
        let c = ctx(30);
        let pi = Real::pi(c.bits());
        assert!(close(&gamma_r(&r(1, &c), &c).unwrap(), &r(1, &c), 29));
        assert!(close(&gamma_r(&r(2, &c), &c).unwrap(), &(r(1, &c) / &pi), 29));
        // pi^{-11/2} (945/32) sqrt(pi) = (945/32) pi^{-5}
        let expected = Real::from_rational(&rat_frac(945, 32), c.bits()) / pi.powi(5);
        assert!(close(&gamma_r(&r(11, &c), &c).unwrap(), &expected, 29));
    }

    #[test]
    fn gamma_r_recursion() {
        let c = ctx(30);
        let two_pi = Real::pi(c.bits()) * r(2, &c);
        for s in [rat_frac(1, 1), rat_frac(2, 1), rat_frac(3, 1), rat_frac(11, 2)] {
            let s = Real::from_rational(&s, c.bits());
            let lhs = gamma_r(&(&s + r(2, &c)), &c).unwrap();
            let rhs = gamma_r(&s, &c).unwrap() * &s / &two_pi;
            assert!(close(&lhs, &rhs, 29));
        }
    }

    #[test]
    fn c_infinity_values() {
        let c = ctx(30);
        assert!(close(&c_infinity(&r(1, &c), &c).unwrap(), &Real::pi(c.bits()), 29));
        assert!(close(&c_infinity(&r(2, &c), &c).unwrap(), &r(2, &c), 29));
        let mut previous = c_infinity(&r(1, &c), &c).unwrap();
        for s in 2..40 {
            let v = c_infinity(&r(s, &c), &c).unwrap();
            assert!(v < previous);
            previous = v;
        }
    }

    #[test]
    fn xi_ratio_closed_form_and_decay() {
        let c = ctx(30);
        let pi = Real::pi(c.bits());
        let expected = &pi * &pi / (r(3, &c) * zeta3_oracle(c.bits()));
        assert!(close(&xi_ratio(&r(2, &c), &c).unwrap(), &expected, 25));
        let x50 = xi_ratio(&r(50, &c), &c).unwrap();
        assert!(x50 > Real::from_f64(0.3, c.bits()) && x50 < Real::from_f64(0.4, c.bits()));
        let mut previous = xi_ratio(&r(10, &c), &c).unwrap();
        for s in 11..=100 {
            let v = xi_ratio(&r(s, &c), &c).unwrap();
            assert!(v < previous, "not decreasing at {s}");
            previous = v;
        }
    }

    #[test]
    fn doubling_precision_is_consistent() {
        let lo = ctx(30);
        let hi = ctx(60);
        for (p, q) in [(3, 1), (7, 2), (41, 1)] {
            let s_lo = Real::from_rational(&rat_frac(p, q), lo.bits());
            let s_hi = Real::from_rational(&rat_frac(p, q), hi.bits());
            let a = xi_ratio(&s_lo, &lo).unwrap();
            let b = xi_ratio(&s_hi, &hi).unwrap();
            assert!(close(&a, &b, lo.guaranteed_digits() as i32));
        }
    }

    #[test]
    fn threshold_is_reported() {
        let c = ctx(20);
        let t = empirical_xi_threshold(30, &c).unwrap().unwrap();
        let bits = c.bits();
        assert!(xi_ratio(&Real::from_i64(t as i64, bits), &c).unwrap() < Real::one(bits));
        assert!(xi_ratio(&Real::from_i64(t as i64 - 1, bits), &c).unwrap() >= Real::one(bits));
    }
}
