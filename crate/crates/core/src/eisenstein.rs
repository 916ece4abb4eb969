//! Weyl-group series attached to Eisenstein series on Kac-Moody groups:
//! the Gindikin-Karpelevich factor `c(lambda, w)`, truncated constant terms,
//! the dominating series `sum M^l(w) a^{w lambda}`, orbit counts below a
//! height cutoff, and the rank-one sum bound.
//!
//! Exponents `<mu, H>` are assembled exactly in rationals and only the final
//! exponential is evaluated in floating point. Series are truncated by
//! length and reported shell by shell; no limit is extrapolated.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cartan::CartanMatrix;
use crate::lattice::{pair_coroot, PointH, WeightVector};
use crate::rational::{format_rational, magnitude_bits};
use crate::real::{PrecisionContext, Real};
use crate::special::{c_infinity, hurwitz_zeta_ladder, xi_ratio};
use crate::weyl::{act_on_weight, enumerate, phi_w, tits_reduce, TitsClass, WeylElement, DEFAULT_TITS_CAP};
use crate::{Error, Result};

/// `|exponent|` above which `exp` leaves the binary exponent range.
const EXP_LIMIT: i64 = 1_400_000_000;

/// A real spectral parameter together with its Godement status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralParameter {
    lambda: WeightVector,
    godement: bool,
}

impl SpectralParameter {
    pub fn new(lambda: WeightVector) -> Self {
        let godement = lambda.pairings().iter().all(|c| *c > BigRational::one());
        SpectralParameter { lambda, godement }
    }

    pub fn lambda(&self) -> &WeightVector {
        &self.lambda
    }

    /// All coroot pairings exceed 1.
    pub fn is_godement(&self) -> bool {
        self.godement
    }

    /// All coroot pairings are positive.
    pub fn in_dual_chamber(&self) -> bool {
        self.lambda.is_strictly_dominant()
    }
}

/// Memoized `xi(s)/xi(s+1)` keyed by the exact argument.
#[derive(Default)]
pub struct XiCache {
    values: Mutex<HashMap<BigRational, Real>>,
}

impl XiCache {
    pub fn get(&self, s: &BigRational, ctx: &PrecisionContext) -> Result<Real> {
        if let Some(v) = self.values.lock().expect("xi cache").get(s) {
            return Ok(v.clone());
        }
        let v = xi_ratio(&Real::from_rational(s, ctx.bits()), ctx)?;
        self.values.lock().expect("xi cache").insert(s.clone(), v.clone());
        Ok(v)
    }
}

/// `c(lambda, w) = prod_{alpha in Phi_w} xi(<lambda, alpha^vee>) / xi(1 + <lambda, alpha^vee>)`.
pub fn c_lambda_w(
    cm: &CartanMatrix,
    lambda: &SpectralParameter,
    w: &WeylElement,
    ctx: &PrecisionContext,
) -> Result<Real> {
    c_lambda_w_cached(cm, lambda, w, ctx, &XiCache::default())
}

pub fn c_lambda_w_cached(
    cm: &CartanMatrix,
    lambda: &SpectralParameter,
    w: &WeylElement,
    ctx: &PrecisionContext,
    cache: &XiCache,
) -> Result<Real> {
    let mut product = Real::one(ctx.bits());
    for alpha in phi_w(cm, w)? {
        let s = pair_coroot(cm, lambda.lambda(), &alpha)?;
        if s <= BigRational::one() {
            return Err(Error::OutOfRange(format!(
                "<lambda, alpha^vee> = {} <= 1 for alpha = {alpha}",
                format_rational(&s)
            )));
        }
        product = product * cache.get(&s, ctx)?;
    }
    Ok(product)
}

/// `<w mu, H>` through the root coordinates of `w mu`.
pub fn orbit_exponent(cm: &CartanMatrix, w: &WeylElement, mu: &WeightVector, x: &PointH) -> BigRational {
    act_on_weight(cm, w, mu).eval_at(cm, x)
}

/// `exp(e)` at `bits` precision; `None` when the result underflows the
/// binary exponent range.
fn exp_exact(e: &BigRational, bits: usize) -> Result<Option<Real>> {
    let limit = BigRational::from_integer(BigInt::from(EXP_LIMIT));
    if *e > limit {
        return Err(Error::PrecisionExhausted(format!("exp({}) overflows", format_rational(e))));
    }
    if *e < -limit {
        return Ok(None);
    }
    let extra = magnitude_bits(e) as usize;
    let arg = Real::from_rational(e, bits + extra + 8);
    Ok(Some(arg.exp().with_precision(bits)))
}

/// One row of a [`ShellTable`].
#[derive(Debug, Clone)]
pub struct ShellRow {
    pub length: usize,
    pub count: usize,
    /// `T_l`: sum of absolute values of the terms of length `l`.
    pub abs_sum: Real,
    /// `S_l = S_{l-1} + sum of the terms of length l`.
    pub partial_sum: Real,
    /// `T_l / T_{l-1}`; absent for `l = 0` or a vanishing previous shell.
    pub ratio: Option<Real>,
}

#[derive(Debug, Clone)]
pub struct ShellTable {
    pub series: String,
    pub max_length: usize,
    pub digits: u32,
    pub rows: Vec<ShellRow>,
    /// Terms below `exp(-EXP_LIMIT)` that were counted as zero.
    pub underflowed_terms: usize,
    pub warnings: Vec<String>,
}

impl ShellTable {
    pub fn total(&self) -> Option<&Real> {
        self.rows.last().map(|r| &r.partial_sum)
    }

    pub fn shell(&self, length: usize) -> Option<&ShellRow> {
        self.rows.iter().find(|r| r.length == length)
    }

    pub fn to_csv(&self) -> String {
        let d = self.digits as usize;
        let mut out = String::new();
        for w in &self.warnings {
            out.push_str(&format!("# warning: {w}\n"));
        }
        out.push_str(&format!("# series={}\n", self.series));
        out.push_str(&format!("# max_length={}\n", self.max_length));
        out.push_str(&format!("# precision_digits={}\n", self.digits));
        out.push_str(&format!("# underflowed_terms={}\n", self.underflowed_terms));
        out.push_str("length,count,shell_abs_sum,partial_sum,ratio\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.length,
                r.count,
                r.abs_sum.to_scientific(d),
                r.partial_sum.to_scientific(d),
                r.ratio.as_ref().map(|x| x.to_scientific(d)).unwrap_or_default()
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let d = self.digits as usize;
        json!({
            "series": self.series,
            "max_length": self.max_length,
            "precision_digits": self.digits,
            "underflowed_terms": self.underflowed_terms,
            "warnings": self.warnings,
            "rows": self.rows.iter().map(|r| json!({
                "length": r.length,
                "count": r.count,
                "shell_abs_sum": r.abs_sum.to_scientific(d),
                "partial_sum": r.partial_sum.to_scientific(d),
                "ratio": r.ratio.as_ref().map(|x| x.to_scientific(d)),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Sums `term(w)` shell by shell; terms within a shell are evaluated in
/// parallel and added in shortlex order.
fn weyl_series<F>(
    cm: &CartanMatrix,
    series: &str,
    max_length: usize,
    ctx: &PrecisionContext,
    warnings: Vec<String>,
    term: F,
) -> Result<ShellTable>
where
    F: Fn(&WeylElement) -> Result<Option<Real>> + Sync,
{
    let bits = ctx.bits();
    let mut rows: Vec<ShellRow> = Vec::new();
    let mut partial = Real::zero(bits);
    let mut underflowed = 0;
    for shell in enumerate(cm, max_length) {
        let terms: Vec<Option<Real>> = shell.elements.par_iter().map(&term).collect::<Result<_>>()?;
        let mut signed = Real::zero(bits);
        let mut abs = Real::zero(bits);
        for t in terms {
            match t {
                Some(t) => {
                    abs = abs + t.abs();
                    signed = signed + t;
                }
                None => underflowed += 1,
            }
        }
        partial = partial + &signed;
        let ratio = rows.last().filter(|prev| !prev.abs_sum.is_zero()).map(|prev| &abs / &prev.abs_sum);
        rows.push(ShellRow { length: shell.length, count: shell.elements.len(), abs_sum: abs, partial_sum: partial.clone(), ratio });
    }
    Ok(ShellTable { series: series.into(), max_length, digits: ctx.digits(), rows, underflowed_terms: underflowed, warnings })
}

/// How a series treats an evaluation point that may lie outside the Tits cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TitsPolicy {
    /// Step cap for reducing the point into the fundamental chamber.
    pub cap: usize,
    /// Evaluate anyway, recording a warning, when the point is not certified interior.
    pub force: bool,
}

impl Default for TitsPolicy {
    fn default() -> Self {
        TitsPolicy { cap: DEFAULT_TITS_CAP, force: false }
    }
}

impl TitsPolicy {
    pub fn forced() -> Self {
        TitsPolicy { force: true, ..Self::default() }
    }
}

fn require_interior(cm: &CartanMatrix, x: &PointH, policy: TitsPolicy) -> Result<Vec<String>> {
    let reduction = tits_reduce(cm, x, policy.cap);
    if reduction.class == TitsClass::Interior {
        return Ok(Vec::new());
    }
    let what = match reduction.class {
        TitsClass::Boundary => "the point lies on the boundary of the Tits cone",
        _ => "the point was not reduced into the fundamental chamber within the step cap",
    };
    if policy.force {
        Ok(vec![format!("{what}; evaluating anyway")])
    } else {
        Err(Error::NotInTitsCone(what.into()))
    }
}

/// Truncated constant term
/// `sum_{l(w) <= L} exp(<w lambda + rho, H>) c(lambda, w)`, shell by shell.
pub fn constant_term(
    cm: &CartanMatrix,
    lambda: &SpectralParameter,
    x: &PointH,
    max_length: usize,
    ctx: &PrecisionContext,
    tits: TitsPolicy,
) -> Result<ShellTable> {
    if !lambda.is_godement() {
        return Err(Error::NotGodement("every coroot pairing of lambda must exceed 1".into()));
    }
    let warnings = require_interior(cm, x, tits)?;
    let rho = WeightVector::rho(cm.rank());
    let cache = XiCache::default();
    let bits = ctx.bits();
    weyl_series(cm, "constant_term", max_length, ctx, warnings, |w| {
        let exponent = orbit_exponent(cm, w, lambda.lambda(), x) + rho.eval_at(cm, x);
        let Some(e) = exp_exact(&exponent, bits)? else {
            return Ok(None);
        };
        Ok(Some(e * c_lambda_w_cached(cm, lambda, w, ctx, &cache)?))
    })
}

/// Truncated dominating series `sum_{l(w) <= L} M^{l(w)} exp(<w lambda, H>)`.
pub fn dominating_series(
    cm: &CartanMatrix,
    lambda: &SpectralParameter,
    x: &PointH,
    m: &BigRational,
    max_length: usize,
    ctx: &PrecisionContext,
    tits: TitsPolicy,
) -> Result<ShellTable> {
    if !lambda.in_dual_chamber() {
        return Err(Error::NotDominant("every coroot pairing of lambda must be positive".into()));
    }
    if !m.is_positive() {
        return Err(Error::DomainError(format!("M must be positive, got {}", format_rational(m))));
    }
    let warnings = require_interior(cm, x, tits)?;
    let bits = ctx.bits();
    let m_real = Real::from_rational(m, bits);
    weyl_series(cm, "dominating", max_length, ctx, warnings, |w| {
        let Some(e) = exp_exact(&orbit_exponent(cm, w, lambda.lambda(), x), bits)? else {
            return Ok(None);
        };
        Ok(Some(e * m_real.powi(w.length())))
    })
}

/// Largest `c(lambda, w)` and `M^{l(w)} c(lambda, w)` over `l(w) <= L`,
/// with the lengths where they are attained.
#[derive(Debug, Clone)]
pub struct CBound {
    pub max_c: Real,
    pub max_c_length: usize,
    pub max_weighted: Real,
    pub max_weighted_length: usize,
}

pub fn c_lambda_bound(
    cm: &CartanMatrix,
    lambda: &SpectralParameter,
    m: &BigRational,
    max_length: usize,
    ctx: &PrecisionContext,
) -> Result<CBound> {
    let bits = ctx.bits();
    let cache = XiCache::default();
    let m_real = Real::from_rational(m, bits);
    let mut best = CBound {
        max_c: Real::zero(bits),
        max_c_length: 0,
        max_weighted: Real::zero(bits),
        max_weighted_length: 0,
    };
    for shell in enumerate(cm, max_length) {
        let values: Vec<Real> = shell
            .elements
            .par_iter()
            .map(|w| c_lambda_w_cached(cm, lambda, w, ctx, &cache))
            .collect::<Result<_>>()?;
        let weight = m_real.powi(shell.length);
        for c in values {
            let weighted = &c * &weight;
            if c > best.max_c {
                best.max_c = c;
                best.max_c_length = shell.length;
            }
            if weighted > best.max_weighted {
                best.max_weighted = weighted;
                best.max_weighted_length = shell.length;
            }
        }
    }
    Ok(best)
}

/// Number of orbit points `w mu` with `<w mu, H> >= -N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCount {
    pub count: usize,
    pub max_length_reached: usize,
    /// The search frontier emptied, so `count` is exact.
    pub exhausted: bool,
}

fn check_looijenga_inputs(mu: &WeightVector, x: &PointH) -> Result<()> {
    if !mu.is_dominant() || !mu.is_integral() {
        return Err(Error::NotDominant("mu must have nonnegative integral coroot pairings".into()));
    }
    if !x.values().iter().all(Signed::is_positive) {
        return Err(Error::NotDominant("the point must have all alpha_i(H) > 0".into()));
    }
    Ok(())
}

/// Breadth-first search over the orbit of a dominant `mu`, moving
/// `nu -> w_i nu` whenever `<nu, alpha_i^vee> > 0`. Along such steps
/// `<nu, H>` strictly decreases, so branches below `-N` are pruned.
pub fn looijenga_count(
    cm: &CartanMatrix,
    mu: &WeightVector,
    x: &PointH,
    n: &BigRational,
    cap_length: usize,
) -> Result<OrbitCount> {
    check_looijenga_inputs(mu, x)?;
    let floor = -n.clone();
    let start_value = mu.eval_at(cm, x);
    if start_value < floor {
        return Ok(OrbitCount { count: 0, max_length_reached: 0, exhausted: true });
    }
    let mut frontier = vec![(mu.clone(), start_value)];
    let mut count = 1;
    let mut depth = 0;
    while !frontier.is_empty() && depth < cap_length {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (nu, value) in &frontier {
            for i in 0..cm.rank() {
                let c = &nu.pairings()[i];
                if !c.is_positive() {
                    continue;
                }
                let moved = value - c * &x.values()[i];
                if moved < floor {
                    continue;
                }
                let child = nu.reflect(cm, i);
                if seen.insert(child.clone()) {
                    next.push((child, moved));
                }
            }
        }
        if next.is_empty() {
            frontier.clear();
            break;
        }
        depth += 1;
        count += next.len();
        frontier = next;
    }
    let exhausted = frontier.is_empty() || !frontier_has_successor(cm, &frontier, x, &floor);
    Ok(OrbitCount { count, max_length_reached: depth, exhausted })
}

fn frontier_has_successor(cm: &CartanMatrix, frontier: &[(WeightVector, BigRational)], x: &PointH, floor: &BigRational) -> bool {
    frontier.iter().any(|(nu, value)| {
        (0..cm.rank()).any(|i| {
            let c = &nu.pairings()[i];
            c.is_positive() && value - c * &x.values()[i] >= *floor
        })
    })
}

/// Unpruned reference count: distinct `w mu` with `l(w) <= cap_length` and
/// `<w mu, H> >= -N`, from full group enumeration.
pub fn looijenga_count_unpruned(
    cm: &CartanMatrix,
    mu: &WeightVector,
    x: &PointH,
    n: &BigRational,
    cap_length: usize,
) -> Result<usize> {
    check_looijenga_inputs(mu, x)?;
    let floor = -n.clone();
    let mut seen = HashSet::new();
    for shell in enumerate(cm, cap_length) {
        for w in &shell.elements {
            let nu = act_on_weight(cm, w, mu);
            if nu.eval_at(cm, x) >= floor {
                seen.insert(nu);
            }
        }
    }
    Ok(seen.len())
}

/// Certified comparison for the rank-one sum
/// `sum_{m in Z} (1 + (x0 + m)^2 / a^2)^{-(s+1)/2} <= 2 + a c_inf(s)`.
#[derive(Debug, Clone)]
pub struct Rank1Bound {
    /// Upper bound for the sum: evaluated value plus all truncation bounds.
    pub lhs: Real,
    pub rhs: Real,
    pub holds: bool,
    /// Half-width of the directly summed window.
    pub window: usize,
    /// Total truncation bound included in `lhs`.
    pub error_bound: Real,
}

impl Rank1Bound {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "lhs": self.lhs.to_scientific(digits),
            "rhs": self.rhs.to_scientific(digits),
            "holds": self.holds,
            "window": self.window,
            "error_bound": self.error_bound.to_scientific(6),
        })
    }
}

/// The sum is split at `|m| <= M0`. Each tail is
/// `a^{2p} sum_{k>=0} (q + k)^{-2p} (1 + a^2/(q+k)^2)^{-p}`, `p = (s+1)/2`,
/// expanded binomially into Hurwitz zeta values `zeta(2p + 2j, q)`; the
/// expansion converges geometrically because `q > 4a`.
pub fn rank1_sum_bound(
    s: &BigRational,
    a: &BigRational,
    x0: &BigRational,
    ctx: &PrecisionContext,
) -> Result<Rank1Bound> {
    if !s.is_positive() {
        return Err(Error::DomainError(format!("s must be positive, got {}", format_rational(s))));
    }
    if !a.is_positive() {
        return Err(Error::DomainError(format!("a_alpha must be positive, got {}", format_rational(a))));
    }
    let bits = ctx.bits();
    let work = bits + 16;
    let bound_ctx = PrecisionContext::new(ctx.digits() + 5)?;
    let window = (BigRational::from_integer(4.into()) * a + x0.abs()).ceil().to_integer().to_usize().ok_or_else(|| {
        Error::DomainError("a_alpha is too large for the summation window".into())
    })? + 2;
    let p = (s + BigRational::one()) / BigRational::from_integer(2.into());
    let p_real = Real::from_rational(&p, work);
    let a_sq = Real::from_rational(&(a * a), work);
    let one = Real::one(work);
    let mut direct = Real::zero(work);
    let w = window as i64;
    for m in -w..=w {
        let u = Real::from_rational(&(x0 + BigRational::from_integer(m.into())), work);
        let base = &one + &u * &u / &a_sq;
        direct = direct + (-(&p_real) * base.ln()).exp();
    }
    let wr = BigRational::from_integer(BigInt::from(window + 1));
    let (right, right_err) = rank1_tail(&p, a, &(x0 + &wr), &bound_ctx)?;
    let (left, left_err) = rank1_tail(&p, a, &(&wr - x0), &bound_ctx)?;
    let rounding = Real::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << (bits - 8)), work);
    let sum = direct + right + left;
    let error_bound = right_err + left_err + &rounding * &sum;
    let lhs = (sum + &error_bound).with_precision(bits);
    let a_real = Real::from_rational(a, bits);
    let rhs = Real::from_i64(2, bits) + a_real * c_infinity(&Real::from_rational(s, bits), ctx)?;
    let holds = lhs <= rhs;
    Ok(Rank1Bound { lhs, rhs, holds, window, error_bound: error_bound.with_precision(bits) })
}

/// `sum_{k>=0} (1 + (q+k)^2/a^2)^{-p}` and a bound on the truncation of its
/// binomial expansion `a^{2p} sum_j binom(-p, j) a^{2j} zeta(2p + 2j, q)`.
///
/// Since `zeta(2p + 2j, q) <= q^{-2j} zeta(2p, q)`, the `j`-th term is at most
/// `|binom(-p, j)| (a/q)^{2j} zeta(2p, q)` and the remainder is geometric.
fn rank1_tail(p: &BigRational, a: &BigRational, q: &BigRational, ctx: &PrecisionContext) -> Result<(Real, Real)> {
    let bits = ctx.bits();
    let one = Real::one(bits);
    let two = Real::from_i64(2, bits);
    let p_real = Real::from_rational(p, bits);
    let q_real = Real::from_rational(q, bits);
    let a_sq = Real::from_rational(&(a * a), bits);
    let ratio = Real::from_rational(&(a * a / (q * q)), bits);
    let target = Real::from_rational(&BigRational::new(BigInt::one(), BigInt::one() << bits), bits);
    let prefactor = (&p_real * a_sq.ln()).exp();
    // Estimate how many expansion terms are needed so the zeta values can be
    // produced in one pass; the exact remainder test below still decides.
    let (p_f, ratio_f) = (p_real.to_f64(), ratio.to_f64());
    let mut log_term = 0.0f64;
    let mut count = 1;
    while log_term + (count as f64) * ratio_f.log2() > -(bits as f64) - 8.0 && count < 20 * bits {
        log_term += ((p_f + count as f64 - 1.0) / count as f64).log2().max(0.0);
        count += 1;
    }
    let mut count = count + 4;
    loop {
        let zetas = hurwitz_zeta_ladder(&(&two * &p_real), &q_real, count, ctx)?;
        let leading = &zetas[0];
        let mut total = Real::zero(bits);
        let mut binom = Real::one(bits);
        let mut a_pow = Real::one(bits);
        let mut ratio_pow = Real::one(bits);
        for (j, z) in zetas.iter().enumerate() {
            let jr = Real::from_i64(j as i64, bits);
            total = total + &binom * &a_pow * z;
            binom = binom * (-(&p_real) - &jr) / Real::from_i64(j as i64 + 1, bits);
            a_pow = a_pow * &a_sq;
            ratio_pow = ratio_pow * &ratio;
            let step = ((&p_real + &jr + &one) / Real::from_i64(j as i64 + 2, bits)).max(one.clone()) * &ratio;
            if step < one {
                let remainder = binom.abs() * &ratio_pow * leading / (&one - &step) * &prefactor;
                if remainder < target {
                    return Ok((total * &prefactor, remainder));
                }
            }
        }
        if count >= 20 * bits {
            return Err(Error::PrecisionExhausted("rank-one tail expansion did not converge".into()));
        }
        count *= 2;
    }
}

/// Exact `<w lambda, H>` by the alternative route `lambda(w^{-1} H)`.
pub fn orbit_exponent_via_point(cm: &CartanMatrix, w: &WeylElement, mu: &WeightVector, x: &PointH) -> BigRational {
    let moved = crate::weyl::act_on_point(cm, &w.inverse(), x);
    mu.eval_at(cm, &moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RootVector;
    use crate::rational::{rat, rat_frac};

    fn cm(rows: &[&[i64]]) -> CartanMatrix {
        CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn close(a: &Real, b: &Real, digits: usize) -> bool {
        let bits = a.precision().max(b.precision());
        let tol = Real::from_rational(&BigRational::new(1.into(), num_traits::pow(BigInt::from(10), digits)), bits);
        (a - b).abs() <= tol * b.abs().max(Real::one(bits))
    }

    fn two_rho(r: usize) -> SpectralParameter {
        SpectralParameter::new(WeightVector::from_i64s(&vec![2; r]))
    }

    #[test]
    fn godement_status() {
        assert!(two_rho(2).is_godement());
        let edge = SpectralParameter::new(WeightVector(vec![rat(1), rat(3)]));
        assert!(!edge.is_godement());
        assert!(edge.in_dual_chamber());
    }

    #[test]
    fn c_factor_examples() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let ctx = PrecisionContext::default();
        let lambda = two_rho(2);
        let e = WeylElement::identity(2);
        assert!(close(&c_lambda_w(&h, &lambda, &e, &ctx).unwrap(), &Real::one(ctx.bits()), 30));
        let xi2 = xi_ratio(&Real::from_i64(2, ctx.bits()), &ctx).unwrap();
        let w1 = WeylElement::from_word(&h, &[1]).unwrap();
        assert!(close(&c_lambda_w(&h, &lambda, &w1, &ctx).unwrap(), &xi2, 28));
        let w = WeylElement::from_word(&h, &[0, 1]).unwrap();
        let deep = RootVector::from_i64s(&[1, 3]);
        let s = pair_coroot(&h, lambda.lambda(), &deep).unwrap();
        assert_eq!(s, rat(8));
        let expected = &xi2 * xi_ratio(&Real::from_rational(&s, ctx.bits()), &ctx).unwrap();
        assert!(close(&c_lambda_w(&h, &lambda, &w, &ctx).unwrap(), &expected, 28));
    }

    #[test]
    fn c_factor_out_of_range() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let lambda = SpectralParameter::new(WeightVector(vec![rat(1), rat(2)]));
        let w = WeylElement::from_word(&h, &[0]).unwrap();
        let err = c_lambda_w(&h, &lambda, &w, &PrecisionContext::default()).unwrap_err();
        assert!(matches!(err, Error::OutOfRange(_)));
    }

    #[test]
    fn exponent_routes_agree() {
        let h = cm(&[&[2, -2], &[-3, 2]]);
        let mu = WeightVector(vec![rat_frac(5, 2), rat(3)]);
        let x = PointH(vec![rat(1), rat_frac(2, 3)]);
        for w in enumerate(&h, 8).flat_map(|s| s.elements) {
            assert_eq!(orbit_exponent(&h, &w, &mu, &x), orbit_exponent_via_point(&h, &w, &mu, &x));
        }
    }

    #[test]
    fn constant_term_identity_shell_and_counts() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let ctx = PrecisionContext::new(20).unwrap();
        let x = PointH::from_i64s(&[1, 1]);
        let table = constant_term(&h, &two_rho(2), &x, 6, &ctx, TitsPolicy::default()).unwrap();
        let t0 = Real::from_i64(-6, ctx.bits()).exp();
        assert!(close(&table.rows[0].abs_sum, &t0, 20));
        let counts: Vec<usize> = table.rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, vec![1, 2, 2, 2, 2, 2, 2]);
        assert!(table.rows[0].ratio.is_none());
        let csv = table.to_csv();
        assert!(csv.contains("length,count,shell_abs_sum,partial_sum,ratio\n"));
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 8);
    }

    #[test]
    fn constant_term_preconditions() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let ctx = PrecisionContext::new(15).unwrap();
        let x = PointH::from_i64s(&[1, 1]);
        let edge = SpectralParameter::new(WeightVector(vec![rat(1), rat(2)]));
        assert!(matches!(constant_term(&h, &edge, &x, 2, &ctx, TitsPolicy::default()), Err(Error::NotGodement(_))));
        let origin = PointH::from_i64s(&[0, 0]);
        assert!(matches!(constant_term(&h, &two_rho(2), &origin, 2, &ctx, TitsPolicy::default()), Err(Error::NotInTitsCone(_))));
        let forced = constant_term(&h, &two_rho(2), &origin, 2, &ctx, TitsPolicy::forced()).unwrap();
        assert_eq!(forced.warnings.len(), 1);
        assert!(forced.to_csv().starts_with("# warning:"));
    }

    #[test]
    fn dominating_single_term() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let ctx = PrecisionContext::new(20).unwrap();
        let x = PointH::from_i64s(&[1, 1]);
        let rho = SpectralParameter::new(WeightVector::rho(2));
        let table = dominating_series(&h, &rho, &x, &rat(7), 0, &ctx, TitsPolicy::default()).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert!(close(table.total().unwrap(), &Real::from_i64(-2, ctx.bits()).exp(), 20));
        assert!(dominating_series(&h, &rho, &x, &rat(0), 0, &ctx, TitsPolicy::default()).is_err());
        let bad = SpectralParameter::new(WeightVector(vec![rat(0), rat(1)]));
        assert!(matches!(dominating_series(&h, &bad, &x, &rat(1), 0, &ctx, TitsPolicy::default()), Err(Error::NotDominant(_))));
    }

    #[test]
    fn looijenga_counts() {
        let a2 = cm(&[&[2, -1], &[-1, 2]]);
        let x = PointH::from_i64s(&[1, 1]);
        let c = looijenga_count(&a2, &WeightVector::rho(2), &x, &rat(1000), 50).unwrap();
        assert_eq!(c, OrbitCount { count: 6, max_length_reached: 3, exhausted: true });
        let c = looijenga_count(&a2, &WeightVector::from_i64s(&[1, 0]), &x, &rat(1000), 50).unwrap();
        assert_eq!(c.count, 3);
        let h = cm(&[&[2, -3], &[-3, 2]]);
        for n in [1, 5, 30, 200] {
            let pruned = looijenga_count(&h, &WeightVector::rho(2), &x, &rat(n), 8).unwrap();
            let brute = looijenga_count_unpruned(&h, &WeightVector::rho(2), &x, &rat(n), 8).unwrap();
            assert_eq!(pruned.count, brute);
        }
        let capped = looijenga_count(&h, &WeightVector::rho(2), &x, &rat(1_000_000), 3).unwrap();
        assert!(!capped.exhausted);
        assert!(looijenga_count(&h, &WeightVector(vec![rat_frac(1, 2), rat(1)]), &x, &rat(5), 3).is_err());
        assert!(looijenga_count(&h, &WeightVector::rho(2), &PointH::from_i64s(&[0, 1]), &rat(5), 3).is_err());
    }

    #[test]
    fn rank1_closed_forms() {
        let ctx = PrecisionContext::new(20).unwrap();
        let bits = ctx.bits();
        let pi = Real::pi(bits);
        let at_zero = rank1_sum_bound(&rat(1), &rat(1), &rat(0), &ctx).unwrap();
        let coth = &pi / pi.tanh();
        assert!(close(&at_zero.lhs, &coth, 15));
        assert!(at_zero.holds);
        assert!(close(&at_zero.rhs, &(Real::from_i64(2, bits) + &pi), 18));
        let at_half = rank1_sum_bound(&rat(1), &rat(1), &rat_frac(1, 2), &ctx).unwrap();
        assert!(close(&at_half.lhs, &(&pi * pi.tanh()), 15));
        assert!(rank1_sum_bound(&rat(0), &rat(1), &rat(0), &ctx).is_err());
        assert!(rank1_sum_bound(&rat(1), &rat(-1), &rat(0), &ctx).is_err());
    }

    #[test]
    fn c_factor_bounded() {
        let h = cm(&[&[2, -3], &[-3, 2]]);
        let ctx = PrecisionContext::new(15).unwrap();
        let b = c_lambda_bound(&h, &two_rho(2), &rat(2), 12, &ctx).unwrap();
        assert!(b.max_c.is_finite() && b.max_weighted.is_finite());
        assert!(b.max_c_length <= 2);
    }
}
