//! Arbitrary-precision reals and the precision context used by the special
//! functions and series evaluators.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision for all high-precision evaluations.
///
/// Values returned by the special functions are accurate to
/// `guaranteed_digits()` significant decimal digits on their documented
/// domains: truncation errors are bounded below `2^-bits()` explicitly and
/// rounding is absorbed by the guard bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { digits: Self::DEFAULT_DIGITS }
    }
}

impl PrecisionContext {
    pub const DEFAULT_DIGITS: u32 = 30;
    pub const MIN_DIGITS: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Config(format!("precision_digits must be at least {}, got {digits}", Self::MIN_DIGITS)));
        }
        Ok(PrecisionContext { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guaranteed_digits(&self) -> u32 {
        self.digits
    }

    /// Binary working precision: the requested decimal digits plus guard bits.
    pub fn bits(&self) -> usize {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }
}

/// A binary floating-point number with an explicit mantissa length.
///
/// Binary operations round to the larger precision of the two operands.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(bits: usize) -> Self {
        Real(BigFloat::from_word(0, bits))
    }

    pub fn one(bits: usize) -> Self {
        Real(BigFloat::from_word(1, bits))
    }

    pub fn from_i64(n: i64, bits: usize) -> Self {
        Real(BigFloat::from_i64(n, bits))
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        Real(BigFloat::from_f64(x, bits))
    }

    pub fn from_bigint(n: &BigInt, bits: usize) -> Self {
        Real(with_consts(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, bits, RM, cc)))
    }

    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        let n = Self::from_bigint(q.numer(), bits + 8);
        let d = Self::from_bigint(q.denom(), bits + 8);
        Real(n.0.div(&d.0, bits, RM))
    }

    pub fn pi(bits: usize) -> Self {
        Real(with_consts(|cc| cc.pi(bits, RM)))
    }

    pub fn precision(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(64)
    }

    /// Returns a copy rounded to `bits` of mantissa.
    pub fn with_precision(&self, bits: usize) -> Self {
        let mut x = self.0.clone();
        x.set_precision(bits, RM).expect("precision change");
        Real(x)
    }

    fn joint(&self, other: &Real) -> usize {
        self.precision().max(other.precision())
    }

    pub fn exp(&self) -> Self {
        Real(with_consts(|cc| self.0.exp(self.precision(), RM, cc)))
    }

    pub fn ln(&self) -> Self {
        Real(with_consts(|cc| self.0.ln(self.precision(), RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.precision(), RM))
    }

    pub fn tanh(&self) -> Self {
        Real(with_consts(|cc| self.0.tanh(self.precision(), RM, cc)))
    }

    /// `self^e` for `self > 0`.
    pub fn pow(&self, e: &Real) -> Self {
        Real(with_consts(|cc| self.0.pow(&e.0, self.joint(e), RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, self.precision(), RM))
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero() && !self.0.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero() && !self.0.is_nan()
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero.
    pub fn binary_exponent(&self) -> Option<i32> {
        if self.0.is_zero() || !self.is_finite() {
            None
        } else {
            self.0.exponent()
        }
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        self.to_scientific(20).parse().unwrap_or(f64::NAN)
    }

    /// Sign, rounded significant digits and decimal exponent `e` such that the
    /// value is `0.d1 d2 ... * 10^e`.
    fn decimal_digits(&self, significant: usize) -> (bool, Vec<u8>, i64) {
        let (sign, mut digits, exp) =
            with_consts(|cc| self.0.convert_to_radix(Radix::Dec, RM, cc)).expect("decimal conversion");
        let negative = sign == Sign::Neg;
        let mut exp = exp as i64;
        if let Some(first) = digits.iter().position(|&d| d != 0) {
            digits.drain(..first);
            exp -= first as i64;
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        if digits.is_empty() {
            return (false, vec![0; significant], 1);
        }
        if digits.len() > significant {
            let round_up = digits[significant] >= 5;
            digits.truncate(significant);
            if round_up {
                let mut k = significant;
                loop {
                    if k == 0 {
                        digits.insert(0, 1);
                        digits.truncate(significant);
                        exp += 1;
                        break;
                    }
                    k -= 1;
                    if digits[k] == 9 {
                        digits[k] = 0;
                    } else {
                        digits[k] += 1;
                        break;
                    }
                }
            }
        }
        digits.resize(significant, 0);
        (negative, digits, exp)
    }

    /// Fixed-width scientific notation with `significant` digits, e.g.
    /// `1.2300e-03`.
    pub fn to_scientific(&self, significant: usize) -> String {
        if !self.is_finite() {
            return self.0.to_string();
        }
        let significant = significant.max(1);
        let (negative, digits, exp) = self.decimal_digits(significant);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push((b'0' + digits[0]) as char);
        if significant > 1 {
            out.push('.');
            out.extend(digits[1..].iter().map(|&d| (b'0' + d) as char));
        }
        let e = exp - 1;
        out.push_str(&format!("e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs()));
        out
    }

    /// Positional notation with `significant` digits when the magnitude is
    /// moderate, scientific otherwise.
    pub fn to_plain(&self, significant: usize) -> String {
        if !self.is_finite() {
            return self.0.to_string();
        }
        let significant = significant.max(1);
        let (negative, digits, exp) = self.decimal_digits(significant);
        if exp < -4 || exp > significant as i64 {
            return self.to_scientific(significant);
        }
        let text: String = digits.iter().map(|&d| (b'0' + d) as char).collect();
        let body = if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), text)
        } else if exp as usize >= significant {
            format!("{}{}", text, "0".repeat(exp as usize - significant))
        } else {
            format!("{}.{}", &text[..exp as usize], &text[exp as usize..])
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        f.write_str(&self.to_scientific(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$method(&rhs.0, self.joint(rhs), RM))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-&self.0)
    }
}
