//! Exact scalar arithmetic: big rationals, factorial-family helpers,
//! polynomials and rational functions in the formal variable `s`, and
//! fraction-free determinants.
//!
//! The rational scalar type is [`num_rational::BigRational`], which keeps
//! values reduced with a positive denominator, so structural equality is
//! semantic equality.

mod linalg;
mod poly;
mod ratfun;

pub use linalg::{det_bigint, det_rational};
pub use poly::PolyS;
pub use ratfun::{gamma_ratio, ratfun_equal, reciprocal_gamma_int, RatFunS};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("evaluation at a pole: denominator vanishes at s = {0}")]
    Pole(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid rational literal: {0}")]
    ParseRational(String),
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// The superfactorial C_n = prod_{i=0}^{n-1} i!.
pub fn superfactorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for i in 1..n {
        fact *= i;
        acc *= &fact;
    }
    acc
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"p/q"` or a plain decimal like `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::ParseRational(text.to_string());
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let sign = if ip.trim_start().starts_with('-') { -1 } else { 1 };
        let int: BigInt = if ip.is_empty() || ip == "-" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        return Ok(BigRational::from_integer(int)
            + BigRational::new(frac * sign, scale));
    }
    let num: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

/// Rounds a rational to `digits` significant decimal digits, rendered in
/// scientific notation. Deterministic, so reports are byte-stable.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // Decimal exponent: number of digits of floor += fractional scaling.
    let mut exp10: i64 = 0;
    let mut num = ax.numer().clone();
    let mut den = ax.denom().clone();
    // Normalize so 1 <= num/den < 10.
    while num < den {
        num *= 10;
        exp10 -= 1;
    }
    while num >= &den * 10 {
        den *= 10;
        exp10 += 1;
    }
    // Extract `digits` digits with rounding.
    let scale = BigInt::from(10u32).pow((digits - 1) as u32);
    let scaled = &num * &scale;
    let (q, r) = num_integer::Integer::div_rem(&scaled, &den);
    let mut mant = q;
    if &r * 2 >= den {
        mant += 1;
    }
    let mut ms = mant.to_string();
    if ms.len() > digits {
        // Rounding carried past the leading digit (e.g. 9.99 -> 10.0).
        ms.truncate(digits);
        exp10 += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&ms[..1]);
    if digits > 1 {
        out.push('.');
        out.push_str(&ms[1..]);
    }
    out.push('e');
    out.push_str(&exp10.to_string());
    out
}

/// Converts a rational to f64, remaining accurate when numerator and
/// denominator are individually far beyond f64 range.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    let shift = 80i64 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as u64) / &den
    } else {
        num / (&den << (-shift) as u64)
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let v = qf * 2f64.powi(-shift as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// Exact integer power of a rational; `exp < 0` requires a nonzero base.
pub fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let p = base.pow(exp.unsigned_abs() as i32);
    if exp > 0 {
        p
    } else {
        p.recip()
    }
}

/// Sign of a permutation-free product helper: (-1)^k.
pub fn neg_one_pow(k: u64) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// True if the integer is exactly representable and nonnegative.
pub fn is_nonneg(x: &BigInt) -> bool {
    x.sign() != Sign::Minus
}
