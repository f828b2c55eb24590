//! Rational functions in the formal variable `s`, stored fully reduced with
//! a monic denominator so that structural equality is semantic equality,
//! plus the gamma-factor constructions used by the series coefficients.

use super::poly::PolyS;
use super::{factorial, ExactError};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced rational function num/den with monic den.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunS {
    num: PolyS,
    den: PolyS,
}

impl RatFunS {
    /// Builds and normalizes num/den. Panics if `den` is zero.
    pub fn new(num: PolyS, den: PolyS) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        let mut out = RatFunS { num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = PolyS::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.monic();
        }
    }

    pub fn zero() -> Self {
        RatFunS {
            num: PolyS::zero(),
            den: PolyS::one(),
        }
    }

    pub fn one() -> Self {
        RatFunS {
            num: PolyS::one(),
            den: PolyS::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunS {
            num: PolyS::constant(c),
            den: PolyS::one(),
        }
    }

    pub fn from_poly(p: PolyS) -> Self {
        RatFunS {
            num: p,
            den: PolyS::one(),
        }
    }

    pub fn num(&self) -> &PolyS {
        &self.num
    }

    pub fn den(&self) -> &PolyS {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the value is the constant polynomial `c`.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().unwrap_or(0) == 0
    }

    pub fn recip(&self) -> Self {
        RatFunS::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a non-pole rational point.
    pub fn eval(&self, s0: &BigRational) -> Result<BigRational, ExactError> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(ExactError::Pole(s0.to_string()));
        }
        Ok(self.num.eval(s0) / d)
    }
}

/// Decides equality of two rational functions. Because values are kept in
/// canonical form this is structural equality; it agrees with
/// cross-multiplied polynomial equality.
pub fn ratfun_equal(a: &RatFunS, b: &RatFunS) -> bool {
    a == b
}

impl Add for &RatFunS {
    type Output = RatFunS;
    fn add(self, rhs: &RatFunS) -> RatFunS {
        RatFunS::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunS {
    type Output = RatFunS;
    fn sub(self, rhs: &RatFunS) -> RatFunS {
        self + &(-rhs)
    }
}

impl Neg for &RatFunS {
    type Output = RatFunS;
    fn neg(self) -> RatFunS {
        RatFunS {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunS {
    type Output = RatFunS;
    fn mul(self, rhs: &RatFunS) -> RatFunS {
        RatFunS::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunS {
    type Output = RatFunS;
    fn div(self, rhs: &RatFunS) -> RatFunS {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunS::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RatFunS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The rational function Gamma(k - s + 1) / Gamma(l - s + 1), built by
/// repeated application of Gamma(x + 1) = x * Gamma(x): the polynomial
/// prod_{t=l+1..=k} (t - s) when k >= l, and the reciprocal of
/// prod_{t=k+1..=l} (t - s) otherwise.
pub fn gamma_ratio(k: u64, l: u64) -> RatFunS {
    let prod = |lo: u64, hi: u64| -> PolyS {
        let mut acc = PolyS::one();
        for t in lo..=hi {
            acc = &acc
                * &PolyS::linear(
                    BigRational::from_integer(t.into()),
                    -BigRational::one(),
                );
        }
        acc
    };
    if k >= l {
        if k == l {
            RatFunS::one()
        } else {
            RatFunS::from_poly(prod(l + 1, k))
        }
    } else {
        RatFunS::new(PolyS::one(), prod(k + 1, l))
    }
}

/// 1 / Gamma(k - s + 1) for integer `s`: equals 1/(k-s)! when k - s >= 0 and
/// exactly 0 otherwise, reflecting the pole of Gamma at nonpositive
/// integers. Integer-`s` series therefore restrict themselves to k >= s
/// with no special-cased summation ranges.
pub fn reciprocal_gamma_int(k: u64, s: i64) -> BigRational {
    let d = k as i64 - s;
    if d < 0 {
        BigRational::zero()
    } else {
        BigRational::new(1.into(), factorial(d as u64))
    }
}
