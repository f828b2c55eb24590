//! The error-tracked value type and rigorously truncated elementary
//! series (exp, modified Bessel I), plus determinants with perturbation
//! bounds.

use crate::exact::{decimal_string, det_rational, rational_to_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An arbitrary-precision value with an explicit absolute-error bound.
/// The midpoint is stored as an exact rational, so error growth comes
/// only from input uncertainty, never from rounding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrackedReal {
    value: BigRational,
    abs_error: BigRational,
}

impl TrackedReal {
    pub fn new(value: BigRational, abs_error: BigRational) -> Self {
        assert!(!abs_error.is_negative(), "error bound must be nonnegative");
        TrackedReal { value, abs_error }
    }

    /// An exactly known value (zero error).
    pub fn exact(value: BigRational) -> Self {
        TrackedReal {
            value,
            abs_error: BigRational::zero(),
        }
    }

    pub fn exact_int(value: i64) -> Self {
        Self::exact(BigRational::from_integer(value.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn abs_error(&self) -> &BigRational {
        &self.abs_error
    }

    pub fn lower(&self) -> BigRational {
        &self.value - &self.abs_error
    }

    pub fn upper(&self) -> BigRational {
        &self.value + &self.abs_error
    }

    pub fn value_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }

    pub fn abs_error_f64(&self) -> f64 {
        rational_to_f64(&self.abs_error)
    }

    /// True if the other interval is entirely contained in this one.
    pub fn encloses(&self, other: &TrackedReal) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// True if every point of this interval is below every point of the
    /// other.
    pub fn certainly_less(&self, other: &TrackedReal) -> bool {
        self.upper() < other.lower()
    }

    /// |self - other| with summed error bounds.
    pub fn abs_diff(&self, other: &TrackedReal) -> TrackedReal {
        TrackedReal {
            value: (&self.value - &other.value).abs(),
            abs_error: &self.abs_error + &other.abs_error,
        }
    }

    /// Multiplies by an exactly known rational.
    pub fn scale(&self, c: &BigRational) -> TrackedReal {
        TrackedReal {
            value: &self.value * c,
            abs_error: &self.abs_error * c.abs(),
        }
    }
}

impl Add for &TrackedReal {
    type Output = TrackedReal;
    fn add(self, rhs: &TrackedReal) -> TrackedReal {
        TrackedReal {
            value: &self.value + &rhs.value,
            abs_error: &self.abs_error + &rhs.abs_error,
        }
    }
}

impl Sub for &TrackedReal {
    type Output = TrackedReal;
    fn sub(self, rhs: &TrackedReal) -> TrackedReal {
        TrackedReal {
            value: &self.value - &rhs.value,
            abs_error: &self.abs_error + &rhs.abs_error,
        }
    }
}

impl Neg for &TrackedReal {
    type Output = TrackedReal;
    fn neg(self) -> TrackedReal {
        TrackedReal {
            value: -&self.value,
            abs_error: self.abs_error.clone(),
        }
    }
}

impl Mul for &TrackedReal {
    type Output = TrackedReal;
    fn mul(self, rhs: &TrackedReal) -> TrackedReal {
        // |ab - a'b'| <= |a| eb + |b| ea + ea eb
        let err = self.value.abs() * &rhs.abs_error
            + rhs.value.abs() * &self.abs_error
            + &self.abs_error * &rhs.abs_error;
        TrackedReal {
            value: &self.value * &rhs.value,
            abs_error: err,
        }
    }
}

impl Div for &TrackedReal {
    type Output = TrackedReal;
    /// Panics if the divisor interval contains zero.
    fn div(self, rhs: &TrackedReal) -> TrackedReal {
        let b = rhs.value.abs();
        assert!(
            b > rhs.abs_error,
            "division by an interval containing zero"
        );
        // |a/b - a'/b'| <= (|a| eb + |b| ea) / (|b| (|b| - eb))
        let err = (self.value.abs() * &rhs.abs_error + &b * &self.abs_error)
            / (&b * (&b - &rhs.abs_error));
        TrackedReal {
            value: &self.value / &rhs.value,
            abs_error: err,
        }
    }
}

impl fmt::Display for TrackedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (+/- {})",
            decimal_string(&self.value, 20),
            decimal_string(&self.abs_error, 3)
        )
    }
}

impl Serialize for TrackedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TrackedReal", 2)?;
        st.serialize_field("value", &decimal_string(&self.value, 30))?;
        st.serialize_field("abs_error", &decimal_string(&self.abs_error, 3))?;
        st.end()
    }
}

/// exp(x) for rational x, truncated with a geometric majorant on the tail.
pub fn exp_rational(x: &BigRational, target: &BigRational) -> TrackedReal {
    let ax = x.abs();
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = term * x / BigRational::from_integer(j.into());
        sum += &term;
        // Remainder after term j: sum_{i>j} |x|^i/i! <= |term_{j+1}| / (1 - |x|/(j+2))
        let next = term.abs() * &ax / BigRational::from_integer((j as i64 + 1).into());
        let ratio_den = BigRational::one() - &ax / BigRational::from_integer((j as i64 + 2).into());
        if ratio_den.is_positive() {
            let bound = next / ratio_den;
            if bound <= *target {
                return TrackedReal::new(sum, bound);
            }
        }
        assert!(j < 100_000, "exp series failed to converge");
    }
}

/// Modified Bessel function I_k(x) for integer order and rational x,
/// summed until the ratio-test majorant for the tail drops below
/// `target`. I_{-k}(x) = I_k(x) by construction.
pub fn bessel_i(order: i64, x: &BigRational, target: &BigRational) -> TrackedReal {
    let nu = order.unsigned_abs();
    let half = x / BigRational::from_integer(2.into());
    let half_sq = &half * &half;
    // First term: (x/2)^nu / nu!
    let mut term = BigRational::one();
    for i in 1..=nu {
        term = term * &half / BigRational::from_integer(i.into());
    }
    if x.is_zero() {
        return TrackedReal::exact(if nu == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        });
    }
    let mut sum = term.clone();
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = term * &half_sq
            / BigRational::from_integer(BigInt::from(j) * BigInt::from(j + nu));
        sum += &term;
        // Tail after j terms: next term ratio r = (x/2)^2/((j+1)(j+nu+1)).
        let r = &half_sq
            / BigRational::from_integer(BigInt::from(j + 1) * BigInt::from(j + nu + 1));
        let r = r.abs();
        if r < BigRational::one() {
            let next = term.abs() * &r;
            let bound = &next / (BigRational::one() - &r);
            if bound <= *target {
                return TrackedReal::new(sum, bound);
            }
        }
        assert!(j < 1_000_000, "Bessel series failed to converge");
    }
}

/// Determinant of a matrix of tracked values: the midpoint determinant is
/// exact, and entry uncertainty enters through a Hadamard-type
/// perturbation bound, prod_i (|row_i|_1 + row_err_i) - prod_i |row_i|_1.
pub fn det_tracked(rows: &[Vec<TrackedReal>]) -> TrackedReal {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mid: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|e| e.value.clone()).collect())
        .collect();
    let det = det_rational(&mid);
    let mut with_err = BigRational::one();
    let mut without = BigRational::one();
    for row in rows {
        let norm: BigRational = row.iter().map(|e| e.value.abs()).sum();
        let err: BigRational = row.iter().map(|e| e.abs_error.clone()).sum();
        with_err *= &norm + &err;
        without *= norm;
    }
    TrackedReal::new(det, with_err - without)
}
