//! Dense univariate polynomials in the formal variable `s` over the exact
//! rationals. Coefficients are stored by ascending degree; the zero
//! polynomial is the empty list, so the stored leading coefficient is
//! always nonzero.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyS {
    coeffs: Vec<BigRational>,
}

impl PolyS {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyS { coeffs }
    }

    pub fn zero() -> Self {
        PolyS { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyS::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        PolyS::new(vec![c])
    }

    /// c0 + c1*s.
    pub fn linear(c0: BigRational, c1: BigRational) -> Self {
        PolyS::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return PolyS::zero();
        }
        PolyS {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides all coefficients by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => PolyS::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn div_rem(&self, div: &PolyS) -> (PolyS, PolyS) {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = div.leading_coeff().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            for (i, c) in div.coeffs.iter().enumerate() {
                let v = &rem[k + i] - c * &factor;
                rem[k + i] = v;
            }
            // The leading term cancels exactly.
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            quot[k] = factor;
        }
        (PolyS::new(quot), PolyS::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm over the rationals.
    pub fn gcd(&self, other: &PolyS) -> PolyS {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u32) -> PolyS {
        let mut base = self.clone();
        let mut acc = PolyS::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &PolyS {
    type Output = PolyS;
    fn add(self, rhs: &PolyS) -> PolyS {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        PolyS::new(out)
    }
}

impl Sub for &PolyS {
    type Output = PolyS;
    fn sub(self, rhs: &PolyS) -> PolyS {
        self + &(-rhs)
    }
}

impl Neg for &PolyS {
    type Output = PolyS;
    fn neg(self) -> PolyS {
        PolyS {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyS {
    type Output = PolyS;
    fn mul(self, rhs: &PolyS) -> PolyS {
        if self.is_zero() || rhs.is_zero() {
            return PolyS::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        PolyS::new(out)
    }
}

impl fmt::Display for PolyS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
