//! Exact 2x2 integer matrices and the fractional-linear action on slopes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::quad::QuadraticNumber;

/// Row-major exact 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMatrix2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        IntMatrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `[[0,1],[1,0]]`, the axis swap.
    pub fn swap() -> Self {
        Self::new(0, 1, 1, 0)
    }

    /// `[[-1,0],[0,1]]`, negation of the x axis.
    pub fn negate_x() -> Self {
        Self::new(-1, 0, 0, 1)
    }

    /// `[[1,0],[0,-1]]`, negation of the y axis.
    pub fn negate_y() -> Self {
        Self::new(1, 0, 0, -1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        IntMatrix2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Inverse, defined only for unimodular matrices.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_one() {
            Ok(IntMatrix2 {
                a: self.d.clone(),
                b: -&self.b,
                c: -&self.c,
                d: self.a.clone(),
            })
        } else if det == BigInt::from(-1) {
            Ok(IntMatrix2 {
                a: -&self.d,
                b: self.b.clone(),
                c: self.c.clone(),
                d: -&self.a,
            })
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }

    /// Hyperbolic in SL(2,Z): `|trace| > 2` and `det = 1`.
    pub fn is_hyperbolic(&self) -> bool {
        self.det().is_one() && self.trace().abs() > BigInt::from(2)
    }

    pub fn transpose(&self) -> Self {
        IntMatrix2 {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Applies the matrix to a column vector `(m, n)`.
    pub fn apply(&self, m: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
        (&self.a * m + &self.b * n, &self.c * m + &self.d * n)
    }

    /// Image of the slope `x` under multiplication: `Q.x = (c + d*x)/(a + b*x)`.
    pub fn slope_action(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        let a = QuadraticNumber::from_int(self.a.clone());
        let b = QuadraticNumber::from_int(self.b.clone());
        let c = QuadraticNumber::from_int(self.c.clone());
        let d = QuadraticNumber::from_int(self.d.clone());
        let den = a.checked_add(&b.checked_mul(x)?)?;
        if den.is_zero() {
            return Err(Error::SlopePole);
        }
        let num = c.checked_add(&d.checked_mul(x)?)?;
        num.checked_div(&den)
    }

    /// Parses `[[a,b],[c,d]]` or whitespace-separated `a b c d`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |tok: &str| Error::InvalidInput(format!("cannot parse matrix near '{tok}'"));
        let t = s.trim();
        if t.starts_with('[') {
            let cleaned: String = t
                .chars()
                .map(|ch| if ch == '[' || ch == ']' || ch == ',' { ' ' } else { ch })
                .collect();
            let parts: Vec<&str> = cleaned.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(bad(t));
            }
            let mut vals = Vec::with_capacity(4);
            for p in parts {
                vals.push(p.parse::<BigInt>().map_err(|_| bad(p))?);
            }
            Ok(Self::new(
                vals[0].clone(),
                vals[1].clone(),
                vals[2].clone(),
                vals[3].clone(),
            ))
        } else {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(bad(t));
            }
            let mut vals = Vec::with_capacity(4);
            for p in parts {
                vals.push(p.parse::<BigInt>().map_err(|_| bad(p))?);
            }
            Ok(Self::new(
                vals[0].clone(),
                vals[1].clone(),
                vals[2].clone(),
                vals[3].clone(),
            ))
        }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact eigenvalues and eigen-slopes of a hyperbolic SL(2,Z) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    /// Eigenvalue with `|lambda| < 1`.
    pub eigen_contracting: QuadraticNumber,
    pub eigen_expanding: QuadraticNumber,
    /// Slope of the contracting eigenline (alpha).
    pub slope_contracting: QuadraticNumber,
    /// Slope of the expanding eigenline (beta).
    pub slope_expanding: QuadraticNumber,
}
