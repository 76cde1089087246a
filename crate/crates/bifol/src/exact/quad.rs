//! Exact elements of real quadratic fields.
//!
//! A [`QuadraticNumber`] stores `(p + q*sqrt(d)) / r` with arbitrary-precision
//! integers, canonicalized so that equal values have identical tuples:
//! `r > 0`, `gcd(p, q, r) = 1`, `d` squarefree, and `d = 1` exactly when
//! `q = 0`. Every comparison reduces to integer arithmetic; there is no
//! floating point anywhere in this module.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact element `(p + q*sqrt(d)) / r` of a real quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

/// Strips the largest square factor from `n > 0`, returning (squarefree, root)
/// with `n = squarefree * root^2`.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = n.clone();
    let mut root = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= core {
        let f2 = &f * &f;
        while core.is_multiple_of(&f2) {
            core /= &f2;
            root *= &f;
        }
        f += 1;
    }
    (core, root)
}

impl QuadraticNumber {
    /// Builds `(p + q*sqrt(d)) / r` and normalizes.  `d` need not be
    /// squarefree; its square part is folded into `q`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let p = p.into();
        let mut q = q.into();
        let r = r.into();
        let mut d = d.into();
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::InvalidInput("negative discriminant".into()));
        }
        if !q.is_zero() {
            let (core, root) = squarefree_split(&d);
            q *= root;
            d = core;
            if d.is_one() || d.is_zero() {
                // sqrt(d) collapsed to an integer; fold into p.
                let mut p2 = p;
                if d.is_one() {
                    p2 += &q;
                }
                return Ok(Self::rational_parts(p2, r));
            }
        }
        if q.is_zero() {
            return Ok(Self::rational_parts(p, r));
        }
        Ok(Self::normalized(p, q, r, d))
    }

    fn rational_parts(p: BigInt, r: BigInt) -> Self {
        Self::normalized(p, BigInt::zero(), r, BigInt::one())
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut r: BigInt, d: BigInt) -> Self {
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        let d = if q.is_zero() { BigInt::one() } else { d };
        QuadraticNumber { p, q, r, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::rational_parts(n.into(), BigInt::one())
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::rational_parts(num.into(), den))
    }

    /// `sqrt(d)` for a positive integer `d`.
    pub fn sqrt_of(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, 1, 1, d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.p
    }

    pub fn radical_part(&self) -> &BigInt {
        &self.q
    }

    pub fn denominator(&self) -> &BigInt {
        &self.r
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.r.is_one()
    }

    /// Checks that `other` lives in the same field (or either is rational).
    fn merge_disc(&self, other: &Self) -> Result<BigInt> {
        if self.q.is_zero() {
            return Ok(other.d.clone());
        }
        if other.q.is_zero() {
            return Ok(self.d.clone());
        }
        if self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::MixedDiscriminants(
                self.d.to_string(),
                other.d.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.merge_disc(other)?;
        Ok(Self::normalized(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.merge_disc(other)?;
        Ok(Self::normalized(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &self.q * &other.p,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.merge_disc(other)?;
        // 1/((p + q*sqrt(d))/r) = r*(p - q*sqrt(d)) / (p^2 - q^2*d)
        let norm = &other.p * &other.p - &other.q * &other.q * &d;
        debug_assert!(!norm.is_zero());
        let inv = Self::normalized(&other.r * &other.p, -(&other.r * &other.q), norm, d);
        self.checked_mul(&inv)
    }

    /// Galois conjugate: flips the sign of the `sqrt(d)` coefficient.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            p: self.p.clone(),
            q: -self.q.clone(),
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact sign, decided by integer comparisons only.
    pub fn sign(&self) -> i32 {
        // sign of p + q*sqrt(d); r > 0 by canonical form.
        let sp = match self.p.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        let sq = match self.q.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        // Opposite signs: compare p^2 against q^2*d after isolating the radical.
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // p^2 = q^2*d with d squarefree and q != 0 forces d = 1, excluded.
            Ordering::Equal => unreachable!("sqrt(d) irrational"),
        }
    }

    /// Greatest integer `n <= self`, via exact integer square roots.
    pub fn floor(&self) -> BigInt {
        if self.q.is_zero() {
            return self.p.div_floor(&self.r);
        }
        // floor(q*sqrt(d)): q^2*d is never a perfect square here.
        let q2d = (&self.q * &self.q * &self.d).magnitude().sqrt();
        let root = BigInt::from(q2d);
        let fq = if self.q.is_positive() {
            root
        } else {
            -root - 1
        };
        // numerator lies strictly between p + fq and p + fq + 1
        (&self.p + fq).div_floor(&self.r)
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.clone()).floor())
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Decimal rendering with `digits` fractional digits, computed exactly
    /// (round toward minus infinity). Display-only.
    pub fn decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = self * &Self::from_int(scale.clone());
        let v = scaled.floor();
        let (int_part, frac_part) = v.div_mod_floor(&scale);
        let frac = frac_part.to_string();
        let pad = digits as usize - frac.len();
        if digits == 0 {
            int_part.to_string()
        } else {
            format!("{}.{}{}", int_part, "0".repeat(pad), frac)
        }
    }

    /// Canonical exact string `(p + q*sqrt(d))/r`, or `p/r` for rationals.
    pub fn exact_string(&self) -> String {
        if self.q.is_zero() {
            format!("{}/{}", self.p, self.r)
        } else if self.q.is_negative() {
            format!("({} - {}*sqrt({}))/{}", self.p, -&self.q, self.d, self.r)
        } else {
            format!("({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
        }
    }

    /// Parses the output of [`Self::exact_string`].
    pub fn parse_exact(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("bad exact value '{s}': {m}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest.rfind(')').ok_or_else(|| bad("missing ')'"))?;
            let inner = &rest[..close];
            let tail = rest[close + 1..]
                .strip_prefix('/')
                .ok_or_else(|| bad("missing denominator"))?;
            let r: BigInt = tail.trim().parse().map_err(|_| bad("denominator"))?;
            let idx = inner
                .rfind(" + ")
                .or_else(|| inner.rfind(" - "))
                .ok_or_else(|| bad("missing +/-"))?;
            let neg = &inner[idx..idx + 3] == " - ";
            let p: BigInt = inner[..idx].trim().parse().map_err(|_| bad("p"))?;
            let qpart = &inner[idx + 3..];
            let star = qpart.find("*sqrt(").ok_or_else(|| bad("missing sqrt"))?;
            let q: BigInt = qpart[..star].trim().parse().map_err(|_| bad("q"))?;
            let dpart = qpart[star + 6..]
                .strip_suffix(')')
                .ok_or_else(|| bad("sqrt paren"))?;
            let d: BigInt = dpart.trim().parse().map_err(|_| bad("d"))?;
            Self::new(p, if neg { -q } else { q }, r, d)
        } else {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a, b),
                None => (s, "1"),
            };
            let p: BigInt = num.trim().parse().map_err(|_| bad("numerator"))?;
            let r: BigInt = den.trim().parse().map_err(|_| bad("denominator"))?;
            Self::from_ratio(p, r)
        }
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact_string())
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact_string())
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).expect("quadratic field operation")
            }
        }
        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            p: -self.p,
            q: -self.q,
            r: self.r,
            d: self.d,
        }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qc: i64, r: i64, d: i64) -> QuadraticNumber {
        QuadraticNumber::new(p, qc, r, d).unwrap()
    }

    #[test]
    fn golden_ratio_times_its_conjugate_negation() {
        // ((1+sqrt5)/2) * ((-1+sqrt5)/2) = 1
        let a = q(1, 1, 2, 5);
        let b = q(-1, 1, 2, 5);
        assert_eq!(a.checked_mul(&b).unwrap(), QuadraticNumber::one());
    }

    #[test]
    fn conjugate_flips_radical_sign() {
        let x = q(3, -2, 1, 2);
        assert_eq!(x.conjugate(), q(3, 2, 1, 2));
    }

    #[test]
    fn additive_inverse() {
        let x = q(7, -3, 5, 13);
        assert!(x.checked_add(&(-x.clone())).unwrap().is_zero());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(3, -2, 1, 2).sign(), 1); // 3 - 2*sqrt2 > 0 since 9 > 8
        assert_eq!(QuadraticNumber::zero().sign(), 0);
        assert_eq!(q(1, -1, 2, 5).sign(), -1); // (1 - sqrt5)/2 < 0
    }

    #[test]
    fn floor_examples() {
        assert_eq!(q(1, 1, 2, 5).floor(), BigInt::from(1)); // phi
        assert_eq!(q(-1, -1, 2, 5).floor(), BigInt::from(-2)); // -phi
        assert_eq!(QuadraticNumber::from_int(5).floor(), BigInt::from(5));
        assert_eq!(q(-7, 0, 2, 1).floor(), BigInt::from(-4)); // -7/2
    }

    #[test]
    fn square_factor_folds_into_radical() {
        // sqrt(8) = 2*sqrt(2)
        assert_eq!(QuadraticNumber::sqrt_of(8).unwrap(), q(0, 2, 1, 2));
        // sqrt(9) = 3 exactly, becomes rational
        let nine = QuadraticNumber::sqrt_of(9).unwrap();
        assert!(nine.is_rational());
        assert_eq!(nine, QuadraticNumber::from_int(3));
    }

    #[test]
    fn canonical_equality_across_representations() {
        assert_eq!(q(2, 4, 6, 5), q(1, 2, 3, 5));
        assert_eq!(
            QuadraticNumber::new(-1, -2, -3, 5).unwrap(),
            q(1, 2, 3, 5)
        );
    }

    #[test]
    fn mixed_discriminants_rejected() {
        let a = q(0, 1, 1, 2);
        let b = q(0, 1, 1, 3);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::MixedDiscriminants(_, _))
        ));
        // rational operands mix with anything
        let c = QuadraticNumber::from_int(4);
        assert_eq!(a.checked_add(&c).unwrap(), q(4, 1, 1, 2));
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = q(1, 1, 1, 2);
        assert!(matches!(
            a.checked_div(&QuadraticNumber::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn division_round_trip() {
        let a = q(3, 2, 7, 5);
        let b = q(-4, 1, 3, 5);
        let c = a.checked_div(&b).unwrap();
        assert_eq!(c.checked_mul(&b).unwrap(), a);
    }

    #[test]
    fn decimal_rendering() {
        let phi = q(1, 1, 2, 5);
        assert_eq!(phi.decimal_string(4), "1.6180");
        let neg = q(-1, -1, 2, 5);
        assert_eq!(neg.decimal_string(3), "-1.619"); // floor rounding
        assert_eq!(QuadraticNumber::from_int(3).decimal_string(2), "3.00");
    }

    #[test]
    fn exact_string_round_trip() {
        for x in [q(1, 1, 2, 5), q(-3, -2, 7, 13), QuadraticNumber::from_int(-9),
                  QuadraticNumber::from_ratio(22, 7).unwrap()] {
            let s = x.exact_string();
            assert_eq!(QuadraticNumber::parse_exact(&s).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn floor_bracket_invariant_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let p = rng.gen_range(-50i64..=50);
            let qc = rng.gen_range(-50i64..=50);
            let r = rng.gen_range(1i64..=50);
            let d = rng.gen_range(2i64..=50);
            let x = q(p, qc, r, d);
            let n = x.floor();
            let lo = QuadraticNumber::from_int(n.clone());
            let hi = QuadraticNumber::from_int(n + 1);
            assert!(x.checked_sub(&lo).unwrap().sign() >= 0, "{x}");
            assert!(x.checked_sub(&hi).unwrap().sign() < 0, "{x}");
        }
    }

    #[test]
    fn sign_total_order_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xabcd);
        for _ in 0..300 {
            let d = rng.gen_range(2i64..=30);
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                QuadraticNumber::new(
                    rng.gen_range(-30i64..=30),
                    rng.gen_range(-30i64..=30),
                    rng.gen_range(1i64..=20),
                    d,
                )
                .unwrap()
            };
            let (x, y, z) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            let sxy = x.checked_sub(&y).unwrap().sign();
            let syx = y.checked_sub(&x).unwrap().sign();
            assert_eq!(sxy, -syx);
            // transitivity of <=
            let sxz = x.checked_sub(&z).unwrap().sign();
            let syz = y.checked_sub(&z).unwrap().sign();
            if sxy <= 0 && syz <= 0 {
                assert!(sxz <= 0);
            }
        }
    }
}
