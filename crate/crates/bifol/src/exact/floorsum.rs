//! Exact sums of floors of linear forms with quadratic-irrational
//! coefficients, via a Euclid-style descent.  Used to count lattice points
//! between lines of irrational slope without scanning columns one by one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::quad::QuadraticNumber;

/// `sum_{i=0}^{n-1} floor(a + b*i)`, exact, for any quadratic `a`, `b`.
pub fn floor_sum(n: &BigInt, a: &QuadraticNumber, b: &QuadraticNumber) -> BigInt {
    if n.sign() != num_bigint::Sign::Plus {
        return BigInt::zero();
    }
    // Strip integer parts: floor(a + b*i) = fa + fb*i + floor({a} + {b}*i).
    let fa = a.floor();
    let fb = b.floor();
    let mut total = n * &fa + &fb * (n * (n - 1i32)) / 2i32;
    let a = a.checked_sub(&QuadraticNumber::from_int(fa)).unwrap();
    let b = b.checked_sub(&QuadraticNumber::from_int(fb)).unwrap();
    if b.is_zero() {
        return total;
    }
    // Now 0 <= a < 1, 0 < b < 1.  With m the largest attained floor value:
    //   sum_{i<n} floor(a + b*i) = n*m - sum_{j=1}^{m} ceil((j - a)/b)
    //                            = n*m - m - floor_sum(m, (1-a)/b, 1/b) + H
    // where H counts the j with (j - a)/b an exact integer.
    let last = a
        .checked_add(
            &b.checked_mul(&QuadraticNumber::from_int(n - 1i32))
                .unwrap(),
        )
        .unwrap();
    let m = last.floor();
    if !m.is_positive() {
        return total;
    }
    let hits = count_exact_hits(&m, n, &a, &b);
    let binv = b.recip().expect("b != 0");
    let a2 = QuadraticNumber::one()
        .checked_sub(&a)
        .unwrap()
        .checked_mul(&binv)
        .unwrap();
    total += n * &m - &m + hits - floor_sum(&m, &a2, &binv);
    total
}

/// Counts `j` in `[1, m]` with `(j - a)/b` an exact integer `k` in `[1, n-1]`.
/// At most one such `j` exists when `b` is irrational; a short exact scan
/// covers the fully rational case.
fn count_exact_hits(m: &BigInt, n: &BigInt, a: &QuadraticNumber, b: &QuadraticNumber) -> BigInt {
    if b.is_rational() && a.is_rational() {
        let mut hits = BigInt::zero();
        let pa = a.rational_part().clone();
        let ra = a.denominator().clone();
        let pb = b.rational_part().clone();
        let rb = b.denominator().clone();
        let mut j = BigInt::one();
        while &j <= m {
            // (j - a)/b = (j*ra - pa)*rb / (ra*pb)
            let num = (&j * &ra - &pa) * &rb;
            let den = &ra * &pb;
            if (&num % &den).is_zero() {
                let k = num / den;
                if k.is_positive() && &k < n {
                    hits += 1;
                }
            }
            j += 1;
        }
        return hits;
    }
    if b.is_rational() {
        // a irrational plus a rational multiple is never an integer
        return BigInt::zero();
    }
    // b irrational: radical parts must cancel, fixing a single candidate k.
    let num = -(a.radical_part() * b.denominator());
    let den = b.radical_part() * a.denominator();
    if !(&num % &den).is_zero() {
        return BigInt::zero();
    }
    let k = num / den;
    if !k.is_positive() || &k >= n {
        return BigInt::zero();
    }
    let jv = match b
        .checked_mul(&QuadraticNumber::from_int(k))
        .and_then(|kb| a.checked_add(&kb))
    {
        Ok(j) if j.is_integer() => j.rational_part().clone(),
        _ => return BigInt::zero(),
    };
    if jv.is_positive() && &jv <= m {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}
