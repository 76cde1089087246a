//! Periodic continued fractions of quadratic irrationals, convergents, good
//! approximations of the second kind, and cyclic word comparison.
//!
//! Sign convention: a negative number is written `-[a0; a1, a2, ...]` where
//! the bracketed expansion is the ordinary continued fraction of its absolute
//! value, so `a0 >= 0` and all later partial quotients are `>= 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix2, QuadraticNumber};

/// Sign, preperiod and primitive period of a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicContinuedFraction {
    pub negative: bool,
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// One convergent `p/q`, with the formal index `-1` convergent `1/0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub index: i64,
}

/// A reduced fraction `p/q` with `q >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fraction {
    pub q: BigInt,
    pub p: BigInt,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl PeriodicContinuedFraction {
    /// Partial quotient `a_k`, unrolling the period cyclically.
    pub fn quotient(&self, k: usize) -> &BigInt {
        if k < self.preperiod.len() {
            &self.preperiod[k]
        } else {
            &self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Exact value of the expansion (inverse of [`cf_expand`]).
    pub fn evaluate(&self) -> Result<QuadraticNumber> {
        // Fixed point of the period: z = (Pa*z + Pb)/(Pc*z + Pd), z > 1.
        let mut pm = IntMatrix2::identity();
        for a in &self.period {
            pm = pm.mul(&IntMatrix2::new(a.clone(), 1, 1, 0));
        }
        let disc = (&pm.d - &pm.a) * (&pm.d - &pm.a) + BigInt::from(4) * &pm.c * &pm.b;
        let z = QuadraticNumber::new(&pm.a - &pm.d, 1, 2 * &pm.c, disc)?;
        debug_assert!(z.checked_sub(&QuadraticNumber::one()).unwrap().sign() > 0);
        let mut mm = IntMatrix2::identity();
        for a in &self.preperiod {
            mm = mm.mul(&IntMatrix2::new(a.clone(), 1, 1, 0));
        }
        // x = (mm.a * z + mm.b)/(mm.c * z + mm.d)
        let num = QuadraticNumber::from_int(mm.a.clone())
            .checked_mul(&z)?
            .checked_add(&QuadraticNumber::from_int(mm.b.clone()))?;
        let den = QuadraticNumber::from_int(mm.c.clone())
            .checked_mul(&z)?
            .checked_add(&QuadraticNumber::from_int(mm.d.clone()))?;
        let v = num.checked_div(&den)?;
        Ok(if self.negative { -v } else { v })
    }
}

impl fmt::Display for PeriodicContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre: Vec<String> = self.preperiod.iter().map(|a| a.to_string()).collect();
        let per: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        let sign = if self.negative { "-" } else { "" };
        match pre.split_first() {
            Some((a0, rest)) if rest.is_empty() => {
                write!(f, "{sign}[{a0}; ({})]", per.join(", "))
            }
            Some((a0, rest)) => write!(
                f,
                "{sign}[{a0}; {}, ({})]",
                rest.join(", "),
                per.join(", ")
            ),
            None => write!(f, "{sign}[({})]", per.join(", ")),
        }
    }
}

/// Complete-quotient trace of `|x|`: the list of `(z_k, M_k)` with
/// `x_abs = M_k . z_k` (fractional-linear action on the upper half plane
/// boundary), plus the index at which the quotients begin to cycle.
pub(crate) struct QuotientTrace {
    pub steps: Vec<(QuadraticNumber, IntMatrix2)>,
    pub cycle_start: usize,
}

pub(crate) fn quotient_trace(x: &QuadraticNumber) -> Result<QuotientTrace> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let mut z = x.abs();
    let mut m = IntMatrix2::identity();
    let mut steps: Vec<(QuadraticNumber, IntMatrix2)> = Vec::new();
    let mut seen: HashMap<QuadraticNumber, usize> = HashMap::new();
    loop {
        if let Some(&j) = seen.get(&z) {
            return Ok(QuotientTrace {
                steps,
                cycle_start: j,
            });
        }
        seen.insert(z.clone(), steps.len());
        steps.push((z.clone(), m.clone()));
        let a = z.floor();
        let frac = z.checked_sub(&QuadraticNumber::from_int(a.clone()))?;
        z = frac.recip()?;
        m = m.mul(&IntMatrix2::new(a, 1, 1, 0));
    }
}

/// Expands a quadratic irrational into its periodic continued fraction.
pub fn cf_expand(x: &QuadraticNumber) -> Result<PeriodicContinuedFraction> {
    let trace = quotient_trace(x)?;
    let quots: Vec<BigInt> = trace.steps.iter().map(|(z, _)| z.floor()).collect();
    let preperiod = quots[..trace.cycle_start].to_vec();
    let period = quots[trace.cycle_start..].to_vec();
    debug_assert_eq!(primitive_period(&period), period);
    Ok(PeriodicContinuedFraction {
        negative: x.sign() < 0,
        preperiod,
        period,
    })
}

/// Convergents of indices `-1 .. n-1` (so `n` entries, starting from the
/// formal `1/0`).
pub fn convergents(cf: &PeriodicContinuedFraction, n: usize) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(n);
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_prev2, mut q_prev2) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return out;
    }
    out.push(Convergent {
        p: p_prev.clone(),
        q: q_prev.clone(),
        index: -1,
    });
    for k in 0..n.saturating_sub(1) {
        let a = cf.quotient(k);
        let p = a * &p_prev + &p_prev2;
        let q = a * &q_prev + &q_prev2;
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            index: k as i64,
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    out
}

fn reduced(p: BigInt, q: BigInt) -> Fraction {
    debug_assert!(p.gcd(&q).is_one());
    Fraction { q, p }
}

/// Good lower and upper approximations of the second kind with denominator
/// at most `q_max`, generated from the intermediate-fraction forms and
/// cross-checked against the defining inequality.
pub fn good_approximations(
    x: &QuadraticNumber,
    q_max: &BigInt,
) -> Result<(Vec<Fraction>, Vec<Fraction>)> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    if x.sign() < 0 {
        let (lo, up) = good_approximations(&x.abs(), q_max)?;
        let flip = |v: Vec<Fraction>| {
            v.into_iter()
                .map(|f| Fraction { q: f.q, p: -f.p })
                .collect::<Vec<_>>()
        };
        // mirroring x -> -x swaps the two sides
        return Ok((flip(up), flip(lo)));
    }
    let cf = cf_expand(x)?;
    let mut lower = std::collections::BTreeSet::new();
    let mut upper = std::collections::BTreeSet::new();
    // Walk pairs (p_k/q_k, p_{k+1}/q_{k+1}) starting at k = -1.
    let (mut pk, mut qk) = (BigInt::one(), BigInt::zero()); // index -1
    let (mut pk1, mut qk1) = (cf.quotient(0).clone(), BigInt::one()); // index 0
    let mut k: i64 = -1;
    loop {
        let a_next = cf.quotient((k + 2) as usize).clone(); // a_{k+2}
        let mut r = BigInt::zero();
        while r <= a_next {
            let q = &qk + &r * &qk1;
            let p = &pk + &r * &pk1;
            if q.is_positive() && q <= *q_max {
                let f = reduced(p, q);
                if k % 2 == 0 {
                    lower.insert(f);
                } else {
                    upper.insert(f);
                }
            }
            r += 1;
        }
        // advance to (k+1, k+2)
        let p_next = &a_next * &pk1 + &pk;
        let q_next = &a_next * &qk1 + &qk;
        pk = std::mem::replace(&mut pk1, p_next);
        qk = std::mem::replace(&mut qk1, q_next);
        k += 1;
        if qk > *q_max {
            break;
        }
    }
    let lower: Vec<Fraction> = lower.into_iter().collect();
    let upper: Vec<Fraction> = upper.into_iter().collect();
    // Definitional cross-check: each emitted fraction beats every smaller
    // denominator on its own side, strictly.
    for (list, is_lower) in [(&lower, true), (&upper, false)] {
        for f in list {
            let dist = vertical_distance(x, &f.p, &f.q);
            debug_assert!(dist.sign() > 0);
            let mut qq = BigInt::one();
            while qq < f.q {
                let best = side_best(x, &qq, is_lower);
                let other = vertical_distance(x, &best, &qq);
                assert!(
                    dist.checked_sub(&other).unwrap().sign() < 0,
                    "form {f} is not a good approximation"
                );
                qq += 1;
            }
        }
    }
    Ok((lower, upper))
}

/// `|p - q*x|` as an exact quadratic number.
fn vertical_distance(x: &QuadraticNumber, p: &BigInt, q: &BigInt) -> QuadraticNumber {
    let v = QuadraticNumber::from_int(p.clone())
        .checked_sub(
            &QuadraticNumber::from_int(q.clone())
                .checked_mul(x)
                .unwrap(),
        )
        .unwrap();
    v.abs()
}

/// Best numerator for denominator `q` on the requested side of `x`.
fn side_best(x: &QuadraticNumber, q: &BigInt, lower: bool) -> BigInt {
    let qx = QuadraticNumber::from_int(q.clone()).checked_mul(x).unwrap();
    if lower {
        qx.floor()
    } else {
        qx.floor() + 1
    }
}

/// Independent brute-force scan over every denominator `q <= q_max`,
/// emitting the fractions that strictly improve the running side minimum of
/// `|p - q*x|`.  Used as the oracle route against [`good_approximations`].
pub fn good_approximations_scan(
    x: &QuadraticNumber,
    q_max: &BigInt,
) -> Result<(Vec<Fraction>, Vec<Fraction>)> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut best_low: Option<QuadraticNumber> = None;
    let mut best_up: Option<QuadraticNumber> = None;
    let mut q = BigInt::one();
    while q <= *q_max {
        for (is_lower, best, out) in [
            (true, &mut best_low, &mut lower),
            (false, &mut best_up, &mut upper),
        ] {
            let p = side_best(x, &q, is_lower);
            let dist = vertical_distance(x, &p, &q);
            let better = match best.as_ref() {
                None => true,
                Some(b) => {
                    let cmp = dist.checked_sub(b).unwrap().sign();
                    assert_ne!(cmp, 0, "tie at equal quality is impossible for irrational x");
                    cmp < 0
                }
            };
            if better {
                assert!(p.gcd(&q).is_one());
                out.push(Fraction {
                    q: q.clone(),
                    p: p.clone(),
                });
                *best = Some(dist);
            }
        }
        q += 1;
    }
    lower.sort();
    upper.sort();
    Ok((lower, upper))
}

/// Shortest word whose repetition gives the input.
pub fn primitive_period<T: PartialEq + Clone>(word: &[T]) -> Vec<T> {
    let n = word.len();
    for d in 1..=n {
        if n % d == 0 && word.iter().enumerate().all(|(i, w)| *w == word[i % d]) {
            return word[..d].to_vec();
        }
    }
    unreachable!("d = n always matches")
}

/// True iff the primitive periods of the two words are rotations of each
/// other.
pub fn cyclic_equivalent<T: PartialEq + Clone>(w1: &[T], w2: &[T]) -> bool {
    let p1 = primitive_period(w1);
    let p2 = primitive_period(w2);
    if p1.len() != p2.len() {
        return false;
    }
    let n = p1.len();
    (0..n).any(|s| (0..n).all(|i| p1[(s + i) % n] == p2[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(p: i64, q: i64, r: i64, d: i64) -> QuadraticNumber {
        QuadraticNumber::new(p, q, r, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_ratio_expansion() {
        let cf = cf_expand(&qn(1, 1, 2, 5)).unwrap();
        assert!(!cf.negative);
        assert_eq!(cf.preperiod, ints(&[1]));
        assert_eq!(cf.period, ints(&[1]));
    }

    #[test]
    fn one_plus_sqrt2_expansion() {
        let cf = cf_expand(&qn(1, 1, 1, 2)).unwrap();
        assert!(!cf.negative);
        assert_eq!(cf.preperiod, ints(&[2]));
        assert_eq!(cf.period, ints(&[2]));
    }

    #[test]
    fn sqrt2_minus_one_expansion() {
        let cf = cf_expand(&qn(-1, 1, 1, 2)).unwrap();
        assert_eq!(cf.preperiod, ints(&[0]));
        assert_eq!(cf.period, ints(&[2]));
    }

    #[test]
    fn negative_sign_convention() {
        // -(1+sqrt5)/2 = -[1; (1)]
        let cf = cf_expand(&qn(-1, -1, 2, 5)).unwrap();
        assert!(cf.negative);
        assert_eq!(cf.preperiod, ints(&[1]));
        assert_eq!(cf.period, ints(&[1]));
        assert_eq!(cf.to_string(), "-[1; (1)]");
    }

    #[test]
    fn rational_input_rejected() {
        assert!(matches!(
            cf_expand(&QuadraticNumber::from_ratio(22, 7).unwrap()),
            Err(Error::RationalInput)
        ));
    }

    #[test]
    fn fibonacci_convergents() {
        let cf = cf_expand(&qn(1, 1, 2, 5)).unwrap();
        let cs = convergents(&cf, 5);
        let expect = [(1, 0, -1), (1, 1, 0), (2, 1, 1), (3, 2, 2), (5, 3, 3)];
        assert_eq!(cs.len(), 5);
        for (c, (p, q, i)) in cs.iter().zip(expect) {
            assert_eq!((c.p.clone(), c.q.clone(), c.index), (p.into(), q.into(), i));
        }
    }

    #[test]
    fn first_real_convergent_is_a0_over_1() {
        let cf = cf_expand(&qn(3, 2, 5, 7)).unwrap();
        let cs = convergents(&cf, 2);
        assert_eq!(cs[1].p, cf.preperiod.first().unwrap_or(&cf.period[0]).clone());
        assert_eq!(cs[1].q, BigInt::one());
    }

    #[test]
    fn zero_two_bar_convergents() {
        let cf = cf_expand(&qn(-1, 1, 1, 2)).unwrap(); // [0; (2)]
        let cs = convergents(&cf, 4);
        let expect = [(1, 0), (0, 1), (1, 2), (2, 5)];
        for (c, (p, q)) in cs.iter().zip(expect) {
            assert_eq!((c.p.clone(), c.q.clone()), (p.into(), q.into()));
        }
    }

    #[test]
    fn convergent_unimodularity_and_straddle() {
        let x = qn(5, 3, 4, 11);
        let cf = cf_expand(&x).unwrap();
        let cs = convergents(&cf, 12);
        for w in cs.windows(2) {
            let det = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
            assert!(det.clone().abs().is_one(), "unimodularity");
        }
        // even convergents strictly increase and sit below |x|; odd decrease above.
        let ax = x.abs();
        let frac = |c: &Convergent| {
            QuadraticNumber::from_ratio(c.p.clone(), c.q.clone()).unwrap()
        };
        for w in cs[1..].windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.index % 2 == 0 {
                assert!(frac(a).cmp_exact(&ax).unwrap().is_lt());
            } else {
                assert!(frac(a).cmp_exact(&ax).unwrap().is_gt());
            }
            if a.index >= 1 {
                assert!(b.q > a.q, "denominators strictly increase from index 1");
            }
        }
        for w in cs[1..].chunks(2) {
            if w.len() == 2 {
                // consecutive even/odd pair straddles
                let lo = if w[0].index % 2 == 0 { &w[0] } else { &w[1] };
                let hi = if w[0].index % 2 == 0 { &w[1] } else { &w[0] };
                assert!(frac(lo).cmp_exact(&frac(hi)).unwrap().is_lt());
            }
        }
    }

    #[test]
    fn round_trip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut done = 0;
        while done < 200 {
            let d = rng.gen_range(2i64..=50);
            let x = QuadraticNumber::new(
                rng.gen_range(-50i64..=50),
                rng.gen_range(-50i64..=50),
                rng.gen_range(1i64..=50),
                d,
            )
            .unwrap();
            if x.is_rational() {
                continue;
            }
            let cf = cf_expand(&x).unwrap();
            assert_eq!(cf.evaluate().unwrap(), x, "{x}");
            done += 1;
        }
    }

    #[test]
    fn golden_good_lower_approximations() {
        let phi = qn(1, 1, 2, 5);
        let (lower, _) = good_approximations(&phi, &BigInt::from(5)).unwrap();
        let got: Vec<(i64, i64)> = lower
            .iter()
            .map(|f| {
                (
                    i64::try_from(&f.p).unwrap(),
                    i64::try_from(&f.q).unwrap(),
                )
            })
            .collect();
        assert_eq!(got, vec![(1, 1), (3, 2), (8, 5)]);
    }

    #[test]
    fn upper_approximations_of_one_plus_sqrt2() {
        let x = qn(1, 1, 1, 2);
        let (_, upper) = good_approximations(&x, &BigInt::from(2)).unwrap();
        let got: Vec<(i64, i64)> = upper
            .iter()
            .map(|f| {
                (
                    i64::try_from(&f.p).unwrap(),
                    i64::try_from(&f.q).unwrap(),
                )
            })
            .collect();
        assert_eq!(got, vec![(3, 1), (5, 2)]);
    }

    #[test]
    fn lower_contains_floor_over_one() {
        for x in [qn(5, 3, 4, 11), qn(-7, 2, 3, 6), qn(0, -3, 7, 13)] {
            let (lower, _) = good_approximations(&x, &BigInt::from(30)).unwrap();
            let fl = x.floor();
            assert!(
                lower.iter().any(|f| f.q.is_one() && f.p == fl),
                "floor({x}) = {fl} missing from {lower:?}"
            );
        }
    }

    #[test]
    fn forms_match_brute_scan_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut done = 0;
        while done < 50 {
            let x = QuadraticNumber::new(
                rng.gen_range(-20i64..=20),
                rng.gen_range(-10i64..=10),
                rng.gen_range(1i64..=10),
                rng.gen_range(2i64..=30),
            )
            .unwrap();
            if x.is_rational() {
                continue;
            }
            let q_max = BigInt::from(rng.gen_range(1i64..=200));
            let forms = good_approximations(&x, &q_max).unwrap();
            let scan = good_approximations_scan(&x, &q_max).unwrap();
            assert_eq!(forms, scan, "x = {x}, q_max = {q_max}");
            done += 1;
        }
    }

    #[test]
    fn primitive_period_examples() {
        assert_eq!(primitive_period(&[1, 1]), vec![1]);
        assert_eq!(primitive_period(&[2, 1, 2, 1]), vec![2, 1]);
        assert_eq!(primitive_period(&[3, 1, 2]), vec![3, 1, 2]);
    }

    #[test]
    fn cyclic_equivalence_examples() {
        assert!(cyclic_equivalent(&[1, 2, 1], &[2, 1, 1]));
        assert!(!cyclic_equivalent(&[1], &[2]));
        assert!(cyclic_equivalent(&[1, 1], &[1]));
        assert!(!cyclic_equivalent(&[1, 2], &[1, 1, 2]));
    }
}
