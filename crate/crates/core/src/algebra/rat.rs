//! Rational numbers and the small number-theoretic helpers built on them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional leading sign, no whitespace inside).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// `t (t+1) ... (t+n-1)`, with the empty product equal to one.
pub fn pochhammer(t: &Rat, n: usize) -> Rat {
    let mut acc = Rat::one();
    let mut x = t.clone();
    for _ in 0..n {
        acc *= &x;
        x += Rat::one();
    }
    acc
}

/// Least common multiple of the denominators of `(t)_n / n!` for `n = 0..=k`.
pub fn pochhammer_denominator(t: &Rat, k: usize) -> BigUint {
    let mut term = Rat::one();
    let mut acc = BigUint::one();
    for n in 1..=k {
        // (t)_n / n! = (t)_{n-1}/(n-1)! * (t + n - 1) / n
        term = term * (t + int(n as i64 - 1)) / int(n as i64);
        acc = acc.lcm(&denom_u(&term));
    }
    acc
}

pub fn denom_u(r: &Rat) -> BigUint {
    r.denom().magnitude().clone()
}

/// `Some(n)` when `r` is an integer that fits in an `i64`.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Exact square root in Q, if one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// Fixed-point base-2 logarithm of a positive integer, truncated to
/// `frac_bits` fractional bits. The result is a dyadic rational.
///
/// Computed with integer arithmetic only: the mantissa is squared bit by bit
/// in a 64-bit fixed-point register.
pub fn log2_fixed(n: &BigUint, frac_bits: u32) -> Rat {
    assert!(!n.is_zero(), "log2 of zero");
    const PREC: u64 = 64;
    let e = n.bits() - 1;
    let one = BigUint::one() << PREC;
    let two = &one << 1u32;
    // mantissa in [2^PREC, 2^(PREC+1))
    let mut x = if e >= PREC {
        n >> (e - PREC)
    } else {
        n << (PREC - e)
    };
    let mut frac = BigUint::zero();
    for _ in 0..frac_bits {
        x = (&x * &x) >> PREC;
        frac <<= 1u32;
        if x >= two {
            frac += 1u32;
            x >>= 1u32;
        }
    }
    let scale = BigInt::one() << frac_bits;
    Rat::from_integer(BigInt::from(e)) + Rat::new(BigInt::from(frac), scale)
}

/// `log2(|r|)` for a non-zero rational, via [`log2_fixed`] on numerator and
/// denominator.
pub fn log2_rat(r: &Rat, frac_bits: u32) -> Rat {
    log2_fixed(r.numer().magnitude(), frac_bits) - log2_fixed(r.denom().magnitude(), frac_bits)
}

/// Exact least-squares slope of `ys` against `xs`. Returns zero for fewer
/// than two points.
pub fn ls_slope(points: &[(Rat, Rat)]) -> Rat {
    if points.len() < 2 {
        return Rat::zero();
    }
    let n = int(points.len() as i64);
    let mut sx = Rat::zero();
    let mut sy = Rat::zero();
    let mut sxx = Rat::zero();
    let mut sxy = Rat::zero();
    for (x, y) in points {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let den = &n * &sxx - &sx * &sx;
    if den.is_zero() {
        return Rat::zero();
    }
    (&n * &sxy - &sx * &sy) / den
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&rat(-1, 2), 2), rat(-1, 4));
    }

    #[test]
    fn pochhammer_denominators() {
        assert_eq!(pochhammer_denominator(&rat(1, 2), 3), BigUint::from(16u32));
        assert_eq!(pochhammer_denominator(&int(2), 5), BigUint::one());
        assert_eq!(pochhammer_denominator(&rat(1, 2), 0), BigUint::one());
    }

    #[test]
    fn log2_is_close() {
        let l = log2_fixed(&BigUint::from(1024u32), 20);
        assert_eq!(l, int(10));
        let l3 = log2_fixed(&BigUint::from(3u32), 20);
        // log2(3) = 1.5849625...
        assert!(l3 > rat(158496, 100000) && l3 < rat(158497, 100000));
    }

    #[test]
    fn sqrt_and_parse() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&int(2)), None);
        assert_eq!(parse_rat("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
    }

    #[test]
    fn slope_of_a_line() {
        let pts: Vec<_> = (0..5).map(|k| (int(k), int(3 * k + 1))).collect();
        assert_eq!(ls_slope(&pts), int(3));
    }
}
