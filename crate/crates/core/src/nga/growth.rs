//! Denominator and height growth of a coefficient sequence.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::rat::{denom_u, int, log2_fixed, log2_rat, ls_slope, Rat};
use crate::galochkin::LOG_BITS;
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    /// `d_n = lcm(den a_0, ..., den a_n)`.
    pub d: Vec<BigUint>,
    /// `max |a_k|` over `k <= n`.
    pub heights: Vec<Rat>,
    /// Least-squares slopes of `log2 d_n` over the whole range and its two
    /// halves.
    pub slope_log_d: Rat,
    pub slope_log_d_early: Rat,
    pub slope_log_d_late: Rat,
    /// Least-squares slope of `log2` of the height, over non-zero heights.
    pub slope_log_height: Rat,
    /// The late slope of `log2 d_n` exceeds the early one by at least
    /// `SUPERLINEAR_GAP` bits per term.
    pub superlinear: bool,
}

/// Bits per term separating the two half-range slopes of a superlinear
/// denominator sequence.
pub fn superlinear_gap() -> Rat {
    Rat::new(1.into(), 2.into())
}

fn slope_over(points: &[(Rat, Rat)]) -> Rat {
    ls_slope(points)
}

pub fn g_growth_diagnostic(s: &TruncSeries) -> GrowthReport {
    let mut d = Vec::with_capacity(s.coeffs.len());
    let mut heights = Vec::with_capacity(s.coeffs.len());
    let mut acc = BigUint::one();
    let mut h = Rat::zero();
    for c in &s.coeffs {
        acc = acc.lcm(&denom_u(c));
        if c.abs() > h {
            h = c.abs();
        }
        d.push(acc.clone());
        heights.push(h.clone());
    }
    let pts: Vec<(Rat, Rat)> = d
        .iter()
        .enumerate()
        .map(|(n, x)| (int(n as i64), log2_fixed(x, LOG_BITS)))
        .collect();
    let half = pts.len() / 2;
    let early = slope_over(&pts[..half]);
    let late = slope_over(&pts[half..]);
    let hpts: Vec<(Rat, Rat)> = heights
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(n, x)| (int(n as i64), log2_rat(x, LOG_BITS)))
        .collect();
    GrowthReport {
        slope_log_d: slope_over(&pts),
        superlinear: &late - &early >= superlinear_gap(),
        slope_log_d_early: early,
        slope_log_d_late: late,
        slope_log_height: slope_over(&hpts),
        d,
        heights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use num_bigint::BigInt;

    fn lcm_upto(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a.lcm(&BigUint::from(k)))
    }

    fn inv_factorials(len: usize) -> TruncSeries {
        let mut f = BigInt::one();
        let mut c = Vec::new();
        for n in 0..len {
            if n > 0 {
                f *= BigInt::from(n);
            }
            c.push(Rat::from_integer(f.clone()).recip());
        }
        TruncSeries::power(c)
    }

    #[test]
    fn harmonic_denominators() {
        for len in [30, 40, 60] {
            let s = TruncSeries::power((0..len).map(|n| rat(1, n + 1)).collect());
            let rep = g_growth_diagnostic(&s);
            for (n, x) in rep.d.iter().enumerate() {
                assert_eq!(x, &lcm_upto(n as u64 + 1));
            }
            assert!(!rep.superlinear, "{len}");
            assert!(rep.slope_log_d > int(1) && rep.slope_log_d < int(2));
        }
    }

    #[test]
    fn geometric_is_flat() {
        let rep = g_growth_diagnostic(&TruncSeries::power(vec![int(1); 20]));
        assert!(rep.d.iter().all(|x| x.is_one()));
        assert!(rep.slope_log_d.is_zero() && !rep.superlinear);
    }

    #[test]
    fn factorial_denominators_flagged() {
        for len in [30, 40, 60] {
            let rep = g_growth_diagnostic(&inv_factorials(len));
            assert!(rep.superlinear, "{len}");
        }
    }
}
