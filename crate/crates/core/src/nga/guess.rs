//! Annihilating operators with polynomial coefficients, guessed from a
//! truncated series by a linear solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::linalg::{nullspace, rref};
use crate::algebra::poly::Poly;
use crate::algebra::rat::{int, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::series::{op_apply, TruncSeries};

/// Default number of surplus equations required.
pub const DEFAULT_MARGIN: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessResult {
    pub found: bool,
    pub operator: Option<DiffOp>,
    /// Non-trivial equations beyond the rank of the system, all satisfied.
    pub overdetermination: usize,
}

fn falling(e: &Rat, i: usize) -> Rat {
    (0..i).fold(Rat::one(), |acc, k| acc * (e - int(k as i64)))
}

/// Rows: coefficients of `z^(offset + m)` in `sum c_(i,k) z^k D^i s` for the
/// exponents fully determined by `s`. Columns ordered `(i, k)`, `i` major.
fn system(s: &TruncSeries, order: usize, degree: usize) -> Vec<Vec<Rat>> {
    let t = s.truncation() as i64;
    let r = order as i64;
    let mut rows = Vec::new();
    for m in -r..(t - r) {
        let mut row = Vec::with_capacity((order + 1) * (degree + 1));
        for i in 0..=order {
            for k in 0..=degree {
                let idx = m - k as i64 + i as i64;
                let v = if idx < 0 {
                    Rat::zero()
                } else {
                    let e = &s.offset + int(idx);
                    &s.coeffs[idx as usize] * falling(&e, i)
                };
                row.push(v);
            }
        }
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    rows
}

/// Integer coefficients with content 1; the lowest non-zero coefficient of
/// the leading coefficient is positive.
fn normalize(v: &[Rat], order: usize, degree: usize) -> DiffOp {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    let top = (0..=order)
        .rev()
        .find(|&i| {
            ints[i * (degree + 1)..(i + 1) * (degree + 1)]
                .iter()
                .any(|x| !x.is_zero())
        })
        .unwrap();
    let lead = ints[top * (degree + 1)..(top + 1) * (degree + 1)]
        .iter()
        .find(|x| !x.is_zero())
        .unwrap()
        .clone();
    if lead.is_negative() {
        ints.iter_mut().for_each(|x| *x = -&*x);
    }
    DiffOp::new(
        (0..=order)
            .map(|i| {
                RatFunc::poly(Poly::new(
                    ints[i * (degree + 1)..(i + 1) * (degree + 1)]
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect(),
                ))
            })
            .collect(),
    )
}

/// Smallest `(order, degree)`, order first, admitting an annihilator with at
/// least `margin` surplus equations.
pub fn guess_ode(
    s: &TruncSeries,
    max_order: usize,
    max_degree: usize,
    margin: usize,
) -> Result<GuessResult> {
    let need = (max_order + 1) * (max_degree + 1) + margin;
    if s.truncation() < need {
        return Err(Error::Truncation {
            have: s.truncation(),
            need,
        });
    }
    for order in 0..=max_order {
        for degree in 0..=max_degree {
            let rows = system(s, order, degree);
            let cols = (order + 1) * (degree + 1);
            let mut work = rows.clone();
            let rank = rref(&mut work).len();
            if rank == cols {
                continue;
            }
            let surplus = rows.len() - rank;
            if surplus < margin {
                continue;
            }
            let v = nullspace(&rows, cols).into_iter().next().unwrap();
            let op = normalize(&v, order, degree);
            if !op_apply(&op, s)?.is_zero() {
                continue;
            }
            return Ok(GuessResult {
                found: true,
                operator: Some(op),
                overdetermination: surplus,
            });
        }
    }
    Ok(GuessResult {
        found: false,
        operator: None,
        overdetermination: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn factorial_inv(n: usize) -> Rat {
        let f = (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
        Rat::from_integer(f).recip()
    }

    #[test]
    fn geometric() {
        let s = TruncSeries::power(vec![int(1); 41]);
        let g = guess_ode(&s, 1, 1, 10).unwrap();
        assert!(g.found && g.overdetermination >= 10);
        let expect = DiffOp::new(vec![
            RatFunc::from_int(-1),
            RatFunc::poly(Poly::from_ints(&[1, -1])),
        ]);
        assert_eq!(g.operator.unwrap(), expect);
    }

    #[test]
    fn exponential() {
        let s = TruncSeries::power((0..41).map(factorial_inv).collect());
        let g = guess_ode(&s, 1, 1, 10).unwrap();
        assert_eq!(g.operator.unwrap(), &DiffOp::d() - &DiffOp::one());
    }

    #[test]
    fn no_small_annihilator() {
        let s = TruncSeries::power(
            (0..40u32)
                .map(|n| Rat::from_integer(BigInt::from(n).pow(n)))
                .collect(),
        );
        let g = guess_ode(&s, 2, 2, 10).unwrap();
        assert!(!g.found && g.operator.is_none());
    }

    #[test]
    fn too_short() {
        let s = TruncSeries::power(vec![int(1); 12]);
        assert!(matches!(
            guess_ode(&s, 1, 1, 10),
            Err(Error::Truncation { have: 12, need: 14 })
        ));
    }

    #[test]
    fn shifted_offset() {
        // z^(1/2)/(1 - z)
        let s = TruncSeries::new(Rat::new(1.into(), 2.into()), vec![int(1); 30]);
        assert!(!guess_ode(&s, 1, 1, 10).unwrap().found);
        let g = guess_ode(&s, 1, 2, 10).unwrap();
        let op = g.operator.unwrap();
        assert_eq!(op.order(), 1);
        assert!(op_apply(&op, &s).unwrap().is_zero());
    }
}
