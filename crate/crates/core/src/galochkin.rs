//! The matrices `A_n` of `Y^(n) = A_n Y` and the denominators `D_k`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::algebra::poly::Poly;
use crate::algebra::rat::{denom_u, int, log2_fixed, ls_slope, pochhammer, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::diffop::CompanionSystem;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<RatFunc>>;

/// Fractional bits used for `log2 D_k` in the tail slope.
pub const LOG_BITS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GalochkinReport {
    pub k_max: usize,
    /// `D_1, ..., D_k_max`.
    pub d: Vec<BigUint>,
    /// Least-squares slope of `log2 D_k` over the second half of `1..=k_max`.
    pub slope_tail: Rat,
    pub t: Poly,
}

type PolyMatrix = Vec<Vec<Poly>>;

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, brow)| !x.is_zero() && !brow[j].is_zero())
                        .fold(Poly::zero(), |acc, (x, brow)| &acc + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

/// `N_1, ..., N_N` with `A_n = N_n / T^n`, where `T` clears `A_1`:
/// `N_(n+1) = N_n N_1 + T N_n' - n T' N_n`.
fn numerators(a1: &CompanionSystem, n: usize) -> (Poly, Vec<PolyMatrix>) {
    let t = clearing_polynomial(&a1.a);
    let tr = RatFunc::poly(t.clone());
    let n1: PolyMatrix =
        a1.a.iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * &tr;
                        assert!(y.is_polynomial(), "T does not clear A_1");
                        y.num().clone()
                    })
                    .collect()
            })
            .collect();
    let dt = t.derivative();
    let mut out: Vec<PolyMatrix> = Vec::with_capacity(n);
    if n == 0 {
        return (t, out);
    }
    out.push(n1.clone());
    for k in 1..n {
        let prev = out.last().unwrap();
        let mut next = poly_mat_mul(prev, &n1);
        let c = dt.scale(&int(k as i64));
        for (row, prow) in next.iter_mut().zip(prev) {
            for (x, p) in row.iter_mut().zip(prow) {
                *x = &(&*x + &(&t * &p.derivative())) - &(&c * p);
            }
        }
        out.push(next);
    }
    (t, out)
}

/// `A_1, ..., A_N` with `A_(n+1) = A_n A_1 + A_n'`.
pub fn iterate_a(a1: &CompanionSystem, n: usize) -> Vec<Matrix> {
    let (t, nums) = numerators(a1, n);
    let mut tn = Poly::one();
    nums.iter()
        .map(|m| {
            tn = &tn * &t;
            m.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| RatFunc::new(x.clone(), tn.clone()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Monic least common multiple of the entry denominators.
pub fn clearing_polynomial(a: &Matrix) -> Poly {
    a.iter()
        .flatten()
        .fold(Poly::one(), |acc, x| acc.lcm(x.den()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn denominator_sequence(a1: &CompanionSystem, k_max: usize) -> Result<GalochkinReport> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let (t, nums) = numerators(a1, k_max);
    let mut d = Vec::with_capacity(k_max);
    let mut acc = BigUint::one();
    for (i, m) in nums.iter().enumerate() {
        let f = Rat::from_integer(factorial(i + 1)).recip();
        for x in m.iter().flatten() {
            for c in x.coeffs() {
                acc = acc.lcm(&denom_u(&(c * &f)));
            }
        }
        d.push(acc.clone());
    }
    let start = k_max / 2;
    let pts: Vec<(Rat, Rat)> = (start..k_max)
        .map(|i| (int(i as i64 + 1), log2_fixed(&d[i], LOG_BITS)))
        .collect();
    Ok(GalochkinReport {
        k_max,
        d,
        slope_tail: ls_slope(&pts),
        t,
    })
}

/// `n! sum_{n_1+...+n_p = n} prod (-s_j)_{n_j}/n_j! (lambda_j - z)^(-n_j)`,
/// the `A_n` of the scalar operator solved by `prod (lambda_j - z)^(s_j)`.
pub fn closed_form_a(data: &[(Rat, Rat)], n: usize) -> Result<RatFunc> {
    for (i, (l, _)) in data.iter().enumerate() {
        if data[..i].iter().any(|(m, _)| m == l) {
            return Err(Error::RepeatedPlace(crate::algebra::rat::fmt_rat(l)));
        }
    }
    // truncated product of the generating sequences, degree <= n
    let mut conv = vec![RatFunc::zero(); n + 1];
    conv[0] = RatFunc::one();
    for (lambda, s) in data {
        let base = RatFunc::poly(Poly::new(vec![lambda.clone(), -Rat::one()])).recip();
        let ms = -s;
        let mut term = Vec::with_capacity(n + 1);
        let mut pw = RatFunc::one();
        let mut fact = Rat::one();
        for m in 0..=n {
            if m > 0 {
                pw = &pw * &base;
                fact *= int(m as i64);
            }
            term.push(pw.scale(&(pochhammer(&ms, m) / &fact)));
        }
        let mut next = vec![RatFunc::zero(); n + 1];
        for (i, a) in conv.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in term.iter().enumerate().take(n + 1 - i) {
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        conv = next;
    }
    Ok(conv[n].scale(&Rat::from_integer(factorial(n))))
}

/// The scalar system `[sum s_j/(z - lambda_j)]`: logarithmic derivative of
/// `prod (lambda_j - z)^(s_j)`.
pub fn scalar_system(data: &[(Rat, Rat)]) -> CompanionSystem {
    let a = data.iter().fold(RatFunc::zero(), |acc, (l, s)| {
        &acc + &RatFunc::poly(Poly::linear(l.clone())).recip().scale(s)
    });
    CompanionSystem::scalar(a)
}

/// Whether each entry divides the next.
pub fn divisibility_chain(d: &[BigUint]) -> bool {
    d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::diffop::{companion, DiffOp};

    fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.len();
        let m = b.first().map_or(0, |r| r.len());
        let mut out = vec![vec![RatFunc::zero(); m]; n];
        for (i, row) in a.iter().enumerate() {
            for (k, aik) in row.iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    if b[k][j].is_zero() {
                        continue;
                    }
                    out[i][j] = &out[i][j] + &(aik * &b[k][j]);
                }
            }
        }
        out
    }

    /// The recurrence applied literally, over Q(z).
    fn iterate_literal(a1: &Matrix, n: usize) -> Vec<Matrix> {
        let mut out = vec![a1.clone()];
        while out.len() < n {
            let prev = out.last().unwrap();
            let mut next = mat_mul(prev, a1);
            for (row, prow) in next.iter_mut().zip(prev) {
                for (x, p) in row.iter_mut().zip(prow) {
                    *x = &*x + &p.derivative();
                }
            }
            out.push(next);
        }
        out
    }

    #[test]
    fn numerator_recurrence_matches_literal() {
        let l = DiffOp::new(vec![
            RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, 0, 3])),
            RatFunc::new(Poly::from_ints(&[2, -1]), Poly::from_ints(&[0, 1, -1])),
            RatFunc::one(),
        ]);
        let sys = companion(&l).unwrap();
        assert_eq!(iterate_a(&sys, 8), iterate_literal(&sys.a, 8));
    }

    fn nat(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn scalar_recurrence() {
        let a1 = RatFunc::new(Poly::constant(rat(1, 2)), Poly::from_ints(&[-1, 1]));
        let sys = CompanionSystem::scalar(a1);
        let a = iterate_a(&sys, 2);
        let expect = RatFunc::new(Poly::constant(rat(-1, 4)), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(a[1][0][0], expect);
        assert_eq!(closed_form_a(&[(int(1), rat(1, 2))], 2).unwrap(), expect);
    }

    #[test]
    fn nilpotent_and_zero() {
        let sys = companion(&DiffOp::d_pow(2)).unwrap();
        let a = iterate_a(&sys, 3);
        assert!(a[1].iter().flatten().all(|x| x.is_zero()));
        let z = CompanionSystem::scalar(RatFunc::zero());
        assert!(iterate_a(&z, 4).iter().all(|m| m[0][0].is_zero()));
    }

    #[test]
    fn denominators() {
        let sys = scalar_system(&[(int(1), rat(1, 2))]);
        let rep = denominator_sequence(&sys, 3).unwrap();
        assert_eq!(rep.d, nat(&[2, 8, 16]));
        assert_eq!(rep.t, Poly::from_ints(&[-1, 1]));
        let sys = scalar_system(&[(int(0), rat(-1, 3))]);
        assert_eq!(denominator_sequence(&sys, 2).unwrap().d, nat(&[3, 9]));
        let sys = companion(&DiffOp::d_pow(2)).unwrap();
        assert_eq!(denominator_sequence(&sys, 4).unwrap().d, nat(&[1, 1, 1, 1]));
        // integral entries alone do not force D_k = 1: exp(z) gives k!
        let sys = CompanionSystem::scalar(RatFunc::one());
        assert_eq!(
            denominator_sequence(&sys, 4).unwrap().d,
            nat(&[1, 2, 6, 24])
        );
    }

    #[test]
    fn closed_form_cases() {
        assert_eq!(
            closed_form_a(&[(int(3), rat(2, 5))], 0).unwrap(),
            RatFunc::one()
        );
        let data = [(int(0), rat(1, 2)), (int(1), rat(1, 2))];
        let a1 = closed_form_a(&data, 1).unwrap();
        assert_eq!(a1, scalar_system(&data).a[0][0]);
        assert!(closed_form_a(&[(int(1), int(1)), (int(1), int(2))], 1).is_err());
    }

    #[test]
    fn oracle_agreement() {
        let data = [
            (int(0), rat(1, 3)),
            (int(2), rat(-3, 4)),
            (rat(-1, 2), rat(5, 2)),
        ];
        let a = iterate_a(&scalar_system(&data), 8);
        for (i, m) in a.iter().enumerate() {
            assert_eq!(m[0][0], closed_form_a(&data, i + 1).unwrap());
        }
    }

    #[test]
    fn non_g_operator_still_reports() {
        let sys = companion(&DiffOp::first_order(&RatFunc::z().pow(-2))).unwrap();
        let rep = denominator_sequence(&sys, 6).unwrap();
        assert!(divisibility_chain(&rep.d));
    }
}
