//! Recovering the components `f_(alpha, j)` of an expression from the
//! iterates `T^k F` of the monodromy.
//!
//! `T^k F = sum_alpha zeta_alpha^k sum_m (k tau)^m Y_(alpha, m)` with
//! `Y_(alpha, m) = z^alpha sum_(j >= m) C(j, m) log(z)^(j - m) f_(alpha, j)`,
//! so the `Y` solve a confluent Vandermonde system in `k`, and
//! `f_(alpha, m)` is the log-free part of `Y_(alpha, m)`.

use num_traits::Zero;

use crate::algebra::rat::{int, Rat};
use crate::error::{Error, Result};
use crate::nga::cyclotomic::CycConst;
use crate::nga::expr::{NgaExpr, NgaFunction, NgaTerm};
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitComponent {
    pub alpha: Rat,
    pub j: u32,
    /// Coefficient of `z^(offset + n)`.
    pub offset: i64,
    pub coeffs: Vec<CycConst>,
}

impl SplitComponent {
    /// The component as a rational series, when every coefficient is rational.
    pub fn rational_series(&self) -> Option<TruncSeries> {
        let c: Option<Vec<Rat>> = self.coeffs.iter().map(|c| c.as_rational()).collect();
        Some(TruncSeries::new(int(self.offset), c?))
    }

    /// `lambda * S` with `S` rational and `lambda` its first non-zero
    /// coefficient, when the component has that shape.
    pub fn factor(&self) -> Option<(CycConst, TruncSeries)> {
        if let Some(s) = self.rational_series() {
            return Some((CycConst::one(), s));
        }
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.clone();
        let q: Option<Vec<Rat>> = self.coeffs.iter().map(|c| lead.rational_ratio(c)).collect();
        Some((lead, TruncSeries::new(int(self.offset), q?)))
    }
}

fn solve_field(mut m: Vec<Vec<CycConst>>) -> Vec<Vec<CycConst>> {
    let n = m.len();
    let mut inv: Vec<Vec<CycConst>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CycConst::one()
                    } else {
                        CycConst::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("distinct exponents give an invertible system");
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].inverse().expect("tau-free pivot");
        for x in m[col].iter_mut() {
            *x = &*x * &p;
        }
        for x in inv[col].iter_mut() {
            *x = &*x * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let a = &m[r][c] - &(&f * &m[col][c]);
                m[r][c] = a;
                let b = &inv[r][c] - &(&f * &inv[col][c]);
                inv[r][c] = b;
            }
        }
    }
    inv
}

/// Components `(alpha, j, f_(alpha, j))` in increasing `(alpha, j)`.
pub fn holonomy_split(e: &NgaExpr) -> Result<Vec<SplitComponent>> {
    if e.terms().iter().any(|t| t.series.truncation() == 0) {
        return Err(Error::Truncation { have: 0, need: 1 });
    }
    let f = e.expand();
    if f.len == 0 && !e.terms().is_empty() {
        return Err(Error::Domain("series windows do not overlap".into()));
    }
    // T preserves each class z^alpha C[log z][[z]], so the system decouples
    // into one confluent block per alpha with the single node zeta_alpha.
    let mut out = Vec::new();
    for (alpha, jmax) in f.support() {
        let mut fa = f.zero_like();
        fa.parts = f
            .parts
            .iter()
            .filter(|((a, _), _)| *a == alpha)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let s = jmax as usize + 1;
        let mut iterates: Vec<NgaFunction> = Vec::with_capacity(s);
        iterates.push(fa);
        for _ in 1..s {
            let next = iterates.last().unwrap().monodromy();
            iterates.push(next);
        }
        let m: Vec<Vec<CycConst>> = (0..s)
            .map(|k| {
                let root = CycConst::exp_2pi_i(&(&alpha * int(k as i64)));
                (0..s)
                    .map(|mm| root.scale(&int(k as i64).pow(mm as i32)))
                    .collect()
            })
            .collect();
        let inv = solve_field(m);
        for (mm, row) in inv.iter().enumerate() {
            let mut y = f.zero_like();
            for (c, it) in row.iter().zip(&iterates) {
                y.add_scaled(c, it);
            }
            let Some(v) = y.parts.get(&(alpha.clone(), 0)) else {
                continue;
            };
            let coeffs: Vec<CycConst> = v
                .iter()
                .map(|c| c.unshift_tau(mm).expect("divisible by tau^m"))
                .collect();
            out.push(SplitComponent {
                alpha: alpha.clone(),
                j: mm as u32,
                offset: f.lo,
                coeffs,
            });
        }
    }
    out.sort_by(|x, y| (&x.alpha, x.j).cmp(&(&y.alpha, y.j)));
    Ok(out)
}

/// Inverse of the split: `sum z^alpha log(z)^j f_(alpha, j)`. A component that
/// is not `lambda * S` is written over the monomial basis of its constants.
pub fn reassemble(parts: &[SplitComponent]) -> Result<NgaExpr> {
    let mut terms = Vec::new();
    for p in parts {
        if let Some((c, s)) = p.factor() {
            terms.push(NgaTerm {
                alpha: p.alpha.clone(),
                j: p.j,
                coeff: c,
                series: s,
            });
            continue;
        }
        let level = p
            .coeffs
            .iter()
            .map(|c| c.level())
            .fold(1u64, num_integer::lcm);
        let lifted: Vec<CycConst> = p.coeffs.iter().map(|c| c.lift(level)).collect();
        let kmax = lifted
            .iter()
            .filter_map(|c| c.tau_degree())
            .max()
            .unwrap_or(0);
        for k in 0..=kmax {
            for e in 0..level as usize {
                let q: Vec<Rat> = lifted
                    .iter()
                    .map(|c| c.tau_coeffs().get(k).map_or_else(Rat::zero, |p| p.coeff(e)))
                    .collect();
                if q.iter().all(|x| x.is_zero()) {
                    continue;
                }
                terms.push(NgaTerm {
                    alpha: p.alpha.clone(),
                    j: p.j,
                    coeff: &CycConst::zeta(level, e as i64) * &CycConst::tau_pow(k),
                    series: TruncSeries::new(int(p.offset), q),
                });
            }
        }
    }
    NgaExpr::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn term(alpha: Rat, j: u32, coeff: CycConst, c: Vec<Rat>) -> NgaTerm {
        NgaTerm {
            alpha,
            j,
            coeff,
            series: TruncSeries::power(c),
        }
    }

    #[test]
    fn two_components() {
        let s1: Vec<Rat> = (0..50).map(|_| int(1)).collect();
        let s2: Vec<Rat> = (0..50).map(|n| int(2).pow(n)).collect();
        let e = NgaExpr::new(vec![
            term(rat(1, 2), 0, CycConst::one(), s1.clone()),
            term(int(0), 1, CycConst::one(), s2.clone()),
        ])
        .unwrap();
        let parts = holonomy_split(&e).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!((parts[0].alpha.clone(), parts[0].j), (int(0), 1));
        assert_eq!(parts[0].rational_series().unwrap(), TruncSeries::power(s2));
        assert_eq!((parts[1].alpha.clone(), parts[1].j), (rat(1, 2), 0));
        assert_eq!(parts[1].rational_series().unwrap(), TruncSeries::power(s1));
        assert!(reassemble(&parts).unwrap().same_function(&e));
    }

    #[test]
    fn trivial_splits() {
        let s: Vec<Rat> = (1..8).map(int).collect();
        let e = NgaExpr::new(vec![term(rat(1, 3), 0, CycConst::one(), s.clone())]).unwrap();
        let parts = holonomy_split(&e).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(
            parts[0].rational_series().unwrap(),
            TruncSeries::power(s.clone())
        );
        let e = NgaExpr::new(vec![term(int(0), 0, CycConst::one(), s)]).unwrap();
        assert_eq!(e.expand().monodromy(), e.expand());
        assert_eq!(holonomy_split(&e).unwrap().len(), 1);
    }

    #[test]
    fn log_squared_with_cyclotomic_coefficient() {
        let w = CycConst::exp_2pi_i(&rat(1, 3));
        let e = NgaExpr::new(vec![
            term(rat(1, 3), 2, w.clone(), vec![int(1), int(2), int(3)]),
            term(
                rat(1, 3),
                0,
                CycConst::tau_pow(1),
                vec![int(0), int(1), int(1)],
            ),
            term(
                rat(1, 4),
                1,
                CycConst::one(),
                vec![rat(1, 2), int(0), int(5)],
            ),
        ])
        .unwrap();
        let parts = holonomy_split(&e).unwrap();
        assert_eq!(parts.len(), 3);
        let (c, s) = parts[2].factor().unwrap();
        assert_eq!(c, w);
        assert_eq!(s.coeffs, vec![int(1), int(2), int(3)]);
        assert!(reassemble(&parts).unwrap().same_function(&e));
    }
}
