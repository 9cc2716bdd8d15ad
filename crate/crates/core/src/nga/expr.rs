//! Finite sums `sum lambda z^alpha log(z)^j S(z)` and the monodromy around 0.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::rat::{binomial, fmt_rat, int, Rat};
use crate::error::{Error, Result};
use crate::nga::cyclotomic::CycConst;
use crate::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgaTerm {
    /// In `[0, 1)`.
    pub alpha: Rat,
    pub j: u32,
    pub coeff: CycConst,
    /// Integer offset.
    pub series: TruncSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgaExpr {
    terms: Vec<NgaTerm>,
}

/// Splits `alpha` into an integer part and a fraction in `[0, 1)`.
pub fn fold_exponent(alpha: &Rat) -> (i64, Rat) {
    let k = alpha.floor();
    let frac = alpha - &k;
    (k.to_integer().to_i64().expect("small exponent"), frac)
}

fn integer_offset(s: &TruncSeries) -> Result<i64> {
    if !s.offset.is_integer() {
        return Err(Error::Domain(format!(
            "series offset {} is not an integer",
            fmt_rat(&s.offset)
        )));
    }
    s.offset
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Domain("series offset out of range".into()))
}

impl NgaExpr {
    /// Folds integer parts of the exponents into the series, merges terms
    /// with the same `(alpha, j, series)` and drops zero terms. All series
    /// must share one truncation.
    pub fn new(terms: Vec<NgaTerm>) -> Result<Self> {
        let trunc = terms.first().map(|t| t.series.truncation());
        let mut out: Vec<NgaTerm> = Vec::new();
        for mut t in terms {
            if Some(t.series.truncation()) != trunc {
                return Err(Error::Domain("series truncations differ".into()));
            }
            integer_offset(&t.series)?;
            let (k, frac) = fold_exponent(&t.alpha);
            t.alpha = frac;
            t.series.offset += int(k);
            match out
                .iter_mut()
                .find(|u| u.alpha == t.alpha && u.j == t.j && u.series == t.series)
            {
                Some(u) => u.coeff = &u.coeff + &t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero() && !t.series.is_zero());
        out.sort_by(|a, b| (&a.alpha, a.j).cmp(&(&b.alpha, b.j)));
        Ok(NgaExpr { terms: out })
    }

    pub fn terms(&self) -> &[NgaTerm] {
        &self.terms
    }

    pub fn truncation(&self) -> usize {
        self.terms.first().map_or(0, |t| t.series.truncation())
    }

    /// The function as a map `(alpha, j) -> coefficients` over one window.
    pub fn expand(&self) -> NgaFunction {
        let lo = self
            .terms
            .iter()
            .map(|t| integer_offset(&t.series).unwrap())
            .min()
            .unwrap_or(0);
        let hi = self
            .terms
            .iter()
            .map(|t| integer_offset(&t.series).unwrap() + t.series.truncation() as i64)
            .min()
            .unwrap_or(0);
        let len = (hi - lo).max(0) as usize;
        let mut f = NgaFunction {
            lo,
            len,
            parts: BTreeMap::new(),
        };
        for t in &self.terms {
            let off = integer_offset(&t.series).unwrap();
            let v = f
                .parts
                .entry((t.alpha.clone(), t.j))
                .or_insert_with(|| vec![CycConst::zero(); len]);
            for (i, slot) in v.iter_mut().enumerate() {
                let idx = lo + i as i64 - off;
                if idx >= 0 {
                    if let Some(c) = t.series.coeffs.get(idx as usize) {
                        if !c.is_zero() {
                            *slot = &*slot + &t.coeff.scale(c);
                        }
                    }
                }
            }
        }
        f.trim();
        f
    }

    /// Whether both sides expand to the same function.
    pub fn same_function(&self, other: &NgaExpr) -> bool {
        self.expand() == other.expand()
    }
}

impl fmt::Display for NgaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                format!(
                    "({})*z^({})*log(z)^{}*S[offset {}, {} terms]",
                    t.coeff,
                    fmt_rat(&t.alpha),
                    t.j,
                    fmt_rat(&t.series.offset),
                    t.series.truncation()
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn transform(e: &NgaExpr, inverse: bool) -> NgaExpr {
    let mut terms = Vec::new();
    for t in &e.terms {
        let a = if inverse { -&t.alpha } else { t.alpha.clone() };
        let root = CycConst::exp_2pi_i(&a);
        for i in 0..=t.j {
            let b = Rat::from_integer(binomial(t.j as usize, i as usize));
            let k = (t.j - i) as usize;
            let mut c = CycConst::tau_pow(k).scale(&b);
            if inverse && k % 2 == 1 {
                c = -&c;
            }
            terms.push(NgaTerm {
                alpha: t.alpha.clone(),
                j: i,
                coeff: &(&root * &c) * &t.coeff,
                series: t.series.clone(),
            });
        }
    }
    NgaExpr::new(terms).expect("same truncations")
}

/// `z^alpha -> exp(2 pi i alpha) z^alpha`, `log z -> log z + tau`.
pub fn monodromy_apply(e: &NgaExpr) -> NgaExpr {
    transform(e, false)
}

/// Inverse monodromy: `zeta -> zeta^(-1)`, `tau -> -tau`.
pub fn monodromy_inverse(e: &NgaExpr) -> NgaExpr {
    transform(e, true)
}

/// `sum_{(alpha, j)} z^alpha log(z)^j g_(alpha, j)(z)` with every `g` given by
/// coefficients of `z^lo, ..., z^(lo + len - 1)`. Zero parts are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgaFunction {
    pub lo: i64,
    pub len: usize,
    pub parts: BTreeMap<(Rat, u32), Vec<CycConst>>,
}

impl NgaFunction {
    fn trim(&mut self) {
        self.parts.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }

    pub fn zero_like(&self) -> Self {
        NgaFunction {
            lo: self.lo,
            len: self.len,
            parts: BTreeMap::new(),
        }
    }

    /// `self + c * other` on the same window.
    pub fn add_scaled(&mut self, c: &CycConst, other: &NgaFunction) {
        debug_assert_eq!((self.lo, self.len), (other.lo, other.len));
        if c.is_zero() {
            return;
        }
        for (key, v) in &other.parts {
            let slot = self
                .parts
                .entry(key.clone())
                .or_insert_with(|| vec![CycConst::zero(); other.len]);
            for (s, x) in slot.iter_mut().zip(v) {
                if !x.is_zero() {
                    *s = &*s + &(c * x);
                }
            }
        }
        self.trim();
    }

    pub fn monodromy(&self) -> NgaFunction {
        let mut out = self.zero_like();
        for ((alpha, j), v) in &self.parts {
            let root = CycConst::exp_2pi_i(alpha);
            for i in 0..=*j {
                let b = Rat::from_integer(binomial(*j as usize, i as usize));
                let c = &root * &CycConst::tau_pow((j - i) as usize).scale(&b);
                let slot = out
                    .parts
                    .entry((alpha.clone(), i))
                    .or_insert_with(|| vec![CycConst::zero(); self.len]);
                for (s, x) in slot.iter_mut().zip(v) {
                    *s = &*s + &(&c * x);
                }
            }
        }
        out.trim();
        out
    }

    /// Distinct exponents with their highest power of `log`.
    pub fn support(&self) -> Vec<(Rat, u32)> {
        let mut out: Vec<(Rat, u32)> = Vec::new();
        for (alpha, j) in self.parts.keys() {
            match out.iter_mut().find(|(a, _)| a == alpha) {
                Some(e) => e.1 = e.1.max(*j),
                None => out.push((alpha.clone(), *j)),
            }
        }
        out
    }

    /// Lowest common level of `exp(2 pi i alpha)` over the support.
    pub fn level(&self) -> u64 {
        self.parts.keys().fold(1u64, |acc, (a, _)| {
            acc.lcm(&a.denom().to_u64().expect("small denominator"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn ones(n: usize) -> TruncSeries {
        TruncSeries::power(vec![int(1); n])
    }

    fn term(alpha: Rat, j: u32, s: TruncSeries) -> NgaTerm {
        NgaTerm {
            alpha,
            j,
            coeff: CycConst::one(),
            series: s,
        }
    }

    #[test]
    fn folding() {
        let e = NgaExpr::new(vec![term(rat(3, 2), 0, ones(4))]).unwrap();
        assert_eq!(e.terms()[0].alpha, rat(1, 2));
        assert_eq!(e.terms()[0].series.offset, int(1));
        let e = NgaExpr::new(vec![term(rat(-1, 3), 0, ones(4))]).unwrap();
        assert_eq!(e.terms()[0].alpha, rat(2, 3));
        assert_eq!(e.terms()[0].series.offset, int(-1));
        assert!(NgaExpr::new(vec![term(int(0), 0, ones(4)), term(int(0), 1, ones(3))]).is_err());
    }

    #[test]
    fn monodromy_examples() {
        let e = NgaExpr::new(vec![term(rat(1, 2), 0, ones(5))]).unwrap();
        let t = monodromy_apply(&e);
        assert_eq!(t.terms()[0].coeff, CycConst::rational(int(-1)));
        let e = NgaExpr::new(vec![term(int(0), 1, ones(5))]).unwrap();
        let t = monodromy_apply(&e);
        assert_eq!(t.terms().len(), 2);
        assert_eq!(t.terms()[0].j, 0);
        assert_eq!(t.terms()[0].coeff, CycConst::tau_pow(1));
        let e = NgaExpr::new(vec![term(int(0), 0, ones(5))]).unwrap();
        assert_eq!(monodromy_apply(&e), e);
    }

    #[test]
    fn monodromy_inverts() {
        let e = NgaExpr::new(vec![
            term(rat(1, 3), 2, ones(6)),
            term(rat(3, 4), 1, TruncSeries::power(vec![int(2); 6])),
        ])
        .unwrap();
        let back = monodromy_inverse(&monodromy_apply(&e));
        assert!(back.same_function(&e));
        assert!(monodromy_apply(&e).expand() == e.expand().monodromy());
    }
}
