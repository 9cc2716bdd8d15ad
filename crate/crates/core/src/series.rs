//! Truncated generalized power series `z^offset * sum c_n z^n`.

use num_traits::{One, Zero};

use crate::algebra::rat::{int, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};

/// `sum_{n < coeffs.len()} coeffs[n] z^(offset + n)`, known exactly up to
/// the truncation `coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub offset: Rat,
    pub coeffs: Vec<Rat>,
}

impl TruncSeries {
    pub fn new(offset: Rat, coeffs: Vec<Rat>) -> Self {
        TruncSeries { offset, coeffs }
    }

    /// Power series (offset 0).
    pub fn power(coeffs: Vec<Rat>) -> Self {
        TruncSeries::new(Rat::zero(), coeffs)
    }

    /// Expansion of a rational function at zero with `len` terms.
    pub fn from_ratfunc(f: &RatFunc, len: usize) -> Self {
        let (v, c) = f.laurent_at_zero(len);
        TruncSeries::new(int(v), c)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `z^e`, if `e` lies in the known range.
    pub fn coeff_at(&self, e: &Rat) -> Option<Rat> {
        let k = e - &self.offset;
        if !k.is_integer() || k < Rat::zero() {
            return None;
        }
        let k: usize = crate::algebra::rat::to_i64(&k)? as usize;
        self.coeffs.get(k).cloned()
    }

    /// Upper end (exclusive) of the known exponent range.
    pub fn end(&self) -> Rat {
        &self.offset + int(self.coeffs.len() as i64)
    }

    /// Whether both series agree on every exponent known to both. Exponents
    /// below one offset count as zero for that series.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let shift = &other.offset - &self.offset;
        if !shift.is_integer() {
            return self.is_zero() && other.is_zero();
        }
        let lo = if self.offset < other.offset {
            self.offset.clone()
        } else {
            other.offset.clone()
        };
        let hi = if self.end() < other.end() {
            self.end()
        } else {
            other.end()
        };
        let mut e = lo;
        while e < hi {
            let a = self.value_at(&e);
            let b = other.value_at(&e);
            if a != b {
                return false;
            }
            e += Rat::one();
        }
        true
    }

    fn value_at(&self, e: &Rat) -> Rat {
        if e < &self.offset {
            Rat::zero()
        } else {
            self.coeff_at(e).unwrap_or_else(Rat::zero)
        }
    }

    /// Drops leading zero coefficients, moving the offset; the all-zero
    /// series is left unchanged.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        if let Some(k) = lead {
            if k > 0 {
                self.coeffs.drain(..k);
                self.offset += int(k as i64);
            }
        }
        self
    }
}

/// Applies `L` term by term. The result covers exactly the exponent range
/// determined by the input: its length equals the input truncation, and its
/// offset moves down by the largest `i - v_i` over coefficients `a_i` of
/// valuation `v_i` at zero. Leading zeros are then stripped.
pub fn op_apply(l: &DiffOp, f: &TruncSeries) -> Result<TruncSeries> {
    let t = f.truncation();
    if t == 0 {
        return Err(Error::Truncation { have: 0, need: 1 });
    }
    if l.is_zero() {
        return Ok(TruncSeries::new(f.offset.clone(), vec![Rat::zero(); t]));
    }
    let parts: Vec<(usize, i64, Vec<Rat>)> = l
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let (v, s) = c.laurent_at_zero(t);
            (i, v, s)
        })
        .collect();
    let low = parts.iter().map(|(i, v, _)| v - *i as i64).min().unwrap();
    let mut out = vec![Rat::zero(); t];
    for (i, v, s) in &parts {
        // D^i f, coefficients at exponents offset - i + n
        let mut d: Vec<Rat> = f.coeffs.clone();
        for (n, x) in d.iter_mut().enumerate() {
            let mut fall = Rat::one();
            let e = &f.offset + int(n as i64);
            for k in 0..*i {
                fall *= &e - int(k as i64);
            }
            *x *= fall;
        }
        let start = (v - *i as i64 - low) as usize;
        for (m, a) in s.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (n, x) in d.iter().enumerate() {
                let pos = start + m + n;
                if pos >= t {
                    break;
                }
                out[pos] += a * x;
            }
        }
    }
    Ok(TruncSeries::new(&f.offset + int(low), out).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rat::rat;

    #[test]
    fn exact_solution_vanishes() {
        let l = DiffOp::first_order(&RatFunc::new(Poly::one(), Poly::from_ints(&[0, 2])));
        let f = TruncSeries::new(rat(1, 2), vec![int(1)]);
        assert!(op_apply(&l, &f).unwrap().is_zero());
    }

    #[test]
    fn derivative() {
        let f = TruncSeries::power(vec![int(1), int(1), int(1)]);
        let g = op_apply(&DiffOp::d(), &f).unwrap();
        assert_eq!(g, TruncSeries::power(vec![int(1), int(2)]));
    }

    #[test]
    fn geometric_series() {
        let l = DiffOp::new(vec![
            RatFunc::from_int(-1),
            RatFunc::poly(Poly::from_ints(&[1, -1])),
        ]);
        let f = TruncSeries::power(vec![int(1); 31]);
        let g = op_apply(&l, &f).unwrap();
        assert!(g.is_zero());
        assert_eq!(g.truncation(), 31);
    }

    #[test]
    fn pole_shifts_offset() {
        // (1/z) applied to 1 + z
        let l = DiffOp::from_ratfunc(RatFunc::z().recip());
        let g = op_apply(&l, &TruncSeries::power(vec![int(1), int(1)])).unwrap();
        assert_eq!(g, TruncSeries::new(int(-1), vec![int(1), int(1)]));
        assert!(op_apply(&l, &TruncSeries::power(vec![])).is_err());
    }
}
