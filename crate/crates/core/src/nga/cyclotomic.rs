//! Constants in `Q(zeta_N)[tau]`, with `tau` a formal stand-in for `2 pi i`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::poly::Poly;
use crate::algebra::rat::{fmt_rat, Rat};

thread_local! {
    static CYCLOTOMIC: RefCell<HashMap<u64, Poly>> = RefCell::new(HashMap::new());
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Poly {
    assert!(n > 0);
    if let Some(p) = CYCLOTOMIC.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut p = &Poly::monomial(Rat::one(), n as usize) - &Poly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    CYCLOTOMIC.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

/// `sum_k tau^k c_k(zeta_N)` with each `c_k` reduced mod `Phi_N`.
#[derive(Clone, Debug)]
pub struct CycConst {
    level: u64,
    tau: Vec<Poly>,
}

impl CycConst {
    fn build(level: u64, tau: Vec<Poly>) -> Self {
        let phi = cyclotomic(level);
        let mut tau: Vec<Poly> = tau.into_iter().map(|p| p.rem(&phi)).collect();
        while tau.last().is_some_and(|p| p.is_zero()) {
            tau.pop();
        }
        CycConst { level, tau }
    }

    pub fn zero() -> Self {
        CycConst {
            level: 1,
            tau: Vec::new(),
        }
    }

    pub fn one() -> Self {
        CycConst::rational(Rat::one())
    }

    pub fn rational(q: Rat) -> Self {
        CycConst::build(1, vec![Poly::constant(q)])
    }

    /// `zeta_N^k` at level `N`.
    pub fn zeta(level: u64, k: i64) -> Self {
        let e = k.rem_euclid(level as i64) as usize;
        CycConst::build(level, vec![Poly::monomial(Rat::one(), e)])
    }

    /// `exp(2 pi i alpha)` for rational `alpha`.
    pub fn exp_2pi_i(alpha: &Rat) -> Self {
        let den: u64 = alpha.denom().try_into().expect("small denominator");
        let num: i64 = alpha.numer().try_into().expect("small numerator");
        CycConst::zeta(den, num)
    }

    pub fn tau_pow(k: usize) -> Self {
        let mut tau = vec![Poly::zero(); k];
        tau.push(Poly::one());
        CycConst::build(1, tau)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Coefficients of the powers of `tau`, as polynomials in `zeta_N`.
    pub fn tau_coeffs(&self) -> &[Poly] {
        &self.tau
    }

    pub fn is_zero(&self) -> bool {
        self.tau.is_empty()
    }

    /// Degree in `tau`; `None` for zero.
    pub fn tau_degree(&self) -> Option<usize> {
        self.tau.len().checked_sub(1)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self.tau.as_slice() {
            [] => Some(Rat::zero()),
            [c] if c.deg() == 0 => Some(c.constant_term()),
            _ => None,
        }
    }

    /// The same element at level `m`, a multiple of the current level.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.level));
        if m == self.level {
            return self.clone();
        }
        let step = (m / self.level) as usize;
        let sub = Poly::monomial(Rat::one(), step);
        CycConst::build(m, self.tau.iter().map(|p| p.compose(&sub)).collect())
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.level.lcm(&other.level);
        (self.lift(m), other.lift(m))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        CycConst::build(self.level, self.tau.iter().map(|p| p.scale(q)).collect())
    }

    /// Multiplication by `tau^k`.
    pub fn shift_tau(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut tau = vec![Poly::zero(); k];
        tau.extend(self.tau.iter().cloned());
        CycConst {
            level: self.level,
            tau,
        }
    }

    /// Exact division by `tau^k`, if it divides.
    pub fn unshift_tau(&self, k: usize) -> Option<Self> {
        if self.tau.iter().take(k).any(|p| !p.is_zero()) {
            return None;
        }
        Some(CycConst {
            level: self.level,
            tau: self.tau.iter().skip(k).cloned().collect(),
        })
    }

    /// Inverse of a non-zero element free of `tau`.
    pub fn inverse(&self) -> Option<Self> {
        match self.tau.as_slice() {
            [c] => {
                let phi = cyclotomic(self.level);
                Some(CycConst::build(self.level, vec![c.inv_mod(&phi)?]))
            }
            _ => None,
        }
    }

    /// Image under `zeta -> zeta^(-1)`, `tau -> -tau`.
    pub fn conjugate(&self) -> Self {
        let n = self.level as usize;
        let tau = self
            .tau
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let mut out = Poly::zero();
                for (e, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out = &out + &Poly::monomial(c.clone(), (n - e % n) % n);
                    }
                }
                if k % 2 == 1 {
                    -&out
                } else {
                    out
                }
            })
            .collect();
        CycConst::build(self.level, tau)
    }

    /// Whether `other = q * self` for a rational `q`; returns `q`.
    pub fn rational_ratio(&self, other: &Self) -> Option<Rat> {
        if other.is_zero() {
            return Some(Rat::zero());
        }
        let (a, b) = self.common(other);
        let (k, p) = a.tau.iter().enumerate().find(|(_, p)| !p.is_zero())?;
        let e = p.coeffs().iter().position(|c| !c.is_zero())?;
        let q = b.tau.get(k)?.coeff(e) / p.coeff(e);
        (a.scale(&q) == b).then_some(q)
    }
}

impl PartialEq for CycConst {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.tau == b.tau
    }
}

impl Eq for CycConst {}

impl std::ops::Add for &CycConst {
    type Output = CycConst;
    fn add(self, rhs: &CycConst) -> CycConst {
        let (a, b) = self.common(rhs);
        let n = a.tau.len().max(b.tau.len());
        let tau = (0..n)
            .map(|k| match (a.tau.get(k), b.tau.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => Poly::zero(),
            })
            .collect();
        CycConst::build(a.level, tau)
    }
}

impl std::ops::Neg for &CycConst {
    type Output = CycConst;
    fn neg(self) -> CycConst {
        CycConst {
            level: self.level,
            tau: self.tau.iter().map(|p| -p).collect(),
        }
    }
}

impl std::ops::Sub for &CycConst {
    type Output = CycConst;
    fn sub(self, rhs: &CycConst) -> CycConst {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &CycConst {
    type Output = CycConst;
    fn mul(self, rhs: &CycConst) -> CycConst {
        if self.is_zero() || rhs.is_zero() {
            return CycConst::zero();
        }
        let (a, b) = self.common(rhs);
        let mut tau = vec![Poly::zero(); a.tau.len() + b.tau.len() - 1];
        for (i, x) in a.tau.iter().enumerate() {
            for (j, y) in b.tau.iter().enumerate() {
                tau[i + j] = &tau[i + j] + &(x * y);
            }
        }
        CycConst::build(a.level, tau)
    }
}

impl fmt::Display for CycConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, p) in self.tau.iter().enumerate() {
            for (e, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut fac: Vec<String> = Vec::new();
                match e {
                    0 => {}
                    1 => fac.push(format!("zeta{}", self.level)),
                    _ => fac.push(format!("zeta{}^{}", self.level, e)),
                }
                match k {
                    0 => {}
                    1 => fac.push("tau".into()),
                    _ => fac.push(format!("tau^{k}")),
                }
                let s = if fac.is_empty() {
                    fmt_rat(c)
                } else if c.is_one() {
                    fac.join("*")
                } else if *c == -Rat::one() {
                    format!("-{}", fac.join("*"))
                } else {
                    format!("{}*{}", fmt_rat(c), fac.join("*"))
                };
                parts.push(s);
            }
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycConst::exp_2pi_i(&rat(1, 2)), CycConst::rational(int(-1)));
        assert_eq!(CycConst::zeta(6, 3), CycConst::rational(int(-1)));
        let i = CycConst::exp_2pi_i(&rat(1, 4));
        assert_eq!(&i * &i, CycConst::rational(int(-1)));
        let w = CycConst::exp_2pi_i(&rat(1, 3));
        assert_eq!(&(&w * &w) * &w, CycConst::one());
        // levels mix through lifting
        let s = &w + &i;
        assert_eq!(s.level(), 12);
        assert_eq!(&s - &i, w);
        assert_eq!(w.to_string(), "zeta3");
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &CycConst::zeta(5, 2) + &CycConst::rational(int(3));
        assert_eq!(&x * &x.inverse().unwrap(), CycConst::one());
        let w = CycConst::zeta(5, 2);
        assert_eq!(&w * &w.conjugate(), CycConst::one());
        let t = CycConst::tau_pow(1);
        assert_eq!(t.conjugate(), -&t);
        assert!(t.inverse().is_none());
    }

    #[test]
    fn tau_arithmetic() {
        let t = CycConst::tau_pow(1);
        let a = &t + &CycConst::one();
        let sq = &a * &a;
        assert_eq!(sq.tau_degree(), Some(2));
        assert_eq!(sq.to_string(), "1 + 2*tau + tau^2");
        assert_eq!(t.shift_tau(2).unshift_tau(3), Some(CycConst::one()));
        assert!(a.unshift_tau(1).is_none());
        assert_eq!(
            CycConst::one().rational_ratio(&CycConst::rational(rat(3, 2))),
            Some(rat(3, 2))
        );
        assert_eq!(CycConst::one().rational_ratio(&t), None);
    }
}
