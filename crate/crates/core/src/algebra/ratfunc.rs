//! The coefficient field Q(z).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{int, Rat};

/// Reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and normalizes. Panics when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let l = d.lc();
        if !l.is_one() {
            let inv = l.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    /// `num/den` already coprime; only the leading coefficient is fixed.
    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let l = den.lc();
        if l.is_one() {
            return RatFunc { num, den };
        }
        let inv = l.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::constant(int(c))
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn z() -> Self {
        RatFunc::poly(Poly::z())
    }

    /// `c / p^k`.
    pub fn over_power(c: Rat, p: &Poly, k: usize) -> Self {
        RatFunc::new(Poly::constant(c), p.pow(k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.constant_term())
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() as i64 - self.den.deg() as i64)
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        if k < 0 {
            return self.recip().pow(-k);
        }
        RatFunc {
            num: self.num.pow(k as usize),
            den: self.den.pow(k as usize),
        }
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Multiplicity of the irreducible `p` in the denominator.
    pub fn pole_order(&self, p: &Poly) -> usize {
        multiplicity(&self.den, p)
    }

    /// Order of vanishing at the irreducible `p`, negative for poles.
    pub fn valuation(&self, p: &Poly) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        multiplicity(&self.num, p) as i64 - multiplicity(&self.den, p) as i64
    }

    /// Order at infinity: `deg den - deg num` (`i64::MAX` for zero).
    pub fn order_at_infinity(&self) -> i64 {
        self.degree().map(|d| -d).unwrap_or(i64::MAX)
    }

    /// `self(1/w)`, written again as a function of `z` (playing `w`).
    pub fn invert_variable(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let dn = self.num.deg();
        let dd = self.den.deg();
        let n = self.num.reversed();
        let d = self.den.reversed();
        if dd >= dn {
            RatFunc::new(n.shift_up(dd - dn), d)
        } else {
            RatFunc::new(n, d.shift_up(dn - dd))
        }
    }

    /// `self(z + c)`.
    pub fn taylor_shift(&self, c: &Rat) -> RatFunc {
        RatFunc::new(self.num.taylor_shift(c), self.den.taylor_shift(c))
    }

    /// Laurent expansion at `z = 0`: returns the valuation `v` and the first
    /// `len` coefficients of `z^v, z^(v+1), ...`.
    pub fn laurent_at_zero(&self, len: usize) -> (i64, Vec<Rat>) {
        if self.is_zero() {
            return (0, vec![Rat::zero(); len]);
        }
        let vn = self.num.valuation();
        let vd = self.den.valuation();
        let n: Vec<Rat> = self.num.coeffs()[vn..].to_vec();
        let d: Vec<Rat> = self.den.coeffs()[vd..].to_vec();
        (vn as i64 - vd as i64, series_div(&n, &d, len))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.fmt_var(var);
        }
        let n = self.num.fmt_var(var);
        let d = self.den.fmt_var(var);
        let nn = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({n})")
        } else {
            n
        };
        let dd = if self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || !self.den.lc().is_one()
            || self.den.deg() > 1
        {
            format!("({d})")
        } else {
            d
        };
        format!("{nn}/{dd}")
    }
}

/// Power series quotient `n/d` to `len` terms; requires `d[0] != 0`.
pub fn series_div(n: &[Rat], d: &[Rat], len: usize) -> Vec<Rat> {
    let inv = d[0].recip();
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.get(k).cloned().unwrap_or_else(Rat::zero);
        for j in 1..=k.min(d.len().saturating_sub(1)) {
            acc -= &d[j] * &out[k - j];
        }
        out.push(acc * &inv);
    }
    out
}

pub fn multiplicity(a: &Poly, p: &Poly) -> usize {
    if a.is_zero() || p.deg() == 0 {
        return 0;
    }
    let mut k = 0;
    let mut cur = a.clone();
    while let Some(q) = cur.div_exact(p) {
        cur = q;
        k += 1;
    }
    k
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            return RatFunc::reduced(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return RatFunc::zero();
        }
        let h = t.gcd(&g);
        let den = &d1 * &rhs.den;
        if h.is_one() {
            RatFunc::reduced(t, den)
        } else {
            RatFunc::reduced(
                t.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        RatFunc::reduced(
            &cut(&self.num, &g1) * &cut(&rhs.num, &g2),
            &cut(&self.den, &g2) * &cut(&rhs.den, &g1),
        )
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn normalizes() {
        let f = RatFunc::new(Poly::from_ints(&[-2, 2]), Poly::from_ints(&[-2, 0, 2]));
        assert_eq!(f.den(), &Poly::from_ints(&[1, 1]));
        assert_eq!(f.num(), &Poly::from_ints(&[1]));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let f = RatFunc::z().recip();
        assert_eq!(f.derivative(), -RatFunc::z().pow(-2));
    }

    #[test]
    fn infinity_substitution() {
        // (z + 2)/(z^2) at z = 1/w is w(1 + 2w)
        let f = RatFunc::new(Poly::from_ints(&[2, 1]), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(
            f.invert_variable(),
            RatFunc::poly(Poly::from_ints(&[0, 1, 2]))
        );
    }

    #[test]
    fn laurent() {
        // 1/(z(1-z)) = z^-1 (1 + z + z^2 + ...)
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[0, 1, -1]));
        let (v, c) = f.laurent_at_zero(4);
        assert_eq!(v, -1);
        assert_eq!(c, vec![int(1); 4]);
        let g = RatFunc::constant(rat(1, 2));
        assert_eq!(g.laurent_at_zero(2), (0, vec![rat(1, 2), int(0)]));
    }

    #[test]
    fn printing() {
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[-2, 2]));
        assert_eq!(f.to_string(), "1/2/(z - 1)");
        let g = RatFunc::new(Poly::from_ints(&[0, 3]), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(g.to_string(), "3*z/(z^2 + 1)");
    }
}
