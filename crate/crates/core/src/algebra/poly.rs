//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, int, Rat};

/// Polynomial in one variable with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `z^i`. The highest stored coefficient
/// is non-zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rat, n: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// `z - c`.
    pub fn linear(c: Rat) -> Self {
        Poly::new(vec![-c, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Multiplicity of `z` as a factor.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(q(z))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(z + c)`.
    pub fn taylor_shift(&self, c: &Rat) -> Poly {
        self.compose(&Poly::new(vec![c.clone(), Rat::one()]))
    }

    /// `z^n self(1/z)` with `n = deg self`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.degree().is_none_or(|n| n < dd) {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.deg() == 0 || other.deg() == 0 {
            return Poly::one();
        }
        let (a, b) = if self.deg() >= other.deg() {
            (self.primitive_integer(), other.primitive_integer())
        } else {
            (other.primitive_integer(), self.primitive_integer())
        };
        let g = super::modgcd::gcd_z(&a, &b).unwrap_or_else(|| primitive_prs(a, b));
        Poly::from_big_ints(&g).monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g`
    /// monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, when they are coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Primitive integer polynomial with positive leading coefficient that
    /// is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.denominator_lcm();
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        for c in ints.iter_mut() {
            *c /= &g;
        }
        if ints.last().is_some_and(Signed::is_negative) {
            for c in ints.iter_mut() {
                *c = -c.clone();
            }
        }
        ints
    }

    pub fn from_big_ints(cs: &[BigInt]) -> Poly {
        Poly::new(cs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Renders with a chosen variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rat(&a), mono));
            }
        }
        out
    }
}

/// Canonical ordering: by degree, then coefficient by coefficient from the
/// top, smaller magnitude first and negative before positive on ties.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let o = a.abs().cmp(&b.abs()).then_with(|| a.cmp(b));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("z"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Primitive part of an integer polynomial, trailing zeros removed.
fn primitive_part(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in c.iter_mut() {
            *x /= &g;
        }
    }
    c
}

/// Euclid over Z[z] with content removal at every step; `deg a >= deg b`.
fn primitive_prs(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    while !b.is_empty() {
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut r = a;
        while r.len() > db {
            let k = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            let g = lr.gcd(&lb);
            let (mr, mb) = (&lb / &g, &lr / &g);
            for x in r.iter_mut() {
                *x *= &mr;
            }
            for (i, y) in b.iter().enumerate() {
                r[k + i] -= &mb * y;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        a = b;
        b = primitive_part(r);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::sample;
    use rand::SeedableRng;

    #[test]
    fn modular_gcd_matches_prs() {
        let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let f = sample::nonzero_poly(&mut g, 4);
            let a = &f * &sample::nonzero_poly(&mut g, 5);
            let b = &f * &sample::nonzero_poly(&mut g, 5);
            if a.deg() == 0 || b.deg() == 0 {
                continue;
            }
            let (pa, pb) = (a.primitive_integer(), b.primitive_integer());
            let (hi, lo) = if pa.len() >= pb.len() {
                (pa, pb)
            } else {
                (pb, pa)
            };
            let prs = Poly::from_big_ints(&primitive_prs(hi, lo)).monic();
            let gcd = a.gcd(&b);
            assert_eq!(gcd, prs);
            assert!(gcd.divides(&a) && gcd.divides(&b) && f.monic().divides(&gcd));
        }
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[1, 2, 3, 4]);
        let b = Poly::from_ints(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_and_inverse() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let m = Poly::from_ints(&[1, 0, 1]);
        let inv = Poly::z().inv_mod(&m).unwrap();
        assert_eq!((&inv * &Poly::z()).rem(&m), Poly::one());
    }

    #[test]
    fn printing() {
        let p = Poly::new(vec![rat(1, 2), int(-3), int(2)]);
        assert_eq!(p.to_string(), "2*z^2 - 3*z + 1/2");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-z");
    }

    #[test]
    fn primitive_integer_form() {
        let p = Poly::new(vec![rat(-1, 2), rat(-1, 3)]);
        assert_eq!(
            p.primitive_integer(),
            vec![BigInt::from(3), BigInt::from(2)]
        );
    }
}
