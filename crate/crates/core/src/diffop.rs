//! The Ore algebra Q(z)[D] with `D r = r D + r'`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::rat::{binomial, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::Poly;

/// `sum coeffs[i] * D^i`. Trailing zero coefficients are trimmed, so the
/// zero operator has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DiffOp::from_ratfunc(RatFunc::one())
    }

    /// The derivation `D`.
    pub fn d() -> Self {
        DiffOp::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// `D^k`.
    pub fn d_pow(k: usize) -> Self {
        let mut c = vec![RatFunc::zero(); k + 1];
        c[k] = RatFunc::one();
        DiffOp::new(c)
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        DiffOp::new(vec![r])
    }

    /// `D - a`.
    pub fn first_order(a: &RatFunc) -> Self {
        DiffOp::new(vec![-a, RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with a non-zero coefficient; zero for the zero operator.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Left multiplication by a non-zero `r`.
    pub fn scale(&self, r: &RatFunc) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> DiffOp {
        if self.is_zero() {
            return DiffOp::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// `L(f)` for a rational function `f`.
    pub fn apply_ratfunc(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut d = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = d.derivative();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// `L(y)/y` for any `y` with logarithmic derivative `ell`.
    pub fn apply_log_derivative(&self, ell: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut u = RatFunc::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                u = &u.derivative() + &(&u * ell);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &u);
            }
        }
        acc
    }

    /// The operator obtained by the substitution `z = 1/w`, written in `w`
    /// (which prints as `z`). `D_z` becomes `-w^2 D_w`.
    pub fn at_infinity(&self) -> DiffOp {
        let theta = DiffOp::new(vec![
            RatFunc::zero(),
            RatFunc::poly(Poly::monomial(-Rat::one(), 2)),
        ]);
        let mut power = DiffOp::one();
        let mut acc = DiffOp::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = op_mul(&theta, &power);
            }
            if !c.is_zero() {
                acc = &acc + &power.scale(&c.invert_variable());
            }
        }
        acc
    }

    fn fmt_term(c: &RatFunc, k: usize) -> (bool, String) {
        let single = c.num().coeffs().iter().filter(|x| !x.is_zero()).count() == 1;
        let (neg, c) = if single && c.num().lc() < Rat::zero() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let dk = match k {
            0 => String::new(),
            1 => "D".to_string(),
            _ => format!("D^{k}"),
        };
        let body = if k == 0 {
            c.to_string()
        } else if c.is_one() {
            dk
        } else if single {
            format!("{c}*{dk}")
        } else {
            format!("({c})*{dk}")
        };
        (neg, body)
    }
}

/// Composition `(M N) f = M(N f)`.
pub fn op_mul(m: &DiffOp, n: &DiffOp) -> DiffOp {
    if m.is_zero() || n.is_zero() {
        return DiffOp::zero();
    }
    let om = m.order();
    // derivs[j][k] = k-th derivative of n_j
    let derivs: Vec<Vec<RatFunc>> = n
        .coeffs
        .iter()
        .map(|c| {
            let mut v = vec![c.clone()];
            for k in 1..=om {
                let next = if c.is_zero() {
                    RatFunc::zero()
                } else {
                    v[k - 1].derivative()
                };
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = vec![RatFunc::zero(); om + n.order() + 1];
    for (i, mi) in m.coeffs.iter().enumerate() {
        if mi.is_zero() {
            continue;
        }
        for (j, dj) in derivs.iter().enumerate() {
            // D^i n_j = sum_k C(i,k) n_j^(k) D^(i-k)
            for k in 0..=i {
                if dj[k].is_zero() {
                    continue;
                }
                let b = Rat::from_integer(binomial(i, k));
                let t = (mi * &dj[k]).scale(&b);
                let slot = &mut out[i - k + j];
                *slot = &*slot + &t;
            }
        }
    }
    DiffOp::new(out)
}

/// Euclidean right division: `L = Q R + rem` with `order(rem) < order(R)`.
pub fn op_rdiv(l: &DiffOp, r: &DiffOp) -> Result<(DiffOp, DiffOp)> {
    if r.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let or = r.order();
    let inv = r.lc().recip();
    let mut q = vec![RatFunc::zero(); l.order().saturating_sub(or) + 1];
    let mut rem = l.clone();
    while !rem.is_zero() && rem.order() >= or {
        let k = rem.order() - or;
        let c = &rem.lc() * &inv;
        let mut t = vec![RatFunc::zero(); k + 1];
        t[k] = c.clone();
        let t = DiffOp::new(t);
        rem = &rem - &op_mul(&t, r);
        q[k] = &q[k] + &c;
    }
    Ok((DiffOp::new(q), rem))
}

/// Monic greatest common right divisor.
pub fn gcrd(l: &DiffOp, m: &DiffOp) -> Result<DiffOp> {
    if l.is_zero() && m.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let (mut a, mut b) = (l.clone(), m.clone());
    while !b.is_zero() {
        let (_, r) = op_rdiv(&a, &b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// First-order system `Y' = A Y` for `Y = (y, y', ..., y^(n-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionSystem {
    pub a: Vec<Vec<RatFunc>>,
}

impl CompanionSystem {
    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Scalar `1x1` system `[a]`.
    pub fn scalar(a: RatFunc) -> Self {
        CompanionSystem { a: vec![vec![a]] }
    }
}

pub fn companion(l: &DiffOp) -> Result<CompanionSystem> {
    if l.is_zero() || l.order() == 0 {
        return Err(Error::WrongOrder {
            expected: "at least 1".into(),
            found: l.order(),
        });
    }
    let n = l.order();
    let m = l.monic();
    let mut a = vec![vec![RatFunc::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = RatFunc::one();
    }
    for (j, x) in a[n - 1].iter_mut().enumerate() {
        *x = -m.coeff(j);
    }
    Ok(CompanionSystem { a })
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let (neg, body) = DiffOp::fmt_term(c, k);
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    fn inv_z_plus(l: i64) -> RatFunc {
        rf(&[1], &[l, 1])
    }

    #[test]
    fn classical_factorization() {
        for l in [0, 1, 5] {
            let a = inv_z_plus(l);
            let p = op_mul(&DiffOp::first_order(&-&a), &DiffOp::first_order(&a));
            assert_eq!(p, DiffOp::d_pow(2));
            // the order with the factors swapped
            let q = op_mul(&DiffOp::first_order(&a), &DiffOp::first_order(&-&a));
            let expect = DiffOp::new(vec![
                (&a * &a).scale(&int(-2)),
                RatFunc::zero(),
                RatFunc::one(),
            ]);
            assert_eq!(q, expect);
        }
    }

    #[test]
    fn leibniz() {
        let p = op_mul(&DiffOp::d(), &DiffOp::from_ratfunc(RatFunc::z()));
        assert_eq!(p, DiffOp::new(vec![RatFunc::one(), RatFunc::z()]));
        let l = DiffOp::new(vec![rf(&[1], &[0, 1]), RatFunc::z()]);
        assert_eq!(op_mul(&DiffOp::one(), &l), l);
    }

    #[test]
    fn right_division_examples() {
        let d2 = DiffOp::d_pow(2);
        let half = rf(&[1], &[0, 2]);
        let r = DiffOp::first_order(&half);
        let (q, rem) = op_rdiv(&d2, &r).unwrap();
        assert_eq!(q, DiffOp::first_order(&-&half));
        // z^(1/2) is killed by R, and D^2 z^(1/2) = -z^(-3/2)/4
        assert_eq!(rem, DiffOp::from_ratfunc(rf(&[-1], &[0, 0, 4])));
        assert_eq!(&op_mul(&q, &r) + &rem, d2);

        let r = DiffOp::first_order(&rf(&[1], &[0, 1]));
        let (q, rem) = op_rdiv(&d2, &r).unwrap();
        assert_eq!(q, DiffOp::first_order(&rf(&[-1], &[0, 1])));
        assert!(rem.is_zero());

        let (q, rem) = op_rdiv(&r, &r).unwrap();
        assert_eq!(q, DiffOp::one());
        assert!(rem.is_zero());
        assert!(op_rdiv(&r, &DiffOp::zero()).is_err());
    }

    #[test]
    fn gcrd_examples() {
        let r1 = DiffOp::first_order(&rf(&[1], &[0, 1]));
        let r2 = DiffOp::first_order(&rf(&[2], &[0, 1]));
        assert_eq!(gcrd(&DiffOp::d_pow(2), &r1).unwrap(), r1);
        assert_eq!(gcrd(&r1.scale(&RatFunc::z()), &r1).unwrap(), r1);
        assert_eq!(gcrd(&r1, &r2).unwrap(), DiffOp::one());
        assert!(gcrd(&DiffOp::zero(), &DiffOp::zero()).is_err());
    }

    #[test]
    fn companion_examples() {
        let a = rf(&[1], &[0, 3]);
        assert_eq!(
            companion(&DiffOp::first_order(&a)).unwrap(),
            CompanionSystem::scalar(a)
        );
        let c = companion(&DiffOp::d_pow(2)).unwrap();
        assert_eq!(c.a[0], vec![RatFunc::zero(), RatFunc::one()]);
        assert_eq!(c.a[1], vec![RatFunc::zero(), RatFunc::zero()]);
        let euler = DiffOp::new(vec![
            RatFunc::constant(rat(2, 9)),
            RatFunc::zero(),
            rf(&[0, 0, 1], &[1]),
        ]);
        let c = companion(&euler).unwrap();
        assert_eq!(c.a[1][0], rf(&[-2], &[0, 0, 9]));
        assert!(companion(&DiffOp::one()).is_err());
    }

    #[test]
    fn infinity_transport() {
        // D^2 - D at z = 1/w: w^4 D^2 + 2 w^3 D + w^2 D
        let l = &DiffOp::d_pow(2) - &DiffOp::d();
        let li = l.at_infinity();
        assert_eq!(li.coeff(2), rf(&[0, 0, 0, 0, 1], &[1]));
        assert_eq!(li.coeff(1), rf(&[0, 0, 1, 2], &[1]));
    }

    #[test]
    fn log_derivative_application() {
        // z^(1/3) under z^2 D^2 + 2/9
        let euler = DiffOp::new(vec![
            RatFunc::constant(rat(2, 9)),
            RatFunc::zero(),
            rf(&[0, 0, 1], &[1]),
        ]);
        assert!(euler.apply_log_derivative(&rf(&[1], &[0, 3])).is_zero());
        assert!(DiffOp::d_pow(2).apply_ratfunc(&RatFunc::z()).is_zero());
    }

    #[test]
    fn display() {
        let l = DiffOp::new(vec![
            RatFunc::constant(rat(-1, 4)),
            rf(&[1, -2], &[1]),
            rf(&[0, 1, -1], &[1]),
        ]);
        assert_eq!(l.to_string(), "(-z^2 + z)*D^2 + (-2*z + 1)*D - 1/4");
        let m = DiffOp::new(vec![RatFunc::zero(), rf(&[1], &[0, 1]), RatFunc::one()]);
        assert_eq!(m.to_string(), "D^2 + 1/z*D");
    }
}
