//! Order-1 operators `D - a`: classification and closed-form solutions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::factor::poly_factor;
use crate::algebra::linalg::solve_affine;
use crate::algebra::partial::{partial_fractions, Place};
use crate::algebra::poly::Poly;
use crate::algebra::rat::{fmt_rat, int, to_i64, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::diffop::{op_mul, DiffOp};
use crate::error::{Error, Result};
use crate::local::{is_fuchsian, FuchsReport};

/// Name of the symbolic constant attached to solutions.
pub const DELTA: &str = "delta";

/// Formal `tag * scale * prod p_i^(s_i)`. The tag is a product of opaque
/// symbolic constants (never evaluated); `scale` is a known rational factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerProduct {
    pub tag: BTreeMap<String, i64>,
    pub scale: Rat,
    /// Monic irreducible bases, sorted, exponents non-zero.
    pub factors: Vec<(Poly, Rat)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct {
            tag: BTreeMap::new(),
            scale: Rat::one(),
            factors: Vec::new(),
        }
    }

    /// `delta * prod p^s`.
    pub fn tagged(factors: Vec<(Poly, Rat)>) -> Self {
        let mut tag = BTreeMap::new();
        tag.insert(DELTA.to_string(), 1);
        PowerProduct::canonical(tag, Rat::one(), factors)
    }

    pub fn untagged(factors: Vec<(Poly, Rat)>) -> Self {
        PowerProduct::canonical(BTreeMap::new(), Rat::one(), factors)
    }

    fn canonical(tag: BTreeMap<String, i64>, scale: Rat, factors: Vec<(Poly, Rat)>) -> Self {
        let mut m: BTreeMap<Poly, Rat> = BTreeMap::new();
        for (p, s) in factors {
            *m.entry(p).or_insert_with(Rat::zero) += s;
        }
        PowerProduct {
            tag: tag.into_iter().filter(|(_, e)| *e != 0).collect(),
            scale,
            factors: m.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    pub fn exponent(&self, p: &Poly) -> Rat {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Same factors and scale, ignoring the symbolic tag.
    pub fn same_function(&self, other: &PowerProduct) -> bool {
        self.factors == other.factors && self.scale == other.scale
    }

    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        if !pp_is_rational(self) {
            return None;
        }
        let mut num = Poly::constant(self.scale.clone());
        let mut den = Poly::one();
        for (p, s) in &self.factors {
            let k = to_i64(s)?;
            if k > 0 {
                num = &num * &p.pow(k as usize);
            } else {
                den = &den * &p.pow((-k) as usize);
            }
        }
        Some(RatFunc::new(num, den))
    }

    /// Text without the symbolic tag, e.g. `z^(1/2)*(z - 1)^(-1)`.
    pub fn body(&self) -> String {
        let mut parts = Vec::new();
        if !self.scale.is_one() || self.factors.is_empty() {
            parts.push(fmt_rat(&self.scale));
        }
        for (p, s) in &self.factors {
            let b = p.to_string();
            let b = if b.contains(' ') { format!("({b})") } else { b };
            if s.is_one() {
                parts.push(b);
            } else if s.is_integer() && s.is_positive() {
                parts.push(format!("{b}^{s}"));
            } else {
                parts.push(format!("{b}^({})", fmt_rat(s)));
            }
        }
        parts.join("*")
    }

    pub fn tag_string(&self) -> String {
        self.tag
            .iter()
            .map(|(k, e)| {
                if *e == 1 {
                    k.clone()
                } else {
                    format!("{k}^({e})")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag.is_empty() {
            f.write_str(&self.body())
        } else {
            write!(f, "{}*{}", self.tag_string(), self.body())
        }
    }
}

pub fn pp_log_derivative(p: &PowerProduct) -> RatFunc {
    p.factors.iter().fold(RatFunc::zero(), |acc, (q, s)| {
        &acc + &RatFunc::new(q.derivative().scale(s), q.clone())
    })
}

pub fn pp_mul(p: &PowerProduct, q: &PowerProduct) -> PowerProduct {
    let mut tag = p.tag.clone();
    for (k, e) in &q.tag {
        *tag.entry(k.clone()).or_insert(0) += e;
    }
    let factors = p.factors.iter().chain(&q.factors).cloned().collect();
    PowerProduct::canonical(tag, &p.scale * &q.scale, factors)
}

pub fn pp_inverse(p: &PowerProduct) -> PowerProduct {
    PowerProduct {
        tag: p.tag.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        scale: p.scale.recip(),
        factors: p.factors.iter().map(|(q, s)| (q.clone(), -s)).collect(),
    }
}

pub fn pp_is_rational(p: &PowerProduct) -> bool {
    p.factors.iter().all(|(_, s)| s.is_integer())
}

/// A non-zero rational function as an untagged power product.
pub fn pp_from_ratfunc(f: &RatFunc) -> Result<PowerProduct> {
    let n = poly_factor(f.num())?;
    let d = poly_factor(f.den())?;
    let factors = n
        .factors
        .into_iter()
        .map(|(p, m)| (p, int(m as i64)))
        .chain(d.factors.into_iter().map(|(p, m)| (p, int(-(m as i64)))))
        .collect();
    Ok(PowerProduct::canonical(
        BTreeMap::new(),
        n.lead / d.lead,
        factors,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order1Verdict {
    pub is_g_operator: bool,
    pub solution: Option<PowerProduct>,
    pub failure: Option<FuchsReport>,
}

/// Residue of `f` at the finite place `p`, as an element of `Q[z]/(p)`.
pub fn residue_at(f: &RatFunc, p: &Poly) -> Poly {
    let pf = partial_fractions(f);
    let inv = p.derivative().inv_mod(p).expect("separable");
    (&pf.simple_part(p) * &inv).rem(p)
}

/// `D - a` is a G-operator exactly when it is fuchsian with rational
/// exponents; then its solutions are `delta * prod p^(res_p a)`.
pub fn classify_order1(a: &RatFunc) -> Order1Verdict {
    let rep = is_fuchsian(&DiffOp::first_order(a)).expect("order 1");
    if !rep.is_fuchsian {
        return Order1Verdict {
            is_g_operator: false,
            solution: None,
            failure: Some(rep),
        };
    }
    let mut factors = Vec::new();
    for data in &rep.places {
        let Place::Finite(p) = &data.place else {
            continue;
        };
        let r = residue_at(a, p);
        if !r.is_constant() {
            return Order1Verdict {
                is_g_operator: false,
                solution: None,
                failure: Some(rep),
            };
        }
        factors.push((p.clone(), r.constant_term()));
    }
    let sol = PowerProduct::tagged(factors);
    debug_assert_eq!(&pp_log_derivative(&sol), a);
    Order1Verdict {
        is_g_operator: true,
        solution: Some(sol),
        failure: None,
    }
}

/// `classify_order1` for a first-order operator in any normalization.
pub fn classify_order1_op(l: &DiffOp) -> Result<Order1Verdict> {
    if l.order() != 1 {
        return Err(Error::WrongOrder {
            expected: "1".into(),
            found: l.order(),
        });
    }
    let m = l.monic();
    Ok(classify_order1(&-&m.coeff(0)))
}

/// Rational `f` with `f' - a f = b`, if one exists.
///
/// Poles of `f` lie among the poles of `a` and `b`; at a place `p` the pole
/// order is at most `max(ord_p b, -res_p a)` (the latter when it is a
/// positive integer). At infinity the degree is bounded the same way from
/// the degrees of `a` and `b`. The numerator is then found by a linear solve.
pub fn rational_solution(a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
    if b.is_zero() {
        return Some(RatFunc::zero());
    }
    let mut places: Vec<Poly> = Vec::new();
    for f in [a.den(), b.den()] {
        if f.deg() > 0 {
            for (p, _) in poly_factor(f).expect("non-zero").factors {
                if !places.contains(&p) {
                    places.push(p);
                }
            }
        }
    }
    let mut den = Poly::one();
    for p in &places {
        let mut k = b.pole_order(p) as i64;
        if a.pole_order(p) == 1 {
            let r = residue_at(a, p);
            if r.is_constant() {
                let c = -r.constant_term();
                if c.is_integer() && c.is_positive() {
                    k = k.max(to_i64(&c).unwrap_or(0));
                }
            }
        }
        den = &den * &p.pow(k as usize);
    }
    let beta = b.degree().unwrap();
    let mut delta = (beta + 1).max(0);
    if let Some(alpha) = a.degree() {
        delta = delta.max(beta - alpha);
        if alpha == -1 {
            // a ~ c/z at infinity
            let c = a.num().lc() / a.den().lc();
            if c.is_integer() {
                delta = delta.max(to_i64(&c).unwrap_or(0));
            }
        }
    }
    let top = den.deg() as i64 + delta;
    if top < 0 {
        return None;
    }
    let cols = (top + 1) as usize;
    let op = DiffOp::first_order(a);
    let basis: Vec<RatFunc> = (0..cols)
        .map(|j| op.apply_ratfunc(&RatFunc::new(Poly::monomial(Rat::one(), j), den.clone())))
        .collect();
    let common = basis
        .iter()
        .chain(std::iter::once(b))
        .fold(Poly::one(), |acc, f| acc.lcm(f.den()));
    let cpoly = RatFunc::poly(common);
    let polys: Vec<Poly> = basis.iter().map(|f| (f * &cpoly).num().clone()).collect();
    let rhs = (b * &cpoly).num().clone();
    let rows = polys
        .iter()
        .map(|p| p.coeffs().len())
        .chain(std::iter::once(rhs.coeffs().len()))
        .max()
        .unwrap_or(0);
    let m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| polys.iter().map(|p| p.coeff(r)).collect())
        .collect();
    let rv: Vec<Rat> = (0..rows).map(|r| rhs.coeff(r)).collect();
    let x = solve_affine(&m, &rv, cols)?;
    let f = RatFunc::new(Poly::new(x), den);
    let check = &op.apply_ratfunc(&f) - b;
    check.is_zero().then_some(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomResult {
    pub l2: DiffOp,
    pub g: PowerProduct,
    pub integrand: PowerProduct,
    pub rationality_flag: bool,
    pub rational_solution: Option<RatFunc>,
}

/// Structure of `f' = a f + b`: `f = g * integral(b/g)` with `g` solving
/// `D - a`, and `f` annihilated by `(D - b'/b)(D - a)`.
pub fn solve_inhomogeneous(a: &RatFunc, b: &RatFunc) -> Result<InhomResult> {
    if b.is_zero() {
        return Err(Error::Domain("b must be non-zero".into()));
    }
    let v = classify_order1(a);
    let Some(g) = v.solution else {
        let rep = v.failure.expect("failure present");
        let why = match rep.offending.first() {
            Some(o) => format!("irregular at {}", o.place),
            None => "exponents not rational".to_string(),
        };
        return Err(Error::NotOrder1G(why));
    };
    let left = DiffOp::first_order(&(&b.derivative() / b));
    let l2 = op_mul(&left, &DiffOp::first_order(a));
    let integrand = pp_mul(&pp_from_ratfunc(b)?, &pp_inverse(&g));
    let sol = rational_solution(a, b);
    Ok(InhomResult {
        l2,
        g,
        integrand,
        rationality_flag: sol.is_some(),
        rational_solution: sol,
    })
}
