//! Order-2 operators: normal form, Kovacic's cases, and the dichotomy
//! between an algebraic basis and solutions `g * integral(h)`.
//!
//! Works over Q with places: a pole at an irreducible `p` of degree > 1
//! stands for all its conjugate roots, which receive the same choice in
//! Cases 1 and 2 so that the resulting `omega` stays in Q(z). Poles of
//! order >= 4 at such places are not searched (`incomplete` is set).

use num_traits::{One, Signed, Zero};

use crate::algebra::factor::poly_factor;
use crate::algebra::linalg::solve_affine;
use crate::algebra::partial::Place;
use crate::algebra::poly::Poly;
use crate::algebra::rat::{int, rat_sqrt, to_i64, Rat};
use crate::algebra::ratfunc::{multiplicity, RatFunc};
use crate::diffop::{op_rdiv, DiffOp};
use crate::error::{Error, Result};
use crate::local::is_fuchsian;
use crate::order1::{
    classify_order1, pp_from_ratfunc, pp_inverse, pp_log_derivative, pp_mul, rational_solution,
    PowerProduct,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// `exp(-1/2 integral p)` as a power product.
    PowerProduct(PowerProduct),
    /// Logarithmic derivative `-p/2` of the gauge factor, when it is not a
    /// power product.
    Raw(RatFunc),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub r: RatFunc,
    pub p: RatFunc,
    pub gauge: Gauge,
}

fn require_order2(l: &DiffOp) -> Result<()> {
    if l.order() != 2 {
        return Err(Error::WrongOrder {
            expected: "2".into(),
            found: l.order(),
        });
    }
    Ok(())
}

/// `y = u exp(-1/2 integral p)` turns `D^2 + p D + q` into `u'' = r u` with
/// `r = p^2/4 + p'/2 - q`.
pub fn normal_form(l: &DiffOp) -> Result<NormalForm> {
    require_order2(l)?;
    let m = l.monic();
    let p = m.coeff(1);
    let q = m.coeff(0);
    let quarter = Rat::new(1.into(), 4.into());
    let half = Rat::new(1.into(), 2.into());
    let r = &(&(&p * &p).scale(&quarter) + &p.derivative().scale(&half)) - &q;
    let ell = p.scale(&-half);
    let v = classify_order1(&ell);
    let gauge = match v.solution {
        Some(s) => Gauge::PowerProduct(PowerProduct::untagged(s.factors)),
        None => Gauge::Raw(ell),
    };
    Ok(NormalForm { r, p, gauge })
}

/// Pole of `r` at a finite place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pole {
    pub place: Poly,
    pub order: usize,
}

fn finite_poles(r: &RatFunc) -> Vec<Pole> {
    if r.den().deg() == 0 {
        return Vec::new();
    }
    poly_factor(r.den())
        .expect("non-zero")
        .factors
        .into_iter()
        .map(|(p, m)| Pole {
            place: p,
            order: m as usize,
        })
        .collect()
}

/// `deg den - deg num`, `None` for `r = 0`.
fn order_at_infinity(r: &RatFunc) -> Option<i64> {
    r.degree().map(|d| -d)
}

/// Coefficient `b` of `r ~ b/(z - t)^2` at a double pole, in `Q[z]/(p)`.
fn double_pole_coefficient(r: &RatFunc, p: &Poly) -> Poly {
    let v = multiplicity(r.den(), p);
    debug_assert_eq!(v, 2);
    let rest = r.den().div_exact(&p.pow(2)).expect("divides");
    let dp = p.derivative().pow(2);
    let inv = (&rest * &dp).rem(p).inv_mod(p).expect("coprime");
    (r.num() * &inv).rem(p)
}

/// Coefficient of `z^-2` at infinity when the order there is at least 2.
fn infinity_coefficient(r: &RatFunc) -> Rat {
    match order_at_infinity(r) {
        Some(2) => r.num().lc() / r.den().lc(),
        _ => Rat::zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleDiagnostic {
    pub place: Place,
    /// Pole order at a finite place; order of vanishing at infinity
    /// (`None` when `r = 0`).
    pub order: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseConditions {
    pub feasible: Vec<u8>,
    pub poles: Vec<PoleDiagnostic>,
}

/// Cases not excluded by the pole orders of `r` and its order at infinity.
pub fn case_conditions(r: &RatFunc) -> CaseConditions {
    let poles = finite_poles(r);
    let inf = order_at_infinity(r);
    let mut diag: Vec<PoleDiagnostic> = poles
        .iter()
        .map(|p| PoleDiagnostic {
            place: Place::Finite(p.place.clone()),
            order: Some(p.order as i64),
        })
        .collect();
    diag.push(PoleDiagnostic {
        place: Place::Infinity,
        order: inf,
    });
    let mut feasible = Vec::new();
    let c1_poles = poles.iter().all(|p| p.order == 1 || p.order % 2 == 0);
    let c1_inf = inf.is_none_or(|o| o % 2 == 0 || o > 2);
    if c1_poles && c1_inf {
        feasible.push(1);
    }
    if poles
        .iter()
        .any(|p| p.order == 2 || (p.order % 2 == 1 && p.order > 2))
    {
        feasible.push(2);
    }
    if !poles.is_empty() && poles.iter().all(|p| p.order <= 2) && inf.is_none_or(|o| o >= 2) {
        feasible.push(3);
    }
    CaseConditions {
        feasible,
        poles: diag,
    }
}

/// Square root of a power series with a non-zero rational-square constant
/// term, to `len` terms.
fn series_sqrt(c: &[Rat], len: usize) -> Option<Vec<Rat>> {
    let s0 = rat_sqrt(&c[0])?;
    let two_s0 = &s0 * int(2);
    let mut s = vec![s0];
    for k in 1..len {
        let mut acc = c.get(k).cloned().unwrap_or_else(Rat::zero);
        for i in 1..k {
            acc -= &s[i] * &s[k - i];
        }
        s.push(acc / &two_s0);
    }
    Some(s)
}

/// One choice at a pole: the signed square-root part and the exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Choice {
    sqrt_part: RatFunc,
    alpha: Rat,
}

fn dedup(v: Vec<Choice>) -> Vec<Choice> {
    let mut out: Vec<Choice> = Vec::new();
    for c in v {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn double_pole_alphas(b: &Rat) -> Option<Vec<Rat>> {
    let s = rat_sqrt(&(int(1) + b * int(4)))?;
    let half = Rat::new(1.into(), 2.into());
    Some(vec![&half + &s * &half, &half - &s * &half])
}

/// Case-1 options at a finite pole; `None` when the pole contributes no
/// rational candidates.
fn case1_choices_finite(r: &RatFunc, pole: &Pole, incomplete: &mut bool) -> Option<Vec<Choice>> {
    let p = &pole.place;
    match pole.order {
        1 => Some(vec![Choice {
            sqrt_part: RatFunc::zero(),
            alpha: int(1),
        }]),
        2 => {
            let b = double_pole_coefficient(r, p);
            if !b.is_constant() {
                *incomplete = true;
                return None;
            }
            let alphas = double_pole_alphas(&b.constant_term())?;
            Some(dedup(
                alphas
                    .into_iter()
                    .map(|alpha| Choice {
                        sqrt_part: RatFunc::zero(),
                        alpha,
                    })
                    .collect(),
            ))
        }
        o if o % 2 == 0 => {
            if p.deg() != 1 {
                *incomplete = true;
                return None;
            }
            let nu = o / 2;
            let c = -p.constant_term();
            let (v, coeffs) = r.taylor_shift(&c).laurent_at_zero(nu + 1);
            debug_assert_eq!(v, -(o as i64));
            let s = series_sqrt(&coeffs, nu)?;
            let mut sq = RatFunc::zero();
            for (i, si) in s.iter().enumerate().take(nu - 1) {
                sq = &sq + &RatFunc::over_power(si.clone(), p, nu - i);
            }
            let nu_half = Rat::new((nu as i64).into(), 2.into());
            let t = s[nu - 1].clone();
            Some(dedup(vec![
                Choice {
                    sqrt_part: sq.clone(),
                    alpha: &nu_half + &t,
                },
                Choice {
                    sqrt_part: -sq,
                    alpha: &nu_half - &t,
                },
            ]))
        }
        _ => None,
    }
}

fn case1_choices_infinity(r: &RatFunc) -> Option<Vec<Choice>> {
    let Some(o) = order_at_infinity(r) else {
        return Some(vec![
            Choice {
                sqrt_part: RatFunc::zero(),
                alpha: int(0),
            },
            Choice {
                sqrt_part: RatFunc::zero(),
                alpha: int(1),
            },
        ]);
    };
    if o > 2 {
        return Some(vec![
            Choice {
                sqrt_part: RatFunc::zero(),
                alpha: int(0),
            },
            Choice {
                sqrt_part: RatFunc::zero(),
                alpha: int(1),
            },
        ]);
    }
    if o == 2 {
        let alphas = double_pole_alphas(&infinity_coefficient(r))?;
        return Some(dedup(
            alphas
                .into_iter()
                .map(|alpha| Choice {
                    sqrt_part: RatFunc::zero(),
                    alpha,
                })
                .collect(),
        ));
    }
    if o % 2 != 0 {
        return None;
    }
    let nu = (-o) as usize;
    let nu = nu / 2;
    let (v, coeffs) = r.invert_variable().laurent_at_zero(nu + 2);
    debug_assert_eq!(v, o);
    let s = series_sqrt(&coeffs, nu + 2)?;
    let sq = RatFunc::poly(Poly::new((0..=nu).map(|k| s[nu - k].clone()).collect()));
    let nu_half = Rat::new((nu as i64).into(), 2.into());
    let t = s[nu + 1].clone();
    Some(dedup(vec![
        Choice {
            sqrt_part: sq.clone(),
            alpha: &t - &nu_half,
        },
        Choice {
            sqrt_part: -sq,
            alpha: -&t - &nu_half,
        },
    ]))
}

/// Monic `P` of degree `d` with `sum coeffs[i] P^(i) = 0`.
pub fn monic_poly_solution(coeffs: &[RatFunc], d: usize) -> Option<Poly> {
    let apply = |p: &Poly| -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut dp = p.clone();
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                dp = dp.derivative();
            }
            if !c.is_zero() && !dp.is_zero() {
                acc = &acc + &(c * &RatFunc::poly(dp.clone()));
            }
        }
        acc
    };
    let cols: Vec<RatFunc> = (0..d)
        .map(|j| apply(&Poly::monomial(Rat::one(), j)))
        .collect();
    let lead = apply(&Poly::monomial(Rat::one(), d));
    let common = cols
        .iter()
        .chain(std::iter::once(&lead))
        .fold(Poly::one(), |acc, f| acc.lcm(f.den()));
    let cp = RatFunc::poly(common);
    let polys: Vec<Poly> = cols.iter().map(|f| (f * &cp).num().clone()).collect();
    let rhs = -(&lead * &cp).num();
    let rows = polys
        .iter()
        .map(|p| p.coeffs().len())
        .chain(std::iter::once(rhs.coeffs().len()))
        .max()
        .unwrap_or(0);
    let m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| polys.iter().map(|p| p.coeff(r)).collect())
        .collect();
    let b: Vec<Rat> = (0..rows).map(|r| rhs.coeff(r)).collect();
    let mut x = solve_affine(&m, &b, d)?;
    x.push(Rat::one());
    let p = Poly::new(x);
    apply(&p).is_zero().then_some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case1Cert {
    pub omega: RatFunc,
    pub p: Poly,
}

/// `omega' + omega^2 + 2 (P'/P) omega + P''/P = r`.
pub fn case1_certificate_holds(r: &RatFunc, c: &Case1Cert) -> bool {
    let pf = RatFunc::poly(c.p.clone());
    let w = &c.omega;
    let lhs = &(&(&w.derivative() + &(w * w))
        + &(&(&RatFunc::poly(c.p.derivative()) / &pf) * w).scale(&int(2)))
        + &(&RatFunc::poly(c.p.derivative().derivative()) / &pf);
    &lhs == r
}

/// Product of option lists, in lexicographic order of indices.
fn families(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        let mut next = Vec::with_capacity(out.len() * n);
        for f in &out {
            for i in 0..n {
                let mut g = f.clone();
                g.push(i);
                next.push(g);
            }
        }
        out = next;
    }
    out
}

fn case1_search_inner(r: &RatFunc, incomplete: &mut bool) -> Option<Case1Cert> {
    let poles = finite_poles(r);
    let mut opts: Vec<Vec<Choice>> = Vec::new();
    for pole in &poles {
        opts.push(case1_choices_finite(r, pole, incomplete)?);
    }
    let inf = case1_choices_infinity(r)?;
    let sizes: Vec<usize> = opts.iter().map(|o| o.len()).chain([inf.len()]).collect();
    // key: (d, finite places with negative exponent, weighted exponent sum)
    let mut best: Option<((i64, usize, Rat), Case1Cert)> = None;
    for fam in families(&sizes) {
        let ci = &inf[fam[poles.len()]];
        let mut d = ci.alpha.clone();
        let mut omega = ci.sqrt_part.clone();
        let mut negatives = 0;
        let mut weighted = Rat::zero();
        for ((pole, o), &k) in poles.iter().zip(&opts).zip(&fam) {
            let c = &o[k];
            let deg = int(pole.place.deg() as i64);
            d -= &c.alpha * &deg;
            weighted += &c.alpha * &deg;
            if c.alpha.is_negative() {
                negatives += 1;
            }
            omega = &(&omega + &c.sqrt_part)
                + &RatFunc::new(pole.place.derivative().scale(&c.alpha), pole.place.clone());
        }
        let Some(d) = to_i64(&d).filter(|d| *d >= 0) else {
            continue;
        };
        let key = (d, negatives, weighted);
        if best.as_ref().is_some_and(|(k, _)| k <= &key) {
            continue;
        }
        let coeffs = [
            &(&omega.derivative() + &(&omega * &omega)) - r,
            omega.scale(&int(2)),
            RatFunc::one(),
        ];
        if let Some(p) = monic_poly_solution(&coeffs, d as usize) {
            best = Some((key, Case1Cert { omega, p }));
        }
    }
    best.map(|(_, c)| c)
}

/// Kovacic Case 1: `u = P exp(integral omega)` solving `u'' = r u`.
pub fn case1_search(r: &RatFunc) -> Option<Case1Cert> {
    case1_search_inner(r, &mut false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Cert {
    pub theta: RatFunc,
    pub p: Poly,
    /// `phi = theta + P'/P`.
    pub phi: RatFunc,
}

/// `phi'' + 3 phi phi' + phi^3 = 4 r phi + 2 r'`.
pub fn case2_certificate_holds(r: &RatFunc, phi: &RatFunc) -> bool {
    let d1 = phi.derivative();
    let lhs = &(&d1.derivative() + &(phi * &d1).scale(&int(3))) + &(&(phi * phi) * phi);
    let rhs = &(r * phi).scale(&int(4)) + &r.derivative().scale(&int(2));
    lhs == rhs
}

/// Integer elements of `{c + k m s : k in ks}` where `s = sqrt(1 + 4 b)`; when
/// `s` is irrational only `k = 0` survives.
fn exponent_set(b: &Rat, c: i64, m: Rat, ks: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    let s = rat_sqrt(&(int(1) + b * int(4)));
    let mut out: Vec<i64> = Vec::new();
    for k in ks {
        let v = match &s {
            Some(s) => int(c) + &m * int(k) * s,
            None if k == 0 => int(c),
            None => continue,
        };
        if let Some(e) = to_i64(&v) {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

fn case2_sets(r: &RatFunc, incomplete: &mut bool) -> (Vec<Vec<i64>>, Vec<i64>) {
    let poles = finite_poles(r);
    let fin = poles
        .iter()
        .map(|pole| match pole.order {
            1 => vec![4],
            2 => {
                let b = double_pole_coefficient(r, &pole.place);
                if b.is_constant() {
                    exponent_set(&b.constant_term(), 2, int(2), -1..=1)
                } else {
                    *incomplete = true;
                    vec![2]
                }
            }
            o => vec![o as i64],
        })
        .collect();
    let inf = match order_at_infinity(r) {
        None => vec![0, 2, 4],
        Some(o) if o > 2 => vec![0, 2, 4],
        Some(2) => exponent_set(&infinity_coefficient(r), 2, int(2), -1..=1),
        Some(o) => vec![o],
    };
    (fin, inf)
}

fn case2_search_inner(r: &RatFunc, incomplete: &mut bool) -> Option<Case2Cert> {
    let poles = finite_poles(r);
    if poles.is_empty() {
        return None;
    }
    let (fin, inf) = case2_sets(r, incomplete);
    let sizes: Vec<usize> = fin.iter().map(|e| e.len()).chain([inf.len()]).collect();
    let mut cands: Vec<(i64, Vec<usize>)> = Vec::new();
    for fam in families(&sizes) {
        let mut twice_d = inf[fam[poles.len()]];
        for ((pole, e), &k) in poles.iter().zip(&fin).zip(&fam) {
            twice_d -= pole.place.deg() as i64 * e[k];
        }
        if twice_d >= 0 && twice_d % 2 == 0 {
            cands.push((twice_d / 2, fam));
        }
    }
    cands.sort();
    for (d, fam) in cands {
        let mut theta = RatFunc::zero();
        for ((pole, e), &k) in poles.iter().zip(&fin).zip(&fam) {
            let c = Rat::new(e[k].into(), 2.into());
            theta = &theta + &RatFunc::new(pole.place.derivative().scale(&c), pole.place.clone());
        }
        let t1 = theta.derivative();
        let t2 = t1.derivative();
        let three = int(3);
        let four = int(4);
        let coeffs = [
            &(&(&(&t2 + &(&theta * &t1).scale(&three)) + &(&(&theta * &theta) * &theta))
                - &(r * &theta).scale(&four))
                - &r.derivative().scale(&int(2)),
            &(&(&theta * &theta).scale(&three) + &t1.scale(&three)) - &r.scale(&four),
            theta.scale(&three),
            RatFunc::one(),
        ];
        if let Some(p) = monic_poly_solution(&coeffs, d as usize) {
            let phi = &theta + &(&RatFunc::poly(p.derivative()) / &RatFunc::poly(p.clone()));
            return Some(Case2Cert { theta, p, phi });
        }
    }
    None
}

/// Kovacic Case 2: rational `phi` with `omega^2 - phi omega + (phi'/2 +
/// phi^2/2 - r) = 0` for the logarithmic derivative `omega` of a solution.
pub fn case2_search(r: &RatFunc) -> Option<Case2Cert> {
    case2_search_inner(r, &mut false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case3Report {
    /// Pole-order conditions and at least one admissible exponent family.
    pub conditions_hold: bool,
    /// `(n, d)` for each admissible family degree, `n` in {4, 6, 12}.
    pub admissible: Vec<(u32, i64)>,
    /// Case 1 or 2 already produces Liouvillian solutions.
    pub moot: bool,
}

fn sumset(e: &[i64], copies: usize) -> Vec<i64> {
    let mut acc = vec![0i64];
    for _ in 0..copies {
        let mut next: Vec<i64> = acc
            .iter()
            .flat_map(|a| e.iter().map(move |x| a + x))
            .collect();
        next.sort();
        next.dedup();
        acc = next;
    }
    acc
}

/// Necessary conditions of Kovacic Case 3. Never constructs the minimal
/// polynomial.
pub fn case3_detect(r: &RatFunc) -> Case3Report {
    let moot = case1_search(r).is_some() || case2_search(r).is_some();
    let cond = case_conditions(r);
    let mut admissible = Vec::new();
    if cond.feasible.contains(&3) {
        let poles = finite_poles(r);
        for n in [4u32, 6, 12] {
            let half = n as i64 / 2;
            let m = Rat::new(12.into(), (n as i64).into());
            let mut sums = vec![0i64];
            for pole in &poles {
                let e = match pole.order {
                    1 => vec![12],
                    _ => {
                        let b = double_pole_coefficient(r, &pole.place);
                        if b.is_constant() {
                            exponent_set(&b.constant_term(), 6, m.clone(), -half..=half)
                        } else {
                            vec![6]
                        }
                    }
                };
                let local = sumset(&e, pole.place.deg());
                let mut next: Vec<i64> = sums
                    .iter()
                    .flat_map(|a| local.iter().map(move |x| a + x))
                    .collect();
                next.sort();
                next.dedup();
                sums = next;
            }
            let inf = exponent_set(&infinity_coefficient(r), 6, m.clone(), -half..=half);
            let mut ds: Vec<i64> = Vec::new();
            for ei in &inf {
                for s in &sums {
                    let num = (ei - s) * n as i64;
                    if num >= 0 && num % 12 == 0 && !ds.contains(&(num / 12)) {
                        ds.push(num / 12);
                    }
                }
            }
            ds.sort();
            admissible.extend(ds.into_iter().map(|d| (n, d)));
        }
    }
    Case3Report {
        conditions_hold: !admissible.is_empty(),
        admissible,
        moot,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    One,
    Two,
    Three,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Two independent solutions, each an exact power product (constants
    /// dropped).
    PowerProducts(Vec<PowerProduct>),
    Case2(Case2Cert),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `f = g * integral(h)` with `right_factor = D - g'/g` right-dividing L.
    PrimitiveForm {
        g: PowerProduct,
        h: PowerProduct,
        right_factor: DiffOp,
        left_factor: DiffOp,
    },
    AlgebraicBasis(Certificate),
    Case3Candidate(Case3Report),
    /// A first-order right factor exists but one of the factors is not a
    /// G-operator.
    ReducibleNonG {
        right_factor: DiffOp,
        left_factor: DiffOp,
    },
    IrreducibleFullGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Verdict {
    pub case: Case,
    pub feasible: Vec<u8>,
    pub normal_form: NormalForm,
    pub case1: Option<Case1Cert>,
    pub outcomes: Vec<Outcome>,
    /// L is fuchsian with rational exponents everywhere.
    pub fuchsian_rational: bool,
    /// Some pole could not be searched over Q.
    pub incomplete: bool,
}

fn case1_outcomes(l: &DiffOp, nf: &NormalForm, c: &Case1Cert) -> Result<Vec<Outcome>> {
    let m = l.monic();
    let a = &(&c.omega + &(&RatFunc::poly(c.p.derivative()) / &RatFunc::poly(c.p.clone())))
        - &nf.p.scale(&Rat::new(1.into(), 2.into()));
    let right = DiffOp::first_order(&a);
    let (left, rem) = op_rdiv(&m, &right)?;
    if !rem.is_zero() {
        return Err(Error::Domain("case 1 right factor does not divide".into()));
    }
    let b = -&(&left.coeff(0) / &left.coeff(1));
    let vg = classify_order1(&a);
    let vk = classify_order1(&b);
    let (Some(g), Some(k)) = (vg.solution, vk.solution) else {
        return Ok(vec![Outcome::ReducibleNonG {
            right_factor: right,
            left_factor: left,
        }]);
    };
    let h = PowerProduct::tagged(pp_mul(&k, &pp_inverse(&g)).factors);
    let mut out = vec![Outcome::PrimitiveForm {
        g: g.clone(),
        h: h.clone(),
        right_factor: right,
        left_factor: left,
    }];
    // integral(h) = R h with R rational, iff R' + R h'/h = 1
    if let Some(rr) = rational_solution(&-&pp_log_derivative(&h), &RatFunc::one()) {
        let y1 = PowerProduct::untagged(g.factors.clone());
        let y2 = PowerProduct::untagged(pp_mul(&pp_mul(&g, &pp_from_ratfunc(&rr)?), &h).factors);
        let ok = [&y1, &y2]
            .iter()
            .all(|y| m.apply_log_derivative(&pp_log_derivative(y)).is_zero());
        if ok {
            out.push(Outcome::AlgebraicBasis(Certificate::PowerProducts(vec![
                y1, y2,
            ])));
        }
    }
    Ok(out)
}

pub fn classify_theorem2(l: &DiffOp) -> Result<Theorem2Verdict> {
    require_order2(l)?;
    let nf = normal_form(l)?;
    let cond = case_conditions(&nf.r);
    let rep = is_fuchsian(l)?;
    let fuchsian_rational = rep.is_fuchsian && rep.places.iter().all(|d| d.rational());
    let mut incomplete = false;
    let mut verdict = Theorem2Verdict {
        case: Case::None,
        feasible: cond.feasible.clone(),
        normal_form: nf.clone(),
        case1: None,
        outcomes: Vec::new(),
        fuchsian_rational,
        incomplete: false,
    };
    if cond.feasible.contains(&1) {
        if let Some(c) = case1_search_inner(&nf.r, &mut incomplete) {
            verdict.case = Case::One;
            verdict.outcomes = case1_outcomes(l, &nf, &c)?;
            verdict.case1 = Some(c);
            verdict.incomplete = incomplete;
            return Ok(verdict);
        }
    }
    if cond.feasible.contains(&2) {
        if let Some(c) = case2_search_inner(&nf.r, &mut incomplete) {
            verdict.case = Case::Two;
            verdict.outcomes = vec![Outcome::AlgebraicBasis(Certificate::Case2(c))];
            verdict.incomplete = incomplete;
            return Ok(verdict);
        }
    }
    verdict.incomplete = incomplete;
    if cond.feasible.contains(&3) {
        let rep = case3_detect(&nf.r);
        if rep.conditions_hold {
            verdict.case = Case::Three;
            verdict.outcomes = vec![Outcome::Case3Candidate(rep)];
            return Ok(verdict);
        }
    }
    verdict.outcomes = vec![Outcome::IrreducibleFullGroup];
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::diffop::op_mul;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    fn over_z2(c: Rat) -> RatFunc {
        RatFunc::new(Poly::constant(c), Poly::from_ints(&[0, 0, 1]))
    }

    fn euler() -> DiffOp {
        DiffOp::new(vec![
            RatFunc::constant(rat(2, 9)),
            RatFunc::zero(),
            rf(&[0, 0, 1], &[1]),
        ])
    }

    fn bessel0() -> DiffOp {
        DiffOp::new(vec![RatFunc::one(), rf(&[1], &[0, 1]), RatFunc::one()])
    }

    #[test]
    fn normal_forms() {
        let nf = normal_form(&bessel0()).unwrap();
        assert_eq!(nf.r, &over_z2(rat(-1, 4)) - &RatFunc::one());
        let l = DiffOp::new(vec![RatFunc::zero(), rf(&[1], &[0, 1]), RatFunc::one()]);
        let nf = normal_form(&l).unwrap();
        assert_eq!(nf.r, over_z2(rat(-1, 4)));
        assert_eq!(
            nf.gauge,
            Gauge::PowerProduct(PowerProduct::untagged(vec![(Poly::z(), rat(-1, 2))]))
        );
        assert!(normal_form(&DiffOp::d_pow(2)).unwrap().r.is_zero());
        assert_eq!(normal_form(&euler()).unwrap().r, over_z2(rat(-2, 9)));
        assert!(normal_form(&DiffOp::d()).is_err());
    }

    #[test]
    fn conditions() {
        assert_eq!(
            case_conditions(&over_z2(rat(-1, 4))).feasible,
            vec![1, 2, 3]
        );
        assert!(case_conditions(&RatFunc::z()).feasible.is_empty());
        assert_eq!(case_conditions(&RatFunc::zero()).feasible, vec![1]);
    }

    #[test]
    fn case1_examples() {
        for (c, w) in [
            (rat(-1, 4), rat(1, 2)),
            (rat(-2, 9), rat(1, 3)),
            (int(2), int(2)),
        ] {
            let r = over_z2(c);
            let cert = case1_search(&r).unwrap();
            assert_eq!(cert.omega, RatFunc::z().recip().scale(&w));
            assert_eq!(cert.p, Poly::one());
            assert!(case1_certificate_holds(&r, &cert));
        }
        // u'' = u: omega = 1 or -1
        let cert = case1_search(&RatFunc::one()).unwrap();
        assert!(case1_certificate_holds(&RatFunc::one(), &cert));
        // Airy has none
        assert!(case1_search(&RatFunc::z()).is_none());
    }

    #[test]
    fn case1_needs_polynomial() {
        // r = 2/z^2 + ... built from u = z^2 + 1: r = u''/u = 2/(z^2 + 1)
        let r = rf(&[2], &[1, 0, 1]);
        let cert = case1_search(&r).unwrap();
        assert!(case1_certificate_holds(&r, &cert));
    }

    #[test]
    fn case2_examples() {
        let r = over_z2(rat(3, 16));
        assert!(case1_search(&r).is_none());
        let c = case2_search(&r).unwrap();
        assert_eq!(c.phi, RatFunc::z().recip());
        assert!(case2_certificate_holds(&r, &c.phi));
        // the normal form of the z^(1/4), z^(3/4) Euler operator is case 1
        assert!(case1_search(&over_z2(rat(-3, 16))).is_some());
        assert!(case2_search(&RatFunc::zero()).is_none());
        assert!(case2_search(&RatFunc::z()).is_none());
    }

    #[test]
    fn case2_irrational_exponents() {
        // u'' = (5/(16 z^2) + 1/z) u has no case-1 solution
        let r = &over_z2(rat(5, 16)) + &RatFunc::z().recip();
        assert!(case1_search(&r).is_none());
        if let Some(c) = case2_search(&r) {
            assert!(case2_certificate_holds(&r, &c.phi));
        }
    }

    #[test]
    fn case3_reports() {
        let r = over_z2(rat(-1, 4));
        let rep = case3_detect(&r);
        assert!(rep.conditions_hold && rep.moot);
        assert!(!case3_detect(&RatFunc::z()).conditions_hold);
        assert!(case3_detect(&over_z2(rat(-2, 9))).moot);
    }

    #[test]
    fn dichotomy_examples() {
        let l = DiffOp::new(vec![RatFunc::zero(), rf(&[1], &[0, 1]), RatFunc::one()]);
        let v = classify_theorem2(&l).unwrap();
        assert_eq!(v.case, Case::One);
        match &v.outcomes[0] {
            Outcome::PrimitiveForm {
                g, h, right_factor, ..
            } => {
                assert!(g.factors.is_empty());
                assert_eq!(h.factors, vec![(Poly::z(), int(-1))]);
                assert_eq!(right_factor, &DiffOp::d());
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(v.outcomes.len(), 1);

        let v = classify_theorem2(&euler()).unwrap();
        assert_eq!(v.case, Case::One);
        match &v.outcomes[0] {
            Outcome::PrimitiveForm { g, h, .. } => {
                assert_eq!(g.factors, vec![(Poly::z(), rat(1, 3))]);
                assert_eq!(h.factors, vec![(Poly::z(), rat(-2, 3))]);
            }
            o => panic!("{o:?}"),
        }
        match &v.outcomes[1] {
            Outcome::AlgebraicBasis(Certificate::PowerProducts(b)) => {
                assert_eq!(b[0].factors, vec![(Poly::z(), rat(1, 3))]);
                assert_eq!(b[1].factors, vec![(Poly::z(), rat(2, 3))]);
            }
            o => panic!("{o:?}"),
        }

        let v = classify_theorem2(&DiffOp::d_pow(2)).unwrap();
        match &v.outcomes[1] {
            Outcome::AlgebraicBasis(Certificate::PowerProducts(b)) => {
                assert!(b[0].factors.is_empty());
                assert_eq!(b[1].factors, vec![(Poly::z(), int(1))]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn dichotomy_other_cases() {
        let airy = &DiffOp::d_pow(2) - &DiffOp::from_ratfunc(RatFunc::z());
        let v = classify_theorem2(&airy).unwrap();
        assert_eq!(v.case, Case::None);
        assert_eq!(v.outcomes, vec![Outcome::IrreducibleFullGroup]);
        assert!(!v.fuchsian_rational);

        let l = DiffOp::new(vec![
            RatFunc::constant(rat(-3, 16)),
            RatFunc::zero(),
            rf(&[0, 0, 1], &[1]),
        ]);
        assert_eq!(classify_theorem2(&l).unwrap().case, Case::Two);

        // a reducible operator with a non-G right factor: (D - 1) D
        let l = &DiffOp::d_pow(2) - &DiffOp::d();
        let v = classify_theorem2(&l).unwrap();
        assert_eq!(v.case, Case::One);
        assert!(matches!(v.outcomes[0], Outcome::ReducibleNonG { .. }));
    }

    #[test]
    fn synthesized_products() {
        let a = &rf(&[1], &[0, 2]) + &rf(&[-1], &[-3, 3]);
        let b = rf(&[1, 1], &[0, 1]);
        let l = op_mul(
            &DiffOp::first_order(&(&b.derivative() / &b)),
            &DiffOp::first_order(&a),
        );
        let v = classify_theorem2(&l).unwrap();
        match &v.outcomes[0] {
            Outcome::PrimitiveForm {
                right_factor, g, h, ..
            } => {
                let (_, rem) = op_rdiv(&l, right_factor).unwrap();
                assert!(rem.is_zero());
                assert_eq!(
                    &right_factor.monic(),
                    &DiffOp::first_order(&pp_log_derivative(g))
                );
                assert!(classify_order1(&pp_log_derivative(h)).is_g_operator);
            }
            o => panic!("{o:?}"),
        }
    }
}
