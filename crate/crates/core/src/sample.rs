//! Seeded random instances and a small operator corpus, shared by tests and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::poly::Poly;
use crate::algebra::rat::{int, rat, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::diffop::{op_mul, DiffOp};
use crate::nga::{CycConst, NgaExpr, NgaTerm};
use crate::series::TruncSeries;

pub fn small_rat<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

/// Polynomial of degree at most `max_deg` with small rational coefficients.
pub fn poly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new((0..=d).map(|_| small_rat(rng, 4, 3)).collect())
}

pub fn nonzero_poly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly {
    loop {
        let p = poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn ratfunc<R: Rng>(rng: &mut R, max_deg: usize) -> RatFunc {
    RatFunc::new(poly(rng, max_deg), nonzero_poly(rng, max_deg))
}

/// Operator of order exactly `order` with coefficients of degree at most
/// `max_deg`.
pub fn diffop<R: Rng>(rng: &mut R, order: usize, max_deg: usize) -> DiffOp {
    let mut c: Vec<RatFunc> = (0..order).map(|_| ratfunc(rng, max_deg)).collect();
    c.push(RatFunc::new(
        nonzero_poly(rng, max_deg),
        nonzero_poly(rng, max_deg),
    ));
    DiffOp::new(c)
}

/// Distinct rational places with non-zero exponents of denominator at most
/// `max_den`: the data `(lambda_j, s_j)` of `prod (lambda_j - z)^(s_j)`.
pub fn order1_data<R: Rng>(rng: &mut R, max_places: usize, max_den: i64) -> Vec<(Rat, Rat)> {
    let n = rng.gen_range(1..=max_places);
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    while out.len() < n {
        let l = small_rat(rng, 5, 2);
        if out.iter().any(|(m, _)| *m == l) {
            continue;
        }
        let s = loop {
            let s = small_rat(rng, 5, max_den);
            if s != int(0) {
                break s;
            }
        };
        out.push((l, s));
    }
    out
}

/// `a(z)` with simple and double poles at distinct rational points and an
/// optional polynomial part, together with the generating data.
#[derive(Clone, Debug)]
pub struct MixedPoles {
    pub a: RatFunc,
    pub simple: Vec<(Rat, Rat)>,
    pub double: Vec<(Rat, Rat)>,
    pub polynomial: Poly,
}

pub fn mixed_poles<R: Rng>(rng: &mut R) -> MixedPoles {
    let mut pts: Vec<Rat> = Vec::new();
    while pts.len() < 4 {
        let l = small_rat(rng, 6, 2);
        if !pts.contains(&l) {
            pts.push(l);
        }
    }
    let ns = rng.gen_range(0..=3);
    let nd = if rng.gen_bool(0.5) {
        0
    } else {
        rng.gen_range(0..=4 - ns)
    };
    let simple: Vec<(Rat, Rat)> = pts[..ns]
        .iter()
        .map(|l| (l.clone(), small_rat(rng, 4, 4)))
        .filter(|(_, c)| *c != int(0))
        .collect();
    let double: Vec<(Rat, Rat)> = pts[ns..ns + nd]
        .iter()
        .map(|l| (l.clone(), small_rat(rng, 4, 4)))
        .filter(|(_, c)| *c != int(0))
        .collect();
    let polynomial = if rng.gen_bool(0.25) {
        poly(rng, 1)
    } else {
        Poly::zero()
    };
    let mut a = RatFunc::poly(polynomial.clone());
    for (l, c) in &simple {
        a = &a + &RatFunc::over_power(c.clone(), &Poly::linear(l.clone()), 1);
    }
    for (l, c) in &double {
        a = &a + &RatFunc::over_power(c.clone(), &Poly::linear(l.clone()), 2);
    }
    MixedPoles {
        a,
        simple,
        double,
        polynomial,
    }
}

/// `sum s_j/(z - lambda_j)`.
pub fn log_derivative(data: &[(Rat, Rat)]) -> RatFunc {
    data.iter().fold(RatFunc::zero(), |acc, (l, s)| {
        &acc + &RatFunc::over_power(s.clone(), &Poly::linear(l.clone()), 1)
    })
}

/// `(D - b'/b)(D - a)` with `a` the logarithmic derivative of a product of
/// rational powers and `b` a rational function.
pub fn synthesized_order2<R: Rng>(rng: &mut R) -> (DiffOp, RatFunc, RatFunc) {
    let a = log_derivative(&order1_data(rng, 3, 4));
    let mut b = RatFunc::one();
    for (l, _) in order1_data(rng, 2, 1) {
        let e = rng.gen_range(-2i64..=2);
        if e != 0 {
            b = &b * &RatFunc::poly(Poly::linear(l)).pow(e);
        }
    }
    if rng.gen_bool(0.5) {
        b = b.scale(&small_rat(rng, 3, 1).max(int(1)));
    }
    let bl = &b.derivative() / &b;
    let l = op_mul(&DiffOp::first_order(&bl), &DiffOp::first_order(&a));
    (l, a, b)
}

const ALPHAS: [(i64, i64); 9] = [
    (0, 1),
    (1, 2),
    (1, 3),
    (2, 3),
    (1, 4),
    (3, 4),
    (1, 6),
    (5, 6),
    (3, 2),
];

/// At most `max_terms` terms, `len`-term series, `j <= 2`.
pub fn nga_expr<R: Rng>(rng: &mut R, max_terms: usize, len: usize) -> NgaExpr {
    let n = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..n {
        let &(p, q) = ALPHAS.choose(rng).unwrap();
        let alpha = rat(p, q);
        let level = rng.gen_range(1..=6u64);
        let mut coeff = CycConst::zeta(level, rng.gen_range(0..level as i64))
            .scale(&small_rat(rng, 3, 2).max(int(1)));
        if rng.gen_bool(0.3) {
            coeff = &coeff * &CycConst::tau_pow(rng.gen_range(1..=2));
        }
        if rng.gen_bool(0.3) {
            coeff = &coeff + &CycConst::rational(small_rat(rng, 3, 2));
        }
        let series = TruncSeries::power((0..len).map(|_| small_rat(rng, 9, 5)).collect());
        terms.push(NgaTerm {
            alpha,
            j: rng.gen_range(0..=2),
            coeff,
            series,
        });
    }
    NgaExpr::new(terms).expect("equal truncations")
}

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
}

fn rfq(n: Vec<Rat>, d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::new(n), Poly::from_ints(d))
}

/// `z(1 - z) D^2 + (c - (a + b + 1) z) D - a b`.
pub fn gauss(a: Rat, b: Rat, c: Rat) -> DiffOp {
    let lin = Poly::new(vec![c, -(&a + &b + int(1))]);
    DiffOp::new(vec![
        RatFunc::constant(-(&a * &b)),
        RatFunc::poly(lin),
        rf(&[0, 1, -1], &[1]),
    ])
}

/// Named operators used across the tests.
pub fn corpus() -> Vec<(&'static str, DiffOp)> {
    vec![
        ("gauss-half-half-one", gauss(rat(1, 2), rat(1, 2), int(1))),
        ("gauss-third", gauss(rat(1, 3), rat(2, 3), rat(1, 2))),
        ("gauss-quarter", gauss(rat(1, 4), rat(-1, 4), rat(3, 4))),
        (
            "euler-2/9",
            DiffOp::new(vec![
                RatFunc::constant(rat(2, 9)),
                RatFunc::zero(),
                rf(&[0, 0, 1], &[1]),
            ]),
        ),
        (
            "euler-3/16",
            DiffOp::new(vec![
                RatFunc::constant(rat(3, 16)),
                RatFunc::zero(),
                rf(&[0, 0, 1], &[1]),
            ]),
        ),
        (
            "d2-plus-d-over-z",
            DiffOp::new(vec![RatFunc::zero(), rf(&[1], &[0, 1]), RatFunc::one()]),
        ),
        ("d2", DiffOp::d_pow(2)),
        (
            "legendre-1",
            DiffOp::new(vec![
                RatFunc::from_int(2),
                rf(&[0, -2], &[1]),
                rf(&[1, 0, -1], &[1]),
            ]),
        ),
        (
            "quadratic-place",
            DiffOp::new(vec![
                RatFunc::zero(),
                rf(&[0, 2], &[1]),
                rf(&[1, 0, 1], &[1]),
            ]),
        ),
        (
            "order1-sqrt",
            DiffOp::first_order(&rfq(vec![rat(1, 2)], &[-1, 1])),
        ),
        (
            "order3-euler",
            DiffOp::new(vec![
                RatFunc::zero(),
                RatFunc::zero(),
                rf(&[3], &[0, 1]),
                RatFunc::one(),
            ]),
        ),
        (
            "bessel-0",
            DiffOp::new(vec![RatFunc::one(), rf(&[1], &[0, 1]), RatFunc::one()]),
        ),
        (
            "airy",
            &DiffOp::d_pow(2) - &DiffOp::from_ratfunc(RatFunc::z()),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::is_fuchsian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic() {
        let a = nga_expr(&mut ChaCha8Rng::seed_from_u64(3), 4, 10);
        let b = nga_expr(&mut ChaCha8Rng::seed_from_u64(3), 4, 10);
        assert_eq!(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(diffop(&mut rng, 3, 2).order(), 3);
    }

    #[test]
    fn synthesized_are_fuchsian() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let (l, _, _) = synthesized_order2(&mut rng);
            assert_eq!(l.order(), 2);
            assert!(is_fuchsian(&l).unwrap().is_fuchsian);
        }
    }

    #[test]
    fn corpus_fuchsian_members() {
        let irregular: Vec<&str> = corpus()
            .iter()
            .filter(|(_, l)| !is_fuchsian(l).unwrap().is_fuchsian)
            .map(|(n, _)| *n)
            .collect();
        assert_eq!(irregular, vec!["bessel-0", "airy"]);
    }
}
