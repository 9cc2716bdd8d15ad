//! Singular places, Fuchs criterion and indicial data.
//!
//! At a finite place `p` the local coefficients live in `Q[z]/(p)`: for a
//! root `t` of `p`, `(z - t)^(n-i) a_i` at `t` equals
//! `p^(n-i) a_i * p'^(-(n-i))` reduced mod `p`. Infinity is handled by the
//! substitution `z = 1/w` and the place `w`.

use num_traits::Zero;

use crate::algebra::factor::poly_factor;
use crate::algebra::partial::{partial_fractions, Place};
use crate::algebra::poly::Poly;
use crate::algebra::rat::{int, Rat};
use crate::algebra::ratfunc::{multiplicity, RatFunc};
use crate::algebra::roots::{rational_roots, RootSet};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialData {
    pub place: Place,
    /// `q_0, ..., q_n` as residues mod the place polynomial (`q_n = 1`).
    pub local_coeffs: Vec<Poly>,
    /// `sum q_i rho(rho-1)...(rho-i+1)`, present when every `q_i` is in Q.
    pub indicial: Option<Poly>,
    pub exponents: Option<RootSet>,
}

impl IndicialData {
    /// All exponents rational.
    pub fn rational(&self) -> bool {
        self.exponents.as_ref().is_some_and(|e| e.all_rational)
    }

    /// Sum of the exponents (Vieta), when the indicial polynomial is over Q.
    pub fn exponent_sum(&self) -> Option<Rat> {
        let ind = self.indicial.as_ref()?;
        let n = ind.deg();
        if n == 0 {
            return Some(Rat::zero());
        }
        Some(-ind.coeff(n - 1) / ind.lc())
    }
}

/// A coefficient `a_(n-k)` of the monic operator with a pole of order
/// `pole_order > bound = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub place: Place,
    pub index: usize,
    pub pole_order: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsReport {
    pub is_fuchsian: bool,
    pub places: Vec<IndicialData>,
    pub offending: Vec<Violation>,
}

fn require_order(l: &DiffOp) -> Result<()> {
    if l.is_zero() || l.order() == 0 {
        return Err(Error::WrongOrder {
            expected: "at least 1".into(),
            found: l.order(),
        });
    }
    Ok(())
}

/// Finite places where the monic operator has a pole, then infinity.
pub fn singular_places(l: &DiffOp) -> Vec<Place> {
    let m = l.monic();
    let mut den = Poly::one();
    for c in m.coeffs() {
        den = den.lcm(c.den());
    }
    let mut out: Vec<Place> = if den.deg() == 0 {
        Vec::new()
    } else {
        poly_factor(&den)
            .expect("non-zero")
            .factors
            .into_iter()
            .map(|(p, _)| Place::Finite(p))
            .collect()
    };
    out.sort();
    out.push(Place::Infinity);
    out
}

/// The monic operator and place polynomial used for local computations.
fn local_frame(l: &DiffOp, place: &Place) -> (DiffOp, Poly) {
    match place {
        Place::Finite(p) => (l.monic(), p.clone()),
        Place::Infinity => (l.at_infinity().monic(), Poly::z()),
    }
}

fn violations(m: &DiffOp, p: &Poly, place: &Place) -> Vec<Violation> {
    let n = m.order();
    let mut out = Vec::new();
    for i in 0..n {
        let c = m.coeff(i);
        if c.is_zero() {
            continue;
        }
        let v = c.pole_order(p);
        if v > n - i {
            out.push(Violation {
                place: place.clone(),
                index: i,
                pole_order: v,
                bound: n - i,
            });
        }
    }
    out
}

/// `(p^k c) * p'^(-k)` reduced mod `p`, for `c` with a pole of order at most
/// `k` at `p`.
fn leading_residue(c: &RatFunc, p: &Poly, k: usize) -> Poly {
    if c.is_zero() {
        return Poly::zero();
    }
    let v = multiplicity(c.den(), p);
    if v < k {
        return Poly::zero();
    }
    debug_assert_eq!(v, k);
    let rest = c.den().div_exact(&p.pow(v)).expect("divides");
    let dp = p.derivative().pow(k);
    let inv = (&rest * &dp).rem(p).inv_mod(p).expect("coprime");
    (c.num() * &inv).rem(p)
}

fn indicial_data(m: &DiffOp, p: &Poly, place: Place) -> Result<IndicialData> {
    let n = m.order();
    let mut q: Vec<Poly> = (0..n)
        .map(|i| leading_residue(&m.coeff(i), p, n - i))
        .collect();
    q.push(Poly::one());
    let indicial = if q.iter().all(|x| x.is_constant()) {
        let mut acc = Poly::zero();
        let mut fall = Poly::one();
        for (i, qi) in q.iter().enumerate() {
            if i > 0 {
                fall = &fall * &Poly::linear(int(i as i64 - 1));
            }
            acc = &acc + &fall.scale(&qi.constant_term());
        }
        Some(acc)
    } else {
        None
    };
    let exponents = match &indicial {
        Some(ind) => Some(rational_roots(ind)?),
        None => None,
    };
    Ok(IndicialData {
        place,
        local_coeffs: q,
        indicial,
        exponents,
    })
}

pub fn is_fuchsian(l: &DiffOp) -> Result<FuchsReport> {
    require_order(l)?;
    let mut places = Vec::new();
    let mut offending = Vec::new();
    for place in singular_places(l) {
        let (m, p) = local_frame(l, &place);
        let bad = violations(&m, &p, &place);
        if bad.is_empty() {
            places.push(indicial_data(&m, &p, place)?);
        } else {
            offending.extend(bad);
        }
    }
    Ok(FuchsReport {
        is_fuchsian: offending.is_empty(),
        places,
        offending,
    })
}

pub fn indicial_at(l: &DiffOp, place: &Place) -> Result<IndicialData> {
    require_order(l)?;
    let (m, p) = local_frame(l, place);
    let bad = violations(&m, &p, place);
    if let Some(v) = bad.first() {
        return Err(Error::Irregular {
            place: place.to_string(),
            detail: format!(
                "coefficient of D^{} has a pole of order {} > {}",
                v.index, v.pole_order, v.bound
            ),
        });
    }
    indicial_data(&m, &p, place.clone())
}

fn require_fuchsian(l: &DiffOp) -> Result<FuchsReport> {
    let rep = is_fuchsian(l)?;
    if let Some(v) = rep.offending.first() {
        return Err(Error::Irregular {
            place: v.place.to_string(),
            detail: format!(
                "coefficient of D^{} has a pole of order {} > {}",
                v.index, v.pole_order, v.bound
            ),
        });
    }
    Ok(rep)
}

/// For monic `D^2 + p D + q`: the residue of `p` at each finite singular
/// place equals `1 - rho_1 - rho_2`.
pub fn residue_exponent_identity(l: &DiffOp) -> Result<bool> {
    if l.order() != 2 {
        return Err(Error::WrongOrder {
            expected: "2".into(),
            found: l.order(),
        });
    }
    let rep = require_fuchsian(l)?;
    let pcoef = l.monic().coeff(1);
    let pf = partial_fractions(&pcoef);
    for data in &rep.places {
        let Place::Finite(pl) = &data.place else {
            continue;
        };
        let inv = pl.derivative().inv_mod(pl).expect("separable");
        let residue = (&pf.simple_part(pl) * &inv).rem(pl);
        let sum = match &data.exponents {
            Some(e) if e.all_rational => Poly::constant(e.sum()),
            Some(_) => Poly::constant(data.exponent_sum().expect("indicial over Q")),
            // Vieta in Q[z]/(p): rho_1 + rho_2 = 1 - q_1
            None => &Poly::one() - &data.local_coeffs[1],
        };
        if residue != &Poly::one() - &sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sum over singular places (weighted by degree, infinity included) of the
/// exponent sums equals `(m - 2) n (n - 1) / 2`, `m` the weighted number of
/// singular places.
pub fn fuchs_relation_check(l: &DiffOp) -> Result<bool> {
    let rep = require_fuchsian(l)?;
    let n = l.order() as i64;
    let mut total = Rat::zero();
    let mut m = 0i64;
    for data in &rep.places {
        let Some(e) = data.exponents.as_ref().filter(|e| e.all_rational) else {
            return Err(Error::Domain(format!(
                "exponents at {} are not all rational",
                data.place
            )));
        };
        let d = data.place.degree() as i64;
        m += d;
        total += e.sum() * int(d);
    }
    Ok(total == int((m - 2) * n * (n - 1) / 2))
}
