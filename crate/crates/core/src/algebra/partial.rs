//! Places of Q(z) and partial fraction decomposition.

use std::fmt;

use super::factor::poly_factor;
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// A finite place (monic irreducible polynomial) or the point at infinity.
/// Finite places sort before infinity, and among themselves by degree then
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    /// Degree of the residue field over Q; infinity counts as 1.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfTerm {
    pub place: Place,
    pub order: usize,
    /// Degree strictly below the degree of the place.
    pub numer: Poly,
}

impl PfTerm {
    pub fn to_ratfunc(&self) -> RatFunc {
        let p = self.place.poly().expect("finite place");
        RatFunc::new(self.numer.clone(), p.pow(self.order))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Poly,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RatFunc {
        self.terms
            .iter()
            .fold(RatFunc::poly(self.poly.clone()), |acc, t| {
                &acc + &t.to_ratfunc()
            })
    }

    /// Numerator of the simple-pole term at `p` (the residue class), or zero.
    pub fn simple_part(&self, p: &Poly) -> Poly {
        self.terms
            .iter()
            .find(|t| t.order == 1 && t.place.poly() == Some(p))
            .map(|t| t.numer.clone())
            .unwrap_or_else(Poly::zero)
    }
}

pub fn partial_fractions(f: &RatFunc) -> PartialFractions {
    let (poly, rem) = f.num().div_rem(f.den());
    let mut terms = Vec::new();
    if f.den().deg() == 0 || rem.is_zero() {
        return PartialFractions { poly, terms };
    }
    let fac = poly_factor(f.den()).expect("denominator is non-zero");
    for (p, e) in &fac.factors {
        let e = *e as usize;
        let pe = p.pow(e);
        let cof = f.den().div_exact(&pe).expect("factor divides");
        let inv = cof.inv_mod(&pe).expect("coprime cofactor");
        let mut c = (&rem * &inv).rem(&pe);
        // p-adic digits of c: c = sum a_k p^k
        for k in 0..e {
            if c.is_zero() {
                break;
            }
            let (q, a) = c.div_rem(p);
            if !a.is_zero() {
                terms.push(PfTerm {
                    place: Place::Finite(p.clone()),
                    order: e - k,
                    numer: a,
                });
            }
            c = q;
        }
    }
    terms.sort_by(|a, b| (&a.place, a.order).cmp(&(&b.place, b.order)));
    PartialFractions { poly, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    #[test]
    fn two_simple_poles() {
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[0, -1, 1]));
        let pf = partial_fractions(&f);
        assert!(pf.poly.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0].place, Place::Finite(Poly::z()));
        assert_eq!(pf.terms[0].numer, Poly::constant(int(-1)));
        assert_eq!(pf.terms[1].place, Place::Finite(Poly::from_ints(&[-1, 1])));
        assert_eq!(pf.terms[1].numer, Poly::one());
        assert_eq!(pf.recombine(), f);
    }

    #[test]
    fn polynomial_input() {
        let pf = partial_fractions(&RatFunc::z());
        assert_eq!(pf.poly, Poly::z());
        assert!(pf.terms.is_empty());
    }

    #[test]
    fn irreducible_quadratic() {
        let f = RatFunc::new(Poly::from_ints(&[0, 3]), Poly::from_ints(&[1, 0, 1]));
        let pf = partial_fractions(&f);
        assert_eq!(pf.terms.len(), 1);
        assert_eq!(pf.terms[0].order, 1);
        assert_eq!(pf.terms[0].numer, Poly::from_ints(&[0, 3]));
    }

    #[test]
    fn higher_order_pole() {
        // (z^3 + 1)/(z^2 (z - 1)^2)
        let f = RatFunc::new(
            Poly::from_ints(&[1, 0, 0, 1]),
            &Poly::from_ints(&[0, 0, 1]) * &Poly::from_ints(&[1, -2, 1]),
        );
        assert_eq!(partial_fractions(&f).recombine(), f);
    }
}
