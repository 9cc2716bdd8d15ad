//! Rational roots of polynomials over Q.

use super::factor::poly_factor;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct rational roots in increasing order, with multiplicity.
    pub roots: Vec<(Rat, u32)>,
    /// Whether the multiplicities add up to the degree.
    pub all_rational: bool,
}

impl RootSet {
    /// Roots repeated according to multiplicity.
    pub fn flat(&self) -> Vec<Rat> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m as usize))
            .collect()
    }

    pub fn sum(&self) -> Rat {
        self.flat().into_iter().sum()
    }
}

pub fn rational_roots(p: &Poly) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = poly_factor(p)?;
    let mut roots: Vec<(Rat, u32)> = fac
        .factors
        .iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, m)| (-f.constant_term(), *m))
        .collect();
    roots.sort();
    let total: u32 = roots.iter().map(|(_, m)| m).sum();
    Ok(RootSet {
        all_rational: total as usize == p.deg(),
        roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    /// Rational root theorem enumeration, used as an oracle.
    fn brute_roots(p: &Poly) -> Vec<Rat> {
        let c = p.primitive_integer();
        let v = c.iter().position(|x| !x.is_zero()).unwrap();
        let mut out = Vec::new();
        if v > 0 {
            out.push(int(0));
        }
        let a0 = c[v].abs();
        let an = c.last().unwrap().abs();
        let divs = |n: &BigInt| -> Vec<BigInt> {
            let mut d = Vec::new();
            let mut i = BigInt::from(1);
            while &i <= n {
                if n.is_multiple_of(&i) {
                    d.push(i.clone());
                }
                i += 1;
            }
            d
        };
        for num in divs(&a0) {
            for den in divs(&an) {
                for s in [1i64, -1] {
                    let r = Rat::new(&num * s, den.clone());
                    if p.eval(&r).is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn euler_indicial() {
        // 9 rho^2 - 9 rho + 2
        let p = Poly::from_ints(&[2, -9, 9]);
        let rs = rational_roots(&p).unwrap();
        assert_eq!(rs.roots, vec![(rat(1, 3), 1), (rat(2, 3), 1)]);
        assert!(rs.all_rational);
        assert_eq!(brute_roots(&p), vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn irrational_and_double() {
        let rs = rational_roots(&Poly::from_ints(&[-2, 0, 1])).unwrap();
        assert!(rs.roots.is_empty() && !rs.all_rational);
        let rs = rational_roots(&Poly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(rs.roots, vec![(int(0), 2)]);
        assert!(rs.all_rational);
        assert!(rational_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn agrees_with_root_theorem() {
        for cs in [
            vec![6, -5, 1],
            vec![-3, 2, 0, 4],
            vec![0, 12, -7, 1],
            vec![4, 0, -5, 0, 1],
            vec![1, 1, 1],
        ] {
            let p = Poly::from_ints(&cs);
            let got: Vec<Rat> = rational_roots(&p)
                .unwrap()
                .roots
                .into_iter()
                .map(|(r, _)| r)
                .collect();
            assert_eq!(got, brute_roots(&p), "{p}");
        }
    }
}
