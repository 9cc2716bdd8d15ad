//! Greatest common divisors in Z[z] by reduction modulo word-sized primes
//! and Chinese remaindering, certified by trial division.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIME_COUNT: usize = 256;

fn primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn monic_mod(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let k = a.len() - 1 - db;
        let q = a.last().unwrap() * inv % p;
        if q != 0 {
            for (i, y) in b.iter().enumerate() {
                a[k + i] = (a[k + i] + p - q * y % p) % p;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    monic_mod(a, p)
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let db = d.len() - 1;
    let ld = &d[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let (q, m) = r.last().unwrap().div_rem(ld);
        if !m.is_zero() {
            return false;
        }
        for (i, y) in d.iter().enumerate() {
            r[k + i] -= &q * y;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in c.iter_mut() {
            *x /= &g;
        }
    }
    if c.last().is_some_and(Signed::is_negative) {
        for x in c.iter_mut() {
            *x = -&*x;
        }
    }
    c
}

/// Primitive gcd with positive leading coefficient of two non-zero
/// primitive integer polynomials (coefficients lowest degree first), or
/// `None` when the prime supply runs out.
pub fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let la = a.last()?;
    let lb = b.last()?;
    let c = la.gcd(lb);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    let mut last: Option<Vec<BigInt>> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let dg = g.len() - 1;
        if dg == 0 {
            return Some(vec![BigInt::one()]);
        }
        if dg > deg {
            continue;
        }
        let cp = c.mod_floor(&pb).to_u64().unwrap();
        let h: Vec<BigInt> = g.iter().map(|x| BigInt::from(x * cp % p)).collect();
        if dg < deg {
            deg = dg;
            modulus = pb;
            acc = h;
            last = None;
            continue;
        }
        // CRT: x = acc (mod M), x = h (mod p)
        let m_mod_p = modulus.mod_floor(&pb).to_u64().unwrap();
        let minv = BigInt::from(inv_mod(m_mod_p, p));
        for (x, hp) in acc.iter_mut().zip(&h) {
            let t = ((hp - &*x) * &minv).mod_floor(&pb);
            *x += &modulus * t;
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .iter()
            .map(|x| if *x > half { x - &modulus } else { x.clone() })
            .collect();
        let cand = primitive(sym);
        if last.as_ref() == Some(&cand) && divides(&cand, a) && divides(&cand, b) {
            return Some(cand);
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        // (z - 1)(2z + 3) and (z - 1)(z + 5)
        let g = gcd_z(&zp(&[-3, 1, 2]), &zp(&[-5, 4, 1])).unwrap();
        assert_eq!(g, zp(&[-1, 1]));
        assert_eq!(gcd_z(&zp(&[1, 1]), &zp(&[1, 2])).unwrap(), zp(&[1]));
        // (3z^2 + 1)^2 and (3z^2 + 1)(z - 7)
        let g = gcd_z(&zp(&[1, 0, 6, 0, 9]), &zp(&[-7, 1, -21, 3])).unwrap();
        assert_eq!(g, zp(&[1, 0, 3]));
    }

    #[test]
    fn large_coefficients() {
        let big: BigInt = num_traits::pow(BigInt::from(10), 40) + 7;
        let f = vec![big.clone(), BigInt::from(3), BigInt::one()];
        let mul = |x: &[BigInt], y: &[BigInt]| {
            let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        };
        let a = mul(&f, &zp(&[2, -1, 5]));
        let b = mul(&f, &zp(&[-9, 0, 0, 4]));
        assert_eq!(gcd_z(&a, &b).unwrap(), f);
    }
}
