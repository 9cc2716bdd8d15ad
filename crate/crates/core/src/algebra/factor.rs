//! Factorization of polynomials over Q.
//!
//! Square-free decomposition over Q, then Zassenhaus-style factoring of each
//! square-free part: the integer polynomial is factored modulo a prime larger
//! than twice the Mignotte bound (distinct-degree plus Cantor-Zassenhaus
//! equal-degree splitting), and the modular factors are recombined by
//! exhaustive subset search. No Hensel lifting is needed because the prime
//! already exceeds the coefficient bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// `lead * prod(factor^multiplicity)`; factors monic, irreducible over Q,
/// pairwise distinct and sorted in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: Rat,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.lead.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m as usize)
            })
    }
}

pub fn poly_factor(p: &Poly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = p.lc();
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&p.monic()) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort();
    Ok(Factorization { lead, factors })
}

/// Yun's square-free decomposition of a monic polynomial.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides").monic();
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb.monic();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic irreducible factors of a monic square-free polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    // pull out z separately; keeps the modular image non-degenerate
    let v = f.valuation();
    let mut out = Vec::new();
    let rest = if v > 0 {
        out.push(Poly::z());
        f.div_exact(&Poly::z()).expect("z divides")
    } else {
        f.clone()
    };
    if rest.deg() > 0 {
        let ints = rest.primitive_integer();
        for g in zassenhaus(&ints) {
            out.push(Poly::from_big_ints(&g).monic());
        }
    }
    out
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].abs();
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = &lc * (BigInt::one() << n) * BigInt::from(n + 1) * &maxc;
    let mut cand = (bound * 2u32 + 1u32).to_biguint().unwrap();
    let (p, fp) = loop {
        cand = next_prime(&cand);
        let p = BigInt::from(cand.clone());
        if (&f[n] % &p).is_zero() {
            cand += 1u32;
            continue;
        }
        let fp = ModP::new(p.clone()).reduce(f);
        let m = ModP::new(p.clone());
        let d = m.derivative(&fp);
        if m.gcd(&fp, &d).len() == 1 {
            break (p, fp);
        }
        cand += 1u32;
    };
    let m = ModP::new(p.clone());
    let fmonic = m.monic(&fp);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f70_6572 ^ n as u64);
    let mut modular = Vec::new();
    for (g, d) in m.distinct_degree(&fmonic) {
        m.equal_degree(&g, d, &mut rng, &mut modular);
    }
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    recombine(f, modular, &m)
}

fn recombine(f: &[BigInt], mut modular: Vec<Vec<BigInt>>, m: &ModP) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut current = Poly::from_big_ints(f);
    let mut s = 1;
    'outer: while 2 * s <= modular.len() {
        let idx_sets = combinations(modular.len(), s);
        for set in idx_sets {
            let lc = current.primitive_integer().last().cloned().unwrap();
            let mut prod = vec![lc];
            for &i in &set {
                prod = m.mul(&prod, &modular[i]);
            }
            let cand = Poly::from_big_ints(&m.symmetric(&prod));
            let prim = Poly::from_big_ints(&cand.primitive_integer());
            if let Some(q) = current.div_exact(&prim) {
                out.push(prim.primitive_integer());
                current = Poly::from_big_ints(&q.primitive_integer());
                for &i in set.iter().rev() {
                    modular.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(current.primitive_integer());
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(start: &BigUint) -> BigUint {
    let mut c = start.clone();
    if c.is_even() {
        c += 1u32;
    }
    while !is_probable_prime(&c) {
        c += 2u32;
    }
    c
}

/// Arithmetic in `F_p[x]`, coefficients in `[0, p)`, lowest degree first.
struct ModP {
    p: BigInt,
}

type MP = Vec<BigInt>;

impl ModP {
    fn new(p: BigInt) -> Self {
        ModP { p }
    }

    fn norm(&self, mut v: MP) -> MP {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn reduce(&self, v: &[BigInt]) -> MP {
        self.norm(v.iter().map(|c| c.mod_floor(&self.p)).collect())
    }

    fn symmetric(&self, v: &[BigInt]) -> Vec<BigInt> {
        let half = &self.p >> 1;
        v.iter()
            .map(|c| if *c > half { c - &self.p } else { c.clone() })
            .collect()
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }

    fn monic(&self, a: &MP) -> MP {
        let inv = self.inv(a.last().unwrap());
        a.iter().map(|c| (c * &inv) % &self.p).collect()
    }

    fn sub(&self, a: &MP, b: &MP) -> MP {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.norm(
            (0..n)
                .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(&self.p))
                .collect(),
        )
    }

    fn mul(&self, a: &MP, b: &MP) -> MP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(&out)
    }

    fn derivative(&self, a: &MP) -> MP {
        self.reduce(
            &a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect::<Vec<_>>(),
        )
    }

    fn div_rem(&self, a: &MP, b: &MP) -> (MP, MP) {
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(&b[db]);
        let mut r = a.clone();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = (&r[k + db] * &inv).mod_floor(&self.p);
            if !c.is_zero() {
                for (i, bc) in b.iter().enumerate() {
                    r[k + i] = (&r[k + i] - &c * bc).mod_floor(&self.p);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.norm(q), self.norm(r))
    }

    fn rem(&self, a: &MP, b: &MP) -> MP {
        self.div_rem(a, b).1
    }

    fn gcd(&self, a: &MP, b: &MP) -> MP {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    fn powmod(&self, base: &MP, e: &BigUint, m: &MP) -> MP {
        let mut acc: MP = vec![BigInt::one()];
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    fn distinct_degree(&self, f: &MP) -> Vec<(MP, usize)> {
        let mut out = Vec::new();
        let x: MP = vec![BigInt::zero(), BigInt::one()];
        let p = self.p.to_biguint().unwrap();
        let mut f = f.clone();
        let mut h = x.clone();
        let mut d = 1;
        while f.len() > 2 * d {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    fn random_below(&self, rng: &mut ChaCha8Rng) -> BigInt {
        let words = (self.p.bits() / 32 + 2) as usize;
        let v: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        BigInt::from(BigUint::new(v)).mod_floor(&self.p)
    }

    fn equal_degree(&self, g: &MP, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<MP>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.clone());
            return;
        }
        let p = self.p.to_biguint().unwrap();
        let e = (p.pow(d as u32) - 1u32) >> 1;
        loop {
            let a = self.norm((0..n).map(|_| self.random_below(rng)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut b = self.powmod(&a, &e, g);
            b = self.sub(&b, &vec![BigInt::one()]);
            let u = self.gcd(&b, g);
            if u.len() > 1 && u.len() < g.len() {
                let v = self.monic(&self.div_rem(g, &u).0);
                self.equal_degree(&u, d, rng, out);
                self.equal_degree(&v, d, rng, out);
                return;
            }
        }
    }
}
