//! Gaussian elimination over Q.

use num_traits::{One, Zero};

use super::rat::Rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace of `m` (each vector has `cols` entries).
pub fn nullspace(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m x = b`, free variables set to zero.
pub fn solve_affine(m: &[Vec<Rat>], b: &[Rat], cols: usize) -> Option<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.resize(cols, Rat::zero());
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = a[i][cols].clone();
    }
    Some(x)
}
