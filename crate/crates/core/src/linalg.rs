//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Row-reduced echelon form; returns the reduced rows and the pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    rref(rows, first.len()).1.len()
}

/// Unique solution of the square system `a x = b`, or `None` if singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = rref(&aug, n + 1);
    if piv.len() != n || piv.iter().any(|&c| c == n) {
        return None;
    }
    Some(red.iter().map(|row| row[n].clone()).collect())
}

/// A basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (red, piv) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in red.iter().zip(&piv) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}
