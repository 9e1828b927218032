//! Smith normal form over Q[x].

use num_traits::Zero;

use crate::linalg::{Matrix, Ring};
use crate::poly::Poly;

fn min_degree_entry(
    a: &Matrix<Poly>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by_key(|&(i, j)| a[(i, j)].degree())
}

fn swap_rows(a: &mut Matrix<Poly>, r: usize, s: usize) {
    if r == s {
        return;
    }
    for j in 0..a.ncols() {
        let tmp = a[(r, j)].clone();
        a[(r, j)] = a[(s, j)].clone();
        a[(s, j)] = tmp;
    }
}

fn swap_cols(a: &mut Matrix<Poly>, c: usize, d: usize) {
    if c == d {
        return;
    }
    for i in 0..a.nrows() {
        let tmp = a[(i, c)].clone();
        a[(i, c)] = a[(i, d)].clone();
        a[(i, d)] = tmp;
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …`, each monic.
///
/// Pivots are chosen of minimal degree; entries are reduced by Euclidean
/// division until the pivot divides its row, its column and the remaining
/// block.
pub fn invariant_factors(m: &Matrix<Poly>) -> Vec<Poly> {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let block = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = min_degree_entry(&a, block) else {
            break;
        };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = a[(i, t)].div_rem(&a[(t, t)]);
                for j in t..cols {
                    let v = a[(i, j)].sub_ref(&q.mul_ref(&a[(t, j)]));
                    a[(i, j)] = v;
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = a[(t, j)].div_rem(&a[(t, t)]);
                for i in t..rows {
                    let v = a[(i, j)].sub_ref(&q.mul_ref(&a[(i, t)]));
                    a[(i, j)] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                let cross = (t..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_degree_entry(&a, cross).expect("pivot is nonzero");
                swap_rows(&mut a, t, pi);
                swap_cols(&mut a, t, pj);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].div_rem(&a[(t, t)]).1.is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[(t, j)].add_ref(&a[(i, j)]);
                        a[(t, j)] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[(t, t)].monic());
        t += 1;
    }
    diag
}
