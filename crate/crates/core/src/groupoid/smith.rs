//! Integer Smith normal form over arbitrary precision integers.
//!
//! Only the column transform is tracked: for a relator matrix `R` with
//! `U R V = D`, a row vector `x` maps into `Z^n / rowspace(R)` as `x V`
//! reduced coordinate-wise modulo the diagonal of `D`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// `ncols` entries; `diagonal[j]` is zero past the rank of the matrix.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `ncols x ncols` column transform `V`.
    pub column_transform: Vec<Vec<BigInt>>,
}

pub fn smith_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let nrows = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder now sits in row or column t
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                swap_cols(&mut v, t, pj);
                continue;
            }
            // divisibility of the remaining block
            let bad_row = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }

    let diagonal = (0..ncols)
        .map(|j| if j < nrows { a[j][j].clone() } else { BigInt::zero() })
        .collect();
    SmithForm { diagonal, column_transform: v }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, cur: &BigInt| !x.is_zero() && (cur.is_zero() || x.abs() < cur.abs());
    for i in t..a.len() {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

/// `row[dst] -= q * row[src]`
fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(src_row) {
        *x -= q * s;
    }
}

/// `col[dst] -= q * col[src]`
fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}
