use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{abs_cmp, IntMatrix};

/// Result of a Smith normal form computation: `left * m * right` is diagonal
/// with entries `diagonal`, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries, nonnegative, zeros last.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && *d > &BigInt::from(1))
            .cloned()
            .collect()
    }

    /// Rank of the cokernel `Z^rows / image(m)`.
    pub fn cokernel_rank(&self) -> usize {
        self.left.nrows() - self.rank()
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// `row[dst] -= q * row[src]`
fn sub_row(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let s = a[src].clone();
    for (d, x) in a[dst].iter_mut().zip(&s) {
        *d -= q * x;
    }
}

/// `col[dst] -= q * col[src]`
fn sub_col(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

/// Smith normal form by elementary row and column operations, always moving
/// the entry of smallest absolute value into pivot position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a = m.rows().to_vec();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);

    for t in 0..nr.min(nc) {
        loop {
            let pivot = (t..nr)
                .flat_map(|i| (t..nc).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| abs_cmp(&a[i][j], &a[k][l]));
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != t {
                a.swap(pi, t);
                u.rows_mut().swap(pi, t);
            }
            if pj != t {
                swap_cols(&mut a, pj, t);
                swap_cols(v.rows_mut(), pj, t);
            }

            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(&mut a, i, t, &q);
                sub_row(u.rows_mut(), i, t, &q);
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                sub_col(&mut a, j, t, &q);
                sub_col(v.rows_mut(), j, t, &q);
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            // divisibility: fold an offending row into the pivot row
            let offending =
                (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            if let Some(i) = offending {
                let minus_one = BigInt::from(-1);
                sub_row(&mut a, t, i, &minus_one);
                sub_row(u.rows_mut(), t, i, &minus_one);
                continue;
            }

            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u.rows_mut()[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            break;
        }
    }

    let diagonal = (0..nr.min(nc)).map(|i| a[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left: u,
        right: v,
    }
}
