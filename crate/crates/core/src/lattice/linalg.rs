use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Reduced row echelon form of a rational matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows only, each with a leading 1 in its pivot column.
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` modulo the row span: returns the unique representative
    /// of `v + span` whose pivot coordinates vanish.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o -= &f * r;
            }
        }
        out
    }
}

pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> Rref {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (d, s) in row.iter_mut().zip(&prow) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref {
        rows: a,
        pivots,
        ncols,
    }
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Basis of `{x : <row, x> = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let e = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); ncols];
            x[f] = Rat::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Unique solution of `m x = rhs` for square nonsingular `m`; `None` if singular.
pub fn solve_square(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    assert_eq!(rhs.len(), n);
    let aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n, "solve_square needs a square matrix");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let e = rref(&aug, n + 1);
    if e.rank() != n || e.pivots.contains(&n) {
        return None;
    }
    Some(e.rows.iter().map(|r| r[n].clone()).collect())
}

/// Whether `v` is a rational combination of `rows`.
pub fn in_row_span(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
    let e = rref(rows, v.len());
    e.reduce(v).iter().all(Zero::is_zero)
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive rescaling of a rational vector to coprime integers. The zero
/// vector maps to the zero vector.
pub fn primitive_from_rats(v: &[Rat]) -> Vec<BigInt> {
    let l = super::denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rat {
        Rat::from_integer(x.into())
    }

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rat>> {
        m.iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot_rat(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_square_example() {
        // barycentric coordinates of (-1,-1,-1) in cone(v4, v5, v6) of the
        // six-ray fan: columns are generators
        let m = rows(&[&[0, -1, -2], &[-1, 0, -1], &[-1, -1, 0]]);
        let x = solve_square(&m, &[r(-1), r(-1), r(-1)]).unwrap();
        let third = Rat::new(1.into(), 3.into());
        assert_eq!(x, vec![&third * r(2), third.clone(), third]);
        let singular = rows(&[&[1, 2], &[2, 4]]);
        assert!(solve_square(&singular, &[r(1), r(1)]).is_none());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![
            Rat::new(1.into(), 2.into()),
            Rat::new((-3).into(), 4.into()),
            r(0),
        ];
        assert_eq!(
            primitive_from_rats(&v),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]
        );
    }

    #[test]
    fn span_membership() {
        let m = rows(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(in_row_span(&m, &[r(2), r(3), r(5)]));
        assert!(!in_row_span(&m, &[r(1), r(1), r(1)]));
    }
}
