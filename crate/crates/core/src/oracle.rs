//! Brute-force reference implementations used to cross-check the double
//! description code. They share no linear algebra with the rest of the
//! crate and are exponential in the number of rows.

use num_traits::{Signed, Zero};

use crate::lattice::Rat;
use crate::polyhedra::{HCone, VCone};

/// Basis of `{x : rows x = 0}` by plain Gauss-Jordan elimination.
fn kernel(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rat::zero(); n];
            x[free] = Rat::from_integer(1.into());
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][free].clone();
            }
            x
        })
        .collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn integer_scaled(v: &[Rat]) -> Vec<num_bigint::BigInt> {
    let den = v.iter().fold(num_bigint::BigInt::from(1), |l, x| {
        num_integer::Integer::lcm(&l, x.denom())
    });
    v.iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Extreme rays and lineality of `{x : A x >= 0}` by enumerating every
/// choice of tight rows. The result is in the same canonical form as
/// [`crate::polyhedra::dd_convert`].
pub fn extreme_rays(c: &HCone) -> VCone {
    let n = c.dim();
    let rows = c.rows();
    let lineality = kernel(rows, n);
    let pointed_dim = n - lineality.len();
    let mut rays = Vec::new();
    if pointed_dim > 0 {
        // rays of C intersected with the orthogonal complement of L
        for tight in subsets(rows.len(), pointed_dim - 1) {
            let mut eqs: Vec<Vec<Rat>> = tight.iter().map(|&i| rows[i].clone()).collect();
            eqs.extend(lineality.iter().cloned());
            let k = kernel(&eqs, n);
            if k.len() != 1 {
                continue;
            }
            for sign in [1, -1] {
                let x: Vec<Rat> = k[0]
                    .iter()
                    .map(|t| t * Rat::from_integer(sign.into()))
                    .collect();
                if rows.iter().all(|r| !dot(r, &x).is_negative()) {
                    rays.push(integer_scaled(&x));
                }
            }
        }
    }
    let lineality = lineality.iter().map(|l| integer_scaled(l)).collect();
    VCone::new(n, rays, lineality)
}

/// Vertices of `{x : a_i x >= b_i}` by solving every square subsystem,
/// sorted and deduplicated.
pub fn vertices(dim: usize, inequalities: &[(Vec<Rat>, Rat)]) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for tight in subsets(inequalities.len(), dim) {
        // homogenize: (a, -b) . (x, 1) = 0 on tight rows
        let eqs: Vec<Vec<Rat>> = tight
            .iter()
            .map(|&i| {
                let (a, b) = &inequalities[i];
                let mut row = a.clone();
                row.push(-b.clone());
                row
            })
            .collect();
        let k = kernel(&eqs, dim + 1);
        if k.len() != 1 || k[0][dim].is_zero() {
            continue;
        }
        let t = k[0][dim].clone();
        let x: Vec<Rat> = k[0][..dim].iter().map(|v| v / &t).collect();
        if inequalities.iter().all(|(a, b)| dot(a, &x) >= *b) {
            out.push(x);
        }
    }
    out.sort();
    out.dedup();
    out
}
