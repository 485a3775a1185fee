//! Incremental double description over the integers.
//!
//! Rays and lineality generators are kept as primitive integer vectors. The
//! constraints are inserted one at a time in lexicographic order; two rays on
//! opposite sides of the new hyperplane are combined only when they span a
//! two-dimensional face, decided by the rank of the processed constraints
//! active on both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::{rank, Rat};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

/// `s * v - t * w`, made primitive.
fn combine(s: &BigInt, v: &[BigInt], t: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().zip(w).map(|(x, y)| s * x - t * y).collect();
    make_primitive(&mut out);
    out
}

pub(super) struct Generators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

/// Generators of `{x : <a, x> >= 0 for a in rows}`. `rows` must already be
/// normalized (nonzero, primitive, deduplicated, sorted).
pub(super) fn double_description(dim: usize, rows: &[Vec<BigInt>]) -> Generators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<&Vec<BigInt>> = Vec::new();

    for a in rows {
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(k);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                s0 = -s0;
            }
            for l in lineality.iter_mut().chain(rays.iter_mut()) {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = combine(&s0, l, &s, &l0);
                }
            }
            rays.push(l0);
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let effective_dim = dim - lineality.len();
            let mut next: Vec<Vec<BigInt>> = Vec::new();
            let pos: Vec<usize> = (0..rays.len())
                .filter(|&i| values[i].is_positive())
                .collect();
            let neg: Vec<usize> = (0..rays.len())
                .filter(|&i| values[i].is_negative())
                .collect();
            for (i, r) in rays.iter().enumerate() {
                if !values[i].is_negative() {
                    next.push(r.clone());
                }
            }
            if !pos.is_empty() && !neg.is_empty() {
                let zero_sets: Vec<Vec<bool>> = rays
                    .iter()
                    .map(|r| processed.iter().map(|b| dot(b, r).is_zero()).collect())
                    .collect();
                for &p in &pos {
                    for &n in &neg {
                        if adjacent(&processed, &zero_sets[p], &zero_sets[n], effective_dim) {
                            next.push(combine(&values[p], &rays[n], &values[n], &rays[p]));
                        }
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }

    Generators { rays, lineality }
}

fn adjacent(processed: &[&Vec<BigInt>], zp: &[bool], zn: &[bool], effective_dim: usize) -> bool {
    if effective_dim < 2 {
        return false;
    }
    let common: Vec<Vec<Rat>> = processed
        .iter()
        .enumerate()
        .filter(|&(i, _)| zp[i] && zn[i])
        .map(|(_, b)| b.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let target = effective_dim - 2;
    if common.len() < target {
        return false;
    }
    let ncols = processed.first().map_or(0, |b| b.len());
    rank(&common, ncols) == target
}
