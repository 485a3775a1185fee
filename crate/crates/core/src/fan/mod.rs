//! Complete simplicial fans.
//!
//! A [`Fan`] is only ever obtained through [`validate`], so every value of the
//! type satisfies the fan axioms: primitive distinct rays, full-dimensional
//! simplicial maximal cones, and pairwise intersections that are common
//! faces.

mod file;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    determinant, dot_rat, is_primitive, nullspace, primitive_from_rats, smith_normal_form,
    solve_square, IntMatrix, LatVec, LatticeError, Rat,
};
use crate::polyhedra::{dd_convert, HCone};

pub(crate) use file::int_value;
pub use file::{FanFile, FanFileError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fan dimension must be positive")]
    ZeroDimension,
    #[error("fan has no maximal cones")]
    NoCones,
    #[error("ray {ray} has length {found}, expected {expected}")]
    RayDimension {
        ray: usize,
        expected: usize,
        found: usize,
    },
    #[error("ray {ray} is the zero vector")]
    ZeroRay { ray: usize },
    #[error("ray {ray} not primitive")]
    NotPrimitive { ray: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} has {found} rays, expected {expected}")]
    ConeSize {
        cone: usize,
        expected: usize,
        found: usize,
    },
    #[error("cone {cone} refers to ray {index}, which does not exist")]
    RayIndexOutOfRange { cone: usize, index: usize },
    #[error("cone {cone} lists ray {index} twice")]
    RepeatedIndex { cone: usize, index: usize },
    #[error("cone {cone} is not full-dimensional (generator determinant 0)")]
    DegenerateCone { cone: usize },
    #[error("cones {first} and {second} are identical")]
    DuplicateCone { first: usize, second: usize },
    #[error("ray {ray} lies in no maximal cone")]
    UnusedRay { ray: usize },
    #[error("cones {first} and {second} do not meet in a face")]
    NotAFace { first: usize, second: usize },
    #[error("fan not complete")]
    NotComplete,
    #[error("Picard rank formula requires smooth complete fan")]
    NotSmoothComplete,
    #[error("subdivision vector has length {found}, expected {expected}")]
    VectorDimension { expected: usize, found: usize },
    #[error("subdivision vector is not primitive")]
    VectorNotPrimitive,
    #[error("subdivision vector is already ray {ray}")]
    AlreadyRay { ray: usize },
    #[error("subdivision vector is not in the support of the fan")]
    NotInSupport,
    #[error("Picard rank cross-check failed: formula {formula}, Smith form {smith}")]
    PicardMismatch { formula: usize, smith: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Unvalidated fan data: rays and maximal cones as ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFan {
    pub dim: usize,
    pub rays: Vec<LatVec>,
    pub max_cones: Vec<Vec<usize>>,
}

impl RawFan {
    /// Convenience constructor from machine integers.
    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Self {
        RawFan {
            dim,
            rays: rays.iter().map(|r| LatVec::from(*r)).collect(),
            max_cones: max_cones.iter().map(|c| c.to_vec()).collect(),
        }
    }
}

/// A validated complete-or-not simplicial fan with full-dimensional maximal
/// cones.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatVec>,
    max_cones: Vec<Vec<usize>>,
    /// `duals[c][j]` is the inward facet normal of cone `c` opposite its
    /// `j`-th generator, scaled so that it evaluates to 1 on that generator.
    duals: Vec<Vec<Vec<Rat>>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

/// A codimension-one cone shared by two maximal cones, with the linear
/// relation among the `n + 1` rays involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub shared: Vec<usize>,
    pub left_cone: usize,
    pub right_cone: usize,
    pub left_opposite: usize,
    pub right_opposite: usize,
    /// One coefficient per ray of the fan, coprime integers, supported on
    /// `shared` and the two opposite rays, positive on the opposite rays,
    /// with `sum c_i v_i = 0`.
    pub relation: Vec<BigInt>,
}

/// Invariant factors and free rank of `Z^rays / M`, the cokernel of the
/// character map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn validate(raw: RawFan) -> Result<Fan, FanError> {
    let RawFan {
        dim,
        rays,
        max_cones,
    } = raw;
    if dim == 0 {
        return Err(FanError::ZeroDimension);
    }
    for (i, r) in rays.iter().enumerate() {
        if r.dim() != dim {
            return Err(FanError::RayDimension {
                ray: i,
                expected: dim,
                found: r.dim(),
            });
        }
        if r.is_zero() {
            return Err(FanError::ZeroRay { ray: i });
        }
        if !is_primitive(r) {
            return Err(FanError::NotPrimitive { ray: i });
        }
        if let Some(j) = rays[..i].iter().position(|s| s == r) {
            return Err(FanError::DuplicateRay {
                first: j,
                second: i,
            });
        }
    }
    if max_cones.is_empty() {
        return Err(FanError::NoCones);
    }

    let mut cones = Vec::with_capacity(max_cones.len());
    let mut duals = Vec::with_capacity(max_cones.len());
    for (c, cone) in max_cones.into_iter().enumerate() {
        if cone.len() != dim {
            return Err(FanError::ConeSize {
                cone: c,
                expected: dim,
                found: cone.len(),
            });
        }
        if let Some(&index) = cone.iter().find(|&&i| i >= rays.len()) {
            return Err(FanError::RayIndexOutOfRange { cone: c, index });
        }
        let mut sorted = cone.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(FanError::RepeatedIndex {
                cone: c,
                index: w[0],
            });
        }
        if let Some(first) = cones.iter().position(|k: &Vec<usize>| *k == sorted) {
            return Err(FanError::DuplicateCone { first, second: c });
        }
        let gens = IntMatrix::from_lat_rows(
            &sorted.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(),
            dim,
        )?;
        if determinant(&gens)?.is_zero() {
            return Err(FanError::DegenerateCone { cone: c });
        }
        duals.push(dual_basis(&gens));
        cones.push(sorted);
    }
    if let Some(ray) = (0..rays.len()).find(|i| !cones.iter().any(|c| c.contains(i))) {
        return Err(FanError::UnusedRay { ray });
    }

    let fan = Fan {
        dim,
        rays,
        max_cones: cones,
        duals,
    };
    for i in 0..fan.max_cones.len() {
        for j in i + 1..fan.max_cones.len() {
            if !fan.meet_in_face(i, j) {
                return Err(FanError::NotAFace {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(fan)
}

/// Columns of the inverse of the generator matrix (generators as rows).
fn dual_basis(gens: &IntMatrix) -> Vec<Vec<Rat>> {
    let n = gens.nrows();
    let m = gens.to_rat_rows();
    (0..n)
        .map(|j| {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            solve_square(&m, &e).expect("generator matrix is nonsingular")
        })
        .collect()
}

fn generic_point(dim: usize) -> Vec<Rat> {
    let base: [i64; 3] = [1, 10_000_000 + 19, 10_000_000_000_000 + 37];
    (0..dim)
        .map(|i| match base.get(i) {
            Some(&x) => Rat::from_integer(x.into()),
            None => {
                let big = BigInt::from(10).pow(7 + 6 * i as u32) + BigInt::from(19 + 18 * i);
                Rat::from_integer(big)
            }
        })
        .collect()
}

impl Fan {
    pub fn new(
        dim: usize,
        rays: Vec<LatVec>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        validate(RawFan {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatVec {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Maximal cones, each a sorted list of ray indices.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn to_raw(&self) -> RawFan {
        RawFan {
            dim: self.dim,
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
        }
    }

    /// Inward facet normals of maximal cone `c`; the `j`-th evaluates to 1 on
    /// the cone's `j`-th generator and to 0 on the others.
    pub fn facet_normals(&self, c: usize) -> &[Vec<Rat>] {
        &self.duals[c]
    }

    /// Coordinates of `x` in the generator basis of maximal cone `c`, in the
    /// order of the cone's sorted ray indices.
    pub fn cone_coordinates(&self, c: usize, x: &[Rat]) -> Vec<Rat> {
        self.duals[c].iter().map(|d| dot_rat(d, x)).collect()
    }

    /// Whether `x` lies in maximal cone `c`.
    pub fn cone_contains(&self, c: usize, x: &[Rat]) -> bool {
        self.duals[c].iter().all(|d| !dot_rat(d, x).is_negative())
    }

    /// Index of a maximal cone containing `x`, if any.
    pub fn find_cone(&self, x: &[Rat]) -> Option<usize> {
        (0..self.max_cones.len()).find(|&c| self.cone_contains(c, x))
    }

    /// Whether the cone generated by the given rays is a face of some
    /// maximal cone.
    pub fn has_cone(&self, rays: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| rays.iter().all(|r| c.contains(r)))
    }

    fn generator_matrix(&self, c: usize) -> IntMatrix {
        let gens: Vec<LatVec> = self.max_cones[c]
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        IntMatrix::from_lat_rows(&gens, self.dim).expect("rays have fan dimension")
    }

    fn meet_in_face(&self, i: usize, j: usize) -> bool {
        let rows: Vec<Vec<Rat>> = self.duals[i]
            .iter()
            .chain(&self.duals[j])
            .cloned()
            .collect();
        let inter = dd_convert(&HCone::new(self.dim, rows).expect("dual rows have fan dimension"));
        if !inter.lineality().is_empty() {
            return false;
        }
        let mut shared: Vec<Vec<BigInt>> = self.max_cones[i]
            .iter()
            .filter(|r| self.max_cones[j].contains(r))
            .map(|&r| self.rays[r].coords().to_vec())
            .collect();
        shared.sort();
        inter.extreme_rays() == shared.as_slice()
    }

    /// Sorted `(n-1)`-subsets of maximal cones, each with the cones (and the
    /// ray opposite the facet in each) that contain it.
    fn facet_incidence(&self) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
        let mut map: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for (k, &opp) in cone.iter().enumerate() {
                let mut facet = cone.clone();
                facet.remove(k);
                map.entry(facet).or_default().push((c, opp));
            }
        }
        map
    }

    /// Every maximal cone is generated by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        (0..self.max_cones.len()).all(|c| {
            determinant(&self.generator_matrix(c))
                .expect("square generator matrix")
                .abs()
                .is_one()
        })
    }

    /// The support is all of `R^n`: every facet of a maximal cone is shared
    /// by exactly two maximal cones and a fixed generic point lies in some
    /// maximal cone.
    pub fn is_complete(&self) -> bool {
        if self.facet_incidence().values().any(|v| v.len() != 2) {
            return false;
        }
        let mut p = generic_point(self.dim);
        // the point must avoid every hyperplane spanned by a facet
        while self
            .duals
            .iter()
            .flatten()
            .any(|normal| dot_rat(normal, &p).is_zero())
        {
            p[self.dim - 1] += Rat::one();
        }
        self.find_cone(&p).is_some()
    }

    /// One wall per pair of adjacent maximal cones, ordered by the pair of
    /// cone indices.
    pub fn walls(&self) -> Result<Vec<Wall>, FanError> {
        let mut walls = Vec::new();
        for (shared, owners) in self.facet_incidence() {
            let [(lc, lo), (rc, ro)] = owners[..] else {
                return Err(FanError::NotComplete);
            };
            let involved: Vec<usize> = shared.iter().copied().chain([lo, ro]).collect();
            // columns are the involved rays
            let m: Vec<Vec<Rat>> = (0..self.dim)
                .map(|k| {
                    involved
                        .iter()
                        .map(|&r| Rat::from_integer(self.rays[r].coords()[k].clone()))
                        .collect()
                })
                .collect();
            let kernel = nullspace(&m, involved.len());
            debug_assert_eq!(kernel.len(), 1);
            let mut coeffs = primitive_from_rats(&kernel[0]);
            let n = involved.len();
            if coeffs[n - 2].is_negative() {
                coeffs.iter_mut().for_each(|x| *x = -x.clone());
            }
            let mut relation = vec![BigInt::zero(); self.rays.len()];
            for (&r, c) in involved.iter().zip(coeffs) {
                relation[r] = c;
            }
            walls.push(Wall {
                shared,
                left_cone: lc,
                right_cone: rc,
                left_opposite: lo,
                right_opposite: ro,
                relation,
            });
        }
        walls.sort_by_key(|w| (w.left_cone, w.right_cone));
        Ok(walls)
    }

    /// Star subdivision at the primitive vector `w`: every maximal cone
    /// containing `w` is replaced by the joins of `w` with those of its facets
    /// that do not contain the minimal face through `w`. The new ray gets the
    /// next index.
    pub fn star_subdivision(&self, w: &LatVec) -> Result<Fan, FanError> {
        if w.dim() != self.dim {
            return Err(FanError::VectorDimension {
                expected: self.dim,
                found: w.dim(),
            });
        }
        if w.is_zero() {
            return Err(LatticeError::ZeroVector.into());
        }
        if !is_primitive(w) {
            return Err(FanError::VectorNotPrimitive);
        }
        if let Some(ray) = self.rays.iter().position(|r| r == w) {
            return Err(FanError::AlreadyRay { ray });
        }
        let x = w.to_rats();
        let new_index = self.rays.len();
        let mut cones = Vec::new();
        let mut hit = false;
        for (c, cone) in self.max_cones.iter().enumerate() {
            let lambda = self.cone_coordinates(c, &x);
            if lambda.iter().any(Signed::is_negative) {
                cones.push(cone.clone());
                continue;
            }
            hit = true;
            for (k, l) in lambda.iter().enumerate() {
                if l.is_positive() {
                    let mut next = cone.clone();
                    next[k] = new_index;
                    next.sort_unstable();
                    cones.push(next);
                }
            }
        }
        if !hit {
            return Err(FanError::NotInSupport);
        }
        let mut rays = self.rays.clone();
        rays.push(w.clone());
        Fan::new(self.dim, rays, cones)
    }

    /// Ray matrix: one row per ray. Its columns span the principal divisors.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_lat_rows(&self.rays, self.dim).expect("rays have fan dimension")
    }

    /// `Z^rays / M` via Smith normal form of the ray matrix.
    pub fn class_group(&self) -> ClassGroup {
        let s = smith_normal_form(&self.ray_matrix());
        ClassGroup {
            free_rank: s.cokernel_rank(),
            torsion: s.torsion(),
        }
    }

    /// Number of rays minus the dimension, for smooth complete fans,
    /// cross-checked against the rank of the class group.
    pub fn picard_rank(&self) -> Result<usize, FanError> {
        if !self.is_smooth() || !self.is_complete() {
            return Err(FanError::NotSmoothComplete);
        }
        let formula = self.rays.len() - self.dim;
        let cl = self.class_group();
        if cl.free_rank != formula || !cl.torsion.is_empty() {
            return Err(FanError::PicardMismatch {
                formula,
                smith: cl.free_rank,
            });
        }
        Ok(formula)
    }

    /// The same fan with rays sorted lexicographically and cones reindexed
    /// and sorted. Two fans are equal up to ray order iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> Fan {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut new_index = vec![0; self.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut k: Vec<usize> = c.iter().map(|&i| new_index[i]).collect();
                k.sort_unstable();
                k
            })
            .collect();
        cones.sort();
        Fan::new(self.dim, rays, cones).expect("reindexing preserves validity")
    }

    pub fn same_up_to_ray_order(&self, other: &Fan) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_raw() -> RawFan {
        RawFan::from_i64(
            3,
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[0, -1, -1],
                &[-1, 0, -1],
                &[-2, -1, 0],
            ],
            &[
                &[0, 1, 2],
                &[0, 1, 3],
                &[1, 3, 4],
                &[1, 2, 4],
                &[2, 4, 5],
                &[0, 2, 5],
                &[0, 3, 5],
                &[3, 4, 5],
            ],
        )
    }

    fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<LatVec> = (0..n).map(|i| LatVec::unit(n, i)).collect();
        rays.push(LatVec::from(vec![-1; n]));
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn sigma_is_valid_complete_and_singular() {
        let f = validate(sigma_raw()).unwrap();
        // <v4,v5,v6> has determinant -3
        assert!(!f.is_smooth());
        assert!(f.is_complete());
        assert_eq!(f.walls().unwrap().len(), 12);
    }

    #[test]
    fn non_primitive_ray_rejected() {
        let mut raw = sigma_raw();
        raw.rays[0] = LatVec::from([2, 0, 0]);
        let err = validate(raw).unwrap_err();
        assert_eq!(err, FanError::NotPrimitive { ray: 0 });
        assert_eq!(err.to_string(), "ray 0 not primitive");
    }

    #[test]
    fn overlapping_cones_rejected() {
        let raw = RawFan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
            &[&[0, 1, 2], &[0, 1, 3]],
        );
        let err = validate(raw).unwrap_err();
        assert_eq!(
            err,
            FanError::NotAFace {
                first: 0,
                second: 1
            }
        );
        assert_eq!(err.to_string(), "cones 0 and 1 do not meet in a face");
    }

    #[test]
    fn structural_errors() {
        let raw = RawFan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 2]]);
        assert_eq!(
            validate(raw).unwrap_err(),
            FanError::RayIndexOutOfRange { cone: 0, index: 2 }
        );
        let raw = RawFan::from_i64(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]);
        assert_eq!(
            validate(raw).unwrap_err(),
            FanError::DegenerateCone { cone: 0 }
        );
        let raw = RawFan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1]]);
        assert_eq!(validate(raw).unwrap_err(), FanError::UnusedRay { ray: 2 });
        let raw = RawFan::from_i64(2, &[&[1, 0], &[1, 0]], &[&[0, 1]]);
        assert_eq!(
            validate(raw).unwrap_err(),
            FanError::DuplicateRay {
                first: 0,
                second: 1
            }
        );
        let raw = RawFan::from_i64(2, &[&[1, 0], &[0, 1], &[0, 0]], &[&[0, 1]]);
        assert_eq!(validate(raw).unwrap_err(), FanError::ZeroRay { ray: 2 });
        let raw = RawFan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1, 1]]);
        assert!(matches!(
            validate(raw).unwrap_err(),
            FanError::ConeSize { .. }
        ));
    }

    #[test]
    fn smoothness() {
        assert!(projective_space(3).is_smooth());
        let raw = RawFan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -2, -2]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        );
        let wp = validate(raw).unwrap();
        assert!(wp.is_complete());
        assert!(!wp.is_smooth());
    }

    #[test]
    fn completeness() {
        assert!(projective_space(3).is_complete());
        let mut raw = sigma_raw();
        raw.max_cones.pop();
        assert!(!validate(raw).unwrap().is_complete());
        let mut rays = Vec::new();
        for i in 0..3 {
            rays.push(LatVec::unit(3, i));
            rays.push(LatVec::unit(3, i).neg());
        }
        let cones = (0..8)
            .map(|m: usize| (0..3).map(|i| 2 * i + ((m >> i) & 1)).collect())
            .collect();
        let cube = Fan::new(3, rays, cones).unwrap();
        assert!(cube.is_complete());
        assert!(cube.is_smooth());
        assert_eq!(cube.picard_rank().unwrap(), 3);
    }

    #[test]
    fn incomplete_fan_has_no_walls() {
        let mut raw = sigma_raw();
        raw.max_cones.pop();
        assert_eq!(validate(raw).unwrap().walls(), Err(FanError::NotComplete));
    }

    #[test]
    fn wall_relations_of_sigma() {
        let f = validate(sigma_raw()).unwrap();
        let walls = f.walls().unwrap();
        // between <v1,v2,v4> and <v2,v4,v5>: v1 + v5 - v2 - v4 = 0
        let w = walls
            .iter()
            .find(|w| w.shared == vec![1, 3] && w.left_cone == 1 && w.right_cone == 2)
            .unwrap();
        assert_eq!(w.relation, ints(&[1, -1, 0, -1, 1, 0]));
        // between <v2,v3,v5> and <v3,v5,v6>: v2 + v6 - 2 v3 - 2 v5 = 0
        let w = walls.iter().find(|w| w.shared == vec![2, 4]).unwrap();
        assert_eq!(w.relation, ints(&[0, 1, -2, 0, -2, 1]));
        for w in &walls {
            assert!(w.relation[w.left_opposite].is_positive());
            assert!(w.relation[w.right_opposite].is_positive());
        }
    }

    #[test]
    fn projective_line_wall() {
        let f = Fan::new(
            1,
            vec![LatVec::from([1]), LatVec::from([-1])],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        assert!(f.is_complete());
        let walls = f.walls().unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].relation, ints(&[1, 1]));
    }

    #[test]
    fn subdivision_of_sigma() {
        let sigma = validate(sigma_raw()).unwrap();
        let x = LatVec::from([-1, -1, -1]).to_rats();
        let third = Rat::new(1.into(), 3.into());
        assert_eq!(
            sigma.cone_coordinates(7, &x),
            vec![&third + &third, third.clone(), third]
        );
        let once = sigma.star_subdivision(&LatVec::from([-1, -1, -1])).unwrap();
        assert_eq!(once.max_cones().len(), 10);
        let twice = once.star_subdivision(&LatVec::from([-2, -1, -1])).unwrap();
        assert_eq!(twice.max_cones().len(), 12);
        assert!(twice.is_smooth() && twice.is_complete());
        assert_eq!(twice.picard_rank().unwrap(), 5);
    }

    #[test]
    fn subdivision_of_plane() {
        let p2 = projective_space(2);
        let s = p2.star_subdivision(&LatVec::from([1, 1])).unwrap();
        assert_eq!(s.max_cones().len(), 4);
        assert!(!s.has_cone(&[0, 1]));
        assert!(s.has_cone(&[0, 3]) && s.has_cone(&[1, 3]));
    }

    #[test]
    fn subdivision_errors() {
        let p2 = projective_space(2);
        assert_eq!(
            p2.star_subdivision(&LatVec::from([2, 2])),
            Err(FanError::VectorNotPrimitive)
        );
        assert_eq!(
            p2.star_subdivision(&LatVec::from([1, 0])),
            Err(FanError::AlreadyRay { ray: 0 })
        );
        assert_eq!(
            p2.star_subdivision(&LatVec::from([0, 0])),
            Err(FanError::Lattice(LatticeError::ZeroVector))
        );
        let half = Fan::new(
            2,
            vec![LatVec::from([1, 0]), LatVec::from([0, 1])],
            vec![vec![0, 1]],
        )
        .unwrap();
        assert_eq!(
            half.star_subdivision(&LatVec::from([-1, 1])),
            Err(FanError::NotInSupport)
        );
    }

    #[test]
    fn picard_rank_requirements() {
        assert_eq!(projective_space(3).picard_rank().unwrap(), 1);
        let raw = RawFan::from_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -2, -2]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
        );
        let wp = validate(raw).unwrap();
        assert_eq!(wp.picard_rank(), Err(FanError::NotSmoothComplete));
        assert_eq!(wp.class_group().free_rank, 1);
    }

    #[test]
    fn canonical_form_ignores_ray_order() {
        let f = validate(sigma_raw()).unwrap();
        let mut raw = sigma_raw();
        raw.rays.swap(0, 5);
        for c in raw.max_cones.iter_mut() {
            for i in c.iter_mut() {
                *i = match *i {
                    0 => 5,
                    5 => 0,
                    k => k,
                };
            }
        }
        let g = validate(raw).unwrap();
        assert_ne!(f, g);
        assert!(f.same_up_to_ray_order(&g));
    }
}
