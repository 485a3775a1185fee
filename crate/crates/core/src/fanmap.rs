//! Lattice maps compatible with fans, i.e. toric morphisms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::divisor::{cartier_multiple, local_linear_data, Divisor, DivisorError};
use crate::fan::Fan;
use crate::lattice::{
    dot_rat, nullspace, primitive_from_rats, smith_normal_form, IntMatrix, LatVec, Rat,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("matrix is {rows}x{cols} but the fans need {target_dim}x{source_dim}")]
    Dimension {
        rows: usize,
        cols: usize,
        source_dim: usize,
        target_dim: usize,
    },
    #[error("source cone {cone} is not mapped into any target cone")]
    Incompatible { cone: usize },
    #[error("weighted projective configuration is degenerate: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// An integer matrix (target dim x source dim) carrying every maximal cone
/// of `source` into a cone of `target`.
#[derive(Clone, Debug)]
pub struct FanMap {
    matrix: IntMatrix,
    source: Fan,
    target: Fan,
}

fn check_dims(m: &IntMatrix, src: &Fan, dst: &Fan) -> Result<(), MapError> {
    if m.nrows() != dst.dim() || m.ncols() != src.dim() {
        return Err(MapError::Dimension {
            rows: m.nrows(),
            cols: m.ncols(),
            source_dim: src.dim(),
            target_dim: dst.dim(),
        });
    }
    Ok(())
}

fn image(m: &IntMatrix, v: &LatVec) -> Vec<Rat> {
    m.apply(v).expect("dimensions checked").to_rats()
}

/// First source cone whose image lies in no target cone.
fn incompatible_cone(m: &IntMatrix, src: &Fan, dst: &Fan) -> Option<usize> {
    (0..src.max_cones().len()).find(|&c| {
        let images: Vec<Vec<Rat>> = src.max_cones()[c]
            .iter()
            .map(|&i| image(m, src.ray(i)))
            .collect();
        !(0..dst.max_cones().len()).any(|t| images.iter().all(|w| dst.cone_contains(t, w)))
    })
}

/// Every maximal cone of `src` maps into some cone of `dst`.
pub fn is_fan_map(m: &IntMatrix, src: &Fan, dst: &Fan) -> Result<bool, MapError> {
    check_dims(m, src, dst)?;
    Ok(incompatible_cone(m, src, dst).is_none())
}

/// `src` refines `dst`: the identity is a fan map and the supports agree.
///
/// Support equality is checked cone by cone: the source cones inside each
/// target cone must be nonempty and form a pseudomanifold whose unpaired
/// facets lie on the boundary of the target cone.
pub fn is_refinement(src: &Fan, dst: &Fan) -> Result<bool, MapError> {
    let id = IntMatrix::identity(src.dim());
    if !is_fan_map(&id, src, dst)? {
        return Ok(false);
    }
    for t in 0..dst.max_cones().len() {
        let inside: Vec<&Vec<usize>> = src
            .max_cones()
            .iter()
            .filter(|c| {
                c.iter()
                    .all(|&i| dst.cone_contains(t, &src.ray(i).to_rats()))
            })
            .collect();
        if inside.is_empty() {
            return Ok(false);
        }
        let mut facets: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for cone in &inside {
            for k in 0..cone.len() {
                let mut f = (*cone).clone();
                f.remove(k);
                *facets.entry(f).or_default() += 1;
            }
        }
        for (facet, count) in facets {
            if count == 2 {
                continue;
            }
            let on_boundary = dst.facet_normals(t).iter().any(|normal| {
                facet
                    .iter()
                    .all(|&i| dot_rat(normal, &src.ray(i).to_rats()).is_zero())
            });
            if count != 1 || !on_boundary {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pullback of a target divisor. When the target divisor is only
/// Q-Cartier, the pullback is taken of `multiple * d`, where `multiple` is
/// the smallest positive integer clearing the denominators of its local
/// linear data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub multiple: BigInt,
    pub divisor: Divisor,
}

impl FanMap {
    pub fn new(matrix: IntMatrix, source: Fan, target: Fan) -> Result<FanMap, MapError> {
        check_dims(&matrix, &source, &target)?;
        if let Some(cone) = incompatible_cone(&matrix, &source, &target) {
            return Err(MapError::Incompatible { cone });
        }
        Ok(FanMap {
            matrix,
            source,
            target,
        })
    }

    pub fn identity(source: Fan, target: Fan) -> Result<FanMap, MapError> {
        Self::new(IntMatrix::identity(source.dim()), source, target)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FanMap) -> Result<FanMap, MapError> {
        let m = next
            .matrix
            .mul(&self.matrix)
            .map_err(|_| MapError::Dimension {
                rows: next.matrix.nrows(),
                cols: next.matrix.ncols(),
                source_dim: self.target.dim(),
                target_dim: next.target.dim(),
            })?;
        FanMap::new(m, self.source.clone(), next.target.clone())
    }

    /// Index of the image lattice `M(Z^n1)` in `Z^n2`; `None` when the image
    /// has lower rank. A finite index between complete fans gives a proper
    /// surjective toric morphism.
    pub fn image_index(&self) -> Option<BigInt> {
        let s = smith_normal_form(&self.matrix);
        (s.rank() == self.matrix.nrows()).then(|| s.diagonal.iter().product())
    }

    pub fn pullback(&self, d: &Divisor) -> Result<Pullback, MapError> {
        pullback(self, d)
    }
}

/// `d'_i = -k Psi_d(M v_i)`, where `Psi_d` is the piecewise linear function
/// of `d` on the target and `k` its Cartier multiple.
pub fn pullback(map: &FanMap, d: &Divisor) -> Result<Pullback, MapError> {
    let local = local_linear_data(&map.target, d)?;
    let multiple = cartier_multiple(&map.target, d)?;
    let k = Rat::from_integer(multiple.clone());
    let coeffs = map
        .source
        .rays()
        .iter()
        .map(|v| {
            let w = image(&map.matrix, v);
            let t = map
                .target
                .find_cone(&w)
                .expect("compatible map sends rays into the target support");
            -(dot_rat(&local[t], &w) * &k)
        })
        .collect();
    Ok(Pullback {
        multiple,
        divisor: Divisor::new(coeffs),
    })
}

/// Weights of the unique positive relation `sum w_i v_i = 0` among `n + 1`
/// vectors of `Z^n`, coprime and sorted ascending.
pub fn weighted_projective_weights(rays: &[LatVec]) -> Result<Vec<BigInt>, MapError> {
    let n = rays.first().map_or(0, LatVec::dim);
    if rays.len() != n + 1 || n == 0 || rays.iter().any(|r| r.dim() != n) {
        return Err(MapError::Degenerate("need n + 1 vectors in Z^n"));
    }
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|k| {
            rays.iter()
                .map(|r| Rat::from_integer(r.coords()[k].clone()))
                .collect()
        })
        .collect();
    let kernel = nullspace(&m, n + 1);
    if kernel.len() != 1 {
        return Err(MapError::Degenerate("vectors do not span"));
    }
    let mut w = primitive_from_rats(&kernel[0]);
    if w[0].is_negative() {
        w.iter_mut().for_each(|x| *x = -x.clone());
    }
    if !w.iter().all(Signed::is_positive) {
        return Err(MapError::Degenerate(
            "vectors do not positively span with every n independent",
        ));
    }
    w.sort();
    Ok(w)
}
