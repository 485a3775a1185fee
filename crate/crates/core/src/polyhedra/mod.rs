//! Exact rational cones and polyhedra.
//!
//! [`dd_convert`] is the single conversion kernel: strict feasibility, vertex
//! enumeration, positive spanning and nef cones are all reduced to it.

mod dd;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{primitive_from_rats, rank, rref, IntMatrix, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedraError {
    #[error("row {row} has length {found}, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("claimed lineality not contained in cone (generator {generator} violates row {row})")]
    LinealityOutsideCone { generator: usize, row: usize },
    #[error("polyhedron contains a line")]
    ContainsLine,
}

/// The cone `{x : <a, x> >= 0 for every row a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCone {
    dim: usize,
    rows: Vec<Vec<Rat>>,
}

impl HCone {
    pub fn new(dim: usize, rows: Vec<Vec<Rat>>) -> Result<Self, PolyhedraError> {
        check_lengths(dim, rows.iter().map(Vec::len))?;
        Ok(HCone { dim, rows })
    }

    pub fn from_int_rows(dim: usize, rows: &[Vec<BigInt>]) -> Result<Self, PolyhedraError> {
        Self::new(
            dim,
            rows.iter()
                .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Whether `x` satisfies every inequality.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.rows
            .iter()
            .all(|a| !crate::lattice::dot_rat(a, x).is_negative())
    }

    /// Rows scaled to primitive integer vectors, zero rows dropped, exact
    /// duplicates removed, sorted lexicographically.
    pub fn normalized_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| primitive_from_rats(r))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        rows.sort();
        rows.dedup();
        rows
    }
}

fn check_lengths(dim: usize, lens: impl Iterator<Item = usize>) -> Result<(), PolyhedraError> {
    for (row, found) in lens.enumerate() {
        if found != dim {
            return Err(PolyhedraError::RowLength {
                row,
                expected: dim,
                found,
            });
        }
    }
    Ok(())
}

/// A cone given by generators: nonnegative span of `extreme_rays` plus the
/// linear span of `lineality`.
///
/// Stored canonically: the lineality basis is the primitive integer form of
/// the reduced row echelon basis, and every ray is reduced modulo the
/// lineality space (pivot coordinates zeroed), made primitive, deduplicated
/// and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCone {
    dim: usize,
    extreme_rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

impl VCone {
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, lineality: Vec<Vec<BigInt>>) -> Self {
        let to_rats = |v: &Vec<BigInt>| -> Vec<Rat> {
            v.iter().map(|x| Rat::from_integer(x.clone())).collect()
        };
        let lin_rats: Vec<Vec<Rat>> = lineality.iter().map(to_rats).collect();
        let echelon = rref(&lin_rats, dim);
        let mut lineality: Vec<Vec<BigInt>> = echelon
            .rows
            .iter()
            .map(|r| primitive_from_rats(r))
            .collect();
        lineality.sort();
        let mut extreme_rays: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| primitive_from_rats(&echelon.reduce(&to_rats(r))))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        extreme_rays.sort();
        extreme_rays.dedup();
        VCone {
            dim,
            extreme_rays,
            lineality,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extreme_rays(&self) -> &[Vec<BigInt>] {
        &self.extreme_rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    /// The cone is `{0}`.
    pub fn is_zero(&self) -> bool {
        self.extreme_rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self
            .extreme_rays
            .iter()
            .chain(&self.lineality)
            .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        rank(&rows, self.dim)
    }
}

/// Double description: converts an H-cone into its extreme rays and a
/// lineality basis. Output order is lexicographic on the primitive integer
/// coordinates.
pub fn dd_convert(c: &HCone) -> VCone {
    let rows = c.normalized_rows();
    let g = dd::double_description(c.dim, &rows);
    VCone::new(c.dim, g.rays, g.lineality)
}

/// Whether the cone equals the row span of `l`. Every row of `l` must lie in
/// the cone.
pub fn cone_is_trivial_modulo(c: &HCone, l: &IntMatrix) -> Result<bool, PolyhedraError> {
    check_lengths(c.dim, std::iter::once(l.ncols()))?;
    for (gi, g) in l.rows().iter().enumerate() {
        let g: Vec<Rat> = g.iter().map(|x| Rat::from_integer(x.clone())).collect();
        for (ri, a) in c.rows.iter().enumerate() {
            if crate::lattice::dot_rat(a, &g).is_negative() {
                return Err(PolyhedraError::LinealityOutsideCone {
                    generator: gi,
                    row: ri,
                });
            }
        }
    }
    let v = dd_convert(c);
    Ok(v.extreme_rays.is_empty() && v.lineality.len() == rank(&l.to_rat_rows(), l.ncols()))
}

/// Homogenized cone `{(x, t) : <a, x> - t >= 0, t >= 0}` in one more dimension.
fn homogenize_strict(c: &HCone) -> HCone {
    let mut rows: Vec<Vec<Rat>> = c
        .rows
        .iter()
        .map(|a| {
            let mut r = a.clone();
            r.push(Rat::from_integer((-1).into()));
            r
        })
        .collect();
    let mut t = vec![Rat::zero(); c.dim + 1];
    t[c.dim] = Rat::from_integer(1.into());
    rows.push(t);
    HCone {
        dim: c.dim + 1,
        rows,
    }
}

/// A point `x` with `<a, x> > 0` for every row, if one exists.
pub fn strict_feasible_point(c: &HCone) -> Option<Vec<Rat>> {
    let v = dd_convert(&homogenize_strict(c));
    v.extreme_rays
        .iter()
        .find(|r| r[c.dim].is_positive())
        .map(|r| {
            r[..c.dim]
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect()
        })
}

/// Whether some `x` satisfies every inequality strictly.
pub fn strict_feasible(c: &HCone) -> bool {
    strict_feasible_point(c).is_some()
}

/// The polyhedron `{u : <a, u> >= b}` over a list of `(a, b)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    inequalities: Vec<(Vec<Rat>, Rat)>,
}

/// Minkowski-Weyl decomposition of a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedronGenerators {
    pub vertices: Vec<Vec<Rat>>,
    pub recession_rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

impl PolyhedronGenerators {
    pub fn is_bounded(&self) -> bool {
        self.recession_rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl Polyhedron {
    pub fn new(dim: usize, inequalities: Vec<(Vec<Rat>, Rat)>) -> Result<Self, PolyhedraError> {
        check_lengths(dim, inequalities.iter().map(|(a, _)| a.len()))?;
        Ok(Polyhedron { dim, inequalities })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[(Vec<Rat>, Rat)] {
        &self.inequalities
    }

    pub fn contains(&self, u: &[Rat]) -> bool {
        self.inequalities
            .iter()
            .all(|(a, b)| &crate::lattice::dot_rat(a, u) >= b)
    }

    /// Vertices, recession rays and lineality, via the homogenization
    /// `{(u, t) : <a, u> - b t >= 0, t >= 0}`. If the polyhedron is empty all
    /// three lists are empty.
    pub fn generators(&self) -> PolyhedronGenerators {
        let mut rows: Vec<Vec<Rat>> = self
            .inequalities
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(-b.clone());
                r
            })
            .collect();
        let mut t = vec![Rat::zero(); self.dim + 1];
        t[self.dim] = Rat::from_integer(1.into());
        rows.push(t);
        let v = dd_convert(&HCone {
            dim: self.dim + 1,
            rows,
        });

        let mut vertices: Vec<Vec<Rat>> = v
            .extreme_rays
            .iter()
            .filter(|r| r[self.dim].is_positive())
            .map(|r| {
                let t = Rat::from_integer(r[self.dim].clone());
                r[..self.dim]
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()) / &t)
                    .collect()
            })
            .collect();
        vertices.sort();
        if vertices.is_empty() {
            return PolyhedronGenerators {
                vertices,
                recession_rays: Vec::new(),
                lineality: Vec::new(),
            };
        }
        let recession_rays = v
            .extreme_rays
            .iter()
            .filter(|r| r[self.dim].is_zero())
            .map(|r| r[..self.dim].to_vec())
            .collect();
        // lineality of the homogenized cone always has t = 0
        let lineality = v.lineality.iter().map(|r| r[..self.dim].to_vec()).collect();
        PolyhedronGenerators {
            vertices,
            recession_rays,
            lineality,
        }
    }
}

/// Exact vertex set of a pointed polyhedron, sorted lexicographically.
pub fn vertices(p: &Polyhedron) -> Result<Vec<Vec<Rat>>, PolyhedraError> {
    let g = p.generators();
    if !g.lineality.is_empty() {
        return Err(PolyhedraError::ContainsLine);
    }
    Ok(g.vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rat {
        Rat::from_integer(x.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    fn hcone(dim: usize, rows: &[&[i64]]) -> HCone {
        HCone::new(
            dim,
            rows.iter()
                .map(|row| row.iter().map(|&x| r(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn orthant() {
        let v = dd_convert(&hcone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(
            v.extreme_rays(),
            &[ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]
        );
        assert!(v.lineality().is_empty());
    }

    #[test]
    fn half_plane() {
        let v = dd_convert(&hcone(2, &[&[1, 0]]));
        assert_eq!(v.extreme_rays(), &[ints(&[1, 0])]);
        assert_eq!(v.lineality(), &[ints(&[0, 1])]);
    }

    #[test]
    fn empty_system_is_whole_space() {
        let v = dd_convert(&hcone(2, &[]));
        assert!(v.extreme_rays().is_empty());
        assert_eq!(v.lineality().len(), 2);
    }

    #[test]
    fn degenerate_rows_are_ignored() {
        let a = dd_convert(&hcone(2, &[&[1, 1], &[0, 0], &[2, 2], &[1, -1]]));
        let b = dd_convert(&hcone(2, &[&[1, -1], &[1, 1]]));
        assert_eq!(a, b);
        assert_eq!(a.extreme_rays(), &[ints(&[1, -1]), ints(&[1, 1])]);
    }

    #[test]
    fn trivial_modulo() {
        let line = hcone(1, &[&[1], &[-1]]);
        assert!(cone_is_trivial_modulo(&line, &IntMatrix::zeros(0, 1)).unwrap());
        let orthant = hcone(2, &[&[1, 0], &[0, 1]]);
        assert!(!cone_is_trivial_modulo(&orthant, &IntMatrix::zeros(0, 2)).unwrap());
        let plane = hcone(2, &[&[1, -1], &[-1, 1]]);
        let diag = IntMatrix::from_i64_rows(&[&[1, 1]]);
        assert!(cone_is_trivial_modulo(&plane, &diag).unwrap());
        let off = IntMatrix::from_i64_rows(&[&[1, -2]]);
        assert_eq!(
            cone_is_trivial_modulo(&plane, &off),
            Err(PolyhedraError::LinealityOutsideCone {
                generator: 0,
                row: 1
            })
        );
    }

    #[test]
    fn strict_feasibility() {
        assert!(strict_feasible(&hcone(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]
        )));
        assert!(!strict_feasible(&hcone(1, &[&[1], &[-1]])));
        assert!(strict_feasible(&hcone(2, &[])));
        let x = strict_feasible_point(&hcone(2, &[&[1, 1], &[1, -1]])).unwrap();
        assert!(&x[0] + &x[1] > r(0) && &x[0] - &x[1] > r(0));
    }

    #[test]
    fn unit_square_vertices() {
        let p = Polyhedron::new(
            2,
            vec![
                (vec![r(1), r(0)], r(0)),
                (vec![r(0), r(1)], r(0)),
                (vec![r(-1), r(0)], r(-1)),
                (vec![r(0), r(-1)], r(-1)),
            ],
        )
        .unwrap();
        assert_eq!(
            vertices(&p).unwrap(),
            vec![
                vec![r(0), r(0)],
                vec![r(0), r(1)],
                vec![r(1), r(0)],
                vec![r(1), r(1)]
            ]
        );
        assert!(p.generators().is_bounded());
    }

    #[test]
    fn polyhedron_with_line() {
        let p = Polyhedron::new(2, vec![(vec![r(1), r(0)], r(0))]).unwrap();
        assert_eq!(vertices(&p), Err(PolyhedraError::ContainsLine));
        assert_eq!(
            PolyhedraError::ContainsLine.to_string(),
            "polyhedron contains a line"
        );
    }

    #[test]
    fn unbounded_pointed_polyhedron() {
        let p =
            Polyhedron::new(2, vec![(vec![r(1), r(0)], r(1)), (vec![r(0), r(1)], r(0))]).unwrap();
        let g = p.generators();
        assert_eq!(g.vertices, vec![vec![r(1), r(0)]]);
        assert_eq!(g.recession_rays, vec![ints(&[0, 1]), ints(&[1, 0])]);
        assert!(!g.is_bounded());
    }

    #[test]
    fn empty_polyhedron() {
        let p = Polyhedron::new(1, vec![(vec![r(1)], r(1)), (vec![r(-1)], r(0))]).unwrap();
        assert!(vertices(&p).unwrap().is_empty());
    }
}
