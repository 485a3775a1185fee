//! Torus-invariant divisors `D = sum d_i D_i` on a simplicial fan.
//!
//! Nef-ness is decided two ways. The wall route checks one inequality per
//! wall: the wall relation `sum c_i v_i = 0`, oriented positively on the two
//! opposite rays, must satisfy `sum c_i d_i >= 0`. The Cartier route solves
//! for the local linear functions `u_sigma` with `<u_sigma, v_i> = -d_i` on
//! the rays of each maximal cone and checks `<u_sigma, v_j> >= -d_j` for every
//! ray `j`. Both are kept as public operations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

use crate::fan::{Fan, FanError, Wall};
use crate::lattice::{
    denominator_lcm, dot_rat, in_row_span, primitive_from_rats, smith_normal_form, Rat,
};
use crate::polyhedra::{
    dd_convert, strict_feasible, strict_feasible_point, HCone, PolyhedraError, Polyhedron, VCone,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("divisor has {found} coefficients but the fan has {expected} rays")]
    Length { expected: usize, found: usize },
    #[error("divisor entry {index}: cannot parse `{text}` as an integer or p/q rational")]
    Parse { index: usize, text: String },
    #[error("divisor must be a JSON array of integers or \"p/q\" strings")]
    Json,
    #[error("divisor coefficient {index} is not an integer")]
    NotIntegral { index: usize },
    #[error("divisor is not Cartier on maximal cone {cone}")]
    NotCartier { cone: usize },
    #[error("{0} requires a smooth complete fan")]
    RequiresSmoothComplete(&'static str),
    #[error("P_D is unbounded")]
    Unbounded,
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
}

/// Coefficients `d_i`, one per ray, in the fan's ray order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: Vec<Rat>,
}

fn rat(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| Rat::new(p, q))
        }
        None => BigInt::from_str(text).ok().map(Rat::from_integer),
    }
}

impl Divisor {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Divisor { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Divisor::new(coeffs.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Divisor::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero(nrays: usize) -> Self {
        Divisor::new(vec![Rat::zero(); nrays])
    }

    /// `-K = sum D_i`.
    pub fn anticanonical(nrays: usize) -> Self {
        Divisor::new(vec![Rat::one(); nrays])
    }

    /// Prime divisor `D_i`.
    pub fn prime(nrays: usize, i: usize) -> Self {
        let mut d = Self::zero(nrays);
        d.coeffs[i] = Rat::one();
        d
    }

    /// The principal divisor of the character `u`: coefficients `<u, v_i>`.
    pub fn principal(fan: &Fan, u: &[Rat]) -> Self {
        Divisor::new(
            fan.rays()
                .iter()
                .map(|v| dot_rat(u, &v.to_rats()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        assert_eq!(self.len(), other.len());
        Divisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        assert_eq!(self.len(), other.len());
        Divisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> Divisor {
        Divisor::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Parses `"1,0,-2,1/2"` or the token `"-K"` (all ones, `nrays` entries).
    pub fn parse(text: &str, nrays: usize) -> Result<Divisor, DivisorError> {
        if text.trim() == "-K" {
            return Ok(Self::anticanonical(nrays));
        }
        text.split(',')
            .enumerate()
            .map(|(index, part)| {
                parse_rat(part).ok_or_else(|| DivisorError::Parse {
                    index,
                    text: part.trim().to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Divisor::new)
    }

    /// JSON array of integers or `"p/q"` strings.
    pub fn from_json(v: &Value) -> Result<Divisor, DivisorError> {
        let items = v.as_array().ok_or(DivisorError::Json)?;
        items
            .iter()
            .enumerate()
            .map(|(index, item)| {
                let text = match item {
                    Value::Number(n) => n.to_string(),
                    Value::String(s) => s.clone(),
                    _ => return Err(DivisorError::Json),
                };
                parse_rat(&text).ok_or(DivisorError::Parse { index, text })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Divisor::new)
    }

    /// Integers where possible, `"p/q"` strings otherwise.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        crate::fan::int_value(c.numer())
                    } else {
                        Value::String(c.to_string())
                    }
                })
                .collect(),
        )
    }

    fn check_len(&self, fan: &Fan) -> Result<(), DivisorError> {
        if self.len() != fan.num_rays() {
            return Err(DivisorError::Length {
                expected: fan.num_rays(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The wall inequalities of a complete simplicial fan as an H-cone in
/// divisor-coefficient space.
#[derive(Clone, Debug)]
pub struct NefSystem {
    walls: Vec<Wall>,
    cone: HCone,
}

impl NefSystem {
    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn cone(&self) -> &HCone {
        &self.cone
    }

    /// One row per wall: the wall relation coefficients.
    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.walls.iter().map(|w| w.relation.as_slice())
    }

    /// Whether `row` (any positive multiple) is one of the wall rows.
    pub fn contains_row(&self, row: &[BigInt]) -> bool {
        let rats: Vec<Rat> = row.iter().cloned().map(Rat::from_integer).collect();
        let p = primitive_from_rats(&rats);
        self.rows().any(|r| r == p.as_slice())
    }
}

pub fn nef_system(fan: &Fan) -> Result<NefSystem, DivisorError> {
    let walls = fan.walls()?;
    let rows: Vec<Vec<BigInt>> = walls.iter().map(|w| w.relation.clone()).collect();
    let cone = HCone::from_int_rows(fan.num_rays(), &rows)?;
    Ok(NefSystem { walls, cone })
}

/// Wall route: every wall row is nonnegative on `d`.
pub fn is_nef(fan: &Fan, d: &Divisor) -> Result<bool, DivisorError> {
    d.check_len(fan)?;
    Ok(nef_system(fan)?.cone.contains(&d.coeffs))
}

/// Every wall row is strictly positive on `d`.
pub fn is_ample(fan: &Fan, d: &Divisor) -> Result<bool, DivisorError> {
    d.check_len(fan)?;
    let sys = nef_system(fan)?;
    Ok(sys.walls.iter().all(|w| {
        let row: Vec<Rat> = w.relation.iter().cloned().map(Rat::from_integer).collect();
        dot_rat(&row, &d.coeffs).is_positive()
    }))
}

/// `d` is the divisor of a character, i.e. lies in the span of
/// `u -> (<u, v_i>)_i`.
pub fn is_trivial_class(fan: &Fan, d: &Divisor) -> Result<bool, DivisorError> {
    d.check_len(fan)?;
    let cols: Vec<Vec<Rat>> = fan
        .ray_matrix()
        .transpose()
        .rows()
        .iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    Ok(in_row_span(&cols, &d.coeffs))
}

/// Linear coordinates on `Pic = Z^rays / M` for a smooth complete fan,
/// taken from the trailing rows of the left Smith transform of the ray
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardBasis {
    projection: Vec<Vec<BigInt>>,
}

impl PicardBasis {
    pub fn new(fan: &Fan) -> Result<PicardBasis, DivisorError> {
        if !fan.is_smooth() || !fan.is_complete() {
            return Err(DivisorError::RequiresSmoothComplete("Picard coordinates"));
        }
        let snf = smith_normal_form(&fan.ray_matrix());
        let r = snf.rank();
        Ok(PicardBasis {
            projection: snf.left.rows()[r..].to_vec(),
        })
    }

    pub fn rank(&self) -> usize {
        self.projection.len()
    }

    pub fn coordinates(&self, d: &Divisor) -> Vec<Rat> {
        self.projection
            .iter()
            .map(|row| {
                row.iter()
                    .zip(d.coeffs())
                    .map(|(p, c)| c * Rat::from_integer(p.clone()))
                    .sum()
            })
            .collect()
    }

    fn project_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.projection
            .iter()
            .map(|row| row.iter().zip(v).map(|(p, x)| p * x).sum())
            .collect()
    }
}

/// The nef cone in Picard coordinates (see [`PicardBasis`]).
pub fn nef_cone(fan: &Fan) -> Result<VCone, DivisorError> {
    let basis = PicardBasis::new(fan)?;
    let v = dd_convert(nef_system(fan)?.cone());
    let rays = v
        .extreme_rays()
        .iter()
        .map(|r| basis.project_int(r))
        .collect();
    let lineality = v
        .lineality()
        .iter()
        .map(|l| basis.project_int(l))
        .filter(|l| l.iter().any(|x| !x.is_zero()))
        .collect();
    Ok(VCone::new(basis.rank(), rays, lineality))
}

/// The nef cone is `{0}` in `Pic`: every nef divisor is principal.
pub fn has_no_nontrivial_nef(fan: &Fan) -> Result<bool, DivisorError> {
    Ok(nef_cone(fan)?.is_zero())
}

/// Some divisor satisfies every wall inequality strictly.
pub fn is_projective(fan: &Fan) -> Result<bool, DivisorError> {
    Ok(strict_feasible(nef_system(fan)?.cone()))
}

/// An integral ample divisor, if the fan is projective.
pub fn ample_divisor(fan: &Fan) -> Result<Option<Divisor>, DivisorError> {
    Ok(strict_feasible_point(nef_system(fan)?.cone())
        .map(|x| Divisor::from_bigints(&primitive_from_rats(&x))))
}

/// `P_D = {u : <u, v_i> >= -d_i for all i}`.
pub fn polytope(fan: &Fan, d: &Divisor) -> Result<Polyhedron, DivisorError> {
    d.check_len(fan)?;
    let ineqs = fan
        .rays()
        .iter()
        .zip(d.coeffs())
        .map(|(v, c)| (v.to_rats(), -c.clone()))
        .collect();
    Ok(Polyhedron::new(fan.dim(), ineqs)?)
}

/// For every ray, the minimum of `<u, v_i>` over the vertices of `P_D`
/// equals `-d_i`. Errors if `P_D` is unbounded; false if it is empty.
pub fn support_min_check(fan: &Fan, d: &Divisor) -> Result<bool, DivisorError> {
    let g = polytope(fan, d)?.generators();
    if !g.is_bounded() {
        return Err(DivisorError::Unbounded);
    }
    if g.is_empty() {
        return Ok(false);
    }
    Ok(fan.rays().iter().zip(d.coeffs()).all(|(v, c)| {
        let v = v.to_rats();
        g.vertices
            .iter()
            .map(|u| dot_rat(u, &v))
            .min()
            .is_some_and(|m| m == -c.clone())
    }))
}

/// Rational local linear data: for each maximal cone the unique `u` with
/// `<u, v_i> = -d_i` on the cone's rays.
pub fn local_linear_data(fan: &Fan, d: &Divisor) -> Result<Vec<Vec<Rat>>, DivisorError> {
    d.check_len(fan)?;
    Ok((0..fan.max_cones().len())
        .map(|c| {
            let mut u = vec![Rat::zero(); fan.dim()];
            for (normal, &i) in fan.facet_normals(c).iter().zip(&fan.max_cones()[c]) {
                for (x, n) in u.iter_mut().zip(normal) {
                    *x -= &d.coeffs[i] * n;
                }
            }
            u
        })
        .collect())
}

/// Smallest positive integer `k` such that `k d` has integral local data.
pub fn cartier_multiple(fan: &Fan, d: &Divisor) -> Result<BigInt, DivisorError> {
    let data = local_linear_data(fan, d)?;
    Ok(data
        .iter()
        .fold(BigInt::one(), |l, u| l.lcm(&denominator_lcm(u))))
}

/// Integral local linear functions `u_sigma`, one per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierData {
    pub local: Vec<Vec<BigInt>>,
}

pub fn cartier_data(fan: &Fan, d: &Divisor) -> Result<CartierData, DivisorError> {
    d.check_len(fan)?;
    if let Some(index) = d.coeffs.iter().position(|c| !c.is_integer()) {
        return Err(DivisorError::NotIntegral { index });
    }
    let data = local_linear_data(fan, d)?;
    let local = data
        .into_iter()
        .enumerate()
        .map(|(cone, u)| {
            if u.iter().all(Rat::is_integer) {
                Ok(u.into_iter().map(|x| x.to_integer()).collect())
            } else {
                Err(DivisorError::NotCartier { cone })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CartierData { local })
}

/// Cartier route: `<u_sigma, v_j> >= -d_j` for every maximal cone and ray.
pub fn is_nef_via_cartier(fan: &Fan, d: &Divisor) -> Result<bool, DivisorError> {
    let data = cartier_data(fan, d)?;
    Ok(data.local.iter().all(|u| {
        fan.rays().iter().zip(d.coeffs()).all(|(v, c)| {
            Rat::from_integer(v.coords().iter().zip(u).map(|(a, b)| a * b).sum()) >= -c.clone()
        })
    }))
}

/// Rows of the Cartier-route inequalities `d_j + <u_sigma, v_j> >= 0`, one
/// per maximal cone and ray outside it, scaled to coprime integers. The wall
/// rows are the ones taken across a wall; the rest involve non-adjacent
/// cones and are implied by the wall rows.
pub fn convexity_rows(fan: &Fan) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for (c, cone) in fan.max_cones().iter().enumerate() {
        for (j, v) in fan.rays().iter().enumerate() {
            if cone.contains(&j) {
                continue;
            }
            let v = v.to_rats();
            let mut row = vec![Rat::zero(); fan.num_rays()];
            row[j] = Rat::one();
            for (normal, &i) in fan.facet_normals(c).iter().zip(cone) {
                row[i] = -dot_rat(normal, &v);
            }
            rows.push(primitive_from_rats(&row));
        }
    }
    rows.sort();
    rows.dedup();
    rows
}

/// `row . d >= 0` is one of the [`convexity_rows`] up to positive scaling.
pub fn is_convexity_row(fan: &Fan, row: &[BigInt]) -> bool {
    let rats: Vec<Rat> = row.iter().cloned().map(Rat::from_integer).collect();
    let p = primitive_from_rats(&rats);
    convexity_rows(fan).binary_search(&p).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatVec;

    fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<LatVec> = (0..n).map(|i| LatVec::unit(n, i)).collect();
        rays.push(LatVec::from(vec![-1; n]));
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).unwrap()
    }

    fn p1() -> Fan {
        Fan::new(
            1,
            vec![LatVec::from([1]), LatVec::from([-1])],
            vec![vec![0], vec![1]],
        )
        .unwrap()
    }

    #[test]
    fn parse_divisors() {
        let d = Divisor::parse("1, -2, 3/4", 3).unwrap();
        assert_eq!(d.coeffs()[2], Rat::new(3.into(), 4.into()));
        assert_eq!(Divisor::parse("-K", 4).unwrap(), Divisor::anticanonical(4));
        assert_eq!(
            Divisor::parse("1,x", 2).unwrap_err(),
            DivisorError::Parse {
                index: 1,
                text: "x".into()
            }
        );
        assert!(Divisor::parse("1/0", 1).is_err());
        let j: Value = serde_json::from_str(r#"[1, "-1/2", 0]"#).unwrap();
        let d = Divisor::from_json(&j).unwrap();
        assert_eq!(d.to_json(), j);
        let bad: Value = serde_json::from_str("[1.5]").unwrap();
        assert!(Divisor::from_json(&bad).is_err());
    }

    #[test]
    fn projective_space_nef_cone() {
        let p3 = projective_space(3);
        let hyperplane = Divisor::from_ints(&[1, 0, 0, 0]);
        assert!(is_nef(&p3, &hyperplane).unwrap());
        assert!(is_nef_via_cartier(&p3, &hyperplane).unwrap());
        assert!(is_ample(&p3, &hyperplane).unwrap());
        assert!(!is_trivial_class(&p3, &hyperplane).unwrap());
        let cone = nef_cone(&p3).unwrap();
        assert_eq!(cone.dim(), 1);
        assert_eq!(cone.extreme_rays().len(), 1);
        assert!(cone.lineality().is_empty());
        let basis = PicardBasis::new(&p3).unwrap();
        let h = basis.coordinates(&hyperplane);
        let ray = Rat::from_integer(cone.extreme_rays()[0][0].clone());
        assert!((h[0].clone() * ray).is_positive());
        assert!(is_projective(&p3).unwrap());
        assert!(!has_no_nontrivial_nef(&p3).unwrap());
        let amp = ample_divisor(&p3).unwrap().unwrap();
        assert!(is_ample(&p3, &amp).unwrap());
    }

    #[test]
    fn negative_hyperplane_is_not_nef() {
        let p3 = projective_space(3);
        let d = Divisor::from_ints(&[-1, 0, 0, 0]);
        assert!(!is_nef(&p3, &d).unwrap());
        assert!(!is_nef_via_cartier(&p3, &d).unwrap());
    }

    #[test]
    fn length_mismatch() {
        let p3 = projective_space(3);
        assert_eq!(
            is_nef(&p3, &Divisor::zero(3)).unwrap_err(),
            DivisorError::Length {
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn segment_polytope() {
        let f = p1();
        let p = polytope(&f, &Divisor::from_ints(&[1, 1])).unwrap();
        let v = crate::polyhedra::vertices(&p).unwrap();
        assert_eq!(v, vec![vec![rat(-1)], vec![rat(1)]]);
        assert!(support_min_check(&f, &Divisor::from_ints(&[1, 1])).unwrap());
        // P_D empty for d = (-1, -1): u >= 1 and -u >= 1
        assert!(!support_min_check(&f, &Divisor::from_ints(&[-1, -1])).unwrap());
    }

    #[test]
    fn cartier_requires_integral_data() {
        let p3 = projective_space(3);
        let half = Divisor::new(vec![Rat::new(1.into(), 2.into()), rat(0), rat(0), rat(0)]);
        assert_eq!(
            cartier_data(&p3, &half).unwrap_err(),
            DivisorError::NotIntegral { index: 0 }
        );
        // rational divisors are fine on the wall route
        assert!(is_nef(&p3, &half).unwrap());

        let wp = Fan::new(
            3,
            vec![
                LatVec::from([1, 0, 0]),
                LatVec::from([0, 1, 0]),
                LatVec::from([0, 0, 1]),
                LatVec::from([-1, -2, -2]),
            ],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let d = Divisor::from_ints(&[1, 0, 0, 0]);
        assert!(matches!(
            cartier_data(&wp, &d),
            Err(DivisorError::NotCartier { .. })
        ));
        assert_eq!(cartier_multiple(&wp, &d).unwrap(), BigInt::from(2));
        assert!(cartier_data(&wp, &d.scale(&rat(2))).is_ok());
    }

    #[test]
    fn zero_divisor_data() {
        let p3 = projective_space(3);
        let data = cartier_data(&p3, &Divisor::zero(4)).unwrap();
        assert!(data.local.iter().flatten().all(Zero::is_zero));
        assert!(is_nef_via_cartier(&p3, &Divisor::zero(4)).unwrap());
        assert!(is_trivial_class(&p3, &Divisor::zero(4)).unwrap());
    }

    #[test]
    fn convexity_rows_of_plane() {
        let p2 = projective_space(2);
        let rows = convexity_rows(&p2);
        assert_eq!(rows, vec![vec![BigInt::from(1); 3]]);
        assert!(is_convexity_row(
            &p2,
            &[BigInt::from(2), BigInt::from(2), BigInt::from(2)]
        ));
        assert!(!is_convexity_row(
            &p2,
            &[BigInt::from(-1), BigInt::from(-1), BigInt::from(-1)]
        ));
        let sys = nef_system(&p2).unwrap();
        assert!(rows.iter().all(|r| sys.contains_row(r)));
    }
}
