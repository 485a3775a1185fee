//! Named fans: the smooth complete threefolds with few rays studied here,
//! their parameter families, the targets of the morphisms exhibited for
//! them, and the properties each is claimed to have.
//!
//! Ray and cone tables are written with 1-based indices as tabulated and
//! converted on construction; rays keep their tabulated order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::divisor::{
    ample_divisor, has_no_nontrivial_nef, is_ample, is_convexity_row, is_nef, is_projective,
    is_trivial_class, Divisor, DivisorError,
};
use crate::fan::{Fan, FanError};
use crate::fanmap::{is_refinement, weighted_projective_weights, FanMap, MapError};
use crate::lattice::{IntMatrix, LatVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("`{entry}` requires parameter `{param}`")]
    MissingParam { entry: String, param: String },
    #[error("`{entry}` has no parameter `{param}`")]
    UnexpectedParam { entry: String, param: String },
    #[error("parameter `{param}` must be a nonnegative machine-size integer")]
    BadParam { param: String },
    #[error("catalog fan is invalid: {0}")]
    Fan(#[from] FanError),
}

/// Whether an entry is one of the studied threefolds or an auxiliary target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Threefold,
    Target,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub params: &'static [&'static str],
    /// Values swept in tests and reports, one list per parameter.
    pub sweep: &'static [&'static [i64]],
    pub summary: &'static str,
}

const A5: &[i64] = &[-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5];
const A3: &[i64] = &[-3, -2, -1, 0, 1, 2, 3];
const A2: &[i64] = &[-2, -1, 0, 1, 2];
const A1: &[i64] = &[-1, 0, 1];
const PM1: &[i64] = &[-1, 1];

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "example1-sigma",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "singular fan with 6 rays and 8 cones; subdivides to example1",
    },
    CatalogEntry {
        name: "example1",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "example1-sigma star subdivided at (-1,-1,-1) then (-2,-1,-1); no nontrivial nef bundles",
    },
    CatalogEntry {
        name: "example1-extended",
        kind: EntryKind::Threefold,
        params: &["k"],
        sweep: &[&[0, 1, 2, 3]],
        summary: "example1 after k further star subdivisions away from the protected cones",
    },
    CatalogEntry {
        name: "example2",
        kind: EntryKind::Threefold,
        params: &["a"],
        sweep: &[A5],
        summary: "one-parameter family, no nontrivial nef bundles for a != 0, -1",
    },
    CatalogEntry {
        name: "example3",
        kind: EntryKind::Threefold,
        params: &["a", "b"],
        sweep: &[A3, A3],
        summary: "two-parameter family, no nontrivial nef bundles for nonzero (a,b) != (+-1,+-1)",
    },
    CatalogEntry {
        name: "lemma-a",
        kind: EntryKind::Threefold,
        params: &["a"],
        sweep: &[A3],
        summary: "projective, 7 rays",
    },
    CatalogEntry {
        name: "lemma-b",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "not projective, -K nef, 7 rays",
    },
    CatalogEntry {
        name: "8-5p",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "example2 with a = -1; -K - D4 - D8 nef",
    },
    CatalogEntry {
        name: "8-5pp",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "refines the P^3 fan on v1, v3, v4, v7",
    },
    CatalogEntry {
        name: "8-8",
        kind: EntryKind::Threefold,
        params: &[],
        sweep: &[],
        summary: "refines the P(1,1,2,2) fan on v1, v2, v5, v7",
    },
    CatalogEntry {
        name: "8-11",
        kind: EntryKind::Threefold,
        params: &["a", "b"],
        sweep: &[A2, A2],
        summary: "(x,y)-projection onto the blow-up of P(1,1,2) at a point",
    },
    CatalogEntry {
        name: "8-13p",
        kind: EntryKind::Threefold,
        params: &["a", "b"],
        sweep: &[PM1, PM1],
        summary: "example3 with (a,b) = (+-1,+-1); -K nef",
    },
    CatalogEntry {
        name: "8-13pp",
        kind: EntryKind::Threefold,
        params: &["a", "b", "c", "d"],
        sweep: &[A1, A1, A1, A1],
        summary: "x-projection onto P^1",
    },
    CatalogEntry {
        name: "8-14p",
        kind: EntryKind::Threefold,
        params: &["a"],
        sweep: &[A2],
        summary: "(x,y)-projection onto P^2",
    },
    CatalogEntry {
        name: "8-14pp",
        kind: EntryKind::Threefold,
        params: &["a", "b"],
        sweep: &[A2, A2],
        summary: "x-projection onto P^1",
    },
    CatalogEntry {
        name: "p1",
        kind: EntryKind::Target,
        params: &[],
        sweep: &[],
        summary: "projective line",
    },
    CatalogEntry {
        name: "p2",
        kind: EntryKind::Target,
        params: &[],
        sweep: &[],
        summary: "projective plane",
    },
    CatalogEntry {
        name: "p3",
        kind: EntryKind::Target,
        params: &[],
        sweep: &[],
        summary: "projective 3-space on rays v1, v3, v4, v7 of 8-5pp",
    },
    CatalogEntry {
        name: "p1122",
        kind: EntryKind::Target,
        params: &[],
        sweep: &[],
        summary: "P(1,1,2,2) on rays v1, v2, v5, v7 of 8-8",
    },
    CatalogEntry {
        name: "blown-up-p112",
        kind: EntryKind::Target,
        params: &[],
        sweep: &[],
        summary: "complete plane fan on (1,0), (1,1), (0,1), (-1,-2)",
    },
];

pub type Params = BTreeMap<String, BigInt>;

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

impl CatalogEntry {
    /// Every parameter assignment in the sweep domain, in lexicographic
    /// order of the values.
    pub fn sweep_points(&self) -> Vec<Params> {
        let mut points = vec![Params::new()];
        for (name, values) in self.params.iter().zip(self.sweep) {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.insert(name.to_string(), BigInt::from(v));
                        q
                    })
                })
                .collect();
        }
        points
    }

    fn check_params(&self, params: &Params) -> Result<(), CatalogError> {
        if let Some(extra) = params.keys().find(|k| !self.params.contains(&k.as_str())) {
            return Err(CatalogError::UnexpectedParam {
                entry: self.name.into(),
                param: extra.clone(),
            });
        }
        if let Some(missing) = self.params.iter().find(|p| !params.contains_key(**p)) {
            return Err(CatalogError::MissingParam {
                entry: self.name.into(),
                param: missing.to_string(),
            });
        }
        Ok(())
    }
}

/// Builds params from `(name, value)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), BigInt::from(*v)))
        .collect()
}

fn v(coords: [BigInt; 3]) -> LatVec {
    LatVec::new(coords.to_vec())
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn fixed(rays: &[[i64; 3]]) -> Vec<LatVec> {
    rays.iter().map(|r| LatVec::from(*r)).collect()
}

fn cones(table: &[[usize; 3]]) -> Vec<Vec<usize>> {
    table
        .iter()
        .map(|c| c.iter().map(|i| i - 1).collect())
        .collect()
}

fn build(rays: Vec<LatVec>, table: &[[usize; 3]]) -> Result<Fan, CatalogError> {
    Ok(Fan::new(3, rays, cones(table))?)
}

pub fn example1_sigma() -> Fan {
    let rays = fixed(&[
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [0, -1, -1],
        [-1, 0, -1],
        [-2, -1, 0],
    ]);
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [2, 4, 5],
            [2, 3, 5],
            [3, 5, 6],
            [1, 3, 6],
            [1, 4, 6],
            [4, 5, 6],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn example1() -> Fan {
    example1_sigma()
        .star_subdivision(&LatVec::from([-1, -1, -1]))
        .and_then(|f| f.star_subdivision(&LatVec::from([-2, -1, -1])))
        .expect("subdivision points lie in the support and are new")
}

/// The cones whose presence forces every nef divisor to be trivial,
/// 0-based.
pub const PROTECTED_CONES: [[usize; 3]; 3] = [[0, 1, 3], [1, 2, 4], [0, 2, 5]];

/// Example 1 after `k` star subdivisions, each at the sum of the generators
/// of the lexicographically first maximal cone that is not protected.
pub fn example1_extended(k: usize) -> Fan {
    let mut fan = example1();
    for _ in 0..k {
        let cone = fan
            .max_cones()
            .iter()
            .filter(|c| !PROTECTED_CONES.iter().any(|p| p[..] == c[..]))
            .min()
            .expect("more cones than protected ones")
            .clone();
        let w = cone
            .iter()
            .fold(LatVec::zero(3), |acc, &i| acc.add(fan.ray(i)));
        fan = fan
            .star_subdivision(&w)
            .expect("interior sum of a smooth cone is a new primitive ray");
    }
    fan
}

pub fn example2(a: &BigInt) -> Fan {
    let rays = vec![
        v([int(1), int(0), int(0)]),
        v([int(0), int(1), int(0)]),
        v([int(0), int(0), int(1)]),
        v([int(0), int(-1), -a]),
        v([int(0), int(0), int(-1)]),
        v([int(-1), int(1), int(-1)]),
        v([int(-1), int(0), int(-1)]),
        v([int(-1), int(-1), int(0)]),
    ];
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 8],
            [3, 4, 8],
            [4, 5, 8],
            [5, 6, 7],
            [5, 7, 8],
            [6, 7, 8],
            [2, 6, 8],
        ],
    )
    .expect("tabulated fan is valid")
}

const EXAMPLE3_CONES: [[usize; 3]; 12] = [
    [1, 2, 4],
    [2, 3, 4],
    [3, 4, 5],
    [4, 5, 6],
    [1, 4, 6],
    [1, 6, 7],
    [1, 2, 7],
    [2, 3, 7],
    [3, 5, 8],
    [5, 6, 8],
    [3, 7, 8],
    [6, 7, 8],
];

pub fn example3(a: &BigInt, b: &BigInt) -> Fan {
    let rays = vec![
        v([int(-1), b.clone(), int(0)]),
        v([int(0), int(-1), int(0)]),
        v([int(1), int(-1), int(0)]),
        v([int(-1), int(0), int(-1)]),
        v([int(0), int(0), int(-1)]),
        v([int(0), int(1), int(0)]),
        v([int(0), int(0), int(1)]),
        v([int(1), int(0), a.clone()]),
    ];
    build(rays, &EXAMPLE3_CONES).expect("tabulated fan is valid")
}

pub fn lemma_a(a: &BigInt) -> Fan {
    let rays = vec![
        v([int(1), int(0), int(0)]),
        v([int(0), int(1), int(0)]),
        v([int(0), int(0), int(1)]),
        v([int(0), int(-1), a.clone()]),
        v([int(0), int(0), int(-1)]),
        v([int(0), int(1), int(-1)]),
        v([int(-1), int(2), int(-1)]),
    ];
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 7],
            [1, 2, 7],
            [2, 3, 7],
            [3, 4, 7],
            [4, 5, 7],
            [5, 6, 7],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn lemma_b() -> Fan {
    let rays = fixed(&[
        [-1, 0, 0],
        [0, -1, 0],
        [0, 0, -1],
        [1, 0, 1],
        [0, 1, 1],
        [1, 1, 1],
        [1, 1, 0],
    ]);
    build(
        rays,
        &[
            [1, 2, 3],
            [2, 3, 4],
            [2, 4, 5],
            [1, 2, 5],
            [4, 5, 6],
            [1, 3, 7],
            [3, 4, 7],
            [4, 6, 7],
            [5, 6, 7],
            [1, 5, 7],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn case_8_5pp() -> Fan {
    let rays = fixed(&[
        [0, 1, 0],
        [0, -1, -1],
        [1, 0, 0],
        [0, 0, 1],
        [-1, 0, -1],
        [-1, -2, -2],
        [-1, -1, -1],
        [-1, -1, 0],
    ]);
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 8],
            [3, 4, 8],
            [4, 5, 8],
            [5, 6, 7],
            [5, 7, 8],
            [6, 7, 8],
            [2, 6, 8],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn case_8_8() -> Fan {
    let rays = fixed(&[
        [0, 0, 1],
        [1, 0, 0],
        [0, -1, -1],
        [-1, -2, -1],
        [0, 1, 0],
        [0, 0, -1],
        [-1, -2, -2],
        [-1, -1, -2],
    ]);
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 2, 5],
            [2, 5, 6],
            [3, 4, 7],
            [2, 3, 8],
            [3, 7, 8],
            [4, 7, 8],
            [4, 5, 8],
            [5, 6, 8],
            [2, 6, 8],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn case_8_11(a: &BigInt, b: &BigInt) -> Fan {
    let rays = vec![
        v([int(1), int(0), int(0)]),
        v([int(0), int(-1), int(0)]),
        v([int(0), int(0), int(1)]),
        v([int(1), int(1), a.clone()]),
        v([int(0), int(0), int(-1)]),
        v([int(0), int(-1), int(-1)]),
        v([int(-1), int(-2), int(-1)]),
        v([int(0), int(1), b.clone()]),
    ];
    build(
        rays,
        &[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 7],
            [1, 2, 7],
            [2, 3, 7],
            [5, 6, 7],
            [3, 4, 8],
            [4, 5, 8],
            [5, 7, 8],
            [3, 7, 8],
        ],
    )
    .expect("tabulated fan is valid")
}

pub fn case_8_13pp(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Fan {
    let rays = vec![
        v([int(1), int(1), b.clone()]),
        v([int(1), int(0), int(0)]),
        v([int(0), int(-1), int(0)]),
        v([int(0), int(0), int(-1)]),
        v([int(-1), a.clone(), d.clone()]),
        v([int(0), int(1), int(0)]),
        v([int(0), int(0), int(1)]),
        v([int(-1), c.clone(), d + 1]),
    ];
    build(rays, &EXAMPLE3_CONES).expect("tabulated fan is valid")
}

const CASE_8_14_CONES: [[usize; 3]; 12] = [
    [1, 2, 3],
    [1, 3, 4],
    [1, 2, 4],
    [3, 4, 5],
    [4, 5, 6],
    [2, 4, 6],
    [5, 6, 7],
    [2, 3, 8],
    [3, 5, 8],
    [5, 7, 8],
    [6, 7, 8],
    [2, 6, 8],
];

pub fn case_8_14p(a: &BigInt) -> Fan {
    let rays = vec![
        v([int(0), int(0), int(-1)]),
        v([int(1), int(0), int(0)]),
        v([int(0), int(1), int(0)]),
        v([int(-1), int(-1), a.clone()]),
        v([int(-1), int(-1), a + 1]),
        v([int(1), int(0), int(1)]),
        v([int(0), int(0), int(1)]),
        v([int(0), int(1), int(1)]),
    ];
    build(rays, &CASE_8_14_CONES).expect("tabulated fan is valid")
}

pub fn case_8_14pp(a: &BigInt, b: &BigInt) -> Fan {
    let rays = vec![
        v([int(-1), a.clone(), b.clone()]),
        v([int(0), int(1), int(0)]),
        v([int(0), int(-1), int(-1)]),
        v([int(0), int(0), int(1)]),
        v([int(1), int(0), int(1)]),
        v([int(1), int(1), int(0)]),
        v([int(1), int(0), int(0)]),
        v([int(1), int(-1), int(-1)]),
    ];
    build(rays, &CASE_8_14_CONES).expect("tabulated fan is valid")
}

/// The fan of projective `n`-space on `e_1, ..., e_n, -(e_1 + ... + e_n)`.
pub fn projective_space(n: usize) -> Fan {
    let mut rays: Vec<LatVec> = (0..n).map(|i| LatVec::unit(n, i)).collect();
    rays.push(LatVec::from(vec![-1; n]));
    simplex_fan(n, rays)
}

/// Complete fan whose maximal cones are all `n`-subsets of `n + 1` rays.
fn simplex_fan(n: usize, rays: Vec<LatVec>) -> Fan {
    let cones = (0..=n)
        .rev()
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new(n, rays, cones).expect("n + 1 positively spanning rays")
}

/// Rays `v1, v3, v4, v7` of [`case_8_5pp`].
pub fn p3_target() -> Fan {
    simplex_fan(3, fixed(&[[0, 1, 0], [1, 0, 0], [0, 0, 1], [-1, -1, -1]]))
}

/// Rays `v1, v2, v5, v7` of [`case_8_8`].
pub fn p1122_target() -> Fan {
    simplex_fan(3, fixed(&[[0, 0, 1], [1, 0, 0], [0, 1, 0], [-1, -2, -2]]))
}

pub fn blown_up_p112_target() -> Fan {
    let rays = vec![
        LatVec::from([1, 0]),
        LatVec::from([0, 1]),
        LatVec::from([1, 1]),
        LatVec::from([-1, -2]),
    ];
    Fan::new(
        2,
        rays,
        vec![vec![0, 2], vec![1, 2], vec![1, 3], vec![0, 3]],
    )
    .expect("complete plane fan")
}

fn param<'a>(params: &'a Params, name: &str) -> &'a BigInt {
    &params[name]
}

/// The fan named `name` with the given parameters.
pub fn get(name: &str, params: &Params) -> Result<Fan, CatalogError> {
    let e = entry(name)?;
    e.check_params(params)?;
    let p = |k| param(params, k);
    Ok(match name {
        "example1-sigma" => example1_sigma(),
        "example1" => example1(),
        "example1-extended" => {
            let k = p("k")
                .to_usize()
                .ok_or_else(|| CatalogError::BadParam { param: "k".into() })?;
            example1_extended(k)
        }
        "example2" => example2(p("a")),
        "example3" | "8-13p" => example3(p("a"), p("b")),
        "lemma-a" => lemma_a(p("a")),
        "lemma-b" => lemma_b(),
        "8-5p" => example2(&int(-1)),
        "8-5pp" => case_8_5pp(),
        "8-8" => case_8_8(),
        "8-11" => case_8_11(p("a"), p("b")),
        "8-13pp" => case_8_13pp(p("a"), p("b"), p("c"), p("d")),
        "8-14p" => case_8_14p(p("a")),
        "8-14pp" => case_8_14pp(p("a"), p("b")),
        "p1" => projective_space(1),
        "p2" => projective_space(2),
        "p3" => p3_target(),
        "p1122" => p1122_target(),
        "blown-up-p112" => blown_up_p112_target(),
        _ => unreachable!("every listed entry has a constructor"),
    })
}

/// True iff the entry is claimed to have no nontrivial nef line bundles for
/// these parameters.
pub fn admissible(name: &str, params: &Params) -> Result<bool, CatalogError> {
    let e = entry(name)?;
    e.check_params(params)?;
    let unit = |x: &BigInt| x.abs().is_one();
    Ok(match name {
        "example1" | "example1-extended" => true,
        "example2" => {
            let a = &params["a"];
            !a.is_zero() && *a != int(-1)
        }
        "example3" => {
            let (a, b) = (&params["a"], &params["b"]);
            !a.is_zero() && !b.is_zero() && !(unit(a) && unit(b))
        }
        _ => false,
    })
}

/// A machine-checkable claim about a catalog fan.
#[derive(Clone, Debug)]
pub enum Claim {
    Smooth(bool),
    Complete,
    PicardRank(usize),
    NefTrivial,
    Projective(bool),
    /// The divisor is nef and its class is nontrivial.
    NefWitness {
        label: &'static str,
        divisor: Divisor,
    },
    /// The fan refines `target`; with `weights`, the target is the weighted
    /// projective space with those weights.
    Refines {
        label: &'static str,
        target: Fan,
        weights: Option<Vec<BigInt>>,
    },
    /// `matrix` is a fan map onto `target` with finite-index image.
    MapsTo {
        label: &'static str,
        matrix: IntMatrix,
        target: Fan,
    },
    ContainsCones(Vec<Vec<usize>>),
    /// Each row appears among the wall inequalities up to positive scaling.
    WallRows(Vec<Vec<BigInt>>),
    /// Each row is a convexity inequality `d_j + <u_sigma, v_j> >= 0` for
    /// some maximal cone and ray, up to positive scaling.
    ConvexityRows(Vec<Vec<BigInt>>),
}

impl Claim {
    pub fn describe(&self) -> String {
        match self {
            Claim::Smooth(true) => "smooth".into(),
            Claim::Smooth(false) => "not smooth".into(),
            Claim::Complete => "complete".into(),
            Claim::PicardRank(r) => format!("Picard rank {r}"),
            Claim::NefTrivial => "no nontrivial nef line bundles".into(),
            Claim::Projective(true) => "projective".into(),
            Claim::Projective(false) => "not projective".into(),
            Claim::NefWitness { label, .. } => format!("{label} is nef with nontrivial class"),
            Claim::Refines { label, .. } => format!("refines {label}"),
            Claim::MapsTo { label, .. } => format!("maps onto {label}"),
            Claim::ContainsCones(_) => "contains the protected cones".into(),
            Claim::WallRows(rows) => format!("{} printed inequalities are wall rows", rows.len()),
            Claim::ConvexityRows(rows) => {
                format!(
                    "{} printed inequalities are convexity inequalities",
                    rows.len()
                )
            }
        }
    }
}

fn rows(table: &[Vec<BigInt>]) -> Claim {
    Claim::WallRows(table.to_vec())
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().copied().map(BigInt::from).collect()
}

fn example1_rows() -> Vec<Vec<BigInt>> {
    vec![
        ints(&[1, -1, 0, -1, 1, 0, 0, 0]),
        ints(&[0, 1, -2, 0, -2, 1, 0, 0]),
        ints(&[-2, 0, 1, 1, 0, -1, 0, 0]),
    ]
}

/// Convexity inequalities stated for [`example2`], as `row . d >= 0`.
pub fn example2_rows(a: &BigInt) -> Vec<Vec<BigInt>> {
    let z = || int(0);
    let one = || int(1);
    let m1 = || int(-1);
    vec![
        vec![one(), z(), -a, m1(), z(), z(), z(), one()],
        vec![
            z(),
            z(),
            z(),
            int(2),
            -(a * int(2) + int(1)),
            one(),
            z(),
            m1(),
        ],
        vec![m1(), one(), z(), z(), one(), m1(), z(), z()],
        vec![z(), int(-2), one(), z(), z(), one(), z(), m1()],
        vec![z(), one(), a.clone(), one(), z(), z(), z(), z()],
        vec![one(), z(), z(), m1(), a.clone(), z(), z(), one()],
    ]
}

/// Convexity inequalities stated for [`example3`], as `row . d >= 0`: the
/// four used when `a, b > 0`, the one used to finish, then the four extra
/// used for negative signs.
pub fn example3_rows(a: &BigInt, b: &BigInt) -> Vec<Vec<BigInt>> {
    let z = || int(0);
    let one = || int(1);
    let m1 = || int(-1);
    vec![
        vec![z(), z(), one(), z(), -a, one(), z(), m1()],
        vec![z(), one(), m1(), z(), z(), z(), -a, one()],
        vec![one(), z(), z(), m1(), one(), -b, z(), z()],
        vec![m1(), -b, z(), one(), z(), z(), one(), z()],
        vec![z(), one(), m1(), m1(), one(), z(), z(), z()],
        vec![z(), z(), one(), z(), z(), one(), a.clone(), m1()],
        vec![z(), z(), z(), one(), -(one() - a), z(), z(), one()],
        vec![m1(), z(), z(), one(), z(), b.clone(), one(), z()],
        vec![one(), -(one() - b), one(), z(), z(), z(), z(), z()],
    ]
}

fn smooth_threefold(rank: usize) -> Vec<Claim> {
    vec![
        Claim::Smooth(true),
        Claim::Complete,
        Claim::PicardRank(rank),
    ]
}

fn projection(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows)
}

/// The claims made about an entry, in machine-checkable form.
pub fn expected_report(name: &str, params: &Params) -> Result<Vec<Claim>, CatalogError> {
    let e = entry(name)?;
    e.check_params(params)?;
    let nef_trivial = admissible(name, params)?;
    let mut claims = match e.kind {
        EntryKind::Target => vec![Claim::Complete],
        EntryKind::Threefold if name == "example1-sigma" => {
            vec![Claim::Smooth(false), Claim::Complete]
        }
        EntryKind::Threefold if name.starts_with("lemma") => smooth_threefold(4),
        EntryKind::Threefold => {
            let extra = match name {
                "example1-extended" => params["k"].to_usize().unwrap_or(0),
                _ => 0,
            };
            smooth_threefold(5 + extra)
        }
    };
    if nef_trivial {
        claims.push(Claim::NefTrivial);
    }
    let p = |k: &str| &params[k];
    let x_projection = || Claim::MapsTo {
        label: "P^1",
        matrix: projection(&[&[1, 0, 0]]),
        target: projective_space(1),
    };
    match name {
        "example1-sigma" => claims.push(Claim::ContainsCones(
            PROTECTED_CONES.iter().map(|c| c.to_vec()).collect(),
        )),
        "example1" => claims.push(rows(&example1_rows())),
        "example1-extended" => claims.push(Claim::ContainsCones(
            PROTECTED_CONES.iter().map(|c| c.to_vec()).collect(),
        )),
        "example2" => {
            claims.push(Claim::ConvexityRows(example2_rows(p("a"))));
            if *p("a") == int(-1) {
                claims.push(witness_8_5p());
            }
        }
        "8-5p" => claims.push(witness_8_5p()),
        "example3" | "8-13p" => {
            claims.push(rows(&example3_rows(p("a"), p("b"))));
            if p("a").abs().is_one() && p("b").abs().is_one() {
                claims.push(Claim::NefWitness {
                    label: "-K",
                    divisor: Divisor::anticanonical(8),
                });
            }
        }
        "lemma-a" => claims.push(Claim::Projective(true)),
        "lemma-b" => {
            claims.push(Claim::Projective(false));
            claims.push(Claim::NefWitness {
                label: "-K",
                divisor: Divisor::anticanonical(7),
            });
        }
        "8-5pp" => claims.push(Claim::Refines {
            label: "P^3",
            target: p3_target(),
            weights: Some(ints(&[1, 1, 1, 1])),
        }),
        "8-8" => claims.push(Claim::Refines {
            label: "P(1,1,2,2)",
            target: p1122_target(),
            weights: Some(ints(&[1, 1, 2, 2])),
        }),
        "8-11" => claims.push(Claim::MapsTo {
            label: "blown-up P(1,1,2)",
            matrix: projection(&[&[1, 0, 0], &[0, 1, 0]]),
            target: blown_up_p112_target(),
        }),
        "8-13pp" | "8-14pp" => claims.push(x_projection()),
        "8-14p" => claims.push(Claim::MapsTo {
            label: "P^2",
            matrix: projection(&[&[1, 0, 0], &[0, 1, 0]]),
            target: projective_space(2),
        }),
        _ => {}
    }
    Ok(claims)
}

fn witness_8_5p() -> Claim {
    let mut d = vec![1; 8];
    d[3] = 0;
    d[7] = 0;
    Claim::NefWitness {
        label: "-K - D4 - D8",
        divisor: Divisor::from_ints(&d),
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The anticanonical divisor of `target` is ample, and its pullback (or a
/// Cartier multiple of it) is nef with nontrivial class on the source.
fn pullback_certifies(map: &FanMap) -> Result<bool, VerifyError> {
    let ample = Divisor::anticanonical(map.target().num_rays());
    if !is_ample(map.target(), &ample)? {
        return Ok(false);
    }
    let pb = map.pullback(&ample)?;
    Ok(pb.divisor.is_integral()
        && is_nef(map.source(), &pb.divisor)?
        && !is_trivial_class(map.source(), &pb.divisor)?)
}

/// Checks one claim against `fan`.
pub fn check_claim(fan: &Fan, claim: &Claim) -> Result<bool, VerifyError> {
    Ok(match claim {
        Claim::Smooth(s) => fan.is_smooth() == *s,
        Claim::Complete => fan.is_complete(),
        Claim::PicardRank(r) => fan.picard_rank()? == *r,
        Claim::NefTrivial => has_no_nontrivial_nef(fan)?,
        Claim::Projective(true) => {
            is_projective(fan)?
                && match ample_divisor(fan)? {
                    Some(d) => is_ample(fan, &d)?,
                    None => false,
                }
        }
        Claim::Projective(false) => !is_projective(fan)?,
        Claim::NefWitness { divisor, .. } => {
            is_nef(fan, divisor)? && !is_trivial_class(fan, divisor)?
        }
        Claim::Refines {
            target, weights, ..
        } => {
            let weights_ok = match weights {
                Some(w) => weighted_projective_weights(target.rays()).ok().as_ref() == Some(w),
                None => true,
            };
            weights_ok
                && is_refinement(fan, target)?
                && pullback_certifies(&FanMap::identity(fan.clone(), target.clone())?)?
        }
        Claim::MapsTo { matrix, target, .. } => {
            match FanMap::new(matrix.clone(), fan.clone(), target.clone()) {
                Ok(map) => map.image_index().is_some() && pullback_certifies(&map)?,
                Err(MapError::Incompatible { .. }) => false,
                Err(e) => return Err(e.into()),
            }
        }
        Claim::ContainsCones(cs) => cs.iter().all(|c| fan.has_cone(c)),
        Claim::WallRows(rows) => {
            let sys = crate::divisor::nef_system(fan)?;
            rows.iter().all(|r| sys.contains_row(r))
        }
        Claim::ConvexityRows(rows) => rows.iter().all(|r| is_convexity_row(fan, r)),
    })
}

/// Outcome of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: String,
    pub passed: bool,
}

/// Builds the entry and checks every expected claim.
pub fn verify(name: &str, params: &Params) -> Result<Vec<ClaimCheck>, VerifyError> {
    let fan = get(name, params)?;
    expected_report(name, params)?
        .iter()
        .map(|c| {
            Ok(ClaimCheck {
                claim: c.describe(),
                passed: check_claim(&fan, c)?,
            })
        })
        .collect()
}
