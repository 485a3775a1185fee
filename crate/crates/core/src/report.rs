//! Reproduction checks for every claim made about the catalog, grouped into
//! numbered criteria. Shared by the acceptance test target and the CLI.

use std::fmt::Display;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    self, example1_extended, example1_sigma, example2_rows, example3_rows, expected_report, params,
    Claim, Params, PROTECTED_CONES,
};
use crate::divisor::{
    ample_divisor, cartier_multiple, has_no_nontrivial_nef, is_convexity_row, is_nef,
    is_nef_via_cartier, is_projective, is_trivial_class, nef_cone, nef_system, support_min_check,
    Divisor,
};
use crate::fan::{validate, Fan, FanFile};
use crate::fanmap::FanMap;
use crate::lattice::{LatVec, Rat};
use crate::oracle;
use crate::polyhedra::{dd_convert, HCone};

/// The pinned result of subdividing `example1-sigma` twice.
pub const EXAMPLE1_DELTA_JSON: &str = include_str!("../tests/golden/example1_delta.json");

const SEED: u64 = 0x746f_7269_636e_6566;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} [{status}] {}: {}",
            self.id, self.title, self.detail
        )
    }
}

pub const TITLES: [&str; 9] = [
    "example1 smooth, complete, Picard rank 5, no nontrivial nef",
    "example1 construction reproduces the pinned fan",
    "example1 printed inequalities are wall rows",
    "example2 family",
    "example3 family",
    "lemma fans",
    "classification morphisms certify nef bundles",
    "Picard rank extension",
    "property suites",
];

/// Counts checks and keeps the first few failures.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error as a failed check.
    fn attempt<T, E: Display>(
        &mut self,
        r: Result<T, E>,
        what: impl FnOnce() -> String,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, id: u8) -> CriterionResult {
        let passed = self.failures.is_empty();
        let mut detail = if passed {
            format!("{} checks", self.checked)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!(
                "{} of {} checks failed: {}",
                self.failures.len(),
                self.checked,
                shown.join("; ")
            )
        };
        for note in &self.notes {
            detail.push_str("; ");
            detail.push_str(note);
        }
        CriterionResult {
            id,
            title: TITLES[usize::from(id) - 1],
            passed,
            detail,
        }
    }
}

fn get(t: &mut Tally, name: &str, p: &Params) -> Option<Fan> {
    t.attempt(catalog::get(name, p), || format!("{name} {}", show(p)))
}

fn show(p: &Params) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("({})", parts.join(","))
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().copied().map(BigInt::from).collect()
}

fn criterion_1() -> CriterionResult {
    let mut t = Tally::default();
    if let Some(f) = get(&mut t, "example1", &Params::new()) {
        t.check(validate(f.to_raw()).is_ok(), || "validate".into());
        t.check(f.is_smooth(), || "smooth".into());
        t.check(f.is_complete(), || "complete".into());
        t.check(f.picard_rank().ok() == Some(5), || "Picard rank 5".into());
        if let Some(trivial) = t.attempt(has_no_nontrivial_nef(&f), || "nef cone".into()) {
            t.check(trivial, || "nef cone is not zero".into());
        }
    }
    t.finish(1)
}

fn criterion_2() -> CriterionResult {
    let mut t = Tally::default();
    let sigma = example1_sigma();
    t.check(sigma.max_cones().len() == 8, || "sigma has 8 cones".into());
    let once = t.attempt(sigma.star_subdivision(&LatVec::from([-1, -1, -1])), || {
        "subdivide at (-1,-1,-1)".into()
    });
    if let Some(once) = once {
        t.check(once.max_cones().len() == 10, || {
            "10 cones after first subdivision".into()
        });
        let twice = t.attempt(once.star_subdivision(&LatVec::from([-2, -1, -1])), || {
            "subdivide at (-2,-1,-1)".into()
        });
        let golden = t.attempt(FanFile::parse_fan(EXAMPLE1_DELTA_JSON), || {
            "golden file".into()
        });
        if let (Some(twice), Some(golden)) = (twice, golden) {
            t.check(twice.max_cones().len() == 12, || {
                "12 cones after second subdivision".into()
            });
            let sorted = |f: &Fan| {
                let mut c = f.max_cones().to_vec();
                c.sort();
                c
            };
            t.check(
                twice.rays() == golden.rays() && sorted(&twice) == sorted(&golden),
                || "differs from golden fan".into(),
            );
            t.check(twice == catalog::example1(), || {
                "catalog example1 differs".into()
            });
        }
    }
    t.finish(2)
}

fn example1_printed_rows() -> Vec<Vec<BigInt>> {
    vec![
        ints(&[1, -1, 0, -1, 1, 0, 0, 0]),
        ints(&[0, 1, -2, 0, -2, 1, 0, 0]),
        ints(&[-2, 0, 1, 1, 0, -1, 0, 0]),
    ]
}

fn criterion_3() -> CriterionResult {
    let mut t = Tally::default();
    if let Some(f) = get(&mut t, "example1", &Params::new()) {
        if let Some(sys) = t.attempt(nef_system(&f), || "walls".into()) {
            t.check(sys.walls().len() == 18, || {
                format!("{} walls, expected 18", sys.walls().len())
            });
            for (i, row) in example1_printed_rows().iter().enumerate() {
                t.check(sys.contains_row(row), || {
                    format!("inequality {} not a wall row", i + 1)
                });
            }
        }
    }
    t.finish(3)
}

fn criterion_4() -> CriterionResult {
    let mut t = Tally::default();
    for a in (-5..=5).filter(|a| ![0, -1].contains(a)) {
        let p = params(&[("a", a)]);
        if let Some(f) = get(&mut t, "example2", &p) {
            let r = has_no_nontrivial_nef(&f);
            if let Some(trivial) = t.attempt(r, || format!("a={a}")) {
                t.check(trivial, || format!("a={a}: nontrivial nef class"));
            }
        }
    }
    if let Some(f) = get(&mut t, "example2", &params(&[("a", -1)])) {
        let mut d = vec![1; 8];
        d[3] = 0;
        d[7] = 0;
        let d = Divisor::from_ints(&d);
        t.check(is_nef(&f, &d).unwrap_or(false), || {
            "a=-1: -K-D4-D8 not nef".into()
        });
        t.check(!is_trivial_class(&f, &d).unwrap_or(true), || {
            "a=-1: -K-D4-D8 trivial".into()
        });
    }
    let a = BigInt::from(3);
    if let Some(f) = get(&mut t, "example2", &params(&[("a", 3)])) {
        if let Some(sys) = t.attempt(nef_system(&f), || "a=3 walls".into()) {
            let mut off_wall = Vec::new();
            for (i, row) in example2_rows(&a).iter().enumerate() {
                if !sys.contains_row(row) {
                    off_wall.push(i + 1);
                }
                t.check(is_convexity_row(&f, row), || {
                    format!("a=3: inequality {} is not a convexity inequality", i + 1)
                });
            }
            t.check(off_wall == [2], || {
                format!("a=3: inequalities {off_wall:?} are not wall rows")
            });
            t.notes.push(
                "inequality 2 compares the cone <v4,v5,v8> with the non-adjacent ray v6, so it is a \
                 convexity inequality but not a wall row; the other five are wall rows"
                    .into(),
            );
        }
    }
    t.finish(4)
}

fn criterion_5() -> CriterionResult {
    let mut t = Tally::default();
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            if a == 0 || b == 0 || (a.abs() == 1 && b.abs() == 1) {
                continue;
            }
            if let Some(f) = get(&mut t, "example3", &params(&[("a", a), ("b", b)])) {
                let r = has_no_nontrivial_nef(&f);
                if let Some(trivial) = t.attempt(r, || format!("(a,b)=({a},{b})")) {
                    t.check(trivial, || format!("(a,b)=({a},{b}): nontrivial nef class"));
                }
            }
        }
    }
    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        if let Some(f) = get(&mut t, "example3", &params(&[("a", a), ("b", b)])) {
            let k = Divisor::anticanonical(8);
            t.check(is_nef(&f, &k).unwrap_or(false), || {
                format!("({a},{b}): -K not nef")
            });
            let cone = nef_cone(&f);
            t.check(cone.map(|c| !c.is_zero()).unwrap_or(false), || {
                format!("({a},{b}): nef cone is zero")
            });
        }
    }
    for (a, b) in [(2, 2), (-2, 2), (2, -2), (-2, -2), (3, 1), (-1, -3)] {
        if let Some(f) = get(&mut t, "example3", &params(&[("a", a), ("b", b)])) {
            if let Some(sys) = t.attempt(nef_system(&f), || format!("({a},{b}) walls")) {
                let rows = example3_rows(&BigInt::from(a), &BigInt::from(b));
                for (i, row) in rows.iter().enumerate() {
                    t.check(sys.contains_row(row), || {
                        format!("({a},{b}): inequality {} not a wall row", i + 1)
                    });
                }
            }
        }
    }
    t.finish(5)
}

fn criterion_6() -> CriterionResult {
    let mut t = Tally::default();
    for a in -3..=3 {
        if let Some(f) = get(&mut t, "lemma-a", &params(&[("a", a)])) {
            t.check(is_projective(&f).unwrap_or(false), || {
                format!("lemma-a a={a} not projective")
            });
            let d = ample_divisor(&f).ok().flatten();
            t.check(d.is_some(), || format!("lemma-a a={a}: no ample divisor"));
            t.check(f.picard_rank().ok() == Some(4), || {
                format!("lemma-a a={a}: Picard rank")
            });
        }
    }
    if let Some(f) = get(&mut t, "lemma-b", &Params::new()) {
        t.check(!is_projective(&f).unwrap_or(true), || {
            "lemma-b projective".into()
        });
        let k = Divisor::anticanonical(7);
        t.check(is_nef(&f, &k).unwrap_or(false), || {
            "lemma-b: -K not nef".into()
        });
        t.check(!is_trivial_class(&f, &k).unwrap_or(true), || {
            "lemma-b: -K trivial".into()
        });
        t.check(f.picard_rank().ok() == Some(4), || {
            "lemma-b: Picard rank".into()
        });
    }
    t.finish(6)
}

/// Every expected claim of every sweep point of the named entries.
fn verify_entries(t: &mut Tally, names: &[&str]) {
    for name in names {
        let entry = catalog::entry(name).expect("listed entry");
        for p in entry.sweep_points() {
            if let Some(checks) =
                t.attempt(catalog::verify(name, &p), || format!("{name} {}", show(&p)))
            {
                for c in checks {
                    t.check(c.passed, || format!("{name} {}: {}", show(&p), c.claim));
                }
            }
        }
    }
}

fn criterion_7() -> CriterionResult {
    let mut t = Tally::default();
    verify_entries(
        &mut t,
        &["8-5pp", "8-8", "8-11", "8-13pp", "8-14pp", "8-14p"],
    );
    t.finish(7)
}

fn criterion_8() -> CriterionResult {
    let mut t = Tally::default();
    for k in 1..=3 {
        let f = example1_extended(k);
        t.check(f.is_smooth(), || format!("k={k}: not smooth"));
        t.check(f.is_complete(), || format!("k={k}: not complete"));
        t.check(f.picard_rank().ok() == Some(5 + k), || {
            format!("k={k}: Picard rank")
        });
        for c in PROTECTED_CONES {
            t.check(f.has_cone(&c), || format!("k={k}: missing cone {c:?}"));
        }
        let r = has_no_nontrivial_nef(&f);
        if let Some(trivial) = t.attempt(r, || format!("k={k}")) {
            t.check(trivial, || format!("k={k}: nontrivial nef class"));
        }
    }
    t.finish(8)
}

/// Every catalog fan at every sweep point, in catalog order.
pub fn all_catalog_fans() -> Vec<(String, Fan)> {
    catalog::entries()
        .iter()
        .flat_map(|e| {
            e.sweep_points().into_iter().map(move |p| {
                let fan = catalog::get(e.name, &p).expect("catalog fans are valid");
                (format!("{} {}", e.name, show(&p)), fan)
            })
        })
        .collect()
}

/// Nef divisors certified by the catalog's claims: stated witnesses,
/// pullbacks along stated morphisms, and ample divisors of projective fans.
pub fn claimed_nef_divisors(name: &str, p: &Params, fan: &Fan) -> Vec<Divisor> {
    let Ok(claims) = expected_report(name, p) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for c in claims {
        let map = match c {
            Claim::NefWitness { divisor, .. } => {
                out.push(divisor);
                continue;
            }
            Claim::Projective(true) => {
                out.extend(ample_divisor(fan).ok().flatten());
                continue;
            }
            Claim::Refines { target, .. } => FanMap::identity(fan.clone(), target),
            Claim::MapsTo { matrix, target, .. } => FanMap::new(matrix, fan.clone(), target),
            _ => continue,
        };
        if let Ok(map) = map {
            let ample = Divisor::anticanonical(map.target().num_rays());
            out.extend(map.pullback(&ample).ok().map(|pb| pb.divisor));
        }
    }
    out
}

fn random_divisor(rng: &mut ChaCha8Rng, n: usize) -> Divisor {
    Divisor::from_ints(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())
}

/// Random cone `{x : A x >= 0}` with `dim <= 4`, at most 10 rows and
/// entries in `[-3, 3]`.
pub fn random_hcone(rng: &mut ChaCha8Rng) -> HCone {
    let dim = rng.gen_range(1..=4);
    let nrows = rng.gen_range(0..=10);
    let rows: Vec<Vec<BigInt>> = (0..nrows)
        .map(|_| {
            (0..dim)
                .map(|_| BigInt::from(rng.gen_range(-3..=3)))
                .collect()
        })
        .collect();
    HCone::from_int_rows(dim, &rows).expect("rows have the cone's dimension")
}

fn criterion_9() -> CriterionResult {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fans = all_catalog_fans();

    // (i) wall route against Cartier route; (iv) collects nef divisors
    let mut nef_found: Vec<(usize, Divisor)> = Vec::new();
    for (fi, (label, fan)) in fans.iter().enumerate() {
        let Some(sys) = t.attempt(nef_system(fan), || format!("(i) {label}")) else {
            continue;
        };
        for _ in 0..100 {
            let d = random_divisor(&mut rng, fan.num_rays());
            let walls = sys.cone().contains(d.coeffs());
            let cartier = cartier_multiple(fan, &d)
                .and_then(|k| is_nef_via_cartier(fan, &d.scale(&Rat::from_integer(k))));
            if let Some(cartier) = t.attempt(cartier, || format!("(i) {label} d={d}")) {
                t.check(walls == cartier, || {
                    format!("(i) {label} d={d}: routes disagree")
                });
            }
            if walls {
                nef_found.push((fi, d));
            }
        }
    }

    // (ii) double description against brute force
    for i in 0..200 {
        let c = random_hcone(&mut rng);
        t.check(dd_convert(&c) == oracle::extreme_rays(&c), || {
            format!("(ii) cone {i}: {:?}", c.normalized_rows())
        });
    }

    // (iii) wall rows annihilate principal divisors
    for (label, fan) in &fans {
        if let Ok(sys) = nef_system(fan) {
            for k in 0..fan.dim() {
                let e: Vec<Rat> = (0..fan.dim())
                    .map(|j| Rat::from_integer(BigInt::from(u8::from(j == k))))
                    .collect();
                let p = Divisor::principal(fan, &e);
                let ok = sys.walls().iter().all(|w| {
                    w.relation
                        .iter()
                        .zip(p.coeffs())
                        .map(|(r, c)| Rat::from_integer(r.clone()) * c)
                        .sum::<Rat>()
                        == Rat::from_integer(BigInt::from(0))
                });
                t.check(ok, || format!("(iii) {label}: e_{k}"));
            }
        }
    }

    // (iv) nef implies the support minima recover the coefficients
    let mut witnesses = 0;
    for e in catalog::entries() {
        for p in e.sweep_points() {
            let fan = catalog::get(e.name, &p).expect("catalog fans are valid");
            for d in claimed_nef_divisors(e.name, &p, &fan) {
                witnesses += 1;
                let label = format!("(iv) {} {} d={d}", e.name, show(&p));
                t.check(is_nef(&fan, &d).unwrap_or(false), || {
                    format!("{label}: not nef")
                });
                if let Some(ok) = t.attempt(support_min_check(&fan, &d), || label.clone()) {
                    t.check(ok, || label.clone());
                }
            }
        }
    }
    for (fi, d) in &nef_found {
        let (label, fan) = &fans[*fi];
        if let Some(ok) = t.attempt(support_min_check(fan, d), || format!("(iv) {label} d={d}")) {
            t.check(ok, || format!("(iv) {label} d={d}"));
        }
    }

    // (v) nef-trivial fans are not projective
    let mut skipped = 0;
    for (label, fan) in &fans {
        if !fan.is_smooth() || !fan.is_complete() {
            skipped += 1;
            continue;
        }
        if let (Some(trivial), Some(proj)) = (
            t.attempt(has_no_nontrivial_nef(fan), || format!("(v) {label}")),
            t.attempt(is_projective(fan), || format!("(v) {label}")),
        ) {
            t.check(!(trivial && proj), || {
                format!("(v) {label}: nef-trivial yet projective")
            });
        }
    }
    t.notes.push(format!(
        "{} fans, {} claimed witnesses, {} random nef divisors, {skipped} singular fans skipped in (v)",
        fans.len(),
        witnesses,
        nef_found.len()
    ));
    t.finish(9)
}

/// Runs criterion `id` (1 to 9).
pub fn criterion(id: u8) -> CriterionResult {
    match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => panic!("criteria are numbered 1 to 9"),
    }
}

pub fn full_report() -> Vec<CriterionResult> {
    (1..=9).map(criterion).collect()
}
