use num_bigint::BigInt;
use num_traits::Zero;
use toricnef::catalog::{self, example1, example1_sigma, params, projective_space, Params};
use toricnef::divisor::{
    cartier_multiple, has_no_nontrivial_nef, is_nef, is_nef_via_cartier, is_projective,
    is_trivial_class, nef_cone, nef_system, polytope, support_min_check, Divisor,
};
use toricnef::fan::{Fan, FanFile};
use toricnef::fanmap::{is_fan_map, is_refinement, pullback, weighted_projective_weights, FanMap};
use toricnef::lattice::{dot_rat, positively_spans, IntMatrix, LatVec, Rat};
use toricnef::oracle;
use toricnef::polyhedra::{cone_is_trivial_modulo, dd_convert, strict_feasible, vertices};

fn rat(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().copied().map(BigInt::from).collect()
}

fn entry(name: &str, p: &[(&str, i64)]) -> Fan {
    catalog::get(name, &params(p)).unwrap()
}

#[test]
fn golden_delta_matches_construction() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/example1_delta.json"
    ))
    .unwrap();
    let golden = FanFile::parse_fan(&text).unwrap();
    let built = example1();
    assert_eq!(built.rays(), golden.rays());
    let mut a = built.max_cones().to_vec();
    let mut b = golden.max_cones().to_vec();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert!(built.is_smooth() && built.is_complete());
}

#[test]
fn first_five_rays_positively_span() {
    assert!(positively_spans(&example1().rays()[..5]));
    assert!(!positively_spans(&example1().rays()[..3]));
}

#[test]
fn example1_nef_system_is_principal_subspace() {
    let delta = example1();
    let sys = nef_system(&delta).unwrap();
    assert_eq!(sys.walls().len(), 18);
    let v = dd_convert(sys.cone());
    assert!(v.extreme_rays().is_empty());
    assert_eq!(v.lineality().len(), 3);
    let principal = delta.ray_matrix().transpose();
    assert!(cone_is_trivial_modulo(sys.cone(), &principal).unwrap());
    assert!(has_no_nontrivial_nef(&delta).unwrap());
    assert!(!is_projective(&delta).unwrap());
}

#[test]
fn anticanonical_of_example1() {
    let delta = example1();
    let k = Divisor::anticanonical(8);
    assert!(!is_nef(&delta, &k).unwrap());
    assert!(!is_nef_via_cartier(&delta, &k).unwrap());
    assert!(!is_trivial_class(&delta, &k).unwrap());

    // P_{-K}: vertices by brute force. Every support minimum is attained
    // (u = (-1,-1,-1) gives <u, v3> = -1), so the identity holds although
    // -K is not nef: it is necessary for nefness, not sufficient.
    let p = polytope(&delta, &k).unwrap();
    let brute = oracle::vertices(3, p.inequalities());
    assert_eq!(brute.len(), 8);
    assert_eq!(vertices(&p).unwrap(), brute);
    let corner = vec![rat(-1), rat(-1), rat(-1)];
    assert!(p.contains(&corner));
    let v3 = delta.ray(2).to_rats();
    assert_eq!(dot_rat(&corner, &v3), rat(-1));
    let min = brute.iter().map(|u| dot_rat(u, &v3)).min().unwrap();
    assert_eq!(min, rat(-1));
    assert!(support_min_check(&delta, &k).unwrap());
}

#[test]
fn example1_polytopes_collapse() {
    let delta = example1();
    let zero = polytope(&delta, &Divisor::zero(8)).unwrap();
    assert_eq!(vertices(&zero).unwrap(), vec![vec![Rat::zero(); 3]]);
    assert!(support_min_check(&delta, &Divisor::zero(8)).unwrap());
    let d = Divisor::from_ints(&[0, 0, 0, 0, 0, 5, 0, 0]);
    let p = polytope(&delta, &d).unwrap().generators();
    assert!(p.is_bounded());
    assert_eq!(p.vertices, vec![vec![Rat::zero(); 3]]);
}

#[test]
fn principal_divisor_is_trivial() {
    let delta = example1();
    let e1 = Divisor::principal(&delta, &[rat(1), rat(0), rat(0)]);
    assert!(is_trivial_class(&delta, &e1).unwrap());
    assert!(is_nef(&delta, &e1).unwrap());
}

#[test]
fn stated_nef_divisors() {
    let f = entry("8-5p", &[]);
    let d = Divisor::from_ints(&[1, 1, 1, 0, 1, 1, 1, 0]);
    assert!(is_nef(&f, &d).unwrap());
    assert!(support_min_check(&f, &d).unwrap());

    let b = entry("lemma-b", &[]);
    let k = Divisor::anticanonical(7);
    assert!(is_nef(&b, &k).unwrap());
    assert!(support_min_check(&b, &k).unwrap());
    assert!(!nef_cone(&b).unwrap().is_zero());
    assert!(!is_projective(&b).unwrap());
    assert!(!strict_feasible(nef_system(&b).unwrap().cone()));
}

#[test]
fn nef_triviality_of_example3() {
    assert!(has_no_nontrivial_nef(&entry("example3", &[("a", 2), ("b", 1)])).unwrap());
    assert!(!has_no_nontrivial_nef(&entry("example3", &[("a", 1), ("b", 1)])).unwrap());
}

#[test]
fn projectivity() {
    assert!(is_projective(&projective_space(3)).unwrap());
    assert!(is_projective(&entry("lemma-a", &[("a", 1)])).unwrap());
    assert!(!is_projective(&entry("lemma-b", &[])).unwrap());
}

#[test]
fn nef_cone_of_projective_space() {
    let c = nef_cone(&projective_space(3)).unwrap();
    assert_eq!(c.extreme_rays().len(), 1);
    assert!(c.lineality().is_empty());
    let h = Divisor::from_ints(&[1, 0, 0, 0]);
    assert!(is_nef(&projective_space(3), &h).unwrap());
    assert!(is_nef_via_cartier(&projective_space(3), &h).unwrap());
}

#[test]
fn fan_maps() {
    let delta = example1();
    assert!(is_fan_map(&IntMatrix::identity(3), &delta, &delta).unwrap());
    let xy = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]);
    assert!(is_fan_map(&xy, &entry("8-14p", &[("a", 0)]), &projective_space(2)).unwrap());
    let x = IntMatrix::from_i64_rows(&[&[1, 0, 0]]);
    assert!(!is_fan_map(&x, &delta, &projective_space(1)).unwrap());
}

#[test]
fn refinements() {
    assert!(is_refinement(&example1(), &example1_sigma()).unwrap());
    assert!(is_refinement(&entry("8-5pp", &[]), &catalog::p3_target()).unwrap());
    assert!(!is_refinement(&projective_space(3), &example1()).unwrap());
}

#[test]
fn pullbacks_certify_nef_bundles() {
    let src = entry("8-5pp", &[]);
    let map = FanMap::identity(src.clone(), catalog::p3_target()).unwrap();
    assert_eq!(
        pullback(&map, &Divisor::zero(4)).unwrap().divisor,
        Divisor::zero(8)
    );
    let pb = pullback(&map, &Divisor::from_ints(&[1, 0, 0, 0])).unwrap();
    assert!(is_nef(&src, &pb.divisor).unwrap());
    assert!(!is_trivial_class(&src, &pb.divisor).unwrap());

    let src = entry("8-14p", &[("a", 1)]);
    let xy = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]);
    let map = FanMap::new(xy, src.clone(), projective_space(2)).unwrap();
    let pb = pullback(&map, &Divisor::from_ints(&[1, 0, 0])).unwrap();
    assert!(is_nef(&src, &pb.divisor).unwrap());
    assert!(!is_trivial_class(&src, &pb.divisor).unwrap());
}

#[test]
fn weighted_projective_weights_of_targets() {
    assert_eq!(
        weighted_projective_weights(projective_space(3).rays()).unwrap(),
        ints(&[1, 1, 1, 1])
    );
    let rays = [
        LatVec::from([0, 0, 1]),
        LatVec::from([1, 0, 0]),
        LatVec::from([0, 1, 0]),
        LatVec::from([-1, -2, -2]),
    ];
    assert_eq!(
        weighted_projective_weights(&rays).unwrap(),
        ints(&[1, 1, 2, 2])
    );
    let plane = [
        LatVec::from([1, 0]),
        LatVec::from([0, 1]),
        LatVec::from([-1, -2]),
    ];
    assert_eq!(
        weighted_projective_weights(&plane).unwrap(),
        ints(&[1, 1, 2])
    );
}

/// Pullback along the chain example1 -> (sigma subdivided once) -> sigma
/// agrees with the pullback along the composite.
#[test]
fn pullback_is_functorial_on_subdivision_chain() {
    let sigma = example1_sigma();
    let mid = sigma.star_subdivision(&LatVec::from([-1, -1, -1])).unwrap();
    let delta = example1();
    let to_mid = FanMap::identity(delta.clone(), mid.clone()).unwrap();
    let to_sigma = FanMap::identity(mid.clone(), sigma.clone()).unwrap();
    let direct = to_mid.then(&to_sigma).unwrap();
    for d in [
        Divisor::from_ints(&[1, 0, 0, 0, 0, 0]),
        Divisor::from_ints(&[0, 0, 0, 1, 2, 0]),
        Divisor::from_ints(&[3, -1, 2, 0, 1, 1]),
        Divisor::anticanonical(6),
    ] {
        let one = pullback(&to_sigma, &d).unwrap();
        let two = pullback(&to_mid, &one.divisor).unwrap();
        let all = pullback(&direct, &d).unwrap();
        let lhs = two.divisor.scale(&Rat::from_integer(all.multiple.clone()));
        let rhs = all.divisor.scale(&Rat::from_integer(
            one.multiple.clone() * two.multiple.clone(),
        ));
        assert_eq!(lhs, rhs, "d = {d}");
        assert_eq!(cartier_multiple(&sigma, &d).unwrap(), all.multiple);
    }
    let id = FanMap::identity(delta.clone(), delta.clone()).unwrap();
    let d = Divisor::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]);
    assert_eq!(pullback(&id, &d).unwrap().divisor, d);
}

#[test]
fn extended_examples() {
    let two = catalog::get("example1-extended", &params(&[("k", 2)])).unwrap();
    assert_eq!(two.num_rays(), 10);
    assert_eq!(two.picard_rank().unwrap(), 7);
    let three = catalog::example1_extended(3);
    assert_eq!(three.picard_rank().unwrap(), 8);
    assert!(has_no_nontrivial_nef(&three).unwrap());
    assert_eq!(
        catalog::get("example1-extended", &params(&[("k", 0)])).unwrap(),
        example1()
    );
    assert!(catalog::get("example1", &Params::new())
        .unwrap()
        .is_smooth());
}
