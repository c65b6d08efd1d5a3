use super::*;
use cubic_algebra::{parse_poly, vars};

fn ctx() -> FiniteFieldCtx {
    choose_prime(DEFAULT_PRIME_FLOOR, DEFAULT_PRIME_CAP).unwrap()
}

fn case(kind: CaseKind, c: &[u8]) -> CaseDescriptor {
    CaseDescriptor::new(kind, c.to_vec()).unwrap()
}

fn zt(s: &str) -> MultiPoly {
    parse_poly(s, &vars(&[ZV, T]), Some(&k12())).unwrap()
}

#[test]
fn prime_choice() {
    let small = choose_prime(2, 100).unwrap();
    assert_eq!(small.p, 13);
    let next = next_prime(&small, 100).unwrap();
    assert_eq!(next.p, 37);
    for c in [small, next, ctx()] {
        let r = c.root;
        let v = (pow_mod(r, 4, c.p) + 1 + c.p - pow_mod(r, 2, c.p)) % c.p;
        assert_eq!(v, 0, "{c:?}");
        assert!((1..r).all(|x| !(pow_mod(x, 4, c.p) + 1 + c.p - pow_mod(x, 2, c.p)).is_multiple_of(c.p)));
    }
    assert_eq!(ctx().p, 10009);
    assert!(matches!(choose_prime(14, 36), Err(Error::Config(_))));
}

#[test]
fn reduction_maps_zeta_to_the_root() {
    let c = ctx();
    let k = k12();
    assert_eq!(c.reduce(&Coeff::gen_pow(&k, 1), &k), Some(c.root));
    assert_eq!(c.reduce(&Coeff::gen_pow(&k, 12), &k), Some(1));
    let half = Coeff::from(cubic_algebra::Rat::new(1.into(), 2.into()));
    assert_eq!(c.reduce(&half, &k), Some(c.p.div_ceil(2)));
}

#[test]
fn reduction_rejects_degree_drops() {
    let c = choose_prime(2, 100).unwrap();
    assert!(reduce_case_poly(&zt("z^2 + t"), &c).is_ok());
    assert!(matches!(reduce_case_poly(&zt("13*z^2 + z + t"), &c), Err(Error::Verification(_))));
    assert!(matches!(reduce_case_poly(&zt("z + 13*t^3 + t"), &c), Err(Error::Verification(_))));
    assert!(matches!(reduce_case_poly(&zt("z/13 + t"), &c), Err(Error::Verification(_))));
}

#[test]
fn case_enumeration() {
    let dup = CaseDescriptor::all(CaseKind::Duplication);
    let trip = CaseDescriptor::all(CaseKind::Triplication);
    assert_eq!((dup.len(), trip.len()), (32, 12));
    assert_eq!(dup.iter().filter(|c| c.is_trivial()).count(), 1);
    assert_eq!(dup[1].to_string(), "dup(0,0,0,0,1)");
    assert_eq!(trip[11].to_string(), "trip(2,1,1)");
    assert!(CaseDescriptor::new(CaseKind::Triplication, vec![3, 0, 0]).is_err());
    assert!(CaseDescriptor::new(CaseKind::Duplication, vec![0, 0, 0]).is_err());
    assert_eq!(CaseKind::parse("trip").unwrap(), CaseKind::Triplication);
    assert!(CaseKind::parse("quad").is_err());
}

#[test]
fn case_polynomials_have_the_expected_z_degree() {
    let d = build_case_poly(&case(CaseKind::Duplication, &[1, 0, 0, 0, 0])).unwrap();
    assert_eq!(degrees(&d).0, 4);
    let t = build_case_poly(&case(CaseKind::Triplication, &[2, 0, 0])).unwrap();
    assert_eq!(degrees(&t).0, 9);
}

#[test]
fn halving_a_two_torsion_point_gives_a_square() {
    // x(2Q) - 6 is a square for the 2-torsion point with x = 6
    let p = build_case_poly(&case(CaseKind::Duplication, &[0, 0, 0, 1, 0])).unwrap();
    let (h, rad) = radical(&p, Some(&ctx())).unwrap();
    let q = zt("81*t^24 + z^2 - 12*z - 45");
    assert!(h.exact_div(&q).unwrap().is_constant());
    assert!(rad.exact_div(&q).unwrap().is_constant());
    assert!(p.exact_div(&(&q * &q)).unwrap().is_constant());
}

#[test]
fn thirding_a_two_torsion_point_has_a_linear_factor() {
    let c = case(CaseKind::Triplication, &[0, 1, 0]);
    let r = certify_case(&c, &ctx(), Mode::NoLinearFactor, 0).unwrap();
    assert_eq!(r.verdict, Verdict::Reducible("linear factor z - (6)".into()));
    assert!(!r.reduced);
}

#[test]
fn trivial_cases_are_reducible() {
    for kind in [CaseKind::Duplication, CaseKind::Triplication] {
        let c = case(kind, if kind == CaseKind::Duplication { &[0; 5] } else { &[0; 3] });
        assert!(trivial_case_factor(&c).unwrap().is_some());
        let r = certify_case(&c, &ctx(), Mode::GeometricIrreducibility, 0).unwrap();
        assert!(matches!(r.verdict, Verdict::Reducible(_)), "{:?}", r.verdict);
    }
    assert!(trivial_case_factor(&case(CaseKind::Triplication, &[1, 0, 0])).unwrap().is_none());
}

#[test]
fn generic_cases_are_certified() {
    for (c, mode) in [
        (case(CaseKind::Duplication, &[1, 0, 0, 0, 0]), Mode::GeometricIrreducibility),
        (case(CaseKind::Duplication, &[0, 1, 0, 1, 1]), Mode::NoLinearFactor),
        (case(CaseKind::Triplication, &[2, 0, 0]), Mode::GeometricIrreducibility),
    ] {
        let r = certify_case(&c, &ctx(), mode, 1).unwrap();
        assert!(r.verdict.is_certified(), "{c}: {:?}", r.verdict);
        assert!(r.reduced);
        assert_eq!(r.prime, Some(10009));
        assert_eq!(r.to_json()["verdict"], "certified");
    }
}

#[test]
fn torsion_halving_is_not_reduced_but_has_no_linear_factor() {
    let c = case(CaseKind::Duplication, &[0, 0, 0, 0, 1]);
    let geo = certify_case(&c, &ctx(), Mode::GeometricIrreducibility, 0).unwrap();
    assert!(matches!(geo.verdict, Verdict::NotReduced(_)), "{:?}", geo.verdict);
    assert!(geo.verdict.no_linear_factor());
    let lin = certify_case(&c, &ctx(), Mode::NoLinearFactor, 0).unwrap();
    assert!(lin.verdict.is_certified());
}

#[test]
fn a_second_prime_agrees() {
    let c = case(CaseKind::Triplication, &[2, 1, 0]);
    let p2 = next_prime(&ctx(), DEFAULT_PRIME_CAP).unwrap();
    let a = certify_case(&c, &ctx(), Mode::GeometricIrreducibility, 0).unwrap();
    let b = certify_case(&c, &p2, Mode::GeometricIrreducibility, 0).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_ne!(a.prime, b.prime);
}
