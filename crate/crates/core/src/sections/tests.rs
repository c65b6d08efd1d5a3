use super::*;
use crate::curves::models::{generators_k3, T};
use cubic_algebra::{parse_poly, vars};

fn rf(s: &str, names: &[&str]) -> RationalFunction {
    let vs = vars(names);
    RationalFunction::from_poly(parse_poly(s, &vs, Some(&k12())).unwrap())
}

fn r_on(a: &RationalFunction, b: &RationalFunction, lambda: &RationalFunction) -> RationalFunction {
    eval_rf(&period_two_curve(), &[("a", a), ("b", b), (LAMBDA, lambda)])
}

#[test]
fn constants_of_q_zeta24() {
    let vs = vars(&["w"]);
    let c = |x: Coeff| RationalFunction::constant(&vs, x);
    assert_eq!(c(sqrt_minus_two()).pow(2), RationalFunction::int(&vs, -2));
    assert_eq!(c(i_24()).pow(2), RationalFunction::int(&vs, -1));
    // zeta_12^9 lifts to i
    let i12 = RationalFunction::constant(&vs, Coeff::gen_pow(&k12(), 9));
    assert_eq!(lift_to_k24(&i12), c(i_24()));
}

#[test]
fn n1_family() {
    let vs = vars(&[LAMBDA]);
    let zero = n1_section(&RationalFunction::zero(&vs));
    assert_eq!(zero.a, RationalFunction::var(zero.w_vars(), LAMBDA));
    assert!(zero.b.is_zero() && zero.z1.is_zero());
    assert!(zero.verify().unwrap().ok());

    let one = n1_section(&RationalFunction::one(&vs));
    assert_eq!(one.a, rf("lambda - 27", &[LAMBDA]));
    assert_eq!(one.b, rf("3*lambda - 57", &[LAMBDA]));
    assert_eq!(one.z1, RationalFunction::int(&vs, -3));
    assert!(one.verify().unwrap().ok());

    let s = RationalFunction::var(&vars(&["s"]), "s");
    let sym = n1_section(&s);
    assert!(sym.verify().unwrap().ok());
    let zvs = vars(&["z", LAMBDA, "s"]);
    let z = RationalFunction::var(&zvs, "z");
    let f = crate::dynamics::CubicMap::new(sym.a.with_vars(&zvs), sym.b.with_vars(&zvs));
    let factored = rf("(z + 3*s)*(z^2 - 3*z*s - 18*s^2 - 1 + lambda)", &["z", LAMBDA, "s"]);
    assert_eq!(&f.apply(&z) - &z, factored);
}

#[test]
fn ab_formulas_land_on_the_period_two_curve() {
    assert!(ab_satisfies_r_on_e0().unwrap());
}

#[test]
fn e1_map_gives_period_two_points_of_multiplier_lambda() {
    let rep = verify_e1_map().unwrap();
    assert!(rep.phi2_vanishes && rep.multiplier_is_lambda, "{rep:?}");
}

#[test]
fn poles_at_the_obvious_points() {
    let vs = vars(&[LAMBDA]);
    let l = RationalFunction::var(&vs, LAMBDA);
    assert!(matches!(point_to_ab(&CurvePoint::Infinity, &l), Err(Error::Pole(_))));
    let t1 = CurvePoint::affine(RationalFunction::zero(&vs), RationalFunction::zero(&vs));
    assert!(matches!(point_to_ab(&t1, &l), Err(Error::Pole(_))));
    let e_zero = CurvePoint::affine(RationalFunction::zero(&vs), RationalFunction::zero(&vs));
    assert!(matches!(e1_point_to_triple(&e_zero, LAMBDA, 1), Err(Error::Pole(_))));
    assert!(matches!(e1_point_to_triple(&CurvePoint::Infinity, LAMBDA, 1), Err(Error::Pole(_))));
}

#[test]
fn off_curve_points_are_rejected() {
    let vs = vars(&[LAMBDA]);
    let q = CurvePoint::affine(RationalFunction::int(&vs, 1), RationalFunction::int(&vs, 1));
    assert!(matches!(point_to_ab(&q, &RationalFunction::var(&vs, LAMBDA)), Err(Error::Witness(_))));
    assert!(matches!(e1_point_to_triple(&q, LAMBDA, 1), Err(Error::Witness(_))));
}

#[test]
fn two_torsion_point_gives_b_zero() {
    let t2 = mw_point(&MWElement::new([0, 0, 0], [0, 1]), Model::E0Long).unwrap();
    let (a, b) = point_to_ab(&lift_point(&t2), &t_power(12)).unwrap();
    assert!(b.is_zero());
    let want = &rf("4*t^12 - 12*t^6 + 9 - t^12", &[T]) / &rf("6*t^6 - 6", &[T]);
    assert_eq!(a, want);
    assert!(r_on(&a, &b, &t_power(12)).is_zero());
}

#[test]
fn square_root_example_verifies_and_is_primitive() {
    let t = square_root_example();
    let rep = t.verify().unwrap();
    assert!(rep.ok(), "{rep:?}");
    assert_eq!(detect_root_order(&t), 1);
}

#[test]
fn square_root_example_comes_from_a_point_of_e1() {
    let vs = vars(&["w"]);
    let w = RationalFunction::var(&vs, "w");
    let i = RationalFunction::constant(&vs, i_24());
    let q = CurvePoint::affine(&(&i * &w) * &RationalFunction::int(&vs, -2), &w * &RationalFunction::int(&vs, 4));
    let from_e1 = e1_point_to_triple(&q, "w", 2).unwrap();
    assert!(from_e1.verify().unwrap().ok());
    let intro = square_root_example();
    assert_eq!(from_e1.a, intro.a);
    assert_eq!(from_e1.b, intro.b);
    assert_eq!(from_e1.z1, intro.z1);
    // the other point of the cycle comes from the translate by the kernel of the isogeny
    let f = crate::dynamics::CubicMap::new(intro.a.clone(), intro.b.clone());
    let e1w = e1().base_change(LAMBDA, &w.pow(2)).unwrap();
    let q2 = e1w.add(&q, &CurvePoint::affine(RationalFunction::zero(&vs), RationalFunction::zero(&vs))).unwrap();
    let other = e1_point_to_triple(&q2, "w", 2).unwrap();
    assert_eq!(other.z1, f.apply(&intro.z1));
}

#[test]
fn root_order_of_precomposed_sections() {
    let s = RationalFunction::int(&vars(&[LAMBDA]), 1);
    assert_eq!(detect_root_order(&n1_section(&s)), 1);
    let sq = square_root_example();
    let p = sq.precompose(2);
    assert_eq!(p.m, 4);
    assert!(p.verify().unwrap().ok());
    assert_eq!(detect_root_order(&p), 2);
    assert_eq!(detect_root_order(&sq.precompose(3)), 3);
}

#[test]
fn triple_json_round_trip() {
    let t = square_root_example();
    let back = SectionTriple::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    assert!(SectionTriple::from_json(&serde_json::json!({"m": 0})).is_err());
}

#[test]
fn mw_element_arithmetic() {
    let x = MWElement::parse("1, -2, 3, 1, 3").unwrap();
    assert_eq!(x.torsion, [1, 1]);
    assert_eq!(x.add(&x.neg()), MWElement::zero());
    assert_eq!(x.add(&x).torsion, [0, 0]);
    assert!(MWElement::parse("1,2,3").is_err());
    assert!(MWElement::parse("1,2,x,0,0").is_err());
    assert_eq!(x.to_string(), "1 P + -2 R1 + 3 R2 + 1 T1 + 1 T2");
}

#[test]
fn named_generators() {
    let t1 = mw_point(&MWElement::new([0; 3], [1, 0]), Model::E0Long).unwrap();
    assert!(t1.x().unwrap().is_zero() && t1.y().unwrap().is_zero());
    let p = mw_point(&MWElement::new([1, 0, 0], [0, 0]), Model::E0Long).unwrap();
    assert_eq!(p.x().unwrap(), &rf("-1 + (zeta^9 - 1)*t^3 + zeta^9*t^6", &[T]));
    assert_eq!(p.y().unwrap(), &rf("(1 - zeta^9)*(t^3 + zeta^9)*(t^3 + 1)*t^3", &[T]));
    let p2 = mw_point(&MWElement::new([2, 0, 0], [0, 0]), Model::E0Long).unwrap();
    assert_eq!(p2.x().unwrap(), &rf("-1", &[T]));
    assert_eq!(p2.y().unwrap(), &rf("t^6", &[T]));
    let short = mw_point(&MWElement::new([2, 0, 0], [0, 0]), Model::AppendixShort).unwrap();
    assert_eq!(short.x().unwrap(), &rf("-3", &[T]));
    assert_eq!(short.y().unwrap(), &rf("27*t^6", &[T]));
    let es = over_root(&crate::curves::models::e0_short(), 12);
    assert!(es.on_curve(&short));
}

#[test]
fn mw_point_is_a_homomorphism() {
    let e = over_root(&e0(), 12);
    let samples = [
        (MWElement::new([1, 0, 0], [0, 0]), MWElement::new([0, 1, 0], [1, 0])),
        (MWElement::new([1, -1, 1], [0, 1]), MWElement::new([-1, 0, 1], [1, 1])),
        (MWElement::new([0, 1, -1], [1, 0]), MWElement::new([0, -1, 1], [1, 0])),
    ];
    for (x, y) in samples {
        let lhs = mw_point(&x.add(&y), Model::E0Long).unwrap();
        let rhs = e
            .add(&mw_point(&x, Model::E0Long).unwrap(), &mw_point(&y, Model::E0Long).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "{x} and {y}");
    }
}

fn sweep(range: std::ops::RangeInclusive<i64>) {
    let e = over_root(&e0(), 12);
    let lambda = t_power(12);
    for m1 in range.clone() {
        for m2 in range.clone() {
            for m3 in range.clone() {
                for e1 in 0..2 {
                    for e2 in 0..2 {
                        let el = MWElement::new([m1, m2, m3], [e1, e2]);
                        let q = mw_point(&el, Model::E0Long).unwrap();
                        assert!(e.on_curve(&q), "{el}");
                        match point_to_ab(&lift_point(&q), &lambda) {
                            Ok((a, b)) => assert!(r_on(&a, &b, &lambda).is_zero(), "{el}"),
                            Err(Error::Pole(_)) => assert!(q.is_infinity() || q.x().unwrap().is_zero(), "{el}"),
                            Err(err) => panic!("{el}: {err}"),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn mw_sweep_unit_box() {
    sweep(-1..=1);
}

#[test]
#[ignore = "slow: the full box of radius two"]
fn mw_sweep_radius_two() {
    sweep(-2..=2);
}

#[test]
fn k3_generators_give_cubics_over_cube_roots() {
    let (r1, _, _) = generators_k3().unwrap();
    let (a, b) = point_to_ab(&r1, &t_power(3)).unwrap();
    assert!(r_on(&a, &b, &t_power(3)).is_zero());
    assert!(!a.is_zero() && !b.is_zero());
}
