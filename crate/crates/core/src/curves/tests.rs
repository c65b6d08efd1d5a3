use cubic_algebra::{parse_poly, vars, MultiPoly, RationalFunction};

use super::divpoly::{x_mult_map, x_mult_map_in};
use super::models::*;
use super::*;

fn poly(s: &str, names: &[&str]) -> MultiPoly {
    parse_poly(s, &vars(names), Some(&k12())).unwrap()
}

fn rf_t(s: &str) -> RationalFunction {
    RationalFunction::from_poly(poly(s, &["t"]))
}

#[test]
fn generators_lie_on_e0_and_torsion_has_order_two() {
    let g = generators_k12().unwrap();
    let e = over_root(&e0(), 12);
    for (name, p) in g.all() {
        assert!(e.on_curve(p), "{name}");
    }
    assert_eq!(e.order_up_to(&g.t1, 4).unwrap(), Some(2));
    assert_eq!(e.order_up_to(&g.t2, 4).unwrap(), Some(2));
    assert!(e.add(&g.t1, &g.t1).unwrap().is_infinity());
    assert_eq!(e.order_up_to(&g.p, 6).unwrap(), None);
}

#[test]
fn inverse_and_associativity() {
    let g = generators_k12().unwrap();
    let e = over_root(&e0(), 12);
    assert!(e.add(&g.r1, &e.neg(&g.r1)).unwrap().is_infinity());
    let lhs = e.add(&e.add(&g.r1, &g.r2).unwrap(), &g.t2).unwrap();
    let rhs = e.add(&g.r1, &e.add(&g.r2, &g.t2).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    assert!(e.on_curve(&lhs));
}

#[test]
fn doubling_p_over_k4() {
    let e = over_root(&e0(), 4);
    let p = p_k4().unwrap();
    let two_p = e.double(&p).unwrap();
    assert_eq!(two_p, CurvePoint::affine(rf_t("-1"), rf_t("t^2")));
}

#[test]
fn off_curve_point_is_rejected() {
    let e = over_root(&e0(), 4);
    assert!(matches!(e.point(rf_t("1"), rf_t("1")), Err(Error::Witness(_))));
}

#[test]
fn short_model_and_point_transport() {
    let mc = short_model_change();
    let short = e0().change_model(&mc).unwrap();
    assert_eq!(short, e0_short());

    let g = generators_k12().unwrap();
    let e = over_root(&e0(), 12);
    let es = over_root(&short, 12);
    let img = g.map(|p| mc.map_point(p));
    for (name, p) in img.all() {
        assert!(es.on_curve(p), "{name}");
    }
    assert_eq!(img.t1, CurvePoint::affine(rf_t("6"), rf_t("0")));
    assert_eq!(img.r1, CurvePoint::affine(rf_t("9*t^4 - 3"), rf_t("27*zeta^9*t^4*(t^4 - 1)")));
    // transport commutes with addition and is inverted by unmap_point
    let sum = e.add(&g.p, &g.r2).unwrap();
    assert_eq!(mc.map_point(&sum), es.add(&img.p, &img.r2).unwrap());
    assert_eq!(mc.unmap_point(&img.r2), g.r2);
    assert!(ModelChange::scaling(cubic_algebra::Coeff::zero(), cubic_algebra::Coeff::one()).is_err());
}

#[test]
fn j_invariant_of_e0() {
    let vs = vars(&["lambda"]);
    let p = |s: &str| parse_poly(s, &vs, None).unwrap();
    let expected = RationalFunction::new(p("64*(1 + 3*lambda)^3"), p("lambda*(lambda - 1)^2")).unwrap();
    assert_eq!(e0().j_invariant(), expected);
}

#[test]
fn duplication_map_matches_listing() {
    let e = over_root(&e0_short(), 24);
    let got = x_mult_map(&e, 2).unwrap();
    let names = ["x", "t"];
    let num = poly(
        "x^4+54*x^2+162*x^2*t^24+729+4374*t^24+6561*t^48+432*x-3888*x*t^24",
        &names,
    );
    let den = poly("4*(x-6)*(x^2+6*x+9-81*t^24)", &names);
    assert_eq!(got, RationalFunction::new(num, den).unwrap());
}

#[test]
fn triplication_map_matches_listing() {
    let e = over_root(&e0_short(), 12);
    let got = x_mult_map(&e, 3).unwrap();
    let names = ["x", "t"];
    let num = poly(
        "(1/9)*(-1574640-2775303*x+272097792*t^12
     +972*x^7*t^12-46656*x^6*t^12+131220*x^5*t^12+196830*x^5*t^24
     +209952*x^4*t^12+944784*x^4*t^24-8896716*x^3*t^12
     -7794468*x^3*t^24-19131876*x^3*t^36+5668704*x^2*t^12
     +85030560*x^2*t^24+153055008*x^2*t^36+170769708*x*t^12
     +54206982*x*t^24-1320099444*x*t^36+387420489*x*t^48-34992*x^4
     -1889568*x^2+5184*x^6-568620*x^3-2908045152*t^24
     +5509980288*t^36-2066242608*t^48+x^9+324*x^7+21870*x^5)",
        &names,
    );
    let den = poly("(-x^4+54*x^2+162*x^2*t^12+216*x-1944*x*t^12+243+1458*t^12+2187*t^24)^2", &names);
    assert_eq!(got, RationalFunction::new(num, den).unwrap());
}

#[test]
fn mult_maps_compose_and_agree_with_scalar_mul() {
    let e = e0_short();
    assert_eq!(x_mult_map(&e, 1).unwrap(), RationalFunction::var(&vars(&["x", "lambda"]), "x"));
    assert!(x_mult_map(&e, 0).is_err());
    let m2 = x_mult_map(&e, 2).unwrap();
    let m4 = x_mult_map(&e, 4).unwrap();
    assert_eq!(m2.subs("x", &m2), m4);

    let g = generators_k12().unwrap();
    let e12 = over_root(&e0(), 12);
    let map3 = x_mult_map_in(&e12, 3, "u").unwrap();
    let three_r1 = e12.scalar_mul(3, &g.r1).unwrap();
    let via_map = map3.subs("u", g.r1.x().unwrap()).with_vars(three_r1.x().unwrap().vars());
    assert_eq!(&via_map, three_r1.x().unwrap());
    let minus = e12.scalar_mul(-2, &g.p).unwrap();
    assert_eq!(minus, e12.neg(&e12.double(&g.p).unwrap()));
}
