//! Randomized algebraic identities for the exact kernels.

use std::sync::Arc;

use cubic_algebra::json::{poly_from_json, poly_to_json, rf_from_json, rf_to_json};
use cubic_algebra::resultant::{gcd, resultant};
use cubic_algebra::{frac, parse_poly, vars, MultiPoly, NfElem, NumberField, RationalFunction};
use proptest::prelude::*;

/// Dense coefficient table `c[i][j]` of `x^i y^j`.
fn poly_xy(c: &[Vec<i64>], field: Option<&Arc<NumberField>>) -> MultiPoly {
    let mut s = String::from("0");
    for (i, row) in c.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            s += &format!(" + ({v})*x^{i}*y^{j}");
        }
    }
    parse_poly(&s, &vars(&["x", "y"]), field).unwrap()
}

fn table(max_x: usize, max_y: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 1..=max_y), 1..=max_x)
}

/// A table whose leading `x`-coefficient is a nonzero constant.
fn monic_like(max_x: usize, max_y: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (table(max_x, max_y), 1i64..=3).prop_map(|(mut t, lead)| {
        t.push(vec![lead]);
        t
    })
}

fn elem(field: &Arc<NumberField>, c: &[(i64, i64)]) -> NfElem {
    NfElem::new(field, c.iter().map(|&(n, d)| frac(n, d)).collect())
}

fn coords(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..=7, 1i64..=3), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resultant_is_multiplicative(f in monic_like(2, 2), g in monic_like(2, 2), h in monic_like(2, 2)) {
        let (f, g, h) = (poly_xy(&f, None), poly_xy(&g, None), poly_xy(&h, None));
        let lhs = resultant(&(&f * &g), &h, "x").unwrap();
        let rhs = &resultant(&f, &h, "x").unwrap() * &resultant(&g, &h, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_on_common_factors(f in monic_like(2, 2), g in monic_like(1, 2), h in monic_like(1, 2)) {
        let (f, g, h) = (poly_xy(&f, None), poly_xy(&g, None), poly_xy(&h, None));
        prop_assert!(resultant(&(&f * &h), &(&g * &h), "x").unwrap().is_zero());
    }

    #[test]
    fn exact_division_round_trip(p in table(3, 3), q in monic_like(2, 2)) {
        let k = NumberField::cyclotomic12();
        let p = poly_xy(&p, Some(&k));
        let q = poly_xy(&q, Some(&k));
        let prod = &p * &q;
        prop_assert_eq!(prod.exact_div(&q).unwrap(), p.clone());
        let bumped = &prod + &MultiPoly::int(prod.vars(), 1);
        prop_assert!(q.degree_in("x").unwrap() == 0 || bumped.exact_div(&q).is_err());
    }

    #[test]
    fn gcd_contains_the_common_factor(p in monic_like(2, 2), q in monic_like(2, 2), r in monic_like(1, 2)) {
        let (p, q, r) = (poly_xy(&p, None), poly_xy(&q, None), poly_xy(&r, None));
        let g = gcd(&(&p * &r), &(&q * &r));
        prop_assert!(g.divisible_by(&r));
        prop_assert!((&p * &r).divisible_by(&g));
    }

    #[test]
    fn cyclotomic_embedding_is_a_homomorphism(a in coords(4), b in coords(4)) {
        let k12 = NumberField::cyclotomic12();
        let k24 = NumberField::cyclotomic24();
        let image = NfElem::generator(&k24).pow(2);
        let (a, b) = (elem(&k12, &a), elem(&k12, &b));
        let phi = |x: &NfElem| x.map_generator(&image);
        prop_assert_eq!(phi(&a.add(&b)), phi(&a).add(&phi(&b)));
        prop_assert_eq!(phi(&a.mul(&b)), phi(&a).mul(&phi(&b)));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(phi(&inv).mul(&phi(&a)), NfElem::from_rat(&k24, frac(1, 1)));
        }
    }

    #[test]
    fn json_round_trip(p in table(3, 3), q in monic_like(2, 2), gen in 0u64..12) {
        let k = NumberField::cyclotomic12();
        let z = cubic_algebra::Coeff::gen_pow(&k, gen);
        let p = poly_xy(&p, Some(&k)).scale(&z);
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p.clone());
        let r = RationalFunction::new(p, poly_xy(&q, None)).unwrap();
        prop_assert_eq!(rf_from_json(&rf_to_json(&r)).unwrap(), r);
    }
}
