use super::*;
use crate::curves::models::k12;
use cubic_algebra::frac;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(n: i64) -> Coeff {
    Coeff::int(n)
}

fn cs(v: &[i64]) -> Coeffs {
    v.iter().map(|&n| c(n)).collect()
}

#[test]
fn two_cycle_of_a_cubic() {
    let spec = CycleSpec::new(3, vec![2], cs(&[0, 1]), cs(&[0, 1])).unwrap();
    let f = recover_coeffs(&spec).unwrap();
    assert_eq!(f, cs(&[1, -2, 0, 1]));
    assert_eq!(eval(&f, &c(0)), c(1));
    assert_eq!(eval(&f, &c(1)), c(0));
    assert!(shorter_periods(&f, &spec).is_empty());
}

#[test]
fn fixed_point_of_a_quadratic() {
    let spec = CycleSpec::new(2, vec![1], cs(&[0]), cs(&[5, 1])).unwrap();
    assert_eq!(recover_coeffs(&spec).unwrap(), cs(&[0, 5, 1]));
}

#[test]
fn degenerate_specs() {
    let rep = CycleSpec::new(3, vec![2], cs(&[0, 0]), cs(&[0, 1])).unwrap();
    assert!(matches!(recover_coeffs(&rep), Err(Error::SingularMatrix(_))));
    let flat = CycleSpec::new(3, vec![2], cs(&[0, 1]), cs(&[1, 0])).unwrap();
    assert!(matches!(recover_coeffs(&flat), Err(Error::Degree(_))));
    assert!(CycleSpec::new(2, vec![2, 2], cs(&[0, 1, 2, 3]), vec![]).is_err());
    assert!(CycleSpec::new(3, vec![2], cs(&[0, 1]), cs(&[1])).is_err());
}

#[test]
fn several_cycles_fill_the_degree() {
    // d = 4 with a 2-cycle, a fixed point and another fixed point: M = d
    let spec = CycleSpec::new(4, vec![2, 1, 1], cs(&[0, 1, 2, -1]), cs(&[3])).unwrap();
    let f = recover_coeffs(&spec).unwrap();
    assert!(satisfies_cycles(&f, &spec));
    assert_eq!(spec.successor(1), 0);
    assert_eq!(spec.successor(2), 2);
    // M = d + 1: the leading coefficient is forced
    let full = CycleSpec::new(2, vec![3], cs(&[0, 1, 3]), vec![]).unwrap();
    assert!(matches!(recover_coeffs(&full), Err(Error::Degree(_))));
}

#[test]
fn full_cycle_with_determined_leading_term() {
    let q = |n, d| Coeff::from(frac(n, d));
    // z -> -3/2 z^2 + 5/2 z + 1 permutes 0 -> 1 -> 2 -> 0
    let f = vec![c(1), q(5, 2), q(-3, 2)];
    let spec = CycleSpec { d: 2, cycle_lengths: vec![3], points: cs(&[0, 1, 2]), tail: vec![] };
    assert!(satisfies_cycles(&f, &spec));
}

#[test]
fn spec_json_round_trip() {
    let spec = CycleSpec::new(3, vec![2], vec![c(0), Coeff::from(frac(1, 3))], cs(&[0, 1])).unwrap();
    assert_eq!(CycleSpec::from_json(&spec.to_json()).unwrap(), spec);
    assert!(CycleSpec::from_json(&serde_json::json!({"d": 3})).is_err());
}

#[test]
fn normalizing_a_marked_pair() {
    let f = Marked { coeffs: cs(&[4, -1, 2, 1]), points: cs(&[2, 5]) };
    let (phi, g) = normalize_marked(&f).unwrap();
    assert_eq!(phi, Affine { alpha: Coeff::from(frac(1, 3)), beta: Coeff::from(frac(-2, 3)) });
    assert_eq!(g.points, cs(&[0, 1]));
    // oracle: g(z) = (f(3z + 2) - 2) / 3 at a few values
    for z in [-2, 0, 1, 7] {
        let lhs = eval(&g.coeffs, &c(z));
        let rhs = (&eval(&f.coeffs, &c(3 * z + 2)) - &c(2)).div(&c(3)).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert_eq!(normalize_marked(&g).unwrap().1, g);
    let same = Marked { coeffs: f.coeffs.clone(), points: cs(&[2, 2]) };
    assert!(matches!(normalize_marked(&same), Err(Error::Normalization(_))));
}

#[test]
fn normalizing_a_fixed_point() {
    // f(z + 2) - 2 = z^3 + 3z^2 + z
    let f = Marked { coeffs: cs(&[4, 1, -3, 1]), points: cs(&[2]) };
    assert_eq!(eval(&f.coeffs, &c(2)), c(2));
    let (_, g) = normalize_marked(&f).unwrap();
    assert_eq!(g.points, cs(&[0]));
    assert!(g.coeffs[0].is_zero() && g.coeffs[2].is_one());
    assert_eq!(normalize_marked(&g).unwrap().1, g);
    let bad = Marked { coeffs: cs(&[0, 1, 0, 1]), points: cs(&[0]) };
    assert!(matches!(normalize_marked(&bad), Err(Error::Normalization(_))));
}

#[test]
fn normalizing_by_the_barycenter() {
    let f = Marked { coeffs: cs(&[3, 0, 3, 2]), points: vec![] };
    let (_, g) = normalize_marked(&f).unwrap();
    assert!(g.coeffs[2].is_zero() && g.coeffs[0].is_one());
    assert_eq!(normalize_marked(&g).unwrap().1, g);
    let fixed = Marked { coeffs: cs(&[0, 1, 0, 1]), points: vec![] };
    assert!(matches!(normalize_marked(&fixed), Err(Error::Normalization(_))));
}

#[test]
fn cubic_invariants() {
    let f = cs(&[5, -7, 0, 1]);
    assert_eq!(moduli_invariants(&f).unwrap(), cs(&[-7, 25]));
    assert_eq!(moduli_invariants(&cs(&[-5, -7, 0, 1])).unwrap(), cs(&[-7, 25]));
    assert_eq!(moduli_invariants(&cs(&[0, 4, 0, 1])).unwrap(), cs(&[4, 0]));
    assert_ne!(moduli_invariants(&f).unwrap(), moduli_invariants(&cs(&[5, 7, 0, 1])).unwrap());
    assert!(moduli_invariants(&cs(&[1, 1, 1, 1])).is_err());
    // z -> b z turns z^3 + a z + b into b^2 z^3 + a z + 1
    let g = conjugate(&f, &Affine { alpha: Coeff::from(frac(1, 5)), beta: c(0) }).unwrap();
    assert_eq!(g, cs(&[1, -7, 0, 25]));
}

#[test]
fn invariants_under_rotation() {
    let k = k12();
    for d in [3usize, 4, 5, 7] {
        // zeta_12^(12/(d-1)) has order d - 1
        let zeta = Coeff::gen_pow(&k, (12 / (d - 1)) as u64);
        let mut f: Coeffs = (0..=d).map(|i| c(i as i64 * 3 - 7)).collect();
        f[d] = c(1);
        f[d - 1] = c(0);
        let g = conjugate(&f, &Affine { alpha: zeta, beta: c(0) }).unwrap();
        assert!(g[d].is_one() && g[d - 1].is_zero());
        assert_eq!(moduli_invariants(&g).unwrap(), moduli_invariants(&f).unwrap(), "d = {d}");
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> Coeff {
    Coeff::from(frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
}

#[test]
fn random_two_cycle_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut done = 0;
    while done < 200 {
        let (z1, z2) = (random_rat(&mut rng), random_rat(&mut rng));
        if z1 == z2 {
            continue;
        }
        let a2 = random_rat(&mut rng);
        let a3 = random_rat(&mut rng);
        if a3.is_zero() {
            continue;
        }
        let spec = CycleSpec::new(3, vec![2], vec![z1, z2], vec![a2, a3]).unwrap();
        let f = recover_coeffs(&spec).unwrap();
        assert!(satisfies_cycles(&f, &spec));
        assert!(shorter_periods(&f, &spec).is_empty());
        let (_, n) = normalize_marked(&Marked { coeffs: f.clone(), points: spec.points.clone() }).unwrap();
        assert_eq!(n.points, cs(&[0, 1]));
        let again = CycleSpec::new(3, vec![2], n.points.clone(), n.coeffs[2..].to_vec()).unwrap();
        assert_eq!(recover_coeffs(&again).unwrap(), n.coeffs);
        assert_eq!(normalize_marked(&n).unwrap().1, n);
        done += 1;
    }
}
