mod common;

use handleknot::fixtures::{build_family, kinoshita_presentation, lambert_diagram, Family};
use handleknot::diagram::wirtinger;
use handleknot::ideals::{alexander_report, elementary_ideal, maybe_member_mod_p, simplify_matrix, IdealGens, LambdaMatrix};
use handleknot::laurent::{augmentation_eval, gcd_lambda, involution_sigma, preferred_generator, sl2_substitute, LaurentPoly2};
use handleknot::presentation::{abelianization_map, relator_exponent_matrix, smith_normal_form, GroupPresentation, GroupRingElement};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn polys(seed: u64, n: usize) -> Vec<LaurentPoly2> {
    let mut r = common::rng(seed);
    (0..n).map(|_| common::rand_poly(&mut r, 4, 5, 2)).collect()
}

fn normalized(f: &LaurentPoly2) -> LaurentPoly2 {
    preferred_generator(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let v = polys(seed, 3);
        let (f, g, h) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(f * g) * h, f * &(g * h));
        prop_assert_eq!(f * &(g + h), &(f * g) + &(f * h));
        prop_assert_eq!(f * g, g * f);
        prop_assert_eq!(f + g, g + f);
        prop_assert!((f - f).is_zero());
    }

    #[test]
    fn augmentation_and_sigma_multiplicative(seed in any::<u64>()) {
        let v = polys(seed, 2);
        let (f, g) = (&v[0], &v[1]);
        prop_assert_eq!(augmentation_eval(&(f * g)), augmentation_eval(f) * augmentation_eval(g));
        prop_assert_eq!(involution_sigma(&(f * g)), &involution_sigma(f) * &involution_sigma(g));
        prop_assert_eq!(involution_sigma(&involution_sigma(f)), f.clone());
    }

    #[test]
    fn substitution_commutes_with_sigma(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let f = common::rand_poly(&mut r, 4, 5, 2);
        let m = common::rand_gl2(&mut r);
        prop_assert_eq!(
            sl2_substitute(&involution_sigma(&f), m).unwrap(),
            involution_sigma(&sl2_substitute(&f, m).unwrap())
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gcd_scales_by_common_factor(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let f = common::rand_nonzero_poly(&mut r, 3, 3, 1);
        let g = common::rand_nonzero_poly(&mut r, 3, 3, 1);
        let h = common::rand_nonzero_poly(&mut r, 3, 3, 1);
        let lhs = gcd_lambda(&(&f * &h), &(&g * &h)).unwrap();
        let rhs = &normalized(&h) * &gcd_lambda(&f, &g).unwrap();
        prop_assert_eq!(normalized(&lhs), normalized(&rhs), "f={} g={} h={}", f, g, h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_fundamental_formula(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let rank = r.gen_range(1..=4);
        let w = common::rand_word(&mut r, rank, 14);
        prop_assert!(common::fox_fundamental_holds(&w), "{}", w);
    }

    #[test]
    fn fox_product_rule(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let u = common::rand_word(&mut r, 3, 8);
        let v = common::rand_word(&mut r, 3, 8);
        prop_assert!(common::fox_product_rule_holds(&u, &v), "{} {}", u, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn zero_columns_shift_ideals(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (rows, cols) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let b = common::rand_lambda_matrix(&mut r, rows, cols);
        let k = r.gen_range(1..=2);
        prop_assert!(common::shift_identity_holds(&b, k), "{:?} k={}", b, k);
    }

    #[test]
    fn simplify_preserves_ideals(seed in any::<u64>()) {
        let b = matrix_with_units(seed);
        let s = simplify_matrix(&b);
        for d in 0..=b.cols {
            let direct = elementary_ideal(&b, d);
            let simplified = elementary_ideal(&s, d);
            prop_assert!(agree_mod_primes(&direct, &simplified), "d={} {:?}: {} vs {}", d, b, direct, simplified);
        }
    }

    #[test]
    fn elementary_ideals_increase(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (rows, cols) = (r.gen_range(1..=3), r.gen_range(1..=4));
        let b = common::rand_lambda_matrix(&mut r, rows, cols);
        for d in 0..cols {
            let small = elementary_ideal(&b, d);
            let big = elementary_ideal(&b, d + 1);
            prop_assert!(contained_mod_primes(&small, &big), "d={} {:?}", d, b);
        }
    }
}

const PRIMES: [u64; 3] = [2, 3, 5];

fn contained_mod_primes(i: &IdealGens, j: &IdealGens) -> bool {
    if j.full || i.is_zero() {
        return true;
    }
    i.generators()
        .iter()
        .all(|g| PRIMES.iter().all(|&p| maybe_member_mod_p(g, j, p).unwrap()))
}

fn agree_mod_primes(i: &IdealGens, j: &IdealGens) -> bool {
    if let ([f], [g]) = (i.gens.as_slice(), j.gens.as_slice()) {
        return i.full == j.full && f.is_associate(g);
    }
    contained_mod_primes(i, j) && contained_mod_primes(j, i)
}

/// Sparse random matrices up to 4x5 with some unit entries, so that
/// simplification has pivots to eliminate.
fn matrix_with_units(seed: u64) -> LambdaMatrix {
    let mut r = common::rng(seed);
    let (rows, cols) = (r.gen_range(2..=4), r.gen_range(2..=5));
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if r.gen_bool(0.4) { LaurentPoly2::zero() } else { common::rand_poly(&mut r, 2, 1, 1) })
                .collect()
        })
        .collect();
    let mut b = LambdaMatrix::new(rows, cols, entries);
    for _ in 0..r.gen_range(1..=2) {
        let (i, j) = (r.gen_range(0..rows), r.gen_range(0..cols));
        let sign = if r.gen_bool(0.5) { 1 } else { -1 };
        b.entries[i][j] = LaurentPoly2::monomial(sign, r.gen_range(-1..=1), r.gen_range(-1..=1));
    }
    b
}

fn fixture_presentations() -> Vec<(String, GroupPresentation)> {
    let mut v = vec![("kinoshita".to_string(), kinoshita_presentation())];
    for p in [3, 5] {
        v.push((format!("lambert({p})"), wirtinger(&lambert_diagram(p).unwrap()).unwrap()));
        v.push((format!("Gamma1({p})"), wirtinger(&build_family(Family::Gamma1, p).unwrap()).unwrap()));
    }
    v.push(("Gamma4(1)".into(), wirtinger(&build_family(Family::Gamma4, 1).unwrap()).unwrap()));
    v
}

#[test]
fn augmented_matrix_has_corank_two() {
    for (name, p) in fixture_presentations() {
        let m = relator_exponent_matrix(&p);
        let (d, _, _) = smith_normal_form(&m);
        let rank = (0..d.len().min(p.n)).filter(|&i| !d[i][i].is_zero()).count();
        assert_eq!(rank, p.n - 2, "{name}");
    }
}

#[test]
fn abelianization_kills_relators() {
    for (name, p) in fixture_presentations() {
        let ab = abelianization_map(&p).unwrap();
        for r in &p.relators {
            let img = GroupRingElement::word(r.clone()).abelianize(&ab.images);
            assert_eq!(img, LaurentPoly2::one(), "{name}: {r}");
        }
    }
}

#[test]
fn lambert_conditions_generate_same_ideal() {
    for p in [3, 5, 7] {
        assert_eq!(
            normalized(&common::lambert_f(p)),
            normalized(&common::lambert_companion(p)),
            "p={p}"
        );
    }
}

#[test]
fn verdicts_invariant_under_unimodular_substitution() {
    let mut r = common::rng(7);
    let mut ideals: Vec<(String, IdealGens)> = fixture_presentations()
        .into_iter()
        .map(|(n, p)| (n, alexander_report(&p).unwrap().e2))
        .collect();
    ideals.push(("lambert f(7)".into(), IdealGens::new([common::lambert_f(7)])));
    for (name, e2) in ideals {
        for _ in 0..10 {
            let m = common::rand_gl2(&mut r);
            assert!(common::verdicts_invariant(&e2, m), "{name} {m:?}");
        }
    }
}
