use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sextic_core::braid::*;
use sextic_core::monodromy::{infinity_package, local_monodromy, EType, LocalFiber, Monodromy};
use sextic_core::sextic::{row_models, ROWS};
use sextic_core::FreeWord;

const CASES: usize = 10_000;

fn random_braid(rng: &mut impl Rng, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    FreeWord::from_letters((0..n).map(|_| {
        let g = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            g
        } else {
            -g
        }
    }))
}

fn random_word(rng: &mut impl Rng, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    FreeWord::from_letters((0..n).map(|_| rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }))
}

fn nf(w: &FreeWord) -> Braid3 {
    Braid3::from_word(w)
}

#[test]
fn braid_relation_and_centrality_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e71c);
    let s121 = FreeWord::from_letters([1, 2, 1]);
    let s212 = FreeWord::from_letters([2, 1, 2]);
    let delta2 = full_twist();
    for _ in 0..CASES {
        let u = random_braid(&mut rng, 12);
        let v = random_braid(&mut rng, 12);
        let x = random_word(&mut rng, 8);

        // σ₁σ₂σ₁ = σ₂σ₁σ₂ inside arbitrary contexts
        let l = u.mul(&s121).mul(&v);
        let r = u.mul(&s212).mul(&v);
        assert_eq!(nf(&l), nf(&r));
        assert_eq!(act(&l, &x), act(&r, &x));

        // Δ² is central
        let l = u.mul(&delta2);
        let r = delta2.mul(&u);
        assert_eq!(nf(&l), nf(&r));
        assert_eq!(act(&l, &x), act(&r, &x));

        // Δ² acts as conjugation by ρ
        assert_eq!(act(&delta2, &x), x.conj_by(&rho()));

        // normal forms multiply like words; the action is a homomorphism
        assert_eq!(nf(&u.mul(&v)), nf(&u).mul(&nf(&v)));
        assert_eq!(act(&u.mul(&v), &x), act(&u, &act(&v, &x)));

        // round trip through the canonical word
        assert_eq!(nf(&nf(&u).to_word()), nf(&u));
        // the action fixes ρ
        assert_eq!(act(&u, &rho()), rho());
    }
}

#[test]
fn normal_form_separates_automorphisms() {
    // equal normal forms ⇔ equal actions (B₃ acts faithfully)
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let u = random_braid(&mut rng, 6);
        let v = random_braid(&mut rng, 6);
        let same_nf = nf(&u) == nf(&v);
        let same_act = automorphism(&u) == automorphism(&v);
        assert_eq!(same_nf, same_act, "{u} vs {v}");
    }
}

#[test]
fn m_infinity_degrees() {
    let deg = |e| infinity_package(e, Some(sextic_core::monodromy::Branch::Alpha2)).unwrap().m_infinity.degree;
    assert_eq!(deg(EType::E8), 15);
    assert_eq!(deg(EType::E7), 16);
    assert_eq!(deg(EType::E6), 18);
}

#[test]
fn e7_needs_branch() {
    assert!(infinity_package(EType::E7, None).is_err());
    assert!(infinity_package(EType::E8, None).is_ok());
}

#[test]
fn local_monodromy_examples() {
    let s = |w: &[i32]| Braid3::from_word(&FreeWord::from_letters(w.iter().copied()));
    assert_eq!(local_monodromy(LocalFiber::A(3), 1).unwrap(), s(&[2, 2, 2]));
    assert_eq!(local_monodromy(LocalFiber::A(1), 3).unwrap(), s(&[1]));
    assert_eq!(local_monodromy(LocalFiber::A(2), 2).unwrap(), Braid3::from_word(&sigma(3).pow(2)));
    assert_eq!(local_monodromy(LocalFiber::D(1), 3).unwrap().degree, 7);
    assert_eq!(local_monodromy(LocalFiber::E6Point, 1).unwrap().degree, 8);
    assert_eq!(local_monodromy(LocalFiber::E8Point, 1).unwrap().degree, 10);
    assert!(local_monodromy(LocalFiber::A(0), 1).is_err());
}

#[test]
fn lasso_products_equal_m_infinity_for_every_row() {
    let expected = infinity_package(EType::E7, Some(sextic_core::monodromy::Branch::Alpha2)).unwrap().m_infinity;
    for spec in &ROWS {
        let models = row_models(spec.row).unwrap();
        assert!(!models.is_empty(), "row {}", spec.row);
        for m in &models {
            for h0 in sextic_core::monodromy::reference_candidates(m) {
                let mono = Monodromy::with_reference(m, h0);
                assert_eq!(mono.m_infinity(), expected, "row {} reference {h0}", spec.row);
                let total = mono.total();
                assert_eq!(total.degree, 18);
                assert!(total.reduced.is_identity());
                assert_eq!(mono.distinguished().braid, Braid3::from_word(&FreeWord::from_letters([2, 2])));
            }
        }
    }
}

proptest! {
    #[test]
    fn reversal_is_an_anti_homomorphism(u in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..20),
                                        v in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..20)) {
        let (u, v) = (nf(&FreeWord::from_letters(u)), nf(&FreeWord::from_letters(v)));
        prop_assert_eq!(u.mul(&v).reversed(), v.reversed().mul(&u.reversed()));
        prop_assert_eq!(u.reversed().reversed(), u);
    }

    #[test]
    fn parse_format_roundtrip(u in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..30)) {
        let w = FreeWord::from_letters(u);
        prop_assert_eq!(parse_braid(&format_braid(&w)).unwrap(), w);
    }
}
