use std::collections::BTreeMap;

use sextic_core::fpgroup::{AbelianInvariants, EnumOptions};
use sextic_core::monodromy::reference_candidates;
use sextic_core::sextic::{assemble_with, check_maximality};
use sextic_core::split::*;
use sextic_core::FreeWord;

fn z3() -> AbelianInvariants {
    AbelianInvariants { torsion: vec![3], free_rank: 0 }
}

fn trivial() -> AbelianInvariants {
    AbelianInvariants { torsion: vec![], free_rank: 0 }
}

#[test]
fn five_sets_with_expected_commutants() {
    let found = split_analysis();
    let mut by_set: BTreeMap<String, Vec<&SplitCandidate>> = BTreeMap::new();
    for c in found.iter().filter(|c| c.stem) {
        by_set.entry(c.set.to_string()).or_default().push(c);
    }
    let expected = [
        ("2E7+A5", z3()),
        ("E7+A11+A1", z3()),
        ("E7+D12", trivial()),
        ("E7+D5+A7", trivial()),
        ("E7+A9+A2+A1", trivial()),
    ];
    assert_eq!(by_set.len(), expected.len(), "{:?}", by_set.keys().collect::<Vec<_>>());
    for (name, comm) in expected {
        let cs = by_set.get(name).unwrap_or_else(|| panic!("{name} not found"));
        for c in cs {
            assert_eq!(c.commutant, comm, "{name}");
            assert_eq!(c.splitting, Splitting::TwoCubics, "{name}");
            assert!(check_maximality(&c.model).is_ok());
            assert_eq!(c.set.milnor(), 19);
        }
    }
}

#[test]
fn other_splittings_are_reported() {
    let found = split_analysis();
    let kinds: Vec<Splitting> = found.iter().filter(|c| c.set.to_string() == "E7+A9+A2+A1").map(|c| c.splitting).collect();
    for k in [Splitting::TwoCubics, Splitting::QuinticAndLine, Splitting::QuarticAndConic] {
        assert!(kinds.contains(&k), "{k:?}");
    }
    for c in &found {
        assert_eq!(c.set.milnor(), 19);
    }
}

#[test]
fn both_reference_darts_give_the_same_commutant() {
    for c in split_analysis() {
        assert_eq!(c.commutant, c.commutant_other_reference, "{}", c.set);
    }
}

#[test]
fn commutant_is_independent_of_the_reference() {
    use sextic_core::fpgroup::nilpotent::class2_quotient;
    for c in split_analysis() {
        for h0 in reference_candidates(&c.model) {
            let p = assemble_with(&c.model, h0, None).presentation;
            assert_eq!(class2_quotient(&p).commutant, c.commutant, "{} reference {h0}", c.set);
        }
    }
}

#[test]
fn difference_of_branches_is_central_in_finite_quotients() {
    // α₂α₃⁻¹ generates the commutant of the loop group; check centrality in
    // finite quotients where the distinguished generator has small order
    let opts = EnumOptions::with_max(500_000);
    let x = FreeWord::gen(2);
    let c = FreeWord::from_letters([2, -3]);
    for cand in split_analysis().into_iter().filter(|c| c.stem) {
        assert_eq!(central_in_quotients(&cand.presentation, &x, &c, &[5, 7, 8], opts), Ok(()), "{}", cand.set);
    }
}

#[test]
fn splitting_tags() {
    let t = |torsion: Vec<u64>, free_rank| splitting_from_abelianization(&AbelianInvariants { torsion, free_rank });
    assert_eq!(t(vec![3], 1), Splitting::TwoCubics);
    assert_eq!(t(vec![], 1), Splitting::QuinticAndLine);
    assert_eq!(t(vec![2], 1), Splitting::QuarticAndConic);
    assert_eq!(t(vec![6], 0), Splitting::Other);
}
