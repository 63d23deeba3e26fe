use sextic_core::fpgroup::{EnumOptions, Presentation};
use sextic_core::perturb::*;
use sextic_core::FreeWord;

fn b(s: &str) -> FreeWord {
    sextic_core::word::parse_with_prefix(s, 'b').unwrap()
}

fn relator(lhs: &str, rhs: &str) -> FreeWord {
    b(lhs).mul(&b(rhs).inverse())
}

/// The local relations as written in the classical list, transcribed
/// directly from the b-basis text.
fn reference_list() -> Vec<(&'static str, Vec<FreeWord>)> {
    vec![
        ("A4+A2", vec![relator("b1 b2 b1", "b2 b1 b2"), relator("(b2 b3)^2 b2", "b3 (b2 b3)^2"), relator("b2", "b3 b1 b3^-1")]),
        ("A3+A2+A1", vec![relator("b1 b3", "b3 b1"), relator("(b1 b2)^2", "(b2 b1)^2"), relator("b2 b3 b2", "b3 b2 b3")]),
        ("A5+A1", vec![relator("b2 b3", "b3 b2"), relator("(b1 b2)^3", "(b2 b1)^3"), relator("b3", "b1 b2 b1^-1")]),
        ("D5+A1", vec![relator("b1 b2", "b2 b1"), relator("b1 b3", "b3 b1"), relator("b2 b3 b2", "b3 b2 b3")]),
        ("A2+3A1", vec![relator("b1 b2", "b2 b1"), relator("b1 b3", "b3 b1"), relator("b2 b3 b2", "b3 b2 b3")]),
    ]
}

#[test]
fn e7_perturbation_classes() {
    let all = enumerate_e7_perturbations();
    // 2^7 induced subgraphs fall into 28 classes below E7 itself
    assert_eq!(all.len(), 28);
    assert!(all.iter().all(|p| p.set.milnor() < 7));
    assert!(all.iter().any(|p| p.set.points().is_empty()));
    for name in ["E6", "D6", "A6", "D5+A1", "A5+A1", "A4+A2", "A3+A2+A1", "A2+3A1", "3A1"] {
        assert!(all.iter().any(|p| p.set.to_string() == name), "{name}");
    }
}

#[test]
fn nonabelian_local_relations_match_the_list() {
    let all = enumerate_e7_perturbations();
    let nonab: Vec<&E7Perturbation> = all.iter().filter(|p| p.local_relators.is_some()).collect();
    let reference = reference_list();
    assert_eq!(nonab.len(), reference.len());
    for (name, rels) in reference {
        let p = nonab.iter().find(|p| p.set.to_string() == name).unwrap_or_else(|| panic!("{name} missing"));
        let got = p.local_relators.as_ref().unwrap();
        assert_eq!(got, &rels, "{name}");
    }
}

#[test]
fn nonabelian_local_groups_really_are_nonabelian() {
    // each local group has a finite nonabelian quotient with bᵢⁿ = 1
    let opts = EnumOptions::with_max(200_000);
    for p in enumerate_e7_perturbations().into_iter().filter(|p| p.local_relators.is_some()) {
        let rels = p.local_relators.clone().unwrap();
        let witness = (2..=10).find_map(|n| {
            let powers: Vec<FreeWord> = (1..=3).map(|i| FreeWord::gen(i).pow(n)).collect();
            let q = Presentation::new(3, rels.clone()).with_relators(&powers);
            let t = q.coset_table(&[], opts).ok()?;
            let comms = [(1, 2), (1, 3), (2, 3)];
            comms
                .iter()
                .any(|&(i, j)| t.trace(0, &FreeWord::comm(&FreeWord::gen(i), &FreeWord::gen(j))) != 0)
                .then_some(n)
        });
        assert!(witness.is_some(), "{} has no small nonabelian quotient", p.set);
    }
}

#[test]
fn every_perturbation_of_row1_is_abelian() {
    let opts = EnumOptions::default();
    let ps = row1_perturbations();
    // 8 A4 + 2 cusp + 28 E7 + the first-relation-only variant
    assert_eq!(ps.len(), 39);
    for p in &ps {
        let g = perturb_global(p);
        assert_eq!(g.order(opts).unwrap(), 6, "{p}");
    }
}

#[test]
fn perturbation_edits_the_right_relation() {
    let base = sextic_core::sextic::row1_relators();
    for p in row1_perturbations() {
        let g = perturb_global(&p);
        match p {
            Perturbation::A4 { .. } | Perturbation::Cusp { .. } => {
                assert_eq!(g.relators.len(), Presentation::new(3, base.clone()).relators.len());
                assert_ne!(g, Presentation::new(3, base.clone()));
            }
            Perturbation::E7 { .. } => assert!(g.relators.len() > Presentation::new(3, base.clone()).relators.len()),
        }
    }
}

#[test]
fn induced_types() {
    assert_eq!(induced_type(0b1111111).to_string(), "E7");
    assert_eq!(induced_type(0b0111111).to_string(), "A6");
    assert_eq!(induced_type(0b1011111).to_string(), "E6");
    assert_eq!(induced_type(0b1111110).to_string(), "D6");
    assert_eq!(induced_type(0b1111011).to_string(), "A3+A2+A1");
    assert_eq!(induced_type(0b1110111).to_string(), "A4+A2");
    assert_eq!(induced_type(0).points().len(), 0);
}
