use sextic_core::fpgroup::{derived_data, AbelianInvariants, EnumOptions, Presentation};
use sextic_core::monodromy::{e7_b_images, e7_b_images_composed, infinity_package, reference_candidates, Branch, EType, Monodromy};
use sextic_core::sextic::*;
use sextic_core::FreeWord;

fn opts() -> EnumOptions {
    EnumOptions::default()
}

fn row1() -> Presentation {
    Presentation::new(3, row1_relators())
}

#[test]
fn row1_certificate() {
    let g = row1();
    let d = derived_data(&g, opts()).unwrap();
    assert_eq!(d.order, 41040);
    assert_eq!(d.abelianization, AbelianInvariants { torsion: vec![6], free_rank: 0 });
    assert_eq!(d.derived_order, 6840);
    assert!(d.derived_perfect);
    assert_eq!(g.element_order(&FreeWord::gen(1), opts()).unwrap(), 114);
    for k in [2, 3] {
        assert_eq!(g.index(&[FreeWord::gen(1), FreeWord::gen(k)], opts()).unwrap(), 1);
    }
}

#[test]
fn row1_cusp_relation_is_redundant() {
    let mut rels = row1_relators();
    assert_eq!(rels.remove(CUSP_RELATOR_INDEX), cusp_relator());
    assert_eq!(Presentation::new(3, rels).order(opts()).unwrap(), 41040);
}

#[test]
fn row1_assembled_matches_hand_relations() {
    for m in row_models(1).unwrap() {
        for h0 in reference_candidates(&m) {
            let p = assemble_with(&m, h0, None).presentation;
            assert_eq!(p.order(opts()).unwrap(), 41040);
        }
    }
}

#[test]
fn rows_2_to_11_both_routes() {
    for spec in &ROWS[1..] {
        let models = row_models(spec.row).unwrap();
        for m in &models {
            for h0 in reference_candidates(m) {
                let a = assemble_with(m, h0, None);
                assert_eq!(a.presentation.order(opts()).unwrap(), 6, "row {} reference {h0}", spec.row);
            }
        }
        for v in [Variant::Primary, Variant::Alternate] {
            let p = paper_relations(spec.row, v).unwrap();
            assert_eq!(p.order(opts()).unwrap(), 6, "row {} {v:?}", spec.row);
            assert_eq!(p.order(opts()).unwrap(), assemble_presentation(&models[0]).order(opts()).unwrap());
        }
    }
}

#[test]
fn both_branch_conventions_occur() {
    // the two reference darts of a trivalent-cornered model see opposite branches
    let m = &row_models(3).unwrap()[0];
    let branches: Vec<Branch> = reference_candidates(m).iter().take(2).map(|&h| Monodromy::with_reference(m, h).branch).collect();
    assert_eq!(branches.len(), 2);
    assert_ne!(branches[0], branches[1]);
}

#[test]
fn omitted_fiber_does_not_matter() {
    for spec in &ROWS {
        for m in row_models(spec.row).unwrap() {
            let h0 = reference_candidates(&m)[0];
            let mono = Monodromy::with_reference(&m, h0);
            for l in mono.singular_lassos() {
                let p = assemble_with(&m, h0, Some(l.vertex)).presentation;
                assert_eq!(p.order(opts()).unwrap(), spec.order, "row {} omitting {:?}", spec.row, l.vertex);
            }
        }
    }
}

#[test]
fn loop_group_is_an_extension_by_z3() {
    for b in [Branch::Alpha2, Branch::Alpha3] {
        let (rels, _) = plus_loop_relators(b);
        let p = Presentation::new(3, rels);
        assert_eq!(p.abelianization(), AbelianInvariants { torsion: vec![3], free_rank: 1 });
        let q = sextic_core::fpgroup::nilpotent::class2_quotient(&p);
        assert_eq!(q.commutant, AbelianInvariants { torsion: vec![3], free_rank: 0 });
    }
}

#[test]
fn b_images_agree_in_the_row1_group() {
    let table = row1().coset_table(&[], opts()).unwrap();
    let simple = e7_b_images();
    let composed = e7_b_images_composed();
    for k in 0..3 {
        let diff = simple[k].mul(&composed[k].inverse());
        assert_eq!(table.permutation(&diff), (0..table.index()).collect::<Vec<_>>(), "b{}", k + 1);
    }
}

#[test]
fn m_infinity_acts_trivially_in_the_row1_group() {
    let table = row1().coset_table(&[], opts()).unwrap();
    let pkg = infinity_package(EType::E7, Some(Branch::Alpha2)).unwrap();
    for r in pkg.m_infinity_relators() {
        assert_eq!(table.trace(0, &r), 0);
    }
}

#[test]
fn e7_package_variants_are_conjugate() {
    // swapping α₂ ↔ α₃ in the α₂ package gives a group of the same order once
    // the two leaf relations are swapped too
    for spec in ROWS.iter().filter(|s| s.starred) {
        let a = paper_relations(spec.row, Variant::Primary).unwrap();
        let b = paper_relations(spec.row, Variant::Alternate).unwrap();
        assert_ne!(a, b, "row {}", spec.row);
        assert_eq!(a.abelianization(), b.abelianization());
    }
}

#[test]
fn unknown_row() {
    assert!(matches!(paper_relations(12, Variant::Primary), Err(sextic_core::PipelineError::UnknownRow(12))));
    assert!(row_spec(0).is_err());
}
