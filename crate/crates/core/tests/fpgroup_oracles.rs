use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sextic_core::fpgroup::nilpotent::class2_quotient;
use sextic_core::fpgroup::snf::{from_i64, mat_mul, smith, Matrix};
use sextic_core::fpgroup::{derived_data, AbelianInvariants, EnumOptions, Presentation, Strategy as CosetStrategy};
use sextic_core::sextic::row1_relators;
use sextic_core::{FreeWord, GroupError};

fn pres(text: &str) -> Presentation {
    Presentation::parse(text).unwrap()
}

fn opts() -> EnumOptions {
    EnumOptions::default()
}

#[test]
fn known_orders() {
    assert_eq!(pres("gens 2\nrel a1^2\nrel a2^2\nrel (a1 a2)^3").order(opts()).unwrap(), 6);
    assert_eq!(pres("gens 2\nrel a1^4\nrel a1^2 a2^-2\nrel a2^-1 a1 a2 a1").order(opts()).unwrap(), 8);
    assert_eq!(pres("gens 2\nrel a1^3\nrel a2^3\nrel (a1 a2)^2").order(opts()).unwrap(), 12);
    assert_eq!(pres("gens 2\nrel a1^2\nrel a2^3\nrel (a1 a2)^5").order(opts()).unwrap(), 60);
    assert_eq!(pres("gens 1\nrel a1^7").order(opts()).unwrap(), 7);
}

#[test]
fn both_strategies_agree() {
    let p = pres("gens 2\nrel a1^2\nrel a2^3\nrel (a1 a2)^5");
    for s in [CosetStrategy::RelatorFirst, CosetStrategy::RowFilling] {
        let o = EnumOptions { strategy: s, ..opts() };
        assert_eq!(p.order(o).unwrap(), 60);
    }
}

#[test]
fn subgroup_index() {
    let s3 = pres("gens 2\nrel a1^2\nrel a2^2\nrel (a1 a2)^3");
    assert_eq!(s3.index(&[FreeWord::gen(1)], opts()).unwrap(), 3);
    assert_eq!(s3.index(&[FreeWord::from_letters([1, 2])], opts()).unwrap(), 2);
}

#[test]
fn infinite_group_hits_limit() {
    let z2 = pres("gens 2\nrel a1 a2 a1^-1 a2^-1");
    assert_eq!(z2.order(EnumOptions::with_max(1000)), Err(GroupError::LimitExceeded(1000)));
}

#[test]
fn nonabelian_group_order_and_lagrange() {
    let g = Presentation::new(3, row1_relators());
    let o = opts();
    let order = g.order(o).unwrap();
    assert_eq!(order, 41040);
    let a1 = FreeWord::gen(1);
    let index = g.index(&[a1.clone()], o).unwrap();
    let elt = g.element_order(&a1, o).unwrap();
    assert_eq!((index, elt), (360, 114));
    assert_eq!(index * elt, order);
    // the cyclic subgroup really has that order: a1^114 trivial, a1^57, a1^38 not
    let table = g.coset_table(&[], o).unwrap();
    assert_eq!(table.trace(0, &a1.pow(114)), 0);
    assert_ne!(table.trace(0, &a1.pow(57)), 0);
    assert_ne!(table.trace(0, &a1.pow(38)), 0);
}

#[test]
fn abelianization_examples() {
    let p = pres("gens 3\nrel a1^4\nrel a2^6\nrel a3 a3");
    assert_eq!(p.abelianization(), AbelianInvariants { torsion: vec![2, 2, 12], free_rank: 0 });
    assert_eq!(p.abelianization().primary(), vec![2, 2, 3, 4]);
    let q = pres("gens 2\nrel a1^3 a2^3");
    assert_eq!(q.abelianization(), AbelianInvariants { torsion: vec![3], free_rank: 1 });
}

#[test]
fn class2_oracles() {
    // Q8: commutant Z2; S3: γ₂ = γ₃, so abelian class-2 quotient
    let q8 = pres("gens 2\nrel a1^4\nrel a1^2 a2^-2\nrel a2^-1 a1 a2 a1");
    assert_eq!(class2_quotient(&q8).commutant, AbelianInvariants { torsion: vec![2], free_rank: 0 });
    let s3 = pres("gens 2\nrel a1^2\nrel a2^2\nrel (a1 a2)^3");
    assert!(class2_quotient(&s3).is_abelian());
    // free group of rank 2: Heisenberg quotient, commutant Z
    let f2 = Presentation::new(2, vec![]);
    assert_eq!(class2_quotient(&f2).commutant, AbelianInvariants { torsion: vec![], free_rank: 1 });
    // Heisenberg group mod 3
    let h3 = pres("gens 2\nrel a1^3\nrel a2^3");
    let q = class2_quotient(&h3);
    assert_eq!(q.commutant, AbelianInvariants { torsion: vec![3], free_rank: 0 });
    let c = q.commutant_image(&FreeWord::comm(&FreeWord::gen(1), &FreeWord::gen(2))).unwrap();
    assert_eq!(q.order_of(&c), Some(3));
    assert!(q.commutant_image(&FreeWord::gen(1)).is_none());
}

#[test]
fn derived_data_of_s3() {
    let d = derived_data(&pres("gens 2\nrel a1^2\nrel a2^2\nrel (a1 a2)^3"), opts()).unwrap();
    assert_eq!((d.order, d.derived_order, d.derived_perfect), (6, 3, false));
}

fn to_big(v: &[Vec<i64>]) -> Matrix {
    from_i64(v)
}

/// Determinant by fraction-free elimination.
fn det(a: &Matrix) -> BigInt {
    let n = a.len();
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn gcd_all(a: &Matrix) -> BigInt {
    use num_integer::Integer;
    a.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-30i64..=30, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_normal_form(rows in matrix_strategy()) {
        let a = to_big(&rows);
        let n = rows[0].len();
        let s = smith(&a, n);
        // U A V = D, D diagonal
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d.clone());
        for (i, r) in s.d.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
        // divisibility chain of nonnegative entries
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        // unimodular transforms
        prop_assert_eq!(det(&s.u).abs(), BigInt::one());
        prop_assert_eq!(det(&s.v).abs(), BigInt::one());
        // first determinantal divisor
        prop_assert_eq!(diag.first().cloned().unwrap_or_default(), gcd_all(&a));
        // square case: product of invariants is |det|
        if rows.len() == n {
            let p: BigInt = if diag.len() == n { diag.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(p, det(&a).abs());
        }
    }

    #[test]
    fn presentation_roundtrip(rels in proptest::collection::vec(proptest::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 1..10), 0..5)) {
        let p = Presentation::new(3, rels.into_iter().map(FreeWord::from_letters).collect());
        prop_assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }
}
