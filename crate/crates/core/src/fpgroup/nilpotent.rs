//! Class-2 nilpotent quotient G/γ₃G.
//!
//! Elements of the free class-2 nilpotent group are collected as
//! x₁^a₁ … xₙ^aₙ · ∏_{i<j} [xᵢ, xⱼ]^c_ij with [x, y] = x⁻¹y⁻¹xy.
//! The quotient's commutant is Λ²Zⁿ modulo the central part of the normal
//! closure of the relators: the commutators [xₖ, r] and the Λ²-components
//! of relator products with zero exponent sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::snf::{self, Matrix};
use super::{AbelianInvariants, Presentation};
use crate::word::FreeWord;

/// Element of the free nilpotent group of class 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nil2 {
    pub a: Vec<BigInt>,
    /// Indexed by `pair_index(n, i, j)` for `i < j` (0-based).
    pub c: Vec<BigInt>,
}

pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Nil2 {
    pub fn identity(n: usize) -> Self {
        Nil2 { a: vec![BigInt::zero(); n], c: vec![BigInt::zero(); pair_count(n)] }
    }

    pub fn mul(&self, o: &Nil2) -> Nil2 {
        let n = self.a.len();
        let mut r = Nil2 {
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
            c: self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect(),
        };
        // x_i^a x_j^b = x_j^b x_i^a [x_j, x_i]^(-ab) for j < i
        for j in 0..n {
            if o.a[j].is_zero() {
                continue;
            }
            for i in j + 1..n {
                if self.a[i].is_zero() {
                    continue;
                }
                r.c[pair_index(n, j, i)] -= &self.a[i] * &o.a[j];
            }
        }
        r
    }

    pub fn letter(n: usize, l: i32) -> Nil2 {
        let mut e = Nil2::identity(n);
        e.a[l.unsigned_abs() as usize - 1] = BigInt::from(l.signum());
        e
    }

    pub fn of_word(n: usize, w: &FreeWord) -> Nil2 {
        w.letters().iter().fold(Nil2::identity(n), |acc, &l| acc.mul(&Nil2::letter(n, l)))
    }

    pub fn inverse(&self) -> Nil2 {
        let n = self.a.len();
        let neg = Nil2 { a: self.a.iter().map(|x| -x).collect(), c: vec![BigInt::zero(); pair_count(n)] };
        // g · (−a, c') = (0, c + c' + B) = 1
        let prod = self.mul(&neg);
        Nil2 { a: neg.a, c: prod.c.iter().map(|x| -x).collect() }
    }

    pub fn pow(&self, e: &BigInt) -> Nil2 {
        let n = self.a.len();
        let base = if e < &BigInt::zero() { self.inverse() } else { self.clone() };
        let k = e.magnitude().to_u64().expect("exponent fits u64");
        (0..k).fold(Nil2::identity(n), |acc, _| acc.mul(&base))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Class2Quotient {
    pub ngens: usize,
    pub abelianization: AbelianInvariants,
    pub commutant: AbelianInvariants,
    /// `[ᾱᵢ, ᾱⱼ]` (1-based i < j) in the commutant's invariant-factor coordinates.
    pub pairing: Vec<((usize, usize), Vec<i64>)>,
    #[serde(skip)]
    relator_elems: Vec<Nil2>,
    #[serde(skip)]
    e_smith: snf::Smith,
    #[serde(skip)]
    l_smith: snf::Smith,
}

impl Class2Quotient {
    pub fn is_abelian(&self) -> bool {
        self.commutant.is_trivial()
    }

    /// Coordinates of a central vector of Λ²Zⁿ in the commutant; one entry per
    /// nontrivial invariant factor (reduced mod it) followed by free coordinates.
    fn coords(&self, v: &[BigInt]) -> Vec<i64> {
        let row: Matrix = vec![v.to_vec()];
        let y = snf::mat_mul(&row, &self.l_smith.v);
        let diag = self.l_smith.diagonal();
        let mut out = Vec::new();
        for (i, yi) in y[0].iter().enumerate() {
            if i < diag.len() {
                if diag[i] == BigInt::from(1) {
                    continue;
                }
                out.push(yi.mod_floor(&diag[i]).to_i64().unwrap());
            } else {
                out.push(yi.to_i64().unwrap());
            }
        }
        out
    }

    /// Image in the commutant of an element `w ∈ [G, G]` (exponent sums in
    /// the row space of the relation matrix); `None` otherwise.
    pub fn commutant_image(&self, w: &FreeWord) -> Option<Vec<i64>> {
        let n = self.ngens;
        let e: Vec<BigInt> = w.exponent_sums(n).into_iter().map(BigInt::from).collect();
        // solve t · E = e via U E V = D
        let y = snf::mat_mul(&vec![e], &self.e_smith.v);
        let diag = self.e_smith.diagonal();
        let mut z = vec![BigInt::zero(); self.relator_elems.len()];
        for (i, yi) in y[0].iter().enumerate() {
            if i < diag.len() {
                let (q, r) = yi.div_rem(&diag[i]);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        let t = snf::mat_mul(&vec![z], &self.e_smith.u);
        let mut prod = Nil2::identity(n);
        for (r, ti) in self.relator_elems.iter().zip(&t[0]) {
            prod = prod.mul(&r.pow(ti));
        }
        let g = Nil2::of_word(n, w).mul(&prod.inverse());
        debug_assert!(g.a.iter().all(|x| x.is_zero()));
        Some(self.coords(&g.c))
    }

    /// Order of a commutant element given in `coords` form (`None` if infinite).
    pub fn order_of(&self, coords: &[i64]) -> Option<u64> {
        let t = &self.commutant.torsion;
        let mut ord: u64 = 1;
        for (i, &x) in coords.iter().enumerate() {
            if i < t.len() {
                let d = t[i] as i64;
                ord = num_integer::lcm(ord, (d / num_integer::gcd(d, x.rem_euclid(d))) as u64);
            } else if x != 0 {
                return None;
            }
        }
        Some(ord)
    }
}

/// Computes G/γ₃G for a presentation.
pub fn class2_quotient(p: &Presentation) -> Class2Quotient {
    let n = p.ngens;
    let m = pair_count(n);
    let relator_elems: Vec<Nil2> = p.relators.iter().map(|r| Nil2::of_word(n, r)).collect();
    let emat: Matrix = relator_elems.iter().map(|r| r.a.clone()).collect();
    let e_smith = snf::smith(&emat, n);

    let mut lrows: Matrix = Vec::new();
    // [x_k, R] for every relator and generator
    for r in &relator_elems {
        for k in 0..n {
            let mut v = vec![BigInt::zero(); m];
            for l in 0..n {
                if l == k || r.a[l].is_zero() {
                    continue;
                }
                if l < k {
                    v[pair_index(n, l, k)] += &r.a[l];
                } else {
                    v[pair_index(n, k, l)] -= &r.a[l];
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                lrows.push(v);
            }
        }
    }
    // products of relators with zero exponent sum: left kernel of E
    let rank = e_smith.rank();
    for t in e_smith.u.iter().skip(rank) {
        let mut v = vec![BigInt::zero(); m];
        for (ti, r) in t.iter().zip(&relator_elems) {
            if ti.is_zero() {
                continue;
            }
            for (vj, cj) in v.iter_mut().zip(&r.c) {
                *vj += ti * cj;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            lrows.push(v);
        }
    }
    let l_smith = snf::smith(&lrows, m);
    let (ctors, cfree) = snf::cokernel(&lrows, m);
    let commutant = AbelianInvariants {
        torsion: ctors.iter().map(|x| x.to_u64().unwrap()).collect(),
        free_rank: cfree,
    };
    let abelianization = p.abelianization();
    let mut q = Class2Quotient {
        ngens: n,
        abelianization,
        commutant,
        pairing: Vec::new(),
        relator_elems,
        e_smith,
        l_smith,
    };
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![BigInt::zero(); m];
            v[pair_index(n, i, j)] = BigInt::from(1);
            let c = q.coords(&v);
            q.pairing.push(((i + 1, j + 1), c));
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_is_dense() {
        let n = 5;
        let mut seen = vec![false; pair_count(n)];
        for i in 0..n {
            for j in i + 1..n {
                seen[pair_index(n, i, j)] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
    }

    #[test]
    fn free_group_rank_two() {
        let q = class2_quotient(&Presentation::new(2, vec![]));
        assert_eq!(q.commutant, AbelianInvariants { torsion: vec![], free_rank: 1 });
        assert_eq!(q.pairing[0].1.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn commutator_word_image() {
        let q = class2_quotient(&Presentation::new(2, vec![]));
        let w = FreeWord::comm(&FreeWord::gen(1).inverse(), &FreeWord::gen(2).inverse());
        assert_eq!(q.commutant_image(&w).unwrap().iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
        assert!(q.commutant_image(&FreeWord::gen(1)).is_none());
    }

    #[test]
    fn abelian_group_has_trivial_commutant() {
        let p = Presentation::new(2, vec![FreeWord::comm(&FreeWord::gen(1), &FreeWord::gen(2))]);
        assert!(class2_quotient(&p).is_abelian());
    }
}
