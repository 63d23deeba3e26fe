//! Reducible maximal sextics with an E₇ point.
//!
//! When the skeleton has a loop next to the distinguished region, the group
//! is a quotient of the loop group, whose commutant is central of order 3;
//! the class-2 quotient decides whether it survives.

use serde::Serialize;

use crate::fpgroup::nilpotent::class2_quotient;
use crate::fpgroup::{AbelianInvariants, EnumOptions, Presentation};
use crate::map::{CombMap, Color};
use crate::model::Model;
use crate::monodromy::reference_candidates;
use crate::sextic::{assemble_with, check_maximality};
use crate::singularity::SingularitySet;
use crate::skeleton::{admits_splitting_marking, enumerate_by_counts, VertexCounts};
use crate::word::FreeWord;

/// How the sextic splits, read off the abelianization Z ⊕ Z_gcd(d₁, d₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Splitting {
    TwoCubics,
    QuinticAndLine,
    QuarticAndConic,
    Other,
}

pub fn splitting_from_abelianization(ab: &AbelianInvariants) -> Splitting {
    match (ab.free_rank, &ab.torsion[..]) {
        (1, [3]) => Splitting::TwoCubics,
        (1, []) => Splitting::QuinticAndLine,
        (1, [2]) => Splitting::QuarticAndConic,
        _ => Splitting::Other,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitCandidate {
    pub set: SingularitySet,
    pub skeleton: String,
    pub branch: usize,
    pub d_faces: Vec<usize>,
    pub stem: bool,
    pub splitting: Splitting,
    pub abelianization: AbelianInvariants,
    pub commutant: AbelianInvariants,
    /// The same commutant from the presentation built at the other
    /// reference dart.
    pub commutant_other_reference: AbelianInvariants,
    #[serde(skip)]
    pub presentation: Presentation,
    #[serde(skip)]
    pub model: Model,
}

/// Whether the distinguished region has a trivalent corner `a` whose third
/// edge leads to a trivalent vertex `w` (not a corner) carrying a loop.
pub fn has_stem(model: &Model) -> bool {
    let m = model.map();
    let b = model.branch();
    let c = m.face_step(b);
    let corners = [m.vertex_of(b), m.vertex_of(c)];
    let trivalent = |v: usize| m.color(v) == Color::Black && m.valency(v) == 3;
    corners.iter().any(|&a| {
        if !trivalent(a) {
            return false;
        }
        m.vertices()[a].iter().any(|&d| {
            let w = m.vertex_of(m.pair(d));
            !corners.contains(&w) && trivalent(w) && m.vertices()[w].iter().any(|&e| m.vertex_of(m.pair(e)) == w)
        })
    })
}

fn d_subsets(n: usize, k: usize, exclude: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (0..n).filter(|&i| i != exclude).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pool.len()) {
        if mask.count_ones() as usize == k {
            out.push(pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &f)| f).collect());
        }
    }
    out
}

/// Skeletons without singular black vertices that admit a splitting marking,
/// with t = #white + #D-flags triple points (degree 9 − 3t).
fn split_skeletons() -> Vec<(CombMap, usize)> {
    let mut out = Vec::new();
    for t in 0..=2 {
        for vc in VertexCounts::for_degree(9 - 3 * t) {
            if vc.singular_blacks() != 0 || vc.white > t {
                continue;
            }
            for sk in enumerate_by_counts(vc) {
                if admits_splitting_marking(&sk).expect("no singular blacks") {
                    out.push((sk, t - vc.white));
                }
            }
        }
    }
    out
}

/// All reducible models that satisfy the budgets, with their class-2 data;
/// `stem` marks those with a loop next to the distinguished region.
pub fn split_analysis() -> Vec<SplitCandidate> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (sk, n_d) in split_skeletons() {
        let faces = sk.faces();
        for (fi, f) in faces.iter().enumerate() {
            if f.black_corners != 2 || f.boundary.len() != 2 {
                continue;
            }
            for &b in &f.boundary {
                for ds in d_subsets(faces.len(), n_d, fi) {
                    let darts: Vec<usize> = ds.iter().map(|&i| faces[i].boundary[0]).collect();
                    let model = Model::new(&sk, b, &darts);
                    if check_maximality(&model).is_err() || !seen.insert(model.code()) {
                        continue;
                    }
                    out.push(analyze(model));
                }
            }
        }
    }
    out.sort_by(|a, b| a.set.to_string().cmp(&b.set.to_string()).then(a.skeleton.cmp(&b.skeleton)));
    out
}

fn analyze(model: Model) -> SplitCandidate {
    let refs = reference_candidates(&model);
    let p = assemble_with(&model, refs[0], None).presentation;
    let q = class2_quotient(&p);
    let other = refs.get(1).map_or(refs[0], |&h| h);
    let q2 = class2_quotient(&assemble_with(&model, other, None).presentation);
    SplitCandidate {
        set: model.singularity_set(),
        skeleton: model.map().to_string(),
        branch: model.branch(),
        d_faces: model.d_faces().to_vec(),
        stem: has_stem(&model),
        splitting: splitting_from_abelianization(&q.abelianization),
        abelianization: q.abelianization.clone(),
        commutant: q.commutant.clone(),
        commutant_other_reference: q2.commutant,
        presentation: p,
        model,
    }
}

/// Checks in the finite quotients with x^n added (n in `exponents`) that
/// `c` commutes with every generator; returns the first failing exponent.
pub fn central_in_quotients(p: &Presentation, x: &FreeWord, c: &FreeWord, exponents: &[i64], opts: EnumOptions) -> Result<(), i64> {
    for &n in exponents {
        let q = p.with_relators(&[x.pow(n)]);
        let table = q.coset_table(&[], opts).map_err(|_| n)?;
        for g in 1..=p.ngens {
            let comm = FreeWord::comm(c, &FreeWord::gen(g));
            if table.trace(0, &comm) != 0 {
                return Err(n);
            }
        }
    }
    Ok(())
}
