//! Perturbations of the curve with the nonabelian group: its A-type points
//! and its E₇ point.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::GroupError;
use crate::fpgroup::{EnumOptions, Presentation};
use crate::monodromy::{e7_b_images, rel};
use crate::sextic::{cusp_relator, leaf_relator, region_relator, row1_relators, CUSP_RELATOR_INDEX};
use crate::singularity::{SingularitySet, SingularityType};
use crate::word::FreeWord;

/// Edges of the E₇ Dynkin graph: a chain 0–1–2–3–4–5 with 6 attached to 2.
pub const E7_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)];

/// ADE type of each connected component of the subgraph induced on `mask`.
pub fn induced_type(mask: u32) -> SingularitySet {
    let inside = |v: usize| mask >> v & 1 == 1;
    let nbrs = |v: usize| -> Vec<usize> {
        E7_EDGES
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) if inside(b) => Some(b),
                (_, true) if inside(a) => Some(a),
                _ => None,
            })
            .collect()
    };
    let mut seen = 0u32;
    let mut pts = Vec::new();
    for s in 0..7 {
        if !inside(s) || seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = vec![s];
        seen |= 1 << s;
        let mut i = 0;
        while i < comp.len() {
            for u in nbrs(comp[i]) {
                if seen >> u & 1 == 0 {
                    seen |= 1 << u;
                    comp.push(u);
                }
            }
            i += 1;
        }
        let n = comp.len() as u32;
        match comp.iter().find(|&&v| nbrs(v).len() == 3) {
            None => pts.push(SingularityType::A(n)),
            Some(&c) => {
                // arm lengths from the branch vertex
                let mut arms: Vec<u32> = nbrs(c)
                    .into_iter()
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (c, start, 1);
                        loop {
                            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                            match next.first() {
                                Some(&x) => {
                                    prev = cur;
                                    cur = x;
                                    len += 1;
                                }
                                None => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                pts.push(match arms[..] {
                    [1, 1, _] => SingularityType::D(n),
                    _ => SingularityType::E(n),
                });
            }
        }
    }
    SingularitySet::new(pts)
}

/// A perturbation of the E₇ point and, if its local group is nonabelian,
/// the relations of that group in the basis β₁, β₂, β₃.
#[derive(Debug, Clone, Serialize)]
pub struct E7Perturbation {
    pub set: SingularitySet,
    pub local_relators: Option<Vec<FreeWord>>,
}

fn b(k: usize) -> FreeWord {
    FreeWord::gen(k)
}

fn braid_rel(x: &FreeWord, y: &FreeWord) -> FreeWord {
    rel(&x.mul(y).mul(x), &y.mul(x).mul(y))
}

/// Relations of the nonabelian local groups.
pub fn local_relations(set: &SingularitySet) -> Option<Vec<FreeWord>> {
    let name = set.to_string();
    let r = match name.as_str() {
        "A4+A2" => vec![
            braid_rel(&b(1), &b(2)),
            leaf_relator(&b(2), &b(3), 2),
            rel(&b(2), &b(1).conj_by(&b(3))),
        ],
        "A3+A2+A1" => vec![
            FreeWord::comm(&b(1), &b(3)),
            region_relator(&b(1), &b(2), 4),
            braid_rel(&b(2), &b(3)),
        ],
        "A5+A1" => vec![
            FreeWord::comm(&b(2), &b(3)),
            region_relator(&b(1), &b(2), 6),
            rel(&b(3), &b(2).conj_by(&b(1))),
        ],
        "D5+A1" | "A2+3A1" => vec![
            FreeWord::comm(&b(1), &b(2)),
            FreeWord::comm(&b(1), &b(3)),
            braid_rel(&b(2), &b(3)),
        ],
        _ => return None,
    };
    Some(r)
}

/// All proper perturbations of E₇ (induced subgraphs of its Dynkin graph
/// other than the whole graph), one per isomorphism class.
pub fn enumerate_e7_perturbations() -> Vec<E7Perturbation> {
    let mut by_name: BTreeMap<String, SingularitySet> = BTreeMap::new();
    for mask in 0..(1u32 << 7) - 1 {
        let s = induced_type(mask);
        by_name.entry(s.to_string()).or_insert(s);
    }
    let mut out: Vec<E7Perturbation> = by_name
        .into_values()
        .map(|set| {
            let local_relators = local_relations(&set);
            E7Perturbation { set, local_relators }
        })
        .collect();
    out.sort_by_key(|p| (std::cmp::Reverse(p.set.milnor()), p.set.to_string()));
    out
}

/// Which of the two regions next to the bigon an A₄ perturbation affects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Alpha2,
    Alpha3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Perturbation {
    /// An A₄ point becomes A_j (j = 0: smoothed).
    A4 { side: Side, to: u32 },
    /// The cusp next to the bigon becomes A_j, j ∈ {0, 1}.
    Cusp { to: u32 },
    /// The E₇ point is perturbed; `first_only` keeps only the first local
    /// relation (nonabelian case).
    E7 { set: SingularitySet, first_only: bool },
}

impl std::fmt::Display for Perturbation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Perturbation::A4 { side, to } => write!(f, "A4 ({side:?} side) -> A{to}"),
            Perturbation::Cusp { to } => write!(f, "A2 (cusp) -> A{to}"),
            Perturbation::E7 { set, first_only } => {
                let s = if set.points().is_empty() { "smooth".to_string() } else { set.to_string() };
                write!(f, "E7 -> {s}{}", if *first_only { " (first relation)" } else { "" })
            }
        }
    }
}

/// All single-point proper perturbations of the nonabelian row.
pub fn row1_perturbations() -> Vec<Perturbation> {
    let mut out = Vec::new();
    for side in [Side::Alpha2, Side::Alpha3] {
        for to in 0..4 {
            out.push(Perturbation::A4 { side, to });
        }
    }
    for to in 0..2 {
        out.push(Perturbation::Cusp { to });
    }
    for p in enumerate_e7_perturbations() {
        if p.set.to_string() == "A4+A2" {
            out.push(Perturbation::E7 { set: p.set.clone(), first_only: true });
        }
        out.push(Perturbation::E7 { set: p.set, first_only: false });
    }
    out
}

/// The group of the perturbed curve: row-1 relations with the perturbed
/// point's relation replaced or local relations added through the inclusion.
pub fn perturb_global(p: &Perturbation) -> Presentation {
    let mut rels = row1_relators();
    let a = FreeWord::gen;
    match p {
        Perturbation::A4 { side, to } => {
            let x = match side {
                Side::Alpha2 => a(2),
                Side::Alpha3 => a(3),
            };
            let old = leaf_relator(&a(1), &x, 2);
            let i = rels.iter().position(|r| *r == old).expect("leaf relation present");
            rels[i] = region_relator(&a(1), &x, *to as usize + 1);
        }
        Perturbation::Cusp { to } => {
            assert_eq!(rels[CUSP_RELATOR_INDEX], cusp_relator());
            let c = a(3).conj_by(&a(1));
            rels[CUSP_RELATOR_INDEX] = region_relator(&c, &a(2), *to as usize + 1);
        }
        Perturbation::E7 { set, first_only } => {
            let imgs = e7_b_images();
            match local_relations(set) {
                Some(local) => {
                    let n = if *first_only { 1 } else { local.len() };
                    rels.extend(local[..n].iter().map(|r| r.substitute(&imgs)));
                }
                None => {
                    for i in 0..3 {
                        for j in i + 1..3 {
                            rels.push(FreeWord::comm(&imgs[i], &imgs[j]));
                        }
                    }
                }
            }
        }
    }
    Presentation::new(3, rels)
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationOutcome {
    pub perturbation: String,
    pub order: usize,
}

/// Orders of the groups of all perturbations of the first row.
pub fn perturbation_outcomes(opts: EnumOptions) -> Result<Vec<PerturbationOutcome>, GroupError> {
    row1_perturbations()
        .iter()
        .map(|p| Ok(PerturbationOutcome { perturbation: p.to_string(), order: perturb_global(p).order(opts)? }))
        .collect()
}
