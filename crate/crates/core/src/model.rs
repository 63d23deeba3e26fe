//! Skeleton models of trigonal curves with a distinguished E₇ fiber.
//!
//! A model is a skeleton, a branch dart `b` inside a region with two black
//! corners (the distinguished fiber) and a set of D-flagged regions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::map::{
    automorphisms, canonical_code_marked, canonical_relabeling, CombMap, Color, FiberFlag, Orientation, Region,
};
use crate::singularity::{SingularitySet, SingularityType};
use crate::skeleton::{admits_splitting_marking, enumerate_by_counts, insert_bigon, remove_insertion, InsertionSite, VertexCounts};

const MARK_BRANCH: u8 = 1;
const MARK_BIGON: u8 = 2;
const MARK_D: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    map: CombMap,
    branch: usize,
    /// Smallest dart of each D-flagged region, sorted.
    d_faces: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberKind {
    Distinguished,
    Region,
    MonovalentBlack,
    BivalentBlack,
    SingularWhite,
}

/// A singular fiber of the model together with the singular point on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub kind: FiberKind,
    /// Face index (regions) or vertex index (vertices).
    pub anchor: usize,
    pub corners: usize,
    pub flag: FiberFlag,
    pub multiplicity: u32,
    pub point: Option<SingularityType>,
}

impl Model {
    /// Builds the model in canonical form. `d_darts` may name any dart of each
    /// D-flagged region.
    pub fn new(map: &CombMap, branch: usize, d_darts: &[usize]) -> Model {
        let faces = map.faces();
        let idx = map.face_index();
        let mut d_set: Vec<usize> = d_darts.iter().map(|&d| faces[idx[d]].boundary[0]).collect();
        d_set.sort_unstable();
        d_set.dedup();
        let marks = marks_for(map, &faces, &idx, branch, &d_set);
        let perm = canonical_relabeling(map, &marks);
        let cm = map.relabel(&perm);
        let cfaces = cm.faces();
        let cidx = cm.face_index();
        let mut d_faces: Vec<usize> = d_set.iter().map(|&d| cfaces[cidx[perm[d]]].boundary[0]).collect();
        d_faces.sort_unstable();
        Model { map: cm, branch: perm[branch], d_faces }
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn d_faces(&self) -> &[usize] {
        &self.d_faces
    }

    /// Regions with their fiber flags.
    pub fn regions(&self) -> Vec<Region> {
        let mut faces = self.map.faces();
        for f in &mut faces {
            if self.d_faces.contains(&f.boundary[0]) {
                f.fiber_flag = FiberFlag::D;
            }
        }
        faces
    }

    pub fn bigon_face(&self) -> usize {
        self.map.face_index()[self.branch]
    }

    /// 1 on the branch dart, 2 on the rest of its region, 3 on D regions.
    pub fn marks(&self) -> Vec<u8> {
        let faces = self.map.faces();
        marks_for(&self.map, &faces, &self.map.face_index(), self.branch, &self.d_faces)
    }

    pub fn code(&self) -> Vec<u8> {
        canonical_code_marked(&self.map, &self.marks())
    }

    /// The complex conjugate model: mirror map, branch α(b), D regions moved by α.
    pub fn conjugate(&self) -> Model {
        let mirror = self.map.mirror();
        let d: Vec<usize> = self.d_faces.iter().map(|&x| self.map.pair(x)).collect();
        Model::new(&mirror, self.map.pair(self.branch), &d)
    }

    /// Real (isomorphic to its conjugate), decided by canonical codes.
    pub fn is_real(&self) -> bool {
        self.code() == self.conjugate().code()
    }

    /// Real, decided by searching for a reversing automorphism ψ of the map
    /// with ψ(b) = α(b) and ψ(D) = α(D).
    pub fn is_real_by_automorphism(&self) -> bool {
        let faces = self.map.faces();
        let idx = self.map.face_index();
        let d_darts: Vec<bool> = (0..self.map.dart_count()).map(|d| self.d_faces.contains(&faces[idx[d]].boundary[0])).collect();
        automorphisms(&self.map, Orientation::Reversing).into_iter().any(|psi| {
            psi[self.branch] == self.map.pair(self.branch)
                && (0..self.map.dart_count()).all(|d| d_darts[d] == d_darts[self.map.pair(psi[d])])
        })
    }

    pub fn singular_vertex_count(&self) -> usize {
        (0..self.map.vertex_count())
            .filter(|&v| match self.map.color(v) {
                Color::Black => self.map.valency(v) < 3,
                Color::White => self.map.valency(v) == 1,
            })
            .count()
    }

    /// Number of triple points lifted from the skeleton: singular vertices
    /// plus D-flags.
    pub fn t(&self) -> usize {
        self.singular_vertex_count() + self.d_faces.len()
    }

    pub fn fibers(&self) -> Vec<Fiber> {
        let mut out = Vec::new();
        let bigon = self.bigon_face();
        for (i, r) in self.regions().into_iter().enumerate() {
            let d = r.black_corners;
            let (kind, multiplicity, point) = if i == bigon {
                (FiberKind::Distinguished, 2, Some(SingularityType::E(7)))
            } else if r.fiber_flag == FiberFlag::D {
                (FiberKind::Region, d as u32 + 6, Some(SingularityType::D(d as u32 + 4)))
            } else {
                let p = (d >= 2).then(|| SingularityType::A(d as u32 - 1));
                (FiberKind::Region, d as u32, p)
            };
            out.push(Fiber { kind, anchor: i, corners: d, flag: r.fiber_flag, multiplicity, point });
        }
        for v in 0..self.map.vertex_count() {
            let val = self.map.valency(v);
            let f = match (self.map.color(v), val) {
                (Color::Black, 1) => Some((FiberKind::MonovalentBlack, 8, SingularityType::E(6))),
                (Color::Black, 2) => Some((FiberKind::BivalentBlack, 10, SingularityType::E(8))),
                (Color::White, 1) => Some((FiberKind::SingularWhite, 9, SingularityType::E(7))),
                _ => None,
            };
            if let Some((kind, multiplicity, p)) = f {
                out.push(Fiber { kind, anchor: v, corners: val, flag: FiberFlag::A, multiplicity, point: Some(p) });
            }
        }
        out
    }

    pub fn multiplicity_sum(&self) -> u32 {
        self.fibers().iter().map(|f| f.multiplicity).sum()
    }

    pub fn singularity_set(&self) -> SingularitySet {
        SingularitySet::new(self.fibers().iter().filter_map(|f| f.point).collect())
    }

    /// Whether the two corners of the distinguished region are trivalent
    /// and joined by the two parallel edges of an inserted bigon.
    pub fn removable_insertion(&self) -> Option<(CombMap, InsertionSite)> {
        if !self.d_faces.is_empty() {
            return None;
        }
        remove_insertion(&self.map, self.branch)
    }
}

fn marks_for(m: &CombMap, faces: &[Region], idx: &[usize], branch: usize, d_set: &[usize]) -> Vec<u8> {
    (0..m.dart_count())
        .map(|d| {
            let f = &faces[idx[d]];
            if d == branch {
                MARK_BRANCH
            } else if idx[d] == idx[branch] {
                MARK_BIGON
            } else if d_set.contains(&f.boundary[0]) {
                MARK_D
            } else {
                0
            }
        })
        .collect()
}

#[derive(Serialize)]
struct ModelJson {
    skeleton: String,
    branch: usize,
    d_faces: Vec<usize>,
    set: String,
    real: bool,
}

impl Serialize for Model {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelJson {
            skeleton: self.map.to_string(),
            branch: self.branch,
            d_faces: self.d_faces.clone(),
            set: self.singularity_set().to_string(),
            real: self.is_real(),
        }
        .serialize(s)
    }
}

fn dedup_sorted(models: Vec<Model>) -> Vec<Model> {
    let mut by_code: BTreeMap<Vec<u8>, Model> = BTreeMap::new();
    for m in models {
        by_code.entry(m.code()).or_insert(m);
    }
    by_code.into_values().collect()
}

/// All models on a skeleton: every black dart of every region with two
/// black corners, no D-flags.
pub fn models_on(sk: &CombMap) -> Vec<Model> {
    let mut out = Vec::new();
    for f in sk.faces() {
        if f.black_corners != 2 || f.boundary.iter().any(|&d| sk.dart_color(d) != Color::Black) {
            continue;
        }
        for &b in &f.boundary {
            out.push(Model::new(sk, b, &[]));
        }
    }
    dedup_sorted(out)
}

/// Skeletons of degree 9 − 3t with t singular black vertices and no white
/// ones; for t = 0 only those without a splitting marking.
pub fn e7_skeletons(t: usize) -> Vec<CombMap> {
    let mut out = Vec::new();
    for vc in VertexCounts::for_degree(9 - 3 * t) {
        if vc.white > 0 || vc.singular_blacks() != t {
            continue;
        }
        for sk in enumerate_by_counts(vc) {
            if t == 0 && admits_splitting_marking(&sk).expect("no singular vertices") {
                continue;
            }
            out.push(sk);
        }
    }
    out
}

/// Models of maximal sextics with an E₇ point, before the point filter.
pub fn enumerate_e7_models_unfiltered() -> Vec<Model> {
    let mut all = Vec::new();
    for t in 0..=2 {
        for sk in e7_skeletons(t) {
            all.extend(models_on(&sk));
        }
    }
    dedup_sorted(all)
}

/// Models whose singular points are admissible for an irreducible sextic.
pub fn enumerate_e7_models() -> Vec<Model> {
    enumerate_e7_models_unfiltered()
        .into_iter()
        .filter(|m| m.singularity_set().forbidden_with_e7().is_empty())
        .collect()
}

/// The same models with a removable bigon, rebuilt from smaller skeletons by
/// inserting a bigon at every site.
pub fn e7_models_by_insertion() -> Vec<Model> {
    let mut small: Vec<CombMap> = Vec::new();
    for vc in VertexCounts::for_degree(6) {
        if vc.white == 0 && vc.singular_blacks() == 0 {
            small.extend(enumerate_by_counts(vc).into_iter().filter(|s| !admits_splitting_marking(s).unwrap()));
        }
    }
    for vc in VertexCounts::for_degree(3) {
        if vc.white == 0 && vc.singular_blacks() == 1 {
            small.extend(enumerate_by_counts(vc));
        }
    }
    let mut out = Vec::new();
    for sk in small {
        for edge in 0..sk.edge_count() {
            for side in [false, true] {
                for branch in [false, true] {
                    let ins = insert_bigon(&sk, InsertionSite { edge, side, branch }).expect("valid site");
                    out.push(Model::new(&ins.map, ins.branch_dart, &[]));
                }
            }
        }
    }
    dedup_sorted(out)
}

/// Per singularity set: real models and pairs of complex conjugate models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationClasses {
    pub set: SingularitySet,
    pub real: usize,
    pub complex_pairs: usize,
    pub models: Vec<usize>,
}

pub fn deformation_classes(models: &[Model]) -> Vec<DeformationClasses> {
    let mut by_set: BTreeMap<String, DeformationClasses> = BTreeMap::new();
    for (i, m) in models.iter().enumerate() {
        let set = m.singularity_set();
        let e = by_set.entry(set.to_string()).or_insert(DeformationClasses {
            set,
            real: 0,
            complex_pairs: 0,
            models: Vec::new(),
        });
        e.models.push(i);
        if m.is_real() {
            e.real += 1;
        }
    }
    for c in by_set.values_mut() {
        let nonreal = c.models.len() - c.real;
        c.complex_pairs = nonreal / 2;
    }
    by_set.into_values().collect()
}
