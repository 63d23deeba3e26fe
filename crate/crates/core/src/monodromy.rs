//! Local monodromies, the packages at a distinguished E-type point and the
//! braid monodromy of a model.
//!
//! The monodromy is read off a triangulation of the sphere: every black dart
//! `h` contributes an upper triangle U(h) and a lower triangle L(h) with
//! corners at the black vertex of `h`, the white vertex (or edge midpoint)
//! across `h`, and a region center ×. Turning counterclockwise around a
//! vertex crosses one triangle edge per step; each step contributes a letter
//! of Z₂∗Z₃ (x = σ̄₁σ̄₂σ̄₁, y = σ̄₁σ̄₂). Words accumulated along a tour of a
//! spanning tree are path-ordered; the left action needs them reversed.

use std::collections::VecDeque;

use serde::Serialize;

use crate::braid::{act, rho, sigma, Braid3, Reduced, Syl};
use crate::error::BraidError;
use crate::map::Color;
use crate::model::{FiberKind, Model};
use crate::word::FreeWord;

/// Kind of a singular fiber for [`local_monodromy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalFiber {
    /// Ã-type with the given ×-valency.
    A(i64),
    /// D̃-type with the given ×-valency.
    D(i64),
    E6Point,
    E8Point,
}

/// Local monodromy around a fiber approached along the solid edge with
/// marking index `i ∈ {1,2,3}`.
pub fn local_monodromy(fiber: LocalFiber, i: u8) -> Result<Braid3, BraidError> {
    let twist = Braid3::from_word(&crate::braid::full_twist());
    let torus = Braid3::from_word(&FreeWord::from_letters([1, 2]));
    match fiber {
        LocalFiber::A(d) | LocalFiber::D(d) if d < 1 => Err(BraidError::InvalidValency(d)),
        LocalFiber::A(d) => Ok(Braid3::from_word(&sigma(i as i64 + 1)).pow(d)),
        LocalFiber::D(d) => Ok(Braid3::from_word(&sigma(i as i64 + 1)).pow(d).mul(&twist)),
        LocalFiber::E6Point => Ok(torus.pow(4)),
        LocalFiber::E8Point => Ok(torus.pow(5)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EType {
    E6,
    E7,
    E8,
}

/// Which generator corresponds to the distinguished branch at an E₇ point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Alpha2,
    Alpha3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityPackage {
    pub e_type: EType,
    pub branch: Option<Branch>,
    pub relators: Vec<FreeWord>,
    pub m_infinity: Braid3,
}

fn a(k: usize) -> FreeWord {
    FreeWord::gen(k)
}

fn w(v: &[i32]) -> FreeWord {
    FreeWord::from_letters(v.iter().copied())
}

/// `lhs · rhs⁻¹`.
pub fn rel(lhs: &FreeWord, rhs: &FreeWord) -> FreeWord {
    lhs.mul(&rhs.inverse())
}

pub fn infinity_package(e_type: EType, branch: Option<Branch>) -> Result<InfinityPackage, BraidError> {
    let r = rho();
    let y = |e: i64| FreeWord::from_letters([1, 2]).pow(e);
    let (relators, m_word) = match e_type {
        EType::E8 => (
            vec![
                rel(&r.pow(3), &w(&[1, 2, 2])),
                rel(&a(3), &a(1).conj_by(&a(2))),
                FreeWord::comm(&a(1), &a(2).pow(3)),
            ],
            y(9).mul(&w(&[1, 2, 1]).inverse()),
        ),
        EType::E7 => {
            let br = branch.ok_or(BraidError::BranchRequired)?;
            let (c, last) = match br {
                Branch::Alpha2 => (w(&[2, 2, 3]), a(2)),
                Branch::Alpha3 => (w(&[2, 3, 3]), a(3)),
            };
            let mut rels = vec![FreeWord::comm(&a(2), &a(3))];
            for i in 1..=3 {
                rels.push(FreeWord::comm(&a(i), &r.pow(3)));
                rels.push(FreeWord::comm(&a(i), &c));
            }
            rels.push(rel(&r.pow(2).mul(&a(1)), &last));
            (rels, y(9).mul(&sigma(2).pow(-2)))
        }
        EType::E6 => (vec![rel(&r.pow(4), &w(&[2, 3]).pow(3))], y(12).mul(&sigma(2).pow(-6))),
    };
    let branch = if e_type == EType::E7 { branch } else { None };
    Ok(InfinityPackage { e_type, branch, relators, m_infinity: Braid3::from_word(&m_word) })
}

impl InfinityPackage {
    /// The braid relations of m_∞: m_∞·αᵢ·αᵢ⁻¹ for i = 1..3.
    pub fn m_infinity_relators(&self) -> Vec<FreeWord> {
        braid_relators(&self.m_infinity)
    }
}

/// Relators `b·αᵢ·αᵢ⁻¹` (left action) of a braid.
pub fn braid_relators(b: &Braid3) -> Vec<FreeWord> {
    let bw = b.to_word();
    (1..=3).map(|i| act(&bw, &a(i)).mul(&a(i).inverse())).filter(|r| !r.is_identity()).collect()
}

/// Images of the Milnor-ball generators c₁, c₂, c₃ in the α-basis.
pub fn inclusion_images(e_type: EType) -> [FreeWord; 3] {
    let a23 = w(&[2, 3]);
    match e_type {
        EType::E7 => [a(1), a(3), a(1).conj_by(&a23.inverse())],
        EType::E8 => [a(3).conj_by(&w(&[1, 2])), a(1), a(3)],
        EType::E6 => [a(1).conj_by(&rho()), a(1), a(1).conj_by(&a23.inverse())],
    }
}

/// The basis b₁ = (c₁c₂c₃)c₂(c₁c₂c₃)⁻¹, b₂ = (c₁c₂)c₃(c₁c₂)⁻¹, b₃ = c₁ in
/// terms of c (generators 1..3 standing for c₁..c₃).
pub fn e7_b_in_c() -> [FreeWord; 3] {
    [a(2).conj_by(&w(&[1, 2, 3])), a(3).conj_by(&w(&[1, 2])), a(1)]
}

/// Simplified images of b₁, b₂, b₃ in the α-basis (valid modulo the E₇
/// package relations).
pub fn e7_b_images() -> [FreeWord; 3] {
    [w(&[1, -2, 1, 3, -1, 2, -1]), w(&[1, -2, 1, 2, -1]), a(1)]
}

/// The b-images obtained by composing [`e7_b_in_c`] with [`inclusion_images`].
pub fn e7_b_images_composed() -> [FreeWord; 3] {
    let c = inclusion_images(EType::E7);
    let b = e7_b_in_c();
    [b[0].substitute(&c), b[1].substitute(&c), b[2].substitute(&c)]
}

/// Vertex of the triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GammaVertex {
    /// Black vertex (index of the map vertex).
    Black(usize),
    /// Singular white vertex (map vertex).
    White(usize),
    /// Midpoint of the black–black edge through the given (smaller) dart.
    Midpoint(usize),
    /// Center of a region (face index).
    Cross(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Tri {
    U(usize),
    L(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum GEdge {
    Bold(usize),
    Solid(usize),
    Dotted(usize),
}

/// A loop around one fiber, based at the reference point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lasso {
    pub vertex: GammaVertex,
    /// Smallest dart of the vertex or region, used to order fibers.
    pub dart: usize,
    pub multiplicity: u32,
    pub fiber: Option<FiberKind>,
    /// Path-ordered braid of the loop.
    pub braid: Braid3,
}

impl Lasso {
    /// The monodromy in the left-action convention.
    pub fn monodromy(&self) -> Braid3 {
        self.braid.reversed()
    }
}

/// Braid monodromy of a model with respect to a reference dart `h0`.
#[derive(Debug, Clone, Serialize)]
pub struct Monodromy {
    pub reference: usize,
    /// Generator of the distinguished branch in this frame.
    pub branch: Branch,
    /// Loops in the order of the tour; the distinguished fiber is last.
    pub lassos: Vec<Lasso>,
}

struct Gamma<'a> {
    model: &'a Model,
    face_idx: Vec<usize>,
    black: Vec<bool>,
}

impl<'a> Gamma<'a> {
    fn new(model: &'a Model) -> Self {
        let m = model.map();
        let black = (0..m.dart_count()).map(|d| m.dart_color(d) == Color::Black).collect();
        Gamma { model, face_idx: m.face_index(), black }
    }

    fn pair(&self, h: usize) -> usize {
        self.model.map().pair(h)
    }

    fn sb(&self, h: usize) -> usize {
        self.model.map().rot(h)
    }

    fn sb_inv(&self, h: usize) -> usize {
        self.model.map().rot_inv(h)
    }

    fn sw(&self, h: usize) -> usize {
        let p = self.pair(h);
        if self.black[p] {
            p
        } else {
            h
        }
    }

    fn white(&self, h: usize) -> GammaVertex {
        let p = self.pair(h);
        if self.black[p] {
            GammaVertex::Midpoint(h.min(p))
        } else {
            GammaVertex::White(self.model.map().vertex_of(p))
        }
    }

    fn cross(&self, h: usize) -> GammaVertex {
        GammaVertex::Cross(self.face_idx[self.pair(h)])
    }

    fn ends(&self, e: GEdge) -> (GammaVertex, GammaVertex) {
        let m = self.model.map();
        match e {
            GEdge::Bold(h) => (GammaVertex::Black(m.vertex_of(h)), self.white(h)),
            GEdge::Solid(h) => (GammaVertex::Black(m.vertex_of(h)), self.cross(h)),
            GEdge::Dotted(h) => (self.white(h), self.cross(h)),
        }
    }

    /// Counterclockwise step around `p` from triangle `t`.
    fn step(&self, p: GammaVertex, t: Tri) -> (GEdge, Tri, Reduced) {
        let x = || Reduced::from_syllables(&[Syl::X]);
        let y = || Reduced::from_syllables(&[Syl::Y]);
        let y2 = || Reduced::from_syllables(&[Syl::Y2]);
        match (p, t) {
            (GammaVertex::Black(_), Tri::U(h)) => (GEdge::Solid(h), Tri::L(self.sb(h)), y()),
            (GammaVertex::Black(_), Tri::L(h)) => (GEdge::Bold(h), Tri::U(h), Reduced::identity()),
            (GammaVertex::White(_) | GammaVertex::Midpoint(_), Tri::U(h)) => (GEdge::Bold(h), Tri::L(h), Reduced::identity()),
            (GammaVertex::White(_) | GammaVertex::Midpoint(_), Tri::L(h)) => {
                let s = self.sw(h);
                (GEdge::Dotted(s), Tri::U(s), x())
            }
            (GammaVertex::Cross(_), Tri::U(h)) => (GEdge::Dotted(h), Tri::L(self.sw(h)), x()),
            (GammaVertex::Cross(_), Tri::L(h)) => {
                let s = self.sb_inv(h);
                (GEdge::Solid(s), Tri::U(s), y2())
            }
        }
    }

    fn vertex_dart(&self, v: GammaVertex) -> usize {
        let m = self.model.map();
        match v {
            GammaVertex::Black(i) | GammaVertex::White(i) => m.vertices()[i][0],
            GammaVertex::Midpoint(h) => h,
            GammaVertex::Cross(f) => (0..m.dart_count()).find(|&d| self.face_idx[d] == f).unwrap(),
        }
    }
}

/// Darts `h0` admissible as reference: `α(h0)` lies in the distinguished
/// region, trivalent corners first, each group in increasing order.
pub fn reference_candidates(model: &Model) -> Vec<usize> {
    let m = model.map();
    let bigon = model.bigon_face();
    let idx = m.face_index();
    let mut c: Vec<usize> = (0..m.dart_count())
        .filter(|&h| m.dart_color(h) == Color::Black && idx[m.pair(h)] == bigon)
        .collect();
    c.sort_by_key(|&h| (m.valency(m.vertex_of(h)) != 3, h));
    c
}

impl Monodromy {
    pub fn compute(model: &Model) -> Monodromy {
        let h0 = reference_candidates(model)[0];
        Monodromy::with_reference(model, h0)
    }

    pub fn with_reference(model: &Model, h0: usize) -> Monodromy {
        let g = Gamma::new(model);
        let m = model.map();
        let root = g.cross(h0);
        assert_eq!(root, GammaVertex::Cross(model.bigon_face()), "reference dart must face the distinguished region");

        // adjacency with deterministic edge order
        let mut adj: std::collections::BTreeMap<GammaVertex, Vec<(GEdge, GammaVertex)>> = Default::default();
        for h in (0..m.dart_count()).filter(|&h| g.black[h]) {
            for e in [GEdge::Bold(h), GEdge::Solid(h), GEdge::Dotted(h)] {
                let (p, q) = g.ends(e);
                adj.entry(p).or_default().push((e, q));
                adj.entry(q).or_default().push((e, p));
            }
        }
        let mut parent: std::collections::HashMap<GammaVertex, (GEdge, GammaVertex)> = Default::default();
        let mut seen = std::collections::HashSet::from([root]);
        let mut q = VecDeque::from([root]);
        while let Some(p) = q.pop_front() {
            for &(e, r) in &adj[&p] {
                if seen.insert(r) {
                    parent.insert(r, (e, p));
                    q.push_back(r);
                }
            }
        }

        let mult = fiber_data(model);
        let mut lassos = Vec::new();
        tour(&g, &parent, &mult, root, Tri::U(h0), &Reduced::identity(), &mut lassos);
        let branch = if model.branch() == m.pair(h0) { Branch::Alpha2 } else { Branch::Alpha3 };
        Monodromy { reference: h0, branch, lassos }
    }

    pub fn distinguished(&self) -> &Lasso {
        self.lassos.last().expect("at least the distinguished fiber")
    }

    /// Product of all loops (path order); should be Δ⁶.
    pub fn total(&self) -> Braid3 {
        self.lassos.iter().fold(Braid3::identity(), |acc, l| acc.mul(&l.braid))
    }

    /// Product of the loops around the non-distinguished fibers, i.e. the
    /// monodromy at infinity.
    pub fn m_infinity(&self) -> Braid3 {
        let n = self.lassos.len() - 1;
        self.lassos[..n].iter().fold(Braid3::identity(), |acc, l| acc.mul(&l.braid))
    }

    /// Loops around singular fibers other than the distinguished one.
    pub fn singular_lassos(&self) -> impl Iterator<Item = &Lasso> {
        let n = self.lassos.len() - 1;
        self.lassos[..n].iter().filter(|l| l.multiplicity > 0)
    }
}

type FiberMap = std::collections::HashMap<GammaVertex, (u32, Option<FiberKind>)>;

fn fiber_data(model: &Model) -> FiberMap {
    let mut out = FiberMap::new();
    for f in model.fibers() {
        let v = match f.kind {
            FiberKind::Distinguished | FiberKind::Region => GammaVertex::Cross(f.anchor),
            FiberKind::MonovalentBlack | FiberKind::BivalentBlack => GammaVertex::Black(f.anchor),
            FiberKind::SingularWhite => GammaVertex::White(f.anchor),
        };
        out.insert(v, (f.multiplicity, Some(f.kind)));
    }
    out
}

fn tour(
    g: &Gamma<'_>,
    parent: &std::collections::HashMap<GammaVertex, (GEdge, GammaVertex)>,
    fibers: &FiberMap,
    p: GammaVertex,
    start: Tri,
    prefix: &Reduced,
    out: &mut Vec<Lasso>,
) {
    let mut t = start;
    let mut here = prefix.clone();
    let mut rotation = Reduced::identity();
    loop {
        let (e, next, letter) = g.step(p, t);
        let (a, b) = g.ends(e);
        let other = if a == p { b } else { a };
        if parent.get(&other) == Some(&(e, p)) {
            tour(g, parent, fibers, other, t, &here, out);
        }
        here = here.mul(&letter);
        rotation = rotation.mul(&letter);
        t = next;
        if t == start {
            break;
        }
    }
    let (mult, fiber) = fibers.get(&p).copied().unwrap_or((0, None));
    let local = Braid3::lift(&rotation, mult as i64).expect("rotation word matches the fiber multiplicity");
    let braid = local.conj_by(&Braid3 { degree: 0, reduced: prefix.clone() });
    out.push(Lasso { vertex: p, dart: g.vertex_dart(p), multiplicity: mult, fiber, braid });
}
