//! Skeleton enumeration, splitting markings and the bigon insertion.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MapError, SkeletonError};
use crate::map::{build_map, canonical_code, validate_skeleton, Color, CombMap};

/// Numbers of vertices of each kind in a skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexCounts {
    pub trivalent: usize,
    pub bivalent: usize,
    pub monovalent: usize,
    pub white: usize,
}

impl VertexCounts {
    pub fn dart_count(&self) -> usize {
        3 * self.trivalent + 2 * self.bivalent + self.monovalent + self.white
    }

    /// 3/2 · (#black + #white + #black(2)).
    pub fn degree(&self) -> usize {
        3 * (self.trivalent + 2 * self.bivalent + self.monovalent + self.white) / 2
    }

    pub fn singular_blacks(&self) -> usize {
        self.bivalent + self.monovalent
    }

    /// All vertex counts of skeletons of the given degree.
    pub fn for_degree(degree: usize) -> Vec<VertexCounts> {
        let mut out = Vec::new();
        if degree % 3 != 0 {
            return out;
        }
        let c = 2 * degree / 3;
        for bivalent in 0..=c / 2 {
            for monovalent in 0..=c - 2 * bivalent {
                for white in 0..=c - 2 * bivalent - monovalent {
                    let trivalent = c - 2 * bivalent - monovalent - white;
                    let vc = VertexCounts { trivalent, bivalent, monovalent, white };
                    if vc.dart_count() % 2 == 0 && vc.dart_count() > 0 {
                        out.push(vc);
                    }
                }
            }
        }
        out
    }
}

struct Search {
    /// (valency, color) per vertex; darts of vertex v are consecutive.
    kinds: Vec<(usize, Color)>,
    offset: Vec<usize>,
    vertex_of: Vec<usize>,
    pairing: Vec<usize>,
    touched: Vec<bool>,
    rotation: Vec<usize>,
    colors: Vec<Color>,
    found: BTreeMap<Vec<u8>, CombMap>,
    leaves: usize,
}

const FREE: usize = usize::MAX;

impl Search {
    fn new(vc: VertexCounts) -> Self {
        let mut kinds = Vec::new();
        kinds.extend(std::iter::repeat((3, Color::Black)).take(vc.trivalent));
        kinds.extend(std::iter::repeat((2, Color::Black)).take(vc.bivalent));
        kinds.extend(std::iter::repeat((1, Color::Black)).take(vc.monovalent));
        kinds.extend(std::iter::repeat((1, Color::White)).take(vc.white));
        let mut offset = Vec::new();
        let mut vertex_of = Vec::new();
        let mut rotation = Vec::new();
        for (v, &(val, _)) in kinds.iter().enumerate() {
            let o = vertex_of.len();
            offset.push(o);
            for i in 0..val {
                vertex_of.push(v);
                rotation.push(o + (i + 1) % val);
            }
        }
        let n = vertex_of.len();
        let colors = kinds.iter().map(|k| k.1).collect();
        Search {
            touched: vec![false; kinds.len()],
            kinds,
            offset,
            vertex_of,
            pairing: vec![FREE; n],
            rotation,
            colors,
            found: BTreeMap::new(),
            leaves: 0,
        }
    }

    fn run(&mut self) {
        let Some(d) = self.pairing.iter().position(|&p| p == FREE) else {
            self.leaves += 1;
            if let Ok(m) = build_map(self.pairing.len(), &self.pairing, &self.rotation, &self.colors) {
                self.found.entry(canonical_code(&m)).or_insert(m);
            }
            return;
        };
        let vd = self.vertex_of[d];
        if !self.touched[vd] && self.touched.iter().any(|&t| t) {
            // the touched part is closed: any completion is disconnected
            return;
        }
        let was = self.touched[vd];
        self.touched[vd] = true;
        let n = self.pairing.len();
        let mut first_untouched: Vec<(usize, Color)> = Vec::new();
        for e in d + 1..n {
            if self.pairing[e] != FREE {
                continue;
            }
            let ve = self.vertex_of[e];
            if self.colors[vd] == Color::White && self.colors[ve] == Color::White {
                continue;
            }
            let was_e = self.touched[ve];
            if !was_e {
                // untouched vertices of one kind are interchangeable, and so are their darts
                if e != self.offset[ve] || first_untouched.contains(&self.kinds[ve]) {
                    continue;
                }
                first_untouched.push(self.kinds[ve]);
            }
            self.pairing[d] = e;
            self.pairing[e] = d;
            self.touched[ve] = true;
            self.run();
            self.touched[ve] = was_e;
            self.pairing[d] = FREE;
            self.pairing[e] = FREE;
        }
        self.touched[vd] = was;
    }
}

/// All connected planar skeletons with the given vertex counts, one per
/// orientation-preserving isomorphism class, sorted by canonical code.
pub fn enumerate_by_counts(vc: VertexCounts) -> Vec<CombMap> {
    if vc.dart_count() == 0 || vc.dart_count() % 2 != 0 {
        return Vec::new();
    }
    let mut s = Search::new(vc);
    s.run();
    s.found.into_values().map(|m| m.to_canonical_form()).collect()
}

/// Skeletons of the given degree with at most `max_singular_black` singular
/// black vertices (and no white vertices if `require_no_singular_white`).
pub fn enumerate_skeletons(
    degree: usize,
    max_singular_black: usize,
    require_no_singular_white: bool,
) -> Result<Vec<CombMap>, SkeletonError> {
    if degree == 0 || degree > 9 || degree % 3 != 0 {
        return Err(SkeletonError::DegreeUnsupported(degree));
    }
    let mut all: Vec<(Vec<u8>, CombMap)> = Vec::new();
    for vc in VertexCounts::for_degree(degree) {
        if vc.singular_blacks() > max_singular_black || (require_no_singular_white && vc.white > 0) {
            continue;
        }
        for m in enumerate_by_counts(vc) {
            all.push((canonical_code(&m), m));
        }
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(all.into_iter().map(|(_, m)| m).collect())
}

/// Index 1 dart at each trivalent black vertex (`None` elsewhere); the
/// other two darts get indices 2, 3 counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Marking {
    pub first: Vec<Option<usize>>,
}

impl Marking {
    /// Index (1..=3) of a dart at a trivalent vertex.
    pub fn index(&self, m: &CombMap, d: usize) -> Option<u8> {
        let f = self.first[m.vertex_of(d)]?;
        let mut e = f;
        for i in 1..=3u8 {
            if e == d {
                return Some(i);
            }
            e = m.rot(e);
        }
        None
    }

    /// Edge type `[i, j]` of the edge of dart `d` (i at d's end).
    pub fn edge_type(&self, m: &CombMap, d: usize) -> Option<(u8, u8)> {
        Some((self.index(m, d)?, self.index(m, m.pair(d))?))
    }
}

fn is_trivalent_black(m: &CombMap, v: usize) -> bool {
    m.color(v) == Color::Black && m.valency(v) == 3
}

fn marking_ok(m: &CombMap, mk: &Marking) -> bool {
    for d in 0..m.dart_count() {
        let v = m.vertex_of(d);
        if !is_trivalent_black(m, v) {
            continue;
        }
        let e = m.pair(d);
        let w = m.vertex_of(e);
        let i = mk.index(m, d).unwrap();
        if m.color(w) == Color::White {
            if i != 1 {
                return false;
            }
        } else if is_trivalent_black(m, w) {
            let j = mk.index(m, e).unwrap();
            if !matches!((i, j), (1, 1) | (2, 3) | (3, 2)) {
                return false;
            }
        }
    }
    true
}

/// All splitting markings: every edge between trivalent vertices has type
/// [1,1], [2,3] or [3,2], and every edge to a white vertex has index 1 at
/// its black end.
pub fn find_splitting_markings(m: &CombMap) -> Result<Vec<Marking>, SkeletonError> {
    if !validate_skeleton(m).singular_blacks.is_empty() {
        return Err(SkeletonError::SingularBlackPresent);
    }
    let tri: Vec<usize> = (0..m.vertex_count()).filter(|&v| is_trivalent_black(m, v)).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(tri.len() as u32);
    for code in 0..total {
        let mut first = vec![None; m.vertex_count()];
        let mut c = code;
        for &v in &tri {
            first[v] = Some(m.vertices()[v][c % 3]);
            c /= 3;
        }
        let mk = Marking { first };
        if marking_ok(m, &mk) {
            out.push(mk);
        }
    }
    Ok(out)
}

pub fn admits_splitting_marking(m: &CombMap) -> Result<bool, SkeletonError> {
    Ok(!find_splitting_markings(m)?.is_empty())
}

/// Where to insert a bigon: `edge` indexes `map.edges()`; `side` reverses the
/// edge direction; `branch` selects the right (`false`) or left arc with
/// respect to that direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InsertionSite {
    pub edge: usize,
    pub side: bool,
    pub branch: bool,
}

/// Result of an insertion: the new map and the dart of the bigon face on the
/// selected arc.
#[derive(Debug, Clone)]
pub struct Inserted {
    pub map: CombMap,
    pub branch_dart: usize,
}

/// Subdivides an edge by two trivalent vertices joined by a pair of parallel
/// edges.
pub fn insert_bigon(m: &CombMap, site: InsertionSite) -> Result<Inserted, SkeletonError> {
    let edges = m.edges();
    let &(a, b) = edges.get(site.edge).ok_or(MapError::EdgeNotFound(site.edge))?;
    let (d, e) = if site.side { (b, a) } else { (a, b) };
    let n = m.dart_count();
    let mut pairing = m.pairing().to_vec();
    let mut rotation = m.rotation().to_vec();
    // x = (x0 toward d's vertex, x1 right arc, x2 left arc); y = (y0 toward e's vertex, y1 left, y2 right)
    let (x0, x1, x2, y0, y1, y2) = (n, n + 1, n + 2, n + 3, n + 4, n + 5);
    pairing.extend([d, y2, y1, e, x2, x1]);
    pairing[d] = x0;
    pairing[e] = y0;
    rotation.extend([x1, x2, x0, y1, y2, y0]);
    let mut colors: Vec<(usize, Color)> = m.vertices().iter().enumerate().map(|(v, c)| (c[0], m.color(v))).collect();
    colors.push((x0, Color::Black));
    colors.push((y0, Color::Black));
    colors.sort();
    let colors: Vec<Color> = colors.into_iter().map(|(_, c)| c).collect();
    let map = build_map(n + 6, &pairing, &rotation, &colors)?;
    // the bigon face is {x2, y2}: x2 on the left arc, y2 on the right arc
    let branch_dart = if site.branch { x2 } else { y2 };
    Ok(Inserted { map, branch_dart })
}

/// Inverse of [`insert_bigon`]: for a bigon face between two distinct
/// trivalent vertices joined by two parallel edges, removes it and patches
/// the remaining two darts into an edge. Returns the smaller map and the
/// site that recreates the input (the branch dart's arc).
pub fn remove_insertion(m: &CombMap, branch_dart: usize) -> Option<(CombMap, InsertionSite)> {
    let b = branch_dart;
    let c = m.face_step(b);
    if m.face_step(c) != b || c == b {
        return None;
    }
    let (vb, vc) = (m.vertex_of(b), m.vertex_of(c));
    if vb == vc || !is_trivalent_black(m, vb) || !is_trivalent_black(m, vc) {
        return None;
    }
    // parallel edges b—α(b), c—α(c) between the two vertices
    if m.vertex_of(m.pair(b)) != vc || m.vertex_of(m.pair(c)) != vb {
        return None;
    }
    let outer = |v: usize| m.vertices()[v].iter().copied().find(|&d| d != b && d != c && d != m.pair(b) && d != m.pair(c));
    let (ob, oc) = (outer(vb)?, outer(vc)?);
    let (p, q) = (m.pair(ob), m.pair(oc));
    if p == oc {
        return None;
    }
    let removed = [b, c, m.pair(b), m.pair(c), ob, oc];
    let keep: Vec<usize> = (0..m.dart_count()).filter(|d| !removed.contains(d)).collect();
    let mut idx = vec![usize::MAX; m.dart_count()];
    for (i, &d) in keep.iter().enumerate() {
        idx[d] = i;
    }
    let mut pairing = vec![0; keep.len()];
    let mut rotation = vec![0; keep.len()];
    for &d in &keep {
        let pd = if d == p {
            q
        } else if d == q {
            p
        } else {
            m.pair(d)
        };
        pairing[idx[d]] = idx[pd];
        rotation[idx[d]] = idx[m.rot(d)];
    }
    let mut colors: Vec<(usize, Color)> = Vec::new();
    for (v, cyc) in m.vertices().iter().enumerate() {
        if v != vb && v != vc {
            colors.push((cyc.iter().map(|&d| idx[d]).min().unwrap(), m.color(v)));
        }
    }
    colors.sort();
    let colors: Vec<Color> = colors.into_iter().map(|(_, c)| c).collect();
    let small = build_map(keep.len(), &pairing, &rotation, &colors).ok()?;
    // The branch dart plays the role of x2: the left arc seen from p's end.
    let (first, left) = (idx[p], true);
    let edges = small.edges();
    let (ei, side) = edges
        .iter()
        .enumerate()
        .find_map(|(i, &(a, bb))| if a == first { Some((i, false)) } else if bb == first { Some((i, true)) } else { None })?;
    Some((small, InsertionSite { edge: ei, side, branch: left }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::from_cycles;

    fn theta() -> CombMap {
        from_cycles(&[(Color::Black, vec![0, 2, 4]), (Color::Black, vec![1, 5, 3])], &[(0, 1), (2, 3), (4, 5)]).unwrap()
    }

    #[test]
    fn degree_three_counts() {
        let plain = enumerate_skeletons(3, 0, true).unwrap();
        assert_eq!(plain.len(), 2);
        let one: Vec<_> = enumerate_skeletons(3, 1, true)
            .unwrap()
            .into_iter()
            .filter(|m| validate_skeleton(m).t == 1)
            .collect();
        assert_eq!(one.len(), 2);
        assert_eq!(enumerate_skeletons(12, 0, true).unwrap_err(), SkeletonError::DegreeUnsupported(12));
    }

    #[test]
    fn insertion_roundtrip() {
        let m = theta();
        for edge in 0..3 {
            for side in [false, true] {
                for branch in [false, true] {
                    let site = InsertionSite { edge, side, branch };
                    let ins = insert_bigon(&m, site).unwrap();
                    assert_eq!(validate_skeleton(&ins.map).degree, 6);
                    assert_eq!(ins.map.face_count(), m.face_count() + 1);
                    let (back, s2) = remove_insertion(&ins.map, ins.branch_dart).unwrap();
                    assert_eq!(canonical_code(&back), canonical_code(&m));
                    let again = insert_bigon(&back, s2).unwrap();
                    assert_eq!(canonical_code(&again.map), canonical_code(&ins.map));
                }
            }
        }
    }

    #[test]
    fn theta_markings() {
        // theta: a marking with all edges [2,3]/[3,2]/[1,1] exists
        assert!(admits_splitting_marking(&theta()).unwrap());
        let seg = from_cycles(&[(Color::Black, vec![0]), (Color::Black, vec![1])], &[(0, 1)]).unwrap();
        assert_eq!(find_splitting_markings(&seg).unwrap_err(), SkeletonError::SingularBlackPresent);
    }
}
