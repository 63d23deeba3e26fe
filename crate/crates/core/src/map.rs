//! Planar combinatorial maps: darts, an edge involution α and a vertex
//! rotation σ (counterclockwise). Faces are the cycles of φ = σ∘α.
//!
//! The corner of a vertex between dart `h` and `σ(h)` lies in the face
//! containing `α(h)`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{MapError, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn byte(self) -> u8 {
        match self {
            Color::Black => 0,
            Color::White => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Preserving,
    Reversing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum FiberFlag {
    #[default]
    A,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombMap {
    pairing: Vec<usize>,
    rotation: Vec<usize>,
    vertex_of: Vec<usize>,
    /// Rotation cycles, each starting at its smallest dart, sorted by it.
    vertices: Vec<Vec<usize>>,
    colors: Vec<Color>,
}

/// A face of the map together with its fiber decoration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Face orbit `d, φ(d), φ²(d), …` starting at its smallest dart.
    pub boundary: Vec<usize>,
    pub black_corners: usize,
    pub fiber_flag: FiberFlag,
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            c.push(d);
            d = perm[d];
        }
        out.push(c);
    }
    out
}

/// Validates and assembles a map. `colors` has one entry per rotation cycle,
/// cycles ordered by their smallest dart.
pub fn build_map(
    dart_count: usize,
    edge_pairing: &[usize],
    rotation: &[usize],
    colors: &[Color],
) -> Result<CombMap, MapError> {
    if dart_count % 2 != 0 {
        return Err(MapError::OddDartCount(dart_count));
    }
    if edge_pairing.len() != dart_count {
        return Err(MapError::NotInvolution(edge_pairing.len().min(dart_count)));
    }
    for (d, &e) in edge_pairing.iter().enumerate() {
        if e == d {
            return Err(MapError::FixedDart(d));
        }
        if e >= dart_count || edge_pairing[e] != d {
            return Err(MapError::NotInvolution(d));
        }
    }
    if rotation.len() != dart_count {
        return Err(MapError::NotPermutation(rotation.len().min(dart_count)));
    }
    let mut hit = vec![false; dart_count];
    for (d, &r) in rotation.iter().enumerate() {
        if r >= dart_count || hit[r] {
            return Err(MapError::NotPermutation(d));
        }
        hit[r] = true;
    }
    let vertices = cycles(rotation);
    if colors.len() != vertices.len() {
        return Err(MapError::ColorCount { got: colors.len(), expected: vertices.len() });
    }
    let mut vertex_of = vec![0; dart_count];
    for (v, c) in vertices.iter().enumerate() {
        for &d in c {
            vertex_of[d] = v;
        }
    }
    let m = CombMap {
        pairing: edge_pairing.to_vec(),
        rotation: rotation.to_vec(),
        vertex_of,
        vertices,
        colors: colors.to_vec(),
    };
    if !m.is_connected() {
        return Err(MapError::Disconnected);
    }
    let chi = m.euler_characteristic();
    if chi != 2 {
        return Err(MapError::NonPlanar(chi));
    }
    Ok(m)
}

impl CombMap {
    pub fn dart_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn pair(&self, d: usize) -> usize {
        self.pairing[d]
    }

    pub fn rot(&self, d: usize) -> usize {
        self.rotation[d]
    }

    pub fn rot_inv(&self, d: usize) -> usize {
        let mut e = d;
        while self.rotation[e] != d {
            e = self.rotation[e];
        }
        e
    }

    /// φ(d) = σ(α(d)).
    pub fn face_step(&self, d: usize) -> usize {
        self.rotation[self.pairing[d]]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn dart_color(&self, d: usize) -> Color {
        self.colors[self.vertex_of[d]]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Edges as `(d, α(d))` with `d < α(d)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count()).filter(|&d| d < self.pairing[d]).map(|d| (d, self.pairing[d])).collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.dart_count();
        if n == 0 {
            return self.vertices.len() <= 1;
        }
        let mut seen = vec![false; n];
        let mut q = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = q.pop_front() {
            for e in [self.rotation[d], self.pairing[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    q.push_back(e);
                }
            }
        }
        count == n
    }

    pub fn face_count(&self) -> usize {
        let phi: Vec<usize> = (0..self.dart_count()).map(|d| self.face_step(d)).collect();
        cycles(&phi).len()
    }

    /// V − E + F.
    pub fn euler_characteristic(&self) -> i64 {
        if self.dart_count() == 0 {
            return 2 * self.vertices.len() as i64;
        }
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// The same map with every rotation reversed (orientation flipped).
    pub fn mirror(&self) -> CombMap {
        let mut rot = vec![0; self.dart_count()];
        for (d, &r) in self.rotation.iter().enumerate() {
            rot[r] = d;
        }
        // rotation cycles keep their smallest darts, so vertex order and colors carry over
        build_map(self.dart_count(), &self.pairing, &rot, &self.colors).expect("mirror of a valid map")
    }

    /// Renames dart `d` to `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> CombMap {
        let n = self.dart_count();
        let mut pairing = vec![0; n];
        let mut rotation = vec![0; n];
        for d in 0..n {
            pairing[perm[d]] = perm[self.pairing[d]];
            rotation[perm[d]] = perm[self.rotation[d]];
        }
        let inv = inverse_perm(perm);
        let colors: Vec<Color> = cycles(&rotation).iter().map(|c| self.dart_color(inv[c[0]])).collect();
        build_map(n, &pairing, &rotation, &colors).expect("relabeling preserves validity")
    }

    /// Relabeled copy with darts numbered along a canonical traversal and
    /// α(2i) = 2i+1.
    pub fn to_canonical_form(&self) -> CombMap {
        self.relabel(&canonical_relabeling(self, &vec![0; self.dart_count()]))
    }

    pub fn faces(&self) -> Vec<Region> {
        let phi: Vec<usize> = (0..self.dart_count()).map(|d| self.face_step(d)).collect();
        cycles(&phi)
            .into_iter()
            .map(|boundary| {
                let black_corners = boundary.iter().filter(|&&d| self.dart_color(d) == Color::Black).count();
                Region { boundary, black_corners, fiber_flag: FiberFlag::A }
            })
            .collect()
    }

    /// Index into `faces()` of the face containing each dart.
    pub fn face_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.dart_count()];
        for (i, r) in self.faces().iter().enumerate() {
            for &d in &r.boundary {
                idx[d] = i;
            }
        }
        idx
    }

    /// Face containing the corner counterclockwise after `h` at its vertex.
    pub fn corner_face(&self, h: usize, face_index: &[usize]) -> usize {
        face_index[self.pairing[h]]
    }
}

fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// BFS labeling from `root`: darts in order of discovery, exploring σ then α.
fn bfs_order(m: &CombMap, root: usize) -> Vec<usize> {
    let n = m.dart_count();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[root] = 0;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        i += 1;
        for e in [m.rotation[d], m.pairing[d]] {
            if label[e] == usize::MAX {
                label[e] = order.len();
                order.push(e);
            }
        }
    }
    order
}

fn code_from(m: &CombMap, marks: &[u8], order: &[usize]) -> Vec<u16> {
    let n = m.dart_count();
    let mut label = vec![0u16; n];
    for (i, &d) in order.iter().enumerate() {
        label[d] = i as u16;
    }
    let mut out = Vec::with_capacity(4 * n + 1);
    out.push(n as u16);
    for &d in order {
        out.push(label[m.rotation[d]]);
        out.push(label[m.pairing[d]]);
        out.push(m.dart_color(d).byte() as u16);
        out.push(marks[d] as u16);
    }
    out
}

fn best_labeling(m: &CombMap, marks: &[u8]) -> Vec<usize> {
    let mut best: Option<(Vec<u16>, Vec<usize>)> = None;
    for root in 0..m.dart_count() {
        let order = bfs_order(m, root);
        let code = code_from(m, marks, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, order));
        }
    }
    best.map(|(_, o)| o).unwrap_or_default()
}

/// Dart renaming `old -> new` putting a (marked) map in canonical form:
/// darts numbered along the canonical traversal with α(2i) = 2i+1.
pub fn canonical_relabeling(m: &CombMap, marks: &[u8]) -> Vec<usize> {
    let order = best_labeling(m, marks);
    let mut perm = vec![usize::MAX; m.dart_count()];
    let mut next = 0;
    for &d in &order {
        if perm[d] == usize::MAX {
            perm[d] = next;
            perm[m.pairing[d]] = next + 1;
            next += 2;
        }
    }
    perm
}

/// Complete invariant for orientation-preserving, color-preserving isomorphism.
pub fn canonical_code(m: &CombMap) -> Vec<u8> {
    canonical_code_marked(m, &vec![0; m.dart_count()])
}

/// Canonical code of a map whose darts carry marks (decorations).
pub fn canonical_code_marked(m: &CombMap, marks: &[u8]) -> Vec<u8> {
    assert_eq!(marks.len(), m.dart_count());
    if m.dart_count() == 0 {
        return vec![0, 0, m.colors.first().map_or(9, |c| c.byte())];
    }
    let order = best_labeling(m, marks);
    code_from(m, marks, &order).iter().flat_map(|x| x.to_be_bytes()).collect()
}

/// The bijection `f` with f(root_a) = root_b extending to an isomorphism
/// a → b (preserving marks), if any.
fn extend(a: &CombMap, b: &CombMap, ma: &[u8], mb: &[u8], root_a: usize, root_b: usize) -> Option<Vec<usize>> {
    let n = a.dart_count();
    if b.dart_count() != n {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    f[root_a] = root_b;
    let mut q = VecDeque::from([root_a]);
    while let Some(d) = q.pop_front() {
        let e = f[d];
        if a.dart_color(d) != b.dart_color(e) || ma[d] != mb[e] {
            return None;
        }
        for (x, y) in [(a.rotation[d], b.rotation[e]), (a.pairing[d], b.pairing[e])] {
            if f[x] == usize::MAX {
                f[x] = y;
                q.push_back(x);
            } else if f[x] != y {
                return None;
            }
        }
    }
    // injectivity (surjectivity follows by counting)
    let mut hit = vec![false; n];
    for &y in &f {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    Some(f)
}

/// All orientation-preserving isomorphisms `a → b` respecting colors and marks.
pub fn isomorphisms_marked(a: &CombMap, b: &CombMap, ma: &[u8], mb: &[u8]) -> Vec<Vec<usize>> {
    if a.dart_count() == 0 || a.dart_count() != b.dart_count() {
        return Vec::new();
    }
    (0..b.dart_count()).filter_map(|r| extend(a, b, ma, mb, 0, r)).collect()
}

/// Color-preserving automorphisms. Reversing ones satisfy ψσ = σ⁻¹ψ, ψα = αψ.
pub fn automorphisms(m: &CombMap, orientation: Orientation) -> Vec<Vec<usize>> {
    automorphisms_marked(m, &vec![0; m.dart_count()], orientation)
}

pub fn automorphisms_marked(m: &CombMap, marks: &[u8], orientation: Orientation) -> Vec<Vec<usize>> {
    match orientation {
        Orientation::Preserving => isomorphisms_marked(m, m, marks, marks),
        Orientation::Reversing => isomorphisms_marked(m, &m.mirror(), marks, marks),
    }
}

/// Whether an orientation-reversing symmetry exists, decided by comparing the
/// canonical codes of the map and its mirror.
pub fn has_reversing_symmetry(m: &CombMap, marks: &[u8]) -> bool {
    canonical_code_marked(m, marks) == canonical_code_marked(&m.mirror(), marks)
}

/// Why a map fails to be a skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SkeletonIssue {
    ValencyExceeded { vertex: usize, valency: usize },
    WhiteValency { vertex: usize, valency: usize },
    WhiteNeighbor { vertex: usize },
    OddVertexCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonReport {
    pub is_valid: bool,
    pub reasons: Vec<SkeletonIssue>,
    pub black_valencies: Vec<usize>,
    /// Black vertices of valency 1 or 2.
    pub singular_blacks: Vec<usize>,
    /// White vertices (all of valency 1 in a valid skeleton).
    pub singular_whites: Vec<usize>,
    pub degree: usize,
    pub t: usize,
}

/// Checks the skeleton conditions: black valencies in {1,2,3}, whites
/// monovalent with a black neighbour; the vertex count
/// `#black + #white + #black(2)` must be even and gives the degree 3·count/2.
pub fn validate_skeleton(m: &CombMap) -> SkeletonReport {
    let mut reasons = Vec::new();
    let mut black_valencies = Vec::new();
    let mut singular_blacks = Vec::new();
    let mut singular_whites = Vec::new();
    let mut count = 0;
    for (v, darts) in m.vertices.iter().enumerate() {
        let val = darts.len();
        match m.colors[v] {
            Color::Black => {
                black_valencies.push(val);
                count += 1;
                if val > 3 {
                    reasons.push(SkeletonIssue::ValencyExceeded { vertex: v, valency: val });
                } else if val % 3 != 0 {
                    singular_blacks.push(v);
                    if val == 2 {
                        count += 1;
                    }
                }
            }
            Color::White => {
                singular_whites.push(v);
                count += 1;
                if val != 1 {
                    reasons.push(SkeletonIssue::WhiteValency { vertex: v, valency: val });
                }
                if darts.iter().any(|&d| m.dart_color(m.pairing[d]) != Color::Black) {
                    reasons.push(SkeletonIssue::WhiteNeighbor { vertex: v });
                }
            }
        }
    }
    if count % 2 != 0 {
        reasons.push(SkeletonIssue::OddVertexCount);
    }
    SkeletonReport {
        is_valid: reasons.is_empty(),
        reasons,
        black_valencies,
        t: singular_blacks.len(),
        singular_blacks,
        singular_whites,
        degree: 3 * count / 2,
    }
}

/// Skeleton text format:
///
/// ```text
/// skeleton 4
/// edge 0 1
/// edge 2 3
/// vertex black 0 2
/// vertex black 1 3
/// ```
pub fn parse_skeleton(text: &str) -> Result<CombMap, ParseError> {
    let mut dart_count: Option<(usize, usize)> = None;
    let mut pairing: Vec<Option<usize>> = Vec::new();
    let mut rotation: Vec<Option<usize>> = Vec::new();
    let mut vertex_lines: Vec<(usize, Vec<usize>, Color)> = Vec::new();
    let mut last_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<(usize, &str)> = tokens(raw.split('#').next().unwrap_or(""));
        let (kw_col, kw) = toks[0];
        let err = |col: usize, msg: String| ParseError::new(line_no, col, msg);
        let num = |(col, s): (usize, &str)| -> Result<usize, ParseError> {
            s.parse::<usize>().map_err(|_| err(col, format!("expected dart number, found '{s}'")))
        };
        match kw {
            "skeleton" => {
                if dart_count.is_some() {
                    return Err(err(kw_col, "duplicate 'skeleton' header".into()));
                }
                if toks.len() != 2 {
                    return Err(err(kw_col, "expected 'skeleton <dart_count>'".into()));
                }
                let n = num(toks[1])?;
                if n % 2 != 0 {
                    return Err(err(toks[1].0, format!("odd dart count {n}")));
                }
                if n > 4096 {
                    return Err(err(toks[1].0, format!("dart count {n} too large")));
                }
                dart_count = Some((n, line_no));
                pairing = vec![None; n];
                rotation = vec![None; n];
            }
            "edge" | "vertex" => {
                let Some((n, _)) = dart_count else {
                    return Err(err(kw_col, format!("'{kw}' before 'skeleton' header")));
                };
                let check = |tok: (usize, &str)| -> Result<usize, ParseError> {
                    let d = num(tok)?;
                    if d >= n {
                        return Err(err(tok.0, format!("dart {d} out of range 0..{n}")));
                    }
                    Ok(d)
                };
                if kw == "edge" {
                    if toks.len() != 3 {
                        return Err(err(kw_col, "expected 'edge <a> <b>'".into()));
                    }
                    let a = check(toks[1])?;
                    let b = check(toks[2])?;
                    if a == b {
                        return Err(err(toks[2].0, format!("edge pairs dart {a} with itself")));
                    }
                    for (tok, d) in [(toks[1], a), (toks[2], b)] {
                        if pairing[d].is_some() {
                            return Err(err(tok.0, format!("duplicate dart {d} in edges")));
                        }
                    }
                    pairing[a] = Some(b);
                    pairing[b] = Some(a);
                } else {
                    if toks.len() < 3 {
                        return Err(err(kw_col, "expected 'vertex <black|white> <darts...>'".into()));
                    }
                    let color = match toks[1].1 {
                        "black" => Color::Black,
                        "white" => Color::White,
                        other => return Err(err(toks[1].0, format!("unknown color '{other}'"))),
                    };
                    let mut ds = Vec::new();
                    for &tok in &toks[2..] {
                        let d = check(tok)?;
                        if rotation[d].is_some() || ds.contains(&d) {
                            return Err(err(tok.0, format!("duplicate dart {d} in vertices")));
                        }
                        ds.push(d);
                    }
                    for (i, &d) in ds.iter().enumerate() {
                        rotation[d] = Some(ds[(i + 1) % ds.len()]);
                    }
                    vertex_lines.push((line_no, ds, color));
                }
            }
            other => return Err(err(kw_col, format!("unknown keyword '{other}'"))),
        }
    }
    let Some((n, header_line)) = dart_count else {
        return Err(ParseError::new(last_line.max(1), 0, "missing 'skeleton' header"));
    };
    if let Some(d) = pairing.iter().position(|p| p.is_none()) {
        return Err(ParseError::new(header_line, 0, format!("dart {d} missing from edges")));
    }
    if let Some(d) = rotation.iter().position(|p| p.is_none()) {
        return Err(ParseError::new(header_line, 0, format!("dart {d} missing from vertices")));
    }
    let pairing: Vec<usize> = pairing.into_iter().map(Option::unwrap).collect();
    let rotation: Vec<usize> = rotation.into_iter().map(Option::unwrap).collect();
    let mut vs = vertex_lines;
    vs.sort_by_key(|(_, ds, _)| *ds.iter().min().unwrap());
    let colors: Vec<Color> = vs.iter().map(|(_, _, c)| *c).collect();
    build_map(n, &pairing, &rotation, &colors)
        .map_err(|e| ParseError::new(0, 0, format!("invalid map: {e}")).at_line(header_line))
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

impl fmt::Display for CombMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "skeleton {}", self.dart_count())?;
        for (a, b) in self.edges() {
            writeln!(f, "edge {a} {b}")?;
        }
        for (v, c) in self.vertices.iter().enumerate() {
            let col = match self.colors[v] {
                Color::Black => "black",
                Color::White => "white",
            };
            let ds: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            writeln!(f, "vertex {col} {}", ds.join(" "))?;
        }
        Ok(())
    }
}

/// Builds a map from a vertex list (rotation cycles) and edge list.
pub fn from_cycles(vertices: &[(Color, Vec<usize>)], edges: &[(usize, usize)]) -> Result<CombMap, MapError> {
    let n = 2 * edges.len();
    let mut pairing = vec![usize::MAX; n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(MapError::NotInvolution(a.min(b)));
        }
        pairing[a] = b;
        pairing[b] = a;
    }
    if let Some(d) = pairing.iter().position(|&p| p == usize::MAX) {
        return Err(MapError::NotInvolution(d));
    }
    let mut rotation = vec![usize::MAX; n];
    for (_, c) in vertices {
        for (i, &d) in c.iter().enumerate() {
            if d >= n || rotation[d] != usize::MAX {
                return Err(MapError::NotPermutation(d.min(n.saturating_sub(1))));
            }
            rotation[d] = c[(i + 1) % c.len()];
        }
    }
    if let Some(d) = rotation.iter().position(|&p| p == usize::MAX) {
        return Err(MapError::NotPermutation(d));
    }
    let mut vs: Vec<&(Color, Vec<usize>)> = vertices.iter().collect();
    vs.sort_by_key(|(_, c)| *c.iter().min().unwrap());
    let colors: Vec<Color> = vs.iter().map(|(c, _)| *c).collect();
    build_map(n, &pairing, &rotation, &colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    fn segment() -> CombMap {
        build_map(2, &[1, 0], &[0, 1], &[Black, Black]).unwrap()
    }

    fn loop_map() -> CombMap {
        build_map(2, &[1, 0], &[1, 0], &[Black]).unwrap()
    }

    #[test]
    fn segment_and_loop() {
        let s = segment();
        assert_eq!(s.face_count(), 1);
        assert_eq!(s.faces()[0].black_corners, 2);
        let l = loop_map();
        assert_eq!(l.face_count(), 2);
        assert!(l.faces().iter().all(|r| r.black_corners == 1));
        assert_ne!(canonical_code(&s), canonical_code(&l));
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_map(2, &[0, 1], &[0, 1], &[Black, Black]), Err(MapError::FixedDart(0)));
        assert_eq!(build_map(3, &[1, 0, 2], &[0, 1, 2], &[Black]), Err(MapError::OddDartCount(3)));
        assert_eq!(build_map(4, &[1, 0, 3, 2], &[0, 1, 2, 3], &[Black; 4]), Err(MapError::Disconnected));
        assert_eq!(build_map(2, &[1, 0], &[1, 1], &[Black]), Err(MapError::NotPermutation(1)));
        // two loops interleaved at one vertex: torus
        let e = build_map(4, &[2, 3, 0, 1], &[1, 2, 3, 0], &[Black]);
        assert_eq!(e, Err(MapError::NonPlanar(0)));
    }

    #[test]
    fn bigon_faces() {
        let m = from_cycles(&[(Black, vec![0, 2]), (Black, vec![1, 3])], &[(0, 1), (2, 3)]).unwrap();
        let f = m.faces();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|r| r.black_corners == 2));
    }

    #[test]
    fn skeleton_reports() {
        let r = validate_skeleton(&segment());
        assert!(r.is_valid);
        assert_eq!((r.degree, r.t), (3, 2));
        let r = validate_skeleton(&loop_map());
        assert!(r.is_valid);
        assert_eq!((r.degree, r.t), (3, 1));
        let star = from_cycles(
            &[(Black, vec![0, 2, 4, 6]), (Black, vec![1]), (Black, vec![3]), (Black, vec![5]), (Black, vec![7])],
            &[(0, 1), (2, 3), (4, 5), (6, 7)],
        )
        .unwrap();
        let r = validate_skeleton(&star);
        assert!(!r.is_valid);
        assert!(r.reasons.contains(&SkeletonIssue::ValencyExceeded { vertex: 0, valency: 4 }));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&segment(), Orientation::Preserving).len(), 2);
        assert!(!automorphisms(&loop_map(), Orientation::Reversing).is_empty());
        assert!(has_reversing_symmetry(&loop_map(), &[0, 0]));
    }

    #[test]
    fn text_roundtrip() {
        let m = from_cycles(&[(Black, vec![0, 2, 4]), (Black, vec![1, 5, 3])], &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let back = parse_skeleton(&m.to_string()).unwrap();
        assert_eq!(back, m);
        let c = m.to_canonical_form();
        assert!((0..c.dart_count() / 2).all(|i| c.pair(2 * i) == 2 * i + 1));
        assert_eq!(canonical_code(&c), canonical_code(&m));
    }

    #[test]
    fn text_errors() {
        let e = parse_skeleton("skeleton 3\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_skeleton("skeleton 2\nedge 0 1\nvertex black 0\nvertex black 0\n").unwrap_err();
        assert_eq!((e.line, e.col), (4, 13));
        let e = parse_skeleton("skeleton 4\nedge 0 1\nvertex black 0 1\n").unwrap_err();
        assert!(e.msg.contains("missing"));
    }
}
