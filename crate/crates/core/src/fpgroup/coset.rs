//! Todd–Coxeter coset enumeration.
//!
//! Columns: `2k` is generator `k+1`, `2k+1` its inverse. Cosets are 0-based,
//! coset 0 is the subgroup. Coincidences are merged in place with a
//! union-find forwarding array; deductions are queued and scanned against
//! the cyclic conjugates of the relators (Felsch-style processing), in both
//! strategies.

use crate::error::GroupError;
use crate::word::FreeWord;

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

const NONE: u32 = u32::MAX;
const DEDUCTION_CAP: usize = 1 << 16;
const SHORT_RELATOR: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Scan every relator from every coset in turn, defining as needed.
    #[default]
    RelatorFirst,
    /// Fill the first undefined row entry, then process deductions.
    RowFilling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_cosets: DEFAULT_MAX_COSETS, strategy: Strategy::default() }
    }
}

impl EnumOptions {
    pub fn with_max(max_cosets: usize) -> Self {
        EnumOptions { max_cosets, ..Default::default() }
    }
}

/// A complete, closed coset table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    table: Vec<u32>,
    count: usize,
    /// Peak number of simultaneously allocated cosets.
    pub peak: usize,
}

#[inline]
pub fn col_of(letter: i32) -> usize {
    let k = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * k
    } else {
        2 * k + 1
    }
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

fn word_cols(w: &FreeWord) -> Vec<u32> {
    w.letters().iter().map(|&l| col_of(l) as u32).collect()
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.count
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Image of a coset under a letter (`±k`).
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.table[coset * 2 * self.ngens + col_of(letter)] as usize
    }

    pub fn trace(&self, coset: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by a word.
    pub fn permutation(&self, w: &FreeWord) -> Vec<usize> {
        (0..self.count).map(|c| self.trace(c, w)).collect()
    }

    /// Checks that the table is complete, mutually inverse, closed under all
    /// relators at every coset and that subgroup generators fix coset 0.
    pub fn is_closed(&self, relators: &[FreeWord], subgroup: &[FreeWord]) -> bool {
        let nc = 2 * self.ngens;
        for c in 0..self.count {
            for x in 0..nc {
                let d = self.table[c * nc + x];
                if d == NONE || d as usize >= self.count {
                    return false;
                }
                if self.table[d as usize * nc + inv_col(x)] as usize != c {
                    return false;
                }
            }
            if relators.iter().any(|r| self.trace(c, r) != c) {
                return false;
            }
        }
        subgroup.iter().all(|h| self.trace(0, h) == 0)
    }
}

struct Table {
    nc: usize,
    t: Vec<u32>,
    p: Vec<u32>,
    next: usize,
    live: usize,
    max: usize,
    peak: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    ded_overflow: bool,
}

struct Full;

impl Table {
    fn new(nc: usize, max: usize) -> Self {
        let mut t = Table {
            nc,
            t: Vec::new(),
            p: Vec::new(),
            next: 0,
            live: 0,
            max,
            peak: 0,
            queue: Vec::new(),
            deductions: Vec::new(),
            ded_overflow: false,
        };
        t.alloc();
        t
    }

    fn alloc(&mut self) -> u32 {
        let c = self.next;
        if self.t.len() < (c + 1) * self.nc {
            self.t.resize((c + 1) * self.nc, NONE);
            self.p.push(c as u32);
        } else {
            self.t[c * self.nc..(c + 1) * self.nc].fill(NONE);
            self.p[c] = c as u32;
        }
        self.next += 1;
        self.live += 1;
        self.peak = self.peak.max(self.next);
        c as u32
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.t[c as usize * self.nc + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.t[c as usize * self.nc + x] = d;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < DEDUCTION_CAP {
            self.deductions.push((c, x as u32));
        } else {
            self.ded_overflow = true;
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Full> {
        if self.next >= self.max {
            return Err(Full);
        }
        let d = self.alloc();
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
        self.push_deduction(c, x);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        let mut c = c;
        while self.p[c as usize] != r {
            let n = self.p[c as usize];
            self.p[c as usize] = r;
            c = n;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.p[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for x in 0..self.nc {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let ix = inv_col(x);
                if self.get(d, ix) == g {
                    self.set(d, ix, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, ix);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, ix, mu);
                        self.push_deduction(mu, x);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` from `start`; with `fill`, undefined gaps get new cosets.
    fn scan(&mut self, start: u32, w: &[u32], fill: bool) -> Result<(), Full> {
        let n = w.len();
        let mut f = start;
        let mut i = 0;
        let mut b = start;
        let mut j = n;
        loop {
            while i < j {
                let g = self.get(f, w[i] as usize);
                if g == NONE {
                    break;
                }
                f = g;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let g = self.get(b, inv_col(w[j - 1] as usize));
                if g == NONE {
                    break;
                }
                b = g;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = w[i] as usize;
                self.set(f, x, b);
                self.set(b, inv_col(x), f);
                self.push_deduction(f, x);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i] as usize)?;
        }
    }

    fn process_deductions(&mut self, by_col: &[Vec<Vec<u32>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.alive(c) {
                continue;
            }
            let x = x as usize;
            for r in &by_col[x] {
                let _ = self.scan(c, r, false);
                if !self.alive(c) {
                    break;
                }
            }
            if !self.alive(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == NONE {
                continue;
            }
            for r in &by_col[inv_col(x)] {
                let _ = self.scan(d, r, false);
                if !self.alive(d) {
                    break;
                }
            }
        }
    }

    /// Scans all relators from all live cosets without defining.
    fn lookahead(&mut self, rels: &[Vec<u32>], by_col: &[Vec<Vec<u32>>]) {
        self.ded_overflow = false;
        let mut c = 0;
        while c < self.next {
            let cc = c as u32;
            for r in rels {
                if !self.alive(cc) {
                    break;
                }
                let _ = self.scan(cc, r, false);
            }
            c += 1;
        }
        self.process_deductions(by_col);
    }

    /// Renumbers live cosets densely; returns the new index of the first live
    /// coset at or after `pos`.
    fn compact(&mut self, pos: usize) -> usize {
        let mut map = vec![NONE; self.next];
        let mut k = 0u32;
        for c in 0..self.next {
            if self.p[c] == c as u32 {
                map[c] = k;
                k += 1;
            }
        }
        let mut new_pos = k as usize;
        for c in (0..self.next).rev() {
            if c >= pos && map[c] != NONE {
                new_pos = map[c] as usize;
            }
        }
        let nc = self.nc;
        for c in 0..self.next {
            let m = map[c];
            if m == NONE {
                continue;
            }
            for x in 0..nc {
                let d = self.t[c * nc + x];
                let nd = if d == NONE { NONE } else { map[self.rep_ro(d) as usize] };
                self.t[m as usize * nc + x] = nd;
            }
        }
        self.next = k as usize;
        self.live = k as usize;
        self.t.truncate(self.next * nc);
        self.p.truncate(self.next);
        for (i, v) in self.p.iter_mut().enumerate() {
            *v = i as u32;
        }
        self.deductions.clear();
        new_pos
    }

    fn rep_ro(&self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        r
    }

    fn first_hole(&self, from: usize) -> Option<(usize, usize)> {
        for c in from..self.next {
            if self.p[c] != c as u32 {
                continue;
            }
            for x in 0..self.nc {
                if self.t[c * self.nc + x] == NONE {
                    return Some((c, x));
                }
            }
        }
        None
    }
}

fn conjugates_by_col(rels: &[Vec<u32>], nc: usize) -> Vec<Vec<Vec<u32>>> {
    let mut by_col: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nc];
    for r in rels {
        let inv: Vec<u32> = r.iter().rev().map(|&x| inv_col(x as usize) as u32).collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let mut c = w[s..].to_vec();
                c.extend_from_slice(&w[..s]);
                let first = c[0] as usize;
                if !by_col[first].contains(&c) {
                    by_col[first].push(c);
                }
            }
        }
    }
    by_col
}

/// Enumerates the cosets of `⟨subgroup⟩` in `⟨ngens | relators⟩`.
pub fn enumerate(
    ngens: usize,
    relators: &[FreeWord],
    subgroup: &[FreeWord],
    opts: EnumOptions,
) -> Result<CosetTable, GroupError> {
    let nc = 2 * ngens;
    let max = opts.max_cosets.max(1);
    let rels: Vec<Vec<u32>> = relators
        .iter()
        .map(|r| r.cyclically_reduced())
        .filter(|r| !r.is_identity())
        .map(|r| word_cols(&r))
        .collect();
    let subs: Vec<Vec<u32>> =
        subgroup.iter().filter(|h| !h.is_identity()).map(word_cols).collect();
    let by_col = conjugates_by_col(&rels, nc);
    let mut t = Table::new(nc, max);

    // subgroup generators at coset 0
    loop {
        let mut full = false;
        for h in &subs {
            if t.scan(0, h, true).is_err() {
                full = true;
                break;
            }
        }
        t.process_deductions(&by_col);
        if !full {
            break;
        }
        t.lookahead(&rels, &by_col);
        let before = t.next;
        t.compact(0);
        if t.next >= before {
            return Err(GroupError::LimitExceeded(max));
        }
    }

    match opts.strategy {
        Strategy::RelatorFirst => relator_first(&mut t, &rels, &by_col, max)?,
        Strategy::RowFilling => row_filling(&mut t, &rels, &by_col, max)?,
    }

    // final safety pass, then compact and check closure
    t.lookahead(&rels, &by_col);
    t.compact(0);
    let table = CosetTable { ngens, table: t.t, count: t.next, peak: t.peak };
    assert!(table.is_closed(relators, subgroup), "coset table failed closure check");
    Ok(table)
}

fn relieve(t: &mut Table, rels: &[Vec<u32>], by_col: &[Vec<Vec<u32>>], pos: usize, max: usize) -> Result<usize, GroupError> {
    t.lookahead(rels, by_col);
    let before = t.next;
    let np = t.compact(pos);
    if t.next >= before || t.next >= max {
        return Err(GroupError::LimitExceeded(max));
    }
    Ok(np)
}

fn relator_first(t: &mut Table, rels: &[Vec<u32>], by_col: &[Vec<Vec<u32>>], max: usize) -> Result<(), GroupError> {
    // deductions are only chased through short relators here; long ones are
    // covered by the per-coset relator scans
    let short: &[Vec<Vec<u32>>] = &by_col
        .iter()
        .map(|v| v.iter().filter(|r| r.len() <= SHORT_RELATOR).cloned().collect())
        .collect::<Vec<_>>();
    let mut a = 0usize;
    while a < t.next {
        let ac = a as u32;
        if !t.alive(ac) {
            a += 1;
            continue;
        }
        let mut full = false;
        for r in rels {
            if !t.alive(ac) {
                break;
            }
            if t.scan(ac, r, true).is_err() {
                full = true;
                break;
            }
        }
        if !full && t.alive(ac) {
            for x in 0..t.nc {
                if !t.alive(ac) {
                    break;
                }
                if t.get(ac, x) == NONE && t.define(ac, x).is_err() {
                    full = true;
                    break;
                }
            }
        }
        t.process_deductions(short);
        if full {
            a = relieve(t, rels, by_col, a, max)?;
            continue;
        }
        a += 1;
    }
    Ok(())
}

fn row_filling(t: &mut Table, rels: &[Vec<u32>], by_col: &[Vec<Vec<u32>>], max: usize) -> Result<(), GroupError> {
    let mut from = 0usize;
    loop {
        if t.ded_overflow {
            t.lookahead(rels, by_col);
        }
        let Some((c, x)) = t.first_hole(from) else {
            if t.ded_overflow {
                continue;
            }
            return Ok(());
        };
        from = c;
        if t.define(c as u32, x).is_err() {
            from = relieve(t, rels, by_col, from, max)?;
            continue;
        }
        t.process_deductions(by_col);
    }
}
