//! Reidemeister–Schreier rewriting and Tietze simplification.

use std::collections::{HashMap, VecDeque};

use super::{CosetTable, EnumOptions, Presentation};
use crate::error::GroupError;
use crate::word::FreeWord;

/// Presentation of the subgroup whose coset table is `table`
/// (the table must satisfy the relators of `p`).
pub fn schreier_presentation(p: &Presentation, table: &CosetTable) -> Presentation {
    let n = p.ngens;
    let idx = table.index();
    // spanning tree of the Schreier graph by BFS from coset 0
    let mut tree: HashMap<(usize, usize), ()> = HashMap::new();
    let mut seen = vec![false; idx];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(c) = q.pop_front() {
        for k in 1..=n {
            for sign in [1i32, -1] {
                let d = table.act(c, sign * k as i32);
                if !seen[d] {
                    seen[d] = true;
                    // normalise the edge to its positive-letter form (source, gen)
                    let key = if sign > 0 { (c, k) } else { (d, k) };
                    tree.insert(key, ());
                    q.push_back(d);
                }
            }
        }
    }
    let mut gen_id: HashMap<(usize, usize), i32> = HashMap::new();
    let mut next = 0i32;
    for c in 0..idx {
        for k in 1..=n {
            if !tree.contains_key(&(c, k)) {
                next += 1;
                gen_id.insert((c, k), next);
            }
        }
    }
    let mut rels = Vec::new();
    for c in 0..idx {
        for r in &p.relators {
            let mut cur = c;
            let mut out = Vec::new();
            for &l in r.letters() {
                let k = l.unsigned_abs() as usize;
                if l > 0 {
                    if let Some(&g) = gen_id.get(&(cur, k)) {
                        out.push(g);
                    }
                    cur = table.act(cur, l);
                } else {
                    let d = table.act(cur, l);
                    if let Some(&g) = gen_id.get(&(d, k)) {
                        out.push(-g);
                    }
                    cur = d;
                }
            }
            rels.push(FreeWord::from_letters(out));
        }
    }
    let sub = Presentation::new(next as usize, rels);
    simplify(&sub)
}

/// Tietze simplification: repeatedly eliminates a generator occurring exactly
/// once in some relator, as long as the total relator length stays bounded.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut ngens = p.ngens;
    let mut rels: Vec<FreeWord> = dedup(p.relators.clone());
    let start_len: usize = rels.iter().map(|r| r.len()).sum::<usize>().max(1);
    let budget = 4 * start_len + 1000;
    loop {
        // best candidate: shortest relator with a generator occurring once
        let mut best: Option<(usize, i32)> = None;
        for (ri, r) in rels.iter().enumerate() {
            if best.is_some_and(|(bi, _)| rels[bi].len() <= r.len()) {
                continue;
            }
            let mut counts: HashMap<i32, usize> = HashMap::new();
            for &l in r.letters() {
                *counts.entry(l.abs()).or_default() += 1;
            }
            if let Some(g) = r.letters().iter().map(|l| l.abs()).find(|g| counts[g] == 1) {
                best = Some((ri, g));
            }
        }
        let Some((ri, g)) = best else { break };
        let r = rels[ri].clone();
        // r = u g^e v  =>  g = (u^-1 v^-1)^e  (cyclically: g^e = u^-1 v^-1)
        let pos = r.letters().iter().position(|l| l.abs() == g).unwrap();
        let e = r.letters()[pos].signum();
        let u = FreeWord::from_letters(r.letters()[..pos].iter().copied());
        let v = FreeWord::from_letters(r.letters()[pos + 1..].iter().copied());
        let mut val = u.inverse().mul(&v.inverse());
        if e < 0 {
            val = val.inverse();
        }
        let mut images: Vec<FreeWord> = (1..=ngens).map(FreeWord::gen).collect();
        images[g as usize - 1] = val;
        let new_rels: Vec<FreeWord> = rels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, w)| w.substitute(&images).cyclically_reduced())
            .collect();
        let total: usize = new_rels.iter().map(|r| r.len()).sum();
        if total > budget {
            break;
        }
        // renumber: move the last generator into slot g
        let last = ngens as i32;
        let mut ren: Vec<FreeWord> = (1..=ngens).map(FreeWord::gen).collect();
        if g != last {
            ren[last as usize - 1] = FreeWord::gen(g as usize);
        }
        rels = dedup(new_rels.iter().map(|w| w.substitute(&ren)).collect());
        ngens -= 1;
    }
    Presentation::new(ngens, rels)
}

fn dedup(rels: Vec<FreeWord>) -> Vec<FreeWord> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in rels {
        let r = r.cyclically_reduced();
        if r.is_identity() {
            continue;
        }
        let key = canonical_cyclic(&r);
        if seen.insert(key) {
            out.push(r);
        }
    }
    out
}

/// Least rotation among the cyclic conjugates of `r` and `r⁻¹`.
fn canonical_cyclic(r: &FreeWord) -> Vec<i32> {
    let mut best: Option<Vec<i32>> = None;
    for w in [r.clone(), r.inverse()] {
        let l = w.letters();
        for s in 0..l.len() {
            let mut c = l[s..].to_vec();
            c.extend_from_slice(&l[..s]);
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

/// Presentation of `⟨gens⟩ ≤ G`.
pub fn subgroup_presentation(
    p: &Presentation,
    gens: &[FreeWord],
    opts: EnumOptions,
) -> Result<Presentation, GroupError> {
    let t = p.coset_table(gens, opts)?;
    Ok(schreier_presentation(p, &t))
}

/// Presentation of [G, G], the kernel of G → G^ab (requires finite G^ab).
pub fn derived_subgroup(p: &Presentation, opts: EnumOptions) -> Result<Presentation, GroupError> {
    let mut extra = Vec::new();
    for i in 1..=p.ngens {
        for j in i + 1..=p.ngens {
            extra.push(FreeWord::comm(&FreeWord::gen(i), &FreeWord::gen(j)));
        }
    }
    let ab = p.with_relators(&extra);
    let t = ab.coset_table(&[], opts)?;
    Ok(schreier_presentation(p, &t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn derived_subgroup_of_s3_is_z3() {
        let p = Presentation::new(2, vec![w("a1^2"), w("a2^2"), w("(a1 a2)^3")]);
        let d = derived_subgroup(&p, EnumOptions::default()).unwrap();
        assert_eq!(d.order(EnumOptions::default()).unwrap(), 3);
        assert_eq!(d.abelianization().torsion, vec![3]);
    }

    #[test]
    fn index_one_subgroup_keeps_order() {
        let p = Presentation::new(2, vec![w("a1^2"), w("a2^3"), w("(a1 a2)^5")]);
        let s = subgroup_presentation(&p, &[w("a1"), w("a2")], EnumOptions::default()).unwrap();
        assert_eq!(s.order(EnumOptions::default()).unwrap(), 60);
    }

    #[test]
    fn quaternion_subgroup() {
        let p = Presentation::new(2, vec![w("a1^4"), w("a1^2 a2^-2"), w("a2^-1 a1 a2 a1")]);
        let s = subgroup_presentation(&p, &[w("a1")], EnumOptions::default()).unwrap();
        assert_eq!(s.order(EnumOptions::default()).unwrap(), 4);
    }
}
