//! Smith normal form over Z with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `u · a · v = d`, with `u`, `v` unimodular and `d` diagonal with
/// d₁ | d₂ | … (nonnegative).
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.d[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    let k = b.len();
    let n = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn swap_rows(m: &mut Matrix, i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for r in m.iter_mut() {
        r.swap(i, j);
    }
}

/// row_i += q * row_j
fn add_row(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj.iter()) {
        *x += q * y;
    }
}

/// col_i += q * col_j
fn add_col(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    for r in m.iter_mut() {
        let y = r[j].clone();
        r[i] += q * y;
    }
}

/// Quotient rounded to the nearest integer, so the remainder is at most |b|/2.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r * 2u32).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

fn neg_row(m: &mut Matrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

/// Computes the Smith normal form of an `m × n` matrix.
pub fn smith(a: &Matrix, ncols: usize) -> Smith {
    let m = a.len();
    let n = ncols;
    let mut d = a.clone();
    for r in d.iter_mut() {
        r.resize(n, BigInt::zero());
    }
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        loop {
            // pivot: smallest nonzero absolute value in the remaining block,
            // re-chosen every round so it strictly decreases
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero() && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&d[i][t], &d[t][t]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = -nearest_quotient(&d[t][j], &d[t][t]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide every remaining entry
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if t >= m || t >= n || d[t][t].is_zero() {
            break;
        }
        if d[t][t].is_negative() {
            neg_row(&mut d, t);
            neg_row(&mut u, t);
        }
        t += 1;
    }
    Smith { u, v, d }
}

/// Invariant factors (torsion, each > 1) and free rank of Zⁿ / rowspace(a).
pub fn cokernel(a: &Matrix, n: usize) -> (Vec<BigInt>, usize) {
    let s = smith(a, n);
    let diag = s.diagonal();
    let torsion = diag.iter().filter(|x| !x.is_one()).cloned().collect();
    (torsion, n - diag.len())
}

/// Prime-power decomposition of invariant factors, sorted (GAP's convention).
pub fn primary_parts(torsion: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    for t in torsion {
        let mut x = t.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= x {
            if (&x % &p).is_zero() {
                let mut q = BigInt::one();
                while (&x % &p).is_zero() {
                    x /= &p;
                    q *= &p;
                }
                out.push(q);
            }
            p += 1;
        }
        if x > BigInt::one() {
            out.push(x);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let a = from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a, 3);
        let d: Vec<i64> = s.diagonal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d);
    }

    #[test]
    fn dense_five_by_five_terminates() {
        let a = from_i64(&[
            vec![-28, 12, -5, 19, 30],
            vec![5, 25, -9, -25, -15],
            vec![-10, 17, 2, -10, -19],
            vec![-3, 30, -24, 0, -16],
            vec![30, -16, 24, -12, -12],
        ]);
        let s = smith(&a, 5);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d);
        assert_eq!(s.rank(), 5);
    }

    #[test]
    fn primary() {
        let p = primary_parts(&[BigInt::from(6), BigInt::from(12)]);
        let p: Vec<i64> = p.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(p, vec![2, 3, 3, 4]);
    }
}
