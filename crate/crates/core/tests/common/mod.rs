//! Independent reference implementations used to cross-check the library.
//! Nothing here calls into the code under test except for plain accessors.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use clusterfold::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<i64>>;

/// Positive roots by closing the simple roots under reflections, acting on
/// coordinate vectors: `s_i(v) = v - (sum_j v_j c[i][j]) e_i`.
pub fn positive_root_count(c: &Matrix) -> usize {
    let n = c.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| v[j] * c[i][j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.iter().filter(|v| v.iter().all(|&x| x >= 0)).count()
}

/// Integer matrix of the simple reflection `s_i` on root coordinates.
pub fn reflection(c: &Matrix, i: usize) -> Matrix {
    let n = c.len();
    let mut m: Matrix = (0..n).map(|r| (0..n).map(|s| i64::from(r == s)).collect()).collect();
    for j in 0..n {
        m[i][j] -= c[i][j];
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|s| (0..n).map(|k| a[r][k] * b[k][s]).sum()).collect())
        .collect()
}

fn mat_vec(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Product of the reflection matrices of a word (letters are 0-based).
pub fn word_matrix(c: &Matrix, word: &[usize]) -> Matrix {
    let n = c.len();
    let id: Matrix = (0..n).map(|r| (0..n).map(|s| i64::from(r == s)).collect()).collect();
    word.iter().fold(id, |acc, &i| mat_mul(&acc, &reflection(c, i)))
}

/// A word is reduced iff every root `s_{i1}..s_{i(j-1)}(alpha_{ij})` is
/// positive.
pub fn is_reduced(c: &Matrix, word: &[usize]) -> bool {
    let n = c.len();
    (0..word.len()).all(|j| {
        let mut e = vec![0; n];
        e[word[j]] = 1;
        let v = mat_vec(&word_matrix(c, &word[..j]), &e);
        v.iter().all(|&x| x >= 0)
    })
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// `a` and `b` agree after some simultaneous reordering of rows and columns.
pub fn same_up_to_reordering(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len()
        && permutations(a.len())
            .iter()
            .any(|p| (0..a.len()).all(|i| (0..a.len()).all(|j| a[p[i]][p[j]] == b[i][j])))
}

/// Value of `p` at a point, all arithmetic in exact rationals.
pub fn evaluate(p: &LaurentPoly, point: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m.exps()) {
            let f = if e >= 0 { x.clone() } else { x.recip() };
            for _ in 0..e.unsigned_abs() {
                t *= &f;
            }
        }
        total += t;
    }
    total
}

/// Rank by dense Gaussian elimination over the rationals.
pub fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for k in col..cols {
                    let d = &f * &rows[rank][k];
                    rows[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}
