#![allow(dead_code)]

use std::sync::Arc;

use nichols::group::{diagonal_type, FiniteGroup};
use nichols::reflection::YDTuple;
use nichols::yd::{diagonal_modules, YDModule};
use nichols::{CycMatrix, CycScalar};

pub fn e0() -> YDTuple {
    tuple(&[vec![(2, 1), (1, 0)], vec![(1, 0), (2, 1)]])
}

pub fn e1() -> YDTuple {
    tuple(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]])
}

pub fn tuple(q: &[Vec<(u32, i64)>]) -> YDTuple {
    YDTuple::new(diagonal_modules(&diagonal_type(q).unwrap()).unwrap()).unwrap()
}

pub fn diagonal_sum(q: &[Vec<(u32, i64)>]) -> (YDModule, Vec<usize>) {
    YDModule::direct_sum(&diagonal_modules(&diagonal_type(q).unwrap()).unwrap()).unwrap()
}

/// Transpositions of S3, each acting with its sign.
pub fn s3_transpositions() -> YDModule {
    let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
    let ts: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
    let action = g
        .elements()
        .map(|h| {
            let sign = if g.element_order(h) == 2 { -1 } else { 1 };
            let entries = ts.iter().enumerate().map(|(k, &t)| {
                let img = g.conjugate(h, t);
                (ts.iter().position(|&x| x == img).unwrap(), k, CycScalar::from_int(sign))
            });
            CycMatrix::from_entries(3, 3, entries)
        })
        .collect();
    YDModule::new(g, ts, action).unwrap()
}

/// `c(x_a (x) x_b) = (g_a . x_b) (x) x_a` for a module whose group elements
/// act by monomial matrices.
fn braid_letters(m: &YDModule, a: usize, b: usize) -> (CycScalar, usize, usize) {
    let col = m.action(m.degree(a)).column(b);
    assert_eq!(col.len(), 1, "oracle needs a monomial action");
    let (b2, s) = col[0].clone();
    (s, b2, a)
}

fn bubble_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut w = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        w.push(i);
    }
    w
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Rank of the sum over all `n!` permutations of their braid lifts, acting
/// on words letter by letter. Shares nothing with the library's symmetrizer
/// code beyond scalar arithmetic.
pub fn permutation_oracle_rank(m: &YDModule, n: usize) -> usize {
    let d = m.dim();
    let size = d.pow(n as u32);
    let decode = |mut w: usize| {
        let mut l = vec![0; n];
        for k in (0..n).rev() {
            l[k] = w % d;
            w /= d;
        }
        l
    };
    let encode = |l: &[usize]| l.iter().fold(0, |acc, &x| acc * d + x);
    let words: Vec<Vec<usize>> = perms(n).iter().map(|p| bubble_word(p)).collect();
    let mut entries = Vec::new();
    for w in 0..size {
        for rw in &words {
            let mut letters = decode(w);
            let mut coef = CycScalar::one();
            for &i in rw {
                let (s, x, y) = braid_letters(m, letters[i], letters[i + 1]);
                coef = &coef * &s;
                letters[i] = x;
                letters[i + 1] = y;
            }
            entries.push((encode(&letters), w, coef));
        }
    }
    CycMatrix::from_entries(size, size, entries).rank()
}
