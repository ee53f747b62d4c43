//! Braided vector spaces and their tensor powers.
//!
//! Words `(i_1, ..., i_n)` in a basis of `V` index the basis of `V^(x)n`,
//! with the first letter most significant, so index order is lexicographic
//! order. `c_i` acts on slots `i, i+1` (0-based).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::matrix::{CycMatrix, Subspace};
use crate::yd::{yd_braiding, YDModule};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BraidedSpace {
    dim: usize,
    braiding: CycMatrix,
    /// Weight vector of each basis vector; the braiding preserves weight sums.
    weights: Vec<Vec<u32>>,
    /// Group degrees, when the space comes from a Yetter-Drinfeld module.
    degrees: Option<(Arc<FiniteGroup>, Vec<GroupElement>)>,
}

/// Block key of a word: total weight and (if present) product of degrees.
pub type BlockKey = (Vec<u32>, Option<GroupElement>);

impl BraidedSpace {
    pub fn new(dim: usize, braiding: CycMatrix, weights: Vec<Vec<u32>>) -> Result<Self> {
        if braiding.rows() != dim * dim || braiding.cols() != dim * dim || weights.len() != dim {
            return Err(Error::DimensionMismatch("braiding must act on V (x) V".into()));
        }
        let s = BraidedSpace { dim, braiding, weights, degrees: None };
        s.check_weights()?;
        Ok(s)
    }

    /// Braided space of a Yetter-Drinfeld module; `tags` assigns each basis
    /// vector a summand, giving multidegrees.
    pub fn from_yd(m: &YDModule, tags: Option<&[usize]>) -> Result<Self> {
        let n_tags = tags.map_or(1, |t| t.iter().max().map_or(1, |x| x + 1));
        let weights = (0..m.dim())
            .map(|k| {
                let mut w = vec![0u32; n_tags];
                w[tags.map_or(0, |t| t[k])] += 1;
                w
            })
            .collect();
        let s = BraidedSpace { dim: m.dim(), braiding: yd_braiding(m, m), weights, degrees: Some((m.group().clone(), m.degrees().to_vec())) };
        s.check_weights()?;
        Ok(s)
    }

    fn check_weights(&self) -> Result<()> {
        let d = self.dim;
        for (dst, row) in self.braiding.row_data().iter().enumerate() {
            for (src, _) in row {
                let ws = add_w(&self.weights[src / d], &self.weights[src % d]);
                let wd = add_w(&self.weights[dst / d], &self.weights[dst % d]);
                if ws != wd {
                    return Err(Error::Input("braiding does not preserve the weight grading".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn braiding(&self) -> &CycMatrix {
        &self.braiding
    }

    pub fn weights(&self) -> &[Vec<u32>] {
        &self.weights
    }

    pub fn n_weights(&self) -> usize {
        self.weights.first().map_or(0, |w| w.len())
    }

    pub fn word_count(&self, n: usize) -> usize {
        self.dim.pow(n as u32)
    }

    pub fn letters(&self, n: usize, mut w: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = w % self.dim;
            w /= self.dim;
        }
        out
    }

    pub fn word_index(&self, letters: &[usize]) -> usize {
        letters.iter().fold(0, |acc, &l| acc * self.dim + l)
    }

    pub fn word_weight(&self, n: usize, w: usize) -> Vec<u32> {
        let mut acc = vec![0u32; self.n_weights()];
        for l in self.letters(n, w) {
            acc = add_w(&acc, &self.weights[l]);
        }
        acc
    }

    pub fn word_degree(&self, n: usize, w: usize) -> Option<GroupElement> {
        self.degrees.as_ref().map(|(g, deg)| self.letters(n, w).iter().fold(g.identity(), |acc, &l| g.mul(acc, deg[l])))
    }

    pub fn block_key(&self, n: usize, w: usize) -> BlockKey {
        (self.word_weight(n, w), self.word_degree(n, w))
    }

    /// Words of length `n` grouped by block key, each list ascending.
    pub fn blocks(&self, n: usize) -> BTreeMap<BlockKey, Vec<usize>> {
        let mut out: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for w in 0..self.word_count(n) {
            out.entry(self.block_key(n, w)).or_default().push(w);
        }
        out
    }

    /// `c_i` on `V^(x)n`.
    pub fn braid_on_word(&self, n: usize, i: usize) -> CycMatrix {
        assert!(i + 1 < n, "braid slot {i} out of range for length {n}");
        let left = CycMatrix::identity(self.word_count(i));
        let right = CycMatrix::identity(self.word_count(n - i - 2));
        left.kron(&self.braiding).kron(&right)
    }

    /// Braided symmetrizers `S_0, ..., S_max`, by
    /// `S_n = (S_{n-1} (x) id)(id + c_{n-2} + c_{n-2}c_{n-3} + ... + c_{n-2}...c_0)`.
    pub fn symmetrizers(&self, max: usize) -> Vec<CycMatrix> {
        let mut out = vec![CycMatrix::identity(1)];
        for n in 1..=max {
            let prev = out[n - 1].kron(&CycMatrix::identity(self.dim));
            let size = self.word_count(n);
            let mut chain = CycMatrix::identity(size);
            let mut t = CycMatrix::identity(size);
            for k in (0..n.saturating_sub(1)).rev() {
                chain = chain.mul(&self.braid_on_word(n, k));
                t = t.add(&chain);
            }
            out.push(prev.mul(&t));
        }
        out
    }

    /// `c_{T^b, V}` on `b+1` letters: moves the last letter to the front.
    fn move_last_to_front(&self, b: usize) -> CycMatrix {
        let mut m = CycMatrix::identity(self.word_count(b + 1));
        for k in 0..b {
            m = m.mul(&self.braid_on_word(b + 1, k));
        }
        m
    }

    /// `c_{V, T^(n-1)}` on `n` letters: moves the first letter to the end.
    pub fn move_first_to_end(&self, n: usize) -> CycMatrix {
        let mut m = CycMatrix::identity(self.word_count(n));
        for k in 0..n.saturating_sub(1) {
            m = self.braid_on_word(n, k).mul(&m);
        }
        m
    }

    /// Components `Delta_{a, n-a}` (a = 0..=n) of the coproduct of the tensor
    /// algebra with primitive generators, for all `n <= max`. Both sides are
    /// indexed by words of length n (a word of length a followed by one of
    /// length n - a).
    pub fn tensor_coproducts(&self, max: usize) -> Vec<Vec<CycMatrix>> {
        let mut out: Vec<Vec<CycMatrix>> = vec![vec![CycMatrix::identity(1)]];
        let id_v = CycMatrix::identity(self.dim);
        for n in 1..=max {
            let size = self.word_count(n);
            let mut row = Vec::with_capacity(n + 1);
            for a in 0..=n {
                let b = n - a;
                let mut m = CycMatrix::zeros(size, size);
                if a >= 1 {
                    let lift = CycMatrix::identity(self.word_count(a - 1)).kron(&self.move_last_to_front(b));
                    m = m.add(&lift.mul(&out[n - 1][a - 1].kron(&id_v)));
                }
                if b >= 1 {
                    m = m.add(&out[n - 1][a].kron(&id_v));
                }
                row.push(m);
            }
            out.push(row);
        }
        out
    }

    /// Antipode of the tensor algebra in degrees `0..=max`, from
    /// `S(v y) = S(v_-1 . y) S(v_0)`.
    pub fn tensor_antipodes(&self, max: usize) -> Vec<CycMatrix> {
        let mut out = vec![CycMatrix::identity(1)];
        let id_v = CycMatrix::identity(self.dim);
        for n in 1..=max {
            let s = out[n - 1].kron(&id_v).mul(&self.move_first_to_end(n)).neg();
            out.push(s);
        }
        out
    }
}

fn add_w(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Quotient data of one degree: the basis words (first independent columns
/// of the symmetrizer) and the projection onto their span.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientDegree {
    pub words: Vec<usize>,
    /// `rank x d^n`; column `w` holds the coordinates of the class of word `w`.
    pub proj: CycMatrix,
}

/// Computes the degree-`n` quotient `V^(x)n / ker S_n` blockwise.
pub fn symmetrizer_quotient(space: &BraidedSpace, n: usize, sym: &CycMatrix) -> QuotientDegree {
    use rayon::prelude::*;
    let blocks: Vec<Vec<usize>> = space.blocks(n).into_values().collect();
    let results: Vec<(Vec<usize>, Vec<(usize, crate::matrix::SVec)>)> = blocks
        .par_iter()
        .map(|words| {
            let sub = sym.select_rows(words).select_cols(words);
            let (r, pivots) = sub.rref();
            let piv_words: Vec<usize> = pivots.iter().map(|&p| words[p]).collect();
            // row k of r: coordinates of each word's class along basis word piv_words[k]
            let rows: Vec<(usize, crate::matrix::SVec)> =
                r.row_data().iter().zip(&piv_words).map(|(row, &pw)| (pw, row.iter().map(|(c, v)| (words[*c], v.clone())).collect())).collect();
            (piv_words, rows)
        })
        .collect();
    let mut all: Vec<(usize, crate::matrix::SVec)> = results.into_iter().flat_map(|(_, rows)| rows).collect();
    all.sort_by_key(|e| e.0);
    let words: Vec<usize> = all.iter().map(|e| e.0).collect();
    let data = all
        .into_iter()
        .map(|(_, mut r)| {
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    QuotientDegree { words, proj: CycMatrix::from_rows(space.word_count(n), data) }
}

/// Hilbert function of the Nichols algebra of a braided space by weight,
/// for words of length at most `max_len` and total weight at most `max_weight`.
pub fn nichols_weight_dims(space: &BraidedSpace, max_len: usize, max_weight: u32) -> BTreeMap<Vec<u32>, usize> {
    let syms = space.symmetrizers(max_len);
    let mut out = BTreeMap::new();
    for (n, s) in syms.iter().enumerate() {
        for (key, words) in space.blocks(n) {
            if key.0.iter().sum::<u32>() > max_weight {
                continue;
            }
            let r = s.select_rows(&words).select_cols(&words).rank();
            *out.entry(key.0).or_insert(0) += r;
        }
    }
    out
}

/// Rank of the symmetrizer by brute force over all permutations, each lifted
/// to the braid group along a reduced word.
pub fn symmetrizer_by_permutations(space: &BraidedSpace, n: usize) -> CycMatrix {
    let size = space.word_count(n);
    let gens: Vec<CycMatrix> = (0..n.saturating_sub(1)).map(|i| space.braid_on_word(n, i)).collect();
    let mut total = CycMatrix::zeros(size, size);
    for perm in all_permutations(n) {
        let mut m = CycMatrix::identity(size);
        for i in reduced_word(&perm) {
            m = m.mul(&gens[i]);
        }
        total = total.add(&m);
    }
    total
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// A reduced word (adjacent transposition indices) for a permutation, by
/// bubble sort; its length equals the number of inversions.
fn reduced_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        match (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            Some(i) => {
                p.swap(i, i + 1);
                word.push(i);
            }
            None => break,
        }
    }
    word.reverse();
    word
}

/// Subspace of `V^(x)n` killed by the symmetrizer.
pub fn symmetrizer_kernel(sym: &CycMatrix) -> Subspace {
    Subspace::from_matrix_rows(&sym.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::yd::diagonal_modules;

    fn space(q: &[Vec<(u32, i64)>]) -> BraidedSpace {
        let ms = diagonal_modules(&diagonal_type(q).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        BraidedSpace::from_yd(&m, Some(&tags)).unwrap()
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        for p in all_permutations(4) {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(reduced_word(&p).len(), inv);
        }
    }

    #[test]
    fn recursion_matches_permutation_sum() {
        let s = space(&[vec![(3, 1), (4, 1)], vec![(4, 3), (2, 1)]]);
        let syms = s.symmetrizers(4);
        for n in 0..=4 {
            assert_eq!(syms[n], symmetrizer_by_permutations(&s, n), "n = {n}");
        }
    }

    #[test]
    fn symmetrizer_factors_through_coproduct() {
        let s = space(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]);
        let syms = s.symmetrizers(4);
        let cop = s.tensor_coproducts(4);
        for n in 0..=4 {
            for a in 0..=n {
                let lhs = syms[a].kron(&syms[n - a]).mul(&cop[n][a]);
                assert_eq!(lhs, syms[n], "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn tensor_antipode_convolution() {
        let s = space(&[vec![(3, 1), (4, 1)], vec![(4, 3), (2, 1)]]);
        let cop = s.tensor_coproducts(3);
        let ant = s.tensor_antipodes(3);
        for n in 1..=3 {
            let mut sum = CycMatrix::zeros(s.word_count(n), s.word_count(n));
            for a in 0..=n {
                let m = ant[a].kron(&CycMatrix::identity(s.word_count(n - a))).mul(&cop[n][a]);
                sum = sum.add(&m);
            }
            assert!(sum.is_zero(), "n = {n}");
        }
    }
}
