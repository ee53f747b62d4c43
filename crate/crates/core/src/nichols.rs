//! Truncated Nichols algebras of Yetter-Drinfeld modules.
//!
//! Degree `n` of `B(M)` is the quotient `M^(x)n / ker S_n` of the tensor
//! power by the kernel of the braided symmetrizer. Its basis consists of the
//! classes of the words whose symmetrizer columns are the lexicographically
//! first independent ones; `proj` maps any word to coordinates in that basis.
//! In `TensorPre` mode nothing is divided out and the structure is that of the
//! tensor algebra with primitive generators.

use serde::{Deserialize, Serialize};

use crate::braided::{symmetrizer_quotient, BraidedSpace};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::matrix::{svec_axpy, CycMatrix, SVec, Subspace};
use crate::scalar::CycScalar;
use crate::yd::YDModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Nichols,
    TensorPre,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Degree {
    pub words: Vec<usize>,
    pub proj: CycMatrix,
    pub multideg: Vec<Vec<u32>>,
    pub gdeg: Vec<GroupElement>,
    pub action: Vec<CycMatrix>,
    pub antipode: CycMatrix,
    pub antipode_inv: CycMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NicholsTruncation {
    module: YDModule,
    tags: Vec<usize>,
    space: BraidedSpace,
    cutoff: usize,
    mode: Mode,
    degrees: Vec<Degree>,
    /// `mult[a][b]`: `B(a) (x) B(b) -> B(a+b)`, defined for `a + b <= cutoff`.
    mult: Vec<Vec<CycMatrix>>,
    /// `comult[n][a]`: `B(n) -> B(a) (x) B(n-a)`.
    comult: Vec<Vec<CycMatrix>>,
}

/// Builds `B(M)` (or the tensor algebra) in degrees `0..=cutoff`. With
/// `tags`, `M` is read as a direct sum and basis elements carry multidegrees.
pub fn nichols_truncate(module: &YDModule, tags: Option<&[usize]>, cutoff: usize, mode: Mode) -> Result<NicholsTruncation> {
    if cutoff < 1 {
        return Err(Error::InvalidCutoff(cutoff));
    }
    if module.dim() == 0 {
        return Err(Error::EmptyModule);
    }
    let tags: Vec<usize> = tags.map_or_else(|| vec![0; module.dim()], |t| t.to_vec());
    if tags.len() != module.dim() {
        return Err(Error::DimensionMismatch("one tag per basis vector required".into()));
    }
    let space = BraidedSpace::from_yd(module, Some(&tags))?;
    let group = module.group().clone();
    let syms = match mode {
        Mode::Nichols => space.symmetrizers(cutoff),
        Mode::TensorPre => Vec::new(),
    };
    let cops = space.tensor_coproducts(cutoff);
    let ants = space.tensor_antipodes(cutoff);

    let mut degrees = Vec::with_capacity(cutoff + 1);
    let mut tensor_action: Vec<CycMatrix> = group.elements().map(|_| CycMatrix::identity(1)).collect();
    for n in 0..=cutoff {
        if n > 0 {
            tensor_action = group.elements().map(|g| tensor_action[g].kron(module.action(g))).collect();
        }
        let (words, proj) = match mode {
            Mode::Nichols => {
                let q = symmetrizer_quotient(&space, n, &syms[n]);
                (q.words, q.proj)
            }
            Mode::TensorPre => ((0..space.word_count(n)).collect(), CycMatrix::identity(space.word_count(n))),
        };
        let section = |m: &CycMatrix| proj.mul(&m.select_cols(&words));
        let antipode = section(&ants[n]);
        let antipode_inv = antipode.inverse()?;
        let action = group.elements().map(|g| section(&tensor_action[g])).collect();
        let multideg = words.iter().map(|&w| space.word_weight(n, w)).collect();
        let gdeg = words.iter().map(|&w| space.word_degree(n, w).unwrap()).collect();
        degrees.push(Degree { words, proj, multideg, gdeg, action, antipode, antipode_inv });
    }

    let mut mult = Vec::with_capacity(cutoff + 1);
    for a in 0..=cutoff {
        let mut row = Vec::new();
        for b in 0..=(cutoff - a) {
            let (da, db) = (&degrees[a], &degrees[b]);
            let target = &degrees[a + b];
            let stride = space.word_count(b);
            let cols: Vec<SVec> = da.words.iter().flat_map(|&u| db.words.iter().map(move |&v| u * stride + v)).map(|w| target.proj.column(w)).collect();
            row.push(CycMatrix::from_columns(target.words.len(), &cols));
        }
        mult.push(row);
    }

    let mut comult = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        let mut row = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let pp = degrees[a].proj.kron(&degrees[n - a].proj);
            row.push(pp.mul(&cops[n][a].select_cols(&degrees[n].words)));
        }
        comult.push(row);
    }

    Ok(NicholsTruncation { module: module.clone(), tags, space, cutoff, mode, degrees, mult, comult })
}

impl NicholsTruncation {
    pub fn module(&self) -> &YDModule {
        &self.module
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.words.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.words.len()).collect()
    }

    pub fn degree(&self, n: usize) -> &Degree {
        &self.degrees[n]
    }

    /// First degree known to vanish; all higher degrees vanish as well since
    /// the algebra is generated in degree one.
    pub fn vanishes_from(&self) -> Option<usize> {
        (0..=self.cutoff).find(|&n| self.dim(n) == 0)
    }

    /// Whether degree `n` is available (inside the cutoff, or known zero).
    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n <= self.cutoff || self.vanishes_from().is_some_and(|v| v <= n) {
            Ok(())
        } else {
            Err(Error::CutoffExceeded { needed: n, cutoff: self.cutoff })
        }
    }

    pub fn letters(&self, n: usize, k: usize) -> Vec<usize> {
        self.space.letters(n, self.degrees[n].words[k])
    }

    pub fn multidegree(&self, n: usize, k: usize) -> &[u32] {
        &self.degrees[n].multideg[k]
    }

    pub fn gdegree(&self, n: usize, k: usize) -> GroupElement {
        self.degrees[n].gdeg[k]
    }

    /// Coordinates of the class of a word of length `n`.
    pub fn project_word(&self, n: usize, letters: &[usize]) -> SVec {
        self.degrees[n].proj.column(self.space.word_index(letters))
    }

    pub fn mult(&self, a: usize, b: usize) -> Result<Option<&CycMatrix>> {
        self.check_degree(a + b)?;
        Ok(self.mult.get(a).and_then(|r| r.get(b)))
    }

    /// Product of homogeneous elements.
    pub fn mul(&self, a: usize, x: &SVec, b: usize, y: &SVec) -> Result<SVec> {
        match self.mult(a, b)? {
            None => Ok(Vec::new()),
            Some(m) => {
                let rb = self.dim(b);
                let mut t = Vec::new();
                for (i, u) in x {
                    for (j, v) in y {
                        t.push((i * rb + j, u * v));
                    }
                }
                Ok(m.mul_svec(&crate::matrix::svec_collect(t)))
            }
        }
    }

    pub fn comult(&self, n: usize, a: usize) -> &CycMatrix {
        &self.comult[n][a]
    }

    pub fn antipode(&self, n: usize) -> &CycMatrix {
        &self.degrees[n].antipode
    }

    pub fn antipode_inv(&self, n: usize) -> &CycMatrix {
        &self.degrees[n].antipode_inv
    }

    pub fn action(&self, n: usize, g: GroupElement) -> &CycMatrix {
        &self.degrees[n].action[g]
    }

    /// Degree `n` as a Yetter-Drinfeld module.
    pub fn degree_module(&self, n: usize) -> YDModule {
        let d = &self.degrees[n];
        YDModule::new(self.module.group().clone(), d.gdeg.clone(), d.action.clone()).expect("degree component is a module")
    }

    /// `theta(x) = S(x_-1) . x_0` on degree `n`.
    pub fn theta(&self, n: usize) -> CycMatrix {
        crate::yd::yd_theta(&self.degree_module(n))
    }

    pub fn theta_inverse(&self, n: usize) -> CycMatrix {
        crate::yd::yd_theta_inverse(&self.degree_module(n))
    }

    /// Primitive elements of degree `n`: kernel of every `Delta_{a,n-a}`, 0 < a < n.
    pub fn primitives(&self, n: usize) -> Subspace {
        if n == 0 {
            return Subspace::zero(1);
        }
        let mut stacked = CycMatrix::zeros(0, self.dim(n));
        for a in 1..n {
            stacked = stacked.vstack(&self.comult[n][a]);
        }
        Subspace::from_matrix_rows(&stacked.kernel())
    }

    /// `(ad a)(x) = a x - (a_-1 . x) a_0` for `a` of degree one and `x` of degree `n`.
    pub fn ad_action(&self, a: &SVec, n: usize, x: &SVec) -> Result<SVec> {
        if n + 1 > self.cutoff {
            return Err(Error::CutoffExceeded { needed: n + 1, cutoff: self.cutoff });
        }
        let mut out: SVec = Vec::new();
        for (k, coef) in a {
            let letter = vec![(*k, CycScalar::one())];
            let left = self.mul(1, &letter, n, x)?;
            let gx = self.action(n, self.gdegree(1, *k)).mul_svec(x);
            let right = self.mul(n, &gx, 1, &letter)?;
            out = svec_axpy(&out, coef, &left);
            out = svec_axpy(&out, &(-coef.clone()), &right);
        }
        Ok(out)
    }

    /// Coordinates of a basis element of degree 1 for the letter `k`.
    pub fn letter(&self, k: usize) -> SVec {
        self.project_word(1, &[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::yd::diagonal_modules;

    pub(crate) fn diag(q: &[Vec<(u32, i64)>], d: usize, mode: Mode) -> NicholsTruncation {
        let ms = diagonal_modules(&diagonal_type(q).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        nichols_truncate(&m, Some(&tags), d, mode).unwrap()
    }

    #[test]
    fn desk_dimensions() {
        assert_eq!(diag(&[vec![(2, 1)]], 3, Mode::Nichols).dims(), vec![1, 1, 0, 0]);
        let e0 = [vec![(2, 1), (1, 0)], vec![(1, 0), (2, 1)]];
        assert_eq!(diag(&e0, 3, Mode::Nichols).dims(), vec![1, 2, 1, 0]);
        let e1 = [vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]];
        assert_eq!(diag(&e1, 5, Mode::Nichols).dims(), vec![1, 2, 2, 2, 1, 0]);
    }

    #[test]
    fn tensor_pre_primitives() {
        let t = diag(&[vec![(2, 1)]], 2, Mode::TensorPre);
        assert_eq!(t.primitives(2).dim(), 1);
        assert_eq!(t.primitives(1).dim(), 1);
    }

    #[test]
    fn cutoff_errors() {
        let ms = diagonal_modules(&diagonal_type(&[vec![(2, 1)]]).unwrap()).unwrap();
        assert_eq!(nichols_truncate(&ms[0], None, 0, Mode::Nichols).err(), Some(Error::InvalidCutoff(0)));
        let t = diag(&[vec![(3, 1)]], 2, Mode::Nichols);
        let x = t.letter(0);
        assert!(matches!(t.ad_action(&x, 2, &t.project_word(2, &[0, 0])), Err(Error::CutoffExceeded { .. })));
    }
}
