//! Yetter-Drinfeld modules over the group algebra of a finite group.
//!
//! A module is a graded vector space `V = sum_g V_g` with a compatible
//! action: `h . V_g = V_{h g h^-1}`. Basis vectors are homogeneous; the
//! coaction of the basis vector `v_k` is `degrees[k] (x) v_k`.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{DiagonalData, FiniteGroup, GroupElement};
use crate::matrix::{svec_from_dense, CycMatrix, SVec, Subspace};
use crate::scalar::CycScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YDModule {
    group: Arc<FiniteGroup>,
    degrees: Vec<GroupElement>,
    /// `action[g]` is the matrix of `g` on the basis.
    action: Vec<CycMatrix>,
}

impl YDModule {
    /// Module from the action of every group element.
    pub fn new(group: Arc<FiniteGroup>, degrees: Vec<GroupElement>, action: Vec<CycMatrix>) -> Result<Self> {
        let dim = degrees.len();
        if action.len() != group.order() {
            return Err(Error::DimensionMismatch(format!("{} action matrices for a group of order {}", action.len(), group.order())));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("action matrix has wrong size".into()));
        }
        if degrees.iter().any(|&g| g >= group.order()) {
            return Err(Error::Input("degree outside the group".into()));
        }
        Ok(YDModule { group, degrees, action })
    }

    /// Module from the action of a generating set; the rest of the group acts
    /// through products of generators found by breadth-first search. The
    /// result still has to pass [`yd_validate`].
    pub fn from_generators(group: Arc<FiniteGroup>, degrees: Vec<GroupElement>, gens: &[(GroupElement, CycMatrix)]) -> Result<Self> {
        let dim = degrees.len();
        let mut action: Vec<Option<CycMatrix>> = vec![None; group.order()];
        action[group.identity()] = Some(CycMatrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (g, m) in gens {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch("generator matrix has wrong size".into()));
                }
                let y = group.mul(*g, x);
                if action[y].is_none() {
                    action[y] = Some(m.mul(action[x].as_ref().unwrap()));
                    queue.push_back(y);
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::Input(format!("generators do not reach group element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, degrees, action)
    }

    /// One-dimensional module of the given degree with character `chi`
    /// (`chi[g]` is the scalar by which `g` acts).
    pub fn one_dim(group: Arc<FiniteGroup>, degree: GroupElement, chi: &[CycScalar]) -> Result<Self> {
        let action = chi.iter().map(|c| CycMatrix::scalar(1, c)).collect();
        Self::new(group, vec![degree], action)
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let action = vec![CycMatrix::zeros(0, 0); group.order()];
        YDModule { group, degrees: Vec::new(), action }
    }

    /// Trivial one-dimensional module (degree 1, trivial action).
    pub fn unit(group: Arc<FiniteGroup>) -> Self {
        let action = vec![CycMatrix::identity(1); group.order()];
        let e = group.identity();
        YDModule { group, degrees: vec![e], action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn degree(&self, k: usize) -> GroupElement {
        self.degrees[k]
    }

    pub fn action(&self, g: GroupElement) -> &CycMatrix {
        &self.action[g]
    }

    /// Restriction to the span of homogeneous vectors; the vectors must be
    /// linearly independent and span a submodule.
    pub fn submodule(&self, vectors: &[SVec]) -> Result<(YDModule, Subspace)> {
        let n = self.dim();
        let mut degrees = Vec::with_capacity(vectors.len());
        for v in vectors {
            let ds: Vec<GroupElement> = v.iter().map(|(k, _)| self.degrees[*k]).collect();
            if ds.is_empty() || ds.iter().any(|&d| d != ds[0]) {
                return Err(Error::Input("submodule basis vector is not homogeneous".into()));
            }
            degrees.push(ds[0]);
        }
        let basis = CycMatrix::from_columns(n, vectors);
        let space = Subspace::span(n, vectors);
        if space.dim() != vectors.len() {
            return Err(Error::Input("submodule basis is linearly dependent".into()));
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let img = self.action[g].mul(&basis);
            action.push(basis.solve_matrix(&img).map_err(|_| Error::Input("span is not stable under the action".into()))?);
        }
        Ok((YDModule { group: self.group.clone(), degrees, action }, space))
    }

    /// Block direct sum; returns the tag (summand index) of each basis vector.
    pub fn direct_sum(parts: &[YDModule]) -> Result<(YDModule, Vec<usize>)> {
        let group = parts.first().ok_or(Error::EmptyModule)?.group.clone();
        if parts.iter().any(|p| *p.group != *group) {
            return Err(Error::Input("summands over different groups".into()));
        }
        let dim: usize = parts.iter().map(|p| p.dim()).sum();
        let mut degrees = Vec::with_capacity(dim);
        let mut tags = Vec::with_capacity(dim);
        for (t, p) in parts.iter().enumerate() {
            degrees.extend_from_slice(&p.degrees);
            tags.extend(std::iter::repeat_n(t, p.dim()));
        }
        let action = group
            .elements()
            .map(|g| {
                let mut off = 0;
                let mut entries = Vec::new();
                for p in parts {
                    for (i, r) in p.action[g].row_data().iter().enumerate() {
                        entries.extend(r.iter().map(|(j, v)| (off + i, off + j, v.clone())));
                    }
                    off += p.dim();
                }
                CycMatrix::from_entries(dim, dim, entries)
            })
            .collect();
        Ok((YDModule { group, degrees, action }, tags))
    }
}

/// Checks that the action is a representation and respects the grading.
/// The error names the first failing group element and basis index.
pub fn yd_validate(m: &YDModule) -> Result<()> {
    let g = &m.group;
    let e = g.identity();
    if !m.action[e].is_identity() {
        let idx = (0..m.dim()).find(|&k| m.action[e].row(k) != &vec![(k, CycScalar::one())]).unwrap_or(0);
        return Err(Error::InvalidAction { element: e, index: idx, reason: "identity does not act trivially".into() });
    }
    for a in g.elements() {
        for b in g.elements() {
            let lhs = m.action[g.mul(a, b)].clone();
            let rhs = m.action[a].mul(&m.action[b]);
            if lhs != rhs {
                let idx = (0..m.dim()).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
                return Err(Error::InvalidAction { element: a, index: idx, reason: format!("action is not multiplicative with {b}") });
            }
        }
    }
    for h in g.elements() {
        for (i, r) in m.action[h].row_data().iter().enumerate() {
            for (k, _) in r {
                if m.degrees[i] != g.conjugate(h, m.degrees[*k]) {
                    return Err(Error::InvalidAction { element: h, index: *k, reason: "action does not map V_x into V_{hxh^-1}".into() });
                }
            }
        }
    }
    Ok(())
}

/// `V (x) W`, basis index `i * dim W + j`.
pub fn yd_tensor(v: &YDModule, w: &YDModule) -> YDModule {
    let g = &v.group;
    let degrees = v.degrees.iter().flat_map(|&a| w.degrees.iter().map(move |&b| g.mul(a, b))).collect();
    let action = g.elements().map(|h| v.action[h].kron(&w.action[h])).collect();
    YDModule { group: g.clone(), degrees, action }
}

/// `c_{V,W}: V (x) W -> W (x) V`, `v (x) w -> v_-1 . w (x) v_0`.
pub fn yd_braiding(v: &YDModule, w: &YDModule) -> CycMatrix {
    let (dv, dw) = (v.dim(), w.dim());
    let mut entries = Vec::new();
    for i in 0..dv {
        let act = &w.action[v.degrees[i]];
        for (k, row) in act.row_data().iter().enumerate() {
            for (j, val) in row {
                entries.push((k * dv + i, i * dw + j, val.clone()));
            }
        }
    }
    CycMatrix::from_entries(dw * dv, dv * dw, entries)
}

/// `c_{V,W}^-1: W (x) V -> V (x) W`, `w (x) v -> v_0 (x) S^-1(v_-1) . w`.
pub fn yd_braiding_inverse(v: &YDModule, w: &YDModule) -> CycMatrix {
    let (dv, dw) = (v.dim(), w.dim());
    let g = &v.group;
    let mut entries = Vec::new();
    for i in 0..dv {
        let act = &w.action[g.inv(v.degrees[i])];
        for (k, row) in act.row_data().iter().enumerate() {
            for (j, val) in row {
                entries.push((i * dw + k, j * dv + i, val.clone()));
            }
        }
    }
    CycMatrix::from_entries(dv * dw, dw * dv, entries)
}

/// Dual module on the dual basis: `<h . xi, x> = <xi, S(h) . x>`; the dual
/// basis vector of a degree-g vector has degree g^-1.
pub fn yd_dual(v: &YDModule) -> YDModule {
    let g = &v.group;
    let degrees = v.degrees.iter().map(|&d| g.inv(d)).collect();
    let action = g.elements().map(|h| v.action[g.inv(h)].transpose()).collect();
    YDModule { group: g.clone(), degrees, action }
}

/// Evaluation pairing of `V^*` with `V` in the dual bases.
pub fn yd_evaluation(v: &YDModule) -> CycMatrix {
    CycMatrix::identity(v.dim())
}

/// `theta(v) = S(v_-1) . v_0`
pub fn yd_theta(v: &YDModule) -> CycMatrix {
    let g = &v.group;
    let cols: Vec<SVec> = (0..v.dim()).map(|k| v.action[g.inv(v.degrees[k])].column(k)).collect();
    CycMatrix::from_columns(v.dim(), &cols)
}

/// `theta^-1(v) = S^-2(v_-1) . v_0`
pub fn yd_theta_inverse(v: &YDModule) -> CycMatrix {
    let cols: Vec<SVec> = (0..v.dim()).map(|k| v.action[v.degrees[k]].column(k)).collect();
    CycMatrix::from_columns(v.dim(), &cols)
}

/// Basis of `Hom(A, B)` in the category, each element a `dim B x dim A` matrix.
pub fn yd_intertwiners(a: &YDModule, b: &YDModule) -> Vec<CycMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let vars: Vec<(usize, usize)> = (0..db).flat_map(|k| (0..da).map(move |l| (k, l))).filter(|&(k, l)| b.degrees[k] == a.degrees[l]).collect();
    if vars.is_empty() {
        return Vec::new();
    }
    let mut var_index = vec![usize::MAX; db * da];
    for (n, &(k, l)) in vars.iter().enumerate() {
        var_index[k * da + l] = n;
    }
    let mut eqs: Vec<SVec> = Vec::new();
    for g in a.group.generators() {
        let ra = &a.action[g];
        let rb = &b.action[g];
        let ra_t = ra.transpose();
        // (T ra - rb T)[k,l] = sum_m T[k,m] ra[m,l] - sum_m rb[k,m] T[m,l]
        for k in 0..db {
            for l in 0..da {
                let mut entries = Vec::new();
                for (m, v) in ra_t.row(l) {
                    let x = var_index[k * da + m];
                    if x != usize::MAX {
                        entries.push((x, v.clone()));
                    }
                }
                for (m, v) in rb.row(k) {
                    let x = var_index[m * da + l];
                    if x != usize::MAX {
                        entries.push((x, -v.clone()));
                    }
                }
                let row = crate::matrix::svec_collect(entries);
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    let system = CycMatrix::from_rows(vars.len(), eqs);
    system
        .kernel()
        .row_data()
        .iter()
        .map(|sol| CycMatrix::from_entries(db, da, sol.iter().map(|(x, v)| (vars[*x].0, vars[*x].1, v.clone()))))
        .collect()
}

/// Irreducibility. A homogeneous basis vector spinning to a proper submodule
/// proves reducibility; otherwise the module is declared irreducible exactly
/// when its endomorphism space is one-dimensional.
pub fn yd_is_irreducible(m: &YDModule) -> Result<bool> {
    if m.dim() == 0 {
        return Err(Error::EmptyModule);
    }
    for k in 0..m.dim() {
        let orbit: Vec<SVec> = m.group.elements().map(|g| m.action[g].column(k)).collect();
        if Subspace::span(m.dim(), &orbit).dim() < m.dim() {
            return Ok(false);
        }
    }
    Ok(yd_intertwiners(m, m).len() == 1)
}

/// An invertible intertwiner `A -> B`, if one exists.
pub fn yd_find_isomorphism(a: &YDModule, b: &YDModule) -> Option<CycMatrix> {
    if a.dim() != b.dim() || *a.group != *b.group {
        return None;
    }
    let mut da = a.degrees.clone();
    let mut db = b.degrees.clone();
    da.sort();
    db.sort();
    if da != db {
        return None;
    }
    if a.dim() == 0 {
        return Some(CycMatrix::zeros(0, 0));
    }
    let basis = yd_intertwiners(a, b);
    if basis.is_empty() {
        return None;
    }
    let candidates = isomorphism_candidates(basis.len());
    for coeffs in candidates {
        let mut t = CycMatrix::zeros(b.dim(), a.dim());
        for (c, m) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                t = t.add(&m.scale(&CycScalar::from_int(*c)));
            }
        }
        if t.is_invertible() {
            return Some(t);
        }
    }
    None
}

/// Deterministic coefficient vectors: unit vectors first, then a fixed
/// pseudo-random sequence of small integers.
pub(crate) fn isomorphism_candidates(n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..48 {
        let v = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 23) as i64 - 11
            })
            .collect();
        out.push(v);
    }
    out
}

/// The one-dimensional modules `M_j` of a diagonal braiding.
pub fn diagonal_modules(d: &DiagonalData) -> Result<Vec<YDModule>> {
    let group = Arc::new(d.group.clone());
    d.generators.iter().zip(&d.chars).map(|(&g, chi)| YDModule::one_dim(group.clone(), g, chi)).collect()
}

/// Spans `{g . v}` for one vector, as a subspace.
pub fn orbit_span(m: &YDModule, v: &[CycScalar]) -> Subspace {
    let sv = svec_from_dense(v);
    let orbit: Vec<SVec> = m.group.elements().map(|g| m.action[g].mul_svec(&sv)).collect();
    Subspace::span(m.dim(), &orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;

    fn e1() -> Vec<YDModule> {
        let d = diagonal_type(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]).unwrap();
        diagonal_modules(&d).unwrap()
    }

    fn s3_transpositions() -> YDModule {
        // transpositions class of S3 with sign-twisted permutation action
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let transpositions: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
        let action = g
            .elements()
            .map(|h| {
                let sign = if g.element_order(h) == 2 { -1 } else { 1 };
                let entries = transpositions.iter().enumerate().map(|(k, &t)| {
                    let img = g.conjugate(h, t);
                    (transpositions.iter().position(|&x| x == img).unwrap(), k, CycScalar::from_int(sign))
                });
                CycMatrix::from_entries(3, 3, entries)
            })
            .collect();
        YDModule::new(g, transpositions, action).unwrap()
    }

    #[test]
    fn diagonal_braiding_scalars() {
        let ms = e1();
        let (m, _) = YDModule::direct_sum(&ms).unwrap();
        yd_validate(&m).unwrap();
        let c = yd_braiding(&m, &m);
        // c(x_i (x) x_j) = q_ij x_j (x) x_i
        let q = [[-1, 1], [-1, -1]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.get(j * 2 + i, i * 2 + j), CycScalar::from_int(q[i][j]));
            }
        }
        let th = yd_theta(&m);
        assert_eq!(th.get(0, 0), CycScalar::from_int(-1));
    }

    #[test]
    fn braiding_inverse_and_theta_inverse() {
        let m = s3_transpositions();
        yd_validate(&m).unwrap();
        let c = yd_braiding(&m, &m);
        let ci = yd_braiding_inverse(&m, &m);
        assert!(c.mul(&ci).is_identity());
        assert!(ci.mul(&c).is_identity());
        assert!(yd_theta(&m).mul(&yd_theta_inverse(&m)).is_identity());
    }

    #[test]
    fn validate_reports_grading_failure() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        // trivial action on a vector of non-central degree violates h V_x = V_{hxh^-1}
        let bad = YDModule::new(g.clone(), vec![1], vec![CycMatrix::identity(1); 6]).unwrap();
        assert!(matches!(yd_validate(&bad), Err(Error::InvalidAction { .. })));
    }

    #[test]
    fn irreducibility_and_isomorphism() {
        let m = s3_transpositions();
        assert!(yd_is_irreducible(&m).unwrap());
        let ms = e1();
        let (sum, _) = YDModule::direct_sum(&ms).unwrap();
        assert!(!yd_is_irreducible(&sum).unwrap());
        assert!(yd_is_irreducible(&ms[0]).unwrap());
        assert_eq!(yd_is_irreducible(&YDModule::zero(ms[0].group().clone())), Err(Error::EmptyModule));
        let dd = yd_dual(&yd_dual(&m));
        let iso = yd_find_isomorphism(&dd, &m).unwrap();
        assert!(iso.is_invertible());
        assert!(yd_find_isomorphism(&ms[0], &ms[1]).is_none());
    }

    #[test]
    fn twisted_sum_is_reducible() {
        // two copies of M_1 with a basis mixing them
        let ms = e1();
        let (sum, _) = YDModule::direct_sum(&[ms[0].clone(), ms[0].clone()]).unwrap();
        assert!(!yd_is_irreducible(&sum).unwrap());
    }
}
