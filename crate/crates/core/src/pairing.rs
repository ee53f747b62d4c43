//! Graded Hopf pairings between truncated Nichols algebras.
//!
//! `gram[n][a][k] = <xi_a, x_k>` for `xi_a` a basis element of `L(n)` and
//! `x_k` one of `R(n)`. Degree 1 is given; higher degrees follow from
//! `<xi, x y> = <xi^(1), y> <xi^(2), x>`.

use std::sync::Arc;

use crate::bosonization::Check;
use crate::error::{Error, Result};
use crate::matrix::{CycMatrix, Subspace};
use crate::nichols::{Mode, NicholsTruncation};

#[derive(Clone, Debug)]
pub struct DualPairing {
    left: Arc<NicholsTruncation>,
    right: Arc<NicholsTruncation>,
    gram: Vec<CycMatrix>,
}

/// Gram matrices from the degree-one pairing `g1` (rows: left basis).
pub fn pairing_from_degree_one(left: Arc<NicholsTruncation>, right: Arc<NicholsTruncation>, g1: CycMatrix) -> Result<DualPairing> {
    let cutoff = left.cutoff().min(right.cutoff());
    if g1.rows() != left.dim(1) || g1.cols() != right.dim(1) {
        return Err(Error::DimensionMismatch("degree-one pairing has wrong shape".into()));
    }
    let mut gram = vec![CycMatrix::identity(1), g1.clone()];
    for n in 2..=cutoff {
        let (rl, rr) = (left.dim(n), right.dim(n));
        let cop = left.comult(n, n - 1);
        let mut entries = Vec::new();
        for k in 0..rr {
            let letters = right.letters(n, k);
            let y = right.project_word(n - 1, &letters[1..]);
            let gy = gram[n - 1].mul_svec(&y);
            // <xi_c, y> for each c, paired with <xi_e, v_first>
            let first = letters[0];
            let r1 = left.dim(1);
            let mut col = vec![crate::scalar::CycScalar::zero(); rl];
            for (pair_row, row) in cop.row_data().iter().enumerate() {
                let (c, e) = (pair_row / r1, pair_row % r1);
                let gc = gy.iter().find(|(i, _)| *i == c).map(|(_, v)| v.clone());
                let Some(gc) = gc else { continue };
                let ge = g1.get(e, first);
                if ge.is_zero() {
                    continue;
                }
                let f = &gc * &ge;
                for (a, v) in row {
                    col[*a] = &col[*a] + &(&f * v);
                }
            }
            for (a, v) in col.into_iter().enumerate() {
                entries.push((a, k, v));
            }
        }
        gram.push(CycMatrix::from_entries(rl, rr, entries));
    }
    let p = DualPairing { left, right, gram };
    if p.left.mode() == Mode::Nichols && p.right.mode() == Mode::Nichols {
        for (n, g) in p.gram.iter().enumerate() {
            if !g.is_invertible() {
                return Err(Error::PairingDegenerate(n));
            }
        }
    }
    Ok(p)
}

/// Pairing of `B(N^*)` with `B(N)` where the left truncation was built from
/// the dual module in the dual basis.
pub fn canonical_pairing(left: Arc<NicholsTruncation>, right: Arc<NicholsTruncation>) -> Result<DualPairing> {
    let g1 = crate::yd::yd_evaluation(right.module());
    pairing_from_degree_one(left, right, g1)
}

/// `<x, xi>' = <xi, S^2(x)>`, a pairing of `R` (now on the left) with `L`.
pub fn inverse_pairing(p: &DualPairing) -> DualPairing {
    let gram = p
        .gram
        .iter()
        .enumerate()
        .map(|(n, g)| {
            let s = p.right.antipode(n);
            g.mul(&s.mul(s).mul(&p.right.theta(n))).transpose()
        })
        .collect();
    DualPairing { left: p.right.clone(), right: p.left.clone(), gram }
}

impl DualPairing {
    pub fn left(&self) -> &Arc<NicholsTruncation> {
        &self.left
    }

    pub fn right(&self) -> &Arc<NicholsTruncation> {
        &self.right
    }

    pub fn cutoff(&self) -> usize {
        self.gram.len() - 1
    }

    pub fn gram(&self, n: usize) -> &CycMatrix {
        &self.gram[n]
    }

    /// Dual basis of `L(n)` for the basis of `R(n)`: column `b` of the
    /// result is the element pairing to 1 with `x_b` and 0 with the rest.
    pub fn dual_basis(&self, n: usize) -> Result<CycMatrix> {
        // <xi, x_c> = (G^T xi)_c ; want G^T X = I
        self.gram[n].transpose().inverse().map_err(|_| Error::PairingDegenerate(n))
    }

    /// Right radical in degree `n`: elements of `R(n)` pairing to zero with all of `L(n)`.
    pub fn right_radical(&self, n: usize) -> Subspace {
        Subspace::from_matrix_rows(&self.gram[n].kernel())
    }
}

/// Radical of the pairing between the tensor algebras (both in `TensorPre`
/// mode); returns for each degree the codimension of the right radical.
pub fn pairing_radical(p: &DualPairing) -> Vec<usize> {
    (0..=p.cutoff()).map(|n| p.right.dim(n) - p.right_radical(n).dim()).collect()
}

/// The pairing axioms in every degree of the truncation.
pub fn pairing_axiom_suite(p: &DualPairing) -> Vec<Check> {
    let (l, r) = (&p.left, &p.right);
    let g = r.module().group().clone();
    let d = p.cutoff();
    let mut out = Vec::new();

    let ok = (0..=d).all(|n| g.elements().all(|h| l.action(n, h).transpose().mul(&p.gram[n]) == p.gram[n].mul(r.action(n, g.inv(h)))));
    out.push(Check::new("<h.xi, x> = <xi, S(h).x>", ok, ""));

    let ok = (0..=d).all(|n| {
        p.gram[n]
            .row_data()
            .iter()
            .enumerate()
            .all(|(a, row)| row.iter().all(|(k, _)| l.gdegree(n, a) == g.inv(r.gdegree(n, *k))))
    });
    out.push(Check::new("xi_-1 <xi_0, x> = S^-1(x_-1) <xi, x_0>", ok, ""));

    let mut ok = true;
    for a in 0..=d {
        for b in 0..=(d - a) {
            let n = a + b;
            let lhs = p.gram[n].mul(r.mult(a, b).unwrap().unwrap());
            let cop = l.comult(n, b);
            let rhs = cop.transpose().mul(&p.gram[b].kron(&p.gram[a])).mul(&CycMatrix::flip(r.dim(a), r.dim(b)));
            ok &= lhs == rhs;
        }
    }
    out.push(Check::new("<xi, x y> = <xi^(1), y> <xi^(2), x>", ok, ""));

    let mut ok = true;
    for a in 0..=d {
        for b in 0..=(d - a) {
            let n = a + b;
            let lhs = l.mult(a, b).unwrap().unwrap().transpose().mul(&p.gram[n]);
            let rhs = CycMatrix::flip(l.dim(b), l.dim(a)).mul(&p.gram[b].kron(&p.gram[a])).mul(r.comult(n, b));
            ok &= lhs == rhs;
        }
    }
    out.push(Check::new("<xi eta, x> = <xi, x^(2)> <eta, x^(1)>", ok, ""));

    let ok = (0..=d).all(|n| l.antipode(n).transpose().mul(&p.gram[n]) == p.gram[n].mul(r.antipode(n)));
    out.push(Check::new("<S(xi), x> = <xi, S(x)>", ok, ""));

    let ok = (1..=d).all(|n| graded_annihilator_holds(p, n));
    out.push(Check::new("graded annihilators", ok, ""));
    out
}

/// The annihilator of `F_{n-1} R = sum_{i<n} R(i)` inside the truncated left
/// side is `sum_{i>=n} L(i)`.
pub fn graded_annihilator_holds(p: &DualPairing, n: usize) -> bool {
    let d = p.cutoff();
    let lo: Vec<usize> = (0..=d).scan(0, |s, i| {
        let o = *s;
        *s += p.left.dim(i);
        Some(o)
    }).collect();
    let ro: Vec<usize> = (0..=d).scan(0, |s, i| {
        let o = *s;
        *s += p.right.dim(i);
        Some(o)
    }).collect();
    let lt: usize = (0..=d).map(|i| p.left.dim(i)).sum();
    let rt: usize = (0..=d).map(|i| p.right.dim(i)).sum();
    let mut entries = Vec::new();
    for i in 0..=d {
        for (a, row) in p.gram[i].row_data().iter().enumerate() {
            for (k, v) in row {
                entries.push((lo[i] + a, ro[i] + k, v.clone()));
            }
        }
    }
    let full = CycMatrix::from_entries(lt, rt, entries);
    let low_cols: Vec<usize> = (0..ro.get(n).copied().unwrap_or(rt)).collect();
    // xi annihilates F_{n-1} R  <=>  xi^T G[:, low] = 0
    let ann = Subspace::from_matrix_rows(&full.select_cols(&low_cols).transpose().kernel());
    let high: Vec<crate::matrix::SVec> = (lo.get(n).copied().unwrap_or(lt)..lt).map(|i| vec![(i, crate::scalar::CycScalar::one())]).collect();
    ann == Subspace::span(lt, &high)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::nichols::nichols_truncate;
    use crate::yd::{diagonal_modules, yd_dual, YDModule};

    fn pair(q: &[Vec<(u32, i64)>], d: usize, mode: Mode) -> DualPairing {
        let ms = diagonal_modules(&diagonal_type(q).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        let r = nichols_truncate(&m, Some(&tags), d, mode).unwrap();
        let l = nichols_truncate(&yd_dual(&m), Some(&tags), d, mode).unwrap();
        canonical_pairing(Arc::new(l), Arc::new(r)).unwrap()
    }

    #[test]
    fn axioms_and_inverse() {
        let p = pair(&[vec![(3, 1), (4, 1)], vec![(4, 3), (2, 1)]], 3, Mode::Nichols);
        for c in pairing_axiom_suite(&p) {
            assert!(c.passed, "{c:?}");
        }
        let q = inverse_pairing(&p);
        for c in pairing_axiom_suite(&q) {
            assert!(c.passed, "inverse: {c:?}");
        }
    }

    #[test]
    fn e1_radical_codimensions() {
        let p = pair(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]], 4, Mode::TensorPre);
        assert_eq!(&pairing_radical(&p)[2..], &[2, 2, 1]);
    }
}
