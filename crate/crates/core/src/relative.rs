//! Yetter-Drinfeld modules over a bosonization `R # kG`, stored through
//! their `R`-action and `R`-coaction on an underlying module over `kG`.
//!
//! For the basis `s_b` of `R(d)`:
//! - `act[d][b]` is the operator `m -> s_b . m`;
//! - `coact[d][b]` is the coefficient operator `C_b` with
//!   `delta(m) = sum_b s_b (x) C_b m`.

use std::sync::Arc;

use crate::bosonization::{basis_vec, split2, Bosonization, Check};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::matrix::{svec_collect, CycMatrix, SVec, Subspace};
use crate::nichols::NicholsTruncation;
use crate::yd::{yd_tensor, yd_validate, YDModule};

#[derive(Clone, Debug)]
pub struct RelativeYDModule {
    r: Arc<NicholsTruncation>,
    base: YDModule,
    act: Vec<Vec<CycMatrix>>,
    coact: Vec<Vec<CycMatrix>>,
}

impl RelativeYDModule {
    pub fn new(r: Arc<NicholsTruncation>, base: YDModule, act: Vec<Vec<CycMatrix>>, coact: Vec<Vec<CycMatrix>>) -> Result<Self> {
        let n = base.dim();
        for table in [&act, &coact] {
            if table.len() != r.cutoff() + 1 {
                return Err(Error::DimensionMismatch("one operator list per degree of R is required".into()));
            }
            for (d, ops) in table.iter().enumerate() {
                if ops.len() != r.dim(d) || ops.iter().any(|m| m.rows() != n || m.cols() != n) {
                    return Err(Error::DimensionMismatch(format!("operators in degree {d} have the wrong shape")));
                }
            }
        }
        Ok(RelativeYDModule { r, base, act, coact })
    }

    /// `R` acting by the counit and coacting trivially.
    pub fn trivial(r: Arc<NicholsTruncation>, base: YDModule) -> Self {
        let n = base.dim();
        let table: Vec<Vec<CycMatrix>> = (0..=r.cutoff())
            .map(|d| (0..r.dim(d)).map(|_| if d == 0 { CycMatrix::identity(n) } else { CycMatrix::zeros(n, n) }).collect())
            .collect();
        RelativeYDModule { r, base, act: table.clone(), coact: table }
    }

    pub fn r(&self) -> &Arc<NicholsTruncation> {
        &self.r
    }

    pub fn base(&self) -> &YDModule {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn act(&self, d: usize, b: usize) -> &CycMatrix {
        &self.act[d][b]
    }

    pub fn coact(&self, d: usize, b: usize) -> &CycMatrix {
        &self.coact[d][b]
    }

    /// Largest degree of `R` acting nontrivially.
    pub fn action_bound(&self) -> usize {
        bound(&self.act)
    }

    /// Largest degree of `R` occurring in the coaction.
    pub fn coaction_bound(&self) -> usize {
        bound(&self.coact)
    }

    /// Projection onto the basis vectors of H-degree `g`.
    pub fn degree_projection(&self, g: GroupElement) -> CycMatrix {
        let n = self.dim();
        CycMatrix::from_entries(n, n, (0..n).filter(|&k| self.base.degree(k) == g).map(|k| (k, k, crate::scalar::CycScalar::one())))
    }

    fn present_degrees(&self) -> Vec<GroupElement> {
        let mut ds = self.base.degrees().to_vec();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Operator of the basis element `r_k # g` of `A`.
    pub fn a_action(&self, a: &Bosonization, i: usize) -> CycMatrix {
        let (d, k, g) = a.decode(i);
        self.act[d][k].mul(self.base.action(g))
    }

    pub fn a_act_vec(&self, a: &Bosonization, x: &SVec, m: &SVec) -> SVec {
        let mut acc = Vec::new();
        for (i, c) in x {
            for (j, v) in self.a_action(a, *i).mul_svec(m) {
                acc.push((j, c * &v));
            }
        }
        svec_collect(acc)
    }

    /// Full coaction `m -> (s_b # (C_b m)_-1) (x) (C_b m)_0` in `A (x) X`,
    /// flat index `i * dim X + x`.
    pub fn a_coact_vec(&self, a: &Bosonization, m: &SVec) -> SVec {
        let n = self.dim();
        let mut acc = Vec::new();
        for (d, ops) in self.coact.iter().enumerate() {
            for (b, op) in ops.iter().enumerate() {
                for (x, v) in op.mul_svec(m) {
                    acc.push((a.index(d, b, self.base.degree(x)) * n + x, v));
                }
            }
        }
        svec_collect(acc)
    }

    /// `theta(m) = S_A(m_-1) . m_0`.
    pub fn theta_a(&self, a: &Bosonization) -> CycMatrix {
        let n = self.dim();
        let cols: Vec<SVec> = (0..n)
            .map(|m| {
                let mut acc = Vec::new();
                for (p, v) in self.a_coact_vec(a, &basis_vec(m)) {
                    let (i, x) = split2(p, n);
                    let s = a.antipode_basis(i);
                    for (j, w) in self.a_act_vec(a, &s, &basis_vec(x)) {
                        acc.push((j, &v * &w));
                    }
                }
                svec_collect(acc)
            })
            .collect();
        CycMatrix::from_columns(n, &cols)
    }
}

fn bound(t: &[Vec<CycMatrix>]) -> usize {
    t.iter().enumerate().filter(|(_, ops)| ops.iter().any(|m| !m.is_zero())).map(|(d, _)| d).max().unwrap_or(0)
}

/// Tensor product in the category over `R # kG`.
pub fn relative_tensor(x: &RelativeYDModule, y: &RelativeYDModule) -> Result<RelativeYDModule> {
    let r = x.r.clone();
    let base = yd_tensor(&x.base, &y.base);
    let dd = r.cutoff();
    let mut act = Vec::with_capacity(dd + 1);
    for d in 0..=dd {
        let mut ops = Vec::with_capacity(r.dim(d));
        for b in 0..r.dim(d) {
            let mut acc = CycMatrix::zeros(base.dim(), base.dim());
            for a in 0..=d {
                let ru = r.dim(d - a);
                for (pair, v) in r.comult(d, a).column(b) {
                    let (t, u) = split2(pair, ru);
                    let left = x.act[a][t].mul(x.base.action(r.gdegree(d - a, u)));
                    acc = acc.add(&left.kron(&y.act[d - a][u]).scale(&v));
                }
            }
            ops.push(acc);
        }
        act.push(ops);
    }
    // delta(m (x) n) = m_(-1) ((m_(0))_-1 . n_(-1)) (x) (m_(0))_0 (x) n_(0)
    let mut coact: Vec<Vec<CycMatrix>> = (0..=dd).map(|d| vec![CycMatrix::zeros(base.dim(), base.dim()); r.dim(d)]).collect();
    let degs = x.present_degrees();
    for d1 in 0..=dd {
        for s in 0..r.dim(d1) {
            if x.coact[d1][s].is_zero() {
                continue;
            }
            for &g in &degs {
                let left = x.degree_projection(g).mul(&x.coact[d1][s]);
                if left.is_zero() {
                    continue;
                }
                for d2 in 0..=dd {
                    for t in 0..r.dim(d2) {
                        if y.coact[d2][t].is_zero() {
                            continue;
                        }
                        let moved = r.action(d2, g).column(t);
                        let prod = r.mul(d1, &basis_vec(s), d2, &moved)?;
                        if prod.is_empty() {
                            continue;
                        }
                        let k = left.kron(&y.coact[d2][t]);
                        for (b, v) in prod {
                            coact[d1 + d2][b] = coact[d1 + d2][b].add(&k.scale(&v));
                        }
                    }
                }
            }
        }
    }
    RelativeYDModule::new(r, base, act, coact)
}

/// `c(m (x) n) = m_[-1] . n (x) m_[0]` as a map `X (x) Y -> Y (x) X`.
pub fn relative_braiding(x: &RelativeYDModule, y: &RelativeYDModule) -> CycMatrix {
    let (p, q) = (x.dim(), y.dim());
    let mut acc = CycMatrix::zeros(p * q, p * q);
    for &g in &x.present_degrees() {
        let eg = x.degree_projection(g);
        let yg = y.base.action(g);
        for (d, ops) in x.coact.iter().enumerate() {
            for (b, op) in ops.iter().enumerate() {
                if op.is_zero() {
                    continue;
                }
                acc = acc.add(&eg.mul(op).kron(&y.act[d][b].mul(yg)));
            }
        }
    }
    CycMatrix::flip(p, q).mul(&acc)
}

/// Whether `f: X -> Y` commutes with every structure map.
pub fn is_morphism(f: &CycMatrix, x: &RelativeYDModule, y: &RelativeYDModule) -> bool {
    if f.rows() != y.dim() || f.cols() != x.dim() {
        return false;
    }
    let g = x.base.group();
    let degrees_ok = f.row_data().iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| y.base.degree(i) == x.base.degree(*j)));
    degrees_ok
        && g.elements().all(|h| f.mul(x.base.action(h)) == y.base.action(h).mul(f))
        && (0..=x.r.cutoff()).all(|d| {
            (0..x.r.dim(d)).all(|b| f.mul(&x.act[d][b]) == y.act[d][b].mul(f) && y.coact[d][b].mul(f) == f.mul(&x.coact[d][b]))
        })
}

/// `F^delta_n`: vectors whose coaction lies in degrees at most `n`.
pub fn f_delta(x: &RelativeYDModule, n: usize) -> Subspace {
    annihilated(&x.coact, n, x.dim())
}

/// `F^mu_n`: vectors killed by every `R(i)` with `i > n`.
pub fn f_mu(x: &RelativeYDModule, n: usize) -> Subspace {
    annihilated(&x.act, n, x.dim())
}

fn annihilated(t: &[Vec<CycMatrix>], n: usize, dim: usize) -> Subspace {
    let mut stacked = CycMatrix::zeros(0, dim);
    for ops in t.iter().skip(n + 1) {
        for m in ops {
            stacked = stacked.vstack(m);
        }
    }
    Subspace::from_matrix_rows(&stacked.kernel())
}

/// Whether the structure maps respect a Z-grading on the basis: `R(d)`
/// shifts degrees by `sign * d` and the coaction by `-sign * d`.
pub fn respects_grading(x: &RelativeYDModule, grading: &[i64], sign: i64) -> bool {
    let shifts = |t: &[Vec<CycMatrix>], s: i64| {
        t.iter().enumerate().all(|(d, ops)| {
            ops.iter().all(|m| {
                m.row_data().iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| grading[i] == grading[*j] + s * d as i64))
            })
        })
    };
    let h_ok = x.base.group().elements().all(|g| {
        x.base.action(g).row_data().iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| grading[i] == grading[*j]))
    });
    h_ok && shifts(&x.act, sign) && shifts(&x.coact, -sign)
}

/// Axioms of a Yetter-Drinfeld module over `R # kG`.
pub fn relative_validate(x: &RelativeYDModule) -> Vec<Check> {
    let r = &x.r;
    let g = x.base.group().clone();
    let dd = r.cutoff();
    let mut out = Vec::new();
    out.push(Check::new("underlying module over kG", yd_validate(&x.base).is_ok(), ""));

    let ok = x.act[0][0].is_identity() && x.coact[0][0].is_identity();
    out.push(Check::new("unit acts and counit coacts trivially", ok, ""));

    let mut ok = true;
    let mut detail = String::new();
    for d1 in 0..=dd {
        for d2 in 0..=dd {
            let mult = match r.mult(d1, d2) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let r2 = r.dim(d2);
            for s in 0..r.dim(d1) {
                for t in 0..r2 {
                    let lhs = x.act[d1][s].mul(&x.act[d2][t]);
                    let mut rhs = CycMatrix::zeros(x.dim(), x.dim());
                    if let Some(m) = mult {
                        for (b, v) in m.column(s * r2 + t) {
                            rhs = rhs.add(&x.act[d1 + d2][b].scale(&v));
                        }
                    }
                    if lhs != rhs && ok {
                        ok = false;
                        detail = format!("degrees {d1},{d2} basis {s},{t}");
                    }
                }
            }
        }
    }
    out.push(Check::new("R-action associative", ok, detail));

    let ok = (0..=dd).all(|d| {
        g.elements().all(|h| {
            let rg = r.action(d, h);
            (0..r.dim(d)).all(|b| {
                let lhs = x.base.action(h).mul(&x.act[d][b]);
                let mut rhs = CycMatrix::zeros(x.dim(), x.dim());
                for (c, v) in rg.column(b) {
                    rhs = rhs.add(&x.act[d][c].scale(&v));
                }
                lhs == rhs.mul(x.base.action(h))
            })
        })
    });
    out.push(Check::new("R-action H-linear", ok, ""));

    let graded = |t: &[Vec<CycMatrix>], inverse: bool| {
        t.iter().enumerate().all(|(d, ops)| {
            ops.iter().enumerate().all(|(b, m)| {
                let gb = r.gdegree(d, b);
                let gb = if inverse { g.inv(gb) } else { gb };
                m.row_data().iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| x.base.degree(i) == g.mul(gb, x.base.degree(*j))))
            })
        })
    };
    out.push(Check::new("R-action H-colinear", graded(&x.act, false), ""));
    out.push(Check::new("R-coaction H-colinear", graded(&x.coact, true), ""));

    let ok = (0..=dd).all(|d| {
        g.elements().all(|h| {
            let rg = r.action(d, h);
            (0..r.dim(d)).all(|b| {
                let lhs = x.coact[d][b].mul(x.base.action(h));
                let mut rhs = CycMatrix::zeros(x.dim(), x.dim());
                for c in 0..r.dim(d) {
                    let v = rg.get(b, c);
                    if !v.is_zero() {
                        rhs = rhs.add(&x.coact[d][c].scale(&v));
                    }
                }
                lhs == x.base.action(h).mul(&rhs)
            })
        })
    });
    out.push(Check::new("R-coaction H-linear", ok, ""));

    let mut ok = true;
    for a in 0..=dd {
        for b in 0..=(dd - a) {
            let cop = r.comult(a + b, a);
            let rb = r.dim(b);
            for s in 0..r.dim(a) {
                for t in 0..rb {
                    let lhs = x.coact[b][t].mul(&x.coact[a][s]);
                    let mut rhs = CycMatrix::zeros(x.dim(), x.dim());
                    for (s2, v) in cop.row(s * rb + t) {
                        rhs = rhs.add(&x.coact[a + b][*s2].scale(v));
                    }
                    ok &= lhs == rhs;
                }
            }
        }
    }
    out.push(Check::new("R-coaction coassociative", ok, ""));

    let a = Bosonization::new(x.r.clone());
    let (ok, detail) = match yd_compatibility_on_generators(x, &a) {
        Ok(None) => (true, String::new()),
        Ok(Some(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    out.push(Check::new("Yetter-Drinfeld condition over R # kG", ok, detail));
    out
}

/// `delta(a m) = a_(1) m_(-1) S(a_(3)) (x) a_(2) m_(0)` for `a` in `R(1)` and `kG`.
fn yd_compatibility_on_generators(x: &RelativeYDModule, a: &Bosonization) -> Result<Option<String>> {
    let g = x.base.group();
    let mut gens: Vec<SVec> = (0..x.r.dim(1)).map(|b| basis_vec(a.index(1, b, g.identity()))).collect();
    gens.extend(g.elements().map(|h| a.group_element(h)));
    let (n, da) = (x.dim(), a.dim());
    for el in &gens {
        let tri = a.comul2(el);
        for m in 0..n {
            let lhs = x.a_coact_vec(a, &x.a_act_vec(a, el, &basis_vec(m)));
            let co = x.a_coact_vec(a, &basis_vec(m));
            let mut acc = Vec::new();
            for (t, v) in &tri {
                let (ij, k) = split2(*t, da);
                let (i, j) = split2(ij, da);
                let sk = a.antipode_basis(k);
                for (p, w) in &co {
                    let (ai, xm) = split2(*p, n);
                    let left = a.mul(&a.mul_basis(i, ai)?, &sk)?;
                    let right = x.a_act_vec(a, &basis_vec(j), &basis_vec(xm));
                    let f = v * w;
                    for (l, lv) in &left {
                        for (rr, rv) in &right {
                            acc.push((l * n + rr, &(&f * lv) * rv));
                        }
                    }
                }
            }
            if svec_collect(acc) != lhs {
                return Ok(Some(format!("generator {el:?} on basis vector {m}")));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::nichols::{nichols_truncate, Mode};
    use crate::yd::diagonal_modules;

    /// `R = B(N)` with the braided adjoint action and coaction `Delta`.
    pub(crate) fn adjoint(q: &[Vec<(u32, i64)>], d: usize) -> RelativeYDModule {
        let ms = diagonal_modules(&diagonal_type(q).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        let r = Arc::new(nichols_truncate(&m, Some(&tags), d, Mode::Nichols).unwrap());
        assert!(r.vanishes_from().is_some());
        let offs: Vec<usize> = (0..=d)
            .scan(0, |s, i| {
                let o = *s;
                *s += r.dim(i);
                Some(o)
            })
            .collect();
        let total: usize = r.dims().iter().sum();
        let mut degrees = Vec::new();
        let mut action = Vec::new();
        for n in 0..=d {
            for k in 0..r.dim(n) {
                degrees.push(r.gdegree(n, k));
            }
        }
        let grp = m.group().clone();
        for h in grp.elements() {
            let mut e = Vec::new();
            for n in 0..=d {
                for (i, row) in r.action(n, h).row_data().iter().enumerate() {
                    for (j, v) in row {
                        e.push((offs[n] + i, offs[n] + j, v.clone()));
                    }
                }
            }
            action.push(CycMatrix::from_entries(total, total, e));
        }
        let base = YDModule::new(grp, degrees, action).unwrap();
        // ad of a single letter as a global operator
        let ad: Vec<CycMatrix> = (0..r.dim(1))
            .map(|l| {
                let mut e = Vec::new();
                for n in 0..d {
                    for k in 0..r.dim(n) {
                        for (i, v) in r.ad_action(&basis_vec(l), n, &basis_vec(k)).unwrap() {
                            e.push((offs[n + 1] + i, offs[n] + k, v));
                        }
                    }
                }
                CycMatrix::from_entries(total, total, e)
            })
            .collect();
        let mut act = Vec::new();
        let mut coact = Vec::new();
        for a in 0..=d {
            let mut aops = Vec::new();
            let mut cops = Vec::new();
            for s in 0..r.dim(a) {
                let mut op = CycMatrix::identity(total);
                for l in r.letters(a, s).into_iter().rev() {
                    op = ad[r.space().word_index(&[l])].mul(&op);
                }
                let mut c = Vec::new();
                for n in a..=d {
                    let rb = r.dim(n - a);
                    for k in 0..r.dim(n) {
                        for (pair, v) in r.comult(n, a).column(k) {
                            let (t, u) = split2(pair, rb);
                            if t == s {
                                c.push((offs[n - a] + u, offs[n] + k, v));
                            }
                        }
                    }
                }
                aops.push(op);
                cops.push(CycMatrix::from_entries(total, total, c));
            }
            act.push(aops);
            coact.push(cops);
        }
        RelativeYDModule::new(r, base, act, coact).unwrap()
    }

    #[test]
    fn adjoint_module_is_yd() {
        let x = adjoint(&[vec![(3, 1)]], 3);
        for c in relative_validate(&x) {
            assert!(c.passed, "{c:?}");
        }
        let t = relative_tensor(&x, &x).unwrap();
        for c in relative_validate(&t) {
            assert!(c.passed, "tensor {c:?}");
        }
        let c = relative_braiding(&x, &x);
        assert!(is_morphism(&c, &t, &t));
    }

    #[test]
    fn broken_coaction_is_detected() {
        let mut x = adjoint(&[vec![(3, 1)]], 3);
        x.coact[1][0] = x.coact[1][0].scale(&crate::scalar::CycScalar::from_int(2));
        assert!(relative_validate(&x).iter().any(|c| !c.passed));
    }
}
