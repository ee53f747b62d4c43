//! Radford biproduct `A = R # kG` of a truncated Nichols algebra with the
//! group algebra. Structure maps are evaluated on basis elements `r_k # g`
//! from the stored tables of `R`; `A` is never materialised as a table.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::matrix::{svec_collect, SVec};
use crate::nichols::NicholsTruncation;
use crate::scalar::CycScalar;

#[derive(Clone, Debug)]
pub struct Bosonization {
    r: Arc<NicholsTruncation>,
    group: Arc<FiniteGroup>,
    offsets: Vec<usize>,
    dim: usize,
}

/// Linear extension of `f` over the terms of `x`.
pub fn linear(x: &SVec, mut f: impl FnMut(usize) -> Result<SVec>) -> Result<SVec> {
    let mut acc = Vec::new();
    for (i, c) in x {
        for (j, v) in f(*i)? {
            acc.push((j, c * &v));
        }
    }
    Ok(svec_collect(acc))
}

/// Bilinear extension of `f`.
pub fn bilinear(x: &SVec, y: &SVec, mut f: impl FnMut(usize, usize) -> Result<SVec>) -> Result<SVec> {
    let mut acc = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let ab = a * b;
            for (k, v) in f(*i, *j)? {
                acc.push((k, &ab * &v));
            }
        }
    }
    Ok(svec_collect(acc))
}

pub fn basis_vec(i: usize) -> SVec {
    vec![(i, CycScalar::one())]
}

/// Splits a flat index of a tensor power into its factors.
pub fn split2(i: usize, d: usize) -> (usize, usize) {
    (i / d, i % d)
}

pub fn tensor2(x: &SVec, y: &SVec, d: usize) -> SVec {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for (i, a) in x {
        for (j, b) in y {
            out.push((i * d + j, a * b));
        }
    }
    out
}

impl Bosonization {
    pub fn new(r: Arc<NicholsTruncation>) -> Self {
        let group = r.module().group().clone();
        let mut offsets = Vec::with_capacity(r.cutoff() + 2);
        let mut acc = 0;
        for n in 0..=r.cutoff() {
            offsets.push(acc);
            acc += r.dim(n) * group.order();
        }
        offsets.push(acc);
        Bosonization { r, group, offsets, dim: acc }
    }

    pub fn r(&self) -> &Arc<NicholsTruncation> {
        &self.r
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, n: usize, k: usize, g: GroupElement) -> usize {
        self.offsets[n] + k * self.group.order() + g
    }

    /// `(degree, basis index in R(degree), group element)`
    pub fn decode(&self, i: usize) -> (usize, usize, GroupElement) {
        let n = self.offsets.partition_point(|&o| o <= i) - 1;
        let rest = i - self.offsets[n];
        (n, rest / self.group.order(), rest % self.group.order())
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.decode(i).0
    }

    /// `r # g` for `r` in degree `n` given by coordinates.
    pub fn embed(&self, n: usize, r: &SVec, g: GroupElement) -> SVec {
        r.iter().map(|(k, v)| (self.index(n, *k, g), v.clone())).collect()
    }

    pub fn group_element(&self, g: GroupElement) -> SVec {
        basis_vec(self.index(0, 0, g))
    }

    pub fn unit(&self) -> SVec {
        self.group_element(self.group.identity())
    }

    /// Component of `x` in degree `n` with group part `g`, as R-coordinates.
    pub fn component(&self, x: &SVec, n: usize, g: GroupElement) -> SVec {
        x.iter()
            .filter_map(|(i, v)| {
                let (m, k, h) = self.decode(*i);
                (m == n && h == g).then(|| (k, v.clone()))
            })
            .collect()
    }

    /// `(r # h)(r' # h') = r (h . r') # h h'`
    pub fn mul_basis(&self, i: usize, j: usize) -> Result<SVec> {
        let (n1, k1, h1) = self.decode(i);
        let (n2, k2, h2) = self.decode(j);
        let moved = self.r.action(n2, h1).column(k2);
        let prod = self.r.mul(n1, &basis_vec(k1), n2, &moved)?;
        let n = n1 + n2;
        if prod.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self.embed(n, &prod, self.group.mul(h1, h2)))
    }

    pub fn mul(&self, x: &SVec, y: &SVec) -> Result<SVec> {
        bilinear(x, y, |i, j| self.mul_basis(i, j))
    }

    pub fn counit(&self, x: &SVec) -> CycScalar {
        x.iter().filter(|(i, _)| self.decode(*i).0 == 0).fold(CycScalar::zero(), |acc, (_, v)| &acc + v)
    }

    /// `Delta(r # h) = r^(1) (r^(2))_-1 h (x) (r^(2))_0 h`, in `A (x) A` with
    /// flat index `i * dim + j`.
    pub fn comul_basis(&self, i: usize) -> SVec {
        let (n, k, h) = self.decode(i);
        let g = &self.group;
        let mut out = Vec::new();
        for a in 0..=n {
            let b = n - a;
            let rb = self.r.dim(b);
            for (pair, v) in self.r.comult(n, a).column(k) {
                let (k1, k2) = split2(pair, rb);
                let g2 = self.r.gdegree(b, k2);
                let left = self.index(a, k1, g.mul(g2, h));
                let right = self.index(b, k2, h);
                out.push((left * self.dim + right, v));
            }
        }
        svec_collect(out)
    }

    pub fn comul(&self, x: &SVec) -> SVec {
        linear(x, |i| Ok(self.comul_basis(i))).unwrap()
    }

    /// `S(r # h) = S(h) S(r_-1) S_R(r_0) = (h^-1 g_r^-1) . S_R(r) # h^-1 g_r^-1`
    pub fn antipode_basis(&self, i: usize) -> SVec {
        let (n, k, h) = self.decode(i);
        let g = &self.group;
        let gr = self.r.gdegree(n, k);
        let x = g.mul(g.inv(h), g.inv(gr));
        let sr = self.r.antipode(n).column(k);
        let moved = self.r.action(n, x).mul_svec(&sr);
        self.embed(n, &moved, x)
    }

    pub fn antipode(&self, x: &SVec) -> SVec {
        linear(x, |i| Ok(self.antipode_basis(i))).unwrap()
    }

    /// `S^-1(r h) = S^-1(h) S_R^-1(r_0) S^-1(r_-1) = h^-1 . S_R^-1(r) # h^-1 g_r^-1`
    pub fn antipode_inv_basis(&self, i: usize) -> SVec {
        let (n, k, h) = self.decode(i);
        let g = &self.group;
        let gr = self.r.gdegree(n, k);
        let sr = self.r.antipode_inv(n).column(k);
        let moved = self.r.action(n, g.inv(h)).mul_svec(&sr);
        self.embed(n, &moved, g.mul(g.inv(h), g.inv(gr)))
    }

    pub fn antipode_inv(&self, x: &SVec) -> SVec {
        linear(x, |i| Ok(self.antipode_inv_basis(i))).unwrap()
    }

    /// `pi(r # h) = eps(r) h`
    pub fn pi(&self, x: &SVec) -> SVec {
        svec_collect(x.iter().filter(|(i, _)| self.decode(*i).0 == 0).cloned().collect())
    }

    /// `vartheta(r # h) = r eps(h)`
    pub fn vartheta(&self, x: &SVec) -> SVec {
        let e = self.group.identity();
        svec_collect(
            x.iter()
                .map(|(i, v)| {
                    let (n, k, _) = self.decode(*i);
                    (self.index(n, k, e), v.clone())
                })
                .collect(),
        )
    }

    /// Action of an element of kG (given inside A) on R (given inside A as `r # 1`).
    pub fn h_act(&self, h: &SVec, r: &SVec) -> Result<SVec> {
        let e = self.group.identity();
        bilinear(h, r, |i, j| {
            let (n0, _, g) = self.decode(i);
            let (n, k, g1) = self.decode(j);
            if n0 != 0 || g1 != e {
                return Err(Error::InvalidProjection("h_act expects kG (x) R".into()));
            }
            Ok(self.embed(n, &self.r.action(n, g).column(k), e))
        })
    }

    /// Applies a map to each factor of a tensor of two elements of A.
    pub fn map2(&self, t: &SVec, f: impl Fn(&SVec) -> SVec, g: impl Fn(&SVec) -> SVec) -> SVec {
        let d = self.dim;
        let mut out = Vec::new();
        for (p, v) in t {
            let (i, j) = split2(*p, d);
            let fi = f(&basis_vec(i));
            let gj = g(&basis_vec(j));
            for (a, x) in &fi {
                for (b, y) in &gj {
                    out.push((a * d + b, &(v * x) * y));
                }
            }
        }
        svec_collect(out)
    }

    /// `(Delta (x) id) Delta`, flat index `(i * dim + j) * dim + k`.
    pub fn comul2(&self, x: &SVec) -> SVec {
        let d = self.dim;
        let first = self.comul(x);
        let mut out = Vec::new();
        for (p, v) in &first {
            let (i, j) = split2(*p, d);
            for (q, w) in self.comul_basis(i) {
                out.push((q * d + j, v * &w));
            }
        }
        svec_collect(out)
    }

    pub fn tensor_mul(&self, x: &SVec, y: &SVec) -> Result<SVec> {
        let d = self.dim;
        bilinear(x, y, |p, q| {
            let (a, b) = split2(p, d);
            let (a2, b2) = split2(q, d);
            let l = self.mul_basis(a, a2)?;
            let r = self.mul_basis(b, b2)?;
            Ok(tensor2(&l, &r, d))
        })
    }

    /// Total R-degree of a basis element.
    pub fn max_degree(&self, x: &SVec) -> usize {
        x.iter().map(|(i, _)| self.decode(*i).0).max().unwrap_or(0)
    }

    /// Whether products of total degree `n` can be formed.
    pub fn degree_ok(&self, n: usize) -> bool {
        self.r.check_degree(n).is_ok()
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// The Hopf algebra axioms of `A` and the identities linking `A`, `R`, `pi`
/// and `vartheta`, on all basis elements (pairs and triples limited to those
/// whose products stay inside the truncation).
pub fn bosonization_suite(a: &Bosonization) -> Result<Vec<Check>> {
    let d = a.dim();
    let g = a.group().clone();
    let r = a.r().clone();
    let basis: Vec<usize> = (0..d).collect();
    let deg = |i: usize| a.degree_of(i);
    let mut checks = Vec::new();

    let mut fail = None;
    'assoc: for &i in &basis {
        for &j in &basis {
            if !a.degree_ok(deg(i) + deg(j)) {
                continue;
            }
            let ij = a.mul_basis(i, j)?;
            for &k in &basis {
                if !a.degree_ok(deg(i) + deg(j) + deg(k)) {
                    continue;
                }
                let lhs = a.mul(&ij, &basis_vec(k))?;
                let rhs = a.mul(&basis_vec(i), &a.mul_basis(j, k)?)?;
                if lhs != rhs {
                    fail = Some(format!("({i},{j},{k})"));
                    break 'assoc;
                }
            }
        }
    }
    checks.push(Check::new("associativity", fail.is_none(), fail.unwrap_or_default()));

    let unit = a.unit();
    let unit_ok = basis.iter().all(|&i| a.mul(&unit, &basis_vec(i)).unwrap() == basis_vec(i) && a.mul(&basis_vec(i), &unit).unwrap() == basis_vec(i));
    checks.push(Check::new("unit", unit_ok, ""));

    let mut fail = None;
    for &i in &basis {
        let x = basis_vec(i);
        let lhs = a.comul2(&x);
        let first = a.comul(&x);
        let mut rhs = Vec::new();
        for (p, v) in &first {
            let (u, w) = split2(*p, d);
            for (q, c) in a.comul_basis(w) {
                rhs.push((u * d * d + q, v * &c));
            }
        }
        if lhs != svec_collect(rhs) {
            fail = Some(i);
            break;
        }
    }
    checks.push(Check::new("coassociativity", fail.is_none(), fail.map(|i| format!("basis {i}")).unwrap_or_default()));

    let counit_ok = basis.iter().all(|&i| {
        let t = a.comul_basis(i);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (p, v) in &t {
            let (u, w) = split2(*p, d);
            let eu = a.counit(&basis_vec(u));
            let ew = a.counit(&basis_vec(w));
            left.push((w, &eu * v));
            right.push((u, &ew * v));
        }
        svec_collect(left) == basis_vec(i) && svec_collect(right) == basis_vec(i)
    });
    checks.push(Check::new("counit", counit_ok, ""));

    let mut fail = None;
    'mult: for &i in &basis {
        for &j in &basis {
            if !a.degree_ok(deg(i) + deg(j)) {
                continue;
            }
            let lhs = a.comul(&a.mul_basis(i, j)?);
            let rhs = a.tensor_mul(&a.comul_basis(i), &a.comul_basis(j))?;
            if lhs != rhs {
                fail = Some(format!("({i},{j})"));
                break 'mult;
            }
        }
    }
    checks.push(Check::new("comultiplication is multiplicative", fail.is_none(), fail.unwrap_or_default()));

    let mut fail = None;
    for &i in &basis {
        let t = a.comul_basis(i);
        let eps = a.counit(&basis_vec(i));
        let expect: SVec = if eps.is_zero() { Vec::new() } else { vec![(a.index(0, 0, g.identity()), eps)] };
        let mut l = Vec::new();
        let mut rr = Vec::new();
        for (p, v) in &t {
            let (u, w) = split2(*p, d);
            for (k, c) in a.mul(&a.antipode_basis(u), &basis_vec(w))? {
                l.push((k, v * &c));
            }
            for (k, c) in a.mul(&basis_vec(u), &a.antipode_basis(w))? {
                rr.push((k, v * &c));
            }
        }
        if svec_collect(l) != expect || svec_collect(rr) != expect {
            fail = Some(i);
            break;
        }
    }
    checks.push(Check::new("antipode", fail.is_none(), fail.map(|i| format!("basis {i}")).unwrap_or_default()));

    let inv_ok = basis.iter().all(|&i| a.antipode(&a.antipode_inv_basis(i)) == basis_vec(i) && a.antipode_inv(&a.antipode_basis(i)) == basis_vec(i));
    checks.push(Check::new("inverse antipode", inv_ok, ""));

    // S^2(r) = S_R^2(theta_R(r))
    let mut ok = true;
    for n in 0..=r.cutoff() {
        let lhs_m = r.antipode(n).mul(r.antipode(n)).mul(&r.theta(n));
        for k in 0..r.dim(n) {
            let x = basis_vec(a.index(n, k, g.identity()));
            let s2 = a.antipode(&a.antipode(&x));
            ok &= s2 == a.embed(n, &lhs_m.column(k), g.identity());
        }
    }
    checks.push(Check::new("S^2 = S_R^2 theta_R on R", ok, ""));

    // S_R^-1(r) = S^-1(r_0) r_-1 = vartheta S^-1(r)
    let mut ok = true;
    for n in 0..=r.cutoff() {
        for k in 0..r.dim(n) {
            let x = basis_vec(a.index(n, k, g.identity()));
            let expect = a.embed(n, &r.antipode_inv(n).column(k), g.identity());
            let via_coaction = a.mul(&a.antipode_inv(&x), &a.group_element(r.gdegree(n, k)))?;
            ok &= via_coaction == expect && a.vartheta(&a.antipode_inv(&x)) == expect;
        }
    }
    checks.push(Check::new("inverse braided antipode", ok, ""));

    // a = vartheta(a_1) pi(a_2)
    let decomp_ok = basis.iter().all(|&i| {
        let t = a.comul_basis(i);
        let mut acc = Vec::new();
        for (p, v) in &t {
            let (u, w) = split2(*p, d);
            let prod = a.mul(&a.vartheta(&basis_vec(u)), &a.pi(&basis_vec(w))).unwrap();
            acc.extend(prod.into_iter().map(|(k, c)| (k, v * &c)));
        }
        svec_collect(acc) == basis_vec(i)
    });
    checks.push(Check::new("decomposition a = vartheta(a1) pi(a2)", decomp_ok, ""));

    checks.extend(reconstruction_checks(a)?);
    checks.push(vartheta_identity_check(a)?);
    Ok(checks)
}

/// Rebuilds the braided structure of `R` from `A` and `pi` and compares with
/// the stored tables.
fn reconstruction_checks(a: &Bosonization) -> Result<Vec<Check>> {
    let d = a.dim();
    let g = a.group().clone();
    let r = a.r().clone();
    let e = g.identity();
    let mut out = Vec::new();

    // h . r = h_1 r S(h_2)
    let mut ok = true;
    for h in g.elements() {
        for n in 0..=r.cutoff() {
            for k in 0..r.dim(n) {
                let x = basis_vec(a.index(n, k, e));
                let hv = a.group_element(h);
                let lhs = a.mul(&a.mul(&hv, &x)?, &a.antipode(&hv))?;
                ok &= lhs == a.embed(n, &r.action(n, h).column(k), e);
            }
        }
    }
    out.push(Check::new("reconstructed action", ok, ""));

    // r_-1 (x) r_0 = pi(r_1) (x) r_2
    let mut ok = true;
    for n in 0..=r.cutoff() {
        for k in 0..r.dim(n) {
            let x = basis_vec(a.index(n, k, e));
            let t = a.map2(&a.comul(&x), |u| a.pi(u), |w| w.clone());
            let expect = basis_vec(a.index(0, 0, r.gdegree(n, k)) * d + a.index(n, k, e));
            ok &= t == expect;
        }
    }
    out.push(Check::new("reconstructed coaction", ok, ""));

    // r^(1) (x) r^(2) = r_1 pi S(r_2) (x) r_3 ; S_R(r) = pi(r_1) S(r_2) ; vartheta(a) = a_1 pi S(a_2)
    let mut ok_comult = true;
    let mut ok_anti = true;
    let mut ok_theta = true;
    for n in 0..=r.cutoff() {
        for k in 0..r.dim(n) {
            let x = basis_vec(a.index(n, k, e));
            let t3 = a.comul2(&x);
            let mut acc = Vec::new();
            for (p, v) in &t3 {
                let (uv, w) = split2(*p, d);
                let (u, m) = split2(uv, d);
                let prod = a.mul(&basis_vec(u), &a.pi(&a.antipode_basis(m)))?;
                for (q, c) in prod {
                    acc.push((q * d + w, v * &c));
                }
            }
            let mut expect = Vec::new();
            for b in 0..=n {
                let rb = r.dim(n - b);
                for (pair, v) in r.comult(n, b).column(k) {
                    let (k1, k2) = split2(pair, rb);
                    expect.push((a.index(b, k1, e) * d + a.index(n - b, k2, e), v));
                }
            }
            ok_comult &= svec_collect(acc) == svec_collect(expect);

            let t2 = a.comul(&x);
            let mut s_acc = Vec::new();
            let mut th_acc = Vec::new();
            for (p, v) in &t2 {
                let (u, w) = split2(*p, d);
                let prod = a.mul(&a.pi(&basis_vec(u)), &a.antipode_basis(w))?;
                s_acc.extend(prod.into_iter().map(|(q, c)| (q, v * &c)));
                let prod = a.mul(&basis_vec(u), &a.pi(&a.antipode_basis(w)))?;
                th_acc.extend(prod.into_iter().map(|(q, c)| (q, v * &c)));
            }
            ok_anti &= svec_collect(s_acc) == a.embed(n, &r.antipode(n).column(k), e);
            ok_theta &= svec_collect(th_acc) == x;
        }
    }
    out.push(Check::new("reconstructed comultiplication", ok_comult, ""));
    out.push(Check::new("reconstructed braided antipode", ok_anti, ""));
    // vartheta on all of A
    let mut ok_all = true;
    for i in 0..d {
        let t2 = a.comul_basis(i);
        let mut acc = Vec::new();
        for (p, v) in &t2 {
            let (u, w) = split2(*p, d);
            let prod = a.mul(&basis_vec(u), &a.pi(&a.antipode_basis(w)))?;
            acc.extend(prod.into_iter().map(|(q, c)| (q, v * &c)));
        }
        ok_all &= svec_collect(acc) == a.vartheta(&basis_vec(i));
    }
    out.push(Check::new("vartheta(a) = a1 pi S(a2)", ok_theta && ok_all, ""));
    Ok(out)
}

/// `vartheta S(a pi S^-1(b_2) b_1) = vartheta S(b_2) (pi(S(b_1) b_3) . vartheta S(a))`
/// on all pairs of basis elements whose products stay inside the truncation.
pub fn vartheta_identity_check(a: &Bosonization) -> Result<Check> {
    let d = a.dim();
    let deg = |i: usize| a.degree_of(i);
    for i in 0..d {
        for j in 0..d {
            if !a.degree_ok(deg(i) + deg(j)) {
                continue;
            }
            let av = basis_vec(i);
            let b = basis_vec(j);
            let b2 = a.comul(&b);
            let mut lhs_arg = Vec::new();
            for (p, v) in &b2 {
                let (u, w) = split2(*p, d);
                let t = a.mul(&a.mul(&av, &a.pi(&a.antipode_inv_basis(w)))?, &basis_vec(u))?;
                lhs_arg.extend(t.into_iter().map(|(q, c)| (q, v * &c)));
            }
            let lhs = a.vartheta(&a.antipode(&svec_collect(lhs_arg)));

            let vsa = a.vartheta(&a.antipode(&av));
            let b3 = a.comul2(&b);
            let mut rhs = Vec::new();
            for (p, v) in &b3 {
                let (uv, w) = split2(*p, d);
                let (u, m) = split2(uv, d);
                let h = a.pi(&a.mul(&a.antipode_basis(u), &basis_vec(w))?);
                let acted = a.h_act(&h, &vsa)?;
                let t = a.mul(&a.vartheta(&a.antipode_basis(m)), &acted)?;
                rhs.extend(t.into_iter().map(|(q, c)| (q, v * &c)));
            }
            if lhs != svec_collect(rhs) {
                return Ok(Check::new("vartheta identity", false, format!("a = {i}, b = {j}")));
            }
        }
    }
    Ok(Check::new("vartheta identity", true, ""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::diagonal_type;
    use crate::nichols::{nichols_truncate, Mode};
    use crate::yd::{diagonal_modules, YDModule};

    #[test]
    fn rank_one_suite() {
        let ms = diagonal_modules(&diagonal_type(&[vec![(3, 1)]]).unwrap()).unwrap();
        let r = nichols_truncate(&ms[0], None, 3, Mode::Nichols).unwrap();
        let a = Bosonization::new(Arc::new(r));
        let checks = bosonization_suite(&a).unwrap();
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn e0_suite() {
        let ms = diagonal_modules(&diagonal_type(&[vec![(2, 1), (1, 0)], vec![(1, 0), (2, 1)]]).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        let r = nichols_truncate(&m, Some(&tags), 3, Mode::Nichols).unwrap();
        let a = Bosonization::new(Arc::new(r));
        for c in bosonization_suite(&a).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }
}
