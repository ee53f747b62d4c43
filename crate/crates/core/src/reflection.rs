//! Adjoint orbits `(ad M_i)^n(M_j)`, reflections of tuples of irreducible
//! Yetter-Drinfeld modules, and the desk-scale checks of the reflection
//! theorems.
//!
//! Pivots and summands are 0-based here.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bosonization::{basis_vec, Check};
use crate::braided::{nichols_weight_dims, BraidedSpace};
use crate::coinvariants::{coinvariants, Coinvariants, Embedded};
use crate::error::{Error, Result};
use crate::matrix::{SVec, Subspace};
use crate::nichols::{nichols_truncate, Mode, NicholsTruncation};
use crate::relative::{f_delta, f_mu, relative_braiding, RelativeYDModule};
use crate::yd::{yd_dual, yd_find_isomorphism, yd_is_irreducible, YDModule};

/// A family `(M_1, ..., M_theta)` of irreducible modules over one group.
#[derive(Clone, Debug)]
pub struct YDTuple {
    entries: Vec<YDModule>,
}

impl YDTuple {
    pub fn new(entries: Vec<YDModule>) -> Result<Self> {
        let first = entries.first().ok_or(Error::EmptyModule)?;
        for (j, m) in entries.iter().enumerate() {
            if m.group() != first.group() {
                return Err(Error::Input(format!("entry {j} lives over a different group")));
            }
            if !yd_is_irreducible(m)? {
                return Err(Error::Input(format!("entry {j} is not irreducible")));
            }
        }
        Ok(YDTuple { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[YDModule] {
        &self.entries
    }

    pub fn direct_sum(&self) -> (YDModule, Vec<usize>) {
        YDModule::direct_sum(&self.entries).expect("entries share a group")
    }

    pub fn truncate(&self, cutoff: usize) -> Result<NicholsTruncation> {
        let (m, tags) = self.direct_sum();
        nichols_truncate(&m, Some(&tags), cutoff, Mode::Nichols)
    }

    /// Entrywise isomorphism, with one intertwiner per entry.
    pub fn isomorphic(&self, other: &YDTuple) -> Option<Vec<crate::matrix::CycMatrix>> {
        if self.rank() != other.rank() {
            return None;
        }
        self.entries.iter().zip(&other.entries).map(|(a, b)| yd_find_isomorphism(a, b)).collect()
    }
}

/// `(ad M_i)^n(M_j)` for `n = 0..=m`, each inside `B(M)(n+1)`.
#[derive(Clone, Debug)]
pub struct AdjointOrbit {
    pub j: usize,
    pub spaces: Vec<Subspace>,
}

impl AdjointOrbit {
    pub fn exponent(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
}

/// Orbits for every `j != i`, stopping at the first vanishing power.
pub fn adjoint_orbit(big: &NicholsTruncation, i: usize) -> Result<Vec<AdjointOrbit>> {
    let tags = big.tags().to_vec();
    let theta = tags.iter().max().map_or(0, |t| t + 1);
    if i >= theta {
        return Err(Error::Input(format!("pivot {} outside 1..={theta}", i + 1)));
    }
    if big.cutoff() < 2 {
        return Err(Error::InvalidCutoff(big.cutoff()));
    }
    let letters_of = |i: usize| -> Vec<usize> { (0..tags.len()).filter(|&l| tags[l] == i).collect() };
    let mut out = Vec::new();
    for j in (0..theta).filter(|&j| j != i) {
        let start: Vec<SVec> = letters_of(j).into_iter().map(|l| big.letter(l)).collect();
        let mut spaces = vec![Subspace::span(big.dim(1), &start)];
        loop {
            let n = spaces.len();
            if n + 1 > big.cutoff() && big.check_degree(n + 1).is_err() {
                return Err(Error::NotDefinedAtCutoff { i: i + 1, j: j + 1, cutoff: big.cutoff() });
            }
            let mut next = Vec::new();
            for v in spaces[n - 1].basis().row_data() {
                for l in letters_of(i) {
                    let y = if n + 1 > big.cutoff() { Vec::new() } else { big.ad_action(&basis_vec(l), n, v)? };
                    if !y.is_empty() {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let dim = if n + 1 > big.cutoff() { 0 } else { big.dim(n + 1) };
            spaces.push(Subspace::span(dim, &next));
        }
        out.push(AdjointOrbit { j, spaces });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ReflectionDatum {
    pub pivot: usize,
    /// `m_ij`, with 0 at the pivot.
    pub exponents: Vec<usize>,
    pub cartan_row: Vec<i64>,
    pub result: YDTuple,
    pub cutoff: usize,
    pub orbits: Vec<AdjointOrbit>,
}

/// `R_i(M) = (V_1, ..., V_theta)` with `V_i = M_i^*` and
/// `V_j = (ad M_i)^{m_ij}(M_j)`.
pub fn reflect(m: &YDTuple, i: usize, cutoff: usize) -> Result<ReflectionDatum> {
    let big = m.truncate(cutoff)?;
    reflect_in(m, &big, i)
}

pub fn reflect_in(m: &YDTuple, big: &NicholsTruncation, i: usize) -> Result<ReflectionDatum> {
    let orbits = adjoint_orbit(big, i)?;
    let mut exponents = vec![0; m.rank()];
    let mut entries = Vec::with_capacity(m.rank());
    for j in 0..m.rank() {
        if j == i {
            entries.push(yd_dual(&m.entries[i]));
            continue;
        }
        let o = orbits.iter().find(|o| o.j == j).unwrap();
        let e = o.exponent();
        exponents[j] = e;
        let top = o.spaces[e].basis().row_data().to_vec();
        let (v, _) = big.degree_module(e + 1).submodule(&top)?;
        entries.push(v);
    }
    let cartan_row = (0..m.rank()).map(|j| if j == i { 2 } else { -(exponents[j] as i64) }).collect();
    Ok(ReflectionDatum { pivot: i, exponents, cartan_row, result: YDTuple::new(entries)?, cutoff: big.cutoff(), orbits })
}

/// `W_j = sum_n (ad M_i)^n(M_j)` as an object over `B(M_i) # kG`, graded by `n`.
pub fn orbit_module(k: &Coinvariants, orbits: &[AdjointOrbit], only: Option<usize>) -> Result<(RelativeYDModule, Vec<i64>, Vec<Vec<u32>>)> {
    let big = k.big();
    let mut per_degree: Vec<Vec<SVec>> = vec![Vec::new(); big.cutoff() + 1];
    for o in orbits.iter().filter(|o| only.is_none_or(|j| j == o.j)) {
        for (n, s) in o.spaces.iter().enumerate() {
            per_degree[n + 1].extend(s.basis().row_data().iter().cloned());
        }
    }
    let spaces: Vec<Subspace> = per_degree.iter().enumerate().map(|(n, v)| Subspace::span(big.dim(n), v)).collect();
    let e = Embedded::new(spaces);
    let x = k.relative_structure(&e)?;
    let pivot = k.pivot();
    let mut grading = Vec::with_capacity(e.dim());
    let mut weights = Vec::with_capacity(e.dim());
    for idx in 0..e.dim() {
        let (n, v) = e.element(idx);
        let w = big.multidegree(n, v[0].0).to_vec();
        grading.push(w[pivot] as i64);
        weights.push(w);
    }
    Ok((x, grading, weights))
}

/// `s_i(a)_i = -a_i + sum_{j != i} m_ij a_j`, other coordinates fixed.
pub fn reflect_weight(a: &[u32], i: usize, exponents: &[usize]) -> Option<Vec<u32>> {
    let s: i64 = (0..a.len()).filter(|&j| j != i).map(|j| exponents[j] as i64 * a[j] as i64).sum::<i64>() - a[i] as i64;
    let mut out = a.to_vec();
    out[i] = u32::try_from(s).ok()?;
    Some(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionReport {
    pub pivot: usize,
    pub exponents: Vec<usize>,
    pub cartan_row: Vec<i64>,
    pub reflected_cartan_row: Vec<i64>,
    pub source_dims: Vec<usize>,
    pub reflected_dims: Vec<usize>,
    pub coinvariant_dims: BTreeMap<String, usize>,
    pub checks: Vec<Check>,
}

fn key(w: &[u32]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Checks (a)-(e) of the reflection theorems at cutoff `cutoff`.
pub fn verify_reflection_theorems(m: &YDTuple, i: usize, cutoff: usize) -> Result<ReflectionReport> {
    let big = Arc::new(m.truncate(cutoff)?);
    let datum = reflect_in(m, &big, i)?;
    let theta = m.rank();
    let mut checks = Vec::new();

    let irreducible: Result<Vec<bool>> = datum.result.entries.iter().map(yd_is_irreducible).collect();
    let irreducible = irreducible?;
    checks.push(Check::new("(a) every V_j irreducible", irreducible.iter().all(|&b| b), format!("{irreducible:?}")));

    // coinvariants to the old cutoff needed for new degrees <= cutoff
    let m_max = datum.exponents.iter().copied().max().unwrap_or(0);
    let old_cutoff = (1 + m_max) * cutoff;
    let big_old = if big.vanishes_from().is_some() || old_cutoff <= cutoff { big.clone() } else { Arc::new(m.truncate(old_cutoff)?) };
    let k = coinvariants(big_old.clone(), i)?;
    let k_dims = k.multidegree_dims();
    let k_at = |a: &[u32]| -> usize {
        if a.iter().sum::<u32>() as usize > big_old.cutoff() {
            0
        } else {
            k_dims.get(a).copied().unwrap_or(0)
        }
    };

    let (w, _, weights) = orbit_module(&k, &datum.orbits, None)?;
    let bw = if w.dim() == 0 {
        BTreeMap::from([(vec![0; theta], 1)])
    } else {
        let space = BraidedSpace::new(w.dim(), relative_braiding(&w, &w), weights)?;
        nichols_weight_dims(&space, cutoff, cutoff as u32)
    };
    let mut detail = String::new();
    for (a, &d) in &bw {
        if d != k_at(a) && detail.is_empty() {
            detail = format!("multidegree {}: B(W) {d}, K {}", key(a), k_at(a));
        }
    }
    for (a, &d) in &k_dims {
        if a.iter().sum::<u32>() as usize <= cutoff && bw.get(a).copied().unwrap_or(0) != d && detail.is_empty() {
            detail = format!("multidegree {}: K {d}, B(W) {}", key(a), bw.get(a).copied().unwrap_or(0));
        }
    }
    checks.push(Check::new("(b) K and B(W) have equal dimensions per multidegree", detail.is_empty(), detail));

    let reflected = datum.result.truncate(cutoff)?;
    let dual_n = nichols_truncate(&datum.result.entries[i], None, cutoff, Mode::Nichols)?;
    let mut lhs: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for n in 0..=cutoff {
        for b in 0..reflected.dim(n) {
            *lhs.entry(reflected.multidegree(n, b).to_vec()).or_insert(0) += 1;
        }
    }
    let mut detail = String::new();
    let mut per_degree_l = vec![0usize; cutoff + 1];
    let mut per_degree_r = vec![0usize; cutoff + 1];
    for beta in weights_up_to(theta, cutoff) {
        let mut rhs = 0;
        for kk in 0..=beta[i] as usize {
            let mut b2 = beta.clone();
            b2[i] -= kk as u32;
            if let Some(alpha) = reflect_weight(&b2, i, &datum.exponents) {
                rhs += k_at(&alpha) * dual_n.dim(kk);
            }
        }
        let l = lhs.get(&beta).copied().unwrap_or(0);
        let total = beta.iter().sum::<u32>() as usize;
        per_degree_l[total] += l;
        per_degree_r[total] += rhs;
        if l != rhs && detail.is_empty() {
            detail = format!("multidegree {}: B(R_i(M)) {l}, sum {rhs}", key(&beta));
        }
    }
    if per_degree_l != per_degree_r && detail.is_empty() {
        detail = format!("per degree {per_degree_l:?} vs {per_degree_r:?}");
    }
    checks.push(Check::new("(c) dim B(R_i(M))(d) = sum dim K(a) dim B(M_i^*)(b)", detail.is_empty(), detail));

    let back = reflect_in(&datum.result, &reflected, i)?;
    let mut detail = String::new();
    for j in (0..theta).filter(|&j| j != i) {
        if back.exponents[j] != datum.exponents[j] {
            detail = format!("m_{}{} changes from {} to {}", i + 1, j + 1, datum.exponents[j], back.exponents[j]);
            break;
        }
        if yd_find_isomorphism(&m.entries[j], &back.result.entries[j]).is_none() {
            detail = format!("M_{} is not isomorphic to (ad V_i)^m(V_j)", j + 1);
            break;
        }
    }
    checks.push(Check::new("(d) M_j = (ad V_i)^{m_ij}(V_j) up to isomorphism", detail.is_empty(), detail));

    let square = m.isomorphic(&back.result).is_some();
    let same_row = back.cartan_row == datum.cartan_row;
    checks.push(Check::new(
        "(e) R_i(M) irreducible, R_i(R_i(M)) = M, equal Cartan rows",
        irreducible.iter().all(|&b| b) && square && same_row,
        format!("isomorphic {square}, rows {:?} / {:?}", datum.cartan_row, back.cartan_row),
    ));

    Ok(ReflectionReport {
        pivot: i,
        exponents: datum.exponents.clone(),
        cartan_row: datum.cartan_row.clone(),
        reflected_cartan_row: back.cartan_row,
        source_dims: big.dims(),
        reflected_dims: reflected.dims(),
        coinvariant_dims: k_dims.iter().map(|(a, d)| (key(a), *d)).collect(),
        checks,
    })
}

/// All weights in `N^theta` of total at most `max`, in lexicographic order.
fn weights_up_to(theta: usize, max: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..theta {
        let mut next = Vec::new();
        for w in &out {
            let used: u32 = w.iter().sum();
            for x in 0..=(max as u32 - used) {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The homogeneous components of `W_j` against its filtrations: `F^delta_n`
/// is the sum of the lowest `n+1` components and `F^mu_n` of the highest
/// `n+1`; the top and bottom components are irreducible over `kG`.
pub fn filtration_checks(m: &YDTuple, i: usize, cutoff: usize) -> Result<Vec<Check>> {
    let big = Arc::new(m.truncate(cutoff)?);
    let datum = reflect_in(m, &big, i)?;
    let k = coinvariants(big.clone(), i)?;
    let mut out = Vec::new();
    for o in &datum.orbits {
        let (w, grading, _) = orbit_module(&k, std::slice::from_ref(o), Some(o.j))?;
        let top = o.exponent() as i64;
        let span_where = |f: &dyn Fn(i64) -> bool| {
            let vecs: Vec<SVec> = (0..w.dim()).filter(|&b| f(grading[b])).map(basis_vec).collect();
            Subspace::span(w.dim(), &vecs)
        };
        let mut ok = true;
        for n in 0..=top as usize {
            ok &= f_delta(&w, n) == span_where(&|g| g <= n as i64);
            ok &= f_mu(&w, n) == span_where(&|g| g >= top - n as i64);
        }
        out.push(Check::new(&format!("W_{}: filtrations match homogeneous components", o.j + 1), ok, ""));
        let bottom = o.spaces[0].basis().row_data().to_vec();
        let upper = o.spaces[top as usize].basis().row_data().to_vec();
        let irr = yd_is_irreducible(&big.degree_module(1).submodule(&bottom)?.0)? && yd_is_irreducible(&big.degree_module(top as usize + 1).submodule(&upper)?.0)?;
        out.push(Check::new(&format!("W_{}: top and bottom components irreducible", o.j + 1), irr, ""));
        let v_top = Subspace::span(w.dim(), &(0..w.dim()).filter(|&b| grading[b] == top).map(basis_vec).collect::<Vec<_>>());
        out.push(Check::new(&format!("W_{}: V_j = F^mu_0(W_j)", o.j + 1), f_mu(&w, 0) == v_top, ""));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonization::all_passed;
    use crate::group::diagonal_type;
    use crate::yd::diagonal_modules;

    pub(crate) fn tuple(q: &[Vec<(u32, i64)>]) -> YDTuple {
        YDTuple::new(diagonal_modules(&diagonal_type(q).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn e0_and_e1_exponents() {
        let e0 = tuple(&[vec![(2, 1), (1, 0)], vec![(1, 0), (2, 1)]]);
        let d = reflect(&e0, 0, 3).unwrap();
        assert_eq!(d.cartan_row, vec![2, 0]);
        let e1 = tuple(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]);
        let d = reflect(&e1, 0, 4).unwrap();
        assert_eq!(d.cartan_row, vec![2, -1]);
        assert_eq!(d.result.entries()[1].dim(), 1);
    }

    #[test]
    fn theorems_hold_on_desk_examples() {
        let e0 = tuple(&[vec![(2, 1), (1, 0)], vec![(1, 0), (2, 1)]]);
        let r = verify_reflection_theorems(&e0, 0, 3).unwrap();
        assert!(all_passed(&r.checks), "{:?}", r.checks);
        let e1 = tuple(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]);
        let r = verify_reflection_theorems(&e1, 0, 4).unwrap();
        assert!(all_passed(&r.checks), "{:?}", r.checks);
        assert!(all_passed(&filtration_checks(&e1, 0, 4).unwrap()));
    }

    #[test]
    fn undefined_at_small_cutoff() {
        // q11 = zeta_3 and q12 q21 = zeta_3^2 give m_12 = 1 but need degree 3
        let t = tuple(&[vec![(3, 1), (3, 1)], vec![(3, 1), (2, 1)]]);
        assert!(matches!(reflect(&t, 0, 2), Err(Error::NotDefinedAtCutoff { .. })));
    }
}
