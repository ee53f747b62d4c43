//! The functor trading `R`-actions for `R^v`-coactions and back, through a
//! graded pairing of `R^v` (left) with `R` (right).
//!
//! The `R^v`-action of `xi` is `<xi, m_(-1)> m_(0)`. For the coaction take
//! `T(m) = sum_b xi^b (x) theta_R^-1(s_b) . m` with `xi^b` dual to the basis
//! `s_b`, so that `r m = <T(m)_(-1), theta_R(r)> T(m)_(0)`, and apply the
//! double braiding of `R^v` and `X` over `kG`.

use std::sync::Arc;

use crate::bosonization::{basis_vec, Bosonization, Check};
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;
use crate::pairing::DualPairing;
use crate::relative::{f_delta, f_mu, is_morphism, relative_braiding, relative_tensor, relative_validate, respects_grading, RelativeYDModule};
use crate::scalar::CycScalar;

fn check_support(x: &RelativeYDModule, p: &DualPairing) -> Result<()> {
    if !Arc::ptr_eq(x.r(), p.right()) && x.r().dims() != p.right().dims() {
        return Err(Error::OmegaInconsistent("module is not over the right side of the pairing".into()));
    }
    let need = x.action_bound().max(x.coaction_bound());
    if need > p.cutoff() {
        return Err(Error::CutoffExceeded { needed: need, cutoff: p.cutoff() });
    }
    Ok(())
}

/// `Omega(X)` without validation.
pub fn omega_structure(x: &RelativeYDModule, p: &DualPairing) -> Result<RelativeYDModule> {
    check_support(x, p)?;
    let (l, r) = (p.left(), p.right());
    let g = x.base().group().clone();
    let n = x.dim();
    let zero = || CycMatrix::zeros(n, n);
    let mut act = Vec::with_capacity(l.cutoff() + 1);
    let mut coact = Vec::with_capacity(l.cutoff() + 1);
    for d in 0..=l.cutoff() {
        if d > p.cutoff() {
            act.push(vec![zero(); l.dim(d)]);
            coact.push(vec![zero(); l.dim(d)]);
            continue;
        }
        let gram = p.gram(d);
        let ops = (0..l.dim(d))
            .map(|a| {
                let mut acc = zero();
                for (b, v) in gram.row(a) {
                    acc = acc.add(&x.coact(d, *b).scale(v));
                }
                acc
            })
            .collect();
        act.push(ops);

        let mut ops = vec![zero(); l.dim(d)];
        if (0..r.dim(d)).any(|b| !x.act(d, b).is_zero()) {
            let duals = p.dual_basis(d)?;
            let theta_inv = r.theta_inverse(d);
            for b in 0..r.dim(d) {
                let mut t = zero();
                for (c, v) in theta_inv.column(b) {
                    t = t.add(&x.act(d, c).scale(&v));
                }
                if t.is_zero() {
                    continue;
                }
                let g_xi = g.inv(r.gdegree(d, b));
                let xi = duals.column(b);
                // c^2(xi (x) y) = (g_xi g_y g_xi^-1) . xi (x) g_xi . y
                for &h in &present(x) {
                    let ty = x.degree_projection(g.mul(r.gdegree(d, b), h)).mul(&t).mul(&x.degree_projection(h));
                    if ty.is_zero() {
                        continue;
                    }
                    let gy = g.mul(r.gdegree(d, b), h);
                    let moved = l.action(d, g.conjugate(g_xi, gy)).mul_svec(&xi);
                    let right = x.base().action(g_xi).mul(&ty);
                    for (a, v) in moved {
                        ops[a] = ops[a].add(&right.scale(&v));
                    }
                }
            }
        }
        coact.push(ops);
    }
    RelativeYDModule::new(l.clone(), x.base().clone(), act, coact)
}

fn present(x: &RelativeYDModule) -> Vec<usize> {
    let mut d = x.base().degrees().to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

/// `Omega(X)`, a Yetter-Drinfeld module over `R^v # kG` on the same space.
pub fn omega_object(x: &RelativeYDModule, p: &DualPairing) -> Result<RelativeYDModule> {
    let y = omega_structure(x, p)?;
    if let Some(c) = relative_validate(&y).into_iter().find(|c| !c.passed) {
        return Err(Error::OmegaInconsistent(format!("{}: {}", c.name, c.detail)));
    }
    Ok(y)
}

/// `omega(m (x) n) = S^-1 S_R(n_(-1)) . m (x) n_(0)` on `M (x) N`.
pub fn omega_mu(m: &RelativeYDModule, n: &RelativeYDModule, a: &Bosonization) -> CycMatrix {
    let r = a.r();
    let e = a.group().identity();
    let mut acc = CycMatrix::zeros(m.dim() * n.dim(), m.dim() * n.dim());
    for d in 0..=r.cutoff() {
        for b in 0..r.dim(d) {
            let cb = n.coact(d, b);
            if cb.is_zero() {
                continue;
            }
            let s = a.antipode_inv(&a.embed(d, &r.antipode(d).column(b), e));
            let mut op = CycMatrix::zeros(m.dim(), m.dim());
            for (i, v) in s {
                op = op.add(&m.a_action(a, i).scale(&v));
            }
            acc = acc.add(&op.kron(cb));
        }
    }
    acc
}

pub fn omega_mu_inverse(m: &RelativeYDModule, n: &RelativeYDModule, a: &Bosonization) -> Result<CycMatrix> {
    omega_mu(m, n, a).inverse()
}

/// Transported structure on `Omega(B)`: multiplication `mu omega`,
/// comultiplication `omega^-1 Delta`.
#[derive(Clone, Debug)]
pub struct Transported {
    pub object: RelativeYDModule,
    pub mu: CycMatrix,
    pub delta: CycMatrix,
}

pub fn transport_bialgebra(b: &RelativeYDModule, mu: &CycMatrix, delta: &CycMatrix, unit: &[(usize, CycScalar)], counit: &[CycScalar], p: &DualPairing) -> Result<Transported> {
    let a = Bosonization::new(b.r().clone());
    let object = omega_object(b, p)?;
    let w = omega_mu(b, b, &a);
    let t = Transported { object, mu: mu.mul(&w), delta: w.inverse()?.mul(delta) };
    let suite = crate::coinvariants::braided_bialgebra_suite(&t.object, &t.mu, &t.delta, &unit.to_vec(), counit)?;
    if let Some(c) = suite.iter().find(|c| !c.passed) {
        return Err(Error::TransportInconsistent(c.name.clone()));
    }
    Ok(t)
}

/// Squares that make `(Omega, omega)` a braided monoidal functor, checked on
/// all pairs and triples from `samples`, plus naturality for the given
/// morphisms `(f, source, target)` between samples.
pub fn verify_braided_monoidal(samples: &[RelativeYDModule], morphisms: &[(CycMatrix, usize, usize)], p: &DualPairing) -> Result<Vec<Check>> {
    let a = Bosonization::new(p.right().clone());
    let om: Vec<RelativeYDModule> = samples.iter().map(|x| omega_object(x, p)).collect::<Result<_>>()?;
    let mut morph_ok = true;
    let mut square_ok = true;
    let mut inverse_ok = true;
    for (i, m) in samples.iter().enumerate() {
        for (j, n) in samples.iter().enumerate() {
            let w = omega_mu(m, n, &a);
            let mn = relative_tensor(m, n)?;
            let omn = omega_object(&mn, p)?;
            let tensor_om = relative_tensor(&om[i], &om[j])?;
            morph_ok &= is_morphism(&w, &tensor_om, &omn);
            inverse_ok &= w.mul(&w.inverse()?).is_identity();
            // Omega(c_{M,N}) omega_{M,N} = omega_{N,M} c_{Omega M, Omega N}
            let lhs = relative_braiding(m, n).mul(&w);
            let rhs = omega_mu(n, m, &a).mul(&relative_braiding(&om[i], &om[j]));
            square_ok &= lhs == rhs;
        }
    }
    let mut coherence_ok = true;
    for m in samples {
        for n in samples {
            for q in samples {
                let mn = relative_tensor(m, n)?;
                let nq = relative_tensor(n, q)?;
                let lhs = omega_mu(&mn, q, &a).mul(&omega_mu(m, n, &a).kron(&CycMatrix::identity(q.dim())));
                let rhs = omega_mu(m, &nq, &a).mul(&CycMatrix::identity(m.dim()).kron(&omega_mu(n, q, &a)));
                coherence_ok &= lhs == rhs;
            }
        }
    }
    let mut natural_ok = true;
    let mut functor_ok = true;
    for (f, s, t) in morphisms {
        functor_ok &= is_morphism(f, &samples[*s], &samples[*t]) && is_morphism(f, &om[*s], &om[*t]);
        for (k, n) in samples.iter().enumerate() {
            let fi = f.kron(&CycMatrix::identity(n.dim()));
            natural_ok &= omega_mu(&samples[*t], n, &a).mul(&fi) == fi.mul(&omega_mu(&samples[*s], n, &a));
            let if_ = CycMatrix::identity(n.dim()).kron(f);
            natural_ok &= omega_mu(n, &samples[*t], &a).mul(&if_) == if_.mul(&omega_mu(n, &samples[*s], &a));
            let _ = k;
        }
    }
    let unit = RelativeYDModule::trivial(p.right().clone(), crate::yd::YDModule::unit(samples[0].base().group().clone()));
    let unit_ok = samples.iter().all(|m| omega_mu(&unit, m, &a).is_identity() && omega_mu(m, &unit, &a).is_identity());
    Ok(vec![
        Check::new("omega is a morphism Omega(M) (x) Omega(N) -> Omega(M (x) N)", morph_ok, ""),
        Check::new("omega invertible", inverse_ok, ""),
        Check::new("braided square", square_ok, ""),
        Check::new("coherence on triples", coherence_ok, ""),
        Check::new("unit constraints", unit_ok, ""),
        Check::new("omega natural", natural_ok, ""),
        Check::new("Omega is the identity on morphisms", functor_ok, ""),
    ])
}

/// Image of `Omega(X)` under the functor of the inverse pairing, with the
/// comparison map `J = theta^A theta^H: X -> Omega'(Omega(X))`.
pub fn round_trip(x: &RelativeYDModule, p: &DualPairing, q: &DualPairing) -> Result<(RelativeYDModule, CycMatrix)> {
    let back = omega_object(&omega_object(x, p)?, q)?;
    let a = Bosonization::new(x.r().clone());
    let j = x.theta_a(&a).mul(&crate::yd::yd_theta(x.base()));
    Ok((back, j))
}

/// Whether `j: X -> Y` identifies the two modules structure map by structure map.
pub fn same_structure(x: &RelativeYDModule, y: &RelativeYDModule, j: &CycMatrix) -> bool {
    is_morphism(j, x, y) && j.is_invertible()
}

/// Filtration swap and grading negation for a graded object `W`.
pub fn omega_grading_checks(w: &RelativeYDModule, grading: &[i64], p: &DualPairing) -> Result<Vec<Check>> {
    let ow = omega_object(w, p)?;
    let top = (0..=p.cutoff()).collect::<Vec<_>>();
    let swap1 = top.iter().all(|&n| f_mu(&ow, n) == f_delta(w, n));
    let swap2 = top.iter().all(|&n| f_delta(&ow, n) == f_mu(w, n));
    let neg: Vec<i64> = grading.iter().map(|g| -g).collect();
    Ok(vec![
        Check::new("F^mu_n Omega(W) = F^delta_n W", swap1, ""),
        Check::new("F^delta_n Omega(W) = F^mu_n W", swap2, ""),
        Check::new("Omega(W)(n) = W(-n)", respects_grading(w, grading, 1) && respects_grading(&ow, &neg, 1), ""),
    ])
}

/// The transported multiplication restricted to `1 (x) x` and primitives
/// of the transported comultiplication in `space`.
pub fn transported_primitives(t: &Transported, unit: &[(usize, CycScalar)]) -> crate::matrix::Subspace {
    let n = t.object.dim();
    let u = CycMatrix::from_columns(n, &[unit.to_vec()]);
    let id = CycMatrix::identity(n);
    // Delta(x) - x (x) 1 - 1 (x) x = 0
    let cond = t.delta.sub(&id.kron(&u)).sub(&u.kron(&id));
    let _ = basis_vec(0);
    crate::matrix::Subspace::from_matrix_rows(&cond.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonization::all_passed;
    use crate::coinvariants::coinvariants;
    use crate::group::diagonal_type;
    use crate::nichols::{nichols_truncate, Mode};
    use crate::pairing::{canonical_pairing, inverse_pairing};
    use crate::yd::{diagonal_modules, yd_dual, YDModule};

    #[test]
    fn e1_omega_of_k() {
        let ms = diagonal_modules(&diagonal_type(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        let big = Arc::new(nichols_truncate(&m, Some(&tags), 5, Mode::Nichols).unwrap());
        let k = coinvariants(big, 0).unwrap();
        let h = k.hopf_object().unwrap();
        let r = k.sub().clone();
        let l = Arc::new(nichols_truncate(&yd_dual(r.module()), None, r.cutoff(), Mode::Nichols).unwrap());
        let p = canonical_pairing(l, r).unwrap();
        let ok = omega_object(&h.object, &p).unwrap();
        assert_eq!(ok.dim(), h.object.dim());
        let t = transport_bialgebra(&h.object, &h.mu, &h.delta, &h.unit, &h.counit, &p).unwrap();
        assert_eq!(t.object.dim(), 4);
        let checks = verify_braided_monoidal(std::slice::from_ref(&h.object), &[], &p).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
        let q = inverse_pairing(&p);
        let (back, j) = round_trip(&h.object, &p, &q).unwrap();
        assert!(same_structure(&h.object, &back, &j));
    }

    #[test]
    fn round_trip_needs_the_theta_maps() {
        let x = crate::relative::tests::adjoint(&[vec![(3, 1)]], 4);
        let r = x.r().clone();
        let l = Arc::new(nichols_truncate(&yd_dual(r.module()), None, r.cutoff(), Mode::Nichols).unwrap());
        let p = canonical_pairing(l, r).unwrap();
        let (back, j) = round_trip(&x, &p, &inverse_pairing(&p)).unwrap();
        assert!(!same_structure(&x, &back, &CycMatrix::identity(x.dim())));
        assert!(same_structure(&x, &back, &j));
        let checks = verify_braided_monoidal(&[x.clone(), h_trivial(&x)], &[], &p).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
    }

    fn h_trivial(x: &RelativeYDModule) -> RelativeYDModule {
        RelativeYDModule::trivial(x.r().clone(), YDModule::unit(x.base().group().clone()))
    }
}
