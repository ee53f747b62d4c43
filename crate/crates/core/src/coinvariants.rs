//! Coinvariants `K = B(M)^{co B(N)}` of the projection of `B(M)` onto the
//! Nichols algebra of one summand `N = M_i`, with the structure of a
//! Yetter-Drinfeld module over `B(N) # kG` and of a braided bialgebra there.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bosonization::{basis_vec, split2, Bosonization, Check};
use crate::error::{Error, Result};
use crate::matrix::{svec_collect, CycMatrix, SVec, Subspace};
use crate::nichols::{nichols_truncate, NicholsTruncation};
use crate::relative::RelativeYDModule;
use crate::yd::YDModule;

#[derive(Clone, Debug)]
pub struct Coinvariants {
    big: Arc<NicholsTruncation>,
    pivot: usize,
    sub: Arc<NicholsTruncation>,
    /// Letters of `big` spanning `N`, in the order of the basis of `N`.
    letters: Vec<usize>,
    /// `K(n)` inside `B(M)(n)`.
    spaces: Vec<Subspace>,
}

/// A subobject of `B(M)` given by one subspace per degree; its basis is the
/// concatenation of the echelon bases.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub spaces: Vec<Subspace>,
    pub offsets: Vec<usize>,
}

impl Embedded {
    pub fn new(spaces: Vec<Subspace>) -> Self {
        let mut offsets = Vec::with_capacity(spaces.len() + 1);
        let mut acc = 0;
        for s in &spaces {
            offsets.push(acc);
            acc += s.dim();
        }
        offsets.push(acc);
        Embedded { spaces, offsets }
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// `(degree, coordinates in B(M)(degree))` of a basis element.
    pub fn element(&self, i: usize) -> (usize, SVec) {
        let n = self.offsets.partition_point(|&o| o <= i) - 1;
        (n, self.spaces[n].basis().row(i - self.offsets[n]).clone())
    }

    /// Coordinates of a homogeneous element of degree `n`.
    pub fn coordinates(&self, n: usize, v: &SVec) -> Result<SVec> {
        if v.is_empty() {
            return Ok(Vec::new());
        }
        let s = self.spaces.get(n).ok_or_else(|| Error::InvalidProjection(format!("degree {n} outside the subobject")))?;
        let c = s.coordinates(v).ok_or_else(|| Error::InvalidProjection(format!("element of degree {n} leaves the subobject")))?;
        Ok(c.into_iter().map(|(k, x)| (self.offsets[n] + k, x)).collect())
    }
}

pub fn coinvariants(big: Arc<NicholsTruncation>, pivot: usize) -> Result<Coinvariants> {
    let tags = big.tags();
    let letters: Vec<usize> = (0..tags.len()).filter(|&k| tags[k] == pivot).collect();
    if letters.is_empty() {
        return Err(Error::InvalidProjection(format!("no summand with index {pivot}")));
    }
    let unit_vectors: Vec<SVec> = letters.iter().map(|&k| basis_vec(k)).collect();
    let (n_module, _) = big.module().submodule(&unit_vectors).map_err(|_| Error::InvalidProjection("summand is not a submodule".into()))?;
    let sub = Arc::new(nichols_truncate(&n_module, None, big.cutoff(), big.mode())?);
    let mut k = Coinvariants { big, pivot, sub, letters, spaces: Vec::new() };
    let pis: Vec<CycMatrix> = (0..=k.big.cutoff()).map(|d| k.pi(d)).collect();
    for n in 0..=k.big.cutoff() {
        let mut blocks: BTreeMap<(Vec<u32>, usize), Vec<usize>> = BTreeMap::new();
        for w in 0..k.big.dim(n) {
            blocks.entry((k.big.multidegree(n, w).to_vec(), k.big.gdegree(n, w))).or_default().push(w);
        }
        let mut cond = CycMatrix::zeros(0, k.big.dim(n));
        for b in 1..=n {
            let lift = CycMatrix::identity(k.big.dim(n - b)).kron(&pis[b]);
            cond = cond.vstack(&lift.mul(k.big.comult(n, n - b)));
        }
        let mut vecs = Vec::new();
        for cols in blocks.values() {
            let ker = cond.select_cols(cols).kernel();
            for row in ker.row_data() {
                vecs.push(row.iter().map(|(j, v)| (cols[*j], v.clone())).collect::<SVec>());
            }
        }
        k.spaces.push(Subspace::span(k.big.dim(n), &vecs));
    }
    Ok(k)
}

impl Coinvariants {
    pub fn big(&self) -> &Arc<NicholsTruncation> {
        &self.big
    }

    pub fn sub(&self) -> &Arc<NicholsTruncation> {
        &self.sub
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn space(&self, n: usize) -> &Subspace {
        &self.spaces[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn embedded(&self) -> Embedded {
        Embedded::new(self.spaces.clone())
    }

    /// Letter of `B(M)` for a letter of `B(N)`.
    pub fn big_letter(&self, l: usize) -> usize {
        self.letters[l]
    }

    /// `pi: B(M)(d) -> B(N)(d)`, killing every word with a letter outside `N`.
    pub fn pi(&self, d: usize) -> CycMatrix {
        let cols: Vec<SVec> = (0..self.big.dim(d))
            .map(|w| {
                let mapped: Option<Vec<usize>> = self.big.letters(d, w).iter().map(|l| self.letters.iter().position(|x| x == l)).collect();
                mapped.map_or_else(Vec::new, |m| self.sub.project_word(d, &m))
            })
            .collect();
        CycMatrix::from_columns(self.sub.dim(d), &cols)
    }

    /// `iota: B(N)(d) -> B(M)(d)`.
    pub fn iota(&self, d: usize) -> CycMatrix {
        let cols: Vec<SVec> = (0..self.sub.dim(d))
            .map(|w| {
                let mapped: Vec<usize> = self.sub.letters(d, w).iter().map(|&l| self.letters[l]).collect();
                self.big.project_word(d, &mapped)
            })
            .collect();
        CycMatrix::from_columns(self.big.dim(d), &cols)
    }

    /// Dimensions of `K` per multidegree.
    pub fn multidegree_dims(&self) -> BTreeMap<Vec<u32>, usize> {
        let mut out = BTreeMap::new();
        for (n, s) in self.spaces.iter().enumerate() {
            for row in s.basis().row_data() {
                *out.entry(self.big.multidegree(n, row[0].0).to_vec()).or_insert(0) += 1;
            }
        }
        out
    }

    fn ad_letter(&self, l: usize, n: usize, x: &SVec) -> Result<SVec> {
        if x.is_empty() {
            return Ok(Vec::new());
        }
        if n + 1 > self.big.cutoff() {
            self.big.check_degree(n + 1)?;
            return Ok(Vec::new());
        }
        self.big.ad_action(&self.big.letter(self.letters[l]), n, x)
    }

    /// Action of the basis element `b` of `B(N)(d)` by iterated braided adjoints.
    pub fn ad(&self, d: usize, b: usize, n: usize, x: &SVec) -> Result<SVec> {
        let mut cur = x.clone();
        for (step, l) in self.sub.letters(d, b).into_iter().rev().enumerate() {
            cur = self.ad_letter(l, n + step, &cur)?;
        }
        Ok(cur)
    }

    /// `(pi (x) id) Delta` restricted to degree `n`: coefficient vectors in
    /// `B(M)(n-d)` for each basis element of `B(N)(d)`.
    fn coaction_parts(&self, n: usize, d: usize, x: &SVec) -> Vec<SVec> {
        let rest = self.big.dim(n - d);
        let t = self.pi(d).kron(&CycMatrix::identity(rest)).mul_svec(&self.big.comult(n, d).mul_svec(x));
        let mut parts = vec![Vec::new(); self.sub.dim(d)];
        for (p, v) in t {
            let (b, y) = split2(p, rest);
            parts[b].push((y, v));
        }
        parts
    }

    /// Structure of a Yetter-Drinfeld module over `B(N) # kG` on a subobject
    /// of `B(M)` closed under the adjoint action and the coaction.
    pub fn relative_structure(&self, e: &Embedded) -> Result<RelativeYDModule> {
        let dim = e.dim();
        let group = self.big.module().group().clone();
        let elems: Vec<(usize, SVec)> = (0..dim).map(|i| e.element(i)).collect();
        let degrees = elems.iter().map(|(n, v)| self.big.gdegree(*n, v[0].0)).collect();
        let mut action = Vec::with_capacity(group.order());
        for g in group.elements() {
            let cols: Vec<SVec> = elems.iter().map(|(n, v)| e.coordinates(*n, &self.big.action(*n, g).mul_svec(v))).collect::<Result<_>>()?;
            action.push(CycMatrix::from_columns(dim, &cols));
        }
        let base = YDModule::new(group, degrees, action)?;
        let dd = self.sub.cutoff();
        let mut act = Vec::with_capacity(dd + 1);
        let mut coact: Vec<Vec<Vec<SVec>>> = (0..=dd).map(|d| vec![vec![Vec::new(); dim]; self.sub.dim(d)]).collect();
        for d in 0..=dd {
            let mut ops = Vec::with_capacity(self.sub.dim(d));
            for b in 0..self.sub.dim(d) {
                let cols: Vec<SVec> = elems
                    .iter()
                    .map(|(n, v)| {
                        let y = self.ad(d, b, *n, v)?;
                        if y.is_empty() {
                            Ok(Vec::new())
                        } else {
                            e.coordinates(n + d, &y)
                        }
                    })
                    .collect::<Result<_>>()?;
                ops.push(CycMatrix::from_columns(dim, &cols));
            }
            act.push(ops);
        }
        for (i, (n, v)) in elems.iter().enumerate() {
            for d in 0..=(*n).min(dd) {
                for (b, part) in self.coaction_parts(*n, d, v).into_iter().enumerate() {
                    coact[d][b][i] = e.coordinates(n - d, &part)?;
                }
            }
        }
        let coact = coact.into_iter().map(|ops| ops.into_iter().map(|cols| CycMatrix::from_columns(dim, &cols)).collect()).collect();
        RelativeYDModule::new(self.sub.clone(), base, act, coact)
    }

    /// `K` with all its structure; requires `B(M)` to vanish inside the cutoff.
    pub fn hopf_object(&self) -> Result<CoinvariantAlgebra> {
        if self.big.vanishes_from().is_none() {
            return Err(Error::CutoffExceeded { needed: self.big.cutoff() + 1, cutoff: self.big.cutoff() });
        }
        let e = self.embedded();
        let object = self.relative_structure(&e)?;
        let dim = e.dim();
        let elems: Vec<(usize, SVec)> = (0..dim).map(|i| e.element(i)).collect();
        let mut mu_cols = Vec::with_capacity(dim * dim);
        for (n1, x) in &elems {
            for (n2, y) in &elems {
                let p = self.big.mul(*n1, x, *n2, y)?;
                mu_cols.push(if p.is_empty() { Vec::new() } else { e.coordinates(n1 + n2, &p)? });
            }
        }
        let mu = CycMatrix::from_columns(dim, &mu_cols);

        // Delta_K(x) = x_(1) S(iota pi (x_(2))) (x) x_(3) inside A = B(M) # kG
        let a = Bosonization::new(self.big.clone());
        let da = a.dim();
        let g = a.group().clone();
        let iotas: Vec<CycMatrix> = (0..=self.big.cutoff()).map(|d| self.iota(d).mul(&self.pi(d))).collect();
        let mut delta_cols = Vec::with_capacity(dim);
        for (n, x) in &elems {
            let xa = a.embed(*n, x, g.identity());
            let mut acc = Vec::new();
            for (t, v) in a.comul2(&xa) {
                let (ij, k) = split2(t, da);
                let (i, j) = split2(ij, da);
                let (dj, kj, gj) = a.decode(j);
                let mid = a.embed(dj, &iotas[dj].column(kj), gj);
                let left = a.mul(&basis_vec(i), &a.antipode(&mid))?;
                for (l, w) in left {
                    acc.push((l * da + k, &v * &w));
                }
            }
            delta_cols.push(self.tensor_coordinates(&e, &a, &svec_collect(acc))?);
        }
        let delta = CycMatrix::from_columns(dim * dim, &delta_cols);
        let unit = e.coordinates(0, &basis_vec(0))?;
        let counit = (0..dim).map(|i| if elems[i].0 == 0 { elems[i].1[0].1.clone() } else { crate::scalar::CycScalar::zero() }).collect();
        Ok(CoinvariantAlgebra { embedded: e, object, mu, delta, unit, counit })
    }

    /// Coordinates in `K (x) K` of an element of `A (x) A` lying in `(K # 1) (x) (K # 1)`.
    fn tensor_coordinates(&self, e: &Embedded, a: &Bosonization, t: &SVec) -> Result<SVec> {
        let da = a.dim();
        let dim = e.dim();
        let id = a.group().identity();
        // group by (degree of right factor, right basis index), collect left parts
        let mut by_right: BTreeMap<(usize, usize), BTreeMap<usize, SVec>> = BTreeMap::new();
        for (p, v) in t {
            let (i, j) = split2(*p, da);
            let (n1, k1, g1) = a.decode(i);
            let (n2, k2, g2) = a.decode(j);
            if g1 != id || g2 != id {
                return Err(Error::InvalidProjection("coproduct of a coinvariant leaves K (x) K".into()));
            }
            by_right.entry((n2, k2)).or_default().entry(n1).or_default().push((k1, v.clone()));
        }
        // left coordinates, then regroup by left K index
        let mut by_left: BTreeMap<usize, BTreeMap<usize, SVec>> = BTreeMap::new();
        for ((n2, k2), lefts) in by_right {
            for (n1, part) in lefts {
                for (kl, c) in e.coordinates(n1, &svec_collect(part))? {
                    by_left.entry(kl).or_default().entry(n2).or_default().push((k2, c));
                }
            }
        }
        let mut out = Vec::new();
        for (kl, rights) in by_left {
            for (n2, part) in rights {
                for (kr, c) in e.coordinates(n2, &svec_collect(part))? {
                    out.push((kl * dim + kr, c));
                }
            }
        }
        Ok(svec_collect(out))
    }

    /// Multiplication `K (x) B(N) -> B(M)` is bijective in every degree.
    pub fn radford_check(&self) -> Result<Check> {
        let mut detail = String::new();
        for n in 0..=self.big.cutoff() {
            let mut cols = Vec::new();
            for a in 0..=n {
                let emb = self.iota(n - a);
                for x in self.spaces[a].basis().row_data() {
                    for b in 0..self.sub.dim(n - a) {
                        cols.push(self.big.mul(a, x, n - a, &emb.column(b))?);
                    }
                }
            }
            let m = CycMatrix::from_columns(self.big.dim(n), &cols);
            if cols.len() != self.big.dim(n) || m.rank() != cols.len() {
                detail = format!("degree {n}: {} products for dimension {}, rank {}", cols.len(), self.big.dim(n), m.rank());
                break;
            }
        }
        Ok(Check::new("K (x) B(N) -> B(M) bijective", detail.is_empty(), detail))
    }
}

/// `K` as an object over `B(N) # kG` with multiplication `K (x) K -> K`,
/// comultiplication `K -> K (x) K`, unit and counit.
#[derive(Clone, Debug)]
pub struct CoinvariantAlgebra {
    pub embedded: Embedded,
    pub object: RelativeYDModule,
    pub mu: CycMatrix,
    pub delta: CycMatrix,
    pub unit: SVec,
    pub counit: Vec<crate::scalar::CycScalar>,
}

/// Braided bialgebra axioms for `(X, mu, delta, unit, counit)` in the
/// category over `R # kG`, braiding included.
pub fn braided_bialgebra_suite(x: &RelativeYDModule, mu: &CycMatrix, delta: &CycMatrix, unit: &SVec, counit: &[crate::scalar::CycScalar]) -> Result<Vec<Check>> {
    use crate::relative::{is_morphism, relative_braiding, relative_tensor};
    let n = x.dim();
    let id = CycMatrix::identity(n);
    let u = CycMatrix::from_columns(n, std::slice::from_ref(unit));
    let eps = CycMatrix::from_dense(vec![counit.to_vec()]);
    let mut out = Vec::new();
    out.push(Check::new("associativity", mu.mul(&mu.kron(&id)) == mu.mul(&id.kron(mu)), ""));
    out.push(Check::new("unit", mu.mul(&u.kron(&id)) == id && mu.mul(&id.kron(&u)) == id, ""));
    out.push(Check::new("coassociativity", delta.kron(&id).mul(delta) == id.kron(delta).mul(delta), ""));
    out.push(Check::new("counit", eps.kron(&id).mul(delta) == id && id.kron(&eps).mul(delta) == id, ""));
    let c = relative_braiding(x, x);
    let middle = id.kron(&c).kron(&id);
    let lhs = delta.mul(mu);
    let rhs = mu.kron(mu).mul(&middle).mul(&delta.kron(delta));
    out.push(Check::new("Delta(x y) = Delta(x) Delta(y) with braiding", lhs == rhs, ""));
    let xx = relative_tensor(x, x)?;
    out.push(Check::new("multiplication is a morphism", is_morphism(mu, &xx, x), ""));
    out.push(Check::new("comultiplication is a morphism", is_morphism(delta, x, &xx), ""));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonization::all_passed;
    use crate::group::diagonal_type;
    use crate::nichols::Mode;
    use crate::relative::relative_validate;
    use crate::yd::diagonal_modules;

    fn e1(d: usize) -> Arc<NicholsTruncation> {
        let ms = diagonal_modules(&diagonal_type(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]).unwrap()).unwrap();
        let (m, tags) = YDModule::direct_sum(&ms).unwrap();
        Arc::new(nichols_truncate(&m, Some(&tags), d, Mode::Nichols).unwrap())
    }

    #[test]
    fn e1_coinvariants() {
        let k = coinvariants(e1(5), 0).unwrap();
        assert_eq!(k.dims(), vec![1, 1, 1, 1, 0, 0]);
        assert!(k.radford_check().unwrap().passed);
        let h = k.hopf_object().unwrap();
        let v = relative_validate(&h.object);
        assert!(all_passed(&v), "{v:?}");
        let s = braided_bialgebra_suite(&h.object, &h.mu, &h.delta, &h.unit, &h.counit).unwrap();
        assert!(all_passed(&s), "{s:?}");
    }

    #[test]
    fn bad_pivot() {
        assert!(matches!(coinvariants(e1(3), 7), Err(Error::InvalidProjection(_))));
    }
}
