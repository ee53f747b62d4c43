//! Finite groups given by a multiplication table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

/// Index of an element of a [`FiniteGroup`].
pub type GroupElement = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    identity: GroupElement,
    table: Vec<Vec<GroupElement>>,
    inverses: Vec<GroupElement>,
    nonabelian: bool,
    /// Invariant factors when built as an abelian product of cyclic groups.
    invariant_factors: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// Z/n_1 x ... x Z/n_r; elements are tuples in lexicographic order.
    pub fn abelian(factors: &[usize]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::NotAGroup("cyclic factor of order 0".into()));
        }
        let order: usize = factors.iter().product();
        let tuples: Vec<Vec<usize>> = (0..order).map(|i| Self::digits(factors, i)).collect();
        let index = |t: &[usize]| t.iter().zip(factors).fold(0, |acc, (x, n)| acc * n + x);
        let table = tuples
            .iter()
            .map(|a| {
                tuples
                    .iter()
                    .map(|b| {
                        let s: Vec<usize> = a.iter().zip(b).zip(factors).map(|((x, y), n)| (x + y) % n).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table)?;
        g.invariant_factors = Some(factors.to_vec());
        Ok(g)
    }

    fn digits(factors: &[usize], mut i: usize) -> Vec<usize> {
        let mut t = vec![0; factors.len()];
        for k in (0..factors.len()).rev() {
            t[k] = i % factors[k];
            i /= factors[k];
        }
        t
    }

    /// Validates a Cayley table (closure, identity, inverses, associativity).
    pub fn from_table(table: Vec<Vec<GroupElement>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not closed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let nonabelian = (0..n).any(|a| (0..n).any(|b| table[a][b] != table[b][a]));
        Ok(FiniteGroup { order: n, identity, table, inverses, nonabelian, invariant_factors: None })
    }

    /// Symmetric group on `n` points, elements in lexicographic order of
    /// one-line notation; `(s t)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect())).collect())
            .collect();
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        !self.nonabelian
    }

    pub fn invariant_factors(&self) -> Option<&[usize]> {
        self.invariant_factors.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.table[a][b]
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inverses[a]
    }

    /// `g x g^-1`
    pub fn conjugate(&self, g: GroupElement, x: GroupElement) -> GroupElement {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: GroupElement) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Greedy generating set: scan elements in order, keep those outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        for a in self.elements() {
            if inside[a] {
                continue;
            }
            gens.push(a);
            let mut members: Vec<GroupElement> = (0..self.order).filter(|&x| inside[x]).collect();
            let mut k = 0;
            while k < members.len() {
                for &g in &gens {
                    let y = self.mul(members[k], g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                k += 1;
            }
        }
        gens
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Element with the given tuple of components in an abelian product group.
    pub fn element_from_tuple(&self, t: &[i64]) -> Result<GroupElement> {
        let f = self.invariant_factors.as_ref().ok_or_else(|| Error::Input("group has no product structure".into()))?;
        if t.len() != f.len() {
            return Err(Error::Input(format!("expected {} components, got {}", f.len(), t.len())));
        }
        Ok(t.iter().zip(f).fold(0, |acc, (x, n)| acc * n + x.rem_euclid(*n as i64) as usize))
    }

    pub fn tuple_of(&self, g: GroupElement) -> Option<Vec<usize>> {
        self.invariant_factors.as_ref().map(|f| Self::digits(f, g))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Diagonal braiding data: the group (Z/N)^theta with generators `g_i = e_i`
/// and characters `chi_j(g_i) = q[i][j]`.
#[derive(Clone, Debug)]
pub struct DiagonalData {
    pub group: FiniteGroup,
    pub generators: Vec<GroupElement>,
    /// `chars[j][g]` = chi_j(g)
    pub chars: Vec<Vec<CycScalar>>,
}

/// Builds diagonal braiding data from a theta x theta matrix of roots of unity
/// `q[i][j] = (N, k)` meaning z_N^k.
pub fn diagonal_type(q: &[Vec<(u32, i64)>]) -> Result<DiagonalData> {
    let theta = q.len();
    if theta == 0 || q.iter().any(|r| r.len() != theta) {
        return Err(Error::Input("braiding matrix must be square and nonempty".into()));
    }
    let orders: Vec<usize> = q
        .iter()
        .flatten()
        .map(|&(n, k)| {
            let k = k.rem_euclid(n as i64) as usize;
            n as usize / num_integer::gcd(n as usize, k)
        })
        .collect();
    let big_n = orders.iter().copied().fold(1, num_integer::lcm);
    let group = FiniteGroup::abelian(&vec![big_n; theta])?;
    let generators: Vec<GroupElement> = (0..theta)
        .map(|i| {
            let mut t = vec![0i64; theta];
            t[i] = 1;
            group.element_from_tuple(&t).unwrap()
        })
        .collect();
    let chars = (0..theta)
        .map(|j| {
            group
                .elements()
                .map(|g| {
                    let t = group.tuple_of(g).unwrap();
                    // chi_j(sum a_i e_i) = prod q_ij^a_i, exponents taken in a common conductor
                    let l = q.iter().map(|r| r[j].0 as usize).fold(1, num_integer::lcm) as u32;
                    let e: i64 = t.iter().enumerate().map(|(i, &a)| a as i64 * q[i][j].1 * (l / q[i][j].0) as i64).sum();
                    CycScalar::root_of_unity(l, e)
                })
                .collect()
        })
        .collect();
    Ok(DiagonalData { group, generators, chars })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_tuples_lex() {
        let g = FiniteGroup::abelian(&[2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.tuple_of(4), Some(vec![1, 1]));
        assert_eq!(g.identity(), 0);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
        let a = g.element_from_tuple(&[1, 2]).unwrap();
        assert_eq!(g.tuple_of(g.inv(a)), Some(vec![1, 1]));
    }

    #[test]
    fn symmetric_three_against_permutation_composition() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let perms = permutations(3);
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        for a in 0..6 {
            for b in 0..6 {
                let composed: Vec<usize> = (0..3).map(|i| perms[a][perms[b][i]]).collect();
                assert_eq!(perms[g.mul(a, b)], composed);
            }
            let x = 3;
            let conj: Vec<usize> = (0..3).map(|i| perms[a][perms[x][perms[g.inv(a)][i]]]).collect();
            assert_eq!(perms[g.conjugate(a, x)], conj);
        }
    }

    #[test]
    fn invalid_tables() {
        assert!(matches!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]]), Err(Error::NotAGroup(_))));
        assert!(matches!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn diagonal_characters() {
        let d = diagonal_type(&[vec![(2, 1), (1, 0)], vec![(2, 1), (2, 1)]]).unwrap();
        assert_eq!(d.group.order(), 4);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if (i, j) == (0, 1) { 1 } else { -1 };
                assert_eq!(d.chars[j][d.generators[i]], CycScalar::from_int(expect));
            }
        }
        let d3 = diagonal_type(&[vec![(3, 1)]]).unwrap();
        assert_eq!(d3.chars[0][2], CycScalar::root_of_unity(3, 2));
    }
}
