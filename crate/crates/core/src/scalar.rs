//! Exact elements of cyclotomic fields.
//!
//! An element of Q(z_N) is stored as its residue modulo the N-th cyclotomic
//! polynomial, i.e. `phi(N)` rational coefficients in the power basis
//! `1, z, ..., z^(phi(N)-1)`. Conductors are normalised so that they are never
//! congruent to 2 mod 4 (Q(z_2m) = Q(z_m) for odd m) and rational elements
//! always carry conductor 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (lowest degree first, monic) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &den);
        }
    }
    let p = Arc::new(num);
    phi_cache().write().unwrap().insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    q
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r as usize
}

fn normal_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Exact element of a cyclotomic field Q(z_N).
#[derive(Clone, Debug)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        CycScalar { conductor: 1, coeffs: vec![BigRational::from_integer(BigInt::from(v))] }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycScalar { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// z_n^k where z_n = exp(2 pi i / n).
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        if n % 4 == 2 {
            // z_2m = -z_m^((m+1)/2) for odd m
            let m = n / 2;
            let e = ((k as u64 * (m as u64).div_ceil(2)) % m as u64) as i64;
            let base = Self::root_of_unity(m, e);
            return if k % 2 == 1 { -base } else { base };
        }
        let mut coeffs = vec![BigRational::zero(); n as usize];
        coeffs[k as usize] = BigRational::one();
        let mut s = CycScalar { conductor: n, coeffs: reduce_mod_phi(coeffs, n) };
        s.normalize();
        s
    }

    /// Builds an element from a coefficient vector in the power basis of Q(z_n);
    /// the vector may have any length and is reduced.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        let mut acc = CycScalar::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&CycScalar::root_of_unity(n, k as i64) * &CycScalar::from_rational(c));
            }
        }
        acc
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    fn normalize(&mut self) {
        if self.conductor > 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            let c0 = std::mem::take(&mut self.coeffs[0]);
            self.conductor = 1;
            self.coeffs = vec![c0];
        }
    }

    /// The same element written over Q(z_l); `l` must be a multiple of the conductor.
    pub fn lift(&self, l: u32) -> Vec<BigRational> {
        let l = normal_conductor(l);
        if l == self.conductor {
            return self.coeffs.clone();
        }
        assert!(l.is_multiple_of(self.conductor), "cannot lift conductor {} to {}", self.conductor, l);
        let step = (l / self.conductor) as usize;
        let mut big = vec![BigRational::zero(); l as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            big[(k * step) % l as usize] += c;
        }
        reduce_mod_phi(big, l)
    }

    fn merged(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        if self.conductor == other.conductor {
            return (self.conductor, self.coeffs.clone(), other.coeffs.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (l, self.lift(l), other.lift(l))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(CycScalar { conductor: 1, coeffs: vec![self.coeffs[0].recip()] });
        }
        // Solve (multiplication by self) * x = 1 over Q.
        let n = self.conductor;
        let d = self.coeffs.len();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        for k in 0..d {
            let mut basis = vec![BigRational::zero(); d];
            basis[k] = BigRational::one();
            cols.push(poly_mul_mod(&self.coeffs, &basis, n));
        }
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !aug[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(c, p);
            let pv = aug[c][c].clone();
            for v in aug[c].iter_mut() {
                *v = &*v / &pv;
            }
            for r in 0..d {
                if r != c && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    for j in c..=d {
                        let t = &f * &aug[c][j];
                        aug[r][j] -= t;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|mut r| r.pop().unwrap()).collect();
        let mut s = CycScalar { conductor: n, coeffs };
        s.normalize();
        Ok(s)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Parses `"z(N,k)"`, an integer, a fraction `"p/q"`, or a sum/difference of
    /// terms `c*z(N,k)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Input("empty scalar literal".to_string()));
        }
        let mut acc = CycScalar::zero();
        let mut start = 0;
        let bytes = t.as_bytes();
        let mut depth = 0;
        let mut pieces = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start => {
                    pieces.push(&t[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&t[start..]);
        for p in pieces {
            let (neg, body) = match p.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, p.strip_prefix('+').unwrap_or(p)),
            };
            let mut term = CycScalar::one();
            for f in body.split('*') {
                term = &term * &parse_factor(f, text)?;
            }
            acc = if neg { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }
}

fn parse_factor(f: &str, whole: &str) -> Result<CycScalar> {
    let bad = || Error::Input(format!("bad scalar literal `{whole}`"));
    if let Some(inner) = f.strip_prefix("z(").and_then(|r| r.strip_suffix(')')) {
        let mut it = inner.split(',');
        let n: u32 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let k: i64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if it.next().is_some() || n == 0 {
            return Err(bad());
        }
        return Ok(CycScalar::root_of_unity(n, k));
    }
    if let Some((p, q)) = f.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(CycScalar::from_rational(BigRational::new(p, q)));
    }
    let p: BigInt = f.parse().map_err(|_| bad())?;
    Ok(CycScalar::from_rational(BigRational::from_integer(p)))
}

fn reduce_mod_phi(mut p: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    if p.len() < d {
        p.resize(d, BigRational::zero());
        return p;
    }
    for k in (d..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[k]);
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                p[k - d + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    p.truncate(d);
    p
}

fn poly_mul_mod(a: &[BigRational], b: &[BigRational], n: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    reduce_mod_phi(out, n)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.merged(other);
        a == b
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return CycScalar { conductor: 1, coeffs: vec![&self.coeffs[0] + &rhs.coeffs[0]] };
        }
        let (n, mut a, b) = self.merged(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        let mut s = CycScalar { conductor: n, coeffs: a };
        s.normalize();
        s
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return CycScalar { conductor: 1, coeffs: vec![&self.coeffs[0] - &rhs.coeffs[0]] };
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return CycScalar { conductor: 1, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        if self.conductor == 1 || rhs.conductor == 1 {
            let (r, other) = if self.conductor == 1 { (&self.coeffs[0], rhs) } else { (&rhs.coeffs[0], self) };
            if r.is_zero() {
                return CycScalar::zero();
            }
            let coeffs = other.coeffs.iter().map(|c| c * r).collect();
            return CycScalar { conductor: other.conductor, coeffs };
        }
        let (n, a, b) = self.merged(rhs);
        let mut s = CycScalar { conductor: n, coeffs: poly_mul_mod(&a, &b, n) };
        s.normalize();
        s
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        CycScalar::from_int(v)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z({},{})", self.conductor, k)?;
            } else {
                write!(f, "{a}*z({},{})", self.conductor, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CycScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15).len() - 1, euler_phi(15));
    }

    #[test]
    fn desk_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(-1));
        for n in [3u32, 4, 5, 6, 8, 12] {
            assert_eq!(z(n, 1).inv().unwrap(), z(n, n as i64 - 1));
        }
        assert_eq!(&z(3, 1) * &z(3, 1), &CycScalar::from_int(-1) - &z(3, 1));
        assert_eq!(CycScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors() {
        // z_12^4 = z_3, z_12^3 = z_4
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
        assert_eq!(z(6, 1), &z(3, 1) + &CycScalar::one());
        assert_eq!(z(2, 1), CycScalar::from_int(-1));
        assert_eq!(z(10, 2), z(5, 1));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["z(12,5)", "3/4", "-2", "1 + z(3,1)", "2*z(8,3) - 1/2"] {
            let a = CycScalar::parse(s).unwrap();
            assert_eq!(CycScalar::parse(&a.to_string()).unwrap(), a, "{s}");
        }
        assert!(CycScalar::parse("z(0,1)").is_err());
        assert!(CycScalar::parse("q").is_err());
    }
}
