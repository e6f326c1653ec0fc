//! Finite fields.
//!
//! `FieldCtx` is F_{p^k} in a polynomial basis over F_p, reduced modulo a
//! monic irreducible. It is used for the splitting fields F_{q^l}, where the
//! element count makes tables impractical. `BaseField` is the small alphabet
//! F_q with table arithmetic and `u32` elements, which is what generator
//! polynomials and matrices are written over. `SubfieldEmbedding` ties the two.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::arith;
use crate::error::FieldError;
use crate::poly::Polynomial;

/// Arithmetic shared by every field implementation.
pub trait FiniteField {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; fails only on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn characteristic(&self) -> u32;
    fn order(&self) -> u128;
    /// Image of an integer under Z -> F_p -> F.
    fn from_int(&self, c: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// `q = p^k` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    pub p: u32,
    pub k: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        match arith::prime_power(q as u128) {
            Some((p, k)) if p <= u32::MAX as u128 => Ok(PrimePower { p: p as u32, k }),
            _ => Err(FieldError::NotPrimePower { q: q as u128 }),
        }
    }

    /// Like `new` but rejects characteristic 2.
    pub fn odd(q: u64) -> Result<Self, FieldError> {
        let pp = Self::new(q)?;
        if pp.p == 2 {
            return Err(FieldError::NotPrimePower { q: q as u128 });
        }
        Ok(pp)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    /// Coefficients `c_0..c_{k-1}` in the polynomial basis.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

/// F_{p^k} = F_p[x]/(f).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
    order: u128,
}

impl FieldCtx {
    /// Builds the field over the lexicographically first irreducible of degree `k`.
    pub fn new(p: u32, k: usize) -> Result<Self, FieldError> {
        let order = checked_order(p, k)?;
        let modulus = find_irreducible(p, k)?;
        Ok(FieldCtx { p, k, modulus, order })
    }

    /// Builds the field over a caller-chosen monic modulus, lowest coefficient first.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::NotIrreducible { p, k });
        }
        let order = checked_order(p, k)?;
        if !is_irreducible(p, &modulus)? {
            return Err(FieldError::NotIrreducible { p, k });
        }
        Ok(FieldCtx { p, k, modulus, order })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, coeffs: &[u32]) -> FieldElem {
        let mut c = vec![0u32; self.k];
        for (i, &v) in coeffs.iter().enumerate() {
            if i < self.k {
                c[i] = v % self.p;
            }
        }
        FieldElem { coeffs: c }
    }

    /// Element whose coefficients are the base-p digits of `idx`, `c_0` least significant.
    pub fn from_index(&self, mut idx: u128) -> FieldElem {
        let p = self.p as u128;
        let mut c = vec![0u32; self.k];
        for slot in c.iter_mut() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        FieldElem { coeffs: c }
    }

    pub fn index(&self, e: &FieldElem) -> u128 {
        e.coeffs.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// First element in lexicographic order of `(c_{k-1}, ..., c_0)` whose order is `p^k - 1`.
    pub fn multiplicative_generator(&self) -> Result<FieldElem, FieldError> {
        let group = self.order - 1;
        let primes: Vec<u128> = arith::factorize(group)?.into_iter().map(|(r, _)| r).collect();
        let one = self.one();
        for idx in 1..self.order {
            let g = self.from_index(idx);
            if primes.iter().all(|&r| self.pow(&g, group / r) != one) {
                return Ok(g);
            }
        }
        Err(FieldError::Internal("no multiplicative generator found"))
    }

    /// A primitive `n`-th root of unity `g^((Q-1)/n)`. With `r = 2` it also
    /// checks that `beta^(n/2) = -1`.
    pub fn root_of_unity(&self, n: u128, r: u32) -> Result<FieldElem, FieldError> {
        let group = self.order - 1;
        if n == 0 || group % n != 0 {
            return Err(FieldError::OrderNotDividing { n, group });
        }
        let g = self.multiplicative_generator()?;
        let beta = self.pow(&g, group / n);
        if r == 2 && n % 2 == 0 && self.pow(&beta, n / 2) != self.neg(&self.one()) {
            return Err(FieldError::Internal("root of unity has the wrong half power"));
        }
        Ok(beta)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, e: &FieldElem) -> Result<u128, FieldError> {
        if self.is_zero(e) {
            return Err(FieldError::ZeroInverse);
        }
        let mut ord = self.order - 1;
        let one = self.one();
        for (r, _) in arith::factorize(ord)? {
            while ord % r == 0 && self.pow(e, ord / r) == one {
                ord /= r;
            }
        }
        Ok(ord)
    }
}

fn checked_order(p: u32, k: usize) -> Result<u128, FieldError> {
    u32::try_from(k)
        .ok()
        .and_then(|k| (p as u128).checked_pow(k))
        .ok_or(FieldError::FieldTooLarge { p, k })
}

impl FiniteField for FieldCtx {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.k] }
    }

    fn one(&self) -> FieldElem {
        let mut c = vec![0; self.k];
        c[0] = 1;
        FieldElem { coeffs: c }
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElem { coeffs }
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p;
        FieldElem { coeffs: a.coeffs.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect() }
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p as u64;
        let k = self.k;
        let mut acc = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let t = acc[i];
            if t == 0 {
                continue;
            }
            // x^k = -(f_0 + ... + f_{k-1} x^{k-1})
            for j in 0..k {
                let f = self.modulus[j] as u64;
                acc[i - k + j] = (acc[i - k + j] + t * ((p - f) % p)) % p;
            }
        }
        FieldElem { coeffs: acc[..k].iter().map(|&v| v as u32).collect() }
    }

    fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 2))
    }

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn order(&self) -> u128 {
        self.order
    }

    fn from_int(&self, c: i64) -> FieldElem {
        let v = c.rem_euclid(self.p as i64) as u32;
        let mut coeffs = vec![0; self.k];
        coeffs[0] = v;
        FieldElem { coeffs }
    }
}

/// F_q with `u32` elements. For prime `q` arithmetic is direct; otherwise it
/// is read from tables built once from a `FieldCtx` (element index = base-p
/// coefficient encoding).
#[derive(Debug, Clone)]
pub struct BaseField {
    pp: PrimePower,
    q: u32,
    tables: Option<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    ctx: FieldCtx,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

const MAX_TABLE_Q: u64 = 1 << 12;

impl BaseField {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let pp = PrimePower::new(q)?;
        if pp.k == 1 {
            return Ok(BaseField { pp, q: pp.p, tables: None });
        }
        if q > MAX_TABLE_Q {
            return Err(FieldError::FieldTooLarge { p: pp.p, k: pp.k as usize });
        }
        let ctx = FieldCtx::new(pp.p, pp.k as usize)?;
        let n = q as usize;
        let elems: Vec<FieldElem> = (0..n).map(|i| ctx.from_index(i as u128)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let s = ctx.index(&ctx.add(&elems[a], &elems[b])) as u32;
                let m = ctx.index(&ctx.mul(&elems[a], &elems[b])) as u32;
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = m;
                mul[b * n + a] = m;
            }
        }
        let neg = (0..n).map(|a| ctx.index(&ctx.neg(&elems[a])) as u32).collect();
        let mut inv = vec![0u32; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).map(|b| b as u32).ok_or(FieldError::Internal("no inverse"))?;
        }
        Ok(BaseField { pp, q: q as u32, tables: Some(Tables { ctx, add, mul, neg, inv }) })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Polynomial-basis model of F_q; `None` when `q` is prime.
    pub fn ctx(&self) -> Option<&FieldCtx> {
        self.tables.as_ref().map(|t| &t.ctx)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

impl FiniteField for BaseField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            None => {
                let s = *a as u64 + *b as u64;
                (s % self.q as u64) as u32
            }
            Some(t) => t.add[(*a * self.q + *b) as usize],
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        match &self.tables {
            None => {
                if *a == 0 {
                    0
                } else {
                    self.q - *a
                }
            }
            Some(t) => t.neg[*a as usize],
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            None => ((*a as u64 * *b as u64) % self.q as u64) as u32,
            Some(t) => t.mul[(*a * self.q + *b) as usize],
        }
    }

    fn inv(&self, a: &u32) -> Result<u32, FieldError> {
        if *a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        match &self.tables {
            None => Ok(arith::pow_mod(*a as u128, self.q as u128 - 2, self.q as u128) as u32),
            Some(t) => Ok(t.inv[*a as usize]),
        }
    }

    fn characteristic(&self) -> u32 {
        self.pp.p
    }

    fn order(&self) -> u128 {
        self.q as u128
    }

    fn from_int(&self, c: i64) -> u32 {
        // index encoding puts the prime-field part in the lowest digit
        c.rem_euclid(self.pp.p as i64) as u32
    }
}

/// Ben-Or test: `f` of degree `k` is irreducible over F_p iff
/// `gcd(x^{p^i} - x, f) = 1` for every `i <= k/2`.
pub fn is_irreducible(p: u32, f: &[u32]) -> Result<bool, FieldError> {
    let fp = BaseField::new(p as u64)?;
    let f = Polynomial::from_coeffs(&fp, f.to_vec());
    let k = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Ok(false),
    };
    if k == 1 {
        return Ok(true);
    }
    let x = Polynomial::monomial(&fp, 1, 1);
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = h.pow_mod(&fp, p as u128, &f).map_err(|_| FieldError::Internal("modulus vanished"))?;
        let g = h.sub(&fp, &x).gcd(&fp, &f).map_err(|_| FieldError::Internal("gcd failed"))?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monic irreducible of degree `k` over F_p, scanning `(c_{k-1}, ..., c_0)`
/// lexicographically. Returned lowest coefficient first.
pub fn find_irreducible(p: u32, k: usize) -> Result<Vec<u32>, FieldError> {
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let tails = checked_order(p, k)?;
    for idx in 0..tails {
        let mut c = Vec::with_capacity(k + 1);
        let mut t = idx;
        for _ in 0..k {
            c.push((t % p as u128) as u32);
            t /= p as u128;
        }
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        if is_irreducible(p, &c)? {
            return Ok(c);
        }
    }
    Err(FieldError::Internal("no irreducible polynomial found"))
}

/// F_q sitting inside F_{q^l}.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    image: Vec<FieldElem>,
    back: HashMap<FieldElem, u32>,
}

impl SubfieldEmbedding {
    pub fn new(big: &FieldCtx, small: &BaseField) -> Result<Self, FieldError> {
        let pp = small.prime_power();
        if pp.p != big.p || big.k % pp.k as usize != 0 {
            return Err(FieldError::Internal("base field is not a subfield"));
        }
        let image: Vec<FieldElem> = match small.ctx() {
            None => (0..small.q()).map(|c| big.from_int(c as i64)).collect(),
            Some(sctx) => {
                // a root of the small modulus among the nonzero elements of the subfield
                let gamma = big.pow(&big.multiplicative_generator()?, (big.order - 1) / (small.q() as u128 - 1));
                let mut cand = big.one();
                let mut theta = None;
                for _ in 0..small.q() - 1 {
                    let mut acc = big.zero();
                    for &c in sctx.modulus().iter().rev() {
                        acc = big.add(&big.mul(&acc, &cand), &big.from_int(c as i64));
                    }
                    if big.is_zero(&acc) {
                        theta = Some(cand.clone());
                        break;
                    }
                    cand = big.mul(&cand, &gamma);
                }
                let theta = theta.ok_or(FieldError::Internal("subfield modulus has no root"))?;
                (0..small.q())
                    .map(|idx| {
                        let e = sctx.from_index(idx as u128);
                        let mut acc = big.zero();
                        for &c in e.coeffs().iter().rev() {
                            acc = big.add(&big.mul(&acc, &theta), &big.from_int(c as i64));
                        }
                        acc
                    })
                    .collect()
            }
        };
        let back = image.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Ok(SubfieldEmbedding { image, back })
    }

    pub fn embed(&self, a: u32) -> FieldElem {
        self.image[a as usize].clone()
    }

    /// Inverse of `embed`; `None` when `e` lies outside F_q.
    pub fn project(&self, e: &FieldElem) -> Option<u32> {
        self.back.get(e).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_of_small_prime_fields() {
        for (p, g) in [(3, 2), (5, 2), (7, 3), (11, 2)] {
            let f = FieldCtx::new(p, 1).unwrap();
            assert_eq!(f.multiplicative_generator().unwrap(), f.elem(&[g]));
        }
    }

    #[test]
    fn root_of_unity_rejects_non_divisor() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert!(matches!(f.root_of_unity(3, 1), Err(FieldError::OrderNotDividing { .. })));
    }

    #[test]
    fn negacyclic_root_has_half_power_minus_one() {
        let f = FieldCtx::new(3, 6).unwrap();
        let beta = f.root_of_unity(28, 2).unwrap();
        assert_eq!(f.pow(&beta, 14), f.neg(&f.one()));
        assert_eq!(f.element_order(&beta).unwrap(), 28);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree k over F_3: 3, 3, 8, 18
        for (k, want) in [(1usize, 3usize), (2, 3), (3, 8), (4, 18)] {
            let mut count = 0;
            for idx in 0..3u32.pow(k as u32) {
                let mut c: Vec<u32> = (0..k).map(|i| (idx / 3u32.pow(i as u32)) % 3).collect();
                c.push(1);
                if is_irreducible(3, &c).unwrap() {
                    count += 1;
                }
            }
            assert_eq!(count, want, "k={k}");
        }
    }

    #[test]
    fn table_field_matches_polynomial_model() {
        let f9 = BaseField::new(9).unwrap();
        let ctx = f9.ctx().unwrap();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        for a in 0..9u32 {
            for b in 0..9u32 {
                let e = ctx.mul(&ctx.from_index(a as u128), &ctx.from_index(b as u128));
                assert_eq!(f9.mul(&a, &b) as u128, ctx.index(&e));
            }
            if a != 0 {
                assert_eq!(f9.mul(&a, &f9.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f9 = BaseField::new(9).unwrap();
        let big = FieldCtx::new(3, 4).unwrap();
        let emb = SubfieldEmbedding::new(&big, &f9).unwrap();
        for a in 0..9u32 {
            assert_eq!(emb.project(&emb.embed(a)), Some(a));
            for b in 0..9u32 {
                assert_eq!(emb.embed(f9.mul(&a, &b)), big.mul(&emb.embed(a), &emb.embed(b)));
                assert_eq!(emb.embed(f9.add(&a, &b)), big.add(&emb.embed(a), &emb.embed(b)));
            }
        }
    }

    #[test]
    fn with_modulus_rejects_reducible() {
        assert!(FieldCtx::with_modulus(3, vec![2, 0, 1]).is_err()); // x^2 - 1
        assert!(FieldCtx::with_modulus(3, vec![2, 1, 1]).is_ok());
    }
}
