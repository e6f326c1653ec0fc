//! Dense univariate polynomials over any `FiniteField`, plus minimal
//! polynomials of splitting-field elements over the base alphabet.

use serde::Serialize;

use crate::error::PolyError;
use crate::field::{BaseField, FieldCtx, FieldElem, FiniteField, SubfieldEmbedding};

/// Coefficients lowest degree first, never with a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: FiniteField<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant<F: FiniteField<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    /// `c * x^d`
    pub fn monomial<F: FiniteField<Elem = E>>(f: &F, d: usize, c: i64) -> Self {
        let mut coeffs = vec![f.zero(); d + 1];
        coeffs[d] = f.from_int(c);
        Self::from_coeffs(f, coeffs)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff<F: FiniteField<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: FiniteField<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(f, i), &other.coeff(f, i))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn sub<F: FiniteField<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(f, i), &other.coeff(f, i))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn scale<F: FiniteField<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul<F: FiniteField<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, c)
    }

    pub fn div_rem<F: FiniteField<Elem = E>>(&self, f: &F, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading().expect("nonzero"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let t = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&t) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&t, d));
            }
            quot[i - dd] = t;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem<F: FiniteField<Elem = E>>(&self, f: &F, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(f, divisor)?.1)
    }

    pub fn monic<F: FiniteField<Elem = E>>(&self, f: &F) -> Result<Self, PolyError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(f, &f.inv(l)?)),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd<F: FiniteField<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, PolyError> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b)?;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `self^e mod m`
    pub fn pow_mod<F: FiniteField<Elem = E>>(&self, f: &F, mut e: u128, m: &Self) -> Result<Self, PolyError> {
        let mut base = self.rem(f, m)?;
        let mut acc = Self::constant(f, f.one()).rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
            base = base.mul(f, &base).rem(f, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval<F: FiniteField<Elem = E>>(&self, f: &F, x: &E) -> E {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn divides<F: FiniteField<Elem = E>>(&self, f: &F, other: &Self) -> Result<bool, PolyError> {
        Ok(other.rem(f, self)?.is_zero())
    }
}

/// `x^n - lambda` over the base alphabet.
pub fn binomial(f: &BaseField, n: usize, lambda: i64) -> Polynomial<u32> {
    let mut c = vec![0u32; n + 1];
    c[0] = f.from_int(-lambda);
    c[n] = 1;
    Polynomial::from_coeffs(f, c)
}

/// Minimal polynomial of `alpha` over F_q: the product of `(x - alpha^{q^i})`
/// over the q-Frobenius orbit, pulled back to the base alphabet.
pub fn minimal_polynomial(
    big: &FieldCtx,
    base: &BaseField,
    emb: &SubfieldEmbedding,
    alpha: &FieldElem,
) -> Result<Polynomial<u32>, PolyError> {
    let q = base.q() as u128;
    let mut orbit = vec![alpha.clone()];
    loop {
        let next = big.pow(orbit.last().expect("nonempty"), q);
        if next == *alpha {
            break;
        }
        orbit.push(next);
    }
    let mut prod = Polynomial::constant(big, big.one());
    for root in &orbit {
        let lin = Polynomial::from_coeffs(big, vec![big.neg(root), big.one()]);
        prod = prod.mul(big, &lin);
    }
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|c| emb.project(c).ok_or(PolyError::CoefficientNotInSubfield))
        .collect::<Result<Vec<u32>, _>>()?;
    Ok(Polynomial::from_coeffs(base, coeffs))
}
