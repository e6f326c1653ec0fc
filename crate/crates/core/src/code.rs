//! Code instances: defining sets realized as generator polynomials and
//! matrices over F_q, their duals, the BCH bound and the LCD check.

use serde::Serialize;

use crate::cyclotomic::{self, ord_mod, DefiningSet, Family};
use crate::error::{CodeError, CyclotomicError};
use crate::field::{BaseField, FieldCtx, FieldElem, FiniteField, PrimePower, SubfieldEmbedding};
use crate::matrix::MatrixFq;
use crate::poly::{binomial, minimal_polynomial, Polynomial};

pub const DEFAULT_MAX_EXT_DEGREE: u64 = 24;
pub const MAX_EXT_DEGREE_ENV: &str = "BCHLAB_MAX_EXT_DEGREE";

/// Extension-degree cap, from the environment when set.
pub fn max_ext_degree() -> u64 {
    std::env::var(MAX_EXT_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EXT_DEGREE)
}

/// A BCH code from one of the two families: length, offset `b` and
/// designed distance `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CodeSpec {
    pub q: u64,
    pub m: u32,
    pub family: Family,
    pub delta: u64,
    pub b: u64,
}

impl CodeSpec {
    pub fn new(q: u64, m: u32, family: Family, delta: u64, b: u64) -> Result<Self, CodeError> {
        PrimePower::odd(q)?;
        if m == 0 {
            return Err(CyclotomicError::BadFamilyParams("m must be positive".into()).into());
        }
        let n = family.length(q, m)?;
        if delta < 2 || delta > n {
            return Err(CyclotomicError::BadDelta { delta, max: n }.into());
        }
        if family == Family::Negacyclic && b % 2 == 0 {
            return Err(CyclotomicError::BadFamilyParams(format!("negacyclic offset b = {b} must be odd")).into());
        }
        Ok(CodeSpec { q, m, family, delta, b })
    }

    /// Narrow-sense code, `b = 1`.
    pub fn narrow(q: u64, m: u32, family: Family, delta: u64) -> Result<Self, CodeError> {
        Self::new(q, m, family, delta, 1)
    }

    /// Cyclic code with defining set `C_0 ∪ ... ∪ C_{delta-1}`.
    pub fn even_like(q: u64, m: u32, delta: u64) -> Result<Self, CodeError> {
        Self::new(q, m, Family::Cyclic, delta + 1, 0)
    }

    pub fn n(&self) -> u64 {
        self.family.length(self.q, self.m).expect("validated")
    }

    pub fn modulus(&self) -> u64 {
        self.n() * self.family.r()
    }

    pub fn defining_set(&self) -> Result<DefiningSet, CyclotomicError> {
        cyclotomic::defining_set(self.q, self.m, self.family, self.delta, self.b)
    }

    pub fn dimension(&self) -> Result<u64, CyclotomicError> {
        Ok(self.n() - self.defining_set()?.len() as u64)
    }
}

/// F_{q^l} with a primitive `rn`-th root of unity `beta`.
#[derive(Debug, Clone)]
pub struct SplittingField {
    pub base: BaseField,
    pub big: FieldCtx,
    pub emb: SubfieldEmbedding,
    pub beta: FieldElem,
    pub family: Family,
    pub n: u64,
    pub l: u64,
}

impl SplittingField {
    pub fn new(q: u64, m: u32, family: Family) -> Result<Self, CodeError> {
        Self::build(q, m, family, max_ext_degree(), None)
    }

    pub fn with_cap(q: u64, m: u32, family: Family, cap: u64) -> Result<Self, CodeError> {
        Self::build(q, m, family, cap, None)
    }

    /// Same as `new` but over a caller-chosen irreducible for F_{q^l}.
    pub fn with_modulus(q: u64, m: u32, family: Family, modulus: Vec<u32>) -> Result<Self, CodeError> {
        Self::build(q, m, family, max_ext_degree(), Some(modulus))
    }

    fn build(q: u64, m: u32, family: Family, cap: u64, modulus: Option<Vec<u32>>) -> Result<Self, CodeError> {
        let pp = PrimePower::odd(q)?;
        let n = family.length(q, m)?;
        let rn = n * family.r();
        let l = ord_mod(q, rn)?;
        if l > cap {
            return Err(CodeError::ExtensionTooLarge { l, cap });
        }
        let base = BaseField::new(q)?;
        let k = pp.k as usize * l as usize;
        let big = match modulus {
            None => FieldCtx::new(pp.p, k)?,
            Some(f) => {
                if f.len() != k + 1 {
                    return Err(crate::error::FieldError::NotIrreducible { p: pp.p, k }.into());
                }
                FieldCtx::with_modulus(pp.p, f)?
            }
        };
        let emb = SubfieldEmbedding::new(&big, &base)?;
        let beta = big.root_of_unity(rn as u128, family.r() as u32)?;
        Ok(SplittingField { base, big, emb, beta, family, n, l })
    }

    pub fn modulus(&self) -> u64 {
        self.n * self.family.r()
    }

    /// Minimal polynomial of `beta^s` over F_q.
    pub fn min_poly(&self, s: u64) -> Result<Polynomial<u32>, CodeError> {
        let alpha = self.big.pow(&self.beta, s as u128);
        Ok(minimal_polynomial(&self.big, &self.base, &self.emb, &alpha)?)
    }

    /// `x^n - lambda`
    pub fn binomial(&self) -> Polynomial<u32> {
        binomial(&self.base, self.n as usize, self.family.lambda())
    }
}

/// A realized code: defining set, generator polynomial, dimension.
#[derive(Debug, Clone)]
pub struct CodeInstance {
    pub spec: CodeSpec,
    /// True for the dual of `spec`'s code.
    pub is_dual: bool,
    pub defining_set: DefiningSet,
    pub generator: Polynomial<u32>,
}

impl CodeInstance {
    pub fn length(&self) -> usize {
        self.defining_set.class_size() as usize
    }

    pub fn dimension(&self) -> usize {
        self.length() - self.defining_set.len()
    }

    pub fn generator_matrix(&self) -> MatrixFq {
        generator_matrix(&self.generator, self.length())
    }
}

/// Product of the minimal polynomials of `beta^s` over the coset leaders of `t`.
pub fn generator_polynomial_of(t: &DefiningSet, sf: &SplittingField) -> Result<Polynomial<u32>, CodeError> {
    let f = &sf.base;
    let mut g = Polynomial::constant(f, 1);
    for s in t.leaders() {
        g = g.mul(f, &sf.min_poly(s)?);
    }
    if !g.divides(f, &sf.binomial())? {
        return Err(CodeError::GeneratorNotDividing);
    }
    Ok(g)
}

pub fn generator_polynomial(spec: &CodeSpec, sf: &SplittingField) -> Result<Polynomial<u32>, CodeError> {
    generator_polynomial_of(&spec.defining_set()?, sf)
}

/// Rows `x^i g(x)` for `i < n - deg g`.
pub fn generator_matrix(g: &Polynomial<u32>, n: usize) -> MatrixFq {
    let d = g.degree().expect("nonzero generator");
    let k = n - d;
    let mut out = MatrixFq::zeros(k, n);
    for i in 0..k {
        for (j, &c) in g.coeffs().iter().enumerate() {
            out.set(i, i + j, c);
        }
    }
    out
}

pub fn realize(spec: &CodeSpec, sf: &SplittingField) -> Result<CodeInstance, CodeError> {
    let t = spec.defining_set()?;
    let generator = generator_polynomial_of(&t, sf)?;
    Ok(CodeInstance { spec: *spec, is_dual: false, defining_set: t, generator })
}

/// The dual code, realized from the complementary defining set and
/// checked for orthogonality against the code itself.
pub fn dual_code(spec: &CodeSpec, sf: &SplittingField) -> Result<CodeInstance, CodeError> {
    let code = realize(spec, sf)?;
    dual_of(&code, sf)
}

pub fn dual_of(code: &CodeInstance, sf: &SplittingField) -> Result<CodeInstance, CodeError> {
    let tperp = cyclotomic::dual_defining_set(&code.defining_set)?;
    let generator = generator_polynomial_of(&tperp, sf)?;
    let dual = CodeInstance { spec: code.spec, is_dual: true, defining_set: tperp, generator };
    if dual.dimension() + code.dimension() != code.length() {
        return Err(CodeError::NotOrthogonal);
    }
    if !code.generator_matrix().mul_transpose(&sf.base, &dual.generator_matrix()).is_zero() {
        return Err(CodeError::NotOrthogonal);
    }
    Ok(dual)
}

/// `1 +` the longest run of consecutive class members, wrapping around.
/// A full class gives `n + 1`.
pub fn bch_bound(t: &DefiningSet) -> Result<u64, CodeError> {
    if t.is_empty() {
        return Err(CodeError::EmptySet);
    }
    Ok(1 + t.arcs().iter().map(|a| a.len).max().unwrap_or(0))
}

/// LCD by rank of the stacked generator matrices, cross-checked against `-T == T`.
pub fn is_lcd(spec: &CodeSpec, sf: &SplittingField) -> Result<bool, CodeError> {
    let code = realize(spec, sf)?;
    let by_set = code.defining_set.is_symmetric();
    let by_rank = match dual_of(&code, sf) {
        Ok(dual) => {
            let stacked = code.generator_matrix().vstack(&dual.generator_matrix());
            stacked.rank(&sf.base) == code.length()
        }
        Err(CodeError::Cyclotomic(CyclotomicError::AsymmetricSet)) => false,
        Err(e) => return Err(e),
    };
    if by_set != by_rank {
        return Err(CodeError::LcdMismatch);
    }
    Ok(by_rank)
}

/// `G G'^T == 0` and `rank [G; G'] == n` for arbitrary generator matrices.
pub fn lcd_by_rank(g: &MatrixFq, h: &MatrixFq, f: &BaseField) -> bool {
    g.vstack(h).rank(f) == g.cols()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(CodeSpec::narrow(3, 2, Family::Cyclic, 2).unwrap().dimension().unwrap(), 6);
        assert_eq!(CodeSpec::narrow(3, 3, Family::Negacyclic, 3).unwrap().dimension().unwrap(), 8);
    }

    #[test]
    fn negacyclic_generator() {
        let spec = CodeSpec::narrow(3, 3, Family::Negacyclic, 2).unwrap();
        let sf = SplittingField::new(3, 3, Family::Negacyclic).unwrap();
        let g = generator_polynomial(&spec, &sf).unwrap();
        assert_eq!(g.degree(), Some(6));
        assert!(g.divides(&sf.base, &binomial(&sf.base, 14, -1)).unwrap());
    }

    #[test]
    fn dual_dimension_q7() {
        let spec = CodeSpec::narrow(7, 3, Family::Negacyclic, 2).unwrap();
        let sf = SplittingField::new(7, 3, Family::Negacyclic).unwrap();
        let d = dual_code(&spec, &sf).unwrap();
        assert_eq!(d.dimension(), 6);
        assert_eq!(d.length(), 172);
    }

    #[test]
    fn bch_bound_wraps() {
        let t = cyclotomic::defining_set(3, 3, Family::Negacyclic, 3, 1).unwrap();
        // 25, 27, 1, 3 is a run of four odd residues mod 28
        assert_eq!(bch_bound(&t).unwrap(), 5);
        let empty = DefiningSet::empty(3, 10, 1);
        assert_eq!(bch_bound(&empty), Err(CodeError::EmptySet));
        assert_eq!(bch_bound(&empty.complement()).unwrap(), 11);
    }

    #[test]
    fn lcd_small() {
        let sf = SplittingField::new(3, 2, Family::Cyclic).unwrap();
        for delta in 2..=5 {
            assert!(is_lcd(&CodeSpec::narrow(3, 2, Family::Cyclic, delta).unwrap(), &sf).unwrap());
        }
    }

    #[test]
    fn extension_cap() {
        assert!(matches!(
            SplittingField::with_cap(3, 13, Family::Cyclic, 24),
            Err(CodeError::ExtensionTooLarge { l: 26, cap: 24 })
        ));
    }

    #[test]
    fn full_code_is_lcd_by_rank() {
        let f = BaseField::new(3).unwrap();
        let id = MatrixFq::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert!(lcd_by_rank(&id, &MatrixFq::zeros(0, 3), &f));
    }
}
