use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{q} is not an odd prime power")]
    NotPrimePower { q: u128 },
    #[error("factorization of {n} exceeded the iteration budget")]
    FactorizationTooLarge { n: u128 },
    #[error("order {n} does not divide the multiplicative group order {group}")]
    OrderNotDividing { n: u128, group: u128 },
    #[error("polynomial is not irreducible of degree {k} over F_{p}")]
    NotIrreducible { p: u32, k: usize },
    #[error("field of order {p}^{k} overflows 128 bits")]
    FieldTooLarge { p: u32, k: usize },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("internal: {0}")]
    Internal(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("minimal polynomial has a coefficient outside the subfield")]
    CoefficientNotInSubfield,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("gcd({q}, {n}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("requested coset #{k} but only {available} are available")]
    NotEnoughCosets { k: usize, available: usize },
    #[error("designed distance {delta} outside [2, {max}]")]
    BadDelta { delta: u64, max: u64 },
    #[error("bad family parameters: {0}")]
    BadFamilyParams(String),
    #[error("defining set is not closed under negation")]
    AsymmetricSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("extension degree {l} exceeds the cap {cap}")]
    ExtensionTooLarge { l: u64, cap: u64 },
    #[error("BCH bound of an empty set is undefined")]
    EmptySet,
    #[error("generator polynomial does not divide x^n - lambda")]
    GeneratorNotDividing,
    #[error("code and dual are not orthogonal")]
    NotOrthogonal,
    #[error("rank test and defining-set test disagree on LCD")]
    LcdMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("m = {m} is not supported here")]
    UnsupportedM { m: u32 },
    #[error("q = {q} is not supported here")]
    UnsupportedQ { q: u64 },
    #[error("third odd leader needs q^m >= 25")]
    Phi3Unavailable,
    #[error("no table row matches delta = {delta}")]
    NoCaseMatched { delta: u64 },
    #[error("rows {rows:?} all match delta = {delta}")]
    MultipleCasesMatched { delta: u64, rows: Vec<String> },
    #[error("delta = {delta} outside the admissible range [{lo}, {hi}]")]
    DeltaOutOfRange { delta: u64, lo: i128, hi: i128 },
    #[error("formula value {num}/{den} is not an integer")]
    NonIntegral { num: i128, den: i128 },
    #[error("integer overflow evaluating a closed form")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("anchor {anchor} is not in the dual defining set")]
    AnchorNotInDual { anchor: u64 },
    #[error("{count} codewords exceed the cap {cap}; try the dual side")]
    TooManyCodewords { count: String, cap: u128 },
    #[error("support search exceeded {budget} nodes")]
    SearchBudgetExceeded { budget: u128 },
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// Umbrella error for callers that mix modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Stable machine-readable name of the innermost error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(e) => field_kind(e),
            Error::Poly(e) => poly_kind(e),
            Error::Cyclotomic(e) => cyc_kind(e),
            Error::Code(e) => code_kind(e),
            Error::Formula(e) => formula_kind(e),
            Error::Oracle(e) => match e {
                OracleError::AnchorNotInDual { .. } => "AnchorNotInDual",
                OracleError::TooManyCodewords { .. } => "TooManyCodewords",
                OracleError::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
                OracleError::UnknownExample(_) => "UnknownExample",
                OracleError::Code(e) => code_kind(e),
                OracleError::Formula(e) => formula_kind(e),
                OracleError::Cyclotomic(e) => cyc_kind(e),
            },
        }
    }

    /// True for errors caused by bad caller input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self.kind(),
            "NotPrimePower"
                | "NotCoprime"
                | "BadDelta"
                | "BadFamilyParams"
                | "UnsupportedM"
                | "UnsupportedQ"
                | "DeltaOutOfRange"
                | "UnknownExample"
                | "ZeroModulus"
        )
    }
}

fn field_kind(e: &FieldError) -> &'static str {
    match e {
        FieldError::NotPrimePower { .. } => "NotPrimePower",
        FieldError::FactorizationTooLarge { .. } => "FactorizationTooLarge",
        FieldError::OrderNotDividing { .. } => "OrderNotDividing",
        FieldError::NotIrreducible { .. } => "NotIrreducible",
        FieldError::FieldTooLarge { .. } => "FieldTooLarge",
        FieldError::ZeroInverse => "ZeroInverse",
        FieldError::Internal(_) => "Internal",
    }
}

fn poly_kind(e: &PolyError) -> &'static str {
    match e {
        PolyError::DivisionByZero => "DivisionByZero",
        PolyError::CoefficientNotInSubfield => "CoefficientNotInSubfield",
        PolyError::Field(e) => field_kind(e),
    }
}

fn cyc_kind(e: &CyclotomicError) -> &'static str {
    match e {
        CyclotomicError::NotCoprime { .. } => "NotCoprime",
        CyclotomicError::ZeroModulus => "ZeroModulus",
        CyclotomicError::NotEnoughCosets { .. } => "NotEnoughCosets",
        CyclotomicError::BadDelta { .. } => "BadDelta",
        CyclotomicError::BadFamilyParams(_) => "BadFamilyParams",
        CyclotomicError::AsymmetricSet => "AsymmetricSet",
    }
}

fn code_kind(e: &CodeError) -> &'static str {
    match e {
        CodeError::ExtensionTooLarge { .. } => "ExtensionTooLarge",
        CodeError::EmptySet => "EmptySet",
        CodeError::GeneratorNotDividing => "GeneratorNotDividing",
        CodeError::NotOrthogonal => "NotOrthogonal",
        CodeError::LcdMismatch => "LcdMismatch",
        CodeError::Field(e) => field_kind(e),
        CodeError::Poly(e) => poly_kind(e),
        CodeError::Cyclotomic(e) => cyc_kind(e),
    }
}

fn formula_kind(e: &FormulaError) -> &'static str {
    match e {
        FormulaError::UnsupportedM { .. } => "UnsupportedM",
        FormulaError::UnsupportedQ { .. } => "UnsupportedQ",
        FormulaError::Phi3Unavailable => "Phi3Unavailable",
        FormulaError::NoCaseMatched { .. } => "NoCaseMatched",
        FormulaError::MultipleCasesMatched { .. } => "MultipleCasesMatched",
        FormulaError::DeltaOutOfRange { .. } => "DeltaOutOfRange",
        FormulaError::NonIntegral { .. } => "NonIntegral",
        FormulaError::Overflow => "Overflow",
    }
}
