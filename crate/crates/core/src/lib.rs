//! Computational toolkit for two LCD BCH families over F_q: cyclic codes of
//! length `q^m + 1` and negacyclic codes of length `(q^m + 1) / 2`.
//!
//! The crate pairs closed-form expressions for coset leaders, dual-distance
//! bounds and dually-BCH ranges with brute-force oracles that recompute the
//! same quantities from first principles.

pub mod arith;
pub mod closed_forms;
pub mod code;
pub mod cyclotomic;
pub mod dec;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod poly;

pub use closed_forms::{BoundReport, FormulaCase};
pub use code::{CodeInstance, CodeSpec, SplittingField};
pub use cyclotomic::{DefiningSet, Family, LeaderTable, Parity};
pub use error::Error;
pub use field::{BaseField, FieldCtx, FieldElem, FiniteField, PrimePower};
pub use matrix::MatrixFq;
pub use poly::Polynomial;
