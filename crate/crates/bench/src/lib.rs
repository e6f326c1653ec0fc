//! Fixtures shared by the criterion benches.

use bchlab_core::code::{dual_of, realize};
use bchlab_core::{CodeInstance, CodeSpec, Family, SplittingField};

/// A narrow-sense code, its dual and the field they were built over.
pub fn realized(q: u64, m: u32, family: Family, delta: u64) -> (SplittingField, CodeInstance, CodeInstance) {
    let sf = SplittingField::new(q, m, family).expect("valid point");
    let spec = CodeSpec::narrow(q, m, family, delta).expect("valid delta");
    let code = realize(&spec, &sf).expect("realizable");
    let dual = dual_of(&code, &sf).expect("realizable dual");
    (sf, code, dual)
}
