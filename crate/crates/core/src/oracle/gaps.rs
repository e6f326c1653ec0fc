use serde::Serialize;

use crate::cyclotomic::{defining_set, dual_defining_set, DefiningSet, Family, LeaderTable, Parity};
use crate::dec;
use crate::error::{CyclotomicError, OracleError};

/// Gaps of `T⊥` on either side of the anchor leader.
///
/// `low` is the largest class residue below the anchor that is missing from
/// `T⊥` while everything between it and the anchor is present; `high` is the
/// mirror image above. `None` means the run reaches the end of the class
/// without a gap. `high` is only scanned when the anchor is not its own
/// negative, i.e. when the run around it is not symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapScan {
    #[serde(with = "dec")]
    pub anchor: u64,
    #[serde(with = "dec::opt")]
    pub low: Option<u64>,
    #[serde(with = "dec::opt")]
    pub high: Option<u64>,
    pub two_sided: bool,
}

impl GapScan {
    /// BCH bound of the run between the gaps, `None` when a side has no gap.
    pub fn run_bound(&self, modulus: u64, step: u64) -> Option<u64> {
        let low = self.low?;
        if self.two_sided {
            Some((self.high? - low) / step)
        } else {
            Some((modulus - 2 * low) / step)
        }
    }
}

/// Largest coset leader mod `q^m + 1` (cyclic) or largest odd one (negacyclic),
/// read off a leader sweep.
pub fn anchor_leader(q: u64, m: u32, family: Family) -> Result<u64, CyclotomicError> {
    let modulus = family.length(q, m)? * family.r();
    let parity = match family {
        Family::Cyclic => Parity::All,
        Family::Negacyclic => Parity::Odd,
    };
    LeaderTable::build(q, modulus)?.kth_largest(1, parity)
}

pub fn gap_scan(tperp: &DefiningSet, anchor: u64) -> Result<GapScan, OracleError> {
    let ia = tperp
        .index(anchor)
        .filter(|&i| anchor < tperp.modulus() && tperp.contains_index(i))
        .ok_or(OracleError::AnchorNotInDual { anchor })?;
    let low = if ia == 0 { None } else { tperp.prev_zero(ia - 1).map(|i| tperp.residue(i)) };
    let two_sided = 2 * anchor != tperp.modulus();
    let high = if two_sided {
        let z = tperp.next_zero(ia);
        (z < tperp.class_size()).then(|| tperp.residue(z))
    } else {
        None
    };
    Ok(GapScan { anchor, low, high, two_sided })
}

/// `T⊥` for consecutive designed distances with a fixed offset. Moving from
/// `delta` to `delta + 1` adds `C_{b + r(delta - 1)}` to `T`, so it leaves `T⊥`.
#[derive(Debug, Clone)]
pub struct DualSweep {
    tperp: DefiningSet,
    b: u64,
    r: u64,
    delta: u64,
}

impl DualSweep {
    pub fn new(q: u64, m: u32, family: Family, b: u64, delta: u64) -> Result<Self, CyclotomicError> {
        let t = defining_set(q, m, family, delta, b)?;
        let tperp = dual_defining_set(&t)?;
        Ok(DualSweep { tperp, b, r: family.r(), delta })
    }

    /// Sweep over the even-like subcodes `C_0 ∪ ... ∪ C_{delta-1}`.
    pub fn even_like(q: u64, m: u32, delta: u64) -> Result<Self, CyclotomicError> {
        Self::new(q, m, Family::Cyclic, 0, delta + 1)
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn tperp(&self) -> &DefiningSet {
        &self.tperp
    }

    /// Step to `delta + 1`; returns whether `T⊥` changed.
    pub fn advance(&mut self) -> bool {
        let s = (self.b + self.r * (self.delta - 1)) % self.tperp.modulus();
        self.delta += 1;
        if self.tperp.contains(s) {
            self.tperp.remove_coset(s);
            true
        } else {
            false
        }
    }
}
