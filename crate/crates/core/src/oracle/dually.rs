use serde::Serialize;

use crate::cyclotomic::{Arc, DefiningSet, LeaderTable};
use crate::dec;
use crate::error::CyclotomicError;

/// `T⊥ = C_b ∪ C_{b+r} ∪ ... ∪ C_{b+r(delta-2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessRun {
    #[serde(with = "dec")]
    pub b: u64,
    #[serde(with = "dec")]
    pub delta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuallyVerdict {
    pub is_dually: bool,
    pub witness_run: Option<WitnessRun>,
    /// A residue of `T⊥` whose coset the best run misses.
    #[serde(with = "dec::opt")]
    pub counterexample: Option<u64>,
}

/// Decides whether a dual defining set is itself a BCH defining set.
///
/// A run `b, b+r, ...` generating `T⊥` must lie inside `T⊥`, so it sits in
/// one maximal arc, and it works iff it meets every coset of `T⊥`. Any run
/// inside an arc is dominated by the whole arc, so the question is whether
/// some arc meets all cosets.
#[derive(Debug, Clone)]
pub struct DuallyOracle {
    table: LeaderTable,
    stamp: Vec<u32>,
    epoch: u32,
}

impl DuallyOracle {
    pub fn new(q: u64, modulus: u64) -> Result<Self, CyclotomicError> {
        let table = LeaderTable::build(q, modulus)?;
        Ok(DuallyOracle { stamp: vec![0; modulus as usize], table, epoch: 0 })
    }

    pub fn for_set(t: &DefiningSet) -> Result<Self, CyclotomicError> {
        Self::new(t.q(), t.modulus())
    }

    pub fn table(&self) -> &LeaderTable {
        &self.table
    }

    fn check(&self, t: &DefiningSet) {
        assert!(
            t.q() == self.table.q() && t.modulus() == self.table.modulus(),
            "defining set does not match the oracle's modulus"
        );
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    pub fn coset_count(&self, t: &DefiningSet) -> usize {
        t.iter().filter(|&x| self.table.is_leader(x)).count()
    }

    /// Distinct cosets met by `len` indices from `start`, stopping at `stop`.
    /// Returns the count and the number of indices consumed.
    fn cover(&mut self, t: &DefiningSet, start: u64, len: u64, stop: usize) -> (usize, u64) {
        let e = self.next_epoch();
        let size = t.class_size();
        let mut seen = 0;
        for p in 0..len {
            let l = self.table.leader_of(t.residue((start + p) % size)) as usize;
            if self.stamp[l] != e {
                self.stamp[l] = e;
                seen += 1;
                if seen == stop {
                    return (seen, p + 1);
                }
            }
        }
        (seen, len)
    }

    /// Verdict only, without witness or counterexample.
    pub fn is_dually(&mut self, t: &DefiningSet) -> bool {
        self.check(t);
        let k = self.coset_count(t);
        if k == 0 {
            return false;
        }
        for a in t.arcs() {
            if a.len as usize >= k && self.cover(t, a.start, a.len, k).0 == k {
                return true;
            }
        }
        false
    }

    pub fn verdict(&mut self, t: &DefiningSet) -> DuallyVerdict {
        self.check(t);
        let k = self.coset_count(t);
        if k == 0 {
            return DuallyVerdict { is_dually: false, witness_run: None, counterexample: None };
        }
        let size = t.class_size();
        let arcs = t.arcs();
        let mut best: Option<(u64, u64)> = None;
        for a in &arcs {
            if (a.len as usize) < k {
                continue;
            }
            // Covering starts form a prefix of the arc. When the arc wraps,
            // index 0 is the smallest start if it is one; otherwise the arc's
            // first index is.
            let mut starts = Vec::with_capacity(2);
            if a.start + a.len > size {
                starts.push(size - a.start);
            }
            starts.push(0);
            for p in starts {
                let (seen, used) = self.cover(t, a.start + p, a.len - p, k);
                if seen == k {
                    let idx = (a.start + p) % size;
                    if best.is_none_or(|(i, _)| idx < i) {
                        best = Some((idx, used));
                    }
                    break;
                }
            }
        }
        if let Some((idx, used)) = best {
            let w = WitnessRun { b: t.residue(idx), delta: used + 1 };
            return DuallyVerdict { is_dually: true, witness_run: Some(w), counterexample: None };
        }
        DuallyVerdict { is_dually: false, witness_run: None, counterexample: Some(self.counterexample(t, &arcs)) }
    }

    /// Smallest residue whose coset misses the arc meeting the most cosets
    /// (first such arc on ties).
    fn counterexample(&mut self, t: &DefiningSet, arcs: &[Arc]) -> u64 {
        let mut best = arcs[0];
        let mut most = 0;
        for a in arcs {
            let (seen, _) = self.cover(t, a.start, a.len, usize::MAX);
            if seen > most {
                most = seen;
                best = *a;
            }
        }
        self.cover(t, best.start, best.len, usize::MAX);
        let e = self.epoch;
        t.iter()
            .find(|&x| self.stamp[self.table.leader_of(x) as usize] != e)
            .expect("a non-covering arc misses some coset")
    }
}

pub fn dually_bch_oracle(t: &DefiningSet) -> Result<DuallyVerdict, CyclotomicError> {
    Ok(DuallyOracle::for_set(t)?.verdict(t))
}

/// Expands a witness run back into a defining set.
pub fn witness_set(t: &DefiningSet, w: WitnessRun) -> DefiningSet {
    let mut out = DefiningSet::empty(t.q(), t.modulus(), t.step());
    for i in 0..w.delta - 1 {
        let s = (w.b + t.step() * i) % t.modulus();
        if !out.contains(s) {
            out.insert_coset(s);
        }
    }
    out
}

/// For the threshold sets `{x in class : leader(x) >= t}`: the longest
/// circular run and the number of cosets, for every `t`.
///
/// Narrow-sense and even-like dual defining sets are exactly of this form,
/// and a run meeting `k` cosets needs at least `k` members, so
/// `longest < cosets` settles a verdict as negative without a scan.
#[derive(Debug, Clone)]
pub struct ThresholdProfile {
    longest: Vec<u32>,
    cosets: Vec<u32>,
}

impl ThresholdProfile {
    pub fn build(table: &LeaderTable, step: u64) -> Self {
        let modulus = table.modulus();
        let size = (modulus / step) as usize;
        let mut parent: Vec<u32> = (0..size as u32).collect();
        let mut weight = vec![0u32; size];
        let mut active = vec![false; size];
        let mut by_leader: Vec<Vec<u32>> = vec![Vec::new(); modulus as usize];
        for i in 0..size as u64 {
            let x = (step - 1) + step * i;
            by_leader[table.leader_of(x) as usize].push(i as u32);
        }
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let p = parent[x as usize];
                parent[x as usize] = parent[p as usize];
                x = p;
            }
            x
        }
        let mut longest = vec![0u32; modulus as usize + 1];
        let mut cosets = vec![0u32; modulus as usize + 1];
        let (mut best, mut count) = (0u32, 0u32);
        for t in (0..modulus as usize).rev() {
            if !by_leader[t].is_empty() {
                count += 1;
                for &i in &by_leader[t] {
                    active[i as usize] = true;
                    weight[i as usize] = 1;
                    let mut root = i;
                    for nb in [(i as usize + size - 1) % size, (i as usize + 1) % size] {
                        if active[nb] {
                            let (a, b) = (find(&mut parent, root), find(&mut parent, nb as u32));
                            if a != b {
                                parent[b as usize] = a;
                                weight[a as usize] += weight[b as usize];
                                root = a;
                            }
                        }
                    }
                    best = best.max(weight[find(&mut parent, root) as usize]);
                }
            }
            longest[t] = best;
            cosets[t] = count;
        }
        ThresholdProfile { longest, cosets }
    }

    pub fn longest(&self, t: u64) -> u64 {
        self.longest[t as usize] as u64
    }

    pub fn cosets(&self, t: u64) -> u64 {
        self.cosets[t as usize] as u64
    }

    /// `false` when the threshold set cannot be dually-BCH; `true` means "maybe".
    pub fn may_be_dually(&self, t: u64) -> bool {
        let k = self.cosets(t);
        k > 0 && self.longest(t) >= k
    }
}
