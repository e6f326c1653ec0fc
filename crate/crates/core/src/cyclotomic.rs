//! q-cyclotomic cosets, coset leaders and defining sets.
//!
//! A defining set lives in one residue class of Z_{rn}: all of Z_n for the
//! cyclic family (r = 1) and the odd residues of Z_{2n} for the negacyclic
//! family (r = 2). `DefiningSet` stores membership as a bitset over the
//! class index `i`, with residue `x = (r - 1) + r * i`, so that runs of
//! consecutive class members are runs of adjacent bits.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::CyclotomicError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Negacyclic,
}

impl Family {
    /// Step between consecutive class members (1 or 2).
    pub fn r(self) -> u64 {
        match self {
            Family::Cyclic => 1,
            Family::Negacyclic => 2,
        }
    }

    /// The constant in `x^n - lambda`.
    pub fn lambda(self) -> i64 {
        match self {
            Family::Cyclic => 1,
            Family::Negacyclic => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Negacyclic => "negacyclic",
        }
    }

    /// Code length for `q^m + 1`-based families.
    pub fn length(self, q: u64, m: u32) -> Result<u64, CyclotomicError> {
        let qm = q
            .checked_pow(m)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| CyclotomicError::BadFamilyParams(format!("{q}^{m} + 1 overflows")))?;
        Ok(match self {
            Family::Cyclic => qm,
            Family::Negacyclic => qm / 2,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = CyclotomicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "negacyclic" => Ok(Family::Negacyclic),
            other => Err(CyclotomicError::BadFamilyParams(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Odd,
}

fn check_coprime(q: u64, n: u64) -> Result<(), CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::ZeroModulus);
    }
    if gcd(q as u128, n as u128) != 1 {
        return Err(CyclotomicError::NotCoprime { q, n });
    }
    Ok(())
}

/// Multiplicative order of `q` modulo `n`.
pub fn ord_mod(q: u64, n: u64) -> Result<u64, CyclotomicError> {
    check_coprime(q, n)?;
    if n == 1 {
        return Ok(1);
    }
    let (q, n) = (q as u128 % n as u128, n as u128);
    let mut x = q;
    let mut l = 1;
    while x != 1 {
        x = x * q % n;
        l += 1;
    }
    Ok(l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub modulus: u64,
    pub leader: u64,
    /// Sorted ascending.
    pub elements: Vec<u64>,
}

fn orbit(q: u64, n: u64, s: u64) -> Vec<u64> {
    let (q, n) = (q as u128, n as u128);
    let start = s as u128 % n;
    let mut out = vec![start as u64];
    let mut x = start * q % n;
    while x != start {
        out.push(x as u64);
        x = x * q % n;
    }
    out
}

/// The coset `C_s = { s q^j mod n }`.
pub fn coset(q: u64, n: u64, s: u64) -> Result<Coset, CyclotomicError> {
    check_coprime(q, n)?;
    let mut elements = orbit(q, n, s);
    elements.sort_unstable();
    Ok(Coset { modulus: n, leader: elements[0], elements })
}

/// Leader of every residue mod `n`, from one sweep.
#[derive(Debug, Clone)]
pub struct LeaderTable {
    q: u64,
    modulus: u64,
    leader: Vec<u32>,
}

impl LeaderTable {
    pub fn build(q: u64, n: u64) -> Result<Self, CyclotomicError> {
        check_coprime(q, n)?;
        if n > u32::MAX as u64 {
            return Err(CyclotomicError::BadFamilyParams(format!("modulus {n} too large for a leader table")));
        }
        let mut leader = vec![u32::MAX; n as usize];
        let (qq, nn) = (q as u128, n as u128);
        for s in 0..n {
            if leader[s as usize] != u32::MAX {
                continue;
            }
            // s is the smallest unvisited residue, hence the minimum of its orbit
            let mut x = s as u128;
            loop {
                leader[x as usize] = s as u32;
                x = x * qq % nn;
                if x == s as u128 {
                    break;
                }
            }
        }
        Ok(LeaderTable { q, modulus: n, leader })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn leader_of(&self, x: u64) -> u64 {
        self.leader[(x % self.modulus) as usize] as u64
    }

    pub fn is_leader(&self, x: u64) -> bool {
        self.leader_of(x) == x
    }

    /// Ascending leaders, optionally only the odd ones.
    pub fn leaders(&self, parity: Parity) -> Vec<u64> {
        (0..self.modulus)
            .filter(|&x| self.leader[x as usize] as u64 == x)
            .filter(|&x| parity == Parity::All || x % 2 == 1)
            .collect()
    }

    /// The `k`-th largest leader, `k >= 1`.
    pub fn kth_largest(&self, k: usize, parity: Parity) -> Result<u64, CyclotomicError> {
        let mut seen = 0;
        for x in (0..self.modulus).rev() {
            if self.leader[x as usize] as u64 == x && (parity == Parity::All || x % 2 == 1) {
                seen += 1;
                if seen == k {
                    return Ok(x);
                }
            }
        }
        Err(CyclotomicError::NotEnoughCosets { k, available: seen })
    }
}

pub fn coset_leaders(q: u64, n: u64, parity: Parity) -> Result<Vec<u64>, CyclotomicError> {
    Ok(LeaderTable::build(q, n)?.leaders(parity))
}

pub fn kth_largest_leader(q: u64, n: u64, k: usize, parity: Parity) -> Result<u64, CyclotomicError> {
    if k == 0 {
        return Err(CyclotomicError::NotEnoughCosets { k, available: 0 });
    }
    LeaderTable::build(q, n)?.kth_largest(k, parity)
}

/// A maximal run `start, start+1, ..., start+len-1` of class indices (mod the class size).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: u64,
    pub len: u64,
}

/// A union of cosets inside one residue class of Z_{modulus}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    q: u64,
    modulus: u64,
    step: u64,
    bits: Vec<u64>,
    len: usize,
}

impl DefiningSet {
    /// Empty set in the class of Z_{modulus} with the given step (1 or 2).
    pub fn empty(q: u64, modulus: u64, step: u64) -> Self {
        assert!(step == 1 || step == 2, "step must be 1 or 2");
        assert!(modulus % step == 0);
        let size = (modulus / step) as usize;
        DefiningSet { q, modulus, step, bits: vec![0; size.div_ceil(64)], len: 0 }
    }

    pub fn for_family(q: u64, m: u32, family: Family) -> Result<Self, CyclotomicError> {
        let n = family.length(q, m)?;
        let modulus = n
            .checked_mul(family.r())
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(|| CyclotomicError::BadFamilyParams("length too large".into()))?;
        Ok(Self::empty(q, modulus, family.r()))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// Number of residues in the class (the code length).
    pub fn class_size(&self) -> u64 {
        self.modulus / self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Residue of class index `i`.
    pub fn residue(&self, i: u64) -> u64 {
        (self.step - 1) + self.step * i
    }

    /// Class index of residue `x`, or `None` when `x` lies outside the class.
    pub fn index(&self, x: u64) -> Option<u64> {
        let x = x % self.modulus;
        (x % self.step == self.step - 1).then(|| x / self.step)
    }

    pub fn contains_index(&self, i: u64) -> bool {
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, x: u64) -> bool {
        self.index(x).is_some_and(|i| self.contains_index(i))
    }

    fn set_index(&mut self, i: u64, on: bool) {
        let w = &mut self.bits[(i / 64) as usize];
        let mask = 1u64 << (i % 64);
        let was = *w & mask != 0;
        if on && !was {
            *w |= mask;
            self.len += 1;
        } else if !on && was {
            *w &= !mask;
            self.len -= 1;
        }
    }

    /// Adds the coset of `s`; `s` must lie in the class.
    pub fn insert_coset(&mut self, s: u64) {
        for x in orbit(self.q, self.modulus, s) {
            let i = self.index(x).expect("coset leaves the residue class");
            self.set_index(i, true);
        }
    }

    pub fn remove_coset(&mut self, s: u64) {
        for x in orbit(self.q, self.modulus, s) {
            let i = self.index(x).expect("coset leaves the residue class");
            self.set_index(i, false);
        }
    }

    /// Raw words, bit `i` for class index `i`.
    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    /// Class indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    /// Residues in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.indices().map(|i| self.residue(i))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// The rest of the residue class.
    pub fn complement(&self) -> DefiningSet {
        let size = self.class_size();
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        let tail = size % 64;
        if tail != 0 {
            *bits.last_mut().expect("nonempty") &= (1u64 << tail) - 1;
        }
        DefiningSet { q: self.q, modulus: self.modulus, step: self.step, bits, len: size as usize - self.len }
    }

    /// `-T == T`
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|x| self.contains((self.modulus - x) % self.modulus))
    }

    /// First member index `>= from`, if any.
    pub fn next_one(&self, from: u64) -> Option<u64> {
        let size = self.class_size();
        if from >= size {
            return None;
        }
        let mut w = (from / 64) as usize;
        let mut word = self.bits[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let i = w as u64 * 64 + word.trailing_zeros() as u64;
                return (i < size).then_some(i);
            }
            w += 1;
            if w == self.bits.len() {
                return None;
            }
            word = self.bits[w];
        }
    }

    /// First non-member index `>= from`, or the class size.
    pub fn next_zero(&self, from: u64) -> u64 {
        let size = self.class_size();
        if from >= size {
            return size;
        }
        let mut w = (from / 64) as usize;
        let mut word = !self.bits[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return (w as u64 * 64 + word.trailing_zeros() as u64).min(size);
            }
            w += 1;
            if w == self.bits.len() {
                return size;
            }
            word = !self.bits[w];
        }
    }

    /// Last non-member index `<= from`, if any.
    pub fn prev_zero(&self, from: u64) -> Option<u64> {
        let size = self.class_size();
        if size == 0 {
            return None;
        }
        let from = from.min(size - 1);
        let mut w = (from / 64) as usize;
        let sh = 63 - from % 64;
        let mut word = (!self.bits[w]) << sh >> sh;
        loop {
            if word != 0 {
                return Some(w as u64 * 64 + 63 - word.leading_zeros() as u64);
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            word = !self.bits[w];
        }
    }

    /// Maximal circular runs of consecutive class indices. A full class is
    /// one arc starting at 0; a run through the top index continues at 0.
    pub fn arcs(&self) -> Vec<Arc> {
        let size = self.class_size();
        if self.len as u64 == size {
            return vec![Arc { start: 0, len: size }];
        }
        let mut out = Vec::new();
        let mut pos = 0;
        while let Some(s) = self.next_one(pos) {
            let e = self.next_zero(s);
            out.push(Arc { start: s, len: e - s });
            pos = e;
        }
        if out.len() >= 2 {
            let last = *out.last().expect("nonempty");
            if out[0].start == 0 && last.start + last.len == size {
                out.pop();
                out[0] = Arc { start: last.start, len: last.len + out[0].len };
            }
        }
        out
    }

    /// Smallest member of each coset, ascending.
    pub fn leaders(&self) -> Vec<u64> {
        self.iter().filter(|&x| orbit(self.q, self.modulus, x).iter().all(|&y| y >= x)).collect()
    }

    /// Number of distinct cosets in the set.
    pub fn coset_count(&self) -> usize {
        self.leaders().len()
    }
}

/// `T = C_b ∪ C_{b+r} ∪ ... ∪ C_{b+r(delta-2)}` for the given family.
pub fn defining_set(q: u64, m: u32, family: Family, delta: u64, b: u64) -> Result<DefiningSet, CyclotomicError> {
    if q % 2 == 0 || q < 3 {
        return Err(CyclotomicError::BadFamilyParams(format!("q = {q} must be odd")));
    }
    if m == 0 {
        return Err(CyclotomicError::BadFamilyParams("m must be positive".into()));
    }
    let mut t = DefiningSet::for_family(q, m, family)?;
    let n = t.class_size();
    if delta < 2 || delta > n {
        return Err(CyclotomicError::BadDelta { delta, max: n });
    }
    let r = family.r();
    if family == Family::Negacyclic && b % 2 == 0 {
        return Err(CyclotomicError::BadFamilyParams(format!("negacyclic offset b = {b} must be odd")));
    }
    let modulus = t.modulus();
    for i in 0..delta - 1 {
        let s = (b % modulus + r * i) % modulus;
        if !t.contains(s) {
            t.insert_coset(s);
        }
    }
    Ok(t)
}

/// Complement of `T` in its residue class, after checking `-T == T`.
pub fn dual_defining_set(t: &DefiningSet) -> Result<DefiningSet, CyclotomicError> {
    if !t.is_symmetric() {
        return Err(CyclotomicError::AsymmetricSet);
    }
    Ok(t.complement())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(ord_mod(3, 10).unwrap(), 4);
        assert_eq!(ord_mod(7, 344).unwrap(), 6);
        assert_eq!(ord_mod(3, 1).unwrap(), 1);
        assert!(matches!(ord_mod(3, 12), Err(CyclotomicError::NotCoprime { .. })));
    }

    #[test]
    fn small_cosets() {
        assert_eq!(coset(3, 10, 1).unwrap().elements, vec![1, 3, 7, 9]);
        assert_eq!(coset_leaders(3, 10, Parity::All).unwrap(), vec![0, 1, 2, 5]);
        assert_eq!(coset_leaders(3, 10, Parity::Odd).unwrap(), vec![1, 5]);
        assert_eq!(kth_largest_leader(3, 10, 2, Parity::All).unwrap(), 2);
        assert_eq!(kth_largest_leader(3, 10, 2, Parity::Odd).unwrap(), 1);
        assert!(matches!(
            kth_largest_leader(3, 10, 3, Parity::Odd),
            Err(CyclotomicError::NotEnoughCosets { k: 3, available: 2 })
        ));
    }

    #[test]
    fn family_sets() {
        let t = defining_set(3, 2, Family::Cyclic, 2, 1).unwrap();
        assert_eq!(t.to_vec(), vec![1, 3, 7, 9]);
        let t = defining_set(3, 3, Family::Negacyclic, 3, 1).unwrap();
        assert_eq!(t.to_vec(), vec![1, 3, 9, 19, 25, 27]);
        let d = dual_defining_set(&t).unwrap();
        assert_eq!(d.len(), 8);
        assert!(d.iter().all(|x| x % 2 == 1 && !t.contains(x)));
        assert_eq!(t.leaders(), vec![1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(defining_set(3, 2, Family::Cyclic, 1, 1), Err(CyclotomicError::BadDelta { .. })));
        assert!(matches!(defining_set(3, 2, Family::Cyclic, 11, 1), Err(CyclotomicError::BadDelta { .. })));
        assert!(matches!(defining_set(3, 3, Family::Negacyclic, 2, 2), Err(CyclotomicError::BadFamilyParams(_))));
        assert!(matches!(defining_set(4, 2, Family::Cyclic, 2, 1), Err(CyclotomicError::BadFamilyParams(_))));
    }

    #[test]
    fn asymmetric_set_is_rejected() {
        // C_1 mod 13 for q = 3 is {1, 3, 9}; -1 = 12 is not in it
        let mut t = DefiningSet::empty(3, 13, 1);
        t.insert_coset(1);
        assert_eq!(dual_defining_set(&t), Err(CyclotomicError::AsymmetricSet));
    }

    #[test]
    fn complement_masks_the_tail() {
        let t = DefiningSet::empty(3, 70, 1);
        let c = t.complement();
        assert_eq!(c.len(), 70);
        assert_eq!(c.iter().last(), Some(69));
    }

    #[test]
    fn prev_zero_crosses_words() {
        assert_eq!(DefiningSet::empty(3, 200, 1).complement().prev_zero(150), None);
        let mut u = DefiningSet::empty(3, 200, 1).complement();
        u.remove_coset(7);
        let top = *orbit(3, 200, 7).iter().max().unwrap();
        assert_eq!(u.prev_zero(199), Some(top));
        assert_eq!(u.prev_zero(6), None);
        assert_eq!(u.prev_zero(7), Some(7));
    }
}
