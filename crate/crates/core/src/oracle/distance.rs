//! Exact minimum distance.
//!
//! Two routes: enumerate every nonzero codeword from a generator matrix, or
//! search supports of increasing size for a dependent set of columns in a
//! parity-check matrix. The second is the dual-side computation used when
//! the message space is too large.

use serde::Serialize;

use crate::code::CodeInstance;
use crate::dec;
use crate::error::{CodeError, OracleError};
use crate::field::{BaseField, FiniteField};
use crate::matrix::MatrixFq;

pub const DEFAULT_MAX_CODEWORDS: u128 = 20_000_000;
pub const DEFAULT_MAX_NODES: u128 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    /// Cap on `q^k` for enumeration.
    pub max_codewords: u128,
    /// Cap on column reductions in the support search.
    pub max_nodes: u128,
    pub workers: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            max_codewords: DEFAULT_MAX_CODEWORDS,
            max_nodes: DEFAULT_MAX_NODES,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Enumeration,
    SupportSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub distance: usize,
    pub achieving_word: Vec<u32>,
    /// Codewords visited (enumeration) or column reductions (support search).
    #[serde(with = "dec")]
    pub enumerated: u128,
    pub method: DistanceMethod,
}

pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Addition table for small fields, falling back to the field itself.
struct Adder<'a> {
    f: &'a BaseField,
    q: usize,
    table: Vec<u32>,
}

impl<'a> Adder<'a> {
    fn new(f: &'a BaseField) -> Self {
        let q = f.q() as usize;
        let table = if q <= 64 {
            (0..q * q).map(|i| f.add(&((i / q) as u32), &((i % q) as u32))).collect()
        } else {
            Vec::new()
        };
        Adder { f, q, table }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.table.is_empty() {
            self.f.add(&a, &b)
        } else {
            self.table[a as usize * self.q + b as usize]
        }
    }
}

type SparseRow = Vec<(usize, u32)>;

struct Enumerator<'a> {
    add: Adder<'a>,
    q: u32,
    n: usize,
    /// `steps[t][v]`: row `t` scaled by `(v + 1) - v` in the element encoding.
    steps: Vec<Vec<SparseRow>>,
    /// `scaled[t][v]`: row `t` scaled by element `v`.
    scaled: Vec<Vec<SparseRow>>,
}

fn sparse_scaled(f: &BaseField, row: &[u32], c: u32) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|&(_, &g)| g != 0 && c != 0)
        .map(|(j, &g)| (j, f.mul(&c, &g)))
        .collect()
}

impl<'a> Enumerator<'a> {
    fn new(g: &MatrixFq, f: &'a BaseField) -> Self {
        let q = f.q();
        let mut steps = Vec::with_capacity(g.rows());
        let mut scaled = Vec::with_capacity(g.rows());
        for t in 0..g.rows() {
            let row = g.row(t);
            steps.push((0..q).map(|v| sparse_scaled(f, row, f.sub(&((v + 1) % q), &v))).collect());
            scaled.push((0..q).map(|v| sparse_scaled(f, row, v)).collect());
        }
        Enumerator { add: Adder::new(f), q, n: g.cols(), steps, scaled }
    }

    fn k(&self) -> usize {
        self.steps.len()
    }

    /// Counter digits and Gray digits `g_j = d_j - d_{j+1} mod q` of index `i`.
    fn digits(&self, mut i: u128) -> (Vec<u32>, Vec<u32>) {
        let k = self.k();
        let q = self.q as u128;
        let mut d = vec![0u32; k];
        for x in d.iter_mut() {
            *x = (i % q) as u32;
            i /= q;
        }
        let gray = (0..k)
            .map(|j| {
                let next = if j + 1 < k { d[j + 1] } else { 0 };
                (d[j] + self.q - next) % self.q
            })
            .collect();
        (d, gray)
    }

    fn word_at(&self, i: u128) -> Vec<u32> {
        let (_, gray) = self.digits(i);
        let mut cw = vec![0u32; self.n];
        for (t, &v) in gray.iter().enumerate() {
            for &(p, c) in &self.scaled[t][v as usize] {
                cw[p] = self.add.add(cw[p], c);
            }
        }
        cw
    }

    /// Minimum `(weight, index)` over nonzero messages with index in `[lo, hi)`.
    fn scan(&self, lo: u128, hi: u128) -> Option<(usize, u128)> {
        if lo >= hi {
            return None;
        }
        let k = self.k();
        let (mut d, mut gray) = self.digits(lo);
        let mut cw = self.word_at(lo);
        let mut w = weight(&cw);
        let mut best: Option<(usize, u128)> = None;
        let mut i = lo;
        loop {
            if i != 0 && best.is_none_or(|(bw, _)| w < bw) {
                best = Some((w, i));
            }
            i += 1;
            if i == hi {
                return best;
            }
            let mut t = 0;
            while d[t] == self.q - 1 {
                d[t] = 0;
                t += 1;
            }
            debug_assert!(t < k);
            d[t] += 1;
            let v = gray[t];
            gray[t] = (v + 1) % self.q;
            for &(p, c) in &self.steps[t][v as usize] {
                let old = cw[p];
                let new = self.add.add(old, c);
                cw[p] = new;
                w = w + (new != 0) as usize - (old != 0) as usize;
            }
        }
    }
}

fn checked_count(q: u32, k: usize) -> Option<u128> {
    (q as u128).checked_pow(k as u32)
}

/// Minimum distance by enumerating all `q^k - 1` nonzero codewords of the
/// row space of `g` (assumed full rank), in modular Gray order so each step
/// adds one scaled row. Work is split into contiguous index blocks; ties go
/// to the smallest message index, so the result does not depend on `workers`.
pub fn min_distance(g: &MatrixFq, f: &BaseField, opts: &DistanceOptions) -> Result<DistanceResult, OracleError> {
    let k = g.rows();
    if k == 0 {
        return Err(OracleError::Code(CodeError::EmptySet));
    }
    let total = match checked_count(f.q(), k) {
        Some(c) if c <= opts.max_codewords => c,
        Some(c) => return Err(OracleError::TooManyCodewords { count: c.to_string(), cap: opts.max_codewords }),
        None => {
            return Err(OracleError::TooManyCodewords { count: format!("{}^{k}", f.q()), cap: opts.max_codewords })
        }
    };
    let en = Enumerator::new(g, f);
    let workers = opts.workers.max(1) as u128;
    let chunk = total.div_ceil(workers);
    let blocks: Vec<(u128, u128)> =
        (0..workers).map(|b| (b * chunk, ((b + 1) * chunk).min(total))).filter(|(lo, hi)| lo < hi).collect();
    let results: Vec<Option<(usize, u128)>> = if blocks.len() == 1 {
        vec![en.scan(blocks[0].0, blocks[0].1)]
    } else {
        std::thread::scope(|s| {
            let en = &en;
            let handles: Vec<_> = blocks.iter().map(|&(lo, hi)| s.spawn(move || en.scan(lo, hi))).collect();
            handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
        })
    };
    let (distance, idx) = results.into_iter().flatten().min().expect("at least one nonzero codeword");
    let achieving_word = en.word_at(idx);
    debug_assert_eq!(weight(&achieving_word), distance);
    Ok(DistanceResult { distance, achieving_word, enumerated: total - 1, method: DistanceMethod::Enumeration })
}

/// Incremental echelon basis over F_q; vectors are kept with a leading 1.
struct Basis<'a> {
    f: &'a BaseField,
    rows: Vec<(usize, Vec<u32>)>,
}

impl<'a> Basis<'a> {
    fn reduce(&self, v: &mut [u32]) {
        for (piv, b) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                let nc = self.f.neg(&c);
                for (x, &y) in v.iter_mut().zip(b) {
                    if y != 0 {
                        *x = self.f.add(x, &self.f.mul(&nc, &y));
                    }
                }
            }
        }
    }

    /// Pushes `v` (already reduced) if nonzero.
    fn push(&mut self, mut v: Vec<u32>) -> bool {
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.f.inv(&v[piv]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = self.f.mul(x, &inv);
        }
        self.rows.push((piv, v));
        true
    }
}

struct Search {
    cols: Vec<Vec<u32>>,
    nodes: u128,
    budget: u128,
}

impl Search {
    /// Extends `chosen` to `w` columns; returns the first dependent set in
    /// lexicographic order.
    fn dfs(&mut self, basis: &mut Basis<'_>, chosen: &mut Vec<usize>, w: usize) -> Result<bool, OracleError> {
        let n = self.cols.len();
        let from = chosen.last().map_or(0, |&c| c + 1);
        let need = w - chosen.len();
        for c in from..=n - need {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OracleError::SearchBudgetExceeded { budget: self.budget });
            }
            let mut v = self.cols[c].clone();
            basis.reduce(&mut v);
            chosen.push(c);
            if need == 1 {
                if v.iter().all(|&x| x == 0) {
                    return Ok(true);
                }
            } else if basis.push(v) {
                if self.dfs(basis, chosen, w)? {
                    return Ok(true);
                }
                basis.rows.pop();
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Minimum distance of `{c : H c^T = 0}` by searching column subsets of `h`
/// of increasing size. With `anchored`, subsets must contain column 0; this
/// is exact for constacyclic codes, where a shift moves any support onto 0.
pub fn min_distance_by_parity(
    h: &MatrixFq,
    f: &BaseField,
    anchored: bool,
    opts: &DistanceOptions,
) -> Result<DistanceResult, OracleError> {
    Ok(search_supports(h, f, anchored, usize::MAX, opts)?.expect("rank + 1 columns are always dependent"))
}

/// Lightest word of `{c : H c^T = 0}` with weight at most `max_w`, if any.
fn search_supports(
    h: &MatrixFq,
    f: &BaseField,
    anchored: bool,
    max_w: usize,
    opts: &DistanceOptions,
) -> Result<Option<DistanceResult>, OracleError> {
    let n = h.cols();
    let mut red = h.clone();
    let pivots = red.rref(f);
    let rank = pivots.len();
    if rank == n {
        return Err(OracleError::Code(CodeError::EmptySet));
    }
    let cols: Vec<Vec<u32>> = (0..n).map(|c| (0..rank).map(|r| red.get(r, c)).collect()).collect();
    let mut search = Search { cols, nodes: 0, budget: opts.max_nodes };
    for w in 1..=(rank + 1).min(max_w) {
        let mut basis = Basis { f, rows: Vec::new() };
        let mut chosen = Vec::with_capacity(w);
        let found = if anchored {
            search.nodes += 1;
            let v = search.cols[0].clone();
            chosen.push(0);
            if w == 1 {
                v.iter().all(|&x| x == 0)
            } else {
                basis.push(v) && search.dfs(&mut basis, &mut chosen, w)?
            }
        } else {
            search.dfs(&mut basis, &mut chosen, w)?
        };
        if found {
            let sub = MatrixFq::from_rows((0..rank).map(|r| chosen.iter().map(|&c| red.get(r, c)).collect()).collect(), w);
            let x = sub.null_vector(f).expect("dependent columns");
            let mut word = vec![0u32; n];
            for (&c, &v) in chosen.iter().zip(&x) {
                word[c] = v;
            }
            debug_assert_eq!(weight(&word), w);
            return Ok(Some(DistanceResult {
                distance: w,
                achieving_word: word,
                enumerated: search.nodes,
                method: DistanceMethod::SupportSearch,
            }));
        }
    }
    Ok(None)
}

/// `true` when `word` is orthogonal to every row of `partner`.
pub fn in_code(partner: &MatrixFq, f: &BaseField, word: &[u32]) -> bool {
    (0..partner.rows()).all(|r| {
        partner.row(r).iter().zip(word).fold(0u32, |acc, (&a, &b)| f.add(&acc, &f.mul(&a, &b))) == 0
    })
}

/// Minimum distance of `code`, where `partner` is its dual. Enumerates the
/// code when `q^k` fits the cap, otherwise searches supports in the
/// partner's generator matrix. The achieving word is checked against it.
pub fn code_distance(
    code: &CodeInstance,
    partner: &CodeInstance,
    f: &BaseField,
    opts: &DistanceOptions,
) -> Result<DistanceResult, OracleError> {
    let h = partner.generator_matrix();
    let k = code.dimension();
    let small = checked_count(f.q(), k).is_some_and(|c| c <= opts.max_codewords);
    let res = if small {
        min_distance(&code.generator_matrix(), f, opts)?
    } else {
        min_distance_by_parity(&h, f, true, opts)?
    };
    if !in_code(&h, f, &res.achieving_word) || weight(&res.achieving_word) != res.distance {
        return Err(OracleError::Code(CodeError::NotOrthogonal));
    }
    Ok(res)
}

/// `true` when every nonzero word of `code` has weight at least `w`. Cheaper
/// than the exact distance when `w` is small: the support search stops at
/// `w - 1` instead of running until it finds a word.
pub fn distance_at_least(
    code: &CodeInstance,
    partner: &CodeInstance,
    f: &BaseField,
    w: usize,
    opts: &DistanceOptions,
) -> Result<bool, OracleError> {
    let small = checked_count(f.q(), code.dimension()).is_some_and(|c| c <= opts.max_codewords);
    if small {
        return Ok(min_distance(&code.generator_matrix(), f, opts)?.distance >= w);
    }
    if w <= 1 {
        return Ok(true);
    }
    Ok(search_supports(&partner.generator_matrix(), f, true, w - 1, opts)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{dual_code, realize, CodeSpec, SplittingField};
    use crate::cyclotomic::Family;

    fn serial() -> DistanceOptions {
        DistanceOptions { workers: 1, ..DistanceOptions::default() }
    }

    fn dual_distance(q: u64, m: u32, family: Family, delta: u64, opts: &DistanceOptions) -> DistanceResult {
        let sf = SplittingField::new(q, m, family).unwrap();
        let spec = CodeSpec::narrow(q, m, family, delta).unwrap();
        let code = realize(&spec, &sf).unwrap();
        let dual = dual_code(&spec, &sf).unwrap();
        code_distance(&dual, &code, &sf.base, opts).unwrap()
    }

    #[test]
    fn ternary_hamming_like() {
        // [4, 2] code over F_3 with distance 3
        let f = BaseField::new(3).unwrap();
        let g = MatrixFq::from_rows(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]], 4);
        let r = min_distance(&g, &f, &serial()).unwrap();
        assert_eq!(r.distance, 3);
        assert_eq!(r.enumerated, 8);
        let h = MatrixFq::from_rows(vec![vec![2, 2, 1, 0], vec![2, 1, 0, 1]], 4);
        assert!(in_code(&h, &f, &r.achieving_word));
        assert_eq!(min_distance_by_parity(&h, &f, false, &serial()).unwrap().distance, 3);
    }

    #[test]
    fn dual_distances_from_examples() {
        assert_eq!(dual_distance(3, 2, Family::Cyclic, 2, &serial()).distance, 4);
        assert_eq!(dual_distance(3, 2, Family::Cyclic, 3, &serial()).distance, 2);
        assert_eq!(dual_distance(3, 3, Family::Negacyclic, 2, &serial()).distance, 6);
        assert_eq!(dual_distance(7, 2, Family::Negacyclic, 2, &serial()).distance, 19);
    }

    #[test]
    fn routes_agree() {
        let sf = SplittingField::new(3, 3, Family::Negacyclic).unwrap();
        let spec = CodeSpec::narrow(3, 3, Family::Negacyclic, 2).unwrap();
        let code = realize(&spec, &sf).unwrap();
        let dual = dual_code(&spec, &sf).unwrap();
        let a = min_distance(&dual.generator_matrix(), &sf.base, &serial()).unwrap();
        let b = min_distance_by_parity(&code.generator_matrix(), &sf.base, true, &serial()).unwrap();
        let c = min_distance_by_parity(&code.generator_matrix(), &sf.base, false, &serial()).unwrap();
        assert_eq!((a.distance, b.distance, c.distance), (6, 6, 6));
        assert_eq!(b.method, DistanceMethod::SupportSearch);
    }

    #[test]
    fn threshold_search_matches_exact_distance() {
        // (3,3) negacyclic delta=2: d(C) = 5, d(C⊥) = 6
        let sf = SplittingField::new(3, 3, Family::Negacyclic).unwrap();
        let spec = CodeSpec::narrow(3, 3, Family::Negacyclic, 2).unwrap();
        let code = realize(&spec, &sf).unwrap();
        let dual = dual_code(&spec, &sf).unwrap();
        let search = DistanceOptions { max_codewords: 1, ..serial() };
        for opts in [serial(), search] {
            assert!(distance_at_least(&code, &dual, &sf.base, 5, &opts).unwrap());
            assert!(!distance_at_least(&code, &dual, &sf.base, 6, &opts).unwrap());
            assert!(distance_at_least(&dual, &code, &sf.base, 6, &opts).unwrap());
            assert!(!distance_at_least(&dual, &code, &sf.base, 7, &opts).unwrap());
        }
    }

    #[test]
    fn workers_do_not_change_the_result() {
        let sf = SplittingField::new(3, 3, Family::Cyclic).unwrap();
        let spec = CodeSpec::narrow(3, 3, Family::Cyclic, 2).unwrap();
        let g = dual_code(&spec, &sf).unwrap().generator_matrix();
        let one = min_distance(&g, &sf.base, &serial()).unwrap();
        for workers in [2, 3, 7] {
            assert_eq!(min_distance(&g, &sf.base, &DistanceOptions { workers, ..serial() }).unwrap(), one);
        }
    }

    #[test]
    fn caps() {
        let f = BaseField::new(3).unwrap();
        let g = MatrixFq::from_rows(vec![vec![1, 0, 1], vec![0, 1, 1]], 3);
        let tight = DistanceOptions { max_codewords: 8, ..serial() };
        assert!(matches!(min_distance(&g, &f, &tight), Err(OracleError::TooManyCodewords { .. })));
        let h = MatrixFq::from_rows(vec![vec![1, 1, 2]], 3);
        let none = DistanceOptions { max_nodes: 1, ..serial() };
        assert!(matches!(
            min_distance_by_parity(&h, &f, false, &none),
            Err(OracleError::SearchBudgetExceeded { budget: 1 })
        ));
    }

    #[test]
    fn extension_field_alphabet() {
        let f = BaseField::new(9).unwrap();
        // repetition code of length 3 over F_9
        let g = MatrixFq::from_rows(vec![vec![1, 1, 1]], 3);
        let r = min_distance(&g, &f, &serial()).unwrap();
        assert_eq!((r.distance, r.enumerated), (3, 8));
    }
}
