//! Structural invariants as properties over small code families.

use proptest::prelude::*;

use bchlab_core::code::{bch_bound, dual_of, realize, CodeInstance};
use bchlab_core::cyclotomic::{coset, defining_set, dual_defining_set, ord_mod};
use bchlab_core::field::{is_irreducible, FiniteField};
use bchlab_core::oracle::{
    anchor_leader, distance_at_least, dually_bch_oracle, gap_scan, min_distance, witness_set, DistanceOptions, DualSweep,
};
use bchlab_core::{BaseField, CodeSpec, Family, LeaderTable, MatrixFq, PrimePower, SplittingField};

use Family::{Cyclic, Negacyclic};

/// Points small enough to realize in a few milliseconds.
const POINTS: &[(u64, u32, Family)] = &[
    (3, 2, Cyclic),
    (3, 3, Cyclic),
    (5, 2, Cyclic),
    (7, 2, Cyclic),
    (9, 2, Cyclic),
    (3, 3, Negacyclic),
    (3, 4, Negacyclic),
    (7, 2, Negacyclic),
    (11, 2, Negacyclic),
    (5, 3, Negacyclic),
];

fn serial() -> DistanceOptions {
    DistanceOptions { workers: 1, max_codewords: 200_000, max_nodes: 5_000_000 }
}

/// A point and a designed distance in `[2, n]`.
fn instance() -> impl Strategy<Value = (u64, u32, Family, u64)> {
    prop::sample::select(POINTS).prop_flat_map(|(q, m, f)| {
        let n = f.length(q, m).unwrap();
        (Just(q), Just(m), Just(f), 2..=n)
    })
}

fn realized(q: u64, m: u32, family: Family, delta: u64, b: u64) -> (SplittingField, CodeInstance, CodeInstance) {
    let sf = SplittingField::new(q, m, family).unwrap();
    let spec = CodeSpec::new(q, m, family, delta, b).unwrap();
    let code = realize(&spec, &sf).unwrap();
    let dual = dual_of(&code, &sf).unwrap();
    (sf, code, dual)
}

fn odd_prime_power() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 9, 11, 13, 25, 27])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cosets_partition_the_residues(q in odd_prime_power(), n in 2u64..3000) {
        prop_assume!(ord_mod(q, n).is_ok());
        let table = LeaderTable::build(q, n).unwrap();
        let mut covered = 0;
        for l in table.leaders(bchlab_core::Parity::All) {
            let c = coset(q, n, l).unwrap();
            prop_assert_eq!(c.leader, l);
            for &x in &c.elements {
                prop_assert_eq!(table.leader_of(x), l);
            }
            covered += c.elements.len() as u64;
        }
        prop_assert_eq!(covered, n);
        for x in [0, 1, n / 2, n - 1] {
            prop_assert_eq!(table.leader_of((x as u128 * q as u128 % n as u128) as u64), table.leader_of(x));
            prop_assert!(table.leader_of(x) <= x);
        }
    }

    #[test]
    fn dimension_and_generator((q, m, f, delta) in instance(), b in 0u64..4) {
        prop_assume!(f == Cyclic || b % 2 == 1);
        let spec = CodeSpec::new(q, m, f, delta, b).unwrap();
        let t = spec.defining_set().unwrap();
        let (sf, code, dual) = realized(q, m, f, delta, b);
        prop_assert_eq!(spec.dimension().unwrap(), spec.n() - t.len() as u64);
        prop_assert_eq!(code.generator.degree(), Some(t.len()));
        prop_assert_eq!(code.dimension() + t.len(), code.length());
        prop_assert!(code.generator.divides(&sf.base, &sf.binomial()).unwrap());
        prop_assert!(dual.generator.divides(&sf.base, &sf.binomial()).unwrap());
        prop_assert!(code.generator_matrix().mul_transpose(&sf.base, &dual.generator_matrix()).is_zero());
        // every code of these lengths is LCD
        prop_assert!(t.is_symmetric());
        prop_assert_eq!(code.generator_matrix().vstack(&dual.generator_matrix()).rank(&sf.base), code.length());
    }

    #[test]
    fn bch_bound_is_a_lower_bound((q, m, f, delta) in instance()) {
        let (sf, code, dual) = realized(q, m, f, delta, 1);
        for (c, partner) in [(&code, &dual), (&dual, &code)] {
            if c.dimension() == 0 || c.defining_set.is_empty() {
                continue;
            }
            let bound = bch_bound(&c.defining_set).unwrap() as usize;
            match distance_at_least(c, partner, &sf.base, bound, &serial()) {
                Ok(holds) => prop_assert!(holds, "word below the BCH bound {}", bound),
                Err(e) => prop_assume!(false, "out of reach: {}", e),
            }
        }
    }

    #[test]
    fn gap_scan_postcondition((q, m, f, delta) in instance()) {
        let anchor = anchor_leader(q, m, f).unwrap();
        let t = defining_set(q, m, f, delta, 1).unwrap();
        let tperp = dual_defining_set(&t).unwrap();
        let Ok(scan) = gap_scan(&tperp, anchor) else {
            // the anchor itself left T⊥
            prop_assert!(!tperp.contains(anchor));
            return Ok(());
        };
        let step = f.r();
        let modulus = tperp.modulus();
        if let Some(low) = scan.low {
            prop_assert!(low < anchor && !tperp.contains(low));
            prop_assert!((low + step..=anchor).step_by(step as usize).all(|x| tperp.contains(x)));
        } else {
            prop_assert!((anchor % step..=anchor).step_by(step as usize).all(|x| tperp.contains(x)));
        }
        if scan.two_sided {
            if let Some(high) = scan.high {
                prop_assert!(high > anchor && high < modulus && !tperp.contains(high));
                prop_assert!((anchor..high).step_by(step as usize).all(|x| tperp.contains(x)));
            }
        }
    }

    #[test]
    fn dual_sweep_matches_direct((q, m, f, delta) in instance(), steps in 0u64..6) {
        let n = f.length(q, m).unwrap();
        prop_assume!(delta + steps <= n);
        let mut sweep = DualSweep::new(q, m, f, 1, delta).unwrap();
        for _ in 0..steps {
            sweep.advance();
        }
        let direct = dual_defining_set(&defining_set(q, m, f, delta + steps, 1).unwrap()).unwrap();
        prop_assert_eq!(sweep.tperp(), &direct);
    }

    #[test]
    fn dually_witness_rebuilds_the_dual((q, m, f, delta) in instance()) {
        let tperp = dual_defining_set(&defining_set(q, m, f, delta, 1).unwrap()).unwrap();
        prop_assume!(!tperp.is_empty());
        let v = dually_bch_oracle(&tperp).unwrap();
        match v.witness_run {
            Some(w) => {
                prop_assert!(v.is_dually);
                prop_assert_eq!(witness_set(&tperp, w), tperp);
            }
            None => {
                prop_assert!(!v.is_dually);
                let c = v.counterexample.expect("a missed residue");
                prop_assert!(tperp.contains(c));
            }
        }
    }
}

/// Monic irreducibles of degree `k` over F_p, lowest coefficient first.
fn irreducibles(p: u32, k: usize, limit: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (p as u64).pow(k as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut x = idx;
        for _ in 0..k {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(p, &f).unwrap() {
            out.push(f);
            if out.len() == limit {
                break;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    /// Another model of F_{q^l} moves beta to a conjugate-class
    /// representative of another root, so the code changes by a coordinate
    /// multiplier: same dimension, same distance.
    #[test]
    fn second_modulus_gives_same_parameters(
        point in prop::sample::select(&[(3u64, 2u32, Cyclic), (3, 3, Negacyclic), (5, 2, Cyclic), (7, 2, Negacyclic)][..]),
        pick in 0usize..16,
        delta_pick in 0u64..1000,
    ) {
        let (q, m, f) = point;
        let n = f.length(q, m).unwrap();
        let delta = 2 + delta_pick % (n - 1);
        let pp = PrimePower::odd(q).unwrap();
        let l = ord_mod(q, n * f.r()).unwrap() as usize;
        let cands = irreducibles(pp.p, pp.k as usize * l, 16);
        let modulus = cands[pick % cands.len()].clone();

        let a = SplittingField::new(q, m, f).unwrap();
        let b = SplittingField::with_modulus(q, m, f, modulus).unwrap();
        let spec = CodeSpec::narrow(q, m, f, delta).unwrap();
        let ca = realize(&spec, &a).unwrap();
        let cb = realize(&spec, &b).unwrap();
        prop_assert_eq!(ca.generator.degree(), cb.generator.degree());
        prop_assert!(cb.generator.divides(&b.base, &b.binomial()).unwrap());
        let opts = serial();
        if let (Ok(da), Ok(db)) = (min_distance(&ca.generator_matrix(), &a.base, &opts), min_distance(&cb.generator_matrix(), &b.base, &opts)) {
            prop_assert_eq!(da.distance, db.distance);
        }
    }

    #[test]
    fn distance_ignores_row_operations(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]),
        k in 1usize..4,
        n in 4usize..9,
        seed in prop::collection::vec(0u32..1000, 64),
    ) {
        let f = BaseField::new(q).unwrap();
        let qq = q as u32;
        let mut rows: Vec<Vec<u32>> = (0..k).map(|r| (0..n).map(|c| seed[(r * n + c) % 64] % qq).collect()).collect();
        let g = MatrixFq::from_rows(rows.clone(), n);
        prop_assume!(g.rank(&f) == k);
        let before = min_distance(&g, &f, &serial()).unwrap().distance;

        // reverse rows, scale each by a nonzero element, add row 0 into row k-1
        rows.reverse();
        for (i, r) in rows.iter_mut().enumerate() {
            let s = 1 + seed[(i + 7) % 64] % (qq - 1);
            for x in r.iter_mut() {
                *x = f.mul(x, &s);
            }
        }
        if k > 1 {
            let first = rows[0].clone();
            for (x, y) in rows[k - 1].iter_mut().zip(&first) {
                *x = f.add(x, y);
            }
        }
        let after = min_distance(&MatrixFq::from_rows(rows, n), &f, &serial()).unwrap().distance;
        prop_assert_eq!(before, after);
    }
}
