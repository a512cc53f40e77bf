//! Randomized invariant checks across the library.
//!
//! Sizes are drawn small enough that each case is cheap; the RNG inside a
//! case is seeded from a generated `u64`, so failures shrink to a concrete
//! (size, seed) pair that reproduces deterministically.

use bmatrix_core::{
    retrieve_from, run_trial, BipolarVector, ExperimentConfig, Fragment, OrderStrategy, Polarity,
    ProximityMatrix, ScanOptions, TMatrix, UpdateOrder,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_network(n: usize, memories: usize, seed: u64) -> (TMatrix, Vec<BipolarVector>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = TMatrix::zeros(n).unwrap();
    let mut fed = Vec::with_capacity(memories);
    for _ in 0..memories {
        let m = BipolarVector::random(n, &mut rng).unwrap();
        t = t.accumulate(&m).unwrap();
        fed.push(m);
    }
    (t, fed)
}

proptest! {
    #[test]
    fn interconnection_matrix_invariants(
        n in 2usize..=32,
        memories in 1usize..=12,
        seed in any::<u64>(),
    ) {
        let (t, _) = random_network(n, memories, seed);
        prop_assert_eq!(t.memory_count(), memories);
        for i in 0..n {
            prop_assert_eq!(t.entry(i, i), 0);
            for j in 0..n {
                let v = t.entry(i, j);
                prop_assert_eq!(v, t.entry(j, i));
                if i != j {
                    prop_assert!(v.unsigned_abs() as usize <= memories);
                    // each feed moves the entry by exactly +-1
                    prop_assert_eq!(v.rem_euclid(2) as usize, memories % 2);
                }
            }
        }
    }

    #[test]
    fn triangular_halves_reassemble_the_matrix(
        n in 2usize..=64,
        memories in 1usize..=20,
        seed in any::<u64>(),
    ) {
        let (t, _) = random_network(n, memories, seed);
        let b = t.lower_triangular();
        for i in 0..n {
            for j in 0..n {
                // B + B^t, entry by entry
                prop_assert_eq!(b.entry(i, j) + b.entry(j, i), t.entry(i, j));
                if j >= i {
                    prop_assert_eq!(b.entry(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn lone_memory_and_its_complement_are_stored(
        n in 2usize..=32,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = BipolarVector::random(n, &mut rng).unwrap();
        let t = TMatrix::zeros(n).unwrap().accumulate(&m).unwrap();
        prop_assert!(t.is_stored(&m).unwrap());
        prop_assert!(t.is_stored(&m.complement()).unwrap());
    }

    #[test]
    fn fair_matrix_invariants(n in 2usize..=64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ProximityMatrix::fair(n, &mut rng).unwrap();
        let max = (n - 1) as f64;
        for i in 0..n {
            prop_assert_eq!(p.entry(i, i), 0.0);
            for j in 0..n {
                prop_assert_eq!(p.entry(i, j), p.entry(j, i));
                if i != j {
                    prop_assert!(p.entry(i, j) > 0.0 && p.entry(i, j) <= max);
                }
            }
        }
        for j in 2..n {
            prop_assert!(p.entry(0, j) > p.entry(0, j - 1));
        }
        // the canonical first row makes neuron 0's order the identity
        let order = p.update_order(0, OrderStrategy::RowSort).unwrap();
        let identity = UpdateOrder::identity(n).unwrap();
        prop_assert_eq!(order.as_slice(), identity.as_slice());
    }

    #[test]
    fn update_orders_are_permutations_from_the_start(
        n in 2usize..=32,
        seed in any::<u64>(),
        start_pick in any::<prop::sample::Index>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ProximityMatrix::fair(n, &mut rng).unwrap();
        let start = start_pick.index(n);
        for strategy in [OrderStrategy::RowSort, OrderStrategy::GreedyChain] {
            let order = p.update_order(start, strategy).unwrap();
            prop_assert_eq!(order.start(), start);
            prop_assert_eq!(order.len(), n);
            let mut seen = vec![false; n];
            for pos in 0..n {
                let v = order.at(pos);
                prop_assert!(v < n && !seen[v]);
                seen[v] = true;
            }
        }
    }

    #[test]
    fn proximity_text_round_trips(n in 2usize..=24, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ProximityMatrix::fair(n, &mut rng).unwrap();
        let mut buf = Vec::new();
        p.to_writer(&mut buf).unwrap();
        let back = ProximityMatrix::from_reader(buf.as_slice()).unwrap();
        prop_assert_eq!(back.n(), n);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(back.entry(i, j), p.entry(i, j));
            }
        }
    }

    #[test]
    fn stepping_never_rewrites_the_prefix(
        n in 2usize..=24,
        memories in 1usize..=8,
        seed in any::<u64>(),
        start_pick in any::<prop::sample::Index>(),
    ) {
        let (t, _) = random_network(n, memories, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let p = ProximityMatrix::fair(n, &mut rng).unwrap();
        let order = p
            .update_order(start_pick.index(n), OrderStrategy::RowSort)
            .unwrap();
        let b = t.permute(&order).unwrap().lower_triangular();
        let mut fragment = Fragment::seed(order, Polarity::Plus);
        let mut previous = fragment.assigned().to_vec();
        while fragment.step(&b).unwrap().is_some() {
            prop_assert_eq!(&fragment.assigned()[..previous.len()], &previous[..]);
            previous = fragment.assigned().to_vec();
        }
        prop_assert_eq!(previous.len(), n);
    }

    #[test]
    fn opposite_polarities_give_complements_without_zero_sums(
        n in 2usize..=24,
        memories in 1usize..=8,
        seed in any::<u64>(),
    ) {
        let (t, _) = random_network(n, memories, seed);
        let b = t.lower_triangular();
        let (plus, zeros) = b.spread_traced(Polarity::Plus);
        if zeros == 0 {
            let minus = b.spread(Polarity::Minus);
            prop_assert_eq!(minus, plus.complement());
        }
    }

    #[test]
    fn retrieval_always_honors_the_clamp(
        n in 2usize..=20,
        memories in 1usize..=6,
        seed in any::<u64>(),
        start_pick in any::<prop::sample::Index>(),
    ) {
        let (t, _) = random_network(n, memories, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let p = ProximityMatrix::fair(n, &mut rng).unwrap();
        let start = start_pick.index(n);
        for polarity in Polarity::BOTH {
            for strategy in [OrderStrategy::RowSort, OrderStrategy::GreedyChain] {
                let out = retrieve_from(&t, &p, start, polarity, strategy).unwrap();
                prop_assert_eq!(out.len(), n);
                prop_assert_eq!(out.get(start), polarity.sign());
            }
        }
    }
}

proptest! {
    // trials are heavier: a full scan per fed memory
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trials_replay_identically(
        n in 2usize..=12,
        memories in 1usize..=5,
        seed in any::<u64>(),
        trial in 0u64..8,
    ) {
        let config = ExperimentConfig {
            neurons: n,
            max_memories: memories,
            iterations: 1,
            master_seed: seed,
            scan: ScanOptions::default(),
        };
        let a = run_trial(&config, trial).unwrap();
        let b = run_trial(&config, trial).unwrap();
        prop_assert_eq!(&a, &b);
        for point in &a {
            prop_assert!(point.stored <= point.fed as u64);
            prop_assert!(point.retrieved <= point.fed as u64);
        }
        prop_assert_eq!(a[0].stored, 1);
        prop_assert_eq!(a[0].retrieved, 1);
    }
}
