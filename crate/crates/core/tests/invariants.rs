mod common;

use common::{kron, matvec, max_diff, popcount_sign, random_structural, rows_of};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparse_qsim::das::{das_decode, das_encode, das_mtp, das_mvm, DasMatrix};
use sparse_qsim::dax::{dax_decode, dax_encode, dax_mtp, dax_mvm, DaxMatrix};
use sparse_qsim::dense::{dense_tensor, zero_ratio};
use sparse_qsim::rh::{
    block_cost, optimal_block_size, quadrant_sign, rh_build, rh_mvm, sign_row_block,
    sign_row_logarithm, SignCounter, SignMethod,
};
use sparse_qsim::sparsity::{ratio_power, ratio_tensor};
use sparse_qsim::StateVector;

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio_tensor_is_symmetric_and_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let ab = ratio_tensor(a, b).unwrap();
        let ba = ratio_tensor(b, a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-15);
        prop_assert!(ab + 1e-15 >= a.max(b));
        prop_assert!(ab <= 1.0 + 1e-15);
    }

    #[test]
    fn ratio_power_is_monotone_in_m(r in 0.0f64..=1.0, m in 1u32..40) {
        prop_assert!(ratio_power(r, m + 1).unwrap() + 1e-15 >= ratio_power(r, m).unwrap());
    }

    #[test]
    fn measured_tensor_ratio_matches_prediction(seed in any::<u64>(), ra in 0u32..4, ca in 0u32..4, rb in 0u32..4, cb in 0u32..4) {
        let mut rng = seeded(seed);
        let a = random_structural(&mut rng, 1 << ra, 1 << ca, 0.4, false);
        let b = random_structural(&mut rng, 1 << rb, 1 << cb, 0.6, false);
        let measured = common::count_zeros(&kron(&rows_of(&a), &rows_of(&b)));
        let total = (1usize << (ra + rb + ca + cb)) as f64;
        let predicted = ratio_tensor(zero_ratio(&a), zero_ratio(&b)).unwrap();
        prop_assert!((measured as f64 / total - predicted).abs() < 1e-12);
    }

    #[test]
    fn encode_decode_round_trips(seed in any::<u64>(), r in 0u32..7, c in 0u32..7, density in 0.05f64..1.0) {
        let mut rng = seeded(seed);
        let m = random_structural(&mut rng, 1 << r, 1 << c, density, true);
        prop_assert_eq!(dax_decode(&dax_encode(&m)).unwrap(), m.clone());
        let das = das_encode(&m).unwrap();
        prop_assert_eq!(das_decode(&das).unwrap(), m.clone());
        prop_assert_eq!(DasMatrix::from_dax(&dax_encode(&m)).unwrap(), das);
    }

    #[test]
    fn dumps_round_trip(seed in any::<u64>(), r in 0u32..6, c in 0u32..6) {
        let mut rng = seeded(seed);
        let m = random_structural(&mut rng, 1 << r, 1 << c, 0.3, true);
        let dax = dax_encode(&m);
        let mut buf = Vec::new();
        dax.write_dump(&mut buf).unwrap();
        prop_assert_eq!(DaxMatrix::read_dump(buf.as_slice()).unwrap(), dax);
        let das = das_encode(&m).unwrap();
        let mut buf = Vec::new();
        das.write_dump(&mut buf).unwrap();
        prop_assert_eq!(DasMatrix::read_dump(buf.as_slice()).unwrap(), das);
    }

    #[test]
    fn mtp_is_a_homomorphism(seed in any::<u64>(), dims in prop::collection::vec(0u32..4, 4)) {
        let mut rng = seeded(seed);
        let a = random_structural(&mut rng, 1 << dims[0], 1 << dims[1], 0.5, true);
        let b = random_structural(&mut rng, 1 << dims[2], 1 << dims[3], 0.5, true);
        let want = dense_tensor(&a, &b).unwrap();
        prop_assert_eq!(dax_mtp(&dax_encode(&a), &dax_encode(&b)).unwrap(), dax_encode(&want));
        let das = das_mtp(&das_encode(&a).unwrap(), &das_encode(&b).unwrap()).unwrap();
        prop_assert_eq!(das, das_encode(&want).unwrap());
    }

    #[test]
    fn compressed_mvm_matches_reference(seed in any::<u64>(), n in 1u32..8, density in 0.05f64..1.0) {
        let mut rng = seeded(seed);
        let m = random_structural(&mut rng, 1 << n, 1 << n, density, true);
        let s = StateVector::random(n, &mut rng).unwrap();
        let want = matvec(&rows_of(&m), s.amplitudes());
        // non-unitary matrices: compare raw products
        let dax = dax_mvm(&dax_encode(&m), &s);
        let das = das_mvm(&das_encode(&m).unwrap(), &s);
        for got in [dax, das] {
            match got {
                Ok(v) => prop_assert!(max_diff(v.amplitudes(), &want) < 1e-12),
                Err(e) => prop_assert!(false, "mvm failed: {e}"),
            }
        }
    }

    #[test]
    fn rh_is_an_involution_and_preserves_norm(seed in any::<u64>(), n in 1u32..10) {
        let mut rng = seeded(seed);
        let s = StateVector::random(n, &mut rng).unwrap();
        let h = rh_build(n).unwrap();
        let once = rh_mvm(&h, &s, SignMethod::Logarithm).unwrap();
        prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-12);
        let twice = rh_mvm(&h, &once, SignMethod::Quarter).unwrap();
        prop_assert!(twice.max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn signs_follow_popcount(n in 1u32..30, r in any::<u64>(), c in any::<u64>()) {
        let mask = (1u64 << n) - 1;
        let (r, c) = (r & mask, c & mask);
        let mut counter = SignCounter::default();
        prop_assert_eq!(quadrant_sign(r, c, n, &mut counter).unwrap(), popcount_sign(r, c));
        prop_assert_eq!(counter.count, 1);
    }

    #[test]
    fn row_methods_agree(n in 2u32..11, r in any::<u64>()) {
        let r = r & ((1u64 << n) - 1);
        let mut counter = SignCounter::default();
        let log = sign_row_logarithm(r, n, &mut counter).unwrap();
        prop_assert_eq!(counter.count, (n - 1) as u64);
        let b = optimal_block_size(n).unwrap();
        let mut counter = SignCounter::default();
        let block = sign_row_block(r, n, b, &mut counter).unwrap();
        prop_assert_eq!(counter.count, block_cost(n, b));
        prop_assert_eq!(&log, &block);
        for (c, s) in log.iter().enumerate() {
            prop_assert_eq!(*s, popcount_sign(r, c as u64));
        }
    }
}
