//! Fixed inputs shared by the benchmarks.

use clonoid_core::function::small_mask;
use clonoid_core::{BooleanFunction, FunctionClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` random functions of arity `n <= 6`, the same on every run.
pub fn random_functions(n: u32, count: usize, seed: u64) -> Vec<BooleanFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BooleanFunction::from_small(n, rng.random::<u64>() & small_mask(n)).expect("n <= 6"))
        .collect()
}

/// The class holding only `vee_3`, at cap 3.
pub fn vee3_class() -> FunctionClass {
    FunctionClass::from_functions(3, [BooleanFunction::vee_n(3).expect("arity 3")]).expect("cap 3")
}
