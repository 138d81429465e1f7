//! Algebraic normal form over GF(2).

use crate::function::{small_mask, BooleanFunction};

const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place Möbius transform over the subset lattice. It is an involution.
fn moebius(n: u32, words: &mut [u64]) {
    for j in 0..n.min(6) {
        for w in words.iter_mut() {
            *w ^= (*w & LOW_HALVES[j as usize]) << (1u32 << j);
        }
    }
    if n < 6 {
        words[0] &= small_mask(n);
    }
    for j in 6..n {
        let step = 1usize << (j - 6);
        for w in 0..words.len() {
            if w & step != 0 {
                words[w] ^= words[w ^ step];
            }
        }
    }
}

/// Coefficients of the ANF of `f`: bit `s` is set iff the monomial whose
/// variables form the support of index `s` occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    coefficients: BooleanFunction,
}

impl Anf {
    pub fn of(f: &BooleanFunction) -> Self {
        let mut words = f.words().to_vec();
        moebius(f.arity(), &mut words);
        let coefficients = BooleanFunction::from_words(f.arity(), &words)
            .expect("transform preserves the table shape");
        Self { coefficients }
    }

    pub fn arity(&self) -> u32 {
        self.coefficients.arity()
    }

    /// Monomials as sorted lists of 1-based variables, in increasing index order.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let n = self.arity();
        self.coefficients
            .true_indices()
            .map(|s| (1..=n).filter(|i| (s >> (n - i)) & 1 == 1).collect())
            .collect()
    }

    /// Largest monomial size; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coefficients.true_indices().map(u32::count_ones).max().unwrap_or(0)
    }

    /// Whether the empty monomial occurs.
    pub fn constant_term(&self) -> bool {
        self.coefficients.eval_index(0)
    }

    /// Function with this normal form.
    pub fn to_function(&self) -> BooleanFunction {
        let mut words = self.coefficients.words().to_vec();
        moebius(self.arity(), &mut words);
        BooleanFunction::from_words(self.arity(), &words).expect("same shape")
    }

    pub fn coefficients(&self) -> &BooleanFunction {
        &self.coefficients
    }
}

pub fn anf(f: &BooleanFunction) -> Vec<Vec<u32>> {
    Anf::of(f).monomials()
}

pub fn degree(f: &BooleanFunction) -> u32 {
    Anf::of(f).degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::all_functions;

    /// Direct GF(2) sum over subsets, independent of the butterfly.
    fn naive_coefficient(f: &BooleanFunction, s: u32) -> bool {
        let mut acc = false;
        let mut t = s;
        loop {
            acc ^= f.eval_index(t);
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        acc
    }

    #[test]
    fn small_examples() {
        let xor = BooleanFunction::named("xor").unwrap();
        let and = BooleanFunction::named("and").unwrap();
        assert_eq!(anf(&xor), vec![vec![2], vec![1]]);
        assert_eq!(degree(&xor), 1);
        assert_eq!(anf(&and), vec![vec![1, 2]]);
        assert_eq!(degree(&and), 2);
        assert_eq!(anf(&BooleanFunction::constant(2, true).unwrap()), vec![Vec::<u32>::new()]);
        assert!(anf(&BooleanFunction::zero(3).unwrap()).is_empty());
        assert_eq!(degree(&BooleanFunction::zero(3).unwrap()), 0);
    }

    #[test]
    fn round_trip_all_four_ary() {
        for f in all_functions(4).unwrap() {
            assert_eq!(Anf::of(&f).to_function(), f);
        }
    }

    #[test]
    fn butterfly_matches_subset_sums() {
        for f in all_functions(3).unwrap() {
            let a = Anf::of(&f);
            for s in 0..8 {
                assert_eq!(a.coefficients().eval_index(s), naive_coefficient(&f, s));
            }
        }
        for n in [7, 8] {
            let f = BooleanFunction::beta(n).unwrap();
            let a = Anf::of(&f);
            for s in 0..(1u32 << n) {
                assert_eq!(a.coefficients().eval_index(s), naive_coefficient(&f, s));
            }
            assert_eq!(a.to_function(), f);
        }
    }
}
