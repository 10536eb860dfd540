//! Random systems, digit strings and rationals for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digits::{Alphabet, DigitWord, PeriodicDigits};
use crate::exactnum::Rational;
use crate::operators::DigitPermutation;
use crate::salem::ProbabilityVector;

/// `p_t = w_t / sum(w)` with integer weights `w_t` in `1..=max_weight`.
pub fn probability_vector<R: Rng + ?Sized>(rng: &mut R, q: u32, max_weight: u32) -> ProbabilityVector {
    let weights: Vec<u32> = (0..q).map(|_| rng.gen_range(1..=max_weight.max(1))).collect();
    let total: u32 = weights.iter().sum();
    let p = weights.iter().map(|&w| Rational::new(w, total).expect("nonzero total")).collect();
    ProbabilityVector::new(p).expect("weights give a valid vector")
}

/// A system with `q` drawn from `qs`.
pub fn system<R: Rng + ?Sized>(rng: &mut R, qs: &[u32]) -> ProbabilityVector {
    let q = *qs.choose(rng).expect("nonempty base list");
    probability_vector(rng, q, 12)
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, alphabet: Alphabet, len: usize) -> DigitWord {
    let letters = (0..len).map(|_| rng.gen_range(0..alphabet.base())).collect();
    DigitWord::new(alphabet, letters).expect("digits in range")
}

/// Preperiod length in `0..=max_pre`, period length in `1..=max_period`.
pub fn periodic<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_pre: usize,
    max_period: usize,
) -> PeriodicDigits {
    let pre_len = rng.gen_range(0..=max_pre);
    let per_len = rng.gen_range(1..=max_period.max(1));
    let pre = word(rng, alphabet, pre_len);
    let per = word(rng, alphabet, per_len);
    PeriodicDigits::new(alphabet, pre.letters().to_vec(), per.letters().to_vec())
        .expect("digits in range")
}

pub fn canonical_periodic<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_pre: usize,
    max_period: usize,
) -> PeriodicDigits {
    periodic(rng, alphabet, max_pre, max_period).canonicalize()
}

/// `u a (0)` and `u [a-1] (q-1)` for random `u` and `a >= 1`.
pub fn twin_pair<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    max_pre: usize,
) -> (PeriodicDigits, PeriodicDigits) {
    let head_len = rng.gen_range(0..max_pre.max(1));
    let head = word(rng, alphabet, head_len);
    let mut pre = head.letters().to_vec();
    pre.push(rng.gen_range(1..alphabet.base()));
    let zero_tail = PeriodicDigits::new(alphabet, pre, vec![0]).expect("digits in range");
    let twin = zero_tail.twin_of().expect("last preperiod digit is nonzero");
    (zero_tail, twin)
}

/// `k / n` with `n` in `1..=max_den` and `0 <= k <= n`.
pub fn unit_rational<R: Rng + ?Sized>(rng: &mut R, max_den: u64) -> Rational {
    let n = rng.gen_range(1..=max_den.max(1));
    let k = rng.gen_range(0..=n);
    Rational::new(k, n).expect("nonzero denominator")
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, q: u32) -> DigitPermutation {
    let mut image: Vec<u32> = (0..q).collect();
    image.shuffle(rng);
    DigitPermutation::new(image).expect("shuffle is a bijection")
}
