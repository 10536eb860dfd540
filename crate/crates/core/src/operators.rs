//! Digit-level operators: permutations of the digit set (the ternary swap
//! `0 -> 0, 1 -> 2, 2 -> 1` in particular), the induced map `f` on numbers,
//! and the alternating flip `i -> (q-1) - i` at every other position.

use std::fmt;
use std::str::FromStr;

use crate::digits::{Alphabet, DigitWord, Digits, PeriodicDigits};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::salem::ProbabilityVector;

/// A bijection on `{0, ..., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitPermutation {
    alphabet: Alphabet,
    image: Vec<u32>,
}

impl DigitPermutation {
    /// `image[d]` is where digit `d` goes.
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let q = u32::try_from(image.len())
            .map_err(|_| Error::InvalidArgument("permutation too long".into()))?;
        let alphabet = Alphabet::new(q)?;
        let mut hit = vec![false; image.len()];
        for &d in &image {
            alphabet.check(d)?;
            if std::mem::replace(&mut hit[d as usize], true) {
                return Err(Error::InvalidArgument(format!("digit {d} appears twice in permutation")));
            }
        }
        Ok(DigitPermutation { alphabet, image })
    }

    pub fn identity(q: u32) -> Result<Self> {
        Self::new((0..q).collect())
    }

    /// The ternary swap `0 -> 0, 1 -> 2, 2 -> 1`.
    pub fn theta_standard() -> Self {
        Self::new(vec![0, 2, 1]).expect("valid permutation")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, digit: u32) -> u32 {
        self.image[digit as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (d, &img) in self.image.iter().enumerate() {
            inv[img as usize] = d as u32;
        }
        DigitPermutation { alphabet: self.alphabet, image: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &DigitPermutation) -> Result<Self> {
        self.alphabet.ensure_same(other.alphabet)?;
        let image = other.image.iter().map(|&d| self.apply(d)).collect();
        Ok(DigitPermutation { alphabet: self.alphabet, image })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(d, &img)| d as u32 == img)
    }

    pub fn permute_word(&self, w: &DigitWord) -> Result<DigitWord> {
        self.alphabet.ensure_same(w.alphabet())?;
        DigitWord::new(self.alphabet, w.letters().iter().map(|&d| self.apply(d)).collect())
    }

    /// Letterwise image; the result is re-stored in shortest form.
    pub fn permute_periodic(&self, d: &PeriodicDigits) -> Result<PeriodicDigits> {
        self.alphabet.ensure_same(d.alphabet())?;
        Ok(d.map_letters(self.alphabet, |x| self.apply(x)))
    }

    pub fn permute_digits(&self, d: &Digits) -> Result<Digits> {
        Ok(match d {
            Digits::Word(w) => Digits::Word(self.permute_word(w)?),
            Digits::Periodic(p) => Digits::Periodic(self.permute_periodic(p)?),
        })
    }

    /// The map `f`: evaluate the permuted digits of `x` under `system`.
    ///
    /// `f` acts on representations. At numbers with two representations the
    /// twins generally have different images; pass the canonical twin to get
    /// the conventional real-valued `f(x)`.
    pub fn f_map(&self, system: &ProbabilityVector, x: &PeriodicDigits) -> Result<Rational> {
        system.eval_periodic(&self.permute_periodic(x)?)
    }
}

impl fmt::Display for DigitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitPermutation {
    type Err = Error;

    /// Comma-separated images, `0,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Syntax(format!("bad permutation entry {t:?}")));
                }
                t.parse::<u32>().map_err(|_| Error::Syntax(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(image)
    }
}

/// Which 1-indexed positions get the flip `i -> (q-1) - i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlternatingScheme {
    OddPositions,
    EvenPositions,
}

impl AlternatingScheme {
    /// Whether the digit at 1-indexed `position` is flipped.
    pub fn flips(self, position: usize) -> bool {
        match self {
            AlternatingScheme::OddPositions => position % 2 == 1,
            AlternatingScheme::EvenPositions => position % 2 == 0,
        }
    }

    fn flip_letters(self, alphabet: Alphabet, letters: &[u32], first_position: usize) -> Vec<u32> {
        let top = alphabet.max_digit();
        letters
            .iter()
            .enumerate()
            .map(|(k, &d)| if self.flips(first_position + k) { top - d } else { d })
            .collect()
    }

    pub fn flip_word(self, w: &DigitWord) -> DigitWord {
        let letters = self.flip_letters(w.alphabet(), w.letters(), 1);
        DigitWord::new(w.alphabet(), letters).expect("flip stays in the alphabet")
    }

    /// Flips a periodic string. An odd-length period is doubled first so the
    /// flip pattern repeats with it.
    pub fn flip_periodic(self, d: &PeriodicDigits) -> PeriodicDigits {
        let alphabet = d.alphabet();
        let mut period = d.period().to_vec();
        if period.len() % 2 == 1 {
            period.extend_from_within(..);
        }
        let pre_len = d.preperiod().len();
        PeriodicDigits::new(
            alphabet,
            self.flip_letters(alphabet, d.preperiod(), 1),
            self.flip_letters(alphabet, &period, pre_len + 1),
        )
        .expect("flip stays in the alphabet")
    }

    pub fn flip_digits(self, d: &Digits) -> Digits {
        match d {
            Digits::Word(w) => Digits::Word(self.flip_word(w)),
            Digits::Periodic(p) => Digits::Periodic(self.flip_periodic(p)),
        }
    }
}

impl fmt::Display for AlternatingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlternatingScheme::OddPositions => "odd",
            AlternatingScheme::EvenPositions => "even",
        })
    }
}

impl FromStr for AlternatingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(AlternatingScheme::OddPositions),
            "even" => Ok(AlternatingScheme::EvenPositions),
            other => Err(Error::Syntax(format!("expected odd or even, got {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q3() -> Alphabet {
        Alphabet::new(3).unwrap()
    }

    fn pd(s: &str) -> PeriodicDigits {
        PeriodicDigits::parse(s, q3()).unwrap()
    }

    fn word(s: &str) -> DigitWord {
        DigitWord::parse(s, q3()).unwrap()
    }

    fn three_digit_p() -> ProbabilityVector {
        "1/2,1/3,1/6".parse().unwrap()
    }

    #[test]
    fn theta_examples() {
        let theta = DigitPermutation::theta_standard();
        assert_eq!(theta.permute_word(&word("11122")).unwrap(), word("22211"));
        assert_eq!(theta.permute_periodic(&pd("(0)")).unwrap(), pd("(0)"));
        assert_eq!(theta.compose(&theta).unwrap(), DigitPermutation::identity(3).unwrap());
        assert_eq!(theta.inverse(), theta);
    }

    #[test]
    fn permute_examples() {
        let theta = DigitPermutation::theta_standard();
        assert_eq!(theta.permute_periodic(&pd("22(0)")).unwrap(), pd("11(0)"));
        assert_eq!(theta.permute_periodic(&pd("21(0)")).unwrap(), pd("12(0)"));
        let id = DigitPermutation::identity(3).unwrap();
        assert_eq!(id.permute_periodic(&pd("0(012)")).unwrap(), pd("0(012)"));
        // Re-stored in shortest form: 1(21) -> 2(12) = (21).
        assert_eq!(theta.permute_periodic(&pd("2(12)")).unwrap().to_string(), "(12)");
        let q2 = Alphabet::new(2).unwrap();
        assert!(matches!(
            theta.permute_periodic(&PeriodicDigits::parse("1(0)", q2).unwrap()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn permutation_validation() {
        assert!("0,2,1".parse::<DigitPermutation>().is_ok());
        for bad in ["0,0,1", "0,1,3", "0", "", "0,,1", "a,b"] {
            assert!(bad.parse::<DigitPermutation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn f_map_examples() {
        let p = three_digit_p();
        let theta = DigitPermutation::theta_standard();
        let f1 = theta.f_map(&p, &pd("21(0)")).unwrap();
        let f2 = theta.f_map(&p, &pd("22(0)")).unwrap();
        assert_eq!((f1 - &f2).abs(), "1/9".parse().unwrap());
        assert_eq!(f2, "2/3".parse().unwrap());
        // beta_1 + beta_1 p_1 = 1/2 + 1/6
        assert_eq!(f2, p.beta(1) + p.beta(1) * p.p(1));
        let id = DigitPermutation::identity(3).unwrap();
        assert_eq!(id.f_map(&p, &pd("0(012)")).unwrap(), p.eval_periodic(&pd("0(012)")).unwrap());
    }

    #[test]
    fn distance_not_preserved() {
        let p = three_digit_p();
        let theta = DigitPermutation::theta_standard();
        let (x1, x2) = (pd("22(0)"), pd("21(0)"));
        let dx = (p.eval_periodic(&x1).unwrap() - p.eval_periodic(&x2).unwrap()).abs();
        let dy = (theta.f_map(&p, &x1).unwrap() - theta.f_map(&p, &x2).unwrap()).abs();
        assert_eq!(dx, "1/18".parse().unwrap());
        assert_eq!(dy, "1/9".parse().unwrap());
    }

    #[test]
    fn twins_map_apart() {
        // f is discontinuous at numbers with two representations.
        let p = three_digit_p();
        let theta = DigitPermutation::theta_standard();
        let a = pd("22(0)");
        let b = a.twin_of().unwrap();
        assert_eq!(p.eval_periodic(&a).unwrap(), p.eval_periodic(&b).unwrap());
        assert_ne!(theta.f_map(&p, &a).unwrap(), theta.f_map(&p, &b).unwrap());
    }

    #[test]
    fn flip_examples() {
        let w = word("121200");
        assert_eq!(AlternatingScheme::OddPositions.flip_word(&w), word("121220"));
        // positions 2, 4, 6 hold 2, 2, 0
        assert_eq!(AlternatingScheme::EvenPositions.flip_word(&w), word("101002"));
        // The middle digit is fixed by i -> 2 - i.
        assert_eq!(AlternatingScheme::OddPositions.flip_periodic(&pd("(1)")), pd("(1)"));
        assert_eq!(AlternatingScheme::OddPositions.flip_periodic(&pd("(0)")), pd("(20)"));
        assert_eq!(AlternatingScheme::EvenPositions.flip_periodic(&pd("2(0)")), pd("2(20)"));
        assert_eq!("odd".parse::<AlternatingScheme>().unwrap(), AlternatingScheme::OddPositions);
        assert!("both".parse::<AlternatingScheme>().is_err());
    }

    fn perm_strategy() -> impl Strategy<Value = DigitPermutation> {
        (2u32..8)
            .prop_flat_map(|q| Just((0..q).collect::<Vec<u32>>()).prop_shuffle())
            .prop_map(|image| DigitPermutation::new(image).unwrap())
    }

    fn string_for(q: u32) -> impl Strategy<Value = PeriodicDigits> {
        (proptest::collection::vec(0..q, 0..6), proptest::collection::vec(0..q, 1..5))
            .prop_map(move |(pre, per)| PeriodicDigits::new(Alphabet::new(q).unwrap(), pre, per).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_restores(
            (perm, d) in perm_strategy().prop_flat_map(|p| { let q = p.alphabet().base(); (Just(p), string_for(q)) })
        ) {
            let there = perm.permute_periodic(&d).unwrap();
            prop_assert_eq!(perm.inverse().permute_periodic(&there).unwrap(), d);
        }

        #[test]
        fn theta_involution(d in string_for(3)) {
            let theta = DigitPermutation::theta_standard();
            let twice = theta.permute_periodic(&theta.permute_periodic(&d).unwrap()).unwrap();
            prop_assert_eq!(twice, d);
        }

        #[test]
        fn flip_involution(q in 2u32..7, pre in proptest::collection::vec(0u32..7, 0..7), per in proptest::collection::vec(0u32..7, 1..6)) {
            let alphabet = Alphabet::new(q).unwrap();
            let d = PeriodicDigits::new(alphabet, pre.iter().map(|x| x % q).collect(), per.iter().map(|x| x % q).collect()).unwrap();
            let w = DigitWord::new(alphabet, pre.iter().map(|x| x % q).collect()).unwrap();
            for s in [AlternatingScheme::OddPositions, AlternatingScheme::EvenPositions] {
                prop_assert_eq!(s.flip_periodic(&s.flip_periodic(&d)), d.clone());
                prop_assert_eq!(s.flip_word(&s.flip_word(&w)), w.clone());
                // positionwise definition
                let f = s.flip_periodic(&d);
                for k in 0..30 {
                    let expected = if s.flips(k + 1) { q - 1 - d.digit_at(k) } else { d.digit_at(k) };
                    prop_assert_eq!(f.digit_at(k), expected);
                }
            }
        }
    }
}
