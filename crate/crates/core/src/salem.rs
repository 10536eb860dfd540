//! The Salem system `P_q`: a probability vector over the digits, the
//! cumulative thresholds `beta`, exact evaluation of the series
//!
//! ```text
//! S(i_1 i_2 ...) = beta[i_1] + sum_{k >= 2} beta[i_k] * p[i_1] * ... * p[i_{k-1}]
//! ```
//!
//! for finite and eventually periodic digit strings, and the greedy encoder
//! that recovers digits from a rational number.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::digits::{Alphabet, DigitWord, PeriodicDigits};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// `q` probabilities `p_0, ..., p_{q-1}`, each strictly between 0 and 1,
/// summing to exactly 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProbabilityVector {
    alphabet: Alphabet,
    p: Vec<Rational>,
    beta: BetaVector,
    scaled: Scaled,
}

/// Thresholds `beta_0 = 0 < beta_1 < ... < beta_q = 1` with
/// `beta_{i+1} = beta_i + p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaVector(Vec<Rational>);

/// The vector over a common denominator: `p_i = p_num[i] / denom`,
/// `beta_i = beta_num[i] / denom`. Lets long series be evaluated with plain
/// integer arithmetic and a single reduction at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Scaled {
    denom: BigInt,
    p_num: Vec<BigInt>,
    beta_num: Vec<BigInt>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<Rational>) -> Result<Self> {
        let q = u32::try_from(p.len())
            .map_err(|_| Error::InvalidArgument("too many probabilities".into()))?;
        let alphabet = Alphabet::new(q)?;
        for (t, pt) in p.iter().enumerate() {
            if !pt.is_positive() || pt >= &Rational::one() {
                return Err(Error::InvalidArgument(format!(
                    "p_{t} = {pt} must lie strictly between 0 and 1"
                )));
            }
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}, not 1")));
        }

        let mut beta = Vec::with_capacity(p.len() + 1);
        let mut acc = Rational::zero();
        beta.push(acc.clone());
        for pt in &p {
            acc = acc + pt;
            beta.push(acc.clone());
        }

        let denom = p.iter().fold(BigInt::one(), |l, pt| l.lcm(pt.denom()));
        let scale = |r: &Rational| r.numer() * (&denom / r.denom());
        let scaled = Scaled {
            p_num: p.iter().map(scale).collect(),
            beta_num: beta.iter().map(scale).collect(),
            denom: denom.clone(),
        };

        Ok(ProbabilityVector { alphabet, p, beta: BetaVector(beta), scaled })
    }

    /// All `p_t = 1/q`.
    pub fn uniform(q: u32) -> Result<Self> {
        Alphabet::new(q)?;
        let p = (0..q).map(|_| Rational::new(1, q).expect("q >= 2")).collect();
        Self::new(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn base(&self) -> u32 {
        self.alphabet.base()
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.p
    }

    pub fn p(&self, digit: u32) -> &Rational {
        &self.p[digit as usize]
    }

    pub fn beta_vector(&self) -> &BetaVector {
        &self.beta
    }

    pub fn beta(&self, digit: u32) -> &Rational {
        &self.beta.0[digit as usize]
    }

    pub fn is_uniform(&self) -> bool {
        self.p.windows(2).all(|w| w[0] == w[1])
    }

    /// Product of `p` over the letters of `w`; 1 for the empty word.
    pub fn weight(&self, w: &DigitWord) -> Result<Rational> {
        self.alphabet.ensure_same(w.alphabet())?;
        Ok(self.weight_unchecked(w.letters()))
    }

    fn weight_unchecked(&self, letters: &[u32]) -> Rational {
        let s = &self.scaled;
        let num = letters.iter().fold(BigInt::one(), |acc, &d| acc * &s.p_num[d as usize]);
        let den = s.denom.pow(letters.len() as u32);
        Rational::new(num, den).expect("positive denominator")
    }

    /// The value of `w(0)`: the series truncated after the last letter of `w`.
    pub fn eval_finite(&self, w: &DigitWord) -> Result<Rational> {
        self.alphabet.ensure_same(w.alphabet())?;
        Ok(self.eval_finite_unchecked(w.letters()))
    }

    fn eval_finite_unchecked(&self, letters: &[u32]) -> Rational {
        self.eval_with_tail(letters, &Rational::zero())
    }

    /// `eval(w) + weight(w) * tail`, the value of `w` followed by any string
    /// worth `tail`.
    fn eval_with_tail(&self, letters: &[u32], tail: &Rational) -> Rational {
        // Horner from the right: V_k = beta[w_k] + p[w_k] * V_{k+1}, carried as
        // N_k / (den(tail) * D^(m-k+1)) so only the result is reduced.
        let s = &self.scaled;
        let mut num = tail.numer().clone();
        let mut power = tail.denom().clone();
        for &d in letters.iter().rev() {
            num = &s.beta_num[d as usize] * &power + &s.p_num[d as usize] * num;
            power *= &s.denom;
        }
        Rational::new(num, power).expect("positive denominator")
    }

    /// Exact value of an eventually periodic string:
    /// `a + w * c / (1 - rho)` where `a`, `w` are the value and weight of the
    /// preperiod and `c`, `rho` those of the period.
    pub fn eval_periodic(&self, d: &PeriodicDigits) -> Result<Rational> {
        self.alphabet.ensure_same(d.alphabet())?;
        let c = self.eval_finite_unchecked(d.period());
        let rho = self.weight_unchecked(d.period());
        let tail = c.checked_div(&(Rational::one() - rho))?;
        Ok(self.eval_with_tail(d.preperiod(), &tail))
    }

    /// `[eval(w(0)), eval(w(0)) + weight(w)]`; every extension of `w`
    /// evaluates inside this interval.
    pub fn eval_prefix_bounds(&self, w: &DigitWord) -> Result<(Rational, Rational)> {
        let lo = self.eval_finite(w)?;
        let hi = &lo + self.weight(w)?;
        Ok((lo, hi))
    }

    /// Greedy digit extraction for `x` in `[0, 1]`.
    ///
    /// The remainder starts at `x`; each step emits the digit `i` with
    /// `beta_i <= y < beta_{i+1}` and moves to `(y - beta_i) / p_i`. A
    /// repeated remainder closes the cycle. `x = 1` is `(q-1)`. If
    /// `max_digits` digits go by without a repeat the emitted word and the
    /// exact remainder are returned instead.
    pub fn encode(&self, x: &Rational, max_digits: usize) -> Result<EncodeResult> {
        if !x.in_unit_interval() {
            return Err(Error::Domain(format!("{x} is outside [0, 1]")));
        }
        if max_digits == 0 {
            return Err(Error::InvalidArgument("max_digits must be positive".into()));
        }
        if x.is_one() {
            return Ok(EncodeResult::Complete(PeriodicDigits::constant(
                self.alphabet,
                self.alphabet.max_digit(),
            )?));
        }

        let s = &self.scaled;
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        // Remainders can reach thousands of bits, so they are indexed by a
        // short fingerprint and compared exactly only on a fingerprint hit.
        let mut seen: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        let mut states: Vec<(BigInt, BigInt)> = Vec::new();
        let mut digits: Vec<u32> = Vec::new();

        loop {
            let print = Fingerprint::of(&num, &den);
            let earlier = seen.get(&print).and_then(|candidates| {
                candidates.iter().copied().find(|&k| states[k].0 == num && states[k].1 == den)
            });
            if let Some(start) = earlier {
                let period = digits.split_off(start);
                let found = PeriodicDigits::new(self.alphabet, digits, period)?;
                return Ok(EncodeResult::Complete(found.canonicalize()));
            }
            if digits.len() == max_digits {
                let remainder = Rational::new(num, den)?;
                let word = DigitWord::new(self.alphabet, digits)?;
                return Ok(EncodeResult::Truncated { digits: word, remainder });
            }
            seen.entry(print).or_default().push(states.len());
            states.push((num.clone(), den.clone()));

            // y = num/den, beta_i = b_i/D: beta_i <= y  <=>  b_i * den <= num * D.
            let scaled_y = &num * &s.denom;
            let mut digit = 0;
            let mut offset = BigInt::zero();
            for i in 1..self.base() {
                let candidate = &s.beta_num[i as usize] * &den;
                if candidate > scaled_y {
                    break;
                }
                digit = i;
                offset = candidate;
            }
            let i = digit as usize;

            // (y - b_i/D) / (a_i/D) = (num*D - b_i*den) / (den * a_i). Any
            // common factor divides D * a_i because num/den is reduced.
            let mut next_num = scaled_y - offset;
            let mut next_den = den * &s.p_num[i];
            if next_num.is_zero() {
                next_den = BigInt::one();
            } else {
                let bound = &s.denom * &s.p_num[i];
                let g = (&next_num % &bound).gcd(&bound);
                let g = g.gcd(&(&next_den % &g));
                if !g.is_one() {
                    next_num /= &g;
                    next_den /= &g;
                }
            }
            num = next_num;
            den = next_den;
            digits.push(digit);
        }
    }
}

/// Bit lengths and low words of a remainder `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Fingerprint(u64, u64, u64);

impl Fingerprint {
    fn of(num: &BigInt, den: &BigInt) -> Self {
        let low = |v: &BigInt| v.iter_u64_digits().next().unwrap_or(0);
        Fingerprint(den.bits() ^ (num.bits() << 32), low(num), low(den))
    }
}

impl fmt::Debug for ProbabilityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProbabilityVector({self})")
    }
}

impl fmt::Display for ProbabilityVector {
    /// Comma-separated fractions, the same form [`FromStr`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.p.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ProbabilityVector {
    type Err = Error;

    /// `1/2,1/3,1/6`
    fn from_str(s: &str) -> Result<Self> {
        let p = s.split(',').map(str::parse).collect::<Result<Vec<Rational>>>()?;
        Self::new(p)
    }
}

impl BetaVector {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

/// Outcome of [`ProbabilityVector::encode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncodeResult {
    /// A cycle closed: these digits evaluate back to the input exactly.
    Complete(PeriodicDigits),
    /// The digit budget ran out. `input = eval(digits(0)) + weight(digits) * remainder`.
    Truncated { digits: DigitWord, remainder: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeKind {
    Complete,
    Truncated,
}

impl EncodeResult {
    pub fn kind(&self) -> EncodeKind {
        match self {
            EncodeResult::Complete(_) => EncodeKind::Complete,
            EncodeResult::Truncated { .. } => EncodeKind::Truncated,
        }
    }

    pub fn complete(&self) -> Option<&PeriodicDigits> {
        match self {
            EncodeResult::Complete(d) => Some(d),
            EncodeResult::Truncated { .. } => None,
        }
    }

    /// The number these digits (and remainder) stand for.
    pub fn reconstruct(&self, system: &ProbabilityVector) -> Result<Rational> {
        match self {
            EncodeResult::Complete(d) => system.eval_periodic(d),
            EncodeResult::Truncated { digits, remainder } => {
                system.alphabet.ensure_same(digits.alphabet())?;
                Ok(system.eval_with_tail(digits.letters(), remainder))
            }
        }
    }
}

impl fmt::Display for EncodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodeKind::Complete => "complete",
            EncodeKind::Truncated => "truncated",
        })
    }
}
