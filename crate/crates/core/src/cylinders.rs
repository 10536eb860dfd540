//! Cylinders: the set of numbers whose digits start with a fixed base word.
//!
//! A rank-`m` cylinder with base `c_1 ... c_m` is the closed interval
//! `[c_1..c_m(0), c_1..c_m(q-1)]` of length `p[c_1] * ... * p[c_m]`. Its `q`
//! children tile it left to right with no gaps.
//!
//! The alternating (sign-variable) system is handled at the digit level:
//! [`AlternatingScheme`](crate::AlternatingScheme) maps bases between the two
//! systems, and [`alternating_measure`] applies the product formula directly
//! to a base written in alternating digits.

use std::fmt;

use crate::digits::DigitWord;
use crate::error::Result;
use crate::exactnum::Rational;
use crate::operators::DigitPermutation;
use crate::salem::ProbabilityVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    system: ProbabilityVector,
    base: DigitWord,
    inf: Rational,
    sup: Rational,
    measure: Rational,
}

impl Cylinder {
    pub fn new(system: &ProbabilityVector, base: DigitWord) -> Result<Self> {
        let inf = system.eval_finite(&base)?;
        let measure = system.weight(&base)?;
        let sup = &inf + &measure;
        Ok(Cylinder { system: system.clone(), base, inf, sup, measure })
    }

    pub fn system(&self) -> &ProbabilityVector {
        &self.system
    }

    pub fn base(&self) -> &DigitWord {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn inf(&self) -> &Rational {
        &self.inf
    }

    pub fn sup(&self) -> &Rational {
        &self.sup
    }

    /// Lebesgue measure, `sup - inf`.
    pub fn measure(&self) -> &Rational {
        &self.measure
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.inf <= x && x <= &self.sup
    }

    /// Interval containment.
    pub fn contains(&self, other: &Cylinder) -> bool {
        self.inf <= other.inf && other.sup <= self.sup
    }

    /// Bases `base·0, ..., base·(q-1)` in digit order.
    pub fn children(&self) -> Vec<Cylinder> {
        (0..self.system.base())
            .map(|d| {
                let base = self.base.child(d).expect("digit in range");
                Cylinder::new(&self.system, base).expect("same alphabet")
            })
            .collect()
    }

    /// The cylinder whose base is the letterwise image of this one.
    pub fn f_image(&self, perm: &DigitPermutation) -> Result<Cylinder> {
        Cylinder::new(&self.system, perm.permute_word(&self.base)?)
    }

    /// All `q^rank` cylinders of the given rank, in lexicographic (and
    /// therefore left-to-right) order.
    pub fn all_of_rank(system: &ProbabilityVector, rank: usize) -> impl Iterator<Item = Cylinder> + '_ {
        DigitWord::all_of_length(system.alphabet(), rank)
            .map(move |w| Cylinder::new(system, w).expect("same alphabet"))
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inf={}, sup={}, measure={}", self.inf, self.sup, self.measure)
    }
}

/// Measure of a cylinder of the alternating system given by its base digits:
/// the product of `p` over those digits.
pub fn alternating_measure(system: &ProbabilityVector, base: &DigitWord) -> Result<Rational> {
    system.weight(base)
}
