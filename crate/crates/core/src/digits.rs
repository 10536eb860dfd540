//! Digit alphabets, finite words and eventually periodic digit strings.
//!
//! Nothing here depends on a probability vector. A finite [`DigitWord`] is a
//! cylinder base; when a word is used as a number it means `w(0)`, see
//! [`DigitWord::to_periodic`].
//!
//! Text form: `prefix` or `prefix(period)`. For bases up to 10 each letter is
//! one character (`21(0)`); for larger bases letters are comma separated
//! decimal numbers (`1,10(3,11)`).

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The digit set `{0, 1, ..., q-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("base must be at least 2, got {q}")));
        }
        Ok(Alphabet(q))
    }

    pub fn base(self) -> u32 {
        self.0
    }

    pub fn max_digit(self) -> u32 {
        self.0 - 1
    }

    pub fn check(self, digit: u32) -> Result<u32> {
        if digit < self.0 {
            Ok(digit)
        } else {
            Err(Error::DigitOutOfRange { digit: digit.into(), base: self.0 })
        }
    }

    pub fn ensure_same(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.0, right: other.0 })
        }
    }

    fn comma_separated(self) -> bool {
        self.0 > 10
    }
}

/// A finite sequence of digits, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl DigitWord {
    pub fn new(alphabet: Alphabet, letters: Vec<u32>) -> Result<Self> {
        for &d in &letters {
            alphabet.check(d)?;
        }
        Ok(DigitWord { alphabet, letters })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        DigitWord { alphabet, letters: Vec::new() }
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        match parse_digits(text, alphabet)? {
            Digits::Word(w) => Ok(w),
            Digits::Periodic(_) => {
                Err(Error::Syntax(format!("expected a finite word, got periodic {text:?}")))
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word extended by one letter.
    pub fn child(&self, digit: u32) -> Result<Self> {
        let digit = self.alphabet.check(digit)?;
        let mut letters = self.letters.clone();
        letters.push(digit);
        Ok(DigitWord { alphabet: self.alphabet, letters })
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &DigitWord) -> Result<Self> {
        self.alphabet.ensure_same(tail.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&tail.letters);
        Ok(DigitWord { alphabet: self.alphabet, letters })
    }

    /// The number `w(0)`.
    pub fn to_periodic(&self) -> PeriodicDigits {
        self.with_tail(0)
    }

    /// The string `w(d)`, `d` repeated forever.
    pub fn with_tail(&self, digit: u32) -> PeriodicDigits {
        PeriodicDigits::from_parts_unchecked(self.alphabet, self.letters.clone(), vec![digit])
    }

    /// All `q^len` words of the given length in lexicographic order.
    pub fn all_of_length(alphabet: Alphabet, len: usize) -> impl Iterator<Item = DigitWord> {
        let q = u64::from(alphabet.base());
        let count = q.checked_pow(len as u32).expect("word enumeration overflow");
        (0..count).map(move |mut index| {
            let mut letters = vec![0u32; len];
            for slot in letters.iter_mut().rev() {
                *slot = (index % q) as u32;
                index /= q;
            }
            DigitWord { alphabet, letters }
        })
    }
}

/// An eventually periodic digit string `preperiod (period)` with a nonempty
/// period.
///
/// Storage is always the shortest form: the period is primitive (`(22)` is
/// stored as `(2)`) and the preperiod cannot be shortened by rotating the
/// period (`1(21)` is stored as `(12)`). Structural equality is therefore
/// equality of digit streams. Twin representations such as `2(0)` and `1(2)`
/// are different streams; see [`PeriodicDigits::canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicDigits {
    alphabet: Alphabet,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl PeriodicDigits {
    pub fn new(alphabet: Alphabet, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Syntax("period must be nonempty".into()));
        }
        for &d in preperiod.iter().chain(&period) {
            alphabet.check(d)?;
        }
        Ok(Self::from_parts_unchecked(alphabet, preperiod, period))
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        match parse_digits(text, alphabet)? {
            Digits::Periodic(p) => Ok(p),
            Digits::Word(w) => {
                Err(Error::Syntax(format!("expected a periodic string, got finite word {:?}", w.to_string())))
            }
        }
    }

    /// Digits must already be range checked and the period nonempty.
    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        mut preperiod: Vec<u32>,
        mut period: Vec<u32>,
    ) -> Self {
        debug_assert!(!period.is_empty());
        let root = primitive_root_len(&period);
        period.truncate(root);
        while let (Some(a), Some(b)) = (preperiod.last(), period.last()) {
            if a != b {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        PeriodicDigits { alphabet, preperiod, period }
    }

    /// The constant string `(d)`.
    pub fn constant(alphabet: Alphabet, digit: u32) -> Result<Self> {
        Self::new(alphabet, Vec::new(), vec![digit])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn preperiod_word(&self) -> DigitWord {
        DigitWord { alphabet: self.alphabet, letters: self.preperiod.clone() }
    }

    pub fn period_word(&self) -> DigitWord {
        DigitWord { alphabet: self.alphabet, letters: self.period.clone() }
    }

    /// Digit at 0-indexed position `k` of the infinite stream.
    pub fn digit_at(&self, k: usize) -> u32 {
        match self.preperiod.get(k) {
            Some(&d) => d,
            None => self.period[(k - self.preperiod.len()) % self.period.len()],
        }
    }

    /// The first `n` digits of the stream.
    pub fn prefix(&self, n: usize) -> DigitWord {
        DigitWord { alphabet: self.alphabet, letters: (0..n).map(|k| self.digit_at(k)).collect() }
    }

    /// Tail is the constant `d`.
    pub fn has_constant_tail(&self, digit: u32) -> bool {
        self.period == [digit]
    }

    /// The other representation of the same number, if there is one.
    ///
    /// `u a (0)` with `a >= 1` pairs with `u [a-1] (q-1)` and vice versa. The
    /// strings `(0)` and `(q-1)` have no twin.
    pub fn twin_of(&self) -> Option<PeriodicDigits> {
        let top = self.alphabet.max_digit();
        let (&last, head) = self.preperiod.split_last()?;
        // Shortest-form storage guarantees `last != tail digit`.
        let (replacement, tail) = if self.has_constant_tail(0) {
            (last - 1, top)
        } else if self.has_constant_tail(top) {
            (last + 1, 0)
        } else {
            return None;
        };
        let mut preperiod = head.to_vec();
        preperiod.push(replacement);
        Some(Self::from_parts_unchecked(self.alphabet, preperiod, vec![tail]))
    }

    /// The representative that does not end in `(q-1)`, except for the
    /// number 1, whose only representation is `(q-1)`.
    pub fn canonicalize(&self) -> PeriodicDigits {
        if self.has_constant_tail(self.alphabet.max_digit()) {
            if let Some(twin) = self.twin_of() {
                return twin;
            }
        }
        self.clone()
    }

    pub fn is_canonical(&self) -> bool {
        self.preperiod.is_empty() || !self.has_constant_tail(self.alphabet.max_digit())
    }

    /// Lexicographic comparison of the canonical forms; `Equal` exactly when
    /// both strings denote the same number.
    pub fn compare_lex(&self, other: &PeriodicDigits) -> Result<Ordering> {
        self.alphabet.ensure_same(other.alphabet)?;
        Ok(self.canonicalize().cmp_stream(&other.canonicalize()))
    }

    /// Raw lexicographic comparison of the two infinite streams.
    pub fn cmp_stream(&self, other: &PeriodicDigits) -> Ordering {
        // Past both preperiods, both streams repeat with period lcm(|a|, |b|).
        let horizon = self.preperiod.len().max(other.preperiod.len())
            + self.period.len().lcm(&other.period.len());
        (0..horizon)
            .map(|k| self.digit_at(k).cmp(&other.digit_at(k)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Rebuild with a letterwise map applied to preperiod and period.
    pub(crate) fn map_letters(&self, alphabet: Alphabet, f: impl Fn(u32) -> u32) -> Self {
        Self::from_parts_unchecked(
            alphabet,
            self.preperiod.iter().map(|&d| f(d)).collect(),
            self.period.iter().map(|&d| f(d)).collect(),
        )
    }
}

fn primitive_root_len(period: &[u32]) -> usize {
    let n = period.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| period.chunks(d).all(|c| c == &period[..d]))
        .unwrap_or(n)
}

/// A parsed digit object: a finite word or an eventually periodic string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Digits {
    Word(DigitWord),
    Periodic(PeriodicDigits),
}

impl Digits {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Digits::Word(w) => w.alphabet(),
            Digits::Periodic(p) => p.alphabet(),
        }
    }

    /// Reads the object as a number; a finite word `w` means `w(0)`.
    pub fn to_periodic(&self) -> PeriodicDigits {
        match self {
            Digits::Word(w) => w.to_periodic(),
            Digits::Periodic(p) => p.clone(),
        }
    }
}

fn parse_letters(text: &str, alphabet: Alphabet) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parse_one = |token: &str| -> Result<u32> {
        if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax(format!("bad digit {token:?}")));
        }
        match token.parse::<u64>() {
            Ok(v) if v < u64::from(alphabet.base()) => Ok(v as u32),
            Ok(v) => Err(Error::DigitOutOfRange { digit: v, base: alphabet.base() }),
            Err(_) => Err(Error::DigitOutOfRange { digit: u64::MAX, base: alphabet.base() }),
        }
    };
    if alphabet.comma_separated() {
        text.split(',').map(parse_one).collect()
    } else {
        let mut buf = [0u8; 4];
        text.chars().map(|c| parse_one(c.encode_utf8(&mut buf))).collect()
    }
}

/// Parses `prefix` (a finite word) or `prefix(period)` (a periodic string).
pub fn parse_digits(text: &str, alphabet: Alphabet) -> Result<Digits> {
    let text = text.trim();
    match text.find('(') {
        None => {
            if text.contains(')') {
                return Err(Error::Syntax(format!("unbalanced ')' in {text:?}")));
            }
            Ok(Digits::Word(DigitWord { alphabet, letters: parse_letters(text, alphabet)? }))
        }
        Some(open) => {
            let body = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Syntax(format!("period must close with ')' in {text:?}")))?;
            if body.contains(['(', ')']) {
                return Err(Error::Syntax(format!("nested parentheses in {text:?}")));
            }
            if body.is_empty() {
                return Err(Error::Syntax(format!("empty period in {text:?}")));
            }
            let preperiod = parse_letters(&text[..open], alphabet)?;
            let period = parse_letters(body, alphabet)?;
            Ok(Digits::Periodic(PeriodicDigits::from_parts_unchecked(alphabet, preperiod, period)))
        }
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, alphabet: Alphabet, letters: &[u32]) -> fmt::Result {
    for (i, d) in letters.iter().enumerate() {
        if alphabet.comma_separated() && i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.alphabet, &self.letters)
    }
}

impl fmt::Display for PeriodicDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.alphabet, &self.preperiod)?;
        f.write_str("(")?;
        write_letters(f, self.alphabet, &self.period)?;
        f.write_str(")")
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Digits::Word(w) => w.fmt(f),
            Digits::Periodic(p) => p.fmt(f),
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

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_digits("121200", q3()).unwrap(),
            Digits::Word(DigitWord::new(q3(), vec![1, 2, 1, 2, 0, 0]).unwrap())
        );
        let p = pd("2(0)");
        assert_eq!((p.preperiod(), p.period()), (&[2][..], &[0][..]));
        assert_eq!(
            parse_digits("3", q3()),
            Err(Error::DigitOutOfRange { digit: 3, base: 3 })
        );
        assert!(matches!(parse_digits("1()", q3()), Err(Error::Syntax(_))));
        assert!(matches!(parse_digits("1(2", q3()), Err(Error::Syntax(_))));
        assert!(matches!(parse_digits("1(2)0", q3()), Err(Error::Syntax(_))));
        assert!(matches!(parse_digits("1)", q3()), Err(Error::Syntax(_))));
        assert!(matches!(parse_digits("1a", q3()), Err(Error::Syntax(_))));
        assert_eq!(parse_digits("", q3()).unwrap(), Digits::Word(DigitWord::empty(q3())));
    }

    #[test]
    fn parse_wide_alphabet() {
        let q12 = Alphabet::new(12).unwrap();
        let p = PeriodicDigits::parse("1,10(3,11)", q12).unwrap();
        assert_eq!((p.preperiod(), p.period()), (&[1, 10][..], &[3, 11][..]));
        assert_eq!(p.to_string(), "1,10(3,11)");
        assert!(PeriodicDigits::parse("12(0)", q12).is_err());
        assert!(parse_digits("1,,2", q12).is_err());
    }

    #[test]
    fn shortest_form_storage() {
        assert_eq!(pd("(22)").period(), &[2]);
        assert_eq!(pd("1(21)"), pd("(12)"));
        assert_eq!(pd("00(0)"), pd("(0)"));
        assert_eq!(pd("0(012012)").to_string(), "0(012)");
        assert_eq!(pd("12(0120)").to_string(), "12(0120)");
        assert_eq!(pd("2(12)").to_string(), "(21)");
    }

    #[test]
    fn format_examples() {
        let w = DigitWord::new(q3(), vec![1, 2, 1, 2, 0, 0]).unwrap();
        assert_eq!(w.to_string(), "121200");
        assert_eq!(PeriodicDigits::new(q3(), vec![2], vec![0]).unwrap().to_string(), "2(0)");
        assert_eq!(PeriodicDigits::new(q3(), vec![], vec![0, 1, 2]).unwrap().to_string(), "(012)");
    }

    #[test]
    fn twin_examples() {
        assert_eq!(pd("22(0)").twin_of(), Some(pd("21(2)")));
        assert_eq!(pd("21(2)").twin_of(), Some(pd("22(0)")));
        assert_eq!(pd("(0)").twin_of(), None);
        assert_eq!(pd("(2)").twin_of(), None);
        assert_eq!(pd("(01)").twin_of(), None);
        assert_eq!(pd("1(0)").twin_of(), Some(pd("0(2)")));
        assert_eq!(pd("0(2)").twin_of(), Some(pd("1(0)")));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(pd("21(2)").canonicalize(), pd("22(0)"));
        assert_eq!(pd("22(0)").canonicalize(), pd("22(0)"));
        assert_eq!(pd("(2)").canonicalize(), pd("(2)"));
        assert!(pd("(2)").is_canonical());
        assert!(!pd("0(2)").is_canonical());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(pd("21(0)").compare_lex(&pd("22(0)")).unwrap(), Ordering::Less);
        assert_eq!(pd("1(2)").compare_lex(&pd("2(0)")).unwrap(), Ordering::Equal);
        for other in ["(0)", "21(0)", "2(1)", "1(2)", "(21)", "22222221(0)"] {
            assert_eq!(pd("(2)").compare_lex(&pd(other)).unwrap(), Ordering::Greater);
        }
        let q2 = Alphabet::new(2).unwrap();
        assert!(matches!(
            pd("1(0)").compare_lex(&PeriodicDigits::parse("1(0)", q2).unwrap()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_words() {
        let words: Vec<String> = DigitWord::all_of_length(q3(), 2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["00", "01", "02", "10", "11", "12", "20", "21", "22"]);
        assert_eq!(DigitWord::all_of_length(q3(), 0).count(), 1);
    }

    fn periodic_strategy() -> impl Strategy<Value = PeriodicDigits> {
        (2u32..14).prop_flat_map(|q| {
            (
                Just(q),
                proptest::collection::vec(0..q, 0..6),
                proptest::collection::vec(0..q, 1..5),
            )
                .prop_map(|(q, pre, per)| {
                    PeriodicDigits::new(Alphabet::new(q).unwrap(), pre, per).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(d in periodic_strategy()) {
            let text = d.to_string();
            prop_assert_eq!(PeriodicDigits::parse(&text, d.alphabet()).unwrap(), d.clone());
            prop_assert_eq!(PeriodicDigits::parse(&text, d.alphabet()).unwrap().to_string(), text);
        }

        #[test]
        fn storage_preserves_stream(q in 2u32..5, pre in proptest::collection::vec(0u32..2, 0..6), per in proptest::collection::vec(0u32..2, 1..6)) {
            let alphabet = Alphabet::new(q).unwrap();
            let d = PeriodicDigits::new(alphabet, pre.clone(), per.clone()).unwrap();
            for k in 0..40 {
                let expected = if k < pre.len() { pre[k] } else { per[(k - pre.len()) % per.len()] };
                prop_assert_eq!(d.digit_at(k), expected);
            }
        }

        #[test]
        fn twin_is_involution(d in periodic_strategy()) {
            if let Some(t) = d.twin_of() {
                prop_assert_eq!(t.twin_of(), Some(d.clone()));
                prop_assert_eq!(t.canonicalize(), d.canonicalize());
                prop_assert_eq!(d.compare_lex(&t).unwrap(), Ordering::Equal);
                prop_assert_ne!(d.cmp_stream(&t), Ordering::Equal);
            }
        }

        #[test]
        fn canonicalize_idempotent(d in periodic_strategy()) {
            let c = d.canonicalize();
            prop_assert_eq!(c.canonicalize(), c.clone());
            prop_assert!(c.is_canonical());
        }

        #[test]
        fn compare_is_antisymmetric_and_transitive(a in periodic_strategy(), b in periodic_strategy(), c in periodic_strategy()) {
            let b = PeriodicDigits::from_parts_unchecked(a.alphabet(), b.preperiod().iter().map(|d| d % a.alphabet().base()).collect(), b.period().iter().map(|d| d % a.alphabet().base()).collect());
            let c = PeriodicDigits::from_parts_unchecked(a.alphabet(), c.preperiod().iter().map(|d| d % a.alphabet().base()).collect(), c.period().iter().map(|d| d % a.alphabet().base()).collect());
            let ab = a.compare_lex(&b).unwrap();
            prop_assert_eq!(b.compare_lex(&a).unwrap(), ab.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a.canonicalize() == b.canonicalize());
            let bc = b.compare_lex(&c).unwrap();
            if ab == bc {
                prop_assert_eq!(a.compare_lex(&c).unwrap(), ab);
            }
        }
    }
}
