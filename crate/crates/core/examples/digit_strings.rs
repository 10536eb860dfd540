// Finite and eventually periodic digit strings, twins and lexicographic order.

use std::cmp::Ordering;

use salem_repr::{parse_digits, Alphabet, DigitWord, Digits, PeriodicDigits};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ternary = Alphabet::new(3)?;

    let d = PeriodicDigits::parse("0(012)", ternary)?;
    println!("{d}: first 10 digits {}", d.prefix(10));

    // Redundant forms are normalized on construction.
    let long = PeriodicDigits::parse("00120(120)", ternary)?;
    println!("00120(120) is stored as {long}");
    assert_eq!(long, d);

    // u a (0) and u [a-1] (q-1) name the same point; (0) is preferred.
    let zero_tail = PeriodicDigits::parse("21(0)", ternary)?;
    let twin = zero_tail.twin_of().expect("ends in a nonzero digit then (0)");
    println!("twins: {zero_tail} ~ {twin}, canonical {}", twin.canonicalize());
    assert_eq!(twin.canonicalize(), zero_tail);

    let lo = PeriodicDigits::parse("(01)", ternary)?;
    let hi = PeriodicDigits::parse("0(1)", ternary)?;
    assert_eq!(lo.compare_lex(&hi)?, Ordering::Less);
    println!("{lo} < {hi}");

    // Plain text without parentheses is a finite word.
    match parse_digits("1220", ternary)? {
        Digits::Word(w) => println!("finite word {w} of length {}", w.len()),
        Digits::Periodic(p) => println!("periodic {p}"),
    }

    // Past base ten the letters are comma-separated.
    let base12 = Alphabet::new(12)?;
    let w = DigitWord::new(base12, vec![11, 0, 10])?;
    println!("base 12 word: {w}");
    assert_eq!(DigitWord::parse(&w.to_string(), base12)?, w);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
