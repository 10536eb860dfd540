// The alternating scheme: digits at odd (or even) positions read as q-1-i.

use salem_repr::cylinders::alternating_measure;
use salem_repr::{AlternatingScheme, Cylinder, DigitWord, PeriodicDigits, ProbabilityVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let base = DigitWord::parse("121200", p.alphabet())?;

    for scheme in [AlternatingScheme::OddPositions, AlternatingScheme::EvenPositions] {
        let flipped = scheme.flip_word(&base);
        println!("{scheme}: {base} -> {flipped}");
        assert_eq!(scheme.flip_word(&flipped), base);
    }

    let flipped = AlternatingScheme::OddPositions.flip_word(&base);
    let plain = Cylinder::new(&p, base.clone())?;
    println!("|{base}| = {}", plain.measure());
    println!("alternating |{flipped}| = {}", alternating_measure(&p, &flipped)?);

    // Odd-length periods are doubled so the flip stays periodic.
    let d = PeriodicDigits::parse("2(0)", p.alphabet())?;
    let e = AlternatingScheme::EvenPositions.flip_periodic(&d);
    println!("even flip of {d} = {e}, value {}", p.eval_periodic(&e)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
