// Evaluating digit strings under a probability vector.

use salem_repr::{DigitWord, PeriodicDigits, ProbabilityVector, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let betas: Vec<String> = p.beta_vector().values().iter().map(|b| b.to_string()).collect();
    println!("P = {p}, beta = {}", betas.join(","));

    let fifth = PeriodicDigits::parse("0(012)", p.alphabet())?;
    let x = p.eval_periodic(&fifth)?;
    println!("{fifth} -> {x}");
    assert_eq!(x, Rational::new(1, 5)?);

    // Every extension of a prefix lands in [eval(w(0)), eval(w(0)) + weight(w)].
    for n in [1, 4, 7] {
        let (lo, hi) = p.eval_prefix_bounds(&fifth.prefix(n))?;
        println!("  prefix {:<7} [{lo}, {hi}]", fifth.prefix(n).to_string());
        assert!(lo <= x && x <= hi);
    }

    let w = DigitWord::parse("1212", p.alphabet())?;
    println!("weight({w}) = {}", p.weight(&w)?);

    // Twins agree.
    let a = PeriodicDigits::parse("2(0)", p.alphabet())?;
    let b = PeriodicDigits::parse("1(2)", p.alphabet())?;
    assert_eq!(p.eval_periodic(&a)?, p.eval_periodic(&b)?);
    println!("{a} = {b} = {}", p.eval_periodic(&a)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
