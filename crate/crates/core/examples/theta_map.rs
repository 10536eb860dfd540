// The digit permutation 0->0, 1->2, 2->1 and the map it induces.

use salem_repr::{Cylinder, DigitPermutation, DigitWord, PeriodicDigits, ProbabilityVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let theta = DigitPermutation::theta_standard();
    println!("theta = {theta}, inverse = {}", theta.inverse());
    assert!(theta.compose(&theta)?.is_identity());

    // Distances are not preserved.
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let x = PeriodicDigits::parse("21(0)", p.alphabet())?;
    let y = PeriodicDigits::parse("22(0)", p.alphabet())?;
    let dx = p.eval_periodic(&y)? - p.eval_periodic(&x)?;
    let df = (theta.f_map(&p, &y)? - theta.f_map(&p, &x)?).abs();
    assert_eq!(df, dx.clone() + dx.clone());
    println!("|x - y| = {dx}, |f(x) - f(y)| = {df}");

    // Neither are measures.
    let a: ProbabilityVector = "1/4,1/2,1/4".parse()?;
    let c = Cylinder::new(&a, DigitWord::parse("11122", a.alphabet())?)?;
    let img = c.f_image(&theta)?;
    println!("|{}| = {}, |{}| = {}", c.base(), c.measure(), img.base(), img.measure());

    // The map acts on digits, so twins of one point go to different points.
    let u = PeriodicDigits::parse("1(0)", p.alphabet())?;
    let v = u.twin_of().expect("twin exists");
    println!("f({u}) = {}, f({v}) = {}", theta.f_map(&p, &u)?, theta.f_map(&p, &v)?);

    let shuffle: DigitPermutation = "3,0,2,1".parse()?;
    let w = DigitWord::parse("0123", shuffle.alphabet())?;
    println!("{shuffle} sends {w} to {}", shuffle.permute_word(&w)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
