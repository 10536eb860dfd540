// Exact rational arithmetic: parsing, field operations and rounded output.

use salem_repr::Rational;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a: Rational = "11/12".parse()?;
    let b: Rational = "5/6".parse()?;
    let diff = &a - &b;
    println!("{a} - {b} = {diff}");
    assert_eq!(diff, Rational::new(1, 12)?);

    let q = a.checked_div(&b)?;
    println!("{a} / {b} = {q} ~ {}", q.to_decimal(6));

    // Ties round to even.
    let half_up: Rational = "1/8".parse()?;
    println!("1/8 to 2 places: {}", half_up.to_decimal(2));
    assert_eq!(half_up.to_decimal(2), "0.12");

    let total: Rational = ["1/2", "1/3", "1/6"].iter().map(|s| s.parse::<Rational>().unwrap()).sum();
    assert!(total.is_one());
    println!("1/2 + 1/3 + 1/6 = {total}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
