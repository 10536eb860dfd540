// Greedy expansion of rationals, with cycle detection and a digit budget.

use salem_repr::{EncodeResult, ProbabilityVector, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    for x in ["11/12", "1/5", "0", "1", "3/7"] {
        let x: Rational = x.parse()?;
        let got = p.encode(&x, 256)?;
        match &got {
            EncodeResult::Complete(d) => println!("{x:>5} -> {d}"),
            EncodeResult::Truncated { digits, remainder } => {
                println!("{x:>5} -> {} digits, remainder {remainder}", digits.len())
            }
        }
        assert_eq!(got.reconstruct(&p)?, x);
    }

    // Some remainders never repeat; the budget bounds the work.
    let q: ProbabilityVector = "2/5,3/5".parse()?;
    let x = Rational::new(1, 7)?;
    let got = q.encode(&x, 16)?;
    if let EncodeResult::Truncated { digits, remainder } = &got {
        println!("under {q}: {x} -> {digits}... remainder {remainder}");
    }
    assert_eq!(got.reconstruct(&q)?, x);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
