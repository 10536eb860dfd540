// Tabulating x -> S(x): digits of x in base q, read back under P.

use salem_repr::cli::sample_csv;
use salem_repr::ProbabilityVector;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let csv = sample_csv(&p, 12, 6)?;
    print!("{csv}");

    let values: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|row| row.split_once(',').unwrap().1.parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));

    // Under the uniform vector S is the identity.
    let uniform = ProbabilityVector::uniform(3)?;
    let same = sample_csv(&uniform, 9, 6)?;
    assert!(same.lines().skip(1).all(|row| {
        let (x, s) = row.split_once(',').unwrap();
        x == s
    }));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
