// Cylinders: endpoints, measures, children and rank partitions.

use salem_repr::{Cylinder, DigitWord, ProbabilityVector, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p: ProbabilityVector = "1/2,1/3,1/6".parse()?;
    let c = Cylinder::new(&p, DigitWord::parse("12", p.alphabet())?)?;
    println!("[{}] {c}", c.base());

    for child in c.children() {
        println!("  [{}] {child}", child.base());
        assert!(c.contains(&child));
    }

    // Rank-m cylinders tile [0, 1] left to right.
    for rank in 0..=4 {
        let cells: Vec<Cylinder> = Cylinder::all_of_rank(&p, rank).collect();
        let total: Rational = cells.iter().map(|c| c.measure().clone()).sum();
        let gaps = cells.windows(2).filter(|w| w[0].sup() != w[1].inf()).count();
        println!("rank {rank}: {} cells, total {total}, gaps {gaps}", cells.len());
        assert!(total.is_one() && gaps == 0);
    }

    let b: ProbabilityVector = "1/4,1/2,1/4".parse()?;
    let small = Cylinder::new(&b, DigitWord::parse("11122", b.alphabet())?)?;
    println!("|11122| under {b} = {}", small.measure());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
