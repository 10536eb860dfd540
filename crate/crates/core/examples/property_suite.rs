// Running the seeded property checks, as `salem check` does.

use salem_repr::suite::run_checks;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_checks(7, 25);
    print!("{report}");
    if !report.all_passed() {
        return Err("property checks failed".into());
    }
    // Same seed, same report.
    assert_eq!(run_checks(7, 25).to_string(), report.to_string());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
