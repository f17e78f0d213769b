// Negating one stored coefficient of a decomposition is caught, and the
// witness names the decomposition it came from.

use cooperad_lab::cooperad::verify_cooperad_axioms;
use cooperad_lab::instances::{build, builtin, validate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = builtin("sweedler4")?;
    let (v, _) = validate(b.raw.over(b.default_field)?)?;
    let (c, _) = build(&v, 3)?;
    let key = (2, 1, 2);
    let broken = c.perturbed(key, 3, 0).ok_or("no such entry")?;
    let report = verify_cooperad_axioms(&broken);
    let w = report.witnesses().next().ok_or("the fault went unnoticed")?;
    println!("{w}");
    assert!(w.maps.iter().any(|m| m == "Δ(2,1,2)"));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
