// Counitality, coassociativity and the comultiplication identities for the
// Hochschild cooperad of k[x]/(x²), with a look at one decomposition.

use cooperad_lab::cooperad::{verify_comultiplication, verify_cooperad_axioms};
use cooperad_lab::exactlinalg::{shape, GradedVec};
use cooperad_lab::instances::{build, builtin, validate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = builtin("dual_numbers")?;
    let (v, _) = validate(b.raw.over(b.default_field)?)?;
    let (c, t) = build(&v, 3)?;

    // Δ(1,1,1) on (x, x) inserts Δ(1) = 1⊗x + x⊗1 between the letters.
    let x = c.space(1)?.index_of("x⊗x").ok_or("no basis word x⊗x")?;
    let image = c.decompose(1, 1, 1, &cooperad_lab::exactlinalg::SparseVec::unit(x, c.field()))?;
    let rendered = GradedVec::from_part(c.field(), shape(&[1, 1]), image).render(c.spaces());
    println!("Δ(1,1,1)(x⊗x) = {rendered}");

    let mut report = verify_cooperad_axioms(&c);
    report.extend(verify_comultiplication(&c, &t));
    print!("{report}");
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
