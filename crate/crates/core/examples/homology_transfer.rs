// Homology of the 𝔽₂[ℤ/2] complex with the transferred cup coproduct,
// which comes out as deconcatenation on the classes z₀, …, z₄.

use cooperad_lab::homology::analyze;
use cooperad_lab::instances::{build, builtin, validate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = builtin("F2_Z2")?;
    let (v, _) = validate(b.raw.over(b.default_field)?)?;
    // One arity above the degrees we want exact.
    let (c, t) = build(&v, 5)?;
    let a = analyze(&c, &t)?;
    println!("dims {:?}", a.dims());
    assert_eq!(a.dims(), vec![1, 1, 1, 1, 1]);

    let h = &a.structure;
    for n in 0..=a.degree {
        let cup = h.cup.get(n).ok_or("missing cup")?;
        let mut terms = Vec::new();
        for (legs, map) in &cup.components {
            if !map.column(0).is_zero() {
                terms.push(format!("z{}⊗z{}", legs[0], legs[1]));
            }
        }
        println!("∪(z{n}) = {}", terms.join(" + "));
        assert_eq!(terms.len(), n as usize + 1);
    }
    assert!(a.report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
