// Decompositions of the Frobenius cooperad are dual to the partial
// compositions of Hochschild cochains under the hat map.

use cooperad_lab::instances::{build, builtin, validate, verify_hat_duality, Validated};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["dual_numbers", "mat2"] {
        let b = builtin(name)?;
        let (v, _) = validate(b.raw.over(b.default_field)?)?;
        let Validated::Frobenius(p, _) = &v else { return Err("not Frobenius".into()) };
        let (c, _) = build(&v, 3)?;
        let report = verify_hat_duality(p, &c, 2, 2);
        let (pass, fail, _) = report.totals();
        println!("{name}: {pass} compositions match, {fail} differ");
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
