// A presentation read from JSON: the group algebra of ℤ/2 written out by
// hand, checked over ℚ and over 𝔽₃, then turned into a cooperad.

use cooperad_lab::cooperad::{verify_comultiplication, verify_cooperad_axioms};
use cooperad_lab::exactlinalg::FieldSpec;
use cooperad_lab::instances::{build, validate, RawPresentation};

const GROUP_ALGEBRA: &str = r#"{
    "kind": "bialgebra",
    "name": "hand_written_Z2",
    "dim": 2,
    "basis": ["1", "g"],
    "mult": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
    "unit": [1, 0],
    "comult": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
    "counit": ["1", "1/1"]
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let raw = RawPresentation::from_json(GROUP_ALGEBRA)?;
    for field in [FieldSpec::Rationals, FieldSpec::prime(3)?] {
        let (v, _) = validate(raw.over(field)?)?;
        let (c, t) = build(&v, 3)?;
        let mut report = verify_cooperad_axioms(&c);
        report.extend(verify_comultiplication(&c, &t));
        let (pass, fail, skip) = report.totals();
        println!("{} over {field}: {pass} pass, {fail} fail, {skip} skip", v.name());
        assert!(report.passed());
    }

    // δ(g) = g ⊗ 1 is not coassociative with this counit.
    let mut broken = raw.clone();
    broken.comult.as_mut().expect("bialgebra")[1] = vec![vec![0.into(), 0.into()], vec![1.into(), 0.into()]];
    match validate(broken.over(FieldSpec::Rationals)?) {
        Err(e) => println!("rejected as expected: {}", e.to_string().lines().next().unwrap_or("")),
        Ok(_) => return Err("a broken comultiplication validated".into()),
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
