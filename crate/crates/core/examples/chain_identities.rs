// The chain-level structure on the Hopf-homology complex of ℚ[ℤ/2]:
// simplicial identities, cup coproduct, cobracket and the coLeibniz
// identities, all checked on every basis element.

use cooperad_lab::derived::{verify_chain_identities, ChainIdentity, ChainOperators};
use cooperad_lab::instances::{build, builtin, validate};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = builtin("Q_Z2")?;
    let (v, _) = validate(b.raw.over(b.default_field)?)?;
    let (c, t) = build(&v, 4)?;
    let ops = ChainOperators::build(&c, &t)?;

    let d2 = ops.d(&c, 2);
    println!("d: C(2) → C(1) has {} nonzero entries", d2.nnz());

    let report = verify_chain_identities(&c, &t, &ops, &ChainIdentity::ALL);
    print!("{report}");
    assert!(report.passed(), "an operative chain identity failed");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
