// Rank, kernel and image of a small integer matrix over ℚ and over 𝔽₂.

use cooperad_lab::exactlinalg::{rank_decomposition, FieldSpec, LinearMap};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Full rank over ℚ, rank 2 modulo 2.
    let rows = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
    for field in [FieldSpec::Rationals, "F2".parse()?] {
        let m = LinearMap::from_i64_rows(field, &rows);
        let r = rank_decomposition(&m);
        println!("over {field}: rank {}, kernel dimension {}", r.rank, r.kernel_basis.len());
        for v in &r.kernel_basis {
            assert!(m.apply(v).is_zero());
            println!("  kernel vector {:?}", v.to_dense(3, field).iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }
    }
    assert_eq!(rank_decomposition(&LinearMap::from_i64_rows(FieldSpec::PrimeField(2), &rows)).rank, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
