// The built-in presentations, validated, with the Frobenius data derived
// for the Frobenius ones.

use cooperad_lab::exactlinalg::LinearMap;
use cooperad_lab::instances::{builtin, validate, Validated, BUILTIN_NAMES};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in BUILTIN_NAMES {
        let b = builtin(name)?;
        let (v, report) = validate(b.raw.over(b.default_field)?)?;
        let (pass, fail, _) = report.totals();
        println!("{name:<20} over {:<3} {pass} axioms hold, {fail} fail", b.default_field);
        if let Validated::Frobenius(p, data) = &v {
            let labels = &p.algebra.labels;
            let dual: Vec<String> = data
                .dual
                .iter()
                .map(|d| {
                    let terms: Vec<String> = d.entries().iter().map(|(k, c)| format!("{c}·{}", labels[*k])).collect();
                    terms.join(" + ")
                })
                .collect();
            let id = LinearMap::identity(p.algebra.space(), p.algebra.field);
            println!("    dual basis {dual:?}, Nakayama is identity: {}", data.nakayama.matrix_eq(&id));
        }
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
