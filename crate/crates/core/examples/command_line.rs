// Driving the command-line front end in-process and reading its JSON.

use cooperad_lab::cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = ["cooperad-lab", "check", "--builtin", "dual_numbers", "--max-degree", "3", "--suite", "homology", "--json"];
    let code = cli::run(args, &mut out, &mut err);
    let report: serde_json::Value = serde_json::from_slice(&out)?;
    println!("exit {code}; homology dims {}", report["suites"][0]["dims"]);
    assert_eq!(code, 0);
    assert_eq!(report["suites"][0]["dims"], serde_json::json!([2, 1, 1, 1]));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
