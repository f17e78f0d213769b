// The twelve acceptance criteria, each checked exactly and reported on one
// line. Criteria 5 and 7 name identities whose displayed sign conventions
// do not hold over ℚ; they are expected to report FAIL, and the test pins
// that down together with the corrected forms that do hold.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::*;
use cooperad_lab::cooperad::{key_name, verify_comultiplication, verify_cooperad_axioms, Report};
use cooperad_lab::derived::{cup_coproduct, verify_chain_identities, ChainIdentity, ChainOperators};
use cooperad_lab::homology::{analyze, GerstenhaberAxiom};
use cooperad_lab::instances::{build, verify_hat_duality, Validated, BUILTIN_NAMES};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: Vec<String>, ok: impl Into<String>) -> Verdict {
    match failures.first() {
        None => Verdict { pass: true, detail: ok.into() },
        Some(first) => Verdict { pass: false, detail: format!("{} failure(s); first: {first}", failures.len()) },
    }
}

/// Largest truncation used for each builtin in the chain-level criteria.
fn chain_truncation(name: &str) -> u32 {
    match name {
        "mat2" | "sweedler4" => 3,
        _ => 4,
    }
}

fn chain_report(name: &str, ids: &[ChainIdentity]) -> Report {
    let (v, _, _) = instance(name);
    let (c, t) = build(&v, chain_truncation(name)).unwrap();
    let ops = ChainOperators::build(&c, &t).unwrap();
    verify_chain_identities(&c, &t, &ops, ids)
}

/// Failures of `ids` on every builtin, as `name: identity (witness)`.
fn chain_failures(ids: &[ChainIdentity]) -> Vec<String> {
    let mut out = Vec::new();
    for name in BUILTIN_NAMES {
        let report = chain_report(name, ids);
        for id in ids {
            let check = report.check(id.name()).expect("selected identity is reported");
            if check.fail > 0 || check.pass == 0 {
                let w = check.witnesses.first().map(|w| w.to_string()).unwrap_or_else(|| "no instance checked".into());
                out.push(format!("{name}: {} ({w})", id.name()));
            }
        }
    }
    out
}

fn criterion_1() -> Verdict {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let runs = BUILTIN_NAMES.iter().map(|n| (*n, 3)).chain([("Q_Z2", 4), ("F2_Z2", 4), ("dual_numbers", 4)]);
    for (name, n) in runs {
        let start = Instant::now();
        let (v, _, _) = instance(name);
        let (c, t) = build(&v, n).unwrap();
        let mut report = verify_cooperad_axioms(&c);
        report.extend(verify_comultiplication(&c, &t));
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        if !report.passed() {
            failures.push(format!("{name} N={n}: {}", report.witnesses().next().unwrap()));
        }
        if elapsed > Duration::from_secs(300) {
            failures.push(format!("{name} N={n} took {elapsed:?}"));
        }
    }
    verdict(failures, format!("10 runs, zero violations, slowest {slowest:.2?}"))
}

fn criterion_2() -> Verdict {
    let ids = [
        ChainIdentity::FaceFace,
        ChainIdentity::DegeneracyDegeneracy,
        ChainIdentity::FaceDegeneracy,
        ChainIdentity::DifferentialSquare,
    ];
    verdict(chain_failures(&ids), "three simplicial families and d∘d = 0 on all builtins")
}

fn criterion_3() -> Verdict {
    let mut failures = Vec::new();
    for name in BUILTIN_NAMES {
        let (v, k, field) = instance(name);
        let n = chain_truncation(name);
        let (c, t) = build(&v, n).unwrap();
        let ops = ChainOperators::build(&c, &t).unwrap();
        for m in 1..=n {
            if let Err(e) = compare_differential(&k, field, &ops.d(&c, m), m) {
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    let (v, k, field) = twisted_instance();
    let (c, t) = build(&v, 3).unwrap();
    let ops = ChainOperators::build(&c, &t).unwrap();
    for m in 1..=3 {
        if let Err(e) = compare_differential(&k, field, &ops.d(&c, m), m) {
            failures.push(format!("twisted Frobenius: {e}"));
        }
    }
    verdict(failures, "Hopf and σ-twisted Hochschild differentials match the independent formulas")
}

fn criterion_4() -> Verdict {
    let ids = [ChainIdentity::CupCoassociativity, ChainIdentity::CupCounitality, ChainIdentity::CupCoderivation];
    verdict(chain_failures(&ids), "coassociative, counital, d a coderivation")
}

fn criterion_5() -> Verdict {
    let literal = chain_failures(&[ChainIdentity::HomotopyCocommutativityDisplayed]);
    let corrected = chain_failures(&[ChainIdentity::HomotopyCocommutativity]);
    let mut v = verdict(literal, "");
    v.detail = format!(
        "displayed form: {}; twisted-cobrace form holds: {}",
        if v.pass { "holds".into() } else { v.detail },
        corrected.is_empty()
    );
    v
}

fn criterion_6() -> Verdict {
    let ids = [
        ChainIdentity::PreCoJacobi,
        ChainIdentity::Coantisymmetry,
        ChainIdentity::CobracketCoderivation,
        ChainIdentity::CoJacobi,
    ];
    verdict(chain_failures(&ids), "pre-coJacobi (flip in the suspended degree), coantisymmetry, coderivation, coJacobi")
}

fn criterion_7() -> Verdict {
    let literal = chain_failures(&[
        ChainIdentity::CoLeibnizCoopposite,
        ChainIdentity::HomotopyCoLeibnizDisplayed,
        ChainIdentity::HomotopyFormsAgree,
    ]);
    let corrected = chain_failures(&[ChainIdentity::CoLeibnizCoopposite, ChainIdentity::HomotopyCoLeibniz]);
    let mut v = verdict(literal, "");
    v.detail = format!(
        "as displayed: {}; coopposite form and reindexed-F form hold: {}",
        if v.pass { "holds".into() } else { v.detail },
        corrected.is_empty()
    );
    v
}

fn criterion_8() -> Verdict {
    let mut failures = Vec::new();
    for (name, n) in [("Q_Z2", 4), ("F2_Z2", 4), ("sweedler4", 3), ("dual_numbers", 3), ("mat2", 3)] {
        let (v, _, _) = instance(name);
        let (c, t) = build(&v, n + 1).unwrap();
        match analyze(&c, &t) {
            Err(e) => failures.push(format!("{name}: {e}")),
            Ok(a) => {
                if !a.report.passed() {
                    failures.push(format!("{name}: {}", a.report.witnesses().next().unwrap()));
                }
                for axiom in GerstenhaberAxiom::ALL {
                    let check = a.report.check(axiom.name()).expect("axiom reported");
                    if check.pass == 0 || check.fail > 0 {
                        failures.push(format!("{name}: {} ({} pass, {} fail)", axiom.name(), check.pass, check.fail));
                    }
                }
            }
        }
    }
    verdict(failures, "six axioms on five instances")
}

fn criterion_9() -> Verdict {
    let mut failures = Vec::new();
    let cases = [
        ("Q_Z2", 4, vec![1, 0, 0, 0, 0]),
        ("F2_Z2", 4, vec![1, 1, 1, 1, 1]),
        ("dual_numbers", 3, vec![2, 1, 1, 1]),
        ("mat2", 3, vec![1, 0, 0, 0]),
    ];
    for (name, n, expected) in cases {
        let (v, k, field) = instance(name);
        let oracle = oracle_dims(&k, field, n);
        let (c, t) = build(&v, n + 1).unwrap();
        let got = analyze(&c, &t).map(|a| a.dims());
        if oracle != expected || got.as_ref().ok() != Some(&expected) {
            failures.push(format!("{name}: expected {expected:?}, oracle {oracle:?}, computed {got:?}"));
        }
    }
    verdict(failures, "(1,0,0,0,0), (1,1,1,1,1), (2,1,1,1), (1,0,0,0)")
}

fn criterion_10() -> Verdict {
    let mut failures = Vec::new();
    for name in BUILTIN_NAMES {
        let (v, k, field) = instance(name);
        let n = chain_truncation(name);
        let (c, t) = build(&v, n).unwrap();
        for m in 0..n {
            let cup = cup_coproduct(&c, &t, m).unwrap();
            let space = c.space(m).unwrap();
            for col in 0..space.dim() {
                let word = parse_word(&k, &space.label(col), m);
                let expected = if k.is_frobenius() { frobenius_cup(&k, &word) } else { deconcatenation(&word) };
                let expected: TensorCoefficients =
                    expected.into_iter().map(|(w, x)| (w, in_field(&x, field))).filter(|(_, x)| !x.is_zero()).collect();
                if crate_cup(&k, &c, &cup, col) != expected {
                    failures.push(format!("{name}: ∪ on {}", space.label(col)));
                }
            }
        }
    }
    verdict(failures, "deconcatenation on bialgebras, the Frobenius formula on Hochschild words")
}

fn criterion_11() -> Verdict {
    const INJECTIONS: usize = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // Negation is the identity in characteristic 2, so there is no fault to
    // find there.
    let pool: Vec<(Validated, _)> = BUILTIN_NAMES
        .iter()
        .map(|name| instance(name))
        .filter(|(_, _, field)| field.characteristic() != 2)
        .map(|(v, _, _)| {
            let built = build(&v, 3).unwrap();
            (v, built)
        })
        .collect();
    let mut failures = Vec::new();
    for _ in 0..INJECTIONS {
        let (v, (c, t)) = pool.choose(&mut rng).unwrap();
        let entries = c.entries();
        let (key, col, nth) = entries[rng.gen_range(0..entries.len())];
        let broken = c.perturbed(key, col, nth).unwrap();
        let mut report = verify_cooperad_axioms(&broken);
        report.extend(verify_comultiplication(&broken, t));
        let named = report.witnesses().any(|w| w.maps.contains(&key_name(key)));
        if report.passed() || !named {
            failures.push(format!("{}: {} column {col} entry {nth} not caught by name", v.name(), key_name(key)));
        }
    }
    verdict(failures, format!("{INJECTIONS} seeded sign flips outside characteristic 2, each caught with a witness naming the flipped map"))
}

fn criterion_12() -> Verdict {
    let mut failures = Vec::new();
    for name in ["dual_numbers", "mat2"] {
        let (v, _, _) = instance(name);
        let Validated::Frobenius(p, _) = &v else { unreachable!("Frobenius builtin") };
        let (c, _) = build(&v, 3).unwrap();
        let report = verify_hat_duality(p, &c, 2, 2);
        let (pass, _, _) = report.totals();
        if !report.passed() || pass == 0 {
            failures.push(format!("{name}: {:?}", report.witnesses().next()));
        }
    }
    verdict(failures, "dual_numbers and mat2, p, q ≤ 2")
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("cooperad axioms", criterion_1),
        ("simplicial structure", criterion_2),
        ("differential cross-validation", criterion_3),
        ("dg coalgebra", criterion_4),
        ("homotopy cocommutativity", criterion_5),
        ("Lie side", criterion_6),
        ("coLeibniz", criterion_7),
        ("Gerstenhaber coalgebra on homology", criterion_8),
        ("homology dimensions", criterion_9),
        ("deconcatenation", criterion_10),
        ("fault injection", criterion_11),
        ("hat duality", criterion_12),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:>2} {status} {title}: {}", k + 1, v.detail).unwrap();
        if !v.pass {
            failed.push(k + 1);
        }
    }
    // 5 and 7 fail as displayed over ℚ; their corrected forms are asserted
    // separately below.
    assert_eq!(failed, vec![5, 7], "unexpected set of failing criteria");
    assert!(chain_failures(&[ChainIdentity::HomotopyCocommutativity]).is_empty());
    assert!(chain_failures(&[ChainIdentity::CoLeibnizCoopposite, ChainIdentity::HomotopyCoLeibniz]).is_empty());
}

#[test]
fn displayed_forms_hold_in_characteristic_two() {
    let ids = [
        ChainIdentity::HomotopyCocommutativityDisplayed,
        ChainIdentity::HomotopyCoLeibnizDisplayed,
        ChainIdentity::HomotopyFormsAgree,
        ChainIdentity::PreCoJacobiArityGraded,
    ];
    let report = chain_report("F2_Z2", &ids);
    for id in ids {
        let check = report.check(id.name()).unwrap();
        assert!(check.fail == 0 && check.pass > 0, "{}", id.name());
    }
}
