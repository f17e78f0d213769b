use rayon::prelude::*;

use super::algebra::{evaluate, word_space, Algebra, Words};
use super::presentation::FrobeniusPresentation;
use super::{associativity_checks, InstanceError};
use crate::cooperad::{
    key_name, CheckResult, ComultiplicationTriple, Indices, Outcome, Report, TruncatedCooperad, Witness,
};
use crate::exactlinalg::{inverse, BasedSpace, FieldElement, LinearMap, SparseVec};

/// Data derived from a Frobenius functional.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    /// `gram[(i, j)] = ε(e_i e_j)`.
    pub gram: LinearMap,
    /// `dual[j]` is `e^j` in the basis `e_k`, so that `ε(e^j e_i) = δ_ij`.
    pub dual: Vec<SparseVec>,
    /// The Nakayama automorphism, with `ε(ab) = ε(σ(b)a)`.
    pub nakayama: LinearMap,
}

impl FrobeniusData {
    /// `Δ(1) = Σ e_k ⊗ e^k` as `(k, l, coefficient of e_k ⊗ e_l)`.
    pub fn coproduct_of_one(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (k, ek) in self.dual.iter().enumerate() {
            for (l, c) in ek.entries() {
                out.push((k, *l, c.clone()));
            }
        }
        out
    }
}

fn vector_check(
    check: &mut CheckResult,
    indices: Indices,
    basis: String,
    lhs: &SparseVec,
    rhs: &SparseVec,
    term_label: impl Fn(usize) -> String,
) {
    if lhs == rhs {
        check.record(Outcome::Pass);
        return;
    }
    let field_neg = lhs
        .entries()
        .first()
        .or(rhs.entries().first())
        .map(|(_, c)| c.field().from_i64(-1))
        .expect("one side nonzero");
    let row = lhs.add_scaled(rhs, &field_neg).leading().expect("differs").0;
    let zero = field_neg.field().zero();
    check.record(Outcome::Fail(Box::new(Witness {
        identity: check.identity.clone(),
        indices,
        maps: vec![],
        basis,
        term: term_label(row),
        left: lhs.get(row).unwrap_or(&zero).to_string(),
        right: rhs.get(row).unwrap_or(&zero).to_string(),
    })));
}

/// Validates the algebra and solves for the dual basis and the Nakayama
/// automorphism. A singular Gram matrix is an error.
pub fn validate_frobenius(p: &FrobeniusPresentation) -> Result<(Report, FrobeniusData), InstanceError> {
    let alg = &p.algebra;
    let field = alg.field;
    let d = alg.dim();
    if p.functional.len() != d {
        return Err(InstanceError::Shape("Frobenius functional does not match the dimension".into()));
    }
    let mut report = associativity_checks(alg, "frobenius");
    let eps = |v: &SparseVec| evaluate(&p.functional, v, field);
    let gram_rows: Vec<Vec<FieldElement>> =
        (0..d).map(|i| (0..d).map(|j| eps(alg.basis_product(i, j))).collect()).collect();
    let gram = LinearMap::from_rows(field, &gram_rows, d)?;
    let dual_matrix = inverse(&gram).ok_or(InstanceError::NotFrobenius)?;
    // e^j = Σ_l D[j][l] e_l with D = G^{-1}
    let dual: Vec<SparseVec> = (0..d)
        .map(|j| SparseVec::from_pairs((0..d).map(|l| (l, dual_matrix.entry(j, l)))))
        .collect();
    // σ = (Gᵀ)^{-1} G, column j is σ(e_j)
    let nakayama = inverse(&gram.transpose())
        .ok_or(InstanceError::NotFrobenius)?
        .compose(&gram)?
        .with_spaces(alg.space(), alg.space())?;
    let data = FrobeniusData { gram, dual, nakayama };
    let label = |i: usize| alg.labels[i].clone();
    let e = |i: usize| alg.unit_vec(i);

    let mut dual_check = CheckResult::new("dual basis ε(e^j e_i) = δ");
    for j in 0..d {
        let lhs = SparseVec::from_pairs((0..d).map(|i| (i, eps(&alg.mul(&data.dual[j], &e(i))))));
        vector_check(&mut dual_check, Indices::new(&[("j", j as i64)]), format!("e^{}", label(j)), &lhs, &e(j), label);
    }
    report.push(dual_check);

    let mut counit_check = CheckResult::new("counitality Σ ε(a e_i) e^i = a = Σ ε(e^i a) e_i");
    for a in 0..d {
        let left = (0..d).fold(SparseVec::new(), |acc, i| acc.add_scaled(&data.dual[i], &eps(&alg.mul(&e(a), &e(i)))));
        let right = (0..d).fold(SparseVec::new(), |acc, i| acc.add_scaled(&e(i), &eps(&alg.mul(&data.dual[i], &e(a)))));
        vector_check(&mut counit_check, Indices::new(&[("side", 0)]), label(a), &left, &e(a), label);
        vector_check(&mut counit_check, Indices::new(&[("side", 1)]), label(a), &right, &e(a), label);
    }
    report.push(counit_check);

    let sigma = |v: &SparseVec| data.nakayama.apply(v);
    let mut twist = CheckResult::new("Nakayama relation ε(ab) = ε(σ(b)a)");
    let mut morphism = CheckResult::new("σ is a unital algebra automorphism");
    for a in 0..d {
        for b in 0..d {
            let lhs = SparseVec::from_sorted(vec![(0, eps(&alg.mul(&e(a), &e(b))))]);
            let rhs = SparseVec::from_sorted(vec![(0, eps(&alg.mul(&sigma(&e(b)), &e(a))))]);
            let pair = format!("{}, {}", label(a), label(b));
            vector_check(&mut twist, Indices::default(), pair.clone(), &lhs, &rhs, |_| "1_k".into());
            let lhs = sigma(alg.basis_product(a, b));
            let rhs = alg.mul(&sigma(&e(a)), &sigma(&e(b)));
            vector_check(&mut morphism, Indices::default(), pair, &lhs, &rhs, label);
        }
    }
    vector_check(&mut morphism, Indices::default(), "1".into(), &sigma(&alg.unit), &alg.unit, label);
    if inverse(&data.nakayama).is_none() {
        morphism.record(Outcome::Fail(Box::new(Witness {
            identity: morphism.identity.clone(),
            indices: Indices::default(),
            maps: vec![],
            basis: "-".into(),
            term: "-".into(),
            left: "σ singular".into(),
            right: "σ invertible".into(),
        })));
    }
    report.push(twist);
    report.push(morphism);

    let mut bilinear = CheckResult::new("bilinearity Σ a e_i ⊗ e^i = Σ e_i ⊗ e^i a");
    for a in 0..d {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..d {
            for (k, x) in alg.mul(&e(a), &e(i)).entries() {
                for (l, y) in data.dual[i].entries() {
                    lhs.push((k * d + l, x * y));
                }
            }
            for (l, y) in alg.mul(&data.dual[i], &e(a)).entries() {
                rhs.push((i * d + l, y.clone()));
            }
        }
        let pair_label = |r: usize| format!("({}) ⊗ ({})", label(r / d), label(r % d));
        vector_check(
            &mut bilinear,
            Indices::default(),
            label(a),
            &SparseVec::from_pairs(lhs),
            &SparseVec::from_pairs(rhs),
            pair_label,
        );
    }
    report.push(bilinear);
    Ok((report, data))
}

/// Hochschild chains `C(n) = A^{⊗(n+1)}` with the decompositions induced by
/// `Δ(1) = Σ e_k ⊗ e^k`, and the triple given by the Frobenius functional.
pub fn build_frobenius_cooperad(
    p: &FrobeniusPresentation,
    data: &FrobeniusData,
    truncation: u32,
) -> Result<(TruncatedCooperad, ComultiplicationTriple), InstanceError> {
    let alg = &p.algebra;
    let field = alg.field;
    let d = alg.dim();
    let spaces: Vec<BasedSpace> = (0..=truncation as usize).map(|n| word_space(&alg.labels, n + 1, "")).collect();
    let one_split = data.coproduct_of_one();

    let build = |pp: u32, q: u32, i: u32| -> LinearMap {
        let (pp, q, i) = (pp as usize, q as usize, i as usize);
        let source = Words { dim: d, len: pp + q };
        let left = Words { dim: d, len: pp + 1 };
        let right = Words { dim: d, len: q + 1 };
        let cols = (0..source.count())
            .map(|w| {
                let a = source.letters(w);
                let mut pairs = Vec::with_capacity(one_split.len());
                for (k, l, c) in &one_split {
                    let mut lw = a[..i].to_vec();
                    lw.push(*k);
                    lw.extend_from_slice(&a[i + q..]);
                    let mut rw = vec![*l];
                    rw.extend_from_slice(&a[i..i + q]);
                    pairs.push((left.index(&lw) * right.count() + right.index(&rw), c.clone()));
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let cod = BasedSpace::tensor2(&spaces[pp], &spaces[q]);
        LinearMap::from_columns(spaces[pp + q - 1].clone(), cod, field, cols).expect("decomposition fits")
    };

    let word_functional = |len: usize| -> LinearMap {
        let words = Words { dim: d, len };
        let cols = (0..words.count())
            .map(|w| {
                let v = evaluate(&p.functional, &alg.word_product(&words.letters(w)), field);
                SparseVec::from_sorted(vec![(0, v)])
            })
            .collect();
        LinearMap::from_columns(spaces[len - 1].clone(), BasedSpace::scalars(), field, cols).expect("functional fits")
    };
    let counit = word_functional(2);
    let cooperad = TruncatedCooperad::from_fn(field, spaces.clone(), counit.clone(), build)?;
    let triple = ComultiplicationTriple::new(&cooperad, word_functional(3), counit, word_functional(1))?;
    Ok((cooperad, triple))
}

/// A Hochschild cochain `A^{⊗p} → A`, stored by its values on basis words.
#[derive(Clone, Debug)]
struct Cochain {
    arity: usize,
    values: Vec<SparseVec>,
}

impl Cochain {
    fn basis(d: usize, arity: usize, word: usize, output: usize, alg: &Algebra) -> Self {
        let count = d.pow(arity as u32);
        let mut values = vec![SparseVec::new(); count];
        values[word] = alg.unit_vec(output);
        Cochain { arity, values }
    }

    fn identity(alg: &Algebra) -> Self {
        Cochain { arity: 1, values: (0..alg.dim()).map(|i| alg.unit_vec(i)).collect() }
    }

    /// `f ∘_i g`, by multilinear expansion of `g`'s output.
    fn compose(&self, i: usize, g: &Cochain, d: usize) -> Cochain {
        let arity = self.arity + g.arity - 1;
        let words = Words { dim: d, len: arity };
        let inner = Words { dim: d, len: g.arity };
        let outer = Words { dim: d, len: self.arity };
        let values = (0..words.count())
            .map(|w| {
                let a = words.letters(w);
                let gv = &g.values[inner.index(&a[i - 1..i - 1 + g.arity])];
                let mut acc = SparseVec::new();
                for (t, c) in gv.entries() {
                    let mut u = a[..i - 1].to_vec();
                    u.push(*t);
                    u.extend_from_slice(&a[i - 1 + g.arity..]);
                    acc = acc.add_scaled(&self.values[outer.index(&u)], c);
                }
                acc
            })
            .collect();
        Cochain { arity, values }
    }

    /// The functional `(a₀, a₁, …) ↦ ε(a₀ f(a₁, …))` on `A^{⊗(arity+1)}`.
    fn hat(&self, alg: &Algebra, functional: &[FieldElement]) -> Vec<FieldElement> {
        let d = alg.dim();
        let tail = Words { dim: d, len: self.arity };
        let mut out = Vec::with_capacity(d * tail.count());
        for a0 in 0..d {
            for w in 0..tail.count() {
                out.push(evaluate(functional, &alg.mul(&alg.unit_vec(a0), &self.values[w]), alg.field));
            }
        }
        out
    }
}

pub const IDENTITY_HAT: &str = "hat duality: (f ∘_i g)^ = (f^ ⊗ g^)∘Δ(p,q,i)";
pub const IDENTITY_HAT_UNIT: &str = "hat duality: identity cochain is a two-sided unit";

/// Checks that the decompositions dualize to the operadic composition of
/// Hochschild cochains through the hat map, on all pairs of basis cochains,
/// for `1 ≤ p ≤ max_p`, `0 ≤ q ≤ max_q` within the truncation.
pub fn verify_hat_duality(
    p: &FrobeniusPresentation,
    cooperad: &TruncatedCooperad,
    max_p: u32,
    max_q: u32,
) -> Report {
    let alg = &p.algebra;
    let d = alg.dim();
    let n = cooperad.truncation();
    let mut report = Report::new("hat duality");
    let mut main = CheckResult::new(IDENTITY_HAT);
    let mut unit = CheckResult::new(IDENTITY_HAT_UNIT);
    let pairing = |lhs: &[FieldElement], f: &[FieldElement], g: &[FieldElement], key: (u32, u32, u32)| -> Option<(usize, String, String)> {
        let delta = cooperad.delta(key.0, key.1, key.2).expect("key within truncation");
        let right_dim = cooperad.spaces()[key.1 as usize].dim();
        for (x, col) in delta.columns().iter().enumerate() {
            let rhs = col.entries().iter().fold(alg.field.zero(), |acc, (row, c)| {
                acc + &(&(c * &f[row / right_dim]) * &g[row % right_dim])
            });
            if rhs != lhs[x] {
                return Some((x, lhs[x].to_string(), rhs.to_string()));
            }
        }
        None
    };
    for pp in 1..=max_p {
        for q in 0..=max_q {
            if pp + q - 1 > n || pp > n || q > n {
                continue;
            }
            let fs: Vec<Cochain> = (0..d.pow(pp))
                .flat_map(|w| (0..d).map(move |s| (w, s)))
                .map(|(w, s)| Cochain::basis(d, pp as usize, w, s, alg))
                .collect();
            let gs: Vec<Cochain> = (0..d.pow(q))
                .flat_map(|w| (0..d).map(move |s| (w, s)))
                .map(|(w, s)| Cochain::basis(d, q as usize, w, s, alg))
                .collect();
            let g_hats: Vec<Vec<FieldElement>> = gs.iter().map(|g| g.hat(alg, &p.functional)).collect();
            for i in 1..=pp {
                let key = (pp, q, i);
                let indices = Indices::new(&[("p", pp as i64), ("q", q as i64), ("i", i as i64)]);
                let failure = fs.par_iter().enumerate().find_map_first(|(fi, f)| {
                    let f_hat = f.hat(alg, &p.functional);
                    for (gi, g) in gs.iter().enumerate() {
                        let lhs = f.compose(i as usize, g, d).hat(alg, &p.functional);
                        if let Some((x, l, r)) = pairing(&lhs, &f_hat, &g_hats[gi], key) {
                            return Some(Witness {
                                identity: IDENTITY_HAT.into(),
                                indices: indices.clone(),
                                maps: vec![key_name(key)],
                                basis: cooperad.basis_label(pp + q - 1, x),
                                term: format!("f = basis cochain {fi}, g = basis cochain {gi}"),
                                left: l,
                                right: r,
                            });
                        }
                    }
                    None
                });
                main.record(match failure {
                    Some(w) => Outcome::Fail(Box::new(w)),
                    None => Outcome::Pass,
                });
            }
            let id = Cochain::identity(alg);
            let id_hat = id.hat(alg, &p.functional);
            if pp == 1 {
                // id ∘_1 g = g
                let fail = gs.iter().enumerate().find_map(|(gi, _)| {
                    pairing(&g_hats[gi], &id_hat, &g_hats[gi], (1, q, 1)).map(|(x, l, r)| (gi, x, l, r))
                });
                unit.record(unit_outcome(fail, cooperad, (1, q, 1)));
            }
            if q == 1 {
                // f ∘_i id = f
                for i in 1..=pp {
                    let fail = fs.iter().enumerate().find_map(|(fi, f)| {
                        let f_hat = f.hat(alg, &p.functional);
                        pairing(&f_hat, &f_hat, &id_hat, (pp, 1, i)).map(|(x, l, r)| (fi, x, l, r))
                    });
                    unit.record(unit_outcome(fail, cooperad, (pp, 1, i)));
                }
            }
        }
    }
    report.push(main);
    report.push(unit);
    report
}

fn unit_outcome(
    fail: Option<(usize, usize, String, String)>,
    cooperad: &TruncatedCooperad,
    key: (u32, u32, u32),
) -> Outcome {
    match fail {
        None => Outcome::Pass,
        Some((c, x, l, r)) => Outcome::Fail(Box::new(Witness {
            identity: IDENTITY_HAT_UNIT.into(),
            indices: Indices::new(&[("p", key.0 as i64), ("q", key.1 as i64), ("i", key.2 as i64)]),
            maps: vec![key_name(key)],
            basis: cooperad.basis_label(key.0 + key.1 - 1, x),
            term: format!("basis cochain {c}"),
            left: l,
            right: r,
        })),
    }
}
