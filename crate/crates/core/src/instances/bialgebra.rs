use super::algebra::{evaluate, word_space, Words};
use super::presentation::BialgebraPresentation;
use super::{associativity_checks, InstanceError};
use crate::cooperad::{compare_maps, CheckResult, ComultiplicationTriple, Indices, Report, TruncatedCooperad};
use crate::exactlinalg::{flip, tensor_map, BasedSpace, FieldElement, FlipKind, LinearMap, SparseVec};

fn comult_map(p: &BialgebraPresentation) -> LinearMap {
    let a = p.algebra.space();
    LinearMap::from_columns(a.clone(), BasedSpace::tensor2(&a, &a), p.algebra.field, p.comult.clone())
        .expect("comultiplication fits")
}

fn counit_map(p: &BialgebraPresentation) -> LinearMap {
    let cols = p.counit.iter().map(|c| SparseVec::from_sorted(vec![(0, c.clone())])).collect();
    LinearMap::from_columns(p.algebra.space(), BasedSpace::scalars(), p.algebra.field, cols).expect("counit fits")
}

fn single(name: &str, lhs: &LinearMap, rhs: &LinearMap) -> CheckResult {
    let mut c = CheckResult::new(name);
    c.record(compare_maps(name, Indices::default(), vec![], lhs, rhs));
    c
}

/// Bialgebra axioms on structure constants.
pub fn validate_bialgebra(p: &BialgebraPresentation) -> Result<Report, InstanceError> {
    let alg = &p.algebra;
    let field = alg.field;
    let d = alg.dim();
    if p.comult.len() != d || p.counit.len() != d {
        return Err(InstanceError::Shape("comultiplication or counit does not match the dimension".into()));
    }
    let mut report = associativity_checks(alg, "bialgebra");
    let a = alg.space();
    let id = LinearMap::identity(a.clone(), field);
    let delta = comult_map(p);
    let eps = counit_map(p);
    let mu = alg.mult_map();
    let eta = alg.unit_map();
    let c = |x: &LinearMap, y: &LinearMap| x.compose(y).expect("shapes agree");

    report.push(single(
        "coassociativity of δ",
        &c(&tensor_map(&delta, &id), &delta),
        &c(&tensor_map(&id, &delta), &delta),
    ));
    report.push(single("counitality (ε⊗id)δ = id", &c(&tensor_map(&eps, &id), &delta), &id));
    report.push(single("counitality (id⊗ε)δ = id", &c(&tensor_map(&id, &eps), &delta), &id));
    let middle = tensor_map(&tensor_map(&id, &flip(FlipKind::Sigma, 0, 0, &a, &a, field)), &id);
    report.push(single(
        "δ is multiplicative",
        &c(&delta, &mu),
        &c(&c(&tensor_map(&mu, &mu), &middle), &tensor_map(&delta, &delta)),
    ));
    report.push(single("δ is unital", &c(&delta, &eta), &tensor_map(&eta, &eta)));
    report.push(single("ε is multiplicative", &c(&eps, &mu), &tensor_map(&eps, &eps)));
    report.push(single("ε is unital", &c(&eps, &eta), &LinearMap::identity(BasedSpace::scalars(), field)));
    Ok(report)
}

/// `C(p) = B^{⊗p}` with `C(0) = k`, and the triple `μᶜ = ε∘μ`, `𝟙ᶜ = ε`, `eᶜ = id_k`.
pub fn build_bialgebra_cooperad(
    p: &BialgebraPresentation,
    truncation: u32,
) -> Result<(TruncatedCooperad, ComultiplicationTriple), InstanceError> {
    let alg = &p.algebra;
    let field = alg.field;
    let d = alg.dim();
    let spaces: Vec<BasedSpace> = (0..=truncation as usize).map(|n| word_space(&alg.labels, n, "1_k")).collect();

    let build = |pp: u32, q: u32, i: u32| -> LinearMap {
        let (pp, q, i) = (pp as usize, q as usize, i as usize);
        let source = Words { dim: d, len: pp + q - 1 };
        let left = Words { dim: d, len: pp };
        let right = Words { dim: d, len: q };
        let mut cols = Vec::with_capacity(source.count());
        for w in 0..source.count() {
            let letters = source.letters(w);
            // Sweedler expansion of the window: (product of first legs, second legs, coefficient)
            let mut terms: Vec<(SparseVec, Vec<usize>, FieldElement)> = vec![(alg.unit.clone(), Vec::new(), field.one())];
            for &l in &letters[i - 1..i - 1 + q] {
                let mut next = Vec::new();
                for (first, second, coeff) in &terms {
                    for (jk, t) in p.comult[l].entries() {
                        let (j, k) = (jk / d, jk % d);
                        let mut s = second.clone();
                        s.push(k);
                        next.push((alg.mul(first, &alg.unit_vec(j)), s, coeff * t));
                    }
                }
                terms = next;
            }
            let mut pairs = Vec::new();
            for (first, second, coeff) in terms {
                let r = if q == 0 { 0 } else { right.index(&second) };
                for (m, fc) in first.entries() {
                    let mut lw = letters[..i - 1].to_vec();
                    lw.push(*m);
                    lw.extend_from_slice(&letters[i - 1 + q..]);
                    pairs.push((left.index(&lw) * right.count() + r, &coeff * fc));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
        let cod = BasedSpace::tensor2(&spaces[pp], &spaces[q]);
        LinearMap::from_columns(spaces[pp + q - 1].clone(), cod, field, cols).expect("decomposition fits")
    };

    let counit = counit_map(p).with_spaces(spaces[1].clone(), BasedSpace::scalars())?;
    let cooperad = TruncatedCooperad::from_fn(field, spaces.clone(), counit.clone(), build)?;

    let pairs = Words { dim: d, len: 2 };
    let mu_cols = (0..pairs.count())
        .map(|w| {
            let l = pairs.letters(w);
            let v = evaluate(&p.counit, alg.basis_product(l[0], l[1]), field);
            SparseVec::from_sorted(vec![(0, v)])
        })
        .collect();
    let mu = LinearMap::from_columns(spaces[2].clone(), BasedSpace::scalars(), field, mu_cols)?;
    let unit = LinearMap::identity(BasedSpace::scalars(), field).with_spaces(spaces[0].clone(), BasedSpace::scalars())?;
    let triple = ComultiplicationTriple::new(&cooperad, mu, counit, unit)?;
    Ok((cooperad, triple))
}
