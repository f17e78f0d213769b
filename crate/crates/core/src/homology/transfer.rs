use std::collections::BTreeMap;

use super::{compute_homology, verify_gerstenhaber, verify_retraction, ChainComplex, HomologyError, Retraction};
use crate::cooperad::{
    check_on_basis_of, compare_maps, CheckResult, ComultiplicationTriple, CooperadError, Indices, Outcome, Report,
    TruncatedCooperad,
};
use crate::derived::{cobracket, cup_coproduct, differential, family, Family, SummedMap};
use crate::exactlinalg::{shape, BasedSpace, GradedVec, LinearMap, SparseVec};

/// Checks `m∘d = (d⊗id + (-1)^{a - shift} id⊗d)∘m` on every basis element,
/// where `a` is the arity of the first output leg. The cup coproduct has
/// shift 0; the cobracket lives on the suspension and has shift 1.
pub fn chain_map_check(name: &str, m: &Family, cx: &ChainComplex, shift: i64) -> CheckResult {
    let identity = format!("{name} is a chain map");
    let d = cx.differential_op();
    let spaces = cx.spaces();
    let mut check = CheckResult::new(identity.clone());
    for n in m.arities().filter(|&n| n <= cx.top()) {
        check.record(check_on_basis_of(spaces, cx.field(), &identity, Indices::new(&[("n", n as i64)]), vec![], n, |x| {
            let dx = x.apply_leg(0, &d, spaces)?;
            let lhs = if n == 0 { GradedVec::zero(cx.field()) } else { dx.apply_leg(0, m, spaces)? };
            let mx = x.apply_leg(0, m, spaces)?;
            let first = mx.apply_leg(0, &d, spaces)?;
            let second = mx.apply_leg(1, &d, spaces)?.sign_by_shape(|s| s[0] as i64 - shift);
            Ok((lhs, first.add(&second)))
        }));
    }
    check
}

/// `(p⊗p)∘m∘d = 0`: the transfer does not depend on the representative.
pub fn well_defined_check(name: &str, m: &Family, cx: &ChainComplex, r: &Retraction) -> CheckResult {
    let identity = format!("(p⊗p)∘{name}∘d = 0");
    let mut check = CheckResult::new(identity.clone());
    for n in m.arities().filter(|&n| n < cx.top()) {
        let (Some(comps), Some(d)) = (m.get(n), cx.d(n + 1)) else { continue };
        for (legs, map) in &comps.components {
            let idx = Indices::new(&[("n", n as i64), ("a", legs[0] as i64), ("b", legs[1] as i64)]);
            // Boundaries out of the missing degree above the top are unknown.
            if cx.is_truncated() && legs.iter().any(|&l| l >= cx.top()) {
                check.record(Outcome::Skip);
                continue;
            }
            let Some(projected) = project_pair(&map.compose(d).expect("shapes"), legs, r) else {
                check.record(Outcome::Skip);
                continue;
            };
            let zero = LinearMap::zero(projected.domain().clone(), projected.codomain().clone(), cx.field());
            check.record(compare_maps(&identity, idx, vec![], &projected, &zero));
        }
    }
    check
}

/// `(p_a⊗p_b)∘f` for a map `f` into `C(a)⊗C(b)`.
fn project_pair(f: &LinearMap, legs: &[u32], r: &Retraction) -> Option<LinearMap> {
    let (a, b) = (legs[0] as usize, legs[1] as usize);
    let (pa, pb) = (r.projection.get(a)?, r.projection.get(b)?);
    let cb = pb.ncols();
    let hb = pb.nrows();
    let cols = f
        .columns()
        .iter()
        .map(|col| {
            let mut acc: Vec<(usize, _)> = Vec::new();
            for (idx, c) in col.entries() {
                let (x, y) = (idx / cb, idx % cb);
                for (u, cu) in pa.column(x).entries() {
                    for (v, cv) in pb.column(y).entries() {
                        acc.push((u * hb + v, &(c * cu) * cv));
                    }
                }
            }
            SparseVec::from_pairs(acc)
        })
        .collect();
    let target = BasedSpace::tensor(vec![r.homology[a].clone(), r.homology[b].clone()]);
    Some(LinearMap::from_columns(f.domain().clone(), target, f.field(), cols).expect("shapes"))
}

/// Transfers a binary chain map to homology as `(p⊗p)∘m∘i`, after checking
/// that `m` is a chain map and kills boundaries after projection.
pub fn transfer_binary(name: &str, m: &Family, cx: &ChainComplex, r: &Retraction, shift: i64) -> Result<Family, HomologyError> {
    for check in [chain_map_check(name, m, cx, shift), well_defined_check(name, m, cx, r)] {
        if let Some(w) = check.witnesses.into_iter().next() {
            let name = name.to_string();
            return Err(if w.identity.ends_with("chain map") {
                HomologyError::NotChainMap { name, witness: Box::new(w) }
            } else {
                HomologyError::NotWellDefined { name, witness: Box::new(w) }
            });
        }
    }
    let mut maps = BTreeMap::new();
    for n in m.arities().filter(|&n| n <= r.top()) {
        let comps = m.get(n).expect("listed arity");
        let i = &r.inclusion[n as usize];
        let mut components = BTreeMap::new();
        for (legs, map) in &comps.components {
            if let Some(projected) = project_pair(&map.compose(i).expect("shapes"), legs, r) {
                let target = projected.codomain().clone();
                let projected = projected.with_spaces(r.homology[n as usize].clone(), target)?;
                components.insert(legs.clone(), projected);
            }
        }
        maps.insert(n, SummedMap { source: n, components });
    }
    Ok(Family { maps })
}

/// Homology with its transferred coproduct, cobracket and counit.
#[derive(Clone, Debug)]
pub struct HomologyStructure {
    pub retraction: Retraction,
    pub cup: Family,
    pub cobracket: Family,
    /// `ē ᶜ∘i` on `H(0)`.
    pub counit: LinearMap,
}

impl HomologyStructure {
    pub fn spaces(&self) -> &[BasedSpace] {
        &self.retraction.homology
    }

    /// The counit as a leg operator, zero outside degree 0.
    pub fn counit_op(&self) -> Family {
        let maps = (0..=self.retraction.top())
            .map(|n| {
                let mut components = BTreeMap::new();
                if n == 0 {
                    components.insert(shape(&[]), self.counit.clone());
                }
                (n, SummedMap { source: n, components })
            })
            .collect();
        Family { maps }
    }
}

/// Everything the homology suite produces for one instance.
#[derive(Clone, Debug)]
pub struct HomologyAnalysis {
    /// Degrees reported as exact: `0..=degree`.
    pub degree: u32,
    pub complex: ChainComplex,
    pub structure: HomologyStructure,
    pub report: Report,
}

impl HomologyAnalysis {
    /// `dim H(n)` for `n ≤ degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.structure.retraction.dims().into_iter().take(self.degree as usize + 1).collect()
    }
}

/// Runs the homology pipeline on a cooperad truncated one arity above the
/// requested degree, so that `H(0..=degree)` is exact.
pub fn analyze(c: &TruncatedCooperad, t: &ComultiplicationTriple) -> Result<HomologyAnalysis, HomologyError> {
    let degree = c.truncation().checked_sub(1).ok_or(HomologyError::Empty)?;
    let d = family(c, |n| differential(c, t, n))?;
    let cup = family(c, |n| cup_coproduct(c, t, n))?;
    let bracket = family(c, |n| cobracket(c, n))?;
    let cx = ChainComplex::from_cooperad(c, &d)?;
    let r = compute_homology(&cx)?;

    let mut report = Report::new("homology");
    report.extend(verify_retraction(&cx, &r));
    report.push(chain_map_check("∪ᶜ", &cup, &cx, 0));
    report.push(chain_map_check("{-}", &bracket, &cx, 1));
    report.push(well_defined_check("∪ᶜ", &cup, &cx, &r));
    report.push(well_defined_check("{-}", &bracket, &cx, &r));

    let cup_h = transfer_binary("∪ᶜ", &cup, &cx, &r, 0)?;
    let bracket_h = transfer_binary("{-}", &bracket, &cx, &r, 1)?;
    let counit = t.unit.compose(&r.inclusion[0]).map_err(CooperadError::from)?;
    let structure = HomologyStructure { retraction: r, cup: cup_h, cobracket: bracket_h, counit };
    report.extend(verify_gerstenhaber(&structure));
    Ok(HomologyAnalysis { degree, complex: cx, structure, report })
}
