//! Truncated planar counital cooperads given by partial decompositions.

mod report;
mod verify;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactlinalg::tensor::{term_label, Difference};
use crate::exactlinalg::{shape, BasedSpace, FieldSpec, GradedVec, LinAlgError, LinearMap, SingleMap, SparseVec};

pub use report::{CheckResult, Indices, Outcome, Report, Witness, WITNESS_CAP};
pub use verify::{
    coassociativity_tuples, verify_comultiplication, verify_cooperad_axioms, CoassocFamily, CoassocTuple,
    IDENTITY_COASSOC_EQ2, IDENTITY_COASSOC_GENERIC, IDENTITY_COASSOC_Q0, IDENTITY_COASSOC_QR0,
    IDENTITY_COASSOC_R0, IDENTITY_COMULT_COASSOC, IDENTITY_COMULT_COUNIT, IDENTITY_COMULT_ONE, IDENTITY_COUNIT_LEFT,
    IDENTITY_COUNIT_RIGHT,
};

/// Index of a partial decomposition `Δ_{p,q,i}`.
pub type DecompKey = (u32, u32, u32);

pub fn key_name((p, q, i): DecompKey) -> String {
    format!("Δ({p},{q},{i})")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CooperadError {
    #[error("Δ({p},{q},{i}): index violates {bound}")]
    IndexOutOfRange { p: u32, q: u32, i: u32, bound: &'static str },
    #[error("arity {arity} exceeds the truncation {truncation}")]
    BeyondTruncation { arity: u32, truncation: u32 },
    #[error("missing decomposition Δ({p},{q},{i})")]
    MissingDecomposition { p: u32, q: u32, i: u32 },
    #[error("unexpected decomposition Δ({p},{q},{i}) for truncation {truncation}")]
    UnexpectedDecomposition { p: u32, q: u32, i: u32, truncation: u32 },
    #[error("Δ({p},{q},{i}) has shape {found}, expected {expected}")]
    DecompositionShape { p: u32, q: u32, i: u32, expected: String, found: String },
    #[error("{name} has shape {found}, expected {expected}")]
    FunctionalShape { name: &'static str, expected: String, found: String },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl CooperadError {
    /// True for errors that only mean "not computable within the truncation".
    pub fn is_truncation(&self) -> bool {
        matches!(
            self,
            CooperadError::BeyondTruncation { .. } | CooperadError::LinAlg(LinAlgError::ArityUnavailable(_))
        )
    }
}

/// Spaces `C(0..=N)`, all partial decompositions between them, and the counit.
#[derive(Clone, Debug)]
pub struct TruncatedCooperad {
    field: FieldSpec,
    spaces: Vec<BasedSpace>,
    decomp: BTreeMap<DecompKey, LinearMap>,
    counit: LinearMap,
}

/// Keys stored for truncation `n`: `p ≥ 1`, `q ≥ 0`, `p + q - 1 ≤ n`,
/// `1 ≤ i ≤ p`, and `p ≤ n` so that both factors exist.
pub fn admissible_keys(truncation: u32) -> Vec<DecompKey> {
    let mut keys = Vec::new();
    for p in 1..=truncation {
        for q in 0..=(truncation + 1 - p) {
            for i in 1..=p {
                keys.push((p, q, i));
            }
        }
    }
    keys
}

impl TruncatedCooperad {
    pub fn new(
        field: FieldSpec,
        spaces: Vec<BasedSpace>,
        decomp: BTreeMap<DecompKey, LinearMap>,
        counit: LinearMap,
    ) -> Result<Self, CooperadError> {
        assert!(!spaces.is_empty(), "a cooperad needs at least C(0)");
        let n = (spaces.len() - 1) as u32;
        let keys = admissible_keys(n);
        for &(p, q, i) in decomp.keys() {
            if !keys.contains(&(p, q, i)) {
                return Err(CooperadError::UnexpectedDecomposition { p, q, i, truncation: n });
            }
        }
        let mut table = BTreeMap::new();
        let mut decomp = decomp;
        for (p, q, i) in keys {
            let map = decomp.remove(&(p, q, i)).ok_or(CooperadError::MissingDecomposition { p, q, i })?;
            let dom = &spaces[(p + q - 1) as usize];
            let cod = BasedSpace::tensor2(&spaces[p as usize], &spaces[q as usize]);
            if map.ncols() != dom.dim() || map.nrows() != cod.dim() {
                return Err(CooperadError::DecompositionShape {
                    p,
                    q,
                    i,
                    expected: format!("{}x{}", cod.dim(), dom.dim()),
                    found: format!("{}x{}", map.nrows(), map.ncols()),
                });
            }
            if map.field() != field {
                return Err(LinAlgError::FieldMismatch.into());
            }
            table.insert((p, q, i), map.with_spaces(dom.clone(), cod)?);
        }
        let counit = check_functional("counit", counit, &spaces, 1, field)?;
        Ok(TruncatedCooperad { field, spaces, decomp: table, counit })
    }

    /// Builds every admissible decomposition from a closure.
    pub fn from_fn(
        field: FieldSpec,
        spaces: Vec<BasedSpace>,
        counit: LinearMap,
        build: impl Fn(u32, u32, u32) -> LinearMap + Sync,
    ) -> Result<Self, CooperadError> {
        let n = (spaces.len() - 1) as u32;
        let decomp: BTreeMap<DecompKey, LinearMap> = admissible_keys(n)
            .into_par_iter()
            .map(|(p, q, i)| ((p, q, i), build(p, q, i)))
            .collect();
        Self::new(field, spaces, decomp, counit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        (self.spaces.len() - 1) as u32
    }

    pub fn spaces(&self) -> &[BasedSpace] {
        &self.spaces
    }

    pub fn space(&self, arity: u32) -> Result<&BasedSpace, CooperadError> {
        self.spaces.get(arity as usize).ok_or(CooperadError::BeyondTruncation {
            arity,
            truncation: self.truncation(),
        })
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn decompositions(&self) -> &BTreeMap<DecompKey, LinearMap> {
        &self.decomp
    }

    /// The stored map `Δ_{p,q,i}`; `None` for `p = 0` or beyond truncation.
    pub fn delta(&self, p: u32, q: u32, i: u32) -> Option<&LinearMap> {
        self.decomp.get(&(p, q, i))
    }

    fn check_key(&self, p: u32, q: u32, i: u32) -> Result<(), CooperadError> {
        let n = self.truncation();
        if i < 1 {
            return Err(CooperadError::IndexOutOfRange { p, q, i, bound: "1 ≤ i" });
        }
        if p >= 1 && i > p {
            return Err(CooperadError::IndexOutOfRange { p, q, i, bound: "i ≤ p" });
        }
        if p + q < 1 || p + q - 1 > n {
            return Err(CooperadError::IndexOutOfRange { p, q, i, bound: "p + q - 1 ≤ N" });
        }
        if p > n {
            return Err(CooperadError::IndexOutOfRange { p, q, i, bound: "p ≤ N" });
        }
        Ok(())
    }

    /// `Δ_{p,q,i}(x)` as a vector in `C(p) ⊗ C(q)`; zero when `p = 0`.
    pub fn decompose(&self, p: u32, q: u32, i: u32, x: &SparseVec) -> Result<SparseVec, CooperadError> {
        if p == 0 {
            return Ok(SparseVec::new());
        }
        self.check_key(p, q, i)?;
        Ok(self.decomp[&(p, q, i)].apply(x))
    }

    /// Applies `Δ_{p,q,i}` to leg `pos` of `v`, which must have arity
    /// `p + q - 1` there. The leg is replaced by two legs of arities p, q.
    pub fn apply_delta(&self, v: &GradedVec, pos: usize, p: u32, q: u32, i: u32) -> Result<GradedVec, CooperadError> {
        if p == 0 {
            return Ok(GradedVec::zero(self.field));
        }
        if i < 1 || i > p {
            return Err(CooperadError::IndexOutOfRange { p, q, i, bound: "1 ≤ i ≤ p" });
        }
        let map = self.delta(p, q, i).ok_or(CooperadError::BeyondTruncation {
            arity: (p + q - 1).max(p),
            truncation: self.truncation(),
        })?;
        let op = SingleMap { input: p + q - 1, output: shape(&[p, q]), map };
        Ok(v.apply_leg(pos, &op, &self.spaces)?)
    }

    /// Applies a functional on `C(arity)` to leg `pos`, removing the leg.
    pub fn apply_functional(
        &self,
        v: &GradedVec,
        pos: usize,
        arity: u32,
        functional: &LinearMap,
    ) -> Result<GradedVec, CooperadError> {
        let op = SingleMap { input: arity, output: shape(&[]), map: functional };
        Ok(v.apply_leg(pos, &op, &self.spaces)?)
    }

    pub fn basis_label(&self, arity: u32, index: usize) -> String {
        self.spaces[arity as usize].label(index)
    }

    pub fn term_label(&self, legs: &[u32], index: usize) -> String {
        term_label(legs, index, &self.spaces)
    }

    /// Copy with the `nth` stored entry of column `col` of `Δ_{key}` negated.
    pub fn perturbed(&self, key: DecompKey, col: usize, nth: usize) -> Option<TruncatedCooperad> {
        let map = self.decomp.get(&key)?.with_entry_negated(col, nth)?;
        let mut out = self.clone();
        out.decomp.insert(key, map);
        Some(out)
    }

    /// Every stored decomposition entry, as `(key, column, position)`.
    pub fn entries(&self) -> Vec<(DecompKey, usize, usize)> {
        let mut out = Vec::new();
        for (key, map) in &self.decomp {
            for (c, col) in map.columns().iter().enumerate() {
                for k in 0..col.nnz() {
                    out.push((*key, c, k));
                }
            }
        }
        out
    }

    /// Builds a witness from the first disagreement of two sides.
    pub fn witness(
        &self,
        identity: &str,
        indices: Indices,
        maps: Vec<String>,
        input: (u32, usize),
        diff: Difference,
    ) -> Witness {
        Witness {
            identity: identity.to_string(),
            indices,
            maps,
            basis: self.basis_label(input.0, input.1),
            term: self.term_label(&diff.legs, diff.index),
            left: diff.left.to_string(),
            right: diff.right.to_string(),
        }
    }

    /// Checks `lhs(x) = rhs(x)` for every basis element `x` of `C(arity)`.
    /// Truncation errors make the instance a skip.
    pub fn check_on_basis<F>(&self, identity: &str, indices: Indices, maps: Vec<String>, arity: u32, sides: F) -> Outcome
    where
        F: Fn(&GradedVec) -> Result<(GradedVec, GradedVec), CooperadError> + Sync,
    {
        check_on_basis_of(&self.spaces, self.field, identity, indices, maps, arity, sides)
    }
}

/// [`TruncatedCooperad::check_on_basis`] over an arbitrary list of graded
/// pieces.
pub fn check_on_basis_of<F>(
    spaces: &[BasedSpace],
    field: FieldSpec,
    identity: &str,
    indices: Indices,
    maps: Vec<String>,
    arity: u32,
    sides: F,
) -> Outcome
where
    F: Fn(&GradedVec) -> Result<(GradedVec, GradedVec), CooperadError> + Sync,
{
    let Some(space) = spaces.get(arity as usize) else { return Outcome::Skip };
    let found = (0..space.dim()).into_par_iter().find_map_first(|b| {
        let x = GradedVec::basis(field, arity, b);
        let witness = |term: String, left: String, right: String| Witness {
            identity: identity.to_string(),
            indices: indices.clone(),
            maps: maps.clone(),
            basis: space.label(b),
            term,
            left,
            right,
        };
        match sides(&x) {
            Err(e) if e.is_truncation() => Some(Outcome::Skip),
            Err(e) => Some(Outcome::Fail(Box::new(witness("-".into(), e.to_string(), "-".into())))),
            Ok((l, r)) => l.first_difference(&r).map(|d| {
                Outcome::Fail(Box::new(witness(
                    term_label(&d.legs, d.index, spaces),
                    d.left.to_string(),
                    d.right.to_string(),
                )))
            }),
        }
    });
    found.unwrap_or(Outcome::Pass)
}

/// Compares two maps column by column; the witness names the first
/// differing column (input basis element) and row (output term).
pub fn compare_maps(identity: &str, indices: Indices, maps: Vec<String>, lhs: &LinearMap, rhs: &LinearMap) -> Outcome {
    if lhs.nrows() != rhs.nrows() || lhs.ncols() != rhs.ncols() {
        return Outcome::Fail(Box::new(Witness {
            identity: identity.to_string(),
            indices,
            maps,
            basis: "-".into(),
            term: "-".into(),
            left: format!("{}x{} map", lhs.nrows(), lhs.ncols()),
            right: format!("{}x{} map", rhs.nrows(), rhs.ncols()),
        }));
    }
    for c in 0..lhs.ncols() {
        let (l, r) = (lhs.column(c), rhs.column(c));
        if l == r {
            continue;
        }
        let diff = l.add_scaled(r, &lhs.field().from_i64(-1));
        let row = diff.leading().expect("columns differ").0;
        return Outcome::Fail(Box::new(Witness {
            identity: identity.to_string(),
            indices,
            maps,
            basis: lhs.domain().label(c),
            term: lhs.codomain().label(row),
            left: lhs.entry(row, c).to_string(),
            right: rhs.entry(row, c).to_string(),
        }));
    }
    Outcome::Pass
}

fn check_functional(
    name: &'static str,
    f: LinearMap,
    spaces: &[BasedSpace],
    arity: usize,
    field: FieldSpec,
) -> Result<LinearMap, CooperadError> {
    let dom = &spaces[arity];
    if f.ncols() != dom.dim() || f.nrows() != 1 {
        return Err(CooperadError::FunctionalShape {
            name,
            expected: format!("1x{}", dom.dim()),
            found: format!("{}x{}", f.nrows(), f.ncols()),
        });
    }
    if f.field() != field {
        return Err(LinAlgError::FieldMismatch.into());
    }
    Ok(f.with_spaces(dom.clone(), BasedSpace::scalars())?)
}

/// The functionals `μᶜ` on `C(2)`, `𝟙ᶜ` on `C(1)` and `eᶜ` on `C(0)`.
#[derive(Clone, Debug)]
pub struct ComultiplicationTriple {
    pub mu: LinearMap,
    pub one: LinearMap,
    pub unit: LinearMap,
}

impl ComultiplicationTriple {
    pub fn new(c: &TruncatedCooperad, mu: LinearMap, one: LinearMap, unit: LinearMap) -> Result<Self, CooperadError> {
        if c.truncation() < 2 {
            return Err(CooperadError::BeyondTruncation { arity: 2, truncation: c.truncation() });
        }
        Ok(ComultiplicationTriple {
            mu: check_functional("μᶜ", mu, c.spaces(), 2, c.field())?,
            one: check_functional("𝟙ᶜ", one, c.spaces(), 1, c.field())?,
            unit: check_functional("eᶜ", unit, c.spaces(), 0, c.field())?,
        })
    }

    /// Copy with `eᶜ` replaced by zero.
    pub fn with_zero_unit(&self) -> Self {
        ComultiplicationTriple {
            unit: LinearMap::zero(self.unit.domain().clone(), self.unit.codomain().clone(), self.unit.field()),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_enumeration_respects_bounds() {
        let keys = admissible_keys(2);
        assert!(keys.contains(&(1, 0, 1)));
        assert!(keys.contains(&(1, 2, 1)));
        assert!(keys.contains(&(2, 1, 2)));
        assert!(keys.contains(&(2, 0, 1)));
        assert!(!keys.contains(&(3, 0, 1)));
        assert!(!keys.contains(&(2, 2, 1)));
        assert!(keys.iter().all(|&(p, q, i)| p >= 1 && i <= p && p + q - 1 <= 2));
    }
}
