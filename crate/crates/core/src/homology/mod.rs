//! Homology of the derived chain complex, a deformation retract onto it,
//! and the Gerstenhaber coalgebra structure transferred along that retract.

mod transfer;
mod verify;

use rayon::prelude::*;
use thiserror::Error;

use crate::cooperad::{compare_maps, CheckResult, CooperadError, Indices, Outcome, Report, TruncatedCooperad, Witness};
use crate::derived::Family;
use crate::exactlinalg::{rank_decomposition, BasedSpace, Echelon, FieldSpec, Insertion, LinAlgError, LinearMap, SparseVec};

pub use transfer::{analyze, chain_map_check, transfer_binary, well_defined_check, HomologyAnalysis, HomologyStructure};
pub use verify::{verify_gerstenhaber, GerstenhaberAxiom};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("d∘d is not zero out of degree {degree}: {witness}")]
    NotAComplex { degree: u32, witness: Box<Witness> },
    #[error("{name} is not a chain map: {witness}")]
    NotChainMap { name: String, witness: Box<Witness> },
    #[error("{name} does not vanish on boundaries: {witness}")]
    NotWellDefined { name: String, witness: Box<Witness> },
    #[error("complex has no degrees")]
    Empty,
    #[error(transparent)]
    Cooperad(#[from] CooperadError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Degrees `0..=top` with differentials `d_n : C(n) → C(n-1)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: FieldSpec,
    spaces: Vec<BasedSpace>,
    /// `differentials[n - 1]` is `d_n`.
    differentials: Vec<LinearMap>,
    /// The complex continues above `top`, so `H(top)` is only an upper bound.
    truncated: bool,
}

impl ChainComplex {
    /// Checks shapes and `d∘d = 0`.
    pub fn new(
        field: FieldSpec,
        spaces: Vec<BasedSpace>,
        differentials: Vec<LinearMap>,
        truncated: bool,
    ) -> Result<Self, HomologyError> {
        if spaces.is_empty() {
            return Err(HomologyError::Empty);
        }
        if differentials.len() + 1 != spaces.len() {
            return Err(LinAlgError::Shape(format!("{} spaces but {} differentials", spaces.len(), differentials.len())).into());
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.ncols() != spaces[k + 1].dim() || d.nrows() != spaces[k].dim() {
                return Err(LinAlgError::Shape(format!("d_{} is {}x{}", k + 1, d.nrows(), d.ncols())).into());
            }
        }
        for n in 2..spaces.len() {
            let dd = differentials[n - 2].compose(&differentials[n - 1])?;
            let zero = LinearMap::zero(dd.domain().clone(), dd.codomain().clone(), field);
            if let Outcome::Fail(witness) = compare_maps("d∘d = 0", Indices::new(&[("n", n as i64)]), vec![], &dd, &zero) {
                return Err(HomologyError::NotAComplex { degree: n as u32, witness });
            }
        }
        Ok(ChainComplex { field, spaces, differentials, truncated })
    }

    /// The complex of a cooperad: every arity of its truncation, with the
    /// given differential. The top degree is provisional.
    pub fn from_cooperad(c: &TruncatedCooperad, differential: &Family) -> Result<Self, HomologyError> {
        let spaces: Vec<BasedSpace> = c.spaces().to_vec();
        let mut diffs = Vec::with_capacity(spaces.len().saturating_sub(1));
        for n in 1..spaces.len() as u32 {
            let m = differential.get(n).ok_or(LinAlgError::ArityUnavailable(n))?;
            diffs.push(m.single(c, &[n - 1]));
        }
        ChainComplex::new(c.field(), spaces, diffs, true)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn top(&self) -> u32 {
        self.spaces.len() as u32 - 1
    }

    pub fn spaces(&self) -> &[BasedSpace] {
        &self.spaces
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// `d_n`, or `None` for `n = 0` and above the top.
    pub fn d(&self, n: u32) -> Option<&LinearMap> {
        n.checked_sub(1).and_then(|k| self.differentials.get(k as usize))
    }

    /// The differentials as a leg operator; `d_0` is the zero map.
    pub fn differential_op(&self) -> crate::exactlinalg::MapFamily {
        let mut maps = std::collections::BTreeMap::new();
        maps.insert(0, (crate::exactlinalg::shape(&[0]), LinearMap::zero(self.spaces[0].clone(), self.spaces[0].clone(), self.field)));
        for (k, d) in self.differentials.iter().enumerate() {
            maps.insert(k as u32 + 1, (crate::exactlinalg::shape(&[k as u32]), d.clone()));
        }
        crate::exactlinalg::MapFamily { maps }
    }
}

/// `H(n)` with inclusion of cycle representatives, projection and a
/// contracting homotopy, so that `i∘p = id - d∘h - h∘d`.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub field: FieldSpec,
    pub homology: Vec<BasedSpace>,
    /// `i_n : H(n) → C(n)`.
    pub inclusion: Vec<LinearMap>,
    /// `p_n : C(n) → H(n)`.
    pub projection: Vec<LinearMap>,
    /// `h_n : C(n) → C(n+1)` for `n < top`.
    pub homotopy: Vec<LinearMap>,
    /// Degree whose classes may still be killed by a missing differential.
    pub provisional: Option<u32>,
}

impl Retraction {
    pub fn top(&self) -> u32 {
        self.homology.len() as u32 - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.homology.iter().map(BasedSpace::dim).collect()
    }

    /// Dimensions of the degrees that are not provisional.
    pub fn exact_dims(&self) -> Vec<usize> {
        let mut dims = self.dims();
        if self.provisional.is_some() {
            dims.pop();
        }
        dims
    }
}

#[derive(Clone, Copy)]
enum Role {
    Boundary(usize),
    Class(usize),
    Complement,
    Dropped,
}

/// Basis of `H(n)` as the echelon complement of the boundaries inside the
/// cycles, in a fixed pivot order.
pub fn compute_homology(cx: &ChainComplex) -> Result<Retraction, HomologyError> {
    let field = cx.field;
    let top = cx.top();
    let decomps: Vec<_> = (1..=top).into_par_iter().map(|n| rank_decomposition(cx.d(n).expect("in range"))).collect();
    let rd = |n: u32| -> Option<&crate::exactlinalg::RankDecomposition> { n.checked_sub(1).and_then(|k| decomps.get(k as usize)) };

    // Preimages of boundaries come from the pivot columns of d_{n+1}.
    let lift = |n: u32| -> Option<(Echelon, Vec<usize>)> {
        let decomp = rd(n + 1)?;
        let d = cx.d(n + 1)?;
        let mut ech = Echelon::new(field);
        for &c in &decomp.pivot_columns {
            ech.insert(d.column(c).clone());
        }
        Some((ech, decomp.pivot_columns.clone()))
    };

    let per_degree: Vec<(BasedSpace, LinearMap, LinearMap, Option<LinearMap>)> = (0..=top)
        .into_par_iter()
        .map(|n| {
            let space = &cx.spaces[n as usize];
            let dim = space.dim();
            let cycles: Vec<SparseVec> = match rd(n) {
                Some(decomp) => decomp.kernel_basis.clone(),
                None => (0..dim).map(|j| SparseVec::unit(j, field)).collect(),
            };
            let complement: Vec<usize> = rd(n).map(|d| d.pivot_columns.clone()).unwrap_or_default();
            let boundaries: Vec<SparseVec> = if n < top { rd(n + 1).expect("in range").image_basis.clone() } else { Vec::new() };

            let mut ech = Echelon::new(field);
            let mut roles = Vec::with_capacity(dim);
            for (k, b) in boundaries.iter().enumerate() {
                ech.insert(b.clone());
                roles.push(Role::Boundary(k));
            }
            let mut reps = Vec::new();
            for z in cycles {
                let z = reduce_against(z, &boundaries);
                match ech.insert(z.clone()) {
                    Insertion::Independent(_) => {
                        roles.push(Role::Class(reps.len()));
                        reps.push(z);
                    }
                    Insertion::Dependent(_) => roles.push(Role::Dropped),
                }
            }
            for &c in &complement {
                ech.insert(SparseVec::unit(c, field));
                roles.push(Role::Complement);
            }
            debug_assert_eq!(ech.rank(), dim, "adapted basis of C({n})");

            let labels: Vec<String> = (0..reps.len()).map(|k| format!("h{n}_{k}")).collect();
            let h_space = BasedSpace::new(labels).expect("distinct labels");
            let inclusion = LinearMap::from_columns(h_space.clone(), space.clone(), field, reps.clone()).expect("shapes");

            let preimages: Vec<SparseVec> = match (n < top).then(|| lift(n)).flatten() {
                Some((lift_ech, pivots)) => boundaries
                    .iter()
                    .map(|b| {
                        let pre = lift_ech.coordinates(b).expect("boundary has a preimage");
                        SparseVec::from_pairs(pre.entries().iter().map(|(t, c)| (pivots[*t], c.clone())))
                    })
                    .collect(),
                None => Vec::new(),
            };
            let mut p_cols = Vec::with_capacity(dim);
            let mut h_cols = Vec::with_capacity(dim);
            for j in 0..dim {
                let coords = ech.coordinates(&SparseVec::unit(j, field)).expect("adapted basis spans");
                let mut p_entries = Vec::new();
                let mut h = SparseVec::new();
                for (g, coeff) in coords.entries() {
                    match roles[*g] {
                        Role::Class(k) => p_entries.push((k, coeff.clone())),
                        Role::Boundary(k) => h = h.add_scaled(&preimages[k], coeff),
                        Role::Complement | Role::Dropped => {}
                    }
                }
                p_cols.push(SparseVec::from_pairs(p_entries));
                h_cols.push(h);
            }
            let projection = LinearMap::from_columns(space.clone(), h_space.clone(), field, p_cols).expect("shapes");
            let homotopy = (n < top).then(|| {
                LinearMap::from_columns(space.clone(), cx.spaces[n as usize + 1].clone(), field, h_cols).expect("shapes")
            });
            (h_space, inclusion, projection, homotopy)
        })
        .collect();

    let mut r = Retraction {
        field,
        homology: Vec::new(),
        inclusion: Vec::new(),
        projection: Vec::new(),
        homotopy: Vec::new(),
        provisional: cx.truncated.then_some(top),
    };
    for (h, i, p, hom) in per_degree {
        r.homology.push(h);
        r.inclusion.push(i);
        r.projection.push(p);
        if let Some(hom) = hom {
            r.homotopy.push(hom);
        }
    }
    Ok(r)
}

/// Clears the entries of `z` at the leading rows of a reduced echelon basis.
fn reduce_against(mut z: SparseVec, basis: &[SparseVec]) -> SparseVec {
    for b in basis {
        let (row, lead) = b.leading().expect("nonzero");
        if let Some(c) = z.get(row).cloned() {
            z = z.add_scaled(b, &-&(&c / lead));
        }
    }
    z
}

pub const RETRACTION_PI: &str = "retraction: p∘i = id";
pub const RETRACTION_DI: &str = "retraction: d∘i = 0";
pub const RETRACTION_PD: &str = "retraction: p∘d = 0";
pub const RETRACTION_HOMOTOPY: &str = "retraction: i∘p = id - d∘h - h∘d";

/// The side conditions of a retraction, matrix-exactly in every degree.
pub fn verify_retraction(cx: &ChainComplex, r: &Retraction) -> Report {
    let field = cx.field;
    let mut report = Report::new("retraction");
    let mut pi = CheckResult::new(RETRACTION_PI);
    let mut di = CheckResult::new(RETRACTION_DI);
    let mut pd = CheckResult::new(RETRACTION_PD);
    let mut hom = CheckResult::new(RETRACTION_HOMOTOPY);
    for n in 0..=cx.top() {
        let k = n as usize;
        let idx = Indices::new(&[("n", n as i64)]);
        let (i, p) = (&r.inclusion[k], &r.projection[k]);
        let id_h = LinearMap::identity(r.homology[k].clone(), field);
        pi.record(compare_maps(RETRACTION_PI, idx.clone(), vec![], &p.compose(i).expect("shapes"), &id_h));
        if let Some(d) = cx.d(n) {
            let di_map = d.compose(i).expect("shapes");
            di.record(compare_maps(RETRACTION_DI, idx.clone(), vec![], &di_map, &LinearMap::zero(di_map.domain().clone(), di_map.codomain().clone(), field)));
        }
        if let Some(d) = cx.d(n + 1) {
            let pd_map = p.compose(d).expect("shapes");
            pd.record(compare_maps(RETRACTION_PD, idx.clone(), vec![], &pd_map, &LinearMap::zero(pd_map.domain().clone(), pd_map.codomain().clone(), field)));
        }
        let Some(h_n) = r.homotopy.get(k) else {
            hom.record(Outcome::Skip);
            continue;
        };
        let space = &cx.spaces[k];
        let mut rhs = LinearMap::identity(space.clone(), field).sub(&cx.d(n + 1).expect("below top").compose(h_n).expect("shapes")).expect("shapes");
        if let (Some(d), Some(h_prev)) = (cx.d(n), k.checked_sub(1).and_then(|j| r.homotopy.get(j))) {
            rhs = rhs.sub(&h_prev.compose(d).expect("shapes")).expect("shapes");
        }
        hom.record(compare_maps(RETRACTION_HOMOTOPY, idx, vec![], &i.compose(p).expect("shapes"), &rhs));
    }
    for c in [pi, di, pd, hom] {
        report.push(c);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn zero_differential_keeps_everything() {
        let spaces = vec![BasedSpace::standard(2), BasedSpace::standard(3)];
        let d = LinearMap::zero(spaces[1].clone(), spaces[0].clone(), q());
        let cx = ChainComplex::new(q(), spaces, vec![d], false).unwrap();
        let r = compute_homology(&cx).unwrap();
        assert_eq!(r.dims(), vec![2, 3]);
        assert!(r.homotopy[0].is_zero());
        assert!(verify_retraction(&cx, &r).passed());
    }

    #[test]
    fn interval_is_contractible_to_a_point() {
        // C(1) = <e>, C(0) = <a, b>, d e = b - a.
        let d = LinearMap::from_i64_rows(q(), &[vec![-1], vec![1]]);
        let cx = ChainComplex::new(q(), vec![BasedSpace::standard(2), BasedSpace::standard(1)], vec![d], false).unwrap();
        let r = compute_homology(&cx).unwrap();
        assert_eq!(r.dims(), vec![1, 0]);
        let report = verify_retraction(&cx, &r);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn non_complex_is_rejected() {
        let one = LinearMap::from_i64_rows(q(), &[vec![1]]);
        let s = || BasedSpace::standard(1);
        let err = ChainComplex::new(q(), vec![s(), s(), s()], vec![one.clone(), one], false).unwrap_err();
        assert!(matches!(err, HomologyError::NotAComplex { degree: 2, .. }));
    }

    #[test]
    fn truncated_top_is_provisional() {
        let spaces = vec![BasedSpace::standard(1), BasedSpace::standard(1)];
        let d = LinearMap::zero(spaces[1].clone(), spaces[0].clone(), q());
        let cx = ChainComplex::new(q(), spaces, vec![d], true).unwrap();
        let r = compute_homology(&cx).unwrap();
        assert_eq!(r.provisional, Some(1));
        assert_eq!(r.exact_dims(), vec![1]);
    }

    #[test]
    fn representatives_avoid_boundary_pivots() {
        // C(1) = <e>, C(0) = <a, b>, d e = a: H(0) is spanned by b.
        let d = LinearMap::from_i64_rows(q(), &[vec![1], vec![0]]);
        let cx = ChainComplex::new(q(), vec![BasedSpace::standard(2), BasedSpace::standard(1)], vec![d], false).unwrap();
        let r = compute_homology(&cx).unwrap();
        assert_eq!(r.inclusion[0].column(0), &SparseVec::unit(1, q()));
    }
}
