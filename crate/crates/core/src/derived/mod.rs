//! Operators derived from a cooperad with comultiplication: faces,
//! degeneracies, the differential, cobrace, cobracket, cup coproduct and
//! the coLeibniz homotopy `F`.

mod verify;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cooperad::{ComultiplicationTriple, CooperadError, TruncatedCooperad};
use crate::exactlinalg::{shape, BasedSpace, FieldSpec, FlipKind, GradedVec, LegOp, LinearMap, Shape, SparseVec};

pub use verify::{verify_chain_identities, ChainIdentity};

/// A map out of one arity into a direct sum of tensor products, one matrix
/// per output shape. Absent shapes are zero.
#[derive(Clone, Debug)]
pub struct SummedMap {
    pub source: u32,
    pub components: BTreeMap<Shape, LinearMap>,
}

impl SummedMap {
    pub fn component(&self, legs: &[u32]) -> Option<&LinearMap> {
        self.components.get(legs)
    }

    /// The image of `x ∈ C(source)`.
    pub fn apply(&self, field: FieldSpec, x: &SparseVec) -> GradedVec {
        self.components.iter().fold(GradedVec::zero(field), |acc, (s, m)| {
            acc.add(&GradedVec::from_part(field, s.clone(), m.apply(x)))
        })
    }

    /// The single component into `target`, or the zero map.
    pub fn single(&self, c: &TruncatedCooperad, target: &[u32]) -> LinearMap {
        self.components.get(target).cloned().unwrap_or_else(|| {
            LinearMap::zero(c.spaces()[self.source as usize].clone(), shape_space(c, target), c.field())
        })
    }

    pub fn matrix_eq(&self, other: &SummedMap) -> bool {
        let nonzero = |m: &SummedMap| -> Vec<(Shape, LinearMap)> {
            m.components.iter().filter(|(_, l)| !l.is_zero()).map(|(s, l)| (s.clone(), l.clone())).collect()
        };
        self.source == other.source && nonzero(self) == nonzero(other)
    }
}

/// Summed maps for every arity where the operator is computable.
#[derive(Clone, Debug, Default)]
pub struct Family {
    pub maps: BTreeMap<u32, SummedMap>,
}

impl Family {
    pub fn get(&self, arity: u32) -> Option<&SummedMap> {
        self.maps.get(&arity)
    }

    pub fn arities(&self) -> impl Iterator<Item = u32> + '_ {
        self.maps.keys().copied()
    }
}

impl LegOp for Family {
    fn components(&self, arity: u32) -> Option<Vec<(&[u32], &LinearMap)>> {
        self.maps
            .get(&arity)
            .map(|m| m.components.iter().map(|(s, l)| (s.as_slice(), l)).collect())
    }
}

/// The based space of a tensor shape; the empty shape is the ground field.
pub fn shape_space(c: &TruncatedCooperad, legs: &[u32]) -> BasedSpace {
    match legs {
        [] => BasedSpace::scalars(),
        [a] => c.spaces()[*a as usize].clone(),
        _ => BasedSpace::tensor(legs.iter().map(|&a| c.spaces()[a as usize].clone()).collect()),
    }
}

/// Evaluates `f` on every basis element of `C(n)` and collects matrices.
pub fn materialize<F>(c: &TruncatedCooperad, n: u32, f: F) -> Result<SummedMap, CooperadError>
where
    F: Fn(&GradedVec) -> Result<GradedVec, CooperadError> + Sync,
{
    let field = c.field();
    let dim = c.space(n)?.dim();
    let images: Vec<GradedVec> = (0..dim)
        .into_par_iter()
        .map(|b| f(&GradedVec::basis(field, n, b)))
        .collect::<Result<_, _>>()?;
    let mut cols: BTreeMap<Shape, Vec<SparseVec>> = BTreeMap::new();
    for (b, img) in images.into_iter().enumerate() {
        for (s, v) in img.parts() {
            cols.entry(s.clone()).or_insert_with(|| vec![SparseVec::new(); dim])[b] = v.clone();
        }
    }
    let components = cols
        .into_iter()
        .map(|(s, cols)| {
            let m = LinearMap::from_columns(c.spaces()[n as usize].clone(), shape_space(c, &s), field, cols)?;
            Ok((s, m))
        })
        .collect::<Result<_, CooperadError>>()?;
    Ok(SummedMap { source: n, components })
}

fn out_of_range(what: &'static str, n: u32, i: u32) -> CooperadError {
    CooperadError::IndexOutOfRange { p: n, q: 0, i, bound: what }
}

/// Leg-wise helpers bound to one cooperad.
#[derive(Clone, Copy)]
pub struct Legs<'a> {
    pub c: &'a TruncatedCooperad,
}

impl Legs<'_> {
    pub fn delta(&self, v: &GradedVec, pos: usize, p: u32, q: u32, i: u32) -> Result<GradedVec, CooperadError> {
        self.c.apply_delta(v, pos, p, q, i)
    }

    pub fn functional(&self, v: &GradedVec, pos: usize, arity: u32, f: &LinearMap) -> Result<GradedVec, CooperadError> {
        self.c.apply_functional(v, pos, arity, f)
    }

    pub fn op(&self, v: &GradedVec, pos: usize, op: &dyn LegOp) -> Result<GradedVec, CooperadError> {
        Ok(v.apply_leg(pos, op, self.c.spaces())?)
    }

    pub fn flip(&self, v: &GradedVec, pos: usize, kind: FlipKind) -> Result<GradedVec, CooperadError> {
        Ok(v.flip(pos, kind, self.c.spaces())?)
    }
}

/// `d_i : C(n) → C(n-1)`.
pub fn face_vec(c: &TruncatedCooperad, t: &ComultiplicationTriple, x: &GradedVec, n: u32, i: u32) -> Result<GradedVec, CooperadError> {
    let l = Legs { c };
    if n == 0 || i > n {
        return Err(out_of_range("0 ≤ i ≤ n, n ≥ 1", n, i));
    }
    if i == 0 || i == n {
        let y = l.delta(x, 0, 2, n - 1, if i == 0 { 2 } else { 1 })?;
        l.functional(&y, 0, 2, &t.mu)
    } else {
        let y = l.delta(x, 0, n - 1, 2, i)?;
        l.functional(&y, 1, 2, &t.mu)
    }
}

pub fn face(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32, i: u32) -> Result<LinearMap, CooperadError> {
    if n == 0 || i > n {
        return Err(out_of_range("0 ≤ i ≤ n, n ≥ 1", n, i));
    }
    Ok(materialize(c, n, |x| face_vec(c, t, x, n, i))?.single(c, &[n - 1]))
}

/// `s_i : C(n) → C(n+1)`.
pub fn degeneracy(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32, i: u32) -> Result<LinearMap, CooperadError> {
    if i > n {
        return Err(out_of_range("0 ≤ i ≤ n", n, i));
    }
    if n + 1 > c.truncation() {
        return Err(CooperadError::BeyondTruncation { arity: n + 1, truncation: c.truncation() });
    }
    let l = Legs { c };
    let m = materialize(c, n, |x| {
        let y = l.delta(x, 0, n + 1, 0, i + 1)?;
        l.functional(&y, 1, 0, &t.unit)
    })?;
    Ok(m.single(c, &[n + 1]))
}

fn zero_differential(c: &TruncatedCooperad) -> SummedMap {
    let _ = c;
    SummedMap { source: 0, components: BTreeMap::new() }
}

/// `d = Σ (-1)^i d_i` on `C(n)`; zero on `C(0)`.
pub fn differential(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32) -> Result<SummedMap, CooperadError> {
    if n == 0 {
        return Ok(zero_differential(c));
    }
    materialize(c, n, |x| {
        (0..=n).try_fold(GradedVec::zero(c.field()), |acc, i| Ok(acc.add(&face_vec(c, t, x, n, i)?.signed(i as i64))))
    })
}

/// `Σ_i (-1)^{(q-1)(p-i)} Δ_{p,q,i}(x)` for fixed `p`, with `q = n + 1 - p`.
pub fn cobrace_part(c: &TruncatedCooperad, x: &GradedVec, n: u32, p: u32) -> Result<GradedVec, CooperadError> {
    let l = Legs { c };
    if p == 0 || p > n + 1 {
        return Ok(GradedVec::zero(c.field()));
    }
    let q = n + 1 - p;
    (1..=p).try_fold(GradedVec::zero(c.field()), |acc, i| {
        let sign = (q as i64 - 1) * (p as i64 - i as i64);
        Ok(acc.add(&l.delta(x, 0, p, q, i)?.signed(sign)))
    })
}

/// The cobrace on one basis vector of `C(n)`.
pub fn cobrace_vec(c: &TruncatedCooperad, x: &GradedVec, n: u32) -> Result<GradedVec, CooperadError> {
    (1..=n + 1).try_fold(GradedVec::zero(c.field()), |acc, p| Ok(acc.add(&cobrace_part(c, x, n, p)?)))
}

/// `Σ_p (-1)^{p-1} [-]_p` on one basis vector of `C(n)`.
pub fn twisted_cobrace_vec(c: &TruncatedCooperad, x: &GradedVec, n: u32) -> Result<GradedVec, CooperadError> {
    (1..=n + 1).try_fold(GradedVec::zero(c.field()), |acc, p| Ok(acc.add(&cobrace_part(c, x, n, p)?.signed(p as i64 - 1))))
}

/// Component `(p, n+1-p)` of `{-} = (id - ρ)∘[-]`.
pub fn cobracket_part(c: &TruncatedCooperad, x: &GradedVec, n: u32, p: u32) -> Result<GradedVec, CooperadError> {
    let q = n + 1 - p;
    let own = cobrace_part(c, x, n, p)?;
    let swapped = Legs { c }.flip(&cobrace_part(c, x, n, q)?, 0, FlipKind::Rho)?;
    Ok(own.sub(&swapped))
}

pub fn cobrace(c: &TruncatedCooperad, n: u32) -> Result<SummedMap, CooperadError> {
    materialize(c, n, |x| cobrace_vec(c, x, n))
}

pub fn cobracket(c: &TruncatedCooperad, n: u32) -> Result<SummedMap, CooperadError> {
    let l = Legs { c };
    materialize(c, n, |x| {
        let b = cobrace_vec(c, x, n)?;
        Ok(b.sub(&l.flip(&b, 0, FlipKind::Rho)?))
    })
}

/// `d` as `μ̄ᶜ∘{-}`: only the component with a first leg of arity 2 survives.
pub fn differential_via_cobracket(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32) -> Result<SummedMap, CooperadError> {
    if n == 0 {
        return Ok(zero_differential(c));
    }
    let l = Legs { c };
    materialize(c, n, |x| {
        let part = cobracket_part(c, x, n, 2)?;
        l.functional(&part, 0, 2, &t.mu)
    })
}

/// `d` by the explicit three-term formula.
pub fn differential_explicit(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32) -> Result<SummedMap, CooperadError> {
    if n == 0 {
        return Ok(zero_differential(c));
    }
    let l = Legs { c };
    materialize(c, n, |x| {
        let ends = l.delta(x, 0, 2, n - 1, 2)?.add(&l.delta(x, 0, 2, n - 1, 1)?.signed(n as i64));
        let mut acc = l.functional(&ends, 0, 2, &t.mu)?;
        for i in 1..n {
            let y = l.delta(x, 0, n - 1, 2, i)?;
            acc = acc.add(&l.functional(&y, 1, 2, &t.mu)?.signed(i as i64));
        }
        Ok(acc)
    })
}

/// `∪ᶜ = Σ_j (μᶜ⊗id⊗id)(Δ_{2,j-1,1}⊗id)Δ_{j,n+1-j,j}` on one vector of `C(n)`.
pub fn cup_vec(c: &TruncatedCooperad, t: &ComultiplicationTriple, x: &GradedVec, n: u32) -> Result<GradedVec, CooperadError> {
    let l = Legs { c };
    (1..=n + 1).try_fold(GradedVec::zero(c.field()), |acc, j| {
        let y = l.delta(x, 0, j, n + 1 - j, j)?;
        let y = l.delta(&y, 0, 2, j - 1, 1)?;
        Ok(acc.add(&l.functional(&y, 0, 2, &t.mu)?))
    })
}

pub fn cup_coproduct(c: &TruncatedCooperad, t: &ComultiplicationTriple, n: u32) -> Result<SummedMap, CooperadError> {
    materialize(c, n, |x| cup_vec(c, t, x, n))
}

/// Which closed form of `F` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomotopyForm {
    /// Sum over `p+q+r = n+2`, `i ≤ p`, `q+i ≤ j ≤ p+q-1` with sign
    /// `(p+q)j + (p+r-1)i + n`.
    Statement,
    /// Reindexed sum over `1 ≤ p ≤ r ≤ n+1`, `1 ≤ j ≤ i ≤ p` with sign
    /// `(n-r)(j-1) + (r-p-1)(i-1) + p`.
    Reindexed,
}

/// One term of `F`: `sign · (Δ_{p,q,i}⊗id)∘Δ_{p+q-1,r,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomotopyTerm {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub i: u32,
    pub j: u32,
    pub sign: i64,
}

/// Terms of `F` on `C(n)`, in the outer/inner indexing of the statement form.
pub fn homotopy_terms(n: u32, form: HomotopyForm) -> Vec<HomotopyTerm> {
    let mut out = Vec::new();
    let n = n as i64;
    match form {
        HomotopyForm::Statement => {
            for p in 1..=n + 2 {
                for q in 0..=n + 2 - p {
                    let r = n + 2 - p - q;
                    for i in 1..=p {
                        for j in q + i..=p + q - 1 {
                            let sign = (p + q) * j + (p + r - 1) * i + n;
                            out.push(term(p, q, r, i, j, sign));
                        }
                    }
                }
            }
        }
        HomotopyForm::Reindexed => {
            for p in 1..=n + 1 {
                for r in p..=n + 1 {
                    for i in 1..=p {
                        for j in 1..=i {
                            let sign = (n - r) * (j - 1) + (r - p - 1) * (i - 1) + p;
                            out.push(term(p + 1, r - p, n - r + 1, p - i + 1, r - j + 1, sign));
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn term(p: i64, q: i64, r: i64, i: i64, j: i64, sign: i64) -> HomotopyTerm {
    HomotopyTerm { p: p as u32, q: q as u32, r: r as u32, i: i as u32, j: j as u32, sign: sign.rem_euclid(2) }
}

pub fn homotopy_vec(c: &TruncatedCooperad, x: &GradedVec, n: u32, form: HomotopyForm) -> Result<GradedVec, CooperadError> {
    let l = Legs { c };
    homotopy_terms(n, form).into_iter().try_fold(GradedVec::zero(c.field()), |acc, t| {
        let y = l.delta(x, 0, t.p + t.q - 1, t.r, t.j)?;
        let y = l.delta(&y, 0, t.p, t.q, t.i)?;
        Ok(acc.add(&y.signed(t.sign)))
    })
}

pub fn homotopy(c: &TruncatedCooperad, n: u32, form: HomotopyForm) -> Result<SummedMap, CooperadError> {
    materialize(c, n, |x| homotopy_vec(c, x, n, form))
}

/// `ē ᶜ`: `eᶜ` on `C(0)` and zero in positive arity.
pub fn counit_bar(c: &TruncatedCooperad, t: &ComultiplicationTriple) -> Family {
    let maps = (0..=c.truncation())
        .map(|n| {
            let mut components = BTreeMap::new();
            if n == 0 {
                components.insert(shape(&[]), t.unit.clone());
            }
            (n, SummedMap { source: n, components })
        })
        .collect();
    Family { maps }
}

/// All derived operators of a cooperad with comultiplication, in every arity
/// where they are computable within the truncation.
#[derive(Clone, Debug)]
pub struct ChainOperators {
    pub truncation: u32,
    pub faces: BTreeMap<(u32, u32), LinearMap>,
    pub degeneracies: BTreeMap<(u32, u32), LinearMap>,
    pub differential: Family,
    pub cobrace: Family,
    pub cobracket: Family,
    pub cobrace_coop: Family,
    pub cup: Family,
    /// `Σ_p (-1)^{p-1} [-]_p`, the cobrace with its `(p, q)` components
    /// twisted by the parity of the first leg. This is the map that actually
    /// witnesses graded cocommutativity of the cup coproduct up to homotopy.
    pub cocommutator_homotopy: Family,
    /// `F` in the reindexed form; the form that satisfies the homotopy
    /// coLeibniz identity.
    pub homotopy: Family,
    /// `F` with the signs of the triple-sum form, kept for comparison.
    pub homotopy_statement: Family,
    pub counit_bar: Family,
}

/// Evaluates `f` in every arity of the truncation, dropping the arities
/// where it is not computable.
pub fn family(c: &TruncatedCooperad, f: impl Fn(u32) -> Result<SummedMap, CooperadError> + Sync) -> Result<Family, CooperadError> {
    let results: Vec<(u32, Result<SummedMap, CooperadError>)> =
        (0..=c.truncation()).into_par_iter().map(|n| (n, f(n))).collect();
    let mut maps = BTreeMap::new();
    for (n, r) in results {
        match r {
            Ok(m) => {
                maps.insert(n, m);
            }
            Err(e) if e.is_truncation() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(Family { maps })
}

impl ChainOperators {
    pub fn build(c: &TruncatedCooperad, t: &ComultiplicationTriple) -> Result<Self, CooperadError> {
        let n_max = c.truncation();
        let face_keys: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (0..=n).map(move |i| (n, i))).collect();
        let faces = face_keys
            .par_iter()
            .map(|&(n, i)| Ok(((n, i), face(c, t, n, i)?)))
            .collect::<Result<_, CooperadError>>()?;
        let degen_keys: Vec<(u32, u32)> = (0..n_max).flat_map(|n| (0..=n).map(move |i| (n, i))).collect();
        let degeneracies = degen_keys
            .par_iter()
            .map(|&(n, i)| Ok(((n, i), degeneracy(c, t, n, i)?)))
            .collect::<Result<_, CooperadError>>()?;
        let cobrace_family = family(c, |n| cobrace(c, n))?;
        let l = Legs { c };
        let cobrace_coop = family(c, |n| materialize(c, n, |x| l.flip(&cobrace_vec(c, x, n)?, 0, FlipKind::Rho)))?;
        Ok(ChainOperators {
            truncation: n_max,
            faces,
            degeneracies,
            differential: family(c, |n| differential(c, t, n))?,
            cobracket: family(c, |n| cobracket(c, n))?,
            cobrace: cobrace_family,
            cobrace_coop,
            cup: family(c, |n| cup_coproduct(c, t, n))?,
            cocommutator_homotopy: family(c, |n| materialize(c, n, |x| twisted_cobrace_vec(c, x, n)))?,
            homotopy: family(c, |n| homotopy(c, n, HomotopyForm::Reindexed))?,
            homotopy_statement: family(c, |n| homotopy(c, n, HomotopyForm::Statement))?,
            counit_bar: counit_bar(c, t),
        })
    }

    /// `d : C(n) → C(n-1)` as a matrix (zero on `C(0)`).
    pub fn d(&self, c: &TruncatedCooperad, n: u32) -> LinearMap {
        let target = n.saturating_sub(1);
        let m = &self.differential.maps[&n];
        if n == 0 {
            return LinearMap::zero(c.spaces()[0].clone(), BasedSpace::scalars(), c.field());
        }
        m.single(c, &[target])
    }
}
