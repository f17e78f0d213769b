//! Algebra presentations and the two cooperad families built from them.

pub mod algebra;
mod bialgebra;
mod frobenius;
mod presentation;

use thiserror::Error;

use crate::cooperad::{
    compare_maps, CheckResult, ComultiplicationTriple, CooperadError, Indices, Report, TruncatedCooperad,
};
use crate::exactlinalg::{tensor_map, FieldSpec, LinAlgError, LinearMap};

pub use algebra::Algebra;
pub use bialgebra::{build_bialgebra_cooperad, validate_bialgebra};
pub use frobenius::{
    build_frobenius_cooperad, validate_frobenius, verify_hat_duality, FrobeniusData, IDENTITY_HAT,
    IDENTITY_HAT_UNIT,
};
pub use presentation::{
    BialgebraPresentation, Coeff, FrobeniusPresentation, Presentation, PresentationKind, RawPresentation,
};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed presentation: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("not Frobenius for this functional: singular Gram matrix")]
    NotFrobenius,
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("presentation fails validation:\n{0}")]
    Invalid(Report),
    #[error(transparent)]
    Cooperad(#[from] CooperadError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Associativity and two-sided unitality of the multiplication.
pub fn associativity_checks(alg: &Algebra, suite: &str) -> Report {
    let field = alg.field;
    let id = LinearMap::identity(alg.space(), field);
    let mu = alg.mult_map();
    let eta = alg.unit_map();
    let c = |x: &LinearMap, y: &LinearMap| x.compose(y).expect("shapes agree");
    let mut report = Report::new(suite);
    let mut push = |name: &str, lhs: LinearMap, rhs: &LinearMap| {
        let mut check = CheckResult::new(name);
        // id ⊗ k and k ⊗ id differ from id only in labels
        let lhs = lhs.with_spaces(rhs.domain().clone(), rhs.codomain().clone()).expect("same shape");
        check.record(compare_maps(name, Indices::default(), vec![], &lhs, rhs));
        report.push(check);
    };
    push("associativity", c(&mu, &tensor_map(&mu, &id)), &c(&mu, &tensor_map(&id, &mu)));
    push("left unitality", c(&mu, &tensor_map(&eta, &id)), &id);
    push("right unitality", c(&mu, &tensor_map(&id, &eta)), &id);
    report
}

/// A validated presentation together with its derived data.
#[derive(Clone, Debug)]
pub enum Validated {
    Bialgebra(BialgebraPresentation),
    Frobenius(FrobeniusPresentation, FrobeniusData),
}

impl Validated {
    pub fn name(&self) -> &str {
        match self {
            Validated::Bialgebra(p) => &p.name,
            Validated::Frobenius(p, _) => &p.name,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        match self {
            Validated::Bialgebra(p) => &p.algebra,
            Validated::Frobenius(p, _) => &p.algebra,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra().field
    }
}

/// Runs the validator; a failing report becomes [`InstanceError::Invalid`].
pub fn validate(p: Presentation) -> Result<(Validated, Report), InstanceError> {
    match p {
        Presentation::Bialgebra(b) => {
            let report = validate_bialgebra(&b)?;
            if !report.passed() {
                return Err(InstanceError::Invalid(report));
            }
            Ok((Validated::Bialgebra(b), report))
        }
        Presentation::Frobenius(f) => {
            let (report, data) = validate_frobenius(&f)?;
            if !report.passed() {
                return Err(InstanceError::Invalid(report));
            }
            Ok((Validated::Frobenius(f, data), report))
        }
    }
}

/// Builds the cooperad of either family at truncation `n`.
pub fn build(v: &Validated, n: u32) -> Result<(TruncatedCooperad, ComultiplicationTriple), InstanceError> {
    if n < 2 {
        return Err(InstanceError::Shape(format!("truncation {n} is below 2")));
    }
    match v {
        Validated::Bialgebra(p) => build_bialgebra_cooperad(p, n),
        Validated::Frobenius(p, data) => build_frobenius_cooperad(p, data, n),
    }
}

pub const BUILTIN_NAMES: [&str; 7] =
    ["Q_Z2", "F2_Z2", "Q_Z3", "sweedler4", "dual_numbers", "mat2", "group_frobenius_Z2"];

#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub default_field: FieldSpec,
    pub raw: RawPresentation,
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn basis_vec(dim: usize, k: usize) -> Vec<Coeff> {
    (0..dim).map(|j| Coeff::Int((j == k) as i64)).collect()
}

/// Multiplication table from a group's Cayley table, `cayley[i][j]` the index of `g_i g_j`.
fn cayley_mult(cayley: &[Vec<usize>]) -> Vec<Vec<Vec<Coeff>>> {
    let n = cayley.len();
    cayley.iter().map(|row| row.iter().map(|&k| basis_vec(n, k)).collect()).collect()
}

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Group algebra with group-like comultiplication.
fn group_bialgebra(name: &str, basis: Vec<String>, cayley: &[Vec<usize>]) -> RawPresentation {
    let n = basis.len();
    let comult = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| Coeff::Int((i == j && j == k) as i64)).collect()).collect())
        .collect();
    RawPresentation {
        kind: PresentationKind::Bialgebra,
        name: Some(name.into()),
        dim: n,
        basis,
        mult: cayley_mult(cayley),
        unit: basis_vec(n, 0),
        comult: Some(comult),
        counit: Some(vec![Coeff::Int(1); n]),
        frobenius_functional: None,
    }
}

fn frobenius(name: &str, basis: Vec<String>, mult: Vec<Vec<Vec<Coeff>>>, unit: Vec<Coeff>, functional: Vec<Coeff>) -> RawPresentation {
    RawPresentation {
        kind: PresentationKind::Frobenius,
        name: Some(name.into()),
        dim: basis.len(),
        basis,
        mult,
        unit,
        comult: None,
        counit: None,
        frobenius_functional: Some(functional),
    }
}

/// Sweedler's four-dimensional Hopf algebra `⟨g, x | g² = 1, x² = 0, xg = −gx⟩`.
fn sweedler() -> RawPresentation {
    // basis order 1, g, x, gx
    let v = |pairs: &[(usize, i64)]| -> Vec<Coeff> {
        let mut out = vec![Coeff::Int(0); 4];
        for &(k, c) in pairs {
            out[k] = Coeff::Int(c);
        }
        out
    };
    let z = || v(&[]);
    let mult = vec![
        vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(2, 1)]), v(&[(3, 1)])],
        vec![v(&[(1, 1)]), v(&[(0, 1)]), v(&[(3, 1)]), v(&[(2, 1)])],
        vec![v(&[(2, 1)]), v(&[(3, -1)]), z(), z()],
        vec![v(&[(3, 1)]), v(&[(2, -1)]), z(), z()],
    ];
    let tensor = |terms: &[(usize, usize)]| -> Vec<Vec<Coeff>> {
        let mut out = vec![vec![Coeff::Int(0); 4]; 4];
        for &(j, k) in terms {
            out[j][k] = Coeff::Int(1);
        }
        out
    };
    let comult = vec![
        tensor(&[(0, 0)]),
        tensor(&[(1, 1)]),
        tensor(&[(2, 0), (1, 2)]),
        tensor(&[(3, 1), (0, 3)]),
    ];
    RawPresentation {
        kind: PresentationKind::Bialgebra,
        name: Some("sweedler4".into()),
        dim: 4,
        basis: labels(&["1", "g", "x", "gx"]),
        mult,
        unit: basis_vec(4, 0),
        comult: Some(comult),
        counit: Some(vec![Coeff::Int(1), Coeff::Int(1), Coeff::Int(0), Coeff::Int(0)]),
        frobenius_functional: None,
    }
}

fn matrices() -> RawPresentation {
    // basis e11, e12, e21, e22 at index 2(r-1) + (c-1)
    let mult = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let (r1, c1, r2, c2) = (a / 2, a % 2, b / 2, b % 2);
                    if c1 == r2 {
                        basis_vec(4, 2 * r1 + c2)
                    } else {
                        vec![Coeff::Int(0); 4]
                    }
                })
                .collect()
        })
        .collect();
    let ones = |ks: &[usize]| (0..4).map(|j| Coeff::Int(ks.contains(&j) as i64)).collect::<Vec<_>>();
    frobenius("mat2", labels(&["e11", "e12", "e21", "e22"]), mult, ones(&[0, 3]), ones(&[0, 3]))
}

/// Looks up a built-in presentation by name.
pub fn builtin(name: &str) -> Result<Builtin, InstanceError> {
    let z2 = cyclic(2);
    let (description, default_field, raw) = match name {
        "Q_Z2" => (
            "group algebra of Z/2 with group-like comultiplication",
            FieldSpec::Rationals,
            group_bialgebra(name, labels(&["1", "g"]), &z2),
        ),
        "F2_Z2" => (
            "group algebra of Z/2 over F2, group-like comultiplication",
            FieldSpec::PrimeField(2),
            group_bialgebra(name, labels(&["1", "g"]), &z2),
        ),
        "Q_Z3" => (
            "group algebra of Z/3 with group-like comultiplication",
            FieldSpec::Rationals,
            group_bialgebra(name, labels(&["1", "g", "g^2"]), &cyclic(3)),
        ),
        "sweedler4" => ("Sweedler's four-dimensional Hopf algebra", FieldSpec::Rationals, sweedler()),
        "dual_numbers" => {
            let mult = vec![
                vec![basis_vec(2, 0), basis_vec(2, 1)],
                vec![basis_vec(2, 1), vec![Coeff::Int(0); 2]],
            ];
            (
                "k[x]/(x²) with ε(a + bx) = b",
                FieldSpec::Rationals,
                frobenius(name, labels(&["1", "x"]), mult, basis_vec(2, 0), basis_vec(2, 1)),
            )
        }
        "mat2" => ("2×2 matrices with the trace functional", FieldSpec::Rationals, matrices()),
        "group_frobenius_Z2" => (
            "group algebra of Z/2 with ε(c₁·1 + c_g·g) = c₁",
            FieldSpec::Rationals,
            frobenius(name, labels(&["1", "g"]), cayley_mult(&z2), basis_vec(2, 0), basis_vec(2, 0)),
        ),
        other => return Err(InstanceError::UnknownBuiltin(other.into())),
    };
    let name = BUILTIN_NAMES.iter().find(|n| **n == name).expect("listed");
    Ok(Builtin { name, description, default_field, raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cooperad::{verify_comultiplication, verify_cooperad_axioms};
    use crate::exactlinalg::SparseVec;

    fn validated(name: &str) -> Validated {
        let b = builtin(name).unwrap();
        validate(b.raw.over(b.default_field).unwrap()).unwrap().0
    }

    #[test]
    fn all_builtins_validate() {
        for name in BUILTIN_NAMES {
            let b = builtin(name).unwrap();
            let (_, report) = validate(b.raw.over(b.default_field).unwrap()).unwrap();
            assert!(report.passed(), "{name}\n{report}");
        }
        assert!(matches!(builtin("nosuch"), Err(InstanceError::UnknownBuiltin(_))));
    }

    #[test]
    fn broken_comultiplication_is_caught() {
        let mut raw = builtin("Q_Z2").unwrap().raw;
        // δ(g) = g ⊗ 1
        raw.comult.as_mut().unwrap()[1] = vec![vec![0.into(), 0.into()], vec![1.into(), 0.into()]];
        let err = validate(raw.over(FieldSpec::Rationals).unwrap()).unwrap_err();
        let InstanceError::Invalid(report) = err else { panic!() };
        assert!(report.witnesses().next().is_some());
    }

    #[test]
    fn zero_functional_is_not_frobenius() {
        let mut raw = builtin("dual_numbers").unwrap().raw;
        raw.frobenius_functional = Some(vec![0.into(), 0.into()]);
        assert!(matches!(validate(raw.over(FieldSpec::Rationals).unwrap()), Err(InstanceError::NotFrobenius)));
    }

    #[test]
    fn dual_numbers_derived_data() {
        let Validated::Frobenius(_, data) = validated("dual_numbers") else { panic!() };
        let q = FieldSpec::Rationals;
        // e^1 = x, e^x = 1
        assert_eq!(data.dual[0], SparseVec::unit(1, q));
        assert_eq!(data.dual[1], SparseVec::unit(0, q));
        assert_eq!(data.nakayama, LinearMap::identity(data.nakayama.domain().clone(), q));
    }

    #[test]
    fn group_like_decomposition() {
        let v = validated("Q_Z2");
        let (c, t) = build(&v, 3).unwrap();
        // Δ(2,1,1)(g⊗g) = (g⊗g) ⊗ (g)
        let x = SparseVec::unit(3, FieldSpec::Rationals);
        let y = c.decompose(2, 1, 1, &x).unwrap();
        assert_eq!(y.entries().len(), 1);
        assert_eq!(c.delta(2, 1, 1).unwrap().codomain().label(y.entries()[0].0), "(g⊗g) ⊗ (g)");
        assert!(t.mu.entry(0, 3).is_one());
    }

    #[test]
    fn builtins_are_cooperads() {
        for name in BUILTIN_NAMES {
            let v = validated(name);
            let (c, t) = build(&v, 3).unwrap();
            let r = verify_cooperad_axioms(&c);
            assert!(r.passed(), "{name}\n{r}");
            let r = verify_comultiplication(&c, &t);
            assert!(r.passed(), "{name}\n{r}");
        }
    }

    #[test]
    fn hat_duality_dual_numbers() {
        let Validated::Frobenius(p, _) = validated("dual_numbers") else { panic!() };
        let (c, _) = build(&validated("dual_numbers"), 3).unwrap();
        let r = verify_hat_duality(&p, &c, 2, 2);
        assert!(r.passed(), "{r}");
        assert!(r.totals().0 > 0);
    }
}
