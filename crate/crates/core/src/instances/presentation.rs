use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::InstanceError;
use crate::exactlinalg::field::{format_rational, parse_rational};
use crate::exactlinalg::{FieldElement, FieldSpec, SparseVec};

/// A structure constant: an integer or a decimal fraction string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn to_rational(&self) -> Result<BigRational, InstanceError> {
        match self {
            Coeff::Int(v) => Ok(BigRational::from_integer((*v).into())),
            Coeff::Text(s) => parse_rational(s).ok_or_else(|| InstanceError::Coefficient(s.clone())),
        }
    }

    fn in_field(&self, field: FieldSpec) -> Result<FieldElement, InstanceError> {
        Ok(field.from_rational(&self.to_rational()?)?)
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Int(v)
    }
}

impl From<&BigRational> for Coeff {
    fn from(q: &BigRational) -> Self {
        Coeff::Text(format_rational(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Bialgebra,
    Frobenius,
}

/// Field-independent presentation, as read from JSON.
///
/// `mult[i][j][k]` is the coefficient of `e_k` in `e_i e_j`;
/// `comult[i][j][k]` is the coefficient of `e_j ⊗ e_k` in `δ(e_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPresentation {
    pub kind: PresentationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<Vec<Coeff>>>,
    pub unit: Vec<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Vec<Vec<Coeff>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_functional: Option<Vec<Coeff>>,
}

#[derive(Clone, Debug)]
pub struct BialgebraPresentation {
    pub name: String,
    pub algebra: Algebra,
    /// `comult[i]` is `δ(e_i)` in `A ⊗ A`, row-major.
    pub comult: Vec<SparseVec>,
    pub counit: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct FrobeniusPresentation {
    pub name: String,
    pub algebra: Algebra,
    pub functional: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub enum Presentation {
    Bialgebra(BialgebraPresentation),
    Frobenius(FrobeniusPresentation),
}

impl Presentation {
    pub fn name(&self) -> &str {
        match self {
            Presentation::Bialgebra(p) => &p.name,
            Presentation::Frobenius(p) => &p.name,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        match self {
            Presentation::Bialgebra(p) => &p.algebra,
            Presentation::Frobenius(p) => &p.algebra,
        }
    }
}

fn vector(coeffs: &[Coeff], dim: usize, what: &str, field: FieldSpec) -> Result<Vec<FieldElement>, InstanceError> {
    if coeffs.len() != dim {
        return Err(InstanceError::Shape(format!("{what} has {} entries, expected {dim}", coeffs.len())));
    }
    coeffs.iter().map(|c| c.in_field(field)).collect()
}

fn cube(table: &[Vec<Vec<Coeff>>], dim: usize, what: &str, inner: usize, field: FieldSpec) -> Result<Vec<Vec<SparseVec>>, InstanceError> {
    if table.len() != dim {
        return Err(InstanceError::Shape(format!("{what} has {} rows, expected {dim}", table.len())));
    }
    table
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != dim {
                return Err(InstanceError::Shape(format!("{what}[{i}] has {} entries, expected {dim}", row.len())));
            }
            row.iter()
                .enumerate()
                .map(|(j, cell)| {
                    let v = vector(cell, inner, &format!("{what}[{i}][{j}]"), field)?;
                    Ok(SparseVec::from_dense(&v))
                })
                .collect()
        })
        .collect()
}

impl RawPresentation {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentations serialize")
    }

    /// Interprets the constants in `field`.
    pub fn over(&self, field: FieldSpec) -> Result<Presentation, InstanceError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(InstanceError::Shape("dimension must be positive".into()));
        }
        if self.basis.len() != dim {
            return Err(InstanceError::Shape(format!("{} basis labels for dimension {dim}", self.basis.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.basis {
            if l.is_empty() || l.contains('⊗') || !seen.insert(l) {
                return Err(InstanceError::Shape(format!("basis label `{l}` is empty, repeated or contains ⊗")));
            }
        }
        let products: Vec<SparseVec> = cube(&self.mult, dim, "mult", dim, field)?.into_iter().flatten().collect();
        let unit = SparseVec::from_dense(&vector(&self.unit, dim, "unit", field)?);
        let algebra = Algebra { field, labels: self.basis.clone(), products, unit };
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        match self.kind {
            PresentationKind::Bialgebra => {
                let comult = self
                    .comult
                    .as_ref()
                    .ok_or_else(|| InstanceError::Shape("bialgebra presentation needs `comult`".into()))?;
                let counit = self
                    .counit
                    .as_ref()
                    .ok_or_else(|| InstanceError::Shape("bialgebra presentation needs `counit`".into()))?;
                if self.frobenius_functional.is_some() {
                    return Err(InstanceError::Shape("bialgebra presentation has a Frobenius functional".into()));
                }
                let comult = cube(comult, dim, "comult", dim, field)?
                    .into_iter()
                    .map(|rows| {
                        let pairs = rows
                            .into_iter()
                            .enumerate()
                            .flat_map(|(j, v)| v.into_entries().into_iter().map(move |(k, c)| (j * dim + k, c)));
                        SparseVec::from_pairs(pairs)
                    })
                    .collect();
                Ok(Presentation::Bialgebra(BialgebraPresentation {
                    name,
                    algebra,
                    comult,
                    counit: vector(counit, dim, "counit", field)?,
                }))
            }
            PresentationKind::Frobenius => {
                let functional = self
                    .frobenius_functional
                    .as_ref()
                    .ok_or_else(|| InstanceError::Shape("Frobenius presentation needs `frobenius_functional`".into()))?;
                if self.comult.is_some() || self.counit.is_some() {
                    return Err(InstanceError::Shape("Frobenius presentation has bialgebra data".into()));
                }
                Ok(Presentation::Frobenius(FrobeniusPresentation {
                    name,
                    algebra,
                    functional: vector(functional, dim, "frobenius_functional", field)?,
                }))
            }
        }
    }
}
