//! Elements of direct sums of tensor products `C(a₁) ⊗ … ⊗ C(a_k)`, and
//! leg-wise application of linear maps to them.
//!
//! Each summand is keyed by its shape, the list of arities of its legs.
//! The shape with no legs is the ground field.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::field::{FieldElement, FieldSpec};
use super::map::{FlipKind, LinearMap};
use super::sparse::SparseVec;
use super::LinAlgError;
use super::space::BasedSpace;

pub type Shape = SmallVec<[u32; 4]>;

pub fn shape(arities: &[u32]) -> Shape {
    Shape::from_slice(arities)
}

/// Something that can be applied to a single tensor leg: for each input
/// arity, a list of output shapes with the map into their tensor product.
pub trait LegOp: Sync {
    /// `None` when the operator is not available in this arity.
    fn components(&self, arity: u32) -> Option<Vec<(&[u32], &LinearMap)>>;
}

/// One map from a single arity into one output shape.
pub struct SingleMap<'a> {
    pub input: u32,
    pub output: Shape,
    pub map: &'a LinearMap,
}

impl LegOp for SingleMap<'_> {
    fn components(&self, arity: u32) -> Option<Vec<(&[u32], &LinearMap)>> {
        (arity == self.input).then(|| vec![(self.output.as_slice(), self.map)])
    }
}

/// Arity-indexed family of single-output maps, e.g. a differential.
pub struct MapFamily {
    pub maps: BTreeMap<u32, (Shape, LinearMap)>,
}

impl LegOp for MapFamily {
    fn components(&self, arity: u32) -> Option<Vec<(&[u32], &LinearMap)>> {
        self.maps.get(&arity).map(|(s, m)| vec![(s.as_slice(), m)])
    }
}

fn dim_of(spaces: &[BasedSpace], arity: u32) -> Result<usize, LinAlgError> {
    spaces
        .get(arity as usize)
        .map(BasedSpace::dim)
        .ok_or(LinAlgError::ArityUnavailable(arity))
}

fn dim_of_shape(spaces: &[BasedSpace], legs: &[u32]) -> Result<usize, LinAlgError> {
    legs.iter().try_fold(1usize, |acc, &a| Ok(acc * dim_of(spaces, a)?))
}

/// A vector in a direct sum of tensor products of graded pieces.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedVec {
    field: FieldSpec,
    parts: BTreeMap<Shape, SparseVec>,
}

impl GradedVec {
    pub fn zero(field: FieldSpec) -> Self {
        GradedVec { field, parts: BTreeMap::new() }
    }

    /// Basis vector `index` of `C(arity)`.
    pub fn basis(field: FieldSpec, arity: u32, index: usize) -> Self {
        Self::from_part(field, shape(&[arity]), SparseVec::unit(index, field))
    }

    pub fn from_part(field: FieldSpec, legs: Shape, v: SparseVec) -> Self {
        let mut parts = BTreeMap::new();
        if !v.is_zero() {
            parts.insert(legs, v);
        }
        GradedVec { field, parts }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn parts(&self) -> &BTreeMap<Shape, SparseVec> {
        &self.parts
    }

    pub fn part(&self, legs: &[u32]) -> Option<&SparseVec> {
        self.parts.get(legs)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_scaled(&self, other: &GradedVec, c: &FieldElement) -> GradedVec {
        let mut parts = self.parts.clone();
        for (s, v) in &other.parts {
            let merged = match parts.get(s) {
                Some(mine) => mine.add_scaled(v, c),
                None => v.scale(c),
            };
            if merged.is_zero() {
                parts.remove(s);
            } else {
                parts.insert(s.clone(), merged);
            }
        }
        GradedVec { field: self.field, parts }
    }

    pub fn add(&self, other: &GradedVec) -> GradedVec {
        self.add_scaled(other, &self.field.one())
    }

    pub fn sub(&self, other: &GradedVec) -> GradedVec {
        self.add_scaled(other, &self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &FieldElement) -> GradedVec {
        if c.is_zero() {
            return GradedVec::zero(self.field);
        }
        GradedVec {
            field: self.field,
            parts: self.parts.iter().map(|(s, v)| (s.clone(), v.scale(c))).collect(),
        }
    }

    pub fn signed(&self, exponent: i64) -> GradedVec {
        if exponent.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scale(&self.field.from_i64(-1))
        }
    }

    /// Multiplies each summand by a sign computed from its shape.
    pub fn sign_by_shape(&self, exponent: impl Fn(&[u32]) -> i64) -> GradedVec {
        let minus = self.field.from_i64(-1);
        GradedVec {
            field: self.field,
            parts: self
                .parts
                .iter()
                .map(|(s, v)| {
                    let v = if exponent(s).rem_euclid(2) == 0 { v.clone() } else { v.scale(&minus) };
                    (s.clone(), v)
                })
                .collect(),
        }
    }

    /// Keeps only the summands whose shape passes the filter.
    pub fn restrict(&self, keep: impl Fn(&[u32]) -> bool) -> GradedVec {
        GradedVec {
            field: self.field,
            parts: self.parts.iter().filter(|(s, _)| keep(s)).map(|(s, v)| (s.clone(), v.clone())).collect(),
        }
    }

    /// Applies `op` to leg `pos` of every summand, with identities elsewhere
    /// and no Koszul sign.
    pub fn apply_leg(&self, pos: usize, op: &dyn LegOp, spaces: &[BasedSpace]) -> Result<GradedVec, LinAlgError> {
        let mut acc: BTreeMap<Shape, Vec<(usize, FieldElement)>> = BTreeMap::new();
        for (legs, v) in &self.parts {
            if pos >= legs.len() {
                return Err(LinAlgError::Shape(format!("leg {pos} of a {}-fold tensor", legs.len())));
            }
            let leg_dim = dim_of(spaces, legs[pos])?;
            let suffix_dim = dim_of_shape(spaces, &legs[pos + 1..])?;
            let comps = op
                .components(legs[pos])
                .ok_or(LinAlgError::ArityUnavailable(legs[pos]))?;
            let mut targets = Vec::with_capacity(comps.len());
            for (out, map) in comps {
                let mut new_legs: Shape = legs[..pos].iter().copied().collect();
                new_legs.extend_from_slice(out);
                new_legs.extend_from_slice(&legs[pos + 1..]);
                let out_dim = dim_of_shape(spaces, out)?;
                debug_assert_eq!(out_dim, map.nrows());
                debug_assert_eq!(leg_dim, map.ncols());
                targets.push((new_legs, out_dim, map));
            }
            for (idx, coeff) in v.entries() {
                let suffix = idx % suffix_dim;
                let x = (idx / suffix_dim) % leg_dim;
                let prefix = idx / (suffix_dim * leg_dim);
                for (new_legs, out_dim, map) in &targets {
                    let col = map.column(x);
                    if col.is_zero() {
                        continue;
                    }
                    let slot = acc.entry(new_legs.clone()).or_default();
                    for (r, w) in col.entries() {
                        slot.push(((prefix * out_dim + r) * suffix_dim + suffix, coeff * w));
                    }
                }
            }
        }
        Ok(self.collect(acc))
    }

    /// `(-1)^{deg · (sum of arities left of pos)}` times [`Self::apply_leg`].
    pub fn apply_leg_koszul(
        &self,
        pos: usize,
        op: &dyn LegOp,
        op_degree: i64,
        spaces: &[BasedSpace],
    ) -> Result<GradedVec, LinAlgError> {
        let signed = self.sign_by_shape(|s| op_degree * s[..pos.min(s.len())].iter().map(|&a| a as i64).sum::<i64>());
        signed.apply_leg(pos, op, spaces)
    }

    /// Swaps legs `pos` and `pos + 1` with the sign of the given flip,
    /// computed from the arities of the two legs.
    pub fn flip(&self, pos: usize, kind: FlipKind, spaces: &[BasedSpace]) -> Result<GradedVec, LinAlgError> {
        let mut acc: BTreeMap<Shape, Vec<(usize, FieldElement)>> = BTreeMap::new();
        for (legs, v) in &self.parts {
            if pos + 1 >= legs.len() {
                return Err(LinAlgError::Shape(format!("flip at {pos} of a {}-fold tensor", legs.len())));
            }
            let (a, b) = (legs[pos], legs[pos + 1]);
            let (da, db) = (dim_of(spaces, a)?, dim_of(spaces, b)?);
            let suffix_dim = dim_of_shape(spaces, &legs[pos + 2..])?;
            let sign = self.field.sign(kind.sign_exponent(a as i64, b as i64));
            let mut new_legs = legs.clone();
            new_legs.swap(pos, pos + 1);
            let slot = acc.entry(new_legs).or_default();
            for (idx, coeff) in v.entries() {
                let suffix = idx % suffix_dim;
                let ib = (idx / suffix_dim) % db;
                let ia = (idx / (suffix_dim * db)) % da;
                let prefix = idx / (suffix_dim * db * da);
                slot.push((((prefix * db + ib) * da + ia) * suffix_dim + suffix, coeff * &sign));
            }
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: BTreeMap<Shape, Vec<(usize, FieldElement)>>) -> GradedVec {
        GradedVec {
            field: self.field,
            parts: acc
                .into_iter()
                .map(|(s, pairs)| (s, SparseVec::from_pairs(pairs)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// First coordinate where the two vectors differ, in (shape, index) order.
    pub fn first_difference(&self, other: &GradedVec) -> Option<Difference> {
        let diff = self.sub(other);
        let (legs, v) = diff.parts.iter().next()?;
        let (idx, _) = v.leading()?;
        let zero = self.field.zero();
        let left = self.parts.get(legs).and_then(|p| p.get(idx)).unwrap_or(&zero).clone();
        let right = other.parts.get(legs).and_then(|p| p.get(idx)).unwrap_or(&zero).clone();
        Some(Difference { legs: legs.clone(), index: idx, left, right })
    }

    /// Human-readable expansion using the basis labels of `spaces`.
    pub fn render(&self, spaces: &[BasedSpace]) -> String {
        let mut terms = Vec::new();
        for (legs, v) in &self.parts {
            for (idx, c) in v.entries() {
                terms.push(format!("{c}·{}", term_label(legs, *idx, spaces)));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for GradedVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (s, v) in &self.parts {
            let entries: Vec<String> = v.entries().iter().map(|(i, c)| format!("{i}:{c}")).collect();
            m.entry(&s.as_slice(), &entries);
        }
        m.finish()
    }
}

/// Where two graded vectors first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub legs: Shape,
    pub index: usize,
    pub left: FieldElement,
    pub right: FieldElement,
}

/// Label of basis tensor `index` in the tensor product of the given arities.
pub fn term_label(legs: &[u32], index: usize, spaces: &[BasedSpace]) -> String {
    if legs.is_empty() {
        return "1_k".into();
    }
    let dims: Vec<usize> = legs.iter().map(|&a| spaces[a as usize].dim()).collect();
    let parts = super::space::split_index(index, dims.iter().copied());
    legs.iter()
        .zip(parts)
        .map(|(&a, i)| format!("({})", spaces[a as usize].label(i)))
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}
