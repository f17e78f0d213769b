use std::fmt;
use std::sync::Arc;

/// A finite-dimensional vector space with an ordered, labelled basis.
///
/// Tensor products are kept formal: their basis is enumerated row-major
/// over the ordered factors (first factor major, last factor minor) and
/// labels are produced on demand, so large tensor powers never store
/// their labels.
#[derive(Clone)]
pub struct BasedSpace(Arc<SpaceKind>);

enum SpaceKind {
    Plain { labels: Vec<String> },
    Tensor { factors: Vec<BasedSpace>, dim: usize },
}

impl BasedSpace {
    /// Plain space from basis labels. Labels must be unique.
    pub fn new(labels: Vec<String>) -> Result<Self, super::LinAlgError> {
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(super::LinAlgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(BasedSpace(Arc::new(SpaceKind::Plain { labels })))
    }

    /// Space with basis `e0, e1, ...`.
    pub fn standard(dim: usize) -> Self {
        BasedSpace(Arc::new(SpaceKind::Plain {
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
        }))
    }

    /// The one-dimensional space of scalars.
    pub fn scalars() -> Self {
        BasedSpace(Arc::new(SpaceKind::Plain { labels: vec!["1_k".to_string()] }))
    }

    pub fn tensor(factors: Vec<BasedSpace>) -> Self {
        let dim = factors.iter().map(BasedSpace::dim).product();
        BasedSpace(Arc::new(SpaceKind::Tensor { factors, dim }))
    }

    pub fn tensor2(a: &BasedSpace, b: &BasedSpace) -> Self {
        Self::tensor(vec![a.clone(), b.clone()])
    }

    pub fn dim(&self) -> usize {
        match &*self.0 {
            SpaceKind::Plain { labels } => labels.len(),
            SpaceKind::Tensor { dim, .. } => *dim,
        }
    }

    /// Tensor factors; a plain space is its own single factor.
    pub fn factors(&self) -> Vec<BasedSpace> {
        match &*self.0 {
            SpaceKind::Plain { .. } => vec![self.clone()],
            SpaceKind::Tensor { factors, .. } => factors.clone(),
        }
    }

    pub fn label(&self, index: usize) -> String {
        match &*self.0 {
            SpaceKind::Plain { labels } => labels[index].clone(),
            SpaceKind::Tensor { factors, .. } => {
                let parts = split_index(index, factors.iter().map(BasedSpace::dim));
                let words: Vec<String> = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, i)| format!("({})", f.label(i)))
                    .collect();
                words.join(" ⊗ ")
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &*self.0 {
            SpaceKind::Plain { labels } => labels.iter().position(|l| l == label),
            SpaceKind::Tensor { .. } => (0..self.dim()).find(|&i| self.label(i) == label),
        }
    }

    /// Same dimension and factor structure.
    pub fn same_shape(&self, other: &BasedSpace) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (SpaceKind::Plain { labels: a }, SpaceKind::Plain { labels: b }) => a.len() == b.len(),
            (SpaceKind::Tensor { factors: a, .. }, SpaceKind::Tensor { factors: b, .. }) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y))
            }
            _ => self.dim() == other.dim() && self.factors().len() == other.factors().len(),
        }
    }
}

impl fmt::Debug for BasedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            SpaceKind::Plain { labels } => write!(f, "BasedSpace(dim={})", labels.len()),
            SpaceKind::Tensor { factors, dim } => {
                let dims: Vec<usize> = factors.iter().map(BasedSpace::dim).collect();
                write!(f, "BasedSpace(dim={dim}, factors={dims:?})")
            }
        }
    }
}

/// Splits a row-major tensor index into per-factor indices.
pub fn split_index(mut index: usize, dims: impl DoubleEndedIterator<Item = usize> + ExactSizeIterator) -> Vec<usize> {
    let dims: Vec<usize> = dims.collect();
    let mut out = vec![0; dims.len()];
    for (slot, d) in out.iter_mut().zip(dims.iter()).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Inverse of [`split_index`].
pub fn join_index(parts: &[usize], dims: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}
