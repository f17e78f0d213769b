use std::collections::BTreeMap;

use super::field::{FieldElement, FieldSpec};

/// A sparse vector as a sorted coordinate list with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, FieldElement)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: FieldSpec) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, FieldElement)>) -> Self {
        let mut acc: BTreeMap<usize, FieldElement> = BTreeMap::new();
        for (i, v) in pairs {
            match acc.get_mut(&i) {
                Some(slot) => *slot += &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from entries already sorted by index without duplicates.
    pub fn from_sorted(entries: Vec<(usize, FieldElement)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[FieldElement]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, FieldElement)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, FieldElement)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&FieldElement> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &FieldElement)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &FieldElement) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb * c));
                        b.next();
                    } else {
                        let s = va + &(vb * c);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale(&self, c: &FieldElement) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn to_dense(&self, dim: usize, field: FieldSpec) -> Vec<FieldElement> {
        let mut out = vec![field.zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dot(&self, other: &SparseVec) -> Option<FieldElement> {
        let mut acc: Option<FieldElement> = None;
        for (i, v) in &self.entries {
            if let Some(w) = other.get(*i) {
                let p = v * w;
                acc = Some(match acc {
                    Some(a) => a + p,
                    None => p,
                });
            }
        }
        acc
    }
}
