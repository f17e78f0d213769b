use crate::exactlinalg::{BasedSpace, FieldElement, FieldSpec, LinearMap, SparseVec};

/// A finite-dimensional unital algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    /// `products[i * dim + j]` is `e_i e_j`.
    pub products: Vec<SparseVec>,
    pub unit: SparseVec,
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                acc = acc.add_scaled(self.basis_product(*i, *j), &(x * y));
            }
        }
        acc
    }

    pub fn space(&self) -> BasedSpace {
        BasedSpace::new(self.labels.clone()).expect("labels validated at construction")
    }

    /// Multiplication as a map `A ⊗ A → A`.
    pub fn mult_map(&self) -> LinearMap {
        let a = self.space();
        LinearMap::from_columns(BasedSpace::tensor2(&a, &a), a, self.field, self.products.clone())
            .expect("structure constants fit")
    }

    pub fn unit_map(&self) -> LinearMap {
        LinearMap::from_columns(BasedSpace::scalars(), self.space(), self.field, vec![self.unit.clone()])
            .expect("unit fits")
    }

    /// Left multiplication by `a`, as a map `A → A`.
    pub fn left_mult(&self, a: &SparseVec) -> LinearMap {
        let cols = (0..self.dim()).map(|j| self.mul(a, &SparseVec::unit(j, self.field))).collect();
        LinearMap::from_columns(self.space(), self.space(), self.field, cols).expect("square")
    }

    /// The product of the basis elements named by `letters`, in order.
    pub fn word_product(&self, letters: &[usize]) -> SparseVec {
        letters
            .iter()
            .fold(self.unit.clone(), |acc, &l| self.mul(&acc, &SparseVec::unit(l, self.field)))
    }

    pub fn unit_vec(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field)
    }
}

/// Evaluates a functional given by its values on the basis.
pub fn evaluate(functional: &[FieldElement], v: &SparseVec, field: FieldSpec) -> FieldElement {
    v.entries()
        .iter()
        .fold(field.zero(), |acc, (i, c)| acc + &(c * &functional[*i]))
}

/// Words of a fixed length over `0..dim`, in row-major order.
pub struct Words {
    pub dim: usize,
    pub len: usize,
}

impl Words {
    pub fn count(&self) -> usize {
        self.dim.pow(self.len as u32)
    }

    pub fn letters(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.len];
        for slot in out.iter_mut().rev() {
            *slot = index % self.dim;
            index /= self.dim;
        }
        out
    }

    pub fn index(&self, letters: &[usize]) -> usize {
        debug_assert_eq!(letters.len(), self.len);
        letters.iter().fold(0, |acc, &l| acc * self.dim + l)
    }
}

/// Based space of words of length `len`, labelled by `⊗`-joined letters;
/// the empty word is labelled `empty`.
pub fn word_space(labels: &[String], len: usize, empty: &str) -> BasedSpace {
    if len == 0 {
        return BasedSpace::new(vec![empty.to_string()]).expect("single label");
    }
    let words = Words { dim: labels.len(), len };
    let names = (0..words.count())
        .map(|w| {
            words
                .letters(w)
                .iter()
                .map(|&l| labels[l].as_str())
                .collect::<Vec<_>>()
                .join("⊗")
        })
        .collect();
    BasedSpace::new(names).expect("words over distinct labels are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        let w = Words { dim: 3, len: 4 };
        for i in 0..w.count() {
            assert_eq!(w.index(&w.letters(i)), i);
        }
        assert_eq!(w.letters(5), vec![0, 0, 1, 2]);
    }

    #[test]
    fn word_labels() {
        let labels = vec!["1".to_string(), "g".to_string()];
        let s = word_space(&labels, 2, "1_k");
        assert_eq!(s.labels(), vec!["1⊗1", "1⊗g", "g⊗1", "g⊗g"]);
        assert_eq!(word_space(&labels, 0, "1_k").labels(), vec!["1_k"]);
    }
}
