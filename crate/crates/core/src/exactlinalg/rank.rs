use std::collections::BTreeMap;

use super::field::{FieldElement, FieldSpec};
use super::map::LinearMap;
use super::sparse::SparseVec;

/// Matrices with fewer than this many rows and columns are eliminated densely.
pub const DENSE_CUTOFF: usize = 64;

/// Incrementally built echelon basis.
///
/// Stored vectors have pairwise distinct leading (lowest) indices. Each
/// stored vector remembers how it was formed from the inserted generators,
/// so coordinates with respect to the generators can be recovered.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    vectors: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    lead: BTreeMap<usize, usize>,
    generators: usize,
}

/// Outcome of inserting a generator.
#[derive(Clone, Debug)]
pub enum Insertion {
    /// The generator was independent and became stored vector `k`.
    Independent(usize),
    /// The generator was dependent; the combination of generators
    /// (including itself with coefficient 1) that vanishes.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            vectors: Vec::new(),
            combos: Vec::new(),
            lead: BTreeMap::new(),
            generators: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Reduces `v` against the stored vectors. Returns the residual (which
    /// has no entry at any leading index) and the multiples of stored
    /// vectors that were subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, Vec<(usize, FieldElement)>) {
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .entries()
                .iter()
                .find(|(i, _)| *i >= cursor && self.lead.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((row, coeff)) = next else { break };
            let k = self.lead[&row];
            let basis = &self.vectors[k];
            let pivot = basis.leading().expect("stored vectors are nonzero").1;
            let factor = &coeff / pivot;
            v = v.add_scaled(basis, &-&factor);
            used.push((k, factor));
            cursor = row + 1;
        }
        (v, used)
    }

    fn combination_of(&self, own: Option<usize>, used: &[(usize, FieldElement)]) -> SparseVec {
        let mut combo = match own {
            Some(g) => SparseVec::unit(g, self.field),
            None => SparseVec::new(),
        };
        for (k, factor) in used {
            combo = combo.add_scaled(&self.combos[*k], &-factor);
        }
        combo
    }

    pub fn insert(&mut self, v: SparseVec) -> Insertion {
        let g = self.generators;
        self.generators += 1;
        let (residual, used) = self.reduce(v);
        let combo = self.combination_of(Some(g), &used);
        if residual.is_zero() {
            return Insertion::Dependent(combo);
        }
        let row = residual.leading().expect("nonzero").0;
        let k = self.vectors.len();
        self.vectors.push(residual);
        self.combos.push(combo);
        self.lead.insert(row, k);
        Insertion::Independent(k)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).0.is_zero()
    }

    /// Coefficients expressing `v` through the inserted generators, if `v`
    /// lies in their span. Dependent generators get coefficient zero.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, used) = self.reduce(v.clone());
        if !residual.is_zero() {
            return None;
        }
        let combo = self.combination_of(None, &used);
        Some(combo.neg())
    }

    /// The stored vectors fully reduced, each with leading coefficient 1,
    /// sorted by leading index.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let order: Vec<usize> = self.lead.values().copied().collect();
        let mut out: Vec<SparseVec> = Vec::with_capacity(order.len());
        // Work from the largest leading index down so each vector is
        // reduced against already-final ones.
        for &k in order.iter().rev() {
            let mut v = self.vectors[k].clone();
            for done in &out {
                let lr = done.leading().expect("nonzero").0;
                if let Some(c) = v.get(lr).cloned() {
                    v = v.add_scaled(done, &-&c);
                }
            }
            let inv = v.leading().expect("nonzero").1.inverse().expect("nonzero pivot");
            out.push(v.scale(&inv));
        }
        out.reverse();
        out
    }
}

/// Rank, kernel and image of a linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct RankDecomposition {
    pub rank: usize,
    /// One vector per non-pivot column `c`: coefficient 1 at `c`, zero at
    /// every other non-pivot column.
    pub kernel_basis: Vec<SparseVec>,
    /// Reduced column echelon basis of the column space: leading 1 at
    /// distinct rows, zero at the other leading rows.
    pub image_basis: Vec<SparseVec>,
    /// Columns independent of all earlier columns.
    pub pivot_columns: Vec<usize>,
}

pub fn rank_decomposition(f: &LinearMap) -> RankDecomposition {
    if f.nrows() < DENSE_CUTOFF && f.ncols() < DENSE_CUTOFF {
        dense_rank_decomposition(f)
    } else {
        sparse_rank_decomposition(f)
    }
}

pub fn sparse_rank_decomposition(f: &LinearMap) -> RankDecomposition {
    let mut ech = Echelon::new(f.field());
    let mut kernel_basis = Vec::new();
    let mut pivot_columns = Vec::new();
    for (c, col) in f.columns().iter().enumerate() {
        match ech.insert(col.clone()) {
            Insertion::Independent(_) => pivot_columns.push(c),
            Insertion::Dependent(combo) => kernel_basis.push(combo),
        }
    }
    RankDecomposition {
        rank: pivot_columns.len(),
        kernel_basis,
        image_basis: ech.reduced_basis(),
        pivot_columns,
    }
}

/// Row reduction to reduced row echelon form; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref(rows: &mut [Vec<FieldElement>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let t = &factor * &rows[r][j];
                        rows[i][j] -= &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn dense_rank_decomposition(f: &LinearMap) -> RankDecomposition {
    let field = f.field();
    let (m, n) = (f.nrows(), f.ncols());
    let mut rows = f.to_dense();
    let pivots = rref(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel_basis = free
        .iter()
        .map(|&c| {
            let mut pairs = vec![(c, field.one())];
            for (k, &pc) in pivots.iter().enumerate() {
                pairs.push((pc, -&rows[k][c]));
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let mut cols_as_rows = f.transpose().to_dense();
    let image_pivots = rref(&mut cols_as_rows, m);
    let image_basis = cols_as_rows
        .into_iter()
        .take(image_pivots.len())
        .map(|row| SparseVec::from_dense(&row))
        .collect();
    RankDecomposition {
        rank: pivots.len(),
        kernel_basis,
        image_basis,
        pivot_columns: pivots,
    }
}

/// Solves `f x = b`, returning one solution when it exists.
pub fn solve(f: &LinearMap, b: &SparseVec) -> Option<SparseVec> {
    let mut ech = Echelon::new(f.field());
    for col in f.columns() {
        ech.insert(col.clone());
    }
    ech.coordinates(b)
}

/// Inverse of a square map, or `None` when singular.
pub fn inverse(f: &LinearMap) -> Option<LinearMap> {
    if f.nrows() != f.ncols() {
        return None;
    }
    let mut ech = Echelon::new(f.field());
    for col in f.columns() {
        if let Insertion::Dependent(_) = ech.insert(col.clone()) {
            return None;
        }
    }
    let cols = (0..f.nrows())
        .map(|r| ech.coordinates(&SparseVec::unit(r, f.field())).expect("full rank"))
        .collect();
    LinearMap::from_columns(f.codomain().clone(), f.domain().clone(), f.field(), cols).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::space::BasedSpace;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn zero_map_has_full_kernel() {
        let z = LinearMap::zero(BasedSpace::standard(3), BasedSpace::standard(2), q());
        let rd = rank_decomposition(&z);
        assert_eq!(rd.rank, 0);
        let expected: Vec<SparseVec> = (0..3).map(|i| SparseVec::unit(i, q())).collect();
        assert_eq!(rd.kernel_basis, expected);
    }

    #[test]
    fn all_ones_two_by_two() {
        let f = LinearMap::from_i64_rows(q(), &[vec![1, 1], vec![1, 1]]);
        let rd = rank_decomposition(&f);
        assert_eq!(rd.rank, 1);
        assert_eq!(rd.kernel_basis, vec![SparseVec::from_pairs([(0, q().from_i64(-1)), (1, q().one())])]);
        assert_eq!(rd.pivot_columns, vec![0]);
        assert_eq!(rd, sparse_rank_decomposition(&f));
    }

    #[test]
    fn identity_has_empty_kernel() {
        let id = LinearMap::identity(BasedSpace::standard(2), q());
        let rd = rank_decomposition(&id);
        assert_eq!(rd.rank, 2);
        assert!(rd.kernel_basis.is_empty());
    }

    #[test]
    fn modular_rank_differs_from_rational() {
        let rows = [vec![2, 0], vec![0, 1]];
        let over_q = LinearMap::from_i64_rows(q(), &rows);
        let over_f2 = LinearMap::from_i64_rows(FieldSpec::PrimeField(2), &rows);
        assert_eq!(rank_decomposition(&over_q).rank, 2);
        assert_eq!(rank_decomposition(&over_f2).rank, 1);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let f = LinearMap::from_i64_rows(q(), &[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&f).unwrap();
        assert!(f.compose(&inv).unwrap().matrix_eq(&LinearMap::identity(BasedSpace::standard(2), q())));
        assert!(inverse(&LinearMap::from_i64_rows(q(), &[vec![1, 1], vec![1, 1]])).is_none());
    }

    fn matrix(max: usize) -> impl Strategy<Value = (FieldSpec, LinearMap)> {
        (1..=max, 1..=max, prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(2)), Just(FieldSpec::PrimeField(5))])
            .prop_flat_map(|(r, c, field)| {
                proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], r * c).prop_map(move |v| {
                    let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
                    (field, LinearMap::from_i64_rows(field, &rows))
                })
            })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel((field, f) in matrix(7)) {
            let rd = rank_decomposition(&f);
            prop_assert_eq!(rd.rank + rd.kernel_basis.len(), f.ncols());
            for k in &rd.kernel_basis {
                prop_assert!(f.apply(k).is_zero());
            }
            // image basis spans the column space
            let basis = LinearMap::from_columns(
                BasedSpace::standard(rd.image_basis.len()),
                f.codomain().clone(),
                field,
                rd.image_basis.clone(),
            ).unwrap();
            for col in f.columns() {
                prop_assert!(solve(&basis, col).is_some());
            }
            prop_assert_eq!(rd.image_basis.len(), rd.rank);
        }

        #[test]
        fn dense_and_sparse_routes_agree((_field, f) in matrix(7)) {
            prop_assert_eq!(dense_rank_decomposition(&f), sparse_rank_decomposition(&f));
        }

        #[test]
        fn solve_finds_preimages((_field, f) in matrix(6), seed in proptest::collection::vec(-2i64..=2, 6)) {
            let field = f.field();
            let x = SparseVec::from_pairs((0..f.ncols()).map(|i| (i, field.from_i64(seed[i]))));
            let b = f.apply(&x);
            let y = solve(&f, &b).unwrap();
            prop_assert_eq!(f.apply(&y), b);
        }
    }
}
