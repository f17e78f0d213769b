use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{FieldElement, FieldSpec};
use super::space::{join_index, split_index, BasedSpace};
use super::sparse::SparseVec;
use super::LinAlgError;

/// A linear map between based spaces, stored column by column: column `c`
/// is the image of the `c`-th domain basis vector.
#[derive(Clone)]
pub struct LinearMap {
    domain: BasedSpace,
    codomain: BasedSpace,
    field: FieldSpec,
    cols: Vec<SparseVec>,
}

impl LinearMap {
    pub fn from_columns(
        domain: BasedSpace,
        codomain: BasedSpace,
        field: FieldSpec,
        cols: Vec<SparseVec>,
    ) -> Result<Self, LinAlgError> {
        if cols.len() != domain.dim() {
            return Err(LinAlgError::Shape(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        for (c, col) in cols.iter().enumerate() {
            if let Some(r) = col.max_index() {
                if r >= codomain.dim() {
                    return Err(LinAlgError::Shape(format!(
                        "entry ({r}, {c}) outside a codomain of dimension {}",
                        codomain.dim()
                    )));
                }
            }
            if let Some((_, v)) = col.entries().first() {
                if v.field() != field {
                    return Err(LinAlgError::FieldMismatch);
                }
            }
        }
        Ok(LinearMap { domain, codomain, field, cols })
    }

    pub fn zero(domain: BasedSpace, codomain: BasedSpace, field: FieldSpec) -> Self {
        let cols = vec![SparseVec::new(); domain.dim()];
        LinearMap { domain, codomain, field, cols }
    }

    pub fn identity(space: BasedSpace, field: FieldSpec) -> Self {
        let cols = (0..space.dim()).map(|i| SparseVec::unit(i, field)).collect();
        LinearMap { domain: space.clone(), codomain: space, field, cols }
    }

    /// Dense constructor on standard spaces: `rows[r][c]` is entry (r, c).
    pub fn from_rows(field: FieldSpec, rows: &[Vec<FieldElement>], ncols: usize) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let mut cols = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinAlgError::Shape(format!("row {r} has {} entries, expected {ncols}", row.len())));
            }
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[c].push((r, v.clone()));
                }
            }
        }
        let cols = cols.into_iter().map(SparseVec::from_sorted).collect();
        LinearMap::from_columns(BasedSpace::standard(ncols), BasedSpace::standard(nrows), field, cols)
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<FieldElement>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        LinearMap::from_rows(field, &rows, ncols).expect("rectangular input")
    }

    pub fn domain(&self) -> &BasedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &BasedSpace {
        &self.codomain
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn ncols(&self) -> usize {
        self.domain.dim()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        self.cols[c].get(r).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Same shape and same entries; labels are not compared.
    pub fn matrix_eq(&self, other: &LinearMap) -> bool {
        self.nrows() == other.nrows() && self.ncols() == other.ncols() && self.cols == other.cols
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (c, coeff) in v.entries() {
            acc = acc.add_scaled(&self.cols[*c], coeff);
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, LinAlgError> {
        if inner.nrows() != self.ncols() {
            return Err(LinAlgError::Shape(format!(
                "cannot compose a map with domain dimension {} after one with codomain dimension {}",
                self.ncols(),
                inner.nrows()
            )));
        }
        let cols = inner.cols.iter().map(|col| self.apply(col)).collect();
        Ok(LinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            field: self.field,
            cols,
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, LinAlgError> {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, LinAlgError> {
        self.combine(other, &self.field.from_i64(-1))
    }

    fn combine(&self, other: &LinearMap, c: &FieldElement) -> Result<LinearMap, LinAlgError> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(LinAlgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(b, c)).collect();
        Ok(LinearMap { cols, ..self.clone() })
    }

    pub fn scale(&self, c: &FieldElement) -> LinearMap {
        LinearMap {
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> LinearMap {
        let mut rows = vec![Vec::new(); self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.entries() {
                rows[*r].push((c, v.clone()));
            }
        }
        LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            field: self.field,
            cols: rows.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        let mut out = vec![vec![self.field.zero(); self.ncols()]; self.nrows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.entries() {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// Relabels domain and codomain; dimensions must agree.
    pub fn with_spaces(self, domain: BasedSpace, codomain: BasedSpace) -> Result<LinearMap, LinAlgError> {
        if domain.dim() != self.ncols() || codomain.dim() != self.nrows() {
            return Err(LinAlgError::Shape("relabelling changes dimensions".into()));
        }
        Ok(LinearMap { domain, codomain, ..self })
    }

    /// Returns a copy with one stored entry negated.
    pub fn with_entry_negated(&self, col: usize, nth_entry: usize) -> Option<LinearMap> {
        let entries = self.cols.get(col)?.entries();
        let (r, v) = entries.get(nth_entry)?;
        let mut out = self.clone();
        let mut new_entries = entries.to_vec();
        new_entries[nth_entry] = (*r, -v);
        out.cols[col] = SparseVec::from_sorted(new_entries);
        Some(out)
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.matrix_eq(other)
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{} over {}", self.nrows(), self.ncols(), self.field)?;
        if self.nrows() * self.ncols() <= 144 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        } else {
            writeln!(f, "  ({} nonzero entries)", self.nnz())?;
        }
        Ok(())
    }
}

/// Kronecker product `f ⊗ g` with (domain of f) major, (domain of g) minor.
pub fn tensor_map(f: &LinearMap, g: &LinearMap) -> LinearMap {
    let field = f.field;
    let dom = BasedSpace::tensor2(&f.domain, &g.domain);
    let cod = BasedSpace::tensor2(&f.codomain, &g.codomain);
    let gr = g.nrows();
    let mut cols = Vec::with_capacity(f.ncols() * g.ncols());
    for fc in &f.cols {
        for gc in &g.cols {
            let mut entries = Vec::with_capacity(fc.nnz() * gc.nnz());
            for (r1, v1) in fc.entries() {
                for (r2, v2) in gc.entries() {
                    entries.push((r1 * gr + r2, v1 * v2));
                }
            }
            cols.push(SparseVec::from_sorted(entries));
        }
    }
    LinearMap { domain: dom, codomain: cod, field, cols }
}

/// The four tensor flips, differing only by sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipKind {
    /// Ungraded: no sign.
    Sigma,
    /// Graded: `(-1)^{|a||b|}`.
    Tau,
    /// Suspended: `(-1)^{(|a|-1)(|b|-1)}`.
    Rho,
    /// Mixed: `(-1)^{|a|(|b|-1)}`.
    Varrho,
}

impl FlipKind {
    /// Exponent of `-1` for swapping `a ⊗ b` with the given degrees.
    pub fn sign_exponent(self, deg_a: i64, deg_b: i64) -> i64 {
        match self {
            FlipKind::Sigma => 0,
            FlipKind::Tau => deg_a * deg_b,
            FlipKind::Rho => (deg_a - 1) * (deg_b - 1),
            FlipKind::Varrho => deg_a * (deg_b - 1),
        }
    }
}

/// `A ⊗ B → B ⊗ A`, `a ⊗ b ↦ ± b ⊗ a`.
pub fn flip(kind: FlipKind, deg_a: i64, deg_b: i64, a: &BasedSpace, b: &BasedSpace, field: FieldSpec) -> LinearMap {
    let sign = field.sign(kind.sign_exponent(deg_a, deg_b));
    let (da, db) = (a.dim(), b.dim());
    let mut cols = Vec::with_capacity(da * db);
    for ia in 0..da {
        for ib in 0..db {
            cols.push(SparseVec::from_sorted(vec![(join_index(&[ib, ia], &[db, da]), sign.clone())]));
        }
    }
    LinearMap {
        domain: BasedSpace::tensor2(a, b),
        codomain: BasedSpace::tensor2(b, a),
        field,
        cols,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Extends a leg map to a two-fold tensor product with the Koszul rule:
/// `Left` gives `d ⊗ id`, `Right` gives `(-1)^{partner_degree} id ⊗ d`.
pub fn koszul_extend(d: &LinearMap, side: Side, partner: &BasedSpace, partner_degree: i64) -> LinearMap {
    let id = LinearMap::identity(partner.clone(), d.field);
    match side {
        Side::Left => tensor_map(d, &id),
        Side::Right => tensor_map(&id, d).scale(&d.field.sign(partner_degree)),
    }
}

/// Decodes a row-major tensor index into factor indices for the given dims.
pub fn decode(index: usize, dims: &[usize]) -> Vec<usize> {
    split_index(index, dims.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn flip_signs_on_basis_tensors() {
        let a = BasedSpace::standard(1);
        let b = BasedSpace::standard(1);
        let f = q();
        assert_eq!(flip(FlipKind::Tau, 1, 1, &a, &b, f).entry(0, 0), f.from_i64(-1));
        assert_eq!(flip(FlipKind::Rho, 1, 1, &a, &b, f).entry(0, 0), f.one());
        assert_eq!(flip(FlipKind::Varrho, 2, 3, &a, &b, f).entry(0, 0), f.one());
        assert_eq!(flip(FlipKind::Varrho, 1, 2, &a, &b, f).entry(0, 0), f.from_i64(-1));
        assert_eq!(flip(FlipKind::Sigma, 3, 5, &a, &b, f).entry(0, 0), f.one());
    }

    #[test]
    fn flip_permutes_legs() {
        let a = BasedSpace::standard(2);
        let b = BasedSpace::standard(3);
        let s = flip(FlipKind::Sigma, 0, 0, &a, &b, q());
        // a1 ⊗ b2 (index 1*3+2 = 5) goes to b2 ⊗ a1 (index 2*2+1 = 5).
        assert_eq!(s.column(5).entries()[0].0, 5);
        // a0 ⊗ b1 (index 1) goes to b1 ⊗ a0 (index 2).
        assert_eq!(s.column(1).entries()[0].0, 2);
    }

    #[test]
    fn kronecker_small_cases() {
        let f = LinearMap::from_i64_rows(q(), &[vec![2]]);
        let g = LinearMap::from_i64_rows(q(), &[vec![3]]);
        assert_eq!(tensor_map(&f, &g).entry(0, 0), q().from_i64(6));
        let id2 = LinearMap::identity(BasedSpace::standard(2), q());
        let id3 = LinearMap::identity(BasedSpace::standard(3), q());
        assert!(tensor_map(&id2, &id3).matrix_eq(&LinearMap::identity(BasedSpace::standard(6), q())));
        let z = LinearMap::zero(BasedSpace::standard(2), BasedSpace::standard(2), q());
        assert!(tensor_map(&z, &id3).is_zero());
    }

    #[test]
    fn koszul_sides() {
        let d = LinearMap::from_i64_rows(q(), &[vec![1, 1]]);
        let p = BasedSpace::standard(2);
        let right0 = koszul_extend(&d, Side::Right, &p, 0);
        let right1 = koszul_extend(&d, Side::Right, &p, 1);
        let plain = tensor_map(&LinearMap::identity(p.clone(), q()), &d);
        assert!(right0.matrix_eq(&plain));
        assert!(right1.matrix_eq(&plain.scale(&q().from_i64(-1))));
    }

    #[test]
    fn koszul_sum_squares_to_zero() {
        // Two-term complexes 1 -> 1 with d = 1, graded 1 -> 0 on each leg.
        let f = q();
        let d = LinearMap::from_i64_rows(f, &[vec![1]]);
        let zero = LinearMap::from_i64_rows(f, &[vec![0]]);
        // total differential on the degree-2 part A1⊗B1 -> A0⊗B1 ⊕ A1⊗B0,
        // then down to A0⊗B0; composite must vanish.
        let one = BasedSpace::standard(1);
        let left_top = koszul_extend(&d, Side::Left, &one, 1); // A1⊗B1 -> A0⊗B1
        let right_top = koszul_extend(&d, Side::Right, &one, 1); // A1⊗B1 -> A1⊗B0, sign (-1)^1
        let right_low = koszul_extend(&d, Side::Right, &one, 0); // A0⊗B1 -> A0⊗B0
        let left_low = koszul_extend(&d, Side::Left, &one, 0); // A1⊗B0 -> A0⊗B0
        let total = right_low
            .compose(&left_top)
            .unwrap()
            .add(&left_low.compose(&right_top).unwrap())
            .unwrap();
        assert!(total.is_zero());
        assert!(zero.is_zero());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinearMap> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(cols).map(|c| c.to_vec()).collect();
            LinearMap::from_i64_rows(FieldSpec::Rationals, &rows)
        })
    }

    proptest! {
        #[test]
        fn tensor_map_is_functorial(
            f1 in small_matrix(2, 2), f2 in small_matrix(3, 2),
            g1 in small_matrix(2, 3), g2 in small_matrix(2, 2),
        ) {
            let lhs = tensor_map(&f2.compose(&f1).unwrap(), &g2.compose(&g1).unwrap());
            let rhs = tensor_map(&f2, &g2).compose(&tensor_map(&f1, &g1)).unwrap();
            prop_assert!(lhs.matrix_eq(&rhs));
        }

        #[test]
        fn flips_are_involutive(da in 0i64..6, db in 0i64..6) {
            let a = BasedSpace::standard(2);
            let b = BasedSpace::standard(3);
            for kind in [FlipKind::Sigma, FlipKind::Tau, FlipKind::Rho] {
                let there = flip(kind, da, db, &a, &b, q());
                let back = flip(kind, db, da, &b, &a, q());
                prop_assert!(back.compose(&there).unwrap().matrix_eq(&LinearMap::identity(BasedSpace::tensor2(&a, &b), q())));
            }
            // The mixed flip is not symmetric in its degrees; its round trip is
            // the product of the two signs.
            let there = flip(FlipKind::Varrho, da, db, &a, &b, q());
            let back = flip(FlipKind::Varrho, db, da, &b, &a, q());
            let expected = q().sign(FlipKind::Varrho.sign_exponent(da, db) + FlipKind::Varrho.sign_exponent(db, da));
            let id = LinearMap::identity(BasedSpace::tensor2(&a, &b), q()).scale(&expected);
            prop_assert!(back.compose(&there).unwrap().matrix_eq(&id));
        }

        #[test]
        fn cyclic_flip_identities(da in 0i64..5, db in 0i64..5, dc in 0i64..5) {
            // ξ := (id⊗τ)∘(τ⊗id) on A⊗B⊗C, with the degrees carried along.
            let f = q();
            let (a, b, c) = (BasedSpace::standard(1), BasedSpace::standard(2), BasedSpace::standard(2));
            let ida = |s: &BasedSpace| LinearMap::identity(s.clone(), f);
            let tau = |x: &BasedSpace, dx: i64, y: &BasedSpace, dy: i64| flip(FlipKind::Tau, dx, dy, x, y, f);
            // one application of ξ on a⊗b⊗c: (τ⊗id) → b⊗a⊗c, then (id⊗τ) → b⊗c⊗a
            let xi = |x: (&BasedSpace, i64), y: (&BasedSpace, i64), z: (&BasedSpace, i64)| {
                let first = tensor_map(&tau(x.0, x.1, y.0, y.1), &ida(z.0));
                let second = tensor_map(&ida(y.0), &tau(x.0, x.1, z.0, z.1));
                second.compose(&first).unwrap()
            };
            let x1 = xi((&a, da), (&b, db), (&c, dc));
            let x2 = xi((&b, db), (&c, dc), (&a, da));
            let x3 = xi((&c, dc), (&a, da), (&b, db));
            let cube = x3.compose(&x2.compose(&x1).unwrap()).unwrap();
            let id3 = LinearMap::identity(BasedSpace::tensor(vec![a.clone(), b.clone(), c.clone()]), f);
            prop_assert!(cube.matrix_eq(&id3));
            // ξ ∘ (τ⊗id) = id⊗τ, starting from b⊗a⊗c.
            let t = tensor_map(&tau(&b, db, &a, da), &ida(&c));
            let lhs = xi((&a, da), (&b, db), (&c, dc)).compose(&t).unwrap();
            let rhs = tensor_map(&ida(&b), &tau(&a, da, &c, dc));
            prop_assert!(lhs.matrix_eq(&rhs));
        }
    }
}
