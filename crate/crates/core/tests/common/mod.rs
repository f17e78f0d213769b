// Independent oracles: differentials, dual bases and ranks recomputed
// straight from the structure constants of a presentation, with their own
// Gaussian elimination. Nothing here calls the crate's linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use cooperad_lab::cooperad::TruncatedCooperad;
use cooperad_lab::derived::SummedMap;
use cooperad_lab::exactlinalg::{FieldElement, FieldSpec, LinearMap};
use cooperad_lab::instances::{builtin, validate, PresentationKind, RawPresentation, Validated};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// A linear combination of words in the basis indices.
pub type Chain = BTreeMap<Vec<usize>, Q>;

fn add_to(chain: &mut Chain, word: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = chain.entry(word.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        chain.remove(&word);
    }
}

/// Structure constants of a presentation, as plain rationals.
#[derive(Clone, Debug)]
pub struct Constants {
    pub kind: PresentationKind,
    pub labels: Vec<String>,
    /// `mult[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    pub mult: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
    /// `comult[i][j][k]`: coefficient of `e_j ⊗ e_k` in `δ(e_i)`.
    pub comult: Vec<Vec<Vec<Q>>>,
    pub counit: Vec<Q>,
    pub functional: Vec<Q>,
}

fn rationals(v: &[cooperad_lab::instances::Coeff]) -> Vec<Q> {
    v.iter().map(|c| c.to_rational().expect("rational constant")).collect()
}

impl Constants {
    pub fn new(raw: &RawPresentation) -> Self {
        let cube = |t: &Vec<Vec<Vec<cooperad_lab::instances::Coeff>>>| {
            t.iter().map(|row| row.iter().map(|cell| rationals(cell)).collect()).collect()
        };
        Constants {
            kind: raw.kind,
            labels: raw.basis.clone(),
            mult: cube(&raw.mult),
            unit: rationals(&raw.unit),
            comult: raw.comult.as_ref().map(cube).unwrap_or_default(),
            counit: raw.counit.as_deref().map(rationals).unwrap_or_default(),
            functional: raw.frobenius_functional.as_deref().map(rationals).unwrap_or_default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_frobenius(&self) -> bool {
        self.kind == PresentationKind::Frobenius
    }

    /// Product of two vectors in the basis `e_k`.
    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    out[k] += &a[i] * &b[j] * &self.mult[i][j][k];
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        (0..self.dim()).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
    }

    pub fn eps(&self, a: &[Q]) -> Q {
        a.iter().zip(&self.functional).map(|(x, y)| x * y).sum()
    }

    fn counit_of(&self, i: usize) -> Q {
        self.counit[i].clone()
    }

    /// `e^j = Σ_k dual[j][k] e_k` with `ε(e^j e_i) = δ_ij`.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        // Unknown row x_j: Σ_k x_jk ε(e_k e_i) = δ_ji, i.e. x_j G = e_j.
        let gram: Vec<Vec<Q>> =
            (0..d).map(|k| (0..d).map(|i| self.eps(&self.mul(&self.basis(k), &self.basis(i)))).collect()).collect();
        let gt: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|k| gram[k][i].clone()).collect()).collect();
        (0..d).map(|j| solve_q(&gt, &self.basis(j)).expect("nondegenerate pairing")).collect()
    }

    /// `σ` with `ε(ab) = ε(σ(b) a)`, as `sigma[b]` in the basis.
    pub fn nakayama(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        // For fixed b: Σ_k s_k ε(e_k e_a) = ε(e_a e_b) for every a.
        let rows: Vec<Vec<Q>> =
            (0..d).map(|a| (0..d).map(|k| self.eps(&self.mul(&self.basis(k), &self.basis(a)))).collect()).collect();
        (0..d)
            .map(|b| {
                let rhs: Vec<Q> = (0..d).map(|a| self.eps(&self.mul(&self.basis(a), &self.basis(b)))).collect();
                solve_q(&rows, &rhs).expect("nondegenerate pairing")
            })
            .collect()
    }
}

/// The Hopf-homology differential
/// `(b₁,…,bₙ) ↦ ε(b₁)(b₂,…) + Σ (-1)^i (…, bᵢbᵢ₊₁, …) + (-1)^n (…, b_{n-1})ε(bₙ)`.
pub fn hopf_differential(k: &Constants, word: &[usize]) -> Chain {
    let n = word.len();
    let mut out = Chain::new();
    if n == 0 {
        return out;
    }
    add_to(&mut out, word[1..].to_vec(), k.counit_of(word[0]));
    for i in 1..n {
        let sign = if i % 2 == 0 { q(1) } else { q(-1) };
        let prod = k.mul(&k.basis(word[i - 1]), &k.basis(word[i]));
        for (l, c) in prod.iter().enumerate() {
            let mut w = word[..i - 1].to_vec();
            w.push(l);
            w.extend_from_slice(&word[i + 1..]);
            add_to(&mut out, w, &sign * c);
        }
    }
    let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
    add_to(&mut out, word[..n - 1].to_vec(), sign * k.counit_of(word[n - 1]));
    out
}

/// The Hochschild differential with the last face twisted by `σ`:
/// `dᵢ` multiplies `aᵢaᵢ₊₁` and `dₙ(a₀,…,aₙ) = (σ(aₙ)a₀, a₁, …, a_{n-1})`.
pub fn hochschild_differential(k: &Constants, sigma: &[Vec<Q>], word: &[usize]) -> Chain {
    let n = word.len() - 1;
    let mut out = Chain::new();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let sign = if i % 2 == 0 { q(1) } else { q(-1) };
        let prod = k.mul(&k.basis(word[i]), &k.basis(word[i + 1]));
        for (l, c) in prod.iter().enumerate() {
            let mut w = word[..i].to_vec();
            w.push(l);
            w.extend_from_slice(&word[i + 2..]);
            add_to(&mut out, w, &sign * c);
        }
    }
    let sign = if n.is_multiple_of(2) { q(1) } else { q(-1) };
    let prod = k.mul(&sigma[word[n]], &k.basis(word[0]));
    for (l, c) in prod.iter().enumerate() {
        let mut w = vec![l];
        w.extend_from_slice(&word[1..n]);
        add_to(&mut out, w, &sign * c);
    }
    out
}

/// Pure deconcatenation `Σ_j (x₁…x_j) ⊗ (x_{j+1}…xₙ)`, trivial splits included.
pub fn deconcatenation(word: &[usize]) -> BTreeMap<(Vec<usize>, Vec<usize>), Q> {
    (0..=word.len()).map(|j| ((word[..j].to_vec(), word[j..].to_vec()), q(1))).collect()
}

/// `Σ_{j=1}^{n+1} Σ_k (e^k, a₁…a_{j-1}) ⊗ (a₀e_k, a_j…aₙ)` on a Hochschild word.
pub fn frobenius_cup(k: &Constants, word: &[usize]) -> BTreeMap<(Vec<usize>, Vec<usize>), Q> {
    let dual = k.dual_basis();
    let n = word.len() - 1;
    let mut out: BTreeMap<(Vec<usize>, Vec<usize>), Q> = BTreeMap::new();
    for j in 1..=n + 1 {
        for (kk, ek_dual) in dual.iter().enumerate() {
            let right_head = k.mul(&k.basis(word[0]), &k.basis(kk));
            for (l, cl) in ek_dual.iter().enumerate() {
                for (m, cm) in right_head.iter().enumerate() {
                    let c = cl * cm;
                    if c.is_zero() {
                        continue;
                    }
                    let mut left = vec![l];
                    left.extend_from_slice(&word[1..j]);
                    let mut right = vec![m];
                    right.extend_from_slice(&word[j..]);
                    let e = out.entry((left, right)).or_insert_with(Q::zero);
                    *e += c;
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All words of a given length over `d` letters, first letter most significant.
pub fn words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Number of letters in a basis word of arity `n`.
pub fn word_len(k: &Constants, n: u32) -> usize {
    n as usize + usize::from(k.is_frobenius())
}

/// The oracle differential `C(n) → C(n-1)` as a dense matrix over ℚ.
pub fn differential_matrix(k: &Constants, n: u32) -> Vec<Vec<Q>> {
    let d = k.dim();
    let sigma = if k.is_frobenius() { k.nakayama() } else { Vec::new() };
    let rows = words(d, word_len(k, n - 1));
    let index: BTreeMap<Vec<usize>, usize> = rows.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let cols = words(d, word_len(k, n));
    let mut m = vec![vec![Q::zero(); cols.len()]; rows.len()];
    for (c, w) in cols.iter().enumerate() {
        let image = if k.is_frobenius() { hochschild_differential(k, &sigma, w) } else { hopf_differential(k, w) };
        for (v, coeff) in image {
            m[index[&v]][c] = coeff;
        }
    }
    m
}

/// Solves `a x = b` over ℚ, if solvable.
pub fn solve_q(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Rank over ℚ by fraction-free elimination on integer rows.
pub fn rank_q(a: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = &m[i][j] * &pivot - &f * &m[rank][j];
                m[i][j] = t;
            }
            let g = m[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn residue(x: &Q, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let num = x.numer().mod_floor(&pm);
    let den = x.denom().mod_floor(&pm);
    assert!(!den.is_zero(), "denominator divisible by {p}");
    let inv = den.modpow(&BigInt::from(p - 2), &pm);
    let r = (num * inv).mod_floor(&pm);
    u64::try_from(r).expect("residue fits")
}

/// Rank over `𝔽_p` of the reduction of a rational matrix.
pub fn rank_mod_p(a: &[Vec<Q>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|x| residue(x, p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = (m[i][c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let t = (f as u128 * m[rank][j] as u128 % p as u128) as u64;
                m[i][j] = (m[i][j] + p - t) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn rank_in(a: &[Vec<Q>], field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_q(a),
        FieldSpec::PrimeField(p) => rank_mod_p(a, p),
    }
}

/// `dim H(n)` for `n ≤ top`, from the oracle differential and rank.
pub fn oracle_dims(k: &Constants, field: FieldSpec, top: u32) -> Vec<usize> {
    let dim = |n: u32| k.dim().pow(word_len(k, n) as u32);
    let ranks: Vec<usize> = (1..=top + 1).map(|n| rank_in(&differential_matrix(k, n), field)).collect();
    (0..=top)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { ranks[n as usize - 1] };
            dim(n) - out_rank - ranks[n as usize]
        })
        .collect()
}

/// The word behind a crate basis label such as `g⊗1`; the empty word is
/// whatever single label the scalar space uses.
pub fn parse_word(k: &Constants, label: &str, arity: u32) -> Vec<usize> {
    if word_len(k, arity) == 0 {
        return Vec::new();
    }
    label
        .split('⊗')
        .map(|l| k.labels.iter().position(|x| x == l).unwrap_or_else(|| panic!("unknown letter {l} in {label}")))
        .collect()
}

/// Renders an oracle coefficient in `field`, for comparison with the crate.
pub fn in_field(x: &Q, field: FieldSpec) -> FieldElement {
    field.from_rational(x).expect("coefficient is defined in the field")
}

/// Compares a crate map `C(n) → C(n-1)` with the oracle, column by column.
/// Returns the first mismatch as text.
pub fn compare_differential(k: &Constants, field: FieldSpec, d: &LinearMap, n: u32) -> Result<(), String> {
    let sigma = if k.is_frobenius() { k.nakayama() } else { Vec::new() };
    for col in 0..d.ncols() {
        let label = d.domain().label(col);
        let word = parse_word(k, &label, n);
        let expected = if k.is_frobenius() { hochschild_differential(k, &sigma, &word) } else { hopf_differential(k, &word) };
        let mut got: BTreeMap<Vec<usize>, FieldElement> = BTreeMap::new();
        for (row, c) in d.column(col).entries() {
            got.insert(parse_word(k, &d.codomain().label(*row), n - 1), c.clone());
        }
        let expected: BTreeMap<Vec<usize>, FieldElement> = expected
            .iter()
            .map(|(w, c)| (w.clone(), in_field(c, field)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if got != expected {
            return Err(format!("d_{n} on {label}: crate {got:?}, oracle {expected:?}"));
        }
    }
    Ok(())
}

/// A builtin, validated over its own field, with its oracle constants.
pub fn instance(name: &str) -> (Validated, Constants, FieldSpec) {
    let b = builtin(name).expect("builtin");
    let (v, _) = validate(b.raw.over(b.default_field).expect("interpretable")).expect("valid");
    (v, Constants::new(&b.raw), b.default_field)
}

/// Sweedler's algebra `⟨g, x | g² = 1, x² = 0, xg = -gx⟩` with the
/// functional picking the `gx` coefficient. The pairing is not symmetric:
/// the Nakayama automorphism is `g ↦ -g`, `x ↦ -x`, `gx ↦ gx`.
pub const TWISTED_FROBENIUS: &str = r#"{
    "kind": "frobenius",
    "name": "sweedler_frobenius",
    "dim": 4,
    "basis": ["1", "g", "x", "gx"],
    "mult": [
        [[1,0,0,0], [0,1,0,0], [0,0,1,0], [0,0,0,1]],
        [[0,1,0,0], [1,0,0,0], [0,0,0,1], [0,0,1,0]],
        [[0,0,1,0], [0,0,0,-1], [0,0,0,0], [0,0,0,0]],
        [[0,0,0,1], [0,0,-1,0], [0,0,0,0], [0,0,0,0]]
    ],
    "unit": [1, 0, 0, 0],
    "frobenius_functional": [0, 0, 0, 1]
}"#;

pub fn twisted_instance() -> (Validated, Constants, FieldSpec) {
    let raw = RawPresentation::from_json(TWISTED_FROBENIUS).expect("parses");
    let (v, _) = validate(raw.over(FieldSpec::Rationals).expect("interpretable")).expect("valid");
    (v, Constants::new(&raw), FieldSpec::Rationals)
}

/// Closed-form count of coassociativity relations with source arity ≤ `n`:
/// `p(p+q-1)` generic placements per `(p, q, r)` plus `p·r` second `q = 0`
/// equations, summed over `p + q + r = m + 2`.
pub fn coassociativity_count(n: u32) -> usize {
    let mut total = 0usize;
    for m in 0..=n as usize {
        let s = m + 2;
        for p in 1..=s {
            for q in 0..=s - p {
                let r = s - p - q;
                total += p * (p + q - 1);
                if q == 0 && r >= 1 {
                    total += p * r;
                }
            }
        }
    }
    total
}

pub type TensorCoefficients = BTreeMap<(Vec<usize>, Vec<usize>), FieldElement>;

/// Coefficients of a cup coproduct column, keyed by the pair of words.
pub fn crate_cup(k: &Constants, c: &TruncatedCooperad, cup: &SummedMap, col: usize) -> TensorCoefficients {
    let mut out = BTreeMap::new();
    for (legs, map) in &cup.components {
        let (a, b) = (legs[0], legs[1]);
        let (sa, sb) = (c.space(a).unwrap(), c.space(b).unwrap());
        for (idx, coeff) in map.column(col).entries() {
            let left = parse_word(k, &sa.label(idx / sb.dim()), a);
            let right = parse_word(k, &sb.label(idx % sb.dim()), b);
            out.insert((left, right), coeff.clone());
        }
    }
    out
}

