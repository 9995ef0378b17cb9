//! Subspaces of the space of symmetric 3×3 matrices over `F_p`.
//!
//! A symmetric matrix is stored by its coordinates `(m11, m12, m13, m22,
//! m23, m33)`. An `R`-dimensional subspace is kept as the reduced row-echelon
//! form of an `R × 6` coordinate matrix, which is unique per subspace.

use serde::{Deserialize, Serialize};

use crate::gf::{Field, Fp, PrimeField};
use crate::linalg::{self, Mat3};

pub const SYM_INDEX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

pub fn to_coords<E: Copy>(m: &Mat3<E>) -> [E; 6] {
    SYM_INDEX.map(|(i, j)| m[i][j])
}

pub fn from_coords<E: Copy>(c: &[E; 6]) -> Mat3<E> {
    let mut m = [[c[0]; 3]; 3];
    for (k, &(i, j)) in SYM_INDEX.iter().enumerate() {
        m[i][j] = c[k];
        m[j][i] = c[k];
    }
    m
}

/// The symmetric matrix with a 1 at `(i, j)` and `(j, i)`.
pub fn sym_unit<F: Field>(f: &F, i: usize, j: usize) -> Mat3<F::Elem> {
    let mut m = [[f.zero(); 3]; 3];
    m[i][j] = f.one();
    m[j][i] = f.one();
    m
}

/// An `R`-dimensional subspace in canonical (reduced row-echelon) form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Subspace<const R: usize> {
    #[serde(with = "rows_serde")]
    rows: [[Fp; 6]; R],
}

mod rows_serde {
    use super::Fp;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const R: usize>(
        rows: &[[Fp; 6]; R],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<[u32; 6]> = rows.iter().map(|r| r.map(|c| c.0)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const R: usize>(
        d: D,
    ) -> Result<[[Fp; 6]; R], D::Error> {
        let v: Vec<[u32; 6]> = Vec::deserialize(d)?;
        let rows: Vec<[Fp; 6]> = v.into_iter().map(|r| r.map(Fp)).collect();
        rows.try_into()
            .map_err(|_| serde::de::Error::custom("wrong number of rows"))
    }
}

impl<const R: usize> Subspace<R> {
    /// Canonical form of the span of `rows`, or `None` if they are dependent.
    pub fn from_rows(f: &PrimeField, mut rows: [[Fp; 6]; R]) -> Option<Self> {
        (linalg::rref_array(f, &mut rows) == R).then_some(Self { rows })
    }

    pub fn from_matrices(f: &PrimeField, mats: &[Mat3<Fp>; R]) -> Option<Self> {
        Self::from_rows(f, mats.map(|m| to_coords(&m)))
    }

    pub fn rows(&self) -> &[[Fp; 6]; R] {
        &self.rows
    }

    /// The canonical basis as symmetric matrices.
    pub fn matrices(&self) -> [Mat3<Fp>; R] {
        self.rows.map(|r| from_coords(&r))
    }

    /// Image under a precomputed congruence.
    pub fn act(&self, f: &PrimeField, op: &CongruenceOp) -> Self {
        let rows = self.rows.map(|r| op.apply(f, &r));
        Self::from_rows(f, rows).expect("congruence by an invertible matrix preserves dimension")
    }

    pub fn contains(&self, f: &PrimeField, c: &[Fp; 6]) -> bool {
        let mut rows: Vec<Vec<Fp>> = self.rows.iter().map(|r| r.to_vec()).collect();
        rows.push(c.to_vec());
        linalg::rank(f, &rows) == R
    }
}

/// The linear map `A ↦ MᵀAM` on symmetric-matrix coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceOp {
    /// `cols[k]` is the image of the k-th coordinate basis vector.
    cols: [[Fp; 6]; 6],
}

impl CongruenceOp {
    pub fn new(f: &PrimeField, m: &Mat3<Fp>) -> Self {
        let mut cols = [[Fp(0); 6]; 6];
        for (k, &(i, j)) in SYM_INDEX.iter().enumerate() {
            let img = linalg::congruence(f, m, &sym_unit(f, i, j));
            // the coordinate vector e_k is the matrix with one symmetric pair set
            cols[k] = to_coords(&img);
        }
        Self { cols }
    }

    pub fn apply(&self, f: &PrimeField, c: &[Fp; 6]) -> [Fp; 6] {
        let mut out = [Fp(0); 6];
        for (k, &ck) in c.iter().enumerate() {
            if ck == Fp(0) {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.cols[k].iter()) {
                *o = f.add(*o, f.mul(ck, v));
            }
        }
        out
    }
}

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over F_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

#[derive(Clone, Debug)]
struct Pattern<const R: usize> {
    pivots: [usize; R],
    /// `(row, column)` of each free entry, in the order used for ranking.
    free: Vec<(usize, usize)>,
    offset: u64,
}

/// Bijection between canonical `R`-dimensional subspaces of F_p⁶ and
/// `0..len()`, ordered by pivot pattern and then by free entries.
#[derive(Clone, Debug)]
pub struct Grassmannian<const R: usize> {
    field: PrimeField,
    patterns: Vec<Pattern<R>>,
    by_mask: Vec<Option<usize>>,
    total: u64,
}

impl<const R: usize> Grassmannian<R> {
    pub fn new(field: PrimeField) -> Self {
        let p = field.p() as u64;
        let mut patterns = Vec::new();
        let mut by_mask = vec![None; 64];
        let mut offset = 0;
        for mask in 0u32..64 {
            if mask.count_ones() as usize != R {
                continue;
            }
            let pivots: Vec<usize> = (0..6).filter(|b| mask & (1 << b) != 0).collect();
            let pivots: [usize; R] = pivots.try_into().unwrap();
            let mut free = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..6 {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let count = p.pow(free.len() as u32);
            by_mask[mask as usize] = Some(patterns.len());
            patterns.push(Pattern {
                pivots,
                free,
                offset,
            });
            offset += count;
        }
        Self {
            field,
            patterns,
            by_mask,
            total: offset,
        }
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rank(&self, s: &Subspace<R>) -> u64 {
        let p = self.field.p() as u64;
        let mut mask = 0usize;
        for row in &s.rows {
            let pc = row
                .iter()
                .position(|&c| c != Fp(0))
                .expect("canonical rows are nonzero");
            mask |= 1 << pc;
        }
        let pat = &self.patterns[self.by_mask[mask].expect("pivot set of size R")];
        let mut idx = 0u64;
        for &(r, c) in &pat.free {
            idx = idx * p + s.rows[r][c].0 as u64;
        }
        pat.offset + idx
    }

    pub fn unrank(&self, idx: u64) -> Subspace<R> {
        assert!(idx < self.total, "index {idx} out of range");
        let p = self.field.p() as u64;
        let pos = self.patterns.partition_point(|pat| pat.offset <= idx) - 1;
        let pat = &self.patterns[pos];
        let mut rest = idx - pat.offset;
        let mut rows = [[Fp(0); 6]; R];
        for (r, &pc) in pat.pivots.iter().enumerate() {
            rows[r][pc] = Fp(1);
        }
        for &(r, c) in pat.free.iter().rev() {
            rows[r][c] = Fp((rest % p) as u32);
            rest /= p;
        }
        Subspace { rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(6, 3, 5), 2_558_556);
        assert_eq!(gaussian_binomial(6, 2, 5), 508_431);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 0, 7), 1);
    }

    #[test]
    fn grassmannian_sizes_match() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(Grassmannian::<3>::new(f).len(), gaussian_binomial(6, 3, 5));
        assert_eq!(Grassmannian::<2>::new(f).len(), gaussian_binomial(6, 2, 5));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(Grassmannian::<3>::new(f7).len(), gaussian_binomial(6, 3, 7));
    }

    #[test]
    fn rank_unrank_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let g = Grassmannian::<3>::new(f);
        for idx in (0..g.len()).step_by(9973) {
            let s = g.unrank(idx);
            assert_eq!(Subspace::from_rows(&f, *s.rows()), Some(s));
            assert_eq!(g.rank(&s), idx);
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let m = linalg::mat_from_i64(&f, [[1, 2, 3], [2, 4, 5], [3, 5, 6]]);
        assert_eq!(from_coords(&to_coords(&m)), m);
    }

    #[test]
    fn congruence_op_matches_matrix_product() {
        let f = PrimeField::new(7).unwrap();
        let m = linalg::mat_from_i64(&f, [[1, 2, 0], [3, 1, 4], [0, 5, 1]]);
        let a = linalg::mat_from_i64(&f, [[1, 2, 3], [2, 4, 5], [3, 5, 6]]);
        let op = CongruenceOp::new(&f, &m);
        assert_eq!(
            op.apply(&f, &to_coords(&a)),
            to_coords(&linalg::congruence(&f, &m, &a))
        );
    }
}
