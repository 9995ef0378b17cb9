//! Small dense linear algebra over a [`Field`].

use crate::gf::Field;

pub type Mat3<E> = [[E; 3]; 3];

pub fn identity<F: Field>(f: &F) -> Mat3<F::Elem> {
    let mut m = [[f.zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

pub fn mat_from_i64<F: Field>(f: &F, m: [[i64; 3]; 3]) -> Mat3<F::Elem> {
    m.map(|row| row.map(|v| f.from_i64(v)))
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat3<F::Elem>, b: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = f.zero();
            for k in 0..3 {
                s = f.add(s, f.mul(a[i][k], b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn transpose<E: Copy>(a: &Mat3<E>) -> Mat3<E> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Mat3<F::Elem>, b: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = f.add(a[i][j], b[i][j]);
        }
    }
    out
}

pub fn mat_scale<F: Field>(f: &F, a: &Mat3<F::Elem>, s: F::Elem) -> Mat3<F::Elem> {
    a.map(|row| row.map(|v| f.mul(v, s)))
}

pub fn det<F: Field>(f: &F, m: &Mat3<F::Elem>) -> F::Elem {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

pub fn inverse<F: Field>(f: &F, m: &Mat3<F::Elem>) -> Option<Mat3<F::Elem>> {
    let d = f.inv(det(f, m)).ok()?;
    let mut out = [[f.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            let cof = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
            out[i][j] = f.mul(cof, d);
        }
    }
    Some(out)
}

/// `Mᵀ A M`.
pub fn congruence<F: Field>(f: &F, m: &Mat3<F::Elem>, a: &Mat3<F::Elem>) -> Mat3<F::Elem> {
    mat_mul(f, &transpose(m), &mat_mul(f, a, m))
}

pub fn is_symmetric<E: Copy + Eq>(a: &Mat3<E>) -> bool {
    a[0][1] == a[1][0] && a[0][2] == a[2][0] && a[1][2] == a[2][1]
}

pub fn mat_rank<F: Field>(f: &F, a: &Mat3<F::Elem>) -> usize {
    let mut rows = *a;
    rref_array(f, &mut rows)
}

/// Row-reduces in place to reduced row-echelon form and returns the rank.
/// Zero rows end up at the bottom.
pub fn rref_array<F: Field, const R: usize, const C: usize>(
    f: &F,
    m: &mut [[F::Elem; C]; R],
) -> usize {
    let mut rank = 0;
    for col in 0..C {
        if rank == R {
            break;
        }
        let Some(piv) = (rank..R).find(|&r| !f.is_zero(m[r][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][col]).unwrap();
        for v in m[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = m[rank];
        for r in 0..R {
            if r == rank {
                continue;
            }
            let c = m[r][col];
            if f.is_zero(c) {
                continue;
            }
            for (v, &pv) in m[r].iter_mut().zip(pivot_row.iter()) {
                *v = f.sub(*v, f.mul(c, pv));
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row-echelon form of a ragged-free row list; zero rows are dropped.
/// Returns the pivot columns.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&r| !f.is_zero(rows[r][col])) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]).unwrap();
        for v in rows[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let c = row[col];
            if f.is_zero(c) {
                continue;
            }
            for (v, &pv) in row.iter_mut().zip(pivot_row.iter()) {
                *v = f.sub(*v, f.mul(c, pv));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{v : M v = 0}` for the matrix with the given rows.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &pc) in m.iter().zip(pivots.iter()) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Coefficients `x` with `Σ x_j cols[j] = target`, if any.
pub fn solve_combination<F: Field>(
    f: &F,
    cols: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let n = cols.len();
    let rows: Vec<Vec<F::Elem>> = (0..target.len())
        .map(|i| {
            let mut r: Vec<F::Elem> = cols.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut m = rows;
    let pivots = rref(f, &mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (row, &pc) in m.iter().zip(pivots.iter()) {
        x[pc] = row[n];
    }
    Some(x)
}

/// Whether the row space of `a` is contained in that of `b`.
pub fn row_space_contains<F: Field>(f: &F, b: &[Vec<F::Elem>], a: &[Vec<F::Elem>]) -> bool {
    let rb = rank(f, b);
    let mut all = b.to_vec();
    all.extend_from_slice(a);
    rank(f, &all) == rb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fp, PrimeField};

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let f = f7();
        let m = mat_from_i64(&f, [[1, 2, 3], [0, 1, 4], [5, 6, 0]]);
        assert_eq!(det(&f, &m), f.elem(1));
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), identity(&f));
        let sing = mat_from_i64(&f, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(inverse(&f, &sing).is_none());
        assert_eq!(mat_rank(&f, &sing), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = f7();
        let rows: Vec<Vec<Fp>> = [[1, 2, 3, 4], [2, 4, 6, 2], [0, 0, 0, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| f.elem(v)).collect())
            .collect();
        let ker = kernel(&f, &rows, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &rows {
                let dot = r
                    .iter()
                    .zip(v)
                    .fold(Fp(0), |s, (&a, &b)| f.add(s, f.mul(a, b)));
                assert_eq!(dot, Fp(0));
            }
        }
    }

    #[test]
    fn solve_and_containment() {
        let f = f7();
        let cols = vec![
            vec![f.elem(1), f.elem(0), f.elem(1)],
            vec![f.elem(0), f.elem(1), f.elem(1)],
        ];
        let x = solve_combination(&f, &cols, &[f.elem(3), f.elem(4), f.elem(0)]).unwrap();
        assert_eq!(x, vec![f.elem(3), f.elem(4)]);
        assert!(solve_combination(&f, &cols, &[f.elem(1), f.elem(1), f.elem(1)]).is_none());
        assert!(row_space_contains(
            &f,
            &cols,
            &[vec![f.elem(2), f.elem(2), f.elem(4)]]
        ));
    }

    #[test]
    fn rref_array_matches_vec_rref() {
        let f = f7();
        let mut a = [
            [f.elem(2), f.elem(4), f.elem(1)],
            [f.elem(1), f.elem(2), f.elem(5)],
        ];
        let mut v: Vec<Vec<Fp>> = a.iter().map(|r| r.to_vec()).collect();
        let r = rref_array(&f, &mut a);
        let piv = rref(&f, &mut v);
        assert_eq!(r, piv.len());
        assert_eq!(a[0].to_vec(), v[0]);
        assert_eq!(a[1].to_vec(), v[1]);
    }
}
