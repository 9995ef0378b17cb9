//! Dense univariate polynomials over a [`Field`], lowest degree first.
//!
//! The zero polynomial is the empty vector; results are always trimmed.

use crate::gf::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, a: &mut Poly<F::Elem>) {
    while a.last().is_some_and(|&c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn trimmed<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let mut v = a.to_vec();
    trim(f, &mut v);
    v
}

/// Degree of a trimmed polynomial, `None` for zero.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let mut out: Poly<F::Elem> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(f.zero());
            let y = b.get(i).copied().unwrap_or(f.zero());
            f.add(x, y)
        })
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let neg: Poly<F::Elem> = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &neg)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], s: F::Elem) -> Poly<F::Elem> {
    let mut out: Poly<F::Elem> = a.iter().map(|&c| f.mul(c, s)).collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let mut out: Poly<F::Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_i64(i as i64)))
        .collect();
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `m` must be nonzero and trimmed.
pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = f
        .inv(m[dm])
        .expect("trimmed divisor has a nonzero leading coefficient");
    let mut r = trimmed(f, a);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - dm];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
        }
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
    div_rem(f, a, m).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let a = trimmed(f, a);
    match a.last() {
        None => a,
        Some(&lead) => scale(f, &a, f.inv(lead).unwrap()),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut x = trimmed(f, a);
    let mut y = trimmed(f, b);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Poly<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// `x^(q^k) mod m` where q is the field order.
fn frobenius_power<F: Field>(f: &F, k: u32, m: &[F::Elem]) -> Poly<F::Elem> {
    let x = [f.zero(), f.one()];
    let mut h = rem(f, &x, m);
    for _ in 0..k {
        h = powmod(f, &h, f.order(), m);
    }
    h
}

/// Product of the distinct roots of `a` lying in the field (monic).
pub fn rational_part<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return vec![f.one()];
    }
    let h = frobenius_power(f, 1, &a);
    gcd(f, &a, &sub(f, &h, &[f.zero(), f.one()]))
}

/// Fields up to this order find roots by evaluating at every element.
const SMALL_FIELD: u128 = 128;

/// Distinct roots in the field, sorted by element index.
pub fn roots<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    if f.order() <= SMALL_FIELD && degree(a).is_some_and(|d| d > 0) {
        return (0..f.order() as u64)
            .map(|i| f.element(i))
            .filter(|&x| f.is_zero(eval(f, a, x)))
            .collect();
    }
    let g = rational_part(f, a);
    let mut out = Vec::new();
    split_linear(f, &g, &mut out);
    out.sort_by_key(|&r| f.index_of(r));
    out
}

/// Splits a monic squarefree product of linear factors (equal-degree splitting
/// with deterministic shifts).
fn split_linear<F: Field>(f: &F, g: &[F::Elem], out: &mut Vec<F::Elem>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.div(g[0], g[1]).unwrap())),
        Some(d) => {
            let half = (f.order() - 1) / 2;
            for idx in 0..f.order() as u64 {
                let t = [f.element(idx), f.one()];
                let s = sub(f, &powmod(f, &t, half, g), &[f.one()]);
                let h = gcd(f, g, &s);
                let dh = degree(&h).unwrap_or(0);
                if dh > 0 && dh < d {
                    let (q, _) = div_rem(f, g, &h);
                    split_linear(f, &h, out);
                    split_linear(f, &monic(f, &q), out);
                    return;
                }
            }
            // unreachable for odd q: some shift always separates two roots
            for idx in 0..f.order() as u64 {
                let x = f.element(idx);
                if f.is_zero(eval(f, g, x)) {
                    out.push(x);
                }
            }
        }
    }
}

/// Multiplicity of `r` as a root of the nonzero polynomial `a`.
pub fn root_multiplicity<F: Field>(f: &F, a: &[F::Elem], r: F::Elem) -> usize {
    let lin = [f.neg(r), f.one()];
    let mut cur = trimmed(f, a);
    let mut m = 0;
    while !cur.is_empty() {
        let (q, rr) = div_rem(f, &cur, &lin);
        if !rr.is_empty() {
            break;
        }
        m += 1;
        cur = q;
    }
    m
}

/// Irreducibility over the field for degree ≤ 7 polynomials: no factor of
/// degree at most half the degree, detected via `gcd(a, x^(q^j) - x)`.
pub fn is_irreducible<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    let a = monic(f, a);
    let Some(d) = degree(&a) else { return false };
    if d == 0 {
        return false;
    }
    let x = [f.zero(), f.one()];
    let mut h = rem(f, &x, &a);
    for _ in 1..=d / 2 {
        h = powmod(f, &h, f.order(), &a);
        let g = gcd(f, &a, &sub(f, &h, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fp, PrimeField};

    fn fp(f: &PrimeField, v: &[i64]) -> Vec<Fp> {
        trimmed(f, &v.iter().map(|&x| f.elem(x)).collect::<Vec<_>>())
    }

    #[test]
    fn division_identity() {
        let f = PrimeField::new(7).unwrap();
        let a = fp(&f, &[3, 0, 5, 1, 6, 2]);
        let m = fp(&f, &[1, 4, 3]);
        let (q, r) = div_rem(&f, &a, &m);
        assert!(r.len() < m.len());
        assert_eq!(add(&f, &mul(&f, &q, &m), &r), a);
    }

    #[test]
    fn roots_match_brute_force() {
        let f = PrimeField::new(13).unwrap();
        for seed in 0..200i64 {
            let coeffs: Vec<i64> = (0..5)
                .map(|i| (seed * 7 + i * i * 3 + seed * i) % 13)
                .collect();
            let a = fp(&f, &coeffs);
            if a.is_empty() {
                continue;
            }
            let brute: Vec<Fp> = (0..13)
                .map(Fp)
                .filter(|&x| eval(&f, &a, x) == Fp(0))
                .collect();
            assert_eq!(roots(&f, &a), brute, "poly {coeffs:?}");
        }
    }

    #[test]
    fn multiplicity_counts() {
        let f = PrimeField::new(5).unwrap();
        // (x-1)^3 (x+2)
        let a = mul(
            &f,
            &mul(&f, &fp(&f, &[-1, 1]), &fp(&f, &[-1, 1])),
            &mul(&f, &fp(&f, &[-1, 1]), &fp(&f, &[2, 1])),
        );
        assert_eq!(root_multiplicity(&f, &a, Fp(1)), 3);
        assert_eq!(root_multiplicity(&f, &a, Fp(3)), 1);
        assert_eq!(root_multiplicity(&f, &a, Fp(0)), 0);
    }

    #[test]
    fn irreducibility_small_cases() {
        let f = PrimeField::new(5).unwrap();
        assert!(is_irreducible(&f, &fp(&f, &[2, 0, 1])));
        assert!(!is_irreducible(&f, &fp(&f, &[1, 0, 1])));
        // (x^2+2)^2 has no roots but is reducible
        let sq = mul(&f, &fp(&f, &[2, 0, 1]), &fp(&f, &[2, 0, 1]));
        assert!(!is_irreducible(&f, &sq));
        let count = (0..125)
            .filter(|&i| is_irreducible(&f, &fp(&f, &[i % 5, (i / 5) % 5, i / 25, 1])))
            .count();
        // number of monic irreducible cubics over F_5 is (125 - 5) / 3
        assert_eq!(count, 40);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = PrimeField::new(11).unwrap();
        let c = fp(&f, &[3, 1]);
        let a = mul(&f, &c, &fp(&f, &[1, 2, 5]));
        let b = mul(&f, &c, &fp(&f, &[4, 7]));
        assert_eq!(gcd(&f, &a, &b), c);
        assert_eq!(gcd(&f, &[], &[]), Vec::<Fp>::new());
    }
}
