//! Homogeneous forms in two and three variables.
//!
//! Ternary monomials are ordered lexicographically with `x > y > z`, so a
//! cubic is stored as `(x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³)` and a
//! quadric as `(x², xy, xz, y², yz, z²)`. A binary form of degree `d` is
//! stored as `c₀xᵈ + c₁xᵈ⁻¹y + … + c_d yᵈ`.

use std::sync::OnceLock;

use crate::gf::{ExtField, Field, FieldCtx, FieldError, Fp, Fq, PrimeField};
use crate::linalg::{self, Mat3};
use crate::poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormsError {
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("the form has a repeated component")]
    NonReducedInput,
    #[error("the common zero locus is not finite")]
    InfiniteLocus,
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

const MAX_DEGREE: usize = 8;

fn exponent_tables() -> &'static Vec<Vec<[u32; 3]>> {
    static TABLES: OnceLock<Vec<Vec<[u32; 3]>>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (0..=MAX_DEGREE as u32)
            .map(|d| {
                let mut v = Vec::new();
                for a in (0..=d).rev() {
                    for b in (0..=d - a).rev() {
                        v.push([a, b, d - a - b]);
                    }
                }
                v
            })
            .collect()
    })
}

/// Exponent vectors of the degree-`d` ternary monomials in storage order.
pub fn monomials(d: usize) -> &'static [[u32; 3]] {
    &exponent_tables()[d]
}

/// Position of `x^a y^b z^c` among the degree-`a+b+c` monomials.
pub fn monomial_index(e: [u32; 3]) -> usize {
    let d = (e[0] + e[1] + e[2]) as usize;
    // monomials with x-exponent above e[0] come first
    let before_x: usize = (e[0] as usize + 1..=d).map(|a| d - a + 1).sum();
    before_x + (d - e[0] as usize - e[1] as usize)
}

pub fn num_monomials(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// A homogeneous polynomial in `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryForm<E> {
    degree: usize,
    coeffs: Vec<E>,
}

pub type TernaryCubic<E> = TernaryForm<E>;
pub type TernaryQuadric<E> = TernaryForm<E>;

impl<E: Copy + Eq> TernaryForm<E> {
    pub fn new(degree: usize, coeffs: Vec<E>) -> Self {
        assert!(
            degree <= MAX_DEGREE,
            "degree {degree} exceeds the supported maximum"
        );
        assert_eq!(
            coeffs.len(),
            num_monomials(degree),
            "wrong coefficient count for degree {degree}"
        );
        Self { degree, coeffs }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F, degree: usize) -> Self {
        Self::new(degree, vec![f.zero(); num_monomials(degree)])
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, degree: usize, coeffs: &[i64]) -> Self {
        Self::new(degree, coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    /// The single monomial `c · x^a y^b z^c`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, e: [u32; 3]) -> Self {
        let mut out = Self::zero(f, (e[0] + e[1] + e[2]) as usize);
        out.coeffs[monomial_index(e)] = c;
        out
    }

    pub fn linear(l: [E; 3]) -> Self {
        Self::new(1, l.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> E {
        self.coeffs[monomial_index(e)]
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|&c| f.is_zero(c))
    }

    pub fn map<G: Copy + Eq>(&self, mut g: impl FnMut(E) -> G) -> TernaryForm<G> {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&c| g(c)).collect(),
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self::new(
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self::new(
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        )
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: E) -> Self {
        self.map(|c| f.mul(c, s))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = Self::zero(f, self.degree + other.degree);
        let (ma, mb) = (monomials(self.degree), monomials(other.degree));
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let e = [
                    ma[i][0] + mb[j][0],
                    ma[i][1] + mb[j][1],
                    ma[i][2] + mb[j][2],
                ];
                let k = monomial_index(e);
                out.coeffs[k] = f.add(out.coeffs[k], f.mul(a, b));
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, n: u32) -> Self {
        let mut acc = Self::new(0, vec![f.one()]);
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, pt: [E; 3]) -> E {
        let d = self.degree;
        let powers: Vec<Vec<E>> = pt
            .iter()
            .map(|&v| {
                let mut p = vec![f.one(); d + 1];
                for i in 1..=d {
                    p[i] = f.mul(p[i - 1], v);
                }
                p
            })
            .collect();
        let mut acc = f.zero();
        for (&c, e) in self.coeffs.iter().zip(monomials(d)) {
            if f.is_zero(c) {
                continue;
            }
            let m = f.mul(
                f.mul(powers[0][e[0] as usize], powers[1][e[1] as usize]),
                powers[2][e[2] as usize],
            );
            acc = f.add(acc, f.mul(c, m));
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var` (0 = x).
    pub fn partial<F: Field<Elem = E>>(&self, f: &F, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(f, 0);
        }
        let mut out = Self::zero(f, self.degree - 1);
        for (&c, e) in self.coeffs.iter().zip(monomials(self.degree)) {
            if e[var] == 0 || f.is_zero(c) {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            let k = monomial_index(e2);
            out.coeffs[k] = f.add(out.coeffs[k], f.mul(c, f.from_i64(e[var] as i64)));
        }
        out
    }

    pub fn partials<F: Field<Elem = E>>(&self, f: &F) -> [Self; 3] {
        [self.partial(f, 0), self.partial(f, 1), self.partial(f, 2)]
    }

    /// `G(v) = F(M v)`.
    pub fn substitute<F: Field<Elem = E>>(&self, f: &F, m: &Mat3<E>) -> Self {
        let lins: Vec<Self> = (0..3).map(|i| Self::linear(m[i])).collect();
        let d = self.degree;
        let pows: Vec<Vec<Self>> = lins
            .iter()
            .map(|l| {
                let mut v = vec![Self::new(0, vec![f.one()])];
                for i in 1..=d {
                    let next = v[i - 1].mul(f, l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(f, d);
        for (&c, e) in self.coeffs.iter().zip(monomials(d)) {
            if f.is_zero(c) {
                continue;
            }
            let term = pows[0][e[0] as usize]
                .mul(f, &pows[1][e[1] as usize])
                .mul(f, &pows[2][e[2] as usize]);
            out = out.add(f, &term.scale(f, c));
        }
        out
    }

    /// `F(s·P + t·Q)` as a binary form in `(s, t)`.
    pub fn restrict<F: Field<Elem = E>>(&self, f: &F, p: [E; 3], q: [E; 3]) -> BinaryForm<E> {
        let d = self.degree;
        let lins: Vec<BinaryForm<E>> = (0..3).map(|i| BinaryForm::new(vec![p[i], q[i]])).collect();
        let pows: Vec<Vec<BinaryForm<E>>> = lins
            .iter()
            .map(|l| {
                let mut v = vec![BinaryForm::new(vec![f.one()])];
                for i in 1..=d {
                    let next = v[i - 1].mul(f, l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = BinaryForm::new(vec![f.zero(); d + 1]);
        for (&c, e) in self.coeffs.iter().zip(monomials(d)) {
            if f.is_zero(c) {
                continue;
            }
            let term = pows[0][e[0] as usize]
                .mul(f, &pows[1][e[1] as usize])
                .mul(f, &pows[2][e[2] as usize]);
            out = out.add(f, &term.scale(f, c));
        }
        out
    }

    /// Exact quotient `self / divisor`, if the division is exact.
    pub fn divide<F: Field<Elem = E>>(&self, f: &F, divisor: &Self) -> Option<Self> {
        if divisor.degree > self.degree || divisor.is_zero(f) {
            return None;
        }
        let qd = self.degree - divisor.degree;
        let cols: Vec<Vec<E>> = monomials(qd)
            .iter()
            .map(|&e| divisor.mul(f, &Self::monomial(f, f.one(), e)).coeffs)
            .collect();
        linalg::solve_combination(f, &cols, &self.coeffs).map(|q| Self::new(qd, q))
    }

    /// Scales so the first nonzero coefficient is 1 (zero stays zero).
    pub fn normalized<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.coeffs.iter().find(|&&c| !f.is_zero(c)) {
            None => self.clone(),
            Some(&lead) => self.scale(f, f.inv(lead).unwrap()),
        }
    }

    /// Whether the two forms agree up to a nonzero scalar.
    pub fn proportional<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.degree == other.degree && self.normalized(f) == other.normalized(f)
    }

    /// Symmetric matrix `q` of a quadric, with `c_ij = 2 q_ij` off the diagonal.
    pub fn quadric_matrix<F: Field<Elem = E>>(&self, f: &F) -> Mat3<E> {
        assert_eq!(self.degree, 2);
        let half = f.inv(f.from_i64(2)).unwrap();
        let mut q = [[f.zero(); 3]; 3];
        for (&c, e) in self.coeffs.iter().zip(monomials(2)) {
            let vars: Vec<usize> = (0..3)
                .flat_map(|v| std::iter::repeat_n(v, e[v] as usize))
                .collect();
            let (i, j) = (vars[0], vars[1]);
            if i == j {
                q[i][i] = c;
            } else {
                q[i][j] = f.mul(c, half);
                q[j][i] = q[i][j];
            }
        }
        q
    }

    pub fn from_quadric_matrix<F: Field<Elem = E>>(f: &F, q: &Mat3<E>) -> Self {
        let two = f.from_i64(2);
        Self::new(
            2,
            vec![
                q[0][0],
                f.mul(two, q[0][1]),
                f.mul(two, q[0][2]),
                q[1][1],
                f.mul(two, q[1][2]),
                q[2][2],
            ],
        )
    }

    /// Hessian determinant `det(∂²F/∂xᵢ∂xⱼ)`.
    pub fn hessian<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let first = self.partials(f);
        let h: Vec<Vec<Self>> = first.iter().map(|g| g.partials(f).to_vec()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            h[1][a].mul(f, &h[2][b]).sub(f, &h[1][c].mul(f, &h[2][d]))
        };
        h[0][0]
            .mul(f, &minor(1, 2, 2, 1))
            .sub(f, &h[0][1].mul(f, &minor(0, 2, 2, 0)))
            .add(f, &h[0][2].mul(f, &minor(0, 1, 1, 0)))
    }
}

/// Rank of the symmetric matrix of a quadric.
pub fn conic_rank<F: Field>(f: &F, q: &TernaryForm<F::Elem>) -> usize {
    linalg::mat_rank(f, &q.quadric_matrix(f))
}

/// A homogeneous polynomial in two variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<E> {
    coeffs: Vec<E>,
}

pub type BinaryCubic<E> = BinaryForm<E>;

impl<E: Copy + Eq> BinaryForm<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|&c| f.is_zero(c))
    }

    pub fn map<G: Copy + Eq>(&self, g: impl FnMut(&E) -> G) -> BinaryForm<G> {
        BinaryForm {
            coeffs: self.coeffs.iter().map(g).collect(),
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: E) -> Self {
        Self::new(self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: E, y: E) -> E {
        let d = self.degree();
        let mut acc = f.zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            let m = f.mul(f.pow(x, (d - i) as u128), f.pow(y, i as u128));
            acc = f.add(acc, f.mul(c, m));
        }
        acc
    }

    /// `f(x, 1)` as a univariate polynomial, lowest degree first.
    pub fn dehomogenize<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        let mut v: Vec<E> = self.coeffs.iter().rev().copied().collect();
        poly::trim(f, &mut v);
        v
    }

    pub fn normalized<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.coeffs.iter().find(|&&c| !f.is_zero(c)) {
            None => self.clone(),
            Some(&lead) => self.scale(f, f.inv(lead).unwrap()),
        }
    }

    /// Discriminant of a binary quadratic, `b² − 4ac`.
    pub fn quadratic_discriminant<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.degree(), 2);
        let [a, b, c] = [self.coeffs[0], self.coeffs[1], self.coeffs[2]];
        f.sub(f.mul(b, b), f.mul(f.from_i64(4), f.mul(a, c)))
    }

    /// Discriminant of a binary cubic.
    pub fn cubic_discriminant<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.degree(), 3);
        let [a, b, c, d] = [
            self.coeffs[0],
            self.coeffs[1],
            self.coeffs[2],
            self.coeffs[3],
        ];
        let k = |n: i64| f.from_i64(n);
        let terms = [
            f.mul(f.mul(b, b), f.mul(c, c)),
            f.mul(k(-4), f.mul(a, f.mul(c, f.mul(c, c)))),
            f.mul(k(-4), f.mul(f.mul(b, f.mul(b, b)), d)),
            f.mul(k(-27), f.mul(f.mul(a, a), f.mul(d, d))),
            f.mul(k(18), f.mul(f.mul(a, b), f.mul(c, d))),
        ];
        terms.into_iter().fold(f.zero(), |s, t| f.add(s, t))
    }
}

/// A point of P² with the first nonzero coordinate scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<E> {
    coords: [E; 3],
}

impl<E: Copy + Eq> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coords: [E; 3]) -> Option<Self> {
        let lead = *coords.iter().find(|&&c| !f.is_zero(c))?;
        let inv = f.inv(lead).unwrap();
        Some(Self {
            coords: coords.map(|c| f.mul(c, inv)),
        })
    }

    pub fn coords(&self) -> [E; 3] {
        self.coords
    }
}

impl ProjPoint<Fq> {
    /// Degree-1 points are those with every coordinate in `F_p`.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_base().is_some())
    }

    pub fn to_base(&self) -> Option<ProjPoint<Fp>> {
        let c = [
            self.coords[0].as_base()?,
            self.coords[1].as_base()?,
            self.coords[2].as_base()?,
        ];
        Some(ProjPoint { coords: c })
    }
}

/// A point of P¹ with the first nonzero coordinate scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P1Point<E> {
    coords: [E; 2],
}

impl<E: Copy + Eq> P1Point<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coords: [E; 2]) -> Option<Self> {
        let lead = *coords.iter().find(|&&c| !f.is_zero(c))?;
        let inv = f.inv(lead).unwrap();
        Some(Self {
            coords: coords.map(|c| f.mul(c, inv)),
        })
    }

    pub fn coords(&self) -> [E; 2] {
        self.coords
    }
}

/// A line `a·x + b·y + c·z = 0` with normalized coefficients.
pub type Line<E> = ProjPoint<E>;

pub fn lift_form(field: &ExtField, g: &TernaryForm<Fp>) -> TernaryForm<Fq> {
    g.map(|c| field.lift(c))
}

pub fn lift_binary(field: &ExtField, g: &BinaryForm<Fp>) -> BinaryForm<Fq> {
    g.map(|&c| field.lift(c))
}

/// Maps a form with `F_p`-valued coefficients back to the prime field.
pub fn descend_form(g: &TernaryForm<Fq>) -> Option<TernaryForm<Fp>> {
    let coeffs: Option<Vec<Fp>> = g.coeffs().iter().map(Fq::as_base).collect();
    coeffs.map(|c| TernaryForm::new(g.degree(), c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinaryRoots {
    IdenticallyZero,
    /// Distinct projective roots with multiplicities summing to the degree.
    Roots(Vec<(P1Point<Fq>, u32)>),
}

impl BinaryRoots {
    /// Multiplicities in decreasing order, e.g. `[2, 1]`.
    pub fn profile(&self) -> Option<Vec<u32>> {
        match self {
            Self::IdenticallyZero => None,
            Self::Roots(r) => {
                let mut m: Vec<u32> = r.iter().map(|&(_, k)| k).collect();
                m.sort_unstable_by(|a, b| b.cmp(a));
                Some(m)
            }
        }
    }
}

/// All roots over the closure of a binary form of degree at most 3.
pub fn binary_roots(ctx: &FieldCtx, g: &BinaryForm<Fp>) -> Result<BinaryRoots, FormsError> {
    let f = ctx.prime_field();
    if g.degree() > 3 {
        return Err(FormsError::UnsupportedDegree(g.degree()));
    }
    if g.is_zero(&f) {
        return Ok(BinaryRoots::IdenticallyZero);
    }
    let lvl1 = ctx.level(1)?;
    let mut out = Vec::new();
    // [1:0] has multiplicity equal to the power of y dividing g
    let at_infinity = g.coeffs().iter().take_while(|&&c| c == Fp(0)).count() as u32;
    if at_infinity > 0 {
        out.push((
            P1Point::new(&lvl1, [lvl1.one(), lvl1.zero()]).unwrap(),
            at_infinity,
        ));
    }
    let mut rest = g.dehomogenize(&f);
    for r in poly::roots(&f, &rest.clone()) {
        let m = poly::root_multiplicity(&f, &rest, r);
        for _ in 0..m {
            rest = poly::div_rem(&f, &rest, &[f.neg(r), Fp(1)]).0;
        }
        out.push((
            P1Point::new(&lvl1, [lvl1.lift(r), lvl1.one()]).unwrap(),
            m as u32,
        ));
    }
    if let Some(d @ 2..=3) = poly::degree(&rest) {
        let ext = ctx.level(d as u32)?;
        let lifted: Vec<Fq> = rest.iter().map(|&c| ext.lift(c)).collect();
        for r in poly::roots(&ext, &lifted) {
            out.push((P1Point::new(&ext, [r, ext.one()]).unwrap(), 1));
        }
    }
    out.sort();
    Ok(BinaryRoots::Roots(out))
}

/// Common zeros in P² over `f` of the given forms.
///
/// Walks the affine coordinate `a` of the chart `[1:a:b]` (then `[0:1:b]`
/// and `[0:0:1]`) and solves for `b` with a univariate gcd, so every point of
/// P²(f) is covered.
pub fn common_zeros<F: Field>(
    f: &F,
    forms: &[TernaryForm<F::Elem>],
) -> Result<Vec<ProjPoint<F::Elem>>, FormsError> {
    let mut out = Vec::new();
    let fiber = |x: F::Elem, a: F::Elem| -> Result<Vec<F::Elem>, FormsError> {
        let mut g: Vec<F::Elem> = Vec::new();
        for form in forms {
            let mut u = vec![f.zero(); form.degree() + 1];
            for (&c, e) in form.coeffs().iter().zip(monomials(form.degree())) {
                if f.is_zero(c) {
                    continue;
                }
                let m = f.mul(f.pow(x, e[0] as u128), f.pow(a, e[1] as u128));
                u[e[2] as usize] = f.add(u[e[2] as usize], f.mul(c, m));
            }
            g = poly::gcd(f, &g, &u);
            if poly::degree(&g) == Some(0) {
                return Ok(Vec::new());
            }
        }
        if g.is_empty() {
            return Err(FormsError::InfiniteLocus);
        }
        Ok(poly::roots(f, &g))
    };
    for idx in 0..f.order() as u64 {
        let a = f.element(idx);
        for b in fiber(f.one(), a)? {
            out.push(ProjPoint::new(f, [f.one(), a, b]).unwrap());
        }
    }
    for b in fiber(f.zero(), f.one())? {
        out.push(ProjPoint::new(f, [f.zero(), f.one(), b]).unwrap());
    }
    let last = [f.zero(), f.zero(), f.one()];
    if forms.iter().all(|g| f.is_zero(g.eval(f, last))) {
        out.push(ProjPoint::new(f, last).unwrap());
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactors {
    /// Distinct lines over the closure, each at its field of definition,
    /// with multiplicities.
    pub lines: Vec<(Line<Fq>, u32)>,
    /// Cofactor over `F_p`: the input divided by the product of the lines.
    pub residual: TernaryForm<Fp>,
}

impl LinearFactors {
    pub fn line_degree(&self) -> u32 {
        self.lines.iter().map(|&(_, m)| m).sum()
    }
}

/// A rational point where `g` does not vanish.
fn nonvanishing_point(f: &PrimeField, g: &TernaryForm<Fp>) -> Option<[Fp; 3]> {
    let p = f.p();
    let chart = |i: u32, j: u32| [Fp(1), Fp(i), Fp(j)];
    (0..p)
        .flat_map(|i| (0..p).map(move |j| chart(i, j)))
        .chain((0..p).map(|j| [Fp(0), Fp(1), Fp(j)]))
        .chain(std::iter::once([Fp(0), Fp(0), Fp(1)]))
        .find(|&pt| g.eval(f, pt) != Fp(0))
}

/// Whether `g` vanishes at two distinct rational points, looking at no more
/// than a few thousand points.
fn has_two_rational_zeros(f: &PrimeField, g: &TernaryForm<Fp>) -> bool {
    let p = f.p();
    (0..p)
        .flat_map(|i| (0..p).map(move |j| [Fp(1), Fp(i), Fp(j)]))
        .chain((0..p).map(|j| [Fp(0), Fp(1), Fp(j)]))
        .chain(std::iter::once([Fp(0), Fp(0), Fp(1)]))
        .take(4096)
        .filter(|&pt| g.eval(f, pt) == Fp(0))
        .nth(1)
        .is_some()
}

/// Two points completing `o` to a basis of the ambient space.
pub(crate) fn complement(o: [Fp; 3]) -> ([Fp; 3], [Fp; 3]) {
    let e = [
        [Fp(1), Fp(0), Fp(0)],
        [Fp(0), Fp(1), Fp(0)],
        [Fp(0), Fp(0), Fp(1)],
    ];
    let lead = o.iter().position(|&c| c != Fp(0)).unwrap();
    let others: Vec<[Fp; 3]> = (0..3).filter(|&i| i != lead).map(|i| e[i]).collect();
    (others[0], others[1])
}

pub(crate) fn cross<F: Field>(f: &F, a: [F::Elem; 3], b: [F::Elem; 3]) -> [F::Elem; 3] {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

/// Linear factors over the closure of a ternary form of degree at most 3.
///
/// Every linear factor meets two fixed rational transversals (through a point
/// off the curve) in roots of the restricted binary forms, so the candidate
/// lines are the joins of those roots.
pub fn linear_factors(ctx: &FieldCtx, g: &TernaryForm<Fp>) -> Result<LinearFactors, FormsError> {
    let f = ctx.prime_field();
    if g.degree() > 3 {
        return Err(FormsError::UnsupportedDegree(g.degree()));
    }
    if g.is_zero(&f) {
        return Err(FormsError::ZeroForm);
    }
    if g.degree() == 0 {
        return Ok(LinearFactors {
            lines: Vec::new(),
            residual: g.clone(),
        });
    }
    let o = nonvanishing_point(&f, g)
        .expect("a nonzero form of degree at most 3 has a rational non-zero");
    let (r1, r2) = complement(o);
    // G_i(σ) = g(σ·O + R_i); leading coefficient g(O) is nonzero
    let transversal = |r: [Fp; 3]| g.restrict(&f, o, r).dehomogenize(&f);
    let g1 = transversal(r1);
    let g2 = transversal(r2);

    let mut needed = vec![1u32];
    for u in [&g1, &g2] {
        let mut rest = u.clone();
        for r in poly::roots(&f, u) {
            let m = poly::root_multiplicity(&f, &rest, r);
            for _ in 0..m {
                rest = poly::div_rem(&f, &rest, &[f.neg(r), Fp(1)]).0;
            }
        }
        // what remains is irreducible of degree 0, 2 or 3
        let d = poly::degree(&rest).unwrap_or(0) as u32;
        if d >= 2 && !needed.contains(&d) {
            needed.push(d);
        }
    }
    needed.sort_unstable();
    // three conjugate lines over F_{p³} share at most one rational point
    if needed.contains(&3) && has_two_rational_zeros(&f, g) {
        needed.retain(|&k| k != 3);
    }

    let mut found: Vec<Line<Fq>> = Vec::new();
    for &k in &needed {
        let ext = ctx.level(k)?;
        let lift = |u: &[Fp]| -> Vec<Fq> { u.iter().map(|&c| ext.lift(c)).collect() };
        let roots1 = poly::roots(&ext, &lift(&g1));
        let roots2 = poly::roots(&ext, &lift(&g2));
        let lg = lift_form(&ext, g);
        let pt = |s: Fq, r: [Fp; 3]| -> [Fq; 3] {
            [0, 1, 2].map(|i| ext.add(ext.mul(s, ext.lift(o[i])), ext.lift(r[i])))
        };
        for &s in &roots1 {
            for &t in &roots2 {
                let (a, b) = (pt(s, r1), pt(t, r2));
                let Some(line) = ProjPoint::new(&ext, cross(&ext, a, b)) else {
                    continue;
                };
                if k > 1 && line.is_rational() {
                    continue;
                }
                if found.contains(&line) {
                    continue;
                }
                if lg.restrict(&ext, a, b).is_zero(&ext) {
                    found.push(line);
                }
            }
        }
    }
    found.sort();

    let top = found
        .iter()
        .map(|l| l.coords()[0].level())
        .max()
        .unwrap_or(1);
    let ext = ctx.level(top)?;
    let mut cur = lift_form(&ext, g);
    let mut lines = Vec::new();
    for line in found {
        let coords = line.coords();
        let c: Vec<Fq> = coords
            .iter()
            .map(|&c| ctx.embed(c, top))
            .collect::<Result<_, _>>()?;
        let l = TernaryForm::new(1, c);
        let mut m = 0;
        while let Some(q) = cur.divide(&ext, &l) {
            cur = q;
            m += 1;
        }
        lines.push((line, m));
    }
    let residual =
        descend_form(&cur).expect("the cofactor of a Galois-stable set of lines is rational");
    Ok(LinearFactors { lines, residual })
}

/// Singular points over the closure of a reduced plane cubic.
pub fn singular_points(
    ctx: &FieldCtx,
    g: &TernaryForm<Fp>,
) -> Result<Vec<ProjPoint<Fq>>, FormsError> {
    let lf = linear_factors(ctx, g)?;
    if lf.lines.iter().any(|&(_, m)| m > 1) {
        return Err(FormsError::NonReducedInput);
    }
    let f = ctx.prime_field();
    if lf.residual.degree() == 2 && conic_rank(&f, &lf.residual) < 2 {
        return Err(FormsError::NonReducedInput);
    }
    let mut forms = vec![g.clone()];
    forms.extend(g.partials(&f));
    let mut out = Vec::new();
    for k in [1, 2, 3] {
        let ext = ctx.level(k)?;
        let lifted: Vec<TernaryForm<Fq>> = forms.iter().map(|h| lift_form(&ext, h)).collect();
        for pt in common_zeros(&ext, &lifted)? {
            if k == 1 || !pt.is_rational() {
                out.push(pt);
            }
        }
    }
    Ok(out)
}
