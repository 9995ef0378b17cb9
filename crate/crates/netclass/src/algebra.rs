//! Rank-7 local algebras with Hilbert vector (3,3) and their nets.
//!
//! A net `W` pairs perfectly with the quadrics through `⟨Q, A⟩ = tr(qA)`,
//! where `q` is the symmetric matrix of `Q`. In monomial coordinates this is
//! `Σ c_m A_m` over `x², xy, xz, y², yz, z²`. The algebra of `W` is
//! `k[x,y,z]/(W^⊥ + 𝔪³)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::forms::{monomial_index, monomials, TernaryForm};
use crate::gf::{Field, FieldCtx, Fp, PrimeField};
use crate::linalg::{self, Mat3};
use crate::net::{classify_net, Net, NetError, OrbitLabel};
use crate::subspace::to_coords;

pub const DIM: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("graded quotient has Hilbert function {0:?}, expected [1, 3, 3, 0]")]
    WrongHilbert(Vec<usize>),
    #[error("generator of degree {0} is not supported")]
    UnsupportedGenerator(usize),
    #[error("multiplication is not commutative")]
    NotCommutative,
    #[error("basis element 0 is not a unit")]
    NotUnital,
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("the algebra is not local")]
    NotLocal,
    #[error("7 is not invertible in characteristic {0}")]
    CharacteristicObstruction(u64),
    #[error("Hilbert vector is {0}, not (3,3)")]
    NotType33(HilbertVector),
    #[error(transparent)]
    Net(#[from] NetError),
}

type Vec7 = [Fp; DIM];

/// Structure constants: `b_a · b_b = Σ_e c[a][b][e] b_e`, with `b_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultTable {
    constants: [[Vec7; DIM]; DIM],
}

impl MultTable {
    pub fn new(constants: [[Vec7; DIM]; DIM]) -> Self {
        Self { constants }
    }

    pub fn from_i64(f: &PrimeField, c: &[[[i64; DIM]; DIM]; DIM]) -> Self {
        Self {
            constants: c.map(|row| row.map(|v| v.map(|x| f.elem(x)))),
        }
    }

    pub fn constants(&self) -> &[[Vec7; DIM]; DIM] {
        &self.constants
    }

    pub fn mul(&self, f: &PrimeField, u: &Vec7, v: &Vec7) -> Vec7 {
        let mut out = [Fp(0); DIM];
        for (a, &ua) in u.iter().enumerate() {
            if ua == Fp(0) {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if vb == Fp(0) {
                    continue;
                }
                let s = f.mul(ua, vb);
                for (o, &c) in out.iter_mut().zip(&self.constants[a][b]) {
                    *o = f.add(*o, f.mul(s, c));
                }
            }
        }
        out
    }

    pub fn check_commutative(&self) -> Result<(), AlgebraError> {
        for a in 0..DIM {
            for b in 0..a {
                if self.constants[a][b] != self.constants[b][a] {
                    return Err(AlgebraError::NotCommutative);
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<(), AlgebraError> {
        for b in 0..DIM {
            if self.constants[0][b] != unit_vector(b) || self.constants[b][0] != unit_vector(b) {
                return Err(AlgebraError::NotUnital);
            }
        }
        Ok(())
    }

    /// Checks `(u·v)·w = u·(v·w)` on all 343 basis triples.
    pub fn check_associative(&self, f: &PrimeField) -> Result<(), AlgebraError> {
        for a in 0..DIM {
            for b in 0..DIM {
                let ab = self.constants[a][b];
                for c in 0..DIM {
                    let left = self.mul(f, &ab, &unit_vector(c));
                    let right = self.mul(f, &unit_vector(a), &self.constants[b][c]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative);
                    }
                }
            }
        }
        Ok(())
    }

    /// The table in a new basis whose i-th element has old coordinates
    /// `rows[i]`. `None` if the rows are dependent.
    pub fn change_basis(&self, f: &PrimeField, rows: &[Vec7; DIM]) -> Option<Self> {
        let cols: Vec<Vec<Fp>> = rows.iter().map(|r| r.to_vec()).collect();
        if linalg::rank(f, &cols) < DIM {
            return None;
        }
        let mut constants = [[[Fp(0); DIM]; DIM]; DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                let prod = self.mul(f, &rows[a], &rows[b]);
                let x = linalg::solve_combination(f, &cols, &prod)?;
                constants[a][b].copy_from_slice(&x);
            }
        }
        Some(Self { constants })
    }
}

fn unit_vector(i: usize) -> Vec7 {
    let mut v = [Fp(0); DIM];
    v[i] = Fp(1);
    v
}

/// Dimensions `(d₁, d₂, …)` of `𝔪ⁱ/𝔪ⁱ⁺¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertVector(pub Vec<usize>);

impl HilbertVector {
    pub fn is_type33(&self) -> bool {
        self.0 == [3, 3]
    }
}

impl fmt::Display for HilbertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subspace of ternary quadrics, kept in reduced row-echelon form over
/// the monomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadricSpace {
    rows: Vec<[Fp; 6]>,
}

impl QuadricSpace {
    pub fn span(f: &PrimeField, quadrics: &[TernaryForm<Fp>]) -> Self {
        let mut rows: Vec<Vec<Fp>> = quadrics
            .iter()
            .filter(|q| q.degree() == 2)
            .map(|q| q.coeffs().to_vec())
            .collect();
        linalg::rref(f, &mut rows);
        Self {
            rows: rows
                .into_iter()
                .map(|r| r.try_into().expect("six coordinates"))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[Fp; 6]] {
        &self.rows
    }

    pub fn forms(&self) -> Vec<TernaryForm<Fp>> {
        self.rows
            .iter()
            .map(|r| TernaryForm::new(2, r.to_vec()))
            .collect()
    }
}

/// `⟨Q, A⟩ = tr(qA)`.
pub fn pairing(f: &PrimeField, q: &TernaryForm<Fp>, a: &Mat3<Fp>) -> Fp {
    q.coeffs()
        .iter()
        .zip(to_coords(a))
        .fold(Fp(0), |s, (&c, m)| f.add(s, f.mul(c, m)))
}

/// The quadrics orthogonal to every member of `W`.
pub fn apolar_annihilator(f: &PrimeField, w: &Net) -> QuadricSpace {
    let rows: Vec<Vec<Fp>> = w.basis().iter().map(|a| to_coords(a).to_vec()).collect();
    let ker = linalg::kernel(f, &rows, 6);
    let forms: Vec<TernaryForm<Fp>> = ker.into_iter().map(|c| TernaryForm::new(2, c)).collect();
    QuadricSpace::span(f, &forms)
}

/// The graded algebra of `W` on the basis `(1, x, y, z, e₁, e₂, e₃)`, where
/// `eᵢ` is dual to the i-th basis matrix `Aᵢ`, so `x_a x_b = Σᵢ (Aᵢ)_{ab} eᵢ`.
pub fn structure_constants(w: &Net) -> MultTable {
    let mut c = [[[Fp(0); DIM]; DIM]; DIM];
    for (b, row) in c[0].iter_mut().enumerate() {
        row[b] = Fp(1);
    }
    for b in 1..DIM {
        c[b][0] = unit_vector(b);
    }
    for a in 0..3 {
        for b in 0..3 {
            for (i, m) in w.basis().iter().enumerate() {
                c[1 + a][1 + b][4 + i] = m[a][b];
            }
        }
    }
    MultTable { constants: c }
}

fn degree_rows(f: &PrimeField, forms: &[TernaryForm<Fp>], d: usize) -> Vec<Vec<Fp>> {
    let mut rows = Vec::new();
    for g in forms {
        if g.degree() > d {
            continue;
        }
        for &e in monomials(d - g.degree()) {
            let prod = g.mul(f, &TernaryForm::monomial(f, Fp(1), e));
            rows.push(prod.coeffs().to_vec());
        }
    }
    rows
}

/// The algebra `k[x,y,z]/(I + 𝔪⁴)` for a homogeneous ideal `I`, which must
/// have Hilbert function `(1,3,3,0)`.
///
/// Its basis is `1, x, y, z` followed by the three degree-two monomials that
/// are not leading terms of the reduced degree-two part of `I`.
pub fn quotient_algebra(
    f: &PrimeField,
    generators: &[TernaryForm<Fp>],
) -> Result<MultTable, AlgebraError> {
    let mut gens = Vec::new();
    for g in generators {
        match g.degree() {
            1..=3 => gens.push(g.clone()),
            d => return Err(AlgebraError::UnsupportedGenerator(d)),
        }
    }
    let hilbert: Vec<usize> = (0..4)
        .map(|d| {
            let rows = degree_rows(f, &gens, d);
            monomials(d).len() - linalg::rank(f, &rows)
        })
        .collect();
    if hilbert != [1, 3, 3, 0] {
        return Err(AlgebraError::WrongHilbert(hilbert));
    }
    let mut i2 = degree_rows(f, &gens, 2);
    let pivots = linalg::rref(f, &mut i2);
    let standard: Vec<usize> = (0..6).filter(|c| !pivots.contains(c)).collect();
    // normal form of a degree-two monomial in terms of the standard monomials
    let normal_form = |m: usize| -> [Fp; 3] {
        let mut out = [Fp(0); 3];
        if let Some(k) = standard.iter().position(|&s| s == m) {
            out[k] = Fp(1);
        } else {
            let r = pivots.iter().position(|&p| p == m).expect("pivot monomial");
            for (o, &s) in out.iter_mut().zip(&standard) {
                *o = f.neg(i2[r][s]);
            }
        }
        out
    };
    let mut c = [[[Fp(0); DIM]; DIM]; DIM];
    for b in 0..DIM {
        c[0][b] = unit_vector(b);
        c[b][0] = unit_vector(b);
    }
    for a in 0..3 {
        for b in 0..3 {
            let mut e = [0u32; 3];
            e[a] += 1;
            e[b] += 1;
            let nf = normal_form(monomial_index(e));
            c[1 + a][1 + b][4..].copy_from_slice(&nf);
        }
    }
    Ok(MultTable { constants: c })
}

/// Coordinates of `span(vs)` in reduced row-echelon form.
fn span_basis(f: &PrimeField, vs: Vec<Vec<Fp>>) -> Vec<Vec<Fp>> {
    let mut rows = vs;
    linalg::rref(f, &mut rows);
    rows
}

fn as_vec7(v: &[Fp]) -> Vec7 {
    v.try_into().expect("seven coordinates")
}

/// The chain `𝔪 ⊋ 𝔪² ⊋ … ⊋ 0`, each power given by a basis.
fn maximal_ideal_powers(f: &PrimeField, t: &MultTable) -> Result<Vec<Vec<Vec<Fp>>>, AlgebraError> {
    t.check_commutative()?;
    t.check_unit()?;
    t.check_associative(f)?;
    let p = f.p() as u64;
    let seven_inv = f
        .inv(f.elem(DIM as i64))
        .map_err(|_| AlgebraError::CharacteristicObstruction(p))?;
    let mut gens = Vec::new();
    for b in 1..DIM {
        let trace = (0..DIM).fold(Fp(0), |s, e| f.add(s, t.constants[b][e][e]));
        let mut v = unit_vector(b);
        v[0] = f.sub(v[0], f.mul(trace, seven_inv));
        gens.push(v.to_vec());
    }
    let m = span_basis(f, gens);
    if m.len() != DIM - 1 {
        return Err(AlgebraError::NotLocal);
    }
    for b in 0..DIM {
        for v in &m {
            let prod = t.mul(f, &unit_vector(b), &as_vec7(v));
            if !linalg::row_space_contains(f, &m, &[prod.to_vec()]) {
                return Err(AlgebraError::NotLocal);
            }
        }
    }
    let mut powers = vec![m.clone()];
    loop {
        let last = powers.last().unwrap();
        if last.is_empty() {
            return Ok(powers);
        }
        if powers.len() > DIM {
            return Err(AlgebraError::NotLocal);
        }
        let mut prods = Vec::new();
        for u in &m {
            for v in last {
                prods.push(t.mul(f, &as_vec7(u), &as_vec7(v)).to_vec());
            }
        }
        let next = span_basis(f, prods);
        if next.len() == last.len() {
            return Err(AlgebraError::NotLocal);
        }
        powers.push(next);
    }
}

/// Hilbert vector of a commutative local algebra with unit `b₀`.
///
/// The maximal ideal is spanned by `bᵢ − λᵢ` where `λᵢ = tr(L_{bᵢ})/7`, since
/// each multiplication operator is a scalar plus a nilpotent.
pub fn hilbert_vector(f: &PrimeField, t: &MultTable) -> Result<HilbertVector, AlgebraError> {
    let powers = maximal_ideal_powers(f, t)?;
    Ok(HilbertVector(
        powers.windows(2).map(|w| w[0].len() - w[1].len()).collect(),
    ))
}

/// The net of a type-(3,3) algebra: the `𝔪²`-components of the
/// multiplication `𝔪/𝔪² × 𝔪/𝔪² → 𝔪²`.
pub fn recover_net(f: &PrimeField, t: &MultTable) -> Result<Net, AlgebraError> {
    let powers = maximal_ideal_powers(f, t)?;
    let hv = HilbertVector(powers.windows(2).map(|w| w[0].len() - w[1].len()).collect());
    if !hv.is_type33() {
        return Err(AlgebraError::NotType33(hv));
    }
    let (m, m2) = (&powers[0], &powers[1]);
    let mut lifts: Vec<Vec7> = Vec::new();
    let mut acc = m2.clone();
    for v in m {
        if !linalg::row_space_contains(f, &acc, std::slice::from_ref(v)) {
            acc.push(v.clone());
            lifts.push(as_vec7(v));
        }
    }
    let m2_cols: Vec<Vec<Fp>> = m2.clone();
    let mut mats = [[[Fp(0); 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let prod = t.mul(f, &lifts[a], &lifts[b]);
            let x = linalg::solve_combination(f, &m2_cols, &prod).ok_or(AlgebraError::NotLocal)?;
            for (mat, &xi) in mats.iter_mut().zip(&x) {
                mat[a][b] = xi;
            }
        }
    }
    Ok(Net::new(f, mats)?)
}

pub fn classify_algebra(ctx: &FieldCtx, t: &MultTable) -> Result<OrbitLabel, AlgebraError> {
    let w = recover_net(&ctx.prime_field(), t)?;
    Ok(classify_net(ctx, &w)?)
}

/// Monomial terms `(coefficient, [a, b, c])` of one generator.
type Terms = &'static [(i64, [u32; 3])];

const X2: Terms = &[(1, [2, 0, 0])];
const XY: Terms = &[(1, [1, 1, 0])];
const XZ: Terms = &[(1, [1, 0, 1])];
const Y2: Terms = &[(1, [0, 2, 0])];
const YZ: Terms = &[(1, [0, 1, 1])];
const Z2: Terms = &[(1, [0, 0, 2])];
const X3: Terms = &[(1, [3, 0, 0])];
const Y3: Terms = &[(1, [0, 3, 0])];
const Z3: Terms = &[(1, [0, 0, 3])];
const X2Y: Terms = &[(1, [2, 1, 0])];
const X2Z: Terms = &[(1, [2, 0, 1])];
const Y2Z: Terms = &[(1, [0, 2, 1])];
const YZ2: Terms = &[(1, [0, 1, 2])];
const XZ2: Terms = &[(1, [1, 0, 2])];
const XZ_MINUS_Y2: Terms = &[(1, [1, 0, 1]), (-1, [0, 2, 0])];
const Y2_MINUS_XZ: Terms = &[(1, [0, 2, 0]), (-1, [1, 0, 1])];

/// The ideal printed beside each representative in the orbit table.
pub fn printed_ideal_terms(label: OrbitLabel) -> &'static [Terms] {
    match label {
        OrbitLabel::I_a => &[X2, XY, XZ, Y3, Y2Z, YZ2, Z3],
        OrbitLabel::I_b => &[X2, XY, Y2, Z3],
        OrbitLabel::II => &[XZ_MINUS_Y2, YZ, Z2, X3, X2Y, X2Z],
        OrbitLabel::III => &[XY, YZ, Z2, X3, X2Z, Y3],
        OrbitLabel::IV_a => &[XY, XZ, YZ, X3, Y3, Z3],
        OrbitLabel::IV_b => &[
            &[
                (1, [0, 2, 0]),
                (1, [0, 0, 2]),
                (-1, [2, 0, 0]),
                (1, [1, 0, 1]),
            ],
            &[(1, [1, 1, 0]), (-1, [1, 0, 1])],
            &[(1, [1, 0, 1]), (-1, [0, 1, 1])],
            X2Y,
            XZ2,
        ],
        OrbitLabel::V => &[XY, Y2_MINUS_XZ, YZ, X3, Z3],
        OrbitLabel::VI => &[
            XZ,
            YZ,
            &[
                (1, [2, 0, 0]),
                (-2, [1, 1, 0]),
                (1, [0, 2, 0]),
                (-1, [0, 0, 2]),
            ],
            X3,
            Y3,
        ],
        OrbitLabel::VII => &[XY, Y2_MINUS_XZ, Z2, X3],
        OrbitLabel::VIII => &[&[(1, [1, 1, 0]), (-1, [0, 0, 2])], Y2_MINUS_XZ, YZ, X3],
        OrbitLabel::Nonsingular => &[],
    }
}

pub fn printed_ideal(f: &PrimeField, label: OrbitLabel) -> Vec<TernaryForm<Fp>> {
    printed_ideal_terms(label)
        .iter()
        .map(|terms| {
            let d = terms[0].1.iter().sum::<u32>() as usize;
            terms.iter().fold(TernaryForm::zero(f, d), |g, &(c, e)| {
                g.add(f, &TernaryForm::monomial(f, f.elem(c), e))
            })
        })
        .collect()
}

/// The pairing matrix `⟨Q_i, A_j⟩` between quadrics and a net basis.
pub fn pairing_matrix(f: &PrimeField, quadrics: &[TernaryForm<Fp>], w: &Net) -> Vec<Vec<Fp>> {
    quadrics
        .iter()
        .map(|q| w.basis().iter().map(|a| pairing(f, q, a)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{random_net, representative, representatives};

    fn setup(p: u64) -> (FieldCtx, PrimeField) {
        let ctx = FieldCtx::standard(p).unwrap();
        let f = ctx.prime_field();
        (ctx, f)
    }

    fn span_of(f: &PrimeField, terms: &[Terms]) -> QuadricSpace {
        let forms: Vec<_> = terms
            .iter()
            .map(|t| {
                t.iter().fold(TernaryForm::zero(f, 2), |g, &(c, e)| {
                    g.add(f, &TernaryForm::monomial(f, f.elem(c), e))
                })
            })
            .collect();
        QuadricSpace::span(f, &forms)
    }

    #[test]
    fn annihilator_examples() {
        let (_, f) = setup(5);
        let ann = |l| apolar_annihilator(&f, &representative(&f, l).unwrap());
        assert_eq!(ann(OrbitLabel::I_a), span_of(&f, &[X2, XY, XZ]));
        assert_eq!(ann(OrbitLabel::II), span_of(&f, &[XZ_MINUS_Y2, YZ, Z2]));
        assert_eq!(ann(OrbitLabel::VII), span_of(&f, &[XY, Y2_MINUS_XZ, Z2]));
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let (_, f) = setup(11);
        for seed in 0..20 {
            let w = random_net(&f, seed);
            let ann = apolar_annihilator(&f, &w);
            assert_eq!(ann.dim(), 3);
            for row in pairing_matrix(&f, &ann.forms(), &w) {
                assert!(row.iter().all(|&v| v == Fp(0)));
            }
        }
    }

    #[test]
    fn structure_constants_i_a() {
        let (_, f) = setup(5);
        let w = representative(&f, OrbitLabel::I_a).unwrap();
        let t = structure_constants(&w);
        assert_eq!(t.constants()[1][1], [Fp(0); 7]);
        // y·y picks up the E22 basis element, the second one
        assert_eq!(t.constants()[2][2], unit_vector(5));
        for e in 4..7 {
            assert_eq!(t.constants()[1][e], [Fp(0); 7]);
        }
        assert_eq!(hilbert_vector(&f, &t).unwrap(), HilbertVector(vec![3, 3]));
    }

    #[test]
    fn representatives_are_type33_and_round_trip() {
        let (ctx, f) = setup(5);
        for (label, w) in representatives(&f) {
            let t = structure_constants(&w);
            t.check_associative(&f).unwrap();
            assert!(hilbert_vector(&f, &t).unwrap().is_type33());
            assert_eq!(classify_algebra(&ctx, &t).unwrap(), label);
        }
    }

    #[test]
    fn quotient_examples() {
        let (_, f) = setup(5);
        let t = quotient_algebra(&f, &printed_ideal(&f, OrbitLabel::I_a)).unwrap();
        assert!(hilbert_vector(&f, &t).unwrap().is_type33());
        assert_eq!(
            quotient_algebra(&f, &printed_ideal(&f, OrbitLabel::I_b)),
            Err(AlgebraError::WrongHilbert(vec![1, 3, 3, 2]))
        );
        let x2 = TernaryForm::monomial(&f, Fp(1), [2, 0, 0]);
        assert!(matches!(
            quotient_algebra(&f, &[x2]),
            Err(AlgebraError::WrongHilbert(_))
        ));
    }

    #[test]
    fn truncated_polynomial_ring() {
        let (ctx, f) = setup(5);
        let mut c = [[[Fp(0); DIM]; DIM]; DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                if a + b < DIM {
                    c[a][b][a + b] = Fp(1);
                }
            }
        }
        let t = MultTable::new(c);
        assert_eq!(hilbert_vector(&f, &t).unwrap(), HilbertVector(vec![1; 6]));
        assert!(matches!(
            classify_algebra(&ctx, &t),
            Err(AlgebraError::NotType33(_))
        ));
    }

    #[test]
    fn characteristic_seven() {
        let (_, f) = setup(7);
        let w = random_net(&f, 1);
        assert_eq!(
            hilbert_vector(&f, &structure_constants(&w)),
            Err(AlgebraError::CharacteristicObstruction(7))
        );
    }

    #[test]
    fn non_local_product() {
        let (_, f) = setup(5);
        // k × k⁶-ish: b₁ idempotent
        let mut c = [[[Fp(0); DIM]; DIM]; DIM];
        for b in 0..DIM {
            c[0][b] = unit_vector(b);
            c[b][0] = unit_vector(b);
        }
        c[1][1] = unit_vector(1);
        assert_eq!(
            hilbert_vector(&f, &MultTable::new(c)),
            Err(AlgebraError::NotLocal)
        );
    }

    #[test]
    fn basis_change_keeps_label() {
        let (ctx, f) = setup(5);
        let w = representative(&f, OrbitLabel::VI).unwrap();
        let t = structure_constants(&w);
        let mut rows = [[Fp(0); DIM]; DIM];
        rows[0] = unit_vector(0);
        for (i, row) in rows.iter_mut().enumerate().skip(1) {
            for (j, v) in row.iter_mut().enumerate() {
                *v = f.elem(((i * 3 + j * j + i * j) % 5) as i64);
            }
            row[i] = f.add(row[i], Fp(1));
        }
        let t2 = t.change_basis(&f, &rows).expect("invertible basis change");
        assert_eq!(classify_algebra(&ctx, &t2).unwrap(), OrbitLabel::VI);
    }
}
