//! Nets of conics: three-dimensional subspaces of symmetric matrices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cubic::{classify_cubic, CubicType};
use crate::forms::{common_zeros, lift_form, FormsError, ProjPoint, TernaryForm};
use crate::gf::{FieldCtx, Fp, Fq, PrimeField};
use crate::linalg::{self, Mat3};
use crate::subspace::{sym_unit, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("the basis matrices are linearly dependent")]
    DependentBasis,
    #[error("a basis matrix is not symmetric")]
    NotSymmetric,
    #[error("the transforming matrix is singular")]
    SingularMatrix,
    #[error("net {0:?} has three concurrent lines as discriminant")]
    ImpossibleDiscriminant(Subspace<3>),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// A net with the basis it was given and its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    basis: [Mat3<Fp>; 3],
    canonical: Subspace<3>,
}

impl Net {
    pub fn new(f: &PrimeField, basis: [Mat3<Fp>; 3]) -> Result<Self, NetError> {
        if !basis.iter().all(linalg::is_symmetric) {
            return Err(NetError::NotSymmetric);
        }
        let canonical = Subspace::from_matrices(f, &basis).ok_or(NetError::DependentBasis)?;
        Ok(Self { basis, canonical })
    }

    pub fn from_subspace(s: Subspace<3>) -> Self {
        Self {
            basis: s.matrices(),
            canonical: s,
        }
    }

    pub fn basis(&self) -> &[Mat3<Fp>; 3] {
        &self.basis
    }

    pub fn canonical(&self) -> &Subspace<3> {
        &self.canonical
    }

    /// The member `c₁A₁ + c₂A₂ + c₃A₃`.
    pub fn member(&self, f: &PrimeField, c: [Fp; 3]) -> Mat3<Fp> {
        let mut m = [[Fp(0); 3]; 3];
        for (a, &ci) in self.basis.iter().zip(&c) {
            m = linalg::mat_add(f, &m, &linalg::mat_scale(f, a, ci));
        }
        m
    }
}

/// `{MᵀAᵢM}`. With this convention `act(M₁M₂, W) = act(M₂, act(M₁, W))`.
pub fn act(f: &PrimeField, m: &Mat3<Fp>, w: &Net) -> Result<Net, NetError> {
    if linalg::det(f, m) == Fp(0) {
        return Err(NetError::SingularMatrix);
    }
    Net::new(f, w.basis.map(|a| linalg::congruence(f, m, &a)))
}

/// The ten singular orbits of nets in table order, plus the nonsingular
/// ones lumped together.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    I_a,
    I_b,
    II,
    III,
    IV_a,
    IV_b,
    V,
    VI,
    VII,
    VIII,
    Nonsingular,
}

impl OrbitLabel {
    pub const ALL: [OrbitLabel; 11] = [
        Self::I_a,
        Self::I_b,
        Self::II,
        Self::III,
        Self::IV_a,
        Self::IV_b,
        Self::V,
        Self::VI,
        Self::VII,
        Self::VIII,
        Self::Nonsingular,
    ];

    pub const SINGULAR: [OrbitLabel; 10] = [
        Self::I_a,
        Self::I_b,
        Self::II,
        Self::III,
        Self::IV_a,
        Self::IV_b,
        Self::V,
        Self::VI,
        Self::VII,
        Self::VIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::I_a => "I_a",
            Self::I_b => "I_b",
            Self::II => "II",
            Self::III => "III",
            Self::IV_a => "IV_a",
            Self::IV_b => "IV_b",
            Self::V => "V",
            Self::VI => "VI",
            Self::VII => "VII",
            Self::VIII => "VIII",
            Self::Nonsingular => "Nonsingular",
        }
    }

    /// Type of the discriminant curve of every net with this label.
    pub fn disc_type(self) -> CubicType {
        match self {
            Self::I_a | Self::I_b => CubicType::Zero,
            Self::II => CubicType::TripleLine,
            Self::III => CubicType::DoubleLinePlusLine,
            Self::IV_a | Self::IV_b => CubicType::ThreeGeneralLines,
            Self::V => CubicType::ConicPlusSecant,
            Self::VI => CubicType::ConicPlusTangent,
            Self::VII => CubicType::Cusp,
            Self::VIII => CubicType::Node,
            Self::Nonsingular => CubicType::Nonsingular,
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown orbit label {s:?}"))
    }
}

/// Determinant of a 3×3 matrix of linear forms given entrywise.
fn det_of_linear(f: &PrimeField, entry: impl Fn(usize, usize) -> [Fp; 3]) -> TernaryForm<Fp> {
    let e = |i: usize, j: usize| TernaryForm::linear(entry(i, j));
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        e(1, a).mul(f, &e(2, b)).sub(f, &e(1, c).mul(f, &e(2, d)))
    };
    e(0, 0)
        .mul(f, &minor(1, 2, 2, 1))
        .sub(f, &e(0, 1).mul(f, &minor(0, 2, 2, 0)))
        .add(f, &e(0, 2).mul(f, &minor(0, 1, 1, 0)))
}

/// `det(A₁x + A₂y + A₃z)`, scaled so the first nonzero coefficient is 1.
pub fn net_disc(f: &PrimeField, w: &Net) -> TernaryForm<Fp> {
    let [a1, a2, a3] = w.basis;
    det_of_linear(f, |i, j| [a1[i][j], a2[i][j], a3[i][j]]).normalized(f)
}

/// The slice: determinant of the matrix whose `(j, i)` entry is
/// `Σₖ a^i_{jk} xₖ`, i.e. whose i-th column is `Aᵢ·(x, y, z)ᵀ`. Normalized
/// like [`net_disc`].
pub fn net_slice(f: &PrimeField, w: &Net) -> TernaryForm<Fp> {
    let a = w.basis;
    det_of_linear(f, |j, i| a[i][j]).normalized(f)
}

/// The 2×2 minors of `c₁A₁ + c₂A₂ + c₃A₃` as quadrics in `c`.
fn member_minors(f: &PrimeField, w: &Net) -> Vec<TernaryForm<Fp>> {
    let [a1, a2, a3] = w.basis;
    let e = |i: usize, j: usize| TernaryForm::linear([a1[i][j], a2[i][j], a3[i][j]]);
    let mut out = Vec::new();
    for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
        for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
            out.push(
                e(r0, c0)
                    .mul(f, &e(r1, c1))
                    .sub(f, &e(r0, c1).mul(f, &e(r1, c0))),
            );
        }
    }
    out
}

/// Whether some nonzero member over the closure has rank one.
///
/// `vvᵀ ∈ W` exactly when `v` is a common zero of the apolar quadrics of
/// `W`. Three conics without a common zero form a regular sequence, whose
/// ideal contains every quartic, so it suffices to compare the rank of the
/// quartic part of the ideal with 15.
pub fn has_rank_one(f: &PrimeField, w: &Net) -> bool {
    let quadrics = crate::algebra::apolar_annihilator(f, w);
    let mut rows: Vec<Vec<Fp>> = Vec::new();
    for q in quadrics.forms() {
        for &e in crate::forms::monomials(2) {
            rows.push(
                q.mul(f, &TernaryForm::monomial(f, Fp(1), e))
                    .coeffs()
                    .to_vec(),
            );
        }
    }
    linalg::rank(f, &rows) < 15
}

/// Rank-one members found by searching the coefficient plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankOneLocus {
    /// Coefficient vectors of rank-one members, by field of definition.
    Finite(Vec<ProjPoint<Fq>>),
    /// A whole line of coefficient vectors gives rank-one members.
    ContainsLine,
}

impl RankOneLocus {
    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Finite(v) if v.is_empty())
    }
}

/// Exhaustive search over P²(F_{p^k}) for `k` in `levels` for coefficient
/// vectors whose member has rank at most one (the member is never zero).
pub fn rank_one_members(ctx: &FieldCtx, w: &Net, levels: &[u32]) -> Result<RankOneLocus, NetError> {
    let f = ctx.prime_field();
    let minors = member_minors(&f, w);
    let mut out = Vec::new();
    for &k in levels {
        let ext = ctx.level(k).map_err(FormsError::from)?;
        let lifted: Vec<TernaryForm<Fq>> = minors.iter().map(|m| lift_form(&ext, m)).collect();
        match common_zeros(&ext, &lifted) {
            Ok(pts) => out.extend(pts.into_iter().filter(|p| k == 1 || !p.is_rational())),
            Err(FormsError::InfiniteLocus) => return Ok(RankOneLocus::ContainsLine),
            Err(e) => return Err(e.into()),
        }
    }
    out.sort();
    out.dedup();
    Ok(RankOneLocus::Finite(out))
}

/// Orbit label of a net.
pub fn classify_net(ctx: &FieldCtx, w: &Net) -> Result<OrbitLabel, NetError> {
    let f = ctx.prime_field();
    let disc_type = classify_cubic(ctx, &net_disc(&f, w))?;
    classify_with_disc_type(ctx, w, disc_type)
}

/// Orbit label given the already computed discriminant type.
pub fn classify_with_disc_type(
    ctx: &FieldCtx,
    w: &Net,
    disc_type: CubicType,
) -> Result<OrbitLabel, NetError> {
    let f = ctx.prime_field();
    Ok(match disc_type {
        CubicType::Zero => {
            if classify_cubic(ctx, &net_slice(&f, w))? == CubicType::Zero {
                OrbitLabel::I_a
            } else {
                OrbitLabel::I_b
            }
        }
        CubicType::TripleLine => OrbitLabel::II,
        CubicType::DoubleLinePlusLine => OrbitLabel::III,
        CubicType::ThreeGeneralLines => {
            if has_rank_one(&f, w) {
                OrbitLabel::IV_a
            } else {
                OrbitLabel::IV_b
            }
        }
        CubicType::ConicPlusSecant => OrbitLabel::V,
        CubicType::ConicPlusTangent => OrbitLabel::VI,
        CubicType::Cusp => OrbitLabel::VII,
        CubicType::Node => OrbitLabel::VIII,
        CubicType::Nonsingular => OrbitLabel::Nonsingular,
        CubicType::ThreeConcurrentLines => {
            return Err(NetError::ImpossibleDiscriminant(w.canonical))
        }
    })
}

/// The ten table representatives, exactly as printed.
pub fn representatives(f: &PrimeField) -> [(OrbitLabel, Net); 10] {
    let m = |rows: [[i64; 3]; 3]| linalg::mat_from_i64(f, rows);
    let e = |i: usize, j: usize| sym_unit(f, i, j);
    let diag = |a: i64, b: i64, c: i64| m([[a, 0, 0], [0, b, 0], [0, 0, c]]);
    let anti = m([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    let bases: [[Mat3<Fp>; 3]; 10] = [
        [e(2, 2), e(1, 1), e(1, 2)],
        [e(0, 2), e(1, 2), e(2, 2)],
        [e(0, 0), anti, e(0, 1)],
        [e(0, 0), anti, e(1, 1)],
        [e(0, 0), e(1, 1), e(2, 2)],
        [
            diag(0, 1, -1),
            diag(1, 0, -1),
            m([[2, 1, 1], [1, 0, 1], [1, 1, 0]]),
        ],
        [e(0, 0), anti, e(2, 2)],
        [
            diag(0, 1, 1),
            diag(1, 0, 1),
            m([[2, 1, 0], [1, 0, 0], [0, 0, 0]]),
        ],
        [e(0, 0), anti, e(1, 2)],
        [e(0, 0), anti, m([[0, 1, 0], [1, 0, 0], [0, 0, 1]])],
    ];
    let mut i = 0;
    bases.map(|b| {
        let label = OrbitLabel::SINGULAR[i];
        i += 1;
        (
            label,
            Net::new(f, b).expect("table representatives are independent"),
        )
    })
}

pub fn representative(f: &PrimeField, label: OrbitLabel) -> Option<Net> {
    representatives(f)
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, n)| n)
}

/// A uniformly random invertible matrix.
pub fn random_gl3_with(f: &PrimeField, rng: &mut impl Rng) -> Mat3<Fp> {
    loop {
        let m = [[0; 3]; 3].map(|row: [u32; 3]| row.map(|_| Fp(rng.gen_range(0..f.p()))));
        if linalg::det(f, &m) != Fp(0) {
            return m;
        }
    }
}

/// A uniformly random net.
pub fn random_net_with(f: &PrimeField, rng: &mut impl Rng) -> Net {
    loop {
        let rows = [[Fp(0); 6]; 3].map(|row| row.map(|_| Fp(rng.gen_range(0..f.p()))));
        if let Some(s) = Subspace::from_rows(f, rows) {
            return Net::from_subspace(s);
        }
    }
}

pub fn random_gl3(f: &PrimeField, seed: u64) -> Mat3<Fp> {
    random_gl3_with(f, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_net(f: &PrimeField, seed: u64) -> Net {
    random_net_with(f, &mut ChaCha8Rng::seed_from_u64(seed))
}
