//! Pencils of conics: two-dimensional subspaces of symmetric matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::forms::{binary_roots, BinaryForm, BinaryRoots, FormsError};
use crate::gf::{FieldCtx, Fp, PrimeField};
use crate::linalg::{self, Mat3};
use crate::poly;
use crate::subspace::{sym_unit, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("the basis matrices are linearly dependent")]
    DependentBasis,
    #[error("a basis matrix is not symmetric")]
    NotSymmetric,
    #[error("the transforming matrix is singular")]
    SingularMatrix,
    #[error("pencil invariants {0} match no calibrated class")]
    UnrecognizedPencil(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// A pencil with the basis it was given and its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    basis: [Mat3<Fp>; 2],
    canonical: Subspace<2>,
}

impl Pencil {
    pub fn new(f: &PrimeField, basis: [Mat3<Fp>; 2]) -> Result<Self, PencilError> {
        if !basis.iter().all(linalg::is_symmetric) {
            return Err(PencilError::NotSymmetric);
        }
        let canonical = Subspace::from_matrices(f, &basis).ok_or(PencilError::DependentBasis)?;
        Ok(Self { basis, canonical })
    }

    pub fn from_subspace(s: Subspace<2>) -> Self {
        Self {
            basis: s.matrices(),
            canonical: s,
        }
    }

    pub fn basis(&self) -> &[Mat3<Fp>; 2] {
        &self.basis
    }

    pub fn canonical(&self) -> &Subspace<2> {
        &self.canonical
    }

    /// `{MᵀAM, MᵀBM}`.
    pub fn act(&self, f: &PrimeField, m: &Mat3<Fp>) -> Result<Self, PencilError> {
        if linalg::det(f, m) == Fp(0) {
            return Err(PencilError::SingularMatrix);
        }
        Self::new(f, self.basis.map(|a| linalg::congruence(f, m, &a)))
    }
}

/// The eight orbits of pencils, in table order.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PencilLabel {
    P1_a,
    P1_b,
    P1_c,
    Cube,
    SqOne_a,
    SqOne_b,
    SqOne_c,
    Simple111,
}

impl PencilLabel {
    pub const ALL: [PencilLabel; 8] = [
        Self::P1_a,
        Self::P1_b,
        Self::P1_c,
        Self::Cube,
        Self::SqOne_a,
        Self::SqOne_b,
        Self::SqOne_c,
        Self::Simple111,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::P1_a => "P1_a",
            Self::P1_b => "P1_b",
            Self::P1_c => "P1_c",
            Self::Cube => "Cube",
            Self::SqOne_a => "SqOne_a",
            Self::SqOne_b => "SqOne_b",
            Self::SqOne_c => "SqOne_c",
            Self::Simple111 => "Simple111",
        }
    }

    /// Root multiplicity profile named by the table row heading; `None` for
    /// the row whose discriminant vanishes identically.
    pub fn heading_profile(self) -> Option<Vec<u32>> {
        match self {
            Self::P1_a | Self::P1_b | Self::P1_c => None,
            Self::Cube => Some(vec![3]),
            Self::SqOne_a | Self::SqOne_b | Self::SqOne_c => Some(vec![2, 1]),
            Self::Simple111 => Some(vec![1, 1, 1]),
        }
    }
}

impl fmt::Display for PencilLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PencilLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown pencil label {s:?}"))
    }
}

/// `det(A·x + B·y)` for the stored basis `(A, B)`.
pub fn pencil_disc(f: &PrimeField, u: &Pencil) -> BinaryForm<Fp> {
    let [a, b] = u.basis;
    let e = |i: usize, j: usize| BinaryForm::new(vec![a[i][j], b[i][j]]);
    let minor = |r0: usize, r1: usize, r2: usize, r3: usize| {
        e(1, r0)
            .mul(f, &e(2, r1))
            .add(f, &e(1, r2).mul(f, &e(2, r3)).scale(f, f.elem(-1)))
    };
    let t0 = e(0, 0).mul(f, &minor(1, 2, 2, 1));
    let t1 = e(0, 1).mul(f, &minor(0, 2, 2, 0)).scale(f, f.elem(-1));
    let t2 = e(0, 2).mul(f, &minor(0, 1, 1, 0));
    t0.add(f, &t1).add(f, &t2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointCount {
    Finite(u32),
    Infinite,
}

/// The separating invariant vector of a pencil over the closure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PencilInvariants {
    pub disc_zero: bool,
    /// Root multiplicities of the discriminant, largest first (empty when it
    /// vanishes identically).
    pub profile: Vec<u32>,
    /// Number of members of rank at most one.
    pub rank_le1_points: PointCount,
    /// Rank of the member at each multiple root of the discriminant, sorted.
    pub multiple_root_ranks: Vec<u32>,
    pub common_kernel: bool,
}

impl fmt::Display for PencilInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts = match self.rank_le1_points {
            PointCount::Finite(n) => n.to_string(),
            PointCount::Infinite => "inf".into(),
        };
        write!(
            f,
            "disc_zero={} profile={:?} rank<=1 points={} multiple-root ranks={:?} common_kernel={}",
            self.disc_zero, self.profile, pts, self.multiple_root_ranks, self.common_kernel
        )
    }
}

fn member(f: &PrimeField, u: &Pencil, x: Fp, y: Fp) -> Mat3<Fp> {
    let [a, b] = u.basis;
    linalg::mat_add(
        f,
        &linalg::mat_scale(f, &a, x),
        &linalg::mat_scale(f, &b, y),
    )
}

/// Number of distinct points of P¹ over the closure where every 2×2 minor of
/// `x·A + y·B` vanishes.
fn rank_drop_points(f: &PrimeField, u: &Pencil) -> PointCount {
    let [a, b] = u.basis;
    let e = |i: usize, j: usize| BinaryForm::new(vec![a[i][j], b[i][j]]);
    let mut minors = Vec::new();
    for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
        for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
            let m = e(r0, c0)
                .mul(f, &e(r1, c1))
                .add(f, &e(r0, c1).mul(f, &e(r1, c0)).scale(f, f.elem(-1)));
            minors.push(m);
        }
    }
    if minors.iter().all(|m| m.is_zero(f)) {
        return PointCount::Infinite;
    }
    // [1:0] is a common root when every leading coefficient vanishes
    let at_infinity = minors.iter().all(|m| m.coeffs()[0] == Fp(0));
    let g = minors
        .iter()
        .fold(Vec::new(), |g, m| poly::gcd(f, &g, &m.dehomogenize(f)));
    let squarefree = poly::div_rem(f, &g, &poly::gcd(f, &g, &poly::derivative(f, &g))).0;
    let affine = poly::degree(&squarefree).unwrap_or(0) as u32;
    PointCount::Finite(affine + at_infinity as u32)
}

pub fn pencil_invariants(ctx: &FieldCtx, u: &Pencil) -> Result<PencilInvariants, FormsError> {
    let f = ctx.prime_field();
    let disc = pencil_disc(&f, u);
    let roots = binary_roots(ctx, &disc)?;
    let (disc_zero, profile, multiple_root_ranks) = match &roots {
        BinaryRoots::IdenticallyZero => (true, Vec::new(), Vec::new()),
        BinaryRoots::Roots(rs) => {
            let mut ranks = Vec::new();
            for (pt, m) in rs {
                if *m < 2 {
                    continue;
                }
                // a repeated root of a binary cubic is rational
                let [x, y] = pt
                    .coords()
                    .map(|c| c.as_base().expect("repeated roots are rational"));
                ranks.push(linalg::mat_rank(&f, &member(&f, u, x, y)) as u32);
            }
            ranks.sort_unstable();
            (false, roots.profile().unwrap_or_default(), ranks)
        }
    };
    let [a, b] = u.basis;
    let stacked: Vec<Vec<Fp>> = a.iter().chain(b.iter()).map(|r| r.to_vec()).collect();
    let common_kernel = !linalg::kernel(&f, &stacked, 3).is_empty();
    Ok(PencilInvariants {
        disc_zero,
        profile,
        rank_le1_points: rank_drop_points(&f, u),
        multiple_root_ranks,
        common_kernel,
    })
}

/// The eight table representatives, exactly as printed.
pub fn pencil_representatives(f: &PrimeField) -> [(PencilLabel, Pencil); 8] {
    let m = |rows: [[i64; 3]; 3]| linalg::mat_from_i64(f, rows);
    let e = |i: usize, j: usize| sym_unit(f, i, j);
    let diag = |a: i64, b: i64, c: i64| m([[a, 0, 0], [0, b, 0], [0, 0, c]]);
    let bases: [[Mat3<Fp>; 2]; 8] = [
        [e(2, 2), e(1, 1)],
        [e(2, 2), e(1, 2)],
        [e(0, 2), e(1, 2)],
        [e(0, 0), m([[0, 0, 1], [0, 1, 0], [1, 0, 0]])],
        [diag(1, -1, 0), m([[1, 0, 1], [0, 0, 1], [1, 1, 0]])],
        [e(1, 2), e(0, 0)],
        [diag(0, 1, 1), m([[0, 0, 1], [0, 0, 0], [1, 0, 1]])],
        [diag(0, 1, 1), diag(1, 0, 1)],
    ];
    let mut i = 0;
    bases.map(|b| {
        let label = PencilLabel::ALL[i];
        i += 1;
        (
            label,
            Pencil::new(f, b).expect("table representatives are independent"),
        )
    })
}

/// A representative whose computed discriminant profile differs from its
/// row heading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeadingDiscrepancy {
    pub label: PencilLabel,
    pub heading: Option<Vec<u32>>,
    pub computed: Option<Vec<u32>>,
}

/// Maps invariant vectors to labels, calibrated on the representatives.
#[derive(Clone, Debug)]
pub struct PencilClassifier {
    table: Vec<(PencilInvariants, PencilLabel)>,
    discrepancies: Vec<HeadingDiscrepancy>,
}

impl PencilClassifier {
    pub fn calibrate(ctx: &FieldCtx) -> Result<Self, PencilError> {
        let f = ctx.prime_field();
        let mut table: Vec<(PencilInvariants, PencilLabel)> = Vec::new();
        let mut discrepancies = Vec::new();
        for (label, rep) in pencil_representatives(&f) {
            let inv = pencil_invariants(ctx, &rep)?;
            if let Some((_, other)) = table.iter().find(|(i, _)| *i == inv) {
                return Err(PencilError::Calibration(format!(
                    "{label} and {other} share invariants {inv}"
                )));
            }
            let computed = (!inv.disc_zero).then(|| inv.profile.clone());
            if computed != label.heading_profile() {
                discrepancies.push(HeadingDiscrepancy {
                    label,
                    heading: label.heading_profile(),
                    computed,
                });
            }
            table.push((inv, label));
        }
        Ok(Self {
            table,
            discrepancies,
        })
    }

    pub fn entries(&self) -> &[(PencilInvariants, PencilLabel)] {
        &self.table
    }

    pub fn discrepancies(&self) -> &[HeadingDiscrepancy] {
        &self.discrepancies
    }

    pub fn lookup(&self, inv: &PencilInvariants) -> Option<PencilLabel> {
        self.table.iter().find(|(i, _)| i == inv).map(|&(_, l)| l)
    }

    pub fn classify(&self, ctx: &FieldCtx, u: &Pencil) -> Result<PencilLabel, PencilError> {
        let inv = pencil_invariants(ctx, u)?;
        self.lookup(&inv)
            .ok_or_else(|| PencilError::UnrecognizedPencil(inv.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (FieldCtx, PrimeField) {
        let ctx = FieldCtx::standard(5).unwrap();
        let f = ctx.prime_field();
        (ctx, f)
    }

    #[test]
    fn disc_examples() {
        let (_, f) = setup();
        let reps = pencil_representatives(&f);
        assert!(pencil_disc(&f, &reps[0].1).is_zero(&f));
        assert_eq!(
            pencil_disc(&f, &reps[5].1),
            BinaryForm::from_i64(&f, &[0, -1, 0, 0])
        );
        assert_eq!(
            pencil_disc(&f, &reps[7].1),
            BinaryForm::from_i64(&f, &[0, 1, 1, 0])
        );
        // the first (1²1) representative has a triple root
        assert_eq!(
            pencil_disc(&f, &reps[4].1),
            BinaryForm::from_i64(&f, &[0, 0, 0, -1])
        );
    }

    #[test]
    fn invariant_examples() {
        let (ctx, f) = setup();
        let reps = pencil_representatives(&f);
        let inv = pencil_invariants(&ctx, &reps[0].1).unwrap();
        assert!(inv.disc_zero);
        assert_eq!(inv.rank_le1_points, PointCount::Finite(2));
        assert!(inv.common_kernel);
        let inv = pencil_invariants(&ctx, &reps[2].1).unwrap();
        assert!(inv.disc_zero);
        assert_eq!(inv.rank_le1_points, PointCount::Finite(0));
        assert!(!inv.common_kernel);
        let inv = pencil_invariants(&ctx, &reps[5].1).unwrap();
        assert_eq!(inv.profile, vec![2, 1]);
        assert_eq!(inv.multiple_root_ranks, vec![1]);
    }

    #[test]
    fn calibration_separates_and_flags_one_row() {
        let (ctx, f) = setup();
        let cls = PencilClassifier::calibrate(&ctx).unwrap();
        assert_eq!(cls.entries().len(), 8);
        assert_eq!(cls.discrepancies().len(), 1);
        assert_eq!(cls.discrepancies()[0].label, PencilLabel::SqOne_a);
        assert_eq!(cls.discrepancies()[0].computed, Some(vec![3]));
        for (label, rep) in pencil_representatives(&f) {
            assert_eq!(cls.classify(&ctx, &rep).unwrap(), label);
        }
    }

    #[test]
    fn rejects_bad_bases() {
        let (_, f) = setup();
        let a = sym_unit(&f, 0, 0);
        assert_eq!(Pencil::new(&f, [a, a]), Err(PencilError::DependentBasis));
        let mut b = sym_unit(&f, 0, 1);
        b[1][0] = Fp(0);
        assert_eq!(Pencil::new(&f, [a, b]), Err(PencilError::NotSymmetric));
    }
}
