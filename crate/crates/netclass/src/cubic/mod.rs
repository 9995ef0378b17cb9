//! Plane cubics: the singularity taxonomy and the classical invariants.

mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::forms::{self, common_zeros, conic_rank, linear_factors, FormsError, TernaryForm};
use crate::gf::{Field, FieldCtx, Fp};
use crate::linalg;

use tables::{S_TERMS, T_TERMS};

/// Geometric type of a plane cubic curve, including the degenerate ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CubicType {
    /// The zero form, whose zero set is the whole plane.
    Zero,
    TripleLine,
    DoubleLinePlusLine,
    ThreeConcurrentLines,
    ThreeGeneralLines,
    ConicPlusSecant,
    ConicPlusTangent,
    Cusp,
    Node,
    Nonsingular,
}

impl CubicType {
    pub const ALL: [CubicType; 10] = [
        Self::Zero,
        Self::TripleLine,
        Self::DoubleLinePlusLine,
        Self::ThreeConcurrentLines,
        Self::ThreeGeneralLines,
        Self::ConicPlusSecant,
        Self::ConicPlusTangent,
        Self::Cusp,
        Self::Node,
        Self::Nonsingular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Zero => "Zero",
            Self::TripleLine => "TripleLine",
            Self::DoubleLinePlusLine => "DoubleLinePlusLine",
            Self::ThreeConcurrentLines => "ThreeConcurrentLines",
            Self::ThreeGeneralLines => "ThreeGeneralLines",
            Self::ConicPlusSecant => "ConicPlusSecant",
            Self::ConicPlusTangent => "ConicPlusTangent",
            Self::Cusp => "Cusp",
            Self::Node => "Node",
            Self::Nonsingular => "Nonsingular",
        }
    }
}

impl fmt::Display for CubicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CubicType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown cubic type {s:?}"))
    }
}

/// Decides the [`CubicType`] of a ternary cubic over `F_p`.
///
/// A nonzero discriminant settles nonsingularity. Otherwise the
/// factorization over the closure settles every reducible case, and an
/// irreducible cubic has at most one singular point, which is then rational
/// and is typed by the rank of its tangent cone.
pub fn classify_cubic(ctx: &FieldCtx, g: &TernaryForm<Fp>) -> Result<CubicType, FormsError> {
    let f = ctx.prime_field();
    if g.degree() != 3 {
        return Err(FormsError::UnsupportedDegree(g.degree()));
    }
    if g.is_zero(&f) {
        return Ok(CubicType::Zero);
    }
    if !aronhold(&f, g).is_singular(&f) {
        return Ok(CubicType::Nonsingular);
    }
    let lf = linear_factors(ctx, g)?;
    let mut mults: Vec<u32> = lf.lines.iter().map(|&(_, m)| m).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    Ok(match mults.as_slice() {
        [3] => CubicType::TripleLine,
        [2, 1] => CubicType::DoubleLinePlusLine,
        [1, 1, 1] => {
            let top = lf
                .lines
                .iter()
                .map(|(l, _)| l.coords()[0].level())
                .max()
                .unwrap_or(1);
            let ext = ctx.level(top)?;
            let mut m = [[ext.zero(); 3]; 3];
            for (row, (line, _)) in m.iter_mut().zip(&lf.lines) {
                for (slot, &c) in row.iter_mut().zip(line.coords().iter()) {
                    *slot = ctx.embed(c, top)?;
                }
            }
            if ext.is_zero(linalg::det(&ext, &m)) {
                CubicType::ThreeConcurrentLines
            } else {
                CubicType::ThreeGeneralLines
            }
        }
        [1] => {
            // a lone line is Galois-stable, hence rational
            let line = lf.lines[0]
                .0
                .to_base()
                .expect("a lone linear factor is rational");
            debug_assert_eq!(conic_rank(&f, &lf.residual), 3);
            let rows = vec![line.coords().to_vec()];
            let ker = linalg::kernel(&f, &rows, 3);
            let p = [ker[0][0], ker[0][1], ker[0][2]];
            let q = [ker[1][0], ker[1][1], ker[1][2]];
            let meet = lf.residual.restrict(&f, p, q);
            if meet.quadratic_discriminant(&f) == Fp(0) {
                CubicType::ConicPlusTangent
            } else {
                CubicType::ConicPlusSecant
            }
        }
        [] => {
            let mut forms_ = vec![g.clone()];
            forms_.extend(g.partials(&f));
            let sing = common_zeros(&f, &forms_)?;
            match sing.first() {
                None => CubicType::Nonsingular,
                Some(pt) => tangent_cone_type(&f, g, pt.coords()),
            }
        }
        other => unreachable!("impossible multiplicity profile {other:?} for a cubic"),
    })
}

/// Node or cusp at a singular point `pt` of an irreducible cubic.
fn tangent_cone_type(f: &crate::gf::PrimeField, g: &TernaryForm<Fp>, pt: [Fp; 3]) -> CubicType {
    let (u, v) = forms::complement(pt);
    let m = [0, 1, 2].map(|i| [pt[i], u[i], v[i]]);
    // the singular point moves to [1:0:0]; the tangent cone is the x-coefficient
    let h = g.substitute(f, &m);
    let a = h.coeff([1, 2, 0]);
    let b = h.coeff([1, 1, 1]);
    let c = h.coeff([1, 0, 2]);
    let disc = f.sub(f.mul(b, b), f.mul(f.elem(4), f.mul(a, c)));
    debug_assert!(
        [a, b, c].iter().any(|&t| t != Fp(0)),
        "triple point on an irreducible cubic"
    );
    if disc == Fp(0) {
        CubicType::Cusp
    } else {
        CubicType::Node
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubicError {
    #[error("j is undefined because the discriminant vanishes")]
    JUndefined,
}

/// The degree-4 invariant `S`, degree-6 invariant `T` and `Δ = S³ − T²`.
///
/// Normalized so that `y²z − x³ − axz² − bz³` has `S = −48a`, `T = 864b`
/// and `Δ = −27648(4a³ + 27b²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubicInvariants<E> {
    pub s: E,
    pub t: E,
    pub delta: E,
}

impl<E: Copy + Eq> CubicInvariants<E> {
    /// `j = 1728·S³/Δ`.
    pub fn j<F: Field<Elem = E>>(&self, f: &F) -> Result<E, CubicError> {
        let inv = f.inv(self.delta).map_err(|_| CubicError::JUndefined)?;
        let s3 = f.mul(self.s, f.mul(self.s, self.s));
        Ok(f.mul(f.mul(f.from_i64(1728), s3), inv))
    }

    pub fn is_singular<F: Field<Elem = E>>(&self, f: &F) -> bool {
        f.is_zero(self.delta)
    }
}

fn eval_terms<F: Field, const N: usize>(
    f: &F,
    c: &[F::Elem],
    terms: &[(i64, [usize; N])],
) -> F::Elem {
    terms.iter().fold(f.zero(), |acc, (k, idx)| {
        let prod = idx.iter().fold(f.from_i64(*k), |p, &i| f.mul(p, c[i]));
        f.add(acc, prod)
    })
}

/// Classical invariants of a ternary cubic over any field of the tower.
pub fn aronhold<F: Field>(f: &F, g: &TernaryForm<F::Elem>) -> CubicInvariants<F::Elem> {
    assert_eq!(g.degree(), 3, "aronhold invariants are defined for cubics");
    let s = eval_terms(f, g.coeffs(), &S_TERMS);
    let t = eval_terms(f, g.coeffs(), &T_TERMS);
    let delta = f.sub(f.mul(s, f.mul(s, s)), f.mul(t, t));
    CubicInvariants { s, t, delta }
}
