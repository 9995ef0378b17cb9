//! Brute-force ground truth over F₅: orbit enumeration and full sweeps.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cubic::{classify_cubic, CubicType};
use crate::gf::{Field, FieldCtx, Fp, PrimeField};
use crate::linalg::{self, Mat3};
use crate::net::{
    classify_with_disc_type, net_disc, net_slice, random_gl3_with, Net, NetError, OrbitLabel,
};
use crate::parallel::{map_range, map_slice, Execution};
use crate::pencil::{pencil_invariants, Pencil, PencilClassifier, PencilError, PencilLabel};
use crate::subspace::{gaussian_binomial, CongruenceOp, Grassmannian, Subspace};

/// The only field the oracle runs over.
pub const ORACLE_PRIME: u64 = 5;

/// `|GL(3, F₅)|`.
pub const GL3_F5_ORDER: u64 = 1_488_000;

/// Scalars act trivially on subspaces, so orbit sizes divide this.
pub const PGL3_F5_ORDER: u64 = GL3_F5_ORDER / 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("orbit enumeration needs q = 5, got q = {0}")]
    UnsupportedField(u64),
    #[error("consistency failure: {0}")]
    Consistency(Box<ConsistencyFailure>),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

/// A subspace on which a classifier invariant was violated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyFailure {
    pub kind: SweepKind,
    /// Canonical rows of the offending subspace.
    pub subspace: Vec<[u32; 6]>,
    pub reason: String,
}

impl fmt::Display for ConsistencyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}: {}", self.kind, self.subspace, self.reason)
    }
}

fn failure<const R: usize>(
    kind: SweepKind,
    s: &Subspace<R>,
    reason: impl Into<String>,
) -> ConsistencyFailure {
    ConsistencyFailure {
        kind,
        subspace: s.rows().iter().map(|r| r.map(|c| c.0)).collect(),
        reason: reason.into(),
    }
}

fn require_oracle_field(f: &PrimeField) -> Result<(), OracleError> {
    if f.p() as u64 == ORACLE_PRIME {
        Ok(())
    } else {
        Err(OracleError::UnsupportedField(f.p() as u64))
    }
}

/// Generators of GL(3, F_p): `diag(g, 1, 1)` for a primitive root `g` and
/// the six elementary transvections.
pub fn gl3_generators(f: &PrimeField) -> Vec<Mat3<Fp>> {
    let p = f.p() as u64;
    let g = (2..p)
        .find(|&g| (1..p - 1).all(|e| f.pow(Fp(g as u32), e as u128) != Fp(1)))
        .expect("F_p has a primitive root");
    let mut gens = vec![linalg::identity(f)];
    gens[0][0][0] = Fp(g as u32);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = linalg::identity(f);
                m[i][j] = Fp(1);
                gens.push(m);
            }
        }
    }
    gens
}

/// The matrix with entries given by the base-p digits of `code`, first row
/// most significant.
fn matrix_from_code(p: u64, mut code: u64) -> Mat3<Fp> {
    let mut m = [[Fp(0); 3]; 3];
    for slot in m.iter_mut().flatten().rev() {
        *slot = Fp((code % p) as u32);
        code /= p;
    }
    m
}

/// Every invertible 3×3 matrix over F_p, in code order.
pub fn gl3_elements(f: &PrimeField) -> impl Iterator<Item = Mat3<Fp>> + '_ {
    let p = f.p() as u64;
    (0..p.pow(9))
        .map(move |c| matrix_from_code(p, c))
        .filter(move |m| linalg::det(f, m) != Fp(0))
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: u64) -> Self {
        Self(vec![0; n.div_ceil(64) as usize])
    }

    /// Sets bit `i`, returning whether it was clear.
    fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }
}

/// An orbit as the sorted Grassmannian indices of its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<const R: usize> {
    members: Vec<u64>,
}

impl<const R: usize> Orbit<R> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, g: &Grassmannian<R>, s: &Subspace<R>) -> bool {
        self.members.binary_search(&g.rank(s)).is_ok()
    }

    pub fn subspaces<'a>(
        &'a self,
        g: &'a Grassmannian<R>,
    ) -> impl Iterator<Item = Subspace<R>> + 'a {
        self.members.iter().map(|&i| g.unrank(i))
    }
}

/// Orbit by breadth-first search over the generators.
pub fn orbit_by_generators<const R: usize>(g: &Grassmannian<R>, start: &Subspace<R>) -> Orbit<R> {
    let f = g.field();
    let ops: Vec<CongruenceOp> = gl3_generators(&f)
        .iter()
        .map(|m| CongruenceOp::new(&f, m))
        .collect();
    let mut seen = Bitset::new(g.len());
    let first = g.rank(start);
    seen.insert(first);
    let mut members = vec![first];
    let mut queue = VecDeque::from([*start]);
    while let Some(s) = queue.pop_front() {
        for op in &ops {
            let t = s.act(&f, op);
            let i = g.rank(&t);
            if seen.insert(i) {
                members.push(i);
                queue.push_back(t);
            }
        }
    }
    members.sort_unstable();
    Orbit { members }
}

/// Orbit by applying every element of GL(3, F_p).
pub fn orbit_by_group<const R: usize>(
    g: &Grassmannian<R>,
    start: &Subspace<R>,
    exec: Execution,
) -> Orbit<R> {
    let f = g.field();
    let p = f.p() as u64;
    // one job per choice of the first row
    let chunks = map_range(exec, 0..p.pow(3), |row0| {
        let mut out = Vec::new();
        for rest in 0..p.pow(6) {
            let m = matrix_from_code(p, row0 * p.pow(6) + rest);
            if linalg::det(&f, &m) == Fp(0) {
                continue;
            }
            out.push(g.rank(&start.act(&f, &CongruenceOp::new(&f, &m))));
        }
        out.sort_unstable();
        out.dedup();
        out
    });
    let mut members: Vec<u64> = chunks.into_iter().flatten().collect();
    members.sort_unstable();
    members.dedup();
    Orbit { members }
}

/// The full F₅-orbit of a subspace.
pub fn enumerate_orbit<const R: usize>(
    f: &PrimeField,
    start: &Subspace<R>,
) -> Result<Orbit<R>, OracleError> {
    require_oracle_field(f)?;
    Ok(orbit_by_generators(&Grassmannian::new(*f), start))
}

/// Whether `b` lies in the F₅-orbit of `a`.
pub fn orbits_equal<const R: usize>(
    f: &PrimeField,
    a: &Subspace<R>,
    b: &Subspace<R>,
) -> Result<bool, OracleError> {
    require_oracle_field(f)?;
    let g = Grassmannian::new(*f);
    Ok(enumerate_orbit(f, a)?
        .members
        .binary_search(&g.rank(b))
        .is_ok())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Net,
    Pencil,
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepKind::Net => "net",
            SweepKind::Pencil => "pencil",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Full,
    Sample { n: u64, seed: u64 },
}

/// Summary of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCensus {
    pub kind: SweepKind,
    pub p: u64,
    pub mode: SweepMode,
    /// Number of subspaces classified.
    pub total: u64,
    /// `[6 choose R]_p`.
    pub grassmannian_size: u64,
    pub label_counts: BTreeMap<String, u64>,
    /// Discriminant type (nets) or root profile (pencils) counts.
    pub disc_counts: BTreeMap<String, u64>,
    /// Slice types seen per label: per orbit in full mode, per net otherwise.
    pub slice_types: BTreeMap<String, BTreeMap<String, u64>>,
    /// Sizes of the F₅-orbits making up each label, full mode only.
    pub orbit_sizes: BTreeMap<String, Vec<u64>>,
    pub impossible_disc: u64,
    pub unclassified: u64,
    pub notes: Vec<String>,
}

/// What a sweep needs to know about one kind of subspace.
trait SweepTarget<const R: usize>: Sync {
    const KIND: SweepKind;
    fn labels(&self) -> Vec<String>;
    fn discs(&self) -> Vec<String>;
    /// `(label code, disc code)`, or the reason the subspace is rejected.
    fn classify(&self, s: &Subspace<R>) -> Result<(u8, u8), Rejection>;
    fn act(&self, s: &Subspace<R>, m: &Mat3<Fp>) -> Subspace<R>;
    fn slice_type(&self, _s: &Subspace<R>) -> Option<String> {
        None
    }
}

enum Rejection {
    Impossible(String),
    Unclassified(String),
}

struct NetTarget {
    ctx: FieldCtx,
}

impl SweepTarget<3> for NetTarget {
    const KIND: SweepKind = SweepKind::Net;

    fn labels(&self) -> Vec<String> {
        OrbitLabel::ALL.iter().map(|l| l.to_string()).collect()
    }

    fn discs(&self) -> Vec<String> {
        CubicType::ALL.iter().map(|t| t.to_string()).collect()
    }

    fn classify(&self, s: &Subspace<3>) -> Result<(u8, u8), Rejection> {
        let f = self.ctx.prime_field();
        let w = Net::from_subspace(*s);
        let disc = classify_cubic(&self.ctx, &net_disc(&f, &w))
            .map_err(|e| Rejection::Unclassified(e.to_string()))?;
        let disc_code = CubicType::ALL.iter().position(|&t| t == disc).unwrap() as u8;
        match classify_with_disc_type(&self.ctx, &w, disc) {
            Ok(l) => Ok((
                OrbitLabel::ALL.iter().position(|&m| m == l).unwrap() as u8,
                disc_code,
            )),
            Err(NetError::ImpossibleDiscriminant(_)) => {
                Err(Rejection::Impossible(disc.to_string()))
            }
            Err(e) => Err(Rejection::Unclassified(e.to_string())),
        }
    }

    fn act(&self, s: &Subspace<3>, m: &Mat3<Fp>) -> Subspace<3> {
        s.act(
            &self.ctx.prime_field(),
            &CongruenceOp::new(&self.ctx.prime_field(), m),
        )
    }

    fn slice_type(&self, s: &Subspace<3>) -> Option<String> {
        let f = self.ctx.prime_field();
        let slice = net_slice(&f, &Net::from_subspace(*s));
        Some(
            classify_cubic(&self.ctx, &slice)
                .map_or_else(|e| format!("error: {e}"), |t| t.to_string()),
        )
    }
}

struct PencilTarget {
    ctx: FieldCtx,
    classifier: PencilClassifier,
    profiles: Vec<String>,
}

fn profile_name(disc_zero: bool, profile: &[u32]) -> String {
    if disc_zero {
        "zero".to_string()
    } else {
        let parts: Vec<String> = profile.iter().map(|m| m.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl SweepTarget<2> for PencilTarget {
    const KIND: SweepKind = SweepKind::Pencil;

    fn labels(&self) -> Vec<String> {
        PencilLabel::ALL.iter().map(|l| l.to_string()).collect()
    }

    fn discs(&self) -> Vec<String> {
        self.profiles.clone()
    }

    fn classify(&self, s: &Subspace<2>) -> Result<(u8, u8), Rejection> {
        let u = Pencil::from_subspace(*s);
        let inv =
            pencil_invariants(&self.ctx, &u).map_err(|e| Rejection::Unclassified(e.to_string()))?;
        let name = profile_name(inv.disc_zero, &inv.profile);
        let disc_code = self
            .profiles
            .iter()
            .position(|p| *p == name)
            .ok_or_else(|| Rejection::Unclassified(format!("unexpected profile {name}")))?
            as u8;
        let label = self
            .classifier
            .lookup(&inv)
            .ok_or_else(|| Rejection::Unclassified(format!("invariants {inv} match no class")))?;
        Ok((
            PencilLabel::ALL.iter().position(|&l| l == label).unwrap() as u8,
            disc_code,
        ))
    }

    fn act(&self, s: &Subspace<2>, m: &Mat3<Fp>) -> Subspace<2> {
        s.act(
            &self.ctx.prime_field(),
            &CongruenceOp::new(&self.ctx.prime_field(), m),
        )
    }
}

fn pencil_target(ctx: &FieldCtx) -> Result<PencilTarget, OracleError> {
    let profiles = ["zero", "[1,1,1]", "[2,1]", "[3]"]
        .map(String::from)
        .to_vec();
    Ok(PencilTarget {
        ctx: ctx.clone(),
        classifier: PencilClassifier::calibrate(ctx)?,
        profiles,
    })
}

const CHUNK: u64 = 1 << 13;

struct Union {
    parent: Vec<u32>,
}

impl Union {
    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let up = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = up;
            i = up;
        }
        i
    }

    fn join(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn empty_census<const R: usize, T: SweepTarget<R>>(
    target: &T,
    p: u64,
    mode: SweepMode,
) -> OrbitCensus {
    OrbitCensus {
        kind: T::KIND,
        p,
        mode,
        total: 0,
        grassmannian_size: gaussian_binomial(6, R as u32, p),
        label_counts: target.labels().into_iter().map(|l| (l, 0)).collect(),
        disc_counts: target.discs().into_iter().map(|d| (d, 0)).collect(),
        slice_types: BTreeMap::new(),
        orbit_sizes: BTreeMap::new(),
        impossible_disc: 0,
        unclassified: 0,
        notes: Vec::new(),
    }
}

/// Classifies every index; returns codes or the first rejection.
fn classify_all<const R: usize, T: SweepTarget<R>>(
    g: &Grassmannian<R>,
    target: &T,
    indices: &[u64],
    exec: Execution,
    census: &mut OrbitCensus,
) -> Result<Vec<(u8, u8)>, ConsistencyFailure> {
    let chunks: Vec<&[u64]> = indices.chunks(CHUNK as usize).collect();
    let results = map_slice(exec, &chunks, |chunk| {
        chunk
            .iter()
            .map(|&i| target.classify(&g.unrank(i)))
            .collect::<Vec<_>>()
    });
    let labels = target.labels();
    let discs = target.discs();
    let mut codes = Vec::with_capacity(indices.len());
    let mut first_failure = None;
    for (&i, r) in indices.iter().zip(results.into_iter().flatten()) {
        match r {
            Ok((l, d)) => {
                *census.label_counts.get_mut(&labels[l as usize]).unwrap() += 1;
                *census.disc_counts.get_mut(&discs[d as usize]).unwrap() += 1;
                codes.push((l, d));
            }
            Err(rej) => {
                let reason = match rej {
                    Rejection::Impossible(d) => {
                        census.impossible_disc += 1;
                        format!("impossible discriminant type {d}")
                    }
                    Rejection::Unclassified(why) => {
                        census.unclassified += 1;
                        why
                    }
                };
                first_failure.get_or_insert_with(|| failure(T::KIND, &g.unrank(i), reason));
                codes.push((u8::MAX, u8::MAX));
            }
        }
        census.total += 1;
    }
    match first_failure {
        Some(fail) => Err(fail),
        None => Ok(codes),
    }
}

fn full_sweep_generic<const R: usize, T: SweepTarget<R>>(
    f: &PrimeField,
    target: &T,
    exec: Execution,
) -> Result<OrbitCensus, OracleError> {
    let g = Grassmannian::<R>::new(*f);
    let n = g.len();
    let mut census = empty_census(target, f.p() as u64, SweepMode::Full);
    let all: Vec<u64> = (0..n).collect();
    let codes = classify_all(&g, target, &all, exec, &mut census)
        .map_err(|e| OracleError::Consistency(Box::new(e)))?;
    if census.total != census.grassmannian_size {
        return Err(OracleError::Consistency(Box::new(ConsistencyFailure {
            kind: T::KIND,
            subspace: Vec::new(),
            reason: format!(
                "swept {} subspaces, expected {}",
                census.total, census.grassmannian_size
            ),
        })));
    }

    let ops: Vec<CongruenceOp> = gl3_generators(f)
        .iter()
        .map(|m| CongruenceOp::new(f, m))
        .collect();
    let mut uf = Union {
        parent: (0..n as u32).collect(),
    };
    let starts: Vec<u64> = (0..n).step_by(CHUNK as usize).collect();
    for batch in starts.chunks(64) {
        let images = map_slice(exec, batch, |&s| {
            let end = (s + CHUNK).min(n);
            let mut out = Vec::with_capacity(((end - s) as usize) * ops.len());
            for i in s..end {
                let sub = g.unrank(i);
                for op in &ops {
                    out.push((i as u32, g.rank(&sub.act(f, op)) as u32));
                }
            }
            out
        });
        for (a, b) in images.into_iter().flatten() {
            uf.join(a, b);
        }
    }

    let labels = target.labels();
    let mut orbit_size: BTreeMap<u32, u64> = BTreeMap::new();
    for i in 0..n as u32 {
        let root = uf.find(i);
        *orbit_size.entry(root).or_default() += 1;
        if codes[i as usize] != codes[root as usize] {
            let reason = format!(
                "label {} differs from {} elsewhere on its orbit",
                labels[codes[i as usize].0 as usize], labels[codes[root as usize].0 as usize]
            );
            return Err(OracleError::Consistency(Box::new(failure(
                T::KIND,
                &g.unrank(i as u64),
                reason,
            ))));
        }
    }
    for (&root, &size) in &orbit_size {
        if !PGL3_F5_ORDER.is_multiple_of(size) && f.p() as u64 == ORACLE_PRIME {
            let reason = format!("orbit size {size} does not divide {PGL3_F5_ORDER}");
            return Err(OracleError::Consistency(Box::new(failure(
                T::KIND,
                &g.unrank(root as u64),
                reason,
            ))));
        }
        let label = labels[codes[root as usize].0 as usize].clone();
        census
            .orbit_sizes
            .entry(label.clone())
            .or_default()
            .push(size);
        if let Some(st) = target.slice_type(&g.unrank(root as u64)) {
            *census
                .slice_types
                .entry(label)
                .or_default()
                .entry(st)
                .or_default() += 1;
        }
    }
    for sizes in census.orbit_sizes.values_mut() {
        sizes.sort_unstable();
    }
    census.notes.push(format!("{} orbits", orbit_size.len()));
    Ok(census)
}

fn sample_sweep_generic<const R: usize, T: SweepTarget<R>>(
    f: &PrimeField,
    target: &T,
    n: u64,
    seed: u64,
    exec: Execution,
) -> Result<OrbitCensus, OracleError> {
    let g = Grassmannian::<R>::new(*f);
    let mut census = empty_census(target, f.p() as u64, SweepMode::Sample { n, seed });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(u64, Mat3<Fp>)> = (0..n)
        .map(|_| (rng.gen_range(0..g.len()), random_gl3_with(f, &mut rng)))
        .collect();
    let indices: Vec<u64> = picks.iter().map(|&(i, _)| i).collect();
    let codes = classify_all(&g, target, &indices, exec, &mut census)
        .map_err(|e| OracleError::Consistency(Box::new(e)))?;
    let labels = target.labels();
    let checks = map_slice(exec, &picks, |(i, m)| {
        let s = g.unrank(*i);
        let moved = target.classify(&target.act(&s, m)).ok();
        (moved, target.slice_type(&s))
    });
    for (((i, _), &code), (moved, slice)) in picks.iter().zip(&codes).zip(checks) {
        if moved != Some(code) {
            let reason = "label changes under a random congruence".to_string();
            return Err(OracleError::Consistency(Box::new(failure(
                T::KIND,
                &g.unrank(*i),
                reason,
            ))));
        }
        if let Some(st) = slice {
            let label = labels[code.0 as usize].clone();
            *census
                .slice_types
                .entry(label)
                .or_default()
                .entry(st)
                .or_default() += 1;
        }
    }
    Ok(census)
}

/// Classifies every net (full mode) or `n` random nets of F₅⁶.
pub fn full_sweep_nets(
    f: &PrimeField,
    mode: SweepMode,
    exec: Execution,
) -> Result<OrbitCensus, OracleError> {
    require_oracle_field(f)?;
    let target = NetTarget {
        ctx: FieldCtx::standard(f.p() as u64).expect("oracle field"),
    };
    match mode {
        SweepMode::Full => full_sweep_generic::<3, _>(f, &target, exec),
        SweepMode::Sample { n, seed } => sample_sweep_generic::<3, _>(f, &target, n, seed, exec),
    }
}

/// Pencil counterpart of [`full_sweep_nets`].
pub fn full_sweep_pencils(
    f: &PrimeField,
    mode: SweepMode,
    exec: Execution,
) -> Result<OrbitCensus, OracleError> {
    require_oracle_field(f)?;
    let ctx = FieldCtx::standard(f.p() as u64).expect("oracle field");
    let target = pencil_target(&ctx)?;
    match mode {
        SweepMode::Full => full_sweep_generic::<2, _>(f, &target, exec),
        SweepMode::Sample { n, seed } => sample_sweep_generic::<2, _>(f, &target, n, seed, exec),
    }
}

pub fn full_sweep(
    kind: SweepKind,
    f: &PrimeField,
    mode: SweepMode,
    exec: Execution,
) -> Result<OrbitCensus, OracleError> {
    match kind {
        SweepKind::Net => full_sweep_nets(f, mode, exec),
        SweepKind::Pencil => full_sweep_pencils(f, mode, exec),
    }
}

/// Classifies every member of the orbit and returns the labels seen.
pub fn net_labels_on_orbit(
    ctx: &FieldCtx,
    orbit: &Orbit<3>,
    exec: Execution,
) -> Result<Vec<OrbitLabel>, OracleError> {
    let g = Grassmannian::<3>::new(ctx.prime_field());
    let target = NetTarget { ctx: ctx.clone() };
    let codes = map_slice(exec, orbit.indices(), |&i| {
        target.classify(&g.unrank(i)).ok().map(|(l, _)| l)
    });
    let mut seen: Vec<OrbitLabel> = Vec::new();
    for c in codes {
        let c = c.ok_or_else(|| {
            OracleError::Consistency(Box::new(ConsistencyFailure {
                kind: SweepKind::Net,
                subspace: Vec::new(),
                reason: "orbit member failed to classify".into(),
            }))
        })?;
        let l = OrbitLabel::ALL[c as usize];
        if !seen.contains(&l) {
            seen.push(l);
        }
    }
    Ok(seen)
}

/// Pencil counterpart of [`net_labels_on_orbit`].
pub fn pencil_labels_on_orbit(
    ctx: &FieldCtx,
    orbit: &Orbit<2>,
    exec: Execution,
) -> Result<Vec<PencilLabel>, OracleError> {
    let g = Grassmannian::<2>::new(ctx.prime_field());
    let target = pencil_target(ctx)?;
    let codes = map_slice(exec, orbit.indices(), |&i| {
        target.classify(&g.unrank(i)).ok().map(|(l, _)| l)
    });
    let mut seen: Vec<PencilLabel> = Vec::new();
    for c in codes {
        let c = c.ok_or_else(|| {
            OracleError::Consistency(Box::new(ConsistencyFailure {
                kind: SweepKind::Pencil,
                subspace: Vec::new(),
                reason: "orbit member failed to classify".into(),
            }))
        })?;
        let l = PencilLabel::ALL[c as usize];
        if !seen.contains(&l) {
            seen.push(l);
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::representatives;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn group_order() {
        let f = f5();
        assert_eq!(gl3_elements(&f).count() as u64, GL3_F5_ORDER);
    }

    #[test]
    fn other_fields_rejected() {
        let f = PrimeField::new(7).unwrap();
        let s = crate::net::random_net(&f, 0);
        assert_eq!(
            enumerate_orbit(&f, s.canonical()),
            Err(OracleError::UnsupportedField(7))
        );
    }

    #[test]
    fn bfs_matches_group_enumeration() {
        let f = f5();
        let g = Grassmannian::<3>::new(f);
        let reps = representatives(&f);
        for (_, w) in [&reps[0], &reps[5]] {
            let a = orbit_by_generators(&g, w.canonical());
            let b = orbit_by_group(&g, w.canonical(), Execution::Auto);
            assert_eq!(a, b);
            assert_eq!(PGL3_F5_ORDER % a.len() as u64, 0);
        }
    }

    #[test]
    fn orbit_from_any_member() {
        let f = f5();
        let g = Grassmannian::<3>::new(f);
        let (_, w) = &representatives(&f)[7];
        let orbit = orbit_by_generators(&g, w.canonical());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let i = orbit.indices()[rng.gen_range(0..orbit.len())];
            assert_eq!(orbit_by_generators(&g, &g.unrank(i)), orbit);
        }
    }

    #[test]
    fn small_sample_sweep() {
        let f = f5();
        let census =
            full_sweep_nets(&f, SweepMode::Sample { n: 200, seed: 1 }, Execution::Auto).unwrap();
        assert_eq!(census.total, 200);
        assert_eq!(census.label_counts.values().sum::<u64>(), 200);
        assert_eq!(census.impossible_disc, 0);
        let again = full_sweep_nets(
            &f,
            SweepMode::Sample { n: 200, seed: 1 },
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(census, again);
        let empty =
            full_sweep_nets(&f, SweepMode::Sample { n: 0, seed: 1 }, Execution::Auto).unwrap();
        assert_eq!(empty.total, 0);
    }
}
