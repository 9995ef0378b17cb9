use std::collections::BTreeMap;
use std::fmt;

use super::{Field, FieldError, Fp, PrimeField};
use crate::poly;

pub const SUPPORTED_LEVELS: [u32; 5] = [1, 2, 3, 4, 6];

/// An element of `F_{p^k}` in the power basis of the level-`k` modulus.
///
/// Unused coefficients are always zero, so derived equality is field
/// equality within one level. Elements of different levels never compare
/// equal; use [`FieldCtx::embed`] first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq {
    level: u8,
    coeffs: [u32; 6],
}

impl Fq {
    pub fn level(&self) -> u32 {
        self.level as u32
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.level as usize]
    }

    /// The prime-field value if this element lies in `F_p`.
    pub fn as_base(&self) -> Option<Fp> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(Fp(self.coeffs[0]))
    }

    fn constant(level: u32, c: u32) -> Self {
        let mut coeffs = [0; 6];
        coeffs[0] = c;
        Self {
            level: level as u8,
            coeffs,
        }
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = self.as_base() {
            return write!(f, "{}", b.0);
        }
        let mut first = true;
        for (i, &c) in self.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    /// Monic modulus, lowest degree first, length k + 1.
    modulus: Vec<Fp>,
    /// `p - m_j` for the non-leading coefficients, used during reduction.
    neg_low: [u32; 6],
}

/// A prime field together with chosen extensions `F_{p^k}`.
///
/// Moduli are the first irreducible monic polynomials in a fixed
/// lexicographic order (leading non-monic coefficient varies slowest), so
/// every context built for the same prime agrees bit for bit.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    base: PrimeField,
    levels: BTreeMap<u32, Level>,
    /// Image of the level-`a` generator inside level `b`, keyed by `(a, b)`.
    embeddings: BTreeMap<(u32, u32), Fq>,
}

impl FieldCtx {
    pub fn new(p: u64, levels: &[u32]) -> Result<Self, FieldError> {
        let base = PrimeField::new(p)?;
        let mut wanted: Vec<u32> = levels.to_vec();
        wanted.push(1);
        wanted.sort_unstable();
        wanted.dedup();
        if let Some(&bad) = wanted.iter().find(|k| !SUPPORTED_LEVELS.contains(k)) {
            return Err(FieldError::UnsupportedLevel(bad));
        }
        let mut map = BTreeMap::new();
        for &k in &wanted {
            let modulus = find_modulus(&base, k)?;
            let mut neg_low = [0; 6];
            for j in 0..k as usize {
                neg_low[j] = base.neg(modulus[j]).0;
            }
            map.insert(k, Level { modulus, neg_low });
        }
        let mut ctx = Self {
            base,
            levels: map,
            embeddings: BTreeMap::new(),
        };
        for &a in &wanted {
            for &b in &wanted {
                if a > 1 && a < b && b % a == 0 {
                    let target = ctx.level(b)?;
                    let m: Vec<Fq> = ctx.levels[&a]
                        .modulus
                        .iter()
                        .map(|&c| target.lift(c))
                        .collect();
                    let img = *poly::roots(&target, &m)
                        .first()
                        .ok_or(FieldError::IrreducibleSearchFailed(a))?;
                    ctx.embeddings.insert((a, b), img);
                }
            }
        }
        Ok(ctx)
    }

    /// Context with every supported level.
    pub fn standard(p: u64) -> Result<Self, FieldError> {
        Self::new(p, &SUPPORTED_LEVELS)
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn prime_field(&self) -> PrimeField {
        self.base
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.levels.keys().copied()
    }

    pub fn has_level(&self, k: u32) -> bool {
        self.levels.contains_key(&k)
    }

    /// Monic modulus of level `k`, lowest degree first.
    pub fn modulus(&self, k: u32) -> Option<&[Fp]> {
        self.levels.get(&k).map(|l| l.modulus.as_slice())
    }

    pub fn level(&self, k: u32) -> Result<ExtField, FieldError> {
        let lv = self.levels.get(&k).ok_or(FieldError::MissingLevel(k))?;
        Ok(ExtField {
            p: self.base.p(),
            k,
            neg_low: lv.neg_low,
        })
    }

    /// Maps `a` into level `to`, which must be a multiple of its own level.
    pub fn embed(&self, a: Fq, to: u32) -> Result<Fq, FieldError> {
        let from = a.level();
        if from == to {
            return Ok(a);
        }
        if !to.is_multiple_of(from) {
            return Err(FieldError::BadEmbedding { from, to });
        }
        let target = self.level(to)?;
        if from == 1 {
            return Ok(Fq::constant(to, a.coeffs[0]));
        }
        let theta = *self
            .embeddings
            .get(&(from, to))
            .ok_or(FieldError::MissingLevel(from))?;
        let mut acc = target.zero();
        for &c in a.coeffs().iter().rev() {
            acc = target.add(target.mul(acc, theta), Fq::constant(to, c));
        }
        Ok(acc)
    }

    /// All `x` in level `target` with `x^n = a`.
    pub fn nth_roots(&self, a: Fq, n: u32, target: u32) -> Result<Vec<Fq>, FieldError> {
        let field = self.level(target)?;
        let a = self.embed(a, target)?;
        let mut f = vec![field.neg(a)];
        f.resize(n as usize, field.zero());
        f.push(field.one());
        Ok(poly::roots(&field, &f))
    }

    /// Prime-field element viewed at level 1.
    pub fn base_elem(&self, a: Fp) -> Fq {
        Fq::constant(1, a.0)
    }
}

fn find_modulus(base: &PrimeField, k: u32) -> Result<Vec<Fp>, FieldError> {
    let p = base.p() as u64;
    if k == 1 {
        return Ok(vec![Fp(0), Fp(1)]);
    }
    let count = p
        .checked_pow(k)
        .ok_or(FieldError::IrreducibleSearchFailed(k))?;
    for idx in 0..count {
        // digit j of idx is the coefficient of x^j, so x^(k-1) varies slowest
        let mut m = vec![Fp(0); k as usize + 1];
        let mut rest = idx;
        for j in 0..k as usize {
            m[j] = Fp((rest % p) as u32);
            rest /= p;
        }
        m[k as usize] = Fp(1);
        if poly::is_irreducible(base, &m) {
            return Ok(m);
        }
    }
    Err(FieldError::IrreducibleSearchFailed(k))
}

/// The level-`k` field of a [`FieldCtx`], detached from the context.
#[derive(Clone, Copy, Debug)]
pub struct ExtField {
    p: u32,
    k: u32,
    neg_low: [u32; 6],
}

impl ExtField {
    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn lift(&self, a: Fp) -> Fq {
        Fq::constant(self.k, a.0)
    }

    /// The generator `t` of the power basis.
    pub fn generator(&self) -> Fq {
        let mut c = [0; 6];
        if self.k == 1 {
            c[0] = self.neg_low[0];
        } else {
            c[1] = 1;
        }
        Fq {
            level: self.k as u8,
            coeffs: c,
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fq {
        let mut c = [0; 6];
        for (slot, &v) in c.iter_mut().zip(coeffs.iter().take(self.k as usize)) {
            *slot = v % self.p;
        }
        Fq {
            level: self.k as u8,
            coeffs: c,
        }
    }
}

impl Field for ExtField {
    type Elem = Fq;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn zero(&self) -> Fq {
        Fq::constant(self.k, 0)
    }

    fn one(&self) -> Fq {
        Fq::constant(self.k, 1)
    }

    fn from_i64(&self, n: i64) -> Fq {
        Fq::constant(self.k, n.rem_euclid(self.p as i64) as u32)
    }

    fn add(&self, a: Fq, b: Fq) -> Fq {
        let mut c = [0; 6];
        for i in 0..self.k as usize {
            let s = a.coeffs[i] + b.coeffs[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        Fq {
            level: self.k as u8,
            coeffs: c,
        }
    }

    fn sub(&self, a: Fq, b: Fq) -> Fq {
        let mut c = [0; 6];
        for i in 0..self.k as usize {
            c[i] = if a.coeffs[i] >= b.coeffs[i] {
                a.coeffs[i] - b.coeffs[i]
            } else {
                a.coeffs[i] + self.p - b.coeffs[i]
            };
        }
        Fq {
            level: self.k as u8,
            coeffs: c,
        }
    }

    fn neg(&self, a: Fq) -> Fq {
        self.sub(self.zero(), a)
    }

    fn mul(&self, a: Fq, b: Fq) -> Fq {
        let k = self.k as usize;
        let p = self.p as u64;
        let mut acc = [0u64; 11];
        for i in 0..k {
            let x = a.coeffs[i] as u64;
            if x == 0 {
                continue;
            }
            for j in 0..k {
                acc[i + j] += x * b.coeffs[j] as u64;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = acc[i] % p;
            if c == 0 {
                continue;
            }
            for j in 0..k {
                acc[i - k + j] += c * self.neg_low[j] as u64;
            }
        }
        let mut out = [0; 6];
        for i in 0..k {
            out[i] = (acc[i] % p) as u32;
        }
        Fq {
            level: self.k as u8,
            coeffs: out,
        }
    }

    fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    fn element(&self, index: u64) -> Fq {
        let mut c = [0; 6];
        let mut rest = index;
        for slot in c.iter_mut().take(self.k as usize) {
            *slot = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
        }
        Fq {
            level: self.k as u8,
            coeffs: c,
        }
    }

    fn index_of(&self, a: Fq) -> u64 {
        a.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }
}
