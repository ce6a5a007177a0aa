//! Phase-coset states and exact correlation-operator expectations.
//!
//! A state is `|S|^{-1/2} Σ_{x∈S} (−1)^{Q(x) ⊕ lin·x} |x⟩` where `S` is the
//! row span of the generators and `Q` a strictly upper-triangular quadratic
//! form. Local observables are `cos φ X + (−1)^q sin φ Y` with
//! `φ = π a / 2^D`, `a` odd, so every expectation is an average of
//! `2^{D+1}`-th roots of unity and is kept as an exponent histogram.

use std::sync::OnceLock;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BinMatrix, BitVec, SpanBasis};
use crate::reedmuller;

/// Largest coset size materialized by the expectation engine.
pub const MAX_COSET_RANK: usize = 26;

#[derive(Debug, Clone)]
pub struct PhaseCosetState {
    n: usize,
    generators: BinMatrix,
    quad: Vec<(usize, usize)>,
    quad_rows: Vec<BitVec>,
    lin: BitVec,
    span: SpanBasis,
    elements: OnceLock<Vec<BitVec>>,
}

impl PartialEq for PhaseCosetState {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.generators == other.generators
            && self.quad == other.quad
            && self.lin == other.lin
    }
}

impl Eq for PhaseCosetState {}

impl PhaseCosetState {
    /// `quad` holds pairs `(a, b)`; each pair is normalized to `a < b` and
    /// pairs occurring twice cancel. Diagonal pairs `(a, a)` fold into `lin`.
    pub fn new(generators: BinMatrix, quad: &[(usize, usize)], lin: BitVec) -> Result<Self> {
        let n = generators.n_cols();
        if lin.len() != n {
            return Err(Error::dims("linear phase", n, lin.len()));
        }
        let span = SpanBasis::from_rows(n, generators.rows());
        if span.rank() != generators.n_rows() {
            return Err(Error::InvalidParameters(format!(
                "generators must be independent (rank {} of {} rows)",
                span.rank(),
                generators.n_rows()
            )));
        }
        let mut lin = lin;
        let mut upper = BinMatrix::zeros(n, n);
        for &(a, b) in quad {
            if a >= n || b >= n {
                return Err(Error::InvalidParameters(format!("quadratic term ({a}, {b}) out of range")));
            }
            if a == b {
                lin.flip(a);
            } else {
                let (lo, hi) = (a.min(b), a.max(b));
                let v = upper.get(lo, hi);
                upper.set(lo, hi, !v);
            }
        }
        let quad: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| upper.row(a).ones_iter().map(move |b| (a, b)).collect::<Vec<_>>())
            .collect();
        Ok(Self {
            n,
            generators,
            quad,
            quad_rows: upper.into_rows(),
            lin,
            span,
            elements: OnceLock::new(),
        })
    }

    /// Uniform superposition over the span, no phases.
    pub fn coset(generators: BinMatrix) -> Result<Self> {
        let n = generators.n_cols();
        Self::new(generators, &[], BitVec::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &BinMatrix {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.n_rows()
    }

    pub fn quad(&self) -> &[(usize, usize)] {
        &self.quad
    }

    pub fn lin(&self) -> &BitVec {
        &self.lin
    }

    pub fn has_phase(&self) -> bool {
        !self.quad.is_empty() || !self.lin.is_zero()
    }

    pub fn contains(&self, x: &BitVec) -> bool {
        self.span.contains(x)
    }

    /// `Q(x) = Σ_{a<b} quad[a][b] x_a x_b mod 2`.
    pub fn quad_form(&self, x: &BitVec) -> bool {
        let mut acc = false;
        for a in x.ones_iter() {
            if x.and_weight(&self.quad_rows[a]) % 2 == 1 {
                acc = !acc;
            }
        }
        acc
    }

    /// Sign bit of the amplitude at `x`, `Q(x) ⊕ lin·x`.
    pub fn phase_bit(&self, x: &BitVec) -> bool {
        self.quad_form(x) ^ self.lin.dot(x)
    }

    /// All `2^k` support vectors, cached after the first call.
    pub fn elements(&self) -> Result<&[BitVec]> {
        if self.rank() > MAX_COSET_RANK {
            return Err(Error::SizeGuard {
                what: "coset rank",
                size: self.rank(),
                limit: MAX_COSET_RANK,
            });
        }
        Ok(self
            .elements
            .get_or_init(|| gf2::enumerate_span(&self.generators).collect()))
    }
}

/// `|R(r, m)⟩`: uniform superposition over the code.
pub fn make_rm_state(r: usize, m: usize) -> Result<PhaseCosetState> {
    let code = reedmuller::rm_basis(r, m)?;
    PhaseCosetState::coset(code.basis().clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleSpec {
    #[serde(rename = "D")]
    pub d: u32,
    pub numerators: Vec<i64>,
}

impl AngleSpec {
    pub fn new(d: u32, numerators: Vec<i64>) -> Result<Self> {
        let s = Self { d, numerators };
        s.validate()?;
        Ok(s)
    }

    /// All sites at `φ = π / 2^D`.
    pub fn uniform(n: usize, d: u32) -> Self {
        Self {
            d,
            numerators: vec![1; n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidParameters("angle denominator exponent D must be >= 1".into()));
        }
        if self.d > 30 {
            return Err(Error::InvalidParameters(format!("D = {} is too large", self.d)));
        }
        if let Some(j) = self.numerators.iter().position(|a| a.rem_euclid(2) == 0) {
            return Err(Error::InvalidParameters(format!(
                "angle numerator at site {j} is even ({})",
                self.numerators[j]
            )));
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        1u64 << (self.d + 1)
    }

    pub fn is_uniform_one(&self) -> bool {
        self.numerators.iter().all(|&a| a == 1)
    }

    pub fn angle<T: Float + FloatConst>(&self, j: usize) -> T {
        let a = T::from(self.numerators[j]).unwrap();
        let den = T::from(1u64 << self.d).unwrap();
        T::PI() * a / den
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationContext {
    pub z: BitVec,
    pub q: BitVec,
}

impl CorrelationContext {
    pub fn new(z: BitVec, q: BitVec) -> Self {
        Self { z, q }
    }
}

/// `(1/norm) Σ_e counts[e] ω^e` with `ω = exp(2πi / modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicSum {
    modulus: u64,
    counts: Vec<u64>,
    norm: u64,
}

impl CyclotomicSum {
    pub fn zero(modulus: u64, norm: u64) -> Self {
        Self {
            modulus,
            counts: vec![0; modulus as usize],
            norm,
        }
    }

    pub fn from_counts(counts: Vec<u64>, norm: u64) -> Result<Self> {
        let modulus = counts.len() as u64;
        if modulus < 2 || !modulus.is_power_of_two() {
            return Err(Error::InvalidParameters(format!("modulus {modulus} is not a power of two >= 2")));
        }
        if norm == 0 {
            return Err(Error::InvalidParameters("norm must be positive".into()));
        }
        Ok(Self { modulus, counts, norm })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn mass(&self) -> u64 {
        self.counts.iter().sum()
    }

    #[inline]
    pub fn add(&mut self, exponent: i64) {
        let e = exponent.rem_euclid(self.modulus as i64) as usize;
        self.counts[e] += 1;
    }

    pub fn merge(&mut self, other: &Self) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Exponents carrying nonzero mass.
    pub fn support(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&e| self.counts[e as usize] > 0).collect()
    }

    pub fn value<T: Float + FloatConst>(&self) -> Complex<T> {
        let m = T::from(self.modulus).unwrap();
        let mut acc = Complex::new(T::zero(), T::zero());
        for (e, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                let theta = T::TAU() * T::from(e).unwrap() / m;
                acc = acc + Complex::from_polar(T::from(c).unwrap(), theta);
            }
        }
        acc / T::from(self.norm).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extremality {
    /// Expectation `(−1)^bit`.
    Extremal(u8),
    NonExtremal,
    /// Unit modulus but not real; carries the exponent.
    NonRealExtremal(u64),
}

impl Extremality {
    pub fn bit(self) -> Option<u8> {
        match self {
            Extremality::Extremal(b) => Some(b),
            _ => None,
        }
    }
}

pub fn extremal_bit(s: &CyclotomicSum) -> Extremality {
    let support = s.support();
    match support.as_slice() {
        [e] if s.counts[*e as usize] == s.norm => {
            if *e == 0 {
                Extremality::Extremal(0)
            } else if *e == s.modulus / 2 {
                Extremality::Extremal(1)
            } else {
                Extremality::NonRealExtremal(*e)
            }
        }
        _ => Extremality::NonExtremal,
    }
}

fn check_dims(state: &PhaseCosetState, angles: &AngleSpec, ctx: &CorrelationContext) -> Result<()> {
    if ctx.z.len() != state.n {
        return Err(Error::dims("context support z", state.n, ctx.z.len()));
    }
    if ctx.q.len() != state.n {
        return Err(Error::dims("context basis bits q", state.n, ctx.q.len()));
    }
    if angles.numerators.len() != state.n {
        return Err(Error::dims("angle numerators", state.n, angles.numerators.len()));
    }
    angles.validate()
}

/// `⟨Ψ| ⊗_{j∈z} O_j[q_j] |Ψ⟩` as an exact histogram.
pub fn expectation(
    state: &PhaseCosetState,
    angles: &AngleSpec,
    ctx: &CorrelationContext,
) -> Result<CyclotomicSum> {
    check_dims(state, angles, ctx)?;
    let modulus = angles.modulus();
    let norm = 1u64 << state.rank();
    let mut out = CyclotomicSum::zero(modulus, norm);
    if !state.contains(&ctx.z) {
        return Ok(out);
    }
    let half = (modulus / 2) as i64;
    let lin_z = state.lin.dot(&ctx.z);
    let zw = ctx.z.weight() as i64;
    let uniform = angles
        .numerators
        .first()
        .copied()
        .filter(|&a| ctx.z.ones_iter().all(|j| angles.numerators[j] == a));
    let with_quad = !state.quad.is_empty();
    let elements = state.elements()?;

    let mut flipped = BitVec::zeros(state.n);
    for x in elements {
        // Σ_{j∈z} a_j (−1)^{x_j ⊕ q_j}
        let local = match uniform {
            Some(a) => {
                flipped.clone_from(x);
                flipped.xor_assign(&ctx.q);
                let ones = flipped.and_weight(&ctx.z) as i64;
                a * (zw - 2 * ones)
            }
            None => ctx
                .z
                .ones_iter()
                .map(|j| {
                    let a = angles.numerators[j];
                    if x.get(j) ^ ctx.q.get(j) {
                        -a
                    } else {
                        a
                    }
                })
                .sum(),
        };
        let mut sign = lin_z;
        if with_quad {
            flipped.clone_from(x);
            flipped.xor_assign(&ctx.z);
            sign ^= state.quad_form(x) ^ state.quad_form(&flipped);
        }
        out.add(local + if sign { half } else { 0 });
    }
    Ok(out)
}

/// `⟨Ψ| ⊗_{j∈x} X_j |Ψ⟩` as a histogram over `{+1, −1}` (modulus 2).
pub fn x_stabilizer_expectation(state: &PhaseCosetState, support: &BitVec) -> Result<CyclotomicSum> {
    if support.len() != state.n {
        return Err(Error::dims("X-operator support", state.n, support.len()));
    }
    let norm = 1u64 << state.rank();
    let mut out = CyclotomicSum::zero(2, norm);
    if !state.contains(support) {
        return Ok(out);
    }
    let lin_z = state.lin.dot(support);
    for x in state.elements()? {
        let partner = x.xor(support);
        let sign = lin_z ^ state.quad_form(x) ^ state.quad_form(&partner);
        out.add(i64::from(sign));
    }
    Ok(out)
}

/// Exponent contributed by a single support vector `x`, with no fast paths.
pub fn coset_term(state: &PhaseCosetState, angles: &AngleSpec, ctx: &CorrelationContext, x: &BitVec) -> i64 {
    let half = (angles.modulus() / 2) as i64;
    let local: i64 = ctx
        .z
        .ones_iter()
        .map(|j| {
            let a = angles.numerators[j];
            if x.get(j) ^ ctx.q.get(j) {
                -a
            } else {
                a
            }
        })
        .sum();
    let partner = x.xor(&ctx.z);
    let sign = state.lin.dot(&ctx.z) ^ state.quad_form(x) ^ state.quad_form(&partner);
    local + if sign { half } else { 0 }
}

/// JSON wire form `{n, generators, quad, lin}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub n: usize,
    pub generators: Vec<Vec<u8>>,
    #[serde(default)]
    pub quad: Vec<(usize, usize)>,
    #[serde(default)]
    pub lin: Option<Vec<u8>>,
}

impl From<&PhaseCosetState> for StateRecord {
    fn from(s: &PhaseCosetState) -> Self {
        Self {
            n: s.n,
            generators: s.generators.to_nested(),
            quad: s.quad.clone(),
            lin: Some(s.lin.to_bits()),
        }
    }
}

impl TryFrom<StateRecord> for PhaseCosetState {
    type Error = Error;

    fn try_from(r: StateRecord) -> Result<Self> {
        let generators = BinMatrix::from_nested(r.n, &r.generators)?;
        let lin = match r.lin {
            Some(bits) => BitVec::from_bits(&bits)?,
            None => BitVec::zeros(r.n),
        };
        PhaseCosetState::new(generators, &r.quad, lin)
    }
}

impl Serialize for PhaseCosetState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhaseCosetState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = StateRecord::deserialize(d)?;
        PhaseCosetState::try_from(rec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    fn ghz_ctx(q: &str) -> CorrelationContext {
        CorrelationContext::new(bv("1111"), bv(q))
    }

    #[test]
    fn ghz4_signs() {
        let st = make_rm_state(0, 2).unwrap();
        let ang = AngleSpec::uniform(4, 2);
        let s = expectation(&st, &ang, &ghz_ctx("1111")).unwrap();
        assert_eq!(s.counts()[4], 2);
        assert_eq!(extremal_bit(&s), Extremality::Extremal(1));
        let s = expectation(&st, &ang, &ghz_ctx("1100")).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::Extremal(0));
        let s = expectation(&st, &ang, &ghz_ctx("0000")).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::Extremal(1));
    }

    #[test]
    fn off_span_is_zero() {
        let st = make_rm_state(0, 2).unwrap();
        let s = expectation(&st, &AngleSpec::uniform(4, 2), &CorrelationContext::new(bv("1100"), bv("0000"))).unwrap();
        assert_eq!(s.mass(), 0);
        assert_eq!(extremal_bit(&s), Extremality::NonExtremal);
        assert!(s.value::<f64>().norm() < 1e-15);
    }

    #[test]
    fn odd_q_splits() {
        let st = make_rm_state(0, 2).unwrap();
        let s = expectation(&st, &AngleSpec::uniform(4, 2), &ghz_ctx("1000")).unwrap();
        assert_eq!(s.support(), vec![2, 6]);
        assert_eq!(extremal_bit(&s), Extremality::NonExtremal);
    }

    #[test]
    fn single_off_axis_exponent() {
        let s = CyclotomicSum::from_counts(vec![0, 0, 0, 2, 0, 0, 0, 0], 2).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::NonRealExtremal(3));
    }

    #[test]
    fn extremal_classification() {
        let s = CyclotomicSum::from_counts(vec![3, 0, 0, 0], 3).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::Extremal(0));
        let s = CyclotomicSum::from_counts(vec![0, 0, 3, 0], 3).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::Extremal(1));
        let s = CyclotomicSum::from_counts(vec![1, 0, 2, 0], 3).unwrap();
        assert_eq!(extremal_bit(&s), Extremality::NonExtremal);
    }

    #[test]
    fn fast_path_matches_terms_in_any_partition() {
        let st = make_rm_state(1, 3).unwrap();
        let ang = AngleSpec::uniform(8, 3);
        for z in gf2::enumerate_span(st.generators()) {
            let ctx = CorrelationContext::new(z, bv("10110010"));
            let fast = expectation(&st, &ang, &ctx).unwrap();
            let mut merged = CyclotomicSum::zero(16, 16);
            for chunk in st.elements().unwrap().chunks(5) {
                let mut part = CyclotomicSum::zero(16, 16);
                for x in chunk {
                    part.add(coset_term(&st, &ang, &ctx, x));
                }
                merged.merge(&part);
            }
            assert_eq!(fast, merged);
        }
    }

    #[test]
    fn quad_normalization() {
        let g = BinMatrix::identity(3);
        let st = PhaseCosetState::new(g, &[(2, 0), (0, 2), (1, 2), (1, 1)], BitVec::zeros(3)).unwrap();
        assert_eq!(st.quad(), &[(1, 2)]);
        assert_eq!(st.lin(), &bv("010"));
        assert!(st.phase_bit(&bv("011")) == (true ^ true));
    }

    #[test]
    fn dependent_generators_rejected() {
        let g = BinMatrix::from_bits(2, &[&[1, 1], &[1, 1]]).unwrap();
        assert!(PhaseCosetState::coset(g).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = BinMatrix::from_bits(3, &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        let st = PhaseCosetState::new(g, &[(0, 2)], bv("100")).unwrap();
        let text = serde_json::to_string(&st).unwrap();
        let back: PhaseCosetState = serde_json::from_str(&text).unwrap();
        assert_eq!(st, back);
    }
}
