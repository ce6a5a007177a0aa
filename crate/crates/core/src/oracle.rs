//! Dense state-vector oracle for small systems.
//!
//! Basis index `x` has bit `j` equal to the value of site `j`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{mat_apply, BitVec, MatMode};
use crate::mbqc::MbqcInstance;
use crate::phasestate::{AngleSpec, CorrelationContext, PhaseCosetState};
use crate::Scalar;

pub const MAX_DENSE_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState<T: Scalar> {
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> DenseState<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `O_j[q] |ψ⟩` with `O|x⟩ = e^{iφ(−1)^{x⊕q}} |x⊕1⟩`.
    fn apply_observable(&self, j: usize, phi: T, q: bool) -> Self {
        let bit = 1usize << j;
        // phase picked up by a basis state whose site j is 0 / 1
        let s = if q { -T::one() } else { T::one() };
        let up = Complex::new(phi.cos(), s * phi.sin());
        let down = up.conj();
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.amps.len()];
        for (x, a) in self.amps.iter().enumerate() {
            out[x ^ bit] = *a * if x & bit == 0 { up } else { down };
        }
        Self { n: self.n, amps: out }
    }

    fn scale(&mut self, k: T) {
        for a in &mut self.amps {
            *a = *a * k;
        }
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::SizeGuard {
            what: "dense state qubits",
            size: n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

pub fn dense_state<T: Scalar>(s: &PhaseCosetState) -> Result<DenseState<T>> {
    guard(s.n())?;
    let elements = s.elements()?;
    let amp = T::one() / T::from(elements.len()).expect("count fits").sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << s.n()];
    for x in elements {
        let sign = if s.phase_bit(x) { -amp } else { amp };
        amps[x.to_u64() as usize] = Complex::new(sign, T::zero());
    }
    Ok(DenseState { n: s.n(), amps })
}

pub fn dense_expectation<T: Scalar>(
    st: &DenseState<T>,
    angles: &AngleSpec,
    ctx: &CorrelationContext,
) -> Result<Complex<T>> {
    guard(st.n)?;
    if angles.numerators.len() != st.n {
        return Err(Error::dims("angle numerators", st.n, angles.numerators.len()));
    }
    if ctx.z.len() != st.n || ctx.q.len() != st.n {
        return Err(Error::dims("context", st.n, ctx.z.len().max(ctx.q.len())));
    }
    if ctx.z.is_zero() {
        // identity on a normalized state
        return Ok(Complex::new(T::one(), T::zero()));
    }
    // ⟨ψ|O_z|ψ⟩ = Σ_x conj(ψ[x ⊕ z]) · phase(x) · ψ[x], phase a product over sites
    let sites: Vec<(usize, Complex<T>)> = ctx
        .z
        .ones_iter()
        .map(|j| {
            let phi = angles.angle::<T>(j);
            let s = if ctx.q.get(j) { -T::one() } else { T::one() };
            (j, Complex::new(phi.cos(), s * phi.sin()))
        })
        .collect();
    let flip = ctx.z.to_u64() as usize;
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = zero;
    for (x, a) in st.amps.iter().enumerate() {
        if *a == zero {
            continue;
        }
        let partner = st.amps[x ^ flip];
        if partner == zero {
            continue;
        }
        let phase = sites.iter().fold(Complex::new(T::one(), T::zero()), |p, &(j, up)| {
            p * if x >> j & 1 == 0 { up } else { up.conj() }
        });
        acc = acc + partner.conj() * phase * *a;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub s: BitVec,
    pub o: BitVec,
}

/// Born-rule simulation of measuring every site in ascending order.
pub fn sample_run<T: Scalar>(inst: &MbqcInstance, i: &BitVec, seed: u64, trials: u64) -> Result<Vec<Sample>> {
    let order: Vec<usize> = (0..inst.n()).collect();
    sample_run_ordered::<T>(inst, i, seed, trials, &order)
}

/// As [`sample_run`], measuring the sites in `order` (a permutation).
pub fn sample_run_ordered<T: Scalar>(
    inst: &MbqcInstance,
    i: &BitVec,
    seed: u64,
    trials: u64,
    order: &[usize],
) -> Result<Vec<Sample>> {
    if !inst.is_flat() {
        return Err(Error::NonFlatTemporalOrder);
    }
    let n = inst.n();
    guard(n)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::InvalidParameters("site order must be a permutation of 0..n".into()));
    }
    let q = inst.basis_choice(i)?;
    let initial = dense_state::<T>(inst.state())?;
    let half = T::from(0.5).expect("constant");
    let mut out = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let mut psi = initial.clone();
        let mut s = BitVec::zeros(n);
        for &j in order {
            let o_psi = psi.apply_observable(j, inst.angles().angle::<T>(j), q.get(j));
            let p_plus = (T::one() + psi.inner(&o_psi).re) * half;
            let u: f64 = rng.gen();
            let minus = u >= p_plus.to_f64().expect("finite probability");
            s.set(j, minus);
            // (1 ± O)/2 |ψ⟩, renormalized
            let sign = if minus { -T::one() } else { T::one() };
            for (a, b) in psi.amps.iter_mut().zip(&o_psi.amps) {
                *a = (*a + *b * sign) * half;
            }
            let norm = psi.norm();
            psi.scale(T::one() / norm);
        }
        let o = mat_apply(inst.z_matrix(), &s, MatMode::Mod2)?;
        out.push(Sample {
            o: BitVec::from_fn(o.len(), |k| o[k] == 1),
            s,
        });
    }
    Ok(out)
}
