//! Measurement-based computations with flat temporal order.
//!
//! An instance is a resource state, local angles and the three mod-2
//! relations `q = Q i`, `o = Z s`, `q ⊕= T s`. Only `T = 0` is evaluated.

use serde::{Deserialize, Serialize};

use crate::boolfn::TruthTable;
use crate::error::{DeterminismViolation, Error, Result};
use crate::gf2::{self, BinMatrix, BitVec};
use crate::phasestate::{
    self, expectation, extremal_bit, AngleSpec, CorrelationContext, Extremality, PhaseCosetState,
};

/// Largest input-space rank enumerated by [`admissible_inputs`].
pub const MAX_ADMISSIBLE_RANK: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbqcInstance {
    state: PhaseCosetState,
    angles: AngleSpec,
    q: BinMatrix,
    z: BinMatrix,
    t: BinMatrix,
}

impl MbqcInstance {
    pub fn new(state: PhaseCosetState, angles: AngleSpec, q: BinMatrix, z: BinMatrix, t: BinMatrix) -> Result<Self> {
        let n = state.n();
        angles.validate()?;
        if angles.numerators.len() != n {
            return Err(Error::dims("angle numerators", n, angles.numerators.len()));
        }
        if q.n_rows() != n {
            return Err(Error::dims("Q rows", n, q.n_rows()));
        }
        if z.n_cols() != n {
            return Err(Error::dims("Z columns", n, z.n_cols()));
        }
        if t.n_rows() != n {
            return Err(Error::dims("T rows", n, t.n_rows()));
        }
        if t.n_cols() != n {
            return Err(Error::dims("T columns", n, t.n_cols()));
        }
        for k in 0..n {
            for l in 0..n {
                if t.get(k, l) && t.get(l, k) {
                    return Err(Error::InvalidParameters(format!(
                        "T is not a partial order: T[{k}][{l}] = T[{l}][{k}] = 1"
                    )));
                }
            }
        }
        Ok(Self { state, angles, q, z, t })
    }

    /// Instance with `T = 0`.
    pub fn flat(state: PhaseCosetState, angles: AngleSpec, q: BinMatrix, z: BinMatrix) -> Result<Self> {
        let n = state.n();
        Self::new(state, angles, q, z, BinMatrix::zeros(n, n))
    }

    pub fn state(&self) -> &PhaseCosetState {
        &self.state
    }

    pub fn angles(&self) -> &AngleSpec {
        &self.angles
    }

    pub fn q_matrix(&self) -> &BinMatrix {
        &self.q
    }

    pub fn z_matrix(&self) -> &BinMatrix {
        &self.z
    }

    pub fn t_matrix(&self) -> &BinMatrix {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn n_inputs(&self) -> usize {
        self.q.n_cols()
    }

    pub fn n_outputs(&self) -> usize {
        self.z.n_rows()
    }

    pub fn is_flat(&self) -> bool {
        self.t.is_zero()
    }

    /// `q = Q i mod 2`.
    pub fn basis_choice(&self, i: &BitVec) -> Result<BitVec> {
        if i.len() != self.n_inputs() {
            return Err(Error::dims("input", self.n_inputs(), i.len()));
        }
        self.q.mul_vec(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub q: BitVec,
    pub bits: Vec<Extremality>,
    pub deterministic: bool,
}

impl RunResult {
    /// Output bits when every row is extremal.
    pub fn output(&self) -> Option<BitVec> {
        let bits: Option<Vec<bool>> = self.bits.iter().map(|e| e.bit().map(|b| b == 1)).collect();
        bits.map(|b| BitVec::from_bools(&b))
    }
}

fn run_q(inst: &MbqcInstance, q: BitVec) -> Result<RunResult> {
    let mut bits = Vec::with_capacity(inst.n_outputs());
    let mut ctx = CorrelationContext::new(BitVec::zeros(inst.n()), q);
    for z in inst.z.rows() {
        ctx.z.clone_from(z);
        bits.push(extremal_bit(&expectation(&inst.state, &inst.angles, &ctx)?));
    }
    let deterministic = bits.iter().all(|b| b.bit().is_some());
    Ok(RunResult {
        q: ctx.q,
        bits,
        deterministic,
    })
}

pub fn run(inst: &MbqcInstance, i: &BitVec) -> Result<RunResult> {
    if !inst.is_flat() {
        return Err(Error::NonFlatTemporalOrder);
    }
    let q = inst.basis_choice(i)?;
    run_q(inst, q)
}

/// Outputs for every input, or the first non-extremal context.
pub fn truth_table(inst: &MbqcInstance) -> Result<TruthTable> {
    if !inst.is_flat() {
        return Err(Error::NonFlatTemporalOrder);
    }
    let n_in = inst.n_inputs();
    if n_in > crate::boolfn::MAX_INPUTS {
        return Err(Error::SizeGuard {
            what: "instance inputs",
            size: n_in,
            limit: crate::boolfn::MAX_INPUTS,
        });
    }
    let mut rows = Vec::with_capacity(1 << n_in);
    for x in 0..1u64 << n_in {
        let input = BitVec::from_u64(n_in, x);
        let q = inst.basis_choice(&input)?;
        let mut out = BitVec::zeros(inst.n_outputs());
        let mut ctx = CorrelationContext::new(BitVec::zeros(inst.n()), q);
        for (row, z) in inst.z.rows().iter().enumerate() {
            ctx.z.clone_from(z);
            let h = expectation(&inst.state, &inst.angles, &ctx)?;
            match extremal_bit(&h) {
                Extremality::Extremal(b) => out.set(row, b == 1),
                outcome => {
                    return Err(Error::DeterminismViolation(Box::new(DeterminismViolation {
                        input,
                        q: ctx.q,
                        row,
                        outcome,
                        histogram: h,
                    })))
                }
            }
        }
        rows.push(out);
    }
    TruthTable::new(n_in, inst.n_outputs(), rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSet {
    pub elements: Vec<BitVec>,
    pub is_vector_space: bool,
}

/// All `q` in the span of `q_space` for which every `Z` row is extremal.
pub fn admissible_inputs(
    state: &PhaseCosetState,
    angles: &AngleSpec,
    z: &BinMatrix,
    q_space: &BinMatrix,
) -> Result<AdmissibleSet> {
    if z.n_cols() != state.n() {
        return Err(Error::dims("Z columns", state.n(), z.n_cols()));
    }
    if q_space.n_cols() != state.n() {
        return Err(Error::dims("q-space columns", state.n(), q_space.n_cols()));
    }
    let rank = q_space.rank();
    if rank > MAX_ADMISSIBLE_RANK {
        return Err(Error::SizeGuard {
            what: "q-space rank",
            size: rank,
            limit: MAX_ADMISSIBLE_RANK,
        });
    }
    let mut elements = Vec::new();
    let mut ctx = CorrelationContext::new(BitVec::zeros(state.n()), BitVec::zeros(state.n()));
    for q in gf2::enumerate_span(q_space) {
        ctx.q = q;
        let mut ok = true;
        for row in z.rows() {
            ctx.z.clone_from(row);
            if extremal_bit(&expectation(state, angles, &ctx)?).bit().is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            elements.push(ctx.q.clone());
        }
    }
    elements.sort();
    let is_vector_space = is_subspace(&elements);
    Ok(AdmissibleSet { elements, is_vector_space })
}

/// A nonempty set is a subspace iff it contains 0 and has `2^rank` elements.
fn is_subspace(elements: &[BitVec]) -> bool {
    let Some(first) = elements.first() else {
        return false;
    };
    if !first.is_zero() {
        return false;
    }
    let basis = gf2::SpanBasis::from_rows(first.len(), elements);
    basis.rank() < 64 && (1u128 << basis.rank()) == elements.len() as u128
}

/// GHZ-4 with the input relations printed for the first example.
pub fn example1_instance() -> MbqcInstance {
    let state = phasestate::make_rm_state(0, 2).expect("R(0,2) is valid");
    let q = BinMatrix::from_bits(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).expect("fixed");
    let z = BinMatrix::from_bits(4, &[&[1, 1, 1, 1]]).expect("fixed");
    MbqcInstance::flat(state, AngleSpec::uniform(4, 2), q, z).expect("consistent shapes")
}

/// JSON wire form `{state, angles: {D, numerators}, Q, Z, T}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub state: PhaseCosetState,
    pub angles: AngleSpec,
    #[serde(rename = "Q")]
    pub q: BinMatrix,
    #[serde(rename = "Z")]
    pub z: BinMatrix,
    #[serde(rename = "T", default)]
    pub t: Option<BinMatrix>,
}

impl Serialize for MbqcInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceRecord {
            state: self.state.clone(),
            angles: self.angles.clone(),
            q: self.q.clone(),
            z: self.z.clone(),
            t: Some(self.t.clone()),
        }
        .serialize(s)
    }
}

impl TryFrom<InstanceRecord> for MbqcInstance {
    type Error = Error;

    fn try_from(r: InstanceRecord) -> Result<Self> {
        let n = r.state.n();
        // A matrix with no rows carries no column count; fix the shape up.
        let fix = |m: BinMatrix, cols: usize| {
            if m.n_rows() == 0 {
                BinMatrix::zeros(0, cols)
            } else {
                m
            }
        };
        let z = fix(r.z, n);
        let t = r.t.unwrap_or_else(|| BinMatrix::zeros(n, n));
        MbqcInstance::new(r.state, r.angles, r.q, z, t)
    }
}

impl<'de> Deserialize<'de> for MbqcInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = InstanceRecord::deserialize(d)?;
        MbqcInstance::try_from(rec).map_err(serde::de::Error::custom)
    }
}

pub fn instance_from_json(text: &str) -> Result<MbqcInstance> {
    let rec: InstanceRecord = serde_json::from_str(text)?;
    MbqcInstance::try_from(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn example1_runs() {
        let inst = example1_instance();
        let r = run(&inst, &bv("111")).unwrap();
        assert!(r.deterministic);
        assert_eq!(r.q, bv("1111"));
        assert_eq!(r.output(), Some(bv("1")));
        assert_eq!(run(&inst, &bv("100")).unwrap().output(), Some(bv("0")));
        let r = run(&inst, &bv("000")).unwrap();
        assert_eq!((r.output(), r.q), (Some(bv("1")), bv("0000")));
    }

    #[test]
    fn example1_table() {
        let tt = truth_table(&example1_instance()).unwrap();
        for x in 0..8 {
            assert_eq!(tt.at(x).get(0), x == 0 || x == 7, "input {x}");
        }
    }

    #[test]
    fn non_flat_rejected() {
        let e = example1_instance();
        let mut t = BinMatrix::zeros(4, 4);
        t.set(0, 1, true);
        let inst =
            MbqcInstance::new(e.state().clone(), e.angles().clone(), e.q_matrix().clone(), e.z_matrix().clone(), t)
                .unwrap();
        assert_eq!(run(&inst, &bv("000")), Err(Error::NonFlatTemporalOrder));
        let mut cyc = BinMatrix::zeros(4, 4);
        cyc.set(0, 1, true);
        cyc.set(1, 0, true);
        assert!(MbqcInstance::new(e.state().clone(), e.angles().clone(), e.q_matrix().clone(), e.z_matrix().clone(), cyc)
            .is_err());
    }

    #[test]
    fn ghz_admissible_set() {
        let st = phasestate::make_rm_state(0, 2).unwrap();
        let z = BinMatrix::from_bits(4, &[&[1, 1, 1, 1]]).unwrap();
        let adm = admissible_inputs(&st, &AngleSpec::uniform(4, 2), &z, &BinMatrix::identity(4)).unwrap();
        assert_eq!(adm.elements.len(), 8);
        assert!(adm.elements.iter().all(|q| q.weight() % 2 == 0));
        assert!(adm.is_vector_space);
    }

    #[test]
    fn pauli_free_angles_split() {
        // Odd-weight q on GHZ-4 splits the histogram.
        let mut inst = example1_instance();
        inst.q = BinMatrix::from_bits(1, &[&[1], &[0], &[0], &[0]]).unwrap();
        match truth_table(&inst) {
            Err(Error::DeterminismViolation(v)) => {
                assert_eq!(v.input, bv("1"));
                assert_eq!(v.outcome, Extremality::NonExtremal);
                assert_eq!(v.histogram.support(), vec![2, 6]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let inst = example1_instance();
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.contains("\"D\":2"));
        assert_eq!(instance_from_json(&text).unwrap(), inst);
    }
}
