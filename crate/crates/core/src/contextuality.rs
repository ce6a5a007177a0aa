//! Non-contextual hidden-variable models as GF(2) feasibility.
//!
//! Determinism collapses the ensemble to one assignment per observable, and
//! with two bases per site the value of `O_j[q_j]` is `c_j ⊕ d_j q_j`. A
//! context `(z, q)` with output `o` then reads
//! `Σ_{j ∈ z} (c_j ⊕ d_j q_j) = o`, one row over the `2n` unknowns.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Elimination, RowStatus};
use crate::mbqc::{truth_table, MbqcInstance};
use crate::phasestate::AngleSpec;

/// Relations kept for witness minimization.
pub const RELATION_CAP: usize = 512;
/// Up to this many kept relations the minimum over their span is exact.
pub const EXHAUSTIVE_RELATIONS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub z: BitVec,
    pub q: BitVec,
    pub o: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HvmSystem {
    n: usize,
    contexts: Vec<Context>,
}

impl HvmSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    /// Coefficients over `(c_1..c_n, d_1..d_n)`.
    pub fn row(&self, index: usize) -> BitVec {
        let ctx = &self.contexts[index];
        ctx.z.concat(&ctx.z.and(&ctx.q))
    }

    pub fn parity(&self, index: usize) -> bool {
        self.contexts[index].o
    }
}

pub fn build_system(n: usize, contexts: Vec<Context>) -> Result<HvmSystem> {
    for c in &contexts {
        if c.z.len() != n {
            return Err(Error::dims("context z", n, c.z.len()));
        }
        if c.q.len() != n {
            return Err(Error::dims("context q", n, c.q.len()));
        }
    }
    Ok(HvmSystem { n, contexts })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub c: BitVec,
    pub d: BitVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    HvmExists { assignment: Assignment },
    /// Context indices whose rows sum to `0 = 1`.
    Contextual { witness: Vec<usize> },
}

impl Verdict {
    pub fn is_contextual(&self) -> bool {
        matches!(self, Verdict::Contextual { .. })
    }
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn better(a: &[usize], b: &[usize]) -> bool {
    (a.len(), a) < (b.len(), b)
}

/// Smallest odd relation in the span of `relations`; ties go to the
/// lexicographically smallest index list.
fn minimize(relations: &[(Vec<usize>, bool)]) -> Vec<usize> {
    if relations.len() <= EXHAUSTIVE_RELATIONS {
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..1 << relations.len() {
            let mut acc = Vec::new();
            let mut parity = false;
            for (k, (rel, p)) in relations.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = xor_sorted(&acc, rel);
                    parity ^= p;
                }
            }
            if parity && best.as_ref().is_none_or(|b| better(&acc, b)) {
                best = Some(acc);
            }
        }
        return best.expect("at least one odd relation");
    }
    let mut best = relations
        .iter()
        .filter(|(_, p)| *p)
        .map(|(r, _)| r.clone())
        .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))
        .expect("at least one odd relation");
    loop {
        let improved = relations
            .iter()
            .filter(|(_, p)| !*p)
            .map(|(r, _)| xor_sorted(&best, r))
            .filter(|cand| better(cand, &best))
            .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        match improved {
            Some(c) => best = c,
            None => return best,
        }
    }
}

pub fn decide(system: &HvmSystem) -> Verdict {
    let mut elim = Elimination::new(2 * system.n);
    let mut seen: HashMap<BitVec, usize> = HashMap::new();
    let mut relations: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut have_odd = false;
    for index in 0..system.len() {
        let row = system.row(index);
        let parity = system.parity(index);
        if let Some(&first) = seen.get(&row) {
            if system.parity(first) != parity {
                // two contexts demanding different values of one observable product
                let rel = (vec![first, index], true);
                if relations.len() >= RELATION_CAP {
                    relations.pop();
                }
                relations.push(rel);
                have_odd = true;
            }
            continue;
        }
        seen.insert(row.clone(), index);
        if let RowStatus::Dependent { relation, parity } = elim.insert(index, &row, parity) {
            if relations.len() < RELATION_CAP || (parity && !have_odd) {
                if relations.len() >= RELATION_CAP {
                    relations.pop();
                }
                have_odd |= parity;
                relations.push((relation, parity));
            }
        }
        if have_odd && relations.len() >= RELATION_CAP {
            break;
        }
    }
    if have_odd {
        return Verdict::Contextual {
            witness: minimize(&relations),
        };
    }
    let x = elim.back_substitute();
    let n = system.n;
    Verdict::HvmExists {
        assignment: Assignment {
            c: BitVec::from_fn(n, |j| x.get(j)),
            d: BitVec::from_fn(n, |j| x.get(n + j)),
        },
    }
}

/// Re-checks a verdict against the system.
pub fn verify(system: &HvmSystem, verdict: &Verdict) -> bool {
    match verdict {
        Verdict::HvmExists { assignment } => {
            if assignment.c.len() != system.n || assignment.d.len() != system.n {
                return false;
            }
            let x = assignment.c.concat(&assignment.d);
            (0..system.len()).all(|i| system.row(i).dot(&x) == system.parity(i))
        }
        Verdict::Contextual { witness } => {
            if witness.is_empty() || witness.iter().any(|&i| i >= system.len()) {
                return false;
            }
            let mut sum = BitVec::zeros(2 * system.n);
            let mut parity = false;
            for &i in witness {
                sum.xor_assign(&system.row(i));
                parity ^= system.parity(i);
            }
            sum.is_zero() && parity
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub system: HvmSystem,
    pub verdict: Verdict,
}

/// Contexts `(Z row, Q i)` over the whole input space, decided.
pub fn analyze_instance(inst: &MbqcInstance) -> Result<Analysis> {
    let tt = truth_table(inst)?;
    let mut contexts = Vec::with_capacity(tt.rows().len() * inst.n_outputs());
    for (x, out) in tt.rows().iter().enumerate() {
        let q = inst.basis_choice(&BitVec::from_u64(inst.n_inputs(), x as u64))?;
        for (l, z) in inst.z_matrix().rows().iter().enumerate() {
            contexts.push(Context {
                z: z.clone(),
                q: q.clone(),
                o: out.get(l),
            });
        }
    }
    let system = build_system(inst.n(), contexts)?;
    let verdict = decide(&system);
    Ok(Analysis { system, verdict })
}

/// The contexts named by a contextual verdict.
pub fn mermin_witness(system: &HvmSystem, verdict: &Verdict) -> Option<Vec<Context>> {
    match verdict {
        Verdict::Contextual { witness } => Some(witness.iter().map(|&i| system.contexts[i].clone()).collect()),
        Verdict::HvmExists { .. } => None,
    }
}

/// One line per context, e.g. `L1 L2 L3 L4 = -1`. Sites are 1-based; with
/// `φ = π/4` everywhere the bases are named `L = O[1]`, `R = O[0]`.
pub fn mermin_table(rows: &[Context], angles: &AngleSpec) -> String {
    let lr = angles.d == 2 && angles.numerators.iter().all(|&a| a == 1);
    let mut out = String::new();
    for ctx in rows {
        let sites: Vec<String> = ctx
            .z
            .ones_iter()
            .map(|j| {
                let q = ctx.q.get(j);
                if lr {
                    format!("{}{}", if q { 'L' } else { 'R' }, j + 1)
                } else {
                    format!("O{}[{}]", j + 1, u8::from(q))
                }
            })
            .collect();
        let _ = writeln!(out, "{} = {}", sites.join(" "), if ctx.o { "-1" } else { "+1" });
    }
    out
}

/// The eight GHZ-4 correlations in the order they are usually tabulated:
/// `LLLL, LLRR, LRLR, LRRL, RLLR, RLRL, RRLL, RRRR`, all-`L` and all-`R`
/// carrying the minus sign.
pub fn ghz4_contexts() -> Vec<Context> {
    ["1111", "1100", "1010", "1001", "0110", "0101", "0011", "0000"]
        .iter()
        .map(|q| {
            let q = BitVec::parse(q).expect("literal");
            let w = q.weight();
            Context {
                z: BitVec::ones(4),
                o: w == 0 || w == 4,
                q,
            }
        })
        .collect()
}
