//! The `Q(r, t, m, χ)` family on Reed-Muller resource states.
//!
//! Resource `|R(r, m)⟩`, all angles `π / 2^χ`, `Q = [B(t, m)]ᵀ`,
//! `Z = [B(r, m)]`, `T = 0`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolfn::{self, TruthTable};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec};
use crate::mbqc::{self, MbqcInstance};
use crate::phasestate::{self, AngleSpec};
use crate::reedmuller::{self, monomial_vector, rm_basis, rm_dim, RmCode};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "DETMBQC_BUDGET";

/// `2^16 × 2^16` work items.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Work below this size is enumerated when the method is `Auto`.
pub const AUTO_ENUMERATION_LIMIT: u128 = 1 << 26;

/// Largest `χ` handled (weights are compared modulo `2^χ` in `u64`).
pub const MAX_CHI: u32 = 62;

pub fn budget() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub r: usize,
    pub t: usize,
    pub m: usize,
    pub chi: u32,
}

impl FamilyParams {
    pub fn new(r: usize, t: usize, m: usize, chi: u32) -> Result<Self> {
        let p = Self { r, t, m, chi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r > self.m || self.t > self.m {
            return Err(Error::InvalidParameters(format!(
                "need r <= m and t <= m, got r={}, t={}, m={}",
                self.r, self.t, self.m
            )));
        }
        if self.chi == 0 || self.chi > MAX_CHI {
            return Err(Error::InvalidParameters(format!("chi must lie in 1..={MAX_CHI}, got {}", self.chi)));
        }
        if self.m > reedmuller::MAX_M {
            return Err(Error::SizeGuard {
                what: "m",
                size: self.m,
                limit: reedmuller::MAX_M,
            });
        }
        Ok(())
    }

    pub fn n_inputs(&self) -> usize {
        rm_dim(self.t, self.m)
    }

    pub fn n_outputs(&self) -> usize {
        rm_dim(self.r, self.m)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({},{},{},{})", self.r, self.t, self.m, self.chi)
    }
}

pub fn build(p: FamilyParams) -> Result<MbqcInstance> {
    p.validate()?;
    let resource = rm_basis(p.r, p.m)?;
    let inputs = rm_basis(p.t, p.m)?;
    let state = phasestate::PhaseCosetState::coset(resource.basis().clone())?;
    let angles = AngleSpec::new(p.chi, vec![1; 1 << p.m])?;
    let q = inputs.basis().transpose();
    MbqcInstance::flat(state, angles, q, resource.basis().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    /// Enumerate when cheap, otherwise reduce to monomial products.
    #[default]
    Auto,
    Enumerate,
    Reduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DeterminismOptions {
    pub method: Method,
    /// Check every `z ∈ R(r, m)`, not only the basis rows.
    pub full_code: bool,
    /// Overrides [`budget`].
    pub budget: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `|c z| ≢ 0 mod 2^χ`.
    Cz,
    /// `|c q z| ≢ 0 mod 2^{χ−1}`.
    Cqz,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterExample {
    pub c: BitVec,
    pub q: BitVec,
    pub z: BitVec,
    pub condition: Condition,
    pub weight_cz: usize,
    pub weight_cqz: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Determinism {
    Deterministic,
    CounterExample(Box<CounterExample>),
}

impl Determinism {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Determinism::Deterministic)
    }
}

fn counterexample(c: &BitVec, q: &BitVec, z: &BitVec, condition: Condition) -> Determinism {
    Determinism::CounterExample(Box::new(CounterExample {
        weight_cz: c.and_weight(z),
        weight_cqz: BitVec::and3_weight(c, q, z),
        c: c.clone(),
        q: q.clone(),
        z: z.clone(),
        condition,
    }))
}

/// Work items of the enumeration: `|B| · 2^{dim R(r,m)} · 2^{dim R(t,m)}`.
pub fn enumeration_work(p: FamilyParams, full_code: bool) -> u128 {
    let dr = rm_dim(p.r, p.m) as u32;
    let dt = rm_dim(p.t, p.m) as u32;
    let zs: u128 = if full_code {
        1u128.checked_shl(dr).unwrap_or(u128::MAX)
    } else {
        dr as u128
    };
    1u128
        .checked_shl(dr + dt)
        .and_then(|w| w.checked_mul(zs))
        .unwrap_or(u128::MAX)
}

/// Decides the weight conditions for every `c ∈ R(r,m)`, `q ∈ R(t,m)` and
/// basis row `z`: `|cz| ≡ 0 mod 2^χ` and `|cqz| ≡ 0 mod 2^{χ−1}`.
pub fn determinism_exact(p: FamilyParams, options: DeterminismOptions) -> Result<Determinism> {
    p.validate()?;
    let work = enumeration_work(p, options.full_code);
    let method = match options.method {
        Method::Auto if options.full_code || work <= AUTO_ENUMERATION_LIMIT => Method::Enumerate,
        Method::Auto => Method::Reduce,
        m => m,
    };
    match method {
        Method::Enumerate => {
            let budget = options.budget.unwrap_or_else(budget);
            if work > budget {
                return Err(Error::BudgetExceeded { needed: work, budget });
            }
            determinism_enumerate(p, options.full_code)
        }
        Method::Reduce => {
            if options.full_code {
                return Err(Error::InvalidParameters(
                    "full-code checking is only available by enumeration".into(),
                ));
            }
            determinism_reduce(p)
        }
        Method::Auto => unreachable!(),
    }
}

fn determinism_enumerate(p: FamilyParams, full_code: bool) -> Result<Determinism> {
    let code_r = rm_basis(p.r, p.m)?;
    let code_t = rm_basis(p.t, p.m)?;
    let n = code_r.len();
    let mod_cz = (1u64 << p.chi) - 1;
    let mod_cqz = (1u64 << (p.chi - 1)) - 1;
    let zs: Vec<BitVec> = if full_code {
        gf2::enumerate_span(code_r.basis()).collect()
    } else {
        code_r.basis().rows().to_vec()
    };
    let c_basis = code_r.basis().rows();
    let q_basis = code_t.basis().rows();

    for z in &zs {
        let mut bad = None;
        gf2::for_each_in_span(n, c_basis, |c| {
            if bad.is_none() && (c.and_weight(z) as u64) & mod_cz != 0 {
                bad = Some(c.clone());
            }
        });
        if let Some(c) = bad {
            return Ok(counterexample(&c, &BitVec::zeros(n), z, Condition::Cz));
        }
    }
    if mod_cqz == 0 {
        return Ok(Determinism::Deterministic);
    }
    let mut w = BitVec::zeros(n);
    for z in &zs {
        let mut found = None;
        gf2::for_each_in_span(n, q_basis, |q| {
            if found.is_some() {
                return;
            }
            w.clone_from(q);
            w.and_assign(z);
            if w.is_zero() {
                return;
            }
            gf2::for_each_in_span(n, c_basis, |c| {
                if found.is_none() && (c.and_weight(&w) as u64) & mod_cqz != 0 {
                    found = Some((c.clone(), q.clone()));
                }
            });
        });
        if let Some((c, q)) = found {
            return Ok(counterexample(&c, &q, z, Condition::Cqz));
        }
    }
    Ok(Determinism::Deterministic)
}

/// A state of the monomial-product search: union of variables, number of
/// `c` factors, number of `q` factors.
type ProductState = (u64, u32, u32);

/// Monomial products have weight `2^{m − |vars|}`, and
/// `∀c ∈ span(V): |w c| ≡ 0 mod 2^k` holds iff `|w ∏_T v| ≡ 0 mod 2^{k−|T|+1}`
/// for every `T ⊆ V` with `1 ≤ |T| ≤ k`. Applying this once for `|cz|` and
/// twice for `|cqz|` turns both conditions into checks on variable unions.
fn determinism_reduce(p: FamilyParams) -> Result<Determinism> {
    let code_r = rm_basis(p.r, p.m)?;
    let code_t = rm_basis(p.t, p.m)?;
    let c_masks = code_r.masks();
    let q_masks = code_t.masks();
    let m = p.m as i64;
    let chi = p.chi as i64;

    for &zm in &c_masks {
        // |c z| ≡ 0 mod 2^χ.
        let viol = search_products(zm, &c_masks, &[], |s| s.1 <= p.chi, |s| s.1 >= 1, |(u, a, _)| {
            m - u.count_ones() as i64 >= chi - a as i64 + 1
        });
        if let Some((tc, _)) = viol {
            return extract_counterexample(p, &code_r, zm, &tc, &[]);
        }
    }
    if p.chi == 1 {
        return Ok(Determinism::Deterministic);
    }
    let k = p.chi - 1;
    for &zm in &c_masks {
        // |c q z| ≡ 0 mod 2^{χ−1}.
        let viol = search_products(
            zm,
            &c_masks,
            &q_masks,
            |(_, a, b)| a <= k && a + b <= k + 1,
            |(_, a, b)| a >= 1 && b >= 1,
            |(u, a, b)| m - u.count_ones() as i64 >= k as i64 + 2 - a as i64 - b as i64,
        );
        if let Some((tc, tq)) = viol {
            return extract_counterexample(p, &code_r, zm, &tc, &tq);
        }
    }
    Ok(Determinism::Deterministic)
}

/// Breadth-first search over products `z · ∏T_c · ∏T_q`. The first factor
/// always comes from `c_masks`. Returns the factor lists of the first
/// checked state failing `holds`.
fn search_products(
    zm: u64,
    c_masks: &[u64],
    q_masks: &[u64],
    allowed: impl Fn(ProductState) -> bool,
    checked: impl Fn(ProductState) -> bool,
    holds: impl Fn(ProductState) -> bool,
) -> Option<(Vec<u64>, Vec<u64>)> {
    let mut parent: HashMap<ProductState, Option<(ProductState, bool, u64)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &cm in c_masks {
        let s = (zm | cm, 1, 0);
        if allowed(s) && !parent.contains_key(&s) {
            parent.insert(s, Some(((zm, 0, 0), true, cm)));
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if checked(s) && !holds(s) {
            let mut tc = Vec::new();
            let mut tq = Vec::new();
            let mut cur = s;
            while let Some(Some((prev, is_c, mask))) = parent.get(&cur) {
                if *is_c {
                    tc.push(*mask);
                } else {
                    tq.push(*mask);
                }
                cur = *prev;
            }
            tc.sort_unstable();
            tc.dedup();
            tq.sort_unstable();
            tq.dedup();
            return Some((tc, tq));
        }
        let (u, a, b) = s;
        let steps = c_masks
            .iter()
            .map(|&mm| ((u | mm, a + 1, b), true, mm))
            .chain(q_masks.iter().map(|&mm| ((u | mm, a, b + 1), false, mm)));
        for (next, is_c, mm) in steps {
            if allowed(next) && !parent.contains_key(&next) {
                parent.insert(next, Some((s, is_c, mm)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Brute force over `span(T_c) × span(T_q)`, where a violation is
/// guaranteed to exist.
fn extract_counterexample(p: FamilyParams, code: &RmCode, zm: u64, tc: &[u64], tq: &[u64]) -> Result<Determinism> {
    let z = monomial_vector(zm, p.m);
    debug_assert!(code.basis().rows().contains(&z));
    let n = z.len();
    let cs: Vec<BitVec> = tc.iter().map(|&mm| monomial_vector(mm, p.m)).collect();
    let qs: Vec<BitVec> = tq.iter().map(|&mm| monomial_vector(mm, p.m)).collect();
    let mod_cz = (1u64 << p.chi) - 1;
    let mod_cqz = (1u64 << (p.chi - 1)) - 1;
    let mut found = None;
    gf2::for_each_in_span(n, &independent(&qs, n), |q| {
        gf2::for_each_in_span(n, &independent(&cs, n), |c| {
            if found.is_some() {
                return;
            }
            if tq.is_empty() {
                if (c.and_weight(&z) as u64) & mod_cz != 0 {
                    found = Some(counterexample(c, q, &z, Condition::Cz));
                }
            } else if (BitVec::and3_weight(c, q, &z) as u64) & mod_cqz != 0 {
                found = Some(counterexample(c, q, &z, Condition::Cqz));
            }
        });
    });
    found.ok_or_else(|| Error::InvalidParameters(format!("reduction reported a violation for {p} but none was found")))
}

fn independent(rows: &[BitVec], n: usize) -> Vec<BitVec> {
    let mut basis = gf2::SpanBasis::new(n);
    rows.iter().filter(|r| basis.insert((*r).clone())).cloned().collect()
}

/// `χ ≥ 2` and `(χ−1)(r+t) < m−r ≤ χ t`.
pub fn sufficient_condition(p: FamilyParams) -> bool {
    let (r, t, m, chi) = (p.r as i64, p.t as i64, p.m as i64, p.chi as i64);
    chi >= 2 && (chi - 1) * (r + t) < m - r && m - r <= chi * t
}

/// Closed-form evaluation of the computed function.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    params: FamilyParams,
    zs: Vec<BitVec>,
    q_basis: Vec<BitVec>,
}

impl ClosedForm {
    pub fn new(p: FamilyParams) -> Result<Self> {
        p.validate()?;
        Ok(Self {
            params: p,
            zs: rm_basis(p.r, p.m)?.basis().rows().to_vec(),
            q_basis: rm_basis(p.t, p.m)?.basis().rows().to_vec(),
        })
    }

    pub fn params(&self) -> FamilyParams {
        self.params
    }

    /// `q = Q i mod 2`.
    pub fn basis_choice(&self, i: &BitVec) -> Result<BitVec> {
        if i.len() != self.q_basis.len() {
            return Err(Error::dims("family input", self.q_basis.len(), i.len()));
        }
        let mut q = BitVec::zeros(1 << self.params.m);
        for k in i.ones_iter() {
            q.xor_assign(&self.q_basis[k]);
        }
        Ok(q)
    }

    /// `o_z = (|zq| mod 2^χ) / 2^{χ−1} ⊕ (|z| mod 2^{χ+1}) / 2^χ`.
    pub fn eval_q(&self, q: &BitVec) -> Result<BitVec> {
        let chi = self.params.chi;
        let mut out = BitVec::zeros(self.zs.len());
        for (row, z) in self.zs.iter().enumerate() {
            let wz = z.weight() as u64;
            let wq = z.and_weight(q) as u64;
            if wz % (1 << chi) != 0 {
                return Err(Error::PromiseViolation {
                    row,
                    detail: format!("|z| = {wz} is not divisible by 2^{chi}"),
                });
            }
            if wq % (1 << (chi - 1)) != 0 {
                return Err(Error::PromiseViolation {
                    row,
                    detail: format!("|zq| = {wq} is not divisible by 2^{}", chi - 1),
                });
            }
            let lead = (wq % (1 << chi)) >> (chi - 1);
            let o0 = (wz % (1 << (chi + 1))) >> chi;
            out.set(row, (lead ^ o0) == 1);
        }
        Ok(out)
    }

    pub fn eval(&self, i: &BitVec) -> Result<BitVec> {
        self.eval_q(&self.basis_choice(i)?)
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        let n_in = self.q_basis.len();
        if n_in > boolfn::MAX_INPUTS {
            return Err(Error::SizeGuard {
                what: "family inputs",
                size: n_in,
                limit: boolfn::MAX_INPUTS,
            });
        }
        let rows = (0..1u64 << n_in)
            .map(|x| self.eval(&BitVec::from_u64(n_in, x)))
            .collect::<Result<Vec<_>>>()?;
        TruthTable::new(n_in, self.zs.len(), rows)
    }
}

pub fn closed_form(p: FamilyParams, i: &BitVec) -> Result<BitVec> {
    ClosedForm::new(p)?.eval(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseClass {
    Probabilistic,
    DeterministicLinear,
    Unknown,
    NonlinearDeterministic,
}

impl fmt::Display for PhaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseClass::Probabilistic => "Probabilistic",
            PhaseClass::DeterministicLinear => "DeterministicLinear",
            PhaseClass::Unknown => "Unknown",
            PhaseClass::NonlinearDeterministic => "NonlinearDeterministic",
        })
    }
}

/// Region of the `(r, m)` plane; requires `r ≤ m` and `(r, m) ≠ (0, 0)`.
pub fn classify(r: usize, m: usize) -> PhaseClass {
    if (r, m) == (0, 1) || (2 * r < m && m <= 3 * r) {
        PhaseClass::DeterministicLinear
    } else if r <= m && m <= 2 * r {
        PhaseClass::Probabilistic
    } else if m == 3 * r + 1 {
        PhaseClass::Unknown
    } else {
        PhaseClass::NonlinearDeterministic
    }
}

/// Largest `χ ∈ [2, m+1]` for which some `t ∈ [0, m]` meets the sufficient
/// condition, with the smallest such `t`.
pub fn chi_witness(r: usize, m: usize) -> Option<(u32, usize)> {
    (2..=(m as u32 + 1)).rev().find_map(|chi| {
        (0..=m)
            .find(|&t| sufficient_condition(FamilyParams { r, t, m, chi }))
            .map(|t| (chi, t))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseDiagramCell {
    pub r: usize,
    pub m: usize,
    pub class: PhaseClass,
    pub chi_max: Option<u32>,
    pub witness_t: Option<usize>,
}

/// Cells `0 ≤ r ≤ min(r_max, m)`, `1 ≤ m ≤ m_max`, ordered by `r` then `m`.
pub fn phase_diagram(r_max: usize, m_max: usize) -> Vec<PhaseDiagramCell> {
    let mut cells = Vec::new();
    for r in 0..=r_max {
        for m in r.max(1)..=m_max {
            let class = classify(r, m);
            let witness = match class {
                PhaseClass::NonlinearDeterministic => chi_witness(r, m),
                _ => None,
            };
            cells.push(PhaseDiagramCell {
                r,
                m,
                class,
                chi_max: witness.map(|w| w.0),
                witness_t: witness.map(|w| w.1),
            });
        }
    }
    cells
}

pub const PHASE_DIAGRAM_COLUMNS: [&str; 5] = ["r", "m", "class", "chi_max", "witness_t"];

pub fn phase_diagram_rows(cells: &[PhaseDiagramCell]) -> Vec<Vec<String>> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    cells
        .iter()
        .map(|c| {
            vec![
                c.r.to_string(),
                c.m.to_string(),
                c.class.to_string(),
                opt(c.chi_max.map(|x| x.to_string())),
                opt(c.witness_t.map(|x| x.to_string())),
            ]
        })
        .collect()
}

pub fn phase_diagram_csv(cells: &[PhaseDiagramCell]) -> String {
    let mut out = PHASE_DIAGRAM_COLUMNS.join(",");
    out.push('\n');
    for row in phase_diagram_rows(cells) {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowFrequency {
    pub row: usize,
    pub monomial: String,
    pub support_weight: usize,
    pub zeros: u64,
    pub ones: u64,
    /// Degree-1 rows, the ones carrying the 9:7 claim.
    pub ratio_claimed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example2Report {
    pub params: FamilyParams,
    pub rows: Vec<RowFrequency>,
    pub admissible_count: u64,
    pub engine_checked: u64,
    pub engine_agrees: bool,
    pub linear: bool,
}

fn row_frequencies(p: FamilyParams, tt: &TruthTable, inputs: impl Fn(usize) -> bool) -> Result<Vec<RowFrequency>> {
    let code = rm_basis(p.r, p.m)?;
    Ok(code
        .monomials()
        .iter()
        .enumerate()
        .map(|(row, mono)| {
            let mut counts = [0u64; 2];
            for (x, out) in tt.rows().iter().enumerate() {
                if inputs(x) {
                    counts[usize::from(out.get(row))] += 1;
                }
            }
            RowFrequency {
                row,
                monomial: mono.label(),
                support_weight: 1 << (p.m - mono.degree()),
                zeros: counts[0],
                ones: counts[1],
                ratio_claimed: mono.degree() == 1,
            }
        })
        .collect())
}

/// Output statistics of `Q(1,2,5,2)` over all `2^16` inputs, from the
/// closed form, checked input by input against the exact engine.
pub fn example2_report() -> Result<Example2Report> {
    let p = FamilyParams::new(1, 2, 5, 2)?;
    let formula = ClosedForm::new(p)?.truth_table()?;
    let engine = mbqc::truth_table(&build(p)?)?;
    let engine_agrees = engine == formula;
    Ok(Example2Report {
        params: p,
        rows: row_frequencies(p, &formula, |_| true)?,
        admissible_count: engine.rows().len() as u64,
        engine_checked: engine.rows().len() as u64,
        engine_agrees,
        linear: boolfn::is_linear(&formula).is_linear(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub params: FamilyParams,
    pub deterministic: bool,
    pub counterexample: Option<CounterExample>,
    pub input_count: u64,
    pub admissible_count: u64,
    pub admissible_is_vector_space: bool,
    pub rows: Vec<RowFrequency>,
    pub degree1_constant_zero: bool,
    pub discrepancy: Option<String>,
}

/// The `m = 4` analogue `Q(1,2,4,2)`: exact admissible inputs and the
/// outputs induced on them.
pub fn m4_correspondence_report() -> Result<CorrespondenceReport> {
    let p = FamilyParams::new(1, 2, 4, 2)?;
    let verdict = determinism_exact(p, DeterminismOptions::default())?;
    let inst = build(p)?;
    let n_in = inst.n_inputs();
    let n_out = inst.n_outputs();
    let mut admissible = vec![false; 1 << n_in];
    let mut rows = Vec::with_capacity(1 << n_in);
    let mut qs = Vec::new();
    for x in 0..1u64 << n_in {
        let run = mbqc::run(&inst, &BitVec::from_u64(n_in, x))?;
        match run.output() {
            Some(o) => {
                admissible[x as usize] = true;
                qs.push(run.q.clone());
                rows.push(o);
            }
            None => rows.push(BitVec::zeros(n_out)),
        }
    }
    let tt = TruthTable::new(n_in, n_out, rows)?;
    let freq = row_frequencies(p, &tt, |x| admissible[x])?;
    let admissible_count = admissible.iter().filter(|&&a| a).count() as u64;
    let basis = gf2::SpanBasis::from_rows(1 << p.m, &qs);
    let is_vs = !qs.is_empty() && basis.rank() < 64 && (1u64 << basis.rank()) == qs.len() as u64;
    let degree1_constant_zero = freq.iter().filter(|f| f.ratio_claimed).all(|f| f.ones == 0);
    let discrepancy = if admissible_count == 0 {
        Some("no admissible inputs".to_string())
    } else if !degree1_constant_zero {
        Some("degree-1 outputs are not constant 0 on the admissible set".to_string())
    } else {
        None
    };
    let counterexample = match &verdict {
        Determinism::CounterExample(ce) => Some((**ce).clone()),
        Determinism::Deterministic => None,
    };
    Ok(CorrespondenceReport {
        params: p,
        deterministic: verdict.is_deterministic(),
        counterexample,
        input_count: 1 << n_in,
        admissible_count,
        admissible_is_vector_space: is_vs,
        rows: freq,
        degree1_constant_zero,
        discrepancy,
    })
}
