//! The 35-qubit LU-LC pair and the AND protocol built on it.
//!
//! `|Φ1⟩` is the uniform superposition over `S = span(ξ^1..ξ^6)` and
//! `|Φ2⟩` carries the sign `(−1)^{Q(x)}`. Both are related by
//! `U(ε) = ⊗_j exp(i π ε_j Z_j / 8)` for every `ε = e + a k1 + b k2 mod 8`.
//!
//! The constants below are regenerated from `data/lulc_counterexample.txt`
//! by `cargo run --example regen_lulc`. The quadratic pairs are 1-based, as
//! in the fixture.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::{BinMatrix, BitVec};
use crate::mbqc::MbqcInstance;
use crate::phasestate::{
    expectation, extremal_bit, x_stabilizer_expectation, AngleSpec, CorrelationContext, Extremality,
    PhaseCosetState,
};

pub const N: usize = 35;

// BEGIN GENERATED
pub const XI: [[u8; N]; 6] = [
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
];
pub const QUAD: [(usize, usize); 37] = [
    (1, 17), (2, 32), (1, 22), (2, 9), (1, 25), (2, 10), (1, 27), (2, 21),
    (1, 23), (1, 16), (1, 18), (2, 23), (3, 25), (1, 13), (2, 11), (1, 26),
    (1, 21), (1, 20), (1, 24), (2, 22), (1, 12), (2, 13), (2, 20), (2, 33),
    (2, 34), (3, 10), (3, 11), (3, 17), (3, 19), (3, 24), (4, 16), (4, 21),
    (4, 28), (4, 31), (5, 14), (5, 30), (6, 29),
];
pub const E: [u8; N] = [3, 3, 7, 1, 1, 1, 3, 3, 3, 3, 3, 5, 7, 3, 1, 7, 7, 5, 5, 3, 5, 5, 7, 7, 5, 3, 5, 7, 3, 3, 3, 5, 5, 5, 1];
pub const K1: [u8; N] = [4, 4, 0, 4, 0, 2, 0, 4, 2, 0, 2, 0, 2, 2, 0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0];
pub const K2: [u8; N] = [4, 0, 0, 0, 2, 2, 2, 0, 0, 0, 2, 4, 0, 0, 2, 0, 0, 0, 2, 4, 0, 0, 2, 0, 0, 0, 2, 2, 0, 2, 2, 0, 0, 2, 0];
pub const CHECKSUM: &str = "9cb8a7cfd44b5551f9a325322d855fed2eb0902def8acef3328fd38b22f7a266";
// END GENERATED

/// Plain constants, as stored in the fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLulc {
    pub xi: Vec<Vec<u8>>,
    pub quad: Vec<(usize, usize)>,
    pub e: Vec<u8>,
    pub k1: Vec<u8>,
    pub k2: Vec<u8>,
}

pub fn embedded() -> RawLulc {
    RawLulc {
        xi: XI.iter().map(|r| r.to_vec()).collect(),
        quad: QUAD.to_vec(),
        e: E.to_vec(),
        k1: K1.to_vec(),
        k2: K2.to_vec(),
    }
}

fn join(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

/// Canonical text form; this is exactly the fixture file.
pub fn render_fixture(raw: &RawLulc) -> String {
    let mut out = String::new();
    for (l, row) in raw.xi.iter().enumerate() {
        let _ = writeln!(out, "xi{} {}", l + 1, join(row));
    }
    let pairs: Vec<String> = raw.quad.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let _ = writeln!(out, "quad {}", pairs.join(" "));
    let _ = writeln!(out, "e {}", join(&raw.e));
    let _ = writeln!(out, "k1 {}", join(&raw.k1));
    let _ = writeln!(out, "k2 {}", join(&raw.k2));
    out
}

pub fn checksum(raw: &RawLulc) -> String {
    hex::encode(Sha256::digest(render_fixture(raw).as_bytes()))
}

pub fn parse_fixture(text: &str) -> Result<RawLulc> {
    let nums = |s: &str| -> Result<Vec<u8>> {
        s.split(',')
            .map(|v| v.trim().parse::<u8>().map_err(|e| Error::Parse(format!("{v:?}: {e}"))))
            .collect()
    };
    let mut xi = vec![Vec::new(); 6];
    let (mut quad, mut e, mut k1, mut k2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (key, rest) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("malformed fixture line {line:?}")))?;
        match key {
            "quad" => {
                for pair in rest.split_whitespace() {
                    let (a, b) = pair
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("malformed pair {pair:?}")))?;
                    let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse(e.to_string()));
                    quad.push((p(a)?, p(b)?));
                }
            }
            "e" => e = nums(rest)?,
            "k1" => k1 = nums(rest)?,
            "k2" => k2 = nums(rest)?,
            k if k.starts_with("xi") => {
                let l: usize = k[2..].parse().map_err(|_| Error::Parse(format!("bad key {k:?}")))?;
                if !(1..=6).contains(&l) {
                    return Err(Error::Parse(format!("xi index {l} out of range")));
                }
                xi[l - 1] = nums(rest)?;
            }
            other => return Err(Error::Parse(format!("unknown fixture key {other:?}"))),
        }
    }
    Ok(RawLulc { xi, quad, e, k1, k2 })
}

/// The constants as Rust source, between the generated-block markers.
pub fn render_rust(raw: &RawLulc) -> String {
    let list = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(", ");
    let mut out = String::from("// BEGIN GENERATED\n");
    let _ = writeln!(out, "pub const XI: [[u8; N]; {}] = [", raw.xi.len());
    for row in &raw.xi {
        let _ = writeln!(out, "    [{}],", list(row));
    }
    out.push_str("];\n");
    let _ = writeln!(out, "pub const QUAD: [(usize, usize); {}] = [", raw.quad.len());
    for chunk in raw.quad.chunks(8) {
        let items: Vec<String> = chunk.iter().map(|(a, b)| format!("({a}, {b}),")).collect();
        let _ = writeln!(out, "    {}", items.join(" "));
    }
    out.push_str("];\n");
    let _ = writeln!(out, "pub const E: [u8; N] = [{}];", list(&raw.e));
    let _ = writeln!(out, "pub const K1: [u8; N] = [{}];", list(&raw.k1));
    let _ = writeln!(out, "pub const K2: [u8; N] = [{}];", list(&raw.k2));
    let _ = writeln!(out, "pub const CHECKSUM: &str = \"{}\";", checksum(raw));
    out.push_str("// END GENERATED\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LulcData {
    pub xi: Vec<BitVec>,
    /// 0-based pairs `(a, b)`, `a < b`.
    pub quad: Vec<(usize, usize)>,
    pub e: Vec<u8>,
    pub k1: Vec<u8>,
    pub k2: Vec<u8>,
    pub phi1: PhaseCosetState,
    pub phi2: PhaseCosetState,
}

impl LulcData {
    /// `k = a k1 + b k2 mod 8`.
    pub fn k(&self, a: bool, b: bool) -> Vec<u8> {
        (0..N)
            .map(|j| (u8::from(a) * self.k1[j] + u8::from(b) * self.k2[j]) % 8)
            .collect()
    }
}

fn validate(raw: &RawLulc) -> Result<()> {
    let bad = |what: &str| Err(Error::DataCorruption(what.to_string()));
    if raw.xi.len() != 6 || raw.xi.iter().any(|r| r.len() != N || r.iter().any(|&b| b > 1)) {
        return bad("xi vectors must be six binary vectors of length 35");
    }
    if [&raw.e, &raw.k1, &raw.k2].iter().any(|v| v.len() != N) {
        return bad("e, k1, k2 must have length 35");
    }
    if raw.e.iter().any(|&v| v >= 8 || v % 2 == 0) {
        return bad("e entries must be odd residues mod 8");
    }
    if raw.k1.iter().chain(&raw.k2).any(|&v| v >= 8 || v % 2 == 1) {
        return bad("k entries must be even residues mod 8");
    }
    if raw.quad.iter().any(|&(a, b)| a == 0 || b == 0 || a > N || b > N || a == b) {
        return bad("quadratic pairs must be distinct sites in 1..=35");
    }
    Ok(())
}

/// Embedded constants, checked against the checksum and the structural
/// invariants, plus the two resource states.
pub fn load_data() -> Result<LulcData> {
    let raw = embedded();
    let sum = checksum(&raw);
    if sum != CHECKSUM {
        return Err(Error::DataCorruption(format!("checksum {sum} does not match {CHECKSUM}")));
    }
    from_raw(&raw)
}

pub fn from_raw(raw: &RawLulc) -> Result<LulcData> {
    validate(raw)?;
    let xi = raw
        .xi
        .iter()
        .map(|r| BitVec::from_bits(r))
        .collect::<Result<Vec<_>>>()?;
    let generators = BinMatrix::new(N, xi.clone())?;
    if generators.rank() != 6 {
        return Err(Error::DataCorruption("xi vectors are not independent".into()));
    }
    let quad: Vec<(usize, usize)> = raw
        .quad
        .iter()
        .map(|&(a, b)| ((a - 1).min(b - 1), (a - 1).max(b - 1)))
        .collect();
    let phi1 = PhaseCosetState::coset(generators.clone())?;
    let phi2 = PhaseCosetState::new(generators, &quad, BitVec::zeros(N))?;
    Ok(LulcData {
        xi,
        quad,
        e: raw.e.clone(),
        k1: raw.k1.clone(),
        k2: raw.k2.clone(),
        phi1,
        phi2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LuCheck {
    pub holds: bool,
    pub first_violation: Option<BitVec>,
}

/// Whether `U(ε)|Φ1⟩ ∝ |Φ2⟩`: the exponent `Σ_j ε_j (−1)^{x_j} + 8 Q(x)`
/// (units of `π/8`) must agree mod 16 with its value at `x = 0` for every
/// `x ∈ S`.
pub fn verify_lu_with(data: &LulcData, eps: &[u8]) -> Result<LuCheck> {
    if eps.len() != N {
        return Err(Error::dims("epsilon", N, eps.len()));
    }
    let exponent = |x: &BitVec| -> i64 {
        let local: i64 = (0..N)
            .map(|j| if x.get(j) { -i64::from(eps[j]) } else { i64::from(eps[j]) })
            .sum();
        (local + if data.phi2.quad_form(x) { 8 } else { 0 }).rem_euclid(16)
    };
    let reference = exponent(&BitVec::zeros(N));
    for x in data.phi1.elements()? {
        if exponent(x) != reference {
            return Ok(LuCheck {
                holds: false,
                first_violation: Some(x.clone()),
            });
        }
    }
    Ok(LuCheck {
        holds: true,
        first_violation: None,
    })
}

pub fn verify_lu_family(a: bool, b: bool) -> Result<LuCheck> {
    let data = load_data()?;
    let k = data.k(a, b);
    let eps: Vec<u8> = (0..N).map(|j| (data.e[j] + k[j]) % 8).collect();
    verify_lu_with(&data, &eps)
}

/// `(q, v)` with `e + k ≡ (−1)^q e + 4 v mod 8`.
pub fn v_split(e: u8, k: u8) -> Result<(u8, u8)> {
    if e >= 8 || e % 2 == 0 {
        return Err(Error::InvalidParameters(format!("e = {e} must be an odd residue mod 8")));
    }
    if k >= 8 || k % 2 == 1 {
        return Err(Error::InvalidParameters(format!("k = {k} must be an even residue mod 8")));
    }
    let q = (k / 2) % 2;
    let v = ((u32::from(k) * (u32::from(e) + u32::from(k) / 2) / 4) % 2) as u8;
    Ok((q, v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndOutcome {
    pub a: u8,
    pub b: u8,
    pub q: BitVec,
    /// Bits from the expectation engine.
    pub o: BitVec,
    /// `η_l = Σ_{j ∈ ξ^l} v(e_j, k_j) mod 2`.
    pub eta: BitVec,
    pub agrees: bool,
}

pub fn and_protocol_with(data: &LulcData, a: bool, b: bool) -> Result<AndOutcome> {
    let k = data.k(a, b);
    let mut q = BitVec::zeros(N);
    let mut v = BitVec::zeros(N);
    for j in 0..N {
        let (qj, vj) = v_split(data.e[j], k[j])?;
        q.set(j, qj == 1);
        v.set(j, vj == 1);
    }
    let angles = AngleSpec::new(2, data.e.iter().map(|&x| i64::from(x)).collect())?;
    let mut o = BitVec::zeros(data.xi.len());
    let mut eta = BitVec::zeros(data.xi.len());
    for (l, xi) in data.xi.iter().enumerate() {
        let h = expectation(&data.phi2, &angles, &CorrelationContext::new(xi.clone(), q.clone()))?;
        match extremal_bit(&h) {
            Extremality::Extremal(bit) => o.set(l, bit == 1),
            other => {
                return Err(Error::DataCorruption(format!(
                    "context xi{} is not extremal ({other:?}) for a={}, b={}",
                    l + 1,
                    u8::from(a),
                    u8::from(b)
                )))
            }
        }
        eta.set(l, xi.dot(&v));
    }
    Ok(AndOutcome {
        a: u8::from(a),
        b: u8::from(b),
        agrees: o == eta,
        q,
        o,
        eta,
    })
}

pub fn and_protocol(a: bool, b: bool) -> Result<AndOutcome> {
    and_protocol_with(&load_data()?, a, b)
}

/// `⟨Φ1| X(l) |Φ1⟩` for each `l`, as a sign bit.
pub fn x_stabilizer_bits(data: &LulcData) -> Result<Vec<Extremality>> {
    data.xi
        .iter()
        .map(|xi| x_stabilizer_expectation(&data.phi1, xi).map(|h| extremal_bit(&h)))
        .collect()
}

/// The protocol as a flat instance: inputs `(a, b)`, `Q` columns
/// `k1/2 mod 2` and `k2/2 mod 2`, outputs `ξ^1..ξ^6`.
pub fn and_instance() -> Result<MbqcInstance> {
    let data = load_data()?;
    let rows = (0..N)
        .map(|j| BitVec::from_bools(&[(data.k1[j] / 2) % 2 == 1, (data.k2[j] / 2) % 2 == 1]))
        .collect();
    let q = BinMatrix::new(2, rows)?;
    let z = BinMatrix::new(N, data.xi.clone())?;
    let angles = AngleSpec::new(2, data.e.iter().map(|&x| i64::from(x)).collect())?;
    MbqcInstance::flat(data.phi2, angles, q, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_fixture() {
        let text = include_str!("../data/lulc_counterexample.txt");
        assert_eq!(parse_fixture(text).unwrap(), embedded());
        assert_eq!(render_fixture(&embedded()), text);
        assert_eq!(checksum(&embedded()), CHECKSUM);
        let src = include_str!("lulc.rs");
        assert!(src.contains(&render_rust(&embedded())));
    }

    #[test]
    fn printed_entries() {
        let d = load_data().unwrap();
        assert_eq!((d.e[0], d.e[2]), (3, 7));
        assert_eq!((d.k1[0], d.k2[0]), (4, 4));
        assert_eq!(d.xi[5].weight(), 16);
        assert_eq!(d.quad.len(), 37);
    }

    #[test]
    fn lu_family() {
        for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
            assert!(verify_lu_family(a, b).unwrap().holds, "a={a} b={b}");
        }
        let d = load_data().unwrap();
        let mut eps = d.e.clone();
        eps[0] = (eps[0] + 2) % 8;
        let check = verify_lu_with(&d, &eps).unwrap();
        assert!(!check.holds);
        assert!(check.first_violation.is_some());
    }

    #[test]
    fn v_split_examples() {
        assert_eq!(v_split(3, 4).unwrap(), (0, 1));
        assert_eq!(v_split(1, 2).unwrap(), (1, 1));
        for e in [1, 3, 5, 7] {
            assert_eq!(v_split(e, 0).unwrap(), (0, 0));
        }
        assert!(v_split(2, 0).is_err());
        assert!(v_split(1, 3).is_err());
    }

    #[test]
    fn and_gate() {
        let d = load_data().unwrap();
        for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
            let out = and_protocol_with(&d, a, b).unwrap();
            assert_eq!(out.o.get(0), a && b);
            assert!(out.agrees, "{out:?}");
        }
    }

    #[test]
    fn x_stabilizers_of_phi1() {
        let d = load_data().unwrap();
        assert!(x_stabilizer_bits(&d).unwrap().iter().all(|&e| e == Extremality::Extremal(0)));
    }
}
