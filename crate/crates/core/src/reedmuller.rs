//! Reed-Muller codes `R(r, m)` with the monomial basis.
//!
//! Coordinates are indexed by `j ∈ {0, …, 2^m − 1}` and variable `v_k`
//! (1-based) evaluates to bit `k − 1` of `j`. A monomial is stored both as
//! its sorted variable list and as a bitmask of those variables.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BinMatrix, BitVec};

/// Largest `m` for which full codewords are materialized.
pub const MAX_M: usize = 24;

/// Largest code dimension accepted by [`weight_distribution`].
pub const MAX_ENUM_DIM: usize = 28;

/// Largest code dimension accepted by [`ax_check`].
pub const MAX_AX_DIM: usize = 32;

/// A product of distinct variables `v_{k1} ⋯ v_{kd}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    vars: Vec<usize>,
}

impl Monomial {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Self { vars }
    }

    pub fn one() -> Self {
        Self { vars: Vec::new() }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    /// Bit `k − 1` set for each variable `v_k`.
    pub fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |acc, &k| acc | (1u64 << (k - 1)))
    }

    /// Evaluation vector of length `2^m`.
    pub fn evaluate(&self, m: usize) -> BitVec {
        monomial_vector(self.mask(), m)
    }

    /// Human-readable name, `1` for the constant and `v1v3` style otherwise.
    pub fn label(&self) -> String {
        if self.vars.is_empty() {
            "1".to_string()
        } else {
            self.vars.iter().map(|k| format!("v{k}")).collect()
        }
    }
}

/// Evaluation vector of the monomial whose variable set is `mask`.
pub fn monomial_vector(mask: u64, m: usize) -> BitVec {
    let n = 1usize << m;
    BitVec::from_fn(n, |j| (j as u64) & mask == mask)
}

/// A Reed-Muller code together with its ordered monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RmCode {
    r: usize,
    m: usize,
    monomials: Vec<Monomial>,
    basis: BinMatrix,
}

impl RmCode {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn masks(&self) -> Vec<u64> {
        self.monomials.iter().map(Monomial::mask).collect()
    }

    pub fn basis(&self) -> &BinMatrix {
        &self.basis
    }
}

/// `Σ_{i ≤ r} C(m, i)`.
pub fn rm_dim(r: usize, m: usize) -> usize {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of degree at most `r` in `m` variables, by degree then
/// lexicographically.
pub fn rm_monomials(r: usize, m: usize) -> Vec<Monomial> {
    (0..=r.min(m))
        .flat_map(|d| (1..=m).combinations(d).map(Monomial::new))
        .collect()
}

pub fn rm_basis(r: usize, m: usize) -> Result<RmCode> {
    if r > m {
        return Err(Error::InvalidParameters(format!("R(r, m) needs r <= m, got r={r}, m={m}")));
    }
    if m > MAX_M {
        return Err(Error::SizeGuard {
            what: "Reed-Muller length exponent m",
            size: m,
            limit: MAX_M,
        });
    }
    let monomials = rm_monomials(r, m);
    let rows = monomials.iter().map(|mono| mono.evaluate(m)).collect();
    let basis = BinMatrix::new(1 << m, rows)?;
    Ok(RmCode { r, m, monomials, basis })
}

/// Deletes coordinate 0 from every basis row.
pub fn puncture(code: &RmCode) -> Result<BinMatrix> {
    if code.r >= code.m {
        return Err(Error::InvalidParameters(format!(
            "puncturing needs r <= m - 1, got r={}, m={}",
            code.r, code.m
        )));
    }
    let rows = code.basis.rows().iter().map(|row| row.delete_coords(&[0])).collect();
    BinMatrix::new(code.len() - 1, rows)
}

/// CSS code built from `R*(r, m)` (X side) and `R*(m − r − 1, m)` (Z side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    pub n: usize,
    pub gx: BinMatrix,
    pub gz: BinMatrix,
    pub x_bar: BitVec,
    pub z_bar: BitVec,
}

pub fn css_generators(r: usize, m: usize) -> Result<CssCode> {
    if m == 0 || r + 1 > m {
        return Err(Error::InvalidParameters(format!(
            "CSS construction needs 0 <= r <= m - 1, got r={r}, m={m}"
        )));
    }
    let x_side = puncture(&rm_basis(r, m)?)?;
    let z_side = puncture(&rm_basis(m - r - 1, m)?)?;
    let n = (1 << m) - 1;
    let x_bar = x_side.row(0).clone();
    let z_bar = z_side.row(0).clone();
    let gx = BinMatrix::new(n, x_side.rows()[1..].to_vec())?;
    let gz = BinMatrix::new(n, z_side.rows()[1..].to_vec())?;

    for (xi, xr) in gx.rows().iter().enumerate() {
        for (zi, zr) in gz.rows().iter().enumerate() {
            if xr.dot(zr) {
                return Err(Error::OrthogonalityViolation { x_row: xi, z_row: zi });
            }
        }
        if xr.dot(&z_bar) {
            return Err(Error::OrthogonalityViolation { x_row: xi, z_row: usize::MAX });
        }
    }
    for (zi, zr) in gz.rows().iter().enumerate() {
        if x_bar.dot(zr) {
            return Err(Error::OrthogonalityViolation { x_row: usize::MAX, z_row: zi });
        }
    }
    if !x_bar.dot(&z_bar) {
        return Err(Error::InvalidParameters("logical operators commute".into()));
    }
    if gx.n_rows() + gz.n_rows() != n.saturating_sub(1) {
        return Err(Error::InvalidParameters(format!(
            "expected {} stabilizer generators, found {}",
            n.saturating_sub(1),
            gx.n_rows() + gz.n_rows()
        )));
    }
    Ok(CssCode { n, gx, gz, x_bar, z_bar })
}

/// Codewords packed into single words when `2^m <= 64`.
fn packed_basis(code: &RmCode) -> Option<Vec<u64>> {
    (code.m <= 6).then(|| code.basis.rows().iter().map(BitVec::to_u64).collect())
}

/// Exact weight enumerator of `R(r, m)`.
pub fn weight_distribution(r: usize, m: usize) -> Result<BTreeMap<usize, u64>> {
    let code = rm_basis(r, m)?;
    if code.dim() > MAX_ENUM_DIM {
        return Err(Error::SizeGuard {
            what: "code dimension",
            size: code.dim(),
            limit: MAX_ENUM_DIM,
        });
    }
    let mut counts = vec![0u64; code.len() + 1];
    match packed_basis(&code) {
        Some(words) => {
            let mut cur = 0u64;
            counts[0] += 1;
            for i in 1u64..(1u64 << words.len()) {
                cur ^= words[i.trailing_zeros() as usize];
                counts[cur.count_ones() as usize] += 1;
            }
        }
        None => {
            gf2::for_each_in_span(code.len(), code.basis.rows(), |c| counts[c.weight()] += 1);
        }
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

/// JSON export record for a weight distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub r: usize,
    pub m: usize,
    pub dim: usize,
    pub weights: BTreeMap<usize, u64>,
}

pub fn weight_record(r: usize, m: usize) -> Result<WeightRecord> {
    Ok(WeightRecord {
        r,
        m,
        dim: rm_dim(r, m),
        weights: weight_distribution(r, m)?,
    })
}

/// `⌈m / r⌉ − 1`.
pub fn ax_exponent(r: usize, m: usize) -> usize {
    m.div_ceil(r) - 1
}

/// Smallest 2-adic valuation of a nonzero codeword weight, found by
/// enumerating the whole code, and whether it equals `⌈m/r⌉ − 1`.
pub fn ax_check(r: usize, m: usize) -> Result<(u32, bool)> {
    if r == 0 {
        return Err(Error::InvalidParameters("ax_check needs r >= 1".into()));
    }
    let code = rm_basis(r, m)?;
    if code.dim() > MAX_AX_DIM {
        return Err(Error::SizeGuard {
            what: "code dimension",
            size: code.dim(),
            limit: MAX_AX_DIM,
        });
    }
    // OR of all weights: its trailing zeros are the minimum valuation.
    let mut acc = 0u64;
    match packed_basis(&code) {
        Some(words) => {
            let mut cur = 0u64;
            let total = 1u64 << words.len();
            for i in 1..total {
                cur ^= words[i.trailing_zeros() as usize];
                acc |= cur.count_ones() as u64;
            }
        }
        None => {
            gf2::for_each_in_span(code.len(), code.basis.rows(), |c| acc |= c.weight() as u64);
        }
    }
    let exponent = acc.trailing_zeros();
    Ok((exponent, exponent as usize == ax_exponent(r, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let c = rm_basis(0, 2).unwrap();
        assert_eq!(c.basis().to_nested(), vec![vec![1, 1, 1, 1]]);
        let c = rm_basis(1, 2).unwrap();
        assert_eq!(
            c.basis().to_nested(),
            vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]
        );
        assert_eq!(rm_basis(2, 4).unwrap().dim(), 11);
        assert!(rm_basis(3, 2).is_err());
    }

    #[test]
    fn basis_order() {
        let labels: Vec<String> = rm_monomials(2, 3).iter().map(Monomial::label).collect();
        assert_eq!(labels, ["1", "v1", "v2", "v3", "v1v2", "v1v3", "v2v3"]);
    }

    #[test]
    fn dims_and_ranks() {
        for m in 0..=6 {
            for r in 0..=m {
                let c = rm_basis(r, m).unwrap();
                assert_eq!(c.dim(), rm_dim(r, m));
                assert_eq!(c.basis().rank(), c.dim());
                assert!(c.basis().row(0).weight() == 1 << m);
            }
        }
    }

    #[test]
    fn punctured_shapes() {
        assert_eq!(puncture(&rm_basis(0, 2).unwrap()).unwrap().to_nested(), vec![vec![1, 1, 1]]);
        let p = puncture(&rm_basis(1, 4).unwrap()).unwrap();
        assert_eq!((p.n_rows(), p.n_cols(), p.rank()), (5, 15, 5));
        let p = puncture(&rm_basis(1, 5).unwrap()).unwrap();
        assert_eq!((p.n_rows(), p.n_cols()), (6, 31));
        assert!(puncture(&rm_basis(2, 2).unwrap()).is_err());
    }

    #[test]
    fn css_shapes() {
        let c = css_generators(1, 4).unwrap();
        assert_eq!((c.n, c.gx.n_rows(), c.gz.n_rows()), (15, 4, 10));
        assert_eq!(css_generators(1, 5).unwrap().n, 31);
        let c = css_generators(0, 1).unwrap();
        assert_eq!((c.n, c.gx.n_rows(), c.gz.n_rows()), (1, 0, 0));
    }

    #[test]
    fn known_distributions() {
        let d = weight_distribution(0, 2).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 1), (4, 1)]));
        let d = weight_distribution(1, 2).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 1), (2, 6), (4, 1)]));
    }

    #[test]
    fn ax_small() {
        assert_eq!(ax_check(1, 4).unwrap(), (3, true));
        assert_eq!(ax_check(2, 4).unwrap(), (1, true));
        assert_eq!(ax_check(1, 2).unwrap(), (1, true));
        assert!(ax_check(0, 3).is_err());
    }
}
