//! Boolean functions `Z_2^n → Z_2^k` given by truth tables.
//!
//! "Linear" here always means affine over GF(2), `f(x) = A x ⊕ b`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BinMatrix, BitVec, Gf2Solution};

/// Largest input width materialized as a table.
pub const MAX_INPUTS: usize = 24;

/// Row `x` holds `f(x)`; input bit `k` is bit `k` of the row index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    n_in: usize,
    n_out: usize,
    rows: Vec<BitVec>,
}

impl TruthTable {
    pub fn new(n_in: usize, n_out: usize, rows: Vec<BitVec>) -> Result<Self> {
        if n_in > MAX_INPUTS {
            return Err(Error::SizeGuard {
                what: "truth table inputs",
                size: n_in,
                limit: MAX_INPUTS,
            });
        }
        if rows.len() != 1 << n_in {
            return Err(Error::dims("truth table rows", 1 << n_in, rows.len()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n_out) {
            return Err(Error::dims("truth table output", n_out, bad.len()));
        }
        Ok(Self { n_in, n_out, rows })
    }

    pub fn from_fn(n_in: usize, n_out: usize, mut f: impl FnMut(&BitVec) -> BitVec) -> Result<Self> {
        if n_in > MAX_INPUTS {
            return Err(Error::SizeGuard {
                what: "truth table inputs",
                size: n_in,
                limit: MAX_INPUTS,
            });
        }
        let rows = (0..1u64 << n_in).map(|x| f(&BitVec::from_u64(n_in, x))).collect();
        Self::new(n_in, n_out, rows)
    }

    /// Single-output table from a predicate on the input index.
    pub fn from_bits(n_in: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        Self::from_fn(n_in, 1, |x| BitVec::from_bools(&[f(x.to_u64())]))
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn eval(&self, x: &BitVec) -> Result<&BitVec> {
        if x.len() != self.n_in {
            return Err(Error::dims("truth table input", self.n_in, x.len()));
        }
        Ok(&self.rows[index_of(x)])
    }

    #[inline]
    pub fn at(&self, index: usize) -> &BitVec {
        &self.rows[index]
    }

    /// Restriction to one output coordinate.
    pub fn output(&self, k: usize) -> Result<TruthTable> {
        if k >= self.n_out {
            return Err(Error::dims("output index", self.n_out, k));
        }
        let rows = self.rows.iter().map(|r| BitVec::from_bools(&[r.get(k)])).collect();
        Self::new(self.n_in, 1, rows)
    }

    /// CSV with columns `i0..`, `o0..`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..self.n_in)
            .map(|k| format!("i{k}"))
            .chain((0..self.n_out).map(|k| format!("o{k}")))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (x, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = (0..self.n_in)
                .map(|k| ((x >> k) & 1).to_string())
                .chain(row.iter().map(|b| u8::from(b).to_string()))
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

fn index_of(x: &BitVec) -> usize {
    x.ones_iter().fold(0usize, |acc, k| acc | (1 << k))
}

/// `x ↦ A x ⊕ b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: BinMatrix,
    pub b: BitVec,
}

impl AffineMap {
    pub fn new(a: BinMatrix, b: BitVec) -> Result<Self> {
        if b.len() != a.n_rows() {
            return Err(Error::dims("affine offset", a.n_rows(), b.len()));
        }
        Ok(Self { a, b })
    }

    pub fn linear(a: BinMatrix) -> Self {
        let b = BitVec::zeros(a.n_rows());
        Self { a, b }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(BinMatrix::identity(n))
    }

    pub fn n_in(&self) -> usize {
        self.a.n_cols()
    }

    pub fn n_out(&self) -> usize {
        self.a.n_rows()
    }

    pub fn apply(&self, x: &BitVec) -> Result<BitVec> {
        Ok(self.a.mul_vec(x)?.xor(&self.b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Linearity {
    Linear { a: BinMatrix, b: BitVec },
    /// `f(0) ⊕ f(p) ⊕ f(q) ⊕ f(p⊕q) ≠ 0` on output coordinate `output`.
    Nonlinear { p: BitVec, q: BitVec, output: usize },
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::Linear { .. })
    }
}

pub fn is_linear(tt: &TruthTable) -> Linearity {
    let n = tt.n_in;
    let b = tt.rows[0].clone();
    let cols: Vec<BitVec> = (0..n).map(|k| tt.rows[1 << k].xor(&b)).collect();
    let a = BinMatrix::new(n, (0..tt.n_out).map(|o| BitVec::from_fn(n, |k| cols[k].get(o))).collect())
        .expect("column lengths agree");

    let predict = |x: usize| -> BitVec {
        let mut v = b.clone();
        for k in 0..n {
            if (x >> k) & 1 == 1 {
                v.xor_assign(&cols[k]);
            }
        }
        v
    };
    for x in 0..tt.rows.len() {
        if x.count_ones() < 2 {
            continue;
        }
        if tt.rows[x] != predict(x) {
            // Walk x bit by bit; the first prefix that breaks gives the witness.
            let mut prefix = 0usize;
            for k in 0..n {
                if (x >> k) & 1 == 0 {
                    continue;
                }
                let next = prefix | (1 << k);
                let diff = tt.rows[next].xor(&predict(next));
                if let Some(output) = diff.first_one() {
                    return Linearity::Nonlinear {
                        p: BitVec::from_u64(n, prefix as u64),
                        q: BitVec::unit(n, k),
                        output,
                    };
                }
                prefix = next;
            }
            unreachable!("a failing input has a failing prefix");
        }
    }
    Linearity::Linear { a, b }
}

/// `f(0) ⊕ f(p) ⊕ f(q) ⊕ f(p⊕q)`.
pub fn four_point(tt: &TruthTable, p: &BitVec, q: &BitVec) -> Result<BitVec> {
    let zero = BitVec::zeros(tt.n_in);
    let mut acc = tt.eval(&zero)?.clone();
    acc.xor_assign(tt.eval(p)?);
    acc.xor_assign(tt.eval(q)?);
    acc.xor_assign(tt.eval(&p.xor(q))?);
    Ok(acc)
}

/// The three maps of one direction of the equivalence,
/// `g(x) = L3( f(L1 x), L2(L1 x) )`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivMaps {
    pub l1: AffineMap,
    pub l2: AffineMap,
    pub l3: AffineMap,
}

/// Checks `g = L3 (f, L2) L1` on every input.
pub fn check_one_direction(f: &TruthTable, g: &TruthTable, maps: &EquivMaps) -> Result<bool> {
    let EquivMaps { l1, l2, l3 } = maps;
    if l1.n_in() != g.n_in {
        return Err(Error::dims("L1 input", g.n_in, l1.n_in()));
    }
    if l1.n_out() != f.n_in {
        return Err(Error::dims("L1 output", f.n_in, l1.n_out()));
    }
    if l2.n_in() != f.n_in {
        return Err(Error::dims("L2 input", f.n_in, l2.n_in()));
    }
    if l3.n_in() != f.n_out + l2.n_out() {
        return Err(Error::dims("L3 input", f.n_out + l2.n_out(), l3.n_in()));
    }
    if l3.n_out() != g.n_out {
        return Err(Error::dims("L3 output", g.n_out, l3.n_out()));
    }
    for x in 0..g.rows.len() {
        let xv = BitVec::from_u64(g.n_in, x as u64);
        let y = l1.apply(&xv)?;
        let joined = f.eval(&y)?.concat(&l2.apply(&y)?);
        if l3.apply(&joined)? != g.rows[x] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both directions of the equivalence modulo linear functions.
pub fn check_equiv_mod_linear(
    f: &TruthTable,
    g: &TruthTable,
    forward: &EquivMaps,
    reverse: &EquivMaps,
) -> Result<bool> {
    Ok(check_one_direction(f, g, forward)? && check_one_direction(g, f, reverse)?)
}

/// Largest search space accepted by [`derive_equiv_maps`].
pub const MAX_MAP_SEARCH_BITS: usize = 20;

/// Searches for `L1` (affine) with `L2 = id` and solves for an affine `L3`
/// so that `g = L3 (f, L2) L1`.
pub fn derive_equiv_maps(f: &TruthTable, g: &TruthTable) -> Result<Option<EquivMaps>> {
    let (n_g, n_f) = (g.n_in, f.n_in);
    let bits = n_f * (n_g + 1);
    if bits > MAX_MAP_SEARCH_BITS {
        return Err(Error::SizeGuard {
            what: "affine map search bits",
            size: bits,
            limit: MAX_MAP_SEARCH_BITS,
        });
    }
    let inputs: Vec<BitVec> = (0..1u64 << n_g).map(|x| BitVec::from_u64(n_g, x)).collect();
    let l2 = AffineMap::identity(n_f);
    let width = f.n_out + n_f;

    for code in 0u64..(1u64 << bits) {
        let word = BitVec::from_u64(bits, code);
        let rows = (0..n_f)
            .map(|r| BitVec::from_fn(n_g, |c| word.get(r * (n_g + 1) + c)))
            .collect();
        let b = BitVec::from_fn(n_f, |r| word.get(r * (n_g + 1) + n_g));
        let l1 = AffineMap::new(BinMatrix::new(n_g, rows)?, b)?;

        // Design matrix: one row (f(L1x), L1x, 1) per input.
        let mut design = Vec::with_capacity(inputs.len());
        for x in &inputs {
            let y = l1.apply(x)?;
            let joined = f.eval(&y)?.concat(&y);
            design.push(joined.concat(&BitVec::ones(1)));
        }
        let design = BinMatrix::new(width + 1, design)?;
        let mut l3_rows = Vec::with_capacity(g.n_out);
        let mut offset = BitVec::zeros(g.n_out);
        let mut ok = true;
        for o in 0..g.n_out {
            let target = BitVec::from_fn(inputs.len(), |x| g.rows[x].get(o));
            match gf2::solve_gf2(&design, &target)? {
                Gf2Solution::Solution(sol) => {
                    l3_rows.push(BitVec::from_fn(width, |k| sol.get(k)));
                    offset.set(o, sol.get(width));
                }
                Gf2Solution::Infeasible(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let l3 = AffineMap::new(BinMatrix::new(width, l3_rows)?, offset)?;
            let maps = EquivMaps { l1, l2: l2.clone(), l3 };
            debug_assert!(check_one_direction(f, g, &maps)?);
            return Ok(Some(maps));
        }
    }
    Ok(None)
}

/// Footnote-style AND extraction from a single-output nonlinear function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndExtraction {
    pub a: BitVec,
    pub b: BitVec,
    pub c: BitVec,
    pub g: TruthTable,
}

pub fn and_from_nonlinear(tt: &TruthTable) -> Result<AndExtraction> {
    if tt.n_out != 1 {
        return Err(Error::dims("and_from_nonlinear outputs", 1, tt.n_out));
    }
    let (a, b) = match is_linear(tt) {
        Linearity::Linear { .. } => return Err(Error::LinearFunction),
        Linearity::Nonlinear { p, q, .. } => (p, q),
    };
    let c = BitVec::zeros(tt.n_in);
    let f = |x: &BitVec| tt.eval(x).map(|v| v.get(0));
    let mut g_rows = Vec::with_capacity(4);
    for x in 0..4u8 {
        let ra = if x & 1 == 1 { a.clone() } else { BitVec::zeros(tt.n_in) };
        let sb = if x & 2 == 2 { b.clone() } else { BitVec::zeros(tt.n_in) };
        let v = f(&c.xor(&ra).xor(&sb))? ^ f(&c.xor(&ra))? ^ f(&c.xor(&sb))? ^ f(&c)?;
        g_rows.push(BitVec::from_bools(&[v]));
    }
    let g = TruthTable::new(2, 1, g_rows)?;
    let and = TruthTable::from_bits(2, |x| x == 3)?;
    if g != and {
        return Err(Error::InvalidParameters("extracted function is not AND".into()));
    }
    Ok(AndExtraction { a, b, c, g })
}

/// `(t, c1, c2) ↦ (t ⊕ c1 c2, c1, c2)`.
pub fn toffoli_table() -> TruthTable {
    TruthTable::from_fn(3, 3, |x| {
        let (t, c1, c2) = (x.get(0), x.get(1), x.get(2));
        BitVec::from_bools(&[t ^ (c1 & c2), c1, c2])
    })
    .expect("fixed shape")
}

/// The maps printed alongside the GHZ-4 example, forward direction.
pub fn toffoli_forward_maps() -> EquivMaps {
    let m = |cols: usize, rows: &[&[u8]]| BinMatrix::from_bits(cols, rows).expect("fixed matrix");
    let v = |bits: &[u8]| BitVec::from_bits(bits).expect("fixed vector");
    EquivMaps {
        l1: AffineMap::new(m(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]), v(&[0, 1, 1])).unwrap(),
        l2: AffineMap::new(m(3, &[&[1, 1, 0], &[1, 0, 1], &[1, 0, 0]]), v(&[1, 1, 0])).unwrap(),
        l3: AffineMap::linear(m(4, &[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1_table() -> TruthTable {
        TruthTable::from_bits(3, |x| x == 0 || x == 7).unwrap()
    }

    fn and2() -> TruthTable {
        TruthTable::from_bits(2, |x| x == 3).unwrap()
    }

    #[test]
    fn identity_is_linear() {
        let id = TruthTable::from_fn(3, 3, |x| x.clone()).unwrap();
        assert_eq!(
            is_linear(&id),
            Linearity::Linear {
                a: BinMatrix::identity(3),
                b: BitVec::zeros(3)
            }
        );
    }

    #[test]
    fn and_witness() {
        match is_linear(&and2()) {
            Linearity::Nonlinear { p, q, output } => {
                assert_eq!(p, BitVec::parse("10").unwrap());
                assert_eq!(q, BitVec::parse("01").unwrap());
                assert_eq!(output, 0);
            }
            other => panic!("expected nonlinear, got {other:?}"),
        }
        assert!(!is_linear(&example1_table()).is_linear());
    }

    #[test]
    fn forward_toffoli_maps() {
        assert!(check_one_direction(&example1_table(), &toffoli_table(), &toffoli_forward_maps()).unwrap());
        let mut broken = toffoli_forward_maps();
        broken.l3.a.set(0, 0, false);
        assert!(!check_one_direction(&example1_table(), &toffoli_table(), &broken).unwrap());
    }

    #[test]
    fn identity_equivalence() {
        let f = example1_table();
        let maps = EquivMaps {
            l1: AffineMap::identity(3),
            l2: AffineMap::linear(BinMatrix::zeros(0, 3)),
            l3: AffineMap::identity(1),
        };
        assert!(check_equiv_mod_linear(&f, &f, &maps, &maps).unwrap());
    }

    #[test]
    fn and_extraction() {
        let e = and_from_nonlinear(&and2()).unwrap();
        assert_eq!(e.a, BitVec::parse("10").unwrap());
        assert_eq!(e.b, BitVec::parse("01").unwrap());
        assert_eq!(e.c, BitVec::parse("00").unwrap());
        assert_eq!(e.g, and2());
        assert!(and_from_nonlinear(&example1_table()).is_ok());
        let parity = TruthTable::from_bits(3, |x| x.count_ones() % 2 == 1).unwrap();
        assert_eq!(and_from_nonlinear(&parity), Err(Error::LinearFunction));
    }

    #[test]
    fn csv_layout() {
        let csv = and2().to_csv();
        assert_eq!(csv, "i0,i1,o0\n0,0,0\n1,0,0\n0,1,0\n1,1,1\n");
    }
}
