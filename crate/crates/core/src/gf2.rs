//! Dense GF(2) vectors and matrices.
//!
//! Vectors are packed into `u64` words, coordinate `i` living in word
//! `i / 64` at bit `i % 64`. Coordinate 0 is always written first when a
//! vector is serialized, so `BitVec::parse("1000")` sets coordinate 0.
//!
//! Besides the usual XOR/AND plumbing this module provides the pieces the
//! rest of the crate leans on: integer and mod-2 matrix application, an
//! incremental Gaussian elimination that produces parity-contradiction
//! certificates, and Gray-code enumeration of row spans.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            words: vec![u64::MAX; word_count(len)],
            len,
        };
        v.mask_tail();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Bit `j` of `value` becomes coordinate `j`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.mask_tail();
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i])
    }

    /// Builds a vector from 0/1 values; anything else is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parse(format!("binary coordinate expected, got {bad}")));
        }
        Ok(Self::from_fn(bits.len(), |i| bits[i] == 1))
    }

    /// Parses a string of `0`/`1` characters (whitespace and `,` ignored).
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place addition over GF(2).
    ///
    /// # Panics
    /// Panics if the lengths differ.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[inline]
    pub fn and_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in and");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    /// `|self · other|` without allocating.
    #[inline]
    pub fn and_weight(&self, other: &Self) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|a · b · c|` without allocating.
    #[inline]
    pub fn and3_weight(a: &Self, b: &Self, c: &Self) -> usize {
        debug_assert!(a.len == b.len && b.len == c.len);
        a.words
            .iter()
            .zip(&b.words)
            .zip(&c.words)
            .map(|((x, y), z)| (x & y & z).count_ones() as usize)
            .sum()
    }

    /// Mod-2 inner product.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        self.and_weight(other) % 2 == 1
    }

    /// Indices of the 1-coordinates, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Coordinates read as a little-endian integer. Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "vector too long for u64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Drops the coordinates listed in `removed` (must be sorted, unique).
    pub fn delete_coords(&self, removed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.len).filter(|i| removed.binary_search(i).is_err()).collect();
        Self::from_fn(keep.len(), |k| self.get(keep[k]))
    }

    /// Restriction to the coordinates where `support` is 1, in ascending order.
    pub fn restrict(&self, support: &Self) -> Self {
        let idx: Vec<usize> = support.ones_iter().collect();
        Self::from_fn(idx.len(), |k| self.get(idx[k]))
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        BitVec::from_bits(&bits).map_err(serde::de::Error::custom)
    }
}

/// Number of 1-coordinates.
pub fn weight(v: &BitVec) -> usize {
    v.weight()
}

/// Coordinate-wise product `[ab]_j = a_j b_j`.
pub fn coord_product(a: &BitVec, b: &BitVec) -> Result<BitVec> {
    if a.len() != b.len() {
        return Err(Error::dims("coord_product", a.len(), b.len()));
    }
    Ok(a.and(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatMode {
    /// Row dot products reduced mod 2.
    Mod2,
    /// Row dot products over the integers, i.e. `|row · v|`.
    Integer,
}

/// A binary matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n_cols: usize,
    rows: Vec<BitVec>,
}

impl BinMatrix {
    pub fn new(n_cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::dims("BinMatrix row", n_cols, bad.len()));
        }
        Ok(Self { n_cols, rows })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: vec![BitVec::zeros(n_cols); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds from nested 0/1 slices; `n_cols` disambiguates empty input.
    pub fn from_bits(n_cols: usize, rows: &[&[u8]]) -> Result<Self> {
        let rows = rows.iter().map(|r| BitVec::from_bits(r)).collect::<Result<Vec<_>>>()?;
        Self::new(n_cols, rows)
    }

    pub fn from_nested(n_cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let rows = rows.iter().map(|r| BitVec::from_bits(r)).collect::<Result<Vec<_>>>()?;
        Self::new(n_cols, rows)
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[inline]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::dims("BinMatrix::push_row", self.n_cols, row.len()));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_iter() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_fn(self.n_rows(), |r| self.rows[r].get(c))
    }

    /// `M v mod 2`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.n_cols {
            return Err(Error::dims("matrix-vector product", self.n_cols, v.len()));
        }
        Ok(BitVec::from_fn(self.n_rows(), |r| self.rows[r].dot(v)))
    }

    /// `A B mod 2`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows() {
            return Err(Error::dims("matrix product", self.n_cols, other.n_rows()));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.n_cols);
                for k in row.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            n_cols: other.n_cols,
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        let mut basis = SpanBasis::new(self.n_cols);
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    pub fn to_nested(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(BitVec::to_bits).collect()
    }

    /// Selects the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVec::from_fn(cols.len(), |k| r.get(cols[k])))
            .collect();
        Self {
            n_cols: cols.len(),
            rows,
        }
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{} [", self.n_rows(), self.n_cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

// Serialized as a list of 0/1 rows; an empty list has zero columns.
impl Serialize for BinMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        let n_cols = rows.first().map_or(0, Vec::len);
        BinMatrix::from_nested(n_cols, &rows).map_err(serde::de::Error::custom)
    }
}

/// Applies `m` to `v`, either mod 2 or as integer weights `|row · v|`.
pub fn mat_apply(m: &BinMatrix, v: &BitVec, mode: MatMode) -> Result<Vec<u64>> {
    if v.len() != m.n_cols() {
        return Err(Error::dims("mat_apply", m.n_cols(), v.len()));
    }
    Ok(m
        .rows()
        .iter()
        .map(|row| {
            let w = row.and_weight(v) as u64;
            match mode {
                MatMode::Mod2 => w & 1,
                MatMode::Integer => w,
            }
        })
        .collect())
}

/// Membership structure for a row span: rows kept in echelon form keyed by
/// their lowest set coordinate.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    len: usize,
    pivots: Vec<(usize, BitVec)>,
}

impl SpanBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(len: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut b = Self::new(len);
        for r in rows {
            b.insert(r.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: BitVec) -> BitVec {
        for (col, row) in &self.pivots {
            if v.get(*col) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Returns `true` if `v` was independent of the rows seen so far.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in span basis");
        let v = self.reduce(v);
        match v.first_one() {
            Some(col) => {
                self.pivots.push((col, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.len && self.reduce(v.clone()).is_zero()
    }
}

/// Outcome of [`solve_gf2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    /// `x` with `A x = b`.
    Solution(BitVec),
    /// `y` over the rows of `A` with `yᵀA = 0` and `yᵀb = 1`.
    Infeasible(BitVec),
}

/// Result of feeding one row to an [`Elimination`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    /// The row was independent and became a pivot.
    Pivot,
    /// The row is a combination of earlier rows. `relation` lists the
    /// original row indices (this row included) whose coefficient vectors
    /// sum to zero; `parity` is the sum of their right-hand sides.
    Dependent { relation: Vec<usize>, parity: bool },
}

struct Pivot {
    col: usize,
    row: BitVec,
    rhs: bool,
    // combination of independent-row slots producing `row`
    combo: BitVec,
}

/// Incremental Gaussian elimination of an augmented system `[A | b]` that
/// records, for every dependent row, the parity relation it closes.
pub struct Elimination {
    n_cols: usize,
    pivots: Vec<Pivot>,
    slots: Vec<usize>,
}

impl Elimination {
    pub fn new(n_cols: usize) -> Self {
        Self {
            n_cols,
            pivots: Vec::new(),
            slots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Feeds row `index` (an identifier of the caller's choosing).
    pub fn insert(&mut self, index: usize, coeffs: &BitVec, rhs: bool) -> RowStatus {
        assert_eq!(coeffs.len(), self.n_cols, "length mismatch in elimination");
        let mut v = coeffs.clone();
        let mut parity = rhs;
        let mut combo = BitVec::zeros(self.n_cols);
        for p in &self.pivots {
            if v.get(p.col) {
                v.xor_assign(&p.row);
                parity ^= p.rhs;
                combo.xor_assign(&p.combo);
            }
        }
        match v.first_one() {
            Some(col) => {
                let slot = self.slots.len();
                self.slots.push(index);
                combo.set(slot, true);
                self.pivots.push(Pivot {
                    col,
                    row: v,
                    rhs: parity,
                    combo,
                });
                RowStatus::Pivot
            }
            None => {
                let mut relation: Vec<usize> = combo.ones_iter().map(|s| self.slots[s]).collect();
                relation.push(index);
                relation.sort_unstable();
                RowStatus::Dependent { relation, parity }
            }
        }
    }

    /// A solution of the consistent system seen so far (free variables 0).
    pub fn back_substitute(&self) -> BitVec {
        let mut x = BitVec::zeros(self.n_cols);
        for p in self.pivots.iter().rev() {
            let mut val = p.rhs;
            for c in p.row.ones_iter() {
                if c != p.col && x.get(c) {
                    val = !val;
                }
            }
            x.set(p.col, val);
        }
        x
    }
}

/// Solves `A x = b` over GF(2), or returns a parity-contradiction certificate.
pub fn solve_gf2(a: &BinMatrix, b: &BitVec) -> Result<Gf2Solution> {
    if b.len() != a.n_rows() {
        return Err(Error::dims("solve_gf2 right-hand side", a.n_rows(), b.len()));
    }
    let mut elim = Elimination::new(a.n_cols());
    for (i, row) in a.rows().iter().enumerate() {
        if let RowStatus::Dependent { relation, parity: true } = elim.insert(i, row, b.get(i)) {
            let mut y = BitVec::zeros(a.n_rows());
            for r in relation {
                y.set(r, true);
            }
            return Ok(Gf2Solution::Infeasible(y));
        }
    }
    Ok(Gf2Solution::Solution(elim.back_substitute()))
}

/// Gray-code enumeration of a row span: every vector exactly once, starting
/// from zero, consecutive items differing by one basis vector.
pub struct SpanIter {
    basis: Vec<BitVec>,
    current: BitVec,
    index: u64,
    total: u64,
}

impl SpanIter {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

impl Iterator for SpanIter {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.index >= self.total {
            return None;
        }
        let out = self.current.clone();
        self.index += 1;
        if self.index < self.total {
            let k = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[k]);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter {}

/// The independent rows of `gens`, in their original order.
pub fn independent_rows(gens: &BinMatrix) -> Vec<BitVec> {
    let mut basis = SpanBasis::new(gens.n_cols());
    gens.rows()
        .iter()
        .filter(|r| basis.insert((*r).clone()))
        .cloned()
        .collect()
}

/// Enumerates the row span of `generators`.
///
/// # Panics
/// Panics if the rank is 64 or more.
pub fn enumerate_span(generators: &BinMatrix) -> SpanIter {
    let basis = independent_rows(generators);
    assert!(basis.len() < 64, "span of rank {} cannot be enumerated", basis.len());
    SpanIter {
        total: 1u64 << basis.len(),
        basis,
        current: BitVec::zeros(generators.n_cols()),
        index: 0,
    }
}

/// Calls `f` on every vector of the span of `basis` (assumed independent)
/// without allocating per element.
pub fn for_each_in_span(len: usize, basis: &[BitVec], mut f: impl FnMut(&BitVec)) {
    assert!(basis.len() < 64, "span too large to enumerate");
    let mut cur = BitVec::zeros(len);
    let total = 1u64 << basis.len();
    f(&cur);
    for i in 1..total {
        cur.xor_assign(&basis[i.trailing_zeros() as usize]);
        f(&cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&bv("0000")), 0);
        assert_eq!(weight(&bv("1111")), 4);
        for m in 0..8 {
            assert_eq!(weight(&BitVec::ones(1 << m)), 1 << m);
        }
    }

    #[test]
    fn coord_product_examples() {
        assert_eq!(coord_product(&bv("1100"), &bv("1010")).unwrap(), bv("1000"));
        let v = bv("1011001");
        assert_eq!(coord_product(&v, &v).unwrap(), v);
        assert_eq!(coord_product(&v, &BitVec::ones(7)).unwrap(), v);
        assert!(matches!(
            coord_product(&bv("11"), &bv("111")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mat_apply_examples() {
        let q = BinMatrix::from_bits(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(mat_apply(&q, &bv("111"), MatMode::Mod2).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(mat_apply(&q, &bv("000"), MatMode::Integer).unwrap(), vec![0; 4]);
        let z = BinMatrix::from_bits(4, &[&[1, 1, 1, 1]]).unwrap();
        assert_eq!(mat_apply(&z, &bv("1001"), MatMode::Integer).unwrap(), vec![2]);
        assert!(mat_apply(&z, &bv("10"), MatMode::Mod2).is_err());
    }

    #[test]
    fn solve_identity_and_zero_row() {
        let b = bv("1011");
        assert_eq!(
            solve_gf2(&BinMatrix::identity(4), &b).unwrap(),
            Gf2Solution::Solution(b.clone())
        );
        let zero = BinMatrix::zeros(1, 3);
        assert_eq!(
            solve_gf2(&zero, &bv("1")).unwrap(),
            Gf2Solution::Infeasible(bv("1"))
        );
        assert!(solve_gf2(&zero, &bv("10")).is_err());
    }

    #[test]
    fn span_of_even_weight_words() {
        let g = BinMatrix::from_bits(4, &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]).unwrap();
        let all: Vec<BitVec> = enumerate_span(&g).collect();
        assert_eq!(all.len(), 8);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert!(all.iter().all(|v| v.weight() % 2 == 0));
        assert_eq!(enumerate_span(&BinMatrix::zeros(0, 4)).collect::<Vec<_>>(), vec![bv("0000")]);
    }

    #[test]
    fn dependent_generators_enumerate_once() {
        let g = BinMatrix::from_bits(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(enumerate_span(&g).count(), 4);
    }

    #[test]
    fn delete_and_restrict() {
        let v = bv("101101");
        assert_eq!(v.delete_coords(&[0]), bv("01101"));
        assert_eq!(v.restrict(&bv("110011")), bv("1001"));
        assert_eq!(bv("10").concat(&bv("011")), bv("10011"));
    }

    #[test]
    fn transpose_and_products() {
        let a = BinMatrix::from_bits(3, &[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        let t = a.transpose();
        assert_eq!(t.n_rows(), 3);
        assert_eq!(t.row(2), &bv("11"));
        let p = a.mul(&t).unwrap();
        assert_eq!(p.to_nested(), vec![vec![0, 1], vec![1, 0]]);
    }
}
