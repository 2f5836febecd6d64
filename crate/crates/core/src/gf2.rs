//! Linear algebra over the two-element field.
//!
//! Vectors live in `Z₂^dim` with `dim ≤ 8` and are packed into a byte:
//! coordinate `i` (1-based, so `e₁` is coordinate 1) is bit `i - 1`.
//! Orderings and serialization are coordinate-first, so `e₁` is the most
//! significant position when a vector is read as a 0/1 list.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Largest supported vector dimension.
pub const MAX_DIM: usize = 8;

/// Largest dimension for which [`enumerate_gl`] is allowed.
pub const MAX_GL_DIM: usize = 4;

fn mask(dim: usize) -> u8 {
    if dim >= 8 {
        0xff
    } else {
        (1u8 << dim) - 1
    }
}

/// Element of `Z₂^dim`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: u8,
    dim: u8,
}

impl BitVector {
    pub fn new(bits: u8, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(invalid(format!("vector dimension {dim} outside 1..={MAX_DIM}")));
        }
        if bits & !mask(dim) != 0 {
            return Err(invalid(format!("bits {bits:#b} do not fit in dimension {dim}")));
        }
        Ok(Self { bits, dim: dim as u8 })
    }

    pub(crate) fn from_bits(bits: u8, dim: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim) && bits & !mask(dim) == 0);
        Self { bits, dim: dim as u8 }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_bits(0, dim)
    }

    /// The canonical basis vector `e_i`, with `i` counted from 1.
    pub fn unit(i: usize, dim: usize) -> Self {
        assert!(i >= 1 && i <= dim, "e_{i} does not exist in dimension {dim}");
        Self::from_bits(1 << (i - 1), dim)
    }

    /// Builds a vector from a 0/1 list, coordinate 1 first.
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        let mut bits = 0u8;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(invalid(format!("coordinate {other} is not 0 or 1"))),
            }
        }
        Self::new(bits, coords.len())
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.dim()).map(|i| (self.bits >> i) & 1).collect()
    }

    /// Coordinate `i`, counted from 0.
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// All `2^dim` vectors, in increasing bit order.
    pub fn all(dim: usize) -> impl Iterator<Item = BitVector> {
        (0..(1u16 << dim)).map(move |b| BitVector::from_bits(b as u8, dim))
    }
}

impl Add for BitVector {
    type Output = BitVector;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim, "adding vectors of different dimension");
        Self { bits: self.bits ^ rhs.bits, dim: self.dim }
    }
}

impl AddAssign for BitVector {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Ord for BitVector {
    /// Dimension first, then lexicographic with coordinate 1 first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else if other.bits & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        f.write_str(")")
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<u8>::deserialize(d)?;
        BitVector::from_coords(&coords).map_err(D::Error::custom)
    }
}

/// Rank of a list of vectors of a common dimension.
pub fn rank(vectors: &[BitVector]) -> usize {
    let mut s = Subspace::zero(vectors.first().map_or(1, |v| v.dim()));
    for v in vectors {
        s.insert(*v);
    }
    s.dim()
}

/// Linear map `Z₂^ncols → Z₂^nrows`, stored by the images of the basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    nrows: u8,
    ncols: u8,
    cols: [u8; MAX_DIM],
}

impl BitMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&nrows) && (1..=MAX_DIM).contains(&ncols));
        Self { nrows: nrows as u8, ncols: ncols as u8, cols: [0; MAX_DIM] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.cols[j] = 1 << j;
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`, i.e. the map `e_{j+1} ↦ columns[j]`.
    pub fn from_columns(columns: &[BitVector]) -> Result<Self> {
        let first = columns.first().ok_or_else(|| invalid("matrix needs at least one column"))?;
        if columns.len() > MAX_DIM {
            return Err(invalid("too many columns"));
        }
        let mut m = Self::zero(first.dim(), columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != first.dim() {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: c.dim() });
            }
            m.cols[j] = c.bits;
        }
        Ok(m)
    }

    /// Matrix from 0/1 rows, as it would be printed.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if nrows == 0 || ncols == 0 || nrows > MAX_DIM || ncols > MAX_DIM {
            return Err(invalid("matrix shape out of range"));
        }
        let mut m = Self::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m.cols[j] |= 1 << i,
                    _ => return Err(invalid("matrix entries must be 0 or 1")),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| (self.cols[j] >> i) & 1).collect())
            .collect()
    }

    pub fn nrows(&self) -> usize {
        self.nrows as usize
    }

    pub fn ncols(&self) -> usize {
        self.ncols as usize
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bits(self.cols[j], self.nrows())
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, v: BitVector) -> BitVector {
        debug_assert_eq!(v.dim(), self.ncols());
        let mut out = 0u8;
        for j in 0..self.ncols() {
            if v.get(j) {
                out ^= self.cols[j];
            }
        }
        BitVector::from_bits(out, self.nrows())
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.ncols, other.nrows);
        let mut m = Self::zero(self.nrows(), other.ncols());
        for j in 0..other.ncols() {
            m.cols[j] = self.apply(other.column(j)).bits;
        }
        m
    }

    pub fn plus(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert!(self.nrows == other.nrows && self.ncols == other.ncols);
        let mut m = *self;
        for j in 0..self.ncols() {
            m.cols[j] ^= other.cols[j];
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank(&self.columns())
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.nrows())
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.nrows();
        let mut inv = Self::zero(n, n);
        for j in 0..n {
            let x = self.solve(BitVector::unit(j + 1, n))?;
            inv.cols[j] = x.bits;
        }
        Some(inv)
    }

    /// Some `x` with `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: BitVector) -> Option<BitVector> {
        debug_assert_eq!(b.dim(), self.nrows());
        // one equation per row: bits 0..ncols are coefficients, bit ncols the right-hand side
        let n = self.ncols();
        let eqs: Vec<u16> = (0..self.nrows())
            .map(|i| {
                let mut e = 0u16;
                for j in 0..n {
                    e |= (((self.cols[j] >> i) & 1) as u16) << j;
                }
                e | ((b.get(i) as u16) << n)
            })
            .collect();
        solve_system(eqs, n).map(|bits| BitVector::from_bits(bits, n))
    }

    /// The linear map sending `sources[i] ↦ targets[i]`, provided the sources span
    /// their space and the assignment is consistent.
    pub fn from_images(sources: &[BitVector], targets: &[BitVector]) -> Option<BitMatrix> {
        if sources.is_empty() || sources.len() != targets.len() {
            return None;
        }
        let (n, m) = (sources[0].dim(), targets[0].dim());
        let mut basis = Subspace::zero(n);
        let mut chosen = Vec::new();
        for (i, s) in sources.iter().enumerate() {
            if basis.insert(*s) {
                chosen.push(i);
            }
        }
        if basis.dim() != n {
            return None;
        }
        let src = BitMatrix::from_columns(&chosen.iter().map(|&i| sources[i]).collect::<Vec<_>>()).ok()?;
        let dst = BitMatrix::from_columns(&chosen.iter().map(|&i| targets[i]).collect::<Vec<_>>()).ok()?;
        let map = dst.compose(&src.inverse()?);
        debug_assert_eq!(map.nrows(), m);
        sources.iter().zip(targets).all(|(s, t)| map.apply(*s) == *t).then_some(map)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Gaussian elimination on packed equations; returns the solution bits.
fn solve_system(mut eqs: Vec<u16>, nvars: usize) -> Option<u8> {
    let rhs = 1u16 << nvars;
    let mut pivots: Vec<(usize, u16)> = Vec::new();
    for e in eqs.iter_mut() {
        for &(p, row) in &pivots {
            if (*e >> p) & 1 == 1 {
                *e ^= row;
            }
        }
        let coeffs = *e & (rhs - 1);
        if coeffs == 0 {
            if *e & rhs != 0 {
                return None;
            }
            continue;
        }
        let p = coeffs.trailing_zeros() as usize;
        for (_, row) in pivots.iter_mut() {
            if (*row >> p) & 1 == 1 {
                *row ^= *e;
            }
        }
        pivots.push((p, *e));
    }
    let mut x = 0u8;
    for (p, row) in pivots {
        if row & rhs != 0 {
            x |= 1 << p;
        }
    }
    Some(x)
}

/// Subspace of `Z₂^ambient` held as a fully reduced echelon basis.
///
/// The pivot of a basis vector is its first nonzero coordinate, and every
/// other basis vector vanishes there. Reducing a vector against the basis
/// therefore yields the lexicographically smallest element of its coset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: u8,
    basis: Vec<u8>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&ambient));
        Self { ambient: ambient as u8, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 1..=ambient {
            s.insert(BitVector::unit(i, ambient));
        }
        s
    }

    pub fn span(vectors: &[BitVector]) -> Result<Self> {
        let first = vectors.first().ok_or_else(|| invalid("span of an empty list has no ambient dimension"))?;
        Self::span_in(first.dim(), vectors)
    }

    pub fn span_in(ambient: usize, vectors: &[BitVector]) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
            }
            s.insert(*v);
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient as usize
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<BitVector> {
        self.basis.iter().map(|&b| BitVector::from_bits(b, self.ambient_dim())).collect()
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, v: BitVector) -> BitVector {
        debug_assert_eq!(v.dim(), self.ambient_dim());
        let mut bits = v.bits;
        for &b in &self.basis {
            let pivot = b & b.wrapping_neg();
            if bits & pivot != 0 {
                bits ^= b;
            }
        }
        BitVector::from_bits(bits, self.ambient_dim())
    }

    pub fn contains(&self, v: BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn member(&self, v: BitVector) -> Result<bool> {
        if v.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: v.dim() });
        }
        Ok(self.contains(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVector) -> bool {
        let r = self.reduce(v).bits;
        if r == 0 {
            return false;
        }
        let pivot = r & r.wrapping_neg();
        for b in self.basis.iter_mut() {
            if *b & pivot != 0 {
                *b ^= r;
            }
        }
        let at = self.basis.partition_point(|&b| (b & b.wrapping_neg()) < pivot);
        self.basis.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v);
        }
        Ok(s)
    }

    pub fn elements(&self) -> Vec<BitVector> {
        let d = self.ambient_dim();
        (0..(1u32 << self.dim()))
            .map(|mask| {
                let mut bits = 0u8;
                for (i, &b) in self.basis.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        bits ^= b;
                    }
                }
                BitVector::from_bits(bits, d)
            })
            .collect()
    }

    /// Column span of `m + I`, the set of `m(v) + v`.
    pub fn image_plus_identity(m: &BitMatrix) -> Result<Subspace> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        Subspace::span_in(m.nrows(), &m.plus(&BitMatrix::identity(m.nrows())).columns())
    }
}

/// All invertible `dim × dim` matrices, each once.
pub fn enumerate_gl(dim: usize) -> Result<Vec<BitMatrix>> {
    if dim == 0 || dim > MAX_GL_DIM {
        return Err(invalid(format!("GL enumeration supports dimensions 1..={MAX_GL_DIM}, got {dim}")));
    }
    let mut out = Vec::new();
    let per_col = 1u32 << dim;
    for code in 0..per_col.pow(dim as u32) {
        let mut m = BitMatrix::zero(dim, dim);
        let mut c = code;
        for j in 0..dim {
            m.cols[j] = (c % per_col) as u8;
            c /= per_col;
        }
        if m.rank() == dim {
            out.push(m);
        }
    }
    Ok(out)
}

/// A linear functional `f` with `f·c = 1` for every colour `c`, if one exists.
pub fn solve_unit_functional(colours: &[BitVector]) -> Result<Option<BitVector>> {
    let first = colours.first().ok_or_else(|| invalid("no colours given"))?;
    let dim = first.dim();
    let mut eqs = Vec::with_capacity(colours.len());
    for c in colours {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
        }
        eqs.push(c.bits as u16 | (1 << dim));
    }
    Ok(solve_system(eqs, dim).map(|bits| BitVector::from_bits(bits, dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize, d: usize) -> BitVector {
        BitVector::unit(i, d)
    }

    fn brute_unit_functional(colours: &[BitVector]) -> Option<BitVector> {
        let d = colours[0].dim();
        BitVector::all(d).find(|f| colours.iter().all(|c| f.dot(c)))
    }

    #[test]
    fn unit_functional_examples() {
        assert_eq!(solve_unit_functional(&[e(1, 2), e(2, 2)]).unwrap(), Some(BitVector::from_coords(&[1, 1]).unwrap()));
        let f = e(1, 3) + e(2, 3) + e(3, 3);
        assert_eq!(solve_unit_functional(&[e(1, 3), e(2, 3), e(3, 3), f]).unwrap(), Some(f));
        assert_eq!(
            solve_unit_functional(&[e(1, 2), e(1, 2) + e(2, 2)]).unwrap(),
            Some(BitVector::from_coords(&[1, 0]).unwrap())
        );
        assert_eq!(solve_unit_functional(&[e(1, 2), e(2, 2), e(1, 2) + e(2, 2)]).unwrap(), None);
        assert!(matches!(
            solve_unit_functional(&[e(1, 2), e(1, 3)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_examples() {
        let s = Subspace::span(&[e(1, 2), e(2, 2)]).unwrap();
        assert!(s.member(e(1, 2) + e(2, 2)).unwrap());
        assert_eq!(Subspace::image_plus_identity(&BitMatrix::identity(3)).unwrap().dim(), 0);
        let swap = BitMatrix::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let im = Subspace::image_plus_identity(&swap).unwrap();
        assert_eq!(im.basis(), vec![e(1, 2) + e(2, 2)]);
        assert!(s.member(e(1, 3)).is_err());
        assert!(Subspace::zero(2).sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn gl_counts() {
        assert_eq!(enumerate_gl(1).unwrap().len(), 1);
        assert_eq!(enumerate_gl(2).unwrap().len(), 6);
        assert_eq!(enumerate_gl(3).unwrap().len(), 168);
        let formula = |n: u32| (0..n).map(|i| (1u64 << n) - (1u64 << i)).product::<u64>();
        let gl4 = enumerate_gl(4).unwrap();
        assert_eq!(gl4.len() as u64, formula(4));
        assert!(gl4.iter().all(|m| m.is_invertible()));
        let distinct: std::collections::HashSet<_> = gl4.iter().collect();
        assert_eq!(distinct.len(), gl4.len());
        assert!(enumerate_gl(5).is_err());
    }

    #[test]
    fn coset_representative_is_lexicographic_minimum() {
        for d in 1..=4 {
            for gens in BitVector::all(d).collect::<Vec<_>>().chunks(3) {
                let s = Subspace::span(gens).unwrap();
                for v in BitVector::all(d) {
                    let min = s.elements().iter().map(|w| *w + v).min().unwrap();
                    assert_eq!(s.reduce(v), min);
                }
            }
        }
    }

    #[test]
    fn ordering_is_coordinate_first() {
        // (0,1) < (1,0): the first coordinate decides
        assert!(e(2, 2) < e(1, 2));
        assert!(BitVector::zero(2) < e(2, 2));
    }

    #[test]
    fn inverse_and_images() {
        let m = BitMatrix::from_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).is_identity());
        let src = vec![e(1, 3), e(2, 3), e(3, 3)];
        let dst: Vec<_> = src.iter().map(|v| m.apply(*v)).collect();
        assert_eq!(BitMatrix::from_images(&src, &dst), Some(m));
        assert!(BitMatrix::from_rows(&[&[1, 1], &[1, 1]]).unwrap().inverse().is_none());
    }

    #[test]
    fn serde_coordinate_first() {
        let v = e(1, 3);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,0,0]");
        let back: BitVector = serde_json::from_str("[0,1,1]").unwrap();
        assert_eq!(back, e(2, 3) + e(3, 3));
        assert!(serde_json::from_str::<BitVector>("[0,2]").is_err());
    }

    fn vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<BitVector>> {
        prop::collection::vec(0u8..(1 << dim), 1..max)
            .prop_map(move |v| v.into_iter().map(|b| BitVector::from_bits(b, dim)).collect())
    }

    proptest! {
        #[test]
        fn unit_functional_matches_brute_force(dim in 1usize..=4, seed in vectors(4, 7)) {
            let cs: Vec<_> = seed.iter().map(|v| BitVector::from_bits(v.bits() & mask(dim), dim)).collect();
            let fast = solve_unit_functional(&cs).unwrap();
            let brute = brute_unit_functional(&cs);
            prop_assert_eq!(fast.is_some(), brute.is_some());
            if let Some(f) = fast {
                prop_assert!(cs.iter().all(|c| f.dot(c)));
            }
        }

        #[test]
        fn sum_membership_matches_enumeration(a in vectors(4, 3), b in vectors(4, 3)) {
            let s = Subspace::span(&a).unwrap();
            let t = Subspace::span(&b).unwrap();
            let st = s.sum(&t).unwrap();
            for w in BitVector::all(4) {
                let brute = s.elements().iter().any(|x| t.elements().iter().any(|y| *x + *y == w));
                prop_assert_eq!(st.contains(w), brute);
            }
        }

        #[test]
        fn solve_finds_preimages(cols in vectors(4, 5), x in 0u8..16) {
            let m = BitMatrix::from_columns(&cols).unwrap();
            let x = BitVector::from_bits(x & mask(m.ncols()), m.ncols());
            let b = m.apply(x);
            let y = m.solve(b).unwrap();
            prop_assert_eq!(m.apply(y), b);
        }
    }
}
