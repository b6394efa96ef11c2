//! The hypergrid `[n]^d` and everything needed to query functions on it.
//!
//! Coordinates are stored 0-based, so `[n]` is `{0, ..., n - 1}`. Shifting
//! every coordinate by one leaves `|x - y|_1` and all order relations intact.

mod oracle;
mod orientation;
mod random;
mod table;
mod tail;
mod value;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub use oracle::{restrict, FunctionOracle, HypergridFunction, Oracle, Restriction};
pub use orientation::{Direction, Orientation};
pub use random::RandomSource;
pub use table::{TruthTable, TABLE_CAP};
pub use tail::hamming_tail_probability;
pub use value::{parse_rational, Rational, Value};

/// The domain `[n]^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    n: u32,
    d: usize,
}

impl Domain {
    /// Requires `n >= 2` and `d >= 1`. The point count `n^d` may exceed the
    /// index range; only operations that enumerate or index points need it.
    pub fn new(n: u32, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDomain { n, d, reason: "side length must be at least 2" });
        }
        if d < 1 {
            return Err(Error::InvalidDomain { n, d, reason: "dimension count must be at least 1" });
        }
        Ok(Domain { n, d })
    }

    /// Shorthand for `{0,1}^d`.
    pub fn hypercube(d: usize) -> Result<Self> {
        Domain::new(2, d)
    }

    /// Sub-grid `[n]^k` seen by a restriction; `k = 0` is the one-point grid.
    pub(crate) fn subgrid(n: u32, d: usize) -> Self {
        Domain { n, d }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `n^d`, or `None` if it does not fit in `usize`.
    pub fn checked_size(&self) -> Option<usize> {
        let d = u32::try_from(self.d).ok()?;
        (self.n as usize).checked_pow(d)
    }

    pub fn size(&self) -> Result<usize> {
        self.checked_size().ok_or(Error::Capacity {
            what: "domain",
            size: u128::MAX,
            cap: usize::MAX as u128,
        })
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        coords.len() == self.d && coords.iter().all(|&c| c < self.n)
    }

    /// Odometer decoding: coordinate 0 varies fastest.
    pub fn index_to_point(&self, idx: usize) -> Result<Point> {
        let size = self.size()?;
        if idx >= size {
            return Err(Error::IndexOutOfRange { index: idx, size });
        }
        let n = self.n as usize;
        let mut rest = idx;
        let coords = (0..self.d)
            .map(|_| {
                let c = (rest % n) as u32;
                rest /= n;
                c
            })
            .collect();
        Ok(Point(coords))
    }

    pub fn point_to_index(&self, x: &Point) -> Result<usize> {
        self.size()?;
        if !self.contains(&x.0) {
            return Err(Error::PointOutOfDomain { point: x.0.clone(), n: self.n, d: self.d });
        }
        Ok(self.index_unchecked(&x.0))
    }

    /// Odometer encoding without validation. Callers guarantee the size fits.
    pub(crate) fn index_unchecked(&self, coords: &[u32]) -> usize {
        let n = self.n as usize;
        coords.iter().rev().fold(0usize, |acc, &c| acc * n + c as usize)
    }

    /// All points in odometer order.
    pub fn points(&self) -> Result<Points> {
        let remaining = self.size()?;
        Ok(Points { n: self.n, next: vec![0; self.d], remaining })
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point((0..self.d).map(|_| rng.gen_range(0..self.n)).collect())
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]^{}", self.n, self.d)
    }
}

/// Iterator over the points of a domain in odometer order.
pub struct Points {
    n: u32,
    next: Vec<u32>,
    remaining: usize,
}

impl Iterator for Points {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = Point(self.next.clone());
        for c in self.next.iter_mut() {
            *c += 1;
            if *c < self.n {
                break;
            }
            *c = 0;
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Points {}

/// A coordinate vector in `[n]^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// `|x|`: the coordinate sum, which is the number of ones on `{0,1}^d`.
    pub fn hamming_weight(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn l1_distance(&self, other: &Point) -> u64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.abs_diff(b) as u64).sum()
    }

    /// Dimensions where the two points differ, in increasing order.
    pub fn differing_dimensions(&self, other: &Point) -> Vec<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect()
    }
}

impl From<Vec<u32>> for Point {
    fn from(coords: Vec<u32>) -> Self {
        Point(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A set of 0-based dimension indices, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimSet(Vec<usize>);

impl DimSet {
    pub fn empty() -> Self {
        DimSet(Vec::new())
    }

    pub fn full(d: usize) -> Self {
        DimSet((0..d).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Returns `false` if `i` was already present.
    pub fn insert(&mut self, i: usize) -> bool {
        match self.0.binary_search(&i) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, i);
                true
            }
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `{0..d} \ self`.
    pub fn complement(&self, d: usize) -> DimSet {
        DimSet((0..d).filter(|&i| !self.contains(i)).collect())
    }

    pub fn is_within(&self, d: usize) -> bool {
        self.0.last().is_none_or(|&m| m < d)
    }

    pub fn intersects(&self, other: &DimSet) -> bool {
        self.0.iter().any(|&i| other.contains(i))
    }

    /// All subsets of `{0..d}`, by bitmask order.
    pub fn all_subsets(d: usize) -> impl Iterator<Item = DimSet> {
        assert!(d < usize::BITS as usize);
        (0usize..1 << d).map(move |mask| DimSet((0..d).filter(|&i| mask >> i & 1 == 1).collect()))
    }
}

impl FromIterator<usize> for DimSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        DimSet(v)
    }
}

impl<const K: usize> From<[usize; K]> for DimSet {
    fn from(dims: [usize; K]) -> Self {
        dims.into_iter().collect()
    }
}

/// An assignment of coordinates to some of the dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialPoint(BTreeMap<usize, u32>);

impl PartialPoint {
    pub fn new() -> Self {
        PartialPoint(BTreeMap::new())
    }

    /// Assigns `coords[k]` to the `k`-th smallest member of `dims`.
    pub fn on(dims: &DimSet, coords: &[u32]) -> Result<Self> {
        if dims.len() != coords.len() {
            return Err(Error::InvalidAssignment(format!(
                "{} coordinates for {} dimensions",
                coords.len(),
                dims.len()
            )));
        }
        Ok(PartialPoint(dims.iter().zip(coords.iter().copied()).collect()))
    }

    pub fn set(&mut self, dim: usize, coord: u32) -> Option<u32> {
        self.0.insert(dim, coord)
    }

    pub fn get(&self, dim: usize) -> Option<u32> {
        self.0.get(&dim).copied()
    }

    pub fn dims(&self) -> DimSet {
        DimSet(self.0.keys().copied().collect())
    }

    /// Coordinates in increasing dimension order.
    pub fn coords(&self) -> Vec<u32> {
        self.0.values().copied().collect()
    }
}

impl FromIterator<(usize, u32)> for PartialPoint {
    fn from_iter<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        PartialPoint(iter.into_iter().collect())
    }
}

/// `z ∘_T w`: the point of dimension `d` taking `z` on `t` and `w` elsewhere.
pub fn concat(d: usize, t: &DimSet, z: &PartialPoint, w: &PartialPoint) -> Result<Point> {
    if !t.is_within(d) {
        return Err(Error::InvalidAssignment(format!("dimension set {t:?} exceeds d = {d}")));
    }
    if z.dims() != *t {
        return Err(Error::InvalidAssignment(format!(
            "z assigns {:?} but T is {:?}",
            z.dims(),
            t
        )));
    }
    let rest = t.complement(d);
    if w.dims() != rest {
        return Err(Error::InvalidAssignment(format!(
            "w assigns {:?} but the complement of T is {:?}",
            w.dims(),
            rest
        )));
    }
    Ok(Point(
        (0..d)
            .map(|i| z.get(i).or_else(|| w.get(i)).expect("assignment checked above"))
            .collect(),
    ))
}

/// `⌈log₂ n⌉`, with `ceil_log2(1) = 0`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        u64::BITS - (n - 1).leading_zeros()
    }
}
