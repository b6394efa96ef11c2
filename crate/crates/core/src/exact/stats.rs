//! Fiber statistics: for a dimension set `T` and `z ∈ [n]^T`, the fiber over
//! `z` is `{x : x_T = z}`. `P_k^z` is the share of the `k`-th most frequent
//! value on that fiber.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergrid::{DimSet, Domain, PartialPoint, Rational, TruthTable, Value};

/// Largest table for [`empirical_find_probability`], which is quadratic.
pub const PAIR_ENUMERATION_CAP: usize = 1 << 12;

/// Per-fiber value counts for a fixed `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionStats {
    dims: DimSet,
    fiber_size: usize,
    /// Counts per fiber, indexed by `z` in odometer order over `T`, sorted
    /// non-increasing.
    counts: Vec<Vec<usize>>,
    distinct: usize,
}

impl RestrictionStats {
    pub fn dims(&self) -> &DimSet {
        &self.dims
    }

    pub fn fiber_count(&self) -> usize {
        self.counts.len()
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    /// `r`, the number of distinct values of `f`.
    pub fn distinct_values(&self) -> usize {
        self.distinct
    }

    /// `(P_1^z, P_2^z, ...)` for the fiber with odometer index `z`, padded
    /// with zeros to length `r`.
    pub fn frequencies(&self, z: usize) -> Vec<Rational> {
        let f = self.fiber_size as i64;
        let mut v: Vec<Rational> = self.counts[z].iter().map(|&c| Rational::new(c as i64, f)).collect();
        v.resize(self.distinct, Rational::from_integer(0));
        v
    }

    /// `Σ_k P_k^z (1 - P_k^z)` for one fiber.
    pub fn fiber_surprise(&self, z: usize) -> Rational {
        let f = self.fiber_size as i64;
        let collisions: i64 = self.counts[z].iter().map(|&c| (c * c) as i64).sum();
        Rational::new(f * f - collisions, f * f)
    }

    /// `1 - P_1^z`: the share of the fiber off its plurality value.
    pub fn plurality_miss(&self, z: usize) -> Rational {
        let f = self.fiber_size as i64;
        Rational::new(f - self.counts[z][0] as i64, f)
    }

    /// `E_z[Σ_k P_k^z (1 - P_k^z)]`.
    pub fn surprise(&self) -> Rational {
        let f = self.fiber_size as i64;
        let total: i64 = self
            .counts
            .iter()
            .map(|cs| f * f - cs.iter().map(|&c| (c * c) as i64).sum::<i64>())
            .sum();
        Rational::new(total, self.counts.len() as i64 * f * f)
    }
}

/// Odometer index over the coordinates in `t`.
fn fiber_index(x: &[u32], t: &DimSet, n: usize) -> usize {
    t.iter().rev().fold(0, |acc, i| acc * n + x[i] as usize)
}

fn check_dims(table: &TruthTable, t: &DimSet) -> Result<()> {
    if t.is_within(table.domain().d()) {
        Ok(())
    } else {
        Err(Error::arg(format!("dimension set {t:?} exceeds d = {}", table.domain().d())))
    }
}

/// Value histograms of every fiber over `t`, keyed by value.
fn fiber_histograms(table: &TruthTable, t: &DimSet) -> Result<Vec<BTreeMap<Value, usize>>> {
    check_dims(table, t)?;
    let dom = table.domain();
    let n = dom.n() as usize;
    let mut hist = vec![BTreeMap::new(); n.pow(t.len() as u32)];
    for (x, v) in dom.points()?.zip(table.values()) {
        *hist[fiber_index(x.coords(), t, n)].entry(*v).or_insert(0) += 1;
    }
    Ok(hist)
}

pub fn restriction_stats(table: &TruthTable, t: &DimSet) -> Result<RestrictionStats> {
    let hist = fiber_histograms(table, t)?;
    let fiber_size = table.len() / hist.len();
    let counts = hist
        .into_iter()
        .map(|h| {
            let mut c: Vec<usize> = h.into_values().collect();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect();
    Ok(RestrictionStats { dims: t.clone(), fiber_size, counts, distinct: table.distinct_values().len() })
}

/// `E_{z ∈ [n]^T}[Σ_k P_k^z (1 - P_k^z)]`, exactly.
pub fn surprise_statistic(table: &TruthTable, t: &DimSet) -> Result<Rational> {
    Ok(restriction_stats(table, t)?.surprise())
}

/// `Pr[f(x) != f(y)]` for `x`, `y` uniform and independent with `x_T = y_T`,
/// counted over all ordered pairs.
pub fn empirical_find_probability(table: &TruthTable, t: &DimSet) -> Result<Rational> {
    check_dims(table, t)?;
    if table.len() > PAIR_ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: "pair enumeration",
            size: table.len() as u128,
            cap: PAIR_ENUMERATION_CAP as u128,
        });
    }
    let points: Vec<_> = table.domain().points()?.collect();
    let vals = table.values();
    let (mut pairs, mut unequal) = (0i64, 0i64);
    for (a, x) in points.iter().enumerate() {
        for (b, y) in points.iter().enumerate() {
            if t.iter().all(|i| x.coords()[i] == y.coords()[i]) {
                pairs += 1;
                if vals[a] != vals[b] {
                    unequal += 1;
                }
            }
        }
    }
    Ok(Rational::new(unequal, pairs))
}

/// `Pl_T(z)`: the most frequent value on each fiber, smallest value on ties.
/// The result lives on `[n]^|T|`, coordinates in increasing dimension order.
pub fn plurality_function(table: &TruthTable, t: &DimSet) -> Result<TruthTable> {
    let hist = fiber_histograms(table, t)?;
    let values = hist
        .into_iter()
        .map(|h| {
            // BTreeMap iterates in increasing value order; keep the first max.
            let mut best: Option<(Value, usize)> = None;
            for (v, c) in h {
                if best.is_none_or(|(_, bc)| c > bc) {
                    best = Some((v, c));
                }
            }
            best.expect("fibers are non-empty").0
        })
        .collect();
    TruthTable::new(Domain::subgrid(table.domain().n(), t.len()), values)
}

/// Distance on `[n]^d` between `f` and its cylinder `x ↦ f(x_T ∘ w)`.
pub fn cylinder_distance(table: &TruthTable, t: &DimSet, w: &PartialPoint) -> Result<Rational> {
    let dom = table.domain();
    check_dims(table, t)?;
    if w.dims() != t.complement(dom.d()) {
        return Err(Error::InvalidAssignment("w must assign exactly the complement of T".into()));
    }
    let mut differ = 0i64;
    for x in dom.points()? {
        let mut y = x.coords().to_vec();
        for (i, c) in y.iter_mut().enumerate() {
            if let Some(wi) = w.get(i) {
                *c = wi;
            }
        }
        if table.at(x.coords()) != table.at(&y) {
            differ += 1;
        }
    }
    Ok(Rational::new(differ, table.len() as i64))
}
