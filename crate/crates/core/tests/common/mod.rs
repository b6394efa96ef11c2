//! Reference implementations used only by tests. They share no code with the
//! library beyond the table type and stay deliberately naive.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use unate_core::{Domain, Rational, TruthTable, Value};

pub fn table(n: u32, d: usize, f: impl Fn(&[u32]) -> i64) -> TruthTable {
    TruthTable::from_fn(Domain::new(n, d).unwrap(), |x| Value::integer(f(x))).unwrap()
}

pub fn random_table<R: Rng>(n: u32, d: usize, range: i64, rng: &mut R) -> TruthTable {
    TruthTable::from_fn(Domain::new(n, d).unwrap(), |_| Value::integer(rng.gen_range(0..range))).unwrap()
}

/// All points of the table in storage order, decoded without the library
/// codec (coordinate 0 fastest).
pub fn points(t: &TruthTable) -> Vec<Vec<u32>> {
    let (n, d) = (t.domain().n(), t.domain().d());
    (0..t.len())
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let c = (idx % n as usize) as u32;
                    idx /= n as usize;
                    c
                })
                .collect()
        })
        .collect()
}

/// `down[i]` flips dimension `i`. `x` precedes `y` when every coordinate
/// moves the oriented way.
pub fn precedes(x: &[u32], y: &[u32], down: &[bool]) -> bool {
    x.iter()
        .zip(y)
        .zip(down)
        .all(|((a, b), &flip)| if flip { a >= b } else { a <= b })
}

pub fn orientations(d: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << d).map(move |m| (0..d).map(|i| m >> i & 1 == 1).collect())
}

/// Checks every comparable pair directly.
pub fn is_monotone_under(t: &TruthTable, down: &[bool]) -> bool {
    let pts = points(t);
    let vals = t.values();
    (0..pts.len()).all(|a| (0..pts.len()).all(|b| !precedes(&pts[a], &pts[b], down) || vals[a] <= vals[b]))
}

/// Checks unit steps only; equivalent by transitivity and much cheaper.
pub fn is_monotone_by_steps(t: &TruthTable, down: &[bool]) -> bool {
    let pts = points(t);
    let n = t.domain().n();
    let vals = t.values();
    let mut stride = 1usize;
    for (i, &flip) in down.iter().enumerate() {
        for (a, x) in pts.iter().enumerate() {
            if x[i] + 1 < n {
                let (lo, hi) = (vals[a], vals[a + stride]);
                if (!flip && lo > hi) || (flip && lo < hi) {
                    return false;
                }
            }
        }
        stride *= n as usize;
    }
    true
}

pub fn is_unate_brute(t: &TruthTable) -> bool {
    orientations(t.domain().d()).any(|o| is_monotone_by_steps(t, &o))
}

/// Smallest number of points to change so the table becomes monotone under
/// `down`.
///
/// Violated pairs (`x` before `y`, `f(x) > f(y)`) form a strict partial
/// order, so the violation graph is a comparability graph: its minimum
/// vertex cover equals `N` minus the largest antichain, which by Dilworth is
/// the maximum matching of the split graph with an arc `x -> y` per pair.
pub fn repair_size(t: &TruthTable, down: &[bool]) -> usize {
    let pts = points(t);
    let vals = t.values();
    let adj: Vec<Vec<usize>> = (0..pts.len())
        .map(|a| {
            (0..pts.len())
                .filter(|&b| a != b && vals[a] > vals[b] && precedes(&pts[a], &pts[b], down))
                .collect()
        })
        .collect();
    max_matching(&adj, pts.len())
}

/// Kuhn's augmenting-path matching with a greedy start.
pub fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let mut owner = vec![usize::MAX; right];
    let mut matched = vec![false; adj.len()];
    for (u, edges) in adj.iter().enumerate() {
        if let Some(&v) = edges.iter().find(|&&v| owner[v] == usize::MAX) {
            owner[v] = u;
            matched[u] = true;
        }
    }
    fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v] == usize::MAX || augment(owner[v], adj, owner, seen) {
                    owner[v] = u;
                    return true;
                }
            }
        }
        false
    }
    for (u, done) in matched.iter_mut().enumerate() {
        if !*done {
            let mut seen = vec![false; right];
            *done = augment(u, adj, &mut owner, &mut seen);
        }
    }
    owner.iter().filter(|&&o| o != usize::MAX).count()
}

pub fn distance_under(t: &TruthTable, down: &[bool]) -> Rational {
    Rational::new(repair_size(t, down) as i64, t.len() as i64)
}

pub fn distance_to_unate_brute(t: &TruthTable) -> Rational {
    orientations(t.domain().d()).map(|o| distance_under(t, &o)).min().unwrap()
}

/// `Pr[f(x) != f(y)]` over ordered pairs agreeing on `fixed`, by grouping
/// points on their `fixed` coordinates.
pub fn find_probability(t: &TruthTable, fixed: &[usize]) -> Rational {
    let mut groups: HashMap<Vec<u32>, Vec<Value>> = HashMap::new();
    for (x, v) in points(t).into_iter().zip(t.values()) {
        groups.entry(fixed.iter().map(|&i| x[i]).collect()).or_default().push(*v);
    }
    let (mut pairs, mut unequal) = (0i64, 0i64);
    for vals in groups.values() {
        for a in vals {
            for b in vals {
                pairs += 1;
                unequal += (a != b) as i64;
            }
        }
    }
    Rational::new(unequal, pairs)
}

/// Subsets of `0..d` as sorted index lists.
pub fn subsets(d: usize) -> Vec<Vec<usize>> {
    (0u64..1 << d).map(|m| (0..d).filter(|i| m >> i & 1 == 1).collect()).collect()
}
