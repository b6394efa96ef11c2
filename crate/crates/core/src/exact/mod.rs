//! Ground truth for small tables: predicates, exact distances and the fiber
//! statistics that drive the tester's analysis.
//!
//! Distance to monotone under an orientation is the minimum vertex cover of the
//! violation graph divided by the domain size. Every repair must change at
//! least one endpoint of each violated pair, so a repair set is a cover.
//! Conversely, after deleting a cover the remaining points carry no violated
//! comparable pair, and such a partial function extends to a monotone one over
//! the reals (take, at each deleted point, the maximum of the kept values
//! below it, or the minimum kept value when nothing lies below).

mod cover;
mod flow;
mod stats;
mod violation;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergrid::{DimSet, Direction, Orientation, Rational, TruthTable};

pub use cover::min_vertex_cover;
pub use stats::{
    cylinder_distance, empirical_find_probability, plurality_function, restriction_stats,
    surprise_statistic, RestrictionStats, PAIR_ENUMERATION_CAP,
};
pub use violation::ViolationGraph;

/// Largest domain (in points) for the branch-and-bound distance.
pub const GENERAL_CAP: usize = 256;
/// Largest domain for two-valued tables, which use the matching path.
pub const BOOLEAN_CAP: usize = 1 << 20;
/// Most orientation classes `distance_to_unate` will try.
pub const ORIENTATION_CAP: usize = 1 << 12;

/// Walks every neighbour pair `(x, x + e_i)` and reports `(f(x), f(x + e_i))`
/// through `visit`, stopping early when it returns `false`.
fn for_each_line_step(table: &TruthTable, dim: usize, mut visit: impl FnMut(usize, usize) -> bool) {
    let dom = table.domain();
    let n = dom.n() as usize;
    let stride = n.pow(dim as u32);
    for idx in 0..table.len() {
        if (idx / stride) % n + 1 < n && !visit(idx, idx + stride) {
            return;
        }
    }
}

/// Whether `f` is non-decreasing along `dim` (up), non-increasing (down), both
/// (constant along the dimension) or neither.
fn line_behaviour(table: &TruthTable, dim: usize) -> (bool, bool) {
    let vals = table.values();
    let (mut increases, mut decreases) = (false, false);
    for_each_line_step(table, dim, |a, b| {
        increases |= vals[a] < vals[b];
        decreases |= vals[a] > vals[b];
        !(increases && decreases)
    });
    (increases, decreases)
}

/// True iff every neighbour pair respects the orientation.
pub fn is_monotone_directed(table: &TruthTable, orientation: &Orientation) -> Result<bool> {
    let d = table.domain().d();
    check_orientation(orientation, d)?;
    Ok((0..d).all(|i| {
        let (inc, dec) = line_behaviour(table, i);
        match orientation.get(i).expect("orientation covers all dimensions") {
            Direction::Up => !dec,
            Direction::Down => !inc,
        }
    }))
}

/// True iff some orientation makes `f` monotone. Dimensions are independent:
/// each one must be non-decreasing on all its lines or non-increasing on all.
pub fn is_unate(table: &TruthTable) -> bool {
    unate_orientation(table).is_some()
}

/// An orientation witnessing unateness, with ties resolved to up.
pub fn unate_orientation(table: &TruthTable) -> Option<Orientation> {
    (0..table.domain().d())
        .map(|i| match line_behaviour(table, i) {
            (true, true) => None,
            (false, true) => Some(Direction::Down),
            _ => Some(Direction::Up),
        })
        .collect::<Option<Vec<_>>>()
        .map(Orientation::from_directions)
}

/// Dimensions on which `f` actually depends.
pub fn relevant_dimensions(table: &TruthTable) -> DimSet {
    (0..table.domain().d())
        .filter(|&i| line_behaviour(table, i) != (false, false))
        .collect()
}

/// Exact distance to the set of functions monotone under `orientation`.
pub fn distance_to_monotone_directed(table: &TruthTable, orientation: &Orientation) -> Result<Rational> {
    check_orientation(orientation, table.domain().d())?;
    let size = table.len();
    let distinct = table.distinct_values().len();
    let cover = if distinct <= 2 {
        check_cap(size, BOOLEAN_CAP, "two-valued table")?;
        flow::two_valued_repair_size(table, orientation)
    } else {
        check_cap(size, GENERAL_CAP, "table for exact vertex cover")?;
        ViolationGraph::build(table, orientation)?.min_vertex_cover()
    };
    Ok(Rational::new(cover as i64, size as i64))
}

/// Exact distance to unateness.
pub fn distance_to_unate(table: &TruthTable) -> Result<Rational> {
    closest_unate_orientation(table).map(|(_, dist)| dist)
}

/// An orientation achieving [`distance_to_unate`], and the distance.
///
/// Only dimensions `f` depends on are enumerated; the others stay up, since a
/// function ignoring a dimension is monotone along it in both directions.
/// Dimensions that can be swapped without changing `f` form classes, and
/// within a class only the number of down dimensions matters: if `f ∘ π = f`
/// for a coordinate permutation `π`, then `g ↦ g ∘ π` maps functions monotone
/// under `σ` onto functions monotone under `σ ∘ π` and preserves distance to
/// `f`. One representative per class count is tried.
pub fn closest_unate_orientation(table: &TruthTable) -> Result<(Orientation, Rational)> {
    let dom = table.domain();
    let size = table.len();
    if let Some(orientation) = unate_orientation(table) {
        return Ok((orientation, Rational::from_integer(0)));
    }
    if table.distinct_values().len() <= 2 {
        check_cap(size, BOOLEAN_CAP, "two-valued table")?;
    } else {
        check_cap(size, GENERAL_CAP, "table for exact vertex cover")?;
    }

    let classes = symmetry_classes(table, &relevant_dimensions(table));
    let count = classes
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len() + 1))
        .filter(|&c| c <= ORIENTATION_CAP)
        .ok_or(Error::Capacity {
            what: "orientation enumeration",
            size: classes.iter().map(|c| c.len() as u128 + 1).product(),
            cap: ORIENTATION_CAP as u128,
        })?;

    let orientation_for = |mut code: usize| {
        let mut dirs = vec![Direction::Up; dom.d()];
        for class in &classes {
            let downs = code % (class.len() + 1);
            code /= class.len() + 1;
            for &i in &class[..downs] {
                dirs[i] = Direction::Down;
            }
        }
        Orientation::from_directions(dirs)
    };

    let results: Vec<Result<Rational>> = (0..count)
        .into_par_iter()
        .map(|code| distance_to_monotone_directed(table, &orientation_for(code)))
        .collect();
    let mut best: Option<(usize, Rational)> = None;
    for (code, r) in results.into_iter().enumerate() {
        let dist = r?;
        if best.is_none_or(|(_, b)| dist < b) {
            best = Some((code, dist));
        }
    }
    let (code, dist) = best.expect("at least one orientation");
    Ok((orientation_for(code), dist))
}

/// Groups `dims` into classes of mutually interchangeable coordinates.
/// Each class is sorted; classes are ordered by their smallest member.
fn symmetry_classes(table: &TruthTable, dims: &DimSet) -> Vec<Vec<usize>> {
    let dom = table.domain();
    let n = dom.n() as usize;
    let vals = table.values();
    let swaps_freely = |j: usize, k: usize| {
        let (sj, sk) = (n.pow(j as u32), n.pow(k as u32));
        (0..table.len()).all(|idx| {
            let (cj, ck) = ((idx / sj) % n, (idx / sk) % n);
            let swapped = idx - cj * sj - ck * sk + ck * sj + cj * sk;
            vals[idx] == vals[swapped]
        })
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in dims.iter() {
        match classes.iter_mut().find(|c| swaps_freely(c[0], i)) {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

fn check_orientation(orientation: &Orientation, d: usize) -> Result<()> {
    if orientation.covers(d) {
        Ok(())
    } else {
        Err(Error::arg(format!("orientation must cover all {d} dimensions")))
    }
}

fn check_cap(size: usize, cap: usize, what: &'static str) -> Result<()> {
    if size > cap {
        return Err(Error::Capacity { what, size: size as u128, cap: cap as u128 });
    }
    Ok(())
}
