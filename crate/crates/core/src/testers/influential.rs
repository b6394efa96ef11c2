use rand::Rng;

use super::direction_of_pair;
use crate::hypergrid::{DimSet, Direction, Oracle, Point, Value};

/// A dimension outside `T` on which `f` changes, with the pair that shows it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionFinding {
    pub dimension: usize,
    pub direction: Direction,
    pub x: Point,
    pub y: Point,
    pub fx: Value,
    pub fy: Value,
}

/// One round of influential-dimension search.
///
/// Draws `x`, `y` uniformly with `x_T = y_T`. If `f(x) = f(y)` nothing is
/// found. Otherwise the set `V` of differing dimensions is halved until one
/// dimension is left: `z` copies `x` on the first `⌊|V|/2⌋` members of `V`
/// and `y` elsewhere, and replaces `y` when `f(z) != f(x)`, `x` otherwise.
/// Uses at most `2 + ⌈log₂ d⌉` queries.
///
/// On hypergrids the final pair differs in one coordinate but that coordinate
/// may differ by more than one.
pub fn find_influential_dimension<O, R>(oracle: &O, t: &DimSet, rng: &mut R) -> Option<DimensionFinding>
where
    O: Oracle + ?Sized,
    R: Rng + ?Sized,
{
    let dom = oracle.domain();
    let n = dom.n();
    let mut x = dom.random_point(rng).0;
    let mut y: Vec<u32> = (0..dom.d())
        .map(|i| if t.contains(i) { x[i] } else { rng.gen_range(0..n) })
        .collect();
    let fx = oracle.query(&x);
    let mut fy = oracle.query(&y);
    if fx == fy {
        return None;
    }

    let mut v: Vec<usize> = (0..dom.d()).filter(|&i| x[i] != y[i]).collect();
    while v.len() > 1 {
        let half = v.len() / 2;
        let mut z = y.clone();
        for &i in &v[..half] {
            z[i] = x[i];
        }
        let fz = oracle.query(&z);
        if fz != fx {
            // z and x now differ on the second half only.
            y = z;
            fy = fz;
            v.drain(..half);
        } else {
            x = z;
            v.truncate(half);
        }
    }

    let dimension = v[0];
    let direction = direction_of_pair(&x, &y, fx, fy).expect("pair differs in one coordinate with distinct values");
    Some(DimensionFinding { dimension, direction, x: Point(x), y: Point(y), fx, fy })
}
