//! Randomized testers.
//!
//! [`unateness_tester`] collects influential dimensions and their directions
//! with [`find_influential_dimension`], fixes every other dimension at random
//! and hands the restriction to [`monotonicity_tester_directed`]. All three
//! have 1-sided error: a rejection always carries a violated pair that can be
//! re-checked against the function.

mod influential;
mod monotonicity;
mod unateness;

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergrid::{Direction, Oracle, Point, Value};

pub use influential::{find_influential_dimension, DimensionFinding};
pub use monotonicity::{monotonicity_iterations, monotonicity_tester_directed, C_MONO};
pub use unateness::{influential_iterations, query_budget, unateness_tester, worst_case_queries, C_TOTAL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
        })
    }
}

/// A pair of points differing in one dimension whose values contradict the
/// direction assigned to it.
///
/// `lower` precedes `upper` in the oriented order: for `Up` its coordinate is
/// smaller, for `Down` larger. The pair is a violation when
/// `f(lower) > f(upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub dimension: usize,
    pub direction: Direction,
    pub lower: Point,
    pub upper: Point,
    pub lower_value: Value,
    pub upper_value: Value,
}

impl Violation {
    /// Re-queries both endpoints and checks the pair really is violated.
    pub fn is_confirmed_by<O: Oracle + ?Sized>(&self, oracle: &O) -> bool {
        let i = self.dimension;
        let dom = oracle.domain();
        if !dom.contains(self.lower.coords()) || !dom.contains(self.upper.coords()) {
            return false;
        }
        if self.lower.differing_dimensions(&self.upper) != [i] {
            return false;
        }
        let (a, b) = (self.lower.coords()[i], self.upper.coords()[i]);
        let ordered = match self.direction {
            Direction::Up => a < b,
            Direction::Down => a > b,
        };
        ordered && oracle.query(self.lower.coords()) > oracle.query(self.upper.coords())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TesterVerdict {
    pub verdict: Verdict,
    pub queries_used: u64,
    pub witness: Option<Violation>,
}

impl TesterVerdict {
    pub fn is_reject(&self) -> bool {
        self.verdict == Verdict::Reject
    }
}

/// Direction of the axis-parallel pair `(x, y)`: up iff the coordinate and the
/// value move the same way.
pub fn direction_of_pair(x: &[u32], y: &[u32], fx: Value, fy: Value) -> Result<Direction> {
    if x.len() != y.len() {
        return Err(Error::arg("points of different dimension"));
    }
    let mut diff = x.iter().zip(y).enumerate().filter(|(_, (a, b))| a != b);
    let (i, _) = diff.next().ok_or_else(|| Error::arg("points are equal"))?;
    if diff.next().is_some() {
        return Err(Error::arg("points differ in more than one coordinate"));
    }
    if fx == fy {
        return Err(Error::arg("values are equal"));
    }
    Ok(if (y[i] > x[i]) == (fy > fx) { Direction::Up } else { Direction::Down })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64) -> Value {
        Value::integer(x)
    }

    #[test]
    fn pair_direction_examples() {
        assert_eq!(direction_of_pair(&[0], &[1], v(3), v(7)).unwrap(), Direction::Up);
        assert_eq!(direction_of_pair(&[0], &[1], v(7), v(3)).unwrap(), Direction::Down);
        assert_eq!(direction_of_pair(&[2], &[0], v(1), v(5)).unwrap(), Direction::Down);
        assert_eq!(direction_of_pair(&[2], &[0], v(5), v(1)).unwrap(), Direction::Up);
    }

    #[test]
    fn pair_direction_errors() {
        assert!(direction_of_pair(&[0], &[1], v(3), v(3)).is_err());
        assert!(direction_of_pair(&[0, 0], &[1, 1], v(0), v(1)).is_err());
        assert!(direction_of_pair(&[1, 0], &[1, 0], v(0), v(1)).is_err());
    }
}
