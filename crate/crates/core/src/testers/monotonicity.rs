use rand::Rng;

use super::{TesterVerdict, Verdict, Violation};
use crate::error::{Error, Result};
use crate::hypergrid::{ceil_log2, Direction, Oracle, Orientation, Point, Rational};

/// Iteration constant of the pair tester.
pub const C_MONO: u64 = 8;

/// `max(1, ⌈C_MONO · k · ⌈log₂ n⌉ / ε⌉)`.
pub fn monotonicity_iterations(k: usize, n: u32, epsilon: Rational) -> u64 {
    let raw = Rational::from_integer(C_MONO as i64 * k as i64 * ceil_log2(n as u64) as i64) / epsilon;
    (raw.ceil().to_integer() as u64).max(1)
}

/// Pair tester for monotonicity with respect to `orientation`.
///
/// Each iteration picks a dimension `i`, a uniform point `z`, a scale
/// `g = 2^j` with `j < ⌈log₂ n⌉`, an aligned block of length `2g` (clipped to
/// the grid) and a uniform pair `a < b` inside it with `b - a <= g`, then
/// compares `f` at `z` with coordinate `i` set to `a` and to `b`. Down
/// dimensions are handled by reading coordinate `c` as `n - 1 - c`. On
/// `{0,1}^k` this is the edge tester.
pub fn monotonicity_tester_directed<O, R>(
    oracle: &O,
    orientation: &Orientation,
    epsilon: Rational,
    rng: &mut R,
) -> Result<TesterVerdict>
where
    O: Oracle + ?Sized,
    R: Rng + ?Sized,
{
    if epsilon <= Rational::from_integer(0) || epsilon >= Rational::from_integer(1) {
        return Err(Error::arg(format!("proximity {epsilon} outside (0, 1)")));
    }
    let dom = oracle.domain();
    let k = dom.d();
    if !orientation.covers(k) {
        return Err(Error::arg(format!(
            "orientation on {} dimensions for an oracle on {k}",
            orientation.len()
        )));
    }
    if k == 0 {
        return Ok(TesterVerdict { verdict: Verdict::Accept, queries_used: 0, witness: None });
    }

    let n = dom.n();
    let start = oracle.query_count();
    let levels = ceil_log2(n as u64);
    let dirs = orientation.directions();
    for _ in 0..monotonicity_iterations(k, n, epsilon) {
        let i = rng.gen_range(0..k);
        let z = dom.random_point(rng).0;
        let (a, b) = sample_pair(n, levels, rng);
        let actual = |c: u32| match dirs[i] {
            Direction::Up => c,
            Direction::Down => n - 1 - c,
        };
        let mut lower = z.clone();
        lower[i] = actual(a);
        let mut upper = z;
        upper[i] = actual(b);
        let fl = oracle.query(&lower);
        let fu = oracle.query(&upper);
        if fl > fu {
            let witness = Violation {
                dimension: i,
                direction: dirs[i],
                lower: Point(lower),
                upper: Point(upper),
                lower_value: fl,
                upper_value: fu,
            };
            return Ok(TesterVerdict {
                verdict: Verdict::Reject,
                queries_used: oracle.query_count() - start,
                witness: Some(witness),
            });
        }
    }
    Ok(TesterVerdict { verdict: Verdict::Accept, queries_used: oracle.query_count() - start, witness: None })
}

/// Samples `a < b` with `b - a <= g` inside a random aligned block.
fn sample_pair<R: Rng + ?Sized>(n: u32, levels: u32, rng: &mut R) -> (u32, u32) {
    let g = 1u32 << rng.gen_range(0..levels);
    let span = 2 * g;
    let blocks = n.div_ceil(span);
    // A trailing block clipped to a single point holds no pair.
    let usable = if n - (blocks - 1) * span == 1 { blocks - 1 } else { blocks };
    let lo = rng.gen_range(0..usable) * span;
    let hi = (lo + span - 1).min(n - 1);
    loop {
        let a = rng.gen_range(lo..=hi);
        let b = rng.gen_range(lo..=hi);
        if a < b && b - a <= g {
            return (a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergrid::{Domain, FunctionOracle, HypergridFunction, RandomSource, Value};

    struct Weighted {
        dom: Domain,
        weights: Vec<i64>,
    }

    impl HypergridFunction for Weighted {
        fn domain(&self) -> Domain {
            self.dom
        }

        fn value(&self, x: &[u32]) -> Value {
            Value::integer(x.iter().zip(&self.weights).map(|(&c, &w)| c as i64 * w).sum())
        }
    }

    fn eps(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn iteration_count() {
        assert_eq!(monotonicity_iterations(3, 2, eps(1, 8)), 192);
        assert_eq!(monotonicity_iterations(2, 5, eps(1, 3)), 144);
        assert_eq!(monotonicity_iterations(1, 2, eps(99, 100)), 9);
        assert_eq!(monotonicity_iterations(0, 2, eps(1, 2)), 1);
    }

    #[test]
    fn pairs_stay_in_blocks() {
        let mut rng = RandomSource::new(5, 0);
        for n in 2..20u32 {
            let levels = ceil_log2(n as u64);
            for _ in 0..200 {
                let (a, b) = sample_pair(n, levels, &mut rng);
                assert!(a < b && b < n);
                assert!(b - a <= 1 << (levels - 1));
            }
        }
    }

    #[test]
    fn sum_is_accepted() {
        let f = Weighted { dom: Domain::new(5, 4).unwrap(), weights: vec![1; 4] };
        let oracle = FunctionOracle::new(&f);
        let mut rng = RandomSource::new(0, 0);
        for _ in 0..50 {
            let v = monotonicity_tester_directed(&oracle, &Orientation::all_up(4), eps(1, 10), &mut rng).unwrap();
            assert_eq!(v.verdict, Verdict::Accept);
        }
    }

    #[test]
    fn negated_coordinate() {
        let f = Weighted { dom: Domain::hypercube(1).unwrap(), weights: vec![-1] };
        let oracle = FunctionOracle::new(&f);
        let mut rejections = 0;
        for t in 0..1000 {
            let mut rng = RandomSource::new(11, t);
            let v = monotonicity_tester_directed(&oracle, &Orientation::all_up(1), eps(1, 2), &mut rng).unwrap();
            if v.is_reject() {
                assert!(v.witness.as_ref().unwrap().is_confirmed_by(&oracle));
                rejections += 1;
            }
        }
        assert!(rejections * 3 >= 2000, "{rejections} rejections");

        let down = Orientation::from_directions(vec![Direction::Down]);
        for t in 0..200 {
            let mut rng = RandomSource::new(11, t);
            let v = monotonicity_tester_directed(&oracle, &down, eps(1, 2), &mut rng).unwrap();
            assert_eq!(v.verdict, Verdict::Accept);
        }
    }

    #[test]
    fn hypergrid_down_dimension_violation_is_caught() {
        // f = x1 - x2 on [6]^2 is monotone for (up, down) and far for (up, up).
        let f = Weighted { dom: Domain::new(6, 2).unwrap(), weights: vec![1, -1] };
        let oracle = FunctionOracle::new(&f);
        let mut rng = RandomSource::new(2, 0);
        let good = Orientation::from_directions(vec![Direction::Up, Direction::Down]);
        let bad = Orientation::all_up(2);
        for _ in 0..50 {
            assert!(!monotonicity_tester_directed(&oracle, &good, eps(1, 4), &mut rng).unwrap().is_reject());
            let v = monotonicity_tester_directed(&oracle, &bad, eps(1, 4), &mut rng).unwrap();
            assert!(v.is_reject());
            let w = v.witness.unwrap();
            assert_eq!(w.dimension, 1);
            assert!(w.is_confirmed_by(&oracle));
        }
    }

    #[test]
    fn budget_and_arguments() {
        let f = Weighted { dom: Domain::new(7, 3).unwrap(), weights: vec![1, 2, 3] };
        let oracle = FunctionOracle::new(&f);
        let mut rng = RandomSource::new(0, 0);
        let v = monotonicity_tester_directed(&oracle, &Orientation::all_up(3), eps(1, 5), &mut rng).unwrap();
        assert_eq!(v.queries_used, 2 * monotonicity_iterations(3, 7, eps(1, 5)));
        assert!(monotonicity_tester_directed(&oracle, &Orientation::all_up(2), eps(1, 5), &mut rng).is_err());
        assert!(monotonicity_tester_directed(&oracle, &Orientation::all_up(3), eps(0, 1), &mut rng).is_err());
        assert!(monotonicity_tester_directed(&oracle, &Orientation::all_up(3), eps(1, 1), &mut rng).is_err());
    }
}
