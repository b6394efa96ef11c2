use std::collections::BTreeMap;

use rand::Rng;

use super::{find_influential_dimension, monotonicity_tester_directed, TesterVerdict, Violation};
use crate::error::{Error, Result};
use crate::hypergrid::{restrict, DimSet, Oracle, Orientation, PartialPoint, Rational};

/// Constant in the query bound `C_TOTAL · d · log₂(max(d, n)) / ε`.
///
/// A run costs at most `2⌈32d/ε⌉ + d⌈log₂ d⌉` queries in the search phase
/// and `2⌈16d⌈log₂ n⌉/ε⌉` in the monotonicity phase. Divided by
/// `d · log₂(max(d, n)) / ε` this peaks just below 98 (at `d = 1`, `n = 2`,
/// `ε → 1/2`); over `d ∈ {8..64}`, `n ∈ {2, 4, 8}` the largest measured ratio
/// is about 41.5.
pub const C_TOTAL: f64 = 100.0;

/// `⌈32 d / ε⌉` rounds of influential-dimension search.
pub fn influential_iterations(d: usize, epsilon: Rational) -> u64 {
    (Rational::from_integer(32 * d as i64) / epsilon).ceil().to_integer() as u64
}

/// `C_TOTAL · d · log₂(max(d, n)) / ε`.
pub fn query_budget(d: usize, n: u32, epsilon: Rational) -> f64 {
    let eps = *epsilon.numer() as f64 / *epsilon.denom() as f64;
    C_TOTAL * d as f64 * (d.max(n as usize) as f64).log2() / eps
}

/// 1-sided error unateness tester for `f: [n]^d -> R`, `ε ∈ (0, 1/2)`.
///
/// Runs `⌈32d/ε⌉` rounds of [`find_influential_dimension`], stopping early
/// once every dimension is known, draws `w` uniformly on the remaining
/// dimensions and tests `f_w` for monotonicity with respect to the collected
/// directions at proximity `ε/2`. A rejection witness is reported in the
/// coordinates of `f`.
pub fn unateness_tester<O, R>(oracle: &O, epsilon: Rational, rng: &mut R) -> Result<TesterVerdict>
where
    O: Oracle + ?Sized,
    R: Rng + ?Sized,
{
    if epsilon <= Rational::from_integer(0) || epsilon >= Rational::new(1, 2) {
        return Err(Error::arg(format!("epsilon {epsilon} outside (0, 1/2)")));
    }
    let dom = oracle.domain();
    let d = dom.d();
    let start = oracle.query_count();

    let mut t = DimSet::empty();
    let mut directions = BTreeMap::new();
    for _ in 0..influential_iterations(d, epsilon) {
        if t.len() == d {
            break;
        }
        if let Some(hit) = find_influential_dimension(oracle, &t, rng) {
            t.insert(hit.dimension);
            directions.insert(hit.dimension, hit.direction);
        }
    }

    let rest = t.complement(d);
    let w_coords: Vec<u32> = (0..rest.len()).map(|_| rng.gen_range(0..dom.n())).collect();
    let w = PartialPoint::on(&rest, &w_coords)?;
    let fw = restrict(oracle, &t, &w)?;
    let orientation = Orientation::from_directions(t.iter().map(|i| directions[&i]).collect());
    let inner = monotonicity_tester_directed(&fw, &orientation, epsilon / 2, rng)?;

    let witness = inner.witness.map(|v| Violation {
        dimension: t.as_slice()[v.dimension],
        direction: v.direction,
        lower: fw.lift(v.lower.coords()),
        upper: fw.lift(v.upper.coords()),
        lower_value: v.lower_value,
        upper_value: v.upper_value,
    });
    Ok(TesterVerdict { verdict: inner.verdict, queries_used: oracle.query_count() - start, witness })
}


/// Worst-case query count of [`unateness_tester`] on `[n]^d`.
pub fn worst_case_queries(d: usize, n: u32, epsilon: Rational) -> u64 {
    let log_d = crate::hypergrid::ceil_log2(d as u64) as u64;
    2 * influential_iterations(d, epsilon) + d as u64 * log_d + 2 * super::monotonicity_iterations(d, n, epsilon / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergrid::{Domain, FunctionOracle, HypergridFunction, RandomSource, Value};
    use crate::testers::Verdict;

    struct Sum(Domain);

    impl HypergridFunction for Sum {
        fn domain(&self) -> Domain {
            self.0
        }

        fn value(&self, x: &[u32]) -> Value {
            Value::integer(x.iter().map(|&c| c as i64).sum())
        }
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(influential_iterations(8, Rational::new(1, 4)), 1024);
        assert_eq!(influential_iterations(3, Rational::new(1, 3)), 288);
        assert_eq!(influential_iterations(5, Rational::new(2, 7)), 560);
        assert_eq!(influential_iterations(1, Rational::new(3, 7)), 75);
    }

    #[test]
    fn budget_covers_the_worst_case() {
        let mut epsilons: Vec<Rational> = (1..500).step_by(7).map(|k| Rational::new(k, 1000)).collect();
        epsilons.extend([Rational::new(499, 1000), Rational::new(1, 16), Rational::new(1, 3)]);
        for d in (1..=64).chain([100, 128, 256]) {
            for n in [2u32, 3, 4, 5, 7, 8, 9, 16, 17, 100, 4096] {
                for &eps in &epsilons {
                    let worst = worst_case_queries(d, n, eps) as f64;
                    assert!(worst <= query_budget(d, n, eps), "d = {d}, n = {n}, eps = {eps}");
                }
            }
        }
    }

    #[test]
    fn epsilon_range() {
        let f = Sum(Domain::hypercube(2).unwrap());
        let oracle = FunctionOracle::new(&f);
        let mut rng = RandomSource::new(0, 0);
        for bad in [Rational::new(0, 1), Rational::new(1, 2), Rational::new(3, 4), Rational::new(-1, 4)] {
            assert!(unateness_tester(&oracle, bad, &mut rng).is_err());
        }
        assert!(unateness_tester(&oracle, Rational::new(49, 100), &mut rng).is_ok());
    }

    #[test]
    fn monotone_sum_is_always_accepted() {
        let f = Sum(Domain::hypercube(8).unwrap());
        for t in 0..300 {
            let oracle = FunctionOracle::new(&f);
            let mut rng = RandomSource::new(0, t);
            let v = unateness_tester(&oracle, Rational::new(1, 4), &mut rng).unwrap();
            assert_eq!(v.verdict, Verdict::Accept);
            assert_eq!(v.queries_used, oracle.query_count());
            assert!((v.queries_used as f64) <= query_budget(8, 2, Rational::new(1, 4)));
        }
    }
}
