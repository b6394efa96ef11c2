//! Function families: the hard constructions for unateness lower bounds and
//! unate / far-from-unate controls. Every generator evaluates lazily, so the
//! large-`d` members can be queried without a table.

mod descriptor;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergrid::{DimSet, Direction, Domain, HypergridFunction, Orientation, TruthTable, Value};

pub use descriptor::{Family, InstanceDescriptor};

/// `(-1)^{Σ_{i ∈ s} x_i}`.
fn character(s: &DimSet, x: &[u32]) -> i64 {
    if s.iter().map(|i| x[i]).sum::<u32>() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn weight(x: &[u32]) -> i64 {
    x.iter().map(|&c| c as i64).sum()
}

fn check_dims(d: usize, sets: &[&DimSet]) -> Result<()> {
    if sets.iter().all(|s| s.is_within(d)) {
        Ok(())
    } else {
        Err(Error::arg(format!("dimension set exceeds d = {d}")))
    }
}

/// `⌈√m⌉` for `m >= 0`.
fn ceil_sqrt(m: u64) -> u64 {
    let r = m.isqrt();
    if r * r == m {
        r
    } else {
        r + 1
    }
}

/// `h(x) = 2|x| + χ_S(x) + χ_T(x)` on `{0,1}^d`. Unate when `S` and `T` are
/// disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySumH {
    domain: Domain,
    s: DimSet,
    t: DimSet,
}

impl ParitySumH {
    pub fn new(d: usize, s: DimSet, t: DimSet) -> Result<Self> {
        check_dims(d, &[&s, &t])?;
        Ok(ParitySumH { domain: Domain::hypercube(d)?, s, t })
    }

    pub fn eval(&self, x: &[u32]) -> i64 {
        2 * weight(x) + character(&self.s, x) + character(&self.t, x)
    }
}

impl HypergridFunction for ParitySumH {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        Value::integer(self.eval(x))
    }
}

pub fn gen_parity_sum_h(d: usize, s: DimSet, t: DimSet) -> Result<ParitySumH> {
    ParitySumH::new(d, s, t)
}

/// `h` clamped outside the band `d/2 - 3√d <= |x| <= d/2 + 3√d`.
///
/// Band membership is decided exactly: `|x| < d/2 - 3√d` iff `d - 2|x| > 0`
/// and `(d - 2|x|)^2 > 36d`, and symmetrically above. The clamp values
/// `d ∓ (6√d + 2)` are rounded outward to `d - 2 - ⌈6√d⌉` and
/// `d + 2 + ⌈6√d⌉`, which equal the exact values when `d` is a perfect square
/// and otherwise stay below (above) every in-band value of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedHPrime {
    h: ParitySumH,
    low: i64,
    high: i64,
}

impl TruncatedHPrime {
    pub fn new(d: usize, s: DimSet, t: DimSet) -> Result<Self> {
        let h = ParitySumH::new(d, s, t)?;
        let (low, high) = Self::clamp_values(d);
        Ok(TruncatedHPrime { h, low, high })
    }

    /// `(d - 2 - ⌈6√d⌉, d + 2 + ⌈6√d⌉)`.
    pub fn clamp_values(d: usize) -> (i64, i64) {
        let six_root = ceil_sqrt(36 * d as u64) as i64;
        (d as i64 - 2 - six_root, d as i64 + 2 + six_root)
    }

    /// Where `|x|` falls relative to the band: `Less`, `Equal` (inside) or `Greater`.
    pub fn band(d: usize, weight: u64) -> std::cmp::Ordering {
        let dev = d as i64 - 2 * weight as i64;
        let outside = (dev as i128) * (dev as i128) > 36 * d as i128;
        match (outside, dev > 0) {
            (false, _) => std::cmp::Ordering::Equal,
            (true, true) => std::cmp::Ordering::Less,
            (true, false) => std::cmp::Ordering::Greater,
        }
    }

    pub fn parity_sum(&self) -> &ParitySumH {
        &self.h
    }

    pub fn eval(&self, x: &[u32]) -> i64 {
        match Self::band(self.h.domain.d(), weight(x) as u64) {
            std::cmp::Ordering::Less => self.low,
            std::cmp::Ordering::Greater => self.high,
            std::cmp::Ordering::Equal => self.h.eval(x),
        }
    }
}

impl HypergridFunction for TruncatedHPrime {
    fn domain(&self) -> Domain {
        self.h.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        Value::integer(self.eval(x))
    }
}

pub fn gen_truncated_hprime(d: usize, s: DimSet, t: DimSet) -> Result<TruncatedHPrime> {
    TruncatedHPrime::new(d, s, t)
}

/// `h(x, y) = g(x)` where `x` is the first `m` coordinates. One inner
/// evaluation per outer one.
pub struct Padded<F> {
    inner: F,
    domain: Domain,
}

impl<F: HypergridFunction> Padded<F> {
    pub fn new(inner: F, d: usize) -> Result<Self> {
        let inner_dom = inner.domain();
        if inner_dom.d() > d {
            return Err(Error::arg(format!("cannot pad a {}-dimensional function to d = {d}", inner_dom.d())));
        }
        let domain = Domain::new(inner_dom.n(), d)?;
        Ok(Padded { inner, domain })
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: HypergridFunction> HypergridFunction for Padded<F> {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        self.inner.value(&x[..self.inner.domain().d()])
    }
}

pub fn gen_padded<F: HypergridFunction>(g: F, d: usize) -> Result<Padded<F>> {
    Padded::new(g, d)
}

/// `f_i` on `{0,1}^d`, `d` even: 1 above `d/2 + √d`, 0 below `d/2 - √d`,
/// `x_i ⊕ x_{i + d/2}` in between. `i` is 0-based here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanHardFi {
    domain: Domain,
    i: usize,
}

impl BooleanHardFi {
    pub fn new(d: usize, i: usize) -> Result<Self> {
        if d == 0 || !d.is_multiple_of(2) {
            return Err(Error::arg(format!("d = {d} must be even and positive")));
        }
        if i >= d / 2 {
            return Err(Error::arg(format!("i = {} outside 1..={}", i + 1, d / 2)));
        }
        Ok(BooleanHardFi { domain: Domain::hypercube(d)?, i })
    }

    pub fn index(&self) -> usize {
        self.i
    }

    pub fn eval(&self, x: &[u32]) -> i64 {
        let d = self.domain.d() as i64;
        let dev = 2 * weight(x) - d;
        // |dev| > 2√d  <=>  dev^2 > 4d
        if dev * dev > 4 * d {
            return if dev > 0 { 1 } else { 0 };
        }
        (x[self.i] ^ x[self.i + self.domain.d() / 2]) as i64
    }
}

impl HypergridFunction for BooleanHardFi {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        Value::integer(self.eval(x))
    }
}

pub fn gen_boolean_hard_fi(d: usize, i: usize) -> Result<BooleanHardFi> {
    BooleanHardFi::new(d, i)
}

/// One threshold of a [`RandomUnate`]: fires when every listed coordinate
/// (after orientation flips) reaches its level.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Threshold {
    levels: Vec<(usize, u32)>,
    value: i64,
}

/// Maximum of random thresholds, composed with per-dimension flips. Monotone
/// under its orientation by construction, so unate. Values lie in `0..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomUnate {
    domain: Domain,
    orientation: Orientation,
    thresholds: Vec<Threshold>,
}

impl RandomUnate {
    /// Draws about `2d` thresholds over one to three coordinates each. With
    /// `orientation = None` a uniform orientation is drawn first.
    pub fn generate<R: Rng + ?Sized>(
        domain: Domain,
        range: u32,
        orientation: Option<Orientation>,
        rng: &mut R,
    ) -> Result<Self> {
        if range == 0 {
            return Err(Error::arg("range size must be at least 1"));
        }
        let d = domain.d();
        let orientation = match orientation {
            Some(o) if o.covers(d) => o,
            Some(_) => return Err(Error::arg("orientation must cover every dimension")),
            None => Orientation::from_directions(
                (0..d).map(|_| if rng.gen() { Direction::Up } else { Direction::Down }).collect(),
            ),
        };
        let count = rng.gen_range(1..=2 * d);
        let thresholds = (0..count)
            .map(|_| {
                let width = rng.gen_range(1..=d.min(3));
                let mut levels: Vec<(usize, u32)> = sample(rng, d, width)
                    .into_iter()
                    .map(|i| (i, rng.gen_range(1..domain.n())))
                    .collect();
                levels.sort_unstable();
                let value = if range == 1 { 0 } else { rng.gen_range(1..range as i64) };
                Threshold { levels, value }
            })
            .collect();
        Ok(RandomUnate { domain, orientation, thresholds })
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn eval(&self, x: &[u32]) -> i64 {
        let n = self.domain.n();
        let dirs = self.orientation.directions();
        let oriented = |i: usize| match dirs[i] {
            Direction::Up => x[i],
            Direction::Down => n - 1 - x[i],
        };
        self.thresholds
            .iter()
            .filter(|t| t.levels.iter().all(|&(i, level)| oriented(i) >= level))
            .map(|t| t.value)
            .max()
            .unwrap_or(0)
    }
}

impl HypergridFunction for RandomUnate {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        Value::integer(self.eval(x))
    }
}

/// A random unate table and the orientation it was built with.
pub fn gen_random_unate<R: Rng + ?Sized>(
    domain: Domain,
    range: u32,
    orientation: Option<Orientation>,
    rng: &mut R,
) -> Result<(TruthTable, Orientation)> {
    let f = RandomUnate::generate(domain, range, orientation, rng)?;
    let table = TruthTable::tabulate(&f)?;
    Ok((table, f.orientation))
}

/// `2 Σ x_i + 2 (-1)^{x_1 + x_2}` on `[n]^d`, `d >= 2`.
///
/// Along dimensions 1 and 2 a unit step changes the value by `2 - 4(-1)^{x_1 + x_2}`,
/// which is `-2` or `+6`, so the function is not unate on any hypergrid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiUnate {
    domain: Domain,
}

impl AntiUnate {
    pub fn new(n: u32, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::arg("anti_unate needs d >= 2"));
        }
        Ok(AntiUnate { domain: Domain::new(n, d)? })
    }

    pub fn eval(&self, x: &[u32]) -> i64 {
        let sign = if (x[0] + x[1]).is_multiple_of(2) { 1 } else { -1 };
        2 * weight(x) + 2 * sign
    }
}

impl HypergridFunction for AntiUnate {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        Value::integer(self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{distance_to_unate, is_monotone_directed, is_unate};
    use crate::hypergrid::{Point, RandomSource, Rational};

    fn set(dims: &[usize]) -> DimSet {
        dims.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn parity_sum_examples() {
        let h = gen_parity_sum_h(3, set(&[1]), set(&[2])).unwrap();
        assert_eq!(h.eval(&[0, 0, 0]), 2);
        assert_eq!(h.eval(&[1, 1, 0]), 2);
        let h4 = gen_parity_sum_h(4, set(&[1]), set(&[2])).unwrap();
        assert!(is_unate(&TruthTable::tabulate(&h4).unwrap()));
        assert!(gen_parity_sum_h(3, set(&[4]), set(&[1])).is_err());
    }

    #[test]
    fn truncated_examples() {
        let h = gen_truncated_hprime(100, set(&[1]), set(&[2])).unwrap();
        assert_eq!(TruncatedHPrime::clamp_values(100), (38, 162));
        assert_eq!(h.eval(&[0; 100]), 38);
        assert_eq!(h.eval(&[1; 100]), 162);
        let mut x = vec![0u32; 100];
        for c in x.iter_mut().skip(2).take(50) {
            *c = 1;
        }
        assert_eq!(Point(x.clone()).hamming_weight(), 50);
        assert_eq!(h.eval(&x), 102);
    }

    #[test]
    fn clamps_bracket_the_band() {
        for d in [5usize, 10, 37, 64, 99, 100, 150] {
            let (low, high) = TruncatedHPrime::clamp_values(d);
            let root = (d as f64).sqrt();
            assert!(low as f64 <= d as f64 - 6.0 * root - 2.0 + 1e-9);
            assert!(high as f64 >= d as f64 + 6.0 * root + 2.0 - 1e-9);
            for w in 0..=d as u64 {
                if TruncatedHPrime::band(d, w) == std::cmp::Ordering::Equal {
                    let lowest_h = 2 * w as i64 - 2;
                    let highest_h = 2 * w as i64 + 2;
                    assert!(low <= lowest_h && highest_h <= high, "d = {d}, |x| = {w}");
                }
            }
        }
    }

    #[test]
    fn band_matches_float_thresholds_off_the_boundary() {
        for d in 1usize..300 {
            let root = (d as f64).sqrt();
            for w in 0..=d as u64 {
                let lo = d as f64 / 2.0 - 3.0 * root;
                let hi = d as f64 / 2.0 + 3.0 * root;
                let wf = w as f64;
                if (wf - lo).abs() < 1e-6 || (wf - hi).abs() < 1e-6 {
                    continue;
                }
                let expected = if wf < lo {
                    std::cmp::Ordering::Less
                } else if wf > hi {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                };
                assert_eq!(TruncatedHPrime::band(d, w), expected, "d = {d}, w = {w}");
            }
        }
    }

    #[test]
    fn hard_fi_examples() {
        let f = gen_boolean_hard_fi(16, 0).unwrap();
        assert_eq!(f.eval(&[1; 16]), 1);
        assert_eq!(f.eval(&[0; 16]), 0);
        let mut x = vec![0u32; 16];
        x[0] = 1;
        for c in x.iter_mut().skip(9).take(7) {
            *c = 1;
        }
        assert_eq!(Point(x.clone()).hamming_weight(), 8);
        assert_eq!(x[8], 0);
        assert_eq!(f.eval(&x), 1);
        assert!(gen_boolean_hard_fi(15, 0).is_err());
        assert!(gen_boolean_hard_fi(16, 8).is_err());
    }

    #[test]
    fn padding() {
        let g = gen_parity_sum_h(2, set(&[1]), set(&[2])).unwrap();
        let same = gen_padded(g.clone(), 2).unwrap();
        for x in g.domain().points().unwrap() {
            assert_eq!(same.value(x.coords()), g.value(x.coords()));
        }
        let padded = gen_padded(g.clone(), 4).unwrap();
        assert!(is_unate(&TruthTable::tabulate(&padded).unwrap()));
        assert!(gen_padded(gen_parity_sum_h(5, set(&[]), set(&[])).unwrap(), 4).is_err());

        let xor = TruthTable::from_fn(Domain::hypercube(2).unwrap(), |x| Value::integer((x[0] ^ x[1]) as i64)).unwrap();
        let padded = TruthTable::tabulate(&gen_padded(xor, 4).unwrap()).unwrap();
        assert_eq!(distance_to_unate(&padded).unwrap(), Rational::new(1, 4));
    }

    #[test]
    fn random_unate_controls() {
        let dom = Domain::hypercube(3).unwrap();
        for seed in 0..50 {
            let mut rng = RandomSource::new(seed, 0);
            let (t, o) = gen_random_unate(dom, 2, None, &mut rng).unwrap();
            assert!(is_unate(&t));
            assert!(is_monotone_directed(&t, &o).unwrap());
            assert!(t.values().iter().all(|v| *v == Value::integer(0) || *v == Value::integer(1)));

            let mut rng = RandomSource::new(seed, 1);
            let (t, _) = gen_random_unate(Domain::new(4, 3).unwrap(), 5, Some(Orientation::all_up(3)), &mut rng).unwrap();
            assert!(is_monotone_directed(&t, &Orientation::all_up(3)).unwrap());
        }
        let a = gen_random_unate(dom, 3, None, &mut RandomSource::new(7, 0)).unwrap();
        let b = gen_random_unate(dom, 3, None, &mut RandomSource::new(7, 0)).unwrap();
        assert_eq!(a, b);
        assert!(gen_random_unate(Domain::hypercube(30).unwrap(), 2, None, &mut RandomSource::new(0, 0)).is_err());
    }

    #[test]
    fn anti_unate_is_not_unate() {
        for (n, d) in [(2, 2), (3, 2), (4, 3)] {
            let t = TruthTable::tabulate(&AntiUnate::new(n, d).unwrap()).unwrap();
            assert!(!is_unate(&t), "n = {n}, d = {d}");
        }
        assert!(AntiUnate::new(3, 1).is_err());
    }
}
