//! Text names for instances: `family key=value ...`.
//!
//! ```text
//! parity_sum_h d=4 S=1 T=2
//! truncated_hprime d=100 S=1,2 T=2,3
//! padded d=6 inner=(parity_sum_h d=2 S=1 T=2)
//! boolean_hard_fi d=16 i=1
//! random_unate n=4 d=3 r=5 seed=7
//! anti_unate n=3 d=4
//! explicit_table path=tables/xor.txt
//! ```
//!
//! Dimension numbers are 1-based. An empty set is written `S=`. Values may
//! not contain whitespace, except inside the parentheses of `inner`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{AntiUnate, BooleanHardFi, Padded, ParitySumH, RandomUnate, TruncatedHPrime};
use crate::error::{Error, Result};
use crate::hypergrid::{DimSet, Domain, HypergridFunction, RandomSource, TruthTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ParitySumH,
    TruncatedHPrime,
    Padded,
    BooleanHardFi,
    RandomUnate,
    AntiUnate,
    ExplicitTable,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::ParitySumH,
        Family::TruncatedHPrime,
        Family::Padded,
        Family::BooleanHardFi,
        Family::RandomUnate,
        Family::AntiUnate,
        Family::ExplicitTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ParitySumH => "parity_sum_h",
            Family::TruncatedHPrime => "truncated_hprime",
            Family::Padded => "padded",
            Family::BooleanHardFi => "boolean_hard_fi",
            Family::RandomUnate => "random_unate",
            Family::AntiUnate => "anti_unate",
            Family::ExplicitTable => "explicit_table",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceDescriptor {
    ParitySumH { d: usize, s: DimSet, t: DimSet },
    TruncatedHPrime { d: usize, s: DimSet, t: DimSet },
    Padded { d: usize, inner: Box<InstanceDescriptor> },
    /// `i` is 0-based; the text form is 1-based.
    BooleanHardFi { d: usize, i: usize },
    RandomUnate { n: u32, d: usize, range: u32, seed: u64 },
    AntiUnate { n: u32, d: usize },
    ExplicitTable { path: PathBuf },
}

impl InstanceDescriptor {
    pub fn family(&self) -> Family {
        match self {
            InstanceDescriptor::ParitySumH { .. } => Family::ParitySumH,
            InstanceDescriptor::TruncatedHPrime { .. } => Family::TruncatedHPrime,
            InstanceDescriptor::Padded { .. } => Family::Padded,
            InstanceDescriptor::BooleanHardFi { .. } => Family::BooleanHardFi,
            InstanceDescriptor::RandomUnate { .. } => Family::RandomUnate,
            InstanceDescriptor::AntiUnate { .. } => Family::AntiUnate,
            InstanceDescriptor::ExplicitTable { .. } => Family::ExplicitTable,
        }
    }

    /// The canonical `key=value` list without the family name.
    pub fn params(&self) -> String {
        match self {
            InstanceDescriptor::ParitySumH { d, s, t } | InstanceDescriptor::TruncatedHPrime { d, s, t } => {
                format!("d={d} S={} T={}", format_set(s), format_set(t))
            }
            InstanceDescriptor::Padded { d, inner } => format!("d={d} inner=({inner})"),
            InstanceDescriptor::BooleanHardFi { d, i } => format!("d={d} i={}", i + 1),
            InstanceDescriptor::RandomUnate { n, d, range, seed } => format!("n={n} d={d} r={range} seed={seed}"),
            InstanceDescriptor::AntiUnate { n, d } => format!("n={n} d={d}"),
            InstanceDescriptor::ExplicitTable { path } => format!("path={}", path.display()),
        }
    }

    /// Builds the function. Everything except explicit tables is evaluated
    /// lazily.
    pub fn materialize(&self) -> Result<Box<dyn HypergridFunction>> {
        Ok(match self {
            InstanceDescriptor::ParitySumH { d, s, t } => Box::new(ParitySumH::new(*d, s.clone(), t.clone())?),
            InstanceDescriptor::TruncatedHPrime { d, s, t } => {
                Box::new(TruncatedHPrime::new(*d, s.clone(), t.clone())?)
            }
            InstanceDescriptor::Padded { d, inner } => Box::new(Padded::new(inner.materialize()?, *d)?),
            InstanceDescriptor::BooleanHardFi { d, i } => Box::new(BooleanHardFi::new(*d, *i)?),
            InstanceDescriptor::RandomUnate { n, d, range, seed } => {
                let mut rng = RandomSource::new(*seed, 0);
                Box::new(RandomUnate::generate(Domain::new(*n, *d)?, *range, None, &mut rng)?)
            }
            InstanceDescriptor::AntiUnate { n, d } => Box::new(AntiUnate::new(*n, *d)?),
            InstanceDescriptor::ExplicitTable { path } => Box::new(TruthTable::load(path)?),
        })
    }

    /// The same family resized to `[n]^d`. Hypercube families only accept
    /// `n = 2`; explicit tables only their own shape.
    pub fn with_shape(&self, d: usize, n: u32) -> Result<Self> {
        let cube_only = |family: Family| {
            if n == 2 {
                Ok(())
            } else {
                Err(Error::arg(format!("{family} is defined on {{0,1}}^d only, not n = {n}")))
            }
        };
        Ok(match self {
            InstanceDescriptor::ParitySumH { s, t, .. } => {
                cube_only(self.family())?;
                InstanceDescriptor::ParitySumH { d, s: s.clone(), t: t.clone() }
            }
            InstanceDescriptor::TruncatedHPrime { s, t, .. } => {
                cube_only(self.family())?;
                InstanceDescriptor::TruncatedHPrime { d, s: s.clone(), t: t.clone() }
            }
            InstanceDescriptor::Padded { inner, .. } => {
                cube_only(self.family())?;
                InstanceDescriptor::Padded { d, inner: inner.clone() }
            }
            InstanceDescriptor::BooleanHardFi { i, .. } => {
                cube_only(self.family())?;
                InstanceDescriptor::BooleanHardFi { d, i: *i }
            }
            InstanceDescriptor::RandomUnate { range, seed, .. } => {
                InstanceDescriptor::RandomUnate { n, d, range: *range, seed: *seed }
            }
            InstanceDescriptor::AntiUnate { .. } => InstanceDescriptor::AntiUnate { n, d },
            InstanceDescriptor::ExplicitTable { path } => {
                let dom = TruthTable::load(path)?.domain();
                if dom.d() != d || dom.n() != n {
                    return Err(Error::arg(format!("{} has shape {dom}, not [{n}]^{d}", path.display())));
                }
                self.clone()
            }
        })
    }
}

impl fmt::Display for InstanceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family(), self.params())
    }
}

impl FromStr for InstanceDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let (family, rest) = tokens.split_first().ok_or_else(|| Error::parse("empty descriptor"))?;
        let family: Family = family.parse()?;
        let mut params = Params::new(family, rest)?;
        let desc = match family {
            Family::ParitySumH => InstanceDescriptor::ParitySumH {
                d: params.number("d")?,
                s: params.set("S")?,
                t: params.set("T")?,
            },
            Family::TruncatedHPrime => InstanceDescriptor::TruncatedHPrime {
                d: params.number("d")?,
                s: params.set("S")?,
                t: params.set("T")?,
            },
            Family::Padded => {
                let d = params.number("d")?;
                let inner = params.take("inner")?;
                let inner = inner
                    .strip_prefix('(')
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| Error::parse("padded: inner must be parenthesised"))?;
                InstanceDescriptor::Padded { d, inner: Box::new(inner.parse()?) }
            }
            Family::BooleanHardFi => {
                let d = params.number("d")?;
                let i: usize = params.number("i")?;
                if i == 0 {
                    return Err(Error::parse("boolean_hard_fi: i is 1-based"));
                }
                InstanceDescriptor::BooleanHardFi { d, i: i - 1 }
            }
            Family::RandomUnate => InstanceDescriptor::RandomUnate {
                n: params.number("n")?,
                d: params.number("d")?,
                range: params.number("r")?,
                seed: params.number("seed")?,
            },
            Family::AntiUnate => InstanceDescriptor::AntiUnate { n: params.number("n")?, d: params.number("d")? },
            Family::ExplicitTable => InstanceDescriptor::ExplicitTable { path: PathBuf::from(params.take("path")?) },
        };
        params.finish()?;
        Ok(desc)
    }
}

fn format_set(s: &DimSet) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Splits on whitespace outside parentheses.
fn tokenize(s: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::parse("unbalanced ')'"))?;
            }
            c if c.is_whitespace() && depth == 0 => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if depth != 0 {
        return Err(Error::parse("unbalanced '('"));
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    Ok(tokens)
}

struct Params {
    family: Family,
    values: BTreeMap<String, String>,
}

impl Params {
    fn new(family: Family, tokens: &[String]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for token in tokens {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("{family}: expected key=value, got {token:?}")))?;
            if values.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(Error::parse(format!("{family}: duplicate key {key:?}")));
            }
        }
        Ok(Params { family, values })
    }

    fn take(&mut self, key: &str) -> Result<String> {
        self.values
            .remove(key)
            .ok_or_else(|| Error::parse(format!("{}: missing {key}=", self.family)))
    }

    fn number<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self.take(key)?;
        raw.parse()
            .map_err(|_| Error::parse(format!("{}: {key}={raw:?} is not a non-negative integer", self.family)))
    }

    fn set(&mut self, key: &str) -> Result<DimSet> {
        let raw = self.take(key)?;
        let inner = raw.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(&raw);
        if inner.is_empty() {
            return Ok(DimSet::empty());
        }
        inner
            .split(',')
            .map(|item| match item.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::parse(format!("{}: malformed {key}={raw:?}", self.family))),
            })
            .collect()
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            Some(key) => Err(Error::parse(format!("{}: unknown key {key:?}", self.family))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_parity_sum_h;
    use proptest::prelude::*;

    fn parse(s: &str) -> InstanceDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn parity_descriptor_matches_generator() {
        let f = parse("parity_sum_h d=4 S=1 T=2").materialize().unwrap();
        let g = gen_parity_sum_h(4, DimSet::from([0]), DimSet::from([1])).unwrap();
        assert_eq!(f.domain(), g.domain());
        for x in g.domain().points().unwrap() {
            assert_eq!(f.value(x.coords()), g.value(x.coords()));
        }
    }

    #[test]
    fn explicit_table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.txt");
        let table = TruthTable::parse("hypergrid 3 2\n0\n1\n2\n1\n2\n3\n2\n3\n5\n").unwrap();
        table.save(&path).unwrap();
        let desc = parse(&format!("explicit_table path={}", path.display()));
        let f = desc.materialize().unwrap();
        assert_eq!(TruthTable::tabulate(&*f).unwrap(), table);
        assert_eq!(desc.with_shape(2, 3).unwrap(), desc);
        assert!(desc.with_shape(3, 3).is_err());
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "nope d=3",
            "parity_sum_h d=4 S=x T=2",
            "parity_sum_h d=4 S=0 T=2",
            "parity_sum_h d=4 S=1,,2 T=2",
            "parity_sum_h d=4 S=1",
            "parity_sum_h d=4 S=1 T=2 q=1",
            "parity_sum_h d=4 S=1 S=2 T=2",
            "parity_sum_h d=-4 S=1 T=2",
            "padded d=4 inner=parity_sum_h",
            "padded d=4 inner=(parity_sum_h d=2 S=1 T=2",
            "boolean_hard_fi d=8 i=0",
            "anti_unate n=3",
        ] {
            assert!(bad.parse::<InstanceDescriptor>().is_err(), "{bad:?}");
        }
        assert!(parse("parity_sum_h d=3 S=4 T=1").materialize().is_err());
        assert!(parse("boolean_hard_fi d=7 i=1").materialize().is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(parse("parity_sum_h  d=4 T={2,3}  S=").to_string(), "parity_sum_h d=4 S= T=2,3");
        let padded = parse("padded d=6 inner=( parity_sum_h d=2 S=1 T=2 )");
        assert_eq!(padded.to_string(), "padded d=6 inner=(parity_sum_h d=2 S=1 T=2)");
        assert_eq!(padded.materialize().unwrap().domain(), Domain::hypercube(6).unwrap());
        let nested = parse("padded d=8 inner=(padded d=4 inner=(boolean_hard_fi d=2 i=1))");
        assert_eq!(parse(&nested.to_string()), nested);
    }

    #[test]
    fn reshaping() {
        let h = parse("parity_sum_h d=4 S=1 T=2");
        assert_eq!(h.with_shape(8, 2).unwrap().to_string(), "parity_sum_h d=8 S=1 T=2");
        assert!(h.with_shape(8, 4).is_err());
        let a = parse("anti_unate n=2 d=2").with_shape(64, 8).unwrap();
        assert_eq!(a.materialize().unwrap().domain(), Domain::new(8, 64).unwrap());
        let r = parse("random_unate n=2 d=3 r=4 seed=9").with_shape(64, 4).unwrap();
        assert_eq!(r.to_string(), "random_unate n=4 d=64 r=4 seed=9");
    }

    fn arb_set() -> impl Strategy<Value = DimSet> {
        prop::collection::btree_set(0usize..12, 0..5).prop_map(|s| s.into_iter().collect())
    }

    fn arb_leaf() -> impl Strategy<Value = InstanceDescriptor> {
        prop_oneof![
            (1usize..12, arb_set(), arb_set()).prop_map(|(d, s, t)| InstanceDescriptor::ParitySumH { d, s, t }),
            (1usize..12, arb_set(), arb_set()).prop_map(|(d, s, t)| InstanceDescriptor::TruncatedHPrime { d, s, t }),
            (1usize..40, 0usize..20).prop_map(|(d, i)| InstanceDescriptor::BooleanHardFi { d, i }),
            (2u32..9, 1usize..70, 1u32..10, any::<u64>())
                .prop_map(|(n, d, range, seed)| InstanceDescriptor::RandomUnate { n, d, range, seed }),
            (2u32..9, 1usize..70).prop_map(|(n, d)| InstanceDescriptor::AntiUnate { n, d }),
            "[a-z0-9_/.]{1,16}".prop_map(|p| InstanceDescriptor::ExplicitTable { path: PathBuf::from(p) }),
        ]
    }

    fn arb_descriptor() -> impl Strategy<Value = InstanceDescriptor> {
        arb_leaf().prop_recursive(3, 8, 1, |inner| {
            (1usize..20, inner).prop_map(|(d, inner)| InstanceDescriptor::Padded { d, inner: Box::new(inner) })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(desc in arb_descriptor()) {
            let text = desc.to_string();
            let back: InstanceDescriptor = text.parse().unwrap();
            prop_assert_eq!(&back, &desc);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
