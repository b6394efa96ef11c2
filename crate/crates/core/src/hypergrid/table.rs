use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use super::{Domain, HypergridFunction, Value};
use crate::error::{Error, Result};

/// Largest table (in points) the crate will materialize.
pub const TABLE_CAP: usize = 1 << 22;

/// A fully materialized function, stored in odometer order.
///
/// Text form: a `hypergrid <n> <d>` header line followed by `n^d` lines, one
/// value each (`-3`, `7/2`), with coordinate 1 varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    domain: Domain,
    values: Vec<Value>,
}

impl TruthTable {
    pub fn new(domain: Domain, values: Vec<Value>) -> Result<Self> {
        let size = domain.size()?;
        if values.len() != size {
            return Err(Error::arg(format!(
                "{} values for a domain of {} points",
                values.len(),
                size
            )));
        }
        Ok(TruthTable { domain, values })
    }

    pub fn from_fn(domain: Domain, mut f: impl FnMut(&[u32]) -> Value) -> Result<Self> {
        check_cap(&domain)?;
        let values = domain.points()?.map(|x| f(x.coords())).collect();
        Ok(TruthTable { domain, values })
    }

    /// Evaluates `f` at every point.
    pub fn tabulate(f: &dyn HypergridFunction) -> Result<Self> {
        TruthTable::from_fn(f.domain(), |x| f.value(x))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, x: &[u32]) -> Value {
        self.values[self.domain.index_unchecked(x)]
    }

    /// Distinct values in increasing order.
    pub fn distinct_values(&self) -> Vec<Value> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "hypergrid {} {}", self.domain.n(), self.domain.d())?;
        for v in &self.values {
            writeln!(out, "{v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("table text is ASCII")
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::parse("empty table file"))??;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("hypergrid") {
            return Err(Error::parse(format!("bad header {header:?}")));
        }
        let mut field = |name: &str| {
            parts
                .next()
                .ok_or_else(|| Error::parse(format!("header is missing {name}")))
        };
        let n: u32 = field("n")?.parse().map_err(|e| Error::parse(format!("bad n: {e}")))?;
        let d: usize = field("d")?.parse().map_err(|e| Error::parse(format!("bad d: {e}")))?;
        if parts.next().is_some() {
            return Err(Error::parse(format!("trailing fields in header {header:?}")));
        }
        let domain = Domain::new(n, d)?;
        let size = check_cap(&domain)?;
        let mut values = Vec::with_capacity(size);
        for (k, line) in lines.enumerate() {
            let line = line?;
            if values.len() == size {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(Error::parse(format!("more than {size} values")));
            }
            let v = line
                .parse::<Value>()
                .map_err(|e| Error::parse(format!("line {}: {e}", k + 2)))?;
            values.push(v);
        }
        if values.len() != size {
            return Err(Error::parse(format!("expected {size} values, found {}", values.len())));
        }
        Ok(TruthTable { domain, values })
    }

    pub fn parse(text: &str) -> Result<Self> {
        TruthTable::read_from(text.as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = fs::File::open(path)?;
        TruthTable::read_from(io::BufReader::new(file))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = io::BufWriter::new(fs::File::create(path)?);
        self.write_to(&mut file)?;
        file.flush()?;
        Ok(())
    }
}

impl HypergridFunction for TruthTable {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn value(&self, x: &[u32]) -> Value {
        self.at(x)
    }
}

fn check_cap(domain: &Domain) -> Result<usize> {
    match domain.checked_size() {
        Some(size) if size <= TABLE_CAP => Ok(size),
        other => Err(Error::Capacity {
            what: "truth table",
            size: other.map_or(u128::MAX, |s| s as u128),
            cap: TABLE_CAP as u128,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_format_layout() {
        let dom = Domain::new(3, 1).unwrap();
        let t = TruthTable::new(
            dom,
            vec![Value::integer(-1), Value::new(7, 2).unwrap(), Value::integer(0)],
        )
        .unwrap();
        assert_eq!(t.to_text(), "hypergrid 3 1\n-1\n7/2\n0\n");
    }

    #[test]
    fn parse_errors() {
        assert!(TruthTable::parse("").is_err());
        assert!(TruthTable::parse("grid 2 1\n0\n1\n").is_err());
        assert!(TruthTable::parse("hypergrid 2 1\n0\n").is_err());
        assert!(TruthTable::parse("hypergrid 2 1\n0\n1\n2\n").is_err());
        assert!(TruthTable::parse("hypergrid 2 1\n0\n1/0\n").is_err());
        assert!(TruthTable::parse("hypergrid 1 1\n0\n").is_err());
        assert!(matches!(
            TruthTable::parse("hypergrid 2 30\n"),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.txt");
        let t = TruthTable::from_fn(Domain::new(2, 3).unwrap(), |x| {
            Value::integer(x.iter().map(|&c| c as i64).sum())
        })
        .unwrap();
        t.save(&path).unwrap();
        assert_eq!(TruthTable::load(&path).unwrap(), t);
    }

    proptest! {
        #[test]
        fn writer_and_reader_are_inverse(
            n in 2u32..5,
            d in 1usize..4,
            raw in proptest::collection::vec((-50i64..50, 1i64..7), 64),
        ) {
            let dom = Domain::new(n, d).unwrap();
            let size = dom.size().unwrap();
            let values = raw.iter().cycle().take(size)
                .map(|&(p, q)| Value::new(p, q).unwrap())
                .collect();
            let table = TruthTable::new(dom, values).unwrap();
            let text = table.to_text();
            let back = TruthTable::parse(&text).unwrap();
            prop_assert_eq!(&back, &table);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
