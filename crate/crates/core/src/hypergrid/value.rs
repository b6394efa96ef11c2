use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::Error;

/// Exact rational used for values, probabilities and distances.
pub type Rational = Ratio<i64>;

/// A function value. Ordering and equality are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(Rational);

impl Value {
    pub fn integer(v: i64) -> Self {
        Value(Rational::from_integer(v))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::parse("zero denominator"));
        }
        Ok(Value(Rational::new(numer, denom)))
    }

    pub fn as_rational(&self) -> Rational {
        self.0
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::integer(v)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value(r)
    }
}

/// Integers print bare, everything else as reduced `p/q`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(Value::integer)
                .map_err(|e| Error::parse(format!("bad value {s:?}: {e}"))),
            Some((p, q)) => {
                let p: i64 = p.parse().map_err(|e| Error::parse(format!("bad numerator in {s:?}: {e}")))?;
                let q: i64 = q.parse().map_err(|e| Error::parse(format!("bad denominator in {s:?}: {e}")))?;
                Value::new(p, q)
            }
        }
    }
}

/// Parses `p/q` or an integer into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    s.parse::<Value>().map(|v| v.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(Value::integer(-3).to_string(), "-3");
        assert_eq!(Value::new(2, 4).unwrap().to_string(), "1/2");
        assert_eq!("6/4".parse::<Value>().unwrap(), Value::new(3, 2).unwrap());
        assert_eq!("7".parse::<Value>().unwrap(), Value::integer(7));
        assert!("1/0".parse::<Value>().is_err());
        assert!("x".parse::<Value>().is_err());
        assert!("1.5".parse::<Value>().is_err());
    }

    #[test]
    fn order_is_exact() {
        let third = Value::new(1, 3).unwrap();
        let almost = Value::new(333_333_333, 1_000_000_000).unwrap();
        assert!(almost < third);
        assert_ne!(almost, third);
    }
}
