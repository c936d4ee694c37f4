//! Count tables: contiguous maps from size `n` to an arbitrary-precision
//! nonnegative count, with text and JSON serialization.
//!
//! Tables always carry an entry for `n = 0`. Both polyomino counts and
//! inconstructible counts use the convention `P(0) = Q(0) = 1`, which the
//! text parser inserts automatically (files list values from `n = 1`).

use std::fmt;
use std::io::{self, BufRead};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// How a table was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableOrigin {
    /// Counted by the enumerator in this process.
    Enumerated,
    /// Read from an external file.
    Ingested,
    /// Computed from another table.
    Derived,
}

impl TableOrigin {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Enumerated => "enumerated",
            Self::Ingested => "ingested",
            Self::Derived => "derived",
        }
    }
}

impl fmt::Display for TableOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Errors from parsing a count table.
#[derive(Debug)]
pub enum TableError {
    /// Sizes skip or run backwards, e.g. `n = 1` followed by `n = 3`.
    NonContiguous {
        line: usize,
        expected: usize,
        got: usize,
    },
    /// Same `n` listed twice.
    Duplicate {
        line: usize,
        n: usize,
    },
    /// Not an `n value` or bare-value line, or a non-positive count.
    Malformed {
        line: usize,
        reason: String,
    },
    /// No data lines at all.
    Empty,
    Io(io::Error),
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonContiguous {
                line,
                expected,
                got,
            } => write!(
                f,
                "non-contiguous: line {line} has n = {got}, expected n = {expected}"
            ),
            Self::Duplicate { line, n } => write!(f, "duplicate: line {line} repeats n = {n}"),
            Self::Malformed { line, reason } => write!(f, "malformed: line {line}: {reason}"),
            Self::Empty => write!(f, "malformed: table has no values"),
            Self::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl std::error::Error for TableError {}

impl From<io::Error> for TableError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// A contiguous table of counts for `0 ..= max_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    origin: TableOrigin,
    values: Vec<BigUint>,
}

impl CountTable {
    /// Builds a table from counts for `n = 1 ..`; the `n = 0` entry is set
    /// to 1 by convention.
    pub fn from_counts<I>(origin: TableOrigin, counts: I) -> Self
    where
        I: IntoIterator<Item = BigUint>,
    {
        let mut values = vec![BigUint::one()];
        values.extend(counts);
        CountTable { origin, values }
    }

    /// Builds a table from explicit values starting at `n = 0`.
    pub fn from_values_with_zero(origin: TableOrigin, values: Vec<BigUint>) -> Self {
        assert!(!values.is_empty(), "table needs at least the n = 0 entry");
        CountTable { origin, values }
    }

    pub fn origin(&self) -> TableOrigin {
        self.origin
    }

    /// Largest `n` with a value.
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// The count at `n`; panics when `n > max_n`.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn try_get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    /// Values for `n = 1 ..= max_n` (the conventional `n = 0` entry skipped).
    pub fn counts(&self) -> &[BigUint] {
        &self.values[1..]
    }

    /// Parses the text form: one `n<whitespace>value` or bare `value` line
    /// per size, `#` comments allowed, sizes contiguous from 1.
    pub fn parse<R: BufRead>(origin: TableOrigin, reader: R) -> Result<Self, TableError> {
        let mut values = vec![BigUint::one()];
        let mut last_n = 0usize;
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let data = match line.split_once('#') {
                Some((before, _)) => before.trim(),
                None => line.trim(),
            };
            if data.is_empty() {
                continue;
            }
            let mut tokens = data.split_whitespace();
            let first = tokens.next().expect("nonempty line has a token");
            let second = tokens.next();
            if tokens.next().is_some() {
                return Err(TableError::Malformed {
                    line: lineno,
                    reason: format!("expected `n value` or `value`, got {data:?}"),
                });
            }
            let (n, raw) = match second {
                Some(value) => {
                    let n = first.parse::<usize>().map_err(|e| TableError::Malformed {
                        line: lineno,
                        reason: format!("bad size {first:?}: {e}"),
                    })?;
                    (n, value)
                }
                None => (last_n + 1, first),
            };
            if n == last_n && n > 0 {
                return Err(TableError::Duplicate { line: lineno, n });
            }
            if n != last_n + 1 {
                return Err(TableError::NonContiguous {
                    line: lineno,
                    expected: last_n + 1,
                    got: n,
                });
            }
            let value = parse_count(raw).map_err(|reason| TableError::Malformed {
                line: lineno,
                reason,
            })?;
            values.push(value);
            last_n = n;
        }
        if last_n == 0 {
            return Err(TableError::Empty);
        }
        Ok(CountTable { origin, values })
    }

    pub fn parse_str(origin: TableOrigin, text: &str) -> Result<Self, TableError> {
        Self::parse(origin, text.as_bytes())
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self, TableError> {
        let file = std::fs::File::open(path)?;
        Self::parse(TableOrigin::Ingested, io::BufReader::new(file))
    }

    /// Text form: `n<TAB>value` lines for `n = 1 ..= max_n`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, v) in self.values.iter().enumerate().skip(1) {
            out.push_str(&format!("{n}\t{v}\n"));
        }
        out
    }

    /// JSON form with counts as decimal strings (they exceed 64-bit range).
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (n, v) in self.values.iter().enumerate().skip(1) {
            map.insert(n.to_string(), serde_json::Value::String(v.to_string()));
        }
        serde_json::json!({
            "origin": self.origin.as_str(),
            "max_n": self.max_n(),
            "values": map,
        })
    }

    /// Parses the JSON form produced by [`CountTable::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self, TableError> {
        let origin = match value.get("origin").and_then(|v| v.as_str()) {
            Some("enumerated") => TableOrigin::Enumerated,
            Some("ingested") => TableOrigin::Ingested,
            Some("derived") => TableOrigin::Derived,
            other => {
                return Err(TableError::Malformed {
                    line: 0,
                    reason: format!("bad origin {other:?}"),
                })
            }
        };
        let values =
            value
                .get("values")
                .and_then(|v| v.as_object())
                .ok_or(TableError::Malformed {
                    line: 0,
                    reason: "missing values object".into(),
                })?;
        let max_n = value
            .get("max_n")
            .and_then(|v| v.as_u64())
            .ok_or(TableError::Malformed {
                line: 0,
                reason: "missing max_n".into(),
            })? as usize;
        let mut counts = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let raw = values.get(&n.to_string()).and_then(|v| v.as_str()).ok_or(
                TableError::NonContiguous {
                    line: 0,
                    expected: n,
                    got: 0,
                },
            )?;
            let count =
                parse_count(raw).map_err(|reason| TableError::Malformed { line: 0, reason })?;
            counts.push(count);
        }
        Ok(Self::from_counts(origin, counts))
    }
}

fn parse_count(raw: &str) -> Result<BigUint, String> {
    if raw.starts_with('-') {
        return Err(format!("negative value {raw:?}"));
    }
    let value: BigUint = raw.parse().map_err(|e| format!("bad value {raw:?}: {e}"))?;
    if value.is_zero() {
        return Err(format!("value must be positive, got {raw:?}"));
    }
    Ok(value)
}
