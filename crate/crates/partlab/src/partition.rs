//! Canonical partition representation.
//!
//! A partition is a weakly decreasing multiset of integer parts. Parts are
//! positive except for class D, which admits the value 0 behind an explicit
//! flag so zeros cannot leak into any other class. The weight (sum of parts)
//! is cached at construction and all arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition: parts stored weakly decreasing, weight cached.
///
/// Equality and hashing look at the parts only; the zero-parts flag is
/// construction metadata.
#[derive(Debug, Clone)]
pub struct Partition {
    parts: Vec<u64>,
    weight: u64,
    zeros_allowed: bool,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Partition {
    /// The empty partition, the unique partition of 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            weight: 0,
            zeros_allowed: false,
        }
    }

    /// Build a partition from part values in any order.
    ///
    /// Zeros are rejected unless `allow_zero` is set; negative values are
    /// always rejected.
    pub fn from_parts<I>(values: I, allow_zero: bool) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut parts = Vec::new();
        for v in values {
            if v < 0 {
                return Err(Error::NegativePart(v));
            }
            if v == 0 && !allow_zero {
                return Err(Error::ZeroPartNotAllowed);
            }
            parts.push(v as u64);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Ok(Partition {
            parts,
            weight,
            zeros_allowed: allow_zero,
        })
    }

    /// Internal constructor for parts already known valid (each >= 1).
    pub(crate) fn from_unsorted_positive(mut parts: Vec<u64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p >= 1));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Partition {
            parts,
            weight,
            zeros_allowed: false,
        }
    }

    /// Internal constructor for an already weakly decreasing sequence.
    pub(crate) fn from_sorted(parts: Vec<u64>, zeros_allowed: bool) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(zeros_allowed || parts.iter().all(|&p| p >= 1));
        let weight = parts.iter().sum();
        Partition {
            parts,
            weight,
            zeros_allowed,
        }
    }

    /// Parts, weakly decreasing.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of parts.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Largest part; 0 for the empty partition by convention.
    pub fn largest_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Smallest part; `None` for the empty partition.
    pub fn smallest_part(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    /// Number of parts, counted with multiplicity.
    pub fn num_parts(&self) -> u64 {
        self.parts.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Whether the zero-parts flag was set at construction.
    pub fn zeros_allowed(&self) -> bool {
        self.zeros_allowed
    }

    /// Whether the value 0 actually occurs among the parts.
    pub fn has_zero_part(&self) -> bool {
        self.parts.last() == Some(&0)
    }

    /// Multiplicity of `t` among the parts.
    pub fn frequency(&self, t: u64) -> u64 {
        // parts are sorted descending: binary-search the run of t
        let lo = self.parts.partition_point(|&p| p > t);
        let hi = self.parts.partition_point(|&p| p >= t);
        (hi - lo) as u64
    }

    /// (value, multiplicity) pairs in increasing value order.
    pub fn frequencies(&self) -> FrequencyView {
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match pairs.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => pairs.push((p, 1)),
            }
        }
        FrequencyView { pairs }
    }

    /// Multiset union: frequencies add, weights add.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        // merge two descending sequences
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        let weight = self.weight + other.weight;
        Partition {
            parts,
            weight,
            zeros_allowed: self.zeros_allowed || other.zeros_allowed,
        }
    }

    /// Remove one copy of `value`; `None` if absent.
    pub fn remove_one(&self, value: u64) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == value)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        let weight = self.weight - value;
        Some(Partition {
            parts,
            weight,
            zeros_allowed: self.zeros_allowed,
        })
    }

    /// Canonical text form: comma-separated parts, weakly decreasing.
    /// The empty partition renders as `-`.
    pub fn canonical_string(&self) -> String {
        if self.parts.is_empty() {
            return "-".to_string();
        }
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Compact exponent form, e.g. `8,2^2,1^14` (decreasing values).
    pub fn compact_string(&self) -> String {
        if self.parts.is_empty() {
            return "-".to_string();
        }
        let view = self.frequencies();
        view.pairs
            .iter()
            .rev()
            .map(|&(v, m)| {
                if m == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse the CLI text syntax: comma-separated parts in any order, with
    /// optional exponent notation (`1^5` expands to five 1s). An empty
    /// string or `-` denotes the empty partition.
    pub fn parse(input: &str, allow_zero: bool) -> Result<Partition> {
        let trimmed = input.trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(if allow_zero {
                Partition {
                    parts: Vec::new(),
                    weight: 0,
                    zeros_allowed: true,
                }
            } else {
                Partition::empty()
            });
        }
        let mut values: Vec<i64> = Vec::new();
        for token in trimmed.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::Parse(format!("empty token in \"{input}\"")));
            }
            let (value_str, count) = match token.split_once('^') {
                Some((v, e)) => {
                    let e: u64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in \"{token}\"")))?;
                    (v.trim(), e)
                }
                None => (token, 1),
            };
            let value: i64 = value_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad part \"{value_str}\"")))?;
            for _ in 0..count {
                values.push(value);
            }
        }
        Partition::from_parts(values, allow_zero)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s, false)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical_string())
    }
}

/// (value, multiplicity) pairs with strictly increasing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyView {
    pairs: Vec<(u64, u64)>,
}

impl FrequencyView {
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Expand back to the originating partition.
    pub fn expand(&self) -> Partition {
        let mut parts = Vec::new();
        for &(v, m) in self.pairs.iter().rev() {
            for _ in 0..m {
                parts.push(v);
            }
        }
        let has_zero = parts.last() == Some(&0);
        Partition::from_sorted(parts, has_zero)
    }
}
