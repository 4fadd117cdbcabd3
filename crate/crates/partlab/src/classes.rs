//! Membership predicates and exhaustive enumerators for the partition
//! families A_k, B_k, B'_k, C_k, D and E_k.
//!
//! - A_k: every value appears at most k-1 times (k-distinct).
//! - B_k: no part divisible by k (k-regular).
//! - B'_k: k-regular with largest part = -1 (mod k).
//! - C_k: largest part m a positive multiple of k; values <= m/k appear at
//!   most k-1 times.
//! - E_k: largest part m with k not dividing m; writing m = ki - r with
//!   1 <= r <= k-1, values up to a threshold appear at most k-1 times. Two
//!   threshold variants exist (see [`EkThreshold`]); they disagree and only
//!   the `Proof` variant keeps #B_k(n) = #E_k(n).
//! - D: nonempty multisets of nonnegative integers whose minimum value
//!   appears exactly twice and every other value exactly once. This is the
//!   only family that admits zero parts (exactly zero or two of them).

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Default bound on n for enumeration; override with `PARTLAB_MAX_N`.
pub const DEFAULT_MAX_N: u64 = 80;

/// Current enumeration scale bound.
pub fn max_n() -> u64 {
    std::env::var("PARTLAB_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_scale(n: u64) -> Result<()> {
    let max = max_n();
    if n > max {
        return Err(Error::ScaleBound { n, max });
    }
    Ok(())
}

/// Which threshold the E_k predicate applies to small values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EkThreshold {
    /// Values <= i-1 restricted, where the largest part is ki - r with
    /// 1 <= r <= k-1 (i.e. i = ceil(m/k)). This is the variant under which
    /// #B_k(n) = #E_k(n) holds.
    #[default]
    Proof,
    /// Values <= floor(m/k) - 1 restricted. Strictly weaker than `Proof`;
    /// breaks equinumerosity at small n (see the threshold experiment).
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Family {
    A,
    B,
    BPrime,
    C,
    D,
    E,
}

impl Family {
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::A => "Ak",
            Family::B => "Bk",
            Family::BPrime => "Bpk",
            Family::C => "Ck",
            Family::D => "D",
            Family::E => "Ek",
        }
    }

    pub fn from_cli_name(name: &str) -> Result<Self> {
        match name {
            "Ak" => Ok(Family::A),
            "Bk" => Ok(Family::B),
            "Bpk" => Ok(Family::BPrime),
            "Ck" => Ok(Family::C),
            "D" => Ok(Family::D),
            "Ek" => Ok(Family::E),
            _ => Err(Error::UnknownSelector(name.to_string())),
        }
    }
}

/// One partition family together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSpec {
    pub family: Family,
    /// Modulus; ignored for family D (which lives in the k=2 chain).
    pub k: u64,
    pub ek_threshold: EkThreshold,
}

impl ClassSpec {
    pub fn new(family: Family, k: u64) -> Result<Self> {
        if family != Family::D && k < 2 {
            return Err(Error::InvalidModulus(k));
        }
        Ok(ClassSpec {
            family,
            k,
            ek_threshold: EkThreshold::default(),
        })
    }

    pub fn with_threshold(mut self, t: EkThreshold) -> Self {
        self.ek_threshold = t;
        self
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::D => "D".to_string(),
            Family::E => match self.ek_threshold {
                EkThreshold::Proof => format!("E_{}", self.k),
                EkThreshold::Literal => format!("E_{}(literal)", self.k),
            },
            Family::A => format!("A_{}", self.k),
            Family::B => format!("B_{}", self.k),
            Family::BPrime => format!("B'_{}", self.k),
            Family::C => format!("C_{}", self.k),
        }
    }
}

/// Exact membership decision for `p` in the family described by `spec`.
///
/// Zero parts in any family other than D are a contract violation.
pub fn is_member(p: &Partition, spec: &ClassSpec) -> Result<bool> {
    if spec.family != Family::D && p.has_zero_part() {
        return Err(Error::ZeroPartOutsideD);
    }
    Ok(member_unchecked(p, spec))
}

/// First condition of `spec` that `p` violates, as human-readable text.
/// `None` when `p` is a member.
pub fn membership_violation(p: &Partition, spec: &ClassSpec) -> Option<String> {
    let k = spec.k;
    match spec.family {
        Family::A => p
            .frequencies()
            .pairs()
            .iter()
            .find(|&&(_, m)| m > k - 1)
            .map(|&(v, m)| format!("value {v} appears {m} > {} times", k - 1)),
        Family::B => p
            .parts()
            .iter()
            .find(|&&t| t % k == 0)
            .map(|&t| format!("part {t} is divisible by {k}")),
        Family::BPrime => {
            if p.is_empty() {
                return Some("empty partition has no largest part".to_string());
            }
            if let Some(v) = membership_violation(p, &ClassSpec::new(Family::B, k).unwrap()) {
                return Some(v);
            }
            let m = p.largest_part();
            if m % k != k - 1 {
                return Some(format!("largest part {m} is not -1 (mod {k})"));
            }
            None
        }
        Family::C => {
            if p.is_empty() {
                return Some("empty partition has no largest part".to_string());
            }
            let m = p.largest_part();
            if !m.is_multiple_of(k) {
                return Some(format!("largest part {m} is not a multiple of {k}"));
            }
            let bound = m / k;
            p.frequencies()
                .pairs()
                .iter()
                .find(|&&(v, m)| v <= bound && m > k - 1)
                .map(|&(v, m)| format!("value {v} <= {bound} appears {m} > {} times", k - 1))
        }
        Family::E => {
            if p.is_empty() {
                return Some("empty partition has no largest part".to_string());
            }
            let m = p.largest_part();
            if m.is_multiple_of(k) {
                return Some(format!("largest part {m} is divisible by {k}"));
            }
            let bound = match spec.ek_threshold {
                // m = ki - r with 1 <= r <= k-1, so i = ceil(m/k); values <= i-1
                EkThreshold::Proof => m.div_ceil(k) - 1,
                // floor(m/k) - 1, saturating for m < k
                EkThreshold::Literal => (m / k).saturating_sub(1),
            };
            p.frequencies()
                .pairs()
                .iter()
                .find(|&&(v, mult)| v <= bound && mult > k - 1)
                .map(|&(v, mult)| format!("value {v} <= {bound} appears {mult} > {} times", k - 1))
        }
        Family::D => {
            let smallest = match p.smallest_part() {
                None => return Some("empty partition".to_string()),
                Some(s) => s,
            };
            if p.frequency(smallest) != 2 {
                return Some(format!(
                    "smallest value {smallest} appears {} times, not exactly 2",
                    p.frequency(smallest)
                ));
            }
            p.frequencies()
                .pairs()
                .iter()
                .find(|&&(v, m)| v != smallest && m != 1)
                .map(|&(v, m)| format!("value {v} appears {m} times, not exactly once"))
        }
    }
}

fn member_unchecked(p: &Partition, spec: &ClassSpec) -> bool {
    membership_violation(p, spec).is_none()
}

/// Visit every partition of `n` (positive parts) in lexicographically
/// decreasing order. The callback receives the parts weakly decreasing.
pub fn for_each_partition<F: FnMut(&[u64])>(n: u64, mut f: F) {
    let mut buf: Vec<u64> = Vec::new();
    fn rec<F: FnMut(&[u64])>(remaining: u64, max_part: u64, buf: &mut Vec<u64>, f: &mut F) {
        if remaining == 0 {
            f(buf);
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            buf.push(part);
            rec(remaining - part, part, buf, f);
            buf.pop();
        }
    }
    rec(n, n.max(1), &mut buf, &mut f);
}

/// All partitions of `n`, lexicographically decreasing.
pub fn all_partitions(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        out.push(Partition::from_sorted(parts.to_vec(), false));
    });
    out
}

/// All partitions of `n` in the family, lexicographically decreasing.
///
/// For D the output includes the zero-part members (a partition of `n` into
/// distinct positive parts with two zeros appended) interleaved in base
/// order, which preserves the lexicographic ordering.
pub fn enumerate(spec: &ClassSpec, n: u64) -> Result<Vec<Partition>> {
    check_scale(n)?;
    let mut out = Vec::new();
    if spec.family == Family::D {
        for_each_partition(n, |parts| {
            let base = Partition::from_sorted(parts.to_vec(), false);
            if member_unchecked(&base, spec) {
                out.push(Partition::from_sorted(parts.to_vec(), true));
            } else if all_distinct(parts) {
                let mut with_zeros = parts.to_vec();
                with_zeros.push(0);
                with_zeros.push(0);
                out.push(Partition::from_sorted(with_zeros, true));
            }
        });
        // n = 0: the empty base yields (0,0)
        return Ok(out);
    }
    for_each_partition(n, |parts| {
        let p = Partition::from_sorted(parts.to_vec(), false);
        if member_unchecked(&p, spec) {
            out.push(p);
        }
    });
    Ok(out)
}

fn all_distinct(parts: &[u64]) -> bool {
    parts.windows(2).all(|w| w[0] > w[1])
}

/// Number of partitions of `n` in the family; the cardinality of
/// [`enumerate`], computed without materializing the partitions.
pub fn count(spec: &ClassSpec, n: u64) -> Result<u64> {
    check_scale(n)?;
    let mut total = 0u64;
    if spec.family == Family::D {
        for_each_partition(n, |parts| {
            let base = Partition::from_sorted(parts.to_vec(), false);
            if member_unchecked(&base, spec) || all_distinct(parts) {
                total += 1;
            }
        });
        return Ok(total);
    }
    for_each_partition(n, |parts| {
        let p = Partition::from_sorted(parts.to_vec(), false);
        if member_unchecked(&p, spec) {
            total += 1;
        }
    });
    Ok(total)
}
