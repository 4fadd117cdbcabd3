//! Constructive maps between the partition families.
//!
//! - `alpha_split`: t = k^a * b with k-free b maps to k^a copies of b.
//! - `beta_regroup`: regroups a value block s^f using the base-k digits of
//!   f and a threshold exponent; inverse direction of the splitting maps.
//! - `psi` / `psi_inv`: bijection between E_k(n) and B_k(n).
//! - `phi` / `phi_inv`: bijection between C_k(n+1) and B'_k(n); the largest
//!   part ki maps to the single part ki-1, so the weight drops by one.
//! - `glaisher_to_regular` / `glaisher_to_distinct`: the classical
//!   split/merge pair between A_k(n) and B_k(n).
//!
//! Each map checks its domain eagerly and produces an auditable
//! [`BijectionTrace`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classes::{membership_violation, ClassSpec, Family};
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapName {
    Psi,
    Phi,
    Glaisher,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// One step of a bijection application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStep {
    /// A part t = k^a * b split into k^a copies of b.
    Split {
        part: u64,
        exponent: u32,
        base: u64,
        emitted: Partition,
    },
    /// A value block s^multiplicity regrouped via base-k digits
    /// (least significant first) and the threshold exponent t*.
    Regroup {
        value: u64,
        multiplicity: u64,
        digits: Vec<u64>,
        threshold_exponent: u32,
        emitted: Partition,
    },
    /// The distinguished largest-part image (phi: ki -> ki-1 and back).
    LargestPart { source: u64, image: u64 },
    /// Glaisher merge at one value: `kept` copies stay, `carried` parts of
    /// value k*value are produced.
    Merge {
        value: u64,
        multiplicity: u64,
        kept: u64,
        carried: u64,
    },
}

/// Auditable record of one bijection application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionTrace {
    pub map: MapName,
    pub direction: Direction,
    pub k: u64,
    pub input: Partition,
    pub steps: Vec<TraceStep>,
    pub output: Partition,
    pub input_weight: u64,
    pub output_weight: u64,
}

fn require_member(p: &Partition, spec: &ClassSpec) -> Result<()> {
    match membership_violation(p, spec) {
        None => Ok(()),
        Some(reason) => Err(Error::NotInClass {
            class: spec.label(),
            partition: p.canonical_string(),
            reason,
        }),
    }
}

fn require_modulus(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidModulus(k));
    }
    Ok(())
}

/// Decompose t = k^a * b with k not dividing b.
fn k_free_decomposition(t: u64, k: u64) -> (u32, u64) {
    debug_assert!(t >= 1 && k >= 2);
    let mut a = 0u32;
    let mut b = t;
    while b.is_multiple_of(k) {
        b /= k;
        a += 1;
    }
    (a, b)
}

/// k^a copies of b, where t = k^a * b and k does not divide b.
pub fn alpha_split(t: u64, k: u64) -> Partition {
    let (a, b) = k_free_decomposition(t, k);
    let copies = k.pow(a);
    Partition::from_sorted(vec![b; copies as usize], false)
}

fn alpha_step(t: u64, k: u64) -> (TraceStep, Partition) {
    let (a, b) = k_free_decomposition(t, k);
    let emitted = Partition::from_sorted(vec![b; k.pow(a) as usize], false);
    (
        TraceStep::Split {
            part: t,
            exponent: a,
            base: b,
            emitted: emitted.clone(),
        },
        emitted,
    )
}

/// Base-k digits of f, least significant first; never empty.
fn base_k_digits(mut f: u64, k: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    loop {
        digits.push(f % k);
        f /= k;
        if f == 0 {
            break;
        }
    }
    digits
}

/// Threshold exponent: minimal j >= 0 with k^j * s >= i (or > i when
/// `strict`).
fn threshold_exponent(s: u64, i: u64, k: u64, strict: bool) -> u32 {
    let mut j = 0u32;
    let mut v = s;
    loop {
        let met = if strict { v > i } else { v >= i };
        if met {
            return j;
        }
        v *= k;
        j += 1;
    }
}

/// Regroup the block s^f: with base-k digits f_0..f_m of f and threshold
/// exponent t*, emit s^{f_0}, (ks)^{f_1}, ..., (k^{t*-1}s)^{f_{t*-1}} and
/// (k^{t*}s)^{sum_{j>=t*} k^{j-t*} f_j}. The weight is always f*s.
pub fn beta_regroup(s: u64, f: u64, i: u64, k: u64, strict: bool) -> Result<Partition> {
    Ok(beta_step(s, f, i, k, strict)?.1)
}

fn beta_step(s: u64, f: u64, i: u64, k: u64, strict: bool) -> Result<(TraceStep, Partition)> {
    require_modulus(k)?;
    if s.is_multiple_of(k) {
        return Err(Error::NotKFree { value: s, k });
    }
    assert!(f >= 1 && i >= 1);
    let digits = base_k_digits(f, k);
    let t_star = threshold_exponent(s, i, k, strict);
    let mut parts: Vec<u64> = Vec::new();
    let mut value = s;
    for &d in digits.iter().take(t_star as usize) {
        for _ in 0..d {
            parts.push(value);
        }
        value *= k;
    }
    // collapsed tail: sum_{j=t*}^{m} k^{j-t*} f_j copies of k^{t*} s
    let mut tail = 0u64;
    for (offset, &d) in digits.iter().skip(t_star as usize).enumerate() {
        tail += d * k.pow(offset as u32);
    }
    let top = s * k.pow(t_star);
    for _ in 0..tail {
        parts.push(top);
    }
    let emitted = Partition::from_unsorted_positive(parts);
    debug_assert_eq!(emitted.weight(), f * s);
    Ok((
        TraceStep::Regroup {
            value: s,
            multiplicity: f,
            digits,
            threshold_exponent: t_star,
            emitted: emitted.clone(),
        },
        emitted,
    ))
}

fn assemble(
    map: MapName,
    direction: Direction,
    k: u64,
    input: &Partition,
    steps: Vec<TraceStep>,
    output: Partition,
) -> BijectionTrace {
    BijectionTrace {
        map,
        direction,
        k,
        input: input.clone(),
        input_weight: input.weight(),
        output_weight: output.weight(),
        steps,
        output,
    }
}

/// E_k(n) -> B_k(n): split every part. Weight preserved.
pub fn psi_traced(lambda: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(lambda, &ClassSpec::new(Family::E, k)?)?;
    let mut steps = Vec::new();
    let mut output = Partition::empty();
    for &part in lambda.parts() {
        let (step, emitted) = alpha_step(part, k);
        output = output.union(&emitted);
        steps.push(step);
    }
    Ok(assemble(MapName::Psi, Direction::Forward, k, lambda, steps, output))
}

pub fn psi(lambda: &Partition, k: u64) -> Result<Partition> {
    Ok(psi_traced(lambda, k)?.output)
}

/// B_k(n) -> E_k(n): regroup each value block with threshold i where the
/// largest part is ki - r, 1 <= r <= k-1. Weight preserved.
pub fn psi_inv_traced(mu: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(mu, &ClassSpec::new(Family::B, k)?)?;
    if mu.is_empty() {
        return Err(Error::NotInClass {
            class: format!("B_{k}(n), n >= 1"),
            partition: mu.canonical_string(),
            reason: "the inverse map needs a largest part".to_string(),
        });
    }
    let i = mu.largest_part().div_ceil(k);
    let mut steps = Vec::new();
    let mut output = Partition::empty();
    for &(s, f) in mu.frequencies().pairs() {
        let (step, emitted) = beta_step(s, f, i, k, false)?;
        output = output.union(&emitted);
        steps.push(step);
    }
    Ok(assemble(MapName::Psi, Direction::Inverse, k, mu, steps, output))
}

pub fn psi_inv(mu: &Partition, k: u64) -> Result<Partition> {
    Ok(psi_inv_traced(mu, k)?.output)
}

/// C_k(n+1) -> B'_k(n): one copy of the largest part ki becomes ki-1,
/// every other part splits. Weight drops by exactly one.
pub fn phi_traced(lambda: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(lambda, &ClassSpec::new(Family::C, k)?)?;
    let largest = lambda.largest_part();
    let mut steps = vec![TraceStep::LargestPart {
        source: largest,
        image: largest - 1,
    }];
    let mut output = Partition::from_sorted(vec![largest - 1], false);
    let rest = lambda.remove_one(largest).expect("nonempty by membership");
    for &part in rest.parts() {
        let (step, emitted) = alpha_step(part, k);
        output = output.union(&emitted);
        steps.push(step);
    }
    Ok(assemble(MapName::Phi, Direction::Forward, k, lambda, steps, output))
}

pub fn phi(lambda: &Partition, k: u64) -> Result<Partition> {
    Ok(phi_traced(lambda, k)?.output)
}

/// B'_k(n) -> C_k(n+1): one copy of the largest part ki-1 becomes ki; the
/// remaining parts are regrouped with the strict threshold. Weight grows by
/// exactly one.
pub fn phi_inv_traced(mu: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(mu, &ClassSpec::new(Family::BPrime, k)?)?;
    let largest = mu.largest_part();
    let i = (largest + 1) / k;
    let mut steps = vec![TraceStep::LargestPart {
        source: largest,
        image: largest + 1,
    }];
    let mut output = Partition::from_sorted(vec![largest + 1], false);
    let nu = mu.remove_one(largest).expect("nonempty by membership");
    for &(s, f) in nu.frequencies().pairs() {
        let (step, emitted) = beta_step(s, f, i, k, true)?;
        output = output.union(&emitted);
        steps.push(step);
    }
    Ok(assemble(MapName::Phi, Direction::Inverse, k, mu, steps, output))
}

pub fn phi_inv(mu: &Partition, k: u64) -> Result<Partition> {
    Ok(phi_inv_traced(mu, k)?.output)
}

/// A_k(n) -> B_k(n): split every part (weight preserved).
pub fn glaisher_to_regular_traced(lambda: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(lambda, &ClassSpec::new(Family::A, k)?)?;
    let mut steps = Vec::new();
    let mut output = Partition::empty();
    for &part in lambda.parts() {
        let (step, emitted) = alpha_step(part, k);
        output = output.union(&emitted);
        steps.push(step);
    }
    Ok(assemble(
        MapName::Glaisher,
        Direction::Forward,
        k,
        lambda,
        steps,
        output,
    ))
}

pub fn glaisher_to_regular(lambda: &Partition, k: u64) -> Result<Partition> {
    Ok(glaisher_to_regular_traced(lambda, k)?.output)
}

/// B_k(n) -> A_k(n): repeatedly replace k equal parts t^k by one part kt,
/// processing values in increasing order, until every multiplicity is at
/// most k-1.
pub fn glaisher_to_distinct_traced(mu: &Partition, k: u64) -> Result<BijectionTrace> {
    require_modulus(k)?;
    require_member(mu, &ClassSpec::new(Family::B, k)?)?;
    let mut freq: BTreeMap<u64, u64> = BTreeMap::new();
    for &(v, m) in mu.frequencies().pairs() {
        freq.insert(v, m);
    }
    let mut steps = Vec::new();
    let mut cursor = 0u64;
    while let Some((&value, &mult)) = freq.range(cursor + 1..).next() {
        cursor = value;
        if mult >= k {
            let carried = mult / k;
            let kept = mult % k;
            if kept == 0 {
                freq.remove(&value);
            } else {
                freq.insert(value, kept);
            }
            *freq.entry(value * k).or_insert(0) += carried;
            steps.push(TraceStep::Merge {
                value,
                multiplicity: mult,
                kept,
                carried,
            });
        }
    }
    let mut parts = Vec::new();
    for (&v, &m) in freq.iter().rev() {
        for _ in 0..m {
            parts.push(v);
        }
    }
    let output = Partition::from_sorted(parts, false);
    Ok(assemble(
        MapName::Glaisher,
        Direction::Inverse,
        k,
        mu,
        steps,
        output,
    ))
}

pub fn glaisher_to_distinct(mu: &Partition, k: u64) -> Result<Partition> {
    Ok(glaisher_to_distinct_traced(mu, k)?.output)
}
