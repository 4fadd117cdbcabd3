//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Everything here is exhaustive and exact; runtime bounds are asserted
//! where a criterion carries one.

use std::time::Instant;

use rayon::prelude::*;

use partlab::bijections::{
    glaisher_to_distinct, glaisher_to_regular, phi, phi_inv, psi, psi_inv,
};
use partlab::classes::{count, enumerate, for_each_partition, is_member, ClassSpec, Family};
use partlab::partition::Partition;
use partlab::qseries;
use partlab::verify::{self, first_literal_mismatch};

fn spec(f: Family, k: u64) -> ClassSpec {
    ClassSpec::new(f, k).unwrap()
}

fn report(id: u32, name: &str, failures: &[String], started: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "ACCEPTANCE {id} ({name}): {status} [{:.2}s]",
        started.elapsed().as_secs_f64()
    );
    for f in failures {
        println!("  - {f}");
    }
}

#[test]
fn criterion_1_equinumerosity_sweeps() {
    let started = Instant::now();
    let mut failures: Vec<String> = (2u64..=6)
        .into_par_iter()
        .flat_map(|k| {
            (1u64..=40).into_par_iter().flat_map_iter(move |n| {
                let a = count(&spec(Family::A, k), n).unwrap();
                let b = count(&spec(Family::B, k), n).unwrap();
                let e = count(&spec(Family::E, k), n).unwrap();
                let bp = count(&spec(Family::BPrime, k), n).unwrap();
                let c = count(&spec(Family::C, k), n + 1).unwrap();
                let mut out = Vec::new();
                if a != b {
                    out.push(format!("#A_{k}({n})={a} != #B_{k}({n})={b}"));
                }
                if b != e {
                    out.push(format!("#B_{k}({n})={b} != #E_{k}({n})={e}"));
                }
                if bp != c {
                    out.push(format!("#B'_{k}({n})={bp} != #C_{k}({})={c}", n + 1));
                }
                out
            })
        })
        .collect();
    if started.elapsed().as_secs() >= 60 {
        failures.push(format!(
            "runtime {:.1}s exceeds the 60s budget",
            started.elapsed().as_secs_f64()
        ));
    }
    report(1, "equinumerosity sweeps", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_2_k2_chain() {
    let started = Instant::now();
    let mut failures: Vec<String> = (0u64..=35)
        .into_par_iter()
        .flat_map_iter(|n| {
            let a = count(&spec(Family::A, 2), n).unwrap();
            let b = count(&spec(Family::B, 2), n).unwrap();
            let c = count(&spec(Family::C, 2), n + 1).unwrap();
            let d = count(&spec(Family::D, 2), n + 1).unwrap();
            if a == b && b == c && 2 * a == d {
                None
            } else {
                Some(format!(
                    "n={n}: #A({n})={a}, #B({n})={b}, #C({})={c}, #D({})={d}",
                    n + 1,
                    n + 1
                ))
            }
        })
        .collect();
    failures.sort();
    if started.elapsed().as_secs() >= 10 {
        failures.push(format!(
            "runtime {:.1}s exceeds the 10s budget",
            started.elapsed().as_secs_f64()
        ));
    }
    report(2, "k=2 chain", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_3_bijection_round_trips() {
    let started = Instant::now();
    let combos: Vec<(u64, u64)> = (2u64..=5)
        .flat_map(|k| (0u64..=30).map(move |n| (k, n)))
        .collect();
    let failures: Vec<String> = combos
        .into_par_iter()
        .flat_map_iter(|(k, n)| {
            let mut out = Vec::new();
            let mut check = |name: &str,
                             domain: Family,
                             codomain: Family,
                             dn: u64,
                             cn: u64,
                             fwd: fn(&Partition, u64) -> partlab::Result<Partition>,
                             inv: fn(&Partition, u64) -> partlab::Result<Partition>| {
                for p in enumerate(&spec(domain, k), dn).unwrap() {
                    match fwd(&p, k) {
                        Err(e) => out.push(format!("{name} k={k} on {p}: {e}")),
                        Ok(img) => {
                            if !is_member(&img, &spec(codomain, k)).unwrap() {
                                out.push(format!("{name} k={k}: image {img} of {p} off-class"));
                            } else if inv(&img, k).unwrap() != p {
                                out.push(format!("{name} k={k}: round trip broke at {p}"));
                            }
                        }
                    }
                }
                for q in enumerate(&spec(codomain, k), cn).unwrap() {
                    match inv(&q, k) {
                        Err(e) => out.push(format!("{name}-inv k={k} on {q}: {e}")),
                        Ok(pre) => {
                            if !is_member(&pre, &spec(domain, k)).unwrap() {
                                out.push(format!("{name}-inv k={k}: preimage {pre} off-class"));
                            } else if fwd(&pre, k).unwrap() != q {
                                out.push(format!("{name}-inv k={k}: round trip broke at {q}"));
                            }
                        }
                    }
                }
            };
            // the psi pair exists for n >= 1: B_k(0) holds the empty
            // partition while E_k(0) is empty
            if n >= 1 {
                check("psi", Family::E, Family::B, n, n, psi, psi_inv);
            }
            check("phi", Family::C, Family::BPrime, n + 1, n, phi, phi_inv);
            check(
                "glaisher",
                Family::A,
                Family::B,
                n,
                n,
                glaisher_to_regular,
                glaisher_to_distinct,
            );
            out
        })
        .collect();
    report(3, "exhaustive bijection round trips", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_4_paper_worked_examples() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let lambda = Partition::parse("7,6,6,3,2,2,1,1", false).unwrap();
    let mu = Partition::parse("7,2^8,1^5", false).unwrap();
    match psi(&lambda, 3) {
        Ok(got) if got == mu => {}
        other => failures.push(format!("psi(7,6,6,3,2,2,1,1; k=3) gave {other:?}")),
    }
    match psi_inv(&mu, 3) {
        Ok(got) if got == lambda => {}
        other => failures.push(format!("psi_inv(7,2^8,1^5; k=3) gave {other:?}")),
    }

    let lambda = Partition::parse("9,9,3,2,2,1,1", false).unwrap();
    let mu = Partition::parse("8,2,2,1^14", false).unwrap();
    match phi(&lambda, 3) {
        Ok(got) if got == mu => {}
        other => failures.push(format!("phi(9,9,3,2,2,1,1; k=3) gave {other:?}")),
    }
    match phi_inv(&mu, 3) {
        Ok(got) if got == lambda => {}
        other => failures.push(format!("phi_inv(8,2,2,1^14; k=3) gave {other:?}")),
    }

    report(4, "worked examples bit-exact", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_5_generating_function_oracles() {
    let started = Instant::now();
    const ORDER: usize = 50;
    let ks: Vec<u64> = vec![2, 3, 4, 5];
    let series: Vec<(u64, qseries::TruncatedSeries, qseries::TruncatedSeries)> = ks
        .par_iter()
        .map(|&k| (k, qseries::gf_bprime(k, ORDER), qseries::gf_c(k, ORDER)))
        .collect();

    let mut failures: Vec<String> = (0u64..=ORDER as u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            // one enumeration pass per n covering every (k, class) pair
            let mut bp = [0u64; 4];
            let mut c = [0u64; 4];
            for_each_partition(n, |parts| {
                let p = Partition::from_parts(parts.iter().map(|&v| v as i64), false).unwrap();
                for (idx, &k) in [2u64, 3, 4, 5].iter().enumerate() {
                    if is_member(&p, &spec(Family::BPrime, k)).unwrap() {
                        bp[idx] += 1;
                    }
                    if is_member(&p, &spec(Family::C, k)).unwrap() {
                        c[idx] += 1;
                    }
                }
            });
            let mut out = Vec::new();
            for (idx, (k, gb, gc)) in series.iter().enumerate() {
                use num_traits::ToPrimitive;
                let gb_n = gb.coeff(n as usize).to_u64().unwrap();
                if gb_n != bp[idx] {
                    out.push(format!(
                        "gf_bprime({k})[{n}]={gb_n} != enumeration {}",
                        bp[idx]
                    ));
                }
                let mut gc_n = gc.coeff(n as usize).to_u64().unwrap();
                if n == 0 {
                    gc_n -= 1; // the i=0 empty term; C_k(0) is empty as a set
                }
                if gc_n != c[idx] {
                    out.push(format!("gf_c({k})[{n}]={gc_n} != enumeration {}", c[idx]));
                }
            }
            out
        })
        .collect();

    for k in [2u64, 3, 4, 5] {
        let tele = qseries::verify_telescoping(k, ORDER);
        if !tele.pass {
            failures.push(format!("telescoping failed for k={k}: {:?}", tele.failures));
        }
    }
    if started.elapsed().as_secs() >= 30 {
        failures.push(format!(
            "runtime {:.1}s exceeds the 30s budget",
            started.elapsed().as_secs_f64()
        ));
    }
    report(5, "generating-function oracle equivalence", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_6_threshold_adjudication() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let small = verify::ek_threshold_experiment(2, 10).unwrap();
    match first_literal_mismatch(&small) {
        None => failures.push("literal variant showed no mismatch for k=2, n<=10".into()),
        Some(n) => {
            if !small.notes.iter().any(|s| s.contains("witnesses")) {
                failures.push(format!("mismatch at n={n} carries no witness"));
            }
        }
    }

    let proof_checks: Vec<String> = (2u64..=6)
        .into_par_iter()
        .filter_map(|k| {
            let rep = verify::ek_threshold_experiment(k, 40).unwrap();
            if rep.pass() {
                None
            } else {
                Some(format!("proof variant mismatch for k={k}: {}", rep.to_csv()))
            }
        })
        .collect();
    failures.extend(proof_checks);

    report(6, "E_k threshold adjudication", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_7_enumerator_completeness() {
    let started = Instant::now();
    let failures: Vec<String> = (0u64..=45)
        .into_par_iter()
        .filter_map(|n| {
            let mut total = 0u64;
            for_each_partition(n, |_| total += 1);
            let expected = verify::oracle_partition_count(n);
            (total != expected)
                .then(|| format!("enumerator found {total} partitions of {n}, p({n})={expected}"))
        })
        .collect();
    assert_eq!(verify::oracle_partition_count(45), 89134);
    report(7, "enumerator completeness", &failures, started);
    assert!(failures.is_empty(), "{failures:#?}");
}
