//! Exact truncated formal power series in q.
//!
//! Coefficients are arbitrary-precision integers; every operation is exact
//! ring arithmetic modulo q^{N+1}. Mixed-order operations truncate to the
//! smaller order and never silently extend it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A formal power series in q modulo q^{N+1}, coefficients c_0..c_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// c * q^e truncated at `order`.
    pub fn monomial(c: i64, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = BigInt::from(c);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Drop coefficients above `order` (never extends).
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse modulo q^{N+1}; requires constant term +-1.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.magnitude().is_one() {
            return Err(Error::NonUnitConstantTerm(c0.to_string()));
        }
        let order = self.order();
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = c0.clone(); // 1/1 = 1, 1/-1 = -1
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[n - j];
                }
            }
            // c0 * inv_n + acc = 0  =>  inv_n = -acc / c0 = -acc * c0
            inv[n] = -acc * c0;
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// First index where the two series differ, within the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

/// The product prod_{j=0}^{count-1} (1 - q^{c + j*step}) truncated at
/// `order`; the empty product (count = 0) is 1.
///
/// With c = 1, step = 1 this is (q;q)_count; with c = k, step = k it is
/// (q^k;q^k)_count; with c = i+1, step = 1 it is (q^{i+1};q)_count.
pub fn poch(c: u64, step: u64, count: u64, order: usize) -> TruncatedSeries {
    let mut result = TruncatedSeries::one(order);
    for j in 0..count {
        let e = c + j * step;
        if e as usize > order {
            break; // all later factors are 1 mod q^{order+1}
        }
        let factor = TruncatedSeries::one(order).sub(&TruncatedSeries::monomial(
            1,
            e as usize,
            order,
        ));
        result = result.mul(&factor);
    }
    result
}

/// 1/(1 - q^j) = sum_m q^{jm}, truncated.
fn geometric(j: u64, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let mut e = 0usize;
    loop {
        s.coeffs[e] = BigInt::one();
        match e.checked_add(j as usize) {
            Some(next) if next <= order => e = next,
            _ => break,
        }
    }
    s
}

/// Generating function of the k-regular partitions:
/// prod_{j >= 1, k not | j} 1/(1 - q^j).
pub fn gf_b(k: u64, order: usize) -> TruncatedSeries {
    let mut result = TruncatedSeries::one(order);
    for j in 1..=(order as u64) {
        if j % k != 0 {
            result = result.mul(&geometric(j, order));
        }
    }
    result
}

/// Generating function of the k-distinct partitions:
/// prod_{j >= 1} (1 - q^{kj}) / (1 - q^j).
pub fn gf_a(k: u64, order: usize) -> TruncatedSeries {
    let mut result = TruncatedSeries::one(order);
    for j in 1..=(order as u64) {
        result = result.mul(&geometric(j, order));
    }
    for j in 1..=(order as u64) {
        if k * j > order as u64 {
            break;
        }
        result = result.sub(&result.mul(&TruncatedSeries::monomial(1, (k * j) as usize, order)));
    }
    result
}

/// One summand of the B'_k generating function:
/// (q^k;q^k)_{i-1} q^{ki-1} / (q;q)_{ki-1}.
pub fn gf_bprime_term(k: u64, i: u64, order: usize) -> Result<TruncatedSeries> {
    let num = poch(k, k, i - 1, order).mul(&TruncatedSeries::monomial(
        1,
        (k * i - 1) as usize,
        order,
    ));
    Ok(num.mul(&poch(1, 1, k * i - 1, order).invert()?))
}

/// sum_{i >= 1} (q^k;q^k)_{i-1} q^{ki-1} / (q;q)_{ki-1}: coefficient of q^n
/// is the number of k-regular partitions of n with largest part = -1 (mod k).
pub fn gf_bprime(k: u64, order: usize) -> TruncatedSeries {
    let mut result = TruncatedSeries::zero(order);
    let mut i = 1u64;
    while k * i - 1 <= order as u64 {
        // summand has q-valuation ki-1, later terms vanish mod q^{N+1}
        result = result.add(&gf_bprime_term(k, i, order).expect("unit constant term"));
        i += 1;
    }
    result
}

/// One summand of the C_k generating function:
/// (q^k;q^k)_i / (q;q)_i * q^{ki} / (q^{i+1};q)_{(k-1)i}.
pub fn gf_c_term(k: u64, i: u64, order: usize) -> Result<TruncatedSeries> {
    let num = poch(k, k, i, order).mul(&TruncatedSeries::monomial(1, (k * i) as usize, order));
    let den = poch(1, 1, i, order).mul(&poch(i + 1, 1, (k - 1) * i, order));
    Ok(num.mul(&den.invert()?))
}

/// sum_{i >= 0} (q^k;q^k)_i / (q;q)_i * q^{ki} / (q^{i+1};q)_{(k-1)i}:
/// coefficient of q^n is the number of partitions of n with largest part a
/// positive multiple of k whose values up to largest/k appear at most k-1
/// times. The i = 0 term contributes the constant 1.
pub fn gf_c(k: u64, order: usize) -> TruncatedSeries {
    let mut result = TruncatedSeries::zero(order);
    let mut i = 0u64;
    while k * i <= order as u64 {
        result = result.add(&gf_c_term(k, i, order).expect("unit constant term"));
        i += 1;
    }
    result
}

/// One failed identity inside [`verify_telescoping`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct TelescopingFailure {
    pub identity: String,
    pub first_differing_coefficient: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking the telescoping identity chain relating the B'_k and
/// C_k generating functions.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TelescopingReport {
    pub k: u64,
    pub order: usize,
    pub pass: bool,
    pub failures: Vec<TelescopingFailure>,
}

/// Check, as exact truncated series, the identity chain that turns the
/// B'_k generating function into the C_k one:
///
/// (a) per i >= 1: (q^k;q^k)_{i-1} q^{ki} / (q;q)_{ki-1}
///                 = (q^k;q^k)_i q^{ki} / (q;q)_{ki};
/// (b) q * gf_bprime(k) = gf_c(k) - 1;
/// (c) per i >= 0: the C summand equals (q^k;q^k)_i q^{ki} / (q;q)_{ki},
///     i.e. (q;q)_{ki} factors as (q;q)_i * (q^{i+1};q)_{(k-1)i}.
pub fn verify_telescoping(k: u64, order: usize) -> TelescopingReport {
    let mut failures = Vec::new();
    let mut check = |identity: String, lhs: &TruncatedSeries, rhs: &TruncatedSeries| {
        if let Some(n) = lhs.first_difference(rhs) {
            failures.push(TelescopingFailure {
                identity,
                first_differing_coefficient: n,
                lhs: lhs.coeff(n).to_string(),
                rhs: rhs.coeff(n).to_string(),
            });
        }
    };

    let mut i = 1u64;
    while k * i <= order as u64 {
        let q_ki = TruncatedSeries::monomial(1, (k * i) as usize, order);
        let lhs = poch(k, k, i - 1, order)
            .mul(&q_ki)
            .mul(&poch(1, 1, k * i - 1, order).invert().expect("unit"));
        let rhs = poch(k, k, i, order)
            .mul(&q_ki)
            .mul(&poch(1, 1, k * i, order).invert().expect("unit"));
        check(format!("shift identity at i={i}"), &lhs, &rhs);

        let c_term = gf_c_term(k, i, order).expect("unit");
        check(format!("C summand collapse at i={i}"), &c_term, &rhs);
        i += 1;
    }

    let lhs = TruncatedSeries::monomial(1, 1, order).mul(&gf_bprime(k, order));
    let rhs = gf_c(k, order).sub(&TruncatedSeries::one(order));
    check("q * gf_bprime = gf_c - 1".to_string(), &lhs, &rhs);

    TelescopingReport {
        k,
        order,
        pass: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{count, ClassSpec, Family};
    use proptest::prelude::*;

    fn c(series: &TruncatedSeries, n: usize) -> i64 {
        use num_traits::ToPrimitive;
        series.coeff(n).to_i64().unwrap()
    }

    #[test]
    fn poch_examples() {
        let s = poch(1, 1, 2, 5);
        assert_eq!(
            (0..=5).map(|n| c(&s, n)).collect::<Vec<_>>(),
            vec![1, -1, -1, 1, 0, 0]
        );
        assert_eq!(poch(4, 2, 0, 6), TruncatedSeries::one(6));
        let s = poch(3, 3, 2, 10);
        assert_eq!(
            (0..=10).map(|n| c(&s, n)).collect::<Vec<_>>(),
            vec![1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0]
        );
    }

    #[test]
    fn invert_geometric_series() {
        let one_minus_q = poch(1, 1, 1, 8);
        let inv = one_minus_q.invert().unwrap();
        assert!((0..=8).all(|n| c(&inv, n) == 1));
        assert_eq!(one_minus_q.mul(&inv), TruncatedSeries::one(8));
    }

    #[test]
    fn invert_requires_unit_constant() {
        let s = TruncatedSeries::monomial(2, 0, 4);
        assert!(matches!(s.invert(), Err(Error::NonUnitConstantTerm(_))));
        let neg = TruncatedSeries::monomial(-1, 0, 4)
            .add(&TruncatedSeries::monomial(3, 1, 4));
        let inv = neg.invert().unwrap();
        assert_eq!(neg.mul(&inv), TruncatedSeries::one(4));
    }

    #[test]
    fn inverse_of_finite_poch_counts_bounded_partitions() {
        // 1/((1-q)(1-q^2)(1-q^3)): partitions into parts <= 3
        let inv = poch(1, 1, 3, 20).invert().unwrap();
        for n in 0..=20u64 {
            let mut expected = 0i64;
            crate::classes::for_each_partition(n, |parts| {
                if parts.iter().all(|&p| p <= 3) {
                    expected += 1;
                }
            });
            assert_eq!(c(&inv, n as usize), expected, "n = {n}");
        }
    }

    #[test]
    fn gf_b_matches_enumeration() {
        let s = gf_b(2, 12);
        assert_eq!(c(&s, 5), 3);
        assert_eq!(c(&s, 0), 1);
        for k in 2..=4u64 {
            let s = gf_b(k, 16);
            for n in 0..=16u64 {
                let expected = count(&ClassSpec::new(Family::B, k).unwrap(), n).unwrap();
                assert_eq!(c(&s, n as usize) as u64, expected);
            }
        }
    }

    #[test]
    fn gf_a_equals_gf_b() {
        for k in 2..=5 {
            assert_eq!(gf_a(k, 30), gf_b(k, 30));
        }
    }

    #[test]
    fn gf_a_matches_enumeration() {
        for k in 2..=4u64 {
            let s = gf_a(k, 14);
            for n in 0..=14u64 {
                let expected = count(&ClassSpec::new(Family::A, k).unwrap(), n).unwrap();
                assert_eq!(c(&s, n as usize) as u64, expected);
            }
        }
    }

    #[test]
    fn gf_bprime_matches_enumeration() {
        for k in 2..=4u64 {
            let s = gf_bprime(k, 20);
            assert_eq!(c(&s, 0), 0);
            for n in 0..=20u64 {
                let expected = count(&ClassSpec::new(Family::BPrime, k).unwrap(), n).unwrap();
                assert_eq!(c(&s, n as usize) as u64, expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn gf_c_matches_enumeration() {
        for k in 2..=4u64 {
            let s = gf_c(k, 20);
            assert_eq!(c(&s, 0), 1); // i = 0 empty term
            for n in 1..=20u64 {
                let expected = count(&ClassSpec::new(Family::C, k).unwrap(), n).unwrap();
                assert_eq!(c(&s, n as usize) as u64, expected, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn telescoping_passes() {
        for k in [2, 5] {
            let report = verify_telescoping(k, 40);
            assert!(report.pass, "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn telescoping_negative_control() {
        // drop one factor from (q;q)_{ki} on the right-hand side: the shift
        // identity must fail with a located discrepancy
        let (k, i, order) = (3u64, 2u64, 30usize);
        let q_ki = TruncatedSeries::monomial(1, (k * i) as usize, order);
        let lhs = poch(k, k, i - 1, order)
            .mul(&q_ki)
            .mul(&poch(1, 1, k * i - 1, order).invert().unwrap());
        let broken_rhs = poch(k, k, i, order)
            .mul(&q_ki)
            .mul(&poch(1, 1, k * i - 1, order).invert().unwrap()); // one factor short
        let diff = lhs.first_difference(&broken_rhs);
        assert!(diff.is_some());
    }

    #[test]
    fn pochhammer_factorization() {
        // (q;q)_{ki} = (q;q)_i * (q^{i+1};q)_{(k-1)i}
        for k in 2..=5u64 {
            for i in 0..=6u64 {
                let lhs = poch(1, 1, k * i, 40);
                let rhs = poch(1, 1, i, 40).mul(&poch(i + 1, 1, (k - 1) * i, 40));
                assert_eq!(lhs, rhs, "k={k} i={i}");
            }
        }
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-5i64..=5, 9).prop_map(|v| {
            TruncatedSeries::from_coeffs(v.into_iter().map(BigInt::from).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), x in arb_series()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&x), a.mul(&b.mul(&x)));
            prop_assert_eq!(a.mul(&b.add(&x)), a.mul(&b).add(&a.mul(&x)));
            prop_assert_eq!(a.mul(&TruncatedSeries::one(a.order())), a.clone());
        }

        #[test]
        fn mul_invert_is_identity(mut v in proptest::collection::vec(-4i64..=4, 8),
                                  sign in proptest::bool::ANY) {
            v.insert(0, if sign { 1 } else { -1 });
            let s = TruncatedSeries::from_coeffs(v.into_iter().map(BigInt::from).collect());
            let inv = s.invert().unwrap();
            prop_assert_eq!(s.mul(&inv), TruncatedSeries::one(s.order()));
        }
    }
}
