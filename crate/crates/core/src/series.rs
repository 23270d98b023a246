//! Truncated power series over exact rationals, the exponential generating
//! functions of the counting sequences, and rising/falling factorial
//! polynomials.
//!
//! A series of order `N` stores the coefficients of `x^0..=x^N`; binary
//! operations truncate to the smaller order. No division is implemented:
//! the generating functions only need products with `(1 ± x)^e` for integer
//! `e`, which expand directly by the generalized binomial series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::permutation::Parity;
use crate::sequences::factorial;

/// A power series known modulo `x^(order + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coefficients: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut series = TruncatedSeries::zero(order);
        series.coefficients[0] = BigRational::one();
        series
    }

    /// Builds a series from the coefficients of `x^0..=x^N`; the slice length
    /// determines the order and must be positive.
    pub fn from_coefficients(coefficients: Vec<BigRational>) -> Self {
        assert!(!coefficients.is_empty(), "a series has at least order 0");
        TruncatedSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, j: usize) -> &BigRational {
        &self.coefficients[j]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Drops coefficients above `order`, which must not exceed the current
    /// order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coefficients: self.coefficients[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coefficients: (0..=order)
                .map(|j| &self.coefficients[j] + &other.coefficients[j])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coefficients: (0..=order)
                .map(|j| &self.coefficients[j] - &other.coefficients[j])
                .collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coefficients = vec![BigRational::zero(); order + 1];
        for (a, left) in self.coefficients.iter().enumerate().take(order + 1) {
            if left.is_zero() {
                continue;
            }
            for (b, right) in other.coefficients.iter().enumerate().take(order + 1 - a) {
                if !right.is_zero() {
                    coefficients[a + b] += left * right;
                }
            }
        }
        TruncatedSeries { coefficients }
    }

    pub fn scale(&self, scalar: &BigRational) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| c * scalar).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order (top coefficients fall off).
    pub fn shifted(&self, k: usize) -> Self {
        let order = self.order();
        let mut coefficients = vec![BigRational::zero(); order + 1];
        if k <= order {
            coefficients[k..].clone_from_slice(&self.coefficients[..=order - k]);
        }
        TruncatedSeries { coefficients }
    }

    /// Formal derivative, one order lower.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative needs at least order 1");
        TruncatedSeries {
            coefficients: (1..=self.order())
                .map(|j| &self.coefficients[j] * BigRational::from_integer(BigInt::from(j)))
                .collect(),
        }
    }

    /// `n!` times the coefficient of `x^n`: the sequence value of an
    /// exponential generating function.
    pub fn egf_coefficient(&self, n: usize) -> BigRational {
        &self.coefficients[n] * BigRational::from_integer(factorial(n))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, c) in self.coefficients.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `e^{-x}` truncated at `order`: coefficients `(-1)^j / j!`.
pub fn exp_neg_x(order: usize) -> TruncatedSeries {
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut value = BigRational::one();
    coefficients.push(value.clone());
    for j in 1..=order {
        value = -value / BigRational::from_integer(BigInt::from(j));
        coefficients.push(value.clone());
    }
    TruncatedSeries { coefficients }
}

/// Sign of `x` inside `(1 + sign x)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `(1 + sign x)^exponent` for any integer exponent, by the generalized
/// binomial series with exact rational coefficients.
pub fn binomial_power(sign: Sign, exponent: i64, order: usize) -> TruncatedSeries {
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut value = BigRational::one();
    coefficients.push(value.clone());
    for k in 1..=order as i64 {
        // C(e, k) = C(e, k-1) (e - k + 1) / k
        value = value * BigRational::from_integer(BigInt::from(exponent - k + 1))
            / BigRational::from_integer(BigInt::from(k));
        if sign == Sign::Minus && k % 2 == 1 {
            coefficients.push(-value.clone());
        } else {
            coefficients.push(value.clone());
        }
    }
    TruncatedSeries { coefficients }
}

/// Exponential generating function of the parity differences for front size
/// `r`: `(-1)^{r-1} x^r e^{-x} / (1+x)^{r-1}`. At `r = 0` this is
/// `-(1+x) e^{-x}`.
pub fn egf_g_r(r: usize, order: usize) -> TruncatedSeries {
    let product = exp_neg_x(order)
        .mul(&binomial_power(Sign::Plus, 1 - r as i64, order))
        .shifted(r);
    if r.is_multiple_of(2) {
        product.scale(&-BigRational::one())
    } else {
        product
    }
}

/// Exponential generating function of the r-derangement numbers:
/// `x^r e^{-x} / (1-x)^{r+1}`.
pub fn egf_f_r(r: usize, order: usize) -> TruncatedSeries {
    exp_neg_x(order)
        .mul(&binomial_power(Sign::Minus, -(r as i64) - 1, order))
        .shifted(r)
}

/// Exponential generating function of the r-derangement numbers of one
/// parity: `(F_r(x) + (-1)^{r+i} x^r e^{-x} / (1+x)^{r-1}) / 2`.
pub fn egf_f_r_parity(r: usize, parity: Parity, order: usize) -> TruncatedSeries {
    let skew = exp_neg_x(order)
        .mul(&binomial_power(Sign::Plus, 1 - r as i64, order))
        .shifted(r);
    let combined = if (r + parity.bit()).is_multiple_of(2) {
        egf_f_r(r, order).add(&skew)
    } else {
        egf_f_r(r, order).sub(&skew)
    };
    combined.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// A polynomial with integer coefficients, stored by ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    /// Coefficients of `y^0..=y^degree`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `y^k`, zero beyond the degree.
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn evaluate(&self, y: &BigInt) -> BigInt {
        let mut value = BigInt::zero();
        for c in self.coefficients.iter().rev() {
            value = value * y + c;
        }
        value
    }
}

fn factorial_poly(r: usize, step: i64) -> IntPolynomial {
    let mut coefficients = vec![BigInt::one()];
    for j in 0..r {
        // Multiply by (y + step * j).
        let constant = BigInt::from(step) * BigInt::from(j);
        let mut next = vec![BigInt::zero(); coefficients.len() + 1];
        for (degree, c) in coefficients.iter().enumerate() {
            next[degree + 1] += c;
            next[degree] += &constant * c;
        }
        coefficients = next;
    }
    IntPolynomial { coefficients }
}

/// Rising factorial `y (y+1) ... (y+r-1)`; its coefficients are the unsigned
/// Stirling numbers of the first kind.
pub fn rising_factorial_poly(r: usize) -> IntPolynomial {
    factorial_poly(r, 1)
}

/// Falling factorial `y (y-1) ... (y-r+1)`.
pub fn falling_factorial_poly(r: usize) -> IntPolynomial {
    factorial_poly(r, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_types;
    use crate::sequences;
    use crate::split::SplitCondition;
    use proptest::prelude::*;

    fn rational(numerator: i64, denominator: i64) -> BigRational {
        BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
    }

    fn exp_pos_x(order: usize) -> TruncatedSeries {
        let mut coefficients = Vec::with_capacity(order + 1);
        let mut value = BigRational::one();
        coefficients.push(value.clone());
        for j in 1..=order {
            value /= BigRational::from_integer(BigInt::from(j));
            coefficients.push(value.clone());
        }
        TruncatedSeries::from_coefficients(coefficients)
    }

    #[test]
    fn mul_examples() {
        let s = exp_neg_x(6);
        assert_eq!(TruncatedSeries::one(6).mul(&s), s);

        let x = TruncatedSeries::one(1).shifted(1);
        assert_eq!(x.mul(&x), TruncatedSeries::zero(1));

        let a = TruncatedSeries::from_coefficients(vec![
            rational(1, 1),
            rational(-1, 1),
            rational(1, 2),
        ]);
        let b = TruncatedSeries::from_coefficients(vec![
            rational(1, 1),
            rational(1, 1),
            rational(1, 2),
        ]);
        assert_eq!(
            a.mul(&b).coefficients(),
            &[rational(1, 1), rational(0, 1), rational(0, 1)]
        );
    }

    #[test]
    fn exp_neg_examples() {
        let series = exp_neg_x(5);
        assert_eq!(series.coefficient(0), &rational(1, 1));
        assert_eq!(series.coefficient(1), &rational(-1, 1));
        assert_eq!(series.coefficient(2), &rational(1, 2));
        assert_eq!(series.coefficient(5), &rational(-1, 120));
        assert_eq!(exp_neg_x(12).mul(&exp_pos_x(12)), TruncatedSeries::one(12));
    }

    #[test]
    fn binomial_power_examples() {
        let geometric = binomial_power(Sign::Minus, -1, 3);
        assert!(geometric.coefficients().iter().all(|c| c.is_one()));

        let linear = binomial_power(Sign::Plus, 1, 3);
        assert_eq!(
            linear.coefficients(),
            &[
                rational(1, 1),
                rational(1, 1),
                rational(0, 1),
                rational(0, 1)
            ]
        );

        let inverse_square = binomial_power(Sign::Plus, -2, 3);
        assert_eq!(
            inverse_square.coefficients(),
            &[
                rational(1, 1),
                rational(-2, 1),
                rational(3, 1),
                rational(-4, 1)
            ]
        );
    }

    proptest! {
        #[test]
        fn binomial_powers_invert(exponent in -8i64..=8) {
            let product = binomial_power(Sign::Plus, exponent, 16)
                .mul(&binomial_power(Sign::Plus, -exponent, 16));
            prop_assert_eq!(product, TruncatedSeries::one(16));
        }
    }

    #[test]
    fn parity_difference_egf_examples() {
        let g0 = egf_g_r(0, 10);
        for n in 0..=10 {
            assert_eq!(
                g0.egf_coefficient(n),
                BigRational::from_integer(sequences::parity_difference(0, n)),
                "n={n}"
            );
        }
        // r = 1: the series is x e^{-x}.
        let g1 = egf_g_r(1, 8);
        assert_eq!(g1, exp_neg_x(8).shifted(1));
        assert_eq!(egf_g_r(2, 4).egf_coefficient(2), rational(-2, 1));
    }

    #[test]
    fn r_derangement_egf_examples() {
        let f0 = egf_f_r(0, 8);
        let derangements = [1i64, 0, 1, 2, 9, 44, 265, 1854, 14833];
        for (n, &expected) in derangements.iter().enumerate() {
            assert_eq!(f0.egf_coefficient(n), rational(expected, 1), "n={n}");
        }
        for r in 1..=5 {
            let series = egf_f_r(r, 8);
            for n in 0..r {
                assert!(series.egf_coefficient(n).is_zero(), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn parity_egf_examples() {
        assert_eq!(
            egf_f_r_parity(0, Parity::Even, 4).egf_coefficient(3),
            rational(2, 1)
        );
        assert_eq!(
            egf_f_r_parity(0, Parity::Odd, 4).egf_coefficient(3),
            rational(0, 1)
        );
        assert_eq!(
            egf_f_r_parity(2, Parity::Even, 4).egf_coefficient(2),
            rational(2, 1)
        );
        assert!(egf_f_r_parity(3, Parity::Even, 4)
            .egf_coefficient(2)
            .is_zero());
    }

    #[test]
    fn parity_egfs_split_the_total() {
        for r in 0..=6 {
            let total = egf_f_r(r, 12);
            let even = egf_f_r_parity(r, Parity::Even, 12);
            let odd = egf_f_r_parity(r, Parity::Odd, 12);
            assert_eq!(even.add(&odd), total, "r={r}");
            // The signed parity gap reproduces the difference series.
            assert_eq!(odd.sub(&even), egf_g_r(r, 12), "r={r}");
        }
    }

    #[test]
    fn egf_matches_sequences_on_a_small_grid() {
        for r in 0..=5 {
            let g = egf_g_r(r, 12);
            let f = egf_f_r(r, 12);
            for n in 0..=12 {
                assert_eq!(
                    g.egf_coefficient(n),
                    BigRational::from_integer(sequences::parity_difference(r, n)),
                    "g r={r} n={n}"
                );
                assert_eq!(
                    f.egf_coefficient(n),
                    BigRational::from_integer(sequences::r_derangement(r, n)),
                    "f r={r} n={n}"
                );
                for i in Parity::BOTH {
                    assert_eq!(
                        egf_f_r_parity(r, i, 12).egf_coefficient(n),
                        BigRational::from_integer(sequences::r_derangement_parity_explicit(
                            r, n, i
                        )),
                        "f^i r={r} n={n} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn parity_difference_egf_satisfies_its_differential_equation() {
        // (1+x) G_r' = -r G_{r-1} - (x+r) G_r, checked through order N-1.
        let order = 16;
        for r in 1..=8 {
            let g = egf_g_r(r, order);
            let g_prev = egf_g_r(r - 1, order);
            let one_plus_x = binomial_power(Sign::Plus, 1, order - 1);
            let left = one_plus_x.mul(&g.derivative());
            let mut linear = vec![BigRational::zero(); order];
            linear[0] = BigRational::from_integer(BigInt::from(r));
            linear[1] = BigRational::one();
            let x_plus_r = TruncatedSeries::from_coefficients(linear);
            let right = g_prev
                .scale(&BigRational::from_integer(BigInt::from(-(r as i64))))
                .truncated(order - 1)
                .sub(&x_plus_r.mul(&g.truncated(order - 1)));
            assert_eq!(left, right, "r={r}");
        }
    }

    #[test]
    fn factorial_poly_examples() {
        assert_eq!(rising_factorial_poly(0).coefficients(), &[BigInt::one()]);
        assert_eq!(
            rising_factorial_poly(3).coefficients(),
            &[
                BigInt::zero(),
                BigInt::from(2),
                BigInt::from(3),
                BigInt::one()
            ]
        );
        for r in 0..=8 {
            assert_eq!(
                falling_factorial_poly(r).evaluate(&BigInt::from(r)),
                sequences::factorial(r),
                "r={r}"
            );
        }
    }

    #[test]
    fn rising_factorial_coefficients_are_stirling_numbers() {
        for r in 0..=20 {
            assert_eq!(
                rising_factorial_poly(r).coefficients(),
                sequences::stirling_row(r),
                "r={r}"
            );
        }
    }

    #[test]
    fn rising_factorial_reads_off_the_filtered_weight_sums() {
        // Coefficient of y^k in the rising factorial, divided by r!, equals
        // the weight sum over cycle types with exactly k parts.
        for r in 0..=12 {
            let poly = rising_factorial_poly(r);
            let r_factorial = BigRational::from_integer(sequences::factorial(r));
            for k in 0..=r {
                let from_poly =
                    BigRational::from_integer(poly.coefficient(k)) / r_factorial.clone();
                let from_weights =
                    cycle_types::filtered_weight_sum(r, &SplitCondition::CycleCount(k)).unwrap();
                assert_eq!(from_poly, from_weights, "r={r} k={k}");
            }
        }
    }
}
