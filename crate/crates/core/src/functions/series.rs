//! Exact rational truncated power series in one and two variables.
//!
//! Every curvature function in the registry is assembled here as a series
//! with `BigRational` coefficients, by combining entire atoms
//! (`e^{as+bt}`, `(e^s-1)/s`, hyperbolic halves) and performing exact
//! divisions by the monomials `s`, `t`, `s+t`. A division with a nonzero
//! remainder panics: the asserts double-check the closed formulas as
//! transcribed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const ORDER1: usize = 44;
pub const ORDER2: usize = 36;
/// Divisions by `s + t` can only be checked for exactness below the top
/// total degrees, because earlier truncating operations (`div_s`, `mul`)
/// leave the top rows of their results incomplete.
pub const EXACT_MARGIN: usize = 8;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

/// Truncated series `Σ c[n] s^n`, `n ≤ ORDER1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1 {
    pub c: Vec<BigRational>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Self { c: vec![BigRational::zero(); ORDER1 + 1] }
    }

    pub fn constant(v: BigRational) -> Self {
        let mut p = Self::zero();
        p.c[0] = v;
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `e^{a s}`.
    pub fn exp(a: &BigRational) -> Self {
        let mut p = Self::zero();
        let mut pw = BigRational::one();
        for n in 0..=ORDER1 {
            p.c[n] = &pw / BigRational::from(factorial(n));
            pw *= a;
        }
        p
    }

    /// `(e^s - 1)/s`.
    pub fn efun() -> Self {
        let mut p = Self::zero();
        for n in 0..=ORDER1 {
            p.c[n] = BigRational::from(BigInt::one()) / BigRational::from(factorial(n + 1));
        }
        p
    }

    /// `sinh(a s)/(a s)` (even series).
    pub fn sinhc(a: &BigRational) -> Self {
        let mut p = Self::zero();
        let a2 = a * a;
        let mut pw = BigRational::one();
        for k in 0..=(ORDER1 / 2) {
            p.c[2 * k] = &pw / BigRational::from(factorial(2 * k + 1));
            pw *= &a2;
        }
        p
    }

    /// `cosh(a s)`.
    pub fn cosh(a: &BigRational) -> Self {
        let mut p = Self::zero();
        let a2 = a * a;
        let mut pw = BigRational::one();
        for k in 0..=(ORDER1 / 2) {
            p.c[2 * k] = &pw / BigRational::from(factorial(2 * k));
            pw *= &a2;
        }
        p
    }

    /// The monomial `s`.
    pub fn s() -> Self {
        let mut p = Self::zero();
        p.c[1] = BigRational::one();
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for n in 0..=ORDER1 {
            p.c[n] = &self.c[n] + &o.c[n];
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for n in 0..=ORDER1 {
            p.c[n] = &self.c[n] - &o.c[n];
        }
        p
    }

    pub fn scale(&self, v: &BigRational) -> Self {
        let mut p = Self::zero();
        for n in 0..=ORDER1 {
            p.c[n] = &self.c[n] * v;
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for i in 0..=ORDER1 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(ORDER1 - i) {
                if o.c[j].is_zero() {
                    continue;
                }
                let prod = &self.c[i] * &o.c[j];
                p.c[i + j] += prod;
            }
        }
        p
    }

    /// Exact division by `s` (requires zero constant term). The top
    /// coefficient of the quotient is unknown at this truncation and set
    /// to zero.
    pub fn div_s(&self) -> Self {
        assert!(self.c[0].is_zero(), "div_s: nonzero constant term {}", self.c[0]);
        let mut p = Self::zero();
        for n in 1..=ORDER1 {
            p.c[n - 1] = self.c[n].clone();
        }
        p
    }

    /// Division by a unit series (nonzero constant term).
    pub fn div_unit(&self, o: &Self) -> Self {
        assert!(!o.c[0].is_zero(), "div_unit: divisor has zero constant term");
        let mut q = Self::zero();
        for n in 0..=ORDER1 {
            let mut acc = self.c[n].clone();
            for j in 1..=n {
                let prod = &o.c[j] * &q.c[n - j];
                acc -= prod;
            }
            q.c[n] = acc / &o.c[0];
        }
        q
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(rational_to_f64).collect()
    }
}

/// Truncated bivariate series `Σ c[p][q] s^p t^q` with `p + q ≤ ORDER2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2 {
    /// Rectangular storage; entries with `p + q > ORDER2` stay zero.
    pub c: Vec<Vec<BigRational>>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self { c: vec![vec![BigRational::zero(); ORDER2 + 1]; ORDER2 + 1] }
    }

    pub fn constant(v: BigRational) -> Self {
        let mut p = Self::zero();
        p.c[0][0] = v;
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `e^{a s + b t}`.
    pub fn exp(a: &BigRational, b: &BigRational) -> Self {
        let mut p = Self::zero();
        let mut pa = vec![BigRational::one()];
        for _ in 1..=ORDER2 {
            pa.push(pa.last().unwrap() * a);
        }
        let mut pb = vec![BigRational::one()];
        for _ in 1..=ORDER2 {
            pb.push(pb.last().unwrap() * b);
        }
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] =
                    &pa[i] * &pb[j] / BigRational::from(factorial(i) * factorial(j));
            }
        }
        p
    }

    /// Substitute `s ← a·s + b·t` into a univariate series.
    pub fn subst_linear(f: &Poly1, a: &BigRational, b: &BigRational) -> Self {
        // Σ_n f_n (as + bt)^n, binomially expanded.
        let mut p = Self::zero();
        for n in 0..=ORDER2.min(ORDER1) {
            if f.c[n].is_zero() {
                continue;
            }
            let mut binom = BigRational::one();
            let mut apow = num_traits::pow::pow(a.clone(), n);
            let mut bpow = BigRational::one();
            for k in 0..=n {
                // coefficient of s^{n-k} t^k: C(n,k) a^{n-k} b^k
                let term = &f.c[n] * &binom * &apow * &bpow;
                p.c[n - k][k] += term;
                if k < n {
                    binom = binom * rat((n - k) as i64, (k + 1) as i64);
                    if a.is_zero() {
                        apow = BigRational::zero();
                        if n - k - 1 == 0 {
                            apow = BigRational::one();
                        }
                    } else {
                        apow = apow / a;
                    }
                    bpow *= b;
                }
            }
        }
        p
    }

    /// `E(s)` or `E(t)` or `E(s+t)` style atoms: `(e^{as+bt} - 1)/(as+bt)`
    /// for `(a,b)` in `{(1,0), (0,1), (1,1)}` — expanded directly.
    pub fn efun(a: &BigRational, b: &BigRational) -> Self {
        let mut p = Self::zero();
        // Σ_{n≥0} (as+bt)^n / (n+1)!
        let mut f = Poly1::zero();
        for n in 0..=ORDER1 {
            f.c[n] = BigRational::from(BigInt::one()) / BigRational::from(factorial(n + 1));
        }
        let sub = Self::subst_linear(&f, a, b);
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] = sub.c[i][j].clone();
            }
        }
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] = &self.c[i][j] + &o.c[i][j];
            }
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] = &self.c[i][j] - &o.c[i][j];
            }
        }
        p
    }

    pub fn scale(&self, v: &BigRational) -> Self {
        let mut p = Self::zero();
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] = &self.c[i][j] * v;
            }
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for i1 in 0..=ORDER2 {
            for j1 in 0..=(ORDER2 - i1) {
                if self.c[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..=(ORDER2 - i1 - j1) {
                    for j2 in 0..=(ORDER2 - i1 - j1 - i2) {
                        if o.c[i2][j2].is_zero() {
                            continue;
                        }
                        let prod = &self.c[i1][j1] * &o.c[i2][j2];
                        p.c[i1 + i2][j1 + j2] += prod;
                    }
                }
            }
        }
        p
    }

    /// Exact division by `s`.
    pub fn div_s(&self) -> Self {
        for j in 0..=ORDER2 {
            assert!(self.c[0][j].is_zero(), "div_s: remainder at t^{j}");
        }
        let mut p = Self::zero();
        for i in 1..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i - 1][j] = self.c[i][j].clone();
            }
        }
        p
    }

    /// Exact division by `t`.
    pub fn div_t(&self) -> Self {
        for i in 0..=ORDER2 {
            assert!(self.c[i][0].is_zero(), "div_t: remainder at s^{i}");
        }
        let mut p = Self::zero();
        for i in 0..=ORDER2 {
            for j in 1..=(ORDER2 - i) {
                p.c[i][j - 1] = self.c[i][j].clone();
            }
        }
        p
    }

    /// Exact division by `s + t`: solve `N = (s+t) Q` viewing series as
    /// polynomials in `s` over `Q[t]`, from the top `s`-degree down.
    /// Panics when the remainder (a series in `t` alone) is nonzero.
    pub fn div_st(&self) -> Self {
        let mut q = Self::zero();
        // Q[i][j]: N[i+1] relation: N_i = Q_{i-1} + t·Q_i (coefficients in t)
        // top: Q_{ORDER2} = 0. Work downwards: Q_{i-1}(t) = N_i(t) - t Q_i(t).
        let mut qi = vec![BigRational::zero(); ORDER2 + 2]; // Q_i as t-series
        for i in (1..=ORDER2).rev() {
            // Q_{i-1}(t) = N_i(t) - t*Q_i(t)
            let mut qim1 = vec![BigRational::zero(); ORDER2 + 2];
            for j in 0..=ORDER2 {
                let shifted = if j >= 1 { qi[j - 1].clone() } else { BigRational::zero() };
                qim1[j] = &self.c[i][j] - &shifted;
            }
            for j in 0..=ORDER2 {
                if (i - 1) + j <= ORDER2 {
                    q.c[i - 1][j] = qim1[j].clone();
                }
            }
            qi = qim1;
        }
        // remainder: N_0(t) - t*Q_0(t) must vanish below the top margin
        for j in 0..=(ORDER2 - EXACT_MARGIN) {
            let shifted = if j >= 1 { qi[j - 1].clone() } else { BigRational::zero() };
            let rem = &self.c[0][j] - &shifted;
            assert!(rem.is_zero(), "div_st: nonzero remainder at t^{j}: {rem}");
        }
        q
    }

    /// Division by a unit series.
    pub fn div_unit(&self, o: &Self) -> Self {
        assert!(!o.c[0][0].is_zero(), "div_unit: divisor has zero constant term");
        let mut q = Self::zero();
        // order by total degree, lexicographic within
        for deg in 0..=ORDER2 {
            for i in (0..=deg).rev() {
                let j = deg - i;
                let mut acc = self.c[i][j].clone();
                for a in 0..=i {
                    for b in 0..=j {
                        if a + b == 0 {
                            continue;
                        }
                        let prod = &o.c[a][b] * &q.c[i - a][j - b];
                        acc -= prod;
                    }
                }
                q.c[i][j] = acc / &o.c[0][0];
            }
        }
        q
    }

    /// Swap the two variables.
    pub fn swap(&self) -> Self {
        let mut p = Self::zero();
        for i in 0..=ORDER2 {
            for j in 0..=(ORDER2 - i) {
                p.c[i][j] = self.c[j][i].clone();
            }
        }
        p
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.c
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect()
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn efun_basics() {
        let e = Poly1::efun();
        assert_eq!(e.c[0], BigRational::one());
        assert_eq!(e.c[1], rat(1, 2));
        assert_eq!(e.c[2], rat(1, 6));
    }

    #[test]
    fn mul_and_div_unit_invert() {
        let a = Poly1::exp(&rat(1, 1));
        let b = Poly1::efun();
        let prod = a.mul(&b);
        let back = prod.div_unit(&a);
        assert_eq!(back, b);
    }

    #[test]
    fn div_s_shift() {
        let e = Poly1::exp(&rat(1, 1)).sub(&Poly1::one()); // e^s - 1
        let q = e.div_s();
        assert_eq!(q.c[0], BigRational::one());
        assert_eq!(q.c[1], rat(1, 2));
    }

    #[test]
    fn poly2_exp_and_div_st() {
        // (e^{s+t} - 1) / (s+t) should equal efun(1,1)
        let est = Poly2::exp(&rat(1, 1), &rat(1, 1)).sub(&Poly2::one());
        let q = est.div_st();
        let e = Poly2::efun(&rat(1, 1), &rat(1, 1));
        // compare up to total degree ORDER2 - 1
        for i in 0..ORDER2 {
            for j in 0..(ORDER2 - i) {
                assert_eq!(q.c[i][j], e.c[i][j], "mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn bernoulli_from_div_unit() {
        // s/(e^s - 1) = Σ B_n s^n / n!
        let inv = Poly1::one().div_unit(&Poly1::efun());
        assert_eq!(inv.c[0], BigRational::one());
        assert_eq!(inv.c[1], rat(-1, 2));
        assert_eq!(inv.c[2], rat(1, 12));
        assert_eq!(inv.c[3], BigRational::zero());
        assert_eq!(inv.c[4], rat(-1, 720));
    }

    #[test]
    fn rational_to_f64_large() {
        let big = BigRational::new(BigInt::from(1u64) << 100, BigInt::from(3));
        let v = rational_to_f64(&big);
        assert!((v - (2f64.powi(100) / 3.0)).abs() / v < 1e-14);
    }
}
