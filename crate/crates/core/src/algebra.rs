//! Truncated Fourier-series model of the smooth noncommutative torus
//! algebra generated by two unitaries with `U₂U₁ = e^{2πiθ} U₁U₂`.
//!
//! Elements are finite sums `a = Σ a_{k,l} U₁^k U₂^l`. Products accumulate
//! the reordering phase `e^{2πiθ l k'}`, the involution satisfies
//! `(a*)_{-k,-l} = conj(a_{k,l}) e^{2πiθ kl}` and the normalized trace reads
//! off the `(0,0)` coefficient. Operations never drop modes silently: every
//! result records its exact degree box and callers project explicitly when
//! they need a fixed ambient box.

use crate::error::{Error, Result};
use crate::C64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Truncated Fourier series over the deformation parameter `theta`.
#[derive(Debug, Clone)]
pub struct FourierElement {
    pub theta: f64,
    /// Mode coefficients, keyed by `(k, l)`.
    coeffs: BTreeMap<(i32, i32), C64>,
    /// Half-width `D` bounding `|k|, |l|` of the support.
    degree_box: u32,
}

/// Which derivation to apply in [`FourierElement::derive`].
///
/// `DTau = δ₁ + τ̄ δ₂` and `DTauStar = δ₁ + τ δ₂`; the operator adjoint of
/// `δ_τ` is `-(δ₁ + τ δ₂)`, i.e. differs from `DTauStar` by a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    Delta1,
    Delta2,
    DTau,
    DTauStar,
}

impl FourierElement {
    pub fn zero(theta: f64) -> Self {
        Self { theta, coeffs: BTreeMap::new(), degree_box: 0 }
    }

    pub fn one(theta: f64) -> Self {
        Self::monomial(theta, 0, 0, C64::new(1.0, 0.0))
    }

    /// `c · U₁^k U₂^l`.
    pub fn monomial(theta: f64, k: i32, l: i32, c: C64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != C64::new(0.0, 0.0) {
            coeffs.insert((k, l), c);
        }
        let degree_box = k.unsigned_abs().max(l.unsigned_abs());
        Self { theta, coeffs, degree_box }
    }

    pub fn u1(theta: f64) -> Self {
        Self::monomial(theta, 1, 0, C64::new(1.0, 0.0))
    }

    pub fn u2(theta: f64) -> Self {
        Self::monomial(theta, 0, 1, C64::new(1.0, 0.0))
    }

    /// `c (U₁^k U₂^l + adjoint)` — a convenient self-adjoint building block.
    pub fn sym_mode(theta: f64, k: i32, l: i32, c: f64) -> Self {
        let m = Self::monomial(theta, k, l, C64::new(c, 0.0));
        m.add(&m.star())
    }

    pub fn from_coeffs<I>(theta: f64, it: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), C64)>,
    {
        let mut e = Self::zero(theta);
        for ((k, l), c) in it {
            e.insert_add((k, l), c);
        }
        e
    }

    pub fn coeff(&self, k: i32, l: i32) -> C64 {
        self.coeffs.get(&(k, l)).copied().unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(i32, i32), &C64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree_box(&self) -> u32 {
        self.degree_box
    }

    fn insert_add(&mut self, key: (i32, i32), c: C64) {
        let entry = self.coeffs.entry(key).or_insert_with(|| C64::new(0.0, 0.0));
        *entry += c;
        if entry.norm_sqr() == 0.0 {
            self.coeffs.remove(&key);
        }
        self.degree_box = self
            .degree_box
            .max(key.0.unsigned_abs())
            .max(key.1.unsigned_abs());
    }

    fn check_theta(&self, other: &Self) -> Result<()> {
        if self.theta.to_bits() != other.theta.to_bits() {
            return Err(Error::ThetaMismatch(self.theta, other.theta));
        }
        Ok(())
    }

    /// Phase `e^{2πiθ m}` reduced modulo one before exponentiation.
    fn phase(&self, m: i64) -> C64 {
        let frac = (self.theta * m as f64).rem_euclid(1.0);
        C64::from_polar(1.0, TWO_PI * frac)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_theta(other).expect("theta mismatch in add");
        let mut out = self.clone();
        for (&key, &c) in &other.coeffs {
            out.insert_add(key, c);
        }
        out.degree_box = self.degree_box.max(other.degree_box).min(out.max_support_box());
        out
    }

    fn max_support_box(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|&(k, l)| k.unsigned_abs().max(l.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        if c == C64::new(0.0, 0.0) {
            out.coeffs.clear();
            return out;
        }
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    /// Algebra product. The reordering `U₂^l U₁^{k'} = e^{2πiθ l k'} U₁^{k'} U₂^l`
    /// puts the coefficient `a_{k,l} b_{k',l'} e^{2πiθ l k'}` on mode
    /// `(k+k', l+l')`. Result box is the sum of the factor boxes.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_theta(other)?;
        let mut out = Self::zero(self.theta);
        for (&(k, l), &a) in &self.coeffs {
            for (&(kp, lp), &b) in &other.coeffs {
                let ph = self.phase(l as i64 * kp as i64);
                out.insert_add((k + kp, l + lp), a * b * ph);
            }
        }
        out.degree_box = self.degree_box + other.degree_box;
        out
            .degree_box = out.degree_box.max(out.max_support_box());
        Ok(out)
    }

    /// Involution: `(a*)_{-k,-l} = conj(a_{k,l}) e^{2πiθ kl}`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.theta);
        for (&(k, l), &c) in &self.coeffs {
            let ph = self.phase(k as i64 * l as i64);
            out.insert_add((-k, -l), c.conj() * ph);
        }
        out.degree_box = self.degree_box;
        out
    }

    /// Normalized trace: the `(0,0)` coefficient.
    pub fn trace(&self) -> C64 {
        self.coeff(0, 0)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.sub(&self.star()).norm_inf() <= tol
    }

    /// Apply one of the canonical derivations; `tau` is only used by the
    /// complex combinations.
    pub fn derive(&self, which: Derivation, tau: C64) -> Self {
        let mut out = Self::zero(self.theta);
        for (&(k, l), &c) in &self.coeffs {
            let factor = match which {
                Derivation::Delta1 => C64::new(0.0, TWO_PI) * k as f64,
                Derivation::Delta2 => C64::new(0.0, TWO_PI) * l as f64,
                Derivation::DTau => C64::new(0.0, TWO_PI) * (k as f64 + tau.conj() * l as f64),
                Derivation::DTauStar => C64::new(0.0, TWO_PI) * (k as f64 + tau * l as f64),
            };
            out.insert_add((k, l), c * factor);
        }
        out.degree_box = self.degree_box;
        out
    }

    /// `Λ_τ = δ_τ ∘ δ_τ*`, acting as `-4π² |k + τl|²` on mode `(k,l)`.
    pub fn laplacian_tau(&self, tau: C64) -> Self {
        let mut out = Self::zero(self.theta);
        for (&(k, l), &c) in &self.coeffs {
            let z = k as f64 + tau * l as f64;
            out.insert_add((k, l), c * (-4.0 * PI * PI * z.norm_sqr()));
        }
        out.degree_box = self.degree_box;
        out
    }

    /// `□^Re(h) = ½ (δ_τ h · δ_τ* h + δ_τ* h · δ_τ h)`.
    pub fn square_re(&self, tau: C64) -> Result<Self> {
        let x = self.derive(Derivation::DTau, tau);
        let y = self.derive(Derivation::DTauStar, tau);
        Ok(x.mul(&y)?.add(&y.mul(&x)?).scale(C64::new(0.5, 0.0)))
    }

    /// `□^Im(h) = ½ (δ_τ h · δ_τ* h - δ_τ* h · δ_τ h)`.
    pub fn square_im(&self, tau: C64) -> Result<Self> {
        let x = self.derive(Derivation::DTau, tau);
        let y = self.derive(Derivation::DTauStar, tau);
        Ok(x.mul(&y)?.sub(&y.mul(&x)?).scale(C64::new(0.5, 0.0)))
    }

    /// ℓ¹ norm of the coefficients — an upper bound for the operator norm.
    pub fn norm_l1(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Explicit projection onto the box `|k|,|l| ≤ d`.
    pub fn project(&self, d: u32) -> Self {
        let mut out = Self::zero(self.theta);
        for (&(k, l), &c) in &self.coeffs {
            if k.unsigned_abs() <= d && l.unsigned_abs() <= d {
                out.insert_add((k, l), c);
            }
        }
        out.degree_box = d;
        out
    }

    /// Drop coefficients below `tol` in absolute value (explicit cleanup,
    /// used by iterative solvers between steps).
    pub fn chop(&self, tol: f64) -> Self {
        let mut out = Self::zero(self.theta);
        for (&key, &c) in &self.coeffs {
            if c.norm() > tol {
                out.insert_add(key, c);
            }
        }
        out.degree_box = self.degree_box.min(out.max_support_box().max(0));
        out
    }

    /// Truncated exponential series `Σ aⁿ/n!`, stopped when the ℓ¹ norm of
    /// the term drops below `tol` (cap `max_order`). Coefficients three
    /// orders below `tol` are chopped from intermediate terms; the series
    /// tolerance owns that error.
    pub fn exp(&self, tol: f64, max_order: u32) -> Result<Self> {
        let mut sum = Self::one(self.theta);
        let mut term = Self::one(self.theta);
        for n in 1..=max_order {
            term = term.mul(self)?.scale(C64::new(1.0 / n as f64, 0.0)).chop(tol * 1e-3);
            sum = sum.add(&term);
            if term.norm_l1() < tol {
                return Ok(sum);
            }
        }
        if self.norm_l1() == 0.0 {
            return Ok(sum);
        }
        Err(Error::SeriesDivergence(format!(
            "exp series tail {:.3e} after {max_order} terms",
            self.norm_l1().powi(max_order as i32)
        )))
    }

    /// Banach-algebra logarithm `log(1 + w)` with `w = a - 1`, `‖w‖₁ < 1`.
    pub fn log(&self, tol: f64, max_order: u32) -> Result<Self> {
        let w = self.sub(&Self::one(self.theta));
        let r = w.norm_l1();
        if r >= 1.0 {
            return Err(Error::SeriesDivergence(format!("log series needs ‖a-1‖₁ < 1, got {r}")));
        }
        let mut sum = Self::zero(self.theta);
        let mut pw = Self::one(self.theta);
        for n in 1..=max_order {
            pw = pw.mul(&w)?.chop(tol * 1e-3);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sum = sum.add(&pw.scale(C64::new(sign / n as f64, 0.0)));
            if pw.norm_l1() / (n as f64) < tol {
                return Ok(sum);
            }
        }
        Err(Error::SeriesDivergence(format!("log series tail after {max_order} terms, ratio {r}")))
    }

    /// Inverse by Hotelling iteration `X ← X(2 - aX)` on a fixed working
    /// box, verified on the full product. Fails with a singular-metric
    /// error when the residual stalls above `tol`.
    pub fn inverse(&self, working_box: u32, tol: f64) -> Result<Self> {
        let t = self.trace();
        if t.norm() < 1e-300 {
            return Err(Error::SingularMetric { residual: f64::INFINITY });
        }
        let mut x = Self::one(self.theta).scale(C64::new(1.0, 0.0) / t);
        let mut last = f64::INFINITY;
        for _ in 0..200 {
            let ax = self.mul(&x)?.project(working_box);
            let two_minus = Self::one(self.theta).scale(C64::new(2.0, 0.0)).sub(&ax);
            x = x.mul(&two_minus)?.project(working_box).chop(tol * 1e-4);
            let res = self.mul(&x)?.sub(&Self::one(self.theta)).norm_l1();
            if res <= tol {
                return Ok(x);
            }
            if res >= last * 0.99 {
                return Err(Error::SingularMetric { residual: res });
            }
            last = res;
        }
        Err(Error::SingularMetric { residual: last })
    }

    /// Maximum coefficient difference against `other` over the joint support.
    pub fn dist_inf(&self, other: &Self) -> f64 {
        self.sub(other).norm_inf()
    }
}

/// Conformal datum: self-adjoint `h`, Weyl factor squared `k² = e^h`, and
/// the complex modulus.
#[derive(Debug, Clone)]
pub struct ConformalDatum {
    pub h: FourierElement,
    pub k2: FourierElement,
    pub tau: C64,
}

impl ConformalDatum {
    pub fn new(h: FourierElement, tau: C64, tol: f64) -> Result<Self> {
        if !h.is_self_adjoint(1e-12) {
            return Err(Error::Domain("conformal factor log must be self-adjoint".into()));
        }
        if !(tau.im > 0.0) {
            return Err(Error::Domain("Im τ must be positive".into()));
        }
        let k2 = h.exp(tol, 64)?;
        Ok(Self { h, k2, tau })
    }
}

/// Connection one-forms solving the Hermitian-connection equations for a
/// positive metric element `K`, together with the holomorphic constant `z`.
#[derive(Debug, Clone)]
pub struct ConnectionForms {
    pub omega1: FourierElement,
    pub omega2: FourierElement,
    pub z: C64,
}

/// Constructive solution of the Hermitian-connection equations:
/// `ω₂* = (δ_τ K - (z + z̄)K) K⁻¹ / (τ̄ - τ)` and `ω₁ = z·1 - τ̄ ω₂`.
///
/// The defining identities `δ_j K = K ω_j + ω_j* K` are verified on the
/// full (unprojected) products; the residual is returned alongside.
pub fn hermitian_connection(
    k_elem: &FourierElement,
    z: C64,
    tau: C64,
    working_box: u32,
    tol: f64,
) -> Result<(ConnectionForms, f64)> {
    if !k_elem.is_self_adjoint(1e-10) {
        return Err(Error::Domain("metric element K must be self-adjoint".into()));
    }
    let k_inv = k_elem.inverse(working_box, tol)?;
    let dk = k_elem.derive(Derivation::DTau, tau);
    let zsum = z + z.conj();
    let numer = dk.sub(&k_elem.scale(zsum));
    let denom = tau.conj() - tau;
    let omega2_star = numer.mul(&k_inv)?.scale(C64::new(1.0, 0.0) / denom);
    let omega2 = omega2_star.star();
    let omega1 = FourierElement::one(k_elem.theta)
        .scale(z)
        .sub(&omega2.scale(tau.conj()));

    // residuals of δ_j K = K ω_j + ω_j* K for j = 1, 2
    let mut residual: f64 = 0.0;
    for which in [Derivation::Delta1, Derivation::Delta2] {
        let omega = match which {
            Derivation::Delta1 => &omega1,
            _ => &omega2,
        };
        let lhs = k_elem.derive(which, tau);
        let rhs = k_elem.mul(omega)?.add(&omega.star().mul(k_elem)?);
        residual = residual.max(lhs.sub(&rhs).norm_inf());
    }
    Ok((ConnectionForms { omega1, omega2, z }, residual))
}

// --- serialization -------------------------------------------------------

impl FourierElement {
    /// JSON form `{"theta": string, "coeffs": [[k,l,re,im],...]}`.
    pub fn to_json(&self) -> String {
        let mut rows = Vec::with_capacity(self.coeffs.len());
        for (&(k, l), &c) in &self.coeffs {
            rows.push(format!("[{},{},{:.17e},{:.17e}]", k, l, c.re, c.im));
        }
        format!("{{\"theta\":\"{:.17e}\",\"coeffs\":[{}]}}", self.theta, rows.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            theta: ThetaRaw,
            coeffs: Vec<(i32, i32, f64, f64)>,
        }
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum ThetaRaw {
            Text(String),
            Value(f64),
        }
        let raw: Raw = serde_json::from_str(text)?;
        let theta = match raw.theta {
            ThetaRaw::Value(v) => v,
            ThetaRaw::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad theta string: {e}")))?,
        };
        Ok(Self::from_coeffs(
            theta,
            raw.coeffs.into_iter().map(|(k, l, re, im)| ((k, l), C64::new(re, im))),
        ))
    }
}
