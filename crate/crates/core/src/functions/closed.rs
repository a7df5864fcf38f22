//! Closed-form evaluators for the curvature functions, in logarithmic
//! coordinates `s = log u`, `t = log v`.
//!
//! All evaluators accept complex arguments (the singularity-safe layer
//! averages them over small complex circles). On the real axis the
//! differences `u - 1`, `v - 1`, `uv - 1` go through `expm1`, and products
//! `uv` through `exp(s+t)`, so no accuracy is lost approaching the
//! removable-singularity sets until the patch takes over.

use crate::C64;

/// `e^z - 1`, careful on the real axis.
pub fn em1(z: C64) -> C64 {
    if z.im == 0.0 {
        C64::new(z.re.exp_m1(), 0.0)
    } else {
        z.exp() - 1.0
    }
}

fn ex(z: C64) -> C64 {
    z.exp()
}

pub fn cf_l0(s: C64) -> C64 {
    s / em1(s)
}

pub fn cf_l1(s: C64) -> C64 {
    let d = em1(s);
    (d - s) / (d * d)
}

/// `ℒ_α(u) = (-1)^α (log u - Σ_{j=1}^{α} (-1)^{j-1}(u-1)^j / j)/(u-1)^{α+1}`.
pub fn cf_l_alpha(alpha: u32, s: C64) -> C64 {
    let w = em1(s);
    let mut sum = s;
    let mut pw = C64::new(1.0, 0.0);
    for j in 1..=alpha {
        pw *= w;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sum -= pw * (sign / j as f64);
    }
    let sign = if alpha % 2 == 0 { 1.0 } else { -1.0 };
    sign * sum / (pw * w)
}

pub fn cf_k_gamma(s: C64) -> C64 {
    1.0 / em1(s) - 1.0 / s
}

pub fn cf_k00(s: C64) -> C64 {
    -(2.0 * cf_k_gamma(s) + 1.0) / em1(s)
}

pub fn cf_k_eps(e_sum: f64, s: C64) -> C64 {
    cf_k00(s) - e_sum * cf_k_gamma(s)
}

pub fn cf_f_gamma(s: C64) -> C64 {
    let d = em1(s);
    (s - d) / (d * d)
}

pub fn cf_f00(s: C64) -> C64 {
    let d = em1(s);
    -2.0 * cf_f_gamma(s) / d - s / (d * d)
}

pub fn cf_f_eps(e_sum: f64, s: C64) -> C64 {
    cf_f00(s) - e_sum * cf_f_gamma(s)
}

/// `K₂(2s) = 1/3 - (coth s / s - 1/s²)`.
pub fn cf_k2(s: C64) -> C64 {
    let z = s * 0.5;
    C64::new(1.0 / 3.0, 0.0) - (z.cosh() / z.sinh() / z - 1.0 / (z * z))
}

pub fn cf_him_gamma(s: C64, t: C64) -> C64 {
    let (u, v) = (ex(s), ex(t));
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    v * du / (s * dv * duv) + u * dv / (t * du * duv) - 1.0 / (s * t)
}

pub fn cf_hre_gamma(s: C64, t: C64) -> C64 {
    let u = ex(s);
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    cf_him_gamma(s, t) - 2.0 * u * dv / (duv * du * t) + 2.0 / (s * (s + t))
}

pub fn cf_hre00(s: C64, t: C64) -> C64 {
    -2.0 * cf_hre_gamma(s, t) / em1(s + t)
}

/// Second divided difference of exp at `(0, s, s+t)`:
/// `((uv-1)s - (u-1)(s+t)) / (s t (s+t))`.
pub fn cf_phi(s: C64, t: C64) -> C64 {
    (em1(s + t) * s - em1(s) * (s + t)) / (s * t * (s + t))
}

pub fn cf_hre_eps(e_sum: f64, e_prod: f64, s: C64, t: C64) -> C64 {
    let last = 2.0 * e_prod * (em1(s + t) * s - em1(s) * (s + t)) / (s * t * em1(s + t));
    cf_hre00(s, t) - e_sum * cf_hre_gamma(s, t) + last
}

pub fn cf_him_eps(e1: f64, e2: f64, s: C64, t: C64) -> C64 {
    (e2 - e1) * cf_him_gamma(s, t)
}

pub fn cf_g3(s: C64, t: C64) -> C64 {
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    2.0 * (duv * s - du * (s + t)) / (du * dv * duv)
}

pub fn cf_gim_gamma(s: C64, t: C64) -> C64 {
    let (u, v) = (ex(s), ex(t));
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    u * s / (du * du * duv) + v * t / (dv * dv * duv) - 1.0 / (du * dv)
}

/// `G₁ = -2u(uv+u-2) log u/((u-1)²(uv-1)²) + 2 log v/((v-1)(uv-1)²) + 2u/((u-1)(uv-1))`.
pub fn cf_g1(s: C64, t: C64) -> C64 {
    let u = ex(s);
    let uv = ex(s + t);
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    -2.0 * u * (uv + u - 2.0) * s / (du * du * duv * duv) + 2.0 * t / (dv * duv * duv)
        + 2.0 * u / (du * duv)
}

/// `G^Re_γ` in its fully expanded form.
pub fn cf_gre_gamma(s: C64, t: C64) -> C64 {
    let u = ex(s);
    let v = ex(t);
    let uv = ex(s + t);
    let (du, dv, duv) = (em1(s), em1(t), em1(s + t));
    -u * (uv + 2.0 * u - 3.0) * s / (du * du * duv * duv)
        + (u * v * v + v - 2.0) * t / (dv * dv * duv * duv)
        + (uv - 2.0 * u + 1.0) / (du * dv * duv)
}

pub fn cf_gre00(s: C64, t: C64) -> C64 {
    (-2.0 * cf_gre_gamma(s, t) + cf_g3(s, t)) / em1(s + t)
}

pub fn cf_gre_eps(e_sum: f64, e_prod: f64, s: C64, t: C64) -> C64 {
    cf_gre00(s, t) - e_sum * cf_gre_gamma(s, t) + e_prod * cf_g3(s, t)
}

pub fn cf_gim_eps(e1: f64, e2: f64, s: C64, t: C64) -> C64 {
    (e2 - e1) * cf_gim_gamma(s, t)
}

// --- comparison functions (adjusted conventions) -------------------------

pub fn cf_k0_cm(s: C64) -> C64 {
    let u = ex(s);
    let d = em1(s);
    2.0 * (2.0 + u * (s - 2.0) + s) / (s * d * d)
}

pub fn cf_k1_cm(s: C64) -> C64 {
    let u = ex(s);
    let d = em1(s);
    (4.0 * s * u - 2.0 * u * u + 2.0) / (s * d * d)
}

pub fn cf_h0_cm(s: C64, t: C64) -> C64 {
    let st = s + t;
    let num = t * st * s.cosh() - s * st * t.cosh()
        + (s - t) * (st + s.sinh() + t.sinh() - st.sinh());
    let den = s * t * st * (s * 0.5).sinh() * (t * 0.5).sinh() * (st * 0.5).sinh().powi(2);
    (-(st) * 0.5).exp() * num / den
}

/// `H₁ = cosh((s+t)/2) · H₀` holds for the unadjusted pair; with the
/// `e^{-(s+t)/2}`-adjusted `H₀` registered here the factor becomes
/// `(1+uv)/2`, which is what the divided-difference relation
/// `H^Re_{1,0} = ((1+uv)/2) H^Re_{0,0}` requires.
pub fn cf_h1_cm(s: C64, t: C64) -> C64 {
    let st = s + t;
    (st * 0.5).cosh() * (st * 0.5).exp() * cf_h0_cm(s, t)
}

/// The last `sinh(s+t)` enters with a plus sign (the sum must equal
/// `-4 H^Im_γ`, which pins it).
pub fn cf_s_cm(s: C64, t: C64) -> C64 {
    let st = s + t;
    let num = st - t * s.cosh() - s * t.cosh() - s.sinh() - t.sinh() + st.sinh();
    let den = s * t * (s * 0.5).sinh() * (t * 0.5).sinh() * (st * 0.5).sinh();
    num / den
}
