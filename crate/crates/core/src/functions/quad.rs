//! Quadrature oracles: adaptive Simpson on finite intervals and the
//! half-line integrals
//! `H^{(p)}_α(s, m) = ∫₀^∞ x^m (1+x)^{-α₀-1} Π_j (x+s_j)^{-α_j-1} dx`
//! whose closed forms are divided differences of `x^m log x`.

use crate::error::{Error, Result};

/// Adaptive Simpson with absolute tolerance.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || (b - a) < 1e-14 {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureFailure { tol, estimate: delta.abs() / 15.0 });
        }
        let l = recurse(f, a, fa, m, fm, left, lm, flm, tol * 0.5, depth - 1)?;
        let r = recurse(f, m, fm, b, fb, right, rm, frm, tol * 0.5, depth - 1)?;
        Ok(l + r)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Integral over `(0, ∞)` of a smooth integrand that decays at least like
/// `x^{-2}`: split at 1 and invert the tail.
pub fn integral_half_line<F: Fn(f64) -> f64>(f: &F, tol: f64) -> Result<f64> {
    let head = adaptive_simpson(&|x| f(x), 0.0, 1.0, tol * 0.5)?;
    let tail = adaptive_simpson(&|w| if w == 0.0 { tail_limit(f) } else { f(1.0 / w) / (w * w) }, 0.0, 1.0, tol * 0.5)?;
    return Ok(head + tail);

    fn tail_limit<F: Fn(f64) -> f64>(f: &F) -> f64 {
        // limit of f(1/w)/w² as w → 0, evaluated just inside
        let w = 1e-9;
        f(1.0 / w) / (w * w)
    }
}

/// `H^{(p)}_α(s, m)` by adaptive quadrature to absolute tolerance `tol`.
///
/// `alpha` has length `p + 1` (the leading entry indexes the `(1+x)`
/// factor); `s` has length `p`.
pub fn h_integral_quadrature(alpha: &[u32], s: &[f64], m: u32, tol: f64) -> Result<f64> {
    if alpha.len() != s.len() + 1 {
        return Err(Error::Domain("alpha must have one more entry than s".into()));
    }
    for &sj in s {
        if !(sj > 0.0) {
            return Err(Error::Domain(format!("node must be positive, got {sj}")));
        }
    }
    let total: u32 = alpha.iter().map(|&a| a + 1).sum();
    if m + 2 > total {
        return Err(Error::Domain("integral does not converge".into()));
    }
    let integrand = move |x: f64| -> f64 {
        if x <= 0.0 {
            return if m == 0 { (-(alpha[0] as f64 + 1.0) * 0.0f64.ln_1p()).exp() * s.iter().zip(&alpha[1..]).map(|(&sj, &aj)| sj.powi(-(aj as i32) - 1)).product::<f64>() } else { 0.0 };
        }
        let mut ln = m as f64 * x.ln() - (alpha[0] as f64 + 1.0) * x.ln_1p();
        for (j, &sj) in s.iter().enumerate() {
            ln -= (alpha[j + 1] as f64 + 1.0) * (x + sj).ln();
        }
        ln.exp()
    };
    integral_half_line(&integrand, tol)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
