//! Scalar registry of the curvature functions: modified logarithms,
//! divided differences, half-line integrals, the `F`/`G` families produced
//! by integrating the resolvent expansion, the `K`/`H` families acting on
//! `log k²`, and the comparison set in the adjusted conventions.
//!
//! Every function carries a closed-form evaluator (valid for complex
//! arguments), exact-rational Taylor data at the origin, and the list of
//! removable-singularity sets. Evaluation is singularity-safe: within a
//! small radius of a singular set the closed form is replaced by the origin
//! series or, far from the origin, by the mean over a small complex circle
//! (all sets are removable, so the mean reproduces the value exactly to
//! quadrature accuracy).

pub mod closed;
pub mod divdiff;
pub mod quad;
pub mod series;

use crate::error::{Error, Result};
use crate::C64;
use num_rational::BigRational;
use series::{rat, Poly1, Poly2, ORDER2};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

pub use divdiff::divided_diff_idm_log;
pub use quad::h_integral_quadrature;

/// Distance from a singular set below which the closed form may not be
/// evaluated (outside the series reach the complex-circle mean replaces
/// it). Inside the series reach the origin series is used regardless of
/// set distance: the stacked cancellations of the comparison functions
/// lose far more than six digits near the sets, so a thin patch around
/// each set is not enough to hold the 1e-9 target.
pub const PATCH_RADIUS: f64 = 1e-3;
/// Radius of the complex circle used far from the origin.
const CAUCHY_RADIUS: f64 = 0.4;
const CAUCHY_NODES: usize = 32;
/// The origin series is trusted within `|s| + |t| ≤` this.
const SERIES_REACH: f64 = 1.9;

type Closed = Arc<dyn Fn(C64, C64) -> C64 + Send + Sync>;

/// A registered one- or two-variable curvature function.
///
/// Arguments are the logarithmic variables `s = log u`, `t = log v`.
#[derive(Clone)]
pub struct ModularFunction {
    pub name: String,
    pub arity: u8,
    closed: Closed,
    taylor1: Option<Vec<f64>>,
    taylor2: Option<Vec<Vec<f64>>>,
    /// Removable singular sets `{s=0}`, `{t=0}`, `{s+t=0}`.
    pub singular: (bool, bool, bool),
}

impl std::fmt::Debug for ModularFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModularFunction({}, arity {})", self.name, self.arity)
    }
}

impl ModularFunction {
    pub fn from_closed1(
        name: &str,
        closed: impl Fn(C64) -> C64 + Send + Sync + 'static,
        taylor1: Option<Vec<f64>>,
        sing_s: bool,
    ) -> Self {
        Self {
            name: name.into(),
            arity: 1,
            closed: Arc::new(move |s, _| closed(s)),
            taylor1,
            taylor2: None,
            singular: (sing_s, false, false),
        }
    }

    pub fn from_closed2(
        name: &str,
        closed: impl Fn(C64, C64) -> C64 + Send + Sync + 'static,
        taylor2: Option<Vec<Vec<f64>>>,
        singular: (bool, bool, bool),
    ) -> Self {
        Self {
            name: name.into(),
            arity: 2,
            closed: Arc::new(closed),
            taylor1: None,
            taylor2,
            singular,
        }
    }

    /// Taylor coefficients at the origin in `s`; error when the function
    /// does not carry series data (e.g. it has a genuine pole at `0`).
    pub fn taylor1(&self) -> Result<&[f64]> {
        self.taylor1
            .as_deref()
            .ok_or_else(|| Error::NotEntire(self.name.clone()))
    }

    /// Rectangular `c[p][q]` table (`p + q ≤` series order) in `(s, t)`.
    pub fn taylor2(&self) -> Result<&[Vec<f64>]> {
        self.taylor2
            .as_deref()
            .ok_or_else(|| Error::NotEntire(self.name.clone()))
    }

    fn eval_taylor1(&self, s: f64) -> Option<f64> {
        let c = self.taylor1.as_ref()?;
        let mut acc = 0.0;
        for &cn in c.iter().rev() {
            acc = acc * s + cn;
        }
        Some(acc)
    }

    fn eval_taylor2(&self, s: f64, t: f64) -> Option<f64> {
        let c = self.taylor2.as_ref()?;
        let mut acc = 0.0;
        for p in (0..c.len()).rev() {
            let row = &c[p];
            let mut rt = 0.0;
            for q in (0..row.len()).rev() {
                rt = rt * t + row[q];
            }
            acc = acc * s + rt;
        }
        Some(acc)
    }

    fn cauchy_mean(&self, s: f64, t: f64, in_s: bool) -> f64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..CAUCHY_NODES {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / CAUCHY_NODES as f64;
            let z = C64::from_polar(CAUCHY_RADIUS, ang);
            let v = if in_s {
                (self.closed)(C64::new(s, 0.0) + z, C64::new(t, 0.0))
            } else {
                (self.closed)(C64::new(s, 0.0), C64::new(t, 0.0) + z)
            };
            acc += v;
        }
        acc.re / CAUCHY_NODES as f64
    }

    /// Raw closed-form evaluation at complex arguments, without any
    /// singularity handling (used by oracles and diagnostics).
    pub fn eval_closed_raw(&self, s: C64, t: C64) -> C64 {
        (self.closed)(s, t)
    }

    /// Evaluate in logarithmic coordinates.
    pub fn eval_st(&self, s: f64, t: f64) -> f64 {
        if self.arity == 1 {
            if s.abs() <= SERIES_REACH {
                if let Some(v) = self.eval_taylor1(s) {
                    return v;
                }
            }
            if self.singular.0 && s.abs() < PATCH_RADIUS {
                return self.cauchy_mean(s, 0.0, true);
            }
            return (self.closed)(C64::new(s, 0.0), C64::new(0.0, 0.0)).re;
        }
        if s.abs() + t.abs() <= SERIES_REACH {
            if let Some(v) = self.eval_taylor2(s, t) {
                return v;
            }
        }
        let ds = if self.singular.0 { s.abs() } else { f64::INFINITY };
        let dt = if self.singular.1 { t.abs() } else { f64::INFINITY };
        let dst = if self.singular.2 { (s + t).abs() } else { f64::INFINITY };
        if ds.min(dt).min(dst) >= PATCH_RADIUS {
            return (self.closed)(C64::new(s, 0.0), C64::new(t, 0.0)).re;
        }
        // one-dimensional complex mean in whichever variable clears the
        // remaining sets
        let in_s = ds < PATCH_RADIUS || (dst < PATCH_RADIUS && dt >= CAUCHY_RADIUS);
        self.cauchy_mean(s, t, in_s)
    }

    /// Evaluate at multiplicative arguments `u (, v) > 0`.
    pub fn eval_u(&self, u: f64, v: f64) -> Result<f64> {
        if !(u > 0.0) || (self.arity == 2 && !(v > 0.0)) {
            return Err(Error::Domain(format!("{}: arguments must be positive", self.name)));
        }
        Ok(self.eval_st(u.ln(), if self.arity == 2 { v.ln() } else { 0.0 }))
    }
}

/// Modified logarithm `ℒ_α(u)`, with the series patch at `u = 1`.
pub fn modified_log(alpha: u32, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("modified_log needs u > 0, got {u}")));
    }
    let s = u.ln();
    if s.abs() < PATCH_RADIUS {
        // ℒ_α is the H-integral with nodes (1^{α+1}, u); expand via the
        // divided-difference limit instead of the cancelling closed form.
        let sign = if alpha % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * divided_diff_idm_log(&[(1.0, alpha + 1), (u, 1)], 0)?);
    }
    Ok(closed::cf_l_alpha(alpha, C64::new(s, 0.0)).re)
}

// --- registry -------------------------------------------------------------

pub struct Registry {
    map: BTreeMap<String, ModularFunction>,
}

impl Registry {
    pub fn get(&self, name: &str) -> Result<&ModularFunction> {
        self.map
            .get(name)
            .ok_or_else(|| Error::UnknownFunction(name.into()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.map.keys().map(|s| s.as_str()).collect()
    }

    pub fn eval1(&self, name: &str, u: f64) -> Result<f64> {
        let f = self.get(name)?;
        if f.arity != 1 {
            return Err(Error::Domain(format!("{name} is not a one-variable function")));
        }
        f.eval_u(u, 0.0)
    }

    pub fn eval2(&self, name: &str, u: f64, v: f64) -> Result<f64> {
        let f = self.get(name)?;
        if f.arity != 2 {
            return Err(Error::Domain(format!("{name} is not a two-variable function")));
        }
        f.eval_u(u, v)
    }
}

/// Exact-rational series for the whole registry, assembled once.
pub struct SeriesTables {
    pub e1: Poly1,
    pub k_gamma: Poly1,
    pub k00: Poly1,
    pub f_gamma: Poly1,
    pub f00: Poly1,
    pub l0: Poly1,
    pub k2: Poly1,
    pub k0cm: Poly1,
    pub k1cm: Poly1,
    pub es: Poly2,
    pub et: Poly2,
    pub est: Poly2,
    pub phi: Poly2,
    pub him_gamma: Poly2,
    pub hre_gamma: Poly2,
    pub hre00: Poly2,
    pub gim_gamma: Poly2,
    pub gre_gamma: Poly2,
    pub gre00: Poly2,
    pub g1: Poly2,
    pub g3: Poly2,
    pub h0cm: Poly2,
    pub h1cm: Poly2,
    pub scm: Poly2,
}

fn mul_s(p: &Poly2) -> Poly2 {
    let mut q = Poly2::zero();
    for i in 0..ORDER2 {
        for j in 0..=(ORDER2 - i - 1) {
            q.c[i + 1][j] = p.c[i][j].clone();
        }
    }
    q
}

fn mul_t(p: &Poly2) -> Poly2 {
    let mut q = Poly2::zero();
    for i in 0..ORDER2 {
        for j in 0..=(ORDER2 - i - 1) {
            q.c[i][j + 1] = p.c[i][j].clone();
        }
    }
    q
}

fn mul_st(p: &Poly2) -> Poly2 {
    mul_s(p).add(&mul_t(p))
}

pub fn series_tables() -> &'static SeriesTables {
    static TABLES: OnceLock<SeriesTables> = OnceLock::new();
    TABLES.get_or_init(build_series_tables)
}

fn build_series_tables() -> SeriesTables {
    let one = Poly1::one();
    let e1 = Poly1::efun();
    let s_poly = Poly1::s();
    let one_m_e = one.sub(&e1);
    let e_sq = e1.mul(&e1);

    let k_gamma = one_m_e.div_s().div_unit(&e1);
    let f_gamma = one_m_e.div_s().div_unit(&e_sq);
    let l0 = one.div_unit(&e1);

    // shared numerator  N = 2(1-E) + sE;  K₀₀ = -N/(s²E²),  F₀₀ = K₀₀/E
    let n_shared = one_m_e.scale(&rat(2, 1)).add(&s_poly.mul(&e1));
    let k00 = n_shared
        .div_s()
        .div_s()
        .div_unit(&e_sq)
        .scale(&rat(-1, 1));
    let f00 = k00.div_unit(&e1);

    // K₂(s) = 1/3 - 4 (ch - shc)/(s² shc),  ch = cosh(s/2), shc = sinh(s/2)/(s/2)
    let ch = Poly1::cosh(&rat(1, 2));
    let shc = Poly1::sinhc(&rat(1, 2));
    let k2 = Poly1::constant(rat(1, 3)).sub(
        &ch.sub(&shc)
            .div_s()
            .div_s()
            .div_unit(&shc)
            .scale(&rat(4, 1)),
    );

    // comparison functions, assembled from their own closed forms
    let es_exp = Poly1::exp(&rat(1, 1));
    let k0cm_num = Poly1::constant(rat(2, 1))
        .add(&es_exp.mul(&s_poly.sub(&Poly1::constant(rat(2, 1)))))
        .add(&s_poly)
        .scale(&rat(2, 1));
    let k0cm = k0cm_num.div_s().div_s().div_s().div_unit(&e_sq);
    let e2s = Poly1::exp(&rat(2, 1));
    let k1cm_num = s_poly
        .mul(&es_exp)
        .scale(&rat(4, 1))
        .sub(&e2s.scale(&rat(2, 1)))
        .add(&Poly1::constant(rat(2, 1)));
    let k1cm = k1cm_num.div_s().div_s().div_s().div_unit(&e_sq);

    // two-variable atoms
    let es = Poly2::efun(&rat(1, 1), &rat(0, 1));
    let et = Poly2::efun(&rat(0, 1), &rat(1, 1));
    let est = Poly2::efun(&rat(1, 1), &rat(1, 1));
    let xs = Poly2::exp(&rat(1, 1), &rat(0, 1));
    let xt = Poly2::exp(&rat(0, 1), &rat(1, 1));
    let es_et = es.mul(&et);
    let es_et_est = es_et.mul(&est);

    let phi = est.sub(&es).div_t();

    // H^Im_γ = [s·e^t·Es² + t·e^s·Et² - (s+t)EsEtEst] / (st(s+t)EsEtEst)
    let him_num = mul_s(&xt.mul(&es.mul(&es)))
        .add(&mul_t(&xs.mul(&et.mul(&et))))
        .sub(&mul_st(&es_et_est));
    let him_gamma = him_num
        .div_s()
        .div_t()
        .div_st()
        .div_unit(&es_et_est);

    // H^Re_γ = H^Im_γ + 2(EsEst - e^s Et)/(s(s+t)EsEst)
    let n23 = es.mul(&est).sub(&xs.mul(&et)).scale(&rat(2, 1));
    let hre_gamma = him_gamma.add(&n23.div_s().div_st().div_unit(&es.mul(&est)));
    let hre00 = hre_gamma.scale(&rat(-2, 1)).div_st().div_unit(&est);

    let gim_gamma = him_gamma.div_unit(&es_et);

    // G₁ = 2 (F_γ(uv) - F_γ(u)) / (v-1)
    let fg_st = Poly2::subst_linear(&f_gamma, &rat(1, 1), &rat(1, 1));
    let fg_s = Poly2::subst_linear(&f_gamma, &rat(1, 1), &rat(0, 1));
    let g1 = fg_st
        .sub(&fg_s)
        .scale(&rat(2, 1))
        .div_t()
        .div_unit(&et);
    let gre_gamma = g1.add(&gim_gamma);
    let g3 = phi.div_unit(&es_et_est).scale(&rat(2, 1));
    let gre00 = g3
        .sub(&gre_gamma.scale(&rat(2, 1)))
        .div_st()
        .div_unit(&est);

    // comparison functions in two variables
    let ch_s = Poly2::subst_linear(&Poly1::cosh(&rat(1, 1)), &rat(1, 1), &rat(0, 1));
    let ch_t = Poly2::subst_linear(&Poly1::cosh(&rat(1, 1)), &rat(0, 1), &rat(1, 1));
    let sinh1 = {
        // sinh(z) = z·sinhc(z)
        let mut p = Poly1::sinhc(&rat(1, 1));
        let mut q = Poly1::zero();
        for n in 0..series::ORDER1 {
            q.c[n + 1] = std::mem::replace(&mut p.c[n], BigRational::from_integer(0.into()));
        }
        q
    };
    let sh_s = Poly2::subst_linear(&sinh1, &rat(1, 1), &rat(0, 1));
    let sh_t = Poly2::subst_linear(&sinh1, &rat(0, 1), &rat(1, 1));
    let sh_st = Poly2::subst_linear(&sinh1, &rat(1, 1), &rat(1, 1));
    let shc_s2 = Poly2::subst_linear(&Poly1::sinhc(&rat(1, 2)), &rat(1, 1), &rat(0, 1));
    let shc_t2 = Poly2::subst_linear(&Poly1::sinhc(&rat(1, 2)), &rat(0, 1), &rat(1, 1));
    let shc_st2 = Poly2::subst_linear(&Poly1::sinhc(&rat(1, 2)), &rat(1, 1), &rat(1, 1));
    let ch_st2 = Poly2::subst_linear(&Poly1::cosh(&rat(1, 2)), &rat(1, 1), &rat(1, 1));
    let xm_half = Poly2::exp(&rat(-1, 2), &rat(-1, 2));

    // H₀ numerator: t(s+t)ch s - s(s+t)ch t + (s-t)(s+t+sh s+sh t-sh(s+t))
    let s_min_t = {
        let mut p = Poly2::zero();
        p.c[1][0] = BigRational::from_integer(1.into());
        p.c[0][1] = BigRational::from_integer((-1).into());
        p
    };
    let st_lin = {
        let mut p = Poly2::zero();
        p.c[1][0] = BigRational::from_integer(1.into());
        p.c[0][1] = BigRational::from_integer(1.into());
        p
    };
    let h0_num = mul_t(&mul_st(&ch_s))
        .sub(&mul_s(&mul_st(&ch_t)))
        .add(&s_min_t.mul(&st_lin.add(&sh_s).add(&sh_t).sub(&sh_st)));
    let h0cm_bare = h0_num
        .div_s()
        .div_s()
        .div_t()
        .div_t()
        .div_st()
        .div_st()
        .div_st()
        .div_unit(&shc_s2.mul(&shc_t2).mul(&shc_st2).mul(&shc_st2))
        .scale(&rat(16, 1));
    let h0cm = xm_half.mul(&h0cm_bare);
    let h1cm = ch_st2.mul(&h0cm_bare);

    // S numerator: s+t - t·ch s - s·ch t - sh s - sh t + sh(s+t)
    let s_num = st_lin
        .sub(&mul_t(&ch_s))
        .sub(&mul_s(&ch_t))
        .sub(&sh_s)
        .sub(&sh_t)
        .add(&sh_st);
    let scm = s_num
        .div_s()
        .div_s()
        .div_t()
        .div_t()
        .div_st()
        .div_unit(&shc_s2.mul(&shc_t2).mul(&shc_st2))
        .scale(&rat(8, 1));

    SeriesTables {
        e1,
        k_gamma,
        k00,
        f_gamma,
        f00,
        l0,
        k2,
        k0cm,
        k1cm,
        es,
        et,
        est,
        phi,
        him_gamma,
        hre_gamma,
        hre00,
        gim_gamma,
        gre_gamma,
        gre00,
        g1,
        g3,
        h0cm,
        h1cm,
        scm,
    }
}

fn poly1_lin(base: &Poly1, corr: &Poly1, e: f64) -> Vec<f64> {
    let b = base.to_f64();
    let c = corr.to_f64();
    b.iter().zip(&c).map(|(x, y)| x - e * y).collect()
}

fn poly2_lin(base: &Poly2, corr: &Poly2, e: f64, extra: Option<(&Poly2, f64)>) -> Vec<Vec<f64>> {
    let b = base.to_f64();
    let c = corr.to_f64();
    let mut out = b.clone();
    for i in 0..out.len() {
        for j in 0..out[i].len() {
            out[i][j] -= e * c[i][j];
        }
    }
    if let Some((x, w)) = extra {
        let xf = x.to_f64();
        for i in 0..out.len() {
            for j in 0..out[i].len() {
                out[i][j] += w * xf[i][j];
            }
        }
    }
    out
}

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(build_registry)
}

fn build_registry() -> Registry {
    let t = series_tables();
    let mut map = BTreeMap::new();
    let mut add = |f: ModularFunction| {
        map.insert(f.name.clone(), f);
    };

    add(ModularFunction::from_closed1("L0", |s| closed::cf_l0(s), Some(t.l0.to_f64()), true));
    add(ModularFunction::from_closed1(
        "L1",
        |s| closed::cf_l1(s),
        Some(t.f_gamma.to_f64().iter().map(|x| -x).collect()),
        true,
    ));
    add(ModularFunction::from_closed1(
        "K_gamma",
        closed::cf_k_gamma,
        Some(t.k_gamma.to_f64()),
        true,
    ));
    add(ModularFunction::from_closed1("K2", closed::cf_k2, Some(t.k2.to_f64()), true));
    add(ModularFunction::from_closed1(
        "F_gamma",
        closed::cf_f_gamma,
        Some(t.f_gamma.to_f64()),
        true,
    ));
    add(ModularFunction::from_closed1("K0_CM", closed::cf_k0_cm, Some(t.k0cm.to_f64()), true));
    add(ModularFunction::from_closed1("K1_CM", closed::cf_k1_cm, Some(t.k1cm.to_f64()), true));

    let phi_over_est = t.phi.div_unit(&t.est).scale(&rat(2, 1));
    for (e1n, e2n) in [(0i64, 0i64), (0, 1), (1, 0), (1, 1)] {
        let e = (e1n + e2n) as f64;
        let p = (e1n * e2n) as f64;
        add(ModularFunction::from_closed1(
            &format!("K_{e1n}_{e2n}"),
            move |s| closed::cf_k_eps(e, s),
            Some(poly1_lin(&t.k00, &t.k_gamma, e)),
            true,
        ));
        add(ModularFunction::from_closed1(
            &format!("F_{e1n}_{e2n}"),
            move |s| closed::cf_f_eps(e, s),
            Some(poly1_lin(&t.f00, &t.f_gamma, e)),
            true,
        ));
        add(ModularFunction::from_closed2(
            &format!("HRe_{e1n}_{e2n}"),
            move |s, tt| closed::cf_hre_eps(e, p, s, tt),
            Some(poly2_lin(&t.hre00, &t.hre_gamma, e, Some((&phi_over_est, p)))),
            (true, true, true),
        ));
        add(ModularFunction::from_closed2(
            &format!("GRe_{e1n}_{e2n}"),
            move |s, tt| closed::cf_gre_eps(e, p, s, tt),
            Some(poly2_lin(&t.gre00, &t.gre_gamma, e, Some((&t.g3, p)))),
            (true, true, true),
        ));
        let (e1f, e2f) = (e1n as f64, e2n as f64);
        add(ModularFunction::from_closed2(
            &format!("HIm_{e1n}_{e2n}"),
            move |s, tt| closed::cf_him_eps(e1f, e2f, s, tt),
            Some(poly2_lin(
                &Poly2::zero(),
                &t.him_gamma,
                e1f - e2f,
                None,
            )),
            (true, true, true),
        ));
        add(ModularFunction::from_closed2(
            &format!("GIm_{e1n}_{e2n}"),
            move |s, tt| closed::cf_gim_eps(e1f, e2f, s, tt),
            Some(poly2_lin(&Poly2::zero(), &t.gim_gamma, e1f - e2f, None)),
            (true, true, true),
        ));
    }

    add(ModularFunction::from_closed2(
        "HIm_gamma",
        closed::cf_him_gamma,
        Some(t.him_gamma.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2(
        "HRe_gamma",
        closed::cf_hre_gamma,
        Some(t.hre_gamma.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2(
        "GIm_gamma",
        closed::cf_gim_gamma,
        Some(t.gim_gamma.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2(
        "GRe_gamma",
        closed::cf_gre_gamma,
        Some(t.gre_gamma.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2("G1", closed::cf_g1, Some(t.g1.to_f64()), (true, true, true)));
    add(ModularFunction::from_closed2(
        "G2",
        closed::cf_gim_gamma,
        Some(t.gim_gamma.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2("G3", closed::cf_g3, Some(t.g3.to_f64()), (true, true, true)));
    add(ModularFunction::from_closed2(
        "H0_CM",
        closed::cf_h0_cm,
        Some(t.h0cm.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2(
        "H1_CM",
        closed::cf_h1_cm,
        Some(t.h1cm.to_f64()),
        (true, true, true),
    ));
    add(ModularFunction::from_closed2(
        "S_CM",
        closed::cf_s_cm,
        Some(t.scm.to_f64()),
        (true, true, true),
    ));

    Registry { map }
}

// --- transforms -----------------------------------------------------------

/// `K(s) = F(e^s)(e^s - 1)/s`: new function with closed form composed and
/// Taylor data multiplied by `(e^s-1)/s`.
pub fn transform_f_to_k(f: &ModularFunction) -> Result<ModularFunction> {
    if f.arity != 1 {
        return Err(Error::Domain("transform_f_to_k needs a one-variable function".into()));
    }
    let closed = f.closed.clone();
    let taylor = f.taylor1.as_ref().map(|c| {
        let e = series_tables().e1.to_f64();
        convolve1(c, &e)
    });
    Ok(ModularFunction::from_closed1(
        &format!("K[{}]", f.name),
        move |s| closed(s, C64::new(0.0, 0.0)) * closed::em1(s) / s,
        taylor,
        true,
    ))
}

/// `H^Re(s,t) = 2 F(e^{s+t}) Φ(s,t) + G^Re(u,v) E(s) E(t)` and
/// `H^Im(s,t) = G^Im(u,v) E(s) E(t)`, where `Φ` is the second divided
/// difference of exp over `(0, s, s+t)`.
pub fn transform_g_to_h(
    f: Option<&ModularFunction>,
    g: &ModularFunction,
    kind_re: bool,
) -> Result<ModularFunction> {
    if g.arity != 2 {
        return Err(Error::Domain("transform_g_to_h needs a two-variable function".into()));
    }
    if kind_re && f.is_none() {
        return Err(Error::Domain("the Re transform needs the one-variable F".into()));
    }
    let gc = g.closed.clone();
    let fc = f.map(|f| f.closed.clone());
    let name = format!("H[{}]", g.name);
    let closed = move |s: C64, tt: C64| {
        let efun = |z: C64| closed::em1(z) / z;
        let mut h = gc(s, tt) * efun(s) * efun(tt);
        if let Some(fc) = &fc {
            h += 2.0 * fc(s + tt, C64::new(0.0, 0.0)) * closed::cf_phi(s, tt);
        }
        h
    };
    // Taylor data: product/series composition in f64.
    let tb = series_tables();
    let taylor = (|| -> Option<Vec<Vec<f64>>> {
        let gt = g.taylor2.as_ref()?;
        let es = tb.es.to_f64();
        let et = tb.et.to_f64();
        let mut h = convolve2(&convolve2(gt, &es), &et);
        if kind_re {
            let ft = f?.taylor1.as_ref()?;
            let fst = subst_sum(ft);
            let phi = tb.phi.to_f64();
            let term = convolve2(&fst, &phi);
            for i in 0..h.len() {
                for j in 0..h[i].len() {
                    h[i][j] += 2.0 * term[i][j];
                }
            }
        }
        Some(h)
    })();
    Ok(ModularFunction::from_closed2(&name, closed, taylor, (true, true, true)))
}

fn convolve1(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..(n - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn convolve2(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i1 in 0..n {
        for j1 in 0..(n - i1) {
            if a[i1][j1] == 0.0 {
                continue;
            }
            for i2 in 0..(n - i1 - j1) {
                for j2 in 0..(n - i1 - j1 - i2) {
                    out[i1 + i2][j1 + j2] += a[i1][j1] * b[i2][j2];
                }
            }
        }
    }
    out
}

/// Substitute `s ← s + t` into a univariate coefficient table.
fn subst_sum(c: &[f64]) -> Vec<Vec<f64>> {
    let n = ORDER2 + 1;
    let mut out = vec![vec![0.0; n]; n];
    for (deg, &cn) in c.iter().enumerate().take(n) {
        // (s+t)^deg binomial
        let mut binom = 1.0f64;
        for k in 0..=deg {
            out[deg - k][k] += cn * binom;
            binom = binom * (deg - k) as f64 / (k + 1) as f64;
        }
    }
    out
}

// --- identity suite -------------------------------------------------------

/// One entry per a-priori identity: name and maximum deviation over the grid.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub entries: Vec<(String, f64)>,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

/// Evaluate the a-priori relations between the registered functions on a
/// grid of `(u, v)` pairs; returns the max absolute deviation per identity
/// (the functions are O(1)-normalized on the acceptance grid).
pub fn identity_suite(grid: &[(f64, f64)]) -> Result<IdentityReport> {
    let reg = registry();
    let mut entries: Vec<(String, f64)> = Vec::new();
    let mut record = |name: &str, dev: f64| {
        entries.push((name.into(), dev));
    };

    let mut d_conj_a = 0.0f64;
    let mut d_conj_b = 0.0f64;
    let mut d_conj_ka = 0.0f64;
    let mut d_conj_kb = 0.0f64;
    let mut d_hrel = 0.0f64;
    let mut d_k0 = 0.0f64;
    let mut d_h0 = 0.0f64;
    let mut d_k1 = 0.0f64;
    let mut d_h1 = 0.0f64;
    let mut d_s = 0.0f64;
    let mut d_gim = 0.0f64;
    for &(u, v) in grid {
        let s = u.ln();
        let tt = v.ln();
        // F_{1,1}(u) = u F_{0,0}(u) + log u/(u-1)
        let lhs = reg.eval1("F_1_1", u)?;
        let rhs = u * reg.eval1("F_0_0", u)? + reg.eval1("L0", u)?;
        d_conj_a = d_conj_a.max((lhs - rhs).abs());
        // G^Re_{1,1} = uv G^Re_{0,0}
        let lhs = reg.eval2("GRe_1_1", u, v)?;
        let rhs = (s + tt).exp() * reg.eval2("GRe_0_0", u, v)?;
        d_conj_b = d_conj_b.max((lhs - rhs).abs());
        // K_{1,1}(s) = e^s K_{0,0}(s) + 1
        let lhs = reg.eval1("K_1_1", u)?;
        let rhs = u * reg.eval1("K_0_0", u)? + 1.0;
        d_conj_ka = d_conj_ka.max((lhs - rhs).abs());
        // H^Re_{1,1} = e^{s+t} H^Re_{0,0} + 2((uv-1)s - (u-1)(s+t))/((uv-1)st)
        let lhs = reg.eval2("HRe_1_1", u, v)?;
        let hre00 = reg.eval2("HRe_0_0", u, v)?;
        let corr = correction_term(s, tt);
        d_conj_kb = d_conj_kb.max((lhs - ((s + tt).exp() * hre00 + corr)).abs());
        // H^Re_{1,0} = ((1+uv)/2) H^Re_{0,0}
        let lhs = reg.eval2("HRe_1_0", u, v)?;
        let rhs = 0.5 * (1.0 + (s + tt).exp()) * hre00;
        d_hrel = d_hrel.max((lhs - rhs).abs());
        // comparison set
        d_k0 = d_k0.max((reg.eval1("K0_CM", u)? + 2.0 * reg.eval1("K_0_0", u)?).abs());
        d_h0 = d_h0.max((reg.eval2("H0_CM", u, v)? + 4.0 * hre00).abs());
        d_k1 = d_k1.max((reg.eval1("K1_CM", u)? + 2.0 * reg.eval1("K_1_0", u)?).abs());
        d_h1 = d_h1.max((reg.eval2("H1_CM", u, v)? + 4.0 * reg.eval2("HRe_1_0", u, v)?).abs());
        d_s = d_s.max((reg.eval2("S_CM", u, v)? - 4.0 * reg.eval2("HIm_1_0", u, v)?).abs());
        // G^Im_{ε₁,ε₂} = (ε₂-ε₁) G^Im_γ at (0,1)
        d_gim = d_gim
            .max((reg.eval2("GIm_0_1", u, v)? - reg.eval2("GIm_gamma", u, v)?).abs());
    }
    record("F_11 = u F_00 + L0", d_conj_a);
    record("GRe_11 = uv GRe_00", d_conj_b);
    record("K_11 = u K_00 + 1", d_conj_ka);
    record("HRe_11 = uv HRe_00 + dd-exp term", d_conj_kb);
    record("HRe_10 = (1+uv)/2 HRe_00", d_hrel);
    record("K0_CM = -2 K_00", d_k0);
    record("H0_CM = -4 HRe_00", d_h0);
    record("K1_CM = -2 K_10", d_k1);
    record("H1_CM = -4 HRe_10", d_h1);
    record("S_CM = 4 HIm_10", d_s);
    record("GIm_01 = GIm_gamma", d_gim);
    return Ok(IdentityReport { entries });

    fn correction_term(s: f64, t: f64) -> f64 {
        // 2((uv-1)s - (u-1)(s+t)) / ((uv-1) s t), safe near the sets
        let st = s + t;
        if s.abs() < PATCH_RADIUS || t.abs() < PATCH_RADIUS || st.abs() < PATCH_RADIUS {
            // 2Φ(s,t)·(s+t)/ (uv-1) · ... evaluate by complex mean
            let mut acc = 0.0;
            for k in 0..CAUCHY_NODES {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / CAUCHY_NODES as f64;
                let z = C64::from_polar(CAUCHY_RADIUS, ang);
                let (zs, zt) = (C64::new(s, 0.0) + z, C64::new(t, 0.0));
                let val = 2.0 * (closed::em1(zs + zt) * zs - closed::em1(zs) * (zs + zt))
                    / (zs * zt * closed::em1(zs + zt));
                acc += val.re;
            }
            acc / CAUCHY_NODES as f64
        } else {
            2.0 * (st.exp_m1() * s - s.exp_m1() * st) / (s * t * st.exp_m1())
        }
    }
}

/// The log-spaced acceptance grid on `[lo, hi]²`.
pub fn log_grid(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let pts: Vec<f64> = (0..n)
        .map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
        .collect();
    let mut grid = Vec::with_capacity(n * n);
    for &u in &pts {
        for &v in &pts {
            grid.push((u, v));
        }
    }
    grid
}

#[cfg(test)]
mod tests;
