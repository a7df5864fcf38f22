use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Datum of a basic Heisenberg module `E(g, θ)` together with the fixed
/// complex modulus `τ`.
///
/// `g = (a, b; c, d)` is an integer matrix with `|det g| = 1` and `c ≠ 0`.
/// Derived quantities follow the rank/degree/slope conventions for these
/// modules: `rk = cθ + d`, `deg = c`, `μ = deg/rk`, and the connection
/// structure constant `c_τ = 4π μ Im τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleGeometry {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub theta: f64,
    pub tau: C64,
}

impl ModuleGeometry {
    pub fn new(a: i64, b: i64, c: i64, d: i64, theta: f64, tau: C64) -> Result<Self> {
        let det = a * d - b * c;
        if det.abs() != 1 {
            return Err(Error::Geometry(format!("|det g| must be 1, got {det}")));
        }
        if c == 0 {
            return Err(Error::Geometry("c must be nonzero".into()));
        }
        if !(tau.im > 0.0) {
            return Err(Error::Geometry(format!("Im τ must be positive, got {}", tau.im)));
        }
        let g = Self { a, b, c, d, theta, tau };
        if g.rank() == 0.0 {
            return Err(Error::Geometry("cθ + d = 0".into()));
        }
        Ok(g)
    }

    /// Rank `cθ + d`.
    pub fn rank(&self) -> f64 {
        self.c as f64 * self.theta + self.d as f64
    }

    /// Degree `c`.
    pub fn degree(&self) -> i64 {
        self.c
    }

    /// Slope `μ = deg / rk = 1/(θ + d/c)`.
    pub fn slope(&self) -> f64 {
        self.c as f64 / self.rank()
    }

    /// Parameter of the Morita-partner algebra, `θ' = (aθ + b)/(cθ + d)`.
    pub fn theta_prime(&self) -> f64 {
        (self.a as f64 * self.theta + self.b as f64) / self.rank()
    }

    /// Structure constant `c_τ = [∂, ∂*] = 4π μ Im τ` of the standard
    /// connection.
    pub fn c_tau(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.slope() * self.tau.im
    }

    /// Inverse matrix paired with the transformed parameter: the dual
    /// module `E(g⁻¹, gθ)`.
    pub fn dual(&self) -> Result<Self> {
        let det = self.a * self.d - self.b * self.c;
        // g⁻¹ = adj(g)/det with integer entries since |det| = 1.
        let (ia, ib, ic, id) = (det * self.d, -det * self.b, -det * self.c, det * self.a);
        Self::new(ia, ib, ic, id, self.theta_prime(), self.tau)
    }
}

/// Serialization form: `{a, b, c, d, theta, tau: {re, im}}` where `theta`
/// may be a decimal string (kept exact in files) or a number.
#[derive(Serialize, Deserialize)]
struct GeometryJson {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    theta: ThetaJson,
    tau: TauJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThetaJson {
    Text(String),
    Value(f64),
}

#[derive(Serialize, Deserialize)]
struct TauJson {
    re: f64,
    im: f64,
}

impl ModuleGeometry {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GeometryJson = serde_json::from_str(text)?;
        let theta = match raw.theta {
            ThetaJson::Value(v) => v,
            ThetaJson::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Geometry(format!("bad theta string: {e}")))?,
        };
        Self::new(raw.a, raw.b, raw.c, raw.d, theta, C64::new(raw.tau.re, raw.tau.im))
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"a\":{},\"b\":{},\"c\":{},\"d\":{},\"theta\":\"{:.17e}\",\"tau\":{{\"re\":{:.17e},\"im\":{:.17e}}}}}",
            self.a, self.b, self.c, self.d, self.theta, self.tau.re, self.tau.im
        )
    }
}
