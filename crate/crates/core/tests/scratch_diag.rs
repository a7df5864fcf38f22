use nctlab_core::functions::{registry, h_integral_quadrature};
use num_complex::Complex64 as C64;

#[test]
fn diag_g1() {
    let (s, t) = (0.2f64, -0.1f64);
    let (u, _) = (s.exp(), t.exp());
    let uv = (s + t).exp();
    let g1 = h_integral_quadrature(&[1, 0, 0], &[u, uv], 0, 1e-12);
    println!("g1 raw: {:?}", g1.map(|x| 2.0 * u * x));
    println!("G1 reg: {:.12e}", registry().get("G1").unwrap().eval_st(s, t));
}

#[test]
fn diag_patch_boundary() {
    let reg = registry();
    let f = reg.get("HRe_0_0").unwrap();
    let eps = 1e-3 * 1.001;
    for (s, t) in [(eps, 0.9), (0.9, eps), (0.9, eps - 0.9), (1.4, eps - 1.4)] {
        let closed = f.eval_closed_raw(C64::new(s, 0.0), C64::new(t, 0.0)).re;
        let patched = f.eval_st(s, t);
        println!("({s:.4},{t:.4}): closed {closed:.14e} patched {patched:.14e} diff {:.2e}", closed - patched);
    }
}
