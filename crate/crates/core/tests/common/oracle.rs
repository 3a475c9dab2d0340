//! Brute-force references for the two-section matching problem, written
//! from the circuit equations without touching the library's S-parameter
//! code.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub const GRID: usize = 64;

/// Problem data with the library's default weights and bounds.
#[derive(Clone, Copy)]
pub struct Problem {
    pub z_src: C,
    pub z_int: f64,
    pub z_tgt: f64,
    pub phase_target_deg: f64,
    pub z0_bounds: (f64, f64),
    pub theta_bounds: (f64, f64),
    pub weight: f64,
    pub phase_scale: f64,
    pub match_scale: f64,
}

impl Problem {
    pub fn main_omn() -> Self {
        Self {
            z_src: C::new(10.6, 5.7),
            z_int: 25.0,
            z_tgt: 50.0,
            phase_target_deg: 120.0,
            z0_bounds: (15.0, 110.0),
            theta_bounds: (5.0, 175.0),
            weight: 10.0,
            phase_scale: 1.0,
            match_scale: 0.01,
        }
    }
}

/// Input impedance equation cleared of denominators:
/// `Z0(ZL cosθ + jZ0 sinθ) − Zin(Z0 cosθ + jZL sinθ)`.
fn residual(z0: f64, (s, c): (f64, f64), zl: f64, zin: C) -> C {
    let j = C::i();
    z0 * (zl * c + j * z0 * s) - zin * (z0 * c + j * zl * s)
}

fn lin(lo: f64, hi: f64, i: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (GRID - 1) as f64
}

/// (fitness, Γ, delay) for sections given by impedance and (sin, cos).
fn fitness_trig(p: &Problem, z1: f64, t1: (f64, f64), z2: f64, t2: (f64, f64)) -> (f64, f64, f64) {
    let j = C::i();
    let r1 = residual(z1, t1, p.z_int, p.z_src);
    let r2 = residual(z2, t2, p.z_tgt, C::new(p.z_int, 0.0));
    // Chain matrix of line 1 followed by line 2.
    let m = |z: f64, (s, c): (f64, f64)| [[C::new(c, 0.0), j * z * s], [j * s / z, C::new(c, 0.0)]];
    let (a, b) = (m(z1, t1), m(z2, t2));
    let aa = a[0][0] * b[0][0] + a[0][1] * b[1][0];
    let bb = a[0][0] * b[0][1] + a[0][1] * b[1][1];
    let cc = a[1][0] * b[0][0] + a[1][1] * b[1][0];
    let dd = a[1][0] * b[0][1] + a[1][1] * b[1][1];
    let rl = p.z_tgt;
    let v1 = aa + bb / rl;
    let i1 = cc + dd / rl;
    let zin = v1 / i1;
    let gamma = (zin - p.z_src) / (zin + p.z_src.conj());
    // Source reference conj(z_src), so the source EMF sees conj(z_src) in series.
    let zs = p.z_src.conj();
    let s21 = 2.0 * (zs.re / rl).sqrt() / (v1 + zs * i1);
    let delay = (-s21.arg().to_degrees()).rem_euclid(360.0);
    let mut err = (delay - p.phase_target_deg).rem_euclid(360.0);
    if err > 180.0 {
        err -= 360.0;
    }
    let scale = p.z_src.norm() * p.z0_bounds.1;
    let f = (r1.norm_sqr() + r2.norm_sqr()) / (scale * scale)
        + p.weight * ((err / p.phase_scale).powi(2) + (gamma.norm() / p.match_scale).powi(2));
    (f, gamma.norm(), delay)
}

pub fn fitness(p: &Problem, z1: f64, th1_deg: f64, z2: f64, th2_deg: f64) -> f64 {
    let t = |d: f64| d.to_radians().sin_cos();
    fitness_trig(p, z1, t(th1_deg), z2, t(th2_deg)).0
}

/// Best point of the full 64⁴ grid over the problem bounds.
pub fn grid_search(p: &Problem) -> ([f64; 4], f64) {
    let z: Vec<f64> = (0..GRID).map(|i| lin(p.z0_bounds.0, p.z0_bounds.1, i)).collect();
    let th: Vec<f64> = (0..GRID).map(|i| lin(p.theta_bounds.0, p.theta_bounds.1, i)).collect();
    let trig: Vec<(f64, f64)> = th.iter().map(|d| d.to_radians().sin_cos()).collect();
    let mut best = ([0.0; 4], f64::INFINITY);
    for &z1 in &z {
        for (b, &t1) in trig.iter().enumerate() {
            for &z2 in &z {
                for (d, &t2) in trig.iter().enumerate() {
                    let f = fitness_trig(p, z1, t1, z2, t2).0;
                    if f < best.1 {
                        best = ([z1, th[b], z2, th[d]], f);
                    }
                }
            }
        }
    }
    best
}

/// |r1|² + |r2|² alone.
pub fn residual_objective(p: &Problem, x: &[f64; 4]) -> f64 {
    let t = |d: f64| d.to_radians().sin_cos();
    residual(x[0], t(x[1]), p.z_int, p.z_src).norm_sqr()
        + residual(x[2], t(x[3]), p.z_tgt, C::new(p.z_int, 0.0)).norm_sqr()
}

/// Grid minimum of the residual objective, then compass-search refinement.
pub fn residual_search(p: &Problem, z0_range: (f64, f64)) -> ([f64; 4], f64) {
    let z: Vec<f64> = (0..GRID).map(|i| lin(z0_range.0, z0_range.1, i)).collect();
    let th: Vec<f64> = (0..GRID).map(|i| lin(p.theta_bounds.0, p.theta_bounds.1, i)).collect();
    // The two residuals are independent, so search each 2-D slice.
    let mut x = [0.0; 4];
    let mut best1 = f64::INFINITY;
    let mut best2 = f64::INFINITY;
    for &zz in &z {
        for &tt in &th {
            let t = tt.to_radians().sin_cos();
            let v1 = residual(zz, t, p.z_int, p.z_src).norm_sqr();
            if v1 < best1 {
                best1 = v1;
                x[0] = zz;
                x[1] = tt;
            }
            let v2 = residual(zz, t, p.z_tgt, C::new(p.z_int, 0.0)).norm_sqr();
            if v2 < best2 {
                best2 = v2;
                x[2] = zz;
                x[3] = tt;
            }
        }
    }
    let mut f = residual_objective(p, &x);
    let mut step = [(z0_range.1 - z0_range.0) / GRID as f64, 3.0, (z0_range.1 - z0_range.0) / GRID as f64, 3.0];
    for _ in 0..20_000 {
        let mut moved = false;
        for k in 0..4 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[k] += dir * step[k];
                let fy = residual_objective(p, &y);
                if fy < f {
                    x = y;
                    f = fy;
                    moved = true;
                }
            }
        }
        if !moved {
            step.iter_mut().for_each(|s| *s *= 0.5);
            if step.iter().all(|s| *s < 1e-13) {
                break;
            }
        }
    }
    (x, f)
}
