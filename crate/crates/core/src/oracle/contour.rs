use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::scan::Rectangle;
use crate::engine::Equation;
use crate::error::{Error, Result};

/// Smallest allowed Newton-distance from a boundary sample to a root.
pub const BOUNDARY_CLEARANCE: f64 = 1e-6;

/// Counterclockwise boundary samples, `samples_per_edge` per side.
fn boundary(region: &Rectangle, per_edge: usize) -> Vec<Complex64> {
    let corners = [
        Complex64::new(region.re_min, region.im_min),
        Complex64::new(region.re_max, region.im_min),
        Complex64::new(region.re_max, region.im_max),
        Complex64::new(region.re_min, region.im_max),
    ];
    let mut pts = Vec::with_capacity(4 * per_edge + 1);
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        for i in 0..per_edge {
            pts.push(a + (b - a) * (i as f64 / per_edge as f64));
        }
    }
    pts.push(corners[0]);
    pts
}

/// Zeros of `f` inside `region` by phase continuation along its boundary.
///
/// `f` returns `(f(z), f'(z))`; the derivative estimates how close the
/// boundary passes to a zero.
pub fn argument_principle_count_fn<F>(f: F, region: Rectangle, samples_per_edge: usize) -> Result<i64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    if samples_per_edge < 4 {
        return Err(Error::InvalidInput("need at least 4 samples per edge".into()));
    }
    let pts = boundary(&region, samples_per_edge);
    let mut values = Vec::with_capacity(pts.len());
    let mut closest = f64::INFINITY;
    for &z in &pts {
        let (v, dv) = f(z)?;
        let distance = if v.norm() == 0.0 { 0.0 } else { (v / dv).norm() };
        closest = closest.min(distance);
        values.push(v);
    }
    if closest < BOUNDARY_CLEARANCE {
        return Err(Error::BoundaryTooClose { distance: closest });
    }
    let mut total = 0.0;
    for pair in values.windows(2) {
        let jump = (pair[1] / pair[0]).arg();
        if jump.abs() >= PI {
            return Err(Error::PhaseJump { jump });
        }
        total += jump;
    }
    let turns = total / TAU;
    if (turns - turns.round()).abs() > 0.1 {
        return Err(Error::PhaseJump { jump: total });
    }
    Ok(turns.round() as i64)
}

pub fn argument_principle_count(eq: &Equation, region: Rectangle, samples_per_edge: usize) -> Result<i64> {
    argument_principle_count_fn(|z| eq.eval_with_derivative(z), region, samples_per_edge)
}

/// Like [`argument_principle_count_fn`], doubling the sampling until the
/// largest phase step drops under a quarter turn.
pub fn count_zeros_fn<F>(f: F, region: Rectangle) -> Result<i64>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    let mut per_edge = 64;
    loop {
        let pts = boundary(&region, per_edge);
        let mut prev: Option<Complex64> = None;
        let mut worst: f64 = 0.0;
        for &z in &pts {
            let (v, _) = f(z)?;
            if let Some(p) = prev {
                worst = worst.max((v / p).arg().abs());
            }
            prev = Some(v);
        }
        if worst < PI / 2.0 || per_edge >= 1 << 16 {
            return argument_principle_count_fn(&f, region, per_edge);
        }
        per_edge *= 2;
    }
}
