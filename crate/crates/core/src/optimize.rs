//! Derivative-free minimizers for box-bounded, possibly non-smooth
//! objectives.
//!
//! Both strategies only ever move to points that strictly improve the
//! objective, so the recorded trace is non-increasing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizeOptions {
    /// Stop when a full cycle improves the objective by less than this.
    pub tol: f64,
    /// Resolution of the per-coordinate line searches.
    pub x_tol: f64,
    pub max_cycles: usize,
    /// Random restarts around the incumbent after convergence.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            tol: 1e-10,
            x_tol: 1e-8,
            max_cycles: 200,
            restarts: 2,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    /// Incumbent objective after the start and after every cycle.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

pub type Objective<'a> = dyn FnMut(&[f64]) -> f64 + 'a;

pub trait Minimizer: Named + Send + Sync {
    fn minimize(
        &self,
        f: &mut Objective<'_>,
        x0: &[f64],
        bounds: &[(f64, f64)],
        opts: &MinimizeOptions,
    ) -> MinimizeResult;
}

/// Registry holding `coordinate-golden` (the default) and `compass`.
pub fn minimizers() -> Registry<dyn Minimizer> {
    let mut r: Registry<dyn Minimizer> = Registry::new();
    r.register(Box::new(CoordinateGolden))
        .register(Box::new(CompassSearch));
    r
}

pub const DEFAULT_MINIMIZER: &str = "coordinate-golden";

struct Counted<'a, 'b> {
    f: &'a mut Objective<'b>,
    evals: usize,
}

impl Counted<'_, '_> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

fn clamp(x: f64, (lo, hi): (f64, f64)) -> f64 {
    x.max(lo).min(hi)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `g` on `[a, b]`.
pub fn golden_section(
    g: &mut dyn FnMut(f64) -> f64,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while (b - a).abs() > x_tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = g(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Cyclic coordinate search: per coordinate, bracket a minimum by step
/// doubling and refine it by golden section.
pub struct CoordinateGolden;

impl Named for CoordinateGolden {
    fn name(&self) -> &'static str {
        "coordinate-golden"
    }
}

impl CoordinateGolden {
    fn line_search(
        f: &mut Counted,
        x: &mut [f64],
        fx: &mut f64,
        k: usize,
        bound: (f64, f64),
        x_tol: f64,
    ) {
        let origin = x[k];
        let mut y = x.to_vec();
        let mut eval_at = |f: &mut Counted, v: f64| {
            y[k] = v;
            f.call(&y)
        };
        let width = bound.1 - bound.0;
        let mut step = if width.is_finite() {
            (0.05 * width).min(1.0)
        } else {
            1.0
        };
        step = step.max(16.0 * x_tol);

        let lo = clamp(origin - step, bound);
        let hi = clamp(origin + step, bound);
        let (flo, fhi) = (eval_at(f, lo), eval_at(f, hi));
        let (a, b);
        if flo >= *fx && fhi >= *fx {
            a = lo;
            b = hi;
        } else {
            // expand downhill until the objective rises or the bound is hit
            let dir = if flo < fhi { -1.0 } else { 1.0 };
            let mut back = origin;
            let mut best = if dir < 0.0 { lo } else { hi };
            let mut fbest = if dir < 0.0 { flo } else { fhi };
            let mut front = best;
            loop {
                step *= 2.0;
                let next = clamp(best + dir * step, bound);
                if next == best {
                    break;
                }
                front = next;
                let fnext = eval_at(f, next);
                if fnext >= fbest {
                    break;
                }
                back = best;
                best = next;
                fbest = fnext;
            }
            a = back.min(front);
            b = back.max(front);
        }
        if b - a <= x_tol {
            return;
        }
        let (xm, fm) = golden_section(&mut |v| eval_at(f, v), a, b, x_tol);
        if fm < *fx {
            x[k] = xm;
            *fx = fm;
        }
        // also accept the bracket ends when they beat the interior
        for v in [a, b] {
            let fv = eval_at(f, v);
            if fv < *fx {
                x[k] = v;
                *fx = fv;
            }
        }
    }

    fn cycles(
        f: &mut Counted,
        x: &mut [f64],
        fx: &mut f64,
        bounds: &[(f64, f64)],
        opts: &MinimizeOptions,
        trace: &mut Vec<f64>,
    ) {
        for _ in 0..opts.max_cycles {
            let before = *fx;
            for k in 0..x.len() {
                Self::line_search(f, x, fx, k, bounds[k], opts.x_tol);
            }
            trace.push(*fx);
            if before - *fx < opts.tol {
                break;
            }
        }
    }
}

impl Minimizer for CoordinateGolden {
    fn minimize(
        &self,
        f: &mut Objective<'_>,
        x0: &[f64],
        bounds: &[(f64, f64)],
        opts: &MinimizeOptions,
    ) -> MinimizeResult {
        let mut f = Counted { f, evals: 0 };
        let mut x: Vec<f64> = x0.iter().zip(bounds).map(|(v, b)| clamp(*v, *b)).collect();
        let mut fx = f.call(&x);
        let mut trace = vec![fx];
        Self::cycles(&mut f, &mut x, &mut fx, bounds, opts, &mut trace);

        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.restarts {
            let mut y: Vec<f64> = x
                .iter()
                .zip(bounds)
                .map(|(v, b)| {
                    let span = if (b.1 - b.0).is_finite() {
                        0.1 * (b.1 - b.0)
                    } else {
                        1.0 + v.abs()
                    };
                    clamp(v + span.min(1.0) * rng.random_range(-1.0..1.0), *b)
                })
                .collect();
            let mut fy = f.call(&y);
            let mut sub = Vec::new();
            Self::cycles(&mut f, &mut y, &mut fy, bounds, opts, &mut sub);
            if fy < fx {
                x = y;
                fx = fy;
            }
            trace.push(fx);
        }
        MinimizeResult {
            x,
            value: fx,
            trace,
            evaluations: f.evals,
        }
    }
}

/// Compass (pattern) search with step halving.
pub struct CompassSearch;

impl Named for CompassSearch {
    fn name(&self) -> &'static str {
        "compass"
    }
}

impl Minimizer for CompassSearch {
    fn minimize(
        &self,
        f: &mut Objective<'_>,
        x0: &[f64],
        bounds: &[(f64, f64)],
        opts: &MinimizeOptions,
    ) -> MinimizeResult {
        let mut f = Counted { f, evals: 0 };
        let mut x: Vec<f64> = x0.iter().zip(bounds).map(|(v, b)| clamp(*v, *b)).collect();
        let mut fx = f.call(&x);
        let mut trace = vec![fx];
        let mut step: Vec<f64> = bounds
            .iter()
            .map(|b| {
                if (b.1 - b.0).is_finite() {
                    (0.1 * (b.1 - b.0)).min(1.0)
                } else {
                    1.0
                }
            })
            .collect();
        let mut cycles = 0;
        while step.iter().any(|s| *s > opts.x_tol) && cycles < 100 * opts.max_cycles {
            cycles += 1;
            let mut moved = false;
            for k in 0..x.len() {
                for dir in [1.0, -1.0] {
                    let mut y = x.clone();
                    y[k] = clamp(x[k] + dir * step[k], bounds[k]);
                    let fy = f.call(&y);
                    if fy < fx {
                        x = y;
                        fx = fy;
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                step.iter_mut().for_each(|s| *s *= 0.5);
            }
            trace.push(fx);
        }
        MinimizeResult {
            x,
            value: fx,
            trace,
            evaluations: f.evals,
        }
    }
}
