//! Closed-form quantities and bounds: the no-triple-gap root `alpha(u)`,
//! exact run-length probabilities, traversability bounds, the piecewise
//! growth cost `W^p`, growth schedules, and the threshold constant.
//!
//! Regime constants (`p0`, `x0`, `y0`, `k0`) are existential in the source
//! material; operations accept them from the caller and report whether the
//! regime predicate holds instead of hard-coding values. Probabilities are
//! computed in log space where underflow is possible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::Rect;

/// Exact single-line enumeration is used up to this many sites per line;
/// beyond it the asymptotic surrogate takes over.
pub const LINE_ENUMERATION_CAP: i64 = 20;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticError {
    #[error("{name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("rectangle dimensions ({x1},{y1}) not nested in ({x2},{y2})")]
    NotNested { x1: f64, y1: f64, x2: f64, y2: f64 },
    #[error("schedule rectangle overflows the integer range")]
    Overflow,
}

fn check_domain(
    name: &'static str,
    value: f64,
    domain: &'static str,
    ok: bool,
) -> Result<(), AnalyticError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::Domain {
            name,
            value,
            domain,
        })
    }
}

/// Slack and density parameters shared by the bound computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    epsilon: f64,
    p: f64,
}

impl BoundParams {
    pub fn new(epsilon: f64, p: f64) -> Result<Self, AnalyticError> {
        check_domain("epsilon", epsilon, "(0,1)", epsilon > 0.0 && epsilon < 1.0)?;
        check_domain("p", p, "(0,1)", p > 0.0 && p < 1.0)?;
        Ok(BoundParams { epsilon, p })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Probability `1 - (1-p)^y` that a column of exponent `y` holds an occupied
/// site, evaluated stably for small `p`.
pub fn column_occupancy(p: f64, y: i64) -> Result<f64, AnalyticError> {
    check_domain("p", p, "[0,1]", (0.0..=1.0).contains(&p))?;
    check_domain("y", y as f64, "y >= 0", y >= 0)?;
    if y == 0 {
        return Ok(0.0);
    }
    if p >= 1.0 {
        return Ok(1.0);
    }
    Ok(-f64::exp_m1(y as f64 * f64::ln_1p(-p)))
}

/// Positive root of `X^3 - uX^2 - u(1-u)X - u(1-u)^2`, the decay rate of the
/// no-triple-gap probability. Lies in `(0, 1]` with `alpha(1) = 1`.
///
/// Solved in the variable `e = 1 - X`, where the polynomial becomes
/// `d^3 - e(1+d+d^2) + e^2(2+d) - e^3` with `d = 1 - u`; this form has no
/// cancellation near `u = 1`, where the root approaches `1 - d^3`.
pub fn alpha(u: f64) -> Result<f64, AnalyticError> {
    check_domain("u", u, "(0,1]", u > 0.0 && u <= 1.0)?;
    Ok(1.0 - alpha_gap(u))
}

/// `1 - alpha(u)`, full precision. `log(alpha)` should be computed as
/// `ln_1p(-alpha_gap(u))`.
pub fn alpha_gap(u: f64) -> f64 {
    debug_assert!(u > 0.0 && u <= 1.0);
    if u >= 1.0 {
        return 0.0;
    }
    let d = 1.0 - u;
    let g = |e: f64| d * d * d - e * (1.0 + d + d * d) + e * e * (2.0 + d) - e * e * e;
    // g(0) = d^3 > 0, g(1) = d^2 (d - 1) < 0; bisect to float resolution.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Exact probability that `x` independent Bernoulli(u) column indicators
/// contain no run of three consecutive failures, by the run-length
/// recursion `f_x = u f_{x-1} + u(1-u) f_{x-2} + u(1-u)^2 f_{x-3}`.
pub fn no_triple_gap_exact(u: f64, x: i64) -> Result<f64, AnalyticError> {
    check_domain("u", u, "[0,1]", (0.0..=1.0).contains(&u))?;
    check_domain("x", x as f64, "x >= 0", x >= 0)?;
    if x <= 2 {
        return Ok(1.0);
    }
    let q = 1.0 - u;
    let (c1, c2, c3) = (u, u * q, u * q * q);
    let (mut f3, mut f2, mut f1) = (1.0f64, 1.0f64, 1.0f64);
    for _ in 3..=x {
        let f = c1 * f1 + c2 * f2 + c3 * f3;
        f3 = f2;
        f2 = f1;
        f1 = f;
    }
    Ok(f1)
}

/// Horizontal traversability bounds for a rectangle of dimensions `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorizBounds {
    /// Column occupancy `u = 1 - (1-p)^y`.
    pub u: f64,
    pub alpha: f64,
    /// Exact sandwich: `alpha^x <= P <= alpha^(x-2)`.
    pub lower: f64,
    pub upper: f64,
    /// Exponential forms `exp[-(1±eps) * (x or x-2) * e^{-3py}]`.
    pub exp_lower: f64,
    pub exp_upper: f64,
    /// Whether `y0/p < y < 1/(y0 p^2)` for the caller-supplied `y0`.
    pub in_regime: bool,
}

pub fn horiz_traversable_bounds(
    params: &BoundParams,
    x: i64,
    y: i64,
    y0: f64,
) -> Result<HorizBounds, AnalyticError> {
    check_domain("x", x as f64, "x >= 0", x >= 0)?;
    check_domain("y", y as f64, "y >= 0", y >= 0)?;
    let p = params.p();
    let eps = params.epsilon();
    let u = column_occupancy(p, y)?;
    let gap = alpha_gap(u.max(f64::MIN_POSITIVE));
    let log_alpha = f64::ln_1p(-gap);
    let rate = (-3.0 * p * y as f64).exp();
    Ok(HorizBounds {
        u,
        alpha: 1.0 - gap,
        lower: (x as f64 * log_alpha).exp(),
        upper: ((x - 2) as f64 * log_alpha).exp(),
        exp_lower: (-(1.0 + eps) * x as f64 * rate).exp(),
        exp_upper: (-(1.0 - eps) * (x - 2) as f64 * rate).exp(),
        in_regime: y0 / p < y as f64 && (y as f64) < 1.0 / (y0 * p * p),
    })
}

/// Lower bound `v^y` for north traversability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NorthBound {
    /// Single-line probability: exact when `exact`, else the asymptotic
    /// surrogate `min(1, (8x-16) p^2)`.
    pub line_prob: f64,
    pub bound: f64,
    pub exact: bool,
}

/// Exact probability that a line of `x + 1` sites is "occupied" in the
/// north-traversability sense: some position has at least two occupied
/// sites among its four in-line horizontal offsets and the site directly
/// above (offsets outside the line count as vacant).
///
/// Column scan over the line. The state is the window of the last five
/// in-line occupancy bits (bit 0 newest); a center `m` is decided once
/// position `m + 2` has been read, with its above-row site, independent and
/// used exactly once, marginalized on the spot. Left and right clipping fall
/// out of the zero-filled window.
fn north_line_prob_exact(p: f64, x: i64) -> f64 {
    let positions = x + 1;
    let mut state = [0.0f64; 32]; // mass of "not yet satisfied" by window
    state[0] = 1.0;
    let mut satisfied = 0.0f64;
    let mut settle = |state: &mut [f64; 32], h_of: &dyn Fn(usize) -> u32| {
        let mut keep = [0.0f64; 32];
        for (s, &mass) in state.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            match h_of(s) {
                h if h >= 2 => satisfied += mass,
                1 => {
                    satisfied += mass * p;
                    keep[s] += mass * (1.0 - p);
                }
                _ => keep[s] += mass,
            }
        }
        *state = keep;
    };
    for j in 0..positions {
        let mut next = [0.0f64; 32];
        for (s, &mass) in state.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            next[(s << 1) & 0b11111] += mass * (1.0 - p);
            next[((s << 1) | 1) & 0b11111] += mass * p;
        }
        state = next;
        if j >= 2 {
            // center m = j-2: supports at m±1, m±2 sit at bits 4, 3, 1, 0
            settle(&mut state, &|s: usize| {
                (s >> 4 & 1) as u32 + (s >> 3 & 1) as u32 + (s >> 1 & 1) as u32 + (s & 1) as u32
            });
        }
    }
    // tail centers m = x-1 and m = x still lack their lookahead; position i
    // sits at bit (x - i) of the final window, out-of-line positions vacant
    for m in [positions - 2, positions - 1] {
        if m < 0 {
            continue;
        }
        settle(&mut state, &|s: usize| {
            let mut h = 0;
            for i in [m - 2, m - 1, m + 1, m + 2] {
                if (0..positions).contains(&i) {
                    let shift = (positions - 1 - i) as usize;
                    if shift < 5 {
                        h += (s >> shift & 1) as u32;
                    }
                }
            }
            h
        });
    }
    satisfied
}

pub fn north_traversable_lower(p: f64, x: i64, y: i64) -> Result<NorthBound, AnalyticError> {
    check_domain("p", p, "[0,1]", (0.0..=1.0).contains(&p))?;
    check_domain("y", y as f64, "y >= 0", y >= 0)?;
    let exact = x + 1 <= LINE_ENUMERATION_CAP;
    if !exact {
        check_domain("x", x as f64, "x >= 3 for the surrogate", x >= 3)?;
    } else {
        check_domain("x", x as f64, "x >= 0", x >= 0)?;
    }
    let line_prob = if exact {
        north_line_prob_exact(p, x)
    } else {
        ((8 * x - 16) as f64 * p * p).min(1.0)
    };
    Ok(NorthBound {
        line_prob,
        bound: line_prob.powi(y.min(i32::MAX as i64) as i32),
        exact,
    })
}

/// The crossing lower bound
/// `exp(-(1+eps) [ (x2-x1) e^{-3 p y2} - (y2-y1) log(p^2 x1) ])` with its
/// regime flags.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingBound {
    pub bound: f64,
    /// `p^2 x1 < 1/k0`
    pub regime_width: bool,
    /// `k0/p < y1 < 1/(k0 p^2)`
    pub regime_height: bool,
}

pub fn crossing_lower_bound(
    params: &BoundParams,
    r1_dims: (f64, f64),
    r2_dims: (f64, f64),
    k0: f64,
) -> Result<CrossingBound, AnalyticError> {
    let (x1, y1) = r1_dims;
    let (x2, y2) = r2_dims;
    for (name, v) in [("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2)] {
        check_domain(name, v, "positive", v > 0.0)?;
    }
    if x1 > x2 || y1 > y2 {
        return Err(AnalyticError::NotNested { x1, y1, x2, y2 });
    }
    let p = params.p();
    let exponent = (x2 - x1) * (-3.0 * p * y2).exp() - (y2 - y1) * (p * p * x1).ln();
    Ok(CrossingBound {
        bound: (-(1.0 + params.epsilon()) * exponent).exp(),
        regime_width: p * p * x1 < 1.0 / k0,
        regime_height: k0 / p < y1 && y1 < 1.0 / (k0 * p * p),
    })
}

/// Piecewise growth cost `W^p(R1, R2)` for nested rectangles given by their
/// dimensions. Regimes split on `x2` against `1/p` and `1/p^2`; at the
/// boundaries the branches coincide.
pub fn w_p(p: f64, r1_dims: (f64, f64), r2_dims: (f64, f64)) -> Result<f64, AnalyticError> {
    check_domain("p", p, "(0,1)", p > 0.0 && p < 1.0)?;
    let (x1, y1) = r1_dims;
    let (x2, y2) = r2_dims;
    for (name, v) in [("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2)] {
        check_domain(name, v, "nonnegative", v >= 0.0)?;
    }
    if x1 > x2 || y1 > y2 {
        return Err(AnalyticError::NotNested { x1, y1, x2, y2 });
    }
    let log_inv_p = -p.ln();
    let scale = p / (log_inv_p * log_inv_p);
    let horizontal = (x2 - x1) * (-3.0 * p * y2).exp();
    let value = if x2 >= 1.0 / (p * p) {
        scale * horizontal
    } else if x2 >= 1.0 / p {
        scale * (horizontal - (y2 - y1) * (p * p * x2).ln())
    } else {
        scale * (horizontal - (y2 - y1) * p.ln())
    };
    Ok(value)
}

/// Growth schedule `R_n = [0, p^(-1-3n/log(1/p))] x [0, n/p]` for
/// `n = k0 .. ceil(N)` with `N = (1/3) log(1/p) - log(k0)`, bounds ceiled
/// to integers.
pub fn growth_schedule(p: f64, k0: u32) -> Result<Vec<Rect>, AnalyticError> {
    check_domain("p", p, "(0,1)", p > 0.0 && p < 1.0)?;
    check_domain("k0", k0 as f64, "k0 >= 1", k0 >= 1)?;
    let log_inv_p = -p.ln();
    let n_max = (log_inv_p / 3.0 - (k0 as f64).ln()).ceil() as i64;
    let mut out = Vec::new();
    for n in k0 as i64..=n_max {
        out.push(schedule_rect(p, n)?);
    }
    Ok(out)
}

/// The `n`-th schedule rectangle, independent of the `k0..ceil(N)` range.
pub fn schedule_rect(p: f64, n: i64) -> Result<Rect, AnalyticError> {
    check_domain("p", p, "(0,1)", p > 0.0 && p < 1.0)?;
    check_domain("n", n as f64, "n >= 1", n >= 1)?;
    let log_inv_p = -p.ln();
    let width = (-(1.0 + 3.0 * n as f64 / log_inv_p) * p.ln()).exp().ceil();
    let height = (n as f64 / p).ceil();
    if !(width.is_finite() && height.is_finite()) || width > 4.0e18 || height > 4.0e18 {
        return Err(AnalyticError::Overflow);
    }
    Ok(Rect::new(0, width as i64, 0, height as i64).expect("nonnegative dims"))
}

/// Threshold constant `1 / (4(k+1))`; `1/12` for the `k = 2` model.
pub fn threshold_constant(k: u32) -> f64 {
    assert!(k >= 1, "k must be at least 1");
    1.0 / (4.0 * (k + 1) as f64)
}
