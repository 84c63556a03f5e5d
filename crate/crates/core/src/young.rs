//! Young functions: evaluation, generalized inverse, numeric complementary
//! function and empirical growth-regularity checks.
//!
//! All operations act on `|x|`, so evenness never has to be stored. Values
//! are immutable once built.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optim;

/// Largest argument for which `e^x - x - 1` stays comfortably finite.
pub const EXP_DOMAIN_CAP: f64 = 700.0;

/// Relative tolerance of every inverse / root computation.
pub const ROOT_TOL: f64 = 1e-12;

/// Tolerance used when maximizing `x*y - phi(x)`.
pub const CONJUGATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YoungError {
    #[error("argument {x} exceeds the domain cap {cap}")]
    DomainExceeded { x: f64, cap: f64 },
    #[error("value {y} is larger than the largest tabulated value {max}")]
    NotAttained { y: f64, max: f64 },
    #[error("conjugate diverges at y = {y}")]
    UnboundedConjugate { y: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
}

/// Config-level description of a Young function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum YoungSpec {
    Power {
        p: f64,
    },
    #[serde(alias = "power-scaled")]
    PowerScaled {
        p: f64,
        a: f64,
    },
    #[serde(alias = "exp-minus-linear")]
    ExpMinusLinear,
    Custom {
        table: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `|x|^p`
    Power { p: f64 },
    /// `a |x|^p`
    PowerScaled { p: f64, a: f64 },
    /// `e^|x| - |x| - 1`
    ExpMinusLinear,
    /// Monotone cubic interpolation through a sample table.
    Custom(Table),
}

/// Sample table with precomputed Fritsch–Carlson knot derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl Table {
    fn new(points: &[(f64, f64)]) -> Result<Self, YoungError> {
        if points.len() < 2 {
            return Err(YoungError::InvalidTable("need at least two points".into()));
        }
        let (x0, y0) = points[0];
        if x0 != 0.0 || y0 != 0.0 {
            return Err(YoungError::InvalidTable("first point must be (0, 0)".into()));
        }
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(YoungError::InvalidTable("non-finite entry".into()));
        }
        for w in xs.windows(2) {
            if w[1] <= w[0] {
                return Err(YoungError::InvalidTable(format!(
                    "x values must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        for (j, w) in ys.windows(2).enumerate() {
            if w[1] < w[0] {
                return Err(YoungError::InvalidTable(format!("values decrease after index {j}")));
            }
        }
        let slopes: Vec<f64> = (0..xs.len() - 1).map(|j| (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j])).collect();
        for (j, w) in slopes.windows(2).enumerate() {
            let scale = w[0].abs().max(w[1].abs()).max(1.0);
            if w[1] < w[0] - 1e-9 * scale {
                return Err(YoungError::InvalidTable(format!("table is not convex around x = {}", xs[j + 1])));
            }
        }
        if ys[ys.len() - 1] <= 0.0 {
            return Err(YoungError::InvalidTable("table never leaves zero".into()));
        }
        let ds = pchip_derivatives(&xs, &slopes);
        Ok(Table { xs, ys, ds })
    }

    fn cap(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    fn max_value(&self) -> f64 {
        self.ys[self.ys.len() - 1]
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let j = self.xs.partition_point(|&xj| xj <= x).saturating_sub(1).min(n - 2);
        let h = self.xs[j + 1] - self.xs[j];
        let s = (x - self.xs[j]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let v = h00 * self.ys[j] + h10 * h * self.ds[j] + h01 * self.ys[j + 1] + h11 * h * self.ds[j + 1];
        // Hermite rounding can dip a hair outside the knot values
        v.clamp(self.ys[j], self.ys[j + 1])
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }
}

fn pchip_derivatives(xs: &[f64], slopes: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = slopes[0];
        d[1] = slopes[0];
        return d;
    }
    for k in 1..n - 1 {
        let (s0, s1) = (slopes[k - 1], slopes[k]);
        if s0 * s1 <= 0.0 {
            d[k] = 0.0;
        } else {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / s0 + w2 / s1);
        }
    }
    d[0] = pchip_end(h[0], h[1], slopes[0], slopes[1]);
    d[n - 1] = pchip_end(h[n - 2], h[n - 3], slopes[n - 2], slopes[n - 3]);
    d
}

fn pchip_end(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 <= 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

/// Uniform sample grid `0 = y_0 < ... < y_{n-1} = end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub end: f64,
    pub points: usize,
}

impl SampleGrid {
    pub fn new(end: f64, points: usize) -> Self {
        SampleGrid { end, points }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.end / (self.points - 1) as f64;
        (0..self.points).map(move |j| if j + 1 == self.points { self.end } else { j as f64 * step })
    }
}

/// Outcome of an empirical growth-condition check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub holds: bool,
    pub constant: f64,
    /// True when the answer comes from the closed form of a parametric
    /// family rather than the sample grid.
    pub exact: bool,
}

/// A Young function together with the largest argument it is evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungFunction {
    family: Family,
    domain_cap: f64,
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self, YoungError> {
        check_exponent(p)?;
        Ok(YoungFunction { family: Family::Power { p }, domain_cap: f64::INFINITY })
    }

    pub fn power_scaled(p: f64, a: f64) -> Result<Self, YoungError> {
        check_exponent(p)?;
        if !(a > 0.0 && a.is_finite()) {
            return Err(YoungError::InvalidParameter(format!("scale a must be positive, got {a}")));
        }
        Ok(YoungFunction { family: Family::PowerScaled { p, a }, domain_cap: f64::INFINITY })
    }

    pub fn exp_minus_linear() -> Self {
        YoungFunction { family: Family::ExpMinusLinear, domain_cap: EXP_DOMAIN_CAP }
    }

    /// Table-defined Young function. Points must start at `(0, 0)`, have
    /// strictly increasing `x`, nondecreasing and convex values.
    pub fn custom(points: &[(f64, f64)]) -> Result<Self, YoungError> {
        let table = Table::new(points)?;
        let cap = table.cap();
        Ok(YoungFunction { family: Family::Custom(table), domain_cap: cap })
    }

    pub fn from_spec(spec: &YoungSpec) -> Result<Self, YoungError> {
        match spec {
            YoungSpec::Power { p } => Self::power(*p),
            YoungSpec::PowerScaled { p, a } => Self::power_scaled(*p, *a),
            YoungSpec::ExpMinusLinear => Ok(Self::exp_minus_linear()),
            YoungSpec::Custom { table } => {
                let pts: Vec<(f64, f64)> = table.iter().map(|r| (r[0], r[1])).collect();
                Self::custom(&pts)
            }
        }
    }

    pub fn spec(&self) -> YoungSpec {
        match &self.family {
            Family::Power { p } => YoungSpec::Power { p: *p },
            Family::PowerScaled { p, a } => YoungSpec::PowerScaled { p: *p, a: *a },
            Family::ExpMinusLinear => YoungSpec::ExpMinusLinear,
            Family::Custom(t) => YoungSpec::Custom { table: t.points().map(|(x, y)| [x, y]).collect() },
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain_cap(&self) -> f64 {
        self.domain_cap
    }

    /// Exponent `p` when `phi(c x) = c^p phi(x)` exactly (power families).
    /// Luxemburg norms then scale by `c^(1/p)` when all masses scale by `c`,
    /// which is what makes geometric tails evaluable in closed form.
    pub fn homogeneity(&self) -> Option<f64> {
        match self.family {
            Family::Power { p } | Family::PowerScaled { p, .. } => Some(p),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, YoungError> {
        let x = x.abs();
        if x > self.domain_cap {
            return Err(YoungError::DomainExceeded { x, cap: self.domain_cap });
        }
        Ok(match &self.family {
            Family::Power { p } => pow(x, *p),
            Family::PowerScaled { p, a } => a * pow(x, *p),
            Family::ExpMinusLinear => exp_minus_linear(x),
            Family::Custom(t) => t.eval(x),
        })
    }

    /// Generalized inverse `sup { x >= 0 : phi(x) <= y }`.
    pub fn inverse(&self, y: f64) -> Result<f64, YoungError> {
        if y.is_nan() || y < 0.0 {
            return Err(YoungError::InvalidParameter(format!("inverse needs y >= 0, got {y}")));
        }
        if y.is_infinite() {
            return Err(YoungError::NotAttained { y, max: f64::MAX });
        }
        match &self.family {
            Family::Power { p } => Ok(y.powf(1.0 / p)),
            Family::PowerScaled { p, a } => Ok((y / a).powf(1.0 / p)),
            Family::ExpMinusLinear => {
                if y == 0.0 {
                    return Ok(0.0);
                }
                // phi(x) > x^2/2 and phi(x) >= e^x/2 once x >= 2
                let hi = ((2.0 * y).sqrt() * 1.001).min((2.0 * y + 2.0).ln().max(2.0)).min(self.domain_cap);
                if exp_minus_linear(hi) <= y {
                    return Err(YoungError::NotAttained { y, max: exp_minus_linear(self.domain_cap) });
                }
                Ok(optim::bisect_last_true(0.0, hi, ROOT_TOL, f64::MIN_POSITIVE, |x| exp_minus_linear(x) <= y))
            }
            Family::Custom(t) => {
                let max = t.max_value();
                if y > max {
                    return Err(YoungError::NotAttained { y, max });
                }
                let j = t.ys.partition_point(|&v| v <= y);
                if j == t.ys.len() {
                    return Ok(t.cap());
                }
                // phi(xs[j-1]) <= y < phi(xs[j])
                let (lo, hi) = (t.xs[j - 1], t.xs[j]);
                Ok(optim::bisect_last_true(lo, hi, ROOT_TOL, f64::MIN_POSITIVE, |x| t.eval(x) <= y))
            }
        }
    }

    /// Numeric complementary function `psi(y) = sup_x (x y - phi(x))` on a
    /// uniform grid, returned as a table-defined Young function.
    pub fn complementary(&self, grid: SampleGrid) -> Result<YoungFunction, YoungError> {
        if grid.points < 2 || !(grid.end > 0.0 && grid.end.is_finite()) {
            return Err(YoungError::InvalidParameter("grid needs two points and a positive end".into()));
        }
        let mut pts = Vec::with_capacity(grid.points);
        for y in grid.values() {
            pts.push((y, self.conjugate_at(y)?));
        }
        YoungFunction::custom(&pts)
    }

    /// `sup_{x >= 0} (x y - phi(x))` for a single `y >= 0`.
    pub fn conjugate_at(&self, y: f64) -> Result<f64, YoungError> {
        let y = y.abs();
        if y == 0.0 {
            return Ok(0.0);
        }
        let gain = |x: f64| match self.eval(x) {
            Ok(v) => x * y - v,
            Err(_) => f64::NEG_INFINITY,
        };
        // grow the bracket until the concave gain turns down
        let mut hi = 1.0f64.min(self.domain_cap);
        loop {
            let next = (2.0 * hi).min(self.domain_cap);
            if next == hi || next.is_nan() || next >= 1e150 {
                break;
            }
            if gain(next) <= gain(hi) {
                hi = next;
                break;
            }
            hi = next;
        }
        let (x_star, v) = optim::golden_section_max(0.0, hi, CONJUGATE_TOL * 1e-2, gain);
        let boundary = (hi - x_star) <= CONJUGATE_TOL * hi.max(1.0);
        if boundary && gain(hi) > gain(hi * (1.0 - 1e-6)) {
            return Err(YoungError::UnboundedConjugate { y });
        }
        Ok(v.max(0.0))
    }

    /// Empirical check of `phi(2x) <= K phi(x)` on a log grid over
    /// `[max(x0, eps), x_max]`. Power families short-circuit to `2^p`.
    pub fn check_delta2(&self, x0: f64, x_max: f64, samples: usize) -> RegularityReport {
        let xs = log_grid(x0, x_max, samples);
        let ratios: Vec<(f64, f64)> = xs
            .iter()
            .filter_map(|&x| {
                let num = self.eval(2.0 * x).ok()?;
                let den = self.eval(x).ok()?;
                (den > 0.0).then(|| (x, num / den))
            })
            .collect();
        let grid = tail_verdict(&ratios, x_max);
        match self.family {
            Family::Power { p } | Family::PowerScaled { p, .. } => {
                RegularityReport { holds: true, constant: 2f64.powf(p), exact: true }
            }
            Family::ExpMinusLinear => RegularityReport { holds: false, constant: grid.constant, exact: true },
            Family::Custom(_) => grid,
        }
    }

    /// Empirical check of `phi(xy) <= c phi(x) phi(y)` on a 2-D log grid.
    pub fn check_delta_prime(&self, x0: f64, x_max: f64, samples: usize) -> RegularityReport {
        let xs = log_grid(x0, x_max, samples);
        let ratio = |x: f64, y: f64| -> Option<f64> {
            let num = self.eval(x * y).ok()?;
            let den = self.eval(x).ok()? * self.eval(y).ok()?;
            (den > 0.0).then(|| num / den)
        };
        let mut sup = 0.0f64;
        for &x in &xs {
            for &y in &xs {
                if let Some(r) = ratio(x, y) {
                    sup = sup.max(r);
                }
            }
        }
        let diagonal: Vec<(f64, f64)> = xs.iter().filter_map(|&x| ratio(x, x).map(|r| (x, r))).collect();
        let mut grid = tail_verdict(&diagonal, x_max);
        grid.constant = grid.constant.max(sup);
        if !sup.is_finite() {
            grid.holds = false;
        }
        match self.family {
            Family::Power { .. } => RegularityReport { holds: true, constant: 1.0, exact: true },
            Family::PowerScaled { a, .. } => RegularityReport { holds: true, constant: 1.0 / a, exact: true },
            Family::ExpMinusLinear => RegularityReport { holds: false, constant: grid.constant, exact: true },
            Family::Custom(_) => grid,
        }
    }

    /// Midpoint convexity and monotonicity on `samples` points of `[0, x_max]`,
    /// relative tolerance 1e-12.
    pub fn check_shape(&self, x_max: f64, samples: usize) -> bool {
        let grid: Vec<f64> = SampleGrid::new(x_max.min(self.domain_cap), samples).values().collect();
        let vals: Vec<f64> = match grid.iter().map(|&x| self.eval(x)).collect() {
            Ok(v) => v,
            Err(_) => return false,
        };
        if vals[0] != 0.0 {
            return false;
        }
        let monotone = vals.windows(2).all(|w| w[1] >= w[0]);
        let convex = grid.windows(2).zip(vals.windows(2)).all(|(xw, vw)| {
            let mid = self.eval(0.5 * (xw[0] + xw[1])).unwrap_or(f64::INFINITY);
            let chord = 0.5 * (vw[0] + vw[1]);
            mid <= chord * (1.0 + 1e-12) + 1e-300
        });
        monotone && convex
    }
}

fn check_exponent(p: f64) -> Result<(), YoungError> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(YoungError::InvalidParameter(format!("exponent p must be >= 1, got {p}")));
    }
    Ok(())
}

fn pow(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

fn exp_minus_linear(x: f64) -> f64 {
    if x < 0.05 {
        // Taylor tail of e^x - x - 1; exp_m1 - x cancels badly here
        let mut term = x * x / 2.0;
        let mut sum = 0.0;
        let mut k = 2.0;
        while term > sum * 1e-18 && k < 30.0 {
            sum += term;
            k += 1.0;
            term *= x / k;
        }
        sum
    } else {
        x.exp_m1() - x
    }
}

fn log_grid(x0: f64, x_max: f64, samples: usize) -> Vec<f64> {
    let samples = samples.max(2);
    let start = x0.max(x_max * 1e-6).max(f64::MIN_POSITIVE);
    let (l0, l1) = (start.ln(), x_max.ln());
    (0..samples).map(|j| (l0 + (l1 - l0) * j as f64 / (samples - 1) as f64).exp()).collect()
}

/// Bounded-ratio heuristic: the ratio must be finite everywhere and, over
/// the last decade of the grid, either non-increasing or never exceeding
/// what it reached before that decade.
fn tail_verdict(ratios: &[(f64, f64)], x_max: f64) -> RegularityReport {
    let constant = ratios.iter().map(|r| r.1).fold(0.0f64, f64::max);
    if ratios.is_empty() || !constant.is_finite() {
        return RegularityReport { holds: false, constant, exact: false };
    }
    let split = ratios.partition_point(|r| r.0 < x_max / 10.0);
    let tail = &ratios[split..];
    let head_max = ratios[..split].iter().map(|r| r.1).fold(0.0f64, f64::max);
    let non_increasing = tail.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9));
    let tail_max = tail.iter().map(|r| r.1).fold(0.0f64, f64::max);
    let bounded = split > 0 && tail_max <= head_max * (1.0 + 1e-6);
    RegularityReport { holds: non_increasing || bounded, constant, exact: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_half() -> YoungFunction {
        YoungFunction::power_scaled(2.0, 0.5).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p2 = YoungFunction::power(2.0).unwrap();
        assert_eq!(p2.eval(3.0).unwrap(), 9.0);
        assert_eq!(p2.eval(0.0).unwrap(), 0.0);
        let p3 = YoungFunction::power(3.0).unwrap();
        assert!((p3.eval(-2.0).unwrap() - 8.0).abs() < 1e-15);
        assert_eq!(YoungFunction::exp_minus_linear().eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn eval_beyond_cap_is_rejected() {
        let phi = YoungFunction::exp_minus_linear();
        assert!(matches!(phi.eval(701.0), Err(YoungError::DomainExceeded { .. })));
        let t = YoungFunction::custom(&[(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap();
        assert!(matches!(t.eval(-2.5), Err(YoungError::DomainExceeded { .. })));
    }

    #[test]
    fn inverse_examples() {
        let p2 = YoungFunction::power(2.0).unwrap();
        assert_eq!(p2.inverse(4.0).unwrap(), 2.0);
        assert_eq!(p2.inverse(0.0).unwrap(), 0.0);
        assert_eq!(YoungFunction::exp_minus_linear().inverse(0.0).unwrap(), 0.0);
    }

    #[test]
    fn inverse_cube_root_matches_bisection_oracle() {
        let p3 = YoungFunction::power(3.0).unwrap();
        let oracle = optim::bisect_last_true(0.0, 27.0, 1e-15, 0.0, |x| x * x * x <= 27.0);
        let v = p3.inverse(27.0).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
        assert!((v - oracle).abs() < 1e-12);
    }

    #[test]
    fn inverse_exp_family_is_relative_accurate() {
        let phi = YoungFunction::exp_minus_linear();
        for y in [1e-200, 1e-20, 1e-3, 0.5, 1.0, 7.0, 1e5, 1e200] {
            let x = phi.inverse(y).unwrap();
            let back = phi.eval(x).unwrap();
            assert!(back <= y);
            assert!(phi.eval(x * (1.0 + 1e-10)).unwrap() > y, "y = {y}");
        }
    }

    #[test]
    fn inverse_flat_table_returns_sup_of_level_set() {
        let t = YoungFunction::custom(&[(0.0, 0.0), (1.0, 0.0), (2.0, 1.0), (3.0, 3.0)]).unwrap();
        assert!((t.inverse(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((t.inverse(3.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(matches!(t.inverse(3.5), Err(YoungError::NotAttained { .. })));
    }

    #[test]
    fn table_validation() {
        assert!(YoungFunction::custom(&[(0.0, 0.0)]).is_err());
        assert!(YoungFunction::custom(&[(0.5, 0.0), (1.0, 1.0)]).is_err());
        assert!(YoungFunction::custom(&[(0.0, 0.0), (1.0, 2.0), (2.0, 3.0)]).is_err(), "concave");
        assert!(YoungFunction::custom(&[(0.0, 0.0), (1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(YoungFunction::power(0.5).is_err());
        assert!(YoungFunction::power_scaled(2.0, -1.0).is_err());
    }

    #[test]
    fn table_interpolates_knots_exactly() {
        let pts: Vec<(f64, f64)> = (0..=10).map(|j| (j as f64 * 0.3, (j as f64 * 0.3).powi(3))).collect();
        let t = YoungFunction::custom(&pts).unwrap();
        for (x, y) in pts {
            assert!((t.eval(x).unwrap() - y).abs() < 1e-12);
        }
        assert!(t.check_shape(3.0, 301));
    }

    #[test]
    fn self_dual_quadratic() {
        let psi = quad_half().complementary(SampleGrid::new(3.0, 61)).unwrap();
        if let Family::Custom(t) = psi.family() {
            for (y, v) in t.points() {
                assert!((v - 0.5 * y * y).abs() <= 1e-8, "y = {y}");
            }
        } else {
            panic!("complementary must be a table");
        }
    }

    #[test]
    fn legendre_pair_p3() {
        let phi = YoungFunction::power_scaled(3.0, 1.0 / 3.0).unwrap();
        let q = 1.5;
        for j in 0..=40 {
            let y = j as f64 * 0.1;
            let v = phi.conjugate_at(y).unwrap();
            assert!((v - y.powf(q) / q).abs() <= 1e-8, "y = {y}");
        }
    }

    #[test]
    fn youngs_inequality_spot_check() {
        let phi = YoungFunction::power(2.5).unwrap();
        let psi = phi.complementary(SampleGrid::new(2.0, 201)).unwrap();
        let (x, y) = (1.3, 0.7);
        assert!(x * y <= phi.eval(x).unwrap() + psi.eval(y).unwrap());
    }

    #[test]
    fn linear_phi_has_unbounded_conjugate() {
        let phi = YoungFunction::power(1.0).unwrap();
        assert_eq!(phi.conjugate_at(0.5).unwrap(), 0.0);
        assert!(matches!(phi.complementary(SampleGrid::new(2.0, 5)), Err(YoungError::UnboundedConjugate { .. })));
    }

    #[test]
    fn delta2_examples() {
        let r = YoungFunction::power(2.0).unwrap().check_delta2(0.0, 100.0, 200);
        assert!(r.holds && r.exact && r.constant == 4.0);
        let r = YoungFunction::power(5.0).unwrap().check_delta2(0.0, 100.0, 200);
        assert!(r.holds && (r.constant - 32.0).abs() < 1e-12);
        let r = YoungFunction::exp_minus_linear().check_delta2(0.0, 100.0, 200);
        assert!(!r.holds);
    }

    #[test]
    fn delta2_exp_ratio_grows_on_doubling_oracle() {
        let phi = YoungFunction::exp_minus_linear();
        let mut prev = 0.0;
        for x in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
            let r = phi.eval(2.0 * x).unwrap() / phi.eval(x).unwrap();
            assert!(r > prev);
            prev = r;
        }
        assert!(prev > 1e13);
        // the grid verdict agrees with the closed-form override
        let t: Vec<(f64, f64)> = (0..=64).map(|j| j as f64 * 0.25).map(|x| (x, phi.eval(x).unwrap())).collect();
        let table = YoungFunction::custom(&t).unwrap();
        assert!(!table.check_delta2(0.0, 8.0, 100).holds);
    }

    #[test]
    fn delta2_grid_on_power_table() {
        let t: Vec<(f64, f64)> = (0..=400).map(|j| j as f64 * 0.05).map(|x| (x, x * x)).collect();
        let table = YoungFunction::custom(&t).unwrap();
        let r = table.check_delta2(0.5, 10.0, 80);
        assert!(r.holds && !r.exact);
        assert!((r.constant - 4.0).abs() < 1e-3);
    }

    #[test]
    fn delta_prime_examples() {
        let r = YoungFunction::power(2.0).unwrap().check_delta_prime(0.0, 10.0, 40);
        assert!(r.holds && r.constant == 1.0);
        let r = YoungFunction::power_scaled(2.0, 3.0).unwrap().check_delta_prime(0.0, 10.0, 40);
        assert!(r.holds && (r.constant - 1.0 / 3.0).abs() < 1e-15);
        assert!(!YoungFunction::exp_minus_linear().check_delta_prime(0.0, 10.0, 40).holds);
    }

    #[test]
    fn delta_prime_exp_oracle_grows() {
        let phi = YoungFunction::exp_minus_linear();
        let r = |x: f64| phi.eval(x * x).unwrap() / (phi.eval(x).unwrap() * phi.eval(x).unwrap());
        assert!(r(2.0) < r(4.0) && r(4.0) < r(8.0));
    }

    #[test]
    fn delta_prime_symbolic_ratio_for_scaled_square() {
        // 3x^2y^2 / (9x^2y^2) = 1/3 at every grid point
        let phi = YoungFunction::power_scaled(2.0, 3.0).unwrap();
        for (x, y) in [(0.3, 2.0), (1.0, 1.0), (5.0, 0.1)] {
            let r = phi.eval(x * y).unwrap() / (phi.eval(x).unwrap() * phi.eval(y).unwrap());
            assert!((r - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn parametric_families_are_convex() {
        for phi in [
            YoungFunction::power(1.0).unwrap(),
            YoungFunction::power(1.5).unwrap(),
            YoungFunction::power_scaled(3.0, 0.2).unwrap(),
            YoungFunction::exp_minus_linear(),
        ] {
            assert!(phi.check_shape(10.0, 1001), "{:?}", phi.family());
        }
    }

    #[test]
    fn spec_round_trip() {
        for spec in [
            YoungSpec::Power { p: 2.0 },
            YoungSpec::PowerScaled { p: 3.0, a: 0.5 },
            YoungSpec::ExpMinusLinear,
            YoungSpec::Custom { table: vec![[0.0, 0.0], [1.0, 1.0], [2.0, 4.0]] },
        ] {
            assert_eq!(YoungFunction::from_spec(&spec).unwrap().spec(), spec);
        }
    }
}
