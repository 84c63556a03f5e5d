//! Bounded distortion, the rate conditions HC / HD / GH and their
//! Radon–Nikodym forms, `(K, t)` certificates and spectral-radius brackets.
//!
//! Every condition is phrased through a norm profile
//! `k ↦ N_Φ(C_{φ^{-1}}^k f)` (for `f = χ_W` this is `ν_k`):
//!
//! | mode       | `a_n`                                  | wanted          |
//! |------------|----------------------------------------|-----------------|
//! | `Hc`       | `sup_{k∈ℤ}  ν_k / ν_{k+n}`             | `<= K tⁿ, t<1`  |
//! | `Hd`       | `inf_{k∈ℤ}  ν_k / ν_{k+n}`             | `>= K tⁿ, t>1`  |
//! | `GhMinus`  | `sup_{k>=0} ν_{k+n} / ν_k`             | `<= K tⁿ, t<1`  |
//! | `GhPlus`   | `sup_{k<=0} ν_{k-n} / ν_k`             | `<= K tⁿ, t<1`  |
//!
//! When `Φ` is a power function and masses are geometric outside a core,
//! each ratio is constant once both of its indices sit in the same tail, so
//! the sup/inf over `ℤ` reduces to a finite range and is exact. Otherwise the
//! range is the analysis window and the result is flagged as sampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::norms::{self, SimpleFunction};
use crate::operator::WeightedShift;
use crate::optim;
use crate::space::DissipativeSystem;
use crate::young::YoungFunction;

pub use crate::norms::level_norm as nu;

/// Default classification tolerance on `|t̂ - 1|`.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Largest subset family enumerated exhaustively.
pub const SUBSET_ENUMERATION_CAP: u64 = 1 << 20;

const SUBSET_SEED: u64 = 0x005e_ed0f_d15c;

/// Relative margin added to fitted constants so the emitted `(K, t)`
/// satisfies its inequality despite rounding in `tⁿ`.
const CONSTANT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("M_k/m_k is unbounded on the window (reached {0})")]
    UnboundedDistortion(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Hc,
    Hd,
    GhMinus,
    GhPlus,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Hc, Mode::Hd, Mode::GhMinus, Mode::GhPlus];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Hc => "hc",
            Mode::Hd => "hd",
            Mode::GhMinus => "gh_minus",
            Mode::GhPlus => "gh_plus",
        }
    }

    fn takes_inf(self) -> bool {
        self == Mode::Hd
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HyperbolicClass {
    #[serde(rename = "HC")]
    Hc,
    #[serde(rename = "HD")]
    Hd,
    #[serde(rename = "GH")]
    Gh,
    #[serde(rename = "NONE")]
    None,
}

impl HyperbolicClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HyperbolicClass::Hc => "HC",
            HyperbolicClass::Hd => "HD",
            HyperbolicClass::Gh => "GH",
            HyperbolicClass::None => "NONE",
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        self != HyperbolicClass::None
    }
}

/// `k ↦ N_Φ(C_{φ^{-1}}^k f)` tabulated on a range, with the stationarity
/// information that decides how far the sup/inf has to look.
#[derive(Debug, Clone, PartialEq)]
pub struct NormProfile {
    offset: i64,
    values: Vec<f64>,
    /// Exact: ratios `v_{k+1}/v_k` are constant for `k >= hi` and for
    /// `k + 1 <= lo`. Sampled: `[lo, hi]` is the window searched.
    lo: i64,
    hi: i64,
    exact: bool,
}

impl NormProfile {
    fn build<F: Fn(i64) -> f64>(lo: i64, hi: i64, exact: bool, n_max: usize, v: F) -> Self {
        let pad = n_max as i64 + 1;
        let from = lo.min(0) - pad;
        let to = hi.max(0) + pad;
        NormProfile { offset: from, values: (from..=to).map(v).collect(), lo, hi, exact }
    }

    fn stationary_range(phi: &YoungFunction, window: i64, lo: i64, hi: i64) -> (i64, i64, bool) {
        if phi.homogeneity().is_some() {
            (lo, hi, true)
        } else {
            (-window, window, false)
        }
    }

    /// Profile of `χ_W`, i.e. `ν_k`.
    pub fn of_level(phi: &YoungFunction, sys: &DissipativeSystem, window: i64, n_max: usize) -> Self {
        let r0 = sys.core_radius();
        let (lo, hi, exact) = Self::stationary_range(phi, window, -r0, r0);
        Self::build(lo, hi, exact, n_max, |k| norms::level_norm(phi, sys, k))
    }

    /// Profile of `χ_F` where `F` is the atom set `subset` placed at level `level`.
    pub fn of_subset(
        phi: &YoungFunction,
        sys: &DissipativeSystem,
        subset: u64,
        level: i64,
        window: i64,
        n_max: usize,
    ) -> Self {
        let r0 = sys.core_radius();
        let (lo, hi, exact) = Self::stationary_range(phi, window, -r0 - level, r0 - level);
        Self::build(lo, hi, exact, n_max, |k| norms::mass_indicator_norm(phi, sys.subset_mass(level + k, subset)))
    }

    /// Profile of an arbitrary nonzero simple function.
    pub fn of_function(
        phi: &YoungFunction,
        sys: &DissipativeSystem,
        f: &SimpleFunction,
        window: i64,
        n_max: usize,
    ) -> Self {
        let r0 = sys.core_radius();
        let (s_lo, s_hi) = f.level_range().unwrap_or((0, 0));
        let (lo, hi, exact) = Self::stationary_range(phi, window, -r0 - s_hi, r0 - s_lo);
        Self::build(lo, hi, exact, n_max, |k| norms::luxemburg(phi, sys, &f.relabel_levels(k)))
    }

    /// Profile of the unit vector `e_0` under the inverse of a weighted
    /// backward shift: `s_0 = 1`, `s_k / s_{k-1} = 1 / w_k`.
    pub fn of_shift(w: &WeightedShift, n_max: usize) -> Self {
        let (a, b) = w.core_range();
        let (lo, hi) = (a - 1, b);
        let pad = n_max as i64 + 1;
        let from = lo.min(0) - pad;
        let to = hi.max(0) + pad;
        let mut values = vec![0.0; (to - from + 1) as usize];
        let at0 = (-from) as usize;
        values[at0] = 1.0;
        for j in at0 + 1..values.len() {
            let k = from + j as i64;
            values[j] = values[j - 1] / w.weight(k);
        }
        for j in (0..at0).rev() {
            let k = from + j as i64;
            values[j] = values[j + 1] * w.weight(k + 1);
        }
        NormProfile { offset: from, values, lo, hi, exact: w.exact_tails() }
    }

    pub fn at(&self, k: i64) -> f64 {
        self.values[(k - self.offset) as usize]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Range of `k` over which the extremum of mode `mode` at step `n` is taken.
    fn k_range(&self, mode: Mode, n: i64) -> (i64, i64) {
        let (lo, hi) = (self.lo, self.hi);
        if self.exact {
            match mode {
                Mode::Hc | Mode::Hd => (lo - n, hi),
                Mode::GhMinus => ((lo - n).max(0), hi.max(0)),
                Mode::GhPlus => (lo.min(0), (hi + n).min(0)),
            }
        } else {
            match mode {
                Mode::Hc | Mode::Hd => (lo, hi),
                Mode::GhMinus => (0, hi.max(0)),
                Mode::GhPlus => (lo.min(0), 0),
            }
        }
    }

    fn ratio(&self, mode: Mode, k: i64, n: i64) -> f64 {
        match mode {
            Mode::Hc | Mode::Hd => self.at(k) / self.at(k + n),
            Mode::GhMinus => self.at(k + n) / self.at(k),
            Mode::GhPlus => self.at(k - n) / self.at(k),
        }
    }
}

/// Per-`n` extremal ratios `a_1 .. a_{n_max}` of one mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub mode: Mode,
    pub values: Vec<f64>,
    /// True when the extremum over `ℤ` was evaluated exactly.
    pub exact: bool,
}

impl RateTable {
    pub fn a(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }
}

pub fn rate_table(profile: &NormProfile, mode: Mode, n_max: usize) -> RateTable {
    let values = (1..=n_max as i64)
        .map(|n| {
            let (from, to) = profile.k_range(mode, n);
            let it = (from..=to).map(|k| profile.ratio(mode, k, n));
            if mode.takes_inf() {
                it.fold(f64::INFINITY, f64::min)
            } else {
                it.fold(0.0, f64::max)
            }
        })
        .collect();
    RateTable { mode, values, exact: profile.exact }
}

/// All four tables of one profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTables {
    pub hc: RateTable,
    pub hd: RateTable,
    pub gh_minus: RateTable,
    pub gh_plus: RateTable,
}

impl RateTables {
    pub fn of_profile(profile: &NormProfile, n_max: usize) -> Self {
        RateTables {
            hc: rate_table(profile, Mode::Hc, n_max),
            hd: rate_table(profile, Mode::Hd, n_max),
            gh_minus: rate_table(profile, Mode::GhMinus, n_max),
            gh_plus: rate_table(profile, Mode::GhPlus, n_max),
        }
    }

    pub fn get(&self, mode: Mode) -> &RateTable {
        match mode {
            Mode::Hc => &self.hc,
            Mode::Hd => &self.hd,
            Mode::GhMinus => &self.gh_minus,
            Mode::GhPlus => &self.gh_plus,
        }
    }

    pub fn exact(&self) -> bool {
        Mode::ALL.iter().all(|m| self.get(*m).exact)
    }
}

/// `ν`-based tables for `χ_W`.
pub fn level_rate_tables(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    n_max: usize,
    window: i64,
) -> Result<RateTables, ClassifyError> {
    check_n_max(n_max)?;
    Ok(RateTables::of_profile(&NormProfile::of_level(phi, sys, window, n_max), n_max))
}

fn check_n_max(n_max: usize) -> Result<(), ClassifyError> {
    if n_max < 8 {
        return Err(ClassifyError::InvalidParameter(format!("n_max must be at least 8, got {n_max}")));
    }
    Ok(())
}

/// Root-rate estimate `t̂ = exp(slope of log a_n)` over the last half of a table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub t: f64,
    /// `a_{n+1}/a_n` is constant (1e-9 relative) over the fitted half.
    pub exactly_geometric: bool,
}

pub fn fit_rate(values: &[f64]) -> RateFit {
    let n_max = values.len();
    let start = n_max / 2;
    let xs: Vec<f64> = (start + 1..=n_max).map(|n| n as f64).collect();
    let ys: Vec<f64> = values[start..].iter().map(|a| a.ln()).collect();
    let slope = optim::ls_slope(&xs, &ys);
    let steps: Vec<f64> = values[start..].windows(2).map(|w| w[1] / w[0]).collect();
    let exactly_geometric = steps.windows(2).all(|s| (s[1] - s[0]).abs() <= 1e-9 * s[0].abs());
    RateFit { t: slope.exp(), exactly_geometric }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFits {
    pub hc: RateFit,
    pub hd: RateFit,
    pub gh_minus: RateFit,
    pub gh_plus: RateFit,
}

/// Separate constants of the two halves of a GH certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhConstants {
    pub k_minus: f64,
    pub t_minus: f64,
    pub k_plus: f64,
    pub t_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicityCertificate {
    pub class: HyperbolicClass,
    /// `K` of the class inequality; `None` for `NONE`.
    pub k: Option<f64>,
    /// `t` of the class inequality; `None` for `NONE`.
    pub t: Option<f64>,
    pub gh: Option<GhConstants>,
    /// Bounded-distortion constant `H` carried along for the shadowing bound.
    pub distortion_h: f64,
    pub inconclusive: bool,
    pub window_certified: bool,
    pub fits: RateFits,
    pub evidence: RateTables,
}

// Both folds start from the `n = 0` term `a_0 = 1`, so `K >= 1` for sup
// modes and `K <= 1` for `Hd`.
fn upper_constant(table: &RateTable, t: f64) -> f64 {
    table.values.iter().enumerate().map(|(j, a)| a / t.powi(j as i32 + 1)).fold(1.0, f64::max) * (1.0 + CONSTANT_MARGIN)
}

fn lower_constant(table: &RateTable, t: f64) -> f64 {
    table.values.iter().enumerate().map(|(j, a)| a / t.powi(j as i32 + 1)).fold(1.0, f64::min) * (1.0 - CONSTANT_MARGIN)
}

/// Whether `table` satisfies its class inequality with `(k, t)`, up to a
/// relative `slack`: `a_n <= k tⁿ` for sup modes, `a_n >= k tⁿ` for `Hd`.
pub fn admits(table: &RateTable, k: f64, t: f64, slack: f64) -> bool {
    table.values.iter().enumerate().all(|(j, &a)| {
        let bound = k * t.powi(j as i32 + 1);
        if table.mode.takes_inf() {
            a >= bound * (1.0 - slack)
        } else {
            a <= bound * (1.0 + slack)
        }
    })
}

/// Classify from rate tables: HC, else HD, else GH, else NONE.
pub fn certify(tables: &RateTables, tol: f64) -> HyperbolicityCertificate {
    let fits = RateFits {
        hc: fit_rate(&tables.hc.values),
        hd: fit_rate(&tables.hd.values),
        gh_minus: fit_rate(&tables.gh_minus.values),
        gh_plus: fit_rate(&tables.gh_plus.values),
    };
    let mut cert = HyperbolicityCertificate {
        class: HyperbolicClass::None,
        k: None,
        t: None,
        gh: None,
        distortion_h: 1.0,
        inconclusive: false,
        window_certified: tables.exact(),
        fits,
        evidence: tables.clone(),
    };
    if fits.hc.t < 1.0 - tol {
        cert.class = HyperbolicClass::Hc;
        cert.t = Some(fits.hc.t);
        cert.k = Some(upper_constant(&tables.hc, fits.hc.t));
    } else if fits.hd.t > 1.0 + tol {
        cert.class = HyperbolicClass::Hd;
        cert.t = Some(fits.hd.t);
        cert.k = Some(lower_constant(&tables.hd, fits.hd.t));
    } else if fits.gh_minus.t < 1.0 - tol && fits.gh_plus.t < 1.0 - tol {
        let gh = GhConstants {
            k_minus: upper_constant(&tables.gh_minus, fits.gh_minus.t),
            t_minus: fits.gh_minus.t,
            k_plus: upper_constant(&tables.gh_plus, fits.gh_plus.t),
            t_plus: fits.gh_plus.t,
        };
        cert.class = HyperbolicClass::Gh;
        cert.t = Some(gh.t_minus.max(gh.t_plus));
        cert.k = Some(gh.k_minus.max(gh.k_plus));
        cert.gh = Some(gh);
    } else {
        cert.inconclusive = [fits.hc, fits.hd, fits.gh_minus, fits.gh_plus]
            .iter()
            .any(|f| (f.t - 1.0).abs() <= tol && !f.exactly_geometric);
    }
    cert
}

impl HyperbolicityCertificate {
    pub fn with_distortion(mut self, h: f64) -> Self {
        self.distortion_h = h;
        self
    }

    /// Re-check every tabulated `n` against the emitted constants.
    pub fn verify(&self) -> bool {
        let (Some(k), Some(t)) = (self.k, self.t) else {
            return self.class == HyperbolicClass::None;
        };
        match self.class {
            HyperbolicClass::Hc => t < 1.0 && admits(&self.evidence.hc, k, t, 0.0),
            HyperbolicClass::Hd => t > 1.0 && admits(&self.evidence.hd, k, t, 0.0),
            HyperbolicClass::Gh => {
                let Some(gh) = self.gh else { return false };
                t < 1.0
                    && admits(&self.evidence.gh_minus, gh.k_minus, gh.t_minus, 0.0)
                    && admits(&self.evidence.gh_plus, gh.k_plus, gh.t_plus, 0.0)
                    && admits(&self.evidence.gh_minus, k, t, 0.0)
                    && admits(&self.evidence.gh_plus, k, t, 0.0)
            }
            HyperbolicClass::None => false,
        }
    }

    /// Contraction rate `τ < 1` of the part that is iterated in the
    /// shadowing sums (`t` for HC/GH, `1/t` for HD) and the matching
    /// constant (`K`, resp. `1/K`).
    pub fn decay(&self) -> Option<(f64, f64)> {
        let (k, t) = (self.k?, self.t?);
        match self.class {
            HyperbolicClass::Hc | HyperbolicClass::Gh => Some((k, t)),
            HyperbolicClass::Hd => Some((1.0 / k, 1.0 / t)),
            HyperbolicClass::None => None,
        }
    }
}

/// Bounded-distortion evidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    /// Brute-force constant over atom subsets.
    pub k_subset: f64,
    /// `sup_k M_k / m_k`.
    pub k_rn: f64,
    /// `K_subset²`.
    pub h: f64,
    pub subsets_checked: u64,
    /// True when the subset family was sampled instead of enumerated.
    pub sampled: bool,
    /// True when the sup over levels was exact rather than window-sampled.
    pub exact_levels: bool,
}

/// `K_subset = sup_{k, F ⊆ W} max(L, 1/L)` with
/// `L = [N(C_φ^k χ_F)/N(χ_F)] / [N(C_φ^k χ_W)/N(χ_W)]`.
pub fn distortion(phi: &YoungFunction, sys: &DissipativeSystem, window: i64, max_subsets: u64) -> DistortionReport {
    let m = sys.atom_count();
    let (k_lo, k_hi, exact) = if phi.homogeneity().is_some() {
        (-sys.core_radius(), sys.core_radius(), true)
    } else {
        (-window, window, false)
    };
    let full: u64 = if m >= 64 { u64::MAX } else { (1u64 << m) - 1 };
    let budget = max_subsets.clamp(1, SUBSET_ENUMERATION_CAP);
    let sampled = full > budget;
    let masks: Vec<u64> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(SUBSET_SEED);
        let mut v: Vec<u64> = (0..budget - 1).map(|_| rng.gen_range(1..=full)).collect();
        v.push(full);
        v
    } else {
        (1..=full).collect()
    };
    let w_ratio: Vec<f64> =
        (k_lo..=k_hi).map(|k| norms::level_norm(phi, sys, -k) / norms::level_norm(phi, sys, 0)).collect();
    let mut k_subset = 1.0f64;
    for &mask in &masks {
        let base = norms::mass_indicator_norm(phi, sys.subset_mass(0, mask));
        for (j, k) in (k_lo..=k_hi).enumerate() {
            let f_ratio = norms::mass_indicator_norm(phi, sys.subset_mass(-k, mask)) / base;
            let l = f_ratio / w_ratio[j];
            k_subset = k_subset.max(l).max(1.0 / l);
        }
    }
    DistortionReport {
        k_subset,
        k_rn: sys.rn_spread(),
        h: k_subset * k_subset,
        subsets_checked: masks.len() as u64,
        sampled,
        exact_levels: exact,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RnClass {
    #[serde(rename = "RNC")]
    Rnc,
    #[serde(rename = "RND")]
    Rnd,
    #[serde(rename = "RNGH")]
    Rngh,
    #[serde(rename = "NONE")]
    None,
}

impl RnClass {
    /// The ν-class this RN class corresponds to.
    pub fn matches(self, class: HyperbolicClass) -> bool {
        matches!(
            (self, class),
            (RnClass::Rnc, HyperbolicClass::Hc)
                | (RnClass::Rnd, HyperbolicClass::Hd)
                | (RnClass::Rngh, HyperbolicClass::Gh)
                | (RnClass::None, HyperbolicClass::None)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnReport {
    pub class: RnClass,
    /// `sup_k M_k/m_k`
    pub spread: f64,
    pub rnc: RateFit,
    pub rnd: RateFit,
    pub rngh_minus: RateFit,
    pub rngh_plus: RateFit,
}

/// Radon–Nikodym forms of the rate conditions on `M_k = max_i g_k[i]`,
/// `m_k = min_i g_k[i]`:
/// RNC `sup_k M_k/m_{k+n}`, RND `inf_k M_k/m_{k+n}`, RNGH
/// `sup_{k<=0} M_{k-n}/m_k` together with `inf_{k>=0} M_k/m_{k+n}`.
pub fn rn_conditions(sys: &DissipativeSystem, n_max: usize, tol: f64) -> Result<RnReport, ClassifyError> {
    check_n_max(n_max)?;
    let spread = sys.rn_spread();
    if !spread.is_finite() {
        return Err(ClassifyError::UnboundedDistortion(spread));
    }
    let r0 = sys.core_radius();
    let big = |k: i64| sys.rn_profile(k).max;
    let small = |k: i64| sys.rn_profile(k).min;
    let table = |range: &dyn Fn(i64) -> (i64, i64), ratio: &dyn Fn(i64, i64) -> f64, inf: bool| -> Vec<f64> {
        (1..=n_max as i64)
            .map(|n| {
                let (from, to) = range(n);
                let it = (from..=to).map(|k| ratio(k, n));
                if inf {
                    it.fold(f64::INFINITY, f64::min)
                } else {
                    it.fold(0.0, f64::max)
                }
            })
            .collect()
    };
    let forward = |k: i64, n: i64| big(k) / small(k + n);
    let rnc = fit_rate(&table(&|n| (-r0 - n, r0), &forward, false));
    let rnd = fit_rate(&table(&|n| (-r0 - n, r0), &forward, true));
    let rngh_plus = fit_rate(&table(&|n| ((-r0).min(0), (r0 + n).min(0)), &|k, n| big(k - n) / small(k), false));
    let rngh_minus = fit_rate(&table(&|n| ((-r0 - n).max(0), r0.max(0)), &forward, true));
    let class = if rnc.t < 1.0 - tol {
        RnClass::Rnc
    } else if rnd.t > 1.0 + tol {
        RnClass::Rnd
    } else if rngh_plus.t < 1.0 - tol && rngh_minus.t > 1.0 + tol {
        RnClass::Rngh
    } else {
        RnClass::None
    };
    Ok(RnReport { class, spread, rnc, rnd, rngh_minus, rngh_plus })
}

/// Spectral-radius brackets read off the level tables and the certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    /// `min_n (sup_k ν_{k-n}/ν_k)^{1/n}`, witnessed by level indicators.
    pub r_lower: f64,
    /// `r(C_φ) <= t` from an HC certificate.
    pub r_upper: Option<f64>,
    /// `min_n (sup_k ν_{k+n}/ν_k)^{1/n}`.
    pub r_inv_lower: f64,
    /// `r(C_φ^{-1}) <= 1/t` from an HD certificate.
    pub r_inv_upper: Option<f64>,
    /// `r(C_φ|L₊) <= t₊` from a GH certificate.
    pub r_plus_upper: Option<f64>,
    /// `r(C_φ^{-1}|L₋) <= t₋` from a GH certificate.
    pub r_inv_minus_upper: Option<f64>,
}

/// The indicator growth `b_n = sup_k ν_{k-n}/ν_k` is submultiplicative, so
/// its root converges to its infimum; the smallest tabulated root is the
/// tightest finite-table reading of that limit.
pub fn spectral_bounds(tables: &RateTables, cert: &HyperbolicityCertificate) -> SpectralBounds {
    let root_min = |vals: &mut dyn Iterator<Item = (usize, f64)>| {
        vals.map(|(j, b)| b.powf(1.0 / (j as f64 + 1.0))).fold(f64::INFINITY, f64::min)
    };
    let r_lower = root_min(&mut tables.hc.values.iter().copied().enumerate());
    let r_inv_lower = root_min(&mut tables.hd.values.iter().map(|a| 1.0 / a).enumerate());
    let (mut r_upper, mut r_inv_upper, mut r_plus_upper, mut r_inv_minus_upper) = (None, None, None, None);
    match cert.class {
        HyperbolicClass::Hc => r_upper = cert.t,
        HyperbolicClass::Hd => r_inv_upper = cert.t.map(|t| 1.0 / t),
        HyperbolicClass::Gh => {
            if let Some(gh) = cert.gh {
                r_plus_upper = Some(gh.t_plus);
                r_inv_minus_upper = Some(gh.t_minus);
            }
        }
        HyperbolicClass::None => {}
    }
    SpectralBounds { r_lower, r_upper, r_inv_lower, r_inv_upper, r_plus_upper, r_inv_minus_upper }
}

/// Analysis knobs shared by the CLI and the FFI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisParams {
    pub n_max: usize,
    pub window: u32,
    pub tol: f64,
    pub subset_cap: u64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams { n_max: 32, window: 64, tol: DEFAULT_TOL, subset_cap: SUBSET_ENUMERATION_CAP }
    }
}

/// Everything `classify` reports for one system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub distortion: DistortionReport,
    pub certificate: HyperbolicityCertificate,
    pub rn: RnReport,
    pub spectral: SpectralBounds,
}

pub fn classify(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    params: &AnalysisParams,
) -> Result<Classification, ClassifyError> {
    if params.tol.is_nan() || params.tol <= 0.0 {
        return Err(ClassifyError::InvalidParameter(format!("tol must be positive, got {}", params.tol)));
    }
    let window = params.window as i64;
    let distortion = distortion(phi, sys, window, params.subset_cap);
    let tables = level_rate_tables(phi, sys, params.n_max, window)?;
    let certificate = certify(&tables, params.tol).with_distortion(distortion.h);
    let rn = rn_conditions(sys, params.n_max, params.tol)?;
    let spectral = spectral_bounds(&tables, &certificate);
    Ok(Classification { distortion, certificate, rn, spectral })
}
