//! Pseudo-orbits of `C_φ`, exact shadowing orbits built from a hyperbolicity
//! certificate, and the drifting pseudo-orbit that no true orbit follows
//! when the system is not hyperbolic.
//!
//! The construction is written once against [`OrbitSpace`] and runs both on
//! `L^Φ` of the atomic system and on `ℓ^Φ(ℤ)` with a weighted shift.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, HyperbolicClass, HyperbolicityCertificate, NormProfile, RateTables};
use crate::norms::{self, Cell, SimpleFunction};
use crate::operator::{self, SequenceVector, WeightedShift};
use crate::optim;
use crate::space::DissipativeSystem;
use crate::young::YoungFunction;

/// Random errors live on levels `[-ERROR_RADIUS, ERROR_RADIUS]`.
pub const ERROR_RADIUS: i64 = 2;

/// Absolute tolerance on `N(y_{n+1} - C y_n)`.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShadowError {
    #[error("certificate class is NONE; no shadowing bound is available")]
    NotHyperbolic,
    #[error("GH correction left its invariant half at step {step}")]
    SplitLeak { step: usize },
    #[error("orbit needs {needed} levels on each side but the window is {window}")]
    WindowOverflow { needed: i64, window: i64 },
    #[error("error {step} has norm {norm}, above delta = {delta}")]
    DeltaExceeded { step: usize, norm: f64, delta: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A normed space with an invertible operator `T` and the splitting
/// `v = v₊ + v₋` (levels `< 0` and `>= 0`), `T v₊ ∈ L₊`, `T^{-1} v₋ ∈ L₋`.
pub trait OrbitSpace {
    type Vector: Clone;

    fn zero(&self) -> Self::Vector;
    /// `Tⁿ v` for any integer `n`.
    fn power(&self, v: &Self::Vector, n: i64) -> Self::Vector;
    fn norm(&self, v: &Self::Vector) -> f64;
    fn add(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector;
    fn sub(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector;
    fn scale(&self, v: &Self::Vector, a: f64) -> Self::Vector;
    fn split(&self, v: &Self::Vector) -> (Self::Vector, Self::Vector);
    /// Support range on `ℤ` (levels or indices), `None` for zero.
    fn support(&self, v: &Self::Vector) -> Option<(i64, i64)>;
}

/// `L^Φ(X, μ)` of an atomic dissipative system with `T = C_φ`.
#[derive(Debug, Clone, Copy)]
pub struct FunctionSpace<'a> {
    pub phi: &'a YoungFunction,
    pub sys: &'a DissipativeSystem,
}

impl OrbitSpace for FunctionSpace<'_> {
    type Vector = SimpleFunction;

    fn zero(&self) -> SimpleFunction {
        SimpleFunction::zero()
    }
    fn power(&self, v: &SimpleFunction, n: i64) -> SimpleFunction {
        operator::apply(v, n)
    }
    fn norm(&self, v: &SimpleFunction) -> f64 {
        norms::luxemburg(self.phi, self.sys, v)
    }
    fn add(&self, a: &SimpleFunction, b: &SimpleFunction) -> SimpleFunction {
        a + b
    }
    fn sub(&self, a: &SimpleFunction, b: &SimpleFunction) -> SimpleFunction {
        a - b
    }
    fn scale(&self, v: &SimpleFunction, a: f64) -> SimpleFunction {
        v * a
    }
    fn split(&self, v: &SimpleFunction) -> (SimpleFunction, SimpleFunction) {
        operator::split(v)
    }
    fn support(&self, v: &SimpleFunction) -> Option<(i64, i64)> {
        v.level_range()
    }
}

/// `ℓ^Φ(ℤ)` with `T = B_w`.
#[derive(Debug, Clone, Copy)]
pub struct SequenceSpace<'a> {
    pub phi: &'a YoungFunction,
    pub w: &'a WeightedShift,
}

impl OrbitSpace for SequenceSpace<'_> {
    type Vector = SequenceVector;

    fn zero(&self) -> SequenceVector {
        SequenceVector::zero()
    }
    fn power(&self, v: &SequenceVector, n: i64) -> SequenceVector {
        self.w.apply_n(v, n)
    }
    fn norm(&self, v: &SequenceVector) -> f64 {
        operator::shift_norm(self.phi, v)
    }
    fn add(&self, a: &SequenceVector, b: &SequenceVector) -> SequenceVector {
        a + b
    }
    fn sub(&self, a: &SequenceVector, b: &SequenceVector) -> SequenceVector {
        a - b
    }
    fn scale(&self, v: &SequenceVector, a: f64) -> SequenceVector {
        v * a
    }
    fn split(&self, v: &SequenceVector) -> (SequenceVector, SequenceVector) {
        (v.restrict(|k| k < 0), v.restrict(|k| k >= 0))
    }
    fn support(&self, v: &SequenceVector) -> Option<(i64, i64)> {
        v.level_range()
    }
}

/// States `f_0 .. f_N` with cached errors `e_n = f_{n+1} - T f_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOrbit<V> {
    pub states: Vec<V>,
    pub errors: Vec<V>,
    pub error_norms: Vec<f64>,
    pub delta: f64,
}

impl<V: Clone> PseudoOrbit<V> {
    /// Build from states and check `N(e_n) <= delta` (relative slack 1e-9).
    pub fn new<S: OrbitSpace<Vector = V>>(space: &S, states: Vec<V>, delta: f64) -> Result<Self, ShadowError> {
        if delta.is_nan() || delta < 0.0 || states.is_empty() {
            return Err(ShadowError::InvalidParameter("need delta >= 0 and at least one state".into()));
        }
        let errors: Vec<V> = states.windows(2).map(|w| space.sub(&w[1], &space.power(&w[0], 1))).collect();
        let error_norms: Vec<f64> = errors.iter().map(|e| space.norm(e)).collect();
        for (step, &norm) in error_norms.iter().enumerate() {
            if norm > delta * (1.0 + 1e-9) {
                return Err(ShadowError::DeltaExceeded { step, norm, delta });
            }
        }
        Ok(PseudoOrbit { states, errors, error_norms, delta })
    }

    /// Build from states with `delta` set to the largest error norm.
    pub fn from_states<S: OrbitSpace<Vector = V>>(space: &S, states: Vec<V>) -> Result<Self, ShadowError> {
        let mut po = Self::new(space, states, f64::INFINITY)?;
        po.delta = po.error_norms.iter().copied().fold(0.0, f64::max);
        Ok(po)
    }

    /// `f_{n+1} = T f_n + e_n` from `f_0` and explicit errors.
    pub fn from_errors<S: OrbitSpace<Vector = V>>(
        space: &S,
        f0: V,
        errors: Vec<V>,
        delta: f64,
    ) -> Result<Self, ShadowError> {
        let mut states = Vec::with_capacity(errors.len() + 1);
        states.push(f0);
        for e in &errors {
            let next = space.add(&space.power(states.last().unwrap(), 1), e);
            states.push(next);
        }
        Self::new(space, states, delta)
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }
}

fn random_error(rng: &mut ChaCha8Rng, atoms: usize) -> SimpleFunction {
    loop {
        let cells = rng.gen_range(1..=4);
        let mut e = SimpleFunction::zero();
        for _ in 0..cells {
            let level = rng.gen_range(-ERROR_RADIUS..=ERROR_RADIUS);
            let atom = rng.gen_range(0..atoms);
            e.add_at(Cell::new(level, atom), rng.gen_range(-1.0..=1.0));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// Seeded δ-pseudo-orbit: errors are random simple functions on at most
/// four cells near level 0, rescaled to `N_Φ(e_n) = δ·u_n`, `u_n ~ U[0.5, 1]`.
pub fn make_pseudo_orbit(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    f0: &SimpleFunction,
    n: usize,
    delta: f64,
    seed: u64,
) -> Result<PseudoOrbit<SimpleFunction>, ShadowError> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(ShadowError::InvalidParameter(format!("delta must be finite and >= 0, got {delta}")));
    }
    let needed = f0.radius().max(ERROR_RADIUS) + n as i64 + 1;
    if needed > sys.window() {
        return Err(ShadowError::WindowOverflow { needed, window: sys.window() });
    }
    let space = FunctionSpace { phi, sys };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let errors = (0..n)
        .map(|_| {
            let e = random_error(&mut rng, sys.atom_count());
            let u: f64 = rng.gen_range(0.5..=1.0);
            if delta == 0.0 {
                SimpleFunction::zero()
            } else {
                &e * (delta * u / space.norm(&e))
            }
        })
        .collect();
    PseudoOrbit::from_errors(&space, f0.clone(), errors, delta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowResult<V> {
    pub orbit: Vec<V>,
    /// `N(c_n) = N(y_n - f_n)` for `n = 0..=N`.
    pub correction_norms: Vec<f64>,
    /// `N(y_{n+1} - T y_n)` for `n = 0..N`.
    pub residuals: Vec<f64>,
    pub epsilon_achieved: f64,
    pub orbit_residual: f64,
    pub epsilon_bound: f64,
}

impl<V> ShadowResult<V> {
    pub fn within_bound(&self) -> bool {
        self.epsilon_achieved <= self.epsilon_bound + 1e-9 && self.orbit_residual <= RESIDUAL_TOL
    }
}

/// `H·K_eff·δ·(1+τ)/(1−τ)` where `(K_eff, τ)` is `(K, t)` for HC/GH and
/// `(1/K, 1/t)` for HD.
pub fn shadow_bound(cert: &HyperbolicityCertificate, delta: f64) -> Result<f64, ShadowError> {
    let (k, tau) = cert.decay().ok_or(ShadowError::NotHyperbolic)?;
    Ok(cert.distortion_h * k * delta * (1.0 + tau) / (1.0 - tau))
}

/// Corrections `c_n` turning `f_n` into the true orbit `y_n = f_n + c_n`.
fn corrections<S: OrbitSpace>(
    space: &S,
    class: HyperbolicClass,
    errors: &[S::Vector],
) -> Result<Vec<S::Vector>, ShadowError> {
    let n = errors.len();
    // stable part: c_0 = 0, c_{j+1} = T c_j - e_j
    let forward = |es: &[S::Vector], check: bool| -> Result<Vec<S::Vector>, ShadowError> {
        let mut c = vec![space.zero()];
        for (j, e) in es.iter().enumerate() {
            let next = space.sub(&space.power(&c[j], 1), e);
            if check && space.support(&next).is_some_and(|(_, hi)| hi >= 0) {
                return Err(ShadowError::SplitLeak { step: j + 1 });
            }
            c.push(next);
        }
        Ok(c)
    };
    // unstable part: c_N = 0, c_j = T^{-1}(c_{j+1} + e_j)
    let backward = |es: &[S::Vector], check: bool| -> Result<Vec<S::Vector>, ShadowError> {
        let mut c = vec![space.zero(); n + 1];
        for j in (0..n).rev() {
            c[j] = space.power(&space.add(&c[j + 1], &es[j]), -1);
            if check && space.support(&c[j]).is_some_and(|(lo, _)| lo < 0) {
                return Err(ShadowError::SplitLeak { step: j });
            }
        }
        Ok(c)
    };
    match class {
        HyperbolicClass::Hc => forward(errors, false),
        HyperbolicClass::Hd => backward(errors, false),
        HyperbolicClass::Gh => {
            let (plus, minus): (Vec<_>, Vec<_>) = errors.iter().map(|e| space.split(e)).unzip();
            let c_plus = forward(&plus, true)?;
            let c_minus = backward(&minus, true)?;
            Ok(c_plus.iter().zip(&c_minus).map(|(a, b)| space.add(a, b)).collect())
        }
        HyperbolicClass::None => Err(ShadowError::NotHyperbolic),
    }
}

/// Shadow a pseudo-orbit in any [`OrbitSpace`] using the class of `cert`.
pub fn shadow_in<S: OrbitSpace>(
    space: &S,
    cert: &HyperbolicityCertificate,
    po: &PseudoOrbit<S::Vector>,
) -> Result<ShadowResult<S::Vector>, ShadowError> {
    let epsilon_bound = shadow_bound(cert, po.delta)?;
    let c = corrections(space, cert.class, &po.errors)?;
    let orbit: Vec<S::Vector> = po.states.iter().zip(&c).map(|(f, c)| space.add(f, c)).collect();
    let correction_norms: Vec<f64> = c.iter().map(|c| space.norm(c)).collect();
    let residuals: Vec<f64> = orbit.windows(2).map(|y| space.norm(&space.sub(&y[1], &space.power(&y[0], 1)))).collect();
    Ok(ShadowResult {
        epsilon_achieved: correction_norms.iter().copied().fold(0.0, f64::max),
        orbit_residual: residuals.iter().copied().fold(0.0, f64::max),
        orbit,
        correction_norms,
        residuals,
        epsilon_bound,
    })
}

pub fn shadow(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    cert: &HyperbolicityCertificate,
    po: &PseudoOrbit<SimpleFunction>,
) -> Result<ShadowResult<SimpleFunction>, ShadowError> {
    shadow_in(&FunctionSpace { phi, sys }, cert, po)
}

pub fn shadow_on_shift(
    phi: &YoungFunction,
    w: &WeightedShift,
    cert: &HyperbolicityCertificate,
    po: &PseudoOrbit<SequenceVector>,
) -> Result<ShadowResult<SequenceVector>, ShadowError> {
    shadow_in(&SequenceSpace { phi, w }, cert, po)
}

/// Certificate of `B_w` read off the profile `s_k = N(B_w^{-k} e_0)`, with `H = 1`.
pub fn certify_shift(w: &WeightedShift, n_max: usize, tol: f64) -> HyperbolicityCertificate {
    classify::certify(&RateTables::of_profile(&NormProfile::of_shift(w, n_max), n_max), tol)
}

/// Largest `|Π y_n - z_n|` between the projected `L^Φ` shadow and the shadow
/// of the projected pseudo-orbit under `B_w`.
pub fn factor_deviation(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    w: &WeightedShift,
    cert: &HyperbolicityCertificate,
    po: &PseudoOrbit<SimpleFunction>,
) -> Result<f64, ShadowError> {
    let on_functions = shadow(phi, sys, cert, po)?;
    let seq = SequenceSpace { phi, w };
    let projected = PseudoOrbit::from_states(&seq, po.states.iter().map(|f| operator::project(phi, sys, f)).collect())?;
    let on_sequences = shadow_in(&seq, cert, &projected)?;
    Ok(on_functions
        .orbit
        .iter()
        .zip(&on_sequences.orbit)
        .map(|(y, z)| operator::project(phi, sys, y).max_abs_diff(z))
        .fold(0.0, f64::max))
}

/// Outcome of the drifting pseudo-orbit test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub length: usize,
    pub delta: f64,
    /// Best `max_n N(y_n - f_n)` over `y_n = s·C_φⁿ(χ_W/ν_0)`.
    pub best_distance: f64,
    pub best_scale: f64,
    /// `N·δ/4`
    pub threshold: f64,
    /// `best_distance > threshold`
    pub unshadowable: bool,
}

/// `f_0 = χ_W/ν_0`, `e_n = δ·χ_{φ^{-(n+1)}(W)}/ν_{-(n+1)}`: each error
/// pushes the orbit further in the direction it already travels. Minimizes
/// the distance to the family of true orbits through multiples of `f_0`.
pub fn drifting_counterexample(
    phi: &YoungFunction,
    sys: &DissipativeSystem,
    n: usize,
    delta: f64,
) -> Result<DriftReport, ShadowError> {
    if delta.is_nan() || delta <= 0.0 || n == 0 {
        return Err(ShadowError::InvalidParameter("need delta > 0 and N >= 1".into()));
    }
    let space = FunctionSpace { phi, sys };
    let level = |k: i64| SimpleFunction::level_indicator(sys, k);
    let f0 = &level(0) * (1.0 / norms::level_norm(phi, sys, 0));
    let errors: Vec<SimpleFunction> =
        (0..n as i64).map(|j| &level(-(j + 1)) * (delta / norms::level_norm(phi, sys, -(j + 1)))).collect();
    let po = PseudoOrbit::from_errors(&space, f0.clone(), errors, delta)?;
    let distance = |s: f64| {
        po.states
            .iter()
            .enumerate()
            .map(|(j, f)| space.norm(&space.sub(&space.power(&(&f0 * s), j as i64), f)))
            .fold(0.0, f64::max)
    };
    let hi = 2.0 + 2.0 * n as f64 * delta;
    let (best_scale, best_distance) = optim::golden_section_min(-hi, hi, 1e-12, distance);
    let threshold = n as f64 * delta / 4.0;
    Ok(DriftReport { length: n, delta, best_distance, best_scale, threshold, unshadowable: best_distance > threshold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{certify, level_rate_tables, DEFAULT_TOL};

    fn p2() -> YoungFunction {
        YoungFunction::power(2.0).unwrap()
    }

    fn cert_of(sys: &DissipativeSystem) -> HyperbolicityCertificate {
        certify(&level_rate_tables(&p2(), sys, 24, 32).unwrap(), DEFAULT_TOL)
    }

    fn unit_w(phi: &YoungFunction, sys: &DissipativeSystem) -> SimpleFunction {
        &SimpleFunction::level_indicator(sys, 0) * (1.0 / norms::level_norm(phi, sys, 0))
    }

    #[test]
    fn bound_arithmetic() {
        let sys = DissipativeSystem::geometric(vec![1.0], 2.0, 16).unwrap();
        let mut cert = cert_of(&sys);
        cert.k = Some(1.0);
        cert.t = Some(0.5);
        assert!((shadow_bound(&cert, 0.1).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(shadow_bound(&cert, 0.2).unwrap(), 2.0 * shadow_bound(&cert, 0.1).unwrap());
        cert.t = Some(0.0);
        assert_eq!(shadow_bound(&cert, 0.1).unwrap(), 0.1);
        cert.t = Some(0.6);
        assert!(shadow_bound(&cert, 0.1).unwrap() > 0.3);
        cert.class = HyperbolicClass::None;
        assert_eq!(shadow_bound(&cert, 0.1), Err(ShadowError::NotHyperbolic));
    }

    #[test]
    fn single_error_hc_oracle() {
        let phi = p2();
        let sys = DissipativeSystem::geometric(vec![1.0], 2.0, 16).unwrap();
        let space = FunctionSpace { phi: &phi, sys: &sys };
        let delta = 1e-3;
        let e0 = &SimpleFunction::level_indicator(&sys, -1) * (delta / norms::level_norm(&phi, &sys, -1));
        let zero = SimpleFunction::zero();
        let po = PseudoOrbit::from_errors(&space, unit_w(&phi, &sys), vec![e0, zero.clone(), zero], delta).unwrap();
        let r = shadow(&phi, &sys, &cert_of(&sys), &po).unwrap();
        // hand values: 0, δ, δ·2^{-1/2}, δ/2
        let expect = [0.0, delta, delta * 0.5f64.sqrt(), delta / 2.0];
        for (a, b) in r.correction_norms.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
        assert!((r.epsilon_achieved - delta).abs() < 1e-15);
        assert!(r.orbit_residual < 1e-15);
    }

    #[test]
    fn zero_delta_gives_true_orbit() {
        let phi = p2();
        let sys = DissipativeSystem::two_sided(vec![1.0], 2.0, 0.5, 64).unwrap();
        let po = make_pseudo_orbit(&phi, &sys, &unit_w(&phi, &sys), 20, 0.0, 7).unwrap();
        let r = shadow(&phi, &sys, &cert_of(&sys), &po).unwrap();
        assert_eq!(r.epsilon_achieved, 0.0);
        assert_eq!(r.epsilon_bound, 0.0);
    }

    #[test]
    fn pseudo_orbit_contract() {
        let phi = p2();
        let sys = DissipativeSystem::geometric(vec![1.0, 0.5], 2.0, 64).unwrap();
        let f0 = unit_w(&phi, &sys);
        let a = make_pseudo_orbit(&phi, &sys, &f0, 30, 1e-2, 11).unwrap();
        let b = make_pseudo_orbit(&phi, &sys, &f0, 30, 1e-2, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.error_norms.iter().all(|&e| (0.5e-2 * (1.0 - 1e-9)..=1e-2 * (1.0 + 1e-9)).contains(&e)));
        let one = PseudoOrbit::from_errors(&FunctionSpace { phi: &phi, sys: &sys }, f0.clone(), vec![&f0 * 1e-2], 1e-2)
            .unwrap();
        assert!((one.error_norms[0] - 1e-2).abs() < 1e-15);
        assert!(matches!(make_pseudo_orbit(&phi, &sys, &f0, 64, 1e-2, 1), Err(ShadowError::WindowOverflow { .. })));
    }

    #[test]
    fn shadows_all_three_classes() {
        let phi = p2();
        for sys in [
            DissipativeSystem::geometric(vec![1.0], 2.0, 64).unwrap(),
            DissipativeSystem::geometric(vec![1.0], 0.5, 64).unwrap(),
            DissipativeSystem::two_sided(vec![1.0, 2.0], 2.0, 0.5, 64).unwrap(),
        ] {
            let cert = cert_of(&sys);
            assert!(cert.class.is_hyperbolic());
            for seed in 0..5 {
                let po = make_pseudo_orbit(&phi, &sys, &unit_w(&phi, &sys), 50, 1e-3, seed).unwrap();
                let r = shadow(&phi, &sys, &cert, &po).unwrap();
                assert!(r.within_bound(), "{:?}: {} > {}", cert.class, r.epsilon_achieved, r.epsilon_bound);
            }
        }
    }

    #[test]
    fn constant_shift_oracle() {
        let phi = p2();
        let w = WeightedShift::constant(0.5);
        let cert = certify_shift(&w, 16, DEFAULT_TOL);
        assert_eq!(cert.class, HyperbolicClass::Hc);
        assert!((cert.t.unwrap() - 0.5).abs() < 1e-12);
        let space = SequenceSpace { phi: &phi, w: &w };
        let delta = 1e-3;
        let errors = vec![&SequenceVector::unit(3) * delta, SequenceVector::zero(), SequenceVector::zero()];
        let po = PseudoOrbit::from_errors(&space, SequenceVector::unit(0), errors, delta).unwrap();
        let r = shadow_on_shift(&phi, &w, &cert, &po).unwrap();
        assert!((r.epsilon_achieved - delta).abs() < 1e-15);
        assert!((r.correction_norms[3] - delta * 0.25).abs() < 1e-15);

        let iso = WeightedShift::constant(1.0);
        let cert = certify_shift(&iso, 16, DEFAULT_TOL);
        let space = SequenceSpace { phi: &phi, w: &iso };
        let po =
            PseudoOrbit::from_errors(&space, SequenceVector::unit(0), vec![&SequenceVector::unit(0) * delta], delta)
                .unwrap();
        assert_eq!(shadow_on_shift(&phi, &iso, &cert, &po), Err(ShadowError::NotHyperbolic));
    }

    #[test]
    fn factor_cross_check() {
        let phi = p2();
        let sys = DissipativeSystem::two_sided(vec![1.0, 3.0], 2.0, 0.5, 64).unwrap();
        let w = operator::factor_weights(&phi, &sys).unwrap();
        let cert = cert_of(&sys);
        assert_eq!(certify_shift(&w, 24, DEFAULT_TOL).class, cert.class);
        for seed in 0..5 {
            let po = make_pseudo_orbit(&phi, &sys, &unit_w(&phi, &sys), 30, 1e-3, seed).unwrap();
            assert!(factor_deviation(&phi, &sys, &w, &cert, &po).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn drift_grows_linearly() {
        let phi = p2();
        let sys = DissipativeSystem::geometric(vec![1.0], 1.0, 8).unwrap();
        assert_eq!(cert_of(&sys).class, HyperbolicClass::None);
        let r = drifting_counterexample(&phi, &sys, 200, 1e-3).unwrap();
        assert!((r.best_distance - 0.1).abs() < 1e-8, "{}", r.best_distance);
        assert!(r.unshadowable);
        let r = drifting_counterexample(&phi, &sys, 100, 1e-3).unwrap();
        assert!((r.best_distance - 0.05).abs() < 1e-8);
    }
}
