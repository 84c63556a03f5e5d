//! The composition operator `C_φ`, the `L₊ ⊕ L₋` splitting, and the factor
//! map onto a weighted backward shift on `ℓ^Φ(ℤ)`.
//!
//! Level convention: `φ` maps level `k` to `k + 1`, so `C_φ f = f∘φ` reads
//! `f` one level up and the support of `C_φ f` sits one level lower.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::norms::{self, level_norm, SimpleFunction};
use crate::space::DissipativeSystem;
use crate::young::YoungFunction;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("shift weights are not bounded away from 0 and infinity (inf {inf}, sup {sup})")]
    WeightUnbounded { inf: f64, sup: f64 },
}

/// `C_φ^n f`; negative `n` applies `C_φ^{-1} = C_{φ^{-1}}`.
pub fn apply(f: &SimpleFunction, n: i64) -> SimpleFunction {
    f.relabel_levels(-n)
}

/// `(f₊, f₋)`: `f₊` lives on levels `< 0`, `f₋` on levels `>= 0`.
pub fn split(f: &SimpleFunction) -> (SimpleFunction, SimpleFunction) {
    (f.restrict(|k| k < 0), f.restrict(|k| k >= 0))
}

/// Finitely supported sequence on `ℤ`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SequenceVector {
    coeffs: BTreeMap<i64, f64>,
}

impl SequenceVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(k: i64) -> Self {
        Self::from_pairs([(k, 1.0)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Self {
        let mut x = Self::zero();
        for (k, v) in pairs {
            x.add_at(k, v);
        }
        x
    }

    pub fn get(&self, k: i64) -> f64 {
        self.coeffs.get(&k).copied().unwrap_or(0.0)
    }

    pub fn add_at(&mut self, k: i64, v: f64) {
        let s = self.get(k) + v;
        if s == 0.0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, s);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn level_range(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    pub fn restrict<F: Fn(i64) -> bool>(&self, keep: F) -> Self {
        SequenceVector { coeffs: self.coeffs.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, *v)).collect() }
    }

    pub fn max_abs_diff(&self, other: &SequenceVector) -> f64 {
        (self - other).iter().fold(0.0, |m, (_, v)| m.max(v.abs()))
    }
}

impl Add for &SequenceVector {
    type Output = SequenceVector;
    fn add(self, rhs: &SequenceVector) -> SequenceVector {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_at(k, v);
        }
        out
    }
}

impl Sub for &SequenceVector {
    type Output = SequenceVector;
    fn sub(self, rhs: &SequenceVector) -> SequenceVector {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_at(k, -v);
        }
        out
    }
}

impl Neg for &SequenceVector {
    type Output = SequenceVector;
    fn neg(self) -> SequenceVector {
        self * -1.0
    }
}

impl Mul<f64> for &SequenceVector {
    type Output = SequenceVector;
    fn mul(self, a: f64) -> SequenceVector {
        SequenceVector::from_pairs(self.iter().map(|(k, v)| (k, v * a)))
    }
}

/// Luxemburg norm of a sequence under counting measure.
pub fn shift_norm(phi: &YoungFunction, x: &SequenceVector) -> f64 {
    let terms: Vec<(f64, f64)> = x.iter().map(|(_, v)| (v.abs(), 1.0)).collect();
    norms::luxemburg_weighted(phi, &terms)
}

/// Weighted backward shift `(B_w x)_k = w_{k+1} x_{k+1}`.
///
/// Weights are tabulated on `[lo, lo + core.len())` and constant outside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedShift {
    lo: i64,
    core: Vec<f64>,
    below: f64,
    above: f64,
    /// Whether the constant tails are exact rather than extrapolated.
    exact_tails: bool,
}

impl WeightedShift {
    pub fn constant(w: f64) -> Self {
        WeightedShift { lo: 0, core: vec![w], below: w, above: w, exact_tails: true }
    }

    /// Weights `w(k)` for `k` in `[lo, hi]`, constant `w(lo)` below and `w(hi)` above.
    pub fn from_fn<F: Fn(i64) -> f64>(lo: i64, hi: i64, exact_tails: bool, w: F) -> Result<Self, OperatorError> {
        let core: Vec<f64> = (lo..=hi).map(w).collect();
        let s = WeightedShift { lo, below: core[0], above: core[core.len() - 1], core, exact_tails };
        let (inf, sup) = s.bounds();
        if !(inf > 0.0 && sup.is_finite()) {
            return Err(OperatorError::WeightUnbounded { inf, sup });
        }
        Ok(s)
    }

    pub fn weight(&self, k: i64) -> f64 {
        if k < self.lo {
            self.below
        } else if k >= self.lo + self.core.len() as i64 {
            self.above
        } else {
            self.core[(k - self.lo) as usize]
        }
    }

    /// `(inf_k w_k, sup_k w_k)` over all of `ℤ`.
    pub fn bounds(&self) -> (f64, f64) {
        self.core.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &w| (a.min(w), b.max(w)))
    }

    pub fn exact_tails(&self) -> bool {
        self.exact_tails
    }

    /// Range outside of which the weights are constant.
    pub fn core_range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.core.len() as i64 - 1)
    }

    /// `B_w x`
    pub fn apply(&self, x: &SequenceVector) -> SequenceVector {
        SequenceVector::from_pairs(x.iter().map(|(k, v)| (k - 1, self.weight(k) * v)))
    }

    /// `B_w^{-1} x`, i.e. `(B_w^{-1} x)_k = x_{k-1} / w_k`.
    pub fn apply_inverse(&self, x: &SequenceVector) -> SequenceVector {
        SequenceVector::from_pairs(x.iter().map(|(k, v)| (k + 1, v / self.weight(k + 1))))
    }

    /// `B_w^n x` for any integer `n`.
    pub fn apply_n(&self, x: &SequenceVector, n: i64) -> SequenceVector {
        let mut out = x.clone();
        for _ in 0..n.unsigned_abs() {
            out = if n > 0 { self.apply(&out) } else { self.apply_inverse(&out) };
        }
        out
    }
}

/// Shift `B_w` onto which `C_φ` factors: `w_k = ν_{k-1} / ν_k`.
///
/// For power-type `Φ` the weights are constant beyond the mass core, so
/// tails are exact; otherwise the weights are tabulated over the system
/// window and extended by their edge values.
pub fn factor_weights(phi: &YoungFunction, sys: &DissipativeSystem) -> Result<WeightedShift, OperatorError> {
    let w = |k: i64| level_norm(phi, sys, k - 1) / level_norm(phi, sys, k);
    if phi.homogeneity().is_some() {
        let r0 = sys.core_radius();
        WeightedShift::from_fn(-r0, r0 + 1, true, w)
    } else {
        let win = sys.window();
        WeightedShift::from_fn(-win, win + 1, false, w)
    }
}

/// `Π f`: `x_k = (ν_k/ν_0) ∫_W C_φ^k f dμ = (ν_k/ν_0) Σ_i f(k, i) μ_{0,i}`.
pub fn project(phi: &YoungFunction, sys: &DissipativeSystem, f: &SimpleFunction) -> SequenceVector {
    let nu0 = level_norm(phi, sys, 0);
    let mut x = SequenceVector::zero();
    for (c, v) in f.iter() {
        let scale = level_norm(phi, sys, c.level) / nu0;
        x.add_at(c.level, scale * v * sys.base_masses()[c.atom]);
    }
    x
}

/// Bounded selector of `Π`: spreads `x_k / ν_k` uniformly over level `k`,
/// normalized by `ν_0 / μ(W)` so that `Π ∘ selector` is the identity.
pub fn selector(phi: &YoungFunction, sys: &DissipativeSystem, x: &SequenceVector) -> SimpleFunction {
    let norm = level_norm(phi, sys, 0) / sys.base_mass();
    let mut f = SimpleFunction::zero();
    for (k, v) in x.iter() {
        let coeff = v / level_norm(phi, sys, k) * norm;
        for i in 0..sys.atom_count() {
            f.set(norms::Cell::new(k, i), coeff);
        }
    }
    f
}

/// `B_w x` with `w` passed explicitly.
pub fn shift_apply(w: &WeightedShift, x: &SequenceVector) -> SequenceVector {
    w.apply(x)
}

/// Largest observed `N_Φ(selector(x)) / N(x)` over the given sequences.
pub fn selector_constant(phi: &YoungFunction, sys: &DissipativeSystem, xs: &[SequenceVector]) -> f64 {
    xs.iter()
        .filter(|x| !x.is_zero())
        .map(|x| norms::luxemburg(phi, sys, &selector(phi, sys, x)) / shift_norm(phi, x))
        .fold(0.0, f64::max)
}

/// Largest observed `N(Π f) / N_Φ(f)` over the given functions.
pub fn projection_constant(phi: &YoungFunction, sys: &DissipativeSystem, fs: &[SimpleFunction]) -> f64 {
    fs.iter()
        .filter(|f| !f.is_zero())
        .map(|f| shift_norm(phi, &project(phi, sys, f)) / norms::luxemburg(phi, sys, f))
        .fold(0.0, f64::max)
}
