//! Atomic model of a dissipative system `X = ⊔_k φ^k(W)`.
//!
//! `W` is a finite set of atoms; `φ` moves atom `(k, i)` to `(k + 1, i)`.
//! Masses `μ_{k,i}` are stored densely on a core `|k| <= K₀` and continue
//! geometrically outside it: on the positive side each level is `r_plus`
//! times the previous one, on the negative side each level is `r_minus`
//! times the one below it. Every generator is normalized to that form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Field-level validation failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct InvalidConfig {
    pub field: String,
    pub message: String,
}

impl fmt::Display for InvalidConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config at `{}`: {}", self.field, self.message)
    }
}

impl InvalidConfig {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InvalidConfig { field: field.into(), message: message.into() }
    }
}

/// Mass generator, as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    /// `μ_{k,i} = a_i r^k`
    Geometric { r: f64 },
    /// `μ_{k,i} = a_i r_plus^k` for `k >= 0` and `a_i r_minus^k` for `k < 0`.
    TwoSidedGeometric { r_minus: f64, r_plus: f64 },
    /// Explicit per-atom masses on a core, geometric continuation outside.
    /// Levels missing from `core` (inside its radius) are filled by the same
    /// stepping rule as the tails, walking outward from level 0.
    TableWithTails { core: Vec<CoreLevel>, r_minus: f64, r_plus: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreLevel {
    pub level: i64,
    pub masses: Vec<f64>,
}

/// Config-level description of a system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub atoms: usize,
    pub base_masses: Vec<f64>,
    pub generator: Generator,
    /// Levels `|k| <= window` are materialized for window-sampled work.
    pub window: u32,
}

/// Radon–Nikodym bracket of one level: `g_k[i] = μ_{k,i} / μ_{0,i}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RnProfile {
    pub level: i64,
    pub ratios: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

/// Constants witnessing `μ(φ^{-1}(F)) <= c μ(F)` and `μ(φ(F)) <= d μ(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EcWitness {
    pub c_inverse: f64,
    pub c_forward: f64,
    pub cells_checked: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DissipativeSystem {
    spec: SystemSpec,
    core_radius: i64,
    /// `core[k + core_radius][i]` for `|k| <= core_radius`.
    core: Vec<Vec<f64>>,
    r_minus: f64,
    r_plus: f64,
}

fn positive(field: &str, v: f64) -> Result<f64, InvalidConfig> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(InvalidConfig::new(field, format!("must be positive and finite, got {v}")))
    }
}

impl DissipativeSystem {
    pub fn new(spec: SystemSpec) -> Result<Self, InvalidConfig> {
        if spec.atoms == 0 {
            return Err(InvalidConfig::new("system.atoms", "must be at least 1"));
        }
        if spec.base_masses.len() != spec.atoms {
            return Err(InvalidConfig::new(
                "system.base_masses",
                format!("expected {} entries, got {}", spec.atoms, spec.base_masses.len()),
            ));
        }
        for (i, &a) in spec.base_masses.iter().enumerate() {
            positive(&format!("system.base_masses[{i}]"), a)?;
        }
        if spec.window == 0 {
            return Err(InvalidConfig::new("system.window", "must be at least 1"));
        }
        let base = spec.base_masses.clone();
        let (core_radius, core, r_minus, r_plus) = match &spec.generator {
            Generator::Geometric { r } => {
                let r = positive("system.generator.r", *r)?;
                (0, vec![base], r, r)
            }
            Generator::TwoSidedGeometric { r_minus, r_plus } => {
                let rm = positive("system.generator.r_minus", *r_minus)?;
                let rp = positive("system.generator.r_plus", *r_plus)?;
                (0, vec![base], rm, rp)
            }
            Generator::TableWithTails { core, r_minus, r_plus } => {
                let rm = positive("system.generator.r_minus", *r_minus)?;
                let rp = positive("system.generator.r_plus", *r_plus)?;
                let mut given: BTreeMap<i64, &Vec<f64>> = BTreeMap::new();
                for (j, lvl) in core.iter().enumerate() {
                    let field = format!("system.generator.core[{j}]");
                    if lvl.masses.len() != spec.atoms {
                        return Err(InvalidConfig::new(
                            format!("{field}.masses"),
                            format!("expected {} entries, got {}", spec.atoms, lvl.masses.len()),
                        ));
                    }
                    for (i, &m) in lvl.masses.iter().enumerate() {
                        positive(&format!("{field}.masses[{i}]"), m)?;
                    }
                    if lvl.level == 0 && lvl.masses != base {
                        return Err(InvalidConfig::new(
                            format!("{field}.masses"),
                            "level 0 must equal system.base_masses",
                        ));
                    }
                    if given.insert(lvl.level, &lvl.masses).is_some() {
                        return Err(InvalidConfig::new(
                            format!("{field}.level"),
                            format!("level {} listed twice", lvl.level),
                        ));
                    }
                }
                let radius = given.keys().map(|k| k.abs()).max().unwrap_or(0);
                let width = (2 * radius + 1) as usize;
                let mut dense = vec![Vec::new(); width];
                dense[radius as usize] = base;
                for k in 1..=radius {
                    let up = (radius + k) as usize;
                    dense[up] = match given.get(&k) {
                        Some(m) => (*m).clone(),
                        None => dense[up - 1].iter().map(|m| m * rp).collect(),
                    };
                    let down = (radius - k) as usize;
                    dense[down] = match given.get(&-k) {
                        Some(m) => (*m).clone(),
                        None => dense[down + 1].iter().map(|m| m / rm).collect(),
                    };
                }
                (radius, dense, rm, rp)
            }
        };
        let sys = DissipativeSystem { spec, core_radius, core, r_minus, r_plus };
        let w = sys.spec.window as i64;
        for k in -w..=w {
            for i in 0..sys.atom_count() {
                let m = sys.mass(k, i);
                if !(m > 0.0 && m.is_finite()) {
                    return Err(InvalidConfig::new(
                        "system.window",
                        format!("mass at level {k}, atom {i} is {m}; shrink the window or the ratios"),
                    ));
                }
            }
        }
        Ok(sys)
    }

    /// Single-atom-or-more geometric system, mostly for tests and examples.
    pub fn geometric(base_masses: Vec<f64>, r: f64, window: u32) -> Result<Self, InvalidConfig> {
        Self::new(SystemSpec { atoms: base_masses.len(), base_masses, generator: Generator::Geometric { r }, window })
    }

    pub fn two_sided(base_masses: Vec<f64>, r_minus: f64, r_plus: f64, window: u32) -> Result<Self, InvalidConfig> {
        Self::new(SystemSpec {
            atoms: base_masses.len(),
            base_masses,
            generator: Generator::TwoSidedGeometric { r_minus, r_plus },
            window,
        })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn atom_count(&self) -> usize {
        self.spec.atoms
    }

    /// The materialized window `K`.
    pub fn window(&self) -> i64 {
        self.spec.window as i64
    }

    /// `K₀`: outside `|k| <= K₀` masses are exactly geometric.
    pub fn core_radius(&self) -> i64 {
        self.core_radius
    }

    pub fn tail_ratios(&self) -> (f64, f64) {
        (self.r_minus, self.r_plus)
    }

    pub fn base_masses(&self) -> &[f64] {
        &self.spec.base_masses
    }

    /// `μ(W)`
    pub fn base_mass(&self) -> f64 {
        self.spec.base_masses.iter().sum()
    }

    /// `μ_{k,i}`, closed form for every level.
    pub fn mass(&self, k: i64, i: usize) -> f64 {
        let r0 = self.core_radius;
        if k > r0 {
            self.core[(2 * r0) as usize][i] * self.r_plus.powi((k - r0) as i32)
        } else if k < -r0 {
            self.core[0][i] / self.r_minus.powi((-r0 - k) as i32)
        } else {
            self.core[(k + r0) as usize][i]
        }
    }

    /// `μ(φ^k(W))`
    pub fn level_mass(&self, k: i64) -> f64 {
        (0..self.atom_count()).map(|i| self.mass(k, i)).sum()
    }

    /// Mass of the atoms of `subset` (a bitmask over atoms) at level `k`.
    pub fn subset_mass(&self, k: i64, subset: u64) -> f64 {
        (0..self.atom_count()).filter(|i| subset >> i & 1 == 1).map(|i| self.mass(k, i)).sum()
    }

    pub fn rn_profile(&self, k: i64) -> RnProfile {
        let ratios: Vec<f64> = (0..self.atom_count()).map(|i| self.mass(k, i) / self.base_masses()[i]).collect();
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().copied().fold(0.0, f64::max);
        RnProfile { level: k, ratios, min, max }
    }

    /// The Radon–Nikodym derivative `d(μ∘φ^{-k})/dμ` evaluated on atom `i`
    /// of `W`, which in this model is `g_{-k}[i]`.
    pub fn rn_derivative(&self, k: i64, i: usize) -> f64 {
        self.mass(-k, i) / self.base_masses()[i]
    }

    /// `sup_k M_k / m_k`. Beyond the core the per-atom ratios all scale by
    /// the same tail factor, so the core plus one level per side is exact.
    pub fn rn_spread(&self) -> f64 {
        let r = self.core_radius + 1;
        (-r..=r)
            .map(|k| {
                let p = self.rn_profile(k);
                p.max / p.min
            })
            .fold(1.0, f64::max)
    }

    /// Witness of the `(ec)` condition for `φ` and `φ^{-1}` on single atoms.
    /// Per-atom level ratios are constant beyond the core, so checking the
    /// core plus one level on each side covers every atom of `X`.
    pub fn ec_witness(&self) -> EcWitness {
        let r = self.core_radius + 1;
        let mut c_inverse = 0.0f64;
        let mut c_forward = 0.0f64;
        let mut cells = 0;
        for k in -r..=r {
            for i in 0..self.atom_count() {
                let here = self.mass(k, i);
                c_inverse = c_inverse.max(self.mass(k - 1, i) / here);
                c_forward = c_forward.max(self.mass(k + 1, i) / here);
                cells += 1;
            }
        }
        EcWitness { c_inverse, c_forward, cells_checked: cells }
    }

    /// `(k, i, mass)` rows for every cell of the window, in level order.
    pub fn mass_rows(&self) -> Vec<(i64, usize, f64)> {
        let w = self.window();
        (-w..=w)
            .flat_map(|k| (0..self.atom_count()).map(move |i| (k, i)))
            .map(|(k, i)| (k, i, self.mass(k, i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_examples() {
        let sys = DissipativeSystem::geometric(vec![1.0], 2.0, 64).unwrap();
        assert_eq!(sys.mass(3, 0), 8.0);
        assert_eq!(sys.mass(-2, 0), 0.25);
        assert_eq!(sys.mass(0, 0), 1.0);
        let sys = DissipativeSystem::geometric(vec![1.0, 2.0], 2.0, 8).unwrap();
        assert_eq!(sys.level_mass(0), 3.0);
        assert_eq!(sys.level_mass(1), 6.0);
    }

    #[test]
    fn two_sided_examples() {
        let sys = DissipativeSystem::two_sided(vec![1.0], 2.0, 0.5, 64).unwrap();
        assert_eq!(sys.mass(-3, 0), 0.125);
        assert_eq!(sys.mass(3, 0), 0.125);
        for k in -10..=10 {
            assert_eq!(sys.mass(k, 0), 2f64.powi(-(k as i32).abs()));
        }
    }

    #[test]
    fn table_core_and_tails() {
        let spec = SystemSpec {
            atoms: 2,
            base_masses: vec![1.0, 1.0],
            generator: Generator::TableWithTails {
                core: vec![CoreLevel { level: 1, masses: vec![2.0, 3.0] }],
                r_minus: 2.0,
                r_plus: 4.0,
            },
            window: 8,
        };
        let sys = DissipativeSystem::new(spec).unwrap();
        assert_eq!(sys.core_radius(), 1);
        let p = sys.rn_profile(1);
        assert_eq!((p.min, p.max), (2.0, 3.0));
        // filled level -1 and the tails
        assert_eq!(sys.mass(-1, 0), 0.5);
        assert_eq!(sys.mass(3, 1), 3.0 * 16.0);
        assert_eq!(sys.mass(-3, 1), 0.125);
        // tail consistency: μ_{k} = ratio^{|k|-K₀} μ_{±K₀}
        for k in 2..8 {
            for i in 0..2 {
                let expect = sys.mass(1, i) * 4f64.powi((k - 1) as i32);
                assert_eq!(sys.mass(k, i), expect);
                let expect = sys.mass(-1, i) * 0.5f64.powi((k - 1) as i32);
                assert_eq!(sys.mass(-k, i), expect);
            }
        }
    }

    #[test]
    fn rn_profile_examples() {
        let sys = DissipativeSystem::geometric(vec![1.0, 5.0, 0.25], 2.0, 8).unwrap();
        let p = sys.rn_profile(4);
        assert!(p.ratios.iter().all(|&g| g == 16.0));
        assert_eq!((p.min, p.max), (16.0, 16.0));
        let p0 = sys.rn_profile(0);
        assert_eq!((p0.min, p0.max), (1.0, 1.0));
        assert_eq!(sys.rn_derivative(2, 1), 0.25);
    }

    #[test]
    fn rn_bracket_holds() {
        let spec = SystemSpec {
            atoms: 3,
            base_masses: vec![1.0, 2.0, 0.5],
            generator: Generator::TableWithTails {
                core: vec![
                    CoreLevel { level: 2, masses: vec![3.0, 9.0, 1.0] },
                    CoreLevel { level: -1, masses: vec![0.7, 1.1, 0.2] },
                ],
                r_minus: 3.0,
                r_plus: 1.5,
            },
            window: 10,
        };
        let sys = DissipativeSystem::new(spec).unwrap();
        for k in -10..=10 {
            let p = sys.rn_profile(k);
            let lm = sys.level_mass(k);
            assert!(p.min * sys.base_mass() <= lm * (1.0 + 1e-15));
            assert!(lm <= p.max * sys.base_mass() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn ratio_spread_is_constant_for_geometric() {
        let sys = DissipativeSystem::two_sided(vec![1.0, 3.0], 1.7, 0.4, 20).unwrap();
        let at1 = {
            let p = sys.rn_profile(1);
            p.max / p.min
        };
        for k in -20..=20 {
            let p = sys.rn_profile(k);
            assert!((p.max / p.min - at1).abs() < 1e-12);
        }
        assert!((sys.rn_spread() - at1).abs() < 1e-12);
    }

    #[test]
    fn ec_witness_bounds_every_atom() {
        let sys = DissipativeSystem::two_sided(vec![1.0, 3.0], 2.0, 0.5, 12).unwrap();
        let w = sys.ec_witness();
        for k in -12..=12 {
            for i in 0..2 {
                assert!(sys.mass(k - 1, i) <= w.c_inverse * sys.mass(k, i) * (1.0 + 1e-15));
                assert!(sys.mass(k + 1, i) <= w.c_forward * sys.mass(k, i) * (1.0 + 1e-15));
            }
        }
        assert_eq!(w.c_inverse, 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        let e = DissipativeSystem::geometric(vec![1.0, -2.0], 2.0, 4).unwrap_err();
        assert_eq!(e.field, "system.base_masses[1]");
        let e = DissipativeSystem::geometric(vec![1.0], 0.0, 4).unwrap_err();
        assert_eq!(e.field, "system.generator.r");
        let e = DissipativeSystem::geometric(vec![1.0], 1e10, 64).unwrap_err();
        assert_eq!(e.field, "system.window");
        let e = DissipativeSystem::new(SystemSpec {
            atoms: 2,
            base_masses: vec![1.0],
            generator: Generator::Geometric { r: 2.0 },
            window: 3,
        })
        .unwrap_err();
        assert_eq!(e.field, "system.base_masses");
    }
}
