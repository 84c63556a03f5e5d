//! C ABI over `orlicz-shadow`.
//!
//! Conventions:
//! - every fallible call returns an [`OshStatus`] and writes its result
//!   through an out-pointer;
//! - handles (`OshYoung`, `OshSystem`) are opaque, created by `osh_*_new*`
//!   or `osh_load_config` and released with the matching `*_free`;
//! - on failure a message is kept per thread and can be copied out with
//!   [`osh_last_error_message`];
//! - panics never cross the boundary, they surface as `OSH_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orlicz_shadow::classify::{self, AnalysisParams, HyperbolicClass, RnClass};
use orlicz_shadow::cli::{self, CliError, CommandKind, RunConfig};
use orlicz_shadow::norms::{self, Cell, SimpleFunction};
use orlicz_shadow::shadow;
use orlicz_shadow::space::DissipativeSystem;
use orlicz_shadow::young::YoungFunction;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OshStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidConfig = 3,
    UnboundedDistortion = 4,
    NotHyperbolic = 5,
    Io = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OshClass {
    None = 0,
    Hc = 1,
    Hd = 2,
    Gh = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OshRnClass {
    None = 0,
    Rnc = 1,
    Rnd = 2,
    Rngh = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OshCommand {
    Classify = 0,
    Shadow = 1,
    Distortion = 2,
    Report = 3,
}

/// Flat classification result. Absent constants are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OshCertificate {
    pub hyperbolic_class: OshClass,
    pub k: f64,
    pub t: f64,
    pub k_minus: f64,
    pub t_minus: f64,
    pub k_plus: f64,
    pub t_plus: f64,
    pub distortion_h: f64,
    pub k_subset: f64,
    pub k_rn: f64,
    pub rn_class: OshRnClass,
    pub inconclusive: bool,
    pub window_certified: bool,
    pub r_lower: f64,
    pub r_upper: f64,
}

/// Opaque Young function handle.
pub struct OshYoung(YoungFunction);

/// Opaque dissipative system handle.
pub struct OshSystem(DissipativeSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(OshStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Config(_) => OshStatus::InvalidConfig,
            CliError::UnboundedDistortion(_) => OshStatus::UnboundedDistortion,
            CliError::Io(_) => OshStatus::Io,
            CliError::Internal(_) => OshStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl std::fmt::Display) -> Failure {
    Failure(OshStatus::InvalidArgument, msg.to_string())
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> OshStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OshStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside orlicz-shadow");
            OshStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(OshStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, v: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|e| invalid(format!("`{name}` is not UTF-8: {e}")))
}

unsafe fn new_young(
    out: *mut *mut OshYoung,
    phi: Result<YoungFunction, orlicz_shadow::YoungError>,
) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let phi = phi.map_err(invalid)?;
    out.write(Box::into_raw(Box::new(OshYoung(phi))));
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn osh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length plus one, or 0 if
/// there is no message.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn osh_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// `|x|^p`, `p >= 1`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_young_new_power(p: f64, out: *mut *mut OshYoung) -> OshStatus {
    guard(|| new_young(out, YoungFunction::power(p)))
}

/// `a |x|^p`, `p >= 1`, `a > 0`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_young_new_power_scaled(p: f64, a: f64, out: *mut *mut OshYoung) -> OshStatus {
    guard(|| new_young(out, YoungFunction::power_scaled(p, a)))
}

/// `e^|x| - |x| - 1`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_young_new_exp_minus_linear(out: *mut *mut OshYoung) -> OshStatus {
    guard(|| new_young(out, Ok(YoungFunction::exp_minus_linear())))
}

/// Monotone cubic interpolation through `(xs[j], ys[j])`, starting at `(0, 0)`.
///
/// # Safety
/// `xs` and `ys` must point to `len` readable values; `out` to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_young_new_custom(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    out: *mut *mut OshYoung,
) -> OshStatus {
    guard(|| {
        let xs = slice(xs, len, "xs")?;
        let ys = slice(ys, len, "ys")?;
        let points: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        new_young(out, YoungFunction::custom(&points))
    })
}

/// # Safety
/// `phi` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osh_young_free(phi: *mut OshYoung) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// `Φ(x)`.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_young_eval(phi: *const OshYoung, x: f64, out: *mut f64) -> OshStatus {
    guard(|| {
        let v = deref(phi, "phi")?.0.eval(x).map_err(invalid)?;
        write(out, v, "out")
    })
}

/// `Φ⁻¹(y) = sup { x >= 0 : Φ(x) <= y }`.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_young_inverse(phi: *const OshYoung, y: f64, out: *mut f64) -> OshStatus {
    guard(|| {
        let v = deref(phi, "phi")?.0.inverse(y).map_err(invalid)?;
        write(out, v, "out")
    })
}

unsafe fn new_system(out: *mut *mut OshSystem, sys: DissipativeSystem) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(OshSystem(sys))), "out")
}

/// `μ_{k,i} = base[i]·r^k`.
///
/// # Safety
/// `base` must point to `atoms` readable values; `out` to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_system_new_geometric(
    base: *const f64,
    atoms: usize,
    r: f64,
    window: u32,
    out: *mut *mut OshSystem,
) -> OshStatus {
    guard(|| {
        let base = slice(base, atoms, "base")?.to_vec();
        let sys = DissipativeSystem::geometric(base, r, window)
            .map_err(|e| Failure(OshStatus::InvalidConfig, e.to_string()))?;
        new_system(out, sys)
    })
}

/// `μ_{k,i} = base[i]·r_plus^k` for `k >= 0`, `base[i]·r_minus^k` for `k < 0`.
///
/// # Safety
/// `base` must point to `atoms` readable values; `out` to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn osh_system_new_two_sided(
    base: *const f64,
    atoms: usize,
    r_minus: f64,
    r_plus: f64,
    window: u32,
    out: *mut *mut OshSystem,
) -> OshStatus {
    guard(|| {
        let base = slice(base, atoms, "base")?.to_vec();
        let sys = DissipativeSystem::two_sided(base, r_minus, r_plus, window)
            .map_err(|e| Failure(OshStatus::InvalidConfig, e.to_string()))?;
        new_system(out, sys)
    })
}

/// Build both handles from a TOML run configuration.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out_phi` and `out_sys` handle slots.
#[no_mangle]
pub unsafe extern "C" fn osh_load_config(
    toml: *const c_char,
    out_phi: *mut *mut OshYoung,
    out_sys: *mut *mut OshSystem,
) -> OshStatus {
    guard(|| {
        if out_phi.is_null() || out_sys.is_null() {
            return Err(null("out"));
        }
        let cfg = RunConfig::from_toml(text(toml, "toml")?)?;
        let (phi, sys) = cfg.build()?;
        out_phi.write(Box::into_raw(Box::new(OshYoung(phi))));
        out_sys.write(Box::into_raw(Box::new(OshSystem(sys))));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osh_system_free(sys: *mut OshSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// `μ_{k,i}`.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_system_mass(sys: *const OshSystem, k: i64, atom: usize, out: *mut f64) -> OshStatus {
    guard(|| {
        let sys = &deref(sys, "sys")?.0;
        if atom >= sys.atom_count() {
            return Err(invalid(format!("atom {atom} out of range (atoms = {})", sys.atom_count())));
        }
        write(out, sys.mass(k, atom), "out")
    })
}

/// `μ(φ^k(W))`.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_system_level_mass(sys: *const OshSystem, k: i64, out: *mut f64) -> OshStatus {
    guard(|| write(out, deref(sys, "sys")?.0.level_mass(k), "out"))
}

/// `ν_k = N_Φ(χ_{φ^k(W)})`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_level_norm(
    phi: *const OshYoung,
    sys: *const OshSystem,
    k: i64,
    out: *mut f64,
) -> OshStatus {
    guard(|| write(out, norms::level_norm(&deref(phi, "phi")?.0, &deref(sys, "sys")?.0, k), "out"))
}

unsafe fn simple_function(
    sys: &DissipativeSystem,
    levels: *const i64,
    atoms: *const usize,
    values: *const f64,
    len: usize,
) -> Result<SimpleFunction, Failure> {
    let levels = slice(levels, len, "levels")?;
    let atoms = slice(atoms, len, "atoms")?;
    let values = slice(values, len, "values")?;
    let mut f = SimpleFunction::zero();
    for j in 0..len {
        if atoms[j] >= sys.atom_count() {
            return Err(invalid(format!("atom {} out of range (atoms = {})", atoms[j], sys.atom_count())));
        }
        if !values[j].is_finite() {
            return Err(invalid(format!("value {} at entry {j} is not finite", values[j])));
        }
        f.add_at(Cell::new(levels[j], atoms[j]), values[j]);
    }
    Ok(f)
}

/// Luxemburg norm of `Σ_j values[j]·χ_{(levels[j], atoms[j])}`.
///
/// # Safety
/// Handles must be live; the three arrays must hold `len` entries; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_luxemburg(
    phi: *const OshYoung,
    sys: *const OshSystem,
    levels: *const i64,
    atoms: *const usize,
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> OshStatus {
    guard(|| {
        let (phi, sys) = (&deref(phi, "phi")?.0, &deref(sys, "sys")?.0);
        let f = simple_function(sys, levels, atoms, values, len)?;
        write(out, norms::luxemburg(phi, sys, &f), "out")
    })
}

/// Orlicz (Amemiya) norm of the same simple function as [`osh_luxemburg`].
///
/// # Safety
/// Handles must be live; the three arrays must hold `len` entries; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_orlicz_norm(
    phi: *const OshYoung,
    sys: *const OshSystem,
    levels: *const i64,
    atoms: *const usize,
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> OshStatus {
    guard(|| {
        let (phi, sys) = (&deref(phi, "phi")?.0, &deref(sys, "sys")?.0);
        let f = simple_function(sys, levels, atoms, values, len)?;
        write(out, norms::orlicz_norm(phi, sys, &f), "out")
    })
}

/// `N_Φ(χ_F)` for the cell set `F = {(levels[j], atoms[j])}`.
///
/// # Safety
/// Handles must be live; both arrays must hold `len` entries; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_indicator_norm(
    phi: *const OshYoung,
    sys: *const OshSystem,
    levels: *const i64,
    atoms: *const usize,
    len: usize,
    out: *mut f64,
) -> OshStatus {
    guard(|| {
        let (phi, sys) = (&deref(phi, "phi")?.0, &deref(sys, "sys")?.0);
        let levels = slice(levels, len, "levels")?;
        let atoms = slice(atoms, len, "atoms")?;
        let cells: Vec<Cell> = levels.iter().zip(atoms).map(|(&k, &i)| Cell::new(k, i)).collect();
        let v = norms::indicator_norm(phi, sys, &cells).map_err(invalid)?;
        write(out, v, "out")
    })
}

fn flatten(c: &classify::Classification) -> OshCertificate {
    let cert = &c.certificate;
    let gh = cert.gh;
    OshCertificate {
        hyperbolic_class: match cert.class {
            HyperbolicClass::None => OshClass::None,
            HyperbolicClass::Hc => OshClass::Hc,
            HyperbolicClass::Hd => OshClass::Hd,
            HyperbolicClass::Gh => OshClass::Gh,
        },
        k: cert.k.unwrap_or(f64::NAN),
        t: cert.t.unwrap_or(f64::NAN),
        k_minus: gh.map_or(f64::NAN, |g| g.k_minus),
        t_minus: gh.map_or(f64::NAN, |g| g.t_minus),
        k_plus: gh.map_or(f64::NAN, |g| g.k_plus),
        t_plus: gh.map_or(f64::NAN, |g| g.t_plus),
        distortion_h: cert.distortion_h,
        k_subset: c.distortion.k_subset,
        k_rn: c.distortion.k_rn,
        rn_class: match c.rn.class {
            RnClass::None => OshRnClass::None,
            RnClass::Rnc => OshRnClass::Rnc,
            RnClass::Rnd => OshRnClass::Rnd,
            RnClass::Rngh => OshRnClass::Rngh,
        },
        inconclusive: cert.inconclusive,
        window_certified: cert.window_certified,
        r_lower: c.spectral.r_lower,
        r_upper: c.spectral.r_upper.unwrap_or(f64::NAN),
    }
}

/// Classify `C_φ` on `L^Φ` of `sys`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_classify(
    phi: *const OshYoung,
    sys: *const OshSystem,
    n_max: usize,
    window: u32,
    tol: f64,
    subset_cap: u64,
    out: *mut OshCertificate,
) -> OshStatus {
    guard(|| {
        let (phi, sys) = (&deref(phi, "phi")?.0, &deref(sys, "sys")?.0);
        let params = AnalysisParams { n_max, window, tol, subset_cap };
        let c = classify::classify(phi, sys, &params).map_err(|e| Failure::from(CliError::from(e)))?;
        write(out, flatten(&c), "out")
    })
}

/// A-priori shadowing radius `H·K·δ·(1+τ)/(1−τ)` for a certificate from
/// [`osh_classify`].
///
/// # Safety
/// `cert` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn osh_shadow_bound(cert: *const OshCertificate, delta: f64, out: *mut f64) -> OshStatus {
    guard(|| {
        let c = deref(cert, "cert")?;
        if delta.is_nan() || delta < 0.0 {
            return Err(invalid(format!("delta must be >= 0, got {delta}")));
        }
        let (k, tau) = match c.hyperbolic_class {
            OshClass::None => {
                return Err(Failure(OshStatus::NotHyperbolic, shadow::ShadowError::NotHyperbolic.to_string()))
            }
            OshClass::Hc | OshClass::Gh => (c.k, c.t),
            OshClass::Hd => (1.0 / c.k, 1.0 / c.t),
        };
        write(out, c.distortion_h * k * delta * (1.0 + tau) / (1.0 - tau), "out")
    })
}

/// Run a CLI command on a TOML configuration without touching the file
/// system. The JSON report is returned in `*out_json` (free it with
/// [`osh_string_free`]) and the command's exit code in `*out_exit_code`.
///
/// # Safety
/// `toml` must be a NUL-terminated string; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn osh_run_config(
    toml: *const c_char,
    command: OshCommand,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> OshStatus {
    guard(|| {
        if out_json.is_null() || out_exit_code.is_null() {
            return Err(null("out"));
        }
        let cfg = RunConfig::from_toml(text(toml, "toml")?)?;
        let kind = match command {
            OshCommand::Classify => CommandKind::Classify,
            OshCommand::Shadow => CommandKind::Shadow,
            OshCommand::Distortion => CommandKind::Distortion,
            OshCommand::Report => CommandKind::Report,
        };
        let output = cli::execute(kind, &cfg)?;
        let json = CString::new(output.report.to_json()).map_err(|e| Failure(OshStatus::Internal, e.to_string()))?;
        out_json.write(json.into_raw());
        out_exit_code.write(output.exit_code);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
