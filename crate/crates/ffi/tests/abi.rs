use std::ffi::{c_char, CStr, CString};
use std::ptr;

use orlicz_shadow_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { osh_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn power(p: f64) -> *mut OshYoung {
    let mut phi = ptr::null_mut();
    assert_eq!(unsafe { osh_young_new_power(p, &mut phi) }, OshStatus::Ok);
    phi
}

fn geometric(base: &[f64], r: f64) -> *mut OshSystem {
    let mut sys = ptr::null_mut();
    let s = unsafe { osh_system_new_geometric(base.as_ptr(), base.len(), r, 64, &mut sys) };
    assert_eq!(s, OshStatus::Ok);
    sys
}

#[test]
fn young_round_trip() {
    let phi = power(2.0);
    let mut v = 0.0;
    unsafe {
        assert_eq!(osh_young_eval(phi, 3.0, &mut v), OshStatus::Ok);
        assert_eq!(v, 9.0);
        assert_eq!(osh_young_inverse(phi, 9.0, &mut v), OshStatus::Ok);
        assert!((v - 3.0).abs() < 1e-12);
        osh_young_free(phi);
    }
}

#[test]
fn custom_table_and_exp() {
    let xs = [0.0, 1.0, 2.0, 3.0];
    let ys = [0.0, 1.0, 4.0, 9.0];
    let mut phi = ptr::null_mut();
    unsafe {
        assert_eq!(osh_young_new_custom(xs.as_ptr(), ys.as_ptr(), 4, &mut phi), OshStatus::Ok);
        let mut v = 0.0;
        assert_eq!(osh_young_eval(phi, 2.0, &mut v), OshStatus::Ok);
        assert!((v - 4.0).abs() < 1e-12);
        osh_young_free(phi);
        assert_eq!(osh_young_new_exp_minus_linear(&mut phi), OshStatus::Ok);
        assert_eq!(osh_young_eval(phi, 1.0, &mut v), OshStatus::Ok);
        assert!((v - (1f64.exp() - 2.0)).abs() < 1e-15);
        osh_young_free(phi);
    }
}

#[test]
fn errors_are_reported() {
    let mut phi = ptr::null_mut();
    unsafe {
        assert_eq!(osh_young_new_power(0.5, &mut phi), OshStatus::InvalidArgument);
        assert!(phi.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(osh_young_new_power(2.0, ptr::null_mut()), OshStatus::NullPointer);
        assert!(last_error().contains("null"));
        let mut sys = ptr::null_mut();
        let bad = [-1.0];
        assert_eq!(osh_system_new_geometric(bad.as_ptr(), 1, 2.0, 8, &mut sys), OshStatus::InvalidConfig);
        assert!(last_error().contains("base_masses"), "{}", last_error());
        osh_young_free(ptr::null_mut());
        osh_system_free(ptr::null_mut());
    }
}

#[test]
fn norms_over_arrays() {
    let phi = power(2.0);
    let sys = geometric(&[1.0, 3.0], 2.0);
    unsafe {
        let mut m = 0.0;
        assert_eq!(osh_system_mass(sys, 2, 1, &mut m), OshStatus::Ok);
        assert_eq!(m, 12.0);
        assert_eq!(osh_system_level_mass(sys, -1, &mut m), OshStatus::Ok);
        assert_eq!(m, 2.0);
        assert_eq!(osh_system_mass(sys, 0, 2, &mut m), OshStatus::InvalidArgument);

        let levels = [0i64, 1];
        let atoms = [0usize, 1];
        let values = [1.0, 1.0];
        let (mut lux, mut orl, mut ind) = (0.0, 0.0, 0.0);
        assert_eq!(
            osh_luxemburg(phi, sys, levels.as_ptr(), atoms.as_ptr(), values.as_ptr(), 2, &mut lux),
            OshStatus::Ok
        );
        assert_eq!(osh_indicator_norm(phi, sys, levels.as_ptr(), atoms.as_ptr(), 2, &mut ind), OshStatus::Ok);
        assert_eq!(
            osh_orlicz_norm(phi, sys, levels.as_ptr(), atoms.as_ptr(), values.as_ptr(), 2, &mut orl),
            OshStatus::Ok
        );
        // μ(F) = 1 + 6 = 7, so N(χ_F) = sqrt(7)
        assert!((lux - 7f64.sqrt()).abs() < 1e-10);
        assert!((ind - 7f64.sqrt()).abs() < 1e-10);
        assert!(lux <= orl * (1.0 + 1e-9) && orl <= 2.0 * lux * (1.0 + 1e-9));
        let mut nu = 0.0;
        assert_eq!(osh_level_norm(phi, sys, 0, &mut nu), OshStatus::Ok);
        assert!((nu - 2.0).abs() < 1e-12);
        osh_system_free(sys);
        osh_young_free(phi);
    }
}

#[test]
fn classify_and_bound() {
    let phi = power(2.0);
    let mut sys = ptr::null_mut();
    let base = [1.0];
    unsafe {
        assert_eq!(osh_system_new_two_sided(base.as_ptr(), 1, 2.0, 0.5, 64, &mut sys), OshStatus::Ok);
        let mut cert = std::mem::zeroed::<OshCertificate>();
        assert_eq!(osh_classify(phi, sys, 32, 64, 1e-6, 1 << 20, &mut cert), OshStatus::Ok);
        assert_eq!(cert.hyperbolic_class, OshClass::Gh);
        assert_eq!(cert.rn_class, OshRnClass::Rngh);
        assert!((cert.t - 0.5f64.sqrt()).abs() < 1e-6);
        assert!(cert.window_certified);
        assert!(cert.r_upper.is_nan());
        let mut b = 0.0;
        assert_eq!(osh_shadow_bound(&cert, 0.1, &mut b), OshStatus::Ok);
        let t = cert.t;
        assert!((b - cert.distortion_h * cert.k * 0.1 * (1.0 + t) / (1.0 - t)).abs() < 1e-15);
        assert_eq!(osh_classify(phi, sys, 4, 64, 1e-6, 1 << 20, &mut cert), OshStatus::InvalidConfig);
        osh_system_free(sys);

        let flat = geometric(&[1.0], 1.0);
        assert_eq!(osh_classify(phi, flat, 32, 64, 1e-6, 1 << 20, &mut cert), OshStatus::Ok);
        assert_eq!(cert.hyperbolic_class, OshClass::None);
        assert!(cert.k.is_nan());
        assert_eq!(osh_shadow_bound(&cert, 0.1, &mut b), OshStatus::NotHyperbolic);
        osh_system_free(flat);
        osh_young_free(phi);
    }
}

const CONFIG: &str = r#"
[young]
family = "power"
p = 2.0

[system]
atoms = 1
base_masses = [1.0]
window = 16

[system.generator]
kind = "geometric"
r = 2.0

[analysis]
n_max = 16
window = 16

[shadow]
delta = 1e-3
length = 10
seeds = [1, 2]
"#;

#[test]
fn run_config_returns_report() {
    let toml = CString::new(CONFIG).unwrap();
    let mut json = ptr::null_mut();
    let mut code = -1;
    unsafe {
        assert_eq!(osh_run_config(toml.as_ptr(), OshCommand::Shadow, &mut json, &mut code), OshStatus::Ok);
        assert_eq!(code, 0);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        osh_string_free(json);
        assert!(text.contains("\"class\": \"HC\""));
        assert!(text.contains("shadow_runs"));

        let (mut phi, mut sys) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(osh_load_config(toml.as_ptr(), &mut phi, &mut sys), OshStatus::Ok);
        let mut m = 0.0;
        assert_eq!(osh_system_mass(sys, 3, 0, &mut m), OshStatus::Ok);
        assert_eq!(m, 8.0);
        osh_system_free(sys);
        osh_young_free(phi);

        let broken = CString::new(CONFIG.replace("r = 2.0", "r = -2.0")).unwrap();
        assert_eq!(
            osh_run_config(broken.as_ptr(), OshCommand::Classify, &mut json, &mut code),
            OshStatus::InvalidConfig
        );
        assert!(last_error().contains("system.generator.r"));
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(osh_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
