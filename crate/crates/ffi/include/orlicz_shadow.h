#ifndef ORLICZ_SHADOW_H
#define ORLICZ_SHADOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum OshStatus {
  OSH_STATUS_OK = 0,
  OSH_STATUS_NULL_POINTER = 1,
  OSH_STATUS_INVALID_ARGUMENT = 2,
  OSH_STATUS_INVALID_CONFIG = 3,
  OSH_STATUS_UNBOUNDED_DISTORTION = 4,
  OSH_STATUS_NOT_HYPERBOLIC = 5,
  OSH_STATUS_IO = 6,
  OSH_STATUS_INTERNAL = 7,
  OSH_STATUS_PANIC = 8,
} OshStatus;

typedef enum OshClass {
  OSH_CLASS_NONE = 0,
  OSH_CLASS_HC = 1,
  OSH_CLASS_HD = 2,
  OSH_CLASS_GH = 3,
} OshClass;

typedef enum OshRnClass {
  OSH_RN_CLASS_NONE = 0,
  OSH_RN_CLASS_RNC = 1,
  OSH_RN_CLASS_RND = 2,
  OSH_RN_CLASS_RNGH = 3,
} OshRnClass;

typedef enum OshCommand {
  OSH_COMMAND_CLASSIFY = 0,
  OSH_COMMAND_SHADOW = 1,
  OSH_COMMAND_DISTORTION = 2,
  OSH_COMMAND_REPORT = 3,
} OshCommand;

/**
 * Opaque dissipative system handle.
 */
typedef struct OshSystem OshSystem;

/**
 * Opaque Young function handle.
 */
typedef struct OshYoung OshYoung;

/**
 * Flat classification result. Absent constants are NaN.
 */
typedef struct OshCertificate {
  enum OshClass hyperbolic_class;
  double k;
  double t;
  double k_minus;
  double t_minus;
  double k_plus;
  double t_plus;
  double distortion_h;
  double k_subset;
  double k_rn;
  enum OshRnClass rn_class;
  bool inconclusive;
  bool window_certified;
  double r_lower;
  double r_upper;
} OshCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *osh_version(void);

/**
 * Copy the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length plus one, or 0 if
 * there is no message.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t osh_last_error_message(char *buf, size_t len);

/**
 * `|x|^p`, `p >= 1`.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum OshStatus osh_young_new_power(double p, struct OshYoung **out);

/**
 * `a |x|^p`, `p >= 1`, `a > 0`.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum OshStatus osh_young_new_power_scaled(double p, double a, struct OshYoung **out);

/**
 * `e^|x| - |x| - 1`.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum OshStatus osh_young_new_exp_minus_linear(struct OshYoung **out);

/**
 * Monotone cubic interpolation through `(xs[j], ys[j])`, starting at `(0, 0)`.
 *
 * # Safety
 * `xs` and `ys` must point to `len` readable values; `out` to a handle slot.
 */
enum OshStatus osh_young_new_custom(const double *xs,
                                    const double *ys,
                                    size_t len,
                                    struct OshYoung **out);

/**
 * # Safety
 * `phi` must be null or a handle from this library, not yet freed.
 */
void osh_young_free(struct OshYoung *phi);

/**
 * `Φ(x)`.
 *
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum OshStatus osh_young_eval(const struct OshYoung *phi, double x, double *out);

/**
 * `Φ⁻¹(y) = sup { x >= 0 : Φ(x) <= y }`.
 *
 * # Safety
 * `phi` must be a live handle and `out` writable.
 */
enum OshStatus osh_young_inverse(const struct OshYoung *phi, double y, double *out);

/**
 * `μ_{k,i} = base[i]·r^k`.
 *
 * # Safety
 * `base` must point to `atoms` readable values; `out` to a handle slot.
 */
enum OshStatus osh_system_new_geometric(const double *base,
                                        size_t atoms,
                                        double r,
                                        uint32_t window,
                                        struct OshSystem **out);

/**
 * `μ_{k,i} = base[i]·r_plus^k` for `k >= 0`, `base[i]·r_minus^k` for `k < 0`.
 *
 * # Safety
 * `base` must point to `atoms` readable values; `out` to a handle slot.
 */
enum OshStatus osh_system_new_two_sided(const double *base,
                                        size_t atoms,
                                        double r_minus,
                                        double r_plus,
                                        uint32_t window,
                                        struct OshSystem **out);

/**
 * Build both handles from a TOML run configuration.
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out_phi` and `out_sys` handle slots.
 */
enum OshStatus osh_load_config(const char *toml,
                               struct OshYoung **out_phi,
                               struct OshSystem **out_sys);

/**
 * # Safety
 * `sys` must be null or a handle from this library, not yet freed.
 */
void osh_system_free(struct OshSystem *sys);

/**
 * `μ_{k,i}`.
 *
 * # Safety
 * `sys` must be a live handle and `out` writable.
 */
enum OshStatus osh_system_mass(const struct OshSystem *sys, int64_t k, size_t atom, double *out);

/**
 * `μ(φ^k(W))`.
 *
 * # Safety
 * `sys` must be a live handle and `out` writable.
 */
enum OshStatus osh_system_level_mass(const struct OshSystem *sys, int64_t k, double *out);

/**
 * `ν_k = N_Φ(χ_{φ^k(W)})`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum OshStatus osh_level_norm(const struct OshYoung *phi,
                              const struct OshSystem *sys,
                              int64_t k,
                              double *out);

/**
 * Luxemburg norm of `Σ_j values[j]·χ_{(levels[j], atoms[j])}`.
 *
 * # Safety
 * Handles must be live; the three arrays must hold `len` entries; `out` writable.
 */
enum OshStatus osh_luxemburg(const struct OshYoung *phi,
                             const struct OshSystem *sys,
                             const int64_t *levels,
                             const size_t *atoms,
                             const double *values,
                             size_t len,
                             double *out);

/**
 * Orlicz (Amemiya) norm of the same simple function as [`osh_luxemburg`].
 *
 * # Safety
 * Handles must be live; the three arrays must hold `len` entries; `out` writable.
 */
enum OshStatus osh_orlicz_norm(const struct OshYoung *phi,
                               const struct OshSystem *sys,
                               const int64_t *levels,
                               const size_t *atoms,
                               const double *values,
                               size_t len,
                               double *out);

/**
 * `N_Φ(χ_F)` for the cell set `F = {(levels[j], atoms[j])}`.
 *
 * # Safety
 * Handles must be live; both arrays must hold `len` entries; `out` writable.
 */
enum OshStatus osh_indicator_norm(const struct OshYoung *phi,
                                  const struct OshSystem *sys,
                                  const int64_t *levels,
                                  const size_t *atoms,
                                  size_t len,
                                  double *out);

/**
 * Classify `C_φ` on `L^Φ` of `sys`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum OshStatus osh_classify(const struct OshYoung *phi,
                            const struct OshSystem *sys,
                            size_t n_max,
                            uint32_t window,
                            double tol,
                            uint64_t subset_cap,
                            struct OshCertificate *out);

/**
 * A-priori shadowing radius `H·K·δ·(1+τ)/(1−τ)` for a certificate from
 * [`osh_classify`].
 *
 * # Safety
 * `cert` must be readable and `out` writable.
 */
enum OshStatus osh_shadow_bound(const struct OshCertificate *cert, double delta, double *out);

/**
 * Run a CLI command on a TOML configuration without touching the file
 * system. The JSON report is returned in `*out_json` (free it with
 * [`osh_string_free`]) and the command's exit code in `*out_exit_code`.
 *
 * # Safety
 * `toml` must be a NUL-terminated string; out-pointers writable.
 */
enum OshStatus osh_run_config(const char *toml,
                              enum OshCommand command,
                              char **out_json,
                              int32_t *out_exit_code);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void osh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORLICZ_SHADOW_H */
