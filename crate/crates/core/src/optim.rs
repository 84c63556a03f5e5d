//! Scalar kernels shared by the rest of the crate: monotone bisection and
//! golden-section search.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Largest `x` in `[lo, hi]` for which `pred(x)` holds, assuming `pred` is
/// monotone (true on a prefix, false on the suffix), `pred(lo)` is true and
/// `pred(hi)` is false.
///
/// Stops once the bracket is narrower than `rel_tol * hi + abs_tol` or no
/// representable midpoint remains. The returned value always satisfies
/// `pred`.
pub fn bisect_last_true<F>(mut lo: f64, mut hi: f64, rel_tol: f64, abs_tol: f64, pred: F) -> f64
where
    F: Fn(f64) -> bool,
{
    for _ in 0..2000 {
        if hi - lo <= rel_tol * hi.abs() + abs_tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest `x` in `[lo, hi]` for which `pred(x)` holds; mirror image of
/// [`bisect_last_true`] (`pred(lo)` false, `pred(hi)` true). The returned
/// value always satisfies `pred`.
pub fn bisect_first_true<F>(mut lo: f64, mut hi: f64, rel_tol: f64, abs_tol: f64, pred: F) -> f64
where
    F: Fn(f64) -> bool,
{
    for _ in 0..2000 {
        if hi - lo <= rel_tol * hi.abs() + abs_tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Golden-section search for the minimum of a unimodal function on `[a, b]`.
///
/// Non-finite values are treated as `+inf`, which keeps the search inside
/// the finite region as long as the function is unimodal there.
pub fn golden_section_min<F>(mut a: f64, mut b: f64, tol: f64, f: F) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    let mut iters = 0;
    while (b - a).abs() > tol * (1.0 + c.abs().max(d.abs())) && iters < 500 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
        iters += 1;
    }
    // the endpoints may beat both interior probes when the minimum sits on
    // the boundary of the bracket
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for x in [a, b] {
        let v = eval(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
pub fn golden_section_max<F>(a: f64, b: f64, tol: f64, f: F) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (x, v) = golden_section_min(a, b, tol, |x| -f(x));
    (x, -v)
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}
