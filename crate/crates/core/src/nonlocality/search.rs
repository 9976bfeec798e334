//! One-dimensional maximization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, assuming
/// unimodality there. Stops when the bracket is narrower than `xtol`.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coarse scan of `samples` evenly spaced points on `[lo, hi]` followed by
/// golden-section refinement on the neighbouring cells of the best point.
pub fn scan_then_refine(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, samples: usize, xtol: f64) -> (f64, f64) {
    let h = (hi - lo) / (samples - 1) as f64;
    let (mut best_x, mut best_f) = (lo, f64::NEG_INFINITY);
    for k in 0..samples {
        let x = lo + h * k as f64;
        let v = f(x);
        if v > best_f {
            best_x = x;
            best_f = v;
        }
    }
    let (x, v) = golden_section_max(&mut f, best_x - h, best_x + h, xtol);
    if v >= best_f {
        (x, v)
    } else {
        (best_x, best_f)
    }
}
