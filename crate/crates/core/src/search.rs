//! One-dimensional maximisation helpers: uniform grid scan and golden-section
//! refinement of a bracket.

/// 1/φ where φ is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `xtol`. Returns the best point evaluated.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // Each step shrinks by 0.618, so 200 iterations cover any finite bracket.
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Indices of the `k` largest values, best first. Ties keep the lower index
/// first. Returned as a fixed array padded with `usize::MAX`.
pub fn top_k<const K: usize>(values: &[f64]) -> [usize; K] {
    let mut best = [usize::MAX; K];
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        let mut slot = None;
        for (s, &j) in best.iter().enumerate() {
            if j == usize::MAX || v > values[j] {
                slot = Some(s);
                break;
            }
        }
        if let Some(s) = slot {
            for t in (s + 1..K).rev() {
                best[t] = best[t - 1];
            }
            best[s] = i;
        }
    }
    best
}

/// Wraps `x` into `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x % period;
    let r = if r < 0.0 { r + period } else { r };
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, to bracket width `xtol`.
/// Returns `None` if the endpoints do not straddle a root.
pub fn bisect_root(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while (b - a).abs() > xtol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
