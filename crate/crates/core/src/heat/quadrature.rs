//! Poisson-integral evaluation of the heat semigroup by composite Simpson.

/// Composite Simpson rule on `[lo, hi]` with `panels` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, panels: usize) -> f64 {
    let m = (panels.max(2) + 1) & !1;
    let h = (hi - lo) / m as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..m {
        let v = f(lo + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(lo) + f(hi) + 4.0 * odd + 2.0 * even)
}

/// Integrates `f` over `[lo, hi]`, splitting at `breaks` (points where `f`
/// is not smooth) and using Simpson panels no wider than `max_step`.
pub fn piecewise_simpson<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    max_step: f64,
) -> f64 {
    let mut cuts = vec![lo];
    cuts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let panels = ((w[1] - w[0]) / max_step).ceil() as usize;
            simpson(&f, w[0], w[1], panels)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 2);
        assert!((v - 3.75).abs() < 1e-14);
    }

    #[test]
    fn piecewise_handles_kinks() {
        // ∫_{-1}^{2} |x| dx = 0.5 + 2
        let v = piecewise_simpson(f64::abs, -1.0, 2.0, &[0.0], 0.5);
        assert!((v - 2.5).abs() < 1e-14);
    }
}
