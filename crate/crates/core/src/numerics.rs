//! Scalar numerical helpers: Richardson-extrapolated central differences and
//! bracketed golden-section minimisation.

use crate::error::{Error, Result};

/// Central difference `(f(x+h) - f(x-h)) / 2h`, extrapolated once from steps
/// `h` and `h/2`. The leading O(h²) error cancels, leaving O(h⁴).
pub fn richardson_derivative<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("finite-difference step must be positive, got {h}")));
    }
    let coarse = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let half = 0.5 * h;
    let fine = (f(x + half)? - f(x - half)?) / h;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `tol`.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
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
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimum of `f` over `[lo, hi]`: a `grid_points` pre-scan selects the basin,
/// then golden section refines it to `tol`.
///
/// Points where `f` fails or is not finite are treated as +∞. Fails with
/// [`Error::NoSignal`] when every grid point is.
pub fn minimize_bracketed<F>(f: F, lo: f64, hi: f64, grid_points: usize, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let objective = |x: f64| match f(x) {
        Ok(v) if v.is_finite() => v,
        _ => f64::INFINITY,
    };
    let grid = linspace(lo, hi, grid_points.max(3));
    let values: Vec<f64> = grid.iter().map(|&x| objective(x)).collect();
    let (best, &best_val) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is nonempty");
    if !best_val.is_finite() {
        return Err(Error::NoSignal);
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(grid.len() - 1)];
    let (x, fx) = golden_section(objective, a, b, tol);
    if fx <= best_val {
        Ok((x, fx))
    } else {
        Ok((grid[best], best_val))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_is_exact_for_quartics() {
        // O(h^4) remainder involves the fifth derivative, which vanishes here.
        let f = |x: f64| Ok(3.0 * x.powi(4) - x.powi(3) + 2.0 * x);
        let d = richardson_derivative(f, 0.7, 1e-2).unwrap();
        let exact = 12.0 * 0.7f64.powi(3) - 3.0 * 0.49 + 2.0;
        assert!((d - exact).abs() < 1e-12, "{d} vs {exact}");
    }

    #[test]
    fn richardson_sine() {
        let d = richardson_derivative(|x| Ok(x.sin()), 0.3, 1e-5).unwrap();
        assert!((d - 0.3f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn richardson_rejects_zero_step() {
        assert!(richardson_derivative(Ok, 0.0, 0.0).is_err());
    }

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x| (x - 0.37).powi(2) + 1.0, 0.0, 2.0, 1e-9);
        assert!((x - 0.37).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bracketed_picks_global_basin() {
        // two wells, the deeper one at x = 2.5
        let f = |x: f64| Ok(((x - 0.5).powi(2) + 0.1).min((x - 2.5).powi(2)));
        let (x, fx) = minimize_bracketed(f, 0.0, 3.0, 64, 1e-8).unwrap();
        assert!((x - 2.5).abs() < 1e-6, "{x}");
        assert!(fx < 1e-12);
    }

    #[test]
    fn bracketed_handles_minimum_at_boundary() {
        let (x, _) = minimize_bracketed(Ok, 1e-4, 1.0, 64, 1e-8).unwrap();
        assert!((x - 1e-4).abs() < 1e-7);
    }

    #[test]
    fn bracketed_reports_no_signal() {
        let r = minimize_bracketed(|_| Ok(f64::INFINITY), 0.0, 1.0, 64, 1e-6);
        assert_eq!(r, Err(Error::NoSignal));
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.1, 1.5, 141);
        assert_eq!(v.len(), 141);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[140], 1.5);
        assert!(linspace(0.0, 1.0, 0).is_empty());
        assert_eq!(linspace(2.0, 5.0, 1), vec![2.0]);
    }
}
