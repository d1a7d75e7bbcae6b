use crate::error::{domain, Error, Result};

/// Total mean photon number `2n cosh 2r + 2 sinh²r` of `S(r)|n,n⟩`.
pub fn mean_total_photons(n: u32, r: f64) -> f64 {
    2.0 * n as f64 * (2.0 * r).cosh() + 2.0 * r.sinh().powi(2)
}

/// Squeezing that gives total mean photon number `nbar` for excitation `n`.
///
/// Inverts [`mean_total_photons`], which rearranges to
/// `(2n+1) cosh 2r = N̄ + 1`.
pub fn r_for_energy(nbar: f64, n: u32) -> Result<f64> {
    let min = 2.0 * n as f64;
    if !nbar.is_finite() || nbar < min {
        return Err(Error::InfeasibleEnergy { nbar, n, min });
    }
    let ratio = (nbar + 1.0) / (2.0 * n as f64 + 1.0);
    Ok(0.5 * ratio.max(1.0).acosh())
}

/// Standard quantum limit `1/√N̄`.
pub fn sql(nbar: f64) -> Result<f64> {
    if !(nbar > 0.0) {
        return domain(format!("mean photon number must be positive, got {nbar}"));
    }
    Ok(1.0 / nbar.sqrt())
}

/// Heisenberg limit `1/N̄`.
pub fn hl(nbar: f64) -> Result<f64> {
    if !(nbar > 0.0) {
        return domain(format!("mean photon number must be positive, got {nbar}"));
    }
    Ok(1.0 / nbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        assert!((mean_total_photons(0, 0.7) - 2.0 * 0.7f64.sinh().powi(2)).abs() < 1e-15);
        assert!((mean_total_photons(0, 0.7) - 1.1509).abs() < 1e-4);
        assert_eq!(mean_total_photons(1, 0.0), 2.0);
        assert!((mean_total_photons(1, 0.7) - 5.4527).abs() < 1e-4);
    }

    #[test]
    fn inversion() {
        assert!((r_for_energy(8.0, 0).unwrap() - 0.5 * 9f64.acosh()).abs() < 1e-15);
        assert!((r_for_energy(8.0, 0).unwrap() - 1.4436).abs() < 1e-4);
        assert_eq!(r_for_energy(4.0, 2).unwrap(), 0.0);
        let r = r_for_energy(8.0, 3).unwrap();
        assert!((r - 0.3695).abs() < 1e-4);
        assert!((mean_total_photons(3, r) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_energy() {
        assert!(matches!(r_for_energy(3.9, 2), Err(Error::InfeasibleEnergy { n: 2, .. })));
    }

    #[test]
    fn limits() {
        assert_eq!(sql(4.0).unwrap(), 0.5);
        assert_eq!(hl(4.0).unwrap(), 0.25);
        assert!((sql(8.0).unwrap() - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert_eq!(hl(8.0).unwrap(), 0.125);
        let nbar = mean_total_photons(0, r_for_energy(8.0, 0).unwrap());
        assert!((sql(nbar).unwrap() - 0.3536).abs() < 1e-4);
        assert!(sql(0.0).is_err());
    }
}
