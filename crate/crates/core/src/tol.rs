//! Default numerical tolerances.

/// `‖M − M†‖_max` accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-10;
/// `‖UU† − I‖_max` accepted as unitary, and `|det U − 1|` as special.
pub const UNITARITY: f64 = 1e-10;
/// Residual accepted from the eigenvalue routines.
pub const EIG_RESIDUAL: f64 = 1e-10;
/// `|Tr ρ − 1|` accepted as unit trace.
pub const TRACE: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite. Looser than the
/// others because several model states sit exactly on the PSD boundary.
pub const PSD: f64 = -1e-9;
/// Exchange-symmetry constraints `r = s`, `T = Tᵀ`, `Tr T = 1` on a Bloch form.
pub const SYMMETRIC_CONSTRAINTS: f64 = 1e-8;
/// Half-width of the band around zero inside which a sign is treated as zero.
pub const ZERO_BAND: f64 = 1e-10;
/// Magnitudes at or below this are compared absolutely, above it relatively.
pub const RELATIVE_FLOOR: f64 = 1e-6;

/// Compare two numbers with a relative tolerance when either exceeds
/// [`RELATIVE_FLOOR`] in magnitude and an absolute one otherwise.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    deviation(a, b) <= tol
}

/// The deviation measured by [`approx_eq`].
pub fn deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale > RELATIVE_FLOOR {
        (a - b).abs() / scale
    } else {
        (a - b).abs()
    }
}

/// Three-valued sign with a zero band of half-width `band`.
pub fn sign_band(x: f64, band: f64) -> i8 {
    if x > band {
        1
    } else if x < -band {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_above_floor_absolute_below() {
        assert!(approx_eq(1e3, 1e3 + 1e-7, 1e-9));
        assert!(!approx_eq(1e3, 1e3 + 1e-5, 1e-9));
        assert!(approx_eq(1e-8, 2e-8, 1e-7));
        assert!(!approx_eq(1e-8, 2e-8, 1e-9));
    }

    #[test]
    fn band() {
        assert_eq!(sign_band(5e-11, ZERO_BAND), 0);
        assert_eq!(sign_band(-2e-10, ZERO_BAND), -1);
        assert_eq!(sign_band(0.3, ZERO_BAND), 1);
    }
}
