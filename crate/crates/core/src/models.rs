//! Two-qubit reduced states drawn from N-qubit systems: a Dicke state, the
//! one-axis-twisting (OAT) state `e^{−iχt Sx²}|↓…↓⟩`, and an Ising chain
//! with nearest-neighbour `σxσx` coupling.
//!
//! Every family has a closed-form X-form pair state and closed-form
//! invariants. [`brute_force_pair_oracle`] evolves small systems exactly and
//! traces out all but qubits 1 and 2, as an independent check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{CMat2, CMat4, Complex, ONE, ZERO};
use crate::states::{DensityMatrix, XForm};

/// Largest system the brute-force oracle accepts.
pub const ORACLE_MAX_QUBITS: usize = 6;

/// Exponent used for `cos(χt)` in the OAT `Im b` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImbExponent {
    /// `Im b = ½ cos^{N−2}(χt) sin(χt)`; agrees with the OAT `I14` closed form
    /// and with exact evolution.
    #[default]
    NMinusTwo,
    /// `Im b = ½ cos^{N−1}(χt) sin(χt)`, kept for comparison. Its `I14` does
    /// not match the OAT closed form.
    NMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dicke,
    Oat,
    Ising,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Dicke => "dicke",
            Family::Oat => "oat",
            Family::Ising => "ising",
        })
    }
}

/// A point in one of the model families. `two_m` stores `2M` so half-integer
/// `M` is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Dicke { n: usize, two_m: i64 },
    Oat { n: usize, chi_t: f64 },
    Ising { n: usize, chi_t: f64 },
}

impl ModelSpec {
    /// Dicke spec from a (possibly half-integer) `m`.
    pub fn dicke(n: usize, m: f64) -> Result<Self> {
        let two_m = checked_two_m(n, m)?;
        Ok(ModelSpec::Dicke { n, two_m })
    }

    pub fn family(&self) -> Family {
        match self {
            ModelSpec::Dicke { .. } => Family::Dicke,
            ModelSpec::Oat { .. } => Family::Oat,
            ModelSpec::Ising { .. } => Family::Ising,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            ModelSpec::Dicke { n, .. } | ModelSpec::Oat { n, .. } | ModelSpec::Ising { n, .. } => n,
        }
    }

    pub fn m(&self) -> Option<f64> {
        match *self {
            ModelSpec::Dicke { two_m, .. } => Some(two_m as f64 / 2.0),
            _ => None,
        }
    }

    pub fn chi_t(&self) -> Option<f64> {
        match *self {
            ModelSpec::Oat { chi_t, .. } | ModelSpec::Ising { chi_t, .. } => Some(chi_t),
            ModelSpec::Dicke { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Dicke { n, two_m } => checked_two_m(n, two_m as f64 / 2.0).map(|_| ()),
            ModelSpec::Oat { n, chi_t } | ModelSpec::Ising { n, chi_t } => {
                if n < 2 {
                    return Err(Error::InvalidModel(format!("N = {n} must be at least 2")));
                }
                if !chi_t.is_finite() {
                    return Err(Error::InvalidModel(format!("chi_t = {chi_t} is not finite")));
                }
                Ok(())
            }
        }
    }

    /// Non-fatal remarks about the spec.
    pub fn warnings(&self) -> Vec<String> {
        match *self {
            ModelSpec::Ising { n: 2, .. } => vec![
                "Ising pair formula is meant for chains with N >= 3; N = 2 may be unphysical".into(),
            ],
            _ => Vec::new(),
        }
    }

    /// The closed-form pair state.
    pub fn pair(&self, exponent: ImbExponent) -> Result<XForm> {
        match *self {
            ModelSpec::Dicke { n, two_m } => dicke_pair(n, two_m as f64 / 2.0),
            ModelSpec::Oat { n, chi_t } => oat_pair_with(n, chi_t, exponent),
            ModelSpec::Ising { n, chi_t } => ising_pair(n, chi_t),
        }
    }

    /// The closed-form invariants.
    pub fn invariants(&self) -> Result<PairInvariants> {
        match *self {
            ModelSpec::Dicke { n, two_m } => dicke_invariants(n, two_m as f64 / 2.0),
            ModelSpec::Oat { n, chi_t } => oat_invariants(n, chi_t),
            ModelSpec::Ising { n, chi_t } => ising_invariants(n, chi_t),
        }
    }
}

fn checked_two_m(n: usize, m: f64) -> Result<i64> {
    let invalid = || Error::InvalidDicke { n, m };
    if n < 2 || !m.is_finite() {
        return Err(invalid());
    }
    let two_m = (2.0 * m).round();
    if (2.0 * m - two_m).abs() > 1e-9 {
        return Err(invalid());
    }
    let two_m = two_m as i64;
    let n_i = n as i64;
    if two_m.abs() > n_i || (n_i + two_m) % 2 != 0 {
        return Err(invalid());
    }
    Ok(two_m)
}

/// `I4, I12, I14` and `I12 − I4²` of a model pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairInvariants {
    pub i4: f64,
    pub i12: f64,
    pub i14: f64,
    pub i12_minus_i4sq: f64,
}

impl PairInvariants {
    fn new(i4: f64, i12: f64, i14: f64) -> Self {
        PairInvariants { i4, i12, i14, i12_minus_i4sq: i12 - i4 * i4 }
    }
}

/// Pair drawn from the Dicke state `|N/2, M⟩`.
pub fn dicke_pair(n: usize, m: f64) -> Result<XForm> {
    checked_two_m(n, m)?;
    let nf = n as f64;
    let denom = 4.0 * nf * (nf - 1.0);
    let a = (nf + 2.0 * m) * (nf + 2.0 * m - 2.0) / denom;
    let c = (nf * nf - 4.0 * m * m) / denom;
    XForm::from_trace(a, ZERO, c)
}

pub fn dicke_invariants(n: usize, m: f64) -> Result<PairInvariants> {
    checked_two_m(n, m)?;
    let nf = n as f64;
    let i4 = (2.0 * m / nf).powi(2);
    let i12 = i4 * (4.0 * m * m - nf) / (nf * (nf - 1.0));
    let i14 = 8.0 * i4 * ((nf * nf - 4.0 * m * m) / (4.0 * nf * (nf - 1.0))).powi(2);
    let i12_minus_i4sq = i4 * (4.0 * m * m - nf * nf) / (nf * nf * (nf - 1.0));
    Ok(PairInvariants { i4, i12, i14, i12_minus_i4sq })
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModel(format!("N = {n} must be at least 2")));
    }
    Ok(())
}

fn cos_pow(x: f64, k: usize) -> f64 {
    // cos⁰ ≡ 1 for every argument
    x.cos().powi(k as i32)
}

/// OAT pair with the consistent `Im b` exponent.
pub fn oat_pair(n: usize, chi_t: f64) -> Result<XForm> {
    oat_pair_with(n, chi_t, ImbExponent::NMinusTwo)
}

pub fn oat_pair_with(n: usize, chi_t: f64, exponent: ImbExponent) -> Result<XForm> {
    check_n(n)?;
    let twisted = cos_pow(2.0 * chi_t, n - 2);
    let a = (3.0 + twisted - 4.0 * cos_pow(chi_t, n - 1)) / 8.0;
    let c = (1.0 - twisted) / 8.0;
    let k = match exponent {
        ImbExponent::NMinusTwo => n - 2,
        ImbExponent::NMinusOne => n - 1,
    };
    let im_b = 0.5 * cos_pow(chi_t, k) * chi_t.sin();
    XForm::from_trace(a, Complex::new(-c, im_b), c)
}

pub fn oat_invariants(n: usize, chi_t: f64) -> Result<PairInvariants> {
    check_n(n)?;
    let i4 = cos_pow(chi_t, 2 * (n - 1));
    let i12 = 0.5 * i4 * (1.0 + cos_pow(2.0 * chi_t, n - 2));
    let i14 = -2.0 * i4 * cos_pow(chi_t, 2 * (n - 2)) * chi_t.sin().powi(2);
    Ok(PairInvariants::new(i4, i12, i14))
}

/// Nearest-neighbour pair of an Ising chain started all-down.
pub fn ising_pair(n: usize, chi_t: f64) -> Result<XForm> {
    check_n(n)?;
    let k = (n - 1) as f64;
    let sin = chi_t.sin();
    let a = (4.0 * k * (1.0 + (chi_t / 2.0).cos().powi(2)) - sin * sin) / (8.0 * k);
    let b = -(Complex::new(sin, 4.0) * sin) / (8.0 * k);
    let c = sin * sin / (8.0 * k);
    XForm::from_trace(a, b, c)
}

pub fn ising_invariants(n: usize, chi_t: f64) -> Result<PairInvariants> {
    check_n(n)?;
    let k = (n - 1) as f64;
    let i4 = (chi_t / 2.0).cos().powi(4);
    let sin2 = chi_t.sin().powi(2);
    let i12 = i4 * (1.0 - sin2 / (2.0 * k));
    let i14 = -2.0 * i4 * sin2 / (k * k);
    Ok(PairInvariants::new(i4, i12, i14))
}

/// Rotate the phase of `b` to `phase` (unit modulus) with the collective
/// local unitary `diag(1, e^{iφ}) ⊗ diag(1, e^{iφ})`. Invariants are unchanged.
pub fn align_b_phase(x: &XForm, phase: Complex) -> XForm {
    let b = if x.b.norm() > 0.0 { phase / phase.norm() * x.b.norm() } else { x.b };
    XForm { b, ..*x }
}

/// `diag(1, e^{iφ})`.
pub fn phase_gate(phi: f64) -> CMat2 {
    CMat2::new(ONE, ZERO, ZERO, Complex::from_polar(1.0, phi))
}

/// Boundary condition of the Ising chain in the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainBoundary {
    /// Bonds `(i, i+1)` for `i = 1..N` with site `N+1` ≡ site 1.
    Periodic,
    /// Bonds `(i, i+1)` for `i = 1..N−1`.
    Open,
}

/// N-qubit state vector; qubit 1 is the most significant bit, bit value 1 is `|1⟩ = |↓⟩`.
struct Register {
    n: usize,
    amp: Vec<Complex>,
}

impl Register {
    fn all_down(n: usize) -> Self {
        let mut amp = vec![ZERO; 1 << n];
        amp[(1 << n) - 1] = ONE;
        Register { n, amp }
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n - 1 - qubit)
    }

    /// `exp(−iθ σx^p σx^q) = cos θ − i sin θ σx^p σx^q`.
    fn apply_xx(&mut self, p: usize, q: usize, theta: f64) {
        let flip = self.mask(p) | self.mask(q);
        let (c, s) = (Complex::new(theta.cos(), 0.0), Complex::new(0.0, -theta.sin()));
        let old = self.amp.clone();
        for (x, amp) in self.amp.iter_mut().enumerate() {
            *amp = c * old[x] + s * old[x ^ flip];
        }
    }

    /// Reduced state of qubits 1 and 2.
    fn pair_state(&self) -> Result<DensityMatrix> {
        let rest = 1 << (self.n - 2);
        let m = CMat4::from_fn(|p, q| {
            (0..rest).map(|k| self.amp[p * rest + k] * self.amp[q * rest + k].conj()).sum()
        });
        DensityMatrix::new(m)
    }
}

fn check_oracle_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_QUBITS {
        return Err(Error::TooLarge { n, max: ORACLE_MAX_QUBITS });
    }
    check_n(n)
}

/// Exact pair state of an Ising chain, `H = (χ/4) Σ σx^i σx^{i+1}`, from all-down.
pub fn brute_force_ising_pair(n: usize, chi_t: f64, boundary: ChainBoundary) -> Result<DensityMatrix> {
    check_oracle_size(n)?;
    let mut reg = Register::all_down(n);
    let bonds = match boundary {
        ChainBoundary::Periodic => n,
        ChainBoundary::Open => n - 1,
    };
    // the bond terms commute, so the propagator factorises exactly
    for i in 0..bonds {
        reg.apply_xx(i, (i + 1) % n, chi_t / 4.0);
    }
    reg.pair_state()
}

/// Exact pair state of `e^{−iχt Sx²}|↓…↓⟩`.
pub fn brute_force_oat_pair(n: usize, chi_t: f64) -> Result<DensityMatrix> {
    check_oracle_size(n)?;
    let mut reg = Register::all_down(n);
    // Sx² = N/4 + ½ Σ_{i<j} σx^i σx^j; the constant is a global phase
    for i in 0..n {
        for j in (i + 1)..n {
            reg.apply_xx(i, j, chi_t / 2.0);
        }
    }
    reg.pair_state()
}

/// Pair state of `|N/2, M⟩`: equal superposition of all strings with
/// `N/2 + M` qubits up.
pub fn brute_force_dicke_pair(n: usize, m: f64) -> Result<DensityMatrix> {
    check_oracle_size(n)?;
    let two_m = checked_two_m(n, m)?;
    let ups = ((n as i64 + two_m) / 2) as u32;
    let mut reg = Register::all_down(n);
    reg.amp.fill(ZERO);
    let members: Vec<usize> = (0..1usize << n).filter(|x| n as u32 - x.count_ones() == ups).collect();
    let amp = Complex::new(1.0 / (members.len() as f64).sqrt(), 0.0);
    for x in members {
        reg.amp[x] = amp;
    }
    reg.pair_state()
}

/// Exact reduced pair state for `spec` (Ising with a periodic chain).
pub fn brute_force_pair_oracle(spec: &ModelSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    match *spec {
        ModelSpec::Dicke { n, two_m } => brute_force_dicke_pair(n, two_m as f64 / 2.0),
        ModelSpec::Oat { n, chi_t } => brute_force_oat_pair(n, chi_t),
        ModelSpec::Ising { n, chi_t } => brute_force_ising_pair(n, chi_t, ChainBoundary::Periodic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::xform_invariants;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn assert_xform(x: &XForm, a: f64, b: Complex, c: f64, d: f64) {
        assert_abs_diff_eq!(x.a, a, epsilon = 1e-12);
        assert_abs_diff_eq!(x.b.re, b.re, epsilon = 1e-12);
        assert_abs_diff_eq!(x.b.im, b.im, epsilon = 1e-12);
        assert_abs_diff_eq!(x.c, c, epsilon = 1e-12);
        assert_abs_diff_eq!(x.d, d, epsilon = 1e-12);
    }

    #[test]
    fn dicke_examples() {
        assert_xform(&dicke_pair(2, 1.0).unwrap(), 1.0, ZERO, 0.0, 0.0);
        assert_xform(&dicke_pair(2, 0.0).unwrap(), 0.0, ZERO, 0.5, 0.0);
        assert_xform(&dicke_pair(4, 1.0).unwrap(), 0.5, ZERO, 0.25, 0.0);
        let inv = dicke_invariants(4, 1.0).unwrap();
        assert_abs_diff_eq!(inv.i4, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i12, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i14, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i12_minus_i4sq, -0.0625, epsilon = 1e-15);
        let edge = dicke_invariants(2, 1.0).unwrap();
        assert_eq!((edge.i4, edge.i12, edge.i14, edge.i12_minus_i4sq), (1.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn dicke_rejections() {
        assert!(matches!(dicke_pair(4, 0.5), Err(Error::InvalidDicke { .. })));
        assert!(matches!(dicke_pair(4, 3.0), Err(Error::InvalidDicke { .. })));
        assert!(matches!(dicke_pair(1, 0.5), Err(Error::InvalidDicke { .. })));
        assert!(matches!(dicke_pair(4, 0.3), Err(Error::InvalidDicke { .. })));
        assert!(dicke_pair(3, 0.5).is_ok());
        assert!(dicke_pair(3, -1.5).is_ok());
    }

    #[test]
    fn dicke_large_n_trend() {
        let values: Vec<f64> = (8..=1000)
            .step_by(4)
            .map(|n| dicke_invariants(n, n as f64 / 4.0).unwrap().i12_minus_i4sq)
            .collect();
        assert!(values.iter().all(|&v| v < 0.0));
        assert!(values.windows(2).all(|w| w[1].abs() < w[0].abs()));
        // (1/4)(3/4)/(N−1) at fixed M/N = 1/4
        let n = 1000.0;
        assert_abs_diff_eq!(*values.last().unwrap(), -0.1875 / (n - 1.0), epsilon = 1e-15);
    }

    #[test]
    fn oat_examples() {
        assert_xform(&oat_pair(5, 0.0).unwrap(), 0.0, ZERO, 0.0, 1.0);
        let x = oat_pair(3, PI / 3.0).unwrap();
        assert_xform(&x, 0.1875, Complex::new(-0.1875, 3f64.sqrt() / 8.0), 0.1875, 0.4375);
        let two = oat_pair(2, PI / 2.0).unwrap();
        assert_abs_diff_eq!(two.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(two.d, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(two.c, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(two.b.norm(), 0.5, epsilon = 1e-15);

        let inv = oat_invariants(3, PI / 3.0).unwrap();
        assert_abs_diff_eq!(inv.i4, 0.0625, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i12, 0.015625, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i14, -0.0234375, epsilon = 1e-15);
        let zero = oat_invariants(7, 0.0).unwrap();
        assert_eq!((zero.i4, zero.i12, zero.i14), (1.0, 1.0, 0.0));
        let two = oat_invariants(2, PI / 2.0).unwrap();
        assert_abs_diff_eq!(two.i4, 0.0, epsilon = 1e-30);
        assert_abs_diff_eq!(two.i14, 0.0, epsilon = 1e-30);
    }

    #[test]
    fn oat_alternative_exponent_breaks_i14() {
        let x = oat_pair_with(3, PI / 3.0, ImbExponent::NMinusOne).unwrap();
        assert_abs_diff_eq!(x.b.im, 3f64.sqrt() / 16.0, epsilon = 1e-15);
        let closed = oat_invariants(3, PI / 3.0).unwrap();
        assert!((xform_invariants(&x).i14 - closed.i14).abs() > 1e-3);
    }

    #[test]
    fn ising_examples() {
        assert_xform(&ising_pair(4, 0.0).unwrap(), 1.0, ZERO, 0.0, 0.0);
        assert_xform(&ising_pair(3, PI / 2.0).unwrap(), 0.6875, Complex::new(-0.0625, -0.25), 0.0625, 0.1875);
        let x = ising_pair(5, PI).unwrap();
        assert_abs_diff_eq!(x.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(x.d, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(x.c, 0.0, epsilon = 1e-30);
        assert_abs_diff_eq!(x.b.norm(), 0.0, epsilon = 1e-15);

        let inv = ising_invariants(3, PI / 2.0).unwrap();
        assert_abs_diff_eq!(inv.i4, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i12, 0.1875, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.i14, -0.125, epsilon = 1e-15);
        let zero = ising_invariants(3, 0.0).unwrap();
        assert_eq!((zero.i4, zero.i12, zero.i14), (1.0, 1.0, 0.0));
        assert_abs_diff_eq!(ising_invariants(3, PI).unwrap().i4, 0.0, epsilon = 1e-30);
    }

    #[test]
    fn ising_short_chain_is_flagged() {
        let spec = ModelSpec::Ising { n: 2, chi_t: 1.0 };
        assert_eq!(spec.warnings().len(), 1);
        assert!(ModelSpec::Ising { n: 3, chi_t: 1.0 }.warnings().is_empty());
        assert!(ModelSpec::Oat { n: 1, chi_t: 1.0 }.validate().is_err());
        assert!(ModelSpec::Oat { n: 3, chi_t: f64::NAN }.validate().is_err());
    }

    #[test]
    fn oracle_size_limit() {
        let spec = ModelSpec::Oat { n: 7, chi_t: 0.3 };
        assert!(matches!(brute_force_pair_oracle(&spec), Err(Error::TooLarge { n: 7, .. })));
    }

    #[test]
    fn oat_two_qubit_oracle_matches_hand_solution() {
        // cos(χt/2)|11⟩ − i sin(χt/2)|00⟩
        for chi_t in [0.0, 0.4, 1.3, PI / 2.0, 2.9] {
            let rho = brute_force_oat_pair(2, chi_t).unwrap();
            let (c, s) = ((chi_t / 2.0).cos(), (chi_t / 2.0).sin());
            let psi = [Complex::new(0.0, -s), ZERO, ZERO, Complex::new(c, 0.0)];
            let want = DensityMatrix::pure(psi).unwrap();
            assert!((rho.matrix() - want.matrix()).camax() < 1e-12);
        }
    }

    #[test]
    fn dicke_oracle_matches_closed_form() {
        for n in 2..=6 {
            for two_m in (-(n as i64)..=n as i64).step_by(2) {
                let m = two_m as f64 / 2.0;
                let oracle = brute_force_dicke_pair(n, m).unwrap();
                let closed = dicke_pair(n, m).unwrap().density();
                assert!((oracle.matrix() - closed.matrix()).camax() < 1e-12, "N={n} M={m}");
            }
        }
    }
}
