//! Partial transpose, the PPT test, and invariant sign criteria for
//! exchange-symmetric states.
//!
//! For a separable symmetric state `ρ = Σ p_w ρ_w⊗ρ_w` with `I4 ≠ 0` the
//! quantities `I12`, `I14` and `I12 − I4²` are non-negative, so a negative
//! value of any of them witnesses entanglement. PPT is exact for two qubits
//! and serves as ground truth.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{symmetric_six, xform_invariants, SymmetricSix};
use crate::qmat::{CMat4, HermitianSpectrum, RVec3};
use crate::sampling;
use crate::states::{bloch_decompose, is_symmetric, product_state, symmetry_deviation, DensityMatrix, XForm};
use crate::tol;

/// Transpose on the second qubit: `ρ[2i+j][2k+l] → ρ[2i+l][2k+j]`.
pub fn partial_transpose(rho: &DensityMatrix) -> CMat4 {
    partial_transpose_matrix(rho.matrix())
}

pub fn partial_transpose_matrix(m: &CMat4) -> CMat4 {
    CMat4::from_fn(|row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptResult {
    pub min_eig: f64,
    pub separable: bool,
}

/// Peres test: separable iff the smallest eigenvalue of `ρ^{T_B}` is `≥ −tol`.
pub fn ppt_check(rho: &DensityMatrix, tol: f64) -> PptResult {
    let ev = partial_transpose(rho)
        .hermitian_eigenvalues(f64::INFINITY)
        .expect("finite Hermitian by construction");
    PptResult { min_eig: ev[0], separable: ev[0] >= -tol }
}

/// Closed-form spectrum of the partially transposed X-form in the order
/// `λ1, λ2 = ((a+d) ∓ √((a−d)² + 4c²))/2`, `λ3, λ4 = c ∓ |b|`.
pub fn xform_pt_eigenvalues(x: &XForm) -> [f64; 4] {
    let root = ((x.a - x.d).powi(2) + 4.0 * x.c * x.c).sqrt();
    let b = x.b.norm();
    [0.5 * ((x.a + x.d) - root), 0.5 * ((x.a + x.d) + root), x.c - b, x.c + b]
}

/// A sign condition on the invariants that witnesses entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Criterion {
    #[serde(rename = "I12_negative")]
    I12Negative,
    #[serde(rename = "I14_negative")]
    I14Negative,
    #[serde(rename = "I12_minus_I4sq_negative")]
    I12MinusI4SqNegative,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::I12Negative => "I12_negative",
            Criterion::I14Negative => "I14_negative",
            Criterion::I12MinusI4SqNegative => "I12_minus_I4sq_negative",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The criteria that fire (value `< −tol`). Each is a sufficient witness of
/// entanglement; an empty result makes no claim.
///
/// Requires `|I4| > tol`; otherwise fails with [`Error::I4Zero`].
pub fn invariant_criteria(six: &SymmetricSix, tol: f64) -> Result<Vec<Criterion>> {
    if !(six.i4.abs() > tol) {
        return Err(Error::I4Zero);
    }
    let mut fired = Vec::new();
    if six.i12 < -tol {
        fired.push(Criterion::I12Negative);
    }
    if six.i14 < -tol {
        fired.push(Criterion::I14Negative);
    }
    if six.i12_minus_i4_sq() < -tol {
        fired.push(Criterion::I12MinusI4SqNegative);
    }
    Ok(fired)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Separable,
    Entangled,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Separable => "Separable",
            Verdict::Entangled => "Entangled",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub criteria_fired: Vec<Criterion>,
    pub ppt_min_eigenvalue: f64,
    pub i4_zero_fallback_used: bool,
    pub invariants: SymmetricSix,
}

/// Classify a symmetric state. The verdict comes from PPT; the invariant
/// criteria are evaluated alongside and must agree with it.
pub fn classify(rho: &DensityMatrix, tol: f64) -> Result<Classification> {
    if !is_symmetric(rho, tol.max(tol::HERMITICITY)) {
        return Err(Error::NotSymmetricState(symmetry_deviation(rho)));
    }
    let six = symmetric_six(&bloch_decompose(rho))?;
    let ppt = ppt_check(rho, tol);
    let (criteria_fired, fallback) = match invariant_criteria(&six, tol) {
        Ok(fired) => (fired, false),
        Err(Error::I4Zero) => (Vec::new(), true),
        Err(e) => return Err(e),
    };
    let verdict = if ppt.separable { Verdict::Separable } else { Verdict::Entangled };
    if !criteria_fired.is_empty() && verdict == Verdict::Separable {
        return Err(Error::InconsistentVerdict {
            fired: criteria_fired.iter().map(|c| c.name().to_string()).collect(),
            ppt_min: ppt.min_eig,
        });
    }
    Ok(Classification {
        verdict,
        criteria_fired,
        ppt_min_eigenvalue: ppt.min_eig,
        i4_zero_fallback_used: fallback,
        invariants: six,
    })
}

/// How single-qubit Bloch vectors of a separable ensemble are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochSampling {
    /// Pure product terms, `|s_w| = 1`; the mixture lies on the triplet subspace.
    Sphere,
    /// Uniform in the unit ball; the mixture is SWAP-invariant but generally
    /// carries singlet weight.
    Ball,
}

/// `ρ = Σ_w p_w ρ_w⊗ρ_w` with `ρ_w = (I + s_w·σ)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableEnsemble {
    pub weights: Vec<f64>,
    pub bloch_vectors: Vec<RVec3>,
}

impl SeparableEnsemble {
    pub fn new(weights: Vec<f64>, bloch_vectors: Vec<RVec3>) -> Result<Self> {
        if weights.is_empty() || weights.len() != bloch_vectors.len() {
            return Err(Error::InvalidEnsemble(format!(
                "{} weights for {} Bloch vectors",
                weights.len(),
                bloch_vectors.len()
            )));
        }
        if weights.iter().any(|&p| !(p > 0.0)) {
            return Err(Error::InvalidEnsemble("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        if let Some(v) = bloch_vectors.iter().find(|v| v.norm() > 1.0 + 1e-12) {
            return Err(Error::InvalidEnsemble(format!("|s_w| = {} exceeds 1", v.norm())));
        }
        Ok(SeparableEnsemble { weights, bloch_vectors })
    }

    /// Flat-simplex weights (normalised exponentials) and Bloch vectors drawn per `mode`.
    pub fn random<G: Rng + ?Sized>(n_terms: usize, mode: BlochSampling, rng: &mut G) -> Self {
        assert!(n_terms >= 1, "ensemble needs at least one term");
        let raw: Vec<f64> = (0..n_terms).map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-300).collect();
        let total: f64 = raw.iter().sum();
        let weights = raw.iter().map(|x| x / total).collect();
        let bloch_vectors = (0..n_terms)
            .map(|_| match mode {
                BlochSampling::Sphere => sampling::unit_vector(rng),
                BlochSampling::Ball => sampling::ball_vector(rng),
            })
            .collect();
        SeparableEnsemble { weights, bloch_vectors }
    }

    pub fn density(&self) -> DensityMatrix {
        let mut m = CMat4::zeros();
        for (p, s) in self.weights.iter().zip(&self.bloch_vectors) {
            m += product_state(s, s) * crate::qmat::Complex::new(*p, 0.0);
        }
        DensityMatrix::hermitian_part(m)
    }

    /// `s = Σ p_w s_w`.
    pub fn mean_spin(&self) -> RVec3 {
        self.weights.iter().zip(&self.bloch_vectors).map(|(p, s)| s * *p).sum()
    }

    /// `t_ij = Σ p_w s_wi s_wj`.
    pub fn correlation(&self) -> crate::qmat::RMat3 {
        self.weights.iter().zip(&self.bloch_vectors).map(|(p, s)| s * s.transpose() * *p).sum()
    }
}

/// A random separable state on the triplet subspace, built from pure product terms.
pub fn sample_separable_symmetric<G: Rng + ?Sized>(
    n_terms: usize,
    rng: &mut G,
) -> (DensityMatrix, SeparableEnsemble) {
    let ensemble = SeparableEnsemble::random(n_terms, BlochSampling::Sphere, rng);
    (ensemble.density(), ensemble)
}

/// Check the X-form identities `I12 − I4² = (a−d)²((1−4c) − (a−d)²)` and
/// `I14 = 8(a−d)²(c+|b|)λ3` at the level of signs, with zero band `tol`.
///
/// Fails with [`Error::DegenerateHypothesis`] when `(a−d)² ≤ tol`, where the
/// invariants vanish regardless of the PT spectrum. When `c + |b| ≤ tol`
/// both `I14` and `λ3` must lie in the zero band.
pub fn xform_equivalence_check(x: &XForm, tol: f64) -> Result<bool> {
    let ad_sq = (x.a - x.d).powi(2);
    let c_plus_b = x.c + x.b.norm();
    if !(ad_sq > tol) {
        return Err(Error::DegenerateHypothesis { ad_sq, c_plus_b });
    }
    let six = xform_invariants(x);
    let lambda = xform_pt_eigenvalues(x);
    let outer = tol::sign_band(six.i12_minus_i4_sq() / ad_sq, tol)
        == tol::sign_band((1.0 - 4.0 * x.c) - ad_sq, tol);
    let middle = if c_plus_b > tol {
        tol::sign_band(six.i14 / (8.0 * ad_sq * c_plus_b), tol) == tol::sign_band(lambda[2], tol)
    } else {
        tol::sign_band(six.i14, tol) == 0 && tol::sign_band(lambda[2], tol) == 0
    };
    Ok(outer && middle)
}
