//! Seeded random generators for test ensembles.
//!
//! All samplers take a caller-owned random source; none hold state.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Matrix3, Matrix4x3, SMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qmat::{CMat4, Complex, RVec3, ONE, ZERO};
use crate::states::{DensityMatrix, XForm};

fn ginibre<const R: usize, const C: usize, G: Rng + ?Sized>(rng: &mut G) -> SMatrix<Complex, R, C> {
    SMatrix::from_fn(|_, _| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Uniformly distributed direction on the unit sphere.
pub fn unit_vector<G: Rng + ?Sized>(rng: &mut G) -> RVec3 {
    loop {
        let v = RVec3::from_fn(|_, _| rng.sample(StandardNormal));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Uniformly distributed point in the unit ball.
pub fn ball_vector<G: Rng + ?Sized>(rng: &mut G) -> RVec3 {
    unit_vector(rng) * rng.random::<f64>().cbrt()
}

/// Random full-rank two-qubit state `GG†/Tr(GG†)` from a complex Ginibre `G`.
pub fn random_density<G: Rng + ?Sized>(rng: &mut G) -> DensityMatrix {
    let g: CMat4 = ginibre(rng);
    let m = g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::hermitian_part(m / tr)
}

/// Isometry from the triplet space onto `|00⟩, (|01⟩+|10⟩)/√2, |11⟩`.
pub fn triplet_isometry() -> Matrix4x3<Complex> {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    Matrix4x3::new(ONE, ZERO, ZERO, ZERO, h, ZERO, ZERO, h, ZERO, ZERO, ZERO, ONE)
}

/// Embed a 3×3 state on the triplet space as a symmetric two-qubit state.
pub fn embed_triplet(sigma: &Matrix3<Complex>) -> DensityMatrix {
    let v = triplet_isometry();
    let tr = sigma.trace();
    DensityMatrix::hermitian_part(v * (sigma / tr) * v.adjoint())
}

/// Random state on the triplet subspace with random rank 1, 2 or 3.
pub fn random_symmetric<G: Rng + ?Sized>(rng: &mut G) -> DensityMatrix {
    let rank = rng.random_range(1..=3);
    let mut g: Matrix3<Complex> = ginibre(rng);
    for col in rank..3 {
        g.column_mut(col).fill(ZERO);
    }
    embed_triplet(&(g * g.adjoint()))
}

/// Random valid X-form: `c ∈ [0, ½]`, the rest split between `a` and `d`,
/// `|b| ≤ √(ad)` with uniform phase.
pub fn random_xform<G: Rng + ?Sized>(rng: &mut G) -> XForm {
    let c = 0.5 * rng.random::<f64>();
    let a = (1.0 - 2.0 * c) * rng.random::<f64>();
    let d = 1.0 - a - 2.0 * c;
    let modulus = (a * d).max(0.0).sqrt() * rng.random::<f64>();
    let b = Complex::from_polar(modulus, 2.0 * PI * rng.random::<f64>());
    XForm::new(a, b, c, d).expect("sampled X-form parameters are valid")
}
