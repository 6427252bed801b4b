//! Two-qubit density matrices and their Bloch (Fano) parametrisation.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩`; qubit 1 is the left factor.

use crate::error::{Error, Result};
use crate::qmat::{
    self, all_finite, hermiticity_deviation, kron, pauli, CMat2, CMat4, Complex, HermitianSpectrum,
    RMat3, RVec3, ONE, ZERO,
};
use crate::tol;

/// A validated two-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(CMat4);

impl DensityMatrix {
    /// Validate `m` with the default tolerances.
    pub fn new(m: CMat4) -> Result<Self> {
        Self::with_psd_tolerance(m, tol::PSD)
    }

    /// Validate `m`, accepting eigenvalues down to `min_eig`.
    pub fn with_psd_tolerance(m: CMat4, min_eig: f64) -> Result<Self> {
        if !all_finite(&m) {
            return Err(Error::NonFinite);
        }
        let dev = hermiticity_deviation(&m);
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian(dev));
        }
        let trace = m.trace();
        if (trace - ONE).norm() > tol::TRACE {
            return Err(Error::InvalidTrace(trace.re));
        }
        let rho = Self::hermitian_part(m);
        let lowest = rho.min_eigenvalue();
        if lowest < min_eig {
            return Err(Error::NotPositive(lowest));
        }
        Ok(rho)
    }

    /// Wrap a matrix known to be a state up to rounding (e.g. the image of a
    /// state under a unitary).
    pub(crate) fn hermitian_part(m: CMat4) -> Self {
        DensityMatrix((m + m.adjoint()) * Complex::new(0.5, 0.0))
    }

    /// `|ψ⟩⟨ψ|` for a normalised `ψ`.
    pub fn pure(psi: [Complex; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(psi);
        Self::new(v * v.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(CMat4::identity() * Complex::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn into_matrix(self) -> CMat4 {
        self.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        // Hermitian by construction
        self.0.hermitian_eigenvalues(f64::INFINITY).map(|ev| ev[0]).unwrap_or(f64::NAN)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.0.hermitian_eigenvalues(f64::INFINITY).unwrap_or([f64::NAN; 4])
    }
}

/// The `(s, r, T)` parametrisation
/// `ρ = ¼(I⊗I + s·σ⊗I + I⊗r·σ + Σ t_ij σ_i⊗σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    /// Average spin of qubit 1.
    pub s: RVec3,
    /// Average spin of qubit 2.
    pub r: RVec3,
    /// Correlation matrix `t_ij = Tr[ρ σ_i⊗σ_j]`.
    pub t: RMat3,
}

impl BlochForm {
    pub fn new(s: RVec3, r: RVec3, t: RMat3) -> Self {
        BlochForm { s, r, t }
    }

    /// Parameters after local rotations: `s' = O1 s`, `r' = O2 r`, `T' = O1 T O2ᵀ`.
    pub fn rotated(&self, o1: &RMat3, o2: &RMat3) -> Self {
        BlochForm { s: o1 * self.s, r: o2 * self.r, t: o1 * self.t * o2.transpose() }
    }

    /// Largest violation of `r = s`, `T = Tᵀ`, `Tr T = 1`.
    pub fn symmetric_constraint_deviation(&self) -> f64 {
        let spins = (self.r - self.s).amax();
        let transpose = (self.t - self.t.transpose()).amax();
        let trace = (self.t.trace() - 1.0).abs();
        spins.max(transpose).max(trace)
    }

    pub fn satisfies_symmetric_constraints(&self, tol: f64) -> bool {
        self.symmetric_constraint_deviation() <= tol
    }
}

fn pauli_or_identity(axis: Option<usize>) -> CMat2 {
    axis.map_or_else(qmat::identity2, pauli)
}

/// `σ_a ⊗ σ_b`, with `None` standing for the identity.
pub fn pauli_product(a: Option<usize>, b: Option<usize>) -> CMat4 {
    kron(&pauli_or_identity(a), &pauli_or_identity(b))
}

fn expectation(rho: &CMat4, op: &CMat4) -> f64 {
    (rho * op).trace().re
}

pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    let m = rho.matrix();
    let s = RVec3::from_fn(|i, _| expectation(m, &pauli_product(Some(i), None)));
    let r = RVec3::from_fn(|i, _| expectation(m, &pauli_product(None, Some(i))));
    let t = RMat3::from_fn(|i, j| expectation(m, &pauli_product(Some(i), Some(j))));
    BlochForm { s, r, t }
}

/// The operator described by `f`, without a positivity check.
pub fn bloch_operator(f: &BlochForm) -> CMat4 {
    let re = |x: f64| Complex::new(x, 0.0);
    let mut m = CMat4::identity();
    for i in 0..3 {
        m += pauli_product(Some(i), None) * re(f.s[i]);
        m += pauli_product(None, Some(i)) * re(f.r[i]);
        for j in 0..3 {
            m += pauli_product(Some(i), Some(j)) * re(f.t[(i, j)]);
        }
    }
    m * re(0.25)
}

/// Rebuild `ρ` from its Bloch form. Fails with [`Error::NotPositive`] when
/// the parameters describe no physical state.
pub fn bloch_compose(f: &BlochForm) -> Result<DensityMatrix> {
    let rho = DensityMatrix::hermitian_part(bloch_operator(f));
    let lowest = rho.min_eigenvalue();
    if lowest < tol::PSD {
        return Err(Error::NotPositive(lowest));
    }
    Ok(rho)
}

/// The SWAP permutation `Π|ij⟩ = |ji⟩`.
pub fn swap() -> CMat4 {
    let mut p = CMat4::zeros();
    p[(0, 0)] = ONE;
    p[(1, 2)] = ONE;
    p[(2, 1)] = ONE;
    p[(3, 3)] = ONE;
    p
}

/// `max(‖Πρ − ρ‖, ‖ρΠ − ρ‖)` entrywise; zero exactly for triplet-supported states.
pub fn symmetry_deviation(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let p = swap();
    let left = (p * m - m).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let right = (m * p - m).iter().map(|z| z.norm()).fold(0.0, f64::max);
    left.max(right)
}

/// True iff `ρ` lives on the symmetric (triplet) subspace: `Πρ = ρΠ = ρ`.
///
/// A SWAP-commuting state with singlet weight is not symmetric in this sense.
pub fn is_symmetric(rho: &DensityMatrix, tol: f64) -> bool {
    symmetry_deviation(rho) <= tol
}

/// The X-form parameters:
///
/// ```text
/// ⎡ a  0  0  b ⎤
/// ⎢ 0  c  c  0 ⎥
/// ⎢ 0  c  c  0 ⎥
/// ⎣ b* 0  0  d ⎦
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XForm {
    pub a: f64,
    pub b: Complex,
    pub c: f64,
    pub d: f64,
}

impl XForm {
    pub fn new(a: f64, b: Complex, c: f64, d: f64) -> Result<Self> {
        let x = XForm { a, b, c, d };
        x.validate()?;
        Ok(x)
    }

    /// Fill in `d = 1 − a − 2c`.
    pub fn from_trace(a: f64, b: Complex, c: f64) -> Result<Self> {
        Self::new(a, b, c, 1.0 - a - 2.0 * c)
    }

    pub fn validate(&self) -> Result<()> {
        let XForm { a, b, c, d } = *self;
        if ![a, b.re, b.im, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let floor = -1e-12;
        if a < floor || c < floor || d < floor {
            return Err(Error::InvalidXForm(format!(
                "a = {a}, c = {c}, d = {d} must be non-negative"
            )));
        }
        let trace = a + d + 2.0 * c;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidTrace(trace));
        }
        if a * d < b.norm_sqr() - 1e-10 {
            return Err(Error::NotPositive(
                0.5 * ((a + d) - ((a - d).powi(2) + 4.0 * b.norm_sqr()).sqrt()),
            ));
        }
        Ok(())
    }

    pub fn matrix(&self) -> CMat4 {
        let re = |x: f64| Complex::new(x, 0.0);
        let mut m = CMat4::zeros();
        m[(0, 0)] = re(self.a);
        m[(0, 3)] = self.b;
        m[(3, 0)] = self.b.conj();
        m[(3, 3)] = re(self.d);
        for i in 1..3 {
            for j in 1..3 {
                m[(i, j)] = re(self.c);
            }
        }
        m
    }

    pub fn density(&self) -> DensityMatrix {
        // validated parameters give a PSD matrix up to rounding
        DensityMatrix::hermitian_part(self.matrix())
    }

    pub fn bloch(&self) -> BlochForm {
        bloch_decompose(&self.density())
    }
}

const X_PATTERN_ZEROS: [(usize, usize); 8] =
    [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (2, 3), (3, 1), (3, 2)];

/// Read off the X-form parameters, failing with [`Error::NotXForm`] when any
/// entry outside the pattern (or a middle-block mismatch) exceeds `tol`.
pub fn xform_extract(rho: &DensityMatrix, tol: f64) -> Result<XForm> {
    let m = rho.matrix();
    let off_pattern = X_PATTERN_ZEROS.iter().map(|&(i, j)| m[(i, j)].norm());
    let middle = [(m[(1, 1)] - m[(1, 2)]).norm(), (m[(1, 1)] - m[(2, 2)]).norm()];
    let worst = off_pattern.chain(middle).fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::NotXForm(worst));
    }
    Ok(XForm { a: m[(0, 0)].re, b: m[(0, 3)], c: m[(1, 1)].re, d: m[(3, 3)].re })
}

/// `(U1⊗U2) ρ (U1⊗U2)†`.
pub fn apply_local_unitary(rho: &DensityMatrix, u1: &CMat2, u2: &CMat2) -> Result<DensityMatrix> {
    qmat::check_unitary(u1)?;
    qmat::check_unitary(u2)?;
    let u = kron(u1, u2);
    Ok(DensityMatrix::hermitian_part(u * rho.matrix() * u.adjoint()))
}

/// Product state `ρ1 ⊗ ρ2` of two single-qubit Bloch vectors.
pub fn product_state(s1: &RVec3, s2: &RVec3) -> CMat4 {
    kron(&qmat::qubit_from_bloch(s1), &qmat::qubit_from_bloch(s2))
}

/// Computational basis projector `|k⟩⟨k|`.
pub fn basis_projector(k: usize) -> DensityMatrix {
    let mut m = CMat4::zeros();
    m[(k, k)] = ONE;
    DensityMatrix(m)
}

/// `(|01⟩ ± |10⟩)/√2` projector; `+` is the symmetric Bell state, `−` the singlet.
pub fn bell_01_10(symmetric: bool) -> DensityMatrix {
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let sign = if symmetric { h } else { -h };
    DensityMatrix::pure([ZERO, h, sign, ZERO]).expect("normalised")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn max_diff(a: &CMat4, b: &CMat4) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn decompose_product_eigenstate() {
        let f = bloch_decompose(&basis_projector(0));
        assert_abs_diff_eq!(f.s, RVec3::z(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.r, RVec3::z(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.t, RMat3::from_diagonal(&RVec3::z()), epsilon = 1e-15);
    }

    #[test]
    fn decompose_symmetric_bell() {
        let f = bloch_decompose(&bell_01_10(true));
        assert_abs_diff_eq!(f.s, RVec3::zeros(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.r, RVec3::zeros(), epsilon = 1e-15);
        let want = RMat3::from_diagonal(&RVec3::new(1.0, 1.0, -1.0));
        assert_abs_diff_eq!(f.t, want, epsilon = 1e-15);
    }

    #[test]
    fn decompose_maximally_mixed() {
        let f = bloch_decompose(&DensityMatrix::maximally_mixed());
        assert_eq!(f.s, RVec3::zeros());
        assert_eq!(f.r, RVec3::zeros());
        assert_eq!(f.t, RMat3::zeros());
    }

    #[test]
    fn compose_inverts_examples() {
        let mixed = bloch_compose(&BlochForm::new(RVec3::zeros(), RVec3::zeros(), RMat3::zeros()))
            .unwrap();
        assert!(max_diff(mixed.matrix(), DensityMatrix::maximally_mixed().matrix()) < 1e-15);
        let f = BlochForm::new(RVec3::z(), RVec3::z(), RMat3::from_diagonal(&RVec3::z()));
        let rho = bloch_compose(&f).unwrap();
        assert!(max_diff(rho.matrix(), basis_projector(0).matrix()) < 1e-15);
    }

    #[test]
    fn compose_rejects_unphysical() {
        let f = BlochForm::new(RVec3::zeros(), RVec3::zeros(), RMat3::identity());
        // ¼(I + Σσ_i⊗σ_i) has the singlet eigenvalue ¼(1 − 3)
        let lowest = bloch_operator(&f).hermitian_eigenvalues(1e-12).unwrap()[0];
        assert_abs_diff_eq!(lowest, -0.5, epsilon = 1e-12);
        match bloch_compose(&f) {
            Err(Error::NotPositive(v)) => assert!(v < -1e-9),
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let mut m = CMat4::identity() * Complex::new(0.225, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidTrace(_))));
        m = *basis_projector(0).matrix();
        m[(0, 1)] = Complex::new(0.0, 0.1);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        let mut neg = CMat4::zeros();
        neg[(0, 0)] = Complex::new(1.5, 0.0);
        neg[(1, 1)] = Complex::new(-0.5, 0.0);
        assert!(matches!(DensityMatrix::new(neg), Err(Error::NotPositive(_))));
        neg[(1, 1)] = Complex::new(f64::NAN, 0.0);
        assert!(matches!(DensityMatrix::new(neg), Err(Error::NonFinite)));
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&bell_01_10(true), 1e-10));
        assert!(!is_symmetric(&bell_01_10(false), 1e-10));
        assert!(!is_symmetric(&basis_projector(1), 1e-10));
        // SWAP-commuting but with singlet weight
        assert!(!is_symmetric(&DensityMatrix::maximally_mixed(), 1e-10));
    }

    #[test]
    fn xform_examples() {
        let x = xform_extract(&bell_01_10(true), 1e-12).unwrap();
        assert_abs_diff_eq!(x.a, 0.0);
        assert_abs_diff_eq!(x.d, 0.0);
        assert_abs_diff_eq!(x.c, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(x.b.norm(), 0.0);
        assert!(matches!(xform_extract(&basis_projector(1), 1e-12), Err(Error::NotXForm(m)) if (m - 1.0).abs() < 1e-15));
    }

    #[test]
    fn xform_rejections() {
        assert!(XForm::from_trace(0.5, Complex::new(0.6, 0.0), 0.0).is_err());
        assert!(XForm::from_trace(0.5, ZERO, 0.3).is_err());
        assert!(XForm::new(0.5, ZERO, 0.25, 0.5).is_err());
        assert!(XForm::from_trace(0.5, Complex::new(0.0, 0.5), 0.0).is_ok());
    }

    #[test]
    fn xform_bloch_structure() {
        let x = XForm::from_trace(0.3, Complex::new(0.1, -0.2), 0.15).unwrap();
        let f = x.bloch();
        assert_abs_diff_eq!(f.s, RVec3::new(0.0, 0.0, x.a - x.d), epsilon = 1e-15);
        assert_abs_diff_eq!(f.r, f.s, epsilon = 1e-15);
        assert_abs_diff_eq!(f.t, f.t.transpose(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.t.trace(), 1.0, epsilon = 1e-15);
        let back = xform_extract(&x.density(), 1e-14).unwrap();
        assert_abs_diff_eq!(back.a, x.a);
        assert_abs_diff_eq!(back.c, x.c);
        assert_abs_diff_eq!(back.d, x.d);
        assert_eq!(back.b, x.b);
    }

    #[test]
    fn bit_flip() {
        let flip = pauli(0) * qmat::I;
        let out = apply_local_unitary(&basis_projector(0), &flip, &flip).unwrap();
        assert!(max_diff(out.matrix(), basis_projector(3).matrix()) < 1e-15);
        let same =
            apply_local_unitary(&bell_01_10(true), &qmat::identity2(), &qmat::identity2()).unwrap();
        assert_eq!(same, bell_01_10(true));
        let not_unitary = qmat::identity2() * Complex::new(1.1, 0.0);
        assert!(matches!(
            apply_local_unitary(&bell_01_10(true), &not_unitary, &flip),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn local_unitary_rotates_bloch_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let rho = crate::sampling::random_density(&mut rng);
            let (u1, u2) = (qmat::haar_su2(&mut rng), qmat::haar_su2(&mut rng));
            let moved = apply_local_unitary(&rho, &u1, &u2).unwrap();
            assert_abs_diff_eq!(moved.matrix().trace().re, 1.0, epsilon = 1e-12);
            let (o1, o2) = (qmat::su2_to_so3(&u1).unwrap(), qmat::su2_to_so3(&u2).unwrap());
            let want = bloch_decompose(&rho).rotated(&o1, &o2);
            let got = bloch_decompose(&moved);
            assert_abs_diff_eq!(got.s, want.s, epsilon = 1e-10);
            assert_abs_diff_eq!(got.r, want.r, epsilon = 1e-10);
            assert_abs_diff_eq!(got.t, want.t, epsilon = 1e-10);
        }
    }

    #[test]
    fn collective_unitary_keeps_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let rho = crate::sampling::random_symmetric(&mut rng);
            assert!(is_symmetric(&rho, 1e-12));
            let u = qmat::haar_su2(&mut rng);
            assert!(is_symmetric(&apply_local_unitary(&rho, &u, &u).unwrap(), 1e-10));
        }
    }
}
