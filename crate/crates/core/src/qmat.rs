//! Small dense matrices: the Pauli basis, Kronecker products, Hermitian
//! spectra, Haar-random SU(2) and the SU(2) → SO(3) covering map.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tol;

pub type Complex = num_complex::Complex64;
pub type CMat2 = Matrix2<Complex>;
pub type CMat4 = Matrix4<Complex>;
pub type RMat3 = Matrix3<f64>;
pub type RVec3 = Vector3<f64>;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

pub fn identity2() -> CMat2 {
    CMat2::identity()
}

/// Pauli matrix `σx`, `σy`, `σz` for `axis` 0, 1, 2.
pub fn pauli(axis: usize) -> CMat2 {
    match axis {
        0 => CMat2::new(ZERO, ONE, ONE, ZERO),
        1 => CMat2::new(ZERO, -I, I, ZERO),
        2 => CMat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli axis out of range: {axis}"),
    }
}

/// `A ⊗ B`, with block `(i, j)` equal to `A[i][j]·B`.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    CMat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Largest entry magnitude of `m - m†`.
pub fn hermiticity_deviation<const D: usize>(
    m: &nalgebra::SMatrix<Complex, D, D>,
) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry magnitude of `UU† − I`.
pub fn unitarity_deviation<const D: usize>(u: &nalgebra::SMatrix<Complex, D, D>) -> f64 {
    let id = nalgebra::SMatrix::<Complex, D, D>::identity();
    (u * u.adjoint() - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn all_finite<const R: usize, const C: usize>(m: &nalgebra::SMatrix<Complex, R, C>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn check_unitary(u: &CMat2) -> Result<()> {
    let dev = unitarity_deviation(u);
    if !(dev <= tol::UNITARITY) {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// Matrices with a real spectrum obtainable by the fixed-size routines here.
pub trait HermitianSpectrum {
    type Spectrum;

    /// Eigenvalues sorted ascending. Fails with [`Error::NotHermitian`] when
    /// `‖M − M†‖_max > tol`.
    fn hermitian_eigenvalues(&self, tol: f64) -> Result<Self::Spectrum>;
}

/// Ascending eigenvalues of a 4×4 Hermitian or 3×3 real symmetric matrix.
pub fn hermitian_eigenvalues<M: HermitianSpectrum>(m: &M, tol: f64) -> Result<M::Spectrum> {
    m.hermitian_eigenvalues(tol)
}

impl HermitianSpectrum for CMat4 {
    type Spectrum = [f64; 4];

    fn hermitian_eigenvalues(&self, tol: f64) -> Result<[f64; 4]> {
        if !all_finite(self) {
            return Err(Error::NonFinite);
        }
        let dev = hermiticity_deviation(self);
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        let diag = jacobi_hermitian(self);
        let mut ev = diag;
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }
}

impl HermitianSpectrum for RMat3 {
    type Spectrum = [f64; 3];

    fn hermitian_eigenvalues(&self, tol: f64) -> Result<[f64; 3]> {
        if !self.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dev = (self - self.transpose()).amax();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        Ok(symmetric3_eigenvalues(self))
    }
}

/// Cyclic complex Jacobi sweeps; returns the diagonal after convergence.
fn jacobi_hermitian(m: &CMat4) -> [f64; 4] {
    // symmetrise so round-off in the input does not bias the diagonal
    let mut a = (m + m.adjoint()) * Complex::new(0.5, 0.0);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return [0.0; 4];
    }
    for _sweep in 0..64 {
        let off: f64 = (0..4)
            .flat_map(|p| (0..4).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= 1e-300 {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) · [[c, s], [-s, c]] on rows/cols (p, q)
                let mut u = CMat4::identity();
                u[(p, p)] = Complex::new(c, 0.0);
                u[(p, q)] = Complex::new(s, 0.0);
                u[(q, p)] = -phase.conj() * s;
                u[(q, q)] = phase.conj() * c;
                a = u.adjoint() * a * u;
            }
        }
    }
    [a[(0, 0)].re, a[(1, 1)].re, a[(2, 2)].re, a[(3, 3)].re]
}

/// 3×3 real symmetric spectrum, ascending. The trigonometric closed form
/// gives the isolated eigenvalue; the remaining pair comes from the 2×2 block
/// on its orthogonal complement, which stays accurate at a double root.
fn symmetric3_eigenvalues(a: &RMat3) -> [f64; 3] {
    let a = (a + a.transpose()) * 0.5;
    let mean = a.trace() / 3.0;
    let k = a - RMat3::identity() * mean;
    let p = (k.iter().map(|x| x * x).sum::<f64>() / 6.0).max(0.0);
    if p <= 1e-300 {
        return [mean; 3];
    }
    let sp = p.sqrt();
    let half_det = (k / sp).determinant() / 2.0;
    let phi = half_det.clamp(-1.0, 1.0).acos() / 3.0;
    // the root farthest from the other two
    let isolated = if half_det >= 0.0 {
        mean + 2.0 * sp * phi.cos()
    } else {
        mean + 2.0 * sp * (phi + 2.0 * PI / 3.0).cos()
    };

    let shifted = a - RMat3::identity() * isolated;
    let (r0, r1, r2) = (
        shifted.row(0).transpose(),
        shifted.row(1).transpose(),
        shifted.row(2).transpose(),
    );
    let v = [r0.cross(&r1), r0.cross(&r2), r1.cross(&r2)]
        .into_iter()
        .max_by(|x, y| x.norm_squared().total_cmp(&y.norm_squared()))
        .expect("three candidates");
    let v = v.normalize();
    let seed = if v.x.abs() < 0.6 { RVec3::x() } else { RVec3::y() };
    let u = (seed - v * v.dot(&seed)).normalize();
    let w = v.cross(&u);
    let (bp, bq, br) = ((a * u).dot(&u), (a * w).dot(&u), (a * w).dot(&w));
    let centre = 0.5 * (bp + br);
    let radius = (0.5 * (bp - br)).hypot(bq);

    let mut ev = [isolated, centre - radius, centre + radius];
    ev.sort_by(f64::total_cmp);
    ev
}

/// Real roots of `λ³ − e1·λ² + e2·λ − e3`, descending, by the trigonometric
/// method. `None` when the discriminant is below `-disc_tol`.
pub fn cubic_real_roots(e1: f64, e2: f64, e3: f64, disc_tol: f64) -> Option<[f64; 3]> {
    // λ = x + e1/3 gives x³ + p·x + q
    let shift = e1 / 3.0;
    let p = e2 - e1 * e1 / 3.0;
    let q = -2.0 * e1.powi(3) / 27.0 + e1 * e2 / 3.0 - e3;
    let disc = -(4.0 * p.powi(3) + 27.0 * q * q);
    if disc < -disc_tol || !disc.is_finite() {
        return None;
    }
    if p.abs() <= 1e-14 {
        let x = (-q).cbrt();
        return Some([x + shift; 3]);
    }
    if p > 0.0 {
        // only a degenerate (disc ≈ 0) case reaches here
        let x = (-q).cbrt();
        return Some([x + shift, x + shift, x + shift]);
    }
    let amp = 2.0 * (-p / 3.0).sqrt();
    let mut arg = (3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt();
    if arg.abs() > 1.0 {
        if arg.abs() - 1.0 > 1e-12 && disc < 0.0 {
            return None;
        }
        arg = arg.clamp(-1.0, 1.0);
    }
    let base = arg.acos() / 3.0;
    let mut roots = [0.0; 3];
    for (k, root) in roots.iter_mut().enumerate() {
        *root = amp * (base - 2.0 * PI * k as f64 / 3.0).cos() + shift;
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Some(roots)
}

/// Haar-distributed element of SU(2).
///
/// Uses the quaternion method: four independent standard normals normalised
/// to a point on S³, which is the Haar measure on SU(2).
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> CMat2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let [a, b, c, d] = q.map(|x| x / norm);
        return CMat2::new(
            Complex::new(a, b),
            Complex::new(c, d),
            Complex::new(-c, d),
            Complex::new(a, -b),
        );
    }
}

/// Rotation `O_ij = ½ Tr(σ_i U σ_j U†)` induced by `U ∈ SU(2)` on Bloch vectors.
pub fn su2_to_so3(u: &CMat2) -> Result<RMat3> {
    let unitarity = unitarity_deviation(u);
    let det = (u.determinant() - ONE).norm();
    if !(unitarity <= tol::UNITARITY && det <= tol::UNITARITY) {
        return Err(Error::NotSpecialUnitary { unitarity, det });
    }
    Ok(rotation_of(u))
}

/// The SU(2)→SO(3) formula without the special-unitary check.
pub(crate) fn rotation_of(u: &CMat2) -> RMat3 {
    let ud = u.adjoint();
    let rotated: [CMat2; 3] = std::array::from_fn(|j| u * pauli(j) * ud);
    RMat3::from_fn(|i, j| 0.5 * (pauli(i) * rotated[j]).trace().re)
}

/// Bloch vector `Tr(ρ σ)` of a single-qubit operator.
pub fn qubit_bloch_vector(rho: &CMat2) -> RVec3 {
    RVec3::from_fn(|i, _| (rho * pauli(i)).trace().re)
}

/// Single-qubit density matrix `(I + v·σ)/2`.
pub fn qubit_from_bloch(v: &RVec3) -> CMat2 {
    let mut m = identity2();
    for i in 0..3 {
        m += pauli(i) * Complex::new(v[i], 0.0);
    }
    m * Complex::new(0.5, 0.0)
}
