//! Local-unitary invariants of two-qubit states.
//!
//! [`makhlin_all`] evaluates the complete set of 18 polynomial invariants of
//! a Bloch form. For exchange-symmetric states six of them
//! (`I1, I2, I4, I10, I12, I14`) characterise the state; X-form states admit
//! closed forms for all six.

use nalgebra::SymmetricEigen;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{cubic_real_roots, RMat3, RVec3};
use crate::states::{BlochForm, XForm};
use crate::tol;

/// Non-zero entries of the Levi-Civita symbol `ε_ijk`.
const LEVI_CIVITA: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

/// `ε_ijk u_i v_j w_k`.
fn epsilon_contract(u: &RVec3, v: &RVec3, w: &RVec3) -> f64 {
    LEVI_CIVITA.iter().map(|&([i, j, k], sign)| sign * u[i] * v[j] * w[k]).sum()
}

/// `ε_ijk ε_lmn s_i r_l t_jm t_kn`.
fn double_epsilon_contract(s: &RVec3, r: &RVec3, t: &RMat3) -> f64 {
    let mut acc = 0.0;
    for &([i, j, k], e1) in &LEVI_CIVITA {
        for &([l, m, n], e2) in &LEVI_CIVITA {
            acc += e1 * e2 * s[i] * r[l] * t[(j, m)] * t[(k, n)];
        }
    }
    acc
}

/// The invariants `I1..I18`, stored in order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSet([f64; 18]);

impl InvariantSet {
    /// `I_k` for `k` in `1..=18`.
    pub fn get(&self, k: usize) -> f64 {
        assert!((1..=18).contains(&k), "invariant index out of range: {k}");
        self.0[k - 1]
    }

    pub fn values(&self) -> &[f64; 18] {
        &self.0
    }

    /// Pairs that coincide for exchange-symmetric states.
    pub const SYMMETRIC_PAIRS: [(usize, usize); 6] =
        [(4, 7), (5, 8), (6, 9), (10, 11), (15, 16), (17, 18)];

    pub fn symmetric_six(&self) -> SymmetricSix {
        SymmetricSix {
            i1: self.get(1),
            i2: self.get(2),
            i4: self.get(4),
            i10: self.get(10),
            i12: self.get(12),
            i14: self.get(14),
        }
    }
}

/// The subset `(I1, I2, I4, I10, I12, I14)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricSix {
    pub i1: f64,
    pub i2: f64,
    pub i4: f64,
    pub i10: f64,
    pub i12: f64,
    pub i14: f64,
}

impl SymmetricSix {
    pub fn as_array(&self) -> [f64; 6] {
        [self.i1, self.i2, self.i4, self.i10, self.i12, self.i14]
    }

    pub fn i12_minus_i4_sq(&self) -> f64 {
        self.i12 - self.i4 * self.i4
    }
}

/// All 18 invariants of `f`.
///
/// `I8` and `I9` are built on `TᵀT` (the same Gram matrix as `I11`) so that
/// they are unchanged by `r → O2 r`, `T → O1 T O2ᵀ`.
pub fn makhlin_all(f: &BlochForm) -> InvariantSet {
    let (s, r, t) = (&f.s, &f.r, &f.t);
    let tt = t.transpose();
    let t_tt = t * tt; // T T†
    let tt_t = tt * t; // T† T
    let t_tt_sq = t_tt * t_tt;
    let tt_t_sq = tt_t * tt_t;

    let mut i = [0.0; 18];
    i[0] = t.determinant();
    i[1] = tt_t.trace();
    i[2] = tt_t_sq.trace();
    i[3] = s.dot(s);
    i[4] = s.dot(&(t_tt * s));
    i[5] = s.dot(&(t_tt_sq * s));
    i[6] = r.dot(r);
    i[7] = r.dot(&(tt_t * r));
    i[8] = r.dot(&(tt_t_sq * r));
    i[9] = epsilon_contract(s, &(t_tt * s), &(t_tt_sq * s));
    i[10] = epsilon_contract(r, &(tt_t * r), &(tt_t_sq * r));
    i[11] = s.dot(&(t * r));
    i[12] = s.dot(&(t * tt * t * r));
    i[13] = double_epsilon_contract(s, r, t);
    i[14] = epsilon_contract(s, &(t_tt * s), &(t * r));
    i[15] = epsilon_contract(&(tt * s), r, &(tt_t * r));
    i[16] = epsilon_contract(&(tt * s), &(tt * t * tt * s), r);
    i[17] = epsilon_contract(s, &(t * r), &(t * tt * t * r));
    InvariantSet(i)
}

/// The six characterising invariants of a symmetric state.
///
/// Fails with [`Error::NotSymmetricState`] unless `r = s`, `T = Tᵀ` and
/// `Tr T = 1` hold to [`tol::SYMMETRIC_CONSTRAINTS`].
pub fn symmetric_six(f: &BlochForm) -> Result<SymmetricSix> {
    let dev = f.symmetric_constraint_deviation();
    if !(dev <= tol::SYMMETRIC_CONSTRAINTS) {
        return Err(Error::NotSymmetricState(dev));
    }
    Ok(makhlin_all(f).symmetric_six())
}

/// Eigenvalues of `T` and the spin `s` expressed in the eigenframe of `T`,
/// reached by a proper rotation (as a collective local unitary would).
pub fn diagonal_frame(f: &BlochForm) -> ([f64; 3], RVec3) {
    let sym = (f.t + f.t.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut q = eig.eigenvectors;
    if q.determinant() < 0.0 {
        q.column_mut(2).neg_mut();
    }
    let t = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
    (t, q.transpose() * f.s)
}

/// `I10` from the eigenvalues of `T` and the components of `s` in its eigenframe:
/// `(t1⁴(t3²−t2²) + t2⁴(t1²−t3²) + t3⁴(t2²−t1²))·s1·s2·s3`.
pub fn i10_diagonal_frame(t: [f64; 3], s: &RVec3) -> f64 {
    let [t1, t2, t3] = t.map(|x| x * x);
    (t1 * t1 * (t3 - t2) + t2 * t2 * (t1 - t3) + t3 * t3 * (t2 - t1)) * s[0] * s[1] * s[2]
}

/// The six invariants written in the eigenframe of `T`.
pub fn symmetric_six_diagonal_frame(t: [f64; 3], s: &RVec3) -> SymmetricSix {
    let [t1, t2, t3] = t;
    let sq = s.map(|x| x * x);
    SymmetricSix {
        i1: t1 * t2 * t3,
        i2: t1 * t1 + t2 * t2 + t3 * t3,
        i4: sq.sum(),
        i10: i10_diagonal_frame(t, s),
        i12: sq[0] * t1 + sq[1] * t2 + sq[2] * t3,
        i14: 2.0 * (sq[0] * t2 * t3 + sq[1] * t1 * t3 + sq[2] * t1 * t2),
    }
}

/// Closed-form invariants of an X-form state.
pub fn xform_invariants(x: &XForm) -> SymmetricSix {
    let b = x.b.norm();
    let b2 = x.b.norm_sqr();
    let c = x.c;
    let ad2 = (x.a - x.d).powi(2);
    let zz = 1.0 - 4.0 * c;
    SymmetricSix {
        i1: (4.0 * c * c - 4.0 * b2) * zz,
        i2: (2.0 * c + 2.0 * b).powi(2) + (2.0 * c - 2.0 * b).powi(2) + zz * zz,
        i4: ad2,
        i10: 0.0,
        i12: ad2 * zz,
        i14: 8.0 * ad2 * (c * c - b2),
    }
}

/// The values of `I1` and `I2` implied by `(I4, I12, I14)` on X-form states:
/// `I1 = I14·I12 / (2·I4²)`, `I2 = ((I4 − I12)² − I4·I14 + I12²) / I4²`.
pub fn xform_relation_predictions(six: &SymmetricSix, tol: f64) -> Result<(f64, f64)> {
    let i4 = six.i4;
    if !(i4.abs() > tol) {
        return Err(Error::I4Zero);
    }
    let i1 = six.i14 * six.i12 / (2.0 * i4 * i4);
    let i2 = ((i4 - six.i12).powi(2) - i4 * six.i14 + six.i12 * six.i12) / (i4 * i4);
    Ok((i1, i2))
}

/// True iff both X-form relations between `(I1, I2)` and `(I4, I12, I14)`
/// hold to `tol` (relative above [`tol::RELATIVE_FLOOR`]).
pub fn xform_relation_check(six: &SymmetricSix, tol: f64) -> Result<bool> {
    let (i1, i2) = xform_relation_predictions(six, tol)?;
    Ok(tol::approx_eq(i1, six.i1, tol) && tol::approx_eq(i2, six.i2, tol))
}

/// Eigenvalues of a unit-trace symmetric `T` from `I1 = t1·t2·t3` and
/// `I2 = t1² + t2² + t3²`, sorted descending.
pub fn t_eigenvalues_from_invariants(i1: f64, i2: f64) -> Result<[f64; 3]> {
    // λ³ − λ² + pλ − I1 with p = (1 − I2)/2
    let p = (1.0 - i2) / 2.0;
    cubic_real_roots(1.0, p, i1, 1e-10).ok_or(Error::NoRealSpectrum { i1, i2 })
}
