//! Local-unitary entanglement invariants of two-qubit density matrices.
//!
//! The crate is organised bottom-up:
//!
//! - [`qmat`]: fixed-size complex matrices, Pauli basis, Haar SU(2), the SU(2)→SO(3) map.
//! - [`states`]: density matrices, the Bloch (Fano) form, exchange symmetry, X-form states.
//! - [`invariants`]: the 18 Makhlin invariants and the six-invariant view for symmetric states.
//! - [`separability`]: partial transpose / PPT and the invariant sign criteria.
//! - [`models`]: closed-form pair states of Dicke, one-axis-twisting and Ising-chain systems.
//! - [`sampling`]: seeded random generators for general, symmetric and X-form states.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with qubit 1 the left tensor factor
//! and `|0⟩` the `σz = +1` eigenstate.

#![forbid(unsafe_code)]
// `!(x > tol)` is used on purpose so that NaN lands on the failing branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod invariants;
pub mod models;
pub mod qmat;
pub mod sampling;
pub mod separability;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use invariants::{InvariantSet, SymmetricSix};
pub use qmat::{CMat2, CMat4, Complex, RMat3, RVec3};
pub use separability::{Classification, Criterion, Verdict};
pub use states::{BlochForm, DensityMatrix, XForm};
