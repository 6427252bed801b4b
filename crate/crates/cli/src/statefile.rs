//! JSON state files.
//!
//! ```json
//! { "schema_version": "1", "xform": { "a": 0.5, "b_re": 0.0, "b_im": 0.0, "c": 0.25 } }
//! ```
//!
//! Exactly one of `matrix` (4×4 rows of `[re, im]`), `xform` or `bloch` is present.
//! Numbers are written in shortest round-trip form, so a write/read cycle is exact.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use symqubit::states::{bloch_compose, bloch_decompose};
use symqubit::{BlochForm, CMat4, Complex, DensityMatrix, RMat3, RVec3, XForm};

use crate::Failure;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XFormEntry {
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochEntry {
    pub s: [f64; 3],
    pub r: [f64; 3],
    pub t: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[[f64; 2]; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xform: Option<XFormEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<BlochEntry>,
}

impl StateFile {
    fn empty() -> Self {
        StateFile { schema_version: SCHEMA_VERSION.into(), matrix: None, xform: None, bloch: None }
    }

    pub fn from_matrix(m: &CMat4) -> Self {
        let mut rows = [[[0.0; 2]; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = [m[(i, j)].re, m[(i, j)].im];
            }
        }
        StateFile { matrix: Some(rows), ..Self::empty() }
    }

    pub fn from_xform(x: &XForm) -> Self {
        let entry = XFormEntry { a: x.a, b_re: x.b.re, b_im: x.b.im, c: x.c };
        StateFile { xform: Some(entry), ..Self::empty() }
    }

    pub fn from_bloch(f: &BlochForm) -> Self {
        let entry = BlochEntry {
            s: [f.s.x, f.s.y, f.s.z],
            r: [f.r.x, f.r.y, f.r.z],
            t: std::array::from_fn(|i| std::array::from_fn(|j| f.t[(i, j)])),
        };
        StateFile { bloch: Some(entry), ..Self::empty() }
    }

    /// Validate the file and build its density matrix.
    pub fn density(&self) -> Result<DensityMatrix, Failure> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Failure::validation(format!(
                "unsupported schema_version {:?} (expected {SCHEMA_VERSION:?})",
                self.schema_version
            )));
        }
        let present =
            [self.matrix.is_some(), self.xform.is_some(), self.bloch.is_some()].iter().filter(|&&p| p).count();
        if present != 1 {
            return Err(Failure::validation(format!(
                "state file must hold exactly one of matrix, xform, bloch (found {present})"
            )));
        }
        let m = if let Some(rows) = &self.matrix {
            CMat4::from_fn(|i, j| Complex::new(rows[i][j][0], rows[i][j][1]))
        } else if let Some(x) = &self.xform {
            XForm::from_trace(x.a, Complex::new(x.b_re, x.b_im), x.c)?.matrix()
        } else {
            let b = self.bloch.as_ref().expect("one representation is present");
            let t = RMat3::from_fn(|i, j| b.t[i][j]);
            let f = BlochForm::new(RVec3::from(b.s), RVec3::from(b.r), t);
            bloch_compose(&f)?.into_matrix()
        };
        Ok(DensityMatrix::new(m)?)
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::validation(format!("malformed state file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialise") + "\n"
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        fs::write(path, self.to_json())
            .map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))
    }
}

/// Load and validate a state file.
pub fn load_density(path: &Path) -> Result<DensityMatrix, Failure> {
    StateFile::read(path)?.density()
}

/// Bloch-form file of a validated state.
pub fn bloch_file(rho: &DensityMatrix) -> StateFile {
    StateFile::from_bloch(&bloch_decompose(rho))
}
