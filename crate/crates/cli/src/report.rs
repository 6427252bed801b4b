//! Text and JSON renderings for the `invariants` and `classify` commands.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};
use symqubit::invariants::{makhlin_all, symmetric_six, xform_invariants};
use symqubit::separability::{classify, ppt_check};
use symqubit::states::{bloch_decompose, is_symmetric, xform_extract};
use symqubit::{Classification, DensityMatrix, InvariantSet, SymmetricSix, Verdict, XForm};

use crate::Failure;

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantsReport {
    pub all: InvariantSet,
    pub symmetric: bool,
    pub xform: Option<XForm>,
    pub six: Option<SymmetricSix>,
    pub xform_closed_form: Option<SymmetricSix>,
    pub ppt_min_eig: f64,
    pub verdict: Verdict,
    pub criteria: Vec<String>,
}

pub fn invariants_report(rho: &DensityMatrix, tol: f64) -> Result<InvariantsReport, Failure> {
    let form = bloch_decompose(rho);
    let all = makhlin_all(&form);
    let symmetric = is_symmetric(rho, tol.max(symqubit::tol::HERMITICITY));
    let xform = xform_extract(rho, tol).ok();
    let six = if symmetric { symmetric_six(&form).ok() } else { None };
    let xform_closed_form = xform.as_ref().map(xform_invariants);
    let (verdict, ppt_min_eig, criteria) = if six.is_some() {
        let c = classify(rho, tol)?;
        (c.verdict, c.ppt_min_eigenvalue, c.criteria_fired.iter().map(|k| k.name().to_string()).collect())
    } else {
        let ppt = ppt_check(rho, tol);
        let v = if ppt.separable { Verdict::Separable } else { Verdict::Entangled };
        (v, ppt.min_eig, Vec::new())
    };
    Ok(InvariantsReport { all, symmetric, xform, six, xform_closed_form, ppt_min_eig, verdict, criteria })
}

fn six_json(six: &SymmetricSix) -> Value {
    json!({
        "I1": six.i1, "I2": six.i2, "I4": six.i4, "I10": six.i10, "I12": six.i12, "I14": six.i14,
        "I12_minus_I4sq": six.i12_minus_i4_sq(),
    })
}

impl InvariantsReport {
    pub fn to_json(&self) -> Value {
        let all: Map<String, Value> =
            (1..=18).map(|k| (format!("I{k}"), json!(self.all.get(k)))).collect();
        json!({
            "invariants": all,
            "symmetric": self.symmetric,
            "xform": self.xform.is_some(),
            "xform_parameters": self.xform.map(|x| json!({
                "a": x.a, "b_re": x.b.re, "b_im": x.b.im, "c": x.c, "d": x.d,
            })),
            "symmetric_six": self.six.as_ref().map(six_json),
            "xform_closed_form": self.xform_closed_form.as_ref().map(six_json),
            "ppt_min_eig": self.ppt_min_eig,
            "verdict": self.verdict,
            "criteria": self.criteria,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for k in 1..=18 {
            let _ = writeln!(out, "{:<4}= {}", format!("I{k}"), self.all.get(k));
        }
        let _ = writeln!(out, "symmetric = {}", self.symmetric);
        let _ = writeln!(out, "xform = {}", self.xform.is_some());
        if let Some(six) = &self.six {
            let _ = writeln!(out, "symmetric six:");
            write_six(&mut out, six);
        }
        if let (Some(x), Some(six)) = (&self.xform, &self.xform_closed_form) {
            let _ = writeln!(out, "xform closed form (a = {}, b = {}{:+}i, c = {}, d = {}):", x.a, x.b.re, x.b.im, x.c, x.d);
            write_six(&mut out, six);
        }
        let _ = writeln!(out, "ppt_min_eig = {}", self.ppt_min_eig);
        if !self.criteria.is_empty() {
            let _ = writeln!(out, "criteria = {}", self.criteria.join(","));
        }
        let _ = writeln!(out, "verdict = {}", self.verdict);
        out
    }
}

fn write_six(out: &mut String, six: &SymmetricSix) {
    for (name, v) in ["I1", "I2", "I4", "I10", "I12", "I14"].iter().zip(six.as_array()) {
        let _ = writeln!(out, "  {name:<4}= {v}");
    }
    let _ = writeln!(out, "  I12 - I4^2 = {}", six.i12_minus_i4_sq());
}

#[derive(Serialize)]
struct ClassificationJson<'a> {
    verdict: Verdict,
    criteria: Vec<&'static str>,
    ppt_min_eig: f64,
    i4_zero_fallback: bool,
    invariants: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

const FALLBACK_NOTE: &str = "I4 = 0: verdict from PPT only";

pub fn classification_json(c: &Classification) -> Value {
    let body = ClassificationJson {
        verdict: c.verdict,
        criteria: c.criteria_fired.iter().map(|k| k.name()).collect(),
        ppt_min_eig: c.ppt_min_eigenvalue,
        i4_zero_fallback: c.i4_zero_fallback_used,
        invariants: six_json(&c.invariants),
        note: c.i4_zero_fallback_used.then_some(FALLBACK_NOTE),
    };
    serde_json::to_value(body).expect("classification serialises")
}

pub fn classification_text(c: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict = {}", c.verdict);
    let names: Vec<_> = c.criteria_fired.iter().map(|k| k.name()).collect();
    let _ = writeln!(out, "criteria = [{}]", names.join(", "));
    let _ = writeln!(out, "ppt_min_eig = {}", c.ppt_min_eigenvalue);
    if c.i4_zero_fallback_used {
        let _ = writeln!(out, "note: {FALLBACK_NOTE}");
    }
    write_six(&mut out, &c.invariants);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use symqubit::states::{basis_projector, bell_01_10};

    #[test]
    fn bell_report() {
        let r = invariants_report(&bell_01_10(true), 1e-10).unwrap();
        assert!(r.symmetric && r.xform.is_some());
        assert!((r.all.get(1) + 1.0).abs() < 1e-12);
        assert!((r.all.get(2) - 3.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Entangled);
        let v = r.to_json();
        assert_eq!(v["symmetric"], true);
        assert_eq!(v["xform"], true);
    }

    #[test]
    fn product_report() {
        let r = invariants_report(&basis_projector(0), 1e-10).unwrap();
        assert_eq!(r.all.get(4), 1.0);
        assert_eq!(r.all.get(12), 1.0);
        assert!(r.to_text().contains("verdict = Separable"));
    }

    #[test]
    fn general_state_uses_ppt_only() {
        let r = invariants_report(&bell_01_10(false), 1e-10).unwrap();
        assert!(!r.symmetric && r.six.is_none());
        assert_eq!(r.verdict, Verdict::Entangled);
    }
}
