//! Parameter sweeps over the model families.

use rayon::prelude::*;
use serde::Serialize;
use symqubit::models::{Family, ImbExponent, ModelSpec};
use symqubit::separability::classify;

use crate::{fmt17, Failure};

pub const CSV_HEADER: &str =
    "family,N,M,chi_t,i1,i2,i4,i10,i12,i14,i12_minus_i4sq,ppt_min_eig,verdict,criteria";

/// Integer list `4,8,16` or inclusive range `start:stop[:step]`.
pub fn parse_int_grid(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::validation(format!("invalid integer grid {text:?}"));
    if text.contains(':') {
        let parts: Vec<usize> =
            text.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let (start, stop, step) = match parts.as_slice() {
            [a, b] => (*a, *b, 1),
            [a, b, s] => (*a, *b, *s),
            _ => return Err(bad()),
        };
        if step == 0 || start > stop {
            return Err(bad());
        }
        Ok((start..=stop).step_by(step).collect())
    } else {
        text.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
    }
}

/// Real list `0,0.5,1`.
pub fn parse_real_list(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::validation(format!("invalid number {p:?} in {text:?}")))
        })
        .collect()
}

/// `count` evenly spaced points on `[start, stop]`, or strictly inside it when `interior`.
pub fn linspace(start: f64, stop: f64, count: usize, interior: bool) -> Vec<f64> {
    if interior {
        let h = (stop - start) / (count + 1) as f64;
        (1..=count).map(|k| start + h * k as f64).collect()
    } else if count == 1 {
        vec![start]
    } else {
        let h = (stop - start) / (count - 1) as f64;
        (0..count).map(|k| if k + 1 == count { stop } else { start + h * k as f64 }).collect()
    }
}

/// How `M` is chosen for each `N` in a Dicke sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum DickeM {
    /// Every valid `M` from `−N/2` to `N/2`.
    All,
    Values(Vec<f64>),
    /// `M = f·N`.
    Fraction(f64),
}

pub fn dicke_grid(ns: &[usize], m: &DickeM) -> Result<Vec<ModelSpec>, Failure> {
    let mut grid = Vec::new();
    for &n in ns {
        match m {
            DickeM::All => {
                for two_m in (-(n as i64)..=n as i64).step_by(2) {
                    grid.push(ModelSpec::Dicke { n, two_m });
                }
            }
            DickeM::Values(ms) => {
                for &m in ms {
                    grid.push(ModelSpec::dicke(n, m)?);
                }
            }
            DickeM::Fraction(f) => grid.push(ModelSpec::dicke(n, f * n as f64)?),
        }
    }
    Ok(grid)
}

pub fn timed_grid(family: Family, ns: &[usize], chi_ts: &[f64]) -> Result<Vec<ModelSpec>, Failure> {
    let mut grid = Vec::with_capacity(ns.len() * chi_ts.len());
    for &n in ns {
        for &chi_t in chi_ts {
            let spec = match family {
                Family::Oat => ModelSpec::Oat { n, chi_t },
                Family::Ising => ModelSpec::Ising { n, chi_t },
                Family::Dicke => return Err(Failure::validation("Dicke sweeps take M, not chi_t")),
            };
            spec.validate()?;
            grid.push(spec);
        }
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: Family,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Option<f64>,
    pub chi_t: Option<f64>,
    pub i1: f64,
    pub i2: f64,
    pub i4: f64,
    pub i10: f64,
    pub i12: f64,
    pub i14: f64,
    pub i12_minus_i4sq: f64,
    pub ppt_min_eig: f64,
    pub verdict: String,
    pub criteria: Vec<String>,
}

impl SweepRow {
    pub fn csv_record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
        let mut rec = vec![self.family.to_string(), self.n.to_string(), opt(self.m), opt(self.chi_t)];
        rec.extend(
            [self.i1, self.i2, self.i4, self.i10, self.i12, self.i14, self.i12_minus_i4sq, self.ppt_min_eig]
                .map(fmt17),
        );
        rec.push(self.verdict.clone());
        rec.push(self.criteria.join(";"));
        rec
    }
}

pub fn evaluate(spec: &ModelSpec, exponent: ImbExponent, tol: f64) -> Result<SweepRow, Failure> {
    let pair = spec.pair(exponent)?;
    let c = classify(&pair.density(), tol)?;
    let six = c.invariants;
    Ok(SweepRow {
        family: spec.family(),
        n: spec.n(),
        m: spec.m(),
        chi_t: spec.chi_t(),
        i1: six.i1,
        i2: six.i2,
        i4: six.i4,
        i10: six.i10,
        i12: six.i12,
        i14: six.i14,
        i12_minus_i4sq: six.i12_minus_i4_sq(),
        ppt_min_eig: c.ppt_min_eigenvalue,
        verdict: c.verdict.to_string(),
        criteria: c.criteria_fired.iter().map(|k| k.name().to_string()).collect(),
    })
}

/// Evaluate every grid point; rows keep grid order.
pub fn run(grid: &[ModelSpec], exponent: ImbExponent, tol: f64) -> Result<Vec<SweepRow>, Failure> {
    if grid.is_empty() {
        return Err(Failure::validation("sweep grid is empty"));
    }
    grid.par_iter().map(|spec| evaluate(spec, exponent, tol)).collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for row in rows {
        w.write_record(row.csv_record()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

pub fn to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialise") + "\n"
}
