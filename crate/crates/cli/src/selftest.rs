//! Seeded property suites: local-unitary invariance, positivity of the
//! invariant criteria on separable symmetric states, and the X-form
//! equivalence between invariant signs and the partial-transpose spectrum.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symqubit::invariants::{makhlin_all, symmetric_six};
use symqubit::qmat::{haar_su2, HermitianSpectrum};
use symqubit::sampling::{random_density, random_xform};
use symqubit::separability::{partial_transpose, sample_separable_symmetric, xform_equivalence_check, xform_pt_eigenvalues};
use symqubit::states::{apply_local_unitary, bloch_decompose};
use symqubit::{tol, DensityMatrix};

pub const INVARIANCE_REL_TOL: f64 = 1e-9;
pub const INVARIANCE_ABS_FLOOR: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;
pub const I4_CUTOFF: f64 = 1e-8;
pub const EQUIVALENCE_BAND: f64 = 1e-10;
pub const PT_SPECTRUM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariance,
    Positivity,
    Equivalence,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Invariance, Suite::Positivity, Suite::Equivalence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::Positivity => "positivity",
            Suite::Equivalence => "xform_equivalence",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Suite::Invariance => 1,
            Suite::Positivity => 2,
            Suite::Equivalence => 3,
        }
    }
}

/// Suite outcome. `max_deviation` is the largest relative change of an
/// invariant, the largest amount by which a positivity bound is undershot,
/// or the largest PT-spectrum mismatch, respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub first_failure: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub index: usize,
    pub state: DensityMatrix,
    pub detail: String,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checked: 0, skipped: 0, failures: 0, max_deviation: 0.0, first_failure: None }
    }

    fn fail(&mut self, index: usize, state: DensityMatrix, detail: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(Counterexample { index, state, detail });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<18} checked={} skipped={} failures={} max_deviation={:.3e} {}",
            self.suite.name(),
            self.checked,
            self.skipped,
            self.failures,
            self.max_deviation,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn rng_for(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    rng
}

/// `|a − b| ≤ max(rel · max(|a|, |b|), floor)`.
pub fn within(a: f64, b: f64, rel: f64, floor: f64) -> bool {
    (a - b).abs() <= (rel * a.abs().max(b.abs())).max(floor)
}

pub fn invariance(seed: u64, count: usize, fault: bool) -> SuiteReport {
    let mut rng = rng_for(seed, Suite::Invariance);
    let mut report = SuiteReport::new(Suite::Invariance);
    for index in 0..count {
        let rho = random_density(&mut rng);
        let (u1, u2) = (haar_su2(&mut rng), haar_su2(&mut rng));
        let rotated = apply_local_unitary(&rho, &u1, &u2).expect("Haar samples are unitary");
        let before = makhlin_all(&bloch_decompose(&rho));
        let mut after = *makhlin_all(&bloch_decompose(&rotated)).values();
        if fault && index == 0 {
            after[0] += 1e-3;
        }
        report.checked += 1;
        for (k, (x, y)) in before.values().iter().zip(after).enumerate() {
            report.max_deviation = report.max_deviation.max(tol::deviation(*x, y));
            if !within(*x, y, INVARIANCE_REL_TOL, INVARIANCE_ABS_FLOOR) {
                report.fail(index, rho, format!("I{} changed from {x} to {y} under U1⊗U2", k + 1));
                break;
            }
        }
    }
    report
}

pub fn positivity(seed: u64, count: usize, fault: bool) -> SuiteReport {
    let mut rng = rng_for(seed, Suite::Positivity);
    let mut report = SuiteReport::new(Suite::Positivity);
    for index in 0..count {
        let terms = rng.random_range(1..=6);
        let (rho, _) = sample_separable_symmetric(terms, &mut rng);
        let mut six = symmetric_six(&bloch_decompose(&rho)).expect("ensemble lies on the triplet subspace");
        if six.i4 <= I4_CUTOFF {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        if fault && report.checked == 1 {
            six.i14 = -1.0;
        }
        let lowest = six.i12.min(six.i14).min(six.i12_minus_i4_sq());
        report.max_deviation = report.max_deviation.max(-lowest);
        if lowest < -POSITIVITY_TOL {
            report.fail(
                index,
                rho,
                format!(
                    "separable state with I12 = {}, I14 = {}, I12 - I4^2 = {}",
                    six.i12,
                    six.i14,
                    six.i12_minus_i4_sq()
                ),
            );
        }
    }
    report
}

pub fn equivalence(seed: u64, count: usize, fault: bool) -> SuiteReport {
    let mut rng = rng_for(seed, Suite::Equivalence);
    let mut report = SuiteReport::new(Suite::Equivalence);
    for index in 0..count {
        let x = random_xform(&mut rng);
        if (x.a - x.d).powi(2) <= I4_CUTOFF || x.c + x.b.norm() <= I4_CUTOFF {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let rho = x.density();
        let mut closed = xform_pt_eigenvalues(&x);
        closed.sort_by(f64::total_cmp);
        let numeric = partial_transpose(&rho).hermitian_eigenvalues(tol::HERMITICITY).expect("PT is Hermitian");
        let spectrum_dev = closed.iter().zip(numeric).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        report.max_deviation = report.max_deviation.max(spectrum_dev);
        let signs_agree = xform_equivalence_check(&x, EQUIVALENCE_BAND).unwrap_or(false) && !(fault && report.checked == 1);
        if !signs_agree || spectrum_dev > PT_SPECTRUM_TOL {
            report.fail(
                index,
                rho,
                format!("sign agreement {signs_agree}, PT spectrum mismatch {spectrum_dev:e}"),
            );
        }
    }
    report
}

/// Run all suites. `fault` corrupts the first checked sample of one suite.
pub fn run(seed: u64, count: usize, fault: Option<Suite>) -> Vec<SuiteReport> {
    vec![
        invariance(seed, count, fault == Some(Suite::Invariance)),
        positivity(seed, count, fault == Some(Suite::Positivity)),
        equivalence(seed, count, fault == Some(Suite::Equivalence)),
    ]
}

pub fn summary(seed: u64, count: usize, reports: &[SuiteReport]) -> String {
    let mut out = format!("selftest seed={seed} count={count}\n");
    for r in reports {
        let _ = writeln!(out, "{}", r.summary_line());
    }
    let ok = reports.iter().all(SuiteReport::passed);
    let _ = writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" });
    out
}
