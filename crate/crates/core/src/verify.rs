//! Verification sweeps: run the multiplier circuit over operand pairs and
//! compare every outcome against native signed multiplication, the classical
//! machine, and the ancilla-cleanliness contract.
//!
//! A sweep builds (or reuses) one circuit, then checks pairs independently:
//! exhaustively over all 2^2n pairs, or over a seeded random sample. Pairs
//! are partitioned across workers with read-only access to the shared
//! circuit; results merge in enumeration order, so the report (including
//! which counterexample is "first") is identical whatever the thread count.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multiplier::{qbm_cached, MultiplierError, Qbm};
use crate::numeric::{classical_booth_multiply, SignedWord};
use crate::simulator::run_basis;
use crate::threading::{map_indices, Threading};

/// Which operand pairs a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every (x, y) pair of the width.
    Exhaustive,
    /// `samples` pairs drawn from a ChaCha stream seeded with `seed`.
    Random { samples: usize, seed: u64 },
}

/// A pair that failed, with what went wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub x: i64,
    pub y: i64,
    pub expected: i64,
    pub got: i64,
    pub clean: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} y={}: expected {}, got {}{}",
            self.x,
            self.y,
            self.expected,
            self.got,
            if self.clean { "" } else { " (ancillas dirty)" }
        )
    }
}

/// Sweep outcome: totals plus the first counterexample in enumeration order,
/// if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub width: usize,
    pub total: usize,
    pub passed: usize,
    pub first_failure: Option<Counterexample>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} pass", self.passed, self.total)?;
        if let Some(failure) = &self.first_failure {
            write!(f, "; first counterexample: {failure}")?;
        }
        Ok(())
    }
}

fn check_pair(qbm: &Qbm, x: SignedWord, y: SignedWord) -> Option<Counterexample> {
    let expected = x.value() * y.value();
    let input = qbm.layout.prepare_input(x, y);
    let final_state = run_basis(&qbm.circuit, &input).expect("input built to width");
    let got = qbm.layout.read_product(&final_state);
    let clean = qbm.layout.cleanliness(&final_state, x, y).is_clean();
    let (machine, _) = classical_booth_multiply(x, y);
    if got == expected && clean && machine.value() == expected {
        None
    } else {
        Some(Counterexample {
            x: x.value(),
            y: y.value(),
            expected,
            got,
            clean,
        })
    }
}

fn sweep_pairs(
    qbm: &Qbm,
    pairs: &[(i64, i64)],
    threading: Threading,
) -> SweepReport {
    let n = qbm.layout.n();
    let failures = map_indices(threading, pairs.len(), |i| {
        let (xv, yv) = pairs[i];
        let x = SignedWord::new(xv, n).expect("pair generator respects range");
        let y = SignedWord::new(yv, n).expect("pair generator respects range");
        check_pair(qbm, x, y)
    });
    let passed = failures.iter().filter(|f| f.is_none()).count();
    SweepReport {
        width: n,
        total: pairs.len(),
        passed,
        first_failure: failures.into_iter().flatten().next(),
    }
}

fn pairs_for(n: usize, mode: SweepMode) -> Vec<(i64, i64)> {
    let lo = SignedWord::min_value(n);
    let hi = SignedWord::max_value(n);
    match mode {
        SweepMode::Exhaustive => {
            let mut pairs = Vec::with_capacity(1 << (2 * n));
            for x in lo..=hi {
                for y in lo..=hi {
                    pairs.push((x, y));
                }
            }
            pairs
        }
        SweepMode::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| (rng.random_range(lo..=hi), rng.random_range(lo..=hi)))
                .collect()
        }
    }
}

/// Sweeps the cached width-n multiplier with the default threading.
pub fn verify_multiplier(n: usize, mode: SweepMode) -> Result<SweepReport, MultiplierError> {
    verify_multiplier_with(n, mode, Threading::default())
}

/// [`verify_multiplier`] with an explicit threading strategy.
pub fn verify_multiplier_with(
    n: usize,
    mode: SweepMode,
    threading: Threading,
) -> Result<SweepReport, MultiplierError> {
    let qbm = qbm_cached(n)?;
    Ok(verify_circuit(&qbm, mode, threading))
}

/// Sweeps an already-built multiplier. Exposed so a deliberately broken
/// circuit can exercise the failure-reporting path.
pub fn verify_circuit(qbm: &Qbm, mode: SweepMode, threading: Threading) -> SweepReport {
    let pairs = pairs_for(qbm.layout.n(), mode);
    sweep_pairs(qbm, &pairs, threading)
}
