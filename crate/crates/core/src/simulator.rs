//! Circuit execution on computational-basis states and sparse
//! superpositions.
//!
//! Every gate in the IR permutes basis states, so a state never grows new
//! terms: superpositions are stored as a sparse map from basis bitstring to
//! amplitude, and wide circuits can be run on single basis inputs without a
//! 2^width vector ever existing. Amplitudes are copied, never mixed, which
//! keeps floating-point round-off out of the arithmetic entirely.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::numeric::BitVec;
use crate::threading::{map_indices, Threading};

/// Tolerance on Σ|amplitude|² for a state to count as normalized.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Terms with |amplitude| below this are dropped when states are built or
/// transformed; repo-built circuits never produce such terms, the guard is
/// for user-supplied denormal inputs.
pub const AMPLITUDE_PRUNE: f64 = 1e-15;

/// Default cap on the register width [`as_permutation`] will enumerate.
pub const DEFAULT_PERMUTATION_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulatorError {
    #[error("input width {input} does not match circuit width {circuit}")]
    WidthMismatch { input: usize, circuit: usize },
    #[error("circuit width {width} exceeds the permutation limit {limit}")]
    WidthExceedsLimit { width: usize, limit: usize },
    #[error("not a permutation: basis states {first} and {second} both map to {image}")]
    NotBijective {
        first: usize,
        second: usize,
        image: usize,
    },
    #[error("state norm² is {norm_sqr}, outside tolerance of 1")]
    NotNormalized { norm_sqr: f64 },
    #[error("state has no terms")]
    EmptyState,
}

/// A sparse superposition: basis bitstrings mapped to complex amplitudes,
/// unit norm, all keys the same width.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    terms: BTreeMap<BitVec, Complex64>,
}

impl QuantumState {
    /// The single basis state |b⟩ with amplitude 1.
    pub fn basis(b: BitVec) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, Complex64::new(1.0, 0.0));
        Self { terms }
    }

    /// Builds a state from (basis, amplitude) pairs. Duplicate basis keys
    /// are merged additively, near-zero terms pruned, and the result must
    /// be normalized within [`NORM_TOLERANCE`].
    pub fn from_terms<I>(terms: I) -> Result<Self, SimulatorError>
    where
        I: IntoIterator<Item = (BitVec, Complex64)>,
    {
        let mut map: BTreeMap<BitVec, Complex64> = BTreeMap::new();
        for (key, amp) in terms {
            *map.entry(key).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        map.retain(|_, amp| amp.norm() >= AMPLITUDE_PRUNE);
        let state = Self { terms: map };
        state.check()?;
        Ok(state)
    }

    /// Equal-weight superposition of the given basis states.
    pub fn uniform<I>(keys: I) -> Result<Self, SimulatorError>
    where
        I: IntoIterator<Item = BitVec>,
    {
        let keys: Vec<BitVec> = keys.into_iter().collect();
        let amp = Complex64::new(1.0 / (keys.len() as f64).sqrt(), 0.0);
        Self::from_terms(keys.into_iter().map(|k| (k, amp)))
    }

    fn check(&self) -> Result<(), SimulatorError> {
        let mut iter = self.terms.keys();
        let first = iter.next().ok_or(SimulatorError::EmptyState)?;
        let width = first.width();
        if let Some(other) = iter.find(|k| k.width() != width) {
            return Err(SimulatorError::WidthMismatch {
                input: other.width(),
                circuit: width,
            });
        }
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimulatorError::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.terms.keys().next().expect("states are non-empty").width()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BitVec, Complex64)> {
        self.terms.iter().map(|(k, &a)| (k, a))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn amplitude(&self, key: &BitVec) -> Complex64 {
        self.terms.get(key).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }
}

fn apply_gate(bits: &mut BitVec, gate: &Gate) {
    match gate {
        Gate::X { target } => {
            let t = *target;
            bits.set(t, !bits.get(t));
        }
        Gate::Cnot { control, target } => {
            if bits.get(*control) {
                bits.set(*target, !bits.get(*target));
            }
        }
        Gate::Swap { a, b } => {
            let (va, vb) = (bits.get(*a), bits.get(*b));
            bits.set(*a, vb);
            bits.set(*b, va);
        }
        Gate::Cswap { control, a, b } => {
            if bits.get(*control) {
                let (va, vb) = (bits.get(*a), bits.get(*b));
                bits.set(*a, vb);
                bits.set(*b, va);
            }
        }
        Gate::Mcx { controls, target } => {
            if controls.iter().all(|c| c.satisfied_by(bits.get(c.qubit))) {
                bits.set(*target, !bits.get(*target));
            }
        }
    }
}

/// Runs the circuit on a single basis state.
pub fn run_basis(circuit: &Circuit, input: &BitVec) -> Result<BitVec, SimulatorError> {
    if input.width() != circuit.width() {
        return Err(SimulatorError::WidthMismatch {
            input: input.width(),
            circuit: circuit.width(),
        });
    }
    let mut bits = input.clone();
    for gate in circuit.gates() {
        apply_gate(&mut bits, gate);
    }
    Ok(bits)
}

/// Runs the circuit on a sparse superposition: each basis term is mapped
/// independently by [`run_basis`] with its amplitude carried unchanged.
pub fn run_state(circuit: &Circuit, state: &QuantumState) -> Result<QuantumState, SimulatorError> {
    if state.width() != circuit.width() {
        return Err(SimulatorError::WidthMismatch {
            input: state.width(),
            circuit: circuit.width(),
        });
    }
    let mut terms = BTreeMap::new();
    for (key, amp) in state.terms() {
        let image = run_basis(circuit, key)?;
        terms.insert(image, amp);
    }
    let out = QuantumState { terms };
    debug_assert!((out.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE);
    Ok(out)
}

/// A circuit's action on the computational basis, tabulated and certified
/// bijective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    table: Vec<usize>,
}

impl Permutation {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Image of basis state `index`.
    pub fn apply(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().copied()
    }
}

/// Tabulates the circuit over all 2^width basis states with the default
/// threading strategy. Fails if the width exceeds `limit` or if the table
/// is not a bijection (which would mean the gate semantics are broken).
pub fn as_permutation(circuit: &Circuit, limit: usize) -> Result<Permutation, SimulatorError> {
    as_permutation_with(circuit, limit, Threading::default())
}

/// [`as_permutation`] with an explicit threading strategy. The input space
/// is partitioned across workers; each runs basis states independently and
/// the results merge in index order, so the table is deterministic.
pub fn as_permutation_with(
    circuit: &Circuit,
    limit: usize,
    threading: Threading,
) -> Result<Permutation, SimulatorError> {
    let width = circuit.width();
    if width > limit {
        return Err(SimulatorError::WidthExceedsLimit { width, limit });
    }
    let count = 1usize << width;
    let table = map_indices(threading, count, |i| {
        let input = BitVec::from_unsigned(i as u64, width);
        let output = run_basis(circuit, &input).expect("width checked");
        output.to_unsigned() as usize
    });
    let mut seen_at: Vec<Option<usize>> = vec![None; count];
    for (i, &image) in table.iter().enumerate() {
        if let Some(first) = seen_at[image] {
            return Err(SimulatorError::NotBijective {
                first,
                second: i,
                image,
            });
        }
        seen_at[image] = Some(i);
    }
    Ok(Permutation { table })
}
