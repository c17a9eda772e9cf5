//! Reversible gate IR: an ordered gate list over a fixed set of qubits, with
//! named contiguous registers.
//!
//! The gate set (X, CNOT, SWAP, CSWAP, multi-controlled X with per-control
//! polarity) consists entirely of self-inverse classical reversible gates,
//! so [`Circuit::inverse`] simply reverses the gate list.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

mod qasm;
mod qbc;

pub use qasm::{write_qasm3, QasmError};
pub use qbc::{parse_qbc, write_qbc, QbcError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {index}: qubit {qubit} out of range for width {width}")]
    QubitOutOfRange {
        index: usize,
        qubit: usize,
        width: usize,
    },
    #[error("gate {index}: qubit {qubit} appears more than once")]
    DuplicateQubit { index: usize, qubit: usize },
    #[error("register {name}: qubits {offset}..{end} out of range for width {width}")]
    RegisterOutOfRange {
        name: String,
        offset: usize,
        end: usize,
        width: usize,
    },
    #[error("registers {first} and {second} overlap")]
    RegisterOverlap { first: String, second: String },
    #[error("register {0} declared twice")]
    DuplicateRegister(String),
    #[error("cannot compose circuits of widths {left} and {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("register {name} maps to different ranges in the two circuits")]
    RegisterConflict { name: String },
    #[error("embed map covers {got} qubits but the circuit has {expected}")]
    MapLengthMismatch { expected: usize, got: usize },
    #[error("embed map is not injective: host qubit {0} used twice")]
    MapNotInjective(usize),
    #[error("embed map sends qubit {qubit} to {image}, outside host width {width}")]
    MapOutOfRange {
        qubit: usize,
        image: usize,
        width: usize,
    },
}

/// Control polarity: a closed control fires on |1⟩, an open control on |0⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Closed,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn closed(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Closed,
        }
    }

    pub fn open(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Open,
        }
    }

    /// Whether this control is satisfied by the given basis-state bit.
    pub fn satisfied_by(&self, bit: bool) -> bool {
        match self.polarity {
            Polarity::Closed => bit,
            Polarity::Open => !bit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    X {
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    Cswap {
        control: usize,
        a: usize,
        b: usize,
    },
    /// Multi-controlled X; an empty control list degenerates to X.
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Cnot,
    Swap,
    Cswap,
    Mcx,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Cnot => "cx",
            GateKind::Swap => "swap",
            GateKind::Cswap => "cswap",
            GateKind::Mcx => "mcx",
        }
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X { .. } => GateKind::X,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Swap { .. } => GateKind::Swap,
            Gate::Cswap { .. } => GateKind::Cswap,
            Gate::Mcx { .. } => GateKind::Mcx,
        }
    }

    /// All qubit indices the gate touches, controls included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X { target } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Swap { a, b } => vec![*a, *b],
            Gate::Cswap { control, a, b } => vec![*control, *a, *b],
            Gate::Mcx { controls, target } => {
                let mut qs: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                qs.push(*target);
                qs
            }
        }
    }

    fn remapped(&self, map: &[usize]) -> Gate {
        match self {
            Gate::X { target } => Gate::X {
                target: map[*target],
            },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: map[*control],
                target: map[*target],
            },
            Gate::Swap { a, b } => Gate::Swap {
                a: map[*a],
                b: map[*b],
            },
            Gate::Cswap { control, a, b } => Gate::Cswap {
                control: map[*control],
                a: map[*a],
                b: map[*b],
            },
            Gate::Mcx { controls, target } => Gate::Mcx {
                controls: controls
                    .iter()
                    .map(|c| Control {
                        qubit: map[c.qubit],
                        polarity: c.polarity,
                    })
                    .collect(),
                target: map[*target],
            },
        }
    }
}

/// Contiguous run of qubits addressed by a register name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QubitRange {
    pub offset: usize,
    pub len: usize,
}

impl QubitRange {
    pub fn new(offset: usize, len: usize) -> Self {
        Self { offset, len }
    }

    pub fn end(&self) -> usize {
        self.offset + self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.offset..self.end()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        qubit >= self.offset && qubit < self.end()
    }
}

/// Gate counts by kind; the sum of the fields equals the gate-list length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub x: usize,
    pub cx: usize,
    pub swap: usize,
    pub cswap: usize,
    pub mcx: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.x + self.cx + self.swap + self.cswap + self.mcx
    }

    pub fn get(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::X => self.x,
            GateKind::Cnot => self.cx,
            GateKind::Swap => self.swap,
            GateKind::Cswap => self.cswap,
            GateKind::Mcx => self.mcx,
        }
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} cx={} swap={} cswap={} mcx={}",
            self.x, self.cx, self.swap, self.cswap, self.mcx
        )
    }
}

/// An ordered list of reversible gates over `width` qubits, plus a map of
/// named registers. Circuits are immutable once built; every operation below
/// that changes anything returns a new circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    registers: BTreeMap<String, QubitRange>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            registers: BTreeMap::new(),
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn registers(&self) -> impl Iterator<Item = (&str, QubitRange)> {
        self.registers.iter().map(|(name, r)| (name.as_str(), *r))
    }

    pub fn register(&self, name: &str) -> Option<QubitRange> {
        self.registers.get(name).copied()
    }

    /// Declares a named register. The range must lie inside the circuit and
    /// stay disjoint from every register declared before it.
    pub fn add_register(&mut self, name: &str, offset: usize, len: usize) -> Result<(), CircuitError> {
        let range = QubitRange::new(offset, len);
        if range.end() > self.width {
            return Err(CircuitError::RegisterOutOfRange {
                name: name.to_string(),
                offset,
                end: range.end(),
                width: self.width,
            });
        }
        if self.registers.contains_key(name) {
            return Err(CircuitError::DuplicateRegister(name.to_string()));
        }
        for (other, r) in &self.registers {
            if range.offset < r.end() && r.offset < range.end() {
                return Err(CircuitError::RegisterOverlap {
                    first: other.clone(),
                    second: name.to_string(),
                });
            }
        }
        self.registers.insert(name.to_string(), range);
        Ok(())
    }

    /// Appends a gate without validation; run [`Circuit::validate`] to check
    /// a finished circuit.
    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn x(&mut self, target: usize) {
        self.push(Gate::X { target });
    }

    pub fn cx(&mut self, control: usize, target: usize) {
        self.push(Gate::Cnot { control, target });
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.push(Gate::Swap { a, b });
    }

    pub fn cswap(&mut self, control: usize, a: usize, b: usize) {
        self.push(Gate::Cswap { control, a, b });
    }

    pub fn mcx(&mut self, controls: Vec<Control>, target: usize) {
        self.push(Gate::Mcx { controls, target });
    }

    /// Toffoli: X on `target` controlled on both qubits being |1⟩.
    pub fn ccx(&mut self, c0: usize, c1: usize, target: usize) {
        self.mcx(vec![Control::closed(c0), Control::closed(c1)], target);
    }

    /// Checks every structural invariant, reporting the first offense:
    /// all gate indices in range, no qubit repeated within a gate, register
    /// ranges in range and pairwise disjoint.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut ranges: Vec<(&String, &QubitRange)> = self.registers.iter().collect();
        ranges.sort_by_key(|(_, r)| r.offset);
        for pair in ranges.windows(2) {
            let (first, a) = pair[0];
            let (second, b) = pair[1];
            if b.offset < a.end() {
                return Err(CircuitError::RegisterOverlap {
                    first: first.clone(),
                    second: second.clone(),
                });
            }
        }
        for (name, r) in &self.registers {
            if r.end() > self.width {
                return Err(CircuitError::RegisterOutOfRange {
                    name: name.clone(),
                    offset: r.offset,
                    end: r.end(),
                    width: self.width,
                });
            }
        }
        for (index, gate) in self.gates.iter().enumerate() {
            let qubits = gate.qubits();
            for &q in &qubits {
                if q >= self.width {
                    return Err(CircuitError::QubitOutOfRange {
                        index,
                        qubit: q,
                        width: self.width,
                    });
                }
            }
            let mut sorted = qubits;
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(CircuitError::DuplicateQubit {
                        index,
                        qubit: pair[0],
                    });
                }
            }
        }
        Ok(())
    }

    /// The inverse circuit: the same gates in reverse order. Every gate in
    /// the IR is self-inverse, so no gate-level rewriting is needed.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().cloned().collect(),
        }
    }

    /// Concatenation: the gates of `self` followed by the gates of `other`.
    /// Register maps are unioned; a name declared in both must agree.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.width != other.width {
            return Err(CircuitError::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut out = self.clone();
        for (name, range) in &other.registers {
            match out.registers.get(name) {
                Some(existing) if existing != range => {
                    return Err(CircuitError::RegisterConflict { name: name.clone() })
                }
                Some(_) => {}
                None => out.add_register(name, range.offset, range.len)?,
            }
        }
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// Re-hosts the circuit on `host_width` qubits, sending qubit `i` to
    /// `map[i]`. The map must be injective with its image inside the host.
    /// Registers whose range stays contiguous under the map are carried
    /// over; any other register is dropped.
    pub fn embed(&self, host_width: usize, map: &[usize]) -> Result<Circuit, CircuitError> {
        if map.len() != self.width {
            return Err(CircuitError::MapLengthMismatch {
                expected: self.width,
                got: map.len(),
            });
        }
        let mut seen = vec![false; host_width];
        for (qubit, &image) in map.iter().enumerate() {
            if image >= host_width {
                return Err(CircuitError::MapOutOfRange {
                    qubit,
                    image,
                    width: host_width,
                });
            }
            if seen[image] {
                return Err(CircuitError::MapNotInjective(image));
            }
            seen[image] = true;
        }
        let mut out = Circuit::new(host_width);
        for (name, range) in &self.registers {
            let translated = (0..range.len).all(|k| map[range.offset + k] == map[range.offset] + k);
            if translated {
                out.add_register(name, map[range.offset], range.len)?;
            }
        }
        out.gates = self.gates.iter().map(|g| g.remapped(map)).collect();
        Ok(out)
    }

    /// Circuit depth under as-soon-as-possible layering: each gate lands in
    /// the earliest layer after the last layer touching any of its qubits,
    /// and every gate costs one time-step regardless of arity.
    pub fn depth(&self) -> usize {
        let mut layer = vec![0usize; self.width];
        let mut max = 0;
        for gate in &self.gates {
            let qubits = gate.qubits();
            let slot = qubits.iter().map(|&q| layer[q]).max().unwrap_or(0) + 1;
            for q in qubits {
                layer[q] = slot;
            }
            max = max.max(slot);
        }
        max
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate.kind() {
                GateKind::X => counts.x += 1,
                GateKind::Cnot => counts.cx += 1,
                GateKind::Swap => counts.swap += 1,
                GateKind::Cswap => counts.cswap += 1,
                GateKind::Mcx => counts.mcx += 1,
            }
        }
        counts
    }

    /// Serializes to the `.qbc` text format.
    pub fn to_qbc(&self) -> String {
        write_qbc(self)
    }

    /// Parses the `.qbc` text format; the result is validated.
    pub fn from_qbc(text: &str) -> Result<Circuit, QbcError> {
        parse_qbc(text)
    }

    /// Exports to an OpenQASM 3 subset (x, cx, ccx, swap, cswap).
    pub fn to_qasm3(&self) -> Result<String, QasmError> {
        write_qasm3(self)
    }
}

/// Identity embed map for translating a circuit into the low qubits of a
/// wider host.
pub fn identity_map(width: usize) -> Vec<usize> {
    (0..width).collect()
}
