//! The full reversible Booth multiplier: encoder, controlled partial-product
//! loading, correction register, adder tree, and final uncompute.
//!
//! Pipeline for width n, on basis input (x, y, ancillas |0⟩):
//!
//! 1. The Booth encoder writes digit codes for x into the code pairs.
//! 2. For each digit i, a loader stage fills the 2n-qubit register PPᵢ:
//!    nothing for digit 0, the sign-extended multiplicand shifted left i for
//!    digit +1, and its bitwise complement for digit −1. Shifts are static
//!    wiring (digit i's loader simply targets PPᵢ\[i+j\]), so no shift
//!    gates exist anywhere.
//! 3. A one-gate-per-digit stage sets bit i of the correction register C for
//!    every −1 digit, supplying the "+1" that turns each one's-complement
//!    partial product into a two's-complement contribution.
//! 4. A balanced tree of in-place ripple-carry adders sums the partial
//!    products pairwise, folds any unpaired trailing operand into the last
//!    level, and adds C last. The total lands in PP₀, aliased `result`.
//! 5. The inverse encoder restores the code ancillas to |0⟩.
//!
//! ΣᵢPPᵢ + C ≡ x·y (mod 2^2n) and the product always fits 2n bits, so the
//! modular wrap never corrupts a valid output. X, Y, the encoder ancillas,
//! and the adder carries all come back clean; the other PP registers and C
//! keep their intermediate sums.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::circuit::{identity_map, Circuit, Control, Gate, GateCounts, QubitRange};
use crate::encoder::{build_booth_encoder, EncoderLayout};
use crate::numeric::{from_twos_complement, BitVec, NumericError, SignedWord, MAX_WORD_WIDTH};
use crate::simulator::run_basis;

/// Widest multiplier the integer read-out supports (2n must stay within
/// [`MAX_WORD_WIDTH`]).
pub const MAX_MULTIPLIER_WIDTH: usize = MAX_WORD_WIDTH / 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiplierError {
    #[error("multiplier width must be at least 1")]
    WidthZero,
    #[error("multiplier width {n} exceeds the supported maximum {MAX_MULTIPLIER_WIDTH}")]
    WidthTooLarge { n: usize },
    #[error("operand widths differ: x is {x} bits, y is {y} bits")]
    OperandWidthMismatch { x: usize, y: usize },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Qubit geometry of the width-n multiplier.
///
/// Layout, in qubit order: the encoder block (x on `[0, n)`, one two-qubit
/// code pair per digit), the multiplicand y, the n partial-product registers
/// of 2n qubits each, the 2n-qubit correction register, and one carry
/// ancilla per adder. `result` aliases PP₀, where the adder tree leaves the
/// total.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplierLayout {
    n: usize,
}

impl MultiplierLayout {
    pub fn new(n: usize) -> Result<Self, MultiplierError> {
        if n == 0 {
            return Err(MultiplierError::WidthZero);
        }
        if n > MAX_MULTIPLIER_WIDTH {
            return Err(MultiplierError::WidthTooLarge { n });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total qubit count: 2n² + 7n.
    pub fn width(&self) -> usize {
        let n = self.n;
        2 * n * n + 7 * n
    }

    pub fn encoder(&self) -> EncoderLayout {
        EncoderLayout::new(self.n).expect("n >= 1")
    }

    pub fn x(&self) -> QubitRange {
        QubitRange::new(0, self.n)
    }

    pub fn y(&self) -> QubitRange {
        QubitRange::new(3 * self.n, self.n)
    }

    pub fn pp(&self, i: usize) -> QubitRange {
        debug_assert!(i < self.n);
        QubitRange::new(4 * self.n + 2 * self.n * i, 2 * self.n)
    }

    pub fn corr(&self) -> QubitRange {
        QubitRange::new(4 * self.n + 2 * self.n * self.n, 2 * self.n)
    }

    /// Carry ancilla used by adder `j`; there is one adder per digit.
    pub fn carry(&self, j: usize) -> usize {
        debug_assert!(j < self.adder_count());
        self.corr().end() + j
    }

    /// n adders in total: n − 1 to fold the partial products, one for C.
    pub fn adder_count(&self) -> usize {
        self.n
    }

    /// Where the final sum lands: an alias of PP₀.
    pub fn result(&self) -> QubitRange {
        self.pp(0)
    }

    /// Declares every register. The range holding the final sum is named
    /// `result` (registers must stay disjoint, so PP₀ carries that name and
    /// `pp0` is not declared separately).
    fn apply_registers(&self, circuit: &mut Circuit) {
        self.encoder().apply_registers(circuit);
        let add = |c: &mut Circuit, name: &str, r: QubitRange| {
            c.add_register(name, r.offset, r.len)
                .expect("layout ranges are disjoint by construction");
        };
        add(circuit, "y", self.y());
        add(circuit, "result", self.result());
        for i in 1..self.n {
            add(circuit, &format!("pp{i}"), self.pp(i));
        }
        add(circuit, "corr", self.corr());
        for j in 0..self.adder_count() {
            add(circuit, &format!("carry{j}"), QubitRange::new(self.carry(j), 1));
        }
    }

    /// Basis input with x and y loaded and every ancilla at |0⟩.
    pub fn prepare_input(&self, x: SignedWord, y: SignedWord) -> BitVec {
        debug_assert_eq!(x.width(), self.n);
        debug_assert_eq!(y.width(), self.n);
        let mut state = BitVec::zeros(self.width());
        state.write_slice(self.x().offset, &x.to_bits());
        state.write_slice(self.y().offset, &y.to_bits());
        state
    }

    /// Reads the product register of a final state as a signed integer.
    pub fn read_product(&self, state: &BitVec) -> i64 {
        let r = self.result();
        from_twos_complement(&state.slice(r.offset, r.len))
    }

    /// Checks that everything required to come back clean did.
    pub fn cleanliness(&self, state: &BitVec, x: SignedWord, y: SignedWord) -> Cleanliness {
        let xr = self.x();
        let yr = self.y();
        Cleanliness {
            x_restored: state.slice(xr.offset, xr.len) == x.to_bits(),
            y_restored: state.slice(yr.offset, yr.len) == y.to_bits(),
            encoder_ancillas_zero: state.slice(self.n, 2 * self.n).is_zero(),
            carries_zero: (0..self.adder_count()).all(|j| !state.get(self.carry(j))),
        }
    }
}

/// Post-run ancilla audit: true fields were restored to their inputs (x, y)
/// or to |0⟩ (code pairs, adder carries).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cleanliness {
    pub x_restored: bool,
    pub y_restored: bool,
    pub encoder_ancillas_zero: bool,
    pub carries_zero: bool,
}

impl Cleanliness {
    pub fn is_clean(&self) -> bool {
        self.x_restored && self.y_restored && self.encoder_ancillas_zero && self.carries_zero
    }
}

impl fmt::Display for Cleanliness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "DIRTY" };
        write!(
            f,
            "x {}, y {}, encoder ancillas {}, adder carries {}",
            mark(self.x_restored),
            mark(self.y_restored),
            mark(self.encoder_ancillas_zero),
            mark(self.carries_zero)
        )
    }
}

/// Reference semantics for a loaded partial product: the unsigned 2n-bit
/// word that digit `d` at position `i` contributes before correction.
///
/// Digit 0 loads nothing; +1 loads the multiplicand sign-extended to
/// 2n − i bits and shifted left i; −1 loads the bitwise complement of that
/// extension (low i bits left at zero), so the +1 completing two's
/// complement can later be added at position i by the correction register.
pub fn pp_reference_value(digit: i8, y: SignedWord, position: usize) -> u64 {
    let n = y.width();
    debug_assert!(position < n);
    let m = 2 * n - position;
    let mask = (1u64 << m) - 1;
    let extended = (y.value() as u64) & mask;
    match digit {
        0 => 0,
        1 => extended << position,
        -1 => (!extended & mask) << position,
        _ => panic!("digit {digit} outside {{-1, 0, +1}}"),
    }
}

/// Builds the loader stage for digit `i`: for each output bit j ∈ [i, 2n),
/// one 3-control MCX per digit sign. The +1 gate fires on code (0,1) and a
/// set multiplicand bit; the −1 gate fires on code (1,0) and a *clear*
/// multiplicand bit, loading the complement directly. Bits below position i
/// are untouched, and the invalid code (1,1) fires neither gate.
pub fn build_pp_loader(n: usize, i: usize, layout: &MultiplierLayout) -> Circuit {
    assert!(i < n);
    let mut c = Circuit::new(layout.width());
    let enc = layout.encoder();
    let hi = enc.code_hi(i);
    let lo = enc.code_lo(i);
    let y = layout.y();
    let pp = layout.pp(i);
    for j in i..2 * n {
        let yq = y.offset + (j - i).min(n - 1);
        let target = pp.offset + j;
        c.push(Gate::Mcx {
            controls: vec![Control::open(hi), Control::closed(lo), Control::closed(yq)],
            target,
        });
        c.push(Gate::Mcx {
            controls: vec![Control::closed(hi), Control::open(lo), Control::open(yq)],
            target,
        });
    }
    c
}

/// Builds the correction stage: one 2-control MCX per digit that sets C\[i\]
/// exactly when digit i's code reads −1.
pub fn build_correction_loader(n: usize, layout: &MultiplierLayout) -> Circuit {
    let mut c = Circuit::new(layout.width());
    let enc = layout.encoder();
    let corr = layout.corr();
    for i in 0..n {
        c.push(Gate::Mcx {
            controls: vec![
                Control::closed(enc.code_hi(i)),
                Control::open(enc.code_lo(i)),
            ],
            target: corr.offset + i,
        });
    }
    c
}

/// Emits an in-place ripple-carry adder over explicit wire lists:
/// (a, b, 0) → (a, a + b mod 2^w, 0). A majority ladder ripples the carry
/// up through the `a` wires, then the unmajority ladder walks back down
/// depositing sum bits in `b` and restoring `a` and the ancilla.
fn emit_ripple_adder(c: &mut Circuit, a: &[usize], b: &[usize], carry: usize) {
    assert_eq!(a.len(), b.len());
    let w = a.len();
    let carry_in = |i: usize| if i == 0 { carry } else { a[i - 1] };
    for i in 0..w {
        let x = carry_in(i);
        c.cx(a[i], b[i]);
        c.cx(a[i], x);
        c.ccx(x, b[i], a[i]);
    }
    for i in (0..w).rev() {
        let x = carry_in(i);
        c.ccx(x, b[i], a[i]);
        c.cx(a[i], x);
        c.cx(x, b[i]);
    }
}

/// Standalone in-place adder on 2w + 1 qubits: registers `a` at `[0, w)`,
/// `b` at `[w, 2w)`, one carry ancilla on the last qubit. Maps
/// (a, b, 0) → (a, a + b mod 2^w, 0).
pub fn build_ripple_adder(w: usize) -> Circuit {
    assert!(w >= 1, "adder width must be at least 1");
    let mut c = Circuit::new(2 * w + 1);
    c.add_register("a", 0, w).expect("fits");
    c.add_register("b", w, w).expect("fits");
    c.add_register("carry", 2 * w, 1).expect("fits");
    let a: Vec<usize> = (0..w).collect();
    let b: Vec<usize> = (w..2 * w).collect();
    emit_ripple_adder(&mut c, &a, &b, 2 * w);
    c
}

/// Builds the summation stage: partial products folded pairwise per level,
/// an unpaired trailing operand carried into the next level, and the
/// correction register added last. Each adder leaves its sum in the
/// lower-indexed register, so the total accumulates in PP₀.
pub fn build_adder_tree(n: usize, layout: &MultiplierLayout) -> Circuit {
    let mut c = Circuit::new(layout.width());
    let wires = |r: QubitRange| r.iter().collect::<Vec<usize>>();
    let mut operands: Vec<usize> = (0..n).collect();
    let mut next_carry = 0;
    while operands.len() > 1 {
        let mut next = Vec::with_capacity(operands.len().div_ceil(2));
        for pair in operands.chunks(2) {
            match *pair {
                [dst, src] => {
                    emit_ripple_adder(
                        &mut c,
                        &wires(layout.pp(src)),
                        &wires(layout.pp(dst)),
                        layout.carry(next_carry),
                    );
                    next_carry += 1;
                    next.push(dst);
                }
                [unpaired] => next.push(unpaired),
                _ => unreachable!("chunks(2)"),
            }
        }
        operands = next;
    }
    emit_ripple_adder(
        &mut c,
        &wires(layout.corr()),
        &wires(layout.pp(operands[0])),
        layout.carry(next_carry),
    );
    debug_assert_eq!(next_carry + 1, layout.adder_count());
    c
}

/// Assembles the complete multiplier for width n: encoder, n partial-product
/// loaders, correction loader, adder tree, inverse encoder.
pub fn build_qbm(n: usize) -> Result<(Circuit, MultiplierLayout), MultiplierError> {
    let layout = MultiplierLayout::new(n)?;
    let width = layout.width();
    let (encoder, enc_layout) = build_booth_encoder(n).expect("n >= 1 checked");
    let encoder = encoder
        .embed(width, &identity_map(enc_layout.width()))
        .expect("encoder occupies the low qubits");

    let mut host = Circuit::new(width);
    layout.apply_registers(&mut host);
    let mut c = host.compose(&encoder).expect("same width");
    for i in 0..n {
        c = c.compose(&build_pp_loader(n, i, &layout)).expect("same width");
    }
    c = c
        .compose(&build_correction_loader(n, &layout))
        .expect("same width");
    c = c.compose(&build_adder_tree(n, &layout)).expect("same width");
    c = c.compose(&encoder.inverse()).expect("same width");
    debug_assert_eq!(c.validate(), Ok(()));
    Ok((c, layout))
}

/// A built multiplier paired with its layout; what the process-wide cache
/// stores.
#[derive(Clone, Debug)]
pub struct Qbm {
    pub circuit: Circuit,
    pub layout: MultiplierLayout,
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<Qbm>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Qbm>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the width-n multiplier, building it on first use and caching it
/// for the rest of the process. Verification sweeps hit this once per width.
pub fn qbm_cached(n: usize) -> Result<Arc<Qbm>, MultiplierError> {
    let mut guard = cache().lock().expect("cache lock");
    if let Some(qbm) = guard.get(&n) {
        return Ok(Arc::clone(qbm));
    }
    let (circuit, layout) = build_qbm(n)?;
    let qbm = Arc::new(Qbm { circuit, layout });
    guard.insert(n, Arc::clone(&qbm));
    Ok(qbm)
}

/// Outcome of one end-to-end multiplication.
#[derive(Clone, Debug)]
pub struct ProductResult {
    pub product: SignedWord,
    pub final_state: BitVec,
    pub layout: MultiplierLayout,
    pub cleanliness: Cleanliness,
}

impl ProductResult {
    /// The result register's bits, MSB-first when displayed.
    pub fn result_bits(&self) -> BitVec {
        let r = self.layout.result();
        self.final_state.slice(r.offset, r.len)
    }
}

/// Multiplies two signed words by building (or reusing) the circuit,
/// preparing the basis input, running the simulator, and decoding the
/// result register. Operand range errors surface when the [`SignedWord`]s
/// are constructed, before this is reachable.
pub fn qbm_multiply(x: SignedWord, y: SignedWord) -> Result<ProductResult, MultiplierError> {
    if x.width() != y.width() {
        return Err(MultiplierError::OperandWidthMismatch {
            x: x.width(),
            y: y.width(),
        });
    }
    let qbm = qbm_cached(x.width())?;
    let input = qbm.layout.prepare_input(x, y);
    let final_state = run_basis(&qbm.circuit, &input).expect("input built to width");
    let value = qbm.layout.read_product(&final_state);
    let product = SignedWord::new(value, 2 * x.width())?;
    let cleanliness = qbm.layout.cleanliness(&final_state, x, y);
    Ok(ProductResult {
        product,
        final_state,
        layout: qbm.layout,
        cleanliness,
    })
}

/// One row of the structural metrics table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub n: usize,
    pub qubits: usize,
    pub counts: GateCounts,
    pub depth: usize,
}

/// Deterministic structural metrics for each width: qubit count, gate
/// counts by kind, and measured depth of the built multiplier. Depth is
/// reported, never asserted against a bound; the in-place ripple adders
/// here are linear-depth by construction.
pub fn circuit_stats<I>(widths: I) -> Result<Vec<StatsRow>, MultiplierError>
where
    I: IntoIterator<Item = usize>,
{
    widths
        .into_iter()
        .map(|n| {
            let qbm = qbm_cached(n)?;
            Ok(StatsRow {
                n,
                qubits: qbm.circuit.width(),
                counts: qbm.circuit.gate_counts(),
                depth: qbm.circuit.depth(),
            })
        })
        .collect()
}
