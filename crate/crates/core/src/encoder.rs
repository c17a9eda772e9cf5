//! Circuits that recode a binary register into Booth digit codes.
//!
//! Each digit of the recoded multiplier is held in a two-qubit code
//! (x′, x″): |00⟩ ≡ 0, |01⟩ ≡ +1, |10⟩ ≡ −1. Ordered by digit value the
//! codes form a Gray sequence (adjacent digits differ in exactly one code
//! bit), which keeps the downstream control stage simple. |11⟩ never arises
//! from a properly prepared input and decodes as an error.
//!
//! The n-qubit encoder is a cascade of n pair-encoder blocks. Block `i`
//! first copies bit x₍ᵢ₋₁₎ into the fresh x″ ancilla of its code pair (the
//! lowest block reads the implicit 0 sitting below x₀, so it skips the
//! copy), then applies the two pair-encoder gates controlled on xᵢ. The x
//! register is only ever used as controls, so it carries through unchanged,
//! and the inverse cascade restores every code ancilla to |0⟩.

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::numeric::BitVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncoderError {
    #[error("encoder width must be at least 1")]
    WidthZero,
    #[error("invalid digit code (1,1) at digit {digit}")]
    InvalidCode { digit: usize },
}

/// Two-qubit Booth digit code. `hi` is x′ (the sign/weight qubit), `lo`
/// is x″.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitCode {
    pub hi: bool,
    pub lo: bool,
}

impl DigitCode {
    pub fn new(hi: bool, lo: bool) -> Self {
        Self { hi, lo }
    }

    pub fn for_digit(digit: i8) -> Self {
        match digit {
            0 => Self::new(false, false),
            1 => Self::new(false, true),
            -1 => Self::new(true, false),
            _ => panic!("digit {digit} outside {{-1, 0, +1}}"),
        }
    }
}

/// Decodes a digit code through the Gray-code mapping; (1,1) signals a
/// corrupted encoder output.
pub fn decode_digit(code: DigitCode) -> Result<i8, EncoderError> {
    match (code.hi, code.lo) {
        (false, false) => Ok(0),
        (false, true) => Ok(1),
        (true, false) => Ok(-1),
        (true, true) => Err(EncoderError::InvalidCode { digit: 0 }),
    }
}

/// Qubit geometry of the n-bit encoder: inputs x₀..x₍ₙ₋₁₎ on qubits 0..n,
/// then one two-qubit code pair per digit, 3n qubits in total (n inputs
/// plus 2n ancillas prepared to |0⟩).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncoderLayout {
    n: usize,
}

impl EncoderLayout {
    pub fn new(n: usize) -> Result<Self, EncoderError> {
        if n == 0 {
            return Err(EncoderError::WidthZero);
        }
        Ok(Self { n })
    }

    /// Number of bits in the encoded chain.
    pub fn chain_width(&self) -> usize {
        self.n
    }

    /// Total qubit count: 3n.
    pub fn width(&self) -> usize {
        3 * self.n
    }

    /// Input qubit carrying xᵢ.
    pub fn x_qubit(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        i
    }

    /// x″ qubit of digit `i`'s code pair; doubles as the copy target that
    /// carries x₍ᵢ₋₁₎ into the block.
    pub fn code_lo(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        self.n + 2 * i
    }

    /// x′ qubit of digit `i`'s code pair.
    pub fn code_hi(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        self.n + 2 * i + 1
    }

    /// Declares the `x` and `code<i>` registers on a circuit of this width.
    pub fn apply_registers(&self, circuit: &mut Circuit) {
        circuit
            .add_register("x", 0, self.n)
            .expect("x register fits the layout");
        for i in 0..self.n {
            circuit
                .add_register(&format!("code{i}"), self.code_lo(i), 2)
                .expect("code registers are disjoint by construction");
        }
    }

    /// Reads digit `i`'s code pair out of a basis state.
    pub fn read_code(&self, state: &BitVec, i: usize) -> DigitCode {
        DigitCode::new(state.get(self.code_hi(i)), state.get(self.code_lo(i)))
    }

    /// Decodes the full digit vector from a post-encoder basis state.
    pub fn read_digits(&self, state: &BitVec) -> Result<Vec<i8>, EncoderError> {
        (0..self.n)
            .map(|i| {
                decode_digit(self.read_code(state, i))
                    .map_err(|_| EncoderError::InvalidCode { digit: i })
            })
            .collect()
    }
}

/// The two-gate block that encodes a pair of adjacent bits: qubit 0 carries
/// the upper bit (preserved), qubit 1 starts at |0⟩ and receives x′, qubit
/// 2 carries the lower bit and ends as x″.
pub fn build_pair_encoder() -> Circuit {
    let mut c = Circuit::new(3);
    c.cx(0, 2);
    c.cswap(0, 1, 2);
    c
}

/// Builds the n-qubit Booth encoder: for every basis input with the 2n
/// ancillas at |0⟩, code pair `i` of the output equals the digit code of
/// digit `i` under [`crate::numeric::booth_recode`].
pub fn build_booth_encoder(n: usize) -> Result<(Circuit, EncoderLayout), EncoderError> {
    let layout = EncoderLayout::new(n)?;
    let mut c = Circuit::new(layout.width());
    layout.apply_registers(&mut c);
    let pair = build_pair_encoder();
    // Blocks are emitted MSB to LSB; they only share control qubits, so the
    // order affects depth, not function.
    for i in (0..n).rev() {
        if i >= 1 {
            c.push(Gate::Cnot {
                control: layout.x_qubit(i - 1),
                target: layout.code_lo(i),
            });
        }
        let map = [layout.x_qubit(i), layout.code_hi(i), layout.code_lo(i)];
        let block = pair
            .embed(layout.width(), &map)
            .expect("block map is injective and in range");
        c = c.compose(&block).expect("widths match");
    }
    debug_assert_eq!(c.validate(), Ok(()));
    Ok((c, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::numeric::booth_recode;
    use crate::simulator::{as_permutation, run_basis};

    fn encode(n: usize, chain: u64) -> (BitVec, EncoderLayout) {
        let (circuit, layout) = build_booth_encoder(n).unwrap();
        let mut input = BitVec::zeros(layout.width());
        input.write_slice(0, &BitVec::from_unsigned(chain, n));
        (run_basis(&circuit, &input).unwrap(), layout)
    }

    #[test]
    fn pair_encoder_structure() {
        let c = build_pair_encoder();
        assert_eq!(c.gates().len(), 2);
        assert_eq!(c.gates()[0], Gate::Cnot { control: 0, target: 2 });
        assert_eq!(c.gates()[1].kind(), GateKind::Cswap);
    }

    #[test]
    fn pair_encoder_is_reversible_on_all_inputs() {
        // Including inputs with the x′ ancilla at 1, outside the prepared
        // table.
        let c = build_pair_encoder();
        let perm = as_permutation(&c, 12).unwrap();
        assert_eq!(perm.len(), 8);
    }

    #[test]
    fn digit_code_mapping() {
        assert_eq!(decode_digit(DigitCode::new(false, true)), Ok(1));
        assert_eq!(decode_digit(DigitCode::new(false, false)), Ok(0));
        assert_eq!(decode_digit(DigitCode::new(true, false)), Ok(-1));
        assert!(decode_digit(DigitCode::new(true, true)).is_err());
        for d in [-1, 0, 1] {
            assert_eq!(decode_digit(DigitCode::for_digit(d)), Ok(d));
        }
    }

    #[test]
    fn codes_of_adjacent_digits_differ_in_one_bit() {
        let distance = |a: DigitCode, b: DigitCode| {
            usize::from(a.hi != b.hi) + usize::from(a.lo != b.lo)
        };
        // In digit order -1, 0, +1 the codes are 10, 00, 01: each step of
        // one in digit value is one bit of code distance.
        for (a, b) in [(-1i8, 0i8), (0, 1)] {
            assert_eq!(
                distance(DigitCode::for_digit(a), DigitCode::for_digit(b)),
                1,
                "{a} vs {b}"
            );
        }
        assert_eq!(
            distance(DigitCode::for_digit(-1), DigitCode::for_digit(1)),
            2
        );
    }

    #[test]
    fn encoder_rejects_width_zero() {
        assert!(matches!(build_booth_encoder(0), Err(EncoderError::WidthZero)));
    }

    #[test]
    fn encodes_0011_as_expected_digits() {
        let (output, layout) = encode(4, 0b0011);
        let expected = [
            DigitCode::new(true, false),  // d0 = -1
            DigitCode::new(false, false), // d1 = 0
            DigitCode::new(false, true),  // d2 = +1
            DigitCode::new(false, false), // d3 = 0
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(layout.read_code(&output, i), *want, "digit {i}");
        }
    }

    #[test]
    fn encodes_zero_chain_as_all_zero_codes() {
        let (output, layout) = encode(4, 0);
        for i in 0..4 {
            assert_eq!(layout.read_code(&output, i), DigitCode::new(false, false));
        }
    }

    #[test]
    fn single_bit_chain_encodes_minus_one() {
        let (output, layout) = encode(1, 1);
        assert_eq!(layout.read_code(&output, 0), DigitCode::new(true, false));
    }

    #[test]
    fn encoder_matches_recode_oracle_exhaustively() {
        for n in 1..=5usize {
            let (circuit, layout) = build_booth_encoder(n).unwrap();
            for chain in 0..(1u64 << n) {
                let chain_bits = BitVec::from_unsigned(chain, n);
                let mut input = BitVec::zeros(layout.width());
                input.write_slice(0, &chain_bits);
                let output = run_basis(&circuit, &input).unwrap();
                let digits = layout.read_digits(&output).unwrap_or_else(|e| {
                    panic!("invalid code for n={n} chain={chain_bits}: {e}")
                });
                let expected = booth_recode(&chain_bits);
                for (i, d) in digits.iter().enumerate() {
                    assert_eq!(*d, expected.digit(i), "n={n} chain={chain_bits} digit {i}");
                }
                // The x register is never written, only read.
                assert_eq!(output.slice(0, n), chain_bits);
            }
        }
    }

    #[test]
    fn encoder_round_trip_is_identity() {
        // Exhaustive wherever the full basis fits the permutation limit.
        for n in 1..=4usize {
            let (circuit, layout) = build_booth_encoder(n).unwrap();
            let round = circuit.compose(&circuit.inverse()).unwrap();
            let perm = as_permutation(&round, 12).unwrap();
            assert!(perm.is_identity(), "n={n} width={}", layout.width());
        }
        // Randomized above the limit.
        let (circuit, layout) = build_booth_encoder(5).unwrap();
        let round = circuit.compose(&circuit.inverse()).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..10_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let input = BitVec::from_unsigned(state >> 16, layout.width());
            assert_eq!(run_basis(&round, &input).unwrap(), input);
        }
    }

    #[test]
    fn gate_count_closed_form() {
        // Per block: one copy CNOT (absent in the lowest block), one CNOT,
        // one CSWAP; 3n - 1 gates in total.
        for n in 1..=8usize {
            let (circuit, _) = build_booth_encoder(n).unwrap();
            let counts = circuit.gate_counts();
            assert_eq!(counts.cx, 2 * n - 1, "n={n}");
            assert_eq!(counts.cswap, n, "n={n}");
            assert_eq!(counts.total(), 3 * n - 1, "n={n}");
        }
    }

    #[test]
    fn registers_are_named_and_placed() {
        let (circuit, layout) = build_booth_encoder(4).unwrap();
        assert_eq!(circuit.register("x").unwrap().len, 4);
        for i in 0..4 {
            let r = circuit.register(&format!("code{i}")).unwrap();
            assert_eq!(r.offset, layout.code_lo(i));
            assert_eq!(r.len, 2);
        }
    }

    #[test]
    fn invalid_code_never_appears_on_prepared_inputs() {
        for n in 1..=5usize {
            let (circuit, layout) = build_booth_encoder(n).unwrap();
            for chain in 0..(1u64 << n) {
                let mut input = BitVec::zeros(layout.width());
                input.write_slice(0, &BitVec::from_unsigned(chain, n));
                let output = run_basis(&circuit, &input).unwrap();
                assert!(layout.read_digits(&output).is_ok(), "n={n} chain={chain}");
            }
        }
    }
}
