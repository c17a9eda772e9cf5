//! Two's-complement arithmetic, Booth recoding, and the classical Booth
//! multiplier state machine.
//!
//! Everything in this module is plain classical arithmetic on fixed-width
//! registers. [`classical_booth_multiply`] is the reference implementation
//! the circuit pipeline is verified against; it also produces the per-cycle
//! trace rendered by the `trace` CLI command.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest register width supported by the signed-integer conversions.
///
/// Values are carried in `i64`, so a width-63 two's-complement word is the
/// widest that round-trips without overflow. Circuits and [`BitVec`]s have
/// no such limit; only integer conversion does.
pub const MAX_WORD_WIDTH: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("value {value} does not fit in {width}-bit two's complement")]
    OutOfRange { value: i64, width: usize },
    #[error("width must be between 1 and {MAX_WORD_WIDTH}, got {width}")]
    BadWidth { width: usize },
    #[error("bit chain must be non-empty")]
    EmptyChain,
    #[error("invalid character {0:?} in bit chain")]
    BadChar(char),
}

/// Fixed-width vector of binary digits with the least significant bit at
/// index 0. Text display and parsing are MSB-first, matching how register
/// contents are conventionally written.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    bits: Vec<bool>,
}

impl BitVec {
    pub fn zeros(width: usize) -> Self {
        Self {
            bits: vec![false; width],
        }
    }

    /// Wraps an LSB-first bit sequence.
    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Truncating conversion: keeps the low `width` bits of `value`.
    pub fn from_unsigned(value: u64, width: usize) -> Self {
        let bits = (0..width).map(|i| i < 64 && (value >> i) & 1 == 1).collect();
        Self { bits }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.bits[index] = value;
    }

    /// Most significant bit; the sign bit under two's-complement reading.
    pub fn msb(&self) -> bool {
        *self.bits.last().expect("msb of empty BitVec")
    }

    pub fn to_unsigned(&self) -> u64 {
        assert!(self.width() <= 64, "BitVec too wide for u64");
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn slice(&self, offset: usize, len: usize) -> BitVec {
        BitVec {
            bits: self.bits[offset..offset + len].to_vec(),
        }
    }

    pub fn write_slice(&mut self, offset: usize, src: &BitVec) {
        self.bits[offset..offset + src.width()].copy_from_slice(&src.bits);
    }

    /// Concatenates two registers, `low` supplying the less significant bits.
    pub fn concat(low: &BitVec, high: &BitVec) -> BitVec {
        let mut bits = low.bits.clone();
        bits.extend_from_slice(&high.bits);
        BitVec { bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = NumericError;

    /// Parses an MSB-first chain of `0`/`1` characters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(NumericError::EmptyChain);
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars().rev() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(NumericError::BadChar(other)),
            }
        }
        Ok(Self { bits })
    }
}

/// A signed integer known to fit a given two's-complement width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedWord {
    value: i64,
    width: usize,
}

impl SignedWord {
    pub fn new(value: i64, width: usize) -> Result<Self, NumericError> {
        if width == 0 || width > MAX_WORD_WIDTH {
            return Err(NumericError::BadWidth { width });
        }
        if value < Self::min_value(width) || value > Self::max_value(width) {
            return Err(NumericError::OutOfRange { value, width });
        }
        Ok(Self { value, width })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn min_value(width: usize) -> i64 {
        -(1i64 << (width - 1))
    }

    pub fn max_value(width: usize) -> i64 {
        (1i64 << (width - 1)) - 1
    }

    pub fn to_bits(&self) -> BitVec {
        to_twos_complement(self.value, self.width).expect("SignedWord is range-checked")
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn to_twos_complement(value: i64, width: usize) -> Result<BitVec, NumericError> {
    let word = SignedWord::new(value, width)?;
    Ok(BitVec::from_unsigned(word.value as u64, width))
}

/// Reads a register as a signed two's-complement integer.
pub fn from_twos_complement(v: &BitVec) -> i64 {
    let width = v.width();
    assert!(
        (1..=MAX_WORD_WIDTH).contains(&width),
        "width {width} outside 1..={MAX_WORD_WIDTH}"
    );
    let unsigned = v.to_unsigned() as i64;
    if v.msb() {
        unsigned - (1i64 << width)
    } else {
        unsigned
    }
}

/// Flips every bit. Applying it twice is the identity.
pub fn ones_complement(v: &BitVec) -> BitVec {
    BitVec::from_bools(v.iter().map(|b| !b).collect())
}

/// Shifts the joint register (A:Q:Q₋₁) right one position, replicating A's
/// sign bit so the sign of the accumulated product is preserved. The old
/// Q₋₁ bit falls off the end.
pub fn arithmetic_shift_right(a: &BitVec, q: &BitVec, _q_m1: bool) -> (BitVec, BitVec, bool) {
    assert_eq!(a.width(), q.width(), "A and Q widths must match");
    let n = a.width();
    let mut a2 = BitVec::zeros(n);
    let mut q2 = BitVec::zeros(n);
    for i in 0..n - 1 {
        a2.set(i, a.get(i + 1));
        q2.set(i, q.get(i + 1));
    }
    a2.set(n - 1, a.msb());
    q2.set(n - 1, a.get(0));
    (a2, q2, q.get(0))
}

/// Multiplier recoded over the digit alphabet {−1, 0, +1}; digit `i` carries
/// weight 2^i and the digit sum equals the two's-complement value of the
/// source chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoothDigits {
    digits: Vec<i8>,
}

impl BoothDigits {
    pub fn width(&self) -> usize {
        self.digits.len()
    }

    pub fn digit(&self, index: usize) -> i8 {
        self.digits[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = i8> + '_ {
        self.digits.iter().copied()
    }

    /// Σᵢ dᵢ·2^i. Like the integer conversions, capped at
    /// [`MAX_WORD_WIDTH`] digits.
    pub fn value(&self) -> i64 {
        assert!(
            self.width() <= MAX_WORD_WIDTH,
            "digit vector too wide for i64"
        );
        self.digits
            .iter()
            .enumerate()
            .map(|(i, &d)| i64::from(d) << i)
            .sum()
    }
}

impl fmt::Display for BoothDigits {
    /// MSB-first digit string using the glyphs `0`, `1`, and `N` (for −1).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.digits.iter().rev() {
            f.write_str(match d {
                0 => "0",
                1 => "1",
                -1 => "N",
                _ => unreachable!("digit out of alphabet"),
            })?;
        }
        Ok(())
    }
}

/// Recodes a binary chain by its transitions: dᵢ = b₍ᵢ₋₁₎ − bᵢ with b₋₁ = 0,
/// so a 1→0 boundary (scanning upward) yields −1 and a 0→1 boundary +1.
pub fn booth_recode(v: &BitVec) -> BoothDigits {
    let digits = (0..v.width())
        .map(|i| {
            let below = if i == 0 { false } else { v.get(i - 1) };
            i8::from(below) - i8::from(v.get(i))
        })
        .collect();
    BoothDigits { digits }
}

/// Register snapshot of the classical Booth machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoothMachineState {
    pub a: BitVec,
    pub q: BitVec,
    pub q_m1: bool,
    pub m: BitVec,
    pub cycle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddSub {
    AddM,
    SubM,
}

/// One machine cycle: an optional add/subtract snapshot followed by the
/// mandatory post-shift snapshot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoothCycle {
    pub add_sub: Option<(AddSub, BoothMachineState)>,
    pub shifted: BoothMachineState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoothTrace {
    pub initial: BoothMachineState,
    pub cycles: Vec<BoothCycle>,
}

/// Runs the classical Booth machine: multiplier `x` in Q, multiplicand `y`
/// in M, accumulator A initialized to 0. Each of the n cycles inspects
/// (Q₀, Q₋₁): 10 subtracts M from A, 01 adds M, equal bits do neither; every
/// cycle then applies the arithmetic shift. The product is read from (A:Q)
/// as a 2n-bit two's-complement word.
///
/// The add/subtract can transiently produce exactly +2^(n−1) when M is the
/// most negative word; the shift therefore replicates the sign of the
/// (n+1)-bit sum rather than the stored A's top bit, which would have
/// wrapped. Snapshots still show the n-bit register pattern, as hardware
/// would.
pub fn classical_booth_multiply(x: SignedWord, y: SignedWord) -> (SignedWord, BoothTrace) {
    assert_eq!(x.width(), y.width(), "operand widths must match");
    let n = x.width();
    let m = y.to_bits();
    let mask = (1u64 << n) - 1;
    // A's true value; |A| stays within 2^(n-1) except right after an
    // add/subtract involving M = -2^(n-1), where it reaches +2^(n-1).
    let mut a: i64 = 0;
    let mut q = x.to_bits();
    let mut q_m1 = false;

    let snapshot = |a: i64, q: &BitVec, q_m1: bool, cycle: usize| BoothMachineState {
        a: BitVec::from_unsigned(a as u64 & mask, n),
        q: q.clone(),
        q_m1,
        m: m.clone(),
        cycle,
    };

    let initial = snapshot(a, &q, q_m1, 0);
    let mut cycles = Vec::with_capacity(n);
    for cycle in 1..=n {
        let op = match (q.get(0), q_m1) {
            (true, false) => Some(AddSub::SubM),
            (false, true) => Some(AddSub::AddM),
            _ => None,
        };
        let add_sub = op.map(|op| {
            match op {
                AddSub::SubM => a -= y.value(),
                AddSub::AddM => a += y.value(),
            }
            (op, snapshot(a, &q, q_m1, cycle))
        });
        let mut q2 = BitVec::zeros(n);
        for i in 0..n - 1 {
            q2.set(i, q.get(i + 1));
        }
        q2.set(n - 1, a & 1 == 1);
        q_m1 = q.get(0);
        q = q2;
        a >>= 1;
        cycles.push(BoothCycle {
            add_sub,
            shifted: snapshot(a, &q, q_m1, cycle),
        });
    }

    let product_bits = BitVec::concat(&q, &BitVec::from_unsigned(a as u64 & mask, n));
    let product =
        SignedWord::new(from_twos_complement(&product_bits), 2 * n).expect("product fits 2n bits");
    (product, BoothTrace { initial, cycles })
}

/// Renders a trace as a fixed-width text table with columns A, Q, Q-1, M
/// and the action taken at each row.
pub fn render_trace(trace: &BoothTrace) -> String {
    let n = trace.initial.a.width();
    let reg = n.max(4);
    let mut out = format!(
        "{:<reg$}  {:<reg$}  {:<3}  {:<reg$}  {}\n",
        "A", "Q", "Q-1", "M", "Action"
    );
    let mut row = |a: &BitVec, q: &BitVec, q_m1: bool, m: &BitVec, action: &str| {
        out.push_str(&format!(
            "{:<reg$}  {:<reg$}  {:<3}  {:<reg$}  {}\n",
            a.to_string(),
            q.to_string(),
            u8::from(q_m1),
            m.to_string(),
            action,
        ));
    };
    let init = &trace.initial;
    row(&init.a, &init.q, init.q_m1, &init.m, "initial");
    for cycle in &trace.cycles {
        if let Some((op, state)) = &cycle.add_sub {
            let action = match op {
                AddSub::AddM => "A <- A + M",
                AddSub::SubM => "A <- A - M",
            };
            row(&state.a, &state.q, state.q_m1, &state.m, action);
        }
        let s = &cycle.shifted;
        row(&s.a, &s.q, s.q_m1, &s.m, &format!("shift (cycle {})", s.cycle));
    }
    out
}
