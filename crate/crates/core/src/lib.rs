//! Booth-recoded reversible multiplier circuits: synthesis, simulation, and
//! verification.
//!
//! The crate synthesizes a signed-integer multiplier as an explicit
//! reversible gate-level circuit for any operand width n, simulates it on
//! computational-basis inputs and sparse superpositions, and verifies it
//! against a classical reference implementation of Booth's algorithm.
//!
//! # Modules
//!
//! - [`numeric`] — two's-complement arithmetic, Booth recoding, and the
//!   classical Booth machine used as the reference oracle.
//! - [`circuit`] — the reversible gate IR (X, CNOT, SWAP, CSWAP, MCX with
//!   per-control polarity), named registers, inversion, composition,
//!   embedding, structural metrics, the `.qbc` text format, and OpenQASM 3
//!   export.
//! - [`simulator`] — basis-state and sparse-superposition execution, plus
//!   exhaustive permutation certification.
//! - [`encoder`] — the cascaded Booth encoder circuit and digit-code
//!   decoding.
//! - [`multiplier`] — partial-product loaders, correction register, ripple
//!   adders, the adder tree, and the assembled end-to-end multiplier.
//! - [`verify`] — exhaustive and seeded-random verification sweeps.
//!
//! # Example
//!
//! ```
//! use qbooth::multiplier::qbm_multiply;
//! use qbooth::numeric::SignedWord;
//!
//! let x = SignedWord::new(3, 4).unwrap();
//! let y = SignedWord::new(7, 4).unwrap();
//! let result = qbm_multiply(x, y).unwrap();
//! assert_eq!(result.product.value(), 21);
//! assert_eq!(result.result_bits().to_string(), "00010101");
//! assert!(result.cleanliness.is_clean());
//! ```
//!
//! Sweep-style operations (permutation tables, verification runs) fan out
//! over rayon when the default `parallel` feature is enabled; building with
//! `--no-default-features` leaves a purely sequential crate with the same
//! API surface.

pub mod circuit;
pub mod encoder;
pub mod multiplier;
pub mod numeric;
pub mod simulator;
mod threading;
pub mod verify;

pub use threading::Threading;
