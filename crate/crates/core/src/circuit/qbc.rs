//! The `.qbc` text circuit format.
//!
//! Line-oriented, one statement per line, `#` starts a comment:
//!
//! ```text
//! qbc 1
//! qubits <N>
//! reg <name> <offset> <length>
//! x <t>
//! cx <c> <t>
//! swap <a> <b>
//! cswap <c> <a> <b>
//! mcx <±q>... <t>
//! ```
//!
//! In `mcx` lines, `+q` is a closed control and `-q` an open control on
//! qubit `q`; the final token is the target. The writer emits the canonical
//! form: header, qubit count, registers sorted by offset, then gates in
//! order.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, CircuitError, Control, Gate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QbcError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `qbc 1` header")]
    MissingHeader,
    #[error("missing `qubits` declaration")]
    MissingQubits,
    #[error("parsed circuit is invalid: {0}")]
    Invalid(#[from] CircuitError),
}

fn syntax(line: usize, message: impl Into<String>) -> QbcError {
    QbcError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn write_qbc(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("qbc 1\n");
    let _ = writeln!(out, "qubits {}", circuit.width());
    let mut registers: Vec<(&str, super::QubitRange)> = circuit.registers().collect();
    registers.sort_by_key(|(_, r)| r.offset);
    for (name, range) in registers {
        let _ = writeln!(out, "reg {name} {} {}", range.offset, range.len);
    }
    for gate in circuit.gates() {
        match gate {
            Gate::X { target } => {
                let _ = writeln!(out, "x {target}");
            }
            Gate::Cnot { control, target } => {
                let _ = writeln!(out, "cx {control} {target}");
            }
            Gate::Swap { a, b } => {
                let _ = writeln!(out, "swap {a} {b}");
            }
            Gate::Cswap { control, a, b } => {
                let _ = writeln!(out, "cswap {control} {a} {b}");
            }
            Gate::Mcx { controls, target } => {
                out.push_str("mcx");
                for c in controls {
                    let sign = match c.polarity {
                        super::Polarity::Closed => '+',
                        super::Polarity::Open => '-',
                    };
                    let _ = write!(out, " {sign}{}", c.qubit);
                }
                let _ = writeln!(out, " {target}");
            }
        }
    }
    out
}

pub fn parse_qbc(text: &str) -> Result<Circuit, QbcError> {
    let mut circuit: Option<Circuit> = None;
    let mut saw_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !saw_header {
            if tokens != ["qbc", "1"] {
                return Err(syntax(line_no, "expected `qbc 1` header"));
            }
            saw_header = true;
            continue;
        }
        if circuit.is_none() {
            match tokens.as_slice() {
                ["qubits", count] => {
                    let width = count
                        .parse::<usize>()
                        .map_err(|_| syntax(line_no, format!("bad qubit count {count:?}")))?;
                    circuit = Some(Circuit::new(width));
                    continue;
                }
                _ => return Err(syntax(line_no, "expected `qubits <N>` declaration")),
            }
        }
        let c = circuit.as_mut().expect("set above");
        match tokens.as_slice() {
            ["qubits", ..] => return Err(syntax(line_no, "duplicate `qubits` declaration")),
            ["reg", name, offset, len] => {
                let offset = parse_index(offset, line_no)?;
                let len = parse_index(len, line_no)?;
                c.add_register(name, offset, len)?;
            }
            ["x", target] => c.x(parse_index(target, line_no)?),
            ["cx", control, target] => {
                c.cx(parse_index(control, line_no)?, parse_index(target, line_no)?)
            }
            ["swap", a, b] => c.swap(parse_index(a, line_no)?, parse_index(b, line_no)?),
            ["cswap", control, a, b] => c.cswap(
                parse_index(control, line_no)?,
                parse_index(a, line_no)?,
                parse_index(b, line_no)?,
            ),
            ["mcx", rest @ ..] if !rest.is_empty() => {
                let (target, controls) = rest.split_last().expect("non-empty");
                let controls = controls
                    .iter()
                    .map(|tok| parse_control(tok, line_no))
                    .collect::<Result<Vec<Control>, QbcError>>()?;
                c.mcx(controls, parse_index(target, line_no)?);
            }
            [op, ..] => return Err(syntax(line_no, format!("unknown statement {op:?}"))),
            [] => unreachable!("empty token list handled above"),
        }
    }

    if !saw_header {
        return Err(QbcError::MissingHeader);
    }
    let circuit = circuit.ok_or(QbcError::MissingQubits)?;
    circuit.validate()?;
    Ok(circuit)
}

fn parse_index(token: &str, line: usize) -> Result<usize, QbcError> {
    token
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("bad qubit index {token:?}")))
}

fn parse_control(token: &str, line: usize) -> Result<Control, QbcError> {
    let polarity = match token.chars().next() {
        Some('+') => super::Polarity::Closed,
        Some('-') => super::Polarity::Open,
        _ => {
            return Err(syntax(
                line,
                format!("control {token:?} must start with `+` or `-`"),
            ))
        }
    };
    Ok(Control {
        qubit: parse_index(&token[1..], line)?,
        polarity,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{identity_map, Circuit, Control, Gate, Polarity};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_canonical_form() {
        let mut c = Circuit::new(4);
        c.add_register("b", 2, 2).unwrap();
        c.add_register("a", 0, 2).unwrap();
        c.x(0);
        c.mcx(vec![Control::closed(0), Control::open(2)], 3);
        assert_eq!(
            c.to_qbc(),
            "qbc 1\nqubits 4\nreg a 0 2\nreg b 2 2\nx 0\nmcx +0 -2 3\n"
        );
    }

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "\n# a comment\nqbc 1\nqubits 3 # trailing\n\nreg r 0 3\ncx 0 1\nswap 1 2\ncswap 0 1 2\nmcx 2\n";
        let c = Circuit::from_qbc(text).unwrap();
        assert_eq!(c.width(), 3);
        assert_eq!(c.gates().len(), 4);
        assert_eq!(c.gates()[3], Gate::Mcx { controls: vec![], target: 2 });
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(Circuit::from_qbc(""), Err(QbcError::MissingHeader));
        assert_eq!(Circuit::from_qbc("qbc 1\n"), Err(QbcError::MissingQubits));
        assert!(matches!(
            Circuit::from_qbc("qbc 2\n"),
            Err(QbcError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            Circuit::from_qbc("qbc 1\nqubits 2\nfrobnicate 1\n"),
            Err(QbcError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            Circuit::from_qbc("qbc 1\nqubits 2\nmcx ?1 0\n"),
            Err(QbcError::Syntax { line: 3, .. })
        ));
        // Structurally bad circuits fail validation after parsing.
        assert!(matches!(
            Circuit::from_qbc("qbc 1\nqubits 2\ncx 1 1\n"),
            Err(QbcError::Invalid(_))
        ));
        assert!(matches!(
            Circuit::from_qbc("qbc 1\nqubits 2\nx 5\n"),
            Err(QbcError::Invalid(_))
        ));
    }

    fn arb_polarity() -> impl Strategy<Value = Polarity> {
        prop::bool::ANY.prop_map(|b| if b { Polarity::Closed } else { Polarity::Open })
    }

    fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
        let qubits = prop::sample::subsequence((0..width).collect::<Vec<_>>(), 4);
        (0..5usize, qubits, prop::collection::vec(arb_polarity(), 4)).prop_map(
            |(kind, qs, pols)| match kind {
                0 => Gate::X { target: qs[0] },
                1 => Gate::Cnot { control: qs[0], target: qs[1] },
                2 => Gate::Swap { a: qs[0], b: qs[1] },
                3 => Gate::Cswap { control: qs[0], a: qs[1], b: qs[2] },
                _ => Gate::Mcx {
                    controls: (0..qs[3] % 4)
                        .map(|i| Control { qubit: qs[i], polarity: pols[i] })
                        .collect(),
                    target: qs[3],
                },
            },
        )
    }

    proptest! {
        #[test]
        fn round_trips_structurally(gates in prop::collection::vec(arb_gate(7), 0..30)) {
            let mut c = Circuit::new(7);
            c.add_register("lo", 0, 3).unwrap();
            c.add_register("hi", 3, 4).unwrap();
            for g in gates {
                c.push(g);
            }
            let parsed = Circuit::from_qbc(&c.to_qbc()).unwrap();
            prop_assert_eq!(parsed, c);
        }
    }

    #[test]
    fn round_trip_keeps_embedded_registers() {
        let mut c = Circuit::new(3);
        c.add_register("r", 0, 3).unwrap();
        c.cx(0, 2);
        let moved = c.embed(5, &identity_map(3)).unwrap();
        let parsed = Circuit::from_qbc(&moved.to_qbc()).unwrap();
        assert_eq!(parsed, moved);
    }
}
