//! OpenQASM 3 export over the gate subset `x`, `cx`, `ccx`, `swap`, `cswap`.
//!
//! Open controls are lowered by conjugating the control qubit with `x`.
//! A multi-controlled X with three controls is lowered through one clean
//! scratch qubit appended past the circuit (`ccx` into the scratch, `ccx`
//! from it, `ccx` to restore it); more than three controls is rejected.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Circuit, Gate, Polarity};

/// Highest control count the exporter lowers.
pub const MAX_EXPORT_CONTROLS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QasmError {
    #[error("mcx with {0} controls exceeds the {MAX_EXPORT_CONTROLS}-control export limit")]
    TooManyControls(usize),
}

pub fn write_qasm3(circuit: &Circuit) -> Result<String, QasmError> {
    let mut needs_scratch = false;
    for gate in circuit.gates() {
        if let Gate::Mcx { controls, .. } = gate {
            if controls.len() > MAX_EXPORT_CONTROLS {
                return Err(QasmError::TooManyControls(controls.len()));
            }
            if controls.len() == 3 {
                needs_scratch = true;
            }
        }
    }

    let scratch = circuit.width();
    let total = circuit.width() + usize::from(needs_scratch);
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    let mut registers: Vec<(&str, super::QubitRange)> = circuit.registers().collect();
    registers.sort_by_key(|(_, r)| r.offset);
    for (name, range) in registers {
        let _ = writeln!(out, "// reg {name} q[{}..{}]", range.offset, range.end());
    }
    if needs_scratch {
        let _ = writeln!(out, "// q[{scratch}] is a clean scratch for 3-control gates");
    }
    let _ = writeln!(out, "qubit[{total}] q;");

    for gate in circuit.gates() {
        match gate {
            Gate::X { target } => {
                let _ = writeln!(out, "x q[{target}];");
            }
            Gate::Cnot { control, target } => {
                let _ = writeln!(out, "cx q[{control}], q[{target}];");
            }
            Gate::Swap { a, b } => {
                let _ = writeln!(out, "swap q[{a}], q[{b}];");
            }
            Gate::Cswap { control, a, b } => {
                let _ = writeln!(out, "cswap q[{control}], q[{a}], q[{b}];");
            }
            Gate::Mcx { controls, target } => {
                let opens: Vec<usize> = controls
                    .iter()
                    .filter(|c| c.polarity == Polarity::Open)
                    .map(|c| c.qubit)
                    .collect();
                for &q in &opens {
                    let _ = writeln!(out, "x q[{q}];");
                }
                let qs: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                match qs.as_slice() {
                    [] => {
                        let _ = writeln!(out, "x q[{target}];");
                    }
                    [c] => {
                        let _ = writeln!(out, "cx q[{c}], q[{target}];");
                    }
                    [c0, c1] => {
                        let _ = writeln!(out, "ccx q[{c0}], q[{c1}], q[{target}];");
                    }
                    [c0, c1, c2] => {
                        let _ = writeln!(out, "ccx q[{c0}], q[{c1}], q[{scratch}];");
                        let _ = writeln!(out, "ccx q[{scratch}], q[{c2}], q[{target}];");
                        let _ = writeln!(out, "ccx q[{c0}], q[{c1}], q[{scratch}];");
                    }
                    _ => unreachable!("checked above"),
                }
                for &q in &opens {
                    let _ = writeln!(out, "x q[{q}];");
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{Circuit, Control};
    use super::*;

    #[test]
    fn exports_plain_gates() {
        let mut c = Circuit::new(3);
        c.add_register("r", 0, 3).unwrap();
        c.x(0);
        c.cx(0, 1);
        c.swap(1, 2);
        c.cswap(0, 1, 2);
        let qasm = c.to_qasm3().unwrap();
        assert!(qasm.starts_with("OPENQASM 3.0;\n"));
        assert!(qasm.contains("qubit[3] q;"));
        assert!(qasm.contains("x q[0];"));
        assert!(qasm.contains("cx q[0], q[1];"));
        assert!(qasm.contains("swap q[1], q[2];"));
        assert!(qasm.contains("cswap q[0], q[1], q[2];"));
    }

    #[test]
    fn lowers_open_controls_with_x_conjugation() {
        let mut c = Circuit::new(3);
        c.mcx(vec![Control::open(0), Control::closed(1)], 2);
        let qasm = c.to_qasm3().unwrap();
        let lines: Vec<&str> = qasm.lines().skip(3).collect();
        assert_eq!(lines, vec!["x q[0];", "ccx q[0], q[1], q[2];", "x q[0];"]);
    }

    #[test]
    fn lowers_three_controls_through_scratch() {
        let mut c = Circuit::new(4);
        c.mcx(
            vec![Control::closed(0), Control::closed(1), Control::closed(2)],
            3,
        );
        let qasm = c.to_qasm3().unwrap();
        assert!(qasm.contains("qubit[5] q;"));
        assert!(qasm.contains("ccx q[0], q[1], q[4];"));
        assert!(qasm.contains("ccx q[4], q[2], q[3];"));
        assert_eq!(qasm.matches("ccx q[0], q[1], q[4];").count(), 2);
    }

    #[test]
    fn rejects_more_than_three_controls() {
        let mut c = Circuit::new(5);
        c.mcx(
            vec![
                Control::closed(0),
                Control::closed(1),
                Control::closed(2),
                Control::closed(3),
            ],
            4,
        );
        assert_eq!(c.to_qasm3(), Err(QasmError::TooManyControls(4)));
    }

    #[test]
    fn no_scratch_when_not_needed() {
        let mut c = Circuit::new(3);
        c.mcx(vec![Control::closed(0)], 1);
        let qasm = c.to_qasm3().unwrap();
        assert!(qasm.contains("qubit[3] q;"));
        assert!(qasm.contains("cx q[0], q[1];"));
    }
}
