//! End-to-end tests of the `qbooth` binary: output formats, exit codes, and
//! determinism.

use std::process::{Command, Output};

fn qbooth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbooth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn multiply_prints_product_bits_and_cleanliness() {
    let out = qbooth(&["multiply", "--width", "4", "--x", "7", "--y", "3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("21 (00010101)"));
    assert_eq!(
        lines.next(),
        Some("ancillas: x ok, y ok, encoder ancillas ok, adder carries ok")
    );
}

#[test]
fn multiply_zero_operand() {
    let out = qbooth(&["multiply", "--width", "4", "--x", "0", "--y", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("0 (00000000)\n"));
}

#[test]
fn multiply_negative_operands() {
    let out = qbooth(&["multiply", "--width", "4", "--x", "-3", "--y", "7"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("-21 (11101011)\n"));
}

#[test]
fn multiply_out_of_range_operand_exits_2() {
    let out = qbooth(&["multiply", "--width", "4", "--x", "8", "--y", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not fit"));
}

#[test]
fn trace_matches_the_worked_example() {
    let out = qbooth(&["trace", "--width", "4", "--x", "3", "--y", "7"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    for row in [
        "0000  0011  0    0111  initial",
        "1001  0011  0    0111  A <- A - M",
        "1100  1001  1    0111  shift (cycle 1)",
        "1110  0100  1    0111  shift (cycle 2)",
        "0101  0100  1    0111  A <- A + M",
        "0010  1010  0    0111  shift (cycle 3)",
        "0001  0101  0    0111  shift (cycle 4)",
        "product: 21 (00010101)",
    ] {
        assert!(text.contains(row), "missing row {row:?} in:\n{text}");
    }
}

#[test]
fn trace_zero_times_zero_is_two_shift_only_cycles() {
    let out = qbooth(&["trace", "--width", "2", "--x", "0", "--y", "0"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("shift (cycle 1)"));
    assert!(text.contains("shift (cycle 2)"));
    assert!(!text.contains("A <-"));
}

#[test]
fn trace_negative_multiplier() {
    let out = qbooth(&["trace", "--width", "4", "--x", "-3", "--y", "7"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("product: -21"));
}

#[test]
fn recode_emits_digit_string_and_value_check() {
    let out = qbooth(&["recode", "--bits", "0010111011010010"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("01N100N10N1N01N0"));
    assert_eq!(
        lines.next(),
        Some("digit value 11986 vs chain value 11986: ok")
    );
}

#[test]
fn recode_all_zero_chain() {
    let out = qbooth(&["recode", "--bits", "0000"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("0000\n"));
}

#[test]
fn recode_rejects_non_binary_chain() {
    let out = qbooth(&["recode", "--bits", "01x0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn build_encoder_qbc_to_stdout() {
    let out = qbooth(&["build", "--width", "4", "--stage", "encoder", "--format", "qbc"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("qbc 1\nqubits 12\n"), "got:\n{text}");
    let parsed = qbooth::circuit::Circuit::from_qbc(&text).unwrap();
    assert_eq!(parsed.width(), 12);
    assert_eq!(parsed.register("x").unwrap().len, 4);
}

#[test]
fn build_smallest_full_circuit_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full1.qbc");
    let out = qbooth(&[
        "build", "--width", "1", "--stage", "full", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = qbooth::circuit::Circuit::from_qbc(&text).unwrap();
    assert_eq!(parsed.width(), 9);
    assert!(parsed.register("result").is_some());
}

#[test]
fn build_qasm3_has_no_wide_controls() {
    let out = qbooth(&["build", "--width", "3", "--stage", "full", "--format", "qasm3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("OPENQASM 3.0;\n"));
    assert!(text.contains("ccx "));
    for line in text.lines() {
        assert!(!line.starts_with("mcx"), "unlowered gate: {line}");
        assert!(!line.contains("ctrl"), "unlowered modifier: {line}");
    }
}

#[test]
fn build_unwritable_path_exits_3() {
    let out = qbooth(&[
        "build", "--width", "2", "--out", "/nonexistent-dir/out.qbc",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn verify_exhaustive_width_4() {
    let out = qbooth(&["verify", "--width", "4", "--exhaustive"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "256/256 pass\n");
}

#[test]
fn verify_random_is_seed_deterministic() {
    let args = ["verify", "--width", "8", "--random", "1000", "--seed", "1"];
    let first = qbooth(&args);
    let second = qbooth(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(stdout(&first), "1000/1000 pass\n");
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn verify_width_zero_is_a_usage_error() {
    let out = qbooth(&["verify", "--width", "0"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn verify_exhaustive_width_cap() {
    let out = qbooth(&["verify", "--width", "7", "--exhaustive"]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--random"));
}

#[test]
fn stats_csv_shape() {
    let out = qbooth(&["stats", "--widths", "2..6", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,qubits,x,cx,swap,cswap,mcx,depth");
    assert_eq!(lines.len(), 6);
    let qubits: Vec<u64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(qubits.windows(2).all(|w| w[0] < w[1]), "qubits {qubits:?}");
}

#[test]
fn stats_single_width() {
    let out = qbooth(&["stats", "--widths", "3..3", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn stats_text_format() {
    let out = qbooth(&["stats", "--widths", "2..3"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("qubits"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn build_width_zero_is_a_usage_error() {
    let out = qbooth(&["build", "--width", "0"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn unknown_arguments_exit_1() {
    let out = qbooth(&["multiply", "--width", "4", "--x", "1", "--y", "1", "--bogus"]);
    assert_eq!(exit_code(&out), 1);
    let out = qbooth(&["frobnicate"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn help_exits_0() {
    let out = qbooth(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("multiply"));
}

#[test]
fn built_qbc_simulates_like_the_library_circuit() {
    let out = qbooth(&["build", "--width", "2", "--stage", "full", "--format", "qbc"]);
    let parsed = qbooth::circuit::Circuit::from_qbc(&stdout(&out)).unwrap();
    let (reference, layout) = qbooth::multiplier::build_qbm(2).unwrap();
    assert_eq!(parsed, reference);
    let x = qbooth::numeric::SignedWord::new(-2, 2).unwrap();
    let y = qbooth::numeric::SignedWord::new(-2, 2).unwrap();
    let input = layout.prepare_input(x, y);
    let state = qbooth::simulator::run_basis(&parsed, &input).unwrap();
    assert_eq!(layout.read_product(&state), 4);
}
