//! JSON serialization for block-encoding circuits.
//!
//! A circuit file records the data/ancilla qubit split, the normalization
//! constant, and the gate list. Preparation unitaries are stored as
//! row-major `[re, im]` pairs; controlled Pauli gates store the ancilla
//! bit pattern they fire on, the Pauli string they apply, and a ±1 sign.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use paulitree::{CMatrix, Circuit, Gate, PauliString};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    n_data: usize,
    n_ancilla: usize,
    lambda: f64,
    gates: Vec<GateFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum GateFile {
    Prep { matrix: Vec<[f64; 2]> },
    ControlledPauli { pattern: u64, pauli: String, sign: i8 },
    Unprep,
}

fn to_file(circuit: &Circuit) -> CircuitFile {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| match g {
            Gate::Prep(u) => GateFile::Prep {
                matrix: u.data().iter().map(|v| [v.re, v.im]).collect(),
            },
            Gate::ControlledPauli { pattern, pauli, sign } => GateFile::ControlledPauli {
                pattern: *pattern,
                pauli: pauli.to_string(),
                sign: *sign,
            },
            Gate::Unprep => GateFile::Unprep,
        })
        .collect();
    CircuitFile {
        n_data: circuit.n_data(),
        n_ancilla: circuit.n_ancilla(),
        lambda: circuit.lambda(),
        gates,
    }
}

fn from_file(path: &Path, file: CircuitFile) -> Result<Circuit> {
    let mut gates = Vec::with_capacity(file.gates.len());
    for (index, gate) in file.gates.into_iter().enumerate() {
        let converted = match gate {
            GateFile::Prep { matrix } => {
                let len = matrix.len();
                let dim = (len as f64).sqrt().round() as usize;
                if dim * dim != len {
                    return Err(CliError::parse(
                        path,
                        0,
                        format!("gate {index}: prep matrix has {len} entries, not a square count"),
                    ));
                }
                let data = matrix
                    .into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect();
                Gate::Prep(CMatrix::from_vec(dim, data))
            }
            GateFile::ControlledPauli { pattern, pauli, sign } => Gate::ControlledPauli {
                pattern,
                pauli: PauliString::from_str(&pauli)
                    .map_err(|e| CliError::parse(path, 0, format!("gate {index}: {e}")))?,
                sign,
            },
            GateFile::Unprep => Gate::Unprep,
        };
        gates.push(converted);
    }
    Circuit::from_parts(file.n_data, file.n_ancilla, file.lambda, gates)
        .map_err(CliError::from)
}

pub fn render_circuit(circuit: &Circuit) -> String {
    let mut text = serde_json::to_string_pretty(&to_file(circuit))
        .expect("circuit serialization cannot fail");
    text.push('\n');
    text
}

pub fn write_circuit(path: &Path, circuit: &Circuit) -> Result<()> {
    fs::write(path, render_circuit(circuit)).map_err(|e| CliError::io(path, e))
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: CircuitFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(path, e.line(), e.to_string()))?;
    from_file(path, file)
}
