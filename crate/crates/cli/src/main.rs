//! `paulitree`: decompose matrices into Pauli strings, manipulate the
//! resulting decompositions, and build LCU block-encoding circuits.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use paulitree::{
    block_diagonal, build_lcu_circuit, decompose_forest, decompose_with_report, direct_sum,
    hermitian_augment, linear_combination, matches_structure, product, verify_block_encoding,
    CMatrix, Decomposition, DenseSource, ForestPlan, MatrixSource, WalkReport,
    DEFAULT_PRUNE_TOLERANCE, MAX_DENSE_QUBITS,
};
use paulitree_cli::bench;
use paulitree_cli::circuit_io;
use paulitree_cli::decomp_io;
use paulitree_cli::error::{CliError, Result};
use paulitree_cli::matrix_io::{self, LoadedMatrix};
use paulitree_cli::structure::{autodetect_structure, StructureArg};

/// Residual bound the `block-encode --verify` check enforces.
const VERIFY_RESIDUAL_BOUND: f64 = 1e-10;
/// Unitarity-defect bound the `block-encode --verify` check enforces.
const VERIFY_UNITARITY_BOUND: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "paulitree",
    version,
    about = "Pauli-string decomposition of matrices, decomposition algebra, \
             and LCU block-encoding circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a matrix file into a weighted sum of Pauli strings.
    Decompose {
        /// Matrix file (.mtx/.mm Matrix Market or .csv).
        matrix: PathBuf,
        /// Output decomposition file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sparsity class to exploit: auto, general, diagonal,
        /// antidiagonal, tridiagonal or band=<width>.
        #[arg(long, default_value = "auto")]
        structure: StructureArg,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Tree level at which to split into parallel subtree tasks;
        /// chosen from the thread count when omitted.
        #[arg(long)]
        cut_level: Option<usize>,
        /// Drop coefficients with magnitude at or below this threshold.
        #[arg(long, default_value_t = DEFAULT_PRUNE_TOLERANCE)]
        prune_tol: f64,
    },
    /// Rebuild the dense matrix a decomposition file represents.
    Compose {
        decomposition: PathBuf,
        /// Output matrix file (.mtx/.mm or .csv).
        #[arg(short, long)]
        output: PathBuf,
        /// Refuse dense reconstruction beyond this many qubits.
        #[arg(long, default_value_t = MAX_DENSE_QUBITS)]
        max_dense_qubits: usize,
    },
    /// Check a decomposition against a matrix file; prints the maximum
    /// entrywise residual and exits 0 iff it is within tolerance.
    Verify {
        decomposition: PathBuf,
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Refuse dense reconstruction beyond this many qubits.
        #[arg(long, default_value_t = MAX_DENSE_QUBITS)]
        max_dense_qubits: usize,
    },
    /// Weighted sum mu*A + B of two decomposition files.
    Sum {
        a: PathBuf,
        b: PathBuf,
        /// Complex weight for A, e.g. `2`, `0.5-1j`.
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Matrix product A*B of two decomposition files.
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Direct sum: block matrix [[A, 0], [0, B]] on one more qubit.
    Dirsum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Block-diagonal stack of any number of same-size decompositions,
    /// zero-padded up to a power-of-two block count.
    Blockdiag {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hermitian embedding [[0, A*], [A, 0]] of a decomposition; its
    /// coefficients are exactly real, ready for block encoding.
    Augment {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an LCU block-encoding circuit from a decomposition file or
    /// directly from a matrix file.
    BlockEncode {
        /// Decomposition file (detected by header) or matrix file.
        input: PathBuf,
        /// Output circuit JSON; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Apply the Hermitian embedding first, so matrices with complex
        /// Pauli coefficients can be encoded.
        #[arg(long)]
        augment: bool,
        /// Simulate the circuit densely and check it block-encodes the
        /// input; prints residual and unitarity defect.
        #[arg(long)]
        verify: bool,
    },
    /// Time decompositions of deterministic pseudo-random matrices over a
    /// grid of sizes, structures and thread counts; writes CSV.
    Bench {
        /// Inclusive qubit range, e.g. `4..10`.
        #[arg(long, default_value = "2..6")]
        n_range: String,
        /// Comma-separated structure classes.
        #[arg(long, default_value = "general")]
        structures: String,
        /// Comma-separated thread counts.
        #[arg(long, default_value = "1")]
        threads: String,
        /// Output CSV file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Decompose {
            matrix,
            output,
            structure,
            threads,
            cut_level,
            prune_tol,
        } => cmd_decompose(&matrix, output.as_deref(), structure, threads, cut_level, prune_tol),
        Command::Compose {
            decomposition,
            output,
            max_dense_qubits,
        } => cmd_compose(&decomposition, &output, max_dense_qubits),
        Command::Verify {
            decomposition,
            matrix,
            tolerance,
            max_dense_qubits,
        } => cmd_verify(&decomposition, &matrix, tolerance, max_dense_qubits),
        Command::Sum { a, b, mu, output } => {
            let mu = matrix_io::parse_complex(&mu).map_err(CliError::invalid)?;
            binary_op(&a, &b, output.as_deref(), |da, db| linear_combination(mu, da, db))
        }
        Command::Mul { a, b, output } => binary_op(&a, &b, output.as_deref(), product),
        Command::Dirsum { a, b, output } => binary_op(&a, &b, output.as_deref(), direct_sum),
        Command::Blockdiag { inputs, output } => cmd_blockdiag(&inputs, output.as_deref()),
        Command::Augment { input, output } => {
            let d = decomp_io::read_decomposition(&input)?;
            let result = hermitian_augment(&d)?;
            emit_decomposition(&result, output.as_deref())
        }
        Command::BlockEncode {
            input,
            output,
            augment,
            verify,
        } => cmd_block_encode(&input, output.as_deref(), augment, verify),
        Command::Bench {
            n_range,
            structures,
            threads,
            output,
        } => cmd_bench(&n_range, &structures, &threads, output.as_deref()),
    }
}

/// Write `text` to `path`, or to stdout when no path was given.
fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_decomposition(d: &Decomposition, output: Option<&Path>) -> Result<ExitCode> {
    eprintln!(
        "{} term(s) over {} qubit(s)",
        d.term_count(),
        d.qubit_count()
    );
    write_or_print(output, &decomp_io::render_decomposition(d))?;
    Ok(ExitCode::SUCCESS)
}

fn warn_if_padded(loaded: &LoadedMatrix) {
    if loaded.padded {
        let dim = loaded.source.dimension();
        eprintln!(
            "warning: padded {0}x{0} input with zeros to {1}x{1}",
            loaded.original_dim, dim
        );
    }
}

fn cmd_decompose(
    matrix: &Path,
    output: Option<&Path>,
    structure: StructureArg,
    threads: usize,
    cut_level: Option<usize>,
    prune_tol: f64,
) -> Result<ExitCode> {
    let loaded = matrix_io::read_matrix(matrix)?;
    warn_if_padded(&loaded);
    let n = loaded.qubit_count();
    let class = match structure {
        StructureArg::Auto => {
            let detected = autodetect_structure(&loaded.source);
            eprintln!("structure auto: detected {detected}");
            detected
        }
        StructureArg::Explicit(class) => {
            class.validate(n)?;
            if !matches_structure(&loaded.source, class) {
                return Err(CliError::invalid(format!(
                    "matrix has entries outside the requested `{class}` structure"
                )));
            }
            class
        }
    };
    let (d, report): (Decomposition, WalkReport) = if threads <= 1 && cut_level.is_none() {
        decompose_with_report(&loaded.source, class, prune_tol)?
    } else {
        let plan = match cut_level {
            Some(cut) => ForestPlan::new(n, threads, cut)?,
            None => ForestPlan::with_default_cut(n, threads)?,
        };
        decompose_forest(&loaded.source, class, &plan, prune_tol)?
    };
    eprintln!(
        "decomposed as {class}: {} term(s), {} array writes",
        d.term_count(),
        report.op_count
    );
    write_or_print(output, &decomp_io::render_decomposition(&d))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compose(decomposition: &Path, output: &Path, max_dense_qubits: usize) -> Result<ExitCode> {
    let d = decomp_io::read_decomposition(decomposition)?;
    let m = d.reconstruct_dense_with_limit(max_dense_qubits)?;
    matrix_io::write_matrix(output, &m)?;
    eprintln!("wrote {0}x{0} matrix to {1}", m.dim(), output.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    decomposition: &Path,
    matrix: &Path,
    tolerance: f64,
    max_dense_qubits: usize,
) -> Result<ExitCode> {
    let d = decomp_io::read_decomposition(decomposition)?;
    let loaded = matrix_io::read_matrix(matrix)?;
    warn_if_padded(&loaded);
    if d.qubit_count() != loaded.qubit_count() {
        return Err(CliError::invalid(format!(
            "decomposition covers {} qubit(s) but the matrix needs {}",
            d.qubit_count(),
            loaded.qubit_count()
        )));
    }
    let recon = d.reconstruct_dense_with_limit(max_dense_qubits)?;
    let dim = recon.dim();
    let mut residual = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            let diff = recon.get(r, c) - loaded.source.entry(r as u64, c as u64);
            residual = residual.max(diff.norm());
        }
    }
    println!("{residual:.6e}");
    if residual <= tolerance {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed: residual {residual:.6e} exceeds tolerance {tolerance:.6e}");
        Ok(ExitCode::FAILURE)
    }
}

fn binary_op(
    a: &Path,
    b: &Path,
    output: Option<&Path>,
    op: impl FnOnce(&Decomposition, &Decomposition) -> paulitree::Result<Decomposition>,
) -> Result<ExitCode> {
    let da = decomp_io::read_decomposition(a)?;
    let db = decomp_io::read_decomposition(b)?;
    let result = op(&da, &db)?;
    emit_decomposition(&result, output)
}

fn cmd_blockdiag(inputs: &[PathBuf], output: Option<&Path>) -> Result<ExitCode> {
    let blocks = inputs
        .iter()
        .map(|p| decomp_io::read_decomposition(p))
        .collect::<Result<Vec<_>>>()?;
    let result = block_diagonal(&blocks)?;
    emit_decomposition(&result, output)
}

fn cmd_block_encode(
    input: &Path,
    output: Option<&Path>,
    augment: bool,
    verify: bool,
) -> Result<ExitCode> {
    let text = fs::read_to_string(input).map_err(|e| CliError::io(input, e))?;
    // The verification target is whatever matrix the circuit should embed:
    // the input matrix itself, or the dense form of an input decomposition.
    let (d, target): (Decomposition, Option<CMatrix>) =
        if decomp_io::looks_like_decomposition(&text) {
            let d = decomp_io::parse_decomposition(input, &text)?;
            let target = if verify {
                Some(d.reconstruct_dense_with_limit(MAX_DENSE_QUBITS)?)
            } else {
                None
            };
            (d, target)
        } else {
            let loaded = matrix_io::read_matrix(input)?;
            warn_if_padded(&loaded);
            let class = autodetect_structure(&loaded.source);
            eprintln!("decomposing input matrix ({class})");
            let (d, _) = decompose_with_report(&loaded.source, class, DEFAULT_PRUNE_TOLERANCE)?;
            let target = if verify {
                let dim = loaded.source.dimension() as usize;
                Some(CMatrix::from_fn(dim, |r, c| {
                    loaded.source.entry(r as u64, c as u64)
                }))
            } else {
                None
            };
            (d, target)
        };

    let (d, target) = if augment {
        (hermitian_augment(&d)?, target.map(|a| embed_offdiagonal(&a)))
    } else {
        (d, target)
    };

    let circuit = build_lcu_circuit(&d)?;
    eprintln!(
        "circuit: {} data + {} ancilla qubit(s), lambda = {:.6e}, {} controlled Pauli gate(s)",
        circuit.n_data(),
        circuit.n_ancilla(),
        circuit.lambda(),
        circuit.controlled_gate_count()
    );
    write_or_print(output, &circuit_io::render_circuit(&circuit))?;

    if !verify {
        return Ok(ExitCode::SUCCESS);
    }
    let target = target.expect("target is built whenever verify is set");
    let n = target.dim().trailing_zeros() as usize;
    let source = DenseSource::from_vec(n, target.data().to_vec())?;
    let report = verify_block_encoding(&circuit, &source)?;
    println!("residual {:.6e}", report.residual);
    println!("unitarity defect {:.6e}", report.unitarity_defect);
    if report.residual <= VERIFY_RESIDUAL_BOUND && report.unitarity_defect <= VERIFY_UNITARITY_BOUND
    {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "verification failed: bounds are residual <= {VERIFY_RESIDUAL_BOUND:.0e}, \
             unitarity defect <= {VERIFY_UNITARITY_BOUND:.0e}"
        );
        Ok(ExitCode::FAILURE)
    }
}

/// Assemble the dense Hermitian embedding [[0, A*], [A, 0]] (A* the
/// conjugate transpose), the matrix `hermitian_augment` decomposes.
fn embed_offdiagonal(a: &CMatrix) -> CMatrix {
    let dim = a.dim();
    CMatrix::from_fn(2 * dim, |r, c| {
        if r >= dim && c < dim {
            a.get(r - dim, c)
        } else if r < dim && c >= dim {
            a.get(c - dim, r).conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn cmd_bench(
    n_range: &str,
    structures: &str,
    threads: &str,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let range = bench::parse_n_range(n_range).map_err(CliError::invalid)?;
    let structures = bench::parse_structures(structures).map_err(CliError::invalid)?;
    let threads = bench::parse_threads(threads).map_err(CliError::invalid)?;
    let rows = bench::run_grid_with(range, &structures, &threads, |row| {
        eprintln!(
            "n={} {} threads={}: {:.3}s, {} ops, {} terms",
            row.n, row.structure, row.threads, row.wall_time_seconds, row.op_count, row.term_count
        );
    })?;
    write_or_print(output, &bench::render_csv(&rows))?;
    Ok(ExitCode::SUCCESS)
}
