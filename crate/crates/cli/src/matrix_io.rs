//! Matrix file formats: Matrix Market (array and coordinate) and dense CSV.
//!
//! Matrices of any square size are accepted and zero-padded up to the next
//! power-of-two dimension; the caller is told when padding happened so it
//! can warn. Complex values appear as `re im` pairs in Matrix Market files
//! and as `re`, `imj` or `re±imj` cells in CSV.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use paulitree::{CMatrix, DenseSource, MatrixSource};

use crate::error::{CliError, Result};

/// A matrix read from disk, padded to a power-of-two dimension.
#[derive(Debug)]
pub struct LoadedMatrix {
    pub source: DenseSource,
    /// Dimension before padding.
    pub original_dim: usize,
    pub padded: bool,
}

impl LoadedMatrix {
    pub fn qubit_count(&self) -> usize {
        self.source.qubit_count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatrixFormat {
    MatrixMarket,
    Csv,
}

fn detect_format(path: &Path, text: &str) -> Result<MatrixFormat> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("mtx") | Some("mm") => return Ok(MatrixFormat::MatrixMarket),
        Some("csv") => return Ok(MatrixFormat::Csv),
        _ => {}
    }
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.starts_with("%%MatrixMarket") {
        Ok(MatrixFormat::MatrixMarket)
    } else if first.contains(',') {
        Ok(MatrixFormat::Csv)
    } else {
        Err(CliError::parse(
            path,
            0,
            "cannot detect matrix format: use a .mtx/.mm or .csv extension, \
             or a %%MatrixMarket header",
        ))
    }
}

/// Read a square matrix file, zero-padding to the next power-of-two
/// dimension.
pub fn read_matrix(path: &Path) -> Result<LoadedMatrix> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let dense = match detect_format(path, &text)? {
        MatrixFormat::MatrixMarket => parse_matrix_market(path, &text)?,
        MatrixFormat::Csv => parse_csv(path, &text)?,
    };
    pad_to_power_of_two(path, dense)
}

fn pad_to_power_of_two(path: &Path, m: CMatrix) -> Result<LoadedMatrix> {
    let original_dim = m.dim();
    if original_dim == 0 {
        return Err(CliError::parse(path, 0, "matrix has dimension 0"));
    }
    let dim = original_dim.next_power_of_two();
    let n = dim.trailing_zeros() as usize;
    let padded = dim != original_dim;
    let data = if padded {
        let mut grown = CMatrix::zeros(dim);
        for r in 0..original_dim {
            for c in 0..original_dim {
                grown.set(r, c, m.get(r, c));
            }
        }
        grown.data().to_vec()
    } else {
        m.data().to_vec()
    };
    Ok(LoadedMatrix {
        source: DenseSource::from_vec(n, data)?,
        original_dim,
        padded,
    })
}

fn parse_matrix_market(path: &Path, text: &str) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::parse(path, 1, "empty file"))?;
    let header_fields: Vec<String> = header
        .split_whitespace()
        .map(|f| f.to_ascii_lowercase())
        .collect();
    if header_fields.len() != 5
        || header_fields[0] != "%%matrixmarket"
        || header_fields[1] != "matrix"
    {
        return Err(CliError::parse(
            path,
            1,
            "expected header `%%MatrixMarket matrix <format> <field> <symmetry>`",
        ));
    }
    let format = header_fields[2].as_str();
    let field = header_fields[3].as_str();
    let symmetry = header_fields[4].as_str();
    if !matches!(format, "array" | "coordinate") {
        return Err(CliError::parse(
            path,
            1,
            format!("unsupported Matrix Market format `{format}` (array or coordinate)"),
        ));
    }
    if !matches!(field, "real" | "integer" | "complex") {
        return Err(CliError::parse(
            path,
            1,
            format!("unsupported Matrix Market field `{field}` (real, integer or complex)"),
        ));
    }
    if !matches!(
        symmetry,
        "general" | "symmetric" | "skew-symmetric" | "hermitian"
    ) {
        return Err(CliError::parse(
            path,
            1,
            format!("unsupported Matrix Market symmetry `{symmetry}`"),
        ));
    }

    // Skip comments; the first non-comment line carries the sizes.
    let mut data_lines = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line_no, size_line) = data_lines
        .next()
        .ok_or_else(|| CliError::parse(path, 0, "missing size line"))?;
    let sizes: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::parse(path, size_line_no + 1, "malformed size line"))?;

    let value_width = if field == "complex" { 2 } else { 1 };
    let parse_value = |tokens: &[&str], line_no: usize| -> Result<Complex64> {
        let mut parts = [0.0f64; 2];
        for (slot, token) in parts.iter_mut().zip(tokens) {
            *slot = token
                .parse::<f64>()
                .map_err(|_| CliError::parse(path, line_no + 1, format!("bad number `{token}`")))?;
        }
        Ok(Complex64::new(parts[0], parts[1]))
    };

    match format {
        "array" => {
            let [rows, cols] = sizes[..] else {
                return Err(CliError::parse(
                    path,
                    size_line_no + 1,
                    "array size line must be `rows cols`",
                ));
            };
            if rows != cols {
                return Err(CliError::parse(
                    path,
                    size_line_no + 1,
                    format!("matrix must be square, got {rows}×{cols}"),
                ));
            }
            let mut m = CMatrix::zeros(rows);
            // Column-major element order; symmetric variants store only the
            // on-and-below-diagonal part (strictly below for skew).
            let mut coords: Vec<(usize, usize)> = Vec::new();
            for j in 0..cols {
                let start = match symmetry {
                    "general" => 0,
                    "skew-symmetric" => j + 1,
                    _ => j,
                };
                for i in start..rows {
                    coords.push((i, j));
                }
            }
            let mut filled = 0usize;
            for (line_no, line) in data_lines {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != value_width {
                    return Err(CliError::parse(
                        path,
                        line_no + 1,
                        format!("expected {value_width} value field(s)"),
                    ));
                }
                if filled >= coords.len() {
                    return Err(CliError::parse(path, line_no + 1, "too many entries"));
                }
                let (i, j) = coords[filled];
                let v = parse_value(&tokens, line_no)?;
                m.set(i, j, v);
                if i != j {
                    match symmetry {
                        "symmetric" => m.set(j, i, v),
                        "skew-symmetric" => m.set(j, i, -v),
                        "hermitian" => m.set(j, i, v.conj()),
                        _ => {}
                    }
                }
                filled += 1;
            }
            if filled != coords.len() {
                return Err(CliError::parse(
                    path,
                    0,
                    format!("expected {} entries, found {filled}", coords.len()),
                ));
            }
            Ok(m)
        }
        _ => {
            let [rows, cols, nnz] = sizes[..] else {
                return Err(CliError::parse(
                    path,
                    size_line_no + 1,
                    "coordinate size line must be `rows cols nnz`",
                ));
            };
            if rows != cols {
                return Err(CliError::parse(
                    path,
                    size_line_no + 1,
                    format!("matrix must be square, got {rows}×{cols}"),
                ));
            }
            let mut m = CMatrix::zeros(rows);
            let mut seen: HashSet<(usize, usize)> = HashSet::new();
            let mut count = 0usize;
            for (line_no, line) in data_lines {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if tokens.len() != 2 + value_width {
                    return Err(CliError::parse(
                        path,
                        line_no + 1,
                        format!("expected `i j` plus {value_width} value field(s)"),
                    ));
                }
                let parse_index = |token: &str| -> Result<usize> {
                    let idx: usize = token.parse().map_err(|_| {
                        CliError::parse(path, line_no + 1, format!("bad index `{token}`"))
                    })?;
                    if idx == 0 || idx > rows {
                        return Err(CliError::parse(
                            path,
                            line_no + 1,
                            format!("index {idx} outside 1..={rows}"),
                        ));
                    }
                    Ok(idx - 1)
                };
                let i = parse_index(tokens[0])?;
                let j = parse_index(tokens[1])?;
                let v = parse_value(&tokens[2..], line_no)?;
                if !seen.insert((i, j)) {
                    return Err(CliError::parse(
                        path,
                        line_no + 1,
                        format!("duplicate entry ({}, {})", i + 1, j + 1),
                    ));
                }
                m.set(i, j, v);
                if i != j && symmetry != "general" {
                    if !seen.insert((j, i)) {
                        return Err(CliError::parse(
                            path,
                            line_no + 1,
                            format!("mirrored entry ({}, {}) already present", j + 1, i + 1),
                        ));
                    }
                    match symmetry {
                        "symmetric" => m.set(j, i, v),
                        "skew-symmetric" => m.set(j, i, -v),
                        "hermitian" => m.set(j, i, v.conj()),
                        _ => unreachable!(),
                    }
                }
                count += 1;
            }
            if count != nnz {
                return Err(CliError::parse(
                    path,
                    0,
                    format!("size line promises {nnz} entries, found {count}"),
                ));
            }
            Ok(m)
        }
    }
}

fn parse_csv(path: &Path, text: &str) -> Result<CMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                parse_complex(cell).map_err(|msg| CliError::parse(path, line_no + 1, msg))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::parse(
                    path,
                    line_no + 1,
                    format!("row has {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    let dim = rows.len();
    if dim == 0 {
        return Err(CliError::parse(path, 0, "matrix has dimension 0"));
    }
    if rows[0].len() != dim {
        return Err(CliError::parse(
            path,
            0,
            format!("matrix must be square, got {dim}×{}", rows[0].len()),
        ));
    }
    Ok(CMatrix::from_vec(dim, rows.into_iter().flatten().collect()))
}

/// Parse a complex number in cell syntax: `re`, `imj` or `re±imj`
/// (for example `1.5`, `-2j`, `3e-2+0.5j`).
pub fn parse_complex(cell: &str) -> std::result::Result<Complex64, String> {
    let t = cell.trim();
    if t.is_empty() {
        return Err("empty cell".into());
    }
    let Some(body) = t.strip_suffix(['j', 'J']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("bad number `{t}`"));
    };
    // Split an optional real part from the imaginary part at the last sign
    // that is not leading and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-')
            && !matches!(bytes[i - 1], b'e' | b'E')
    });
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part
            .parse::<f64>()
            .map_err(|_| format!("bad real part `{re_part}` in `{t}`"))?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_part
            .parse::<f64>()
            .map_err(|_| format!("bad imaginary part `{im_part}` in `{t}`"))?,
    };
    Ok(Complex64::new(re, im))
}

/// Format a complex number in the cell syntax [`parse_complex`] accepts,
/// with full f64 round-trip precision.
pub fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{:.16e}", v.re)
    } else {
        format!("{:.16e}{:+.16e}j", v.re, v.im)
    }
}

/// Write a matrix in the format selected by the file extension:
/// Matrix Market array (`.mtx`/`.mm`) or CSV (`.csv`).
pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    let text = match ext.as_deref() {
        Some("csv") => render_csv(m),
        Some("mtx") | Some("mm") => render_matrix_market(m),
        _ => {
            return Err(CliError::invalid(format!(
                "cannot infer output format of `{}`: use .mtx, .mm or .csv",
                path.display()
            )))
        }
    };
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn render_matrix_market(m: &CMatrix) -> String {
    let dim = m.dim();
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(out, "{dim} {dim}");
    for j in 0..dim {
        for i in 0..dim {
            let v = m.get(i, j);
            let _ = writeln!(out, "{:.16e} {:.16e}", v.re, v.im);
        }
    }
    out
}

fn render_csv(m: &CMatrix) -> String {
    let dim = m.dim();
    let mut out = String::new();
    for i in 0..dim {
        let row: Vec<String> = (0..dim).map(|j| format_complex(m.get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn write_temp(name: &str, content: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("paulitree-matrix-io-tests");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn parse_complex_cells() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex(" -2 ").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("3+4j").unwrap(), c(3.0, 4.0));
        assert_eq!(parse_complex("3-4j").unwrap(), c(3.0, -4.0));
        assert_eq!(parse_complex("-1e-3+2e-4j").unwrap(), c(-1e-3, 2e-4));
        assert_eq!(parse_complex("2j").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-j").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("j").unwrap(), c(0.0, 1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1..2").is_err());
        assert!(parse_complex("1+j2").is_err());
    }

    #[test]
    fn complex_format_round_trips() {
        for v in [
            c(0.0, 0.0),
            c(1.0 / 3.0, 0.0),
            c(-2.5e-13, 7.25),
            c(0.1, -0.3),
        ] {
            assert_eq!(parse_complex(&format_complex(v)).unwrap(), v);
        }
    }

    #[test]
    fn matrix_market_array_round_trip() {
        let m = CMatrix::from_vec(
            2,
            vec![c(1.0, 0.5), c(2.0, 0.0), c(0.0, -1.0), c(4.0, 4.0)],
        );
        let path = write_temp("round.mtx", &render_matrix_market(&m));
        let loaded = read_matrix(&path).unwrap();
        assert!(!loaded.padded);
        assert_eq!(loaded.qubit_count(), 1);
        for i in 0..2u64 {
            for j in 0..2u64 {
                assert_eq!(
                    loaded.source.entry(i, j),
                    m.get(i as usize, j as usize),
                    "entry ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn matrix_market_coordinate_with_symmetry() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n\
                    % comment line\n\
                    2 2 2\n\
                    1 1 1.0 0.0\n\
                    2 1 3.0 -4.0\n";
        let path = write_temp("herm.mtx", text);
        let loaded = read_matrix(&path).unwrap();
        assert_eq!(loaded.source.entry(1, 0), c(3.0, -4.0));
        assert_eq!(loaded.source.entry(0, 1), c(3.0, 4.0));
        assert_eq!(loaded.source.entry(0, 0), c(1.0, 0.0));
        assert_eq!(loaded.source.entry(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn matrix_market_rejects_duplicates() {
        let text = "%%MatrixMarket matrix coordinate real general\n\
                    2 2 2\n\
                    1 1 1.0\n\
                    1 1 2.0\n";
        let path = write_temp("dup.mtx", text);
        let err = read_matrix(&path).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn csv_pads_to_power_of_two() {
        let text = "1,0,0\n0,2j,0\n0,0,3\n";
        let path = write_temp("three.csv", text);
        let loaded = read_matrix(&path).unwrap();
        assert!(loaded.padded);
        assert_eq!(loaded.original_dim, 3);
        assert_eq!(loaded.qubit_count(), 2);
        assert_eq!(loaded.source.entry(1, 1), c(0.0, 2.0));
        assert_eq!(loaded.source.entry(3, 3), c(0.0, 0.0));
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let path = write_temp("ragged.csv", "1,2\n3\n");
        assert!(read_matrix(&path).is_err());
    }

    #[test]
    fn empty_matrix_is_rejected() {
        let path = write_temp("empty.csv", "\n");
        let err = read_matrix(&path).unwrap_err();
        assert!(err.to_string().contains("format") || err.to_string().contains("dimension"));
    }

    #[test]
    fn skew_symmetric_array_fills_both_triangles() {
        let text = "%%MatrixMarket matrix array real skew-symmetric\n\
                    2 2\n\
                    5.0\n";
        let path = write_temp("skew.mtx", text);
        let loaded = read_matrix(&path).unwrap();
        assert_eq!(loaded.source.entry(1, 0), c(5.0, 0.0));
        assert_eq!(loaded.source.entry(0, 1), c(-5.0, 0.0));
        assert_eq!(loaded.source.entry(0, 0), c(0.0, 0.0));
    }
}
