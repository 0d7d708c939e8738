//! Structure selection: the `--structure` flag and sparsity autodetection.

use std::fmt;
use std::str::FromStr;

use paulitree::{DenseSource, MatrixSource, StructureClass};

/// Value of the `--structure` flag: detect from the matrix, or force a
/// specific class (which is then validated against the actual entries).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureArg {
    Auto,
    Explicit(StructureClass),
}

impl FromStr for StructureArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let class = match lower.as_str() {
            "auto" => return Ok(StructureArg::Auto),
            "general" => StructureClass::General,
            "diagonal" => StructureClass::Diagonal,
            "antidiagonal" => StructureClass::AntiDiagonal,
            "tridiagonal" => StructureClass::Tridiagonal,
            _ => {
                let width = lower.strip_prefix("band=").ok_or_else(|| {
                    format!(
                        "unknown structure `{s}`: expected auto, general, diagonal, \
                         antidiagonal, tridiagonal or band=<width>"
                    )
                })?;
                let width: u64 = width
                    .parse()
                    .map_err(|_| format!("bad band width `{width}` in `{s}`"))?;
                StructureClass::Band(width)
            }
        };
        Ok(StructureArg::Explicit(class))
    }
}

/// Displays in the syntax [`FromStr`] accepts, so rendered values (for
/// example clap's default display) can be parsed back.
impl fmt::Display for StructureArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureArg::Auto => write!(f, "auto"),
            StructureArg::Explicit(StructureClass::Band(s)) => write!(f, "band={s}"),
            StructureArg::Explicit(class) => write!(f, "{class}"),
        }
    }
}

/// Classify a dense matrix by its sparsity pattern, preferring the most
/// restrictive class that holds: diagonal, then antidiagonal, then
/// tridiagonal, then banded, then general. The all-zero matrix counts as
/// diagonal.
pub fn autodetect_structure(source: &DenseSource) -> StructureClass {
    let n = source.qubit_count();
    let dim = source.dimension();
    let mut s_max: u64 = 0;
    let mut all_antidiagonal = true;
    let mut any_nonzero = false;
    for r in 0..dim {
        for c in 0..dim {
            if source.entry(r, c).norm_sqr() == 0.0 {
                continue;
            }
            any_nonzero = true;
            s_max = s_max.max(r.abs_diff(c));
            if r + c != dim - 1 {
                all_antidiagonal = false;
            }
        }
    }
    if !any_nonzero || s_max == 0 {
        StructureClass::Diagonal
    } else if all_antidiagonal {
        StructureClass::AntiDiagonal
    } else if s_max == 1 {
        StructureClass::Tridiagonal
    } else if n >= 1 && s_max <= (1u64 << n) - 2 {
        StructureClass::Band(s_max)
    } else {
        StructureClass::General
    }
}
