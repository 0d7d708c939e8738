//! Benchmark driver: times decompositions of deterministic hash-filled
//! matrices across qubit counts, structure classes and thread counts, and
//! renders the results as CSV.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use num_complex::Complex64;
use paulitree::{
    decompose_forest, decompose_with_report, FnSource, ForestPlan, StructureClass,
    DEFAULT_PRUNE_TOLERANCE,
};

use crate::error::{CliError, Result};
use crate::structure::StructureArg;

/// One timed decomposition.
pub struct BenchRow {
    pub n: usize,
    pub structure: StructureClass,
    pub threads: usize,
    pub cut_level: usize,
    pub wall_time_seconds: f64,
    pub op_count: u64,
    pub term_count: usize,
}

impl BenchRow {
    /// Array writes per second of wall time.
    pub fn throughput(&self) -> f64 {
        self.op_count as f64 / self.wall_time_seconds.max(1e-12)
    }
}

/// Deterministic pseudo-random entry; the same `(seed, row, col)` always
/// yields the same value, so benchmark inputs are reproducible without
/// storing 4^n numbers.
fn hashed_entry(seed: u64, row: u64, col: u64) -> Complex64 {
    let mut x = seed
        ^ row.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ col.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 31;
    let unit = |bits: u64| bits as f64 / (1u64 << 32) as f64 - 0.5;
    Complex64::new(unit(x >> 32), unit(x & 0xffff_ffff))
}

/// A function-backed matrix filled with hash noise on exactly the support
/// of `class`.
pub fn bench_source(
    n: usize,
    class: StructureClass,
) -> Result<FnSource<impl Fn(u64, u64) -> Complex64 + Sync>> {
    let dim = 1u64 << n;
    let f = move |r: u64, c: u64| -> Complex64 {
        let in_support = match class {
            StructureClass::General => true,
            StructureClass::Diagonal => r == c,
            StructureClass::AntiDiagonal => r + c == dim - 1,
            StructureClass::Tridiagonal => r.abs_diff(c) <= 1,
            StructureClass::Band(s) => r.abs_diff(c) <= s,
        };
        if in_support {
            hashed_entry(0x7b5d_91c2, r, c)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    FnSource::new(n, class, f).map_err(CliError::from)
}

/// Run one timed decomposition of the benchmark matrix for `(n, class)`.
pub fn run_case(n: usize, class: StructureClass, threads: usize) -> Result<BenchRow> {
    let src = bench_source(n, class)?;
    let start = Instant::now();
    let (decomp, report, cut_level) = if threads <= 1 {
        let (d, r) = decompose_with_report(&src, class, DEFAULT_PRUNE_TOLERANCE)?;
        (d, r, 0)
    } else {
        let plan = ForestPlan::with_default_cut(n, threads)?;
        let cut = plan.cut_level();
        let (d, r) = decompose_forest(&src, class, &plan, DEFAULT_PRUNE_TOLERANCE)?;
        (d, r, cut)
    };
    let wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(BenchRow {
        n,
        structure: class,
        threads,
        cut_level,
        wall_time_seconds,
        op_count: report.op_count,
        term_count: decomp.term_count(),
    })
}

/// Run the full grid in deterministic order: n, then structure, then
/// threads. `on_row` sees each row as soon as it is measured.
pub fn run_grid_with(
    n_range: RangeInclusive<usize>,
    structures: &[StructureClass],
    threads: &[usize],
    mut on_row: impl FnMut(&BenchRow),
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in n_range {
        for &class in structures {
            if class.validate(n).is_err() {
                // e.g. band=2 at n=1: no such class at this size.
                continue;
            }
            for &t in threads {
                let row = run_case(n, class, t)?;
                on_row(&row);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn run_grid(
    n_range: RangeInclusive<usize>,
    structures: &[StructureClass],
    threads: &[usize],
) -> Result<Vec<BenchRow>> {
    run_grid_with(n_range, structures, threads, |_| {})
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out =
        String::from("n,structure,threads,cut_level,wall_time_seconds,op_count,term_count,throughput\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6e},{},{},{:.6e}",
            row.n,
            row.structure,
            row.threads,
            row.cut_level,
            row.wall_time_seconds,
            row.op_count,
            row.term_count,
            row.throughput()
        );
    }
    out
}

/// Parse an inclusive qubit range written `A..B`.
pub fn parse_n_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("bad range `{text}`: expected `A..B`"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{lo}`"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{hi}`"))?;
    if lo == 0 || hi < lo {
        return Err(format!("bad range `{text}`: need 1 <= A <= B"));
    }
    Ok(lo..=hi)
}

/// Parse a comma-separated structure list, e.g. `general,diagonal,band=2`.
pub fn parse_structures(text: &str) -> std::result::Result<Vec<StructureClass>, String> {
    text.split(',')
        .map(|item| match item.trim().parse::<StructureArg>()? {
            StructureArg::Auto => Err("`auto` is not a benchmarkable structure".into()),
            StructureArg::Explicit(class) => Ok(class),
        })
        .collect()
}

/// Parse a comma-separated thread-count list, e.g. `1,4,8`.
pub fn parse_threads(text: &str) -> std::result::Result<Vec<usize>, String> {
    text.split(',')
        .map(|item| {
            let t: usize = item
                .trim()
                .parse()
                .map_err(|_| format!("bad thread count `{item}`"))?;
            if t == 0 {
                return Err("thread count must be at least 1".into());
            }
            Ok(t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use paulitree::predicted_op_count;

    #[test]
    fn parses_grids() {
        assert_eq!(parse_n_range("4..10").unwrap(), 4..=10);
        assert!(parse_n_range("0..3").is_err());
        assert!(parse_n_range("5..4").is_err());
        assert!(parse_n_range("7").is_err());
        assert_eq!(
            parse_structures("general, diagonal").unwrap(),
            vec![StructureClass::General, StructureClass::Diagonal]
        );
        assert!(parse_structures("auto").is_err());
        assert_eq!(parse_threads("1,8").unwrap(), vec![1, 8]);
        assert!(parse_threads("0").is_err());
    }

    #[test]
    fn sequential_case_matches_predicted_op_count() {
        for n in 1..=4 {
            let row = run_case(n, StructureClass::General, 1).unwrap();
            assert_eq!(
                u128::from(row.op_count),
                predicted_op_count(StructureClass::General, n).unwrap()
            );
            assert_eq!(row.cut_level, 0);
        }
        let row = run_case(3, StructureClass::Diagonal, 1).unwrap();
        assert_eq!(
            u128::from(row.op_count),
            predicted_op_count(StructureClass::Diagonal, 3).unwrap()
        );
    }

    #[test]
    fn grid_skips_invalid_band_sizes() {
        let rows = run_grid(1..=2, &[StructureClass::Band(2)], &[1]).unwrap();
        // band=2 requires n >= 2 (width must stay below 2^n).
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].n, 2);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let rows = run_grid(2..=3, &[StructureClass::General], &[1, 2]).unwrap();
        let csv = render_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].starts_with("n,structure,threads,cut_level,"));
        assert!(lines[1].starts_with("2,general,1,0,"));
        assert!(lines[2].starts_with("2,general,2,"));
    }

    #[test]
    fn parallel_rows_match_sequential_terms() {
        let seq = run_case(4, StructureClass::General, 1).unwrap();
        let par = run_case(4, StructureClass::General, 4).unwrap();
        assert_eq!(seq.term_count, par.term_count);
        assert!(par.cut_level > 0);
    }
}
