//! Pauli-basis decomposition by quaternary tree walk.
//!
//! The walk enumerates Pauli strings depth first, level 0 (rightmost text
//! letter) at the root. At each level it visits the four letters in the fixed
//! order I → X → Y → Z, updating the shared [`TreeState`] differentially, so
//! the sparse form of every string is reached without recomputing shared
//! prefixes. Structured matrices prune or specialise the walk:
//!
//! * diagonal / antidiagonal matrices keep a single letter pair per level
//!   (I/Z, respectively X/Y), and the column array becomes implicit — only
//!   the sign array is maintained;
//! * banded matrices (including tridiagonal as bandwidth 1) skip X/Y
//!   subtrees whose accumulated antidiagonal offset already exceeds the
//!   bandwidth, which prunes every string with an all-zero coefficient while
//!   keeping all strings the band can support.
//!
//! Every walk counts its array element writes; [`predicted_op_count`] gives
//! the closed-form totals the implementations are tested against.

use num_complex::Complex64;

use crate::compose::{compose, MAX_OPERATOR_QUBITS};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase};
use crate::source::{MatrixSource, StructureClass};
use crate::tree::{coefficient_from_parts, TreeState};

/// Coefficients with norm at or below this are dropped from results.
pub const DEFAULT_PRUNE_TOLERANCE: f64 = 1e-12;

/// Ceiling for the brute-force reference decomposition, which recomposes all
/// 4^n strings from scratch.
pub const MAX_NAIVE_QUBITS: usize = 8;

/// Instrumentation from one decomposition walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WalkReport {
    /// Array element writes performed, including 2 for initialization.
    pub op_count: u64,
    /// Leaves visited, i.e. coefficients actually computed.
    pub leaves: u64,
    /// Leaves whose coefficient survived the tolerance.
    pub emitted: u64,
}

impl WalkReport {
    pub(crate) fn absorb(&mut self, other: WalkReport) {
        self.op_count += other.op_count;
        self.leaves += other.leaves;
        self.emitted += other.emitted;
    }
}

/// Decompose with the full, unpruned walk.
pub fn decompose_general<S: MatrixSource + ?Sized>(src: &S) -> Result<Decomposition> {
    decompose_structured(src, StructureClass::General)
}

/// Decompose with the walk specialised to `structure`, at the default
/// tolerance. The caller asserts the matrix has the claimed structure;
/// entries outside it are never read (see [`StructureClass::allows_entry`]).
pub fn decompose_structured<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
) -> Result<Decomposition> {
    Ok(decompose_with_report(src, structure, DEFAULT_PRUNE_TOLERANCE)?.0)
}

/// Like [`decompose_structured`] with an explicit tolerance, also returning
/// the walk's instrumentation.
pub fn decompose_with_report<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
    tolerance: f64,
) -> Result<(Decomposition, WalkReport)> {
    let n = src.qubit_count();
    let mut out = Decomposition::new(n.max(1));
    let report = decompose_streaming(src, structure, tolerance, |levels, coeff| {
        let s = PauliString::from_level_letters(levels).expect("walk paths are non-empty");
        out.set_term(s, coeff).expect("walk paths have length n");
    })?;
    Ok((out, report))
}

/// Run the decomposition walk, handing each surviving term to `sink` instead
/// of materializing a map. The letters are passed in level order (level 0
/// first, i.e. the reverse of text order) and the slice is reused between
/// calls. Terms arrive in depth-first walk order: I before X before Y before
/// Z at every level, most significant level varying slowest.
///
/// This is the allocation floor of the crate: one column array and one sign
/// array of length 2^n, plus the n-letter path.
pub fn decompose_streaming<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
    tolerance: f64,
    sink: impl FnMut(&[PauliLetter], Complex64),
) -> Result<WalkReport> {
    validate_walk(src, structure, tolerance)?;
    match walk_kind(structure) {
        WalkKind::Km { xy_band } => run_km_subtree(src, xy_band, tolerance, &[], sink),
        WalkKind::Sign { anti } => run_sign_subtree(src, anti, tolerance, &[], sink),
    }
}

pub(crate) fn validate_walk<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
    tolerance: f64,
) -> Result<()> {
    let n = src.qubit_count();
    if n == 0 {
        return Err(Error::ZeroQubitMatrix);
    }
    if n > MAX_OPERATOR_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    structure.validate(n)?;
    debug_assert!(tolerance >= 0.0, "tolerance must be non-negative");
    Ok(())
}

/// Which walker a structure class uses.
#[derive(Debug, Clone, Copy)]
pub(crate) enum WalkKind {
    /// Full column/sign walk; `xy_band` bounds the antidiagonal offset when
    /// set (tridiagonal is bandwidth 1).
    Km { xy_band: Option<u64> },
    /// Sign-only walk over an implicit column pattern: the identity
    /// permutation (I/Z letters) or the full reversal (X/Y letters).
    Sign { anti: bool },
}

pub(crate) fn walk_kind(structure: StructureClass) -> WalkKind {
    match structure {
        StructureClass::General => WalkKind::Km { xy_band: None },
        StructureClass::Tridiagonal => WalkKind::Km { xy_band: Some(1) },
        StructureClass::Band(s) => WalkKind::Km { xy_band: Some(s) },
        StructureClass::Diagonal => WalkKind::Sign { anti: false },
        StructureClass::AntiDiagonal => WalkKind::Sign { anti: true },
    }
}

/// Whether a bandwidth-`s` walk may descend into the X/Y children at
/// `level`, given the antidiagonal bits already on the path. Adding bit
/// `level` moves some entry of the string's support at least
/// `2^level - mask` diagonals away, so the subtree is dead once that exceeds
/// the bandwidth.
pub(crate) fn band_allows_xy(mask: u64, s: u64, level: usize) -> bool {
    mask + s >= 1u64 << level
}

/// Column/sign walker used for general and banded matrices.
struct KmWalk<'a, S: ?Sized, F> {
    state: TreeState,
    src: &'a S,
    xy_band: Option<u64>,
    tolerance: f64,
    path: Vec<PauliLetter>,
    report: WalkReport,
    sink: F,
}

impl<S: MatrixSource + ?Sized, F: FnMut(&[PauliLetter], Complex64)> KmWalk<'_, S, F> {
    fn run(&mut self, level: usize, mask: u64) {
        if level == self.state.qubit_count() {
            self.emit();
            return;
        }
        let xy = match self.xy_band {
            None => true,
            Some(s) => band_allows_xy(mask, s, level),
        };
        self.state.enter_i(level);
        self.path[level] = PauliLetter::I;
        self.run(level + 1, mask);
        if xy {
            self.state.i_to_x(level);
            self.path[level] = PauliLetter::X;
            self.run(level + 1, mask | 1u64 << level);
            self.state.x_to_y(level);
            self.path[level] = PauliLetter::Y;
            self.run(level + 1, mask | 1u64 << level);
            self.state.y_to_z(level);
        } else {
            self.state.i_to_z(level);
        }
        self.path[level] = PauliLetter::Z;
        self.run(level + 1, mask);
    }

    fn emit(&mut self) {
        self.report.leaves += 1;
        let coeff = coefficient_from_parts(
            self.state.qubit_count(),
            self.state.raw_columns(),
            self.state.raw_signs(),
            self.state.offset(),
            self.state.y_count(),
            self.src,
        );
        self.debug_check_leaf();
        if coeff.norm() > self.tolerance {
            self.report.emitted += 1;
            (self.sink)(&self.path, coeff);
        }
    }

    /// In debug builds at small sizes, confirm the differentially maintained
    /// state equals a from-scratch composition of the path.
    fn debug_check_leaf(&self) {
        #[cfg(debug_assertions)]
        if self.state.qubit_count() <= 4 {
            let s = PauliString::from_level_letters(&self.path).unwrap();
            let op = compose(&s).unwrap();
            let columns: Vec<u64> = self
                .state
                .raw_columns()
                .iter()
                .map(|&v| v.wrapping_add(self.state.offset()))
                .collect();
            debug_assert_eq!(columns, op.columns(), "columns at {s}");
            debug_assert_eq!(self.state.raw_signs(), op.signs(), "signs at {s}");
            debug_assert_eq!(self.state.y_count(), op.y_count(), "y count at {s}");
        }
    }
}

/// Walk the subtree under `prefix` (level-order letters). The prefix must
/// already respect the pruning rule; `decompose_streaming` passes an empty
/// prefix and the forest executor passes seeds it has pre-screened.
pub(crate) fn run_km_subtree<S: MatrixSource + ?Sized>(
    src: &S,
    xy_band: Option<u64>,
    tolerance: f64,
    prefix: &[PauliLetter],
    sink: impl FnMut(&[PauliLetter], Complex64),
) -> Result<WalkReport> {
    let n = src.qubit_count();
    let mut state = TreeState::new(n)?;
    let mut mask = 0u64;
    for (l, &letter) in prefix.iter().enumerate() {
        if letter.is_antidiagonal() {
            debug_assert!(
                xy_band.map_or(true, |s| band_allows_xy(mask, s, l)),
                "seed violates the band pruning rule"
            );
            mask |= 1u64 << l;
        }
        state.apply_letter(letter);
    }
    let mut path = vec![PauliLetter::I; n];
    path[..prefix.len()].copy_from_slice(prefix);
    let depth = prefix.len();
    let mut walk = KmWalk {
        state,
        src,
        xy_band,
        tolerance,
        path,
        report: WalkReport::default(),
        sink,
    };
    walk.run(depth, mask);
    walk.report.op_count = walk.state.op_count();
    Ok(walk.report)
}

/// Sign-only walker for diagonal (`anti = false`, letters I/Z) and
/// antidiagonal (`anti = true`, letters X/Y) matrices. The column pattern is
/// the same for both letters of each level, so only the sign array is kept:
/// entering a level copies the segment, switching to the second letter
/// negates it. Each level therefore costs `2·2^l` writes however the walk
/// proceeds, half of the full walker's per-level price.
struct SignWalk<'a, S: ?Sized, F> {
    n: usize,
    m: Vec<i8>,
    n_y: u32,
    anti: bool,
    src: &'a S,
    tolerance: f64,
    path: Vec<PauliLetter>,
    op_count: u64,
    report: WalkReport,
    sink: F,
}

impl<S: MatrixSource + ?Sized, F: FnMut(&[PauliLetter], Complex64)> SignWalk<'_, S, F> {
    fn first_letter(&self) -> PauliLetter {
        if self.anti {
            PauliLetter::X
        } else {
            PauliLetter::I
        }
    }

    fn second_letter(&self) -> PauliLetter {
        if self.anti {
            PauliLetter::Y
        } else {
            PauliLetter::Z
        }
    }

    fn enter(&mut self, l: usize) {
        let half = 1usize << l;
        let (head, tail) = self.m.split_at_mut(half);
        tail[..half].copy_from_slice(head);
        self.op_count += half as u64;
    }

    fn switch(&mut self, l: usize) {
        let half = 1usize << l;
        for v in &mut self.m[half..2 * half] {
            *v = -*v;
        }
        if self.anti {
            self.n_y += 1;
        }
        self.op_count += half as u64;
    }

    fn run(&mut self, level: usize) {
        if level == self.n {
            self.emit();
            return;
        }
        self.enter(level);
        self.path[level] = self.first_letter();
        self.run(level + 1);
        self.switch(level);
        self.path[level] = self.second_letter();
        self.run(level + 1);
        if self.anti {
            self.n_y -= 1;
        }
    }

    fn emit(&mut self) {
        self.report.leaves += 1;
        let dim = 1u64 << self.n;
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            let row = if self.anti { dim - 1 - j } else { j };
            let a = self.src.entry(row, j);
            if self.m[j as usize] >= 0 {
                sum += a;
            } else {
                sum -= a;
            }
        }
        let scale = 1.0 / dim as f64;
        let rotated = Phase::minus_i_power(i64::from(self.n_y)).apply(sum);
        let coeff = Complex64::new(rotated.re * scale, rotated.im * scale);
        self.debug_check_leaf();
        if coeff.norm() > self.tolerance {
            self.report.emitted += 1;
            (self.sink)(&self.path, coeff);
        }
    }

    fn debug_check_leaf(&self) {
        #[cfg(debug_assertions)]
        if self.n <= 4 {
            let s = PauliString::from_level_letters(&self.path).unwrap();
            let op = compose(&s).unwrap();
            let dim = 1u64 << self.n;
            let implied: Vec<u64> = (0..dim).map(|j| if self.anti { dim - 1 - j } else { j }).collect();
            debug_assert_eq!(&implied, op.columns(), "columns at {s}");
            debug_assert_eq!(&self.m, op.signs(), "signs at {s}");
            debug_assert_eq!(self.n_y, op.y_count(), "y count at {s}");
        }
    }
}

pub(crate) fn run_sign_subtree<S: MatrixSource + ?Sized>(
    src: &S,
    anti: bool,
    tolerance: f64,
    prefix: &[PauliLetter],
    sink: impl FnMut(&[PauliLetter], Complex64),
) -> Result<WalkReport> {
    let n = src.qubit_count();
    let mut m = vec![0i8; 1usize << n];
    m[0] = 1;
    let mut path = vec![PauliLetter::I; n];
    path[..prefix.len()].copy_from_slice(prefix);
    let mut walk = SignWalk {
        n,
        m,
        n_y: 0,
        anti,
        src,
        tolerance,
        path,
        op_count: 2,
        report: WalkReport::default(),
        sink,
    };
    for (l, &letter) in prefix.iter().enumerate() {
        debug_assert!(
            letter == walk.first_letter() || letter == walk.second_letter(),
            "seed letter outside the structure's alphabet"
        );
        walk.enter(l);
        if letter == walk.second_letter() {
            walk.switch(l);
        }
    }
    let depth = prefix.len();
    walk.run(depth);
    walk.report.op_count = walk.op_count;
    Ok(walk.report)
}

/// Brute-force reference: recompose every one of the 4^n strings from
/// scratch and take its coefficient. Exponentially slower than the walk and
/// capped at [`MAX_NAIVE_QUBITS`]; exists to cross-check the walkers.
pub fn decompose_naive<S: MatrixSource + ?Sized>(src: &S) -> Result<Decomposition> {
    let n = src.qubit_count();
    if n == 0 {
        return Err(Error::ZeroQubitMatrix);
    }
    if n > MAX_NAIVE_QUBITS {
        return Err(Error::NaiveTooLarge {
            n,
            max: MAX_NAIVE_QUBITS,
        });
    }
    let mut out = Decomposition::new(n);
    for idx in 0..4u64.pow(n as u32) {
        let levels: Vec<PauliLetter> = (0..n)
            .map(|l| crate::pauli::LETTERS[(idx >> (2 * l)) as usize & 3])
            .collect();
        let s = PauliString::from_level_letters(&levels)?;
        let op = compose(&s)?;
        let coeff = coefficient_from_parts(n, op.columns(), op.signs(), 0, op.y_count(), src);
        if coeff.norm() > DEFAULT_PRUNE_TOLERANCE {
            out.set_term(s, coeff)?;
        }
    }
    Ok(out)
}

/// The set of Pauli strings a structure class can support, characterised by
/// the string's antidiagonal mask (bit `l` set when the level-`l` letter is
/// X or Y). Letters I versus Z and X versus Y never change which entries a
/// string touches, so membership depends on the mask alone.
#[derive(Debug, Clone, Copy)]
pub struct SupportPredicate {
    n: usize,
    class: StructureClass,
}

/// Predicate for the strings that can appear when decomposing a matrix of
/// the given class.
pub fn allowed_support(class: StructureClass, n: usize) -> Result<SupportPredicate> {
    if n == 0 {
        return Err(Error::ZeroQubitMatrix);
    }
    if n > MAX_OPERATOR_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    class.validate(n)?;
    Ok(SupportPredicate { n, class })
}

impl SupportPredicate {
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    /// Whether strings with this antidiagonal mask can carry weight.
    ///
    /// For bandwidth `s` the rule is: mask 0 (diagonal strings) always, and
    /// otherwise `mask ≥ 2^(h+1) - s` where `h` is the mask's top set bit.
    /// A nonzero mask maps some column `j` to row `j ^ mask`, and the
    /// closest such pair of row and column is exactly `2^(h+1) - mask`
    /// diagonals apart, so the string touches the band precisely when that
    /// distance is within `s`.
    pub fn mask_allowed(&self, mask: u64) -> bool {
        debug_assert!(mask < 1u64 << self.n);
        match self.class {
            StructureClass::General => true,
            StructureClass::Diagonal => mask == 0,
            StructureClass::AntiDiagonal => mask == (1u64 << self.n) - 1,
            StructureClass::Tridiagonal => band_mask_allowed(mask, 1),
            StructureClass::Band(s) => band_mask_allowed(mask, s),
        }
    }

    /// Whether `s` can appear in a decomposition of this class.
    pub fn contains(&self, s: &PauliString) -> bool {
        s.qubit_count() == self.n && self.mask_allowed(s.x_mask())
    }

    /// Number of n-letter strings the class can support.
    pub fn count(&self) -> u128 {
        let dim = 1u128 << self.n;
        match self.class {
            StructureClass::General => dim * dim,
            StructureClass::Diagonal | StructureClass::AntiDiagonal => dim,
            StructureClass::Tridiagonal => (self.n as u128 + 1) * dim,
            StructureClass::Band(s) => {
                // One allowed mask with top bit h for each of the
                // min(2^h, s) admissible values, plus mask 0.
                let masks: u128 = 1 + (0..self.n)
                    .map(|h| (1u128 << h).min(s as u128))
                    .sum::<u128>();
                masks * dim
            }
        }
    }
}

fn band_mask_allowed(mask: u64, s: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let h = 63 - mask.leading_zeros();
    mask + s >= 1u64 << (h + 1)
}

/// Exact number of array element writes the walk performs for a structure
/// class at size n, including the 2 initialization writes.
///
/// * general: every level-l group costs `5·2^l` (enter 2·2^l, then the three
///   sibling steps at 2^l each) and there are `4^(n-1-l)` groups per level,
///   giving `2 + 5(8^n - 1)/7`;
/// * diagonal / antidiagonal: groups cost `2·2^l`, giving
///   `2 + 2(4^n - 1)/3`;
/// * banded: groups where X/Y is pruned cost `3·2^l` instead of `5·2^l`, and
///   whole subtrees disappear; the total is summed level by level over the
///   reachable antidiagonal masks.
pub fn predicted_op_count(class: StructureClass, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::ZeroQubitMatrix);
    }
    if n > MAX_OPERATOR_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    class.validate(n)?;
    Ok(match class {
        StructureClass::General => 2 + 5 * ((1u128 << (3 * n)) - 1) / 7,
        StructureClass::Diagonal | StructureClass::AntiDiagonal => {
            2 + 2 * ((1u128 << (2 * n)) - 1) / 3
        }
        StructureClass::Tridiagonal => predicted_band_op_count(1, n),
        StructureClass::Band(s) => predicted_band_op_count(s, n),
    })
}

/// Level-by-level tally over the masks the pruned walk can reach. A group at
/// level l under a prefix with mask `p` costs `2·2^l` to enter plus `3·2^l`
/// when the X/Y branch is taken (`p + s ≥ 2^l`) or `1·2^l` when it is
/// skipped (the direct I → Z step).
fn predicted_band_op_count(s: u64, n: usize) -> u128 {
    let mut masks: Vec<u64> = vec![0];
    let mut total: u128 = 2;
    for l in 0..n {
        let reachable = masks.len() as u128;
        let fertile: Vec<u64> = masks
            .iter()
            .filter(|&&p| band_allows_xy(p, s, l))
            .map(|&p| p | 1u64 << l)
            .collect();
        total += (3 * reachable + 2 * fertile.len() as u128) << (2 * l);
        masks.extend(fertile);
    }
    total
}
