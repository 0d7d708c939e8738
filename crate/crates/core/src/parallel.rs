//! Deterministic multi-threaded decomposition.
//!
//! The tree is cut at a fixed level `c`: the 4^c assignments of the first
//! `c` levels become independent subtree tasks, because sibling updates at
//! levels ≥ c never touch state derived from other prefixes. Workers claim
//! tasks from a shared counter, every task rebuilds its seed state with the
//! exact element writes the sequential walk would have performed on first
//! reaching that prefix, and results merge by seed index. Coefficients are
//! therefore bit-identical to the sequential walk for every worker count and
//! cut level — scheduling only changes who computes a subtree, never the
//! arithmetic inside it.
//!
//! Instrumentation is the one observable that differs: each task pays for
//! its own seed construction, so the summed operation count exceeds the
//! sequential count by the re-seeding overhead.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use num_complex::Complex64;

use crate::decompose::{
    band_allows_xy, run_km_subtree, run_sign_subtree, validate_walk, walk_kind, WalkKind,
    WalkReport, DEFAULT_PRUNE_TOLERANCE,
};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, LETTERS};
use crate::source::{MatrixSource, StructureClass};
use crate::tree::TreeState;

/// Largest allowed cut level; 4^10 tasks is already far beyond any useful
/// level of over-decomposition.
pub const MAX_CUT_LEVEL: usize = 10;

/// How a decomposition is split into subtree tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestPlan {
    n: usize,
    cut_level: usize,
    workers: usize,
}

impl ForestPlan {
    /// Plan with an explicit cut level.
    pub fn new(n: usize, workers: usize, cut_level: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubitMatrix);
        }
        if workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        let max = n.min(MAX_CUT_LEVEL);
        if cut_level > max {
            return Err(Error::InvalidCutLevel { cut: cut_level, n, max });
        }
        Ok(ForestPlan {
            n,
            cut_level,
            workers,
        })
    }

    /// Plan with the default cut level for this worker count.
    pub fn with_default_cut(n: usize, workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        ForestPlan::new(n, workers, Self::default_cut_level(n, workers))
    }

    /// Smallest cut giving at least eight tasks per worker (so the shared
    /// queue can absorb imbalance between subtrees), clamped to the tree
    /// depth and [`MAX_CUT_LEVEL`].
    pub fn default_cut_level(n: usize, workers: usize) -> usize {
        let want = 8 * workers.max(1);
        let mut cut = 0;
        while cut < n.min(MAX_CUT_LEVEL) && (1usize << (2 * cut)) < want {
            cut += 1;
        }
        cut
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn cut_level(&self) -> usize {
        self.cut_level
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Number of subtree tasks, 4^cut_level.
    pub fn task_count(&self) -> usize {
        1 << (2 * self.cut_level)
    }

    /// Seed letters of task `index` in level order (level 0 first). Tasks
    /// are numbered in the sequential walk's visiting order: the level-0
    /// letter changes slowest, each level cycling I, X, Y, Z.
    pub fn seed(&self, index: usize) -> Vec<PauliLetter> {
        assert!(index < self.task_count());
        let c = self.cut_level;
        (0..c)
            .map(|l| LETTERS[(index >> (2 * (c - 1 - l))) & 3])
            .collect()
    }
}

/// Build the walk state a subtree task starts from: a fresh n-qubit state
/// with the prefix's letters applied level by level (the last text character
/// of `prefix` is level 0). The resulting arrays, phase and operation count
/// are exactly those of the sequential walk on first reaching this prefix.
pub fn seed_subtree(prefix: &PauliString, n: usize) -> Result<TreeState> {
    let cut = prefix.qubit_count();
    if cut > n {
        return Err(Error::InvalidCutLevel { cut, n, max: n });
    }
    let mut state = TreeState::new(n)?;
    for l in 0..cut {
        state.apply_letter(prefix.letter_at_level(l));
    }
    Ok(state)
}

/// Decompose on `workers` threads with the plan's cut level, returning the
/// merged instrumentation alongside the result. The coefficient map is
/// bit-identical to [`crate::decompose_with_report`] with the same structure
/// and tolerance.
pub fn decompose_forest<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
    plan: &ForestPlan,
    tolerance: f64,
) -> Result<(Decomposition, WalkReport)> {
    validate_walk(src, structure, tolerance)?;
    let n = src.qubit_count();
    if plan.qubit_count() != n {
        return Err(Error::QubitCountMismatch {
            left: plan.qubit_count(),
            right: n,
        });
    }
    let kind = walk_kind(structure);
    let tasks = plan.task_count();
    let next_task = AtomicUsize::new(0);

    type TaskOut = (Vec<(PauliString, Complex64)>, WalkReport);
    let joined: Vec<std::result::Result<Vec<(usize, TaskOut)>, _>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..plan.workers())
            .map(|_| {
                scope.spawn(|| -> Vec<(usize, TaskOut)> {
                    let mut local = Vec::new();
                    loop {
                        let t = next_task.fetch_add(1, Ordering::Relaxed);
                        if t >= tasks {
                            break;
                        }
                        let prefix = plan.seed(t);
                        if !seed_viable(&prefix, kind) {
                            continue;
                        }
                        let mut pairs = Vec::new();
                        let sink = |levels: &[PauliLetter], coeff: Complex64| {
                            let s = PauliString::from_level_letters(levels)
                                .expect("walk paths are non-empty");
                            pairs.push((s, coeff));
                        };
                        let report = match kind {
                            WalkKind::Km { xy_band } => {
                                run_km_subtree(src, xy_band, tolerance, &prefix, sink)
                            }
                            WalkKind::Sign { anti } => {
                                run_sign_subtree(src, anti, tolerance, &prefix, sink)
                            }
                        }
                        .expect("walk inputs were validated before spawning");
                        local.push((t, (pairs, report)));
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join()).collect()
    });

    let mut outputs = Vec::new();
    for res in joined {
        match res {
            Ok(local) => outputs.extend(local),
            Err(_) => return Err(Error::WorkerPanicked),
        }
    }
    outputs.sort_by_key(|(t, _)| *t);

    let mut out = Decomposition::new(n);
    let mut report = WalkReport::default();
    for (_, (pairs, task_report)) in outputs {
        report.absorb(task_report);
        for (s, coeff) in pairs {
            out.set_term(s, coeff)?;
        }
    }
    Ok((out, report))
}

/// Decompose on `workers` threads with the default cut level and tolerance.
pub fn decompose_parallel<S: MatrixSource + ?Sized>(
    src: &S,
    structure: StructureClass,
    workers: usize,
) -> Result<Decomposition> {
    let plan = ForestPlan::with_default_cut(src.qubit_count().max(1), workers)?;
    Ok(decompose_forest(src, structure, &plan, DEFAULT_PRUNE_TOLERANCE)?.0)
}

/// Whether the pruned walk would reach this prefix at all. Seeds that fail
/// are skipped without running a task — the sequential walk never visits
/// them either.
fn seed_viable(prefix: &[PauliLetter], kind: WalkKind) -> bool {
    match kind {
        WalkKind::Km { xy_band: None } => true,
        WalkKind::Km {
            xy_band: Some(s),
        } => {
            let mut mask = 0u64;
            for (l, &letter) in prefix.iter().enumerate() {
                if letter.is_antidiagonal() {
                    if !band_allows_xy(mask, s, l) {
                        return false;
                    }
                    mask |= 1u64 << l;
                }
            }
            true
        }
        WalkKind::Sign { anti } => prefix
            .iter()
            .all(|&letter| letter.is_antidiagonal() == anti),
    }
}
