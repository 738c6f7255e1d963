//! Addition and deletion moves, exhaustive candidate-line enumeration,
//! inductive-chain search, and stuck certificates.
//!
//! A candidate line with a prescribed intersection count is always spanned
//! by two multiple points of the arrangement, provided the count is small
//! enough (a line through at most one multiple point meets the others in at
//! least `ell - max mu` points). Candidate enumeration therefore refuses to
//! run outside that bound rather than silently under-enumerating: the
//! emptiness of a candidate list is certificate-grade evidence.
//!
//! A stuck certificate for a free arrangement records that every single
//! deletion is non-free and that no admissible addition exists; no step of
//! a free-to-free sequence can then move through the arrangement, which
//! rules out recursive freeness.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::exactnum::FieldContext;
use crate::freeness::{decide_free, ExponentTriple, FreenessError, FreenessVerdict};
use crate::geometry::{
    line_profile, meet, Arrangement, FVector, GeomError, HomogeneousTriple, Lattice,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("target n = {target} exceeds the completeness bound {bound}: enumeration by point pairs would be incomplete")]
    BoundViolated { target: usize, bound: usize },
    #[error("replay failed at step {step}: {reason}")]
    ReplayFailed { step: usize, reason: String },
    #[error(transparent)]
    Freeness(#[from] FreenessError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A line not in the arrangement, spanned by multiple points, together with
/// the intersection count it would have after being added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateLine {
    pub line: HomogeneousTriple,
    /// Indices into the lattice's point list of the multiple points on the line.
    pub through: Vec<usize>,
    pub resulting_n: usize,
}

/// All lines H not in the arrangement with n_{A+H, H} = `target_n`,
/// enumerated exhaustively over pairs of multiple points and sorted
/// canonically.
///
/// Requires `target_n <= ell - 1 - max mu`; beyond that bound a candidate
/// could pass through fewer than two multiple points and the pair
/// enumeration would miss it.
pub fn candidate_additions(
    arr: &Arrangement,
    lat: &Lattice,
    target_n: usize,
) -> Result<Vec<CandidateLine>, SearchError> {
    let ell = arr.len();
    let bound = ell.saturating_sub(1).saturating_sub(lat.max_mu());
    if target_n > bound {
        return Err(SearchError::BoundViolated { target: target_n, bound });
    }
    let points = lat.points();
    let mut seen: HashSet<HomogeneousTriple> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let line = meet(&points[i].point, &points[j].point)
                .expect("lattice points are pairwise distinct");
            if !seen.insert(line.clone()) {
                continue;
            }
            if arr.position(&line).is_some() {
                continue;
            }
            let through: Vec<usize> = (0..points.len())
                .filter(|&k| line.is_incident(&points[k].point))
                .collect();
            let mu_sum: usize = through.iter().map(|&k| points[k].mu).sum();
            let resulting_n = ell - mu_sum;
            if resulting_n == target_n {
                out.push(CandidateLine { line, through, resulting_n });
            }
        }
    }
    out.sort_by(|a, b| a.line.cmp(&b.line));
    Ok(out)
}

/// The per-line profiles F_H(A + H) over all candidates at `target_n`,
/// sorted as a multiset.
pub fn addition_profiles(
    arr: &Arrangement,
    lat: &Lattice,
    target_n: usize,
) -> Result<Vec<FVector>, SearchError> {
    let mut profiles = Vec::new();
    for cand in candidate_additions(arr, lat, target_n)? {
        let bigger = arr.with_line_added(cand.line)?;
        let fresh = bigger.lattice();
        let profile = line_profile(&fresh, bigger.len() - 1)?;
        debug_assert_eq!(profile.n, target_n);
        profiles.push(profile.fh);
    }
    profiles.sort();
    Ok(profiles)
}

/// A single addition or deletion move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[allow(clippy::large_enum_variant)]
pub enum Move {
    Add(HomogeneousTriple),
    Delete(usize),
}

/// Applies a move and decides freeness of the result. When the starting
/// arrangement is free, the addition-deletion shortcut (the count on the
/// moved line being one more than a current exponent) must agree with the
/// full decision; this is asserted.
pub fn try_step(
    arr: &Arrangement,
    mv: &Move,
) -> Result<(Arrangement, FreenessVerdict), SearchError> {
    let (next, moved_line_n) = match mv {
        Move::Add(line) => {
            let next = arr.with_line_added(line.clone())?;
            let fresh = next.lattice();
            let n = fresh.line_n(next.len() - 1);
            (next, n)
        }
        Move::Delete(i) => {
            let n = arr.lattice().line_n(*i);
            (arr.with_line_removed(*i)?, n)
        }
    };
    let verdict = decide_free(&next)?;
    // Shortcut consistency: both directions of the addition-deletion
    // theorem apply as soon as the endpoints have shape (1, a, b).
    let shortcut_applies = arr.len() >= 2 || (matches!(mv, Move::Add(_)) && arr.len() == 1);
    if shortcut_applies {
        if let Ok(before) = decide_free(arr) {
            if before.is_free {
                let exps = before.exponents.expect("free verdicts carry exponents");
                let expected = moved_line_n == exps.a + 1 || moved_line_n == exps.b + 1;
                assert_eq!(
                    verdict.is_free, expected,
                    "addition-deletion shortcut disagrees with the full decision \
                     (n = {moved_line_n}, exponents {exps})"
                );
            }
        }
    }
    Ok((next, verdict))
}

/// One step of a replayable chain: the line moved, whether it was added,
/// and the exponents the intermediate arrangement must have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub line: HomogeneousTriple,
    pub add: bool,
    pub exponents_after: ExponentTriple,
}

/// A move sequence from the empty arrangement with every intermediate
/// arrangement free; all-addition chains witness inductive freeness, mixed
/// chains witness recursive freeness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub ctx: FieldContext,
    pub steps: Vec<ChainStep>,
}

/// Evidence that a free arrangement has no free neighbor: every deletion is
/// non-free and the exhaustive candidate lists at every admissible target
/// count contain no free addition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StuckCertificate {
    pub verdict: FreenessVerdict,
    pub deletion_verdicts: Vec<FreenessVerdict>,
    pub targets: Vec<usize>,
    pub candidates: Vec<(CandidateLine, FreenessVerdict)>,
    /// The completeness bound ell - 1 - max mu under which the candidate
    /// enumeration is exhaustive.
    pub bound: usize,
}

/// A replayable certificate: either an inductive chain or a stuck witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    InductiveChain(ChainCertificate),
    Stuck(StuckCertificate),
}

impl fmt::Display for ChainCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "{:>3}. {} {}  ->  exp {}",
                k + 1,
                if s.add { "+" } else { "-" },
                s.line,
                s.exponents_after
            )?;
        }
        Ok(())
    }
}

/// Searches depth-first for a filtration witnessing inductive freeness:
/// at each level a line whose intersection count is one more than a current
/// exponent is deleted, and the chain must reach the empty arrangement.
/// Returns `None` when the arrangement is not free or no chain exists.
pub fn inductive_certificate(arr: &Arrangement) -> Result<Option<ChainCertificate>, SearchError> {
    if arr.is_empty() {
        return Ok(Some(ChainCertificate { ctx: arr.context(), steps: Vec::new() }));
    }
    let verdict = decide_free(arr)?;
    if !verdict.is_free {
        return Ok(None);
    }
    let mut dead_ends: HashSet<Vec<HomogeneousTriple>> = HashSet::new();
    let exps = verdict.exponents.expect("free verdicts carry exponents");
    match descend(arr, exps, &mut dead_ends)? {
        Some(steps) => Ok(Some(ChainCertificate { ctx: arr.context(), steps })),
        None => Ok(None),
    }
}

fn canonical_key(arr: &Arrangement) -> Vec<HomogeneousTriple> {
    let mut key = arr.lines().to_vec();
    key.sort();
    key
}

/// Returns the forward chain building `arr` from the empty arrangement, or
/// `None` if every deletion order dead-ends. `arr` is known free with
/// exponents `exps`.
fn descend(
    arr: &Arrangement,
    exps: ExponentTriple,
    dead_ends: &mut HashSet<Vec<HomogeneousTriple>>,
) -> Result<Option<Vec<ChainStep>>, SearchError> {
    if arr.len() == 1 {
        return Ok(Some(vec![ChainStep {
            line: arr.line(0)?.clone(),
            add: true,
            exponents_after: ExponentTriple::new(0, 0),
        }]));
    }
    let key = canonical_key(arr);
    if dead_ends.contains(&key) {
        return Ok(None);
    }
    let lat = arr.lattice();
    for i in 0..arr.len() {
        let n = lat.line_n(i);
        if n != exps.a + 1 && n != exps.b + 1 {
            continue;
        }
        let child = arr.with_line_removed(i)?;
        let child_verdict = decide_free(&child)?;
        debug_assert!(child_verdict.is_free, "deletion theorem guarantees freeness");
        let child_exps = child_verdict.exponents.expect("free verdicts carry exponents");
        if let Some(mut steps) = descend(&child, child_exps, dead_ends)? {
            steps.push(ChainStep {
                line: arr.line(i)?.clone(),
                add: true,
                exponents_after: exps,
            });
            return Ok(Some(steps));
        }
    }
    dead_ends.insert(key);
    Ok(None)
}

/// Replays a chain from the empty arrangement, re-deciding freeness after
/// every move and checking the recorded exponents. Returns the final
/// arrangement.
pub fn replay_chain(cert: &ChainCertificate) -> Result<Arrangement, SearchError> {
    let mut arr = Arrangement::empty(cert.ctx);
    for (k, step) in cert.steps.iter().enumerate() {
        let mv = if step.add {
            Move::Add(step.line.clone())
        } else {
            let idx = arr.position(&step.line).ok_or_else(|| SearchError::ReplayFailed {
                step: k,
                reason: format!("line {} not present for deletion", step.line),
            })?;
            Move::Delete(idx)
        };
        let verdict = match &mv {
            Move::Add(line) => {
                arr = arr.with_line_added(line.clone())?;
                decide_free(&arr)?
            }
            Move::Delete(i) => {
                arr = arr.with_line_removed(*i)?;
                if arr.is_empty() {
                    return Err(SearchError::ReplayFailed {
                        step: k,
                        reason: "chain revisits the empty arrangement".into(),
                    });
                }
                decide_free(&arr)?
            }
        };
        if !verdict.is_free {
            return Err(SearchError::ReplayFailed {
                step: k,
                reason: "intermediate arrangement is not free".into(),
            });
        }
        let exps = verdict.exponents.expect("free verdicts carry exponents");
        if exps != step.exponents_after {
            return Err(SearchError::ReplayFailed {
                step: k,
                reason: format!("exponents {exps} do not match recorded {}", step.exponents_after),
            });
        }
    }
    Ok(arr)
}

/// Whether two arrangements consist of the same lines (order ignored).
pub fn same_lines(a: &Arrangement, b: &Arrangement) -> bool {
    canonical_key(a) == canonical_key(b)
}

/// Attempts to certify that a free arrangement is adjacent to no free
/// arrangement: (i) every single deletion is non-free, and (ii) the
/// exhaustive candidate lists at the admissible targets a+1, b+1 contain no
/// free addition. Returns `None` when the arrangement is not free or a free
/// neighbor exists.
pub fn prove_stuck(arr: &Arrangement) -> Result<Option<StuckCertificate>, SearchError> {
    let verdict = decide_free(arr)?;
    if !verdict.is_free {
        return Ok(None);
    }
    if arr.len() == 1 {
        // Deleting the only line leaves the empty arrangement, which is free.
        return Ok(None);
    }
    let exps = verdict.exponents.expect("free verdicts carry exponents");
    let mut deletion_verdicts = Vec::with_capacity(arr.len());
    for i in 0..arr.len() {
        let v = decide_free(&arr.with_line_removed(i)?)?;
        if v.is_free {
            return Ok(None);
        }
        deletion_verdicts.push(v);
    }
    let lat = arr.lattice();
    let mut targets = vec![exps.a + 1, exps.b + 1];
    targets.dedup();
    let bound = arr.len() - 1 - lat.max_mu();
    let mut candidates = Vec::new();
    for &t in &targets {
        for cand in candidate_additions(arr, &lat, t)? {
            let v = decide_free(&arr.with_line_added(cand.line.clone())?)?;
            if v.is_free {
                return Ok(None);
            }
            candidates.push((cand, v));
        }
    }
    Ok(Some(StuckCertificate {
        verdict,
        deletion_verdicts,
        targets,
        candidates,
        bound,
    }))
}

/// Convenience wrapper: the sorted multiset of F-vectors is often compared
/// in tests and reports.
pub fn profile_multiset(profiles: &[FVector]) -> Vec<(FVector, usize)> {
    let mut counts: Vec<(FVector, usize)> = Vec::new();
    for p in profiles {
        match counts.iter_mut().find(|(q, _)| q == p) {
            Some((_, c)) => *c += 1,
            None => counts.push((p.clone(), 1)),
        }
    }
    counts.sort_by(|(a, _), (b, _)| a.cmp(b));
    counts
}

/// Recomputes candidate data from scratch: the resulting count via a fresh
/// lattice of the enlarged arrangement.
pub fn recheck_candidate(arr: &Arrangement, cand: &CandidateLine) -> Result<bool, SearchError> {
    let bigger = arr.with_line_added(cand.line.clone())?;
    let fresh = bigger.lattice();
    let n = fresh.line_n(bigger.len() - 1);
    Ok(n == cand.resulting_n)
}
