//! Shared test oracles, independent of the library's implementation paths.
#![allow(dead_code)]

use replay_core::hypothesis::HypothesisClass;
use replay_core::pointset::PointSet;

/// Unmemoized mistake-tree recursion.
pub fn ldim_naive(hyps: &[PointSet], n: usize) -> usize {
    if hyps.len() <= 1 {
        return 0;
    }
    let mut best = 0;
    for x in 0..n {
        let ones: Vec<PointSet> = hyps.iter().filter(|h| h.value(x)).cloned().collect();
        if ones.is_empty() || ones.len() == hyps.len() {
            continue;
        }
        let zeros: Vec<PointSet> = hyps.iter().filter(|h| !h.value(x)).cloned().collect();
        let d = 1 + ldim_naive(&zeros, n).min(ldim_naive(&ones, n));
        best = best.max(d);
    }
    best
}

fn level_realizable(hyps: &[PointSet], points: &[usize], level: usize) -> bool {
    hyps.iter().any(|h| {
        points
            .iter()
            .enumerate()
            .all(|(j, &x)| h.value(x) == (j < level))
    })
}

fn witness_sequence_ok(hyps: &[PointSet], points: &[usize]) -> bool {
    (0..=points.len()).all(|i| level_realizable(hyps, points, i))
}

/// Brute-force witness search over all ordered point sequences. Exponential;
/// for small domains only.
pub fn tdim_brute(class: &HypothesisClass) -> usize {
    let n = class.domain().size();
    let hyps = class.hypotheses();
    let cap = n.min(class.len().saturating_sub(1));
    let mut best = 0;
    let mut points = Vec::new();
    extend(hyps, n, cap, &mut points, &mut best);
    best
}

fn extend(hyps: &[PointSet], n: usize, cap: usize, points: &mut Vec<usize>, best: &mut usize) {
    *best = (*best).max(points.len());
    if points.len() == cap {
        return;
    }
    for x in 0..n {
        if points.contains(&x) {
            continue;
        }
        points.push(x);
        // adding points only tightens the level constraints, so an invalid
        // prefix can never extend to a valid witness
        if witness_sequence_ok(hyps, points) {
            extend(hyps, n, cap, points, best);
        }
        points.pop();
    }
}
