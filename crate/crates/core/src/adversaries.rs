//! Nature strategies: truthful oracles, the adaptive lower-bound
//! constructions, trap exploitation and stochastic adversaries.
//!
//! Every strategy keeps its emissions legal by construction: replay tags cite
//! an earlier round whose hypothesis agrees with the label, and truth-claimed
//! queries are skipped or replaced by replays whenever a reliable label would
//! empty the version space.

use crate::dimensions::witness_from_chain;
use crate::engine::{Adversary, Emission, GameView, LabelSource, TrapWitness};
use crate::error::{Error, Result};
use crate::family::closure_elements;
use crate::hypothesis::{closure_in, Hypothesis, HypothesisClass};
use crate::pointset::PointSet;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Names accepted by [`by_name`].
pub const ADVERSARY_NAMES: &[&str] = &[
    "truth",
    "descending",
    "witness_chain",
    "trap_exploit",
    "geometric_stochastic",
    "uniform_stochastic",
    "convex_uniform",
];

// ---------------------------------------------------------------------------
// Sample distributions
// ---------------------------------------------------------------------------

/// Point distributions used by the stochastic adversaries. The geometric
/// forms put mass `(1/2)·3^{k-N}` on level `k < N` with the remaining mass
/// (at least 3/4) on the top level. Uniform sampling over convex bodies is
/// the continuous counterpart and lives in [`crate::convex::Body`].
#[derive(Debug, Clone)]
pub enum DistributionSpec {
    UniformPoints(Vec<usize>),
    /// Over the 1-based domain `[N]`: `P(X=k) = (1/2)·3^(k-N)` for `k < N`.
    GeometricThreshold {
        n: usize,
    },
    /// Positional analogue over a witness point list: the first witness point
    /// carries the bulk mass, position `k >= 2` carries `(1/2)·3^(1-k)`.
    GeometricWitness {
        points: Vec<usize>,
    },
}

impl DistributionSpec {
    /// `(point, probability)` pairs; probabilities sum to 1 within 1e-12.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        let w = match self {
            DistributionSpec::UniformPoints(pts) => {
                let p = 1.0 / pts.len() as f64;
                pts.iter().map(|&x| (x, p)).collect::<Vec<_>>()
            }
            DistributionSpec::GeometricThreshold { n } => {
                let n = *n;
                let mut out = Vec::with_capacity(n);
                let mut rest = 1.0;
                for k in 1..n {
                    let p = 0.5 * 3f64.powi(k as i32 - n as i32);
                    out.push((k - 1, p));
                    rest -= p;
                }
                out.push((n - 1, rest));
                out
            }
            DistributionSpec::GeometricWitness { points } => {
                let tau = points.len();
                let mut out = Vec::with_capacity(tau);
                let mut rest = 1.0;
                for k in 2..=tau {
                    let p = 0.5 * 3f64.powi(1 - k as i32);
                    out.push((points[k - 1], p));
                    rest -= p;
                }
                out.push((points[0], rest));
                out.reverse();
                out
            }
        };
        debug_assert!((w.iter().map(|&(_, p)| p).sum::<f64>() - 1.0).abs() <= 1e-12);
        w
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let w = self.weights();
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for &(x, p) in &w {
            acc += p;
            if u < acc {
                return x;
            }
        }
        w.last().expect("nonempty distribution").0
    }

    pub fn probability_of(&self, x: usize) -> f64 {
        self.weights()
            .iter()
            .find(|&&(p, _)| p == x)
            .map_or(0.0, |&(_, w)| w)
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn current_hypothesis<'a>(view: &'a GameView) -> &'a Hypothesis {
    view.hypotheses.last().expect("engine emits before asking")
}

/// A reliable label at `x` would leave no consistent target.
fn would_strand_target(view: &GameView, x: usize, y: bool) -> bool {
    view.reliable.is_reliable(current_hypothesis(view), x, y)
        && !view.reliable.version_space.iter().any(|h| h.value(x) == y)
}

/// Filler move: echo an old hypothesis, which never grows the reliable set.
fn echo(view: &GameView, x: usize) -> Emission {
    if view.t == 1 {
        // No replay source exists yet; an echo of the current hypothesis is
        // unreliable either way and can only be tagged as a truth claim.
        Emission {
            x,
            y: current_hypothesis(view).value(x),
            source: LabelSource::Truth,
        }
    } else {
        Emission {
            x,
            y: view.rounds[0].hypothesis.value(x),
            source: LabelSource::Replay(1),
        }
    }
}

/// Trap exploitation core: at the trapped point, always answer with the
/// opposite of the learner's current prediction, attributed to whichever of
/// the two recorded rounds realised that label.
#[derive(Debug, Clone)]
struct ExploitCore {
    x: usize,
    round_pos: usize,
    round_neg: usize,
}

impl ExploitCore {
    fn from_witness(w: &TrapWitness) -> Self {
        ExploitCore {
            x: w.x,
            round_pos: w.replay_rounds.0,
            round_neg: w.replay_rounds.1,
        }
    }

    fn emit_at(&self, view: &GameView) -> Emission {
        let y = !current_hypothesis(view).value(self.x);
        Emission {
            x: self.x,
            y,
            source: LabelSource::Replay(if y { self.round_pos } else { self.round_neg }),
        }
    }
}

/// Picks a trap point and its certificates from the adversary's view, if the
/// current trap region is nonempty. `weight` breaks ties (higher first, then
/// smaller point index).
fn find_trap(view: &GameView, weight: impl Fn(usize) -> f64) -> Option<TrapWitness> {
    let trap = view.trap_now();
    let mut best: Option<usize> = None;
    for x in trap.iter() {
        match best {
            None => best = Some(x),
            Some(b) if weight(x) > weight(b) => best = Some(x),
            _ => {}
        }
    }
    let x = best?;
    view.reliable.trap_witness_at(x, view.rounds)
}

// ---------------------------------------------------------------------------
// Truthful adversary
// ---------------------------------------------------------------------------

pub enum SampleSource {
    Sequence(Vec<usize>),
    Dist(DistributionSpec, Box<ChaCha8Rng>),
}

/// Degenerate replay adversary: always reveals the target's label.
pub struct TruthAdversary {
    target: Hypothesis,
    source: SampleSource,
}

impl TruthAdversary {
    pub fn new(target: Hypothesis, source: SampleSource) -> Self {
        TruthAdversary { target, source }
    }

    pub fn uniform(target: Hypothesis, n: usize, seed: u64) -> Self {
        TruthAdversary::new(
            target,
            SampleSource::Dist(
                DistributionSpec::UniformPoints((0..n).collect()),
                Box::new(ChaCha8Rng::seed_from_u64(seed)),
            ),
        )
    }

    pub fn target(&self) -> &Hypothesis {
        &self.target
    }
}

impl Adversary for TruthAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        let x = match &mut self.source {
            SampleSource::Sequence(seq) => *seq
                .get(view.t - 1)
                .ok_or(Error::SampleSourceExhausted { round: view.t })?,
            SampleSource::Dist(dist, rng) => dist.sample(rng),
        };
        Ok(Emission {
            x,
            y: self.target.value(x),
            source: LabelSource::Truth,
        })
    }
}

// ---------------------------------------------------------------------------
// Descending adaptive adversary
// ---------------------------------------------------------------------------

/// The threshold lower-bound construction: after seeing the first hypothesis,
/// split the domain into its positive region `P` and the rest, then sweep the
/// larger region first in descending point order — label 1 outside `P`,
/// label 0 inside it. Against a conservative learner starting all-zeros this
/// is the pure descending sweep `(N,1), (N-1,1), .., (1,1)`.
pub struct DescendingAdversary {
    plan: Option<Vec<(usize, bool)>>,
    next: usize,
}

impl DescendingAdversary {
    pub fn new() -> Self {
        DescendingAdversary {
            plan: None,
            next: 0,
        }
    }
}

impl Default for DescendingAdversary {
    fn default() -> Self {
        Self::new()
    }
}

impl Adversary for DescendingAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        if self.plan.is_none() {
            let first = &view.hypotheses[0];
            let n = first.len();
            let ones: Vec<usize> = (0..n).rev().filter(|&x| first.value(x)).collect();
            let zeros: Vec<usize> = (0..n).rev().filter(|&x| !first.value(x)).collect();
            let outside: Vec<(usize, bool)> = zeros.iter().map(|&x| (x, true)).collect();
            let inside: Vec<(usize, bool)> = ones.iter().map(|&x| (x, false)).collect();
            let mut plan = Vec::with_capacity(n);
            if inside.len() > outside.len() {
                plan.extend(inside);
                plan.extend(outside);
            } else {
                plan.extend(outside);
                plan.extend(inside);
            }
            self.plan = Some(plan);
        }
        let plan = self.plan.as_ref().expect("plan built");
        while self.next < plan.len() {
            let (x, y) = plan[self.next];
            self.next += 1;
            if would_strand_target(view, x, y) {
                continue;
            }
            return Ok(Emission {
                x,
                y,
                source: LabelSource::Truth,
            });
        }
        Ok(echo(view, 0))
    }
}

// ---------------------------------------------------------------------------
// Witness-chain adaptive adversary
// ---------------------------------------------------------------------------

/// The general adaptive lower-bound construction. At round 1 it fixes
/// `f = ĥ_1` and works in the flipped class `G = H^f`:
///
/// - when `G` is not intersection-closed, it opens with a minimal point set
///   whose closure falls outside `G` (the proper-learnability construction) —
///   any learner forced to commit beyond that closure opens a trap;
/// - it then walks the witness points of `closure(G)` with flipped label 1,
///   which costs any trap-free learner one mistake per fresh point;
/// - after every round it scans for a nonempty trap region and, once one
///   exists, plays the trapped point forever with the opposite of the
///   learner's current prediction.
pub struct WitnessChainAdversary {
    queries: Option<Vec<usize>>,
    next: usize,
    mask: PointSet,
    exploit: Option<ExploitCore>,
    trap_entered_at: Option<usize>,
}

impl WitnessChainAdversary {
    pub fn new() -> Self {
        WitnessChainAdversary {
            queries: None,
            next: 0,
            mask: PointSet::empty(1),
            exploit: None,
            trap_entered_at: None,
        }
    }

    /// Round the adversary switched to trap exploitation, if it did.
    pub fn trap_entered_at(&self) -> Option<usize> {
        self.trap_entered_at
    }

    /// The precomputed query plan (trap-setting prefix followed by witness
    /// points), available after round 1.
    pub fn planned_queries(&self) -> Option<&[usize]> {
        self.queries.as_deref()
    }

    fn build_plan(&mut self, view: &GameView) {
        let f = view.hypotheses[0].clone();
        let flipped: Vec<Hypothesis> = view
            .class
            .hypotheses()
            .iter()
            .map(|h| h.symmetric_difference(&f))
            .collect();
        let mut queries = trap_setting_prefix(&flipped);
        let elements = closure_elements(&flipped);
        let (_, witness) = witness_from_chain(&elements);
        queries.extend(witness.points);
        self.mask = f;
        self.queries = Some(queries);
    }
}

impl Default for WitnessChainAdversary {
    fn default() -> Self {
        Self::new()
    }
}

/// Minimal-cardinality point set whose closure under the class is not a
/// member, drawn from the first non-member pairwise intersection. Empty when
/// the class is intersection-closed.
fn trap_setting_prefix(hyps: &[Hypothesis]) -> Vec<usize> {
    let members: HashSet<&Hypothesis> = hyps.iter().collect();
    let mut meet: Option<PointSet> = None;
    'outer: for i in 0..hyps.len() {
        for j in (i + 1)..hyps.len() {
            let m = hyps[i].intersection(&hyps[j]);
            if !members.contains(&m) {
                meet = Some(m);
                break 'outer;
            }
        }
    }
    let Some(meet) = meet else {
        return Vec::new();
    };
    let pool: Vec<usize> = meet.iter().collect();
    let max_size = pool.len().min(8);
    for size in 1..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let candidate = PointSet::from_points(meet.len(), idx.iter().map(|&i| pool[i]));
            let closed = closure_in(hyps, &candidate);
            if !members.contains(&closed) {
                return candidate.iter().collect();
            }
            // next combination
            let mut i = size;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if idx[i] != i + pool.len() - size {
                    idx[i] += 1;
                    for j in (i + 1)..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    pool
}

impl Adversary for WitnessChainAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        if self.queries.is_none() {
            self.build_plan(view);
        }
        if let Some(core) = &self.exploit {
            return Ok(core.emit_at(view));
        }
        if let Some(w) = find_trap(view, |_| 0.0) {
            self.trap_entered_at = Some(view.t);
            let core = ExploitCore::from_witness(&w);
            let emission = core.emit_at(view);
            self.exploit = Some(core);
            return Ok(emission);
        }
        let queries = self.queries.as_ref().expect("plan built");
        while self.next < queries.len() {
            let x = queries[self.next];
            self.next += 1;
            let y = !self.mask.value(x);
            if would_strand_target(view, x, y) {
                continue;
            }
            return Ok(Emission {
                x,
                y,
                source: LabelSource::Truth,
            });
        }
        let anchor = queries.last().copied().unwrap_or(0);
        Ok(echo(view, anchor))
    }
}

// ---------------------------------------------------------------------------
// Standalone trap exploitation
// ---------------------------------------------------------------------------

/// Replays a scripted prefix, then locates a trap in the resulting state and
/// exploits it for every remaining round. With an empty script this is the
/// engine-internal continuation started from whatever state already exists.
pub struct TrapExploitAdversary {
    script: Vec<Emission>,
    exploit: Option<ExploitCore>,
    witness: Option<TrapWitness>,
}

impl TrapExploitAdversary {
    pub fn new(script: Vec<Emission>) -> Self {
        TrapExploitAdversary {
            script,
            exploit: None,
            witness: None,
        }
    }

    /// The certified trap being exploited, once entered.
    pub fn witness(&self) -> Option<&TrapWitness> {
        self.witness.as_ref()
    }
}

impl Adversary for TrapExploitAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        if view.t <= self.script.len() {
            return Ok(self.script[view.t - 1].clone());
        }
        if self.exploit.is_none() {
            if let Some(w) = find_trap(view, |_| 0.0) {
                self.exploit = Some(ExploitCore::from_witness(&w));
                self.witness = Some(w);
            }
        }
        match &self.exploit {
            Some(core) => Ok(core.emit_at(view)),
            None => Ok(echo(view, 0)),
        }
    }
}

// ---------------------------------------------------------------------------
// Geometric stochastic adversary
// ---------------------------------------------------------------------------

/// The stochastic lower-bound construction. Ahead of round 1 it fixes
/// `f = ĥ_1`, computes the witness points of `closure(H^f)` and samples
/// i.i.d. from the geometric witness distribution for the whole game:
///
/// - the first half of the rounds is labelled flipped-1 (the all-ones phase);
/// - a nonempty trap region switches it to the stochastic exploitation mode:
///   the opposite label whenever the trapped point is drawn, a replay of the
///   switch-time hypothesis elsewhere;
/// - without a trap, the second half is labelled by an internally committed
///   worst-case-so-far target, which keeps that target consistent.
///
/// On the threshold class this reproduces the geometric distribution over
/// `[N]` exactly.
pub struct GeometricStochasticAdversary {
    rng: ChaCha8Rng,
    setup: Option<GeoSetup>,
    exploit: Option<(ExploitCore, usize)>,
    committed: Option<Hypothesis>,
    trap_entered_at: Option<usize>,
}

struct GeoSetup {
    mask: PointSet,
    dist: DistributionSpec,
}

impl GeometricStochasticAdversary {
    pub fn new(seed: u64) -> Self {
        GeometricStochasticAdversary {
            rng: ChaCha8Rng::seed_from_u64(seed),
            setup: None,
            exploit: None,
            committed: None,
            trap_entered_at: None,
        }
    }

    pub fn trap_entered_at(&self) -> Option<usize> {
        self.trap_entered_at
    }

    /// The point being exploited, once the trap phase has started.
    pub fn trap_point(&self) -> Option<usize> {
        self.exploit.as_ref().map(|(core, _)| core.x)
    }

    /// Witness points of `closure(H^f)` in witness order.
    pub fn witness_points(class: &HypothesisClass, f: &Hypothesis) -> Vec<usize> {
        let flipped: Vec<Hypothesis> = class
            .hypotheses()
            .iter()
            .map(|h| h.symmetric_difference(f))
            .collect();
        let elements = closure_elements(&flipped);
        witness_from_chain(&elements).1.points
    }
}

impl Adversary for GeometricStochasticAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        if self.setup.is_none() {
            let f = view.hypotheses[0].clone();
            let points = Self::witness_points(view.class, &f);
            let dist = if points.is_empty() {
                DistributionSpec::UniformPoints(view.class.domain().points().collect())
            } else {
                DistributionSpec::GeometricWitness { points }
            };
            self.setup = Some(GeoSetup { mask: f, dist });
        }
        let half = view.total_rounds / 2;

        if let Some((core, switch_round)) = &self.exploit {
            let setup = self.setup.as_ref().expect("setup built");
            let x = setup.dist.sample(&mut self.rng);
            if x == core.x {
                return Ok(core.emit_at(view));
            }
            let anchor = *switch_round;
            return Ok(Emission {
                x,
                y: view.rounds[anchor - 1].hypothesis.value(x),
                source: LabelSource::Replay(anchor),
            });
        }

        if view.t <= half {
            let setup = self.setup.as_ref().expect("setup built");
            if let Some(w) = find_trap(view, |x| setup.dist.probability_of(x)) {
                self.trap_entered_at = Some(view.t);
                let core = ExploitCore::from_witness(&w);
                // replay anchor: the last completed round
                let anchor = view.t - 1;
                let x = setup.dist.sample(&mut self.rng);
                let emission = if x == core.x {
                    core.emit_at(view)
                } else {
                    Emission {
                        x,
                        y: view.rounds[anchor - 1].hypothesis.value(x),
                        source: LabelSource::Replay(anchor),
                    }
                };
                self.exploit = Some((core, anchor));
                return Ok(emission);
            }
            let x = setup.dist.sample(&mut self.rng);
            let y = !setup.mask.value(x);
            if would_strand_target(view, x, y) {
                return Ok(echo(view, x));
            }
            return Ok(Emission {
                x,
                y,
                source: LabelSource::Truth,
            });
        }

        // Second half: label consistently with a worst-case-so-far target.
        if self.committed.is_none() {
            let best = crate::engine::worst_case_score(view.rounds, &view.reliable.version_space)
                .map(|(_, h)| h)
                .unwrap_or_else(|| view.class.hypotheses()[0].clone());
            self.committed = Some(best);
        }
        let setup = self.setup.as_ref().expect("setup built");
        let x = setup.dist.sample(&mut self.rng);
        let target = self.committed.as_ref().expect("committed");
        Ok(Emission {
            x,
            y: target.value(x),
            source: LabelSource::Truth,
        })
    }
}

// ---------------------------------------------------------------------------
// Random legal adversary (fuzzing)
// ---------------------------------------------------------------------------

/// Randomized legal adversary for fuzz suites: each round either replays a
/// random earlier hypothesis at a random point or reveals the truth of a
/// fixed target. Every emission is legal by construction and the target
/// always stays consistent.
pub struct RandomReplayAdversary {
    rng: ChaCha8Rng,
    target: Hypothesis,
    replay_prob: f64,
}

impl RandomReplayAdversary {
    pub fn new(seed: u64, target: Hypothesis, replay_prob: f64) -> Self {
        RandomReplayAdversary {
            rng: ChaCha8Rng::seed_from_u64(seed),
            target,
            replay_prob,
        }
    }
}

impl Adversary for RandomReplayAdversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission> {
        let n = view.class.domain().size();
        let x = self.rng.gen_range(0..n);
        if view.t >= 2 && self.rng.gen_bool(self.replay_prob) {
            let i = self.rng.gen_range(1..view.t);
            return Ok(Emission {
                x,
                y: view.rounds[i - 1].hypothesis.value(x),
                source: LabelSource::Replay(i),
            });
        }
        Ok(Emission {
            x,
            y: self.target.value(x),
            source: LabelSource::Truth,
        })
    }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct AdversaryConfig {
    pub seed: u64,
    /// Target index into the class for the truthful adversaries.
    pub target_index: Option<usize>,
}

pub fn by_name(
    name: &str,
    class: &HypothesisClass,
    cfg: AdversaryConfig,
) -> Result<Box<dyn Adversary>> {
    let n = class.domain().size();
    let target_at = |idx: usize| -> Result<Hypothesis> {
        class
            .hypotheses()
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::InvalidParameter(format!("target index {idx} out of range")))
    };
    match name {
        "truth" | "uniform_stochastic" => {
            let target = target_at(cfg.target_index.unwrap_or(0))?;
            Ok(Box::new(TruthAdversary::uniform(target, n, cfg.seed)))
        }
        "descending" => Ok(Box::new(DescendingAdversary::new())),
        "witness_chain" => Ok(Box::new(WitnessChainAdversary::new())),
        "trap_exploit" => Ok(Box::new(TrapExploitAdversary::new(Vec::new()))),
        "geometric_stochastic" => Ok(Box::new(GeometricStochasticAdversary::new(cfg.seed))),
        "convex_uniform" => Err(Error::InvalidParameter(
            "convex_uniform samples real-valued bodies; run it via `experiment convex`".into(),
        )),
        _ => Err(Error::UnknownName {
            kind: "adversary",
            name: name.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgen;
    use crate::engine::{run_game, Commitment};
    use crate::learners::{ClosureLearner, ConservativeThresholdLearner, GreedyProperLearner};

    #[test]
    fn geometric_threshold_weights_match_closed_form() {
        let d = DistributionSpec::GeometricThreshold { n: 5 };
        let w = d.weights();
        assert_eq!(w.len(), 5);
        for k in 1..5usize {
            let expect = 0.5 * 3f64.powi(k as i32 - 5);
            assert!((w[k - 1].1 - expect).abs() < 1e-15);
            assert_eq!(w[k - 1].0, k - 1);
        }
        let total: f64 = w.iter().map(|&(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(w[4].1 >= 0.75);
    }

    /// The ratio bound behind the first-arrival events: P(X=k)/P(X<=k) >= 2/3.
    #[test]
    fn geometric_ratio_bound() {
        for n in 2..=10usize {
            let w = DistributionSpec::GeometricThreshold { n }.weights();
            let mut below = 0.0;
            for k in 1..n {
                below += w[k - 1].1;
                assert!(
                    w[k - 1].1 / below >= 2.0 / 3.0 - 1e-12,
                    "ratio fails at n={n} k={k}"
                );
            }
        }
    }

    /// On thresholds the positional witness weights coincide with the
    /// geometric distribution over the domain.
    #[test]
    fn witness_weights_reduce_to_threshold_form() {
        let n = 6;
        let class = classgen::thresholds(n).unwrap();
        let points = GeometricStochasticAdversary::witness_points(&class, &PointSet::empty(n));
        assert_eq!(points, vec![5, 4, 3, 2, 1, 0]);
        let by_witness = DistributionSpec::GeometricWitness { points }.weights();
        let by_domain = DistributionSpec::GeometricThreshold { n }.weights();
        for (x, p) in by_domain {
            let q = by_witness
                .iter()
                .find(|&&(y, _)| y == x)
                .map(|&(_, q)| q)
                .unwrap();
            assert!((p - q).abs() < 1e-12, "point {x}: {p} vs {q}");
        }
    }

    #[test]
    fn descending_forces_min_n_t_on_conservative() {
        for (n, t) in [(4usize, 16usize), (8, 32), (6, 3)] {
            let class = classgen::thresholds(n).unwrap();
            let mut learner = ConservativeThresholdLearner::new(n);
            let mut adv = DescendingAdversary::new();
            let out = run_game(&mut learner, &mut adv, &class, t, Commitment::WorstCase).unwrap();
            assert!(out.valid, "n={n} t={t}");
            assert_eq!(out.mistakes, n.min(t), "n={n} t={t}");
        }
    }

    #[test]
    fn descending_matches_closure_learner_on_thresholds() {
        let n = 7;
        let class = classgen::thresholds(n).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(n));
        let mut adv = DescendingAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, 4 * n, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        assert_eq!(out.mistakes, n);
    }

    #[test]
    fn witness_chain_meets_threshold_dimension_exactly() {
        let n = 8;
        let class = classgen::thresholds(n).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(n));
        let mut adv = WitnessChainAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, 3 * n, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        assert_eq!(out.mistakes, n);
        assert!(adv.trap_entered_at().is_none());
        assert!(out.trap_empty.iter().all(|&e| e));
    }

    #[test]
    fn witness_chain_traps_greedy_proper_on_two_intervals() {
        let class = classgen::two_intervals(9).unwrap();
        let t = 80;
        let mut learner = GreedyProperLearner::new(&class);
        let mut adv = WitnessChainAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, t, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        let entered = adv.trap_entered_at().expect("trap phase should trigger");
        assert!(
            out.mistakes >= (t - entered) / 2,
            "mistakes {}",
            out.mistakes
        );
        assert!(out.mistakes >= t / 4 - 3);
    }

    /// The VC-dimension-1 representation keeps the closure learner proper on
    /// the flipped class and within its small threshold bound.
    #[test]
    fn witness_chain_vs_vcd1_closure_on_reverse_singletons() {
        let class = classgen::reverse_singletons(5).unwrap();
        let mut learner = ClosureLearner::with_vcd1_mask(&class).unwrap();
        let mut adv = WitnessChainAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, 30, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        assert!(out.mistakes <= 2, "got {} mistakes", out.mistakes);
        assert!(out.trap_empty.iter().all(|&e| e));
    }

    #[test]
    fn witness_chain_vs_halving_on_thresholds() {
        let n = 8;
        let class = classgen::thresholds(n).unwrap();
        let mut learner = crate::learners::HalvingLearner::new(&class);
        let mut adv = WitnessChainAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, 6 * n, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        assert!(
            out.mistakes >= n || adv.trap_entered_at().is_some(),
            "mistakes {} trap {:?}",
            out.mistakes,
            adv.trap_entered_at()
        );
    }

    /// First-arrival events of the geometric distribution: over a half-game
    /// of draws, the first draw at or below level k equals k with
    /// probability at least 1/3, for every level.
    #[test]
    fn first_arrival_events_have_probability_a_third() {
        let n = 3usize;
        let draws = 64; // T/2 for T = 128
        let reps = 2000;
        let dist = DistributionSpec::GeometricThreshold { n };
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut hits = vec![0u32; n];
        for _ in 0..reps {
            let xs: Vec<usize> = (0..draws).map(|_| dist.sample(&mut rng)).collect();
            for (k, hit) in hits.iter_mut().enumerate() {
                // first draw at or below level k (0-based point index)
                if let Some(&first) = xs.iter().find(|&&x| x <= k) {
                    if first == k {
                        *hit += 1;
                    }
                }
            }
        }
        for (k, &h) in hits.iter().enumerate() {
            let freq = h as f64 / reps as f64;
            assert!(freq >= 1.0 / 3.0, "level {k}: frequency {freq}");
        }
    }

    /// The stochastic adversary's exploitation branch: against halving the
    /// trap fires in some runs, the transcript stays legal and the reliable
    /// set freezes from the switch round on.
    #[test]
    fn geometric_adversary_exploits_halving_traps() {
        let class = classgen::thresholds(8).unwrap();
        let mut trapped_runs = 0;
        for seed in 0..30u64 {
            let mut learner = crate::learners::HalvingLearner::new(&class);
            let mut adv = GeometricStochasticAdversary::new(seed);
            let out = run_game(&mut learner, &mut adv, &class, 128, Commitment::WorstCase).unwrap();
            assert!(out.valid, "seed {seed}: {:?}", out.violation);
            if let Some(t_star) = adv.trap_entered_at() {
                trapped_runs += 1;
                assert!(out.reliable.reliable_indices.iter().all(|&i| i < t_star));
                // pigeonhole over the draws that actually hit the trapped
                // point: the committed target collects at least half of them
                let x_star = adv.trap_point().unwrap();
                let draws = out.rounds[t_star - 1..]
                    .iter()
                    .filter(|r| r.x == x_star)
                    .count();
                assert!(
                    out.mistakes >= draws / 2,
                    "seed {seed}: {} mistakes for {draws} trapped draws",
                    out.mistakes
                );
            }
        }
        assert!(trapped_runs >= 1, "no run entered the trap phase");
    }

    /// Before the trap phase every emission comes from the precomputed plan
    /// (or the replay filler at its anchor point).
    #[test]
    fn witness_chain_stays_on_its_plan_before_the_trap() {
        let class = classgen::two_intervals(8).unwrap();
        let mut learner = GreedyProperLearner::new(&class);
        let mut adv = WitnessChainAdversary::new();
        let out = run_game(&mut learner, &mut adv, &class, 60, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        let plan = adv.planned_queries().unwrap().to_vec();
        let trap_at = adv.trap_entered_at().unwrap_or(usize::MAX);
        for r in &out.rounds {
            if r.t < trap_at {
                assert!(plan.contains(&r.x), "round {} left the plan", r.t);
            }
        }
    }

    /// Standalone trap_exploit with nothing to exploit degenerates to echo
    /// replays and stays legal.
    #[test]
    fn trap_exploit_without_a_trap_echoes_harmlessly() {
        let class = classgen::thresholds(5).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(5));
        let mut adv = TrapExploitAdversary::new(Vec::new());
        let out = run_game(&mut learner, &mut adv, &class, 10, Commitment::WorstCase).unwrap();
        assert!(out.valid);
        assert!(adv.witness().is_none());
        assert_eq!(out.mistakes, 0);
        assert!(out.reliable.reliable_indices.is_empty());
    }

    #[test]
    fn random_replay_adversary_always_legal() {
        let class = classgen::blowup(3).unwrap();
        for seed in 0..20 {
            let target = class.hypotheses()[seed % class.len()].clone();
            let mut learner = ClosureLearner::new(&class, PointSet::empty(6));
            let mut adv = RandomReplayAdversary::new(seed as u64, target, 0.5);
            let out = run_game(&mut learner, &mut adv, &class, 40, Commitment::WorstCase).unwrap();
            assert!(out.valid, "seed {seed}: {:?}", out.violation);
        }
    }

    #[test]
    fn registry_names_resolve() {
        let class = classgen::thresholds(4).unwrap();
        let cfg = AdversaryConfig {
            seed: 1,
            target_index: Some(1),
        };
        for name in [
            "truth",
            "descending",
            "witness_chain",
            "trap_exploit",
            "geometric_stochastic",
            "uniform_stochastic",
        ] {
            assert!(by_name(name, &class, cfg).is_ok(), "{name}");
        }
        assert!(by_name("convex_uniform", &class, cfg).is_err());
        assert!(by_name("unknown", &class, cfg).is_err());
    }
}
