//! The replay game engine.
//!
//! One game runs strictly sequentially: each round the learner emits a
//! hypothesis first, Nature then reveals a labelled sample which may carry
//! the true label of the eventual target or replay the prediction of an
//! earlier hypothesis. Mistakes are scored at the end of the game, only on
//! rounds whose label matches the committed target.
//!
//! Reliability indexing: a round enters the reliable set exactly when its
//! label disagrees with every hypothesis emitted before the sample arrived,
//! which includes the current round's hypothesis (it is output before Nature
//! moves). Replay sources, by contrast, must point at strictly earlier
//! rounds. A label that merely echoes the current hypothesis is therefore
//! unreliable but can only be tagged as a truth claim.

use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass};
use crate::pointset::PointSet;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Who produced a label, recorded for audit only; never exposed to learners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelSource {
    Truth,
    /// Replay of the hypothesis emitted at the given (1-based) round.
    Replay(usize),
}

/// One adversary move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Emission {
    pub x: usize,
    pub y: bool,
    pub source: LabelSource,
}

/// Full record of one round.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundRecord {
    pub t: usize,
    pub hypothesis: Hypothesis,
    pub x: usize,
    pub y: bool,
    pub source: LabelSource,
}

impl RoundRecord {
    /// The learner's prediction at the queried point.
    pub fn prediction(&self) -> bool {
        self.hypothesis.value(self.x)
    }
}

/// The learner interface is a pure step function: emit a hypothesis, then
/// observe the labelled sample. No other channel exists.
pub trait Learner {
    fn emit(&mut self) -> Hypothesis;
    fn observe(&mut self, x: usize, y: bool);
}

/// What an adversary may see when choosing its move at round `t`: the full
/// history plus the current hypothesis (emitted before the sample).
pub struct GameView<'a> {
    pub t: usize,
    pub total_rounds: usize,
    pub class: &'a HypothesisClass,
    /// Hypotheses `ĥ_1..ĥ_t`; the last entry is the current round's and is
    /// not yet available as a replay source.
    pub hypotheses: &'a [Hypothesis],
    /// Completed rounds `1..t-1`.
    pub rounds: &'a [RoundRecord],
    /// Reliable state after round `t-1`.
    pub reliable: &'a ReliableState,
}

impl<'a> GameView<'a> {
    /// Trap region available to the adversary at this round: points where the
    /// current version space and the replayable hypotheses `ĥ_1..ĥ_{t-1}`
    /// each realise both labels.
    pub fn trap_now(&self) -> PointSet {
        self.reliable.trap_region()
    }
}

pub trait Adversary {
    fn respond(&mut self, view: &GameView) -> Result<Emission>;
}

/// Reliable indices, version space and the distinct hypotheses output so far.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReliableState {
    /// `I_t`, 1-based round indices.
    pub reliable_indices: Vec<usize>,
    /// `VS*_t`: hypotheses of the class consistent with all reliable rounds.
    pub version_space: Vec<Hypothesis>,
    /// Distinct hypotheses output so far, in first-emission order.
    pub past_hypotheses: Vec<Hypothesis>,
    #[serde(skip)]
    caches: Option<StateCaches>,
}

#[derive(Debug, Clone)]
struct StateCaches {
    vs_or: PointSet,
    vs_and: PointSet,
    past_or: PointSet,
    past_and: PointSet,
    seen: HashSet<Hypothesis>,
}

/// Outcome of absorbing one round into the reliable state.
pub struct RoundOutcome {
    pub reliable: bool,
    /// Trap region paired as the definition requires: the version space after
    /// this round against the hypotheses emitted before this round.
    pub trap: PointSet,
}

impl ReliableState {
    pub fn new(class: &HypothesisClass) -> Self {
        let n = class.domain().size();
        let mut vs_or = PointSet::empty(n);
        let mut vs_and = PointSet::full(n);
        for h in class.hypotheses() {
            vs_or.union_with(h);
            vs_and.intersect_with(h);
        }
        ReliableState {
            reliable_indices: Vec::new(),
            version_space: class.hypotheses().to_vec(),
            past_hypotheses: Vec::new(),
            caches: Some(StateCaches {
                vs_or,
                vs_and,
                past_or: PointSet::empty(n),
                past_and: PointSet::full(n),
                seen: HashSet::new(),
            }),
        }
    }

    /// Rebuilds caches after deserialization.
    pub fn rebuild_caches(&mut self, domain_size: usize) {
        let mut vs_or = PointSet::empty(domain_size);
        let mut vs_and = PointSet::full(domain_size);
        for h in &self.version_space {
            vs_or.union_with(h);
            vs_and.intersect_with(h);
        }
        let mut past_or = PointSet::empty(domain_size);
        let mut past_and = PointSet::full(domain_size);
        let mut seen = HashSet::new();
        for h in &self.past_hypotheses {
            past_or.union_with(h);
            past_and.intersect_with(h);
            seen.insert(h.clone());
        }
        self.caches = Some(StateCaches {
            vs_or,
            vs_and,
            past_or,
            past_and,
            seen,
        });
    }

    fn caches(&self) -> &StateCaches {
        self.caches
            .as_ref()
            .expect("reliable state caches not built; call rebuild_caches")
    }

    /// Points where the version space and the past hypotheses each realise
    /// both labels; the two existential pairs of the trap definition
    /// decompose independently per label.
    pub fn trap_region(&self) -> PointSet {
        let c = self.caches();
        let vs_split = c.vs_or.difference(&c.vs_and);
        let past_split = c.past_or.difference(&c.past_and);
        vs_split.intersection(&past_split)
    }

    /// Trap witnesses at `x`: a version-space pair realising both labels and
    /// the (1-based) rounds of a past-hypothesis pair doing the same.
    pub fn trap_witness_at(&self, x: usize, rounds: &[RoundRecord]) -> Option<TrapWitness> {
        let pos = self.version_space.iter().find(|h| h.value(x))?.clone();
        let neg = self.version_space.iter().find(|h| !h.value(x))?.clone();
        let round_pos = rounds.iter().find(|r| r.hypothesis.value(x))?.t;
        let round_neg = rounds.iter().find(|r| !r.hypothesis.value(x))?.t;
        Some(TrapWitness {
            x,
            target_pair: (pos, neg),
            replay_rounds: (round_pos, round_neg),
        })
    }

    /// Would this round be reliable? The label must disagree with every
    /// hypothesis emitted before the sample, including the current one.
    pub fn is_reliable(&self, current: &Hypothesis, x: usize, y: bool) -> bool {
        let c = self.caches();
        let past_agrees = if y {
            c.past_or.contains(x)
        } else {
            !self.past_hypotheses.is_empty() && !c.past_and.contains(x)
        };
        !past_agrees && current.value(x) != y
    }

    /// Absorbs a round: updates `I` and the version space, reports the trap
    /// region paired as `(VS*_t, H_{t-1})`, then registers the round's
    /// hypothesis among the past ones.
    pub fn update(&mut self, record: &RoundRecord) -> RoundOutcome {
        let reliable = self.is_reliable(&record.hypothesis, record.x, record.y);
        if reliable {
            self.reliable_indices.push(record.t);
            self.version_space.retain(|h| h.value(record.x) == record.y);
            let n = record.hypothesis.len();
            let c = self.caches.as_mut().expect("caches");
            c.vs_or = PointSet::empty(n);
            c.vs_and = PointSet::full(n);
            for h in &self.version_space {
                c.vs_or.union_with(h);
                c.vs_and.intersect_with(h);
            }
        }
        let trap = self.trap_region();
        let c = self.caches.as_mut().expect("caches");
        if c.seen.insert(record.hypothesis.clone()) {
            self.past_hypotheses.push(record.hypothesis.clone());
            c.past_or.union_with(&record.hypothesis);
            c.past_and.intersect_with(&record.hypothesis);
        }
        RoundOutcome { reliable, trap }
    }
}

/// Standalone form of the reliable-state update, mirroring the definition.
pub fn update_reliable_state(state: &mut ReliableState, record: &RoundRecord) -> RoundOutcome {
    state.update(record)
}

/// Trap region of a state snapshot.
pub fn trap_region(state: &ReliableState) -> PointSet {
    state.trap_region()
}

/// Certified trap: the point, a version-space pair and two replayable rounds.
#[derive(Debug, Clone)]
pub struct TrapWitness {
    pub x: usize,
    pub target_pair: (Hypothesis, Hypothesis),
    pub replay_rounds: (usize, usize),
}

/// How the target is fixed at the end of the game.
#[derive(Debug, Clone)]
pub enum Commitment {
    /// Nature picks the consistent target maximizing the mistake count
    /// (ties toward class order), as in the lower-bound constructions.
    WorstCase,
    /// A target fixed up front; its truth claims are verified.
    Fixed(Hypothesis),
}

/// Why a transcript is invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    IllegalReplay { round: usize, reason: String },
    SampleOutOfRange { round: usize },
    NoConsistentTarget,
    TruthClaimViolated { round: usize },
    FixedTargetInconsistent,
}

/// Full record of a replay game.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameTranscript {
    pub domain_size: usize,
    pub rounds: Vec<RoundRecord>,
    pub reliable: ReliableState,
    /// Per-round emptiness of the trap region `(VS*_t, H_{t-1})`.
    pub trap_empty: Vec<bool>,
    pub committed_target: Option<Hypothesis>,
    pub mistakes: usize,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

impl GameTranscript {
    /// First round `t` (1-based) with a nonempty trap region, if any.
    pub fn first_trap_round(&self) -> Option<usize> {
        self.trap_empty.iter().position(|&e| !e).map(|i| i + 1)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut t: GameTranscript = serde_json::from_str(text)?;
        t.reliable.rebuild_caches(t.domain_size);
        Ok(t)
    }

    /// Re-derives everything checkable from the raw rounds of a valid
    /// transcript and compares: replay tags against the cited hypotheses, the
    /// reliable state and trap flags against a fresh replay of the updates,
    /// target consistency, and the mistake count. Returns the first
    /// discrepancy found.
    pub fn audit(&self, class: &HypothesisClass) -> std::result::Result<(), String> {
        if !self.valid {
            return Err(format!("transcript marked invalid: {:?}", self.violation));
        }
        let mut state = ReliableState::new(class);
        for (i, r) in self.rounds.iter().enumerate() {
            if r.t != i + 1 {
                return Err(format!("round index {} out of sequence", r.t));
            }
            if r.x >= self.domain_size {
                return Err(format!("round {}: sample out of range", r.t));
            }
            if let LabelSource::Replay(src) = r.source {
                if src == 0 || src >= r.t {
                    return Err(format!("round {}: replay source {src} not earlier", r.t));
                }
                if self.rounds[src - 1].hypothesis.value(r.x) != r.y {
                    return Err(format!("round {}: replay source disagrees with label", r.t));
                }
            }
            let outcome = state.update(r);
            if outcome.trap.is_empty() != self.trap_empty[i] {
                return Err(format!("round {}: trap flag mismatch", r.t));
            }
        }
        if state.reliable_indices != self.reliable.reliable_indices {
            return Err("reliable index set does not reconstruct".into());
        }
        if state.version_space != self.reliable.version_space {
            return Err("version space does not reconstruct".into());
        }
        let Some(target) = &self.committed_target else {
            return Err("valid transcript without a committed target".into());
        };
        if !state.version_space.iter().any(|h| h == target) {
            return Err("committed target is not consistent with the reliable rounds".into());
        }
        if score(&self.rounds, target) != self.mistakes {
            return Err("mistake count does not reconstruct from the rounds".into());
        }
        Ok(())
    }
}

/// A mistake is a round whose label both disagrees with the prediction
/// and matches the target.
pub fn score(rounds: &[RoundRecord], target: &Hypothesis) -> usize {
    rounds
        .iter()
        .filter(|r| r.y != r.prediction() && r.y == target.value(r.x))
        .count()
}

/// Adversary-optimal commitment: maximizes the score over all candidates,
/// ties toward the earliest candidate.
pub fn worst_case_score<'a>(
    rounds: &[RoundRecord],
    candidates: impl IntoIterator<Item = &'a Hypothesis>,
) -> Option<(usize, Hypothesis)> {
    let mut best: Option<(usize, Hypothesis)> = None;
    for h in candidates {
        let s = score(rounds, h);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, h.clone()));
        }
    }
    best
}

/// Runs one replay game for `total_rounds` rounds and scores it.
///
/// Adversary moves are validated as they arrive: replay tags must cite a
/// strictly earlier round whose hypothesis agrees with the label. At the end
/// the target is committed per `commitment` and must be consistent with all
/// reliable rounds; games failing either check come back with `valid: false`
/// and the violation recorded.
pub fn run_game(
    learner: &mut dyn Learner,
    adversary: &mut dyn Adversary,
    class: &HypothesisClass,
    total_rounds: usize,
    commitment: Commitment,
) -> Result<GameTranscript> {
    if total_rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be >= 1".into()));
    }
    let n = class.domain().size();
    let mut rounds: Vec<RoundRecord> = Vec::with_capacity(total_rounds);
    let mut hypotheses: Vec<Hypothesis> = Vec::with_capacity(total_rounds);
    let mut state = ReliableState::new(class);
    let mut trap_empty = Vec::with_capacity(total_rounds);
    let mut violation: Option<Violation> = None;

    for t in 1..=total_rounds {
        let hypothesis = learner.emit();
        if hypothesis.len() != n {
            return Err(Error::DomainMismatch {
                expected: n,
                found: hypothesis.len(),
            });
        }
        hypotheses.push(hypothesis.clone());
        let emission = {
            let view = GameView {
                t,
                total_rounds,
                class,
                hypotheses: &hypotheses,
                rounds: &rounds,
                reliable: &state,
            };
            adversary.respond(&view)?
        };
        if emission.x >= n {
            violation = Some(Violation::SampleOutOfRange { round: t });
            break;
        }
        if let LabelSource::Replay(i) = emission.source {
            if i == 0 || i >= t {
                violation = Some(Violation::IllegalReplay {
                    round: t,
                    reason: format!("replay source {i} is not an earlier round"),
                });
                break;
            }
            if hypotheses[i - 1].value(emission.x) != emission.y {
                violation = Some(Violation::IllegalReplay {
                    round: t,
                    reason: format!("hypothesis of round {i} disagrees with the label"),
                });
                break;
            }
        }
        learner.observe(emission.x, emission.y);
        let record = RoundRecord {
            t,
            hypothesis,
            x: emission.x,
            y: emission.y,
            source: emission.source,
        };
        let outcome = state.update(&record);
        trap_empty.push(outcome.trap.is_empty());
        rounds.push(record);
    }

    let (committed, mistakes) = if violation.is_some() {
        (None, 0)
    } else {
        match commitment {
            Commitment::WorstCase => match worst_case_score(&rounds, &state.version_space) {
                Some((m, h)) => (Some(h), m),
                None => {
                    violation = Some(Violation::NoConsistentTarget);
                    (None, 0)
                }
            },
            Commitment::Fixed(target) => {
                if !state.version_space.iter().any(|h| h == &target) {
                    violation = Some(Violation::FixedTargetInconsistent);
                    (None, 0)
                } else {
                    let truth_broken = rounds.iter().find(|r| {
                        matches!(r.source, LabelSource::Truth) && target.value(r.x) != r.y
                    });
                    if let Some(r) = truth_broken {
                        violation = Some(Violation::TruthClaimViolated { round: r.t });
                        (None, 0)
                    } else {
                        let m = score(&rounds, &target);
                        (Some(target), m)
                    }
                }
            }
        }
    };

    Ok(GameTranscript {
        domain_size: n,
        rounds,
        reliable: state,
        trap_empty,
        committed_target: committed,
        mistakes,
        valid: violation.is_none(),
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgen;
    use crate::learners::ClosureLearner;

    /// Plays back a fixed emission list.
    struct Script(Vec<Emission>);

    impl Adversary for Script {
        fn respond(&mut self, view: &GameView) -> Result<Emission> {
            self.0
                .get(view.t - 1)
                .cloned()
                .ok_or(Error::SampleSourceExhausted { round: view.t })
        }
    }

    fn truth(x: usize, y: bool) -> Emission {
        Emission {
            x,
            y,
            source: LabelSource::Truth,
        }
    }

    // Hand-simulated closure run on thresholds [4]: queries (4,1),(3,1)
    // in 1-based prose, both reliable, both mistakes.
    #[test]
    fn closure_vs_truth_on_thresholds() {
        let class = classgen::thresholds(4).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        let mut adv = Script(vec![truth(3, true), truth(2, true)]);
        let t = run_game(&mut learner, &mut adv, &class, 2, Commitment::WorstCase).unwrap();
        assert!(t.valid);
        assert_eq!(t.mistakes, 2);
        assert_eq!(t.reliable.reliable_indices, vec![1, 2]);
        assert!(t.trap_empty.iter().all(|&e| e));
        // score reconstruction matches for the committed target
        let f = t.committed_target.as_ref().unwrap();
        assert_eq!(score(&t.rounds, f), 2);
    }

    // An adversary that echoes the first hypothesis every round leaves the
    // reliable set empty and the version space untouched.
    #[test]
    fn echo_adversary_freezes_reliable_state() {
        let class = classgen::thresholds(4).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        // ĥ_1 ≡ 0, so the echoed label at point 2 is 0. Round 1 cannot cite a
        // replay source; later rounds replay round 1.
        let mut emissions = vec![truth(2, false)];
        for _ in 1..6 {
            emissions.push(Emission {
                x: 2,
                y: false,
                source: LabelSource::Replay(1),
            });
        }
        let mut adv = Script(emissions);
        let t = run_game(&mut learner, &mut adv, &class, 6, Commitment::WorstCase).unwrap();
        assert!(t.valid);
        assert!(t.reliable.reliable_indices.is_empty());
        assert_eq!(t.reliable.version_space.len(), class.len());
    }

    #[test]
    fn single_round_truth_scores_indicator() {
        let class = classgen::thresholds(3).unwrap();
        let target = class.hypotheses()[1].clone(); // f_1 ≡ 1
        let mut learner = ClosureLearner::new(&class, PointSet::empty(3));
        let mut adv = Script(vec![truth(0, true)]);
        let t = run_game(
            &mut learner,
            &mut adv,
            &class,
            1,
            Commitment::Fixed(target.clone()),
        )
        .unwrap();
        assert!(t.valid);
        // ĥ_1 ≡ 0 predicts 0, truth is 1
        assert_eq!(t.mistakes, 1);
        assert_eq!(t.committed_target, Some(target));
    }

    // All labels truthful and the learner always right: zero mistakes.
    #[test]
    fn correct_predictions_score_zero() {
        let class = classgen::thresholds(4).unwrap();
        let target = class.hypotheses()[0].clone(); // all-zeros
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        let mut adv = Script(vec![truth(1, false), truth(3, false), truth(0, false)]);
        let t = run_game(&mut learner, &mut adv, &class, 3, Commitment::Fixed(target)).unwrap();
        assert!(t.valid);
        assert_eq!(t.mistakes, 0);
    }

    // 1-based prose example: thresholds [4], ĥ_1 ≡ 0, sample (3,1) enters I_1
    // and the version space becomes {f_1, f_2, f_3}.
    #[test]
    fn reliable_update_filters_version_space() {
        let class = classgen::thresholds(4).unwrap();
        let mut state = ReliableState::new(&class);
        let record = RoundRecord {
            t: 1,
            hypothesis: PointSet::empty(4),
            x: 2,
            y: true,
            source: LabelSource::Truth,
        };
        let out = state.update(&record);
        assert!(out.reliable);
        assert_eq!(state.reliable_indices, vec![1]);
        assert_eq!(state.version_space.len(), 3);
        for h in &state.version_space {
            assert!(h.value(2));
        }
    }

    // Round 1 is reliable exactly when the label disagrees with ĥ_1.
    #[test]
    fn round_one_reliability_depends_on_current_hypothesis() {
        let class = classgen::thresholds(4).unwrap();
        let state = ReliableState::new(&class);
        let h1 = PointSet::from_points(4, [3]);
        assert!(state.is_reliable(&h1, 3, false));
        assert!(!state.is_reliable(&h1, 3, true));
    }

    #[test]
    fn matching_label_leaves_state_unchanged() {
        let class = classgen::thresholds(4).unwrap();
        let mut state = ReliableState::new(&class);
        let r1 = RoundRecord {
            t: 1,
            hypothesis: PointSet::empty(4),
            x: 1,
            y: true,
            source: LabelSource::Truth,
        };
        state.update(&r1);
        let vs_before = state.version_space.clone();
        // label 0 at point 3 agrees with ĥ_1 ≡ 0
        let r2 = RoundRecord {
            t: 2,
            hypothesis: PointSet::from_points(4, [1, 2, 3]),
            x: 3,
            y: false,
            source: LabelSource::Replay(1),
        };
        let out = state.update(&r2);
        assert!(!out.reliable);
        assert_eq!(state.version_space, vs_before);
    }

    // Trap example on thresholds [4] (1-based prose): VS* = {f_1, f_3},
    // past hypotheses {∅, {2,3,4}} → trap exactly {2}.
    #[test]
    fn trap_region_by_hand() {
        let class = classgen::thresholds(4).unwrap();
        let mut state = ReliableState::new(&class);
        state.version_space = vec![
            class.hypotheses()[1].clone(), // f_1 = {1,2,3,4}
            class.hypotheses()[3].clone(), // f_3 = {3,4}
        ];
        state.past_hypotheses = vec![PointSet::empty(4), PointSet::from_points(4, [1, 2, 3])];
        state.rebuild_caches(4);
        let trap = trap_region(&state);
        assert_eq!(trap, PointSet::from_points(4, [1])); // 1-based point 2
    }

    #[test]
    fn single_past_hypothesis_cannot_trap() {
        let class = classgen::thresholds(4).unwrap();
        let mut state = ReliableState::new(&class);
        state.past_hypotheses = vec![PointSet::from_points(4, [1, 2, 3])];
        state.rebuild_caches(4);
        assert!(trap_region(&state).is_empty());
    }

    #[test]
    fn illegal_replay_invalidates_transcript() {
        let class = classgen::thresholds(4).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        // ĥ_1 ≡ 0 but the replay claims it labelled point 2 with 1
        let mut adv = Script(vec![
            truth(3, true),
            Emission {
                x: 2,
                y: true,
                source: LabelSource::Replay(1),
            },
        ]);
        let t = run_game(&mut learner, &mut adv, &class, 2, Commitment::WorstCase).unwrap();
        assert!(!t.valid);
        assert!(matches!(
            t.violation,
            Some(Violation::IllegalReplay { round: 2, .. })
        ));
    }

    #[test]
    fn contradictory_reliable_labels_leave_no_target() {
        let class = classgen::singletons(3).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(3));
        // Two reliable positives at distinct points: no singleton matches.
        let mut adv = Script(vec![truth(0, true), truth(2, true)]);
        let t = run_game(&mut learner, &mut adv, &class, 2, Commitment::WorstCase).unwrap();
        assert!(!t.valid);
        assert_eq!(t.violation, Some(Violation::NoConsistentTarget));
    }

    #[test]
    fn audit_accepts_honest_transcripts_and_catches_doctored_ones() {
        let class = classgen::thresholds(4).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        let mut adv = Script(vec![truth(3, true), truth(2, true), truth(0, false)]);
        let t = run_game(&mut learner, &mut adv, &class, 3, Commitment::WorstCase).unwrap();
        assert!(t.audit(&class).is_ok());

        let mut tampered = t.clone();
        tampered.mistakes += 1;
        assert!(tampered.audit(&class).is_err());

        let mut tampered = t.clone();
        tampered.rounds[1].y = !tampered.rounds[1].y;
        assert!(tampered.audit(&class).is_err());

        let mut tampered = t;
        tampered.rounds[1].source = LabelSource::Replay(1);
        assert!(tampered.audit(&class).is_err());
    }

    #[test]
    fn transcript_serialization_round_trips() {
        let class = classgen::thresholds(4).unwrap();
        let mut learner = ClosureLearner::new(&class, PointSet::empty(4));
        let mut adv = Script(vec![truth(3, true), truth(1, false)]);
        let t = run_game(&mut learner, &mut adv, &class, 2, Commitment::WorstCase).unwrap();
        let json = t.to_json().unwrap();
        let back = GameTranscript::from_json(&json).unwrap();
        assert_eq!(back.mistakes, t.mistakes);
        assert_eq!(back.rounds.len(), t.rounds.len());
        assert_eq!(back.reliable.version_space, t.reliable.version_space);
        assert_eq!(back.trap_region_is_empty(), t.trap_region_is_empty());
    }

    impl GameTranscript {
        fn trap_region_is_empty(&self) -> bool {
            self.reliable.trap_region().is_empty()
        }
    }
}
