//! Learner strategies for the finite-domain replay game.

use crate::dimensions::{extended_threshold_dimension, find_vcd1_representation};
use crate::engine::Learner;
use crate::error::{Error, Result};
use crate::hypothesis::{closure_in, Hypothesis, HypothesisClass, Representation};
use crate::pointset::PointSet;

/// Names accepted by [`by_name`].
pub const LEARNER_NAMES: &[&str] = &[
    "closure",
    "closure_extdim",
    "closure_vcd1",
    "conservative_threshold",
    "halving",
    "greedy_proper",
    "convex_hull",
];

/// The closure algorithm over a fixed representation mask.
///
/// Internally the learner lives in the flipped class: its state starts at the
/// minimal element of `closure(H^f)` and, on an observation whose flipped
/// label is 1 at a point it predicts 0, grows to the closure of the state
/// plus that point. The emitted hypothesis is the flip of the state, so the
/// hypothesis sequence is a weakly increasing chain in flipped space that
/// strictly grows only on false negatives.
pub struct ClosureLearner {
    flipped: Vec<Hypothesis>,
    mask: Representation,
    state: PointSet,
}

impl ClosureLearner {
    pub fn new(class: &HypothesisClass, mask: Representation) -> Self {
        assert_eq!(mask.len(), class.domain().size(), "mask domain mismatch");
        let flipped: Vec<Hypothesis> = class
            .hypotheses()
            .iter()
            .map(|h| h.symmetric_difference(&mask))
            .collect();
        let mut h_min = PointSet::full(mask.len());
        for g in &flipped {
            h_min.intersect_with(g);
        }
        ClosureLearner {
            flipped,
            mask,
            state: h_min,
        }
    }

    /// With the minimizing mask from the extended-threshold search, the chain
    /// bound of this learner is exactly the Extended Threshold dimension.
    pub fn with_extdim_mask(class: &HypothesisClass) -> Result<Self> {
        let ext = extended_threshold_dimension(class)?;
        Ok(Self::new(class, ext.mask))
    }

    pub fn with_vcd1_mask(class: &HypothesisClass) -> Result<Self> {
        let f = find_vcd1_representation(class)?;
        Ok(Self::new(class, f))
    }

    /// Internal chain element, before flipping back.
    pub fn internal_state(&self) -> &PointSet {
        &self.state
    }
}

impl Learner for ClosureLearner {
    fn emit(&mut self) -> Hypothesis {
        self.state.symmetric_difference(&self.mask)
    }

    fn observe(&mut self, x: usize, y: bool) {
        let flipped_label = y ^ self.mask.contains(x);
        if flipped_label && !self.state.contains(x) {
            let mut grown = self.state.clone();
            grown.insert(x);
            self.state = closure_in(&self.flipped, &grown);
        }
    }
}

/// The conservative threshold strategy on `[N]`: start all-zeros, update only
/// on a false negative to the minimal rectifying threshold. Coincides with
/// the closure learner on the threshold class.
pub struct ConservativeThresholdLearner {
    n: usize,
    /// Current hypothesis is `I{· >= cut}`; `cut == n` predicts all zeros.
    cut: usize,
}

impl ConservativeThresholdLearner {
    pub fn new(n: usize) -> Self {
        ConservativeThresholdLearner { n, cut: n }
    }
}

impl Learner for ConservativeThresholdLearner {
    fn emit(&mut self) -> Hypothesis {
        PointSet::from_points(self.n, self.cut..self.n)
    }

    fn observe(&mut self, x: usize, y: bool) {
        if y && x < self.cut {
            self.cut = x;
        }
    }
}

/// Deliberately naive halving: predict the majority vote of the version
/// space over all observed labels and eliminate every disagreeing
/// hypothesis, replayed labels included. Ties predict 1; an emptied version
/// space is recorded and the learner falls back to all-zeros.
pub struct HalvingLearner {
    hypotheses: Vec<Hypothesis>,
    alive: Vec<bool>,
    collapsed: bool,
}

impl HalvingLearner {
    pub fn new(class: &HypothesisClass) -> Self {
        HalvingLearner {
            hypotheses: class.hypotheses().to_vec(),
            alive: vec![true; class.len()],
            collapsed: false,
        }
    }

    pub fn alive_indices(&self) -> Vec<usize> {
        (0..self.hypotheses.len())
            .filter(|&i| self.alive[i])
            .collect()
    }

    /// Set when every hypothesis has been eliminated.
    pub fn collapsed(&self) -> bool {
        self.collapsed
    }

    /// Re-derives the surviving indices after a sequence of observations;
    /// halving's version space is a pure function of the observation stream.
    pub fn surviving_after(class: &HypothesisClass, observations: &[(usize, bool)]) -> Vec<usize> {
        (0..class.len())
            .filter(|&i| {
                observations
                    .iter()
                    .all(|&(x, y)| class.hypotheses()[i].value(x) == y)
            })
            .collect()
    }
}

impl Learner for HalvingLearner {
    fn emit(&mut self) -> Hypothesis {
        let n = self.hypotheses.first().map_or(1, |h| h.len());
        let mut out = PointSet::empty(n);
        let alive_count = self.alive.iter().filter(|&&a| a).count();
        if alive_count == 0 {
            return out;
        }
        for x in 0..n {
            let ones = self
                .hypotheses
                .iter()
                .zip(&self.alive)
                .filter(|(h, &a)| a && h.value(x))
                .count();
            if 2 * ones >= alive_count {
                out.insert(x);
            }
        }
        out
    }

    fn observe(&mut self, x: usize, y: bool) {
        for (h, a) in self.hypotheses.iter().zip(self.alive.iter_mut()) {
            if *a && h.value(x) != y {
                *a = false;
            }
        }
        if !self.collapsed && self.alive.iter().all(|&a| !a) {
            self.collapsed = true;
        }
    }
}

/// Proper baseline: keeps a record of the positives it believes reliable
/// (labels that disagreed with every hypothesis it has output) and emits the
/// first class member covering them. Falls back to the first member when
/// nothing is consistent.
pub struct GreedyProperLearner {
    hypotheses: Vec<Hypothesis>,
    record: PointSet,
    emitted_or: PointSet,
    emitted_any: bool,
    fallback_used: bool,
}

impl GreedyProperLearner {
    pub fn new(class: &HypothesisClass) -> Self {
        let n = class.domain().size();
        GreedyProperLearner {
            hypotheses: class.hypotheses().to_vec(),
            record: PointSet::empty(n),
            emitted_or: PointSet::empty(n),
            emitted_any: false,
            fallback_used: false,
        }
    }

    pub fn fallback_used(&self) -> bool {
        self.fallback_used
    }

    fn choice(&mut self) -> Hypothesis {
        match self.hypotheses.iter().find(|h| self.record.is_subset(h)) {
            Some(h) => h.clone(),
            None => {
                self.fallback_used = true;
                self.hypotheses[0].clone()
            }
        }
    }
}

impl Learner for GreedyProperLearner {
    fn emit(&mut self) -> Hypothesis {
        let h = self.choice();
        self.emitted_or.union_with(&h);
        self.emitted_any = true;
        h
    }

    fn observe(&mut self, x: usize, y: bool) {
        // A positive is believed reliable when every output so far said 0.
        if y && self.emitted_any && !self.emitted_or.contains(x) {
            self.record.insert(x);
        }
    }
}

/// Builds a learner by registry name. `convex_hull` runs over real-valued
/// domains and is driven by the convex experiment loop instead.
pub fn by_name(name: &str, class: &HypothesisClass) -> Result<Box<dyn Learner>> {
    let n = class.domain().size();
    match name {
        "closure" => Ok(Box::new(ClosureLearner::new(class, PointSet::empty(n)))),
        "closure_extdim" => Ok(Box::new(ClosureLearner::with_extdim_mask(class)?)),
        "closure_vcd1" => Ok(Box::new(ClosureLearner::with_vcd1_mask(class)?)),
        "conservative_threshold" => Ok(Box::new(ConservativeThresholdLearner::new(n))),
        "halving" => Ok(Box::new(HalvingLearner::new(class))),
        "greedy_proper" => Ok(Box::new(GreedyProperLearner::new(class))),
        "convex_hull" => Err(Error::InvalidParameter(
            "convex_hull learns real-valued domains; run it via `experiment convex`".into(),
        )),
        _ => Err(Error::UnknownName {
            kind: "learner",
            name: name.to_string(),
        }),
    }
}
