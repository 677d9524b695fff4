//! Hypothesis classes over a finite domain.
//!
//! Points are `0..N-1` internally; prose and docs use the 1-based `[N]`
//! convention. A hypothesis is simultaneously a subset of the domain and a
//! binary function on it (`h(x) = 1` iff `x` is a member), so `Hypothesis`
//! and `Representation` are both [`PointSet`]s.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// A hypothesis: a subset of the domain with the dual function view.
pub type Hypothesis = PointSet;

/// A representation mask `f ⊆ X`; applying it twice is the identity.
pub type Representation = PointSet;

/// A labelled example `(x, y)`.
pub type LabeledExample = (usize, bool);

/// Domain `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    size: usize,
}

impl Domain {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("domain size must be >= 1".into()));
        }
        Ok(Domain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        0..self.size
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.size)
    }
}

/// A finite, duplicate-free, nonempty list of hypotheses over one domain.
///
/// Outputs of filtering operations (restrictions, version spaces) may be
/// empty; only [`HypothesisClass::new`] enforces nonemptiness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisClass {
    domain: Domain,
    hypotheses: Vec<Hypothesis>,
}

impl HypothesisClass {
    pub fn new(domain: Domain, hypotheses: Vec<Hypothesis>) -> Result<Self> {
        if hypotheses.is_empty() {
            return Err(Error::EmptyClass);
        }
        let mut seen = HashSet::new();
        for (i, h) in hypotheses.iter().enumerate() {
            if h.len() != domain.size() {
                return Err(Error::DomainMismatch {
                    expected: domain.size(),
                    found: h.len(),
                });
            }
            if !seen.insert(h.clone()) {
                return Err(Error::DuplicateHypothesis { index: i });
            }
        }
        Ok(HypothesisClass { domain, hypotheses })
    }

    /// Possibly-empty subclass sharing this class's domain (no dedup check:
    /// callers pass a subset of an existing class).
    pub(crate) fn filtered(domain: Domain, hypotheses: Vec<Hypothesis>) -> Self {
        HypothesisClass { domain, hypotheses }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn contains(&self, h: &Hypothesis) -> bool {
        self.hypotheses.iter().any(|g| g == h)
    }
}

/// Replaces every hypothesis by its symmetric difference with `f`.
///
/// This is a bijection on classes of fixed size: applying the same mask
/// again returns the original class.
pub fn apply_representation(
    class: &HypothesisClass,
    f: &Representation,
) -> Result<HypothesisClass> {
    if f.len() != class.domain().size() {
        return Err(Error::DomainMismatch {
            expected: class.domain().size(),
            found: f.len(),
        });
    }
    Ok(HypothesisClass {
        domain: class.domain(),
        hypotheses: class
            .hypotheses
            .iter()
            .map(|h| h.symmetric_difference(f))
            .collect(),
    })
}

/// `clos_H(Y)`: intersection of all hypotheses containing `Y`.
///
/// When no hypothesis contains `Y` the intersection over the empty family is
/// the full domain.
pub fn closure_of(class: &HypothesisClass, y: &PointSet) -> PointSet {
    closure_in(class.hypotheses(), y)
}

pub(crate) fn closure_in(hypotheses: &[Hypothesis], y: &PointSet) -> PointSet {
    let mut acc = PointSet::full(y.len());
    let mut any = false;
    for h in hypotheses {
        if y.is_subset(h) {
            acc.intersect_with(h);
            any = true;
        }
    }
    if !any {
        return PointSet::full(y.len());
    }
    acc
}

/// True iff every pairwise intersection of members is a member.
///
/// On finite domains this coincides with closedness under arbitrary
/// intersections.
pub fn is_intersection_closed(class: &HypothesisClass) -> bool {
    let members: HashSet<&Hypothesis> = class.hypotheses().iter().collect();
    let hs = class.hypotheses();
    for i in 0..hs.len() {
        for j in (i + 1)..hs.len() {
            if !members.contains(&hs[i].intersection(&hs[j])) {
                return false;
            }
        }
    }
    true
}

/// All and only the hypotheses agreeing with every example. May be empty.
pub fn consistent_subclass(
    class: &HypothesisClass,
    examples: &[LabeledExample],
) -> Result<HypothesisClass> {
    let n = class.domain().size();
    for &(x, _) in examples {
        if x >= n {
            return Err(Error::PointOutOfRange { point: x, size: n });
        }
    }
    let kept = class
        .hypotheses()
        .iter()
        .filter(|h| examples.iter().all(|&(x, y)| h.value(x) == y))
        .cloned()
        .collect();
    Ok(HypothesisClass::filtered(class.domain(), kept))
}
