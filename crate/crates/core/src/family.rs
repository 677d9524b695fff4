//! Intersection-closure families and the containment order on them.

use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass};
use crate::pointset::PointSet;
use std::collections::HashSet;

/// Domain cap for operations that may enumerate on the order of `2^N` sets.
pub const ENUM_CAP: usize = 24;

/// All sets expressible as nonempty intersections of base hypotheses,
/// deduplicated and sorted canonically by (cardinality, value). The sorted
/// order is a topological order of the containment DAG: strict subsets of an
/// element always precede it.
#[derive(Debug, Clone)]
pub struct ClosureFamily {
    base: HypothesisClass,
    elements: Vec<PointSet>,
}

impl ClosureFamily {
    pub fn base(&self) -> &HypothesisClass {
        &self.base
    }

    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.elements
            .binary_search_by(|e| cmp_canonical(e, s))
            .is_ok()
    }

    /// `h_min`: the intersection of all base hypotheses.
    pub fn h_min(&self) -> &PointSet {
        &self.elements[0]
    }

    /// Indices of all strict subsets of element `i` (edges of the containment
    /// DAG, restricted to predecessors in the canonical order).
    pub fn strict_subsets_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let target = &self.elements[i];
        self.elements[..i]
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.count() < target.count() && e.is_subset(target))
            .map(|(j, _)| j)
    }

    /// View as a hypothesis class (closures of classes are classes too).
    pub fn to_class(&self) -> HypothesisClass {
        HypothesisClass::new(self.base.domain(), self.elements.clone())
            .expect("closure family is nonempty and deduplicated")
    }
}

fn cmp_canonical(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    a.count().cmp(&b.count()).then_with(|| a.value_cmp(b))
}

/// Fixpoint of a set family under pairwise intersection, deduplicated and
/// canonically sorted.
pub(crate) fn closure_elements(hypotheses: &[Hypothesis]) -> Vec<PointSet> {
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut elements: Vec<PointSet> = Vec::new();
    for h in hypotheses {
        if seen.insert(h.clone()) {
            elements.push(h.clone());
        }
    }
    // Worklist: intersect each new element against everything accumulated.
    let mut next = 0;
    while next < elements.len() {
        let cur = elements[next].clone();
        for i in 0..next {
            let meet = cur.intersection(&elements[i]);
            if seen.insert(meet.clone()) {
                elements.push(meet);
            }
        }
        next += 1;
    }
    elements.sort_by(cmp_canonical);
    elements
}

/// `H̄`: the class of all nonempty intersections of hypotheses in `H`.
pub fn intersection_closure(class: &HypothesisClass) -> Result<ClosureFamily> {
    let n = class.domain().size();
    if n > ENUM_CAP {
        return Err(Error::EnumerationCap {
            op: "intersection_closure",
            n,
            cap: ENUM_CAP,
        });
    }
    Ok(ClosureFamily {
        base: class.clone(),
        elements: closure_elements(class.hypotheses()),
    })
}

/// Longest strict chain in a canonically sorted, duplicate-free family.
///
/// Returns the chain length `L` (number of strict inclusions) and the chain
/// as an increasing sequence of `L + 1` element indices. Ties break toward
/// the earliest element in canonical order, so certificates are stable.
pub(crate) fn longest_chain_sorted(elements: &[PointSet]) -> (usize, Vec<usize>) {
    let m = elements.len();
    let mut depth = vec![0usize; m];
    let mut pred: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        for j in 0..i {
            if elements[j].count() < elements[i].count()
                && elements[j].is_subset(&elements[i])
                && depth[j] + 1 > depth[i]
            {
                depth[i] = depth[j] + 1;
                pred[i] = Some(j);
            }
        }
    }
    let (mut at, best) =
        depth.iter().enumerate().fold(
            (0, 0),
            |(bi, bd), (i, &d)| if d > bd { (i, d) } else { (bi, bd) },
        );
    let mut chain = vec![at];
    while let Some(p) = pred[at] {
        chain.push(p);
        at = p;
    }
    chain.reverse();
    (best, chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgen;
    use crate::hypothesis::{closure_of, is_intersection_closed, Domain};

    #[test]
    fn thresholds_are_their_own_closure() {
        let h = classgen::thresholds(6).unwrap();
        let fam = intersection_closure(&h).unwrap();
        assert_eq!(fam.len(), h.len());
        for hyp in h.hypotheses() {
            assert!(fam.contains(hyp));
        }
        assert!(is_intersection_closed(&fam.to_class()));
    }

    // Intersections of co-singletons realise every complement, so the closure
    // of reverse singletons on [4] is the full power set: 16 elements.
    #[test]
    fn reverse_singletons_blow_up_to_power_set() {
        let h = classgen::reverse_singletons(4).unwrap();
        let fam = intersection_closure(&h).unwrap();

        // oracle: brute force over all nonempty subsets of the base class
        let hyps = h.hypotheses();
        let mut expect = std::collections::HashSet::new();
        for mask in 1u32..(1 << hyps.len()) {
            let mut acc = PointSet::full(4);
            for (i, hyp) in hyps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.intersection(hyp);
                }
            }
            expect.insert(acc);
        }
        assert_eq!(expect.len(), 16);
        assert_eq!(fam.len(), 16);
        for e in fam.elements() {
            assert!(expect.contains(e));
        }
    }

    #[test]
    fn h_min_is_global_intersection() {
        let h = classgen::thresholds(5).unwrap();
        let fam = intersection_closure(&h).unwrap();
        assert_eq!(fam.h_min(), &PointSet::empty(5));
        assert_eq!(fam.h_min(), &closure_of(&h, &PointSet::empty(5)));
    }

    #[test]
    fn cap_is_enforced() {
        let d = Domain::new(ENUM_CAP + 1).unwrap();
        let h = HypothesisClass::new(d, vec![PointSet::empty(ENUM_CAP + 1)]).unwrap();
        assert!(matches!(
            intersection_closure(&h),
            Err(Error::EnumerationCap { .. })
        ));
    }

    #[test]
    fn longest_chain_on_nested_family() {
        let elems = closure_elements(classgen::thresholds(5).unwrap().hypotheses());
        let (len, chain) = longest_chain_sorted(&elems);
        assert_eq!(len, 5);
        assert_eq!(chain.len(), 6);
        for w in chain.windows(2) {
            assert!(elems[w[0]].is_strict_subset(&elems[w[1]]));
        }
    }
}
