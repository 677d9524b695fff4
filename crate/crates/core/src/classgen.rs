//! Named class generators, the JSON class-file format and a seeded sampler.

use crate::error::{Error, Result};
use crate::hypothesis::{Domain, Hypothesis, HypothesisClass};
use crate::pointset::PointSet;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Thresholds on `[N]`: `f_0 ≡ 0` and `f_k = I{· ≥ k}` for `k ∈ [N]`,
/// in index order `f_0, f_1, .., f_N` (0-based: `∅, {x ≥ 0}, .., {x ≥ N-1}`).
pub fn thresholds(n: usize) -> Result<HypothesisClass> {
    let domain = Domain::new(n)?;
    let mut hyps = vec![PointSet::empty(n)];
    hyps.extend((0..n).map(|k| PointSet::from_points(n, k..n)));
    HypothesisClass::new(domain, hyps)
}

/// Singletons plus the all-zeros function.
pub fn singletons(n: usize) -> Result<HypothesisClass> {
    let domain = Domain::new(n)?;
    let mut hyps: Vec<Hypothesis> = (0..n).map(|i| PointSet::from_points(n, [i])).collect();
    hyps.push(PointSet::empty(n));
    HypothesisClass::new(domain, hyps)
}

/// Co-singletons plus the all-ones function.
pub fn reverse_singletons(n: usize) -> Result<HypothesisClass> {
    let domain = Domain::new(n)?;
    let mut hyps: Vec<Hypothesis> = (0..n)
        .map(|i| {
            let mut s = PointSet::full(n);
            s.remove(i);
            s
        })
        .collect();
    hyps.push(PointSet::full(n));
    HypothesisClass::new(domain, hyps)
}

/// The blow-up class on domain `[2N]`: singletons ∪ {∅} ∪ co-singletons ∪ {X}.
/// Its Threshold dimension is 3 while the extended variant grows with `N`.
pub fn blowup(n: usize) -> Result<HypothesisClass> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "blowup generator requires N >= 2".into(),
        ));
    }
    let size = 2 * n;
    let domain = Domain::new(size)?;
    let mut hyps: Vec<Hypothesis> = (0..size)
        .map(|i| PointSet::from_points(size, [i]))
        .collect();
    hyps.push(PointSet::empty(size));
    hyps.extend((0..size).map(|i| {
        let mut s = PointSet::full(size);
        s.remove(i);
        s
    }));
    hyps.push(PointSet::full(size));
    HypothesisClass::new(domain, hyps)
}

/// Unions of at most two intervals, discretized to `N` grid points: every
/// subset with at most two maximal runs, including the empty trace of an
/// interval pair that captures no grid point.
///
/// Order: ∅ first, then single runs `[a, b]` by `(a, b)`, then run pairs
/// `[a, b] ∪ [c, d]` by `(a, b, c, d)` with a gap of at least one point.
pub fn two_intervals(n: usize) -> Result<HypothesisClass> {
    let domain = Domain::new(n)?;
    let mut hyps = vec![PointSet::empty(n)];
    for a in 0..n {
        for b in a..n {
            hyps.push(PointSet::from_points(n, a..=b));
        }
    }
    for a in 0..n {
        for b in a..n {
            for c in (b + 2)..n {
                for d in c..n {
                    let mut s = PointSet::from_points(n, a..=b);
                    for p in c..=d {
                        s.insert(p);
                    }
                    hyps.push(s);
                }
            }
        }
    }
    HypothesisClass::new(domain, hyps)
}

/// Parses `name:N` generator references.
pub fn by_name(spec: &str) -> Result<HypothesisClass> {
    let (name, arg) = spec.split_once(':').ok_or_else(|| Error::UnknownName {
        kind: "class generator",
        name: spec.to_string(),
    })?;
    let n: usize = arg.parse().map_err(|_| {
        Error::InvalidParameter(format!("generator parameter must be an integer: {spec}"))
    })?;
    match name {
        "thresholds" => thresholds(n),
        "singletons" => singletons(n),
        "reverse_singletons" => reverse_singletons(n),
        "blowup" => blowup(n),
        "two_intervals" => two_intervals(n),
        _ => Err(Error::UnknownName {
            kind: "class generator",
            name: name.to_string(),
        }),
    }
}

/// Resolves a class spec: a `name:N` generator or a JSON class file path.
pub fn parse_class_spec(spec: &str) -> Result<HypothesisClass> {
    if Path::new(spec).exists() {
        return read_class_file(Path::new(spec));
    }
    by_name(spec)
}

/// On-disk JSON class file: point indices are 0-based, character `i` of each
/// bit string is the hypothesis value at point `i`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ClassFile {
    pub domain_size: usize,
    pub hypotheses: Vec<String>,
}

impl ClassFile {
    pub fn from_class(class: &HypothesisClass) -> Self {
        ClassFile {
            domain_size: class.domain().size(),
            hypotheses: class
                .hypotheses()
                .iter()
                .map(|h| h.to_bitstring())
                .collect(),
        }
    }

    pub fn into_class(self) -> Result<HypothesisClass> {
        let domain = Domain::new(self.domain_size)?;
        let mut hyps = Vec::with_capacity(self.hypotheses.len());
        for (i, s) in self.hypotheses.iter().enumerate() {
            if s.len() != self.domain_size {
                return Err(Error::InvalidClassFile(format!(
                    "hypothesis {i} has {} characters, expected {}",
                    s.len(),
                    self.domain_size
                )));
            }
            hyps.push(PointSet::from_bitstring(s).map_err(Error::InvalidClassFile)?);
        }
        HypothesisClass::new(domain, hyps)
    }
}

pub fn read_class_file(path: &Path) -> Result<HypothesisClass> {
    let text = std::fs::read_to_string(path)?;
    let file: ClassFile = serde_json::from_str(&text)?;
    file.into_class()
}

pub fn write_class_file(path: &Path, class: &HypothesisClass) -> Result<()> {
    let file = ClassFile::from_class(class);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Samples a duplicate-free random class with `size` hypotheses over `[n]`.
pub fn random_class<R: Rng>(rng: &mut R, n: usize, size: usize) -> HypothesisClass {
    assert!((1..=64).contains(&n) && size >= 1);
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = std::collections::HashSet::new();
    let mut hyps = Vec::new();
    while hyps.len()
        < size.min(
            usize::try_from(limit)
                .unwrap_or(usize::MAX)
                .saturating_add(1),
        )
    {
        let bits = rng.gen_range(0..=limit);
        if seen.insert(bits) {
            hyps.push(PointSet::from_bits(n, bits));
        }
    }
    HypothesisClass::new(Domain::new(n).unwrap(), hyps).unwrap()
}
