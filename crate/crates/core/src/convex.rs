//! Convex-hull learning over `R^d`, the infinite intersection-closed case.
//!
//! The closure operator on convex sets is the convex hull, so the learner
//! stores the positive points seen on false negatives and predicts membership
//! of their hull. Exact for `d = 1` by interval containment; for `d >= 2`
//! membership is a linear feasibility test (the query as a convex combination
//! of stored points) solved by a small phase-1 simplex.
//!
//! Everything is generic over the scalar; the crate root pins `f64` aliases.

use crate::error::{Error, Result};
use num_traits::Float;
use rand::Rng;

/// Absolute feasibility-residual tolerance for hull membership.
pub const DEFAULT_HULL_EPS: f64 = 1e-9;

/// Incremental convex-hull learner: stored positives, monotone hull growth,
/// one-sided (false-negative) mistakes only.
pub struct ConvexHullLearner<F: Float> {
    dim: usize,
    points: Vec<Vec<F>>,
    eps: F,
}

impl<F: Float> ConvexHullLearner<F> {
    pub fn new(dim: usize, eps: F) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "convex learner supports d in 1..=3, got {dim}"
            )));
        }
        Ok(ConvexHullLearner {
            dim,
            points: Vec::new(),
            eps,
        })
    }

    pub fn stored_points(&self) -> &[Vec<F>] {
        &self.points
    }

    /// Membership of the current hull within the residual tolerance.
    pub fn predict(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.dim);
        if self.points.is_empty() {
            return false;
        }
        if self.dim == 1 {
            let lo = self.points.iter().map(|p| p[0]).fold(F::infinity(), F::min);
            let hi = self
                .points
                .iter()
                .map(|p| p[0])
                .fold(F::neg_infinity(), F::max);
            return x[0] >= lo - self.eps && x[0] <= hi + self.eps;
        }
        // cheap bounding-box rejection
        for c in 0..self.dim {
            let lo = self.points.iter().map(|p| p[c]).fold(F::infinity(), F::min);
            let hi = self
                .points
                .iter()
                .map(|p| p[c])
                .fold(F::neg_infinity(), F::max);
            if x[c] < lo - self.eps || x[c] > hi + self.eps {
                return false;
            }
        }
        in_hull(&self.points, x, self.eps)
    }

    /// Degenerate inputs are rejected; a fresh positive outside the hull is
    /// stored, growing the hull monotonically.
    pub fn observe(&mut self, x: &[F], y: bool) -> Result<()> {
        if x.len() != self.dim || x.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "convex observation must be finite and of the learner's dimension".into(),
            ));
        }
        if y && !self.predict(x) {
            self.points.push(x.to_vec());
        }
        Ok(())
    }
}

/// Is `x` a convex combination of `points`, within residual `eps`?
///
/// Phase-1 simplex on `Σ λ_i p_i = x`, `Σ λ_i = 1`, `λ >= 0`: minimize the
/// artificial-variable sum; feasible iff the optimum is at most `eps`.
/// Bland's rule throughout, so termination is unconditional.
#[allow(clippy::needless_range_loop)] // column-wise scans over a row-major tableau
fn in_hull<F: Float>(points: &[Vec<F>], x: &[F], eps: F) -> bool {
    let d = x.len();
    let rows = d + 1;
    let m = points.len();
    let cols = m + rows;
    let tol = F::from(1e-12).unwrap();

    // tableau rows: [lambda columns | artificial identity | rhs]
    let mut tab = vec![vec![F::zero(); cols + 1]; rows];
    for (r, row) in tab.iter_mut().enumerate() {
        let rhs = if r < d { x[r] } else { F::one() };
        let flip = rhs < F::zero();
        for (slot, p) in row.iter_mut().zip(points) {
            let a = if r < d { p[r] } else { F::one() };
            *slot = if flip { -a } else { a };
        }
        row[m + r] = F::one();
        row[cols] = if flip { -rhs } else { rhs };
    }
    let mut basis: Vec<usize> = (m..cols).collect();

    loop {
        // reduced costs with artificial cost 1, lambda cost 0
        let mut enter = None;
        for j in 0..cols {
            let mut reduced = if j < m { F::zero() } else { F::one() };
            for r in 0..rows {
                if basis[r] >= m {
                    reduced = reduced - tab[r][j];
                }
            }
            if reduced < -tol {
                enter = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = enter else { break };
        let mut leave: Option<(usize, F)> = None;
        for r in 0..rows {
            if tab[r][j] > tol {
                let ratio = tab[r][cols] / tab[r][j];
                let better = match leave {
                    None => true,
                    // Bland: on a ratio tie, evict the smallest basis index.
                    Some((br, best)) => {
                        ratio < best - tol || (ratio <= best + tol && basis[r] < basis[br])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = tab[pr][j];
        for v in tab[pr].iter_mut() {
            *v = *v / pivot;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != pr {
                let factor = row[j];
                if factor != F::zero() {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v = *v - factor * *pv;
                    }
                }
            }
        }
        basis[pr] = j;
    }

    let mut residual = F::zero();
    for r in 0..rows {
        if basis[r] >= m {
            residual = residual + tab[r][cols].max(F::zero());
        }
    }
    residual <= eps
}

/// Convex bodies the stochastic adversary samples uniformly from. All fit in
/// the unit ball.
#[derive(Debug, Clone)]
pub enum Body<F: Float> {
    Interval { lo: F, hi: F },
    Disk { radius: F },
    Ball { radius: F },
    Polygon { vertices: Vec<[F; 2]> },
}

impl<F: Float> Body<F> {
    pub fn dim(&self) -> usize {
        match self {
            Body::Interval { .. } => 1,
            Body::Disk { .. } | Body::Polygon { .. } => 2,
            Body::Ball { .. } => 3,
        }
    }

    pub fn contains(&self, x: &[F]) -> bool {
        match self {
            Body::Interval { lo, hi } => x[0] >= *lo && x[0] <= *hi,
            Body::Disk { radius } => x[0] * x[0] + x[1] * x[1] <= *radius * *radius,
            Body::Ball { radius } => x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= *radius * *radius,
            Body::Polygon { vertices } => {
                // convex polygon, vertices counterclockwise
                let k = vertices.len();
                for i in 0..k {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % k];
                    let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
                    if cross < F::zero() {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Uniform sample, by inversion for intervals and rejection otherwise.
    pub fn sample_uniform<R: Rng>(&self, rng: &mut R) -> Vec<F> {
        let f = |v: f64| F::from(v).unwrap();
        match self {
            Body::Interval { lo, hi } => {
                let u = f(rng.gen::<f64>());
                vec![*lo + u * (*hi - *lo)]
            }
            Body::Disk { radius } => loop {
                let x = f(rng.gen_range(-1.0..1.0)) * *radius;
                let y = f(rng.gen_range(-1.0..1.0)) * *radius;
                let p = vec![x, y];
                if self.contains(&p) {
                    return p;
                }
            },
            Body::Ball { radius } => loop {
                let x = f(rng.gen_range(-1.0..1.0)) * *radius;
                let y = f(rng.gen_range(-1.0..1.0)) * *radius;
                let z = f(rng.gen_range(-1.0..1.0)) * *radius;
                let p = vec![x, y, z];
                if self.contains(&p) {
                    return p;
                }
            },
            Body::Polygon { vertices } => {
                let (mut lo_x, mut hi_x) = (F::infinity(), F::neg_infinity());
                let (mut lo_y, mut hi_y) = (F::infinity(), F::neg_infinity());
                for v in vertices {
                    lo_x = lo_x.min(v[0]);
                    hi_x = hi_x.max(v[0]);
                    lo_y = lo_y.min(v[1]);
                    hi_y = hi_y.max(v[1]);
                }
                loop {
                    let u = f(rng.gen::<f64>());
                    let w = f(rng.gen::<f64>());
                    let p = vec![lo_x + u * (hi_x - lo_x), lo_y + w * (hi_y - lo_y)];
                    if self.contains(&p) {
                        return p;
                    }
                }
            }
        }
    }
}

/// Canonical body for a dimension: `[0,1]`, the unit disk, the unit ball.
pub fn default_body<F: Float>(d: usize) -> Result<Body<F>> {
    match d {
        1 => Ok(Body::Interval {
            lo: F::zero(),
            hi: F::one(),
        }),
        2 => Ok(Body::Disk { radius: F::one() }),
        3 => Ok(Body::Ball { radius: F::one() }),
        _ => Err(Error::InvalidParameter(format!(
            "convex bodies exist for d in 1..=3, got {d}"
        ))),
    }
}

/// One stochastic convex game: uniform samples from the body, all truthfully
/// labelled 1 (the worst case for a one-sided learner). Returns the mistake
/// count.
pub fn run_convex_game<F: Float, R: Rng>(
    body: &Body<F>,
    rounds: usize,
    rng: &mut R,
) -> Result<u64> {
    let mut learner = ConvexHullLearner::new(body.dim(), F::from(DEFAULT_HULL_EPS).unwrap())?;
    let mut mistakes = 0u64;
    for _ in 0..rounds {
        let x = body.sample_uniform(rng);
        if !learner.predict(&x) {
            mistakes += 1;
        }
        learner.observe(&x, true)?;
    }
    Ok(mistakes)
}
