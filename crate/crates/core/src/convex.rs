//! Max-plus convexity in `ℝⁿ`.
//!
//! A max-plus convex combination of points `x_i` with weights `λ_i ≤ 0`,
//! `max λ_i = 0`, is the coordinatewise maximum of `λ_i + x_i`. The hull of
//! a finite generator set is the set of all such combinations. Combinations
//! are monotone in every weight, so a point `p` is in the hull iff the
//! greatest weights that keep every term below `p`,
//! `λ*_i = min(0, min_t (p_t − x_{i,t}))`, already reproduce `p`.

use crate::error::{Error, Result};
use crate::measure::{multiply, Density, MaxPlusDensity, MetaDensity};
use crate::score::{ExtendedScore, DEFAULT_TOLERANCE};
use crate::space::{FiniteSpace, RealFunction};

/// A point of `ℝⁿ` with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalPoint(Vec<f64>);

impl TropicalPoint {
    pub fn new(coordinates: Vec<f64>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(&bad) = coordinates.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidScore(bad));
        }
        Ok(TropicalPoint(coordinates))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.0
    }

    pub fn approx_eq(&self, other: &TropicalPoint, tol: f64) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= tol)
    }

    /// `c + x`, coordinatewise.
    pub fn shifted(&self, c: f64) -> TropicalPoint {
        TropicalPoint(self.0.iter().map(|v| v + c).collect())
    }

    /// `(α + self) ∨ other`.
    pub fn mix(&self, alpha: ExtendedScore, other: &TropicalPoint) -> TropicalPoint {
        match alpha.value() {
            None => other.clone(),
            Some(a) => TropicalPoint(self.0.iter().zip(&other.0).map(|(x, y)| (a + x).max(*y)).collect()),
        }
    }
}

/// A non-empty set of distinct points sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    dim: usize,
    points: Vec<TropicalPoint>,
}

impl GeneratorSet {
    pub fn new(points: Vec<TropicalPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptySupport);
        };
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].approx_eq(&points[j], DEFAULT_TOLERANCE) {
                    return Err(Error::DuplicateSupport(i, j));
                }
            }
        }
        Ok(GeneratorSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[TropicalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The index space `g0, g1, ...` that densities over the generators live on.
    pub fn index_space(&self) -> FiniteSpace {
        FiniteSpace::indexed("g", self.points.len()).expect("non-empty")
    }

    /// The coordinate functional `f_t = pr_t` restricted to the generators.
    pub fn coordinate(&self, t: usize) -> RealFunction {
        let values = self.points.iter().map(|p| p.0[t]).collect();
        RealFunction::new(&self.index_space(), values).expect("finite coordinates")
    }

    /// Smallest and largest value of each coordinate.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        (0..self.dim)
            .map(|t| {
                self.points
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.0[t]), hi.max(p.0[t])))
            })
            .collect()
    }
}

/// Weights `λ_i ∈ [−∞, 0]` with `max λ_i = 0`, one per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<ExtendedScore>);

impl WeightVector {
    pub fn new(weights: Vec<ExtendedScore>) -> Result<Self> {
        let space = FiniteSpace::indexed("g", weights.len().max(1))?;
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        Density::new(&space, weights.clone())?;
        Ok(WeightVector(weights))
    }

    /// Subtracts the largest weight.
    pub fn normalize(weights: Vec<ExtendedScore>) -> Result<Self> {
        let space = FiniteSpace::indexed("g", weights.len().max(1))?;
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(WeightVector(Density::normalize(&space, weights)?.weights().to_vec()))
    }

    /// Weight 0 on generator `i`, bottom elsewhere.
    pub fn dirac(len: usize, i: usize) -> Self {
        let mut w = vec![ExtendedScore::BOTTOM; len];
        w[i] = ExtendedScore::ZERO;
        WeightVector(w)
    }

    pub fn weights(&self) -> &[ExtendedScore] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The same weights read as a density over the generator index space.
    pub fn as_density(&self) -> MaxPlusDensity {
        let space = FiniteSpace::indexed("g", self.0.len()).expect("non-empty");
        Density::new(&space, self.0.clone()).expect("validated at construction")
    }
}

/// `∨_i (λ_i + x_i)`.
pub fn combine(gens: &GeneratorSet, lam: &WeightVector) -> Result<TropicalPoint> {
    if lam.len() != gens.len() {
        return Err(Error::LengthMismatch { expected: gens.len(), found: lam.len() });
    }
    let coords = (0..gens.dim)
        .map(|t| {
            lam.0
                .iter()
                .zip(&gens.points)
                .filter_map(|(w, x)| w.value().map(|w| w + x.0[t]))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    Ok(TropicalPoint(coords))
}

/// The idempotent barycenter: coordinate `t` is the measure `f` applied to
/// the coordinate functional `f_t`.
pub fn barycenter(gens: &GeneratorSet, f: &WeightVector) -> Result<TropicalPoint> {
    if f.len() != gens.len() {
        return Err(Error::LengthMismatch { expected: gens.len(), found: f.len() });
    }
    barycenter_of_density(gens, &f.as_density())
}

/// [`barycenter`] for a density over [`GeneratorSet::index_space`].
pub fn barycenter_of_density(gens: &GeneratorSet, f: &MaxPlusDensity) -> Result<TropicalPoint> {
    if f.space().len() != gens.len() {
        return Err(Error::LengthMismatch { expected: gens.len(), found: f.space().len() });
    }
    let coords = (0..gens.dim).map(|t| f.eval(&gens.coordinate(t))).collect::<Result<Vec<f64>>>()?;
    TropicalPoint::new(coords)
}

/// The greatest weights `λ*_i = min(0, min_t (p_t − x_{i,t}))`.
pub fn residuated_weights(p: &TropicalPoint, gens: &GeneratorSet) -> Result<Vec<f64>> {
    if p.dim() != gens.dim {
        return Err(Error::DimensionMismatch { expected: gens.dim, found: p.dim() });
    }
    Ok(gens.points.iter().map(|x| p.0.iter().zip(&x.0).map(|(pt, xt)| pt - xt).fold(0.0, f64::min)).collect())
}

pub fn hull_member(p: &TropicalPoint, gens: &GeneratorSet) -> Result<bool> {
    hull_member_with(p, gens, DEFAULT_TOLERANCE)
}

/// Membership of `p` in the max-plus hull of `gens`, decided by the
/// residuated candidate.
pub fn hull_member_with(p: &TropicalPoint, gens: &GeneratorSet, tol: f64) -> Result<bool> {
    let lam = residuated_weights(p, gens)?;
    let Some(lam) = renormalize(lam, tol) else {
        return Ok(false);
    };
    Ok(combine(gens, &lam)?.approx_eq(p, tol))
}

fn renormalize(lam: Vec<f64>, tol: f64) -> Option<WeightVector> {
    let top = lam.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top < -tol {
        return None;
    }
    Some(WeightVector(lam.into_iter().map(|l| ExtendedScore::finite(l - top)).collect()))
}

/// Membership decided through measures: the residuated weights are computed
/// from the coordinate functionals and the candidate is pushed through
/// [`barycenter`].
pub fn barycenter_member(p: &TropicalPoint, gens: &GeneratorSet, tol: f64) -> Result<bool> {
    if p.dim() != gens.dim {
        return Err(Error::DimensionMismatch { expected: gens.dim, found: p.dim() });
    }
    let coords: Vec<RealFunction> = (0..gens.dim).map(|t| gens.coordinate(t)).collect();
    let lam =
        (0..gens.len()).map(|i| coords.iter().enumerate().map(|(t, f)| p.0[t] - f.at(i)).fold(0.0, f64::min)).collect();
    let Some(f) = renormalize(lam, tol) else {
        return Ok(false);
    };
    Ok(barycenter(gens, &f)?.approx_eq(p, tol))
}

/// The algebra law `ξ ∘ μ = ξ ∘ Iξ` at `meta`: the barycenter of the
/// multiplied density against the combination of the barycenters of the
/// support, weighted by the support weights.
pub fn check_algebra_with(gens: &GeneratorSet, meta: &MetaDensity, tol: f64) -> Result<bool> {
    if meta.space().len() != gens.len() {
        return Err(Error::LengthMismatch { expected: gens.len(), found: meta.space().len() });
    }
    let left = barycenter_of_density(gens, &multiply(meta))?;

    let mut images: Vec<(TropicalPoint, ExtendedScore)> = Vec::new();
    for (mu, w) in meta.entries() {
        let b = barycenter_of_density(gens, mu)?;
        match images.iter_mut().find(|(q, _)| q.approx_eq(&b, DEFAULT_TOLERANCE)) {
            Some(slot) => slot.1 = slot.1.oplus(*w),
            None => images.push((b, *w)),
        }
    }
    let (points, weights): (Vec<_>, Vec<_>) = images.into_iter().unzip();
    let right = combine(&GeneratorSet::new(points)?, &WeightVector::new(weights)?)?;
    Ok(left.approx_eq(&right, tol))
}

pub fn check_algebra(gens: &GeneratorSet, meta: &MetaDensity) -> Result<bool> {
    check_algebra_with(gens, meta, DEFAULT_TOLERANCE)
}

/// Whether the combination route and the barycenter route give the same
/// membership verdict at every grid point.
pub fn check_convexity_equivalence_with(gens: &GeneratorSet, grid: &[TropicalPoint], tol: f64) -> Result<bool> {
    for p in grid {
        if hull_member_with(p, gens, tol)? != barycenter_member(p, gens, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_convexity_equivalence(gens: &GeneratorSet, grid: &[TropicalPoint]) -> Result<bool> {
    check_convexity_equivalence_with(gens, grid, DEFAULT_TOLERANCE)
}

/// `per_axis` evenly spaced points on every axis of the bounding box.
pub fn bounding_grid(gens: &GeneratorSet, per_axis: usize) -> Vec<TropicalPoint> {
    let axes: Vec<Vec<f64>> = gens
        .bounding_box()
        .into_iter()
        .map(|(lo, hi)| {
            if per_axis <= 1 {
                return vec![lo];
            }
            (0..per_axis).map(|k| lo + (hi - lo) * k as f64 / (per_axis - 1) as f64).collect()
        })
        .collect();
    let mut grid = vec![Vec::new()];
    for axis in &axes {
        grid = grid
            .into_iter()
            .flat_map(|prefix: Vec<f64>| {
                axis.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    grid.into_iter().map(TropicalPoint).collect()
}
