//! Densities of idempotent measures and the density monads.
//!
//! A density on `X` is a weight per point, normalized so that the largest
//! weight is the semiring's unit (0 for max-plus, 1 for max-times). The same
//! data read as a measure is the finitely supported functional
//! `φ ↦ ⊕ₓ f(x) ⊗ φ(x)`.
//!
//! Everything here is generic over [`Semiring`], so the max-plus monad
//! `(D, ε, κ)` and the max-times monad `(D₁, ε₁, κ₁)` share one
//! implementation. Second- and third-level objects are finitely supported
//! [`Support`]s of densities.

use std::fmt;

use crate::error::{Error, Result};
use crate::score::{ExtendedScore, Semiring, UnitScore, DEFAULT_TOLERANCE};
use crate::space::{realign, FiniteSpace, PointMap, RealFunction, UnitFunction};

/// Default probe bound for [`density_from_functional`].
pub const DEFAULT_PROBE_BOUND: f64 = 64.0;

/// Probe results within this distance of `-M` are recorded as bottom.
pub const PROBE_SLACK: f64 = 1e-9;

/// A normalized weight profile on a finite space.
#[derive(Clone, PartialEq)]
pub struct Density<S: Semiring> {
    space: FiniteSpace,
    weights: Vec<S>,
}

/// An element of `DX`; read as a measure, an element of `I_ω X`.
pub type MaxPlusDensity = Density<ExtendedScore>;
/// An element of `D₁X`; read as a measure, a `·`-measure.
pub type MaxTimesDensity = Density<UnitScore>;

impl<S: Semiring> Density<S> {
    /// Validates that no weight exceeds the unit and that the unit is attained.
    pub fn new(space: &FiniteSpace, mut weights: Vec<S>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::LengthMismatch { expected: space.len(), found: weights.len() });
        }
        for w in &weights {
            w.check_admissible()?;
        }
        let top = top_of(&weights);
        if !top.is_one() {
            return Err(Error::Unnormalized { found: top.to_string(), expected: S::ONE.to_string() });
        }
        for w in weights.iter_mut().filter(|w| w.is_one()) {
            *w = S::ONE;
        }
        Ok(Density { space: space.clone(), weights })
    }

    /// Builds a density from `(label, weight)` pairs covering the space.
    pub fn from_pairs<'a, I>(space: &FiniteSpace, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, S)>,
    {
        let weights = crate::space::values_by_label(space, pairs)?;
        Self::new(space, weights)
    }

    /// Divides every weight by the largest one (subtracts it, in max-plus).
    pub fn normalize(space: &FiniteSpace, weights: Vec<S>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::LengthMismatch { expected: space.len(), found: weights.len() });
        }
        let top = top_of(&weights);
        if top.is_zero() {
            return Err(Error::Unnormalized { found: top.to_string(), expected: S::ONE.to_string() });
        }
        let weights = weights.into_iter().map(|w| w.residual(top)).collect();
        Self::new(space, weights)
    }

    /// The unit weight at point `i`, zero elsewhere.
    pub fn point_mass(space: &FiniteSpace, i: usize) -> Self {
        let mut weights = vec![S::ZERO; space.len()];
        weights[i] = S::ONE;
        Density { space: space.clone(), weights }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> S {
        self.weights[i]
    }

    pub fn weight_of(&self, label: &str) -> Result<S> {
        Ok(self.weights[self.space.index_of(label)?])
    }

    /// Points carrying a non-zero weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(i, _)| i)
    }

    /// Same zero pattern and non-zero weights within `tol`, compared by label.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match realign(&other.weights, &other.space, &self.space) {
            Ok(theirs) => self.weights.iter().zip(&theirs).all(|(a, b)| a.approx_eq(*b, tol)),
            Err(_) => false,
        }
    }

    /// The same density in the label order of `space`.
    pub fn aligned_to(&self, space: &FiniteSpace) -> Result<Self> {
        Ok(Density { space: space.clone(), weights: realign(&self.weights, &self.space, space)? })
    }

    /// `D g(f)(y) = max f(g⁻¹(y))`, with the empty fiber sent to zero.
    pub fn pushforward(&self, g: &PointMap) -> Result<Self> {
        if g.source() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let images = g.resolve()?;
        let source = self.aligned_to(g.source())?;
        let mut weights = vec![S::ZERO; g.target().len()];
        for (w, &y) in source.weights.iter().zip(&images) {
            weights[y] = weights[y].oplus(*w);
        }
        Ok(Density { space: g.target().clone(), weights })
    }
}

impl<S: Semiring> fmt::Debug for Density<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (l, w) in self.space.labels().iter().zip(&self.weights) {
            map.entry(l, w);
        }
        map.finish()
    }
}

fn top_of<S: Semiring>(weights: &[S]) -> S {
    weights.iter().fold(S::ZERO, |acc, w| acc.oplus(*w))
}

impl MaxPlusDensity {
    /// `nX(f)(φ) = max { f(x) + φ(x) }`.
    pub fn eval(&self, phi: &RealFunction) -> Result<f64> {
        let phi = phi.aligned_to(&self.space)?;
        let best = self
            .weights
            .iter()
            .zip(phi.values())
            .filter_map(|(w, v)| w.value().map(|w| w + v))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(best)
    }
}

impl MaxTimesDensity {
    /// `n₁X(g)(φ) = max { g(x) · φ(x) }`.
    pub fn eval(&self, phi: &UnitFunction) -> Result<UnitScore> {
        let phi = phi.aligned_to(&self.space)?;
        Ok(self.weights.iter().zip(phi.values()).fold(UnitScore::ZERO, |acc, (w, v)| acc.oplus(w.otimes(*v))))
    }
}

/// Anything that can sit in the support of a [`Support`].
pub trait SupportElement: Clone + fmt::Debug {
    fn space(&self) -> &FiniteSpace;
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
    fn aligned_to(&self, space: &FiniteSpace) -> Result<Self>;
}

impl<S: Semiring> SupportElement for Density<S> {
    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        Density::approx_eq(self, other, tol)
    }

    fn aligned_to(&self, space: &FiniteSpace) -> Result<Self> {
        Density::aligned_to(self, space)
    }
}

/// A finitely supported normalized weighting of elements.
///
/// With densities as elements this is a point of `D²X` (or `I²X`); with
/// second-level supports as elements it is a point of `D³X`.
#[derive(Clone)]
pub struct Support<T, S: Semiring> {
    entries: Vec<(T, S)>,
}

pub type MetaDensity = Support<MaxPlusDensity, ExtendedScore>;
pub type ThirdLevel = Support<MetaDensity, ExtendedScore>;
pub type MetaTimesDensity = Support<MaxTimesDensity, UnitScore>;
pub type ThirdTimesLevel = Support<MetaTimesDensity, UnitScore>;

impl<T: SupportElement, S: Semiring> Support<T, S> {
    /// Drops zero-weight entries, then requires a shared space, pairwise
    /// distinct elements and a top weight equal to the unit.
    pub fn new(entries: Vec<(T, S)>) -> Result<Self> {
        let entries = Self::prepare(entries)?;
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i].0.approx_eq(&entries[j].0, DEFAULT_TOLERANCE) {
                    return Err(Error::DuplicateSupport(i, j));
                }
            }
        }
        Ok(Support { entries })
    }

    /// Like [`Support::new`], but merges coinciding elements by taking the
    /// larger weight.
    pub fn merged(entries: Vec<(T, S)>) -> Result<Self> {
        let entries = Self::prepare(entries)?;
        let mut out: Vec<(T, S)> = Vec::with_capacity(entries.len());
        for (t, w) in entries {
            match out.iter_mut().find(|(u, _)| u.approx_eq(&t, DEFAULT_TOLERANCE)) {
                Some(slot) => slot.1 = slot.1.oplus(w),
                None => out.push((t, w)),
            }
        }
        Ok(Support { entries: out })
    }

    /// Like [`Support::merged`], but rescales weights so the largest is the unit.
    pub fn normalized(entries: Vec<(T, S)>) -> Result<Self> {
        let top = entries.iter().fold(S::ZERO, |acc, (_, w)| acc.oplus(*w));
        if top.is_zero() {
            return Err(Error::EmptySupport);
        }
        Self::merged(entries.into_iter().map(|(t, w)| (t, w.residual(top))).collect())
    }

    fn prepare(entries: Vec<(T, S)>) -> Result<Vec<(T, S)>> {
        let mut entries: Vec<(T, S)> = entries.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let Some(first) = entries.first() else {
            return Err(Error::EmptySupport);
        };
        let space = first.0.space().clone();
        let mut top = S::ZERO;
        for (t, w) in entries.iter_mut() {
            w.check_admissible()?;
            if w.is_one() {
                *w = S::ONE;
            }
            top = top.oplus(*w);
            if !t.space().same_order(&space) {
                *t = t.aligned_to(&space)?;
            }
        }
        if !top.is_one() {
            return Err(Error::Unnormalized { found: top.to_string(), expected: S::ONE.to_string() });
        }
        Ok(entries)
    }

    /// The one-point support `{(t, 1)}`.
    pub fn single(t: T) -> Self {
        Support { entries: vec![(t, S::ONE)] }
    }

    pub fn entries(&self) -> &[(T, S)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The weight attached to `t`, zero if `t` is not in the support.
    pub fn weight_of(&self, t: &T, tol: f64) -> S {
        self.entries.iter().filter(|(u, _)| u.approx_eq(t, tol)).fold(S::ZERO, |acc, (_, w)| acc.oplus(*w))
    }

    /// Pushes the support forward along `f`; images that coincide merge by max.
    pub fn map<U: SupportElement>(&self, f: impl Fn(&T) -> U) -> Result<Support<U, S>> {
        Support::merged(self.entries.iter().map(|(t, w)| (f(t), *w)).collect())
    }

    pub fn try_map<U: SupportElement>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Support<U, S>> {
        let entries = self.entries.iter().map(|(t, w)| Ok((f(t)?, *w))).collect::<Result<_>>()?;
        Support::merged(entries)
    }
}

impl<T: SupportElement, S: Semiring> Support<Support<T, S>, S> {
    /// Multiplication one level up: the weight of `t` becomes
    /// `⊕_m m(t) ⊗ G(m)`.
    pub fn flatten(&self) -> Support<T, S> {
        let mut out: Vec<(T, S)> = Vec::new();
        for (meta, outer) in &self.entries {
            for (t, inner) in &meta.entries {
                let w = inner.otimes(*outer);
                match out.iter_mut().find(|(u, _)| u.approx_eq(t, DEFAULT_TOLERANCE)) {
                    Some(slot) => slot.1 = slot.1.oplus(w),
                    None => out.push((t.clone(), w)),
                }
            }
        }
        Support { entries: out }
    }
}

impl<T: SupportElement, S: Semiring> SupportElement for Support<T, S> {
    fn space(&self) -> &FiniteSpace {
        self.entries[0].0.space()
    }

    /// Same support and weights within `tol`, irrespective of entry order.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|(t, w)| other.entries.iter().any(|(u, v)| t.approx_eq(u, tol) && w.approx_eq(*v, tol)))
    }

    fn aligned_to(&self, space: &FiniteSpace) -> Result<Self> {
        let entries = self.entries.iter().map(|(t, w)| Ok((t.aligned_to(space)?, *w))).collect::<Result<_>>()?;
        Ok(Support { entries })
    }
}

impl<T: SupportElement, S: Semiring> Support<T, S> {
    pub fn space(&self) -> &FiniteSpace {
        SupportElement::space(self)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        SupportElement::approx_eq(self, other, tol)
    }
}

impl<T: fmt::Debug, S: Semiring> fmt::Debug for Support<T, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// The max-plus multiplication applied to a single density layer.
pub type Multiplier<'a, S> = dyn Fn(&Support<Density<S>, S>) -> Density<S> + Sync + 'a;

/// `nX(f)(φ)`.
pub fn eval_measure(f: &MaxPlusDensity, phi: &RealFunction) -> Result<f64> {
    f.eval(phi)
}

/// `n₁X(g)(φ)`.
pub fn eval_measure_times(g: &MaxTimesDensity, phi: &UnitFunction) -> Result<UnitScore> {
    g.eval(phi)
}

/// The probe that is 0 at point `i` and `-bound` elsewhere.
pub fn probe(space: &FiniteSpace, i: usize, bound: f64) -> RealFunction {
    let values = (0..space.len()).map(|j| if j == i { 0.0 } else { -bound }).collect();
    RealFunction::new(space, values).expect("probe values are finite")
}

/// Recovers the density of an idempotent measure given as a functional.
///
/// Evaluates the oracle on the probes of [`probe`]; a result within
/// [`PROBE_SLACK`] of `-bound` is read as bottom. Recovery is exact for
/// oracles of the form `eval_measure(f, ·)` whose finite weights all exceed
/// `-bound`.
pub fn density_from_functional<O>(oracle: O, space: &FiniteSpace, bound: f64) -> Result<MaxPlusDensity>
where
    O: Fn(&RealFunction) -> f64,
{
    if bound <= 0.0 || !bound.is_finite() {
        return Err(Error::NonPositiveBound(bound));
    }
    let weights = (0..space.len())
        .map(|i| {
            let v = oracle(&probe(space, i, bound));
            if v <= -bound + PROBE_SLACK {
                Ok(ExtendedScore::BOTTOM)
            } else {
                ExtendedScore::from_f64(v)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Density::new(space, weights)
}

/// The Dirac density `εX(x)`: 0 at `x`, bottom elsewhere.
pub fn dirac(x: &str, space: &FiniteSpace) -> Result<MaxPlusDensity> {
    Ok(Density::point_mass(space, space.index_of(x)?))
}

/// `ε₁X(x)`: 1 at `x`, 0 elsewhere.
pub fn dirac_times(x: &str, space: &FiniteSpace) -> Result<MaxTimesDensity> {
    Ok(Density::point_mass(space, space.index_of(x)?))
}

pub fn pushforward(g: &PointMap, f: &MaxPlusDensity) -> Result<MaxPlusDensity> {
    f.pushforward(g)
}

pub fn pushforward_times(g: &PointMap, f: &MaxTimesDensity) -> Result<MaxTimesDensity> {
    f.pushforward(g)
}

/// `κ(F)(x) = ⊕_f f(x) ⊗ F(f)`, for either semiring.
pub fn multiply_in<S: Semiring>(meta: &Support<Density<S>, S>) -> Density<S> {
    let space = meta.space().clone();
    let mut weights = vec![S::ZERO; space.len()];
    for (f, w) in meta.entries() {
        for (acc, fx) in weights.iter_mut().zip(f.weights()) {
            *acc = acc.oplus(fx.otimes(*w));
        }
    }
    Density { space, weights }
}

/// `κX(F)(x) = max { f(x) + F(f) }`.
pub fn multiply(meta: &MetaDensity) -> MaxPlusDensity {
    multiply_in(meta)
}

/// `κ₁X(F)(x) = max { f(x) · F(f) }`.
pub fn multiply_times(meta: &MetaTimesDensity) -> MaxTimesDensity {
    multiply_in(meta)
}

/// `μX(N)` realized through functionals: the measure
/// `φ ↦ max_i (λ_i + μ_i(φ))` is probed back into a density.
///
/// This never calls [`multiply`]; agreement of the two is the statement that
/// `s` is a morphism of the measure and density multiplications.
pub fn measure_multiplication(meta: &MetaDensity, bound: f64) -> Result<MaxPlusDensity> {
    let space = meta.space().clone();
    let oracle = |phi: &RealFunction| {
        meta.entries()
            .iter()
            .map(|(mu, lambda)| {
                let inner = mu.eval(phi).expect("support shares the space");
                lambda.value().expect("bottom weights are dropped") + inner
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    density_from_functional(oracle, &space, bound)
}

/// `D(ε)(f)`: the image of `f` under the Dirac embedding, as a second-level support.
pub fn lift_diracs<S: Semiring>(f: &Density<S>) -> Support<Density<S>, S> {
    let entries = f.support().map(|i| (Density::point_mass(f.space(), i), f.weight(i))).collect();
    Support { entries }
}

/// Both unit laws `κ ∘ D(ε) = id` and `κ ∘ ε_D = id` at `f`, using `mult`
/// as the multiplication.
pub fn check_unit_laws_with<S: Semiring>(f: &Density<S>, mult: &Multiplier<'_, S>, tol: f64) -> bool {
    let left = mult(&lift_diracs(f));
    let right = mult(&Support::single(f.clone()));
    left.approx_eq(f, tol) && right.approx_eq(f, tol)
}

/// Associativity `κ ∘ κ_D = κ ∘ D(κ)` at `g`, using `mult` as the
/// multiplication on densities.
pub fn check_associativity_with<S: Semiring>(
    g: &Support<Support<Density<S>, S>, S>,
    mult: &Multiplier<'_, S>,
    tol: f64,
) -> bool {
    let flattened_first = mult(&g.flatten());
    let pushed_first = match g.map(|m| mult(m)) {
        Ok(meta) => mult(&meta),
        Err(_) => return false,
    };
    flattened_first.approx_eq(&pushed_first, tol)
}

/// Unit laws of the max-plus density monad, exact on bottom patterns and
/// within `1e-12` on finite weights.
pub fn check_unit_laws(f: &MaxPlusDensity) -> bool {
    check_unit_laws_with(f, &multiply_in, crate::score::ARITHMETIC_TOLERANCE)
}

pub fn check_unit_laws_times(f: &MaxTimesDensity) -> bool {
    check_unit_laws_with(f, &multiply_in, crate::score::ARITHMETIC_TOLERANCE)
}

pub fn check_associativity(g: &ThirdLevel) -> bool {
    check_associativity_with(g, &multiply_in, DEFAULT_TOLERANCE)
}

pub fn check_associativity_times(g: &ThirdTimesLevel) -> bool {
    check_associativity_with(g, &multiply_in, DEFAULT_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::ExtendedScore as E;

    fn fin(x: f64) -> E {
        E::finite(x)
    }

    fn ab() -> FiniteSpace {
        FiniteSpace::new(["a", "b"]).unwrap()
    }

    fn abc() -> FiniteSpace {
        FiniteSpace::new(["a", "b", "c"]).unwrap()
    }

    fn mp(space: &FiniteSpace, w: &[E]) -> MaxPlusDensity {
        Density::new(space, w.to_vec()).unwrap()
    }

    fn mt(space: &FiniteSpace, w: &[f64]) -> MaxTimesDensity {
        Density::new(space, w.iter().map(|&x| UnitScore::new(x).unwrap()).collect()).unwrap()
    }

    #[test]
    fn constructors_reject_unnormalized_input() {
        let x = ab();
        assert!(matches!(Density::new(&x, vec![fin(-1.0), fin(-2.0)]), Err(Error::Unnormalized { .. })));
        assert!(matches!(Density::new(&x, vec![fin(0.0), fin(0.5)]), Err(Error::PositiveWeight(_))));
        assert!(Density::<E>::new(&x, vec![E::BOTTOM, E::BOTTOM]).is_err());
        let n = Density::normalize(&x, vec![fin(-1.0), fin(-3.0)]).unwrap();
        assert_eq!(n.weights(), &[fin(0.0), fin(-2.0)]);
        let t = Density::normalize(&x, vec![UnitScore::new(0.5).unwrap(), UnitScore::new(0.25).unwrap()]).unwrap();
        assert_eq!(t.weights(), &[UnitScore::ONE, UnitScore::new(0.5).unwrap()]);
    }

    #[test]
    fn eval_measure_examples() {
        let x = ab();
        let f = mp(&x, &[fin(0.0), fin(-1.0)]);
        let phi = RealFunction::new(&x, vec![2.0, 5.0]).unwrap();
        assert_eq!(eval_measure(&f, &phi).unwrap(), 4.0);
        assert_eq!(eval_measure(&dirac("a", &x).unwrap(), &phi).unwrap(), 2.0);
        assert_eq!(eval_measure(&f, &RealFunction::constant(&x, 0.0).unwrap()).unwrap(), 0.0);
        let other = RealFunction::constant(&abc(), 0.0).unwrap();
        assert!(matches!(eval_measure(&f, &other), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn eval_measure_times_examples() {
        let x = ab();
        let g = mt(&x, &[1.0, 0.5]);
        let phi = UnitFunction::new(&x, vec![0.2, 1.0]).unwrap();
        assert_eq!(eval_measure_times(&g, &phi).unwrap().get(), 0.5);
        assert_eq!(eval_measure_times(&dirac_times("b", &x).unwrap(), &phi).unwrap().get(), 1.0);
        assert_eq!(eval_measure_times(&g, &UnitFunction::constant(&x, 1.0).unwrap()).unwrap(), UnitScore::ONE);
    }

    #[test]
    fn density_from_functional_examples() {
        let x = ab();
        let f = mp(&x, &[fin(0.0), fin(-1.0)]);
        let back = density_from_functional(|phi| f.eval(phi).unwrap(), &x, 10.0).unwrap();
        assert_eq!(back.weights(), &[fin(0.0), fin(-1.0)]);

        let d = dirac("a", &x).unwrap();
        let back = density_from_functional(|phi| d.eval(phi).unwrap(), &x, DEFAULT_PROBE_BOUND).unwrap();
        assert_eq!(back, d);

        let g = mp(&x, &[fin(0.0), E::BOTTOM]);
        let back = density_from_functional(|phi| g.eval(phi).unwrap(), &x, 10.0).unwrap();
        assert!(back.weight(1).is_bottom());

        assert!(matches!(density_from_functional(|_| 0.0, &x, 0.0), Err(Error::NonPositiveBound(_))));
    }

    #[test]
    fn dirac_examples() {
        let x = ab();
        assert_eq!(dirac("a", &x).unwrap().weights(), &[fin(0.0), E::BOTTOM]);
        assert_eq!(dirac_times("a", &x).unwrap().weights(), &[UnitScore::ONE, UnitScore::ZERO]);
        assert!(matches!(dirac("z", &x), Err(Error::UnknownPoint(_))));
        let uv = FiniteSpace::new(["u", "v"]).unwrap();
        let g = PointMap::new(&x, &uv, [("a", "v"), ("b", "u")]);
        assert_eq!(pushforward(&g, &dirac("a", &x).unwrap()).unwrap(), dirac("v", &uv).unwrap());
    }

    #[test]
    fn pushforward_examples() {
        let x = abc();
        let uvw = FiniteSpace::new(["u", "v", "w"]).unwrap();
        let g = PointMap::new(&x, &uvw, [("a", "u"), ("b", "u"), ("c", "v")]);
        let f = mp(&x, &[fin(0.0), fin(-2.0), fin(-5.0)]);
        assert_eq!(pushforward(&g, &f).unwrap().weights(), &[fin(0.0), fin(-5.0), E::BOTTOM]);
        assert_eq!(pushforward(&PointMap::identity(&x), &f).unwrap(), f);

        let h = mt(&x, &[1.0, 0.3, 0.6]);
        let pushed = pushforward_times(&g, &h).unwrap();
        let w: Vec<f64> = pushed.weights().iter().map(|u| u.get()).collect();
        assert_eq!(w, vec![1.0, 0.6, 0.0]);

        let broken = PointMap::new(&x, &uvw, [("a", "u")]);
        assert!(matches!(pushforward(&broken, &f), Err(Error::InvalidMap(_))));
    }

    fn worked_meta() -> MetaDensity {
        let x = ab();
        Support::new(vec![(mp(&x, &[fin(0.0), E::BOTTOM]), fin(0.0)), (mp(&x, &[E::BOTTOM, fin(0.0)]), fin(-1.0))])
            .unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&worked_meta()).weights(), &[fin(0.0), fin(-1.0)]);

        let x = abc();
        let f = mp(&x, &[fin(0.0), fin(-1.5), E::BOTTOM]);
        assert_eq!(multiply(&Support::single(f.clone())), f);
        assert_eq!(multiply(&lift_diracs(&f)), f);
    }

    #[test]
    fn multiply_times_examples() {
        let x = ab();
        let meta = Support::new(vec![
            (mt(&x, &[1.0, 0.0]), UnitScore::ONE),
            (mt(&x, &[0.0, 1.0]), UnitScore::new(0.5).unwrap()),
        ])
        .unwrap();
        let w: Vec<f64> = multiply_times(&meta).weights().iter().map(|u| u.get()).collect();
        assert_eq!(w, vec![1.0, 0.5]);
        let f = mt(&x, &[0.25, 1.0]);
        assert_eq!(multiply_times(&Support::single(f.clone())), f);
        assert_eq!(multiply_times(&lift_diracs(&f)), f);
    }

    #[test]
    fn measure_multiplication_examples() {
        let x = abc();
        let f = mp(&x, &[fin(-3.0), fin(0.0), E::BOTTOM]);
        let single = Support::single(f.clone());
        assert_eq!(measure_multiplication(&single, 64.0).unwrap(), f);
        let via_probe = measure_multiplication(&worked_meta(), 64.0).unwrap();
        assert_eq!(via_probe.weights(), &[fin(0.0), fin(-1.0)]);
        assert!(measure_multiplication(&worked_meta(), -1.0).is_err());
    }

    #[test]
    fn support_constructor_rules() {
        let x = ab();
        let f = mp(&x, &[fin(0.0), E::BOTTOM]);
        let g = mp(&x, &[E::BOTTOM, fin(0.0)]);
        let dropped = MetaDensity::new(vec![(f.clone(), fin(0.0)), (g.clone(), E::BOTTOM)]).unwrap();
        assert_eq!(dropped.len(), 1);
        assert!(matches!(
            MetaDensity::new(vec![(f.clone(), fin(0.0)), (f.clone(), fin(-1.0))]),
            Err(Error::DuplicateSupport(0, 1))
        ));
        let merged = MetaDensity::merged(vec![(f.clone(), fin(-1.0)), (f.clone(), fin(0.0))]).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.entries()[0].1, fin(0.0));
        assert!(matches!(MetaDensity::new(vec![(f.clone(), fin(-1.0))]), Err(Error::Unnormalized { .. })));
        assert!(matches!(MetaDensity::new(vec![]), Err(Error::EmptySupport)));
        let other = mp(&abc(), &[fin(0.0), E::BOTTOM, E::BOTTOM]);
        assert!(MetaDensity::new(vec![(f, fin(0.0)), (other, fin(-1.0))]).is_err());
    }

    #[test]
    fn unit_laws_examples() {
        let x = abc();
        assert!(check_unit_laws(&dirac("a", &x).unwrap()));
        assert!(check_unit_laws(&mp(&x, &[fin(0.0), fin(-1.0), E::BOTTOM])));
        assert!(check_unit_laws_times(&mt(&x, &[1.0, 0.3, 0.0])));
    }

    #[test]
    fn associativity_examples() {
        let single = ThirdLevel::single(worked_meta());
        assert!(check_associativity(&single));

        let x = ab();
        let m1 = worked_meta();
        let m2 = MetaDensity::new(vec![
            (mp(&x, &[fin(0.0), fin(-0.5)]), fin(0.0)),
            (mp(&x, &[fin(-2.0), fin(0.0)]), fin(-0.25)),
        ])
        .unwrap();
        let g = ThirdLevel::new(vec![(m1, fin(-0.75)), (m2, fin(0.0))]).unwrap();
        assert!(check_associativity(&g));
        // path A by hand: flatten weights are (f1:-0.75, f2:-1.75, f3:0, f4:-0.25);
        // κ gives a = max(-0.75, -2.25, 0) = 0, b = max(-0.5, 0-0.25) = -0.25.
        assert_eq!(multiply(&g.flatten()).weights(), &[fin(0.0), fin(-0.25)]);
    }
}
