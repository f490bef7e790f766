//! Finite carrier spaces and functions on them.
//!
//! A finite space stands in for a compactum: every subset is clopen and
//! every function is continuous, so all topological side conditions hold
//! trivially. Values attached to a space are stored by position in the
//! label sequence; operations that receive objects on the same set of
//! labels in a different order realign them by label first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::score::UnitScore;

/// Products above this (negative) bound count as non-negative when checking
/// comonotonicity.
pub const COMONOTONE_SLACK: f64 = 1e-12;

struct SpaceData {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A non-empty ordered set of distinct point labels.
#[derive(Clone)]
pub struct FiniteSpace(Arc<SpaceData>);

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(FiniteSpace(Arc::new(SpaceData { labels, index })))
    }

    /// A space with labels `{prefix}0 .. {prefix}{n-1}`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0.index.get(label).copied().ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.index.contains_key(label)
    }

    /// Same labels in the same order.
    pub fn same_order(&self, other: &FiniteSpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    /// For each point of `self`, its position in `other`. Fails unless the
    /// two spaces carry the same label set.
    pub fn permutation_to(&self, other: &FiniteSpace) -> Result<Vec<usize>> {
        if self.len() != other.len() {
            return Err(Error::SpaceMismatch);
        }
        self.0.labels.iter().map(|l| other.0.index.get(l).copied().ok_or(Error::SpaceMismatch)).collect()
    }

    /// The subspace without point `i`, or `None` if that would leave it empty.
    pub fn without(&self, i: usize) -> Option<FiniteSpace> {
        if self.len() <= 1 {
            return None;
        }
        let labels = self.0.labels.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, l)| l.clone());
        FiniteSpace::new(labels).ok()
    }
}

/// Spaces are equal when they carry the same label set.
impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_order(other) || self.permutation_to(other).is_ok()
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.labels.iter()).finish()
    }
}

/// Reorders `values` (indexed by `from`) into the order of `to`.
pub(crate) fn realign<T: Clone>(values: &[T], from: &FiniteSpace, to: &FiniteSpace) -> Result<Vec<T>> {
    if from.same_order(to) {
        return Ok(values.to_vec());
    }
    let perm = to.permutation_to(from)?;
    Ok(perm.into_iter().map(|j| values[j].clone()).collect())
}

/// A finite real-valued function on a space.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFunction {
    space: FiniteSpace,
    values: Vec<f64>,
}

impl RealFunction {
    pub fn new(space: &FiniteSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::LengthMismatch { expected: space.len(), found: values.len() });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidScore(bad));
        }
        Ok(RealFunction { space: space.clone(), values })
    }

    /// Builds a function from `(label, value)` pairs that cover the space exactly.
    pub fn from_pairs<'a, I>(space: &FiniteSpace, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let values = values_by_label(space, pairs)?;
        Self::new(space, values)
    }

    /// The constant function `c_X`.
    pub fn constant(space: &FiniteSpace, c: f64) -> Result<Self> {
        Self::new(space, vec![c; space.len()])
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn get(&self, label: &str) -> Result<f64> {
        Ok(self.values[self.space.index_of(label)?])
    }

    /// `λ_X + φ`.
    pub fn shifted(&self, lambda: f64) -> RealFunction {
        RealFunction { space: self.space.clone(), values: self.values.iter().map(|v| v + lambda).collect() }
    }

    /// Pointwise maximum `φ ∨ ψ`.
    pub fn join(&self, other: &RealFunction) -> Result<RealFunction> {
        let other = other.aligned_to(&self.space)?;
        Ok(RealFunction {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.max(*b)).collect(),
        })
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// The same function expressed in the label order of `space`.
    pub fn aligned_to(&self, space: &FiniteSpace) -> Result<RealFunction> {
        Ok(RealFunction { space: space.clone(), values: realign(&self.values, &self.space, space)? })
    }
}

/// A `[0, 1]`-valued function on a space.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitFunction {
    space: FiniteSpace,
    values: Vec<UnitScore>,
}

impl UnitFunction {
    pub fn new(space: &FiniteSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::LengthMismatch { expected: space.len(), found: values.len() });
        }
        let values = values.into_iter().map(UnitScore::new).collect::<Result<_>>()?;
        Ok(UnitFunction { space: space.clone(), values })
    }

    pub fn constant(space: &FiniteSpace, c: f64) -> Result<Self> {
        Self::new(space, vec![c; space.len()])
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[UnitScore] {
        &self.values
    }

    pub fn at(&self, i: usize) -> UnitScore {
        self.values[i]
    }

    pub fn aligned_to(&self, space: &FiniteSpace) -> Result<UnitFunction> {
        Ok(UnitFunction { space: space.clone(), values: realign(&self.values, &self.space, space)? })
    }
}

/// A subset of a finite space.
#[derive(Clone, Debug)]
pub struct SubsetMask {
    space: FiniteSpace,
    members: Vec<bool>,
}

impl SubsetMask {
    pub fn empty(space: &FiniteSpace) -> Self {
        SubsetMask { space: space.clone(), members: vec![false; space.len()] }
    }

    pub fn full(space: &FiniteSpace) -> Self {
        SubsetMask { space: space.clone(), members: vec![true; space.len()] }
    }

    pub fn from_labels<'a, I: IntoIterator<Item = &'a str>>(space: &FiniteSpace, labels: I) -> Result<Self> {
        let mut mask = Self::empty(space);
        for l in labels {
            mask.members[space.index_of(l)?] = true;
        }
        Ok(mask)
    }

    /// The subset encoded by the low `|X|` bits of `bits`.
    pub fn from_bits(space: &FiniteSpace, bits: usize) -> Self {
        SubsetMask { space: space.clone(), members: (0..space.len()).map(|i| bits >> i & 1 == 1).collect() }
    }

    /// Bitmask encoding; only meaningful for spaces of at most 63 points.
    pub fn bits(&self) -> usize {
        self.members.iter().enumerate().filter(|(_, &m)| m).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.members[i] = true;
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices().map(|i| self.space.label(i)).collect()
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        let theirs: BTreeSet<&str> = other.labels().into_iter().collect();
        self.labels().iter().all(|l| theirs.contains(l))
    }
}

/// Two masks are equal when they select the same labels.
impl PartialEq for SubsetMask {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.is_subset_of(other) && other.is_subset_of(self)
    }
}

/// A map between finite spaces, stored by label.
///
/// The assignment may be partial or point outside the target; such maps are
/// reported by [`validate_map`] and rejected by [`PointMap::resolve`].
#[derive(Clone, Debug)]
pub struct PointMap {
    source: FiniteSpace,
    target: FiniteSpace,
    assignment: HashMap<String, String>,
}

impl PointMap {
    pub fn new<'a, I>(source: &FiniteSpace, target: &FiniteSpace, pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        PointMap {
            source: source.clone(),
            target: target.clone(),
            assignment: pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    /// A map given by target indices, one per source point.
    pub fn from_indices(source: &FiniteSpace, target: &FiniteSpace, images: &[usize]) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::LengthMismatch { expected: source.len(), found: images.len() });
        }
        let mut assignment = HashMap::with_capacity(images.len());
        for (i, &j) in images.iter().enumerate() {
            if j >= target.len() {
                return Err(Error::InvalidMap(format!("image index {j} outside target")));
            }
            assignment.insert(source.label(i).to_string(), target.label(j).to_string());
        }
        Ok(PointMap { source: source.clone(), target: target.clone(), assignment })
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        Self::new(space, space, space.labels().iter().map(|l| (l.as_str(), l.as_str())))
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    /// Target index of every source point, in source order.
    pub fn resolve(&self) -> Result<Vec<usize>> {
        if let Some(extra) = self.assignment.keys().find(|k| !self.source.contains(k)) {
            return Err(Error::InvalidMap(format!("{extra:?} is not a source point")));
        }
        self.source
            .labels()
            .iter()
            .map(|l| {
                let image = self.assignment.get(l).ok_or_else(|| Error::InvalidMap(format!("no image for {l:?}")))?;
                self.target.index_of(image).map_err(|_| Error::InvalidMap(format!("{image:?} is not a target point")))
            })
            .collect()
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PointMap) -> Result<PointMap> {
        if inner.target != self.source {
            return Err(Error::SpaceMismatch);
        }
        let first = inner.resolve()?;
        let second = self.resolve()?;
        let images: Vec<usize> =
            first.iter().map(|&j| Ok(second[self.source.index_of(inner.target.label(j))?])).collect::<Result<_>>()?;
        PointMap::from_indices(&inner.source, &self.target, &images)
    }
}

/// `φ_t = {x | φ(x) ≥ t}`.
pub fn level_set(phi: &RealFunction, t: f64) -> SubsetMask {
    SubsetMask { space: phi.space.clone(), members: phi.values.iter().map(|&v| v >= t).collect() }
}

/// Whether `φ` and `ψ` are never ordered oppositely at two points.
pub fn comonotone(phi: &RealFunction, psi: &RealFunction) -> Result<bool> {
    let psi = psi.aligned_to(&phi.space)?;
    let (a, b) = (&phi.values, &psi.values);
    for i in 0..a.len() {
        for j in 0..a.len() {
            if (a[i] - a[j]) * (b[i] - b[j]) < -COMONOTONE_SLACK {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `g` is total on its source and lands in its target.
pub fn validate_map(g: &PointMap) -> bool {
    g.resolve().is_ok()
}

pub(crate) fn values_by_label<'a, T, I>(space: &FiniteSpace, pairs: I) -> Result<Vec<T>>
where
    T: Copy,
    I: IntoIterator<Item = (&'a str, T)>,
{
    let mut slots: Vec<Option<T>> = vec![None; space.len()];
    for (label, value) in pairs {
        let i = space.index_of(label)?;
        if slots[i].replace(value).is_some() {
            return Err(Error::Coverage(format!("{label:?} given twice")));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Coverage(format!("missing value for {:?}", space.label(i)))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> FiniteSpace {
        FiniteSpace::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn space_rejects_empty_and_duplicates() {
        assert!(matches!(FiniteSpace::new(Vec::<String>::new()), Err(Error::EmptySpace)));
        assert!(matches!(FiniteSpace::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn spaces_compare_as_sets() {
        let x = abc();
        let y = FiniteSpace::new(["c", "a", "b"]).unwrap();
        assert_eq!(x, y);
        assert!(!x.same_order(&y));
        assert_ne!(x, FiniteSpace::new(["a", "b"]).unwrap());
    }

    #[test]
    fn level_set_examples() {
        let x = abc();
        let phi = RealFunction::new(&x, vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(level_set(&phi, 1.0).labels(), vec!["b", "c"]);
        assert_eq!(level_set(&phi, -1.0).len(), 3);
        assert!(level_set(&phi, 3.0).is_empty());
    }

    #[test]
    fn comonotone_examples() {
        let x = abc();
        let phi = RealFunction::new(&x, vec![0.0, 1.0, 2.0]).unwrap();
        let psi = RealFunction::new(&x, vec![0.0, 0.0, 1.0]).unwrap();
        assert!(comonotone(&phi, &psi).unwrap());
        let constant = RealFunction::constant(&x, 4.0).unwrap();
        let wild = RealFunction::new(&x, vec![3.0, -1.0, 2.0]).unwrap();
        assert!(comonotone(&constant, &wild).unwrap());

        let ab = FiniteSpace::new(["a", "b"]).unwrap();
        let up = RealFunction::new(&ab, vec![0.0, 1.0]).unwrap();
        let down = RealFunction::new(&ab, vec![1.0, 0.0]).unwrap();
        assert!(!comonotone(&up, &down).unwrap());
        assert!(matches!(comonotone(&phi, &up), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn validate_map_examples() {
        let x = abc();
        let uv = FiniteSpace::new(["u", "v"]).unwrap();
        assert!(validate_map(&PointMap::identity(&x)));
        assert!(!validate_map(&PointMap::new(&x, &uv, [("a", "u"), ("b", "v")])));
        assert!(!validate_map(&PointMap::new(&x, &uv, [("a", "u"), ("b", "v"), ("c", "w")])));
        assert!(!validate_map(&PointMap::new(&x, &uv, [("a", "u"), ("b", "v"), ("c", "v"), ("d", "u")])));
        assert!(validate_map(&PointMap::new(&x, &uv, [("a", "u"), ("b", "v"), ("c", "v")])));
    }

    #[test]
    fn functions_realign_by_label() {
        let x = abc();
        let y = FiniteSpace::new(["c", "b", "a"]).unwrap();
        let phi = RealFunction::from_pairs(&y, [("a", 1.0), ("b", 2.0), ("c", 3.0)]).unwrap();
        assert_eq!(phi.values(), &[3.0, 2.0, 1.0]);
        assert_eq!(phi.aligned_to(&x).unwrap().values(), &[1.0, 2.0, 3.0]);
        assert!(RealFunction::from_pairs(&x, [("a", 1.0), ("b", 2.0)]).is_err());
        assert!(RealFunction::new(&x, vec![1.0, f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn composition_of_maps() {
        let x = abc();
        let uv = FiniteSpace::new(["u", "v"]).unwrap();
        let w = FiniteSpace::new(["w"]).unwrap();
        let h = PointMap::new(&x, &uv, [("a", "u"), ("b", "u"), ("c", "v")]);
        let g = PointMap::new(&uv, &w, [("u", "w"), ("v", "w")]);
        assert_eq!(g.compose(&h).unwrap().resolve().unwrap(), vec![0, 0, 0]);
    }

    fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5i32..5, n).prop_map(|v| v.into_iter().map(f64::from).collect())
    }

    proptest! {
        #[test]
        fn level_set_is_antitone(v in values(5), t1 in -6.0f64..6.0, dt in 0.0f64..4.0) {
            let x = FiniteSpace::indexed("p", 5).unwrap();
            let phi = RealFunction::new(&x, v).unwrap();
            prop_assert!(level_set(&phi, t1 + dt).is_subset_of(&level_set(&phi, t1)));
        }

        #[test]
        fn level_set_constant_between_values(v in values(5), s in 0.01f64..0.99) {
            let x = FiniteSpace::indexed("p", 5).unwrap();
            let phi = RealFunction::new(&x, v.clone()).unwrap();
            let mut sorted = v.clone();
            sorted.sort_by(f64::total_cmp);
            sorted.dedup();
            for w in sorted.windows(2) {
                let inside = w[0] + s * (w[1] - w[0]);
                prop_assert_eq!(level_set(&phi, inside), level_set(&phi, w[1]));
            }
        }

        #[test]
        fn comonotone_symmetric_reflexive_shift(a in values(4), b in values(4), c in -10.0f64..10.0) {
            let x = FiniteSpace::indexed("p", 4).unwrap();
            let phi = RealFunction::new(&x, a).unwrap();
            let psi = RealFunction::new(&x, b).unwrap();
            prop_assert!(comonotone(&phi, &phi).unwrap());
            prop_assert_eq!(comonotone(&phi, &psi).unwrap(), comonotone(&psi, &phi).unwrap());
            prop_assert!(comonotone(&phi, &phi.shifted(c)).unwrap());
        }
    }
}
