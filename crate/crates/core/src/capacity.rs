//! Capacities, possibility capacities and the max-plus fuzzy integral.
//!
//! The max-plus integral of `φ` against a capacity `c` is
//! `max_t ln c(φ_t) + t`, the logarithmic form of the Shilkret integral.
//! Level sets only change at values of `φ`, and between two consecutive
//! values the candidate grows with `t`, so the supremum is attained on the
//! value set of `φ` and the integral is computed exactly.

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::measure::{Density, MaxTimesDensity, Support, SupportElement};
use crate::random;
use crate::score::{exp_bridge, log_bridge, otimes, ExtendedScore, Semiring, UnitScore, DEFAULT_TOLERANCE};
use crate::space::{level_set, FiniteSpace, RealFunction, SubsetMask};

/// Largest space a full capacity table is built for.
pub const MAX_CAPACITY_POINTS: usize = 20;

/// A monotone normalized set function, stored as a table indexed by the
/// bitmask of each subset.
#[derive(Clone, Debug, PartialEq)]
pub struct Capacity {
    space: FiniteSpace,
    table: Vec<UnitScore>,
}

impl Capacity {
    pub fn new(space: &FiniteSpace, table: Vec<f64>) -> Result<Self> {
        check_size(space)?;
        let full = (1usize << space.len()) - 1;
        if table.len() != full + 1 {
            return Err(Error::LengthMismatch { expected: full + 1, found: table.len() });
        }
        let table: Vec<UnitScore> = table.into_iter().map(UnitScore::new).collect::<Result<_>>()?;
        if table[0] != UnitScore::ZERO {
            return Err(Error::InvalidCapacity(format!("c(∅) = 0 (got {})", table[0])));
        }
        if table[full] != UnitScore::ONE {
            return Err(Error::InvalidCapacity(format!("c(X) = 1 (got {})", table[full])));
        }
        for bits in 1..=full {
            for i in 0..space.len() {
                let smaller = bits & !(1 << i);
                if smaller != bits && table[smaller] > table[bits] {
                    let a = SubsetMask::from_bits(space, smaller).labels().join("|");
                    let b = SubsetMask::from_bits(space, bits).labels().join("|");
                    return Err(Error::InvalidCapacity(format!("monotonicity: c({{{a}}}) > c({{{b}}})")));
                }
            }
        }
        Ok(Capacity { space: space.clone(), table })
    }

    /// Tabulates `value` over every subset (given as a bitmask).
    pub fn from_fn(space: &FiniteSpace, value: impl Fn(usize) -> f64) -> Result<Self> {
        check_size(space)?;
        let table = (0..1usize << space.len()).map(value).collect();
        Self::new(space, table)
    }

    /// The Dirac capacity: 1 on sets containing point `i`, 0 elsewhere.
    pub fn dirac(space: &FiniteSpace, i: usize) -> Result<Self> {
        Self::from_fn(space, |bits| if bits >> i & 1 == 1 { 1.0 } else { 0.0 })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// Table entries in bitmask order.
    pub fn table(&self) -> &[UnitScore] {
        &self.table
    }

    pub fn value_bits(&self, bits: usize) -> UnitScore {
        self.table[bits]
    }

    pub fn value(&self, set: &SubsetMask) -> Result<UnitScore> {
        if set.space().same_order(&self.space) {
            return Ok(self.table[set.bits()]);
        }
        if set.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        let labels = set.labels();
        let aligned = SubsetMask::from_labels(&self.space, labels)?;
        Ok(self.table[aligned.bits()])
    }

    /// `c({x})` for every point.
    pub fn singletons(&self) -> Vec<UnitScore> {
        (0..self.space.len()).map(|i| self.table[1 << i]).collect()
    }

    /// Entrywise comparison within `tol`, matched by label.
    pub fn approx_eq(&self, other: &Capacity, tol: f64) -> bool {
        if self.space != other.space {
            return false;
        }
        (0..self.table.len()).all(|bits| {
            let set = SubsetMask::from_bits(&self.space, bits);
            match other.value(&set) {
                Ok(v) => (v.get() - self.table[bits].get()).abs() <= tol,
                Err(_) => false,
            }
        })
    }

    /// Entrywise `self ≤ other`.
    pub fn le(&self, other: &Capacity) -> bool {
        (0..self.table.len()).all(|bits| {
            let set = SubsetMask::from_bits(&self.space, bits);
            other.value(&set).map(|v| self.table[bits] <= v).unwrap_or(false)
        })
    }
}

fn check_size(space: &FiniteSpace) -> Result<()> {
    if space.len() > MAX_CAPACITY_POINTS {
        return Err(Error::SpaceTooLarge { found: space.len(), max: MAX_CAPACITY_POINTS });
    }
    Ok(())
}

/// A possibility distribution: singleton values of a maxitive capacity.
#[derive(Clone, Debug, PartialEq)]
pub struct PossibilityProfile(MaxTimesDensity);

impl PossibilityProfile {
    pub fn new(space: &FiniteSpace, singletons: Vec<f64>) -> Result<Self> {
        let values = singletons.into_iter().map(UnitScore::new).collect::<Result<_>>()?;
        Ok(PossibilityProfile(Density::new(space, values)?))
    }

    pub fn space(&self) -> &FiniteSpace {
        self.0.space()
    }

    pub fn singletons(&self) -> &[UnitScore] {
        self.0.weights()
    }

    pub fn at(&self, i: usize) -> UnitScore {
        self.0.weight(i)
    }

    /// The profile read as a max-times density; the data is identical.
    pub fn as_density(&self) -> &MaxTimesDensity {
        &self.0
    }

    pub fn into_density(self) -> MaxTimesDensity {
        self.0
    }

    /// `max_{x ∈ A} π(x)`, 0 on the empty set.
    pub fn value(&self, set: &SubsetMask) -> Result<UnitScore> {
        let set = if set.space().same_order(self.space()) {
            set.clone()
        } else {
            SubsetMask::from_labels(self.space(), set.labels())?
        };
        Ok(set.indices().fold(UnitScore::ZERO, |acc, i| acc.oplus(self.at(i))))
    }

    /// The Dirac profile at point `i`.
    pub fn dirac(space: &FiniteSpace, i: usize) -> Self {
        PossibilityProfile(Density::point_mass(space, i))
    }
}

impl From<MaxTimesDensity> for PossibilityProfile {
    fn from(d: MaxTimesDensity) -> Self {
        PossibilityProfile(d)
    }
}

impl SupportElement for PossibilityProfile {
    fn space(&self) -> &FiniteSpace {
        self.0.space()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    fn aligned_to(&self, space: &FiniteSpace) -> Result<Self> {
        Ok(PossibilityProfile(self.0.aligned_to(space)?))
    }
}

/// A finitely supported possibility capacity on possibility capacities.
pub type MetaPossibility = Support<PossibilityProfile, UnitScore>;

/// The maxitive capacity `A ↦ max_{x∈A} π(x)`.
pub fn capacity_from_profile(pi: &PossibilityProfile) -> Capacity {
    let space = pi.space();
    let n = space.len();
    assert!(n <= MAX_CAPACITY_POINTS, "capacity tables are limited to {MAX_CAPACITY_POINTS} points");
    let mut table = vec![UnitScore::ZERO; 1 << n];
    for bits in 1..table.len() {
        let low = bits.trailing_zeros() as usize;
        table[bits] = table[bits & (bits - 1)].oplus(pi.at(low));
    }
    Capacity { space: space.clone(), table }
}

/// Whether `c(A ∪ B) = max(c(A), c(B))` for all subsets.
pub fn is_possibility(c: &Capacity) -> bool {
    let n = c.space.len();
    (1..c.table.len()).all(|bits| {
        let from_singletons =
            (0..n).filter(|i| bits >> i & 1 == 1).fold(UnitScore::ZERO, |acc, i| acc.oplus(c.table[1 << i]));
        (from_singletons.get() - c.table[bits].get()).abs() <= DEFAULT_TOLERANCE
    })
}

/// The singleton profile of a maxitive capacity, `None` if `c` is not maxitive.
pub fn profile_of(c: &Capacity) -> Option<PossibilityProfile> {
    if !is_possibility(c) {
        return None;
    }
    let values = c.singletons().into_iter().map(|u| u.get()).collect();
    PossibilityProfile::new(&c.space, values).ok()
}

/// `max_t ln c(φ_t) + t`, with `t` ranging over the values of `φ`.
pub fn maxplus_integral(c: &Capacity, phi: &RealFunction) -> Result<ExtendedScore> {
    let phi = phi.aligned_to(&c.space)?;
    let mut order: Vec<usize> = (0..phi.values().len()).collect();
    order.sort_by(|&a, &b| phi.at(b).total_cmp(&phi.at(a)));
    let mut best = ExtendedScore::BOTTOM;
    let mut bits = 0usize;
    let mut k = 0;
    while k < order.len() {
        let t = phi.at(order[k]);
        while k < order.len() && phi.at(order[k]) == t {
            bits |= 1 << order[k];
            k += 1;
        }
        let candidate = otimes(log_bridge(c.table[bits]), ExtendedScore::finite(t));
        best = best.oplus(candidate);
    }
    Ok(best)
}

/// The same integral computed from the level-set definition, one `t` at a
/// time. Slower; kept as a reference for [`maxplus_integral`].
pub fn maxplus_integral_by_levels(c: &Capacity, phi: &RealFunction) -> Result<ExtendedScore> {
    let phi = phi.aligned_to(&c.space)?;
    let mut best = ExtendedScore::BOTTOM;
    for &t in phi.values() {
        let level = level_set(&phi, t);
        best = best.oplus(otimes(log_bridge(c.value(&level)?), ExtendedScore::finite(t)));
    }
    Ok(best)
}

/// `iX(π)(φ) = max { φ(x) + ln π(x) }`.
pub fn possibility_integral(pi: &PossibilityProfile, phi: &RealFunction) -> Result<ExtendedScore> {
    let phi = phi.aligned_to(pi.space())?;
    Ok(phi
        .values()
        .iter()
        .zip(pi.singletons())
        .fold(ExtendedScore::BOTTOM, |acc, (&v, &u)| acc.oplus(otimes(ExtendedScore::finite(v), log_bridge(u)))))
}

/// Whether the singleton formula and the level-set formula agree on `(π, φ)`.
pub fn check_repr_with(pi: &PossibilityProfile, phi: &RealFunction, tol: f64) -> Result<bool> {
    let direct = possibility_integral(pi, phi)?;
    let by_levels = maxplus_integral(&capacity_from_profile(pi), phi)?;
    Ok(direct.approx_eq(by_levels, tol))
}

pub fn check_repr(pi: &PossibilityProfile, phi: &RealFunction) -> Result<bool> {
    check_repr_with(pi, phi, DEFAULT_TOLERANCE)
}

/// The functional `φ ↦ ∫ φ dc`.
///
/// The returned closure panics when applied to a function on another space.
pub fn integral_functional(c: &Capacity) -> impl Fn(&RealFunction) -> ExtendedScore + Clone + Send + Sync {
    let c = c.clone();
    move |phi: &RealFunction| maxplus_integral(&c, phi).expect("function lives on the capacity's space")
}

/// The probe that is 0 on the set `bits` and `-bound` off it.
pub fn set_probe(space: &FiniteSpace, bits: usize, bound: f64) -> RealFunction {
    let values = (0..space.len()).map(|i| if bits >> i & 1 == 1 { 0.0 } else { -bound }).collect();
    RealFunction::new(space, values).expect("probe values are finite")
}

/// Reads a capacity back from an integral-like functional:
/// `c(A) = exp(min(0, I(φ_{A,M})))`, `c(∅) = 0`.
pub fn recover_capacity<O>(oracle: O, space: &FiniteSpace, bound: f64) -> Result<Capacity>
where
    O: Fn(&RealFunction) -> ExtendedScore,
{
    if bound <= 0.0 || !bound.is_finite() {
        return Err(Error::NonPositiveBound(bound));
    }
    check_size(space)?;
    let mut table = vec![0.0; 1 << space.len()];
    for (bits, slot) in table.iter_mut().enumerate().skip(1) {
        let v = oracle(&set_probe(space, bits, bound));
        let clamped = if v > ExtendedScore::ZERO { ExtendedScore::ZERO } else { v };
        *slot = exp_bridge(clamped)?.get();
    }
    Capacity::new(space, table)
}

/// Outcome of one condition of the characterization battery.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConditionOutcome {
    pub condition: &'static str,
    pub checked: usize,
    pub passed: bool,
    /// Inputs of the first violation.
    pub witness: Option<serde_json::Value>,
}

/// Normalization, comonotone maxitivity and translation, checked on random inputs.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CharacterizationReport {
    pub normalization: ConditionOutcome,
    pub comonotone_max: ConditionOutcome,
    pub translation: ConditionOutcome,
}

impl CharacterizationReport {
    pub fn passed(&self) -> bool {
        self.normalization.passed && self.comonotone_max.passed && self.translation.passed
    }

    pub fn conditions(&self) -> [&ConditionOutcome; 3] {
        [&self.normalization, &self.comonotone_max, &self.translation]
    }
}

/// Range of the random function values used by the battery.
const FUNCTION_RANGE: f64 = 5.0;

pub fn check_characterization<O>(oracle: O, space: &FiniteSpace, trials: usize, seed: u64) -> CharacterizationReport
where
    O: Fn(&RealFunction) -> ExtendedScore,
{
    check_characterization_with(oracle, space, trials, seed, DEFAULT_TOLERANCE)
}

/// Tests `I(1_X) = 1`, `I(φ ∨ ψ) = I(φ) ∨ I(ψ)` on `trials` random
/// comonotone pairs and `I(λ + φ) = λ + I(φ)` on `trials` random shifts.
pub fn check_characterization_with<O>(
    oracle: O,
    space: &FiniteSpace,
    trials: usize,
    seed: u64,
    tol: f64,
) -> CharacterizationReport
where
    O: Fn(&RealFunction) -> ExtendedScore,
{
    let one = RealFunction::constant(space, 1.0).expect("finite constant");
    let at_one = oracle(&one);
    let normalization = ConditionOutcome {
        condition: "I(1_X) = 1",
        checked: 1,
        passed: at_one.approx_eq(ExtendedScore::finite(1.0), tol),
        witness: (!at_one.approx_eq(ExtendedScore::finite(1.0), tol))
            .then(|| json!({ "phi": one.values(), "value": at_one })),
    };

    let mut rng = random::trial_rng(seed, 0);
    let mut comonotone_max = ConditionOutcome {
        condition: "I(phi v psi) = I(phi) v I(psi) for comonotone phi, psi",
        checked: 0,
        passed: true,
        witness: None,
    };
    for _ in 0..trials {
        let (phi, psi) = random::comonotone_pair(&mut rng, space, -FUNCTION_RANGE, FUNCTION_RANGE);
        let joined = phi.join(&psi).expect("same space");
        let lhs = oracle(&joined);
        let rhs = oracle(&phi).oplus(oracle(&psi));
        comonotone_max.checked += 1;
        if !lhs.approx_eq(rhs, tol) {
            comonotone_max.passed = false;
            comonotone_max.witness = Some(json!({
                "phi": phi.values(), "psi": psi.values(), "lhs": lhs, "rhs": rhs,
            }));
            break;
        }
    }

    let mut rng = random::trial_rng(seed, 1);
    let mut translation =
        ConditionOutcome { condition: "I(lambda_X + phi) = lambda + I(phi)", checked: 0, passed: true, witness: None };
    for _ in 0..trials {
        let phi = random::real_function(&mut rng, space, -FUNCTION_RANGE, FUNCTION_RANGE);
        let lambda = rng.gen_range(-FUNCTION_RANGE..FUNCTION_RANGE);
        let lhs = oracle(&phi.shifted(lambda));
        let rhs = otimes(ExtendedScore::finite(lambda), oracle(&phi));
        translation.checked += 1;
        if !lhs.approx_eq(rhs, tol) {
            translation.passed = false;
            translation.witness = Some(json!({
                "phi": phi.values(), "lambda": lambda, "lhs": lhs, "rhs": rhs,
            }));
            break;
        }
    }

    CharacterizationReport { normalization, comonotone_max, translation }
}

/// `ρ(x) = max_i w_i · π_i(x)`: the multiplication of the possibility monad
/// on a finitely supported argument.
pub fn possibility_mult(meta: &MetaPossibility) -> PossibilityProfile {
    let space = meta.space().clone();
    let mut values = vec![UnitScore::ZERO; space.len()];
    for (pi, w) in meta.entries() {
        for (acc, v) in values.iter_mut().zip(pi.singletons()) {
            *acc = acc.oplus(v.otimes(*w));
        }
    }
    PossibilityProfile(Density::new(&space, values).expect("a unit-weight profile attains 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> FiniteSpace {
        FiniteSpace::new(["a", "b", "c"]).unwrap()
    }

    fn worked() -> (PossibilityProfile, RealFunction) {
        let x = abc();
        (PossibilityProfile::new(&x, vec![1.0, 0.5, 0.1]).unwrap(), RealFunction::new(&x, vec![0.0, 1.0, 2.0]).unwrap())
    }

    fn close(a: ExtendedScore, b: f64, tol: f64) -> bool {
        a.value().map(|v| (v - b).abs() <= tol).unwrap_or(false)
    }

    #[test]
    fn capacity_validation() {
        let x = FiniteSpace::new(["a", "b"]).unwrap();
        assert!(Capacity::new(&x, vec![0.0, 0.3, 0.3, 1.0]).is_ok());
        assert!(matches!(Capacity::new(&x, vec![0.0, 0.3, 0.3, 0.9]), Err(Error::InvalidCapacity(_))));
        assert!(matches!(Capacity::new(&x, vec![0.1, 0.3, 0.3, 1.0]), Err(Error::InvalidCapacity(_))));
        assert!(matches!(Capacity::new(&x, vec![0.0, 0.3, 0.3]), Err(Error::LengthMismatch { .. })));
        let y = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let err = Capacity::new(&y, vec![0.0, 0.5, 0.2, 0.4, 0.1, 0.5, 0.3, 1.0]).unwrap_err();
        assert!(err.to_string().contains("monotonicity"), "{err}");
        let big = FiniteSpace::indexed("p", 21).unwrap();
        assert!(matches!(Capacity::dirac(&big, 0), Err(Error::SpaceTooLarge { .. })));
    }

    #[test]
    fn capacity_from_profile_examples() {
        let (pi, _) = worked();
        let c = capacity_from_profile(&pi);
        let x = pi.space();
        assert_eq!(c.value(&SubsetMask::from_labels(x, ["b", "c"]).unwrap()).unwrap().get(), 0.5);
        assert_eq!(c.value(&SubsetMask::empty(x)).unwrap(), UnitScore::ZERO);
        assert_eq!(c.value(&SubsetMask::full(x)).unwrap(), UnitScore::ONE);
    }

    #[test]
    fn is_possibility_examples() {
        let (pi, _) = worked();
        assert!(is_possibility(&capacity_from_profile(&pi)));
        let x = FiniteSpace::new(["a", "b"]).unwrap();
        assert!(!is_possibility(&Capacity::new(&x, vec![0.0, 0.3, 0.3, 1.0]).unwrap()));
        assert!(is_possibility(&Capacity::dirac(&abc(), 1).unwrap()));
    }

    #[test]
    fn maxplus_integral_examples() {
        let (pi, phi) = worked();
        let c = capacity_from_profile(&pi);
        let expected = 1.0 + 0.5f64.ln();
        let v = maxplus_integral(&c, &phi).unwrap();
        assert!(close(v, expected, 1e-12));
        assert!(close(v, 0.306853, 1e-6));

        let constant = RealFunction::constant(pi.space(), -2.5).unwrap();
        assert!(close(maxplus_integral(&c, &constant).unwrap(), -2.5, 0.0));

        let x = pi.space();
        let unanimity = Capacity::from_fn(x, |bits| if bits == 7 { 1.0 } else { 0.0 }).unwrap();
        assert!(close(maxplus_integral(&unanimity, &phi).unwrap(), 0.0, 0.0));
        let other = RealFunction::new(&FiniteSpace::new(["a"]).unwrap(), vec![0.0]).unwrap();
        assert!(maxplus_integral(&c, &other).is_err());
    }

    #[test]
    fn integral_matches_brute_force_t_grid() {
        // sup over a fine grid of t can only approach the exact value from below
        let (pi, phi) = worked();
        let c = capacity_from_profile(&pi);
        let exact = maxplus_integral(&c, &phi).unwrap().value().unwrap();
        let mut best = f64::NEG_INFINITY;
        for k in 0..=40_000 {
            let t = -1.0 + k as f64 * 1e-4;
            let level = level_set(&phi, t);
            let u = c.value(&level).unwrap().get();
            if u > 0.0 {
                best = best.max(u.ln() + t);
            }
        }
        assert!(best <= exact + 1e-12);
        assert!(exact - best < 1e-3);
    }

    #[test]
    fn possibility_integral_examples() {
        let (pi, phi) = worked();
        assert!(close(possibility_integral(&pi, &phi).unwrap(), 1.0 + 0.5f64.ln(), 1e-12));
        let dirac = PossibilityProfile::dirac(pi.space(), 2);
        assert!(close(possibility_integral(&dirac, &phi).unwrap(), 2.0, 0.0));
        let constant = RealFunction::constant(pi.space(), 7.0).unwrap();
        assert!(close(possibility_integral(&pi, &constant).unwrap(), 7.0, 0.0));
    }

    #[test]
    fn repr_examples() {
        let (pi, phi) = worked();
        assert!(check_repr(&pi, &phi).unwrap());
        assert!(check_repr(&PossibilityProfile::dirac(pi.space(), 0), &phi).unwrap());
        let zeros = PossibilityProfile::new(pi.space(), vec![0.0, 1.0, 0.0]).unwrap();
        assert!(check_repr(&zeros, &phi).unwrap());
    }

    #[test]
    fn integral_functional_examples() {
        let x = abc();
        let phi = RealFunction::new(&x, vec![-1.0, 4.0, 2.0]).unwrap();
        let at_b = integral_functional(&Capacity::dirac(&x, 1).unwrap());
        assert!(close(at_b(&phi), 4.0, 0.0));
        let (pi, _) = worked();
        let f = integral_functional(&capacity_from_profile(&pi));
        assert_eq!(f(&phi), possibility_integral(&pi, &phi).unwrap());
        assert!(close(f(&RealFunction::constant(&x, 1.0).unwrap()), 1.0, 0.0));
    }

    #[test]
    fn recover_capacity_examples() {
        let (pi, _) = worked();
        let c = capacity_from_profile(&pi);
        let back = recover_capacity(integral_functional(&c), pi.space(), 40.0).unwrap();
        assert!(back.approx_eq(&c, 1e-9));

        let x = abc();
        let point = recover_capacity(|phi: &RealFunction| ExtendedScore::finite(phi.at(2)), &x, 40.0).unwrap();
        assert!(point.approx_eq(&Capacity::dirac(&x, 2).unwrap(), (-40.0f64).exp()));

        let unanimity = Capacity::from_fn(&x, |bits| if bits == 7 { 1.0 } else { 0.0 }).unwrap();
        let back = recover_capacity(integral_functional(&unanimity), &x, 40.0).unwrap();
        assert!(back.table()[..7].iter().all(|u| u.get() <= (-40.0f64).exp()));

        assert!(matches!(recover_capacity(integral_functional(&c), &x, 0.0), Err(Error::NonPositiveBound(_))));
        // a decreasing oracle is not an integral
        let anti = |phi: &RealFunction| ExtendedScore::finite(-phi.values().iter().sum::<f64>() / 100.0 - 1.0);
        assert!(recover_capacity(anti, &x, 40.0).is_err());
    }

    #[test]
    fn characterization_examples() {
        let x = abc();
        let c = Capacity::from_fn(&x, |bits| [0.0, 0.2, 0.1, 0.6, 0.3, 0.3, 0.4, 1.0][bits]).unwrap();
        let report = check_characterization(integral_functional(&c), &x, 200, 7);
        assert!(report.passed(), "{report:?}");

        let sum = |phi: &RealFunction| ExtendedScore::finite(phi.values().iter().sum());
        let report = check_characterization(sum, &x, 50, 7);
        assert!(!report.translation.passed);
        assert!(report.translation.witness.is_some());

        let max = |phi: &RealFunction| ExtendedScore::finite(phi.max());
        assert!(check_characterization(max, &x, 200, 7).passed());
        let recovered = recover_capacity(max, &x, 40.0).unwrap();
        assert!(recovered.table()[1..].iter().all(|u| *u == UnitScore::ONE));
    }

    #[test]
    fn possibility_mult_examples() {
        let x = FiniteSpace::new(["a", "b"]).unwrap();
        let p1 = PossibilityProfile::new(&x, vec![1.0, 0.0]).unwrap();
        let p2 = PossibilityProfile::new(&x, vec![0.0, 1.0]).unwrap();
        let meta = MetaPossibility::new(vec![(p1.clone(), UnitScore::ONE), (p2.clone(), UnitScore::new(0.5).unwrap())])
            .unwrap();
        let rho = possibility_mult(&meta);
        assert_eq!(rho.singletons(), &[UnitScore::ONE, UnitScore::new(0.5).unwrap()]);
        assert_eq!(possibility_mult(&MetaPossibility::single(p2.clone())), p2);

        let y = abc();
        let q1 = PossibilityProfile::new(&y, vec![1.0, 0.4, 0.2]).unwrap();
        let q2 = PossibilityProfile::new(&y, vec![0.3, 1.0, 0.9]).unwrap();
        let meta = MetaPossibility::new(vec![(q1, UnitScore::ONE), (q2, UnitScore::new(0.5).unwrap())]).unwrap();
        let got: Vec<f64> = possibility_mult(&meta).singletons().iter().map(|u| u.get()).collect();
        assert_eq!(got, vec![1.0, 0.5, 0.45]);
    }

    #[test]
    fn level_and_sorted_integrals_agree() {
        let x = abc();
        let c = Capacity::from_fn(&x, |bits| [0.0, 0.2, 0.1, 0.6, 0.3, 0.3, 0.4, 1.0][bits]).unwrap();
        for values in [[0.0, 0.0, 1.0], [3.0, -1.0, 3.0], [-2.0, 5.0, 0.5]] {
            let phi = RealFunction::new(&x, values.to_vec()).unwrap();
            assert_eq!(maxplus_integral(&c, &phi).unwrap(), maxplus_integral_by_levels(&c, &phi).unwrap());
        }
    }
}
