//! Seeded random batteries for every law the library implements.
//!
//! A run is a [`Suite`], a trial count and a seed. Trial `i` of suite `s`
//! draws from its own ChaCha stream, so trials run in parallel and the report
//! does not depend on scheduling. Failing inputs are shrunk (points removed
//! from the space, entries removed from supports) while the failure persists,
//! and the shrunk input is what the report carries.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::capacity::{
    capacity_from_profile, check_characterization_with, check_repr_with, integral_functional, maxplus_integral,
    maxplus_integral_by_levels, possibility_mult, profile_of, recover_capacity, Capacity, MetaPossibility,
};
use crate::convex::{
    barycenter, bounding_grid, check_algebra_with, check_convexity_equivalence_with, combine, hull_member_with,
    GeneratorSet, TropicalPoint, WeightVector,
};
use crate::doc::{capacity_to_json, function_to_json, points_to_json, profile_to_json, ToDocument};
use crate::error::Result;
use crate::iso::{check_l_morphism_with, check_s_morphism_with, density_exp, density_log};
use crate::measure::{
    check_associativity_with, check_unit_laws_with, density_from_functional, multiply_in, Density, Support,
    SupportElement,
};
use crate::random::{self, SampleWeight, TrialRng};
use crate::score::{ExtendedScore, Semiring, UnitScore, ARITHMETIC_TOLERANCE, DEFAULT_TOLERANCE};
use crate::space::{FiniteSpace, PointMap, RealFunction, SubsetMask};

/// Environment variable overriding the comparison tolerance of every suite.
pub const TOLERANCE_ENV: &str = "IDEMKIT_TOLERANCE";

/// Probe bound used by the round-trip and s-morphism suites.
pub const PROBE_BOUND: f64 = 64.0;
/// Probe bound used to read capacities back from integrals.
pub const RECOVERY_BOUND: f64 = 40.0;
/// Comonotone pairs and translations per capacity in the characterization suite.
pub const CHARAC_PROBES: usize = 200;
/// Grid resolution of the possibility-multiplication sweep.
pub const SWEEP_RESOLUTION: u32 = 10_000;
/// Grid points per axis in the convexity suite.
pub const GRID_PER_AXIS: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Unit,
    Assoc,
    RoundTrip,
    Functor,
    SIso,
    LIso,
    Repr,
    Shilkret,
    Charac,
    PossMult,
    Convexity,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Unit,
        Suite::Assoc,
        Suite::RoundTrip,
        Suite::Functor,
        Suite::SIso,
        Suite::LIso,
        Suite::Repr,
        Suite::Shilkret,
        Suite::Charac,
        Suite::PossMult,
        Suite::Convexity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Unit => "unit",
            Suite::Assoc => "assoc",
            Suite::RoundTrip => "roundtrip",
            Suite::Functor => "functor",
            Suite::SIso => "s-iso",
            Suite::LIso => "l-iso",
            Suite::Repr => "repr",
            Suite::Shilkret => "shilkret",
            Suite::Charac => "charac",
            Suite::PossMult => "poss-mult",
            Suite::Convexity => "convexity",
        }
    }

    /// The law a suite checks, as a formula.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::Unit => "κ∘D(ε) = κ∘ε_D = id, for (D, ε, κ) and (D₁, ε₁, κ₁)",
            Suite::Assoc => "κ∘κ_D = κ∘D(κ), for κ and κ₁",
            Suite::RoundTrip => "nX∘sX = id and sX∘nX = id on finitely supported measures",
            Suite::Functor => "D(id) = id, D(h∘g) = D(h)∘D(g); ε and κ are natural",
            Suite::SIso => "sX∘μX = κX∘s_DX∘I(sX), sX∘ηX = εX",
            Suite::LIso => "lX∘κX = κ₁X∘l_D₁X∘D(lX), lX∘εX = ε₁X; ln∘exp = id",
            Suite::Repr => "max_t (ln C(φ_t) + t) = max_x (φ(x) + ln π(x)) for possibility C",
            Suite::Shilkret => "exp ∫φ dc = max_t t·c({e^φ ≥ t})",
            Suite::Charac => "I(1_X) = 1, I(φ∨ψ) = I(φ)∨I(ψ) for comonotone φ,ψ, I(λ+φ) = λ+I(φ); c = exp I(φ_A)",
            Suite::PossMult => "μX(C)(F) = max_t C(F_t)·t = max_i w_i·π_i(F)",
            Suite::Convexity => "C_I(K, β_K) = C_∨+(K); β∘μ = β∘I(β); β(δ_i) = x_i",
        }
    }

    /// The suites `name` selects; `all` selects every suite.
    pub fn parse_selection(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        name.parse().ok().map(|s| vec![s])
    }

    fn stream_base(self) -> u64 {
        (Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64) << 40
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Deliberate corruptions of the density multiplication, for testing the harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Multiplication ignores the lowest-weight entry of any support with at
    /// least two entries.
    DropWeight,
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(Mutation::None),
            "drop-weight" => Ok(Mutation::DropWeight),
            other => Err(format!("unknown mutation {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_space: usize,
    /// Overrides each suite's own comparison tolerance.
    pub tolerance: Option<f64>,
    pub mutation: Mutation,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { trials: 500, seed: 0, max_space: 5, tolerance: None, mutation: Mutation::None }
    }
}

impl LawConfig {
    /// Reads the tolerance override from [`TOLERANCE_ENV`], if set.
    pub fn with_env_tolerance(mut self) -> std::result::Result<Self, String> {
        if let Ok(raw) = std::env::var(TOLERANCE_ENV) {
            let tol: f64 = raw.trim().parse().map_err(|_| format!("{TOLERANCE_ENV}={raw:?} is not a number"))?;
            if tol < 0.0 || !tol.is_finite() {
                return Err(format!("{TOLERANCE_ENV} must be a non-negative finite number"));
            }
            self.tolerance = Some(tol);
        }
        Ok(self)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub description: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<Failure>,
    /// Wall-clock seconds; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{:<10} {verdict:<6} {} trials, {} failures, seed {}, {:.3}s",
            self.suite,
            self.trials,
            self.failures.len(),
            self.seed,
            self.elapsed
        )?;
        for failure in &self.failures {
            write!(f, "\n  trial {}: {}\n    witness: {}", failure.trial, failure.description, failure.witness)?;
        }
        Ok(())
    }
}

/// Runs `config.trials` trials of `suite`.
pub fn run_suite(suite: Suite, config: &LawConfig) -> RunReport {
    let start = Instant::now();
    let failures: Vec<Failure> = (0..config.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = random::trial_rng(config.seed, suite.stream_base() | trial as u64);
            run_trial(suite, config, &mut rng).err().map(|(description, witness)| Failure {
                trial,
                description,
                witness,
            })
        })
        .collect();
    RunReport {
        suite: suite.name().to_string(),
        trials: config.trials,
        seed: config.seed,
        failures,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

pub fn run_suites(suites: &[Suite], config: &LawConfig) -> Vec<RunReport> {
    suites.iter().map(|&s| run_suite(s, config)).collect()
}

type Outcome = std::result::Result<(), (String, Value)>;

fn fail(description: impl Into<String>, witness: Value) -> Outcome {
    Err((description.into(), witness))
}

fn lift_error<T>(r: Result<T>, witness: impl FnOnce() -> Value) -> std::result::Result<T, (String, Value)> {
    r.map_err(|e| (format!("computation failed: {e}"), witness()))
}

fn run_trial(suite: Suite, config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    match suite {
        Suite::Unit => unit_trial(config, rng),
        Suite::Assoc => assoc_trial(config, rng),
        Suite::RoundTrip => roundtrip_trial(config, rng),
        Suite::Functor => functor_trial(config, rng),
        Suite::SIso => s_iso_trial(config, rng),
        Suite::LIso => l_iso_trial(config, rng),
        Suite::Repr => repr_trial(config, rng),
        Suite::Shilkret => shilkret_trial(config, rng),
        Suite::Charac => charac_trial(config, rng),
        Suite::PossMult => poss_mult_trial(config, rng),
        Suite::Convexity => convexity_trial(config, rng),
    }
}

/// The density multiplication under `mutation`.
pub fn multiplier<S: Semiring>(mutation: Mutation) -> impl Fn(&Support<Density<S>, S>) -> Density<S> + Sync {
    move |meta| match mutation {
        Mutation::None => multiply_in(meta),
        Mutation::DropWeight => multiply_in(&drop_lowest(meta)),
    }
}

fn drop_lowest<S: Semiring>(meta: &Support<Density<S>, S>) -> Support<Density<S>, S> {
    if meta.len() < 2 {
        return meta.clone();
    }
    let lowest =
        (0..meta.len()).min_by(|&a, &b| meta.entries()[a].1.total_cmp(meta.entries()[b].1)).expect("non-empty");
    let rest = meta.entries().iter().enumerate().filter(|&(i, _)| i != lowest).map(|(_, e)| e.clone()).collect();
    Support::merged(rest).expect("the top entry survives")
}

// ---- shrinking

/// Values that can be made smaller while a failure is being minimized.
pub trait Shrink: Sized {
    /// Smaller values on the same space.
    fn local_candidates(&self) -> Vec<Self>;
    /// The value restricted to the space without point `i`.
    fn drop_point(&self, i: usize) -> Option<Self>;
    fn space_len(&self) -> usize;

    fn candidates(&self) -> Vec<Self> {
        let mut out = self.local_candidates();
        out.extend((0..self.space_len()).filter_map(|i| self.drop_point(i)));
        out
    }
}

impl<S: Semiring> Shrink for Density<S> {
    fn local_candidates(&self) -> Vec<Self> {
        Vec::new()
    }

    fn drop_point(&self, i: usize) -> Option<Self> {
        let space = self.space().without(i)?;
        let weights = self.weights().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| *w).collect();
        Density::normalize(&space, weights).ok()
    }

    fn space_len(&self) -> usize {
        self.space().len()
    }
}

impl<T: Shrink + SupportElement, S: Semiring> Shrink for Support<T, S> {
    fn local_candidates(&self) -> Vec<Self> {
        let entries = self.entries();
        let mut out = Vec::new();
        if entries.len() > 1 {
            for drop in 0..entries.len() {
                let rest = entries.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, e)| e.clone()).collect();
                out.extend(Support::normalized(rest).ok());
            }
        }
        for (j, (t, _)) in entries.iter().enumerate() {
            for smaller in t.local_candidates() {
                let mut next = entries.to_vec();
                next[j].0 = smaller;
                out.extend(Support::merged(next).ok());
            }
        }
        out
    }

    fn drop_point(&self, i: usize) -> Option<Self> {
        let entries = self.entries().iter().filter_map(|(t, w)| t.drop_point(i).map(|t| (t, *w))).collect::<Vec<_>>();
        if entries.len() != self.len() {
            return None;
        }
        Support::normalized(entries).ok()
    }

    fn space_len(&self) -> usize {
        self.space().len()
    }
}

/// Greedily replaces `value` by a smaller candidate on which `fails` still
/// holds, until no candidate fails.
pub fn minimize<T: Shrink>(value: T, fails: impl Fn(&T) -> bool) -> T {
    let mut current = value;
    'search: loop {
        for candidate in current.candidates() {
            if fails(&candidate) {
                current = candidate;
                continue 'search;
            }
        }
        return current;
    }
}

// ---- suites

fn unit_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(ARITHMETIC_TOLERANCE);
    let space = random::space(rng, config.max_space);
    unit_case::<ExtendedScore>(config, rng, &space, tol)?;
    unit_case::<UnitScore>(config, rng, &space, tol)
}

fn unit_case<S: SampleWeight + Serialize>(
    config: &LawConfig,
    rng: &mut TrialRng,
    space: &FiniteSpace,
    tol: f64,
) -> Outcome {
    let mult = multiplier::<S>(config.mutation);
    let f: Density<S> = random::density(rng, space, -10.0);
    let fails = |f: &Density<S>| !check_unit_laws_with(f, &mult, tol);
    if fails(&f) {
        let small = minimize(f, fails);
        return fail(format!("{} unit laws fail", S::KIND), small.to_document());
    }
    Ok(())
}

fn assoc_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space.min(4));
    assoc_case::<ExtendedScore>(config, rng, &space, tol)?;
    assoc_case::<UnitScore>(config, rng, &space, tol)
}

fn assoc_case<S: SampleWeight + Serialize>(
    config: &LawConfig,
    rng: &mut TrialRng,
    space: &FiniteSpace,
    tol: f64,
) -> Outcome {
    let mult = multiplier::<S>(config.mutation);
    let g = random::third_level::<S, _>(rng, space, 4, -10.0);
    let fails = |g: &Support<Support<Density<S>, S>, S>| !check_associativity_with(g, &mult, tol);
    if fails(&g) {
        let small = minimize(g, fails);
        return fail(format!("{} associativity fails", S::KIND), small.to_document());
    }
    Ok(())
}

fn roundtrip_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space);
    let f = random::density::<ExtendedScore, _>(rng, &space, -32.0);
    let witness = || json!({ "density": f.to_document() });
    let back =
        lift_error(density_from_functional(|phi| f.eval(phi).expect("same space"), &space, PROBE_BOUND), witness)?;
    let bottoms_match = f.weights().iter().zip(back.weights()).all(|(a, b)| a.is_bottom() == b.is_bottom());
    if !bottoms_match || !back.approx_eq(&f, tol) {
        return fail("s(n(f)) != f", json!({ "density": f.to_document(), "recovered": back.to_document() }));
    }
    for _ in 0..20 {
        let phi = random::real_function(rng, &space, -10.0, 10.0);
        let (a, b) = (f.eval(&phi).expect("same space"), back.eval(&phi).expect("same space"));
        if (a - b).abs() > tol {
            return fail(
                "n(s(mu)) and mu differ on a probe",
                json!({ "density": f.to_document(), "phi": function_to_json(&phi), "lhs": a, "rhs": b }),
            );
        }
    }
    Ok(())
}

fn random_map(rng: &mut TrialRng, source: &FiniteSpace, target: &FiniteSpace) -> PointMap {
    let images: Vec<usize> = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
    PointMap::from_indices(source, target, &images).expect("indices in range")
}

fn map_json(g: &PointMap) -> Value {
    let images = g.resolve().expect("total map");
    let pairs: serde_json::Map<String, Value> = images
        .iter()
        .enumerate()
        .map(|(i, &j)| (g.source().label(i).to_string(), json!(g.target().label(j))))
        .collect();
    json!(pairs)
}

fn relabeled(prefix: &str, n: usize) -> FiniteSpace {
    FiniteSpace::indexed(prefix, n).expect("non-empty")
}

fn functor_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let x = random::space(rng, config.max_space);
    let y = relabeled("y", rng.gen_range(1..=config.max_space.max(1)));
    let z = relabeled("z", rng.gen_range(1..=config.max_space.max(1)));
    let g = random_map(rng, &x, &y);
    let h = random_map(rng, &y, &z);
    functor_case::<ExtendedScore>(rng, &g, &h, tol)?;
    functor_case::<UnitScore>(rng, &g, &h, tol)
}

fn functor_case<S: SampleWeight + Serialize>(rng: &mut TrialRng, g: &PointMap, h: &PointMap, tol: f64) -> Outcome {
    let x = g.source();
    let f: Density<S> = random::density(rng, x, -10.0);
    let witness = || json!({ "density": f.to_document(), "g": map_json(g), "h": map_json(h) });
    let err = |e: crate::error::Error| (format!("computation failed: {e}"), witness());

    if !f.pushforward(&PointMap::identity(x)).map_err(err)?.approx_eq(&f, tol) {
        return fail(format!("{}: D(id) != id", S::KIND), witness());
    }
    let composed = f.pushforward(&h.compose(g).map_err(err)?).map_err(err)?;
    let stepwise = f.pushforward(g).map_err(err)?.pushforward(h).map_err(err)?;
    if !composed.approx_eq(&stepwise, tol) {
        return fail(format!("{}: D(h∘g) != D(h)∘D(g)", S::KIND), witness());
    }
    let images = g.resolve().map_err(err)?;
    for (i, &j) in images.iter().enumerate() {
        let pushed = Density::<S>::point_mass(x, i).pushforward(g).map_err(err)?;
        if !pushed.approx_eq(&Density::point_mass(g.target(), j), tol) {
            return fail(format!("{}: D(g)∘ε != ε∘g", S::KIND), witness());
        }
    }
    let meta = random::meta::<S, _>(rng, x, 4, -10.0);
    let lhs = multiply_in(&meta).pushforward(g).map_err(err)?;
    let rhs = multiply_in(&meta.try_map(|m| m.pushforward(g)).map_err(err)?);
    if !lhs.approx_eq(&rhs, tol) {
        return fail(
            format!("{}: D(g)∘κ != κ∘DD(g)", S::KIND),
            json!({ "meta": meta.to_document(), "g": map_json(g) }),
        );
    }
    Ok(())
}

fn s_iso_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space);
    let meta = random::meta::<ExtendedScore, _>(rng, &space, 4, -16.0);
    let fails = |m: &crate::measure::MetaDensity| !check_s_morphism_with(m, PROBE_BOUND, tol).unwrap_or(false);
    if fails(&meta) {
        let small = minimize(meta, fails);
        return fail("s is not a morphism of multiplications", small.to_document());
    }
    Ok(())
}

fn l_iso_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let space = random::space(rng, config.max_space);
    let meta = random::meta::<ExtendedScore, _>(rng, &space, 4, -10.0);
    let tol = config.tol(DEFAULT_TOLERANCE);
    let fails = |m: &crate::measure::MetaDensity| !check_l_morphism_with(m, tol);
    if fails(&meta) {
        let small = minimize(meta, fails);
        return fail("l is not a morphism of monads", small.to_document());
    }
    let tight = config.tol(ARITHMETIC_TOLERANCE);
    let f = random::density::<ExtendedScore, _>(rng, &space, -10.0);
    if !density_log(&density_exp(&f)).approx_eq(&f, tight) {
        return fail("ln(exp f) != f", f.to_document());
    }
    let g = random::density::<UnitScore, _>(rng, &space, 0.0);
    if !density_exp(&density_log(&g)).approx_eq(&g, tight) {
        return fail("exp(ln g) != g", g.to_document());
    }
    Ok(())
}

fn repr_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space);
    let pi = random::profile(rng, &space, 0.3);
    let phi = random::real_function(rng, &space, -10.0, 10.0);
    let witness = || json!({ "profile": profile_to_json(&pi), "phi": function_to_json(&phi) });
    if !lift_error(check_repr_with(&pi, &phi, tol), witness)? {
        return fail("level-set integral and singleton formula differ", witness());
    }
    let c = capacity_from_profile(&pi);
    match profile_of(&c) {
        Some(back) if back.as_density().approx_eq(pi.as_density(), 0.0) => Ok(()),
        _ => fail("a possibility capacity does not give back its profile", witness()),
    }
}

/// `max_t t·c({ψ ≥ t})` over the values `t` of `ψ = exp φ`, straight from the
/// definition of the Shilkret integral.
pub fn shilkret_reference(c: &Capacity, psi: &[f64]) -> f64 {
    let space = c.space();
    psi.iter()
        .map(|&t| {
            let mut level = SubsetMask::empty(space);
            for (i, &v) in psi.iter().enumerate() {
                if v >= t {
                    level.insert(i);
                }
            }
            t * c.value(&level).expect("same space").get()
        })
        .fold(0.0, f64::max)
}

fn shilkret_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space);
    let c = random::capacity(rng, &space);
    let phi = random::real_function(rng, &space, -5.0, 5.0);
    let witness = || json!({ "capacity": capacity_to_json(&c), "phi": function_to_json(&phi) });
    let integral = lift_error(maxplus_integral(&c, &phi), witness)?;
    let by_levels = lift_error(maxplus_integral_by_levels(&c, &phi), witness)?;
    let psi: Vec<f64> = phi.values().iter().map(|v| v.exp()).collect();
    let reference = shilkret_reference(&c, &psi);
    if (integral.to_f64().exp() - reference).abs() > tol {
        return fail("exp of the max-plus integral differs from the Shilkret integral", witness());
    }
    if !integral.approx_eq(by_levels, tol) {
        return fail("sorted sweep and level-set integrals differ", witness());
    }
    Ok(())
}

fn charac_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let space = random::space(rng, config.max_space);
    let c = random::capacity(rng, &space);
    let inner_seed: u64 = rng.gen();
    let report = check_characterization_with(integral_functional(&c), &space, CHARAC_PROBES, inner_seed, tol);
    if let Some(bad) = report.conditions().into_iter().find(|o| !o.passed) {
        return fail(
            format!("integral violates {}", bad.condition),
            json!({ "capacity": capacity_to_json(&c), "violation": bad.witness }),
        );
    }
    let witness = || json!({ "capacity": capacity_to_json(&c) });
    let back = lift_error(recover_capacity(integral_functional(&c), &space, RECOVERY_BOUND), witness)?;
    if !back.approx_eq(&c, tol.max((-RECOVERY_BOUND).exp())) {
        return fail(
            "capacity not recovered from its integral",
            json!({
                "capacity": capacity_to_json(&c), "recovered": capacity_to_json(&back),
            }),
        );
    }
    if space.len() > 1 {
        let sum = |phi: &RealFunction| ExtendedScore::finite(phi.values().iter().sum());
        let linear = check_characterization_with(sum, &space, CHARAC_PROBES, inner_seed, tol);
        if linear.translation.passed {
            return fail("the summing oracle passes the translation condition", json!({ "space": space.labels() }));
        }
    }
    Ok(())
}

/// `max_t t · C({π : π(F) ≥ t})` for `t` on the grid `k / resolution`, `k ≥ 1`.
pub fn possibility_sweep(meta: &MetaPossibility, set: &SubsetMask, resolution: u32) -> f64 {
    let at_set: Vec<(f64, f64)> =
        meta.entries().iter().map(|(pi, w)| (pi.value(set).expect("same space").get(), w.get())).collect();
    (1..=resolution)
        .map(|k| {
            let t = k as f64 / resolution as f64;
            let mass = at_set.iter().filter(|(v, _)| *v >= t).map(|(_, w)| *w).fold(0.0, f64::max);
            t * mass
        })
        .fold(0.0, f64::max)
}

fn poss_mult_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(1e-6);
    let space = random::space(rng, config.max_space.min(4));
    let meta = random::grid_meta_possibility(rng, &space, 4, SWEEP_RESOLUTION);
    let rho = possibility_mult(&meta);
    for bits in 1..1usize << space.len() {
        let set = SubsetMask::from_bits(&space, bits);
        let closed = rho.value(&set).expect("same space").get();
        let swept = possibility_sweep(&meta, &set, SWEEP_RESOLUTION);
        if (closed - swept).abs() > tol {
            return fail(
                "closed-form multiplication differs from the sweep",
                json!({ "meta": meta.to_document(), "set": set.labels(), "closed": closed, "sweep": swept }),
            );
        }
    }
    Ok(())
}

fn convexity_trial(config: &LawConfig, rng: &mut TrialRng) -> Outcome {
    let tol = config.tol(DEFAULT_TOLERANCE);
    let dim = rng.gen_range(2..=3);
    let count = rng.gen_range(2..=5);
    let gens = random::generator_set(rng, dim, count, 0.0, 10.0);
    let witness = || json!({ "generators": points_to_json(&gens) });
    let grid = bounding_grid(&gens, GRID_PER_AXIS);
    if !lift_error(check_convexity_equivalence_with(&gens, &grid, tol), witness)? {
        return fail("combination and barycenter membership disagree on the grid", witness());
    }

    let index = gens.index_space();
    for _ in 0..2 {
        let meta = random::meta::<ExtendedScore, _>(rng, &index, 4, -10.0);
        if !lift_error(check_algebra_with(&gens, &meta, tol), witness)? {
            return fail("β∘μ != β∘I(β)", json!({ "generators": points_to_json(&gens), "meta": meta.to_document() }));
        }
    }

    for (i, x) in gens.points().iter().enumerate() {
        let b = lift_error(barycenter(&gens, &WeightVector::dirac(gens.len(), i)), witness)?;
        if b != *x {
            return fail(format!("barycenter of δ_{i} is not generator {i}"), witness());
        }
        if !lift_error(hull_member_with(x, &gens, tol), witness)? {
            return fail(format!("generator {i} is not a hull member"), witness());
        }
    }

    let mut member = || -> std::result::Result<TropicalPoint, (String, Value)> {
        let w = random::density::<ExtendedScore, _>(rng, &index, -10.0);
        let w = WeightVector::new(w.weights().to_vec()).expect("density weights");
        lift_error(combine(&gens, &w), witness)
    };
    let (a, b) = (member()?, member()?);
    let alpha = ExtendedScore::finite(-rng.gen_range(0.0..10.0));
    let mixed = a.mix(alpha, &b);
    if !lift_error(hull_member_with(&mixed, &gens, tol), witness)? {
        return fail(
            "the hull is not closed under (α + a) ∨ b",
            json!({ "generators": points_to_json(&gens), "a": a.coordinates(), "b": b.coordinates(), "alpha": alpha }),
        );
    }

    let perm = random::permutation(rng, gens.len());
    let permuted = GeneratorSet::new(perm.iter().map(|&i| gens.points()[i].clone()).collect()).expect("same points");
    let shift = rng.gen_range(-5.0..5.0);
    let shifted = GeneratorSet::new(gens.points().iter().map(|p| p.shifted(shift)).collect()).expect("distinct");
    for p in grid.iter().step_by(7) {
        let verdict = lift_error(hull_member_with(p, &gens, tol), witness)?;
        if lift_error(hull_member_with(p, &permuted, tol), witness)? != verdict {
            return fail(
                "hull membership depends on generator order",
                json!({
                    "generators": points_to_json(&gens), "point": p.coordinates(),
                }),
            );
        }
        if lift_error(hull_member_with(&p.shifted(shift), &shifted, tol), witness)? != verdict {
            return fail(
                "hull membership is not translation equivariant",
                json!({
                    "generators": points_to_json(&gens), "point": p.coordinates(), "shift": shift,
                }),
            );
        }
    }
    Ok(())
}
