//! Seeded generators for the randomized law batteries.
//!
//! Every trial draws from its own ChaCha stream, selected by the trial index,
//! so a batch is reproducible from one 64-bit seed no matter how the trials
//! are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{Capacity, MetaPossibility, PossibilityProfile};
use crate::convex::{GeneratorSet, TropicalPoint};
use crate::measure::{Density, Support};
use crate::score::{ExtendedScore, Semiring, UnitScore};
use crate::space::{FiniteSpace, RealFunction};

pub type TrialRng = ChaCha8Rng;

/// The generator for trial `stream` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Weights that can be drawn at random below the semiring unit.
pub trait SampleWeight: Semiring {
    /// A non-zero weight; `floor` bounds max-plus weights from below.
    fn sample<R: Rng + ?Sized>(rng: &mut R, floor: f64) -> Self;
}

impl SampleWeight for ExtendedScore {
    fn sample<R: Rng + ?Sized>(rng: &mut R, floor: f64) -> Self {
        ExtendedScore::finite(rng.gen_range(floor..=0.0))
    }
}

impl SampleWeight for UnitScore {
    fn sample<R: Rng + ?Sized>(rng: &mut R, _floor: f64) -> Self {
        UnitScore::new(rng.gen_range(0.0..=1.0f64).max(1e-3)).expect("in range")
    }
}

/// A space of `1..=max_points` points labelled `x0, x1, ...`.
pub fn space<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> FiniteSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    FiniteSpace::indexed("x", n).expect("non-empty")
}

/// A random density: about a quarter of the points are zero, one point
/// carries the unit, the rest are drawn by [`SampleWeight::sample`].
pub fn density<S: SampleWeight, R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, floor: f64) -> Density<S> {
    let top = rng.gen_range(0..space.len());
    let weights = (0..space.len())
        .map(|i| {
            if i == top {
                S::ONE
            } else if rng.gen_bool(0.25) {
                S::ZERO
            } else {
                S::sample(rng, floor)
            }
        })
        .collect();
    Density::new(space, weights).expect("generated densities are normalized")
}

fn support_weights<S: SampleWeight, R: Rng + ?Sized>(rng: &mut R, k: usize, floor: f64) -> Vec<S> {
    let top = rng.gen_range(0..k);
    (0..k).map(|i| if i == top { S::ONE } else { S::sample(rng, floor) }).collect()
}

/// A second-level support of `1..=max_support` random densities.
pub fn meta<S: SampleWeight, R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    max_support: usize,
    floor: f64,
) -> Support<Density<S>, S> {
    let k = rng.gen_range(1..=max_support.max(1));
    let weights = support_weights::<S, R>(rng, k, floor);
    let entries = weights.into_iter().map(|w| (density(rng, space, floor), w)).collect();
    Support::merged(entries).expect("generated supports are normalized")
}

/// A third-level support of `1..=max_support` random second-level supports.
pub fn third_level<S: SampleWeight, R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    max_support: usize,
    floor: f64,
) -> Support<Support<Density<S>, S>, S> {
    let k = rng.gen_range(1..=max_support.max(1));
    let weights = support_weights::<S, R>(rng, k, floor);
    let entries = weights.into_iter().map(|w| (meta(rng, space, max_support, floor), w)).collect();
    Support::merged(entries).expect("generated supports are normalized")
}

/// Uniform values in `[lo, hi)`, sometimes rounded to integers to create ties.
pub fn real_function<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, lo: f64, hi: f64) -> RealFunction {
    let integral = rng.gen_bool(0.3);
    let values = (0..space.len())
        .map(|_| {
            let v = rng.gen_range(lo..hi);
            if integral {
                v.round().clamp(lo, hi)
            } else {
                v
            }
        })
        .collect();
    RealFunction::new(space, values).expect("finite values")
}

/// Two comonotone functions: non-decreasing reshapings of one shared ranking.
pub fn comonotone_pair<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    lo: f64,
    hi: f64,
) -> (RealFunction, RealFunction) {
    let levels = rng.gen_range(1..=space.len());
    let rank: Vec<usize> = (0..space.len()).map(|_| rng.gen_range(0..levels)).collect();
    let mut reshape = || {
        let mut table: Vec<f64> = (0..levels).map(|_| rng.gen_range(lo..hi)).collect();
        table.sort_by(f64::total_cmp);
        if rng.gen_bool(0.2) {
            // flatten part of the table to produce ties
            let cut = rng.gen_range(0..levels);
            let v = table[cut];
            for t in table.iter_mut().skip(cut) {
                *t = v;
            }
        }
        table
    };
    let (a, b) = (reshape(), reshape());
    let phi = RealFunction::new(space, rank.iter().map(|&r| a[r]).collect()).expect("finite");
    let psi = RealFunction::new(space, rank.iter().map(|&r| b[r]).collect()).expect("finite");
    (phi, psi)
}

/// A possibility profile with exact zeros drawn with probability `zero_prob`.
pub fn profile<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, zero_prob: f64) -> PossibilityProfile {
    let top = rng.gen_range(0..space.len());
    let values = (0..space.len())
        .map(|i| {
            if i == top {
                1.0
            } else if rng.gen_bool(zero_prob) {
                0.0
            } else {
                rng.gen_range(0.0..=1.0)
            }
        })
        .collect();
    PossibilityProfile::new(space, values).expect("normalized")
}

/// A value `k / resolution` for a random `k` in `0..=resolution`.
pub fn grid_value<R: Rng + ?Sized>(rng: &mut R, resolution: u32) -> f64 {
    rng.gen_range(0..=resolution) as f64 / resolution as f64
}

/// A profile whose values all lie on the grid `k / resolution`.
pub fn grid_profile<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, resolution: u32) -> PossibilityProfile {
    let top = rng.gen_range(0..space.len());
    let values = (0..space.len()).map(|i| if i == top { 1.0 } else { grid_value(rng, resolution) }).collect();
    PossibilityProfile::new(space, values).expect("normalized")
}

/// A finitely supported meta-possibility with profile values and weights on
/// the grid `k / resolution`.
pub fn grid_meta_possibility<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    max_support: usize,
    resolution: u32,
) -> MetaPossibility {
    let k = rng.gen_range(1..=max_support.max(1));
    let top = rng.gen_range(0..k);
    let entries = (0..k)
        .map(|i| {
            let w = if i == top { 1.0 } else { grid_value(rng, resolution).max(1.0 / resolution as f64) };
            (grid_profile(rng, space, resolution), UnitScore::new(w).expect("in range"))
        })
        .collect();
    Support::merged(entries).expect("normalized")
}

/// A random monotone capacity: uniform draws, made monotone by an upward
/// sweep, then pinned to 0 on the empty set and 1 on the whole space.
pub fn capacity<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace) -> Capacity {
    let n = space.len();
    let full = (1usize << n) - 1;
    let mut table: Vec<f64> = (0..=full).map(|_| rng.gen_range(0.0..=1.0)).collect();
    if rng.gen_bool(0.2) {
        // leave some sets at zero
        for v in table.iter_mut() {
            if rng.gen_bool(0.3) {
                *v = 0.0;
            }
        }
    }
    table[0] = 0.0;
    for bits in 1..=full {
        for i in 0..n {
            if bits >> i & 1 == 1 {
                table[bits] = table[bits].max(table[bits & !(1 << i)]);
            }
        }
    }
    table[full] = 1.0;
    Capacity::new(space, table).expect("sweep produces a monotone table")
}

/// `count` distinct points in `[lo, hi)^dim`.
pub fn generator_set<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize, lo: f64, hi: f64) -> GeneratorSet {
    let mut integral = rng.gen_bool(0.5);
    let mut points: Vec<TropicalPoint> = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count {
        attempts += 1;
        if attempts > 64 * count {
            // too few integer points in the box
            integral = false;
        }
        let coords: Vec<f64> = (0..dim)
            .map(|_| {
                let v = rng.gen_range(lo..hi);
                if integral {
                    v.round()
                } else {
                    v
                }
            })
            .collect();
        let p = TropicalPoint::new(coords).expect("finite coordinates");
        if !points.iter().any(|q| q.approx_eq(&p, 1e-9)) {
            points.push(p);
        }
    }
    GeneratorSet::new(points).expect("distinct points of one dimension")
}

/// A random permutation of `0..n`.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
