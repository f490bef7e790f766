//! The exponential correspondence between the max-plus and max-times
//! density monads, and executable morphism checks for it and for the
//! density/measure correspondence.

use crate::error::Result;
use crate::measure::{
    dirac, dirac_times, measure_multiplication, multiply, multiply_times, Density, MaxPlusDensity, MaxTimesDensity,
    MetaDensity, MetaTimesDensity, Support,
};
use crate::score::{exp_bridge, log_bridge, ExtendedScore, DEFAULT_TOLERANCE};
use crate::space::RealFunction;

/// Pointwise `exp`, sending `−∞` to 0.
pub fn density_exp(f: &MaxPlusDensity) -> MaxTimesDensity {
    let weights = f.weights().iter().map(|&w| exp_bridge(w).expect("density weights are non-positive")).collect();
    Density::new(f.space(), weights).expect("exp of a normalized density is normalized")
}

/// Pointwise `ln`, sending 0 to `−∞`.
pub fn density_log(g: &MaxTimesDensity) -> MaxPlusDensity {
    let weights = g.weights().iter().map(|&u| log_bridge(u)).collect();
    Density::new(g.space(), weights).expect("ln of a normalized density is normalized")
}

/// `l_{D₁X} ∘ D(lX)` on a finitely supported meta-density.
pub fn meta_exp(meta: &MetaDensity) -> MetaTimesDensity {
    let entries = meta
        .entries()
        .iter()
        .map(|(f, w)| (density_exp(f), exp_bridge(*w).expect("meta weights are non-positive")))
        .collect();
    Support::merged(entries).expect("exp preserves normalization")
}

/// Inverse of [`meta_exp`].
pub fn meta_log(meta: &MetaTimesDensity) -> MetaDensity {
    let entries = meta.entries().iter().map(|(g, u)| (density_log(g), log_bridge(*u))).collect();
    Support::merged(entries).expect("ln preserves normalization")
}

/// `l ∘ κ = κ₁ ∘ l_{D₁} ∘ D(l)` at `meta`, together with `l ∘ ε = ε₁` on
/// every point of the space, within `tol`.
pub fn check_l_morphism_with(meta: &MetaDensity, tol: f64) -> bool {
    let space = meta.space();
    let units = space.labels().iter().all(|x| {
        let lhs = density_exp(&dirac(x, space).expect("label of the space"));
        lhs.approx_eq(&dirac_times(x, space).expect("label of the space"), tol)
    });
    let lhs = density_exp(&multiply(meta));
    let rhs = multiply_times(&meta_exp(meta));
    units && lhs.approx_eq(&rhs, tol)
}

pub fn check_l_morphism(meta: &MetaDensity) -> bool {
    check_l_morphism_with(meta, DEFAULT_TOLERANCE)
}

/// `s ∘ μ = κ ∘ s_D ∘ I(s)` at `meta`, plus `s ∘ η = ε` on every point.
///
/// The left side is computed by probing the functional `φ ↦ max (λ_i + μ_i(φ))`
/// ([`measure_multiplication`]), the right side by [`multiply`].
pub fn check_s_morphism_with(meta: &MetaDensity, bound: f64, tol: f64) -> Result<bool> {
    let space = meta.space();
    for (i, x) in space.labels().iter().enumerate() {
        let delta = |phi: &RealFunction| phi.at(i);
        let recovered = crate::measure::density_from_functional(delta, space, bound)?;
        if !recovered.approx_eq(&dirac(x, space)?, tol) {
            return Ok(false);
        }
    }
    let via_functionals = measure_multiplication(meta, bound)?;
    Ok(via_functionals.approx_eq(&multiply(meta), tol))
}

pub fn check_s_morphism(meta: &MetaDensity, bound: f64) -> Result<bool> {
    check_s_morphism_with(meta, bound, DEFAULT_TOLERANCE)
}

/// Whether `f ≤ g` pointwise, bottom below everything.
pub fn pointwise_le(f: &MaxPlusDensity, g: &MaxPlusDensity) -> bool {
    f.weights().iter().zip(g.weights()).all(|(a, b)| a <= b)
}

/// Convenience: the max-plus density with the given finite-or-bottom weights,
/// normalized by subtracting the maximum.
pub fn normalized_density(space: &crate::space::FiniteSpace, weights: &[f64]) -> Result<MaxPlusDensity> {
    let weights = weights.iter().map(|&w| ExtendedScore::from_f64(w)).collect::<Result<_>>()?;
    Density::normalize(space, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{pushforward, pushforward_times};
    use crate::score::{ExtendedScore as E, UnitScore};
    use crate::space::{FiniteSpace, PointMap};

    fn fin(x: f64) -> E {
        E::finite(x)
    }

    fn ab() -> FiniteSpace {
        FiniteSpace::new(["a", "b"]).unwrap()
    }

    fn worked_meta() -> MetaDensity {
        let x = ab();
        MetaDensity::new(vec![
            (Density::new(&x, vec![fin(0.0), E::BOTTOM]).unwrap(), fin(0.0)),
            (Density::new(&x, vec![E::BOTTOM, fin(0.0)]).unwrap(), fin(-1.0)),
        ])
        .unwrap()
    }

    fn units(g: &MaxTimesDensity) -> Vec<f64> {
        g.weights().iter().map(|u| u.get()).collect()
    }

    #[test]
    fn density_exp_examples() {
        let x = ab();
        let f = Density::new(&x, vec![fin(0.0), E::BOTTOM]).unwrap();
        assert_eq!(units(&density_exp(&f)), vec![1.0, 0.0]);
        let h = Density::new(&x, vec![fin(0.0), fin(-std::f64::consts::LN_2)]).unwrap();
        let e = density_exp(&h);
        assert_eq!(e.weight(0), UnitScore::ONE);
        assert!((e.weight(1).get() - 0.5).abs() < 1e-6);
        assert!(density_log(&e).approx_eq(&h, 1e-12));
    }

    #[test]
    fn density_log_examples() {
        let x = ab();
        let g = Density::new(&x, vec![UnitScore::ONE, UnitScore::ZERO]).unwrap();
        assert_eq!(density_log(&g).weights(), &[fin(0.0), E::BOTTOM]);
        let h = Density::new(&x, vec![UnitScore::ONE, UnitScore::new(0.5).unwrap()]).unwrap();
        let l = density_log(&h);
        assert!((l.weight(1).value().unwrap() + std::f64::consts::LN_2).abs() < 1e-12);
        assert!(density_exp(&l).approx_eq(&h, 1e-12));
    }

    #[test]
    fn meta_exp_examples() {
        let x = ab();
        let f = Density::new(&x, vec![fin(0.0), fin(-2.0)]).unwrap();
        let single = meta_exp(&MetaDensity::single(f.clone()));
        assert_eq!(single.len(), 1);
        assert_eq!(single.entries()[0].1, UnitScore::ONE);
        assert_eq!(single.entries()[0].0, density_exp(&f));

        let image = meta_exp(&worked_meta());
        assert_eq!(image.len(), 2);
        assert_eq!(units(&image.entries()[0].0), vec![1.0, 0.0]);
        assert_eq!(units(&image.entries()[1].0), vec![0.0, 1.0]);
        assert!((image.entries()[1].1.get() - 0.367879).abs() < 1e-6);
        assert!(image.entries().iter().all(|(_, w)| w.get() > 0.0));
    }

    #[test]
    fn l_morphism_examples() {
        let x = ab();
        assert!(check_l_morphism(&MetaDensity::single(dirac("a", &x).unwrap())));
        let meta = worked_meta();
        assert!(check_l_morphism(&meta));
        let rhs = multiply_times(&meta_exp(&meta));
        assert_eq!(rhs.weight(0), UnitScore::ONE);
        assert!((rhs.weight(1).get() - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn s_morphism_examples() {
        let x = FiniteSpace::new(["a", "b", "c"]).unwrap();
        assert!(check_s_morphism(&MetaDensity::single(dirac("a", &x).unwrap()), 64.0).unwrap());
        // two finitely supported measures mixed with weights 0 and -1.5
        let mu1 = normalized_density(&x, &[0.0, -2.0, f64::NEG_INFINITY]).unwrap();
        let mu2 = normalized_density(&x, &[f64::NEG_INFINITY, -0.5, 0.0]).unwrap();
        let n = MetaDensity::new(vec![(mu1, fin(0.0)), (mu2, fin(-1.5))]).unwrap();
        assert!(check_s_morphism(&n, 64.0).unwrap());
        assert_eq!(multiply(&n).weights(), &[fin(0.0), fin(-2.0), fin(-1.5)]);
    }

    #[test]
    fn exp_is_natural_and_order_preserving() {
        let x = FiniteSpace::new(["a", "b", "c"]).unwrap();
        let uv = FiniteSpace::new(["u", "v", "w"]).unwrap();
        let g = PointMap::new(&x, &uv, [("a", "u"), ("b", "u"), ("c", "w")]);
        let f = normalized_density(&x, &[-1.0, 0.0, -3.0]).unwrap();
        let lhs = density_exp(&pushforward(&g, &f).unwrap());
        let rhs = pushforward_times(&g, &density_exp(&f)).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-12));
        let f2 = normalized_density(&x, &[-0.5, 0.0, -3.0]).unwrap();
        assert!(pointwise_le(&f, &f2));
        assert!(density_exp(&f).weights().iter().zip(density_exp(&f2).weights()).all(|(a, b)| a <= b));
    }
}
