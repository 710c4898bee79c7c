//! Turning a two-point function into a covariant 2-tensor at a point:
//! second derivatives of the function along curve pairs through the point,
//! certification that its first derivatives vanish on the diagonal, and the
//! scalar correspondence between divergence labels g and metric labels f.
//!
//! Curves are parameterized on the product of SU(n) and the simplex,
//! `s ↦ (U e^{isH}, p + s a)`, which keeps them inside the faithful region
//! for small s. For a potential function S the four second-derivative
//! routes agree up to sign:
//!
//! ```text
//! g = g_ll = g_rr = −g_lr = −g_rl.
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divergences::{DivergenceSpec, GFunction};
use crate::error::{QigError, Result};
use crate::metrics::{log_spaced, pullback_eval, MonotoneFunction};
use crate::states::{
    fold, random_unfolded_tangent_rng, DensityMatrix, UnfoldedPoint, UnfoldedTangent,
};

/// One-parameter family of unfolded points through a base point.
#[derive(Debug, Clone)]
pub struct CurveFamily {
    base: UnfoldedPoint,
    generator: UnfoldedTangent,
}

impl CurveFamily {
    pub fn new(base: UnfoldedPoint, generator: UnfoldedTangent) -> Result<Self> {
        if base.dim() != generator.dim() {
            return Err(QigError::DimensionMismatch(base.dim(), generator.dim()));
        }
        Ok(Self { base, generator })
    }

    pub fn base(&self) -> &UnfoldedPoint {
        &self.base
    }

    pub fn generator(&self) -> &UnfoldedTangent {
        &self.generator
    }

    /// `(U e^{isH}, p + s a)`.
    pub fn realize(&self, s: f64) -> Result<UnfoldedPoint> {
        self.base.push(&self.generator, s)
    }

    /// The state `π(realize(s))`.
    pub fn state(&self, s: f64) -> Result<DensityMatrix> {
        fold(&self.realize(s)?)
    }
}

/// All four second-derivative routes at one point, with the first-order
/// certification residuals and stencil metadata.
#[derive(Debug, Clone)]
pub struct ExtractionReport {
    pub value_ll: f64,
    pub value_rr: f64,
    pub value_lr: f64,
    pub value_rl: f64,
    pub first_order_residuals: (f64, f64),
    pub step: f64,
    pub richardson_used: bool,
}

impl ExtractionReport {
    /// Symmetrized tensor estimate `(g_ll + g_rr − g_lr − g_rl)/4`.
    pub fn value(&self) -> f64 {
        0.25 * (self.value_ll + self.value_rr - self.value_lr - self.value_rl)
    }

    /// Worst disagreement among the sign-consistency identities.
    pub fn consistency(&self) -> f64 {
        let g = self.value_ll;
        (g - self.value_rr)
            .abs()
            .max((g + self.value_lr).abs())
            .max((g + self.value_rl).abs())
    }
}

fn check_step(h: f64) -> Result<()> {
    if !(1e-5..=1e-2).contains(&h) {
        return Err(QigError::InvalidParameter(format!(
            "step h = {h} outside [1e-5, 1e-2]"
        )));
    }
    Ok(())
}

/// Central-difference first derivatives of `s ↦ S(γ(s), base)` and
/// `s ↦ S(base, γ(s))` at s = 0, with one Richardson level. Both vanish for
/// a genuine potential function; the certification bound is `10 h²`.
pub fn check_potential(
    spec: &DivergenceSpec,
    x: &UnfoldedPoint,
    t: &UnfoldedTangent,
    h: f64,
) -> Result<(f64, f64)> {
    check_step(h)?;
    let curve = CurveFamily::new(x.clone(), t.clone())?;
    let base = fold(x)?;
    let deriv = |left: bool, step: f64| -> Result<f64> {
        let plus = curve.state(step)?;
        let minus = curve.state(-step)?;
        let (a, b) = if left {
            (spec.eval(&plus, &base)?, spec.eval(&minus, &base)?)
        } else {
            (spec.eval(&base, &plus)?, spec.eval(&base, &minus)?)
        };
        Ok((a - b) / (2.0 * step))
    };
    let richardson = |left: bool| -> Result<f64> {
        let d1 = deriv(left, h)?;
        let d2 = deriv(left, 0.5 * h)?;
        Ok((4.0 * d2 - d1) / 3.0)
    };
    Ok((richardson(true)?.abs(), richardson(false)?.abs()))
}

/// Mixed second differences of a two-point function along a pair of curve
/// directions, yielding the four tensor routes. `value_ll`/`value_rr` come
/// from pure second differences via polarization; `value_lr`/`value_rl` from
/// 4-point mixed stencils. With `richardson`, every stencil is evaluated at
/// h and h/2 and extrapolated.
pub fn extract_tensor(
    spec: &DivergenceSpec,
    x: &UnfoldedPoint,
    t1: &UnfoldedTangent,
    t2: &UnfoldedTangent,
    h: f64,
    richardson: bool,
) -> Result<ExtractionReport> {
    check_step(h)?;
    let base = fold(x)?;
    let s00 = spec.eval(&base, &base)?;
    if !s00.is_finite() {
        return Err(QigError::NonFinite(spec.name().to_string()));
    }
    let curve = |t: &UnfoldedTangent| CurveFamily::new(x.clone(), t.clone());
    let sum = curve(&t1.add(t2))?;
    let diff = curve(&t1.add(&t2.scale(-1.0)))?;
    let c1 = curve(t1)?;
    let c2 = curve(t2)?;

    // ∂²/∂s∂t with both directions in one slot, by polarization of pure
    // second differences
    let pure = |left: bool, step: f64| -> Result<f64> {
        let second = |c: &CurveFamily| -> Result<f64> {
            let plus = c.state(step)?;
            let minus = c.state(-step)?;
            let (a, b) = if left {
                (spec.eval(&plus, &base)?, spec.eval(&minus, &base)?)
            } else {
                (spec.eval(&base, &plus)?, spec.eval(&base, &minus)?)
            };
            Ok((a - 2.0 * s00 + b) / (step * step))
        };
        Ok(0.25 * (second(&sum)? - second(&diff)?))
    };
    // ∂²/∂s∂t with one direction per slot: 4-point mixed stencil
    let mixed = |first: &CurveFamily, second: &CurveFamily, step: f64| -> Result<f64> {
        let pp = spec.eval(&first.state(step)?, &second.state(step)?)?;
        let pm = spec.eval(&first.state(step)?, &second.state(-step)?)?;
        let mp = spec.eval(&first.state(-step)?, &second.state(step)?)?;
        let mm = spec.eval(&first.state(-step)?, &second.state(-step)?)?;
        Ok((pp - pm - mp + mm) / (4.0 * step * step))
    };

    let eval = |route: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        if richardson {
            let d1 = route(h)?;
            let d2 = route(0.5 * h)?;
            Ok((4.0 * d2 - d1) / 3.0)
        } else {
            route(h)
        }
    };

    let value_ll = eval(&|s| pure(true, s))?;
    let value_rr = eval(&|s| pure(false, s))?;
    let value_lr = eval(&|s| mixed(&c1, &c2, s))?;
    let value_rl = eval(&|s| mixed(&c2, &c1, s))?;
    let first_order_residuals = check_potential(spec, x, t1, h)?;

    let report = ExtractionReport {
        value_ll,
        value_rr,
        value_lr,
        value_rl,
        first_order_residuals,
        step: h,
        richardson_used: richardson,
    };
    if !report.value().is_finite() {
        return Err(QigError::NonFinite(spec.name().to_string()));
    }
    Ok(report)
}

/// Metric label from a divergence label:
/// `f(x) = (1 − x)² / (g(x) + x g(1/x))`, with the removable singularity at
/// x = 1 filled by the analytic limit `1/g″(1)`.
pub fn f_from_g(g: &GFunction) -> Result<MonotoneFunction> {
    let at_one = g.eval(1.0);
    if at_one.abs() > 1e-12 {
        return Err(QigError::InvalidParameter(format!(
            "{}: g(1) = {at_one}, need g(1) = 0",
            g.name()
        )));
    }
    let limit = 1.0 / g.curvature_at_one();
    for x in log_spaced(32, 1e-3, 1e3) {
        let denom = g.eval(x) + x * g.eval(1.0 / x);
        if denom <= 0.0 {
            return Err(QigError::InvalidParameter(format!(
                "{}: denominator g(x) + x g(1/x) = {denom} at x = {x}",
                g.name()
            )));
        }
    }
    let gc = g.clone();
    let name = format!("f[{}]", g.name());
    let normalized = g.has_normalized_curvature();
    MonotoneFunction::new(
        name,
        move |x: f64| {
            let eps = x - 1.0;
            if eps.abs() < 1e-5 {
                // f = (1/g″(1)) (1 + ε/2 + O(ε²)) near the removable point
                limit * (1.0 + 0.5 * eps)
            } else {
                let d = 1.0 - x;
                d * d / (gc.eval(x) + x * gc.eval(1.0 / x))
            }
        },
        true,
        normalized,
    )
}

/// Aggregate of an extraction-vs-pullback comparison.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub trials: usize,
    pub max_rel_err: f64,
    pub worst_reference: f64,
}

/// For random tangent pairs at x, compare the tensor extracted from the
/// relative g-entropy with the pulled-back monotone metric of `f_from_g(g)`.
/// Relative error uses the scale `max(1, |reference|)`.
pub fn verify_correspondence(
    g: &GFunction,
    x: &UnfoldedPoint,
    trials: usize,
    h: f64,
    seed: u64,
) -> Result<CorrespondenceReport> {
    let f = f_from_g(g)?;
    let spec = crate::divergences::g_entropy_spec(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.dim();
    let mut max_rel_err = 0.0f64;
    let mut worst_reference = 0.0f64;
    for _ in 0..trials {
        // moderate components keep the neglected quartic terms of the
        // stencil well under the comparison tolerance
        let t1 = random_unfolded_tangent_rng(n, &mut rng).with_max_component(0.5);
        let t2 = random_unfolded_tangent_rng(n, &mut rng).with_max_component(0.5);
        let extracted = extract_tensor(&spec, x, &t1, &t2, h, true)?.value();
        let reference = pullback_eval(&f, x, &t1, &t2)?;
        let rel = (extracted - reference).abs() / reference.abs().max(1.0);
        if rel > max_rel_err {
            max_rel_err = rel;
            worst_reference = reference;
        }
    }
    Ok(CorrespondenceReport {
        trials,
        max_rel_err,
        worst_reference,
    })
}
