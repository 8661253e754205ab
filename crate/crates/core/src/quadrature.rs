//! Numerical marginal likelihood, used as an independent check on the
//! conjugate closed forms.
//!
//! Gamma and gaussian priors are integrated with adaptive Gauss–Kronrod
//! (7/15) after mapping the unbounded parameter space onto a finite interval.
//! Beta priors use a fixed composite 4-point Gauss–Legendre rule on `[0, 1]`.

use alloc::string::ToString;
use alloc::vec::Vec;

use libm::{exp, fabs, log, sqrt};

use crate::model::{Family, LogLikelihood, ModelSpec, PriorSpec};
use crate::{DataSet, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance of the adaptive scheme.
    pub rel_tol: f64,
    /// Cap on the number of adaptive subintervals.
    pub max_intervals: usize,
    /// Number of nodes for the fixed beta rule (rounded down to a multiple of 4).
    pub beta_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-11, max_intervals: 4000, beta_nodes: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub abs_error: f64,
    /// False when the error estimate did not reach the requested tolerance,
    /// typically because mass sits against the edge of the mapped domain.
    pub converged: bool,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const GL4_X: [f64; 2] = [0.339_981_043_584_856_264_802_665_759_103_2, 0.861_136_311_594_052_575_223_946_488_892_8];
const GL4_W: [f64; 2] = [0.652_145_154_862_546_142_626_936_050_778_0, 0.347_854_845_137_453_857_373_063_949_222_0];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, fabs((kronrod - gauss) * h))
}

/// Globally adaptive Gauss–Kronrod on `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, max_intervals: usize) -> QuadratureEstimate {
    let (v, e) = gk15(&f, a, b);
    let mut intervals: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    loop {
        let total: f64 = intervals.iter().map(|i| i.2).sum();
        let err: f64 = intervals.iter().map(|i| i.3).sum();
        if err <= rel_tol * fabs(total) || err < f64::MIN_POSITIVE {
            return QuadratureEstimate { value: total, abs_error: err, converged: true };
        }
        if intervals.len() >= max_intervals {
            return QuadratureEstimate { value: total, abs_error: err, converged: false };
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// Composite 4-point Gauss–Legendre over `panels` equal panels of `[a, b]`.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    (0..panels)
        .map(|k| {
            let c = a + (k as f64 + 0.5) * width;
            let mut s = 0.0;
            for j in 0..2 {
                s += GL4_W[j] * (f(c - half * GL4_X[j]) + f(c + half * GL4_X[j]));
            }
            s * half
        })
        .sum()
}

/// Maximum of `g` over a uniform scan of the open interval `(a, b)`.
fn scan_max<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64) -> f64 {
    const POINTS: usize = 4096;
    (1..POINTS)
        .map(|i| g(a + (b - a) * i as f64 / POINTS as f64))
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `∫ L(θ, x) π(θ) dθ` by numerical integration.
pub fn marginal_likelihood_quadrature(model: &ModelSpec, data: &DataSet, spec: &QuadratureSpec) -> Result<QuadratureEstimate> {
    if !model.prior.is_proper() {
        return Err(Error::ImproperPrior(model.prior.to_string()));
    }
    let loglik = LogLikelihood::new(model.family, data)?;
    let prior = model.prior;
    if let PriorSpec::PointMass { value } = prior {
        return Ok(QuadratureEstimate { value: exp(loglik.eval(value)?), abs_error: 0.0, converged: true });
    }
    let log_integrand = |theta: f64| -> f64 {
        if !model.family.in_space(theta) {
            return f64::NEG_INFINITY;
        }
        loglik.eval_unchecked(theta) + prior.ln_density(theta).unwrap_or(f64::NEG_INFINITY)
    };

    match (model.family, prior) {
        (Family::Binomial { .. }, PriorSpec::Beta { .. }) => {
            let panels = (spec.beta_nodes / 4).max(2);
            let offset = scan_max(&log_integrand, 0.0, 1.0);
            let g = |p: f64| exp(log_integrand(p) - offset);
            let fine = integrate_fixed(g, 0.0, 1.0, panels);
            let coarse = integrate_fixed(g, 0.0, 1.0, panels / 2);
            let abs_error = fabs(fine - coarse);
            let scale = exp(offset);
            Ok(QuadratureEstimate {
                value: fine * scale,
                abs_error: abs_error * scale,
                converged: abs_error <= spec.rel_tol.max(1e-9) * fabs(fine),
            })
        }
        (Family::Poisson, PriorSpec::Gamma { shape, rate }) => {
            // θ = s t / (1 - t), t ∈ (0, 1)
            let s = shape / rate;
            let mapped = |t: f64| -> f64 {
                let theta = s * t / (1.0 - t);
                log_integrand(theta) + log(s) - 2.0 * log(1.0 - t)
            };
            Ok(scaled_adaptive(mapped, 0.0, 1.0, spec))
        }
        (Family::Gaussian { .. }, PriorSpec::Gaussian { mean, variance }) => {
            // θ = c + s t / (1 - t²), t ∈ (-1, 1), centred on whichever of
            // prior and likelihood is narrower
            let Family::Gaussian { variance: noise } = model.family else { unreachable!() };
            let (c, s) = if data.is_empty() || variance * data.len() as f64 <= noise {
                (mean, sqrt(variance))
            } else {
                (data.mean(), sqrt(noise / data.len() as f64))
            };
            let mapped = |t: f64| -> f64 {
                let d = 1.0 - t * t;
                let theta = c + s * t / d;
                log_integrand(theta) + log(s) + log(1.0 + t * t) - 2.0 * log(d)
            };
            Ok(scaled_adaptive(mapped, -1.0, 1.0, spec))
        }
        _ => unreachable!("pairing checked at construction"),
    }
}

fn scaled_adaptive<G: Fn(f64) -> f64>(log_g: G, a: f64, b: f64, spec: &QuadratureSpec) -> QuadratureEstimate {
    let offset = scan_max(&log_g, a, b);
    let g = |t: f64| {
        if t <= a || t >= b {
            return 0.0;
        }
        let v = exp(log_g(t) - offset);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let est = integrate_adaptive(g, a, b, spec.rel_tol, spec.max_intervals);
    let scale = exp(offset);
    QuadratureEstimate { value: est.value * scale, abs_error: est.abs_error * scale, converged: est.converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::marginal_likelihood;
    use alloc::vec;

    #[test]
    fn adaptive_rule_on_known_integrals() {
        let est = integrate_adaptive(libm::sin, 0.0, core::f64::consts::PI, 1e-13, 100);
        assert!(est.converged);
        assert!((est.value - 2.0).abs() < 1e-13);
        let v = integrate_fixed(|x| x * x * x, 0.0, 2.0, 10);
        assert!((v - 4.0).abs() < 1e-13);
    }

    #[test]
    fn poisson_binomial_marginals() {
        let spec = QuadratureSpec::default();
        let x = DataSet::from_counts(&[3]);
        let pois = ModelSpec::poisson(PriorSpec::Gamma { shape: 1.0, rate: 1.0 }).unwrap();
        let q = marginal_likelihood_quadrature(&pois, &x, &spec).unwrap();
        assert!(q.converged);
        assert!((q.value - 0.0625).abs() < 1e-6 * 0.0625, "{q:?}");

        let binom = ModelSpec::binomial(5, PriorSpec::Beta { a: 1.0, b: 1.0 }).unwrap();
        let q = marginal_likelihood_quadrature(&binom, &x, &spec).unwrap();
        assert!(q.converged);
        assert!((q.value - 1.0 / 6.0).abs() < 1e-6 / 6.0, "{q:?}");
    }

    #[test]
    fn point_mass_is_exact() {
        let model = ModelSpec::poisson(PriorSpec::PointMass { value: 2.0 }).unwrap();
        let x = DataSet::from_counts(&[3, 1]);
        let q = marginal_likelihood_quadrature(&model, &x, &QuadratureSpec::default()).unwrap();
        assert_eq!(q.value, marginal_likelihood(&model, &x).unwrap());
    }

    #[test]
    fn agrees_with_closed_form_across_cases() {
        let spec = QuadratureSpec::default();
        let cases = [
            (ModelSpec::poisson(PriorSpec::Gamma { shape: 2.5, rate: 0.5 }).unwrap(), DataSet::from_counts(&[0, 4, 7, 2])),
            (ModelSpec::binomial(10, PriorSpec::Beta { a: 2.0, b: 5.0 }).unwrap(), DataSet::from_counts(&[1, 3, 0])),
            (
                ModelSpec::gaussian(2.0, PriorSpec::Gaussian { mean: 1.0, variance: 3.0 }).unwrap(),
                DataSet::new(vec![0.3, -1.2, 2.2, 0.9]).unwrap(),
            ),
            (
                ModelSpec::gaussian(1.0, PriorSpec::Gaussian { mean: 0.0, variance: 1e6 }).unwrap(),
                DataSet::new(vec![0.5; 10]).unwrap(),
            ),
        ];
        for (model, data) in cases {
            let exact = marginal_likelihood(&model, &data).unwrap();
            let q = marginal_likelihood_quadrature(&model, &data, &spec).unwrap();
            assert!(((q.value - exact) / exact).abs() < 1e-6, "{model:?}: {} vs {exact}", q.value);
        }
    }

    #[test]
    fn improper_prior_rejected() {
        let model = ModelSpec::poisson(PriorSpec::ImproperPower { exponent: -1.0 }).unwrap();
        let r = marginal_likelihood_quadrature(&model, &DataSet::from_counts(&[1]), &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::ImproperPrior(_))));
    }
}
