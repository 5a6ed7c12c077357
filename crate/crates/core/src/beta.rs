//! The Beta distribution on `[0, 1]`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{ln_gamma_unchecked, reg_inc_beta_unchecked};

/// Stop refining a quantile once `|CDF(x) − u|` falls below this.
const QUANTILE_TOL: f64 = 1e-13;
const QUANTILE_MAX_ITER: usize = 200;

/// Shape pair `(a, b)` of a Beta distribution. Both shapes are positive and
/// finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShapes")]
pub struct BetaParams {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
struct RawShapes {
    a: f64,
    b: f64,
}

impl TryFrom<RawShapes> for BetaParams {
    type Error = Error;

    fn try_from(raw: RawShapes) -> Result<Self> {
        BetaParams::new(raw.a, raw.b)
    }
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::invalid(
                "a",
                format!("shape must be positive and finite, got {a}"),
            ));
        }
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::invalid(
                "b",
                format!("shape must be positive and finite, got {b}"),
            ));
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// `a / (a + b)`
    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn variance(&self) -> f64 {
        let s = self.a + self.b;
        self.a * self.b / (s * s * (s + 1.0))
    }

    /// The same distribution with shapes swapped, i.e. the law of `1 − X`.
    pub fn reflected(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    /// Density at `x`, evaluated in the log domain.
    ///
    /// At the endpoints the density is `0`, finite or `+inf` depending on
    /// whether the matching shape is above, equal to or below one.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_unit("x", x)?;
        Ok(self.pdf_unchecked(x))
    }

    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        if x == 0.0 || x == 1.0 {
            let shape = if x == 0.0 { a } else { b };
            return if shape < 1.0 {
                f64::INFINITY
            } else if shape > 1.0 {
                0.0
            } else {
                // Beta(1, b) at 0 is b; Beta(a, 1) at 1 is a.
                if x == 0.0 {
                    b
                } else {
                    a
                }
            };
        }
        let ln_norm = ln_gamma_unchecked(a + b) - ln_gamma_unchecked(a) - ln_gamma_unchecked(b);
        (ln_norm + (a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p()).exp()
    }

    /// Distribution function, the regularized incomplete beta `I_x(a, b)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_unit("x", x)?;
        Ok(reg_inc_beta_unchecked(x, self.a, self.b))
    }

    /// Inverse distribution function for `u` in `(0, 1)`.
    ///
    /// Newton iteration on the CDF inside a shrinking bracket; any step that
    /// would leave the bracket is replaced by bisection.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain {
                name: "u",
                value: u,
                domain: "(0, 1)",
            });
        }
        Ok(self.quantile_unchecked(u))
    }

    fn quantile_unchecked(&self, u: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut x = self.mean();
        let mut best = (f64::INFINITY, x);
        for _ in 0..QUANTILE_MAX_ITER {
            let err = reg_inc_beta_unchecked(x, self.a, self.b) - u;
            if err.abs() < best.0 {
                best = (err.abs(), x);
            }
            if err.abs() <= QUANTILE_TOL {
                return x;
            }
            if err < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            if hi - lo <= f64::EPSILON * hi {
                break;
            }
            let slope = self.pdf_unchecked(x);
            let newton = x - err / slope;
            let next = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if next == x {
                break;
            }
            x = next;
        }
        best.1
    }

    /// One draw as `X / (X + Y)` with `X ~ Gamma(a)`, `Y ~ Gamma(b)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let x = sample_gamma(rng, self.a);
        let y = sample_gamma(rng, self.b);
        x / (x + y)
    }

    /// Density on the midpoints `(i + 0.5)/points` of an even grid over `[0, 1]`.
    ///
    /// Midpoints keep the values finite for shapes below one.
    pub fn density_grid(&self, points: usize) -> (Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..points)
            .map(|i| (i as f64 + 0.5) / points as f64)
            .collect();
        let ys = xs.iter().map(|&x| self.pdf_unchecked(x)).collect();
        (xs, ys)
    }
}

fn check_unit(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            domain: "[0, 1]",
        })
    }
}

/// Unit-scale Gamma variate.
///
/// Marsaglia and Tsang's squeeze/rejection method for `shape >= 1`. Smaller
/// shapes draw `Gamma(shape + 1)` and multiply by `U^(1/shape)`.
pub fn sample_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape < 1.0 {
        let boosted = sample_gamma(rng, shape + 1.0);
        // (0, 1], so the product is never forced to zero
        let u: f64 = 1.0 - rng.random::<f64>();
        return boosted * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let (x, v) = loop {
            let x: f64 = rng.sample(StandardNormal);
            let v = 1.0 + c * x;
            if v > 0.0 {
                break (x, v * v * v);
            }
        };
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference values carry extra digits
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use proptest::prelude::*;

    fn beta(a: f64, b: f64) -> BetaParams {
        BetaParams::new(a, b).unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(BetaParams::new(0.0, 1.0).is_err());
        assert!(BetaParams::new(1.0, -3.0).is_err());
        assert!(BetaParams::new(f64::NAN, 1.0).is_err());
        assert!(BetaParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn deserialization_validates() {
        assert!(serde_json::from_str::<BetaParams>(r#"{"a": 2, "b": 3}"#).is_ok());
        assert!(serde_json::from_str::<BetaParams>(r#"{"a": 0, "b": 3}"#).is_err());
    }

    #[test]
    fn mean_values() {
        assert_eq!(beta(60.0, 6.0).mean(), 10.0 / 11.0);
        assert_eq!(beta(8.0, 8.0).mean(), 0.5);
        assert_eq!(beta(1.0, 1.0).mean(), 0.5);
    }

    #[test]
    fn pdf_examples() {
        assert!((beta(1.0, 1.0).pdf(0.3).unwrap() - 1.0).abs() < 1e-14);
        assert!((beta(2.0, 2.0).pdf(0.5).unwrap() - 1.5).abs() < 1e-14);
        // mpmath at 40 digits: Γ(66)/(Γ(60)Γ(6)) 0.9^59 0.1^5
        let want = 9.895_402_541_426_407_587_812;
        let got = beta(60.0, 6.0).pdf(0.9).unwrap();
        assert!(((got - want) / want).abs() < 1e-9, "{got}");
    }

    #[test]
    fn pdf_endpoints() {
        assert_eq!(beta(2.0, 3.0).pdf(0.0).unwrap(), 0.0);
        assert_eq!(beta(1.0, 3.0).pdf(0.0).unwrap(), 3.0);
        assert_eq!(beta(0.5, 3.0).pdf(0.0).unwrap(), f64::INFINITY);
        assert_eq!(beta(4.0, 1.0).pdf(1.0).unwrap(), 4.0);
        assert!(beta(1.0, 1.0).pdf(1.5).is_err());
    }

    #[test]
    fn cdf_examples() {
        assert!((beta(1.0, 1.0).cdf(0.3).unwrap() - 0.3).abs() < 1e-14);
        assert!((beta(7.0, 7.0).cdf(0.5).unwrap() - 0.5).abs() < 1e-14);
        assert!((beta(2.0, 2.0).cdf(0.4).unwrap() - 0.352).abs() < 1e-14);
        assert!(beta(2.0, 2.0).cdf(-0.01).is_err());
    }

    #[test]
    fn quantile_examples() {
        assert!((beta(2.0, 1.0).quantile(0.25).unwrap() - 0.5).abs() < 1e-12);
        // 40-digit bisection on mpmath's betainc
        let lo = beta(60.0, 6.0).quantile(0.025).unwrap();
        let hi = beta(60.0, 6.0).quantile(0.975).unwrap();
        assert!((lo - 0.829_543_709_511_075_010_5).abs() < 1e-10, "{lo}");
        assert!((hi - 0.965_366_347_785_900_072_1).abs() < 1e-10, "{hi}");
    }

    #[test]
    fn quantile_domain() {
        let p = beta(2.0, 2.0);
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        assert!(p.quantile(f64::NAN).is_err());
    }

    #[test]
    fn quantile_small_shapes() {
        for (a, b) in [(0.5, 0.5), (0.5, 3.0), (0.2, 0.7), (3.0, 0.5)] {
            let p = beta(a, b);
            for u in [1e-4, 0.01, 0.3, 0.5, 0.9, 0.9999] {
                let x = p.quantile(u).unwrap();
                assert!(
                    (p.cdf(x).unwrap() - u).abs() <= 1e-10,
                    "Beta({a},{b}) u={u} x={x}"
                );
            }
        }
    }

    #[test]
    fn closed_form_cdfs() {
        let xs = (1..100).map(|i| i as f64 / 100.0);
        for x in xs {
            for a in [0.5, 1.7, 4.0, 25.0] {
                let want = x.powf(a);
                assert!((beta(a, 1.0).cdf(x).unwrap() - want).abs() <= 1e-10);
                let want = 1.0 - (1.0 - x).powf(a);
                assert!((beta(1.0, a).cdf(x).unwrap() - want).abs() <= 1e-10);
            }
            let want = x * x * (3.0 - 2.0 * x);
            assert!((beta(2.0, 2.0).cdf(x).unwrap() - want).abs() <= 1e-10);
        }
    }

    /// Composite Simpson's rule over each half of [0, 1]. Near an edge whose
    /// shape is below one, `x = t^k / 2` with `k = 1/shape` removes the
    /// singularity; the integrand's finite limit at `t = 0` is taken at a
    /// tiny offset.
    fn integrate_pdf(p: &BetaParams) -> f64 {
        const N: usize = 20_000;
        let half = |shape: f64, at: &dyn Fn(f64) -> f64| {
            let k = if shape < 1.0 { 1.0 / shape } else { 1.0 };
            let f = |t: f64| {
                let t = t.max(1e-12);
                at(0.5 * t.powf(k)) * 0.5 * k * t.powf(k - 1.0)
            };
            let h = 1.0 / N as f64;
            let inner: f64 = (1..N)
                .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h))
                .sum();
            (f(0.0) + f(1.0) + inner) * h / 3.0
        };
        let mirrored = p.reflected();
        half(p.a(), &|x| p.pdf_unchecked(x)) + half(p.b(), &|y| mirrored.pdf_unchecked(y))
    }

    #[test]
    fn pdf_integrates_to_one() {
        for (a, b) in [
            (0.5, 0.5),
            (0.5, 7.0),
            (1.0, 1.0),
            (2.0, 20.0),
            (60.0, 6.0),
            (100.0, 100.0),
            (0.8, 100.0),
        ] {
            let total = integrate_pdf(&beta(a, b));
            assert!(
                (total - 1.0).abs() < 1e-6,
                "Beta({a},{b}) integrates to {total}"
            );
        }
    }

    #[test]
    fn sampler_moments_60_6() {
        let p = beta(60.0, 6.0);
        let mut rng = stream_rng(11, 0);
        let n = 1_000_000;
        let mean = (0..n).map(|_| p.sample(&mut rng)).sum::<f64>() / n as f64;
        let se = p.variance().sqrt() / (n as f64).sqrt();
        assert!((mean - 10.0 / 11.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn sampler_uniform_cdf_at_half() {
        let p = beta(1.0, 1.0);
        let mut rng = stream_rng(12, 0);
        let n = 1_000_000;
        let below = (0..n).filter(|_| p.sample(&mut rng) < 0.5).count();
        assert!((below as f64 / n as f64 - 0.5).abs() < 0.002);
    }

    #[test]
    fn sampler_matches_quantile() {
        let p = beta(2.0, 20.0);
        let q = p.quantile(0.1).unwrap();
        let mut rng = stream_rng(13, 0);
        let n = 1_000_000;
        let below = (0..n).filter(|_| p.sample(&mut rng) < q).count();
        assert!((below as f64 / n as f64 - 0.1).abs() < 0.002);
    }

    #[test]
    fn sampler_small_shape_mean() {
        let p = beta(0.4, 0.9);
        let mut rng = stream_rng(14, 0);
        let n = 400_000;
        let mean = (0..n).map(|_| p.sample(&mut rng)).sum::<f64>() / n as f64;
        let se = p.variance().sqrt() / (n as f64).sqrt();
        assert!((mean - p.mean()).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn sampler_is_reproducible() {
        let p = beta(3.0, 8.0);
        let draw = || {
            let mut rng = stream_rng(99, 3);
            (0..64)
                .map(|_| p.sample(&mut rng).to_bits())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }

    proptest! {
        #[test]
        fn cdf_reflection(x in 0.0f64..=1.0, a in 0.5f64..100.0, b in 0.5f64..100.0) {
            let lhs = beta(a, b).cdf(x).unwrap();
            let rhs = 1.0 - beta(b, a).cdf(1.0 - x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
        }

        #[test]
        fn cdf_monotone(mut xs in prop::collection::vec(0.0f64..=1.0, 2..40), a in 0.5f64..100.0, b in 0.5f64..100.0) {
            xs.sort_by(f64::total_cmp);
            let p = beta(a, b);
            let cdfs: Vec<f64> = xs.iter().map(|&x| p.cdf(x).unwrap()).collect();
            prop_assert!(cdfs.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn quantile_round_trip(u in 0.001f64..=0.999, a in 0.5f64..100.0, b in 0.5f64..100.0) {
            let p = beta(a, b);
            let x = p.quantile(u).unwrap();
            prop_assert!(x > 0.0 && x < 1.0);
            prop_assert!((p.cdf(x).unwrap() - u).abs() <= 1e-9);
        }
    }
}
