//! The coefficient distribution family.
//!
//! `ProductUniform` is the law of `X * Y` with `X ~ U[0,1]` and `Y ~ U[-1,1]`
//! independent. Its density on `0 < |z| <= 1` is `ln(1/|z|) / 2`, with a
//! logarithmic singularity at zero; the density is at least `ln(2)/2` on
//! `[-1/2, 1/2]`, so the law contains a scaled uniform component there.
//!
//! `HalfProductAtom` mixes a point mass at zero (weight 1/2) with
//! `ProductUniform`. It is exactly the law of `b * max(a, 0)` for
//! independent `a, b ~ U[-1,1]`, i.e. the per-unit coefficient that remains
//! after sign-pruning the first layer of a link gadget.

use crate::error::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    Uniform { a: f64, b: f64 },
    Normal { mean: f64, std_dev: f64 },
    Laplace { mean: f64, scale: f64 },
    ProductUniform,
    HalfProductAtom,
}

impl Distribution {
    /// `U[-1, 1]`, the default initialization law.
    pub fn uniform_symmetric() -> Self {
        Distribution::Uniform { a: -1.0, b: 1.0 }
    }

    pub fn standard_normal() -> Self {
        Distribution::Normal {
            mean: 0.0,
            std_dev: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Distribution::Uniform { a, b } => {
                if !(a.is_finite() && b.is_finite()) {
                    return Err(Error::NonFinite {
                        context: "uniform bounds",
                    });
                }
                if a >= b {
                    return Err(Error::Domain {
                        context: "uniform requires a < b",
                        value: b - a,
                    });
                }
            }
            Distribution::Normal { mean, std_dev } => {
                if !(mean.is_finite() && std_dev.is_finite()) {
                    return Err(Error::NonFinite {
                        context: "normal parameters",
                    });
                }
                if std_dev <= 0.0 {
                    return Err(Error::Domain {
                        context: "normal requires std_dev > 0",
                        value: std_dev,
                    });
                }
            }
            Distribution::Laplace { mean, scale } => {
                if !(mean.is_finite() && scale.is_finite()) {
                    return Err(Error::NonFinite {
                        context: "laplace parameters",
                    });
                }
                if scale <= 0.0 {
                    return Err(Error::Domain {
                        context: "laplace requires scale > 0",
                        value: scale,
                    });
                }
            }
            Distribution::ProductUniform | Distribution::HalfProductAtom => {}
        }
        Ok(())
    }

    /// Short name used in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            Distribution::Uniform { .. } => "uniform",
            Distribution::Normal { .. } => "normal",
            Distribution::Laplace { .. } => "laplace",
            Distribution::ProductUniform => "product_uniform",
            Distribution::HalfProductAtom => "half_product_atom",
        }
    }

    /// Density at `z`. For `ProductUniform` the density diverges at zero and
    /// the call reports a singularity; for `HalfProductAtom` the value at a
    /// nonzero `z` is the density of its continuous part, and zero itself
    /// carries an atom.
    pub fn pdf(&self, z: f64) -> Result<f64> {
        self.validate()?;
        match *self {
            Distribution::Uniform { a, b } => {
                if z >= a && z <= b {
                    Ok(1.0 / (b - a))
                } else {
                    Ok(0.0)
                }
            }
            Distribution::Normal { mean, std_dev } => {
                let t = (z - mean) / std_dev;
                Ok((-0.5 * t * t).exp() / (std_dev * SQRT_TAU))
            }
            Distribution::Laplace { mean, scale } => {
                Ok((-(z - mean).abs() / scale).exp() / (2.0 * scale))
            }
            Distribution::ProductUniform => {
                if z == 0.0 {
                    return Err(Error::Singularity {
                        context: "product_uniform pdf at 0",
                    });
                }
                if z.abs() > 1.0 {
                    Ok(0.0)
                } else {
                    Ok(0.5 * (1.0 / z.abs()).ln())
                }
            }
            Distribution::HalfProductAtom => {
                if z == 0.0 {
                    return Err(Error::Singularity {
                        context: "half_product_atom pdf at the atom",
                    });
                }
                if z.abs() > 1.0 {
                    Ok(0.0)
                } else {
                    Ok(0.25 * (1.0 / z.abs()).ln())
                }
            }
        }
    }

    /// Cumulative distribution function.
    ///
    /// For `ProductUniform` on `z in (0, 1]` this is
    /// `1/2 + z/2 + z ln(1/z) / 2`; the leading `1/2` is the mass of the
    /// negative half-line, and the rest extends by symmetry
    /// (`F(-z) = 1 - F(z)`). Differentiating recovers the density above.
    pub fn cdf(&self, z: f64) -> Result<f64> {
        self.validate()?;
        match *self {
            Distribution::Uniform { a, b } => {
                if z < a {
                    Ok(0.0)
                } else if z >= b {
                    Ok(1.0)
                } else {
                    Ok((z - a) / (b - a))
                }
            }
            Distribution::Normal { mean, std_dev } => {
                let t = (z - mean) / (std_dev * SQRT_2);
                Ok(0.5 * erfc(-t))
            }
            Distribution::Laplace { mean, scale } => {
                let t = (z - mean) / scale;
                if t < 0.0 {
                    Ok(0.5 * t.exp())
                } else {
                    Ok(1.0 - 0.5 * (-t).exp())
                }
            }
            Distribution::ProductUniform => Ok(product_uniform_cdf(z)),
            Distribution::HalfProductAtom => {
                // Atom of mass 1/2 at zero, plus half the continuous law.
                if z < 0.0 {
                    Ok(0.5 * product_uniform_cdf(z))
                } else {
                    Ok(0.5 + 0.5 * product_uniform_cdf(z))
                }
            }
        }
    }

    /// Draw one sample. All draws consume the RNG in a fixed documented
    /// order, so streams are reproducible bit for bit.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Distribution::Uniform { a, b } => {
                let u: f64 = rng.gen();
                a + (b - a) * u
            }
            Distribution::Normal { mean, std_dev } => mean + std_dev * standard_normal(rng),
            Distribution::Laplace { mean, scale } => {
                let u: f64 = rng.gen(); // [0, 1)
                let centered = u - 0.5;
                let sign = if centered >= 0.0 { 1.0 } else { -1.0 };
                mean - scale * sign * (1.0 - 2.0 * centered.abs()).ln()
            }
            Distribution::ProductUniform => {
                let x: f64 = rng.gen(); // U[0,1)
                let y: f64 = rng.gen::<f64>() * 2.0 - 1.0; // U[-1,1)
                x * y
            }
            Distribution::HalfProductAtom => {
                let coin: f64 = rng.gen();
                let x: f64 = rng.gen();
                let y: f64 = rng.gen::<f64>() * 2.0 - 1.0;
                // Both branches consume three draws so the stream position
                // does not depend on the coin.
                if coin < 0.5 {
                    0.0
                } else {
                    x * y
                }
            }
        }
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> alloc::vec::Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// A pair `(alpha, c)` such that the density of this law is at least
    /// `alpha / (2c)` on `[-c, c]`: the law then contains `alpha`-weighted
    /// `U[-c, c]` as a mixture component.
    ///
    /// For `ProductUniform` the certificate is exact: `(ln(2)/2, 1/2)`. For
    /// `HalfProductAtom` only the continuous part contributes, halving alpha.
    pub fn contains_uniform_certificate(&self) -> Result<(f64, f64)> {
        self.validate()?;
        match *self {
            Distribution::Uniform { a, b } => {
                if a >= 0.0 || b <= 0.0 {
                    return Err(Error::Domain {
                        context: "uniform support must straddle 0 for a symmetric certificate",
                        value: if a >= 0.0 { a } else { b },
                    });
                }
                let c = (-a).min(b);
                Ok((2.0 * c / (b - a), c))
            }
            Distribution::Normal { mean, std_dev } => {
                let c = std_dev;
                // Density over [-c, c] is minimized at the endpoint farther
                // from the mean.
                let far = if mean >= 0.0 { -c } else { c };
                let alpha = 2.0 * c * self.pdf(far)?;
                certificate_checked(alpha, c)
            }
            Distribution::Laplace { mean, scale } => {
                let c = scale;
                let far = if mean >= 0.0 { -c } else { c };
                let alpha = 2.0 * c * self.pdf(far)?;
                certificate_checked(alpha, c)
            }
            Distribution::ProductUniform => Ok((0.5 * LN_2, 0.5)),
            Distribution::HalfProductAtom => Ok((0.25 * LN_2, 0.5)),
        }
    }
}

const LN_2: f64 = core::f64::consts::LN_2;
const SQRT_2: f64 = core::f64::consts::SQRT_2;
// sqrt(2*pi)
const SQRT_TAU: f64 = 2.5066282746310002;

fn certificate_checked(alpha: f64, c: f64) -> Result<(f64, f64)> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok((alpha, c))
    } else {
        Err(Error::Domain {
            context: "no valid uniform-mixture certificate",
            value: alpha,
        })
    }
}

fn product_uniform_cdf(z: f64) -> f64 {
    if z <= -1.0 {
        0.0
    } else if z >= 1.0 {
        1.0
    } else if z == 0.0 {
        0.5
    } else if z > 0.0 {
        0.5 + 0.5 * z + 0.5 * z * (1.0 / z).ln()
    } else {
        1.0 - product_uniform_cdf(-z)
    }
}

/// One standard-normal draw via Box-Muller (two uniforms per call; the sine
/// companion is discarded to keep the stream layout simple).
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1], keeps ln finite
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// Complementary error function, Chebyshev-fitted rational approximation;
/// absolute error below 1.2e-7 across the real line. Plenty for the
/// diagnostic CDFs here (the exactly-known laws use closed forms).
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let poly = -z * z - 1.26551223
        + t * (1.00002368
            + t * (0.37409196
                + t * (0.09678418
                    + t * (-0.18628806
                        + t * (0.27886807
                            + t * (-1.13520398
                                + t * (1.48851587 + t * (-0.82215223 + t * 0.17087277))))))));
    let ans = t * poly.exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use approx::assert_relative_eq;

    #[test]
    fn product_pdf_matches_closed_form() {
        let d = Distribution::ProductUniform;
        // ln(2)/2 at 1/2, exactly the same float expression
        assert_eq!(d.pdf(0.5).unwrap(), 0.5 * (1.0f64 / 0.5).ln());
        assert_relative_eq!(d.pdf(0.5).unwrap(), 0.346_573_590_279_972_65, epsilon = 1e-15);
        assert_eq!(d.pdf(1.0).unwrap(), 0.0);
        assert_eq!(d.pdf(1.5).unwrap(), 0.0);
        assert_eq!(d.pdf(-0.25).unwrap(), d.pdf(0.25).unwrap());
        assert!(d.pdf(0.0).is_err());
    }

    #[test]
    fn product_cdf_boundaries_and_symmetry() {
        let d = Distribution::ProductUniform;
        assert_eq!(d.cdf(0.0).unwrap(), 0.5);
        assert_eq!(d.cdf(1.0).unwrap(), 1.0);
        assert_eq!(d.cdf(-1.0).unwrap(), 0.0);
        for &z in &[0.1, 0.37, 0.9] {
            assert_relative_eq!(
                d.cdf(-z).unwrap(),
                1.0 - d.cdf(z).unwrap(),
                epsilon = 1e-15
            );
        }
        // CDF derivative matches the density (central difference).
        for &z in &[0.05, 0.2, 0.5, 0.8] {
            let h = 1e-6;
            let deriv = (d.cdf(z + h).unwrap() - d.cdf(z - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(deriv, d.pdf(z).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn half_product_atom_cdf_has_the_atom() {
        let d = Distribution::HalfProductAtom;
        assert_eq!(d.cdf(0.0).unwrap(), 0.75); // 1/2 atom + half of F_prod(0)
        assert_eq!(d.cdf(1.0).unwrap(), 1.0);
        assert_eq!(d.cdf(-1.0).unwrap(), 0.0);
        let just_below = d.cdf(-1e-12).unwrap();
        assert!(just_below < 0.26 && just_below > 0.24);
    }

    #[test]
    fn certificates() {
        assert_eq!(
            Distribution::ProductUniform
                .contains_uniform_certificate()
                .unwrap(),
            (0.5 * LN_2, 0.5)
        );
        assert_eq!(
            Distribution::HalfProductAtom
                .contains_uniform_certificate()
                .unwrap(),
            (0.25 * LN_2, 0.5)
        );
        assert_eq!(
            Distribution::uniform_symmetric()
                .contains_uniform_certificate()
                .unwrap(),
            (1.0, 1.0)
        );
        let (alpha, c) = Distribution::standard_normal()
            .contains_uniform_certificate()
            .unwrap();
        assert_eq!(c, 1.0);
        assert_relative_eq!(alpha, 0.483_94, epsilon = 1e-4);
        // Certificates really do lower-bound the density on [-c, c].
        for dist in [
            Distribution::uniform_symmetric(),
            Distribution::standard_normal(),
            Distribution::Laplace {
                mean: 0.0,
                scale: 1.0,
            },
            Distribution::ProductUniform,
        ] {
            let (alpha, c) = dist.contains_uniform_certificate().unwrap();
            let floor = alpha / (2.0 * c);
            for i in 1..=100 {
                let z = -c + 2.0 * c * (i as f64) / 101.0;
                if z == 0.0 {
                    continue;
                }
                assert!(
                    dist.pdf(z).unwrap() >= floor - 1e-12,
                    "{}: pdf({z}) below certificate floor",
                    dist.tag()
                );
            }
        }
    }

    #[test]
    fn samples_stay_in_support() {
        let mut rng = rng_from_seed(11);
        for _ in 0..10_000 {
            let z = Distribution::ProductUniform.sample(&mut rng);
            assert!(z.abs() <= 1.0);
            let z = Distribution::HalfProductAtom.sample(&mut rng);
            assert!(z.abs() <= 1.0);
            let z = Distribution::uniform_symmetric().sample(&mut rng);
            assert!((-1.0..1.0).contains(&z));
        }
    }

    #[test]
    fn half_product_atom_hits_zero_about_half_the_time() {
        let mut rng = rng_from_seed(5);
        let n = 20_000;
        let zeros = (0..n)
            .filter(|_| Distribution::HalfProductAtom.sample(&mut rng) == 0.0)
            .count();
        let frac = zeros as f64 / n as f64;
        assert!((0.48..0.52).contains(&frac), "atom fraction {frac}");
    }

    #[test]
    fn erfc_reference_points() {
        // erf(1) = 0.842700792949715; erfc(0) = 1
        assert_relative_eq!(erfc(0.0), 1.0, epsilon = 1e-7);
        assert_relative_eq!(1.0 - erfc(1.0), 0.842_700_792_949_715, epsilon = 2e-7);
        let d = Distribution::standard_normal();
        assert_relative_eq!(d.cdf(0.0).unwrap(), 0.5, epsilon = 1e-7);
        assert_relative_eq!(d.cdf(1.959_963_984_540_054).unwrap(), 0.975, epsilon = 1e-6);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(Distribution::Uniform { a: 1.0, b: 1.0 }.validate().is_err());
        assert!(Distribution::Normal {
            mean: 0.0,
            std_dev: 0.0
        }
        .validate()
        .is_err());
        assert!(Distribution::Uniform { a: 0.5, b: 2.0 }
            .contains_uniform_certificate()
            .is_err());
    }
}
