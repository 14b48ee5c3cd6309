use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{eval_weyl_character, half_spectrum, sample, HaarSample, HalfSpectrum, SignedWeight, Tolerances};
use crate::error::{Error, Result};
use crate::fourier::FourierData;
use crate::group::GroupSpec;
use crate::partition::Partition;

/// Samples per work unit; fixed so that results do not depend on the
/// number of workers.
const CHUNK: usize = 256;
const MAX_RETRIES_PER_SAMPLE: usize = 64;

/// A real-valued class function to average over the group.
#[derive(Clone, Debug, PartialEq)]
pub enum Observable {
    /// `p_λ(g)`.
    TraceProduct(Partition),
    /// `Re χ_γ(g) · p_λ(g)`.
    Twisted { gamma: SignedWeight, lambda: Partition },
    /// `Φ_{n,f}(g)`.
    Phi(FourierData<f64>),
    /// `Re χ_γ(g) · Φ_{n,f}(g)`.
    TwistedPhi { gamma: SignedWeight, f: FourierData<f64> },
    /// `Re χ_a(g) conj(χ_b(g))`.
    CharacterProduct { left: SignedWeight, right: SignedWeight },
}

impl Observable {
    fn max_power(&self) -> usize {
        match self {
            Observable::TraceProduct(l) | Observable::Twisted { lambda: l, .. } => l.part(0) as usize,
            Observable::Phi(f) | Observable::TwistedPhi { f, .. } => f.max_index() as usize,
            Observable::CharacterProduct { .. } => 0,
        }
    }

    fn needs_spectrum(&self) -> bool {
        !matches!(self, Observable::TraceProduct(_) | Observable::Phi(_))
    }

    /// Evaluate on one sample; `h` must be present when a character is involved.
    pub fn eval(&self, s: &HaarSample, h: Option<&HalfSpectrum>, tol: &Tolerances) -> Result<f64> {
        let spectrum = || h.ok_or_else(|| Error::Domain("observable needs the half spectrum".into()));
        Ok(match self {
            Observable::TraceProduct(l) => s.eval_trace_product(l),
            Observable::Twisted { gamma, lambda } => {
                eval_weyl_character(gamma, spectrum()?, tol)?.re * s.eval_trace_product(lambda)
            }
            Observable::Phi(f) => s.eval_phi(f),
            Observable::TwistedPhi { gamma, f } => eval_weyl_character(gamma, spectrum()?, tol)?.re * s.eval_phi(f),
            Observable::CharacterProduct { left, right } => {
                let h = spectrum()?;
                (eval_weyl_character(left, h, tol)? * eval_weyl_character(right, h, tol)?.conj()).re
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            Observable::TraceProduct(l) => format!("p[{l}]"),
            Observable::Twisted { gamma, lambda } => format!("chi[{gamma}]*p[{lambda}]"),
            Observable::Phi(f) => format!("Phi[{f}]"),
            Observable::TwistedPhi { gamma, f } => format!("chi[{gamma}]*Phi[{f}]"),
            Observable::CharacterProduct { left, right } => format!("chi[{left}]*conj(chi[{right}])"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        McConfig {
            samples,
            seed,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    /// Samples that were redrawn after a numerical degeneracy.
    pub resampled: usize,
}

impl MCEstimate {
    /// `(mean - reference) / stderr`.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        }
    }

    pub fn within(&self, reference: f64, sigmas: f64) -> bool {
        self.z_score(reference).abs() <= sigmas
    }
}

/// `E[A]/E[B]` with a delta-method standard error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub numerator: MCEstimate,
    pub denominator: MCEstimate,
    pub ratio: f64,
    pub stderr: f64,
}

/// Running moments: means, second central moments, and the co-moment of
/// the first two coordinates.
#[derive(Clone, Debug)]
struct Moments {
    count: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
    c01: f64,
    resampled: usize,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Moments {
            count: 0,
            mean: vec![0.0; dim],
            m2: vec![0.0; dim],
            c01: 0.0,
            resampled: 0,
        }
    }

    fn push(&mut self, x: &[f64]) {
        self.count += 1;
        let k = self.count as f64;
        let d0 = if x.len() >= 2 { x[0] - self.mean[0] } else { 0.0 };
        for (i, &v) in x.iter().enumerate() {
            let delta = v - self.mean[i];
            self.mean[i] += delta / k;
            self.m2[i] += delta * (v - self.mean[i]);
        }
        if x.len() >= 2 {
            self.c01 += d0 * (x[1] - self.mean[1]);
        }
    }

    fn merge(a: &Moments, b: &Moments) -> Moments {
        if a.count == 0 {
            return b.clone();
        }
        if b.count == 0 {
            return a.clone();
        }
        let (na, nb) = (a.count as f64, b.count as f64);
        let n = na + nb;
        let delta: Vec<f64> = a.mean.iter().zip(&b.mean).map(|(x, y)| y - x).collect();
        Moments {
            count: a.count + b.count,
            mean: a.mean.iter().zip(&delta).map(|(m, d)| m + d * nb / n).collect(),
            m2: (0..a.m2.len())
                .map(|i| a.m2[i] + b.m2[i] + delta[i] * delta[i] * na * nb / n)
                .collect(),
            c01: if delta.len() >= 2 {
                a.c01 + b.c01 + delta[0] * delta[1] * na * nb / n
            } else {
                0.0
            },
            resampled: a.resampled + b.resampled,
        }
    }

    fn merge_tree(parts: &[Moments]) -> Moments {
        match parts.len() {
            0 => Moments::new(0),
            1 => parts[0].clone(),
            len => Moments::merge(&Moments::merge_tree(&parts[..len / 2]), &Moments::merge_tree(&parts[len / 2..])),
        }
    }

    fn variance(&self, i: usize) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2[i] / (self.count - 1) as f64
        }
    }

    fn estimate(&self, i: usize, seed: u64) -> MCEstimate {
        MCEstimate {
            mean: self.mean[i],
            stderr: (self.variance(i) / self.count as f64).sqrt(),
            samples: self.count,
            seed,
            resampled: self.resampled,
        }
    }
}

/// Average an arbitrary vector of functions of `(g, half spectrum)`.
///
/// Sample `i` draws from the ChaCha8 stream `i` of `seed`, so the result is
/// bit-identical for any worker count.
pub fn estimate_fn<F>(
    group: &GroupSpec,
    config: &McConfig,
    max_power: usize,
    needs_spectrum: bool,
    dim: usize,
    f: F,
) -> Result<Vec<MCEstimate>>
where
    F: Fn(&HaarSample, Option<&HalfSpectrum>) -> Result<Vec<f64>> + Sync,
{
    Ok(run(group, config, max_power, needs_spectrum, dim, f)?.into_estimates(config.seed))
}

impl Moments {
    fn into_estimates(self, seed: u64) -> Vec<MCEstimate> {
        (0..self.mean.len()).map(|i| self.estimate(i, seed)).collect()
    }
}

fn run<F>(group: &GroupSpec, config: &McConfig, max_power: usize, needs_spectrum: bool, dim: usize, f: F) -> Result<Moments>
where
    F: Fn(&HaarSample, Option<&HalfSpectrum>) -> Result<Vec<f64>> + Sync,
{
    let tol = &config.tolerances;
    if config.samples < tol.min_samples {
        return Err(Error::Domain(format!(
            "at least {} samples are required, got {}",
            tol.min_samples, config.samples
        )));
    }
    if group.n().is_none() {
        return Err(Error::Domain("Monte Carlo needs a finite rank".into()));
    }
    let draw = |index: usize, moments: &mut Moments| -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        for _ in 0..MAX_RETRIES_PER_SAMPLE {
            let attempt = sample(group, &mut rng, max_power, tol).and_then(|s| {
                let h = if needs_spectrum { Some(half_spectrum(&s, tol)?) } else { None };
                f(&s, h.as_ref())
            });
            match attempt {
                Ok(values) => {
                    moments.push(&values);
                    return Ok(());
                }
                Err(Error::Degenerate(_)) => moments.resampled += 1,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Degenerate(format!("sample {index} stayed degenerate after {MAX_RETRIES_PER_SAMPLE} draws")))
    };
    let chunks = config.samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut moments = Moments::new(dim);
            for index in c * CHUNK..((c + 1) * CHUNK).min(config.samples) {
                draw(index, &mut moments)?;
            }
            Ok(moments)
        })
        .collect::<Result<_>>()?;
    let total = Moments::merge_tree(&parts);
    let limit = tol.max_degenerate_fraction * config.samples as f64;
    if total.resampled as f64 > limit {
        return Err(Error::Degenerate(format!(
            "{} of {} samples were numerically degenerate (limit {:.0})",
            total.resampled, config.samples, limit
        )));
    }
    Ok(total)
}

fn batch_parameters(observables: &[Observable]) -> (usize, bool) {
    (
        observables.iter().map(Observable::max_power).max().unwrap_or(0),
        observables.iter().any(Observable::needs_spectrum),
    )
}

/// Estimate several observables on the same samples.
pub fn estimate_batch(group: &GroupSpec, observables: &[Observable], config: &McConfig) -> Result<Vec<MCEstimate>> {
    let (max_power, needs_spectrum) = batch_parameters(observables);
    let tol = &config.tolerances;
    estimate_fn(group, config, max_power, needs_spectrum, observables.len(), |s, h| {
        observables.iter().map(|o| o.eval(s, h, tol)).collect()
    })
}

pub fn estimate(group: &GroupSpec, observable: &Observable, config: &McConfig) -> Result<MCEstimate> {
    Ok(estimate_batch(group, std::slice::from_ref(observable), config)?.remove(0))
}

/// `E[numerator]/E[denominator]`, with standard error
/// `sqrt(Var(A - R B)/N) / |mean B|`.
pub fn estimate_ratio(
    group: &GroupSpec,
    numerator: &Observable,
    denominator: &Observable,
    config: &McConfig,
) -> Result<RatioEstimate> {
    let pair = [numerator.clone(), denominator.clone()];
    let (max_power, needs_spectrum) = batch_parameters(&pair);
    let tol = &config.tolerances;
    let m = run(group, config, max_power, needs_spectrum, 2, |s, h| {
        pair.iter().map(|o| o.eval(s, h, tol)).collect()
    })?;
    let ratio = m.mean[0] / m.mean[1];
    let var = if m.count < 2 {
        0.0
    } else {
        (m.m2[0] - 2.0 * ratio * m.c01 + ratio * ratio * m.m2[1]) / (m.count - 1) as f64
    };
    Ok(RatioEstimate {
        numerator: m.estimate(0, config.seed),
        denominator: m.estimate(1, config.seed),
        ratio,
        stderr: (var.max(0.0) / m.count as f64).sqrt() / m.mean[1].abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::haar::with_threads;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn moments_merge_matches_direct() {
        let xs: Vec<[f64; 2]> = (0..1000).map(|i| [(i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()]).collect();
        let mut direct = Moments::new(2);
        for x in &xs {
            direct.push(x);
        }
        let parts: Vec<Moments> = xs
            .chunks(37)
            .map(|c| {
                let mut m = Moments::new(2);
                for x in c {
                    m.push(x);
                }
                m
            })
            .collect();
        let merged = Moments::merge_tree(&parts);
        for i in 0..2 {
            assert!((merged.mean[i] - direct.mean[i]).abs() < 1e-12);
            assert!((merged.m2[i] - direct.m2[i]).abs() < 1e-9);
        }
        assert!((merged.c01 - direct.c01).abs() < 1e-9);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let g = GroupSpec::finite(Family::Sp, 2);
        let obs = [
            Observable::TraceProduct(p(&[2])),
            Observable::Twisted {
                gamma: p(&[1]).into(),
                lambda: p(&[1]),
            },
        ];
        let config = McConfig::new(3000, 17);
        let one = with_threads(1, || estimate_batch(&g, &obs, &config)).unwrap().unwrap();
        let four = with_threads(4, || estimate_batch(&g, &obs, &config)).unwrap().unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn small_moments() {
        let config = McConfig::new(20_000, 42);
        let e = estimate(&GroupSpec::finite(Family::Sp, 3), &Observable::TraceProduct(p(&[2])), &config).unwrap();
        assert!(e.within(-1.0, 4.0), "{e:?}");
        let e = estimate(&GroupSpec::finite(Family::SoOdd, 4), &Observable::TraceProduct(p(&[1])), &config).unwrap();
        assert!(e.within(0.0, 4.0), "{e:?}");
    }

    #[test]
    fn rejects_bad_configurations() {
        let g = GroupSpec::finite(Family::Sp, 1);
        assert!(estimate(&g, &Observable::TraceProduct(p(&[1])), &McConfig::new(10, 1)).is_err());
        let stable = GroupSpec::stable(Family::Sp);
        assert!(estimate(&stable, &Observable::TraceProduct(p(&[1])), &McConfig::new(1000, 1)).is_err());
    }

    #[test]
    fn ratio_of_identical_observables() {
        let g = GroupSpec::finite(Family::SoEven, 2);
        let f = FourierData::new(0.0, [(1, 0.3)]).unwrap();
        let r = estimate_ratio(&g, &Observable::Phi(f.clone()), &Observable::Phi(f), &McConfig::new(500, 3)).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.stderr < 1e-9);
    }
}
