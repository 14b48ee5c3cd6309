use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{HalfSpectrum, Tolerances};
use crate::error::{Error, Result};
use crate::group::Family;
use crate::partition::Partition;

/// A highest weight: a partition, whose last part may be negated for SO-even
/// (the `λ-` of a pair `λ±`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedWeight {
    pub shape: Partition,
    pub negative_last: bool,
}

impl SignedWeight {
    pub fn plus(shape: Partition) -> Self {
        SignedWeight {
            shape,
            negative_last: false,
        }
    }

    pub fn minus(shape: Partition) -> Self {
        SignedWeight {
            shape,
            negative_last: true,
        }
    }
}

impl From<Partition> for SignedWeight {
    fn from(shape: Partition) -> Self {
        SignedWeight::plus(shape)
    }
}

/// `"2,1"` or, for the negated last part, `"2,1-"`.
impl FromStr for SignedWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix('-') {
            Some(rest) => Ok(SignedWeight::minus(rest.parse()?)),
            None => Ok(SignedWeight::plus(s.parse()?)),
        }
    }
}

impl fmt::Display for SignedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.shape, if self.negative_last { "-" } else { "" })
    }
}

fn det_of(angles: &[f64], exps: &[f64], entry: impl Fn(f64) -> f64) -> f64 {
    let n = angles.len();
    DMatrix::from_fn(n, n, |i, j| entry(exps[j] * angles[i])).determinant()
}

/// `χ^G_γ` on the conjugacy class of the given half spectrum, by the Weyl
/// determinant formulas.
pub fn eval_weyl_character(weight: &SignedWeight, h: &HalfSpectrum, tol: &Tolerances) -> Result<Complex64> {
    let n = h.rank();
    let gamma = &weight.shape;
    if gamma.len() > n {
        return Err(Error::Domain(format!("l({gamma}) = {} exceeds rank {n}", gamma.len())));
    }
    if weight.negative_last && (h.family != Family::SoEven || gamma.len() != n) {
        return Err(Error::Domain(format!(
            "a negative last part needs SO-even and l(γ) = n, got {weight} for {}",
            h.family
        )));
    }
    let shift = match h.family {
        Family::Sp => 1.0,
        Family::SoOdd => 0.5,
        Family::SoEven => 0.0,
    };
    let rho: Vec<f64> = (0..n).map(|j| (n - 1 - j) as f64 + shift).collect();
    let mut exps: Vec<f64> = (0..n).map(|j| f64::from(gamma.part(j)) + rho[j]).collect();
    if weight.negative_last {
        exps[n - 1] = -exps[n - 1];
    }
    let angles = &h.angles;
    let degenerate = |d: f64| Error::Degenerate(format!("Weyl denominator {d:e} below tolerance"));
    match h.family {
        Family::Sp | Family::SoOdd => {
            let den = det_of(angles, &rho, f64::sin);
            if den.abs() < tol.weyl_denominator {
                return Err(degenerate(den));
            }
            Ok(Complex64::new(det_of(angles, &exps, f64::sin) / den, 0.0))
        }
        Family::SoEven => {
            let den = det_of(angles, &rho, f64::cos);
            if den.abs() < tol.weyl_denominator {
                return Err(degenerate(den));
            }
            let even = det_of(angles, &exps, f64::cos);
            let odd = if gamma.len() == n {
                Complex64::i().powu(n as u32) * det_of(angles, &exps, f64::sin)
            } else {
                Complex64::new(0.0, 0.0)
            };
            Ok((Complex64::new(even, 0.0) + odd) / den)
        }
    }
}

/// The `O(2n)` character `χ^O_γ`: `χ_{γ+} + χ_{γ-}` when `γ_n != 0`,
/// otherwise `χ_γ`.
pub fn eval_orthogonal_character(gamma: &Partition, h: &HalfSpectrum, tol: &Tolerances) -> Result<f64> {
    if h.family != Family::SoEven {
        return Err(Error::Domain("orthogonal characters are defined for SO-even spectra".into()));
    }
    let plus = eval_weyl_character(&SignedWeight::plus(gamma.clone()), h, tol)?;
    if gamma.len() == h.rank() && !gamma.is_empty() {
        let minus = eval_weyl_character(&SignedWeight::minus(gamma.clone()), h, tol)?;
        Ok((plus + minus).re)
    } else {
        Ok(plus.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::haar::{half_spectrum, sample};
    use crate::partition::enumerate_up_to;
    use crate::szego::weyl_dimension;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn so2_characters() {
        let tol = Tolerances::default();
        let h = HalfSpectrum::from_angles(Family::SoEven, vec![0.7]);
        let v = eval_weyl_character(&p(&[1]).into(), &h, &tol).unwrap();
        assert!((v - Complex64::from_polar(1.0, 0.7)).norm() < 1e-14);
        let v = eval_weyl_character(&SignedWeight::minus(p(&[3])), &h, &tol).unwrap();
        assert!((v - Complex64::from_polar(1.0, -2.1)).norm() < 1e-14);
        let o = eval_orthogonal_character(&p(&[1]), &h, &tol).unwrap();
        assert!((o - 2.0 * 0.7f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn trivial_character() {
        let tol = Tolerances::default();
        for family in Family::ALL {
            let h = HalfSpectrum::from_angles(family, vec![0.3, 1.9, 2.5]);
            let v = eval_weyl_character(&Partition::empty().into(), &h, &tol).unwrap();
            assert!((v - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn near_identity_gives_dimension() {
        let tol = Tolerances {
            weyl_denominator: 0.0,
            ..Tolerances::default()
        };
        for family in Family::ALL {
            let n = 3;
            let h = HalfSpectrum::from_angles(family, vec![0.01, 0.025, 0.04]);
            for gamma in enumerate_up_to(4).unwrap().into_iter().filter(|g| g.len() <= n) {
                let v = eval_weyl_character(&gamma.clone().into(), &h, &tol).unwrap();
                let d = weyl_dimension(family, n, &gamma).unwrap().to_f64().unwrap();
                assert!((v.re - d).abs() < 2e-2 * d, "{family} {gamma}: {v} vs {d}");
            }
        }
    }

    #[test]
    fn standard_character_is_trace() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for family in Family::ALL {
            for n in 1..=4 {
                let g = GroupSpec::finite(family, n);
                for _ in 0..20 {
                    let s = sample(&g, &mut rng, 2, &tol).unwrap();
                    let h = half_spectrum(&s, &tol).unwrap();
                    let v = eval_weyl_character(&p(&[1]).into(), &h, &tol).unwrap();
                    let expected = match family {
                        Family::SoEven if n == 1 => Complex64::from_polar(1.0, h.angles[0]),
                        _ => Complex64::new(s.trace_power(1), 0.0),
                    };
                    assert!((v - expected).norm() < 1e-6, "{family} n={n}");
                    // Second exterior power: (p_1² - p_2)/2.
                    if n >= 3 || (n == 2 && family != Family::SoEven) {
                        let t1 = s.trace_power(1);
                        let ext2 = (t1 * t1 - s.trace_power(2)) / 2.0;
                        let v = eval_weyl_character(&p(&[1, 1]).into(), &h, &tol).unwrap();
                        let expected = if family == Family::Sp { ext2 - 1.0 } else { ext2 };
                        assert!((v.re - expected).abs() < 1e-6, "{family} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonal_character_sums_signed_pair() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let g = GroupSpec::finite(Family::SoEven, 2);
        for _ in 0..50 {
            let s = sample(&g, &mut rng, 2, &tol).unwrap();
            let h = half_spectrum(&s, &tol).unwrap();
            for gamma in [p(&[1, 1]), p(&[2, 1]), p(&[2, 2])] {
                let plus = eval_weyl_character(&SignedWeight::plus(gamma.clone()), &h, &tol).unwrap();
                let minus = eval_weyl_character(&SignedWeight::minus(gamma.clone()), &h, &tol).unwrap();
                let o = eval_orthogonal_character(&gamma, &h, &tol).unwrap();
                assert!((plus + minus - o).norm() < 1e-6);
                assert!((plus - minus.conj()).norm() < 1e-9 || (plus.im.abs() < 1e-9));
            }
            // Λ²(R⁴) splits into the self-dual and anti-self-dual parts.
            let t1 = s.trace_power(1);
            let ext2 = (t1 * t1 - s.trace_power(2)) / 2.0;
            assert!((eval_orthogonal_character(&p(&[1, 1]), &h, &tol).unwrap() - ext2).abs() < 1e-6);
        }
    }

    #[test]
    fn degenerate_denominator() {
        let tol = Tolerances::default();
        let h = HalfSpectrum::from_angles(Family::Sp, vec![0.5, 0.5]);
        assert!(matches!(
            eval_weyl_character(&p(&[1]).into(), &h, &tol),
            Err(Error::Degenerate(_))
        ));
        let h = HalfSpectrum::from_angles(Family::SoEven, vec![0.0, 0.0]);
        assert!(matches!(
            eval_weyl_character(&Partition::empty().into(), &h, &tol),
            Err(Error::Degenerate(_))
        ));
        let h = HalfSpectrum::from_angles(Family::Sp, vec![0.5]);
        assert!(eval_weyl_character(&p(&[1, 1]).into(), &h, &tol).is_err());
        assert!(eval_weyl_character(&SignedWeight::minus(p(&[1])), &h, &tol).is_err());
    }
}
