use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{GroupMatrix, HaarSample, Tolerances};
use crate::error::{Error, Result};
use crate::group::Family;

const SCHUR_MAX_ITER: usize = 10_000;

/// One angle `θ_k` per conjugate pair `t_k^{±1} = e^{±iθ_k}`.
///
/// Angles lie in `[0, π]`, except that for SO-even the last angle carries
/// the orientation of the element, so that `χ_{λ+}` and `χ_{λ-}` are told
/// apart.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpectrum {
    pub family: Family,
    pub angles: Vec<f64>,
    pub pairing_residual: f64,
}

impl HalfSpectrum {
    /// Build from explicit angles (rotation-block conventions).
    pub fn from_angles(family: Family, angles: Vec<f64>) -> Self {
        HalfSpectrum {
            family,
            angles,
            pairing_residual: 0.0,
        }
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// The full eigenvalue multiset, with the fixed `+1` for SO-odd.
    pub fn full_spectrum(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .angles
            .iter()
            .flat_map(|&t| [Complex64::from_polar(1.0, t), Complex64::from_polar(1.0, -t)])
            .collect();
        if self.family == Family::SoOdd {
            out.push(Complex64::new(1.0, 0.0));
        }
        out
    }
}

fn eigenvalues(matrix: &GroupMatrix) -> Result<Vec<Complex64>> {
    let fail = || Error::Degenerate("Schur decomposition did not converge".into());
    match matrix {
        GroupMatrix::Real(g) => {
            let schur = Schur::try_new(g.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(fail)?;
            Ok(schur.complex_eigenvalues().iter().copied().collect())
        }
        GroupMatrix::Complex(g) => {
            let schur = Schur::try_new(g.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(fail)?;
            Ok(schur.eigenvalues().ok_or_else(fail)?.iter().copied().collect())
        }
    }
}

/// Eigenvalues of `g` grouped into conjugate pairs.
pub fn half_spectrum(s: &HaarSample, tol: &Tolerances) -> Result<HalfSpectrum> {
    let family = s.group().family;
    let n = s.rank();
    let mut eig = eigenvalues(s.matrix())?;
    if family == Family::SoOdd {
        let (pos, _) = eig
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - 1.0).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::Degenerate("empty spectrum".into()))?;
        eig.swap_remove(pos);
    }
    let (mut angles, residual) = pair_conjugates(eig);
    if residual > tol.pairing || angles.len() != n {
        return Err(Error::Degenerate(format!("conjugate pairing residual {residual:e}")));
    }
    if family == Family::SoEven {
        if let GroupMatrix::Real(g) = s.matrix() {
            orient(g, &mut angles);
        }
    }
    Ok(HalfSpectrum {
        family,
        angles,
        pairing_residual: residual,
    })
}

/// Greedy conjugate matching in order of increasing `|arg|`.
fn pair_conjugates(mut eig: Vec<Complex64>) -> (Vec<f64>, f64) {
    eig.sort_by(|a, b| a.arg().abs().total_cmp(&b.arg().abs()));
    let mut used = vec![false; eig.len()];
    let mut angles = Vec::with_capacity(eig.len() / 2);
    let mut residual: f64 = 0.0;
    for i in 0..eig.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let best = (0..eig.len())
            .filter(|&j| !used[j])
            .map(|j| (j, (eig[i] - eig[j].conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, r)) => {
                used[j] = true;
                residual = residual.max(r);
                angles.push(0.5 * (eig[i].arg().abs() + eig[j].arg().abs()));
            }
            None => residual = f64::INFINITY,
        }
    }
    (angles, residual)
}

/// `Pf(A)` of a real skew-symmetric matrix, by Parlett-Reid elimination.
pub fn pfaffian(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut a = a.clone();
    let mut pf = 1.0;
    for k in (0..n.saturating_sub(1)).step_by(2) {
        let kp = (k + 1..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k + 1);
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)];
        if pivot == 0.0 {
            return 0.0;
        }
        pf *= pivot;
        for i in k + 2..n {
            let tau_i = a[(k, i)] / pivot;
            for j in k + 2..n {
                let tau_j = a[(k, j)] / pivot;
                a[(i, j)] += tau_i * a[(j, k + 1)] - a[(i, k + 1)] * tau_j;
            }
        }
    }
    pf
}

/// `(-1)^n Pf((g - gᵗ)/2)` is the SO-conjugation invariant `Π_k sin θ_k` of
/// the oriented angles; flip the last angle when the eigenvalue choice
/// disagrees.
fn orient(g: &DMatrix<f64>, angles: &mut [f64]) {
    let sign = if angles.len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let invariant = sign * pfaffian(&((g - g.transpose()) * 0.5));
    let unoriented: f64 = angles.iter().map(|t| t.sin()).product();
    if invariant * unoriented < 0.0 {
        if let Some(last) = angles.last_mut() {
            *last = -*last;
        }
    }
}
