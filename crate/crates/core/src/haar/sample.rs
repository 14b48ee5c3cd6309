use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::Tolerances;
use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::partition::Partition;

/// Real orthogonal matrices for SO, complex unitary ones for Sp.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl GroupMatrix {
    pub fn size(&self) -> usize {
        match self {
            GroupMatrix::Real(m) => m.nrows(),
            GroupMatrix::Complex(m) => m.nrows(),
        }
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        match self {
            GroupMatrix::Real(m) => m.map(|x| Complex64::new(x, 0.0)),
            GroupMatrix::Complex(m) => m.clone(),
        }
    }
}

/// A group element with its cached power traces `tr(g^i)`.
#[derive(Clone, Debug)]
pub struct HaarSample {
    group: GroupSpec,
    matrix: GroupMatrix,
    /// `trace_powers[i - 1] = tr(g^i)`.
    trace_powers: Vec<f64>,
}

impl HaarSample {
    /// Wrap an explicit matrix, checking the group invariants.
    pub fn from_matrix(group: GroupSpec, matrix: GroupMatrix, max_power: usize, tol: &Tolerances) -> Result<Self> {
        let n = group
            .n()
            .ok_or_else(|| Error::Domain("sampling needs a finite rank".into()))?;
        let m = group.family.matrix_size(n);
        if matrix.size() != m || !matches!((&matrix, group.family), (GroupMatrix::Complex(_), Family::Sp) | (GroupMatrix::Real(_), Family::SoEven | Family::SoOdd)) {
            return Err(Error::Domain(format!("matrix does not have the shape of an element of {group}")));
        }
        check_invariants(&matrix, group.family, n, tol)?;
        let mut s = HaarSample {
            group,
            matrix,
            trace_powers: Vec::new(),
        };
        s.extend_powers(max_power, tol)?;
        Ok(s)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn matrix(&self) -> &GroupMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.group.n().unwrap_or(0)
    }

    fn extend_powers(&mut self, max_power: usize, tol: &Tolerances) -> Result<()> {
        if self.trace_powers.len() >= max_power {
            return Ok(());
        }
        match &self.matrix {
            GroupMatrix::Real(g) => {
                let mut power = g.clone();
                for i in 1..=max_power {
                    if i > 1 {
                        power = &power * g;
                    }
                    if i > self.trace_powers.len() {
                        self.trace_powers.push(power.trace());
                    }
                }
            }
            GroupMatrix::Complex(g) => {
                let mut power = g.clone();
                for i in 1..=max_power {
                    if i > 1 {
                        power = &power * g;
                    }
                    if i > self.trace_powers.len() {
                        let t = power.trace();
                        if t.im.abs() > tol.trace_imaginary {
                            return Err(Error::Degenerate(format!(
                                "tr(g^{i}) has imaginary part {:e}",
                                t.im
                            )));
                        }
                        self.trace_powers.push(t.re);
                    }
                }
            }
        }
        Ok(())
    }

    /// `tr(g^i)` for `i >= 1`; powers beyond the cache are computed directly.
    pub fn trace_power(&self, i: usize) -> f64 {
        if i == 0 {
            return self.matrix.size() as f64;
        }
        if let Some(&t) = self.trace_powers.get(i - 1) {
            return t;
        }
        match &self.matrix {
            GroupMatrix::Real(g) => g.pow(i as u32).trace(),
            GroupMatrix::Complex(g) => g.pow(i as u32).trace().re,
        }
    }

    /// `Π_i tr(g^{λ_i})`.
    pub fn eval_trace_product(&self, lambda: &Partition) -> f64 {
        lambda.parts().iter().map(|&p| self.trace_power(p as usize)).product()
    }

    /// `e^{n c_0} exp(Σ_{i>0} c_i tr(g^i))`.
    pub fn eval_phi(&self, f: &crate::fourier::FourierData<f64>) -> f64 {
        let exponent: f64 = f.support().map(|(i, c)| c * self.trace_power(i as usize)).sum();
        (self.rank() as f64 * f.c0() + exponent).exp()
    }
}

/// Draw one Haar-distributed element, caching `tr(g^i)` for `i <= max_power`.
pub fn sample<R: Rng + ?Sized>(group: &GroupSpec, rng: &mut R, max_power: usize, tol: &Tolerances) -> Result<HaarSample> {
    let n = group
        .n()
        .ok_or_else(|| Error::Domain("sampling needs a finite rank".into()))?;
    if n == 0 {
        return Err(Error::Domain("sampling needs rank n >= 1".into()));
    }
    let matrix = match group.family {
        Family::Sp => GroupMatrix::Complex(sample_sp(n, rng)?),
        Family::SoEven | Family::SoOdd => GroupMatrix::Real(sample_so(group.family.matrix_size(n), rng)?),
    };
    HaarSample::from_matrix(*group, matrix, max_power, tol)
}

fn sample_so<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<DMatrix<f64>> {
    let a = DMatrix::<f64>::from_fn(m, m, |_, _| rng.sample(StandardNormal));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..m {
        let d = r[(j, j)];
        if d == 0.0 {
            return Err(Error::Degenerate("singular Gaussian matrix".into()));
        }
        if d < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.swap_columns(0, 1);
    }
    Ok(q)
}

/// Quaternionic Gram-Schmidt on an `n x n` quaternion Gaussian matrix,
/// realized with 2x2 blocks `[[z1, z2], [-conj z2, conj z1]]`, then permuted
/// from the interleaved basis to the one where `g J gᵗ = J`.
fn sample_sp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DMatrix<Complex64>> {
    let m = 2 * n;
    let mut gauss = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let mut q = DMatrix::<Complex64>::zeros(m, m);
    for b in 0..n {
        for a in 0..n {
            let z1 = gauss();
            let z2 = gauss();
            q[(2 * a, 2 * b)] = z1;
            q[(2 * a + 1, 2 * b)] = -z2.conj();
        }
    }
    for b in 0..n {
        let mut col = q.column(2 * b).into_owned();
        for prev in 0..2 * b {
            let basis = q.column(prev);
            let proj = basis.dotc(&col);
            col -= basis * proj;
        }
        let norm = col.norm();
        if norm < 1e-12 {
            return Err(Error::Degenerate("rank-deficient quaternion Gaussian matrix".into()));
        }
        col /= Complex64::new(norm, 0.0);
        q.set_column(2 * b, &col);
        for a in 0..n {
            let u = col[2 * a];
            let v = col[2 * a + 1];
            q[(2 * a, 2 * b + 1)] = -v.conj();
            q[(2 * a + 1, 2 * b + 1)] = u.conj();
        }
    }
    let target = |i: usize| if i.is_multiple_of(2) { n + i / 2 } else { i / 2 };
    let mut g = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g[(target(i), target(j))] = q[(i, j)];
        }
    }
    Ok(g)
}

/// `J = [[0, -I], [I, 0]]`.
pub(crate) fn symplectic_form(n: usize) -> DMatrix<Complex64> {
    let mut j = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for a in 0..n {
        j[(a, n + a)] = Complex64::new(-1.0, 0.0);
        j[(n + a, a)] = Complex64::new(1.0, 0.0);
    }
    j
}

fn check_invariants(matrix: &GroupMatrix, family: Family, n: usize, tol: &Tolerances) -> Result<()> {
    let bad = |what: &str, r: f64| Err(Error::Degenerate(format!("{what} residual {r:e} out of tolerance")));
    match matrix {
        GroupMatrix::Real(g) => {
            let m = g.nrows();
            let r = (g * g.transpose() - DMatrix::<f64>::identity(m, m)).amax();
            if r >= tol.unitarity {
                return bad("orthogonality", r);
            }
            let d = (g.determinant() - 1.0).abs();
            if d >= tol.determinant {
                return bad("determinant", d);
            }
        }
        GroupMatrix::Complex(g) => {
            let m = g.nrows();
            let r = (g * g.adjoint() - DMatrix::<Complex64>::identity(m, m)).camax();
            if r >= tol.unitarity {
                return bad("unitarity", r);
            }
            if family == Family::Sp {
                let j = symplectic_form(n);
                let r = (g * &j * g.transpose() - j).camax();
                if r >= tol.symplectic {
                    return bad("symplectic", r);
                }
            }
        }
    }
    Ok(())
}
