//! Limits of character-twisted averages of multiplicative class functions
//!
//! `Φ_{n,f}(g) = e^{n c_0} exp(Σ_{i>0} c_i tr(g^i))`.
//!
//! The limit ratio `R(γ, (c_i)) = lim E[χ_γ Φ]/E[Φ]` is evaluated two ways
//! (a character sum, and the Schur function `s_γ` at `p_i = i c_i`), both
//! of which must agree. [`johansson_limit`] gives the untwisted asymptotics and
//! [`expect_phi_series`] the exact truncated series at finite rank with a
//! rigorous tail bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expansion::SchurExpansion;
use crate::expectation;
use crate::fourier::FourierData;
use crate::group::{Family, GroupSpec};
use crate::lr;
use crate::partition::{self, factorial, Partition};
use crate::scalar::Scalar;
use crate::symgroup;

/// Conventions attached to every asymptotic result.
pub const JOHANSSON_CONVENTIONS: [&str; 2] = [
    "johansson_limit is the limit of E_G[Phi_{n,f}] / e^{n c0}; the e^{n c0} prefactor is omitted",
    "for so-odd the limit formula describes the half-spectrum product prod_k sigma(t_k) = e^{-sum_{i>0} c_i} Phi_{n,f}, excluding the fixed eigenvalue 1",
];

/// `Π_i c_i^{λ(i)} / λ(i)!`.
pub fn monomial_weight<S: Scalar>(lambda: &Partition, f: &FourierData<S>) -> S {
    let mut acc = S::one();
    for (i, count) in lambda.multiplicities() {
        let c = f.c(i);
        if c.is_zero() {
            return S::zero();
        }
        acc = acc * num_traits::pow(c, count) / S::from_bigint(&BigInt::from(factorial(count)));
    }
    acc
}

/// `R(γ) = Σ_{λ ⊢ |γ|} χ_γ(λ) Π c_i^{λ(i)}/λ(i)!`.
pub fn ratio_character_sum<S: Scalar>(gamma: &Partition, f: &FourierData<S>) -> Result<S> {
    let mut acc = S::zero();
    for lambda in partition::enumerate(gamma.weight())? {
        let w = monomial_weight(&lambda, f);
        if w.is_zero() {
            continue;
        }
        acc = acc + S::from_bigint(&symgroup::character_value(gamma, &lambda)?) * w;
    }
    Ok(acc)
}

/// `s_γ = Σ_λ χ_γ(λ) p_λ / z_λ` evaluated at `p_i = i c_i`.
pub fn ratio_schur_specialization<S: Scalar>(gamma: &Partition, f: &FourierData<S>) -> Result<S> {
    let mut acc = S::zero();
    for lambda in partition::enumerate(gamma.weight())? {
        let mut p = S::one();
        for &part in lambda.parts() {
            p = p * S::from_u64(u64::from(part)) * f.c(part);
        }
        if p.is_zero() {
            continue;
        }
        let chi = S::from_bigint(&symgroup::character_value(gamma, &lambda)?);
        acc = acc + chi * p / S::from_bigint(&BigInt::from(lambda.z()));
    }
    Ok(acc)
}

/// `R(γ, (c_i))` with both defining expressions checked against each other.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurSpecialization<S: Scalar> {
    pub gamma: Partition,
    pub value: S,
}

impl<S: Scalar> SchurSpecialization<S> {
    pub fn new(gamma: &Partition, f: &FourierData<S>) -> Result<Self> {
        let value = ratio_schur_specialization(gamma, f)?;
        if expectation::verification_enabled() {
            let other = ratio_character_sum(gamma, f)?;
            if !value.close_to(&other) {
                return Err(Error::Consistency(format!(
                    "ratio forms disagree for gamma = ({gamma}): {value:?} vs {other:?}"
                )));
            }
        }
        Ok(SchurSpecialization {
            gamma: gamma.clone(),
            value,
        })
    }
}

/// Exponent of the Johansson limit:
/// `Σ i c_i²/2 - Σ c_{2i-1}` (SO-odd), `Σ i c_i²/2 - Σ c_{2i}` (Sp),
/// `Σ i c_i²/2 + Σ c_{2i}` (SO-even).
pub fn johansson_exponent<S: Scalar>(family: Family, f: &FourierData<S>) -> S {
    let two = S::one() + S::one();
    let mut quad = S::zero();
    let mut odd = S::zero();
    let mut even = S::zero();
    for (i, c) in f.support() {
        quad = quad + S::from_u64(u64::from(i)) * c.clone() * c.clone() / two.clone();
        if i % 2 == 1 {
            odd = odd + c.clone();
        } else {
            even = even + c.clone();
        }
    }
    match family {
        Family::SoOdd => quad - odd,
        Family::Sp => quad - even,
        Family::SoEven => quad + even,
    }
}

/// `lim_n E_G[Φ_{n,f}] / e^{n c_0}`; see [`JOHANSSON_CONVENTIONS`] for the
/// SO-odd normalization.
pub fn johansson_limit<S: Scalar>(family: Family, f: &FourierData<S>) -> f64 {
    johansson_exponent(family, f).to_f64().exp()
}

/// Factor `F` with `Φ_{n,f}(g) = e^{n c_0} F Π_k σ(t_k)/e^{n c_0}`: the
/// contribution of the fixed eigenvalue 1 of `SO(2n+1)`, `exp(Σ_{i>0} c_i)`;
/// 1 for the other families.
pub fn fixed_eigenvalue_factor<S: Scalar>(family: Family, f: &FourierData<S>) -> f64 {
    match family {
        Family::SoOdd => f.support().map(|(_, c)| c.to_f64()).sum::<f64>().exp(),
        Family::Sp | Family::SoEven => 1.0,
    }
}

/// `R(γ, f) · johansson_limit(family, f)`.
pub fn twisted_asymptotic<S: Scalar>(family: Family, gamma: &Partition, f: &FourierData<S>) -> Result<f64> {
    Ok(ratio_schur_specialization(gamma, f)?.to_f64() * johansson_limit(family, f))
}

/// Dimension of the irreducible representation of highest weight `γ` of
/// the rank-`n` group (for SO-even, the representation `γ_+`).
pub fn weyl_dimension(family: Family, n: usize, gamma: &Partition) -> Result<BigUint> {
    if gamma.len() > n {
        return Err(Error::Domain(format!("l({gamma}) = {} exceeds rank {n}", gamma.len())));
    }
    // Doubled shifted exponents keep B_n integral.
    let (shift, linear) = match family {
        Family::Sp => (2, true),
        Family::SoOdd => (1, true),
        Family::SoEven => (0, false),
    };
    let exps: Vec<i64> = (0..n)
        .map(|j| 2 * (gamma.part(j) as i64 + (n - 1 - j) as i64) + shift)
        .collect();
    let rho: Vec<i64> = (0..n).map(|j| 2 * (n - 1 - j) as i64 + shift).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(exps[i] * exps[i] - exps[j] * exps[j]);
            den *= BigInt::from(rho[i] * rho[i] - rho[j] * rho[j]);
        }
        if linear {
            num *= BigInt::from(exps[i]);
            den *= BigInt::from(rho[i]);
        }
    }
    let r = BigRational::new(num, den);
    if !r.is_integer() || r < BigRational::zero() {
        return Err(Error::Consistency(format!("non-integral Weyl dimension {r}")));
    }
    Ok(r.to_integer().to_biguint().unwrap_or_default())
}

/// Truncated series for `E_G[χ_γ Φ_{n,f}]` at finite rank.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSeries<S: Scalar> {
    pub rank: usize,
    pub cutoff: usize,
    /// `Σ_{|λ| <= W} (Π c_i^{λ(i)}/λ(i)!) E_G[χ_γ p_λ]`, without `e^{n c_0}`.
    pub sum: S,
    /// `n c_0`.
    pub log_prefactor: f64,
    /// Bound on `|E_G[χ_γ Φ] - value()|`, prefactor included.
    pub tail_bound: f64,
    pub terms: usize,
}

impl<S: Scalar> PhiSeries<S> {
    pub fn value(&self) -> f64 {
        self.log_prefactor.exp() * self.sum.to_f64()
    }

    /// The exact partial sum, available when `c_0 = 0`.
    pub fn exact_value(&self) -> Option<S> {
        (self.log_prefactor == 0.0).then(|| self.sum.clone())
    }
}

/// Partitions of weight `<= max_weight` using only the given parts.
pub fn partitions_with_parts(parts: &[u32], max_weight: usize) -> Vec<Partition> {
    let mut sorted: Vec<u32> = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    parts_rec(&sorted, 0, max_weight, &mut current, &mut out);
    out.sort();
    out
}

fn parts_rec(parts: &[u32], idx: usize, remaining: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if idx == parts.len() {
        out.push(Partition::new(current.clone()));
        return;
    }
    let p = parts[idx] as usize;
    let mut used = 0;
    loop {
        parts_rec(parts, idx + 1, remaining - used * p, current, out);
        if (used + 1) * p > remaining {
            break;
        }
        used += 1;
        current.push(parts[idx]);
    }
    for _ in 0..used {
        current.pop();
    }
}

/// `e^{n c_0} Σ_{|λ| <= W} (Π c_i^{λ(i)}/λ(i)!) E_G[χ_γ p_λ]` with a tail
/// bound from `|E χ_γ p_λ| <= dim(γ) m^{l(λ)}`.
pub fn expect_phi_series<S: Scalar>(
    group: &GroupSpec,
    gamma: &Partition,
    f: &FourierData<S>,
    cutoff: usize,
) -> Result<PhiSeries<S>> {
    let n = group
        .n()
        .ok_or_else(|| Error::Domain("the Phi series needs a finite rank".into()))?;
    if cutoff > n {
        return Err(Error::Domain(format!("cutoff W = {cutoff} exceeds rank n = {n}")));
    }
    let m = group.family.matrix_size(n) as f64;
    let support: Vec<u32> = f.support().map(|(i, _)| i).collect();
    let mut sum = S::zero();
    let mut bound_partial = 0.0f64;
    let mut terms = 0;
    let abs_f = FourierData::new(
        0.0,
        f.support().map(|(i, c)| (i, c.to_f64().abs() * m)),
    )?;
    for lambda in partitions_with_parts(&support, cutoff) {
        bound_partial += monomial_weight(&lambda, &abs_f);
        let w = monomial_weight(&lambda, f);
        let e = expectation::expect_twisted(group, gamma, &lambda)?;
        if !e.is_zero() {
            sum = sum + w * S::from_bigint(&e);
            terms += 1;
        }
    }
    let log_prefactor = n as f64 * f.c0().to_f64();
    let dim = weyl_dimension(group.family, n, gamma)?.to_f64().unwrap_or(f64::INFINITY);
    let total = (m * f.positive_abs_sum().to_f64()).exp();
    let tail = (total - bound_partial).max(0.0) + 4.0 * f64::EPSILON * total;
    Ok(PhiSeries {
        rank: n,
        cutoff,
        sum,
        log_prefactor,
        tail_bound: dim * log_prefactor.exp() * tail,
        terms,
    })
}

/// LR product of Weyl characters, tagged with its validity constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylProduct {
    pub mu: Partition,
    pub nu: Partition,
    /// `Σ_λ c^λ_{μν} χ_λ`.
    pub expansion: SchurExpansion,
    /// `l(μ) + l(ν)`: the rule is only claimed for `n >=` this.
    pub min_rank: usize,
}

impl WeylProduct {
    /// Whether the tag admits `(family, n)`. SO-even is admitted only
    /// strictly above `min_rank`, away from the split characters `λ_±`.
    pub fn is_flagged_valid(&self, family: Family, n: usize) -> bool {
        match family {
            Family::SoEven => n > self.min_rank,
            Family::Sp | Family::SoOdd => n >= self.min_rank,
        }
    }
}

pub fn weyl_product(mu: &Partition, nu: &Partition) -> WeylProduct {
    WeylProduct {
        mu: mu.clone(),
        nu: nu.clone(),
        expansion: lr::schur_product(mu, nu),
        min_rank: mu.len() + nu.len(),
    }
}

/// Full stable-range product of orthogonal or symplectic characters:
/// `χ_μ χ_ν = Σ_{ζ,σ,τ} c^μ_{ζσ} c^ν_{ζτ} c^λ_{στ} χ_λ`. Its top-degree
/// part (`ζ = ∅`) is [`weyl_product`].
pub fn weyl_product_full(mu: &Partition, nu: &Partition) -> SchurExpansion {
    let mut out = SchurExpansion::new();
    let max_zeta = mu.weight().min(nu.weight());
    for zw in 0..=max_zeta {
        for zeta in partition::enumerate_bounded(zw, usize::MAX).unwrap_or_default() {
            if !zeta.is_contained_in(mu) || !zeta.is_contained_in(nu) {
                continue;
            }
            for sigma in partition::enumerate_bounded(mu.weight() - zw, usize::MAX).unwrap_or_default() {
                let a = lr::lr_count(mu, &zeta, &sigma);
                if a == 0 {
                    continue;
                }
                for tau in partition::enumerate_bounded(nu.weight() - zw, usize::MAX).unwrap_or_default() {
                    let b = lr::lr_count(nu, &zeta, &tau);
                    if b == 0 {
                        continue;
                    }
                    let scale = BigRational::from_integer(BigInt::from(a * b));
                    for (lambda, c) in lr::schur_product(&sigma, &tau).iter() {
                        out.add_term(lambda.clone(), c * &scale);
                    }
                }
            }
        }
    }
    out
}
