//! Exact Haar averages of trace products `p_λ(g) = Π tr(g^{λ_i})` and of
//! their twists by a Weyl character, over `Sp(2n)`, `SO(2n)`, `SO(2n+1)`.
//!
//! Twisted averages have two independent evaluations:
//!
//! * route A sums `⟨χ_γ ⊙ χ_β, p_λ⟩` over `β ⊢ |λ| - |γ|` with `β'` even
//!   (symplectic) or `β` even (orthogonal), through LR products;
//! * route B splits `λ = λ_a ∪ λ_b` with `|λ_a| = |γ|` and sums
//!   `λ!/(λ_a! λ_b!) · χ_γ(λ_a) · E[p_{λ_b}]`, through the matching count.
//!
//! Route B is the production path. Route A re-checks it when verification
//! is on (always in debug builds, or after [`set_verification`]).

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::matching;
use crate::partition::{self, Partition};
use crate::symgroup::{self, ClassFunction};

static VERIFY: AtomicBool = AtomicBool::new(cfg!(debug_assertions));

/// Turns cross-route verification of [`expect_twisted`] on or off.
pub fn set_verification(on: bool) {
    VERIFY.store(on, Ordering::Relaxed);
}

pub fn verification_enabled() -> bool {
    VERIFY.load(Ordering::Relaxed)
}

fn is_all_ones(lambda: &Partition) -> bool {
    lambda.parts().iter().all(|&p| p == 1)
}

/// `E_G[p_λ] = sgn(λ)^ε g(λ)` for `n >= |λ|`.
///
/// Below the stable range only `λ = (1^k)` on `Sp(2n)` has an exact value:
/// the number of fixed-point-free involutions of `k` points with no
/// decreasing subsequence longer than `2n`.
pub fn expect_trace_product(group: &GroupSpec, lambda: &Partition) -> Result<BigInt> {
    let k = lambda.weight();
    if let Some(n) = group.n() {
        if n < k {
            if group.family == Family::Sp && is_all_ones(lambda) {
                return Ok(matching::fpf_involutions_lds(k, 2 * n)?.into());
            }
            return Err(Error::OutOfStableRange { weight: k, rank: n });
        }
    }
    Ok(stable_trace_product(group.family, lambda))
}

fn stable_trace_product(family: Family, lambda: &Partition) -> BigInt {
    let g = BigInt::from(matching::g_closed(lambda));
    if family.epsilon() == 1 && lambda.sgn() < 0 {
        -g
    } else {
        g
    }
}

fn check_twisted_range(group: &GroupSpec, lambda: &Partition) -> Result<()> {
    group.require_stable(lambda.weight())
}

fn trivially_zero(gamma: &Partition, lambda: &Partition) -> bool {
    gamma.weight() > lambda.weight() || (lambda.weight() - gamma.weight()) % 2 == 1
}

/// The `β` summed over in route A: `β'` even for `Sp`, `β` even for `SO`.
pub fn admissible_betas(family: Family, w: usize) -> Result<Vec<Partition>> {
    let evens = partition::even_partitions(w)?;
    Ok(match family {
        Family::Sp => {
            let mut v: Vec<Partition> = evens.into_iter().map(|b| b.conjugate()).collect();
            v.sort();
            v
        }
        Family::SoEven | Family::SoOdd => evens,
    })
}

/// Route A: `Σ_β ⟨χ_γ ⊙ χ_β, p_λ⟩`.
pub fn expect_twisted_route_a(group: &GroupSpec, gamma: &Partition, lambda: &Partition) -> Result<BigInt> {
    check_twisted_range(group, lambda)?;
    if trivially_zero(gamma, lambda) {
        return Ok(BigInt::zero());
    }
    let ps = symgroup::power_sum_expansion(lambda)?;
    let chi_gamma = ClassFunction::irreducible(gamma.clone());
    let mut total = BigRational::zero();
    for beta in admissible_betas(group.family, lambda.weight() - gamma.weight())? {
        let induced = symgroup::induction_product(&chi_gamma, &ClassFunction::irreducible(beta));
        total += symgroup::inner_product(&induced, &ps)?;
    }
    if !total.is_integer() {
        return Err(Error::Consistency(format!("route A produced non-integer {total}")));
    }
    Ok(total.to_integer())
}

/// Route B: `Σ λ!/(λ_a! λ_b!) χ_γ(λ_a) E_G[p_{λ_b}]`.
pub fn expect_twisted_route_b(group: &GroupSpec, gamma: &Partition, lambda: &Partition) -> Result<BigInt> {
    check_twisted_range(group, lambda)?;
    if trivially_zero(gamma, lambda) {
        return Ok(BigInt::zero());
    }
    let mut total = BigInt::zero();
    for s in partition::sub_splittings(lambda, gamma.weight()) {
        let chi = symgroup::character_value(gamma, &s.a)?;
        if chi.is_zero() {
            continue;
        }
        let e = stable_trace_product(group.family, &s.b);
        total += BigInt::from(s.multiplicity) * chi * e;
    }
    Ok(total)
}

/// `E_G[χ^G_γ p_λ]`. Returns route B, cross-checked against route A when
/// verification is enabled; a disagreement is a consistency fault.
pub fn expect_twisted(group: &GroupSpec, gamma: &Partition, lambda: &Partition) -> Result<BigInt> {
    let b = expect_twisted_route_b(group, gamma, lambda)?;
    if verification_enabled() {
        let a = expect_twisted_route_a(group, gamma, lambda)?;
        if a != b {
            return Err(Error::Consistency(format!(
                "twisted expectation routes disagree for {group}, gamma = ({gamma}), lambda = ({lambda}): A = {a}, B = {b}"
            )));
        }
    }
    Ok(b)
}

/// Convenience: the same value as an exact rational.
pub fn expect_twisted_rational(group: &GroupSpec, gamma: &Partition, lambda: &Partition) -> Result<BigRational> {
    Ok(BigRational::from_integer(expect_twisted(group, gamma, lambda)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Rank;
    use crate::partition::enumerate;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn one() -> BigInt {
        BigInt::from(1)
    }

    fn st(f: Family) -> GroupSpec {
        GroupSpec::stable(f)
    }

    #[test]
    fn trace_products() {
        assert_eq!(expect_trace_product(&st(Family::Sp), &p(&[2])).unwrap(), BigInt::from(-1));
        assert_eq!(expect_trace_product(&st(Family::SoEven), &p(&[1, 1])).unwrap(), one());
        assert_eq!(
            expect_trace_product(&GroupSpec::finite(Family::Sp, 1), &p(&[1, 1, 1, 1])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(expect_trace_product(&st(Family::SoOdd), &p(&[1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn below_stable_range_is_refused() {
        let so = GroupSpec::finite(Family::SoOdd, 1);
        assert_eq!(
            expect_trace_product(&so, &p(&[1, 1, 1, 1])),
            Err(Error::OutOfStableRange { weight: 4, rank: 1 })
        );
        let sp = GroupSpec::finite(Family::Sp, 1);
        assert!(matches!(
            expect_trace_product(&sp, &p(&[2, 2])),
            Err(Error::OutOfStableRange { .. })
        ));
        assert!(matches!(
            expect_twisted(&sp, &p(&[1]), &p(&[1, 1, 1])),
            Err(Error::OutOfStableRange { .. })
        ));
        // Rains count reaches the stable value once 2n >= k.
        let sp2 = GroupSpec::finite(Family::Sp, 2);
        assert_eq!(expect_trace_product(&sp2, &p(&[1, 1, 1, 1])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn twisted_examples() {
        let sp = st(Family::Sp);
        let so_odd = st(Family::SoOdd);
        let so_even = st(Family::SoEven);
        assert_eq!(expect_twisted_route_a(&sp, &p(&[1]), &p(&[2, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(expect_twisted_route_a(&so_odd, &p(&[1]), &p(&[2, 1])).unwrap(), one());
        assert_eq!(expect_twisted_route_a(&sp, &p(&[2, 1]), &p(&[1])).unwrap(), BigInt::zero());
        assert_eq!(expect_twisted_route_b(&sp, &p(&[1]), &p(&[2, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(expect_twisted_route_b(&so_even, &p(&[1]), &p(&[2, 1])).unwrap(), one());
        assert_eq!(expect_twisted(&sp, &p(&[1]), &p(&[2, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(expect_twisted(&so_odd, &p(&[2]), &p(&[2])).unwrap(), one());
        assert_eq!(expect_twisted(&sp, &p(&[1]), &p(&[1, 1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn empty_twist_is_trace_product() {
        for k in 0..=8 {
            for lambda in enumerate(k).unwrap() {
                for fam in Family::ALL {
                    let g = st(fam);
                    let want = expect_trace_product(&g, &lambda).unwrap();
                    assert_eq!(expect_twisted_route_a(&g, &Partition::empty(), &lambda).unwrap(), want);
                    assert_eq!(expect_twisted_route_b(&g, &Partition::empty(), &lambda).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn routes_agree_and_vanish_by_parity() {
        for k in 0..=6 {
            for lambda in enumerate(k).unwrap() {
                for j in 0..=k {
                    for gamma in enumerate(j).unwrap() {
                        for fam in Family::ALL {
                            let g = GroupSpec::new(fam, Rank::Finite(k.max(1)));
                            let a = expect_twisted_route_a(&g, &gamma, &lambda).unwrap();
                            let b = expect_twisted_route_b(&g, &gamma, &lambda).unwrap();
                            assert_eq!(a, b, "{fam} {gamma:?} {lambda:?}");
                            if (k - j) % 2 == 1 {
                                assert!(a.is_zero());
                            }
                        }
                        let even = expect_twisted(&st(Family::SoEven), &gamma, &lambda).unwrap();
                        let odd = expect_twisted(&st(Family::SoOdd), &gamma, &lambda).unwrap();
                        assert_eq!(even, odd);
                    }
                }
            }
        }
    }

    /// When every splitting has an even `λ_b`, the symplectic sign twist is
    /// invisible and Sp and SO values coincide.
    #[test]
    fn sp_so_agree_when_signs_are_trivial() {
        let mut checked = 0;
        for k in 0..=7 {
            for lambda in enumerate(k).unwrap() {
                for j in 0..=k {
                    for gamma in enumerate(j).unwrap() {
                        let all_even = partition::sub_splittings(&lambda, j)
                            .iter()
                            .all(|s| s.b.sgn() == 1);
                        if !all_even {
                            continue;
                        }
                        checked += 1;
                        assert_eq!(
                            expect_twisted_route_a(&st(Family::Sp), &gamma, &lambda).unwrap(),
                            expect_twisted_route_a(&st(Family::SoOdd), &gamma, &lambda).unwrap(),
                            "{gamma:?} {lambda:?}"
                        );
                    }
                }
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn admissible_beta_sets() {
        assert_eq!(admissible_betas(Family::Sp, 2).unwrap(), vec![p(&[1, 1])]);
        assert_eq!(admissible_betas(Family::SoOdd, 2).unwrap(), vec![p(&[2])]);
        assert_eq!(admissible_betas(Family::Sp, 4).unwrap(), vec![p(&[2, 2]), p(&[1, 1, 1, 1])]);
        assert!(admissible_betas(Family::Sp, 3).unwrap().is_empty());
    }
}
