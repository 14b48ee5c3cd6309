//! Littlewood–Richardson coefficients by enumeration of LR skew tableaux,
//! and the Littlewood branching coefficients from `U(m)` to `Sp`/`SO`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::expansion::SchurExpansion;
use crate::group::Family;
use crate::partition::{self, Partition};

type LrKey = (Partition, Partition, Partition);

fn lr_memo() -> &'static Mutex<HashMap<LrKey, u64>> {
    static MEMO: OnceLock<Mutex<HashMap<LrKey, u64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `c^λ_{μν}`: the number of LR tableaux of shape `λ/μ` and content `ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    BigUint::from(lr_count(lambda, mu, nu))
}

pub(crate) fn lr_count(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.weight() + nu.weight() != lambda.weight()
        || !mu.is_contained_in(lambda)
        || !nu.is_contained_in(lambda)
    {
        return 0;
    }
    if mu.is_empty() {
        return u64::from(nu == lambda);
    }
    if nu.is_empty() {
        return u64::from(mu == lambda);
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&v) = lr_memo().lock().unwrap().get(&key) {
        return v;
    }
    let v = SkewFiller::new(lambda, mu, nu).count();
    lr_memo().lock().unwrap().insert(key, v);
    v
}

/// Backtracking filler over the cells of `λ/μ` in reading order (rows top
/// to bottom, each row right to left).
struct SkewFiller {
    mu: Vec<usize>,
    lambda: Vec<usize>,
    content: Vec<usize>,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<usize>>,
    used: Vec<usize>,
}

impl SkewFiller {
    fn new(lambda: &Partition, mu: &Partition, nu: &Partition) -> Self {
        let rows = lambda.len();
        let lambda_v: Vec<usize> = (0..rows).map(|r| lambda.part(r) as usize).collect();
        let mu_v: Vec<usize> = (0..rows).map(|r| mu.part(r) as usize).collect();
        let mut cells = Vec::with_capacity(lambda.weight() - mu.weight());
        for r in 0..rows {
            for c in (mu_v[r]..lambda_v[r]).rev() {
                cells.push((r, c));
            }
        }
        SkewFiller {
            grid: lambda_v.iter().map(|&w| vec![usize::MAX; w]).collect(),
            mu: mu_v,
            lambda: lambda_v,
            content: nu.parts().iter().map(|&x| x as usize).collect(),
            cells,
            used: vec![0; nu.len()],
        }
    }

    fn count(&mut self) -> u64 {
        self.place(0)
    }

    fn place(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (r, c) = self.cells[idx];
        // Strictly greater than the entry above, if that cell is in the skew shape.
        let lo = if r > 0 && c >= self.mu[r - 1] {
            self.grid[r - 1][c] + 1
        } else {
            0
        };
        // Weakly below the entry to the right (already placed).
        let hi = if c + 1 < self.lambda[r] {
            self.grid[r][c + 1]
        } else {
            self.content.len() - 1
        };
        let hi = hi.min(r);
        let mut total = 0;
        for v in lo..=hi {
            if self.used[v] >= self.content[v] {
                continue;
            }
            if v > 0 && self.used[v] + 1 > self.used[v - 1] {
                continue;
            }
            self.used[v] += 1;
            self.grid[r][c] = v;
            total += self.place(idx + 1);
            self.used[v] -= 1;
        }
        self.grid[r][c] = usize::MAX;
        total
    }
}

/// `s_μ · s_ν = Σ_λ c^λ_{μν} s_λ`.
pub fn schur_product(mu: &Partition, nu: &Partition) -> SchurExpansion {
    let mut out = SchurExpansion::new();
    let total = mu.weight() + nu.weight();
    let candidates = match partition::enumerate_bounded(total, usize::MAX) {
        Ok(v) => v,
        Err(_) => unreachable!("unbounded enumeration cannot fail"),
    };
    for lambda in candidates {
        let c = lr_count(&lambda, mu, nu);
        if c > 0 {
            out.add_integer(lambda, c);
        }
    }
    out
}

/// Littlewood branching of `s_λ` restricted from the unitary group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingTarget {
    pub family: Family,
    pub source: Partition,
    /// `μ ↦ Σ_{ν even} c^λ_{ν'μ}` (Sp) or `Σ_{ν even} c^λ_{νμ}` (SO).
    pub coeffs: BTreeMap<Partition, BigUint>,
}

impl BranchingTarget {
    pub fn coeff(&self, mu: &Partition) -> BigUint {
        self.coeffs.get(mu).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn to_expansion(&self) -> SchurExpansion {
        self.coeffs
            .iter()
            .map(|(k, v)| (k.clone(), BigRational::from_integer(v.clone().into())))
            .collect()
    }
}

/// Branching coefficients of `s_λ` onto the Weyl characters of `family`.
/// Valid as a character identity when `l(λ) <= n`.
pub fn branching_decomposition(lambda: &Partition, family: Family) -> BranchingTarget {
    let mut coeffs: BTreeMap<Partition, BigUint> = BTreeMap::new();
    let k = lambda.weight();
    for w in (0..=k).step_by(2) {
        let evens = partition::even_partitions(w).unwrap_or_default();
        for nu in evens {
            let nu = match family {
                Family::Sp => nu.conjugate(),
                Family::SoEven | Family::SoOdd => nu,
            };
            for mu in partition::enumerate_bounded(k - w, usize::MAX).unwrap_or_default() {
                let c = lr_count(lambda, &nu, &mu);
                if c > 0 {
                    *coeffs.entry(mu).or_insert_with(BigUint::zero) += BigUint::from(c);
                }
            }
        }
    }
    BranchingTarget {
        family,
        source: lambda.clone(),
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate;
    use crate::symgroup::{character_value, dimension};
    use num_bigint::BigInt;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn coefficients() {
        assert_eq!(lr_count(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_count(&p(&[2, 2]), &p(&[2, 1]), &p(&[1])), 1);
        assert_eq!(lr_count(&p(&[3]), &p(&[1, 1]), &p(&[1])), 0);
        // The classic multiplicity-two case.
        assert_eq!(lr_count(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_count(&p(&[4, 2]), &p(&[2, 1]), &p(&[2, 1])), 1);
        assert_eq!(lr_count(&p(&[2, 1]), &p(&[1]), &p(&[1])), 0);
    }

    #[test]
    fn products() {
        let e = schur_product(&p(&[1]), &p(&[1]));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&p(&[2])), BigRational::from_integer(1.into()));
        assert_eq!(e.coeff(&p(&[1, 1])), BigRational::from_integer(1.into()));
        assert_eq!(
            schur_product(&Partition::empty(), &p(&[2, 1])),
            SchurExpansion::basis(p(&[2, 1]))
        );
        let e = schur_product(&p(&[1]), &p(&[2]));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&p(&[3])), BigRational::from_integer(1.into()));
        assert_eq!(e.coeff(&p(&[2, 1])), BigRational::from_integer(1.into()));
    }

    #[test]
    fn branching_examples() {
        let b = branching_decomposition(&p(&[1, 1]), Family::Sp);
        assert_eq!(b.coeffs.len(), 2);
        assert_eq!(b.coeff(&p(&[1, 1])), BigUint::from(1u32));
        assert_eq!(b.coeff(&Partition::empty()), BigUint::from(1u32));

        let b = branching_decomposition(&p(&[2]), Family::SoOdd);
        assert_eq!(b.coeffs.len(), 2);
        assert_eq!(b.coeff(&p(&[2])), BigUint::from(1u32));
        assert_eq!(b.coeff(&Partition::empty()), BigUint::from(1u32));

        let b = branching_decomposition(&p(&[2]), Family::Sp);
        assert_eq!(b.coeffs.len(), 1);
        assert_eq!(b.coeff(&p(&[2])), BigUint::from(1u32));
    }

    #[test]
    fn branching_shape_invariants() {
        for k in 0..=7 {
            for lambda in enumerate(k).unwrap() {
                for fam in Family::ALL {
                    let b = branching_decomposition(&lambda, fam);
                    assert_eq!(b.coeff(&lambda), BigUint::from(1u32));
                    for mu in b.coeffs.keys() {
                        assert!(mu.is_contained_in(&lambda));
                        assert_eq!((k - mu.weight()) % 2, 0);
                    }
                }
                assert_eq!(
                    branching_decomposition(&lambda, Family::SoEven).coeffs,
                    branching_decomposition(&lambda, Family::SoOdd).coeffs
                );
            }
        }
    }

    #[test]
    fn symmetry_in_factors() {
        for k in 0..=8 {
            for lambda in enumerate(k).unwrap() {
                for j in 0..=k {
                    for mu in enumerate(j).unwrap() {
                        for nu in enumerate(k - j).unwrap() {
                            assert_eq!(
                                lr_count(&lambda, &mu, &nu),
                                lr_count(&lambda, &nu, &mu),
                                "{lambda:?} {mu:?} {nu:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_dimension_count() {
        for total in 0..=8 {
            for j in 0..=total {
                for mu in enumerate(j).unwrap() {
                    for nu in enumerate(total - j).unwrap() {
                        let lhs: BigInt = schur_product(&mu, &nu)
                            .iter()
                            .map(|(l, c)| c.to_integer() * dimension(l))
                            .sum();
                        let rhs = BigInt::from(crate::partition::binomial(total, j))
                            * dimension(&mu)
                            * dimension(&nu);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    /// Independent route: `c^λ_{μν} = ⟨χ_λ, Ind(χ_μ × χ_ν)⟩` from the
    /// induced-character formula over pairs of classes.
    #[test]
    fn matches_induced_character_oracle() {
        for k in 0..=6 {
            for lambda in enumerate(k).unwrap() {
                for j in 0..=k {
                    for mu in enumerate(j).unwrap() {
                        for nu in enumerate(k - j).unwrap() {
                            let mut acc = BigRational::zero();
                            for alpha in enumerate(j).unwrap() {
                                for beta in enumerate(k - j).unwrap() {
                                    let num = character_value(&mu, &alpha).unwrap()
                                        * character_value(&nu, &beta).unwrap()
                                        * character_value(&lambda, &alpha.union(&beta)).unwrap();
                                    let den = BigInt::from(alpha.z() * beta.z());
                                    acc += BigRational::new(num, den);
                                }
                            }
                            assert!(acc.is_integer());
                            assert_eq!(
                                acc.to_integer(),
                                BigInt::from(lr_count(&lambda, &mu, &nu)),
                                "{lambda:?} {mu:?} {nu:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
