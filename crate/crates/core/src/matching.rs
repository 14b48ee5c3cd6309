//! The matching count `g(λ)`: the number of perfect matchings of `|λ|`
//! points preserved by a permutation of cycle type `λ`, by brute force and
//! in closed form, together with the fixed-point-free involution count
//! with bounded longest decreasing subsequence.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::{binomial, double_factorial_odd, Partition};

/// Largest weight accepted by the enumerating routines.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 14;

/// A perfect matching of `{0, .., k-1}`, stored as a partner table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if k % 2 == 1 || pairs.len() * 2 != k {
            return Err(Error::Domain(format!("{} pairs cannot cover {k} points", pairs.len())));
        }
        let mut partner = vec![usize::MAX; k];
        for &(a, b) in pairs {
            if a == b || a >= k || b >= k || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Domain(format!("pair ({a}, {b}) is not disjoint from the rest")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Matching { partner })
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    /// Pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&a| a < self.partner[a])
            .map(|a| (a, self.partner[a]))
            .collect()
    }

    /// Whether `σ(M) = M`, i.e. `σ` maps every pair to a pair.
    pub fn is_preserved_by(&self, sigma: &[usize]) -> bool {
        (0..self.partner.len()).all(|a| self.partner[sigma[a]] == sigma[self.partner[a]])
    }

    /// One-line word of the corresponding fixed-point-free involution.
    pub fn as_involution(&self) -> &[usize] {
        &self.partner
    }
}

/// Visits every perfect matching of `k` points, always pairing the smallest
/// unmatched point first; `(k-1)!!` leaves.
pub fn for_each_matching(k: usize, mut visit: impl FnMut(&Matching)) {
    if k % 2 == 1 {
        return;
    }
    let mut m = Matching {
        partner: vec![usize::MAX; k],
    };
    walk(&mut m, &mut visit);
}

fn walk(m: &mut Matching, visit: &mut impl FnMut(&Matching)) {
    let Some(first) = m.partner.iter().position(|&x| x == usize::MAX) else {
        visit(m);
        return;
    };
    for second in first + 1..m.partner.len() {
        if m.partner[second] != usize::MAX {
            continue;
        }
        m.partner[first] = second;
        m.partner[second] = first;
        walk(m, visit);
        m.partner[first] = usize::MAX;
        m.partner[second] = usize::MAX;
    }
}

/// The canonical permutation of cycle type `λ`: cycles laid out on
/// consecutive points, `(0 .. λ_1-1)(λ_1 ..)...`.
pub fn canonical_permutation(lambda: &Partition) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(lambda.weight());
    let mut start = 0;
    for &len in lambda.parts() {
        let len = len as usize;
        for i in 0..len {
            sigma.push(start + (i + 1) % len);
        }
        start += len;
    }
    sigma
}

fn check_bound(k: usize) -> Result<()> {
    if k > DEFAULT_BRUTE_FORCE_BOUND {
        return Err(Error::Resource {
            what: "matching enumeration size",
            value: k,
            bound: DEFAULT_BRUTE_FORCE_BOUND,
        });
    }
    Ok(())
}

/// Number of matchings preserved by an arbitrary permutation `sigma`.
pub fn count_preserved(sigma: &[usize]) -> Result<BigUint> {
    check_bound(sigma.len())?;
    let mut count = 0u64;
    for_each_matching(sigma.len(), |m| {
        if m.is_preserved_by(sigma) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// `g(λ)` by enumerating all matchings against the canonical permutation.
pub fn g_bruteforce(lambda: &Partition) -> Result<BigUint> {
    let k = lambda.weight();
    check_bound(k)?;
    if k % 2 == 1 {
        return Ok(BigUint::zero());
    }
    count_preserved(&canonical_permutation(lambda))
}

/// `g_j(a)`: matchings preserved by a product of `a` disjoint `j`-cycles.
pub fn g_block(j: u32, a: usize) -> BigUint {
    if j % 2 == 1 {
        if a % 2 == 1 {
            return BigUint::zero();
        }
        BigUint::from(j).pow((a / 2) as u32) * double_factorial_odd(a / 2)
    } else {
        (0..=a / 2)
            .map(|t| binomial(a, 2 * t) * BigUint::from(j).pow(t as u32) * double_factorial_odd(t))
            .sum()
    }
}

/// `g(λ) = Π_j g_j(λ(j))`.
pub fn g_closed(lambda: &Partition) -> BigUint {
    lambda
        .multiplicities()
        .into_iter()
        .map(|(j, a)| g_block(j, a))
        .product()
}

/// Length of the longest strictly decreasing subsequence, by patience
/// sorting on the reversed order.
pub fn longest_decreasing_subsequence(word: &[usize]) -> usize {
    // Tails of decreasing runs, stored negated so the piles are increasing.
    let mut tails: Vec<i64> = Vec::new();
    for &x in word {
        let key = -(x as i64);
        let pos = tails.partition_point(|&t| t < key);
        if pos == tails.len() {
            tails.push(key);
        } else {
            tails[pos] = key;
        }
    }
    tails.len()
}

/// Fixed-point-free involutions of `k` points whose longest decreasing
/// subsequence has length at most `bound`.
pub fn fpf_involutions_lds(k: usize, bound: usize) -> Result<BigUint> {
    check_bound(k)?;
    if k % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let mut count = 0u64;
    for_each_matching(k, |m| {
        if longest_decreasing_subsequence(m.as_involution()) <= bound {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(g_bruteforce(&p(&[1, 1])).unwrap(), n(1));
        assert_eq!(g_bruteforce(&p(&[2, 2])).unwrap(), n(3));
        assert_eq!(g_bruteforce(&p(&[4])).unwrap(), n(1));
        assert_eq!(g_bruteforce(&p(&[2, 1])).unwrap(), n(0));
        assert_eq!(g_bruteforce(&Partition::empty()).unwrap(), n(1));
        assert!(matches!(
            g_bruteforce(&Partition::rectangle(1, 16)),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(g_closed(&p(&[1, 1, 1, 1])), n(3));
        assert_eq!(g_closed(&p(&[2])), n(1));
        assert_eq!(g_closed(&p(&[3, 3])), n(3));
        assert_eq!(g_closed(&p(&[3])), n(0));
        assert_eq!(g_closed(&Partition::empty()), n(1));
    }

    #[test]
    fn closed_matches_brute_force_small() {
        for k in 0..=8 {
            for lambda in enumerate(k).unwrap() {
                assert_eq!(g_closed(&lambda), g_bruteforce(&lambda).unwrap(), "{lambda:?}");
            }
        }
    }

    #[test]
    fn independent_of_class_representative() {
        for k in 0..=6 {
            let mut perm: Vec<usize> = (0..k).collect();
            let mut all = Vec::new();
            permutations(k, &mut perm, &mut all);
            for sigma in all {
                let ty = cycle_type(&sigma);
                assert_eq!(count_preserved(&sigma).unwrap(), g_closed(&ty), "{sigma:?}");
            }
        }
    }

    fn permutations(n: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..n - 1 {
            permutations(n - 1, perm, out);
            if n.is_multiple_of(2) {
                perm.swap(i, n - 1);
            } else {
                perm.swap(0, n - 1);
            }
        }
        permutations(n - 1, perm, out);
    }

    fn cycle_type(perm: &[usize]) -> Partition {
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for s in 0..perm.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            if len > 0 {
                parts.push(len);
            }
        }
        Partition::new(parts)
    }

    #[test]
    fn matching_counts() {
        for k in (0..=12).step_by(2) {
            let mut c = 0u64;
            for_each_matching(k, |_| c += 1);
            assert_eq!(n(c), double_factorial_odd(k / 2));
        }
        let m = Matching::from_pairs(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(m.is_preserved_by(&canonical_permutation(&p(&[4]))));
        assert_eq!(m.pairs(), vec![(0, 2), (1, 3)]);
        assert!(Matching::from_pairs(4, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn bounded_involutions() {
        assert_eq!(fpf_involutions_lds(4, 2).unwrap(), n(2));
        assert_eq!(fpf_involutions_lds(4, 4).unwrap(), n(3));
        assert_eq!(fpf_involutions_lds(2, 2).unwrap(), n(1));
        assert_eq!(fpf_involutions_lds(5, 4).unwrap(), n(0));
        for k in (0..=12).step_by(2) {
            assert_eq!(
                fpf_involutions_lds(k, k).unwrap(),
                g_closed(&Partition::rectangle(1, k))
            );
        }
    }

    fn lds_quadratic(word: &[usize]) -> usize {
        let mut best = vec![1usize; word.len()];
        for i in 0..word.len() {
            for j in 0..i {
                if word[j] > word[i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    #[test]
    fn lds_matches_quadratic_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for trial in 0..1000 {
            let k = trial % 13;
            let mut w: Vec<usize> = (0..k).collect();
            w.shuffle(&mut rng);
            assert_eq!(longest_decreasing_subsequence(&w), lds_quadratic(&w), "{w:?}");
        }
    }
}
