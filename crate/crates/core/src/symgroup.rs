//! Irreducible characters of the symmetric groups and the character ring.
//!
//! Character values come from the Murnaghan–Nakayama rule, computed on
//! beta-sets (abacus positions): removing a border strip of length `r`
//! moves one bead from position `b` to the empty position `b - r`, with sign
//! `(-1)^{beads strictly between}`. Values are memoized process-wide.
//!
//! Class functions are stored in the irreducible basis, which is
//! orthonormal for the usual inner product on `S_k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expansion::SchurExpansion;
use crate::lr;
use crate::partition::{self, Partition};

type CharKey = (Partition, Partition);

fn char_memo() -> &'static Mutex<HashMap<CharKey, BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<CharKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ_λ(μ)`, the value of the irreducible character `λ` on the class `μ`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.weight() != mu.weight() {
        return Err(Error::Domain(format!(
            "character weight mismatch: |{lambda}| = {} but |{mu}| = {}",
            lambda.weight(),
            mu.weight()
        )));
    }
    Ok(mn(lambda, mu))
}

fn mn(lambda: &Partition, mu: &Partition) -> BigInt {
    if mu.is_empty() {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    // Single-row and single-column shapes have closed forms.
    if lambda.len() == 1 {
        return BigInt::one();
    }
    if lambda.part(0) == 1 {
        return BigInt::from(mu.sgn());
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = char_memo().lock().unwrap().get(&key) {
        return v.clone();
    }

    let r = mu.part(0) as usize;
    let rest = Partition::new(mu.parts()[1..].to_vec());
    let l = lambda.len();
    let beads: Vec<usize> = (0..l).map(|i| lambda.part(i) as usize + (l - 1 - i)).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beads.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beads.contains(&target) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beads.clone();
        moved[idx] = target;
        let reduced = from_beads(moved);
        let v = mn(&reduced, &rest);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    char_memo().lock().unwrap().insert(key, total.clone());
    total
}

fn from_beads(mut beads: Vec<usize>) -> Partition {
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let l = beads.len();
    Partition::new(
        beads
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (l - 1 - i)) as u32)
            .collect(),
    )
}

/// Full character table of `S_k`: rows are irreducibles, columns classes,
/// both in canonical partition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub k: usize,
    pub labels: Vec<Partition>,
    pub classes: Vec<Partition>,
    /// `values[row][column] = χ_{labels[row]}(classes[column])`.
    pub values: Vec<Vec<BigInt>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn build(k: usize) -> Result<Self> {
        let labels = partition::enumerate(k)?;
        let classes = labels.clone();
        let mut values = vec![vec![BigInt::zero(); classes.len()]; labels.len()];
        for (j, mu) in classes.iter().enumerate() {
            for (i, lambda) in labels.iter().enumerate() {
                values[i][j] = mn(lambda, mu);
            }
        }
        Ok(Self::from_parts(k, labels, classes, values))
    }

    pub(crate) fn from_parts(
        k: usize,
        labels: Vec<Partition>,
        classes: Vec<Partition>,
        values: Vec<Vec<BigInt>>,
    ) -> Self {
        let index = labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        CharacterTable {
            k,
            labels,
            classes,
            values,
            index,
        }
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        let i = *self.index.get(lambda)?;
        let j = *self.index.get(mu)?;
        Some(&self.values[i][j])
    }

    /// `χ_λ(1^k)`.
    pub fn dimension(&self, lambda: &Partition) -> Option<&BigInt> {
        self.value(lambda, &Partition::rectangle(1, self.k))
    }
}

/// Shared, lazily built table for `S_k`.
pub fn table(k: usize) -> Result<Arc<CharacterTable>> {
    if let Some(t) = tables().lock().unwrap().get(&k) {
        return Ok(t.clone());
    }
    let built = Arc::new(CharacterTable::build(k)?);
    Ok(tables().lock().unwrap().entry(k).or_insert(built).clone())
}

/// Make a table loaded from elsewhere (e.g. a disk cache) the shared one.
pub fn install_table(t: CharacterTable) -> Arc<CharacterTable> {
    let t = Arc::new(t);
    tables().lock().unwrap().insert(t.k, t.clone());
    t
}

/// Whether the shared table for `S_k` has been built or installed.
pub fn table_is_loaded(k: usize) -> bool {
    tables().lock().unwrap().contains_key(&k)
}

fn tables() -> &'static Mutex<HashMap<usize, Arc<CharacterTable>>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dimension of the irreducible `χ_λ`.
pub fn dimension(lambda: &Partition) -> BigInt {
    mn(lambda, &Partition::rectangle(1, lambda.weight()))
}

/// A (virtual) class function on `S_k` in the irreducible basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    k: usize,
    coeffs: SchurExpansion,
}

impl ClassFunction {
    pub fn zero(k: usize) -> Self {
        ClassFunction {
            k,
            coeffs: SchurExpansion::new(),
        }
    }

    pub fn irreducible(lambda: Partition) -> Self {
        ClassFunction {
            k: lambda.weight(),
            coeffs: SchurExpansion::basis(lambda),
        }
    }

    pub fn from_expansion(k: usize, coeffs: SchurExpansion) -> Result<Self> {
        if let Some((bad, _)) = coeffs.iter().find(|(p, _)| p.weight() != k) {
            return Err(Error::Domain(format!("label {bad} does not have weight {k}")));
        }
        Ok(ClassFunction { k, coeffs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &SchurExpansion {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.coeffs.coeff(lambda)
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        ClassFunction {
            k: self.k,
            coeffs: self.coeffs.scaled(factor),
        }
    }

    pub fn plus(&self, other: &ClassFunction) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::Domain(format!("cannot add class functions on S_{} and S_{}", self.k, other.k)));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.add(&other.coeffs);
        Ok(ClassFunction { k: self.k, coeffs })
    }

    /// Value on the conjugacy class `μ`.
    pub fn value_at(&self, mu: &Partition) -> Result<BigRational> {
        if mu.weight() != self.k {
            return Err(Error::Domain(format!("class {mu} is not in S_{}", self.k)));
        }
        let mut acc = BigRational::zero();
        for (lambda, c) in self.coeffs.iter() {
            acc += c * BigRational::from_integer(mn(lambda, mu));
        }
        Ok(acc)
    }
}

/// `p_λ` as a class function: `z_λ` on the class `λ`, zero elsewhere, so its
/// coordinate on `χ_μ` is `χ_μ(λ)`.
pub fn power_sum_expansion(lambda: &Partition) -> Result<ClassFunction> {
    let k = lambda.weight();
    let t = table(k)?;
    let column = t
        .classes
        .iter()
        .position(|c| c == lambda)
        .ok_or_else(|| Error::Consistency(format!("class ({lambda}) missing from the S_{k} table")))?;
    let mut coeffs = SchurExpansion::new();
    for (mu, row) in t.labels.iter().zip(&t.values) {
        coeffs.add_integer(mu.clone(), row[column].clone());
    }
    Ok(ClassFunction { k, coeffs })
}

/// Induction product `a ⊙ b`, bilinear, via Littlewood–Richardson coefficients.
pub fn induction_product(a: &ClassFunction, b: &ClassFunction) -> ClassFunction {
    let mut coeffs = SchurExpansion::new();
    for (la, ca) in a.coeffs.iter() {
        for (lb, cb) in b.coeffs.iter() {
            let prod = ca * cb;
            for (nu, c) in lr::schur_product(la, lb).iter() {
                coeffs.add_term(nu.clone(), &prod * c);
            }
        }
    }
    ClassFunction {
        k: a.k + b.k,
        coeffs,
    }
}

/// `sgn ⊗ a`: replaces every irreducible label by its conjugate.
pub fn tensor_sign(a: &ClassFunction) -> ClassFunction {
    ClassFunction {
        k: a.k,
        coeffs: a.coeffs.relabel(Partition::conjugate),
    }
}

/// `Σ_{β even, β ⊢ k} χ_β`, the permutation character of `S_k` on matchings.
pub fn hyperoctahedral_sum(k: usize) -> Result<ClassFunction> {
    if k % 2 == 1 {
        return Err(Error::Domain(format!("hyperoctahedral sum needs even k, got {k}")));
    }
    let mut coeffs = SchurExpansion::new();
    for beta in partition::even_partitions(k)? {
        coeffs.add_integer(beta, 1);
    }
    Ok(ClassFunction { k, coeffs })
}

/// `⟨a, b⟩_{S_k}`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
    if a.k != b.k {
        return Err(Error::Domain(format!(
            "inner product of class functions on S_{} and S_{}",
            a.k, b.k
        )));
    }
    let mut acc = BigRational::zero();
    for (lambda, ca) in a.coeffs.iter() {
        let cb = b.coeffs.coeff(lambda);
        if !cb.is_zero() {
            acc += ca * cb;
        }
    }
    Ok(acc)
}

/// `|S_k|/z_μ`, convenience for class-sum formulas.
pub fn class_size(mu: &Partition) -> BigUint {
    mu.class_size()
}
