use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::partition::Partition;

/// A finite linear combination of partition-indexed basis elements
/// (Schur functions, Weyl characters or irreducible characters of `S_k`)
/// with exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, BigRational>,
}

impl SchurExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(label: Partition) -> Self {
        let mut e = Self::new();
        e.add_term(label, BigRational::from_integer(1.into()));
        e
    }

    pub fn add_term(&mut self, label: Partition, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_integer(&mut self, label: Partition, coeff: impl Into<BigInt>) {
        self.add_term(label, BigRational::from_integer(coeff.into()));
    }

    pub fn coeff(&self, label: &Partition) -> BigRational {
        self.terms.get(label).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    pub fn add(&mut self, other: &SchurExpansion) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    /// Same coefficients, every label replaced by `f(label)`.
    pub fn relabel(&self, f: impl Fn(&Partition) -> Partition) -> Self {
        let mut out = Self::new();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }
}

impl FromIterator<(Partition, BigRational)> for SchurExpansion {
    fn from_iter<I: IntoIterator<Item = (Partition, BigRational)>>(iter: I) -> Self {
        let mut e = Self::new();
        for (k, v) in iter {
            e.add_term(k, v);
        }
        e
    }
}

impl fmt::Debug for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}
