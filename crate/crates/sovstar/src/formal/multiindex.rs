//! Multi-indices for derivatives and monomial exponents.

use num::{BigInt, One};
use std::fmt;

/// A vector of non-negative exponents. Ordering is lexicographic (derived),
/// which makes BTreeMap iteration deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise partial order.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.0.len(), other.0.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; requires other ≤ self.
    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert!(other.le(self));
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn bump(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// Π_i C(self_i, sub_i), defined for sub ≤ self.
    pub fn binom(&self, sub: &MultiIndex) -> BigInt {
        debug_assert!(sub.le(self));
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&sub.0) {
            acc *= binomial(a, b);
        }
        acc
    }

    /// All multi-indices of the given dimension with total degree exactly `deg`,
    /// in lexicographic order.
    pub fn of_degree(dim: usize, deg: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fill(&mut out, &mut cur, 0, deg);
        out
    }

    /// All multi-indices with total degree ≤ `deg`, ascending by degree.
    pub fn up_to_degree(dim: usize, deg: u32) -> Vec<MultiIndex> {
        (0..=deg).flat_map(|d| Self::of_degree(dim, d)).collect()
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, rem: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = rem;
        out.push(MultiIndex(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, rem - e);
    }
    cur[pos] = 0;
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}
