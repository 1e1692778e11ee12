//! Highest weights of GL(n): dominance, duality, Weyl dimension and the
//! rank-2 Clebsch-Gordan rule.
//!
//! A [`Weight`] is stored exactly as given. Dominance is checked on demand,
//! never assumed, because the Borel-Bott-Weil routine deliberately builds
//! non-dominant sequences after the rho-shift.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer sequence read as a GL(n) weight, `n = entries.len()`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(entries: impl Into<Vec<i64>>) -> Self {
        Weight(entries.into())
    }

    /// The weight `(d, d, ..., d)` of `det^d` on a rank `n` bundle.
    pub fn det_power(n: usize, d: i64) -> Self {
        Weight(vec![d; n])
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn ensure_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.clone()))
        }
    }

    /// `(a_1, ..., a_k) -> (-a_k, ..., -a_1)`, the highest weight of the dual.
    pub fn dualize(&self) -> Weight {
        Weight(self.0.iter().rev().map(|a| -a).collect())
    }

    /// Entrywise sum; used to fold determinant twists into a weight.
    pub fn shifted(&self, d: i64) -> Weight {
        Weight(self.0.iter().map(|a| a + d).collect())
    }

    /// `Some(d)` when the weight is `(d, ..., d)`, i.e. a power of the determinant.
    pub fn as_det_power(&self) -> Option<i64> {
        let first = *self.0.first()?;
        self.0.iter().all(|&a| a == first).then_some(first)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Dimension of the irreducible GL(n) representation with highest weight `w`:
/// `prod_{i<j} (w_i - w_j + j - i) / (j - i)`.
pub fn weyl_dim(w: &Weight) -> Result<u64> {
    w.ensure_dominant()?;
    let e = w.entries();
    let n = e.len();
    // numerator and denominator are accumulated separately so the division is exact
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (e[i] - e[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

/// A formal sum of weights with strictly positive multiplicities.
///
/// Backed by a `BTreeMap`, so iteration order is canonical and equality is
/// decidable structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSum {
    terms: BTreeMap<Weight, u64>,
}

impl WeightSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut s = Self::new();
        s.add(w, 1);
        s
    }

    pub fn add(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(w).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &WeightSum) {
        for (w, m) in &other.terms {
            self.add(w.clone(), *m);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.terms.iter().map(|(w, m)| (w, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Total dimension, `sum mult * weyl_dim`.
    pub fn dim(&self) -> Result<u64> {
        self.terms
            .iter()
            .map(|(w, m)| weyl_dim(w).map(|d| d * m))
            .sum()
    }
}

/// Clebsch-Gordan for GL(2):
/// `S^(a1,a2) x S^(b1,b2) = sum_{i=0}^{min(a1-a2, b1-b2)} S^(a1+b1-i, a2+b2+i)`.
pub fn tensor_rank2(a: &Weight, b: &Weight) -> Result<WeightSum> {
    for w in [a, b] {
        if w.len() != 2 {
            return Err(Error::WeightLength {
                expected: 2,
                found: w.len(),
            });
        }
        w.ensure_dominant()?;
    }
    let (a1, a2) = (a.0[0], a.0[1]);
    let (b1, b2) = (b.0[0], b.0[1]);
    let mut out = WeightSum::new();
    for i in 0..=(a1 - a2).min(b1 - b2) {
        out.add(Weight(vec![a1 + b1 - i, a2 + b2 + i]), 1);
    }
    Ok(out)
}

/// Tensor product of two irreducible GL(n) representations for the ranks the
/// catalog needs: rank 1, rank 2, or any rank when one side is a determinant power.
pub fn tensor(a: &Weight, b: &Weight) -> Result<WeightSum> {
    if a.len() != b.len() {
        return Err(Error::WeightLength {
            expected: a.len(),
            found: b.len(),
        });
    }
    a.ensure_dominant()?;
    b.ensure_dominant()?;
    if let Some(d) = a.as_det_power() {
        return Ok(WeightSum::single(b.shifted(d)));
    }
    if let Some(d) = b.as_det_power() {
        return Ok(WeightSum::single(a.shifted(d)));
    }
    match a.len() {
        2 => tensor_rank2(a, b),
        n => Err(Error::Unsupported(format!(
            "tensor product of non-determinantal GL({n}) weights {a} and {b}"
        ))),
    }
}

/// All weights (with repetition) of the irreducible GL(n) module of highest
/// weight `w`, enumerated through Gelfand-Tsetlin patterns.
pub fn weight_multiset(w: &Weight) -> Result<Vec<Vec<i64>>> {
    w.ensure_dominant()?;
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(w.len());
    gt_rows(w.entries(), &mut acc, &mut out);
    Ok(out)
}

fn gt_rows(row: &[i64], acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    // acc collects row sums from the top row down; the weight component of the
    // i-th variable is |row_i| - |row_{i-1}|.
    acc.push(row.iter().sum());
    if row.len() <= 1 {
        let n = acc.len();
        let mut weight = vec![0; n];
        for (i, slot) in weight.iter_mut().enumerate() {
            // acc[k] is the sum of the row of length n - k
            let this = acc[n - 1 - i];
            let below = if i == 0 { 0 } else { acc[n - i] };
            *slot = this - below;
        }
        out.push(weight);
        acc.pop();
        return;
    }
    let mut next = vec![0; row.len() - 1];
    interlace(row, 0, &mut next, acc, out);
    acc.pop();
}

fn interlace(row: &[i64], k: usize, next: &mut Vec<i64>, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == next.len() {
        let snapshot = next.clone();
        gt_rows(&snapshot, acc, out);
        return;
    }
    for v in row[k + 1]..=row[k] {
        next[k] = v;
        interlace(row, k + 1, next, acc, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: &[i64]) -> Weight {
        Weight::new(e.to_vec())
    }

    #[test]
    fn weyl_dim_small_cases() {
        assert_eq!(weyl_dim(&w(&[1, 0, 0, 0])).unwrap(), 4);
        assert_eq!(weyl_dim(&w(&[2, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&w(&[-3, -3, -3])).unwrap(), 1);
    }

    #[test]
    fn weyl_dim_rejects_non_dominant() {
        assert!(matches!(weyl_dim(&w(&[0, 1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn dualize_examples() {
        assert_eq!(w(&[2, 0]).dualize(), w(&[0, -2]));
        assert_eq!(w(&[1, 1]).dualize(), w(&[-1, -1]));
        assert_eq!(w(&[3, 1]).dualize(), w(&[-1, -3]));
    }

    #[test]
    fn tensor_rank2_examples() {
        let vv = tensor_rank2(&w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(vv.len(), 2);
        assert_eq!(vv.multiplicity(&w(&[2, 0])), 1);
        assert_eq!(vv.multiplicity(&w(&[1, 1])), 1);

        let det = tensor_rank2(&w(&[3, 3]), &w(&[5, -1])).unwrap();
        assert_eq!(det, WeightSum::single(w(&[8, 2])));
    }

    #[test]
    fn tensor_rank2_rejects_bad_input() {
        assert!(tensor_rank2(&w(&[0, 1]), &w(&[1, 0])).is_err());
        assert!(tensor_rank2(&w(&[1, 0, 0]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn weight_multiset_has_weyl_dim_elements() {
        for hw in [w(&[2, 1, 0]), w(&[3, 0, -2]), w(&[1, 1, 0, 0]), w(&[4, -1])] {
            let ws = weight_multiset(&hw).unwrap();
            assert_eq!(ws.len() as u64, weyl_dim(&hw).unwrap());
            assert!(ws.iter().all(|v| v.iter().sum::<i64>() == hw.sum()));
        }
    }

    #[test]
    fn tensor_with_det_power_any_rank() {
        let s = tensor(&w(&[2, 1, 0]), &w(&[-1, -1, -1])).unwrap();
        assert_eq!(s, WeightSum::single(w(&[1, 0, -1])));
        assert!(tensor(&w(&[1, 0, 0]), &w(&[1, 0, 0])).is_err());
    }
}
