//! Symmetric polynomials with integer coefficients, reduced to elementary
//! symmetric polynomials. Used to write Chern characters of Schur functors in
//! terms of the Chern classes of the underlying bundle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::weights::{weight_multiset, Weight};

/// A polynomial in `n` variables; exponent vectors map to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Elementary symmetric polynomial `e_j` in `nvars` variables.
    pub fn elementary(nvars: usize, j: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for mask in 0u32..(1 << nvars) {
            if mask.count_ones() as usize == j {
                let e = (0..nvars).map(|i| (mask >> i) & 1).collect();
                p.add_term(e, BigInt::one());
            }
        }
        p
    }
}

/// Express a symmetric polynomial in the elementary symmetric polynomials.
///
/// The result has `nvars` variables standing for `e_1, ..., e_n`. Panics if
/// the input is not symmetric (the leading-term algorithm then leaves a
/// remainder whose leading exponent is not a partition).
pub fn to_elementary(p: &Poly) -> Poly {
    let n = p.nvars;
    let mut rest = p.clone();
    let mut out = Poly::zero(n);
    let elementaries: Vec<Poly> = (1..=n).map(|j| Poly::elementary(n, j)).collect();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        assert!(lead.windows(2).all(|w| w[0] >= w[1]), "polynomial is not symmetric");
        // x^lead is the leading monomial of prod e_j^(lead_j - lead_{j+1})
        let mut powers = vec![0u32; n];
        let mut prod = Poly::constant(n, BigInt::one());
        for j in 0..n {
            let next = if j + 1 < n { lead[j + 1] } else { 0 };
            powers[j] = lead[j] - next;
            prod = prod.mul(&elementaries[j].pow(powers[j]));
        }
        let mut scaled = prod;
        for v in scaled.terms.values_mut() {
            *v *= &c;
        }
        let mut neg = scaled;
        for v in neg.terms.values_mut() {
            *v = -v.clone();
        }
        rest.add(&neg);
        out.add_term(powers, c);
    }
    out
}

/// `sum_mu (mu . x)^d` over the weights `mu` of `Sigma^w`, as a polynomial
/// in the elementary symmetric functions of `x` (i.e. Chern classes).
pub fn schur_power_sum(w: &Weight, d: u32) -> Result<Poly> {
    let n = w.len();
    let mut total = Poly::zero(n);
    if d == 0 {
        let count = weight_multiset(w)?.len();
        return Ok(Poly::constant(n, BigInt::from(count)));
    }
    for mu in weight_multiset(w)? {
        total.add(&Poly::linear(&mu).pow(d));
    }
    Ok(to_elementary(&total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_in_e(n: usize, terms: &[(&[u32], i64)]) -> Poly {
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn newton_p2() {
        // x^2 + y^2 = e1^2 - 2 e2
        let mut p = Poly::zero(2);
        p.add_term(vec![2, 0], BigInt::from(1));
        p.add_term(vec![0, 2], BigInt::from(1));
        assert_eq!(to_elementary(&p), poly_in_e(2, &[(&[2, 0], 1), (&[0, 1], -2)]));
    }

    #[test]
    fn symmetric_square_first_power_sum() {
        // weights of S^2 on rank 2: 2x, x+y, 2y; sum = 3 e1
        let p = schur_power_sum(&Weight::new(vec![2, 0]), 1).unwrap();
        assert_eq!(p, poly_in_e(2, &[(&[1, 0], 3)]));
    }

    #[test]
    fn determinant_power_sums() {
        // det has the single weight x+y+z
        let p = schur_power_sum(&Weight::new(vec![1, 1, 1]), 2).unwrap();
        assert_eq!(p, poly_in_e(3, &[(&[2, 0, 0], 1)]));
    }

    #[test]
    #[should_panic]
    fn non_symmetric_input_panics() {
        let mut p = Poly::zero(2);
        p.add_term(vec![1, 0], BigInt::from(1));
        to_elementary(&p);
    }
}
