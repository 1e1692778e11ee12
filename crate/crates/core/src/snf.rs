//! Smith normal form over arbitrary-precision integers and subgroup membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub v: Matrix,
    pub d: Matrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(a: &Matrix) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = min_entry(&d, t) else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold in any entry not divisible by the pivot
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // add row i to row t, then keep reducing
                        let neg_one = -BigInt::one();
                        row_axpy(&mut d, t, i, &neg_one);
                        row_axpy(&mut u, t, i, &neg_one);
                    }
                }
            }
            if let Some((pi, pj)) = min_entry_in_cross(&d, t) {
                d.swap(t, pi);
                u.swap(t, pi);
                swap_cols(&mut d, t, pj);
                swap_cols(&mut v, t, pj);
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Smith { u, v, d, rank: t }
}

fn min_entry(d: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in d.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` / column `t` beyond the pivot, if smaller than the pivot.
fn min_entry_in_cross(d: &Matrix, t: usize) -> Option<(usize, usize)> {
    let pivot = d[t][t].abs();
    let mut best: Option<(usize, usize)> = None;
    let mut best_val = pivot.clone();
    for (i, row) in d.iter().enumerate().skip(t + 1) {
        if !row[t].is_zero() && row[t].abs() < best_val {
            best_val = row[t].abs();
            best = Some((i, t));
        }
    }
    for j in t + 1..d[t].len() {
        if !d[t][j].is_zero() && d[t][j].abs() < best_val {
            best_val = d[t][j].abs();
            best = Some((t, j));
        }
    }
    best
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_src
fn row_axpy(m: &mut Matrix, i: usize, src: usize, q: &BigInt) {
    let s = m[src].clone();
    for (x, y) in m[i].iter_mut().zip(&s) {
        *x -= q * y;
    }
}

/// col_j -= q * col_src
fn col_axpy(m: &mut Matrix, j: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[j] -= q * y;
    }
}

/// Outcome of a membership query: the coefficients when `target` lies in the
/// span of the relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    #[serde(serialize_with = "ser_opt_vec")]
    pub certificate: Option<Vec<BigInt>>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(xs) => s.collect_seq(xs.iter().map(|x| x.to_string())),
    }
}

/// Decide whether `target` is an integer combination of `relations` (each a
/// vector over the generators) and return the combination.
pub fn relation_membership(relations: &[Vec<BigInt>], target: &[BigInt]) -> Membership {
    let g = target.len();
    if target.iter().all(Zero::is_zero) {
        return Membership { member: true, certificate: Some(vec![BigInt::zero(); relations.len()]) };
    }
    if relations.is_empty() {
        return Membership { member: false, certificate: None };
    }
    // columns are relations
    let a: Matrix = (0..g).map(|i| relations.iter().map(|r| r[i].clone()).collect()).collect();
    let s = smith_normal_form(&a);
    let ut = mat_vec(&s.u, target);
    let mut y = vec![BigInt::zero(); relations.len()];
    for (i, x) in ut.iter().enumerate() {
        if i < s.rank {
            let di = &s.d[i][i];
            if !(x % di).is_zero() {
                return Membership { member: false, certificate: None };
            }
            y[i] = x / di;
        } else if !x.is_zero() {
            return Membership { member: false, certificate: None };
        }
    }
    let cert = mat_vec(&s.v, &y);
    debug_assert_eq!(mat_vec(&a, &cert), target.to_vec());
    Membership { member: true, certificate: Some(cert) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[Vec<i64>]) {
        let m = from_i64(a);
        let s = smith_normal_form(&m);
        assert_eq!(mat_mul(&mat_mul(&s.u, &m), &s.v), s.d);
        for i in 0..s.d.len() {
            for j in 0..s.d[i].len() {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn small_matrices() {
        check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&[vec![0, 0], vec![0, 0]]);
        check(&[vec![2, 0], vec![0, 3]]);
        check(&[vec![1, 2, 3]]);
        check(&[vec![4], vec![6]]);
    }

    #[test]
    fn diagonal_of_known_example() {
        let s = smith_normal_form(&from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn membership_cases() {
        let rels = vec![from_i64(&[vec![2, 0, 0]])[0].clone(), from_i64(&[vec![0, 1, -1]])[0].clone()];
        let t = from_i64(&[vec![4, 3, -3]])[0].clone();
        let m = relation_membership(&rels, &t);
        assert!(m.member);
        assert_eq!(m.certificate.unwrap(), vec![BigInt::from(2), BigInt::from(3)]);
        let odd = from_i64(&[vec![1, 0, 0]])[0].clone();
        assert!(!relation_membership(&rels, &odd).member);
        let zero = vec![BigInt::zero(); 3];
        assert!(relation_membership(&rels, &zero).member);
    }
}
