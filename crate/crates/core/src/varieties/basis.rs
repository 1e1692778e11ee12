//! Coordinates of Chern characters in an exceptional basis.

use num_traits::{One, ToPrimitive, Zero};

use crate::chow::{ChowClass, HrrVariety, Rat};
use crate::error::{Error, Result};

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Unsupported("singular Gram matrix".into()))?;
        a.swap(col, p);
        let inv = Rat::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A basis of numerical K-theory given by Chern characters, with the Euler
/// form and its inverse.
#[derive(Clone, Debug)]
pub struct ChBasis {
    pub labels: Vec<String>,
    pub chs: Vec<ChowClass>,
    pub gram: Vec<Vec<i64>>,
    inverse: Vec<Vec<Rat>>,
    /// Row `i` is the linear form `x -> chi(b_i, x)` on Chow coordinates.
    functionals: Vec<Vec<Rat>>,
}

impl ChBasis {
    pub fn new(var: &HrrVariety, labels: Vec<String>, chs: Vec<ChowClass>) -> Result<Self> {
        let ring = &var.ring;
        let n = ring.rank();
        let ring_basis: Vec<ChowClass> = (0..n).map(|k| ring.basis(k)).collect();
        let intersection: Vec<Vec<Rat>> =
            (0..n).map(|l| (0..n).map(|k| ring.degree(&ring.mul(&ring_basis[l], &ring_basis[k]))).collect()).collect();
        let functionals: Vec<Vec<Rat>> = chs
            .iter()
            .map(|b| {
                let u = ring.mul(&ring.dual(b), &var.todd);
                (0..n)
                    .map(|k| (0..n).fold(Rat::zero(), |acc, l| acc + u.coeff(l) * &intersection[l][k]))
                    .collect()
            })
            .collect();
        let mut basis = ChBasis { labels, chs, gram: Vec::new(), inverse: Vec::new(), functionals };
        basis.gram = (0..basis.rank())
            .map(|i| basis.chs.iter().map(|b| basis.chi_from(i, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let rat: Vec<Vec<Rat>> =
            basis.gram.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
        basis.inverse = invert(&rat)?;
        Ok(basis)
    }

    fn pairing_rat(&self, i: usize, ch: &ChowClass) -> Rat {
        self.functionals[i].iter().zip(&ch.0).fold(Rat::zero(), |acc, (w, x)| acc + w * x)
    }

    /// `chi(b_i, ch)`, asserted integral.
    pub fn chi_from(&self, i: usize, ch: &ChowClass) -> Result<i64> {
        let c = self.pairing_rat(i, ch);
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!("pairing {c} with {}", self.labels[i])));
        }
        c.to_integer().to_i64().ok_or_else(|| Error::NonIntegral("pairing overflow".into()))
    }

    pub fn rank(&self) -> usize {
        self.chs.len()
    }

    /// Integer coordinates of `ch`, from the pairings `chi(b_i, ch)`.
    pub fn coords(&self, var: &HrrVariety, ch: &ChowClass) -> Result<Vec<i64>> {
        let v: Vec<Rat> = (0..self.rank()).map(|i| self.pairing_rat(i, ch)).collect();
        self.inverse
            .iter()
            .map(|row| {
                let c = row.iter().zip(&v).fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                if !c.is_integer() {
                    return Err(Error::NonIntegral(format!("coordinate {c} in basis of {}", var.name)));
                }
                c.to_integer().to_i64().ok_or_else(|| Error::NonIntegral("coordinate overflow".into()))
            })
            .collect()
    }

    pub fn ch_of(&self, var: &HrrVariety, coords: &[i64]) -> ChowClass {
        let ring = &var.ring;
        let mut out = ring.zero();
        for (c, b) in coords.iter().zip(&self.chs) {
            if *c != 0 {
                out = ring.add(&out, &ring.scale_int(b, *c));
            }
        }
        out
    }

    /// Matrix of `x -> f(x)` in this basis (column `j` is the image of `b_j`).
    pub fn matrix_of(&self, var: &HrrVariety, f: impl Fn(&ChowClass) -> ChowClass) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = self.chs.iter().map(|b| self.coords(var, &f(b))).collect::<Result<_>>()?;
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbw::HomFactor;

    #[test]
    fn projective_space_coordinates() {
        let p3 = HrrVariety::homogeneous(&[HomFactor::projective3("P3")], "P3");
        let h = p3.ring.named("s1");
        let chs: Vec<ChowClass> = (-3..=0).map(|k| p3.ch_line(&p3.ring.scale_int(&h, k))).collect();
        let labels = (-3..=0).map(|k| format!("O({k})")).collect();
        let b = ChBasis::new(&p3, labels, chs).unwrap();
        // upper unitriangular
        for i in 0..4 {
            assert_eq!(b.gram[i][i], 1);
            for j in 0..i {
                assert_eq!(b.gram[i][j], 0);
            }
        }
        // O(1) = 4 O - 6 O(-1) + 4 O(-2) - O(-3)
        let c = b.coords(&p3, &p3.ch_line(&h)).unwrap();
        assert_eq!(c, vec![-1, 4, -6, 4]);
        let back = b.ch_of(&p3, &c);
        assert_eq!(back, p3.ch_line(&h));
    }

    #[test]
    fn inverse_of_small_matrix() {
        let r = |x: i64| Rat::from_integer(x.into());
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(invert(&[vec![r(0)]]).is_err());
    }
}
