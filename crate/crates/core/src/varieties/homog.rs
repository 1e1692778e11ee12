//! Homogeneous catalog data: the factors, the Koszul resolutions of `M`,
//! `S~` and the plane `Gr(2,3)`, and restriction of bundles to that plane.

use crate::bbw::{EquivariantBundle, FactorWeight, HomFactor, TermComplex};

pub fn gr_v() -> HomFactor {
    HomFactor::gr24("Gr(2,V)")
}

pub fn gr_w() -> HomFactor {
    HomFactor::gr24("Gr(2,W)")
}

pub fn p_w() -> HomFactor {
    HomFactor::projective3("P(W)")
}

pub fn gr23() -> HomFactor {
    HomFactor::gr23("Gr(2,3)")
}

/// `Gr(2,V) x P(W)`, the ambient space of `M`.
pub fn ambient_m() -> Vec<HomFactor> {
    vec![gr_v(), p_w()]
}

/// `Gr(2,V) x Gr(2,W)`, the ambient space of `S~`.
pub fn ambient_s() -> Vec<HomFactor> {
    vec![gr_v(), gr_w()]
}

/// `S^k U (t)` on a rank-2 tautological factor: weight `(t, t - k)`.
pub fn sym_u(k: i64, t: i64) -> FactorWeight {
    FactorWeight::new([t, t - k], [0, 0])
}

/// `O(t)` on a projective factor.
fn proj(t: i64) -> FactorWeight {
    p_w().line(t)
}

fn box2(a: FactorWeight, b: FactorWeight) -> EquivariantBundle {
    EquivariantBundle::irreducible(vec![a, b])
}

/// Koszul resolution of `O_M` on `Gr(2,V) x P(W)`:
/// `O(-3g-3h) -> S^2U(-g-2h) -> S^2U(-h) -> O`.
pub fn koszul_m() -> TermComplex {
    TermComplex::from_terms([
        (0, box2(sym_u(0, 0), proj(0))),
        (-1, box2(sym_u(2, 0), proj(-1))),
        (-2, box2(sym_u(2, -1), proj(-2))),
        (-3, box2(sym_u(0, -3), proj(-3))),
    ])
}

/// Koszul resolution of `O_S~` on `Gr(2,V) x Gr(2,W)`, section of `S^2U^v ⊠ U_W`.
/// The plethysm decompositions are catalog data.
pub fn koszul_s_tilde() -> TermComplex {
    let s = |k, t| sym_u(k, t);
    let sum = |parts: Vec<(FactorWeight, FactorWeight)>| {
        parts
            .into_iter()
            .fold(EquivariantBundle::zero(), |acc, (a, b)| acc.sum(&box2(a, b)))
    };
    TermComplex::from_terms([
        (0, sum(vec![(s(0, 0), s(0, 0))])),
        (-1, sum(vec![(s(2, 0), s(1, 0))])),
        (-2, sum(vec![(s(2, -1), s(2, 0)), (s(4, 0), s(0, -1)), (s(0, -2), s(0, -1))])),
        (-3, sum(vec![(s(0, -3), s(3, 0)), (s(4, -1), s(1, -1)), (s(2, -2), s(1, -1))])),
        (-4, sum(vec![(s(2, -3), s(2, -1)), (s(4, -2), s(0, -2)), (s(0, -4), s(0, -2))])),
        (-5, sum(vec![(s(2, -4), s(1, -2))])),
        (-6, sum(vec![(s(0, -6), s(0, -3))])),
    ])
}

/// Resolution of `O_S` on `Gr(2,V)`: `S^2U(-3g) -> W^v ⊗ O(-3g) -> O`.
pub fn resolution_s() -> TermComplex {
    let g = [gr_v()];
    TermComplex::from_terms([
        (0, EquivariantBundle::trivial(&g)),
        (-1, EquivariantBundle::line(&g, &[-3]).with_mult(4)),
        (-2, EquivariantBundle::irreducible(vec![sym_u(2, -3)])),
    ])
}

/// Resolution of the ideal `I_S`: `S^2U(-3g) -> W^v ⊗ O(-3g)`, with `I_S` in position 0.
pub fn resolution_ideal_s() -> TermComplex {
    let g = [gr_v()];
    TermComplex::from_terms([
        (0, EquivariantBundle::line(&g, &[-3]).with_mult(4)),
        (-1, EquivariantBundle::irreducible(vec![sym_u(2, -3)])),
    ])
}

/// Koszul resolution of `Gr(2,3) ⊂ Gr(2,4)` (zero locus of a section of `U^v`):
/// `O(-g) -> U -> O`.
pub fn koszul_plane() -> TermComplex {
    TermComplex::from_terms([
        (0, EquivariantBundle::irreducible(vec![sym_u(0, 0)])),
        (-1, EquivariantBundle::irreducible(vec![FactorWeight::new([0, -1], [0, 0])])),
        (-2, EquivariantBundle::irreducible(vec![sym_u(0, -1)])),
    ])
}

/// K-theoretic restriction of a `Gr(2,4)` bundle to `Gr(2,3)`:
/// `Q_4^v` restricts to an extension of `Q_3^v` by `O`, so
/// `Sigma^(c,d) Q_4^v` contributes `(Q_3^v)^j` for `d <= j <= c`.
pub fn restrict_to_plane(fw: &FactorWeight) -> EquivariantBundle {
    let q = fw.quo.entries();
    let (c, d) = (q[0], q[1]);
    EquivariantBundle {
        terms: (d..=c)
            .map(|j| crate::bbw::BundleTerm {
                mult: 1,
                factors: vec![FactorWeight::new(fw.sub.0.clone(), vec![j])],
                shift: 0,
            })
            .collect(),
    }
    .canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbw::{bbw_factor, hypercohomology, pushforward_complex, Hypercohomology};
    use crate::weights::weyl_dim;
    use std::collections::BTreeMap;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn s_tilde_ranks_are_binomial() {
        for (p, r) in koszul_s_tilde().ranks().unwrap() {
            assert_eq!(r, binom(6, (-p) as u64), "position {p}");
        }
        for (p, r) in koszul_m().ranks().unwrap() {
            assert_eq!(r, binom(3, (-p) as u64));
        }
    }

    #[test]
    fn pushforward_of_s_tilde_gives_resolution_of_s() {
        let push = pushforward_complex(&ambient_s(), &koszul_s_tilde(), &[1]).unwrap();
        assert!(push.determinate);
        assert_eq!(push.complex, resolution_s());
    }

    #[test]
    fn pushforward_of_twisted_m_resolution() {
        // (om) (x) O(h) pushed to Gr(2,V): S^2U -> W^v (x) O
        let push = pushforward_complex(&ambient_m(), &koszul_m().twisted(&[0, 1]), &[1]).unwrap();
        assert!(push.determinate);
        let expected = TermComplex::from_terms([
            (0, EquivariantBundle::trivial(&[gr_v()]).with_mult(4)),
            (-1, EquivariantBundle::irreducible(vec![sym_u(2, 0)])),
        ]);
        assert_eq!(push.complex, expected);
    }

    #[test]
    fn plane_structure_sheaf() {
        let h = hypercohomology(&[gr_v()], &koszul_plane()).unwrap();
        let Hypercohomology::Determinate(g) = h else { panic!("indeterminate") };
        assert_eq!(g.dims(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn restriction_preserves_rank() {
        for fw in [FactorWeight::new([1, 0], [2, -1]), FactorWeight::new([0, -2], [0, -1])] {
            let r = restrict_to_plane(&fw);
            assert_eq!(r.rank().unwrap(), fw.rank().unwrap());
        }
        // direct BBW on Gr(2,3) for O(-1) agrees with the plane being P^2
        let o = FactorWeight::new([-1, -1], [0]);
        assert!(bbw_factor(&gr23(), &o).unwrap().is_zero());
        assert_eq!(weyl_dim(&crate::weights::Weight::new(vec![1, 0, 0])).unwrap(), 3);
    }
}
