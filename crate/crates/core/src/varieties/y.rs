//! The blowup `Y` of P^3 in `N` points, with exceptional planes `E_i`.

use crate::bbw::GradedDims;
use crate::chow::{ChowClass, HrrVariety};
use crate::error::{Error, Result};
use crate::kmut::{KClass, KLattice};
use crate::notation::{parse_divisor, split_twist};

use super::basis::ChBasis;
use super::oracle::{local_to_global, projective};
use super::{split_index, ExtAnswer, Obj, Resolved, Tag, Variety, VarietyEntry};

/// `H^*(Y, O(kh + sum m_i e_i))` when the table covers it: every `m_i <= 2`,
/// and for `k > 0` no negative `m_i`. A negative `m_i` imposes the
/// `binom(2 - m_i, 3)` conditions of a fat point.
pub fn line_cohomology(k: i64, m: &[i64]) -> Option<GradedDims> {
    if m.iter().any(|&x| x > 2) {
        return None;
    }
    let conditions: u64 = m
        .iter()
        .filter(|&&x| x < 0)
        .map(|&x| {
            let r = (2 - x) as u64;
            r * (r - 1) * (r - 2) / 6
        })
        .sum();
    let base = projective(3, k);
    if conditions == 0 {
        return Some(base);
    }
    match k {
        0 => Some(GradedDims::concentrated(1, conditions - 1)),
        k if k > 0 => None,
        _ => Some(base.direct_sum(&GradedDims::concentrated(1, conditions))),
    }
}

pub struct BlowupY {
    n: usize,
    pub hrr: HrrVariety,
    pub basis: ChBasis,
    lattice: KLattice,
}

impl BlowupY {
    pub fn new(n: usize) -> Result<Self> {
        let hrr = HrrVariety::blowup_p3(n);
        let mut labels: Vec<String> = ["O(-3h)", "O(-2h)", "O(-h)", "O"].iter().map(|s| s.to_string()).collect();
        let mut objs: Vec<Obj> = (-3..=0).map(|k| Obj::BlowupLine { k, m: vec![0; n] }).collect();
        for j in 0..=1 {
            for i in 1..=n {
                labels.push(if j == 0 { format!("O_E{i}") } else { format!("O_E{i}(1)") });
                objs.push(Obj::ExceptionalPlane { i, j });
            }
        }
        let chs = objs.iter().map(|o| ch_of(&hrr, n, o)).collect::<Result<Vec<_>>>()?;
        let basis = ChBasis::new(&hrr, labels.clone(), chs)?;
        let mut lattice = KLattice::ambient("Y", labels, basis.gram.clone());
        let ring = &hrr.ring;
        let omega = hrr.ch_canonical();
        let omega_inv = hrr.ch_line(&ring.scale_int(&hrr.canonical, -1));
        lattice.serre = Some(basis.matrix_of(&hrr, |c| ring.mul(c, &omega))?);
        lattice.serre_inverse = Some(basis.matrix_of(&hrr, |c| ring.mul(c, &omega_inv))?);
        let h = ring.named("h");
        let sum_e = (1..=n).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.named(&format!("e{i}"))));
        let big_h = ring.sub(&ring.scale_int(&h, 2), &sum_e);
        for (name, d) in [("h", h.clone()), ("-h", ring.scale_int(&h, -1)), ("H", big_h.clone()), ("-H", ring.scale_int(&big_h, -1))] {
            let ch = hrr.ch_line(&d);
            lattice.twists.insert(name.to_string(), basis.matrix_of(&hrr, |c| ring.mul(c, &ch))?);
        }
        Ok(BlowupY { n, hrr, basis, lattice })
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    /// `O(D)` for a divisor in `h`, `e_i`, `sum_e` and `H = 2h - sum e_i`.
    pub fn line(&self, divisor: &str) -> Result<Obj> {
        let d = parse_divisor(divisor)?;
        let mut k = 0;
        let mut m = vec![0; self.n];
        for (sym, c) in &d {
            match sym.as_str() {
                "h" => k += c,
                "H" => {
                    k += 2 * c;
                    m.iter_mut().for_each(|x| *x -= c);
                }
                "sum_e" => m.iter_mut().for_each(|x| *x += c),
                s => {
                    let i = split_index(s, "e")
                        .filter(|&i| (1..=self.n).contains(&i))
                        .ok_or_else(|| Error::UnknownLabel(format!("divisor symbol {s} on Y")))?;
                    m[i - 1] += c;
                }
            }
        }
        Ok(Obj::BlowupLine { k, m })
    }

    pub fn ch(&self, obj: &Obj) -> Result<ChowClass> {
        ch_of(&self.hrr, self.n, obj)
    }

    pub fn class_of(&self, obj: &Obj) -> Result<KClass> {
        Ok(KClass::new(self.basis.coords(&self.hrr, &self.ch(obj)?)?))
    }
}

fn ch_of(hrr: &HrrVariety, n: usize, obj: &Obj) -> Result<ChowClass> {
    let ring = &hrr.ring;
    let e = |i: usize| ring.named(&format!("e{i}"));
    match obj {
        Obj::BlowupLine { k, m } => {
            let mut d = ring.scale_int(&ring.named("h"), *k);
            for (i, c) in m.iter().enumerate().take(n) {
                d = ring.add(&d, &ring.scale_int(&e(i + 1), *c));
            }
            Ok(hrr.ch_line(&d))
        }
        Obj::ExceptionalPlane { i, j } => {
            // O_E(j) = O_E (x) O(-jE), O_E = O - O(-E)
            let ei = e(*i);
            let o_e = ring.sub(&ring.one(), &hrr.ch_line(&ring.scale_int(&ei, -1)));
            Ok(ring.mul(&o_e, &hrr.ch_line(&ring.scale_int(&ei, -*j))))
        }
        _ => Err(Error::Unsupported("object is not on Y".into())),
    }
}

impl Variety for BlowupY {
    fn name(&self) -> &str {
        "Y"
    }

    fn lattice(&self) -> &KLattice {
        &self.lattice
    }

    fn resolve(&self, label: &str) -> Result<Resolved> {
        let (base, twist) = split_twist(label)?;
        let obj = if base == "O" {
            self.line(&twist)?
        } else if let Some(i) = split_index(&base, "O_E").filter(|&i| (1..=self.n).contains(&i)) {
            let j = if twist.is_empty() {
                0
            } else {
                twist.trim().parse::<i64>().map_err(|_| Error::Parse(format!("twist of {label}")))?
            };
            Obj::ExceptionalPlane { i, j }
        } else {
            return Err(Error::UnknownLabel(format!("{label} on Y")));
        };
        let class = self.class_of(&obj)?.named(label);
        Ok(Resolved { label: label.to_string(), obj, class })
    }

    fn ext_graded(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer> {
        use Obj::{BlowupLine as L, ExceptionalPlane as E};
        let (value, detail) = match (&a.obj, &b.obj) {
            (L { k: k1, m: m1 }, L { k: k2, m: m2 }) => {
                let m: Vec<i64> = m2.iter().zip(m1).map(|(x, y)| x - y).collect();
                (line_cohomology(k2 - k1, &m)?, "line bundle table on Y".to_string())
            }
            (L { m, .. }, E { i, j }) => (projective(2, j + m[i - 1]), format!("H^*(E_{i}, O({}))", j + m[i - 1])),
            (E { i, j }, L { m, .. }) => {
                let d = -1 - j - m[i - 1];
                (projective(2, d).shifted(1), format!("H^(*-1)(E_{i}, O({d}))"))
            }
            (E { i: i1, j: j1 }, E { i: i2, j: j2 }) => {
                if i1 != i2 {
                    (GradedDims::zero(), "disjoint exceptional planes".to_string())
                } else {
                    let d = j2 - j1;
                    let v = local_to_global(&[projective(2, d), projective(2, d - 1)])?;
                    (v, format!("H^*(O({d})) + H^(*-1)(O({}))", d - 1))
                }
            }
            _ => return None,
        };
        Some(ExtAnswer::graded(Tag::Rule, value, detail))
    }

    fn hrr(&self) -> Option<&HrrVariety> {
        Some(&self.hrr)
    }

    fn chern(&self, obj: &Resolved) -> Option<ChowClass> {
        self.ch(&obj.obj).ok()
    }

    fn entry(&self) -> VarietyEntry {
        VarietyEntry {
            name: "Y".into(),
            dimension: 3,
            backend: self.lattice.backend,
            canonical: "-4h + 2 sum_e".into(),
            rank: self.lattice.rank(),
            generators: self.lattice.labels.clone(),
            objects: vec![
                "O(D), D in h, e<i>, sum_e, H = 2h - sum_e".into(),
                "O_E<i>(j)".into(),
            ],
            koszul: vec!["0 -> O(-E_i) -> O -> O_E_i -> 0".into()],
            axioms: vec!["orlov-y".into()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmut::mutate_left;
    use crate::varieties::{ext_labels, ext_oracle};

    #[test]
    fn line_table() {
        assert_eq!(line_cohomology(0, &[0, 0]), Some(GradedDims::concentrated(0, 1)));
        assert_eq!(line_cohomology(0, &[-1, 0]), Some(GradedDims::zero()));
        assert_eq!(line_cohomology(0, &[-1, -1, 1]), Some(GradedDims::concentrated(1, 1)));
        assert_eq!(line_cohomology(-2, &[-1, -1]), Some(GradedDims::concentrated(1, 2)));
        assert_eq!(line_cohomology(-2, &[1, 2]), Some(GradedDims::zero()));
        assert_eq!(line_cohomology(1, &[-1]), None);
        assert_eq!(line_cohomology(0, &[3]), None);
    }

    #[test]
    fn orlov_basis_is_exceptional() {
        let y = BlowupY::new(3).unwrap();
        let g = &y.basis.gram;
        for i in 0..g.len() {
            assert_eq!(g[i][i], 1);
            for j in 0..i {
                assert_eq!(g[i][j], 0, "({i},{j})");
            }
        }
    }

    #[test]
    fn step_two_ext() {
        let y = BlowupY::new(4).unwrap();
        for k in [2, 3] {
            let a = ext_labels(&y, "O_E2(-1)", &format!("O(-{k}h)")).unwrap();
            assert_eq!(a.tag, Tag::Rule);
            assert_eq!(a.value.unwrap(), GradedDims::concentrated(1, 1));
        }
    }

    #[test]
    fn restriction_of_h_and_mutation() {
        let y = BlowupY::new(2).unwrap();
        let o = y.resolve("O").unwrap();
        let oe = y.resolve("O_E1").unwrap();
        assert_eq!(ext_oracle(&y, &o, &oe).value.unwrap(), GradedDims::concentrated(0, 1));
        let l = mutate_left(y.lattice(), &o.class, &oe.class).unwrap();
        assert!(l.same_up_to_shift(&y.resolve("O(-e1)").unwrap().class));
        // O(-H) = O(-2h + sum_e)
        assert!(y.resolve("O(-H)").unwrap().class.same(&y.resolve("O(-2h+sum_e)").unwrap().class));
    }

    #[test]
    fn oracle_agrees_with_euler_pairing() {
        let y = BlowupY::new(2).unwrap();
        let labels = ["O", "O(-h)", "O(-e1)", "O(-H)", "O(-h-H)", "O_E1", "O_E1(-1)", "O_E2(1)", "O(e1-e2)"];
        for a in labels {
            for b in labels {
                let (ra, rb) = (y.resolve(a).unwrap(), y.resolve(b).unwrap());
                let ans = ext_oracle(&y, &ra, &rb);
                let chi = y.lattice().chi(&ra.class, &rb.class).unwrap();
                assert_eq!(ans.chi, Some(chi), "{a} -> {b}: {ans}");
            }
        }
    }
}
