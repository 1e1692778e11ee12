//! Products of Grassmannians: P^3, Gr(2,4), Gr(2,3) and Gr(2,V) x P(W).

use std::sync::OnceLock;

use regex::Regex;

use crate::bbw::{bbw_product, EquivariantBundle, FactorWeight, HomFactor};
use crate::chow::HrrVariety;
use crate::error::{Error, Result};
use crate::kmut::{KClass, KLattice};
use crate::notation::{base_bundle, check_symbols, parse_divisor, split_twist};

use super::basis::ChBasis;
use super::homog;
use super::{ExtAnswer, Obj, Resolved, Tag, Variety, VarietyEntry};

/// Highest weights `lambda` in a `k x (n-k)` box, the Kapranov basis.
fn box_weights(k: usize, m: usize) -> Vec<Vec<i64>> {
    fn rec(k: usize, m: i64, prefix: Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == k {
            out.push(prefix);
            return;
        }
        let cap = prefix.last().copied().unwrap_or(m);
        for v in 0..=cap {
            let mut p = prefix.clone();
            p.push(v);
            rec(k, m, p, out);
        }
    }
    let mut out = Vec::new();
    rec(k, m as i64, Vec::new(), &mut out);
    out.sort_by_key(|w| (w.iter().sum::<i64>(), std::cmp::Reverse(w.clone())));
    out
}

pub fn factor_basis(space: &HomFactor) -> Vec<FactorWeight> {
    box_weights(space.k, space.quotient_rank())
        .into_iter()
        .map(|w| FactorWeight::new(w, vec![0; space.quotient_rank()]))
        .collect()
}

/// Products of per-factor bases, last factor fastest.
pub fn product_basis(spaces: &[HomFactor]) -> Vec<EquivariantBundle> {
    let mut out: Vec<Vec<FactorWeight>> = vec![Vec::new()];
    for s in spaces {
        let fb = factor_basis(s);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                fb.iter().map(move |f| {
                    let mut p = prefix.clone();
                    p.push(f.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(EquivariantBundle::irreducible).collect()
}

fn weight_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\[([-\d,\s]*)\|([-\d,\s]*)\]$").expect("static regex"))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
        .collect()
}

/// A named bundle on one factor: `O`, `S2U`, `V/U`, ... or a raw weight `[a,b|c,d]`.
pub fn factor_base(space: &HomFactor, base: &str) -> Result<FactorWeight> {
    if let Some(c) = weight_re().captures(base) {
        let fw = FactorWeight::new(parse_ints(&c[1])?, parse_ints(&c[2])?);
        fw.check(space)?;
        return Ok(fw);
    }
    base_bundle(space, base)
}

/// Parse `base(twist)` or `base1(t1) ⊠ base2(t2)` on a product with one
/// twist symbol per factor.
pub fn parse_bundle(spaces: &[HomFactor], symbols: &[&str], label: &str) -> Result<EquivariantBundle> {
    let parts: Vec<&str> = label.split('⊠').map(str::trim).collect();
    let mut factors = Vec::with_capacity(spaces.len());
    if parts.len() == spaces.len() && spaces.len() > 1 {
        for (f, part) in parts.iter().enumerate() {
            let (base, twist) = split_twist(part)?;
            let d = parse_divisor(&twist)?;
            check_symbols(&d, &["1", symbols[f]], part)?;
            let t = d.get("1").copied().unwrap_or(0) + d.get(symbols[f]).copied().unwrap_or(0);
            factors.push(factor_base(&spaces[f], &base)?.twisted(t));
        }
    } else if parts.len() == 1 {
        let (base, twist) = split_twist(label)?;
        let d = parse_divisor(&twist)?;
        let mut allowed = symbols.to_vec();
        if spaces.len() == 1 {
            allowed.push("1");
        }
        check_symbols(&d, &allowed, label)?;
        for (f, s) in spaces.iter().enumerate() {
            let mut t = d.get(symbols[f]).copied().unwrap_or(0);
            if spaces.len() == 1 {
                t += d.get("1").copied().unwrap_or(0);
            }
            let fw = if f == 0 { factor_base(s, &base)? } else { s.trivial() };
            factors.push(fw.twisted(t));
        }
    } else {
        return Err(Error::Parse(format!("`{label}` has {} factors, expected {}", parts.len(), spaces.len())));
    }
    Ok(EquivariantBundle::irreducible(factors))
}

pub struct HomVariety {
    name: String,
    pub spaces: Vec<HomFactor>,
    symbols: Vec<&'static str>,
    pub hrr: HrrVariety,
    pub basis: ChBasis,
    lattice: KLattice,
}

impl HomVariety {
    pub fn new(name: &str, spaces: Vec<HomFactor>, symbols: Vec<&'static str>) -> Result<Self> {
        let hrr = HrrVariety::homogeneous(&spaces, name);
        let bundles = product_basis(&spaces);
        let labels: Vec<String> = bundles.iter().map(|b| b.to_string()).collect();
        let chs = bundles.iter().map(|b| hrr.chern_character(b)).collect::<Result<Vec<_>>>()?;
        let basis = ChBasis::new(&hrr, labels.clone(), chs)?;
        let mut lattice = KLattice::ambient(name, labels, basis.gram.clone());
        let omega = hrr.ch_canonical();
        let omega_inv = hrr.ch_line(&hrr.ring.scale_int(&hrr.canonical, -1));
        lattice.serre = Some(basis.matrix_of(&hrr, |c| hrr.ring.mul(c, &omega))?);
        lattice.serre_inverse = Some(basis.matrix_of(&hrr, |c| hrr.ring.mul(c, &omega_inv))?);
        for (f, sym) in symbols.iter().enumerate() {
            for sign in [1i64, -1] {
                let mut degrees = vec![0; spaces.len()];
                degrees[f] = sign;
                let line = EquivariantBundle::line(&spaces, &degrees);
                let ch = hrr.chern_character(&line)?;
                let key = if sign > 0 { sym.to_string() } else { format!("-{sym}") };
                lattice.twists.insert(key, basis.matrix_of(&hrr, |c| hrr.ring.mul(c, &ch))?);
            }
        }
        Ok(HomVariety { name: name.to_string(), spaces, symbols, hrr, basis, lattice })
    }

    pub fn p3() -> Result<Self> {
        Self::new("P3", vec![HomFactor::projective3("P3")], vec!["h"])
    }

    pub fn gr24() -> Result<Self> {
        Self::new("Gr24", vec![HomFactor::gr24("Gr(2,4)")], vec!["g"])
    }

    pub fn gr23() -> Result<Self> {
        Self::new("Gr23", vec![homog::gr23()], vec!["g"])
    }

    /// `Gr(2,V) x P(W)`, the ambient space of M.
    pub fn ambient_m() -> Result<Self> {
        Self::new("Gr24xP3", homog::ambient_m(), vec!["g", "h"])
    }

    pub fn bundle(&self, label: &str) -> Result<EquivariantBundle> {
        parse_bundle(&self.spaces, &self.symbols, label)
    }

    pub fn class_of(&self, bundle: &EquivariantBundle) -> Result<KClass> {
        let ch = self.hrr.chern_character(bundle)?;
        Ok(KClass::new(self.basis.coords(&self.hrr, &ch)?))
    }

    pub fn chi_bbw(&self, bundle: &EquivariantBundle) -> Result<i64> {
        Ok(bbw_product(&self.spaces, bundle)?.euler_characteristic())
    }

    pub fn chi_hrr(&self, bundle: &EquivariantBundle) -> Result<i64> {
        self.hrr.chi(&self.hrr.chern_character(bundle)?)
    }
}

impl Variety for HomVariety {
    fn name(&self) -> &str {
        &self.name
    }

    fn lattice(&self) -> &KLattice {
        &self.lattice
    }

    fn resolve(&self, label: &str) -> Result<Resolved> {
        let b = self.bundle(label)?;
        let class = self.class_of(&b)?.named(label);
        Ok(Resolved { label: label.to_string(), obj: Obj::Bundle(b), class })
    }

    fn ext_graded(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer> {
        let (Obj::Bundle(x), Obj::Bundle(y)) = (&a.obj, &b.obj) else { return None };
        let t = y.tensor(&x.dual()).ok()?;
        let h = bbw_product(&self.spaces, &t).ok()?;
        Some(ExtAnswer::graded(Tag::Bbw, h.to_graded_dims(), format!("H^*({}, {})", self.name, t)))
    }

    fn hrr(&self) -> Option<&HrrVariety> {
        Some(&self.hrr)
    }

    fn chern(&self, obj: &Resolved) -> Option<crate::chow::ChowClass> {
        match &obj.obj {
            Obj::Bundle(b) => self.hrr.chern_character(b).ok(),
            _ => None,
        }
    }

    fn entry(&self) -> VarietyEntry {
        VarietyEntry {
            name: self.name.clone(),
            dimension: self.hrr.dim(),
            backend: self.lattice.backend,
            canonical: self.hrr.ring.display(&self.hrr.canonical),
            rank: self.lattice.rank(),
            generators: self.lattice.labels.clone(),
            objects: vec!["any homogeneous bundle: base(twist), base1(t1) ⊠ base2(t2), or [sub|quo] weights".into()],
            koszul: Vec::new(),
            axioms: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bbw::GradedDims;
    use crate::kmut::{gram, Collection, Direction, Entry};
    use crate::varieties::ext_labels;

    #[test]
    fn kapranov_basis_sizes() {
        assert_eq!(box_weights(2, 2).len(), 6);
        assert_eq!(box_weights(1, 3).len(), 4);
        assert_eq!(box_weights(2, 1).len(), 3);
    }

    #[test]
    fn p3_line_bundles_gram() {
        let p3 = HomVariety::p3().unwrap();
        let coll = Collection::new(
            (0..4).map(|k| Entry::object(p3.resolve(&format!("O({k}h)")).unwrap().class)).collect(),
        );
        let g = gram(p3.lattice(), &coll);
        assert!(g.exceptional);
        for k in 0..4usize {
            let expected = ((k + 1) * (k + 2) * (k + 3) / 6) as i64;
            assert_eq!(g.matrix[0][k], Some(expected));
        }
    }

    #[test]
    fn serre_on_gr24() {
        let gr = HomVariety::gr24().unwrap();
        let o = gr.resolve("O(g)").unwrap().class;
        let t = gr.lattice().serre_twist(&o, Direction::Left).unwrap();
        assert!(t.same(&gr.resolve("O(-3g)").unwrap().class));
    }

    #[test]
    fn step_four_cohomology_on_gr24() {
        let gr = HomVariety::gr24().unwrap();
        let a = ext_labels(&gr, "O", "S2U(-g)").unwrap();
        assert_eq!(a.tag, Tag::Bbw);
        assert_eq!(a.value.unwrap(), GradedDims::concentrated(2, 1));
        assert!(ext_labels(&gr, "O", "O(-g)").unwrap().value.unwrap().is_zero());
    }

    #[test]
    fn product_labels() {
        let a = HomVariety::ambient_m().unwrap();
        let b = a.bundle("S2U(-g) ⊠ O(-2)").unwrap();
        assert_eq!(b, EquivariantBundle::irreducible(vec![homog::sym_u(2, -1), homog::p_w().line(-2)]));
        let c = a.bundle("O(g-h)").unwrap();
        assert_eq!(c, EquivariantBundle::line(&a.spaces, &[1, -1]));
        assert!(a.bundle("O(2)").is_err());
    }
}
