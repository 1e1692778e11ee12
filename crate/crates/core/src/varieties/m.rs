//! The fourfold `M ⊂ Gr(2,V) x P(W)` cut out by the Koszul complex (om),
//! together with its ten planes `Sigma_i ≅ Gr(2,3)`.
//!
//! Numerical K-theory is modelled as the restriction of `K(Gr(2,V) x P(W))`
//! plus three generators `O_Sigma_i(t)`, `t = -1, 0, 1`, per plane. The
//! Euler form is degenerate on this presentation, so class comparisons on
//! `M` go through [`KLattice::numerically_equal`].

use serde::Serialize;

use crate::bbw::{
    bbw_product, hypercohomology, BundleTerm, EquivariantBundle, GradedDims, Hypercohomology, TermComplex,
};
use crate::chow::{ChowClass, HrrVariety};
use crate::error::{Error, Result};
use crate::kmut::{KClass, KLattice};
use crate::notation::{base_bundle, parse_divisor, split_twist, Divisor};

use super::basis::ChBasis;
use super::cover::render_divisor;
use super::homog::{self, gr_v, koszul_m, koszul_plane, restrict_to_plane};
use super::homvar::{factor_basis, product_basis, HomVariety};
use super::oracle::{local_to_global, two_of_three};
use super::{split_index, ExtAnswer, Obj, Resolved, Tag, Variety, VarietyEntry};

pub struct VarietyM {
    n: usize,
    pub ambient: HomVariety,
    plane: HrrVariety,
    plane_basis: ChBasis,
    lattice: KLattice,
}

const PLANE_TWISTS: [i64; 3] = [-1, 0, 1];

fn plane_label(i: usize, t: i64) -> String {
    match t {
        0 => format!("O_Sigma{i}"),
        t => format!("O_Sigma{i}({t})"),
    }
}

/// Drop the `P(W)` factor, keeping its rank as a multiplicity. This is the
/// restriction to a fibre `Gr(2,V) x {w}`.
fn gr_part(b: &EquivariantBundle) -> Result<EquivariantBundle> {
    let mut out = EquivariantBundle::zero();
    for t in &b.terms {
        let r = if t.factors.len() > 1 { t.factors[1].rank()? } else { 1 };
        out = out.sum(&EquivariantBundle {
            terms: vec![BundleTerm { mult: t.mult * r, factors: vec![t.factors[0].clone()], shift: t.shift }],
        });
    }
    Ok(out)
}

fn to_plane(b: &EquivariantBundle) -> Result<EquivariantBundle> {
    let mut out = EquivariantBundle::zero();
    for t in &gr_part(b)?.terms {
        out = out.sum(&restrict_to_plane(&t.factors[0]).with_mult(t.mult));
    }
    Ok(out.canonical())
}

/// Euler characteristic of a complex of homogeneous bundles, term by term.
fn complex_chi(spaces: &[crate::bbw::HomFactor], c: &TermComplex) -> Result<i64> {
    let mut total = 0;
    for (p, b) in &c.terms {
        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
        total += sign * bbw_product(spaces, b)?.euler_characteristic();
    }
    Ok(total)
}

fn determinate(spaces: &[crate::bbw::HomFactor], c: &TermComplex) -> Option<GradedDims> {
    match hypercohomology(spaces, c).ok()? {
        Hypercohomology::Determinate(g) => Some(g.to_graded_dims()),
        Hypercohomology::Indeterminate(_) => None,
    }
}

/// Rewrite `e = 3g - h` and reject other symbols.
fn m_divisor(s: &str, allow_constant: bool) -> Result<Divisor> {
    let mut d = parse_divisor(s)?;
    if let Some(e) = d.remove("e") {
        *d.entry("g".into()).or_insert(0) += 3 * e;
        *d.entry("h".into()).or_insert(0) -= e;
    }
    d.retain(|_, v| *v != 0);
    for k in d.keys() {
        if !(k == "g" || k == "h" || (allow_constant && k == "1")) {
            return Err(Error::Parse(format!("symbol `{k}` not allowed on M in `{s}`")));
        }
    }
    Ok(d)
}

fn line(d: &Divisor) -> String {
    let d: Divisor = d.iter().filter(|(_, v)| **v != 0).map(|(k, v)| (k.clone(), *v)).collect();
    if d.is_empty() {
        "O".into()
    } else {
        format!("O({})", render_divisor(&d))
    }
}

fn add(a: &Divisor, b: &[(&str, i64)]) -> Divisor {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.to_string()).or_insert(0) += v;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PiShadowRow {
    pub bundle: String,
    /// `chi(M, O(h) ⊗ pi^*T)` through the Koszul complex of `M`.
    pub on_m: i64,
    /// `chi(Gr(2,V), I_S(3g) ⊗ T)` through the resolution of `I_S`.
    pub on_gr: i64,
}

impl VarietyM {
    pub fn new(n: usize) -> Result<Self> {
        let ambient = HomVariety::ambient_m()?;
        let amb = &ambient.hrr;
        let ring = &amb.ring;
        let plane = HrrVariety::homogeneous(&[homog::gr23()], "Sigma");
        let gr23 = homog::gr23();
        let plane_chs: Vec<ChowClass> = PLANE_TWISTS
            .iter()
            .map(|&t| plane.chern_character(&EquivariantBundle::irreducible(vec![gr23.line(t)])))
            .collect::<Result<_>>()?;
        let plane_basis =
            ChBasis::new(&plane, PLANE_TWISTS.iter().map(|&t| format!("O({t})")).collect(), plane_chs)?;
        let pring = &plane.ring;
        let p_line = |t: i64| plane.ch_line(&pring.scale_int(&pring.named("s1"), t));

        let mut ch_om = ring.zero();
        for (p, b) in &koszul_m().terms {
            let c = amb.chern_character(b)?;
            ch_om = if p.rem_euclid(2) == 0 { ring.add(&ch_om, &c) } else { ring.sub(&ch_om, &c) };
        }
        let basis_bundles = product_basis(&ambient.spaces);
        let restricted: Vec<ChowClass> =
            basis_bundles.iter().map(|b| plane.chern_character(&to_plane(b)?)).collect::<Result<_>>()?;
        let a = ambient.basis.rank();
        let s = &plane_basis.chs;
        let dual_n = pring.sub(&pring.add(&pring.one(), &p_line(-2)), &pring.scale_int(&p_line(-1), 2));
        let o_m2 = p_line(-2);

        let mut labels = ambient.basis.labels.clone();
        for i in 1..=n {
            labels.extend(PLANE_TWISTS.iter().map(|&t| plane_label(i, t)));
        }
        let total = a + 3 * n;
        let mut form = vec![vec![Some(0i64); total]; total];
        for j in 0..a {
            let restricted_j = ring.mul(&ambient.basis.chs[j], &ch_om);
            for (i, row) in form.iter_mut().enumerate().take(a) {
                row[j] = Some(ambient.basis.chi_from(i, &restricted_j)?);
            }
        }
        for p in 0..n {
            let off = a + 3 * p;
            for (x, sx) in s.iter().enumerate() {
                for i in 0..a {
                    form[i][off + x] = Some(plane.euler_pairing(&restricted[i], sx)?);
                    form[off + x][i] = Some(plane.euler_pairing(sx, &pring.mul(&restricted[i], &o_m2))?);
                }
                for (y, sy) in s.iter().enumerate() {
                    form[off + x][off + y] = Some(plane.euler_pairing(sx, &pring.mul(sy, &dual_n))?);
                }
            }
        }
        let mut lattice = KLattice::formal("M", labels, form);
        lattice.backend = crate::kmut::Backend::Ambient;

        let block = |amb_m: Vec<Vec<i64>>, pl_m: Vec<Vec<i64>>| {
            let mut m = vec![vec![0i64; total]; total];
            for i in 0..a {
                m[i][..a].copy_from_slice(&amb_m[i]);
            }
            for p in 0..n {
                let off = a + 3 * p;
                for x in 0..3 {
                    for y in 0..3 {
                        m[off + x][off + y] = pl_m[x][y];
                    }
                }
            }
            m
        };
        let amb_line = |g: i64, h: i64| {
            let ch = amb.chern_character(&EquivariantBundle::line(&ambient.spaces, &[g, h]))?;
            ambient.basis.matrix_of(amb, |c| ring.mul(c, &ch))
        };
        let pl_mult = |t: i64| plane_basis.matrix_of(&plane, |c| pring.mul(c, &p_line(t)));
        lattice.serre = Some(block(amb_line(-1, -1)?, pl_mult(-1)?));
        lattice.serre_inverse = Some(block(amb_line(1, 1)?, pl_mult(1)?));
        for (name, g, h) in [("g", 1, 0), ("-g", -1, 0), ("h", 0, 1), ("-h", 0, -1)] {
            lattice.twists.insert(name.into(), block(amb_line(g, h)?, pl_mult(g)?));
        }
        Ok(VarietyM { n, ambient, plane, plane_basis, lattice })
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    fn bundle_class(&self, b: &EquivariantBundle) -> Result<KClass> {
        let mut c = self.ambient.class_of(b)?.coords;
        c.resize(self.lattice.rank(), 0);
        Ok(KClass::new(c))
    }

    fn plane_class(&self, i: usize, lift: &EquivariantBundle) -> Result<KClass> {
        let ch = self.plane.chern_character(&to_plane(lift)?)?;
        let local = self.plane_basis.coords(&self.plane, &ch)?;
        let mut c = vec![0; self.lattice.rank()];
        let off = self.ambient.basis.rank() + 3 * (i - 1);
        c[off..off + 3].copy_from_slice(&local);
        Ok(KClass::new(c))
    }

    fn resolve_bundle(&self, label: &str) -> Result<Resolved> {
        let b = if label.contains('⊠') {
            self.ambient.bundle(label)?
        } else {
            let (base, twist) = split_twist(label)?;
            let d = m_divisor(&twist, false)?;
            let norm = if d.is_empty() { base } else { format!("{base}({})", render_divisor(&d)) };
            self.ambient.bundle(&norm)?
        };
        let class = self.bundle_class(&b)?.named(label);
        Ok(Resolved { label: label.into(), obj: Obj::Bundle(b), class })
    }

    /// `S_k(twist)`: an extension for even `k`, `(V/U)` for odd `k`.
    fn resolve_s(&self, label: &str, k: i64, twist: &str) -> Result<Resolved> {
        let t = m_divisor(twist, false)?;
        let m = k.div_euclid(2);
        if k.rem_euclid(2) == 1 {
            let d = add(&t, &[("h", m)]);
            let inner = if d.values().all(|v| *v == 0) { "V/U".to_string() } else { format!("V/U({})", render_divisor(&d)) };
            let r = self.resolve_bundle(&inner)?;
            return Ok(Resolved { label: label.into(), class: r.class.named(label), obj: r.obj });
        }
        let sub = self.resolve_bundle(&line(&add(&t, &[("h", m)])))?;
        let quo = self.resolve_bundle(&line(&add(&t, &[("g", 1), ("h", m - 1)])))?;
        let class = sub.class.add(&quo.class).named(label);
        let twist = render_divisor(&t);
        Ok(Resolved { label: label.into(), obj: Obj::Extension { sub: Box::new(sub), quo: Box::new(quo), index: k, twist }, class })
    }

    fn resolve_plane(&self, label: &str, base: &str, idx: &str, twist: &str) -> Result<Resolved> {
        let i = split_index(idx, "")
            .filter(|&i| (1..=self.n).contains(&i))
            .ok_or_else(|| Error::UnknownLabel(format!("{label}: no plane Sigma{idx}")))?;
        let d = m_divisor(twist, true)?;
        // h is trivial on each plane
        let t = d.get("1").copied().unwrap_or(0) + d.get("g").copied().unwrap_or(0);
        let base = if base.is_empty() { "O" } else { base };
        let lift = EquivariantBundle::irreducible(vec![base_bundle(&gr_v(), base)?.twisted(t)]);
        let class = self.plane_class(i, &lift)?.named(label);
        Ok(Resolved { label: label.into(), obj: Obj::Plane { i, lift }, class })
    }

    /// Graded Ext for the bundle/plane cases, with extensions split by
    /// two-out-of-three.
    fn ext_inner(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer> {
        match (&a.obj, &b.obj) {
            (_, Obj::Extension { sub, quo, .. }) => {
                let (x, y) = (self.ext_inner(a, sub)?, self.ext_inner(a, quo)?);
                combine(&x, &y, format!("Ext({}, {}) and Ext({}, {})", a.label, sub.label, a.label, quo.label))
            }
            (Obj::Extension { sub, quo, .. }, _) => {
                let (x, y) = (self.ext_inner(quo, b)?, self.ext_inner(sub, b)?);
                combine(&x, &y, format!("Ext({}, {}) and Ext({}, {})", quo.label, b.label, sub.label, b.label))
            }
            (Obj::Bundle(x), Obj::Bundle(y)) => {
                let t = y.tensor(&x.dual()).ok()?;
                let v = determinate(&homog::ambient_m(), &koszul_m().tensor(&t).ok()?)?;
                Some(ExtAnswer::graded(Tag::Bbw, v, format!("Koszul complex of M tensored with {t}")))
            }
            (Obj::Bundle(x), Obj::Plane { i, lift }) => {
                let t = lift.tensor(&gr_part(x).ok()?.dual()).ok()?;
                let v = determinate(&[gr_v()], &koszul_plane().tensor(&t).ok()?)?;
                Some(ExtAnswer::graded(Tag::Bbw, v, format!("H^*(Sigma_{i}, {t}) via Koszul of Gr(2,3)")))
            }
            (Obj::Plane { i, lift }, Obj::Bundle(y)) => {
                let t = gr_part(y).ok()?.tensor(&lift.dual()).ok()?.twisted(&[-2]);
                let v = determinate(&[gr_v()], &koszul_plane().tensor(&t).ok()?)?.shifted(2);
                Some(ExtAnswer::graded(Tag::Bbw, v, format!("H^(*-2)(Sigma_{i}, {t}) via Koszul of Gr(2,3)")))
            }
            (Obj::Plane { i: i1, lift: l1 }, Obj::Plane { i: i2, lift: l2 }) => {
                if i1 != i2 {
                    return Some(ExtAnswer::graded(Tag::Rule, GradedDims::zero(), "disjoint planes"));
                }
                let t = l2.tensor(&l1.dual()).ok()?;
                let row = |q: i64| determinate(&[gr_v()], &koszul_plane().tensor(&t.twisted(&[-q])).ok()?);
                let (r0, r1, r2) = (row(0)?, row(1)?, row(2)?);
                let v = local_to_global(&[r0, r1.direct_sum(&r1), r2])?;
                Some(ExtAnswer::graded(Tag::Rule, v, format!("local-to-global on Sigma_{i1}, normal bundle O(-1)^2")))
            }
            _ => None,
        }
    }

    /// `chi(M, O(h) ⊗ pi^*T)` against `chi(Gr(2,V), I_S(3g) ⊗ T)` for the
    /// six Kapranov bundles `T`.
    pub fn pi_shadow(&self) -> Result<Vec<PiShadowRow>> {
        let spaces = homog::ambient_m();
        let gr = [gr_v()];
        factor_basis(&gr_v())
            .into_iter()
            .map(|fw| {
                let t = EquivariantBundle::irreducible(vec![fw.clone()]);
                let left = koszul_m().tensor(&EquivariantBundle::irreducible(vec![fw, homog::p_w().line(1)]))?;
                let right = homog::resolution_ideal_s().twisted(&[3]).tensor(&t)?;
                Ok(PiShadowRow { bundle: t.to_string(), on_m: complex_chi(&spaces, &left)?, on_gr: complex_chi(&gr, &right)? })
            })
            .collect()
    }
}

fn combine(first: &ExtAnswer, third: &ExtAnswer, detail: String) -> Option<ExtAnswer> {
    let v = two_of_three(first.value.as_ref()?, third.value.as_ref()?)?;
    let tag = Tag::Rule.max(first.tag).max(third.tag);
    let mut ans = ExtAnswer::graded(tag, v, format!("two-out-of-three from {detail}"));
    ans.axiom = first.axiom.clone().or_else(|| third.axiom.clone());
    Some(ans)
}

/// `Ext(rho^*F, S_k(-g)) = 0`: the Grassmannian factor of `a` must be trivial.
fn rhosk_applies(a: &Resolved, b: &Resolved) -> bool {
    let Obj::Bundle(x) = &a.obj else { return false };
    let Obj::Extension { twist, .. } = &b.obj else { return false };
    let gr_trivial = x.terms.iter().all(|t| t.factors[0] == gr_v().trivial());
    gr_trivial && twist == "-g"
}

impl Variety for VarietyM {
    fn name(&self) -> &str {
        "M"
    }

    fn lattice(&self) -> &KLattice {
        &self.lattice
    }

    fn resolve(&self, label: &str) -> Result<Resolved> {
        let label = label.trim();
        if label.contains('⊠') {
            return self.resolve_bundle(label);
        }
        let (base, twist) = split_twist(label)?;
        if let Some(k) = base.strip_prefix("S_") {
            let k: i64 = k.parse().map_err(|_| Error::UnknownLabel(format!("{label} on M")))?;
            return self.resolve_s(label, k, &twist);
        }
        if let Some(pos) = base.find("_Sigma") {
            return self.resolve_plane(label, &base[..pos], &base[pos + 6..], &twist);
        }
        self.resolve_bundle(label)
    }

    fn ext_graded(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer> {
        if let Some(ans) = self.ext_inner(a, b) {
            return Some(ans);
        }
        if rhosk_applies(a, b) {
            return Some(ExtAnswer::axiom("rhosk", GradedDims::zero(), format!("rho_* {} = 0", b.label)));
        }
        None
    }

    fn entry(&self) -> VarietyEntry {
        VarietyEntry {
            name: "M".into(),
            dimension: 4,
            backend: self.lattice.backend,
            canonical: "-g-h = -4g+e".into(),
            rank: self.lattice.rank(),
            generators: self.lattice.labels.clone(),
            objects: vec![
                "bundles from Gr(2,V) x P(W), twists in g, h, e = 3g-h".into(),
                "S_k(D)".into(),
                "<base>_Sigma<i>(t)".into(),
            ],
            koszul: vec![
                format!("(om) {}", koszul_m()),
                format!("(os) {}", homog::resolution_s()),
                format!("plane {}", koszul_plane()),
            ],
            axioms: vec!["som0".into(), "c2k".into(), "rhosk".into(), "phi1".into(), "dbm".into(), "sigma-normal".into()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmut::{mutate_left, mutate_right, Direction};
    use crate::varieties::{ext_labels, ext_oracle};

    fn m() -> VarietyM {
        VarietyM::new(2).unwrap()
    }

    fn c(d: u64, k: i32) -> GradedDims {
        GradedDims::concentrated(k, d)
    }

    #[test]
    fn koszul_ext_on_m() {
        let m = m();
        let e = |a, b| ext_labels(&m, a, b).unwrap();
        assert!(e("O(-h)", "O(-2g)").value.unwrap().is_zero());
        assert_eq!(e("O(-h)", "O(-g)").value.unwrap(), c(1, 1));
        assert!(e("O(-h)", "V/U(-g)").value.unwrap().is_zero());
        assert!(e("U^v(g)", "O(h-g)").value.unwrap().is_zero());
        assert!(e("O(g)", "O(h-g)").value.unwrap().is_zero());
        assert_eq!(e("O(-h)", "O(-g)").tag, Tag::Bbw);
    }

    #[test]
    fn plane_ext() {
        let m = m();
        let e = |a, b| ext_labels(&m, a, b).unwrap();
        assert_eq!(e("O(h-g)", "O_Sigma1(-1)").value.unwrap(), c(1, 0));
        assert!(e("O(g)", "O_Sigma1(-1)").value.unwrap().is_zero());
        assert!(e("U^v(g)", "O_Sigma2(-1)").value.unwrap().is_zero());
        assert_eq!(e("O(g)", "O_Sigma1(-1)").tag, Tag::Bbw);
        assert!(e("O_Sigma1(-1)", "O_Sigma2(-1)").value.unwrap().is_zero());
        assert_eq!(e("O_Sigma1(-1)", "O_Sigma1(-1)").value.unwrap(), c(1, 0));
        assert_eq!(e("O_Sigma1", "O_Sigma1(-1)").value.unwrap(), c(1, 4));
    }

    #[test]
    fn s_objects() {
        let m = m();
        let s1 = m.resolve("S_1").unwrap();
        assert!(s1.class.same(&m.resolve("V/U").unwrap().class));
        let s0 = m.resolve("S_0(-g)").unwrap();
        let sum = m.resolve("O(-g)").unwrap().class.add(&m.resolve("O(-h)").unwrap().class);
        assert!(s0.class.same(&sum));
        let lat = m.lattice();
        let l = mutate_left(lat, &m.resolve("O(-h)").unwrap().class, &m.resolve("O(-g)").unwrap().class).unwrap();
        assert!(lat.numerically_equal(&l, &s0.class));
        let a = ext_labels(&m, "O(-h)", "S_2(-g)").unwrap();
        assert_eq!((a.tag, a.axiom.as_deref()), (Tag::Axiom, Some("rhosk")));
        assert!(a.value.unwrap().is_zero());
        assert!(m.resolve("O(e)").unwrap().class.same(&m.resolve("O(3g-h)").unwrap().class));
    }

    #[test]
    fn serre_translation_of_first_block() {
        let m = m();
        let lat = m.lattice();
        for (from, to) in [("V/U", "V/U(-g-h)"), ("O(g)", "O(-h)")] {
            let t = lat.serre_twist(&m.resolve(from).unwrap().class, Direction::Left).unwrap();
            assert!(t.same(&m.resolve(to).unwrap().class), "{from}");
        }
        let s = lat.serre_twist(&m.resolve("O_Sigma1").unwrap().class, Direction::Left).unwrap();
        assert!(s.same(&m.resolve("O_Sigma1(-1)").unwrap().class));
    }

    #[test]
    fn oracle_matches_form() {
        let m = m();
        let labels = ["O", "O(-h)", "O(g)", "V/U(-g)", "O(h-g)", "U^v(g)", "O_Sigma1(-1)", "O_Sigma1", "S_0(-g)", "O_Sigma2(1)"];
        for a in labels {
            for b in labels {
                let (ra, rb) = (m.resolve(a).unwrap(), m.resolve(b).unwrap());
                let ans = ext_oracle(&m, &ra, &rb);
                if ans.tag.is_proof() {
                    assert_eq!(ans.chi, Some(m.lattice().chi(&ra.class, &rb.class).unwrap()), "{a} -> {b}: {ans}");
                }
            }
        }
    }

    #[test]
    fn fs_round_trip() {
        let m = m();
        let lat = m.lattice();
        let e = m.resolve("O(h-g)").unwrap().class;
        let s = m.resolve("O_Sigma1(-1)").unwrap().class;
        let back = mutate_right(lat, &e, &mutate_left(lat, &e, &s).unwrap()).unwrap();
        assert!(back.same(&s));
    }

    #[test]
    fn pi_shadow_rows_agree() {
        let rows = m().pi_shadow().unwrap();
        assert_eq!(rows.len(), 6);
        for r in rows {
            assert_eq!(r.on_m, r.on_gr, "{}", r.bundle);
        }
    }
}
