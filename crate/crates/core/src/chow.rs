//! Exact Chow rings and Hirzebruch-Riemann-Roch.
//!
//! A [`ChowRing`] is a finite basis with codimensions, an integer structure
//! table and a degree functional. Classes carry rational coefficients. An
//! [`HrrVariety`] adds a Todd class, the tangent power sums and (for
//! homogeneous products) the Chern classes of the tautological bundles, which
//! is enough to evaluate `chi` and the Euler pairing exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bbw::{EquivariantBundle, FactorWeight, HomFactor};
use crate::error::{Error, Result};
use crate::symmetric::schur_power_sum;
use crate::weights::Weight;

pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficients over the basis of a [`ChowRing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass(pub Vec<Rat>);

impl ChowClass {
    pub fn coeff(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct ChowRing {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub codim: Vec<usize>,
    table: Vec<Vec<Vec<(usize, i64)>>>,
    degree: Vec<i64>,
    /// Sizes of the factors when built as a product (a single entry otherwise).
    factor_sizes: Vec<usize>,
}

impl ChowRing {
    fn from_parts(
        name: impl Into<String>,
        dim: usize,
        labels: Vec<String>,
        codim: Vec<usize>,
        table: Vec<Vec<Vec<(usize, i64)>>>,
        degree: Vec<i64>,
    ) -> Self {
        let n = labels.len();
        ChowRing { name: name.into(), dim, labels, codim, table, degree, factor_sizes: vec![n] }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(&self) -> ChowClass {
        ChowClass(vec![Rat::zero(); self.rank()])
    }

    /// Basis element 0 is always the fundamental class.
    pub fn one(&self) -> ChowClass {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> ChowClass {
        let mut c = self.zero();
        c.0[i] = Rat::one();
        c
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Basis element by label; panics on unknown labels (ring construction bug).
    pub fn named(&self, label: &str) -> ChowClass {
        let i = self.index_of(label).unwrap_or_else(|| panic!("no basis class {label} in {}", self.name));
        self.basis(i)
    }

    pub fn constant(&self, r: Rat) -> ChowClass {
        self.scale(&self.one(), &r)
    }

    pub fn add(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        ChowClass(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        ChowClass(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &ChowClass, r: &Rat) -> ChowClass {
        ChowClass(a.0.iter().map(|x| x * r).collect())
    }

    pub fn scale_int(&self, a: &ChowClass, n: i64) -> ChowClass {
        self.scale(a, &rat(n))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a ChowClass>) -> ChowClass {
        items.into_iter().fold(self.zero(), |acc, c| self.add(&acc, c))
    }

    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for &(k, c) in &self.table[i][j] {
                    out.0[k] += &xy * rat(c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &ChowClass, k: usize) -> ChowClass {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Codimension-`k` component.
    pub fn part(&self, a: &ChowClass, k: usize) -> ChowClass {
        ChowClass(
            a.0.iter()
                .zip(&self.codim)
                .map(|(x, &c)| if c == k { x.clone() } else { Rat::zero() })
                .collect(),
        )
    }

    /// Coefficient of the fundamental class.
    pub fn rank_part(&self, a: &ChowClass) -> Rat {
        a.0[0].clone()
    }

    /// Multiply the codimension-`k` part by `(-1)^k`: the Chern character of the dual.
    pub fn dual(&self, a: &ChowClass) -> ChowClass {
        ChowClass(
            a.0.iter()
                .zip(&self.codim)
                .map(|(x, &c)| if c % 2 == 1 { -x.clone() } else { x.clone() })
                .collect(),
        )
    }

    pub fn degree(&self, a: &ChowClass) -> Rat {
        a.0.iter()
            .zip(&self.degree)
            .fold(Rat::zero(), |acc, (x, &d)| acc + x * rat(d))
    }

    /// `exp(a)` for `a` without constant term.
    pub fn exp(&self, a: &ChowClass) -> ChowClass {
        assert!(a.0[0].is_zero(), "exp of a class with nonzero constant term");
        let mut out = self.one();
        let mut term = self.one();
        for k in 1..=self.dim {
            term = self.scale(&self.mul(&term, a), &Rat::new(BigInt::one(), BigInt::from(k)));
            out = self.add(&out, &term);
        }
        out
    }

    /// Inverse of a class with constant term 1.
    pub fn inverse_unipotent(&self, a: &ChowClass) -> ChowClass {
        assert!(a.0[0].is_one(), "inverse needs constant term 1");
        let x = self.sub(a, &self.one());
        let mut out = self.one();
        let mut term = self.one();
        for _ in 1..=self.dim {
            term = self.scale_int(&self.mul(&term, &x), -1);
            out = self.add(&out, &term);
        }
        out
    }

    /// Check commutativity and associativity of the structure table.
    pub fn check_table(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.basis(i), self.basis(j));
                if self.mul(&a, &b) != self.mul(&b, &a) {
                    return false;
                }
                for k in 0..n {
                    let c = self.basis(k);
                    if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The Chow ring of `Gr(k, n)` for `k` in {1, 2}, in the Schubert basis.
    pub fn grassmannian(k: usize, n: usize, name: impl Into<String>) -> Self {
        assert!((1..=2).contains(&k) && k < n);
        let m = n - k;
        let parts: Vec<(usize, usize)> = if k == 1 {
            (0..=m).map(|a| (a, 0)).collect()
        } else {
            let mut v = Vec::new();
            for total in 0..=2 * m {
                for b in 0..=m {
                    if b <= total && total - b <= m && total - b >= b {
                        v.push((total - b, b));
                    }
                }
            }
            v
        };
        let labels: Vec<String> = parts
            .iter()
            .map(|&(a, b)| match (a, b) {
                (0, 0) => "1".to_string(),
                (a, 0) => format!("s{a}"),
                (a, b) => format!("s{a}{b}"),
            })
            .collect();
        let index: BTreeMap<(usize, usize), usize> = parts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let codim: Vec<usize> = parts.iter().map(|&(a, b)| a + b).collect();

        // Pieri: s_c * s_(a,b) = sum of s_(a',b') with a' >= a >= b' >= b, a'+b' = a+b+c, a' <= m
        let pieri = |c: usize, (a, b): (usize, usize)| -> BTreeMap<(usize, usize), i64> {
            let mut out = BTreeMap::new();
            if k == 1 {
                if a + c <= m {
                    out.insert((a + c, 0), 1);
                }
                return out;
            }
            for b2 in b..=a {
                let total = a + b + c;
                if total < b2 {
                    continue;
                }
                let a2 = total - b2;
                if a2 >= a && a2 <= m && a2 >= b2 {
                    out.insert((a2, b2), 1);
                }
            }
            out
        };
        let mul_special = |c: usize, v: &BTreeMap<(usize, usize), i64>| {
            let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (&p, &x) in v {
                for (q, y) in pieri(c, p) {
                    *out.entry(q).or_insert(0) += x * y;
                }
            }
            out
        };
        let mut table = vec![vec![Vec::new(); parts.len()]; parts.len()];
        for (i, &(a, b)) in parts.iter().enumerate() {
            for (j, &q) in parts.iter().enumerate() {
                let start = BTreeMap::from([(q, 1i64)]);
                // Giambelli: s_(a,b) = s_a s_b - s_(a+1) s_(b-1)
                let mut acc = mul_special(a, &mul_special(b, &start));
                if b >= 1 && a < m {
                    for (p, x) in mul_special(a + 1, &mul_special(b - 1, &start)) {
                        *acc.entry(p).or_insert(0) -= x;
                    }
                }
                table[i][j] = acc
                    .into_iter()
                    .filter(|(_, x)| *x != 0)
                    .map(|(p, x)| (index[&p], x))
                    .collect();
            }
        }
        let dim = k * m;
        let degree = codim.iter().map(|&c| if c == dim { 1 } else { 0 }).collect();
        Self::from_parts(name, dim, labels, codim, table, degree)
    }

    /// The blowup of P^3 at `n` points: basis `1, h, e_i, h^2, e_i^2, pt` with
    /// `h^3 = e_i^3 = pt` and all mixed products zero.
    pub fn blowup_p3(n: usize) -> Self {
        let mut labels = vec!["1".to_string(), "h".to_string()];
        let mut codim = vec![0, 1];
        for i in 1..=n {
            labels.push(format!("e{i}"));
            codim.push(1);
        }
        labels.push("h2".to_string());
        codim.push(2);
        for i in 1..=n {
            labels.push(format!("e{i}^2"));
            codim.push(2);
        }
        labels.push("pt".to_string());
        codim.push(3);
        let size = labels.len();
        let h = 1;
        let e = |i: usize| 1 + i;
        let h2 = n + 2;
        let e2 = |i: usize| n + 2 + i;
        let pt = size - 1;
        let mut table = vec![vec![Vec::new(); size]; size];
        for i in 0..size {
            table[0][i] = vec![(i, 1)];
            table[i][0] = vec![(i, 1)];
        }
        let mut set = |a: usize, b: usize, c: usize| {
            table[a][b] = vec![(c, 1)];
            table[b][a] = vec![(c, 1)];
        };
        set(h, h, h2);
        set(h, h2, pt);
        for i in 1..=n {
            set(e(i), e(i), e2(i));
            set(e(i), e2(i), pt);
        }
        let degree = (0..size).map(|i| if i == pt { 1 } else { 0 }).collect();
        Self::from_parts(format!("Bl_{n}P3"), 3, labels, codim, table, degree)
    }

    /// Tensor product of rings, basis in mixed radix with the last factor fastest.
    pub fn product(parts: &[ChowRing], name: impl Into<String>) -> Self {
        let sizes: Vec<usize> = parts.iter().map(ChowRing::rank).collect();
        let total: usize = sizes.iter().product();
        let tuples: Vec<Vec<usize>> = (0..total).map(|x| decode(x, &sizes)).collect();
        let labels = tuples
            .iter()
            .map(|t| {
                let names: Vec<&str> = t.iter().zip(parts).map(|(&i, r)| r.labels[i].as_str()).collect();
                names.join("x")
            })
            .collect();
        let codim = tuples.iter().map(|t| t.iter().zip(parts).map(|(&i, r)| r.codim[i]).sum()).collect();
        let degree = tuples.iter().map(|t| t.iter().zip(parts).map(|(&i, r)| r.degree[i]).product()).collect();
        let mut table = vec![vec![Vec::new(); total]; total];
        for (x, tx) in tuples.iter().enumerate() {
            for (y, ty) in tuples.iter().enumerate() {
                let mut acc: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
                for (f, r) in parts.iter().enumerate() {
                    let mut next = Vec::new();
                    for (prefix, c) in &acc {
                        for &(k, d) in &r.table[tx[f]][ty[f]] {
                            let mut p = prefix.clone();
                            p.push(k);
                            next.push((p, c * d));
                        }
                    }
                    acc = next;
                }
                table[x][y] = acc.into_iter().map(|(t, c)| (encode(&t, &sizes), c)).collect();
            }
        }
        let dim = parts.iter().map(|r| r.dim).sum();
        ChowRing { name: name.into(), dim, labels, codim, table, degree, factor_sizes: sizes }
    }

    /// Pull back a class from factor `f` of a product ring.
    pub fn embed(&self, f: usize, c: &ChowClass) -> ChowClass {
        let mut out = self.zero();
        for (j, x) in c.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut t = vec![0; self.factor_sizes.len()];
            t[f] = j;
            out.0[encode(&t, &self.factor_sizes)] = x.clone();
        }
        out
    }

    /// The same ring with every degree multiplied by `k` (pullback to a degree-`k` cover).
    pub fn with_degree_scaled(&self, k: i64, name: impl Into<String>) -> Self {
        let mut r = self.clone();
        r.name = name.into();
        r.degree = r.degree.iter().map(|d| d * k).collect();
        r
    }

    pub fn display(&self, c: &ChowClass) -> String {
        let mut parts = Vec::new();
        for (x, l) in c.0.iter().zip(&self.labels) {
            if !x.is_zero() {
                parts.push(format!("{x}*{l}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn decode(mut x: usize, sizes: &[usize]) -> Vec<usize> {
    let mut t = vec![0; sizes.len()];
    for f in (0..sizes.len()).rev() {
        t[f] = x % sizes[f];
        x /= sizes[f];
    }
    t
}

fn encode(t: &[usize], sizes: &[usize]) -> usize {
    t.iter().zip(sizes).fold(0, |acc, (&i, &s)| acc * s + i)
}

/// Coefficients `a_k` of `log(x / (1 - e^-x)) = sum a_k x^k`, `k = 1..=n`.
pub fn todd_log_coefficients(n: usize) -> Vec<Rat> {
    // f = (1 - e^-x)/x = sum (-1)^k x^k/(k+1)!, and log(td) = -log f
    let f: Vec<Rat> = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rat::new(BigInt::from(sign), factorial(k + 1))
        })
        .collect();
    // log(1 + u) with u = f - 1, as a truncated power series
    let u: Vec<Rat> = f.iter().enumerate().map(|(i, c)| if i == 0 { Rat::zero() } else { c.clone() }).collect();
    let mut log = vec![Rat::zero(); n + 1];
    let mut power = {
        let mut p = vec![Rat::zero(); n + 1];
        p[0] = Rat::one();
        p
    };
    for j in 1..=n {
        power = series_mul(&power, &u, n);
        let sign = if j % 2 == 1 { 1 } else { -1 };
        for i in 0..=n {
            log[i] += &power[i] * Rat::new(BigInt::from(sign), BigInt::from(j));
        }
    }
    log.into_iter().skip(1).map(|c| -c).collect()
}

fn series_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Per-factor data of a homogeneous product: Chern classes `c_1..` of `U^v` and `Q^v`.
#[derive(Clone, Debug)]
struct Tautological {
    space: HomFactor,
    sub_chern: Vec<ChowClass>,
    quo_chern: Vec<ChowClass>,
}

/// A variety with enough data for Hirzebruch-Riemann-Roch.
#[derive(Clone, Debug)]
pub struct HrrVariety {
    pub name: String,
    pub ring: ChowRing,
    pub todd: ChowClass,
    /// `p_k(T)`, k = 1..=dim, where `p_k` is the k-th power sum of the Chern roots.
    pub tangent_power_sums: Vec<ChowClass>,
    /// First Chern class of the canonical bundle.
    pub canonical: ChowClass,
    factors: Vec<Tautological>,
}

impl HrrVariety {
    fn assemble(name: String, ring: ChowRing, tangent_power_sums: Vec<ChowClass>, factors: Vec<Tautological>) -> Self {
        let coeffs = todd_log_coefficients(ring.dim);
        let mut log = ring.zero();
        for (a, p) in coeffs.iter().zip(&tangent_power_sums) {
            log = ring.add(&log, &ring.scale(p, a));
        }
        let todd = ring.exp(&log);
        let canonical = tangent_power_sums
            .first()
            .map(|p| ring.scale_int(p, -1))
            .unwrap_or_else(|| ring.zero());
        HrrVariety { name, ring, todd, tangent_power_sums, canonical, factors }
    }

    /// A product of catalog Grassmannians.
    pub fn homogeneous(spaces: &[HomFactor], name: impl Into<String>) -> Self {
        let parts: Vec<ChowRing> = spaces.iter().map(|s| ChowRing::grassmannian(s.k, s.n, s.name.clone())).collect();
        let ring = ChowRing::product(&parts, name);
        let mut factors = Vec::new();
        for (f, (s, r)) in spaces.iter().zip(&parts).enumerate() {
            // c(U^v) = 1 + s1 (+ s11), c(Q^v) = c(U^v)^(-1)
            let mut c_sub = r.add(&r.one(), &r.named("s1"));
            if s.k == 2 {
                c_sub = r.add(&c_sub, &r.named("s11"));
            }
            let c_quo = r.inverse_unipotent(&c_sub);
            let sub_chern = (1..=s.k).map(|i| ring.embed(f, &r.part(&c_sub, i))).collect();
            let quo_chern = (1..=s.quotient_rank()).map(|i| ring.embed(f, &r.part(&c_quo, i))).collect();
            factors.push(Tautological { space: s.clone(), sub_chern, quo_chern });
        }
        let mut v = HrrVariety::assemble(ring.name.clone(), ring.clone(), Vec::new(), factors);
        // T = U^v (x) Q on each factor
        let mut ch_t = ring.zero();
        for (f, s) in spaces.iter().enumerate() {
            let uv = v.ch_schur(f, &Weight::new(one_hot(s.k)), true).expect("tautological");
            let qv = v.ch_schur(f, &Weight::new(one_hot(s.quotient_rank())), false).expect("tautological");
            ch_t = ring.add(&ch_t, &ring.mul(&uv, &ring.dual(&qv)));
        }
        let sums = power_sums_from_ch(&ring, &ch_t);
        let factors = std::mem::take(&mut v.factors);
        HrrVariety::assemble(ring.name.clone(), ring, sums, factors)
    }

    /// The blowup of P^3 at `n` points, Chern classes
    /// `c1 = 4h - 2 sum e_i`, `c2 = 6h^2`, `c3 = (4 + 2n) pt`.
    pub fn blowup_p3(n: usize) -> Self {
        let ring = ChowRing::blowup_p3(n);
        let h = ring.named("h");
        let sum_e = ring.sum((1..=n).map(|i| ring.named(&format!("e{i}"))).collect::<Vec<_>>().iter());
        let c1 = ring.sub(&ring.scale_int(&h, 4), &ring.scale_int(&sum_e, 2));
        let c2 = ring.scale_int(&ring.named("h2"), 6);
        let c3 = ring.scale_int(&ring.named("pt"), 4 + 2 * n as i64);
        let sums = power_sums_from_chern(&ring, &[c1, c2, c3]);
        HrrVariety::assemble(ring.name.clone(), ring, sums, Vec::new())
    }

    /// Double cover branched over a divisor of class `2H`, with the ring of
    /// pulled-back classes. `p_k(T_X) = p_k(T_B) + H^k - (2H)^k`.
    pub fn double_cover(&self, half_branch: &ChowClass, name: impl Into<String>) -> Self {
        let name = name.into();
        let base = &self.ring;
        let ring = base.with_degree_scaled(2, name.clone());
        let two_h = base.scale_int(half_branch, 2);
        let sums = self
            .tangent_power_sums
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let k = i + 1;
                base.sub(&base.add(p, &base.pow(half_branch, k)), &base.pow(&two_h, k))
            })
            .collect();
        HrrVariety::assemble(name, ring, sums, self.factors.clone())
    }

    pub fn dim(&self) -> usize {
        self.ring.dim
    }

    pub fn spaces(&self) -> Vec<HomFactor> {
        self.factors.iter().map(|t| t.space.clone()).collect()
    }

    /// Chern character of `Sigma^w` of `U^v` (when `sub`) or `Q^v` on factor `f`.
    fn ch_schur(&self, f: usize, w: &Weight, sub: bool) -> Result<ChowClass> {
        let t = self
            .factors
            .get(f)
            .ok_or_else(|| Error::Unsupported(format!("{} has no homogeneous factor {f}", self.name)))?;
        let chern = if sub { &t.sub_chern } else { &t.quo_chern };
        if w.len() != chern.len() {
            return Err(Error::WeightLength { expected: chern.len(), found: w.len() });
        }
        let ring = &self.ring;
        let fdim = t.space.dim();
        let mut out = ring.zero();
        for d in 0..=fdim {
            let poly = schur_power_sum(w, d as u32)?;
            let mut value = ring.zero();
            for (exps, c) in &poly.terms {
                let mut m = ring.constant(Rat::from_integer(c.clone()));
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        m = ring.mul(&m, &ring.pow(&chern[i], e as usize));
                    }
                }
                value = ring.add(&value, &m);
            }
            out = ring.add(&out, &ring.scale(&value, &Rat::new(BigInt::one(), factorial(d))));
        }
        Ok(out)
    }

    pub fn ch_factor_weight(&self, f: usize, fw: &FactorWeight) -> Result<ChowClass> {
        fw.check(&self.factors[f].space)?;
        let a = self.ch_schur(f, &fw.sub, true)?;
        let b = self.ch_schur(f, &fw.quo, false)?;
        Ok(self.ring.mul(&a, &b))
    }

    /// Chern character of a homogeneous bundle; shifts contribute signs.
    pub fn chern_character(&self, bundle: &EquivariantBundle) -> Result<ChowClass> {
        bundle.check(&self.spaces())?;
        let ring = &self.ring;
        let mut out = ring.zero();
        for t in &bundle.terms {
            let mut c = ring.one();
            for (f, fw) in t.factors.iter().enumerate() {
                c = ring.mul(&c, &self.ch_factor_weight(f, fw)?);
            }
            let sign = if t.shift.rem_euclid(2) == 0 { 1 } else { -1 };
            out = ring.add(&out, &ring.scale_int(&c, sign * t.mult as i64));
        }
        Ok(out)
    }

    /// `ch(O(D)) = exp(D)`.
    pub fn ch_line(&self, divisor: &ChowClass) -> ChowClass {
        self.ring.exp(divisor)
    }

    pub fn ch_canonical(&self) -> ChowClass {
        self.ch_line(&self.canonical)
    }

    /// `deg(ch . td)`, asserted integral.
    pub fn chi(&self, ch: &ChowClass) -> Result<i64> {
        let d = self.ring.degree(&self.ring.mul(ch, &self.todd));
        if !d.is_integer() {
            return Err(Error::NonIntegral(format!("{d} on {}", self.name)));
        }
        d.to_integer()
            .to_i64()
            .ok_or_else(|| Error::NonIntegral(format!("{d} overflows")))
    }

    /// `chi(A, B) = deg(ch(A)^v ch(B) td)`.
    pub fn euler_pairing(&self, a: &ChowClass, b: &ChowClass) -> Result<i64> {
        self.chi(&self.ring.mul(&self.ring.dual(a), b))
    }

    pub fn chern_classes(&self) -> Vec<ChowClass> {
        chern_from_power_sums(&self.ring, &self.tangent_power_sums)
    }
}

fn one_hot(n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[0] = 1;
    v
}

/// `p_k = k! ch_k`.
pub fn power_sums_from_ch(ring: &ChowRing, ch: &ChowClass) -> Vec<ChowClass> {
    (1..=ring.dim)
        .map(|k| ring.scale(&ring.part(ch, k), &Rat::from_integer(factorial(k))))
        .collect()
}

/// Newton's identities: `p_k = sum_{i<k} (-1)^(i-1) c_i p_(k-i) + (-1)^(k-1) k c_k`.
pub fn power_sums_from_chern(ring: &ChowRing, chern: &[ChowClass]) -> Vec<ChowClass> {
    let c = |i: usize| chern.get(i - 1).cloned().unwrap_or_else(|| ring.zero());
    let mut p: Vec<ChowClass> = Vec::new();
    for k in 1..=ring.dim {
        let mut acc = ring.scale_int(&c(k), if k % 2 == 1 { k as i64 } else { -(k as i64) });
        for i in 1..k {
            let term = ring.mul(&c(i), &p[k - i - 1]);
            acc = ring.add(&acc, &ring.scale_int(&term, if i % 2 == 1 { 1 } else { -1 }));
        }
        p.push(acc);
    }
    p
}

/// Inverse Newton: `k c_k = sum_{i=1}^k (-1)^(i-1) c_(k-i) p_i`.
pub fn chern_from_power_sums(ring: &ChowRing, p: &[ChowClass]) -> Vec<ChowClass> {
    let mut c = vec![ring.one()];
    for k in 1..=p.len() {
        let mut acc = ring.zero();
        for i in 1..=k {
            let term = ring.mul(&c[k - i], &p[i - 1]);
            acc = ring.add(&acc, &ring.scale_int(&term, if i % 2 == 1 { 1 } else { -1 }));
        }
        c.push(ring.scale(&acc, &Rat::new(BigInt::one(), BigInt::from(k))));
    }
    c.remove(0);
    c
}

impl fmt::Display for HrrVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

/// True when every coefficient of the class is an integer.
pub fn is_integral(c: &ChowClass) -> bool {
    c.0.iter().all(|x| x.is_integer())
}

/// Largest absolute numerator, for diagnostics.
pub fn height(c: &ChowClass) -> BigInt {
    c.0.iter().map(|x| x.numer().abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr24_table() {
        let r = ChowRing::grassmannian(2, 4, "G");
        assert!(r.check_table());
        let s1 = r.named("s1");
        let sq = r.mul(&s1, &s1);
        assert_eq!(sq, r.add(&r.named("s2"), &r.named("s11")));
        assert_eq!(r.degree(&r.pow(&s1, 4)), rat(2));
    }

    #[test]
    fn gr23_is_projective_plane() {
        let r = ChowRing::grassmannian(2, 3, "G");
        assert!(r.check_table());
        assert_eq!(r.degree(&r.pow(&r.named("s1"), 2)), rat(1));
    }

    #[test]
    fn blowup_ring_relations() {
        let r = ChowRing::blowup_p3(10);
        assert!(r.check_table());
        let h = r.named("h");
        let sum_e = r.sum((1..=10).map(|i| r.named(&format!("e{i}"))).collect::<Vec<_>>().iter());
        let big_h = r.sub(&r.scale_int(&h, 2), &sum_e);
        assert_eq!(r.degree(&r.pow(&big_h, 3)), rat(-2));
    }

    #[test]
    fn todd_log_series() {
        let a = todd_log_coefficients(4);
        assert_eq!(a[0], Rat::new(1.into(), 2.into()));
        assert_eq!(a[1], Rat::new((-1).into(), 24.into()));
        assert!(a[2].is_zero());
    }

    #[test]
    fn chi_on_projective_space() {
        let p3 = HrrVariety::homogeneous(&[HomFactor::projective3("P3")], "P3");
        for k in -4..=3 {
            let ch = p3.chern_character(&EquivariantBundle::line(&p3.spaces(), &[k])).unwrap();
            let expected = (k + 1) * (k + 2) * (k + 3) / 6;
            assert_eq!(p3.chi(&ch).unwrap(), expected);
        }
    }

    #[test]
    fn chi_of_plucker_on_gr24() {
        let g = HrrVariety::homogeneous(&[HomFactor::gr24("G")], "G");
        let ch = g.chern_character(&EquivariantBundle::line(&g.spaces(), &[1])).unwrap();
        assert_eq!(g.chi(&ch).unwrap(), 6);
        assert_eq!(g.canonical, g.ring.scale_int(&g.ring.named("s1"), -4));
    }

    #[test]
    fn symmetric_square_of_tautological() {
        let g = HrrVariety::homogeneous(&[HomFactor::gr24("G")], "G");
        let s2u = EquivariantBundle::irreducible(vec![FactorWeight::new([0, -2], [0, 0])]);
        let ch = g.chern_character(&s2u).unwrap();
        assert_eq!(g.ring.rank_part(&ch), rat(3));
        assert_eq!(g.ring.part(&ch, 1), g.ring.scale_int(&g.ring.named("s1"), -3));
    }

    #[test]
    fn blowup_structure_sheaf() {
        let y = HrrVariety::blowup_p3(10);
        assert_eq!(y.chi(&y.ring.one()).unwrap(), 1);
        let e1 = y.ring.named("e1");
        let o_minus_e = y.ch_line(&y.ring.scale_int(&e1, -1));
        assert_eq!(y.euler_pairing(&y.ring.one(), &o_minus_e).unwrap(), 0);
    }

    #[test]
    fn newton_round_trip() {
        let y = HrrVariety::blowup_p3(3);
        let c = y.chern_classes();
        assert_eq!(c[1], y.ring.scale_int(&y.ring.named("h2"), 6));
        assert_eq!(y.ring.degree(&c[2]), rat(10));
    }

    #[test]
    fn quartic_double_solid() {
        let p3 = HrrVariety::homogeneous(&[HomFactor::projective3("P3")], "P3");
        let h = p3.ring.named("s1");
        let x = p3.double_cover(&p3.ring.scale_int(&h, 2), "X");
        assert_eq!(x.chi(&x.ring.one()).unwrap(), 1);
        let c = x.chern_classes();
        assert_eq!(c[0], x.ring.scale_int(&h, 2));
        assert_eq!(c[1], x.ring.scale_int(&x.ring.named("s2"), 6));
    }
}
