//! The variety catalog: lattices, named objects, Ext oracles and imported
//! results for every space the computations touch.

pub mod axioms;
pub mod basis;
pub mod cover;
pub mod homog;
pub mod homvar;
pub mod m;
pub mod oracle;
pub mod surface;
pub mod y;

use serde::Serialize;

use crate::bbw::EquivariantBundle;
use crate::error::{Error, Result};
use crate::kmut::{KClass, KLattice};

pub use axioms::{Axiom, AxiomKind};
pub use oracle::{ExtAnswer, Tag};

/// The geometric realization behind a label, used by the Ext oracles.
#[derive(Clone, Debug, PartialEq)]
pub enum Obj {
    /// A homogeneous bundle on the ambient product (restricted to the
    /// variety when it is a subvariety).
    Bundle(EquivariantBundle),
    /// `i_*` of the restriction to the plane `Sigma_i` of a bundle on `Gr(2,V)`.
    Plane { i: usize, lift: EquivariantBundle },
    /// The nontrivial extension `0 -> sub -> S -> quo -> 0`, for `S = S_{2k}(twist)`.
    Extension { sub: Box<Resolved>, quo: Box<Resolved>, index: i64, twist: String },
    /// `O(kh + sum m_i e_i)` on the blowup of P^3.
    BlowupLine { k: i64, m: Vec<i64> },
    /// `O_{E_i}(j)` on the blowup of P^3.
    ExceptionalPlane { i: usize, j: i64 },
    /// Pullback of `O(kh)` to a double cover of P^3 (or its blowup).
    CoverLine { k: i64 },
    /// `O_{Q_i}(a, b)` on a quadric exceptional divisor.
    Quadric { i: usize, a: i64, b: i64 },
    /// A class with no realization.
    Formal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub label: String,
    pub obj: Obj,
    pub class: KClass,
}

/// Listing of one catalog variety.
#[derive(Clone, Debug, Serialize)]
pub struct VarietyEntry {
    pub name: String,
    pub dimension: usize,
    pub backend: crate::kmut::Backend,
    pub canonical: String,
    pub rank: usize,
    pub generators: Vec<String>,
    pub objects: Vec<String>,
    pub koszul: Vec<String>,
    pub axioms: Vec<String>,
}

pub trait Variety: Send + Sync {
    fn name(&self) -> &str;
    fn lattice(&self) -> &KLattice;
    fn resolve(&self, label: &str) -> Result<Resolved>;
    /// Strategies that produce graded answers (BBW, rules, axioms).
    fn ext_graded(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer>;
    fn entry(&self) -> VarietyEntry;
    /// Chow-ring model, when the variety has one.
    fn hrr(&self) -> Option<&crate::chow::HrrVariety> {
        None
    }
    /// Chern character of a resolved object in [`Variety::hrr`].
    fn chern(&self, _obj: &Resolved) -> Option<crate::chow::ChowClass> {
        None
    }
}

/// Ext between two resolved objects: graded strategies first, then the
/// Euler pairing, then UNKNOWN.
pub fn ext_oracle(var: &dyn Variety, a: &Resolved, b: &Resolved) -> ExtAnswer {
    if let Some(ans) = var.ext_graded(a, b) {
        return ans;
    }
    match var.lattice().chi(&a.class, &b.class) {
        Ok(chi) => ExtAnswer::chi_only(chi, "Euler pairing of classes"),
        Err(e) => ExtAnswer::unknown(e.to_string()),
    }
}

pub fn ext_labels(var: &dyn Variety, a: &str, b: &str) -> Result<ExtAnswer> {
    Ok(ext_oracle(var, &var.resolve(a)?, &var.resolve(b)?))
}

/// Immutable collection of all catalog varieties for a given node count.
pub struct Catalog {
    pub nodes: usize,
    pub varieties: Vec<Box<dyn Variety>>,
}

pub const DEFAULT_NODES: usize = 10;

impl Catalog {
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::Unsupported("node count must be positive".into()));
        }
        let varieties = VARIETY_NAMES.iter().map(|n| build_variety(n, nodes)).collect::<Result<_>>()?;
        Ok(Catalog { nodes, varieties })
    }

    pub fn get(&self, name: &str) -> Result<&dyn Variety> {
        let key = canonical_name(name);
        self.varieties
            .iter()
            .find(|v| canonical_name(v.name()) == key)
            .map(|v| v.as_ref())
            .ok_or_else(|| Error::UnknownVariety(name.to_string()))
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        axioms::registry()
    }

    pub fn listing(&self) -> CatalogListing {
        CatalogListing {
            nodes: self.nodes,
            varieties: self.varieties.iter().map(|v| v.entry()).collect(),
            axioms: self.axioms(),
        }
    }
}

/// Catalog varieties in listing order.
pub const VARIETY_NAMES: [&str; 9] = ["P3", "Gr24", "Gr23", "Gr24xP3", "X", "Y", "X'", "M", "S"];

/// Build one catalog variety without constructing the others.
pub fn build_variety(name: &str, nodes: usize) -> Result<Box<dyn Variety>> {
    if nodes == 0 {
        return Err(Error::Unsupported("node count must be positive".into()));
    }
    Ok(match canonical_name(name).as_str() {
        "p3" => Box::new(homvar::HomVariety::p3()?),
        "gr24" => Box::new(homvar::HomVariety::gr24()?),
        "gr23" => Box::new(homvar::HomVariety::gr23()?),
        "gr24xp3" => Box::new(homvar::HomVariety::ambient_m()?),
        "x" => Box::new(cover::DoubleSolid::new()?),
        "y" => Box::new(y::BlowupY::new(nodes)?),
        "x'" => Box::new(cover::XPrime::new(nodes)?),
        "m" => Box::new(m::VarietyM::new(nodes)?),
        "s" => Box::new(surface::Enriques::new(nodes)),
        _ => return Err(Error::UnknownVariety(name.to_string())),
    })
}

fn canonical_name(s: &str) -> String {
    s.chars().filter(|c| c.is_alphanumeric() || *c == '\'').collect::<String>().to_lowercase()
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogListing {
    pub nodes: usize,
    pub varieties: Vec<VarietyEntry>,
    pub axioms: Vec<Axiom>,
}

/// Replace the family placeholder `#` with a concrete index.
pub fn instantiate(label: &str, i: usize) -> String {
    label.replace('#', &i.to_string())
}

/// Split a trailing index off a name such as `O_E3` -> (`O_E`, 3).
pub(crate) fn split_index(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}
