//! The nodal Enriques surface `S`, seen only through Zube's completely
//! orthogonal line bundles `O_S(-F_i)`.

use crate::bbw::GradedDims;
use crate::error::{Error, Result};
use crate::kmut::KLattice;

use super::{split_index, ExtAnswer, Obj, Resolved, Variety, VarietyEntry};

pub struct Enriques {
    n: usize,
    lattice: KLattice,
}

impl Enriques {
    pub fn new(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("O_S(-F{i})")).collect();
        let form = (0..n).map(|i| (0..n).map(|j| Some((i == j) as i64)).collect()).collect();
        let mut lattice = KLattice::formal("S", labels, form);
        let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        // numerically K_S = 0
        lattice.serre = Some(id.clone());
        lattice.serre_inverse = Some(id);
        Enriques { n, lattice }
    }

    fn index(&self, label: &str) -> Option<usize> {
        let inner = label.strip_prefix("O_S(-F")?.strip_suffix(')')?;
        split_index(inner, "").filter(|&i| (1..=self.n).contains(&i))
    }
}

impl Variety for Enriques {
    fn name(&self) -> &str {
        "S"
    }

    fn lattice(&self) -> &KLattice {
        &self.lattice
    }

    fn resolve(&self, label: &str) -> Result<Resolved> {
        let compact: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        let i = self.index(&compact).ok_or_else(|| Error::UnknownLabel(format!("{label} on S")))?;
        let class = self.lattice.generator(&format!("O_S(-F{i})"))?.named(label);
        Ok(Resolved { label: label.into(), obj: Obj::Formal, class })
    }

    fn ext_graded(&self, a: &Resolved, b: &Resolved) -> Option<ExtAnswer> {
        let compact = |l: &str| l.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let (i, j) = (self.index(&compact(&a.label))?, self.index(&compact(&b.label))?);
        let v = if i == j { GradedDims::concentrated(0, 1) } else { GradedDims::zero() };
        let mut ans = ExtAnswer::axiom("zube", v, "completely orthogonal exceptional collection");
        ans.detail = format!("O_S(-F{i}), O_S(-F{j})");
        Some(ans)
    }

    fn entry(&self) -> VarietyEntry {
        VarietyEntry {
            name: "S".into(),
            dimension: 2,
            backend: self.lattice.backend,
            canonical: "0 (numerically)".into(),
            rank: self.lattice.rank(),
            generators: self.lattice.labels.clone(),
            objects: vec!["O_S(-F<i>)".into(), "<A_S> (block)".into()],
            koszul: vec!["S = Fix(tau) on S~ via (os)".into()],
            axioms: vec!["zube".into(), "dbs".into()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmut::{gram, Collection, Entry};
    use crate::varieties::{ext_labels, Tag};

    #[test]
    fn zube_gram_is_identity() {
        let s = Enriques::new(10);
        let coll = Collection::new((1..=10).map(|i| Entry::object(s.resolve(&format!("O_S(-F{i})")).unwrap().class)).collect());
        let g = gram(s.lattice(), &coll);
        assert!(g.exceptional);
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(g.matrix[i][j], Some((i == j) as i64));
            }
        }
        let a = ext_labels(&s, "O_S(-F1)", "O_S(-F2)").unwrap();
        assert_eq!(a.tag, Tag::Axiom);
        assert!(a.value.unwrap().is_zero());
        assert!(s.resolve("O_S(-F11)").is_err());
    }
}
