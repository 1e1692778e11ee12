//! Imported results, each with the statement it stands for.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomKind {
    GradedExt,
    Pairing,
    BlockMembership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub name: &'static str,
    pub kind: AxiomKind,
    pub variety: &'static str,
    /// What the engine is allowed to assume.
    pub payload: &'static str,
    /// Where the result comes from, with a verbatim quote.
    pub source: &'static str,
    pub quote: &'static str,
}

pub fn registry() -> Vec<Axiom> {
    use AxiomKind::*;
    vec![
        Axiom {
            name: "orlov-y",
            kind: BlockMembership,
            variety: "Y",
            payload: "the standard blowup collection of Y is full and exceptional",
            source: "[Or]",
            quote: "We start with a standard exceptional collection of a blowup",
        },
        Axiom {
            name: "som0",
            kind: BlockMembership,
            variety: "M",
            payload: "D(M) = <pi^* D(Gr(2,V)), i_*p^* D(S)>, a full decomposition",
            source: "[Or], Corollary dbmpi",
            quote: "\\D^b(M) = \\langle \\pi^*(\\D^b(\\Gr(2,V))), i_*p^*(\\D^b(S)) \\rangle",
        },
        Axiom {
            name: "mutfun",
            kind: BlockMembership,
            variety: "*",
            payload: "mutation of an admissible block through an exceptional object is an equivalence onto its image",
            source: "[B], Lemma mutfun",
            quote: "are mutually inverse equivalences",
        },
        Axiom {
            name: "c2k",
            kind: GradedExt,
            variety: "M",
            payload: "S_{2k} is the nontrivial extension of O(g+(k-1)h) by O(kh); S_{2k+1} = (V/U)(kh)",
            source: "[K10], Theorem phi",
            quote: "0 \\to \\CO(kh) \\to \\CS_{2k} \\to \\CO(g + (k-1)h) \\to 0,\\qquad \\CS_{2k+1} = (V/\\CU)(kh)",
        },
        Axiom {
            name: "rhosk",
            kind: GradedExt,
            variety: "M",
            payload: "Ext(rho^*F, S_k(-g)) = 0 for every F on P(W)",
            source: "[K10], Theorem phi",
            quote: "\\rho_*(\\CS_k(-g)) = 0",
        },
        Axiom {
            name: "phi1",
            kind: BlockMembership,
            variety: "M",
            payload: "Phi_1(D(P(W),B_0)) is generated by the exceptional collection S_{k-3}, ..., S_k",
            source: "[K08a], Corollary phi1",
            quote: "generated by an exceptional collection",
        },
        Axiom {
            name: "dbm",
            kind: BlockMembership,
            variety: "M",
            payload: "D(M) = <D(X+), D(P(W),B_0), {O_Sigma_i}>",
            source: "[K10], Theorem dbm",
            quote: "\\D^b(M) = \\langle \\D^b(X^+), \\D^b(\\PP(W),\\CB_0), \\{ \\CO_{\\Sigma_i^+} \\}_{i=1}^{10} \\rangle",
        },
        Axiom {
            name: "sigma-normal",
            kind: Pairing,
            variety: "M",
            payload: "the normal bundle of each plane Sigma_i is O(-1) + O(-1)",
            source: "[K10]",
            quote: "the normal bundle to any of the planes $\\Sigma_i^+$ is $\\CO(-1) \\oplus \\CO(-1)$",
        },
        Axiom {
            name: "zube",
            kind: Pairing,
            variety: "S",
            payload: "the classes O_S(-F_i^+) are a completely orthogonal exceptional collection",
            source: "[Zu], Theorem zube",
            quote: "form a completely orthogonal exceptional collection",
        },
        Axiom {
            name: "dbs",
            kind: BlockMembership,
            variety: "S",
            payload: "D(S) = <{O_S(-F_i^+)}, A_S>",
            source: "[Zu], definition of A_S",
            quote: "\\D^b(S) = \\langle \\{ \\CO_S(-F_i^+) \\}_{i=1}^{10}, \\CA_S \\rangle",
        },
        Axiom {
            name: "dbxplus",
            kind: BlockMembership,
            variety: "X'",
            payload: "D(X+) = <A_X+, O(-h), O>",
            source: "Proposition dbxplus",
            quote: "\\D^b(X^+) = \\langle \\CA_{X^+}, \\CO_{X^+}(-h), \\CO_{X^+} \\rangle",
        },
        Axiom {
            name: "blowup-xprime",
            kind: BlockMembership,
            variety: "X'",
            payload: "D(X') = <D(X+), {O_Q_i(-1,0), O_Q_i}>",
            source: "[Or]",
            quote: "The standard semiorthogonal decomposition of the blowup in this case gives",
        },
    ]
}

pub fn find(name: &str) -> Option<Axiom> {
    registry().into_iter().find(|a| a.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_and_quoted() {
        let r = registry();
        for (i, a) in r.iter().enumerate() {
            assert!(!a.quote.is_empty() && !a.source.is_empty());
            assert!(r[i + 1..].iter().all(|b| b.name != a.name));
        }
        assert!(find("rhosk").is_some());
        assert!(find("nope").is_none());
    }
}
