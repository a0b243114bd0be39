//! An inclusion whose image needs two rounds of directed joins to fill the
//! codomain.
//!
//! Domain: the antichain `ℕ × ℕ` plus a bottom. Codomain: pairs
//! `(m, n)` with `m ∈ ℕ ∪ {∞}`, plus a bottom and a greatest element. Pairs
//! are ordered by the transitive closure of "`n = n'` and `m ≤ m'`, or
//! `n ≤ n'` and `m = m' = ∞`". That relation alone is not transitive:
//! `(0,0) ≤ (∞,0) ≤ (∞,1)` would leave `(0,0)` and `(∞,1)` unrelated. Rows `(0,n) < (1,n) < ...` join to
//! `(∞,n)`; the column `(∞,0) < (∞,1) < ...` joins to the top.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::symbolic::{
    ChainFamily, Ext, FamilyId, Inclusion, Params, Refutation, RefutationCase, Stage, StageCertificate, SymbolicCpo,
    Term, TermClass, Witness,
};

pub const ROW: FamilyId = "row";
pub const COLUMN: FamilyId = "column";

fn diagonals() -> impl Iterator<Item = (u64, u64)> {
    (0u64..).flat_map(|s| (0..=s).map(move |m| (m, s - m)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TwoStepDomain;

impl SymbolicCpo for TwoStepDomain {
    fn name(&self) -> &str {
        "NxN+0"
    }

    fn well_formed(&self, t: &Term) -> bool {
        matches!(t, Term::Bottom | Term::Pair(Ext::Finite(_), _))
    }

    fn bottom(&self) -> Term {
        Term::Bottom
    }

    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        *x == Term::Bottom || x == y
    }

    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        core::iter::once(Term::Bottom)
            .chain(diagonals().map(|(m, n)| Term::Pair(Ext::Finite(m), n)))
            .take(fuel)
            .collect()
    }

    fn families(&self) -> Vec<&dyn ChainFamily> {
        Vec::new()
    }

    fn adequacy(&self) -> &str {
        "antichain with bottom: every directed subset has a greatest element"
    }
}

struct Rows;

impl ChainFamily for Rows {
    fn id(&self) -> FamilyId {
        ROW
    }

    fn parameters(&self, fuel: usize) -> Vec<Params> {
        (0..fuel as u64).map(|n| alloc::vec![n]).collect()
    }

    fn element(&self, p: &Params, i: u64) -> Term {
        Term::Pair(Ext::Finite(i), p[0])
    }

    fn join(&self, p: &Params) -> Term {
        Term::Pair(Ext::Infinity, p[0])
    }

    fn element_classes(&self, _: &Params) -> Vec<TermClass> {
        alloc::vec![TermClass::FinitePair]
    }
}

struct Column;

impl ChainFamily for Column {
    fn id(&self) -> FamilyId {
        COLUMN
    }

    fn parameters(&self, fuel: usize) -> Vec<Params> {
        if fuel == 0 {
            Vec::new()
        } else {
            alloc::vec![Vec::new()]
        }
    }

    fn element(&self, _: &Params, i: u64) -> Term {
        Term::Pair(Ext::Infinity, i)
    }

    fn join(&self, _: &Params) -> Term {
        Term::Top
    }

    fn element_classes(&self, _: &Params) -> Vec<TermClass> {
        alloc::vec![TermClass::InfinitePair]
    }
}

pub struct TwoStepCodomain {
    rows: Rows,
    column: Column,
}

impl Default for TwoStepCodomain {
    fn default() -> Self {
        TwoStepCodomain { rows: Rows, column: Column }
    }
}

/// The closed order: same row and `m ≤ m'`, or `m' = ∞` and `n ≤ n'`.
pub fn pair_leq(x: (Ext, u64), y: (Ext, u64)) -> bool {
    let ((m, n), (m2, n2)) = (x, y);
    (n == n2 && m <= m2) || (n <= n2 && m2 == Ext::Infinity)
}

/// The generating relation before closing it under transitivity.
pub fn pair_leq_generating(x: (Ext, u64), y: (Ext, u64)) -> bool {
    let ((m, n), (m2, n2)) = (x, y);
    (n == n2 && m <= m2) || (n <= n2 && m == Ext::Infinity && m2 == Ext::Infinity)
}

impl SymbolicCpo for TwoStepCodomain {
    fn name(&self) -> &str {
        "(N+inf)xN+top+0"
    }

    fn well_formed(&self, t: &Term) -> bool {
        matches!(t, Term::Bottom | Term::Top | Term::Pair(..))
    }

    fn bottom(&self) -> Term {
        Term::Bottom
    }

    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        match (x, y) {
            (Term::Bottom, _) | (_, Term::Top) => true,
            (Term::Pair(m, n), Term::Pair(m2, n2)) => pair_leq((*m, *n), (*m2, *n2)),
            _ => false,
        }
    }

    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        let pairs = (0u64..).flat_map(|s| {
            (0..=s)
                .map(move |m| Term::Pair(Ext::Finite(m), s - m))
                .chain(core::iter::once(Term::Pair(Ext::Infinity, s)))
        });
        [Term::Bottom, Term::Top].into_iter().chain(pairs).take(fuel).collect()
    }

    fn families(&self) -> Vec<&dyn ChainFamily> {
        alloc::vec![&self.rows as &dyn ChainFamily, &self.column]
    }

    fn adequacy(&self) -> &str {
        "a directed subset without a greatest element is cofinal in a row (join (inf,n)) or in the column of (inf,n) (join top)"
    }
}

pub fn two_step_inclusion() -> Inclusion {
    Inclusion::new("iota", Arc::new(TwoStepDomain), Arc::new(TwoStepCodomain::default()))
}

/// `S_0` = image, `S_1` adds `(∞,n)`, `S_2` adds the top; the top is refuted at `S_1`.
pub fn two_step_certificate() -> StageCertificate {
    let s0 = [TermClass::Bottom, TermClass::FinitePair];
    let s1 = [TermClass::Bottom, TermClass::FinitePair, TermClass::InfinitePair];
    let s2 = [TermClass::Bottom, TermClass::FinitePair, TermClass::InfinitePair, TermClass::Top];
    StageCertificate {
        stages: alloc::vec![Stage::new("image", s0), Stage::new("S1", s1), Stage::new("S2", s2)],
        witnesses: alloc::vec![
            alloc::vec![Witness {
                class: TermClass::InfinitePair,
                family: ROW,
                params_of: |t| match t {
                    Term::Pair(Ext::Infinity, n) => Some(alloc::vec![*n]),
                    _ => None,
                },
            }],
            alloc::vec![Witness {
                class: TermClass::Top,
                family: COLUMN,
                params_of: |t| (*t == Term::Top).then(Vec::new),
            }],
        ],
        refutations: alloc::vec![Refutation {
            term: Term::Top,
            stage: 1,
            cases: alloc::vec![(ROW, RefutationCase::JoinsDiffer), (COLUMN, RefutationCase::NotContained)],
        }],
    }
}
