//! An almost disjoint family of subsets of ℕ from branches of the binary
//! tree, and the first quotient step it drives.
//!
//! A branch `x` gives `A_x = { code(x|n) : n ≥ 1 }`, where `code(s)` reads
//! `1s` as a binary number. A code of a length-`n` string lies in
//! `[2^n, 2^{n+1})`, so `A_x` has exactly one element per length and two
//! branches share exactly the codes of their common prefixes.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::symbolic::{
    ChainFamily, Code, FamilyId, Inclusion, Params, Stage, StageCertificate, SymbolicCpo, Term, TermClass, Witness,
};

pub const BRANCH: FamilyId = "branch";
pub const MAX_MEMBERS: usize = 64;

/// An eventually periodic infinite bit string `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    pub prefix: Vec<bool>,
    pub period: Vec<bool>,
}

impl Branch {
    pub fn new(prefix: Vec<bool>, period: Vec<bool>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        Branch { prefix, period }
    }

    pub fn bit(&self, k: usize) -> bool {
        match self.prefix.get(k) {
            Some(&b) => b,
            None => self.period[(k - self.prefix.len()) % self.period.len()],
        }
    }

    /// `code(x|len)`.
    pub fn code(&self, len: usize) -> Code {
        Code::from_bits(&(0..len).map(|k| self.bit(k)).collect::<Vec<_>>())
    }

    /// The code of `c` is in `A_x`.
    pub fn contains(&self, c: &Code) -> bool {
        !c.is_empty() && c.bits().iter().enumerate().all(|(k, &b)| self.bit(k) == b)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostDisjointFamily {
    members: Vec<Branch>,
}

impl AlmostDisjointFamily {
    pub fn new(members: Vec<Branch>) -> Self {
        AlmostDisjointFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Branch] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Branch {
        &self.members[i]
    }

    /// First position where branches `i` and `j` differ; `None` if equal.
    pub fn divergence(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (&self.members[i], &self.members[j]);
        let (la, lb) = (a.period.len(), b.period.len());
        let horizon = a.prefix.len().max(b.prefix.len()) + la / gcd(la, lb) * lb;
        (0..horizon).find(|&k| a.bit(k) != b.bit(k))
    }

    /// `A_i` restricted to codes of strings of length at most `max_len`.
    pub fn codes(&self, i: usize, max_len: usize) -> Vec<Code> {
        (1..=max_len).map(|n| self.members[i].code(n)).collect()
    }

    /// `|A_i ∩ A_j|`, or `None` when the sets coincide (and are infinite).
    ///
    /// Intersects the code sets up to one length past the divergence point;
    /// beyond that every pair of codes of equal length differs.
    pub fn intersection_size(&self, i: usize, j: usize) -> Option<usize> {
        let d = self.divergence(i, j)?;
        let a: BTreeSet<Code> = self.codes(i, d + 1).into_iter().collect();
        Some(self.codes(j, d + 1).iter().filter(|c| a.contains(c)).count())
    }

    /// Distinct nonempty prefixes of member branches of length `len`, in code order.
    pub fn nodes_of_length(&self, len: usize) -> Vec<Code> {
        let set: BTreeSet<Code> = self.members.iter().map(|b| b.code(len)).collect();
        set.into_iter().collect()
    }

    pub fn is_node(&self, c: &Code) -> bool {
        self.members.iter().any(|b| b.contains(c))
    }
}

/// Member `i` is `i` in binary, padded to a common width, followed by `(10)^ω`.
pub fn build_ad_family(n: usize) -> Result<AlmostDisjointFamily> {
    if !(2..=MAX_MEMBERS).contains(&n) {
        return Err(Error::BoundTooLarge { what: "member count", value: n, max: MAX_MEMBERS });
    }
    let width = ((usize::BITS - (n - 1).leading_zeros()) as usize).max(1);
    let members = (0..n)
        .map(|i| {
            let prefix = (0..width).rev().map(|k| i >> k & 1 == 1).collect();
            Branch::new(prefix, alloc::vec![true, false])
        })
        .collect();
    Ok(AlmostDisjointFamily { members })
}

fn tree_nodes(family: &AlmostDisjointFamily) -> impl Iterator<Item = Code> + '_ {
    (1..).flat_map(move |len| family.nodes_of_length(len))
}

/// Bottom plus an antichain of atoms, one per node of the tree spanned by the family.
#[derive(Debug, Clone)]
pub struct AdAtoms {
    family: Arc<AlmostDisjointFamily>,
}

impl AdAtoms {
    pub fn new(family: Arc<AlmostDisjointFamily>) -> Self {
        AdAtoms { family }
    }
}

impl SymbolicCpo for AdAtoms {
    fn name(&self) -> &str {
        "K0"
    }

    fn well_formed(&self, t: &Term) -> bool {
        match t {
            Term::Bottom => true,
            Term::Atom(c) => self.family.is_node(c),
            _ => false,
        }
    }

    fn bottom(&self) -> Term {
        Term::Bottom
    }

    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        *x == Term::Bottom || x == y
    }

    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        core::iter::once(Term::Bottom).chain(tree_nodes(&self.family).map(Term::Atom)).take(fuel).collect()
    }

    fn families(&self) -> Vec<&dyn ChainFamily> {
        Vec::new()
    }

    fn adequacy(&self) -> &str {
        "antichain with bottom: every directed subset has a greatest element"
    }
}

struct BranchChains {
    family: Arc<AlmostDisjointFamily>,
}

impl ChainFamily for BranchChains {
    fn id(&self) -> FamilyId {
        BRANCH
    }

    fn parameters(&self, fuel: usize) -> Vec<Params> {
        (0..self.family.len().min(fuel) as u64).map(|i| alloc::vec![i]).collect()
    }

    fn element(&self, p: &Params, i: u64) -> Term {
        Term::Atom(self.family.member(p[0] as usize).code(i as usize + 1))
    }

    fn join(&self, p: &Params) -> Term {
        Term::Join { family: BRANCH, params: p.clone() }
    }

    fn element_classes(&self, _: &Params) -> Vec<TermClass> {
        alloc::vec![TermClass::Atom]
    }
}

/// The atoms of [`AdAtoms`], each `A_x` ordered as a chain by the order of
/// ℕ, with a formal join `x_A` on top of each chain.
///
/// The transitive closure of the chain orders is the prefix order on
/// nodes. An atom lies below `x_A` iff it is in `A`; distinct formal joins
/// are incomparable.
pub struct AdJoins {
    family: Arc<AlmostDisjointFamily>,
    chains: BranchChains,
}

impl AdJoins {
    pub fn new(family: Arc<AlmostDisjointFamily>) -> Self {
        AdJoins { chains: BranchChains { family: family.clone() }, family }
    }

    pub fn join_of(i: usize) -> Term {
        Term::Join { family: BRANCH, params: alloc::vec![i as u64] }
    }
}

impl SymbolicCpo for AdJoins {
    fn name(&self) -> &str {
        "K1"
    }

    fn well_formed(&self, t: &Term) -> bool {
        match t {
            Term::Bottom => true,
            Term::Atom(c) => self.family.is_node(c),
            Term::Join { family, params } => {
                *family == BRANCH && params.len() == 1 && (params[0] as usize) < self.family.len()
            }
            _ => false,
        }
    }

    fn bottom(&self) -> Term {
        Term::Bottom
    }

    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        match (x, y) {
            (Term::Bottom, _) => true,
            (Term::Atom(a), Term::Atom(b)) => a.is_prefix_of(b),
            (Term::Atom(a), Term::Join { params, .. }) => self.family.member(params[0] as usize).contains(a),
            (Term::Join { .. }, Term::Join { .. }) => x == y,
            _ => false,
        }
    }

    /// Bottom, then formal joins and atoms alternately.
    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        let mut joins = (0..self.family.len()).map(AdJoins::join_of);
        let mut atoms = tree_nodes(&self.family).map(Term::Atom);
        let mut out = alloc::vec![Term::Bottom];
        while out.len() < fuel {
            if let Some(j) = joins.next() {
                out.push(j);
                if out.len() == fuel {
                    break;
                }
            }
            out.push(atoms.next().expect("the tree is infinite"));
        }
        out.truncate(fuel);
        out
    }

    fn families(&self) -> Vec<&dyn ChainFamily> {
        alloc::vec![&self.chains as &dyn ChainFamily]
    }

    fn adequacy(&self) -> &str {
        "a directed set of atoms is a chain of prefixes; an infinite one follows a single member branch from some point on and is cofinal in its chain, with join x_A"
    }
}

pub fn ad_inclusion(family: &Arc<AlmostDisjointFamily>) -> Inclusion {
    Inclusion::new("f01", Arc::new(AdAtoms::new(family.clone())), Arc::new(AdJoins::new(family.clone())))
}

/// `S_0` = atoms and bottom, `S_1` adds every `x_A` as the join of the chain `A`.
pub fn ad_certificate() -> StageCertificate {
    let s0 = [TermClass::Bottom, TermClass::Atom];
    let s1 = [TermClass::Bottom, TermClass::Atom, TermClass::Join(BRANCH)];
    StageCertificate {
        stages: alloc::vec![Stage::new("image", s0), Stage::new("S1", s1)],
        witnesses: alloc::vec![alloc::vec![Witness {
            class: TermClass::Join(BRANCH),
            family: BRANCH,
            params_of: |t| match t {
                Term::Join { params, .. } => Some(params.clone()),
                _ => None,
            },
        }]],
        refutations: Vec::new(),
    }
}
