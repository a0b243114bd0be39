use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::certificate::{Stage, StageCertificate};
use super::term::{FamilyId, Params, Term, TermClass};
use super::{ChainFamily, Resolution, SymbolicCpo, SymbolicCpoMap};
use crate::closure::directed_closure;
use crate::map::FinCpoMap;
use crate::poset::{indices, FinPoset};

/// A finite pointed poset seen as a symbolic cpo with an empty chain basis.
#[derive(Debug, Clone)]
pub struct FiniteCpo {
    poset: Arc<FinPoset>,
}

impl FiniteCpo {
    pub fn new(poset: Arc<FinPoset>) -> Self {
        FiniteCpo { poset }
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }
}

impl SymbolicCpo for FiniteCpo {
    fn name(&self) -> &str {
        self.poset.name()
    }

    fn well_formed(&self, t: &Term) -> bool {
        matches!(t, Term::Point(i) if *i < self.poset.len())
    }

    fn bottom(&self) -> Term {
        Term::Point(self.poset.bottom())
    }

    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool {
        match (x, y) {
            (Term::Point(a), Term::Point(b)) => self.poset.leq(*a, *b),
            _ => false,
        }
    }

    fn enumerate(&self, fuel: usize) -> Vec<Term> {
        (0..self.poset.len().min(fuel)).map(Term::Point).collect()
    }

    fn families(&self) -> Vec<&dyn ChainFamily> {
        Vec::new()
    }

    fn adequacy(&self) -> &str {
        "finite: every directed subset contains its join"
    }
}

pub struct FiniteLiftMap {
    name: String,
    map: FinCpoMap,
    source: FiniteCpo,
    target: FiniteCpo,
}

impl FiniteLiftMap {
    pub fn new(map: FinCpoMap) -> Self {
        let name = alloc::format!("{}->{}", map.src().name(), map.dst().name());
        let source = FiniteCpo::new(map.src().clone());
        let target = FiniteCpo::new(map.dst().clone());
        FiniteLiftMap { name, map, source, target }
    }

    pub fn map(&self) -> &FinCpoMap {
        &self.map
    }
}

impl SymbolicCpoMap for FiniteLiftMap {
    fn name(&self) -> &str {
        &self.name
    }

    fn source(&self) -> &dyn SymbolicCpo {
        &self.source
    }

    fn target(&self) -> &dyn SymbolicCpo {
        &self.target
    }

    fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Point(x) => Term::Point(self.map.apply(*x)),
            other => other.clone(),
        }
    }

    fn preimage(&self, t: &Term) -> Option<Term> {
        match t {
            Term::Point(y) => self.map.table().iter().position(|v| v == y).map(Term::Point),
            _ => None,
        }
    }

    fn resolve(&self, _family: FamilyId, _params: &Params) -> Option<Resolution> {
        None
    }
}

/// Stages read off the finite directed-join closure of the image.
pub fn finite_certificate(f: &FiniteLiftMap) -> StageCertificate {
    let trace = directed_closure(f.map().dst(), f.map().image());
    let stages: Vec<Stage> = trace
        .stages
        .iter()
        .enumerate()
        .map(|(k, &m)| Stage::new(&alloc::format!("S{k}"), indices(m).map(TermClass::Point)))
        .collect();
    let witnesses = alloc::vec![Vec::new(); stages.len().saturating_sub(1)];
    StageCertificate { stages, witnesses, refutations: Vec::new() }
}
