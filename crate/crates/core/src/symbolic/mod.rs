//! Countable cpos presented by terms, a decidable order, and a finite basis
//! of parametric ω-chains whose joins account for every nontrivial directed
//! join.
//!
//! Everything here is checked by sampling up to a fuel bound. Verdicts are
//! sound only relative to the declared adequacy of each chain basis, and
//! the reports say so.

mod certificate;
mod finite;
mod term;
mod validate;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use certificate::{
    symbolic_closure_verify, symbolic_is_epi, ClosureVerdict, EpiVerdict, Refutation, RefutationCase, Stage,
    StageCertificate, Witness, SOUNDNESS_CAVEAT,
};
pub use finite::{finite_certificate, FiniteCpo, FiniteLiftMap};
pub use term::{Code, Ext, FamilyId, Params, Term, TermClass};
pub use validate::{validate_map, validate_symbolic, ValidationReport};

/// Default number of enumerated terms, parameters, and chain indices.
pub const DEFAULT_FUEL: usize = 64;
/// Seed for the sampled adequacy checks.
pub const DEFAULT_SEED: u64 = 42;

/// A parametric family of strictly increasing ω-chains.
pub trait ChainFamily: Send + Sync {
    fn id(&self) -> FamilyId;
    /// The first `fuel` parameter tuples.
    fn parameters(&self, fuel: usize) -> Vec<Params>;
    fn element(&self, params: &Params, index: u64) -> Term;
    fn join(&self, params: &Params) -> Term;
    /// Term classes met by the elements of the chain.
    fn element_classes(&self, params: &Params) -> Vec<TermClass>;

    /// Every element of the chain lies in `stage`.
    fn contained_in(&self, params: &Params, stage: &Stage) -> bool {
        self.element_classes(params).iter().all(|c| stage.contains_class(*c))
    }
}

pub trait SymbolicCpo: Send + Sync {
    fn name(&self) -> &str;
    fn well_formed(&self, t: &Term) -> bool;
    fn bottom(&self) -> Term;
    /// The order on well-formed terms. Callers go through [`term_leq`].
    fn leq_unchecked(&self, x: &Term, y: &Term) -> bool;
    /// The first `fuel` terms of a fixed enumeration of the carrier.
    fn enumerate(&self, fuel: usize) -> Vec<Term>;
    fn families(&self) -> Vec<&dyn ChainFamily>;
    /// Why every nontrivial directed join is the join of a basis chain.
    fn adequacy(&self) -> &str;

    fn family(&self, id: &str) -> Option<&dyn ChainFamily> {
        self.families().into_iter().find(|f| f.id() == id)
    }
}

pub fn term_leq(c: &dyn SymbolicCpo, x: &Term, y: &Term) -> Result<bool> {
    for t in [x, y] {
        if !c.well_formed(t) {
            return Err(Error::IllFormedTerm(alloc::format!("`{t}` in {}", c.name())));
        }
    }
    Ok(c.leq_unchecked(x, y))
}

/// Where a source basis chain goes under a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// The image is cofinal in this target chain.
    Cofinal { family: FamilyId, params: Params },
    /// The image is eventually this constant.
    EventuallyConstant(Term),
}

pub trait SymbolicCpoMap: Send + Sync {
    fn name(&self) -> &str;
    fn source(&self) -> &dyn SymbolicCpo;
    fn target(&self) -> &dyn SymbolicCpo;
    fn apply(&self, t: &Term) -> Term;
    /// Some source term mapped to `t`, if any.
    fn preimage(&self, t: &Term) -> Option<Term>;
    fn resolve(&self, family: FamilyId, params: &Params) -> Option<Resolution>;
}

/// A map that is the identity on terms, between cpos whose signatures
/// nest. Basis chains of the source resolve to the same-named target chain.
pub struct Inclusion {
    name: String,
    source: Arc<dyn SymbolicCpo>,
    target: Arc<dyn SymbolicCpo>,
}

impl Inclusion {
    pub fn new(name: &str, source: Arc<dyn SymbolicCpo>, target: Arc<dyn SymbolicCpo>) -> Self {
        Inclusion { name: name.into(), source, target }
    }

    pub fn identity(c: Arc<dyn SymbolicCpo>) -> Self {
        Inclusion { name: alloc::format!("id_{}", c.name()), source: c.clone(), target: c }
    }
}

impl SymbolicCpoMap for Inclusion {
    fn name(&self) -> &str {
        &self.name
    }

    fn source(&self) -> &dyn SymbolicCpo {
        self.source.as_ref()
    }

    fn target(&self) -> &dyn SymbolicCpo {
        self.target.as_ref()
    }

    fn apply(&self, t: &Term) -> Term {
        t.clone()
    }

    fn preimage(&self, t: &Term) -> Option<Term> {
        self.source.well_formed(t).then(|| t.clone())
    }

    fn resolve(&self, family: FamilyId, params: &Params) -> Option<Resolution> {
        self.target.family(family).map(|_| Resolution::Cofinal { family, params: params.clone() })
    }
}

#[cfg(test)]
mod tests;
