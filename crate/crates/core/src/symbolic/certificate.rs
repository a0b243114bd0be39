use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::term::{FamilyId, Params, Term, TermClass};
use super::{SymbolicCpo, SymbolicCpoMap};
use crate::error::{Error, Result};

pub const SOUNDNESS_CAVEAT: &str = "sound relative to the declared chain basis adequacy, sampled up to fuel";

/// A decidable set of terms: a union of term classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub classes: BTreeSet<TermClass>,
}

impl Stage {
    pub fn new(name: &str, classes: impl IntoIterator<Item = TermClass>) -> Self {
        Stage { name: name.into(), classes: classes.into_iter().collect() }
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.classes.contains(&t.class())
    }

    pub fn contains_class(&self, c: TermClass) -> bool {
        self.classes.contains(&c)
    }
}

/// Justifies that terms of `class` first appear as joins of `family`.
#[derive(Debug, Clone, Copy)]
pub struct Witness {
    pub class: TermClass,
    pub family: FamilyId,
    /// Parameters of the chain whose join is the given term.
    pub params_of: fn(&Term) -> Option<Params>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefutationCase {
    /// No chain of the family lies in the previous stage.
    NotContained,
    /// Every chain of the family inside the previous stage joins elsewhere.
    JoinsDiffer,
}

/// Claims `term` is not in stage `stage`, by cases over the basis families.
#[derive(Debug, Clone)]
pub struct Refutation {
    pub term: Term,
    pub stage: usize,
    pub cases: Vec<(FamilyId, RefutationCase)>,
}

/// Stages `S_0 ⊆ ... ⊆ S_n`. `witnesses[k]` covers the classes new in `S_{k+1}`.
#[derive(Debug, Clone)]
pub struct StageCertificate {
    pub stages: Vec<Stage>,
    pub witnesses: Vec<Vec<Witness>>,
    pub refutations: Vec<Refutation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub cpo: String,
    pub fuel: usize,
    pub stages_validated: usize,
    /// Least `k` with `S_k = S_n` on enumerated terms.
    pub closure_stage: usize,
    /// Enumerated terms new at each stage, starting with `S_0`.
    pub new_per_stage: Vec<usize>,
    pub refuted: Vec<(Term, usize)>,
    pub full_carrier: bool,
    pub first_missing: Option<Term>,
    pub caveat: &'static str,
}

impl fmt::Display for ClosureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cpo={}", self.cpo)?;
        writeln!(f, "fuel={}", self.fuel)?;
        writeln!(f, "stages_validated={}", self.stages_validated)?;
        writeln!(f, "closure_stage={}", self.closure_stage)?;
        for (k, n) in self.new_per_stage.iter().enumerate() {
            writeln!(f, "stage.{k}.new_terms={n}")?;
        }
        for (t, k) in &self.refuted {
            writeln!(f, "refuted.stage{k}={t}")?;
        }
        writeln!(f, "full_carrier={}", self.full_carrier)?;
        if let Some(t) = &self.first_missing {
            writeln!(f, "first_missing={t}")?;
        }
        writeln!(f, "caveat={}", self.caveat)
    }
}

fn mismatch(msg: String) -> Error {
    Error::StageMismatch(msg)
}

/// Checks a closure certificate up to `fuel`.
///
/// Confirms that `S_0` agrees with `start`, that stages increase, that every
/// term new at `S_{k+1}` is the join of a basis chain inside `S_k`, that every
/// basis chain inside `S_k` has its join in `S_{k+1}`, that `S_n` is closed,
/// and that every refutation's case analysis holds on sampled parameters.
pub fn symbolic_closure_verify(
    c: &dyn SymbolicCpo,
    start: &Stage,
    cert: &StageCertificate,
    fuel: usize,
) -> Result<ClosureVerdict> {
    let n = cert.stages.len().checked_sub(1).ok_or_else(|| mismatch("certificate has no stages".into()))?;
    if cert.witnesses.len() != n {
        return Err(mismatch(format!("{} witness groups for {n} stage steps", cert.witnesses.len())));
    }
    let terms = c.enumerate(fuel);
    let stages = &cert.stages;
    if let Some(t) = terms.iter().find(|t| stages[0].contains(t) != start.contains(t)) {
        return Err(mismatch(format!("first stage disagrees with the start set at `{t}`")));
    }
    for k in 0..n {
        if let Some(t) = terms.iter().find(|t| stages[k].contains(t) && !stages[k + 1].contains(t)) {
            return Err(mismatch(format!("`{t}` in stage {k} but not in stage {}", k + 1)));
        }
    }

    let families = c.families();
    let params: Vec<Vec<Params>> = families.iter().map(|f| f.parameters(fuel)).collect();

    for k in 0..n {
        for t in terms.iter().filter(|t| stages[k + 1].contains(t) && !stages[k].contains(t)) {
            let w = cert.witnesses[k]
                .iter()
                .find(|w| w.class == t.class())
                .ok_or_else(|| Error::WitnessInvalid(format!("no witness for `{t}` at stage {}", k + 1)))?;
            let fam =
                c.family(w.family).ok_or_else(|| Error::WitnessInvalid(format!("unknown family `{}`", w.family)))?;
            let p = (w.params_of)(t).ok_or_else(|| Error::WitnessInvalid(format!("no parameters for `{t}`")))?;
            if !fam.contained_in(&p, &stages[k]) {
                return Err(Error::WitnessInvalid(format!("chain for `{t}` leaves stage {k}")));
            }
            if let Some(i) = (0..fuel as u64).find(|&i| !stages[k].contains(&fam.element(&p, i))) {
                return Err(Error::WitnessInvalid(format!("element {i} of the chain for `{t}` leaves stage {k}")));
            }
            if fam.join(&p) != *t {
                return Err(Error::WitnessInvalid(format!("chain for `{t}` joins to `{}`", fam.join(&p))));
            }
        }
    }

    for k in 0..=n {
        let next = &stages[(k + 1).min(n)];
        for (fam, ps) in families.iter().zip(&params) {
            for p in ps {
                if fam.contained_in(p, &stages[k]) && !next.contains(&fam.join(p)) {
                    let what =
                        if k == n { "final stage is not closed".into() } else { format!("stage {} misses", k + 1) };
                    return Err(mismatch(format!("{what}: join `{}` of a `{}` chain", fam.join(p), fam.id())));
                }
            }
        }
    }

    let mut refuted = Vec::new();
    for r in &cert.refutations {
        let k = r.stage;
        if k == 0 || k > n {
            return Err(Error::WitnessInvalid(format!("refutation of `{}` names stage {k}", r.term)));
        }
        if stages[k].contains(&r.term) || stages[k - 1].contains(&r.term) {
            return Err(Error::WitnessInvalid(format!("`{}` is a member of stage {k}", r.term)));
        }
        for (fam, ps) in families.iter().zip(&params) {
            let case = r
                .cases
                .iter()
                .find(|(id, _)| *id == fam.id())
                .map(|(_, case)| *case)
                .ok_or_else(|| Error::CertificateGap { term: format!("{}", r.term), family: fam.id().into() })?;
            let inside = ps.iter().filter(|p| fam.contained_in(p, &stages[k - 1]));
            match case {
                RefutationCase::NotContained => {
                    if let Some(p) = inside.into_iter().next() {
                        return Err(Error::WitnessInvalid(format!(
                            "`{}` chain {p:?} lies in stage {}",
                            fam.id(),
                            k - 1
                        )));
                    }
                }
                RefutationCase::JoinsDiffer => {
                    if let Some(p) = inside.into_iter().find(|p| fam.join(p) == r.term) {
                        return Err(Error::WitnessInvalid(format!("`{}` chain {p:?} joins to `{}`", fam.id(), r.term)));
                    }
                }
            }
        }
        refuted.push((r.term.clone(), k));
    }

    let same_as_last = |k: usize| terms.iter().all(|t| stages[k].contains(t) == stages[n].contains(t));
    let closure_stage = (0..=n).find(|&k| same_as_last(k)).unwrap_or(n);
    let mut new_per_stage = Vec::with_capacity(n + 1);
    new_per_stage.push(terms.iter().filter(|t| stages[0].contains(t)).count());
    for k in 0..n {
        new_per_stage.push(terms.iter().filter(|t| stages[k + 1].contains(t) && !stages[k].contains(t)).count());
    }
    let first_missing = terms.iter().find(|t| !stages[n].contains(t)).cloned();
    Ok(ClosureVerdict {
        cpo: c.name().into(),
        fuel,
        stages_validated: n + 1,
        closure_stage,
        new_per_stage,
        refuted,
        full_carrier: first_missing.is_none(),
        first_missing,
        caveat: SOUNDNESS_CAVEAT,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpiVerdict {
    pub map: String,
    pub epi: bool,
    pub surjective: bool,
    pub injective: bool,
    pub order_reflecting: bool,
    pub mono: bool,
    pub iso: bool,
    pub closure: ClosureVerdict,
}

impl fmt::Display for EpiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map={}", self.map)?;
        writeln!(f, "epi={}", self.epi)?;
        writeln!(f, "mono={}", self.mono)?;
        writeln!(f, "iso={}", self.iso)?;
        writeln!(f, "surjective={}", self.surjective)?;
        writeln!(f, "injective={}", self.injective)?;
        writeln!(f, "order_reflecting={}", self.order_reflecting)?;
        write!(f, "{}", self.closure)
    }
}

/// A map is epi iff the directed-join closure of its image is the codomain.
pub fn symbolic_is_epi(f: &dyn SymbolicCpoMap, cert: &StageCertificate, fuel: usize) -> Result<EpiVerdict> {
    let target = f.target();
    let first = cert.stages.first().ok_or_else(|| mismatch("certificate has no stages".into()))?;
    let targets = target.enumerate(fuel);
    for t in &targets {
        let pre = f.preimage(t);
        if let Some(s) = &pre {
            if f.apply(s) != *t {
                return Err(mismatch(format!("preimage of `{t}` maps to `{}`", f.apply(s))));
            }
        }
        if pre.is_some() != first.contains(t) {
            return Err(mismatch(format!("first stage disagrees with the image at `{t}`")));
        }
    }
    let closure = symbolic_closure_verify(target, first, cert, fuel)?;

    let source = f.source();
    let sources = source.enumerate(fuel);
    let images: Vec<Term> = sources.iter().map(|s| f.apply(s)).collect();
    let injective = images.iter().collect::<BTreeSet<_>>().len() == images.len();
    let order_reflecting = (0..sources.len()).all(|i| {
        (0..sources.len())
            .all(|j| !target.leq_unchecked(&images[i], &images[j]) || source.leq_unchecked(&sources[i], &sources[j]))
    });
    let surjective = targets.iter().all(|t| f.preimage(t).is_some());
    let epi = closure.full_carrier;
    Ok(EpiVerdict {
        map: f.name().into(),
        epi,
        surjective,
        injective,
        order_reflecting,
        mono: injective,
        iso: injective && surjective && order_reflecting,
        closure,
    })
}
