//! Normalizing extremal epimorphisms out of `κ·3` into chains of coequalizers.
//!
//! Given an extremal epi `e_0: A_0 -> A` that is not invertible, some pair
//! of distinct maps `g, h: 2 -> A_0` has `e_0 ∘ g = e_0 ∘ h`. Coequalizing
//! that pair gives `f_{01}: A_0 -> A_1` and the induced `e_1: A_1 -> A`;
//! repeat until `e_α` is an isomorphism. For finite `κ` every `A_α` is a
//! quotient of `A_0`, so sizes never exceed `2κ + 1` and strictly drop at
//! each step.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonicalize, CanonicalForm};
use crate::classify::classify;
use crate::colimit::{coequalizer, quotient_by_pairs};
use crate::error::{Error, Result};
use crate::map::{same_object, FinCpoMap};
use crate::objects::{chain, kappa_three};
use crate::poset::FinPoset;

/// Largest `κ` accepted by [`quotient_census`].
pub const CENSUS_KAPPA_LIMIT: usize = 3;

/// Largest `κ` accepted by the normalization procedure.
pub const NORMALIZE_KAPPA_LIMIT: usize = 31;

#[derive(Debug, Clone)]
pub struct QuotientStep {
    /// The collapsing pair `g, h: 2 -> A_α`.
    pub pair: (FinCpoMap, FinCpoMap),
    /// `f_{α,α+1}: A_α -> A_{α+1}`, the coequalizer of the pair.
    pub step: FinCpoMap,
    /// `e_{α+1}: A_{α+1} -> A`.
    pub induced: FinCpoMap,
}

#[derive(Debug, Clone)]
pub struct QuotientChainTrace {
    pub kappa: usize,
    pub seed: Option<u64>,
    pub e0: FinCpoMap,
    pub steps: Vec<QuotientStep>,
    /// The last `e_α`, an isomorphism.
    pub final_iso: FinCpoMap,
    /// `|A_α|` for every stage.
    pub sizes: Vec<usize>,
}

impl QuotientChainTrace {
    pub fn source(&self) -> &Arc<FinPoset> {
        self.e0.src()
    }

    /// `A_α`.
    pub fn object(&self, alpha: usize) -> &Arc<FinPoset> {
        if alpha == 0 {
            self.e0.src()
        } else {
            self.steps[alpha - 1].step.dst()
        }
    }

    /// `e_α: A_α -> A`.
    pub fn cocone(&self, alpha: usize) -> &FinCpoMap {
        if alpha == 0 {
            &self.e0
        } else {
            &self.steps[alpha - 1].induced
        }
    }

    /// `f_{α,β}` for `α <= β`, composed from the stored steps.
    pub fn composite(&self, alpha: usize, beta: usize) -> Result<FinCpoMap> {
        if alpha > beta || beta > self.steps.len() {
            return Err(Error::ShapeMismatch("composite indices"));
        }
        let mut acc = FinCpoMap::identity(self.object(alpha).clone());
        for s in &self.steps[alpha..beta] {
            acc = s.step.after(&acc)?;
        }
        Ok(acc)
    }

    pub fn stages(&self) -> usize {
        self.steps.len() + 1
    }

    /// Checks every invariant of the trace, naming the first one that fails.
    pub fn check(&self) -> core::result::Result<(), &'static str> {
        let bound = 2 * self.kappa + 1;
        if self.sizes.iter().any(|&s| s > bound) {
            return Err("size above 2κ+1");
        }
        if self.sizes.windows(2).any(|w| w[1] >= w[0]) {
            return Err("sizes not strictly decreasing");
        }
        if self.steps.len() > bound {
            return Err("more than 2κ+1 steps");
        }
        if !classify(&self.final_iso).iso {
            return Err("final map is not an isomorphism");
        }
        let n = self.steps.len();
        for a in 0..=n {
            let f0a = self.composite(0, a).map_err(|_| "composite")?;
            let through = self.cocone(a).after(&f0a).map_err(|_| "cocone endpoints")?;
            if through.table() != self.e0.table() {
                return Err("cocone equation e_0 = e_α ∘ f_{0α} fails");
            }
            if !f0a.is_surjective() {
                return Err("element of A_α without a representative in A_0");
            }
            for b in a..=n {
                let fab = self.composite(a, b).map_err(|_| "composite")?;
                if !classify(&fab).strong_epi {
                    return Err("composite step is not a strong epimorphism");
                }
                for c in b..=n {
                    let fbc = self.composite(b, c).map_err(|_| "composite")?;
                    let fac = self.composite(a, c).map_err(|_| "composite")?;
                    if fbc.after(&fab).map_err(|_| "composite")?.table() != fac.table() {
                        return Err("f_{β,γ} ∘ f_{α,β} != f_{α,γ}");
                    }
                }
            }
        }
        Ok(())
    }
}

/// The least pair of distinct maps `g, h: 2 -> A` with `e ∘ g = e ∘ h`, or
/// `None` when `e` is injective. A map `2 -> A` is the choice of the image of `1`.
pub fn find_collapsing_pair(e: &FinCpoMap) -> Option<(FinCpoMap, FinCpoMap)> {
    let a = e.src();
    let n = a.len();
    let (x, y) = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| e.apply(x) == e.apply(y))?;
    let two = Arc::new(chain(2));
    let point = |z| FinCpoMap::new(two.clone(), a.clone(), alloc::vec![a.bottom(), z]).expect("2 -> A is any element");
    Some((point(x), point(y)))
}

/// If `p` is a coproduct of copies of `3`, the number of copies.
pub fn kappa_of(p: &FinPoset) -> Option<usize> {
    if p.len().is_multiple_of(2) {
        return None;
    }
    let kappa = p.len() / 2;
    (canonicalize(p.order()) == canonicalize(kappa_three(kappa).order())).then_some(kappa)
}

/// Runs the normalization procedure on an extremal epi out of `κ·3`.
pub fn normalize_extremal_epi(e0: &FinCpoMap) -> Result<QuotientChainTrace> {
    let kappa = kappa_of(e0.src()).ok_or(Error::NotKappaThree)?;
    if kappa > NORMALIZE_KAPPA_LIMIT {
        return Err(Error::BoundTooLarge { what: "kappa", value: kappa, max: NORMALIZE_KAPPA_LIMIT });
    }
    if !classify(e0).extremal_epi {
        return Err(Error::NotExtremalEpi);
    }
    let mut steps: Vec<QuotientStep> = Vec::new();
    let mut sizes = alloc::vec![e0.src().len()];
    let mut current = e0.clone();
    while !classify(&current).iso {
        // An extremal epi that is not invertible is not mono.
        let (g, h) = find_collapsing_pair(&current).ok_or(Error::NotExtremalEpi)?;
        let coeq = coequalizer(&g, &h)?;
        let induced = coeq.mediate(&current)?;
        sizes.push(coeq.object().len());
        steps.push(QuotientStep { pair: (g, h), step: coeq.quotient.clone(), induced: induced.clone() });
        current = induced;
        if steps.len() > 2 * kappa + 1 {
            return Err(Error::NotExtremalEpi);
        }
    }
    Ok(QuotientChainTrace { kappa, seed: None, e0: e0.clone(), steps, final_iso: current, sizes })
}

/// An extremal epi out of `κ·3` built by composing random coequalizer
/// collapses, verified extremal before it is returned.
pub fn random_extremal_epi(kappa: usize, seed: u64) -> Result<FinCpoMap> {
    if kappa > NORMALIZE_KAPPA_LIMIT {
        return Err(Error::BoundTooLarge { what: "kappa", value: kappa, max: NORMALIZE_KAPPA_LIMIT });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = Arc::new(kappa_three(kappa));
    let mut acc = FinCpoMap::identity(source);
    let rounds = rng.gen_range(0..=2 * kappa);
    for _ in 0..rounds {
        let target = acc.dst().clone();
        if target.len() < 2 {
            break;
        }
        let x = rng.gen_range(0..target.len());
        let mut y = rng.gen_range(0..target.len() - 1);
        if y >= x {
            y += 1;
        }
        let q = quotient_by_pairs(&target, &[(x, y)]);
        acc = q.quotient.after(&acc)?;
    }
    if !classify(&acc).extremal_epi {
        return Err(Error::NotExtremalEpi);
    }
    Ok(acc)
}

/// Seeded synthesis followed by normalization; the seed is kept in the trace.
pub fn normalize_random(kappa: usize, seed: u64) -> Result<QuotientChainTrace> {
    let e0 = random_extremal_epi(kappa, seed)?;
    let mut trace = normalize_extremal_epi(&e0)?;
    trace.seed = Some(seed);
    Ok(trace)
}

/// Colimit of a chain that ends in isomorphisms: the object where the
/// chain becomes stationary, with the colimit legs from every stage.
#[derive(Debug, Clone)]
pub struct ChainColimit {
    pub object: Arc<FinPoset>,
    pub stationary_from: usize,
    pub legs: Vec<FinCpoMap>,
}

/// `steps[i]: A_i -> A_{i+1}`. The chain must end with at least one
/// isomorphism; it is read as constant from the first index after which
/// every step is invertible.
pub fn colimit_of_eventually_constant(steps: &[FinCpoMap]) -> Result<ChainColimit> {
    if steps.windows(2).any(|w| !same_object(w[0].dst(), w[1].src())) {
        return Err(Error::ShapeMismatch("chain steps do not compose"));
    }
    let isos: Vec<bool> = steps.iter().map(|s| classify(s).iso).collect();
    if isos.last() != Some(&true) {
        return Err(Error::NotEventuallyConstant);
    }
    let start = isos.iter().rposition(|&b| !b).map_or(0, |k| k + 1);
    let object = steps[start].src().clone();
    let mut legs = Vec::with_capacity(steps.len() + 1);
    for i in 0..=steps.len() {
        let leg = if i <= start {
            let mut acc = FinCpoMap::identity(if i < steps.len() { steps[i].src().clone() } else { object.clone() });
            for s in &steps[i..start] {
                acc = s.after(&acc)?;
            }
            acc
        } else {
            let mut acc = FinCpoMap::identity(object.clone());
            for s in &steps[start..i] {
                acc = s.after(&acc)?;
            }
            acc.inverse()?
        };
        legs.push(leg);
    }
    Ok(ChainColimit { object, stationary_from: start, legs })
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub kappa: usize,
    /// Canonical forms of the extremal quotients, sorted.
    pub forms: Vec<CanonicalForm>,
    pub max_size: usize,
    /// Partitions of the carrier examined.
    pub partitions: usize,
}

impl CensusReport {
    pub fn count(&self) -> usize {
        self.forms.len()
    }
}

/// Extremal quotients of `κ·3` up to isomorphism.
///
/// An extremal epi out of a finite cpo is surjective and carries exactly
/// the order generated by its image, so it is determined by its kernel.
/// Every partition of the carrier is pushed through the coequalizer
/// collapse; the results are the extremal quotients.
pub fn quotient_census(kappa: usize) -> Result<CensusReport> {
    if kappa > CENSUS_KAPPA_LIMIT {
        return Err(Error::BoundTooLarge { what: "kappa", value: kappa, max: CENSUS_KAPPA_LIMIT });
    }
    let source = Arc::new(kappa_three(kappa));
    let n = source.len();
    let mut forms = BTreeSet::new();
    let mut max_size = 0;
    let mut partitions = 0;
    let mut blocks = alloc::vec![0usize; n];
    loop {
        partitions += 1;
        let pairs: Vec<(usize, usize)> =
            (0..n).map(|x| (blocks[..x].iter().position(|&b| b == blocks[x]).unwrap_or(x), x)).collect();
        let q = quotient_by_pairs(&source, &pairs);
        if !classify(&q.quotient).extremal_epi {
            return Err(Error::NotExtremalEpi);
        }
        max_size = max_size.max(q.object().len());
        forms.insert(canonicalize(q.object().order()));
        if !next_restricted_growth(&mut blocks) {
            break;
        }
    }
    if max_size > 2 * kappa + 1 {
        return Err(Error::BoundTooLarge { what: "quotient size", value: max_size, max: 2 * kappa + 1 });
    }
    Ok(CensusReport { kappa, forms: forms.into_iter().collect(), max_size, partitions })
}

/// Advances a restricted growth string (`b[0] = 0`, `b[i] <= 1 + max b[..i]`).
fn next_restricted_growth(b: &mut [usize]) -> bool {
    for i in (1..b.len()).rev() {
        let cap = b[..i].iter().max().copied().unwrap_or(0) + 1;
        if b[i] < cap {
            b[i] += 1;
            for x in &mut b[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}
