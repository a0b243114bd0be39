//! Generators and strong generators, quantified over a corpus.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::map::{hom_enumerate, FinCpoMap};
use crate::objects::chain;
use crate::oracle::{factors_through, Corpus};
use crate::poset::{indices, FinPoset};

/// Largest corpus bound accepted by the generator checks.
pub const GENERATOR_BOUND: usize = 5;

#[derive(Debug, Clone)]
pub struct GeneratorVerdict {
    pub holds: bool,
    /// A pair `f != g` that no map out of the generator separates.
    pub counterexample: Option<(FinCpoMap, FinCpoMap)>,
}

/// A proper subobject through which every map out of the generator factors.
#[derive(Debug, Clone)]
pub struct SubobjectWitness {
    pub subobject: FinCpoMap,
    /// Each map `s: G -> B` paired with its factorization `t` (`m ∘ t = s`).
    pub factorizations: Vec<(FinCpoMap, FinCpoMap)>,
}

#[derive(Debug, Clone)]
pub struct StrongGeneratorVerdict {
    pub holds: bool,
    pub witness: Option<SubobjectWitness>,
}

fn corpus_for(n: usize) -> Result<Corpus> {
    if n > GENERATOR_BOUND {
        return Err(Error::BoundTooLarge { what: "corpus bound", value: n, max: GENERATOR_BOUND });
    }
    Corpus::up_to(n)
}

pub fn is_generator(g: &FinPoset, n: usize) -> Result<GeneratorVerdict> {
    is_generator_in(&Arc::new(g.clone()), &corpus_for(n)?)
}

/// For all distinct `f, g: A -> B` in the corpus some `h: G -> A` has `f ∘ h != g ∘ h`.
pub fn is_generator_in(gen: &Arc<FinPoset>, corpus: &Corpus) -> Result<GeneratorVerdict> {
    for a in &corpus.objects {
        let probes = hom_enumerate(gen, a)?;
        for b in &corpus.objects {
            let homs = hom_enumerate(a, b)?;
            for (i, f) in homs.iter().enumerate() {
                for g in &homs[i + 1..] {
                    let separated = probes.iter().any(|h| h.table().iter().any(|&x| f.apply(x) != g.apply(x)));
                    if !separated {
                        return Ok(GeneratorVerdict { holds: false, counterexample: Some((f.clone(), g.clone())) });
                    }
                }
            }
        }
    }
    Ok(GeneratorVerdict { holds: true, counterexample: None })
}

pub fn is_strong_generator(g: &FinPoset, n: usize) -> Result<StrongGeneratorVerdict> {
    is_strong_generator_in(&Arc::new(g.clone()), &corpus_for(n)?)
}

/// For every proper subobject `m: C -> B` (injective, not invertible) in
/// the corpus, some `s: G -> B` does not factor through `m`.
pub fn is_strong_generator_in(gen: &Arc<FinPoset>, corpus: &Corpus) -> Result<StrongGeneratorVerdict> {
    for b in &corpus.objects {
        let probes = hom_enumerate(gen, b)?;
        for c in corpus.at_most(b.len()) {
            for m in hom_enumerate(c, b)? {
                let cls = classify(&m);
                if !cls.mono || cls.iso {
                    continue;
                }
                let mut factorizations = Vec::new();
                for s in &probes {
                    match factors_through(s, &m)? {
                        Some(t) => factorizations.push((s.clone(), t)),
                        None => break,
                    }
                }
                if factorizations.len() == probes.len() {
                    return Ok(StrongGeneratorVerdict {
                        holds: false,
                        witness: Some(SubobjectWitness { subobject: m, factorizations }),
                    });
                }
            }
        }
    }
    Ok(StrongGeneratorVerdict { holds: true, witness: None })
}

/// A map `3 -> B` that does not factor through the proper subobject `f: A -> B`.
///
/// If `f` misses some `b`, both non-bottom points go to the least such `b`.
/// Otherwise `f` is a bijection that fails to reflect order: pick the least
/// pair `a1, a2` incomparable in `A` with `f(a1) < f(a2)` and send `1, 2` to them.
pub fn separating_morphism(f: &FinCpoMap) -> Result<FinCpoMap> {
    let cls = classify(f);
    if !cls.mono || cls.iso {
        return Err(Error::NotProperSubobject);
    }
    let three = Arc::new(chain(3));
    let b = f.dst();
    let missing = b.all() & !f.image();
    let table = if let Some(y) = indices(missing).next() {
        alloc::vec![b.bottom(), y, y]
    } else {
        let a = f.src();
        let pair = (0..a.len())
            .flat_map(|x| (0..a.len()).map(move |y| (x, y)))
            .find(|&(x, y)| !a.order().comparable(x, y) && b.order().lt(f.apply(x), f.apply(y)))
            .ok_or(Error::NotProperSubobject)?;
        alloc::vec![b.bottom(), f.apply(pair.0), f.apply(pair.1)]
    };
    let s = FinCpoMap::new(three, b.clone(), table)?;
    if factors_through(&s, f)?.is_some() {
        return Err(Error::WitnessInvalid("separating map factors through the subobject".into()));
    }
    Ok(s)
}
