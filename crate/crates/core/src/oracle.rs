//! Categorical brute-force oracles.
//!
//! Every predicate here quantifies over hom-sets drawn from a finite corpus
//! of pointed posets and uses nothing but [`hom_enumerate`] and
//! composition, so it stays independent of the order-theoretic
//! characterizations in [`crate::classify`].

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::colimit::{Coequalizer, Coproduct, Pushout};
use crate::enumerate::enumerate_posets;
use crate::error::Result;
use crate::factor::{diagonal_fill, Square};
use crate::map::{hom_enumerate, FinCpoMap};
use crate::poset::FinPoset;

/// All pointed posets up to a size bound, smallest first.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub bound: usize,
    pub objects: Vec<Arc<FinPoset>>,
}

impl Corpus {
    pub fn up_to(bound: usize) -> Result<Self> {
        let mut objects = Vec::new();
        for n in 1..=bound {
            objects.extend(enumerate_posets(n)?.into_iter().map(Arc::new));
        }
        Ok(Corpus { bound, objects })
    }

    pub fn at_most(&self, size: usize) -> impl Iterator<Item = &Arc<FinPoset>> {
        self.objects.iter().filter(move |p| p.len() <= size)
    }

    /// Every cpo map between corpus objects.
    pub fn all_maps(&self) -> Result<Vec<FinCpoMap>> {
        let mut out = Vec::new();
        for a in &self.objects {
            for b in &self.objects {
                out.extend(hom_enumerate(a, b)?);
            }
        }
        Ok(out)
    }
}

fn group_by_table(
    maps: Vec<FinCpoMap>,
    key: impl Fn(&FinCpoMap) -> Vec<usize>,
) -> BTreeMap<Vec<usize>, Vec<FinCpoMap>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<FinCpoMap>> = BTreeMap::new();
    for m in maps {
        groups.entry(key(&m)).or_default().push(m);
    }
    groups
}

/// `g ∘ f = h ∘ f` implies `g = h` for all `g, h: B -> T`, `T` in the corpus.
pub fn is_right_cancellable(f: &FinCpoMap, corpus: &Corpus) -> Result<bool> {
    for t in &corpus.objects {
        let homs = hom_enumerate(f.dst(), t)?;
        let groups = group_by_table(homs, |g| f.table().iter().map(|&y| g.apply(y)).collect());
        if groups.values().any(|v| v.len() > 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f ∘ g = f ∘ h` implies `g = h` for all `g, h: S -> A`, `S` in the corpus.
pub fn is_left_cancellable(f: &FinCpoMap, corpus: &Corpus) -> Result<bool> {
    for s in &corpus.objects {
        let homs = hom_enumerate(s, f.src())?;
        let groups = group_by_table(homs, |g| g.table().iter().map(|&x| f.apply(x)).collect());
        if groups.values().any(|v| v.len() > 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some `g: B -> A` has `g ∘ f = id` and `f ∘ g = id`.
pub fn has_two_sided_inverse(f: &FinCpoMap) -> Result<bool> {
    for g in hom_enumerate(f.dst(), f.src())? {
        let gf = g.after(f)?;
        let fg = f.after(&g)?;
        if gf.table().iter().enumerate().all(|(x, &y)| x == y) && fg.table().iter().enumerate().all(|(x, &y)| x == y) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Some `t: A -> C` has `m ∘ t = f`.
pub fn factors_through(f: &FinCpoMap, m: &FinCpoMap) -> Result<Option<FinCpoMap>> {
    for t in hom_enumerate(f.src(), m.src())? {
        if t.table().iter().map(|&c| m.apply(c)).eq(f.table().iter().copied()) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Right-cancellable, and every injective `m: C -> B` (C in the corpus,
/// `|C| <= |B|`) through which `e` factors has an inverse.
pub fn is_extremal_by_mono_search(e: &FinCpoMap, corpus: &Corpus) -> Result<bool> {
    if !is_right_cancellable(e, corpus)? {
        return Ok(false);
    }
    for c in corpus.at_most(e.dst().len()) {
        for m in hom_enumerate(c, e.dst())? {
            if !m.is_injective() {
                continue;
            }
            if factors_through(e, &m)?.is_some() && !has_two_sided_inverse(&m)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Calls `visit` on every commuting square `m ∘ u = v ∘ e` with left edge
/// `e`, right edge accepted by `right_edge_ok`, and corners in the corpus.
/// Stops early when `visit` returns false.
fn squares_on_left(
    e: &FinCpoMap,
    corpus: &Corpus,
    right_edge_ok: &dyn Fn(&FinCpoMap) -> Result<bool>,
    visit: &mut dyn FnMut(Square) -> Result<bool>,
) -> Result<bool> {
    for d in &corpus.objects {
        let vs = group_by_table(hom_enumerate(e.dst(), d)?, |v| e.table().iter().map(|&y| v.apply(y)).collect());
        for c in &corpus.objects {
            let us = hom_enumerate(e.src(), c)?;
            for m in hom_enumerate(c, d)? {
                if !right_edge_ok(&m)? {
                    continue;
                }
                for u in &us {
                    let mu: Vec<usize> = u.table().iter().map(|&x| m.apply(x)).collect();
                    for v in vs.get(&mu).into_iter().flatten() {
                        let sq = Square { u: u.clone(), e: e.clone(), m: m.clone(), v: v.clone() };
                        if !visit(sq)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every commuting square with `e` on the left and a mono (injective map)
/// on the right has a diagonal.
pub fn is_strong_epi_by_diagonals(e: &FinCpoMap, corpus: &Corpus) -> Result<bool> {
    squares_on_left(e, corpus, &|m| Ok(m.is_injective()), &mut |sq| Ok(diagonal_fill(&sq)?.is_some()))
}

/// The right-cancellable maps between corpus objects.
pub fn right_cancellable_maps(corpus: &Corpus) -> Result<Vec<FinCpoMap>> {
    let mut out = Vec::new();
    for e in corpus.all_maps()? {
        if is_right_cancellable(&e, corpus)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// Every commuting square with `m` on the right and one of `epis` on the
/// left has a diagonal.
pub fn is_strong_mono_by_diagonals(m: &FinCpoMap, epis: &[FinCpoMap]) -> Result<bool> {
    for e in epis {
        let vs = group_by_table(hom_enumerate(e.dst(), m.dst())?, |v| e.table().iter().map(|&y| v.apply(y)).collect());
        for u in hom_enumerate(e.src(), m.src())? {
            let mu: Vec<usize> = u.table().iter().map(|&x| m.apply(x)).collect();
            for v in vs.get(&mu).into_iter().flatten() {
                let sq = Square { u: u.clone(), e: e.clone(), m: m.clone(), v: v.clone() };
                if diagonal_fill(&sq)?.is_none() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `q ∘ f = q ∘ g`, and every `h: B -> T` with `h ∘ f = h ∘ g` factors as
/// `u ∘ q` for exactly one `u`.
pub fn coequalizer_is_universal(f: &FinCpoMap, g: &FinCpoMap, coeq: &Coequalizer, corpus: &Corpus) -> Result<bool> {
    let q = &coeq.quotient;
    if q.after(f)?.table() != q.after(g)?.table() {
        return Ok(false);
    }
    for t in &corpus.objects {
        let us = hom_enumerate(q.dst(), t)?;
        for h in hom_enumerate(f.dst(), t)? {
            if h.after(f)?.table() != h.after(g)?.table() {
                continue;
            }
            let matching = us.iter().filter(|u| q.table().iter().map(|&c| u.apply(c)).eq(h.table().iter().copied()));
            if matching.count() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every family of maps `h_i: P_i -> T` there is exactly one
/// `u` with `u ∘ inj_i = h_i`.
pub fn coproduct_is_universal(cop: &Coproduct, corpus: &Corpus) -> Result<bool> {
    for t in &corpus.objects {
        let us = hom_enumerate(&cop.object, t)?;
        let leg_sets = cop.injections.iter().map(|inj| hom_enumerate(inj.src(), t)).collect::<Result<Vec<_>>>()?;
        let mut choice = alloc::vec![0usize; leg_sets.len()];
        if leg_sets.iter().any(|s| s.is_empty()) {
            continue;
        }
        loop {
            let matching = us
                .iter()
                .filter(|u| {
                    cop.injections.iter().zip(&choice).zip(&leg_sets).all(|((inj, &k), legs)| {
                        inj.table().iter().map(|&y| u.apply(y)).eq(legs[k].table().iter().copied())
                    })
                })
                .count();
            if matching != 1 {
                return Ok(false);
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    break;
                }
                choice[i] += 1;
                if choice[i] < leg_sets[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    Ok(true)
}

/// The pushout square commutes and mediates uniquely over corpus targets.
pub fn pushout_is_universal(m1: &FinCpoMap, m2: &FinCpoMap, po: &Pushout, corpus: &Corpus) -> Result<bool> {
    if po.left.after(m1)?.table() != po.right.after(m2)?.table() {
        return Ok(false);
    }
    for t in &corpus.objects {
        let us = hom_enumerate(&po.object, t)?;
        let bs = hom_enumerate(m2.dst(), t)?;
        for a in hom_enumerate(m1.dst(), t)? {
            let am1 = a.after(m1)?;
            for b in &bs {
                if am1.table() != b.after(m2)?.table() {
                    continue;
                }
                let matching = us
                    .iter()
                    .filter(|u| {
                        po.left.table().iter().map(|&y| u.apply(y)).eq(a.table().iter().copied())
                            && po.right.table().iter().map(|&y| u.apply(y)).eq(b.table().iter().copied())
                    })
                    .count();
                if matching != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
