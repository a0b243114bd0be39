//! Finite colimits: coproducts, coequalizers, pushouts, cokernel pairs.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::{same_object, FinCpoMap};
use crate::poset::{bit, close_transitively, indices, FinPoset, Mask, Poset, MAX_ELEMENTS};

/// Disjoint union with all bottoms identified, plus the injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: Arc<FinPoset>,
    pub injections: Vec<FinCpoMap>,
}

/// Builds the coproduct. The shared bottom is labelled `0`; the other
/// elements of part `i` are labelled `i.<label>`.
pub fn coproduct(parts: &[FinPoset]) -> Result<Coproduct> {
    let arcs: Vec<Arc<FinPoset>> = parts.iter().cloned().map(Arc::new).collect();
    coproduct_of(&arcs)
}

pub fn coproduct_of(parts: &[Arc<FinPoset>]) -> Result<Coproduct> {
    if parts.is_empty() {
        return Err(Error::ShapeMismatch("coproduct of an empty list"));
    }
    let size = 1 + parts.iter().map(|p| p.len() - 1).sum::<usize>();
    if size > MAX_ELEMENTS {
        return Err(Error::BoundTooLarge { what: "coproduct size", value: size, max: MAX_ELEMENTS });
    }
    let mut labels = alloc::vec![String::from("0")];
    let mut tables = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        let mut t = alloc::vec![0usize; p.len()];
        for x in (0..p.len()).filter(|&x| x != p.bottom()) {
            t[x] = labels.len();
            labels.push(format!("{i}.{}", p.label(x)));
        }
        tables.push(t);
    }
    let mut up: Vec<Mask> = alloc::vec![0; size];
    up[0] = crate::poset::full_mask(size);
    for (p, t) in parts.iter().zip(&tables) {
        for x in (0..p.len()).filter(|&x| x != p.bottom()) {
            up[t[x]] = indices(p.order().up_set(x)).fold(0, |m, y| m | bit(t[y]));
        }
    }
    let name = parts.iter().map(|p| p.name()).collect::<Vec<_>>().join("+");
    let object = Arc::new(FinPoset::new(name, Poset::from_masks_unchecked(labels, up), 0)?);
    let injections =
        parts.iter().zip(tables).map(|(p, t)| FinCpoMap::from_parts_unchecked(p.clone(), object.clone(), t)).collect();
    Ok(Coproduct { object, injections })
}

impl Coproduct {
    /// The unique map out of the coproduct restricting to `legs[i]` on part `i`.
    pub fn mediate(&self, legs: &[FinCpoMap]) -> Result<FinCpoMap> {
        if legs.len() != self.injections.len() {
            return Err(Error::ShapeMismatch("one leg per coproduct part"));
        }
        let target = legs[0].dst().clone();
        let mut table = alloc::vec![usize::MAX; self.object.len()];
        for (inj, leg) in self.injections.iter().zip(legs) {
            if !same_object(inj.src(), leg.src()) || !same_object(leg.dst(), &target) {
                return Err(Error::ShapeMismatch("leg endpoints"));
            }
            for (x, &y) in inj.table().iter().enumerate() {
                table[y] = leg.apply(x);
            }
        }
        FinCpoMap::new(self.object.clone(), target, table)
    }
}

/// The quotient map `q: B -> Q` of a coequalizer, with the classes of `B`.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub quotient: FinCpoMap,
    /// `classes[k]` is the set of elements of `B` sent to element `k` of `Q`.
    pub classes: Vec<Mask>,
    /// Number of collapse rounds until the quotient preorder was antisymmetric.
    pub rounds: usize,
}

impl Coequalizer {
    pub fn object(&self) -> &Arc<FinPoset> {
        self.quotient.dst()
    }

    /// The unique `u: Q -> T` with `u ∘ q = h`, for `h` constant on classes.
    pub fn mediate(&self, h: &FinCpoMap) -> Result<FinCpoMap> {
        if !same_object(h.src(), self.quotient.src()) {
            return Err(Error::ShapeMismatch("mediated map must start at the coequalizer target"));
        }
        let mut table = Vec::with_capacity(self.classes.len());
        for &class in &self.classes {
            let mut values = indices(class).map(|x| h.apply(x));
            let v = values.next().expect("classes are nonempty");
            if values.any(|w| w != v) {
                return Err(Error::NotCommuting);
            }
            table.push(v);
        }
        FinCpoMap::new(self.object().clone(), h.dst().clone(), table)
    }
}

/// Coequalizer of a parallel pair `f, g: A -> B`.
///
/// Start from the equivalence generated by `f(a) ~ g(a)`; order the classes
/// by the transitive closure of the induced relation; merge classes lying
/// on a common cycle; repeat until the induced preorder is antisymmetric.
pub fn coequalizer(f: &FinCpoMap, g: &FinCpoMap) -> Result<Coequalizer> {
    if !same_object(f.src(), g.src()) || !same_object(f.dst(), g.dst()) {
        return Err(Error::ShapeMismatch("coequalizer needs a parallel pair"));
    }
    let b = f.dst();
    let pairs: Vec<(usize, usize)> = f.table().iter().copied().zip(g.table().iter().copied()).collect();
    Ok(quotient_by_pairs(b, &pairs))
}

/// Quotient of `b` by the least equivalence containing `pairs` whose
/// induced preorder is a partial order.
pub(crate) fn quotient_by_pairs(b: &Arc<FinPoset>, pairs: &[(usize, usize)]) -> Coequalizer {
    let n = b.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(x, y) in pairs {
        union(&mut parent, x, y);
    }
    let mut rounds = 0;
    let (classes, up) = loop {
        rounds += 1;
        let classes = classes_of(&mut parent);
        let k = classes.len();
        let mut up: Vec<Mask> = alloc::vec![0; k];
        for (c, &cm) in classes.iter().enumerate() {
            up[c] |= bit(c);
            for x in indices(cm) {
                for (d, &dm) in classes.iter().enumerate() {
                    if b.order().up_set(x) & dm != 0 {
                        up[c] |= bit(d);
                    }
                }
            }
        }
        close_transitively(&mut up);
        let mut merged = false;
        for c in 0..k {
            for d in indices(up[c]) {
                if d != c && up[d] & bit(c) != 0 {
                    let (x, y) = (classes[c].trailing_zeros() as usize, classes[d].trailing_zeros() as usize);
                    merged |= union(&mut parent, x, y);
                }
            }
        }
        if !merged {
            break (classes, up);
        }
    };
    let labels: Vec<String> =
        classes.iter().map(|&m| indices(m).map(|x| b.label(x)).collect::<Vec<_>>().join("|")).collect();
    let mut table = alloc::vec![0; n];
    for (c, &m) in classes.iter().enumerate() {
        for x in indices(m) {
            table[x] = c;
        }
    }
    let bottom = table[b.bottom()];
    let q_obj = FinPoset::new(format!("{}_q", b.name()), Poset::from_masks_unchecked(labels, up), bottom)
        .expect("the bottom class stays least");
    let quotient = FinCpoMap::from_parts_unchecked(b.clone(), Arc::new(q_obj), table);
    debug_assert!(FinCpoMap::new(quotient.src().clone(), quotient.dst().clone(), quotient.table().to_vec()).is_ok());
    Coequalizer { quotient, classes, rounds }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], x: usize, y: usize) -> bool {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx == ry {
        return false;
    }
    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
    parent[hi] = lo;
    true
}

/// Classes ordered by least member.
fn classes_of(parent: &mut [usize]) -> Vec<Mask> {
    let n = parent.len();
    let mut roots: Vec<usize> = Vec::new();
    let mut masks: Vec<Mask> = Vec::new();
    for x in 0..n {
        let r = find(parent, x);
        match roots.iter().position(|&s| s == r) {
            Some(k) => masks[k] |= bit(x),
            None => {
                roots.push(r);
                masks.push(bit(x));
            }
        }
    }
    masks
}

/// A pushout square completed by `left: B1 -> D` and `right: B2 -> D`.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: Arc<FinPoset>,
    pub left: FinCpoMap,
    pub right: FinCpoMap,
    coproduct: Coproduct,
    coequalizer: Coequalizer,
}

impl Pushout {
    /// The unique `u: D -> T` with `u ∘ left = a` and `u ∘ right = b`.
    pub fn mediate(&self, a: &FinCpoMap, b: &FinCpoMap) -> Result<FinCpoMap> {
        let through = self.coproduct.mediate(&[a.clone(), b.clone()])?;
        self.coequalizer.mediate(&through)
    }
}

/// Pushout of `m1: C -> B1` and `m2: C -> B2`, as the coequalizer of the
/// two injections into `B1 + B2` precomposed with `m1` and `m2`.
pub fn pushout(m1: &FinCpoMap, m2: &FinCpoMap) -> Result<Pushout> {
    if !same_object(m1.src(), m2.src()) {
        return Err(Error::ShapeMismatch("pushout needs a shared source"));
    }
    let cop = coproduct_of(&[m1.dst().clone(), m2.dst().clone()])?;
    let a = cop.injections[0].after(m1)?;
    let b = cop.injections[1].after(m2)?;
    let coeq = coequalizer(&a, &b)?;
    let object = coeq.object().clone();
    let left = coeq.quotient.after(&cop.injections[0])?;
    let right = coeq.quotient.after(&cop.injections[1])?;
    Ok(Pushout { object, left, right, coproduct: cop, coequalizer: coeq })
}

/// Pushout of a map along itself.
#[derive(Debug, Clone)]
pub struct CokernelPair {
    pub of: FinCpoMap,
    pub pushout: Pushout,
}

impl CokernelPair {
    pub fn object(&self) -> &Arc<FinPoset> {
        &self.pushout.object
    }

    pub fn legs(&self) -> (&FinCpoMap, &FinCpoMap) {
        (&self.pushout.left, &self.pushout.right)
    }

    pub fn legs_equal(&self) -> bool {
        self.pushout.left.table() == self.pushout.right.table()
    }

    /// Elements of the codomain where the two legs disagree.
    pub fn disagreement(&self) -> Mask {
        let (g, h) = self.legs();
        (0..g.table().len()).filter(|&x| g.apply(x) != h.apply(x)).fold(0, |m, x| m | bit(x))
    }
}

pub fn cokernel_pair(m: &FinCpoMap) -> Result<CokernelPair> {
    Ok(CokernelPair { of: m.clone(), pushout: pushout(m, m)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::objects::{chain, kappa_three, one_point, two_atoms};

    fn arc(p: FinPoset) -> Arc<FinPoset> {
        Arc::new(p)
    }

    #[test]
    fn coproduct_sizes() {
        let c = coproduct(&[chain(3), chain(3)]).unwrap();
        assert_eq!(c.object.len(), 5);
        for inj in &c.injections {
            assert!(inj.is_order_embedding());
        }
        let single = coproduct(&[two_atoms()]).unwrap();
        assert!(isomorphic(single.object.order(), two_atoms().order()));
        let twos = coproduct(&[chain(2), chain(2)]).unwrap();
        assert!(isomorphic(twos.object.order(), two_atoms().order()));
        assert_eq!(kappa_three(3).label(1), "0.1");
    }

    #[test]
    fn coequalizer_of_equal_pair_is_iso() {
        let b = arc(chain(3));
        let f = FinCpoMap::new(arc(chain(2)), b.clone(), alloc::vec![0, 1]).unwrap();
        let q = coequalizer(&f, &f).unwrap();
        assert!(q.quotient.inverse().is_ok());
    }

    #[test]
    fn coequalizer_merges_top_of_chain() {
        let two = arc(chain(2));
        let three = arc(chain(3));
        let f = FinCpoMap::new(two.clone(), three.clone(), alloc::vec![0, 1]).unwrap();
        let g = FinCpoMap::new(two, three, alloc::vec![0, 2]).unwrap();
        let q = coequalizer(&f, &g).unwrap();
        assert!(isomorphic(q.object().order(), chain(2).order()));
        assert_eq!(q.quotient.table(), &[0, 1, 1]);
    }

    #[test]
    fn coequalizer_collapses_cycles() {
        // Identifying 0 with 2 in the chain 3 squeezes 1 in as well.
        let two = arc(chain(2));
        let three = arc(chain(3));
        let f = FinCpoMap::new(two.clone(), three.clone(), alloc::vec![0, 0]).unwrap();
        let g = FinCpoMap::new(two, three, alloc::vec![0, 2]).unwrap();
        let q = coequalizer(&f, &g).unwrap();
        assert!(isomorphic(q.object().order(), one_point().order()));
    }

    #[test]
    fn coequalizer_of_atoms() {
        let two = arc(chain(2));
        let a = arc(two_atoms());
        let f = FinCpoMap::new(two.clone(), a.clone(), alloc::vec![0, 1]).unwrap();
        let g = FinCpoMap::new(two, a, alloc::vec![0, 2]).unwrap();
        let q = coequalizer(&f, &g).unwrap();
        assert!(isomorphic(q.object().order(), chain(2).order()));
        assert_eq!(q.object().label(1), "1|2");
    }

    #[test]
    fn cokernel_pair_of_identity_and_inclusion() {
        let b = arc(chain(3));
        let cp = cokernel_pair(&FinCpoMap::identity(b.clone())).unwrap();
        assert!(cp.legs_equal());
        assert!(isomorphic(cp.object().order(), b.order()));

        let incl = FinCpoMap::new(arc(chain(2)), b, alloc::vec![0, 1]).unwrap();
        let cp = cokernel_pair(&incl).unwrap();
        assert!(!cp.legs_equal());
        assert_eq!(cp.disagreement(), 0b100);
    }
}
