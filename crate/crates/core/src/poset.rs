//! Finite posets stored as bit-matrix order relations.
//!
//! Elements are indexed `0..len` in declaration order; row `i` of the
//! relation is a bitmask of everything above `i` (including `i`).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest carrier size representable with one `u64` row per element.
pub const MAX_ELEMENTS: usize = 64;

/// Largest carrier on which [`is_cpo`] enumerates chains directly.
pub const CHAIN_ENUMERATION_LIMIT: usize = 20;

pub type Mask = u64;

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn indices(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A finite partially ordered set, not necessarily with a least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<Mask>,
}

impl Poset {
    /// Builds a poset from a full order table, checking the partial-order laws.
    pub fn from_leq(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        check_size(n)?;
        check_labels(&labels)?;
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotPartialOrder("table is not square".into()));
        }
        let up =
            leq.iter().map(|row| row.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (j, _)| m | bit(j))).collect();
        let p = Poset { labels, up };
        p.check_laws()?;
        Ok(p)
    }

    /// Builds a poset whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        check_size(n)?;
        check_labels(&labels)?;
        let mut up: Vec<Mask> = (0..n).map(bit).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("index {}", a.max(b))));
            }
            if a == b {
                return Err(Error::CycleDetected { label: labels[a].clone() });
            }
            up[a] |= bit(b);
        }
        close_transitively(&mut up);
        for i in 0..n {
            for j in indices(up[i]) {
                if j != i && up[j] & bit(i) != 0 {
                    return Err(Error::CycleDetected { label: labels[i].clone() });
                }
            }
        }
        Ok(Poset { labels, up })
    }

    pub(crate) fn from_masks_unchecked(labels: Vec<String>, up: Vec<Mask>) -> Self {
        debug_assert_eq!(labels.len(), up.len());
        Poset { labels, up }
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotPartialOrder(format!("`{}` is not below itself", self.labels[i])));
            }
            for j in indices(self.up[i]) {
                if i != j && self.leq(j, i) {
                    return Err(Error::NotPartialOrder(format!(
                        "`{}` and `{}` are mutually below each other",
                        self.labels[i], self.labels[j]
                    )));
                }
                if self.up[j] & !self.up[i] != 0 {
                    return Err(Error::NotPartialOrder(format!("transitivity fails through `{}`", self.labels[j])));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] & bit(b) != 0
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Mask of the elements above `a`, `a` included.
    pub fn up_set(&self, a: usize) -> Mask {
        self.up[a]
    }

    /// Mask of the elements below `a`, `a` included.
    pub fn down_set(&self, a: usize) -> Mask {
        (0..self.len()).filter(|&x| self.leq(x, a)).fold(0, |m, x| m | bit(x))
    }

    pub fn all(&self) -> Mask {
        full_mask(self.len())
    }

    /// The least element, if there is one.
    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i] == self.all())
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        self.up[a] == bit(a)
    }

    /// Common upper bounds of every element in `subset`.
    pub fn upper_bounds(&self, subset: Mask) -> Mask {
        indices(subset).fold(self.all(), |m, i| m & self.up[i])
    }

    /// Least upper bound of `subset`; the empty subset's join is the least element.
    pub fn join(&self, subset: Mask) -> Option<usize> {
        let ub = self.upper_bounds(subset);
        indices(ub).find(|&c| ub & !self.up[c] == 0)
    }

    pub fn is_chain(&self, subset: Mask) -> bool {
        let v: Vec<usize> = indices(subset).collect();
        v.iter().enumerate().all(|(k, &a)| v[k + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Nonempty and every pair has an upper bound inside the subset.
    pub fn is_directed(&self, subset: Mask) -> bool {
        if subset == 0 {
            return false;
        }
        let v: Vec<usize> = indices(subset).collect();
        v.iter().enumerate().all(|(k, &a)| v[k..].iter().all(|&b| self.up[a] & self.up[b] & subset != 0))
    }

    /// Pairs `(a, b)` with `b` covering `a`: the transitive reduction.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let strict = self.up[a] & !bit(a);
            for b in indices(strict) {
                let between = strict & !bit(b) & self.down_set(b);
                if between == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain ending at each element, minus one.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut h = alloc::vec![0usize; n];
        for a in self.linear_extension() {
            for b in indices(self.up[a] & !bit(a)) {
                h[b] = h[b].max(h[a] + 1);
            }
        }
        h
    }

    /// Elements sorted so every element precedes the elements above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&i| (self.down_set(i).count_ones(), i));
        v
    }

    /// The poset carried by `subset`, with inherited order and labels.
    pub fn induced(&self, subset: Mask) -> Poset {
        let keep: Vec<usize> = indices(subset).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let up = keep
            .iter()
            .map(|&i| keep.iter().enumerate().filter(|(_, &j)| self.leq(i, j)).fold(0, |m, (k, _)| m | bit(k)))
            .collect();
        Poset { labels, up }
    }

    /// Moves element `i` to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        let mut labels = alloc::vec![String::new(); n];
        let mut up = alloc::vec![0; n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            up[perm[i]] = indices(self.up[i]).fold(0, |m, j| m | bit(perm[j]));
        }
        Poset { labels, up }
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(Error::ShapeMismatch("label count"));
        }
        check_labels(&labels)?;
        Ok(Poset { labels, up: self.up.clone() })
    }

    pub(crate) fn rows(&self) -> &[Mask] {
        &self.up
    }
}

pub(crate) fn close_transitively(up: &mut [Mask]) {
    let n = up.len();
    for k in 0..n {
        for i in 0..n {
            if up[i] & bit(k) != 0 {
                up[i] |= up[k];
            }
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(Error::BoundTooLarge { what: "poset size", value: n, max: MAX_ELEMENTS });
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(())
}

/// A finite poset with a declared least element: a finite object of CPO.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    name: String,
    order: Poset,
    bottom: usize,
}

/// An unvalidated poset description, as read from a file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawPoset {
    pub name: String,
    pub elements: Vec<String>,
    pub bottom: String,
    pub covers: Vec<(String, String)>,
}

/// Validates a raw description: the order is the reflexive-transitive
/// closure of the covers and the declared bottom must be least.
pub fn validate(raw: &RawPoset) -> Result<FinPoset> {
    check_labels(&raw.elements)?;
    let lookup = |l: &str| raw.elements.iter().position(|e| e == l).ok_or_else(|| Error::UnknownElement(l.to_string()));
    let covers = raw.covers.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
    let order = Poset::from_covers(raw.elements.clone(), &covers)?;
    let bottom = lookup(&raw.bottom)?;
    FinPoset::new(raw.name.clone(), order, bottom)
}

impl FinPoset {
    pub fn new(name: impl Into<String>, order: Poset, bottom: usize) -> Result<Self> {
        if bottom >= order.len() {
            return Err(Error::UnknownElement(format!("index {bottom}")));
        }
        if let Some(w) = (0..order.len()).find(|&x| !order.leq(bottom, x)) {
            return Err(Error::NoBottom { bottom: order.label(bottom).into(), witness: order.label(w).into() });
        }
        Ok(FinPoset { name: name.into(), order, bottom })
    }

    /// Wraps a poset that has a least element.
    pub fn pointed(name: impl Into<String>, order: Poset) -> Result<Self> {
        let name = name.into();
        match order.least() {
            Some(b) => FinPoset::new(name, order, b),
            None => Err(Error::NoBottom { bottom: String::new(), witness: name }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> FinPoset {
        FinPoset { name: name.into(), ..self.clone() }
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn label(&self, i: usize) -> &str {
        self.order.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.order.labels()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.order.index_of(label)
    }

    pub fn all(&self) -> Mask {
        self.order.all()
    }

    /// Same order, elements relabelled `0..len` by index.
    pub fn with_index_labels(&self) -> FinPoset {
        let labels = (0..self.len()).map(|i| i.to_string()).collect();
        FinPoset { name: self.name.clone(), order: Poset { labels, up: self.order.up.clone() }, bottom: self.bottom }
    }

    pub fn induced(&self, name: impl Into<String>, subset: Mask) -> Result<FinPoset> {
        FinPoset::pointed(name, self.order.induced(subset))
    }
}

/// Outcome of the chain-completeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpoVerdict {
    /// Every chain (the empty one included) has a join; `None` past
    /// [`CHAIN_ENUMERATION_LIMIT`].
    pub by_chains: Option<bool>,
    /// A least element exists.
    pub by_least_element: bool,
    pub explanation: String,
}

impl CpoVerdict {
    pub fn is_cpo(&self) -> bool {
        self.by_chains.unwrap_or(self.by_least_element)
    }

    pub fn routes_agree(&self) -> bool {
        self.by_chains.is_none_or(|c| c == self.by_least_element)
    }
}

/// Decides chain-completeness both by enumerating every chain and by the
/// least-element shortcut.
pub fn is_cpo(p: &Poset) -> CpoVerdict {
    let by_least_element = p.least().is_some();
    let mut failing: Option<Mask> = None;
    let by_chains = if p.len() <= CHAIN_ENUMERATION_LIMIT {
        let order = p.linear_extension();
        let mut ok = true;
        // DFS over chains built along a linear extension.
        let mut stack: Vec<(Mask, usize)> = alloc::vec![(0, 0)];
        while let Some((chain, from)) = stack.pop() {
            if p.join(chain).is_none() {
                ok = false;
                failing = Some(chain);
                break;
            }
            for (k, &x) in order.iter().enumerate().skip(from) {
                if indices(chain).all(|c| p.leq(c, x)) {
                    stack.push((chain | bit(x), k + 1));
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    let explanation = match (failing, by_least_element) {
        (Some(0), _) => "the empty chain has no join: no least element".into(),
        (Some(c), _) => {
            let names: Vec<&str> = indices(c).map(|i| p.label(i)).collect();
            format!("chain {{{}}} has no join", names.join(","))
        }
        (None, true) => format!("least element `{}`; every chain has a join", p.label(p.least().unwrap_or(0))),
        (None, false) => "no least element".into(),
    };
    CpoVerdict { by_chains, by_least_element, explanation }
}
