//! Canonical forms: isomorphism-invariant encodings of finite posets.
//!
//! Elements are first split into classes by iterated colour refinement
//! (height, down-set size, up-set size, then the multisets of neighbouring
//! colours). Every ordering that lists the classes in colour order is then
//! tried exhaustively and the lexicographically least order matrix wins.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::poset::{bit, indices, FinPoset, Mask, Poset};

/// Order matrix of a poset under its canonical element ordering.
///
/// Two posets are isomorphic iff their canonical forms are equal. The
/// derived ordering (size first, then rows) is the corpus ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    size: usize,
    rows: Vec<Mask>,
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    /// The canonical representative, labelled `0..size`.
    pub fn to_poset(&self) -> Poset {
        let labels = (0..self.size).map(|i| i.to_string()).collect();
        Poset::from_masks_unchecked(labels, self.rows.clone())
    }
}

/// Canonical form together with the ordering that produced it:
/// `order[p]` is the original index placed at canonical position `p`.
pub fn canonical_ordering(p: &Poset) -> (CanonicalForm, Vec<usize>) {
    let n = p.len();
    let colors = refine_colors(p);
    let mut base: Vec<usize> = (0..n).collect();
    base.sort_by_key(|&i| (colors[i], i));
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || colors[base[k]] != colors[base[start]] {
            blocks.push((start, k));
            start = k;
        }
    }

    let mut best: Option<(Vec<Mask>, Vec<usize>)> = None;
    let mut current = base.clone();
    permute_blocks(&blocks, 0, &mut current, &mut |order| {
        let rows = encode(p, order);
        if best.as_ref().is_none_or(|(b, _)| rows < *b) {
            best = Some((rows, order.to_vec()));
        }
    });
    let (rows, order) = best.unwrap_or_default();
    (CanonicalForm { size: n, rows }, order)
}

pub fn canonicalize(p: &Poset) -> CanonicalForm {
    canonical_ordering(p).0
}

/// The canonical relabelling of a pointed poset: elements `0..len` in
/// canonical order, name kept.
pub fn canonical_poset(p: &FinPoset) -> FinPoset {
    let form = canonicalize(p.order());
    FinPoset::pointed(p.name(), form.to_poset()).expect("canonical relabelling keeps the least element")
}

pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && canonicalize(a) == canonicalize(b)
}

fn encode(p: &Poset, order: &[usize]) -> Vec<Mask> {
    let mut pos = alloc::vec![0usize; order.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    order.iter().map(|&i| indices(p.up_set(i)).fold(0, |m, j| m | bit(pos[j]))).collect()
}

fn permute_blocks(blocks: &[(usize, usize)], b: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if b == blocks.len() {
        visit(cur);
        return;
    }
    let (lo, hi) = blocks[b];
    permute_range(blocks, b, lo, hi, cur, visit);
}

fn permute_range(
    blocks: &[(usize, usize)],
    b: usize,
    k: usize,
    hi: usize,
    cur: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if k + 1 >= hi {
        permute_blocks(blocks, b + 1, cur, visit);
        return;
    }
    for j in k..hi {
        cur.swap(k, j);
        permute_range(blocks, b, k + 1, hi, cur, visit);
        cur.swap(k, j);
    }
}

fn refine_colors(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let heights = p.heights();
    let initial: Vec<(usize, u32, u32)> =
        (0..n).map(|i| (heights[i], p.down_set(i).count_ones(), p.up_set(i).count_ones())).collect();
    let mut colors = rank(&initial);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut ups: Vec<usize> = indices(p.up_set(i) & !bit(i)).map(|j| colors[j]).collect();
                let mut downs: Vec<usize> = indices(p.down_set(i) & !bit(i)).map(|j| colors[j]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                (colors[i], ups, downs)
            })
            .collect();
        let next = rank(&sigs);
        let distinct = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if distinct(&next) == distinct(&colors) {
            return next;
        }
        colors = next;
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    for k in keys {
        ids.insert(k.clone(), 0usize);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    keys.iter().map(|k| ids[k]).collect()
}
