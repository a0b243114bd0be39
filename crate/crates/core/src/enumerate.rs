//! Pointed posets up to isomorphism.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::canon::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::poset::{bit, indices, FinPoset, Mask};

pub const ENUMERATION_LIMIT: usize = 6;

/// Every pointed poset with exactly `n` elements, one per isomorphism
/// class, ordered by canonical form. Elements are labelled `0..n` in
/// canonical order; names are `P<n>_<k>`.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::BoundTooLarge { what: "enumeration size", value: n, max: ENUMERATION_LIMIT });
    }
    Ok(canonical_forms(n)
        .into_iter()
        .enumerate()
        .map(|(k, form)| FinPoset::pointed(format!("P{n}_{k}"), form.to_poset()).expect("pointed by construction"))
        .collect())
}

/// Grows each `(n-1)`-element form by a new maximal element over each
/// nonempty down-set; every pointed poset arises by deleting a maximal element.
fn canonical_forms(n: usize) -> BTreeSet<CanonicalForm> {
    let mut level = BTreeSet::new();
    if n == 0 {
        return level;
    }
    level.insert(canonicalize(crate::objects::one_point().order()));
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for form in &level {
            let p = form.to_poset();
            let size = p.len();
            for down in 1..(1u64 << size) {
                if !is_down_set(&p, down) {
                    continue;
                }
                let mut up: Vec<Mask> = p.rows().to_vec();
                for x in indices(down) {
                    up[x] |= bit(size);
                }
                up.push(bit(size));
                let labels = (0..=size).map(|i| format!("{i}")).collect();
                let grown = crate::poset::Poset::from_masks_unchecked(labels, up);
                next.insert(canonicalize(&grown));
            }
        }
        level = next;
    }
    level
}

fn is_down_set(p: &crate::poset::Poset, m: Mask) -> bool {
    indices(m).all(|x| p.down_set(x) & !m == 0)
}
