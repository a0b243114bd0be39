//! Cpo maps between finite pointed posets.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{bit, indices, FinPoset, Mask, CHAIN_ENUMERATION_LIMIT};

/// Largest carrier accepted by [`hom_enumerate`] on either side.
pub const HOM_SIZE_LIMIT: usize = 8;

/// A bottom-preserving monotone map, stored as a table indexed by source
/// element. On finite posets these are exactly the chain-join-preserving maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCpoMap {
    src: Arc<FinPoset>,
    dst: Arc<FinPoset>,
    table: Vec<usize>,
}

impl FinCpoMap {
    pub fn new(src: Arc<FinPoset>, dst: Arc<FinPoset>, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.len() {
            return Err(Error::NotCpoMap(format!("table has {} entries for {} elements", table.len(), src.len())));
        }
        if let Some(&y) = table.iter().find(|&&y| y >= dst.len()) {
            return Err(Error::NotCpoMap(format!("target index {y} out of range")));
        }
        if table[src.bottom()] != dst.bottom() {
            return Err(Error::NotCpoMap(format!(
                "bottom `{}` goes to `{}`",
                src.label(src.bottom()),
                dst.label(table[src.bottom()])
            )));
        }
        for x in 0..src.len() {
            for y in indices(src.order().up_set(x)) {
                if !dst.leq(table[x], table[y]) {
                    return Err(Error::NotCpoMap(format!(
                        "`{}` <= `{}` but `{}` is not below `{}`",
                        src.label(x),
                        src.label(y),
                        dst.label(table[x]),
                        dst.label(table[y])
                    )));
                }
            }
        }
        Ok(FinCpoMap { src, dst, table })
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let table = (0..p.len()).collect();
        FinCpoMap { src: p.clone(), dst: p, table }
    }

    pub fn src(&self) -> &Arc<FinPoset> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinPoset> {
        &self.dst
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinCpoMap) -> Result<FinCpoMap> {
        if !same_object(&first.dst, &self.src) {
            return Err(Error::ShapeMismatch("composite endpoints differ"));
        }
        let table = first.table.iter().map(|&y| self.table[y]).collect();
        Ok(FinCpoMap { src: first.src.clone(), dst: self.dst.clone(), table })
    }

    pub fn image(&self) -> Mask {
        self.table.iter().fold(0, |m, &y| m | bit(y))
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones() as usize == self.src.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.dst.all()
    }

    /// `f(x) <= f(y)` implies `x <= y`.
    pub fn is_order_reflecting(&self) -> bool {
        let n = self.src.len();
        (0..n).all(|x| (0..n).all(|y| !self.dst.leq(self.table[x], self.table[y]) || self.src.leq(x, y)))
    }

    /// `x <= y` iff `f(x) <= f(y)`.
    pub fn is_order_embedding(&self) -> bool {
        self.is_order_reflecting()
    }

    /// The inverse of an order-reflecting bijection.
    pub fn inverse(&self) -> Result<FinCpoMap> {
        if !(self.is_injective() && self.is_surjective() && self.is_order_reflecting()) {
            return Err(Error::NotIsomorphism);
        }
        let mut table = alloc::vec![0; self.dst.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Ok(FinCpoMap { src: self.dst.clone(), dst: self.src.clone(), table })
    }

    /// Exhaustively checks `f(⋁c) = ⋁f[c]` over every chain `c` of the source.
    pub fn preserves_chain_joins(&self) -> Result<bool> {
        let n = self.src.len();
        if n > CHAIN_ENUMERATION_LIMIT {
            return Err(Error::BoundTooLarge { what: "source size", value: n, max: CHAIN_ENUMERATION_LIMIT });
        }
        let order = self.src.order();
        let ext = order.linear_extension();
        let mut stack: Vec<(Mask, usize)> = alloc::vec![(0, 0)];
        while let Some((chain, from)) = stack.pop() {
            let image = indices(chain).fold(0, |m, x| m | bit(self.table[x]));
            let lhs = order.join(chain).map(|j| self.table[j]);
            if lhs.is_none() || lhs != self.dst.order().join(image) {
                return Ok(false);
            }
            for (k, &x) in ext.iter().enumerate().skip(from) {
                if indices(chain).all(|c| order.leq(c, x)) {
                    stack.push((chain | bit(x), k + 1));
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn from_parts_unchecked(src: Arc<FinPoset>, dst: Arc<FinPoset>, table: Vec<usize>) -> Self {
        FinCpoMap { src, dst, table }
    }
}

pub(crate) fn same_object(a: &Arc<FinPoset>, b: &Arc<FinPoset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Every cpo map `src -> dst`, in lexicographic order of tables.
pub fn hom_enumerate(src: &Arc<FinPoset>, dst: &Arc<FinPoset>) -> Result<Vec<FinCpoMap>> {
    for (what, p) in [("source size", src), ("target size", dst)] {
        if p.len() > HOM_SIZE_LIMIT {
            return Err(Error::BoundTooLarge { what, value: p.len(), max: HOM_SIZE_LIMIT });
        }
    }
    let mut out = Vec::new();
    let mut table = alloc::vec![usize::MAX; src.len()];
    extend(src, dst, 0, &mut table, &mut out);
    Ok(out)
}

fn extend(src: &Arc<FinPoset>, dst: &Arc<FinPoset>, x: usize, table: &mut Vec<usize>, out: &mut Vec<FinCpoMap>) {
    if x == src.len() {
        out.push(FinCpoMap { src: src.clone(), dst: dst.clone(), table: table.clone() });
        return;
    }
    for y in 0..dst.len() {
        if x == src.bottom() && y != dst.bottom() {
            continue;
        }
        let fits = (0..x).all(|w| (!src.leq(w, x) || dst.leq(table[w], y)) && (!src.leq(x, w) || dst.leq(y, table[w])));
        if fits {
            table[x] = y;
            extend(src, dst, x + 1, table, out);
        }
    }
    table[x] = usize::MAX;
}
