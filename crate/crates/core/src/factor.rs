//! The (epi, strong mono) factorization and diagonal fill-ins.

use alloc::sync::Arc;

use crate::closure::directed_closure;
use crate::error::{Error, Result};
use crate::map::{hom_enumerate, same_object, FinCpoMap};
use crate::poset::indices;

/// `f = mono_part ∘ epi_part` through the directed-join closure of the image.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub original: FinCpoMap,
    pub epi_part: FinCpoMap,
    pub mono_part: FinCpoMap,
}

impl Factorization {
    pub fn mid(&self) -> &Arc<crate::poset::FinPoset> {
        self.epi_part.dst()
    }
}

/// Factors `f: A -> B` through `C`, the closure of `f[A]` with the order
/// inherited from `B`: `e` is the codomain restriction, `m` the inclusion.
pub fn epi_strongmono_factorize(f: &FinCpoMap) -> Result<Factorization> {
    let b = f.dst();
    let carrier = directed_closure(b, f.image()).closure();
    let mid = Arc::new(b.induced(alloc::format!("{}_img", b.name()), carrier)?);
    let members: alloc::vec::Vec<usize> = indices(carrier).collect();
    let pos = |y: usize| members.iter().position(|&m| m == y).expect("image lies in the closure");
    let e_table = f.table().iter().map(|&y| pos(y)).collect();
    let epi_part = FinCpoMap::new(f.src().clone(), mid.clone(), e_table)?;
    let mono_part = FinCpoMap::new(mid, b.clone(), members)?;
    Ok(Factorization { original: f.clone(), epi_part, mono_part })
}

/// A square `m ∘ u = v ∘ e` with `u: A -> C`, `e: A -> B`, `m: C -> D`, `v: B -> D`.
#[derive(Debug, Clone)]
pub struct Square {
    pub u: FinCpoMap,
    pub e: FinCpoMap,
    pub m: FinCpoMap,
    pub v: FinCpoMap,
}

impl Square {
    pub fn commutes(&self) -> bool {
        match (self.m.after(&self.u), self.v.after(&self.e)) {
            (Ok(a), Ok(b)) => a.table() == b.table(),
            _ => false,
        }
    }
}

/// Searches `hom(B, C)` for `d` with `d ∘ e = u` and `m ∘ d = v`; `Ok(None)`
/// means no diagonal exists.
pub fn diagonal_fill(sq: &Square) -> Result<Option<FinCpoMap>> {
    let shapes = same_object(sq.u.src(), sq.e.src())
        && same_object(sq.u.dst(), sq.m.src())
        && same_object(sq.e.dst(), sq.v.src())
        && same_object(sq.m.dst(), sq.v.dst());
    if !shapes {
        return Err(Error::ShapeMismatch("square endpoints"));
    }
    if !sq.commutes() {
        return Err(Error::NotCommuting);
    }
    for d in hom_enumerate(sq.e.dst(), sq.u.dst())? {
        let upper = d.after(&sq.e)?;
        let lower = sq.m.after(&d)?;
        if upper.table() == sq.u.table() && lower.table() == sq.v.table() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
