//! Classification of finite cpo maps by their order-theoretic characterizations.

use core::fmt;

use crate::closure::directed_closure;
use crate::map::FinCpoMap;
use crate::poset::{close_transitively, indices, Mask};

/// Which of the six morphism classes a map belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
    pub strong_mono: bool,
    pub strong_epi: bool,
    pub extremal_epi: bool,
}

/// Classifies `f`.
///
/// * mono: injective.
/// * iso: order-reflecting bijection.
/// * strong mono: order-embedding.
/// * epi: the directed-join closure of the image is the whole codomain.
/// * extremal epi: epi, and no proper mono into the codomain carries a
///   factorization of `f`. Any such mono contains the image, hence (the
///   image being everything) is a bijection onto the codomain whose source
///   order lies between the order generated by the image and the codomain
///   order. So `f` is extremal iff the codomain order is exactly the
///   transitive closure of `{(f x, f y) : x <= y}`.
/// * strong epi: equal to extremal epi; the diagonal-fill definition is
///   checked separately by the oracles.
pub fn classify(f: &FinCpoMap) -> Classification {
    let mono = f.is_injective();
    let reflecting = f.is_order_reflecting();
    let surjective = f.is_surjective();
    let epi = directed_closure(f.dst(), f.image()).closure() == f.dst().all();
    let extremal_epi = epi && generated_order(f) == codomain_rows(f);
    Classification {
        mono,
        epi,
        iso: mono && surjective && reflecting,
        strong_mono: reflecting,
        strong_epi: extremal_epi,
        extremal_epi,
    }
}

fn codomain_rows(f: &FinCpoMap) -> alloc::vec::Vec<Mask> {
    let d = f.dst();
    (0..d.len()).map(|y| d.order().up_set(y)).collect()
}

/// Reflexive-transitive closure of the image of the source order.
fn generated_order(f: &FinCpoMap) -> alloc::vec::Vec<Mask> {
    let d = f.dst();
    let mut up: alloc::vec::Vec<Mask> = (0..d.len()).map(|y| 1 << y).collect();
    for x in 0..f.src().len() {
        for y in indices(f.src().order().up_set(x)) {
            up[f.apply(x)] |= 1 << f.apply(y);
        }
    }
    close_transitively(&mut up);
    up
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mono={} epi={} iso={} strong_mono={} strong_epi={} extremal_epi={}",
            self.mono, self.epi, self.iso, self.strong_mono, self.strong_epi, self.extremal_epi
        )
    }
}
