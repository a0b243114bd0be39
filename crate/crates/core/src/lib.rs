#![no_std]
//! Chain-complete posets, computationally.
//!
//! The finite tier works with finite pointed posets ([`FinPoset`]) and the
//! bottom-preserving monotone maps between them ([`FinCpoMap`]): morphism
//! classification, coproducts, coequalizers, pushouts, directed-join
//! closures, the (epi, strong mono) factorization, diagonal fill-ins, and
//! generator checks, each paired with a brute-force categorical oracle in
//! [`oracle`]. [`quotient`] normalizes extremal epimorphisms out of `κ·3`
//! into chains of coequalizers.
//!
//! The symbolic tier ([`symbolic`]) handles countable cpos given by
//! decidable order oracles and parametric chain families, and checks
//! staged closure certificates against them. [`gallery`] builds the
//! standard examples on top of both tiers.
//!
//! The crate is `no_std` and needs only `alloc`.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod classify;
pub mod closure;
pub mod colimit;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod gallery;
pub mod generator;
pub mod map;
pub mod objects;
pub mod oracle;
pub mod poset;
pub mod quotient;
pub mod symbolic;

pub use canon::{canonicalize, CanonicalForm};
pub use classify::{classify, Classification};
pub use closure::{directed_closure, ClosureTrace};
pub use colimit::{coequalizer, cokernel_pair, coproduct, pushout, Coequalizer, CokernelPair, Coproduct, Pushout};
pub use enumerate::enumerate_posets;
pub use error::{Error, Result};
pub use factor::{diagonal_fill, epi_strongmono_factorize, Factorization, Square};
pub use generator::{is_generator, is_strong_generator, separating_morphism};
pub use map::{hom_enumerate, FinCpoMap};
pub use poset::{is_cpo, validate, FinPoset, Poset, RawPoset};
pub use quotient::{find_collapsing_pair, normalize_extremal_epi, quotient_census, QuotientChainTrace};
pub use symbolic::{
    symbolic_closure_verify, symbolic_is_epi, term_leq, validate_symbolic, StageCertificate, SymbolicCpo,
    SymbolicCpoMap, Term,
};
