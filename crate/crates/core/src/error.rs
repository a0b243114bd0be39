use alloc::string::String;
use core::fmt;

/// Errors raised by finite and symbolic constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The cover relation contains a directed cycle.
    CycleDetected {
        label: String,
    },
    /// The declared bottom is not below some element.
    NoBottom {
        bottom: String,
        witness: String,
    },
    DuplicateElement(String),
    /// A relation table fails reflexivity, antisymmetry or transitivity.
    NotPartialOrder(String),
    UnknownElement(String),
    /// A size or count exceeds what the brute-force routines accept.
    BoundTooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },
    /// A table does not describe a bottom-preserving monotone map.
    NotCpoMap(String),
    /// Two maps were composed or paired with mismatched endpoints.
    ShapeMismatch(&'static str),
    NotCommuting,
    NotProperSubobject,
    NotExtremalEpi,
    NotIsomorphism,
    NotEventuallyConstant,
    /// The source of a normalization run is not a coproduct of copies of `3`.
    NotKappaThree,
    IllFormedTerm(String),
    /// A refutation omits one of the declared chain families.
    CertificateGap {
        term: String,
        family: String,
    },
    WitnessInvalid(String),
    StageMismatch(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CycleDetected { label } => write!(f, "cover relation has a cycle through `{label}`"),
            Error::NoBottom { bottom, witness } => {
                write!(f, "declared bottom `{bottom}` is not below `{witness}`")
            }
            Error::DuplicateElement(l) => write!(f, "duplicate element `{l}`"),
            Error::NotPartialOrder(why) => write!(f, "not a partial order: {why}"),
            Error::UnknownElement(l) => write!(f, "unknown element `{l}`"),
            Error::BoundTooLarge { what, value, max } => {
                write!(f, "{what} = {value} exceeds the supported bound {max}")
            }
            Error::NotCpoMap(why) => write!(f, "not a cpo map: {why}"),
            Error::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            Error::NotCommuting => f.write_str("square does not commute"),
            Error::NotProperSubobject => f.write_str("map is not a proper subobject"),
            Error::NotExtremalEpi => f.write_str("map is not an extremal epimorphism"),
            Error::NotIsomorphism => f.write_str("map is not an isomorphism"),
            Error::NotEventuallyConstant => f.write_str("chain is not eventually constant"),
            Error::NotKappaThree => f.write_str("source is not a coproduct of copies of 3"),
            Error::IllFormedTerm(t) => write!(f, "ill-formed term {t}"),
            Error::CertificateGap { term, family } => {
                write!(f, "refutation for {term} does not cover family `{family}`")
            }
            Error::WitnessInvalid(why) => write!(f, "invalid witness: {why}"),
            Error::StageMismatch(why) => write!(f, "stage mismatch: {why}"),
        }
    }
}

impl core::error::Error for Error {}
