use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A natural number `n >= 1` kept as the bits after its leading `1`.
///
/// Read that way, a code is exactly a finite bit string, and the code of a
/// string is the binary number `1` followed by the string. Numeric order is
/// shortlex order on the strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Code(Vec<bool>);

impl Code {
    pub fn from_bits(bits: &[bool]) -> Self {
        Code(bits.to_vec())
    }

    /// The bit string after the leading `1`.
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Code) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The numeric value, when it fits.
    pub fn value(&self) -> Option<u128> {
        if self.0.len() >= 128 {
            return None;
        }
        Some(self.0.iter().fold(1u128, |v, &b| (v << 1) | b as u128))
    }
}

impl Ord for Code {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Code {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => {
                f.write_str("0b1")?;
                self.0.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
            }
        }
    }
}

/// A natural number or `∞`; `∞` is above every natural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(m) => write!(f, "{m}"),
            Ext::Infinity => f.write_str("inf"),
        }
    }
}

pub type FamilyId = &'static str;
pub type Params = Vec<u64>;

/// Elements of the shipped symbolic cpos. Each cpo accepts only the
/// constructors its signature allows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Bottom,
    Top,
    Atom(Code),
    Pair(Ext, u64),
    /// A formally adjoined join of the chain `family(params)`.
    Join {
        family: FamilyId,
        params: Params,
    },
    /// Element of a lifted finite poset, by index.
    Point(usize),
}

/// Coarse shape of a term; stage predicates are unions of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermClass {
    Bottom,
    Top,
    Atom,
    FinitePair,
    InfinitePair,
    Join(FamilyId),
    Point(usize),
}

impl Term {
    pub fn class(&self) -> TermClass {
        match self {
            Term::Bottom => TermClass::Bottom,
            Term::Top => TermClass::Top,
            Term::Atom(_) => TermClass::Atom,
            Term::Pair(Ext::Finite(_), _) => TermClass::FinitePair,
            Term::Pair(Ext::Infinity, _) => TermClass::InfinitePair,
            Term::Join { family, .. } => TermClass::Join(family),
            Term::Point(i) => TermClass::Point(*i),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Bottom => f.write_str("0"),
            Term::Top => f.write_str("top"),
            Term::Atom(c) => write!(f, "a{c}"),
            Term::Pair(m, n) => write!(f, "({m},{n})"),
            Term::Join { family, params } => {
                write!(f, "x[{family}")?;
                params.iter().try_for_each(|p| write!(f, ",{p}"))?;
                f.write_str("]")
            }
            Term::Point(i) => write!(f, "p{i}"),
        }
    }
}

impl fmt::Display for TermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermClass::Bottom => f.write_str("bottom"),
            TermClass::Top => f.write_str("top"),
            TermClass::Atom => f.write_str("atom"),
            TermClass::FinitePair => f.write_str("finite-pair"),
            TermClass::InfinitePair => f.write_str("infinite-pair"),
            TermClass::Join(id) => write!(f, "join:{id}"),
            TermClass::Point(i) => write!(f, "point:{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_order_is_numeric() {
        let a = Code::from_bits(&[true]); // 3
        let b = Code::from_bits(&[false, false]); // 4
        assert!(a < b);
        assert_eq!(a.value(), Some(3));
        assert_eq!(b.value(), Some(4));
        assert_eq!(Code::default().value(), Some(1));
        let long = Code::from_bits(&[true; 130]);
        assert!(alloc::format!("{long}").starts_with("0b1"));
    }

    #[test]
    fn ext_order() {
        assert!(Ext::Finite(u64::MAX) < Ext::Infinity);
    }
}
