//! Small named cpos used throughout.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::colimit::coproduct;
use crate::poset::{FinPoset, Poset};

/// The chain `0 < 1 < ... < n-1`, named `n`.
pub fn chain(n: usize) -> FinPoset {
    assert!(n >= 1, "a cpo has at least its bottom");
    let labels = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let order = Poset::from_covers(labels, &covers).expect("chain covers are acyclic");
    FinPoset::new(n.to_string(), order, 0).expect("0 is least in a chain")
}

pub fn one_point() -> FinPoset {
    chain(1)
}

/// Bottom `0` with two incomparable elements `1` and `2`, named `A`.
pub fn two_atoms() -> FinPoset {
    let labels = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    let order = Poset::from_covers(labels, &[(0, 1), (0, 2)]).expect("acyclic");
    FinPoset::new("A", order, 0).expect("0 is least")
}

/// Bottom, two incomparable middles, and a top.
pub fn diamond() -> FinPoset {
    let labels = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
    let order = Poset::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("acyclic");
    FinPoset::new("diamond", order, 0).expect("0 is least")
}

/// The coproduct of `kappa` copies of the chain `3`; the one-point cpo
/// when `kappa` is zero.
pub fn kappa_three(kappa: usize) -> FinPoset {
    copies(kappa, 3)
}

/// The coproduct of `kappa` copies of the chain `2`.
pub fn kappa_two(kappa: usize) -> FinPoset {
    copies(kappa, 2)
}

fn copies(kappa: usize, n: usize) -> FinPoset {
    let name = format!("{kappa}x{n}");
    if kappa == 0 {
        return one_point().renamed(name);
    }
    let parts: Vec<FinPoset> = (0..kappa).map(|_| chain(n)).collect();
    coproduct(&parts).expect("nonempty").object.renamed(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(chain(3).len(), 3);
        assert_eq!(kappa_three(0).len(), 1);
        for k in 1..=3 {
            assert_eq!(kappa_three(k).len(), 2 * k + 1);
        }
        assert_eq!(kappa_two(4).len(), 5);
    }
}
