//! Closure of a subset under directed joins, built stage by stage.

use alloc::vec::Vec;

use crate::poset::{bit, indices, FinPoset, Mask};

/// An element added at some stage, with the directed subset of the
/// previous stage whose join it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Addition {
    pub element: usize,
    pub witness: Mask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub start: Mask,
    /// `stages[0] == start`; the last stage is closed under directed joins.
    pub stages: Vec<Mask>,
    /// `additions[k]` lists what stage `k + 1` added to stage `k`.
    pub additions: Vec<Vec<Addition>>,
}

impl ClosureTrace {
    pub fn closure(&self) -> Mask {
        *self.stages.last().expect("at least the start stage")
    }

    /// Number of stages that added something.
    pub fn steps(&self) -> usize {
        self.stages.len() - 1
    }
}

/// Computes `X_0 = X`, `X_{k+1} = X_k ∪ {⋁Y : Y ⊆ X_k nonempty directed}`
/// until it stabilises.
///
/// A finite nonempty directed set contains an upper bound of all its
/// members, so every directed `Y ⊆ X_k` lies inside some principal piece
/// `X_k ∩ ↓y` with `y ∈ Y` and shares its join `y`. Scanning those pieces
/// therefore meets every directed join of the stage.
pub fn directed_closure(p: &FinPoset, start: Mask) -> ClosureTrace {
    let order = p.order();
    let start = start & p.all();
    let mut stages = alloc::vec![start];
    let mut additions = Vec::new();
    loop {
        let stage = *stages.last().expect("nonempty");
        let mut added = Vec::new();
        for y in indices(stage) {
            let piece = stage & order.down_set(y);
            debug_assert!(order.is_directed(piece));
            if let Some(j) = order.join(piece) {
                if stage & bit(j) == 0 && added.iter().all(|a: &Addition| a.element != j) {
                    added.push(Addition { element: j, witness: piece });
                }
            }
        }
        if added.is_empty() {
            break;
        }
        let next = added.iter().fold(stage, |m, a| m | bit(a.element));
        additions.push(added);
        stages.push(next);
    }
    ClosureTrace { start, stages, additions }
}
