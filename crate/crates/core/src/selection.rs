//! Index-set selection for the projection subspace.
//!
//! Every step projects onto `span{e_i : i in S}` for an index set `S`.
//! The strategies here decide `S` from the inner-step counter and, for the
//! greedy rule, from the current residual.

use crate::error::SelectionError;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Strictly increasing set of distinct indices into `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self, SelectionError> {
        if indices.is_empty() {
            return Err(SelectionError::Empty);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(SelectionError::IndexOutOfRange { index: bad, n });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SelectionError::NotStrictlyIncreasing);
        }
        Ok(IndexSet(indices))
    }

    pub fn single(i: usize, n: usize) -> Result<Self, SelectionError> {
        Self::new(vec![i], n)
    }

    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet(indices)
    }
}

/// How a sweep picks the index set for inner step `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionStrategy {
    /// The `m` residual components of largest magnitude, reselected before
    /// every inner step.
    GreedyTopM { m: usize },
    /// The pair `{i, i - gap}` (wrapping around `n`).
    Gap { gap: usize },
    /// `{i}`: one classical Gauss-Seidel sweep.
    Cyclic,
}

impl SelectionStrategy {
    pub fn validate(&self, n: usize) -> Result<(), SelectionError> {
        match *self {
            SelectionStrategy::GreedyTopM { m } if m == 0 || m > n => {
                Err(SelectionError::InvalidSubspaceDim { m, n })
            }
            SelectionStrategy::Gap { gap } if gap == 0 || gap >= n => {
                Err(SelectionError::InvalidGap { gap, n })
            }
            _ => Ok(()),
        }
    }

    /// Size of the index sets this strategy produces.
    pub fn subspace_dim(&self) -> usize {
        match *self {
            SelectionStrategy::GreedyTopM { m } => m,
            SelectionStrategy::Gap { .. } => 2,
            SelectionStrategy::Cyclic => 1,
        }
    }
}

/// Heap key ordered so that the heap top is the weakest kept candidate:
/// smallest magnitude, and among equal magnitudes the largest index.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    magnitude: f64,
    index: usize,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .magnitude
            .total_cmp(&self.magnitude)
            .then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

/// Reusable top-`m` selector; keeps its heap allocation across calls.
#[derive(Debug, Default)]
pub struct TopMSelector {
    heap: BinaryHeap<Candidate>,
}

impl TopMSelector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Indices of the `m` entries of `r` with largest `|r_i|`, ascending.
    /// Ties prefer the smaller index.
    pub fn select(&mut self, r: &[f64], m: usize) -> Result<IndexSet, SelectionError> {
        let n = r.len();
        if m == 0 || m > n {
            return Err(SelectionError::InvalidSubspaceDim { m, n });
        }
        self.heap.clear();
        for (index, v) in r.iter().enumerate() {
            let c = Candidate {
                magnitude: v.abs(),
                index,
            };
            if self.heap.len() < m {
                self.heap.push(c);
            } else if let Some(mut weakest) = self.heap.peek_mut() {
                // `c` beats the weakest iff it orders below it.
                if c < *weakest {
                    *weakest = c;
                }
            }
        }
        let mut indices: Vec<usize> = self.heap.drain().map(|c| c.index).collect();
        indices.sort_unstable();
        Ok(IndexSet::from_sorted_unchecked(indices))
    }
}

pub fn top_m_indices(r: &[f64], m: usize) -> Result<IndexSet, SelectionError> {
    TopMSelector::new().select(r, m)
}

/// The pair `{i, i - gap}` for 0-based inner index `i`, wrapping to
/// `i - gap + n` when `i < gap`.
pub fn gap_indices(i: usize, gap: usize, n: usize) -> Result<IndexSet, SelectionError> {
    if gap == 0 || gap >= n {
        return Err(SelectionError::InvalidGap { gap, n });
    }
    if i >= n {
        return Err(SelectionError::IndexOutOfRange { index: i, n });
    }
    let partner = if i >= gap { i - gap } else { i + n - gap };
    let (lo, hi) = if partner < i { (partner, i) } else { (i, partner) };
    Ok(IndexSet::from_sorted_unchecked(vec![lo, hi]))
}
