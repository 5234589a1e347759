use alloc::vec;
use alloc::vec::Vec;

use crate::error::EvidenceError;
use crate::focal::FocalSet;
use crate::mass::MassFunction;

/// Largest frame for which [`belief_all`] materializes a dense table.
pub const DENSE_LIMIT: usize = 20;

/// Lower and upper probability bounds of a set, `0 <= bel <= pl <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefInterval {
    bel: f64,
    pl: f64,
}

impl BeliefInterval {
    pub fn new(bel: f64, pl: f64) -> Option<Self> {
        (0.0 <= bel && bel <= pl && pl <= 1.0).then_some(BeliefInterval { bel, pl })
    }

    pub fn bel(&self) -> f64 {
        self.bel
    }

    pub fn pl(&self) -> f64 {
        self.pl
    }

    /// `pl - bel`: mass that neither commits to nor excludes the set.
    pub fn width(&self) -> f64 {
        self.pl - self.bel
    }
}

fn check_frame(m: &MassFunction, a: FocalSet) -> Result<(), EvidenceError> {
    if a.frame_size() == m.frame().len() {
        Ok(())
    } else {
        Err(EvidenceError::FrameMismatch)
    }
}

/// Total mass committed to subsets of `a`.
pub fn belief(m: &MassFunction, a: FocalSet) -> Result<f64, EvidenceError> {
    check_frame(m, a)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    if a.is_full() {
        return Ok(1.0);
    }
    let sum: f64 = m
        .iter()
        .filter(|(b, _)| b.is_subset_of(a))
        .fold(0.0, |acc, (_, v)| acc + v);
    Ok(sum.min(1.0))
}

/// Total mass of focal sets that intersect `a`.
pub fn plausibility(m: &MassFunction, a: FocalSet) -> Result<f64, EvidenceError> {
    check_frame(m, a)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    if a.is_full() {
        return Ok(1.0);
    }
    let sum: f64 = m
        .iter()
        .filter(|(b, _)| b.intersects(a))
        .fold(0.0, |acc, (_, v)| acc + v);
    Ok(sum.min(1.0))
}

pub fn belief_interval(m: &MassFunction, a: FocalSet) -> Result<BeliefInterval, EvidenceError> {
    let bel = belief(m, a)?;
    let pl = plausibility(m, a)?;
    // Both sums walk the focal sets in the same order and every term of the
    // belief sum is also a term of the plausibility sum, so rounding keeps
    // bel <= pl.
    Ok(BeliefInterval::new(bel, pl).expect("belief exceeds plausibility"))
}

/// Belief of every subset, indexed by subset code.
///
/// Scatters the masses into a dense table of `2^n` entries and runs the
/// in-place subset-sum (zeta) transform: `n * 2^(n-1)` additions.
pub fn belief_all(m: &MassFunction) -> Result<Vec<f64>, EvidenceError> {
    let n = m.frame().len();
    if n > DENSE_LIMIT {
        return Err(EvidenceError::FrameTooLargeForDense(n));
    }
    let size = 1usize << n;
    let mut table = vec![0.0f64; size];
    for (set, mass) in m.iter() {
        table[set.bits() as usize] = mass;
    }
    subset_sums(&mut table);
    Ok(table)
}

/// In-place zeta transform over the subset lattice: afterwards
/// `xs[s] = sum of xs[t] for t ⊆ s`. `xs.len()` must be a power of two.
fn subset_sums(xs: &mut [f64]) {
    debug_assert!(xs.len().is_power_of_two());
    let mut half = 1;
    while half < xs.len() {
        for block in xs.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h += *l;
            }
        }
        half *= 2;
    }
}
