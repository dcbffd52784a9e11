//! Breadth-first synthesis of shortest π-pulse sequences between chain
//! configurations.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::chain::{ChainConfig, PulseClass};
use crate::program::{Pulse, PulseProgram};

/// Default cap on visited configurations.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("no program of length <= {max_len} reaches the goal")]
    NotFound { max_len: usize },
    #[error("search space exceeded the cap of {cap} configurations")]
    SearchSpaceExceeded { cap: usize },
    #[error("start and goal have different chain shapes")]
    ShapeMismatch,
}

/// Find the shortest π-pulse program (length ≤ `max_len`) transforming
/// `start` into `goal`, exploring only the classes in `allowed`.
///
/// Deterministic: classes are expanded in canonical order (A before B
/// before D, neighbor sum ascending), so ties always resolve to the
/// lexicographically smallest pulse sequence of minimal length.
pub fn find_sequence(
    start: &ChainConfig,
    goal: &ChainConfig,
    max_len: usize,
    allowed: &[PulseClass],
) -> Result<PulseProgram, SearchError> {
    find_sequence_capped(start, goal, max_len, allowed, DEFAULT_NODE_CAP)
}

/// [`find_sequence`] with an explicit visited-configuration cap.
pub fn find_sequence_capped(
    start: &ChainConfig,
    goal: &ChainConfig,
    max_len: usize,
    allowed: &[PulseClass],
    node_cap: usize,
) -> Result<PulseProgram, SearchError> {
    if !start.same_shape(goal) {
        return Err(SearchError::ShapeMismatch);
    }
    let mut classes: Vec<PulseClass> = allowed.to_vec();
    classes.sort();
    classes.dedup();

    if start == goal {
        return Ok(PulseProgram::new("synthesized", Vec::new()));
    }

    // parent pointer: config -> (predecessor, class applied, depth)
    let mut seen: HashMap<ChainConfig, (ChainConfig, PulseClass, usize)> = HashMap::new();
    let mut frontier = VecDeque::new();
    frontier.push_back((*start, 0usize));

    while let Some((cfg, depth)) = frontier.pop_front() {
        if depth == max_len {
            continue;
        }
        for &class in &classes {
            let next = cfg.apply_pi(class);
            if next == *start || seen.contains_key(&next) {
                continue;
            }
            seen.insert(next, (cfg, class, depth + 1));
            if seen.len() > node_cap {
                return Err(SearchError::SearchSpaceExceeded { cap: node_cap });
            }
            if next == *goal {
                let mut pulses = Vec::new();
                let mut cur = next;
                while cur != *start {
                    let (prev, class, _) = seen[&cur];
                    pulses.push(Pulse::Pi(class));
                    cur = prev;
                }
                pulses.reverse();
                return Ok(PulseProgram::new("synthesized", pulses));
            }
            frontier.push_back((next, depth + 1));
        }
    }
    Err(SearchError::NotFound { max_len })
}

/// The full ten-class pulse alphabet over regular sites (no dopant).
pub fn full_alphabet() -> Vec<PulseClass> {
    use crate::chain::{NeighborSum, Sublattice};
    let mut v = Vec::new();
    for target in [Sublattice::A, Sublattice::B] {
        for m in NeighborSum::ALL {
            v.push(PulseClass::new(target, m));
        }
    }
    v
}
