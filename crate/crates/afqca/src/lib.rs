//! Deterministic simulator for a one-dimensional antiferromagnetic spin
//! chain driven by frequency-selective NMR π-pulses.
//!
//! The chain's two sublattices order oppositely, so each site's resonance
//! is set by its sublattice and the state of its two neighbors. Addressing
//! `(sublattice, neighbor-sum)` classes with π-pulses yields a cellular
//! automaton over spin configurations; this crate provides:
//!
//! - [`chain`]: configurations, classification, classical π-pulses;
//! - [`qstate`]: a sparse amplitude engine for superposition-creating
//!   one-cell unitaries;
//! - [`program`]: the pulse-script format, program reversal, provenance;
//! - [`register`]: the qubit-block / control-unit register codec;
//! - [`sequences`]: the named library — edge encoding, shift loading, the
//!   17-pulse one-qubit gate, the controlled-NOT construction;
//! - [`search`]: breadth-first shortest pulse-sequence synthesis;
//! - [`verify`]: invariant suites with structured reports;
//! - [`physics`]: resonance frequencies, ordering temperatures, spin-wave
//!   fluctuation integrals, magnetization, and decoherence estimates.

pub mod chain;
pub mod physics;
pub mod program;
pub mod qstate;
pub mod register;
pub mod search;
pub mod sequences;
pub mod verify;

pub use chain::{ChainConfig, ChainError, NeighborSum, Orientation, PulseClass, Sublattice};
pub use program::{parse_program, reverse_program, Pulse, PulseProgram, ScriptError};
pub use qstate::{OneCellUnitary, SparseQuantumState, StateError};
pub use register::{
    decode_register, decode_register_shifted, encode_register, BlockPattern, RegisterLayout,
};
pub use search::{find_sequence, SearchError};
