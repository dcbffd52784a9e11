//! Pulse programs: ordered pulse lists, the script text format, reversal,
//! and provenance notes for reconstructed sequences.
//!
//! Script grammar, one pulse per line:
//!
//! ```text
//! # comment
//! PI <A|B|D> <m>
//! U  <A|B|D> <m> <re_a> <im_a> <re_b> <im_b>
//! ```
//!
//! with `m` one of `-1`, `-1/2`, `0`, `1/2`, `1`. A `U` line carries the
//! acting column (a, b) of the one-cell transform; the full matrix is its
//! minimal unitary completion, so scripts round-trip exactly for programs
//! whose unitaries were built from columns.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{NeighborSum, PulseClass, Sublattice};
use crate::qstate::{OneCellUnitary, SparseQuantumState, StateError};

/// One elementary pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pulse {
    /// Resonant π-pulse: inverts every site in the class.
    Pi(PulseClass),
    /// One-cell unitary applied at every site in the class.
    Unitary(PulseClass, OneCellUnitary),
}

impl Pulse {
    pub fn class(&self) -> PulseClass {
        match self {
            Pulse::Pi(c) => *c,
            Pulse::Unitary(c, _) => *c,
        }
    }

    /// Apply to a sparse state.
    pub fn apply(&self, state: &SparseQuantumState) -> Result<SparseQuantumState, StateError> {
        match self {
            Pulse::Pi(c) => Ok(state.apply_pi(*c)),
            Pulse::Unitary(c, u) => state.apply_unitary(*c, u),
        }
    }

    /// The inverse pulse: π-pulses are self-inverse, unitaries conjugate.
    pub fn inverse(&self) -> Pulse {
        match self {
            Pulse::Pi(c) => Pulse::Pi(*c),
            Pulse::Unitary(c, u) => Pulse::Unitary(*c, u.dagger()),
        }
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pulse::Pi(c) => write!(f, "PI {c}"),
            Pulse::Unitary(c, u) => {
                let (a, b) = u.column();
                write!(f, "U {c} {} {} {} {}", a.re, a.im, b.re, b.im)
            }
        }
    }
}

/// Where a named sequence's pulses came from when the published form and
/// the verified form differ. Attached to programs so deviation reports can
/// be emitted mechanically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationNote {
    /// Label or pulse list as documented in the source material.
    pub documented: String,
    /// What this library actually executes.
    pub implemented: String,
    /// Why the implemented form is used.
    pub rationale: String,
}

/// A named, ordered pulse sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseProgram {
    pub name: String,
    pub pulses: Vec<Pulse>,
    /// Nonempty when the executable sequence deviates from its documented
    /// transcription; see [`DeviationNote`].
    pub notes: Vec<DeviationNote>,
}

impl PulseProgram {
    pub fn new(name: impl Into<String>, pulses: Vec<Pulse>) -> Self {
        PulseProgram {
            name: name.into(),
            pulses,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: DeviationNote) -> Self {
        self.notes.push(note);
        self
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    /// Run on a state, returning the final state.
    pub fn run(&self, start: &SparseQuantumState) -> Result<SparseQuantumState, StateError> {
        let mut state = start.clone();
        for p in &self.pulses {
            state = p.apply(&state)?;
        }
        Ok(state)
    }

    /// Run, invoking `on_step(index, pulse, state_after)` after each pulse.
    pub fn run_traced<F>(
        &self,
        start: &SparseQuantumState,
        mut on_step: F,
    ) -> Result<SparseQuantumState, StateError>
    where
        F: FnMut(usize, &Pulse, &SparseQuantumState),
    {
        let mut state = start.clone();
        for (k, p) in self.pulses.iter().enumerate() {
            state = p.apply(&state)?;
            on_step(k, p, &state);
        }
        Ok(state)
    }

    /// Concatenate programs under a new name; notes are merged.
    pub fn concat(name: impl Into<String>, parts: &[&PulseProgram]) -> Self {
        let mut pulses = Vec::new();
        let mut notes = Vec::new();
        for p in parts {
            pulses.extend(p.pulses.iter().copied());
            notes.extend(p.notes.iter().cloned());
        }
        PulseProgram {
            name: name.into(),
            pulses,
            notes,
        }
    }

    /// Script rendering of the program (see module docs for the grammar).
    pub fn format_script(&self) -> String {
        let mut out = String::new();
        for p in &self.pulses {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

/// Reverse a program: pulses in reverse order, unitaries replaced by their
/// conjugate transpose. Running a program followed by its reverse is the
/// identity on every state.
pub fn reverse_program(p: &PulseProgram) -> PulseProgram {
    PulseProgram {
        name: format!("{}-reverse", p.name),
        pulses: p.pulses.iter().rev().map(Pulse::inverse).collect(),
        notes: p.notes.clone(),
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ScriptError {
    #[error("line {line}: unknown directive {token:?}")]
    UnknownDirective { line: usize, token: String },
    #[error("line {line}: unknown sublattice {token:?}")]
    BadSublattice { line: usize, token: String },
    #[error("line {line}: unknown class token {token:?}")]
    BadClassToken { line: usize, token: String },
    #[error("line {line}: malformed number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} fields, got {got}")]
    WrongArity {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: column (a, b) is not normalized (|a|^2+|b|^2 = {norm})")]
    ColumnNotNormalized { line: usize, norm: f64 },
}

fn parse_sublattice(tok: &str, line: usize) -> Result<Sublattice, ScriptError> {
    match tok {
        "A" => Ok(Sublattice::A),
        "B" => Ok(Sublattice::B),
        "D" => Ok(Sublattice::D),
        _ => Err(ScriptError::BadSublattice {
            line,
            token: tok.to_string(),
        }),
    }
}

fn parse_m(tok: &str, line: usize) -> Result<NeighborSum, ScriptError> {
    NeighborSum::parse_token(tok).ok_or_else(|| ScriptError::BadClassToken {
        line,
        token: tok.to_string(),
    })
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, ScriptError> {
    tok.parse().map_err(|_| ScriptError::BadNumber {
        line,
        token: tok.to_string(),
    })
}

/// Parse a pulse script. `name` is normally the file stem.
pub fn parse_program(name: impl Into<String>, text: &str) -> Result<PulseProgram, ScriptError> {
    let mut pulses = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw_line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields[0] {
            "PI" => {
                if fields.len() != 3 {
                    return Err(ScriptError::WrongArity {
                        line,
                        expected: 3,
                        got: fields.len(),
                    });
                }
                let target = parse_sublattice(fields[1], line)?;
                let m = parse_m(fields[2], line)?;
                pulses.push(Pulse::Pi(PulseClass::new(target, m)));
            }
            "U" => {
                if fields.len() != 7 {
                    return Err(ScriptError::WrongArity {
                        line,
                        expected: 7,
                        got: fields.len(),
                    });
                }
                let target = parse_sublattice(fields[1], line)?;
                let m = parse_m(fields[2], line)?;
                let a = Complex64::new(parse_f64(fields[3], line)?, parse_f64(fields[4], line)?);
                let b = Complex64::new(parse_f64(fields[5], line)?, parse_f64(fields[6], line)?);
                let norm = a.norm_sqr() + b.norm_sqr();
                if (norm - 1.0).abs() > 1e-9 {
                    return Err(ScriptError::ColumnNotNormalized { line, norm });
                }
                pulses.push(Pulse::Unitary(
                    PulseClass::new(target, m),
                    OneCellUnitary::from_column(a, b),
                ));
            }
            other => {
                return Err(ScriptError::UnknownDirective {
                    line,
                    token: other.to_string(),
                })
            }
        }
    }
    Ok(PulseProgram::new(name, pulses))
}
