//! Sparse superposition engine over chain configurations.
//!
//! π-pulses permute basis configurations, so they never change the number
//! of stored terms. A one-cell unitary acts independently on every site it
//! addresses, branching each basis term into at most 2^k new ones; the
//! named pulse sequences keep k at 0 or 1, so states stay tiny in practice.
//! Terms are held in a `BTreeMap` keyed by configuration, which makes every
//! merge, dump, and iteration order deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::chain::{ChainConfig, PulseClass};

/// Amplitudes with squared magnitude below this are dropped after a
/// unitary merge; it only removes the exact-zero branches produced by
/// flip-style matrices, far below any physical tolerance.
pub const CULL_THRESHOLD: f64 = 1e-14;

/// Norm bookkeeping tolerance: Σ|a|² must stay within this of 1.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Default cap on stored terms; exceeding it signals non-gate usage.
pub const DEFAULT_TERM_CAP: usize = 4096;

/// Unitarity check tolerance for 2×2 matrices.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("term count {count} exceeds the configured cap {cap}")]
    TermCapExceeded { count: usize, cap: usize },
    #[error("states have different chain shapes")]
    ShapeMismatch,
    #[error("matrix is not unitary within {UNITARITY_TOLERANCE:e}")]
    NotUnitary,
    #[error("state norm {0} is not 1 within {NORM_TOLERANCE:e}")]
    NotNormalized(f64),
}

/// A 2×2 unitary acting in the (ground, excited) basis of one site.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneCellUnitary {
    /// m[row][col]; column 0 is the image of the ground state.
    pub m: [[Complex64; 2]; 2],
}

impl OneCellUnitary {
    /// Build from the action on the ground state, `U|g⟩ = a|g⟩ + b|e⟩`.
    /// The second column is the minimal unitary completion
    /// `(−conj(b), conj(a))`.
    pub fn from_column(a: Complex64, b: Complex64) -> Self {
        OneCellUnitary {
            m: [[a, -b.conj()], [b, a.conj()]],
        }
    }

    /// The acting column (a, b) of the matrix.
    pub fn column(&self) -> (Complex64, Complex64) {
        (self.m[0][0], self.m[1][0])
    }

    pub fn identity() -> Self {
        OneCellUnitary {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        }
    }

    /// The exact off-diagonal flip. This is the matrix form of a π-pulse;
    /// note it is *not* the unitary completion of its own ground column.
    pub fn flip() -> Self {
        OneCellUnitary {
            m: [
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        OneCellUnitary {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    /// Largest deviation of U·U† from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    sum += self.m[r][k] * self.m[c][k].conj();
                }
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((sum - expect).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= UNITARITY_TOLERANCE
    }
}

/// Normalized sparse state: configuration → complex amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseQuantumState {
    terms: BTreeMap<ChainConfig, Complex64>,
    term_cap: usize,
}

impl SparseQuantumState {
    /// Single-term state |config⟩ with amplitude 1.
    pub fn from_basis(config: ChainConfig) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(config, Complex64::new(1.0, 0.0));
        SparseQuantumState {
            terms,
            term_cap: DEFAULT_TERM_CAP,
        }
    }

    /// Override the term cap (the default is [`DEFAULT_TERM_CAP`]).
    pub fn with_term_cap(mut self, cap: usize) -> Self {
        self.term_cap = cap.max(1);
        self
    }

    pub fn term_cap(&self) -> usize {
        self.term_cap
    }

    /// Number of stored basis terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Deterministic (config-ordered) iteration over terms.
    pub fn terms(&self) -> impl Iterator<Item = (&ChainConfig, &Complex64)> {
        self.terms.iter()
    }

    /// Amplitude of one configuration (zero if absent).
    pub fn amplitude(&self, config: &ChainConfig) -> Complex64 {
        self.terms
            .get(config)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    /// Err unless Σ|a|² is within [`NORM_TOLERANCE`] of 1.
    pub fn check_normalized(&self) -> Result<(), StateError> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(StateError::NotNormalized(n));
        }
        Ok(())
    }

    /// Lift of the classical π-pulse: every basis configuration is replaced
    /// by its pulsed image with the amplitude unchanged. This is a pure
    /// permutation of basis states, so the term count and norm are exact.
    pub fn apply_pi(&self, class: PulseClass) -> SparseQuantumState {
        let mut terms = BTreeMap::new();
        for (cfg, amp) in &self.terms {
            let prev = terms.insert(cfg.apply_pi(class), *amp);
            debug_assert!(prev.is_none(), "pi-pulse must permute basis states");
        }
        SparseQuantumState {
            terms,
            term_cap: self.term_cap,
        }
    }

    /// Apply `u` independently on every site matching `class`, per basis
    /// term. Each matched site branches the term in the site's
    /// (ground, excited) basis; like configurations merge by amplitude
    /// addition and near-zero branches are culled. Unitarity keeps the norm,
    /// so no renormalization is applied.
    pub fn apply_unitary(
        &self,
        class: PulseClass,
        u: &OneCellUnitary,
    ) -> Result<SparseQuantumState, StateError> {
        if !u.is_unitary() {
            return Err(StateError::NotUnitary);
        }
        let mut merged: BTreeMap<ChainConfig, Complex64> = BTreeMap::new();
        for (cfg, amp) in &self.terms {
            let mask = cfg.class_mask(class);
            let mut branch: Vec<(ChainConfig, Complex64)> = vec![(*cfg, *amp)];
            for i in 0..cfg.len() {
                if (mask >> i) & 1 == 0 {
                    continue;
                }
                if branch.len() > self.term_cap {
                    return Err(StateError::TermCapExceeded {
                        count: branch.len(),
                        cap: self.term_cap,
                    });
                }
                let mut next = Vec::with_capacity(branch.len() * 2);
                for (bc, ba) in &branch {
                    let excited = bc.site_state(i).expect("site in range").excited;
                    let flipped = bc.with_site_flipped(i).expect("site in range");
                    let (stay, go) = if excited {
                        (u.m[1][1], u.m[0][1])
                    } else {
                        (u.m[0][0], u.m[1][0])
                    };
                    next.push((*bc, ba * stay));
                    next.push((flipped, ba * go));
                }
                branch = next;
            }
            for (bc, ba) in branch {
                *merged.entry(bc).or_insert(Complex64::new(0.0, 0.0)) += ba;
            }
        }
        merged.retain(|_, a| a.norm() >= CULL_THRESHOLD);
        if merged.len() > self.term_cap {
            return Err(StateError::TermCapExceeded {
                count: merged.len(),
                cap: self.term_cap,
            });
        }
        Ok(SparseQuantumState {
            terms: merged,
            term_cap: self.term_cap,
        })
    }

    /// |amplitude|² per configuration; sums to 1 within [`NORM_TOLERANCE`].
    pub fn probabilities(&self) -> BTreeMap<ChainConfig, f64> {
        self.terms
            .iter()
            .map(|(cfg, amp)| (*cfg, amp.norm_sqr()))
            .collect()
    }

    /// ⟨self|other⟩ = Σ conj(a_self)·a_other over shared configurations.
    pub fn overlap(&self, other: &SparseQuantumState) -> Result<Complex64, StateError> {
        match (self.terms.keys().next(), other.terms.keys().next()) {
            (Some(a), Some(b)) if !a.same_shape(b) => return Err(StateError::ShapeMismatch),
            _ => {}
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (cfg, amp) in &self.terms {
            if let Some(b) = other.terms.get(cfg) {
                sum += amp.conj() * b;
            }
        }
        Ok(sum)
    }

    /// State dump: one line per term, `<raw-config> <re> <im>`, configs in
    /// lexicographic order, reals with 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (cfg, amp) in &self.terms {
            writeln!(out, "{} {:.16e} {:.16e}", cfg.format_raw(), amp.re, amp.im).unwrap();
        }
        out
    }
}
