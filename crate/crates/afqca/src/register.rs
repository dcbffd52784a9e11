//! Register layout: qubit blocks, spacers, and the control unit.
//!
//! A logical qubit occupies four consecutive cells starting on an A-site:
//! `0` is ⇓⇑↑↓ (raw `duud`), `1` is ↑↓⇓⇑ (raw `uddu`). Qubits are laid out
//! on an 8-cell pitch (4 encode + 4 spacer cells). The control unit is the
//! six-cell pattern ⇑⇓↓↑⇑⇓ (raw `udduud`) starting on a B-site, which the
//! layout guarantees by separating it from the last qubit block by an odd
//! number of spacer cells. Shift pulses move qubit blocks two cells right
//! and the control unit two cells left per pulse pair; blocks pass through
//! one another and re-emerge intact.

use thiserror::Error;

use crate::chain::{ChainConfig, ChainError, Orientation};

/// Cells in a qubit block.
pub const QUBIT_CELLS: usize = 4;
/// Cells in the control unit.
pub const CU_CELLS: usize = 6;

const U: Orientation = Orientation::Up;
const D: Orientation = Orientation::Down;

/// The recognizable cell patterns of the register alphabet.
///
/// Reversed forms are the mirror images that a block passes through
/// between shift pairs; they live on the opposite start parity. The
/// altered control unit is the all-excited six-cell wave a control unit
/// becomes when it is stimulated while straddling a `0` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockPattern {
    Zero,
    One,
    ZeroReversed,
    OneReversed,
    ControlUnit,
    ControlUnitAltered,
    Ground,
}

impl BlockPattern {
    /// Physical orientations of the pattern, left to right.
    pub fn cells(self) -> &'static [Orientation] {
        match self {
            BlockPattern::Zero => &[D, U, U, D],
            BlockPattern::One => &[U, D, D, U],
            // mirror of One: ⇑⇓↓↑ read physically
            BlockPattern::OneReversed => &[U, D, D, U],
            // mirror of Zero: ↓↑⇑⇓ read physically
            BlockPattern::ZeroReversed => &[D, U, U, D],
            BlockPattern::ControlUnit => &[U, D, D, U, U, D],
            BlockPattern::ControlUnitAltered => &[U, D, U, D, U, D],
            BlockPattern::Ground => &[],
        }
    }

    /// Required start parity: 0 = A-site (even), 1 = B-site (odd).
    pub fn start_parity(self) -> usize {
        match self {
            BlockPattern::Zero | BlockPattern::One => 0,
            BlockPattern::ZeroReversed
            | BlockPattern::OneReversed
            | BlockPattern::ControlUnit
            | BlockPattern::ControlUnitAltered => 1,
            BlockPattern::Ground => 0,
        }
    }

    /// Does this pattern sit at `start` in `config`? `Ground` matches a
    /// 1-cell ground window and is handled by [`window_is_ground`].
    pub fn matches(self, config: &ChainConfig, start: usize) -> bool {
        let cells = self.cells();
        if cells.is_empty() {
            return false;
        }
        if start % 2 != self.start_parity() || start + cells.len() > config.len() {
            return false;
        }
        cells
            .iter()
            .enumerate()
            .all(|(k, want)| config.orientation(start + k) == Ok(*want))
    }

    /// All start positions (on the correct parity) where the pattern occurs.
    pub fn find(self, config: &ChainConfig) -> Vec<usize> {
        let cells = self.cells();
        if cells.is_empty() || config.len() < cells.len() {
            return Vec::new();
        }
        (0..=config.len() - cells.len())
            .filter(|&s| self.matches(config, s))
            .collect()
    }
}

/// Every cell in `[start, start+len)` in its ground orientation.
pub fn window_is_ground(config: &ChainConfig, start: usize, len: usize) -> bool {
    (start..start + len).all(|i| {
        config
            .orientation(i)
            .map(|o| o == ChainConfig::ground_orientation(i))
            .unwrap_or(false)
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum RegisterError {
    #[error("layout needs {needed} cells but only {available} are available")]
    LengthInsufficient { needed: usize, available: usize },
    #[error("bit list has {got} entries, layout encodes {expected} qubits")]
    WrongBitCount { expected: usize, got: usize },
    #[error("bits must be 0 or 1, got {0}")]
    BadBit(u8),
    #[error("qubit spacer must be a positive multiple of four, got {0}")]
    BadSpacer(usize),
    #[error("control-unit spacer must be odd, got {0}")]
    BadCuSpacer(usize),
    #[error("lead margin must be even, got {0}")]
    BadLead(usize),
    #[error("qubit {qubit} at cells {start}..{end} does not match any block pattern")]
    DestroyedQubit {
        qubit: usize,
        start: usize,
        end: usize,
    },
    #[error("control unit at cells {start}..{end} does not match any pattern")]
    DestroyedControlUnit { start: usize, end: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Geometry of a register: how many qubits, whether a control unit is
/// present, and the spacer widths. `cells` is the total chain length
/// (defaults to the minimal length for the layout).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub qubits: usize,
    pub cu: bool,
    /// Ground cells before the first block; even, so blocks keep their
    /// parity. Gives the control unit room to travel left.
    pub lead: usize,
    /// Ground cells between consecutive qubit blocks; multiple of four.
    pub qubit_spacer: usize,
    /// Ground cells between the last qubit block and the control unit; odd.
    pub cu_spacer: usize,
    pub cells: usize,
}

impl RegisterLayout {
    /// Layout with the standard spacers (4 between qubits, 3 before the CU),
    /// no lead margin, and minimal total length.
    pub fn new(qubits: usize, cu: bool) -> Result<Self, RegisterError> {
        Self::with_spacers(qubits, cu, 4, 3)
    }

    pub fn with_spacers(
        qubits: usize,
        cu: bool,
        qubit_spacer: usize,
        cu_spacer: usize,
    ) -> Result<Self, RegisterError> {
        if qubit_spacer == 0 || qubit_spacer % 4 != 0 {
            return Err(RegisterError::BadSpacer(qubit_spacer));
        }
        if cu_spacer % 2 == 0 {
            return Err(RegisterError::BadCuSpacer(cu_spacer));
        }
        let mut layout = RegisterLayout {
            qubits,
            cu,
            lead: 0,
            qubit_spacer,
            cu_spacer,
            cells: 0,
        };
        layout.cells = layout.min_cells().max(2);
        Ok(layout)
    }

    /// Same layout with `lead` ground cells before the first block.
    pub fn with_lead(mut self, lead: usize) -> Result<Self, RegisterError> {
        if lead % 2 != 0 {
            return Err(RegisterError::BadLead(lead));
        }
        self.lead = lead;
        self.cells = self.cells.max(self.min_cells());
        Ok(self)
    }

    /// Same layout on a longer chain (room for shift pulses).
    pub fn with_cells(mut self, cells: usize) -> Result<Self, RegisterError> {
        if cells < self.min_cells() {
            return Err(RegisterError::LengthInsufficient {
                needed: self.min_cells(),
                available: cells,
            });
        }
        self.cells = cells;
        Ok(self)
    }

    /// Minimal chain length that fits every block of the layout.
    pub fn min_cells(&self) -> usize {
        let qubit_span = if self.qubits == 0 {
            0
        } else {
            self.qubits * QUBIT_CELLS + (self.qubits - 1) * self.qubit_spacer
        };
        self.lead
            + if self.cu {
                qubit_span + self.cu_spacer + CU_CELLS
            } else {
                qubit_span
            }
    }

    /// Start cell of qubit block `i` (A-parity by construction).
    pub fn qubit_start(&self, i: usize) -> usize {
        self.lead + i * (QUBIT_CELLS + self.qubit_spacer)
    }

    /// Start cell of the control unit (B-parity by construction).
    pub fn cu_start(&self) -> usize {
        let after_qubits = if self.qubits == 0 {
            self.lead
        } else {
            self.qubit_start(self.qubits - 1) + QUBIT_CELLS
        };
        after_qubits + self.cu_spacer
    }
}

/// What one qubit window reads as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QubitReading {
    Zero,
    One,
    ZeroReversed,
    OneReversed,
    /// All four cells in the ground state (an empty slot).
    Ground,
}

/// What the control-unit window reads as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuReading {
    Normal,
    Altered,
    Ground,
}

/// Decoded view of a register.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterReading {
    pub qubits: Vec<QubitReading>,
    pub cu: Option<CuReading>,
    /// True when every non-block cell is in its ground orientation.
    pub spacers_clean: bool,
}

impl RegisterReading {
    /// The settled bit values; `None` if any window is ground or reversed.
    pub fn bits(&self) -> Option<Vec<u8>> {
        self.qubits
            .iter()
            .map(|q| match q {
                QubitReading::Zero => Some(0),
                QubitReading::One => Some(1),
                _ => None,
            })
            .collect()
    }
}

/// Build the chain configuration for `bits` under `layout`: qubit blocks at
/// their home positions, the control unit (if present) after its odd
/// spacer, ground everywhere else.
pub fn encode_register(bits: &[u8], layout: &RegisterLayout) -> Result<ChainConfig, RegisterError> {
    if bits.len() != layout.qubits {
        return Err(RegisterError::WrongBitCount {
            expected: layout.qubits,
            got: bits.len(),
        });
    }
    if layout.cells < layout.min_cells() {
        return Err(RegisterError::LengthInsufficient {
            needed: layout.min_cells(),
            available: layout.cells,
        });
    }
    let mut spins: Vec<Orientation> = (0..layout.cells)
        .map(ChainConfig::ground_orientation)
        .collect();
    let mut put = |start: usize, pattern: BlockPattern| {
        for (k, o) in pattern.cells().iter().enumerate() {
            spins[start + k] = *o;
        }
    };
    for (i, bit) in bits.iter().enumerate() {
        let pattern = match bit {
            0 => BlockPattern::Zero,
            1 => BlockPattern::One,
            other => return Err(RegisterError::BadBit(*other)),
        };
        put(layout.qubit_start(i), pattern);
    }
    if layout.cu {
        put(layout.cu_start(), BlockPattern::ControlUnit);
    }
    Ok(ChainConfig::new(&spins, None)?)
}

/// Decode at the home positions. Equivalent to
/// [`decode_register_shifted`] with zero shift pairs.
pub fn decode_register(
    config: &ChainConfig,
    layout: &RegisterLayout,
) -> Result<RegisterReading, RegisterError> {
    decode_register_shifted(config, layout, 0)
}

/// Decode after `pairs` shift pairs: qubit windows are expected 2·pairs
/// cells right of home, the control-unit window 2·pairs cells left.
/// Windows must read as a known block pattern or ground; anything else is
/// a destroyed qubit (or control unit).
pub fn decode_register_shifted(
    config: &ChainConfig,
    layout: &RegisterLayout,
    pairs: usize,
) -> Result<RegisterReading, RegisterError> {
    let qshift = 2 * pairs;
    let mut block_cells = vec![false; config.len()];
    let mut qubits = Vec::with_capacity(layout.qubits);
    for i in 0..layout.qubits {
        let start = layout.qubit_start(i) + qshift;
        let end = start + QUBIT_CELLS;
        if end > config.len() {
            return Err(RegisterError::LengthInsufficient {
                needed: end,
                available: config.len(),
            });
        }
        let reading = if BlockPattern::Zero.matches(config, start) {
            QubitReading::Zero
        } else if BlockPattern::One.matches(config, start) {
            QubitReading::One
        } else if window_is_ground(config, start, QUBIT_CELLS) {
            QubitReading::Ground
        } else {
            return Err(RegisterError::DestroyedQubit {
                qubit: i,
                start,
                end,
            });
        };
        qubits.push(reading);
        block_cells[start..end].iter_mut().for_each(|c| *c = true);
    }
    let cu = if layout.cu {
        let home = layout.cu_start();
        let start = home.checked_sub(2 * pairs).ok_or(
            RegisterError::LengthInsufficient {
                needed: 2 * pairs,
                available: home,
            },
        )?;
        let end = start + CU_CELLS;
        if end > config.len() {
            return Err(RegisterError::LengthInsufficient {
                needed: end,
                available: config.len(),
            });
        }
        let reading = if BlockPattern::ControlUnit.matches(config, start) {
            CuReading::Normal
        } else if BlockPattern::ControlUnitAltered.matches(config, start) {
            CuReading::Altered
        } else if window_is_ground(config, start, CU_CELLS) {
            CuReading::Ground
        } else {
            return Err(RegisterError::DestroyedControlUnit { start, end });
        };
        block_cells[start..end].iter_mut().for_each(|c| *c = true);
        Some(reading)
    } else {
        None
    };
    let spacers_clean = (0..config.len()).all(|i| {
        block_cells[i]
            || config.orientation(i).unwrap() == ChainConfig::ground_orientation(i)
    });
    Ok(RegisterReading {
        qubits,
        cu,
        spacers_clean,
    })
}
