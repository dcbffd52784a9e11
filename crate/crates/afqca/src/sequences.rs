//! The named pulse-sequence library: qubit encoding at the chain edge,
//! shift loading, the 17-pulse one-qubit gate, and the controlled-NOT
//! construction.
//!
//! Geometry shared by the gate sequences: the target qubit block sits at
//! some A-parity start, the control unit three ground cells to its right
//! (the layout default). Shift pairs carry qubit blocks two cells right
//! and the control unit two cells left, so the two meet and interpenetrate;
//! the gates act at fixed pulse offsets into that passage and then rewind
//! everything except the one transform they are meant to leave behind.

use num_complex::Complex64;

use crate::chain::{NeighborSum, PulseClass, Sublattice};
use crate::program::{reverse_program, DeviationNote, Pulse, PulseProgram};
use crate::qstate::OneCellUnitary;

/// Shorthand constructors for the pulse classes the sequences use.
pub mod classes {
    use super::*;

    pub const A_MINUS_HALF: PulseClass = PulseClass::new(Sublattice::A, NeighborSum::MinusHalf);
    pub const A_PLUS_HALF: PulseClass = PulseClass::new(Sublattice::A, NeighborSum::PlusHalf);
    pub const A_ZERO: PulseClass = PulseClass::new(Sublattice::A, NeighborSum::Zero);
    pub const A_ONE: PulseClass = PulseClass::new(Sublattice::A, NeighborSum::PlusOne);
    pub const B_ZERO: PulseClass = PulseClass::new(Sublattice::B, NeighborSum::Zero);
    pub const B_MINUS_ONE: PulseClass = PulseClass::new(Sublattice::B, NeighborSum::MinusOne);
}

use classes::*;

fn pi(class: PulseClass) -> Pulse {
    Pulse::Pi(class)
}

/// Alternating shift pulses starting from global pulse index `phase`:
/// even indices are π(A,0), odd are π(B,0).
fn shift_pulses(phase: usize, count: usize) -> Vec<Pulse> {
    (0..count)
        .map(|k| {
            if (phase + k) % 2 == 0 {
                pi(A_ZERO)
            } else {
                pi(B_ZERO)
            }
        })
        .collect()
}

/// Form a `0` block at the left edge of a ground chain:
/// π(A,−1/2) then π(B,0).
pub fn encode_zero_at_edge() -> PulseProgram {
    PulseProgram::new("encode0", vec![pi(A_MINUS_HALF), pi(B_ZERO)])
}

/// Turn the edge `0` block into a `1` block: π(A,0), π(A,+1/2), π(B,0).
///
/// Carries a deviation note: the documented transcription names the second
/// pulse π(A,−1/2), but at that stage the edge site's neighbor is up, which
/// puts the site in the (A,+1/2) class. The simulation-verified class is
/// used and the original label kept as an alias.
pub fn encode_one_at_edge() -> PulseProgram {
    PulseProgram::new("encode1", vec![pi(A_ZERO), pi(A_PLUS_HALF), pi(B_ZERO)]).with_note(
        DeviationNote {
            documented: "PI A 0, PI A -1/2, PI B 0".into(),
            implemented: "PI A 0, PI A 1/2, PI B 0".into(),
            rationale: "after PI A 0 the edge spin's single neighbor is up, so the edge \
                        class is (A,+1/2); the documented -1/2 label does not address any \
                        site at that stage"
                .into(),
        },
    )
}

/// Ground chain straight to a `1` block at the edge: encode `0`, then
/// promote it to `1`.
pub fn encode_one_from_ground() -> PulseProgram {
    let mut p = PulseProgram::concat(
        "encode01",
        &[&encode_zero_at_edge(), &encode_one_at_edge()],
    );
    p.name = "encode01".into();
    p
}

/// `pairs` repetitions of [π(A,0), π(B,0)]. Each pair moves every qubit
/// block two cells rightward and the control unit two cells leftward.
pub fn swap_shift(pairs: usize) -> PulseProgram {
    PulseProgram::new(format!("shift{pairs}"), shift_pulses(0, 2 * pairs))
}

/// The five computing pulses of the one-qubit gate, in order.
fn computing_core() -> Vec<Pulse> {
    vec![pi(A_ONE), pi(B_MINUS_ONE), pi(B_ZERO), pi(A_ONE), pi(B_ZERO)]
}

const GATE_NOTE_CLASSES: &str = "the published pulse list names the second computing pulse \
    pi_{B,1}; under the neighbor-sum convention used here the class that acts on sites with \
    both neighbors excited on a B-site is (B,-1), and only that reading makes the sequence \
    act locally and pass verification";

const GATE_NOTE_LAYOUT: &str = "the split into three positioning shift pulses, five \
    computing pulses, the one-cell transform, and the mirror rewind is fixed empirically: \
    it is the unique offset at which exactly one site (the qubit carrier) is in class \
    (A,+1) when the transform fires, and it reproduces the documented total of seventeen \
    elementary pulses";

/// The seventeen-pulse one-qubit gate.
///
/// Layout precondition: the target qubit block starts on an A-site with
/// three ground cells between its end and the control unit (the standard
/// layout's `cu_spacer`). The program is
///
/// ```text
/// A0 B0 A0 | A1 B-1 B0 A1 B0 | U(A,1) | B0 A1 B0 B-1 A1 | A0 B0 A0
/// ```
///
/// Three shift pulses carry the control unit midway into the qubit, five
/// computing pulses funnel the qubit's value into a single A-site spin
/// whose neighbors are both excited, `u` acts on that spin alone, and the
/// mirror of the eight preparation pulses rewinds everything else. With
/// `u = (a, b)` on a `1` qubit the register ends in
/// `a·|…1…⟩ + b·|…0…⟩` with the control unit restored in both branches.
pub fn one_qubit_gate(u: OneCellUnitary) -> PulseProgram {
    let positioning = shift_pulses(0, 3);
    let core = computing_core();
    let mut pulses = Vec::with_capacity(17);
    pulses.extend(positioning.iter().copied());
    pulses.extend(core.iter().copied());
    pulses.push(Pulse::Unitary(A_ONE, u));
    pulses.extend(core.iter().rev().map(Pulse::inverse));
    pulses.extend(positioning.iter().rev().map(Pulse::inverse));
    PulseProgram::new("gate1", pulses)
        .with_note(DeviationNote {
            documented: "computing updates PI A 1, PI B 1, PI B 0, PI A 1, PI B 0, U A 1".into(),
            implemented: "PI A 1, PI B -1, PI B 0, PI A 1, PI B 0, U A 1".into(),
            rationale: GATE_NOTE_CLASSES.into(),
        })
        .with_note(DeviationNote {
            documented: "seventeen elementary pulses; update pulses re-applied in reverse \
                         order after the one-cell transform"
                .into(),
            implemented: "3 positioning + 5 computing + U + 5 reversed computing + 3 \
                          reversed positioning = 17"
                .into(),
            rationale: GATE_NOTE_LAYOUT.into(),
        })
}

/// The nine-pulse controlled-NOT extension, ending in the inversion pulse
/// π(A,1) (the inversion is the π form of `U(A,1)`).
///
/// This is the sequence applied once the control unit — altered if the
/// control qubit was `0`, intact if it was `1` — has been carried to three
/// shift pulses past the control's midway stage. Its first eight pulses
/// reshape the passage so that exactly one site, the target's carrier, is
/// in class (A,+1) when the control was `1`, and no site at all is when the
/// control was `0`; the ninth pulse is the conditional inversion.
pub fn cnot_extension() -> PulseProgram {
    let pulses = vec![
        pi(B_ZERO),
        pi(B_MINUS_ONE),
        pi(A_ONE),
        pi(B_ZERO),
        pi(A_ONE),
        pi(B_MINUS_ONE),
        pi(A_ONE),
        pi(B_ZERO),
        pi(A_ONE),
    ];
    PulseProgram::new("cnot-ext", pulses).with_note(DeviationNote {
        documented: "PI A 1, PI B 1, PI B 0, PI A 0, PI A 1, PI B 0, PI A 0, PI B 1, PI A 1"
            .into(),
        implemented: "PI B 0, PI B -1, PI A 1, PI B 0, PI A 1, PI B -1, PI A 1, PI B 0, PI A 1"
            .into(),
        rationale: "the documented nine-pulse list does not satisfy the conditional-inversion \
                    contract under this classification convention at any stage offset; this \
                    is the closest sequence over the same pulse alphabet, found by exhaustive \
                    search, for which the final inversion addresses exactly the target carrier \
                    when the control is 1 and no site when the control is 0"
            .into(),
    })
}

/// Stimulus that conditionally alters the control unit: the shift sequence
/// carried to the control's midway stage (two pairs from the standard
/// layout) and finished by π(A,1). Straddling a `0`, the control unit
/// collapses into the six-cell all-excited wave and the `0` is destroyed;
/// straddling a `1`, the pulse addresses no site at all.
pub fn cu_stimulus() -> PulseProgram {
    let mut pulses = shift_pulses(0, 4);
    pulses.push(pi(A_ONE));
    PulseProgram::new("cu-stimulus", pulses)
}

/// The full controlled-NOT on the standard two-qubit register
/// `[target][4 spacers][control][3 spacers][CU]`:
///
/// ```text
/// approach(4 shifts)  A1-stimulus  carry(3 shifts)  extension[..8]
/// A1-inversion
/// reverse of everything before the inversion
/// ```
///
/// 33 pulses. Composing the extension with the reverse is what leaves the
/// net effect "target inverted iff control is 1": the rewind restores the
/// control qubit, the control unit, and every spacer exactly.
pub fn cnot_gate() -> PulseProgram {
    let ext = cnot_extension();
    let mut forward_pulses = shift_pulses(0, 4);
    forward_pulses.push(pi(A_ONE));
    forward_pulses.extend(shift_pulses(4, 3));
    forward_pulses.extend(ext.pulses[..8].iter().copied());
    let forward = PulseProgram::new("cnot-forward", forward_pulses);
    let rewind = reverse_program(&forward);
    let mut pulses = forward.pulses;
    pulses.push(*ext.pulses.last().expect("extension is nonempty"));
    pulses.extend(rewind.pulses);
    let mut p = PulseProgram::new("cnot", pulses);
    p.notes = ext.notes;
    p
}

/// Column (1/√2, 1/√2): turns a settled qubit into an equal superposition.
pub fn equal_superposition_column() -> OneCellUnitary {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    OneCellUnitary::from_column(r, r)
}

/// Resolve a built-in program by name. Names accepted by the command-line
/// `run` subcommand when the program argument is not a script path.
pub fn builtin(name: &str) -> Option<PulseProgram> {
    match name {
        "encode0" => Some(encode_zero_at_edge()),
        "encode1" => Some(encode_one_at_edge()),
        "encode01" => Some(encode_one_from_ground()),
        "shift1" => Some(swap_shift(1)),
        "shift2" => Some(swap_shift(2)),
        "shift3" => Some(swap_shift(3)),
        "shift4" => Some(swap_shift(4)),
        "gate1-id" => Some(one_qubit_gate(OneCellUnitary::identity())),
        "gate1-flip" => Some(one_qubit_gate(OneCellUnitary::from_column(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ))),
        "gate1-super" => Some(one_qubit_gate(equal_superposition_column())),
        "cu-stimulus" => Some(cu_stimulus()),
        "cnot-ext" => Some(cnot_extension()),
        "cnot" => Some(cnot_gate()),
        _ => None,
    }
}

/// All built-in names, for help text and round-trip tests.
pub const BUILTIN_NAMES: [&str; 13] = [
    "encode0",
    "encode1",
    "encode01",
    "shift1",
    "shift2",
    "shift3",
    "shift4",
    "gate1-id",
    "gate1-flip",
    "gate1-super",
    "cu-stimulus",
    "cnot-ext",
    "cnot",
];
