//! Command-line front end: run pulse programs over chain configurations,
//! drive the verification suites and the sequence solver, and evaluate the
//! physics formulas.
//!
//! Exit codes: 0 success, 1 not-found / verification failure, 2 usage or
//! parse error, 3 resource exhaustion (term cap, search cap).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use afqca::chain::{ChainConfig, NeighborSum, PulseClass, Sublattice};
use afqca::physics::{
    self, critical_temperatures, fit_asymptotic_const, frequency_of_class, materials,
    polarization_check, resonance_frequency, sublattice_magnetization, t2_decoherence,
    thermal_fluctuation_p, FluctuationMethod, SpinWaveModel,
};
use afqca::program::{parse_program, PulseProgram};
use afqca::qstate::{SparseQuantumState, StateError, DEFAULT_TERM_CAP};
use afqca::register::{encode_register, RegisterLayout};
use afqca::search::{find_sequence_capped, full_alphabet, SearchError, DEFAULT_NODE_CAP};
use afqca::sequences;
use afqca::verify;

#[derive(Parser)]
#[command(
    name = "afqca",
    about = "Antiferromagnetic spin-chain quantum cellular automaton simulator",
    version
)]
struct Cli {
    /// Render chain configurations with sublattice arrows in trace output.
    #[arg(long, global = true)]
    arrows: bool,

    /// Trace detail for `run`: none, steps, or full.
    #[arg(long, global = true, default_value = "steps")]
    trace: TraceMode,

    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Cap on simultaneously stored superposition terms.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_CAP)]
    max_terms: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TraceMode {
    None,
    Steps,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Run a pulse program (built-in name or script path) on a state.
    Run(RunArgs),
    /// Run a named invariant suite and report pass/fail per check.
    Verify(VerifyArgs),
    /// Breadth-first search for the shortest pulse sequence between two
    /// configurations.
    Search(SearchArgs),
    /// Evaluate a physics quantity for a preset material.
    Physics(PhysicsArgs),
    /// Encode a bit pattern into a register configuration and print it.
    Encode(EncodeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Built-in program name or path to a pulse script.
    program: String,
    /// Initial configuration literal, e.g. `udududud` or `dudu@0`.
    #[arg(long, conflicts_with_all = ["init_file", "register"])]
    init: Option<String>,
    /// File containing the initial configuration literal.
    #[arg(long, conflicts_with = "register")]
    init_file: Option<PathBuf>,
    /// Register bits, e.g. `101`; combined with --cu / --lead / --cells.
    #[arg(long)]
    register: Option<String>,
    /// Include a control unit in the register layout.
    #[arg(long)]
    cu: bool,
    /// Ground cells before the first block (even).
    #[arg(long, default_value_t = 4)]
    lead: usize,
    /// Total chain length (defaults to the layout minimum).
    #[arg(long)]
    cells: Option<usize>,
    /// Write the final state dump here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: encode, shift, cu, gate1, cnot, random, or all.
    suite: String,
    /// Also write the structured report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Start configuration literal.
    start: String,
    /// Goal configuration literal.
    goal: String,
    /// Longest program to consider.
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Comma-separated class tokens, e.g. `A0,B0,A1,B-1`; default is the
    /// full ten-class alphabet.
    #[arg(long)]
    allowed: Option<String>,
    /// Visited-configuration cap.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    /// Write the found program script here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhysicsArgs {
    /// Preset material name (see the `list` quantity).
    material: String,
    /// Quantity: bmin, tns, tni, freq, p, pasym, const, magnetization, t2,
    /// polarization, or list.
    quantity: String,
    /// Applied field in tesla.
    #[arg(long, default_value_t = 3.5)]
    field: f64,
    /// Temperature in kelvin.
    #[arg(long)]
    temp: Option<f64>,
    /// Temperature sweep `lo:hi:steps` (log-spaced), printed as TSV.
    #[arg(long)]
    sweep: Option<String>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Bits, e.g. `101`, or empty string for a control-unit-only register.
    bits: String,
    /// Include a control unit.
    #[arg(long)]
    cu: bool,
    /// Ground cells before the first block (even).
    #[arg(long, default_value_t = 0)]
    lead: usize,
    /// Total chain length (defaults to the layout minimum).
    #[arg(long)]
    cells: Option<usize>,
    /// Ground cells between qubit blocks (multiple of four).
    #[arg(long, default_value_t = 4)]
    spacer: usize,
    /// Ground cells before the control unit (odd).
    #[arg(long, default_value_t = 3)]
    cu_spacer: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::new(2, msg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Search(args) => cmd_search(args),
        Command::Physics(args) => cmd_physics(args),
        Command::Encode(args) => cmd_encode(&cli, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("afqca: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn render(cfg: &ChainConfig, arrows: bool) -> String {
    if arrows {
        cfg.format_arrows()
    } else {
        cfg.format_raw()
    }
}

fn load_program(name_or_path: &str) -> Result<PulseProgram, Failure> {
    if let Some(p) = sequences::builtin(name_or_path) {
        return Ok(p);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(usage(format!(
            "{name_or_path:?} is neither a built-in program ({}) nor a script file",
            sequences::BUILTIN_NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "script".to_string());
    parse_program(stem, &text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn initial_state(cli: &Cli, args: &RunArgs) -> Result<SparseQuantumState, Failure> {
    let config = if let Some(bits) = &args.register {
        let bit_values: Vec<u8> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(usage(format!("register bits must be 0/1, got {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let mut layout = RegisterLayout::new(bit_values.len(), args.cu)
            .and_then(|l| l.with_lead(args.lead))
            .map_err(|e| usage(e.to_string()))?;
        if let Some(cells) = args.cells {
            layout = layout.with_cells(cells).map_err(|e| usage(e.to_string()))?;
        }
        encode_register(&bit_values, &layout).map_err(|e| usage(e.to_string()))?
    } else if let Some(path) = &args.init_file {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        ChainConfig::parse(text.trim()).map_err(|e| usage(e.to_string()))?
    } else if let Some(lit) = &args.init {
        ChainConfig::parse(lit).map_err(|e| usage(e.to_string()))?
    } else {
        return Err(usage("one of --init, --init-file, --register is required"));
    };
    Ok(SparseQuantumState::from_basis(config).with_term_cap(cli.max_terms))
}

fn cmd_run(cli: &Cli, args: &RunArgs) -> CliResult {
    let program = load_program(&args.program)?;
    let start = initial_state(cli, args)?;
    let trace = cli.trace;
    let arrows = cli.arrows;
    let mut failed: Option<StateError> = None;
    let mut state = start.clone();
    for (k, pulse) in program.pulses.iter().enumerate() {
        match pulse.apply(&state) {
            Ok(next) => {
                state = next;
                if trace != TraceMode::None {
                    let rendered = if state.term_count() == 1 {
                        let (cfg, _) = state.terms().next().expect("one term");
                        render(cfg, arrows)
                    } else {
                        format!("{} terms", state.term_count())
                    };
                    println!("step {k} {pulse} {rendered}");
                    if trace == TraceMode::Full {
                        print!("{}", state.dump());
                    }
                }
            }
            Err(e) => {
                failed = Some(e);
                break;
            }
        }
    }
    if let Some(e) = failed {
        return Err(Failure::new(3, e.to_string()));
    }
    let dump = state.dump();
    match &args.out {
        Some(path) => fs::write(path, dump)
            .map_err(|e| Failure::new(3, format!("cannot write {}: {e}", path.display())))?,
        None => print!("{dump}"),
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> CliResult {
    let reports = verify::run_suite(&args.suite, cli.seed).ok_or_else(|| {
        usage(format!(
            "unknown suite {:?}; choose from {}",
            args.suite,
            verify::SUITE_NAMES.join(", ")
        ))
    })?;
    let mut all_passed = true;
    for report in &reports {
        for check in &report.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            println!("{status} {}: {}", check.name, check.detail);
        }
        all_passed &= report.passed;
        println!(
            "suite {}: {}",
            report.suite,
            if report.passed { "PASS" } else { "FAIL" }
        );
    }
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&reports).expect("suite reports serialize");
        fs::write(path, json)
            .map_err(|e| Failure::new(3, format!("cannot write {}: {e}", path.display())))?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::new(1, String::new()))
    }
}

fn parse_class_token(tok: &str) -> Result<PulseClass, Failure> {
    if tok.is_empty() {
        return Err(usage("empty class token"));
    }
    let (target, m_str) = tok.split_at(1);
    let target = match target {
        "A" => Sublattice::A,
        "B" => Sublattice::B,
        "D" => Sublattice::D,
        _ => return Err(usage(format!("bad class token {tok:?}"))),
    };
    let m = NeighborSum::parse_token(m_str)
        .ok_or_else(|| usage(format!("bad class token {tok:?}")))?;
    Ok(PulseClass::new(target, m))
}

fn cmd_search(args: &SearchArgs) -> CliResult {
    let start = ChainConfig::parse(&args.start).map_err(|e| usage(e.to_string()))?;
    let goal = ChainConfig::parse(&args.goal).map_err(|e| usage(e.to_string()))?;
    let allowed = match &args.allowed {
        Some(s) => s
            .split(',')
            .map(|t| parse_class_token(t.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => full_alphabet(),
    };
    match find_sequence_capped(&start, &goal, args.max_len, &allowed, args.node_cap) {
        Ok(program) => {
            let script = program.format_script();
            match &args.out {
                Some(path) => fs::write(path, script).map_err(|e| {
                    Failure::new(3, format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{script}"),
            }
            Ok(())
        }
        Err(e @ SearchError::NotFound { .. }) => Err(Failure::new(1, e.to_string())),
        Err(e @ SearchError::SearchSpaceExceeded { .. }) => Err(Failure::new(3, e.to_string())),
        Err(e) => Err(usage(e.to_string())),
    }
}

fn temps_for(args: &PhysicsArgs, default: f64) -> Result<Vec<f64>, Failure> {
    if let Some(sweep) = &args.sweep {
        let parts: Vec<&str> = sweep.split(':').collect();
        if parts.len() != 3 {
            return Err(usage("sweep must be lo:hi:steps"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| usage("bad sweep lo"))?;
        let hi: f64 = parts[1].parse().map_err(|_| usage("bad sweep hi"))?;
        let steps: usize = parts[2].parse().map_err(|_| usage("bad sweep steps"))?;
        if lo <= 0.0 || hi <= lo || steps < 2 {
            return Err(usage("sweep needs 0 < lo < hi and steps >= 2"));
        }
        let ratio = (hi / lo).ln();
        Ok((0..steps)
            .map(|i| lo * (ratio * i as f64 / (steps - 1) as f64).exp())
            .collect())
    } else {
        Ok(vec![args.temp.unwrap_or(default)])
    }
}

fn cmd_physics(args: &PhysicsArgs) -> CliResult {
    if args.quantity == "list" {
        for m in materials::builtin() {
            println!("{}", m.name);
        }
        return Ok(());
    }
    let material = materials::by_name(&args.material)
        .ok_or_else(|| usage(format!("unknown material {:?}; try `list`", args.material)))?;
    material.validate().map_err(|e| usage(e.to_string()))?;
    let model = || SpinWaveModel::easy_axis(material.clone()).map_err(|e| usage(e.to_string()));
    let phys_err = |e: physics::PhysicsError| Failure::new(1, e.to_string());

    match args.quantity.as_str() {
        "bmin" => println!("bmin_tesla\t{:.6e}", material.b_min()),
        "tns" => {
            let (t_ns, _) = critical_temperatures(&material);
            println!("t_ns_kelvin\t{t_ns:.6e}");
        }
        "tni" => {
            let (_, t_ni) = critical_temperatures(&material);
            println!("t_ni_kelvin\t{t_ni:.6e}");
        }
        "freq" => {
            println!("class\tfrequency_hz");
            for target in [Sublattice::A, Sublattice::B] {
                for m in NeighborSum::ALL {
                    let class = PulseClass::new(target, m);
                    let f = frequency_of_class(class, &material, args.field).map_err(phys_err)?;
                    println!("{target}{m}\t{f:.6e}");
                }
            }
            if material.dopant.is_some() {
                let f = resonance_frequency(&material, args.field, Sublattice::D, NeighborSum::Zero)
                    .map_err(phys_err)?;
                println!("D0\t{f:.6e}");
            }
        }
        "const" => {
            let c = fit_asymptotic_const(&model()?).map_err(phys_err)?;
            println!("fitted_const\t{c:.6e}");
        }
        "p" | "pasym" | "magnetization" | "t2" => {
            let model = model()?;
            let default_t = model.epsilon0 / (10.0 * physics::CONSTANTS.k_b);
            let temps = temps_for(args, default_t)?;
            let header = match args.quantity.as_str() {
                "p" => "p_integral",
                "pasym" => "p_asymptotic",
                "magnetization" => "magnetization_j_per_t",
                _ => "t2_rate_per_s\tt2_seconds",
            };
            println!("temperature_k\t{header}");
            for t in temps {
                match args.quantity.as_str() {
                    "p" => {
                        let p = thermal_fluctuation_p(&model, t, FluctuationMethod::Integral)
                            .map_err(phys_err)?;
                        println!("{t:.6e}\t{p:.6e}");
                    }
                    "pasym" => {
                        let p = thermal_fluctuation_p(&model, t, FluctuationMethod::Asymptotic)
                            .map_err(phys_err)?;
                        println!("{t:.6e}\t{p:.6e}");
                    }
                    "magnetization" => {
                        let m = sublattice_magnetization(&model, t, 1.0).map_err(phys_err)?;
                        println!("{t:.6e}\t{m:.6e}");
                    }
                    _ => {
                        let (rate, t2) = t2_decoherence(&model, t).map_err(phys_err)?;
                        match t2 {
                            Some(t2) => println!("{t:.6e}\t{rate:.6e}\t{t2:.6e}"),
                            None => println!("{t:.6e}\t{rate:.6e}\tinf"),
                        }
                    }
                }
            }
        }
        "polarization" => {
            let temps = temps_for(args, 1e-3)?;
            println!("temperature_k\tratio\texcited_fraction");
            for t in temps {
                let (ratio, excited) =
                    polarization_check(&material, args.field, t).map_err(phys_err)?;
                println!("{t:.6e}\t{ratio:.6e}\t{excited:.6e}");
            }
        }
        other => {
            return Err(usage(format!(
                "unknown quantity {other:?}; choose bmin, tns, tni, freq, p, pasym, const, \
                 magnetization, t2, polarization, list"
            )))
        }
    }
    Ok(())
}

fn cmd_encode(cli: &Cli, args: &EncodeArgs) -> CliResult {
    let bits: Vec<u8> = args
        .bits
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(usage(format!("bits must be 0/1, got {other:?}"))),
        })
        .collect::<Result<_, _>>()?;
    let mut layout = RegisterLayout::with_spacers(bits.len(), args.cu, args.spacer, args.cu_spacer)
        .and_then(|l| l.with_lead(args.lead))
        .map_err(|e| usage(e.to_string()))?;
    if let Some(cells) = args.cells {
        layout = layout.with_cells(cells).map_err(|e| usage(e.to_string()))?;
    }
    let config = encode_register(&bits, &layout).map_err(|e| usage(e.to_string()))?;
    println!("{}", render(&config, cli.arrows));
    Ok(())
}
