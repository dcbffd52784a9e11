//! Design formulas: resonance frequencies, ordering temperatures,
//! spin-wave thermal fluctuations, sublattice magnetization, decoherence
//! rate, and nuclear polarization.
//!
//! Units are SI throughout: energies in joules, fields in tesla,
//! temperatures in kelvin, frequencies in hertz.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{NeighborSum, PulseClass, Sublattice};

/// Fundamental constants. `h` must equal 2π·ħ.
#[derive(Clone, Copy, Debug)]
pub struct PhysicalConstants {
    /// Nuclear magneton, J/T.
    pub mu_n: f64,
    /// Bohr magneton, J/T.
    pub mu_b: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Planck constant, J·s.
    pub h: f64,
}

impl PhysicalConstants {
    pub const fn standard() -> Self {
        PhysicalConstants {
            mu_n: 5.05e-27,
            mu_b: 9.274_010_078_3e-24,
            k_b: 1.380_649e-23,
            hbar: 1.054_571_817e-34,
            h: 6.626_070_15e-34,
        }
    }
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants::standard();

/// Hyperfine parameters of a dopant species (its own frequency namespace).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DopantParams {
    pub g_n: f64,
    /// Hyperfine constant, J.
    pub hyperfine: f64,
}

/// Material parameters feeding the frequency and spin-wave formulas.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    pub name: String,
    /// Nuclear g-factor (dimensionless).
    pub g_n: f64,
    /// Hyperfine constant A, J.
    pub hyperfine: f64,
    /// Indirect nuclear coupling, J; defaults to A²/J when absent.
    #[serde(default)]
    pub i_n: Option<f64>,
    /// Electron exchange constant J, in joules.
    pub j_ex: f64,
    /// Easy-axis anisotropy constant, J.
    pub j_a: f64,
    /// Lattice period, m.
    pub lattice: f64,
    /// Structure dimension (1, 2, or 3).
    pub dim: u8,
    /// Number of near neighbors.
    pub z: u8,
    /// Electron spin.
    pub spin_s: f64,
    #[serde(default)]
    pub dopant: Option<DopantParams>,
}

#[derive(Debug, Error, PartialEq)]
pub enum PhysicsError {
    #[error("material {0:?}: {1}")]
    BadMaterial(String, String),
    #[error("class targets the dopant but material {0:?} has no dopant parameters")]
    NoDopant(String),
    #[error("negative field {0} T")]
    NegativeField(f64),
    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
    #[error("ordered phase violated: P(T) + psi = {0} >= 1")]
    OrderedPhaseViolated(f64),
    #[error("quadrature failed to converge (best relative error {0:e})")]
    NonConvergentQuadrature(f64),
    #[error("unknown material {0:?}")]
    UnknownMaterial(String),
}

impl MaterialParams {
    pub fn validate(&self) -> Result<(), PhysicsError> {
        let fail = |msg: &str| {
            Err(PhysicsError::BadMaterial(self.name.clone(), msg.to_string()))
        };
        if self.g_n <= 0.0 {
            return fail("g_n must be positive");
        }
        if self.hyperfine <= 0.0 {
            return fail("hyperfine constant must be positive");
        }
        if !(self.j_ex > self.j_a && self.j_a >= 0.0) {
            return fail("easy-axis ordering needs j_ex > j_a >= 0");
        }
        if !(1..=3).contains(&self.dim) {
            return fail("dimension must be 1, 2, or 3");
        }
        if self.z == 0 {
            return fail("neighbor count must be positive");
        }
        if self.lattice <= 0.0 {
            return fail("lattice period must be positive");
        }
        Ok(())
    }

    /// Indirect nuclear coupling: the stored value, or the A²/J estimate.
    pub fn i_n_effective(&self) -> f64 {
        self.i_n.unwrap_or(self.hyperfine * self.hyperfine / self.j_ex)
    }

    /// Smallest field at which the nuclear Zeeman term dominates the
    /// hyperfine splitting: A / (2 g_N μ_N).
    pub fn b_min(&self) -> f64 {
        self.hyperfine / (2.0 * self.g_n * CONSTANTS.mu_n)
    }
}

/// Transition frequency of a sublattice at neighbor sum `m`:
/// |g_N μ_N B ± A/2 − I_n m| / h, the sign positive for A-sites and
/// negative for B-sites. The value is the same for the ground and excited
/// orientation of the addressed site. Dopant sites use their own g_N and
/// hyperfine constant (with the A-site sign).
pub fn resonance_frequency(
    material: &MaterialParams,
    b_field: f64,
    sublattice: Sublattice,
    m: NeighborSum,
) -> Result<f64, PhysicsError> {
    if b_field < 0.0 {
        return Err(PhysicsError::NegativeField(b_field));
    }
    let (g_n, hyperfine, sign) = match sublattice {
        Sublattice::A => (material.g_n, material.hyperfine, 1.0),
        Sublattice::B => (material.g_n, material.hyperfine, -1.0),
        Sublattice::D => {
            let d = material
                .dopant
                .ok_or_else(|| PhysicsError::NoDopant(material.name.clone()))?;
            (d.g_n, d.hyperfine, 1.0)
        }
    };
    let energy = g_n * CONSTANTS.mu_n * b_field + sign * hyperfine / 2.0
        - material.i_n_effective() * m.as_f64();
    Ok(energy.abs() / CONSTANTS.h)
}

/// [`resonance_frequency`] addressed by pulse class.
pub fn frequency_of_class(
    class: PulseClass,
    material: &MaterialParams,
    b_field: f64,
) -> Result<f64, PhysicsError> {
    resonance_frequency(material, b_field, class.target, class.m)
}

/// Electron and nuclear ordering temperatures:
/// `T_NS = J/k` and `T_NI = A²/(J·k)`.
pub fn critical_temperatures(material: &MaterialParams) -> (f64, f64) {
    let t_ns = material.j_ex / CONSTANTS.k_b;
    let t_ni = material.hyperfine * material.hyperfine / (material.j_ex * CONSTANTS.k_b);
    (t_ns, t_ni)
}

/// Spin-wave model: gap and quantum-fluctuation term over a material.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinWaveModel {
    pub material: MaterialParams,
    /// Spin-wave gap ε₀, J. Defaults to Z·sqrt(J·J_A).
    pub epsilon0: f64,
    /// Quantum-fluctuation contribution ψ; zero in the easy-axis state.
    pub psi: f64,
}

impl SpinWaveModel {
    /// Easy-axis model: ψ = 0 and the default gap Z·sqrt(J·J_A).
    pub fn easy_axis(material: MaterialParams) -> Result<Self, PhysicsError> {
        material.validate()?;
        if material.j_a <= 0.0 {
            return Err(PhysicsError::BadMaterial(
                material.name.clone(),
                "easy-axis gap needs j_a > 0".to_string(),
            ));
        }
        let epsilon0 = f64::from(material.z) * (material.j_ex * material.j_a).sqrt();
        Ok(SpinWaveModel {
            material,
            epsilon0,
            psi: 0.0,
        })
    }

    /// Override the gap.
    pub fn with_gap(mut self, epsilon0: f64) -> Self {
        self.epsilon0 = epsilon0;
        self
    }

    /// Spin-wave energy at dimensionless wave number x = a·k.
    fn dispersion(&self, x: f64) -> f64 {
        (self.epsilon0 * self.epsilon0 + (self.material.j_ex * x).powi(2)).sqrt()
    }
}

/// Evaluation route for the thermal-fluctuation integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluctuationMethod {
    /// Adaptive quadrature of the Bose integral over the Brillouin ball.
    Integral,
    /// Gap asymptotic `Const·(kTε₀/J²)^{d/2}·exp(−ε₀/kT)` with `Const`
    /// fitted once against the integral at kT = ε₀/10.
    Asymptotic,
}

/// Surface of the unit ball boundary in d dimensions (2, 2π, 4π).
fn sphere_surface(d: u8) -> f64 {
    match d {
        1 => 2.0,
        2 => 2.0 * std::f64::consts::PI,
        _ => 4.0 * std::f64::consts::PI,
    }
}

/// Thermal-fluctuation fraction P(T): the Bose occupation of the spin-wave
/// spectrum integrated over the isotropic Brillouin ball |k| ≤ π/a,
///
/// P(T) = S_d/(2π)^d · ∫₀^π x^{d−1} / (exp(ε(x)/kT) − 1) dx,
///
/// with x = a·k and ε(x) = sqrt(ε₀² + (J·x)²).
pub fn thermal_fluctuation_p(
    model: &SpinWaveModel,
    temperature: f64,
    method: FluctuationMethod,
) -> Result<f64, PhysicsError> {
    if temperature <= 0.0 {
        return Err(PhysicsError::NonPositiveTemperature(temperature));
    }
    match method {
        FluctuationMethod::Integral => bose_integral(model, temperature),
        FluctuationMethod::Asymptotic => {
            let c = fit_asymptotic_const(model)?;
            Ok(asymptotic_p(model, temperature, c))
        }
    }
}

fn bose_integral(model: &SpinWaveModel, temperature: f64) -> Result<f64, PhysicsError> {
    let kt = CONSTANTS.k_b * temperature;
    let d = model.material.dim;
    let f = |x: f64| {
        let z = model.dispersion(x) / kt;
        if z > 700.0 {
            return 0.0;
        }
        let weight = match d {
            1 => 1.0,
            2 => x,
            _ => x * x,
        };
        weight / z.exp_m1()
    };
    let integral = quadrature::adaptive_simpson(&f, 0.0, std::f64::consts::PI, 1e-6, 40)?;
    let norm = sphere_surface(d) / (2.0 * std::f64::consts::PI).powi(i32::from(d));
    Ok(norm * integral)
}

fn asymptotic_p(model: &SpinWaveModel, temperature: f64, fitted_const: f64) -> f64 {
    let kt = CONSTANTS.k_b * temperature;
    let j = model.material.j_ex;
    let scale = kt * model.epsilon0 / (j * j);
    fitted_const * scale.powf(f64::from(model.material.dim) / 2.0)
        * (-model.epsilon0 / kt).exp()
}

/// Fit the asymptotic prefactor against the integral route once, at the
/// reference point kT = ε₀/10 (inside the gap-dominated regime).
pub fn fit_asymptotic_const(model: &SpinWaveModel) -> Result<f64, PhysicsError> {
    let t_ref = model.epsilon0 / (10.0 * CONSTANTS.k_b);
    let p_ref = bose_integral(model, t_ref)?;
    Ok(p_ref / asymptotic_p(model, t_ref, 1.0))
}

/// Sublattice magnetization 2μ_B·N·⟨S_z⟩ = μ_B·N·(1 − P(T) − ψ), J/T.
/// Errors when P + ψ ≥ 1 (outside the ordered phase).
pub fn sublattice_magnetization(
    model: &SpinWaveModel,
    temperature: f64,
    n_spins: f64,
) -> Result<f64, PhysicsError> {
    let p = thermal_fluctuation_p(model, temperature, FluctuationMethod::Integral)?;
    let depletion = p + model.psi;
    if depletion >= 1.0 {
        return Err(PhysicsError::OrderedPhaseViolated(depletion));
    }
    Ok(CONSTANTS.mu_b * n_spins * (1.0 - depletion))
}

/// Transverse-relaxation (decoherence) rate
/// 1/T₂ = (A²/J)·(kT/J)³·(ε₀/kT)·exp(−ε₀/kT)/(π²ħ) and the time T₂ = 1/rate
/// (`None` when the rate underflows to zero).
pub fn t2_decoherence(model: &SpinWaveModel, temperature: f64) -> Result<(f64, Option<f64>), PhysicsError> {
    if temperature <= 0.0 {
        return Err(PhysicsError::NonPositiveTemperature(temperature));
    }
    let kt = CONSTANTS.k_b * temperature;
    let m = &model.material;
    let rate = (m.hyperfine * m.hyperfine / m.j_ex)
        * (kt / m.j_ex).powi(3)
        * (model.epsilon0 / kt)
        * (-model.epsilon0 / kt).exp()
        / (std::f64::consts::PI * std::f64::consts::PI * CONSTANTS.hbar);
    let t2 = if rate > 0.0 { Some(1.0 / rate) } else { None };
    Ok((rate, t2))
}

/// Nuclear polarization figure at field `b` and temperature `t`:
/// ratio = h·ν_A(0)/(kT) and the excited-state occupation
/// exp(−ratio)/(1 + exp(−ratio)). Large ratios mean the subarrays are
/// essentially fully oriented.
pub fn polarization_check(
    material: &MaterialParams,
    b_field: f64,
    temperature: f64,
) -> Result<(f64, f64), PhysicsError> {
    if temperature <= 0.0 {
        return Err(PhysicsError::NonPositiveTemperature(temperature));
    }
    let nu = resonance_frequency(material, b_field, Sublattice::A, NeighborSum::Zero)?;
    let ratio = CONSTANTS.h * nu / (CONSTANTS.k_b * temperature);
    let excited = (-ratio).exp() / (1.0 + (-ratio).exp());
    Ok((ratio, excited))
}

pub mod quadrature {
    //! Adaptive Simpson integration with a recursion-depth cap.

    use super::PhysicsError;

    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        rel_tol: f64,
        depth: usize,
    ) -> Result<f64, f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let refined = left + right;
        let err = (refined - whole) / 15.0;
        let scale = refined.abs().max(1e-300);
        if (err / scale).abs() <= rel_tol || (b - a) < 1e-12 {
            return Ok(refined + err);
        }
        if depth == 0 {
            return Err((err / scale).abs());
        }
        let l = recurse(f, a, m, fa, flm, fm, left, rel_tol, depth - 1);
        let r = recurse(f, m, b, fm, frm, fb, right, rel_tol, depth - 1);
        match (l, r) {
            (Ok(x), Ok(y)) => Ok(x + y),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    /// Integrate `f` over `[a, b]` to the given relative tolerance.
    pub fn adaptive_simpson<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        rel_tol: f64,
        max_depth: usize,
    ) -> Result<f64, PhysicsError> {
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let whole = simpson(fa, fm, fb, b - a);
        recurse(f, a, b, fa, fm, fb, whole, rel_tol, max_depth)
            .map_err(PhysicsError::NonConvergentQuadrature)
    }
}

/// Built-in material presets, parsed from the data file shipped with the
/// crate (`data/materials.toml`).
pub mod materials {
    use super::MaterialParams;
    use serde::Deserialize;

    #[derive(Deserialize)]
    struct MaterialFile {
        material: Vec<MaterialParams>,
    }

    const MATERIALS_TOML: &str = include_str!("../data/materials.toml");

    /// All shipped presets, in file order.
    pub fn builtin() -> Vec<MaterialParams> {
        let parsed: MaterialFile =
            toml::from_str(MATERIALS_TOML).expect("embedded material table parses");
        parsed.material
    }

    /// Look a preset up by (case-insensitive) name.
    pub fn by_name(name: &str) -> Option<MaterialParams> {
        builtin()
            .into_iter()
            .find(|m| m.name.eq_ignore_ascii_case(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p31() -> MaterialParams {
        materials::by_name("P31-Si").expect("reference material present")
    }

    #[test]
    fn planck_relation_holds() {
        assert_relative_eq!(
            CONSTANTS.h,
            2.0 * std::f64::consts::PI * CONSTANTS.hbar,
            max_relative = 1e-9
        );
    }

    #[test]
    fn reference_frequencies() {
        let m = p31();
        let mut no_in = m.clone();
        no_in.i_n = Some(0.0);
        let fa = resonance_frequency(&no_in, 3.5, Sublattice::A, NeighborSum::Zero).unwrap();
        assert_relative_eq!(fa, 1.188_419e8, max_relative = 1e-4);
        let fb = resonance_frequency(&no_in, 3.5, Sublattice::B, NeighborSum::Zero).unwrap();
        assert_relative_eq!(fb, 1.728_777e6, max_relative = 1e-4);
        // with no indirect coupling the frequency is m-independent
        for m_sum in NeighborSum::ALL {
            let f = resonance_frequency(&no_in, 3.5, Sublattice::A, m_sum).unwrap();
            assert_relative_eq!(f, fa);
        }
    }

    #[test]
    fn class_wrapper_matches_direct_call() {
        let m = p31();
        let class = PulseClass::new(Sublattice::A, NeighborSum::Zero);
        assert_eq!(
            frequency_of_class(class, &m, 3.5).unwrap(),
            resonance_frequency(&m, 3.5, Sublattice::A, NeighborSum::Zero).unwrap()
        );
        assert!(matches!(
            resonance_frequency(&m, -1.0, Sublattice::A, NeighborSum::Zero),
            Err(PhysicsError::NegativeField(_))
        ));
    }

    #[test]
    fn m_splitting_is_linear_in_i_n() {
        let m = p31();
        let f_plus = resonance_frequency(&m, 3.5, Sublattice::A, NeighborSum::PlusOne).unwrap();
        let f_minus = resonance_frequency(&m, 3.5, Sublattice::A, NeighborSum::MinusOne).unwrap();
        assert_relative_eq!(
            (f_minus - f_plus).abs(),
            2.0 * m.i_n_effective() / CONSTANTS.h,
            max_relative = 1e-9
        );
    }

    #[test]
    fn field_threshold_and_critical_temperatures() {
        let m = p31();
        assert_relative_eq!(m.b_min(), 3.399_632, max_relative = 1e-5);
        let (t_ns, t_ni) = critical_temperatures(&m);
        assert_relative_eq!(t_ns, 4.707_931, max_relative = 1e-5);
        assert_relative_eq!(t_ni, 6.710_066e-6, max_relative = 1e-5);
        // algebraic identity T_NI/T_NS = (A/J)^2
        assert_relative_eq!(
            t_ni / t_ns,
            (m.hyperfine / m.j_ex).powi(2),
            max_relative = 1e-12
        );
    }

    #[test]
    fn dopant_frequency_requires_dopant_params() {
        let mut m = p31();
        m.dopant = None;
        assert!(matches!(
            resonance_frequency(&m, 3.5, Sublattice::D, NeighborSum::Zero),
            Err(PhysicsError::NoDopant(_))
        ));
        m.dopant = Some(DopantParams {
            g_n: 1.1,
            hyperfine: 2.0e-26,
        });
        let f = resonance_frequency(&m, 3.5, Sublattice::D, NeighborSum::Zero).unwrap();
        assert!(f > 0.0);
    }

    #[test]
    fn polarization_reference_point() {
        let mut m = p31();
        m.i_n = Some(0.0);
        let (ratio, excited) = polarization_check(&m, 3.5, 1e-3).unwrap();
        assert_relative_eq!(ratio, 5.703_513, max_relative = 1e-5);
        assert_relative_eq!(excited, 3.323_150e-3, max_relative = 1e-4);
        // limits
        let (r0, e0) = polarization_check(&m, 0.0, 1e6).unwrap();
        assert!(r0 < 1e-6 && (e0 - 0.5).abs() < 1e-6);
    }

    #[test]
    fn bose_integral_reference_values() {
        // regression values computed with an independent quadrature
        for (dim, z, expected) in [
            (1u8, 2u8, 1.187_255_2e-6),
            (2, 4, 1.271_737_2e-7),
            (3, 6, 2.353_786_8e-8),
        ] {
            let mut m = p31();
            m.dim = dim;
            m.z = z;
            let model = SpinWaveModel::easy_axis(m).unwrap();
            let t = model.epsilon0 / (10.0 * CONSTANTS.k_b);
            let p = thermal_fluctuation_p(&model, t, FluctuationMethod::Integral).unwrap();
            assert_relative_eq!(p, expected, max_relative = 1e-4);
        }
    }

    #[test]
    fn p_vanishes_at_low_temperature_and_grows_with_t() {
        let model = SpinWaveModel::easy_axis(p31()).unwrap();
        let cold = model.epsilon0 / (60.0 * CONSTANTS.k_b);
        let p_cold = thermal_fluctuation_p(&model, cold, FluctuationMethod::Integral).unwrap();
        assert!(p_cold < 1e-20);
        let mut last = 0.0;
        for x in [50.0, 20.0, 10.0, 5.0] {
            let t = model.epsilon0 / (x * CONSTANTS.k_b);
            let p = thermal_fluctuation_p(&model, t, FluctuationMethod::Integral).unwrap();
            assert!(p > last, "P must grow with T");
            last = p;
        }
    }

    #[test]
    fn asymptotic_tracks_integral_within_factor_two() {
        for dim in [1u8, 2, 3] {
            let mut m = p31();
            m.dim = dim;
            m.z = match dim {
                1 => 2,
                2 => 4,
                _ => 6,
            };
            let model = SpinWaveModel::easy_axis(m).unwrap();
            for i in 0..=20 {
                let kt = model.epsilon0 / 50.0 * 10f64.powf(f64::from(i) / 20.0);
                let t = kt / CONSTANTS.k_b;
                let pi_ = thermal_fluctuation_p(&model, t, FluctuationMethod::Integral).unwrap();
                let pa = thermal_fluctuation_p(&model, t, FluctuationMethod::Asymptotic).unwrap();
                let ratio = pa / pi_;
                assert!(
                    (0.5..=2.0).contains(&ratio),
                    "d={dim} kT=eps0/{:.1}: ratio {ratio}",
                    model.epsilon0 / kt
                );
            }
        }
    }

    #[test]
    fn magnetization_outside_ordered_phase_errors() {
        let model = SpinWaveModel::easy_axis(p31()).unwrap();
        // far above the gap scale the Bose occupation takes P past 1
        let hot = 1e4 * model.epsilon0 / CONSTANTS.k_b;
        assert!(matches!(
            sublattice_magnetization(&model, hot, 1.0),
            Err(PhysicsError::OrderedPhaseViolated(_))
        ));
    }

    #[test]
    fn magnetization_limits() {
        let model = SpinWaveModel::easy_axis(p31()).unwrap();
        let cold = model.epsilon0 / (60.0 * CONSTANTS.k_b);
        let m_cold = sublattice_magnetization(&model, cold, 1.0).unwrap();
        assert_relative_eq!(m_cold, CONSTANTS.mu_b, max_relative = 1e-12);
        // monotone decreasing in T
        let temps: Vec<f64> = [20.0, 10.0, 5.0]
            .iter()
            .map(|x| model.epsilon0 / (x * CONSTANTS.k_b))
            .collect();
        let mags: Vec<f64> = temps
            .iter()
            .map(|t| sublattice_magnetization(&model, *t, 1.0).unwrap())
            .collect();
        assert!(mags[0] > mags[1] && mags[1] > mags[2]);
    }

    #[test]
    fn t2_reference_and_limits() {
        let model = SpinWaveModel::easy_axis(p31())
            .unwrap()
            .with_gap(0.1 * 6.5e-23);
        let t = model.epsilon0 / (3.0 * CONSTANTS.k_b);
        let (rate, t2) = t2_decoherence(&model, t).unwrap();
        assert_relative_eq!(rate, 4.923_888_67e-1, max_relative = 1e-6);
        assert_relative_eq!(t2.unwrap(), 2.030_915, max_relative = 1e-6);
        // at kT = eps0 the closed form is (A^2/J)(eps0/J)^3 e^-1/(pi^2 hbar)
        let t_eq = model.epsilon0 / CONSTANTS.k_b;
        let (rate_eq, _) = t2_decoherence(&model, t_eq).unwrap();
        let m = &model.material;
        let expect = (m.hyperfine * m.hyperfine / m.j_ex)
            * (model.epsilon0 / m.j_ex).powi(3)
            * (-1.0f64).exp()
            / (std::f64::consts::PI * std::f64::consts::PI * CONSTANTS.hbar);
        assert_relative_eq!(rate_eq, expect, max_relative = 1e-12);
        // rate vanishes as T -> 0
        let (rate_cold, t2_cold) = t2_decoherence(&model, 1e-6).unwrap();
        assert_eq!(rate_cold, 0.0);
        assert!(t2_cold.is_none());
    }

    #[test]
    fn presets_all_validate() {
        let all = materials::builtin();
        assert!(all.len() >= 8);
        for m in &all {
            m.validate().unwrap_or_else(|e| panic!("{}: {e}", m.name));
        }
        assert!(materials::by_name("p31-si").is_some());
        assert!(materials::by_name("nonesuch").is_none());
    }

    #[test]
    fn quadrature_sanity() {
        let v = quadrature::adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-9, 40)
            .unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-8);
    }
}
