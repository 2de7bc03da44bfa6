//! Run configuration: a flat `key = value` document with optional
//! `[section]` headers.
//!
//! Keys are written either as `section.key` or, inside a section, as the bare
//! key. Quantities carry a unit suffix (`36 MHz`, `0.3 nm`, `1 nN`, `560 nK`);
//! ordinary frequencies (`Hz`, `kHz`, `MHz`, `GHz`) are converted to angular
//! frequency, `rad/s` is taken as is. A bare number is read in the SI unit of
//! the key, Hz for frequencies. Omitted keys keep their red-point defaults.

use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;

use crate::casimir_polder::{cp_fourier_wq, AtomSpecies};
use crate::constants::{red_point, PhysicalConstants};
use crate::effective::{effective_params, DriveParams, EffectiveParams};
use crate::membrane::{fundamental_frequency, membrane_mass, GrapheneSheet, MembraneMode};
use crate::quadrature::QuadConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// Where the offending text came from (`"config"` or `"--set"`).
    pub origin: String,
    pub line: Option<usize>,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{} line {}: {}", self.origin, l, self.msg),
            None => write!(f, "{}: {}", self.origin, self.msg),
        }
    }
}

impl std::error::Error for ConfigError {}

fn cfg_err(origin: &str, line: Option<usize>, msg: impl Into<String>) -> ConfigError {
    ConfigError {
        origin: origin.to_string(),
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// Coupling g given directly (rad/s).
    Direct { g: f64 },
    /// g derived from the CP Fourier component of an atomic layer.
    Casimir {
        z_a: f64,
        /// Areal density (1/m²).
        n0: f64,
        c4_hz_um4: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NuSource {
    Fixed(f64),
    /// ν from the sheet geometry.
    Sheet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    Detuning,
    Rabi,
    G,
    Eta,
    OmegaPh,
    Linewidth,
    Nu,
    OmegaGShift,
}

impl SweepParam {
    const ALL: [SweepParam; 8] = [
        SweepParam::Detuning,
        SweepParam::Rabi,
        SweepParam::G,
        SweepParam::Eta,
        SweepParam::OmegaPh,
        SweepParam::Linewidth,
        SweepParam::Nu,
        SweepParam::OmegaGShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Detuning => "detuning",
            SweepParam::Rabi => "rabi",
            SweepParam::G => "g",
            SweepParam::Eta => "eta",
            SweepParam::OmegaPh => "omega_ph",
            SweepParam::Linewidth => "linewidth",
            SweepParam::Nu => "nu",
            SweepParam::OmegaGShift => "omega_g_shift",
        }
    }

    /// CSV column name; frequencies are reported as ordinary frequencies.
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::Detuning => "delta_hz",
            SweepParam::Rabi => "omega_rabi_hz",
            SweepParam::G => "g_hz",
            SweepParam::Eta => "eta",
            SweepParam::OmegaPh => "omega_ph_hz",
            SweepParam::Linewidth => "gamma_hz",
            SweepParam::Nu => "nu_hz",
            SweepParam::OmegaGShift => "omega_g_shift_hz",
        }
    }

    pub fn is_frequency(self) -> bool {
        self != SweepParam::Eta
    }

    fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    /// Internal units (rad/s for frequencies).
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.min];
        }
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.max;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log if i == 0 => self.min,
                    Spacing::Log => {
                        let sign = self.min.signum();
                        let (lo, hi) = (self.min.abs().ln(), self.max.abs().ln());
                        sign * (lo + f * (hi - lo)).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolveSettings {
    pub temperatures: Vec<f64>,
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpSettings {
    pub z_min: f64,
    pub z_max: f64,
    pub points: usize,
    pub temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub quad_rel_tol: f64,
    pub max_intervals: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub atom: AtomSpecies,
    pub sheet: GrapheneSheet,
    pub drive: DriveParams,
    pub nu: NuSource,
    pub coupling: Coupling,
    /// ω^|g⟩ contribution added to ω (rad/s).
    pub omega_g_shift: f64,
    pub sweep: Vec<SweepAxis>,
    pub evolve: EvolveSettings,
    pub cp: CpSettings,
    pub tolerances: Tolerances,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let rp = red_point();
        Self {
            atom: AtomSpecies {
                linewidth_gamma: rp.gamma,
                ..AtomSpecies::rb87()
            },
            sheet: GrapheneSheet::default(),
            drive: DriveParams {
                rabi_omega: rp.omega_rabi,
                detuning_delta: rp.delta,
                lamb_dicke_eta: rp.eta,
                phonon_omega_ph: rp.omega_ph,
            },
            nu: NuSource::Fixed(rp.nu),
            coupling: Coupling::Direct { g: rp.g },
            omega_g_shift: 0.0,
            sweep: vec![
                SweepAxis {
                    param: SweepParam::Detuning,
                    min: rp.delta / 10.0,
                    max: rp.delta * 10.0,
                    count: 41,
                    spacing: Spacing::Log,
                },
                SweepAxis {
                    param: SweepParam::Rabi,
                    min: rp.omega_rabi / 10.0,
                    max: rp.omega_rabi * 10.0,
                    count: 41,
                    spacing: Spacing::Log,
                },
            ],
            evolve: EvolveSettings {
                temperatures: vec![0.01, 1.0, 70.0, 300.0],
                t_min: 1e-6,
                t_max: 2.0,
                points: 200,
            },
            cp: CpSettings {
                z_min: 0.05e-6,
                z_max: 20e-6,
                points: 40,
                temperature: 0.0,
            },
            tolerances: Tolerances {
                quad_rel_tol: 1e-8,
                max_intervals: 2000,
            },
            output: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Dim {
    Frequency,
    Length,
    Force,
    Pressure,
    Temperature,
    Time,
    Mass,
    Density,
    ArealDensity,
    Polarizability,
    C4,
    Dimensionless,
}

impl Dim {
    fn name(self) -> &'static str {
        match self {
            Dim::Frequency => "frequency",
            Dim::Length => "length",
            Dim::Force => "force",
            Dim::Pressure => "pressure",
            Dim::Temperature => "temperature",
            Dim::Time => "time",
            Dim::Mass => "mass",
            Dim::Density => "mass density",
            Dim::ArealDensity => "areal density",
            Dim::Polarizability => "polarizability",
            Dim::C4 => "C4 coefficient",
            Dim::Dimensionless => "dimensionless number",
        }
    }

    /// (power of ten, multiply by 2π) for a unit suffix.
    fn unit(self, unit: &str) -> Option<(i32, bool)> {
        let u = unit.replace('µ', "u");
        let t = match (self, u.as_str()) {
            (Dim::Frequency, "" | "Hz") => (0, true),
            (Dim::Frequency, "kHz") => (3, true),
            (Dim::Frequency, "MHz") => (6, true),
            (Dim::Frequency, "GHz") => (9, true),
            (Dim::Frequency, "rad/s") => (0, false),
            (Dim::Length, "" | "m") => (0, false),
            (Dim::Length, "mm") => (-3, false),
            (Dim::Length, "um") => (-6, false),
            (Dim::Length, "nm") => (-9, false),
            (Dim::Length, "pm") => (-12, false),
            (Dim::Force, "" | "N") => (0, false),
            (Dim::Force, "mN") => (-3, false),
            (Dim::Force, "uN") => (-6, false),
            (Dim::Force, "nN") => (-9, false),
            (Dim::Force, "pN") => (-12, false),
            (Dim::Pressure, "" | "Pa") => (0, false),
            (Dim::Pressure, "kPa") => (3, false),
            (Dim::Pressure, "MPa") => (6, false),
            (Dim::Pressure, "GPa") => (9, false),
            (Dim::Pressure, "TPa") => (12, false),
            (Dim::Temperature, "" | "K") => (0, false),
            (Dim::Temperature, "mK") => (-3, false),
            (Dim::Temperature, "uK") => (-6, false),
            (Dim::Temperature, "nK") => (-9, false),
            (Dim::Time, "" | "s") => (0, false),
            (Dim::Time, "ms") => (-3, false),
            (Dim::Time, "us") => (-6, false),
            (Dim::Time, "ns") => (-9, false),
            (Dim::Mass, "" | "kg") => (0, false),
            (Dim::Density, "" | "kg/m^3") => (0, false),
            (Dim::ArealDensity, "" | "m^-2") => (0, false),
            (Dim::ArealDensity, "um^-2") => (12, false),
            (Dim::Polarizability, "" | "C^2m^2/J") => (0, false),
            (Dim::C4, "" | "Hz*um^4" | "Hz um^4") => (0, false),
            (Dim::Dimensionless, "") => (0, false),
            _ => return None,
        };
        Some(t)
    }

    /// Preferred unit for the resolved-config dump.
    fn display_unit(self) -> &'static str {
        match self {
            Dim::Frequency => "Hz",
            Dim::Length => "m",
            Dim::Force => "N",
            Dim::Pressure => "Pa",
            Dim::Temperature => "K",
            Dim::Time => "s",
            Dim::Mass => "kg",
            Dim::Density => "kg/m^3",
            Dim::ArealDensity => "m^-2",
            Dim::Polarizability | Dim::C4 | Dim::Dimensionless => "",
        }
    }
}

/// Splits `"36 MHz"` into its numeric text and unit.
fn split_number(text: &str) -> (&str, &str) {
    let b = text.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
        i += 1;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    (&text[..i], text[i..].trim())
}

fn parse_quantity(text: &str, dim: Dim) -> Result<f64, String> {
    let text = text.trim();
    let (num, unit) = split_number(text);
    if num.is_empty() {
        return Err(format!("expected a number, got '{text}'"));
    }
    let (exp10, angular) = dim
        .unit(unit)
        .ok_or_else(|| format!("unit mismatch: '{unit}' is not a unit of {}", dim.name()))?;
    // shifting the decimal exponent in the text keeps "6.07 MHz" exactly 6.07e6
    let value = if exp10 == 0 {
        num.parse::<f64>()
    } else if num.contains(['e', 'E']) {
        num.parse::<f64>().map(|v| v * 10f64.powi(exp10))
    } else {
        format!("{num}e{exp10}").parse::<f64>()
    }
    .map_err(|e| format!("invalid number '{num}': {e}"))?;
    if !value.is_finite() {
        return Err(format!("value '{text}' is not finite"));
    }
    Ok(if angular { value * TAU } else { value })
}

fn parse_count(text: &str) -> Result<usize, String> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| format!("expected a non-negative integer, got '{}'", text.trim()))
}

const KEYS: &[(&str, &str)] = &[
    ("atom", "d2_wavelength"),
    ("atom", "linewidth"),
    ("atom", "static_polarizability"),
    ("atom", "mass"),
    ("sheet", "length"),
    ("sheet", "width"),
    ("sheet", "thickness"),
    ("sheet", "density"),
    ("sheet", "youngs_modulus"),
    ("sheet", "tension"),
    ("sheet", "clamping"),
    ("drive", "rabi"),
    ("drive", "detuning"),
    ("drive", "eta"),
    ("drive", "omega_ph"),
    ("mode", "nu"),
    ("coupling", "g"),
    ("coupling", "z_a"),
    ("coupling", "n0"),
    ("coupling", "c4"),
    ("coupling", "omega_g_shift"),
    ("sweep", "x"),
    ("sweep", "y"),
    ("evolve", "temperatures"),
    ("evolve", "t_min"),
    ("evolve", "t_max"),
    ("evolve", "points"),
    ("cp", "z_min"),
    ("cp", "z_max"),
    ("cp", "points"),
    ("cp", "temperature"),
    ("tolerances", "quad_rel_tol"),
    ("tolerances", "max_intervals"),
    ("output", "path"),
];

fn resolve_key(section: Option<&str>, key: &str) -> Result<(&'static str, &'static str), String> {
    if let Some((s, k)) = key.split_once('.') {
        return KEYS
            .iter()
            .find(|(ks, kk)| *ks == s && *kk == k)
            .copied()
            .ok_or_else(|| format!("unknown key '{key}'"));
    }
    if let Some(s) = section {
        return KEYS
            .iter()
            .find(|(ks, kk)| *ks == s && *kk == key)
            .copied()
            .ok_or_else(|| format!("unknown key '{key}' in section [{s}]"));
    }
    let mut hits = KEYS.iter().filter(|(_, kk)| *kk == key);
    match (hits.next(), hits.next()) {
        (Some(h), None) => Ok(*h),
        (Some(_), Some(_)) => Err(format!(
            "ambiguous key '{key}', qualify it with its section"
        )),
        _ => Err(format!("unknown key '{key}'")),
    }
}

/// Accumulates the coupling keys so the active mode can be decided once the
/// whole document has been read.
#[derive(Debug, Default, Clone, Copy)]
struct CouplingKeys {
    g: Option<(f64, usize)>,
    z_a: Option<(f64, usize)>,
    n0: Option<(f64, usize)>,
    c4: Option<(f64, usize)>,
}

impl RunConfig {
    fn set(
        &mut self,
        section: &str,
        key: &str,
        value: &str,
        ck: &mut CouplingKeys,
        line: usize,
    ) -> Result<(), String> {
        use Dim::*;
        let q = |dim| parse_quantity(value, dim);
        match (section, key) {
            ("atom", "d2_wavelength") => {
                let l = q(Length)?;
                self.atom.d2_wavelength = l;
                self.atom.transition_angular_frequency = TAU * PhysicalConstants::SI.c_light / l;
            }
            ("atom", "linewidth") => self.atom.linewidth_gamma = q(Frequency)?,
            ("atom", "static_polarizability") => {
                self.atom.static_polarizability = q(Polarizability)?
            }
            ("atom", "mass") => self.atom.atomic_mass = q(Mass)?,
            ("sheet", "length") => self.sheet.length_l = q(Length)?,
            ("sheet", "width") => self.sheet.width_w = q(Length)?,
            ("sheet", "thickness") => self.sheet.thickness_t = q(Length)?,
            ("sheet", "density") => self.sheet.density_rho = q(Density)?,
            ("sheet", "youngs_modulus") => self.sheet.youngs_e = q(Pressure)?,
            ("sheet", "tension") => self.sheet.tension_t = q(Force)?,
            ("sheet", "clamping") => self.sheet.clamping_a = q(Dimensionless)?,
            ("drive", "rabi") => self.drive.rabi_omega = q(Frequency)?,
            ("drive", "detuning") => self.drive.detuning_delta = q(Frequency)?,
            ("drive", "eta") => self.drive.lamb_dicke_eta = q(Dimensionless)?,
            ("drive", "omega_ph") => self.drive.phonon_omega_ph = q(Frequency)?,
            ("mode", "nu") => {
                self.nu = if value.trim() == "sheet" {
                    NuSource::Sheet
                } else {
                    NuSource::Fixed(q(Frequency)?)
                }
            }
            ("coupling", "g") => ck.g = Some((q(Frequency)?, line)),
            ("coupling", "z_a") => ck.z_a = Some((q(Length)?, line)),
            ("coupling", "n0") => ck.n0 = Some((q(ArealDensity)?, line)),
            ("coupling", "c4") => ck.c4 = Some((q(C4)?, line)),
            ("coupling", "omega_g_shift") => self.omega_g_shift = q(Frequency)?,
            ("sweep", axis @ ("x" | "y")) => {
                let idx = usize::from(axis == "y");
                let parsed = parse_axis(value)?;
                match (idx, parsed) {
                    (0, Some(a)) => {
                        if self.sweep.is_empty() {
                            self.sweep.push(a)
                        } else {
                            self.sweep[0] = a
                        }
                    }
                    (0, None) => self.sweep.clear(),
                    (_, Some(a)) => {
                        if self.sweep.is_empty() {
                            return Err("sweep.y requires sweep.x".into());
                        }
                        self.sweep.truncate(1);
                        self.sweep.push(a);
                    }
                    (_, None) => self.sweep.truncate(1),
                }
            }
            ("evolve", "temperatures") => {
                self.evolve.temperatures = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_quantity(s, Temperature))
                    .collect::<Result<_, _>>()?
            }
            ("evolve", "t_min") => self.evolve.t_min = q(Time)?,
            ("evolve", "t_max") => self.evolve.t_max = q(Time)?,
            ("evolve", "points") => self.evolve.points = parse_count(value)?,
            ("cp", "z_min") => self.cp.z_min = q(Length)?,
            ("cp", "z_max") => self.cp.z_max = q(Length)?,
            ("cp", "points") => self.cp.points = parse_count(value)?,
            ("cp", "temperature") => self.cp.temperature = q(Temperature)?,
            ("tolerances", "quad_rel_tol") => self.tolerances.quad_rel_tol = q(Dimensionless)?,
            ("tolerances", "max_intervals") => self.tolerances.max_intervals = parse_count(value)?,
            ("output", "path") => {
                let p = value.trim().trim_matches('"');
                self.output = if p.is_empty() || p == "-" {
                    None
                } else {
                    Some(PathBuf::from(p))
                };
            }
            _ => unreachable!("key table and setter disagree on {section}.{key}"),
        }
        Ok(())
    }

    /// Applies a document on top of the current values.
    pub fn apply_document(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        let mut section: Option<String> = None;
        let mut seen: Vec<(&str, &str)> = Vec::new();
        let mut ck = CouplingKeys::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| cfg_err(origin, Some(line), "unterminated section header"))?
                    .trim();
                if !KEYS.iter().any(|(s, _)| *s == name) {
                    return Err(cfg_err(
                        origin,
                        Some(line),
                        format!("unknown section [{name}]"),
                    ));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                cfg_err(
                    origin,
                    Some(line),
                    format!("expected 'key = value', got '{content}'"),
                )
            })?;
            let (s, k) = resolve_key(section.as_deref(), key.trim())
                .map_err(|m| cfg_err(origin, Some(line), m))?;
            if seen.contains(&(s, k)) {
                return Err(cfg_err(
                    origin,
                    Some(line),
                    format!("duplicate key '{s}.{k}'"),
                ));
            }
            seen.push((s, k));
            self.set(s, k, value, &mut ck, line)
                .map_err(|m| cfg_err(origin, Some(line), format!("{s}.{k}: {m}")))?;
        }
        self.apply_coupling(ck, origin)
    }

    fn apply_coupling(&mut self, ck: CouplingKeys, origin: &str) -> Result<(), ConfigError> {
        let casimir_key = ck.z_a.or(ck.n0);
        if let (Some((_, lg)), Some((_, lc))) = (ck.g, casimir_key) {
            return Err(cfg_err(
                origin,
                Some(lg.max(lc)),
                "conflicting coupling modes: give either coupling.g or (coupling.z_a, coupling.n0), not both",
            ));
        }
        if let Some((g, _)) = ck.g {
            self.coupling = Coupling::Direct { g };
            if let Some((_, l)) = ck.c4 {
                return Err(cfg_err(
                    origin,
                    Some(l),
                    "coupling.c4 only applies with coupling.z_a and coupling.n0",
                ));
            }
        } else if casimir_key.is_some() || ck.c4.is_some() {
            let rp = red_point();
            let (z0, n00, c40) = match self.coupling {
                Coupling::Casimir { z_a, n0, c4_hz_um4 } => (z_a, Some(n0), c4_hz_um4),
                Coupling::Direct { .. } => (rp.z_a, None, rp.c4_hz_um4),
            };
            let n0 = match ck.n0.map(|v| v.0).or(n00) {
                Some(n) => n,
                None => {
                    let l = ck.z_a.or(ck.c4).map(|v| v.1);
                    return Err(cfg_err(
                        origin,
                        l,
                        "Casimir-Polder coupling needs coupling.n0 (areal density)",
                    ));
                }
            };
            self.coupling = Coupling::Casimir {
                z_a: ck.z_a.map_or(z0, |v| v.0),
                n0,
                c4_hz_um4: ck.c4.map_or(c40, |v| v.0),
            };
        }
        Ok(())
    }

    /// Applies a single `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        if !assignment.contains('=') {
            return Err(cfg_err(
                "--set",
                None,
                format!("expected key=value, got '{assignment}'"),
            ));
        }
        self.apply_document(assignment, "--set")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let e = |m: String| cfg_err("config", None, m);
        self.atom.validate().map_err(|x| e(x.to_string()))?;
        self.sheet.validate().map_err(|x| e(x.to_string()))?;
        self.drive.validate().map_err(|x| e(x.to_string()))?;
        if let NuSource::Fixed(nu) = self.nu {
            if !(nu > 0.0) {
                return Err(e(format!("mode.nu must be positive, got {nu}")));
            }
        }
        if let Coupling::Casimir { z_a, n0, .. } = self.coupling {
            if !(z_a > 0.0) || !(n0 >= 0.0) {
                return Err(e(format!(
                    "need coupling.z_a > 0 and coupling.n0 >= 0, got ({z_a}, {n0})"
                )));
            }
        }
        if self.sweep.len() > 2 {
            return Err(e("at most two sweep axes".into()));
        }
        for axis in &self.sweep {
            if axis.param == SweepParam::G && matches!(self.coupling, Coupling::Casimir { .. }) {
                return Err(e("sweeping g requires direct coupling (coupling.g)".into()));
            }
            if axis.spacing == Spacing::Log && !(axis.min * axis.max > 0.0) {
                return Err(e(format!(
                    "log axis over {} needs bounds of equal sign, got {}..{}",
                    axis.param.name(),
                    axis.min,
                    axis.max
                )));
            }
        }
        if self.evolve.temperatures.iter().any(|t| !(*t >= 0.0)) {
            return Err(e("evolve.temperatures must be >= 0".into()));
        }
        if !(self.evolve.t_min > 0.0 && self.evolve.t_max > self.evolve.t_min)
            || self.evolve.points < 2
        {
            return Err(e("evolve needs 0 < t_min < t_max and points >= 2".into()));
        }
        if !(self.cp.z_min > 0.0 && self.cp.z_max >= self.cp.z_min) || !(self.cp.temperature >= 0.0)
        {
            return Err(e("cp needs 0 < z_min <= z_max and temperature >= 0".into()));
        }
        if !(self.tolerances.quad_rel_tol > 0.0) || self.tolerances.max_intervals == 0 {
            return Err(e("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            rel_tol: self.tolerances.quad_rel_tol,
            abs_tol: 0.0,
            max_intervals: self.tolerances.max_intervals,
        }
    }

    pub fn mode(&self) -> crate::Result<MembraneMode> {
        let nu = match self.nu {
            NuSource::Fixed(nu) => nu,
            NuSource::Sheet => fundamental_frequency(&self.sheet)?,
        };
        Ok(MembraneMode::new(
            nu,
            membrane_mass(&self.sheet)?,
            self.sheet.length_l,
            &PhysicalConstants::SI,
        ))
    }

    /// ω^|g⟩ of the configured atomic layer; zero for direct coupling.
    pub fn omega_g(&self, mode: &MembraneMode) -> crate::Result<f64> {
        match self.coupling {
            Coupling::Direct { .. } => Ok(0.0),
            Coupling::Casimir { z_a, n0, c4_hz_um4 } => cp_fourier_wq(c4_hz_um4, mode.q0, z_a, n0),
        }
    }

    pub fn effective_params(&self) -> crate::Result<EffectiveParams> {
        let mode = self.mode()?;
        let omega_g = self.omega_g(&mode)?;
        let g = match self.coupling {
            Coupling::Direct { g } => Some(g),
            Coupling::Casimir { .. } => None,
        };
        effective_params(
            &self.atom,
            &self.drive,
            &mode,
            omega_g,
            self.omega_g_shift,
            g,
        )
    }

    /// Copy with one sweep parameter replaced.
    pub fn with_param(&self, param: SweepParam, value: f64) -> RunConfig {
        let mut c = self.clone();
        match param {
            SweepParam::Detuning => c.drive.detuning_delta = value,
            SweepParam::Rabi => c.drive.rabi_omega = value,
            SweepParam::G => c.coupling = Coupling::Direct { g: value },
            SweepParam::Eta => c.drive.lamb_dicke_eta = value,
            SweepParam::OmegaPh => c.drive.phonon_omega_ph = value,
            SweepParam::Linewidth => c.atom.linewidth_gamma = value,
            SweepParam::Nu => c.nu = NuSource::Fixed(value),
            SweepParam::OmegaGShift => c.omega_g_shift = value,
        }
        c
    }

    /// Red-point entries whose resolved value differs from the table.
    pub fn overrides(&self) -> Vec<String> {
        let d = RunConfig::default();
        let mut out = Vec::new();
        let mut check = |name: &str, a: f64, b: f64| {
            if a != b {
                out.push(format!("{name}: {} -> {}", fmt_f(b), fmt_f(a)));
            }
        };
        check(
            "drive.eta",
            self.drive.lamb_dicke_eta,
            d.drive.lamb_dicke_eta,
        );
        check("drive.rabi", self.drive.rabi_omega, d.drive.rabi_omega);
        check(
            "drive.detuning",
            self.drive.detuning_delta,
            d.drive.detuning_delta,
        );
        check(
            "drive.omega_ph",
            self.drive.phonon_omega_ph,
            d.drive.phonon_omega_ph,
        );
        check(
            "atom.linewidth",
            self.atom.linewidth_gamma,
            d.atom.linewidth_gamma,
        );
        check(
            "coupling.omega_g_shift",
            self.omega_g_shift,
            d.omega_g_shift,
        );
        if self.nu != d.nu {
            out.push(format!("mode.nu: {:?} -> {:?}", d.nu, self.nu));
        }
        if self.coupling != d.coupling {
            out.push(format!("coupling: {:?} -> {:?}", d.coupling, self.coupling));
        }
        out
    }

    /// Fully resolved configuration in the input format; parsing it back
    /// reproduces `self` exactly.
    pub fn to_document(&self) -> String {
        use Dim::*;
        let mut s = String::new();
        let mut section = |name: &str, entries: Vec<(&str, String)>| {
            s.push_str(&format!("[{name}]\n"));
            for (k, v) in entries {
                s.push_str(&format!("{k} = {v}\n"));
            }
            s.push('\n');
        };
        section(
            "atom",
            vec![
                ("d2_wavelength", fmt_q(self.atom.d2_wavelength, Length)),
                ("linewidth", fmt_q(self.atom.linewidth_gamma, Frequency)),
                (
                    "static_polarizability",
                    fmt_q(self.atom.static_polarizability, Polarizability),
                ),
                ("mass", fmt_q(self.atom.atomic_mass, Mass)),
            ],
        );
        section(
            "sheet",
            vec![
                ("length", fmt_q(self.sheet.length_l, Length)),
                ("width", fmt_q(self.sheet.width_w, Length)),
                ("thickness", fmt_q(self.sheet.thickness_t, Length)),
                ("density", fmt_q(self.sheet.density_rho, Density)),
                ("youngs_modulus", fmt_q(self.sheet.youngs_e, Pressure)),
                ("tension", fmt_q(self.sheet.tension_t, Force)),
                ("clamping", fmt_q(self.sheet.clamping_a, Dimensionless)),
            ],
        );
        section(
            "drive",
            vec![
                ("rabi", fmt_q(self.drive.rabi_omega, Frequency)),
                ("detuning", fmt_q(self.drive.detuning_delta, Frequency)),
                ("eta", fmt_q(self.drive.lamb_dicke_eta, Dimensionless)),
                ("omega_ph", fmt_q(self.drive.phonon_omega_ph, Frequency)),
            ],
        );
        let nu = match self.nu {
            NuSource::Fixed(v) => fmt_q(v, Frequency),
            NuSource::Sheet => "sheet".into(),
        };
        section("mode", vec![("nu", nu)]);
        let mut coupling = match self.coupling {
            Coupling::Direct { g } => vec![("g", fmt_q(g, Frequency))],
            Coupling::Casimir { z_a, n0, c4_hz_um4 } => vec![
                ("z_a", fmt_q(z_a, Length)),
                ("n0", fmt_q(n0, ArealDensity)),
                ("c4", fmt_q(c4_hz_um4, C4)),
            ],
        };
        coupling.push(("omega_g_shift", fmt_q(self.omega_g_shift, Frequency)));
        section("coupling", coupling);
        let axis = |a: Option<&SweepAxis>| match a {
            None => "none".to_string(),
            Some(a) => {
                let dim = if a.param.is_frequency() {
                    Frequency
                } else {
                    Dimensionless
                };
                let spacing = if a.spacing == Spacing::Log {
                    "log"
                } else {
                    "linear"
                };
                format!(
                    "{}, {}, {}, {}, {}",
                    a.param.name(),
                    fmt_q(a.min, dim),
                    fmt_q(a.max, dim),
                    a.count,
                    spacing
                )
            }
        };
        section(
            "sweep",
            vec![
                ("x", axis(self.sweep.first())),
                ("y", axis(self.sweep.get(1))),
            ],
        );
        let temps: Vec<String> = self
            .evolve
            .temperatures
            .iter()
            .map(|t| fmt_q(*t, Temperature))
            .collect();
        section(
            "evolve",
            vec![
                ("temperatures", temps.join(", ")),
                ("t_min", fmt_q(self.evolve.t_min, Time)),
                ("t_max", fmt_q(self.evolve.t_max, Time)),
                ("points", self.evolve.points.to_string()),
            ],
        );
        section(
            "cp",
            vec![
                ("z_min", fmt_q(self.cp.z_min, Length)),
                ("z_max", fmt_q(self.cp.z_max, Length)),
                ("points", self.cp.points.to_string()),
                ("temperature", fmt_q(self.cp.temperature, Temperature)),
            ],
        );
        section(
            "tolerances",
            vec![
                ("quad_rel_tol", fmt_f(self.tolerances.quad_rel_tol)),
                ("max_intervals", self.tolerances.max_intervals.to_string()),
            ],
        );
        let path = self
            .output
            .as_ref()
            .map_or("-".to_string(), |p| p.display().to_string());
        section("output", vec![("path", path)]);
        s.trim_end().to_string() + "\n"
    }
}

fn parse_axis(value: &str) -> Result<Option<SweepAxis>, String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() == 1 && parts[0] == "none" {
        return Ok(None);
    }
    if !(4..=5).contains(&parts.len()) {
        return Err("sweep axis format is 'name, min, max, count[, linear|log]' or 'none'".into());
    }
    let param = SweepParam::from_name(parts[0]).ok_or_else(|| {
        let names: Vec<&str> = SweepParam::ALL.iter().map(|p| p.name()).collect();
        format!(
            "unknown sweep parameter '{}', expected one of {}",
            parts[0],
            names.join(", ")
        )
    })?;
    let dim = if param.is_frequency() {
        Dim::Frequency
    } else {
        Dim::Dimensionless
    };
    let spacing = match parts.get(4).copied().unwrap_or("linear") {
        "linear" => Spacing::Linear,
        "log" => Spacing::Log,
        other => {
            return Err(format!(
                "axis spacing must be 'linear' or 'log', got '{other}'"
            ))
        }
    };
    Ok(Some(SweepAxis {
        param,
        min: parse_quantity(parts[1], dim)?,
        max: parse_quantity(parts[2], dim)?,
        count: parse_count(parts[3])?,
        spacing,
    }))
}

fn fmt_f(v: f64) -> String {
    format!("{v:?}")
}

fn fmt_q(v: f64, dim: Dim) -> String {
    let unit = dim.display_unit();
    if dim == Dim::Frequency {
        let hz = v / TAU;
        if hz * TAU == v {
            return format!("{} Hz", fmt_f(hz));
        }
        return format!("{} rad/s", fmt_f(v));
    }
    if unit.is_empty() {
        fmt_f(v)
    } else {
        format!("{} {unit}", fmt_f(v))
    }
}

/// Parses a complete document over the red-point defaults and validates it.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut c = RunConfig::default();
    c.apply_document(text, "config")?;
    c.validate()?;
    Ok(c)
}
