//! CSV tables for every subcommand.
//!
//! Floats are written in shortest round-trip form, so parsing a cell back
//! yields the exact value that was computed. Rows always follow grid order.

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::casimir_polder::CpModel;
use crate::config::{RunConfig, Spacing, SweepAxis, SweepParam};
use crate::constants::PhysicalConstants;
use crate::effective::validate_regime;
use crate::error::{Error, Result};
use crate::moments::{
    build_system, cooling_rate, evolve, occupation_from_temperature, slow_eigenvalue,
    spectral_abscissa, temperature_from_occupation, MomentState,
};
use crate::sweep::{evaluate_point, PointValues, SweepResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(v) => format!("{v:?}"),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width does not match header"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Field>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

fn io_err(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.to_string(),
        msg: e.to_string(),
    }
}

/// Writes `table` as CSV with LF line endings.
pub fn write_csv_to<W: Write>(table: &Table, out: W, label: &str) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.header)
        .map_err(|e| io_err(label, e))?;
    for row in &table.rows {
        w.write_record(row.iter().map(Field::render))
            .map_err(|e| io_err(label, e))?;
    }
    w.flush().map_err(|e| io_err(label, e))
}

pub fn write_csv(table: &Table, path: &Path) -> Result<()> {
    let label = path.display().to_string();
    let file = File::create(path).map_err(|e| io_err(&label, e))?;
    write_csv_to(table, BufWriter::new(file), &label)
}

fn axis_field(param: SweepParam, v: f64) -> Field {
    Field::Num(if param.is_frequency() { v / TAU } else { v })
}

fn value_fields(v: Option<PointValues>) -> [Field; 4] {
    match v {
        Some(v) => [
            Field::Num(v.m_ss),
            Field::Num(v.n_total_ss),
            Field::Num(v.gamma_eff),
            Field::Bool(v.is_stable()),
        ],
        None => [
            Field::Num(f64::NAN),
            Field::Num(f64::NAN),
            Field::Num(f64::NAN),
            Field::Bool(false),
        ],
    }
}

const VALUE_COLUMNS: [&str; 4] = ["m_ss", "n_total_ss", "gamma_eff_per_s", "stable"];

/// One column per axis (ordinary frequencies in Hz), then
/// `m_ss,n_total_ss,gamma_eff_per_s,stable`. Cells without values carry NaN.
pub fn sweep_table(result: &SweepResult) -> Table {
    let mut t = Table::new(
        result
            .axes
            .iter()
            .map(|a| a.param.column())
            .chain(VALUE_COLUMNS),
    );
    for cell in &result.cells {
        let mut row: Vec<Field> = result
            .axes
            .iter()
            .zip(&cell.coords)
            .map(|(a, &v)| axis_field(a.param, v))
            .collect();
        row.extend(value_fields(cell.values));
        t.push(row);
    }
    t
}

/// The configured point as a sweep row over (detuning, rabi).
///
/// Identical to the table of a 1×1 sweep at the same point.
pub fn steady_table(config: &RunConfig) -> Result<Table> {
    let v = evaluate_point(config)?;
    let axes = [SweepParam::Detuning, SweepParam::Rabi];
    let mut t = Table::new(axes.iter().map(|p| p.column()).chain(VALUE_COLUMNS));
    let mut row = vec![
        axis_field(SweepParam::Detuning, config.drive.detuning_delta),
        axis_field(SweepParam::Rabi, config.drive.rabi_omega),
    ];
    row.extend(value_fields(Some(v)));
    t.push(row);
    Ok(t)
}

/// Sweep configuration whose only cell is the configured point.
pub fn single_cell_sweep(config: &RunConfig) -> RunConfig {
    let axis = |param, v| SweepAxis {
        param,
        min: v,
        max: v,
        count: 1,
        spacing: Spacing::Linear,
    };
    RunConfig {
        sweep: vec![
            axis(SweepParam::Detuning, config.drive.detuning_delta),
            axis(SweepParam::Rabi, config.drive.rabi_omega),
        ],
        ..config.clone()
    }
}

/// `quantity,value,unit` report of the resolved model parameters and the
/// regime ratios.
pub fn params_table(config: &RunConfig) -> Result<(Table, Vec<String>)> {
    let mode = config.mode()?;
    let p = config.effective_params()?;
    let cubic = crate::moments::CubicFrequencies::new(&p);
    let mut t = Table::new(["quantity", "value", "unit"]);
    let mut row = |q: &str, v: f64, unit: &str| {
        t.push(vec![
            Field::Text(q.into()),
            Field::Num(v),
            Field::Text(unit.into()),
        ])
    };
    row("omega", p.omega, "rad/s");
    row("xi", p.xi_drive, "rad/s");
    row("g", p.g_coupling, "rad/s");
    row("gamma", p.gamma_cool, "rad/s");
    row("nu", p.nu, "rad/s");
    row("omega_g_shift", p.omega_g_shift, "rad/s");
    row("alpha_re", p.alpha_amp.re, "1");
    row("alpha_im", p.alpha_amp.im, "1");
    row("alpha_sq", p.alpha_sq(), "1");
    row("beta_re", p.beta_amp.re, "1");
    row("beta_im", p.beta_amp.im, "1");
    row("lambda_cubed", cubic.lambda_cubed, "rad^3/s^3");
    row("mu_cubed", cubic.mu_cubed, "rad^3/s^3");
    row("membrane_mass", mode.mass_m, "kg");
    row("zero_point", mode.zero_point, "m");
    row("q0", mode.q0, "1/m");
    let report = validate_regime(&config.atom, &config.drive, &mode, &p);
    for (name, v) in &report.ratios {
        row(name, *v, "1");
    }
    Ok((t, report.warnings))
}

/// Cooling rate and steady-state temperature for an initial flexural
/// occupation `m0` (or a starting temperature when `m0` is `None`).
pub fn rate_table(config: &RunConfig, temperature: f64, m0: Option<f64>) -> Result<Table> {
    let consts = PhysicalConstants::SI;
    let p = config.effective_params()?;
    let m0 = match m0 {
        Some(m) => m,
        None => occupation_from_temperature(p.nu, temperature, &consts)?,
    };
    let fit = cooling_rate(&p, m0)?;
    let sys = build_system(&p);
    let t_ss = temperature_from_occupation(p.nu, fit.m_ss, &consts).unwrap_or(f64::NAN);
    let mut t = Table::new([
        "m0",
        "amplitude_a",
        "gamma_eff_per_s",
        "m_ss",
        "t_ss_k",
        "slow_eigenvalue_per_s",
        "spectral_abscissa_per_s",
        "stable",
    ]);
    t.push(vec![
        Field::Num(m0),
        Field::Num(fit.amplitude_a),
        Field::Num(fit.gamma_eff),
        Field::Num(fit.m_ss),
        Field::Num(t_ss),
        Field::Num(slow_eigenvalue(&sys).unwrap_or(f64::NAN)),
        Field::Num(spectral_abscissa(&sys)),
        Field::Bool(fit.is_stable()),
    ]);
    Ok(t)
}

/// `t = 0` followed by `points` log-spaced times in `[t_min, t_max]`.
pub fn evolve_grid(t_min: f64, t_max: f64, points: usize) -> Vec<f64> {
    let axis = SweepAxis {
        param: SweepParam::Eta,
        min: t_min,
        max: t_max,
        count: points,
        spacing: Spacing::Log,
    };
    std::iter::once(0.0).chain(axis.values()).collect()
}

/// Trajectories of m(t) from thermal starts at each configured temperature.
///
/// Columns: `t_s`, then `m_ode_T{T}K` and `m_fit_T{T}K` per temperature,
/// then `diverged`. The fit column is the adiabatic `a e^{−γ_eff t} + m_SS`;
/// it is NaN when the rate is singular.
pub fn run_evolve(config: &RunConfig) -> Result<Table> {
    let consts = PhysicalConstants::SI;
    let p = config.effective_params()?;
    let sys = build_system(&p);
    let ev = &config.evolve;
    let grid = evolve_grid(ev.t_min, ev.t_max, ev.points);

    let mut header = vec!["t_s".to_string()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut diverged = false;
    for &temp in &ev.temperatures {
        let m0 = occupation_from_temperature(p.nu, temp, &consts)?;
        let traj = evolve(&sys, &MomentState::thermal(m0), &grid)?;
        diverged |= traj.diverged;
        let fit = cooling_rate(&p, m0).ok();
        header.push(format!("m_ode_T{temp}K"));
        header.push(format!("m_fit_T{temp}K"));
        columns.push(traj.m());
        columns.push(
            grid.iter()
                .map(|&t| fit.map_or(f64::NAN, |f| f.m_at(t)))
                .collect(),
        );
    }
    header.push("diverged".into());

    let mut t = Table::new(header);
    for (i, &time) in grid.iter().enumerate() {
        let mut row = vec![Field::Num(time)];
        row.extend(columns.iter().map(|c| Field::Num(c[i])));
        row.push(Field::Bool(diverged));
        t.push(row);
    }
    Ok(t)
}

/// Potential versus distance on a log grid: `z_um,u_j,u_hz,c4_hz_um4`.
pub fn cp_table(config: &RunConfig) -> Result<Table> {
    let model = CpModel {
        quad: config.quad_config(),
        ..CpModel::default()
    };
    let cp = &config.cp;
    let axis = SweepAxis {
        param: SweepParam::Eta,
        min: cp.z_min,
        max: cp.z_max,
        count: cp.points,
        spacing: Spacing::Log,
    };
    let rows = axis
        .values()
        .into_par_iter()
        .map(|z| {
            let u = model.matsubara_potential(&config.atom, z, cp.temperature)?;
            let hz = u / model.constants.planck();
            Ok(vec![
                Field::Num(z * 1e6),
                Field::Num(u),
                Field::Num(hz),
                Field::Num(hz * (z * 1e6).powi(4)),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(["z_um", "u_j", "u_hz", "c4_hz_um4"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::sweep::run_sweep;

    fn csv_string(t: &Table) -> String {
        let mut buf = Vec::new();
        write_csv_to(t, &mut buf, "memory").unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn sweep_header_and_round_trip() {
        let cfg = parse_config(
            "[sweep]\nx = detuning, 3.6 MHz, 360 MHz, 3, log\ny = rabi, 1 MHz, 100 MHz, 2, log\n",
        )
        .unwrap();
        let res = run_sweep(&cfg);
        let text = csv_string(&sweep_table(&res));
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "delta_hz,omega_rabi_hz,m_ss,n_total_ss,gamma_eff_per_s,stable"
        );
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        for (rec, cell) in rdr.records().zip(&res.cells) {
            let rec = rec.unwrap();
            let m: f64 = rec[2].parse().unwrap();
            assert_eq!(m.to_bits(), cell.values.unwrap().m_ss.to_bits());
        }
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let cfg = parse_config("[sweep]\nx = detuning, 1 MHz, 2 MHz, 0\n").unwrap();
        let text = csv_string(&sweep_table(&run_sweep(&cfg)));
        assert_eq!(
            text,
            "delta_hz,omega_rabi_hz,m_ss,n_total_ss,gamma_eff_per_s,stable\n"
        );
    }

    #[test]
    fn steady_equals_single_cell_sweep() {
        let cfg = RunConfig::default();
        let a = csv_string(&steady_table(&cfg).unwrap());
        let b = csv_string(&sweep_table(&run_sweep(&single_cell_sweep(&cfg))));
        assert_eq!(a, b);
        let c = csv_string(&sweep_table(&run_sweep(
            &parse_config(
                "[sweep]\nx = detuning, 36 MHz, 36 MHz, 1\ny = rabi, 10 MHz, 10 MHz, 1\n",
            )
            .unwrap(),
        )));
        assert_eq!(a, c);
    }

    #[test]
    fn text_fields_are_quoted() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![Field::Text("x, y".into()), Field::Num(0.1)]);
        assert_eq!(csv_string(&t), "a,b\n\"x, y\",0.1\n");
    }

    #[test]
    fn evolve_columns() {
        let cfg = parse_config("[evolve]\ntemperatures = 1 K, 300 K\npoints = 5\n").unwrap();
        let t = run_evolve(&cfg).unwrap();
        assert_eq!(
            t.header,
            [
                "t_s",
                "m_ode_T1K",
                "m_fit_T1K",
                "m_ode_T300K",
                "m_fit_T300K",
                "diverged"
            ]
        );
        assert_eq!(t.rows.len(), 6);
        assert_eq!(t.rows[0][0], Field::Num(0.0));
        // initial values are the thermal occupations
        let m0 = occupation_from_temperature(
            cfg.effective_params().unwrap().nu,
            300.0,
            &PhysicalConstants::SI,
        )
        .unwrap();
        assert_eq!(t.rows[0][3], Field::Num(m0));
        // the red point has a growing mode
        assert_eq!(t.rows[0][5], Field::Bool(true));
    }

    #[test]
    fn evolve_grid_endpoints() {
        let g = evolve_grid(1e-6, 2.0, 4);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], 1e-6);
        assert_eq!(g[4], 2.0);
    }

    #[test]
    fn params_report() {
        let (t, _) = params_table(&RunConfig::default()).unwrap();
        let q = t.column("quantity").unwrap();
        assert!(q.contains(&&Field::Text("alpha_sq".into())));
        assert_eq!(t.header, ["quantity", "value", "unit"]);
    }

    #[test]
    fn file_and_memory_output_agree() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("steady.csv");
        let table = steady_table(&RunConfig::default()).unwrap();
        write_csv(&table, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), csv_string(&table));
    }

    #[test]
    fn write_error_names_path() {
        let path = Path::new("/nonexistent-dir/out.csv");
        match write_csv(&Table::new(["a"]), path) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, "/nonexistent-dir/out.csv"),
            other => panic!("{other:?}"),
        }
    }
}
