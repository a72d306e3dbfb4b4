//! Command-line front end. Each subcommand writes its artifacts to
//! `<prefix>.csv` and/or `<prefix>.json`; the prefix defaults to the
//! subcommand name in the working directory.
//!
//! Exit codes: 0 success, 1 configuration or validation error, 2 numerical
//! error. Diagnostics go to stderr.

use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand};
use serde_json::json;

use crate::config::{ConfigDocument, RunReport, SystemConfig};
use crate::constants::TWO_PI;
use crate::dynamics::{noon_protocol, optimal_squeezing, TwistingModel};
use crate::hybrid::field_enhancement;
use crate::output::{with_extension, write_file, CsvTable};
use crate::spectra::{sweep_spectrum, symmetric_grid, LinearSystemModel};
use crate::sweeps::{
    optimize_detuning, regime_curves, sweep_detuning, sweep_rm_d, SweepRange, SweepSpec,
};
use crate::units::{parse_quantity, Dimension};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "wgm-plasmon",
    version,
    about = "Nanoparticle-enhanced microcavity QED model"
)]
pub struct Cli {
    /// Scenario document (TOML). Defaults apply when omitted.
    #[arg(short, long, global = true)]
    pub config: Option<PathBuf>,

    /// Override a scenario value, e.g. --set geometry.r_m=20nm. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub overrides: Vec<String>,

    /// Output prefix; artifacts are written to <prefix>.csv / <prefix>.json.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,

    /// Progress messages on stderr.
    #[arg(short, long, action = ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived rate set and cooperativities as a JSON report.
    Params {
        /// Record the wall-clock time in the report (breaks byte reproducibility).
        #[arg(long)]
        stamp: bool,
    },
    /// Field enhancement against distance from the sphere centre.
    FieldProfile {
        #[arg(long, default_value = "60nm")]
        r_max: String,
        #[arg(long, default_value_t = 601)]
        points: usize,
    },
    /// Cooperativity enhancement over sphere radius and gap.
    SweepRmD {
        /// MIN:MAX:STEPS with length units.
        #[arg(long, default_value = "1nm:30nm:59")]
        rm: String,
        #[arg(long, default_value = "1nm:20nm:39")]
        d: String,
    },
    /// Enhancement against cavity–plasmon detuning for several radii.
    SweepDetuning {
        #[arg(long, value_delimiter = ',', default_value = "5nm,12nm,20nm,30nm")]
        rm: Vec<String>,
        /// MIN:MAX:STEPS in units of γ_m.
        #[arg(long, default_value = "-6:4:201", allow_hyphen_values = true)]
        range: String,
    },
    /// Best cavity–plasmon detuning for one radius.
    Optimize {
        #[arg(long)]
        rm: Option<String>,
    },
    /// Taper transmission spectrum and its dips.
    Spectrum {
        #[arg(long)]
        no_mnp: bool,
        #[arg(long)]
        no_dipole: bool,
        #[arg(long, default_value_t = crate::spectra::DEFAULT_POINTS)]
        points: usize,
        /// Half-width of the window in units of max(G_c,m, κ_total).
        #[arg(long, default_value_t = crate::spectra::DEFAULT_SPAN_FACTOR)]
        span_factor: f64,
    },
    /// C_c,m with its near- and off-resonance limits against detuning.
    Regimes {
        #[arg(long)]
        rm: Option<String>,
        #[arg(long, default_value = "-6:4:201", allow_hyphen_values = true)]
        range: String,
    },
    /// NOON-state protocol in the dispersive regime.
    Noon {
        #[arg(short, long, default_value_t = 4)]
        n: usize,
        /// Emitter–cavity detuning; defaults to 10·G_c,m when the scenario has none.
        #[arg(long)]
        delta_ec: Option<String>,
    },
    /// Optimal one-axis-twisting squeezing.
    Squeeze {
        #[arg(short, long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        delta_ec: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Params { .. } => "params",
            Command::FieldProfile { .. } => "field-profile",
            Command::SweepRmD { .. } => "sweep-rm-d",
            Command::SweepDetuning { .. } => "sweep-detuning",
            Command::Optimize { .. } => "optimize",
            Command::Spectrum { .. } => "spectrum",
            Command::Regimes { .. } => "regimes",
            Command::Noon { .. } => "noon",
            Command::Squeeze { .. } => "squeeze",
        }
    }
}

/// Failure with the phase it happened in, which picks the exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub error: Error,
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        let code = if error.is_config_error() { 1 } else { 2 };
        Self { code, error }
    }
}

fn load(cli: &Cli) -> Result<SystemConfig> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => String::new(),
    };
    let mut doc = ConfigDocument::parse(&text)?;
    for o in &cli.overrides {
        doc.apply_override(o)?;
    }
    doc.build()
}

fn length(field: &str, text: &str) -> Result<f64> {
    parse_quantity(text, Dimension::Length, None).map_err(|m| Error::validation(field, m))
}

fn parse_range(field: &str, text: &str, dim: Dimension) -> Result<SweepRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let [min, max, steps] = parts.as_slice() else {
        return Err(Error::validation(field, "expected MIN:MAX:STEPS"));
    };
    let value = |s: &str| parse_quantity(s, dim, None).map_err(|m| Error::validation(field, m));
    let steps = steps
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::validation(field, format!("bad step count `{steps}`")))?;
    SweepRange::new(value(min)?, value(max)?, steps).map_err(|e| match e {
        Error::Validation { message, .. } => Error::validation(field, message),
        other => other,
    })
}

/// Metres to nanometres, rounded to 1e-6 nm to drop float noise in labels.
fn nm(metres: f64) -> f64 {
    (metres * 1e15).round() / 1e6
}

fn digest_line(config: &SystemConfig) -> String {
    format!("input_digest: {}", config.digest())
}

fn json_text(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes") + "\n"
}

struct Context<'a> {
    config: SystemConfig,
    prefix: PathBuf,
    verbose: bool,
    command: &'a Command,
}

impl Context<'_> {
    fn progress(&self, message: &str) {
        if self.verbose {
            eprintln!("[{}] {message}", self.command.name());
        }
    }

    fn write(&self, ext: &str, contents: &str) -> Result<()> {
        let path = with_extension(&self.prefix, ext);
        write_file(&path, contents)?;
        self.progress(&format!("wrote {}", path.display()));
        Ok(())
    }

    fn header(&self, table: CsvTable) -> CsvTable {
        table
            .comment(format!(
                "wgm-plasmon {} {}",
                env!("CARGO_PKG_VERSION"),
                self.command.name()
            ))
            .comment(digest_line(&self.config))
    }

    fn radius(&self, rm: &Option<String>) -> Result<f64> {
        match rm {
            Some(text) => length("--rm", text),
            None => Ok(self.config.geometry.r_m),
        }
    }

    fn twisting(&self, n: usize, delta_ec: &Option<String>) -> Result<TwistingModel> {
        let params = self.config.derive()?;
        let delta = match delta_ec {
            Some(text) => parse_quantity(text, Dimension::Rate, None)
                .map_err(|m| Error::validation("--delta-ec", m))?,
            None if self.config.emitter.delta_ec != 0.0 => self.config.emitter.delta_ec,
            None => 10.0 * params.g_cm,
        };
        TwistingModel::new(params.g_cm, delta, n, params.h)
    }
}

fn execute(cx: &Context) -> Result<()> {
    let cfg = &cx.config;
    match cx.command {
        Command::Params { stamp } => {
            let mut report = RunReport::new(cfg)?;
            if *stamp {
                let secs = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                report.provenance.generated_at = Some(format!("unix:{secs}"));
            }
            cx.write("json", &report.to_json())
        }
        Command::FieldProfile { r_max, points } => {
            let r_max = length("--r-max", r_max)?;
            if *points < 2 || !(r_max > 0.0) {
                return Err(Error::validation(
                    "--points",
                    "need at least 2 points and r_max > 0",
                ));
            }
            let beta = cfg.derive()?.beta;
            let r_m = cfg.geometry.r_m;
            let mut table = cx
                .header(CsvTable::new(&[
                    "r_nm",
                    "enhancement_theta_0",
                    "enhancement_theta_90",
                ]))
                .comment(format!(
                    "r_m_nm: {}, beta: {} {:+}i",
                    nm(r_m),
                    beta.re,
                    beta.im
                ));
            for i in 0..*points {
                let r = r_max * i as f64 / (*points - 1) as f64;
                table.push(vec![
                    nm(r),
                    field_enhancement(beta, r_m, r, 0.0).norm(),
                    field_enhancement(beta, r_m, r, FRAC_PI_2).norm(),
                ]);
            }
            cx.write("csv", &table.render())
        }
        Command::SweepRmD { rm, d } => {
            let spec = SweepSpec {
                r_m: parse_range("--rm", rm, Dimension::Length)?,
                d: parse_range("--d", d, Dimension::Length)?,
                ..SweepSpec::standard(*cfg)
            };
            cx.progress(&format!("{}×{} grid", spec.r_m.steps, spec.d.steps));
            let result = sweep_rm_d(&spec)?;
            let mut table = cx
                .header(CsvTable::new(&["r_m_nm", "d_nm", "enhancement"]))
                .comment(format!(
                    "row-major: r_m ({} rows) outer, d ({} columns) inner; delta_sp_over_gamma_m: {}",
                    spec.r_m.steps,
                    spec.d.steps,
                    cfg.delta_sp / cfg.metal.gamma_m
                ));
            let gaps = &result.axes[1].values;
            for (i, r) in result.axes[0].values.iter().enumerate() {
                for (j, g) in gaps.iter().enumerate() {
                    table.push(vec![nm(*r), nm(*g), result.values[i * gaps.len() + j]]);
                }
            }
            cx.write("csv", &table.render())?;
            cx.write(
                "json",
                &json_text(&json!({
                    "input_digest": cfg.digest(),
                    "argmax": {
                        "r_m_nm": nm(result.argmax.coords[0]),
                        "d_nm": nm(result.argmax.coords[1]),
                        "enhancement": result.argmax.value,
                    }
                })),
            )
        }
        Command::SweepDetuning { rm, range } => {
            let radii = rm
                .iter()
                .map(|r| length("--rm", r))
                .collect::<Result<Vec<_>>>()?;
            let spec = SweepSpec {
                delta_sp: parse_range("--range", range, Dimension::Dimensionless)?,
                ..SweepSpec::standard(*cfg)
            };
            let curves = sweep_detuning(&spec, &radii)?;
            let names: Vec<String> = radii
                .iter()
                .map(|r| format!("enhancement_rm_{}nm", nm(*r)))
                .collect();
            let mut header = vec!["delta_sp_over_gamma_m"];
            header.extend(names.iter().map(String::as_str));
            let mut table = cx.header(CsvTable::new(&header));
            let xs = &curves[0].axes[0].values;
            for (i, x) in xs.iter().enumerate() {
                let mut row = vec![*x];
                row.extend(curves.iter().map(|c| c.values[i]));
                table.push(row);
            }
            cx.write("csv", &table.render())?;
            let summary: Vec<_> = radii
                .iter()
                .zip(&curves)
                .map(|(r, c)| {
                    json!({
                        "r_m_nm": nm(*r),
                        "argmax_delta_sp_over_gamma_m": c.argmax.coords[0],
                        "max_enhancement": c.argmax.value,
                    })
                })
                .collect();
            cx.write(
                "json",
                &json_text(&json!({ "input_digest": cfg.digest(), "curves": summary })),
            )
        }
        Command::Optimize { rm } => {
            let opt = optimize_detuning(cfg, cx.radius(rm)?)?;
            cx.write(
                "json",
                &json_text(&json!({
                    "input_digest": cfg.digest(),
                    "r_m_nm": nm(opt.r_m),
                    "delta_sp_rad_s": opt.delta_sp,
                    "delta_sp_hz": opt.delta_sp / TWO_PI,
                    "delta_sp_over_gamma_m": opt.delta_sp_over_gamma_m,
                    "enhancement": opt.enhancement,
                })),
            )
        }
        Command::Spectrum {
            no_mnp,
            no_dipole,
            points,
            span_factor,
        } => {
            let model = LinearSystemModel::new(cfg.derive()?, !no_mnp, !no_dipole);
            if !(*span_factor > 0.0) || *points < 3 {
                return Err(Error::validation(
                    "--points",
                    "need at least 3 points and a positive span",
                ));
            }
            let grid = symmetric_grid(model.default_half_span(*span_factor), *points);
            let trace = sweep_spectrum(&model, &grid)?;
            if trace.coarse_grid {
                eprintln!("warning: fewer than 5 grid points per linewidth; dips may be misplaced");
            }
            let mut table = cx
                .header(CsvTable::new(&["delta_hz", "transmission"]))
                .comment(format!(
                    "include_mnp: {}, include_dipole: {}",
                    model.include_mnp, model.include_dipole
                ));
            for (d, t) in trace.delta.iter().zip(&trace.transmission) {
                table.push(vec![d / TWO_PI, *t]);
            }
            cx.write("csv", &table.render())?;
            let dips: Vec<_> = trace
                .dips
                .iter()
                .map(|d| {
                    json!({
                        "delta_hz": d.delta / TWO_PI,
                        "transmission": d.transmission,
                        "width_hz": d.width.map(|w| w / TWO_PI),
                    })
                })
                .collect();
            let modes: Vec<_> = model
                .eigenvalues()?
                .iter()
                .map(|e| json!({ "position_hz": e.re / TWO_PI, "half_width_hz": -e.im / TWO_PI }))
                .collect();
            let splitting = match (trace.dips.first(), trace.dips.last()) {
                (Some(a), Some(b)) if trace.dips.len() >= 2 => Some((b.delta - a.delta) / TWO_PI),
                _ => None,
            };
            cx.write(
                "json",
                &json_text(&json!({
                    "input_digest": cfg.digest(),
                    "include_mnp": model.include_mnp,
                    "include_dipole": model.include_dipole,
                    "points": points,
                    "grid_step_hz": (grid[1] - grid[0]) / TWO_PI,
                    "coarse_grid": trace.coarse_grid,
                    "dips": dips,
                    "outer_dip_separation_hz": splitting,
                    "modes": modes,
                })),
            )
        }
        Command::Regimes { rm, range } => {
            let range = parse_range("--range", range, Dimension::Dimensionless)?;
            let r_m = cx.radius(rm)?;
            let curves = regime_curves(cfg, r_m, &range)?;
            let mut table = cx
                .header(CsvTable::new(&[
                    "delta_sp_over_gamma_m",
                    "C_cm",
                    "C_I",
                    "C_II",
                ]))
                .comment(format!("r_m_nm: {}", nm(r_m)));
            for i in 0..curves.c_cm.len() {
                table.push(vec![
                    curves.delta_sp_over_gamma_m[i],
                    curves.c_cm[i],
                    curves.c_near[i],
                    curves.c_far[i],
                ]);
            }
            cx.write("csv", &table.render())
        }
        Command::Noon { n, delta_ec } => {
            if *n < 2 {
                return Err(Error::validation(
                    "--n",
                    "the NOON protocol needs at least 2 emitters",
                ));
            }
            let model = cx.twisting(*n, delta_ec)?;
            let chi_t = FRAC_PI_2.copysign(model.chi);
            let outcome = noon_protocol(*n, chi_t)?;
            let squeeze = optimal_squeezing(*n)?;
            cx.write(
                "json",
                &json_text(&json!({
                    "input_digest": cfg.digest(),
                    "N": n,
                    "chi_hz": model.chi / TWO_PI,
                    "delta_ec_hz": model.delta_ec / TWO_PI,
                    "dispersive": model.is_dispersive(),
                    "fidelity": outcome.fidelity,
                    "optimal_phase_rad": outcome.pulse_phase,
                    "branch_phase_rad": outcome.branch_phase,
                    "t_opt": model.noon_time(),
                    "xi2_min": squeeze.xi2_min,
                })),
            )
        }
        Command::Squeeze { n, delta_ec } => {
            let model = cx.twisting(*n, delta_ec)?;
            let squeeze = optimal_squeezing(*n)?;
            cx.write(
                "json",
                &json_text(&json!({
                    "input_digest": cfg.digest(),
                    "N": n,
                    "chi_hz": model.chi / TWO_PI,
                    "delta_ec_hz": model.delta_ec / TWO_PI,
                    "dispersive": model.is_dispersive(),
                    "xi2_min": squeeze.xi2_min,
                    "xi2_min_db": 10.0 * squeeze.xi2_min.log10(),
                    "chi_t_opt": squeeze.chi_t_opt,
                    "t_opt": squeeze.chi_t_opt / model.chi.abs(),
                })),
            )
        }
    }
}

pub fn run(cli: &Cli) -> std::result::Result<(), CliError> {
    let config = load(cli)?;
    let prefix = cli
        .out
        .clone()
        .unwrap_or_else(|| Path::new(".").join(cli.command.name()));
    let cx = Context {
        config,
        prefix,
        verbose: cli.verbose > 0,
        command: &cli.command,
    };
    cx.progress(&format!("config {}", cx.config.digest()));
    execute(&cx).map_err(CliError::from)
}

/// Parses arguments, runs, reports errors and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(CliError { code, error }) => {
            eprintln!("error: {error}");
            code
        }
    }
}
