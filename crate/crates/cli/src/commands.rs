//! The tables, transform, and kernel subcommands, plus the shared grid
//! specification and artifact plumbing.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use susy_bargmann::holomorphic::{reproducing_kernel, weight, HoloVector};
use susy_bargmann::quadrature::integrate_polar;
use susy_bargmann::realline::{eigenfunction, eigenvalue, Sector, WeightedPoly};
use susy_bargmann::transforms::{
    forward_rule, forward_spectral, inverse_quadrature, inverse_rule, kernel_a, kernel_b,
    spectral_vs_quadrature_residual, TransformResult,
};
use susy_bargmann::C64;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// Uniform 1-d sample grid written as min:max:count.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    min: f64,
    max: f64,
    count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<GridSpec, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid {text:?} is not of the form min:max:count"));
        }
        let min: f64 = parts[0]
            .parse()
            .map_err(|_| format!("grid minimum {:?} is not a number", parts[0]))?;
        let max: f64 = parts[1]
            .parse()
            .map_err(|_| format!("grid maximum {:?} is not a number", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("grid count {:?} is not a positive integer", parts[2]))?;
        if !min.is_finite() || !max.is_finite() {
            return Err(format!("grid bounds in {text:?} must be finite"));
        }
        if min > max {
            return Err(format!("grid minimum exceeds maximum in {text:?}"));
        }
        if count == 0 {
            return Err(format!("grid count must be at least 1 in {text:?}"));
        }
        Ok(GridSpec { min, max, count })
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| self.min + step * i as f64)
            .collect()
    }
}

/// Transform direction chosen on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Which surface the kernel subcommand tabulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Surface {
    /// Radial weight of the configured sector over a complex grid.
    Weight,
    /// Reproducing-kernel diagonal K(z, z) over a complex grid.
    Reproducing,
    /// Full transform kernel A(z, x) (Gaussian factors included) on a
    /// real z-by-x grid.
    KernelA,
    /// Gaussian-free kernel factor B(z, x) on a real z-by-x grid.
    KernelB,
}

/// Writes the artifact to --output, or to stdout when no path was given.
fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|error| CliError::Config(format!("cannot write {}: {error}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|error| CliError::Config(format!("cannot read {}: {error}", path.display())))
}

#[derive(Serialize)]
struct LevelValue {
    level: u32,
    value: f64,
}

#[derive(Serialize)]
struct LevelFunction {
    level: u32,
    function: WeightedPoly,
}

#[derive(Serialize)]
struct LevelConstant {
    level: u32,
    exponent: u32,
    value: f64,
}

#[derive(Serialize)]
struct WeightSummary {
    mass: f64,
    at_origin: f64,
}

#[derive(Serialize)]
struct TablesJson {
    version: u32,
    n: u32,
    sector: String,
    levels: u32,
    eigenvalues: Vec<LevelValue>,
    eigenfunctions: Vec<LevelFunction>,
    basis_constants: Vec<LevelConstant>,
    weight: WeightSummary,
}

/// Tabulates eigenvalues, eigenfunction coefficients, basis normalization
/// constants, and weight summary data for the configured sector.
pub fn cmd_tables(
    config: &RunConfig,
    sector: Sector,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let params = config.params()?;

    let eigenvalues: Vec<LevelValue> = (0..=config.levels)
        .map(|level| LevelValue {
            level,
            value: eigenvalue(params, sector, level),
        })
        .collect();
    let mut eigenfunctions = Vec::new();
    for level in 0..=config.levels {
        eigenfunctions.push(LevelFunction {
            level,
            function: eigenfunction(params, sector, level)?,
        });
    }
    let basis_constants: Vec<LevelConstant> = (0..=config.levels)
        .map(|level| LevelConstant {
            level,
            exponent: sector.exponent_of(params, level),
            value: susy_bargmann::holomorphic::basis_constant(params, sector, level),
        })
        .collect();

    let top_exponent = sector.exponent_of(params, config.levels);
    let rule = susy_bargmann::quadrature::build_polar_rule(
        params,
        sector,
        top_exponent,
        config.effective_tol(1e-10),
    )?;
    warn_polar_budget(config, rule.radial_count())?;
    let mass = integrate_polar(|_, _| C64::new(1.0, 0.0), &rule)?.re;
    let weight_summary = WeightSummary {
        mass,
        at_origin: weight(params, sector, C64::new(0.0, 0.0))?,
    };

    let text = match format {
        Format::Json => {
            let body = TablesJson {
                version: 1,
                n: config.n,
                sector: sector.to_string(),
                levels: config.levels,
                eigenvalues,
                eigenfunctions,
                basis_constants,
                weight: weight_summary,
            };
            let mut text = serde_json::to_string_pretty(&body).expect("tables serialization");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut text = String::new();
            text.push_str(&format!(
                "# tables: n = {}, sector = {sector}, levels = {}\n",
                config.n, config.levels
            ));
            text.push_str("# table: eigenvalues\n# columns: level, value\n");
            for row in &eigenvalues {
                text.push_str(&format!("{},{}\n", row.level, row.value));
            }
            text.push_str("# table: eigenfunction_coefficients\n");
            text.push_str("# columns: level, exponent, coefficient\n");
            for row in &eigenfunctions {
                for (&exponent, &value) in row.function.coeffs() {
                    text.push_str(&format!("{},{exponent},{value}\n", row.level));
                }
            }
            text.push_str("# table: basis_constants\n# columns: level, exponent, value\n");
            for row in &basis_constants {
                text.push_str(&format!("{},{},{}\n", row.level, row.exponent, row.value));
            }
            text.push_str("# table: weight\n# columns: quantity, value\n");
            text.push_str(&format!("mass,{}\n", weight_summary.mass));
            text.push_str(&format!("at_origin,{}\n", weight_summary.at_origin));
            text
        }
    };
    emit(output, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct ForwardJson {
    version: u32,
    #[serde(flatten)]
    result: TransformResult,
}

#[derive(Serialize)]
struct InverseSample {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct InverseJson {
    version: u32,
    samples: Vec<InverseSample>,
}

/// Grid the forward cross-check samples: 25 complex points inside |z| < 2.
fn forward_check_grid() -> Vec<C64> {
    let ticks = [-1.4, -0.7, 0.0, 0.7, 1.4];
    let mut grid = Vec::new();
    for &u in &ticks {
        for &v in &ticks {
            grid.push(C64::new(u, v));
        }
    }
    grid
}

fn warn_real_budget(config: &RunConfig, nodes: usize) -> Result<(), CliError> {
    if nodes > config.quad_points {
        let message = format!(
            "calibrated rule uses {nodes} nodes, over the --quad-points budget of {}",
            config.quad_points
        );
        if config.strict {
            return Err(CliError::Failure(message));
        }
        eprintln!("warning: {message}");
    }
    Ok(())
}

fn warn_polar_budget(config: &RunConfig, radial_nodes: usize) -> Result<(), CliError> {
    if radial_nodes > config.quad_points {
        let message = format!(
            "calibrated rule uses {radial_nodes} radial nodes, over the --quad-points budget of {}",
            config.quad_points
        );
        if config.strict {
            return Err(CliError::Failure(message));
        }
        eprintln!("warning: {message}");
    }
    Ok(())
}

/// Forward: reads a serialized weighted polynomial, emits its holomorphic
/// image with the spectral-vs-quadrature residual. Inverse: reads a
/// serialized holomorphic vector, emits real-line samples over the grid.
pub fn cmd_transform(
    config: &RunConfig,
    direction: Direction,
    input: &Path,
    grid: Option<GridSpec>,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let text = read_input(input)?;
    match direction {
        Direction::Forward => {
            let f: WeightedPoly = serde_json::from_str(&text)
                .map_err(|error| CliError::Config(format!("{}: {error}", input.display())))?;
            let holo = forward_spectral(&f)?;
            let rule = forward_rule(
                f.params(),
                f.max_exponent().unwrap_or(0),
                config.effective_tol(1e-10),
            )?;
            warn_real_budget(config, rule.node_count())?;
            let residual =
                spectral_vs_quadrature_residual(&f, &holo, &rule, &forward_check_grid())?;
            let threshold = config.effective_tol(1e-7);
            if residual > threshold {
                let message = format!(
                    "spectral and quadrature paths disagree by {residual:.3e} (threshold {threshold:.3e})"
                );
                if config.strict {
                    return Err(CliError::Failure(message));
                }
                eprintln!("warning: {message}");
            }
            let artifact = match format {
                Format::Json => {
                    let body = ForwardJson {
                        version: 1,
                        result: TransformResult {
                            holo: holo.clone(),
                            residual_vs_quadrature: Some(residual),
                        },
                    };
                    let mut text =
                        serde_json::to_string_pretty(&body).expect("transform serialization");
                    text.push('\n');
                    text
                }
                Format::Csv => {
                    let mut text = String::new();
                    text.push_str("# forward transform\n");
                    text.push_str(&format!("# residual_vs_quadrature: {residual}\n"));
                    text.push_str("# columns: exponent, re_coeff, im_coeff\n");
                    for (&exponent, &coeff) in holo.coeffs() {
                        text.push_str(&format!("{exponent},{},{}\n", coeff.re, coeff.im));
                    }
                    text
                }
            };
            emit(output, &artifact)?;
            eprintln!(
                "forward transform: {} coefficients, residual {residual:.3e}",
                holo.coeffs().len()
            );
            Ok(true)
        }
        Direction::Inverse => {
            let holo: HoloVector = serde_json::from_str(&text)
                .map_err(|error| CliError::Config(format!("{}: {error}", input.display())))?;
            let grid = grid.unwrap_or(GridSpec {
                min: -2.0,
                max: 2.0,
                count: 21,
            });
            let rule = inverse_rule(
                holo.params(),
                holo.sector(),
                holo.max_exponent().unwrap_or(0),
                config.effective_tol(1e-10),
            )?;
            warn_polar_budget(config, rule.radial_count())?;
            let mut samples = Vec::new();
            for x in grid.points() {
                let value = inverse_quadrature(&holo, &rule, x)?;
                samples.push(InverseSample {
                    x,
                    re: value.re,
                    im: value.im,
                });
            }
            let artifact = match format {
                Format::Json => {
                    let body = InverseJson {
                        version: 1,
                        samples,
                    };
                    let mut text =
                        serde_json::to_string_pretty(&body).expect("transform serialization");
                    text.push('\n');
                    text
                }
                Format::Csv => {
                    let mut text = String::new();
                    text.push_str("# inverse transform\n# columns: x, re_value, im_value\n");
                    for sample in &samples {
                        text.push_str(&format!("{},{},{}\n", sample.x, sample.re, sample.im));
                    }
                    text
                }
            };
            emit(output, &artifact)?;
            eprintln!("inverse transform: {} samples", grid.count);
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct KernelJson {
    version: u32,
    surface: String,
    n: u32,
    sector: String,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

/// Tabulates the chosen surface over the grid; rows are ordered
/// lexicographically in the grid indices (outer axis first).
pub fn cmd_kernel(
    config: &RunConfig,
    sector: Sector,
    surface: Surface,
    grid: GridSpec,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let params = config.params()?;
    let points = grid.points();
    let (columns, surface_name): (Vec<&'static str>, &str) = match surface {
        Surface::Weight => (vec!["re_z", "im_z", "weight"], "weight"),
        Surface::Reproducing => (vec!["re_z", "im_z", "re_value", "im_value"], "reproducing"),
        Surface::KernelA => (vec!["z", "x", "re_value", "im_value"], "kernel-a"),
        Surface::KernelB => (vec!["z", "x", "re_value", "im_value"], "kernel-b"),
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &u in &points {
        for &v in &points {
            let row = match surface {
                Surface::Weight => {
                    let z = C64::new(u, v);
                    vec![u, v, weight(params, sector, z)?]
                }
                Surface::Reproducing => {
                    let z = C64::new(u, v);
                    let value = reproducing_kernel(params, sector, z, z)?;
                    vec![u, v, value.re, value.im]
                }
                Surface::KernelA => {
                    let value = kernel_a(params, sector, C64::new(u, 0.0), v)?;
                    vec![u, v, value.re, value.im]
                }
                Surface::KernelB => {
                    let value = kernel_b(params, sector, C64::new(u, 0.0), C64::new(v, 0.0))?;
                    vec![u, v, value.re, value.im]
                }
            };
            rows.push(row);
        }
    }
    let artifact = match format {
        Format::Json => {
            let body = KernelJson {
                version: 1,
                surface: surface_name.to_string(),
                n: config.n,
                sector: sector.to_string(),
                columns,
                rows,
            };
            let mut text = serde_json::to_string_pretty(&body).expect("kernel serialization");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut text = String::new();
            text.push_str(&format!(
                "# kernel surface: {surface_name}, n = {}, sector = {sector}\n",
                config.n
            ));
            text.push_str(&format!("# columns: {}\n", columns.join(", ")));
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
            text
        }
    };
    emit(output, &artifact)?;
    Ok(true)
}
