//! The four subcommands as library functions.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use qkt_core::classical::generate_portrait;
use qkt_core::observables::{self, spectrum, Window};
use qkt_core::pipeline::overlap_point;
use qkt_core::{DephasingSpec, PhasePortrait, Spin, SpectrumResult, TrajectoryRecord};
use rayon::prelude::*;

use crate::config::{OutputFormat, RunConfig, SweepAxis, SweepConfig};
use crate::error::{CliError, Result, EXIT_OK};
use crate::format::{fmt_num, quantize};

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
    move |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `header` and `rows` to a new CSV file at `path`.
fn write_csv_file<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = csv_writer(create(path)?);
    let write = || -> csv::Result<()> {
        out.write_record(header)?;
        for row in rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    };
    write().map_err(csv_err(path))
}

/// Records rounded to the digits that reach the output file.
pub fn quantize_record(r: &TrajectoryRecord) -> TrajectoryRecord {
    TrajectoryRecord {
        kick: r.kick,
        jx: quantize(r.jx),
        jy: quantize(r.jy),
        jz: quantize(r.jz),
        fid_a: quantize(r.fid_a),
        fid_ap: quantize(r.fid_ap),
        corr_a: quantize(r.corr_a),
        corr_ap: quantize(r.corr_ap),
        corr_e: quantize(r.corr_e),
        corr_ep: quantize(r.corr_ep),
        purity: quantize(r.purity),
    }
}

pub fn write_trajectory_csv<W: Write>(w: W, records: &[TrajectoryRecord]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(TrajectoryRecord::COLUMNS)?;
    for r in records {
        let mut row = vec![r.kick.to_string()];
        row.extend(
            [r.jx, r.jy, r.jz, r.fid_a, r.fid_ap, r.corr_a, r.corr_ap, r.corr_e, r.corr_ep, r.purity]
                .map(fmt_num),
        );
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

fn write_trajectory(path: &Path, records: &[TrajectoryRecord], format: OutputFormat) -> Result<()> {
    let mut w = create(path)?;
    match format {
        OutputFormat::Csv => write_trajectory_csv(&mut w, records).map_err(csv_err(path))?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut w, records).map_err(|source| CliError::Json {
                path: path.to_path_buf(),
                source,
            })?;
            w.write_all(b"\n").map_err(|e| CliError::io(path, e))?;
        }
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Runs one trajectory; writes it to `out` (or stdout) and returns the
/// records exactly as written.
pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<Vec<TrajectoryRecord>> {
    let records: Vec<TrajectoryRecord> =
        config.simulation.run()?.iter().map(quantize_record).collect();
    match out {
        Some(path) => write_trajectory(path, &records, config.format)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match config.format {
                OutputFormat::Csv => write_trajectory_csv(&mut lock, &records)
                    .map_err(csv_err(Path::new("<stdout>")))?,
                OutputFormat::Json => {
                    let text = serde_json::to_string_pretty(&records).map_err(|source| {
                        CliError::Json {
                            path: PathBuf::from("<stdout>"),
                            source,
                        }
                    })?;
                    writeln!(lock, "{text}").map_err(|e| CliError::io("<stdout>", e))?;
                }
            }
        }
    }
    Ok(records)
}

/// One summary row of a trajectory sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<SweepPoint, String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub period_kicks: f64,
    pub max_fid_ap: f64,
    pub aperiodic: bool,
}

fn point_config(base: &RunConfig, axis: SweepAxis, value: f64) -> RunConfig {
    let mut cfg = base.clone();
    let sim = &mut cfg.simulation;
    match axis {
        SweepAxis::TwoJ => sim.spin = Spin::from_two_j(value as u32),
        SweepAxis::K => sim.params.k = value,
        SweepAxis::NoiseStrength => {
            sim.noise = (value != 0.0).then_some(DephasingSpec {
                model: base.noise_model,
                strength: value,
            })
        }
    }
    cfg
}

fn format_value(axis: SweepAxis, v: f64) -> String {
    match axis {
        SweepAxis::TwoJ => format!("{}", v as u32),
        _ => fmt_num(v),
    }
}

fn run_point(cfg: &SweepConfig, index: usize, value: f64, dir: &Path) -> Result<SweepPoint> {
    let point = point_config(&cfg.base, cfg.axis, value);
    point.simulation.validate()?;
    let records: Vec<TrajectoryRecord> =
        point.simulation.run()?.iter().map(quantize_record).collect();
    let path = dir.join(format!("point_{index:03}.{}", point.format.extension()));
    write_trajectory(&path, &records, point.format)?;
    let period = observables::tunneling_period(&records, cfg.component)?;
    Ok(SweepPoint {
        period_kicks: period.period_kicks,
        max_fid_ap: period.max_fid_ap,
        aperiodic: period.aperiodic,
    })
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {parallelism} workers: {e}")))
}

/// Summary of a sweep run.
#[derive(Debug)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Exit code of the first failing point in value order, or 0.
    pub exit_code: i32,
}

/// Runs every sweep point (concurrently up to `parallelism`), writing
/// `point_NNN` files and `summary.csv` into `dir`.
pub fn sweep(cfg: &SweepConfig, dir: &Path) -> Result<SweepReport> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    if cfg.overlap {
        return overlap_sweep(cfg, dir);
    }
    let results: Vec<Result<SweepPoint>> = pool(cfg.parallelism)?.install(|| {
        cfg.values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| run_point(cfg, i, v, dir))
            .collect()
    });
    let mut exit_code = EXIT_OK;
    let rows: Vec<SweepRow> = cfg
        .values
        .iter()
        .zip(results)
        .map(|(&value, r)| {
            if let Err(e) = &r {
                if exit_code == EXIT_OK {
                    exit_code = e.exit_code();
                }
            }
            SweepRow {
                value,
                outcome: r.map_err(|e| e.to_string()),
            }
        })
        .collect();

    let summary = rows.iter().map(|row| {
        let v = format_value(cfg.axis, row.value);
        match &row.outcome {
            Ok(p) => vec![
                v,
                fmt_num(p.period_kicks),
                fmt_num(p.max_fid_ap),
                u8::from(p.aperiodic).to_string(),
            ],
            Err(_) => vec![v, fmt_num(f64::NAN), fmt_num(f64::NAN), "error".to_string()],
        }
    });
    write_csv_file(
        &dir.join("summary.csv"),
        &["value", "period_kicks", "max_fid_Ap", "aperiodic_flag"],
        summary,
    )?;
    Ok(SweepReport { rows, exit_code })
}

fn overlap_sweep(cfg: &SweepConfig, dir: &Path) -> Result<SweepReport> {
    let table = cfg.base.simulation.points;
    let points: Vec<_> = pool(cfg.parallelism)?.install(|| {
        cfg.values
            .par_iter()
            .map(|&v| overlap_point(Spin::from_two_j(v as u32), &table))
            .collect::<qkt_core::Result<Vec<_>>>()
    })?;
    write_csv_file(
        &dir.join("summary.csv"),
        &["two_j", "overlap_AAp"],
        points.iter().map(|p| vec![p.two_j.to_string(), fmt_num(p.overlap_aap)]),
    )?;
    let rows = points
        .iter()
        .map(|p| SweepRow {
            value: p.two_j as f64,
            outcome: Ok(SweepPoint {
                period_kicks: f64::NAN,
                max_fid_ap: p.overlap_aap,
                aperiodic: false,
            }),
        })
        .collect();
    Ok(SweepReport {
        rows,
        exit_code: EXIT_OK,
    })
}

/// Classical phase portrait as `traj_id,iter,theta,phi`.
pub fn portrait(k: f64, grid: usize, iters: usize, out: &Path, parallelism: usize) -> Result<PhasePortrait> {
    if !k.is_finite() {
        return Err(CliError::usage("--k must be finite"));
    }
    let portrait = pool(parallelism)?.install(|| generate_portrait(k, grid, iters))?;
    write_csv_file(
        out,
        &["traj_id", "iter", "theta", "phi"],
        portrait.points.iter().map(|p| {
            vec![
                p.traj_id.to_string(),
                p.iter.to_string(),
                fmt_num(p.theta),
                fmt_num(p.phi),
            ]
        }),
    )?;
    Ok(portrait)
}

/// Reads one numeric column of a CSV file.
pub fn read_column(path: &Path, column: &str) -> Result<Vec<f64>> {
    let file = File::open(path)
        .map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader.headers().map_err(csv_err(path))?.clone();
    let idx = headers.iter().position(|h| h == column).ok_or_else(|| {
        let known: Vec<&str> = headers.iter().collect();
        CliError::usage(format!(
            "{}: no column {column:?}; columns are {}",
            path.display(),
            known.join(",")
        ))
    })?;
    let mut out = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(csv_err(path))?;
        let field = rec.get(idx).unwrap_or("");
        let v: f64 = field.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "{}: row {}: {field:?} is not a number",
                path.display(),
                line + 2
            ))
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Spectrum of one column; writes `freq,amplitude`.
pub fn spectrum_cmd(
    input: &Path,
    column: &str,
    out: &Path,
    pad: usize,
    window: Window,
) -> Result<SpectrumResult> {
    let series = read_column(input, column)?;
    let result = spectrum(&series, pad, window)?;
    write_csv_file(
        out,
        &["freq", "amplitude"],
        result
            .frequencies
            .iter()
            .zip(&result.amplitudes)
            .map(|(f, a)| vec![fmt_num(*f), fmt_num(*a)]),
    )?;
    Ok(result)
}

/// One-line human summary of a spectrum.
pub fn spectrum_report(s: &SpectrumResult) -> String {
    if s.aperiodic {
        format!(
            "aperiodic: no peak above {} x median (strongest bin {} cycles/kick)",
            observables::APERIODIC_RATIO,
            fmt_num(s.peak_frequency)
        )
    } else {
        format!(
            "peak_frequency={} period_kicks={}",
            fmt_num(s.peak_frequency),
            fmt_num(s.period_kicks)
        )
    }
}
