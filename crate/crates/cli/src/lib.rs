//! Batch front end for `wspectra`: configuration, experiments, run
//! manifests and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod manifest;

use std::fmt;
use std::path::{Path, PathBuf};

use wspectra::lattice::{n_functional, phase_volumes, PhaseProfile, ScanMode};
use wspectra::quantize::{build_kn, build_t, build_weyl, build_weyl_of_dual, hs_norm_matrix, OperatorMatrix};
use wspectra::schrodinger::{
    bridge, bs_count, build_bs_matrix, coupling_scan, decoupled_count, default_radius, write_bridge_csv, write_scan_csv, Domain,
    SchrodingerProblem,
};
use wspectra::spectra::{decay_fit, eig_hermitian, singular_values, tail_functional, SpectralData, TailParams, Which};
use wspectra::symbols::{dual_symbol, sample, DualOptions};
use wspectra::{Error, SymbolField};

use config::{Experiment, Policy, RunConfig};
use manifest::Artifacts;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_QUALITY: i32 = 3;

#[derive(Debug)]
pub enum RunError {
    /// Bad configuration; nothing was written.
    Invalid(String),
    /// A numerical routine failed or quality flags were escalated.
    Quality(String),
    Io(std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invalid(_) => EXIT_INVALID,
            RunError::Quality(_) | RunError::Io(_) => EXIT_QUALITY,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Invalid(m) => write!(f, "invalid configuration: {m}"),
            RunError::Quality(m) => write!(f, "numerical quality failure: {m}"),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => RunError::Io(e),
            e => RunError::Quality(e.to_string()),
        }
    }
}

pub struct RunSummary {
    pub out_dir: PathBuf,
    pub exit_code: i32,
    pub flags: Vec<String>,
}

/// Output directory: command line first, then `[run] out`, then
/// `wspectra-out`.
pub fn output_dir(cfg: &RunConfig, cli_out: Option<&Path>) -> PathBuf {
    cli_out
        .map(Path::to_path_buf)
        .or_else(|| cfg.run.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("wspectra-out"))
}

/// Runs a validated configuration. Artifacts and `manifest.json` are written
/// even when the run ends with a quality failure.
pub fn run(cfg: &RunConfig, out_dir: &Path) -> Result<RunSummary, RunError> {
    cfg.validate().map_err(|e| RunError::Invalid(e.to_string()))?;
    let mut art = Artifacts::create(out_dir)?;
    let result = execute(cfg, &mut art);
    let (exit_code, err) = match result {
        Ok(()) if cfg.run.policy == Policy::Strict && !art.flags.is_empty() => (EXIT_QUALITY, None),
        Ok(()) => (EXIT_OK, None),
        Err(e) => {
            art.flags.push(e.to_string());
            (e.exit_code(), Some(e))
        }
    };
    let flags = art.flags.clone();
    art.finish(cfg.to_ini(), exit_code)?;
    match err {
        Some(e) => Err(e),
        None => Ok(RunSummary { out_dir: out_dir.to_path_buf(), exit_code, flags }),
    }
}

fn symbol(cfg: &RunConfig) -> Result<SymbolField, RunError> {
    let s = cfg.symbol.as_ref().ok_or_else(|| RunError::Invalid("missing [symbol]".into()))?;
    Ok(s.build()?)
}

fn quantized(cfg: &RunConfig, sym: &SymbolField) -> Result<OperatorMatrix, RunError> {
    let (g, gx) = (cfg.grid.position()?, cfg.grid.frequency()?);
    let t = cfg.run.t;
    Ok(if t == 0.5 {
        build_weyl(sym, &g, &gx)?
    } else if t == 0.0 {
        build_kn(sym, &g, &gx)?
    } else {
        build_t(sym, &g, &gx, t)?
    })
}

fn spectrum_of(op: &OperatorMatrix) -> Result<SpectralData, RunError> {
    Ok(if op.hermitian_defect.is_some() { eig_hermitian(op)? } else { singular_values(op) })
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> wspectra::Result<()>) -> Result<Vec<u8>, RunError> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn json_bytes<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s.into_bytes()
}

fn execute(cfg: &RunConfig, art: &mut Artifacts) -> Result<(), RunError> {
    match cfg.run.experiment {
        Experiment::Quantize => {
            let sym = symbol(cfg)?;
            let op = art.stage("quantize", || quantized(cfg, &sym))?;
            art.flags.extend(op.warnings.iter().cloned());
            let mut bin = Vec::new();
            op.write_binary(&mut bin)?;
            art.write("matrix.bin", &bin)?;
            let summary = serde_json::json!({
                "symbol": op.symbol_tag,
                "n": op.n(),
                "t": op.t_param,
                "hs_norm": hs_norm_matrix(&op),
                "hermitian_defect": op.hermitian_defect,
                "warnings": op.warnings,
            });
            art.write("summary.json", &json_bytes(&summary))?;
        }
        Experiment::Dual => {
            let sym = symbol(cfg)?;
            let plane = cfg.grid.phase_plane()?;
            let (g, gx) = (cfg.grid.position()?, cfg.grid.frequency()?);
            let s = art.stage("sample", || sample(&sym, &plane));
            let d = art.stage("dual", || dual_symbol(&s, &plane, DualOptions::default()));
            if d.provenance.ends_with("truncated") {
                art.flags.push("dual input truncated".into());
            }
            art.write("dual.csv", &csv_bytes(|w| d.write_csv(w))?)?;
            let (a, ad) = art.stage("quantize", || -> Result<_, RunError> {
                Ok((build_weyl(&sym, &g, &gx)?, build_weyl_of_dual(&s, &g, &gx, DualOptions::default())?))
            })?;
            art.flags.extend(a.warnings.iter().cloned());
            let (sa, sd) = art.stage("svd", || (singular_values(&a), singular_values(&ad)));
            let mut out = String::from("k,s_symbol,s_dual\n");
            for k in 0..sa.svals.len().min(20) {
                out.push_str(&format!("{},{:.16e},{:.16e}\n", k + 1, sa.svals[k], sd.svals[k]));
            }
            art.write("dual_singular_values.csv", out.as_bytes())?;
        }
        Experiment::Spectrum | Experiment::Fit => {
            let sym = symbol(cfg)?;
            let op = art.stage("quantize", || quantized(cfg, &sym))?;
            art.flags.extend(op.warnings.iter().cloned());
            let sd = art.stage("spectrum", || spectrum_of(&op))?;
            art.write("spectrum.csv", &csv_bytes(|w| sd.write_csv(w))?)?;
            if cfg.run.experiment == Experiment::Fit {
                let tp = TailParams::new(cfg.tail.p, cfg.tail.sigma)?;
                let window = (cfg.tail.k_min.max(2), cfg.tail.k_max);
                let tail = tail_functional(&sd, &tp, window, Which::All)?;
                let exponent = decay_fit(&sd, window)?;
                let fit = serde_json::json!({ "tail": tail, "decay_exponent": exponent });
                art.write("fit.json", &json_bytes(&fit))?;
            }
        }
        Experiment::Prufer => {
            let v0 = symbol(cfg)?;
            let rows = art.stage("prufer", || coupling_scan(&v0, &cfg.run.g, cfg.run.lambda))?;
            art.write("scan.csv", &csv_bytes(|w| write_scan_csv(&rows, w))?)?;
        }
        Experiment::BsCheck => {
            let grid = cfg.grid.position()?;
            let v0 = match &cfg.symbol {
                Some(s) => s.build()?,
                None => SymbolField::power_decay(2.0, 0.0)?,
            };
            let lambda = cfg.run.lambda;
            if !cfg.run.g.is_empty() {
                let mut out = String::from("g,lambda,ode_count,matrix_count,error_bar\n");
                for &g in &cfg.run.g {
                    let v = v0.clone().scaled(g);
                    let r = default_radius(g, lambda);
                    let ode = art.stage(&format!("ode g={g}"), || {
                        decoupled_count(&SchrodingerProblem::new(v.clone(), lambda, Domain::WholeLine { radius: r })?, r)
                    })?;
                    let bs = art.stage(&format!("bs g={g}"), || build_bs_matrix(&v, lambda, &grid).map(|m| bs_count(&m)))?;
                    if bs.is_boundary_sensitive() {
                        art.flags.push(format!("g={g}: boundary-sensitive eigenvalues {:?}", bs.boundary_sensitive));
                    }
                    if bs.count.abs_diff(ode.count) > ode.error_bar {
                        art.flags.push(format!("g={g}: counts {} and {} differ by more than {}", bs.count, ode.count, ode.error_bar));
                    }
                    out.push_str(&format!("{g:.16e},{lambda:.16e},{},{},{}\n", ode.count, bs.count, ode.error_bar));
                }
                art.write("bs_check.csv", out.as_bytes())?;
            }
            if !cfg.run.s.is_empty() {
                let rows = cfg
                    .run
                    .s
                    .iter()
                    .map(|&s| art.stage(&format!("bridge s={s}"), || bridge(s, &grid)))
                    .collect::<wspectra::Result<Vec<_>>>()?;
                for r in rows.iter().filter(|r| r.boundary_sensitive) {
                    art.flags.push(format!("s={}: boundary-sensitive singular value", r.s));
                }
                art.write("bridge.csv", &csv_bytes(|w| write_bridge_csv(&rows, w))?)?;
            }
        }
        Experiment::PhaseVolume => {
            let rho = symbol(cfg)?;
            let pp = PhaseProfile::new(rho, cfg.tail.p, cfg.tail.sigma)?;
            let (sup, lim, vols) = art.stage("phase-volume", || -> wspectra::Result<_> {
                Ok((
                    n_functional(&pp, ScanMode::Sup)?,
                    n_functional(&pp, ScanMode::LimsupScan)?,
                    phase_volumes(&pp.rho, &pp.levels, pp.box_half_width)?,
                ))
            })?;
            let mut out = String::from("level,volume,value\n");
            for ((e, v), f) in pp.levels.iter().zip(&vols).zip(&sup.values) {
                out.push_str(&format!("{e:.16e},{v:.16e},{f:.16e}\n"));
            }
            art.write("phase_volume.csv", out.as_bytes())?;
            let summary = serde_json::json!({
                "p": pp.p, "sigma": pp.sigma,
                "sup": sup.value, "limsup": lim.value, "drift_slope": lim.drift_slope,
            });
            art.write("phase_volume.json", &json_bytes(&summary))?;
        }
        Experiment::Suite => {
            let (level, seed) = (cfg.run.level, cfg.run.seed);
            let outcomes = art.stage("suite", || acceptance::run_suite(level, seed, |_| {}));
            art.write("report.txt", acceptance::report(level, seed, &outcomes).as_bytes())?;
            art.write("report.json", &json_bytes(&outcomes))?;
            art.flags.extend(outcomes.iter().filter(|o| !o.pass).map(|o| format!("criterion {} failed", o.id)));
        }
    }
    Ok(())
}
