//! Run configuration: flat INI with sections `[run]`, `[symbol]`, `[grid]`
//! and `[tail]`. Every key is validated; unknown sections or keys are errors.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use ini::Ini;
use wspectra::{Grid1D, Grid2D, SymbolField};

#[derive(Debug)]
pub struct ConfigError(pub Vec<String>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("; "))
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Quantize,
    Dual,
    Spectrum,
    Fit,
    Prufer,
    BsCheck,
    PhaseVolume,
    Suite,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Quantize,
        Experiment::Dual,
        Experiment::Spectrum,
        Experiment::Fit,
        Experiment::Prufer,
        Experiment::BsCheck,
        Experiment::PhaseVolume,
        Experiment::Suite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Quantize => "quantize",
            Experiment::Dual => "dual",
            Experiment::Spectrum => "spectrum",
            Experiment::Fit => "fit",
            Experiment::Prufer => "prufer",
            Experiment::BsCheck => "bs-check",
            Experiment::PhaseVolume => "phase-volume",
            Experiment::Suite => "suite",
        }
    }

    fn needs_symbol(self) -> bool {
        !matches!(self, Experiment::BsCheck | Experiment::Suite)
    }
}

impl FromStr for Experiment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown experiment '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Quality flags are recorded in the manifest.
    Warn,
    /// Quality flags fail the run with exit status 3.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(format!("unknown level '{s}' (fast|full)")),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec {
    Gaussian { r: f64 },
    Bump { radius: f64, center: (f64, f64) },
    SectorBump { angle: f64, radius: f64, center: (f64, f64) },
    PolygonBump { vertices: Vec<(f64, f64)>, radius: f64 },
    DiskIndicator { radius: f64 },
    B0Closed { phi00: f64 },
    PowerDecay { alpha: f64, beta: f64 },
    RadialPower { gamma: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSection {
    pub spec: SymbolSpec,
    pub scale: f64,
    /// Width parameter `r` of a Gaussian envelope `exp(-r|τ|²)`; 0 for none.
    pub envelope: f64,
}

impl SymbolSection {
    pub fn build(&self) -> wspectra::Result<SymbolField> {
        let base = match &self.spec {
            SymbolSpec::Gaussian { r } => SymbolField::gaussian(*r)?,
            SymbolSpec::Bump { radius, center } => SymbolField::bump(*radius, *center)?,
            SymbolSpec::SectorBump { angle, radius, center } => SymbolField::sector_bump_centered(*angle, *radius, *center)?,
            SymbolSpec::PolygonBump { vertices, radius } => SymbolField::polygon_bump(vertices.clone(), *radius)?,
            SymbolSpec::DiskIndicator { radius } => SymbolField::disk_indicator(*radius)?,
            SymbolSpec::B0Closed { phi00 } => SymbolField::b0_closed(*phi00)?,
            SymbolSpec::PowerDecay { alpha, beta } => SymbolField::power_decay(*alpha, *beta)?,
            SymbolSpec::RadialPower { gamma } => SymbolField::radial_power(*gamma)?,
        };
        let base = if self.envelope > 0.0 { base.times(SymbolField::gaussian(self.envelope)?) } else { base };
        Ok(if self.scale != 1.0 { base.scaled(self.scale) } else { base })
    }

    fn family(&self) -> &'static str {
        match self.spec {
            SymbolSpec::Gaussian { .. } => "gaussian",
            SymbolSpec::Bump { .. } => "bump",
            SymbolSpec::SectorBump { .. } => "sector_bump",
            SymbolSpec::PolygonBump { .. } => "polygon_bump",
            SymbolSpec::DiskIndicator { .. } => "disk_indicator",
            SymbolSpec::B0Closed { .. } => "b0_closed",
            SymbolSpec::PowerDecay { .. } => "power_decay",
            SymbolSpec::RadialPower { .. } => "radial_power",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSection {
    pub half_width: f64,
    pub n: usize,
    pub xi_half_width: f64,
    pub n_xi: usize,
}

impl GridSection {
    pub fn position(&self) -> wspectra::Result<Grid1D> {
        Grid1D::new(self.half_width, self.n)
    }

    pub fn frequency(&self) -> wspectra::Result<Grid1D> {
        Grid1D::new(self.xi_half_width, self.n_xi)
    }

    pub fn phase_plane(&self) -> wspectra::Result<Grid2D> {
        Grid2D::new(self.half_width, self.n, self.xi_half_width, self.n_xi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailSection {
    pub p: f64,
    pub sigma: f64,
    pub k_min: usize,
    pub k_max: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSection {
    pub experiment: Experiment,
    pub seed: u64,
    pub out: Option<String>,
    pub t: f64,
    pub policy: Policy,
    pub g: Vec<f64>,
    pub lambda: f64,
    pub s: Vec<f64>,
    pub level: Level,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub run: RunSection,
    pub symbol: Option<SymbolSection>,
    pub grid: GridSection,
    pub tail: TailSection,
}

const RUN_KEYS: &[&str] = &["experiment", "seed", "out", "t", "policy", "g", "lambda", "s", "level"];
const GRID_KEYS: &[&str] = &["L", "n", "xi_half_width", "n_xi"];
const TAIL_KEYS: &[&str] = &["p", "sigma", "k_min", "k_max"];

fn symbol_keys(family: &str) -> Option<&'static [&'static str]> {
    Some(match family {
        "gaussian" => &["family", "scale", "envelope", "r"],
        "bump" => &["family", "scale", "envelope", "radius", "center"],
        "sector_bump" => &["family", "scale", "envelope", "angle", "radius", "center"],
        "polygon_bump" => &["family", "scale", "envelope", "vertices", "radius"],
        "disk_indicator" => &["family", "scale", "envelope", "radius"],
        "b0_closed" => &["family", "scale", "envelope", "phi00"],
        "power_decay" => &["family", "scale", "envelope", "alpha", "beta"],
        "radial_power" => &["family", "scale", "envelope", "gamma"],
        _ => return None,
    })
}

/// Real number, also accepting `pi`, `pi/k`, `a*pi` and `a*pi/k`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().map_err(|_| format!("bad number '{s}'"))?),
        None => (s, 1.0),
    };
    let coeff = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(c) => c.trim().trim_end_matches('*').trim().parse::<f64>().map_err(|_| format!("bad number '{s}'"))?,
        None => return Err(format!("bad number '{s}'")),
    };
    Ok(coeff * PI / den)
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_real).collect()
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v: Vec<&str> = s.split_whitespace().collect();
    match v.as_slice() {
        [a, b] => Ok((parse_real(a)?, parse_real(b)?)),
        _ => Err(format!("expected two numbers, got '{s}'")),
    }
}

fn parse_vertices(s: &str) -> Result<Vec<(f64, f64)>, String> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_pair).collect()
}

/// Collects errors so all problems are reported at once.
struct Section<'a> {
    name: &'static str,
    map: BTreeMap<String, String>,
    errors: &'a mut Vec<String>,
}

impl Section<'_> {
    fn take<T>(&mut self, key: &str, default: Option<T>, parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        match self.map.remove(key) {
            Some(v) => match parse(&v) {
                Ok(x) => Some(x),
                Err(e) => {
                    self.errors.push(format!("[{}] {key}: {e}", self.name));
                    None
                }
            },
            None if default.is_some() => default,
            None => {
                self.errors.push(format!("[{}] missing key '{key}'", self.name));
                None
            }
        }
    }

    fn real(&mut self, key: &str, default: Option<f64>) -> Option<f64> {
        self.take(key, default, parse_real)
    }

    fn usize(&mut self, key: &str, default: Option<usize>) -> Option<usize> {
        self.take(key, default, |s| s.trim().parse::<usize>().map_err(|_| format!("expected a non-negative integer, got '{s}'")))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError(vec![format!("syntax: {e}")]))?;
        let mut errors = Vec::new();
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                for (k, _) in props.iter() {
                    errors.push(format!("key '{k}' outside any section"));
                }
                continue;
            };
            if !["run", "symbol", "grid", "tail"].contains(&name) {
                errors.push(format!("unknown section [{name}]"));
                continue;
            }
            let entry = sections.entry(name.to_string()).or_default();
            for (k, v) in props.iter() {
                entry.insert(k.to_string(), v.to_string());
            }
        }
        let unknown = |name: &str, allowed: &[&str], map: &BTreeMap<String, String>, errors: &mut Vec<String>| {
            let bad: Vec<&str> = map.keys().map(String::as_str).filter(|k| !allowed.contains(k)).collect();
            if !bad.is_empty() {
                errors.push(format!("unknown keys in [{name}]: {}", bad.join(", ")));
            }
        };

        let run_map = sections.remove("run").unwrap_or_default();
        unknown("run", RUN_KEYS, &run_map, &mut errors);
        let mut s = Section { name: "run", map: run_map, errors: &mut errors };
        let experiment = s.take("experiment", None, |v| v.trim().parse::<Experiment>());
        let seed = s.take("seed", Some(0u64), |v| v.trim().parse::<u64>().map_err(|_| format!("bad seed '{v}'")));
        let out = s.map.remove("out").map(|v| v.trim().to_string());
        let t = s.real("t", Some(0.5));
        let policy = s.take("policy", Some(Policy::Warn), |v| match v.trim() {
            "warn" => Ok(Policy::Warn),
            "strict" => Ok(Policy::Strict),
            _ => Err(format!("unknown policy '{v}' (warn|strict)")),
        });
        let g = s.take("g", Some(Vec::new()), parse_list);
        let lambda = s.real("lambda", Some(1.0));
        let svals = s.take("s", Some(Vec::new()), parse_list);
        let level = s.take("level", Some(Level::Fast), |v| v.trim().parse::<Level>());

        let grid_map = sections.remove("grid").unwrap_or_default();
        unknown("grid", GRID_KEYS, &grid_map, &mut errors);
        let mut s = Section { name: "grid", map: grid_map, errors: &mut errors };
        let half_width = s.real("L", Some(8.0));
        let n = s.usize("n", Some(256));
        let xi_half_width = s.real("xi_half_width", half_width);
        let n_xi = s.usize("n_xi", n);

        let tail_map = sections.remove("tail").unwrap_or_default();
        unknown("tail", TAIL_KEYS, &tail_map, &mut errors);
        let mut s = Section { name: "tail", map: tail_map, errors: &mut errors };
        let p = s.real("p", Some(1.0));
        let sigma = s.real("sigma", Some(0.0));
        let k_min = s.usize("k_min", Some(10));
        let k_max = s.usize("k_max", Some(100));

        let symbol = match sections.remove("symbol") {
            Some(map) => parse_symbol(map, &mut errors),
            None => None,
        };

        let (Some(experiment), Some(seed), Some(t), Some(policy), Some(g), Some(lambda), Some(svals), Some(level)) =
            (experiment, seed, t, policy, g, lambda, svals, level)
        else {
            return Err(ConfigError(errors));
        };
        let (Some(half_width), Some(n), Some(xi_half_width), Some(n_xi), Some(p), Some(sigma), Some(k_min), Some(k_max)) =
            (half_width, n, xi_half_width, n_xi, p, sigma, k_min, k_max)
        else {
            return Err(ConfigError(errors));
        };
        if !errors.is_empty() {
            return Err(ConfigError(errors));
        }
        let cfg = RunConfig {
            run: RunSection { experiment, seed, out, t, policy, g, lambda, s: svals, level },
            symbol,
            grid: GridSection { half_width, n, xi_half_width, n_xi },
            tail: TailSection { p, sigma, k_min, k_max },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every numeric field against the preconditions of the modules
    /// the experiment will call.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errors = Vec::new();
        let check = |errors: &mut Vec<String>, r: wspectra::Result<()>| {
            if let Err(e) = r {
                errors.push(e.to_string());
            }
        };
        let e = self.run.experiment;
        check(&mut errors, self.grid.position().map(|_| ()));
        check(&mut errors, self.grid.frequency().map(|_| ()));
        if e.needs_symbol() {
            match &self.symbol {
                Some(s) => check(&mut errors, s.build().map(|_| ())),
                None => errors.push(format!("experiment '{}' needs a [symbol] section", e.name())),
            }
        }
        if let Some(s) = &self.symbol {
            if !(s.scale.is_finite() && s.envelope >= 0.0 && s.envelope.is_finite()) {
                errors.push("[symbol] scale must be finite and envelope non-negative".into());
            }
        }
        if !(0.0..=1.0).contains(&self.run.t) {
            errors.push(format!("[run] t must lie in [0, 1], got {}", self.run.t));
        }
        if !(self.run.lambda > 0.0 && self.run.lambda.is_finite()) {
            errors.push(format!("[run] lambda must be positive, got {}", self.run.lambda));
        }
        if self.run.g.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
            errors.push("[run] g values must be positive".into());
        }
        if self.run.s.iter().any(|s| !(*s > 0.0 && *s < 1.0)) {
            errors.push("[run] s values must lie in (0, 1)".into());
        }
        check(&mut errors, wspectra::spectra::TailParams::new(self.tail.p, self.tail.sigma).map(|_| ()));
        if !(1 <= self.tail.k_min && self.tail.k_min < self.tail.k_max) {
            errors.push(format!("[tail] window [{}, {}] is empty", self.tail.k_min, self.tail.k_max));
        }
        if matches!(e, Experiment::Fit) && self.tail.k_max > self.grid.n {
            errors.push(format!("[tail] k_max {} exceeds matrix size {}", self.tail.k_max, self.grid.n));
        }
        match e {
            Experiment::Prufer if self.run.g.is_empty() => errors.push("experiment 'prufer' needs [run] g".into()),
            Experiment::BsCheck if self.run.g.is_empty() && self.run.s.is_empty() => {
                errors.push("experiment 'bs-check' needs [run] g or s".into())
            }
            _ => {}
        }
        if let Some(out) = &self.run.out {
            if out.is_empty() {
                errors.push("[run] out is empty".into());
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError(errors))
        }
    }

    /// Canonical text form; parsing it gives back an identical config.
    pub fn to_ini(&self) -> String {
        let mut o = String::new();
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let r = &self.run;
        let _ = writeln!(o, "[run]");
        let _ = writeln!(o, "experiment = {}", r.experiment.name());
        let _ = writeln!(o, "seed = {}", r.seed);
        if let Some(out) = &r.out {
            let _ = writeln!(o, "out = {out}");
        }
        let _ = writeln!(o, "t = {}", r.t);
        let _ = writeln!(o, "policy = {}", if r.policy == Policy::Strict { "strict" } else { "warn" });
        if !r.g.is_empty() {
            let _ = writeln!(o, "g = {}", list(&r.g));
        }
        let _ = writeln!(o, "lambda = {}", r.lambda);
        if !r.s.is_empty() {
            let _ = writeln!(o, "s = {}", list(&r.s));
        }
        let _ = writeln!(o, "level = {}", r.level);
        if let Some(sym) = &self.symbol {
            let _ = writeln!(o, "\n[symbol]\nfamily = {}", sym.family());
            let pair = |p: (f64, f64)| format!("{} {}", p.0, p.1);
            match &sym.spec {
                SymbolSpec::Gaussian { r } => {
                    let _ = writeln!(o, "r = {r}");
                }
                SymbolSpec::Bump { radius, center } => {
                    let _ = writeln!(o, "radius = {radius}\ncenter = {}", pair(*center));
                }
                SymbolSpec::SectorBump { angle, radius, center } => {
                    let _ = writeln!(o, "angle = {angle}\nradius = {radius}\ncenter = {}", pair(*center));
                }
                SymbolSpec::PolygonBump { vertices, radius } => {
                    let v: Vec<String> = vertices.iter().map(|&p| pair(p)).collect();
                    let _ = writeln!(o, "vertices = {}\nradius = {radius}", v.join("; "));
                }
                SymbolSpec::DiskIndicator { radius } => {
                    let _ = writeln!(o, "radius = {radius}");
                }
                SymbolSpec::B0Closed { phi00 } => {
                    let _ = writeln!(o, "phi00 = {phi00}");
                }
                SymbolSpec::PowerDecay { alpha, beta } => {
                    let _ = writeln!(o, "alpha = {alpha}\nbeta = {beta}");
                }
                SymbolSpec::RadialPower { gamma } => {
                    let _ = writeln!(o, "gamma = {gamma}");
                }
            }
            let _ = writeln!(o, "scale = {}\nenvelope = {}", sym.scale, sym.envelope);
        }
        let gr = &self.grid;
        let _ = writeln!(o, "\n[grid]\nL = {}\nn = {}\nxi_half_width = {}\nn_xi = {}", gr.half_width, gr.n, gr.xi_half_width, gr.n_xi);
        let tl = &self.tail;
        let _ = writeln!(o, "\n[tail]\np = {}\nsigma = {}\nk_min = {}\nk_max = {}", tl.p, tl.sigma, tl.k_min, tl.k_max);
        o
    }
}

fn parse_symbol(map: BTreeMap<String, String>, errors: &mut Vec<String>) -> Option<SymbolSection> {
    let Some(family) = map.get("family").map(|f| f.trim().to_string()) else {
        errors.push("[symbol] missing key 'family'".into());
        return None;
    };
    let Some(allowed) = symbol_keys(&family) else {
        errors.push(format!("[symbol] unknown family '{family}'"));
        return None;
    };
    let bad: Vec<&str> = map.keys().map(String::as_str).filter(|k| !allowed.contains(k)).collect();
    if !bad.is_empty() {
        errors.push(format!("unknown keys in [symbol] for family {family}: {}", bad.join(", ")));
    }
    let mut s = Section { name: "symbol", map, errors };
    s.map.remove("family");
    let scale = s.real("scale", Some(1.0));
    let envelope = s.real("envelope", Some(0.0));
    let spec = match family.as_str() {
        "gaussian" => s.real("r", None).map(|r| SymbolSpec::Gaussian { r }),
        "bump" => {
            let radius = s.real("radius", None);
            let center = s.take("center", Some((0.0, 0.0)), parse_pair);
            Some(SymbolSpec::Bump { radius: radius?, center: center? })
        }
        "sector_bump" => {
            let angle = s.real("angle", None);
            let radius = s.real("radius", None);
            let center = s.take("center", Some((0.0, 0.0)), parse_pair);
            Some(SymbolSpec::SectorBump { angle: angle?, radius: radius?, center: center? })
        }
        "polygon_bump" => {
            let vertices = s.take("vertices", None, parse_vertices);
            let radius = s.real("radius", None);
            Some(SymbolSpec::PolygonBump { vertices: vertices?, radius: radius? })
        }
        "disk_indicator" => s.real("radius", None).map(|radius| SymbolSpec::DiskIndicator { radius }),
        "b0_closed" => s.real("phi00", Some(1.0)).map(|phi00| SymbolSpec::B0Closed { phi00 }),
        "power_decay" => {
            let alpha = s.real("alpha", None);
            let beta = s.real("beta", None);
            Some(SymbolSpec::PowerDecay { alpha: alpha?, beta: beta? })
        }
        "radial_power" => s.real("gamma", None).map(|gamma| SymbolSpec::RadialPower { gamma }),
        _ => unreachable!(),
    };
    Some(SymbolSection { spec: spec?, scale: scale?, envelope: envelope? })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPECTRUM: &str = "[run]\nexperiment = spectrum\n\n[symbol]\nfamily = gaussian\nr = 1\n";

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::parse(SPECTRUM).unwrap();
        assert_eq!(c.grid, GridSection { half_width: 8.0, n: 256, xi_half_width: 8.0, n_xi: 256 });
        assert_eq!(c.run.t, 0.5);
        assert_eq!(c.symbol.unwrap().spec, SymbolSpec::Gaussian { r: 1.0 });
    }

    #[test]
    fn canonical_form_round_trips() {
        let text = "[run]\nexperiment = fit\nseed = 9\nt = 0.25\ng = 1e4, 100\n# comment\n[symbol]\nfamily = polygon_bump\n\
                    vertices = 0 0; 1 0; 0 1\nradius = 2.5\nenvelope = 0.001\n[grid]\nL = 12\nn = 128\n[tail]\np = 0.5\nsigma = 2\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(RunConfig::parse(&c.to_ini()).unwrap(), c);
    }

    #[test]
    fn unknown_keys_are_listed() {
        let err = RunConfig::parse("[run]\nexperiment = spectrum\nsede = 1\n[symbol]\nfamily = gaussian\nr = 1\nradius = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sede") && msg.contains("radius"), "{msg}");
    }

    #[test]
    fn rejects_negative_n_and_unknown_sections() {
        assert!(RunConfig::parse("[run]\nexperiment = spectrum\n[symbol]\nfamily = gaussian\nr = 1\n[grid]\nn = -4\n").is_err());
        assert!(RunConfig::parse("[run]\nexperiment = spectrum\n[extra]\na = 1\n").is_err());
        assert!(RunConfig::parse("[run]\nexperiment = spectrum\n").is_err());
    }

    #[test]
    fn pi_expressions() {
        assert_eq!(parse_real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_real("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert!(parse_real("pie").is_err());
    }
}
