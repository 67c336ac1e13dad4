//! Library backing the `poeq` binary: configuration, orchestration and
//! output assembly, kept separate from argument parsing for testability.

pub mod report;
pub mod svg;

use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use num_rational::BigRational;

use poeq_core::generate::{generate_general_position, generate_instance};
use poeq_core::io::{instance_from_json, instance_from_json_str};
use poeq_core::rational::format_rational;
use poeq_core::{
    build_graph, g_value, hyperplane_support_check_with_cap, maxmin_lp, simple_descent,
    steepest_descent, Algorithm, Instance, RnsGraph, SolveReport, DEFAULT_ENUMERATION_CAP,
};

/// Where the instance comes from.
#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Stdin,
    Inline(Instance),
    Generate { m: usize, seed: u64, general_position: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    Simple,
    Steepest,
    Both,
}

impl AlgorithmChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::Simple => vec![Algorithm::Simple],
            AlgorithmChoice::Steepest => vec![Algorithm::Steepest],
            AlgorithmChoice::Both => vec![Algorithm::Simple, Algorithm::Steepest],
        }
    }
}

impl std::str::FromStr for AlgorithmChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simple" => Ok(AlgorithmChoice::Simple),
            "steepest" => Ok(AlgorithmChoice::Steepest),
            "both" => Ok(AlgorithmChoice::Both),
            other => bail!("unknown algorithm {other:?} (expected simple, steepest or both)"),
        }
    }
}

/// Which independent checks to run against the solver result.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleConfig {
    pub lp: bool,
    pub grid: Option<usize>,
    pub support: bool,
}

impl OracleConfig {
    /// Parses a comma list like `lp,grid=321,support`.
    pub fn parse(spec: &str) -> anyhow::Result<OracleConfig> {
        let mut config = OracleConfig::default();
        for part in spec.split(',').filter(|p| !p.is_empty()) {
            if part == "lp" {
                config.lp = true;
            } else if part == "support" {
                config.support = true;
            } else if let Some(n) = part.strip_prefix("grid=") {
                let n: usize = n.parse().context("grid resolution must be an integer")?;
                if n < 3 {
                    bail!("grid resolution must be at least 3");
                }
                config.grid = Some(n);
            } else {
                bail!("unknown oracle {part:?} (expected lp, grid=N or support)");
            }
        }
        Ok(config)
    }

    pub fn any(&self) -> bool {
        self.lp || self.grid.is_some() || self.support
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub algorithm: AlgorithmChoice,
    pub oracles: OracleConfig,
    /// Emit JSON instead of text.
    pub json: bool,
    /// Rescale input rows instead of rejecting unnormalized ones.
    pub normalize: bool,
    /// Cap for the brute-force support oracle (3^m enumeration).
    pub cap: Option<usize>,
    pub svg_path: Option<PathBuf>,
    pub dot_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: Source) -> RunConfig {
        RunConfig {
            source,
            algorithm: AlgorithmChoice::Steepest,
            oracles: OracleConfig::default(),
            json: false,
            normalize: false,
            cap: None,
            svg_path: None,
            dot_path: None,
        }
    }
}

/// One oracle's verdict for the report.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub name: &'static str,
    pub detail: serde_json::Value,
    pub agrees: bool,
}

/// Everything a single solve produces.
pub struct RunResult {
    pub instance: Instance,
    pub graph: RnsGraph,
    pub reports: Vec<SolveReport>,
    pub verdicts: Vec<OracleVerdict>,
    /// False when an oracle disagrees or the algorithms diverge.
    pub ok: bool,
}

/// Parses `m=K,seed=S` with an optional `,gp=RETRIES`.
pub fn parse_generate_spec(spec: &str) -> anyhow::Result<Source> {
    let mut m = None;
    let mut seed = None;
    let mut gp = None;
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .with_context(|| format!("expected key=value, got {part:?}"))?;
        match key {
            "m" => m = Some(value.parse().context("m must be a positive integer")?),
            "seed" => seed = Some(value.parse().context("seed must be an integer")?),
            "gp" => gp = Some(value.parse().context("gp must be an integer retry limit")?),
            other => bail!("unknown generate key {other:?} (expected m, seed or gp)"),
        }
    }
    let m = m.context("--generate needs m=K")?;
    if m == 0 {
        bail!("m must be at least 1");
    }
    Ok(Source::Generate { m, seed: seed.unwrap_or(0), general_position: gp })
}

fn load_instance(config: &RunConfig) -> anyhow::Result<Instance> {
    match &config.source {
        Source::Inline(inst) => Ok(inst.clone()),
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            Ok(instance_from_json_str(&text, config.normalize)
                .with_context(|| format!("cannot parse {}", path.display()))?)
        }
        Source::Stdin => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
            Ok(instance_from_json_str(&text, config.normalize).context("cannot parse stdin")?)
        }
        Source::Generate { m, seed, general_position } => Ok(match general_position {
            Some(retries) => generate_general_position(*m, *seed, *retries)?,
            None => generate_instance(*m, *seed)?,
        }),
    }
}

/// Solves one instance under `config` and gathers oracle verdicts.
pub fn execute(config: &RunConfig) -> anyhow::Result<RunResult> {
    let instance = load_instance(config)?;
    let graph = build_graph(&instance);
    let mut reports = Vec::new();
    for alg in config.algorithm.algorithms() {
        let report = match alg {
            Algorithm::Simple => simple_descent(&instance, &graph, None)?,
            Algorithm::Steepest => steepest_descent(&instance, &graph, None)?,
        };
        reports.push(report);
    }
    let mut ok = reports.windows(2).all(|w| w[0].value == w[1].value);
    let verdicts = run_oracles(&instance, &reports, config)?;
    ok &= verdicts.iter().all(|v| v.agrees);
    Ok(RunResult { instance, graph, reports, verdicts, ok })
}

fn run_oracles(
    inst: &Instance,
    reports: &[SolveReport],
    config: &RunConfig,
) -> anyhow::Result<Vec<OracleVerdict>> {
    let mut verdicts = Vec::new();
    let value = &reports[0].value;
    if config.oracles.lp {
        let lp = maxmin_lp(inst);
        verdicts.push(OracleVerdict {
            name: "lp",
            agrees: &lp.value == value,
            detail: serde_json::json!({ "value": format_rational(&lp.value) }),
        });
    }
    if let Some(n) = config.oracles.grid {
        let (gamma, grid_value) = poeq_core::grid_min_g(inst, n);
        // The grid value sits above the true minimum by at most the Lipschitz
        // bound 3m/n.
        let bound = BigRational::new((3 * inst.item_count()).into(), n.into());
        let agrees = grid_value >= *value && &grid_value - value <= bound;
        verdicts.push(OracleVerdict {
            name: "grid",
            agrees,
            detail: serde_json::json!({
                "resolution": n,
                "value": format_rational(&grid_value),
                "gamma": gamma.coords().iter().map(format_rational).collect::<Vec<_>>(),
                "bound": format_rational(&bound),
            }),
        });
    }
    if config.oracles.support {
        let cap = config.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
        let mut agrees = true;
        for report in reports {
            let brute = hyperplane_support_check_with_cap(inst, &report.gamma_star, cap)?;
            agrees &= brute == g_value(inst, &report.gamma_star) && brute == *value;
        }
        verdicts.push(OracleVerdict {
            name: "support",
            agrees,
            detail: serde_json::json!({ "cap": cap, "value": format_rational(value) }),
        });
    }
    Ok(verdicts)
}

/// Runs one instance end to end, writing the report (and any SVG/DOT files).
/// Returns false when an enabled oracle disagrees.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<bool> {
    let result = execute(config)?;
    if let Some(path) = &config.dot_path {
        std::fs::write(path, result.graph.to_dot())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(path) = &config.svg_path {
        let drawing = svg::render_svg(&result.instance, &result.graph, result.reports.first());
        std::fs::write(path, drawing)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    if config.json {
        let doc = report::result_document(&result);
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        out.write_all(b"\n")?;
    } else {
        out.write_all(report::render_text(&result).as_bytes())?;
    }
    Ok(result.ok)
}

/// Batch mode: one JSON instance document per input line, one JSON result
/// document per output line, sequence numbers preserved.
pub fn run_batch(path: &PathBuf, config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut all_ok = true;
    for (seq, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_result = serde_json::from_str::<serde_json::Value>(line)
            .map_err(anyhow::Error::from)
            .and_then(|doc| {
                instance_from_json(&doc, config.normalize).map_err(anyhow::Error::from)
            })
            .and_then(|inst| {
                let mut per = config.clone();
                per.source = Source::Inline(inst);
                per.svg_path = None;
                per.dot_path = None;
                execute(&per)
            });
        match line_result {
            Ok(result) => {
                let mut doc = report::result_document(&result);
                doc.as_object_mut()
                    .expect("document is an object")
                    .insert("seq".into(), serde_json::json!(seq));
                serde_json::to_writer(&mut *out, &doc)?;
                out.write_all(b"\n")?;
                all_ok &= result.ok;
            }
            Err(err) => {
                let doc = serde_json::json!({ "seq": seq, "error": format!("{err:#}") });
                serde_json::to_writer(&mut *out, &doc)?;
                out.write_all(b"\n")?;
                all_ok = false;
            }
        }
    }
    Ok(all_ok)
}
