//! Command-line front end: `detect`, `oracle`, `closed-form` and `sweep`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_axes, parse_bounds, parse_mode, Preset, ScenarioFile};
use crate::equilibria::{DominanceKind, RationalityProfile};
use crate::error::{Error, Result};
use crate::evolve::{evolve, DetectionConfig, GenerationRecord};
use crate::game::{GameSpec, StrategyProfile};
use crate::oracle::{oracle_report, Grid, DEFAULT_STEP};
use crate::report::{csv_string, export_svg_overlay, Axes, EquilibriumReport};

/// Relative output paths are resolved against this directory when it is set.
pub const OUT_DIR_ENV: &str = "SPECTRUM_EQ_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "spectrum-eq", version, about = "Equilibrium detection for whitespace access games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a population toward the equilibria of one or more relations.
    Detect {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate a lattice and keep the exact (grid-restricted) equilibria.
    Oracle {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Lattice step in strategy units.
        #[arg(long)]
        step: Option<f64>,
        /// Smallest deviation gain that disqualifies a Nash candidate.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the analytic equilibrium and its payoffs.
    ClosedForm {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the detector for each whitespace size in `--W a,b,c` and tabulate the fronts.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args, Default)]
pub struct ScenarioArgs {
    /// Scenario file with [scenario], [detect], [oracle] and [output] sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Figure preset: fig1 .. fig6.
    #[arg(long)]
    pub preset: Option<String>,
    /// cournot, stackelberg or bertrand.
    #[arg(long)]
    pub game: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Whitespace size in channels; `sweep` accepts a comma-separated list.
    #[arg(long = "W", value_delimiter = ',', allow_negative_numbers = true)]
    pub whitespace: Vec<f64>,
    /// Cost of accessing one channel.
    #[arg(long = "K", allow_negative_numbers = true)]
    pub cost: Option<f64>,
    /// Strategy intervals as `lo:hi,lo:hi`.
    #[arg(long)]
    pub bounds: Option<String>,
    /// One N (Nash) or P (Pareto) per player, e.g. NP.
    #[arg(long)]
    pub rationality: Option<String>,
    #[arg(long)]
    pub tie_tolerance: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct SearchArgs {
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub crossover_rate: Option<f64>,
    #[arg(long)]
    pub mutation_rate: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// bilevel or simultaneous.
    #[arg(long)]
    pub stackelberg_mode: Option<String>,
    /// Stop at the generation where convergence is first detected.
    #[arg(long)]
    pub early_stop: bool,
}

#[derive(Debug, Args, Default)]
pub struct OutputArgs {
    /// CSV destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG scatter destination (two-player games only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// strategy or payoff.
    #[arg(long)]
    pub axes: Option<String>,
    /// Per-generation trace CSV destination (detect only).
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

/// Fully merged settings for one invocation.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub settings: ScenarioFile,
    pub preset: Option<Preset>,
    pub whitespace: Vec<f64>,
}

impl Resolved {
    fn new(scenario: &ScenarioArgs, search: Option<&SearchArgs>, output: &OutputArgs) -> Result<Self> {
        let preset = scenario.preset.as_deref().map(str::parse::<Preset>).transpose()?;
        let mut flags = ScenarioFile {
            kind: scenario.game.as_deref().map(str::parse).transpose()?,
            n: scenario.n,
            whitespace: scenario.whitespace.first().copied(),
            cost: scenario.cost,
            bounds: scenario.bounds.as_deref().map(parse_bounds).transpose()?,
            rationality: scenario.rationality.as_deref().map(str::parse).transpose()?,
            tie_tolerance: scenario.tie_tolerance,
            csv: output.out.as_ref().map(|p| p.display().to_string()),
            svg: output.svg.as_ref().map(|p| p.display().to_string()),
            axes: output.axes.as_deref().map(parse_axes).transpose()?,
            ..ScenarioFile::default()
        };
        if let Some(s) = search {
            flags.population = s.pop;
            flags.generations = s.generations;
            flags.window = s.window;
            flags.tolerance = s.tol;
            flags.crossover_rate = s.crossover_rate;
            flags.mutation_rate = s.mutation_rate;
            flags.seed = s.seed;
            flags.stackelberg_mode = s.stackelberg_mode.as_deref().map(parse_mode).transpose()?;
            if s.early_stop {
                flags.stop_on_convergence = Some(true);
            }
        }
        let file = match &scenario.config {
            Some(path) => ScenarioFile::load(path)?,
            None => ScenarioFile::default(),
        };
        let base = preset.map(Preset::settings).unwrap_or_default();
        let settings = flags.or(file).or(base);
        let whitespace = if scenario.whitespace.len() > 1 {
            scenario.whitespace.clone()
        } else {
            settings.whitespace.into_iter().collect()
        };
        Ok(Self { settings, preset, whitespace })
    }

    /// The game at whitespace `w` (or the configured one).
    pub fn game_at(&self, w: Option<f64>) -> Result<GameSpec> {
        let s = &self.settings;
        let kind = s.kind.ok_or_else(|| Error::Config("missing game kind (--game or [scenario] kind)".into()))?;
        let whitespace =
            w.or(s.whitespace).ok_or_else(|| Error::Config("missing whitespace size (--W or [scenario] W)".into()))?;
        let cost = s.cost.ok_or_else(|| Error::Config("missing channel cost (--K or [scenario] K)".into()))?;
        let n = s.n.unwrap_or(2);
        let mut game = GameSpec::new(kind, n, whitespace, cost).map_err(usage)?;
        // sweeps over several W keep the default [0, W] intervals
        if let Some(b) = s.bounds.as_ref().filter(|_| self.whitespace.len() <= 1) {
            game = game.with_bounds(b.clone()).map_err(usage)?;
        }
        if let Some(t) = s.tie_tolerance {
            game = game.with_tie_tolerance(t).map_err(usage)?;
        }
        Ok(game)
    }

    pub fn game(&self) -> Result<GameSpec> {
        if self.whitespace.len() > 1 {
            return Err(Error::Config("a list of W values is only accepted by `sweep`".into()));
        }
        self.game_at(None)
    }

    pub fn detection_config(&self) -> Result<DetectionConfig> {
        let s = &self.settings;
        let d = DetectionConfig::default();
        let cfg = DetectionConfig {
            population_size: s.population.unwrap_or(d.population_size),
            max_generations: s.generations.unwrap_or(d.max_generations),
            convergence_window: s.window.unwrap_or(d.convergence_window),
            convergence_tol: s.tolerance.unwrap_or(d.convergence_tol),
            crossover_rate: s.crossover_rate.unwrap_or(d.crossover_rate),
            mutation_rate: s.mutation_rate.or(d.mutation_rate),
            crossover_distribution_index: s.crossover_index.unwrap_or(d.crossover_distribution_index),
            mutation_distribution_index: s.mutation_index.unwrap_or(d.mutation_distribution_index),
            seed: s.seed.unwrap_or(d.seed),
            stackelberg_mode: s.stackelberg_mode.unwrap_or(d.stackelberg_mode),
            stop_on_convergence: s.stop_on_convergence.unwrap_or(d.stop_on_convergence),
            dominance_tolerance: d.dominance_tolerance,
        };
        cfg.validate().map_err(usage)?;
        Ok(cfg)
    }

    /// Relations to run: the configured one, all four for a bare preset, else all-Nash.
    pub fn relations(&self, n: usize) -> Result<Vec<DominanceKind>> {
        let profiles: Vec<RationalityProfile> = match (&self.settings.rationality, self.preset) {
            (Some(r), _) => vec![r.clone()],
            (None, Some(_)) => Preset::RELATIONS.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            (None, None) => vec![RationalityProfile::all_nash(n)],
        };
        for r in &profiles {
            if r.len() != n {
                return Err(Error::Config(format!("rationality `{r}` has {} labels for {n} players", r.len())));
            }
        }
        Ok(profiles.into_iter().map(DominanceKind::from_rationality).collect())
    }

    pub fn axes(&self) -> Axes {
        self.settings.axes.unwrap_or(Axes::StrategySpace)
    }

    fn csv_path(&self) -> Option<PathBuf> {
        self.settings.csv.as_deref().map(output_path)
    }

    fn svg_path(&self) -> Option<PathBuf> {
        self.settings.svg.as_deref().map(output_path)
    }
}

fn usage(e: Error) -> Error {
    match e {
        Error::InvalidInput(msg) => Error::Config(msg),
        other => other,
    }
}

/// Joins relative paths onto `$SPECTRUM_EQ_OUT_DIR` when it is set.
pub fn output_path(p: impl AsRef<Path>) -> PathBuf {
    let p = p.as_ref();
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// `front.csv` -> `front_NP.csv` when several relations share one destination.
fn suffixed(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{label}"),
    };
    path.with_file_name(name)
}

pub fn trace_csv(trace: &[GenerationRecord]) -> String {
    let n = trace.first().map_or(0, |r| r.centroid.len());
    let mut s = String::from("generation,front_size");
    for i in 1..=n {
        s.push_str(&format!(",centroid_{i}"));
    }
    for i in 1..=n {
        s.push_str(&format!(",centroid_payoff_{i}"));
    }
    s.push_str(",movement\n");
    for r in trace {
        s.push_str(&format!("{},{}", r.generation, r.front_size));
        for v in r.centroid.iter().chain(&r.centroid_payoffs) {
            s.push_str(&format!(",{v:.6}"));
        }
        match r.movement {
            Some(m) => s.push_str(&format!(",{m:.6}\n")),
            None => s.push_str(",\n"),
        }
    }
    s
}

fn summarize(out: &mut dyn Write, report: &EquilibriumReport) -> Result<()> {
    let (s, u) = report.centroid();
    let label = report.relation.as_ref().map_or_else(|| "closed form".to_owned(), |k| k.label());
    let io = |e| Error::io("<stdout>", e);
    write!(
        out,
        "{} {} [{}]: {} profile(s), centroid {} payoffs {}",
        report.game.kind(),
        report.source.name(),
        label,
        report.len(),
        StrategyProfile(round6(&s)),
        StrategyProfile(round6(&u)),
    )
    .map_err(io)?;
    if !report.trace.is_empty() {
        match report.converged_at {
            Some(g) => write!(out, ", converged at generation {g}").map_err(io)?,
            None => write!(out, ", not converged after {} generations", report.trace.len() - 1).map_err(io)?,
        }
    }
    writeln!(out).map_err(io)
}

fn round6(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6 + 0.0).collect()
}

fn emit(resolved: &Resolved, reports: &[EquilibriumReport], out: &mut dyn Write) -> Result<()> {
    if let Some(path) = resolved.csv_path() {
        for report in reports {
            let target = match (&report.relation, reports.len()) {
                (Some(k), len) if len > 1 => suffixed(&path, &k.label()),
                _ => path.clone(),
            };
            write_file(&target, &csv_string(report)?)?;
            writeln!(out, "wrote {}", target.display()).map_err(|e| Error::io("<stdout>", e))?;
        }
    }
    if let Some(path) = resolved.svg_path() {
        let mut layers: Vec<&EquilibriumReport> = reports.iter().collect();
        let closed = reports.first().and_then(|r| EquilibriumReport::closed_form(&r.game).ok());
        if let Some(c) =
            closed.as_ref().filter(|_| reports.iter().all(|r| r.source != crate::report::Source::ClosedForm))
        {
            layers.push(c);
        }
        if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        export_svg_overlay(&layers, resolved.axes(), &path)?;
        writeln!(out, "wrote {}", path.display()).map_err(|e| Error::io("<stdout>", e))?;
    }
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Detect { scenario, search, output } => {
            let resolved = Resolved::new(&scenario, Some(&search), &output)?;
            let game = resolved.game()?;
            let cfg = resolved.detection_config()?;
            let mut reports = Vec::new();
            for kind in resolved.relations(game.n())? {
                let report = evolve(&game, &kind, &cfg)?;
                summarize(out, &report)?;
                reports.push(report);
            }
            if let Some(path) = &output.trace {
                let path = output_path(path);
                for report in &reports {
                    let target = match (&report.relation, reports.len()) {
                        (Some(k), len) if len > 1 => suffixed(&path, &k.label()),
                        _ => path.clone(),
                    };
                    write_file(&target, &trace_csv(&report.trace))?;
                }
            }
            emit(&resolved, &reports, out)
        }
        Command::Oracle { scenario, step, eps, output } => {
            let resolved = Resolved::new(&scenario, None, &output)?;
            let game = resolved.game()?;
            let file_step = resolved.settings.step;
            let step = step.or(file_step).unwrap_or(DEFAULT_STEP);
            let eps = eps.or(resolved.settings.eps).unwrap_or(1e-9);
            let grid = Grid::for_game(&game, step).map_err(usage)?;
            let mut reports = Vec::new();
            for kind in resolved.relations(game.n())? {
                let report = oracle_report(&game, &kind, &grid, eps)?;
                summarize(out, &report)?;
                reports.push(report);
            }
            emit(&resolved, &reports, out)
        }
        Command::ClosedForm { scenario, output } => {
            let resolved = Resolved::new(&scenario, None, &output)?;
            let game = resolved.game()?;
            let report = EquilibriumReport::closed_form(&game)?;
            let io = |e| Error::io("<stdout>", e);
            writeln!(out, "{} equilibrium {}", game.kind(), report.profiles[0]).map_err(io)?;
            writeln!(out, "payoffs {}", report.payoffs[0]).map_err(io)?;
            emit(&resolved, &[report], out)
        }
        Command::Sweep { scenario, search, output } => {
            let resolved = Resolved::new(&scenario, Some(&search), &output)?;
            if resolved.whitespace.is_empty() {
                return Err(Error::Config("sweep needs --W with one or more values".into()));
            }
            let cfg = resolved.detection_config()?;
            let mut table = String::new();
            let mut header_written = false;
            for &w in &resolved.whitespace {
                let game = resolved.game_at(Some(w))?;
                let kinds = resolved.relations(game.n())?;
                if !header_written {
                    table.push_str(&sweep_header(game.n()));
                    header_written = true;
                }
                for kind in kinds {
                    let report = evolve(&game, &kind, &cfg)?;
                    summarize(out, &report)?;
                    table.push_str(&sweep_row(&report));
                }
            }
            out.write_all(table.as_bytes()).map_err(|e| Error::io("<stdout>", e))?;
            if let Some(path) = resolved.csv_path() {
                write_file(&path, &table)?;
                writeln!(out, "wrote {}", path.display()).map_err(|e| Error::io("<stdout>", e))?;
            }
            Ok(())
        }
    }
}

fn sweep_header(n: usize) -> String {
    let mut s = String::from("W,K,relation,generations,converged_at");
    for prefix in ["centroid", "centroid_payoff", "closed_form"] {
        for i in 1..=n {
            s.push_str(&format!(",{prefix}_{i}"));
        }
    }
    s.push('\n');
    s
}

fn sweep_row(report: &EquilibriumReport) -> String {
    let g = &report.game;
    let (c, u) = report.centroid();
    let closed = g.closed_form().map(|p| p.0).unwrap_or_else(|_| vec![f64::NAN; g.n()]);
    let relation = report.relation.as_ref().map_or_else(String::new, |k| k.label());
    let mut s = format!(
        "{},{},{},{},{}",
        g.whitespace(),
        g.cost(),
        relation,
        report.trace.len().saturating_sub(1),
        report.converged_at.map_or_else(String::new, |v| v.to_string())
    );
    for v in c.iter().chain(&u).chain(&closed) {
        s.push_str(&format!(",{v:.6}"));
    }
    s.push('\n');
    s
}
