//! Plain-text scenario files and the figure presets.
//!
//! A scenario file holds `key = value` pairs in up to four sections:
//!
//! ```text
//! [scenario]
//! kind = cournot        # cournot | stackelberg | bertrand
//! n = 2
//! W = 10
//! K = 1
//! bounds = 0:10, 0:10   # optional, one lo:hi per player
//! rationality = NP      # optional, one N or P per player
//! tie_tolerance = 0     # bertrand only
//!
//! [detect]
//! population = 100
//! generations = 100
//! window = 5
//! tolerance = 0.001
//! crossover_rate = 0.9
//! mutation_rate = 0.5
//! crossover_index = 15
//! mutation_index = 20
//! seed = 7
//! stackelberg_mode = bilevel   # bilevel | simultaneous
//! stop_on_convergence = false
//!
//! [oracle]
//! step = 0.25
//! eps = 1e-9
//!
//! [output]
//! csv = front.csv
//! svg = front.svg
//! axes = strategy      # strategy | payoff
//! ```
//!
//! Every key is optional; command-line flags override file values.

use std::path::Path;
use std::str::FromStr;

use ini::Ini;

use crate::equilibria::RationalityProfile;
use crate::error::{Error, Result};
use crate::evolve::StackelbergMode;
use crate::game::{Bounds, GameKind};
use crate::report::Axes;

/// Raw scenario settings before validation; `None` means "use the default".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioFile {
    pub kind: Option<GameKind>,
    pub n: Option<usize>,
    pub whitespace: Option<f64>,
    pub cost: Option<f64>,
    pub bounds: Option<Vec<Bounds>>,
    pub rationality: Option<RationalityProfile>,
    pub tie_tolerance: Option<f64>,

    pub population: Option<usize>,
    pub generations: Option<usize>,
    pub window: Option<usize>,
    pub tolerance: Option<f64>,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
    pub crossover_index: Option<f64>,
    pub mutation_index: Option<f64>,
    pub seed: Option<u64>,
    pub stackelberg_mode: Option<StackelbergMode>,
    pub stop_on_convergence: Option<bool>,

    pub step: Option<f64>,
    pub eps: Option<f64>,

    pub csv: Option<String>,
    pub svg: Option<String>,
    pub axes: Option<Axes>,
}

impl ScenarioFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut out = ScenarioFile::default();
        for (section, props) in ini.iter() {
            let section = section.unwrap_or("scenario");
            for (key, value) in props.iter() {
                out.set(section, key, value.trim())?;
            }
        }
        Ok(out)
    }

    fn set(&mut self, section: &str, key: &str, value: &str) -> Result<()> {
        match (section, key) {
            ("scenario", "kind" | "game") => self.kind = Some(value.parse()?),
            ("scenario", "n") => self.n = Some(parse(key, value)?),
            ("scenario", "W" | "w" | "whitespace") => self.whitespace = Some(parse(key, value)?),
            ("scenario", "K" | "k" | "cost") => self.cost = Some(parse(key, value)?),
            ("scenario", "bounds") => self.bounds = Some(parse_bounds(value)?),
            ("scenario", "rationality") => self.rationality = Some(value.parse()?),
            ("scenario", "tie_tolerance") => self.tie_tolerance = Some(parse(key, value)?),
            ("detect", "population" | "pop") => self.population = Some(parse(key, value)?),
            ("detect", "generations") => self.generations = Some(parse(key, value)?),
            ("detect", "window") => self.window = Some(parse(key, value)?),
            ("detect", "tolerance") => self.tolerance = Some(parse(key, value)?),
            ("detect", "crossover_rate") => self.crossover_rate = Some(parse(key, value)?),
            ("detect", "mutation_rate") => self.mutation_rate = Some(parse(key, value)?),
            ("detect", "crossover_index") => self.crossover_index = Some(parse(key, value)?),
            ("detect", "mutation_index") => self.mutation_index = Some(parse(key, value)?),
            ("detect", "seed") => self.seed = Some(parse(key, value)?),
            ("detect", "stackelberg_mode") => self.stackelberg_mode = Some(parse_mode(value)?),
            ("detect", "stop_on_convergence") => self.stop_on_convergence = Some(parse(key, value)?),
            ("oracle", "step") => self.step = Some(parse(key, value)?),
            ("oracle", "eps") => self.eps = Some(parse(key, value)?),
            ("output", "csv") => self.csv = Some(value.to_owned()),
            ("output", "svg") => self.svg = Some(value.to_owned()),
            ("output", "axes") => self.axes = Some(parse_axes(value)?),
            _ => return Err(Error::Config(format!("unknown key `{key}` in section [{section}]"))),
        }
        Ok(())
    }

    /// Fills every unset field of `self` from `base`.
    pub fn or(self, base: ScenarioFile) -> ScenarioFile {
        ScenarioFile {
            kind: self.kind.or(base.kind),
            n: self.n.or(base.n),
            whitespace: self.whitespace.or(base.whitespace),
            cost: self.cost.or(base.cost),
            bounds: self.bounds.or(base.bounds),
            rationality: self.rationality.or(base.rationality),
            tie_tolerance: self.tie_tolerance.or(base.tie_tolerance),
            population: self.population.or(base.population),
            generations: self.generations.or(base.generations),
            window: self.window.or(base.window),
            tolerance: self.tolerance.or(base.tolerance),
            crossover_rate: self.crossover_rate.or(base.crossover_rate),
            mutation_rate: self.mutation_rate.or(base.mutation_rate),
            crossover_index: self.crossover_index.or(base.crossover_index),
            mutation_index: self.mutation_index.or(base.mutation_index),
            seed: self.seed.or(base.seed),
            stackelberg_mode: self.stackelberg_mode.or(base.stackelberg_mode),
            stop_on_convergence: self.stop_on_convergence.or(base.stop_on_convergence),
            step: self.step.or(base.step),
            eps: self.eps.or(base.eps),
            csv: self.csv.or(base.csv),
            svg: self.svg.or(base.svg),
            axes: self.axes.or(base.axes),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| Error::Config(format!("`{key} = {value}`: {e}")))
}

/// `lo:hi` intervals separated by commas.
pub fn parse_bounds(value: &str) -> Result<Vec<Bounds>> {
    value
        .split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("bounds entry `{}` is not lo:hi", part.trim())))?;
            Bounds::new(parse("bounds", lo.trim())?, parse("bounds", hi.trim())?)
                .map_err(|e| Error::Config(e.to_string()))
        })
        .collect()
}

pub fn parse_mode(value: &str) -> Result<StackelbergMode> {
    match value.to_ascii_lowercase().as_str() {
        "bilevel" | "bilevel_follower_br" => Ok(StackelbergMode::BilevelFollowerBR),
        "simultaneous" => Ok(StackelbergMode::Simultaneous),
        other => Err(Error::Config(format!("unknown stackelberg mode `{other}`"))),
    }
}

pub fn parse_axes(value: &str) -> Result<Axes> {
    match value.to_ascii_lowercase().as_str() {
        "strategy" | "strategies" => Ok(Axes::StrategySpace),
        "payoff" | "payoffs" => Ok(Axes::PayoffSpace),
        other => Err(Error::Config(format!("unknown axes `{other}`"))),
    }
}

/// Parameter bundles behind the six figure presets: two radios, `W = 10`,
/// `K = 1`, 100 strategies, strategy plots for odd figures and payoff plots
/// for even ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 6] = [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    /// Relations each figure overlays.
    pub const RELATIONS: [&'static str; 4] = ["NN", "PP", "NP", "PN"];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
        }
    }

    pub fn kind(self) -> GameKind {
        match self {
            Preset::Fig1 | Preset::Fig2 => GameKind::Cournot,
            Preset::Fig3 | Preset::Fig4 => GameKind::Stackelberg,
            Preset::Fig5 | Preset::Fig6 => GameKind::Bertrand,
        }
    }

    pub fn axes(self) -> Axes {
        match self {
            Preset::Fig1 | Preset::Fig3 | Preset::Fig5 => Axes::StrategySpace,
            _ => Axes::PayoffSpace,
        }
    }

    pub fn settings(self) -> ScenarioFile {
        ScenarioFile {
            kind: Some(self.kind()),
            n: Some(2),
            whitespace: Some(10.0),
            cost: Some(1.0),
            population: Some(100),
            axes: Some(self.axes()),
            ..ScenarioFile::default()
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown preset `{s}` (expected fig1 .. fig6)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let text = "[scenario]\nkind = bertrand\nn = 2\nW = 12\nK = 2\nbounds = 0:12, 1:11\nrationality = pn\n\
                    [detect]\npop = 50\nseed = 9\nstackelberg_mode = simultaneous\nstop_on_convergence = false\n\
                    [oracle]\nstep = 0.5\n[output]\naxes = payoff\ncsv = out.csv\n";
        let f = ScenarioFile::parse(text).unwrap();
        assert_eq!(f.kind, Some(GameKind::Bertrand));
        assert_eq!(f.whitespace, Some(12.0));
        assert_eq!(f.bounds.as_ref().unwrap()[1], Bounds { lo: 1.0, hi: 11.0 });
        assert_eq!(f.rationality.as_ref().unwrap().to_string(), "PN");
        assert_eq!(f.population, Some(50));
        assert_eq!(f.seed, Some(9));
        assert_eq!(f.stackelberg_mode, Some(StackelbergMode::Simultaneous));
        assert_eq!(f.stop_on_convergence, Some(false));
        assert_eq!(f.step, Some(0.5));
        assert_eq!(f.axes, Some(Axes::PayoffSpace));
        assert_eq!(f.csv.as_deref(), Some("out.csv"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ScenarioFile::parse("[scenario]\nkind = hotelling\n").is_err());
        assert!(ScenarioFile::parse("[scenario]\nW = ten\n").is_err());
        assert!(ScenarioFile::parse("[scenario]\nflavour = mint\n").is_err());
        assert!(ScenarioFile::parse("[scenario]\nbounds = 0-10\n").is_err());
        assert!(ScenarioFile::parse("[scenario]\nbounds = 5:1\n").is_err());
    }

    #[test]
    fn overrides_win() {
        let file = ScenarioFile::parse("[scenario]\nkind = cournot\nW = 10\nK = 1\n").unwrap();
        let flags = ScenarioFile { whitespace: Some(100.0), ..Default::default() };
        let merged = flags.or(file);
        assert_eq!(merged.whitespace, Some(100.0));
        assert_eq!(merged.cost, Some(1.0));
        assert_eq!(merged.kind, Some(GameKind::Cournot));
    }

    #[test]
    fn presets() {
        assert_eq!("FIG4".parse::<Preset>().unwrap(), Preset::Fig4);
        assert_eq!(Preset::Fig4.kind(), GameKind::Stackelberg);
        assert_eq!(Preset::Fig5.axes(), Axes::StrategySpace);
        assert!("fig7".parse::<Preset>().is_err());
    }
}
