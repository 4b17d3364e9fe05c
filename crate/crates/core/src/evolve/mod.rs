//! Evolutionary equilibrium detection.
//!
//! An NSGA-II style loop whose ranking relation is swapped for a generative
//! relation: classical Pareto dominance detects the Pareto set, the joint
//! Nash-Pareto relation detects Nash (all players Nash-biased) or mixed
//! equilibria. The rank-0 front of the final population is the detected set.

mod bilevel;
mod sort;
mod variation;

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::equilibria::DominanceKind;
use crate::error::{Error, Result};
use crate::game::{GameKind, GameSpec, PayoffModel, PayoffVector, StrategyProfile};
use crate::report::{EquilibriumReport, Source};

pub use bilevel::{stackelberg_bilevel_wrap, LeaderView};
pub use sort::{crowding_distance, nondominated_sort, nondominated_sort_with_tolerance};
pub use variation::variation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackelbergMode {
    /// Both channel counts evolve and payoffs are evaluated simultaneously.
    Simultaneous,
    /// Only the leader evolves; the follower always plays its best response.
    BilevelFollowerBR,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionConfig {
    pub population_size: usize,
    pub max_generations: usize,
    /// Consecutive generations the front centroid must stay put.
    pub convergence_window: usize,
    /// Largest centroid movement (strategy units) that still counts as "put".
    pub convergence_tol: f64,
    pub crossover_rate: f64,
    /// Per-variable mutation probability; `None` means `1 / number of variables`.
    pub mutation_rate: Option<f64>,
    pub crossover_distribution_index: f64,
    pub mutation_distribution_index: f64,
    pub seed: u64,
    pub stackelberg_mode: StackelbergMode,
    /// End the run at the generation where convergence is first detected.
    pub stop_on_convergence: bool,
    /// Payoff tolerance for dominance comparisons; 0 means exact.
    pub dominance_tolerance: f64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 100,
            convergence_window: 5,
            convergence_tol: 1e-3,
            crossover_rate: 0.9,
            mutation_rate: None,
            crossover_distribution_index: 15.0,
            mutation_distribution_index: 20.0,
            seed: 0,
            stackelberg_mode: StackelbergMode::BilevelFollowerBR,
            stop_on_convergence: false,
            dominance_tolerance: 0.0,
        }
    }
}

impl DetectionConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::invalid(msg));
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return bad(format!("population size must be even and >= 4, got {}", self.population_size));
        }
        if self.max_generations < 1 {
            return bad("max_generations must be >= 1".into());
        }
        if self.convergence_window < 1 {
            return bad("convergence_window must be >= 1".into());
        }
        if self.convergence_tol.is_nan() || self.convergence_tol < 0.0 {
            return bad(format!("convergence_tol must be >= 0, got {}", self.convergence_tol));
        }
        let rates = [Some(self.crossover_rate), self.mutation_rate];
        if rates.iter().flatten().any(|r| !(0.0..=1.0).contains(r)) {
            return bad("crossover and mutation rates must lie in [0, 1]".into());
        }
        if !(self.crossover_distribution_index >= 0.0 && self.mutation_distribution_index >= 0.0) {
            return bad("distribution indices must be >= 0".into());
        }
        if self.dominance_tolerance.is_nan() || self.dominance_tolerance < 0.0 {
            return bad("dominance tolerance must be >= 0".into());
        }
        Ok(())
    }

    pub(crate) fn mutation_rate_for(&self, variables: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / variables.max(1) as f64)
    }
}

/// One member of the population.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    /// Decision variables of the searched model.
    pub variables: Vec<f64>,
    /// Full profile of the underlying game.
    pub profile: StrategyProfile,
    pub payoffs: PayoffVector,
    /// Front index; 0 is the non-dominated front.
    pub rank: usize,
    pub crowding: f64,
}

impl Individual {
    pub fn evaluate<G: PayoffModel + ?Sized>(model: &G, variables: Vec<f64>) -> Result<Self> {
        let profile = model.expand(&variables);
        let payoffs = model.payoffs(&variables)?;
        if payoffs.iter().any(|u| !u.is_finite()) {
            return Err(Error::NumericFailure { profile });
        }
        Ok(Self { variables, profile, payoffs, rank: 0, crowding: 0.0 })
    }
}

/// Per-generation summary of the rank-0 front.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub front_size: usize,
    /// Mean strategy profile of the front.
    pub centroid: Vec<f64>,
    pub centroid_payoffs: Vec<f64>,
    /// Distance the centroid moved since the previous generation.
    pub movement: Option<f64>,
}

/// Generation at which the centroid first stayed within `tol` for `window` consecutive moves.
pub fn convergence_generation(trace: &[GenerationRecord], window: usize, tol: f64) -> Option<usize> {
    let mut streak = 0;
    for rec in trace {
        match rec.movement {
            Some(m) if m < tol => {
                streak += 1;
                if streak >= window {
                    return Some(rec.generation);
                }
            }
            _ => streak = 0,
        }
    }
    None
}

/// Detects the equilibria of `spec` under `kind`.
///
/// Stackelberg games are searched through the leader view unless the config
/// asks for simultaneous play.
pub fn evolve(spec: &GameSpec, kind: &DominanceKind, cfg: &DetectionConfig) -> Result<EquilibriumReport> {
    if spec.kind() == GameKind::Stackelberg && cfg.stackelberg_mode == StackelbergMode::BilevelFollowerBR {
        evolve_model(&stackelberg_bilevel_wrap(spec)?, kind, cfg)
    } else {
        evolve_model(spec, kind, cfg)
    }
}

/// Runs the detector on any payoff model.
pub fn evolve_model<G: PayoffModel + ?Sized>(
    model: &G,
    kind: &DominanceKind,
    cfg: &DetectionConfig,
) -> Result<EquilibriumReport> {
    cfg.validate()?;
    if let DominanceKind::JointNashPareto(r) = kind {
        crate::equilibria::check_rationality(model, r)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bounds: Vec<_> = (0..model.num_variables()).map(|v| model.variable_bounds(v)).collect();
    let size = cfg.population_size;

    let mut pop = (0..size)
        .map(|_| {
            let vars = bounds.iter().map(|b| b.lo + rng.random::<f64>() * b.width()).collect();
            Individual::evaluate(model, vars)
        })
        .collect::<Result<Vec<_>>>()?;
    pop = survivors(model, kind, cfg, pop, size)?;

    let mut trace = vec![record(0, &pop, None)];
    let mut converged_at = None;
    for generation in 1..=cfg.max_generations {
        let mut merged = Vec::with_capacity(2 * size);
        while merged.len() < size {
            let a = tournament(&pop, &mut rng);
            let b = tournament(&pop, &mut rng);
            let (c1, c2) = variation(&bounds, &pop[a].variables, &pop[b].variables, cfg, &mut rng);
            merged.push(Individual::evaluate(model, c1)?);
            merged.push(Individual::evaluate(model, c2)?);
        }
        merged.extend(pop);
        pop = survivors(model, kind, cfg, merged, size)?;

        let prev = &trace[trace.len() - 1];
        let rec = record(generation, &pop, Some(&prev.centroid));
        debug!(
            "generation {generation}: front {} centroid {:?} moved {:?}",
            rec.front_size, rec.centroid, rec.movement
        );
        trace.push(rec);
        if converged_at.is_none() {
            converged_at = convergence_generation(&trace, cfg.convergence_window, cfg.convergence_tol);
            if converged_at.is_some() && cfg.stop_on_convergence {
                break;
            }
        }
    }

    let mut profiles: Vec<StrategyProfile> = Vec::new();
    let mut payoffs = Vec::new();
    for ind in pop.iter().filter(|ind| ind.rank == 0) {
        if !profiles.contains(&ind.profile) {
            profiles.push(ind.profile.clone());
            payoffs.push(ind.payoffs.clone());
        }
    }
    let mut report =
        EquilibriumReport::new(model.game().clone(), Some(kind.clone()), Source::Evolve, profiles, payoffs)?;
    report.trace = trace;
    report.seed = Some(cfg.seed);
    report.config = Some(cfg.clone());
    report.converged_at = converged_at;
    Ok(report)
}

/// Ranks `pool` and keeps the best `size` members by (rank, crowding).
fn survivors<G: PayoffModel + ?Sized>(
    model: &G,
    kind: &DominanceKind,
    cfg: &DetectionConfig,
    mut pool: Vec<Individual>,
    size: usize,
) -> Result<Vec<Individual>> {
    let fronts = nondominated_sort_with_tolerance(model, kind, &pool, cfg.dominance_tolerance)?;
    let mut chosen = Vec::with_capacity(size);
    for (rank, front) in fronts.iter().enumerate() {
        let payoffs: Vec<&[f64]> = front.iter().map(|&i| &pool[i].payoffs[..]).collect();
        let crowding = sort::crowding_from_payoffs(&payoffs);
        for (&i, d) in front.iter().zip(crowding) {
            pool[i].rank = rank;
            pool[i].crowding = d;
        }
        if chosen.len() + front.len() <= size {
            chosen.extend_from_slice(front);
        } else {
            let mut rest = front.clone();
            rest.sort_by(|&a, &b| pool[b].crowding.total_cmp(&pool[a].crowding).then(a.cmp(&b)));
            chosen.extend_from_slice(&rest[..size - chosen.len()]);
        }
        if chosen.len() == size {
            break;
        }
    }
    chosen.sort_unstable();
    let mut keep = vec![false; pool.len()];
    for &i in &chosen {
        keep[i] = true;
    }
    Ok(pool.into_iter().zip(keep).filter_map(|(ind, k)| k.then_some(ind)).collect())
}

fn tournament<R: Rng + ?Sized>(pop: &[Individual], rng: &mut R) -> usize {
    let a = rng.random_range(0..pop.len());
    let b = rng.random_range(0..pop.len());
    if sort::crowded_compare(&pop[b], &pop[a]).is_lt() {
        b
    } else {
        a
    }
}

fn record(generation: usize, pop: &[Individual], previous: Option<&[f64]>) -> GenerationRecord {
    let front: Vec<&Individual> = pop.iter().filter(|ind| ind.rank == 0).collect();
    let mean = |values: &dyn Fn(&Individual) -> &[f64]| -> Vec<f64> {
        let dim = values(front[0]).len();
        let mut acc = vec![0.0; dim];
        for ind in &front {
            for (a, v) in acc.iter_mut().zip(values(ind)) {
                *a += v;
            }
        }
        acc.iter().map(|a| a / front.len() as f64).collect()
    };
    let centroid = mean(&|ind| &ind.profile[..]);
    let centroid_payoffs = mean(&|ind| &ind.payoffs[..]);
    let movement = previous.map(|p| StrategyProfile::distance(&StrategyProfile(centroid.clone()), p));
    GenerationRecord { generation, front_size: front.len(), centroid, centroid_payoffs, movement }
}
