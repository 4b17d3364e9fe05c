//! Brute-force lattice detection of Nash, Pareto and joint Nash-Pareto equilibria.
//!
//! Everything here enumerates a finite lattice of profiles and checks the
//! defining property directly, independently of the evolutionary detector.

use log::warn;

use crate::equilibria::{
    check_rationality, efficiency_count, pareto_dominates_payoffs, DominanceKind, RationalityProfile,
};
use crate::error::{Error, Result};
use crate::game::{Bounds, GameSpec, PayoffModel, PayoffVector, StrategyProfile};
use crate::report::{EquilibriumReport, Source};

/// Lattices above this size trigger a warning in the Nash oracle.
pub const NASH_WARN_POINTS: usize = 10_000_000;
/// Hard limit for the Nash oracle.
pub const NASH_MAX_POINTS: usize = 100_000_000;
/// Warning threshold for the pairwise (Pareto, NP) oracles.
pub const PAIRWISE_WARN_POINTS: usize = 10_000;
/// Hard limit for the pairwise oracles.
pub const PAIRWISE_MAX_POINTS: usize = 100_000;

/// Default oracle step for two-player games.
pub const DEFAULT_STEP: f64 = 0.25;

/// Endpoint-inclusive lattice over per-player intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    step: f64,
    bounds: Vec<Bounds>,
}

impl Grid {
    pub fn new(step: f64, bounds: Vec<Bounds>) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid(format!("grid step must be positive, got {step}")));
        }
        if bounds.is_empty() {
            return Err(Error::invalid("grid needs at least one axis"));
        }
        Ok(Self { step, bounds })
    }

    /// Lattice over the game's own strategy bounds.
    pub fn for_game(spec: &GameSpec, step: f64) -> Result<Self> {
        Self::new(step, spec.bounds().to_vec())
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    /// Values along one axis: `lo, lo + step, ...`, always ending at `hi`.
    pub fn axis(&self, player: usize) -> Vec<f64> {
        let b = self.bounds[player];
        let count = ((b.width() / self.step) + 1e-9).floor() as usize;
        let mut values: Vec<f64> = (0..=count).map(|k| b.lo + k as f64 * self.step).collect();
        let last = *values.last().unwrap_or(&b.lo);
        if b.hi - last > 1e-9 * self.step {
            values.push(b.hi);
        } else if let Some(v) = values.last_mut() {
            *v = v.min(b.hi);
        }
        values
    }

    pub fn len(&self) -> usize {
        (0..self.bounds.len())
            .map(|i| self.axis(i).len())
            .try_fold(1usize, |acc, k| acc.checked_mul(k))
            .unwrap_or(usize::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All lattice profiles; the first player's index varies slowest.
    pub fn profiles(&self) -> Vec<StrategyProfile> {
        let axes: Vec<Vec<f64>> = (0..self.bounds.len()).map(|i| self.axis(i)).collect();
        let mut out = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; axes.len()];
        loop {
            out.push(StrategyProfile(idx.iter().zip(&axes).map(|(&k, a)| a[k]).collect()));
            let mut d = axes.len();
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < axes[d].len() {
                    break;
                }
                idx[d] = 0;
            }
        }
    }
}

fn check_size(points: usize, warn_at: usize, limit: usize, what: &str) -> Result<()> {
    if points > limit {
        return Err(Error::ResourceLimit { points, limit });
    }
    if points > warn_at {
        warn!("{what} oracle over {points} lattice profiles; this may be slow");
    }
    Ok(())
}

fn check_grid(spec: &GameSpec, grid: &Grid) -> Result<()> {
    if grid.bounds.len() != spec.n() {
        return Err(Error::invalid(format!("grid has {} axes, game has {} players", grid.bounds.len(), spec.n())));
    }
    Ok(())
}

/// Lattice profiles where no player gains more than `eps` by any lattice deviation.
pub fn brute_force_nash(spec: &GameSpec, grid: &Grid, eps: f64) -> Result<Vec<StrategyProfile>> {
    check_grid(spec, grid)?;
    check_size(grid.len(), NASH_WARN_POINTS, NASH_MAX_POINTS, "nash")?;
    let axes: Vec<Vec<f64>> = (0..spec.n()).map(|i| grid.axis(i)).collect();
    let mut out = Vec::new();
    'points: for profile in grid.profiles() {
        let mut dev = profile.0.clone();
        for (i, axis) in axes.iter().enumerate() {
            let base = spec.payoff(&profile, i)?;
            for &alt in axis {
                dev[i] = alt;
                if spec.payoff(&dev, i)? > base + eps {
                    continue 'points;
                }
            }
            dev[i] = profile[i];
        }
        out.push(profile);
    }
    Ok(out)
}

fn lattice_payoffs(spec: &GameSpec, profiles: &[StrategyProfile]) -> Result<Vec<PayoffVector>> {
    profiles.iter().map(|p| spec.payoffs(p)).collect()
}

/// Pareto-non-dominated lattice profiles.
pub fn brute_force_pareto(spec: &GameSpec, grid: &Grid) -> Result<Vec<StrategyProfile>> {
    check_grid(spec, grid)?;
    check_size(grid.len(), PAIRWISE_WARN_POINTS, PAIRWISE_MAX_POINTS, "pareto")?;
    let profiles = grid.profiles();
    let payoffs = lattice_payoffs(spec, &profiles)?;
    Ok(profiles
        .iter()
        .enumerate()
        .filter(|(k, _)| !payoffs.iter().any(|u| pareto_dominates_payoffs(u, &payoffs[*k], 0.0)))
        .map(|(_, p)| p.clone())
        .collect())
}

/// Lattice profiles that no other lattice profile dominates under the joint relation.
pub fn brute_force_np(spec: &GameSpec, r: &RationalityProfile, grid: &Grid) -> Result<Vec<StrategyProfile>> {
    check_grid(spec, grid)?;
    check_rationality(spec, r)?;
    check_size(grid.len(), PAIRWISE_WARN_POINTS, PAIRWISE_MAX_POINTS, "joint nash-pareto")?;
    let profiles = grid.profiles();
    let payoffs = lattice_payoffs(spec, &profiles)?;
    let mut out = Vec::new();
    'points: for (k, x) in profiles.iter().enumerate() {
        for (j, y) in profiles.iter().enumerate() {
            if j == k {
                continue;
            }
            let forward = efficiency_count(spec, r, y, &payoffs[j], x, &payoffs[k], 0.0)?;
            let backward = efficiency_count(spec, r, x, &payoffs[k], y, &payoffs[j], 0.0)?;
            if forward < backward {
                continue 'points;
            }
        }
        out.push(x.clone());
    }
    Ok(out)
}

/// Runs the oracle matching `kind` and wraps the result as a report.
pub fn oracle_report(spec: &GameSpec, kind: &DominanceKind, grid: &Grid, eps: f64) -> Result<EquilibriumReport> {
    let profiles = match kind {
        DominanceKind::ParetoDominance => brute_force_pareto(spec, grid)?,
        DominanceKind::JointNashPareto(r) if r.pareto_players().is_empty() => brute_force_nash(spec, grid, eps)?,
        DominanceKind::JointNashPareto(r) => brute_force_np(spec, r, grid)?,
    };
    EquilibriumReport::from_profiles(spec, Some(kind.clone()), Source::Oracle, profiles)
}
