//! Dominance relations over strategy profiles.
//!
//! Every relation here reads "left argument dominates right". Pareto
//! dominance is the classical componentwise comparison of payoffs. The joint
//! Nash-Pareto relation compares two profiles through a relative-efficiency
//! count `E(y, x)`: the number of Nash-biased players who would weakly gain by
//! unilaterally switching from `y` to their strategy in `x`, plus the number of
//! Pareto-biased players strictly better off in `x` than in `y`. A profile `y`
//! dominates `x` when `E(y, x) < E(x, y)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{PayoffModel, StrategyProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rationality {
    Nash,
    Pareto,
}

/// Per-player rationality labels, written as a string over `{N, P}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalityProfile(Vec<Rationality>);

impl RationalityProfile {
    pub fn new(labels: Vec<Rationality>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid("empty rationality profile"));
        }
        Ok(Self(labels))
    }

    pub fn all_nash(n: usize) -> Self {
        Self(vec![Rationality::Nash; n])
    }

    pub fn all_pareto(n: usize) -> Self {
        Self(vec![Rationality::Pareto; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, i: usize) -> Rationality {
        self.0[i]
    }

    pub fn is_nash(&self, i: usize) -> bool {
        self.0[i] == Rationality::Nash
    }

    /// Indices of Nash-biased players.
    pub fn nash_players(&self) -> Vec<usize> {
        self.indices(Rationality::Nash)
    }

    /// Indices of Pareto-biased players.
    pub fn pareto_players(&self) -> Vec<usize> {
        self.indices(Rationality::Pareto)
    }

    fn indices(&self, r: Rationality) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, l)| **l == r).map(|(i, _)| i).collect()
    }

    pub fn swapped(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for RationalityProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'N' => Ok(Rationality::Nash),
                'P' => Ok(Rationality::Pareto),
                other => Err(Error::Config(format!("rationality `{s}`: expected only N or P, found `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels).map_err(|_| Error::Config("empty rationality string".into()))
    }
}

impl fmt::Display for RationalityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Rationality::Nash => "N",
                Rationality::Pareto => "P",
            })?;
        }
        Ok(())
    }
}

/// Which generative relation ranks profiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DominanceKind {
    ParetoDominance,
    JointNashPareto(RationalityProfile),
}

impl DominanceKind {
    /// Pure Pareto labels map to classical Pareto dominance, anything else to the E relation.
    pub fn from_rationality(r: RationalityProfile) -> Self {
        if r.nash_players().is_empty() {
            DominanceKind::ParetoDominance
        } else {
            DominanceKind::JointNashPareto(r)
        }
    }

    pub fn label(&self) -> String {
        match self {
            DominanceKind::ParetoDominance => "pareto".to_owned(),
            DominanceKind::JointNashPareto(r) => r.to_string(),
        }
    }
}

/// Payoff of player `i` at `base` after it alone switches to `replacement`.
pub fn unilateral_deviation_payoff<G: PayoffModel + ?Sized>(
    game: &G,
    base: &StrategyProfile,
    i: usize,
    replacement: f64,
) -> Result<f64> {
    if i >= game.num_variables() {
        return Err(Error::invalid(format!("player index {i} out of range")));
    }
    let b = game.variable_bounds(i);
    if !b.contains(replacement) {
        return Err(Error::invalid(format!("replacement {replacement} outside {b}")));
    }
    game.payoff(&base.with_component(i, replacement), game.owner(i))
}

/// Classical Pareto dominance: `x` is nowhere worse and somewhere strictly better than `y`.
pub fn pareto_dominates<G: PayoffModel + ?Sized>(game: &G, x: &StrategyProfile, y: &StrategyProfile) -> Result<bool> {
    let ux = game.payoffs(x)?;
    let uy = game.payoffs(y)?;
    Ok(pareto_dominates_payoffs(&ux, &uy, 0.0))
}

/// Pareto dominance on precomputed payoffs; `eps` absorbs payoff noise.
pub fn pareto_dominates_payoffs(ux: &[f64], uy: &[f64], eps: f64) -> bool {
    let mut strictly = false;
    for (a, b) in ux.iter().zip(uy) {
        if *a < *b - eps {
            return false;
        }
        if *a > *b + eps {
            strictly = true;
        }
    }
    strictly
}

/// `E(y, x)`: how many players would rather be at `x` than at `y`.
pub fn relative_efficiency<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &StrategyProfile,
    x: &StrategyProfile,
) -> Result<usize> {
    relative_efficiency_with_tolerance(game, r, y, x, 0.0)
}

pub fn relative_efficiency_with_tolerance<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &StrategyProfile,
    x: &StrategyProfile,
    eps: f64,
) -> Result<usize> {
    check_rationality(game, r)?;
    let uy = game.payoffs(y)?;
    let ux = game.payoffs(x)?;
    efficiency_count(game, r, y, &uy, x, &ux, eps)
}

/// `E(y, x)` with the payoffs at both profiles already known.
pub(crate) fn efficiency_count<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &[f64],
    uy: &[f64],
    x: &[f64],
    ux: &[f64],
    eps: f64,
) -> Result<usize> {
    let mut scratch = Vec::with_capacity(y.len());
    efficiency_count_in(game, r, y, uy, x, ux, eps, &mut scratch)
}

#[allow(clippy::too_many_arguments)]
fn efficiency_count_in<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &[f64],
    uy: &[f64],
    x: &[f64],
    ux: &[f64],
    eps: f64,
    deviation: &mut Vec<f64>,
) -> Result<usize> {
    deviation.clear();
    deviation.extend_from_slice(y);
    let mut count = 0;
    for var in 0..game.num_variables() {
        let player = game.owner(var);
        if !r.is_nash(player) || x[var] == y[var] {
            continue;
        }
        deviation[var] = x[var];
        let gain = game.payoff(deviation, player)?;
        deviation[var] = y[var];
        if gain >= uy[player] - eps {
            count += 1;
        }
    }
    if x != y {
        count += (0..game.num_players()).filter(|&j| !r.is_nash(j) && uy[j] < ux[j] - eps).count();
    }
    Ok(count)
}

/// Joint Nash-Pareto generative relation: `y` dominates `x` iff `E(y, x) < E(x, y)`.
pub fn np_dominates<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &StrategyProfile,
    x: &StrategyProfile,
) -> Result<bool> {
    np_dominates_with_tolerance(game, r, y, x, 0.0)
}

pub fn np_dominates_with_tolerance<G: PayoffModel + ?Sized>(
    game: &G,
    r: &RationalityProfile,
    y: &StrategyProfile,
    x: &StrategyProfile,
    eps: f64,
) -> Result<bool> {
    check_rationality(game, r)?;
    let uy = game.payoffs(y)?;
    let ux = game.payoffs(x)?;
    Ok(efficiency_count(game, r, y, &uy, x, &ux, eps)? < efficiency_count(game, r, x, &ux, y, &uy, eps)?)
}

/// Outcome of comparing two profiles under one relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Comparison {
    Dominates,
    DominatedBy,
    Neither,
}

/// Compares `a` with `b` in both directions at once.
#[allow(clippy::too_many_arguments)]
pub(crate) fn compare_cached<G: PayoffModel + ?Sized>(
    game: &G,
    kind: &DominanceKind,
    eps: f64,
    a: &[f64],
    ua: &[f64],
    b: &[f64],
    ub: &[f64],
    scratch: &mut Vec<f64>,
) -> Result<Comparison> {
    let (forward, backward) = match kind {
        DominanceKind::ParetoDominance => {
            (pareto_dominates_payoffs(ua, ub, eps), pareto_dominates_payoffs(ub, ua, eps))
        }
        DominanceKind::JointNashPareto(r) => {
            let eab = efficiency_count_in(game, r, a, ua, b, ub, eps, scratch)?;
            let eba = efficiency_count_in(game, r, b, ub, a, ua, eps, scratch)?;
            (eab < eba, eba < eab)
        }
    };
    Ok(match (forward, backward) {
        (true, _) => Comparison::Dominates,
        (_, true) => Comparison::DominatedBy,
        _ => Comparison::Neither,
    })
}

/// Whether `a` dominates `b` under `kind`, given both payoff vectors.
pub(crate) fn dominates_cached<G: PayoffModel + ?Sized>(
    game: &G,
    kind: &DominanceKind,
    eps: f64,
    a: &[f64],
    ua: &[f64],
    b: &[f64],
    ub: &[f64],
) -> Result<bool> {
    let mut scratch = Vec::new();
    Ok(compare_cached(game, kind, eps, a, ua, b, ub, &mut scratch)? == Comparison::Dominates)
}

/// Whether `a` dominates `b` under `kind`.
pub fn dominates<G: PayoffModel + ?Sized>(
    game: &G,
    kind: &DominanceKind,
    a: &StrategyProfile,
    b: &StrategyProfile,
) -> Result<bool> {
    if let DominanceKind::JointNashPareto(r) = kind {
        check_rationality(game, r)?;
    }
    let ua = game.payoffs(a)?;
    let ub = game.payoffs(b)?;
    dominates_cached(game, kind, 0.0, a, &ua, b, &ub)
}

/// Members of `set` not dominated by any other member, in input order.
pub fn nondominated_filter<G: PayoffModel + ?Sized>(
    game: &G,
    kind: &DominanceKind,
    set: &[StrategyProfile],
) -> Result<Vec<StrategyProfile>> {
    if set.is_empty() {
        return Err(Error::invalid("cannot filter an empty set of profiles"));
    }
    if let DominanceKind::JointNashPareto(r) = kind {
        check_rationality(game, r)?;
    }
    let payoffs = set.iter().map(|p| game.payoffs(p)).collect::<Result<Vec<_>>>()?;
    let mut kept = Vec::new();
    'outer: for (k, x) in set.iter().enumerate() {
        for (j, y) in set.iter().enumerate() {
            if j != k && dominates_cached(game, kind, 0.0, y, &payoffs[j], x, &payoffs[k])? {
                continue 'outer;
            }
        }
        kept.push(x.clone());
    }
    Ok(kept)
}

pub(crate) fn check_rationality<G: PayoffModel + ?Sized>(game: &G, r: &RationalityProfile) -> Result<()> {
    if r.len() != game.num_players() {
        return Err(Error::invalid(format!(
            "rationality profile has {} labels, game has {} players",
            r.len(),
            game.num_players()
        )));
    }
    Ok(())
}
