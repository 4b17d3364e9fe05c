//! Game abstraction and the three oligopoly reformulations of whitespace access.
//!
//! Players are radios sharing a whitespace of `W` channels, each paying `K`
//! per accessed channel. In the quantity games (Cournot, Stackelberg) a
//! strategy is a number of simultaneously accessed channels; in Bertrand it
//! is a target number of non-interfered symbols, playing the role of a price.
//!
//! Player indices are zero-based throughout the crate: player `0` is the
//! leader / primary user in Stackelberg.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Closed interval of admissible strategy values for one player.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
}

impl Bounds {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::invalid(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameKind {
    Cournot,
    Stackelberg,
    Bertrand,
}

impl GameKind {
    pub fn name(self) -> &'static str {
        match self {
            GameKind::Cournot => "cournot",
            GameKind::Stackelberg => "stackelberg",
            GameKind::Bertrand => "bertrand",
        }
    }

    /// Axis label for a player's strategy.
    pub fn strategy_name(self) -> &'static str {
        match self {
            GameKind::Bertrand => "target symbols p",
            _ => "channels c",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cournot" => Ok(GameKind::Cournot),
            "stackelberg" => Ok(GameKind::Stackelberg),
            "bertrand" => Ok(GameKind::Bertrand),
            other => Err(Error::Config(format!("unknown game kind `{other}`"))),
        }
    }
}

/// One point in joint strategy space.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile(pub Vec<f64>);

impl StrategyProfile {
    pub fn new(values: impl Into<Vec<f64>>) -> Self {
        Self(values.into())
    }

    /// The profile with component `i` replaced by `value`.
    pub fn with_component(&self, i: usize, value: f64) -> Self {
        let mut v = self.0.clone();
        v[i] = value;
        Self(v)
    }

    /// Components in reverse order (the mirror image for two players).
    pub fn swapped(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn distance(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
    }
}

impl Deref for StrategyProfile {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for StrategyProfile {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[f64; N]> for StrategyProfile {
    fn from(v: [f64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Payoffs of all players at one profile, indexed like the profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffVector(pub Vec<f64>);

impl PayoffVector {
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl Deref for PayoffVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    f.write_str("(")?;
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

/// Anything the dominance relations and the evolutionary detector can search.
///
/// A model exposes a vector of decision variables, each owned by one player,
/// and evaluates every player's payoff on that vector. For an ordinary game
/// variable `i` belongs to player `i`; reduced views (such as the Stackelberg
/// leader view) may have players that own no variable.
pub trait PayoffModel {
    fn num_players(&self) -> usize;

    fn num_variables(&self) -> usize;

    fn variable_bounds(&self, var: usize) -> Bounds;

    /// Player who controls decision variable `var`.
    fn owner(&self, var: usize) -> usize;

    fn payoff(&self, vars: &[f64], player: usize) -> Result<f64>;

    fn payoffs(&self, vars: &[f64]) -> Result<PayoffVector> {
        (0..self.num_players()).map(|i| self.payoff(vars, i)).collect::<Result<Vec<_>>>().map(PayoffVector)
    }

    /// Full strategy profile of the underlying game for a decision vector.
    fn expand(&self, vars: &[f64]) -> StrategyProfile {
        StrategyProfile(vars.to_vec())
    }

    /// The game whose profiles `expand` produces.
    fn game(&self) -> &GameSpec;
}

/// A spectrum-access game: player count, whitespace, unit cost, model and
/// per-player strategy bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    n: usize,
    whitespace: f64,
    cost: f64,
    kind: GameKind,
    bounds: Vec<Bounds>,
    tie_tolerance: f64,
}

impl GameSpec {
    /// Builds a game with the default bounds `[0, W]` for every player.
    pub fn new(kind: GameKind, n: usize, whitespace: f64, cost: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a game needs at least one player"));
        }
        if !(whitespace.is_finite() && whitespace > 0.0) {
            return Err(Error::invalid(format!("W must be positive, got {whitespace}")));
        }
        if !(cost.is_finite() && cost >= 0.0) {
            return Err(Error::invalid(format!("K must be nonnegative, got {cost}")));
        }
        if matches!(kind, GameKind::Stackelberg | GameKind::Bertrand) && n != 2 {
            return Err(Error::invalid(format!("{kind} is defined for exactly 2 players, got {n}")));
        }
        Ok(Self { n, whitespace, cost, kind, bounds: vec![Bounds { lo: 0.0, hi: whitespace }; n], tie_tolerance: 0.0 })
    }

    pub fn cournot(n: usize, whitespace: f64, cost: f64) -> Result<Self> {
        Self::new(GameKind::Cournot, n, whitespace, cost)
    }

    pub fn stackelberg(whitespace: f64, cost: f64) -> Result<Self> {
        Self::new(GameKind::Stackelberg, 2, whitespace, cost)
    }

    pub fn bertrand(whitespace: f64, cost: f64) -> Result<Self> {
        Self::new(GameKind::Bertrand, 2, whitespace, cost)
    }

    pub fn with_bounds(mut self, bounds: Vec<Bounds>) -> Result<Self> {
        if bounds.len() != self.n {
            return Err(Error::invalid(format!("expected {} strategy intervals, got {}", self.n, bounds.len())));
        }
        for b in &bounds {
            Bounds::new(b.lo, b.hi)?;
        }
        self.bounds = bounds;
        Ok(self)
    }

    /// Prices closer than `tol` count as tied in Bertrand. Zero means exact equality.
    pub fn with_tie_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::invalid(format!("tie tolerance must be >= 0, got {tol}")));
        }
        self.tie_tolerance = tol;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn whitespace(&self) -> f64 {
        self.whitespace
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    /// Rejects profiles of the wrong length, non-finite or out-of-bounds entries.
    pub fn check_profile(&self, values: &[f64]) -> Result<()> {
        if values.len() != self.n {
            return Err(Error::invalid(format!("profile has {} entries, game has {} players", values.len(), self.n)));
        }
        for (i, (v, b)) in values.iter().zip(&self.bounds).enumerate() {
            if !v.is_finite() || !b.contains(*v) {
                return Err(Error::invalid(format!("strategy {v} of player {i} outside {b}")));
            }
        }
        Ok(())
    }

    fn check_player(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::invalid(format!("player index {i} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    fn expect_kind(&self, kind: GameKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::invalid(format!("expected a {kind} game, got {}", self.kind)));
        }
        Ok(())
    }

    /// Payoff of player `i`, dispatching on the game kind.
    pub fn payoff_of(&self, profile: &[f64], i: usize) -> Result<f64> {
        match self.kind {
            GameKind::Cournot => cournot_payoff(self, profile, i),
            GameKind::Stackelberg => stackelberg_payoff(self, profile, i),
            GameKind::Bertrand => bertrand_payoff(self, profile, i),
        }
    }

    /// The analytic equilibrium of the game.
    pub fn closed_form(&self) -> Result<StrategyProfile> {
        match self.kind {
            GameKind::Cournot => cournot_nash(self),
            GameKind::Stackelberg => stackelberg_equilibrium(self),
            GameKind::Bertrand => bertrand_nash(self),
        }
    }
}

impl PayoffModel for GameSpec {
    fn num_players(&self) -> usize {
        self.n
    }

    fn num_variables(&self) -> usize {
        self.n
    }

    fn variable_bounds(&self, var: usize) -> Bounds {
        self.bounds[var]
    }

    fn owner(&self, var: usize) -> usize {
        var
    }

    fn payoff(&self, vars: &[f64], player: usize) -> Result<f64> {
        self.payoff_of(vars, player)
    }

    fn game(&self) -> &GameSpec {
        self
    }
}

/// Linear inverse demand: non-interfered symbols per channel at aggregate occupation `c`.
pub fn demand(aggregate: f64, whitespace: f64) -> Result<f64> {
    if !whitespace.is_finite() || whitespace <= 0.0 {
        return Err(Error::invalid(format!("W must be positive, got {whitespace}")));
    }
    if !aggregate.is_finite() || aggregate < 0.0 {
        return Err(Error::invalid(format!("aggregate channels must be >= 0, got {aggregate}")));
    }
    Ok(if aggregate < whitespace { whitespace - aggregate } else { 0.0 })
}

fn quantity_payoff(spec: &GameSpec, profile: &[f64], i: usize) -> Result<f64> {
    spec.check_player(i)?;
    spec.check_profile(profile)?;
    let aggregate: f64 = profile.iter().sum();
    let ci = profile[i];
    Ok(demand(aggregate, spec.whitespace)? * ci - spec.cost * ci)
}

/// Goodput minus linear access cost, with the demand clamped at zero.
pub fn cournot_payoff(spec: &GameSpec, profile: &[f64], i: usize) -> Result<f64> {
    spec.expect_kind(GameKind::Cournot)?;
    quantity_payoff(spec, profile, i)
}

/// Same functional form as Cournot; the move order only matters for the equilibrium.
pub fn stackelberg_payoff(spec: &GameSpec, profile: &[f64], i: usize) -> Result<f64> {
    spec.expect_kind(GameKind::Stackelberg)?;
    quantity_payoff(spec, profile, i)
}

/// Three-case Bertrand payoff: the undercutter takes the market, a tie splits it.
pub fn bertrand_payoff(spec: &GameSpec, profile: &[f64], i: usize) -> Result<f64> {
    spec.expect_kind(GameKind::Bertrand)?;
    spec.check_player(i)?;
    spec.check_profile(profile)?;
    let own = profile[i];
    let rival = profile[1 - i];
    let undercut = (own - spec.cost) * (spec.whitespace - own);
    let tied = if spec.tie_tolerance == 0.0 { own == rival } else { (own - rival).abs() <= spec.tie_tolerance };
    Ok(if tied {
        0.5 * undercut
    } else if own < rival {
        undercut
    } else {
        0.0
    })
}

/// Symmetric Cournot equilibrium `(W - K) / (n + 1)` for every player.
pub fn cournot_nash(spec: &GameSpec) -> Result<StrategyProfile> {
    spec.expect_kind(GameKind::Cournot)?;
    let margin = spec.whitespace - spec.cost;
    if margin < 0.0 {
        return Err(Error::NoInteriorEquilibrium {
            whitespace: spec.whitespace,
            cost: spec.cost,
            boundary: StrategyProfile(vec![0.0; spec.n]),
        });
    }
    Ok(StrategyProfile(vec![margin / (spec.n as f64 + 1.0); spec.n]))
}

/// Follower's channel count maximizing `c2 (W - c1 - c2) - K c2`, clamped to its bounds.
pub fn follower_best_response(spec: &GameSpec, leader: f64) -> Result<f64> {
    spec.expect_kind(GameKind::Stackelberg)?;
    if !leader.is_finite() || leader < 0.0 {
        return Err(Error::invalid(format!("leader channels must be >= 0, got {leader}")));
    }
    let br = ((spec.whitespace - spec.cost - leader) / 2.0).max(0.0);
    Ok(spec.bounds[1].clamp(br))
}

/// Leader plays `(W - K) / 2`, follower answers with its best response `(W - K) / 4`.
pub fn stackelberg_equilibrium(spec: &GameSpec) -> Result<StrategyProfile> {
    spec.expect_kind(GameKind::Stackelberg)?;
    let margin = spec.whitespace - spec.cost;
    if margin < 0.0 {
        return Err(Error::NoInteriorEquilibrium {
            whitespace: spec.whitespace,
            cost: spec.cost,
            boundary: StrategyProfile(vec![0.0; 2]),
        });
    }
    let leader = margin / 2.0;
    Ok(StrategyProfile(vec![leader, follower_best_response(spec, leader)?]))
}

/// Both radios price at cost, earning nothing.
pub fn bertrand_nash(spec: &GameSpec) -> Result<StrategyProfile> {
    spec.expect_kind(GameKind::Bertrand)?;
    if spec.whitespace <= spec.cost {
        return Err(Error::DegenerateMarket { whitespace: spec.whitespace, cost: spec.cost });
    }
    Ok(StrategyProfile(vec![spec.cost; 2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
        let steps = ((hi - lo) / step).round() as usize;
        (0..=steps).map(move |k| lo + k as f64 * step)
    }

    /// Brute-force maximizer of a 1-D function over a 0.01 grid.
    fn grid_argmax(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
        grid(lo, hi, 0.01).fold((f64::NAN, f64::NEG_INFINITY), |(bx, bv), x| {
            let v = f(x);
            if v > bv {
                (x, v)
            } else {
                (bx, bv)
            }
        })
    }

    fn cournot2() -> GameSpec {
        GameSpec::cournot(2, 10.0, 1.0).unwrap()
    }

    #[test]
    fn demand_examples() {
        assert_eq!(demand(4.0, 10.0).unwrap(), 6.0);
        assert_eq!(demand(10.0, 10.0).unwrap(), 0.0);
        assert_eq!(demand(12.0, 10.0).unwrap(), 0.0);
        assert!(demand(-1.0, 10.0).is_err());
        assert!(demand(1.0, 0.0).is_err());
    }

    #[test]
    fn cournot_payoff_examples() {
        let g = cournot2();
        assert_eq!(cournot_payoff(&g, &[3.0, 3.0], 0).unwrap(), 9.0);
        for x in grid(0.0, 10.0, 0.5) {
            assert_eq!(cournot_payoff(&g, &[0.0, x], 0).unwrap(), 0.0);
        }
        // oracle: best single-radio quantity against an idle rival
        let (arg, best) = grid_argmax(0.0, 10.0, |c| cournot_payoff(&g, &[c, 0.0], 0).unwrap());
        assert!((arg - 4.5).abs() < 1e-9 && (best - 20.25).abs() < 1e-9);
        assert_eq!(cournot_payoff(&g, &[4.5, 0.0], 0).unwrap(), 20.25);
    }

    #[test]
    fn payoff_rejects_bad_input() {
        let g = cournot2();
        assert!(cournot_payoff(&g, &[11.0, 0.0], 0).is_err());
        assert!(cournot_payoff(&g, &[-0.1, 0.0], 0).is_err());
        assert!(cournot_payoff(&g, &[1.0], 0).is_err());
        assert!(cournot_payoff(&g, &[1.0, 1.0], 2).is_err());
        assert!(bertrand_payoff(&g, &[1.0, 1.0], 0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(GameSpec::cournot(0, 10.0, 1.0).is_err());
        assert!(GameSpec::cournot(2, 0.0, 1.0).is_err());
        assert!(GameSpec::cournot(2, 10.0, -1.0).is_err());
        assert!(GameSpec::new(GameKind::Stackelberg, 3, 10.0, 1.0).is_err());
        assert!(GameSpec::new(GameKind::Bertrand, 1, 10.0, 1.0).is_err());
        let g = cournot2();
        assert!(g.clone().with_bounds(vec![Bounds { lo: 2.0, hi: 1.0 }; 2]).is_err());
        assert!(g.with_bounds(vec![Bounds { lo: 0.0, hi: 1.0 }]).is_err());
    }

    #[test]
    fn cournot_nash_examples() {
        assert_eq!(cournot_nash(&cournot2()).unwrap().0, vec![3.0, 3.0]);
        let mono = GameSpec::cournot(1, 10.0, 1.0).unwrap();
        let (arg, _) = grid_argmax(0.0, 10.0, |c| cournot_payoff(&mono, &[c], 0).unwrap());
        assert!((arg - 4.5).abs() < 1e-9);
        assert_eq!(cournot_nash(&mono).unwrap().0, vec![4.5]);
        let flat = GameSpec::cournot(2, 10.0, 10.0).unwrap();
        assert_eq!(cournot_nash(&flat).unwrap().0, vec![0.0, 0.0]);
        match cournot_nash(&GameSpec::cournot(2, 5.0, 6.0).unwrap()) {
            Err(Error::NoInteriorEquilibrium { boundary, .. }) => assert_eq!(boundary.0, vec![0.0, 0.0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cournot_nash_is_grid_best_response_fixed_point() {
        for n in 1..=4 {
            let g = GameSpec::cournot(n, 10.0, 1.0).unwrap();
            let ne = cournot_nash(&g).unwrap();
            for i in 0..n {
                let base = cournot_payoff(&g, &ne, i).unwrap();
                for d in grid(0.0, 10.0, 0.01) {
                    let dev = cournot_payoff(&g, &ne.with_component(i, d), i).unwrap();
                    assert!(dev <= base + 1e-9, "n={n} player {i} gains at {d}");
                }
            }
        }
    }

    #[test]
    fn stackelberg_examples() {
        let g = GameSpec::stackelberg(10.0, 1.0).unwrap();
        assert_eq!(stackelberg_payoff(&g, &[4.5, 2.25], 0).unwrap(), 10.125);
        assert_eq!(stackelberg_payoff(&g, &[4.5, 2.25], 1).unwrap(), 5.0625);
        assert_eq!(stackelberg_payoff(&g, &[0.0, 0.0], 0).unwrap(), 0.0);
        assert_eq!(follower_best_response(&g, 4.5).unwrap(), 2.25);
        assert_eq!(follower_best_response(&g, 9.0).unwrap(), 0.0);
        assert_eq!(follower_best_response(&g, 0.0).unwrap(), 4.5);
        assert!(follower_best_response(&g, -1.0).is_err());
        assert_eq!(stackelberg_equilibrium(&g).unwrap().0, vec![4.5, 2.25]);
        let flat = GameSpec::stackelberg(2.0, 2.0).unwrap();
        assert_eq!(stackelberg_equilibrium(&flat).unwrap().0, vec![0.0, 0.0]);
        assert!(stackelberg_equilibrium(&GameSpec::stackelberg(2.0, 3.0).unwrap()).is_err());
    }

    #[test]
    fn follower_best_response_beats_grid() {
        let g = GameSpec::stackelberg(10.0, 1.0).unwrap();
        for c1 in 0..=9 {
            let c1 = c1 as f64;
            let br = follower_best_response(&g, c1).unwrap();
            let best = stackelberg_payoff(&g, &[c1, br], 1).unwrap();
            let (_, grid_best) = grid_argmax(0.0, 10.0, |c2| stackelberg_payoff(&g, &[c1, c2], 1).unwrap());
            assert!(best + 1e-9 >= grid_best, "c1={c1}");
        }
    }

    #[test]
    fn leader_optimum_by_grid() {
        let g = GameSpec::stackelberg(10.0, 1.0).unwrap();
        let (arg, val) = grid_argmax(0.0, 10.0, |c1| {
            let c2 = follower_best_response(&g, c1).unwrap();
            stackelberg_payoff(&g, &[c1, c2], 0).unwrap()
        });
        assert!((arg - 4.5).abs() < 1e-9);
        assert!((val - 10.125).abs() < 1e-9);
    }

    #[test]
    fn bertrand_examples() {
        let g = GameSpec::bertrand(10.0, 1.0).unwrap();
        assert_eq!(bertrand_payoff(&g, &[1.0, 1.0], 0).unwrap(), 0.0);
        assert_eq!(bertrand_payoff(&g, &[5.5, 7.0], 0).unwrap(), 20.25);
        assert_eq!(bertrand_payoff(&g, &[5.5, 7.0], 1).unwrap(), 0.0);
        let (arg, best) = grid_argmax(0.0, 10.0, |p| bertrand_payoff(&g, &[p, 10.0], 0).unwrap());
        assert!((arg - 5.5).abs() < 1e-9 && (best - 20.25).abs() < 1e-9);
        assert_eq!(bertrand_nash(&g).unwrap().0, vec![1.0, 1.0]);
        assert_eq!(bertrand_nash(&GameSpec::bertrand(10.0, 0.0).unwrap()).unwrap().0, vec![0.0, 0.0]);
        assert!(matches!(bertrand_nash(&GameSpec::bertrand(1.0, 1.0).unwrap()), Err(Error::DegenerateMarket { .. })));
    }

    #[test]
    fn bertrand_tie_tolerance() {
        let g = GameSpec::bertrand(10.0, 1.0).unwrap();
        assert_eq!(bertrand_payoff(&g, &[5.0, 5.0 + 1e-12], 1).unwrap(), 0.0);
        let loose = g.with_tie_tolerance(1e-9).unwrap();
        let tied = bertrand_payoff(&loose, &[5.0, 5.0 + 1e-12], 1).unwrap();
        assert!((tied - 0.5 * 4.0 * 5.0).abs() < 1e-9, "{tied}");
    }

    #[test]
    fn parse_kind() {
        assert_eq!("Cournot".parse::<GameKind>().unwrap(), GameKind::Cournot);
        assert!("hotelling".parse::<GameKind>().is_err());
    }
}
