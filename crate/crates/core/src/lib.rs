//! Equilibrium detection for oligopoly models of TV-whitespace spectrum access.
//!
//! Radios sharing a whitespace of `W` channels, each paying `K` per accessed
//! channel, are modelled as Cournot, Stackelberg or Bertrand competitors
//! ([`game`]). Nash, Pareto and joint Nash-Pareto equilibria are compared
//! through generative relations ([`equilibria`]) and detected either by an
//! NSGA-II style evolutionary search ([`evolve`]) or by exhaustive lattice
//! enumeration ([`oracle`]). Detected sets are exported as CSV and SVG
//! ([`report`]).
//!
//! ```
//! use spectrum_games::{evolve, DetectionConfig, DominanceKind, GameSpec, RationalityProfile};
//!
//! let game = GameSpec::cournot(2, 10.0, 1.0).unwrap();
//! let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
//! let report = evolve(&game, &nash, &DetectionConfig::default().with_seed(7)).unwrap();
//! let (centroid, _) = report.centroid();
//! assert!((centroid[0] - 3.0).abs() < 0.1);
//! ```

pub mod cli;
pub mod config;
pub mod equilibria;
pub mod error;
pub mod evolve;
pub mod game;
pub mod oracle;
pub mod report;

pub use equilibria::{
    nondominated_filter, np_dominates, pareto_dominates, relative_efficiency, unilateral_deviation_payoff,
    DominanceKind, Rationality, RationalityProfile,
};
pub use error::{Error, Result};
pub use evolve::{evolve, evolve_model, DetectionConfig, Individual, StackelbergMode};
pub use game::{
    bertrand_nash, bertrand_payoff, cournot_nash, cournot_payoff, demand, follower_best_response,
    stackelberg_equilibrium, stackelberg_payoff, Bounds, GameKind, GameSpec, PayoffModel, PayoffVector,
    StrategyProfile,
};
pub use oracle::{brute_force_nash, brute_force_np, brute_force_pareto, Grid};
pub use report::{export_csv, export_svg_scatter, Axes, EquilibriumReport, Source};
