//! Stackelberg leader-follower access: the bilevel search (follower always
//! best-responds) recovers the leader optimum, the simultaneous search the
//! Cournot point.
//!
//! cargo run --release --example stackelberg_bilevel

use spectrum_games::{
    evolve, follower_best_response, DetectionConfig, DominanceKind, GameSpec, RationalityProfile, Result,
    StackelbergMode,
};

fn main() -> Result<()> {
    let game = GameSpec::stackelberg(10.0, 1.0)?;
    println!("follower best response b2(c1):");
    for c1 in [0.0, 2.0, 4.5, 6.0, 9.0] {
        println!("  b2({c1}) = {}", follower_best_response(&game, c1)?);
    }

    let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
    for mode in [StackelbergMode::BilevelFollowerBR, StackelbergMode::Simultaneous] {
        let cfg = DetectionConfig { stackelberg_mode: mode, ..DetectionConfig::default() }.with_seed(11);
        let report = evolve(&game, &nash, &cfg)?;
        let (c, u) = report.centroid();
        println!("{mode:?}: centroid ({:.4}, {:.4}), payoffs ({:.4}, {:.4})", c[0], c[1], u[0], u[1]);
    }
    println!("closed form: {}", game.closed_form()?);
    Ok(())
}
