//! Joint Nash-Pareto equilibria: one radio Nash-biased, the other
//! Pareto-biased, and the mirrored PN assignment.
//!
//! cargo run --release --example joint_nash_pareto

use spectrum_games::{
    evolve, relative_efficiency, DetectionConfig, DominanceKind, GameSpec, RationalityProfile, Result, StrategyProfile,
};

fn main() -> Result<()> {
    let game = GameSpec::cournot(2, 10.0, 1.0)?;
    let nn = RationalityProfile::all_nash(2);
    let (ne, other) = (StrategyProfile::from([3.0, 3.0]), StrategyProfile::from([4.0, 4.0]));
    println!("E((3,3), (4,4)) = {}", relative_efficiency(&game, &nn, &ne, &other)?);
    println!("E((4,4), (3,3)) = {}", relative_efficiency(&game, &nn, &other, &ne)?);

    let cfg = DetectionConfig::default().with_seed(5);
    for label in ["NP", "PN"] {
        let r: RationalityProfile = label.parse()?;
        let report = evolve(&game, &DominanceKind::JointNashPareto(r), &cfg)?;
        let (c, u) = report.centroid();
        let nearest = report.profiles.iter().map(|p| p.distance(&[3.0, 3.0])).fold(f64::INFINITY, f64::min);
        println!(
            "{label}: {} profiles, centroid ({:.3}, {:.3}), payoffs ({:.3}, {:.3}), closest to Nash {nearest:.3}",
            report.len(),
            c[0],
            c[1],
            u[0],
            u[1]
        );
    }
    Ok(())
}
