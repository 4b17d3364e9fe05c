//! Evolutionary detection of the Cournot Nash equilibrium with the all-Nash
//! generative relation, printing the per-generation convergence trace.
//!
//! cargo run --release --example cournot_nash_detection [seed]

use spectrum_games::{evolve, DetectionConfig, DominanceKind, GameSpec, RationalityProfile, Result};

fn main() -> Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let game = GameSpec::cournot(2, 10.0, 1.0)?;
    let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
    let cfg = DetectionConfig { max_generations: 40, ..DetectionConfig::default() }.with_seed(seed);
    let report = evolve(&game, &nash, &cfg)?;

    println!("gen  front  centroid              movement");
    for r in &report.trace {
        let moved = r.movement.map_or_else(|| "-".to_owned(), |m| format!("{m:.2e}"));
        println!("{:>3}  {:>5}  ({:.4}, {:.4})  {moved}", r.generation, r.front_size, r.centroid[0], r.centroid[1]);
    }
    let (c, u) = report.centroid();
    println!(
        "\nfront of {} profile(s), centroid ({:.4}, {:.4}), payoffs ({:.4}, {:.4})",
        report.len(),
        c[0],
        c[1],
        u[0],
        u[1]
    );
    match report.converged_at {
        Some(g) => println!("centroid settled at generation {g}"),
        None => println!("centroid still moving after {} generations", cfg.max_generations),
    }
    Ok(())
}
