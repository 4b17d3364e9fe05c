//! Detection cost and accuracy as the whitespace grows.
//!
//! cargo run --release --example scalability_sweep

use std::time::Instant;

use spectrum_games::{evolve, DetectionConfig, DominanceKind, GameSpec, RationalityProfile, Result};

fn main() -> Result<()> {
    let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
    println!("{:>6} {:>10} {:>10} {:>10} {:>9} {:>8}", "W", "target", "centroid", "rel.err", "settled", "ms");
    for w in [10.0, 25.0, 50.0, 100.0, 200.0, 400.0] {
        let game = GameSpec::cournot(2, w, 1.0)?;
        let target = game.closed_form()?[0];
        let cfg = DetectionConfig { max_generations: 50, ..DetectionConfig::default() }.with_seed(9);
        let start = Instant::now();
        let report = evolve(&game, &nash, &cfg)?;
        let ms = start.elapsed().as_millis();
        let (c, _) = report.centroid();
        let settled = report.converged_at.map_or_else(|| "-".to_owned(), |g| g.to_string());
        println!("{w:>6} {target:>10.3} {:>10.3} {:>10.2e} {settled:>9} {ms:>8}", c[0], (c[0] - target).abs() / target);
    }
    Ok(())
}
