//! Pareto front of the Cournot game: the detector's front against the
//! aggregate-optimal line c1 + c2 = (W - K) / 2 and the lattice oracle.
//!
//! cargo run --release --example pareto_front

use spectrum_games::{brute_force_pareto, evolve, DetectionConfig, DominanceKind, GameSpec, Grid, PayoffModel, Result};

fn main() -> Result<()> {
    let game = GameSpec::cournot(2, 10.0, 1.0)?;
    let report = evolve(&game, &DominanceKind::ParetoDominance, &DetectionConfig::default().with_seed(1))?;

    let mut rows: Vec<_> = report.profiles.iter().zip(&report.payoffs).collect();
    rows.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
    println!("evolved front: {} profiles", rows.len());
    for (p, u) in rows.iter().step_by(10) {
        println!(
            "  c = ({:.3}, {:.3})  c1 + c2 = {:.3}  u = ({:.3}, {:.3})  sum {:.3}",
            p[0],
            p[1],
            p[0] + p[1],
            u[0],
            u[1],
            u.sum()
        );
    }
    let worst = rows.iter().map(|(p, _)| (p[0] + p[1] - 4.5).abs()).fold(0.0, f64::max);
    let min_sum = rows.iter().map(|(_, u)| u.sum()).fold(f64::INFINITY, f64::min);
    println!("largest |c1 + c2 - 4.5| = {worst:.3}, smallest payoff sum = {min_sum:.3} (Nash total is 18)");

    let lattice = brute_force_pareto(&game, &Grid::for_game(&game, 0.25)?)?;
    let on_line = lattice.iter().filter(|p| p[0] + p[1] == 4.5).count();
    let off_line = lattice.iter().map(|p| (p[0] + p[1] - 4.5).abs()).fold(0.0, f64::max);
    let mut lowest = f64::INFINITY;
    for p in &lattice {
        lowest = lowest.min(game.payoffs(p)?.sum());
    }
    // Off-line lattice points survive when no lattice point sits in their narrow dominating cone.
    println!(
        "\nlattice oracle (step 0.25): {} Pareto points, {on_line} on the line, largest offset {off_line}, smallest payoff sum {lowest}",
        lattice.len()
    );
    Ok(())
}
