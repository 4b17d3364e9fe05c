//! Cross-checks the closed forms and the detector against exhaustive lattice
//! enumeration at several grid steps.
//!
//! cargo run --release --example oracle_cross_check

use spectrum_games::oracle::oracle_report;
use spectrum_games::{
    brute_force_nash, evolve, DetectionConfig, DominanceKind, GameSpec, Grid, RationalityProfile, Result,
};

fn main() -> Result<()> {
    let game = GameSpec::cournot(2, 10.0, 1.0)?;
    let ne = game.closed_form()?;
    for step in [1.0, 0.5, 0.25, 0.125] {
        let grid = Grid::for_game(&game, step)?;
        let out = brute_force_nash(&game, &grid, 1e-9)?;
        let has_ne = out.contains(&ne);
        println!(
            "step {step:<6} {:>6} lattice points, {:>2} Nash points, contains {ne}: {has_ne}",
            grid.len(),
            out.len()
        );
    }

    let nash = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
    let step = 0.25;
    let oracle = oracle_report(&game, &nash, &Grid::for_game(&game, step)?, 1e-9)?;
    let detected = evolve(&game, &nash, &DetectionConfig::default().with_seed(2))?;
    for p in &detected.profiles {
        let cell = oracle
            .profiles
            .iter()
            .filter(|o| p.iter().zip(o.iter()).all(|(a, b)| (a - b).abs() <= step))
            .min_by(|a, b| p.distance(a).total_cmp(&p.distance(b)));
        match cell {
            Some(o) => println!("evolved {p} is within one step of oracle point {o}"),
            None => println!("evolved {p} has no oracle point within one step"),
        }
    }

    let np: RationalityProfile = "NP".parse()?;
    let pn: RationalityProfile = "PN".parse()?;
    let grid = Grid::for_game(&game, 0.5)?;
    let a = spectrum_games::brute_force_np(&game, &np, &grid)?;
    let b = spectrum_games::brute_force_np(&game, &pn, &grid)?;
    let mirrored = a.iter().all(|p| b.contains(&p.swapped())) && a.len() == b.len();
    println!("NP lattice front ({} points) mirrors PN: {mirrored}", a.len());
    Ok(())
}
