//! Bertrand price competition: the (K, K) equilibrium, the lattice Nash set,
//! and what the evolutionary relation does with continuous prices.
//!
//! cargo run --release --example bertrand_pricing

use spectrum_games::{
    bertrand_nash, brute_force_nash, brute_force_np, evolve, DetectionConfig, DominanceKind, GameSpec, Grid,
    PayoffModel, RationalityProfile, Result,
};

fn main() -> Result<()> {
    let game = GameSpec::bertrand(10.0, 1.0)?;
    let ne = bertrand_nash(&game)?;
    println!("closed form {ne}, payoffs {}", game.payoffs(&ne)?);

    let grid = Grid::for_game(&game, 0.5)?;
    let nash = brute_force_nash(&game, &grid, 1e-9)?;
    println!("step-0.5 Nash lattice points ({}):", nash.len());
    for p in &nash {
        println!("  {p}  payoffs {}", game.payoffs(p)?);
    }
    // Under the weak deviation test a tie one step above cost beats (K, K).
    let nn = RationalityProfile::all_nash(2);
    println!(
        "step-0.5 all-Nash relation front: {:?}",
        brute_force_np(&game, &nn, &grid)?.iter().map(ToString::to_string).collect::<Vec<_>>()
    );

    let loose = game.clone().with_tie_tolerance(0.01)?;
    for (label, g) in [("exact ties", &game), ("tie tolerance 0.01", &loose)] {
        let report = evolve(g, &DominanceKind::JointNashPareto(nn.clone()), &DetectionConfig::default().with_seed(3))?;
        let (c, u) = report.centroid();
        println!(
            "evolved ({label}): {} profiles, centroid ({:.3}, {:.3}), payoffs ({:.3}, {:.3}), settled: {:?}",
            report.len(),
            c[0],
            c[1],
            u[0],
            u[1],
            report.converged_at
        );
    }
    Ok(())
}
