//! Analytic equilibria of the three access games at W = 10, K = 1.
//!
//! cargo run --example closed_forms

use spectrum_games::{GameSpec, PayoffModel, Result};

fn main() -> Result<()> {
    let games = [GameSpec::cournot(2, 10.0, 1.0)?, GameSpec::stackelberg(10.0, 1.0)?, GameSpec::bertrand(10.0, 1.0)?];
    for game in &games {
        let eq = game.closed_form()?;
        let u = game.payoffs(&eq)?;
        println!("{:<12} {:<8} equilibrium {eq:<12} payoffs {u}", game.kind(), game.kind().strategy_name());
    }

    println!("\nCournot Nash as the number of radios grows (W = 10, K = 1):");
    for n in 1..=5 {
        let game = GameSpec::cournot(n, 10.0, 1.0)?;
        let eq = game.closed_form()?;
        let u = game.payoffs(&eq)?;
        println!("  n = {n}: c_i = {:.4}, u_i = {:.4}, total channels {:.4}", eq[0], u[0], eq.iter().sum::<f64>());
    }
    Ok(())
}
