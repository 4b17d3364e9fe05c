//! The comparison operators on their own: Pareto dominance, the relative
//! efficiency count E and the joint Nash-Pareto relation, plus filtering a
//! candidate set down to its non-dominated members.
//!
//! cargo run --example dominance_relations

use spectrum_games::{
    nondominated_filter, np_dominates, pareto_dominates, relative_efficiency, unilateral_deviation_payoff,
    DominanceKind, GameSpec, RationalityProfile, Result, StrategyProfile,
};

fn main() -> Result<()> {
    let game = GameSpec::cournot(2, 10.0, 1.0)?;
    let p = |a: f64, b: f64| StrategyProfile::from([a, b]);

    println!(
        "u1 after player 1 deviates from (3,3) to 4: {}",
        unilateral_deviation_payoff(&game, &p(3.0, 3.0), 0, 4.0)?
    );
    println!("(2.25,2.25) Pareto-dominates (2,2): {}", pareto_dominates(&game, &p(2.25, 2.25), &p(2.0, 2.0))?);
    println!("(3,3) Pareto-dominates (2.25,2.25): {}", pareto_dominates(&game, &p(3.0, 3.0), &p(2.25, 2.25))?);

    let candidates = [p(3.0, 3.0), p(4.0, 4.0), p(2.0, 2.0), p(2.25, 2.25), p(1.0, 3.5)];
    for label in ["NN", "NP", "PN", "PP"] {
        let r: RationalityProfile = label.parse()?;
        let y = &candidates[0];
        let counts: Vec<String> = candidates[1..]
            .iter()
            .map(|x| {
                format!(
                    "E({y},{x})={} vs {}",
                    relative_efficiency(&game, &r, y, x).unwrap(),
                    relative_efficiency(&game, &r, x, y).unwrap()
                )
            })
            .collect();
        let wins = candidates[1..].iter().filter(|x| np_dominates(&game, &r, y, x).unwrap()).count();
        println!("{label}: {} | (3,3) dominates {wins} of 4", counts.join(", "));
    }

    for kind in [
        DominanceKind::ParetoDominance,
        DominanceKind::JointNashPareto(RationalityProfile::all_nash(2)),
        DominanceKind::JointNashPareto("NP".parse()?),
    ] {
        let kept = nondominated_filter(&game, &kind, &candidates)?;
        println!(
            "non-dominated under {}: {}",
            kind.label(),
            kept.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        );
    }
    Ok(())
}
