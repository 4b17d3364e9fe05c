use crate::error::{Error, Result};
use crate::game::{follower_best_response, Bounds, GameKind, GameSpec, PayoffModel, StrategyProfile};

/// Stackelberg game seen from the leader: only the leader's channel count is a
/// decision variable and the follower always plays its best response.
#[derive(Debug, Clone)]
pub struct LeaderView<'a> {
    spec: &'a GameSpec,
}

/// Reduces a Stackelberg game to its leader's decision problem.
pub fn stackelberg_bilevel_wrap(spec: &GameSpec) -> Result<LeaderView<'_>> {
    if spec.kind() != GameKind::Stackelberg {
        return Err(Error::invalid(format!("bilevel view needs a stackelberg game, got {}", spec.kind())));
    }
    Ok(LeaderView { spec })
}

impl LeaderView<'_> {
    /// `(c1, b2(c1))`.
    pub fn induced_profile(&self, leader: f64) -> Result<StrategyProfile> {
        Ok(StrategyProfile(vec![leader, follower_best_response(self.spec, leader)?]))
    }

    /// `u1(c1, b2(c1))`.
    pub fn leader_payoff(&self, leader: f64) -> Result<f64> {
        self.spec.payoff_of(&self.induced_profile(leader)?, 0)
    }
}

impl PayoffModel for LeaderView<'_> {
    fn num_players(&self) -> usize {
        2
    }

    fn num_variables(&self) -> usize {
        1
    }

    fn variable_bounds(&self, _var: usize) -> Bounds {
        self.spec.bounds()[0]
    }

    fn owner(&self, _var: usize) -> usize {
        0
    }

    fn payoff(&self, vars: &[f64], player: usize) -> Result<f64> {
        if vars.len() != 1 {
            return Err(Error::invalid(format!("leader view takes 1 variable, got {}", vars.len())));
        }
        self.spec.payoff_of(&self.induced_profile(vars[0])?, player)
    }

    fn expand(&self, vars: &[f64]) -> StrategyProfile {
        self.induced_profile(vars[0]).unwrap_or_else(|_| StrategyProfile(vec![vars[0], f64::NAN]))
    }

    fn game(&self) -> &GameSpec {
        self.spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leader_problem() {
        let g = GameSpec::stackelberg(10.0, 1.0).unwrap();
        let view = stackelberg_bilevel_wrap(&g).unwrap();
        // oracle: leader grid search on the reduced payoff
        let best = (0..=1000)
            .map(|k| k as f64 * 0.01)
            .max_by(|a, b| view.leader_payoff(*a).unwrap().total_cmp(&view.leader_payoff(*b).unwrap()))
            .unwrap();
        assert!((best - 4.5).abs() < 1e-9);
        assert_eq!(view.induced_profile(4.5).unwrap().0, vec![4.5, 2.25]);
        assert_eq!(view.leader_payoff(4.5).unwrap(), 10.125);
        assert_eq!(view.payoffs(&[4.5]).unwrap().0, vec![10.125, 5.0625]);
        assert!(stackelberg_bilevel_wrap(&GameSpec::cournot(2, 10.0, 1.0).unwrap()).is_err());
    }
}
