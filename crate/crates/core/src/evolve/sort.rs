use std::cmp::Ordering;

use crate::equilibria::{check_rationality, compare_cached, Comparison, DominanceKind};
use crate::error::Result;
use crate::game::PayoffModel;

use super::Individual;

/// Partitions `pop` into successive non-dominated fronts (lists of indices into `pop`).
///
/// Front `k` holds the members that nothing outside fronts `0..k` dominates.
/// The joint Nash-Pareto relation is not guaranteed to be acyclic; members
/// trapped on a dominance cycle with no non-dominated remainder are placed
/// together in one last front.
pub fn nondominated_sort<G: PayoffModel + ?Sized>(
    model: &G,
    kind: &DominanceKind,
    pop: &[Individual],
) -> Result<Vec<Vec<usize>>> {
    nondominated_sort_with_tolerance(model, kind, pop, 0.0)
}

pub fn nondominated_sort_with_tolerance<G: PayoffModel + ?Sized>(
    model: &G,
    kind: &DominanceKind,
    pop: &[Individual],
    eps: f64,
) -> Result<Vec<Vec<usize>>> {
    if let DominanceKind::JointNashPareto(r) = kind {
        check_rationality(model, r)?;
    }
    let len = pop.len();
    let mut dominated_by = vec![0usize; len];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut scratch = Vec::new();
    for a in 0..len {
        for b in (a + 1)..len {
            let (pa, pb) = (&pop[a], &pop[b]);
            match compare_cached(
                model,
                kind,
                eps,
                &pa.variables,
                &pa.payoffs,
                &pb.variables,
                &pb.payoffs,
                &mut scratch,
            )? {
                Comparison::Dominates => {
                    dominates[a].push(b);
                    dominated_by[b] += 1;
                }
                Comparison::DominatedBy => {
                    dominates[b].push(a);
                    dominated_by[a] += 1;
                }
                Comparison::Neither => {}
            }
        }
    }

    let mut fronts = Vec::new();
    let mut assigned = vec![false; len];
    let mut current: Vec<usize> = (0..len).filter(|&i| dominated_by[i] == 0).collect();
    let mut remaining = len;
    while remaining > 0 {
        if current.is_empty() {
            // dominance cycle: everything left goes into one front
            current = (0..len).filter(|&i| !assigned[i]).collect();
        }
        let mut next = Vec::new();
        for &i in &current {
            assigned[i] = true;
        }
        remaining -= current.len();
        for &i in &current {
            for &j in &dominates[i] {
                if assigned[j] {
                    continue;
                }
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    Ok(fronts)
}

/// NSGA-II crowding distance of each member of one front, in payoff space.
///
/// Extremes along any payoff axis get `f64::INFINITY`; interior members get
/// the sum over axes of the normalized gap between their two neighbours.
pub fn crowding_distance(front: &[Individual]) -> Vec<f64> {
    let payoffs: Vec<&[f64]> = front.iter().map(|ind| &ind.payoffs[..]).collect();
    crowding_from_payoffs(&payoffs)
}

pub(crate) fn crowding_from_payoffs(payoffs: &[&[f64]]) -> Vec<f64> {
    let len = payoffs.len();
    let mut distance = vec![0.0; len];
    if len <= 2 {
        return vec![f64::INFINITY; len];
    }
    let objectives = payoffs[0].len();
    let mut order: Vec<usize> = (0..len).collect();
    #[allow(clippy::needless_range_loop)]
    for m in 0..objectives {
        order.sort_by(|&a, &b| payoffs[a][m].total_cmp(&payoffs[b][m]).then(a.cmp(&b)));
        let lo = payoffs[order[0]][m];
        let hi = payoffs[order[len - 1]][m];
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        distance[order[0]] = f64::INFINITY;
        distance[order[len - 1]] = f64::INFINITY;
        for k in 1..len - 1 {
            let idx = order[k];
            if distance[idx].is_finite() {
                distance[idx] += (payoffs[order[k + 1]][m] - payoffs[order[k - 1]][m]) / span;
            }
        }
    }
    distance
}

/// `Less` when `a` is preferred: lower rank, then larger crowding distance.
pub(crate) fn crowded_compare(a: &Individual, b: &Individual) -> Ordering {
    a.rank.cmp(&b.rank).then_with(|| b.crowding.total_cmp(&a.crowding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::RationalityProfile;
    use crate::game::{GameSpec, PayoffVector, StrategyProfile};

    fn ind(g: &GameSpec, v: [f64; 2]) -> Individual {
        Individual::evaluate(g, v.to_vec()).unwrap()
    }

    fn fake(payoffs: Vec<f64>) -> Individual {
        Individual {
            variables: vec![0.0],
            profile: StrategyProfile(vec![0.0]),
            payoffs: PayoffVector(payoffs),
            rank: 0,
            crowding: 0.0,
        }
    }

    #[test]
    fn np_sort_example() {
        let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
        let pop = vec![ind(&g, [4.0, 4.0]), ind(&g, [3.0, 3.0])];
        let kind = DominanceKind::JointNashPareto(RationalityProfile::all_nash(2));
        assert_eq!(nondominated_sort(&g, &kind, &pop).unwrap(), vec![vec![1], vec![0]]);
    }

    #[test]
    fn mutually_nondominated_single_front() {
        let g = GameSpec::cournot(2, 10.0, 1.0).unwrap();
        // all on the Pareto line c1 + c2 = 4.5
        let pop: Vec<_> = [0.0, 1.0, 2.25, 3.5, 4.5].iter().map(|&a| ind(&g, [a, 4.5 - a])).collect();
        let fronts = nondominated_sort(&g, &DominanceKind::ParetoDominance, &pop).unwrap();
        assert_eq!(fronts, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn crowding_examples() {
        assert_eq!(crowding_distance(&[fake(vec![1.0, 2.0])]), vec![f64::INFINITY]);
        assert_eq!(crowding_distance(&[fake(vec![1.0, 2.0]), fake(vec![2.0, 1.0])]), vec![f64::INFINITY; 2]);
        let d = crowding_distance(&[fake(vec![0.0, 0.0]), fake(vec![1.0, 1.0]), fake(vec![2.0, 2.0])]);
        assert_eq!(d[0], f64::INFINITY);
        assert_eq!(d[2], f64::INFINITY);
        // (2 - 0) / 2 per axis, two axes
        assert_eq!(d[1], 2.0);
    }

    #[test]
    fn flat_objective_is_skipped() {
        let d = crowding_distance(&[
            fake(vec![0.0, 5.0]),
            fake(vec![1.0, 5.0]),
            fake(vec![3.0, 5.0]),
            fake(vec![4.0, 5.0]),
        ]);
        assert_eq!(d[0], f64::INFINITY);
        assert_eq!(d[3], f64::INFINITY);
        assert_eq!(d[1], 0.75);
        let same = crowding_distance(&[fake(vec![9.0, 9.0]), fake(vec![9.0, 9.0]), fake(vec![9.0, 9.0])]);
        assert_eq!(same, vec![0.0; 3]);
        assert_eq!(d[2], 0.75);
    }
}
