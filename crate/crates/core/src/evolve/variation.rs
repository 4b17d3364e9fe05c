//! Simulated binary crossover and polynomial mutation, both bounded.

use rand::Rng;

use crate::game::Bounds;

use super::DetectionConfig;

const EPS: f64 = 1e-14;

/// Recombines two parents and mutates the children; results lie within `bounds`.
pub fn variation<R: Rng + ?Sized>(
    bounds: &[Bounds],
    a: &[f64],
    b: &[f64],
    cfg: &DetectionConfig,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let (mut c1, mut c2) = sbx(bounds, a, b, cfg.crossover_rate, cfg.crossover_distribution_index, rng);
    let pm = cfg.mutation_rate_for(bounds.len());
    polynomial_mutation(bounds, &mut c1, pm, cfg.mutation_distribution_index, rng);
    polynomial_mutation(bounds, &mut c2, pm, cfg.mutation_distribution_index, rng);
    (c1, c2)
}

fn sbx<R: Rng + ?Sized>(
    bounds: &[Bounds],
    a: &[f64],
    b: &[f64],
    rate: f64,
    eta: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = a.to_vec();
    let mut c2 = b.to_vec();
    if rate <= 0.0 || rng.random::<f64>() > rate {
        return (c1, c2);
    }
    for (k, bound) in bounds.iter().enumerate() {
        if rng.random::<f64>() > 0.5 || (a[k] - b[k]).abs() <= EPS {
            continue;
        }
        let (y1, y2) = if a[k] < b[k] { (a[k], b[k]) } else { (b[k], a[k]) };
        let u: f64 = rng.random();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let lower = spread(1.0 + 2.0 * (y1 - bound.lo) / (y2 - y1));
        let upper = spread(1.0 + 2.0 * (bound.hi - y2) / (y2 - y1));
        let x1 = bound.clamp(0.5 * ((y1 + y2) - lower * (y2 - y1)));
        let x2 = bound.clamp(0.5 * ((y1 + y2) + upper * (y2 - y1)));
        if rng.random::<f64>() <= 0.5 {
            c1[k] = x2;
            c2[k] = x1;
        } else {
            c1[k] = x1;
            c2[k] = x2;
        }
    }
    (c1, c2)
}

fn polynomial_mutation<R: Rng + ?Sized>(bounds: &[Bounds], x: &mut [f64], rate: f64, eta: f64, rng: &mut R) {
    if rate <= 0.0 {
        return;
    }
    let power = 1.0 / (eta + 1.0);
    for (k, bound) in bounds.iter().enumerate() {
        if rng.random::<f64>() > rate || bound.width() <= 0.0 {
            continue;
        }
        let y = x[k];
        let delta1 = (y - bound.lo) / bound.width();
        let delta2 = (bound.hi - y) / bound.width();
        let u: f64 = rng.random();
        let deltaq = if u <= 0.5 {
            let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1).powf(eta + 1.0);
            val.powf(power) - 1.0
        } else {
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2).powf(eta + 1.0);
            1.0 - val.powf(power)
        };
        x[k] = bound.clamp(y + deltaq * bound.width());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bounds() -> Vec<Bounds> {
        vec![Bounds { lo: 0.0, hi: 10.0 }, Bounds { lo: 2.0, hi: 3.0 }]
    }

    #[test]
    fn zero_rates_copy_parents() {
        let cfg = DetectionConfig { crossover_rate: 0.0, mutation_rate: Some(0.0), ..DetectionConfig::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b) = (vec![1.0, 2.5], vec![9.0, 2.1]);
        for _ in 0..100 {
            assert_eq!(variation(&bounds(), &a, &b, &cfg, &mut rng), (a.clone(), b.clone()));
        }
    }

    #[test]
    fn offspring_stay_in_bounds() {
        let cfg = DetectionConfig { mutation_rate: Some(1.0), ..DetectionConfig::default() };
        let bs = bounds();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100_000 {
            let a: Vec<f64> = bs.iter().map(|b| rng.random_range(b.lo..=b.hi)).collect();
            let b: Vec<f64> = bs.iter().map(|b| rng.random_range(b.lo..=b.hi)).collect();
            let (c1, c2) = variation(&bs, &a, &b, &cfg, &mut rng);
            for c in [c1, c2] {
                for (v, b) in c.iter().zip(&bs) {
                    assert!(b.contains(*v), "{v} outside {b}");
                }
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let cfg = DetectionConfig::default();
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..50).map(|_| variation(&bounds(), &[1.0, 2.2], &[7.0, 2.9], &cfg, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn degenerate_interval_is_left_alone() {
        let bs = vec![Bounds { lo: 4.0, hi: 4.0 }];
        let cfg = DetectionConfig { mutation_rate: Some(1.0), crossover_rate: 1.0, ..DetectionConfig::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (c1, c2) = variation(&bs, &[4.0], &[4.0], &cfg, &mut rng);
        assert_eq!((c1, c2), (vec![4.0], vec![4.0]));
    }
}
