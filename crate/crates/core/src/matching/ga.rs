//! Real-coded genetic algorithm over the unit box, with a least-squares
//! polish of the final best individual.
//!
//! All random draws come from one seeded stream and are made in a fixed
//! order; only fitness evaluation is parallel, so results do not depend on
//! the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

/// Search hyperparameters. Genes live in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub elitism: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Standard deviation of Gaussian mutation in gene units.
    pub mutation_sigma: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome<const N: usize> {
    pub best: [f64; N],
    pub best_fitness: f64,
    /// Best fitness of each generation, in order.
    pub history: Vec<f64>,
}

pub fn run<const N: usize, F>(params: &GaParams, fitness: F) -> GaOutcome<N>
where
    F: Fn(&[f64; N]) -> f64 + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let normal = Normal::new(0.0, params.mutation_sigma.max(f64::MIN_POSITIVE)).expect("finite sigma");
    let pop_size = params.population.max(2);
    let elitism = params.elitism.min(pop_size);
    let k = params.tournament_size.max(1);

    let mut pop: Vec<[f64; N]> = (0..pop_size)
        .map(|_| std::array::from_fn(|_| rng.gen::<f64>()))
        .collect();
    let mut history = Vec::with_capacity(params.generations);
    let mut scored = evaluate(&pop, &fitness);

    for gen in 0..params.generations.max(1) {
        history.push(scored[0].1);
        if gen + 1 == params.generations.max(1) {
            break;
        }
        let mut next: Vec<[f64; N]> = scored.iter().take(elitism).map(|&(i, _)| pop[i]).collect();
        // rank[i] is the position of individual i after sorting; lower is fitter.
        let mut rank = vec![0usize; pop_size];
        for (r, &(i, _)) in scored.iter().enumerate() {
            rank[i] = r;
        }
        let tournament = |rng: &mut ChaCha8Rng| {
            (0..k)
                .map(|_| rng.gen_range(0..pop_size))
                .min_by_key(|&i| rank[i])
                .expect("tournament size >= 1")
        };
        while next.len() < pop_size {
            let a = pop[tournament(&mut rng)];
            let b = pop[tournament(&mut rng)];
            let (mut c1, mut c2) = (a, b);
            if rng.gen::<f64>() < params.crossover_rate {
                let alpha: f64 = rng.gen();
                for g in 0..N {
                    c1[g] = alpha * a[g] + (1.0 - alpha) * b[g];
                    c2[g] = (1.0 - alpha) * a[g] + alpha * b[g];
                }
            }
            for child in [&mut c1, &mut c2] {
                for gene in child.iter_mut() {
                    if rng.gen::<f64>() < params.mutation_rate {
                        *gene = (*gene + normal.sample(&mut rng)).clamp(0.0, 1.0);
                    }
                }
            }
            next.push(c1);
            if next.len() < pop_size {
                next.push(c2);
            }
        }
        pop = next;
        scored = evaluate(&pop, &fitness);
    }

    let (bi, bf) = scored[0];
    GaOutcome { best: pop[bi], best_fitness: bf, history }
}

/// Indices sorted by ascending fitness; NaN sorts last, ties by index.
fn evaluate<const N: usize, F>(pop: &[[f64; N]], fitness: &F) -> Vec<(usize, f64)>
where
    F: Fn(&[f64; N]) -> f64 + Sync,
{
    let values: Vec<f64> = pop.par_iter().map(fitness).collect();
    let mut scored: Vec<(usize, f64)> = values
        .into_iter()
        .map(|v| if v.is_nan() { f64::INFINITY } else { v })
        .enumerate()
        .collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    scored
}

/// Levenberg–Marquardt on a residual vector whose squared norm is the
/// fitness, constrained to the unit box by projection.
pub fn polish<const N: usize, const M: usize, R>(start: [f64; N], residuals: R) -> ([f64; N], f64)
where
    R: Fn(&[f64; N]) -> [f64; M],
{
    let cost = |r: &[f64; M]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = start;
    let mut r = residuals(&x);
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    for _ in 0..500 {
        if c == 0.0 || !c.is_finite() {
            break;
        }
        let jac = jacobian(&x, &residuals);
        let mut h = [[0.0; N]; N];
        let mut g = [0.0; N];
        for i in 0..N {
            for k in 0..M {
                g[i] += jac[k][i] * r[k];
            }
            for j in 0..N {
                h[i][j] = (0..M).map(|k| jac[k][i] * jac[k][j]).sum();
            }
        }
        let mut improved = false;
        while lambda < 1e16 {
            let mut a = h;
            for i in 0..N {
                a[i][i] += lambda * (h[i][i] + 1e-12);
            }
            let Some(step) = solve_small(a, g.map(|v| -v)) else {
                lambda *= 4.0;
                continue;
            };
            let trial: [f64; N] = std::array::from_fn(|i| (x[i] + step[i]).clamp(0.0, 1.0));
            let rt = residuals(&trial);
            let ct = cost(&rt);
            if ct < c {
                let moved = (0..N).map(|i| (trial[i] - x[i]).abs()).fold(0.0, f64::max);
                x = trial;
                r = rt;
                c = ct;
                lambda = (lambda / 3.0).max(1e-12);
                improved = moved > 1e-16;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (x, c)
}

fn jacobian<const N: usize, const M: usize, R>(x: &[f64; N], residuals: &R) -> [[f64; N]; M]
where
    R: Fn(&[f64; N]) -> [f64; M],
{
    let mut jac = [[0.0; N]; M];
    let h = 1e-7;
    for i in 0..N {
        let mut hi = *x;
        let mut lo = *x;
        hi[i] = (x[i] + h).min(1.0);
        lo[i] = (x[i] - h).max(0.0);
        let span = hi[i] - lo[i];
        if span <= 0.0 {
            continue;
        }
        let (rh, rl) = (residuals(&hi), residuals(&lo));
        for k in 0..M {
            jac[k][i] = (rh[k] - rl[k]) / span;
        }
    }
    jac
}

#[allow(clippy::needless_range_loop)]
fn solve_small<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let p = (col..N).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for row in (col + 1)..N {
            let f = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let s: f64 = ((i + 1)..N).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
