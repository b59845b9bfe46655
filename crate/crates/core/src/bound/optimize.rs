use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{evaluate_bound, BoundError, BoundEvaluation, BoundSpec, DistributionTriple};
use crate::domain::Domain;

/// Search effort for [`optimize_bound`]. Restart `i` is seeded with `seed + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimizeBudget {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for OptimizeBudget {
    fn default() -> Self {
        OptimizeBudget { restarts: 16, iterations: 3000, seed: 0 }
    }
}

const LOGIT_BOUND: f64 = 12.0;

/// Maps unconstrained logits to a triple that meets the margin constraints
/// by construction: the outer distribution is a softmax over the domain, and
/// each inner one splits the outer margin of its constrained coordinate by a
/// softmax within every fiber of that coordinate.
struct Parametrization {
    domain: Domain,
    fibers: [Vec<Vec<usize>>; 2],
}

impl Parametrization {
    fn new(domain: &Domain, spec: &BoundSpec) -> Self {
        let (c1, c2) = spec.constrained_axes();
        let fibers_of = |c: usize| -> Vec<Vec<usize>> {
            (0..domain.alphabets()[c].len())
                .map(|v| (0..domain.len()).filter(|&m| domain.members()[m].coord(c) == v).collect::<Vec<_>>())
                .filter(|f| !f.is_empty())
                .collect()
        };
        Parametrization { domain: domain.clone(), fibers: [fibers_of(c1), fibers_of(c2)] }
    }

    fn weights(&self, logits: &[Vec<f64>; 3]) -> [Vec<f64>; 3] {
        let all: Vec<usize> = (0..self.domain.len()).collect();
        let mut p = vec![0.0; all.len()];
        softmax_into(&logits[0], &all, 1.0, &mut p);
        let mut inner = [vec![0.0; all.len()], vec![0.0; all.len()]];
        for (k, out) in inner.iter_mut().enumerate() {
            for fiber in &self.fibers[k] {
                let mass: f64 = fiber.iter().map(|&m| p[m]).sum();
                softmax_into(&logits[k + 1], fiber, mass, out);
            }
        }
        let [p1, p2] = inner;
        [p, p1, p2]
    }

    fn evaluate(&self, spec: &BoundSpec, logits: &[Vec<f64>; 3]) -> Result<BoundEvaluation, BoundError> {
        let w = self.weights(logits);
        let triple = DistributionTriple::from_weights(self.domain.clone(), [&w[0], &w[1], &w[2]])?;
        evaluate_bound(spec, &triple)
    }
}

fn softmax_into(logits: &[f64], idx: &[usize], scale: f64, out: &mut [f64]) {
    let top = idx.iter().map(|&m| logits[m]).fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = idx.iter().map(|&m| (logits[m] - top).exp()).sum();
    for &m in idx {
        out[m] = scale * (logits[m] - top).exp() / total;
    }
}

/// Best bound value found by multi-start adaptive hill climbing over the
/// three distributions. Every value returned is a valid lower bound; none is
/// claimed optimal. Restarts run in parallel and are reduced in index order,
/// so the result depends only on the inputs and the seed.
pub fn optimize_bound(domain: &Domain, spec: &BoundSpec, budget: OptimizeBudget) -> Result<BoundEvaluation, BoundError> {
    let param = Parametrization::new(domain, spec);
    let n = domain.len();
    let value = |logits: &[Vec<f64>; 3]| param.evaluate(spec, logits).map(|e| e.value).unwrap_or(f64::NEG_INFINITY);

    let runs: Vec<(f64, [Vec<f64>; 3])> = (0..budget.restarts.max(1))
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(restart as u64));
            let mut logits: [Vec<f64>; 3] = if restart == 0 {
                [vec![0.0; n], vec![0.0; n], vec![0.0; n]]
            } else {
                std::array::from_fn(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
            };
            let mut best = value(&logits);
            let mut sigma = 1.0f64;
            for _ in 0..budget.iterations {
                let mut candidate = logits.clone();
                let k = rng.gen_range(0..3);
                for v in candidate[k].iter_mut() {
                    if rng.gen_bool(0.5) {
                        *v = (*v + rng.gen_range(-sigma..=sigma)).clamp(-LOGIT_BOUND, LOGIT_BOUND);
                    }
                }
                let v = value(&candidate);
                if v > best {
                    best = v;
                    logits = candidate;
                    sigma = (sigma * 1.2).min(4.0);
                } else {
                    sigma *= 0.95;
                    if sigma < 1e-3 {
                        sigma = 1.0;
                    }
                }
            }
            (best, logits)
        })
        .collect();

    let (_, logits) = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one restart");
    param.evaluate(spec, &logits)
}
