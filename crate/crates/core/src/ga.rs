//! Genetic algorithm baseline over the same encoding and cost.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{evaluate, Colouring, CostError, CostParams};
use crate::graph::Graph;
use crate::operators::{draw_cut_points, splice};
use crate::run::{invalid, random_population, BestTracker, InitMode, RunResult, SolverError, Termination};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    pub generations: usize,
    /// Probability that a child is mutated.
    pub mutation_rate: f64,
    /// Probability that a selected pair is recombined rather than cloned.
    pub selection_probability: f64,
    pub elitism_count: usize,
    pub k_max: Option<u32>,
    pub init: InitMode,
    pub penalty: Option<f64>,
    pub early_stop_at_chromatic: bool,
    pub known_chromatic: Option<usize>,
    pub rng_seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population_size: 300,
            generations: 100,
            mutation_rate: 0.25,
            selection_probability: 0.50,
            elitism_count: 1,
            k_max: None,
            init: InitMode::Uniform,
            penalty: None,
            early_stop_at_chromatic: false,
            known_chromatic: None,
            rng_seed: 1,
        }
    }
}

impl GaParams {
    pub fn k_max_for(&self, g: &Graph) -> u32 {
        self.k_max.unwrap_or(g.max_degree() as u32 + 1)
    }

    pub fn cost_params_for(&self, g: &Graph) -> CostParams {
        self.penalty
            .map(|penalty| CostParams { penalty })
            .unwrap_or_else(|| CostParams::for_graph(g))
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if self.population_size == 0 {
            return Err(SolverError::EmptyPopulation);
        }
        if self.elitism_count >= self.population_size {
            return Err(invalid("elitism_count must be below population_size"));
        }
        if self.generations == 0 {
            return Err(invalid("generations must be positive"));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(invalid("mutation_rate must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.selection_probability) {
            return Err(invalid("selection_probability must lie in [0, 1]"));
        }
        if self.k_max == Some(0) {
            return Err(invalid("k_max must be positive"));
        }
        if let Some(p) = self.penalty {
            if !(p > 0.0 && p.is_finite()) {
                return Err(invalid("penalty must be positive"));
            }
        }
        Ok(())
    }
}

/// Draws `count` indices with replacement, each with weight
/// `max_cost - cost_i + 1`.
pub fn roulette_select<R: Rng + ?Sized>(
    costs: &[f64],
    count: usize,
    rng: &mut R,
) -> Result<Vec<usize>, SolverError> {
    if costs.is_empty() {
        return Err(SolverError::EmptyPopulation);
    }
    if count == 0 {
        return Err(invalid("roulette needs count >= 1"));
    }
    let wheel = RouletteWheel::new(costs);
    Ok((0..count).map(|_| wheel.spin(rng)).collect())
}

struct RouletteWheel {
    cumulative: Vec<f64>,
}

impl RouletteWheel {
    fn new(costs: &[f64]) -> Self {
        let max = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut acc = 0.0;
        let cumulative = costs
            .iter()
            .map(|c| {
                acc += max - c + 1.0;
                acc
            })
            .collect();
        RouletteWheel { cumulative }
    }

    fn spin<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("non-empty wheel");
        let r = rng.gen::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= r)
            .min(self.cumulative.len() - 1)
    }
}

/// Two-point crossover: the children are `a` and `b` with a random segment
/// exchanged.
pub fn crossover_2pt<R: Rng + ?Sized>(
    a: &Colouring,
    b: &Colouring,
    rng: &mut R,
) -> Result<(Colouring, Colouring), CostError> {
    if a.len() != b.len() {
        return Err(CostError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Err(CostError::Empty);
    }
    let (c1, c2) = draw_cut_points(a.len(), rng);
    crossover_2pt_at(a, b, c1, c2)
}

/// [`crossover_2pt`] with explicit 1-based inclusive cut points.
pub fn crossover_2pt_at(
    a: &Colouring,
    b: &Colouring,
    c1: usize,
    c2: usize,
) -> Result<(Colouring, Colouring), CostError> {
    if a.len() != b.len() {
        return Err(CostError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    assert!(1 <= c1 && c1 <= c2 && c2 <= a.len());
    Ok((splice(a, b, c1, c2), splice(b, a, c1, c2)))
}

/// Gives one uniformly chosen vertex a uniform colour in `1..=k_max`.
pub fn mutate<R: Rng + ?Sized>(col: &Colouring, k_max: u32, rng: &mut R) -> Colouring {
    let mut out = col.clone();
    if !out.is_empty() {
        let i = rng.gen_range(0..out.len());
        out.colours_mut()[i] = rng.gen_range(1..=k_max);
    }
    out
}

pub fn run_ga(g: &Graph, params: &GaParams) -> Result<RunResult, SolverError> {
    run_ga_observed(g, params, |_| {})
}

/// [`run_ga`] with a callback that sees the population after every generation.
pub fn run_ga_observed<F>(
    g: &Graph,
    params: &GaParams,
    mut observe: F,
) -> Result<RunResult, SolverError>
where
    F: FnMut(&[Colouring]),
{
    params.validate()?;
    let cost_params = params.cost_params_for(g);
    let k_max = params.k_max_for(g);
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let target = params
        .early_stop_at_chromatic
        .then_some(params.known_chromatic)
        .flatten();

    let score = |pop: &[Colouring]| -> Result<Vec<f64>, SolverError> {
        pop.iter()
            .map(|c| Ok(evaluate(g, c, cost_params)?.cost))
            .collect()
    };

    let mut population = random_population(g.n(), params.population_size, k_max, params.init, &mut rng);
    let mut costs = score(&population)?;
    let mut ranked = rank(&costs);
    let mut best = BestTracker::new(
        population[ranked[0]].clone(),
        evaluate(g, &population[ranked[0]], cost_params)?,
    );

    let mut terminated_by = Termination::DecadesExhausted;
    for _ in 0..params.generations {
        let mut next: Vec<Colouring> = ranked[..params.elitism_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();
        let wheel = RouletteWheel::new(&costs);
        while next.len() < params.population_size {
            let a = &population[wheel.spin(&mut rng)];
            let b = &population[wheel.spin(&mut rng)];
            let (mut c1, mut c2) = if rng.gen::<f64>() < params.selection_probability {
                crossover_2pt(a, b, &mut rng)?
            } else {
                (a.clone(), b.clone())
            };
            for child in [&mut c1, &mut c2] {
                if rng.gen::<f64>() < params.mutation_rate {
                    *child = mutate(child, k_max, &mut rng);
                }
            }
            next.push(c1);
            if next.len() < params.population_size {
                next.push(c2);
            }
        }
        population = next;
        costs = score(&population)?;
        ranked = rank(&costs);
        best.offer(g, &population[ranked[0]], costs[ranked[0]], cost_params);
        best.record();
        observe(&population);
        if best.reached(target) {
            terminated_by = Termination::EarlyStop;
            break;
        }
    }
    Ok(best.finish(terminated_by))
}

/// Indices sorted by ascending cost, earlier index on ties.
fn rank(costs: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    order
}
