//! Discrete imperialist competitive algorithm.
//!
//! Countries are colourings. The best countries become imperialists and share
//! the rest as colonies. Each decade every colony is assimilated toward its
//! imperialist (a two-point segment copy), some colonies revolt (two cells
//! swap), colonies that overtake their imperialist take its place, similar
//! empires unite, and the weakest empire loses its worst colony to a rival
//! chosen by power. Empires left without colonies are eliminated.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{evaluate, Colouring, CostError, CostParams};
use crate::graph::Graph;
use crate::operators::{draw_cut_points, draw_distinct_positions, splice, swap_cells};
use crate::run::{invalid, random_population, BestTracker, InitMode, RunResult, SolverError, Termination};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DicaParams {
    pub population_size: usize,
    /// Share of the population promoted to imperialist at start.
    pub imperialist_fraction: f64,
    pub decades: usize,
    /// Per-colony revolution probability in the first decade.
    pub revolution_rate: f64,
    /// Normalised Hamming distance below which two empires merge.
    pub uniting_threshold: f64,
    /// Multiplier applied to the revolution rate after every decade.
    pub damp_ratio: f64,
    /// Weight of the mean colony cost in an empire's total cost.
    pub xi: f64,
    /// Initial colour range; `None` means max degree + 1.
    pub k_max: Option<u32>,
    pub init: InitMode,
    /// Conflict penalty; `None` means the vertex count.
    pub penalty: Option<f64>,
    pub early_stop_at_chromatic: bool,
    pub known_chromatic: Option<usize>,
    pub rng_seed: u64,
}

impl Default for DicaParams {
    fn default() -> Self {
        DicaParams {
            population_size: 300,
            imperialist_fraction: 0.10,
            decades: 100,
            revolution_rate: 0.25,
            uniting_threshold: 0.02,
            damp_ratio: 0.90,
            xi: 0.1,
            k_max: None,
            init: InitMode::Uniform,
            penalty: None,
            early_stop_at_chromatic: false,
            known_chromatic: None,
            rng_seed: 1,
        }
    }
}

impl DicaParams {
    pub fn imperialist_count(&self) -> usize {
        ((self.imperialist_fraction * self.population_size as f64).round() as usize).max(1)
    }

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
        if !(self.imperialist_fraction > 0.0 && self.imperialist_fraction < 1.0) {
            return Err(invalid("imperialist_fraction must lie in (0, 1)"));
        }
        if self.imperialist_count() >= self.population_size {
            return Err(invalid(format!(
                "{} imperialists leave no colonies in a population of {}",
                self.imperialist_count(),
                self.population_size
            )));
        }
        if self.decades == 0 {
            return Err(invalid("decades must be positive"));
        }
        if !(0.0..=1.0).contains(&self.revolution_rate) {
            return Err(invalid("revolution_rate must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.uniting_threshold) {
            return Err(invalid("uniting_threshold must lie in [0, 1]"));
        }
        if !(self.damp_ratio > 0.0 && self.damp_ratio <= 1.0) {
            return Err(invalid("damp_ratio must lie in (0, 1]"));
        }
        if !(self.xi >= 0.0 && self.xi.is_finite()) {
            return Err(invalid("xi must be non-negative"));
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

/// A colouring with its cached cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Country {
    pub colouring: Colouring,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Empire {
    pub imperialist: Country,
    pub colonies: Vec<Country>,
}

/// Index of the smallest cost, earliest on ties.
fn argmin_cost(countries: &[Country]) -> Option<usize> {
    countries
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cost.total_cmp(&b.1.cost).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
}

/// Index of the largest value, latest on ties.
fn argmax_last<I: IntoIterator<Item = f64>>(values: I) -> Option<usize> {
    values
        .into_iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
}

impl Empire {
    pub fn new(imperialist: Country) -> Self {
        Empire {
            imperialist,
            colonies: Vec::new(),
        }
    }

    /// Promotes the cheapest colony if it is strictly cheaper than the
    /// imperialist. Returns whether a swap happened.
    pub fn exchange_if_better(&mut self) -> bool {
        match argmin_cost(&self.colonies) {
            Some(i) if self.colonies[i].cost < self.imperialist.cost => {
                std::mem::swap(&mut self.imperialist, &mut self.colonies[i]);
                true
            }
            _ => false,
        }
    }

    /// Imperialist cost plus `xi` times the mean colony cost (0 without colonies).
    pub fn total_cost(&self, xi: f64) -> f64 {
        let mean = if self.colonies.is_empty() {
            0.0
        } else {
            self.colonies.iter().map(|c| c.cost).sum::<f64>() / self.colonies.len() as f64
        };
        self.imperialist.cost + xi * mean
    }

    /// Imperialist plus colonies.
    pub fn size(&self) -> usize {
        1 + self.colonies.len()
    }

    fn countries(&self) -> impl Iterator<Item = &Country> {
        std::iter::once(&self.imperialist).chain(self.colonies.iter())
    }
}

/// `params.population_size` random colourings over `1..=k_max`, drawn per
/// `params.init`.
pub fn init_population<R: Rng + ?Sized>(
    g: &Graph,
    params: &DicaParams,
    rng: &mut R,
) -> Result<Vec<Colouring>, SolverError> {
    if params.population_size == 0 {
        return Err(SolverError::EmptyPopulation);
    }
    Ok(random_population(
        g.n(),
        params.population_size,
        params.k_max_for(g),
        params.init,
        rng,
    ))
}

/// Colony counts per imperialist, proportional to normalised power.
///
/// Power is `(max_cost - cost_i) / sum_j (max_cost - cost_j)`, uniform when all
/// costs are equal. Counts are rounded by largest remainder (earlier index on
/// equal remainders) and always sum to `n_colonies`.
pub fn allocate_colonies(imperialist_costs: &[f64], n_colonies: usize) -> Vec<usize> {
    let k = imperialist_costs.len();
    if k == 0 {
        return Vec::new();
    }
    let max = imperialist_costs
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let gaps: Vec<f64> = imperialist_costs.iter().map(|c| max - c).collect();
    let total: f64 = gaps.iter().sum();
    let powers: Vec<f64> = if total > 0.0 {
        gaps.iter().map(|g| g / total).collect()
    } else {
        vec![1.0 / k as f64; k]
    };

    let quotas: Vec<f64> = powers.iter().map(|p| p * n_colonies as f64).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    let strongest = argmax_first(&powers);
    if assigned <= n_colonies {
        let mut left = n_colonies - assigned;
        for &i in order.iter().cycle().take(left.min(k)) {
            counts[i] += 1;
            left -= 1;
        }
        counts[strongest] += left;
    } else {
        let mut excess = assigned - n_colonies;
        while excess > 0 {
            let i = if counts[strongest] > 0 {
                strongest
            } else {
                counts.iter().position(|&c| c > 0).expect("assigned > 0")
            };
            counts[i] -= 1;
            excess -= 1;
        }
    }
    counts
}

fn argmax_first(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Promotes the `n_imp` cheapest countries (earlier index on ties) and deals
/// the rest out at random according to [`allocate_colonies`].
pub fn form_empires<R: Rng + ?Sized>(
    countries: Vec<Colouring>,
    costs: &[f64],
    n_imp: usize,
    rng: &mut R,
) -> Result<Vec<Empire>, SolverError> {
    if countries.len() != costs.len() {
        return Err(invalid("one cost per country required"));
    }
    if n_imp == 0 || n_imp >= countries.len() {
        return Err(invalid(format!(
            "{n_imp} imperialists out of {} countries",
            countries.len()
        )));
    }
    let mut order: Vec<usize> = (0..countries.len()).collect();
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    let mut is_imperialist = vec![false; countries.len()];
    for &i in &order[..n_imp] {
        is_imperialist[i] = true;
    }

    let mut slots: Vec<Option<Colouring>> = countries.into_iter().map(Some).collect();
    let mut empires: Vec<Empire> = order[..n_imp]
        .iter()
        .map(|&i| {
            Empire::new(Country {
                colouring: slots[i].take().expect("each country taken once"),
                cost: costs[i],
            })
        })
        .collect();
    let mut colonies: Vec<Country> = slots
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| {
            c.map(|colouring| Country {
                colouring,
                cost: costs[i],
            })
        })
        .collect();
    colonies.shuffle(rng);

    let imp_costs: Vec<f64> = empires.iter().map(|e| e.imperialist.cost).collect();
    let counts = allocate_colonies(&imp_costs, colonies.len());
    let mut pool = colonies.into_iter();
    for (empire, count) in empires.iter_mut().zip(counts) {
        empire.colonies.extend(pool.by_ref().take(count));
    }
    Ok(empires)
}

/// Copies a random segment of the imperialist into the colony.
pub fn assimilate<R: Rng + ?Sized>(
    imperialist: &Colouring,
    colony: &Colouring,
    rng: &mut R,
) -> Result<Colouring, CostError> {
    check_same_len(imperialist, colony)?;
    if colony.is_empty() {
        return Err(CostError::Empty);
    }
    let (c1, c2) = draw_cut_points(colony.len(), rng);
    Ok(splice(colony, imperialist, c1, c2))
}

/// [`assimilate`] with explicit 1-based inclusive cut points.
pub fn assimilate_at(
    imperialist: &Colouring,
    colony: &Colouring,
    c1: usize,
    c2: usize,
) -> Result<Colouring, CostError> {
    check_same_len(imperialist, colony)?;
    assert!(
        1 <= c1 && c1 <= c2 && c2 <= colony.len(),
        "cut points ({c1}, {c2}) outside 1..={}",
        colony.len()
    );
    Ok(splice(colony, imperialist, c1, c2))
}

fn check_same_len(a: &Colouring, b: &Colouring) -> Result<(), CostError> {
    if a.len() != b.len() {
        return Err(CostError::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Swaps two distinct random cells. Single-vertex colourings are returned as is.
pub fn revolve<R: Rng + ?Sized>(colony: &Colouring, rng: &mut R) -> Colouring {
    if colony.len() < 2 {
        return colony.clone();
    }
    let (i, j) = draw_distinct_positions(colony.len(), rng);
    swap_cells(colony, i, j)
}

/// [`revolve`] at explicit 1-based positions.
pub fn revolve_at(colony: &Colouring, i: usize, j: usize) -> Colouring {
    assert!(i >= 1 && j >= 1 && i <= colony.len() && j <= colony.len());
    swap_cells(colony, i, j)
}

/// Moves the worst colony of the weakest empire to a rival picked by
/// roulette over normalised power. A weakest empire with no colonies is
/// dissolved and its imperialist is the item transferred.
///
/// The weakest empire is the one with the highest total cost (latest index on
/// ties); its worst colony is the costliest (latest index on ties).
pub fn imperialistic_competition<R: Rng + ?Sized>(
    empires: &mut Vec<Empire>,
    xi: f64,
    rng: &mut R,
) {
    if empires.len() < 2 {
        return;
    }
    let totals: Vec<f64> = empires.iter().map(|e| e.total_cost(xi)).collect();
    let weakest = argmax_last(totals.iter().copied()).expect("non-empty");
    let max_total = totals[weakest];

    let (item, candidates): (Country, Vec<usize>) = if empires[weakest].colonies.is_empty() {
        let gone = empires.remove(weakest);
        (gone.imperialist, (0..empires.len()).collect())
    } else {
        let colonies = &mut empires[weakest].colonies;
        let worst = argmax_last(colonies.iter().map(|c| c.cost)).expect("non-empty");
        let item = colonies.remove(worst);
        (item, (0..empires.len()).filter(|&i| i != weakest).collect())
    };

    // indices into `totals` shift by one past a removed empire
    let total_of = |i: usize| {
        if empires.len() < totals.len() && i >= weakest {
            totals[i + 1]
        } else {
            totals[i]
        }
    };
    let weights: Vec<f64> = candidates.iter().map(|&i| max_total - total_of(i)).collect();
    let sum: f64 = weights.iter().sum();
    let pick = if sum > 0.0 {
        let mut r = rng.gen::<f64>() * sum;
        let mut chosen = *candidates.last().expect("at least one rival");
        for (&i, &w) in candidates.iter().zip(&weights) {
            if w > 0.0 && r < w {
                chosen = i;
                break;
            }
            r -= w;
        }
        chosen
    } else {
        candidates[rng.gen_range(0..candidates.len())]
    };
    empires[pick].colonies.push(item);
}

fn hamming_fraction(a: &Colouring, b: &Colouring) -> f64 {
    let diff = a
        .colours()
        .iter()
        .zip(b.colours())
        .filter(|(x, y)| x != y)
        .count();
    diff as f64 / a.len().max(1) as f64
}

/// Merges empires whose imperialists differ in strictly less than
/// `threshold` of their positions. Pairs are handled closest first; the empire
/// with the lower total cost (earlier index on ties) absorbs the other, whose
/// imperialist becomes a colony.
pub fn unite_similar_empires(empires: &mut Vec<Empire>, threshold: f64, xi: f64) {
    let mut pairs = Vec::new();
    for i in 0..empires.len() {
        for j in i + 1..empires.len() {
            let d = hamming_fraction(&empires[i].imperialist.colouring, &empires[j].imperialist.colouring);
            if d < threshold {
                pairs.push((d, i, j));
            }
        }
    }
    if pairs.is_empty() {
        return;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut slots: Vec<Option<Empire>> = empires.drain(..).map(Some).collect();
    for (_, i, j) in pairs {
        let (Some(a), Some(b)) = (&slots[i], &slots[j]) else {
            continue;
        };
        let (keep, absorb) = match a.total_cost(xi).total_cmp(&b.total_cost(xi)) {
            Ordering::Greater => (j, i),
            _ => (i, j),
        };
        let absorbed = slots[absorb].take().expect("checked alive");
        let winner = slots[keep].as_mut().expect("checked alive");
        winner.colonies.push(absorbed.imperialist);
        winner.colonies.extend(absorbed.colonies);
    }
    empires.extend(slots.into_iter().flatten());
}

/// Dissolves empires left without colonies while more than one empire
/// remains. Each dissolved imperialist joins the empire with the lowest total
/// cost (earliest on ties).
pub fn eliminate_empty_empires(empires: &mut Vec<Empire>, xi: f64) {
    while empires.len() > 1 {
        let Some(pos) = empires.iter().position(|e| e.colonies.is_empty()) else {
            break;
        };
        let gone = empires.remove(pos);
        let strongest = empires
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cost(xi).total_cmp(&b.1.total_cost(xi)).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
            .expect("at least one empire left");
        empires[strongest].colonies.push(gone.imperialist);
    }
}

/// Points inside a decade at which [`run_dica_observed`] reports the empires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    AfterExchange,
    DecadeEnd,
}

pub fn run_dica(g: &Graph, params: &DicaParams) -> Result<RunResult, SolverError> {
    run_dica_observed(g, params, |_, _| {})
}

/// [`run_dica`] with a callback invoked after the exchange step and at the end
/// of every decade.
pub fn run_dica_observed<F>(
    g: &Graph,
    params: &DicaParams,
    mut observe: F,
) -> Result<RunResult, SolverError>
where
    F: FnMut(Phase, &[Empire]),
{
    params.validate()?;
    let cost_params = params.cost_params_for(g);
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);

    let countries = init_population(g, params, &mut rng)?;
    let costs: Vec<f64> = countries
        .iter()
        .map(|c| evaluate(g, c, cost_params).map(|e| e.cost))
        .collect::<Result<_, _>>()?;
    let first_best = costs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("population is non-empty");
    let mut best = BestTracker::new(
        countries[first_best].clone(),
        evaluate(g, &countries[first_best], cost_params)?,
    );
    let mut empires = form_empires(countries, &costs, params.imperialist_count(), &mut rng)?;
    let target = params
        .early_stop_at_chromatic
        .then_some(params.known_chromatic)
        .flatten();

    let mut revolution_rate = params.revolution_rate;
    let mut terminated_by = Termination::DecadesExhausted;
    for _ in 0..params.decades {
        for empire in &mut empires {
            let imperialist = &empire.imperialist.colouring;
            for colony in &mut empire.colonies {
                let mut moved = assimilate(imperialist, &colony.colouring, &mut rng)?;
                if rng.gen::<f64>() < revolution_rate {
                    moved = revolve(&moved, &mut rng);
                }
                colony.cost = evaluate(g, &moved, cost_params)?.cost;
                colony.colouring = moved;
            }
        }

        for empire in &mut empires {
            empire.exchange_if_better();
        }
        observe(Phase::AfterExchange, &empires);

        unite_similar_empires(&mut empires, params.uniting_threshold, params.xi);
        imperialistic_competition(&mut empires, params.xi, &mut rng);
        eliminate_empty_empires(&mut empires, params.xi);
        revolution_rate *= params.damp_ratio;

        for country in empires.iter().flat_map(Empire::countries) {
            best.offer(g, &country.colouring, country.cost, cost_params);
        }
        best.record();
        observe(Phase::DecadeEnd, &empires);

        if best.reached(target) {
            terminated_by = Termination::EarlyStop;
            break;
        }
        if empires.len() == 1 {
            terminated_by = Termination::SingleEmpire;
            break;
        }
    }
    Ok(best.finish(terminated_by))
}
