//! Evolutionary search for tree-segmenter weights.
//!
//! A genome is the flat vector of the five scalar weights followed by one
//! relation weight per dependency label seen in the training corpus. The
//! loop is a plain generational GA: elitism, tournament selection, uniform
//! crossover and additive Gaussian mutation, with the whole run driven by
//! one seeded ChaCha stream so that a seed fixes every population.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{AlignedCorpus, Segmentation};
use crate::error::{Error, Result};
use crate::eval::{rhesis_precision, Prf};
use crate::span::SpanConfig;
use crate::tree::{ScoringWeights, TreeFeatures};

const SCALARS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitnessMetric {
    Precision,
    F1,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvoConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_k: usize,
    pub crossover_rate: f64,
    pub mutation_sigma: f64,
    /// Per-gene probability of a mutation.
    pub mutation_rate: f64,
    pub elitism: usize,
    pub seed: u64,
    pub fitness_metric: FitnessMetric,
}

impl Default for EvoConfig {
    fn default() -> Self {
        EvoConfig {
            population: 40,
            generations: 60,
            tournament_k: 3,
            crossover_rate: 0.7,
            mutation_sigma: 0.1,
            mutation_rate: 0.2,
            elitism: 2,
            seed: 42,
            fitness_metric: FitnessMetric::Precision,
        }
    }
}

impl EvoConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.population == 0 || self.elitism >= self.population {
            return bad("evo needs population > elitism >= 0 and population > 0");
        }
        if self.tournament_k == 0 {
            return bad("evo.tournament_k must be positive");
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::Config(format!("evo.{name} must lie in [0, 1]")));
            }
        }
        if !(self.mutation_sigma > 0.0 && self.mutation_sigma.is_finite()) {
            return bad("evo.mutation_sigma must be positive");
        }
        Ok(())
    }
}

/// Maps genome positions to weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenomeLayout {
    /// Relation labels, in gene order after the five scalars.
    pub labels: Vec<String>,
}

impl GenomeLayout {
    /// Layout covering every relation label present in the corpus.
    pub fn from_corpus(corpus: &AlignedCorpus) -> Self {
        let labels: BTreeSet<String> = corpus
            .sentences()
            .flat_map(|s| s.tokens.iter().filter(|t| t.head != 0).map(|t| t.deprel.clone()))
            .collect();
        GenomeLayout {
            labels: labels.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        SCALARS + self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    pub genes: Vec<f64>,
}

impl Genome {
    pub fn zero(layout: &GenomeLayout) -> Self {
        Genome {
            genes: vec![0.0; layout.len()],
        }
    }

    /// Relation type only: `w_dep = 1`, everything else zero.
    pub fn dependency_only(layout: &GenomeLayout) -> Self {
        let mut g = Genome::zero(layout);
        g.genes[0] = 1.0;
        g
    }

    pub fn random<R: Rng>(layout: &GenomeLayout, rng: &mut R) -> Self {
        let genes = (0..layout.len())
            .map(|k| match k {
                // balance is paid per character, so it lives on a smaller scale
                2 => rng.gen_range(0.0..0.1),
                k if k < SCALARS => rng.gen_range(0.0..1.0),
                _ => rng.gen_range(-1.0..=1.0),
            })
            .collect();
        Genome { genes }
    }

    pub fn encode(w: &ScoringWeights, layout: &GenomeLayout) -> Self {
        let mut genes = vec![w.w_dep, w.w_count, w.w_balance, w.w_depth, w.w_cross];
        genes.extend(layout.labels.iter().map(|l| w.deprel_weight(l)));
        let mut g = Genome { genes };
        g.clamp();
        g
    }

    /// Forces scalars to be non-negative and relation weights into [-1, 1].
    pub fn clamp(&mut self) {
        for (k, g) in self.genes.iter_mut().enumerate() {
            if !g.is_finite() {
                *g = 0.0;
            }
            *g = if k < SCALARS { g.max(0.0) } else { g.clamp(-1.0, 1.0) };
        }
    }

    pub fn decode(&self, layout: &GenomeLayout) -> ScoringWeights {
        let mut g = self.clone();
        g.clamp();
        ScoringWeights {
            w_dep: g.genes[0],
            w_count: g.genes[1],
            w_balance: g.genes[2],
            w_depth: g.genes[3],
            w_cross: g.genes[4],
            default_deprel_weight: 0.0,
            deprel_weights: layout
                .labels
                .iter()
                .cloned()
                .zip(g.genes[SCALARS..].iter().copied())
                .collect(),
        }
    }
}

/// A corpus with its weight-independent features computed once.
pub struct PreparedCorpus<'a> {
    corpus: &'a AlignedCorpus,
    features: Vec<TreeFeatures>,
    gold: Vec<Segmentation>,
}

impl<'a> PreparedCorpus<'a> {
    pub fn new(corpus: &'a AlignedCorpus, span: &SpanConfig) -> Result<Self> {
        if corpus.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Ok(PreparedCorpus {
            corpus,
            features: corpus
                .sentences()
                .map(|s| TreeFeatures::new(s, span))
                .collect(),
            gold: corpus.gold(),
        })
    }

    pub fn segment(&self, w: &ScoringWeights) -> Vec<Segmentation> {
        self.corpus
            .sentences()
            .zip(&self.features)
            .map(|(s, f)| Segmentation::from_cuts(s, &f.best_cuts(w).0))
            .collect()
    }

    pub fn score(&self, w: &ScoringWeights) -> Prf {
        rhesis_precision(&self.segment(w), &self.gold).expect("segments are paired with gold")
    }

    pub fn fitness(&self, w: &ScoringWeights, metric: FitnessMetric) -> f64 {
        let prf = self.score(w);
        match metric {
            FitnessMetric::Precision => prf.precision,
            FitnessMetric::F1 => prf.f1,
        }
    }
}

/// Common-rhesis precision (or F1) of the decoded genome on the corpus.
pub fn fitness(
    genome: &Genome,
    layout: &GenomeLayout,
    corpus: &AlignedCorpus,
    span: &SpanConfig,
    metric: FitnessMetric,
) -> Result<f64> {
    let prepared = PreparedCorpus::new(corpus, span)?;
    Ok(prepared.fitness(&genome.decode(layout), metric))
}

/// Result of an evolutionary run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvoRun {
    pub config: EvoConfig,
    pub span: SpanConfig,
    pub layout: GenomeLayout,
    pub best: Genome,
    pub best_fitness: f64,
    /// Best-ever fitness after the initial population and each generation.
    pub trace: Vec<f64>,
}

impl EvoRun {
    pub fn weights(&self) -> ScoringWeights {
        self.best.decode(&self.layout)
    }

    /// Run manifest: configuration, seed and trace as JSON.
    pub fn manifest_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

struct Scored {
    genome: Genome,
    fitness: f64,
}

fn evaluate(pop: Vec<Genome>, prepared: &PreparedCorpus, layout: &GenomeLayout, metric: FitnessMetric) -> Vec<Scored> {
    pop.into_par_iter()
        .map(|genome| {
            let fitness = prepared.fitness(&genome.decode(layout), metric);
            Scored { genome, fitness }
        })
        .collect()
}

/// Index of the fittest individual; ties go to the lowest index.
fn fittest(pop: &[Scored], candidates: impl Iterator<Item = usize>) -> usize {
    candidates
        .reduce(|best, k| if pop[k].fitness > pop[best].fitness { k } else { best })
        .expect("at least one candidate")
}

/// Best of `k` uniform draws with replacement; the earliest draw wins ties.
fn tournament<R: Rng>(pop: &[Scored], k: usize, rng: &mut R) -> usize {
    let draws: Vec<usize> = (0..k).map(|_| rng.gen_range(0..pop.len())).collect();
    fittest(pop, draws.into_iter())
}

pub fn evolve(corpus: &AlignedCorpus, cfg: &EvoConfig, span: &SpanConfig) -> Result<EvoRun> {
    cfg.validate()?;
    let prepared = PreparedCorpus::new(corpus, span)?;
    let layout = GenomeLayout::from_corpus(corpus);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let normal = Normal::new(0.0, cfg.mutation_sigma).map_err(|e| Error::Config(e.to_string()))?;

    let mut initial = vec![Genome::zero(&layout), Genome::dependency_only(&layout)];
    initial.truncate(cfg.population);
    while initial.len() < cfg.population {
        initial.push(Genome::random(&layout, &mut rng));
    }
    let mut pop = evaluate(initial, &prepared, &layout, cfg.fitness_metric);

    let mut best = {
        let k = fittest(&pop, 0..pop.len());
        (pop[k].genome.clone(), pop[k].fitness)
    };
    let mut trace = vec![best.1];

    for _ in 0..cfg.generations {
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&a, &b| pop[b].fitness.total_cmp(&pop[a].fitness).then(a.cmp(&b)));

        let mut children = Vec::with_capacity(cfg.population - cfg.elitism);
        while cfg.elitism + children.len() < cfg.population {
            let a = tournament(&pop, cfg.tournament_k, &mut rng);
            let b = tournament(&pop, cfg.tournament_k, &mut rng);
            let mut child = if rng.gen_bool(cfg.crossover_rate) {
                Genome {
                    genes: pop[a]
                        .genome
                        .genes
                        .iter()
                        .zip(&pop[b].genome.genes)
                        .map(|(&x, &y)| if rng.gen_bool(0.5) { x } else { y })
                        .collect(),
                }
            } else {
                pop[a].genome.clone()
            };
            for gene in child.genes.iter_mut() {
                if rng.gen_bool(cfg.mutation_rate) {
                    *gene += normal.sample(&mut rng);
                }
            }
            child.clamp();
            children.push(child);
        }

        // elites keep their fitness; only children need evaluating
        let elites: Vec<Scored> = order[..cfg.elitism]
            .iter()
            .map(|&k| Scored {
                genome: pop[k].genome.clone(),
                fitness: pop[k].fitness,
            })
            .collect();
        pop = elites;
        pop.extend(evaluate(children, &prepared, &layout, cfg.fitness_metric));

        let k = fittest(&pop, 0..pop.len());
        if pop[k].fitness > best.1 {
            best = (pop[k].genome.clone(), pop[k].fitness);
        }
        trace.push(best.1);
    }

    Ok(EvoRun {
        config: cfg.clone(),
        span: *span,
        layout,
        best: best.0,
        best_fitness: best.1,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{align_gold, parse_conllu, parse_gold};

    fn classmates() -> AlignedCorpus {
        let sentences = parse_conllu(include_str!("../data/classmates.conllu")).unwrap();
        let gold = parse_gold(include_str!("../data/classmates.rhz")).unwrap();
        align_gold(&sentences, &gold).unwrap()
    }

    fn small() -> EvoConfig {
        EvoConfig {
            population: 8,
            generations: 4,
            ..EvoConfig::default()
        }
    }

    #[test]
    fn zero_generations_keeps_initial_best() {
        let cfg = EvoConfig {
            generations: 0,
            ..small()
        };
        let run = evolve(&classmates(), &cfg, &SpanConfig::default()).unwrap();
        assert_eq!(run.trace.len(), 1);
        assert_eq!(run.trace[0], run.best_fitness);
    }

    #[test]
    fn same_seed_same_run() {
        let a = evolve(&classmates(), &small(), &SpanConfig::default()).unwrap();
        let b = evolve(&classmates(), &small(), &SpanConfig::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.weights().to_toml().unwrap(), b.weights().to_toml().unwrap());
    }

    #[test]
    fn trace_never_drops() {
        let run = evolve(&classmates(), &small(), &SpanConfig::default()).unwrap();
        assert_eq!(run.trace.len(), 5);
        assert!(run.trace.windows(2).all(|w| w[0] <= w[1]));
        assert!(run.weights().validate().is_ok());
    }

    #[test]
    fn empty_corpus_is_refused() {
        let empty = AlignedCorpus::default();
        assert!(matches!(
            evolve(&empty, &small(), &SpanConfig::default()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn single_rhesis_corpus_scores_one() {
        let corpus = classmates();
        let mut whole = corpus.clone();
        for e in &mut whole.entries {
            e.gold = Segmentation::whole(&e.sentence);
        }
        let span = SpanConfig::with_max(1000);
        let layout = GenomeLayout::from_corpus(&whole);
        let mut g = Genome::zero(&layout);
        g.genes[1] = 1.0; // w_count
        let f = fitness(&g, &layout, &whole, &span, FitnessMetric::Precision).unwrap();
        assert_eq!(f, 1.0);
    }

    #[test]
    fn decode_clamps() {
        let layout = GenomeLayout {
            labels: vec!["nsubj".into()],
        };
        let mut g = Genome {
            genes: vec![-1.0, 2.0, 0.5, 0.0, 0.1, 3.0],
        };
        g.clamp();
        let w = g.decode(&layout);
        assert!(w.validate().is_ok());
        assert_eq!(w.deprel_weight("nsubj"), 1.0);
        assert_eq!(w.w_dep, 0.0);
    }
}
