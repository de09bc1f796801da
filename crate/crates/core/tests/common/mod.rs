//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use ffdist::genome::{Chromosome, Genome, Occurrence, Topology};
use ffdist::numeric::Rational;
use ffdist::similarity::SimilarityGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Shape {
    pub max_markers: usize,
    pub max_edges: usize,
    pub max_chromosomes: usize,
    pub circular: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_markers: 5,
            max_edges: 8,
            max_chromosomes: 2,
            circular: 0.3,
        }
    }
}

pub fn random_genome<R: Rng>(rng: &mut R, name: &str, prefix: &str, shape: &Shape) -> Genome {
    let n = rng.gen_range(1..=shape.max_markers);
    let mut occs: Vec<Occurrence> = (1..=n)
        .map(|i| Occurrence::new(format!("{prefix}{i}"), rng.gen_bool(0.5)))
        .collect();
    occs.shuffle(rng);
    let k = rng.gen_range(1..=shape.max_chromosomes.min(n));
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut chroms = Vec::new();
    let mut start = 0;
    for end in cuts {
        let topo = if rng.gen_bool(shape.circular) {
            Topology::Circular
        } else {
            Topology::Linear
        };
        chroms.push(Chromosome::new(occs[start..end].to_vec(), topo).unwrap());
        start = end;
    }
    Genome::new(name, chroms).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, a: &Genome, b: &Genome, max_edges: usize) -> SimilarityGraph {
    let mut all: Vec<(String, String)> = Vec::new();
    for x in a.marker_ids() {
        for y in b.marker_ids() {
            all.push((x.to_string(), y.to_string()));
        }
    }
    all.shuffle(rng);
    let m = rng.gen_range(0..=max_edges.min(all.len()));
    let triples = all
        .into_iter()
        .take(m)
        .map(|(x, y)| (x, y, Rational::new(rng.gen_range(1..=10), 10)));
    SimilarityGraph::from_triples(a, b, triples).unwrap()
}

pub fn random_instance<R: Rng>(rng: &mut R, shape: &Shape) -> (Genome, Genome, SimilarityGraph) {
    let a = random_genome(rng, "A", "a", shape);
    let b = random_genome(rng, "B", "b", shape);
    let g = random_graph(rng, &a, &b, shape.max_edges);
    (a, b, g)
}
