//! Brute-force distances for small instances and the balanced-genome
//! reduction.

use std::collections::HashMap;

use num_traits::One;

use crate::decomposition::{
    all_cappings, evaluate_unweighted, evaluate_weighted, induce, CappingSet, ConsistentDecomposition,
    DecompositionError, SiblingSet,
};
use crate::diagram::{build_capped, DiagramError, RelationalDiagram};
use crate::genome::{Chromosome, Genome, Occurrence};
use crate::numeric::Rational;
use crate::similarity::SimilarityGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_edges: usize,
    pub max_caps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 20,
            max_caps: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("instance too large for exhaustive search ({0}); use the ILP")]
    TooLarge(String),
    #[error("genomes are not balanced")]
    NotBalanced,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub distance: Rational,
    /// Indices into the similarity graph's edge list.
    pub matching: Vec<usize>,
    pub capping: CappingSet,
}

fn check_limits(g: &SimilarityGraph, d: &RelationalDiagram, limits: Limits) -> Result<(), ExactError> {
    if g.len() > limits.max_edges {
        return Err(ExactError::TooLarge(format!(
            "{} similarity edges, limit {}",
            g.len(),
            limits.max_edges
        )));
    }
    if d.p_star() > limits.max_caps {
        return Err(ExactError::TooLarge(format!("p* = {}, limit {}", d.p_star(), limits.max_caps)));
    }
    Ok(())
}

/// Every matching of the similarity graph, by include/exclude recursion
/// over edges in (A, B) order; exclusion is explored first, so the empty
/// matching comes first.
pub fn all_matchings(g: &SimilarityGraph) -> Vec<Vec<usize>> {
    fn rec(g: &SimilarityGraph, k: usize, used_a: &mut [bool], used_b: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == g.len() {
            out.push(cur.clone());
            return;
        }
        rec(g, k + 1, used_a, used_b, cur, out);
        let e = &g.edges()[k];
        if !used_a[e.a] && !used_b[e.b] {
            used_a[e.a] = true;
            used_b[e.b] = true;
            cur.push(k);
            rec(g, k + 1, used_a, used_b, cur, out);
            cur.pop();
            used_a[e.a] = false;
            used_b[e.b] = false;
        }
    }
    let mut out = Vec::new();
    let mut used_a = vec![false; g.marker_count(crate::genome::Side::A)];
    let mut used_b = vec![false; g.marker_count(crate::genome::Side::B)];
    rec(g, 0, &mut used_a, &mut used_b, &mut Vec::new(), &mut out);
    out
}

/// Matchings to which no edge can be added.
pub fn maximal_matchings(g: &SimilarityGraph) -> Vec<Vec<usize>> {
    all_matchings(g)
        .into_iter()
        .filter(|m| {
            let mut used_a = vec![false; g.marker_count(crate::genome::Side::A)];
            let mut used_b = vec![false; g.marker_count(crate::genome::Side::B)];
            for &k in m {
                used_a[g.edges()[k].a] = true;
                used_b[g.edges()[k].b] = true;
            }
            g.edges().iter().all(|e| used_a[e.a] || used_b[e.b])
        })
        .collect()
}

type Evaluator = fn(&ConsistentDecomposition) -> Result<Rational, DecompositionError>;

fn minimize(
    d: &RelationalDiagram,
    matchings: Vec<Vec<usize>>,
    eval: Evaluator,
) -> Result<ExactResult, ExactError> {
    // sibling pair k corresponds to similarity edge k
    let cappings = all_cappings(d);
    let mut best: Option<ExactResult> = None;
    for m in matchings {
        let s = SiblingSet::new(d, m.iter().copied())?;
        for p in &cappings {
            let v = eval(&induce(d, &s, Some(p))?)?;
            if best.as_ref().map_or(true, |b| v < b.distance) {
                best = Some(ExactResult {
                    distance: v,
                    matching: m.clone(),
                    capping: p.clone(),
                });
            }
        }
    }
    Ok(best.expect("the empty matching always exists"))
}

/// Weighted family-free DCJ-indel distance by enumerating every matching
/// (empty and non-maximal included) and every capping-set.
pub fn ffd_exact(a: &Genome, b: &Genome, g: &SimilarityGraph, limits: Limits) -> Result<ExactResult, ExactError> {
    let d = build_capped(a, b, g);
    check_limits(g, &d, limits)?;
    minimize(&d, all_matchings(g), evaluate_weighted)
}

/// Unweighted family-free DCJ-indel distance over maximal matchings.
pub fn unwffd_exact(a: &Genome, b: &Genome, g: &SimilarityGraph, limits: Limits) -> Result<ExactResult, ExactError> {
    let d = build_capped(a, b, g);
    check_limits(g, &d, limits)?;
    minimize(&d, maximal_matchings(g), evaluate_unweighted)
}

/// Similarity graph joining each common marker of two family-based genomes
/// to itself with similarity 1.
pub fn identity_similarity(a: &Genome, b: &Genome) -> SimilarityGraph {
    let triples: Vec<(String, String, Rational)> = a
        .occurrences()
        .filter(|o| b.contains(&o.marker))
        .map(|o| (o.marker.clone(), o.marker.clone(), Rational::one()))
        .collect();
    SimilarityGraph::from_triples(a, b, triples).expect("markers come from the genomes")
}

/// Exact DCJ-indel distance of singular genomes: the full sibling-set of
/// common markers, minimized over capping-sets.
pub fn singular_dcj_indel_exact(a: &Genome, b: &Genome, limits: Limits) -> Result<Rational, ExactError> {
    for g in [a, b] {
        if g.has_repeats() {
            return Err(DiagramError::NotSingular(g.name().to_string()).into());
        }
    }
    let g = identity_similarity(a, b);
    let d = build_capped(a, b, &g);
    if d.p_star() > limits.max_caps {
        return Err(ExactError::TooLarge(format!("p* = {}, limit {}", d.p_star(), limits.max_caps)));
    }
    let s = SiblingSet::new(&d, 0..g.len())?;
    let mut best: Option<Rational> = None;
    for p in all_cappings(&d) {
        let v = evaluate_unweighted(&induce(&d, &s, Some(&p))?)?;
        if best.map_or(true, |b| v < b) {
            best = Some(v);
        }
    }
    Ok(best.expect("at least one capping-set"))
}

/// Renames every occurrence of every family so that both genomes become
/// family-free, and joins occurrences of the same family with similarity 1.
/// Occurrence `k` of family `m` becomes `m_a<k>` in A and `m_b<k>` in B.
pub fn balanced_reduction(a: &Genome, b: &Genome) -> Result<(Genome, Genome, SimilarityGraph), ExactError> {
    let mut counts: HashMap<&str, i64> = HashMap::new();
    for o in a.occurrences() {
        *counts.entry(o.marker.as_str()).or_default() += 1;
    }
    for o in b.occurrences() {
        *counts.entry(o.marker.as_str()).or_default() -= 1;
    }
    if counts.values().any(|&c| c != 0) {
        return Err(ExactError::NotBalanced);
    }
    let rename = |g: &Genome, tag: &str| -> (Genome, Vec<(String, String)>) {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let chroms = g
            .chromosomes()
            .iter()
            .map(|c| {
                let occs = c
                    .markers()
                    .iter()
                    .map(|o| {
                        let k = seen.entry(o.marker.clone()).or_default();
                        *k += 1;
                        let id = format!("{}_{}{}", o.marker, tag, k);
                        names.push((o.marker.clone(), id.clone()));
                        Occurrence::new(id, o.forward)
                    })
                    .collect();
                Chromosome::new(occs, c.topology()).expect("non-empty chromosome")
            })
            .collect();
        let renamed = Genome::new(g.name(), chroms).expect("renamed markers are unique");
        (renamed, names)
    };
    let (ra, names_a) = rename(a, "a");
    let (rb, names_b) = rename(b, "b");
    let mut triples = Vec::new();
    for (fa, ia) in &names_a {
        for (fb, ib) in &names_b {
            if fa == fb {
                triples.push((ia.clone(), ib.clone(), Rational::one()));
            }
        }
    }
    let g = SimilarityGraph::from_triples(&ra, &rb, triples).expect("markers come from the genomes");
    Ok((ra, rb, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dcj_distance_canonical, dcj_indel_circular, dcj_indel_upper_bound};
    use crate::genome::{parse_genomes, parse_genomes_with_repeats};
    use crate::numeric::{int, parse_decimal};
    use crate::similarity::parse_similarities;

    fn pair(text: &str) -> (Genome, Genome) {
        let gs = parse_genomes(text).unwrap();
        (gs[0].clone(), gs[1].clone())
    }

    const PAIR_5X6: &str = ">A\n1 2 3 4 5 |\n>B\n6 -7 -8 -9 10 11 |\n";
    const SIM_5X6: &str = "1 6 0.6\n1 7 0.1\n1 9 0.5\n2 7 0.3\n2 8 0.2\n3 7 0.3\n3 9 0.9\n4 8 0.9\n4 10 0.3\n5 10 0.7\n5 11 0.8\n";

    #[test]
    fn five_by_six_weighted() {
        let (a, b) = pair(PAIR_5X6);
        let g = parse_similarities(SIM_5X6, &a, &b).unwrap();
        let r = ffd_exact(&a, &b, &g, Limits::default()).unwrap();
        assert_eq!(r.distance, parse_decimal("5.1").unwrap());
        let pairs: Vec<(&str, &str)> = r
            .matching
            .iter()
            .map(|&k| (g.marker_id(crate::genome::Side::A, g.edges()[k].a), g.marker_id(crate::genome::Side::B, g.edges()[k].b)))
            .collect();
        assert_eq!(pairs, vec![("1", "6"), ("3", "9"), ("4", "8"), ("5", "11")]);
    }

    #[test]
    fn five_by_six_unweighted() {
        // the maximal matching 1-9 2-8 3-7 4-10 5-11 maps A onto 9 8 7 10 11:
        // one inversion of -7 -8 -9 plus deleting 6 sorts B, and two
        // operations are necessary since content and order both differ
        let (a, b) = pair(PAIR_5X6);
        let g = parse_similarities(SIM_5X6, &a, &b).unwrap();
        let r = unwffd_exact(&a, &b, &g, Limits::default()).unwrap();
        assert_eq!(r.distance, int(2));
        assert_eq!(r.matching.len(), 5);
    }

    #[test]
    fn empty_similarity() {
        let (a, b) = pair(">A\n1 2 |\n>B\n3 4 5 |\n");
        let g = SimilarityGraph::empty(&a, &b);
        assert_eq!(ffd_exact(&a, &b, &g, Limits::default()).unwrap().distance, int(2));
        assert_eq!(unwffd_exact(&a, &b, &g, Limits::default()).unwrap().distance, int(2));
    }

    #[test]
    fn relabeled_copy_is_at_distance_zero() {
        let (a, b) = pair(">A\n1 -2 3 |\n4 5 )\n>B\nx -y z |\nu v )\n");
        let sim = "1 x 1\n2 y 1\n3 z 1\n4 u 1\n5 v 1\n";
        let g = parse_similarities(sim, &a, &b).unwrap();
        assert_eq!(ffd_exact(&a, &b, &g, Limits::default()).unwrap().distance, int(0));
    }

    #[test]
    fn limits_enforced() {
        let (a, b) = pair(PAIR_5X6);
        let g = parse_similarities(SIM_5X6, &a, &b).unwrap();
        let tight = Limits { max_edges: 5, max_caps: 3 };
        assert!(matches!(ffd_exact(&a, &b, &g, tight), Err(ExactError::TooLarge(_))));
    }

    #[test]
    fn singular_agrees_with_closed_forms() {
        let (a, b) = pair(">A\n-6 1 7 8 -4 |\n3 -5 2 |\n>B\n-6 1 2 |\n3 -5 7 8 -4 |\n");
        assert_eq!(
            singular_dcj_indel_exact(&a, &b, Limits::default()).unwrap(),
            dcj_distance_canonical(&a, &b).unwrap()
        );
        let (a, b) = pair(">A\n1 2 3 )\n>B\n1 3 )\n");
        assert_eq!(
            singular_dcj_indel_exact(&a, &b, Limits::default()).unwrap(),
            dcj_indel_circular(&a, &b).unwrap()
        );
        let (a, b) = pair(">A\n-6 1 5 3 4 |\n2 8 9 |\n>B\n-6 5 -3 4 -7 2 |\n9 8 |\n");
        assert!(singular_dcj_indel_exact(&a, &b, Limits::default()).unwrap() <= dcj_indel_upper_bound(&a, &b).unwrap());
    }

    #[test]
    fn reduction_examples() {
        let gs = parse_genomes_with_repeats(">A\n1 1 |\n>B\n1 1 |\n").unwrap();
        let (_, _, g) = balanced_reduction(&gs[0], &gs[1]).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.edges().iter().all(|e| e.sigma == int(1)));
        let (a, b) = pair(">A\n1 2 |\n>B\n2 1 |\n");
        let (_, _, g) = balanced_reduction(&a, &b).unwrap();
        assert_eq!(g.len(), 2);
        let (a, b) = pair(">A\n1 2 |\n>B\n2 3 |\n");
        assert_eq!(balanced_reduction(&a, &b).unwrap_err(), ExactError::NotBalanced);
    }
}
