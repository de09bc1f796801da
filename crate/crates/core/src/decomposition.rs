//! Sibling-sets, capping-sets and the decompositions they induce.

use num_traits::Zero;

use crate::diagram::{components, Component, DiagramError, EdgeKind, RelationalDiagram};
use crate::genome::{Side, Topology};
use crate::numeric::{half, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("sibling pairs {0} and {1} share a marker")]
    NotASiblingSet(usize, usize),
    #[error("sibling pair {0} does not exist")]
    UnknownPair(usize),
    #[error("capping-set is not a perfect matching of the {0} cap extremities per genome")]
    NotMaximalCapping(usize),
    #[error("evaluation needs a capped diagram")]
    CappedOnly,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A set of sibling pairs no two of which touch the same marker; it stands
/// for a matching of the similarity graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SiblingSet {
    pairs: Vec<usize>,
}

impl SiblingSet {
    pub fn new(d: &RelationalDiagram, pairs: impl IntoIterator<Item = usize>) -> Result<Self, DecompositionError> {
        let mut pairs: Vec<usize> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut owner_a = vec![None; d.marker_count(Side::A)];
        let mut owner_b = vec![None; d.marker_count(Side::B)];
        for &p in &pairs {
            let sp = d.pairs().get(p).ok_or(DecompositionError::UnknownPair(p))?;
            for (owner, m) in [(&mut owner_a, sp.a), (&mut owner_b, sp.b)] {
                if let Some(q) = owner[m] {
                    return Err(DecompositionError::NotASiblingSet(q, p));
                }
                owner[m] = Some(p);
            }
        }
        Ok(SiblingSet { pairs })
    }

    pub fn empty() -> Self {
        SiblingSet::default()
    }

    pub fn pairs(&self) -> &[usize] {
        &self.pairs
    }

    /// Number of extremity edges, twice the matching size.
    pub fn size(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Total edge weight, twice the matching weight.
    pub fn weight(&self, d: &RelationalDiagram) -> Rational {
        self.pairs.iter().map(|&p| d.pairs()[p].sigma).sum::<Rational>() * int(2)
    }

    /// True when no further pair could be added, i.e. the matching is
    /// maximal.
    pub fn is_maximal(&self, d: &RelationalDiagram) -> bool {
        let (used_a, used_b) = self.used_markers(d);
        d.pairs().iter().all(|p| used_a[p.a] || used_b[p.b])
    }

    fn used_markers(&self, d: &RelationalDiagram) -> (Vec<bool>, Vec<bool>) {
        let mut used_a = vec![false; d.marker_count(Side::A)];
        let mut used_b = vec![false; d.marker_count(Side::B)];
        for &p in &self.pairs {
            used_a[d.pairs()[p].a] = true;
            used_b[d.pairs()[p].b] = true;
        }
        (used_a, used_b)
    }
}

/// Perfect matching between A-cap and B-cap extremities: `targets[i]` is the
/// 0-based B cap joined to A cap `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CappingSet {
    targets: Vec<usize>,
}

impl CappingSet {
    pub fn new(d: &RelationalDiagram, targets: Vec<usize>) -> Result<Self, DecompositionError> {
        let n = 2 * d.p_star();
        let mut seen = vec![false; n];
        if targets.len() != n {
            return Err(DecompositionError::NotMaximalCapping(n));
        }
        for &t in &targets {
            if t >= n || seen[t] {
                return Err(DecompositionError::NotMaximalCapping(n));
            }
            seen[t] = true;
        }
        Ok(CappingSet { targets })
    }

    /// Builds the capping-set from selected cap edge ids.
    pub fn from_edges(d: &RelationalDiagram, edges: &[usize]) -> Result<Self, DecompositionError> {
        let n = 2 * d.p_star();
        let mut targets = vec![usize::MAX; n];
        for &e in edges {
            let edge = &d.edges()[e];
            let (Some(i), Some(j)) = (cap_index(d, edge.u), cap_index(d, edge.v)) else {
                return Err(DecompositionError::NotMaximalCapping(n));
            };
            if targets[i] != usize::MAX {
                return Err(DecompositionError::NotMaximalCapping(n));
            }
            targets[i] = j;
        }
        CappingSet::new(d, targets)
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn edges(&self, d: &RelationalDiagram) -> Vec<usize> {
        self.targets
            .iter()
            .enumerate()
            .map(|(i, &j)| d.cap_edge(i, j))
            .collect()
    }
}

fn cap_index(d: &RelationalDiagram, v: usize) -> Option<usize> {
    match d.vertices()[v].kind {
        crate::diagram::VertexKind::Cap { index, .. } => Some(index - 1),
        _ => None,
    }
}

/// Decomposition induced by a sibling-set (and a capping-set when the
/// diagram is capped), with the statistics the distance formulas need.
#[derive(Debug, Clone)]
pub struct ConsistentDecomposition {
    pub capped: bool,
    pub p_star: usize,
    pub sibling_set: SiblingSet,
    pub capping: Option<CappingSet>,
    pub selected: Vec<bool>,
    pub components: Vec<Component>,
    /// AB-cycles.
    pub ab_cycles: usize,
    /// Indel-free AB-cycles.
    pub indel_free_ab_cycles: usize,
    pub circular_singletons: usize,
    pub transitions: usize,
    pub sibling_weight: Rational,
    /// Weight of the indel edges of unmatched markers.
    pub complement_weight: Rational,
}

impl ConsistentDecomposition {
    pub fn selected_edges(&self) -> Vec<usize> {
        (0..self.selected.len()).filter(|&e| self.selected[e]).collect()
    }

    /// Components that contain indel edges.
    pub fn indel_enclosing(&self) -> usize {
        self.components.iter().filter(|c| c.runs > 0).count()
    }
}

/// Selects all adjacencies, the sibling pairs of `s`, the cap edges of `p`
/// and the indel edges of every marker left unmatched by `s`.
pub fn induce(
    d: &RelationalDiagram,
    s: &SiblingSet,
    p: Option<&CappingSet>,
) -> Result<ConsistentDecomposition, DecompositionError> {
    let n_caps = 2 * d.p_star();
    let capping = match (d.is_capped(), p) {
        (true, Some(p)) => Some(CappingSet::new(d, p.targets.clone())?),
        (true, None) if n_caps == 0 => Some(CappingSet::default()),
        (true, None) => return Err(DecompositionError::NotMaximalCapping(n_caps)),
        (false, None) => None,
        (false, Some(p)) if p.targets.is_empty() => None,
        (false, Some(_)) => return Err(DecompositionError::NotMaximalCapping(0)),
    };
    // re-validates the set against this diagram
    let s = SiblingSet::new(d, s.pairs.iter().copied())?;
    let (used_a, used_b) = s.used_markers(d);

    let mut selected = vec![false; d.edges().len()];
    for (id, e) in d.edges().iter().enumerate() {
        selected[id] = match e.kind {
            EdgeKind::Adjacency { .. } => true,
            EdgeKind::Indel { side: Side::A, marker } => !used_a[marker],
            EdgeKind::Indel { side: Side::B, marker } => !used_b[marker],
            EdgeKind::Extremity { .. } | EdgeKind::Cap => false,
        };
    }
    for &p in s.pairs() {
        selected[d.pairs()[p].tail] = true;
        selected[d.pairs()[p].head] = true;
    }
    if let Some(c) = &capping {
        for e in c.edges(d) {
            selected[e] = true;
        }
    }
    let comps = components(d, Some(&selected))?;

    let ab_cycles = comps.iter().filter(|c| c.is_ab_cycle()).count();
    let indel_free_ab_cycles = comps.iter().filter(|c| c.is_ab_cycle() && c.is_indel_free()).count();
    let circular_singletons = comps
        .iter()
        .filter(|c| matches!(c.singleton, Some((_, Topology::Circular))))
        .count();
    let transitions = comps.iter().map(|c| c.transitions).sum();
    let complement_weight = d
        .edges()
        .iter()
        .enumerate()
        .filter(|(id, e)| selected[*id] && e.is_indel())
        .map(|(_, e)| e.weight)
        .sum();
    Ok(ConsistentDecomposition {
        capped: d.is_capped(),
        p_star: d.p_star(),
        sibling_weight: s.weight(d),
        sibling_set: s,
        capping,
        selected,
        components: comps,
        ab_cycles,
        indel_free_ab_cycles,
        circular_singletons,
        transitions,
        complement_weight,
    })
}

fn shared_terms(q: &ConsistentDecomposition) -> Result<Rational, DecompositionError> {
    if !q.capped {
        return Err(DecompositionError::CappedOnly);
    }
    Ok(int(q.p_star as i64) - int(q.indel_free_ab_cycles as i64)
        + int(q.circular_singletons as i64)
        + int(q.transitions as i64) * half())
}

/// `p* + |S|/2 - indel-free AB-cycles + circular singletons + transitions/2`.
pub fn evaluate_unweighted(q: &ConsistentDecomposition) -> Result<Rational, DecompositionError> {
    Ok(shared_terms(q)? + Rational::new(q.sibling_set.size() as i64, 2))
}

/// `p* + |S| - indel-free AB-cycles + circular singletons + transitions/2
///  - w(S)/2 + w(complement)`.
pub fn evaluate_weighted(q: &ConsistentDecomposition) -> Result<Rational, DecompositionError> {
    Ok(shared_terms(q)? + int(q.sibling_set.size() as i64) - q.sibling_weight * half()
        + q.complement_weight)
}

/// Every capping-set of a capped diagram, as permutations of the B caps in
/// lexicographic order.
pub fn all_cappings(d: &RelationalDiagram) -> Vec<CappingSet> {
    let n = 2 * d.p_star();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(CappingSet { targets: perm.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// Minimum of an evaluator over every capping-set, returning the first
/// minimizer.
pub fn best_capping(
    d: &RelationalDiagram,
    s: &SiblingSet,
    eval: fn(&ConsistentDecomposition) -> Result<Rational, DecompositionError>,
) -> Result<(Rational, CappingSet), DecompositionError> {
    let mut best: Option<(Rational, CappingSet)> = None;
    for p in all_cappings(d) {
        let v = eval(&induce(d, s, Some(&p))?)?;
        if best.as_ref().map_or(true, |(b, _)| v < *b) {
            best = Some((v, p));
        }
    }
    Ok(best.expect("at least one capping-set"))
}

/// Sum of indel weights, handy for the empty-matching checks.
pub fn total_indel_weight(d: &RelationalDiagram) -> Rational {
    d.edges()
        .iter()
        .filter(|e| e.is_indel())
        .fold(Rational::zero(), |acc, e| acc + e.weight)
}
