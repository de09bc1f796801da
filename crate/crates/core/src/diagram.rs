//! Relational diagrams over marker extremities.
//!
//! Three flavours share one representation:
//!
//! * the singular diagram `R(A, B)` of two family-based genomes, where every
//!   vertex has degree at most two;
//! * the family-free diagram, with a pair of sibling extremity edges per
//!   similarity edge and an indel edge for every marker;
//! * the capped family-free diagram, which adds `4 p*` cap extremities,
//!   telomere-to-cap adjacencies, artificial cap adjacencies and the complete
//!   bipartite set of cap edges.
//!
//! Vertex order is fixed: extremities of A (markers in file order, tail
//! before head), extremities of B, caps of A, caps of B. Edge order is
//! grouped by kind: adjacencies of A, adjacencies of B, extremity edges,
//! cap edges, indel edges of A, indel edges of B.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::genome::{End, Genome, Side, Topology};
use crate::numeric::{format_decimal, half, int, Rational};
use crate::similarity::SimilarityGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("genome `{0}` repeats a marker; the singular diagram needs each marker at most once")]
    NotSingular(String),
    #[error("vertex {0} has degree {1} in the selected edges")]
    NotDecomposed(String, usize),
    #[error("operation is only defined for cycles")]
    CyclesOnly,
    #[error("genomes have exclusive markers")]
    NotCanonical,
    #[error("genomes contain linear chromosomes")]
    NotCircular,
    #[error("diagram is already capped")]
    AlreadyCapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Marker { side: Side, marker: usize, end: End },
    /// Cap extremity; `index` is 1-based as in `A.cap1 .. A.cap{2p*}`.
    Cap { side: Side, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub label: String,
}

impl Vertex {
    pub fn side(&self) -> Side {
        match self.kind {
            VertexKind::Marker { side, .. } | VertexKind::Cap { side, .. } => side,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self.kind, VertexKind::Cap { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `artificial` marks cap-to-cap adjacencies.
    Adjacency { side: Side, artificial: bool },
    Extremity { pair: usize, end: End },
    Cap,
    Indel { side: Side, marker: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub kind: EdgeKind,
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_adjacency(&self) -> bool {
        matches!(self.kind, EdgeKind::Adjacency { .. })
    }

    pub fn is_indel(&self) -> bool {
        matches!(self.kind, EdgeKind::Indel { .. })
    }

    pub fn indel_side(&self) -> Option<Side> {
        match self.kind {
            EdgeKind::Indel { side, .. } => Some(side),
            _ => None,
        }
    }

    /// Extremity and cap edges both join the two genomes.
    pub fn crosses(&self) -> bool {
        matches!(self.kind, EdgeKind::Extremity { .. } | EdgeKind::Cap)
    }

    fn kind_tag(&self) -> String {
        match self.kind {
            EdgeKind::Adjacency { side, artificial: false } => format!("adj{}", side.tag()),
            EdgeKind::Adjacency { side, artificial: true } => format!("art{}", side.tag()),
            EdgeKind::Extremity { .. } => "ext".into(),
            EdgeKind::Cap => "cap".into(),
            EdgeKind::Indel { side, .. } => format!("id{}", side.tag()),
        }
    }
}

/// Two extremity edges created by one homology (similarity edge or common
/// marker); they are selected together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiblingPair {
    pub a: usize,
    pub b: usize,
    pub sigma: Rational,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularChromosome {
    pub side: Side,
    pub markers: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    Singular,
    FamilyFree,
    Capped,
}

#[derive(Debug, Clone)]
pub struct RelationalDiagram {
    kind: DiagramKind,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
    pairs: Vec<SiblingPair>,
    indel_edge: [Vec<Option<usize>>; 2],
    marker_counts: [usize; 2],
    telomeres: [Vec<usize>; 2],
    linear: [usize; 2],
    circulars: Vec<CircularChromosome>,
    p_star: usize,
    cap_base: usize,
}

fn side_ix(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

struct Layout {
    vertices: Vec<Vertex>,
    adjacencies: [Vec<(usize, usize)>; 2],
    telomeres: [Vec<usize>; 2],
    circulars: Vec<CircularChromosome>,
    marker_counts: [usize; 2],
    linear: [usize; 2],
}

fn marker_vertex(counts: &[usize; 2], side: Side, marker: usize, end: End) -> usize {
    let base = match side {
        Side::A => 0,
        Side::B => 2 * counts[0],
    };
    base + 2 * marker + usize::from(end == End::Head)
}

fn layout(a: &Genome, b: &Genome) -> Layout {
    let marker_counts = [a.marker_count(), b.marker_count()];
    let mut vertices = Vec::with_capacity(2 * (marker_counts[0] + marker_counts[1]));
    let mut adjacencies = [Vec::new(), Vec::new()];
    let mut telomeres = [Vec::new(), Vec::new()];
    let mut circulars = Vec::new();
    for (side, g) in [(Side::A, a), (Side::B, b)] {
        for (i, occ) in g.occurrences().enumerate() {
            for end in [End::Tail, End::Head] {
                vertices.push(Vertex {
                    kind: VertexKind::Marker { side, marker: i, end },
                    label: format!("{}.{}.{}", side.tag(), occ.marker, end.tag()),
                });
            }
        }
        let mut offset = 0;
        for chrom in g.chromosomes() {
            let occs = chrom.markers();
            let vx = |k: usize, end: End| marker_vertex(&marker_counts, side, offset + k, end);
            for k in 0..occs.len() - 1 {
                adjacencies[side_ix(side)].push((vx(k, occs[k].right()), vx(k + 1, occs[k + 1].left())));
            }
            match chrom.topology() {
                Topology::Circular => {
                    let last = occs.len() - 1;
                    adjacencies[side_ix(side)].push((vx(last, occs[last].right()), vx(0, occs[0].left())));
                    circulars.push(CircularChromosome {
                        side,
                        markers: (offset..offset + occs.len()).collect(),
                    });
                }
                Topology::Linear => {
                    let last = occs.len() - 1;
                    telomeres[side_ix(side)].push(vx(0, occs[0].left()));
                    telomeres[side_ix(side)].push(vx(last, occs[last].right()));
                }
            }
            offset += occs.len();
        }
    }
    Layout {
        vertices,
        adjacencies,
        telomeres,
        circulars,
        marker_counts,
        linear: [a.linear_count(), b.linear_count()],
    }
}

impl RelationalDiagram {
    fn assemble(
        kind: DiagramKind,
        lay: Layout,
        pairs: Vec<(usize, usize, Rational)>,
        indel: [Vec<Option<Rational>>; 2],
    ) -> RelationalDiagram {
        let counts = lay.marker_counts;
        let mut edges = Vec::new();
        for side in [Side::A, Side::B] {
            for &(u, v) in &lay.adjacencies[side_ix(side)] {
                edges.push(Edge {
                    kind: EdgeKind::Adjacency { side, artificial: false },
                    u,
                    v,
                    weight: Rational::zero(),
                });
            }
        }
        let mut sibling_pairs = Vec::with_capacity(pairs.len());
        for (p, (ma, mb, sigma)) in pairs.into_iter().enumerate() {
            let mut ids = [0usize; 2];
            for (k, end) in [End::Tail, End::Head].into_iter().enumerate() {
                ids[k] = edges.len();
                edges.push(Edge {
                    kind: EdgeKind::Extremity { pair: p, end },
                    u: marker_vertex(&counts, Side::A, ma, end),
                    v: marker_vertex(&counts, Side::B, mb, end),
                    weight: sigma,
                });
            }
            sibling_pairs.push(SiblingPair {
                a: ma,
                b: mb,
                sigma,
                tail: ids[0],
                head: ids[1],
            });
        }
        let cap_base = edges.len();
        let mut indel_edge = [vec![None; counts[0]], vec![None; counts[1]]];
        for side in [Side::A, Side::B] {
            for (m, w) in indel[side_ix(side)].iter().enumerate() {
                if let Some(w) = w {
                    indel_edge[side_ix(side)][m] = Some(edges.len());
                    edges.push(Edge {
                        kind: EdgeKind::Indel { side, marker: m },
                        u: marker_vertex(&counts, side, m, End::Tail),
                        v: marker_vertex(&counts, side, m, End::Head),
                        weight: *w,
                    });
                }
            }
        }
        let mut d = RelationalDiagram {
            kind,
            vertices: lay.vertices,
            edges,
            incidence: Vec::new(),
            pairs: sibling_pairs,
            indel_edge,
            marker_counts: counts,
            telomeres: lay.telomeres,
            linear: lay.linear,
            circulars: lay.circulars,
            p_star: 0,
            cap_base,
        };
        d.rebuild_incidence();
        d
    }

    fn rebuild_incidence(&mut self) {
        let mut incidence = vec![Vec::new(); self.vertices.len()];
        for (id, e) in self.edges.iter().enumerate() {
            incidence[e.u].push(id);
            incidence[e.v].push(id);
        }
        self.incidence = incidence;
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn is_capped(&self) -> bool {
        self.kind == DiagramKind::Capped
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn pairs(&self) -> &[SiblingPair] {
        &self.pairs
    }

    pub fn marker_count(&self, side: Side) -> usize {
        self.marker_counts[side_ix(side)]
    }

    pub fn indel_edge(&self, side: Side, marker: usize) -> Option<usize> {
        self.indel_edge[side_ix(side)][marker]
    }

    pub fn telomeres(&self, side: Side) -> &[usize] {
        &self.telomeres[side_ix(side)]
    }

    /// Number of linear chromosomes (kappa) of a genome.
    pub fn linear_count(&self, side: Side) -> usize {
        self.linear[side_ix(side)]
    }

    pub fn circular_chromosomes(&self) -> &[CircularChromosome] {
        &self.circulars
    }

    /// Number of caps per genome in the capped diagram, `max(kappa_A, kappa_B)`.
    pub fn p_star(&self) -> usize {
        self.p_star
    }

    /// Id of the cap edge joining `A.cap{i+1}` and `B.cap{j+1}` (0-based
    /// `i`, `j`).
    pub fn cap_edge(&self, i: usize, j: usize) -> usize {
        assert!(self.is_capped() && i < 2 * self.p_star && j < 2 * self.p_star);
        self.cap_base + i * 2 * self.p_star + j
    }

    pub fn cap_vertex(&self, side: Side, index: usize) -> usize {
        let base = 2 * (self.marker_counts[0] + self.marker_counts[1]);
        base + side_ix(side) * 2 * self.p_star + index - 1
    }

    pub fn count_edges(&self, pred: impl Fn(&EdgeKind) -> bool) -> usize {
        self.edges.iter().filter(|e| pred(&e.kind)).count()
    }

    /// Adds caps: `p* = max(kappa_A, kappa_B)` caps per genome, each
    /// telomere joined to its own cap extremity (chromosomes in file order,
    /// left telomere first), artificial adjacencies pairing the surplus caps
    /// of the genome with fewer linear chromosomes, and all cap edges.
    pub fn cap(&self) -> Result<RelationalDiagram, DiagramError> {
        if self.is_capped() {
            return Err(DiagramError::AlreadyCapped);
        }
        let p = self.linear[0].max(self.linear[1]);
        let mut vertices = self.vertices.clone();
        let first_cap = vertices.len();
        for side in [Side::A, Side::B] {
            for index in 1..=2 * p {
                vertices.push(Vertex {
                    kind: VertexKind::Cap { side, index },
                    label: format!("{}.cap{}", side.tag(), index),
                });
            }
        }
        let cap_vx = |side: Side, index: usize| first_cap + side_ix(side) * 2 * p + index - 1;

        let mut edges = Vec::with_capacity(self.edges.len() + 4 * p * p + 4 * p);
        let mut remap = vec![0usize; self.edges.len()];
        let mut carry = |edges: &mut Vec<Edge>, pred: &dyn Fn(&EdgeKind) -> bool| {
            for (id, e) in self.edges.iter().enumerate() {
                if pred(&e.kind) {
                    remap[id] = edges.len();
                    edges.push(e.clone());
                }
            }
        };
        for side in [Side::A, Side::B] {
            carry(&mut edges, &|k| matches!(k, EdgeKind::Adjacency { side: s, .. } if *s == side));
            for (k, &tel) in self.telomeres[side_ix(side)].iter().enumerate() {
                edges.push(Edge {
                    kind: EdgeKind::Adjacency { side, artificial: false },
                    u: tel,
                    v: cap_vx(side, k + 1),
                    weight: Rational::zero(),
                });
            }
            let kappa = self.linear[side_ix(side)];
            let mut i = 2 * kappa + 1;
            while i < 2 * p {
                edges.push(Edge {
                    kind: EdgeKind::Adjacency { side, artificial: true },
                    u: cap_vx(side, i),
                    v: cap_vx(side, i + 1),
                    weight: Rational::zero(),
                });
                i += 2;
            }
        }
        carry(&mut edges, &|k| matches!(k, EdgeKind::Extremity { .. }));
        let cap_base = edges.len();
        for i in 1..=2 * p {
            for j in 1..=2 * p {
                edges.push(Edge {
                    kind: EdgeKind::Cap,
                    u: cap_vx(Side::A, i),
                    v: cap_vx(Side::B, j),
                    weight: Rational::zero(),
                });
            }
        }
        carry(&mut edges, &|k| matches!(k, EdgeKind::Indel { .. }));

        let pairs = self
            .pairs
            .iter()
            .map(|p| SiblingPair {
                tail: remap[p.tail],
                head: remap[p.head],
                ..p.clone()
            })
            .collect();
        let indel_edge = [
            self.indel_edge[0].iter().map(|e| e.map(|id| remap[id])).collect(),
            self.indel_edge[1].iter().map(|e| e.map(|id| remap[id])).collect(),
        ];
        let mut d = RelationalDiagram {
            kind: DiagramKind::Capped,
            vertices,
            edges,
            incidence: Vec::new(),
            pairs,
            indel_edge,
            marker_counts: self.marker_counts,
            telomeres: self.telomeres.clone(),
            linear: self.linear,
            circulars: self.circulars.clone(),
            p_star: p,
            cap_base,
        };
        d.rebuild_incidence();
        Ok(d)
    }

    /// Line-oriented listing of vertices and typed edges:
    ///
    /// ```text
    /// diagram capped p*=1 vertices=26 edges=50
    /// v 1 A.1.t
    /// e 1 adjA A.1.h A.2.t 0
    /// ```
    ///
    /// Vertex and edge numbers are 1-based and match the LP variable names.
    pub fn dump(&self) -> String {
        let kind = match self.kind {
            DiagramKind::Singular => "singular",
            DiagramKind::FamilyFree => "family-free",
            DiagramKind::Capped => "capped",
        };
        let mut out = format!(
            "diagram {} p*={} vertices={} edges={}\n",
            kind,
            self.p_star,
            self.vertices.len(),
            self.edges.len()
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "v {} {}", i + 1, v.label);
        }
        for (i, e) in self.edges.iter().enumerate() {
            let _ = writeln!(
                out,
                "e {} {} {} {} {}",
                i + 1,
                e.kind_tag(),
                self.vertices[e.u].label,
                self.vertices[e.v].label,
                format_decimal(&e.weight)
            );
        }
        out
    }
}

/// Relational diagram `R(A, B)` of two family-based singular genomes:
/// extremity edges for every common marker (weight 1) and an indel edge for
/// every exclusive marker.
pub fn build_singular_diagram(a: &Genome, b: &Genome) -> Result<RelationalDiagram, DiagramError> {
    for g in [a, b] {
        if g.has_repeats() {
            return Err(DiagramError::NotSingular(g.name().to_string()));
        }
    }
    let lay = layout(a, b);
    let mut pairs = Vec::new();
    let mut indel_a = Vec::with_capacity(a.marker_count());
    for (ia, occ) in a.occurrences().enumerate() {
        match b.marker_index(&occ.marker) {
            Some(ib) => {
                pairs.push((ia, ib, Rational::one()));
                indel_a.push(None);
            }
            None => indel_a.push(Some(Rational::zero())),
        }
    }
    let indel_b = b
        .occurrences()
        .map(|occ| (!a.contains(&occ.marker)).then(Rational::zero))
        .collect();
    Ok(RelationalDiagram::assemble(
        DiagramKind::Singular,
        lay,
        pairs,
        [indel_a, indel_b],
    ))
}

/// Family-free relational diagram: a sibling pair per similarity edge
/// weighted by its similarity, and an indel edge per marker weighted by the
/// marker's largest incident similarity.
pub fn build_ffr(a: &Genome, b: &Genome, g: &SimilarityGraph) -> RelationalDiagram {
    let lay = layout(a, b);
    let pairs = g.edges().iter().map(|e| (e.a, e.b, e.sigma)).collect();
    let indel = [
        (0..a.marker_count()).map(|m| Some(g.indel_weight(Side::A, m))).collect(),
        (0..b.marker_count()).map(|m| Some(g.indel_weight(Side::B, m))).collect(),
    ];
    RelationalDiagram::assemble(DiagramKind::FamilyFree, lay, pairs, indel)
}

/// Capped family-free relational diagram.
pub fn build_capped(a: &Genome, b: &Genome, g: &SimilarityGraph) -> RelationalDiagram {
    build_ffr(a, b, g).cap().expect("fresh diagram is uncapped")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Cycle,
    /// Path whose ends lie in the given genomes (ordered as walked).
    Path(Side, Side),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Cycle,
    AbPath,
    AaPath,
    BbPath,
}

/// A cycle or path of a decomposition with its run statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub shape: Shape,
    /// Vertices in walk order (a cycle does not repeat its start).
    pub vertices: Vec<usize>,
    /// Edges in walk order.
    pub edges: Vec<usize>,
    /// Extremity plus cap edges.
    pub crossing_edges: usize,
    pub indel_edges: [usize; 2],
    pub runs: usize,
    pub transitions: usize,
    pub singleton: Option<(Side, Topology)>,
}

impl Component {
    pub fn kind(&self) -> ComponentKind {
        match self.shape {
            Shape::Cycle => ComponentKind::Cycle,
            Shape::Path(Side::A, Side::A) => ComponentKind::AaPath,
            Shape::Path(Side::B, Side::B) => ComponentKind::BbPath,
            Shape::Path(..) => ComponentKind::AbPath,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.shape == Shape::Cycle
    }

    /// Cycle with at least two extremity (or cap) edges.
    pub fn is_ab_cycle(&self) -> bool {
        self.is_cycle() && self.crossing_edges >= 2
    }

    pub fn is_indel_free(&self) -> bool {
        self.runs == 0
    }
}

/// Splits the selected edges (all edges when `selected` is `None`) into
/// vertex-disjoint cycles and paths. Every vertex must have degree at most
/// two in the selection.
pub fn components(
    d: &RelationalDiagram,
    selected: Option<&[bool]>,
) -> Result<Vec<Component>, DiagramError> {
    let on = |e: usize| selected.map_or(true, |s| s[e]);
    let n = d.vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        adj[v] = d.incidence[v].iter().copied().filter(|&e| on(e)).collect();
        if adj[v].len() > 2 {
            return Err(DiagramError::NotDecomposed(
                d.vertices[v].label.clone(),
                adj[v].len(),
            ));
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    // paths first, from their lower-numbered end
    for v in 0..n {
        if !seen[v] && adj[v].len() <= 1 {
            let (vs, es) = walk(d, &adj, v, adj[v].first().copied());
            for &w in &vs {
                seen[w] = true;
            }
            let shape = Shape::Path(d.vertices[v].side(), d.vertices[*vs.last().unwrap()].side());
            out.push(finish_component(d, shape, vs, es));
        }
    }
    for v in 0..n {
        if !seen[v] {
            // lowest vertex of a cycle; head toward the lower neighbour
            let first = *adj[v]
                .iter()
                .min_by_key(|&&e| (d.edges[e].other(v), e))
                .expect("cycle vertex has two edges");
            let (vs, es) = walk(d, &adj, v, Some(first));
            for &w in &vs {
                seen[w] = true;
            }
            out.push(finish_component(d, Shape::Cycle, vs, es));
        }
    }
    Ok(out)
}

fn walk(
    d: &RelationalDiagram,
    adj: &[Vec<usize>],
    start: usize,
    first: Option<usize>,
) -> (Vec<usize>, Vec<usize>) {
    let mut vs = vec![start];
    let mut es = Vec::new();
    let mut cur = start;
    let mut via = first;
    while let Some(e) = via {
        es.push(e);
        let next = d.edges[e].other(cur);
        if next == start {
            break;
        }
        vs.push(next);
        via = adj[next].iter().copied().find(|&f| f != e);
        cur = next;
    }
    (vs, es)
}

fn finish_component(d: &RelationalDiagram, shape: Shape, vertices: Vec<usize>, edges: Vec<usize>) -> Component {
    let mut crossing = 0;
    let mut indel = [0usize; 2];
    let mut adj_sides = [false; 2];
    for &e in &edges {
        let edge = &d.edges[e];
        match edge.kind {
            EdgeKind::Extremity { .. } | EdgeKind::Cap => crossing += 1,
            EdgeKind::Indel { side, .. } => indel[side_ix(side)] += 1,
            EdgeKind::Adjacency { side, .. } => adj_sides[side_ix(side)] = true,
        }
    }
    let cyclic = shape == Shape::Cycle;
    let seq: Vec<Side> = edges.iter().filter_map(|&e| d.edges[e].indel_side()).collect();
    let runs = count_runs(&seq, cyclic);
    let transitions = count_transitions(d, &edges, cyclic);
    let singleton = if crossing == 0 && !edges.is_empty() && !vertices.iter().any(|&v| d.vertices[v].is_cap()) {
        let side = d.vertices[vertices[0]].side();
        let topology = if cyclic {
            Topology::Circular
        } else {
            Topology::Linear
        };
        Some((side, topology))
    } else {
        None
    };
    Component {
        shape,
        vertices,
        edges,
        crossing_edges: crossing,
        indel_edges: indel,
        runs,
        transitions,
        singleton,
    }
}

/// Number of maximal blocks of same-genome indel edges in the walk.
fn count_runs(seq: &[Side], cyclic: bool) -> usize {
    if seq.is_empty() {
        return 0;
    }
    let starts = (0..seq.len())
        .filter(|&i| {
            if i == 0 {
                !cyclic || seq[seq.len() - 1] != seq[0]
            } else {
                seq[i - 1] != seq[i]
            }
        })
        .count();
    // a cycle whose indel edges all lie in one genome has a single run
    starts.max(1)
}

/// Indel-free stretches of the walk bounded by indel edges of different
/// genomes.
fn count_transitions(d: &RelationalDiagram, edges: &[usize], cyclic: bool) -> usize {
    let sides: Vec<Option<Side>> = edges.iter().map(|&e| d.edges[e].indel_side()).collect();
    let Some(first) = sides.iter().position(Option::is_some) else {
        return 0;
    };
    let n = sides.len();
    let span = if cyclic { n } else { n - first };
    let mut transitions = 0;
    let mut last = sides[first].unwrap();
    let mut gap = 0;
    for k in 1..=span {
        if !cyclic && first + k >= n {
            break;
        }
        match sides[(first + k) % n] {
            Some(s) => {
                if gap > 0 && s != last {
                    transitions += 1;
                }
                last = s;
                gap = 0;
            }
            None => gap += 1,
        }
    }
    transitions
}

/// Number of runs of a component.
pub fn count_runs_of(c: &Component) -> usize {
    c.runs
}

/// Indel-potential from the run count: `0` for indel-free components,
/// `ceil((runs + 1) / 2)` otherwise.
pub fn indel_potential(runs: usize) -> usize {
    if runs == 0 {
        0
    } else {
        (runs + 2) / 2
    }
}

/// Indel-potential of a cycle via its transitions: `r + transitions / 2`,
/// where `r` is 1 for indel-enclosing cycles.
pub fn lambda_via_transitions(c: &Component) -> Result<Rational, DiagramError> {
    if !c.is_cycle() {
        return Err(DiagramError::CyclesOnly);
    }
    let r = if c.runs >= 1 { int(1) } else { int(0) };
    Ok(r + Rational::from_integer(c.transitions as i64) * half())
}

fn common_markers(d: &RelationalDiagram) -> usize {
    d.pairs.len()
}

fn singular_summary(a: &Genome, b: &Genome) -> Result<(RelationalDiagram, Vec<Component>), DiagramError> {
    let d = build_singular_diagram(a, b)?;
    let comps = components(&d, None)?;
    Ok((d, comps))
}

/// `|G| - c - i/2` for canonical genomes (no exclusive markers), with `c`
/// AB-cycles and `i` AB-paths.
pub fn dcj_distance_canonical(a: &Genome, b: &Genome) -> Result<Rational, DiagramError> {
    let (d, comps) = singular_summary(a, b)?;
    if d.edges.iter().any(Edge::is_indel) {
        return Err(DiagramError::NotCanonical);
    }
    let c = comps.iter().filter(|c| c.is_ab_cycle()).count() as i64;
    let i = comps.iter().filter(|c| c.kind() == ComponentKind::AbPath).count() as i64;
    Ok(int(common_markers(&d) as i64 - c) - Rational::new(i, 2))
}

/// Exact DCJ-indel distance of singular circular genomes:
/// `|G| - c + sum of indel-potentials`.
pub fn dcj_indel_circular(a: &Genome, b: &Genome) -> Result<Rational, DiagramError> {
    if a.linear_count() + b.linear_count() > 0 {
        return Err(DiagramError::NotCircular);
    }
    let (d, comps) = singular_summary(a, b)?;
    let c = comps.iter().filter(|c| c.is_ab_cycle()).count() as i64;
    let lambda: usize = comps.iter().map(|c| indel_potential(c.runs)).sum();
    Ok(int(common_markers(&d) as i64 - c + lambda as i64))
}

/// Upper bound `|G| - c - i/2 + sum of indel-potentials` for singular
/// genomes; exact when no path recombination helps.
pub fn dcj_indel_upper_bound(a: &Genome, b: &Genome) -> Result<Rational, DiagramError> {
    let (d, comps) = singular_summary(a, b)?;
    let c = comps.iter().filter(|c| c.is_ab_cycle()).count() as i64;
    let i = comps.iter().filter(|c| c.kind() == ComponentKind::AbPath).count() as i64;
    let lambda: usize = comps.iter().map(|c| indel_potential(c.runs)).sum();
    Ok(int(common_markers(&d) as i64 - c + lambda as i64) - Rational::new(i, 2))
}
