//! Marker similarity graph between two family-free genomes.
//!
//! Similarities are read from a TSV file with one `idA idB sigma` row per
//! pair. Edges are kept sorted by `(idA, idB)`; every downstream structure
//! (diagram edge order, matching enumeration, LP variable order) inherits
//! that order.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::genome::{Genome, Side};
use crate::numeric::{parse_decimal, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimilarityError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown marker `{marker}` in genome {side:?}")]
    UnknownMarker {
        line: usize,
        side: Side,
        marker: String,
    },
    #[error("line {line}: similarity {value} outside [0, 1]")]
    SimilarityRange { line: usize, value: String },
    #[error("line {line}: duplicate pair ({a}, {b})")]
    DuplicatePair { line: usize, a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityEdge {
    /// Marker index in genome A.
    pub a: usize,
    /// Marker index in genome B.
    pub b: usize,
    pub sigma: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityGraph {
    a_ids: Vec<String>,
    b_ids: Vec<String>,
    edges: Vec<SimilarityEdge>,
    threshold: Rational,
}

impl SimilarityGraph {
    /// Graph without edges over the markers of `a` and `b`.
    pub fn empty(a: &Genome, b: &Genome) -> Self {
        SimilarityGraph {
            a_ids: a.marker_ids().into_iter().map(String::from).collect(),
            b_ids: b.marker_ids().into_iter().map(String::from).collect(),
            edges: Vec::new(),
            threshold: Rational::zero(),
        }
    }

    /// Builds a graph from `(idA, idB, sigma)` triples with the same checks
    /// as [`parse_similarities`]; the reported line is the triple's 1-based
    /// position.
    pub fn from_triples<S: AsRef<str>>(
        a: &Genome,
        b: &Genome,
        triples: impl IntoIterator<Item = (S, S, Rational)>,
    ) -> Result<Self, SimilarityError> {
        let mut g = Self::empty(a, b);
        let mut seen = HashSet::new();
        for (i, (ida, idb, sigma)) in triples.into_iter().enumerate() {
            g.push_checked(a, b, ida.as_ref(), idb.as_ref(), sigma, i + 1, &mut seen)?;
        }
        g.sort();
        Ok(g)
    }

    #[allow(clippy::too_many_arguments)]
    fn push_checked(
        &mut self,
        a: &Genome,
        b: &Genome,
        ida: &str,
        idb: &str,
        sigma: Rational,
        line: usize,
        seen: &mut HashSet<(usize, usize)>,
    ) -> Result<(), SimilarityError> {
        let ia = a.marker_index(ida).ok_or_else(|| SimilarityError::UnknownMarker {
            line,
            side: Side::A,
            marker: ida.to_string(),
        })?;
        let ib = b.marker_index(idb).ok_or_else(|| SimilarityError::UnknownMarker {
            line,
            side: Side::B,
            marker: idb.to_string(),
        })?;
        if sigma < Rational::zero() || sigma > Rational::one() {
            return Err(SimilarityError::SimilarityRange {
                line,
                value: crate::numeric::format_decimal(&sigma),
            });
        }
        if !seen.insert((ia, ib)) {
            return Err(SimilarityError::DuplicatePair {
                line,
                a: ida.to_string(),
                b: idb.to_string(),
            });
        }
        self.edges.push(SimilarityEdge { a: ia, b: ib, sigma });
        Ok(())
    }

    fn sort(&mut self) {
        let (a_ids, b_ids) = (&self.a_ids, &self.b_ids);
        self.edges
            .sort_by(|x, y| (&a_ids[x.a], &b_ids[x.b]).cmp(&(&a_ids[y.a], &b_ids[y.b])));
    }

    pub fn edges(&self) -> &[SimilarityEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn threshold(&self) -> Rational {
        self.threshold
    }

    pub fn marker_count(&self, side: Side) -> usize {
        match side {
            Side::A => self.a_ids.len(),
            Side::B => self.b_ids.len(),
        }
    }

    pub fn marker_id(&self, side: Side, index: usize) -> &str {
        match side {
            Side::A => &self.a_ids[index],
            Side::B => &self.b_ids[index],
        }
    }

    /// Similarity of the pair, if an edge exists.
    pub fn sigma(&self, a: usize, b: usize) -> Option<Rational> {
        self.edges.iter().find(|e| e.a == a && e.b == b).map(|e| e.sigma)
    }

    pub fn incident(&self, side: Side, marker: usize) -> impl Iterator<Item = &SimilarityEdge> {
        self.edges.iter().filter(move |e| match side {
            Side::A => e.a == marker,
            Side::B => e.b == marker,
        })
    }

    /// Weight of a marker's indel edge: the largest similarity among its
    /// incident edges, or 0 for a marker without edges.
    pub fn indel_weight(&self, side: Side, marker: usize) -> Rational {
        self.incident(side, marker)
            .map(|e| e.sigma)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn indel_weight_by_id(&self, side: Side, id: &str) -> Option<Rational> {
        let ids = match side {
            Side::A => &self.a_ids,
            Side::B => &self.b_ids,
        };
        ids.iter()
            .position(|m| m == id)
            .map(|i| self.indel_weight(side, i))
    }

    /// Keeps edges with `sigma >= x`, or `sigma > 0` when `x == 0`.
    pub fn apply_threshold(&self, x: Rational) -> SimilarityGraph {
        let keep = |s: &Rational| if x.is_zero() { !s.is_zero() } else { *s >= x };
        SimilarityGraph {
            a_ids: self.a_ids.clone(),
            b_ids: self.b_ids.clone(),
            edges: self.edges.iter().filter(|e| keep(&e.sigma)).cloned().collect(),
            threshold: x,
        }
    }

    /// The same graph seen from B to A.
    pub fn transposed(&self) -> SimilarityGraph {
        let mut g = SimilarityGraph {
            a_ids: self.b_ids.clone(),
            b_ids: self.a_ids.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| SimilarityEdge {
                    a: e.b,
                    b: e.a,
                    sigma: e.sigma,
                })
                .collect(),
            threshold: self.threshold,
        };
        g.sort();
        g
    }

    /// Re-targets the graph to genomes with the same marker ids in possibly
    /// different positions (e.g. after reordering chromosomes).
    pub fn reindexed(&self, a: &Genome, b: &Genome) -> Option<SimilarityGraph> {
        let triples: Vec<(String, String, Rational)> = self
            .edges
            .iter()
            .map(|e| (self.a_ids[e.a].clone(), self.b_ids[e.b].clone(), e.sigma))
            .collect();
        let mut g = Self::from_triples(a, b, triples).ok()?;
        g.threshold = self.threshold;
        Some(g)
    }

    pub fn to_tsv(&self) -> String {
        self.edges
            .iter()
            .map(|e| {
                format!(
                    "{}\t{}\t{}\n",
                    self.a_ids[e.a],
                    self.b_ids[e.b],
                    crate::numeric::format_decimal(&e.sigma)
                )
            })
            .collect()
    }
}

/// Parses a similarity TSV (`idA<TAB>idB<TAB>sigma`, `#` comments). Fields
/// may also be separated by runs of spaces.
pub fn parse_similarities(text: &str, a: &Genome, b: &Genome) -> Result<SimilarityGraph, SimilarityError> {
    let mut g = SimilarityGraph::empty(a, b);
    let mut seen = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(SimilarityError::Parse {
                line,
                message: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let sigma = parse_decimal(fields[2]).map_err(|e| SimilarityError::Parse {
            line,
            message: e.to_string(),
        })?;
        g.push_checked(a, b, fields[0], fields[1], sigma, line, &mut seen)?;
    }
    g.sort();
    Ok(g)
}
