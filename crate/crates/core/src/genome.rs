//! Genomes as ordered signed markers on linear and circular chromosomes, and
//! the UniMoG-style text format used to read and write them.
//!
//! ```text
//! # comment
//! >A
//! -6 1 5 3 4 |
//! 2 8 9 |
//! >G
//! 3 -5 2 )
//! ```
//!
//! `|` closes a linear chromosome and `)` a circular one. Marker ids are
//! opaque strings; a leading `-` marks reverse orientation, a leading `+` is
//! accepted and dropped.

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenomeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("genome `{genome}`: marker `{marker}` occurs more than once")]
    DuplicateMarker { genome: String, marker: String },
    #[error("line {line}: empty chromosome")]
    EmptyChromosome { line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topology {
    Linear,
    Circular,
}

/// Which of the two compared genomes an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::B => "B",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn tag(self) -> char {
        match self {
            End::Tail => 't',
            End::Head => 'h',
        }
    }
}

/// One signed occurrence of a marker on a chromosome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub marker: String,
    pub forward: bool,
}

impl Occurrence {
    pub fn new(marker: impl Into<String>, forward: bool) -> Self {
        Occurrence {
            marker: marker.into(),
            forward,
        }
    }

    /// Extremity met first when reading the chromosome left to right.
    pub fn left(&self) -> End {
        if self.forward {
            End::Tail
        } else {
            End::Head
        }
    }

    pub fn right(&self) -> End {
        if self.forward {
            End::Head
        } else {
            End::Tail
        }
    }

    fn flipped(&self) -> Self {
        Occurrence {
            marker: self.marker.clone(),
            forward: !self.forward,
        }
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forward {
            write!(f, "{}", self.marker)
        } else {
            write!(f, "-{}", self.marker)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    markers: Vec<Occurrence>,
    topology: Topology,
}

impl Chromosome {
    /// Builds a chromosome; circular ones are rotated (and reversed if
    /// needed) so that the smallest marker id comes first in forward
    /// orientation. Returns `None` for an empty marker list.
    pub fn new(markers: Vec<Occurrence>, topology: Topology) -> Option<Self> {
        if markers.is_empty() {
            return None;
        }
        let markers = match topology {
            Topology::Linear => markers,
            Topology::Circular => canonical_rotation(markers),
        };
        Some(Chromosome { markers, topology })
    }

    pub fn linear(markers: Vec<Occurrence>) -> Option<Self> {
        Self::new(markers, Topology::Linear)
    }

    pub fn circular(markers: Vec<Occurrence>) -> Option<Self> {
        Self::new(markers, Topology::Circular)
    }

    pub fn markers(&self) -> &[Occurrence] {
        &self.markers
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_linear(&self) -> bool {
        self.topology == Topology::Linear
    }

    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    /// The same chromosome read in the opposite direction.
    pub fn reversed(&self) -> Chromosome {
        let markers = self.markers.iter().rev().map(Occurrence::flipped).collect();
        Chromosome::new(markers, self.topology).expect("non-empty")
    }
}

fn canonical_rotation(mut markers: Vec<Occurrence>) -> Vec<Occurrence> {
    let pos = markers
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.marker.cmp(&b.marker))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if !markers[pos].forward {
        markers.reverse();
        for occ in markers.iter_mut() {
            occ.forward = !occ.forward;
        }
        let pos = markers.len() - 1 - pos;
        markers.rotate_left(pos);
    } else {
        markers.rotate_left(pos);
    }
    markers
}

/// A named genome. Strict genomes (the default) have pairwise distinct
/// marker ids, as required in the family-free setting; genomes built with
/// [`Genome::with_repeats`] may repeat a family id.
#[derive(Debug, Clone)]
pub struct Genome {
    name: String,
    chromosomes: Vec<Chromosome>,
    index: HashMap<String, usize>,
    repeats: bool,
}

impl PartialEq for Genome {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.chromosomes == other.chromosomes
    }
}

impl Eq for Genome {}

impl Genome {
    pub fn new(name: impl Into<String>, chromosomes: Vec<Chromosome>) -> Result<Self, GenomeError> {
        let name = name.into();
        let mut index = HashMap::new();
        for (i, occ) in chromosomes.iter().flat_map(|c| c.markers.iter()).enumerate() {
            if index.insert(occ.marker.clone(), i).is_some() {
                return Err(GenomeError::DuplicateMarker {
                    genome: name,
                    marker: occ.marker.clone(),
                });
            }
        }
        Ok(Genome {
            name,
            chromosomes,
            index,
            repeats: false,
        })
    }

    /// Family-based genome whose marker ids may repeat. The id index then
    /// points at the first occurrence.
    pub fn with_repeats(name: impl Into<String>, chromosomes: Vec<Chromosome>) -> Self {
        let mut index = HashMap::new();
        let mut repeats = false;
        for (i, occ) in chromosomes.iter().flat_map(|c| c.markers.iter()).enumerate() {
            if index.contains_key(&occ.marker) {
                repeats = true;
            } else {
                index.insert(occ.marker.clone(), i);
            }
        }
        Genome {
            name: name.into(),
            chromosomes,
            index,
            repeats,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Genome {
        let mut g = self.clone();
        g.name = name.into();
        g
    }

    pub fn chromosomes(&self) -> &[Chromosome] {
        &self.chromosomes
    }

    pub fn has_repeats(&self) -> bool {
        self.repeats
    }

    /// Occurrences in file order; for strict genomes the position in this
    /// sequence is the marker's index.
    pub fn occurrences(&self) -> impl Iterator<Item = &Occurrence> {
        self.chromosomes.iter().flat_map(|c| c.markers.iter())
    }

    pub fn marker_count(&self) -> usize {
        self.chromosomes.iter().map(Chromosome::len).sum()
    }

    pub fn marker_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn marker_id(&self, index: usize) -> &str {
        self.occurrences()
            .nth(index)
            .map(|o| o.marker.as_str())
            .expect("marker index in range")
    }

    pub fn marker_ids(&self) -> Vec<&str> {
        self.occurrences().map(|o| o.marker.as_str()).collect()
    }

    pub fn linear_count(&self) -> usize {
        self.chromosomes.iter().filter(|c| c.is_linear()).count()
    }

    pub fn circular_count(&self) -> usize {
        self.chromosomes.len() - self.linear_count()
    }

    pub fn stats(&self) -> GenomeStats {
        genome_stats(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenomeStats {
    pub markers: usize,
    pub linear: usize,
    pub circular: usize,
    pub telomeres: usize,
}

pub fn genome_stats(g: &Genome) -> GenomeStats {
    let linear = g.linear_count();
    GenomeStats {
        markers: g.marker_count(),
        linear,
        circular: g.circular_count(),
        telomeres: 2 * linear,
    }
}

/// Parses a genome file into strict (family-free) genomes.
pub fn parse_genomes(text: &str) -> Result<Vec<Genome>, GenomeError> {
    parse_impl(text, true)
}

/// Parses a genome file allowing repeated marker ids within a genome.
pub fn parse_genomes_with_repeats(text: &str) -> Result<Vec<Genome>, GenomeError> {
    parse_impl(text, false)
}

fn parse_impl(text: &str, strict: bool) -> Result<Vec<Genome>, GenomeError> {
    let mut out = Vec::new();
    let mut current: Option<(String, Vec<Chromosome>)> = None;

    let finish = |cur: Option<(String, Vec<Chromosome>)>, out: &mut Vec<Genome>| {
        if let Some((name, chroms)) = cur {
            let g = if strict {
                Genome::new(name, chroms)?
            } else {
                Genome::with_repeats(name, chroms)
            };
            out.push(g);
        }
        Ok::<(), GenomeError>(())
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('>') {
            finish(current.take(), &mut out)?;
            let name = name.trim();
            if name.is_empty() {
                return Err(GenomeError::Parse {
                    line: line_no,
                    message: "missing genome name".into(),
                });
            }
            current = Some((name.to_string(), Vec::new()));
            continue;
        }
        let Some((_, chroms)) = current.as_mut() else {
            return Err(GenomeError::Parse {
                line: line_no,
                message: "chromosome before any `>name` line".into(),
            });
        };
        chroms.push(parse_chromosome(line, line_no)?);
    }
    finish(current, &mut out)?;
    Ok(out)
}

fn parse_chromosome(line: &str, line_no: usize) -> Result<Chromosome, GenomeError> {
    let parse_err = |message: String| GenomeError::Parse {
        line: line_no,
        message,
    };
    let (body, topology) = if let Some(b) = line.strip_suffix('|') {
        (b, Topology::Linear)
    } else if let Some(b) = line.strip_suffix(')') {
        (b, Topology::Circular)
    } else {
        return Err(parse_err("chromosome must end with `|` or `)`".into()));
    };
    let mut markers = Vec::new();
    for token in body.split_whitespace() {
        let (forward, id) = match token.as_bytes()[0] {
            b'-' => (false, &token[1..]),
            b'+' => (true, &token[1..]),
            _ => (true, token),
        };
        if id.is_empty()
            || id.starts_with(['-', '+'])
            || id.contains(['|', ')', '(', '>', '#'])
        {
            return Err(parse_err(format!("malformed marker token `{token}`")));
        }
        markers.push(Occurrence::new(id, forward));
    }
    Chromosome::new(markers, topology).ok_or(GenomeError::EmptyChromosome { line: line_no })
}

pub fn render_genome(g: &Genome) -> String {
    let mut out = format!(">{}\n", g.name);
    for c in &g.chromosomes {
        let tokens: Vec<String> = c.markers.iter().map(ToString::to_string).collect();
        let term = match c.topology {
            Topology::Linear => '|',
            Topology::Circular => ')',
        };
        out.push_str(&tokens.join(" "));
        out.push(' ');
        out.push(term);
        out.push('\n');
    }
    out
}

pub fn render_genomes(genomes: &[Genome]) -> String {
    genomes.iter().map(render_genome).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> Genome {
        let mut gs = parse_genomes(text).unwrap();
        assert_eq!(gs.len(), 1);
        gs.remove(0)
    }

    #[test]
    fn parses_linear_chromosome() {
        let g = one(">A\n1 2 3 4 5 |");
        assert_eq!(g.name(), "A");
        assert_eq!(g.chromosomes().len(), 1);
        assert!(g.chromosomes()[0].is_linear());
        assert_eq!(g.marker_ids(), vec!["1", "2", "3", "4", "5"]);
    }

    #[test]
    fn circular_rotation_and_reversal_are_equal() {
        let g1 = one(">G\n3 -5 2 )");
        let g2 = one(">G\n-2 5 -3 )");
        assert_eq!(g1, g2);
        assert_eq!(render_genome(&g1), ">G\n2 3 -5 )\n");
    }

    #[test]
    fn circular_with_negative_smallest_is_reversed() {
        let g = one(">G\n-1 4 )");
        let ids: Vec<String> = g.chromosomes()[0].markers().iter().map(|o| o.to_string()).collect();
        assert_eq!(ids, vec!["1", "-4"]);
    }

    #[test]
    fn duplicate_marker_rejected() {
        assert!(matches!(
            parse_genomes(">X\n1 2 1 |"),
            Err(GenomeError::DuplicateMarker { .. })
        ));
        assert!(matches!(
            parse_genomes(">X\n1 2 |\n3 -1 )"),
            Err(GenomeError::DuplicateMarker { .. })
        ));
        let g = parse_genomes_with_repeats(">X\n1 2 1 |").unwrap();
        assert!(g[0].has_repeats());
    }

    #[test]
    fn empty_chromosome_rejected() {
        assert_eq!(
            parse_genomes(">X\n1 2 |\n|").unwrap_err(),
            GenomeError::EmptyChromosome { line: 3 }
        );
    }

    #[test]
    fn malformed_tokens_report_line() {
        for text in [">X\n1 - 2 |", ">X\n\n1 2", ">X\n1 (2 |", ">X\n1 --2 |", "1 2 |"] {
            match parse_genomes(text) {
                Err(GenomeError::Parse { line, .. }) => assert!(line >= 1),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        match parse_genomes(">X\n# c\n\n1 2") {
            Err(GenomeError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_blank_lines_and_attached_terminators() {
        let gs = parse_genomes("# header\n>A\n\n1 +2 -3|\n>B\n4 5)\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0].marker_count(), 3);
        assert!(!gs[0].chromosomes()[0].markers()[2].forward);
        assert_eq!(gs[1].circular_count(), 1);
    }

    #[test]
    fn genome_without_chromosomes() {
        let gs = parse_genomes(">E\n>F\n1 |").unwrap();
        assert_eq!(gs[0].marker_count(), 0);
        assert_eq!(gs[1].marker_count(), 1);
    }

    #[test]
    fn stats_examples() {
        let s = one(">A\n1 2 3 4 5 |").stats();
        assert_eq!((s.markers, s.linear, s.circular, s.telomeres), (5, 1, 0, 2));
        let s = one(">A\n-6 1 5 3 4 |\n2 8 9 |").stats();
        assert_eq!((s.markers, s.linear, s.circular, s.telomeres), (8, 2, 0, 4));
        let s = one(">A\n1 2 )").stats();
        assert_eq!((s.markers, s.linear, s.circular, s.telomeres), (2, 0, 1, 0));
    }

    #[test]
    fn extremity_order_follows_orientation() {
        let fwd = Occurrence::new("1", true);
        let rev = Occurrence::new("1", false);
        assert_eq!((fwd.left(), fwd.right()), (End::Tail, End::Head));
        assert_eq!((rev.left(), rev.right()), (End::Head, End::Tail));
    }
}
