//! Distance matrices over genome collections, Neighbor-Joining, and the
//! Newick / PHYLIP text formats.
//!
//! Newick names are written bare unless they are empty or contain
//! whitespace or one of `()[]':;,`, in which case they are wrapped in single
//! quotes with embedded quotes doubled. Underscores are kept as they are.
//! Branch lengths and matrix entries print as the shortest exact decimal, or
//! rounded to twelve fractional digits when no finite expansion exists.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::engine::{compute_distance, ComputeError, Engine};
use crate::exact::ExactError;
use crate::genome::Genome;
use crate::ilp::{IlpError, Mode};
use crate::numeric::{format_decimal, int, parse_decimal_with, Rational};
use crate::similarity::SimilarityGraph;

/// Fractional digits accepted when reading trees and matrices back.
const READ_DIGITS: usize = 15;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PhyloError {
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("no similarity table for pair {0} / {1}")]
    MissingSimilarities(String, String),
    #[error("pair {a} / {b} is too large: {message}")]
    TooLarge { a: String, b: String, message: String },
    #[error("pair {a} / {b}: {source}")]
    Compute {
        a: String,
        b: String,
        #[source]
        source: ComputeError,
    },
    #[error("distance of {a} / {b} is {forward} but {backward} with the genomes swapped")]
    Asymmetric {
        a: String,
        b: String,
        forward: String,
        backward: String,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("taxon name `{0}` cannot be written in this format")]
    InvalidName(String),
    #[error("unknown taxon `{0}`")]
    UnknownTaxon(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    taxa: Vec<String>,
    d: Vec<Vec<Rational>>,
}

impl DistanceMatrix {
    /// Checks shape, distinct names, zero diagonal, symmetry and
    /// nonnegativity.
    pub fn new(taxa: Vec<String>, d: Vec<Vec<Rational>>) -> Result<Self, PhyloError> {
        let bad = |m: String| Err(PhyloError::InvalidMatrix(m));
        let n = taxa.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return bad(format!("expected a {n}x{n} matrix"));
        }
        let mut seen = HashSet::new();
        for t in &taxa {
            if !seen.insert(t.as_str()) {
                return bad(format!("taxon `{t}` appears twice"));
            }
        }
        for i in 0..n {
            if !d[i][i].is_zero() {
                return bad(format!("d({0}, {0}) is not 0", taxa[i]));
            }
            for j in 0..n {
                if d[i][j].is_negative() {
                    return bad(format!("d({}, {}) is negative", taxa[i], taxa[j]));
                }
                if d[i][j] != d[j][i] {
                    return bad(format!("d({}, {}) != d({}, {})", taxa[i], taxa[j], taxa[j], taxa[i]));
                }
            }
        }
        Ok(DistanceMatrix { taxa, d })
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }
}

fn pair_error(a: &str, b: &str, e: ComputeError) -> PhyloError {
    let message = match &e {
        ComputeError::Exact(ExactError::TooLarge(m)) | ComputeError::Ilp(IlpError::TooLarge(m)) => Some(m.clone()),
        _ => None,
    };
    match message {
        Some(message) => PhyloError::TooLarge {
            a: a.to_string(),
            b: b.to_string(),
            message,
        },
        None => PhyloError::Compute {
            a: a.to_string(),
            b: b.to_string(),
            source: e,
        },
    }
}

/// Distance matrix over `genomes`. `tables[(i, j)]` with `i < j` holds the
/// similarities with `genomes[i]` as side A. Pairs are spread over `jobs`
/// worker threads; the result does not depend on the thread count.
pub fn pairwise_matrix(
    genomes: &[Genome],
    tables: &BTreeMap<(usize, usize), SimilarityGraph>,
    x: Rational,
    mode: Mode,
    engine: &Engine,
    jobs: usize,
) -> Result<DistanceMatrix, PhyloError> {
    let n = genomes.len();
    let taxa: Vec<String> = genomes.iter().map(|g| g.name().to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !tables.contains_key(&(i, j)) {
                return Err(PhyloError::MissingSimilarities(taxa[i].clone(), taxa[j].clone()));
            }
            pairs.push((i, j));
        }
    }
    let results: Mutex<Vec<Option<Result<Rational, PhyloError>>>> = Mutex::new(vec![None; pairs.len()]);
    let next = AtomicUsize::new(0);
    let work = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(i, j)) = pairs.get(k) else { break };
        let r = compute_distance(&genomes[i], &genomes[j], &tables[&(i, j)], x, mode, engine)
            .map(|rep| rep.distance)
            .map_err(|e| pair_error(&taxa[i], &taxa[j], e));
        results.lock().unwrap()[k] = Some(r);
    };
    let workers = jobs.clamp(1, pairs.len().max(1));
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let mut d = vec![vec![Rational::zero(); n]; n];
    for (k, r) in results.into_inner().unwrap().into_iter().enumerate() {
        let (i, j) = pairs[k];
        let v = r.expect("every pair computed")?;
        d[i][j] = v;
        d[j][i] = v;
    }
    if n >= 2 {
        let back = compute_distance(&genomes[1], &genomes[0], &tables[&(0, 1)].transposed(), x, mode, engine)
            .map_err(|e| pair_error(&taxa[1], &taxa[0], e))?
            .distance;
        if back != d[0][1] {
            return Err(PhyloError::Asymmetric {
                a: taxa[0].clone(),
                b: taxa[1].clone(),
                forward: format_decimal(&d[0][1]),
                backward: format_decimal(&back),
            });
        }
    }
    DistanceMatrix::new(taxa, d)
}

/// Tree with labeled leaves and rational branch lengths. Unrooted unless a
/// root node was set by parsing a rooted Newick string or by
/// [`Tree::rooted_at_outgroup`].
#[derive(Debug, Clone, Default)]
pub struct Tree {
    labels: Vec<Option<String>>,
    adj: Vec<Vec<(usize, Rational)>>,
    root: Option<usize>,
}

impl Tree {
    fn add_node(&mut self, label: Option<String>) -> usize {
        self.labels.push(label);
        self.adj.push(Vec::new());
        self.labels.len() - 1
    }

    fn add_edge(&mut self, u: usize, v: usize, len: Rational) {
        self.adj[u].push((v, len));
        self.adj[v].push((u, len));
    }

    fn remove_edge(&mut self, u: usize, v: usize) -> Rational {
        let k = self.adj[u].iter().position(|&(w, _)| w == v).expect("edge exists");
        let (_, len) = self.adj[u].remove(k);
        let k = self.adj[v].iter().position(|&(w, _)| w == u).expect("edge exists");
        self.adj[v].remove(k);
        len
    }

    fn is_leaf(&self, v: usize) -> bool {
        self.labels[v].is_some() && self.adj[v].len() <= 1
    }

    fn leaf_nodes(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Leaf names in node order.
    pub fn leaves(&self) -> Vec<&str> {
        self.leaf_nodes().into_iter().map(|v| self.labels[v].as_deref().unwrap()).collect()
    }

    pub fn is_rooted(&self) -> bool {
        self.root.is_some()
    }

    /// Sum of branch lengths on the path between two leaves.
    pub fn path_length(&self, from: &str, to: &str) -> Option<Rational> {
        let s = self.find_leaf(from)?;
        let t = self.find_leaf(to)?;
        let mut dist: Vec<Option<Rational>> = vec![None; self.labels.len()];
        dist[s] = Some(Rational::zero());
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let du = dist[u].unwrap();
            for &(v, len) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + len);
                    stack.push(v);
                }
            }
        }
        dist[t]
    }

    fn find_leaf(&self, name: &str) -> Option<usize> {
        self.leaf_nodes().into_iter().find(|&v| self.labels[v].as_deref() == Some(name))
    }

    /// Leaf-to-leaf path lengths, taxa in leaf order.
    pub fn path_matrix(&self) -> DistanceMatrix {
        let names: Vec<String> = self.leaves().into_iter().map(str::to_string).collect();
        let d = names
            .iter()
            .map(|a| names.iter().map(|b| self.path_length(a, b).unwrap()).collect())
            .collect();
        DistanceMatrix::new(names, d).expect("path lengths form a valid matrix")
    }

    fn side_leaves(&self, from: usize, skip: usize, out: &mut Vec<String>) {
        let mut stack = vec![(from, skip)];
        while let Some((u, parent)) = stack.pop() {
            if self.is_leaf(u) {
                out.push(self.labels[u].clone().unwrap());
            }
            for &(v, _) in &self.adj[u] {
                if v != parent {
                    stack.push((v, u));
                }
            }
        }
    }

    /// Leaf bipartitions with their total branch length. Each split is keyed
    /// by the sorted side that does not hold the smallest leaf name; chains
    /// of degree-2 nodes add up, and zero-length internal splits are left
    /// out so that they compare equal to a multifurcation.
    pub fn splits(&self) -> BTreeMap<Vec<String>, Rational> {
        let mut all: Vec<String> = self.leaves().into_iter().map(str::to_string).collect();
        all.sort();
        let mut out: BTreeMap<Vec<String>, Rational> = BTreeMap::new();
        let Some(smallest) = all.first().cloned() else {
            return out;
        };
        for u in 0..self.adj.len() {
            for &(v, len) in &self.adj[u] {
                if u > v {
                    continue;
                }
                let mut side = Vec::new();
                self.side_leaves(v, u, &mut side);
                if side.contains(&smallest) {
                    let inside: HashSet<String> = side.into_iter().collect();
                    side = all.iter().filter(|t| !inside.contains(*t)).cloned().collect();
                }
                side.sort();
                *out.entry(side).or_insert_with(Rational::zero) += len;
            }
        }
        let n = all.len();
        out.retain(|side, len| !len.is_zero() || side.len() <= 1 || side.len() >= n - 1);
        out
    }

    /// Copy with a degree-2 root merged into a single edge.
    pub fn unrooted(&self) -> Tree {
        let mut t = self.clone();
        if let Some(r) = t.root.take() {
            if t.adj[r].len() == 2 && t.labels[r].is_none() {
                let (u, lu) = t.adj[r][0];
                let (v, lv) = t.adj[r][1];
                t.remove_edge(r, u);
                t.remove_edge(r, v);
                t.add_edge(u, v, lu + lv);
            }
        }
        t
    }

    /// Roots the tree at the midpoint of the outgroup's pendant edge.
    pub fn rooted_at_outgroup(&self, outgroup: &str) -> Result<Tree, PhyloError> {
        let mut t = self.unrooted();
        let o = t.find_leaf(outgroup).ok_or_else(|| PhyloError::UnknownTaxon(outgroup.to_string()))?;
        let Some(&(u, _)) = t.adj[o].first() else {
            return Ok(t);
        };
        let len = t.remove_edge(o, u);
        let r = t.add_node(None);
        let h = len / int(2);
        t.add_edge(r, o, h);
        t.add_edge(r, u, h);
        t.root = Some(r);
        Ok(t)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.leaves();
        let mut b = other.leaves();
        a.sort_unstable();
        b.sort_unstable();
        a == b && self.splits() == other.splits()
    }
}

/// Saitou-Nei agglomeration over exact rationals.
///
/// Ties in the Q criterion go to the lowest pair of positions in the active
/// list, which starts in matrix order; a joined pair's new node takes the
/// position of its first member. A negative branch length is set to 0 and
/// the deficit is moved to the sister edge, which keeps the pair's distance.
pub fn neighbor_joining(m: &DistanceMatrix) -> Result<Tree, PhyloError> {
    let n = m.len();
    if n == 0 {
        return Err(PhyloError::InvalidMatrix("no taxa".into()));
    }
    let m = DistanceMatrix::new(m.taxa.clone(), m.d.clone())?;
    let mut t = Tree::default();
    for name in &m.taxa {
        t.add_node(Some(name.clone()));
    }
    if n == 1 {
        return Ok(t);
    }
    let size = 2 * n;
    let mut d = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = m.d[i][j];
        }
    }
    let mut active: Vec<usize> = (0..n).collect();
    while active.len() > 3 {
        let r = active.len();
        let sums: Vec<Rational> = active
            .iter()
            .map(|&i| active.iter().map(|&k| d[i][k]).sum())
            .collect();
        let factor = int(r as i64 - 2);
        let mut best: Option<(Rational, usize, usize)> = None;
        for p in 0..r {
            for q in p + 1..r {
                let qv = factor * d[active[p]][active[q]] - sums[p] - sums[q];
                if best.is_none_or(|(b, _, _)| qv < b) {
                    best = Some((qv, p, q));
                }
            }
        }
        let (_, p, q) = best.unwrap();
        let (i, j) = (active[p], active[q]);
        let dij = d[i][j];
        let mut li = dij / int(2) + (sums[p] - sums[q]) / (int(2) * factor);
        let mut lj = dij - li;
        if li.is_negative() {
            lj += li;
            li = Rational::zero();
        } else if lj.is_negative() {
            li += lj;
            lj = Rational::zero();
        }
        let u = t.add_node(None);
        t.add_edge(u, i, li);
        t.add_edge(u, j, lj);
        for &k in &active {
            if k != i && k != j {
                let v = (d[i][k] + d[j][k] - dij) / int(2);
                d[u][k] = v;
                d[k][u] = v;
            }
        }
        active[p] = u;
        active.remove(q);
    }
    if active.len() == 2 {
        let (i, j) = (active[0], active[1]);
        t.add_edge(i, j, d[i][j]);
        return Ok(t);
    }
    let (i, j, k) = (active[0], active[1], active[2]);
    let mut len = [
        (d[i][j] + d[i][k] - d[j][k]) / int(2),
        (d[i][j] + d[j][k] - d[i][k]) / int(2),
        (d[i][k] + d[j][k] - d[i][j]) / int(2),
    ];
    for a in 0..3 {
        if len[a].is_negative() {
            let sister = if a == 0 { 1 } else { 0 };
            let deficit = len[a];
            len[sister] += deficit;
            len[a] = Rational::zero();
        }
    }
    let c = t.add_node(None);
    t.add_edge(c, i, len[0]);
    t.add_edge(c, j, len[1]);
    t.add_edge(c, k, len[2]);
    Ok(t)
}

const META: &[char] = &['(', ')', '[', ']', '\'', ':', ';', ','];

fn newick_name(name: &str) -> String {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || META.contains(&c)) {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_string()
    }
}

impl Tree {
    fn min_leaf(&self, v: usize, parent: usize, order: &[usize]) -> usize {
        let mut best = usize::MAX;
        let mut stack = vec![(v, parent)];
        while let Some((u, p)) = stack.pop() {
            if self.is_leaf(u) {
                best = best.min(order[u]);
            }
            for &(w, _) in &self.adj[u] {
                if w != p {
                    stack.push((w, u));
                }
            }
        }
        best
    }

    fn write_node(&self, v: usize, parent: usize, order: &[usize], out: &mut String) {
        let mut children: Vec<(usize, Rational)> = self.adj[v].iter().copied().filter(|&(w, _)| w != parent).collect();
        if !children.is_empty() {
            children.sort_by_key(|&(w, _)| self.min_leaf(w, v, order));
            out.push('(');
            for (k, &(w, len)) in children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                self.write_node(w, v, order, out);
                let _ = write!(out, ":{}", format_decimal(&len));
            }
            out.push(')');
        }
        if let Some(label) = &self.labels[v] {
            out.push_str(&newick_name(label));
        }
    }
}

/// Newick text terminated by `;`. Unrooted trees are written from the inner
/// node next to the first leaf; a two-leaf tree is written rooted at the
/// middle of its only edge.
pub fn write_newick(t: &Tree) -> String {
    let leaves = t.leaf_nodes();
    let mut order = vec![usize::MAX; t.labels.len()];
    for (k, &v) in leaves.iter().enumerate() {
        order[v] = k;
    }
    let mut out = String::new();
    match t.root {
        Some(r) => t.write_node(r, usize::MAX, &order, &mut out),
        None => match leaves.first() {
            None => {}
            Some(&first) => match t.adj[first].first() {
                None => t.write_node(first, usize::MAX, &order, &mut out),
                Some(&(u, len)) if t.is_leaf(u) => {
                    let h = format_decimal(&(len / int(2)));
                    let _ = write!(
                        out,
                        "({}:{h},{}:{h})",
                        newick_name(t.labels[first].as_deref().unwrap()),
                        newick_name(t.labels[u].as_deref().unwrap())
                    );
                }
                Some(&(u, _)) => t.write_node(u, usize::MAX, &order, &mut out),
            },
        },
    }
    out.push(';');
    out
}

struct NewickParser<'a> {
    text: &'a str,
    pos: usize,
    tree: Tree,
}

impl NewickParser<'_> {
    fn error(&self, message: impl Into<String>) -> PhyloError {
        let line = self.text[..self.pos].matches('\n').count() + 1;
        PhyloError::Parse {
            line,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        loop {
            let c = self.text[self.pos..].chars().next()?;
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '[' {
                match self.text[self.pos..].find(']') {
                    Some(k) => self.pos += k + 1,
                    None => return Some(c),
                }
            } else {
                return Some(c);
            }
        }
    }

    fn bump(&mut self) {
        let c = self.text[self.pos..].chars().next().unwrap();
        self.pos += c.len_utf8();
    }

    fn label(&mut self) -> Result<Option<String>, PhyloError> {
        match self.peek() {
            Some('\'') => {
                self.bump();
                let mut name = String::new();
                loop {
                    let Some(c) = self.text[self.pos..].chars().next() else {
                        return Err(self.error("unterminated quoted name"));
                    };
                    self.pos += c.len_utf8();
                    if c == '\'' {
                        if self.text[self.pos..].starts_with('\'') {
                            self.pos += 1;
                            name.push('\'');
                        } else {
                            return Ok(Some(name));
                        }
                    } else {
                        name.push(c);
                    }
                }
            }
            Some(c) if !META.contains(&c) => {
                let start = self.pos;
                while let Some(c) = self.text[self.pos..].chars().next() {
                    if c.is_whitespace() || META.contains(&c) {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                Ok(Some(self.text[start..self.pos].to_string()))
            }
            _ => Ok(None),
        }
    }

    fn length(&mut self) -> Result<Rational, PhyloError> {
        if self.peek() != Some(':') {
            return Ok(Rational::zero());
        }
        self.bump();
        self.peek();
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() || META.contains(&c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        let word = &self.text[start..self.pos];
        let len = parse_decimal_with(word, READ_DIGITS).map_err(|_| self.error(format!("bad branch length `{word}`")))?;
        if len.is_negative() {
            return Err(self.error(format!("negative branch length `{word}`")));
        }
        Ok(len)
    }

    /// Parses one subtree and returns its node.
    fn subtree(&mut self) -> Result<usize, PhyloError> {
        if self.peek() == Some('(') {
            self.bump();
            let mut children = Vec::new();
            loop {
                let child = self.subtree()?;
                let len = self.length()?;
                children.push((child, len));
                match self.peek() {
                    Some(',') => self.bump(),
                    Some(')') => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
            let label = self.label()?;
            let v = self.tree.add_node(label);
            for (c, len) in children {
                self.tree.add_edge(v, c, len);
            }
            Ok(v)
        } else {
            match self.label()? {
                Some(name) => Ok(self.tree.add_node(Some(name))),
                None => Err(self.error("expected a taxon name or `(`")),
            }
        }
    }
}

/// Parses one Newick tree. Bracketed comments are skipped and missing branch
/// lengths read as 0. A top-level node with two children becomes the root.
pub fn parse_newick(text: &str) -> Result<Tree, PhyloError> {
    let mut p = NewickParser {
        text,
        pos: 0,
        tree: Tree::default(),
    };
    let top = p.subtree()?;
    p.length()?;
    if p.peek() != Some(';') {
        return Err(p.error("expected `;`"));
    }
    p.bump();
    if p.peek().is_some() {
        return Err(p.error("text after `;`"));
    }
    let mut t = p.tree;
    let mut seen = HashSet::new();
    for v in t.leaf_nodes() {
        let name = t.labels[v].clone().unwrap();
        if !seen.insert(name.clone()) {
            return Err(PhyloError::Parse {
                line: 1,
                message: format!("taxon `{name}` appears twice"),
            });
        }
    }
    if (0..t.labels.len()).any(|v| t.labels[v].is_none() && t.adj[v].len() <= 1 && t.labels.len() > 1) {
        return Err(PhyloError::Parse {
            line: 1,
            message: "unlabeled leaf".into(),
        });
    }
    if t.adj[top].len() == 2 {
        t.root = Some(top);
    }
    Ok(t)
}

/// Square PHYLIP: a line with the taxon count, then one row per taxon with
/// the name padded to a common width and the distances separated by spaces.
pub fn write_phylip(m: &DistanceMatrix) -> Result<String, PhyloError> {
    for t in &m.taxa {
        if t.is_empty() || t.chars().any(char::is_whitespace) {
            return Err(PhyloError::InvalidName(t.clone()));
        }
    }
    let width = m.taxa.iter().map(|t| t.chars().count()).max().unwrap_or(0);
    let mut out = format!("{}\n", m.len());
    for (i, t) in m.taxa.iter().enumerate() {
        let _ = write!(out, "{t:<width$}");
        for v in &m.d[i] {
            let _ = write!(out, " {}", format_decimal(v));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Reads square PHYLIP with whitespace-separated fields; rows may wrap over
/// several lines.
pub fn parse_phylip(text: &str) -> Result<DistanceMatrix, PhyloError> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(n, l)| l.split_whitespace().map(move |w| (n + 1, w)));
    let last_line = text.lines().count().max(1);
    let eof = |what: &str| PhyloError::Parse {
        line: last_line,
        message: format!("unexpected end of input, expected {what}"),
    };
    let (line, count) = tokens.next().ok_or_else(|| eof("the taxon count"))?;
    let n: usize = count.parse().map_err(|_| PhyloError::Parse {
        line,
        message: format!("bad taxon count `{count}`"),
    })?;
    let mut taxa = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    for _ in 0..n {
        let (_, name) = tokens.next().ok_or_else(|| eof("a taxon name"))?;
        taxa.push(name.to_string());
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, w) = tokens.next().ok_or_else(|| eof("a distance"))?;
            let v = parse_decimal_with(w, READ_DIGITS).map_err(|_| PhyloError::Parse {
                line,
                message: format!("bad distance `{w}`"),
            })?;
            row.push(v);
        }
        d.push(row);
    }
    if let Some((line, w)) = tokens.next() {
        return Err(PhyloError::Parse {
            line,
            message: format!("unexpected `{w}` after the last row"),
        });
    }
    DistanceMatrix::new(taxa, d)
}
