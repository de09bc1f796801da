//! Integer linear programs over the capped family-free diagram.
//!
//! Variables, in declaration order: `x<e>` per edge, `z<i>`, `r<i>` per
//! vertex, `t<e>` per edge, `s<k>` per circular chromosome (all binary),
//! then the integer labels `y<i>` with `0 <= y<i> <= i`. Indices are
//! 1-based and follow the diagram's vertex and edge order.

mod exhaustive;
mod external;
mod lp;
mod solution;

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::diagram::{EdgeKind, RelationalDiagram};
use crate::genome::Side;
use crate::numeric::{half, int, Rational};

pub use exhaustive::{solve_exhaustive, SolverLimits};
pub use external::{run_solver, SolverConfig};
pub use lp::{emit_lp, parse_lp};
pub use solution::{interpret, parse_solution, Interpretation, Solution, SolveStatus};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IlpError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("declared objective {declared} differs from recomputed {recomputed}")]
    ObjectiveMismatch { declared: f64, recomputed: f64 },
    #[error("model bug: {0}")]
    ModelBug(String),
    #[error("model too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("solver failed: {0}")]
    SolverFailed(String),
    #[error("configuration error: {0}")]
    ConfigError(String),
    #[error("model needs a capped diagram")]
    NotCapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Weighted,
    Unweighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Binary,
    Integer { lower: i64, upper: i64 },
}

impl Domain {
    pub fn bounds(self) -> (i64, i64) {
        match self {
            Domain::Binary => (0, 1),
            Domain::Integer { lower, upper } => (lower, upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: Domain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds(&self, values: &[i64]) -> bool {
        let lhs: Rational = self.terms.iter().map(|(v, c)| c * int(values[*v])).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// Pure-integer minimization problem with bounded variables. The constant
/// term is kept apart because LP files cannot carry it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearProgram {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(usize, Rational)>,
    pub constant: Rational,
}

impl LinearProgram {
    pub fn index_of(&self) -> HashMap<&str, usize> {
        self.variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect()
    }

    /// Objective value without the constant.
    pub fn objective_value(&self, values: &[i64]) -> Rational {
        self.objective.iter().map(|(v, c)| c * int(values[*v])).sum()
    }

    /// First violated domain or constraint, if any.
    pub fn violation(&self, values: &[i64]) -> Option<String> {
        for (v, var) in self.variables.iter().enumerate() {
            let (lo, hi) = var.domain.bounds();
            if values[v] < lo || values[v] > hi {
                return Some(format!("{} = {} outside [{}, {}]", var.name, values[v], lo, hi));
            }
        }
        self.constraints
            .iter()
            .find(|c| !c.holds(values))
            .map(|c| format!("constraint {} violated", c.name))
    }

    fn add_var(&mut self, name: String, domain: Domain) -> usize {
        self.variables.push(Variable { name, domain });
        self.variables.len() - 1
    }

    fn add(&mut self, name: String, terms: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.constraints.push(Constraint { name, terms, sense, rhs });
    }
}

/// What a model variable stands for in the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Edge(usize),
    Label(usize),
    Cycle(usize),
    Run(usize),
    Transition(usize),
    Singleton(usize),
}

#[derive(Debug, Clone)]
pub struct IlpModel {
    pub mode: Mode,
    pub lp: LinearProgram,
    pub roles: Vec<Role>,
    /// Variable index per edge, vertex or circular chromosome.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub r: Vec<usize>,
    pub t: Vec<usize>,
    pub s: Vec<usize>,
    /// Variable of the tail edge of each sibling pair, then every cap edge;
    /// fixing these determines the whole decomposition.
    pub decisions: Vec<usize>,
    /// One-line description per variable, used for LP comments.
    pub notes: Vec<String>,
}

/// Builds the weighted model or the unweighted (maximal-matching) variant
/// over a capped diagram.
pub fn build_ilp(d: &RelationalDiagram, mode: Mode) -> Result<IlpModel, IlpError> {
    if !d.is_capped() {
        return Err(IlpError::NotCapped);
    }
    let nv = d.vertices().len();
    let ne = d.edges().len();
    let circ = d.circular_chromosomes();
    let mut lp = LinearProgram {
        constant: int(d.p_star() as i64),
        ..Default::default()
    };
    let mut roles = Vec::new();
    let mut notes = Vec::new();
    let mut declare = |lp: &mut LinearProgram, name: String, domain: Domain, role: Role, note: String| {
        roles.push(role);
        notes.push(note);
        lp.add_var(name, domain)
    };
    let x: Vec<usize> = (0..ne)
        .map(|e| {
            let edge = &d.edges()[e];
            let note = format!("{} {} {}", kind_word(&edge.kind), d.vertices()[edge.u].label, d.vertices()[edge.v].label);
            declare(&mut lp, format!("x{}", e + 1), Domain::Binary, Role::Edge(e), note)
        })
        .collect();
    let z: Vec<usize> = (0..nv)
        .map(|i| declare(&mut lp, format!("z{}", i + 1), Domain::Binary, Role::Cycle(i), d.vertices()[i].label.clone()))
        .collect();
    let r: Vec<usize> = (0..nv)
        .map(|i| declare(&mut lp, format!("r{}", i + 1), Domain::Binary, Role::Run(i), d.vertices()[i].label.clone()))
        .collect();
    let t: Vec<usize> = (0..ne)
        .map(|e| declare(&mut lp, format!("t{}", e + 1), Domain::Binary, Role::Transition(e), format!("edge {}", e + 1)))
        .collect();
    let s: Vec<usize> = circ
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let first = d.vertices()[d.indel_edge(c.side, c.markers[0]).map_or(0, |e| d.edges()[e].u)].label.clone();
            declare(
                &mut lp,
                format!("s{}", k + 1),
                Domain::Binary,
                Role::Singleton(k),
                format!("circular chromosome of {} through {}", c.side.tag(), first),
            )
        })
        .collect();
    let y: Vec<usize> = (0..nv)
        .map(|i| {
            declare(
                &mut lp,
                format!("y{}", i + 1),
                Domain::Integer { lower: 0, upper: i as i64 + 1 },
                Role::Label(i),
                d.vertices()[i].label.clone(),
            )
        })
        .collect();

    // objective
    let mut obj = Vec::new();
    for (e, edge) in d.edges().iter().enumerate() {
        match (mode, edge.kind) {
            (Mode::Weighted, EdgeKind::Extremity { .. }) => obj.push((x[e], int(1) - edge.weight * half())),
            (Mode::Unweighted, EdgeKind::Extremity { .. }) => obj.push((x[e], half())),
            (Mode::Weighted, EdgeKind::Indel { .. }) => obj.push((x[e], edge.weight)),
            _ => {}
        }
    }
    obj.extend(z.iter().map(|&v| (v, int(-1))));
    obj.extend(s.iter().map(|&v| (v, int(1))));
    obj.extend(t.iter().map(|&v| (v, half())));
    lp.objective = obj.into_iter().filter(|(_, c)| !c.is_zero()).collect();

    let one = Rational::one;
    let idx = |v: usize| int(v as i64 + 1);
    // C.01
    for (e, edge) in d.edges().iter().enumerate() {
        if edge.is_adjacency() {
            lp.add(format!("c01_e{}", e + 1), vec![(x[e], one())], Sense::Eq, one());
        }
    }
    // C.02
    for v in 0..nv {
        let terms = d.incident(v).iter().map(|&e| (x[e], one())).collect();
        lp.add(format!("c02_v{}", v + 1), terms, Sense::Eq, int(2));
    }
    // C.03
    for (p, pair) in d.pairs().iter().enumerate() {
        lp.add(
            format!("c03_p{}", p + 1),
            vec![(x[pair.tail], one()), (x[pair.head], int(-1))],
            Sense::Eq,
            Rational::zero(),
        );
    }
    // C.04: y_i - y_j + i x <= i, y_j - y_i + j x <= j
    for (e, edge) in d.edges().iter().enumerate() {
        let (i, j) = (edge.u, edge.v);
        lp.add(
            format!("c04a_e{}", e + 1),
            vec![(y[i], one()), (y[j], int(-1)), (x[e], idx(i))],
            Sense::Le,
            idx(i),
        );
        lp.add(
            format!("c04b_e{}", e + 1),
            vec![(y[j], one()), (y[i], int(-1)), (x[e], idx(j))],
            Sense::Le,
            idx(j),
        );
    }
    // C.05: y_i + i x <= i on indel edges
    for (e, edge) in d.edges().iter().enumerate() {
        if edge.is_indel() {
            lp.add(format!("c05a_e{}", e + 1), vec![(y[edge.u], one()), (x[e], idx(edge.u))], Sense::Le, idx(edge.u));
            lp.add(format!("c05b_e{}", e + 1), vec![(y[edge.v], one()), (x[e], idx(edge.v))], Sense::Le, idx(edge.v));
        }
    }
    // C.06: i z_i - y_i <= 0
    for v in 0..nv {
        lp.add(format!("c06_v{}", v + 1), vec![(z[v], idx(v)), (y[v], int(-1))], Sense::Le, Rational::zero());
    }
    // C.07: A-indel endpoints r + x <= 1, B-indel endpoints r - x >= 0
    for (e, edge) in d.edges().iter().enumerate() {
        let sense = match edge.indel_side() {
            Some(Side::A) => Sense::Le,
            Some(Side::B) => Sense::Ge,
            None => continue,
        };
        let (coef, rhs) = if sense == Sense::Le { (one(), one()) } else { (int(-1), Rational::zero()) };
        for (tag, w) in [("a", edge.u), ("b", edge.v)] {
            lp.add(format!("c07{}_e{}", tag, e + 1), vec![(r[w], one()), (x[e], coef)], sense, rhs);
        }
    }
    // C.08: t - r_v + r_u - x >= -1 and t - r_u + r_v - x >= -1
    for (e, edge) in d.edges().iter().enumerate() {
        let (u, v) = (edge.u, edge.v);
        lp.add(
            format!("c08a_e{}", e + 1),
            vec![(t[e], one()), (r[v], int(-1)), (r[u], one()), (x[e], int(-1))],
            Sense::Ge,
            int(-1),
        );
        lp.add(
            format!("c08b_e{}", e + 1),
            vec![(t[e], one()), (r[u], int(-1)), (r[v], one()), (x[e], int(-1))],
            Sense::Ge,
            int(-1),
        );
    }
    // C.09 on A adjacencies, C.10 elsewhere
    for (e, edge) in d.edges().iter().enumerate() {
        if matches!(edge.kind, EdgeKind::Adjacency { side: Side::A, .. }) {
            let mut terms: Vec<(usize, Rational)> = Vec::new();
            for w in [edge.u, edge.v] {
                for &f in d.incident(w) {
                    if d.edges()[f].indel_side() == Some(Side::A) && !terms.iter().any(|(v, _)| *v == x[f]) {
                        terms.push((x[f], one()));
                    }
                }
            }
            terms.push((t[e], int(-1)));
            lp.add(format!("c09_e{}", e + 1), terms, Sense::Ge, Rational::zero());
        } else {
            lp.add(format!("c10_e{}", e + 1), vec![(t[e], one())], Sense::Eq, Rational::zero());
        }
    }
    // C.11: sum of indel x over chromosome k - s_k <= |k| - 1
    for (k, c) in circ.iter().enumerate() {
        let mut terms: Vec<(usize, Rational)> = c
            .markers
            .iter()
            .filter_map(|&m| d.indel_edge(c.side, m))
            .map(|e| (x[e], one()))
            .collect();
        terms.push((s[k], int(-1)));
        lp.add(format!("c11_k{}", k + 1), terms, Sense::Le, int(c.markers.len() as i64 - 1));
    }
    // C.12: no similarity edge with both markers deleted
    if mode == Mode::Unweighted {
        for (p, pair) in d.pairs().iter().enumerate() {
            if let (Some(da), Some(db)) = (d.indel_edge(Side::A, pair.a), d.indel_edge(Side::B, pair.b)) {
                lp.add(format!("c12_p{}", p + 1), vec![(x[da], one()), (x[db], one())], Sense::Le, one());
            }
        }
    }

    let mut decisions: Vec<usize> = d.pairs().iter().map(|p| x[p.tail]).collect();
    decisions.extend(
        d.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == EdgeKind::Cap)
            .map(|(id, _)| x[id]),
    );
    Ok(IlpModel {
        mode,
        lp,
        roles,
        x,
        y,
        z,
        r,
        t,
        s,
        decisions,
        notes,
    })
}

fn kind_word(kind: &EdgeKind) -> String {
    match kind {
        EdgeKind::Adjacency { side, artificial: false } => format!("adj{}", side.tag()),
        EdgeKind::Adjacency { side, artificial: true } => format!("art{}", side.tag()),
        EdgeKind::Extremity { .. } => "ext".into(),
        EdgeKind::Cap => "cap".into(),
        EdgeKind::Indel { side, .. } => format!("id{}", side.tag()),
    }
}
