//! Solution files and their translation back into decompositions.
//!
//! Grammar, one item per line:
//!
//! ```text
//! # status optimal|feasible|infeasible|error
//! # objective 4.1
//! # gap 0
//! x1 1
//! y7 3
//! ```
//!
//! Header lines are optional, variables not listed are 0, and blank lines
//! are ignored. The objective excludes the model constant.

use std::fmt::Write as _;

use num_traits::Zero;

use super::{IlpError, IlpModel, LinearProgram, Mode};
use crate::decomposition::{
    evaluate_unweighted, evaluate_weighted, induce, CappingSet, ConsistentDecomposition, SiblingSet,
};
use crate::diagram::{EdgeKind, RelationalDiagram};
use crate::numeric::{format_decimal, parse_decimal, to_f64, Rational};

const TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    Error,
}

impl SolveStatus {
    pub fn word(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Feasible => "feasible",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: SolveStatus,
    /// One value per model variable.
    pub values: Vec<i64>,
    /// Objective without the model constant.
    pub objective: Rational,
    pub gap: Option<Rational>,
}

impl Solution {
    pub fn has_assignment(&self) -> bool {
        matches!(self.status, SolveStatus::Optimal | SolveStatus::Feasible)
    }

    /// Objective plus the model constant.
    pub fn total(&self, lp: &LinearProgram) -> Rational {
        self.objective + lp.constant
    }

    /// Text in the solution grammar, listing non-zero variables.
    pub fn render(&self, lp: &LinearProgram) -> String {
        let mut out = format!("# status {}\n# objective {}\n", self.status.word(), format_decimal(&self.objective));
        if let Some(g) = self.gap {
            let _ = writeln!(out, "# gap {}", format_decimal(&g));
        }
        for (v, &val) in self.values.iter().enumerate() {
            if val != 0 {
                let _ = writeln!(out, "{} {}", lp.variables[v].name, val);
            }
        }
        out
    }
}

fn loose_decimal(w: &str) -> Option<Rational> {
    parse_decimal(w).ok().or_else(|| {
        let f: f64 = w.parse().ok()?;
        if !f.is_finite() {
            return None;
        }
        parse_decimal(&format!("{f:.9}")).ok()
    })
}

/// Parses and validates a solution for `lp`: values must be integral within
/// 1e-6, inside their domains and satisfy every constraint; a declared
/// objective must match the exact recomputation within 1e-6.
pub fn parse_solution(text: &str, lp: &LinearProgram) -> Result<Solution, IlpError> {
    let index = lp.index_of();
    let mut values = vec![0i64; lp.variables.len()];
    let mut status = SolveStatus::Feasible;
    let mut declared: Option<f64> = None;
    let mut gap = None;
    let mut seen = vec![false; lp.variables.len()];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let perr = |m: String| IlpError::Parse { line, message: m };
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if let Some(header) = body.strip_prefix('#') {
            let hf: Vec<&str> = header.split_whitespace().collect();
            match hf.as_slice() {
                ["status", word] => {
                    status = match word.to_ascii_lowercase().as_str() {
                        "optimal" => SolveStatus::Optimal,
                        "feasible" => SolveStatus::Feasible,
                        "infeasible" => SolveStatus::Infeasible,
                        "error" => SolveStatus::Error,
                        other => return Err(perr(format!("unknown status `{other}`"))),
                    }
                }
                ["objective", v] => {
                    declared = Some(v.parse().map_err(|_| perr(format!("bad objective `{v}`")))?);
                }
                ["gap", v] => gap = Some(loose_decimal(v).ok_or_else(|| perr(format!("bad gap `{v}`")))?),
                _ => return Err(perr(format!("unknown header `{body}`"))),
            }
            continue;
        }
        let [name, value] = fields.as_slice() else {
            return Err(perr(format!("expected `name value`, got `{body}`")));
        };
        let &v = index.get(name).ok_or_else(|| perr(format!("unknown variable `{name}`")))?;
        if seen[v] {
            return Err(perr(format!("variable `{name}` listed twice")));
        }
        seen[v] = true;
        let f: f64 = value.parse().map_err(|_| perr(format!("bad value `{value}`")))?;
        let rounded = f.round();
        if !f.is_finite() || (f - rounded).abs() > TOLERANCE {
            return Err(IlpError::InvalidSolution(format!("{name} = {value} is not integral")));
        }
        values[v] = rounded as i64;
    }
    if matches!(status, SolveStatus::Infeasible | SolveStatus::Error) {
        return Ok(Solution {
            status,
            values: vec![0; lp.variables.len()],
            objective: Rational::zero(),
            gap,
        });
    }
    if let Some(why) = lp.violation(&values) {
        return Err(IlpError::InvalidSolution(why));
    }
    let objective = lp.objective_value(&values);
    if let Some(dec) = declared {
        let exact = to_f64(&objective);
        if (dec - exact).abs() > TOLERANCE {
            return Err(IlpError::ObjectiveMismatch {
                declared: dec,
                recomputed: exact,
            });
        }
    }
    Ok(Solution {
        status,
        values,
        objective,
        gap,
    })
}

#[derive(Debug, Clone)]
pub struct Interpretation {
    pub distance: Rational,
    /// Sibling-pair (similarity edge) indices of the matching.
    pub matching: Vec<usize>,
    pub decomposition: ConsistentDecomposition,
}

/// Reads the sibling-set and capping-set off the `x` variables, rebuilds the
/// decomposition and checks that the ILP objective agrees with the distance
/// formula. Any disagreement is reported as a model bug.
pub fn interpret(sol: &Solution, m: &IlpModel, d: &RelationalDiagram) -> Result<Interpretation, IlpError> {
    if !sol.has_assignment() {
        return Err(IlpError::SolverFailed(format!("solver reported {}", sol.status.word())));
    }
    let bug = |msg: String| IlpError::ModelBug(msg);
    let on = |e: usize| sol.values[m.x[e]] == 1;
    let mut pairs = Vec::new();
    for (p, pair) in d.pairs().iter().enumerate() {
        match (on(pair.tail), on(pair.head)) {
            (true, true) => pairs.push(p),
            (false, false) => {}
            _ => return Err(bug(format!("sibling pair {} selected halfway", p + 1))),
        }
    }
    let caps: Vec<usize> = (0..d.edges().len())
        .filter(|&e| d.edges()[e].kind == EdgeKind::Cap && on(e))
        .collect();
    let s = SiblingSet::new(d, pairs.iter().copied()).map_err(|e| bug(e.to_string()))?;
    let p = CappingSet::from_edges(d, &caps).map_err(|e| bug(e.to_string()))?;
    let q = induce(d, &s, Some(&p)).map_err(|e| bug(e.to_string()))?;
    for (e, &sel) in q.selected.iter().enumerate() {
        if sel != on(e) {
            return Err(bug(format!(
                "edge {} is {} in the solution but {} in the induced decomposition",
                e + 1,
                on(e),
                sel
            )));
        }
    }
    let eval = match m.mode {
        Mode::Weighted => evaluate_weighted(&q),
        Mode::Unweighted => evaluate_unweighted(&q),
    }
    .map_err(|e| bug(e.to_string()))?;
    let total = sol.total(&m.lp);
    if total < eval {
        return Err(bug(format!(
            "objective {} below the decomposition's value {}",
            format_decimal(&total),
            format_decimal(&eval)
        )));
    }
    if sol.status == SolveStatus::Optimal && total != eval {
        return Err(bug(format!(
            "optimal objective {} differs from the decomposition's value {}",
            format_decimal(&total),
            format_decimal(&eval)
        )));
    }
    Ok(Interpretation {
        distance: eval,
        matching: pairs,
        decomposition: q,
    })
}
