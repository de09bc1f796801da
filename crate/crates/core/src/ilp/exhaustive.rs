//! Exact depth-first branch and bound for small models.
//!
//! Rows are scaled to integers and propagated with bound reasoning; the
//! objective bound is the sum of per-variable minima over current domains.
//! Branching starts with the decision variables (sibling pairs and cap
//! edges), which fixes the decomposition; the remaining variables then
//! follow mostly by propagation.

use num_integer::Integer;
use num_traits::Zero;

use super::{IlpError, IlpModel, LinearProgram, Sense, Solution, SolveStatus};
use crate::numeric::{common_denominator, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    /// Largest number of unfixed decision variables after root propagation.
    pub max_free: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits { max_free: 24 }
    }
}

/// `sum a_j x_j <= rhs`.
struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i64,
}

struct Engine {
    rows: Vec<Row>,
    rows_of: Vec<Vec<usize>>,
    lb: Vec<i64>,
    ub: Vec<i64>,
    cost: Vec<i64>,
    trail: Vec<(usize, i64, i64)>,
    queued: Vec<bool>,
    queue: Vec<usize>,
}

fn scaled_rows(lp: &LinearProgram) -> Vec<Row> {
    let mut rows = Vec::new();
    for c in &lp.constraints {
        let scale = common_denominator(c.terms.iter().map(|(_, v)| v).chain(std::iter::once(&c.rhs)));
        let scale = Rational::from_integer(scale);
        let terms: Vec<(usize, i64)> = c.terms.iter().map(|(v, a)| (*v, (a * scale).to_integer())).collect();
        let rhs = (c.rhs * scale).to_integer();
        let neg = || Row {
            terms: terms.iter().map(|&(v, a)| (v, -a)).collect(),
            rhs: -rhs,
        };
        match c.sense {
            Sense::Le => rows.push(Row { terms: terms.clone(), rhs }),
            Sense::Ge => rows.push(neg()),
            Sense::Eq => {
                rows.push(Row { terms: terms.clone(), rhs });
                rows.push(neg());
            }
        }
    }
    rows
}

impl Engine {
    fn new(lp: &LinearProgram) -> Engine {
        let rows = scaled_rows(lp);
        let n = lp.variables.len();
        let mut rows_of = vec![Vec::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                rows_of[v].push(r);
            }
        }
        let scale = common_denominator(lp.objective.iter().map(|(_, c)| c));
        let mut cost = vec![0i64; n];
        for (v, c) in &lp.objective {
            cost[*v] += (c * Rational::from_integer(scale)).to_integer();
        }
        let (lb, ub) = lp.variables.iter().map(|v| v.domain.bounds()).unzip();
        let nrows = rows.len();
        Engine {
            rows,
            rows_of,
            lb,
            ub,
            cost,
            trail: Vec::new(),
            queued: vec![false; nrows],
            queue: Vec::new(),
        }
    }

    fn set(&mut self, v: usize, lo: i64, hi: i64) -> bool {
        if lo == self.lb[v] && hi == self.ub[v] {
            return true;
        }
        self.trail.push((v, self.lb[v], self.ub[v]));
        self.lb[v] = lo;
        self.ub[v] = hi;
        for &r in &self.rows_of[v] {
            if !self.queued[r] {
                self.queued[r] = true;
                self.queue.push(r);
            }
        }
        lo <= hi
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, lo, hi) = self.trail.pop().unwrap();
            self.lb[v] = lo;
            self.ub[v] = hi;
        }
    }

    fn clear_queue(&mut self) {
        for r in self.queue.drain(..) {
            self.queued[r] = false;
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(r) = self.queue.pop() {
            self.queued[r] = false;
            let mut min_act = 0i64;
            for &(v, a) in &self.rows[r].terms {
                min_act += if a > 0 { a * self.lb[v] } else { a * self.ub[v] };
            }
            let slack = self.rows[r].rhs - min_act;
            if slack < 0 {
                self.clear_queue();
                return false;
            }
            for k in 0..self.rows[r].terms.len() {
                let (v, a) = self.rows[r].terms[k];
                let (lo, hi) = (self.lb[v], self.ub[v]);
                let ok = if a > 0 {
                    let cap = lo + Integer::div_floor(&slack, &a);
                    cap >= hi || self.set(v, lo, cap)
                } else {
                    let floor = hi - Integer::div_floor(&slack, &-a);
                    floor <= lo || self.set(v, floor, hi)
                };
                if !ok {
                    self.clear_queue();
                    return false;
                }
            }
        }
        true
    }

    fn bound(&self) -> i64 {
        (0..self.cost.len())
            .map(|v| {
                let c = self.cost[v];
                if c >= 0 {
                    c * self.lb[v]
                } else {
                    c * self.ub[v]
                }
            })
            .sum()
    }

    fn search(&mut self, order: &[usize], pos: usize, best: &mut Option<(i64, Vec<i64>)>) {
        if let Some((b, _)) = best {
            if self.bound() >= *b {
                return;
            }
        }
        let Some(k) = (pos..order.len()).find(|&k| self.lb[order[k]] < self.ub[order[k]]) else {
            *best = Some((self.bound(), self.lb.clone()));
            return;
        };
        let v = order[k];
        let (lo, hi) = (self.lb[v], self.ub[v]);
        let ascending = self.cost[v] > 0 || (self.cost[v] == 0 && hi - lo == 1);
        let values: Vec<i64> = if ascending {
            (lo..=hi).collect()
        } else {
            (lo..=hi).rev().collect()
        };
        for val in values {
            let mark = self.trail.len();
            if self.set(v, val, val) && self.propagate() {
                self.search(order, k + 1, best);
            }
            self.clear_queue();
            self.undo(mark);
        }
    }
}

/// Globally optimal solution of a small model, or `TooLarge` when more than
/// `limits.max_free` decision variables remain free after root propagation.
pub fn solve_exhaustive(m: &IlpModel, limits: SolverLimits) -> Result<Solution, IlpError> {
    let lp = &m.lp;
    let mut engine = Engine::new(lp);
    engine.queue = (0..engine.rows.len()).collect();
    engine.queued = vec![true; engine.rows.len()];
    let infeasible = || Solution {
        status: SolveStatus::Infeasible,
        values: vec![0; lp.variables.len()],
        objective: Rational::zero(),
        gap: None,
    };
    if !engine.propagate() {
        return Ok(infeasible());
    }
    let free = m.decisions.iter().filter(|&&v| engine.lb[v] < engine.ub[v]).count();
    if free > limits.max_free {
        return Err(IlpError::TooLarge(format!(
            "{} free decision variables, limit {}",
            free, limits.max_free
        )));
    }
    let mut order = m.decisions.clone();
    let mut placed = vec![false; lp.variables.len()];
    for &v in &order {
        placed[v] = true;
    }
    for group in [&m.x, &m.z, &m.s, &m.r, &m.t, &m.y] {
        for &v in group.iter() {
            if !placed[v] {
                placed[v] = true;
                order.push(v);
            }
        }
    }
    order.extend((0..lp.variables.len()).filter(|&v| !placed[v]));

    let mut best = None;
    engine.search(&order, 0, &mut best);
    let Some((_, values)) = best else {
        return Ok(infeasible());
    };
    debug_assert!(lp.violation(&values).is_none());
    let objective = lp.objective_value(&values);
    Ok(Solution {
        status: SolveStatus::Optimal,
        values,
        objective,
        gap: Some(Rational::zero()),
    })
}
