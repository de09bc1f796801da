//! One entry point for computing a distance with any of the back ends.

use crate::diagram::build_capped;
use crate::exact::{ffd_exact, unwffd_exact, ExactError, Limits};
use crate::genome::{Genome, Side};
use crate::ilp::{build_ilp, emit_lp, interpret, run_solver, solve_exhaustive, IlpError, Mode, SolverConfig, SolverLimits};
use crate::numeric::Rational;
use crate::similarity::SimilarityGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Engine {
    /// Brute force over matchings and capping-sets.
    Oracle(Limits),
    /// The ILP solved by in-process branch and bound.
    Exhaustive(SolverLimits),
    /// The ILP written to disk and handed to an external solver.
    External(SolverConfig),
}

impl Default for Engine {
    fn default() -> Self {
        Engine::Exhaustive(SolverLimits::default())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComputeError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Ilp(#[from] IlpError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: Rational,
    /// Matched `(idA, idB, sigma)` triples in similarity-graph order.
    pub matching: Vec<(String, String, Rational)>,
}

/// Distance between `a` and `b` over the similarities of `g` that pass
/// threshold `x`.
pub fn compute_distance(
    a: &Genome,
    b: &Genome,
    g: &SimilarityGraph,
    x: Rational,
    mode: Mode,
    engine: &Engine,
) -> Result<DistanceReport, ComputeError> {
    let g = g.apply_threshold(x);
    let (distance, edges) = match engine {
        Engine::Oracle(limits) => {
            let r = match mode {
                Mode::Weighted => ffd_exact(a, b, &g, *limits)?,
                Mode::Unweighted => unwffd_exact(a, b, &g, *limits)?,
            };
            (r.distance, r.matching)
        }
        Engine::Exhaustive(limits) => {
            let d = build_capped(a, b, &g);
            let m = build_ilp(&d, mode)?;
            let sol = solve_exhaustive(&m, *limits)?;
            let it = interpret(&sol, &m, &d)?;
            (it.distance, it.matching)
        }
        Engine::External(config) => {
            let d = build_capped(a, b, &g);
            let m = build_ilp(&d, mode)?;
            let sol = run_solver(&emit_lp(&m), &m.lp, config)?;
            let it = interpret(&sol, &m, &d)?;
            (it.distance, it.matching)
        }
    };
    let matching = edges
        .iter()
        .map(|&k| {
            let e = &g.edges()[k];
            (g.marker_id(Side::A, e.a).to_string(), g.marker_id(Side::B, e.b).to_string(), e.sigma)
        })
        .collect();
    Ok(DistanceReport { distance, matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::parse_genomes;
    use crate::numeric::parse_decimal;
    use crate::similarity::parse_similarities;

    #[test]
    fn engines_agree_on_five_by_six() {
        let gs = parse_genomes(">A\n1 2 3 4 5 |\n>B\n6 -7 -8 -9 10 11 |\n").unwrap();
        let g = parse_similarities(
            "1 6 0.6\n1 7 0.1\n1 9 0.5\n2 7 0.3\n2 8 0.2\n3 7 0.3\n3 9 0.9\n4 8 0.9\n4 10 0.3\n5 10 0.7\n5 11 0.8\n",
            &gs[0],
            &gs[1],
        )
        .unwrap();
        let x = parse_decimal("0.1").unwrap();
        let oracle = compute_distance(&gs[0], &gs[1], &g, x, Mode::Weighted, &Engine::Oracle(Limits::default())).unwrap();
        let ilp = compute_distance(&gs[0], &gs[1], &g, x, Mode::Weighted, &Engine::default()).unwrap();
        assert_eq!(oracle.distance, parse_decimal("5.1").unwrap());
        assert_eq!(oracle, ilp);
        assert_eq!(oracle.matching.len(), 4);
    }
}
