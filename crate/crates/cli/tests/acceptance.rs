//! One PASS/FAIL line per acceptance criterion; fails if any criterion does.
//!
//! Run with `cargo test -p ffdist-cli --test acceptance -- --nocapture` to see
//! the report.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ffdist::decomposition::{
    all_cappings, best_capping, evaluate_unweighted, evaluate_weighted, induce, SiblingSet,
};
use ffdist::diagram::{
    build_capped, build_singular_diagram, components, count_runs_of, indel_potential, lambda_via_transitions,
    ComponentKind,
};
use ffdist::exact::{all_matchings, balanced_reduction, ffd_exact, unwffd_exact, Limits};
use ffdist::genome::{parse_genomes, Chromosome, Genome, Occurrence, Side, Topology};
use ffdist::ilp::{build_ilp, interpret, solve_exhaustive, Mode, SolverLimits};
use ffdist::numeric::{format_decimal, int, parse_decimal, Rational};
use ffdist::phylo::{neighbor_joining, parse_newick, write_newick};
use ffdist::similarity::{parse_similarities, SimilarityGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIR_5X6: &str = ">A\n1 2 3 4 5 |\n>B\n6 -7 -8 -9 10 11 |\n";
const SIM_5X6: &str =
    "1 6 0.6\n1 7 0.1\n1 9 0.5\n2 7 0.3\n2 8 0.2\n3 7 0.3\n3 9 0.9\n4 8 0.9\n4 10 0.3\n5 10 0.7\n5 11 0.8\n";
const TWO_CHROMOSOMES: &str = ">A\n-6 1 5 3 4 |\n2 8 9 |\n>B\n-6 5 -3 4 -7 2 |\n9 8 |\n";
const FOUR_RUNS: &str = ">A\n2 a1 1 4 a2 3 6 a3 5 |\n>B\n1 2 b1 3 4 5 6 b2 b3 |\n";

type Outcome = Result<String, String>;

fn dec(s: &str) -> Rational {
    parse_decimal(s).unwrap()
}

fn pair_5x6(x: &str) -> (Genome, Genome, SimilarityGraph) {
    let gs = parse_genomes(PAIR_5X6).unwrap();
    let g = parse_similarities(SIM_5X6, &gs[0], &gs[1]).unwrap().apply_threshold(dec(x));
    (gs[0].clone(), gs[1].clone(), g)
}

fn pair_ids(g: &SimilarityGraph, m: &[(&str, &str)]) -> Vec<usize> {
    m.iter()
        .map(|(a, b)| {
            g.edges()
                .iter()
                .position(|e| g.marker_id(Side::A, e.a) == *a && g.marker_id(Side::B, e.b) == *b)
                .unwrap_or_else(|| panic!("no edge {a}-{b}"))
        })
        .collect()
}

fn describe(g: &SimilarityGraph, m: &[usize]) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|&k| {
            let e = &g.edges()[k];
            format!("({},{})", g.marker_id(Side::A, e.a), g.marker_id(Side::B, e.b))
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn fixed(
    a: &Genome,
    b: &Genome,
    g: &SimilarityGraph,
    m: &[(&str, &str)],
    mode: Mode,
) -> Rational {
    let d = build_capped(a, b, g);
    let s = SiblingSet::new(&d, pair_ids(g, m)).unwrap();
    let eval = match mode {
        Mode::Weighted => evaluate_weighted,
        Mode::Unweighted => evaluate_unweighted,
    };
    best_capping(&d, &s, eval).unwrap().0
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (a, b, g) = pair_5x6("0.1");
    let r = ffd_exact(&a, &b, &g, Limits::default()).map_err(|e| e.to_string())?;
    let m3 = {
        let mut v = pair_ids(&g, &[("1", "6"), ("3", "9"), ("4", "8"), ("5", "11")]);
        v.sort_unstable();
        v
    };
    let mut got = r.matching.clone();
    got.sort_unstable();
    let m1 = fixed(&a, &b, &g, &[("1", "9"), ("2", "8"), ("3", "7"), ("5", "10")], Mode::Weighted);
    let m2 = fixed(&a, &b, &g, &[("1", "6"), ("2", "7"), ("3", "9"), ("4", "8"), ("5", "11")], Mode::Weighted);
    let empty = fixed(&a, &b, &g, &[], Mode::Weighted);
    let elapsed = start.elapsed();
    check(
        r.distance == dec("5.1")
            && got == m3
            && m1 == dec("8.6")
            && m2 == dec("5.2")
            && empty == dec("9.7")
            && elapsed < Duration::from_secs(1),
        format!(
            "ffd = {} via {}; M1 {}, M2 {}, empty {}; {:.0?}",
            format_decimal(&r.distance),
            describe(&g, &r.matching),
            format_decimal(&m1),
            format_decimal(&m2),
            format_decimal(&empty),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let (a, b, g) = pair_5x6("0.1");
    let r = unwffd_exact(&a, &b, &g, Limits::default()).map_err(|e| e.to_string())?;
    let m1 = fixed(&a, &b, &g, &[("1", "9"), ("2", "8"), ("3", "7"), ("5", "10")], Mode::Unweighted);
    let empty = fixed(&a, &b, &g, &[], Mode::Unweighted);
    check(
        r.distance == int(3) && m1 == int(4) && empty == int(2),
        format!(
            "unwffd = {} (expected 3) via maximal matching {}; M1 {}, empty {}",
            format_decimal(&r.distance),
            describe(&g, &r.matching),
            format_decimal(&m1),
            format_decimal(&empty)
        ),
    )
}

fn criterion_3() -> Outcome {
    let (a, b, g) = pair_5x6("0.5");
    let m1 = fixed(&a, &b, &g, &[("1", "9"), ("4", "8"), ("5", "10")], Mode::Unweighted);
    let m2 = fixed(&a, &b, &g, &[("1", "6"), ("3", "9"), ("4", "8"), ("5", "11")], Mode::Unweighted);
    check(
        m1 == int(4) && m2 == int(3),
        format!("x = 0.5: M1 {}, M2 {}", format_decimal(&m1), format_decimal(&m2)),
    )
}

fn criterion_4() -> Outcome {
    let gs = parse_genomes(TWO_CHROMOSOMES).unwrap();
    let d = build_singular_diagram(&gs[0], &gs[1]).map_err(|e| e.to_string())?;
    let comps = components(&d, None).map_err(|e| e.to_string())?;
    let count = |k| comps.iter().filter(|c| c.kind() == k).count();
    let got = [
        count(ComponentKind::Cycle),
        count(ComponentKind::AbPath),
        count(ComponentKind::AaPath),
        count(ComponentKind::BbPath),
    ];
    check(
        got == [2, 2, 1, 1],
        format!("cycles {}, AB {}, AA {}, BB {}", got[0], got[1], got[2], got[3]),
    )
}

fn criterion_5() -> Outcome {
    let table = [(0, 0), (1, 1), (2, 2), (4, 3), (6, 4)];
    let bad: Vec<_> = table.iter().filter(|&&(r, l)| indel_potential(r) != l).collect();
    let gs = parse_genomes(FOUR_RUNS).unwrap();
    let d = build_singular_diagram(&gs[0], &gs[1]).map_err(|e| e.to_string())?;
    let comps = components(&d, None).map_err(|e| e.to_string())?;
    let bb = comps.iter().find(|c| c.kind() == ComponentKind::BbPath && c.runs > 0);
    let runs = bb.map(count_runs_of);
    check(
        bad.is_empty() && runs == Some(4),
        format!("table mismatches {bad:?}; BB-path runs {runs:?}"),
    )
}

fn random_genome<R: Rng>(rng: &mut R, name: &str, prefix: &str) -> Genome {
    let n = rng.gen_range(1..=5);
    let mut occs: Vec<Occurrence> = (1..=n)
        .map(|i| Occurrence::new(format!("{prefix}{i}"), rng.gen_bool(0.5)))
        .collect();
    occs.shuffle(rng);
    Genome::new(name, split(rng, occs)).unwrap()
}

/// One or two chromosomes, each circular with probability 0.3.
fn split<R: Rng>(rng: &mut R, occs: Vec<Occurrence>) -> Vec<Chromosome> {
    let n = occs.len();
    let cut = if n > 1 && rng.gen_bool(0.5) { rng.gen_range(1..n) } else { n };
    let mut out = Vec::new();
    for part in [&occs[..cut], &occs[cut..]] {
        if part.is_empty() {
            continue;
        }
        let topo = if rng.gen_bool(0.3) {
            Topology::Circular
        } else {
            Topology::Linear
        };
        out.push(Chromosome::new(part.to_vec(), topo).unwrap());
    }
    out
}

fn random_instance<R: Rng>(rng: &mut R) -> (Genome, Genome, SimilarityGraph) {
    let a = random_genome(rng, "A", "a");
    let b = random_genome(rng, "B", "b");
    let mut all = Vec::new();
    for x in a.marker_ids() {
        for y in b.marker_ids() {
            all.push((x.to_string(), y.to_string()));
        }
    }
    all.shuffle(rng);
    let m = rng.gen_range(0..=8.min(all.len()));
    let triples: Vec<_> = all
        .into_iter()
        .take(m)
        .map(|(x, y)| (x, y, Rational::new(rng.gen_range(1..=10), 10)))
        .collect();
    let g = SimilarityGraph::from_triples(&a, &b, triples).unwrap();
    (a, b, g)
}

/// Criteria 6 and 7 share the same sweep.
fn criteria_6_and_7() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let instances = 240;
    let mut mismatches = Vec::new();
    let mut cycles = 0usize;
    let mut lambda_bad = Vec::new();
    for k in 0..instances {
        let (a, b, g) = random_instance(&mut rng);
        let d = build_capped(&a, &b, &g);
        assert!(d.p_star() <= 2);
        for mode in [Mode::Weighted, Mode::Unweighted] {
            let oracle = match mode {
                Mode::Weighted => ffd_exact(&a, &b, &g, Limits::default()),
                Mode::Unweighted => unwffd_exact(&a, &b, &g, Limits::default()),
            }
            .unwrap()
            .distance;
            let m = build_ilp(&d, mode).unwrap();
            let sol = solve_exhaustive(&m, SolverLimits::default()).unwrap();
            let total = sol.objective + int(d.p_star() as i64);
            if total != oracle || m.lp.constant != int(d.p_star() as i64) {
                mismatches.push(format!("#{k} {mode:?}: ilp {} oracle {}", format_decimal(&total), format_decimal(&oracle)));
            }
            if let Err(e) = interpret(&sol, &m, &d) {
                mismatches.push(format!("#{k} {mode:?}: {e}"));
            }
        }
        for matching in all_matchings(&g) {
            let s = SiblingSet::new(&d, matching).unwrap();
            for p in all_cappings(&d) {
                let q = induce(&d, &s, Some(&p)).unwrap();
                for c in q.components.iter().filter(|c| c.is_cycle()) {
                    cycles += 1;
                    let via = lambda_via_transitions(c).unwrap();
                    if via != int(indel_potential(count_runs_of(c)) as i64) {
                        lambda_bad.push(format!("#{k}: {} vs runs {}", format_decimal(&via), count_runs_of(c)));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let c6 = check(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{instances} instances x 2 modes, {} mismatches {:?}; {:.1?}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            elapsed
        ),
    );
    let c7 = check(
        lambda_bad.is_empty() && cycles > 0,
        format!("{cycles} cycles checked, {} disagreements {:?}", lambda_bad.len(), lambda_bad.iter().take(3).collect::<Vec<_>>()),
    );
    (c6, c7)
}

/// Chromosomes as `(occurrences, circular)`.
type Layout = Vec<(Vec<(String, bool)>, bool)>;

fn extremity_partners(layout: &Layout) -> HashMap<(String, bool), (String, bool)> {
    // (marker, is_head)
    let ends = |id: &str, fw: bool| ((id.to_string(), !fw), (id.to_string(), fw));
    let mut adj = HashMap::new();
    for (occs, circular) in layout {
        let mut links: Vec<(usize, usize)> = (0..occs.len().saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if *circular {
            links.push((occs.len() - 1, 0));
        }
        for (i, j) in links {
            let right = ends(&occs[i].0, occs[i].1).1;
            let left = ends(&occs[j].0, occs[j].1).0;
            adj.insert(right.clone(), left.clone());
            adj.insert(left, right);
        }
    }
    adj
}

/// DCJ distance of two genomes over the same unique markers, from the
/// adjacency graph: markers minus (cycles + odd paths / 2).
fn dcj_distance(a: &Layout, b: &Layout) -> Rational {
    let pa = extremity_partners(a);
    let pb = extremity_partners(b);
    let markers: Vec<String> = a.iter().flat_map(|(o, _)| o.iter().map(|(m, _)| m.clone())).collect();
    let all: Vec<(String, bool)> = markers.iter().flat_map(|m| [(m.clone(), false), (m.clone(), true)]).collect();
    let mut seen: HashSet<(String, bool)> = HashSet::new();
    let (mut cycles, mut odd) = (0i64, 0i64);
    // paths from an end without an A partner
    for x in all.iter().filter(|x| !pa.contains_key(*x)) {
        if seen.contains(x) {
            continue;
        }
        let mut cur = x.clone();
        seen.insert(cur.clone());
        loop {
            let Some(y) = pb.get(&cur) else {
                odd += 1;
                break;
            };
            seen.insert(y.clone());
            let Some(z) = pa.get(y) else {
                break;
            };
            seen.insert(z.clone());
            cur = z.clone();
        }
    }
    // paths with both ends lacking a B partner are even; what is left is
    // cycles
    for x in all.iter().filter(|x| !pb.contains_key(*x)) {
        if seen.contains(x) {
            continue;
        }
        let mut cur = x.clone();
        seen.insert(cur.clone());
        while let Some(y) = pa.get(&cur) {
            seen.insert(y.clone());
            match pb.get(y) {
                Some(z) => {
                    seen.insert(z.clone());
                    cur = z.clone();
                }
                None => break,
            }
        }
    }
    for x in &all {
        if seen.contains(x) {
            continue;
        }
        cycles += 1;
        let mut cur = x.clone();
        while seen.insert(cur.clone()) {
            let y = pa[&cur].clone();
            seen.insert(y.clone());
            cur = pb[&y].clone();
        }
    }
    int(markers.len() as i64) - int(cycles) - Rational::new(odd, 2)
}

fn layout_of(g: &Genome) -> Layout {
    g.chromosomes()
        .iter()
        .map(|c| {
            (
                c.markers().iter().map(|o| (o.marker.clone(), o.forward)).collect(),
                c.topology() == Topology::Circular,
            )
        })
        .collect()
}

/// Relabels the k-th occurrence of each family as `family#pi(k)`.
fn relabel(layout: &Layout, pi: &HashMap<String, Vec<usize>>) -> Layout {
    let mut seen: HashMap<String, usize> = HashMap::new();
    layout
        .iter()
        .map(|(occs, circ)| {
            let occs = occs
                .iter()
                .map(|(f, fw)| {
                    let k = seen.entry(f.clone()).or_insert(0);
                    let id = format!("{f}#{}", pi[f][*k]);
                    *k += 1;
                    (id, *fw)
                })
                .collect();
            (occs, *circ)
        })
        .collect()
}

fn min_dcj_over_bijections(a: &Genome, b: &Genome) -> Rational {
    let la = layout_of(a);
    let lb = layout_of(b);
    let mut counts: HashMap<String, usize> = HashMap::new();
    for (occs, _) in &la {
        for (f, _) in occs {
            *counts.entry(f.clone()).or_insert(0) += 1;
        }
    }
    let identity: HashMap<String, Vec<usize>> = counts.iter().map(|(f, &c)| (f.clone(), (0..c).collect())).collect();
    let la = relabel(&la, &identity);
    let families: Vec<String> = {
        let mut v: Vec<String> = counts.keys().cloned().collect();
        v.sort();
        v
    };
    let mut best: Option<Rational> = None;
    let choices: Vec<Vec<Vec<usize>>> = families
        .iter()
        .map(|f| if counts[f] == 2 { vec![vec![0, 1], vec![1, 0]] } else { vec![vec![0]] })
        .collect();
    let total: usize = choices.iter().map(Vec::len).product();
    for mut code in 0..total {
        let mut pi = HashMap::new();
        for (f, opts) in families.iter().zip(&choices) {
            pi.insert(f.clone(), opts[code % opts.len()].clone());
            code /= opts.len();
        }
        let d = dcj_distance(&la, &relabel(&lb, &pi));
        best = Some(best.map_or(d, |b: Rational| b.min(d)));
    }
    best.unwrap()
}

fn random_balanced<R: Rng>(rng: &mut R) -> (Genome, Genome) {
    let families = rng.gen_range(1..=3);
    let mut pool = Vec::new();
    for f in 1..=families {
        for _ in 0..rng.gen_range(1..=2) {
            pool.push(format!("f{f}"));
        }
    }
    let mut make = |name: &str| {
        let mut v = pool.clone();
        v.shuffle(rng);
        let occs = v.into_iter().map(|f| Occurrence::new(f, rng.gen_bool(0.5))).collect();
        Genome::with_repeats(name, split(rng, occs))
    };
    let a = make("A");
    let b = make("B");
    (a, b)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut bad = Vec::new();
    let pairs = 60;
    for k in 0..pairs {
        let (a, b) = random_balanced(&mut rng);
        let (ra, rb, g) = balanced_reduction(&a, &b).map_err(|e| e.to_string())?;
        let ffd = ffd_exact(&ra, &rb, &g, Limits { max_edges: 20, max_caps: 4 })
            .map_err(|e| e.to_string())?
            .distance;
        let direct = min_dcj_over_bijections(&a, &b);
        if ffd != direct {
            bad.push(format!("#{k}: ffd {} direct {}", format_decimal(&ffd), format_decimal(&direct)));
        }
    }
    check(bad.is_empty(), format!("{pairs} balanced pairs, {} mismatches {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn random_newick<R: Rng>(rng: &mut R, n: usize) -> String {
    fn len<R: Rng>(rng: &mut R) -> String {
        format_decimal(&Rational::new(rng.gen_range(1..=40), 4))
    }
    let mut clusters: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    while clusters.len() > 3 {
        let x = clusters.swap_remove(rng.gen_range(0..clusters.len()));
        let y = clusters.swap_remove(rng.gen_range(0..clusters.len()));
        let (lx, ly) = (len(rng), len(rng));
        clusters.push(format!("({x}:{lx},{y}:{ly})"));
    }
    let parts: Vec<String> = clusters.iter().map(|c| format!("{c}:{}", len(rng))).collect();
    format!("({});", parts.join(","))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trees = 30;
    let mut bad = Vec::new();
    for k in 0..trees {
        let n = rng.gen_range(4..=6);
        let truth = parse_newick(&random_newick(&mut rng, n)).unwrap();
        let t = neighbor_joining(&truth.path_matrix()).map_err(|e| e.to_string())?;
        if t != truth {
            bad.push(format!("#{k}: {} vs {}", write_newick(&t), write_newick(&truth)));
        }
    }
    check(bad.is_empty(), format!("{trees} additive matrices, {} wrong {:?}", bad.len(), bad.iter().take(2).collect::<Vec<_>>()))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ffdist"))
        .args(args)
        .env_remove("FFDIST_SOLVER_CMD")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let fx = fixtures();
    let a = fx.join("pair5x6/A.gen");
    let b = fx.join("pair5x6/B.gen");
    let s = fx.join("pair5x6/sim.tsv");
    let (a, b, s) = (a.to_str().unwrap(), b.to_str().unwrap(), s.to_str().unwrap());
    let p = |name: &str| d.join(name).to_str().unwrap().to_string();

    // a three-genome collection for matrix and tree
    let col = d.join("col");
    std::fs::create_dir_all(col.join("sims")).unwrap();
    std::fs::write(
        col.join("genomes.gen"),
        ">A\n1 2 3 4 5 |\n>B\n6 -7 -8 -9 10 11 |\n>C\nc1 c2 -c3 c4 c5 |\n",
    )
    .unwrap();
    std::fs::write(col.join("sims/A__B.tsv"), SIM_5X6).unwrap();
    std::fs::write(col.join("sims/A__C.tsv"), "1 c1 1\n2 c2 0.9\n3 c3 0.8\n4 c4 1\n5 c5 0.7\n").unwrap();
    std::fs::write(col.join("sims/C__B.tsv"), "c1 6 0.5\nc3 9 0.9\nc4 8 0.9\nc5 11 0.8\n").unwrap();
    let genomes = col.join("genomes.gen");
    let sims = col.join("sims");
    let (genomes, sims) = (genomes.to_str().unwrap(), sims.to_str().unwrap());

    let mut report = Vec::new();
    let mut failures = Vec::new();
    let runs: Vec<(&str, Vec<String>, Option<String>)> = vec![
        ("distance", vec!["distance", "-a", a, "-b", b, "-s", s, "-x", "0.1"].into_iter().map(String::from).collect(), None),
        (
            "distance-unweighted",
            vec!["distance", "-a", a, "-b", b, "-s", s, "-x", "0.1", "--unweighted"].into_iter().map(String::from).collect(),
            None,
        ),
        ("emit-lp", vec!["emit-lp", "-a", a, "-b", b, "-s", s, "-o"].into_iter().map(String::from).chain([p("m.lp")]).collect(), Some(p("m.lp"))),
        (
            "matrix",
            vec!["matrix", "-g", genomes, "-s", sims, "-x", "0.1", "--jobs", "3", "-o"].into_iter().map(String::from).chain([p("m.phy")]).collect(),
            Some(p("m.phy")),
        ),
        ("tree", vec!["tree".to_string(), "-m".into(), p("m.phy"), "-o".into(), p("t.nwk")], Some(p("t.nwk"))),
        (
            "simulate",
            vec!["simulate", "--seed", "7", "--markers", "20", "--dcj", "3", "--indel", "2", "--dup", "1", "--noise", "0.1", "-o"]
                .into_iter()
                .map(String::from)
                .chain([p("sim")])
                .collect(),
            Some(p("sim/A__B.tsv")),
        ),
        ("diagram-stats", vec!["diagram-stats", "-a", a, "-b", b, "-s", s, "-x", "0.1", "--dump"].into_iter().map(String::from).collect(), None),
    ];
    for (name, args, file) in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let mut bytes = run_cli(&args)?;
            if let Some(f) = file {
                bytes.extend(std::fs::read(f).map_err(|e| e.to_string())?);
                if *name == "simulate" {
                    bytes.extend(std::fs::read(p("sim/genomes.gen")).map_err(|e| e.to_string())?);
                }
            }
            outputs.push(bytes);
        }
        if outputs[0] == outputs[1] && !outputs[0].is_empty() {
            report.push(*name);
        } else {
            failures.push(*name);
        }
    }
    let lp = std::fs::read_to_string(p("m.lp")).unwrap();
    let section = |from: &str, to: &str| -> Vec<String> {
        let body = lp.split(from).nth(1).unwrap_or("").split(to).next().unwrap_or("");
        body.split_whitespace().map(String::from).collect()
    };
    let x_vars = section("\nBinaries\n", "\nGenerals\n").iter().filter(|v| v.starts_with('x')).count();
    let z_vars = section("\nBinaries\n", "\nGenerals\n").iter().filter(|v| v.starts_with('z')).count();
    check(
        failures.is_empty() && x_vars == 50 && z_vars == 26,
        format!("identical: {report:?}; differing: {failures:?}; LP has {x_vars} x and {z_vars} z variables"),
    )
}

#[test]
fn acceptance() {
    let (c6, c7) = criteria_6_and_7();
    let results = vec![
        ("1 weighted oracle, 5x6 pair", criterion_1()),
        ("2 unweighted oracle, 5x6 pair", criterion_2()),
        ("3 fixed matchings at x = 0.5", criterion_3()),
        ("4 components of the two-chromosome pair", criterion_4()),
        ("5 indel potential", criterion_5()),
        ("6 oracle equals ILP", c6),
        ("7 lambda via transitions", c7),
        ("8 balanced reduction", criterion_8()),
        ("9 NJ consistency", criterion_9()),
        ("10 CLI determinism", criterion_10()),
    ];
    let mut failed = Vec::new();
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {name}: FAIL ({detail})");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
