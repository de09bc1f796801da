//! Seeded generator of related genome pairs with a similarity table.
//!
//! Genome A has markers `a1..an` split into linear and circular chromosomes.
//! B starts as a copy with ids `b1..bn` and then receives random DCJs (on
//! its adjacency set), insertions and deletions of 1 to 3 markers.
//! Duplications copy a marker of A next to the original; the copy gets a
//! fresh id and similarity 1 to the original's partner, so that partner
//! carries two homology edges.
//!
//! Randomness comes from ChaCha8 seeded with a `u64`, so a (params, seed)
//! pair always produces the same output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::genome::{render_genomes, Chromosome, Genome, Occurrence, Topology};
use crate::numeric::Rational;
use crate::similarity::SimilarityGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    pub markers: usize,
    pub chromosomes: usize,
    /// Share of chromosomes made circular, rounded to a whole count.
    pub circular_fraction: f64,
    pub dcj: usize,
    pub indel: usize,
    pub dup: usize,
    /// 0 gives exact similarities of 1 and no spurious edges.
    pub noise: f64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            markers: 10,
            chromosomes: 1,
            circular_fraction: 0.0,
            dcj: 2,
            indel: 1,
            dup: 0,
            noise: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad simulation parameters: {0}")]
pub struct BadParams(pub String);

#[derive(Debug, Clone)]
pub struct SimulatedPair {
    pub a: Genome,
    pub b: Genome,
    pub similarity: SimilarityGraph,
}

impl SimulatedPair {
    pub fn genome_text(&self) -> String {
        render_genomes(&[self.a.clone(), self.b.clone()])
    }

    pub fn similarity_tsv(&self) -> String {
        self.similarity.to_tsv()
    }
}

type Chrom = (Vec<(usize, bool)>, Topology);

fn check(p: &SimParams) -> Result<(), BadParams> {
    let unit = |x: f64| (0.0..=1.0).contains(&x);
    if p.markers == 0 {
        return Err(BadParams("at least one marker is needed".into()));
    }
    if p.chromosomes == 0 || p.chromosomes > p.markers {
        return Err(BadParams(format!(
            "{} chromosomes cannot hold {} markers",
            p.chromosomes, p.markers
        )));
    }
    if !unit(p.circular_fraction) || !unit(p.noise) {
        return Err(BadParams("circular fraction and noise must lie in [0, 1]".into()));
    }
    if p.indel > p.markers {
        return Err(BadParams(format!("{} indels exceed {} markers", p.indel, p.markers)));
    }
    Ok(())
}

fn round3(x: f64) -> Rational {
    Rational::new((x * 1000.0).round() as i64, 1000)
}

/// Random initial genome over marker indices `0..n`.
fn initial(rng: &mut ChaCha8Rng, p: &SimParams) -> Vec<Chrom> {
    let n = p.markers;
    let mut cuts: Vec<usize> = Vec::new();
    let mut pool: Vec<usize> = (1..n).collect();
    for _ in 1..p.chromosomes {
        let k = rng.gen_range(0..pool.len());
        cuts.push(pool.swap_remove(k));
    }
    cuts.sort_unstable();
    cuts.push(n);
    let circular = (p.circular_fraction * p.chromosomes as f64).round() as usize;
    let mut out = Vec::new();
    let mut start = 0;
    for (c, &end) in cuts.iter().enumerate() {
        let occs = (start..end).map(|m| (m, rng.gen_bool(0.5))).collect();
        let topo = if c >= p.chromosomes - circular {
            Topology::Circular
        } else {
            Topology::Linear
        };
        out.push((occs, topo));
        start = end;
    }
    out
}

/// One random DCJ on the adjacency/telomere set of `chroms`.
fn dcj(rng: &mut ChaCha8Rng, chroms: &[Chrom], universe: usize) -> Vec<Chrom> {
    // extremity 2m is the tail of marker m, 2m+1 its head
    let mut partner: Vec<Option<usize>> = vec![None; 2 * universe];
    let mut present = vec![false; universe];
    let left = |&(m, fw): &(usize, bool)| if fw { 2 * m } else { 2 * m + 1 };
    let right = |&(m, fw): &(usize, bool)| if fw { 2 * m + 1 } else { 2 * m };
    for (occs, topo) in chroms {
        for o in occs {
            present[o.0] = true;
        }
        for w in occs.windows(2) {
            partner[right(&w[0])] = Some(left(&w[1]));
            partner[left(&w[1])] = Some(right(&w[0]));
        }
        if *topo == Topology::Circular {
            let (first, last) = (&occs[0], &occs[occs.len() - 1]);
            partner[right(last)] = Some(left(first));
            partner[left(first)] = Some(right(last));
        }
    }
    let points: Vec<(usize, Option<usize>)> = (0..2 * universe)
        .filter(|&x| present[x / 2])
        .filter_map(|x| match partner[x] {
            None => Some((x, None)),
            Some(y) if y > x => Some((x, Some(y))),
            Some(_) => None,
        })
        .collect();
    let join = |partner: &mut Vec<Option<usize>>, a: usize, b: usize| {
        partner[a] = Some(b);
        partner[b] = Some(a);
    };
    loop {
        let i = rng.gen_range(0..points.len());
        let j = rng.gen_range(0..points.len());
        let flip = rng.gen_bool(0.5);
        match (points[i], points[j]) {
            ((a, Some(b)), _) if i == j => {
                partner[a] = None;
                partner[b] = None;
            }
            (_, _) if i == j => continue,
            ((a, Some(b)), (c, Some(d))) => {
                if flip {
                    join(&mut partner, a, c);
                    join(&mut partner, b, d);
                } else {
                    join(&mut partner, a, d);
                    join(&mut partner, b, c);
                }
            }
            ((a, Some(b)), (c, None)) | ((c, None), (a, Some(b))) => {
                let (keep, free) = if flip { (a, b) } else { (b, a) };
                join(&mut partner, keep, c);
                partner[free] = None;
            }
            ((a, None), (c, None)) => join(&mut partner, a, c),
        }
        break;
    }
    rebuild(&partner, &present)
}

fn rebuild(partner: &[Option<usize>], present: &[bool]) -> Vec<Chrom> {
    let mut seen = vec![false; present.len()];
    let mut out = Vec::new();
    let trace = |start: usize, seen: &mut Vec<bool>| -> Vec<(usize, bool)> {
        let mut occs = Vec::new();
        let mut x = start;
        loop {
            let m = x / 2;
            if seen[m] {
                break;
            }
            seen[m] = true;
            occs.push((m, x % 2 == 0));
            match partner[x ^ 1] {
                Some(y) => x = y,
                None => break,
            }
        }
        occs
    };
    for x in 0..partner.len() {
        if present[x / 2] && !seen[x / 2] && partner[x].is_none() {
            out.push((trace(x, &mut seen), Topology::Linear));
        }
    }
    for m in 0..present.len() {
        if present[m] && !seen[m] {
            out.push((trace(2 * m, &mut seen), Topology::Circular));
        }
    }
    out
}

fn to_genome(name: &str, chroms: &[Chrom], ids: &[String]) -> Genome {
    let chromosomes = chroms
        .iter()
        .map(|(occs, topo)| {
            let occs = occs.iter().map(|&(m, fw)| Occurrence::new(ids[m].clone(), fw)).collect();
            Chromosome::new(occs, *topo).expect("chromosomes are never empty")
        })
        .collect();
    Genome::new(name, chromosomes).expect("generated ids are unique")
}

/// Generates a related pair; B descends from A by the requested events.
pub fn simulate_pair(p: &SimParams, seed: u64) -> Result<SimulatedPair, BadParams> {
    check(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.markers;
    let a_chroms = initial(&mut rng, p);
    let mut a_ids: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let mut b_ids: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let mut b_chroms = a_chroms.clone();

    for _ in 0..p.dcj {
        b_chroms = dcj(&mut rng, &b_chroms, b_ids.len());
    }

    for _ in 0..p.indel {
        let total: usize = b_chroms.iter().map(|c| c.0.len()).sum();
        let len = rng.gen_range(1..=3usize);
        let delete = rng.gen_bool(0.5) && total > 1;
        if delete {
            let len = len.min(total - 1);
            let mut pick = rng.gen_range(0..total);
            let c = b_chroms
                .iter()
                .position(|(occs, _)| {
                    if pick < occs.len() {
                        true
                    } else {
                        pick -= occs.len();
                        false
                    }
                })
                .unwrap();
            let occs = &mut b_chroms[c].0;
            let end = (pick + len).min(occs.len());
            occs.drain(pick..end);
            if occs.is_empty() {
                b_chroms.remove(c);
            }
        } else {
            let c = rng.gen_range(0..b_chroms.len());
            let at = rng.gen_range(0..=b_chroms[c].0.len());
            let block: Vec<(usize, bool)> = (0..len)
                .map(|_| {
                    b_ids.push(format!("b{}", b_ids.len() + 1));
                    (b_ids.len() - 1, rng.gen_bool(0.5))
                })
                .collect();
            b_chroms[c].0.splice(at..at, block);
        }
    }

    let mut in_b = vec![false; b_ids.len()];
    for (occs, _) in &b_chroms {
        for &(m, _) in occs {
            in_b[m] = true;
        }
    }
    // (A index, B index) homologies with exact similarity 1 before noise
    let mut homologs: Vec<(usize, usize)> = (0..n).filter(|&i| in_b[i]).map(|i| (i, i)).collect();
    let mut a_chroms = a_chroms;
    let mut dup_edges = Vec::new();
    for _ in 0..p.dup {
        let pool: Vec<(usize, usize)> = homologs.clone();
        let (orig, partner) = if pool.is_empty() {
            (rng.gen_range(0..n), None)
        } else {
            let (a, b) = pool[rng.gen_range(0..pool.len())];
            (a, Some(b))
        };
        a_ids.push(format!("a{}", a_ids.len() + 1));
        let copy = a_ids.len() - 1;
        for (occs, _) in a_chroms.iter_mut() {
            if let Some(pos) = occs.iter().position(|o| o.0 == orig) {
                let fw = occs[pos].1;
                occs.insert(pos + 1, (copy, fw));
                break;
            }
        }
        if let Some(b) = partner {
            dup_edges.push((copy, b));
        }
    }
    homologs.sort_unstable();

    let a = to_genome("A", &a_chroms, &a_ids);
    let b = to_genome("B", &b_chroms, &b_ids);
    let mut triples: Vec<(String, String, Rational)> = Vec::new();
    for &(ia, ib) in &homologs {
        let sigma = if p.noise == 0.0 {
            Rational::from_integer(1)
        } else {
            round3(1.0 - p.noise * rng.gen::<f64>())
        };
        triples.push((a_ids[ia].clone(), b_ids[ib].clone(), sigma));
    }
    for &(ia, ib) in &dup_edges {
        triples.push((a_ids[ia].clone(), b_ids[ib].clone(), Rational::from_integer(1)));
    }
    if p.noise > 0.0 {
        let b_present: Vec<usize> = (0..b_ids.len()).filter(|&m| in_b[m]).collect();
        for ia in 0..a_ids.len() {
            if rng.gen_bool(p.noise) {
                let ib = b_present[rng.gen_range(0..b_present.len())];
                let taken = triples.iter().any(|(x, y, _)| *x == a_ids[ia] && *y == b_ids[ib]);
                if !taken {
                    triples.push((a_ids[ia].clone(), b_ids[ib].clone(), round3(p.noise * rng.gen::<f64>())));
                }
            }
        }
    }
    let similarity = SimilarityGraph::from_triples(&a, &b, triples).expect("generated edges are valid");
    Ok(SimulatedPair { a, b, similarity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::Side;

    fn params(dcj: usize, indel: usize, dup: usize) -> SimParams {
        SimParams {
            markers: 6,
            chromosomes: 2,
            circular_fraction: 0.5,
            dcj,
            indel,
            dup,
            noise: 0.0,
        }
    }

    #[test]
    fn same_seed_same_output() {
        let p = SimParams {
            noise: 0.3,
            dup: 2,
            ..SimParams::default()
        };
        let x = simulate_pair(&p, 7).unwrap();
        let y = simulate_pair(&p, 7).unwrap();
        assert_eq!(x.genome_text(), y.genome_text());
        assert_eq!(x.similarity_tsv(), y.similarity_tsv());
        let z = simulate_pair(&p, 8).unwrap();
        assert_ne!((x.genome_text(), x.similarity_tsv()), (z.genome_text(), z.similarity_tsv()));
    }

    #[test]
    fn no_events_gives_relabeled_copy() {
        let s = simulate_pair(&params(0, 0, 0), 3).unwrap();
        let relabeled = s.b.chromosomes().iter().zip(s.a.chromosomes()).all(|(cb, ca)| {
            cb.topology() == ca.topology()
                && cb
                    .markers()
                    .iter()
                    .zip(ca.markers())
                    .all(|(ob, oa)| ob.marker[1..] == oa.marker[1..] && ob.forward == oa.forward)
        });
        assert!(relabeled);
        assert_eq!(s.similarity.len(), 6);
    }

    #[test]
    fn one_duplication_gives_one_double_homology() {
        for seed in 0..20 {
            let s = simulate_pair(&params(0, 0, 1), seed).unwrap();
            let doubles = (0..s.b.marker_count())
                .filter(|&m| s.similarity.incident(Side::B, m).count() == 2)
                .count();
            assert_eq!(doubles, 1, "seed {seed}");
            assert_eq!(s.a.marker_count(), 7);
        }
    }

    #[test]
    fn events_change_the_genomes_consistently() {
        for seed in 0..30 {
            let s = simulate_pair(&params(3, 2, 1), seed).unwrap();
            assert!(s.b.marker_count() >= 1);
            assert!(s.similarity.edges().iter().all(|e| e.sigma == Rational::from_integer(1)));
        }
    }

    #[test]
    fn bad_params() {
        let mut p = params(0, 0, 0);
        p.markers = 0;
        assert!(simulate_pair(&p, 0).is_err());
        let mut p = params(0, 0, 0);
        p.chromosomes = 9;
        assert!(simulate_pair(&p, 0).is_err());
        let mut p = params(0, 7, 0);
        p.noise = 0.0;
        assert!(simulate_pair(&p, 0).is_err());
        let mut p = params(0, 0, 0);
        p.noise = 1.5;
        assert!(simulate_pair(&p, 0).is_err());
    }
}
