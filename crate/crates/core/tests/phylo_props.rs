use ffdist::numeric::{format_decimal, Rational};
use ffdist::phylo::{neighbor_joining, parse_newick, parse_phylip, write_newick, write_phylip, DistanceMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn length<R: Rng>(rng: &mut R) -> String {
    format_decimal(&Rational::new(rng.gen_range(1..=40), 4))
}

/// Random unrooted binary tree on `n >= 3` leaves, as Newick.
fn random_newick<R: Rng>(rng: &mut R, n: usize) -> String {
    let mut clusters: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    clusters.shuffle(rng);
    while clusters.len() > 3 {
        let i = rng.gen_range(0..clusters.len());
        let x = clusters.swap_remove(i);
        let j = rng.gen_range(0..clusters.len());
        let y = clusters.swap_remove(j);
        clusters.push(format!("({x}:{},{y}:{})", length(rng), length(rng)));
    }
    let parts: Vec<String> = clusters.iter().map(|c| format!("{c}:{}", length(rng))).collect();
    format!("({});", parts.join(","))
}

#[test]
fn nj_inverts_additive_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..40 {
        let n = 4 + round % 4;
        let truth = parse_newick(&random_newick(&mut rng, n)).unwrap();
        let m = truth.path_matrix();
        let t = neighbor_joining(&m).unwrap();
        assert_eq!(t, truth, "{} vs {}", write_newick(&t), write_newick(&truth));
        assert_eq!(t.path_matrix(), m);
    }
}

#[test]
fn nj_does_not_depend_on_taxon_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let truth = parse_newick(&random_newick(&mut rng, 6)).unwrap();
        let m = truth.path_matrix();
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.shuffle(&mut rng);
        let taxa = order.iter().map(|&i| m.taxa()[i].clone()).collect();
        let rows = order.iter().map(|&i| order.iter().map(|&j| m.get(i, j)).collect()).collect();
        let shuffled = DistanceMatrix::new(taxa, rows).unwrap();
        assert_eq!(neighbor_joining(&shuffled).unwrap(), truth);
    }
}

#[test]
fn text_formats_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let t = parse_newick(&random_newick(&mut rng, 5)).unwrap();
        let text = write_newick(&t);
        assert_eq!(parse_newick(&text).unwrap(), t);
        assert_eq!(write_newick(&parse_newick(&text).unwrap()), text);
        let m = t.path_matrix();
        assert_eq!(parse_phylip(&write_phylip(&m).unwrap()).unwrap(), m);
    }
}

#[test]
fn outgroup_rooting_keeps_the_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..10 {
        let t = parse_newick(&random_newick(&mut rng, 5)).unwrap();
        let r = t.rooted_at_outgroup("t3").unwrap();
        assert!(r.is_rooted());
        assert_eq!(r, t);
        assert_eq!(parse_newick(&write_newick(&r)).unwrap(), t);
        assert_eq!(r.path_matrix(), t.path_matrix());
    }
}
