#![allow(dead_code)]

use diagdist::{GraphLabelling, Multigraph, PrimeField};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Multigraph on `n` vertices with every pair's multiplicity drawn from `0..=max_mult`.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, max_mult: u64) -> Multigraph {
    let mut g = Multigraph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            let m = rng.gen_range(0..=max_mult);
            if m > 0 {
                g.add_edge(u, v, m).unwrap();
            }
        }
    }
    g
}

/// Random spanning tree plus each remaining pair with probability `density`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, density: f64) -> Multigraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Multigraph::new(n).unwrap();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(order[i], parent, 1).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.multiplicity(u, v) == 0 && rng.gen_bool(density) {
                g.add_edge(u, v, 1).unwrap();
            }
        }
    }
    g
}

pub fn random_labelling<R: Rng>(rng: &mut R, n: usize, f: &PrimeField) -> GraphLabelling {
    let p = i64::from(f.modulus());
    GraphLabelling::from_values((0..n).map(|_| rng.gen_range(0..p)), f)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// All 2^(n(n-1)/2) labelled simple graphs on `n` vertices.
pub fn all_simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(u, v))| (u, v, 1));
            Multigraph::from_edges(n, edges).unwrap()
        })
        .collect()
}
