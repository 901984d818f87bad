//! Exhaustive lattice oracles for the projection characterizations.
//!
//! On the 0.25-step grid the min/max and piecewise-linear families keep
//! every intermediate value on the grid, so recalls can be compared bit
//! for bit against brute-force enumeration: the distributed memories must
//! return the adjacent fixed point (largest below the input for min-D,
//! smallest above for max-C), and the projection memories the optimal
//! coefficient combination on the same side. The product family leaves
//! the grid and is covered by the randomized property suite instead.

use fuzzymm::{
    builtin_family, max_c_combination, min_d_combination, DistributedKind, DistributedMemory,
    FamilyName, FundamentalMemorySet, FuzzyVector, ProjectionMemory, Recall,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

const GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const GRID_FAMILIES: [FamilyName; 3] =
    [FamilyName::Godel, FamilyName::Lukasiewicz, FamilyName::Gaines];
const DIMENSION: usize = 3;
const STORED: usize = 2;
const DRAWS: usize = 25;

/// Every grid-valued vector of the given length, in lexicographic order.
fn grid_vectors(n: usize) -> Vec<FuzzyVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<f64>| {
                GRID.iter().map(move |&g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|v| FuzzyVector::new(v).unwrap())
        .collect()
}

fn random_grid_set(rng: &mut ChaCha12Rng) -> FundamentalMemorySet {
    FundamentalMemorySet::new(
        (0..STORED)
            .map(|_| {
                FuzzyVector::new(
                    (0..DIMENSION)
                        .map(|_| GRID[rng.gen_range(0..GRID.len())])
                        .collect(),
                )
                .unwrap()
            })
            .collect(),
    )
    .unwrap()
}

fn below(a: &FuzzyVector, b: &FuzzyVector) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Componentwise join of all candidates below `x`, starting from zero.
fn join_below(candidates: &[FuzzyVector], x: &FuzzyVector) -> Vec<f64> {
    let mut best = vec![0.0f64; x.len()];
    for z in candidates.iter().filter(|z| below(z, x)) {
        for (b, v) in best.iter_mut().zip(z.iter()) {
            *b = b.max(*v);
        }
    }
    best
}

/// Componentwise meet of all candidates above `x`, starting from one.
fn meet_above(candidates: &[FuzzyVector], x: &FuzzyVector) -> Vec<f64> {
    let mut best = vec![1.0f64; x.len()];
    for z in candidates.iter().filter(|z| below(x, z)) {
        for (b, v) in best.iter_mut().zip(z.iter()) {
            *b = b.min(*v);
        }
    }
    best
}

#[test]
fn distributed_recall_is_the_adjacent_fixed_point() {
    let inputs = grid_vectors(DIMENSION);
    let mut rng = ChaCha12Rng::seed_from_u64(2601);
    for family in GRID_FAMILIES {
        for _ in 0..DRAWS {
            let set = random_grid_set(&mut rng);
            let erosion =
                DistributedMemory::train_fla(&set, family, DistributedKind::MinD).unwrap();
            let dilation =
                DistributedMemory::train_fla(&set, family, DistributedKind::MaxC).unwrap();
            let eroded_fixed: Vec<FuzzyVector> = inputs
                .iter()
                .filter(|z| erosion.recall(z).unwrap().as_slice() == z.as_slice())
                .cloned()
                .collect();
            let dilated_fixed: Vec<FuzzyVector> = inputs
                .iter()
                .filter(|z| dilation.recall(z).unwrap().as_slice() == z.as_slice())
                .cloned()
                .collect();
            for x in &inputs {
                assert_eq!(
                    erosion.recall(x).unwrap().as_slice(),
                    &join_below(&eroded_fixed, x)[..],
                    "{family}: min-d recall is not the largest fixed point below the input"
                );
                assert_eq!(
                    dilation.recall(x).unwrap().as_slice(),
                    &meet_above(&dilated_fixed, x)[..],
                    "{family}: max-c recall is not the smallest fixed point above the input"
                );
            }
        }
    }
}

#[test]
fn projection_recall_is_the_optimal_combination() {
    let inputs = grid_vectors(DIMENSION);
    let coefficient_grids = grid_vectors(STORED);
    let mut rng = ChaCha12Rng::seed_from_u64(2603);
    for family in GRID_FAMILIES {
        let f = builtin_family(family);
        for _ in 0..DRAWS {
            let set = random_grid_set(&mut rng);
            let conjunctive_combinations: Vec<FuzzyVector> = coefficient_grids
                .iter()
                .map(|coeffs| max_c_combination(coeffs, &set, f.conjunction()).unwrap())
                .collect();
            let disjunctive_combinations: Vec<FuzzyVector> = coefficient_grids
                .iter()
                .map(|coeffs| min_d_combination(coeffs, &set, f.disjunction().unwrap()).unwrap())
                .collect();
            let v = ProjectionMemory::max_c(set.clone(), family).unwrap();
            let s = ProjectionMemory::min_d(set, family).unwrap();
            for x in &inputs {
                assert_eq!(
                    v.recall(x).unwrap().as_slice(),
                    &join_below(&conjunctive_combinations, x)[..],
                    "{family}: max-c recall is not the largest combination below the input"
                );
                assert_eq!(
                    s.recall(x).unwrap().as_slice(),
                    &meet_above(&disjunctive_combinations, x)[..],
                    "{family}: min-d recall is not the smallest combination above the input"
                );
            }
        }
    }
}
