//! Dominance, fast non-dominated sorting, and crowding distance on a small
//! random population.
//!
//! ```bash
//! cargo run --release --example pareto_sorting
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rtlp::pareto::{crowding_distance, dominates, fast_nondominated_sort};

fn main() {
    // Pairwise dominance is the primitive everything else builds on.
    let a = vec![0.2, 0.4];
    let b = vec![0.3, 0.9];
    let c = vec![0.1, 0.9];
    println!("dominates({a:?}, {b:?}) = {}", dominates(&a, &b));
    println!("dominates({a:?}, {c:?}) = {}", dominates(&a, &c));
    println!("dominates({c:?}, {a:?}) = {}", dominates(&c, &a));

    // A random bi-objective cloud, partitioned into fronts.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let objectives: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            let f1: f64 = rng.gen_range(0.0..1.0);
            let f2: f64 = rng.gen_range(0.0..1.0);
            vec![f1, f2]
        })
        .collect();

    let partition = fast_nondominated_sort(&objectives);
    println!("\n{} points fall into {} fronts:", objectives.len(), partition.fronts.len());
    for (i, front) in partition.fronts.iter().enumerate() {
        println!("  front {}: {} members", i + 1, front.len());
    }

    // No member of a front dominates another member of the same front.
    for front in &partition.fronts {
        for &i in front {
            for &j in front {
                assert!(!dominates(&objectives[i], &objectives[j]));
            }
        }
    }
    println!("checked: fronts are mutually non-dominating");

    // Crowding distance ranks members of one front by isolation; the
    // objective-extreme points are kept at infinite distance.
    let first: Vec<Vec<f64>> = partition.fronts[0]
        .iter()
        .map(|&i| objectives[i].clone())
        .collect();
    let dist = crowding_distance(&first);
    println!("\nfirst front with crowding distances:");
    let mut order: Vec<usize> = (0..first.len()).collect();
    order.sort_by(|&a, &b| dist[b].total_cmp(&dist[a]));
    for &i in &order {
        println!("  ({:.3}, {:.3})  distance {:>9.4}", first[i][0], first[i][1], dist[i]);
    }
}
